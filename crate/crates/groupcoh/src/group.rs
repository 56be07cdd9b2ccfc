use crate::error::GroupCohError;
use std::collections::HashMap;

/// 2x2 matrix over Z/n, entries reduced.
pub type Mat2 = [u32; 4];

fn mat_mul(n: u32, a: Mat2, b: Mat2) -> Mat2 {
    let n64 = n as u64;
    let m = |x: u64| (x % n64) as u32;
    [
        m(a[0] as u64 * b[0] as u64 + a[1] as u64 * b[2] as u64),
        m(a[0] as u64 * b[1] as u64 + a[1] as u64 * b[3] as u64),
        m(a[2] as u64 * b[0] as u64 + a[3] as u64 * b[2] as u64),
        m(a[2] as u64 * b[1] as u64 + a[3] as u64 * b[3] as u64),
    ]
}

fn det_invertible(n: u32, a: Mat2) -> bool {
    let n64 = n as i64;
    let det = (a[0] as i64 * a[3] as i64 - a[1] as i64 * a[2] as i64).rem_euclid(n64) as u32;
    num_gcd(det, n) == 1
}

fn num_gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

/// Edge of the Cayley BFS tree: element e was first reached as parent * gen.
#[derive(Clone, Copy, Debug)]
pub struct TreeEdge {
    pub parent: usize,
    pub gen: usize,
}

/// A finite subgroup of GL_2(Z/n), enumerated from chosen generators.
///
/// Element 0 is the identity. The Cayley graph uses right multiplication by
/// generators; `tree` records one BFS spanning tree used by the crossed
/// homomorphism solver.
pub struct FiniteMatrixGroup {
    pub modulus: u32,
    pub gen_names: Vec<String>,
    pub gen_matrices: Vec<Mat2>,
    /// Generator indices into `elements`.
    pub gen_elems: Vec<usize>,
    pub elements: Vec<Mat2>,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub tree: Vec<Option<TreeEdge>>,
}

impl FiniteMatrixGroup {
    pub fn new(
        modulus: u32,
        generators: Vec<(String, [i64; 4])>,
    ) -> Result<Self, GroupCohError> {
        const MAX: usize = 100_000;
        let n = modulus;
        let reduce = |m: [i64; 4]| -> Mat2 {
            [
                m[0].rem_euclid(n as i64) as u32,
                m[1].rem_euclid(n as i64) as u32,
                m[2].rem_euclid(n as i64) as u32,
                m[3].rem_euclid(n as i64) as u32,
            ]
        };
        let gen_matrices: Vec<Mat2> = generators.iter().map(|(_, m)| reduce(*m)).collect();
        for &g in &gen_matrices {
            if !det_invertible(n, g) {
                return Err(GroupCohError::NotInvertible(n));
            }
        }
        let gen_names: Vec<String> = generators.iter().map(|(s, _)| s.clone()).collect();

        let id: Mat2 = [1, 0, 0, 1];
        let mut elements = vec![id];
        let mut index: HashMap<Mat2, usize> = HashMap::new();
        index.insert(id, 0);
        let mut tree: Vec<Option<TreeEdge>> = vec![None];
        let mut frontier = vec![0usize];
        while let Some(e) = frontier.pop() {
            for (gi, &g) in gen_matrices.iter().enumerate() {
                let prod = mat_mul(n, elements[e], g);
                if !index.contains_key(&prod) {
                    let idx = elements.len();
                    if idx >= MAX {
                        return Err(GroupCohError::ClosureTooLarge(MAX));
                    }
                    elements.push(prod);
                    index.insert(prod, idx);
                    tree.push(Some(TreeEdge { parent: e, gen: gi }));
                    frontier.push(idx);
                }
            }
        }
        // BFS order: the loop above is DFS via pop; rebuild breadth-first for
        // shallow trees (keeps crossed-homomorphism expressions small).
        let (elements, tree) = {
            let mut elems = vec![id];
            let mut idx: HashMap<Mat2, usize> = HashMap::new();
            idx.insert(id, 0);
            let mut tr: Vec<Option<TreeEdge>> = vec![None];
            let mut queue = std::collections::VecDeque::from([0usize]);
            while let Some(e) = queue.pop_front() {
                for (gi, &g) in gen_matrices.iter().enumerate() {
                    let prod = mat_mul(n, elems[e], g);
                    if !idx.contains_key(&prod) {
                        let i = elems.len();
                        elems.push(prod);
                        idx.insert(prod, i);
                        tr.push(Some(TreeEdge { parent: e, gen: gi }));
                        queue.push_back(i);
                    }
                }
            }
            (elems, tr)
        };
        let index: HashMap<Mat2, usize> =
            elements.iter().enumerate().map(|(i, &m)| (m, i)).collect();

        let size = elements.len();
        let mut mul = vec![vec![0usize; size]; size];
        for a in 0..size {
            for b in 0..size {
                mul[a][b] = index[&mat_mul(n, elements[a], elements[b])];
            }
        }
        let mut inv = vec![0usize; size];
        for a in 0..size {
            let b = (0..size).find(|&b| mul[a][b] == 0).expect("group closure has inverses");
            inv[a] = b;
        }
        let gen_elems: Vec<usize> = gen_matrices.iter().map(|m| index[m]).collect();

        Ok(FiniteMatrixGroup {
            modulus,
            gen_names,
            gen_matrices,
            gen_elems,
            elements,
            mul,
            inv,
            tree,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul_elem(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn elem_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul[x][a];
            k += 1;
        }
        k
    }

    /// Closure of a set of elements as a sorted list of indices.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut frontier = vec![0usize];
        while let Some(e) = frontier.pop() {
            for &g in gens {
                let p = self.mul[e][g];
                if !seen[p] {
                    seen[p] = true;
                    out.push(p);
                    frontier.push(p);
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let inside = |x: usize| subgroup.binary_search(&x).is_ok();
        for &s in subgroup {
            for g in 0..self.order() {
                let conj = self.mul[self.mul[g][s]][self.inv[g]];
                if !inside(conj) {
                    return false;
                }
            }
        }
        true
    }

    pub fn normalizer(&self, subgroup: &[usize]) -> Vec<usize> {
        let inside = |x: usize| subgroup.binary_search(&x).is_ok();
        (0..self.order())
            .filter(|&g| {
                subgroup.iter().all(|&s| inside(self.mul[self.mul[g][s]][self.inv[g]]))
            })
            .collect()
    }

    /// A Sylow p-subgroup, found by growing a p-subgroup through its
    /// normalizer (works because p-subgroups are nested in Sylow towers).
    pub fn sylow(&self, p: usize) -> Vec<usize> {
        let mut p_part = 1usize;
        let mut n = self.order();
        while n % p == 0 {
            n /= p;
            p_part *= p;
        }
        let mut s = vec![0usize];
        while s.len() < p_part {
            let norm = self.normalizer(&s);
            let inside = |x: usize, set: &[usize]| set.binary_search(&x).is_ok();
            let mut grown = false;
            for &x in &norm {
                if inside(x, &s) {
                    continue;
                }
                if !self.elem_order(x).is_power_of(p) {
                    continue;
                }
                let mut gens: Vec<usize> = s.clone();
                gens.push(x);
                let c = self.subgroup_closure(&gens);
                if c.len().is_power_of(p) && c.len() > s.len() {
                    s = c;
                    grown = true;
                    break;
                }
            }
            assert!(grown, "sylow growth stalled");
        }
        s
    }

    /// Representatives of the double cosets S g S.
    pub fn double_cosets(&self, s: &[usize]) -> Vec<usize> {
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &a in s {
                for &b in s {
                    covered[self.mul[self.mul[a][g]][b]] = true;
                }
            }
        }
        reps
    }

    /// Commutator subgroup, for abelianization checks.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut comms = Vec::new();
        for a in 0..self.order() {
            for b in 0..self.order() {
                let c = self.mul[self.mul[self.mul[a][b]][self.inv[a]]][self.inv[b]];
                comms.push(c);
            }
        }
        comms.sort();
        comms.dedup();
        self.subgroup_closure(&comms)
    }

    /// Invariant factors of the abelianization G/[G,G].
    pub fn abelianization_factors(&self) -> Vec<u64> {
        let comm = self.commutator_subgroup();
        let inside = |x: usize| comm.binary_search(&x).is_ok();
        // Enumerate cosets and their group structure.
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &h in &comm {
                coset_of[self.mul[g][h]] = c;
            }
            let _ = inside;
        }
        let k = reps.len();
        // Abelian group of order k: decompose by orders. Present by the
        // multiplication on coset reps: generators all cosets, relations from
        // the full table; SNF of the relation lattice gives the factors.
        // Relations: for cosets a, b, c with a*b = c: e_a + e_b - e_c = 0.
        let mut rels = exactalg::IntMatrix::zero(k, k * k);
        for a in 0..k {
            for b in 0..k {
                let c = coset_of[self.mul[reps[a]][reps[b]]];
                let col = a * k + b;
                rels[(a, col)] = &rels[(a, col)] + num_bigint::BigInt::from(1);
                rels[(b, col)] = &rels[(b, col)] + num_bigint::BigInt::from(1);
                rels[(c, col)] = &rels[(c, col)] - num_bigint::BigInt::from(1);
            }
        }
        exactalg::fgab::cokernel(&rels, k).factors_u64()
    }
}

trait IsPowerOf {
    fn is_power_of(&self, p: usize) -> bool;
}

impl IsPowerOf for usize {
    fn is_power_of(&self, p: usize) -> bool {
        let mut n = *self;
        if n == 0 {
            return false;
        }
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }
}

/// GL_2(Z/2): symmetric group on three letters, generated by an order-3
/// element sigma and an order-2 element tau.
pub fn gl2_z2() -> FiniteMatrixGroup {
    let g = FiniteMatrixGroup::new(
        2,
        vec![
            ("sigma".into(), [0, 1, 1, 1]),
            ("tau".into(), [0, 1, 1, 0]),
        ],
    )
    .expect("GL2(Z/2) generators");
    assert_eq!(g.order(), 6);
    g
}

/// GL_2(Z/3): order 48, generated by x, y, z (generating SL_2(Z/3)) and a
/// determinant -1 element sigma.
pub fn gl2_z3() -> FiniteMatrixGroup {
    let g = FiniteMatrixGroup::new(
        3,
        vec![
            ("x".into(), [0, -1, 1, 0]),
            ("y".into(), [-1, -1, -1, 1]),
            ("z".into(), [0, -1, 1, -1]),
            ("sigma".into(), [1, 0, 0, -1]),
        ],
    )
    .expect("GL2(Z/3) generators");
    assert_eq!(g.order(), 48);
    g
}

/// Cyclic group of order 2 as {1, -1} inside GL_2(Z/4).
pub fn c2() -> FiniteMatrixGroup {
    let g = FiniteMatrixGroup::new(4, vec![("g".into(), [-1, 0, 0, -1])]).expect("C2");
    assert_eq!(g.order(), 2);
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_orders() {
        assert_eq!(gl2_z2().order(), 6);
        assert_eq!(gl2_z3().order(), 48);
    }

    #[test]
    fn relations_of_appendix_b_generators() {
        // x^2 = y^2, xyx = y, xz = zy^3 in SL_2(Z/3)
        let g = gl2_z3();
        let [x, y, z, sigma] = [g.gen_elems[0], g.gen_elems[1], g.gen_elems[2], g.gen_elems[3]];
        assert_eq!(g.mul[x][x], g.mul[y][y]);
        assert_eq!(g.mul[g.mul[x][y]][x], y);
        let y3 = g.mul[g.mul[y][y]][y];
        assert_eq!(g.mul[x][z], g.mul[z][y3]);
        // sigma has order 2 and determinant -1 part: G = SL ⋊ <sigma>
        assert_eq!(g.elem_order(sigma), 2);
        // x and y generate the quaternion group Q8
        let q8 = g.subgroup_closure(&[x, y]);
        assert_eq!(q8.len(), 8);
        // x, y, z generate SL_2(Z/3), order 24, normal in G
        let sl = g.subgroup_closure(&[x, y, z]);
        assert_eq!(sl.len(), 24);
        assert!(g.is_normal(&sl));
    }

    #[test]
    fn s3_structure() {
        let g = gl2_z2();
        let sigma = g.gen_elems[0];
        let tau = g.gen_elems[1];
        assert_eq!(g.elem_order(sigma), 3);
        assert_eq!(g.elem_order(tau), 2);
        // tau sigma tau^{-1} = sigma^2
        let conj = g.mul[g.mul[tau][sigma]][g.inv[tau]];
        assert_eq!(conj, g.mul[sigma][sigma]);
        let c3 = g.subgroup_closure(&[sigma]);
        assert_eq!(c3.len(), 3);
        assert!(g.is_normal(&c3));
    }

    #[test]
    fn sylow_subgroups() {
        let g = gl2_z3();
        assert_eq!(g.sylow(2).len(), 16);
        assert_eq!(g.sylow(3).len(), 3);
        let s3 = gl2_z2();
        assert_eq!(s3.sylow(2).len(), 2);
        assert_eq!(s3.sylow(3).len(), 3);
    }

    #[test]
    fn abelianizations() {
        assert_eq!(gl2_z2().abelianization_factors(), vec![2]);
        assert_eq!(gl2_z3().abelianization_factors(), vec![2]);
        assert_eq!(c2().abelianization_factors(), vec![2]);
    }
}
