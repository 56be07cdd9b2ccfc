use crate::cosimplicial::{CosimplicialAbGroup, Level};
use crate::error::CosimpError;
use exactalg::IntMatrix;
use num_bigint::BigInt;

/// The cosimplicial abelian group of reduced d-cycles of the standard
/// simplices: level n = Z_d(Delta^n), with a monotone map phi: [m] -> [n]
/// acting by pushforward of chains (S -> phi(S) when injective on S, else 0).
///
/// Levels get the canonical "cone" basis: the boundaries b_S = del(S) of the
/// (d+2)-subsets S of {0..n} that contain the vertex 0. In this basis every
/// structure map has at most d+3 nonzero entries per column.
///
/// With d = t this models the homotopy of the universal example in its
/// t-sphere range, and with d = 2t+1 the 2t-range.
pub fn cycles_cosimplicial(t: usize, d: usize, n_max: usize) -> Result<CosimplicialAbGroup, CosimpError> {
    assert!(d == t || d == 2 * t + 1, "chain degree must be t or 2t+1");
    let need = d + 1;
    if n_max < need {
        return Err(CosimpError::TruncationTooSmall { have: n_max, need });
    }

    // Basis of Z_d(Delta^n): (d+2)-subsets of {0..n} containing 0.
    let bases: Vec<Vec<Vec<usize>>> = (0..=n_max)
        .map(|n| {
            subsets_with_zero(n, d + 2)
        })
        .collect();

    let levels: Vec<Level> = bases
        .iter()
        .map(|b| {
            let labels = b
                .iter()
                .map(|s| {
                    let inner: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                    format!("z[{}]", inner.join(","))
                })
                .collect();
            Level::free(labels)
        })
        .collect();

    // Map on cycles induced by a monotone vertex map phi: [m] -> [n]:
    // b_S -> 0 when phi is not injective on S; otherwise del(phi S),
    // expanded in the cone basis of the target.
    let induced = |phi: &dyn Fn(usize) -> usize, src: usize, dst: usize| -> IntMatrix {
        let src_basis = &bases[src];
        let dst_basis = &bases[dst];
        let index: std::collections::HashMap<&[usize], usize> = dst_basis
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let mut m = IntMatrix::zero(dst_basis.len(), src_basis.len());
        for (j, s) in src_basis.iter().enumerate() {
            let image: Vec<usize> = s.iter().map(|&v| phi(v)).collect();
            let mut tset = image.clone();
            tset.dedup();
            if tset.len() != s.len() {
                continue; // not injective on S: chain dies
            }
            // phi monotone on a sorted set: image already sorted
            if tset[0] == 0 {
                let i = index[tset.as_slice()];
                m[(i, j)] = BigInt::from(1);
            } else {
                // del(T) = sum_k (-1)^k b_{{0} u (T minus t_k)}
                for (k, _) in tset.iter().enumerate() {
                    let mut cone: Vec<usize> = vec![0];
                    cone.extend(tset.iter().enumerate().filter(|&(kk, _)| kk != k).map(|(_, &v)| v));
                    let i = index[cone.as_slice()];
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    m[(i, j)] = &m[(i, j)] + BigInt::from(sign);
                }
            }
        }
        m
    };

    let mut cofaces = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let mut mats = Vec::with_capacity(n + 2);
        for i in 0..=n + 1 {
            // coface delta^i: [n] -> [n+1] skips value i
            let phi = move |v: usize| if v < i { v } else { v + 1 };
            mats.push(induced(&phi, n, n + 1));
        }
        cofaces.push(mats);
    }
    let mut codegeneracies = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut mats = Vec::with_capacity(n);
        for i in 0..n {
            // codegeneracy sigma^i: [n] -> [n-1] repeats value i
            let phi = move |v: usize| if v <= i { v } else { v - 1 };
            mats.push(induced(&phi, n, n - 1));
        }
        codegeneracies.push(mats);
    }

    CosimplicialAbGroup::new(levels, cofaces, codegeneracies)
}

fn subsets_with_zero(n: usize, size: usize) -> Vec<Vec<usize>> {
    // (size)-subsets of {0..n} containing 0, lexicographic.
    if size == 0 || size > n + 1 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut current = vec![0usize];
    fn rec(n: usize, size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for v in start..=n {
            current.push(v);
            rec(n, size, v + 1, current, out);
            current.pop();
        }
    }
    rec(n, size, 1, &mut current, &mut out);
    out
}

/// Binomial coefficient, for the rank law rank Z_d(Delta^n) = C(n, d+1).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_follow_binomial_law() {
        // rank Z_t(Delta^n) = C(n, t+1): the cone basis is indexed by
        // (t+2)-subsets containing 0, i.e. (t+1)-subsets of {1..n}.
        for (t, n_max) in [(2usize, 8usize), (3, 9)] {
            let c = cycles_cosimplicial(t, t, n_max).unwrap();
            for n in 0..=n_max {
                assert_eq!(c.levels[n].rank(), binomial(n, t + 1), "t={} n={}", t, n);
            }
        }
    }

    #[test]
    fn rank_matches_boundary_kernel_oracle() {
        // Independent oracle: rank of the kernel of the simplicial boundary
        // matrix on (t+1)-chains of Delta^n.
        let t = 2usize;
        for n in 2..=6 {
            // chains: (t+1)-subsets of {0..n}; boundary to t-subsets
            let chains = all_subsets(n, t + 1);
            let faces = all_subsets(n, t);
            let fidx: std::collections::HashMap<&[usize], usize> =
                faces.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
            let mut bd = IntMatrix::zero(faces.len(), chains.len());
            for (j, c) in chains.iter().enumerate() {
                for k in 0..c.len() {
                    let mut f = c.clone();
                    f.remove(k);
                    let i = fidx[f.as_slice()];
                    bd[(i, j)] = BigInt::from(if k % 2 == 0 { 1 } else { -1 });
                }
            }
            let kernel = exactalg::snf::kernel(&bd);
            let model = cycles_cosimplicial(t, t, n.max(t + 1)).unwrap();
            assert_eq!(kernel.cols, model.levels[n].rank(), "n = {}", n);
        }
    }

    fn all_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == size {
                out.push(cur.clone());
                return;
            }
            for v in start..=n {
                cur.push(v);
                rec(n, size, v + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, size, 0, &mut cur, &mut out);
        out
    }

    #[test]
    fn low_levels_vanish() {
        let c = cycles_cosimplicial(2, 2, 8).unwrap();
        for n in 0..=2 {
            assert_eq!(c.levels[n].rank(), 0, "no t-cycles at level {} <= t", n);
        }
        assert_eq!(c.levels[3].rank(), 1);
    }
}
