use crate::matrix::IntMatrix;
use crate::snf::{self, snf};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Finitely generated abelian group in invariant-factor normal form.
///
/// `invariant_factors` is a chain d1 | d2 | ... with every finite factor
/// > 1 and every 0 (a Z summand) sorted last.
///
/// Groups produced as subquotients of an ambient Z^n carry enough data to
/// move between ambient vectors and normal-form coordinates:
/// `representatives` holds one ambient representative per generator, and
/// [`FgAbGroup::express`] maps an ambient vector of the subgroup back to
/// normal-form coordinates.
#[derive(Clone)]
pub struct FgAbGroup {
    pub invariant_factors: Vec<BigInt>,
    pub basis_labels: Option<Vec<String>>,
    /// ambient-dim x k; column j is an ambient representative of generator j.
    pub representatives: IntMatrix,
    /// ambient-dim x m lattice basis of the subgroup (cocycles) the quotient
    /// was taken in. Identity for plain cokernels of the full ambient space.
    pub span: IntMatrix,
    /// k x m; normal-form coordinates of the span columns.
    pub coordinate_map: IntMatrix,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup {
            invariant_factors: vec![],
            basis_labels: None,
            representatives: IntMatrix::zero(0, 0),
            span: IntMatrix::zero(0, 0),
            coordinate_map: IntMatrix::zero(0, 0),
        }
    }

    /// Group with the given invariant factors (0 = Z) and identity coordinate
    /// maps. Factors are normalized (1s dropped, sorted, zeros last).
    pub fn from_factors(factors: &[u64]) -> Self {
        let fs: Vec<BigInt> = factors.iter().map(|&f| BigInt::from(f)).collect();
        let norm = normalize_factors(&fs);
        let k = norm.len();
        FgAbGroup {
            invariant_factors: norm,
            basis_labels: None,
            representatives: IntMatrix::identity(k),
            span: IntMatrix::identity(k),
            coordinate_map: IntMatrix::identity(k),
        }
    }

    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    /// Product of the finite invariant factors; `None` when a Z summand is
    /// present.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank() > 0 {
            return None;
        }
        let mut o = BigInt::one();
        for d in &self.invariant_factors {
            o *= d;
        }
        Some(o)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Largest finite invariant factor; 1 for a trivial or free group.
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion_factors().last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Invariant factors as u64s; panics on overflow (engine values are tiny).
    pub fn factors_u64(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .map(|d| u64::try_from(d.clone()).expect("factor fits u64"))
            .collect()
    }

    pub fn isomorphic(&self, other: &FgAbGroup) -> bool {
        self.invariant_factors == other.invariant_factors
    }

    /// Normal-form coordinates of an ambient vector lying in the subgroup
    /// the group was computed in. `None` when the vector is not in the span.
    /// Coordinates are reduced modulo the invariant factors.
    pub fn express(&self, ambient: &[BigInt]) -> Option<Vec<BigInt>> {
        let x = snf::solve(&self.span, ambient)?;
        let mut y = self.coordinate_map.mul_vec(&x);
        for (c, d) in y.iter_mut().zip(self.invariant_factors.iter()) {
            if !d.is_zero() {
                *c = c.mod_floor_big(d);
            }
        }
        Some(y)
    }

    /// Ambient representative of the element with the given normal-form
    /// coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.representatives.mul_vec(coords)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.num_generators());
        self.basis_labels = Some(labels);
        self
    }
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m.abs()
        } else {
            r
        }
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({})", self)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{}", d) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Presentation of a f.g. abelian group as Z^gens / column-span(rels).
#[derive(Clone, Debug)]
pub struct Presentation {
    pub gens: usize,
    /// gens x r matrix of relation columns.
    pub rels: IntMatrix,
}

impl Presentation {
    pub fn free(gens: usize) -> Self {
        Presentation { gens, rels: IntMatrix::zero(gens, 0) }
    }

    /// One order relation per generator (0 = free generator).
    pub fn with_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let nonzero: Vec<(usize, BigInt)> =
            orders.iter().cloned().enumerate().filter(|(_, d)| !d.is_zero()).collect();
        let mut rels = IntMatrix::zero(n, nonzero.len());
        for (j, (i, d)) in nonzero.into_iter().enumerate() {
            rels[(i, j)] = d;
        }
        Presentation { gens: n, rels }
    }

    pub fn normal_form(&self) -> FgAbGroup {
        cokernel(&self.rels, self.gens)
    }
}

pub(crate) fn normalize_factors(fs: &[BigInt]) -> Vec<BigInt> {
    let mut finite: Vec<BigInt> =
        fs.iter().filter(|d| !d.is_zero() && !d.is_one()).map(|d| d.abs()).collect();
    finite.sort();
    finite.extend(std::iter::repeat(BigInt::zero()).take(fs.iter().filter(|d| d.is_zero()).count()));
    finite
}

/// Cokernel Z^gens / col-span(rels) in normal form, with coordinate maps
/// back to the ambient Z^gens.
pub fn cokernel(rels: &IntMatrix, gens: usize) -> FgAbGroup {
    assert_eq!(rels.rows, gens);
    if gens == 0 {
        return FgAbGroup::trivial();
    }
    let s = snf(rels);
    // u * rels * v = d: in the basis u^-1 e_i of Z^gens the group splits as
    // + Z/d_i (Z for i >= rank). Generator i of the cokernel is column i of
    // u^-1; its coordinate functional is row i of u.
    let uinv = snf::solve_matrix(&s.u, &IntMatrix::identity(gens)).expect("unimodular inverse");
    let mut kept: Vec<usize> = Vec::new();
    let mut factors: Vec<BigInt> = Vec::new();
    for i in 0..gens {
        let d = if i < s.rank { s.d[(i, i)].clone() } else { BigInt::zero() };
        if d.is_one() {
            continue;
        }
        kept.push(i);
        factors.push(d);
    }
    let representatives = uinv.submatrix_cols(&kept);
    let coordinate_map = s.u.submatrix_rows(&kept);
    FgAbGroup {
        invariant_factors: factors,
        basis_labels: None,
        representatives,
        span: IntMatrix::identity(gens),
        coordinate_map,
    }
}

/// The subquotient span(z) / span(b) of the ambient free group Z^n.
///
/// `z` is n x zk, `b` is n x bk; every column of `b` must lie in the integer
/// column span of `z` (checked).
pub fn subquotient(z: &IntMatrix, b: &IntMatrix) -> FgAbGroup {
    assert_eq!(z.rows, b.rows, "ambient dimension mismatch");
    if z.cols == 0 {
        return FgAbGroup::trivial();
    }
    let x = snf::solve_matrix(z, b).expect("relations must lie in the span of the cycles");
    // Columns of z may be a redundant spanning set: their syzygies are
    // relations of the presentation too.
    let syz = snf::kernel(z);
    let x = x.hcat(&syz);
    let g = cokernel(&x, z.cols);
    FgAbGroup {
        invariant_factors: g.invariant_factors,
        basis_labels: None,
        representatives: z.mul(&g.representatives),
        span: z.clone(),
        coordinate_map: g.coordinate_map,
    }
}

/// Express each column of `vecs` integrally in the column span of `z`.
pub fn express_in_span(z: &IntMatrix, vecs: &IntMatrix) -> Option<IntMatrix> {
    snf::solve_matrix(z, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_z_mod_2() {
        let rels = IntMatrix::from_rows(&[vec![2]]);
        let g = cokernel(&rels, 1);
        assert_eq!(g.factors_u64(), vec![2]);
        assert_eq!(g.order(), Some(BigInt::from(2)));
    }

    #[test]
    fn cokernel_mixed() {
        // Z^3 / <2e1, 6e2> = Z/2 + Z/6 + Z
        let rels = IntMatrix::from_rows(&[vec![2, 0], vec![0, 6], vec![0, 0]]);
        let g = cokernel(&rels, 3);
        assert_eq!(g.factors_u64(), vec![2, 6, 0]);
        assert_eq!(g.rank(), 1);
        assert_eq!(g.order(), None);
    }

    #[test]
    fn factors_drop_ones() {
        let g = FgAbGroup::from_factors(&[1, 1, 4, 2]);
        assert_eq!(g.factors_u64(), vec![2, 4]);
    }

    #[test]
    fn subquotient_basic() {
        // span(2e1, e2) / span(2e2) inside Z^2 = Z/2 + Z
        let z = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        let b = IntMatrix::from_rows(&[vec![0], vec![2]]);
        let g = subquotient(&z, &b);
        assert_eq!(g.factors_u64(), vec![2, 0]);
    }

    #[test]
    fn express_round_trip() {
        // Z^2 / <2e1 + e2 ... > keep it simple: Z/4 from Z^1/<4>
        let rels = IntMatrix::from_rows(&[vec![4]]);
        let g = cokernel(&rels, 1);
        let coords = g.express(&[BigInt::from(7)]).unwrap();
        assert_eq!(coords, vec![BigInt::from(3)]);
    }

    #[test]
    fn display_names() {
        assert_eq!(FgAbGroup::from_factors(&[2, 0]).to_string(), "Z/2 + Z");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
    }
}
