use crate::error::ExactError;
use crate::fgab::{subquotient, FgAbGroup};
use crate::matrix::IntMatrix;
use crate::snf;

/// Cochain complex of free Z-modules: `objects[i]` is the rank in degree i,
/// `differentials[i]` maps degree i to degree i+1.
pub struct CochainComplex {
    pub objects: Vec<usize>,
    pub differentials: Vec<IntMatrix>,
}

impl CochainComplex {
    pub fn new(objects: Vec<usize>, differentials: Vec<IntMatrix>) -> Result<Self, ExactError> {
        if differentials.len() + 1 != objects.len() && !(objects.is_empty() && differentials.is_empty()) {
            return Err(ExactError::DimensionMismatch(format!(
                "{} objects but {} differentials",
                objects.len(),
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.cols != objects[i] || d.rows != objects[i + 1] {
                return Err(ExactError::DimensionMismatch(format!(
                    "differential {} is {}x{}, expected {}x{}",
                    i,
                    d.rows,
                    d.cols,
                    objects[i + 1],
                    objects[i]
                )));
            }
        }
        for i in 0..differentials.len().saturating_sub(1) {
            let comp = differentials[i + 1].mul(&differentials[i]);
            if !comp.is_zero() {
                for r in 0..comp.rows {
                    for c in 0..comp.cols {
                        if !num_traits::Zero::is_zero(&comp[(r, c)]) {
                            return Err(ExactError::NotAComplex(r, c));
                        }
                    }
                }
            }
        }
        Ok(CochainComplex { objects, differentials })
    }

    /// Cohomology at every spot.
    pub fn cohomology(&self) -> Result<Vec<FgAbGroup>, ExactError> {
        let n = self.objects.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let incoming = if i == 0 {
                IntMatrix::zero(self.objects[0], 0)
            } else {
                self.differentials[i - 1].clone()
            };
            let outgoing = if i + 1 == n {
                IntMatrix::zero(0, self.objects[i])
            } else {
                self.differentials[i].clone()
            };
            out.push(cohomology_at(&incoming, &outgoing)?);
        }
        Ok(out)
    }
}

/// ker(g) / im(f) for free modules: f: Z^a -> Z^n, g: Z^n -> Z^b with
/// g . f = 0. The result carries representative cocycles in Z^n.
pub fn cohomology_at(f: &IntMatrix, g: &IntMatrix) -> Result<FgAbGroup, ExactError> {
    if f.rows != g.cols {
        return Err(ExactError::DimensionMismatch(format!(
            "im f lives in Z^{} but g consumes Z^{}",
            f.rows, g.cols
        )));
    }
    let comp = g.mul(f);
    for r in 0..comp.rows {
        for c in 0..comp.cols {
            if !num_traits::Zero::is_zero(&comp[(r, c)]) {
                return Err(ExactError::NotAComplex(r, c));
            }
        }
    }
    let z = snf::kernel(g);
    Ok(subquotient(&z, f))
}

/// Cohomology of a three-term complex of *presented* groups
///     M_prev --f--> M --g--> M_next
/// where M = Z^n / col-span(r_m), M_next = Z^m / col-span(r_next), and the
/// matrices act on generator coordinates. Returns ker(g)/im(f) as a group
/// with representatives in Z^n.
pub fn cohomology_presented(
    f: &IntMatrix,
    r_m: &IntMatrix,
    g: &IntMatrix,
    r_next: &IntMatrix,
) -> Result<FgAbGroup, ExactError> {
    if f.rows != g.cols || r_m.rows != f.rows || g.rows != r_next.rows {
        return Err(ExactError::DimensionMismatch(format!(
            "presented complex shapes: f {}x{}, r_m {}x{}, g {}x{}, r_next {}x{}",
            f.rows, f.cols, r_m.rows, r_m.cols, g.rows, g.cols, r_next.rows, r_next.cols
        )));
    }
    // Cocycles: x with g x = 0 in M_next, i.e. g x in span(r_next).
    let z = snf::solve_mod_image(g, r_next);
    // Boundaries: image of f together with the relations of M.
    let b = f.hcat(r_m);
    Ok(subquotient(&z, &b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn times_two_gives_z2() {
        // f = (x2): Z -> Z, g = 0 -> Z/2
        let f = IntMatrix::from_rows(&[vec![2]]);
        let g = IntMatrix::zero(0, 1);
        let h = cohomology_at(&f, &g).unwrap();
        assert_eq!(h.factors_u64(), vec![2]);
    }

    #[test]
    fn identity_gives_trivial() {
        let f = IntMatrix::identity(3);
        let g = IntMatrix::zero(0, 3);
        let h = cohomology_at(&f, &g).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn not_a_complex_detected() {
        let f = IntMatrix::identity(1);
        let g = IntMatrix::identity(1);
        assert!(matches!(cohomology_at(&f, &g), Err(ExactError::NotAComplex(_, _))));
    }

    #[test]
    fn circle_cohomology() {
        // Simplicial circle: 3 vertices, 3 edges; cochain complex
        // Z^3 --d--> Z^3 with d = transpose of boundary. H^0 = Z, H^1 = Z.
        let d = IntMatrix::from_rows(&[vec![-1, 1, 0], vec![0, -1, 1], vec![1, 0, -1]]);
        let c = CochainComplex::new(vec![3, 3], vec![d]).unwrap();
        let h = c.cohomology().unwrap();
        assert_eq!(h[0].factors_u64(), vec![0]);
        assert_eq!(h[1].factors_u64(), vec![0]);
    }

    #[test]
    fn rp2_style_torsion() {
        // Z --2--> Z --0--> Z gives H^1 = 0, middle Z/.. check: at spot 1,
        // ker(0)/im(2) = Z/2.
        let d0 = IntMatrix::from_rows(&[vec![2]]);
        let d1 = IntMatrix::from_rows(&[vec![0]]);
        let c = CochainComplex::new(vec![1, 1, 1], vec![d0, d1]).unwrap();
        let h = c.cohomology().unwrap();
        assert!(h[0].is_trivial());
        assert_eq!(h[1].factors_u64(), vec![2]);
        assert_eq!(h[2].factors_u64(), vec![0]);
    }

    #[test]
    fn presented_z4_complex() {
        // Z/4 --2--> Z/4 --2--> Z/4: H at middle = ker(2)/im(2) = 2Z/4Z / 2Z/4Z = 0
        let two = IntMatrix::from_rows(&[vec![2]]);
        let four = IntMatrix::from_rows(&[vec![4]]);
        let h = cohomology_presented(&two, &four, &two, &four).unwrap();
        assert!(h.is_trivial());
        // Z/4 --0--> Z/4 --2--> Z/4: H = ker(2)/0 = 2Z/4 = Z/2
        let zero = IntMatrix::zero(1, 1);
        let h = cohomology_presented(&zero, &four, &two, &four).unwrap();
        assert_eq!(h.factors_u64(), vec![2]);
    }
}
