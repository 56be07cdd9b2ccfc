use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Smith normal form decomposition: `u * m * v = d` with `u`, `v` unimodular
/// and `d` diagonal satisfying the divisibility chain d1 | d2 | ... .
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

/// Position of the nonzero entry of minimal absolute value in the trailing
/// block starting at (k, k), if any.
fn min_pivot(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs: Option<BigInt> = None;
    for i in k..m.rows {
        for j in k..m.cols {
            let e = &m[(i, j)];
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best_abs {
                Some(b) if *b <= a => {}
                _ => {
                    best = Some((i, j));
                    best_abs = Some(a);
                }
            }
        }
    }
    best
}

/// Smith normal form by repeated pivoting on the minimal-absolute-value
/// entry. Minimal pivots keep intermediate entries small without modular
/// tricks, which matters for presentation matrices with a few large entries.
pub fn snf(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);
    let mut rank = 0;

    for k in 0..steps {
        let Some((pi, pj)) = min_pivot(&d, k) else {
            break;
        };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        // Clear row and column k; a reduction can reintroduce entries, so
        // loop until both are clear with the pivot dividing everything below.
        loop {
            // Re-pick a minimal pivot inside row/column k to bound growth.
            let mut progressed = false;
            for i in k + 1..rows {
                if !d[(i, k)].is_zero() && d[(i, k)].abs() < d[(k, k)].abs() {
                    d.swap_rows(k, i);
                    u.swap_rows(k, i);
                    progressed = true;
                }
            }
            for j in k + 1..cols {
                if !d[(k, j)].is_zero() && d[(k, j)].abs() < d[(k, k)].abs() {
                    d.swap_cols(k, j);
                    v.swap_cols(k, j);
                    progressed = true;
                }
            }
            let _ = progressed;

            let pivot = d[(k, k)].clone();
            debug_assert!(!pivot.is_zero());
            let mut clean = true;
            for i in k + 1..rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = div_nearest(&d[(i, k)], &pivot);
                d.add_row_mul(i, k, &-q.clone());
                u.add_row_mul(i, k, &-q);
                if !d[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = div_nearest(&d[(k, j)], &pivot);
                d.add_col_mul(j, k, &-q.clone());
                v.add_col_mul(j, k, &-q);
                if !d[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }

        // Divisibility fix-up: pivot must divide every entry of the trailing
        // block. If some entry resists, fold its row into row k and restart
        // the cleaning loop for this k.
        loop {
            let pivot = d[(k, k)].clone();
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&d[(i, j)] % &pivot).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                None => break,
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_mul(k, i, &one);
                    u.add_row_mul(k, i, &one);
                    // Row k now has nonzero entries right of the pivot; clear
                    // them again (pivot still divides column k, so only the
                    // row needs work, but reuse the full loop for safety).
                    loop {
                        let pivot = d[(k, k)].clone();
                        let mut clean = true;
                        for j in k + 1..cols {
                            if d[(k, j)].is_zero() {
                                continue;
                            }
                            let q = div_nearest(&d[(k, j)], &pivot);
                            d.add_col_mul(j, k, &-q.clone());
                            v.add_col_mul(j, k, &-q);
                            if !d[(k, j)].is_zero() {
                                clean = false;
                            }
                        }
                        for i2 in k + 1..rows {
                            if d[(i2, k)].is_zero() {
                                continue;
                            }
                            let q = div_nearest(&d[(i2, k)], &pivot);
                            d.add_row_mul(i2, k, &-q.clone());
                            u.add_row_mul(i2, k, &-q);
                            if !d[(i2, k)].is_zero() {
                                clean = false;
                            }
                        }
                        if clean {
                            break;
                        }
                        // A smaller pivot may have appeared; adopt it.
                        if let Some((pi, pj)) = min_pivot(&d, k) {
                            if d[(pi, pj)].abs() < d[(k, k)].abs() {
                                d.swap_rows(k, pi);
                                u.swap_rows(k, pi);
                                d.swap_cols(k, pj);
                                v.swap_cols(k, pj);
                            }
                        }
                    }
                }
            }
        }

        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        rank = k + 1;
    }

    Snf { d, u, v, rank }
}

/// Quotient rounded to nearest, which keeps remainders in [-|b|/2, |b|/2].
pub(crate) fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Basis for the right kernel {x : m x = 0}, as matrix columns.
///
/// The kernel of an integer matrix is a saturated sublattice, so the basis
/// returned here is a basis of the full solution group.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    let idx: Vec<usize> = (s.rank..m.cols).collect();
    s.v.submatrix_cols(&idx)
}

/// One integer solution x of m x = b, if any.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows, b.len());
    let s = snf(m);
    let ub = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols];
    for i in 0..m.rows {
        let di = if i < m.cols { s.d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Solve m X = B columnwise; fails if any column has no integer solution.
pub fn solve_matrix(m: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(m.rows, b.rows);
    let s = snf(m);
    let mut x = IntMatrix::zero(m.cols, b.cols);
    for j in 0..b.cols {
        let ub = s.u.mul_vec(&b.col(j));
        let mut y = vec![BigInt::zero(); m.cols];
        for i in 0..m.rows {
            let di = if i < m.cols { s.d[(i, i)].clone() } else { BigInt::zero() };
            if di.is_zero() {
                if !ub[i].is_zero() {
                    return None;
                }
            } else {
                let (q, r) = ub[i].div_rem(&di);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
        }
        x.set_col(j, &s.v.mul_vec(&y));
    }
    Some(x)
}

/// Columns spanning {x : a x lies in the column span of r}.
///
/// Computed as the x-block of the kernel of [a | r]. The result spans the
/// full preimage lattice (it contains ker a).
pub fn solve_mod_image(a: &IntMatrix, r: &IntMatrix) -> IntMatrix {
    assert_eq!(a.rows, r.rows);
    let stacked = a.hcat(r);
    let k = kernel(&stacked);
    k.submatrix_rows(&(0..a.cols).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(3);
        let s = snf(&m);
        assert_eq!(s.d, IntMatrix::identity(3));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn snf_diag_2_3() {
        // diag(2,3) ~ diag(1,6): entry gcd 1 and |det| 6 force the factors.
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = snf(&m);
        assert_eq!(s.d[(0, 0)], bi(1));
        assert_eq!(s.d[(1, 1)], bi(6));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn snf_2x2_derived() {
        // [[2,4],[6,8]]: entry gcd 2 and |det| = |16-24| = 8 force diag(2,4).
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = snf(&m);
        assert_eq!(s.d[(0, 0)], bi(2));
        assert_eq!(s.d[(1, 1)], bi(4));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn snf_known_4x4() {
        let m = IntMatrix::from_rows(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let s = snf(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        let diag: Vec<BigInt> = (0..4).map(|i| s.d[(i, i)].clone()).collect();
        assert_eq!(diag, vec![bi(1), bi(3), bi(21), bi(0)]);
    }

    #[test]
    fn kernel_basic() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3]]);
        let k = kernel(&m);
        assert_eq!(k.cols, 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_basic() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let b = vec![bi(4), bi(9)];
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(solve(&m, &[bi(1), bi(0)]).is_none());
    }

    #[test]
    fn div_nearest_rounds() {
        assert_eq!(div_nearest(&bi(7), &bi(3)), bi(2));
        assert_eq!(div_nearest(&bi(-7), &bi(3)), bi(-2));
        assert_eq!(div_nearest(&bi(5), &bi(3)), bi(2));
        assert_eq!(div_nearest(&bi(4), &bi(3)), BigInt::one());
    }
}
