use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Sparse integer matrix stored by columns; each column is sorted by row.
#[derive(Clone, Debug)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(u32, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let mut cols = vec![Vec::new(); m.cols];
        for j in 0..m.cols {
            for i in 0..m.rows {
                if !m[(i, j)].is_zero() {
                    cols[j].push((i as u32, m[(i, j)].clone()));
                }
            }
        }
        SparseIntMatrix { rows: m.rows, cols }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                m[(*i as usize, j)] = v.clone();
            }
        }
        m
    }

    pub fn push_entry(&mut self, col: usize, row: usize, v: BigInt) {
        if !v.is_zero() {
            self.cols[col].push((row as u32, v));
        }
    }

    pub fn sort_columns(&mut self) {
        for col in &mut self.cols {
            col.sort_by_key(|(i, _)| *i);
            // merge duplicate rows
            let mut merged: Vec<(u32, BigInt)> = Vec::with_capacity(col.len());
            for (i, v) in col.drain(..) {
                if let Some(last) = merged.last_mut() {
                    if last.0 == i {
                        last.1 += v;
                        continue;
                    }
                }
                merged.push((i, v));
            }
            merged.retain(|(_, v)| !v.is_zero());
            *col = merged;
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn mul_dense_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols.len());
        let mut out = vec![BigInt::zero(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, v) in col {
                out[*i as usize] += v * &x[j];
            }
        }
        out
    }
}

/// c + q * other, sparse sorted merge.
pub fn axpy(c: &[(u32, BigInt)], q: &BigInt, other: &[(u32, BigInt)]) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(c.len() + other.len());
    let (mut a, mut b) = (0usize, 0usize);
    while a < c.len() || b < other.len() {
        if b >= other.len() || (a < c.len() && c[a].0 < other[b].0) {
            out.push(c[a].clone());
            a += 1;
        } else if a >= c.len() || other[b].0 < c[a].0 {
            let v = q * &other[b].1;
            if !v.is_zero() {
                out.push((other[b].0, v));
            }
            b += 1;
        } else {
            let v = &c[a].1 + q * &other[b].1;
            if !v.is_zero() {
                out.push((c[a].0, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// x*c + y*other (both combined), used for the gcd mixing step.
fn mix(
    x: &BigInt,
    c: &[(u32, BigInt)],
    y: &BigInt,
    other: &[(u32, BigInt)],
) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(c.len() + other.len());
    let (mut a, mut b) = (0usize, 0usize);
    while a < c.len() || b < other.len() {
        if b >= other.len() || (a < c.len() && c[a].0 < other[b].0) {
            let v = x * &c[a].1;
            if !v.is_zero() {
                out.push((c[a].0, v));
            }
            a += 1;
        } else if a >= c.len() || other[b].0 < c[a].0 {
            let v = y * &other[b].1;
            if !v.is_zero() {
                out.push((other[b].0, v));
            }
            b += 1;
        } else {
            let v = x * &c[a].1 + y * &other[b].1;
            if !v.is_zero() {
                out.push((c[a].0, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

struct WorkCol {
    entries: Vec<(u32, BigInt)>,
    combo: Vec<(u32, BigInt)>,
}

/// Result of the sparse column echelon reduction.
pub struct SparseEchelon {
    pub rows: usize,
    pub ncols_input: usize,
    /// Echelon columns: leading entries at strictly increasing distinct rows.
    pub pivots: Vec<Vec<(u32, BigInt)>>,
    /// Kernel basis as combinations of the input columns.
    pub kernel: Vec<Vec<(u32, BigInt)>>,
}

impl SparseEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.ncols_input, self.kernel.len());
        for (j, col) in self.kernel.iter().enumerate() {
            for (i, v) in col {
                m[(*i as usize, j)] = v.clone();
            }
        }
        m
    }

    /// Dense matrix of the echelon (pivot) columns.
    pub fn image_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, self.pivots.len());
        for (j, col) in self.pivots.iter().enumerate() {
            for (i, v) in col {
                m[(*i as usize, j)] = v.clone();
            }
        }
        m
    }
}

/// Integer column echelon with full transform tracking.
///
/// Performs unimodular column operations only, so the zeroed columns' combos
/// are a basis of the full kernel lattice and the surviving columns span the
/// image lattice. Pivot rows are claimed in increasing order per column; a
/// gcd mix keeps entries small.
pub fn sparse_echelon(m: &SparseIntMatrix) -> SparseEchelon {
    let ncols = m.cols.len();
    // pivot_of_row[r] = index into `finished` owning row r as pivot.
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; m.rows];
    let mut finished: Vec<WorkCol> = Vec::new();
    let mut kernel: Vec<Vec<(u32, BigInt)>> = Vec::new();

    for j in 0..ncols {
        let mut cur = WorkCol { entries: m.cols[j].clone(), combo: vec![(j as u32, BigInt::from(1))] };
        loop {
            let Some((lead_row, lead_val)) = cur.entries.first().map(|(i, v)| (*i, v.clone()))
            else {
                kernel.push(std::mem::take(&mut cur.combo));
                break;
            };
            match pivot_of_row[lead_row as usize] {
                None => {
                    if lead_val.is_negative() {
                        for (_, v) in cur.entries.iter_mut() {
                            *v = -v.clone();
                        }
                        for (_, v) in cur.combo.iter_mut() {
                            *v = -v.clone();
                        }
                    }
                    pivot_of_row[lead_row as usize] = Some(finished.len());
                    finished.push(cur);
                    break;
                }
                Some(p) => {
                    let pv = finished[p].entries.first().expect("pivot nonempty").1.clone();
                    if (&lead_val % &pv).is_zero() {
                        let q = -(&lead_val / &pv);
                        cur.entries = axpy(&cur.entries, &q, &finished[p].entries);
                        cur.combo = axpy(&cur.combo, &q, &finished[p].combo);
                    } else {
                        // gcd mix: g = x*pv + y*lead_val
                        let e = pv.extended_gcd(&lead_val);
                        let (g, x, y) = (e.gcd, e.x, e.y);
                        let new_piv_entries =
                            mix(&x, &finished[p].entries, &y, &cur.entries);
                        let new_piv_combo = mix(&x, &finished[p].combo, &y, &cur.combo);
                        let (cp, cc) = (&pv / &g, &lead_val / &g);
                        let new_cur_entries =
                            mix(&-cc.clone(), &finished[p].entries, &cp, &cur.entries);
                        let new_cur_combo = mix(&-cc, &finished[p].combo, &cp, &cur.combo);
                        finished[p] = WorkCol { entries: new_piv_entries, combo: new_piv_combo };
                        cur = WorkCol { entries: new_cur_entries, combo: new_cur_combo };
                    }
                }
            }
        }
    }

    // Order pivot columns by pivot row for a clean staircase.
    let mut order: Vec<usize> = (0..finished.len()).collect();
    order.sort_by_key(|&i| finished[i].entries.first().map(|(r, _)| *r).unwrap_or(u32::MAX));
    let pivots = order.iter().map(|&i| finished[i].entries.clone()).collect();

    SparseEchelon { rows: m.rows, ncols_input: ncols, pivots, kernel }
}

/// Kernel basis of a sparse integer matrix, as dense columns.
pub fn sparse_kernel(m: &SparseIntMatrix) -> IntMatrix {
    sparse_echelon(m).kernel_dense()
}

/// Solve the staircase system `echelon_cols * x = b` by back-substitution.
/// The columns must have strictly increasing leading rows (as produced by
/// [`sparse_echelon`]). Returns None when no integer solution exists.
pub fn staircase_solve(echelon: &[Vec<(u32, BigInt)>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut b: Vec<BigInt> = b.to_vec();
    let mut x = vec![BigInt::zero(); echelon.len()];
    for (j, col) in echelon.iter().enumerate() {
        let (lead, v) = col.first().expect("echelon column nonempty");
        let e = &b[*lead as usize];
        if e.is_zero() {
            continue;
        }
        let (q, r) = e.div_rem(v);
        if !r.is_zero() {
            return None;
        }
        for (i, cv) in col {
            let upd = &b[*i as usize] - &q * cv;
            b[*i as usize] = upd;
        }
        x[j] = q;
    }
    if b.iter().all(|v| v.is_zero()) {
        Some(x)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_kernel_matches_dense() {
        let d = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let sp = SparseIntMatrix::from_dense(&d);
        let k = sparse_kernel(&sp);
        assert_eq!(k.cols, 2);
        assert!(d.mul(&k).is_zero());
        // kernel is saturated: contains (2, -1, 0) and (3, 0, -1) combos
        let e = sparse_echelon(&sp);
        assert_eq!(e.rank(), 1);
    }

    #[test]
    fn echelon_rank() {
        let d = IntMatrix::from_rows(&[vec![2, 0, 2], vec![0, 3, 3], vec![0, 0, 0]]);
        let sp = SparseIntMatrix::from_dense(&d);
        let e = sparse_echelon(&sp);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.kernel.len(), 1);
    }

    #[test]
    fn staircase_solver() {
        let d = IntMatrix::from_rows(&[vec![2, 0], vec![1, 3], vec![0, 1]]);
        let sp = SparseIntMatrix::from_dense(&d);
        let e = sparse_echelon(&sp);
        // b = 1*col0 + 2*col1 (in echelon coordinates this is solvable)
        let b: Vec<BigInt> =
            vec![BigInt::from(2), BigInt::from(7), BigInt::from(2)];
        let x = staircase_solve(&e.pivots, &b).unwrap();
        let mut check = vec![BigInt::zero(); 3];
        for (j, col) in e.pivots.iter().enumerate() {
            for (i, v) in col {
                check[*i as usize] += v * &x[j];
            }
        }
        assert_eq!(check, b);
        assert!(staircase_solve(&e.pivots, &[BigInt::from(1), BigInt::zero(), BigInt::zero()])
            .is_none());
    }
}
