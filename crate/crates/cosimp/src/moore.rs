//! Moore (normalized) cochain cohomology of a truncated cosimplicial
//! abelian group.
//!
//! Computed on the coface-quotient complex Q^n = A^n / sum_i im(d^i) with
//! differential the alternating coface sum; Q is the normalized complex's
//! mirror under the Dold-Kan splitting A^n = N^n (+) sum im(d^i) and has the
//! same cohomology. The big quotient presentations collapse to a handful of
//! generators after eliminating unit-pivot relations, which keeps the final
//! integer normal forms tiny even when the levels have thousands of
//! coordinates.

use crate::cosimplicial::CosimplicialAbGroup;
use crate::error::CosimpError;
use exactalg::modp::SparseFp;
use exactalg::sparse::axpy;
use exactalg::{cohomology_presented, FgAbGroup, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

type SparseCol = Vec<(u32, BigInt)>;

/// One simplified spot of the quotient complex.
struct Spot {
    /// indices of kept original generators
    kept: Vec<usize>,
    /// kept x orig projection (original generator -> kept coordinates)
    proj: IntMatrix,
    /// reduced relation matrix in kept coordinates
    rels: IntMatrix,
}

pub struct MooreCohomology {
    pub groups: Vec<FgAbGroup>,
    spots: Vec<Spot>,
    /// reduced differentials kept_k -> kept_{k+1}, one per spot in window
    diffs: Vec<IntMatrix>,
    /// label of the generator at each spot where the group has rank 1
    pub generator_labels: Vec<Option<String>>,
}

impl MooreCohomology {
    /// Normal-form coordinates of the class of a cocycle given in original
    /// level coordinates at the given spot.
    pub fn express_class(&self, spot: usize, vec: &[BigInt]) -> Option<Vec<BigInt>> {
        let p = &self.spots[spot].proj;
        let reduced = p.mul_vec(vec);
        self.groups[spot].express(&reduced)
    }
}

/// Relation columns of the quotient complex at a given level: the level's
/// own torsion relations plus every coface image from the level below.
fn quotient_relations(c: &CosimplicialAbGroup, level: usize) -> Vec<SparseCol> {
    let mut cols: Vec<SparseCol> = Vec::new();
    let rels = c.levels[level].relations();
    for j in 0..rels.cols {
        let col: SparseCol = (0..rels.rows)
            .filter_map(|i| (!rels[(i, j)].is_zero()).then(|| (i as u32, rels[(i, j)].clone())))
            .collect();
        cols.push(col);
    }
    if level > 0 {
        for d in &c.cofaces[level - 1] {
            for j in 0..d.cols {
                let col: SparseCol = (0..d.rows)
                    .filter_map(|i| {
                        (!d[(i, j)].is_zero()).then(|| (i as u32, d[(i, j)].clone()))
                    })
                    .collect();
                if !col.is_empty() {
                    cols.push(col);
                }
            }
        }
    }
    cols
}

/// Eliminate generators with unit-pivot relations; returns the kept rows,
/// projection matrix, and the reduced relation columns.
fn simplify_presentation(ngens: usize, mut cols: Vec<Option<SparseCol>>) -> Spot {
    // row -> active column indices carrying an entry there
    let mut rows_index: Vec<Vec<u32>> = vec![Vec::new(); ngens];
    for (ci, col) in cols.iter().enumerate() {
        if let Some(c) = col {
            for (r, _) in c {
                rows_index[*r as usize].push(ci as u32);
            }
        }
    }
    let mut eliminated: Vec<(usize, SparseCol)> = Vec::new();
    let mut dead_row = vec![false; ngens];

    loop {
        // pick the sparsest active column with a unit entry
        let mut best: Option<(usize, usize)> = None; // (col, nnz)
        for (ci, col) in cols.iter().enumerate() {
            let Some(c) = col else { continue };
            if c.iter().any(|(_, v)| v.abs().is_one()) {
                let nnz = c.len();
                if best.map_or(true, |(_, bn)| nnz < bn) {
                    best = Some((ci, nnz));
                }
            }
        }
        let Some((ci, _)) = best else { break };
        let col = cols[ci].take().expect("column active");
        let (urow, uval) = col
            .iter()
            .find(|(_, v)| v.abs().is_one())
            .map(|(r, v)| (*r as usize, v.clone()))
            .expect("unit entry");
        // normalize: expr of e_urow over the other rows: uval * e_urow = -rest
        // => e_urow = -uval * rest (uval = +-1)
        let expr: SparseCol = col
            .iter()
            .filter(|(r, _)| *r as usize != urow)
            .map(|(r, v)| (*r, -(&uval * v)))
            .collect();
        // clear row urow from every other active column
        let holders = std::mem::take(&mut rows_index[urow]);
        for hc in holders {
            let hc = hc as usize;
            if hc == ci {
                continue;
            }
            let Some(other) = cols[hc].take() else { continue };
            let Some(entry) = other.iter().find(|(r, _)| *r as usize == urow).map(|(_, v)| v.clone())
            else {
                cols[hc] = Some(other);
                continue;
            };
            // other := other - entry * uval * col  (removes the urow entry)
            let q = -(&entry * &uval);
            let merged = axpy(&other, &q, &col);
            for (r, _) in &merged {
                let r = *r as usize;
                if r != urow && !dead_row[r] {
                    rows_index[r].push(hc as u32);
                }
            }
            cols[hc] = if merged.is_empty() { None } else { Some(merged) };
        }
        dead_row[urow] = true;
        eliminated.push((urow, expr));
    }

    let kept: Vec<usize> = (0..ngens).filter(|&r| !dead_row[r]).collect();
    let kept_pos: Vec<Option<usize>> = {
        let mut v = vec![None; ngens];
        for (i, &r) in kept.iter().enumerate() {
            v[r] = Some(i);
        }
        v
    };

    // Back-substitute eliminated expressions (reverse order references only
    // kept rows or rows eliminated later).
    let mut resolved: Vec<Option<Vec<BigInt>>> = vec![None; ngens]; // kept-coords
    for (row, expr) in eliminated.iter().rev() {
        let mut acc = vec![BigInt::zero(); kept.len()];
        for (r, v) in expr {
            let r = *r as usize;
            if let Some(k) = kept_pos[r] {
                acc[k] += v;
            } else {
                let sub = resolved[r].as_ref().expect("resolved in reverse order");
                for (k, s) in sub.iter().enumerate() {
                    if !s.is_zero() {
                        acc[k] += v * s;
                    }
                }
            }
        }
        resolved[*row] = Some(acc);
    }

    let mut proj = IntMatrix::zero(kept.len(), ngens);
    for g in 0..ngens {
        if let Some(k) = kept_pos[g] {
            proj[(k, g)] = BigInt::one();
        } else {
            let sub = resolved[g].as_ref().expect("eliminated row resolved");
            for (k, s) in sub.iter().enumerate() {
                proj[(k, g)] = s.clone();
            }
        }
    }

    // Remaining relations in kept coordinates.
    let remaining: Vec<SparseCol> = cols.into_iter().flatten().filter(|c| !c.is_empty()).collect();
    let mut rels = IntMatrix::zero(kept.len(), remaining.len());
    for (j, col) in remaining.iter().enumerate() {
        for (r, v) in col {
            let k = kept_pos[*r as usize].expect("active rows are kept");
            rels[(k, j)] = v.clone();
        }
    }

    Spot { kept, proj, rels }
}

fn alternating_sum_sparse(c: &CosimplicialAbGroup, level: usize) -> Vec<SparseCol> {
    // D_level = sum_i (-1)^i d^i: level -> level+1, one sparse column per
    // source generator.
    let src_rank = c.levels[level].rank();
    let mut cols: Vec<SparseCol> = vec![Vec::new(); src_rank];
    for (i, d) in c.cofaces[level].iter().enumerate() {
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        for j in 0..d.cols {
            for r in 0..d.rows {
                if !d[(r, j)].is_zero() {
                    cols[j].push((r as u32, &sign * &d[(r, j)]));
                }
            }
        }
    }
    for col in &mut cols {
        col.sort_by_key(|(r, _)| *r);
        let mut merged: SparseCol = Vec::with_capacity(col.len());
        for (r, v) in col.drain(..) {
            if let Some(last) = merged.last_mut() {
                if last.0 == r {
                    last.1 += v;
                    continue;
                }
            }
            merged.push((r, v));
        }
        merged.retain(|(_, v)| !v.is_zero());
        *col = merged;
    }
    cols
}

/// Cohomology of the Moore complex in degrees 0..=window.
pub fn moore_cohomology(
    c: &CosimplicialAbGroup,
    window: usize,
) -> Result<MooreCohomology, CosimpError> {
    if window + 1 > c.n_max() {
        return Err(CosimpError::WindowExceedsTruncation { want: window, have: c.n_max() });
    }
    // Simplify every spot 0..=window+1.
    let mut spots: Vec<Spot> = Vec::with_capacity(window + 2);
    for k in 0..=window + 1 {
        let rel_cols = quotient_relations(c, k)
            .into_iter()
            .map(Some)
            .collect();
        spots.push(simplify_presentation(c.levels[k].rank(), rel_cols));
    }
    // Reduced differentials D'_k: kept_k -> kept_{k+1} for k = 0..=window.
    let mut diffs: Vec<IntMatrix> = Vec::with_capacity(window + 1);
    for k in 0..=window {
        let sparse = alternating_sum_sparse(c, k);
        let pk1 = &spots[k + 1].proj;
        let mut m = IntMatrix::zero(spots[k + 1].kept.len(), spots[k].kept.len());
        for (jj, &g) in spots[k].kept.iter().enumerate() {
            // column = P_{k+1} * (sparse column of generator g)
            for (r, v) in &sparse[g] {
                for i in 0..pk1.rows {
                    let pv = &pk1[(i, *r as usize)];
                    if !pv.is_zero() {
                        let acc = &m[(i, jj)] + pv * v;
                        m[(i, jj)] = acc;
                    }
                }
            }
        }
        diffs.push(m);
    }

    let mut groups = Vec::with_capacity(window + 1);
    let mut labels = Vec::with_capacity(window + 1);
    for k in 0..=window {
        let incoming = if k == 0 {
            IntMatrix::zero(spots[0].kept.len(), 0)
        } else {
            diffs[k - 1].clone()
        };
        let h = cohomology_presented(&incoming, &spots[k].rels, &diffs[k], &spots[k + 1].rels)
            .expect("quotient complex is a complex");
        // Label the generator by the dominant kept original label when the
        // group has a single generator.
        let label = if h.num_generators() == 1 {
            let rep = h.representatives.col(0);
            rep.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .max_by_key(|(_, v)| v.abs())
                .map(|(i, _)| c.levels[k].labels[spots[k].kept[i]].clone())
        } else {
            None
        };
        groups.push(h);
        labels.push(label);
    }

    Ok(MooreCohomology { groups, spots, diffs, generator_labels: labels })
}

impl MooreCohomology {
    /// Mod-2 dimensions of the same complex, from ranks over F_2:
    /// dim H^k(C (x) F_2) = kept_k + r(R_{k+1}) - r([D_k | R_{k+1}])
    ///                    - r([D_{k-1} | R_k]).
    pub fn mod2_dims(&self) -> Vec<usize> {
        let window = self.diffs.len() - 1;
        let rank2 = |m: &IntMatrix| exactalg::modp_rank(m, 2).expect("2 is prime");
        let mut out = Vec::with_capacity(window + 1);
        for k in 0..=window {
            let kept = self.spots[k].kept.len();
            let r_next = &self.spots[k + 1].rels;
            let stacked_out = self.diffs[k].hcat(r_next);
            let in_part = if k == 0 {
                rank2(&self.spots[0].rels)
            } else {
                rank2(&self.diffs[k - 1].hcat(&self.spots[k].rels))
            };
            out.push(kept + rank2(r_next) - rank2(&stacked_out) - in_part);
        }
        out
    }
}

/// Mod-2 Moore dimensions straight from a cosimplicial group.
pub fn moore_mod2_dims(
    c: &CosimplicialAbGroup,
    window: usize,
) -> Result<Vec<usize>, CosimpError> {
    // rank-only computation over F_2 with sparse elimination; avoids the
    // integer reduction entirely.
    if window + 1 > c.n_max() {
        return Err(CosimpError::WindowExceedsTruncation { want: window, have: c.n_max() });
    }
    let rank_cols = |cols: &[SparseCol], rows: usize| -> usize {
        let mut sp = SparseFp::new(2, rows);
        for col in cols {
            let c2: Vec<(u32, u64)> = col
                .iter()
                .filter_map(|(r, v)| {
                    let x = ((v % BigInt::from(2) + BigInt::from(2)) % BigInt::from(2))
                        .try_into()
                        .unwrap_or(0u64);
                    (x != 0).then_some((*r, x))
                })
                .collect();
            sp.push_col(c2);
        }
        sp.rank()
    };
    // r[R_k], r[D_k | R_{k+1}], r[D_{k-1} | R_k] all on the original
    // (unsimplified) presentation: dims agree with the simplified one.
    let mut r_rels = Vec::with_capacity(window + 2);
    for k in 0..=window + 1 {
        let rels = quotient_relations(c, k);
        r_rels.push((rels, c.levels[k].rank()));
    }
    let mut out = Vec::with_capacity(window + 1);
    for k in 0..=window {
        let dim = c.levels[k].rank();
        let d_cols = alternating_sum_sparse(c, k);
        let (rels_next, rows_next) = &r_rels[k + 1];
        let mut combined: Vec<SparseCol> = d_cols.clone();
        combined.extend(rels_next.iter().cloned());
        let r_out = rank_cols(&combined, *rows_next);
        let r_next = rank_cols(rels_next, *rows_next);
        let r_in = if k == 0 {
            rank_cols(&r_rels[0].0, r_rels[0].1)
        } else {
            let d_prev = alternating_sum_sparse(c, k - 1);
            let (rels_here, rows_here) = &r_rels[k];
            let mut comb: Vec<SparseCol> = d_prev;
            comb.extend(rels_here.iter().cloned());
            rank_cols(&comb, *rows_here)
        };
        out.push(dim + r_next - r_out - r_in);
    }
    Ok(out)
}

/// Representative of the cup square of a degree-(t+1) class iota in the
/// symmetric square at level 2t+2: front-face pushforward of iota tensored
/// with the back-face pushforward, symmetrized.
///
/// `iota` is given in level-(t+1) coordinates of `a`; the result is in the
/// level-(2t+2) coordinates of `sym` (which must be sym2(a, twisted)).
pub fn cup_square_class(
    a: &CosimplicialAbGroup,
    iota: &[BigInt],
    t: usize,
    twisted: bool,
) -> Vec<BigInt> {
    // front: apply top cofaces d^{last} from level t+1 up to 2t+2
    let mut front = iota.to_vec();
    for level in t + 1..=2 * t + 1 {
        let d = c_last(a, level);
        front = d.mul_vec(&front);
    }
    // back: apply d^0 repeatedly
    let mut back = iota.to_vec();
    for level in t + 1..=2 * t + 1 {
        let d = &a.cofaces[level][0];
        back = d.mul_vec(&back);
    }
    let r = a.levels[2 * t + 2].rank();
    crate::sym2::sym_tensor(r, &front, &back, twisted)
}

fn c_last(a: &CosimplicialAbGroup, level: usize) -> &IntMatrix {
    let ds = &a.cofaces[level];
    &ds[ds.len() - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_z_has_h0_only() {
        let c = CosimplicialAbGroup::constant_z(6);
        let h = moore_cohomology(&c, 5).unwrap();
        assert_eq!(h.groups[0].factors_u64(), vec![0]);
        for k in 1..=5 {
            assert!(h.groups[k].is_trivial(), "degree {}", k);
        }
    }

    #[test]
    fn cycles_t2_concentrated_in_degree_3() {
        let c = crate::cycles::cycles_cosimplicial(2, 2, 8).unwrap();
        let h = moore_cohomology(&c, 7).unwrap();
        for k in 0..=7 {
            if k == 3 {
                assert_eq!(h.groups[k].factors_u64(), vec![0], "Z at t+1");
            } else {
                assert!(h.groups[k].is_trivial(), "degree {}", k);
            }
        }
    }

    #[test]
    fn mod2_dims_match_integral_for_cycles() {
        let c = crate::cycles::cycles_cosimplicial(2, 2, 7).unwrap();
        let h = moore_cohomology(&c, 6).unwrap();
        assert_eq!(h.mod2_dims(), vec![0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(moore_mod2_dims(&c, 6).unwrap(), vec![0, 0, 0, 1, 0, 0, 0]);
    }
}
