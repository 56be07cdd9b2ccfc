//! Normalized bar resolution: the all-degrees oracle for group cohomology,
//! plus mod-p dimension series with a Sylow stable-element route for the
//! sizes the direct complex cannot reach.

use crate::error::GroupCohError;
use crate::gmodule::GModule;
use crate::group::FiniteMatrixGroup;
use exactalg::modp::is_prime;
use exactalg::zn::{zn_smith, PrimePower, ZnSparse};
use exactalg::{subquotient, FgAbGroup, IntMatrix, SparseIntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug)]
pub struct BarBudget {
    /// Maximum number of sparse entries allowed in any single differential.
    pub max_entries: u64,
}

impl Default for BarBudget {
    fn default() -> Self {
        BarBudget { max_entries: 10_000_000 }
    }
}

pub(crate) fn tuple_count(nontrivial: usize, s: usize) -> u64 {
    (nontrivial as u64).pow(s as u32)
}

pub(crate) fn tuple_unrank(nontrivial: usize, s: usize, mut idx: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(s);
    for _ in 0..s {
        out.push((idx % nontrivial as u64) as usize + 1);
        idx /= nontrivial as u64;
    }
    out
}

pub(crate) fn tuple_rank(nontrivial: usize, t: &[usize]) -> u64 {
    let mut idx = 0u64;
    for &g in t.iter().rev() {
        idx = idx * nontrivial as u64 + (g - 1) as u64;
    }
    idx
}

/// Sparse entries of d_s applied to the basis cochain (tuple `t`, coordinate
/// `coord`) in the normalized bar cochain complex:
/// (dF)(g_0,...,g_s) = g_0 F(g_1..g_s)
///                   + sum_{i=1..s} (-1)^i F(..., g_{i-1} g_i, ...)
///                   + (-1)^{s+1} F(g_0,...,g_{s-1}),
/// tuples containing the identity excluded throughout. Group element 0 is
/// the identity; tuple entries range over 1..order.
pub(crate) fn bar_column(
    group: &FiniteMatrixGroup,
    actions: &[IntMatrix],
    ncoords: usize,
    s: usize,
    t: &[usize],
    coord: usize,
) -> Vec<(u64, i64)> {
    let nt = group.order() - 1;
    let mut out: Vec<(u64, i64)> = Vec::new();
    // face 0: rows (g, t), entry = action(g)[i, coord]
    for g in 1..group.order() {
        let mut row_tuple = Vec::with_capacity(s + 1);
        row_tuple.push(g);
        row_tuple.extend_from_slice(t);
        let base = tuple_rank(nt, &row_tuple) * ncoords as u64;
        let act = &actions[g];
        for i in 0..ncoords {
            let v = &act[(i, coord)];
            if !v.is_zero() {
                let vi = i64::try_from(v.clone()).expect("action entry fits i64");
                out.push((base + i as u64, vi));
            }
        }
    }
    // middle faces: output tuples that merge down onto t at position i
    for i in 1..=s {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let target = t[i - 1];
        for a in 1..group.order() {
            let b = group.mul[group.inv[a]][target];
            if b == 0 {
                continue;
            }
            let mut row_tuple = Vec::with_capacity(s + 1);
            row_tuple.extend_from_slice(&t[..i - 1]);
            row_tuple.push(a);
            row_tuple.push(b);
            row_tuple.extend_from_slice(&t[i..]);
            let base = tuple_rank(nt, &row_tuple) * ncoords as u64;
            out.push((base + coord as u64, sign));
        }
    }
    // last face: rows (t, g)
    let sign = if (s + 1) % 2 == 0 { 1 } else { -1 };
    for g in 1..group.order() {
        let mut row_tuple = Vec::with_capacity(s + 1);
        row_tuple.extend_from_slice(t);
        row_tuple.push(g);
        let base = tuple_rank(nt, &row_tuple) * ncoords as u64;
        out.push((base + coord as u64, sign));
    }
    out.sort_by_key(|&(r, _)| r);
    let mut merged: Vec<(u64, i64)> = Vec::with_capacity(out.len());
    for (r, v) in out {
        if let Some(last) = merged.last_mut() {
            if last.0 == r {
                last.1 += v;
                continue;
            }
        }
        merged.push((r, v));
    }
    merged.retain(|&(_, v)| v != 0);
    merged
}

/// Sparse entries of the top differential d_s: (order-1)^{s+1} * n * (s+2).
fn entries_needed(group: &FiniteMatrixGroup, ncoords: usize, s: usize) -> u64 {
    let nt = (group.order() - 1) as u64;
    nt.checked_pow(s as u32 + 1)
        .unwrap_or(u64::MAX)
        .saturating_mul(ncoords as u64)
        .saturating_mul(s as u64 + 2)
}

fn check_budget(
    group: &FiniteMatrixGroup,
    ncoords: usize,
    s_top: usize,
    budget: BarBudget,
) -> Result<(), GroupCohError> {
    let needed = entries_needed(group, ncoords, s_top);
    if needed > budget.max_entries {
        return Err(GroupCohError::BudgetExceeded { needed, budget: budget.max_entries });
    }
    Ok(())
}

/// Cohomology of the normalized bar cochain complex in degrees 0..=s_max.
pub fn bar_h(
    module: &GModule,
    s_max: usize,
    budget: BarBudget,
) -> Result<Vec<FgAbGroup>, GroupCohError> {
    check_budget(&module.group, module.dim(), s_max, budget)?;

    // With one common prime-power order on every coordinate the whole
    // complex is a Z/p^k module and stays in machine words; otherwise use
    // integer presentations.
    let common: Option<PrimePower> = {
        let orders = &module.orders;
        if !orders.is_empty() && orders.iter().all(|&d| d != 0 && d == orders[0]) {
            PrimePower::from_modulus(orders[0])
        } else {
            None
        }
    };
    match common {
        Some(pp) => Ok(bar_h_mod_pk(module, s_max, pp)),
        None => Ok(bar_h_integral(module, s_max)),
    }
}

fn bar_h_mod_pk(module: &GModule, s_max: usize, pp: PrimePower) -> Vec<FgAbGroup> {
    let group = &module.group;
    let n = module.dim();
    let nt = group.order() - 1;

    let mut echelons = Vec::with_capacity(s_max + 1);
    let mut image_cols: Vec<Vec<Vec<(u32, u64)>>> = Vec::with_capacity(s_max + 1);
    for s in 0..=s_max {
        let rows_count = (tuple_count(nt, s + 1) * n as u64) as usize;
        let mut zs = ZnSparse::new(pp, rows_count);
        let mut raw_cols: Vec<Vec<(u32, u64)>> = Vec::new();
        for ti in 0..tuple_count(nt, s) {
            let t = tuple_unrank(nt, s, ti);
            for coord in 0..n {
                let col = bar_column(group, &module.actions, n, s, &t, coord);
                let col64: Vec<(u32, i64)> = col.iter().map(|&(r, v)| (r as u32, v)).collect();
                zs.push_col_i64(&col64);
                raw_cols.push(zs.cols.last().unwrap().clone());
            }
        }
        image_cols.push(raw_cols);
        echelons.push(zs.echelon());
    }

    let mut out = Vec::with_capacity(s_max + 1);
    for s in 0..=s_max {
        let dim = (tuple_count(nt, s) * n as u64) as usize;
        // Kernel combos of d_s are already coordinate vectors in C^s
        // (column j of d_s is the image of basis vector j of C^s).
        let mut zsp = ZnSparse::new(pp, dim);
        for combo in &echelons[s].kernel {
            let mut col = combo.clone();
            col.sort_by_key(|&(i, _)| i);
            zsp.cols.push(col);
        }
        let ech = zsp.echelon();
        let pivots = ech.pivots;
        let np = pivots.len();
        let lead_of: HashMap<u32, usize> = pivots
            .iter()
            .enumerate()
            .map(|(i, p)| (p.first().expect("pivot nonempty").0, i))
            .collect();

        let reduce_in_p = |vec0: &[(u32, u64)]| -> Option<Vec<u64>> {
            let mut v: Vec<(u32, u64)> = vec0.to_vec();
            let mut coeffs = vec![0u64; np];
            loop {
                let Some(&(lead, val)) = v.first() else { return Some(coeffs) };
                let &pos = lead_of.get(&lead)?;
                let pv = pivots[pos].first().unwrap().1;
                let (a_val, a_piv) = (pp.val(val), pp.val(pv));
                if a_val < a_piv {
                    return None;
                }
                let unit = val / pp.p.pow(a_val);
                let q = (unit as u128 * pp.p.pow(a_val - a_piv) as u128 % pp.m as u128) as u64;
                coeffs[pos] = (coeffs[pos] + q) % pp.m;
                let neg = (pp.m - q) % pp.m;
                let pv_col = &pivots[pos];
                let mut merged: Vec<(u32, u64)> = Vec::with_capacity(v.len() + pv_col.len());
                let (mut a, mut b) = (0usize, 0usize);
                while a < v.len() || b < pv_col.len() {
                    if b >= pv_col.len() || (a < v.len() && v[a].0 < pv_col[b].0) {
                        merged.push(v[a]);
                        a += 1;
                    } else if a >= v.len() || pv_col[b].0 < v[a].0 {
                        let x = (neg as u128 * pv_col[b].1 as u128 % pp.m as u128) as u64;
                        if x != 0 {
                            merged.push((pv_col[b].0, x));
                        }
                        b += 1;
                    } else {
                        let x = ((v[a].1 as u128 + neg as u128 * pv_col[b].1 as u128)
                            % pp.m as u128) as u64;
                        if x != 0 {
                            merged.push((v[a].0, x));
                        }
                        a += 1;
                        b += 1;
                    }
                }
                v = merged;
            }
        };

        // Relations in pivot coordinates: boundaries plus Howell syzygies.
        let mut rel_cols: Vec<Vec<u64>> = Vec::new();
        if s > 0 {
            for col in &image_cols[s - 1] {
                if col.is_empty() {
                    continue;
                }
                rel_cols
                    .push(reduce_in_p(col).expect("boundary must lie in the cocycle module"));
            }
        }
        for (i, p_col) in pivots.iter().enumerate() {
            let a = pp.val(p_col.first().unwrap().1);
            if a == 0 {
                continue;
            }
            let ann = pp.p.pow(pp.k - a);
            let scaled: Vec<(u32, u64)> = p_col
                .iter()
                .filter_map(|&(r, v)| {
                    let x = (ann as u128 * v as u128 % pp.m as u128) as u64;
                    (x != 0).then_some((r, x))
                })
                .collect();
            let mut coeffs = reduce_in_p(&scaled).expect("Howell annihilator reduces");
            let mut col = vec![0u64; np];
            for (j, c) in coeffs.drain(..).enumerate() {
                col[j] = (pp.m - c) % pp.m;
            }
            col[i] = (col[i] + ann) % pp.m;
            rel_cols.push(col);
        }

        let q = rel_cols.len();
        let mut data = vec![0u64; np * q];
        for (j, col) in rel_cols.iter().enumerate() {
            for i in 0..np {
                data[i * q + j] = col[i];
            }
        }
        let sm = zn_smith(pp, np, q, &mut data);
        let mut factors: Vec<u64> = Vec::new();
        for &val in &sm.diag_vals {
            if val > 0 {
                factors.push(pp.p.pow(val.min(pp.k)));
            }
        }
        for _ in sm.rank..np {
            factors.push(pp.m);
        }
        out.push(FgAbGroup::from_factors(&factors));
    }
    out
}

fn bar_h_integral(module: &GModule, s_max: usize) -> Vec<FgAbGroup> {
    let group = &module.group;
    let n = module.dim();
    let nt = group.order() - 1;
    let mrels = module.relations();

    let mut diffs: Vec<SparseIntMatrix> = Vec::with_capacity(s_max + 1);
    for s in 0..=s_max {
        let cols_count = (tuple_count(nt, s) * n as u64) as usize;
        let rows_count = (tuple_count(nt, s + 1) * n as u64) as usize;
        let mut sp = SparseIntMatrix::zero(rows_count, cols_count);
        for ti in 0..tuple_count(nt, s) {
            let t = tuple_unrank(nt, s, ti);
            for coord in 0..n {
                let col = bar_column(group, &module.actions, n, s, &t, coord);
                let j = (ti as usize) * n + coord;
                for (r, v) in col {
                    sp.push_entry(j, r as usize, BigInt::from(v));
                }
            }
        }
        sp.sort_columns();
        diffs.push(sp);
    }

    let block_rels = |s: usize| -> IntMatrix {
        let blocks = tuple_count(nt, s) as usize;
        let mut rels = IntMatrix::zero(blocks * n, blocks * mrels.cols);
        for b in 0..blocks {
            for i in 0..n {
                for j in 0..mrels.cols {
                    rels[(b * n + i, b * mrels.cols + j)] = mrels[(i, j)].clone();
                }
            }
        }
        rels
    };

    let mut out = Vec::with_capacity(s_max + 1);
    for s in 0..=s_max {
        let d_out = diffs[s].to_dense();
        let rels_here = block_rels(s);
        let rels_next = block_rels(s + 1);
        let z = exactalg::snf::solve_mod_image(&d_out, &rels_next);
        let zfull = z.hcat(&rels_here);
        let b = if s == 0 {
            rels_here.clone()
        } else {
            diffs[s - 1].to_dense().hcat(&rels_here)
        };
        out.push(subquotient(&zfull, &b));
    }
    out
}

/// Dimensions of H^s(G, F_p) for s = 0..=s_max with trivial coefficients.
///
/// Direct sparse elimination over F_p when the top differential fits the
/// entry budget; beyond that, the computation splits to the Sylow
/// p-subgroup via stable elements (restriction to a Sylow subgroup is
/// injective, with image the classes agreeing under all double-coset
/// comparisons).
pub fn modp_bar_dims(
    group: &FiniteMatrixGroup,
    p: u64,
    s_max: usize,
    budget: BarBudget,
) -> Result<Vec<usize>, GroupCohError> {
    if !is_prime(p) {
        return Err(GroupCohError::NotPrime(p));
    }
    if check_budget(group, 1, s_max, budget).is_ok() {
        return Ok(crate::stable::modp_dims_direct(group, p, s_max));
    }
    crate::stable::modp_dims_sylow(group, p, s_max, budget)
}
