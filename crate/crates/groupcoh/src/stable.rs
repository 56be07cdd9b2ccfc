//! Mod-p dimension series via Cartan-Eilenberg stable elements.
//!
//! For S a Sylow p-subgroup of G, restriction H*(G, F_p) -> H*(S, F_p) is
//! injective with image the stable classes: those alpha with
//! res_{S cap gSg^-1}(alpha) = (conjugation by g)* res(alpha) for every
//! (S,S)-double coset representative g. Everything here is plain linear
//! algebra over F_p on bar cochains of subgroups of order <= 16.

use crate::bar::{bar_column, tuple_count, tuple_rank, tuple_unrank};
use crate::error::GroupCohError;
use crate::group::FiniteMatrixGroup;
use crate::BarBudget;
use exactalg::modp::SparseFp;
use exactalg::IntMatrix;

/// Multiplication table of a subgroup, with translation to parent indices.
/// Local index 0 is the identity.
struct SubTable {
    /// local -> parent element index
    elems: Vec<usize>,
    /// parent -> local (usize::MAX if absent)
    local_of: Vec<usize>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl SubTable {
    fn new(group: &FiniteMatrixGroup, members: &[usize]) -> Self {
        let mut elems: Vec<usize> = members.to_vec();
        elems.sort();
        // identity first
        let pos0 = elems.iter().position(|&e| e == 0).expect("subgroup contains identity");
        elems.swap(0, pos0);
        let mut local_of = vec![usize::MAX; group.order()];
        for (i, &e) in elems.iter().enumerate() {
            local_of[e] = i;
        }
        let k = elems.len();
        let mut mul = vec![vec![0usize; k]; k];
        for a in 0..k {
            for b in 0..k {
                mul[a][b] = local_of[group.mul[elems[a]][elems[b]]];
            }
        }
        let mut inv = vec![0usize; k];
        for a in 0..k {
            inv[a] = local_of[group.inv[elems[a]]];
        }
        SubTable { elems, local_of, mul, inv }
    }

    fn order(&self) -> usize {
        self.elems.len()
    }
}

/// Dense vector over F_p with a bit representation for p = 2.
#[derive(Clone)]
enum FpVec {
    Bits(Vec<u64>),
    Vals { p: u64, data: Vec<u64> },
}

impl FpVec {
    fn zero(p: u64, len: usize) -> Self {
        if p == 2 {
            FpVec::Bits(vec![0u64; len.div_ceil(64)])
        } else {
            FpVec::Vals { p, data: vec![0; len] }
        }
    }

    fn set_add(&mut self, idx: usize, v: u64) {
        match self {
            FpVec::Bits(w) => {
                if v % 2 == 1 {
                    w[idx / 64] ^= 1 << (idx % 64);
                }
            }
            FpVec::Vals { p, data } => {
                data[idx] = (data[idx] + v) % *p;
            }
        }
    }

    fn get(&self, idx: usize) -> u64 {
        match self {
            FpVec::Bits(w) => (w[idx / 64] >> (idx % 64)) & 1,
            FpVec::Vals { data, .. } => data[idx],
        }
    }

    fn first_nonzero(&self) -> Option<usize> {
        match self {
            FpVec::Bits(w) => {
                for (i, &word) in w.iter().enumerate() {
                    if word != 0 {
                        return Some(i * 64 + word.trailing_zeros() as usize);
                    }
                }
                None
            }
            FpVec::Vals { data, .. } => data.iter().position(|&v| v != 0),
        }
    }

    /// self += c * other
    fn axpy(&mut self, c: u64, other: &FpVec) {
        match (self, other) {
            (FpVec::Bits(a), FpVec::Bits(b)) => {
                if c % 2 == 1 {
                    for (x, y) in a.iter_mut().zip(b.iter()) {
                        *x ^= *y;
                    }
                }
            }
            (FpVec::Vals { p, data: a }, FpVec::Vals { data: b, .. }) => {
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x = (*x + c * *y) % *p;
                }
            }
            _ => unreachable!("mixed representations"),
        }
    }

    fn scale(&mut self, c: u64) {
        match self {
            FpVec::Bits(_) => debug_assert_eq!(c % 2, 1),
            FpVec::Vals { p, data } => {
                for x in data.iter_mut() {
                    *x = *x * c % *p;
                }
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }
}

fn fp_inv(p: u64, a: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Column echelon over F_p with combination tracking.
struct FpEchelon {
    p: u64,
    ncols_in: usize,
    /// (pivot_row, normalized column)
    pivots: Vec<(usize, FpVec)>,
    /// kernel combinations over input columns
    kernel: Vec<FpVec>,
}

fn fp_echelon(p: u64, rows: usize, cols: Vec<FpVec>) -> FpEchelon {
    let ncols_in = cols.len();
    let mut pivot_of_row: std::collections::HashMap<usize, usize> = Default::default();
    let mut pivots: Vec<(usize, FpVec)> = Vec::new();
    let mut combos_p: Vec<FpVec> = Vec::new();
    let mut kernel = Vec::new();
    let _ = rows;
    for (j, mut cur) in cols.into_iter().enumerate() {
        let mut combo = FpVec::zero(p, ncols_in);
        combo.set_add(j, 1);
        loop {
            let Some(lead) = cur.first_nonzero() else {
                kernel.push(combo);
                break;
            };
            match pivot_of_row.get(&lead) {
                None => {
                    let v = cur.get(lead);
                    if v != 1 {
                        let inv = fp_inv(p, v);
                        cur.scale(inv);
                        combo.scale(inv);
                    }
                    pivot_of_row.insert(lead, pivots.len());
                    pivots.push((lead, cur));
                    combos_p.push(combo);
                    break;
                }
                Some(&pi) => {
                    let c = (p - cur.get(lead)) % p;
                    cur.axpy(c, &pivots[pi].1);
                    combo.axpy(c, &combos_p[pi]);
                }
            }
        }
    }
    FpEchelon { p, ncols_in, pivots, kernel }
}

/// Quotient-space coordinatizer for H = Z/B inside F_p^dim: seeded with the
/// boundary columns, then extended by cocycles; coordinates read off the
/// cocycle extensions.
struct HSpace {
    p: u64,
    /// (pivot_row, column, h_index or NONE for boundary columns)
    echelon: Vec<(usize, FpVec, Option<usize>)>,
    pub dim_h: usize,
    /// representative cocycles (one per H basis vector)
    pub reps: Vec<FpVec>,
}

const _: () = ();

impl HSpace {
    fn new(p: u64, boundaries: Vec<FpVec>, cocycles: Vec<FpVec>) -> Self {
        let mut ech: Vec<(usize, FpVec, Option<usize>)> = Vec::new();
        let mut insert = |mut v: FpVec, tag: Option<usize>| -> bool {
            loop {
                let Some(lead) = v.first_nonzero() else { return false };
                if let Some(pos) = ech.iter().position(|(r, _, _)| *r == lead) {
                    let c = (p - v.get(lead)) % p;
                    let col = ech[pos].1.clone();
                    v.axpy(c, &col);
                } else {
                    let val = v.get(lead);
                    if val != 1 {
                        v.scale(fp_inv(p, val));
                    }
                    ech.push((lead, v, tag));
                    return true;
                }
            }
        };
        for b in boundaries {
            insert(b, None);
        }
        let mut dim_h = 0;
        let mut reps = Vec::new();
        for z in cocycles {
            let rep = z.clone();
            if insert(z, Some(dim_h)) {
                reps.push(rep);
                dim_h += 1;
            }
        }
        HSpace { p, echelon: ech, dim_h, reps }
    }

    /// Coordinates of a cocycle in the H basis. None if v is not in Z-span.
    fn express(&self, v: &FpVec) -> Option<Vec<u64>> {
        let mut v = v.clone();
        let mut coords = vec![0u64; self.dim_h];
        loop {
            let Some(lead) = v.first_nonzero() else { return Some(coords) };
            let pos = self.echelon.iter().position(|(r, _, _)| *r == lead)?;
            let c = v.get(lead);
            if let Some(h) = self.echelon[pos].2 {
                coords[h] = (coords[h] + c) % self.p;
            }
            let neg = (self.p - c) % self.p;
            let col = self.echelon[pos].1.clone();
            v.axpy(neg, &col);
        }
    }
}

/// Bar-cochain machinery over F_p for a subgroup table, degrees 0..=s_max.
struct SubBar {
    p: u64,
    nt: usize,
    /// H spaces per degree
    h: Vec<HSpace>,
}

fn trivial_actions(order: usize) -> Vec<IntMatrix> {
    vec![IntMatrix::identity(1); order]
}

/// A FiniteMatrixGroup facade over a SubTable so bar_column can run on it.
fn sub_as_group(parent: &FiniteMatrixGroup, sub: &SubTable) -> FiniteMatrixGroup {
    FiniteMatrixGroup {
        modulus: parent.modulus,
        gen_names: vec![],
        gen_matrices: vec![],
        gen_elems: vec![],
        elements: sub.elems.iter().map(|&e| parent.elements[e]).collect(),
        mul: sub.mul.clone(),
        inv: sub.inv.clone(),
        tree: vec![None; sub.order()],
    }
}

impl SubBar {
    fn new(parent: &FiniteMatrixGroup, sub: &SubTable, p: u64, s_max: usize) -> Self {
        let g = sub_as_group(parent, sub);
        let nt = sub.order() - 1;
        let actions = trivial_actions(sub.order());

        // differentials d_s for s = 0..=s_max as FpVec columns
        let mut kernels: Vec<Vec<FpVec>> = Vec::new();
        let mut images: Vec<Vec<FpVec>> = Vec::new();
        for s in 0..=s_max {
            let rows = tuple_count(nt, s + 1) as usize;
            let ncols = tuple_count(nt, s) as usize;
            let mut cols = Vec::with_capacity(ncols);
            for ti in 0..ncols {
                let t = tuple_unrank(nt, s, ti as u64);
                let entries = bar_column(&g, &actions, 1, s, &t, 0);
                let mut v = FpVec::zero(p, rows);
                for (r, c) in entries {
                    v.set_add(r as usize, c.rem_euclid(p as i64) as u64);
                }
                cols.push(v);
            }
            let ech = fp_echelon(p, rows, cols);
            // image columns in C^{s+1}: the pivot columns
            images.push(ech.pivots.iter().map(|(_, c)| c.clone()).collect());
            // kernel combos are cocycles in C^s
            kernels.push(
                ech.kernel
                    .into_iter()
                    .map(|combo| {
                        // combo over input columns = vector in C^s
                        let mut v = FpVec::zero(p, ech.ncols_in);
                        for i in 0..ech.ncols_in {
                            let c = combo.get(i);
                            if c != 0 {
                                v.set_add(i, c);
                            }
                        }
                        v
                    })
                    .collect(),
            );
        }

        let mut h = Vec::with_capacity(s_max + 1);
        for s in 0..=s_max {
            let boundaries = if s == 0 { Vec::new() } else { images[s - 1].clone() };
            h.push(HSpace::new(p, boundaries, kernels[s].clone()));
        }
        SubBar { p, nt, h }
    }
}

/// Pull a cochain on S back along a tuple map K-tuples -> S-tuples.
fn pullback(
    f: &FpVec,
    s_deg: usize,
    nt_k: usize,
    nt_s: usize,
    elem_map: &[usize], // local K index (1..) -> local S index (1..)
    p: u64,
) -> FpVec {
    let rows = tuple_count(nt_k, s_deg) as usize;
    let mut out = FpVec::zero(p, rows);
    for ti in 0..rows {
        let t = tuple_unrank(nt_k, s_deg, ti as u64);
        let mapped: Vec<usize> = t.iter().map(|&k| elem_map[k]).collect();
        let si = tuple_rank(nt_s, &mapped) as usize;
        let v = f.get(si);
        if v != 0 {
            out.set_add(ti, v);
        }
    }
    out
}

/// Direct route: dims from sparse F_p ranks of the full bar complex.
pub fn modp_dims_direct(group: &FiniteMatrixGroup, p: u64, s_max: usize) -> Vec<usize> {
    let nt = group.order() - 1;
    let actions = trivial_actions(group.order());
    let mut ranks = Vec::with_capacity(s_max + 1);
    for s in 0..=s_max {
        let rows = tuple_count(nt, s + 1) as usize;
        let mut sp = SparseFp::new(p, rows);
        for ti in 0..tuple_count(nt, s) {
            let t = tuple_unrank(nt, s, ti);
            let entries = bar_column(group, &actions, 1, s, &t, 0);
            let col: Vec<(u32, u64)> = entries
                .into_iter()
                .map(|(r, v)| (r as u32, v.rem_euclid(p as i64) as u64))
                .collect();
            sp.push_col(col);
        }
        ranks.push(sp.rank());
    }
    (0..=s_max)
        .map(|s| {
            let dim = tuple_count(nt, s) as usize;
            let below = if s == 0 { 0 } else { ranks[s - 1] };
            dim - ranks[s] - below
        })
        .collect()
}

/// Sylow stable-element route.
pub fn modp_dims_sylow(
    group: &FiniteMatrixGroup,
    p: u64,
    s_max: usize,
    _budget: BarBudget,
) -> Result<Vec<usize>, GroupCohError> {
    if group.order() as u64 % p != 0 {
        // p' group: cohomology vanishes above degree 0
        return Ok((0..=s_max).map(|s| usize::from(s == 0)).collect());
    }
    let sylow = group.sylow(p as usize);
    let s_table = SubTable::new(group, &sylow);
    // Memory guard: dense bit columns of the top differential.
    let nt = s_table.order() - 1;
    let bits = tuple_count(nt, s_max) as u128 * tuple_count(nt, s_max + 1) as u128;
    if bits > 1u128 << 34 {
        return Err(GroupCohError::BudgetExceeded {
            needed: bits.min(u64::MAX as u128) as u64,
            budget: 1u64 << 34,
        });
    }
    let sbar = SubBar::new(group, &s_table, p, s_max);

    // Double coset data: for each rep g not in S, the intersection
    // K = S cap gSg^{-1} with its own bar machinery and the two tuple maps.
    struct CosetDatum {
        k_table: SubTable,
        kbar: SubBar,
        /// K local (1..) -> S local (1..): inclusion
        incl: Vec<usize>,
        /// K local (1..) -> S local of g^{-1} k g
        conj: Vec<usize>,
    }
    let in_sylow = |x: usize| sylow.binary_search(&x).is_ok();
    let mut data = Vec::new();
    for g in group.double_cosets(&sylow) {
        if in_sylow(g) {
            continue;
        }
        let members: Vec<usize> = sylow
            .iter()
            .copied()
            .filter(|&x| in_sylow(group.mul[group.mul[group.inv[g]][x]][g]))
            .collect();
        let k_table = SubTable::new(group, &members);
        let kbar = SubBar::new(group, &k_table, p, s_max);
        let mut incl = vec![0usize; k_table.order()];
        let mut conj = vec![0usize; k_table.order()];
        for kl in 0..k_table.order() {
            let parent = k_table.elems[kl];
            incl[kl] = s_table.local_of[parent];
            let conj_parent = group.mul[group.mul[group.inv[g]][parent]][g];
            conj[kl] = s_table.local_of[conj_parent];
        }
        data.push(CosetDatum { k_table, kbar, incl, conj });
    }

    let mut dims = Vec::with_capacity(s_max + 1);
    for s in 0..=s_max {
        let hs = &sbar.h[s];
        let nh = hs.dim_h;
        if nh == 0 {
            dims.push(0);
            continue;
        }
        // Column i: the stacked (res - conj) coordinates of the i-th H basis
        // class over every double coset; the stable subspace is the kernel.
        let mut per_rep: Vec<Vec<u64>> = vec![Vec::new(); nh];
        for d in &data {
            let nt_k = d.k_table.order() - 1;
            if nt_k == 0 {
                continue;
            }
            let hk = &d.kbar.h[s];
            for (ri, rep) in hs.reps.iter().enumerate() {
                let a = pullback(rep, s, nt_k, sbar.nt, &d.incl, p);
                let b = pullback(rep, s, nt_k, sbar.nt, &d.conj, p);
                let ca = hk.express(&a).expect("restriction of a cocycle is a cocycle");
                let cb = hk.express(&b).expect("conjugate of a cocycle is a cocycle");
                per_rep[ri].extend(ca.iter().zip(cb.iter()).map(|(x, y)| (x + p - y) % p));
            }
        }
        let total_len = per_rep.first().map(|v| v.len()).unwrap_or(0);
        let cols: Vec<FpVec> = per_rep
            .into_iter()
            .map(|v| {
                let mut fv = FpVec::zero(p, total_len.max(1));
                for (i, x) in v.into_iter().enumerate() {
                    if x != 0 {
                        fv.set_add(i, x);
                    }
                }
                fv
            })
            .collect();
        let ech = fp_echelon(p, total_len.max(1), cols);
        dims.push(ech.kernel.len());
    }
    Ok(dims)
}
