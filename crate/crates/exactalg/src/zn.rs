//! Linear algebra over Z/p^k, used where whole complexes consist of
//! p-power-torsion modules (bar cochains with Z/4 coefficients). Over the
//! local ring Z/p^k every matrix is equivalent to a diagonal of prime
//! powers, and kernels need the Howell trick of appending annihilator
//! multiples of pivot columns.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
    pub m: u64,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Self {
        let m = p.pow(k);
        PrimePower { p, k, m }
    }

    /// Split m into (p, k) when m is a prime power > 1.
    pub fn from_modulus(m: u64) -> Option<Self> {
        if m < 2 {
            return None;
        }
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                let mut k = 0;
                let mut v = m;
                while v % p == 0 {
                    v /= p;
                    k += 1;
                }
                return (v == 1).then(|| PrimePower::new(p, k));
            }
            p += 1;
        }
        Some(PrimePower::new(m, 1))
    }

    pub fn val(&self, a: u64) -> u32 {
        if a % self.m == 0 {
            return self.k;
        }
        let mut v = 0;
        let mut a = a % self.m;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    /// Inverse of a unit mod m.
    pub fn inv_unit(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        // extended euclid over u64/i128
        let (mut r0, mut r1) = (self.m as i128, (a % self.m) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        (t0.rem_euclid(self.m as i128)) as u64
    }
}

/// Sparse columns over Z/p^k; sorted by row, entries nonzero mod m.
pub struct ZnSparse {
    pub pp: PrimePower,
    pub rows: usize,
    pub cols: Vec<Vec<(u32, u64)>>,
}

fn axpy_mod(m: u64, c: &[(u32, u64)], q: u64, other: &[(u32, u64)]) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(c.len() + other.len());
    let (mut a, mut b) = (0usize, 0usize);
    while a < c.len() || b < other.len() {
        if b >= other.len() || (a < c.len() && c[a].0 < other[b].0) {
            out.push(c[a]);
            a += 1;
        } else if a >= c.len() || other[b].0 < c[a].0 {
            let v = (q as u128 * other[b].1 as u128 % m as u128) as u64;
            if v != 0 {
                out.push((other[b].0, v));
            }
            b += 1;
        } else {
            let v = ((c[a].1 as u128 + q as u128 * other[b].1 as u128) % m as u128) as u64;
            if v != 0 {
                out.push((c[a].0, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

fn scale_mod(m: u64, c: &[(u32, u64)], s: u64) -> Vec<(u32, u64)> {
    c.iter()
        .filter_map(|&(i, v)| {
            let w = (s as u128 * v as u128 % m as u128) as u64;
            (w != 0).then_some((i, w))
        })
        .collect()
}

pub struct ZnEchelon {
    pub pp: PrimePower,
    pub rows: usize,
    pub ncols_input: usize,
    /// Pivot columns, each led by p^a * unit at a claimed row, scaled so the
    /// leading value is exactly p^a.
    pub pivots: Vec<Vec<(u32, u64)>>,
    /// Generators of the kernel {x : A x = 0 mod p^k} as combinations of the
    /// input columns (a spanning set, Howell-complete).
    pub kernel: Vec<Vec<(u32, u64)>>,
}

impl ZnSparse {
    pub fn new(pp: PrimePower, rows: usize) -> Self {
        ZnSparse { pp, rows, cols: Vec::new() }
    }

    pub fn push_col_i64(&mut self, col: &[(u32, i64)]) {
        let m = self.pp.m as i64;
        let mut v: Vec<(u32, u64)> = col
            .iter()
            .filter_map(|&(i, x)| {
                let r = x.rem_euclid(m) as u64;
                (r != 0).then_some((i, r))
            })
            .collect();
        v.sort_by_key(|&(i, _)| i);
        self.cols.push(v);
    }

    /// Column echelon over Z/p^k with kernel tracking, Howell-augmented so
    /// the kernel combinations span the full solution module.
    pub fn echelon(self) -> ZnEchelon {
        let pp = self.pp;
        let m = pp.m;
        let mut pivot_of_row: Vec<u32> = vec![u32::MAX; self.rows];
        let mut pivots: Vec<Vec<(u32, u64)>> = Vec::new();
        let mut pivot_combos: Vec<Vec<(u32, u64)>> = Vec::new();
        let mut kernel: Vec<Vec<(u32, u64)>> = Vec::new();

        // Work queue: original columns with unit combos, then Howell
        // annihilator columns appended as pivots get claimed.
        let mut queue: std::collections::VecDeque<(Vec<(u32, u64)>, Vec<(u32, u64)>)> =
            self.cols
                .into_iter()
                .enumerate()
                .map(|(j, c)| (c, vec![(j as u32, 1u64)]))
                .collect();

        while let Some((mut cur, mut combo)) = queue.pop_front() {
            loop {
                let Some(&(lead, v)) = cur.first() else {
                    if !combo.is_empty() {
                        kernel.push(combo);
                    }
                    break;
                };
                let owner = pivot_of_row[lead as usize];
                if owner == u32::MAX {
                    // normalize leading value to p^a
                    let a = pp.val(v);
                    let unit = v / pp.p.pow(a);
                    let inv = pp.inv_unit(unit);
                    if inv != 1 {
                        cur = scale_mod(m, &cur, inv);
                        combo = scale_mod(m, &combo, inv);
                    }
                    // Howell: the annihilator multiple p^(k-a) * cur has zero
                    // leading entry and must be processed too.
                    if a > 0 {
                        let ann = pp.p.pow(pp.k - a);
                        let tail = scale_mod(m, &cur, ann);
                        let tail_combo = scale_mod(m, &combo, ann);
                        queue.push_back((tail, tail_combo));
                    }
                    pivot_of_row[lead as usize] = pivots.len() as u32;
                    pivots.push(cur);
                    pivot_combos.push(combo);
                    break;
                }
                let p_idx = owner as usize;
                let pv = pivots[p_idx].first().unwrap().1;
                let (a_cur, a_piv) = (pp.val(v), pp.val(pv));
                if a_cur >= a_piv {
                    // leading value = p^a_cur * unit; pivot = p^a_piv:
                    // q = v / pv is exact mod m
                    let unit = v / pp.p.pow(a_cur);
                    let q = (unit as u128 * pp.p.pow(a_cur - a_piv) as u128 % m as u128) as u64;
                    let neg_q = (m - q) % m;
                    cur = axpy_mod(m, &cur, neg_q, &pivots[p_idx]);
                    combo = axpy_mod(m, &combo, neg_q, &pivot_combos[p_idx]);
                } else {
                    // smaller valuation: swap roles, then continue reducing
                    let unit = pv / pp.p.pow(a_piv);
                    debug_assert_eq!(pp.val(unit), 0);
                    let a = a_cur;
                    let u_cur = v / pp.p.pow(a);
                    let inv = pp.inv_unit(u_cur);
                    let new_pivot = scale_mod(m, &cur, inv);
                    let new_combo = scale_mod(m, &combo, inv);
                    let old_pivot = std::mem::replace(&mut pivots[p_idx], new_pivot);
                    let old_combo = std::mem::replace(&mut pivot_combos[p_idx], new_combo);
                    if a > 0 {
                        let ann = pp.p.pow(pp.k - a);
                        queue.push_back((
                            scale_mod(m, &pivots[p_idx], ann),
                            scale_mod(m, &pivot_combos[p_idx], ann),
                        ));
                    }
                    let _ = unit;
                    cur = old_pivot;
                    combo = old_combo;
                }
            }
        }

        ZnEchelon { pp, rows: self.rows, ncols_input: kernel_width(&kernel, &pivot_combos), pivots, kernel }
    }
}

fn kernel_width(kernel: &[Vec<(u32, u64)>], combos: &[Vec<(u32, u64)>]) -> usize {
    kernel
        .iter()
        .chain(combos.iter())
        .flat_map(|c| c.iter().map(|&(i, _)| i as usize + 1))
        .max()
        .unwrap_or(0)
}

/// Diagonalization over the local ring Z/p^k: returns the multiset of
/// diagonal prime powers p^a (a < k) plus the count of unit pivots folded
/// away; the cokernel of the input then reads off directly.
///
/// `a` is consumed as dense u64 data mod p^k.
pub struct ZnSmith {
    pub pp: PrimePower,
    /// Valuations of the diagonal entries, one per pivot, ascending.
    pub diag_vals: Vec<u32>,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    /// Row transform tracking: u * a * v = d (mod p^k).
    pub u: Vec<u64>,
}

pub fn zn_smith(pp: PrimePower, rows: usize, cols: usize, data: &mut [u64]) -> ZnSmith {
    assert_eq!(data.len(), rows * cols);
    let m = pp.m;
    let at = |d: &[u64], i: usize, j: usize| d[i * cols + j];
    let mut u: Vec<u64> = vec![0; rows * rows];
    for i in 0..rows {
        u[i * rows + i] = 1;
    }
    let mut vals = Vec::new();
    let steps = rows.min(cols);
    let mut rank = 0;
    for t in 0..steps {
        // minimal-valuation pivot in trailing block
        let mut best: Option<(usize, usize, u32)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = at(data, i, j) % m;
                if v == 0 {
                    continue;
                }
                let val = pp.val(v);
                if best.map_or(true, |(_, _, bv)| val < bv) {
                    best = Some((i, j, val));
                }
            }
        }
        let Some((pi, pj, val)) = best else { break };
        // swap into place
        if pi != t {
            for j in 0..cols {
                data.swap(t * cols + j, pi * cols + j);
            }
            for j in 0..rows {
                u.swap(t * rows + j, pi * rows + j);
            }
        }
        if pj != t {
            for i in 0..rows {
                data.swap(i * cols + t, i * cols + pj);
            }
        }
        // scale row t so pivot = p^val
        let unit = at(data, t, t) / pp.p.pow(val);
        let inv = pp.inv_unit(unit % pp.m);
        if inv != 1 {
            for j in 0..cols {
                data[t * cols + j] = (data[t * cols + j] as u128 * inv as u128 % m as u128) as u64;
            }
            for j in 0..rows {
                u[t * rows + j] = (u[t * rows + j] as u128 * inv as u128 % m as u128) as u64;
            }
        }
        let piv = at(data, t, t);
        debug_assert_eq!(piv, pp.p.pow(val) % m);
        // eliminate column and row (pivot divides everything by minimality)
        for i in t + 1..rows {
            let e = at(data, i, t);
            if e == 0 {
                continue;
            }
            let q = e / piv;
            debug_assert_eq!(e % piv, 0);
            let neg_q = (m - q % m) % m;
            for j in 0..cols {
                let add = (neg_q as u128 * data[t * cols + j] as u128 % m as u128) as u64;
                data[i * cols + j] = ((data[i * cols + j] as u128 + add as u128) % m as u128) as u64;
            }
            for j in 0..rows {
                let add = (neg_q as u128 * u[t * rows + j] as u128 % m as u128) as u64;
                u[i * rows + j] = ((u[i * rows + j] as u128 + add as u128) % m as u128) as u64;
            }
        }
        for j in t + 1..cols {
            let e = at(data, t, j);
            if e == 0 {
                continue;
            }
            let q = e / piv;
            let neg_q = (m - q % m) % m;
            for i in 0..rows {
                let add = (neg_q as u128 * data[i * cols + t] as u128 % m as u128) as u64;
                data[i * cols + j] = ((data[i * cols + j] as u128 + add as u128) % m as u128) as u64;
            }
        }
        vals.push(val);
        rank = t + 1;
    }
    ZnSmith { pp, diag_vals: vals, rank, rows, cols, u }
}

/// Reduce a BigInt mod m into u64.
pub fn big_mod_u64(x: &BigInt, m: u64) -> u64 {
    let r: BigInt = x % BigInt::from(m);
    let r = if r < BigInt::from(0) { r + BigInt::from(m) } else { r };
    r.to_u64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_kernel_mod4(cols: &[Vec<(u32, u64)>], rows: usize) -> std::collections::HashSet<Vec<u64>> {
        // enumerate all x in (Z/4)^n with A x = 0
        let n = cols.len();
        let mut out = std::collections::HashSet::new();
        let total = 4u64.pow(n as u32);
        for mut code in 0..total {
            let mut x = vec![0u64; n];
            for xi in x.iter_mut() {
                *xi = code % 4;
                code /= 4;
            }
            let mut img = vec![0u64; rows];
            for (j, col) in cols.iter().enumerate() {
                for &(i, v) in col {
                    img[i as usize] = (img[i as usize] + v * x[j]) % 4;
                }
            }
            if img.iter().all(|&v| v == 0) {
                out.insert(x);
            }
        }
        out
    }

    fn span_mod4(gens: &[Vec<(u32, u64)>], n: usize) -> std::collections::HashSet<Vec<u64>> {
        let mut dense: Vec<Vec<u64>> = gens
            .iter()
            .map(|g| {
                let mut v = vec![0u64; n];
                for &(i, x) in g {
                    v[i as usize] = x % 4;
                }
                v
            })
            .collect();
        dense.retain(|v| v.iter().any(|&x| x != 0));
        let mut out = std::collections::HashSet::new();
        let k = dense.len();
        let total = 4u64.pow(k as u32);
        for mut code in 0..total {
            let mut x = vec![0u64; n];
            for g in &dense {
                let c = code % 4;
                code /= 4;
                for (xi, gi) in x.iter_mut().zip(g.iter()) {
                    *xi = (*xi + c * gi) % 4;
                }
            }
            out.insert(x);
        }
        out
    }

    #[test]
    fn howell_kernel_complete_mod4() {
        let pp = PrimePower::new(2, 2);
        // A = [[2, 1], [0, 2]] over Z/4
        let mut zs = ZnSparse::new(pp, 2);
        zs.push_col_i64(&[(0, 2)]);
        zs.push_col_i64(&[(0, 1), (1, 2)]);
        let cols = zs.cols.clone();
        let ech = zs.echelon();
        let brute = brute_kernel_mod4(&cols, 2);
        let spanned = span_mod4(&ech.kernel, 2);
        assert_eq!(brute, spanned);
    }

    #[test]
    fn howell_kernel_random_mod4() {
        let pp = PrimePower::new(2, 2);
        // deterministic pseudo-random small matrices
        let mut seed = 12345u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % 4
        };
        for _ in 0..30 {
            let rows = 3;
            let ncols = 3;
            let mut zs = ZnSparse::new(pp, rows);
            let mut cols_raw = Vec::new();
            for _ in 0..ncols {
                let col: Vec<(u32, i64)> =
                    (0..rows).filter_map(|i| {
                        let v = next() as i64;
                        (v != 0).then_some((i as u32, v))
                    }).collect();
                cols_raw.push(col.iter().map(|&(i, v)| (i, v as u64)).collect::<Vec<_>>());
                zs.push_col_i64(&col);
            }
            let ech = zs.echelon();
            let brute = brute_kernel_mod4(&cols_raw, rows);
            let spanned = span_mod4(&ech.kernel, ncols);
            assert_eq!(brute, spanned);
        }
    }

    #[test]
    fn zn_smith_diag() {
        let pp = PrimePower::new(2, 2);
        // [[2, 0], [0, 1]] over Z/4: diag vals [0, 1]
        let mut data = vec![2, 0, 0, 1];
        let s = zn_smith(pp, 2, 2, &mut data);
        let mut v = s.diag_vals.clone();
        v.sort();
        assert_eq!(v, vec![0, 1]);
    }
}
