use crate::error::ExactError;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense bit matrix over GF(2), rows as u64 blocks.
#[derive(Clone)]
pub struct BitMatrix {
    pub rows: usize,
    pub cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn xor_rows(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words, src * self.words);
        for k in 0..self.words {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    /// Rank by row-echelon Gaussian elimination.
    pub fn rank(&mut self) -> usize {
        let mut rank = 0;
        for j in 0..self.cols {
            let mut pivot = None;
            for i in rank..self.rows {
                if self.get(i, j) {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            self.data.swap_chunks(rank, p, self.words);
            for i in 0..self.rows {
                if i != rank && self.get(i, j) {
                    self.xor_rows(i, rank);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl SwapChunks for Vec<u64> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        for k in 0..width {
            self.swap(a * width + k, b * width + k);
        }
    }
}

/// Dense matrix over GF(p) for small odd p; entries reduced.
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat; p is prime and small.
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        result
    }

    pub fn rank(&mut self) -> usize {
        let p = self.p;
        let mut rank = 0;
        for j in 0..self.cols {
            let mut pivot = None;
            for i in rank..self.rows {
                if self.get(i, j) != 0 {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(piv) = pivot else { continue };
            for k in 0..self.cols {
                let (a, b) = (rank * self.cols + k, piv * self.cols + k);
                self.data.swap(a, b);
            }
            let inv = self.inv(self.get(rank, j));
            for k in 0..self.cols {
                let v = self.get(rank, k) * inv % p;
                self.set(rank, k, v);
            }
            for i in 0..self.rows {
                if i != rank && self.get(i, j) != 0 {
                    let f = self.get(i, j);
                    for k in 0..self.cols {
                        let v = (self.get(i, k) + (p - f) * self.get(rank, k)) % p;
                        self.set(i, k, v);
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// Rank of an integer matrix over the field with p elements.
pub fn modp_rank(m: &IntMatrix, p: u64) -> Result<usize, ExactError> {
    if !is_prime(p) {
        return Err(ExactError::NotPrime(p));
    }
    let entry = |i: usize, j: usize| -> u64 {
        let r: BigInt = &m[(i, j)] % BigInt::from(p);
        let r = if r < BigInt::from(0) { r + BigInt::from(p) } else { r };
        r.to_u64().unwrap()
    };
    if p == 2 {
        let mut b = BitMatrix::zero(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                if entry(i, j) & 1 == 1 {
                    b.set(i, j, true);
                }
            }
        }
        Ok(b.rank())
    } else {
        let mut f = FpMatrix::zero(p, m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                f.set(i, j, entry(i, j));
            }
        }
        Ok(f.rank())
    }
}

/// Sparse columns over GF(p), for ranks where a dense matrix does not fit.
/// Column elimination with first-row pivoting; columns are sorted index
/// lists with coefficients (coefficients omitted for p = 2).
pub struct SparseFp {
    pub p: u64,
    pub rows: usize,
    pub cols: Vec<Vec<(u32, u64)>>,
}

impl SparseFp {
    pub fn new(p: u64, rows: usize) -> Self {
        SparseFp { p, rows, cols: Vec::new() }
    }

    pub fn push_col(&mut self, mut col: Vec<(u32, u64)>) {
        col.retain(|&(_, v)| v % self.p != 0);
        col.sort_by_key(|&(i, _)| i);
        self.cols.push(col);
    }

    fn inv(p: u64, a: u64) -> u64 {
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

    fn axpy(p: u64, c: &[(u32, u64)], q: u64, other: &[(u32, u64)]) -> Vec<(u32, u64)> {
        let mut out = Vec::with_capacity(c.len() + other.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < c.len() || b < other.len() {
            if b >= other.len() || (a < c.len() && c[a].0 < other[b].0) {
                out.push(c[a]);
                a += 1;
            } else if a >= c.len() || other[b].0 < c[a].0 {
                let v = q * other[b].1 % p;
                if v != 0 {
                    out.push((other[b].0, v));
                }
                b += 1;
            } else {
                let v = (c[a].1 + q * other[b].1) % p;
                if v != 0 {
                    out.push((c[a].0, v));
                }
                a += 1;
                b += 1;
            }
        }
        out
    }

    /// Rank via column elimination. Consumes the columns.
    pub fn rank(&mut self) -> usize {
        let p = self.p;
        let mut pivot_of_row: Vec<u32> = vec![u32::MAX; self.rows];
        let mut pivots: Vec<Vec<(u32, u64)>> = Vec::new();
        let cols = std::mem::take(&mut self.cols);
        for mut cur in cols {
            loop {
                let Some(&(lead, v)) = cur.first() else { break };
                let owner = pivot_of_row[lead as usize];
                if owner == u32::MAX {
                    let inv = Self::inv(p, v);
                    if inv != 1 {
                        for (_, x) in cur.iter_mut() {
                            *x = *x * inv % p;
                        }
                    }
                    pivot_of_row[lead as usize] = pivots.len() as u32;
                    pivots.push(cur);
                    break;
                }
                let q = (p - v) % p;
                cur = Self::axpy(p, &cur, q, &pivots[owner as usize]);
            }
        }
        pivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(is_prime(2) && is_prime(3) && is_prime(47));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(49));
    }

    #[test]
    fn modp_rank_examples() {
        let z = IntMatrix::zero(3, 4);
        assert_eq!(modp_rank(&z, 5).unwrap(), 0);
        let id = IntMatrix::identity(4);
        assert_eq!(modp_rank(&id, 2).unwrap(), 4);
        assert_eq!(modp_rank(&id, 7).unwrap(), 4);
        // [[2,1],[0,2]] mod 2 reduces to [[0,1],[0,0]]: rank 1
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![0, 2]]);
        assert_eq!(modp_rank(&m, 2).unwrap(), 1);
        assert!(matches!(modp_rank(&m, 6), Err(ExactError::NotPrime(6))));
    }

    #[test]
    fn sparse_matches_dense_rank() {
        let m = IntMatrix::from_rows(&[
            vec![1, 2, 3, 0],
            vec![2, 4, 6, 1],
            vec![1, 0, 1, 1],
        ]);
        for p in [2u64, 3, 5] {
            let dense = modp_rank(&m, p).unwrap();
            let mut sp = SparseFp::new(p, 3);
            for j in 0..4 {
                let col: Vec<(u32, u64)> = (0..3)
                    .filter_map(|i| {
                        let v = ((&m[(i, j)] % BigInt::from(p) + BigInt::from(p))
                            % BigInt::from(p))
                        .to_u64()
                        .unwrap();
                        (v != 0).then_some((i as u32, v))
                    })
                    .collect();
                sp.push_col(col);
            }
            assert_eq!(sp.rank(), dense, "p = {}", p);
        }
    }
}
