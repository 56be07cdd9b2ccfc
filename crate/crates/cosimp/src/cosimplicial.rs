use crate::error::CosimpError;
use exactalg::IntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;

/// One level: a finitely generated abelian group with labeled coordinates;
/// orders[i] = 0 for a Z summand, m for Z/m.
#[derive(Clone)]
pub struct Level {
    pub orders: Vec<u64>,
    pub labels: Vec<String>,
}

impl Level {
    pub fn free(labels: Vec<String>) -> Self {
        Level { orders: vec![0; labels.len()], labels }
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn is_free(&self) -> bool {
        self.orders.iter().all(|&d| d == 0)
    }

    pub fn relations(&self) -> IntMatrix {
        let orders: Vec<BigInt> = self.orders.iter().map(|&d| BigInt::from(d)).collect();
        exactalg::Presentation::with_orders(&orders).rels
    }
}

/// Truncated cosimplicial abelian group: levels 0..=n_max with coface
/// matrices d^0..d^{n+1}: level n -> level n+1 and codegeneracies
/// s^0..s^{n-1}: level n -> level n-1. The cosimplicial identities are
/// checked as matrix congruences at construction.
#[derive(Clone)]
pub struct CosimplicialAbGroup {
    pub levels: Vec<Level>,
    /// cofaces[n][i], defined for n in 0..n_max.
    pub cofaces: Vec<Vec<IntMatrix>>,
    /// codegeneracies[n][i] for n in 1..=n_max (stored at index n-1).
    pub codegeneracies: Vec<Vec<IntMatrix>>,
}

fn congruent(orders: &[u64], a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.rows != b.rows || a.cols != b.cols {
        return false;
    }
    for i in 0..a.rows {
        for j in 0..a.cols {
            let d = &a[(i, j)] - &b[(i, j)];
            let ok = if orders[i] == 0 {
                d.is_zero()
            } else {
                (&d % BigInt::from(orders[i])).is_zero()
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

impl CosimplicialAbGroup {
    pub fn new(
        levels: Vec<Level>,
        cofaces: Vec<Vec<IntMatrix>>,
        codegeneracies: Vec<Vec<IntMatrix>>,
    ) -> Result<Self, CosimpError> {
        let c = CosimplicialAbGroup { levels, cofaces, codegeneracies };
        c.check_shapes()?;
        c.check_identities()?;
        Ok(c)
    }

    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    fn check_shapes(&self) -> Result<(), CosimpError> {
        let n_max = self.n_max();
        if self.cofaces.len() != n_max {
            return Err(CosimpError::IdentityViolated(format!(
                "expected cofaces at {} levels, got {}",
                n_max,
                self.cofaces.len()
            )));
        }
        for n in 0..n_max {
            if self.cofaces[n].len() != n + 2 {
                return Err(CosimpError::IdentityViolated(format!(
                    "level {} must carry {} cofaces",
                    n,
                    n + 2
                )));
            }
            for d in &self.cofaces[n] {
                if d.cols != self.levels[n].rank() || d.rows != self.levels[n + 1].rank() {
                    return Err(CosimpError::IdentityViolated(format!(
                        "coface shape at level {}",
                        n
                    )));
                }
            }
        }
        if self.codegeneracies.len() != n_max {
            return Err(CosimpError::IdentityViolated("codegeneracy levels".into()));
        }
        for n in 1..=n_max {
            let ss = &self.codegeneracies[n - 1];
            if ss.len() != n {
                return Err(CosimpError::IdentityViolated(format!(
                    "level {} must carry {} codegeneracies",
                    n, n
                )));
            }
            for s in ss {
                if s.cols != self.levels[n].rank() || s.rows != self.levels[n - 1].rank() {
                    return Err(CosimpError::IdentityViolated(format!(
                        "codegeneracy shape at level {}",
                        n
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_identities(&self) -> Result<(), CosimpError> {
        let n_max = self.n_max();
        // d^j d^i = d^i d^{j-1} for i < j (level n -> n+2)
        for n in 0..n_max.saturating_sub(1) {
            let orders = &self.levels[n + 2].orders;
            for j in 0..self.cofaces[n + 1].len() {
                for i in 0..j.min(self.cofaces[n].len()) {
                    if j == 0 {
                        continue;
                    }
                    let lhs = self.cofaces[n + 1][j].mul(&self.cofaces[n][i]);
                    let rhs = self.cofaces[n + 1][i].mul(&self.cofaces[n][j - 1]);
                    if !congruent(orders, &lhs, &rhs) {
                        return Err(CosimpError::IdentityViolated(format!(
                            "d^{} d^{} at level {}",
                            j, i, n
                        )));
                    }
                }
            }
        }
        // codegeneracy-coface identities (level n -> n)
        for n in 0..n_max {
            let orders = &self.levels[n].orders;
            let id = IntMatrix::identity(self.levels[n].rank());
            // s^j d^i with target level n: s^j: level n+1 -> n, d^i: n -> n+1
            let ss = &self.codegeneracies[n];
            for (j, s) in ss.iter().enumerate() {
                for (i, d) in self.cofaces[n].iter().enumerate() {
                    let comp = s.mul(d);
                    if i == j || i == j + 1 {
                        if !congruent(orders, &comp, &id) {
                            return Err(CosimpError::IdentityViolated(format!(
                                "s^{} d^{} = id at level {}",
                                j, i, n
                            )));
                        }
                    } else if i < j {
                        // s^j d^i = d^i s^{j-1}: level n -> n-1 -> n
                        if n == 0 {
                            continue;
                        }
                        let rhs = self.cofaces[n - 1][i].mul(&self.codegeneracies[n - 1][j - 1]);
                        if !congruent(orders, &comp, &rhs) {
                            return Err(CosimpError::IdentityViolated(format!(
                                "s^{} d^{} at level {}",
                                j, i, n
                            )));
                        }
                    } else {
                        // i > j+1: s^j d^i = d^{i-1} s^j
                        if n == 0 {
                            continue;
                        }
                        let rhs = self.cofaces[n - 1][i - 1].mul(&self.codegeneracies[n - 1][j]);
                        if !congruent(orders, &comp, &rhs) {
                            return Err(CosimpError::IdentityViolated(format!(
                                "s^{} d^{} at level {}",
                                j, i, n
                            )));
                        }
                    }
                }
            }
        }
        // s^j s^i = s^i s^{j+1} for i <= j (level n -> n-2)
        for n in 2..=n_max {
            let orders = &self.levels[n - 2].orders;
            let ss_hi = &self.codegeneracies[n - 1]; // level n -> n-1
            let ss_lo = &self.codegeneracies[n - 2]; // level n-1 -> n-2
            for j in 0..ss_lo.len() {
                for i in 0..=j {
                    let lhs = ss_lo[j].mul(&ss_hi[i]);
                    let rhs = ss_lo[i].mul(&ss_hi[j + 1]);
                    if !congruent(orders, &lhs, &rhs) {
                        return Err(CosimpError::IdentityViolated(format!(
                            "s^{} s^{} at level {}",
                            j, i, n
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Constant cosimplicial group on a single free generator.
    pub fn constant_z(n_max: usize) -> Self {
        let levels = (0..=n_max).map(|_| Level::free(vec!["1".into()])).collect();
        let cofaces = (0..n_max).map(|n| vec![IntMatrix::identity(1); n + 2]).collect();
        let codegeneracies = (1..=n_max).map(|n| vec![IntMatrix::identity(1); n]).collect();
        CosimplicialAbGroup::new(levels, cofaces, codegeneracies).expect("constant is valid")
    }

    /// Levelwise direct sum, used by the E_2^{2t+2,2t} assembly.
    pub fn direct_sum(&self, other: &CosimplicialAbGroup) -> Result<Self, CosimpError> {
        assert_eq!(self.n_max(), other.n_max(), "truncations must match");
        let levels: Vec<Level> = self
            .levels
            .iter()
            .zip(other.levels.iter())
            .map(|(a, b)| {
                let mut orders = a.orders.clone();
                orders.extend_from_slice(&b.orders);
                let mut labels: Vec<String> =
                    a.labels.iter().map(|l| format!("L.{}", l)).collect();
                labels.extend(other.labels_prefixed(b));
                Level { orders, labels }
            })
            .collect();
        let block = |x: &IntMatrix, y: &IntMatrix| -> IntMatrix {
            let mut m = IntMatrix::zero(x.rows + y.rows, x.cols + y.cols);
            for i in 0..x.rows {
                for j in 0..x.cols {
                    m[(i, j)] = x[(i, j)].clone();
                }
            }
            for i in 0..y.rows {
                for j in 0..y.cols {
                    m[(x.rows + i, x.cols + j)] = y[(i, j)].clone();
                }
            }
            m
        };
        let cofaces = self
            .cofaces
            .iter()
            .zip(other.cofaces.iter())
            .map(|(xs, ys)| xs.iter().zip(ys.iter()).map(|(x, y)| block(x, y)).collect())
            .collect();
        let codegeneracies = self
            .codegeneracies
            .iter()
            .zip(other.codegeneracies.iter())
            .map(|(xs, ys)| xs.iter().zip(ys.iter()).map(|(x, y)| block(x, y)).collect())
            .collect();
        CosimplicialAbGroup::new(levels, cofaces, codegeneracies)
    }

    fn labels_prefixed(&self, level: &Level) -> Vec<String> {
        level.labels.iter().map(|l| format!("R.{}", l)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_is_valid() {
        let c = CosimplicialAbGroup::constant_z(5);
        assert_eq!(c.n_max(), 5);
    }

    #[test]
    fn bad_identity_rejected() {
        let mut c = CosimplicialAbGroup::constant_z(3);
        c.cofaces[1][0] = IntMatrix::from_rows(&[vec![2]]);
        let r = CosimplicialAbGroup::new(c.levels, c.cofaces, c.codegeneracies);
        assert!(r.is_err());
    }
}
