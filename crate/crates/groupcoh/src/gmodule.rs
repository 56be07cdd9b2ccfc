use crate::error::GroupCohError;
use crate::group::FiniteMatrixGroup;
use exactalg::{subquotient, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use std::sync::Arc;

/// A finitely generated abelian group with an action of a finite matrix
/// group: coordinates live in + Z/d_i (d_i = 0 for Z), and each group
/// generator acts through an integer matrix on those coordinates.
#[derive(Clone)]
pub struct GModule {
    pub group: Arc<FiniteMatrixGroup>,
    /// Coordinate orders d_i >= 0 (0 encodes a Z summand).
    pub orders: Vec<u64>,
    pub labels: Vec<String>,
    /// One action matrix per group generator.
    pub gen_actions: Vec<IntMatrix>,
    /// Action of every group element, composed along the Cayley tree.
    pub actions: Vec<IntMatrix>,
}

impl GModule {
    pub fn new(
        group: Arc<FiniteMatrixGroup>,
        orders: Vec<u64>,
        labels: Vec<String>,
        gen_actions: Vec<IntMatrix>,
    ) -> Result<Self, GroupCohError> {
        let n = orders.len();
        assert_eq!(labels.len(), n, "one label per coordinate");
        assert_eq!(gen_actions.len(), group.gen_names.len(), "one action per generator");
        for (name, a) in group.gen_names.iter().zip(gen_actions.iter()) {
            if a.rows != n || a.cols != n {
                return Err(GroupCohError::ActionNotWellDefined(name.clone()));
            }
            // well-defined on torsion: d_j * column_j dies in the quotient
            for j in 0..n {
                if orders[j] == 0 {
                    continue;
                }
                for i in 0..n {
                    let v = &a[(i, j)] * BigInt::from(orders[j]);
                    if !reduces_to_zero(&v, orders[i]) {
                        return Err(GroupCohError::ActionNotWellDefined(name.clone()));
                    }
                }
            }
        }

        // Compose actions over the whole group along the BFS tree, then
        // verify every Cayley edge: act(e*g) = act(e) * act(g) mod orders.
        let size = group.order();
        let mut actions: Vec<IntMatrix> = vec![IntMatrix::identity(n); size];
        for e in 1..size {
            let edge = group.tree[e].expect("non-identity element has a tree edge");
            actions[e] = actions[edge.parent].mul(&gen_actions[edge.gen]);
        }
        let module = GModule { group: group.clone(), orders, labels, gen_actions, actions };
        for e in 0..size {
            for (gi, ga) in module.gen_actions.iter().enumerate() {
                let target = group.mul[e][group.gen_elems[gi]];
                let lhs = module.actions[e].mul(ga);
                if !module.congruent(&lhs, &module.actions[target]) {
                    return Err(GroupCohError::ActionRelationViolated(
                        e,
                        group.gen_names[gi].clone(),
                    ));
                }
            }
        }
        Ok(module)
    }

    /// Trivial action of `group` on the group with the given orders.
    pub fn trivial(group: Arc<FiniteMatrixGroup>, orders: Vec<u64>, labels: Vec<String>) -> Self {
        let n = orders.len();
        let gen_actions = vec![IntMatrix::identity(n); group.gen_names.len()];
        GModule::new(group, orders, labels, gen_actions).expect("trivial action is valid")
    }

    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    /// Relation columns of the coordinate presentation (d_i e_i).
    pub fn relations(&self) -> IntMatrix {
        let orders: Vec<BigInt> = self.orders.iter().map(|&d| BigInt::from(d)).collect();
        exactalg::Presentation::with_orders(&orders).rels
    }

    fn congruent(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        for i in 0..a.rows {
            for j in 0..a.cols {
                let d = &a[(i, j)] - &b[(i, j)];
                if !reduces_to_zero(&d, self.orders[i]) {
                    return false;
                }
            }
        }
        true
    }

    /// Action matrix of an arbitrary group element.
    pub fn action(&self, elem: usize) -> &IntMatrix {
        &self.actions[elem]
    }

    /// The subgroup of elements fixed by every generator, as a group with
    /// representatives in module coordinates.
    pub fn invariants_subgroup(&self) -> exactalg::FgAbGroup {
        let n = self.dim();
        let k = self.gen_actions.len();
        let mut stacked = IntMatrix::zero(k * n, n);
        for (gi, a) in self.gen_actions.iter().enumerate() {
            let diff = a.sub(&IntMatrix::identity(n));
            for i in 0..n {
                for j in 0..n {
                    stacked[(gi * n + i, j)] = diff[(i, j)].clone();
                }
            }
        }
        // relations of the stacked target: block diagonal copies
        let rels = self.relations();
        let mut target_rels = IntMatrix::zero(k * n, k * rels.cols);
        for b in 0..k {
            for i in 0..n {
                for j in 0..rels.cols {
                    target_rels[(b * n + i, b * rels.cols + j)] = rels[(i, j)].clone();
                }
            }
        }
        let z = exactalg::snf::solve_mod_image(&stacked, &target_rels);
        let zfull = z.hcat(&rels);
        subquotient(&zfull, &rels)
    }
}

fn reduces_to_zero(v: &BigInt, order: u64) -> bool {
    if order == 0 {
        v.is_zero()
    } else {
        (v % BigInt::from(order)).is_zero()
    }
}

/// Reduce a coordinate vector modulo the orders.
pub fn reduce_vec(orders: &[u64], v: &[BigInt]) -> Vec<BigInt> {
    v.iter()
        .zip(orders.iter())
        .map(|(x, &d)| {
            if d == 0 {
                x.clone()
            } else {
                let m = BigInt::from(d);
                let r = x % &m;
                if r < BigInt::zero() {
                    r + m
                } else {
                    r
                }
            }
        })
        .collect()
}
