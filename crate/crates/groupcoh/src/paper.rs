//! The concrete modules the case studies run on: unit groups of the rings
//! of level-2 and level-3 modular functions with their GL_2 actions, and
//! the trivial torsion modules that feed the Picard pipelines.

use crate::gmodule::GModule;
use crate::group::{self, FiniteMatrixGroup};
use exactalg::IntMatrix;
use std::sync::Arc;

pub fn gl2_z2() -> Arc<FiniteMatrixGroup> {
    Arc::new(group::gl2_z2())
}

pub fn gl2_z3() -> Arc<FiniteMatrixGroup> {
    Arc::new(group::gl2_z3())
}

pub fn c2() -> Arc<FiniteMatrixGroup> {
    Arc::new(group::c2())
}

/// Units of the level-2 ring: Z/2 + Z^3 on (-1, 2, s, s-1), written
/// additively as (eps, k, a, b). The order-3 generator sends
/// s -> (s-1)/s and the order-2 generator sends s -> 1/s, giving
///   sigma: (eps, k, a, b) -> (eps + b, k, -a - b, a)
///   tau:   (eps, k, a, b) -> (eps + b, k, -a - b, b)
pub fn units_level2(group: Arc<FiniteMatrixGroup>) -> GModule {
    let sigma = IntMatrix::from_rows(&[
        vec![1, 0, 0, 1],
        vec![0, 1, 0, 0],
        vec![0, 0, -1, -1],
        vec![0, 0, 1, 0],
    ]);
    let tau = IntMatrix::from_rows(&[
        vec![1, 0, 0, 1],
        vec![0, 1, 0, 0],
        vec![0, 0, -1, -1],
        vec![0, 0, 0, 1],
    ]);
    GModule::new(
        group,
        vec![2, 0, 0, 0],
        vec!["-1".into(), "2".into(), "s".into(), "s-1".into()],
        vec![sigma, tau],
    )
    .expect("level-2 units action is consistent")
}

/// Units of the level-3 ring: Z/2 + Z/3 + Z^4 on
/// (-1, zeta, 1-zeta, t, 1-zeta*t, 1+zeta^2*t), written additively as
/// m = (eps, alpha, beta, a, b, c). Generators act by
///   x:     m -> (eps+a+c, alpha+b-c, beta, -a-b-c, c, b)
///   y:     m -> (eps+b+c, alpha-a-c, beta, b, a, -a-b-c)
///   z:     m -> (eps, alpha+a, beta, a, c, -a-b-c)
///   sigma: m -> (eps+beta+b, -alpha-beta-b+c, beta, -a-b-c, b, c)
pub fn units_level3(group: Arc<FiniteMatrixGroup>) -> GModule {
    let x = IntMatrix::from_rows(&[
        vec![1, 0, 0, 1, 0, 1],
        vec![0, 1, 0, 0, 1, -1],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, -1, -1, -1],
        vec![0, 0, 0, 0, 0, 1],
        vec![0, 0, 0, 0, 1, 0],
    ]);
    let y = IntMatrix::from_rows(&[
        vec![1, 0, 0, 0, 1, 1],
        vec![0, 1, 0, -1, 0, -1],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, -1, -1, -1],
    ]);
    let z = IntMatrix::from_rows(&[
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 1, 0, 0],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 1],
        vec![0, 0, 0, -1, -1, -1],
    ]);
    let sigma = IntMatrix::from_rows(&[
        vec![1, 0, 1, 0, 1, 0],
        vec![0, -1, -1, 0, -1, 1],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, -1, -1, -1],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 1],
    ]);
    GModule::new(
        group,
        vec![2, 3, 0, 0, 0, 0],
        vec![
            "-1".into(),
            "zeta".into(),
            "1-zeta".into(),
            "t".into(),
            "1-zeta*t".into(),
            "1+zeta^2*t".into(),
        ],
        vec![x, y, z, sigma],
    )
    .expect("level-3 units action is consistent")
}

/// Trivial Z/4 (pi_0 of the level-2 Picard spectrum).
pub fn z4_trivial_level2(group: Arc<FiniteMatrixGroup>) -> GModule {
    GModule::trivial(group, vec![4], vec!["suspension".into()])
}

/// Trivial Z/2 (pi_0 of the level-3 Picard spectrum).
pub fn z2_trivial_level3(group: Arc<FiniteMatrixGroup>) -> GModule {
    GModule::trivial(group, vec![2], vec!["suspension".into()])
}

/// Z with the sign action of C2.
pub fn c2_sign(group: Arc<FiniteMatrixGroup>) -> GModule {
    let neg = IntMatrix::from_rows(&[vec![-1]]);
    GModule::new(group, vec![0], vec!["e".into()], vec![neg]).expect("sign action")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn vec_i64(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn level3_action_sanity_on_t() {
        // x(t) = -1/t, sigma(t) = 1/t, y(t) = zeta^2 (1-zeta t)/(1+zeta^2 t),
        // z(t) = zeta t / (1+zeta^2 t), in additive coordinates.
        let g = gl2_z3();
        let m = units_level3(g);
        let t = vec_i64(&[0, 0, 0, 1, 0, 0]);
        let act = |gi: usize, v: &[BigInt]| {
            crate::gmodule::reduce_vec(&m.orders, &m.gen_actions[gi].mul_vec(v))
        };
        // t has coordinates (0,0,0,1,0,0); free coordinates stay signed.
        assert_eq!(act(0, &t), vec_i64(&[1, 0, 0, -1, 0, 0])); // x(t) = -1/t
        assert_eq!(act(3, &t), vec_i64(&[0, 0, 0, -1, 0, 0])); // sigma(t) = 1/t
        assert_eq!(act(1, &t), vec_i64(&[0, 2, 0, 0, 1, -1]));
        assert_eq!(act(2, &t), vec_i64(&[0, 1, 0, 1, 0, -1]));
    }

    #[test]
    fn level2_invariants_are_minus_one_and_two() {
        let g = gl2_z2();
        let m = units_level2(g);
        let inv = m.invariants_subgroup();
        assert_eq!(inv.factors_u64(), vec![2, 0]);
    }
}
