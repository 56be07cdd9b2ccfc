use crate::gmodule::GModule;
use exactalg::snf::solve_mod_image;
use exactalg::{subquotient, FgAbGroup, IntMatrix};
use num_bigint::BigInt;

/// H^0: the invariants of the module, as a subgroup of M with ambient
/// representatives in module coordinates.
pub fn invariants(module: &GModule) -> FgAbGroup {
    module.invariants_subgroup()
}

/// Cohomology of a cyclic group of order n acting through the matrix `g` on
/// the module with the given coordinate orders, via the periodic resolution:
/// H^0 = ker(g-1), H^odd = ker(N)/im(g-1), H^even = ker(g-1)/im(N) with
/// N = 1 + g + ... + g^{n-1}.
pub fn cyclic_h_matrix(n: usize, g: &IntMatrix, orders: &[u64], degree: usize) -> FgAbGroup {
    let dim = g.rows;
    let rels = exactalg::Presentation::with_orders(
        &orders.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>(),
    )
    .rels;
    let mut norm = IntMatrix::zero(dim, dim);
    let mut pow = IntMatrix::identity(dim);
    for _ in 0..n {
        norm = norm.add(&pow);
        pow = pow.mul(g);
    }
    let diff = g.sub(&IntMatrix::identity(dim));

    let (cocycle_map, boundary_map): (&IntMatrix, Option<&IntMatrix>) = if degree == 0 {
        (&diff, None)
    } else if degree % 2 == 1 {
        (&norm, Some(&diff))
    } else {
        (&diff, Some(&norm))
    };

    let z = solve_mod_image(cocycle_map, &rels);
    let zfull = z.hcat(&rels);
    let b = match boundary_map {
        None => rels.clone(),
        Some(m) => m.hcat(&rels),
    };
    subquotient(&zfull, &b)
}

/// H^degree of the cyclic subgroup generated by `elem` acting on `module`.
pub fn cyclic_h(module: &GModule, elem: usize, degree: usize) -> FgAbGroup {
    let n = module.group.elem_order(elem);
    cyclic_h_matrix(n, module.action(elem), &module.orders, degree)
}

/// H^1 via crossed homomorphisms: a cocycle is determined by its values on
/// the generators; the cocycle rule f(gh) = f(g) + g f(h) propagates along a
/// Cayley spanning tree and every non-tree edge imposes one linear
/// constraint. Coboundaries are the image of m -> (g_i m - m).
pub fn h1_crossed(module: &GModule) -> FgAbGroup {
    let group = &module.group;
    let n = module.dim();
    let k = group.gen_names.len();
    let unknowns = k * n;
    let size = group.order();

    // expr[e]: n x unknowns matrix with f(e) = expr[e] * (f(g_1),...,f(g_k))
    let mut expr: Vec<IntMatrix> = Vec::with_capacity(size);
    expr.push(IntMatrix::zero(n, unknowns));
    for e in 1..size {
        let edge = group.tree[e].expect("tree edge");
        // f(parent * g) = f(parent) + parent . f(g)
        let mut m = expr[edge.parent].clone();
        let act = module.action(edge.parent);
        for i in 0..n {
            for j in 0..n {
                if !num_traits::Zero::is_zero(&act[(i, j)]) {
                    let col = edge.gen * n + j;
                    let v = &m[(i, col)] + &act[(i, j)];
                    m[(i, col)] = v;
                }
            }
        }
        expr.push(m);
    }

    // Non-tree edge constraints: f(e*g) - f(e) - e.f(g) = 0 in M.
    let mut constraint_blocks: Vec<IntMatrix> = Vec::new();
    for e in 0..size {
        for gi in 0..k {
            let target = group.mul[e][group.gen_elems[gi]];
            if let Some(edge) = group.tree[target] {
                if edge.parent == e && edge.gen == gi {
                    continue; // tree edge: constraint holds identically
                }
            }
            let mut c = expr[target].sub(&expr[e]);
            let act = module.action(e);
            for i in 0..n {
                for j in 0..n {
                    if !num_traits::Zero::is_zero(&act[(i, j)]) {
                        let col = gi * n + j;
                        let v = &c[(i, col)] - &act[(i, j)];
                        c[(i, col)] = v;
                    }
                }
            }
            if !c.is_zero() {
                constraint_blocks.push(c);
            }
        }
    }

    // Deduplicate identical constraint rows to keep the SNF small.
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut row_orders: Vec<u64> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (bi, block) in constraint_blocks.iter().enumerate() {
        let _ = bi;
        for i in 0..n {
            let row: Vec<BigInt> = (0..unknowns).map(|j| block[(i, j)].clone()).collect();
            if row.iter().all(num_traits::Zero::is_zero) {
                continue;
            }
            let key = (module.orders[i], format!("{:?}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
            if seen.insert(key) {
                rows.push(row);
                row_orders.push(module.orders[i]);
            }
        }
    }
    let nrows = rows.len();
    let mut constraints = IntMatrix::zero(nrows, unknowns);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            constraints[(i, j)] = v.clone();
        }
    }
    // Target relations: constraint row i lives in Z/row_orders[i].
    let finite: Vec<(usize, u64)> = row_orders
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, d)| d != 0)
        .collect();
    let mut target_rels = IntMatrix::zero(nrows, finite.len());
    for (j, (i, d)) in finite.into_iter().enumerate() {
        target_rels[(i, j)] = BigInt::from(d);
    }

    // Z^1: solutions of the constraints.
    let z1 = solve_mod_image(&constraints, &target_rels);

    // Unknown-space relations: f(g_i) only matters mod the module orders.
    let mrels = module.relations();
    let mut unknown_rels = IntMatrix::zero(unknowns, k * mrels.cols);
    for b in 0..k {
        for i in 0..n {
            for j in 0..mrels.cols {
                unknown_rels[(b * n + i, b * mrels.cols + j)] = mrels[(i, j)].clone();
            }
        }
    }

    // Coboundaries: m -> (g_i m - m) stacked over generators.
    let mut cob = IntMatrix::zero(unknowns, n);
    for (gi, a) in module.gen_actions.iter().enumerate() {
        let diff = a.sub(&IntMatrix::identity(n));
        for i in 0..n {
            for j in 0..n {
                cob[(gi * n + i, j)] = diff[(i, j)].clone();
            }
        }
    }

    let zfull = z1.hcat(&unknown_rels);
    let b1 = cob.hcat(&unknown_rels);
    subquotient(&zfull, &b1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper;

    #[test]
    fn c2_sign_cohomology() {
        let g = paper::c2();
        let m = paper::c2_sign(g);
        // H^0 = 0, H^1 = Z/2, H^2 = 0 for the sign action on Z
        assert!(cyclic_h(&m, 1, 0).is_trivial());
        assert_eq!(cyclic_h(&m, 1, 1).factors_u64(), vec![2]);
        assert!(cyclic_h(&m, 1, 2).is_trivial());
        assert_eq!(h1_crossed(&m).factors_u64(), vec![2]);
        assert!(invariants(&m).is_trivial());
    }

    #[test]
    fn c2_trivial_z() {
        let g = paper::c2();
        let m = GModule::trivial(g, vec![0], vec!["e".into()]);
        // H^0 = Z, H^1 = 0, H^2 = Z/2 (periodic resolution)
        assert_eq!(cyclic_h(&m, 1, 0).factors_u64(), vec![0]);
        assert!(cyclic_h(&m, 1, 1).is_trivial());
        assert_eq!(cyclic_h(&m, 1, 2).factors_u64(), vec![2]);
    }

    #[test]
    fn trivial_action_h0_is_module() {
        let g = paper::gl2_z2();
        let m = GModule::trivial(g, vec![4, 0], vec!["a".into(), "b".into()]);
        assert_eq!(invariants(&m).factors_u64(), vec![4, 0]);
    }

    #[test]
    fn h1_level2_units_is_z6() {
        let g = paper::gl2_z2();
        let m = paper::units_level2(g);
        assert_eq!(h1_crossed(&m).factors_u64(), vec![6]);
    }

    #[test]
    fn h1_level3_units_is_z12() {
        let g = paper::gl2_z3();
        let m = paper::units_level3(g);
        assert_eq!(h1_crossed(&m).factors_u64(), vec![12]);
    }

    #[test]
    fn c3_on_level2_units() {
        // H^s(C_3, M) for the level-2 units: Z/2 + Z at 0, then Z/3 per
        // positive degree (orders only; the C2-decoration is derived in lhs).
        let g = paper::gl2_z2();
        let m = paper::units_level2(g);
        let sigma = m.group.gen_elems[0];
        assert_eq!(cyclic_h(&m, sigma, 0).factors_u64(), vec![2, 0]);
        for s in 1..=4 {
            assert_eq!(cyclic_h(&m, sigma, s).factors_u64(), vec![3], "degree {}", s);
        }
    }

    #[test]
    fn h1_trivial_action_is_hom_from_abelianization() {
        // For trivial action, H^1 = Hom(G^ab, M).
        let g = paper::gl2_z3();
        let m = GModule::trivial(g.clone(), vec![4], vec!["u".into()]);
        // G^ab = Z/2, Hom(Z/2, Z/4) = Z/2
        assert_eq!(g.abelianization_factors(), vec![2]);
        assert_eq!(h1_crossed(&m).factors_u64(), vec![2]);
    }
}
