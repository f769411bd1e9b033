use ordef_core::arith::{divisors, s_of_n};
use ordef_core::cohomology::{d0_cocycle, h1_local, is_coboundary, phi_matrix, LocalActionSpec};
use ordef_core::deformation::{global_hull_dim, is_obstructed_point, local_hull_dim, BranchDatum, CurveQuotientData};
use ordef_core::graph::{analytic_dims, dickson_labels, h_and_t, GraphOfGroups, GroupLabel};
use ordef_core::Ring;
use proptest::prelude::*;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 13];

fn spec_strategy() -> impl Strategy<Value = LocalActionSpec> {
    (0..PRIMES.len(), 1u32..=3).prop_filter_map("field too large", |(i, t)| {
        let p = PRIMES[i];
        (p.pow(t) <= 343).then(|| LocalActionSpec::new(p, t, 1).unwrap())
    })
}

fn random_branch(p: u64, seed: &[(u32, u64)]) -> Vec<BranchDatum> {
    seed.iter()
        .map(|&(t, k)| {
            if t == 0 || p.pow(t) > 10_000 {
                let n = (1..).filter(|n| n % p != 0).nth(k as usize % 12).unwrap();
                BranchDatum::new(0, n)
            } else {
                let ds = divisors(p.pow(t) - 1);
                BranchDatum::new(t, ds[k as usize % ds.len()])
            }
        })
        .collect()
}

fn random_graph(p: u64, nv: usize, extra: &[(usize, usize, usize)], picks: &[usize]) -> GraphOfGroups {
    let labels = dickson_labels(p, 343, 12);
    let pick = |k: usize| labels[k % labels.len()];
    let vertices: Vec<GroupLabel> = (0..nv).map(|i| pick(picks[i % picks.len()])).collect();
    let mut edges = Vec::new();
    for v in 1..nv {
        edges.push((v - 1, v, pick(picks[(v * 7) % picks.len()])));
    }
    for &(a, b, l) in extra {
        edges.push((a % nv, b % nv, pick(l)));
    }
    GraphOfGroups::new(p, vertices, edges)
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(128) })]

    #[test]
    fn phi_is_a_representation(spec in spec_strategy(), a in any::<usize>(), b in any::<usize>()) {
        let v = spec.v_elements();
        let (u, w) = (v[a % v.len()], v[b % v.len()]);
        let f = spec.field();
        let lhs = phi_matrix(&spec, u).unwrap().mul(f, &phi_matrix(&spec, w).unwrap());
        let rhs = phi_matrix(&spec, f.add(&u, &w)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d0_restricts_nontrivially(pi in 2usize..5, t in 1u32..=2, k in any::<usize>()) {
        let p = PRIMES[pi];
        prop_assume!(p.pow(t) <= 343);
        let spec = LocalActionSpec::new(p, t, 1).unwrap();
        let d0 = d0_cocycle(&spec).unwrap();
        let v = spec.v_elements();
        let u1 = v[1 + k % (v.len() - 1)];
        let f = spec.field().clone();
        let sub = LocalActionSpec::with_basis(f.clone(), vec![u1], 1, f.one()).unwrap();
        let res = d0.restrict(&sub).unwrap();
        prop_assert!(res.is_cocycle());
        prop_assert!(is_coboundary(&sub, &res).unwrap().is_none());
    }

    #[test]
    fn subdivision_leaves_dimensions_unchanged(
        pi in 0usize..5,
        nv in 1usize..5,
        extra in prop::collection::vec((0usize..5, 0usize..5, 0usize..200), 0..4),
        picks in prop::collection::vec(0usize..200, 1..6),
        which in any::<usize>(),
    ) {
        let p = PRIMES[pi];
        let g = random_graph(p, nv, &extra, &picks);
        prop_assume!(!g.edges.is_empty());
        let e = which % g.edges.len();
        let a = analytic_dims(&g).unwrap();
        let b = analytic_dims(&g.subdivide_edge(e)).unwrap();
        prop_assert_eq!(a.cyclomatic, b.cyclomatic);
        prop_assert_eq!(a.hull_dim, b.hull_dim);
        prop_assert_eq!(a.tangent_dim, b.tangent_dim);
    }

    #[test]
    fn tangent_dominates_hull(
        pi in 0usize..5,
        g_y in 0u64..5,
        seed in prop::collection::vec((0u32..4, 0u64..50), 0..6),
        nv in 1usize..5,
        extra in prop::collection::vec((0usize..5, 0usize..5, 0usize..200), 0..4),
        picks in prop::collection::vec(0usize..200, 1..6),
    ) {
        let p = PRIMES[pi];
        for l in dickson_labels(p, 343, 12) {
            let (h, t) = h_and_t(&l, p).unwrap();
            prop_assert!(t >= h, "{} at {}", l, p);
        }
        let data = CurveQuotientData::new(p, g_y, random_branch(p, &seed));
        let r = global_hull_dim(&data).unwrap();
        prop_assert!(r.tangent_dim >= r.hull_dim);
        let g = random_graph(p, nv, &extra, &picks);
        let a = analytic_dims(&g).unwrap();
        for (h, t) in a.vertex_values.iter().chain(&a.edge_values) {
            prop_assert!(t >= h);
        }
    }

    #[test]
    fn intro_formula_for_large_genus(
        pi in 2usize..5,
        g_y in 2u64..6,
        seed in prop::collection::vec((0u32..4, 0u64..50), 0..6),
    ) {
        let p = PRIMES[pi];
        let branch: Vec<BranchDatum> = random_branch(p, &seed)
            .into_iter()
            .filter(|d| d.t == 0 || d.n > 2)
            .collect();
        let data = CurveQuotientData::new(p, g_y, branch.clone());
        let expected = 3 * g_y as i64 - 3
            + branch.len() as i64
            + branch.iter().map(|d| if d.t == 0 { 0 } else { (d.t / s_of_n(p, d.n).unwrap()) as i64 }).sum::<i64>();
        prop_assert_eq!(global_hull_dim(&data).unwrap().hull_dim, expected);
    }
}

#[test]
fn local_hull_matches_cohomology_minus_obstruction() {
    for p in PRIMES {
        for t in 1u32..=3 {
            if p.pow(t) > 64 {
                continue;
            }
            for n in std::iter::once(1).chain(divisors(p.pow(t) - 1).into_iter().filter(|&n| n > 1)) {
                let spec = LocalActionSpec::new(p, t, n).unwrap();
                let h1 = h1_local(&spec).unwrap().dim_h1 as i64;
                let d = BranchDatum::new(t, n);
                let expected = h1 - i64::from(is_obstructed_point(p, &d));
                assert_eq!(local_hull_dim(p, &d).unwrap(), expected, "p={p} t={t} n={n}");
            }
        }
    }
}
