//! Acceptance run: one line per criterion with its verdict and wall time.
//! Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ordef::suites::{
    cohomology_grid, obstruction_at_n_n_2, run_suite, Suite, SuiteReport, VerifyOptions, CHEBYSHEV_ORDERS,
    COHOMOLOGY_PRIMES, DEFAULT_GRID_CAP,
};
use ordef_core::arith::divisors;
use ordef_core::cohomology::{d0_cocycle, is_coboundary, phi_matrix, LocalActionSpec};
use ordef_core::deformation::{global_hull_dim, BranchDatum, CurveQuotientData};
use ordef_core::graph::{analytic_dims, dickson_labels, h_and_t, GraphOfGroups, GroupLabel};
use ordef_core::Ring;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

const PROPERTY_CASES: u32 = 256;

struct Verdict {
    criterion: u8,
    title: &'static str,
    passed: bool,
    elapsed: Duration,
    bound: Option<Duration>,
    summary: String,
    failure: Option<String>,
}

impl Verdict {
    fn ok(&self) -> bool {
        self.passed && self.bound.is_none_or(|b| self.elapsed < b)
    }

    fn line(&self) -> String {
        let bound = match self.bound {
            Some(b) => format!("bound {} s", b.as_secs()),
            None => "no time bound".into(),
        };
        let mut s = format!(
            "criterion {} {:<34} {}  {:>8.3} s ({bound})  {}",
            self.criterion,
            self.title,
            if self.ok() { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.summary,
        );
        if self.passed && !self.ok() {
            s.push_str("  [time bound exceeded]");
        }
        if let Some(f) = &self.failure {
            s.push_str(&format!("\n    first failure: {f}"));
        }
        s
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn from_suite(
    criterion: u8,
    title: &'static str,
    bound: u64,
    suite: Suite,
    extra: impl Fn(&SuiteReport) -> Result<(), String>,
) -> Verdict {
    let (rep, elapsed) = timed(|| run_suite(suite, &VerifyOptions::only(suite)));
    let extra = extra(&rep);
    let failed = rep.failures();
    let failure = rep.first_failure().map(|c| format!("{} {}", c.case, c.detail)).or_else(|| extra.clone().err());
    Verdict {
        criterion,
        title,
        passed: rep.passed() && extra.is_ok() && !rep.cases.is_empty(),
        elapsed,
        bound: Some(Duration::from_secs(bound)),
        summary: format!("{} cases, {} failed", rep.cases.len(), failed),
        failure,
    }
}

fn criterion_1() -> Verdict {
    let expected = cohomology_grid(&COHOMOLOGY_PRIMES, DEFAULT_GRID_CAP).len();
    from_suite(1, "cohomology table", 60, Suite::Cohomology, |rep| {
        if rep.cases.len() != expected {
            return Err(format!("expected {expected} grid points, ran {}", rep.cases.len()));
        }
        for p in COHOMOLOGY_PRIMES {
            if !rep.cases.iter().any(|c| c.case.starts_with(&format!("p={p} "))) {
                return Err(format!("no cases for p = {p}"));
            }
        }
        Ok(())
    })
}

fn criterion_2() -> Verdict {
    from_suite(2, "Chebyshev identities", 30, Suite::Chebyshev, |_| {
        for n in CHEBYSHEV_ORDERS {
            let v = obstruction_at_n_n_2(n).map_err(|e| e.to_string())?;
            if v != 1 {
                return Err(format!("obstruction(N,N,2) = {v} for N = {n}"));
            }
        }
        Ok(())
    })
}

fn criterion_3() -> Verdict {
    from_suite(3, "hull lifts with negative controls", 30, Suite::Hull, |rep| {
        if rep.cases.len() != 9 {
            return Err(format!("expected 9 cases, ran {}", rep.cases.len()));
        }
        match rep.cases.iter().find(|c| c.detail["negative_control_fails"] != true) {
            Some(c) => Err(format!("{}: weakened ring did not fail", c.case)),
            None => Ok(()),
        }
    })
}

fn criterion_4() -> Verdict {
    from_suite(4, "main algebraic theorem values", 5, Suite::Theorem, |rep| {
        for k in 1..=4 {
            if !rep.cases.iter().any(|c| c.case.starts_with(&format!("exceptional case {k} "))) {
                return Err(format!("exceptional case {k} not exercised"));
            }
        }
        Ok(())
    })
}

fn criterion_5() -> Verdict {
    from_suite(5, "analytic/algebraic consistency", 5, Suite::Consistency, |_| Ok(()))
}

fn criterion_6() -> Verdict {
    from_suite(6, "finite-case bridge", 10, Suite::Bridge, |_| Ok(()))
}

fn criterion_7() -> Verdict {
    from_suite(7, "dual-number bijection", 10, Suite::DualLift, |rep| {
        for t in 1..=2 {
            let prefix = format!("p=5 t={t} ");
            let kinds = ["lift of Z^1", "non-cocycle", "conjugate lift", "+ B^1 element", "vs trivial lift"];
            for k in kinds {
                if !rep.cases.iter().any(|c| c.case.starts_with(&prefix) && c.case.contains(k)) {
                    return Err(format!("t = {t}: no `{k}` case"));
                }
            }
        }
        Ok(())
    })
}

const PRIMES: [u64; 5] = [2, 3, 5, 7, 13];

fn random_graph(p: u64, nv: usize, extra: &[(usize, usize, usize)], picks: &[usize]) -> GraphOfGroups {
    let labels = dickson_labels(p, 343, 12);
    let pick = |k: usize| labels[k % labels.len()];
    let vertices: Vec<GroupLabel> = (0..nv).map(|i| pick(picks[i % picks.len()])).collect();
    let mut edges: Vec<_> = (1..nv).map(|v| (v - 1, v, pick(picks[(v * 7) % picks.len()]))).collect();
    edges.extend(extra.iter().map(|&(a, b, l)| (a % nv, b % nv, pick(l))));
    GraphOfGroups::new(p, vertices, edges)
}

fn random_branch(p: u64, seed: &[(u32, u64)]) -> Vec<BranchDatum> {
    seed.iter()
        .map(|&(t, k)| {
            if t == 0 {
                let n = (2..).filter(|n| n % p != 0).nth(k as usize % 12).unwrap();
                BranchDatum::new(0, n)
            } else {
                let ds = divisors(p.pow(t) - 1);
                BranchDatum::new(t, ds[k as usize % ds.len()])
            }
        })
        .collect()
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> (usize, Option<String>) {
    let mut runner = TestRunner::new(Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() });
    let count = std::cell::Cell::new(0usize);
    let res = runner.run(&strategy, |v| {
        count.set(count.get() + 1);
        test(v)
    });
    (count.get(), res.err().map(|e| format!("{name}: {e}")))
}

fn criterion_8() -> Verdict {
    let (results, elapsed) = timed(|| {
        let spec = (0..PRIMES.len(), 1u32..=3)
            .prop_filter("field too large", |&(i, t)| PRIMES[i].pow(t) <= 343)
            .prop_map(|(i, t)| LocalActionSpec::new(PRIMES[i], t, 1).unwrap());
        let phi = run_property("phi representation", (spec, any::<usize>(), any::<usize>()), |(s, a, b)| {
            let v = s.v_elements();
            let (u, w) = (v[a % v.len()], v[b % v.len()]);
            let f = s.field();
            let lhs = phi_matrix(&s, u).unwrap().mul(f, &phi_matrix(&s, w).unwrap());
            prop_assert_eq!(lhs, phi_matrix(&s, f.add(&u, &w)).unwrap());
            Ok(())
        });
        let d0 = run_property("d0 restriction", (2usize..5, 1u32..=2, any::<usize>()), |(pi, t, k)| {
            let p = PRIMES[pi];
            let s = LocalActionSpec::new(p, t, 1).unwrap();
            let c = d0_cocycle(&s).unwrap();
            let v = s.v_elements();
            let u1 = v[1 + k % (v.len() - 1)];
            let f = s.field().clone();
            let sub = LocalActionSpec::with_basis(f.clone(), vec![u1], 1, f.one()).unwrap();
            let r = c.restrict(&sub).unwrap();
            prop_assert!(r.is_cocycle());
            prop_assert!(is_coboundary(&sub, &r).unwrap().is_none(), "restriction to <{:?}> is trivial", u1);
            Ok(())
        });
        let graph = (
            0usize..5,
            1usize..5,
            prop::collection::vec((0usize..5, 0usize..5, 0usize..200), 0..4),
            prop::collection::vec(0usize..200, 1..6),
        );
        let subdiv =
            run_property("subdivision invariance", (graph.clone(), any::<usize>()), |((pi, nv, extra, picks), w)| {
                let g = random_graph(PRIMES[pi], nv, &extra, &picks);
                if g.edges.is_empty() {
                    return Ok(());
                }
                let e = w % g.edges.len();
                let a = analytic_dims(&g).unwrap();
                let b = analytic_dims(&g.subdivide_edge(e)).unwrap();
                prop_assert_eq!((a.cyclomatic, a.hull_dim, a.tangent_dim), (b.cyclomatic, b.hull_dim, b.tangent_dim));
                Ok(())
            });
        let alg = (0usize..5, 0u64..5, prop::collection::vec((0u32..4, 0u64..50), 0..6));
        let dominance =
            run_property("tangent >= hull termwise", (alg, graph), |((pi, g_y, seed), (gi, nv, extra, picks))| {
                let p = PRIMES[pi];
                let branch: Vec<BranchDatum> =
                    random_branch(p, &seed).into_iter().filter(|d| p.pow(d.t.max(1)) <= 10_000).collect();
                let r = global_hull_dim(&CurveQuotientData::new(p, g_y, branch)).unwrap();
                prop_assert!(r.tangent_dim >= r.hull_dim);
                let g = random_graph(PRIMES[gi], nv, &extra, &picks);
                for l in g.vertices.iter().chain(g.edges.iter().map(|e| &e.2)) {
                    let (h, t) = h_and_t(l, g.p).unwrap();
                    prop_assert!(t >= h, "{} at p = {}", l, g.p);
                }
                Ok(())
            });
        [phi, d0, subdiv, dominance]
    });
    let min = results.iter().map(|r| r.0).min().unwrap_or(0);
    let failure = results.iter().find_map(|r| r.1.clone());
    Verdict {
        criterion: 8,
        title: "property suites",
        passed: failure.is_none() && min >= 100,
        elapsed,
        bound: None,
        summary: format!(
            "4 properties, instances {}",
            results.iter().map(|r| r.0.to_string()).collect::<Vec<_>>().join("/")
        ),
        failure,
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Verdict; 8] =
        [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8];
    let mut all = true;
    for c in criteria {
        let v = c();
        println!("{}", v.line());
        all &= v.ok();
    }
    println!("acceptance: {}", if all { "all criteria pass" } else { "some criteria fail" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
