//! One line per acceptance criterion. Runs the suites at the criterion
//! bounds and checks instance counts, exact outcomes and runtime budgets.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use polyrank::suites::{run_suite, SuiteResult};

type Criterion = (&'static str, Box<dyn Fn() -> Check>);

struct Check {
    ok: bool,
    detail: String,
}

fn run(id: &str, bounds: &[(&str, u64)], seed: u64) -> Result<SuiteResult, String> {
    let o: BTreeMap<String, u64> = bounds.iter().map(|(k, v)| ((*k).to_string(), *v)).collect();
    run_suite(id, &o, seed).map_err(|e| format!("{id}: {e}"))
}

/// Runs suites in order; all must pass within `budget` seconds.
fn suites(plan: &[(&str, &[(&str, u64)])], budget: f64, extra: impl Fn(&[SuiteResult]) -> Result<(), String>) -> Check {
    let start = Instant::now();
    let mut results = Vec::new();
    for (id, bounds) in plan {
        match run(id, bounds, 1) {
            Ok(r) => results.push(r),
            Err(e) => return Check { ok: false, detail: e },
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let counts: Vec<String> = results
        .iter()
        .map(|r| {
            format!(
                "{} {} instances, {} failures, {} inconclusive",
                r.suite_id,
                r.instances_checked,
                r.failures.len(),
                r.inconclusive.len()
            )
        })
        .collect();
    let mut detail = format!("{}; {secs:.1} s of {budget} s", counts.join("; "));
    let mut ok = results.iter().all(SuiteResult::passed) && secs < budget;
    if let Err(e) = extra(&results) {
        ok = false;
        detail = format!("{detail}; {e}");
    }
    Check { ok, detail }
}

fn none(_: &[SuiteResult]) -> Result<(), String> {
    Ok(())
}

/// Every listed statement is a claim that holds.
fn claims(statements: &'static [&'static str]) -> impl Fn(&[SuiteResult]) -> Result<(), String> {
    move |results| {
        for s in statements {
            let found = results
                .iter()
                .flat_map(|r| &r.claims)
                .find(|c| c.statement.contains(s));
            match found {
                Some(c) if c.holds => {}
                Some(c) => return Err(format!("claim fails: {} ({})", c.statement, c.evidence)),
                None => return Err(format!("claim missing: {s}")),
            }
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "1 facet descriptions match the hull",
            Box::new(|| {
                suites(
                    &[("facet-descriptions", &[("max_elements", 8), ("max_uniform_n", 6)])],
                    60.0,
                    |r| {
                        if r[0].instances_checked >= 150 {
                            Ok(())
                        } else {
                            Err("fewer than 150 instances".into())
                        }
                    },
                )
            }),
        ),
        (
            "2 independence polytope ranks lie in {0, 3, >= 4}",
            Box::new(|| {
                suites(
                    &[("independence-classification", &[("max_edges", 6), ("max_uniform_n", 6)])],
                    120.0,
                    |r| {
                        let hist = r[0].notes.iter().find(|n| n.starts_with("rank histogram")).cloned().unwrap_or_default();
                        let low = hist
                            .trim_start_matches("rank histogram: ")
                            .split(", ")
                            .any(|e| e.starts_with("1:") || e.starts_with("2:"));
                        if hist.is_empty() || low {
                            Err(format!("ranks 1 or 2 observed: {hist}"))
                        } else {
                            Ok(())
                        }
                    },
                )
            }),
        ),
        (
            "3 base polytope ranks of the B, C and D families",
            Box::new(|| {
                suites(
                    &[("multigraph-base-classification", &[("n", 3), ("s", 2), ("p", 2)])],
                    120.0,
                    none,
                )
            }),
        ),
        (
            "4 ear monotonicity and the parallel edge dichotomy",
            Box::new(|| suites(&[("ear-monotonicity", &[("pairs", 200)])], 600.0, none)),
        ),
        (
            "5 explicit maps for B/Stab, C/Order and D/Edge",
            Box::new(|| {
                suites(
                    &[
                        ("base-stable-equivalence", &[("n", 3), ("s", 2), ("p", 2)]),
                        ("base-order-equivalence", &[("s", 2), ("t", 1), ("p", 1), ("q", 2)]),
                        ("base-edge-equivalence", &[("s", 3)]),
                    ],
                    120.0,
                    |r| {
                        if r[1].notes.iter().any(|n| n.contains("classification box") && n.contains("map box")) {
                            Ok(())
                        } else {
                            Err("parameter conventions not reported".into())
                        }
                    },
                )
            }),
        ),
        (
            "6 rank 0 and rank 1 relations",
            Box::new(|| {
                suites(
                    &[("rank-zero-one-relations", &[("max_s", 5)])],
                    300.0,
                    claims(&[
                        "MI_0 is contained in GMB_0",
                        "GMB_0 is contained in MI_0",
                        "GMB_0 is contained in Stab_0",
                        "Stab_0 is contained in GMB_0",
                        "indep:A:5 ~ base:A:6",
                        "indep:A:5 ~ stab:K:5",
                        "base:B:1;p=1 and indep:U:A:1|A:2 are not equivalent",
                        "stab:E:4;0-1,0-2,1-2,1-3,2-3 is not in GMB_1",
                    ]),
                )
            }),
        ),
        (
            "7 rank 2 and rank 3 non-memberships",
            Box::new(|| {
                suites(
                    &[("rank-two-relations", &[]), ("rank-three-relations", &[])],
                    600.0,
                    claims(&[
                        "base:B:1,1;p=0 is not in MI_2",
                        "edge:E:7;0-1,0-6,1-5,2-3,3-6,4-5,4-6,5-6 is not in GMB_2",
                        "indep:U:A:1|A:1|A:1 is not in Edge_2",
                        "indep:D:1,1,1 is not in Order_3",
                        "indep:D:1,1,1 is not in Stab_3",
                        "indep:D:1,1,1 is not in Edge_3",
                        "indep:D:1,1,1 is not in GMB_3",
                        "base:U:A:2|A:2|A:2|A:2 is not in Edge_3",
                        "order:P:4;0<2,0<3,1<2,1<3 is not in MI_3",
                        "order:P:4;0<2,0<3,1<2,1<3 is not in GMB_3",
                    ]),
                )
            }),
        ),
        (
            "8 rank axioms, unimodular invariance, witness soundness",
            Box::new(|| {
                suites(
                    &[
                        ("rank-axioms", &[("subsets", 1000)]),
                        ("unimodular-invariance", &[("maps", 500), ("max_dim", 5)]),
                        ("witness-soundness", &[]),
                    ],
                    600.0,
                    none,
                )
            }),
        ),
    ];
    let mut all = true;
    for (name, check) in &criteria {
        let c = check();
        all &= c.ok;
        println!("{} criterion {name}: {}", if c.ok { "PASS" } else { "FAIL" }, c.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
