//! Bounded verification suites. Each suite enumerates a documented instance
//! grid, checks one classification or relation on every instance and
//! returns a [`SuiteResult`]. Instance descriptions are `polyrank` command
//! lines that replay the check.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod catalog;
mod classification;
mod lemmas;
mod properties;
mod relations;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inconclusive {
    pub instance: String,
    pub reason: String,
}

/// A relation between classes, with the evidence that settled it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub statement: String,
    pub holds: bool,
    pub evidence: String,
}

/// One line of a sweep table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub instance: String,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite_id: String,
    pub summary: String,
    pub bounds: BTreeMap<String, u64>,
    pub seed: u64,
    pub instances_checked: u64,
    pub failures: Vec<Failure>,
    pub inconclusive: Vec<Inconclusive>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<Claim>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<Row>,
    pub runtime_seconds: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.inconclusive.is_empty()
    }

    pub fn outcome(&self) -> Outcome {
        if !self.failures.is_empty() {
            Outcome::Fail
        } else if !self.inconclusive.is_empty() {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// One row per table line, failure and inconclusive instance.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite_id,kind,instance,expected,observed,ok\n");
        let mut row = |kind: &str, i: &str, e: &str, o: &str, ok: bool| {
            let _ = writeln!(
                out,
                "{},{kind},{},{},{},{ok}",
                self.suite_id,
                csv_field(i),
                csv_field(e),
                csv_field(o)
            );
        };
        for r in &self.table {
            row("row", &r.instance, &r.expected, &r.observed, r.ok);
        }
        for c in &self.claims {
            row("claim", &c.statement, "holds", &c.evidence, c.holds);
        }
        for f in &self.failures {
            row("failure", &f.instance, &f.expected, &f.observed, false);
        }
        for i in &self.inconclusive {
            row("inconclusive", &i.instance, "", &i.reason, false);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let status = match self.outcome() {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "inconclusive",
        };
        let bounds: Vec<String> = self.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut out = String::new();
        let _ = writeln!(out, "{:<14}{}", "suite", self.suite_id);
        let _ = writeln!(out, "{:<14}{}", "summary", self.summary);
        let _ = writeln!(out, "{:<14}{status}", "status");
        let _ = writeln!(out, "{:<14}{}", "instances", self.instances_checked);
        let _ = writeln!(out, "{:<14}{}", "failures", self.failures.len());
        let _ = writeln!(out, "{:<14}{}", "inconclusive", self.inconclusive.len());
        let _ = writeln!(out, "{:<14}{}", "bounds", bounds.join(" "));
        let _ = writeln!(out, "{:<14}{}", "seed", self.seed);
        let _ = writeln!(out, "{:<14}{:.2} s", "runtime", self.runtime_seconds);
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        for c in &self.claims {
            let mark = if c.holds { "ok" } else { "FAILED" };
            let _ = writeln!(out, "  [{mark}] {}\n         {}", c.statement, c.evidence);
        }
        for f in &self.failures {
            let _ = writeln!(
                out,
                "  failure: {}\n    expected {}\n    observed {}",
                f.instance, f.expected, f.observed
            );
        }
        for i in &self.inconclusive {
            let _ = writeln!(out, "  inconclusive: {} ({})", i.instance, i.reason);
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A tunable bound of a suite.
#[derive(Clone, Copy, Debug)]
pub struct Bound {
    pub key: &'static str,
    pub default: u64,
    /// Largest accepted value.
    pub gate: u64,
    pub help: &'static str,
}

const fn bound(key: &'static str, default: u64, gate: u64, help: &'static str) -> Bound {
    Bound {
        key,
        default,
        gate,
        help,
    }
}

pub struct SuiteInfo {
    pub id: &'static str,
    pub summary: &'static str,
    pub bounds: &'static [Bound],
    pub randomized: bool,
    run: fn(&mut Ctx) -> Result<()>,
}

static SUITES: &[SuiteInfo] = &[
    SuiteInfo {
        id: "facet-descriptions",
        summary: "theoretical facet descriptions of P(M) and B(M) equal the hull facets",
        bounds: &[
            bound("max_elements", 8, 10, "ground set size of family matroids"),
            bound("max_uniform_n", 6, 8, "largest n for U_{r,n}"),
        ],
        randomized: false,
        run: classification::facet_descriptions,
    },
    SuiteInfo {
        id: "independence-classification",
        summary: "connected matroids: rank P(M) is 0, 3 or >= 4, with 0 and 3 characterized",
        bounds: &[
            bound("max_edges", 6, 8, "edges of the 2-connected multigraph sweep"),
            bound("max_uniform_n", 6, 8, "largest n for U_{1,n} and U_{2,n}"),
            bound("matroid_elements", 5, 5, "size of the all-matroid sweep"),
        ],
        randomized: false,
        run: classification::independence_classification,
    },
    SuiteInfo {
        id: "simple-base-classification",
        summary: "2-connected simple graphs: rank B(M(G)) by shape",
        bounds: &[
            bound("max_edges", 9, 11, "edges of the simple 2-connected sweep"),
            bound("max_vertices", 7, 9, "vertices of the sweep"),
            bound("hull_edges", 8, 10, "cross-check the combinatorial rank with the hull up to this many edges"),
        ],
        randomized: false,
        run: classification::simple_base_classification,
    },
    SuiteInfo {
        id: "multigraph-base-classification",
        summary: "family base polytopes have the classified ranks; small ranks are family members",
        bounds: &[
            bound("n", 3, 4, "bundles in the path family"),
            bound("s", 2, 3, "bundle size parameter"),
            bound("p", 2, 3, "path length parameter"),
            bound("sweep_edges", 7, 8, "edges of the multigraph membership sweep"),
        ],
        randomized: false,
        run: classification::multigraph_base_classification,
    },
    SuiteInfo {
        id: "ear-monotonicity",
        summary: "adding an ear never lowers rank B(M(G)); a parallel edge adds 0 or 1 by deletability",
        bounds: &[
            bound("pairs", 200, 5000, "number of (G, G + ear) pairs"),
            bound("max_edges", 9, 12, "edges of G + ear"),
            bound("hull_edges", 8, 10, "cross-check the combinatorial rank with the hull up to this many edges"),
        ],
        randomized: true,
        run: classification::ear_monotonicity,
    },
    SuiteInfo {
        id: "base-stable-equivalence",
        summary: "explicit map from base polytopes of the path family to stable set polytopes",
        bounds: &[
            bound("n", 3, 4, "bundles"),
            bound("s", 2, 3, "bundle size parameter"),
            bound("p", 2, 3, "path length parameter"),
        ],
        randomized: false,
        run: lemmas::base_stable,
    },
    SuiteInfo {
        id: "base-order-equivalence",
        summary: "explicit map from base polytopes of the two-bundle family to order polytopes",
        bounds: &[
            bound("s", 2, 3, "first bundle parameter"),
            bound("t", 1, 2, "second bundle parameter"),
            bound("p", 1, 2, "first path parameter"),
            bound("q", 2, 3, "second path parameter"),
        ],
        randomized: false,
        run: lemmas::base_order,
    },
    SuiteInfo {
        id: "base-edge-equivalence",
        summary: "base polytopes of the triangle family are complete multipartite edge polytopes",
        bounds: &[bound("s", 3, 4, "bundle sizes")],
        randomized: false,
        run: lemmas::base_edge,
    },
    SuiteInfo {
        id: "rank-zero-one-relations",
        summary: "MI_0 = GMB_0 = Stab_0 and MI_1 < GMB_1 < Stab_1",
        bounds: &[
            bound("max_s", 5, 6, "simplex size in the family-level checks"),
            bound("max_dim", 4, 5, "dimension of the candidate-level inclusion checks"),
        ],
        randomized: false,
        run: relations::rank_zero_one,
    },
    SuiteInfo {
        id: "rank-two-relations",
        summary: "MI_2 < GMB_2 < Stab_2, and no inclusion between MI_2 or GMB_2 and Edge_2",
        bounds: &[
            bound("max_s", 5, 6, "parameter sum in the family-level checks"),
            bound("max_dim", 5, 5, "dimension of the candidate-level inclusion checks"),
        ],
        randomized: false,
        run: relations::rank_two,
    },
    SuiteInfo {
        id: "rank-three-relations",
        summary: "no inclusions among the rank 3 classes; GMB_3 < Stab_3 u Edge_3",
        bounds: &[bound("max_dim", 6, 7, "dimension of the GMB_3 covering check")],
        randomized: false,
        run: relations::rank_three,
    },
    SuiteInfo {
        id: "rank-axioms",
        summary: "matroid rank function axioms against a basis oracle on random subsets",
        bounds: &[bound("subsets", 1000, 100_000, "random subsets per matroid")],
        randomized: true,
        run: properties::rank_axioms,
    },
    SuiteInfo {
        id: "unimodular-invariance",
        summary: "fingerprints and canonical forms are invariant under random unimodular maps",
        bounds: &[
            bound("maps", 500, 10_000, "random maps"),
            bound("max_dim", 5, 6, "largest polytope dimension"),
        ],
        randomized: true,
        run: properties::unimodular_invariance,
    },
    SuiteInfo {
        id: "witness-soundness",
        summary: "every equivalence witness re-checks independently",
        bounds: &[bound("images", 100, 5000, "random unimodular images")],
        randomized: true,
        run: properties::witness_soundness,
    },
];

pub fn suites() -> &'static [SuiteInfo] {
    SUITES
}

pub fn suite(id: &str) -> Result<&'static SuiteInfo> {
    SUITES
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownSuite(id.to_string()))
}

/// Runs a suite with bound overrides and a seed (used by randomized suites
/// only).
pub fn run_suite(id: &str, overrides: &BTreeMap<String, u64>, seed: u64) -> Result<SuiteResult> {
    let info = suite(id)?;
    let mut bounds = BTreeMap::new();
    for b in info.bounds {
        bounds.insert(b.key.to_string(), b.default);
    }
    for (k, &v) in overrides {
        let b = info
            .bounds
            .iter()
            .find(|b| b.key == k)
            .ok_or_else(|| Error::ParameterOutOfRange(format!("suite {id} has no bound {k:?}")))?;
        if v > b.gate {
            return Err(Error::GateExceeded {
                size: v as usize,
                limit: b.gate as usize,
            });
        }
        bounds.insert(k.clone(), v);
    }
    let mut ctx = Ctx {
        id: info.id,
        bounds,
        seed: if info.randomized { seed } else { 0 },
        checked: 0,
        failures: Vec::new(),
        inconclusive: Vec::new(),
        claims: Vec::new(),
        notes: Vec::new(),
        table: Vec::new(),
    };
    let start = Instant::now();
    (info.run)(&mut ctx)?;
    Ok(SuiteResult {
        suite_id: id.to_string(),
        summary: info.summary.to_string(),
        bounds: ctx.bounds,
        seed: ctx.seed,
        instances_checked: ctx.checked,
        failures: ctx.failures,
        inconclusive: ctx.inconclusive,
        claims: ctx.claims,
        notes: ctx.notes,
        table: ctx.table,
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Accumulates the outcome of one suite run.
pub(crate) struct Ctx {
    id: &'static str,
    bounds: BTreeMap<String, u64>,
    seed: u64,
    checked: u64,
    failures: Vec<Failure>,
    inconclusive: Vec<Inconclusive>,
    claims: Vec<Claim>,
    notes: Vec<String>,
    table: Vec<Row>,
}

impl Ctx {
    pub fn bound(&self, key: &str) -> u64 {
        self.bounds[key]
    }

    pub fn ubound(&self, key: &str) -> usize {
        self.bound(key) as usize
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The command replaying this whole run.
    pub fn replay(&self) -> String {
        let b: Vec<String> = self.bounds.iter().map(|(k, v)| format!("--bound {k}={v}")).collect();
        format!("polyrank verify {} {} --seed {}", self.id, b.join(" "), self.seed)
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Counts one instance; records a failure when `ok` is false.
    pub fn check(&mut self, instance: impl Into<String>, ok: bool, expected: impl Display, observed: impl Display) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure {
                instance: instance.into(),
                expected: expected.to_string(),
                observed: observed.to_string(),
            });
        }
    }

    /// Like [`Ctx::check`], and adds a table row.
    pub fn row(&mut self, instance: impl Into<String>, ok: bool, expected: impl Display, observed: impl Display) {
        let instance = instance.into();
        self.table.push(Row {
            instance: instance.clone(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            ok,
        });
        self.check(instance, ok, expected, observed);
    }

    /// Records an instance that raised an error: an inconclusive gate, or a
    /// failure otherwise.
    pub fn error(&mut self, instance: impl Into<String>, expected: impl Display, e: Error) {
        match e {
            Error::Inconclusive(reason) => {
                self.checked += 1;
                self.inconclusive.push(Inconclusive {
                    instance: instance.into(),
                    reason,
                });
            }
            other => self.check(instance, false, expected, format!("error: {other}")),
        }
    }

    pub fn claim(&mut self, instance: impl Into<String>, statement: impl Into<String>, holds: bool, evidence: impl Into<String>) {
        let statement = statement.into();
        let evidence = evidence.into();
        self.claims.push(Claim {
            statement: statement.clone(),
            holds,
            evidence: evidence.clone(),
        });
        self.check(instance, holds, statement, evidence);
    }

    pub fn inconclusive(&mut self, instance: impl Into<String>, reason: impl Into<String>) {
        self.checked += 1;
        self.inconclusive.push(Inconclusive {
            instance: instance.into(),
            reason: reason.into(),
        });
    }
}

/// Quotes a command-line argument when the shell would split or expand it.
pub(crate) fn shell(arg: &str) -> String {
    if arg.chars().all(|c| c.is_ascii_alphanumeric() || ",.:=_-/+".contains(c)) {
        arg.to_string()
    } else {
        format!("'{arg}'")
    }
}

pub(crate) fn compute_cmd(expr: &str, what: &str) -> String {
    format!("polyrank compute {} --what {what}", shell(expr))
}

pub(crate) fn equiv_cmd(a: &str, b: &str) -> String {
    format!("polyrank equiv {} {}", shell(a), shell(b))
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Inconclusive => "inconclusive",
        })
    }
}
