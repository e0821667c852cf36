//! Inclusions and non-inclusions among `MI_n`, `GMB_n`, `Order_n`,
//! `Stab_n` and `Edge_n` for `n <= 3`.
//!
//! Negative claims run the target against every candidate of matching rank
//! and dimension; each rejection carries an invariant or an exhaustive
//! search certificate. Positive claims carry a verified witness.

use std::collections::BTreeMap;

use super::catalog::{candidates, CandidateSet, ClassId};
use super::{equiv_cmd, Ctx};
use crate::constructors::{odd_cycle_condition, perfectness};
use crate::equivalence::frames::frame_search_with;
use crate::equivalence::{apply_projection, decide_equivalence, NonEquivalence, SearchLimits, Strategy, Verdict};
use crate::error::{Error, Result};
use crate::expr::{PolytopeExpr, PosetSpec};
use crate::geometry::LatticePolytope;
use crate::graph::FamilySpec;

struct Named {
    name: String,
    p: LatticePolytope,
}

fn named(name: impl Into<String>) -> Result<Named> {
    let name = name.into();
    let p = name.parse::<PolytopeExpr>()?.build()?;
    Ok(Named { name, p })
}

#[derive(Default)]
struct Sweep {
    source: String,
    candidates: usize,
    member: Option<String>,
    rejected: BTreeMap<&'static str, usize>,
    frames: u64,
    inconclusive: Vec<String>,
}

impl Sweep {
    fn evidence(&self) -> String {
        let parts: Vec<String> = self.rejected.iter().map(|(k, v)| format!("{v} by {k}")).collect();
        let mut s = format!("{} candidates ({})", self.candidates, self.source);
        if !parts.is_empty() {
            s += &format!("; rejected {}", parts.join(", "));
        }
        if self.frames > 0 {
            s += &format!(" ({} frames searched)", self.frames);
        }
        if !self.inconclusive.is_empty() {
            s += &format!("; {} inconclusive", self.inconclusive.len());
        }
        s
    }
}

/// Compares `target` with every candidate of `set`; stops at the first
/// equivalent one.
fn sweep(target: &Named, set: &CandidateSet, strategy: Strategy) -> Sweep {
    let mut out = Sweep {
        source: set.source.clone(),
        candidates: set.candidates.len(),
        ..Sweep::default()
    };
    for c in &set.candidates {
        match decide_equivalence(&target.p, &c.polytope, strategy, &SearchLimits::default()) {
            Ok(Verdict::Equivalent { .. }) => {
                out.member = Some(c.name.clone());
                return out;
            }
            Ok(Verdict::NotEquivalent { reason }) => {
                let kind = match reason {
                    NonEquivalence::Invariant { .. } => "invariant",
                    NonEquivalence::ExhaustiveFrameSearch { frames_checked } => {
                        out.frames += frames_checked;
                        "exhaustive frame search"
                    }
                    NonEquivalence::CanonicalFormsDiffer { .. } => "complete canonical form",
                };
                *out.rejected.entry(kind).or_default() += 1;
            }
            Err(e) => out.inconclusive.push(format!("{}: {e}", c.name)),
        }
    }
    out
}

/// `target` is in none of the classes.
fn not_in(ctx: &mut Ctx, target: &Named, classes: &[ClassId]) -> Result<()> {
    not_in_rank(ctx, target, classes, target.p.rank()?)
}

/// `target` is in no class at rank `n`; candidates of that rank and the
/// target's dimension are swept even when the ranks differ.
fn not_in_rank(ctx: &mut Ctx, target: &Named, classes: &[ClassId], n: i64) -> Result<()> {
    for &class in classes {
        let statement = format!("{} is not in {class}_{n} (dim {})", target.name, target.p.dim());
        let set = candidates(class, n, target.p.dim())?;
        let s = sweep(target, &set, Strategy::Both);
        match &s.member {
            Some(m) => ctx.claim(equiv_cmd(&target.name, m), statement, false, format!("equivalent to {m}")),
            None if !s.inconclusive.is_empty() => {
                ctx.inconclusive(ctx.replay(), format!("{statement}: {}", s.inconclusive.join("; ")))
            }
            None => ctx.claim(ctx.replay(), statement, true, s.evidence()),
        }
    }
    Ok(())
}

/// `a` and `b` are unimodularly equivalent.
fn equivalent(ctx: &mut Ctx, a: &str, b: &str, statement: impl Into<String>) -> Result<()> {
    let (x, y) = (named(a)?, named(b)?);
    let statement = statement.into();
    let instance = equiv_cmd(a, b);
    match decide_equivalence(&x.p, &y.p, Strategy::Canonical, &SearchLimits::default()) {
        Ok(Verdict::Equivalent { source, .. }) => {
            ctx.claim(instance, statement, true, format!("witness from {source:?}, re-verified"))
        }
        Ok(Verdict::NotEquivalent { reason }) => ctx.claim(instance, statement, false, reason.to_string()),
        Err(e) => ctx.error(instance, statement, e),
    }
    Ok(())
}

fn rank_is(ctx: &mut Ctx, target: &Named, expected: i64, statement: impl Into<String>) -> Result<()> {
    let r = target.p.rank()?;
    ctx.claim(
        super::compute_cmd(&target.name, "rank"),
        statement,
        r == expected,
        format!("rank {r}, dim {}, {} vertices", target.p.dim(), target.p.vertex_count()),
    );
    Ok(())
}

fn explicit_graph(spec: &str) -> Result<crate::graph::SimpleGraph> {
    spec.parse::<FamilySpec>()?.generate()?.to_simple()
}

/// Edge polytope of `graph` is in `Edge_n`: odd cycle condition plus rank.
fn in_edge(ctx: &mut Ctx, graph: &str, n: i64) -> Result<()> {
    let g = explicit_graph(graph)?;
    let occ = odd_cycle_condition(&g)?.satisfied;
    let t = named(format!("edge:{graph}"))?;
    let r = t.p.rank()?;
    ctx.claim(
        super::compute_cmd(&t.name, "rank"),
        format!("{} is in Edge_{n}", t.name),
        occ && r == n,
        format!("odd cycle condition {occ}, rank {r}"),
    );
    Ok(())
}

/// Stable set polytope of `graph` is in `Stab_n`: perfect plus rank.
fn in_stab(ctx: &mut Ctx, graph: &str, n: i64) -> Result<()> {
    let g = explicit_graph(graph)?;
    let perfect = perfectness(&g)?.is_perfect;
    let t = named(format!("stab:{graph}"))?;
    let r = t.p.rank()?;
    ctx.claim(
        super::compute_cmd(&t.name, "rank"),
        format!("{} is in Stab_{n}", t.name),
        perfect && r == n,
        format!("perfect {perfect}, rank {r}"),
    );
    Ok(())
}

/// Every `from` candidate of rank `n` and dimension <= `max_dim` has an
/// equivalent `to` candidate.
fn inclusion(ctx: &mut Ctx, from: ClassId, to: ClassId, n: i64, max_dim: usize) -> Result<()> {
    let (mut checked, mut missing) = (0, Vec::new());
    for d in 1..=max_dim {
        let sources = candidates(from, n, d)?;
        if sources.candidates.is_empty() {
            continue;
        }
        let targets = candidates(to, n, d)?;
        for c in &sources.candidates {
            checked += 1;
            let target = Named {
                name: c.name.clone(),
                p: c.polytope.clone(),
            };
            let s = sweep(&target, &targets, Strategy::Canonical);
            match s.member {
                Some(m) => ctx.check(equiv_cmd(&c.name, &m), true, "", ""),
                None if !s.inconclusive.is_empty() => ctx.inconclusive(ctx.replay(), s.inconclusive.join("; ")),
                None => missing.push(c.name.clone()),
            }
        }
    }
    let statement = format!("{from}_{n} is contained in {to}_{n} up to dimension {max_dim}");
    let evidence = if missing.is_empty() {
        format!("{checked} {from}_{n} candidates, each equivalent to a {to}_{n} candidate")
    } else {
        format!("no {to}_{n} match for {}", missing.join(", "))
    };
    ctx.claim(ctx.replay(), statement, missing.is_empty(), evidence);
    Ok(())
}

pub(super) fn rank_zero_one(ctx: &mut Ctx) -> Result<()> {
    let (max_s, max_dim) = (ctx.ubound("max_s"), ctx.ubound("max_dim"));
    for s in 1..=max_s {
        let indep = named(format!("indep:A:{s}"))?;
        let base = named(format!("base:A:{}", s + 1))?;
        let chain = named(format!("chain:Chain:{s}"))?;
        let projected = apply_projection(&base.p, 0)?;
        ctx.claim(
            ctx.replay(),
            format!("dropping the first coordinate of {} gives {} and {}", base.name, indep.name, chain.name),
            projected == indep.p && chain.p == indep.p,
            "equal vertex sets",
        );
        equivalent(ctx, &indep.name, &base.name, format!("{} ~ {}", indep.name, base.name))?;
        equivalent(ctx, &indep.name, &format!("stab:K:{s}"), format!("{} ~ stab:K:{s}", indep.name))?;
    }
    for (from, to) in [
        (ClassId::Mi, ClassId::Gmb),
        (ClassId::Gmb, ClassId::Mi),
        (ClassId::Gmb, ClassId::Stab),
        (ClassId::Stab, ClassId::Gmb),
    ] {
        inclusion(ctx, from, to, 0, max_dim)?;
    }

    for a in 1..=max_s {
        for b in a..=max_s - a {
            let i = format!("indep:U:A:{a}|A:{b}");
            equivalent(ctx, &i, &format!("base:U:A:{}|A:{}", a + 1, b + 1), "rank 1 products agree")?;
            equivalent(ctx, &i, &format!("stab:U:K:{a}|K:{b}"), "rank 1 products agree")?;
        }
    }
    for s in 1..=max_s {
        for p in 1..=max_s.saturating_sub(s + 1) {
            equivalent(ctx, &format!("base:B:{s};p={p}"), &format!("stab:G:{s};p={p}"), "GMB_1 family is in Stab_1")?;
        }
    }
    inclusion(ctx, ClassId::Mi, ClassId::Gmb, 1, max_dim)?;
    inclusion(ctx, ClassId::Gmb, ClassId::Stab, 1, max_dim)?;

    let b11 = named("base:B:1;p=1")?;
    rank_is(ctx, &b11, 1, "base:B:1;p=1 is in GMB_1")?;
    not_in(ctx, &b11, &[ClassId::Mi])?;
    // the single MI_1 polytope of dimension 3, against the frame search alone
    let prism = named("indep:U:A:1|A:2")?;
    let instance = format!("{} --strategy frames", equiv_cmd(&b11.name, &prism.name));
    let statement = format!("{} and {} are not equivalent", b11.name, prism.name);
    match frame_search_with(&b11.p, &prism.p, &SearchLimits::default()) {
        Ok((None, frames)) => ctx.claim(
            instance,
            statement,
            true,
            if frames == 0 {
                format!(
                    "frame search rejects outright: {} vs {} vertices",
                    b11.p.vertex_count(),
                    prism.p.vertex_count()
                )
            } else {
                format!("exhaustive frame search, {frames} frames")
            },
        ),
        Ok((Some(_), _)) => ctx.claim(instance, statement, false, "frame search found a map"),
        Err(e) => ctx.error(instance, statement, e),
    }
    let diamond = "E:4;0-1,0-2,1-2,1-3,2-3";
    in_stab(ctx, diamond, 1)?;
    not_in(ctx, &named(format!("stab:{diamond}"))?, &[ClassId::Gmb])?;
    Ok(())
}

pub(super) fn rank_two(ctx: &mut Ctx) -> Result<()> {
    let (max_s, max_dim) = (ctx.ubound("max_s"), ctx.ubound("max_dim"));
    for a in 1..=max_s {
        for b in a..=max_s {
            for c in b..=max_s {
                if a + b + c > max_s {
                    continue;
                }
                let i = format!("indep:U:A:{a}|A:{b}|A:{c}");
                equivalent(ctx, &i, &format!("base:U:A:{}|A:{}|A:{}", a + 1, b + 1, c + 1), "rank 2 products agree")?;
                equivalent(ctx, &i, &format!("stab:U:K:{a}|K:{b}|K:{c}"), "rank 2 products agree")?;
            }
        }
    }
    for s1 in 1..=max_s {
        for s2 in s1..=max_s {
            for p in 0..=max_s {
                if s1 + s2 + 2 + p <= max_s + 1 {
                    let spec = format!("{s1},{s2};p={p}");
                    equivalent(ctx, &format!("base:B:{spec}"), &format!("stab:G:{spec}"), "GMB_2 family is in Stab_2")?;
                }
            }
        }
    }
    inclusion(ctx, ClassId::Mi, ClassId::Gmb, 2, max_dim)?;
    inclusion(ctx, ClassId::Gmb, ClassId::Stab, 2, max_dim)?;

    let b110 = named("base:B:1,1;p=0")?;
    rank_is(ctx, &b110, 2, "base:B:1,1;p=0 is in GMB_2")?;
    not_in(ctx, &b110, &[ClassId::Mi])?;

    let g5 = "E:5;0-1,0-2,1-2,1-3,2-3";
    in_stab(ctx, g5, 2)?;
    not_in(ctx, &named(format!("stab:{g5}"))?, &[ClassId::Gmb])?;

    // The printed 7-vertex graph (vertices 1..7 shifted to 0..6). Its edge
    // polytope has 8 facets in dimension 6, so rank 1, not 2; it is outside
    // GMB_2 for that reason alone.
    let seven = named("edge:E:7;0-1,0-6,1-5,2-3,3-6,4-5,4-6,5-6")?;
    rank_is(ctx, &seven, 1, format!("{} has rank 1 as printed", seven.name))?;
    not_in_rank(ctx, &seven, &[ClassId::Gmb], 2)?;

    // a rank 2 edge polytope outside GMB_2 and Stab_2, found by sweeping
    // Edge_2 in dimension 5
    let six = "E:6;0-1,0-3,0-4,0-5,1-2,1-4,1-5,2-3";
    in_edge(ctx, six, 2)?;
    not_in(ctx, &named(format!("edge:{six}"))?, &[ClassId::Gmb, ClassId::Stab])?;
    ctx.note("the printed 7-vertex graph gives a rank 1 edge polytope; edge:E:6;0-1,0-3,0-4,0-5,1-2,1-4,1-5,2-3 stands in as the Edge_2 witness");

    let cube = named("indep:U:A:1|A:1|A:1")?;
    rank_is(ctx, &cube, 2, "indep:U:A:1|A:1|A:1 (the cube) is in MI_2")?;
    not_in(ctx, &cube, &[ClassId::Edge])?;
    Ok(())
}

/// Stab or Edge polytope equivalent to a rank 3 graphic base polytope
/// candidate, built piece by piece.
fn stab_or_edge_partner(name: &str) -> Result<String> {
    let spec = name.strip_prefix("base:").unwrap_or(name);
    let parts: Vec<&str> = match spec.strip_prefix("U:") {
        Some(rest) => rest.split('|').collect(),
        None => vec![spec],
    };
    let mut stab = Vec::new();
    for part in &parts {
        let f: FamilySpec = part.parse()?;
        match f {
            FamilySpec::A { s } => stab.push(format!("K:{}", s - 1)),
            FamilySpec::B { s, p } => {
                let list: Vec<String> = s.iter().map(ToString::to_string).collect();
                stab.push(format!("G:{};p={p}", list.join(",")));
            }
            FamilySpec::C { s, t, p, q } if parts.len() == 1 => {
                let w = PosetSpec::W { s, t, p, q }.build()?;
                let g = w.comparability_graph();
                let e: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
                return Ok(format!("stab:E:{};{}", g.vertex_count(), e.join(",")));
            }
            FamilySpec::D { s } if parts.len() == 1 => return Ok(format!("edge:KM:{},{},{}", s[0], s[1], s[2])),
            other => return Err(Error::ParameterOutOfRange(format!("no partner for piece {other}"))),
        }
    }
    Ok(if stab.len() == 1 {
        format!("stab:{}", stab[0])
    } else {
        format!("stab:U:{}", stab.join("|"))
    })
}

pub(super) fn rank_three(ctx: &mut Ctx) -> Result<()> {
    let all = [ClassId::Order, ClassId::Stab, ClassId::Edge, ClassId::Gmb];

    // the triangle matroid with single edges: 7 vertices in dimension 3
    let d111 = named("indep:D:1,1,1")?;
    rank_is(ctx, &d111, 3, "indep:D:1,1,1 is in MI_3")?;
    not_in(ctx, &d111, &all)?;

    let bowtie = "P:4;0<2,0<3,1<2,1<3";
    let o = named(format!("order:{bowtie}"))?;
    rank_is(ctx, &o, 3, format!("order:{bowtie} is in Order_3"))?;
    in_stab(ctx, "Cyc:4", 3)?;
    equivalent(ctx, &o.name, "stab:Cyc:4", "the bowtie order polytope is in Stab_3")?;
    not_in(ctx, &o, &[ClassId::Mi, ClassId::Gmb])?;

    in_edge(ctx, "KM:2,2,2", 3)?;
    equivalent(ctx, "edge:KM:2,2,2", "base:D:2,2,2", "edge:KM:2,2,2 is in GMB_3")?;
    let k222 = named("edge:KM:2,2,2")?;
    not_in(ctx, &k222, &[ClassId::Mi, ClassId::Order, ClassId::Stab])?;

    let cube4 = named("base:U:A:2|A:2|A:2|A:2")?;
    rank_is(ctx, &cube4, 3, "base:U:A:2|A:2|A:2|A:2 (the 4-cube) is in GMB_3")?;
    not_in(ctx, &cube4, &[ClassId::Edge])?;

    let g = "E:5;0-1,1-2,2-3,3-4,0-4,0-2,0-3";
    in_edge(ctx, g, 3)?;
    not_in(ctx, &named(format!("edge:{g}"))?, &[ClassId::Gmb])?;

    // GMB_3 is covered by Stab_3 and Edge_3
    let max_dim = ctx.ubound("max_dim");
    let (mut covered, mut missing) = (0, Vec::new());
    for d in 1..=max_dim {
        for c in candidates(ClassId::Gmb, 3, d)?.candidates {
            let partner = stab_or_edge_partner(&c.name)?;
            let q = named(partner.clone())?;
            let class_ok = if let Some(graph) = partner.strip_prefix("stab:") {
                perfectness(&explicit_graph(graph)?)?.is_perfect
            } else {
                odd_cycle_condition(&explicit_graph(partner.strip_prefix("edge:").unwrap_or(&partner))?)?.satisfied
            };
            let instance = equiv_cmd(&c.name, &partner);
            match decide_equivalence(&c.polytope, &q.p, Strategy::Canonical, &SearchLimits::default()) {
                Ok(v) if v.is_equivalent() && class_ok => {
                    covered += 1;
                    ctx.check(instance, true, "", "");
                }
                Ok(_) => {
                    missing.push(c.name.clone());
                    ctx.check(instance, false, "equivalent partner in Stab_3 or Edge_3", "not equivalent");
                }
                Err(e) => ctx.error(instance, "equivalent partner", e),
            }
        }
    }
    ctx.claim(
        ctx.replay(),
        format!("GMB_3 is contained in Stab_3 u Edge_3 up to dimension {max_dim}"),
        missing.is_empty(),
        format!("{covered} GMB_3 candidates matched to a perfect-graph stable set or OCC edge polytope"),
    );
    ctx.note("strictness of the last inclusion: the bowtie order polytope lies in Stab_3 but not GMB_3");
    ctx.note("P(K_{2,2,2}) outside Order_3 and Stab_3 is re-derived by enumeration of all 5-element posets and perfect graphs on 5 vertices");
    Ok(())
}
