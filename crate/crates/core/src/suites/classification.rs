//! Facet descriptions, rank classifications and ear monotonicity.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::catalog::{gmb_connected, loopless_matroids};
use super::{compute_cmd, equiv_cmd, Ctx};
use crate::constructors::{
    base_polytope, independence_polytope, theoretical_hrep_base, theoretical_hrep_independence,
};
use crate::equivalence::{decide_equivalence, SearchLimits, Strategy};
use crate::error::Result;
use crate::expr::MatroidSpec;
use crate::geometry::FacetDiff;
use crate::graph::{add_ear, fixtures, graphic_matroid, two_connected_multigraphs, FamilySpec, Multigraph};
use crate::matroid::{IndependenceRankClass, Matroid};

fn explicit(g: &Multigraph) -> String {
    FamilySpec::Explicit {
        vertex_count: g.vertex_count,
        edges: g.edges.clone(),
    }
    .to_string()
}

fn diff_text(d: &FacetDiff) -> String {
    format!(
        "{} invalid, {} not facets, {} duplicates, {} hull facets missing",
        d.invalid.len(),
        d.not_facets.len(),
        d.duplicates.len(),
        d.missing
    )
}

fn push_family(out: &mut Vec<String>, s: String) {
    if !out.contains(&s) {
        out.push(s);
    }
}

/// The matroid corpus: graph families, uniform matroids and direct sums,
/// as matroid spec strings.
fn matroid_corpus(max_e: usize, max_u: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for s in 1..=max_e {
        push_family(&mut out, format!("A:{s}"));
    }
    for n in 3..=max_e {
        push_family(&mut out, format!("Cyc:{n}"));
    }
    for s in ["K:4", "KM:1,1,2", "KM:2,3", "KM:1,2,2", "KM:1,1,1,2"] {
        push_family(&mut out, s.to_string());
    }
    let tuples = |n: usize| -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..n {
            v = v
                .into_iter()
                .flat_map(|t| {
                    let lo = t.last().copied().unwrap_or(1);
                    (lo..=3).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        v
    };
    for n in 1..=3 {
        for s in tuples(n) {
            for p in 0..=2 {
                let edges: usize = s.iter().map(|x| x + 1).sum::<usize>() + p + 1;
                if edges <= max_e {
                    push_family(&mut out, FamilySpec::B { s: s.clone(), p }.to_string());
                }
            }
        }
    }
    for s in 1..=2 {
        for t in 0..=2 {
            for p in 0..=2 {
                for q in 1..=2 {
                    if s + t + p + q + 4 <= max_e {
                        push_family(&mut out, format!("C:{s},{t};p={p},q={q}"));
                    }
                }
            }
        }
    }
    for s in tuples(3) {
        if s.iter().sum::<usize>() <= max_e {
            push_family(&mut out, format!("D:{},{},{}", s[0], s[1], s[2]));
        }
    }
    for n in 1..=max_u {
        for r in 1..=n {
            push_family(&mut out, format!("Unif:{r},{n}"));
        }
    }
    let summands = ["A:1", "A:2", "A:3", "Cyc:3", "D:1,1,1", "B:1;p=1", "Unif:2,4", "Unif:1,2", "Unif:2,3"];
    for (i, a) in summands.iter().enumerate() {
        for b in &summands[i..] {
            let ma = a.parse::<MatroidSpec>()?.build()?;
            let mb = b.parse::<MatroidSpec>()?.build()?;
            if ma.ground_size() + mb.ground_size() > max_e {
                continue;
            }
            let graphic = |x: &str| !x.starts_with("Unif");
            let name = if graphic(a) && graphic(b) {
                format!("U:{a}|{b}")
            } else {
                MatroidSpec::Bases {
                    n: ma.ground_size() + mb.ground_size(),
                    bases: ma.direct_sum(&mb)?.bases().to_vec(),
                }
                .to_string()
            };
            push_family(&mut out, name);
        }
    }
    Ok(out)
}

pub(super) fn facet_descriptions(ctx: &mut Ctx) -> Result<()> {
    let corpus = matroid_corpus(ctx.ubound("max_elements"), ctx.ubound("max_uniform_n"))?;
    let (mut matroids, mut base_checks) = (0, 0);
    for spec in corpus {
        let m = spec.parse::<MatroidSpec>()?.build()?;
        if m.ground_size() > ctx.ubound("max_elements") || !m.is_loopless() {
            continue;
        }
        matroids += 1;
        let name = format!("indep:{spec}");
        let p = independence_polytope(&m)?;
        let d = theoretical_hrep_independence(&m)?.compare_with_hull(&p);
        ctx.row(
            compute_cmd(&name, "facets"),
            d.is_empty(),
            "indecomposable-flat description equals hull",
            format!("{} hull facets; {}", p.facet_count(), diff_text(&d)),
        );
        if m.ground_size() >= 2 && m.is_connected()? {
            base_checks += 1;
            let name = format!("base:{spec}");
            let b = base_polytope(&m)?;
            let d = theoretical_hrep_base(&m)?.compare_with_hull(&b);
            ctx.row(
                compute_cmd(&name, "facets"),
                d.is_empty(),
                "flacet description equals hull",
                format!("{} hull facets; {}", b.facet_count(), diff_text(&d)),
            );
        }
    }
    ctx.note(format!(
        "{matroids} loopless matroids; {matroids} independence and {base_checks} base polytope descriptions compared"
    ));
    Ok(())
}

fn class_text(c: &IndependenceRankClass) -> &'static str {
    match c {
        IndependenceRankClass::Rank0Uniform => "0",
        IndependenceRankClass::Rank3TripleParallel(..) => "3",
        IndependenceRankClass::RankAtLeast4 => ">= 4",
    }
}

fn classify_one(ctx: &mut Ctx, name: String, m: &Matroid, histogram: &mut BTreeMap<String, usize>) -> Result<()> {
    let expected = m.classify_independence_rank()?;
    let cmd = compute_cmd(&format!("indep:{name}"), "rank");
    let observed = independence_polytope(m)?.rank()?;
    let bucket = if observed >= 4 { ">= 4".to_string() } else { observed.to_string() };
    *histogram.entry(bucket).or_default() += 1;
    ctx.row(cmd, expected.admits(observed), class_text(&expected), observed);
    Ok(())
}

pub(super) fn independence_classification(ctx: &mut Ctx) -> Result<()> {
    let max_e = ctx.ubound("max_edges");
    let mut histogram = BTreeMap::new();
    let graphs = two_connected_multigraphs(max_e, (max_e + 1).min(9), false)?;
    let count = graphs.len();
    for g in &graphs {
        classify_one(ctx, explicit(g), &graphic_matroid(g)?, &mut histogram)?;
    }
    let max_u = ctx.ubound("max_uniform_n");
    for n in 1..=max_u {
        classify_one(ctx, format!("Unif:1,{n}"), &Matroid::uniform(1, n)?, &mut histogram)?;
    }
    let mut swept = 0;
    for k in 1..=ctx.ubound("matroid_elements") {
        for m in loopless_matroids(k)? {
            if m.is_connected()? {
                swept += 1;
                let name = MatroidSpec::Bases {
                    n: k,
                    bases: m.bases().to_vec(),
                }
                .to_string();
                classify_one(ctx, name, &m, &mut histogram)?;
            }
        }
    }
    // U_{2,n} has rank n, so the graphic reduction fails past rank 3
    for n in 4..=max_u {
        let p = independence_polytope(&Matroid::uniform(2, n)?)?;
        let r = p.rank()?;
        ctx.row(compute_cmd(&format!("indep:Unif:2,{n}"), "rank"), r == n as i64, n, r);
    }
    let hist: Vec<String> = histogram.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    ctx.note(format!(
        "{count} 2-connected multigraphs with <= {max_e} edges, U_{{1,n}} for n <= {max_u}, {swept} connected matroids on <= {} elements",
        ctx.bound("matroid_elements")
    ));
    ctx.note(format!("rank histogram: {}", hist.join(", ")));
    Ok(())
}

/// Predicted `rank B(M(G))` for a 2-connected simple graph: `Some(r)` for
/// the shapes with rank <= 3, `None` for rank >= 4.
fn predicted_simple_rank(g: &Multigraph) -> Option<i64> {
    let n = g.vertex_count;
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &g.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    if branch.is_empty() {
        return Some(0);
    }
    if branch.len() != 2 || adj[branch[0]].len() != adj[branch[1]].len() {
        return None;
    }
    // walk each path from one branch vertex to the other
    let (a, b) = (branch[0], branch[1]);
    let mut lengths = Vec::new();
    for &start in &adj[a] {
        let (mut prev, mut cur, mut len) = (a, start, 1);
        while cur != b {
            if adj[cur].len() != 2 {
                return None;
            }
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            prev = cur;
            cur = next;
            len += 1;
        }
        lengths.push(len);
    }
    let short = lengths.iter().filter(|&&l| l == 1).count();
    match (lengths.len(), short) {
        (3, 1) => Some(2),
        (3, 0) => Some(3),
        (4, 1) => Some(3),
        _ => None,
    }
}

fn base_rank_checked(ctx: &mut Ctx, g: &Multigraph, hull_edges: usize) -> Result<Option<i64>> {
    let cmd = compute_cmd(&format!("base:{}", explicit(g)), "rank");
    let combinatorial = g.base_polytope_rank()?;
    if g.edge_count() <= hull_edges {
        let hull = base_polytope(&graphic_matroid(g)?)?.rank()?;
        if hull != combinatorial {
            ctx.check(cmd, false, format!("hull rank {hull}"), format!("facet-count rank {combinatorial}"));
            return Ok(None);
        }
    }
    Ok(Some(combinatorial))
}

pub(super) fn simple_base_classification(ctx: &mut Ctx) -> Result<()> {
    let hull_edges = ctx.ubound("hull_edges");
    let graphs = two_connected_multigraphs(ctx.ubound("max_edges"), ctx.ubound("max_vertices"), true)?;
    let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut swept = 0;
    for g in graphs.iter().filter(|g| g.edge_count() >= 2) {
        swept += 1;
        let Some(r) = base_rank_checked(ctx, g, hull_edges)? else {
            continue;
        };
        let predicted = predicted_simple_rank(g);
        let ok = match predicted {
            Some(p) => p == r,
            None => r >= 4,
        };
        let bucket = if r >= 4 { ">= 4".into() } else { r.to_string() };
        *histogram.entry(bucket).or_default() += 1;
        let expected = predicted.map_or(">= 4".to_string(), |p| p.to_string());
        ctx.row(compute_cmd(&format!("base:{}", explicit(g)), "rank"), ok, expected, r);
    }
    for f in fixtures() {
        let Some(r) = base_rank_checked(ctx, &f.graph, hull_edges)? else {
            continue;
        };
        let ok = f.exact_rank.map_or(r >= f.min_rank, |e| e == r);
        let expected = f.exact_rank.map_or(format!(">= {}", f.min_rank), |e| e.to_string());
        ctx.row(
            format!("{} # {}", compute_cmd(&format!("base:{}", explicit(&f.graph)), "rank"), f.name),
            ok,
            expected,
            r,
        );
    }
    let hist: Vec<String> = histogram.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    ctx.note(format!(
        "{swept} simple 2-connected graphs (K2 excluded); hull cross-check up to {hull_edges} edges"
    ));
    ctx.note(format!("rank histogram: {}", hist.join(", ")));
    Ok(())
}

fn tuples(n: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        v = v
            .into_iter()
            .flat_map(|t| {
                (lo..=hi).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    v
}

fn family_rank(ctx: &mut Ctx, spec: &str, expected: i64) -> Result<()> {
    let name = format!("base:{spec}");
    let g = spec.parse::<FamilySpec>()?.generate()?;
    let hull = base_polytope(&graphic_matroid(&g)?)?.rank()?;
    let combinatorial = g.base_polytope_rank()?;
    ctx.row(
        compute_cmd(&name, "rank"),
        hull == expected && combinatorial == expected,
        expected,
        format!("{hull} (facet count: {combinatorial})"),
    );
    Ok(())
}

pub(super) fn multigraph_base_classification(ctx: &mut Ctx) -> Result<()> {
    let (nmax, smax, pmax) = (ctx.ubound("n"), ctx.ubound("s"), ctx.ubound("p"));
    for n in 1..=nmax {
        for s in tuples(n, 1, smax) {
            for p in 0..=pmax {
                // with one bundle and p = 0 the graph is a bundle of s + 2 edges
                let expected = if n == 1 && p == 0 { 0 } else { n as i64 };
                family_rank(ctx, &FamilySpec::B { s: s.clone(), p }.to_string(), expected)?;
            }
        }
    }
    for s in 1..=smax {
        for q in 1..=smax {
            for t in 0..smax {
                for p in 0..smax {
                    family_rank(ctx, &format!("C:{s},{t};p={p},q={q}"), 3)?;
                }
            }
        }
    }
    for s in tuples(3, 1, smax) {
        family_rank(ctx, &format!("D:{},{},{}", s[0] + 1, s[1] + 1, s[2] + 1), 3)?;
    }
    ctx.note("(n = 1, p = 0) is a single bundle, a simplex of rank 0");

    // every small multigraph of rank <= 3 is equivalent to a family member
    let max_e = ctx.ubound("sweep_edges");
    let mut per_rank: BTreeMap<i64, usize> = BTreeMap::new();
    for g in two_connected_multigraphs(max_e, (max_e + 1).min(9), false)? {
        if g.edge_count() < 2 {
            continue;
        }
        let r = g.base_polytope_rank()?;
        if r > 3 {
            continue;
        }
        *per_rank.entry(r).or_default() += 1;
        let name = format!("base:{}", explicit(&g));
        let p = base_polytope(&graphic_matroid(&g)?)?;
        let mut found = None;
        for c in gmb_connected(r, p.dim())? {
            match decide_equivalence(&p, &c.polytope, Strategy::Canonical, &SearchLimits::default()) {
                Ok(v) if v.is_equivalent() => {
                    found = Some(c.name);
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    ctx.error(equiv_cmd(&name, &c.name), "verdict", e);
                }
            }
        }
        let instance = match &found {
            Some(c) => equiv_cmd(&name, c),
            None => compute_cmd(&name, "rank"),
        };
        ctx.row(
            instance,
            found.is_some(),
            format!("rank {r}: equivalent to a family member"),
            found.unwrap_or_else(|| "no family member".into()),
        );
    }
    let counts: Vec<String> = per_rank.iter().map(|(r, c)| format!("rank {r}: {c}")).collect();
    ctx.note(format!(
        "membership sweep over 2-connected multigraphs with <= {max_e} edges: {}",
        counts.join(", ")
    ));
    Ok(())
}

pub(super) fn ear_monotonicity(ctx: &mut Ctx) -> Result<()> {
    let pool: Vec<Multigraph> = two_connected_multigraphs(6, 7, false)?
        .into_iter()
        .filter(|g| g.edge_count() >= 2)
        .collect();
    let (pairs, max_e, hull_edges) = (ctx.ubound("pairs"), ctx.ubound("max_edges"), ctx.ubound("hull_edges"));
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed());
    let (mut same, mut plus_one, mut general) = (0, 0, 0);
    let mut made = 0;
    while made < pairs {
        let g = &pool[rng.gen_range(0..pool.len())];
        let (u, v, len) = if rng.gen_bool(0.5) {
            let (u, v) = g.edges[rng.gen_range(0..g.edge_count())];
            (u, v, 1)
        } else {
            let u = rng.gen_range(0..g.vertex_count);
            let v = (u + rng.gen_range(1..g.vertex_count)) % g.vertex_count;
            (u, v, rng.gen_range(1..=3))
        };
        let h = add_ear(g, u, v, len)?;
        if h.edge_count() > max_e || h.vertex_count > 9 {
            continue;
        }
        made += 1;
        let instance = format!(
            "{} && {}",
            compute_cmd(&format!("base:{}", explicit(g)), "rank"),
            compute_cmd(&format!("base:{}", explicit(&h)), "rank")
        );
        let (Some(rg), Some(rh)) = (base_rank_checked(ctx, g, hull_edges)?, base_rank_checked(ctx, &h, hull_edges)?)
        else {
            continue;
        };
        let existing = g.edges.iter().position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u));
        match existing {
            Some(e) if len == 1 => {
                let deletable = g.edge_deletable(e)?;
                let expected = rg + i64::from(!deletable);
                if deletable {
                    same += 1;
                } else {
                    plus_one += 1;
                }
                ctx.check(
                    instance,
                    rh == expected,
                    format!("{expected} (edge {} deletable: {deletable})", e),
                    rh,
                );
            }
            _ => {
                general += 1;
                ctx.check(instance, rg <= rh, format!(">= {rg}"), rh);
            }
        }
    }
    ctx.note(format!(
        "{pairs} pairs: {same} parallel edges on deletable edges (+0), {plus_one} on non-deletable edges (+1), {general} other ears"
    ));
    ctx.note(format!("replay: {}", ctx.replay()));
    Ok(())
}
