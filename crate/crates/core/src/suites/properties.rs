//! Seeded property checks: matroid rank axioms, invariance under random
//! unimodular maps, and independent re-checks of equivalence witnesses.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{equiv_cmd, Ctx};
use crate::equivalence::{canonical_form, decide_equivalence, SearchLimits, Strategy, UnimodularWitness, Verdict};
use crate::error::Result;
use crate::expr::{MatroidSpec, PolytopeExpr};
use crate::geometry::{lattice_invariants, LatticePolytope};
use crate::matroid::Matroid;

const MATROIDS: &[&str] = &[
    "Unif:2,4",
    "Unif:3,5",
    "Unif:1,3",
    "K:4",
    "D:1,1,1",
    "D:1,2,2",
    "B:1,2;p=1",
    "C:1,1;p=1,q=1",
    "KM:2,3",
    "U:A:2|Cyc:3",
    "M:4;01,02,03,12,13",
];

const POLYTOPES: &[&str] = &[
    "indep:D:1,1,1",
    "indep:Unif:2,4",
    "base:B:1,1;p=0",
    "base:D:1,1,2",
    "order:P:4;0<2,0<3,1<2,1<3",
    "order:X",
    "chain:X",
    "stab:Cyc:6",
    "stab:G:1,2;p=1",
    "edge:KM:2,2,2",
    "edge:Cyc:5",
    "cube:3",
];

fn popcount(m: u64) -> usize {
    m.count_ones() as usize
}

/// Rank of `a` straight from the bases: the largest `|a ∩ B|`.
fn oracle_rank(m: &Matroid, a: u64) -> usize {
    m.bases().iter().map(|&b| popcount(a & b)).max().unwrap_or(0)
}

fn axiom_failures(m: &Matroid, a: u64, b: u64) -> Vec<&'static str> {
    let r = |x| m.rank_mask(x);
    let mut bad = Vec::new();
    if r(a) > popcount(a) {
        bad.push("r(A) <= |A|");
    }
    if r(a & b) > r(a) {
        bad.push("monotone");
    }
    if r(a | b) + r(a & b) > r(a) + r(b) {
        bad.push("submodular");
    }
    if r(a) != oracle_rank(m, a) {
        bad.push("agrees with bases");
    }
    if m.is_independent(a) != (r(a) == popcount(a)) {
        bad.push("independence");
    }
    let cl = m.closure_mask(a);
    if cl & a != a || r(cl) != r(a) {
        bad.push("closure keeps rank");
    }
    let outside = m.ground_mask() & !cl;
    if (0..m.ground_size()).any(|e| outside >> e & 1 == 1 && r(a | 1 << e) != r(a) + 1) {
        bad.push("closure is maximal");
    }
    bad
}

pub(super) fn rank_axioms(ctx: &mut Ctx) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed());
    let pool: Vec<(&str, Matroid)> = MATROIDS
        .iter()
        .map(|s| Ok((*s, s.parse::<MatroidSpec>()?.build()?)))
        .collect::<Result<_>>()?;
    for (name, m) in &pool {
        for _ in 0..ctx.bound("subsets") {
            let a = rng.gen::<u64>() & m.ground_mask();
            let b = rng.gen::<u64>() & m.ground_mask();
            let bad = axiom_failures(m, a, b);
            ctx.check(
                format!("{name} A={a:#b} B={b:#b}; {}", ctx.replay()),
                bad.is_empty(),
                "all axioms",
                format!("violated: {}", bad.join(", ")),
            );
        }
    }
    ctx.note(format!("{} matroids, {} subset pairs each", pool.len(), ctx.bound("subsets")));
    Ok(())
}

/// Product of random elementary operations and signed permutations.
fn random_unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    m = perm.iter().map(|&i| m[i].clone()).collect();
    for row in &mut m {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = rng.gen_range(-2..=2);
        let src = m[j].clone();
        for (x, y) in m[i].iter_mut().zip(src) {
            *x += c * y;
        }
    }
    m
}

fn random_image(rng: &mut impl Rng, p: &LatticePolytope) -> (LatticePolytope, Vec<Vec<i64>>) {
    let n = p.ambient_dim();
    let a = random_unimodular(rng, n);
    let t: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    (p.map_affine(&a, &t), a)
}

fn pool(max_dim: usize) -> Result<Vec<(&'static str, LatticePolytope)>> {
    let mut out = Vec::new();
    for name in POLYTOPES {
        let p = name.parse::<PolytopeExpr>()?.build()?;
        if p.dim() <= max_dim {
            out.push((*name, p));
        }
    }
    Ok(out)
}

fn matrix_text(a: &[Vec<i64>]) -> String {
    let rows: Vec<String> = a
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

pub(super) fn unimodular_invariance(ctx: &mut Ctx) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed());
    let pool = pool(ctx.ubound("max_dim"))?;
    for _ in 0..ctx.bound("maps") {
        let (name, p) = pool.choose(&mut rng).expect("pool is nonempty");
        let (q, a) = random_image(&mut rng, p);
        let instance = format!("{name} under {}; {}", matrix_text(&a), ctx.replay());
        let same_inv = lattice_invariants(p) == lattice_invariants(&q);
        let same_rank = p.rank().ok() == q.rank().ok();
        match (canonical_form(p), canonical_form(&q)) {
            (Ok(x), Ok(y)) => {
                let mut bad = Vec::new();
                if !same_inv {
                    bad.push("invariants");
                }
                if !same_rank {
                    bad.push("rank");
                }
                if x != y {
                    bad.push("canonical form");
                }
                ctx.check(instance, bad.is_empty(), "all unchanged", format!("changed: {}", bad.join(", ")));
            }
            (Err(e), _) | (_, Err(e)) => ctx.error(instance, "all unchanged", e),
        }
    }
    Ok(())
}

/// Cofactor expansion, kept separate from the elimination used elsewhere.
fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => i128::from(m[0][0]),
        n => (0..n)
            .filter(|&j| m[0][j] != 0)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * i128::from(m[0][j]) * cofactor_det(&minor)
            })
            .sum(),
    }
}

/// Re-checks a witness from scratch: square, `|det| = 1`, and the vertex
/// images are exactly the vertices of `q`.
fn independent_check(w: &UnimodularWitness, p: &LatticePolytope, q: &LatticePolytope) -> std::result::Result<(), String> {
    let k = w.matrix.len();
    if w.matrix.iter().any(|r| r.len() != k) || w.translation.len() != k {
        return Err("matrix is not square".into());
    }
    let d = cofactor_det(&w.matrix);
    if d.abs() != 1 {
        return Err(format!("determinant {d}"));
    }
    let target: HashSet<&Vec<i64>> = q.vertices().iter().collect();
    let mut image = HashSet::new();
    for v in p.vertices() {
        let y = w.source_chart.to_chart(v).ok_or("vertex off the source chart")?;
        let z: Vec<i64> = w
            .matrix
            .iter()
            .zip(&w.translation)
            .map(|(row, t)| row.iter().zip(&y).map(|(a, b)| a * b).sum::<i64>() + t)
            .collect();
        let x = w.target_chart.from_chart(&z);
        if !target.contains(&x) {
            return Err(format!("{v:?} maps outside the target vertex set"));
        }
        image.insert(x);
    }
    if image.len() != target.len() || p.vertex_count() != q.vertex_count() {
        return Err("vertex map is not a bijection".into());
    }
    Ok(())
}

fn audit(ctx: &mut Ctx, instance: String, p: &LatticePolytope, q: &LatticePolytope, strategy: Strategy) {
    match decide_equivalence(p, q, strategy, &SearchLimits::default()) {
        Ok(Verdict::Equivalent { witness, .. }) => {
            let r = independent_check(&witness, p, q);
            let mut tampered = witness.clone();
            if let Some(t) = tampered.translation.first_mut() {
                *t += 1;
            }
            let rejected = independent_check(&tampered, p, q).is_err() && !tampered.verify(p, q);
            ctx.check(
                instance,
                r.is_ok() && rejected,
                "witness re-verified; shifted copy rejected",
                r.err().unwrap_or_else(|| "shifted copy accepted".into()),
            );
        }
        Ok(Verdict::NotEquivalent { reason }) => ctx.check(instance, false, "equivalent", reason),
        Err(e) => ctx.error(instance, "equivalent", e),
    }
}

pub(super) fn witness_soundness(ctx: &mut Ctx) -> Result<()> {
    let pairs = [
        ("base:B:1,2;p=1", "stab:G:1,2;p=1"),
        ("base:C:1,1;p=1,q=1", "order:W:1,1,1,1"),
        ("base:D:1,2,2", "edge:KM:1,2,2"),
        ("indep:A:3", "stab:K:3"),
        ("indep:A:3", "base:A:4"),
        ("order:P:4;0<2,0<3,1<2,1<3", "stab:Cyc:4"),
    ];
    for (a, b) in pairs {
        let p = a.parse::<PolytopeExpr>()?.build()?;
        let q = b.parse::<PolytopeExpr>()?.build()?;
        for strategy in [Strategy::Canonical, Strategy::Frames] {
            audit(ctx, format!("{} --strategy {}", equiv_cmd(a, b), format!("{strategy:?}").to_lowercase()), &p, &q, strategy);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed());
    let pool = pool(5)?;
    for i in 0..ctx.bound("images") {
        let (name, p) = pool.choose(&mut rng).expect("pool is nonempty");
        let (q, a) = random_image(&mut rng, p);
        let strategy = if i % 2 == 0 { Strategy::Canonical } else { Strategy::Frames };
        audit(ctx, format!("{name} under {}; {}", matrix_text(&a), ctx.replay()), p, &q, strategy);
    }
    Ok(())
}

#[cfg(test)]
pub(super) fn cofactor_det_for_tests(m: &[Vec<i64>]) -> i128 {
    cofactor_det(m)
}
