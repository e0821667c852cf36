//! The explicit-map equivalences, replayed over parameter grids.

use super::{equiv_cmd, Ctx};
use crate::equivalence::{verify_lemma_map, LemmaId, LemmaParams, LemmaReport};
use crate::error::Result;

fn record(ctx: &mut Ctx, instance: String, outcome: Result<LemmaReport>) {
    match outcome {
        Ok(r) => {
            let observed = format!(
                "steps unimodular {}, literal bijection {}, engine {:?}{}",
                r.steps_unimodular,
                r.literal_bijection,
                r.engine,
                r.chain_order
                    .as_ref()
                    .map_or(String::new(), |c| format!(", chain vs order {c:?}"))
            );
            ctx.row(instance, r.passed(), "map verified and engine agrees", observed);
        }
        Err(e) => ctx.error(instance, "map verified and engine agrees", e),
    }
}

fn sorted_tuples(n: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        v = v
            .into_iter()
            .flat_map(|t| {
                let lo = t.last().copied().unwrap_or(1);
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

fn list(s: &[usize]) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub(super) fn base_stable(ctx: &mut Ctx) -> Result<()> {
    let (n, smax, pmax) = (ctx.ubound("n"), ctx.ubound("s"), ctx.ubound("p"));
    for k in 1..=n {
        for s in sorted_tuples(k, smax) {
            for p in 0..=pmax {
                let instance = equiv_cmd(&format!("base:B:{};p={p}", list(&s)), &format!("stab:G:{};p={p}", list(&s)));
                let outcome = verify_lemma_map(LemmaId::EquiBS, &LemmaParams::Paths { s: s.clone(), p });
                record(ctx, instance, outcome);
            }
        }
    }
    Ok(())
}

pub(super) fn base_order(ctx: &mut Ctx) -> Result<()> {
    let (smax, tmax, pmax, qmax) = (ctx.ubound("s"), ctx.ubound("t"), ctx.ubound("p"), ctx.ubound("q"));
    let (mut main_box, mut lemma_box, mut both) = (0, 0, 0);
    for s in 0..=smax {
        for t in 0..=tmax {
            for p in 0..=pmax {
                for q in 1..=qmax {
                    // s, q >= 1 in the classification; t, q >= 1 in the map's
                    // own statement
                    let in_main = s >= 1;
                    let in_lemma = t >= 1;
                    if !in_main && !in_lemma {
                        continue;
                    }
                    main_box += usize::from(in_main);
                    lemma_box += usize::from(in_lemma);
                    both += usize::from(in_main && in_lemma);
                    let instance = equiv_cmd(&format!("base:C:{s},{t};p={p},q={q}"), &format!("order:W:{s},{t},{p},{q}"));
                    let outcome = verify_lemma_map(LemmaId::CcongO, &LemmaParams::Poset { s, t, p, q });
                    record(ctx, instance, outcome);
                }
            }
        }
    }
    ctx.note(format!(
        "classification box (s, q >= 1): {main_box} instances; map box (t, q >= 1): {lemma_box} instances; {both} in both"
    ));
    ctx.note("the composite flips the first path, not the first bundle");
    Ok(())
}

pub(super) fn base_edge(ctx: &mut Ctx) -> Result<()> {
    let smax = ctx.ubound("s");
    for s in sorted_tuples(3, smax) {
        let instance = equiv_cmd(&format!("base:D:{}", list(&s)), &format!("edge:KM:{}", list(&s)));
        let outcome = verify_lemma_map(LemmaId::DcongE, &LemmaParams::Triangle { s: [s[0], s[1], s[2]] });
        record(ctx, instance, outcome);
    }
    Ok(())
}
