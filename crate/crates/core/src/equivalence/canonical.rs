use serde::{Deserialize, Serialize};

use super::{Prepared, SearchLimits, UnimodularWitness};
use crate::error::{Error, Result};
use crate::geometry::{AffineLatticeChart, LatticePolytope};
use crate::linalg::{self, column_hnf, integral, narrow, Matrix};

/// The Hermite form of the vertex differences `v_i - v_0`, rows in a
/// canonical vertex order, minimized over all leaves of the search tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub dim: usize,
    pub vertex_count: usize,
    pub matrix: Vec<Vec<i64>>,
}

pub(crate) struct LeafData {
    pub order: Vec<usize>,
    /// Unimodular `U` with `D U = H`.
    pub u: Matrix,
    pub coords: Vec<Vec<i64>>,
    pub chart: AffineLatticeChart,
    pub leaves: u64,
}

fn relabel<T: Ord + Clone>(sigs: &[T]) -> (Vec<u32>, usize) {
    let mut uniq = sigs.to_vec();
    uniq.sort_unstable();
    uniq.dedup();
    let ids = sigs
        .iter()
        .map(|s| uniq.binary_search(s).expect("present") as u32)
        .collect();
    (ids, uniq.len())
}

fn distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Colour refinement of vertices and facets by lattice distances until
/// stable. Colour ids are canonical: they index sorted signatures.
pub(crate) fn refine(pm: &[Vec<i64>], vcol: &mut Vec<u32>, fcol: &mut Vec<u32>) {
    let nv = vcol.len();
    let nf = fcol.len();
    let (mut cv, mut cf) = (distinct(vcol), distinct(fcol));
    loop {
        let vs: Vec<(u32, Vec<(u32, i64)>)> = (0..nv)
            .map(|v| {
                let mut s: Vec<(u32, i64)> = (0..nf).map(|f| (fcol[f], pm[v][f])).collect();
                s.sort_unstable();
                (vcol[v], s)
            })
            .collect();
        let fs: Vec<(u32, Vec<(u32, i64)>)> = (0..nf)
            .map(|f| {
                let mut s: Vec<(u32, i64)> = (0..nv).map(|v| (vcol[v], pm[v][f])).collect();
                s.sort_unstable();
                (fcol[f], s)
            })
            .collect();
        let (nvc, nvn) = relabel(&vs);
        let (nfc, nfn) = relabel(&fs);
        *vcol = nvc;
        *fcol = nfc;
        if nvn == cv && nfn == cf {
            return;
        }
        cv = nvn;
        cf = nfn;
    }
}

struct Search<'a> {
    prep: &'a Prepared,
    budget: u64,
    leaves: u64,
    best: Option<(Matrix, Vec<usize>, Matrix)>,
}

impl Search<'_> {
    fn run(&mut self, mut vcol: Vec<u32>, mut fcol: Vec<u32>) -> Result<()> {
        refine(&self.prep.pm, &mut vcol, &mut fcol);
        let n = vcol.len();
        let mut counts = vec![0usize; n];
        for &c in &vcol {
            counts[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
            return self.leaf(&vcol);
        };
        for chosen in (0..n).filter(|&v| vcol[v] as usize == target) {
            let child: Vec<u32> = (0..n)
                .map(|v| 2 * vcol[v] + u32::from(v != chosen))
                .collect();
            self.run(child, fcol.clone())?;
        }
        Ok(())
    }

    fn leaf(&mut self, vcol: &[u32]) -> Result<()> {
        self.leaves += 1;
        if self.leaves > self.budget {
            return Err(Error::Inconclusive(format!(
                "canonical form search exceeded {} leaves",
                self.budget
            )));
        }
        let mut order = vec![0; vcol.len()];
        for (v, &c) in vcol.iter().enumerate() {
            order[c as usize] = v;
        }
        let c = &self.prep.coords;
        let o = &c[order[0]];
        let d: Matrix = order[1..]
            .iter()
            .map(|&v| c[v].iter().zip(o).map(|(a, b)| (*a - *b) as i128).collect())
            .collect();
        let (h, u, _) = column_hnf(&d, self.prep.k);
        if self.best.as_ref().is_none_or(|(b, _, _)| h < *b) {
            self.best = Some((h, order, u));
        }
        Ok(())
    }
}

pub(crate) fn canonical_data(p: &LatticePolytope, limits: &SearchLimits) -> Result<(CanonicalForm, LeafData)> {
    limits.check(p)?;
    let prep = Prepared::new(p);
    let nv = prep.vertex_count();
    let nf = prep.pm.first().map_or(0, Vec::len);
    let mut search = Search {
        prep: &prep,
        budget: limits.leaf_budget,
        leaves: 0,
        best: None,
    };
    search.run(vec![0; nv], vec![0; nf])?;
    let leaves = search.leaves;
    let (h, order, u) = search.best.expect("at least one leaf");
    let form = CanonicalForm {
        dim: prep.k,
        vertex_count: nv,
        matrix: h.iter().map(|r| narrow(r)).collect(),
    };
    Ok((
        form,
        LeafData {
            order,
            u,
            coords: prep.coords,
            chart: prep.chart,
            leaves,
        },
    ))
}

/// Canonical form under the default gates.
pub fn canonical_form(p: &LatticePolytope) -> Result<CanonicalForm> {
    canonical_form_with(p, &SearchLimits::default())
}

pub fn canonical_form_with(p: &LatticePolytope, limits: &SearchLimits) -> Result<CanonicalForm> {
    Ok(canonical_data(p, limits)?.0)
}

/// From `D_P U_P = H = D_Q U_Q`: row differences satisfy
/// `r^Q = r^P U_P U_Q^{-1}`, so `A = (U_P U_Q^{-1})^T`.
pub(crate) fn witness_from_leaves(p: &LeafData, q: &LeafData) -> Result<UnimodularWitness> {
    let k = p.u.len();
    let uq_inv = linalg::inverse(&q.u)
        .and_then(|m| m.iter().map(|r| integral(r)).collect::<Option<Matrix>>())
        .ok_or_else(|| Error::Inconclusive("transform is not unimodular".into()))?;
    let m = linalg::mat_mul(&p.u, &uq_inv);
    let a: Matrix = linalg::transpose(&m, k);
    let p0 = linalg::widen(&p.coords[p.order[0]]);
    let q0 = linalg::widen(&q.coords[q.order[0]]);
    let ap0 = linalg::mat_vec(&a, &p0);
    let t: Vec<i128> = q0.iter().zip(&ap0).map(|(x, y)| x - y).collect();
    Ok(UnimodularWitness {
        matrix: a.iter().map(|r| narrow(r)).collect(),
        translation: narrow(&t),
        source_chart: p.chart.clone(),
        target_chart: q.chart.clone(),
    })
}
