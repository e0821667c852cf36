use std::collections::{HashMap, HashSet};

use super::canonical::refine;
use super::{Prepared, SearchLimits, UnimodularWitness};
use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::linalg::{self, integral, narrow, widen, Matrix, Rational};

struct Side {
    prep: Prepared,
    color: Vec<u32>,
    adjacent: Vec<Vec<usize>>,
    pair_sig: HashMap<(usize, usize), Vec<(i64, i64)>>,
}

impl Side {
    fn new(p: &LatticePolytope) -> Self {
        let prep = Prepared::new(p);
        let nv = prep.vertex_count();
        let nf = prep.facet_sets.len();
        let mut color = vec![0; nv];
        let mut fcol = vec![0; nf];
        refine(&prep.pm, &mut color, &mut fcol);
        let adjacent = adjacency(&prep);
        Self {
            prep,
            color,
            adjacent,
            pair_sig: HashMap::new(),
        }
    }

    /// Multiset of lattice-distance pairs over all facets; preserved by any
    /// equivalence mapping `u -> u'`, `v -> v'`.
    fn sig(&mut self, u: usize, v: usize) -> &Vec<(i64, i64)> {
        let pm = &self.prep.pm;
        self.pair_sig.entry((u, v)).or_insert_with(|| {
            let mut s: Vec<(i64, i64)> = pm[u].iter().zip(&pm[v]).map(|(&a, &b)| (a, b)).collect();
            s.sort_unstable();
            s
        })
    }
}

// Vertices u, v span an edge iff no third vertex lies on every facet
// containing both.
fn adjacency(prep: &Prepared) -> Vec<Vec<usize>> {
    let nv = prep.vertex_count();
    let mut adj = vec![Vec::new(); nv];
    if prep.k == 1 {
        for u in 0..nv {
            adj[u] = (0..nv).filter(|&v| v != u).collect();
        }
        return adj;
    }
    for u in 0..nv {
        for v in u + 1..nv {
            let mut inter: Option<crate::bits::BitSet> = None;
            for f in &prep.facet_sets {
                if f.contains(u) && f.contains(v) {
                    inter = Some(match inter {
                        None => f.clone(),
                        Some(s) => s.intersection(f),
                    });
                }
            }
            if inter.is_some_and(|s| s.len() == 2) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    adj
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i128> {
    a.iter().zip(b).map(|(x, y)| (*x - *y) as i128).collect()
}

/// The exhaustive frame search alone: a verified witness, or `None` after
/// testing every admissible frame image.
pub fn frame_search(p: &LatticePolytope, q: &LatticePolytope) -> Result<Option<UnimodularWitness>> {
    Ok(frame_search_with(p, q, &SearchLimits::default())?.0)
}

pub(crate) fn frame_search_with(
    p: &LatticePolytope,
    q: &LatticePolytope,
    limits: &SearchLimits,
) -> Result<(Option<UnimodularWitness>, u64)> {
    limits.check(p)?;
    limits.check(q)?;
    if p.dim() != q.dim() || p.vertex_count() != q.vertex_count() {
        return Ok((None, 0));
    }
    let mut sp = Side::new(p);
    let mut sq = Side::new(q);
    let k = sp.prep.k;
    let nv = sp.prep.vertex_count();
    let class_size = |side: &Side, c: u32| side.color.iter().filter(|&&x| x == c).count();
    // p0: a vertex of the rarest colour; then k neighbours with independent
    // edge directions, rarest colours first
    let p0 = (0..nv)
        .min_by_key(|&v| (class_size(&sp, sp.color[v]), v))
        .expect("nonempty");
    let mut nbrs = sp.adjacent[p0].clone();
    nbrs.sort_by_key(|&v| (class_size(&sp, sp.color[v]), v));
    let mut frame = vec![p0];
    let mut dirs: Vec<Vec<i128>> = Vec::new();
    for v in nbrs {
        if dirs.len() == k {
            break;
        }
        let mut trial = dirs.clone();
        trial.push(diff(&sp.prep.coords[v], &sp.prep.coords[p0]));
        if linalg::rank(&trial) == trial.len() {
            dirs = trial;
            frame.push(v);
        }
    }
    if dirs.len() != k {
        return Err(Error::Inconclusive("could not build an edge frame".into()));
    }
    // columns are the frame directions; invert once
    let dp: Matrix = (0..k).map(|i| dirs.iter().map(|d| d[i]).collect()).collect();
    let dp_inv = linalg::inverse(&dp).expect("independent frame");
    let sigs: Vec<Vec<Vec<(i64, i64)>>> = (0..frame.len())
        .map(|i| (0..i).map(|j| sp.sig(frame[j], frame[i]).clone()).collect())
        .collect();
    let targets: HashSet<Vec<i64>> = sq.prep.coords.iter().cloned().collect();

    let mut checked = 0u64;
    let candidates0: Vec<usize> = (0..nv).filter(|&v| sq.color[v] == sp.color[p0]).collect();
    for q0 in candidates0 {
        let mut images = vec![q0];
        let found = extend(
            &sp,
            &mut sq,
            &frame,
            &sigs,
            &dp_inv,
            &targets,
            &mut images,
            &mut checked,
            limits.frame_budget,
        )?;
        if let Some((a, t)) = found {
            let w = UnimodularWitness {
                matrix: a.iter().map(|r| narrow(r)).collect(),
                translation: narrow(&t),
                source_chart: sp.prep.chart.clone(),
                target_chart: sq.prep.chart.clone(),
            };
            return Ok((Some(w), checked));
        }
    }
    Ok((None, checked))
}

type Affine = (Matrix, Vec<i128>);

#[allow(clippy::too_many_arguments)]
fn extend(
    sp: &Side,
    sq: &mut Side,
    frame: &[usize],
    sigs: &[Vec<Vec<(i64, i64)>>],
    dp_inv: &[Vec<Rational>],
    targets: &HashSet<Vec<i64>>,
    images: &mut Vec<usize>,
    checked: &mut u64,
    budget: u64,
) -> Result<Option<Affine>> {
    let i = images.len();
    if i == frame.len() {
        *checked += 1;
        if *checked > budget {
            return Err(Error::Inconclusive(format!("frame search exceeded {budget} frames")));
        }
        return Ok(solve(sp, sq, frame, images, dp_inv, targets));
    }
    let q0 = images[0];
    let cands: Vec<usize> = sq.adjacent[q0]
        .iter()
        .copied()
        .filter(|&v| sq.color[v] == sp.color[frame[i]] && !images.contains(&v))
        .collect();
    'next: for v in cands {
        for j in 0..i {
            if *sq.sig(images[j], v) != sigs[i][j] {
                continue 'next;
            }
        }
        images.push(v);
        let r = extend(sp, sq, frame, sigs, dp_inv, targets, images, checked, budget)?;
        images.pop();
        if r.is_some() {
            return Ok(r);
        }
    }
    Ok(None)
}

fn solve(
    sp: &Side,
    sq: &Side,
    frame: &[usize],
    images: &[usize],
    dp_inv: &[Vec<Rational>],
    targets: &HashSet<Vec<i64>>,
) -> Option<Affine> {
    let k = frame.len() - 1;
    let pc = &sp.prep.coords;
    let qc = &sq.prep.coords;
    let dq: Vec<Vec<i128>> = (1..=k).map(|j| diff(&qc[images[j]], &qc[images[0]])).collect();
    // A = Dq * Dp^{-1}, with Dq's columns the image directions
    let mut a: Matrix = vec![vec![0; k]; k];
    for r in 0..k {
        for c in 0..k {
            let mut acc = Rational::from_integer(0);
            for (l, d) in dq.iter().enumerate() {
                acc += Rational::from_integer(d[r]) * dp_inv[l][c];
            }
            a[r][c] = integral(&[acc])?[0];
        }
    }
    if linalg::det(&a).abs() != 1 {
        return None;
    }
    let p0 = widen(&pc[frame[0]]);
    let q0 = widen(&qc[images[0]]);
    let ap0 = linalg::mat_vec(&a, &p0);
    let t: Vec<i128> = q0.iter().zip(&ap0).map(|(x, y)| x - y).collect();
    for x in pc {
        let y: Vec<i64> = linalg::mat_vec(&a, &widen(x))
            .iter()
            .zip(&t)
            .map(|(u, v)| (u + v) as i64)
            .collect();
        if !targets.contains(&y) {
            return None;
        }
    }
    Some((a, t))
}
