//! Named graph families and the compact spec grammar.
//!
//! Grammar: `A:s`, `B:s1,..,sn;p=P`, `C:s,t;p=P,q=Q`, `D:s1,s2,s3`,
//! `Cyc:n`, `K:n`, `KM:r1,..,rk`, `G:s1,..,sn;p=P`, `E:n;u-v,..`,
//! `U:spec|spec|..`. An omitted `p` is 0. Unions do not nest in the string
//! form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Multigraph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    A { s: usize },
    B { s: Vec<usize>, p: usize },
    C { s: usize, t: usize, p: usize, q: usize },
    D { s: [usize; 3] },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteMultipartite { parts: Vec<usize> },
    GluedCliques { s: Vec<usize>, p: usize },
    DisjointUnion { parts: Vec<FamilySpec> },
    /// An explicit edge list.
    Explicit { vertex_count: usize, edges: Vec<(usize, usize)> },
}

fn bound(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(msg()))
    }
}

fn all_positive(name: &str, xs: &[usize]) -> Result<()> {
    bound(!xs.is_empty(), || format!("{name}: needs at least one parameter"))?;
    if let Some(i) = xs.iter().position(|&x| x == 0) {
        return Err(Error::ParameterOutOfRange(format!("{name}: s_{} must be >= 1", i + 1)));
    }
    Ok(())
}

/// Path from `from` to `to` through `inner` fresh vertices, as edges.
fn path(from: usize, inner: &[usize], to: usize) -> Vec<(usize, usize)> {
    let mut stops = vec![from];
    stops.extend_from_slice(inner);
    stops.push(to);
    stops.windows(2).map(|w| (w[0], w[1])).collect()
}

fn clique(vs: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            out.push((a.min(b), a.max(b)));
        }
    }
    out
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::A { s } => bound(*s >= 1, || "A: s must be >= 1".into()),
            Self::B { s, .. } => all_positive("B", s),
            // s = 0 is allowed when t >= 1 (the second parameter box)
            Self::C { s, t, q, .. } => {
                bound(*s >= 1 || *t >= 1, || "C: s must be >= 1 (or t >= 1)".into())?;
                bound(*q >= 1, || "C: q must be >= 1".into())
            }
            Self::D { s } => all_positive("D", s),
            Self::Cycle { n } => bound(*n >= 3, || "Cyc: n must be >= 3".into()),
            Self::Complete { n } => bound(*n >= 1, || "K: n must be >= 1".into()),
            Self::CompleteMultipartite { parts } => all_positive("KM", parts),
            Self::GluedCliques { s, .. } => all_positive("G", s),
            Self::DisjointUnion { parts } => {
                bound(!parts.is_empty(), || "U: needs at least one part".into())?;
                parts.iter().try_for_each(Self::validate)
            }
            Self::Explicit { vertex_count, edges } => {
                Multigraph::new(*vertex_count, edges.clone()).map(|_| ())
            }
        }
    }

    pub fn generate(&self) -> Result<Multigraph> {
        self.validate()?;
        self.generate_unchecked()
    }

    /// Builds the graph without range checks, so boundary cases such as `C`
    /// with `s = 0` can be formed.
    pub fn generate_unchecked(&self) -> Result<Multigraph> {
        let (n, edges) = match self {
            Self::A { s } => (2, vec![(0, 1); *s]),
            Self::B { s, p } => {
                let n = s.len();
                let mut edges = Vec::new();
                for (i, &si) in s.iter().enumerate() {
                    edges.extend(std::iter::repeat_n((i, i + 1), si + 1));
                }
                let us: Vec<usize> = (n + 1..n + 1 + p).collect();
                edges.extend(path(0, &us, n));
                (n + 1 + p, edges)
            }
            Self::C { s, t, p, q } => {
                let mut edges = vec![(0, 1); s + 1];
                edges.extend(std::iter::repeat_n((1, 2), t + 1));
                let us: Vec<usize> = (3..3 + p).collect();
                let ws: Vec<usize> = (3 + p..3 + p + q).collect();
                edges.extend(path(0, &us, 2));
                edges.extend(path(1, &ws, 2));
                (3 + p + q, edges)
            }
            Self::D { s } => {
                let mut edges = vec![(0, 1); s[0]];
                edges.extend(std::iter::repeat_n((1, 2), s[1]));
                edges.extend(std::iter::repeat_n((2, 0), s[2]));
                (3, edges)
            }
            Self::Cycle { n } => (*n, (0..*n).map(|i| (i, (i + 1) % n)).collect()),
            Self::Complete { n } => (*n, clique(&(0..*n).collect::<Vec<_>>())),
            Self::CompleteMultipartite { parts } => {
                let mut owner = Vec::new();
                for (i, &r) in parts.iter().enumerate() {
                    owner.extend(std::iter::repeat_n(i, r));
                }
                let v = owner.len();
                let mut edges = Vec::new();
                for a in 0..v {
                    for b in a + 1..v {
                        if owner[a] != owner[b] {
                            edges.push((a, b));
                        }
                    }
                }
                (v, edges)
            }
            Self::GluedCliques { s, p } => {
                let n = s.len();
                let leaves: usize = s.iter().sum();
                let m = |i: usize| leaves + i;
                let mut edges = Vec::new();
                let mut start = 0;
                for (i, &si) in s.iter().enumerate() {
                    let mut vs: Vec<usize> = (start..start + si).collect();
                    vs.push(m(i));
                    edges.extend(clique(&vs));
                    start += si;
                }
                let core: Vec<usize> = (leaves..leaves + n + p).collect();
                edges.extend(clique(&core));
                edges.sort_unstable();
                (leaves + n + p, edges)
            }
            Self::DisjointUnion { parts } => {
                let mut g = Multigraph {
                    vertex_count: 0,
                    edges: Vec::new(),
                };
                for part in parts {
                    g = g.disjoint_union(&part.generate_unchecked()?);
                }
                return Ok(g);
            }
            Self::Explicit { vertex_count, edges } => (*vertex_count, edges.clone()),
        };
        Multigraph::new(n, edges)
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::A { s } => write!(f, "A:{s}"),
            Self::B { s, p } => write!(f, "B:{};p={p}", join(s)),
            Self::C { s, t, p, q } => write!(f, "C:{s},{t};p={p},q={q}"),
            Self::D { s } => write!(f, "D:{}", join(s)),
            Self::Cycle { n } => write!(f, "Cyc:{n}"),
            Self::Complete { n } => write!(f, "K:{n}"),
            Self::CompleteMultipartite { parts } => write!(f, "KM:{}", join(parts)),
            Self::GluedCliques { s, p } => write!(f, "G:{};p={p}", join(s)),
            Self::DisjointUnion { parts } => {
                let inner: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "U:{}", inner.join("|"))
            }
            Self::Explicit { vertex_count, edges } => {
                let list: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                write!(f, "E:{vertex_count};{}", list.join(","))
            }
        }
    }
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn parse_list(text: &str, offset: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut pos = offset;
    for item in text.split(',') {
        let v = item
            .trim()
            .parse()
            .map_err(|_| parse_err(pos, format!("expected a natural number, found {item:?}")))?;
        out.push(v);
        pos += item.len() + 1;
    }
    Ok(out)
}

// `p=1,q=2` into (p, q); keys not in `allowed` are rejected.
fn parse_keys(text: &str, offset: usize, allowed: &[&str]) -> Result<(Option<usize>, Option<usize>)> {
    let (mut p, mut q) = (None, None);
    let mut pos = offset;
    for item in text.split(',') {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| parse_err(pos, format!("expected key=value, found {item:?}")))?;
        let key = key.trim();
        if !allowed.contains(&key) {
            return Err(parse_err(pos, format!("unknown key {key:?}")));
        }
        let v = value
            .trim()
            .parse()
            .map_err(|_| parse_err(pos + key.len() + 1, format!("bad value {value:?}")))?;
        let slot = if key == "p" { &mut p } else { &mut q };
        if slot.replace(v).is_some() {
            return Err(parse_err(pos, format!("duplicate key {key:?}")));
        }
        pos += item.len() + 1;
    }
    Ok((p, q))
}

fn parse_at(text: &str, offset: usize, allow_union: bool) -> Result<FamilySpec> {
    let (tag, rest) = text
        .split_once(':')
        .ok_or_else(|| parse_err(offset, "expected TAG:parameters"))?;
    let body = offset + tag.len() + 1;
    let (params, keys) = match rest.split_once(';') {
        Some((a, b)) => (a, Some(b)),
        None => (rest, None),
    };
    let keys_at = body + params.len() + 1;
    let keyed = |allowed: &[&str]| -> Result<(Option<usize>, Option<usize>)> {
        match keys {
            Some(k) => parse_keys(k, keys_at, allowed),
            None => Ok((None, None)),
        }
    };
    let no_keys = || match keys {
        Some(_) => Err(parse_err(keys_at, format!("family {tag} takes no keys"))),
        None => Ok(()),
    };
    let exactly = |xs: &[usize], k: usize| {
        if xs.len() == k {
            Ok(())
        } else {
            Err(parse_err(body, format!("family {tag} takes {k} parameter(s), found {}", xs.len())))
        }
    };
    let spec = match tag {
        "U" => {
            if !allow_union {
                return Err(parse_err(offset, "nested unions are not supported"));
            }
            let mut parts = Vec::new();
            let mut pos = body;
            for piece in rest.split('|') {
                parts.push(parse_at(piece, pos, false)?);
                pos += piece.len() + 1;
            }
            FamilySpec::DisjointUnion { parts }
        }
        "A" => {
            no_keys()?;
            let xs = parse_list(params, body)?;
            exactly(&xs, 1)?;
            FamilySpec::A { s: xs[0] }
        }
        "B" | "G" => {
            let s = parse_list(params, body)?;
            let (p, _) = keyed(&["p"])?;
            let p = p.unwrap_or(0);
            if tag == "B" {
                FamilySpec::B { s, p }
            } else {
                FamilySpec::GluedCliques { s, p }
            }
        }
        "C" => {
            let xs = parse_list(params, body)?;
            exactly(&xs, 2)?;
            let (p, q) = keyed(&["p", "q"])?;
            let q = q.ok_or_else(|| parse_err(keys_at.min(offset + text.len()), "family C needs q"))?;
            FamilySpec::C {
                s: xs[0],
                t: xs[1],
                p: p.unwrap_or(0),
                q,
            }
        }
        "D" => {
            no_keys()?;
            let xs = parse_list(params, body)?;
            exactly(&xs, 3)?;
            FamilySpec::D { s: [xs[0], xs[1], xs[2]] }
        }
        "Cyc" | "K" => {
            no_keys()?;
            let xs = parse_list(params, body)?;
            exactly(&xs, 1)?;
            if tag == "K" {
                FamilySpec::Complete { n: xs[0] }
            } else {
                FamilySpec::Cycle { n: xs[0] }
            }
        }
        "KM" => {
            no_keys()?;
            FamilySpec::CompleteMultipartite {
                parts: parse_list(params, body)?,
            }
        }
        "E" => {
            let xs = parse_list(params, body)?;
            exactly(&xs, 1)?;
            let mut edges = Vec::new();
            let mut pos = keys_at;
            for item in keys.unwrap_or("").split(',').filter(|x| !x.is_empty()) {
                let pair = item.split_once('-').and_then(|(u, v)| Some((u.trim().parse().ok()?, v.trim().parse().ok()?)));
                edges.push(pair.ok_or_else(|| parse_err(pos, format!("expected u-v, found {item:?}")))?);
                pos += item.len() + 1;
            }
            FamilySpec::Explicit { vertex_count: xs[0], edges }
        }
        other => return Err(parse_err(offset, format!("unknown family tag {other:?}"))),
    };
    Ok(spec)
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_at(s.trim(), 0, true)
    }
}

/// θ-graph: two branch vertices joined by internally disjoint paths of the
/// given lengths. Vertex 0 and 1 are the branch vertices.
pub fn theta_graph(lengths: &[usize]) -> Result<Multigraph> {
    if lengths.len() < 2 || lengths.contains(&0) {
        return Err(Error::ParameterOutOfRange(
            "theta: needs at least two paths of positive length".into(),
        ));
    }
    let mut next = 2;
    let mut edges = Vec::new();
    for &l in lengths {
        let inner: Vec<usize> = (next..next + l - 1).collect();
        next += l - 1;
        edges.extend(path(0, &inner, 1));
    }
    Multigraph::new(next, edges)
}

/// A named simple graph from the shapes enumerated in the simple-graph
/// classification, with the rank bound the classification asserts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub graph: Multigraph,
    /// `rank B(M(G))` equals this when set.
    pub exact_rank: Option<i64>,
    pub min_rank: i64,
}

fn fx(name: &str, graph: Multigraph, exact: Option<i64>, min: i64) -> Fixture {
    Fixture {
        name: name.into(),
        graph,
        exact_rank: exact,
        min_rank: min,
    }
}

fn edges(n: usize, e: &[(usize, usize)]) -> Multigraph {
    Multigraph::new(n, e.to_vec()).expect("fixture edges in range")
}

/// All fixtures. `G1` and `G2` come in two variants: with and without an
/// edge between the branch vertices.
pub fn fixtures() -> Vec<Fixture> {
    let theta = |l: &[usize]| theta_graph(l).expect("valid theta");
    vec![
        fx("G1", theta(&[2, 2, 2]), Some(3), 3),
        fx("G1-edge", theta(&[1, 2, 2]), Some(2), 2),
        fx("G2", theta(&[2, 2, 2, 2]), Some(4), 4),
        fx("G2-edge", theta(&[1, 2, 2, 2]), Some(3), 3),
        // two triangles joined by two rungs
        fx("G3", edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4)]), None, 4),
        // 5-cycle with two chords from one vertex
        fx("G4", edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 3)]), None, 4),
        fx("G5", edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]), None, 6),
        fx("G6", theta(&[2, 2, 2, 2, 2]), None, 4),
        // theta with a long path 0-2-3-4-1 and a chord 2-4 inside it
        fx(
            "G7",
            edges(8, &[(0, 2), (2, 3), (3, 4), (4, 1), (0, 5), (5, 1), (0, 6), (6, 1), (0, 7), (7, 1), (2, 4)]),
            None,
            4,
        ),
        // theta with path 0-2-6-1 and a chord from branch vertex 0 to 6
        fx(
            "G8",
            edges(7, &[(0, 2), (2, 6), (6, 1), (0, 3), (3, 1), (0, 4), (4, 1), (0, 5), (5, 1), (0, 6)]),
            None,
            4,
        ),
        // K_{2,4} plus an edge between interiors of two paths
        fx(
            "G9",
            edges(6, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1), (0, 5), (5, 1), (2, 3)]),
            None,
            6,
        ),
    ]
}

pub fn fixture(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> Multigraph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn edge_counts() {
        let a = gen("A:3");
        assert_eq!((a.vertex_count, a.edge_count()), (2, 3));
        let b = gen("B:1;p=1");
        assert_eq!((b.vertex_count, b.edge_count()), (3, 4));
        assert_eq!(b.edges, vec![(0, 1), (0, 1), (0, 2), (2, 1)]);
        let d = gen("D:2,1,1");
        assert_eq!((d.vertex_count, d.edge_count()), (3, 4));
        let b = gen("B:1,2,1;p=2");
        assert_eq!(b.edge_count(), 2 + 3 + 2 + 3);
        let c = gen("C:2,1;p=1,q=2");
        assert_eq!(c.edge_count(), 3 + 2 + 2 + 3);
        assert_eq!(c.vertex_count, 3 + 1 + 2);
    }

    #[test]
    fn glued_cliques_vertex_order() {
        // G_{1,1,1}: K_{1+1} leaves hanging off a triangle
        let g = gen("G:1,2;p=1");
        // leaves v11, v21, v22, then m1, m2, then u1
        assert_eq!(g.vertex_count, 6);
        assert!(g.is_simple());
        // K2 + K3 + K3
        assert_eq!(g.edge_count(), 1 + 3 + 3);
        assert!(g.edges.contains(&(0, 3)));
        assert!(g.edges.contains(&(1, 2)));
        assert!(g.edges.contains(&(3, 5)));
    }

    #[test]
    fn multipartite() {
        let g = gen("KM:2,2,2");
        assert_eq!((g.vertex_count, g.edge_count()), (6, 12));
        assert!(!g.edges.contains(&(0, 1)));
    }

    #[test]
    fn round_trip_strings() {
        for s in ["A:3", "B:1,2;p=1", "C:1,0;p=0,q=1", "D:2,2,2", "Cyc:5", "K:4", "KM:2,2,2", "G:1,1;p=1", "U:A:2|A:2", "E:3;0-1,1-2,0-1"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("B:1,2".parse::<FamilySpec>().unwrap(), FamilySpec::B { s: vec![1, 2], p: 0 });
    }

    #[test]
    fn parse_errors_have_positions() {
        match "B:1,x".parse::<FamilySpec>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!("Z:1".parse::<FamilySpec>(), Err(Error::Parse { position: 0, .. })));
        assert!("A:1;p=2".parse::<FamilySpec>().is_err());
        assert!("C:1,1;p=0".parse::<FamilySpec>().is_err());
        assert!("U:U:A:1".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn range_errors_name_the_bound() {
        for (s, needle) in [("A:0", "s"), ("B:1,0", "s_2"), ("C:0,0;q=1", "s"), ("C:1,0;q=0", "q"), ("D:1,0,1", "s_2")] {
            match s.parse::<FamilySpec>().unwrap().generate() {
                Err(Error::ParameterOutOfRange(m)) => assert!(m.contains(needle), "{m}"),
                other => panic!("{s}: {other:?}"),
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let spec: FamilySpec = "U:B:1;p=1|D:1,1,1".parse().unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<FamilySpec>(&json).unwrap(), spec);
        let g = spec.generate().unwrap();
        let back: Multigraph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn fixtures_are_simple_and_two_connected() {
        for f in fixtures() {
            assert!(f.graph.is_simple(), "{}", f.name);
            assert!(f.graph.is_two_connected(), "{}", f.name);
        }
        assert_eq!(fixture("G1").unwrap().graph.ear_decomposition().unwrap().ears.len(), 2);
    }

    #[test]
    fn contracting_first_path_edge() {
        // ℬ_{1,1} / ε₀ collapses to three parallel edges
        let b = gen("B:1;p=1");
        assert_eq!(b.contract_edges(&[2]), gen("A:3"));
        // with a longer path the result is a triangle with a doubled side
        let b = gen("B:1;p=2");
        let t = b.contract_edges(&[2]);
        assert_eq!(t.vertex_count, 3);
        assert_eq!(t.edges, vec![(0, 1), (0, 1), (0, 2), (2, 1)]);
    }
}
