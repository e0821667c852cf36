//! Text names for posets, matroids and polytopes, so that every suite
//! instance can be replayed from the command line.
//!
//! Posets: `W:s,t,p,q`, `Chain:n`, `Anti:n`, `X`, `P:n;a<b,c<d`.
//! Matroids: `Unif:r,n`, `M:n;b1,b2,..` (bases as base-36 digit strings,
//! `-` for the empty basis), or any graph family (the graphic matroid).
//! Polytopes: `indep:M`, `base:M`, `stab:G`, `edge:G`, `order:P`,
//! `chain:P`, `cube:d`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constructors::{
    base_polytope, chain_polytope, edge_polytope, independence_polytope, order_polytope, stable_set_polytope,
};
use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::graph::{graphic_matroid, FamilySpec};
use crate::matroid::Matroid;
use crate::poset::{make_W_poset, make_W_poset_any, Poset};

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn naturals(text: &str, offset: usize, count: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut pos = offset;
    for item in text.split(',') {
        out.push(
            item.trim()
                .parse()
                .map_err(|_| parse_err(pos, format!("expected a natural number, found {item:?}")))?,
        );
        pos += item.len() + 1;
    }
    if out.len() != count {
        return Err(parse_err(offset, format!("expected {count} parameter(s), found {}", out.len())));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "poset", rename_all = "snake_case")]
pub enum PosetSpec {
    W { s: usize, t: usize, p: usize, q: usize },
    Chain { n: usize },
    Antichain { n: usize },
    X,
    /// Elements `0..n` with the listed relations `a < b`.
    Relations { n: usize, relations: Vec<(usize, usize)> },
}

impl PosetSpec {
    pub fn build(&self) -> Result<Poset> {
        match self {
            Self::W { s: 0, t, p, q } if *t >= 1 && *q >= 1 => make_W_poset_any(0, *t, *p, *q),
            Self::W { s, t, p, q } => make_W_poset(*s, *t, *p, *q),
            Self::Chain { n } => Ok(Poset::chain(*n)),
            Self::Antichain { n } => Ok(Poset::antichain(*n)),
            Self::X => Ok(Poset::x_shape()),
            Self::Relations { n, relations } => Poset::new(*n, relations.clone(), None),
        }
    }

    /// Whether `text` starts with a poset tag.
    pub fn is_poset_text(text: &str) -> bool {
        let tag = text.trim().split(':').next().unwrap_or("");
        matches!(tag, "W" | "Chain" | "Anti" | "X" | "P")
    }
}

impl fmt::Display for PosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::W { s, t, p, q } => write!(f, "W:{s},{t},{p},{q}"),
            Self::Chain { n } => write!(f, "Chain:{n}"),
            Self::Antichain { n } => write!(f, "Anti:{n}"),
            Self::X => f.write_str("X"),
            Self::Relations { n, relations } => {
                let r: Vec<String> = relations.iter().map(|(a, b)| format!("{a}<{b}")).collect();
                write!(f, "P:{n};{}", r.join(","))
            }
        }
    }
}

impl FromStr for PosetSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "X" {
            return Ok(Self::X);
        }
        let (tag, rest) = text
            .split_once(':')
            .ok_or_else(|| parse_err(0, "expected TAG:parameters"))?;
        let body = tag.len() + 1;
        match tag {
            "W" => {
                let x = naturals(rest, body, 4)?;
                Ok(Self::W {
                    s: x[0],
                    t: x[1],
                    p: x[2],
                    q: x[3],
                })
            }
            "Chain" => Ok(Self::Chain {
                n: naturals(rest, body, 1)?[0],
            }),
            "Anti" => Ok(Self::Antichain {
                n: naturals(rest, body, 1)?[0],
            }),
            "P" => {
                let (n, rels) = rest.split_once(';').unwrap_or((rest, ""));
                let n = naturals(n, body, 1)?[0];
                let mut relations = Vec::new();
                let mut pos = body + rest.find(';').map_or(rest.len(), |i| i + 1);
                for item in rels.split(',').filter(|x| !x.is_empty()) {
                    let pair = item
                        .split_once('<')
                        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
                    relations.push(pair.ok_or_else(|| parse_err(pos, format!("expected a<b, found {item:?}")))?);
                    pos += item.len() + 1;
                }
                Ok(Self::Relations { n, relations })
            }
            other => Err(parse_err(0, format!("unknown poset tag {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "matroid", rename_all = "snake_case")]
pub enum MatroidSpec {
    Uniform { r: usize, n: usize },
    Bases { n: usize, bases: Vec<u64> },
    Graphic { graph: FamilySpec },
}

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

fn basis_text(b: u64) -> String {
    if b == 0 {
        return "-".into();
    }
    crate::bits::mask_elements(b).into_iter().map(|e| DIGITS[e] as char).collect()
}

impl MatroidSpec {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            Self::Uniform { r, n } => Matroid::uniform(*r, *n),
            Self::Bases { n, bases } => Matroid::from_masks(*n, bases.clone()),
            Self::Graphic { graph } => graphic_matroid(&graph.generate()?),
        }
    }
}

impl fmt::Display for MatroidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Uniform { r, n } => write!(f, "Unif:{r},{n}"),
            Self::Bases { n, bases } => {
                let b: Vec<String> = bases.iter().map(|&b| basis_text(b)).collect();
                write!(f, "M:{n};{}", b.join(","))
            }
            Self::Graphic { graph } => write!(f, "{graph}"),
        }
    }
}

impl FromStr for MatroidSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("Unif:") {
            let x = naturals(rest, 5, 2)?;
            return Ok(Self::Uniform { r: x[0], n: x[1] });
        }
        let Some(rest) = text.strip_prefix("M:") else {
            return Ok(Self::Graphic { graph: text.parse()? });
        };
        let (n, list) = rest.split_once(';').ok_or_else(|| parse_err(2, "expected M:n;bases"))?;
        let n = naturals(n, 2, 1)?[0];
        let mut pos = 3 + rest.find(';').unwrap_or(0);
        let mut bases = Vec::new();
        for item in list.split(',') {
            let mut b = 0u64;
            if item != "-" {
                for (i, c) in item.bytes().enumerate() {
                    let e = DIGITS
                        .iter()
                        .position(|&d| d == c)
                        .filter(|&e| e < n)
                        .ok_or_else(|| parse_err(pos + i, format!("bad element {:?}", c as char)))?;
                    b |= 1 << e;
                }
            }
            bases.push(b);
            pos += item.len() + 1;
        }
        Ok(Self::Bases { n, bases })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolytopeExpr {
    Independence { matroid: MatroidSpec },
    Base { matroid: MatroidSpec },
    Stable { graph: FamilySpec },
    Edge { graph: FamilySpec },
    Order { poset: PosetSpec },
    Chain { poset: PosetSpec },
    Cube { d: usize },
}

impl PolytopeExpr {
    pub fn build(&self) -> Result<LatticePolytope> {
        match self {
            Self::Independence { matroid } => independence_polytope(&matroid.build()?),
            Self::Base { matroid } => base_polytope(&matroid.build()?),
            Self::Stable { graph } => stable_set_polytope(&graph.generate()?.to_simple()?),
            Self::Edge { graph } => edge_polytope(&graph.generate()?.to_simple()?),
            Self::Order { poset } => order_polytope(&poset.build()?),
            Self::Chain { poset } => chain_polytope(&poset.build()?),
            Self::Cube { d } => {
                let pts = (0..1u64 << d)
                    .map(|m| (0..*d).map(|i| ((m >> i) & 1) as i64).collect())
                    .collect();
                LatticePolytope::from_vertices_unchecked(pts)
            }
        }
    }

    pub fn independence(m: &str) -> Self {
        Self::Independence {
            matroid: m.parse().expect("valid matroid spec"),
        }
    }

    pub fn base(m: &str) -> Self {
        Self::Base {
            matroid: m.parse().expect("valid matroid spec"),
        }
    }

    pub fn stable(g: &str) -> Self {
        Self::Stable {
            graph: g.parse().expect("valid graph spec"),
        }
    }

    pub fn edge(g: &str) -> Self {
        Self::Edge {
            graph: g.parse().expect("valid graph spec"),
        }
    }

    pub fn order(p: &str) -> Self {
        Self::Order {
            poset: p.parse().expect("valid poset spec"),
        }
    }
}

impl fmt::Display for PolytopeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Independence { matroid } => write!(f, "indep:{matroid}"),
            Self::Base { matroid } => write!(f, "base:{matroid}"),
            Self::Stable { graph } => write!(f, "stab:{graph}"),
            Self::Edge { graph } => write!(f, "edge:{graph}"),
            Self::Order { poset } => write!(f, "order:{poset}"),
            Self::Chain { poset } => write!(f, "chain:{poset}"),
            Self::Cube { d } => write!(f, "cube:{d}"),
        }
    }
}

impl FromStr for PolytopeExpr {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, rest) = text
            .split_once(':')
            .ok_or_else(|| parse_err(0, "expected KIND:spec"))?;
        // positions in nested errors are shifted past the kind prefix
        let shift = |e: Error| match e {
            Error::Parse { position, message } => Error::Parse {
                position: position + kind.len() + 1,
                message,
            },
            other => other,
        };
        Ok(match kind {
            "indep" => Self::Independence {
                matroid: rest.parse().map_err(shift)?,
            },
            "base" => Self::Base {
                matroid: rest.parse().map_err(shift)?,
            },
            "stab" => Self::Stable {
                graph: rest.parse().map_err(shift)?,
            },
            "edge" => Self::Edge {
                graph: rest.parse().map_err(shift)?,
            },
            "order" => Self::Order {
                poset: rest.parse().map_err(shift)?,
            },
            "chain" => Self::Chain {
                poset: rest.parse().map_err(shift)?,
            },
            "cube" => Self::Cube {
                d: naturals(rest, kind.len() + 1, 1)?[0],
            },
            other => return Err(parse_err(0, format!("unknown polytope kind {other:?}"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "indep:D:1,1,1",
            "base:B:1;p=1",
            "base:Unif:2,4",
            "indep:M:3;01,02,12",
            "indep:M:2;-",
            "stab:E:4;0-1,0-2,1-2,1-3,2-3",
            "edge:KM:2,2,2",
            "order:P:4;0<2,0<3,1<2,1<3",
            "chain:W:1,1,0,1",
            "order:X",
            "order:Chain:3",
            "cube:4",
        ] {
            let e: PolytopeExpr = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
            e.build().unwrap();
        }
    }

    #[test]
    fn errors_carry_shifted_positions() {
        match "base:B:1,x".parse::<PolytopeExpr>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 9),
            other => panic!("{other:?}"),
        }
        assert!("foo:1".parse::<PolytopeExpr>().is_err());
        assert!("order:W:1,1".parse::<PolytopeExpr>().is_err());
        match "indep:M:3;01,0x".parse::<PolytopeExpr>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 14),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(PolytopeExpr::base("A:4").build().unwrap().facet_count(), 4);
        assert_eq!(PolytopeExpr::independence("D:1,1,1").build().unwrap().rank().unwrap(), 3);
        assert_eq!(PolytopeExpr::base("B:1,2;p=1").build().unwrap().rank().unwrap(), 2);
        assert_eq!("cube:3".parse::<PolytopeExpr>().unwrap().build().unwrap().vertex_count(), 8);
    }
}
