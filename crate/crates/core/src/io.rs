//! The shared JSON file formats.
//!
//! Files are told apart by their fields: `{ambient_dim, vertices}` is a
//! polytope, `{ambient_dim, inequalities}` an H-representation,
//! `{ground_size, bases}` a matroid, `{vertex_count, edges}` a graph and
//! `{element_count, covers}` a poset.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::expr::PolytopeExpr;
use crate::geometry::{HalfspaceSystem, LatticePolytope};
use crate::graph::Multigraph;
use crate::matroid::Matroid;
use crate::poset::Poset;

#[derive(Clone, Debug, PartialEq)]
pub enum Artifact {
    Polytope(LatticePolytope),
    HalfspaceSystem(HalfspaceSystem),
    Matroid(Matroid),
    Graph(Multigraph),
    Poset(Poset),
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Polytope(_) => "polytope",
            Self::HalfspaceSystem(_) => "hrep",
            Self::Matroid(_) => "matroid",
            Self::Graph(_) => "graph",
            Self::Poset(_) => "poset",
        }
    }

    pub fn to_json(&self) -> String {
        let v = match self {
            Self::Polytope(p) => to_value(p),
            Self::HalfspaceSystem(h) => to_value(h),
            Self::Matroid(m) => to_value(m),
            Self::Graph(g) => to_value(g),
            Self::Poset(p) => to_value(p),
        };
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn decode<T: serde::de::DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Format(e.to_string()))
}

pub fn parse_artifact(text: &str) -> Result<Artifact> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let has = |k: &str| v.get(k).is_some();
    if has("vertices") {
        Ok(Artifact::Polytope(decode(v)?))
    } else if has("inequalities") {
        Ok(Artifact::HalfspaceSystem(decode(v)?))
    } else if has("bases") {
        Ok(Artifact::Matroid(decode(v)?))
    } else if has("edges") {
        Ok(Artifact::Graph(decode(v)?))
    } else if has("covers") {
        Ok(Artifact::Poset(decode(v)?))
    } else {
        Err(Error::Format(
            "unrecognized document: expected vertices, inequalities, bases, edges or covers".into(),
        ))
    }
}

pub fn read_artifact(path: &Path) -> Result<Artifact> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_artifact(&text)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// A polytope from a file path or, failing that, a polytope expression.
pub fn load_polytope(arg: &str) -> Result<LatticePolytope> {
    let path = Path::new(arg);
    if path.is_file() {
        return match read_artifact(path)? {
            Artifact::Polytope(p) => Ok(p),
            other => Err(Error::Format(format!("{arg}: expected a polytope, found a {}", other.kind()))),
        };
    }
    arg.parse::<PolytopeExpr>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    #[test]
    fn polytope_files_sort_vertices() {
        let text = r#"{"ambient_dim": 2, "vertices": [[1, 0], [0, 0], [0, 1]]}"#;
        let Artifact::Polytope(p) = parse_artifact(text).unwrap() else {
            panic!()
        };
        assert_eq!(p.vertices()[0], vec![0, 0]);
        let again = parse_artifact(&Artifact::Polytope(p.clone()).to_json()).unwrap();
        assert_eq!(again, Artifact::Polytope(p));
    }

    #[test]
    fn kinds_are_detected() {
        let m = r#"{"ground_size": 3, "bases": [[0], [1], [2]]}"#;
        assert_eq!(parse_artifact(m).unwrap().kind(), "matroid");
        let g = r#"{"vertex_count": 2, "edges": [[0, 1], [0, 1]]}"#;
        assert_eq!(parse_artifact(g).unwrap().kind(), "graph");
        let p = Artifact::Poset(Poset::x_shape()).to_json();
        assert_eq!(parse_artifact(&p).unwrap().kind(), "poset");
        assert!(matches!(parse_artifact("{}"), Err(Error::Format(_))));
        assert!(matches!(parse_artifact("[1"), Err(Error::Format(_))));
    }

    #[test]
    fn malformed_polytope_is_rejected() {
        let text = r#"{"ambient_dim": 3, "vertices": [[1, 0]]}"#;
        assert!(matches!(parse_artifact(text), Err(Error::Format(_))));
    }

    #[test]
    fn expressions_load_without_files() {
        assert_eq!(load_polytope("base:A:4").unwrap().vertex_count(), 4);
        assert!(load_polytope("/nonexistent/thing.json").is_err());
    }
}
