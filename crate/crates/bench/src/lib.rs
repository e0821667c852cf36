//! Shared inputs for the benchmarks.

use polyrank::{LatticePolytope, PolytopeExpr};

/// Polytopes of increasing size used across the benchmarks.
pub const WORKLOAD: &[&str] = &[
    "base:D:2,2,2",
    "indep:D:1,1,1",
    "order:P:4;0<2,0<3,1<2,1<3",
    "base:B:1,2;p=1",
    "base:C:1,1;p=1,q=1",
    "base:K:4",
    "indep:Unif:3,6",
];

pub fn build(expr: &str) -> LatticePolytope {
    expr.parse::<PolytopeExpr>()
        .and_then(|e| e.build())
        .unwrap_or_else(|e| panic!("{expr}: {e}"))
}

#[cfg(test)]
mod tests {
    #[test]
    fn workload_builds() {
        for e in super::WORKLOAD {
            assert!(super::build(e).dim() > 0);
        }
    }
}
