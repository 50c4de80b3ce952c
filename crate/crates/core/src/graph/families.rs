use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::{Graph, GraphError};

/// Named graph families with a fixed vertex numbering.
///
/// * `Path(n)`: `0-1-..-(n-1)`; `Cycle(n)` closes it with `(n-1)-0`.
/// * `Star(n)`: `n` vertices, centre `0`.
/// * `DoubleStar(p, q)`: supports `0`, `1`, then the `p` leaves of `0`, then the `q` leaves of `1`.
/// * `CompleteBipartite(p, q)`: parts `0..p` and `p..p+q`.
/// * `Corona(base)`: base vertices `0..h`, the pendant of `i` is `h + i`.
/// * `Join(a, b)`: vertices of `a` first, then `b`.
/// * `PendantPathTree(k)`: path `0..k` plus vertex `k` hanging from `k - 2`.
/// * `TwoStarBridge(a, b)`: centre `0` with leaves `1..=a`, centre `a+1` with
///   leaves `a+2..=a+b+1`, and the bridge `1-(a+2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Star(usize),
    DoubleStar(usize, usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Empty(usize),
    Corona(Box<FamilySpec>),
    Join(Box<FamilySpec>, Box<FamilySpec>),
    PendantPathTree(usize),
    TwoStarBridge(usize, usize),
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidFamily(msg.into())
}

impl FamilySpec {
    pub fn corona(base: FamilySpec) -> Self {
        FamilySpec::Corona(Box::new(base))
    }

    pub fn join(a: FamilySpec, b: FamilySpec) -> Self {
        FamilySpec::Join(Box::new(a), Box::new(b))
    }

    /// Builds the graph with the numbering documented on the type.
    pub fn generate(&self) -> Result<Graph, GraphError> {
        use FamilySpec::*;
        match *self {
            Path(n) => {
                if n < 1 {
                    return Err(invalid("path needs n >= 1"));
                }
                Graph::new(n, (1..n).map(|i| (i - 1, i)))
            }
            Cycle(n) => {
                if n < 3 {
                    return Err(invalid("cycle needs n >= 3"));
                }
                Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Star(n) => {
                if n < 2 {
                    return Err(invalid("star needs n >= 2"));
                }
                Graph::new(n, (1..n).map(|i| (0, i)))
            }
            DoubleStar(p, q) => {
                if p < 1 || q < 1 {
                    return Err(invalid("double star needs p, q >= 1"));
                }
                let edges = std::iter::once((0, 1))
                    .chain((0..p).map(|i| (0, 2 + i)))
                    .chain((0..q).map(|i| (1, 2 + p + i)));
                Graph::new(p + q + 2, edges)
            }
            Complete(n) => {
                if n < 1 {
                    return Err(invalid("complete graph needs n >= 1"));
                }
                Graph::new(n, (0..n).flat_map(|j| (0..j).map(move |i| (i, j))))
            }
            CompleteBipartite(p, q) => {
                if p < 1 || q < 1 {
                    return Err(invalid("complete bipartite graph needs p, q >= 1"));
                }
                Graph::new(p + q, (0..p).flat_map(|i| (p..p + q).map(move |j| (i, j))))
            }
            Empty(n) => {
                if n < 1 {
                    return Err(invalid("empty graph needs n >= 1"));
                }
                Graph::empty(n)
            }
            Corona(ref base) => Ok(corona(&base.generate()?)),
            Join(ref a, ref b) => Ok(join(&a.generate()?, &b.generate()?)),
            PendantPathTree(k) => {
                if k < 4 {
                    return Err(invalid("pendant path tree needs k >= 4"));
                }
                let edges = (1..k).map(|i| (i - 1, i)).chain(std::iter::once((k - 2, k)));
                Graph::new(k + 1, edges)
            }
            TwoStarBridge(a, b) => {
                if a < 1 || b < 1 {
                    return Err(invalid("two-star bridge needs a, b >= 1"));
                }
                let c2 = a + 1;
                let edges = (1..=a)
                    .map(|i| (0, i))
                    .chain((1..=b).map(|i| (c2, c2 + i)))
                    .chain(std::iter::once((1, c2 + 1)));
                Graph::new(a + b + 2, edges)
            }
        }
    }
}

/// Corona of an arbitrary graph: vertex `i` gets the pendant `n + i`.
pub fn corona(base: &Graph) -> Graph {
    let h = base.order();
    let edges = base.edges().iter().copied().chain((0..h).map(|i| (i, h + i)));
    Graph::new(2 * h, edges).expect("corona of a valid graph")
}

/// Join: every vertex of `a` adjacent to every vertex of `b`.
pub fn join(a: &Graph, b: &Graph) -> Graph {
    let off = a.order();
    let edges = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(u, v)| (u + off, v + off)))
        .chain((0..off).flat_map(|i| (0..b.order()).map(move |j| (i, off + j))));
    Graph::new(off + b.order(), edges).expect("join of valid graphs")
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Path(n) => write!(f, "path:{n}"),
            Cycle(n) => write!(f, "cycle:{n}"),
            Star(n) => write!(f, "star:{n}"),
            DoubleStar(p, q) => write!(f, "double-star:{p},{q}"),
            Complete(n) => write!(f, "complete:{n}"),
            CompleteBipartite(p, q) => write!(f, "complete-bipartite:{p},{q}"),
            Empty(n) => write!(f, "empty:{n}"),
            Corona(b) => write!(f, "corona({b})"),
            Join(a, b) => write!(f, "join({a};{b})"),
            PendantPathTree(k) => write!(f, "pendant-path:{k}"),
            TwoStarBridge(a, b) => write!(f, "two-star-bridge:{a},{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse family spec {input:?}: {reason}")]
pub struct FamilySpecParseError {
    input: String,
    reason: String,
}

impl FromStr for FamilySpec {
    type Err = FamilySpecParseError;

    /// Accepts the `Display` syntax, e.g. `path:7`, `double-star:3,3`,
    /// `corona(path:3)`, `join(complete:2;empty:4)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| FamilySpecParseError { input: s.to_string(), reason: reason.into() };
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("corona(").and_then(|r| r.strip_suffix(')')) {
            return Ok(FamilySpec::corona(inner.parse()?));
        }
        if let Some(inner) = s.strip_prefix("join(").and_then(|r| r.strip_suffix(')')) {
            let split = top_level_semicolon(inner).ok_or_else(|| err("join needs two ';'-separated specs"))?;
            let (a, b) = (&inner[..split], &inner[split + 1..]);
            return Ok(FamilySpec::join(a.parse()?, b.parse()?));
        }
        let (name, args) = s.split_once(':').ok_or_else(|| err("expected name:args"))?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| err("arguments must be non-negative integers"))?;
        let one = || match nums[..] {
            [a] => Ok(a),
            _ => Err(err("expected one argument")),
        };
        let two = || match nums[..] {
            [a, b] => Ok((a, b)),
            _ => Err(err("expected two arguments")),
        };
        Ok(match name {
            "path" => FamilySpec::Path(one()?),
            "cycle" => FamilySpec::Cycle(one()?),
            "star" => FamilySpec::Star(one()?),
            "complete" => FamilySpec::Complete(one()?),
            "empty" => FamilySpec::Empty(one()?),
            "pendant-path" => FamilySpec::PendantPathTree(one()?),
            "double-star" => two().map(|(p, q)| FamilySpec::DoubleStar(p, q))?,
            "complete-bipartite" => two().map(|(p, q)| FamilySpec::CompleteBipartite(p, q))?,
            "two-star-bridge" => two().map(|(a, b)| FamilySpec::TwoStarBridge(a, b))?,
            _ => return Err(err("unknown family")),
        })
    }
}

fn top_level_semicolon(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::profile;

    #[test]
    fn family_examples() {
        let c3 = FamilySpec::Cycle(3).generate().unwrap();
        assert_eq!((c3.max_degree(), c3.min_degree()), (2, 2));

        let s33 = FamilySpec::DoubleStar(3, 3).generate().unwrap();
        assert_eq!(s33.order(), 8);
        assert!(s33.has_edge(0, 1));
        assert_eq!((s33.degree(0), s33.degree(1)), (4, 4));

        let p4 = FamilySpec::Path(4).generate().unwrap();
        let corona_p2 = FamilySpec::corona(FamilySpec::Path(2)).generate().unwrap();
        assert_eq!(corona_p2.size(), 3);
        assert_eq!(profile(&corona_p2).max_degree, 2);
        // P2 corona is P4 up to relabelling: 2-0-1-3.
        assert!(corona_p2.has_edge(2, 0) && corona_p2.has_edge(0, 1) && corona_p2.has_edge(1, 3));
        assert_eq!(p4.size(), 3);
    }

    #[test]
    fn special_trees() {
        let t = FamilySpec::TwoStarBridge(4, 4).generate().unwrap();
        assert_eq!(t.order(), 10);
        assert_eq!(t.size(), 9);
        assert!(t.has_edge(1, 6));
        let pp = FamilySpec::PendantPathTree(4).generate().unwrap();
        assert_eq!(pp.order(), 5);
        assert!(pp.has_edge(2, 4));
        assert_eq!(pp.degree(2), 3);
    }

    #[test]
    fn invalid_parameters() {
        for spec in [
            FamilySpec::Path(0),
            FamilySpec::Cycle(2),
            FamilySpec::Star(1),
            FamilySpec::DoubleStar(0, 2),
            FamilySpec::PendantPathTree(3),
            FamilySpec::CompleteBipartite(2, 0),
        ] {
            assert!(matches!(spec.generate(), Err(GraphError::InvalidFamily(_))), "{spec}");
        }
    }

    #[test]
    fn join_of_k2_and_empty() {
        let g = FamilySpec::join(FamilySpec::Complete(2), FamilySpec::Empty(3)).generate().unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.size(), 1 + 6);
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.degree(4), 2);
    }

    #[test]
    fn display_parse_round_trip() {
        let specs = [
            FamilySpec::Path(7),
            FamilySpec::DoubleStar(3, 3),
            FamilySpec::corona(FamilySpec::Star(4)),
            FamilySpec::join(FamilySpec::Complete(2), FamilySpec::corona(FamilySpec::Path(2))),
            FamilySpec::TwoStarBridge(4, 4),
            FamilySpec::PendantPathTree(9),
        ];
        for s in specs {
            assert_eq!(s.to_string().parse::<FamilySpec>().unwrap(), s);
        }
        assert!("tree:4".parse::<FamilySpec>().is_err());
        assert!("path:1,2".parse::<FamilySpec>().is_err());
    }
}
