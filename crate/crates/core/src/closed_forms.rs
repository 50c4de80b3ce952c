//! Exact values for named families and recognizers for the graphs with
//! `γ_tR2 ∈ {2, 3, n}`.

use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{is_connected, is_tree, FamilySpec, Graph, GraphError};
use crate::labeling::Labeling;
use crate::solvers::{gamma_tr2_exact, Method, SolveResult, SolverConfig, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("no closed form is known for {0}")]
    NoKnownFormula(String),
    #[error(transparent)]
    Invalid(#[from] GraphError),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has fewer than two vertices")]
    TooSmall,
    #[error("graph is not a tree")]
    NotTree,
}

pub fn path_value(n: usize) -> u32 {
    (2 * n as u32 + 2).div_ceil(3)
}

pub fn cycle_value(n: usize) -> u32 {
    (2 * n as u32).div_ceil(3)
}

/// `γ_tR2` of a family member with a known formula.
pub fn formula_value(spec: &FamilySpec) -> Result<u32, ClosedFormError> {
    let g = spec.generate()?;
    let unknown = || ClosedFormError::NoKnownFormula(spec.to_string());
    match spec {
        FamilySpec::Path(n) if *n >= 2 => Ok(path_value(*n)),
        FamilySpec::Cycle(n) => Ok(cycle_value(*n)),
        FamilySpec::Star(2) | FamilySpec::Complete(2..) => Ok(2),
        FamilySpec::Star(_) => Ok(3),
        FamilySpec::DoubleStar(..) => Ok(4),
        FamilySpec::Corona(_) => Ok(g.order() as u32),
        FamilySpec::Join(a, b) => {
            let is_k2 = |s: &FamilySpec| s.generate().is_ok_and(|h| h.order() == 2 && h.size() == 1);
            if is_k2(a) || is_k2(b) {
                Ok(2)
            } else {
                Err(unknown())
            }
        }
        _ => Err(unknown()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassKind {
    ValueTwo,
    ValueThree,
    ValueN,
    Other,
}

/// Structure certifying a [`ClassKind`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    /// Two adjacent vertices of degree `n - 1`.
    UniversalPair { u: usize, v: usize },
    /// The only vertex of degree `n - 1`.
    UniversalVertex { u: usize },
    /// Three vertices inducing `P3` or `C3` that every other vertex sees at
    /// least twice.
    Triple { vertices: [usize; 3] },
    /// Every vertex is a leaf or a weak support; `(leaf, support)` pairs.
    LeafSupport { pairs: Vec<(usize, usize)> },
    /// `K2` or `K_{1,2}`.
    SmallGraph { name: &'static str },
    /// Order at most four, decided by exhaustive search.
    Exact { value: u32, witness: Labeling },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: ClassKind,
    pub evidence: Evidence,
    /// Set when the kind is `ValueTwo` or `ValueThree` but `γ_tR2 = n` holds too.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub also_value_n: bool,
}

fn universal_vertices(g: &Graph) -> Vec<usize> {
    (0..g.order()).filter(|&v| g.degree(v) + 1 == g.order()).collect()
}

fn find_triple(g: &Graph) -> Option<[usize; 3]> {
    let n = g.order();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let edges = [g.has_edge(a, b), g.has_edge(a, c), g.has_edge(b, c)];
                if edges.iter().filter(|&&e| e).count() < 2 {
                    continue;
                }
                let covered = (0..n)
                    .filter(|&w| w != a && w != b && w != c)
                    .all(|w| [a, b, c].iter().filter(|&&s| g.has_edge(w, s)).count() >= 2);
                if covered {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// `(leaf, support)` pairs if every vertex is a leaf or a weak support.
fn leaf_support_pairs(g: &Graph) -> Option<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for v in 0..g.order() {
        let leaves: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| g.degree(w) == 1).collect();
        if g.degree(v) == 1 {
            if g.order() == 2 && v == 1 {
                continue;
            }
            pairs.push((v, g.neighbors(v)[0]));
        } else if leaves.len() != 1 {
            return None;
        }
    }
    Some(pairs)
}

fn value_n_evidence(g: &Graph) -> Option<Evidence> {
    let n = g.order();
    if n == 3 && g.size() == 2 {
        return Some(Evidence::SmallGraph { name: "K_{1,2}" });
    }
    if n == 2 {
        return Some(Evidence::SmallGraph { name: "K2" });
    }
    leaf_support_pairs(g).map(|pairs| Evidence::LeafSupport { pairs })
}

/// Decides whether `γ_tR2(G)` is 2, 3 or `n` from structure alone, with
/// exhaustive search standing in for the value-3 test when `n <= 4`.
pub fn classify(g: &Graph) -> Result<Classification, ClosedFormError> {
    let n = g.order();
    if n < 2 {
        return Err(ClosedFormError::TooSmall);
    }
    if !is_connected(g) {
        return Err(ClosedFormError::Disconnected);
    }
    let value_n = value_n_evidence(g);
    let universal = universal_vertices(g);
    let done = |kind, evidence| Classification {
        kind,
        evidence,
        also_value_n: !matches!(kind, ClassKind::ValueN | ClassKind::Other) && value_n.is_some(),
    };
    if universal.len() >= 2 {
        return Ok(done(ClassKind::ValueTwo, Evidence::UniversalPair { u: universal[0], v: universal[1] }));
    }
    if n <= 4 {
        let r = gamma_tr2_exact(g, &SolverConfig::forced(Method::BruteForce)).expect("connected, n >= 2");
        if r.value == 3 {
            let witness = r.labeling().clone();
            return Ok(done(ClassKind::ValueThree, Evidence::Exact { value: 3, witness }));
        }
    } else if let [u] = universal[..] {
        return Ok(done(ClassKind::ValueThree, Evidence::UniversalVertex { u }));
    } else if let Some(vertices) = find_triple(g) {
        return Ok(done(ClassKind::ValueThree, Evidence::Triple { vertices }));
    }
    Ok(match value_n {
        Some(evidence) => Classification { kind: ClassKind::ValueN, evidence, also_value_n: false },
        None => Classification { kind: ClassKind::Other, evidence: Evidence::None, also_value_n: false },
    })
}

/// The base tree `B` with `T = corona(B)`, vertices in increasing order of
/// their index in `T`; `None` if `T` is not a corona.
pub fn is_corona_of_tree(t: &Graph) -> Result<Option<Graph>, ClosedFormError> {
    if !is_tree(t) {
        return Err(ClosedFormError::NotTree);
    }
    if t.order() == 2 {
        return Ok(Some(Graph::empty(1)?));
    }
    if leaf_support_pairs(t).is_none() {
        return Ok(None);
    }
    let base: Vec<usize> = (0..t.order()).filter(|&v| t.degree(v) > 1).collect();
    Ok(Some(t.induced(&base)))
}

/// Tree of the pendant-path family and the value it stays strictly below.
pub fn pendant_path_tree(k: usize) -> Result<(Graph, Ratio<i64>), ClosedFormError> {
    let g = FamilySpec::PendantPathTree(k).generate()?;
    Ok((g, Ratio::new(2 * (k as i64 + 3), 3)))
}

fn path_order(g: &Graph, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().filter(|&&w| w != prev).min() {
        if next == start {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

fn pattern_labeling(n: usize, order: &[usize], pattern: &[u8]) -> Labeling {
    let mut f = Labeling::zeros(n);
    for (&v, &x) in order.iter().zip(pattern) {
        f.set(v, x);
    }
    f
}

fn repeat_110(blocks: usize, tail: &[u8]) -> Vec<u8> {
    let mut p: Vec<u8> = std::iter::repeat_n([1, 1, 0], blocks).flatten().collect();
    p.extend_from_slice(tail);
    p
}

/// Optimal labeling of a connected graph whose value follows from its
/// structure alone: two universal vertices, one universal vertex, paths,
/// cycles, double stars, and graphs in which every vertex is a leaf or a weak
/// support.
pub fn closed_form_solution(g: &Graph) -> Option<SolveResult> {
    let start = Instant::now();
    let n = g.order();
    if n < 2 || !is_connected(g) {
        return None;
    }
    let universal = universal_vertices(g);
    let degrees_at_most_two = g.max_degree() <= 2;
    let f = if universal.len() >= 2 {
        let mut f = Labeling::zeros(n);
        f.set(universal[0], 1);
        f.set(universal[1], 1);
        f
    } else if let [u] = universal[..] {
        let mut f = Labeling::zeros(n);
        f.set(u, 2);
        f.set(g.neighbors(u)[0], 1);
        f
    } else if degrees_at_most_two && g.size() + 1 == n {
        let end = (0..n).find(|&v| g.degree(v) == 1)?;
        let k = n / 3;
        let pattern = match n % 3 {
            2 => repeat_110(k, &[1, 1]),
            0 => repeat_110(k - 1, &[1, 1, 1]),
            _ => repeat_110(k - 1, &[1, 1, 1, 1]),
        };
        pattern_labeling(n, &path_order(g, end), &pattern)
    } else if degrees_at_most_two && g.size() == n {
        let pattern = match n % 3 {
            0 => repeat_110(n / 3, &[]),
            1 => repeat_110(n / 3, &[1]),
            _ => repeat_110(n / 3, &[1, 1]),
        };
        pattern_labeling(n, &path_order(g, 0), &pattern)
    } else if let Some(f) = double_star(g) {
        f
    } else if leaf_support_pairs(g).is_some() {
        Labeling::constant(n, 1)
    } else {
        return None;
    };
    debug_assert!(crate::labeling::is_tr2df(g, &f), "closed form witness must be valid");
    Some(SolveResult {
        value: f.weight(),
        witness: Witness::Labeling(f),
        method: Method::ClosedForm,
        nodes_explored: 0,
        elapsed: start.elapsed(),
    })
}

fn double_star(g: &Graph) -> Option<Labeling> {
    if g.size() + 1 != g.order() {
        return None;
    }
    let inner: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) > 1).collect();
    match inner[..] {
        [a, b] if g.has_edge(a, b) => {
            let mut f = Labeling::zeros(g.order());
            f.set(a, 2);
            f.set(b, 2);
            Some(f)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph6;
    use crate::labeling::check_tr2df;

    fn gen(spec: &FamilySpec) -> Graph {
        spec.generate().unwrap()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(formula_value(&FamilySpec::Path(7)).unwrap(), 6);
        assert_eq!(formula_value(&FamilySpec::Cycle(9)).unwrap(), 6);
        let corona = FamilySpec::corona(FamilySpec::DoubleStar(2, 2));
        assert_eq!(formula_value(&corona).unwrap(), 12);
        assert_eq!(formula_value(&FamilySpec::join(FamilySpec::Complete(2), FamilySpec::Cycle(4))).unwrap(), 2);
        assert_eq!(formula_value(&FamilySpec::Star(6)).unwrap(), 3);
        assert!(matches!(formula_value(&FamilySpec::Path(1)), Err(ClosedFormError::NoKnownFormula(_))));
        assert!(matches!(formula_value(&FamilySpec::Path(0)), Err(ClosedFormError::Invalid(_))));
        assert!(matches!(
            formula_value(&FamilySpec::CompleteBipartite(3, 3)),
            Err(ClosedFormError::NoKnownFormula(_))
        ));
    }

    #[test]
    fn formulas_agree_with_search() {
        let mut specs = vec![
            FamilySpec::Star(2),
            FamilySpec::Star(5),
            FamilySpec::DoubleStar(1, 3),
            FamilySpec::Complete(5),
            FamilySpec::corona(FamilySpec::Cycle(4)),
            FamilySpec::join(FamilySpec::Path(3), FamilySpec::Path(2)),
        ];
        specs.extend((2..11).map(FamilySpec::Path));
        specs.extend((3..11).map(FamilySpec::Cycle));
        for spec in specs {
            let g = gen(&spec);
            let exact = gamma_tr2_exact(&g, &SolverConfig::forced(Method::BranchBound)).unwrap().value;
            assert_eq!(formula_value(&spec).unwrap(), exact, "{spec}");
            let closed = closed_form_solution(&g).unwrap();
            assert_eq!(closed.value, exact, "{spec}");
            assert!(check_tr2df(&g, closed.labeling()).is_ok(), "{spec}");
        }
    }

    #[test]
    fn classify_examples() {
        let k2c4 = gen(&FamilySpec::join(FamilySpec::Complete(2), FamilySpec::Cycle(4)));
        assert_eq!(classify(&k2c4).unwrap().kind, ClassKind::ValueTwo);
        let star = classify(&gen(&FamilySpec::Star(6))).unwrap();
        assert_eq!(star.kind, ClassKind::ValueThree);
        assert_eq!(star.evidence, Evidence::UniversalVertex { u: 0 });
        let corona = classify(&gen(&FamilySpec::corona(FamilySpec::Path(3)))).unwrap();
        assert_eq!(corona.kind, ClassKind::ValueN);
        assert!(matches!(corona.evidence, Evidence::LeafSupport { ref pairs } if pairs.len() == 3));
        let petersen = classify(&parse_graph6(b"IheA@GUAo").unwrap()).unwrap();
        assert_eq!((petersen.kind, petersen.evidence), (ClassKind::Other, Evidence::None));
    }

    #[test]
    fn classify_small_orders() {
        let k2 = classify(&gen(&FamilySpec::Path(2))).unwrap();
        assert_eq!(k2.kind, ClassKind::ValueTwo);
        assert!(k2.also_value_n);
        let p3 = classify(&gen(&FamilySpec::Path(3))).unwrap();
        assert_eq!(p3.kind, ClassKind::ValueThree);
        assert!(p3.also_value_n);
        let c3 = classify(&gen(&FamilySpec::Cycle(3))).unwrap();
        assert_eq!(c3.kind, ClassKind::ValueTwo);
        assert!(!c3.also_value_n);
        assert_eq!(classify(&gen(&FamilySpec::Path(4))).unwrap().kind, ClassKind::ValueN);
        assert_eq!(classify(&gen(&FamilySpec::Cycle(4))).unwrap().kind, ClassKind::ValueThree);
        assert_eq!(classify(&Graph::empty(1).unwrap()), Err(ClosedFormError::TooSmall));
        assert_eq!(classify(&Graph::new(4, [(0, 1), (2, 3)]).unwrap()), Err(ClosedFormError::Disconnected));
    }

    #[test]
    fn triple_evidence() {
        // P3 on 0, 1, 2; each of 3, 4, 5 sees two of them.
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)]).unwrap();
        let c = classify(&g).unwrap();
        assert_eq!(c.kind, ClassKind::ValueThree);
        let Evidence::Triple { vertices } = c.evidence else { panic!("expected a triple") };
        let f = Labeling::indicator(6, &vertices.into_iter().collect());
        assert!(check_tr2df(&g, &f).is_ok());
    }

    #[test]
    fn corona_recognition() {
        let p4 = gen(&FamilySpec::Path(4));
        let base = is_corona_of_tree(&p4).unwrap().unwrap();
        assert_eq!((base.order(), base.size()), (2, 1));
        assert_eq!(is_corona_of_tree(&gen(&FamilySpec::Path(5))).unwrap(), None);
        let cs = gen(&FamilySpec::corona(FamilySpec::Star(4)));
        let base = is_corona_of_tree(&cs).unwrap().unwrap();
        assert_eq!((base.order(), base.max_degree()), (4, 3));
        assert_eq!(is_corona_of_tree(&gen(&FamilySpec::Cycle(4))), Err(ClosedFormError::NotTree));
        assert_eq!(is_corona_of_tree(&gen(&FamilySpec::Path(2))).unwrap().unwrap().order(), 1);
    }

    #[test]
    fn pendant_path_trees_stay_below_bound() {
        for (k, want) in [(4, 4), (6, 5), (9, 7)] {
            let (g, bound) = pendant_path_tree(k).unwrap();
            assert_eq!(g.order(), k + 1);
            let v = crate::tree_dp::tree_gamma_tr2(&g).unwrap().value;
            assert_eq!(v, want);
            assert!(Ratio::from_integer(v as i64) < bound);
        }
        assert!(pendant_path_tree(3).is_err());
    }
}
