use std::collections::VecDeque;

use serde::Serialize;

use super::{Graph, VertexSet};

/// Degree, distance and leaf statistics of a graph.
///
/// `girth` and `diameter` are `None` when infinite (forests, respectively
/// disconnected graphs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralProfile {
    pub order: usize,
    pub size: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    pub leaf_count: usize,
    pub support_count: usize,
    pub weak_supports: VertexSet,
    pub strong_supports: VertexSet,
    pub is_connected: bool,
    pub is_tree: bool,
}

impl StructuralProfile {
    pub fn is_leaf_or_weak_support(&self, g: &Graph, v: usize) -> bool {
        g.degree(v) == 1 || self.weak_supports.contains(&v)
    }
}

pub fn profile(g: &Graph) -> StructuralProfile {
    let leaf = |v: usize| g.degree(v) == 1;
    let mut weak_supports = VertexSet::new();
    let mut strong_supports = VertexSet::new();
    for v in 0..g.order() {
        match g.neighbors(v).iter().filter(|&&w| leaf(w)).count() {
            0 => {}
            1 => {
                weak_supports.insert(v);
            }
            _ => {
                strong_supports.insert(v);
            }
        }
    }
    let connected = is_connected(g);
    StructuralProfile {
        order: g.order(),
        size: g.size(),
        max_degree: g.max_degree(),
        min_degree: g.min_degree(),
        girth: girth(g),
        diameter: if connected { Some(diameter(g)) } else { None },
        leaf_count: (0..g.order()).filter(|&v| leaf(v)).count(),
        support_count: weak_supports.len() + strong_supports.len(),
        weak_supports,
        strong_supports,
        is_connected: connected,
        is_tree: connected && g.size() + 1 == g.order(),
    }
}

fn bfs(g: &Graph, src: usize, dist: &mut [usize], parent: &mut [usize]) -> Option<usize> {
    dist.fill(usize::MAX);
    parent.fill(usize::MAX);
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    let mut shortest: Option<usize> = None;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            } else if parent[u] != w {
                let len = dist[u] + dist[w] + 1;
                shortest = Some(shortest.map_or(len, |s| s.min(len)));
            }
        }
    }
    shortest
}

/// Shortest cycle length; the minimum over BFS roots of the first closing
/// non-tree edge is exact.
fn girth(g: &Graph) -> Option<usize> {
    let n = g.order();
    let mut dist = vec![0; n];
    let mut parent = vec![0; n];
    (0..n).filter_map(|s| bfs(g, s, &mut dist, &mut parent)).min()
}

fn diameter(g: &Graph) -> usize {
    let n = g.order();
    let mut dist = vec![0; n];
    let mut parent = vec![0; n];
    (0..n)
        .map(|s| {
            bfs(g, s, &mut dist, &mut parent);
            dist.iter().copied().max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() == 1
}

pub fn is_tree(g: &Graph) -> bool {
    g.size() + 1 == g.order() && is_connected(g)
}

pub fn is_forest(g: &Graph) -> bool {
    g.size() + connected_components(g).len() == g.order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;
    use proptest::prelude::*;

    fn gen(spec: FamilySpec) -> Graph {
        spec.generate().unwrap()
    }

    #[test]
    fn profile_examples() {
        let c5 = profile(&gen(FamilySpec::Cycle(5)));
        assert_eq!((c5.girth, c5.diameter, c5.leaf_count), (Some(5), Some(2), 0));

        let star = profile(&gen(FamilySpec::Star(5)));
        assert_eq!((star.max_degree, star.min_degree, star.girth), (4, 1, None));
        assert_eq!((star.leaf_count, star.support_count), (4, 1));
        assert!(star.strong_supports.contains(&0));

        let g = gen(FamilySpec::corona(FamilySpec::Path(3)));
        let c = profile(&g);
        assert_eq!((c.order, c.leaf_count, c.support_count), (6, 3, 3));
        assert!((0..6).all(|v| c.is_leaf_or_weak_support(&g, v)));
        assert!(c.strong_supports.is_empty());
    }

    #[test]
    fn components_examples() {
        let p5 = gen(FamilySpec::Path(5));
        assert_eq!(connected_components(&p5).len(), 1);
        assert!(is_tree(&p5));
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(connected_components(&two_k2), vec![vec![0, 1], vec![2, 3]]);
        assert!(is_forest(&two_k2) && !is_tree(&two_k2));
        let c4 = gen(FamilySpec::Cycle(4));
        assert!(is_connected(&c4) && !is_tree(&c4));
        assert_eq!(profile(&two_k2).diameter, None);
    }

    #[test]
    fn family_closed_forms() {
        for n in 2..30 {
            let p = profile(&gen(FamilySpec::Path(n)));
            assert_eq!(p.leaf_count, 2);
            assert_eq!(p.diameter, Some(n - 1));
        }
        for n in 3..30 {
            assert_eq!(profile(&gen(FamilySpec::Cycle(n))).girth, Some(n));
        }
        for p in 1..5 {
            for q in 1..5 {
                assert_eq!(profile(&gen(FamilySpec::DoubleStar(p, q))).diameter, Some(3));
            }
        }
        for base in [FamilySpec::Path(4), FamilySpec::Star(5), FamilySpec::Cycle(5)] {
            let h = base.generate().unwrap().order();
            let p = profile(&gen(FamilySpec::corona(base)));
            assert_eq!((p.leaf_count, p.support_count), (h, h));
        }
        let k33 = profile(&gen(FamilySpec::CompleteBipartite(3, 3)));
        assert_eq!(k33.girth, Some(4));
        let petersen = profile(&crate::graph::parse_graph6(b"IheA@GUAo").unwrap());
        assert_eq!((petersen.girth, petersen.diameter), (Some(5), Some(2)));
    }

    proptest! {
        #[test]
        fn infinite_girth_iff_forest(n in 1usize..9, bits in proptest::collection::vec(any::<bool>(), 36)) {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] { edges.push((i, j)); }
                    k += 1;
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let p = profile(&g);
            prop_assert_eq!(p.girth.is_none(), is_forest(&g));
            prop_assert!(p.min_degree <= p.max_degree && p.max_degree < n);
            prop_assert!(p.girth.is_none_or(|g| g >= 3));
        }
    }
}
