use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what} enumeration supports {min} <= n <= {max}, got {n}")]
pub struct EnumerateError {
    pub what: &'static str,
    pub n: usize,
    pub min: usize,
    pub max: usize,
}

pub const MAX_TREE_ORDER: usize = 10;
pub const MAX_GRAPH_ORDER: usize = 7;

/// The labeled tree on `seq.len() + 2` vertices with Prüfer sequence `seq`.
pub fn tree_from_prufer(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if x < ptr && degree[x] == 1 {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::new(n, edges).expect("Prüfer decoding yields a tree")
}

/// All `n^(n-2)` labeled trees on `n` vertices, in lexicographic order of
/// their Prüfer sequences.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = Graph>, EnumerateError> {
    if !(2..=MAX_TREE_ORDER).contains(&n) {
        return Err(EnumerateError { what: "tree", n, min: 2, max: MAX_TREE_ORDER });
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut done = false;
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let g = tree_from_prufer(&seq);
        done = true;
        for i in (0..len).rev() {
            if seq[i] + 1 < n {
                seq[i] += 1;
                seq[i + 1..].fill(0);
                done = false;
                break;
            }
        }
        Some(g)
    }))
}

/// Vertex pairs in graph6 bit order: `(i, j)` for `j = 1..n`, `i < j`.
fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Every connected graph on `n` labeled vertices, ordered by edge bitmask in
/// graph6 bit order.
pub fn enumerate_connected_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, EnumerateError> {
    if !(2..=MAX_GRAPH_ORDER).contains(&n) {
        return Err(EnumerateError { what: "connected graph", n, min: 2, max: MAX_GRAPH_ORDER });
    }
    let pairs = pair_order(n);
    let total = 1u64 << pairs.len();
    Ok((0..total).filter_map(move |mask| {
        let mut adj = [0u8; MAX_GRAPH_ORDER];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        let mut seen = 1u8;
        let mut frontier = 1u8;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        if seen.count_ones() as usize != n {
            return None;
        }
        let edges = pairs.iter().enumerate().filter(|&(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p);
        Some(Graph::new(n, edges).expect("distinct pairs"))
    }))
}

/// Isomorphism-invariant code of a tree: the AHU encoding rooted at its
/// centre, taking the smaller encoding when there are two centres.
pub fn canonical_tree_code(t: &Graph) -> Vec<u8> {
    let n = t.order();
    if n == 1 {
        return vec![b'(', b')'];
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| ahu(t, c)).min().expect("a tree has a centre")
}

fn ahu(t: &Graph, root: usize) -> Vec<u8> {
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut codes: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
    let mut out = Vec::new();
    for &v in order.iter().rev() {
        let mut kids = std::mem::take(&mut codes[v]);
        kids.sort_unstable();
        let mut code = vec![b'('];
        for k in kids {
            code.extend(k);
        }
        code.push(b')');
        if v == root {
            out = code;
        } else {
            codes[parent[v]].push(code);
        }
    }
    out
}
