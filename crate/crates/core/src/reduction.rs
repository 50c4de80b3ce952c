//! Gadget graphs encoding Exact 3-Cover instances, in a bipartite and a
//! chordal variant.
//!
//! Numbering: the `3q` element gadgets `H_i` come first, ten vertices each in
//! the order `x, y, a, b`, three leaves of `a`, three leaves of `b`. The `t`
//! set gadgets follow at offset `30q + 8j`, each a double star in the order
//! `u, v, c`, three leaves of `u`, two more leaves of `v`; `c` is a leaf of
//! `v`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::labeling::Labeling;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("chosen sets do not form an exact cover: {0}")]
    NotExactCover(String),
    #[error("{t} sets exceed the search cap of {cap}")]
    CapExceeded { t: usize, cap: usize },
}

/// Ground set `{0, .., 3q-1}` and a list of 3-element subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct X3CInstance {
    pub q: usize,
    pub sets: Vec<[usize; 3]>,
}

impl X3CInstance {
    pub fn new(q: usize, sets: Vec<[usize; 3]>) -> Result<Self, ReductionError> {
        if q == 0 {
            return Err(ReductionError::Malformed("q must be at least 1".into()));
        }
        for (j, s) in sets.iter().enumerate() {
            if s.iter().any(|&x| x >= 3 * q) {
                return Err(ReductionError::Malformed(format!("set {j} has an element outside 0..{}", 3 * q)));
            }
            if s[0] == s[1] || s[0] == s[2] || s[1] == s[2] {
                return Err(ReductionError::Malformed(format!("set {j} repeats an element")));
            }
        }
        Ok(X3CInstance { q, sets })
    }

    pub fn ground_size(&self) -> usize {
        3 * self.q
    }

    /// Whether the chosen set indices partition the ground set.
    pub fn is_exact_cover(&self, cover: &[usize]) -> bool {
        let mut hit = vec![0u8; self.ground_size()];
        for &j in cover {
            let Some(s) = self.sets.get(j) else { return false };
            for &x in s {
                hit[x] += 1;
            }
        }
        hit.iter().all(|&h| h == 1)
    }
}

impl FromStr for X3CInstance {
    type Err = ReductionError;

    /// `"q t"` on the first line, then `t` lines of three integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: String| ReductionError::Malformed(m);
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let nums = |line: &str| -> Result<Vec<usize>, ReductionError> {
            line.split_whitespace()
                .map(|w| w.parse().map_err(|_| bad(format!("not an integer: {w:?}"))))
                .collect()
        };
        let header = nums(lines.next().ok_or_else(|| bad("empty input".into()))?)?;
        let [q, t] = header[..] else { return Err(bad("header must be \"q t\"".into())) };
        let mut sets = Vec::with_capacity(t);
        for line in lines.by_ref().take(t) {
            match nums(line)?[..] {
                [a, b, c] => sets.push([a, b, c]),
                _ => return Err(bad(format!("expected three integers, got {line:?}"))),
            }
        }
        if sets.len() != t {
            return Err(bad(format!("expected {t} sets, found {}", sets.len())));
        }
        if lines.next().is_some() {
            return Err(bad("trailing lines after the last set".into()));
        }
        X3CInstance::new(q, sets)
    }
}

impl fmt::Display for X3CInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.q, self.sets.len())?;
        for [a, b, c] in &self.sets {
            writeln!(f, "{a} {b} {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Bipartite,
    Chordal,
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bipartite" => Ok(Variant::Bipartite),
            "chordal" => Ok(Variant::Chordal),
            _ => Err(format!("unknown variant {s:?} (expected bipartite or chordal)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ElementGadget {
    pub x: usize,
    pub y: usize,
    pub a: usize,
    pub b: usize,
    pub a_leaves: [usize; 3],
    pub b_leaves: [usize; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SetGadget {
    pub u: usize,
    pub v: usize,
    pub c: usize,
    pub u_leaves: [usize; 3],
    pub v_leaves: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexMap {
    pub elements: Vec<ElementGadget>,
    pub sets: Vec<SetGadget>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionOutput {
    #[serde(skip)]
    pub graph: Graph,
    pub k: u32,
    pub vertex_map: VertexMap,
    pub variant: Variant,
}

/// Builds the gadget graph and threshold `k = 4t + 16q`.
pub fn reduce(inst: &X3CInstance, variant: Variant) -> ReductionOutput {
    let (q, t) = (inst.q, inst.sets.len());
    let elements: Vec<ElementGadget> = (0..3 * q)
        .map(|i| {
            let o = 10 * i;
            ElementGadget {
                x: o,
                y: o + 1,
                a: o + 2,
                b: o + 3,
                a_leaves: [o + 4, o + 5, o + 6],
                b_leaves: [o + 7, o + 8, o + 9],
            }
        })
        .collect();
    let sets: Vec<SetGadget> = (0..t)
        .map(|j| {
            let o = 30 * q + 8 * j;
            SetGadget { u: o, v: o + 1, c: o + 2, u_leaves: [o + 3, o + 4, o + 5], v_leaves: [o + 6, o + 7] }
        })
        .collect();
    let mut edges = Vec::new();
    for h in &elements {
        edges.extend([(h.x, h.y), (h.y, h.a), (h.y, h.b)]);
        edges.extend(h.a_leaves.iter().map(|&l| (h.a, l)));
        edges.extend(h.b_leaves.iter().map(|&l| (h.b, l)));
    }
    for (s, set) in sets.iter().zip(&inst.sets) {
        edges.extend([(s.u, s.v), (s.v, s.c)]);
        edges.extend(s.u_leaves.iter().map(|&l| (s.u, l)));
        edges.extend(s.v_leaves.iter().map(|&l| (s.v, l)));
        edges.extend(set.iter().map(|&i| (s.c, elements[i].x)));
    }
    if variant == Variant::Chordal {
        for j in 0..t {
            for l in j + 1..t {
                edges.push((sets[j].c, sets[l].c));
            }
        }
    }
    let graph = Graph::new(30 * q + 8 * t, edges).expect("gadget edges are distinct");
    ReductionOutput { graph, k: (4 * t + 16 * q) as u32, vertex_map: VertexMap { elements, sets }, variant }
}

/// Weight-`k` TR2DF of the gadget graph built from an exact cover: 2 on every
/// `a, b, u, v`, 1 on every `y` and on `c_j` for chosen `j`, 0 elsewhere.
pub fn cover_to_labeling(
    inst: &X3CInstance,
    cover: &[usize],
    red: &ReductionOutput,
) -> Result<Labeling, ReductionError> {
    if !inst.is_exact_cover(cover) {
        return Err(ReductionError::NotExactCover(format!("{cover:?}")));
    }
    let mut f = Labeling::zeros(red.graph.order());
    for h in &red.vertex_map.elements {
        f.set(h.a, 2);
        f.set(h.b, 2);
        f.set(h.y, 1);
    }
    for s in &red.vertex_map.sets {
        f.set(s.u, 2);
        f.set(s.v, 2);
    }
    for &j in cover {
        f.set(red.vertex_map.sets[j].c, 1);
    }
    Ok(f)
}

pub const DEFAULT_SET_CAP: usize = 24;

/// First exact cover in lexicographic order of index tuples, if any.
pub fn x3c_brute_force(inst: &X3CInstance, cap: usize) -> Result<Option<Vec<usize>>, ReductionError> {
    let t = inst.sets.len();
    if t > cap {
        return Err(ReductionError::CapExceeded { t, cap });
    }
    let q = inst.q;
    if q > t {
        return Ok(None);
    }
    let masks: Vec<u64> = inst.sets.iter().map(|s| s.iter().fold(0u64, |m, &x| m | 1 << x)).collect();
    let full = if 3 * q == 64 { u64::MAX } else { (1u64 << (3 * q)) - 1 };
    let mut idx: Vec<usize> = (0..q).collect();
    loop {
        let mut seen = 0u64;
        if idx.iter().all(|&j| {
            let ok = seen & masks[j] == 0;
            seen |= masks[j];
            ok
        }) && seen == full
        {
            return Ok(Some(idx));
        }
        let Some(i) = (0..q).rev().find(|&i| idx[i] < t - q + i) else { return Ok(None) };
        idx[i] += 1;
        for l in i + 1..q {
            idx[l] = idx[l - 1] + 1;
        }
    }
}

/// A proper 2-colouring, or `None` if the graph has an odd cycle.
pub fn two_coloring(g: &Graph) -> Option<Vec<u8>> {
    let n = g.order();
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

pub fn is_bipartite(g: &Graph) -> bool {
    two_coloring(g).is_some()
}

/// Maximum cardinality search followed by a perfect elimination ordering
/// test.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.order();
    let mut weight = vec![0usize; n];
    let mut visited_at = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| visited_at[v] == usize::MAX)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        visited_at[v] = step;
        order.push(v);
        for &w in g.neighbors(v) {
            if visited_at[w] == usize::MAX {
                weight[w] += 1;
            }
        }
    }
    order.iter().all(|&v| {
        let earlier: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| visited_at[w] < visited_at[v]).collect();
        match earlier.iter().max_by_key(|&&w| visited_at[w]) {
            None => true,
            Some(&u) => earlier.iter().all(|&w| w == u || g.has_edge(w, u)),
        }
    })
}
