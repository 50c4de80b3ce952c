//! Linear-time `γ_tR2` on forests.
//!
//! Each vertex carries one of seven states pairing its label with how much of
//! its own condition its already-processed children satisfy. Children are
//! folded into the parent one at a time through a [`TransitionTable`], which
//! is plain data so alternative tables can be evaluated.

use std::fmt;
use std::time::Instant;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{connected_components, Graph};
use crate::labeling::{check_tr2df, Labeling};
use crate::solvers::{Method, SolveResult, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DpState {
    /// Label 0, no coverage from processed children.
    ZeroBare,
    /// Label 0, exactly one neighbour labeled 1 so far.
    ZeroOne,
    /// Label 0, already covered.
    ZeroSat,
    /// Label 1, no positive neighbour yet.
    OnePending,
    OneOk,
    /// Label 2, no positive neighbour yet.
    TwoPending,
    TwoOk,
}

const STATES: usize = 7;
const INF: u32 = u32::MAX;

impl DpState {
    pub const ALL: [DpState; STATES] = [
        DpState::ZeroBare,
        DpState::ZeroOne,
        DpState::ZeroSat,
        DpState::OnePending,
        DpState::OneOk,
        DpState::TwoPending,
        DpState::TwoOk,
    ];

    /// States a root may end in.
    pub const ACCEPTING: [DpState; 3] = [DpState::ZeroSat, DpState::OneOk, DpState::TwoOk];

    /// Initial state of a vertex before any child is folded in.
    pub const INITIAL: [DpState; 3] = [DpState::ZeroBare, DpState::OnePending, DpState::TwoPending];

    pub fn label(self) -> u8 {
        match self {
            DpState::ZeroBare | DpState::ZeroOne | DpState::ZeroSat => 0,
            DpState::OnePending | DpState::OneOk => 1,
            DpState::TwoPending | DpState::TwoOk => 2,
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    fn status(self) -> &'static str {
        match self {
            DpState::ZeroBare => "Zero",
            DpState::ZeroOne => "One",
            DpState::ZeroSat => "Sat",
            DpState::OnePending | DpState::TwoPending => "Pending",
            DpState::OneOk | DpState::TwoOk => "Ok",
        }
    }
}

impl fmt::Display for DpState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.label(), self.status())
    }
}

impl Serialize for DpState {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `table[parent][child]`: the parent's new state after attaching a child in
/// the given final state, or `None` if the pair is inconsistent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionTable {
    table: [[Option<DpState>; STATES]; STATES],
}

impl TransitionTable {
    pub fn standard() -> Self {
        use DpState::*;
        let mut table = [[None; STATES]; STATES];
        for p in DpState::ALL {
            for c in DpState::ALL {
                let (pl, cl) = (p.label(), c.label());
                let child_ok = match c {
                    ZeroSat => true,
                    ZeroBare => pl == 2,
                    ZeroOne => pl >= 1,
                    OneOk | TwoOk => true,
                    OnePending | TwoPending => pl >= 1,
                };
                if !child_ok {
                    continue;
                }
                table[p.index()][c.index()] = Some(match (p, cl) {
                    (ZeroBare | ZeroOne | ZeroSat, 0) => p,
                    (ZeroBare | ZeroOne | ZeroSat, 2) => ZeroSat,
                    (ZeroBare, _) => ZeroOne,
                    (ZeroOne | ZeroSat, _) => ZeroSat,
                    (OnePending | OneOk, 0) | (TwoPending | TwoOk, 0) => p,
                    (OnePending | OneOk, _) => OneOk,
                    (TwoPending | TwoOk, _) => TwoOk,
                });
            }
        }
        TransitionTable { table }
    }

    pub fn get(&self, parent: DpState, child: DpState) -> Option<DpState> {
        self.table[parent.index()][child.index()]
    }

    pub fn set(&mut self, parent: DpState, child: DpState, result: Option<DpState>) {
        self.table[parent.index()][child.index()] = result;
    }
}

impl Default for TransitionTable {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeDpError {
    #[error("graph contains a cycle")]
    NotForest,
    #[error("component of vertex {0} is a single vertex")]
    IsolatedComponent(usize),
    #[error("no accepting root state for the component of vertex {0}")]
    Infeasible(usize),
    #[error("reconstructed labeling of weight {value} is not a TR2DF")]
    WitnessRejected { value: u32 },
}

/// Minimum subtree weight per [`DpState`], `None` when infeasible.
pub type DpRow = [Option<u32>; STATES];

struct Run {
    rows: Vec<[u32; STATES]>,
    kids: Vec<Vec<usize>>,
    /// `back[v][k][s]`: packed `(parent state, child state)` that produced
    /// state `s` after folding the `k`-th child of `v`.
    back: Vec<Vec<[u8; STATES]>>,
    roots: Vec<usize>,
}

fn run(g: &Graph, table: &TransitionTable) -> Result<Run, TreeDpError> {
    let n = g.order();
    let comps = connected_components(g);
    if g.size() + comps.len() != n {
        return Err(TreeDpError::NotForest);
    }
    let mut rows = vec![[INF; STATES]; n];
    let mut kids = vec![Vec::new(); n];
    let mut back = vec![Vec::new(); n];
    let mut roots = Vec::with_capacity(comps.len());
    let mut parent = vec![usize::MAX; n];
    for comp in &comps {
        let root = comp[0];
        if comp.len() == 1 {
            return Err(TreeDpError::IsolatedComponent(root));
        }
        roots.push(root);
        let mut pre = Vec::with_capacity(comp.len());
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(v) = stack.pop() {
            pre.push(v);
            for &w in g.neighbors(v) {
                if w != parent[v] {
                    parent[w] = v;
                    kids[v].push(w);
                    stack.push(w);
                }
            }
        }
        for &v in pre.iter().rev() {
            let mut row = [INF; STATES];
            for s in DpState::INITIAL {
                row[s.index()] = s.label() as u32;
            }
            let mut steps = Vec::with_capacity(kids[v].len());
            for &c in &kids[v] {
                let child = &rows[c];
                let mut next = [INF; STATES];
                let mut bp = [u8::MAX; STATES];
                for p in 0..STATES {
                    if row[p] == INF {
                        continue;
                    }
                    for (ci, &cv) in child.iter().enumerate() {
                        if cv == INF {
                            continue;
                        }
                        let Some(to) = table.table[p][ci] else { continue };
                        let total = row[p] + cv;
                        if total < next[to.index()] {
                            next[to.index()] = total;
                            bp[to.index()] = (p * STATES + ci) as u8;
                        }
                    }
                }
                row = next;
                steps.push(bp);
            }
            rows[v] = row;
            back[v] = steps;
        }
    }
    Ok(Run { rows, kids, back, roots })
}

fn to_row(raw: &[u32; STATES]) -> DpRow {
    raw.map(|x| (x != INF).then_some(x))
}

/// `γ_tR2` of a forest without single-vertex components, with an optimal
/// witness verified against the predicate.
pub fn tree_gamma_tr2(g: &Graph) -> Result<SolveResult, TreeDpError> {
    tree_gamma_tr2_with(g, &TransitionTable::standard())
}

/// As [`tree_gamma_tr2`] but with an arbitrary transition table.
pub fn tree_gamma_tr2_with(g: &Graph, table: &TransitionTable) -> Result<SolveResult, TreeDpError> {
    let start = Instant::now();
    let r = run(g, table)?;
    let mut labels = vec![0u8; g.order()];
    let mut value = 0u32;
    for &root in &r.roots {
        let (best, s) = DpState::ACCEPTING
            .iter()
            .map(|&s| (r.rows[root][s.index()], s.index()))
            .min()
            .filter(|&(v, _)| v != INF)
            .ok_or(TreeDpError::Infeasible(root))?;
        value += best;
        let mut stack = vec![(root, s)];
        while let Some((v, mut s)) = stack.pop() {
            for (k, &c) in r.kids[v].iter().enumerate().rev() {
                let packed = r.back[v][k][s] as usize;
                stack.push((c, packed % STATES));
                s = packed / STATES;
            }
            labels[v] = DpState::ALL[s].label();
        }
    }
    let f = Labeling::new(labels).expect("labels are 0, 1 or 2");
    if f.weight() != value || check_tr2df(g, &f).is_err() {
        return Err(TreeDpError::WitnessRejected { value });
    }
    Ok(SolveResult {
        value,
        witness: Witness::Labeling(f),
        method: Method::TreeDP,
        nodes_explored: g.order() as u64,
        elapsed: start.elapsed(),
    })
}

/// Final DP row of every vertex, each tree rooted at its smallest vertex.
pub fn dp_rows(g: &Graph) -> Result<Vec<DpRow>, TreeDpError> {
    Ok(run(g, &TransitionTable::standard())?.rows.iter().map(to_row).collect())
}

/// Final DP row of `v`.
pub fn dp_trace(g: &Graph, v: usize) -> Result<DpRow, TreeDpError> {
    Ok(to_row(&run(g, &TransitionTable::standard())?.rows[v]))
}
