use std::time::Instant;

use super::{Method, SolveError, SolveResult, Witness};
use crate::graph::{Graph, VertexSet};
use crate::labeling::bits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SetKind {
    Dominating,
    TotalDominating,
    DoubleDominating,
}

impl SetKind {
    fn accepts(self, masks: &[u64], s: u64) -> bool {
        match self {
            SetKind::Dominating => bits::is_dominating(masks, s),
            SetKind::TotalDominating => bits::is_total_dominating(masks, s),
            SetKind::DoubleDominating => bits::is_double_dominating(masks, s),
        }
    }
}

/// Lexicographically first subset of size `k` (as a sorted index tuple)
/// satisfying `accept`, searched over all `k` from 1 upward.
pub(crate) fn smallest_set(g: &Graph, kind: SetKind) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let n = g.order();
    let masks = g
        .neighbor_masks()
        .ok_or(SolveError::TooLarge { method: Method::BruteForce, n, limit: 64 })?;
    let mut nodes = 0u64;
    for k in 1..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            nodes += 1;
            let s = idx.iter().fold(0u64, |m, &i| m | 1 << i);
            if kind.accepts(masks, s) {
                let set: VertexSet = idx.into_iter().collect();
                return Ok(SolveResult {
                    value: k as u32,
                    witness: Witness::Set(set),
                    method: Method::BruteForce,
                    nodes_explored: nodes,
                    elapsed: start.elapsed(),
                });
            }
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else { break };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("V itself satisfies every property once isolated vertices are excluded")
}
