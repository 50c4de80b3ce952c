use std::time::Instant;

use super::{Budget, Exhausted, Method, SolveError, SolveResult, SolverConfig, Witness};
use crate::graph::Graph;
use crate::labeling::{is_tr2df, Labeling};

const UNSET: u8 = u8::MAX;

struct Search<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    label: Vec<u8>,
    ones: Vec<u32>,
    twos: Vec<u32>,
    open: Vec<u32>,
    weight: u32,
    best: u32,
    best_label: Vec<u8>,
    spread: u32,
}

impl Search<'_> {
    fn coverage(&self, u: usize) -> u32 {
        2 * self.twos[u] + self.ones[u]
    }

    /// Whether `u` can still be satisfied by its unassigned neighbours.
    fn alive(&self, u: usize) -> bool {
        match self.label[u] {
            UNSET => true,
            0 => self.coverage(u) + 2 * self.open[u] >= 2,
            _ => self.ones[u] + self.twos[u] + self.open[u] >= 1,
        }
    }

    /// Residual demand in coverage units; one unit of weight removes at most
    /// `Δ + 1` of it, so `⌈D / (Δ + 1)⌉` more weight is necessary.
    fn lower_bound(&self) -> u32 {
        let demand: u32 = (0..self.g.order())
            .map(|u| {
                let short = 2u32.saturating_sub(self.coverage(u));
                match self.label[u] {
                    0 => short,
                    UNSET => short.min(1),
                    _ => 0,
                }
            })
            .sum();
        demand.div_ceil(self.spread)
    }

    fn assign(&mut self, v: usize, x: u8) {
        self.label[v] = x;
        self.weight += x as u32;
        for &w in self.g.neighbors(v) {
            self.open[w] -= 1;
            match x {
                1 => self.ones[w] += 1,
                2 => self.twos[w] += 1,
                _ => {}
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let x = self.label[v];
        self.label[v] = UNSET;
        self.weight -= x as u32;
        for &w in self.g.neighbors(v) {
            self.open[w] += 1;
            match x {
                1 => self.ones[w] -= 1,
                2 => self.twos[w] -= 1,
                _ => {}
            }
        }
    }

    fn run(&mut self, depth: usize, budget: &mut Budget) -> Result<(), Exhausted> {
        budget.tick()?;
        if depth == self.order.len() {
            if self.weight < self.best {
                self.best = self.weight;
                self.best_label.clone_from(&self.label);
            }
            return Ok(());
        }
        let v = self.order[depth];
        for x in 0..=2u8 {
            if self.weight + x as u32 >= self.best {
                break;
            }
            self.assign(v, x);
            let ok = self.alive(v) && self.g.neighbors(v).iter().all(|&w| self.alive(w));
            if ok && self.weight + self.lower_bound() < self.best {
                self.run(depth + 1, budget)?;
            }
            self.unassign(v);
        }
        Ok(())
    }
}

/// Exact `γ_tR2` of a graph without isolated vertices by depth-first branch
/// and bound. Vertices are branched in decreasing degree order, values in the
/// order 0, 1, 2. The search starts from [`greedy_tr2df`].
///
/// On budget exhaustion the best labeling found so far is returned inside
/// [`SolveError::BudgetExceeded`].
pub fn branch_and_bound(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    if let Some(v) = g.isolated_vertex() {
        return Err(SolveError::IsolatedVertex(v));
    }
    let start = Instant::now();
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let greedy = greedy_tr2df(g);
    let mut s = Search {
        g,
        order,
        label: vec![UNSET; n],
        ones: vec![0; n],
        twos: vec![0; n],
        open: (0..n).map(|v| g.degree(v) as u32).collect(),
        weight: 0,
        best: greedy.weight(),
        best_label: greedy.values().to_vec(),
        spread: g.max_degree() as u32 + 1,
    };
    let mut budget = Budget::new(cfg);
    let outcome = s.run(0, &mut budget);
    let f = Labeling::new(s.best_label).expect("labels are 0, 1 or 2");
    let result = SolveResult {
        value: f.weight(),
        witness: Witness::Labeling(f),
        method: Method::BranchBound,
        nodes_explored: budget.nodes,
        elapsed: start.elapsed(),
    };
    match outcome {
        Ok(()) => Ok(result),
        Err(Exhausted) => Err(SolveError::BudgetExceeded { incumbent: Box::new(result) }),
    }
}

/// A TR2DF built from a greedy total dominating set labeled 2, then lowered
/// vertex by vertex while it stays valid. Requires no isolated vertex.
pub fn greedy_tr2df(g: &Graph) -> Labeling {
    let n = g.order();
    let mut dominated = vec![false; n];
    let mut f = Labeling::zeros(n);
    loop {
        let gain = |v: usize| g.neighbors(v).iter().filter(|&&w| !dominated[w]).count();
        let Some(v) = (0..n).max_by_key(|&v| (gain(v), std::cmp::Reverse(v))) else { break };
        if gain(v) == 0 {
            break;
        }
        f.set(v, 2);
        for &w in g.neighbors(v) {
            dominated[w] = true;
        }
    }
    for v in 0..n {
        for lower in 0..f.get(v) {
            let old = f.get(v);
            f.set(v, lower);
            if is_tr2df(g, &f) {
                break;
            }
            f.set(v, old);
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph6, FamilySpec};
    use crate::labeling::check_tr2df;

    #[test]
    fn greedy_is_valid_on_families() {
        for spec in [
            FamilySpec::Path(2),
            FamilySpec::Path(9),
            FamilySpec::Cycle(7),
            FamilySpec::Star(6),
            FamilySpec::DoubleStar(3, 2),
            FamilySpec::Complete(5),
            FamilySpec::CompleteBipartite(3, 4),
            FamilySpec::corona(FamilySpec::Cycle(4)),
        ] {
            let g = spec.generate().unwrap();
            assert!(check_tr2df(&g, &greedy_tr2df(&g)).is_ok(), "{spec}");
        }
    }

    #[test]
    fn budget_returns_valid_incumbent() {
        let g = parse_graph6(b"IheA@GUAo").unwrap();
        let cfg = SolverConfig { node_budget: Some(3), ..Default::default() };
        match branch_and_bound(&g, &cfg) {
            Err(SolveError::BudgetExceeded { incumbent }) => {
                assert!(is_tr2df(&g, incumbent.labeling()));
                assert!(incumbent.value >= 6);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn complete_graphs() {
        for n in 2..9 {
            let g = FamilySpec::Complete(n).generate().unwrap();
            assert_eq!(branch_and_bound(&g, &SolverConfig::default()).unwrap().value, 2);
        }
    }
}
