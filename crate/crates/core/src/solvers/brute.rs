use std::time::Instant;

use super::{Budget, Exhausted, Method, SolveError, SolveResult, Witness};
use crate::graph::Graph;
use crate::labeling::{bits, Labeling};

/// Default ceiling on `3^n` for exhaustive enumeration (n <= 14).
pub const DEFAULT_ENUMERATION_CAP: u64 = 4_782_969;

const MASK_LIMIT: usize = 64;

fn masks(g: &Graph, method: Method) -> Result<&[u64], SolveError> {
    g.neighbor_masks()
        .ok_or(SolveError::TooLarge { method, n: g.order(), limit: MASK_LIMIT })
}

/// Odometer over `{0,1,2}^n` in lexicographic order (vertex 0 most
/// significant), abandoning a prefix as soon as its weight reaches the
/// incumbent. The first labeling kept at the optimal weight is therefore the
/// lexicographically smallest optimum.
struct Odometer<'a, P> {
    masks: &'a [u64],
    accept: P,
    best: u32,
    best_masks: Option<(u64, u64)>,
}

impl<P: Fn(&[u64], u64, u64) -> bool> Odometer<'_, P> {
    fn run(&mut self, v: usize, weight: u32, ones: u64, twos: u64, budget: &mut Budget) -> Result<(), Exhausted> {
        budget.tick()?;
        if v == self.masks.len() {
            if weight < self.best && (self.accept)(self.masks, ones, twos) {
                self.best = weight;
                self.best_masks = Some((ones, twos));
            }
            return Ok(());
        }
        for x in 0..3u32 {
            if weight + x >= self.best {
                break;
            }
            let bit = 1u64 << v;
            let (o, t) = match x {
                0 => (ones, twos),
                1 => (ones | bit, twos),
                _ => (ones, twos | bit),
            };
            self.run(v + 1, weight + x, o, t, budget)?;
        }
        Ok(())
    }
}

fn minimize<P>(g: &Graph, accept: P, start_bound: u32, budget: &mut Budget) -> Result<SolveResult, SolveError>
where
    P: Fn(&[u64], u64, u64) -> bool,
{
    let start = Instant::now();
    let masks = masks(g, Method::BruteForce)?;
    let n = g.order();
    let mut od = Odometer { masks, accept, best: start_bound, best_masks: None };
    let outcome = od.run(0, 0, 0, 0, budget);
    let result = |(ones, twos): (u64, u64)| {
        let f = Labeling::from_masks(n, ones, twos);
        SolveResult {
            value: f.weight(),
            witness: Witness::Labeling(f),
            method: Method::BruteForce,
            nodes_explored: budget.nodes,
            elapsed: start.elapsed(),
        }
    };
    match (outcome, od.best_masks) {
        (Ok(()), Some(m)) => Ok(result(m)),
        (Ok(()), None) => unreachable!("the all-ones labeling is always admissible"),
        (Err(Exhausted), best) => {
            let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            let m = best.unwrap_or((all, 0));
            Err(SolveError::BudgetExceeded { incumbent: Box::new(result(m)) })
        }
    }
}

/// Exhaustive `γ_tR2`; requires no isolated vertex.
pub(crate) fn gamma_tr2(g: &Graph, budget: &mut Budget) -> Result<SolveResult, SolveError> {
    minimize(g, bits::is_tr2df, g.order() as u32 + 1, budget)
}

/// Exhaustive `γ_R2`.
pub(crate) fn gamma_r2(g: &Graph, budget: &mut Budget) -> Result<SolveResult, SolveError> {
    minimize(g, bits::is_r2f, g.order() as u32 + 1, budget)
}

/// All minimum-weight TR2DFs of `g` in lexicographic order.
///
/// Fails with [`SolveError::CapExceeded`] when `3^n > cap`, and with
/// [`SolveError::IsolatedVertex`] when no TR2DF exists.
pub fn enumerate_optimal_tr2df(g: &Graph, cap: u64) -> Result<OptimalLabelings<'_>, SolveError> {
    let n = g.order();
    if 3u64.checked_pow(n as u32).is_none_or(|c| c > cap) {
        return Err(SolveError::CapExceeded { n, cap });
    }
    if let Some(v) = g.isolated_vertex() {
        return Err(SolveError::IsolatedVertex(v));
    }
    let target = gamma_tr2(g, &mut Budget::unlimited())?.value;
    Ok(OptimalLabelings {
        masks: masks(g, Method::BruteForce)?,
        target,
        digits: Vec::with_capacity(n),
        weight: 0,
        started: false,
    })
}

/// Iterator returned by [`enumerate_optimal_tr2df`].
pub struct OptimalLabelings<'a> {
    masks: &'a [u64],
    target: u32,
    digits: Vec<u8>,
    weight: u32,
    started: bool,
}

impl OptimalLabelings<'_> {
    /// The optimum weight every yielded labeling has.
    pub fn value(&self) -> u32 {
        self.target
    }

    fn current(&self) -> (u64, u64) {
        self.digits.iter().enumerate().fold((0, 0), |(o, t), (v, &d)| match d {
            1 => (o | 1 << v, t),
            2 => (o, t | 1 << v),
            _ => (o, t),
        })
    }

    /// Advances the depth-first odometer to the next complete labeling of
    /// weight `target`. Returns false when exhausted.
    fn advance(&mut self) -> bool {
        let n = self.masks.len();
        let mut descend = !self.started;
        self.started = true;
        loop {
            if descend {
                // Extend with the smallest digit that keeps the weight feasible.
                while self.digits.len() < n {
                    let remaining = (n - self.digits.len()) as u32;
                    if self.weight + 2 * remaining < self.target {
                        // Even all 2s cannot reach the target: bump instead.
                        break;
                    }
                    self.digits.push(0);
                }
                if self.digits.len() == n && self.weight == self.target {
                    return true;
                }
            }
            // Increment the last digit that can still grow without exceeding target.
            loop {
                let Some(d) = self.digits.pop() else { return false };
                self.weight -= d as u32;
                if d < 2 && self.weight + (d as u32) < self.target {
                    let nd = d + 1;
                    self.digits.push(nd);
                    self.weight += nd as u32;
                    break;
                }
            }
            descend = true;
        }
    }
}

impl Iterator for OptimalLabelings<'_> {
    type Item = Labeling;

    fn next(&mut self) -> Option<Labeling> {
        while self.advance() {
            let (ones, twos) = self.current();
            if bits::is_tr2df(self.masks, ones, twos) {
                return Some(Labeling::from_masks(self.masks.len(), ones, twos));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;
    use crate::labeling::is_tr2df;

    fn gen(spec: FamilySpec) -> Graph {
        spec.generate().unwrap()
    }

    fn naive_optima(g: &Graph) -> Vec<Labeling> {
        let n = g.order();
        let all: Vec<Labeling> = (0..3u32.pow(n as u32))
            .map(|mut code| {
                let mut v = vec![0u8; n];
                for slot in v.iter_mut().rev() {
                    *slot = (code % 3) as u8;
                    code /= 3;
                }
                Labeling::new(v).unwrap()
            })
            .filter(|f| is_tr2df(g, f))
            .collect();
        let best = all.iter().map(Labeling::weight).min().unwrap();
        all.into_iter().filter(|f| f.weight() == best).collect()
    }

    #[test]
    fn k2_has_a_single_optimum() {
        let k2 = gen(FamilySpec::Path(2));
        let all: Vec<_> = enumerate_optimal_tr2df(&k2, DEFAULT_ENUMERATION_CAP).unwrap().collect();
        assert_eq!(all, vec![Labeling::new(vec![1, 1]).unwrap()]);
    }

    #[test]
    fn p3_optima_have_weight_three() {
        let p3 = gen(FamilySpec::Path(3));
        let it = enumerate_optimal_tr2df(&p3, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(it.value(), 3);
        let all: Vec<_> = it.collect();
        assert!(!all.is_empty());
        assert!(all.iter().all(|f| f.weight() == 3));
        assert_eq!(all, naive_optima(&p3));
    }

    #[test]
    fn c3_optima_are_adjacent_pairs_of_ones() {
        let c3 = gen(FamilySpec::Cycle(3));
        let all: Vec<Vec<u8>> = enumerate_optimal_tr2df(&c3, DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .map(|f| f.values().to_vec())
            .collect();
        assert_eq!(all, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        for spec in [
            FamilySpec::Cycle(6),
            FamilySpec::Star(5),
            FamilySpec::DoubleStar(2, 1),
            FamilySpec::Complete(4),
            FamilySpec::CompleteBipartite(2, 3),
        ] {
            let g = gen(spec);
            let got: Vec<_> = enumerate_optimal_tr2df(&g, DEFAULT_ENUMERATION_CAP).unwrap().collect();
            assert_eq!(got, naive_optima(&g));
        }
    }

    #[test]
    fn cap_and_isolated_guards() {
        let p12 = gen(FamilySpec::Path(12));
        assert!(matches!(enumerate_optimal_tr2df(&p12, 1000), Err(SolveError::CapExceeded { n: 12, .. })));
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(enumerate_optimal_tr2df(&g, 1000), Err(SolveError::IsolatedVertex(2))));
    }

    #[test]
    fn budget_exhaustion_returns_incumbent() {
        let g = gen(FamilySpec::Cycle(12));
        let mut budget = Budget::new(&super::super::SolverConfig { node_budget: Some(5), ..Default::default() });
        match gamma_tr2(&g, &mut budget) {
            Err(SolveError::BudgetExceeded { incumbent }) => {
                assert!(is_tr2df(&g, incumbent.labeling()));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
