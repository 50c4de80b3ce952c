//! Corpus generation and exhaustive sweeps.
//!
//! A sweep runs a fixed registry of [`Check`]s over a [`Corpus`] and
//! aggregates pass/fail/skip counts, counterexamples and the bounds found to
//! be tight. Results depend only on the configuration: counterexamples and
//! tight instances are reported as the smallest graph6 strings, with exact
//! counts alongside.

mod checks;
mod enumerate;
pub mod par;

pub use checks::{reduction_instances, Outcome};
pub use enumerate::{
    canonical_tree_code, enumerate_connected_graphs, enumerate_trees, tree_from_prufer, EnumerateError,
    MAX_GRAPH_ORDER, MAX_TREE_ORDER,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{parse_graph6, parse_graph6_lines, FamilySpec, Graph, GraphError, ParseError};
use crate::solvers::{SolverConfig, DEFAULT_ENUMERATION_CAP};
use crate::tree_dp::TransitionTable;
use checks::{check_reduction, run_check, Facts, Shared};
use par::Executor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Bounds,
    TreeBounds,
    Characterizations,
    PropPo,
    EmptyV2,
    DoubleEquiv,
    Formulas,
    ReductionIff,
    DpOracle,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Bounds,
        Check::TreeBounds,
        Check::Characterizations,
        Check::PropPo,
        Check::EmptyV2,
        Check::DoubleEquiv,
        Check::Formulas,
        Check::ReductionIff,
        Check::DpOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Bounds => "bounds",
            Check::TreeBounds => "tree_bounds",
            Check::Characterizations => "characterizations",
            Check::PropPo => "prop_po",
            Check::EmptyV2 => "empty_v2",
            Check::DoubleEquiv => "double_equiv",
            Check::Formulas => "formulas",
            Check::ReductionIff => "reduction_iff",
            Check::DpOracle => "dp_oracle",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<_> = Check::ALL.iter().map(|c| c.name()).collect();
            format!("unknown check {s:?} (expected one of {})", names.join(", "))
        })
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Corpus {
    /// Every labeled tree of order `2..=n`.
    AllTreesUpTo(usize),
    /// Every connected labeled graph of order `2..=n`.
    AllConnectedGraphsUpTo(usize),
    Graph6File(PathBuf),
    Families(Vec<FamilySpec>),
}

/// A graph together with a stable identifier and, for family members, its
/// generating spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusItem {
    pub id: String,
    pub graph: Graph,
    pub family: Option<FamilySpec>,
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Family(#[from] GraphError),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Lazily produced corpus items, in a fixed order.
pub fn corpus_items(corpus: &Corpus) -> Result<Box<dyn Iterator<Item = CorpusItem>>, SweepError> {
    Ok(match corpus {
        &Corpus::AllTreesUpTo(n) => {
            enumerate_trees(n).map(drop)?;
            Box::new((2..=n).flat_map(|k| {
                enumerate_trees(k).expect("order checked").enumerate().map(move |(i, graph)| CorpusItem {
                    id: format!("tree:{k}:{i}"),
                    graph,
                    family: None,
                })
            }))
        }
        &Corpus::AllConnectedGraphsUpTo(n) => {
            enumerate_connected_graphs(n).map(drop)?;
            Box::new((2..=n).flat_map(|k| {
                enumerate_connected_graphs(k).expect("order checked").enumerate().map(move |(i, graph)| {
                    CorpusItem { id: format!("graph:{k}:{i}"), graph, family: None }
                })
            }))
        }
        Corpus::Graph6File(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|source| SweepError::Io { path: path.clone(), source })?;
            let graphs = parse_graph6_lines(&text)?;
            Box::new(graphs.into_iter().enumerate().map(|(i, graph)| CorpusItem {
                id: format!("line:{}", i + 1),
                graph,
                family: None,
            }))
        }
        Corpus::Families(specs) => {
            let items = specs
                .iter()
                .map(|s| Ok(CorpusItem { id: s.to_string(), graph: s.generate()?, family: Some(s.clone()) }))
                .collect::<Result<Vec<_>, GraphError>>()?;
            Box::new(items.into_iter())
        }
    })
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub corpus: Corpus,
    pub checks: Vec<Check>,
    /// Per-solve node and time limits.
    pub solver: SolverConfig,
    /// Ceiling on `3^n` for checks that enumerate all optimal labelings.
    pub enumeration_cap: u64,
    /// Worker threads: 1 is sequential, 0 uses every core.
    pub jobs: usize,
    /// Counterexamples and tight instances kept per check or bound.
    pub max_examples: usize,
    /// Transition table the `dp_oracle` check exercises.
    pub dp_table: TransitionTable,
}

impl SweepConfig {
    pub fn new(corpus: Corpus, checks: impl IntoIterator<Item = Check>) -> Self {
        SweepConfig {
            corpus,
            checks: checks.into_iter().collect(),
            solver: SolverConfig::default(),
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            jobs: 0,
            max_examples: 20,
            dp_table: TransitionTable::standard(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounts {
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub budget_exceeded: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Counterexample {
    pub check: Check,
    pub graph6: String,
    pub id: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TightInventory {
    pub count: u64,
    /// Smallest graph6 strings of tight instances.
    pub examples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub graphs: u64,
    pub checks: BTreeMap<Check, CheckCounts>,
    pub counterexamples: Vec<Counterexample>,
    pub tight: BTreeMap<String, TightInventory>,
    /// Some solve ran out of budget; affected checks count as `budget_exceeded`.
    pub partial: bool,
    #[serde(rename = "millis", serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl SweepReport {
    pub fn failures(&self) -> u64 {
        self.checks.values().map(|c| c.failed).sum()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn counts(&self, check: Check) -> CheckCounts {
        self.checks.get(&check).copied().unwrap_or_default()
    }

    /// Whether the inventory of `bound` lists `graph6`.
    pub fn is_tight(&self, bound: &str, graph6: &str) -> bool {
        self.tight.get(bound).is_some_and(|t| t.examples.iter().any(|e| e == graph6))
    }
}

struct Collector {
    k: usize,
    graphs: u64,
    checks: BTreeMap<Check, CheckCounts>,
    counterexamples: BTreeMap<Check, BTreeSet<Counterexample>>,
    tight: BTreeMap<&'static str, (u64, BTreeSet<String>)>,
}

impl Collector {
    fn record(&mut self, check: Check, outcome: Outcome, graph6: &str, id: &str) {
        let counts = self.checks.entry(check).or_default();
        match outcome {
            Outcome::Pass => counts.passed += 1,
            Outcome::Skip => counts.skipped += 1,
            Outcome::Budget => counts.budget_exceeded += 1,
            Outcome::Fail(detail) => {
                counts.failed += 1;
                let set = self.counterexamples.entry(check).or_default();
                set.insert(Counterexample { check, graph6: graph6.to_string(), id: id.to_string(), detail });
                if set.len() > self.k {
                    set.pop_last();
                }
            }
        }
    }

    fn record_tight(&mut self, bound: &'static str, graph6: &str) {
        let (count, set) = self.tight.entry(bound).or_default();
        *count += 1;
        if set.len() < self.k || set.last().is_some_and(|l| l.as_str() > graph6) {
            set.insert(graph6.to_string());
            if set.len() > self.k {
                set.pop_last();
            }
        }
    }
}

struct ItemResult {
    id: String,
    graph6: String,
    outcomes: Vec<(Check, Outcome)>,
    tight: Vec<&'static str>,
}

fn evaluate(item: &CorpusItem, cfg: &SweepConfig, shared: &Shared) -> ItemResult {
    let facts = Facts::new(item, cfg, shared);
    let mut tight = Vec::new();
    let outcomes = cfg
        .checks
        .iter()
        .filter(|&&c| c != Check::ReductionIff)
        .map(|&c| (c, run_check(c, &facts, &mut tight)))
        .collect();
    ItemResult { id: item.id.clone(), graph6: facts.graph6().to_string(), outcomes, tight }
}

const CHUNK: usize = 4096;

/// Runs every configured check on every corpus item.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepReport, SweepError> {
    sweep_with(cfg, &Executor::new(cfg.jobs))
}

/// As [`sweep`], on a caller-supplied executor.
pub fn sweep_with(cfg: &SweepConfig, exec: &Executor) -> Result<SweepReport, SweepError> {
    let start = Instant::now();
    let shared = Shared::default();
    let mut col = Collector {
        k: cfg.max_examples,
        graphs: 0,
        checks: cfg.checks.iter().map(|&c| (c, CheckCounts::default())).collect(),
        counterexamples: BTreeMap::new(),
        tight: BTreeMap::new(),
    };
    let graph_checks = cfg.checks.iter().any(|&c| c != Check::ReductionIff);
    if graph_checks {
        let mut items = corpus_items(&cfg.corpus)?;
        loop {
            let chunk: Vec<CorpusItem> = items.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            for r in exec.map(&chunk, |item| evaluate(item, cfg, &shared)) {
                col.graphs += 1;
                for (check, outcome) in r.outcomes {
                    col.record(check, outcome, &r.graph6, &r.id);
                }
                for bound in r.tight {
                    col.record_tight(bound, &r.graph6);
                }
            }
        }
    }
    if cfg.checks.contains(&Check::ReductionIff) {
        let instances = reduction_instances();
        for (i, (outcome, graph6)) in exec.map(&instances, |inst| check_reduction(inst, cfg)).into_iter().enumerate() {
            col.record(Check::ReductionIff, outcome, &graph6, &format!("x3c:{i}"));
        }
    }
    let partial = col.checks.values().any(|c| c.budget_exceeded > 0);
    Ok(SweepReport {
        graphs: col.graphs,
        checks: col.checks,
        counterexamples: col.counterexamples.into_values().flatten().collect(),
        tight: col
            .tight
            .into_iter()
            .map(|(k, (count, set))| (k.to_string(), TightInventory { count, examples: set.into_iter().collect() }))
            .collect(),
        partial,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("the reduction check runs on X3C instances, not graphs")]
    NotAGraphCheck,
}

/// Re-runs one check on one graph given by its graph6 string.
pub fn replay(check: Check, graph6: &str, cfg: &SweepConfig) -> Result<Outcome, ReplayError> {
    if check == Check::ReductionIff {
        return Err(ReplayError::NotAGraphCheck);
    }
    let graph = parse_graph6(graph6.trim().as_bytes())?;
    let item = CorpusItem { id: "replay".into(), graph, family: None };
    let shared = Shared::default();
    let facts = Facts::new(&item, cfg, &shared);
    Ok(run_check(check, &facts, &mut Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::encode_graph6;
    use crate::tree_dp::DpState;

    fn quick(corpus: Corpus, checks: &[Check]) -> SweepReport {
        let mut cfg = SweepConfig::new(corpus, checks.iter().copied());
        cfg.jobs = 1;
        sweep(&cfg).unwrap()
    }

    #[test]
    fn small_tree_sweep_passes() {
        let r = quick(Corpus::AllTreesUpTo(6), &[Check::DpOracle, Check::TreeBounds, Check::Bounds]);
        assert!(r.all_passed(), "{:?}", r.counterexamples);
        assert_eq!(r.graphs, 1 + 3 + 16 + 125 + 1296);
        assert_eq!(r.counts(Check::DpOracle).passed, r.graphs);
    }

    #[test]
    fn small_graph_sweep_passes() {
        let checks = [
            Check::Bounds,
            Check::Characterizations,
            Check::PropPo,
            Check::EmptyV2,
            Check::DoubleEquiv,
        ];
        let r = quick(Corpus::AllConnectedGraphsUpTo(4), &checks);
        assert!(r.all_passed(), "{:?}", r.counterexamples);
        assert_eq!(r.graphs, 1 + 4 + 38);
        assert!(r.counts(Check::EmptyV2).skipped > 0);
    }

    #[test]
    fn family_formulas() {
        let specs = (2..9).map(FamilySpec::Path).chain((3..9).map(FamilySpec::Cycle)).collect();
        let r = quick(Corpus::Families(specs), &[Check::Formulas, Check::Bounds]);
        assert!(r.all_passed());
        assert_eq!(r.counts(Check::Formulas).passed, 13);
        let c6 = encode_graph6(&FamilySpec::Cycle(6).generate().unwrap());
        assert!(r.is_tight("upp1", &c6));
        assert!(r.is_tight("upp1_corollary", &c6));
    }

    #[test]
    fn mutated_table_is_detected_and_replayable() {
        let mut cfg = SweepConfig::new(Corpus::AllTreesUpTo(5), [Check::DpOracle]);
        cfg.jobs = 1;
        cfg.dp_table.set(DpState::ZeroBare, DpState::OneOk, Some(DpState::ZeroSat));
        let r = sweep(&cfg).unwrap();
        assert!(r.counts(Check::DpOracle).failed > 0);
        let ce = &r.counterexamples[0];
        assert!(matches!(replay(Check::DpOracle, &ce.graph6, &cfg).unwrap(), Outcome::Fail(_)));
        cfg.dp_table = TransitionTable::standard();
        assert_eq!(replay(Check::DpOracle, &ce.graph6, &cfg).unwrap(), Outcome::Pass);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let mut cfg = SweepConfig::new(Corpus::AllConnectedGraphsUpTo(4), [Check::Bounds, Check::Characterizations]);
        cfg.jobs = 1;
        let a = sweep(&cfg).unwrap();
        cfg.jobs = 2;
        let b = sweep(&cfg).unwrap();
        assert_eq!((a.checks, a.tight), (b.checks, b.tight));
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }
}
