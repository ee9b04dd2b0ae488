//! Exact classical emulations of the quantum subroutines the solvers rely
//! on. Every call returns the exact classical answer (unless the optional
//! noise mode corrupts it) while charging its published quantum query cost
//! to a [`QueryLedger`], so asymptotic claims become measurable without any
//! amplitude-level simulation.
//!
//! Costs are real-valued query units: one unit is one oracle access in the
//! query model. Logarithms in cost formulas are natural logs floored at one
//! so small cases never charge zero.

use crate::core_strings::SymbolSource;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Ledger key for [`Emulator::first_one_search`].
pub const FIRST_ONE_SEARCH: &str = "first_one_search";
/// Ledger key for [`Emulator::all_ones_search`].
pub const ALL_ONES_SEARCH: &str = "all_ones_search";
/// Ledger key for [`Emulator::qmax`].
pub const QMAX: &str = "qmax";
/// Ledger key for [`Emulator::qcompare`].
pub const QCOMPARE: &str = "qcompare";
/// Ledger key for [`Emulator::is_substring`].
pub const IS_SUBSTRING: &str = "is_substring";

/// Natural log floored at one, the convention for all cost formulas here.
pub fn ln_floor(x: f64) -> f64 {
    if x <= std::f64::consts::E {
        1.0
    } else {
        x.ln()
    }
}

// ---------------------------------------------------------------------------
// Ledger
// ---------------------------------------------------------------------------

/// Accumulated calls and costs for one subroutine or pipeline stage.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub calls: u64,
    /// Query units charged under the quantum cost model.
    pub quantum_cost: f64,
    /// Classical work recorded alongside (bookkeeping the model treats as
    /// free or separate, such as subset unranking or confirmation scans).
    pub classical_cost: f64,
}

/// Per-subroutine cost accounting for one solver run.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct QueryLedger {
    entries: BTreeMap<String, LedgerEntry>,
    notes: Vec<String>,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one call with the given costs to `name`'s entry.
    pub fn charge(&mut self, name: &str, quantum: f64, classical: f64) {
        self.charge_calls(name, 1, quantum, classical);
    }

    /// Adds `calls` calls with the given total costs to `name`'s entry.
    pub fn charge_calls(&mut self, name: &str, calls: u64, quantum: f64, classical: f64) {
        assert!(
            quantum >= 0.0 && classical >= 0.0,
            "ledger charges must be non-negative"
        );
        let e = self.entries.entry(name.to_string()).or_default();
        e.calls += calls;
        e.quantum_cost += quantum;
        e.classical_cost += classical;
    }

    /// Records a free-form remark (pool caps, fallbacks, deviations).
    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    /// The entry for `name`, zeroed when absent.
    pub fn get(&self, name: &str) -> LedgerEntry {
        self.entries.get(name).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &LedgerEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn total_quantum(&self) -> f64 {
        self.entries.values().map(|e| e.quantum_cost).sum()
    }

    pub fn total_classical(&self) -> f64 {
        self.entries.values().map(|e| e.classical_cost).sum()
    }

    /// Folds another ledger's rows and notes into this one.
    pub fn merge(&mut self, other: &QueryLedger) {
        for (name, e) in other.entries() {
            self.charge_calls(name, e.calls, e.quantum_cost, e.classical_cost);
        }
        for n in other.notes() {
            self.notes.push(n.clone());
        }
    }

    /// Report rows plus grand totals, the JSON shape consumed by the bench
    /// and verify commands.
    pub fn report_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries()
            .map(|(name, e)| {
                serde_json::json!({
                    "name": name,
                    "calls": e.calls,
                    "quantum_cost": e.quantum_cost,
                    "classical_cost": e.classical_cost,
                })
            })
            .collect();
        serde_json::json!({
            "entries": rows,
            "total_quantum_cost": self.total_quantum(),
            "total_classical_cost": self.total_classical(),
            "notes": self.notes,
        })
    }

    /// Fixed-width text table for terminal output.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<24} {:>8} {:>16} {:>16}\n",
            "subroutine", "calls", "quantum", "classical"
        ));
        for (name, e) in self.entries() {
            out.push_str(&format!(
                "{:<24} {:>8} {:>16.2} {:>16.2}\n",
                name, e.calls, e.quantum_cost, e.classical_cost
            ));
        }
        out.push_str(&format!(
            "{:<24} {:>8} {:>16.2} {:>16.2}\n",
            "total",
            "",
            self.total_quantum(),
            self.total_classical()
        ));
        for n in self.notes() {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Noise
// ---------------------------------------------------------------------------

/// Optional per-call corruption model for robustness experiments.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub enabled: bool,
    /// Probability that a single subroutine invocation returns a wrong
    /// answer. Must lie in [0, 0.1].
    pub per_call_failure_probability: f64,
    pub rng_seed: u64,
    /// Independent repetitions per call, decided by majority vote. Must be
    /// odd. Charges scale by this factor.
    pub repetitions: u32,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig {
            enabled: false,
            per_call_failure_probability: 0.0,
            rng_seed: 0,
            repetitions: 1,
        }
    }
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<()> {
        let q = self.per_call_failure_probability;
        if !(0.0..=0.1).contains(&q) {
            return Err(Error::usage(format!(
                "per-call failure probability {q} outside [0, 0.1]"
            )));
        }
        if self.repetitions == 0 || self.repetitions % 2 == 0 {
            return Err(Error::usage(format!(
                "repetitions must be odd and positive, got {}",
                self.repetitions
            )));
        }
        Ok(())
    }
}

#[derive(Debug)]
struct NoiseState {
    q: f64,
    k: u32,
    rng: ChaCha8Rng,
}

// ---------------------------------------------------------------------------
// Emulator
// ---------------------------------------------------------------------------

/// Search direction for [`Emulator::first_one_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Minimal satisfying index.
    Ascending,
    /// Maximal satisfying index.
    Descending,
}

/// Bundles the ledger with the optional noise state; every emulated
/// subroutine lives here so each solver run owns exactly one accounting
/// context.
#[derive(Debug)]
pub struct Emulator {
    pub ledger: QueryLedger,
    noise: Option<NoiseState>,
}

impl Emulator {
    /// Exact emulation, no noise.
    pub fn exact() -> Self {
        Emulator {
            ledger: QueryLedger::new(),
            noise: None,
        }
    }

    /// Emulation with the given noise model (exact when disabled).
    pub fn with_noise(cfg: &NoiseConfig) -> Result<Self> {
        cfg.validate()?;
        let noise = if cfg.enabled {
            Some(NoiseState {
                q: cfg.per_call_failure_probability,
                k: cfg.repetitions,
                rng: ChaCha8Rng::seed_from_u64(cfg.rng_seed),
            })
        } else {
            None
        };
        Ok(Emulator {
            ledger: QueryLedger::new(),
            noise,
        })
    }

    pub fn noise_enabled(&self) -> bool {
        self.noise.is_some()
    }

    /// Charge multiplier: repetitions run the subroutine that many times.
    fn repetition_factor(&self) -> f64 {
        self.noise.as_ref().map_or(1.0, |s| f64::from(s.k))
    }

    /// Runs the per-call noise protocol: k independent trials, each either
    /// the exact answer or a corrupted one, decided by majority (first-seen
    /// wins ties). Without noise the exact answer passes through.
    fn noisy_vote<T: PartialEq + Clone>(
        &mut self,
        exact: T,
        mut corrupt: impl FnMut(&mut ChaCha8Rng) -> T,
    ) -> T {
        let Some(state) = self.noise.as_mut() else {
            return exact;
        };
        let mut outcomes: Vec<(T, u32)> = Vec::new();
        for _ in 0..state.k {
            let trial = if state.rng.gen::<f64>() < state.q {
                corrupt(&mut state.rng)
            } else {
                exact.clone()
            };
            match outcomes.iter_mut().find(|(t, _)| *t == trial) {
                Some(slot) => slot.1 += 1,
                None => outcomes.push((trial, 1)),
            }
        }
        let mut best = 0;
        for i in 1..outcomes.len() {
            if outcomes[i].1 > outcomes[best].1 {
                best = i;
            }
        }
        outcomes.swap_remove(best).0
    }

    /// Extremal index in 0..n satisfying the predicate, or none. `n` is the
    /// domain size; charges sqrt(n) query units.
    pub fn first_one_search(
        &mut self,
        n: usize,
        direction: Direction,
        mut predicate: impl FnMut(usize) -> bool,
    ) -> Option<usize> {
        let reps = self.repetition_factor();
        self.ledger
            .charge(FIRST_ONE_SEARCH, (n as f64).sqrt() * reps, 0.0);
        let exact = match direction {
            Direction::Ascending => (0..n).find(|&i| predicate(i)),
            Direction::Descending => (0..n).rev().find(|&i| predicate(i)),
        };
        if n == 0 {
            return exact;
        }
        self.noisy_vote(exact, |rng| {
            // Uniform over the n alternatives among the n+1 possible
            // outcomes (each index plus "none"), excluding the exact one.
            let exact_code = exact.map_or(n, |r| r);
            let mut code = rng.gen_range(0..n);
            if code >= exact_code {
                code += 1;
            }
            if code == n {
                None
            } else {
                Some(code)
            }
        })
    }

    /// Exactly the candidates satisfying the predicate, in input order.
    /// Charges sqrt(|I| * max(|I'|, 1)) query units.
    pub fn all_ones_search(
        &mut self,
        candidates: &[usize],
        mut predicate: impl FnMut(usize) -> bool,
    ) -> Vec<usize> {
        let exact: Vec<usize> = candidates.iter().copied().filter(|&i| predicate(i)).collect();
        let reps = self.repetition_factor();
        let cost = ((candidates.len() as f64) * (exact.len().max(1) as f64)).sqrt();
        self.ledger.charge(ALL_ONES_SEARCH, cost * reps, 0.0);
        if candidates.is_empty() {
            return exact;
        }
        let all = candidates.to_vec();
        let truth = exact.clone();
        self.noisy_vote(exact, move |rng| {
            // Flip the membership of one random candidate.
            let flip = all[rng.gen_range(0..all.len())];
            let mut wrong: Vec<usize> = Vec::with_capacity(all.len());
            for &c in &all {
                let inside = truth.contains(&c);
                if inside != (c == flip) {
                    wrong.push(c);
                }
            }
            wrong
        })
    }

    /// Maximum value and its smallest one-based index over values(1..=n).
    /// Charges sqrt(n) times the declared per-element cost.
    pub fn qmax(
        &mut self,
        n: usize,
        per_element_cost: f64,
        mut value: impl FnMut(usize) -> i64,
    ) -> Result<(usize, i64)> {
        if n == 0 {
            return Err(Error::usage("qmax needs a non-empty domain"));
        }
        let reps = self.repetition_factor();
        self.ledger
            .charge(QMAX, (n as f64).sqrt() * per_element_cost * reps, 0.0);
        let vals: Vec<i64> = (1..=n).map(&mut value).collect();
        let mut arg = 1usize;
        for i in 2..=n {
            if vals[i - 1] > vals[arg - 1] {
                arg = i;
            }
        }
        let exact = (arg, vals[arg - 1]);
        if n == 1 {
            return Ok(exact);
        }
        Ok(self.noisy_vote(exact, |rng| {
            // A wrong index, reported with its own (consistent) value.
            let mut wrong = rng.gen_range(1..n);
            if wrong >= exact.0 {
                wrong += 1;
            }
            (wrong, vals[wrong - 1])
        }))
    }

    /// Three-way lexicographic comparison (shorter prefix sorts first).
    /// Charges sqrt(min(|u|, |v|)) query units, so comparisons against an
    /// empty sentinel are free.
    pub fn qcompare(&mut self, u: &[u8], v: &[u8]) -> Ordering {
        let reps = self.repetition_factor();
        let m = u.len().min(v.len()) as f64;
        self.ledger.charge(QCOMPARE, m.sqrt() * reps, 0.0);
        let exact = u.cmp(v);
        self.noisy_vote(exact, |rng| {
            // One of the two wrong outcomes.
            let others: [Ordering; 2] = match exact {
                Ordering::Less => [Ordering::Equal, Ordering::Greater],
                Ordering::Equal => [Ordering::Less, Ordering::Greater],
                Ordering::Greater => [Ordering::Less, Ordering::Equal],
            };
            others[rng.gen_range(0..2)]
        })
    }

    /// Exact substring decision for `pattern` against a symbol source.
    /// `context_count` is the number of dictionary strings behind the text
    /// accessor (its binary search contributes a log factor to the charge).
    ///
    /// Charge: sqrt(T) * ln(sqrt(T/P)) * ln(P) * ln(context) + sqrt(P) *
    /// ln(P)^2, all logs floored at one.
    pub fn is_substring(
        &mut self,
        pattern: &[u8],
        text: &impl SymbolSource,
        context_count: usize,
    ) -> bool {
        let p = pattern.len() as f64;
        let t = text.len() as f64;
        let cost = t.sqrt() * ln_floor((t / p.max(1.0)).sqrt()) * ln_floor(p) * ln_floor(context_count as f64)
            + p.sqrt() * ln_floor(p) * ln_floor(p);
        let reps = self.repetition_factor();
        self.ledger.charge(IS_SUBSTRING, cost * reps, 0.0);
        let exact = kmp_contains(pattern, text);
        self.noisy_vote(exact, |_| !exact)
    }
}

/// Classical exact matcher over the symbol accessor; the separator sentinel
/// never equals a pattern byte, so matches cannot cross string boundaries.
fn kmp_contains(pattern: &[u8], text: &impl SymbolSource) -> bool {
    let m = pattern.len();
    if m == 0 {
        return true;
    }
    if text.len() < m {
        return false;
    }
    // Failure function over the pattern alone.
    let mut fail = vec![0usize; m];
    let mut k = 0;
    for i in 1..m {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut k = 0;
    for idx in 0..text.len() {
        let sym = text.get(idx);
        while k > 0 && sym != pattern[k] as u16 {
            k = fail[k - 1];
        }
        if sym == pattern[k] as u16 {
            k += 1;
            if k == m {
                return true;
            }
        }
    }
    false
}
