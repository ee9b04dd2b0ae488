//! Exact shortest common superstring solving. The pipeline reduces the
//! instance (duplicates and contained strings), builds the pairwise overlap
//! graph with one of two backends, then finds a maximum-weight Hamiltonian
//! path by subset dynamic programming. Large instances route the path search
//! through a nested splitting scheme whose maximum-finding levels are charged
//! to the ledger at their published query costs.
//!
//! Everything here is exponential-time in the number of strings by nature;
//! the solver refuses instances past a hard cap instead of thrashing.

use crate::core_strings::{
    compute_prefix_suffix_hashes, naive_overlap, PrimePool, SCSInstance, HASH_BASE,
    MIN_GRAPH_PRIME, SEPARATOR,
};
use crate::qsim::{Direction, Emulator};
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Sentinel for "no path exists", safe to add weights to without overflow.
pub const NEG_INF: i64 = i64::MIN / 4;
const NEG_INF32: i32 = i32::MIN / 4;
const UNSET: i32 = i32::MIN;

/// Default split parameter for the nested path search.
pub const DEFAULT_ALPHA: f64 = 0.055;
/// Largest instance (after reduction) the exact solver accepts.
pub const EXACT_SOLVE_LIMIT: usize = 24;
/// Smallest instance routed through the nested splitting scheme; below this
/// the solver runs the classical subset recurrence directly.
pub const CASCADE_MIN: usize = 16;
/// Largest instance whose DP table is stored densely.
const DENSE_LIMIT: usize = 16;
/// Largest instance the brute-force oracle accepts (after its reduction).
pub const BRUTE_LIMIT: usize = 9;

/// Ledger key for overlap-graph construction (classical side).
pub const CONSTRUCT_GRAPH: &str = "construct_graph";
/// Ledger key for the nested maximum-finding levels of the path search.
pub const QMAX_CASCADE: &str = "qmax_cascade";
/// Ledger key for the classical small-subset table.
pub const DP_STEP1: &str = "dp_step1";
/// Ledger key for the classical full-subset recurrence on small instances.
pub const DP_FALLBACK: &str = "dp_fallback";

// ---------------------------------------------------------------------------
// Overlap graph
// ---------------------------------------------------------------------------

/// Which construction computes the overlap weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphBackend {
    /// Rolling-hash equality with extremal-index search per pair.
    Hash,
    /// Round-by-round survivor filtering across all pairs at once.
    AllOnes,
}

impl std::str::FromStr for GraphBackend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hash" => Ok(GraphBackend::Hash),
            "allones" => Ok(GraphBackend::AllOnes),
            other => Err(Error::usage(format!(
                "unknown backend {other:?}, expected hash or allones"
            ))),
        }
    }
}

impl std::fmt::Display for GraphBackend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GraphBackend::Hash => "hash",
            GraphBackend::AllOnes => "allones",
        })
    }
}

/// Complete directed graph of maximal suffix-prefix overlaps.
#[derive(Debug, Clone)]
pub struct OverlapGraph {
    n: usize,
    weights: Vec<i64>,
    /// Times the hash backend's confirmation scan caught a false equality
    /// and recomputed the pair directly.
    pub hash_collision_events: u64,
}

impl OverlapGraph {
    /// Wraps a row-major weight matrix (diagonal ignored by the solver).
    pub fn from_weights(n: usize, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != n * n {
            return Err(Error::usage(format!(
                "weight matrix needs {} entries, got {}",
                n * n,
                weights.len()
            )));
        }
        Ok(OverlapGraph {
            n,
            weights,
            hash_collision_events: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Overlap weight from string i to string j, zero-based.
    pub fn w(&self, i: usize, j: usize) -> i64 {
        self.weights[i * self.n + j]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }
}

/// Direct overlap scan that also reports how many byte comparisons it made.
fn counted_overlap(u: &[u8], v: &[u8]) -> (usize, u64) {
    let min = u.len().min(v.len());
    let mut comparisons = 0u64;
    for r in (1..=min).rev() {
        let mut ok = true;
        for k in 0..r {
            comparisons += 1;
            if u[u.len() - r + k] != v[k] {
                ok = false;
                break;
            }
        }
        if ok {
            return (r, comparisons);
        }
    }
    (0, comparisons)
}

/// Drops exact duplicates (keeping first occurrences) and strings contained
/// in another string. Returns the reduced instance plus the kept original
/// indices in order.
pub fn remove_duplicates_and_substrings(
    inst: &SCSInstance,
    emu: &mut Emulator,
) -> (SCSInstance, Vec<usize>) {
    let strings = inst.strings();
    let n = strings.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        if !keep[i] {
            continue;
        }
        for j in i + 1..n {
            if keep[j] && strings[j] == strings[i] {
                keep[j] = false;
            }
        }
    }
    let candidates: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
    let mut kept: Vec<usize> = Vec::new();
    for &i in &candidates {
        if candidates.len() == 1 {
            kept.push(i);
            break;
        }
        // Search for this string inside the separator-joined others; the
        // separator symbol blocks matches from crossing a boundary.
        let mut text: Vec<u16> = Vec::new();
        for &j in &candidates {
            if j == i {
                continue;
            }
            if !text.is_empty() {
                text.push(SEPARATOR);
            }
            text.extend(strings[j].iter().map(|&b| u16::from(b)));
        }
        if !emu.is_substring(&strings[i], &text.as_slice(), candidates.len() - 1) {
            kept.push(i);
        }
    }
    if kept.is_empty() {
        // Only reachable under noise: corrupted containment answers can
        // reject everything, so keep the first longest candidate.
        let mut longest = candidates[0];
        for &i in &candidates {
            if strings[i].len() > strings[longest].len() {
                longest = i;
            }
        }
        kept.push(longest);
    }
    let kept_strings: Vec<Vec<u8>> = kept.iter().map(|&i| strings[i].clone()).collect();
    let reduced = SCSInstance::new(kept_strings).expect("kept set is non-empty");
    (reduced, kept)
}

/// Builds the overlap graph with the requested backend.
pub fn construct_graph(
    inst: &SCSInstance,
    emu: &mut Emulator,
    backend: GraphBackend,
    seed: u64,
) -> Result<OverlapGraph> {
    match backend {
        GraphBackend::Hash => construct_graph_hash(inst, emu, seed),
        GraphBackend::AllOnes => construct_graph_allones(inst, emu),
    }
}

/// Hash backend: per ordered pair, an extremal-index search over hashed
/// suffix-prefix equality, confirmed by a direct comparison with a scan
/// fallback on the (rare) false equality.
pub fn construct_graph_hash(
    inst: &SCSInstance,
    emu: &mut Emulator,
    seed: u64,
) -> Result<OverlapGraph> {
    let strings = inst.strings();
    let n = strings.len();
    if n == 1 {
        return Ok(OverlapGraph {
            n,
            weights: vec![0],
            hash_collision_events: 0,
        });
    }
    let pool = PrimePool::first_above(20 * n * inst.total_len(), MIN_GRAPH_PRIME)?;
    if pool.capped() {
        emu.ledger
            .note(format!("prime pool clamped to {} elements", pool.len()));
    }
    // One fresh prime per ordered pair, drawn up front so an unmaterialized
    // pool is resolved in a single sieve pass.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<usize> = (0..n * n - n).map(|_| rng.gen_range(0..pool.len())).collect();
    let primes = pool.get_many(&draws);

    let noise = emu.noise_enabled();
    let mut weights = vec![0i64; n * n];
    let mut collisions = 0u64;
    let mut pair = 0usize;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let p = primes[pair];
            pair += 1;
            let ctx_i = compute_prefix_suffix_hashes(&strings[i], p, HASH_BASE)?;
            let ctx_j = compute_prefix_suffix_hashes(&strings[j], p, HASH_BASE)?;
            emu.ledger.charge(
                CONSTRUCT_GRAPH,
                0.0,
                (strings[i].len() + strings[j].len()) as f64,
            );
            let min = strings[i].len().min(strings[j].len());
            let found = emu.first_one_search(min + 1, Direction::Descending, |r| {
                crate::core_strings::hash_eq_suffix_prefix(&ctx_i, &ctx_j, r)
                    .expect("overlap argument stays within both strings")
            });
            let mut w = found.unwrap_or(0);
            if !noise {
                // Hash equality is one-sided, so a confirmation scan plus a
                // direct recomputation keeps the matrix exact.
                emu.ledger.charge_calls(CONSTRUCT_GRAPH, 0, 0.0, w as f64);
                if strings[i][strings[i].len() - w..] != strings[j][..w] {
                    collisions += 1;
                    let (true_w, cost) = counted_overlap(&strings[i], &strings[j]);
                    emu.ledger.charge_calls(CONSTRUCT_GRAPH, 0, 0.0, cost as f64);
                    w = true_w;
                }
            }
            weights[i * n + j] = w as i64;
        }
    }
    if collisions > 0 {
        emu.ledger
            .note(format!("hash graph: {collisions} collision fallback(s)"));
    }
    Ok(OverlapGraph {
        n,
        weights,
        hash_collision_events: collisions,
    })
}

/// Survivor backend: for each source string, round r keeps exactly the
/// targets whose true overlap is at least r, so the weights settle to the
/// exact matrix while each round pays one grouped search.
pub fn construct_graph_allones(inst: &SCSInstance, emu: &mut Emulator) -> Result<OverlapGraph> {
    let strings = inst.strings();
    let n = strings.len();
    let mut weights = vec![0i64; n * n];
    let mut true_w: Vec<Option<usize>> = vec![None; n * n];
    let mut classical = 0u64;
    for i in 0..n {
        let mut survivors: Vec<usize> = (1..=n).filter(|&j| j != i + 1).collect();
        let mut r = 1usize;
        while !survivors.is_empty() && r <= strings[i].len() {
            let next = emu.all_ones_search(&survivors, |j| {
                let key = i * n + (j - 1);
                let w = match true_w[key] {
                    Some(w) => w,
                    None => {
                        let (w, cost) = counted_overlap(&strings[i], &strings[j - 1]);
                        classical += cost;
                        true_w[key] = Some(w);
                        w
                    }
                };
                w >= r
            });
            for &j in &next {
                weights[i * n + (j - 1)] = r as i64;
            }
            survivors = next;
            r += 1;
        }
    }
    emu.ledger.charge(CONSTRUCT_GRAPH, 0.0, classical as f64);
    Ok(OverlapGraph {
        n,
        weights,
        hash_collision_events: 0,
    })
}

// ---------------------------------------------------------------------------
// Subset dynamic programming
// ---------------------------------------------------------------------------

/// Split sizes (k1, k4, k2) for the nested path search at the given alpha.
pub fn split_parameters(n: usize, alpha: f64) -> Result<(usize, usize, usize)> {
    if !(alpha > 0.0 && alpha < 1.0) || !alpha.is_finite() {
        return Err(Error::usage(format!("alpha {alpha} outside (0, 1)")));
    }
    let k1 = ((1.0 - alpha) * n as f64 / 4.0).floor() as usize;
    Ok((k1, n / 4, n / 2))
}

/// Visits every subset of {0..n-1} with exactly `s` bits set.
fn subsets_of_size(n: usize, s: usize, mut f: impl FnMut(u32)) {
    if s == 0 || s > n {
        return;
    }
    let limit: u64 = 1 << n;
    let mut mask: u64 = (1 << s) - 1;
    while mask < limit {
        f(mask as u32);
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

/// Visits index tuples choosing `k` of `items.len()` positions in
/// lexicographic order; `f` receives positions into `items`.
fn for_each_combination(len: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > len {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == len - k + (pos - 1) {
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        idx[pos - 1] += 1;
        for q in pos..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

enum Memo {
    Dense(Vec<i32>),
    Sparse(HashMap<(u32, u8, u8), i32>),
}

impl Memo {
    fn get(&self, n: usize, mask: u32, v: usize, u: usize) -> Option<i32> {
        match self {
            Memo::Dense(vec) => {
                let val = vec[(mask as usize * n + v) * n + u];
                (val != UNSET).then_some(val)
            }
            Memo::Sparse(map) => map.get(&(mask, v as u8, u as u8)).copied(),
        }
    }

    fn set(&mut self, n: usize, mask: u32, v: usize, u: usize, val: i32) {
        match self {
            Memo::Dense(vec) => vec[(mask as usize * n + v) * n + u] = val,
            Memo::Sparse(map) => {
                map.insert((mask, v as u8, u as u8), val);
            }
        }
    }
}

/// Exact maximum-weight Hamiltonian path values over subsets of the graph.
///
/// L(Y, v, u) is the heaviest path through exactly the strings in Y that
/// starts at v and ends at u. Small instances evaluate the one-step
/// recurrence directly; instances of at least [`CASCADE_MIN`] strings build
/// a small-subset table first and answer larger subsets by splitting them
/// at the scheme's fixed sizes.
pub struct DpSolver {
    n: usize,
    k1: usize,
    k4: usize,
    k2: usize,
    cascade: bool,
    w32: Vec<i32>,
    memo: Memo,
}

impl DpSolver {
    pub fn new(graph: &OverlapGraph, alpha: f64) -> Result<Self> {
        let n = graph.n();
        if n == 0 {
            return Err(Error::usage("solver needs at least one string"));
        }
        if n > EXACT_SOLVE_LIMIT {
            return Err(Error::usage(format!(
                "exact solving is capped at {EXACT_SOLVE_LIMIT} strings after reduction, got {n}"
            )));
        }
        let (k1, k4, k2) = split_parameters(n, alpha)?;
        let cascade = n >= CASCADE_MIN;
        let memo = if n <= DENSE_LIMIT {
            Memo::Dense(vec![UNSET; (1usize << n) * n * n])
        } else {
            Memo::Sparse(HashMap::new())
        };
        let w32: Vec<i32> = graph.weights().iter().map(|&w| w as i32).collect();
        let mut solver = DpSolver {
            n,
            k1,
            k4,
            k2,
            cascade,
            w32,
            memo,
        };
        if solver.cascade {
            solver.build_step1();
        }
        Ok(solver)
    }

    pub fn split_sizes(&self) -> (usize, usize, usize) {
        (self.k1, self.k4, self.k2)
    }

    /// True when this instance routes through the nested splitting scheme.
    pub fn uses_cascade(&self) -> bool {
        self.cascade
    }

    /// Bottom-up table of all path values on subsets of at most k1 strings.
    fn build_step1(&mut self) {
        let n = self.n;
        for v in 0..n {
            self.memo.set(n, 1 << v, v, v, 0);
        }
        for s in 2..=self.k1 {
            subsets_of_size(n, s, |mask| {
                let mut members = [0usize; 32];
                let mut count = 0;
                let mut bits = mask;
                while bits != 0 {
                    members[count] = bits.trailing_zeros() as usize;
                    count += 1;
                    bits &= bits - 1;
                }
                for &v in &members[..count] {
                    for &u in &members[..count] {
                        if v == u {
                            continue;
                        }
                        let prev = mask & !(1 << u);
                        let mut best = NEG_INF32;
                        let mut ybits = prev;
                        while ybits != 0 {
                            let y = ybits.trailing_zeros() as usize;
                            ybits &= ybits - 1;
                            if let Some(sub) = self.memo.get(self.n, prev, v, y) {
                                if sub != NEG_INF32 {
                                    best = best.max(sub + self.w32[y * self.n + u]);
                                }
                            }
                        }
                        self.memo.set(self.n, mask, v, u, best);
                    }
                }
            });
        }
    }

    fn eval(&mut self, mask: u32, v: usize, u: usize) -> i32 {
        debug_assert!(mask & (1 << v) != 0 && mask & (1 << u) != 0);
        if v == u {
            return if mask.count_ones() == 1 { 0 } else { NEG_INF32 };
        }
        if let Some(val) = self.memo.get(self.n, mask, v, u) {
            return val;
        }
        let s = mask.count_ones() as usize;
        let val = if !self.cascade || s <= self.k1 {
            self.eval_recurrence(mask, v, u)
        } else {
            let k = if s > self.k2 {
                self.k2
            } else if s > self.k4 {
                self.k4
            } else {
                self.k1
            };
            self.eval_split(mask, v, u, k)
        };
        self.memo.set(self.n, mask, v, u, val);
        val
    }

    /// One-step recurrence: peel the path's final vertex.
    fn eval_recurrence(&mut self, mask: u32, v: usize, u: usize) -> i32 {
        let prev = mask & !(1 << u);
        let mut best = NEG_INF32;
        let mut bits = prev;
        while bits != 0 {
            let y = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let sub = self.eval(prev, v, y);
            if sub != NEG_INF32 {
                best = best.max(sub + self.w32[y * self.n + u]);
            }
        }
        best
    }

    /// Split evaluation: a heaviest path through Y from v to u decomposes
    /// at its k-th vertex y into a k-subset path v..y and a path y..u over
    /// the rest, maximized over both choices.
    fn eval_split(&mut self, mask: u32, v: usize, u: usize, k: usize) -> i32 {
        debug_assert!(k >= 2 && (k as u32) < mask.count_ones());
        let mut free = [0usize; 32];
        let mut fcount = 0;
        let mut bits = mask & !(1 << v) & !(1 << u);
        while bits != 0 {
            free[fcount] = bits.trailing_zeros() as usize;
            fcount += 1;
            bits &= bits - 1;
        }
        let mut best = NEG_INF32;
        for_each_combination(fcount, k - 1, |idx| {
            let mut ymask = 1u32 << v;
            for &q in idx {
                ymask |= 1 << free[q];
            }
            let rest = mask & !ymask;
            let mut ybits = ymask;
            while ybits != 0 {
                let y = ybits.trailing_zeros() as usize;
                ybits &= ybits - 1;
                let a = self.eval(ymask, v, y);
                if a == NEG_INF32 {
                    continue;
                }
                let b = self.eval(rest | (1 << y), y, u);
                if b != NEG_INF32 {
                    best = best.max(a + b);
                }
            }
        });
        best
    }

    /// Path value over the one-based member set, NEG_INF when impossible.
    pub fn get_l(&mut self, set: &[usize], v: usize, u: usize) -> Result<i64> {
        let mask = self.set_to_mask(set)?;
        let (v, u) = self.check_pivots(mask, v, u)?;
        let val = self.eval(mask, v, u);
        Ok(if val == NEG_INF32 { NEG_INF } else { i64::from(val) })
    }

    /// Split evaluation pinned to an explicit k, for cross-checking against
    /// the recurrence. One-based like get_l.
    #[cfg(test)]
    pub(crate) fn split_l(&mut self, set: &[usize], v: usize, u: usize, k: usize) -> Result<i64> {
        let mask = self.set_to_mask(set)?;
        let (v, u) = self.check_pivots(mask, v, u)?;
        let s = mask.count_ones() as usize;
        if k < 2 || k >= s {
            return Err(Error::usage(format!("split size {k} invalid for |Y| = {s}")));
        }
        let val = self.eval_split(mask, v, u, k);
        Ok(if val == NEG_INF32 { NEG_INF } else { i64::from(val) })
    }

    fn set_to_mask(&self, set: &[usize]) -> Result<u32> {
        let mut mask = 0u32;
        for &e in set {
            if e == 0 || e > self.n {
                return Err(Error::index(format!(
                    "set member {e} outside 1..={}",
                    self.n
                )));
            }
            mask |= 1 << (e - 1);
        }
        if mask == 0 {
            return Err(Error::usage("member set must be non-empty"));
        }
        Ok(mask)
    }

    fn check_pivots(&self, mask: u32, v: usize, u: usize) -> Result<(usize, usize)> {
        for e in [v, u] {
            if e == 0 || e > self.n || mask & (1 << (e - 1)) == 0 {
                return Err(Error::index(format!("pivot {e} is not in the member set")));
            }
        }
        Ok((v - 1, u - 1))
    }

    /// Best start and end over the full string set, then the path itself.
    /// Returns (path as zero-based indices, total overlap weight).
    pub fn solve(&mut self, emu: &mut Emulator) -> (Vec<usize>, i64) {
        let n = self.n;
        if n == 1 {
            return (vec![0], 0);
        }
        if self.cascade {
            self.charge_cascade(emu);
        } else {
            let nf = n as f64;
            emu.ledger
                .charge(DP_FALLBACK, 0.0, nf.powi(3) * (2f64.powi(n as i32) - 1.0));
        }
        let full = ((1u64 << n) - 1) as u32;
        let mut best = NEG_INF32;
        let mut arg = (0usize, 1usize);
        for v in 0..n {
            for u in 0..n {
                if v == u {
                    continue;
                }
                let val = self.eval(full, v, u);
                if val > best {
                    best = val;
                    arg = (v, u);
                }
            }
        }
        let path = self.reconstruct(full, arg.0, arg.1);
        (path, i64::from(best))
    }

    /// Model cost of the nested maximum-finding levels: each level searches
    /// its subset space with both child evaluations nested inside, and the
    /// classical column accounts for unranking each candidate subset.
    fn charge_cascade(&self, emu: &mut Emulator) {
        let nf = self.n as f64;
        let n1 = binom(self.k4, self.k1) * self.k1 as f64;
        let q1 = n1.sqrt();
        let x1 = n1.sqrt() * nf;
        let n2 = binom(self.k2, self.k4) * self.k4 as f64;
        let q2 = n2.sqrt() * 2.0 * q1;
        let x2 = n2.sqrt() * (nf + 2.0 * x1);
        let n3 = binom(self.n, self.k2) * self.k2 as f64;
        let q3 = n3.sqrt() * 2.0 * q2;
        let x3 = n3.sqrt() * (nf + 2.0 * x2);
        emu.ledger.charge(QMAX_CASCADE, nf * q3, nf * x3);
        let table: f64 = (1..=self.k1).map(|i| binom(self.n, i)).sum();
        emu.ledger.charge(DP_STEP1, 0.0, nf.powi(3) * table);
    }

    /// Backtracks the optimal order by peeling final vertices; every value
    /// needed is either memoized or recomputable on demand.
    fn reconstruct(&mut self, full: u32, v: usize, u: usize) -> Vec<usize> {
        let mut order = vec![u];
        let mut mask = full;
        let mut end = u;
        while mask.count_ones() > 1 {
            let target = self.eval(mask, v, end);
            let prev = mask & !(1 << end);
            let mut chosen = None;
            let mut bits = prev;
            while bits != 0 {
                let y = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let sub = self.eval(prev, v, y);
                if sub != NEG_INF32 && sub + self.w32[y * self.n + end] == target {
                    chosen = Some(y);
                    break;
                }
            }
            let y = chosen.expect("optimal value decomposes by the recurrence");
            order.push(y);
            mask = prev;
            end = y;
        }
        order.reverse();
        order
    }
}

/// Largest instance [`held_karp_order`] accepts (its table is dense).
pub const HELD_KARP_LIMIT: usize = 20;

/// Independent bottom-up maximum-weight path solver, used as the oracle for
/// the nested scheme. Returns (path as zero-based indices, total weight).
pub fn held_karp_order(graph: &OverlapGraph) -> Result<(Vec<usize>, i64)> {
    let n = graph.n();
    if n == 0 {
        return Err(Error::usage("solver needs at least one string"));
    }
    if n > HELD_KARP_LIMIT {
        return Err(Error::usage(format!(
            "dense path table is capped at {HELD_KARP_LIMIT} strings, got {n}"
        )));
    }
    if n == 1 {
        return Ok((vec![0], 0));
    }
    let w32: Vec<i32> = graph.weights().iter().map(|&w| w as i32).collect();
    let size = 1usize << n;
    let mut dp = vec![NEG_INF32; size * n];
    let mut parent = vec![u8::MAX; size * n];
    for v in 0..n {
        dp[(1 << v) * n + v] = 0;
    }
    for mask in 1..size {
        for last in 0..n {
            if mask & (1 << last) == 0 {
                continue;
            }
            let cur = dp[mask * n + last];
            if cur == NEG_INF32 {
                continue;
            }
            for next in 0..n {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let nm = mask | (1 << next);
                let cand = cur + w32[last * n + next];
                if cand > dp[nm * n + next] {
                    dp[nm * n + next] = cand;
                    parent[nm * n + next] = last as u8;
                }
            }
        }
    }
    let full = size - 1;
    let mut best_last = 0;
    for last in 1..n {
        if dp[full * n + last] > dp[full * n + best_last] {
            best_last = last;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    let mut last = best_last;
    loop {
        order.push(last);
        let p = parent[mask * n + last];
        if p == u8::MAX {
            break;
        }
        mask &= !(1 << last);
        last = p as usize;
    }
    order.reverse();
    Ok((order, i64::from(dp[full * n + best_last])))
}

// ---------------------------------------------------------------------------
// End-to-end solving
// ---------------------------------------------------------------------------

/// Merges the ordered strings, eating each overlap once.
pub fn construct_superstring_by_path(
    strings: &[Vec<u8>],
    path: &[usize],
    graph: &OverlapGraph,
) -> Vec<u8> {
    let mut t = strings[path[0]].clone();
    for win in path.windows(2) {
        // Noisy backends can report overlaps longer than the target string;
        // clamp so the merge stays in bounds and validation catches the lie.
        let r = (graph.w(win[0], win[1]) as usize).min(strings[win[1]].len());
        t.extend_from_slice(&strings[win[1]][r..]);
    }
    t
}

/// Result of one full pipeline run.
#[derive(Debug, Clone)]
pub struct ScsSolution {
    pub superstring: Vec<u8>,
    /// Original-instance indices of the reduced strings, in merge order.
    pub order: Vec<usize>,
    /// Total overlap along the merge order.
    pub overlap_weight: i64,
    pub hash_collision_events: u64,
}

/// Reduce, build the graph, solve the path problem, merge.
pub fn solve_scs(
    inst: &SCSInstance,
    emu: &mut Emulator,
    backend: GraphBackend,
    alpha: f64,
    seed: u64,
) -> Result<ScsSolution> {
    let (kept, map) = remove_duplicates_and_substrings(inst, emu);
    let graph = construct_graph(&kept, emu, backend, seed)?;
    let mut solver = DpSolver::new(&graph, alpha)?;
    let (path, weight) = solver.solve(emu);
    let superstring = construct_superstring_by_path(kept.strings(), &path, &graph);
    Ok(ScsSolution {
        superstring,
        order: path.iter().map(|&i| map[i]).collect(),
        overlap_weight: weight,
        hash_collision_events: graph.hash_collision_events,
    })
}

/// True when every input string occurs in `t`.
pub fn validate_superstring(strings: &[Vec<u8>], t: &[u8]) -> bool {
    strings.iter().all(|s| contains_slice(t, s))
}

fn contains_slice(text: &[u8], pattern: &[u8]) -> bool {
    if pattern.is_empty() {
        return true;
    }
    if pattern.len() > text.len() {
        return false;
    }
    text.windows(pattern.len()).any(|w| w == pattern)
}

/// Exhaustive oracle: drops contained strings, then merges every
/// permutation pairwise and keeps the first shortest result.
pub fn brute_force_scs(strings: &[Vec<u8>]) -> Result<Vec<u8>> {
    if strings.is_empty() {
        return Err(Error::usage("brute force needs at least one string"));
    }
    let mut kept: Vec<&[u8]> = Vec::new();
    'outer: for (i, s) in strings.iter().enumerate() {
        for (j, t) in strings.iter().enumerate() {
            if i != j
                && contains_slice(t, s)
                && (s.len() < t.len() || (s.len() == t.len() && j < i))
            {
                continue 'outer;
            }
        }
        kept.push(s);
    }
    if kept.len() > BRUTE_LIMIT {
        return Err(Error::usage(format!(
            "brute force is capped at {BRUTE_LIMIT} strings after reduction, got {}",
            kept.len()
        )));
    }
    let k = kept.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best: Option<Vec<u8>> = None;
    heap_permutations(&mut perm, |p| {
        let mut t: Vec<u8> = kept[p[0]].to_vec();
        for win in p.windows(2) {
            let r = naive_overlap(kept[win[0]], kept[win[1]]);
            t.extend_from_slice(&kept[win[1]][r..]);
        }
        if best.as_ref().map_or(true, |b| t.len() < b.len()) {
            best = Some(t);
        }
    });
    Ok(best.expect("at least one permutation exists"))
}

/// Visits every permutation of `items` in place.
fn heap_permutations(items: &mut [usize], mut f: impl FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn instance(strs: &[&str]) -> SCSInstance {
        SCSInstance::from_strs(strs).unwrap()
    }

    fn graph_of(strs: &[&str], backend: GraphBackend) -> OverlapGraph {
        let mut emu = Emulator::exact();
        construct_graph(&instance(strs), &mut emu, backend, 11).unwrap()
    }

    #[test]
    fn both_backends_match_the_worked_matrix() {
        for backend in [GraphBackend::Hash, GraphBackend::AllOnes] {
            let g = graph_of(&["CAT", "ATG", "TGA"], backend);
            assert_eq!(g.w(0, 1), 2, "{backend}");
            assert_eq!(g.w(1, 2), 2, "{backend}");
            assert_eq!(g.w(2, 0), 0, "{backend}");
            assert_eq!(g.w(0, 2), 1, "{backend}");
            assert_eq!(g.w(1, 0), 0, "{backend}");
            assert_eq!(g.w(2, 1), 1, "{backend}");
            assert_eq!(g.hash_collision_events, 0, "{backend}");
        }
    }

    #[test]
    fn path_value_matches_worked_cases() {
        let g = graph_of(&["CAT", "ATG", "TGA"], GraphBackend::Hash);
        let mut solver = DpSolver::new(&g, DEFAULT_ALPHA).unwrap();
        assert_eq!(solver.get_l(&[1, 2, 3], 1, 3).unwrap(), 4);
        assert_eq!(solver.get_l(&[1], 1, 1).unwrap(), 0);
        assert_eq!(solver.get_l(&[1, 2], 1, 1).unwrap(), NEG_INF);
        assert!(solver.get_l(&[1, 2], 3, 1).is_err());

        let g = graph_of(&["ab", "ba"], GraphBackend::Hash);
        let mut solver = DpSolver::new(&g, DEFAULT_ALPHA).unwrap();
        assert_eq!(solver.get_l(&[1, 2], 1, 2).unwrap(), 1);
    }

    #[test]
    fn solve_matches_worked_cases() {
        let mut emu = Emulator::exact();
        let sol = solve_scs(
            &instance(&["CAT", "ATG", "TGA"]),
            &mut emu,
            GraphBackend::Hash,
            DEFAULT_ALPHA,
            3,
        )
        .unwrap();
        assert_eq!(sol.superstring, b"CATGA");
        assert_eq!(sol.order, vec![0, 1, 2]);
        assert_eq!(sol.overlap_weight, 4);

        let mut emu = Emulator::exact();
        let sol = solve_scs(
            &instance(&["ab", "ba"]),
            &mut emu,
            GraphBackend::Hash,
            DEFAULT_ALPHA,
            3,
        )
        .unwrap();
        assert_eq!(sol.superstring, b"aba");
        assert_eq!(sol.order, vec![0, 1]);
    }

    #[test]
    fn reduction_matches_worked_case() {
        let mut emu = Emulator::exact();
        let (kept, map) = remove_duplicates_and_substrings(&instance(&["ab", "ab", "b"]), &mut emu);
        assert_eq!(kept.strings(), &[b"ab".to_vec()]);
        assert_eq!(map, vec![0]);
    }

    #[test]
    fn brute_force_matches_worked_case() {
        let strs: Vec<Vec<u8>> = vec![b"aa".to_vec(), b"ab".to_vec(), b"ba".to_vec()];
        assert_eq!(brute_force_scs(&strs).unwrap(), b"aaba");
    }

    #[test]
    fn split_parameters_match_worked_cases() {
        assert_eq!(split_parameters(16, DEFAULT_ALPHA).unwrap(), (3, 4, 8));
        // Table sizes: subsets of at most k1 = 3 members out of 16.
        let total: usize = (1..=3).map(|s| binom(16, s) as usize).sum();
        assert_eq!(total, 696);
        assert_eq!(split_parameters(4, DEFAULT_ALPHA).unwrap().0, 0);
        assert!(split_parameters(4, 0.0).is_err());
        assert!(split_parameters(4, 1.0).is_err());
    }

    #[test]
    fn small_instances_use_the_direct_recurrence() {
        let g = graph_of(&["ab", "ba", "bb", "aa"], GraphBackend::Hash);
        let solver = DpSolver::new(&g, DEFAULT_ALPHA).unwrap();
        assert!(!solver.uses_cascade());
    }

    #[test]
    fn solver_rejects_oversized_instances() {
        let n = EXACT_SOLVE_LIMIT + 1;
        let g = OverlapGraph::from_weights(n, vec![0; n * n]).unwrap();
        assert!(DpSolver::new(&g, DEFAULT_ALPHA).is_err());
    }

    #[test]
    fn cascade_matches_held_karp_at_sixteen() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        let strings: Vec<Vec<u8>> = (0..16)
            .map(|_| (0..10).map(|_| b'a' + rng.gen_range(0..2)).collect())
            .collect();
        let inst = SCSInstance::new(strings).unwrap();
        let mut emu = Emulator::exact();
        let (kept, _) = remove_duplicates_and_substrings(&inst, &mut emu);
        assert_eq!(kept.n(), 16, "seed must give sixteen distinct strings");
        let graph = construct_graph(&kept, &mut emu, GraphBackend::Hash, 7).unwrap();
        let mut solver = DpSolver::new(&graph, DEFAULT_ALPHA).unwrap();
        assert!(solver.uses_cascade());
        let (path, weight) = solver.solve(&mut emu);
        let (hk_path, hk_weight) = held_karp_order(&graph).unwrap();
        assert_eq!(weight, hk_weight);
        let t = construct_superstring_by_path(kept.strings(), &path, &graph);
        let t_hk = construct_superstring_by_path(kept.strings(), &hk_path, &graph);
        assert_eq!(t.len(), t_hk.len());
        assert!(validate_superstring(kept.strings(), &t));
        assert!(emu.ledger.get(QMAX_CASCADE).quantum_cost > 0.0);
        assert!(emu.ledger.get(DP_STEP1).classical_cost > 0.0);
    }

    fn arb_instance(max_n: usize, max_len: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
        proptest::collection::vec(
            proptest::collection::vec(b'a'..=b'b', 1..=max_len),
            1..=max_n,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn backends_agree(strs in arb_instance(6, 6)) {
            let inst = SCSInstance::new(strs).unwrap();
            let mut emu = Emulator::exact();
            let hash = construct_graph(&inst, &mut emu, GraphBackend::Hash, 5).unwrap();
            let ones = construct_graph(&inst, &mut emu, GraphBackend::AllOnes, 5).unwrap();
            prop_assert_eq!(hash.weights(), ones.weights());
        }

        #[test]
        fn counted_overlap_matches_reference(u in proptest::collection::vec(b'a'..=b'c', 1..12),
                                             v in proptest::collection::vec(b'a'..=b'c', 1..12)) {
            prop_assert_eq!(counted_overlap(&u, &v).0, naive_overlap(&u, &v));
        }

        #[test]
        fn solution_is_valid_optimal_and_consistent(strs in arb_instance(6, 5)) {
            let inst = SCSInstance::new(strs.clone()).unwrap();
            let mut emu = Emulator::exact();
            let sol = solve_scs(&inst, &mut emu, GraphBackend::Hash, DEFAULT_ALPHA, 9).unwrap();
            // Contains every original string, including removed duplicates.
            prop_assert!(validate_superstring(&strs, &sol.superstring));
            // Length identity against the reduced instance.
            let (kept, _) = remove_duplicates_and_substrings(&inst, &mut Emulator::exact());
            let total: usize = kept.total_len();
            prop_assert_eq!(sol.superstring.len() as i64, total as i64 - sol.overlap_weight);
            // Optimal per the exhaustive oracle.
            let brute = brute_force_scs(&strs).unwrap();
            prop_assert_eq!(sol.superstring.len(), brute.len());
            // The independent bottom-up solver lands on the same length.
            let graph = construct_graph(&kept, &mut Emulator::exact(), GraphBackend::Hash, 9).unwrap();
            let (hk_path, _) = held_karp_order(&graph).unwrap();
            let hk = construct_superstring_by_path(kept.strings(), &hk_path, &graph);
            prop_assert_eq!(hk.len(), brute.len());
        }

        #[test]
        fn split_agrees_with_recurrence_for_every_k(
            strs in arb_instance(8, 4),
            pivots in (0usize..8, 0usize..8),
        ) {
            let inst = SCSInstance::new(strs).unwrap();
            let n = inst.n();
            let mut emu = Emulator::exact();
            let g = construct_graph(&inst, &mut emu, GraphBackend::Hash, 2).unwrap();
            let mut solver = DpSolver::new(&g, DEFAULT_ALPHA).unwrap();
            let full: Vec<usize> = (1..=n).collect();
            let v = pivots.0 % n + 1;
            let u = pivots.1 % n + 1;
            if v != u {
                let direct = solver.get_l(&full, v, u).unwrap();
                for k in 2..n {
                    prop_assert_eq!(solver.split_l(&full, v, u, k).unwrap(), direct);
                }
            }
        }
    }
}
