//! Named verification suites. Each suite binds one part of the toolkit to an
//! independent oracle and reports one OK or FAIL line per check; `all` chains
//! every suite in order.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Binomial, DiscreteCDF};

use crate::core_strings::{
    compute_prefix_suffix_hashes, hash_eq_suffix_prefix, naive_overlap, PrimePool, SCSInstance,
    HASH_BASE,
};
use crate::harness::bench::{
    fit_graph, fit_tao, run_graph_bench, run_tao_bench, BenchReport, GRAPH_LENS, GRAPH_L_BAND,
    GRAPH_NS, GRAPH_N_BAND, TAO_MS, TAO_NS,
};
use crate::harness::gen::{gen_scs, gen_tao, random_string, GenSpec, ProblemKind};
use crate::harness::{parallel_map, CheckReport};
use crate::qsim::{Emulator, NoiseConfig};
use crate::scs::{
    brute_force_scs, construct_graph, construct_superstring_by_path, held_karp_order,
    remove_duplicates_and_substrings, solve_scs, validate_superstring, DpSolver, GraphBackend,
    OverlapGraph, DEFAULT_ALPHA,
};
use crate::segment_tree::SegmentTree;
use crate::suffix_array::{naive_suffix_sort, suffix_array};
use crate::tao::{assemble, feasibility_oracle, validate_assembly};
use crate::{Error, Result};

/// Every runnable suite, in `all` execution order.
pub const SUITE_NAMES: &[&str] = &[
    "scs-small",
    "path-identity",
    "split-invariance",
    "graph-backends",
    "tao-correct",
    "segtree",
    "suffix-array",
    "fingerprint",
    "ledger-graph",
    "ledger-tao",
    "noise-trend",
    "determinism",
];

const SCS_SMALL_BUDGET: f64 = 60.0;
const SPLIT_BUDGET: f64 = 120.0;
const TAO_BUDGET: f64 = 60.0;
const LEDGER_BUDGET: f64 = 600.0;

/// Runs one suite by name, or every suite for "all".
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<CheckReport>> {
    match name {
        "scs-small" => scs_small(seed),
        "path-identity" => path_identity(seed),
        "split-invariance" => split_invariance(seed),
        "graph-backends" => graph_backends(seed),
        "tao-correct" => tao_correct(seed),
        "segtree" => segtree(seed),
        "suffix-array" => suffix_array_suite(seed),
        "fingerprint" => fingerprint(seed),
        "ledger-graph" => ledger_graph(seed),
        "ledger-tao" => ledger_tao(seed),
        "noise-trend" => noise_trend(seed),
        "determinism" => determinism(seed),
        "all" => {
            let mut out = Vec::new();
            for suite in SUITE_NAMES {
                out.extend(run_suite(suite, seed)?);
            }
            Ok(out)
        }
        other => Err(Error::usage(format!(
            "unknown suite {other:?}; expected all or one of: {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}

fn report(suite: &str, name: &str, passed: bool, detail: impl Into<String>) -> CheckReport {
    CheckReport {
        suite: suite.into(),
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Collapses per-case outcomes (None = pass) into one check line.
fn summarize(suite: &str, name: &str, outcomes: Vec<Option<String>>) -> CheckReport {
    let total = outcomes.len();
    let failures: Vec<String> = outcomes.into_iter().flatten().collect();
    match failures.first() {
        None => report(suite, name, true, format!("{total}/{total} cases passed")),
        Some(first) => report(
            suite,
            name,
            false,
            format!("{} of {total} cases failed, first: {first}", failures.len()),
        ),
    }
}

fn runtime_check(suite: &str, start: Instant, budget: f64) -> CheckReport {
    let elapsed = start.elapsed().as_secs_f64();
    report(
        suite,
        "runtime",
        elapsed < budget,
        format!("completed in {elapsed:.1}s (budget {budget:.0}s)"),
    )
}

/// Deterministic per-case seed derivation.
fn mix(seed: u64, tag: u64, t: u64) -> u64 {
    let mut x = seed
        ^ tag.wrapping_mul(0xA24B_AED4_963E_E407)
        ^ t.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Overlap graph with a directly computed weight matrix.
fn naive_graph(strings: &[Vec<u8>]) -> Result<OverlapGraph> {
    let n = strings.len();
    let mut weights = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                weights[i * n + j] = naive_overlap(&strings[i], &strings[j]) as i64;
            }
        }
    }
    OverlapGraph::from_weights(n, weights)
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Full pipeline against the brute-force optimum on small instances.
fn scs_small(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "scs-small";
    const TRIALS: usize = 200;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 1, 0));
    let mut cases = Vec::with_capacity(TRIALS);
    for t in 0..TRIALS {
        let alphabet: u16 = if t % 2 == 0 { 2 } else { 4 };
        let n = rng.gen_range(2..=7);
        let mut strings = Vec::with_capacity(n);
        for _ in 0..n {
            let len = rng.gen_range(1..=6);
            strings.push(random_string(&mut rng, len, alphabet));
        }
        cases.push(strings);
    }
    let outcomes: Result<Vec<(Option<String>, Option<String>)>> =
        parallel_map(TRIALS, |t| -> Result<(Option<String>, Option<String>)> {
            let strings = &cases[t];
            let inst = SCSInstance::new(strings.clone())?;
            let mut emu = Emulator::exact();
            let sol = solve_scs(
                &inst,
                &mut emu,
                GraphBackend::Hash,
                DEFAULT_ALPHA,
                mix(seed, 1, 1 + t as u64),
            )?;
            let best = brute_force_scs(strings)?;
            let len_fail = (sol.superstring.len() != best.len()).then(|| {
                format!(
                    "case {t}: solver found length {} but the optimum is {}",
                    sol.superstring.len(),
                    best.len()
                )
            });
            let valid_fail = (!validate_superstring(strings, &sol.superstring))
                .then(|| format!("case {t}: output is not a superstring of its input"));
            Ok((len_fail, valid_fail))
        })
        .into_iter()
        .collect();
    let outcomes = outcomes?;
    let lens = outcomes.iter().map(|o| o.0.clone()).collect();
    let valids = outcomes.into_iter().map(|o| o.1).collect();
    Ok(vec![
        summarize(SUITE, "optimal-length", lens),
        summarize(SUITE, "valid-superstring", valids),
        runtime_check(SUITE, start, SCS_SMALL_BUDGET),
    ])
}

/// Merge-length identities for arbitrary and Hamiltonian paths.
fn path_identity(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "path-identity";
    const TRIALS: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 2, 0));
    let mut merges = Vec::with_capacity(TRIALS);
    let mut hams = Vec::with_capacity(TRIALS);
    for t in 0..TRIALS {
        let alphabet: u16 = if t % 2 == 0 { 2 } else { 4 };
        let n = rng.gen_range(2..=8);
        let mut strings = Vec::with_capacity(n);
        for _ in 0..n {
            let len = rng.gen_range(1..=8);
            strings.push(random_string(&mut rng, len, alphabet));
        }
        let inst = SCSInstance::new(strings)?;
        let mut emu = Emulator::exact();
        let (reduced, _) = remove_duplicates_and_substrings(&inst, &mut emu);
        let strings = reduced.strings();
        let graph = naive_graph(strings)?;
        let mut nodes: Vec<usize> = (0..strings.len()).collect();
        nodes.shuffle(&mut rng);
        let take = rng.gen_range(1..=nodes.len());
        let path = &nodes[..take];

        let merged = construct_superstring_by_path(strings, path, &graph);
        let piece_total: usize = path.iter().map(|&v| strings[v].len()).sum();
        let w: i64 = path.windows(2).map(|p| graph.w(p[0], p[1])).sum();
        merges.push((merged.len() as i64 != piece_total as i64 - w).then(|| {
            format!(
                "case {t}: merged {} symbols, expected {piece_total} - {w}",
                merged.len()
            )
        }));

        let full = construct_superstring_by_path(strings, &nodes, &graph);
        let w_full: i64 = nodes.windows(2).map(|p| graph.w(p[0], p[1])).sum();
        hams.push(
            (full.len() as i64 != reduced.total_len() as i64 - w_full).then(|| {
                format!(
                    "case {t}: Hamiltonian merge {} symbols, expected {} - {w_full}",
                    full.len(),
                    reduced.total_len()
                )
            }),
        );
    }
    Ok(vec![
        summarize(SUITE, "merge-identity", merges),
        summarize(SUITE, "hamiltonian-identity", hams),
    ])
}

/// Nested-split dynamic program against exhaustive subset recursion.
fn split_invariance(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "split-invariance";
    const TRIALS: usize = 50;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 3, 0));
    let mut cases = Vec::with_capacity(TRIALS);
    for t in 0..TRIALS {
        let n = [8, 12, 16][t % 3];
        let mut strings = Vec::with_capacity(n);
        for _ in 0..n {
            let len = rng.gen_range(4..=10);
            strings.push(random_string(&mut rng, len, 2));
        }
        cases.push(strings);
    }
    let outcomes: Result<Vec<(Option<String>, bool)>> =
        parallel_map(TRIALS, |t| -> Result<(Option<String>, bool)> {
            let graph = naive_graph(&cases[t])?;
            let mut solver = DpSolver::new(&graph, DEFAULT_ALPHA)?;
            let cascade = solver.uses_cascade();
            let mut emu = Emulator::exact();
            let (path, value) = solver.solve(&mut emu);
            let (_, reference) = held_karp_order(&graph)?;
            let n = graph.n();
            let mut seen = vec![false; n];
            let perm_ok = path.len() == n
                && path
                    .iter()
                    .all(|&v| v < n && !std::mem::replace(&mut seen[v], true));
            let path_w: i64 = path.windows(2).map(|p| graph.w(p[0], p[1])).sum();
            let fail = if value != reference {
                Some(format!(
                    "case {t} (n = {n}): solver value {value} differs from the exhaustive value {reference}"
                ))
            } else if !perm_ok || path_w != value {
                Some(format!("case {t} (n = {n}): reported path does not realize its value"))
            } else {
                None
            };
            Ok((fail, cascade))
        })
        .into_iter()
        .collect();
    let outcomes = outcomes?;
    let cascades = outcomes.iter().filter(|o| o.1).count();
    let values = outcomes.into_iter().map(|o| o.0).collect();
    Ok(vec![
        summarize(SUITE, "value-agreement", values),
        report(
            SUITE,
            "cascade-exercised",
            cascades > 0,
            format!("{cascades}/{TRIALS} runs used the nested split"),
        ),
        runtime_check(SUITE, start, SPLIT_BUDGET),
    ])
}

/// Both graph backends against the naive overlap matrix, plus the collision
/// fallback budget of the hash backend.
fn graph_backends(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "graph-backends";
    const TRIALS: usize = 500;
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 4, 0));
    let mut cases = Vec::with_capacity(TRIALS);
    for t in 0..TRIALS {
        let alphabet: u16 = if t % 2 == 0 { 2 } else { 4 };
        let n = rng.gen_range(2..=32);
        let maxlen = 60.min(2000 / n);
        let mut strings = Vec::with_capacity(n);
        for _ in 0..n {
            let len = rng.gen_range(1..=maxlen);
            strings.push(random_string(&mut rng, len, alphabet));
        }
        cases.push(strings);
    }
    let outcomes: Result<Vec<(Option<String>, u64)>> =
        parallel_map(TRIALS, |t| -> Result<(Option<String>, u64)> {
            let inst = SCSInstance::new(cases[t].clone())?;
            let mut e_hash = Emulator::exact();
            let hash = construct_graph(
                &inst,
                &mut e_hash,
                GraphBackend::Hash,
                mix(seed, 4, 1 + t as u64),
            )?;
            let mut e_all = Emulator::exact();
            let all = construct_graph(&inst, &mut e_all, GraphBackend::AllOnes, 0)?;
            let strings = inst.strings();
            let mut fail = None;
            'pairs: for i in 0..strings.len() {
                for j in 0..strings.len() {
                    if i == j {
                        continue;
                    }
                    let expect = naive_overlap(&strings[i], &strings[j]) as i64;
                    if hash.w(i, j) != expect || all.w(i, j) != expect {
                        fail = Some(format!(
                            "case {t}: pair ({i}, {j}) weights hash {} / allones {} vs naive {expect}",
                            hash.w(i, j),
                            all.w(i, j)
                        ));
                        break 'pairs;
                    }
                }
            }
            Ok((fail, hash.hash_collision_events))
        })
        .into_iter()
        .collect();
    let outcomes = outcomes?;
    let collisions: u64 = outcomes.iter().map(|o| o.1).sum();
    let agreements = outcomes.into_iter().map(|o| o.0).collect();
    Ok(vec![
        summarize(SUITE, "backend-agreement", agreements),
        report(
            SUITE,
            "collision-budget",
            collisions < 5,
            format!("{collisions} hash fallback event(s) across {TRIALS} instances (budget 5)"),
        ),
    ])
}

/// Planted instances must assemble; random verdicts must match the oracle.
fn tao_correct(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "tao-correct";
    const TRIALS: usize = 500;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 5, 0));
    let mut planted = Vec::with_capacity(TRIALS);
    let mut random = Vec::with_capacity(TRIALS);
    for t in 0..TRIALS {
        planted.push(GenSpec {
            kind: ProblemKind::Tao,
            n: rng.gen_range(1..=8),
            min_len: 1,
            max_len: 6,
            alphabet: if t % 2 == 0 { 2 } else { 4 },
            seed: mix(seed, 5, 1 + t as u64),
            text_len: rng.gen_range(5..=60),
            planted: true,
        });
        random.push(GenSpec {
            kind: ProblemKind::Tao,
            n: rng.gen_range(1..=6),
            min_len: 1,
            max_len: 5,
            alphabet: 2,
            seed: mix(seed, 5, 1001 + t as u64),
            text_len: rng.gen_range(1..=60),
            planted: false,
        });
    }
    let planted_out: Result<Vec<Option<String>>> =
        parallel_map(TRIALS, |t| -> Result<Option<String>> {
            let inst = gen_tao(&planted[t])?;
            let mut emu = Emulator::exact();
            match assemble(&inst, &mut emu) {
                Ok(asm) if validate_assembly(&inst, &asm) => Ok(None),
                Ok(_) => Ok(Some(format!("case {t}: assembly failed validation"))),
                Err(Error::Infeasible(_)) => Ok(Some(format!(
                    "case {t}: planted instance reported infeasible"
                ))),
                Err(e) => Err(e),
            }
        })
        .into_iter()
        .collect();
    let random_out: Result<Vec<Option<String>>> =
        parallel_map(TRIALS, |t| -> Result<Option<String>> {
            let inst = gen_tao(&random[t])?;
            let mut emu = Emulator::exact();
            let verdict = match assemble(&inst, &mut emu) {
                Ok(asm) => Some(asm),
                Err(Error::Infeasible(_)) => None,
                Err(e) => return Err(e),
            };
            let witness = feasibility_oracle(&inst)?;
            Ok(match (&verdict, &witness) {
                (Some(a), Some(w)) => {
                    if a != w {
                        Some(format!("case {t}: assembly differs from the oracle witness"))
                    } else if !validate_assembly(&inst, a) {
                        Some(format!("case {t}: assembly failed validation"))
                    } else {
                        None
                    }
                }
                (None, None) => None,
                (Some(_), None) => Some(format!(
                    "case {t}: solver assembled a text the oracle rejects"
                )),
                (None, Some(_)) => Some(format!("case {t}: solver rejected a feasible text")),
            })
        })
        .into_iter()
        .collect();
    Ok(vec![
        summarize(SUITE, "planted-assembles", planted_out?),
        summarize(SUITE, "oracle-agreement", random_out?),
        runtime_check(SUITE, start, TAO_BUDGET),
    ])
}

/// Lazy segment tree against the sequential strict-max overwrite model.
fn segtree(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "segtree";
    const OPS: usize = 10_000;
    const LEN: usize = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 6, 0));
    let mut tree = SegmentTree::construct(&vec![(0, -1); LEN])?;
    let mut model = vec![(0i64, -1i64); LEN];
    let mut fail: Option<String> = None;
    let mut sweeps = 0usize;
    for op in 0..OPS {
        let i = rng.gen_range(1..=LEN);
        let j = rng.gen_range(i..=LEN);
        let x = rng.gen_range(0..=30i64);
        let y = op as i64;
        tree.update(i, j, x, y)?;
        for q in i..=j {
            if x > model[q - 1].0 {
                model[q - 1] = (x, y);
            }
        }
        if op % 50 == 49 {
            tree.push();
            sweeps += 1;
            for q in 1..=LEN {
                let got = tree.request(q)?;
                if got != model[q - 1] && fail.is_none() {
                    fail = Some(format!(
                        "op {op}: position {q} holds {got:?} but the model holds {:?}",
                        model[q - 1]
                    ));
                }
            }
        }
    }
    let detail = match &fail {
        None => format!("{OPS} random updates matched the model across {sweeps} sweeps"),
        Some(d) => d.clone(),
    };
    Ok(vec![report(SUITE, "model-agreement", fail.is_none(), detail)])
}

/// Suffix array construction against a naive comparison sort.
fn suffix_array_suite(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "suffix-array";
    const TRIALS: usize = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 7, 0));
    let mut texts = Vec::with_capacity(TRIALS);
    for t in 0..TRIALS {
        let alphabet: u16 = [2, 4, 26, 1][t % 4];
        let len = if t % 25 == 0 {
            2000
        } else {
            rng.gen_range(1..=2000)
        };
        texts.push(random_string(&mut rng, len, alphabet));
    }
    let outcomes = parallel_map(TRIALS, |t| {
        (suffix_array(&texts[t]) != naive_suffix_sort(&texts[t])).then(|| {
            format!(
                "case {t}: suffix array diverges from the naive sort (length {})",
                texts[t].len()
            )
        })
    });
    Ok(vec![summarize(SUITE, "naive-agreement", outcomes)])
}

/// False-equality rate of the rolling hash on random unequal pairs, with the
/// pool sized by the published error analysis.
fn fingerprint(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "fingerprint";
    const PAIRS: usize = 100_000;
    const MAX_LEN: usize = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 8, 0));
    let mut pools = Vec::with_capacity(MAX_LEN);
    for len in 1..=MAX_LEN {
        pools.push(PrimePool::first(20 * len)?);
    }
    let mut false_eq = 0usize;
    for t in 0..PAIRS {
        let alphabet: u16 = [2, 4, 26][t % 3];
        let len = rng.gen_range(1..=MAX_LEN);
        let u = random_string(&mut rng, len, alphabet);
        let mut v = random_string(&mut rng, len, alphabet);
        while v == u {
            v = random_string(&mut rng, len, alphabet);
        }
        let pool = &pools[len - 1];
        let p = pool.get(rng.gen_range(0..pool.len()));
        let cu = compute_prefix_suffix_hashes(&u, p, HASH_BASE)?;
        let cv = compute_prefix_suffix_hashes(&v, p, HASH_BASE)?;
        if hash_eq_suffix_prefix(&cu, &cv, len)? {
            false_eq += 1;
        }
    }
    let rate = false_eq as f64 / PAIRS as f64;
    Ok(vec![report(
        SUITE,
        "false-equality-rate",
        rate <= 0.05,
        format!("{false_eq} false equalities in {PAIRS} unequal pairs (rate {rate:.5}, bound 0.05)"),
    )])
}

/// Graph-stage charge exponents fitted over the default grid.
fn ledger_graph(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "ledger-graph";
    let start = Instant::now();
    let rows = run_graph_bench(GRAPH_NS, GRAPH_LENS, GraphBackend::Hash, mix(seed, 9, 0))?;
    let fit = fit_graph(&rows)?;
    let n = &fit.n_exponent;
    let l = &fit.l_exponent;
    Ok(vec![
        report(
            SUITE,
            "n-exponent",
            n.value >= GRAPH_N_BAND.0 && n.value <= GRAPH_N_BAND.1,
            format!(
                "fitted {:.3} (95% CI [{:.3}, {:.3}]) against band [{}, {}] on {} points",
                n.value, n.ci_low, n.ci_high, GRAPH_N_BAND.0, GRAPH_N_BAND.1, fit.points_used
            ),
        ),
        report(
            SUITE,
            "l-exponent",
            l.value >= GRAPH_L_BAND.0 && l.value <= GRAPH_L_BAND.1,
            format!(
                "fitted {:.3} (95% CI [{:.3}, {:.3}]) against band [{}, {}] on {} points",
                l.value, l.ci_low, l.ci_high, GRAPH_L_BAND.0, GRAPH_L_BAND.1, fit.points_used
            ),
        ),
        runtime_check(SUITE, start, LEDGER_BUDGET),
    ])
}

/// Comparison charge of the long-array build against its published shape.
fn ledger_tao(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "ledger-tao";
    let start = Instant::now();
    let rows = run_tao_bench(TAO_MS, TAO_NS, mix(seed, 10, 0))?;
    let fit = fit_tao(&rows)?;
    Ok(vec![
        report(
            SUITE,
            "qcompare-band",
            fit.within_band,
            format!(
                "ratios span [{:.3}, {:.3}] around constant {:.3} (allowed factor {:.0}) on {} points",
                fit.min_ratio, fit.max_ratio, fit.constant, fit.band_factor, fit.points_used
            ),
        ),
        runtime_check(SUITE, start, LEDGER_BUDGET),
    ])
}

/// Failure rate under noisy subroutines must not increase with the number of
/// majority-vote repetitions.
fn noise_trend(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "noise-trend";
    const KS: [u32; 4] = [1, 3, 5, 7];
    const TRIALS: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 11, 0));
    let mut instances = Vec::with_capacity(5);
    for _ in 0..5 {
        let mut strings = Vec::with_capacity(3);
        for _ in 0..3 {
            let len = rng.gen_range(2..=4);
            strings.push(random_string(&mut rng, len, 2));
        }
        let opt = brute_force_scs(&strings)?.len();
        instances.push((SCSInstance::new(strings)?, opt));
    }
    let mut flags: Vec<Vec<bool>> = Vec::with_capacity(KS.len());
    for &k in &KS {
        flags.push(parallel_map(TRIALS, |t| {
            let (inst, opt) = &instances[t % instances.len()];
            let cfg = NoiseConfig {
                enabled: true,
                per_call_failure_probability: 0.1,
                rng_seed: mix(seed, 1000 + k as u64, t as u64),
                repetitions: k,
            };
            let mut emu = match Emulator::with_noise(&cfg) {
                Ok(e) => e,
                Err(_) => return true,
            };
            match solve_scs(inst, &mut emu, GraphBackend::AllOnes, DEFAULT_ALPHA, 0) {
                Ok(sol) => {
                    sol.superstring.len() != *opt
                        || !validate_superstring(inst.strings(), &sol.superstring)
                }
                Err(_) => true,
            }
        }));
    }
    let rates: Vec<f64> = flags
        .iter()
        .map(|f| f.iter().filter(|&&b| b).count() as f64 / TRIALS as f64)
        .collect();
    let monotone = rates.windows(2).all(|w| w[1] <= w[0]);
    let rate_detail = KS
        .iter()
        .zip(&rates)
        .map(|(k, r)| format!("k={k}: {r:.4}"))
        .collect::<Vec<_>>()
        .join(", ");
    let (mut improved, mut regressed) = (0u64, 0u64);
    for t in 0..TRIALS {
        match (flags[0][t], flags[KS.len() - 1][t]) {
            (true, false) => improved += 1,
            (false, true) => regressed += 1,
            _ => {}
        }
    }
    let p = if improved == 0 {
        1.0
    } else {
        let bin = Binomial::new(0.5, improved + regressed)
            .map_err(|e| Error::usage(format!("sign test setup failed: {e}")))?;
        1.0 - bin.cdf(improved - 1)
    };
    Ok(vec![
        report(
            SUITE,
            "monotone-rates",
            monotone,
            format!("failure rates {rate_detail}"),
        ),
        report(
            SUITE,
            "sign-test",
            p < 0.01,
            format!(
                "{improved} improvements vs {regressed} regressions between k=1 and k=7, one-sided p {p:.2e} (needs < 0.01)"
            ),
        ),
    ])
}

/// Equal seeds must reproduce instances, solutions, ledgers, and bench rows.
fn determinism(seed: u64) -> Result<Vec<CheckReport>> {
    const SUITE: &str = "determinism";
    let scs_spec = GenSpec {
        kind: ProblemKind::Scs,
        n: 6,
        min_len: 2,
        max_len: 8,
        alphabet: 4,
        seed: mix(seed, 12, 1),
        text_len: 1,
        planted: false,
    };
    let a = gen_scs(&scs_spec)?;
    let b = gen_scs(&scs_spec)?;
    let tao_spec = GenSpec {
        kind: ProblemKind::Tao,
        n: 4,
        min_len: 2,
        max_len: 6,
        alphabet: 4,
        seed: mix(seed, 12, 2),
        text_len: 40,
        planted: true,
    };
    let ta = gen_tao(&tao_spec)?;
    let tb = gen_tao(&tao_spec)?;
    let gen_ok = a.strings() == b.strings() && ta.text() == tb.text() && ta.dict() == tb.dict();

    let mut e1 = Emulator::exact();
    let s1 = solve_scs(&a, &mut e1, GraphBackend::Hash, DEFAULT_ALPHA, 77)?;
    let mut e2 = Emulator::exact();
    let s2 = solve_scs(&a, &mut e2, GraphBackend::Hash, DEFAULT_ALPHA, 77)?;
    let solve_ok = s1.superstring == s2.superstring
        && s1.order == s2.order
        && s1.overlap_weight == s2.overlap_weight
        && e1.ledger.report_json() == e2.ledger.report_json();

    let mut a1 = Emulator::exact();
    let r1 = assemble(&ta, &mut a1)?;
    let mut a2 = Emulator::exact();
    let r2 = assemble(&ta, &mut a2)?;
    let asm_ok = r1 == r2 && a1.ledger.report_json() == a2.ledger.report_json();

    let ms = [8usize, 16, 32, 64];
    let ns = [2usize, 3, 4, 5];
    let mut rep1 = BenchReport {
        rows: run_tao_bench(&ms, &ns, mix(seed, 12, 3))?,
        graph_fit: None,
        tao_fit: None,
    };
    let mut rep2 = BenchReport {
        rows: run_tao_bench(&ms, &ns, mix(seed, 12, 3))?,
        graph_fit: None,
        tao_fit: None,
    };
    rep1.strip_wall_times();
    rep2.strip_wall_times();
    let bench_ok = serde_json::to_string(&rep1)
        .map_err(|e| Error::usage(format!("report serialization failed: {e}")))?
        == serde_json::to_string(&rep2)
            .map_err(|e| Error::usage(format!("report serialization failed: {e}")))?;

    Ok(vec![
        report(
            SUITE,
            "gen-stable",
            gen_ok,
            "generators repeat byte-identically for one seed",
        ),
        report(
            SUITE,
            "solve-stable",
            solve_ok,
            "superstring solver repeats its solution and ledger",
        ),
        report(
            SUITE,
            "assemble-stable",
            asm_ok,
            "text assembler repeats its decomposition and ledger",
        ),
        report(
            SUITE,
            "bench-stable",
            bench_ok,
            "bench rows repeat once wall times are stripped",
        ),
    ])
}
