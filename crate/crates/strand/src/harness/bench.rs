//! Charged-cost benchmarking over size grids, with ordinary least-squares
//! exponent fits on the log-log scale and a band check for the comparison
//! charge of the text-assembly stage.

use std::time::Instant;

use serde::Serialize;

use crate::harness::gen::{gen_scs, gen_tao, GenSpec, ProblemKind};
use crate::harness::parallel_map;
use crate::qsim::{self, Emulator};
use crate::scs::{construct_graph, GraphBackend};
use crate::tao::build_long;
use crate::{Error, Result};

/// Declared tolerance band for the graph-construction size exponent.
pub const GRAPH_N_BAND: (f64, f64) = (1.4, 1.6);
/// Declared tolerance band for the graph-construction length exponent.
pub const GRAPH_L_BAND: (f64, f64) = (0.4, 0.6);
/// Allowed spread factor around the fitted constant for the tao stage.
pub const TAO_BAND_FACTOR: f64 = 2.0;

/// Default grid axes for the graph stage.
pub const GRAPH_NS: &[usize] = &[16, 32, 64, 128, 256];
pub const GRAPH_LENS: &[usize] = &[8, 16, 32, 64];
/// Default grid axes for the tao stage.
pub const TAO_MS: &[usize] = &[256, 1024, 4096, 16384];
pub const TAO_NS: &[usize] = &[4, 16, 64, 256];

/// One measured grid cell.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub problem: String,
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub m: usize,
    pub stage: String,
    pub charged_cost: f64,
    pub wall_time: f64,
}

/// A fitted exponent with its 95 percent confidence interval.
#[derive(Debug, Clone, Serialize)]
pub struct Exponent {
    pub value: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Bivariate log-log fit for the graph-construction stage.
#[derive(Debug, Clone, Serialize)]
pub struct GraphFit {
    pub stage: String,
    pub n_exponent: Exponent,
    pub l_exponent: Exponent,
    pub intercept: f64,
    pub points_used: usize,
    pub points_dropped: usize,
    pub n_band: (f64, f64),
    pub l_band: (f64, f64),
    pub within_bands: bool,
}

/// Ratio analysis of the tao comparison charge against log2(m) * sqrt(nL).
#[derive(Debug, Clone, Serialize)]
pub struct TaoFit {
    pub stage: String,
    /// Geometric mean of the per-cell ratios.
    pub constant: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub band_factor: f64,
    pub points_used: usize,
    pub points_dropped: usize,
    pub within_band: bool,
}

/// Bench output: measured rows plus whichever fits were computed.
#[derive(Debug, Clone, Default, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph_fit: Option<GraphFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tao_fit: Option<TaoFit>,
}

impl BenchReport {
    /// CSV table of the measured rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("problem,n,L,m,stage,charged_cost,wall_time\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.problem, r.n, r.l, r.m, r.stage, r.charged_cost, r.wall_time
            ));
        }
        out
    }

    /// Zeroes wall times so two reports from one seed serialize identically.
    pub fn strip_wall_times(&mut self) {
        for r in &mut self.rows {
            r.wall_time = 0.0;
        }
    }
}

/// Derives a well-spread per-cell seed from the run seed.
fn cell_seed(seed: u64, idx: usize) -> u64 {
    let mut x = seed ^ (idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Requires at least four distinct positive sizes on an axis.
fn check_axis(name: &str, values: &[usize]) -> Result<()> {
    if values.iter().any(|&v| v == 0) {
        return Err(Error::usage(format!("axis {name} sizes must be positive")));
    }
    let mut distinct = values.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 4 {
        return Err(Error::usage(format!(
            "axis {name} has {} distinct size(s), fitting needs at least 4; fit refused",
            distinct.len()
        )));
    }
    Ok(())
}

/// Measures graph construction over an n by per-string-length grid.
pub fn run_graph_bench(
    ns: &[usize],
    lens: &[usize],
    backend: GraphBackend,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    check_axis("n", ns)?;
    check_axis("len", lens)?;
    let cells: Vec<(usize, usize)> = ns
        .iter()
        .flat_map(|&n| lens.iter().map(move |&l| (n, l)))
        .collect();
    let rows = parallel_map(cells.len(), |idx| -> Result<BenchRow> {
        let (n, len) = cells[idx];
        let spec = GenSpec {
            kind: ProblemKind::Scs,
            n,
            min_len: len,
            max_len: len,
            alphabet: 4,
            seed: cell_seed(seed, idx),
            text_len: 1,
            planted: false,
        };
        let inst = gen_scs(&spec)?;
        let mut emu = Emulator::exact();
        let start = Instant::now();
        construct_graph(&inst, &mut emu, backend, cell_seed(seed, idx))?;
        Ok(BenchRow {
            problem: "scs".into(),
            n,
            l: inst.total_len(),
            m: 0,
            stage: "construct-graph".into(),
            charged_cost: emu.ledger.total_quantum(),
            wall_time: start.elapsed().as_secs_f64(),
        })
    });
    rows.into_iter().collect()
}

/// Measures the long-array build over an m by dictionary-size grid.
pub fn run_tao_bench(ms: &[usize], ns: &[usize], seed: u64) -> Result<Vec<BenchRow>> {
    check_axis("m", ms)?;
    check_axis("n", ns)?;
    let cells: Vec<(usize, usize)> = ms
        .iter()
        .flat_map(|&m| ns.iter().map(move |&n| (m, n)))
        .collect();
    let rows = parallel_map(cells.len(), |idx| -> Result<BenchRow> {
        let (m, n) = cells[idx];
        let spec = GenSpec {
            kind: ProblemKind::Tao,
            n,
            min_len: 4,
            max_len: 12,
            alphabet: 4,
            seed: cell_seed(seed, idx),
            text_len: m,
            planted: false,
        };
        let inst = gen_tao(&spec)?;
        let mut emu = Emulator::exact();
        let start = Instant::now();
        build_long(&inst, &mut emu)?;
        Ok(BenchRow {
            problem: "tao".into(),
            n,
            l: inst.total_dict_len(),
            m,
            stage: "build-long".into(),
            charged_cost: emu.ledger.get(qsim::QCOMPARE).quantum_cost,
            wall_time: start.elapsed().as_secs_f64(),
        })
    });
    rows.into_iter().collect()
}

/// Splits rows of one stage into the kept set and the dropped warm-up cells,
/// where the cells with the smallest scale value are dropped.
fn drop_smallest<'a>(
    rows: &'a [BenchRow],
    stage: &str,
    scale: impl Fn(&BenchRow) -> usize,
) -> Result<(Vec<&'a BenchRow>, usize)> {
    let stage_rows: Vec<&BenchRow> = rows.iter().filter(|r| r.stage == stage).collect();
    if stage_rows.is_empty() {
        return Err(Error::usage(format!("no measured rows for stage {stage}")));
    }
    let min_scale = stage_rows.iter().map(|r| scale(r)).min().expect("non-empty");
    let kept: Vec<&BenchRow> = stage_rows
        .iter()
        .filter(|r| scale(r) > min_scale)
        .copied()
        .collect();
    let dropped = stage_rows.len() - kept.len();
    if kept.len() < 4 {
        return Err(Error::usage(format!(
            "only {} size points remain after dropping the smallest, fitting needs at least 4; fit refused",
            kept.len()
        )));
    }
    Ok((kept, dropped))
}

/// Fits log cost on log n and log L over the graph rows and checks the
/// declared exponent bands.
pub fn fit_graph(rows: &[BenchRow]) -> Result<GraphFit> {
    let (kept, dropped) = drop_smallest(rows, "construct-graph", |r| r.n * r.l)?;
    let xs: Vec<[f64; 3]> = kept
        .iter()
        .map(|r| [1.0, (r.n as f64).ln(), (r.l as f64).ln()])
        .collect();
    let ys: Vec<f64> = kept.iter().map(|r| r.charged_cost.ln()).collect();
    let (beta, se) = ols3(&xs, &ys)?;
    let n_exponent = Exponent {
        value: beta[1],
        ci_low: beta[1] - 1.96 * se[1],
        ci_high: beta[1] + 1.96 * se[1],
    };
    let l_exponent = Exponent {
        value: beta[2],
        ci_low: beta[2] - 1.96 * se[2],
        ci_high: beta[2] + 1.96 * se[2],
    };
    let within_bands = in_band(n_exponent.value, GRAPH_N_BAND) && in_band(l_exponent.value, GRAPH_L_BAND);
    Ok(GraphFit {
        stage: "construct-graph".into(),
        n_exponent,
        l_exponent,
        intercept: beta[0],
        points_used: kept.len(),
        points_dropped: dropped,
        n_band: GRAPH_N_BAND,
        l_band: GRAPH_L_BAND,
        within_bands,
    })
}

/// Checks the tao comparison charge against c * log2(m) * sqrt(nL): the
/// per-cell ratios must stay within the band factor of their geometric mean.
pub fn fit_tao(rows: &[BenchRow]) -> Result<TaoFit> {
    let (kept, dropped) = drop_smallest(rows, "build-long", |r| r.m * r.n)?;
    let ratios: Vec<f64> = kept
        .iter()
        .map(|r| r.charged_cost / ((r.m as f64).log2() * ((r.n * r.l) as f64).sqrt()))
        .collect();
    if ratios.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::usage("tao ratios must be positive to fit"));
    }
    let constant = (ratios.iter().map(|r| r.ln()).sum::<f64>() / ratios.len() as f64).exp();
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max_ratio = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let within_band = ratios
        .iter()
        .all(|&r| r >= constant / TAO_BAND_FACTOR && r <= constant * TAO_BAND_FACTOR);
    Ok(TaoFit {
        stage: "build-long".into(),
        constant,
        min_ratio,
        max_ratio,
        band_factor: TAO_BAND_FACTOR,
        points_used: kept.len(),
        points_dropped: dropped,
        within_band,
    })
}

/// True when x lies inside the closed band.
fn in_band(x: f64, band: (f64, f64)) -> bool {
    x >= band.0 && x <= band.1
}

/// Ordinary least squares with three regressors (intercept plus two logs);
/// returns coefficients and their standard errors.
fn ols3(xs: &[[f64; 3]], ys: &[f64]) -> Result<([f64; 3], [f64; 3])> {
    let k = xs.len();
    if k < 4 {
        return Err(Error::usage(format!(
            "{k} points are too few for a three-parameter fit"
        )));
    }
    let mut xtx = [[0f64; 3]; 3];
    let mut xty = [0f64; 3];
    for (row, &y) in xs.iter().zip(ys) {
        for a in 0..3 {
            for b in 0..3 {
                xtx[a][b] += row[a] * row[b];
            }
            xty[a] += row[a] * y;
        }
    }
    let inv = invert3(&xtx).ok_or_else(|| {
        Error::usage("design matrix is singular; the grid must vary both axes independently")
    })?;
    let mut beta = [0f64; 3];
    for a in 0..3 {
        for b in 0..3 {
            beta[a] += inv[a][b] * xty[b];
        }
    }
    let mut rss = 0f64;
    for (row, &y) in xs.iter().zip(ys) {
        let pred = row[0] * beta[0] + row[1] * beta[1] + row[2] * beta[2];
        rss += (y - pred) * (y - pred);
    }
    let dof = (k.saturating_sub(3)).max(1) as f64;
    let s2 = rss / dof;
    let se = [
        (s2 * inv[0][0]).max(0.0).sqrt(),
        (s2 * inv[1][1]).max(0.0).sqrt(),
        (s2 * inv[2][2]).max(0.0).sqrt(),
    ];
    Ok((beta, se))
}

/// Inverse of a symmetric 3x3 matrix via the adjugate; None when singular.
fn invert3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let scale = m
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    if det.abs() <= 1e-12 * scale.powi(3).max(1.0) {
        return None;
    }
    let mut inv = [[0f64; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            let (r1, r2) = match a {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c1, c2) = match b {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1];
            let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
            // Adjugate transposes the cofactor matrix.
            inv[b][a] = sign * minor / det;
        }
    }
    Some(inv)
}

/// Runs the requested stage family with default grids and fits it.
pub fn run_bench(stage: &str, backend: GraphBackend, seed: u64) -> Result<BenchReport> {
    let mut report = BenchReport::default();
    match stage {
        "graph" => {
            let rows = run_graph_bench(GRAPH_NS, GRAPH_LENS, backend, seed)?;
            report.graph_fit = Some(fit_graph(&rows)?);
            report.rows = rows;
        }
        "tao" => {
            let rows = run_tao_bench(TAO_MS, TAO_NS, seed)?;
            report.tao_fit = Some(fit_tao(&rows)?);
            report.rows = rows;
        }
        "all" => {
            let mut rows = run_graph_bench(GRAPH_NS, GRAPH_LENS, backend, seed)?;
            report.graph_fit = Some(fit_graph(&rows)?);
            let tao_rows = run_tao_bench(TAO_MS, TAO_NS, seed)?;
            report.tao_fit = Some(fit_tao(&tao_rows)?);
            rows.extend(tao_rows);
            report.rows = rows;
        }
        other => {
            return Err(Error::usage(format!(
                "unknown bench stage {other:?}, expected graph, tao, or all"
            )))
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic_rows() -> Vec<BenchRow> {
        let mut rows = Vec::new();
        for &n in &[8usize, 16, 32, 64] {
            for &len in &[8usize, 16, 32, 64] {
                let l = n * len;
                rows.push(BenchRow {
                    problem: "scs".into(),
                    n,
                    l,
                    m: 0,
                    stage: "construct-graph".into(),
                    charged_cost: 3.0 * (n as f64).powf(1.5) * (l as f64).sqrt(),
                    wall_time: 0.0,
                });
            }
        }
        rows
    }

    #[test]
    fn fit_recovers_planted_exponents_exactly() {
        let fit = fit_graph(&synthetic_rows()).unwrap();
        assert!((fit.n_exponent.value - 1.5).abs() < 1e-9);
        assert!((fit.l_exponent.value - 0.5).abs() < 1e-9);
        assert!((fit.intercept - 3.0f64.ln()).abs() < 1e-9);
        assert!(fit.within_bands);
        assert!(fit.points_dropped >= 1);
        assert!(fit.n_exponent.ci_high - fit.n_exponent.ci_low < 1e-6);
    }

    #[test]
    fn axes_with_too_few_sizes_are_refused() {
        let err = run_graph_bench(&[16], &[8, 16, 32, 64], GraphBackend::AllOnes, 1).unwrap_err();
        assert!(err.to_string().contains("fit refused"));
        assert!(run_tao_bench(&[256, 512], &[4, 8, 16, 32], 1).is_err());
    }

    #[test]
    fn singular_grids_are_reported() {
        // All cells share one length, so log L moves in lockstep with log n.
        let rows: Vec<BenchRow> = [8usize, 16, 32, 64, 128]
            .iter()
            .map(|&n| BenchRow {
                problem: "scs".into(),
                n,
                l: n * 4,
                m: 0,
                stage: "construct-graph".into(),
                charged_cost: (n as f64).powf(2.0),
                wall_time: 0.0,
            })
            .collect();
        assert!(fit_graph(&rows).is_err());
    }

    #[test]
    fn small_real_grids_run_end_to_end() {
        let rows =
            run_graph_bench(&[4, 6, 8, 10], &[4, 5, 6, 7], GraphBackend::AllOnes, 9).unwrap();
        assert_eq!(rows.len(), 16);
        assert!(rows.iter().all(|r| r.charged_cost > 0.0));
        let again =
            run_graph_bench(&[4, 6, 8, 10], &[4, 5, 6, 7], GraphBackend::AllOnes, 9).unwrap();
        let costs: Vec<f64> = rows.iter().map(|r| r.charged_cost).collect();
        let costs_again: Vec<f64> = again.iter().map(|r| r.charged_cost).collect();
        assert_eq!(costs, costs_again);

        let tao_rows = run_tao_bench(&[16, 32, 64, 128], &[2, 3, 4, 5], 9).unwrap();
        assert_eq!(tao_rows.len(), 16);
        assert!(tao_rows.iter().all(|r| r.charged_cost > 0.0));
        let fit = fit_tao(&tao_rows).unwrap();
        assert!(fit.min_ratio <= fit.max_ratio);
        assert!(fit.constant > 0.0);
    }

    #[test]
    fn csv_lists_every_row() {
        let report = BenchReport {
            rows: synthetic_rows(),
            graph_fit: None,
            tao_fit: None,
        };
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 17);
        assert!(csv.starts_with("problem,n,L,m,stage,charged_cost,wall_time"));
    }
}
