//! Measures graph-construction charges over a small grid and fits the size
//! exponents; the default command-line grid is larger and tighter.

use strand::harness::bench::{fit_graph, run_graph_bench};
use strand::scs::GraphBackend;

fn main() -> strand::Result<()> {
    let ns = [8, 12, 16, 24, 32];
    let lens = [8, 12, 16, 24];
    let rows = run_graph_bench(&ns, &lens, GraphBackend::Hash, 5)?;
    let fit = fit_graph(&rows)?;

    println!(
        "{} cells measured, {} kept for the fit",
        rows.len(),
        fit.points_used
    );
    println!(
        "n exponent {:.3} (95% CI [{:.3}, {:.3}])",
        fit.n_exponent.value, fit.n_exponent.ci_low, fit.n_exponent.ci_high
    );
    println!(
        "L exponent {:.3} (95% CI [{:.3}, {:.3}])",
        fit.l_exponent.value, fit.l_exponent.ci_low, fit.l_exponent.ci_high
    );
    Ok(())
}
