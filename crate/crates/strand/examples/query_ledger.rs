//! Runs the solver under the noisy execution model: majority-vote repetition
//! multiplies each charge but drives the failure rate down.

use strand::core_strings::SCSInstance;
use strand::qsim::{Emulator, NoiseConfig};
use strand::scs::{
    brute_force_scs, solve_scs, validate_superstring, GraphBackend, DEFAULT_ALPHA,
};

fn main() -> strand::Result<()> {
    let inst = SCSInstance::from_strs(&["aba", "bab", "bb"])?;
    let optimum = brute_force_scs(inst.strings())?.len();
    const TRIALS: u64 = 400;

    for reps in [1u32, 3, 5] {
        let mut failures = 0u64;
        let mut charge = 0.0;
        for trial in 0..TRIALS {
            let cfg = NoiseConfig {
                enabled: true,
                per_call_failure_probability: 0.1,
                rng_seed: 1000 * u64::from(reps) + trial,
                repetitions: reps,
            };
            let mut emu = Emulator::with_noise(&cfg)?;
            let failed =
                match solve_scs(&inst, &mut emu, GraphBackend::AllOnes, DEFAULT_ALPHA, 0) {
                    Ok(sol) => {
                        sol.superstring.len() != optimum
                            || !validate_superstring(inst.strings(), &sol.superstring)
                    }
                    Err(_) => true,
                };
            failures += u64::from(failed);
            charge += emu.ledger.total_quantum();
        }
        println!(
            "repetitions {reps}: failure rate {:.3}, mean quantum charge {:.1}",
            failures as f64 / TRIALS as f64,
            charge / TRIALS as f64
        );
    }
    Ok(())
}
