//! Solves a shortest common superstring instance end to end and confirms the
//! result against the brute-force oracle.

use strand::core_strings::SCSInstance;
use strand::qsim::Emulator;
use strand::scs::{
    brute_force_scs, solve_scs, validate_superstring, GraphBackend, DEFAULT_ALPHA,
};

fn main() -> strand::Result<()> {
    let inst = SCSInstance::from_strs(&["CAT", "ATG", "TGA", "GAC"])?;
    let mut emu = Emulator::exact();
    let sol = solve_scs(&inst, &mut emu, GraphBackend::Hash, DEFAULT_ALPHA, 0)?;

    println!("superstring: {}", String::from_utf8_lossy(&sol.superstring));
    println!("merge order: {:?}", sol.order);
    println!("overlap weight: {}", sol.overlap_weight);

    assert!(validate_superstring(inst.strings(), &sol.superstring));
    let best = brute_force_scs(inst.strings())?;
    assert_eq!(sol.superstring.len(), best.len());
    println!("matches the brute-force optimum of length {}", best.len());
    print!("{}", emu.ledger.render_table());
    Ok(())
}
