//! Builds the overlap graph of a small instance with both backends and shows
//! that they agree pairwise while charging different query costs.

use strand::core_strings::SCSInstance;
use strand::qsim::Emulator;
use strand::scs::{construct_graph, GraphBackend};

fn main() -> strand::Result<()> {
    let inst = SCSInstance::from_strs(&["abab", "baba", "aab"])?;
    let mut hash_emu = Emulator::exact();
    let hash = construct_graph(&inst, &mut hash_emu, GraphBackend::Hash, 7)?;
    let mut all_emu = Emulator::exact();
    let allones = construct_graph(&inst, &mut all_emu, GraphBackend::AllOnes, 7)?;

    println!("pairwise overlaps (rows are sources, columns are targets):");
    for i in 0..inst.n() {
        let row: Vec<String> = (0..inst.n())
            .map(|j| {
                if i == j {
                    "-".into()
                } else {
                    hash.w(i, j).to_string()
                }
            })
            .collect();
        println!(
            "  {:>5}  {}",
            String::from_utf8_lossy(&inst.strings()[i]),
            row.join(" ")
        );
    }
    for i in 0..inst.n() {
        for j in 0..inst.n() {
            assert_eq!(hash.w(i, j), allones.w(i, j));
        }
    }

    println!("\nhash backend charges:");
    print!("{}", hash_emu.ledger.render_table());
    println!("\nsurvivor backend charges:");
    print!("{}", all_emu.ledger.render_table());
    Ok(())
}
