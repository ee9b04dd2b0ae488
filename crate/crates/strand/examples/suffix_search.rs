//! Builds a suffix array and locates the suffix-array segment of several
//! probe strings inside a text, paying comparison charges along the way.

use strand::qsim::{Emulator, QCOMPARE};
use strand::suffix_array::suffix_array;
use strand::tao::search_segment;

fn main() -> strand::Result<()> {
    let text = b"banana".to_vec();
    let sa = suffix_array(&text);
    println!("suffix order of banana: {sa:?}");

    let mut emu = Emulator::exact();
    for probe in ["an", "na", "z", "banana"] {
        match search_segment(&text, &sa, probe.as_bytes(), &mut emu) {
            Some((lo, hi)) => println!("{probe:>6}: suffix-array rows {lo}..={hi}"),
            None => println!("{probe:>6}: absent"),
        }
    }
    println!(
        "comparison charge: {:.2}",
        emu.ledger.get(QCOMPARE).quantum_cost
    );
    Ok(())
}
