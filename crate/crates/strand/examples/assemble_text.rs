//! Assembles a text from dictionary pieces and prints the decomposition,
//! then shows how an uncoverable text is reported.

use strand::qsim::Emulator;
use strand::tao::{assemble, validate_assembly, TAOInstance};

fn main() -> strand::Result<()> {
    let inst = TAOInstance::from_strs("ababab", &["ab", "abab", "ba"])?;
    let mut emu = Emulator::exact();
    let asm = assemble(&inst, &mut emu)?;
    for (q, i) in asm.starts.iter().zip(&asm.indices) {
        println!(
            "position {q}: piece {i} ({})",
            String::from_utf8_lossy(&inst.dict()[i - 1])
        );
    }
    assert!(validate_assembly(&inst, &asm));
    print!("{}", emu.ledger.render_table());

    // A dictionary that cannot reach the end of the text is rejected.
    let gap = TAOInstance::from_strs("abc", &["ab"])?;
    match assemble(&gap, &mut Emulator::exact()) {
        Err(e) => println!("abc over {{ab}}: {e}"),
        Ok(_) => unreachable!("no piece covers position 3"),
    }
    Ok(())
}
