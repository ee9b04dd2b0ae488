//! Generates reproducible instances and prints them in the file formats the
//! command-line binary reads.

use strand::core_strings::instance_to_string;
use strand::harness::gen::{
    dict_to_string, gen_scs, gen_tao, text_to_string, GenSpec, ProblemKind,
};

fn main() -> strand::Result<()> {
    let spec = GenSpec {
        kind: ProblemKind::Scs,
        n: 4,
        min_len: 3,
        max_len: 5,
        alphabet: 4,
        seed: 42,
        text_len: 1,
        planted: false,
    };
    println!("# scs instance, seed 42");
    print!("{}", instance_to_string(&gen_scs(&spec)?));

    let spec = GenSpec {
        kind: ProblemKind::Tao,
        n: 3,
        min_len: 2,
        max_len: 4,
        alphabet: 2,
        seed: 42,
        text_len: 16,
        planted: true,
    };
    let inst = gen_tao(&spec)?;
    println!("\n# tao text, planted, seed 42");
    print!("{}", text_to_string(&inst));
    println!("\n# tao dictionary");
    print!("{}", dict_to_string(&inst));
    Ok(())
}
