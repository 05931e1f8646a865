// The essential dimension table with a derivation trace for one entry.

use spin_ed::edcalc::{consistency_check, ed_table, ed_value, TableFormat};

pub fn run_example() -> spin_ed::Result<()> {
    print!("{}", ed_table(3, 30, TableFormat::Tsv)?);

    let e = ed_value(20)?;
    println!("\ntrace for n = 20:");
    for step in e.upper_trace.iter().chain(&e.lower_trace) {
        step.verify()?;
        println!("  {:<24} {}  -> {}", step.rule.id(), step.rule.citation(), step.out);
    }

    // lower bound fed by the orbit computation on the character lattice
    let c = consistency_check(23)?;
    println!("\nn = 23: live index {:?}, bounds {:?} = {:?}, ok {}", c.live_index, c.lower, c.upper, c.ok);
    Ok(())
}

#[allow(dead_code)]
fn main() -> spin_ed::Result<()> {
    run_example()
}
