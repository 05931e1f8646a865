// Normalization of sums of mod 2 symbols.

use spin_ed::invariants::{symbol_normalize, SymbolSum};

pub fn run_example() -> spin_ed::Result<()> {
    for text in [
        "{d,a*a',b,c]",
        "{1,a,b,c]",
        "{a,b,a,c]",
        "{a,b,c+d]",
        "{a,b,c] + {b,a,c]",
        "{a*b,c,d] + {a,c,d]",
    ] {
        let s: SymbolSum = text.parse()?;
        println!("{text:<22} = {}", symbol_normalize(&s));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> spin_ed::Result<()> {
    run_example()
}
