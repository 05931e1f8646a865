// Torsor forms for Spin(7) through Spin(10) assembled into a Pfister
// form, and the resulting degree 4 or 5 symbol.

use spin_ed::invariants::{invariant_report, GroupId, TorsorData};
use spin_ed::qform2::{field_build, pfister_build, witt_decompose, Scalar};

pub fn run_example() -> spin_ed::Result<()> {
    let names = ["a", "b", "c", "d", "e"];
    for g in GroupId::ALL {
        let t = TorsorData::from_names(g, &names[..g.arity()])?;
        let rep = invariant_report(&t)?;
        println!("{g}");
        for form in &rep.forms {
            println!("  {form}");
        }
        println!("  sum = {}  ({})", rep.target, rep.assembled.join(" + "));
        println!("  f = {}  {}", rep.symbol, rep.verdict.describe());
    }

    // over F_4 a 2-fold Pfister form with b = c^2 + c splits completely
    let f = field_build(2)?;
    let q = pfister_build(&f, &[Scalar::Gf(2)], &Scalar::Gf(0))?;
    println!("<<2,0]] over F_4: witt index {}", witt_decompose(&q)?.witt_index);
    Ok(())
}

#[allow(dead_code)]
fn main() -> spin_ed::Result<()> {
    run_example()
}
