// Quadratic forms over F_8: Arf invariant, Witt decomposition, block
// normal form and isometry.

use std::sync::Arc;

use spin_ed::qform2::{
    arf, block_normalize, equivalent_ff, invariants, parse_form, witt_decompose, Gf2k, UtMatrix,
};

pub fn run_example() -> spin_ed::Result<()> {
    let f = Arc::new(Gf2k::new(3)?);
    println!("F_8 with modulus {:#b}", f.poly());

    for text in ["[1,1]", "[1,3]", "[1,1]+[1,1]", "[2,5]+[3,0]+<4>"] {
        let q = parse_form(&f, text)?;
        let w = witt_decompose(&q)?;
        let arf = if q.diag().is_empty() { arf(&q)?.to_string() } else { "-".into() };
        println!("{text:<18} arf {arf}  witt index {}  kernel {}", w.witt_index, w.kernel);
    }

    // x0^2 + x0x1 + x1x2 + 5 x2^2 given by its coefficient matrix
    let m = UtMatrix::from_square(&f, &[vec![1, 1, 0], vec![0, 0, 1], vec![0, 0, 5]])?;
    let n = block_normalize(&f, &m)?;
    println!("normal form {n}, invariants {:?}", invariants(&n)?);

    let q1 = parse_form(&f, "[1,1]+[1,1]")?;
    let q2 = parse_form(&f, "[0,0]+[0,0]")?;
    println!("{q1} ~ {q2}: {}", equivalent_ff(&q1, &q2)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> spin_ed::Result<()> {
    run_example()
}
