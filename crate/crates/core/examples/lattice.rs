// Character lattices of the maximal torus and of the finite subgroup L,
// for a few ranks of both parities.

use spin_ed::spinlat::{build_char_data, verify_lattice, Parity};

pub fn run_example() -> spin_ed::Result<()> {
    for r in [2, 3, 5] {
        for parity in [Parity::Odd, Parity::Even] {
            let c = verify_lattice(r, parity)?;
            println!(
                "r={r} {parity:?} (Spin({})): X*(T) = {}, X*(L) = {}, |S| = {}, orbits {:?}",
                parity.spin_n(r),
                c.x_t,
                c.x_l,
                c.s_size,
                c.orbit_sizes
            );
        }
    }

    // explicit bijection between sign-change subsets and S for r = 2
    let d = build_char_data(2, Parity::Odd)?;
    let report = d.free_transitive_check()?;
    for (subset, image) in &report.witness {
        println!("  {subset:02b} -> {image}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> spin_ed::Result<()> {
    run_example()
}
