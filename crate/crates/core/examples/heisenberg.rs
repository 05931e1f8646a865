// Least dimension of a representation of L with faithful central
// character, from the orbit decomposition of S.

use spin_ed::repdim::{divisibility_report, exhaustive_min_dim, verify_heisenberg};
use spin_ed::spinlat::{build_char_data, Parity};

pub fn run_example() -> spin_ed::Result<()> {
    println!("r  parity  orbits          min  gcd");
    for r in 1..=10 {
        for parity in [Parity::Odd, Parity::Even] {
            let c = verify_heisenberg(r, parity)?;
            assert!(c.ok, "{:?}", c.violations);
            println!(
                "{r:<2} {:<7} {:<15} {:<4} {}",
                format!("{parity:?}"),
                format!("{:?}", c.orbit_sizes),
                c.min_dim,
                c.gcd_dim
            );
        }
    }

    // a direct search over small multisets agrees at r = 3
    let d = build_char_data(3, Parity::Even)?;
    let bound = divisibility_report(&d)?.min_dim;
    let (k, m) = exhaustive_min_dim(&d, bound)?.expect("orbit sum is invariant");
    println!("r=3 even: smallest invariant multiset has dimension {k} ({} characters)", m.iter().count());
    Ok(())
}

#[allow(dead_code)]
fn main() -> spin_ed::Result<()> {
    run_example()
}
