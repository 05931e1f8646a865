use proptest::prelude::*;
use spin_ed::repdim::{
    divisibility_report, exhaustive_min_dim, is_invariant, merkurjev_index_bound, min_faithful_dim,
    orbit_combination, orbits_on_s, support, verify_heisenberg, CharMultiset,
};
use spin_ed::spinlat::{build_char_data, verify_lattice, Lattice, Parity, WeylElt};

fn weyl(r: usize, perm_seed: u64, signs: u32) -> WeylElt {
    let mut p: Vec<usize> = (0..r).collect();
    let mut s = perm_seed;
    for i in (1..r).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        p.swap(i, (s >> 33) as usize % (i + 1));
    }
    WeylElt::new(p, signs & ((1 << r) - 1)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn weyl_action_is_a_homomorphism(
        r in 1usize..=6,
        p1 in any::<u64>(), s1 in any::<u32>(),
        p2 in any::<u64>(), s2 in any::<u32>(),
        coords in proptest::collection::vec(-5i64..=5, 8),
        finite in any::<bool>(),
    ) {
        let d = build_char_data(r, Parity::Odd).unwrap();
        let (w1, w2) = (weyl(r, p1, s1), weyl(r, p2, s2));
        let which = if finite { Lattice::Finite } else { Lattice::Torus };
        let g = d.lattice(which);
        let c = g.reduce_i64(&coords[..=r]).unwrap();
        let both = d.weyl_act(&w1.compose(&w2).unwrap(), which, &c).unwrap();
        let step = d.weyl_act(&w1, which, &d.weyl_act(&w2, which, &c).unwrap()).unwrap();
        prop_assert_eq!(both, step);
        // the action is additive
        let c2 = g.reduce_i64(&coords[1..=r + 1]).unwrap();
        let sum = d.weyl_act(&w1, which, &g.add(&c, &c2)).unwrap();
        let parts = g.add(&d.weyl_act(&w1, which, &c).unwrap(), &d.weyl_act(&w1, which, &c2).unwrap());
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn invariant_multisets_have_divisible_dimension(r in 1usize..=7, odd in any::<bool>(), w in proptest::collection::vec(0u64..4, 2)) {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let d = build_char_data(r, parity).unwrap();
        let orbits = orbits_on_s(&d).unwrap();
        let m = orbit_combination(&orbits, &w);
        prop_assume!(!m.is_empty());
        prop_assert!(is_invariant(&d, &m).unwrap());
        let s = d.faithful_set().unwrap();
        prop_assert!(support(&m).is_subset(&s));
        prop_assert_eq!(m.dimension() % min_faithful_dim(&d).unwrap(), 0);
    }
}

#[test]
fn lattice_suite_small_ranks() {
    for r in 1..=8 {
        for parity in [Parity::Odd, Parity::Even] {
            let c = verify_lattice(r, parity).unwrap();
            assert!(c.ok, "{c:?}");
            assert_eq!(c.s_size, 1 << r);
        }
    }
    assert_eq!(verify_lattice(3, Parity::Odd).unwrap().x_l, "Z/4 x (Z/2)^2");
}

#[test]
fn gcd_of_random_invariant_dimensions() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for r in [3, 5, 8] {
        for parity in [Parity::Odd, Parity::Even] {
            let d = build_char_data(r, parity).unwrap();
            let orbits = orbits_on_s(&d).unwrap();
            let mut g = 0u64;
            let mut samples = 0;
            while samples < 100 {
                let w: Vec<u64> = orbits.iter().map(|_| rng.gen_range(0..5)).collect();
                let m = orbit_combination(&orbits, &w);
                if m.is_empty() {
                    continue;
                }
                g = num_integer::gcd(g, m.dimension());
                samples += 1;
            }
            assert_eq!(g, merkurjev_index_bound(&d).unwrap());
        }
    }
}

#[test]
fn exhaustive_search_agrees_with_orbits() {
    for r in 1..=4 {
        for parity in [Parity::Odd, Parity::Even] {
            let d = build_char_data(r, parity).unwrap();
            let expected = divisibility_report(&d).unwrap().min_dim;
            let (k, m) = exhaustive_min_dim(&d, expected).unwrap().unwrap();
            assert_eq!(k, expected);
            assert!(is_invariant(&d, &m).unwrap());
            if expected > 1 {
                assert!(exhaustive_min_dim(&d, expected - 1).unwrap().is_none());
            }
        }
    }
}

#[test]
fn single_character_is_not_invariant() {
    let d = build_char_data(3, Parity::Odd).unwrap();
    let mut m = CharMultiset::new();
    m.insert(d.a().clone(), 1);
    assert!(!is_invariant(&d, &m).unwrap());
}

#[test]
fn heisenberg_reports() {
    let c = verify_heisenberg(4, Parity::Odd).unwrap();
    assert!(c.ok);
    assert_eq!((c.min_dim, c.gcd_dim, c.orbit_count), (16, 16, 1));
    let c = verify_heisenberg(4, Parity::Even).unwrap();
    assert_eq!((c.min_dim, c.orbit_count), (8, 2));
    assert!(build_char_data(0, Parity::Odd).is_err());
    assert!(build_char_data(17, Parity::Odd).is_err());
}
