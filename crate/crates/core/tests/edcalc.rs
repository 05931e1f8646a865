use num_bigint::BigInt;
use spin_ed::edcalc::{
    consistency_check, ed_entries, ed_lower_char2, ed_table, ed_upper_char2, ed_value,
    ed_value_with, formula_value, heisenberg_index, IndexSource, TableFormat, TABLE_MAX,
};
use spin_ed::spinlat::Parity;
use spin_ed::Error;

/// The closed formula in plain machine integers.
fn expected(n: u32) -> i128 {
    let n = n as i128;
    let dim = n * (n - 1) / 2;
    if n % 2 == 1 {
        (1i128 << ((n - 1) / 2)) - dim
    } else if n % 4 == 2 {
        (1i128 << ((n - 2) / 2)) - dim
    } else {
        let pow2 = n & -n;
        (1i128 << ((n - 2) / 2)) + pow2 - dim
    }
}

#[test]
fn anchors() {
    for (n, v) in [(15, 23), (16, 24), (18, 103), (20, 326)] {
        assert_eq!(ed_value(n).unwrap().value.known(), Some(&BigInt::from(v)), "n = {n}");
    }
}

#[test]
fn bounds_meet_the_formula() {
    for n in 15..=TABLE_MAX {
        let (u, ut) = ed_upper_char2(n).unwrap();
        let (l, lt) = ed_lower_char2(n).unwrap();
        assert_eq!(u, l, "n = {n}");
        assert_eq!(u, BigInt::from(expected(n)), "n = {n}");
        assert_eq!(formula_value(n), Some(u));
        for s in ut.iter().chain(&lt) {
            s.verify().unwrap();
        }
    }
}

#[test]
fn small_ranks() {
    for n in 3..=6 {
        assert_eq!(ed_value(n).unwrap().value.known(), Some(&BigInt::from(0)));
    }
    for (n, v) in [(7, 4), (8, 5), (9, 5), (10, 4)] {
        let e = ed_value(n).unwrap();
        assert_eq!(e.value.known(), Some(&BigInt::from(v)));
        assert_eq!(e.upper, e.lower);
    }
    for n in 11..=14 {
        let e = ed_value(n).unwrap();
        assert!(e.value.known().is_none());
        assert!(e.upper.is_none() && e.lower.is_none());
    }
    assert!(matches!(ed_value(2), Err(Error::OutOfDomain(_))));
}

#[test]
fn tampered_step_fails_verification() {
    let (_, mut t) = ed_upper_char2(17).unwrap();
    let last = t.last_mut().unwrap();
    last.out += 1;
    assert!(matches!(last.verify(), Err(Error::Verification(_))));
}

#[test]
fn live_index_matches_closed_form() {
    for r in 1..=12 {
        for parity in [Parity::Odd, Parity::Even] {
            assert_eq!(
                heisenberg_index(r, parity, IndexSource::Live).unwrap(),
                heisenberg_index(r, parity, IndexSource::ClosedForm).unwrap()
            );
        }
    }
    let live_ns = (15..=25).step_by(2).chain([18, 22]);
    for n in live_ns {
        let c = consistency_check(n).unwrap();
        assert!(c.ok, "{c:?}");
        assert!(c.live_index.is_some(), "n = {n}");
        assert_eq!(ed_value_with(n, IndexSource::Live).unwrap(), ed_value(n).unwrap());
    }
    for n in 7..=10 {
        assert!(consistency_check(n).unwrap().ok);
    }
}

#[test]
fn table_formats() {
    let tsv = ed_table(15, 16, TableFormat::Tsv).unwrap();
    let rows: Vec<&str> = tsv.lines().collect();
    assert!(rows[1].starts_with("15\t23\t"));
    assert!(rows[2].starts_with("16\t24\t"));
    let json: serde_json::Value =
        serde_json::from_str(&ed_table(11, 16, TableFormat::Json).unwrap()).unwrap();
    let arr = json.as_array().unwrap();
    assert_eq!(arr.len(), 6);
    assert_eq!(arr[0]["value"], "unknown");
    assert!(arr[0]["upper"].is_null());
    assert_eq!(arr[5]["value"], 24);
    assert!(!arr[5]["trace"].as_array().unwrap().is_empty());
    assert!(ed_table(9, 2, TableFormat::Tsv).is_err());
    assert!(ed_table(3, TABLE_MAX + 1, TableFormat::Tsv).is_err());
    let entries = ed_entries(3, 40).unwrap();
    assert_eq!(entries.iter().map(|e| e.n).collect::<Vec<_>>(), (3..=40).collect::<Vec<_>>());
}
