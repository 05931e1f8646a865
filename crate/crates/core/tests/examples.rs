mod lattice_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lattice.rs"));
}

mod heisenberg_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/heisenberg.rs"));
}

mod forms_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/forms.rs"));
}

mod invariants_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/invariants.rs"));
}

mod symbols_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/symbols.rs"));
}

mod ed_table_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ed_table.rs"));
}

#[test]
fn lattice_example_runs() {
    lattice_example::run_example().expect("lattice example should run");
}

#[test]
fn heisenberg_example_runs() {
    heisenberg_example::run_example().expect("heisenberg example should run");
}

#[test]
fn forms_example_runs() {
    forms_example::run_example().expect("forms example should run");
}

#[test]
fn invariants_example_runs() {
    invariants_example::run_example().expect("invariants example should run");
}

#[test]
fn symbols_example_runs() {
    symbols_example::run_example().expect("symbols example should run");
}

#[test]
fn ed_table_example_runs() {
    ed_table_example::run_example().expect("ed_table example should run");
}
