//! Every example runs to completion.

#[path = "../examples/cartesian_products.rs"]
mod cartesian_products;

#[path = "../examples/correspondence_maps.rs"]
mod correspondence_maps;

#[path = "../examples/custom_structure.rs"]
mod custom_structure;

#[path = "../examples/fault_injection.rs"]
mod fault_injection;

#[path = "../examples/fuzzy_h_ideals.rs"]
mod fuzzy_h_ideals;

#[path = "../examples/fuzzy_products.rs"]
mod fuzzy_products;

#[path = "../examples/h_ideal_lattice.rs"]
mod h_ideal_lattice;

#[path = "../examples/operator_hemirings.rs"]
mod operator_hemirings;

#[path = "../examples/prime_ideals.rs"]
mod prime_ideals;

#[path = "../examples/theorem_suite.rs"]
mod theorem_suite;

#[path = "../examples/validate_axioms.rs"]
mod validate_axioms;

#[test]
fn runs_cartesian_products() {
    cartesian_products::main().unwrap();
}

#[test]
fn runs_correspondence_maps() {
    correspondence_maps::main().unwrap();
}

#[test]
fn runs_custom_structure() {
    custom_structure::main().unwrap();
}

#[test]
fn runs_fault_injection() {
    fault_injection::main().unwrap();
}

#[test]
fn runs_fuzzy_h_ideals() {
    fuzzy_h_ideals::main().unwrap();
}

#[test]
fn runs_fuzzy_products() {
    fuzzy_products::main().unwrap();
}

#[test]
fn runs_h_ideal_lattice() {
    h_ideal_lattice::main().unwrap();
}

#[test]
fn runs_operator_hemirings() {
    operator_hemirings::main().unwrap();
}

#[test]
fn runs_prime_ideals() {
    prime_ideals::main().unwrap();
}

#[test]
fn runs_theorem_suite() {
    theorem_suite::main().unwrap();
}

#[test]
fn runs_validate_axioms() {
    validate_axioms::main().unwrap();
}
