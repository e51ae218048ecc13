mod support {
    pub mod suites;
}

use std::sync::OnceLock;

use extremal_k3::pipeline::Accepted;
use support::suites;

fn accepted() -> &'static [Accepted] {
    static ALL: OnceLock<Vec<Accepted>> = OnceLock::new();
    ALL.get_or_init(|| suites::all_accepted().unwrap())
}

fn ok(o: suites::Outcome) {
    if let Err(e) = o {
        panic!("{e}");
    }
}

#[test]
fn root_formula_matches_enumeration() {
    ok(suites::root_formula(50));
}

#[test]
fn smith_identity() {
    ok(suites::snf_identity(1000));
}

#[test]
fn binary_reduction_is_invariant() {
    ok(suites::binary_reduction(500));
}

#[test]
fn even_forms_complete() {
    ok(suites::even_forms_complete(200));
}

#[test]
fn overlattice_determinant_law() {
    ok(suites::overlattice_determinants(accepted()));
}

#[test]
fn discriminant_round_trip() {
    ok(suites::round_trip(accepted(), 30));
}
