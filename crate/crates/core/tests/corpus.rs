mod common;

use common::*;

#[test]
fn corpus_is_large_enough() {
    assert!(corpus().len() >= 500);
}

#[test]
fn walsh_routes_equal_enumeration() {
    let c = corpus();
    match check_dual_routes(&c) {
        Ok(s) => eprintln!("{s}"),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn criteria_agree_and_witnesses_replay() {
    let c = corpus();
    match check_concordance(&c) {
        Ok(s) => eprintln!("{s}"),
        Err(e) => panic!("{e}"),
    }
}
