//! Cross-route invariants spanning several modules.

use coinwalk::arith::int;
use coinwalk::dist::{distribution, pgf};
use coinwalk::dp::dp_pgfs;
use coinwalk::legendre::{p_odd_via_ratio, x_coefficients};
use coinwalk::oracle::{oracle_distribution, PositivityRule};
use coinwalk::series::{extract_pgf, psi_csaki, psi_even, psi_odd, psi_odd_ratio, CsakiRadical};
use coinwalk::{odd_distribution, QPolynomial};

#[test]
fn dp_matches_closed_form_and_enumeration() {
    let dp = dp_pgfs(40);
    for (n, p) in dp.iter().enumerate() {
        assert_eq!(*p, pgf(&distribution(n as u64)), "closed, n = {n}");
        if n <= 20 {
            let oracle = oracle_distribution(n as u32, PositivityRule::ChungFeller).unwrap();
            assert_eq!(*p, pgf(&oracle), "oracle, n = {n}");
        }
    }
}

#[test]
fn parity_parts_rebuild_the_generating_function() {
    let order = 33;
    let even = psi_even(order).unwrap();
    let odd = psi_odd(order).unwrap();
    assert_eq!(odd, psi_odd_ratio(order).unwrap());
    let whole = &even + &odd;
    let dp = dp_pgfs(32);
    for (n, want) in dp.iter().enumerate() {
        let p = extract_pgf(&whole, n).unwrap();
        assert_eq!(p, *want, "n = {n}");
        assert_eq!(p.eval(&int(1)), int(1));
    }
}

#[test]
fn non_negative_closed_form_matches_enumeration() {
    let series = psi_csaki(21, CsakiRadical::Corrected).unwrap();
    for n in 0..=20 {
        let oracle = oracle_distribution(n as u32, PositivityRule::NonNegative).unwrap();
        let p = extract_pgf(&series, n).unwrap();
        assert_eq!(p, pgf(&oracle), "n = {n}");
        assert_eq!(p.eval(&int(1)), int(1));
    }
}

#[test]
fn non_negative_count_differs_from_chung_feller_count() {
    // shifted by one since S_0 counts, the two statistics still disagree at n = 2
    let nonneg = pgf(&oracle_distribution(2, PositivityRule::NonNegative).unwrap());
    let cf = pgf(&oracle_distribution(2, PositivityRule::ChungFeller).unwrap());
    assert_ne!(nonneg, cf.shift(1));
}

#[test]
fn odd_law_three_ways() {
    for n in 0..=30 {
        let masses = odd_distribution(n).mass().to_vec();
        assert_eq!(x_coefficients(n), masses, "n = {n}");
        assert_eq!(p_odd_via_ratio(n).unwrap(), QPolynomial::new(masses));
    }
}
