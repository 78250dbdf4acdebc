//! The bracket agrees with a direct state sum over every code with at most
//! four crossings.

mod support;

use support::bracket::{check_all, state_sum};
use vmosaic_core::trace::GaussCode;
use vmosaic_core::Laurent;

#[test]
fn state_sum_oracle_pins_the_smoothing_convention() {
    let kink = GaussCode::parse("O1+U1+").unwrap();
    assert_eq!(state_sum(&kink), Laurent::monomial(-1, 3));
    assert_eq!(state_sum(&GaussCode::parse("O1-U1-").unwrap()), Laurent::monomial(-1, -3));
}

#[test]
fn codes_up_to_three_crossings_any_components() {
    let mut n = 0;
    for c in 1..=3 {
        n += check_all(c, 2 * c as usize, &[0, 1], 1).unwrap();
    }
    // Sequences times cuts times over and sign choices, with and without a free loop.
    assert_eq!(n, 2 * (2 * 4 + 3 * 8 * 16 + 15 * 32 * 64));
}

#[test]
fn four_crossing_codes_with_one_or_two_components() {
    let n = check_all(4, 2, &[0], 7).unwrap();
    assert_eq!(n, 105 * 8 * 256);
}
