use drinfeld_core::combinat::verify_power_sum;
use drinfeld_core::runner::prime_powers_up_to;

#[test]
fn power_sum_matches_truncated_catalan_series() {
    for q in prime_powers_up_to(512) {
        assert!(verify_power_sum(q).unwrap().passed(), "q = {q}");
    }
}
