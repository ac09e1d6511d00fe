use lefschetz_core::witness::{subset_sum_check, verify_congruence, verify_nonmembership, SumKind, WitnessParams};

#[test]
fn witnesses_on_the_whole_range_d_up_to_5() {
    for d in 3..=5u32 {
        for n in (2 * d as usize - 2)..(3 * d as usize - 2) {
            let p = WitnessParams::random(n, d, 7).unwrap();
            assert!(verify_congruence(&p).unwrap(), "congruence n={n} d={d}");
            assert!(verify_nonmembership(&p).unwrap(), "nonmembership n={n} d={d}");
        }
    }
}

#[test]
fn identities_on_larger_parameters() {
    for (n, d) in [(12, 5), (15, 6), (18, 7)] {
        assert!(subset_sum_check(SumKind::Epsilon, d, n, 500, 3).unwrap());
        assert!(subset_sum_check(SumKind::Psi, d, n, 500, 3).unwrap());
    }
}
