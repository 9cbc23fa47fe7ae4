use syzlab_core::hurcalc::*;

#[test]
fn identities_hold_over_64_consecutive_k() {
    for report in [
        verify_alternating_sum(3..=66),
        verify_bundle_sum(3..=66),
        normal_bundle_identity(3..=66),
        verify_base_case(3..=66),
    ] {
        assert!(report.passed, "{} failed", report.identity);
        for row in &report.rows {
            assert!(substitute_lambda(&row.residual).is_zero());
        }
    }
    assert!((2..=64).all(|k| verify_rank_identity(k, 2).holds));
    let r = verify_rank_identity(3, 2);
    assert_eq!((r.lhs.as_str(), r.aux_rank_kernel.as_str()), ("40", "10"));
}

#[test]
fn hur_lambda_coefficient_positive() {
    use num_traits::Signed;
    assert!((3..=50).all(|k| derive_hur_class(k).hur.coeffs[0].is_positive()));
}

#[test]
fn grr_forensics_report() {
    for report in grr_forensics() {
        let first = &report.rows[0];
        println!(
            "{:<18} closes={} k=3 residual: {}",
            report.reading.name(),
            report.closes,
            first.residual
        );
    }
    let zero = verify_grr_chain(3, GrrReading::Zero);
    assert_eq!(
        zero.chain.coeffs[0],
        num_rational::BigRational::from_integer(2.into())
    );
}

#[test]
fn corrected_reading_leaves_boundary_defect() {
    use num_rational::BigRational;
    for reading in [GrrReading::Corrected, GrrReading::CorrectedDerived] {
        for row in grr_report(3..=20, reading).rows {
            let k = row.k;
            let mut defect = HurClass::zero(k);
            defect.coeffs[1] = BigRational::new((k - 1).into(), 2.into());
            assert_eq!(row.residual, defect, "k = {k}");
        }
    }
}
