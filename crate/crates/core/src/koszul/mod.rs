//! Koszul differentials, linear strands and Betti tables of canonical rings.

pub mod differential;
pub mod strand;
pub mod table;

pub use differential::koszul_differential;
pub use strand::{
    artinian_reduction, canonical_data, multi_prime_strand, strand_dims, strand_dims_with,
    BettiStrand, KoszulData, PrimeRun, ReductionCertificate, StrandMethod,
};
pub use table::{
    betti_table, extremal_check, h0_omega_power, hilbert_rhs, BettiTable, ExtremalReport,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Degree, MultiplicationTensor};
    use crate::curvelab::{mult_tensor, random_curve};

    #[test]
    fn differentials_compose_to_zero() {
        let c = random_curve(Degree::Bi(3, 4), 32003, 3).unwrap();
        let field = c.field();
        let w = c.canonical_twist();
        let t11 = mult_tensor(&c, w, w).unwrap();
        let t12 = mult_tensor(&c, w, w.scale(2)).unwrap();
        let g = c.genus();
        for p in 1..g {
            let d_next =
                koszul_differential(field, g, p + 1, &MultiplicationTensor::unit(g)).unwrap();
            let d_p = koszul_differential(field, g, p, &t11).unwrap();
            for col in d_next.columns_dense() {
                assert!(d_p.mul_vec(field, &col).unwrap().iter().all(|&x| x == 0));
            }
            let d_p1 = koszul_differential(field, g, p + 1, &t11).unwrap();
            let d_p2 = koszul_differential(field, g, p, &t12).unwrap();
            for col in d_p1.columns_dense().iter().take(40) {
                assert!(d_p2.mul_vec(field, col).unwrap().iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn trigonal_genus_six() {
        let c = random_curve(Degree::Bi(3, 4), 32003, 1).unwrap();
        let full = strand_dims_with(&c, StrandMethod::Full).unwrap();
        assert_eq!(full.values, vec![6, 8, 3, 0]);
        assert_eq!(strand_dims(&c).unwrap().values, full.values);
        let t = betti_table(&full).unwrap();
        assert!(t.hilbert_holds());
        assert!(t.duality_holds());
        assert_eq!(t.rows[2], vec![0, 3, 8, 6, 0]);
    }

    #[test]
    fn plane_quartic_has_no_quadrics() {
        let c = random_curve(Degree::Plane(4), 32003, 1).unwrap();
        assert_eq!(
            strand_dims_with(&c, StrandMethod::Full).unwrap().values,
            vec![0]
        );
        assert_eq!(strand_dims(&c).unwrap().values, vec![0]);
    }

    #[test]
    fn hilbert_needs_g_variables() {
        for g in 3..12 {
            assert_eq!(hilbert_rhs(g, g, 1), 0);
            assert_ne!(hilbert_rhs(g, g - 1, 1), 0);
            assert_eq!(
                hilbert_rhs(g, g, g as i64 + 1),
                if g % 2 == 0 { 1 } else { -1 }
            );
            for j in g as i64 + 2..g as i64 + 6 {
                assert_eq!(hilbert_rhs(g, g, j), 0);
            }
        }
    }

    #[test]
    fn extremal_report_on_handmade_strand() {
        let s = BettiStrand {
            genus: 10,
            values: vec![1, 2, 3, 4, 5, 27, 0, 0],
            runs: vec![],
            consistent: true,
        };
        let r = extremal_check(&s, 5, 1);
        assert!(!r.passed());
        assert!(!r.strand_length_ok);
        assert_eq!(r.last_nonzero, Some((6, 27)));
        assert!(!r.last_divisible_by_index);
    }
}
