//! Fixtures shared by the criterion benches.

use syzlab_core::curvelab::random_curve;
use syzlab_core::{CurveModel, Degree, DEFAULT_PRIME};

pub fn fixture(degree: Degree) -> CurveModel {
    random_curve(degree, DEFAULT_PRIME, 2024).expect("fixture curve")
}
