use rand::seq::SliceRandom;

use super::model::{rng_for, CurveModel};
use crate::algebra::poly::{Ambient, MultiForm};
use crate::algebra::Scalar;

/// Smooth `F_p`-points of the curve in the affine chart, with pairwise distinct chart
/// coordinates, found by scanning fibres over shuffled base values.
pub fn rational_points(curve: &CurveModel, count: usize, seed: u64) -> Vec<Vec<Scalar>> {
    let field = curve.field();
    let p = field.p();
    let mut bases: Vec<Scalar> = (1..p).collect();
    bases.shuffle(&mut rng_for(seed, "points"));
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    let mut used_t: Vec<Scalar> = Vec::new();
    let form = curve.form();
    let (base_slot, fibre_slot) = match curve.ambient() {
        Ambient::P1xP1 => (1, 3),
        Ambient::P2 => (0, 1),
    };
    for s in bases {
        if out.len() >= count {
            break;
        }
        // fibre polynomial in t at this base value
        let mut coeffs: Vec<Scalar> = Vec::new();
        for (m, &c) in &form.terms {
            let j = m[fibre_slot] as usize;
            if coeffs.len() <= j {
                coeffs.resize(j + 1, 0);
            }
            let v = field.mul(c, field.pow(s, m[base_slot] as u64));
            coeffs[j] = field.add(coeffs[j], v);
        }
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        for t in 1..p {
            let v = coeffs
                .iter()
                .rev()
                .fold(0, |acc, &c| field.add(field.mul(acc, t), c));
            if v != 0 || used_t.contains(&t) {
                continue;
            }
            let ds = form.chart_derivative(field, 1, 0, s, t);
            let dt = form.chart_derivative(field, 0, 1, s, t);
            if ds == 0 && dt == 0 {
                continue;
            }
            used_t.push(t);
            out.push(MultiForm::chart_point(curve.ambient(), s, t));
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Degree;
    use crate::curvelab::random_curve;

    #[test]
    fn points_lie_on_curve() {
        let c = random_curve(Degree::Bi(4, 4), 32003, 5).unwrap();
        let pts = rational_points(&c, 20, 1);
        assert_eq!(pts.len(), 20);
        assert!(pts.iter().all(|p| c.contains_point(p)));
    }
}
