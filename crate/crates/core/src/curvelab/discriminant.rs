use serde::{Deserialize, Serialize};

use super::model::CurveModel;
use super::pencil::PencilAxis;
use crate::algebra::poly::{Degree, Monomial};
use crate::algebra::univariate::{resultant_formal, UniPoly};
use crate::algebra::Scalar;
use crate::error::{Error, Result};

/// Branch data of a projection to P1, read off the discriminant binary form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchReport {
    pub axis: PencilAxis,
    pub fibre_degree: usize,
    /// Degree of the discriminant as a binary form; equals the Riemann-Hurwitz count.
    pub homogeneous_degree: usize,
    pub affine_degree: usize,
    pub multiplicity_at_infinity: usize,
    pub distinct_branch_points: usize,
    pub squarefree: bool,
}

struct Layout {
    base: usize,
    fibre: usize,
    fibre_degree: usize,
    lead_degree: usize,
    disc_degree: usize,
}

fn layout(degree: Degree, axis: PencilAxis) -> Layout {
    match (degree, axis) {
        (Degree::Bi(a, b), PencilAxis::FirstRuling) => Layout {
            base: 1,
            fibre: 3,
            fibre_degree: b as usize,
            lead_degree: a as usize,
            disc_degree: (a * (2 * b - 2)) as usize,
        },
        (Degree::Bi(a, b), PencilAxis::SecondRuling) => Layout {
            base: 3,
            fibre: 1,
            fibre_degree: a as usize,
            lead_degree: b as usize,
            disc_degree: (b * (2 * a - 2)) as usize,
        },
        (Degree::Plane(d), ax) => {
            let (base, fibre) = if ax == PencilAxis::FirstRuling {
                (0, 1)
            } else {
                (1, 0)
            };
            Layout {
                base,
                fibre,
                fibre_degree: d as usize,
                lead_degree: 0,
                disc_degree: (d * (d - 1)) as usize,
            }
        }
    }
}

/// Fibre polynomial coefficients `c_j(s)` of the curve in the affine chart.
fn fibre_coefficients(curve: &CurveModel, lay: &Layout) -> Vec<Vec<(u16, Scalar)>> {
    let mut cs = vec![Vec::new(); lay.fibre_degree + 1];
    for (m, &c) in &curve.form().terms {
        let m: &Monomial = m;
        cs[m[lay.fibre] as usize].push((m[lay.base], c));
    }
    cs
}

/// Discriminant of the projection along `axis`, dehomogenized at the affine chart.
pub fn discriminant(curve: &CurveModel, axis: PencilAxis) -> Result<(UniPoly, usize)> {
    let field = curve.field();
    let lay = layout(curve.degree(), axis);
    let n = lay.fibre_degree;
    let cs = fibre_coefficients(curve, &lay);
    let samples = lay.disc_degree + lay.lead_degree + 1;
    if samples as u64 >= field.p() as u64 {
        return Err(Error::Unsupported(
            "prime too small for discriminant interpolation".into(),
        ));
    }
    let eval_c = |j: usize, s: Scalar| {
        cs[j].iter().fold(0, |acc, &(e, c)| {
            field.add(acc, field.mul(c, field.pow(s, e as u64)))
        })
    };
    let xs: Vec<Scalar> = (0..samples as Scalar).collect();
    let ys: Vec<Scalar> = xs
        .iter()
        .map(|&s| {
            let f: Vec<Scalar> = (0..=n).map(|j| eval_c(j, s)).collect();
            let df: Vec<Scalar> = (1..=n)
                .map(|j| field.mul(field.from_u64(j as u64), f[j]))
                .collect();
            resultant_formal(field, &f, n, &df, n - 1)
        })
        .collect();
    let res = UniPoly::interpolate(field, &xs, &ys)?;
    let lead = UniPoly::interpolate(
        field,
        &xs[..lay.lead_degree + 1],
        &xs[..lay.lead_degree + 1]
            .iter()
            .map(|&s| eval_c(n, s))
            .collect::<Vec<_>>(),
    )?;
    if lead.is_zero() {
        return Err(Error::Degenerate(
            "fibre degree drops along the whole base".into(),
        ));
    }
    let (disc, rem) = res.divrem(field, &lead)?;
    if !rem.is_zero() {
        return Err(Error::Inconsistent(
            "resultant not divisible by the leading coefficient".into(),
        ));
    }
    if disc.is_zero() {
        return Err(Error::Degenerate(
            "discriminant vanishes identically (non-reduced fibres)".into(),
        ));
    }
    Ok((disc, lay.disc_degree))
}

/// Simple branching of the projection along `axis`.
pub fn certify_smooth_ordinary(curve: &CurveModel, axis: PencilAxis) -> Result<BranchReport> {
    let field = curve.field();
    let (disc, hom) = discriminant(curve, axis)?;
    let affine = disc.degree().unwrap_or(0);
    if affine > hom {
        return Err(Error::Inconsistent(format!(
            "discriminant degree {affine} exceeds {hom}"
        )));
    }
    let at_inf = hom - affine;
    let distinct = disc.distinct_root_count(field) + usize::from(at_inf > 0);
    Ok(BranchReport {
        axis,
        fibre_degree: layout(curve.degree(), axis).fibre_degree,
        homogeneous_degree: hom,
        affine_degree: affine,
        multiplicity_at_infinity: at_inf,
        distinct_branch_points: distinct,
        squarefree: disc.is_squarefree(field) && at_inf <= 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvelab::{impose_nodes, random_curve, random_node_points};

    #[test]
    fn general_curves_branch_simply() {
        for (deg, seed) in [
            (Degree::Bi(4, 4), 1),
            (Degree::Bi(3, 5), 2),
            (Degree::Plane(5), 3),
        ] {
            let c = random_curve(deg, 32003, seed).unwrap();
            for ax in [PencilAxis::FirstRuling, PencilAxis::SecondRuling] {
                let r = certify_smooth_ordinary(&c, ax).unwrap();
                assert!(r.squarefree, "{deg} {ax:?}");
                assert_eq!(r.distinct_branch_points, r.homogeneous_degree);
            }
        }
    }

    #[test]
    fn nodes_give_double_roots() {
        let pts = random_node_points(1, 32003, 8);
        let c = impose_nodes(Degree::Bi(3, 5), &pts, 32003, 8).unwrap();
        let r = certify_smooth_ordinary(&c, PencilAxis::SecondRuling).unwrap();
        assert!(!r.squarefree);
        assert_eq!(r.distinct_branch_points, r.homogeneous_degree - 1);
    }
}
