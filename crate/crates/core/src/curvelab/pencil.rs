use serde::{Deserialize, Serialize};

use super::model::CurveModel;
use super::sections::section_space;
use crate::algebra::poly::{Ambient, Degree, Monomial};
use crate::error::{Error, Result};

/// Projection to one factor (or, in P2, from a coordinate point).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PencilAxis {
    /// Line bundle `O(1,0)`; fibres are cut by `x1/x0`. In P2: projection to `(x : z)`.
    FirstRuling,
    /// Line bundle `O(0,1)`; fibres are cut by `y1/y0`. In P2: projection to `(y : z)`.
    SecondRuling,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pencil {
    pub axis: PencilAxis,
    /// Degree of the map to P1.
    pub degree: usize,
    pub twist: Degree,
    /// The two spanning sections `u, v`.
    pub sections: [Monomial; 2],
}

impl Pencil {
    /// Twist of `omega - L` on P1xP1.
    pub fn residual_twist(&self, curve: &CurveModel) -> Result<Degree> {
        curve.canonical_twist().sub(self.twist)
    }
}

pub fn pencil(curve: &CurveModel, axis: PencilAxis) -> Result<Pencil> {
    let Degree::Bi(a, b) = curve.degree() else {
        return Err(Error::Unsupported(
            "ruling pencils exist only on P1xP1".into(),
        ));
    };
    let (twist, degree, sections) = match axis {
        PencilAxis::FirstRuling => (Degree::Bi(1, 0), b as usize, [[1, 0, 0, 0], [0, 1, 0, 0]]),
        PencilAxis::SecondRuling => (Degree::Bi(0, 1), a as usize, [[0, 0, 1, 0], [0, 0, 0, 1]]),
    };
    let h0 = section_space(curve, twist)?.dim();
    if h0 != 2 {
        return Err(Error::NotAPencil(format!("h^0(O_C{twist}) = {h0}")));
    }
    Ok(Pencil {
        axis,
        degree,
        twist,
        sections,
    })
}

/// Ruling pencils of minimal degree: one for `a != b`, two for `a = b`.
pub fn minimal_pencils(curve: &CurveModel) -> Result<Vec<Pencil>> {
    let Degree::Bi(a, b) = curve.degree() else {
        return Err(Error::Unsupported(
            "ruling pencils exist only on P1xP1".into(),
        ));
    };
    let axes: &[PencilAxis] = match a.cmp(&b) {
        std::cmp::Ordering::Less => &[PencilAxis::SecondRuling],
        std::cmp::Ordering::Greater => &[PencilAxis::FirstRuling],
        std::cmp::Ordering::Equal => &[PencilAxis::FirstRuling, PencilAxis::SecondRuling],
    };
    axes.iter().map(|&ax| pencil(curve, ax)).collect()
}

/// Whether the pencil given by `twist` has `h^0(L^2) = 3`.
pub fn type_i_check(curve: &CurveModel, twist: Degree) -> Result<bool> {
    if curve.ambient() != Ambient::P1xP1 {
        return Err(Error::Unsupported(
            "type check needs a ruling pencil".into(),
        ));
    }
    if twist != Degree::Bi(1, 0) && twist != Degree::Bi(0, 1) {
        return Err(Error::NotAPencil(format!("{twist} is not a ruling class")));
    }
    let h0 = section_space(curve, twist)?.dim();
    if h0 != 2 {
        return Err(Error::NotAPencil(format!("h^0(O_C{twist}) = {h0}")));
    }
    Ok(section_space(curve, twist.scale(2))?.dim() == 3)
}
