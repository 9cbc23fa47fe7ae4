//! Inner projection from points of the curve: rank-4 quadrics of pencils and the
//! projection of syzygy classes one point at a time.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::matrix::kernel_basis;
use crate::algebra::poly::{Monomial, MultiForm};
use crate::algebra::{ExactMatrix, ExteriorBasis, PrimeField, Rref, Scalar, Sym2Index};
use crate::curvelab::model::derive_seed;
use crate::curvelab::{mult_tensor, rational_points, section_space, CurveModel, Pencil};
use crate::error::{Error, Result};
use crate::koszul::koszul_differential;

/// Points `z_j` on the curve and the sections `W` of `omega` vanishing at all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionCenter {
    pub points: Vec<Vec<Scalar>>,
    /// Reduced echelon basis of `W` in coordinates of `V = H^0(omega)`.
    pub w_basis: Rref,
    /// Per pencil, a basis `s, t` of `H^0(omega - L - sum z_j)` in section coordinates.
    pub residual_bases: Vec<[Vec<Scalar>; 2]>,
    pub attempts: usize,
}

impl ProjectionCenter {
    pub fn w_dim(&self) -> usize {
        self.w_basis.rank()
    }

    /// Coordinates in `W` of a vector of `V`, if it lies in `W`.
    pub fn coordinates(&self, field: &PrimeField, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.w_basis.coordinates(field, v)
    }

    /// Values at a point of the basis sections of `W`.
    pub fn evaluate(&self, curve: &CurveModel, point: &[Scalar]) -> Result<Vec<Scalar>> {
        let field = curve.field();
        let v = section_space(curve, curve.canonical_twist())?.evaluate(field, point);
        Ok(self
            .w_basis
            .rows()
            .iter()
            .map(|row| dot(field, row, &v))
            .collect())
    }
}

fn dot(field: &PrimeField, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

const CENTER_ATTEMPTS: usize = 16;

/// `count` points imposing independent conditions on `omega` and with
/// `h^0(omega - L - sum z_j) = 2` for every pencil.
pub fn projection_center(
    curve: &CurveModel,
    count: usize,
    pencils: &[Pencil],
    seed: u64,
) -> Result<ProjectionCenter> {
    let field = curve.field();
    let v = section_space(curve, curve.canonical_twist())?;
    let g = v.dim();
    if count >= g {
        return Err(Error::Input(format!(
            "{count} points leave no sections of omega"
        )));
    }
    let residuals = pencils
        .iter()
        .map(|pl| section_space(curve, pl.residual_twist(curve)?))
        .collect::<Result<Vec<_>>>()?;
    for attempt in 1..=CENTER_ATTEMPTS {
        let points = rational_points(
            curve,
            count,
            derive_seed(seed, &format!("center/{attempt}")),
        );
        if points.len() < count {
            return Err(Error::Resample(format!(
                "only {} rational points found; use a larger prime",
                points.len()
            )));
        }
        let rows: Vec<Vec<Scalar>> = points.iter().map(|z| v.evaluate(field, z)).collect();
        let w = kernel_basis(field, &ExactMatrix::from_dense(field, g, &rows)?);
        if w.len() != g - count {
            continue;
        }
        let mut residual_bases = Vec::new();
        for r in &residuals {
            let rows: Vec<Vec<Scalar>> = points.iter().map(|z| r.evaluate(field, z)).collect();
            let k = kernel_basis(field, &ExactMatrix::from_dense(field, r.dim(), &rows)?);
            if k.len() != 2 {
                break;
            }
            residual_bases.push([k[0].clone(), k[1].clone()]);
        }
        if residual_bases.len() != pencils.len() {
            continue;
        }
        return Ok(ProjectionCenter {
            points,
            w_basis: Rref::from_vectors(field, g, w),
            residual_bases,
            attempts: attempt,
        });
    }
    Err(Error::Resample(format!(
        "no admissible center of {count} points in {CENTER_ATTEMPTS} attempts"
    )))
}

/// A quadric on `W`, as Sym^2 coordinates and as a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricForm {
    pub dim: usize,
    pub coefficients: Vec<Scalar>,
    pub matrix: Vec<Vec<Scalar>>,
}

impl QuadricForm {
    pub fn from_coefficients(field: &PrimeField, dim: usize, coefficients: Vec<Scalar>) -> Self {
        let matrix = Sym2Index { n: dim }.to_symmetric_matrix(field, &coefficients);
        QuadricForm {
            dim,
            coefficients,
            matrix,
        }
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        Rref::from_vectors(field, self.dim, self.matrix.clone()).rank()
    }

    pub fn evaluate(&self, field: &PrimeField, z: &[Scalar]) -> Scalar {
        let sym = Sym2Index { n: self.dim };
        self.coefficients
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &c)| {
                let (i, j) = sym.pair(k);
                field.add(acc, field.mul(c, field.mul(z[i], z[j])))
            })
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }
}

/// `us * vt - ut * vs` written on `W`.
pub fn pencil_quadric(
    curve: &CurveModel,
    pencil: &Pencil,
    center: &ProjectionCenter,
    index: usize,
) -> Result<QuadricForm> {
    let field = curve.field();
    let v = section_space(curve, curve.canonical_twist())?;
    let r = section_space(curve, pencil.residual_twist(curve)?)?;
    let [s, t] = center
        .residual_bases
        .get(index)
        .ok_or_else(|| Error::Input(format!("center has no residual basis for pencil {index}")))?;
    let to_w = |sec: &Monomial, coords: &[Scalar]| -> Result<Vec<Scalar>> {
        let unit = MultiForm::monomial(pencil.twist, *sec)?;
        let prod = unit.multiply(field, &r.lift(field, coords))?;
        let vv = v.reduce_form(field, &prod)?;
        center.coordinates(field, &vv).ok_or_else(|| {
            Error::Inconsistent("product section does not vanish on the center".into())
        })
    };
    let [u_m, v_m] = &pencil.sections;
    let (us, ut, vs, vt) = (to_w(u_m, s)?, to_w(u_m, t)?, to_w(v_m, s)?, to_w(v_m, t)?);
    let sym = Sym2Index { n: center.w_dim() };
    let a = sym.product(field, &us, &vt);
    let b = sym.product(field, &ut, &vs);
    let q = QuadricForm::from_coefficients(
        field,
        sym.n,
        a.iter().zip(&b).map(|(&x, &y)| field.sub(x, y)).collect(),
    );
    let rk = q.rank(field);
    if rk != 4 {
        return Err(Error::Degenerate(format!(
            "pencil quadric has rank {rk}; degenerate pencil/center configuration, resample"
        )));
    }
    Ok(q)
}

/// Vanishing at curve points and membership in the kernel of `Sym^2 W -> H^0(2 omega)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricChecks {
    pub rank: usize,
    pub points_tested: usize,
    pub vanishes_on_points: bool,
    pub in_kernel: bool,
}

pub fn check_quadric(
    curve: &CurveModel,
    center: &ProjectionCenter,
    q: &QuadricForm,
    samples: usize,
    seed: u64,
) -> Result<QuadricChecks> {
    let field = curve.field();
    let pts = rational_points(curve, samples, derive_seed(seed, "quadric-samples"));
    let mut vanishes = true;
    for z in &pts {
        if q.evaluate(field, &center.evaluate(curve, z)?) != 0 {
            vanishes = false;
        }
    }
    let w = curve.canonical_twist();
    let t = mult_tensor(curve, w, w)?.restrict(field, center.w_basis.rows(), center.w_basis.rows());
    let image = Sym2Index { n: q.dim }.push_forward(field, &t, &q.coefficients);
    Ok(QuadricChecks {
        rank: q.rank(field),
        points_tested: pts.len(),
        vanishes_on_points: vanishes,
        in_kernel: image.iter().all(|&x| x == 0),
    })
}

/// The quadrics are linearly independent.
pub fn general_position_check(field: &PrimeField, quadrics: &[QuadricForm]) -> bool {
    let Some(first) = quadrics.first() else {
        return true;
    };
    let n = first.coefficients.len();
    if quadrics.iter().any(|q| q.coefficients.len() != n) {
        return false;
    }
    Rref::from_vectors(
        field,
        n,
        quadrics.iter().map(|q| q.coefficients.clone()).collect(),
    )
    .rank()
        == quadrics.len()
}

/// A class in `wedge^p U (x) U` for a subspace `U` of `V` given by a frame of vectors
/// in `V` coordinates; coefficients are indexed `I * dim U + a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectedClass {
    pub frame: Vec<Vec<Scalar>>,
    pub p: usize,
    pub coeffs: Vec<Scalar>,
}

impl ProjectedClass {
    /// A class on all of `V`, in the standard frame.
    pub fn on_canonical_space(g: usize, p: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        let expected = ExteriorBasis::new(g, p).len() * g;
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients, expected {expected}",
                coeffs.len()
            )));
        }
        let frame = (0..g)
            .map(|i| {
                let mut e = vec![0; g];
                e[i] = 1;
                e
            })
            .collect();
        Ok(ProjectedClass { frame, p, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhbauerStep {
    pub class: ProjectedClass,
    /// The component along the section not vanishing at the point is zero.
    pub leading_residual_zero: bool,
    /// The image is a cocycle for the ring generated by the new frame.
    pub cocycle_ok: bool,
}

/// Contract with evaluation at `x` and rewrite in a frame of sections vanishing at `x`.
pub fn ehbauer_project(
    curve: &CurveModel,
    class: &ProjectedClass,
    x: &[Scalar],
) -> Result<EhbauerStep> {
    let field = curve.field();
    if !curve.contains_point(x) {
        return Err(Error::Input(format!("{x:?} is not on the curve")));
    }
    if class.p == 0 {
        return Err(Error::Input("nothing to contract at p = 0".into()));
    }
    let omega = section_space(curve, curve.canonical_twist())?;
    let vals = omega.evaluate(field, x);
    let n = class.frame.len();
    let ev: Vec<Scalar> = class.frame.iter().map(|b| dot(field, b, &vals)).collect();
    let lead = ev
        .iter()
        .rposition(|&e| e != 0)
        .ok_or_else(|| Error::Degenerate("every frame section vanishes at the point".into()))?;
    let inv = field.inv(ev[lead])?;
    let frame: Vec<Vec<Scalar>> = (0..n)
        .filter(|&l| l != lead)
        .map(|l| {
            let f = field.neg(field.mul(ev[l], inv));
            class.frame[l]
                .iter()
                .zip(&class.frame[lead])
                .map(|(&a, &b)| field.add(a, field.mul(f, b)))
                .collect()
        })
        .collect();
    let src = ExteriorBasis::new(n, class.p);
    let dst = ExteriorBasis::new(n - 1, class.p - 1);
    let m = n - 1;
    let mut out = vec![0; dst.len() * m];
    let mut residual = vec![0; dst.len()];
    let shift = |l: u32| if l as usize > lead { l - 1 } else { l };
    let mut reduced: Vec<u32> = Vec::with_capacity(class.p);
    for idx in 0..src.len() {
        let subset = src.subset(idx);
        for a in 0..n {
            let c = class.coeffs[idx * n + a];
            if c == 0 {
                continue;
            }
            for (j, &l) in subset.iter().enumerate() {
                if ev[l as usize] == 0 {
                    continue;
                }
                if subset
                    .iter()
                    .enumerate()
                    .any(|(t, &q)| t != j && q as usize == lead)
                {
                    continue;
                }
                reduced.clear();
                reduced.extend(
                    subset
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != j)
                        .map(|(_, &q)| shift(q)),
                );
                let r = dst.rank(&reduced);
                let mut val = field.mul(c, ev[l as usize]);
                if j % 2 == 1 {
                    val = field.neg(val);
                }
                residual[r] = field.add(residual[r], field.mul(val, ev[a]));
                if a != lead {
                    let k = r * m + shift(a as u32) as usize;
                    out[k] = field.add(out[k], val);
                }
            }
        }
    }
    let w = curve.canonical_twist();
    let cocycle_ok = if class.p >= 2 {
        let t = mult_tensor(curve, w, w)?.restrict(field, &frame, &frame);
        let d = koszul_differential(field, m, class.p - 1, &t)?;
        d.mul_vec(field, &out)?.iter().all(|&x| x == 0)
    } else {
        true
    };
    Ok(EhbauerStep {
        class: ProjectedClass {
            frame,
            p: class.p - 1,
            coeffs: out,
        },
        leading_residual_zero: residual.iter().all(|&x| x == 0),
        cocycle_ok,
    })
}

/// The quadric `sum c_{la} w_l w_a` of a class at `p = 1`, written on the center's `W`.
pub fn class_quadric(
    field: &PrimeField,
    class: &ProjectedClass,
    center: &ProjectionCenter,
) -> Result<QuadricForm> {
    if class.p != 1 {
        return Err(Error::Input(format!("class still has p = {}", class.p)));
    }
    let n = class.frame.len();
    let coords = class
        .frame
        .iter()
        .map(|f| center.coordinates(field, f))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Inconsistent("projected frame leaves W".into()))?;
    let sym = Sym2Index { n: center.w_dim() };
    let mut q = vec![0; sym.len()];
    for l in 0..n {
        for a in 0..n {
            let c = class.coeffs[l * n + a];
            if c == 0 {
                continue;
            }
            for (k, x) in sym
                .product(field, &coords[l], &coords[a])
                .into_iter()
                .enumerate()
            {
                q[k] = field.add(q[k], field.mul(c, x));
            }
        }
    }
    Ok(QuadricForm::from_coefficients(field, sym.n, q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilScalars {
    pub classes: usize,
    /// Ratio to the pencil quadric, `None` when the image leaves its span.
    pub scalars: Vec<Option<Scalar>>,
    pub nonzero_images: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarReport {
    pub per_pencil: Vec<PencilScalars>,
    pub all_in_span: bool,
    pub each_pencil_nonzero: bool,
    pub cocycles_ok: bool,
    pub leading_residuals_zero: bool,
}

fn ratio(field: &PrimeField, image: &QuadricForm, target: &QuadricForm) -> Option<Scalar> {
    let piv = target.coefficients.iter().position(|&c| c != 0)?;
    let lambda = field
        .div(image.coefficients[piv], target.coefficients[piv])
        .ok()?;
    image
        .coefficients
        .iter()
        .zip(&target.coefficients)
        .all(|(&a, &b)| a == field.mul(lambda, b))
        .then_some(lambda)
}

/// Project every class of `classes[i]` through all center points and compare with the
/// quadric of pencil `i`.
pub fn iterated_projection_to_quadric(
    curve: &CurveModel,
    quadrics: &[QuadricForm],
    classes: &[Vec<Vec<Scalar>>],
    p: usize,
    center: &ProjectionCenter,
) -> Result<ScalarReport> {
    let field = curve.field();
    let g = curve.genus();
    if quadrics.len() != classes.len() {
        return Err(Error::Input("one quadric per class family expected".into()));
    }
    if p != center.points.len() + 1 {
        return Err(Error::Input(format!(
            "p = {p} needs {} center points",
            p - 1
        )));
    }
    let mut per_pencil = Vec::new();
    let (mut cocycles_ok, mut residuals_ok) = (true, true);
    for (q, family) in quadrics.iter().zip(classes) {
        let results = family
            .par_iter()
            .map(|coeffs| {
                let mut cls = ProjectedClass::on_canonical_space(g, p, coeffs.clone())?;
                let (mut cok, mut rok) = (true, true);
                for z in &center.points {
                    let step = ehbauer_project(curve, &cls, z)?;
                    cok &= step.cocycle_ok;
                    rok &= step.leading_residual_zero;
                    cls = step.class;
                }
                Ok((class_quadric(field, &cls, center)?, cok, rok))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut scalars = Vec::new();
        let mut nonzero = 0;
        for (img, cok, rok) in results {
            cocycles_ok &= cok;
            residuals_ok &= rok;
            if !img.is_zero() {
                nonzero += 1;
            }
            scalars.push(if img.is_zero() {
                Some(0)
            } else {
                ratio(field, &img, q)
            });
        }
        per_pencil.push(PencilScalars {
            classes: family.len(),
            scalars,
            nonzero_images: nonzero,
        });
    }
    Ok(ScalarReport {
        all_in_span: per_pencil
            .iter()
            .all(|p| p.scalars.iter().all(Option::is_some)),
        each_pencil_nonzero: per_pencil.iter().all(|p| p.nonzero_images > 0),
        per_pencil,
        cocycles_ok,
        leading_residuals_zero: residuals_ok,
    })
}
