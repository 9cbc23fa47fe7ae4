use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::model::CurveModel;
use crate::algebra::matrix::{dense_to_sparse, SparseVec};
use crate::algebra::poly::{
    basis_index, eval_monomial, mono_mul, monomial_basis, Degree, Monomial, MultiForm,
};
use crate::algebra::{MultiplicationTensor, PrimeField, Rref, Scalar};
use crate::error::{Error, Result};

/// `H^0(O_C(twist))` as ambient forms of that degree modulo multiples of the curve
/// equation. Basis elements are the standard (non-leading) monomials.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    pub twist: Degree,
    pub ambient_basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: Rref,
    standard: Vec<usize>,
    coord: Vec<Option<usize>>,
}

/// Nonvanishing of `H^1(O(i, j))` on P1xP1.
fn h1_nonzero(i: i32, j: i32) -> bool {
    (i >= 0 && j <= -2) || (i <= -2 && j >= 0)
}

pub fn check_twist(curve: &CurveModel, twist: Degree) -> Result<()> {
    let rest = twist.sub(curve.degree())?;
    if let Degree::Bi(i, j) = rest {
        if h1_nonzero(i, j) {
            return Err(Error::TwistOutOfRange(format!(
                "{twist}: H^1(O{rest}) does not vanish, so restriction from P1xP1 is not surjective"
            )));
        }
    }
    Ok(())
}

impl SectionSpace {
    fn build(curve: &CurveModel, twist: Degree) -> Result<Self> {
        check_twist(curve, twist)?;
        let field = curve.field();
        let ambient_basis = monomial_basis(twist);
        let index = basis_index(&ambient_basis);
        let multipliers = monomial_basis(twist.sub(curve.degree())?);
        let relations: Vec<SparseVec> = multipliers
            .par_iter()
            .map(|m| {
                let mut v: SparseVec = curve
                    .form()
                    .terms
                    .iter()
                    .map(|(fm, &c)| (index[&mono_mul(fm, m)] as u32, c))
                    .collect();
                v.sort_unstable_by_key(|e| e.0);
                v
            })
            .collect();
        let relations = Rref::from_sparse(field, ambient_basis.len(), relations);
        let standard = relations.complement();
        let mut coord = vec![None; ambient_basis.len()];
        for (k, &i) in standard.iter().enumerate() {
            coord[i] = Some(k);
        }
        Ok(SectionSpace {
            twist,
            ambient_basis,
            index,
            relations,
            standard,
            coord,
        })
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn basis_monomials(&self) -> Vec<Monomial> {
        self.standard
            .iter()
            .map(|&i| self.ambient_basis[i])
            .collect()
    }

    /// Section coordinates of a vector given on the ambient monomial basis.
    pub fn reduce_ambient(&self, field: &PrimeField, mut v: Vec<Scalar>) -> Vec<Scalar> {
        self.relations.reduce(field, &mut v);
        self.standard.iter().map(|&i| v[i]).collect()
    }

    pub fn reduce_monomial(&self, field: &PrimeField, m: &Monomial) -> Result<SparseVec> {
        let &i = self.index.get(m).ok_or_else(|| {
            Error::DimensionMismatch(format!("monomial {m:?} not of degree {}", self.twist))
        })?;
        if let Some(k) = self.coord[i] {
            return Ok(vec![(k as u32, 1)]);
        }
        let mut v = vec![0; self.ambient_basis.len()];
        v[i] = 1;
        Ok(dense_to_sparse(field, &self.reduce_ambient(field, v)))
    }

    pub fn reduce_form(&self, field: &PrimeField, f: &MultiForm) -> Result<Vec<Scalar>> {
        if f.degree != self.twist {
            return Err(Error::DimensionMismatch(format!(
                "form of degree {} in {}",
                f.degree, self.twist
            )));
        }
        let mut v = vec![0; self.ambient_basis.len()];
        for (m, &c) in &f.terms {
            v[self.index[m]] = c;
        }
        Ok(self.reduce_ambient(field, v))
    }

    /// Representative ambient form of a section.
    pub fn lift(&self, field: &PrimeField, coords: &[Scalar]) -> MultiForm {
        let mut f = MultiForm::zero(self.twist);
        for (&c, &i) in coords.iter().zip(&self.standard) {
            let c = c % field.p();
            if c != 0 {
                f.terms.insert(self.ambient_basis[i], c);
            }
        }
        f
    }

    /// Values of the basis sections at a point of the curve.
    pub fn evaluate(&self, field: &PrimeField, point: &[Scalar]) -> Vec<Scalar> {
        self.standard
            .iter()
            .map(|&i| eval_monomial(field, &self.ambient_basis[i], point))
            .collect()
    }
}

pub fn section_space(curve: &CurveModel, twist: Degree) -> Result<Arc<SectionSpace>> {
    if twist.ambient() != curve.ambient() {
        return Err(Error::AmbientMismatch(format!(
            "twist {twist} on a curve in {:?}",
            curve.ambient()
        )));
    }
    if let Some(s) = curve.memo.sections.lock().unwrap().get(&twist) {
        return Ok(s.clone());
    }
    let s = Arc::new(SectionSpace::build(curve, twist)?);
    curve.memo.sections.lock().unwrap().insert(twist, s.clone());
    Ok(s)
}

/// Multiplication `H^0(O_C(t1)) x H^0(O_C(t2)) -> H^0(O_C(t1 + t2))` in the standard
/// monomial bases.
pub fn mult_tensor(
    curve: &CurveModel,
    t1: Degree,
    t2: Degree,
) -> Result<Arc<MultiplicationTensor>> {
    if let Some(t) = curve.memo.tensors.lock().unwrap().get(&(t1, t2)) {
        return Ok(t.clone());
    }
    let key = format!("{}-{}-{}", curve.content_hash(), t1, t2)
        .replace(['(', ')'], "")
        .replace(',', "_");
    let s1 = section_space(curve, t1)?;
    let s2 = section_space(curve, t2)?;
    let s3 = section_space(curve, t1.add(t2)?)?;
    let stored = curve
        .memo
        .store
        .as_ref()
        .and_then(|st| st.load(&key))
        .filter(|t| t.left_dim == s1.dim() && t.right_dim == s2.dim() && t.target_dim == s3.dim());
    let tensor = match stored {
        Some(t) => t,
        None => {
            let m1 = s1.basis_monomials();
            let m2 = s2.basis_monomials();
            let field = curve.field();
            let entries = m1
                .par_iter()
                .flat_map_iter(|a| m2.iter().map(move |b| (a, b)))
                .map(|(a, b)| s3.reduce_monomial(field, &mono_mul(a, b)))
                .collect::<Result<Vec<_>>>()?;
            let t = MultiplicationTensor::new(m1.len(), m2.len(), s3.dim(), entries)?;
            if let Some(st) = &curve.memo.store {
                st.save(&key, &t);
            }
            t
        }
    };
    let tensor = Arc::new(tensor);
    curve
        .memo
        .tensors
        .lock()
        .unwrap()
        .insert((t1, t2), tensor.clone());
    Ok(tensor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvelab::random_curve;

    #[test]
    fn riemann_roch_dimensions() {
        let c = random_curve(Degree::Bi(4, 4), 32003, 2).unwrap();
        let g = c.genus();
        assert_eq!(section_space(&c, c.omega_power(1)).unwrap().dim(), g);
        for q in 2..=3 {
            let s = section_space(&c, c.omega_power(q)).unwrap();
            assert_eq!(s.dim(), (2 * q as usize - 1) * (g - 1));
        }
        let p = random_curve(Degree::Plane(5), 32003, 2).unwrap();
        assert_eq!(section_space(&p, p.omega_power(1)).unwrap().dim(), 6);
        assert_eq!(section_space(&p, p.omega_power(2)).unwrap().dim(), 15);
    }

    #[test]
    fn out_of_range_twist() {
        let c = random_curve(Degree::Bi(3, 5), 32003, 2).unwrap();
        assert!(matches!(
            section_space(&c, Degree::Bi(5, 1)),
            Err(Error::TwistOutOfRange(_))
        ));
        assert!(matches!(
            section_space(&c, Degree::Plane(1)),
            Err(Error::AmbientMismatch(_))
        ));
    }

    #[test]
    fn tensor_is_commutative() {
        let c = random_curve(Degree::Bi(3, 4), 32003, 9).unwrap();
        let w = c.canonical_twist();
        let t = mult_tensor(&c, w, w).unwrap();
        assert!(t.is_symmetric());
        assert_eq!(t.target_dim, 3 * (c.genus() - 1));
    }
}
