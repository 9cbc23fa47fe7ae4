use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::field::{PrimeField, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    /// Coordinates `x0, x1; y0, y1`.
    P1xP1,
    /// Coordinates `x, y, z`.
    P2,
}

impl Ambient {
    pub fn nvars(self) -> usize {
        match self {
            Ambient::P1xP1 => 4,
            Ambient::P2 => 3,
        }
    }
}

/// Bidegree on P1xP1 or degree on P2. Components may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Degree {
    Bi(i32, i32),
    Plane(i32),
}

impl Degree {
    pub fn ambient(self) -> Ambient {
        match self {
            Degree::Bi(..) => Ambient::P1xP1,
            Degree::Plane(_) => Ambient::P2,
        }
    }

    pub fn add(self, other: Degree) -> Result<Degree> {
        match (self, other) {
            (Degree::Bi(a, b), Degree::Bi(c, d)) => Ok(Degree::Bi(a + c, b + d)),
            (Degree::Plane(a), Degree::Plane(b)) => Ok(Degree::Plane(a + b)),
            _ => Err(Error::AmbientMismatch(format!("{self} + {other}"))),
        }
    }

    pub fn sub(self, other: Degree) -> Result<Degree> {
        self.add(other.scale(-1))
    }

    pub fn scale(self, k: i32) -> Degree {
        match self {
            Degree::Bi(a, b) => Degree::Bi(k * a, k * b),
            Degree::Plane(d) => Degree::Plane(k * d),
        }
    }

    pub fn is_negative_somewhere(self) -> bool {
        match self {
            Degree::Bi(a, b) => a < 0 || b < 0,
            Degree::Plane(d) => d < 0,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Bi(a, b) => write!(f, "({a},{b})"),
            Degree::Plane(d) => write!(f, "({d})"),
        }
    }
}

/// Exponent vector; P2 leaves the last slot at zero.
pub type Monomial = [u16; 4];

pub fn monomial_degree(ambient: Ambient, m: &Monomial) -> Degree {
    match ambient {
        Ambient::P1xP1 => Degree::Bi((m[0] + m[1]) as i32, (m[2] + m[3]) as i32),
        Ambient::P2 => Degree::Plane((m[0] + m[1] + m[2]) as i32),
    }
}

pub fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Monomials of a degree in graded-lex order (descending lexicographic on exponents,
/// so `x0^a y0^b` or `x^d` comes first). Negative degrees give an empty basis.
pub fn monomial_basis(degree: Degree) -> Vec<Monomial> {
    let mut out = Vec::new();
    match degree {
        Degree::Bi(m, n) => {
            if m < 0 || n < 0 {
                return out;
            }
            for i in (0..=m).rev() {
                for j in (0..=n).rev() {
                    out.push([i as u16, (m - i) as u16, j as u16, (n - j) as u16]);
                }
            }
        }
        Degree::Plane(d) => {
            if d < 0 {
                return out;
            }
            for e0 in (0..=d).rev() {
                for e1 in (0..=d - e0).rev() {
                    out.push([e0 as u16, e1 as u16, (d - e0 - e1) as u16, 0]);
                }
            }
        }
    }
    out
}

pub fn basis_size(degree: Degree) -> usize {
    match degree {
        Degree::Bi(m, n) if m >= 0 && n >= 0 => ((m + 1) * (n + 1)) as usize,
        Degree::Plane(d) if d >= 0 => ((d + 1) * (d + 2) / 2) as usize,
        _ => 0,
    }
}

pub fn basis_index(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (*m, i)).collect()
}

pub fn eval_monomial(field: &PrimeField, m: &Monomial, point: &[Scalar]) -> Scalar {
    let mut r = 1;
    for (e, &x) in m.iter().zip(point) {
        if *e > 0 {
            r = field.mul(r, field.pow(x, *e as u64));
        }
    }
    r
}

/// Homogeneous (or bihomogeneous) form with coefficients in a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiForm {
    pub ambient: Ambient,
    pub degree: Degree,
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl MultiForm {
    pub fn zero(degree: Degree) -> Self {
        MultiForm {
            ambient: degree.ambient(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(degree: Degree, m: Monomial) -> Result<Self> {
        if monomial_degree(degree.ambient(), &m) != degree {
            return Err(Error::InvalidDegree(format!(
                "monomial {m:?} is not of degree {degree}"
            )));
        }
        let mut f = Self::zero(degree);
        f.terms.insert(m, 1);
        Ok(f)
    }

    /// Coefficients listed along `monomial_basis(degree)`.
    pub fn from_coeffs(field: &PrimeField, degree: Degree, coeffs: &[Scalar]) -> Result<Self> {
        let basis = monomial_basis(degree);
        if basis.len() != coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a basis of size {}",
                coeffs.len(),
                basis.len()
            )));
        }
        let mut f = Self::zero(degree);
        for (m, &c) in basis.iter().zip(coeffs) {
            let c = c % field.p();
            if c != 0 {
                f.terms.insert(*m, c);
            }
        }
        Ok(f)
    }

    pub fn coeffs(&self) -> Vec<Scalar> {
        monomial_basis(self.degree)
            .iter()
            .map(|m| self.terms.get(m).copied().unwrap_or(0))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiply(&self, field: &PrimeField, other: &MultiForm) -> Result<MultiForm> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(
                "product of forms on different ambients".into(),
            ));
        }
        let mut out = MultiForm::zero(self.degree.add(other.degree)?);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = out.terms.entry(mono_mul(a, b)).or_insert(0);
                *e = field.add(*e, field.mul(ca, cb));
            }
        }
        out.terms.retain(|_, v| *v != 0);
        Ok(out)
    }

    pub fn add(&self, field: &PrimeField, other: &MultiForm) -> Result<MultiForm> {
        if self.degree != other.degree {
            return Err(Error::InvalidDegree(format!(
                "{} + {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            let e = out.terms.entry(*m).or_insert(0);
            *e = field.add(*e, c);
        }
        out.terms.retain(|_, v| *v != 0);
        Ok(out)
    }

    pub fn scale(&self, field: &PrimeField, c: Scalar) -> MultiForm {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = field.mul(*v, c);
        }
        out.terms.retain(|_, v| *v != 0);
        out
    }

    pub fn evaluate(&self, field: &PrimeField, point: &[Scalar]) -> Scalar {
        self.terms.iter().fold(0, |acc, (m, &c)| {
            field.add(acc, field.mul(c, eval_monomial(field, m, point)))
        })
    }

    /// Affine chart used for nodes and fibres: `(x0, y0) = (1, 1)` on P1xP1 with
    /// coordinates `(s, t) = (x1, y1)`, and `z = 1` on P2 with `(s, t) = (x, y)`.
    pub fn chart_exponents(ambient: Ambient, m: &Monomial) -> (u16, u16) {
        match ambient {
            Ambient::P1xP1 => (m[1], m[3]),
            Ambient::P2 => (m[0], m[1]),
        }
    }

    pub fn chart_point(ambient: Ambient, s: Scalar, t: Scalar) -> Vec<Scalar> {
        match ambient {
            Ambient::P1xP1 => vec![1, s, 1, t],
            Ambient::P2 => vec![s, t, 1],
        }
    }

    /// Value of `d^(i+j) F / ds^i dt^j` at the chart point `(s, t)`.
    pub fn chart_derivative(
        &self,
        field: &PrimeField,
        i: u16,
        j: u16,
        s: Scalar,
        t: Scalar,
    ) -> Scalar {
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let v = chart_monomial_derivative(
                field,
                Self::chart_exponents(self.ambient, m),
                i,
                j,
                s,
                t,
            );
            acc = field.add(acc, field.mul(c, v));
        }
        acc
    }
}

pub fn chart_monomial_derivative(
    field: &PrimeField,
    (a, b): (u16, u16),
    i: u16,
    j: u16,
    s: Scalar,
    t: Scalar,
) -> Scalar {
    if i > a || j > b {
        return 0;
    }
    let falling = |n: u16, k: u16| (0..k).fold(1u32, |acc, r| field.mul(acc, (n - r) as u32));
    let coeff = field.mul(falling(a, i), falling(b, j));
    field.mul(
        coeff,
        field.mul(field.pow(s, (a - i) as u64), field.pow(t, (b - j) as u64)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(Degree::Bi(2, 2)).len(), 9);
        assert_eq!(monomial_basis(Degree::Plane(3)).len(), 10);
        assert!(monomial_basis(Degree::Bi(-1, 2)).is_empty());
        assert!(monomial_basis(Degree::Plane(-2)).is_empty());
        assert_eq!(monomial_basis(Degree::Plane(2))[0], [2, 0, 0, 0]);
        assert_eq!(monomial_basis(Degree::Bi(1, 1))[0], [1, 0, 1, 0]);
    }

    #[test]
    fn ambient_mismatch() {
        let field = PrimeField::new(32003).unwrap();
        let a = MultiForm::monomial(Degree::Bi(1, 0), [1, 0, 0, 0]).unwrap();
        let b = MultiForm::monomial(Degree::Plane(1), [1, 0, 0, 0]).unwrap();
        assert!(matches!(
            a.multiply(&field, &b),
            Err(Error::AmbientMismatch(_))
        ));
    }

    proptest! {
        #[test]
        fn basis_count_and_order(m in 0i32..8, n in 0i32..8, d in 0i32..10) {
            let b = monomial_basis(Degree::Bi(m, n));
            prop_assert_eq!(b.len(), basis_size(Degree::Bi(m, n)));
            prop_assert!(b.windows(2).all(|w| w[0] > w[1]));
            let q = monomial_basis(Degree::Plane(d));
            prop_assert_eq!(q.len() as i32, (d + 1) * (d + 2) / 2);
            prop_assert!(q.windows(2).all(|w| w[0] > w[1]));
        }

        #[test]
        fn product_evaluates_multiplicatively(seed in 0u64..1000, s in 0u32..32003, t in 0u32..32003) {
            use rand::{Rng, SeedableRng};
            let field = PrimeField::new(32003).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let da = Degree::Bi(2, 3);
            let db = Degree::Bi(1, 2);
            let ca: Vec<u32> = (0..basis_size(da)).map(|_| rng.gen_range(0..32003)).collect();
            let cb: Vec<u32> = (0..basis_size(db)).map(|_| rng.gen_range(0..32003)).collect();
            let fa = MultiForm::from_coeffs(&field, da, &ca).unwrap();
            let fb = MultiForm::from_coeffs(&field, db, &cb).unwrap();
            let pt = MultiForm::chart_point(Ambient::P1xP1, s, t);
            let prod = fa.multiply(&field, &fb).unwrap();
            prop_assert_eq!(prod.degree, Degree::Bi(3, 5));
            prop_assert_eq!(prod.evaluate(&field, &pt), field.mul(fa.evaluate(&field, &pt), fb.evaluate(&field, &pt)));
        }
    }
}
