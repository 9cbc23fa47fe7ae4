//! Dense univariate polynomials over a prime field, enough for discriminants and
//! squarefree tests.

use super::field::{PrimeField, Scalar};
use crate::error::{Error, Result};

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, field: &PrimeField, x: Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn derivative(&self, field: &PrimeField) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| field.mul(c, field.from_u64(i as u64)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &PrimeField, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    field.sub(
                        self.coeffs.get(i).copied().unwrap_or(0),
                        other.coeffs.get(i).copied().unwrap_or(0),
                    )
                })
                .collect(),
        )
    }

    pub fn mul(&self, field: &PrimeField, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        UniPoly::new(out)
    }

    pub fn divrem(&self, field: &PrimeField, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = field.inv(d.lead())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![0; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = field.mul(r[i], inv);
            q[i - dd] = c;
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[i - dd + j] = field.sub(r[i - dd + j], field.mul(c, dc));
                }
            }
        }
        r.truncate(dd);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    pub fn monic(&self, field: &PrimeField) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = field.inv(self.lead()).unwrap();
        UniPoly::new(self.coeffs.iter().map(|&c| field.mul(c, inv)).collect())
    }

    pub fn gcd(field: &PrimeField, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(field, &b).unwrap();
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// Squarefree over the algebraic closure; requires the degree to be below p.
    pub fn is_squarefree(&self, field: &PrimeField) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => UniPoly::gcd(field, self, &self.derivative(field)).degree() == Some(0),
        }
    }

    /// Degree of the squarefree part, i.e. the number of distinct roots over the
    /// algebraic closure when the degree is below p.
    pub fn distinct_root_count(&self, field: &PrimeField) -> usize {
        match self.degree() {
            None | Some(0) => 0,
            Some(d) => {
                let g = UniPoly::gcd(field, self, &self.derivative(field));
                d - g.degree().unwrap_or(0)
            }
        }
    }

    /// Newton interpolation through distinct nodes.
    pub fn interpolate(field: &PrimeField, xs: &[Scalar], ys: &[Scalar]) -> Result<UniPoly> {
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch(
                "interpolation nodes and values".into(),
            ));
        }
        let n = xs.len();
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = field.sub(dd[i], dd[i - 1]);
                let den = field.sub(xs[i], xs[i - j]);
                dd[i] = field.div(num, den)?;
            }
        }
        let mut poly = UniPoly::zero();
        for i in (0..n).rev() {
            // poly = poly * (x - xs[i]) + dd[i]
            let shifted = poly.mul(field, &UniPoly::new(vec![field.neg(xs[i]), 1]));
            let mut c = shifted.coeffs;
            if c.is_empty() {
                c.push(0);
            }
            c[0] = field.add(c[0], dd[i]);
            poly = UniPoly::new(c);
        }
        Ok(poly)
    }
}

/// Determinant of a small dense square matrix.
pub fn determinant(field: &PrimeField, m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if r != c {
            a.swap(r, c);
            det = field.neg(det);
        }
        det = field.mul(det, a[c][c]);
        let inv = field.inv(a[c][c]).unwrap();
        for r in c + 1..n {
            if a[r][c] != 0 {
                let f = field.mul(a[r][c], inv);
                for j in c..n {
                    a[r][j] = field.sub(a[r][j], field.mul(f, a[c][j]));
                }
            }
        }
    }
    det
}

/// Resultant of `f` and `g` taken with formal degrees `df`, `dg` (coefficient lists
/// may have leading zeros), via the Sylvester determinant.
pub fn resultant_formal(
    field: &PrimeField,
    f: &[Scalar],
    df: usize,
    g: &[Scalar],
    dg: usize,
) -> Scalar {
    let n = df + dg;
    if n == 0 {
        return 1;
    }
    let coef = |v: &[Scalar], i: usize| v.get(i).copied().unwrap_or(0);
    let mut m = vec![vec![0; n]; n];
    for r in 0..dg {
        for i in 0..=df {
            m[r][r + i] = coef(f, df - i);
        }
    }
    for r in 0..df {
        for i in 0..=dg {
            m[dg + r][r + i] = coef(g, dg - i);
        }
    }
    determinant(field, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn squarefree_detects_double_roots() {
        let field = f();
        // (x-1)^2 (x+2)
        let p = UniPoly::new(vec![2, field.neg(3), 0, 1]);
        assert!(!p.is_squarefree(&field));
        assert_eq!(p.distinct_root_count(&field), 2);
        let q = UniPoly::new(vec![field.neg(2), 0, 1]);
        assert!(q.is_squarefree(&field));
    }

    #[test]
    fn resultant_of_linear_forms() {
        let field = f();
        // Res(x - 3, x - 7) = 3 - 7
        let r = resultant_formal(&field, &[field.neg(3), 1], 1, &[field.neg(7), 1], 1);
        assert_eq!(r, field.neg(4));
    }

    proptest! {
        #[test]
        fn interpolation_roundtrip(cs in proptest::collection::vec(0u32..32003, 1..12)) {
            let field = f();
            let p = UniPoly::new(cs);
            let n = p.coeffs.len().max(1);
            let xs: Vec<u32> = (0..n as u32).map(|i| i * 7 + 1).collect();
            let ys: Vec<u32> = xs.iter().map(|&x| p.eval(&field, x)).collect();
            prop_assert_eq!(UniPoly::interpolate(&field, &xs, &ys).unwrap(), p);
        }

        #[test]
        fn divrem_identity(a in proptest::collection::vec(0u32..32003, 0..10), b in proptest::collection::vec(1u32..32003, 1..5)) {
            let field = f();
            let a = UniPoly::new(a);
            let b = UniPoly::new(b);
            let (q, r) = a.divrem(&field, &b).unwrap();
            let back = q.mul(&field, &b);
            let mut sum = back.coeffs.clone();
            sum.resize(sum.len().max(r.coeffs.len()), 0);
            for (i, &c) in r.coeffs.iter().enumerate() { sum[i] = field.add(sum[i], c); }
            prop_assert_eq!(UniPoly::new(sum), a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
