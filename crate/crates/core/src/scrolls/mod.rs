//! Scrolls swept by the divisors of a pencil, their Eagon-Northcott strands, and the
//! comparison of scroll syzygies with the syzygies of the curve.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::matrix::{dense_to_sparse, kernel_basis};
use crate::algebra::poly::mono_mul;
use crate::algebra::{binomial, rank, MultiplicationTensor, PrimeField, Rref, Scalar, Sym2Index};
use crate::curvelab::{mult_tensor, section_space, CurveModel, Pencil};
use crate::error::{Error, Result};
use crate::koszul::{koszul_differential, BettiStrand, KoszulData, PrimeRun, StrandMethod};

/// A 2 x f matrix of linear forms on `V` and its 2 x 2 minors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScrollData {
    pub pencil: Option<Pencil>,
    pub v_dim: usize,
    /// Two rows of `f` coordinate vectors in `V`.
    pub matrix: [Vec<Vec<Scalar>>; 2],
    /// Minors `(i, j)`, `i < j`, in lexicographic order, as quadrics in `Sym^2 V`.
    pub minors: Vec<Vec<Scalar>>,
    pub degree: usize,
}

fn minors_of(field: &PrimeField, v_dim: usize, matrix: &[Vec<Vec<Scalar>>; 2]) -> Vec<Vec<Scalar>> {
    let sym = Sym2Index { n: v_dim };
    let f = matrix[0].len();
    let mut out = Vec::new();
    for i in 0..f {
        for j in i + 1..f {
            let a = sym.product(field, &matrix[0][i], &matrix[1][j]);
            let b = sym.product(field, &matrix[0][j], &matrix[1][i]);
            out.push(a.iter().zip(&b).map(|(&x, &y)| field.sub(x, y)).collect());
        }
    }
    out
}

/// Matrix with entries `u y_j`, `v y_j` for a basis `y_j` of `H^0(omega - L)`.
pub fn scroll_matrix(curve: &CurveModel, pencil: &Pencil) -> Result<ScrollData> {
    let field = curve.field();
    let omega = curve.canonical_twist();
    let v = section_space(curve, omega)?;
    let g = v.dim();
    let ys = section_space(curve, pencil.residual_twist(curve)?)?;
    if ys.dim() + pencil.degree != g + 1 {
        return Err(Error::Inconsistent(format!(
            "h^0(omega - L) = {}, expected g + 1 - k = {}",
            ys.dim(),
            g + 1 - pencil.degree
        )));
    }
    let ym = ys.basis_monomials();
    let mut matrix: [Vec<Vec<Scalar>>; 2] = [Vec::new(), Vec::new()];
    for (row, u) in matrix.iter_mut().zip(&pencil.sections) {
        for y in &ym {
            let sparse = v.reduce_monomial(field, &mono_mul(u, y))?;
            let mut d = vec![0; g];
            for (c, x) in sparse {
                d[c as usize] = x;
            }
            row.push(d);
        }
    }
    let minors = minors_of(field, g, &matrix);
    let degree = ym.len();
    Ok(ScrollData {
        pencil: Some(pencil.clone()),
        v_dim: g,
        matrix,
        minors,
        degree,
    })
}

/// `S(e_1, ..., e_d)`: block `i` has rows `x_{i,0..e_i-1}` and `x_{i,1..e_i}`.
pub fn rational_normal_scroll(field: &PrimeField, parts: &[usize]) -> Result<ScrollData> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::Input(format!(
            "scroll type {parts:?} needs positive parts"
        )));
    }
    let v_dim: usize = parts.iter().map(|e| e + 1).sum();
    let unit = |i: usize| {
        let mut v = vec![0; v_dim];
        v[i] = 1;
        v
    };
    let mut matrix: [Vec<Vec<Scalar>>; 2] = [Vec::new(), Vec::new()];
    let mut offset = 0;
    for &e in parts {
        for c in 0..e {
            matrix[0].push(unit(offset + c));
            matrix[1].push(unit(offset + c + 1));
        }
        offset += e + 1;
    }
    let minors = minors_of(field, v_dim, &matrix);
    Ok(ScrollData {
        pencil: None,
        v_dim,
        matrix,
        minors,
        degree: parts.iter().sum(),
    })
}

/// `p C(f, p+1)` for `1 <= p <= f - 1`, else 0.
pub fn en_strand_formula(f: usize, p: usize) -> u64 {
    if p == 0 || p + 1 > f {
        return 0;
    }
    p as u64 * binomial(f as i64, p as i64 + 1)
}

/// Degree-two part `Sym^2 V / span(minors)` of the scroll's coordinate ring.
pub fn scroll_koszul_data(field: &PrimeField, scroll: &ScrollData) -> Result<KoszulData> {
    let n = scroll.v_dim;
    let sym = Sym2Index { n };
    let ideal = Rref::from_vectors(field, sym.len(), scroll.minors.clone());
    let quotient = ideal.complement();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut v = vec![0; sym.len()];
            v[sym.index(i, j)] = 1;
            ideal.reduce(field, &mut v);
            entries.push(dense_to_sparse(
                field,
                &quotient.iter().map(|&c| v[c]).collect::<Vec<_>>(),
            ));
        }
    }
    KoszulData::new(MultiplicationTensor::new(n, n, quotient.len(), entries)?)
}

/// Linear strand of the scroll ring, checked against `en_strand_formula`.
pub fn scroll_strand(field: &PrimeField, scroll: &ScrollData) -> Result<BettiStrand> {
    let data = scroll_koszul_data(field, scroll)?;
    let top = scroll
        .v_dim
        .saturating_sub(2)
        .max(scroll.degree.min(scroll.v_dim));
    let values = data.linear_strand(field, 1..=top)?;
    for (i, &v) in values.iter().enumerate() {
        let expected = en_strand_formula(scroll.degree, i + 1);
        if v != expected {
            return Err(Error::Inconsistent(format!(
                "scroll of degree {} has b_{{{},1}} = {v}, Eagon-Northcott gives {expected}",
                scroll.degree,
                i + 1
            )));
        }
    }
    Ok(BettiStrand {
        genus: scroll.v_dim,
        values: values.clone(),
        runs: vec![PrimeRun {
            prime: field.p(),
            method: StrandMethod::Full,
            values,
        }],
        consistent: true,
    })
}

/// How the minors sit inside the quadrics through the curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorReport {
    pub minor_count: usize,
    pub span_dim: usize,
    pub curve_quadrics: usize,
    pub all_vanish: bool,
}

pub fn minor_report(curve: &CurveModel, scroll: &ScrollData) -> Result<MinorReport> {
    let field = curve.field();
    let w = curve.canonical_twist();
    let t = mult_tensor(curve, w, w)?;
    let sym = Sym2Index { n: scroll.v_dim };
    let all_vanish = scroll
        .minors
        .iter()
        .all(|q| sym.push_forward(field, &t, q).iter().all(|&x| x == 0));
    let span_dim = Rref::from_vectors(field, sym.len(), scroll.minors.clone()).rank();
    let images: Vec<Vec<Scalar>> = (0..sym.len())
        .map(|k| {
            let (i, j) = sym.pair(k);
            let mut v = vec![0; t.target_dim];
            for &(c, x) in t.get(i, j) {
                v[c as usize] = x;
            }
            v
        })
        .collect();
    let image_rank = Rref::from_vectors(field, t.target_dim, images).rank();
    Ok(MinorReport {
        minor_count: scroll.minors.len(),
        span_dim,
        curve_quadrics: sym.len() - image_rank,
        all_vanish,
    })
}

/// Syzygies at `p = g - k` contributed by the scrolls of several pencils.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JReport {
    pub p: usize,
    pub per_scroll: Vec<usize>,
    /// Span dimension after adding the scrolls one at a time.
    pub prefix_spans: Vec<usize>,
    pub span_dim: usize,
    pub predicted: usize,
    pub curve_value: u64,
    pub containment_ok: bool,
    pub injective: bool,
    pub isomorphism: bool,
    /// Per scroll, cocycles spanning its classes modulo coboundaries.
    #[serde(skip)]
    pub extremal_classes: Vec<Vec<Vec<Scalar>>>,
}

pub fn restriction_span_dim(curve: &CurveModel, scrolls: &[ScrollData]) -> Result<JReport> {
    let field = curve.field();
    let g = curve.genus();
    let f = scrolls
        .first()
        .map(|s| s.degree)
        .ok_or_else(|| Error::Input("no scrolls given".into()))?;
    if scrolls.iter().any(|s| s.degree != f || s.v_dim != g) {
        return Err(Error::Input(
            "scrolls must come from pencils of one degree on this curve".into(),
        ));
    }
    if f < 2 {
        return Err(Error::Unsupported(
            "scroll of degree below 2 has no syzygies".into(),
        ));
    }
    let p = f - 1;
    let w = curve.canonical_twist();
    let t11 = mult_tensor(curve, w, w)?;
    let curve_dp = koszul_differential(field, g, p, &t11)?;
    let companion = koszul_differential(field, g, p + 1, &MultiplicationTensor::unit(g))?;
    let coboundaries = companion.columns_dense();
    let n = curve_dp.ncols();
    let b_rref = Rref::from_vectors(field, n, coboundaries);
    let b_rank = b_rref.rank();
    let curve_value = (n - rank(field, &curve_dp) - b_rank) as u64;

    let kernels: Vec<Vec<Vec<Scalar>>> = scrolls
        .par_iter()
        .map(|s| {
            let data = scroll_koszul_data(field, s)?;
            let dp = koszul_differential(field, g, p, &data.mult)?;
            Ok(kernel_basis(field, &dp))
        })
        .collect::<Result<_>>()?;

    let mut containment_ok = true;
    for k in kernels.iter().flatten() {
        if curve_dp.mul_vec(field, k)?.iter().any(|&x| x != 0) {
            containment_ok = false;
        }
    }

    let mut per_scroll = Vec::new();
    let mut extremal_classes = Vec::new();
    for k in &kernels {
        let mut residues = Rref::empty(n);
        for v in k {
            let mut r = v.clone();
            b_rref.reduce(field, &mut r);
            residues.insert(field, r);
        }
        per_scroll.push(residues.rank());
        extremal_classes.push(residues.into_rows());
    }
    let mut total = b_rref;
    let mut prefix_spans = Vec::new();
    for k in &kernels {
        for v in k {
            total.insert(field, v.clone());
        }
        prefix_spans.push(total.rank() - b_rank);
    }
    let span_dim = *prefix_spans.last().unwrap();
    let predicted = scrolls.len() * p;
    Ok(JReport {
        p,
        per_scroll,
        prefix_spans,
        span_dim,
        predicted,
        curve_value,
        containment_ok,
        injective: span_dim == predicted,
        isomorphism: span_dim == predicted && span_dim as u64 == curve_value,
        extremal_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Degree;
    use crate::curvelab::{minimal_pencils, random_curve};

    #[test]
    fn formula_values() {
        assert_eq!(
            (1..4).map(|p| en_strand_formula(4, p)).collect::<Vec<_>>(),
            vec![6, 8, 3]
        );
        assert_eq!(
            (1..5).map(|p| en_strand_formula(5, p)).collect::<Vec<_>>(),
            vec![10, 20, 15, 4]
        );
        assert_eq!(en_strand_formula(2, 1), 1);
        assert_eq!(en_strand_formula(6, 5), 5);
        assert_eq!(en_strand_formula(4, 4), 0);
        assert_eq!(en_strand_formula(4, 0), 0);
    }

    #[test]
    fn trigonal_scroll() {
        let c = random_curve(Degree::Bi(3, 4), 32003, 1).unwrap();
        let pencil = &minimal_pencils(&c).unwrap()[0];
        let s = scroll_matrix(&c, pencil).unwrap();
        assert_eq!((s.degree, s.minors.len()), (4, 6));
        let r = minor_report(&c, &s).unwrap();
        assert!(r.all_vanish);
        assert_eq!((r.span_dim, r.curve_quadrics), (6, 6));
        assert_eq!(
            scroll_strand(c.field(), &s).unwrap().values,
            vec![6, 8, 3, 0]
        );
        let j = restriction_span_dim(&c, &[s]).unwrap();
        assert_eq!((j.span_dim, j.curve_value), (3, 3));
        assert!(j.isomorphism && j.containment_ok);
    }

    #[test]
    fn small_rational_normal_scrolls() {
        let field = PrimeField::new(32003).unwrap();
        let s = rational_normal_scroll(&field, &[1, 1]).unwrap();
        assert_eq!(s.minors.len(), 1);
        assert_eq!(scroll_strand(&field, &s).unwrap().values, vec![1, 0]);
        let s = rational_normal_scroll(&field, &[2, 3]).unwrap();
        assert_eq!(
            scroll_strand(&field, &s).unwrap().values,
            vec![10, 20, 15, 4, 0]
        );
    }
}
