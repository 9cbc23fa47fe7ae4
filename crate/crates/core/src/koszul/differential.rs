use rayon::prelude::*;

use crate::algebra::matrix::SparseVec;
use crate::algebra::{ExactMatrix, ExteriorBasis, MultiplicationTensor, PrimeField, Scalar};
use crate::error::{Error, Result};

/// Matrix of `\wedge^p V (x) A -> \wedge^{p-1} V (x) B` for a bilinear `V x A -> B`:
/// `e_I (x) w` goes to the sum over positions `j` of `(-1)^j e_{I - i_j} (x) T(i_j, w)`.
/// Columns are indexed by `I * dim A + w` with `I` in colex order, rows likewise.
pub fn koszul_differential(
    field: &PrimeField,
    v_dim: usize,
    p: usize,
    tensor: &MultiplicationTensor,
) -> Result<ExactMatrix> {
    if tensor.left_dim != v_dim {
        return Err(Error::DimensionMismatch(format!(
            "tensor acts by a {}-dimensional space, expected {v_dim}",
            tensor.left_dim
        )));
    }
    if p > v_dim {
        return Err(Error::DimensionMismatch(format!(
            "p = {p} exceeds dim V = {v_dim}"
        )));
    }
    let src_w = tensor.right_dim;
    let dst_w = tensor.target_dim;
    let src = ExteriorBasis::new(v_dim, p);
    if p == 0 {
        return Ok(ExactMatrix::zeros(0, src_w));
    }
    let dst = ExteriorBasis::new(v_dim, p - 1);
    let nrows = dst.len() * dst_w;
    let ncols = src.len() * src_w;
    let triplets: Vec<(u32, u32, Scalar)> = (0..src.len())
        .into_par_iter()
        .flat_map_iter(|ci| {
            let subset = src.subset(ci);
            let mut out = Vec::new();
            for w in 0..src_w {
                let col = (ci * src_w + w) as u32;
                for (j, &i) in subset.iter().enumerate() {
                    let base = dst.rank_without(subset, j) * dst_w;
                    for &(t, v) in tensor.get(i as usize, w) {
                        let v = if j % 2 == 0 { v } else { field.neg(v) };
                        out.push(((base + t as usize) as u32, col, v));
                    }
                }
            }
            out
        })
        .collect();
    let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
    for (r, c, v) in triplets {
        rows[r as usize].push((c, v));
    }
    ExactMatrix::from_rows(ncols, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_p_has_no_rows() {
        let field = PrimeField::new(32003).unwrap();
        let m = koszul_differential(&field, 4, 0, &MultiplicationTensor::unit(4)).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (0, 1));
    }

    #[test]
    fn mismatched_tensor() {
        let field = PrimeField::new(32003).unwrap();
        assert!(koszul_differential(&field, 5, 2, &MultiplicationTensor::unit(4)).is_err());
        assert!(koszul_differential(&field, 4, 5, &MultiplicationTensor::unit(4)).is_err());
    }

    #[test]
    fn unit_differential_is_injective() {
        let field = PrimeField::new(32003).unwrap();
        for p in 1..=5 {
            let m = koszul_differential(&field, 5, p, &MultiplicationTensor::unit(5)).unwrap();
            assert_eq!(crate::algebra::rank(&field, &m), m.ncols());
        }
    }
}
