use serde::{Deserialize, Serialize};

use super::field::{PrimeField, Scalar};
use super::matrix::SparseVec;
use crate::error::{Error, Result};

/// Structure constants of a bilinear map `A x B -> T`: the image of the basis pair
/// `(i, j)` is stored at `i * right_dim + j` as a sparse vector of `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicationTensor {
    pub left_dim: usize,
    pub right_dim: usize,
    pub target_dim: usize,
    pub entries: Vec<SparseVec>,
}

impl MultiplicationTensor {
    pub fn new(
        left_dim: usize,
        right_dim: usize,
        target_dim: usize,
        entries: Vec<SparseVec>,
    ) -> Result<Self> {
        if entries.len() != left_dim * right_dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for {}x{}",
                entries.len(),
                left_dim,
                right_dim
            )));
        }
        if entries
            .iter()
            .flatten()
            .any(|&(c, _)| c as usize >= target_dim)
        {
            return Err(Error::DimensionMismatch(
                "tensor entry outside target".into(),
            ));
        }
        Ok(MultiplicationTensor {
            left_dim,
            right_dim,
            target_dim,
            entries,
        })
    }

    /// The map `F^n x F -> F^n`, `(e_i, 1) -> e_i`.
    pub fn unit(n: usize) -> Self {
        MultiplicationTensor {
            left_dim: n,
            right_dim: 1,
            target_dim: n,
            entries: (0..n).map(|i| vec![(i as u32, 1)]).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &SparseVec {
        &self.entries[i * self.right_dim + j]
    }

    /// Product of two vectors given in the left and right bases.
    pub fn apply(&self, field: &PrimeField, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![0; self.target_dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = field.mul(x, y);
                for &(t, v) in self.get(i, j) {
                    out[t as usize] = field.add(out[t as usize], field.mul(c, v));
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.left_dim == self.right_dim
            && (0..self.left_dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Restrict to subspaces given by basis vectors in the original coordinates.
    pub fn restrict(
        &self,
        field: &PrimeField,
        left: &[Vec<Scalar>],
        right: &[Vec<Scalar>],
    ) -> MultiplicationTensor {
        let mut entries = Vec::with_capacity(left.len() * right.len());
        for a in left {
            for b in right {
                let v = self.apply(field, a, b);
                entries.push(super::matrix::dense_to_sparse(field, &v));
            }
        }
        MultiplicationTensor {
            left_dim: left.len(),
            right_dim: right.len(),
            target_dim: self.target_dim,
            entries,
        }
    }
}

/// Monomials `x_i x_j` with `i <= j` of the symmetric square of an n-dimensional
/// space, ordered by `(j, i)`.
#[derive(Clone, Copy, Debug)]
pub struct Sym2Index {
    pub n: usize,
}

impl Sym2Index {
    pub fn len(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        j * (j + 1) / 2 + i
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        let mut j = 0;
        while (j + 1) * (j + 2) / 2 <= idx {
            j += 1;
        }
        (idx - j * (j + 1) / 2, j)
    }

    /// Product of two linear forms as a quadric in monomial coordinates.
    pub fn product(&self, field: &PrimeField, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![0; self.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let k = self.index(i, j);
                out[k] = field.add(out[k], field.mul(x, y));
            }
        }
        out
    }

    /// Symmetric Gram matrix (with halves on the off-diagonal) of a quadric.
    pub fn to_symmetric_matrix(&self, field: &PrimeField, q: &[Scalar]) -> Vec<Vec<Scalar>> {
        let half = field.inv(2).unwrap();
        let mut m = vec![vec![0; self.n]; self.n];
        for (k, &c) in q.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (i, j) = self.pair(k);
            if i == j {
                m[i][i] = c;
            } else {
                let h = field.mul(c, half);
                m[i][j] = h;
                m[j][i] = h;
            }
        }
        m
    }

    /// Image of a quadric under the map `x_i x_j -> T(i, j)`.
    pub fn push_forward(
        &self,
        field: &PrimeField,
        tensor: &MultiplicationTensor,
        q: &[Scalar],
    ) -> Vec<Scalar> {
        let mut out = vec![0; tensor.target_dim];
        for (k, &c) in q.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (i, j) = self.pair(k);
            for &(t, v) in tensor.get(i, j) {
                out[t as usize] = field.add(out[t as usize], field.mul(c, v));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym2_roundtrip() {
        let s = Sym2Index { n: 6 };
        for k in 0..s.len() {
            let (i, j) = s.pair(k);
            assert!(i <= j);
            assert_eq!(s.index(i, j), k);
            assert_eq!(s.index(j, i), k);
        }
    }

    #[test]
    fn tensor_shape_checked() {
        assert!(MultiplicationTensor::new(2, 2, 3, vec![Vec::new(); 3]).is_err());
        assert!(MultiplicationTensor::new(1, 1, 3, vec![vec![(3, 1)]]).is_err());
    }
}
