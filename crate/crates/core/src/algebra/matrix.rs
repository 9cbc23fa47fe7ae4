use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::{PrimeField, Scalar};
use crate::error::{Error, Result};

/// Sorted `(column, value)` pairs with nonzero values.
pub type SparseVec = Vec<(u32, Scalar)>;

/// Row-major sparse matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        ExactMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Result<Self> {
        for r in &rows {
            for w in r.windows(2) {
                if w[0].0 >= w[1].0 {
                    return Err(Error::Input("sparse row not strictly sorted".into()));
                }
            }
            if r.iter().any(|&(c, v)| c as usize >= ncols || v == 0) {
                return Err(Error::DimensionMismatch(
                    "sparse entry out of range or zero".into(),
                ));
            }
        }
        Ok(ExactMatrix {
            nrows: rows.len(),
            ncols,
            rows,
        })
    }

    /// Rows are taken as given; values are reduced into the field.
    pub fn from_dense(field: &PrimeField, ncols: usize, dense: &[Vec<Scalar>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(dense.len());
        for d in dense {
            if d.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "dense row has {} entries, expected {}",
                    d.len(),
                    ncols
                )));
            }
            rows.push(dense_to_sparse(field, d));
        }
        Ok(ExactMatrix {
            nrows: rows.len(),
            ncols,
            rows,
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.rows[r].binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(i) => self.rows[r][i].1,
            Err(_) => 0,
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, v) in r {
                cols[c as usize].push((i as u32, v));
            }
        }
        ExactMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows: cols,
        }
    }

    pub fn mul_vec(&self, field: &PrimeField, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.ncols
            )));
        }
        let p = field.p() as u64;
        Ok(self
            .rows
            .iter()
            .map(|r| {
                let mut acc = 0u64;
                for &(c, x) in r {
                    acc = (acc + x as u64 * v[c as usize] as u64) % p;
                }
                acc as Scalar
            })
            .collect())
    }

    /// Stack matrices with the same column count.
    pub fn vstack(parts: &[&ExactMatrix]) -> Result<ExactMatrix> {
        let ncols = parts.first().map(|m| m.ncols).unwrap_or(0);
        let mut rows = Vec::new();
        for m in parts {
            if m.ncols != ncols {
                return Err(Error::DimensionMismatch(
                    "vstack column counts differ".into(),
                ));
            }
            rows.extend(m.rows.iter().cloned());
        }
        Ok(ExactMatrix {
            nrows: rows.len(),
            ncols,
            rows,
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![0; self.ncols];
                for &(c, v) in r {
                    d[c as usize] = v;
                }
                d
            })
            .collect()
    }

    /// Columns of the matrix as dense vectors.
    pub fn columns_dense(&self) -> Vec<Vec<Scalar>> {
        self.transpose().to_dense()
    }
}

pub fn dense_to_sparse(field: &PrimeField, d: &[Scalar]) -> SparseVec {
    d.iter()
        .enumerate()
        .filter_map(|(c, &v)| {
            let v = v % field.p();
            (v != 0).then_some((c as u32, v))
        })
        .collect()
}

/// Echelon form: each pivot row is normalized at its pivot column and has no entries
/// in the pivot columns chosen before it.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: Vec<(u32, SparseVec)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pivots.iter().map(|p| p.0 as usize).collect();
        v.sort_unstable();
        v
    }

    /// Basis of the right null space, one vector per non-pivot column.
    pub fn kernel_raw(&self, field: &PrimeField) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.ncols];
        for (c, _) in &self.pivots {
            is_pivot[*c as usize] = true;
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| !is_pivot[c]).collect();
        let p = field.p() as u64;
        free.par_iter()
            .map(|&f| {
                let mut x = vec![0u32; self.ncols];
                x[f] = 1;
                for (c, row) in self.pivots.iter().rev() {
                    let mut acc = 0u64;
                    for &(j, v) in row {
                        if j != *c {
                            acc = (acc + v as u64 * x[j as usize] as u64) % p;
                        }
                    }
                    x[*c as usize] = field.neg(acc as u32);
                }
                x
            })
            .collect()
    }
}

const DENSE_SWITCH: f64 = 0.12;

/// Gaussian elimination with a sparse Markowitz-style phase (shortest row, then
/// least populated column) and a dense tail once fill-in passes `DENSE_SWITCH`.
pub fn echelon(field: &PrimeField, rows: Vec<SparseVec>, ncols: usize) -> Echelon {
    let nrows = rows.len();
    let mut active: Vec<Option<SparseVec>> = rows.into_iter().map(Some).collect();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut col_count = vec![0u32; ncols];
    let mut heap = BinaryHeap::new();
    let mut total_nnz = 0usize;
    let mut live_rows = 0usize;
    for (i, r) in active.iter().enumerate() {
        let r = r.as_ref().unwrap();
        for &(c, _) in r {
            col_rows[c as usize].push(i as u32);
            col_count[c as usize] += 1;
        }
        total_nnz += r.len();
        if !r.is_empty() {
            live_rows += 1;
        }
        heap.push(Reverse((r.len(), i)));
    }
    let mut pivots: Vec<(u32, SparseVec)> = Vec::new();
    let mut live_cols = col_count.iter().filter(|&&c| c > 0).count();

    while let Some(Reverse((len, i))) = heap.pop() {
        let cur = match &active[i] {
            Some(r) => r.len(),
            None => continue,
        };
        if cur != len {
            continue;
        }
        if len == 0 {
            active[i] = None;
            continue;
        }
        if live_rows > 48 && live_cols > 48 {
            let density = total_nnz as f64 / (live_rows as f64 * live_cols as f64);
            if density > DENSE_SWITCH {
                heap.push(Reverse((len, i)));
                break;
            }
        }
        let row = active[i].take().unwrap();
        live_rows -= 1;
        total_nnz -= row.len();
        let &(pc, pv) = row
            .iter()
            .min_by_key(|&&(c, _)| (col_count[c as usize], c))
            .unwrap();
        let inv = field.inv(pv).expect("nonzero pivot");
        let prow: SparseVec = row.iter().map(|&(c, v)| (c, field.mul(v, inv))).collect();
        for &(c, _) in &prow {
            col_count[c as usize] -= 1;
            if col_count[c as usize] == 0 {
                live_cols -= 1;
            }
        }
        let targets = std::mem::take(&mut col_rows[pc as usize]);
        for &t in &targets {
            let t = t as usize;
            let Some(trow) = active[t].as_ref() else {
                continue;
            };
            let Ok(pos) = trow.binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            let factor = field.neg(trow[pos].1);
            let old = active[t].take().unwrap();
            let new = axpy_sparse(field, &old, factor, &prow);
            let (mut a, mut b) = (0, 0);
            while a < old.len() || b < new.len() {
                let oc = old.get(a).map(|e| e.0).unwrap_or(u32::MAX);
                let nc = new.get(b).map(|e| e.0).unwrap_or(u32::MAX);
                if oc == nc {
                    a += 1;
                    b += 1;
                } else if oc < nc {
                    col_count[oc as usize] -= 1;
                    if col_count[oc as usize] == 0 {
                        live_cols -= 1;
                    }
                    a += 1;
                } else {
                    if col_count[nc as usize] == 0 {
                        live_cols += 1;
                    }
                    col_count[nc as usize] += 1;
                    col_rows[nc as usize].push(t as u32);
                    b += 1;
                }
            }
            total_nnz = total_nnz + new.len() - old.len();
            if new.is_empty() {
                live_rows -= 1;
                active[t] = None;
            } else {
                heap.push(Reverse((new.len(), t)));
                active[t] = Some(new);
            }
        }
        pivots.push((pc, prow));
    }

    let rest: Vec<SparseVec> = active
        .into_iter()
        .flatten()
        .filter(|r| !r.is_empty())
        .collect();
    if !rest.is_empty() {
        pivots.extend(dense_echelon(field, rest, ncols));
    }
    debug_assert!(pivots.len() <= nrows.min(ncols));
    Echelon { ncols, pivots }
}

fn axpy_sparse(field: &PrimeField, x: &SparseVec, a: Scalar, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let xc = x.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let yc = y.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if xc == yc {
            let v = field.add(x[i].1, field.mul(a, y[j].1));
            if v != 0 {
                out.push((xc, v));
            }
            i += 1;
            j += 1;
        } else if xc < yc {
            out.push(x[i]);
            i += 1;
        } else {
            let v = field.mul(a, y[j].1);
            if v != 0 {
                out.push((yc, v));
            }
            j += 1;
        }
    }
    out
}

/// Dense forward elimination on the remaining rows. Updates are accumulated in u64
/// and reduced only when the next update could overflow.
fn dense_echelon(field: &PrimeField, rows: Vec<SparseVec>, ncols: usize) -> Vec<(u32, SparseVec)> {
    let p = field.p() as u64;
    let mut used: Vec<u32> = rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    used.sort_unstable();
    used.dedup();
    let width = used.len();
    let mut local = vec![u32::MAX; ncols];
    for (k, &c) in used.iter().enumerate() {
        local[c as usize] = k as u32;
    }
    let mut dense: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut d = vec![0u64; width];
            for &(c, v) in r {
                d[local[c as usize] as usize] = v as u64;
            }
            d
        })
        .collect();
    let max_updates = ((u64::MAX - p) / ((p - 1) * (p - 1))).max(1) as u32;
    let mut counts = vec![0u32; dense.len()];
    let mut out = Vec::new();
    let mut r0 = 0;
    for c in 0..width {
        if r0 == dense.len() {
            break;
        }
        let mut found = None;
        for r in r0..dense.len() {
            dense[r][c] %= p;
            if dense[r][c] != 0 {
                found = Some(r);
                break;
            }
        }
        let Some(r) = found else { continue };
        dense.swap(r0, r);
        counts.swap(r0, r);
        let (head, tail) = dense.split_at_mut(r0 + 1);
        let piv = &mut head[r0];
        for x in piv[c..].iter_mut() {
            *x %= p;
        }
        let inv = field.inv(piv[c] as u32).expect("nonzero pivot") as u64;
        for x in piv[c..].iter_mut() {
            *x = *x * inv % p;
        }
        let piv: &Vec<u64> = piv;
        let cnts = &mut counts[r0 + 1..];
        tail.par_iter_mut()
            .zip(cnts.par_iter_mut())
            .with_min_len(16)
            .for_each(|(row, cnt)| {
                let v = row[c] % p;
                row[c] = 0;
                if v == 0 {
                    return;
                }
                if *cnt >= max_updates {
                    for x in row[c + 1..].iter_mut() {
                        *x %= p;
                    }
                    *cnt = 0;
                }
                let f = p - v;
                for (x, &y) in row[c + 1..].iter_mut().zip(&piv[c + 1..]) {
                    *x += f * y;
                }
                *cnt += 1;
            });
        let sparse: SparseVec = piv
            .iter()
            .enumerate()
            .skip(c)
            .filter(|(_, &v)| v != 0)
            .map(|(k, &v)| (used[k], v as u32))
            .collect();
        out.push((used[c], sparse));
        r0 += 1;
    }
    out
}

pub fn rank(field: &PrimeField, m: &ExactMatrix) -> usize {
    echelon(field, m.rows.clone(), m.ncols).rank()
}

/// Right null space in reduced row echelon form, so the basis depends only on the
/// subspace.
pub fn kernel_basis(field: &PrimeField, m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let raw = echelon(field, m.rows.clone(), m.ncols).kernel_raw(field);
    Rref::from_vectors(field, m.ncols, raw).into_rows()
}

/// Dense reduced row echelon basis of a subspace of `F^n`; pivots are the leftmost
/// nonzero coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rref {
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn empty(ncols: usize) -> Self {
        Rref {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(field: &PrimeField, ncols: usize, vecs: Vec<Vec<Scalar>>) -> Self {
        let vecs: Vec<SparseVec> = vecs.iter().map(|v| dense_to_sparse(field, v)).collect();
        Self::from_sparse(field, ncols, vecs)
    }

    pub fn from_sparse(field: &PrimeField, ncols: usize, vecs: Vec<SparseVec>) -> Self {
        let ech = echelon(field, vecs, ncols);
        let mut out = Rref::empty(ncols);
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(ech.pivots.len());
        let mut pivots = Vec::with_capacity(ech.pivots.len());
        for (c, r) in &ech.pivots {
            let mut d = vec![0; ncols];
            for &(j, v) in r {
                d[j as usize] = v;
            }
            rows.push(d);
            pivots.push(*c as usize);
        }
        // Rows are free of earlier pivots; clearing in reverse elimination order makes
        // every pivot column a unit vector.
        for k in (0..rows.len()).rev() {
            let c = pivots[k];
            let (head, tail) = rows.split_at_mut(k);
            let pivot_row = &tail[0];
            head.par_iter_mut().for_each(|row| {
                let v = row[c];
                if v != 0 {
                    let f = field.neg(v);
                    for (x, &y) in row.iter_mut().zip(pivot_row) {
                        if y != 0 {
                            *x = field.add(*x, field.mul(f, y));
                        }
                    }
                }
            });
        }
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&k| pivots[k]);
        let rows: Vec<Vec<Scalar>> = order
            .iter()
            .map(|&k| std::mem::take(&mut rows[k]))
            .collect();
        let pivots: Vec<usize> = order.iter().map(|&k| pivots[k]).collect();
        // A row's leading entry must be its pivot; the Markowitz order can pick a
        // pivot that is not leftmost, so re-run a plain dense RREF when needed.
        let leftmost_ok = rows
            .iter()
            .zip(&pivots)
            .all(|(r, &c)| r.iter().position(|&v| v != 0) == Some(c));
        if leftmost_ok {
            out.rows = rows;
            out.pivots = pivots;
            return out;
        }
        for r in rows {
            out.insert(field, r);
        }
        out
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot columns in increasing order.
    pub fn complement(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.ncols];
        for &c in &self.pivots {
            is_p[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_p[c]).collect()
    }

    /// Subtract multiples of the basis so that `v` vanishes on the pivot columns.
    pub fn reduce(&self, field: &PrimeField, v: &mut [Scalar]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x != 0 {
                let f = field.neg(x);
                for (a, &b) in v.iter_mut().zip(row) {
                    if b != 0 {
                        *a = field.add(*a, field.mul(f, b));
                    }
                }
            }
        }
    }

    pub fn contains(&self, field: &PrimeField, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the row basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, field: &PrimeField, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(field, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, field: &PrimeField, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ncols);
        self.reduce(field, &mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = field.inv(v[c]).unwrap();
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let x = row[c];
            if x != 0 {
                let f = field.neg(x);
                for (a, &b) in row.iter_mut().zip(&v) {
                    if b != 0 {
                        *a = field.add(*a, field.mul(f, b));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    /// Plain textbook elimination used as an oracle.
    fn naive_rank(field: &PrimeField, m: &[Vec<u32>]) -> usize {
        let mut a: Vec<Vec<u32>> = m.to_vec();
        let mut r = 0;
        let ncols = a.first().map(|x| x.len()).unwrap_or(0);
        for c in 0..ncols {
            let Some(k) = (r..a.len()).find(|&k| a[k][c] != 0) else {
                continue;
            };
            a.swap(r, k);
            let inv = field.inv(a[r][c]).unwrap();
            let pr: Vec<u32> = a[r].iter().map(|&x| field.mul(x, inv)).collect();
            for k in 0..a.len() {
                if k != r && a[k][c] != 0 {
                    let fac = a[k][c];
                    for j in 0..ncols {
                        a[k][j] = field.sub(a[k][j], field.mul(fac, pr[j]));
                    }
                }
            }
            a[r] = pr;
            r += 1;
        }
        r
    }

    fn random_low_rank(
        seed: u64,
        nr: usize,
        nc: usize,
        rk: usize,
        zero_frac: f64,
    ) -> Vec<Vec<u32>> {
        let field = f();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let left: Vec<Vec<u32>> = (0..nr)
            .map(|_| {
                (0..rk)
                    .map(|_| {
                        if rng.gen_bool(zero_frac) {
                            0
                        } else {
                            rng.gen_range(0..32003)
                        }
                    })
                    .collect()
            })
            .collect();
        let right: Vec<Vec<u32>> = (0..rk)
            .map(|_| {
                (0..nc)
                    .map(|_| {
                        if rng.gen_bool(zero_frac) {
                            0
                        } else {
                            rng.gen_range(0..32003)
                        }
                    })
                    .collect()
            })
            .collect();
        (0..nr)
            .map(|i| {
                (0..nc)
                    .map(|j| {
                        (0..rk).fold(0, |acc, t| {
                            field.add(acc, field.mul(left[i][t], right[t][j]))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let m = ExactMatrix::zeros(2, 3);
        assert_eq!(rank(&f(), &m), 0);
        let k = kernel_basis(&f(), &m);
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn identity_has_empty_kernel() {
        let field = f();
        let dense: Vec<Vec<u32>> = (0..5)
            .map(|i| (0..5).map(|j| (i == j) as u32).collect())
            .collect();
        let m = ExactMatrix::from_dense(&field, 5, &dense).unwrap();
        assert_eq!(rank(&field, &m), 5);
        assert!(kernel_basis(&field, &m).is_empty());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let field = f();
        let m = ExactMatrix::zeros(2, 3);
        assert!(matches!(
            m.mul_vec(&field, &[1, 2]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(ExactMatrix::from_dense(&field, 3, &[vec![1, 2]]).is_err());
    }

    #[test]
    fn dense_tail_matches_oracle() {
        let field = f();
        for (seed, nr, nc, rk) in [(1, 120, 90, 70), (2, 80, 150, 80), (3, 200, 200, 199)] {
            let d = random_low_rank(seed, nr, nc, rk, 0.0);
            let m = ExactMatrix::from_dense(&field, nc, &d).unwrap();
            assert_eq!(rank(&field, &m), naive_rank(&field, &d));
            assert_eq!(rank(&field, &m), rk);
        }
    }

    #[test]
    fn sparse_phase_matches_oracle() {
        let field = f();
        for seed in 0..6 {
            let d = random_low_rank(seed, 90, 70, 40, 0.93);
            let m = ExactMatrix::from_dense(&field, 70, &d).unwrap();
            assert_eq!(rank(&field, &m), naive_rank(&field, &d));
        }
    }

    #[test]
    fn rref_is_canonical() {
        let field = f();
        let d = random_low_rank(9, 6, 10, 4, 0.2);
        let a = Rref::from_vectors(&field, 10, d.clone());
        let mut rev = d.clone();
        rev.reverse();
        let mut b = Rref::empty(10);
        for v in rev {
            b.insert(&field, v);
        }
        assert_eq!(a, b);
        for v in &d {
            assert!(a.contains(&field, v));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn rank_nullity(seed in 0u64..10_000, nr in 1usize..30, nc in 1usize..30, zf in 0.0f64..0.95) {
            let field = f();
            let rk = (seed as usize % nr.min(nc)) + 1;
            let d = random_low_rank(seed, nr, nc, rk, zf);
            let m = ExactMatrix::from_dense(&field, nc, &d).unwrap();
            let r = rank(&field, &m);
            prop_assert_eq!(r, naive_rank(&field, &d));
            let k = kernel_basis(&field, &m);
            prop_assert_eq!(r + k.len(), nc);
            for v in &k {
                prop_assert!(m.mul_vec(&field, v).unwrap().iter().all(|&x| x == 0));
            }
            prop_assert_eq!(rank(&field, &m.transpose()), r);
        }
    }
}
