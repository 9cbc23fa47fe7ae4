use serde::{Deserialize, Serialize};
use std::fmt;

use super::strand::BettiStrand;
use crate::algebra::binomial;
use crate::error::{Error, Result};

/// `h^0(omega^m)` on a curve of genus `g >= 2`.
pub fn h0_omega_power(g: usize, m: i64) -> i64 {
    let g = g as i64;
    match m {
        m if m < 0 => 0,
        0 => 1,
        1 => g,
        m => (2 * m - 1) * (g - 1),
    }
}

/// `sum_i (-1)^i C(n, i) h^0(omega^{j-i})`: the degree-`j` coefficient of the Hilbert
/// series of the canonical ring times `(1 - t)^n`. With `n = g` this is the alternating
/// sum of the Betti numbers on the `j`-th antidiagonal.
pub fn hilbert_rhs(g: usize, n: usize, j: i64) -> i64 {
    (0..=n as i64)
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * binomial(n as i64, i) as i64 * h0_omega_power(g, j - i)
        })
        .sum()
}

/// `b_{i,j}` for `0 <= i <= g-2` and `0 <= j <= 3`, stored as `rows[j][i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub genus: usize,
    pub rows: [Vec<u64>; 4],
}

impl BettiTable {
    pub fn get(&self, i: i64, j: i64) -> u64 {
        if !(0..=3).contains(&j) || i < 0 {
            return 0;
        }
        self.rows[j as usize].get(i as usize).copied().unwrap_or(0)
    }

    pub fn antidiagonal_sum(&self, j: i64) -> i64 {
        (0..=3)
            .map(|q| {
                let i = j - q;
                let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                sign * self.get(i, q) as i64
            })
            .sum()
    }

    /// Whether every antidiagonal `0 <= j <= g + 3` satisfies the Hilbert relation.
    pub fn hilbert_holds(&self) -> bool {
        (0..=self.genus as i64 + 3)
            .all(|j| self.antidiagonal_sum(j) == hilbert_rhs(self.genus, self.genus, j))
    }

    /// `b_{p,2} = b_{g-2-p,1}` for all `p`.
    pub fn duality_holds(&self) -> bool {
        let n = self.genus - 2;
        (0..=n).all(|p| self.rows[2][p] == self.rows[1][n - p])
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(2);
        write!(f, "{:>3} |", "")?;
        for i in 0..self.rows[0].len() {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat(5 + (width + 1) * self.rows[0].len()))?;
        for (j, row) in self.rows.iter().enumerate() {
            write!(f, "{:>3} |", j)?;
            for v in row {
                write!(f, " {:>width$}", v)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Fill rows 0 and 3 from the ends of the resolution, row 1 from the strand and row 2
/// from the Hilbert relation.
pub fn betti_table(strand: &BettiStrand) -> Result<BettiTable> {
    let g = strand.genus;
    if g < 3 {
        return Err(Error::Unsupported(format!("genus {g} too small")));
    }
    let len = g - 1;
    let mut rows: [Vec<u64>; 4] = std::array::from_fn(|_| vec![0; len]);
    rows[0][0] = 1;
    rows[3][g - 2] = 1;
    for p in 1..=g - 2 {
        rows[1][p] = strand.get(p);
    }
    let mut table = BettiTable { genus: g, rows };
    for j in 2..=g as i64 {
        let i = j - 2;
        let others = table.antidiagonal_sum(j);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let value = sign * (hilbert_rhs(g, g, j) - others);
        if value < 0 {
            return Err(Error::Inconsistent(format!(
                "deduced b_{{{i},2}} = {value} is negative"
            )));
        }
        table.rows[2][i as usize] = value as u64;
    }
    Ok(table)
}

/// Comparison of the last strand entry with `m (g - k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub genus: usize,
    pub gonality: usize,
    pub pencils: usize,
    pub index: usize,
    pub value: u64,
    pub predicted: u64,
    pub equal: bool,
    /// `b_{p,1} = 0` for every `p > g - k`.
    pub strand_length_ok: bool,
    pub last_nonzero: Option<(usize, u64)>,
    /// Whether the last nonzero entry is divisible by its index.
    pub last_divisible_by_index: bool,
    pub assumptions: Vec<String>,
}

impl ExtremalReport {
    pub fn passed(&self) -> bool {
        self.equal && self.strand_length_ok
    }
}

pub fn extremal_check(strand: &BettiStrand, k: usize, m: usize) -> ExtremalReport {
    let g = strand.genus;
    let index = g.saturating_sub(k);
    let value = strand.get(index);
    let predicted = (m * index) as u64;
    let last_nonzero = strand.last_nonzero();
    ExtremalReport {
        genus: g,
        gonality: k,
        pencils: m,
        index,
        value,
        predicted,
        equal: value == predicted,
        strand_length_ok: (index + 1..=g.saturating_sub(2)).all(|p| strand.get(p) == 0),
        last_nonzero,
        last_divisible_by_index: last_nonzero.is_none_or(|(p, v)| v % p as u64 == 0),
        assumptions: vec![format!(
            "linear growth dim G^1_(k+n)(C) <= n assumed, not verified (k = {k})"
        )],
    }
}
