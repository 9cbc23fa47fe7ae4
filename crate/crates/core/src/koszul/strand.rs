use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::differential::koszul_differential;
use crate::algebra::{binomial, rank, MultiplicationTensor, PrimeField, Rref, Scalar};
use crate::curvelab::model::rng_for;
use crate::curvelab::{mult_tensor, section_space, CurveModel};
use crate::error::{Error, Result};

/// Degree-one and degree-two data of a graded ring generated by `V`: the product
/// `V x W1 -> W2`, with `W1 = V` and `W0` one-dimensional.
#[derive(Clone, Debug)]
pub struct KoszulData {
    pub v_dim: usize,
    pub mult: MultiplicationTensor,
}

impl KoszulData {
    pub fn new(mult: MultiplicationTensor) -> Result<Self> {
        if mult.left_dim != mult.right_dim {
            return Err(Error::DimensionMismatch("degree-one factors differ".into()));
        }
        Ok(KoszulData {
            v_dim: mult.left_dim,
            mult,
        })
    }

    pub fn w2_dim(&self) -> usize {
        self.mult.target_dim
    }

    /// `dim K_{p,1} = dim(\wedge^p V (x) W1) - rank d_p - rank d_{p+1}`.
    pub fn linear_strand_entry(&self, field: &PrimeField, p: usize) -> Result<u64> {
        let n = self.v_dim;
        if p > n {
            return Ok(0);
        }
        let total = binomial(n as i64, p as i64) * n as u64;
        let dp = koszul_differential(field, n, p, &self.mult)?;
        let r_p = rank(field, &dp) as u64;
        let r_next = if p < n {
            rank(
                field,
                &koszul_differential(field, n, p + 1, &MultiplicationTensor::unit(n))?,
            ) as u64
        } else {
            0
        };
        Ok(total - r_p - r_next)
    }

    pub fn linear_strand(
        &self,
        field: &PrimeField,
        ps: std::ops::RangeInclusive<usize>,
    ) -> Result<Vec<u64>> {
        let ps: Vec<usize> = ps.collect();
        ps.par_iter()
            .map(|&p| self.linear_strand_entry(field, p))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StrandMethod {
    /// Koszul complex over all of `H^0(omega)`.
    Full,
    /// Koszul complex of the Artinian reduction by two general linear forms.
    Reduced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRun {
    pub prime: u32,
    pub method: StrandMethod,
    pub values: Vec<u64>,
}

/// `b_{p,1}` for `p = 1 ..= g-2`, stored at index `p - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiStrand {
    pub genus: usize,
    pub values: Vec<u64>,
    pub runs: Vec<PrimeRun>,
    pub consistent: bool,
}

impl BettiStrand {
    pub fn get(&self, p: usize) -> u64 {
        if p == 0 {
            return 0;
        }
        self.values.get(p - 1).copied().unwrap_or(0)
    }

    /// Last `p` with `b_{p,1} != 0`.
    pub fn last_nonzero(&self) -> Option<(usize, u64)> {
        self.values
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &v)| v != 0)
            .map(|(i, &v)| (i + 1, v))
    }

    /// Combine runs over several primes; values come from the first run.
    pub fn merge(strands: Vec<BettiStrand>) -> Result<BettiStrand> {
        let mut it = strands.into_iter();
        let mut out = it
            .next()
            .ok_or_else(|| Error::Input("no strands to merge".into()))?;
        for s in it {
            if s.genus != out.genus {
                return Err(Error::Inconsistent(
                    "merging strands of different genera".into(),
                ));
            }
            out.consistent &= s.consistent && s.values == out.values;
            out.runs.extend(s.runs);
        }
        Ok(out)
    }
}

/// Certificate data of an Artinian reduction `A = S / (h1, h2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub attempts: usize,
    pub a2_dim: usize,
    pub a3_dim: usize,
}

const REDUCTION_ATTEMPTS: usize = 8;

fn random_vector(field: &PrimeField, rng: &mut impl Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| rng.gen_range(0..field.p())).collect()
}

fn image_of_multiples(field: &PrimeField, t: &MultiplicationTensor, hs: &[Vec<Scalar>]) -> Rref {
    let mut vecs = Vec::with_capacity(hs.len() * t.right_dim);
    for h in hs {
        for w in 0..t.right_dim {
            let mut e = vec![0; t.right_dim];
            e[w] = 1;
            vecs.push(t.apply(field, h, &e));
        }
    }
    Rref::from_vectors(field, t.target_dim, vecs)
}

/// Reduce by two random linear forms. Accepted when `dim A2 = g - 2` and `dim A3 = 1`,
/// i.e. the forms are a regular sequence on the canonical ring in degrees up to 3.
pub fn artinian_reduction(
    curve: &CurveModel,
    seed: u64,
) -> Result<(KoszulData, ReductionCertificate)> {
    let field = curve.field();
    let w = curve.canonical_twist();
    let g = section_space(curve, w)?.dim();
    if g < 3 {
        return Err(Error::Unsupported(format!(
            "genus {g} too small for a reduction"
        )));
    }
    let t11 = mult_tensor(curve, w, w)?;
    let t12 = mult_tensor(curve, w, w.scale(2))?;
    let mut rng = rng_for(seed, "artinian");
    for attempt in 1..=REDUCTION_ATTEMPTS {
        let hs = vec![
            random_vector(field, &mut rng, g),
            random_vector(field, &mut rng, g),
        ];
        let hspan = Rref::from_vectors(field, g, hs.clone());
        if hspan.rank() < 2 {
            continue;
        }
        let comp = hspan.complement();
        let j2 = image_of_multiples(field, &t11, &hs);
        let a2 = j2.complement();
        let j3 = image_of_multiples(field, &t12, &hs);
        let a3_dim = t12.target_dim - j3.rank();
        if a2.len() != g - 2 || a3_dim != 1 {
            continue;
        }
        let mut entries = Vec::with_capacity(comp.len() * comp.len());
        for &c1 in &comp {
            for &c2 in &comp {
                let mut v = vec![0; t11.target_dim];
                for &(t, x) in t11.get(c1, c2) {
                    v[t as usize] = x;
                }
                j2.reduce(field, &mut v);
                entries.push(
                    a2.iter()
                        .enumerate()
                        .filter(|(_, &i)| v[i] != 0)
                        .map(|(k, &i)| (k as u32, v[i]))
                        .collect(),
                );
            }
        }
        let mult = MultiplicationTensor::new(comp.len(), comp.len(), a2.len(), entries)?;
        let cert = ReductionCertificate {
            attempts: attempt,
            a2_dim: a2.len(),
            a3_dim,
        };
        return Ok((KoszulData::new(mult)?, cert));
    }
    Err(Error::Resample(format!(
        "no regular pair of linear forms found in {REDUCTION_ATTEMPTS} attempts"
    )))
}

pub fn canonical_data(curve: &CurveModel) -> Result<KoszulData> {
    let w = curve.canonical_twist();
    KoszulData::new((*mult_tensor(curve, w, w)?).clone())
}

/// Linear strand of the canonical ring, computed by the reduced route.
pub fn strand_dims(curve: &CurveModel) -> Result<BettiStrand> {
    strand_dims_with(curve, StrandMethod::Reduced)
}

pub fn strand_dims_with(curve: &CurveModel, method: StrandMethod) -> Result<BettiStrand> {
    let g = curve.genus();
    if g < 3 {
        return Err(Error::Unsupported(format!("genus {g} too small")));
    }
    let data = match method {
        StrandMethod::Full => canonical_data(curve)?,
        StrandMethod::Reduced => artinian_reduction(curve, curve.seed())?.0,
    };
    let values = data.linear_strand(curve.field(), 1..=g - 2)?;
    Ok(BettiStrand {
        genus: g,
        values: values.clone(),
        runs: vec![PrimeRun {
            prime: curve.prime(),
            method,
            values,
        }],
        consistent: true,
    })
}

/// The strand over each prime in turn, flagged when the primes disagree.
pub fn multi_prime_strand(curves: &[CurveModel], method: StrandMethod) -> Result<BettiStrand> {
    let strands = curves
        .iter()
        .map(|c| strand_dims_with(c, method))
        .collect::<Result<Vec<_>>>()?;
    BettiStrand::merge(strands)
}
