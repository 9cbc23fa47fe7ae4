use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::sections::SectionSpace;
use crate::algebra::matrix::{kernel_basis, ExactMatrix};
use crate::algebra::poly::{
    chart_monomial_derivative, monomial_basis, monomial_degree, Ambient, Degree, MultiForm,
};
use crate::algebra::{MultiplicationTensor, PrimeField, Scalar};
use crate::error::{Error, Result};

/// Persistent storage for multiplication tensors, keyed by curve hash and twists.
pub trait TensorStore: Send + Sync {
    fn load(&self, key: &str) -> Option<MultiplicationTensor>;
    fn save(&self, key: &str, tensor: &MultiplicationTensor);
}

#[derive(Default)]
pub(crate) struct Memo {
    pub sections: Mutex<HashMap<Degree, Arc<SectionSpace>>>,
    pub tensors: Mutex<HashMap<(Degree, Degree), Arc<MultiplicationTensor>>>,
    pub store: Option<Arc<dyn TensorStore>>,
}

/// A plane curve or a curve on P1xP1 over a prime field. Derived section spaces and
/// tensors are memoized inside the model; clones share the memo.
#[derive(Clone)]
pub struct CurveModel {
    field: PrimeField,
    form: MultiForm,
    nodes: Vec<(Scalar, Scalar)>,
    seed: u64,
    pub(crate) memo: Arc<Memo>,
}

impl fmt::Debug for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveModel")
            .field("prime", &self.field.p())
            .field("degree", &self.form.degree)
            .field("nodes", &self.nodes)
            .field("seed", &self.seed)
            .finish()
    }
}

impl PartialEq for CurveModel {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.form == other.form
            && self.nodes == other.nodes
            && self.seed == other.seed
    }
}

/// Splits the run seed into independent per-purpose streams.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(label.as_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().unwrap())
}

pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, label))
}

fn check_degree(degree: Degree) -> Result<()> {
    match degree {
        Degree::Bi(a, b) if a >= 3 && b >= 3 => Ok(()),
        Degree::Plane(d) if d >= 4 => Ok(()),
        _ => Err(Error::InvalidDegree(format!(
            "{degree}: need a,b >= 3 on P1xP1 or d >= 4 on P2"
        ))),
    }
}

/// Integer coefficients drawn from the seed and reduced mod p, so the same seed gives
/// reductions of one integral form over every prime.
fn integral_coefficients(degree: Degree, seed: u64, label: &str) -> Vec<i64> {
    let mut rng = rng_for(seed, &format!("{label}/{degree}"));
    monomial_basis(degree)
        .iter()
        .map(|_| rng.gen_range(-(1i64 << 15)..(1i64 << 15)))
        .collect()
}

pub fn random_curve(degree: Degree, prime: u32, seed: u64) -> Result<CurveModel> {
    check_degree(degree)?;
    let field = PrimeField::new(prime)?;
    let coeffs: Vec<Scalar> = integral_coefficients(degree, seed, "curve")
        .into_iter()
        .map(|c| field.from_i64(c))
        .collect();
    let form = MultiForm::from_coeffs(&field, degree, &coeffs)?;
    if form.is_zero() {
        return Err(Error::Degenerate("zero form".into()));
    }
    Ok(CurveModel::assemble(field, form, Vec::new(), seed))
}

/// Distinct node positions in the affine chart, drawn from the seed.
pub fn random_node_points(count: usize, prime: u32, seed: u64) -> Vec<(Scalar, Scalar)> {
    let mut rng = rng_for(seed, "nodes");
    let mut out: Vec<(Scalar, Scalar)> = Vec::new();
    while out.len() < count {
        let pt = (rng.gen_range(1..prime), rng.gen_range(1..prime));
        if out.iter().all(|q| q.0 != pt.0 && q.1 != pt.1) {
            out.push(pt);
        }
    }
    out
}

const NODE_RETRIES: usize = 32;

/// Forms of the given degree singular at every listed chart point, sampled from the
/// kernel of the value and first-derivative conditions.
pub fn impose_nodes(
    degree: Degree,
    nodes: &[(Scalar, Scalar)],
    prime: u32,
    seed: u64,
) -> Result<CurveModel> {
    if nodes.is_empty() {
        return random_curve(degree, prime, seed);
    }
    check_degree(degree)?;
    let field = PrimeField::new(prime)?;
    for (i, a) in nodes.iter().enumerate() {
        if a.0 >= prime || a.1 >= prime {
            return Err(Error::Nodes(format!("node {a:?} not reduced mod {prime}")));
        }
        if nodes[..i].contains(a) {
            return Err(Error::Nodes(format!("node {a:?} listed twice")));
        }
    }
    let ambient = degree.ambient();
    let basis = monomial_basis(degree);
    let mut rows = Vec::new();
    for &(s, t) in nodes {
        for (di, dj) in [(0, 0), (1, 0), (0, 1)] {
            let row: Vec<Scalar> = basis
                .iter()
                .map(|m| {
                    chart_monomial_derivative(
                        &field,
                        MultiForm::chart_exponents(ambient, m),
                        di,
                        dj,
                        s,
                        t,
                    )
                })
                .collect();
            rows.push(row);
        }
    }
    let conditions = ExactMatrix::from_dense(&field, basis.len(), &rows)?;
    let kernel = kernel_basis(&field, &conditions);
    if kernel.is_empty() {
        return Err(Error::Nodes(format!(
            "{} nodes leave no forms of degree {degree}",
            nodes.len()
        )));
    }
    let mut rng = rng_for(seed, &format!("nodal/{degree}/{}", nodes.len()));
    for _ in 0..NODE_RETRIES {
        let mut coeffs = vec![0; basis.len()];
        for k in &kernel {
            let r = field.from_i64(rng.gen_range(-(1i64 << 15)..(1i64 << 15)));
            for (c, &v) in coeffs.iter_mut().zip(k) {
                *c = field.add(*c, field.mul(r, v));
            }
        }
        let form = MultiForm::from_coeffs(&field, degree, &coeffs)?;
        if form.is_zero() {
            continue;
        }
        if nodes
            .iter()
            .all(|&(s, t)| node_is_ordinary(&field, &form, s, t))
        {
            return Ok(CurveModel::assemble(field, form, nodes.to_vec(), seed));
        }
    }
    Err(Error::Nodes(
        "no ordinary nodal member found within the retry budget".into(),
    ))
}

/// Hessian in the chart is nondegenerate.
pub fn node_is_ordinary(field: &PrimeField, form: &MultiForm, s: Scalar, t: Scalar) -> bool {
    let fss = form.chart_derivative(field, 2, 0, s, t);
    let ftt = form.chart_derivative(field, 0, 2, s, t);
    let fst = form.chart_derivative(field, 1, 1, s, t);
    field.sub(field.mul(fss, ftt), field.mul(fst, fst)) != 0
}

impl CurveModel {
    fn assemble(
        field: PrimeField,
        form: MultiForm,
        nodes: Vec<(Scalar, Scalar)>,
        seed: u64,
    ) -> Self {
        CurveModel {
            field,
            form,
            nodes,
            seed,
            memo: Arc::new(Memo::default()),
        }
    }

    /// Builds a model from an explicit form, checking the node conditions.
    pub fn from_form(
        form: MultiForm,
        prime: u32,
        nodes: Vec<(Scalar, Scalar)>,
        seed: u64,
    ) -> Result<Self> {
        let field = PrimeField::new(prime)?;
        check_degree(form.degree)?;
        if form.is_zero() {
            return Err(Error::Degenerate("zero form".into()));
        }
        for &(s, t) in &nodes {
            let vals =
                [(0, 0), (1, 0), (0, 1)].map(|(i, j)| form.chart_derivative(&field, i, j, s, t));
            if vals.iter().any(|&v| v != 0) || !node_is_ordinary(&field, &form, s, t) {
                return Err(Error::Nodes(format!("({s},{t}) is not an ordinary node")));
            }
        }
        Ok(Self::assemble(field, form, nodes, seed))
    }

    /// Same model with a persistent tensor store attached (fresh memo).
    pub fn with_store(&self, store: Arc<dyn TensorStore>) -> Self {
        let memo = Memo {
            store: Some(store),
            ..Memo::default()
        };
        CurveModel {
            memo: Arc::new(memo),
            ..self.clone()
        }
    }

    /// The reduction of this model's coefficients (read as integers in `[0, p)`)
    /// modulo another prime. Nodes are not transported.
    pub fn reduce_mod(&self, prime: u32) -> Result<Self> {
        let field = PrimeField::new(prime)?;
        let coeffs: Vec<Scalar> = self
            .form
            .coeffs()
            .iter()
            .map(|&c| field.from_u64(c as u64))
            .collect();
        let form = MultiForm::from_coeffs(&field, self.degree(), &coeffs)?;
        if form.is_zero() {
            return Err(Error::Degenerate("form vanishes mod the new prime".into()));
        }
        Ok(Self::assemble(field, form, Vec::new(), self.seed))
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.p()
    }

    pub fn form(&self) -> &MultiForm {
        &self.form
    }

    pub fn ambient(&self) -> Ambient {
        self.form.ambient
    }

    pub fn degree(&self) -> Degree {
        self.form.degree
    }

    pub fn nodes(&self) -> &[(Scalar, Scalar)] {
        &self.nodes
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Arithmetic genus.
    pub fn genus(&self) -> usize {
        match self.degree() {
            Degree::Bi(a, b) => ((a - 1) * (b - 1)) as usize,
            Degree::Plane(d) => ((d - 1) * (d - 2) / 2) as usize,
        }
    }

    pub fn geometric_genus(&self) -> usize {
        self.genus() - self.nodes.len()
    }

    /// Twist computing the dualizing sheaf by adjunction.
    pub fn canonical_twist(&self) -> Degree {
        match self.degree() {
            Degree::Bi(a, b) => Degree::Bi(a - 2, b - 2),
            Degree::Plane(d) => Degree::Plane(d - 3),
        }
    }

    pub fn omega_power(&self, q: i32) -> Degree {
        self.canonical_twist().scale(q)
    }

    pub fn contains_point(&self, point: &[Scalar]) -> bool {
        self.form.evaluate(&self.field, point) == 0
    }

    pub fn to_file(&self) -> CurveFile {
        let coefficients = self
            .form
            .terms
            .iter()
            .map(|(m, &c)| {
                let n = self.ambient().nvars();
                let mut row: Vec<i64> = m[..n].iter().map(|&e| e as i64).collect();
                row.push(c as i64);
                row
            })
            .collect();
        CurveFile {
            ambient: self.ambient(),
            degree: match self.degree() {
                Degree::Bi(a, b) => vec![a, b],
                Degree::Plane(d) => vec![d],
            },
            prime: self.prime(),
            seed: self.seed,
            coefficients,
            nodes: self
                .nodes
                .iter()
                .map(|&(s, t)| MultiForm::chart_point(self.ambient(), s, t))
                .collect(),
        }
    }

    pub fn from_file(file: &CurveFile) -> Result<Self> {
        let degree = match (file.ambient, file.degree.as_slice()) {
            (Ambient::P1xP1, [a, b]) => Degree::Bi(*a, *b),
            (Ambient::P2, [d]) => Degree::Plane(*d),
            _ => return Err(Error::Input("degree does not match ambient".into())),
        };
        let field = PrimeField::new(file.prime)?;
        let n = file.ambient.nvars();
        let mut form = MultiForm::zero(degree);
        for row in &file.coefficients {
            if row.len() != n + 1 {
                return Err(Error::Input(format!(
                    "coefficient row {row:?} should have {} entries",
                    n + 1
                )));
            }
            let mut m = [0u16; 4];
            for (slot, &e) in m.iter_mut().zip(&row[..n]) {
                *slot = u16::try_from(e).map_err(|_| Error::Input(format!("bad exponent {e}")))?;
            }
            if monomial_degree(file.ambient, &m) != degree {
                return Err(Error::Input(format!(
                    "monomial {:?} is not of degree {degree}",
                    &row[..n]
                )));
            }
            let c = field.from_i64(row[n]);
            if c != 0 {
                let e = form.terms.entry(m).or_insert(0);
                *e = field.add(*e, c);
            }
        }
        form.terms.retain(|_, v| *v != 0);
        let nodes = file
            .nodes
            .iter()
            .map(|pt| chart_coordinates(file.ambient, pt))
            .collect::<Result<Vec<_>>>()?;
        Self::from_form(form, file.prime, nodes, file.seed)
    }

    /// Stable digest of the defining data, used as a cache key.
    pub fn content_hash(&self) -> String {
        let bytes = serde_json::to_vec(&self.to_file()).expect("curve file serializes");
        let d = Sha256::digest(&bytes);
        d.iter().take(12).map(|b| format!("{b:02x}")).collect()
    }
}

fn chart_coordinates(ambient: Ambient, pt: &[Scalar]) -> Result<(Scalar, Scalar)> {
    match (ambient, pt) {
        (Ambient::P1xP1, [1, s, 1, t]) => Ok((*s, *t)),
        (Ambient::P2, [s, t, 1]) => Ok((*s, *t)),
        _ => Err(Error::Nodes(format!(
            "node {pt:?} is not written in the standard affine chart"
        ))),
    }
}

/// On-disk form of a curve model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub ambient: Ambient,
    pub degree: Vec<i32>,
    pub prime: u32,
    pub seed: u64,
    /// Exponent vector followed by the coefficient.
    pub coefficients: Vec<Vec<i64>>,
    /// Homogeneous coordinates in the affine chart.
    pub nodes: Vec<Vec<Scalar>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genera() {
        assert_eq!(random_curve(Degree::Bi(4, 4), 32003, 1).unwrap().genus(), 9);
        assert_eq!(
            random_curve(Degree::Plane(6), 32003, 7).unwrap().genus(),
            10
        );
        assert_eq!(random_curve(Degree::Bi(3, 4), 32003, 1).unwrap().genus(), 6);
        assert!(matches!(
            random_curve(Degree::Bi(2, 4), 32003, 1),
            Err(Error::InvalidDegree(_))
        ));
        assert!(random_curve(Degree::Plane(3), 32003, 1).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let a = random_curve(Degree::Bi(3, 5), 32003, 11).unwrap();
        let b = random_curve(Degree::Bi(3, 5), 32003, 11).unwrap();
        let c = random_curve(Degree::Bi(3, 5), 32003, 12).unwrap();
        assert_eq!(a.form(), b.form());
        assert_ne!(a.form(), c.form());
    }

    #[test]
    fn nodal_genus() {
        let pts = random_node_points(1, 32003, 5);
        let c = impose_nodes(Degree::Bi(3, 5), &pts, 32003, 5).unwrap();
        assert_eq!((c.genus(), c.geometric_genus()), (8, 7));
        let pts = random_node_points(2, 32003, 6);
        let d = impose_nodes(Degree::Bi(4, 4), &pts, 32003, 6).unwrap();
        assert_eq!((d.genus(), d.geometric_genus()), (9, 7));
        for &(s, t) in d.nodes() {
            assert_eq!(d.form().chart_derivative(d.field(), 0, 0, s, t), 0);
            assert_eq!(d.form().chart_derivative(d.field(), 1, 0, s, t), 0);
            assert_eq!(d.form().chart_derivative(d.field(), 0, 1, s, t), 0);
        }
        let smooth = impose_nodes(Degree::Bi(4, 4), &[], 32003, 6).unwrap();
        assert_eq!(smooth, random_curve(Degree::Bi(4, 4), 32003, 6).unwrap());
    }

    #[test]
    fn too_many_nodes() {
        let pts = random_node_points(6, 32003, 1);
        assert!(matches!(
            impose_nodes(Degree::Bi(3, 3), &pts, 32003, 1),
            Err(Error::Nodes(_))
        ));
        assert!(impose_nodes(Degree::Bi(3, 3), &[(1, 2), (1, 2)], 32003, 1).is_err());
    }

    #[test]
    fn file_roundtrip() {
        let pts = random_node_points(1, 32003, 3);
        let c = impose_nodes(Degree::Bi(3, 4), &pts, 32003, 3).unwrap();
        let json = serde_json::to_string(&c.to_file()).unwrap();
        let back = CurveModel::from_file(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, c);
        assert_eq!(serde_json::to_string(&back.to_file()).unwrap(), json);
    }
}
