//! Bounded searches over the rank-3 lattice spanned by a curve class `C` and two
//! elliptic classes `E1`, `E2` with `C^2 = 2g-2`, `C.E_i = k`, `E1.E2 = 2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `a C + b1 E1 + b2 E2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeClass {
    pub a: i64,
    pub b1: i64,
    pub b2: i64,
}

impl LatticeClass {
    pub const fn new(a: i64, b1: i64, b2: i64) -> Self {
        LatticeClass { a, b1, b2 }
    }

    pub fn sub(self, o: LatticeClass) -> LatticeClass {
        LatticeClass::new(self.a - o.a, self.b1 - o.b1, self.b2 - o.b2)
    }

    pub fn add(self, o: LatticeClass) -> LatticeClass {
        LatticeClass::new(self.a + o.a, self.b1 + o.b1, self.b2 + o.b2)
    }
}

pub const CURVE: LatticeClass = LatticeClass::new(1, 0, 0);
pub const E1: LatticeClass = LatticeClass::new(0, 1, 0);
pub const E2: LatticeClass = LatticeClass::new(0, 0, 1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeData {
    pub g: i64,
    pub k: i64,
}

impl LatticeData {
    pub fn new(g: i64, k: i64) -> Self {
        LatticeData { g, k }
    }

    pub fn gram(&self) -> [[i64; 3]; 3] {
        let (g, k) = (self.g, self.k);
        [[2 * g - 2, k, k], [k, 0, 2], [k, 2, 0]]
    }

    pub fn dot(&self, x: LatticeClass, y: LatticeClass) -> i64 {
        let m = self.gram();
        let u = [x.a, x.b1, x.b2];
        let v = [y.a, y.b1, y.b2];
        (0..3)
            .map(|i| (0..3).map(|j| u[i] * m[i][j] * v[j]).sum::<i64>())
            .sum()
    }

    pub fn square(&self, x: LatticeClass) -> i64 {
        self.dot(x, x)
    }

    pub fn is_even(&self) -> bool {
        self.gram().iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }
}

/// Determinant of the Gram matrix; equals `4(k^2 + 2 - 2g)`.
pub fn discriminant(l: &LatticeData) -> i64 {
    det3(&l.gram())
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn sign_changes(coeffs: &[i128]) -> usize {
    let signs: Vec<i128> = coeffs
        .iter()
        .filter(|&&c| c != 0)
        .map(|c| c.signum())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Counts `(positive, negative, zero)` eigenvalues of a symmetric 3 x 3 integer matrix,
/// from Descartes' rule on the characteristic polynomial (exact since all roots are real).
pub fn inertia(m: &[[i64; 3]; 3]) -> (usize, usize, usize) {
    let tr = (m[0][0] + m[1][1] + m[2][2]) as i128;
    let minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0])
        + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
        + (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    let det = det3(m) as i128;
    // t^3 - tr t^2 + minors t - det
    let chi = [1i128, -tr, minors as i128, -det];
    let zero = chi.iter().rev().take_while(|&&c| c == 0).count();
    let trimmed = &chi[..4 - zero];
    let pos = sign_changes(trimmed);
    let flipped: Vec<i128> = trimmed
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if (trimmed.len() - 1 - i) % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    let neg = sign_changes(&flipped);
    (pos, neg, zero)
}

/// Signature `(1, 2)`.
pub fn signature_check(l: &LatticeData) -> bool {
    inertia(&l.gram()) == (1, 2, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBox {
    pub a_max: i64,
    /// Bound on `|b_i|` as a multiple of `k`.
    pub b_factor: i64,
}

impl SearchBox {
    pub const NEF: SearchBox = SearchBox {
        a_max: 4,
        b_factor: 2,
    };
    pub const CLIFFORD: SearchBox = SearchBox {
        a_max: 3,
        b_factor: 2,
    };
    pub const WIDE: SearchBox = SearchBox {
        a_max: 6,
        b_factor: 3,
    };

    fn classes(&self, k: i64) -> Vec<LatticeClass> {
        let b = self.b_factor * k;
        let mut out = Vec::new();
        for a in -self.a_max..=self.a_max {
            for b1 in -b..=b {
                for b2 in -b..=b {
                    out.push(LatticeClass::new(a, b1, b2));
                }
            }
        }
        out
    }

    fn search(&self, k: i64, keep: impl Fn(LatticeClass) -> bool + Sync) -> Vec<LatticeClass> {
        self.classes(k)
            .into_par_iter()
            .filter(|&c| keep(c))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertStatus {
    Certified,
    Failed,
    HypothesesNotMet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCertificate {
    pub claim: String,
    pub g: i64,
    pub k: i64,
    pub search_box: Option<SearchBox>,
    pub hypotheses: Vec<(String, bool)>,
    pub violators: Vec<LatticeClass>,
    pub status: CertStatus,
    pub clifford_index: Option<i64>,
    pub notes: Vec<String>,
}

impl LatticeCertificate {
    fn new(claim: &str, l: &LatticeData, hypotheses: Vec<(String, bool)>) -> Self {
        let met = hypotheses.iter().all(|h| h.1);
        LatticeCertificate {
            claim: claim.into(),
            g: l.g,
            k: l.k,
            search_box: None,
            hypotheses,
            violators: Vec::new(),
            status: if met {
                CertStatus::Certified
            } else {
                CertStatus::HypothesesNotMet
            },
            clifford_index: None,
            notes: Vec::new(),
        }
    }

    fn finish(mut self, search_box: SearchBox, violators: Vec<LatticeClass>) -> Self {
        self.search_box = Some(search_box);
        if !violators.is_empty() {
            self.status = CertStatus::Failed;
        }
        self.violators = violators;
        self
    }

    pub fn succeeded(&self) -> bool {
        self.status == CertStatus::Certified
    }
}

fn hyp(name: &str, ok: bool) -> (String, bool) {
    (name.to_string(), ok)
}

/// Which class a nef certificate concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NefTarget {
    E1,
    E2,
    Curve,
}

/// Searches for a (-2)-class `R` that could make the target fail to be nef.
pub fn nef_certificate(
    l: &LatticeData,
    target: NefTarget,
    search_box: SearchBox,
) -> LatticeCertificate {
    let (g, k) = (l.g, l.k);
    let mut hyps = vec![
        hyp("k >= 3", k >= 3),
        hyp("k <= (g+1)/2", 2 * k <= g + 1),
        hyp("g <= k^2/2", 2 * g <= k * k),
    ];
    if target == NefTarget::Curve {
        hyps.push(hyp("g < k^2/2", 2 * g < k * k));
    }
    let cert = LatticeCertificate::new(&format!("nef {target:?}"), l, hyps);
    if cert.status == CertStatus::HypothesesNotMet {
        return cert;
    }
    let h = E1.add(E2);
    let violators = match target {
        NefTarget::E1 | NefTarget::E2 => {
            let e = if target == NefTarget::E1 { E1 } else { E2 };
            search_box.search(k, |r| {
                let rest = e.sub(r);
                let rh = l.dot(r, h);
                l.square(r) == -2
                    && l.dot(r, e) < 0
                    && rh >= 0
                    && l.dot(rest, h) >= 0
                    && l.square(rest) * l.square(h) <= l.dot(rest, h).pow(2)
            })
        }
        NefTarget::Curve => search_box.search(k, |r| {
            l.square(r) == -2
                && l.dot(r, CURVE) < 0
                && [r.b1, r.b2]
                    .iter()
                    .all(|&b| -r.a * k <= 2 * b && 2 * b <= (1 - r.a) * k)
                && r != CURVE
        }),
    };
    let mut cert = cert.finish(search_box, violators);
    cert.notes
        .push("E1 + E2 is taken to be big and nef: (E1 + E2)^2 = 4 > 0".into());
    cert
}

fn clifford_hypotheses(l: &LatticeData) -> Vec<(String, bool)> {
    let (g, k) = (l.g, l.k);
    vec![
        hyp("g <= 4k^2/9", 9 * g <= 4 * k * k),
        hyp("k <= (g+1)/2", 2 * k <= g + 1),
        hyp("k >= 6", k >= 6),
    ]
}

/// Decompositions `C = M + N` with both sides effective and `M.N <= k` other than
/// `{E_i, C - E_i}`.
pub fn clifford_certificate(l: &LatticeData, search_box: SearchBox) -> LatticeCertificate {
    let k = l.k;
    let cert = LatticeCertificate::new("clifford", l, clifford_hypotheses(l));
    if cert.status == CertStatus::HypothesesNotMet {
        return cert;
    }
    let allowed = [E1, E2, CURVE.sub(E1), CURVE.sub(E2)];
    let survivors = search_box.search(k, |m| {
        let n = CURVE.sub(m);
        m != LatticeClass::new(0, 0, 0)
            && m != CURVE
            && l.square(m) >= 0
            && l.square(n) >= 0
            && l.dot(m, n) <= k
            && [m.b1, m.b2]
                .iter()
                .all(|&b| -m.a * k <= 2 * b && 2 * b <= (1 - m.a) * k)
    });
    let violators: Vec<LatticeClass> = survivors
        .into_iter()
        .filter(|m| !allowed.contains(m))
        .collect();
    let mut cert = cert.finish(search_box, violators);
    if cert.succeeded() {
        cert.clifford_index = Some(k - 2);
    }
    cert
}

/// Searches for a (-2)-class obstructing `h^1(C - 2E_i) = 0`.
pub fn h1_certificate(l: &LatticeData, search_box: SearchBox) -> LatticeCertificate {
    let (g, k) = (l.g, l.k);
    let hyps = vec![
        hyp("g < k^2/2", 2 * g < k * k),
        hyp("k <= (g+1)/2", 2 * k <= g + 1),
        hyp("k >= 6", k >= 6),
    ];
    let cert = LatticeCertificate::new("h1 vanishing", l, hyps);
    if cert.status == CertStatus::HypothesesNotMet {
        return cert;
    }
    let mut violators = Vec::new();
    for (e, swap) in [(E1, false), (E2, true)] {
        let d = CURVE.sub(e).sub(e);
        violators.extend(search_box.search(k, |r| {
            let (own, other) = if swap { (r.b2, r.b1) } else { (r.b1, r.b2) };
            l.square(r) == -2
                && l.dot(r, d) < 0
                && 2 * r.b1 >= -r.a * k
                && 2 * r.b2 >= -r.a * k
                && 2 * (own + 2) <= (1 - r.a) * k
                && 2 * other <= (1 - r.a) * k
                && r != d
        }));
    }
    cert.finish(search_box, violators)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpfCertificate {
    pub summary: LatticeCertificate,
    pub discriminant: i64,
    pub signature_ok: bool,
    pub parts: Vec<LatticeCertificate>,
    pub coppens_range: bool,
}

/// Conjunction of the range hypotheses with the signature, nef, Clifford and `h^1`
/// certificates.
pub fn bpf_certificate(g: i64, k: i64) -> BpfCertificate {
    bpf_certificate_with(g, k, SearchBox::NEF, SearchBox::CLIFFORD)
}

pub fn bpf_certificate_with(
    g: i64,
    k: i64,
    nef_box: SearchBox,
    cliff_box: SearchBox,
) -> BpfCertificate {
    let l = LatticeData::new(g, k);
    let signature_ok = signature_check(&l);
    let mut hyps = clifford_hypotheses(&l);
    hyps.push(hyp("even lattice", l.is_even()));
    hyps.push(hyp("signature (1,2)", signature_ok));
    let mut summary = LatticeCertificate::new("bpf-linear growth", &l, hyps);
    let coppens_range = g <= (k - 1) * (k - 1);
    summary
        .notes
        .push(format!("Coppens range g <= (k-1)^2: {coppens_range}"));
    summary.notes.push(format!(
        "non-maximal gonality k <= floor((g+1)/2): {}",
        k <= (g + 1) / 2
    ));
    summary
        .notes
        .push("range k <= (g+8)/4 and the Martens step are recorded, not re-verified".into());
    let mut parts = Vec::new();
    if summary.status != CertStatus::HypothesesNotMet {
        parts = vec![
            nef_certificate(&l, NefTarget::E1, nef_box),
            nef_certificate(&l, NefTarget::E2, nef_box),
            nef_certificate(&l, NefTarget::Curve, nef_box),
            clifford_certificate(&l, cliff_box),
            h1_certificate(&l, nef_box),
        ];
        summary.violators = parts.iter().flat_map(|c| c.violators.clone()).collect();
        if parts.iter().any(|c| !c.succeeded()) {
            summary.status = CertStatus::Failed;
        } else {
            summary.clifford_index = parts[3].clifford_index;
        }
    }
    BpfCertificate {
        summary,
        discriminant: discriminant(&l),
        signature_ok,
        parts,
        coppens_range,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeemAdvisory {
    pub exclusions: Vec<String>,
    pub note: Option<String>,
}

/// Cover types that must be excluded for the dimension bounds on pencils to hold.
pub fn keem_advisory(g: i64, k: i64) -> KeemAdvisory {
    let list = |v: &[&str]| KeemAdvisory {
        exclusions: v.iter().map(|s| s.to_string()).collect(),
        note: None,
    };
    match k {
        3 => list(&["double cover of an elliptic curve"]),
        4 if g >= 11 => list(&[
            "double cover of a genus 1 curve",
            "double cover of a genus 2 curve",
        ]),
        5 if g >= 15 => list(&[
            "triple cover of an elliptic curve",
            "double cover of a genus 3 curve",
        ]),
        _ => KeemAdvisory {
            exclusions: Vec::new(),
            note: Some("theorem range not met".into()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&LatticeData::new(7, 4)), 16);
        assert_eq!(discriminant(&LatticeData::new(11, 6)), 64);
        for k in 3..=30 {
            for g in 2 * k - 1..=k * k {
                let l = LatticeData::new(g, k);
                assert_eq!(discriminant(&l), 4 * (k * k + 2 - 2 * g));
                assert_eq!(l.square(E1.sub(E2)), -4);
            }
        }
    }

    #[test]
    fn signatures() {
        assert!(signature_check(&LatticeData::new(11, 6)));
        assert!(signature_check(&LatticeData::new(7, 4)));
        assert_eq!(inertia(&[[1, 0, 0], [0, 0, 0], [0, 0, -1]]), (1, 1, 1));
        assert_eq!(inertia(&[[2, 0, 0], [0, 3, 0], [0, 0, 1]]), (3, 0, 0));
    }

    #[test]
    fn certificates() {
        for (g, k, d) in [(11, 6, 64), (13, 6, 48), (16, 6, 24)] {
            let c = bpf_certificate(g, k);
            assert_eq!(c.summary.status, CertStatus::Certified, "{c:?}");
            assert!(c.summary.violators.is_empty());
            assert_eq!(c.discriminant, d);
            assert_eq!(c.summary.clifford_index, Some(k - 2));
            let wide = bpf_certificate_with(g, k, SearchBox::WIDE, SearchBox::WIDE);
            assert_eq!(wide.summary.status, CertStatus::Certified);
        }
        for (g, k) in [(7, 4), (10, 5)] {
            assert_eq!(
                bpf_certificate(g, k).summary.status,
                CertStatus::HypothesesNotMet
            );
        }
        let l = LatticeData::new(18, 6);
        assert_eq!(
            nef_certificate(&l, NefTarget::Curve, SearchBox::NEF).status,
            CertStatus::HypothesesNotMet
        );
        assert!(
            nef_certificate(&LatticeData::new(11, 6), NefTarget::Curve, SearchBox::NEF).succeeded()
        );
    }

    #[test]
    fn advisories() {
        assert_eq!(keem_advisory(7, 3).exclusions.len(), 1);
        assert_eq!(keem_advisory(12, 4).exclusions.len(), 2);
        let a = keem_advisory(10, 6);
        assert!(a.exclusions.is_empty() && a.note.is_some());
    }
}
