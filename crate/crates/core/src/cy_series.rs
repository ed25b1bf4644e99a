//! Hilbert-series models of twisted Calabi-Yau algebras of dimension 1, 2, 3.
//!
//! * d = 1: `q = I - N(t)`
//! * d = 2: `q = I - N(t) + P t^L`
//! * d = 3: `q = I - N(t) + P t^L N(t^-1)^T - P t^L`
//!
//! The exact cyclotomic test on `det q` decides finite GK-dimension. The
//! spectral and hypocycloid criteria below are explanatory and are always
//! reported next to the exact verdict.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::growth::{classify_algebra, GrowthClass};
use crate::numeric::{self, DEFAULT_TOL};
use crate::polyalg::{int_matmul, int_transpose, rational_kernel, MatPoly};
use crate::quiver::{CyDatum, IncidenceData, WeightedQuiver};

/// A quiver with its Calabi-Yau datum and the assembled `q(t)`.
#[derive(Clone, Debug)]
pub struct CySeriesModel {
    pub quiver: WeightedQuiver,
    pub cy: CyDatum,
    pub incidence: IncidenceData,
    pub q: MatPoly,
}

impl CySeriesModel {
    pub fn dimension(&self) -> u8 {
        self.cy.dimension
    }
}

/// The datum that makes a disjoint union of directed cycles a dimension-1
/// model: `mu` follows the arrows and `ell` records the arrow weights, so
/// that `P t^L = N(t)`.
pub fn cycle_datum(quiver: &WeightedQuiver) -> Result<CyDatum> {
    check_cycles(quiver)?;
    let n = quiver.n_vertices;
    let mut mu = vec![0; n];
    let mut ell = vec![0; n];
    for a in &quiver.arrows {
        mu[a.source - 1] = a.target;
        ell[a.target - 1] = i64::from(a.weight);
    }
    Ok(CyDatum::new(1, mu, ell))
}

fn check_cycles(quiver: &WeightedQuiver) -> Result<()> {
    let n = quiver.n_vertices;
    let mut out = vec![None; n];
    let mut indeg = vec![0; n];
    for a in &quiver.arrows {
        if out[a.source - 1].is_some() {
            return Err(Error::InvalidDimOneQuiver(format!(
                "vertex {} has more than one outgoing arrow",
                a.source
            )));
        }
        out[a.source - 1] = Some((a.target - 1, a.weight));
        indeg[a.target - 1] += 1;
    }
    if let Some(v) = (0..n).find(|&v| out[v].is_none() || indeg[v] != 1) {
        return Err(Error::InvalidDimOneQuiver(format!(
            "vertex {} is not on exactly one directed cycle",
            v + 1
        )));
    }
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut v = start;
        let mut positive = false;
        while !seen[v] {
            seen[v] = true;
            let (w, wt) = out[v].expect("checked above");
            positive |= wt > 0;
            v = w;
        }
        if !positive {
            return Err(Error::InvalidDimOneQuiver(format!(
                "cycle through vertex {} has no arrow of positive weight",
                start + 1
            )));
        }
    }
    Ok(())
}

/// Assemble `q(t)` for the datum's dimension and check the structural
/// preconditions that make the functional equation hold.
pub fn build_q(quiver: &WeightedQuiver, cy: &CyDatum) -> Result<CySeriesModel> {
    quiver.check()?;
    let n = quiver.n_vertices;
    cy.check(n)?;
    let incidence = quiver.incidence();
    let nt = &incidence.n;
    let ptl = cy.p_t_l();
    let id = MatPoly::identity(n);

    let q = match cy.dimension {
        1 => {
            check_cycles(quiver)?;
            if let Some((i, j)) = ptl.first_difference(nt) {
                let expected = cycle_datum(quiver)?;
                return Err(Error::InvalidDatum(format!(
                    "P t^L must equal N(t) for a cycle quiver (entry ({}, {})); expected mu = {:?}, ell = {:?}",
                    i + 1,
                    j + 1,
                    expected.mu,
                    expected.ell
                )));
            }
            id.sub(nt)
        }
        2 | 3 => {
            if let Some(a) = quiver.arrows.iter().find(|a| a.weight == 0) {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} has weight 0; dimension-{} constructions need J(A_0) = 0",
                    a.id, cy.dimension
                )));
            }
            if quiver.all_weights_one() && quiver.is_connected() && !cy.is_uniform_ell() {
                return Err(Error::InvalidDatum(format!(
                    "connected quiver with weight-1 arrows needs a uniform ell, got {:?}",
                    cy.ell
                )));
            }
            let dual = ptl.mul(&nt.substitute_inverse_t().transpose());
            if cy.dimension == 2 {
                if let Some((row, col)) = nt.first_difference(&dual) {
                    return Err(Error::MeshIncompatible {
                        row: row + 1,
                        col: col + 1,
                    });
                }
                id.sub(nt).add(&ptl)
            } else {
                if let Some((row, col)) = nt.mul(&ptl).first_difference(&ptl.mul(nt)) {
                    return Err(Error::NonCommuting {
                        row: row + 1,
                        col: col + 1,
                    });
                }
                id.sub(nt).add(&dual).sub(&ptl)
            }
        }
        d => return Err(Error::InvalidDatum(format!("dimension {d} not in {{1,2,3}}"))),
    };
    if !q.is_polynomial() {
        return Err(Error::InvalidDatum(format!(
            "ell = {:?} is smaller than some arrow weight; q(t) has negative exponents",
            cy.ell
        )));
    }
    let d0 = q.constant_term_det();
    if !d0.abs().is_one() {
        return Err(Error::NonUnimodularConstantTerm(d0.to_string()));
    }
    Ok(CySeriesModel {
        quiver: quiver.clone(),
        cy: cy.clone(),
        incidence,
        q,
    })
}

/// Outcome of checking `q(t) = (-1)^d P t^L q(t^-1)^T` and `[q, P t^L] = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalEquationCheck {
    pub functional_equation: bool,
    pub commutes: bool,
    /// First mismatching entry of the functional equation, 1-based.
    pub equation_witness: Option<(usize, usize)>,
    /// First nonzero entry of the commutator, 1-based.
    pub commutator_witness: Option<(usize, usize)>,
}

impl FunctionalEquationCheck {
    pub fn holds(&self) -> bool {
        self.functional_equation && self.commutes
    }
}

/// Check the functional equation for an arbitrary `q` against a datum.
pub fn check_functional_equation(q: &MatPoly, cy: &CyDatum) -> FunctionalEquationCheck {
    let ptl = cy.p_t_l();
    let mut rhs = ptl.mul(&q.substitute_inverse_t().transpose());
    if cy.dimension % 2 == 1 {
        rhs = rhs.scale(&BigInt::from(-1));
    }
    let equation_witness = q.first_difference(&rhs).map(|(i, j)| (i + 1, j + 1));
    let commutator_witness = q
        .mul(&ptl)
        .first_difference(&ptl.mul(q))
        .map(|(i, j)| (i + 1, j + 1));
    FunctionalEquationCheck {
        functional_equation: equation_witness.is_none(),
        commutes: commutator_witness.is_none(),
        equation_witness,
        commutator_witness,
    }
}

pub fn verify_functional_equation(model: &CySeriesModel) -> FunctionalEquationCheck {
    check_functional_equation(&model.q, &model.cy)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "Pass"),
            Verdict::Fail => write!(f, "Fail"),
            Verdict::Inapplicable(why) => write!(f, "Inapplicable ({why})"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Joint eigenvalue of `(M, P)` and its hypocycloid verdict.
#[derive(Clone, Debug, Serialize)]
pub struct EigenPair {
    #[serde(serialize_with = "ser_complex")]
    pub delta: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub zeta: Complex64,
    pub inside: bool,
}

fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn ser_complex_vec<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
}

fn ser_big_vec<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref()
        .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub spectral_radius: f64,
    #[serde(serialize_with = "ser_complex_vec")]
    pub eigenvalues: Vec<Complex64>,
    pub is_normal: bool,
    #[serde(serialize_with = "ser_big_vec")]
    pub perron_vector: Option<Vec<BigInt>>,
    pub verdict: Verdict,
    /// Joint eigenpairs (dimension 3 only).
    pub eigen_pairs: Vec<EigenPair>,
    pub expected_rho: Option<f64>,
    pub expected_gk: Option<u32>,
    /// Authoritative classification from `det q`.
    pub exact_class: Option<GrowthClass>,
    pub agrees_with_exact: Option<bool>,
    pub notes: Vec<String>,
}

impl SpectralReport {
    fn inapplicable(m: &[Vec<i64>], why: impl Into<String>) -> Self {
        let eigenvalues = numeric::int_matrix_eigenvalues(m);
        SpectralReport {
            spectral_radius: eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max),
            eigenvalues,
            is_normal: is_normal(m),
            perron_vector: None,
            verdict: Verdict::Inapplicable(why.into()),
            eigen_pairs: Vec::new(),
            expected_rho: None,
            expected_gk: None,
            exact_class: None,
            agrees_with_exact: None,
            notes: Vec::new(),
        }
    }
}

/// `M M^T = M^T M` over the integers.
pub fn is_normal(m: &[Vec<i64>]) -> bool {
    let mt = int_transpose(m);
    int_matmul(m, &mt) == int_matmul(&mt, m)
}

fn commutes(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    int_matmul(a, b) == int_matmul(b, a)
}

/// A strictly positive primitive integer vector in `ker(M - lambda I)`.
pub fn positive_eigenvector(m: &[Vec<i64>], lambda: i64) -> Option<Vec<BigInt>> {
    let n = m.len();
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = m[i][j] - if i == j { lambda } else { 0 };
                    BigRational::from_integer(v.into())
                })
                .collect()
        })
        .collect();
    let basis = rational_kernel(&rows);
    let mut candidates = basis.clone();
    if basis.len() > 1 {
        let sum = basis.iter().fold(vec![BigRational::zero(); n], |acc, v| {
            acc.iter().zip(v).map(|(a, b)| a + b).collect()
        });
        candidates.push(sum);
    }
    for v in candidates {
        let sign_ok = v.iter().all(|x| x.is_positive()) || v.iter().all(|x| x.is_negative());
        if !sign_ok {
            continue;
        }
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        return Some(ints.iter().map(|x| (x / &g).abs()).collect());
    }
    None
}

pub fn dim2_spectral_criterion(model: &CySeriesModel) -> SpectralReport {
    dim2_spectral_criterion_with_tol(model, DEFAULT_TOL)
}

/// Pass iff `rho(M) = 2`, confirmed exactly by a positive integer vector in
/// `ker(M - 2I)` and numerically by `|lambda| <= 2` for every eigenvalue.
pub fn dim2_spectral_criterion_with_tol(model: &CySeriesModel, tol: f64) -> SpectralReport {
    let m = &model.incidence.m;
    if model.dimension() != 2 {
        return SpectralReport::inapplicable(m, "model is not of dimension 2");
    }
    if !model.quiver.all_weights_one() {
        return SpectralReport::inapplicable(m, "arrow weights are not all 1");
    }
    if !model.quiver.is_connected() {
        return SpectralReport::inapplicable(m, "quiver is not connected");
    }
    let mut report = SpectralReport::inapplicable(m, "");
    let perron = positive_eigenvector(m, 2);
    let bounded = report.eigenvalues.iter().all(|z| z.norm() <= 2.0 + tol);
    report.verdict = if perron.is_some() && bounded {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    report.perron_vector = perron;
    report.expected_rho = Some(2.0);
    report.expected_gk = (report.verdict == Verdict::Pass).then_some(2);
    cross_check(model, &mut report);
    if report.verdict == Verdict::Fail && report.spectral_radius > 2.0 + tol {
        report
            .notes
            .push("rho(M) > 2: exponential growth expected".to_string());
    }
    report
}

fn cross_check(model: &CySeriesModel, report: &mut SpectralReport) {
    if let Ok(g) = classify_algebra(&model.q) {
        let expected = match report.verdict {
            Verdict::Pass => Some(GrowthClass::FiniteGK),
            Verdict::Fail => Some(GrowthClass::Exponential),
            Verdict::Inapplicable(_) => None,
        };
        report.exact_class = Some(g.growth_class);
        report.agrees_with_exact = expected.map(|e| e == g.growth_class);
    }
}

/// Principal `k`-th root of a unit complex number.
fn principal_root(zeta: Complex64, k: u32) -> Complex64 {
    Complex64::from_polar(1.0, zeta.arg() / f64::from(k))
}

pub fn hypocycloid_contains(a: Complex64, k: u32, zeta: Complex64) -> bool {
    hypocycloid_contains_with_tol(a, k, zeta, DEFAULT_TOL)
}

/// Whether `a` lies in `root_k(zeta) * Omega_3` (k = 3) or
/// `(1/2) root_k(zeta) * Omega_4` (k = 4), decided by checking that every root
/// of `1 - a' x + conj(a') x^(k-1) - x^k`, `a' = a conj(root_k(zeta))`, lies on
/// the unit circle. Boundary points count as members.
pub fn hypocycloid_contains_with_tol(a: Complex64, k: u32, zeta: Complex64, tol: f64) -> bool {
    assert!(k == 3 || k == 4, "hypocycloid order must be 3 or 4, got {k}");
    assert!(
        (zeta.norm() - 1.0).abs() <= 1e-12,
        "zeta must lie on the unit circle"
    );
    let ap = a * principal_root(zeta, k).conj();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); k as usize + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    coeffs[1] = -ap;
    coeffs[k as usize - 1] = ap.conj();
    coeffs[k as usize] = Complex64::new(-1.0, 0.0);
    numeric::all_roots_on_unit_circle(&coeffs, tol)
}

/// One sample of a hypocycloid boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub theta: f64,
    pub point: Complex64,
}

/// `h_k(theta) = (k-1) e^(i theta) + e^(-i (k-1) theta)` sampled uniformly on `[0, 2 pi)`.
pub fn hypocycloid_boundary(k: u32, samples: usize) -> Vec<BoundaryPoint> {
    hypocycloid_boundary_scaled(k, samples, 1.0)
}

pub fn hypocycloid_boundary_scaled(k: u32, samples: usize, scale: f64) -> Vec<BoundaryPoint> {
    assert!(samples >= 3, "need at least 3 samples");
    let km1 = f64::from(k) - 1.0;
    (0..samples)
        .map(|s| {
            let theta = 2.0 * PI * s as f64 / samples as f64;
            let z = Complex64::from_polar(km1, theta) + Complex64::from_polar(1.0, -km1 * theta);
            BoundaryPoint {
                theta,
                point: z * scale,
            }
        })
        .collect()
}

/// Scale of the region tested for AS-index `ell`: 1 for the deltoid, 1/2 for the astroid.
pub fn region_scale(ell: u32) -> f64 {
    if ell == 4 {
        0.5
    } else {
        1.0
    }
}

/// Eigenvectors of `P` grouped by eigenvalue: cycles of `mu` carry the
/// roots of unity of their length. Returns `(j, L)` with `zeta = e^(2 pi i j / L)`
/// in lowest terms, and an orthonormal basis of that eigenspace.
fn permutation_eigenspaces(mu: &[usize]) -> Vec<((u64, u64), Vec<Vec<Complex64>>)> {
    let n = mu.len();
    let mut seen = vec![false; n];
    let mut groups: Vec<((u64, u64), Vec<Vec<Complex64>>)> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cycle.push(v);
            v = mu[v] - 1;
        }
        let len = cycle.len() as u64;
        for j in 0..len {
            let g = j.gcd(&len);
            let key = (j / g, len / g);
            let lambda = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / len as f64);
            let mut vec = vec![Complex64::new(0.0, 0.0); n];
            let norm = (len as f64).sqrt();
            for (k, &c) in cycle.iter().enumerate() {
                vec[c] = lambda.powu(k as u32) / norm;
            }
            match groups.iter_mut().find(|(k2, _)| *k2 == key) {
                Some((_, vs)) => vs.push(vec),
                None => groups.push((key, vec![vec])),
            }
        }
    }
    groups.sort_by(|a, b| (a.0 .0 * b.0 .1).cmp(&(b.0 .0 * a.0 .1)));
    groups
}

/// Simultaneous eigenvalues `(delta_i, zeta_i)` of commuting normal `M`, `P`.
/// Also returns the largest residual seen.
pub fn joint_eigenpairs(m: &[Vec<i64>], mu: &[usize]) -> (Vec<(Complex64, Complex64)>, f64) {
    let n = m.len();
    let mm = DMatrix::<Complex64>::from_fn(n, n, |i, j| Complex64::new(m[i][j] as f64, 0.0));
    let mut pairs = Vec::new();
    let mut residual: f64 = 0.0;
    for ((j, len), basis) in permutation_eigenspaces(mu) {
        let zeta = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / len as f64);
        let k = basis.len();
        let b = DMatrix::<Complex64>::from_fn(n, k, |r, c| basis[c][r]);
        let restricted = b.adjoint() * &mm * &b;
        let invariance = &mm * &b - &b * &restricted;
        residual = residual.max(invariance.iter().map(|z| z.norm()).fold(0.0, f64::max));
        let (_, t) = restricted.schur().unpack();
        for r in 0..k {
            for c in r + 1..k {
                residual = residual.max(t[(r, c)].norm());
            }
            pairs.push((t[(r, r)], zeta));
        }
    }
    (pairs, residual)
}

pub fn dim3_normal_criterion(model: &CySeriesModel) -> SpectralReport {
    dim3_normal_criterion_with_tol(model, DEFAULT_TOL)
}

/// Eigenvalue criterion for dimension 3 with weight-1 arrows, uniform `ell`
/// and normal `M` commuting with `P`. Presumes GK-dimension at least 3.
pub fn dim3_normal_criterion_with_tol(model: &CySeriesModel, tol: f64) -> SpectralReport {
    let m = &model.incidence.m;
    if model.dimension() != 3 {
        return SpectralReport::inapplicable(m, "model is not of dimension 3");
    }
    if !model.quiver.all_weights_one() {
        return SpectralReport::inapplicable(m, "weighted arrows: no spectral criterion is known");
    }
    if !model.cy.is_uniform_ell() {
        return SpectralReport::inapplicable(m, "AS-index is not uniform");
    }
    if !is_normal(m) {
        return SpectralReport::inapplicable(m, "M is not normal (open case)");
    }
    let p = model.cy.permutation_matrix();
    if !commutes(m, &p) {
        return SpectralReport::inapplicable(m, "P does not commute with M");
    }
    let ell = model.cy.ell.first().copied().unwrap_or(0);
    let mut report = SpectralReport::inapplicable(m, "");
    report.is_normal = true;
    report
        .notes
        .push("criterion presumes GKdim(A) >= 3".to_string());
    if ell < 3 {
        report.verdict = Verdict::Inapplicable(format!("ell = {ell} < 3"));
        cross_check(model, &mut report);
        return report;
    }
    if ell >= 5 {
        report.verdict = Verdict::Fail;
        report
            .notes
            .push(format!("ell = {ell} >= 5 forces infinite GK-dimension"));
        cross_check(model, &mut report);
        return report;
    }
    let (pairs, residual) = joint_eigenpairs(m, &model.cy.mu);
    if residual > tol {
        report.notes.push(format!(
            "joint diagonalization residual {residual:.3e} exceeds tolerance"
        ));
    }
    report.eigen_pairs = pairs
        .into_iter()
        .map(|(delta, zeta)| EigenPair {
            delta,
            zeta,
            inside: hypocycloid_contains_with_tol(delta, ell as u32, zeta, tol),
        })
        .collect();
    let pass = report.eigen_pairs.iter().all(|p| p.inside);
    report.verdict = if pass { Verdict::Pass } else { Verdict::Fail };
    if pass {
        report.expected_rho = Some((6 - ell) as f64);
        report.expected_gk = Some(3);
        report.perron_vector = positive_eigenvector(m, 6 - ell);
    }
    cross_check(model, &mut report);
    report
}
