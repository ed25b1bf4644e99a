//! Growth classification of rational Hilbert series.
//!
//! Finite GK-dimension is decided exactly: an integer polynomial with unit
//! constant term has all roots on the unit circle iff it is, up to sign and a
//! power of `t`, a product of cyclotomic polynomials (Kronecker). The
//! GK-dimension of an algebra is the largest pole order at `t = 1` among the
//! reduced entries of `q(t)^-1`, which can be smaller than the order of
//! vanishing of `det q` at 1.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyalg::{IntLaurentPoly, MatPoly, RatFun};

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Memo table for cyclotomic polynomials, built with
/// `Phi_n = (t^n - 1) / prod_{d | n, d < n} Phi_d`.
#[derive(Default)]
pub struct CyclotomicTable {
    cache: HashMap<u64, IntLaurentPoly>,
}

impl CyclotomicTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: u64) -> IntLaurentPoly {
        assert!(n > 0, "cyclotomic index must be positive");
        if let Some(p) = self.cache.get(&n) {
            return p.clone();
        }
        let mut p = IntLaurentPoly::from_terms([(0, BigInt::from(-1)), (n as i32, BigInt::one())]);
        for d in (1..n).filter(|d| n % d == 0) {
            let phi_d = self.get(d);
            p = p.div_exact(&phi_d).expect("Phi_d divides t^n - 1");
        }
        self.cache.insert(n, p.clone());
        p
    }
}

thread_local! {
    static TABLE: std::cell::RefCell<CyclotomicTable> = std::cell::RefCell::new(CyclotomicTable::new());
}

pub fn cyclotomic_poly(n: u64) -> IntLaurentPoly {
    TABLE.with(|t| t.borrow_mut().get(n))
}

/// Necessary condition for all roots to lie on the unit circle: after
/// removing powers of `t`, the end coefficients are `+-1` and
/// `|a_k| <= C(d, k)`.
pub fn within_binomial_bound(p: &IntLaurentPoly) -> bool {
    let (_, rest) = p.split_monomial();
    let d = rest.max_exp().unwrap_or(0);
    if !rest.leading_coeff().is_some_and(|c| c.abs().is_one()) || !rest.trailing_coeff().is_some_and(|c| c.abs().is_one()) {
        return false;
    }
    let mut binom = BigInt::one();
    for k in 0..=d {
        if rest.coeff(k).abs() > binom {
            return false;
        }
        binom = binom * BigInt::from(d - k) / BigInt::from(k + 1);
    }
    true
}

/// Evidence from dividing out cyclotomic factors:
/// `p = t^shift * prod Phi_n^mult * remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub shift: i32,
    /// `(n, multiplicity)` sorted by `n`.
    pub factors: Vec<(u64, u32)>,
    pub remainder: IntLaurentPoly,
}

impl CyclotomicFactorization {
    /// Remainder is a constant `+1` or `-1`.
    pub fn is_complete(&self) -> bool {
        self.remainder.num_terms() == 1
            && self.remainder.coeff(0).abs().is_one()
    }

    pub fn multiplicity(&self, n: u64) -> u32 {
        self.factors
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }
}

impl fmt::Display for CyclotomicFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.remainder.is_one() {
            parts.push(format!("({})", self.remainder));
        }
        if self.shift != 0 {
            parts.push(format!("t^{}", self.shift));
        }
        for (n, m) in &self.factors {
            if *m == 1 {
                parts.push(format!("Phi_{n}"));
            } else {
                parts.push(format!("Phi_{n}^{m}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" * "))
        }
    }
}

/// Exact test that every root of `p` is a root of unity, with the
/// cyclotomic factorization as evidence. `t`-power factors are stripped first.
pub fn all_roots_are_roots_of_unity(p: &IntLaurentPoly) -> Result<(bool, CyclotomicFactorization)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (shift, mut rest) = p.split_monomial();
    let deg = rest.max_exp().unwrap_or(0) as u64;
    let mut factors = Vec::new();
    let unimodular_ends = rest.leading_coeff().is_some_and(|c| c.abs().is_one())
        && rest.trailing_coeff().is_some_and(|c| c.abs().is_one());
    if unimodular_ends && deg > 0 {
        let bound = (2 * deg * deg).max(2);
        for n in 1..=bound {
            let cur_deg = rest.max_exp().unwrap_or(0) as u64;
            if cur_deg == 0 {
                break;
            }
            if euler_phi(n) > cur_deg {
                continue;
            }
            let phi = cyclotomic_poly(n);
            let mut mult = 0;
            while let Some(q) = rest.div_exact(&phi) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((n, mult));
            }
        }
    }
    let fact = CyclotomicFactorization {
        shift,
        factors,
        remainder: rest,
    };
    Ok((fact.is_complete(), fact))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GrowthClass {
    FiniteGK,
    Exponential,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::FiniteGK => write!(f, "FiniteGK"),
            GrowthClass::Exponential => write!(f, "Exponential"),
        }
    }
}

/// Growth data of an algebra with matrix Hilbert series `q(t)^-1`.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub growth_class: GrowthClass,
    pub gk_dimension: Option<u32>,
    pub det_q: IntLaurentPoly,
    pub cyclotomic: CyclotomicFactorization,
    /// Multiplicity of `det q` viewed as a rational function.
    pub eps_det: BigRational,
    pub per_entry_pole_orders: Vec<Vec<i64>>,
    /// Reduced entries of `q(t)^-1`, row-major.
    pub entries: Vec<RatFun>,
}

#[derive(Serialize)]
struct GrowthReportJson<'a> {
    growth_class: GrowthClass,
    gk_dimension: Option<u32>,
    det_q: String,
    cyclotomic_factors: Vec<[u64; 2]>,
    remainder: String,
    eps_det: String,
    per_entry_pole_orders: &'a [Vec<i64>],
}

impl Serialize for GrowthReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GrowthReportJson {
            growth_class: self.growth_class,
            gk_dimension: self.gk_dimension,
            det_q: self.det_q.to_string(),
            cyclotomic_factors: self
                .cyclotomic
                .factors
                .iter()
                .map(|(n, m)| [*n, u64::from(*m)])
                .collect(),
            remainder: self.cyclotomic.remainder.to_string(),
            eps_det: self.eps_det.to_string(),
            per_entry_pole_orders: &self.per_entry_pole_orders,
        }
        .serialize(s)
    }
}

fn check_unimodular(q: &MatPoly) -> Result<()> {
    if !q.is_polynomial() {
        return Err(Error::NegativeExponent);
    }
    let d0 = q.constant_term_det();
    if !d0.abs().is_one() {
        return Err(Error::NonUnimodularConstantTerm(d0.to_string()));
    }
    Ok(())
}

/// Classify the algebra whose matrix Hilbert series is `q(t)^-1`.
pub fn classify_algebra(q: &MatPoly) -> Result<GrowthReport> {
    check_unimodular(q)?;
    let det_q = q.det();
    let (finite, cyclotomic) = all_roots_are_roots_of_unity(&det_q)?;
    let entries = q.entrywise_rational_inverse()?;
    let n = q.size();
    let per_entry_pole_orders: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| entries[i * n + j].valuation_at_one())
                .collect()
        })
        .collect();
    let gk_dimension = finite.then(|| {
        per_entry_pole_orders
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(0)
            .max(0) as u32
    });
    let eps_det = RatFun::from_poly(det_q.to_rational()).multiplicity_eps();
    Ok(GrowthReport {
        growth_class: if finite {
            GrowthClass::FiniteGK
        } else {
            GrowthClass::Exponential
        },
        gk_dimension,
        det_q,
        cyclotomic,
        eps_det,
        per_entry_pole_orders,
        entries,
    })
}

/// Vector Hilbert series `q(t)^-1 v(t)` of a module.
#[derive(Clone, Debug)]
pub struct ModuleSeriesSpec {
    pub numerator: Vec<IntLaurentPoly>,
    pub base: MatPoly,
}

#[derive(Clone, Debug)]
pub struct ModuleGrowth {
    /// `None` when some coordinate grows exponentially.
    pub gk: Option<u32>,
    /// Multiplicity of the total series.
    pub eps: BigRational,
    pub coordinates: Vec<RatFun>,
    pub total: RatFun,
}

/// True when the reduced denominator of `r` is a product of cyclotomics.
pub fn has_finite_growth(r: &RatFun) -> bool {
    if r.is_zero() {
        return true;
    }
    let d = r.integer_denominator();
    all_roots_are_roots_of_unity(&d)
        .map(|(ok, _)| ok)
        .unwrap_or(false)
}

pub fn module_growth(spec: &ModuleSeriesSpec) -> Result<ModuleGrowth> {
    let q = &spec.base;
    let n = q.size();
    if spec.numerator.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "numerator has {} coordinates, q is {n}x{n}",
            spec.numerator.len()
        )));
    }
    check_unimodular(q)?;
    let det = q.det();
    let adj = q.adjugate();
    let mut coordinates = Vec::with_capacity(n);
    for i in 0..n {
        let mut num = IntLaurentPoly::zero();
        for (j, v) in spec.numerator.iter().enumerate() {
            num += &(adj.get(i, j) * v);
        }
        coordinates.push(RatFun::from_int(&num, &det)?);
    }
    let nonzero: Vec<&RatFun> = coordinates.iter().filter(|r| !r.is_zero()).collect();
    let finite = nonzero.iter().all(|r| has_finite_growth(r));
    let gk = finite.then(|| {
        nonzero
            .iter()
            .map(|r| r.valuation_at_one())
            .max()
            .unwrap_or(0)
            .max(0) as u32
    });
    let total = coordinates
        .iter()
        .fold(RatFun::zero(), |acc, r| acc.add(r));
    Ok(ModuleGrowth {
        gk,
        eps: total.multiplicity_eps(),
        coordinates,
        total,
    })
}

/// Total series `1^T q(t)^-1 1` with its growth data.
pub fn total_series(q: &MatPoly) -> Result<ModuleGrowth> {
    module_growth(&ModuleSeriesSpec {
        numerator: vec![IntLaurentPoly::one(); q.size()],
        base: q.clone(),
    })
}

/// `eps(a + b) = eps(a) + eps(b)` for two finite-growth series with the same
/// pole order at 1.
pub fn eps_additivity_check(a: &RatFun, b: &RatFun) -> Result<bool> {
    if !has_finite_growth(a) || !has_finite_growth(b) {
        return Err(Error::DimensionMismatch("series must have finite GK-dimension".into()));
    }
    let (va, vb) = (a.valuation_at_one(), b.valuation_at_one());
    if va != vb {
        return Err(Error::DimensionMismatch(format!("pole orders {va} and {vb} differ")));
    }
    let sum = a.add(b);
    Ok(sum.multiplicity_eps() == a.multiplicity_eps() + b.multiplicity_eps())
}

/// Nonnegative integer coefficients of `q(t)^-1` up to `degree`.
pub fn series_is_nonnegative(q: &MatPoly, degree: usize) -> Result<bool> {
    let s = crate::polyalg::invert_as_series(q, degree)?;
    Ok(s.is_nonnegative())
}
