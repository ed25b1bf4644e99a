//! Floating-point root and eigenvalue helpers.
//!
//! Used for spectral reports, hypocycloid membership and as an independent
//! cross-check of the exact cyclotomic classifier. Never authoritative for
//! integer inputs.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::polyalg::IntLaurentPoly;

/// Default tolerance for unit-circle tests.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Roots closer than this are treated as one multiple root and replaced by
/// their centroid. Companion eigenvalues of a triple root scatter by ~1e-5.
pub const CLUSTER_RADIUS: f64 = 5e-4;

/// Roots of `c[0] + c[1] x + ... + c[d] x^d` as eigenvalues of the companion
/// matrix (complex Schur form). Zero roots from vanishing low coefficients are
/// included.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let mut roots = Vec::new();
    let lead_zero = c.iter().take_while(|x| x.norm() == 0.0).count();
    roots.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), lead_zero));
    let c = &c[lead_zero..];
    if c.len() <= 1 {
        return roots;
    }
    let d = c.len() - 1;
    let lead = c[d];
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -c[i] / lead;
    }
    // Companion matrices of x^d - 1 and friends are unitary permutations on
    // which shifted QR can stall, so the iteration count is bounded.
    match m.clone().try_schur(f64::EPSILON, 2000) {
        Some(schur) => roots.extend(schur.unpack().1.diagonal().iter().copied()),
        None => roots.extend(aberth_roots(c)),
    }
    roots
}

/// Simultaneous Aberth-Ehrlich iteration for the roots of a polynomial with
/// nonzero constant and leading coefficients.
fn aberth_roots(c: &[Complex64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let eval = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    // start on a circle of the geometric-mean root radius, off the real axis
    let radius = (c[0].norm() / c[d].norm()).powf(1.0 / d as f64);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Group roots within `radius` of each other (single linkage); returns each
/// cluster's centroid and size.
pub fn cluster_roots(roots: &[Complex64], radius: f64) -> Vec<(Complex64, usize)> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= radius * roots[i].norm().max(1.0) {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += roots[i];
                g.2 += 1;
            }
            None => groups.push((r, roots[i], 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, s, k)| (s / k as f64, k))
        .collect()
}

/// Largest `| |r| - 1 |` over clustered roots; 0 for constants.
pub fn max_unit_circle_deviation(coeffs: &[Complex64]) -> f64 {
    cluster_roots(&poly_roots(coeffs), CLUSTER_RADIUS)
        .iter()
        .map(|(c, _)| (c.norm() - 1.0).abs())
        .fold(0.0, f64::max)
}

pub fn all_roots_on_unit_circle(coeffs: &[Complex64], tol: f64) -> bool {
    max_unit_circle_deviation(coeffs) <= tol
}

/// Numeric verdict for an integer polynomial: every root lies on the unit
/// circle within `tol`. Repeated factors are removed exactly first so the
/// companion matrix only sees simple roots; `t`-power factors are ignored.
pub fn integer_poly_roots_on_unit_circle(p: &IntLaurentPoly, tol: f64) -> bool {
    let (_, p) = p.split_monomial();
    let Some(dense) = p.to_dense() else {
        return false;
    };
    if dense.is_empty() {
        return false;
    }
    let sf = squarefree_part(&dense);
    let coeffs: Vec<Complex64> = sf.iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect();
    poly_roots(&coeffs)
        .iter()
        .all(|r| (r.norm() - 1.0).abs() <= tol)
}

fn squarefree_part(p: &[BigInt]) -> Vec<BigRational> {
    let q: Vec<BigRational> = p.iter().cloned().map(BigRational::from_integer).collect();
    let dq: Vec<BigRational> = q
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
        .collect();
    if dq.iter().all(|c| c.is_zero()) {
        return q;
    }
    let g = rat_gcd(&q, &dq);
    let (mut s, _) = rat_divrem(&q, &g);
    // scale to unit leading coefficient for conditioning
    if let Some(lead) = s.last().cloned() {
        for c in &mut s {
            *c = &*c / &lead;
        }
    }
    s
}

use crate::polyalg::{rat_divrem_pub as rat_divrem, rat_gcd_pub as rat_gcd};

/// Eigenvalues of an integer matrix.
pub fn int_matrix_eigenvalues(m: &[Vec<i64>]) -> Vec<Complex64> {
    let n = m.len();
    if n == 0 {
        return Vec::new();
    }
    let a = DMatrix::<f64>::from_fn(n, n, |i, j| m[i][j] as f64);
    a.complex_eigenvalues().iter().copied().collect()
}

pub fn spectral_radius(m: &[Vec<i64>]) -> f64 {
    int_matrix_eigenvalues(m)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}
