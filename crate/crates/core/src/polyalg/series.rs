use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matpoly::MatPoly;
use crate::error::{Error, Result};

/// Truncated matrix power series `H_0 + H_1 t + ... + H_D t^D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatSeries {
    n: usize,
    coeffs: Vec<Vec<BigRational>>,
}

impl MatSeries {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Truncation degree `D`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Row-major coefficient matrix of `t^k`.
    pub fn coeff_matrix(&self, k: usize) -> &[BigRational] {
        &self.coeffs[k]
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.coeffs[k][i * self.n + j]
    }

    /// Coefficients of entry `(i, j)` for `t^0..=t^D`.
    pub fn entry_series(&self, i: usize, j: usize) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| c[i * self.n + j].clone()).collect()
    }

    /// Coefficients of the sum of all entries.
    pub fn total_series(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| c.iter().fold(BigRational::zero(), |a, b| a + b))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_integer())
    }

    /// True when every stored coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| *c >= BigRational::zero())
    }
}

#[derive(Serialize)]
struct MatSeriesJson {
    degree: usize,
    coefficients: Vec<Vec<Vec<String>>>,
}

impl Serialize for MatSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coefficients = self
            .coeffs
            .iter()
            .map(|c| {
                c.chunks(self.n)
                    .map(|row| row.iter().map(|x| x.to_string()).collect())
                    .collect()
            })
            .collect();
        MatSeriesJson {
            degree: self.degree(),
            coefficients,
        }
        .serialize(s)
    }
}

/// Inverse of a square rational matrix (row-major) by Gauss-Jordan elimination.
pub(crate) fn rational_inverse(n: usize, m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = m[i * n..(i + 1) * n].to_vec();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = BigRational::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let v = &a[col][c] * &f;
                a[r][c] = &a[r][c] - &v;
            }
        }
    }
    Some(a.into_iter().flat_map(|row| row[n..].to_vec()).collect())
}

/// Power-series inverse of `m` truncated at degree `degree`:
/// `m * result = I + O(t^(degree+1))` with exact coefficients.
pub fn invert_as_series(m: &MatPoly, degree: usize) -> Result<MatSeries> {
    if !m.is_polynomial() {
        return Err(Error::NegativeExponent);
    }
    let n = m.size();
    let top = m.max_exp().unwrap_or(0).max(0) as usize;
    let to_q = |v: Vec<BigInt>| -> Vec<BigRational> {
        v.into_iter().map(BigRational::from_integer).collect()
    };
    let parts: Vec<Vec<BigRational>> = (0..=top).map(|k| to_q(m.coeff_matrix(k as i32))).collect();
    let inv0 = rational_inverse(n, &parts[0]).ok_or(Error::SingularConstantTerm)?;

    let mut coeffs: Vec<Vec<BigRational>> = vec![inv0.clone()];
    for d in 1..=degree {
        // acc = sum_{k=1}^{min(d, top)} m_k H_{d-k}
        let mut acc = vec![BigRational::zero(); n * n];
        for (k, mk) in parts.iter().enumerate().take(top.min(d) + 1).skip(1) {
            let h = &coeffs[d - k];
            for i in 0..n {
                for l in 0..n {
                    let a = &mk[i * n + l];
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let b = &h[l * n + j];
                        if !b.is_zero() {
                            acc[i * n + j] = &acc[i * n + j] + a * b;
                        }
                    }
                }
            }
        }
        let mut next = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = &inv0[i * n + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &acc[l * n + j];
                    if !b.is_zero() {
                        next[i * n + j] = &next[i * n + j] - a * b;
                    }
                }
            }
        }
        coeffs.push(next);
    }
    Ok(MatSeries { n, coeffs })
}

/// Product `m * s` truncated at the degree of `s`.
pub fn multiply_truncated(m: &MatPoly, s: &MatSeries) -> MatSeries {
    let n = m.size();
    let degree = s.degree();
    let mut coeffs = vec![vec![BigRational::zero(); n * n]; degree + 1];
    for i in 0..n {
        for l in 0..n {
            for (e, c) in m.get(i, l).terms() {
                if e < 0 || e as usize > degree {
                    continue;
                }
                let c = BigRational::from_integer(c.clone());
                for k in 0..=degree - e as usize {
                    for j in 0..n {
                        let b = s.coeff(l, j, k);
                        if !b.is_zero() {
                            let slot = &mut coeffs[k + e as usize][i * n + j];
                            *slot = &*slot + &c * b;
                        }
                    }
                }
            }
        }
    }
    MatSeries { n, coeffs }
}

/// Kernel basis of a dense rational matrix given by rows, one vector per free column.
pub fn rational_kernel(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut a = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = BigRational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..ncols {
                    let v = &a[r][k] * &f;
                    a[i][k] = &a[i][k] - &v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}
