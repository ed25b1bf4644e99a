use std::fmt;

use num_bigint::BigInt;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::laurent::IntLaurentPoly;
use super::ratfun::RatFun;
use crate::error::{Error, Result};

/// Square matrix whose entries are integer Laurent polynomials in `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatPoly {
    n: usize,
    entries: Vec<IntLaurentPoly>,
}

impl MatPoly {
    pub fn zero(n: usize) -> Self {
        MatPoly {
            n,
            entries: vec![IntLaurentPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = IntLaurentPoly::one();
        }
        m
    }

    /// Build from row-major entries.
    pub fn from_rows(rows: Vec<Vec<IntLaurentPoly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        MatPoly {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// `m * t^exp` for an integer matrix `m`.
    pub fn from_int_matrix(m: &[Vec<i64>], exp: i32) -> Self {
        Self::from_rows(
            m.iter()
                .map(|row| {
                    row.iter()
                        .map(|c| IntLaurentPoly::monomial(BigInt::from(*c), exp))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &IntLaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: IntLaurentPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[IntLaurentPoly]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        out
    }

    /// Entrywise `t -> t^-1`.
    pub fn substitute_inverse_t(&self) -> Self {
        MatPoly {
            n: self.n,
            entries: self.entries.iter().map(|p| p.invert_t()).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        MatPoly {
            n: self.n,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        MatPoly {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        MatPoly {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * n + j] += &(a * b);
                }
            }
        }
        out
    }

    pub fn is_polynomial(&self) -> bool {
        self.entries.iter().all(|p| p.is_polynomial())
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.entries.iter().filter_map(|p| p.max_exp()).max()
    }

    /// Coefficient matrix of `t^k`, row-major.
    pub fn coeff_matrix(&self, k: i32) -> Vec<BigInt> {
        self.entries.iter().map(|p| p.coeff(k)).collect()
    }

    /// Entrywise value at `t = 1`.
    pub fn eval_one(&self) -> Vec<BigInt> {
        self.entries.iter().map(|p| p.eval_one()).collect()
    }

    /// First entry where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        assert_eq!(self.n, other.n);
        (0..self.n * self.n)
            .find(|&k| self.entries[k] != other.entries[k])
            .map(|k| (k / self.n, k % self.n))
    }

    fn minor(&self, row: usize, col: usize) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                entries.push(self.entries[i * n + j].clone());
            }
        }
        MatPoly { n: n - 1, entries }
    }

    /// Determinant. Cofactor expansion up to 3x3, fraction-free Bareiss
    /// elimination with exact Laurent division above that.
    pub fn det(&self) -> IntLaurentPoly {
        let n = self.n;
        let e = |i: usize, j: usize| &self.entries[i * n + j];
        match n {
            0 => IntLaurentPoly::one(),
            1 => e(0, 0).clone(),
            2 => &(e(0, 0) * e(1, 1)) - &(e(0, 1) * e(1, 0)),
            3 => {
                let c0 = &(e(1, 1) * e(2, 2)) - &(e(1, 2) * e(2, 1));
                let c1 = &(e(1, 0) * e(2, 2)) - &(e(1, 2) * e(2, 0));
                let c2 = &(e(1, 0) * e(2, 1)) - &(e(1, 1) * e(2, 0));
                &(&(e(0, 0) * &c0) - &(e(0, 1) * &c1)) + &(e(0, 2) * &c2)
            }
            _ => self.det_bareiss(),
        }
    }

    fn det_bareiss(&self) -> IntLaurentPoly {
        let n = self.n;
        let mut a: Vec<Vec<IntLaurentPoly>> = self.rows().map(|r| r.to_vec()).collect();
        let mut prev = IntLaurentPoly::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return IntLaurentPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss step divides exactly");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Classical adjoint: `m * adjugate(m) = det(m) * I`.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 0 {
            return Self::zero(0);
        }
        if n == 1 {
            return Self::identity(1);
        }
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                out.entries[j * n + i] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        out
    }

    /// Entries of `m^-1 = adjugate(m) / det(m)` in lowest terms, row-major.
    pub fn entrywise_rational_inverse(&self) -> Result<Vec<RatFun>> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let adj = self.adjugate();
        adj.entries
            .iter()
            .map(|c| RatFun::from_int(c, &det))
            .collect()
    }

    /// Determinant of the constant coefficient matrix.
    pub fn constant_term_det(&self) -> BigInt {
        let c = self.coeff_matrix(0);
        let m = MatPoly {
            n: self.n,
            entries: c.into_iter().map(IntLaurentPoly::constant).collect(),
        };
        m.det().coeff(0)
    }
}

impl fmt::Display for MatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, p) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Row-major nested arrays of polynomial strings.
impl Serialize for MatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.n))?;
        for row in self.rows() {
            let r: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            seq.serialize_element(&r)?;
        }
        seq.end()
    }
}

/// Integer-matrix helpers shared by the spectral code.
pub fn int_matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn int_transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}
