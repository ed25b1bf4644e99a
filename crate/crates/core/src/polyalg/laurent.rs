use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient ring of a Laurent polynomial.
pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Send
    + Sync
{
    fn is_negative_coeff(&self) -> bool;
    fn abs_coeff(&self) -> Self;
}

impl Coeff for BigInt {
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn abs_coeff(&self) -> Self {
        self.abs()
    }
}

impl Coeff for BigRational {
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn abs_coeff(&self) -> Self {
        self.abs()
    }
}

/// A Laurent polynomial in one variable `t` with finite support.
///
/// Zero coefficients are never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent<T: Coeff> {
    terms: BTreeMap<i32, T>,
}

/// Laurent polynomial with arbitrary-precision integer coefficients.
pub type IntLaurentPoly = Laurent<BigInt>;
/// Laurent polynomial with exact rational coefficients.
pub type RatLaurentPoly = Laurent<BigRational>;

impl<T: Coeff> Default for Laurent<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Coeff> Laurent<T> {
    pub fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: T, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Laurent { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, T)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    /// Polynomial with `coeffs[k]` as the coefficient of `t^k`.
    pub fn from_dense(coeffs: &[T]) -> Self {
        Self::from_terms(coeffs.iter().cloned().enumerate().map(|(k, c)| (k as i32, c)))
    }

    pub fn add_term(&mut self, exp: i32, c: T) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&exp) {
            Some(old) => old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(exp, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &T)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i32) -> T {
        self.terms.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.terms.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&T> {
        self.terms.values().next()
    }

    /// True when no negative exponent occurs.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `t -> t^-1`.
    pub fn invert_t(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (*e, x.clone() * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> T {
        self.terms.values().fold(T::zero(), |acc, c| acc + c)
    }

    /// Coefficients `c_0..=c_max` of a polynomial; `None` for negative exponents.
    pub fn to_dense(&self) -> Option<Vec<T>> {
        if !self.is_polynomial() {
            return None;
        }
        let top = match self.max_exp() {
            Some(e) => e as usize,
            None => return Some(Vec::new()),
        };
        let mut v = vec![T::zero(); top + 1];
        for (e, c) in &self.terms {
            v[*e as usize] = c.clone();
        }
        Some(v)
    }

    /// Split as `t^k * p` with `p(0) != 0`.
    pub fn split_monomial(&self) -> (i32, Self) {
        match self.min_exp() {
            Some(k) => (k, self.shift(-k)),
            None => (0, Self::zero()),
        }
    }

    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Laurent<U> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }
}

impl IntLaurentPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i32, BigInt::from(*c))),
        )
    }

    pub fn to_rational(&self) -> RatLaurentPoly {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    /// Exact quotient `self / divisor` when it exists in `Z[t, t^-1]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (ka, a) = self.split_monomial();
        let (kb, b) = divisor.split_monomial();
        let a = a.to_dense()?;
        let b = b.to_dense()?;
        let q = super::dense::int_divrem_exact(&a, &b)?;
        Some(Self::from_dense(&q).shift(ka - kb))
    }
}

impl RatLaurentPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i32, BigRational::from_integer(BigInt::from(*c)))),
        )
    }

    /// Integer polynomial obtained by clearing denominators (primitive, sign kept).
    pub fn clear_denominators(&self) -> IntLaurentPoly {
        use num_integer::Integer;
        let lcm = self
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let ints: Vec<(i32, BigInt)> = self
            .terms()
            .map(|(e, c)| (e, (c * BigRational::from_integer(lcm.clone())).to_integer()))
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        if g.is_zero() {
            return IntLaurentPoly::zero();
        }
        IntLaurentPoly::from_terms(ints.into_iter().map(|(e, c)| (e, c / &g)))
    }
}

impl<T: Coeff> Add<&Laurent<T>> for &Laurent<T> {
    type Output = Laurent<T>;
    fn add(self, rhs: &Laurent<T>) -> Laurent<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<T: Coeff> Sub<&Laurent<T>> for &Laurent<T> {
    type Output = Laurent<T>;
    fn sub(self, rhs: &Laurent<T>) -> Laurent<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<T: Coeff> Mul<&Laurent<T>> for &Laurent<T> {
    type Output = Laurent<T>;
    fn mul(self, rhs: &Laurent<T>) -> Laurent<T> {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca.clone() * cb);
            }
        }
        out
    }
}

impl<T: Coeff> Neg for &Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<T: Coeff> AddAssign<&Laurent<T>> for Laurent<T> {
    fn add_assign(&mut self, rhs: &Laurent<T>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr<Laurent<T>> for Laurent<T> {
            type Output = Laurent<T>;
            fn $m(self, rhs: Laurent<T>) -> Laurent<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Coeff> Neg for Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        -&self
    }
}

/// Renders as `c0 + c1*t + c2*t^2 - ...` in ascending exponent order.
impl<T: Coeff> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_coeff();
            let mag = c.abs_coeff();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let var = match *e {
                0 => String::new(),
                1 => "t".to_string(),
                e => format!("t^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_strips_zeros() {
        let a = IntLaurentPoly::from_i64(&[1, -1]);
        let b = IntLaurentPoly::from_i64(&[1, 1]);
        assert_eq!(&a * &b, IntLaurentPoly::from_i64(&[1, 0, -1]));
        assert_eq!(&a - &a, IntLaurentPoly::zero());
        assert_eq!((&a - &a).num_terms(), 0);
    }

    #[test]
    fn display_format() {
        let p = IntLaurentPoly::from_i64(&[1, -2, 0, 2, -1]);
        assert_eq!(p.to_string(), "1 - 2*t + 2*t^3 - t^4");
        assert_eq!(IntLaurentPoly::monomial(BigInt::from(-1), -2).to_string(), "-t^-2");
        assert_eq!(IntLaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn invert_t_of_monomial() {
        assert_eq!(
            IntLaurentPoly::t().invert_t(),
            IntLaurentPoly::monomial(BigInt::one(), -1)
        );
    }

    #[test]
    fn exact_division() {
        let p = IntLaurentPoly::from_i64(&[1, -2, 0, 2, -1]);
        let f = IntLaurentPoly::from_i64(&[1, -1]);
        let q = p.div_exact(&f).unwrap();
        assert_eq!(&q * &f, p);
        assert!(p.div_exact(&IntLaurentPoly::from_i64(&[1, -2])).is_none());
    }
}
