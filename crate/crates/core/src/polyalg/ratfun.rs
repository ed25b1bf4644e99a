use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dense;
use super::laurent::{IntLaurentPoly, RatLaurentPoly};
use crate::error::{Error, Result};

/// A rational function `numerator / denominator` in lowest terms.
///
/// Canonical form: the denominator is a monic polynomial with nonzero constant
/// term, the numerator is a Laurent polynomial, and they share no factor other
/// than units. Two equal functions have identical representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFun {
    numerator: RatLaurentPoly,
    denominator: RatLaurentPoly,
}

impl RatFun {
    /// Reduce `numer / denom` to canonical form.
    pub fn new(numer: RatLaurentPoly, denom: RatLaurentPoly) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if numer.is_zero() {
            return Ok(Self::zero());
        }
        let (kd, d) = denom.split_monomial();
        let (kn, n) = numer.split_monomial();
        let d = d.to_dense().expect("split gives a polynomial");
        let n = n.to_dense().expect("split gives a polynomial");
        let g = dense::rat_gcd(&n, &d);
        let (mut n, _) = dense::rat_divrem(&n, &g);
        let (mut d, _) = dense::rat_divrem(&d, &g);
        let lead = d.last().expect("nonzero denominator").clone();
        for c in n.iter_mut().chain(d.iter_mut()) {
            *c = &*c / &lead;
        }
        Ok(RatFun {
            numerator: RatLaurentPoly::from_dense(&n).shift(kn - kd),
            denominator: RatLaurentPoly::from_dense(&d),
        })
    }

    pub fn from_int(numer: &IntLaurentPoly, denom: &IntLaurentPoly) -> Result<Self> {
        Self::new(numer.to_rational(), denom.to_rational())
    }

    pub fn from_poly(p: RatLaurentPoly) -> Self {
        RatFun {
            numerator: p,
            denominator: RatLaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(RatLaurentPoly::zero())
    }

    pub fn numerator(&self) -> &RatLaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &RatLaurentPoly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// True when the denominator is 1, i.e. the series terminates.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.denominator.is_one()
    }

    /// Denominator scaled to a primitive integer polynomial.
    pub fn integer_denominator(&self) -> IntLaurentPoly {
        self.denominator.clear_denominators()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        let d = &self.denominator * &other.denominator;
        Self::new(n, d).expect("product of nonzero denominators")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.numerator * &other.numerator,
            &self.denominator * &other.denominator,
        )
        .expect("product of nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        RatFun {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    /// Order of the pole at `t = 1`; negative values give the order of a zero.
    /// The zero function has no defined order and reports 0.
    pub fn valuation_at_one(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let (_, n) = self.numerator.split_monomial();
        let n = n.to_dense().expect("polynomial");
        let d = self.denominator.to_dense().expect("polynomial");
        let (zn, _) = dense::strip_root_one(&n);
        let (zd, _) = dense::strip_root_one(&d);
        zd as i64 - zn as i64
    }

    /// Leading coefficient of the expansion in powers of `(1 - t)`: the value
    /// of `(1 - t)^m * r` at `t = 1` where `m` is the pole order. `eps(0) = 0`.
    pub fn multiplicity_eps(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let (_, n) = self.numerator.split_monomial();
        let n = n.to_dense().expect("polynomial");
        let d = self.denominator.to_dense().expect("polynomial");
        let (zn, n_rest) = dense::strip_root_one(&n);
        let (zd, d_rest) = dense::strip_root_one(&d);
        let m = zd as i64 - zn as i64;
        // r = (t-1)^-m * n_rest/d_rest and (1-t)^m (t-1)^-m = (-1)^m
        let value = dense::rat_eval_one(&n_rest) / dense::rat_eval_one(&d_rest);
        if m.rem_euclid(2) == 1 {
            -value
        } else {
            value
        }
    }

    /// Power-series coefficients `c_0..=c_degree`. Negative powers in the
    /// numerator are dropped from the output.
    pub fn series(&self, degree: usize) -> Vec<BigRational> {
        let d = self.denominator.to_dense().expect("polynomial");
        let inv0 = BigRational::one() / &d[0];
        let mut out: Vec<BigRational> = Vec::with_capacity(degree + 1);
        for k in 0..=degree {
            let mut acc = self.numerator.coeff(k as i32);
            for (j, dj) in d.iter().enumerate().skip(1) {
                if j > k {
                    break;
                }
                acc = acc - dj * &out[k - j];
            }
            out.push(acc * &inv0);
        }
        out
    }
}

impl RatFun {
    /// Render with the denominator scaled to constant term 1, the usual
    /// way of writing a Hilbert series, e.g. `2/(1 - t)`.
    pub fn display_unit_constant(&self) -> String {
        if self.denominator.is_one() || self.is_zero() {
            return self.to_string();
        }
        let c = BigRational::one() / self.denominator.coeff(0);
        let n = self.numerator.scale(&c);
        let d = self.denominator.scale(&c);
        let wrap = |p: &RatLaurentPoly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        format!("{}/{}", wrap(&n), wrap(&d))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatLaurentPoly {
        RatLaurentPoly::from_i64(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reduce_cancels_common_factor() {
        // (t - t^3) / ((1-t)^2 (1+t)) = t/(1-t)
        let den = &(&p(&[1, -1]) * &p(&[1, -1])) * &p(&[1, 1]);
        let r = RatFun::new(p(&[0, 1, 0, -1]), den).unwrap();
        assert_eq!(r, RatFun::new(p(&[0, 1]), p(&[1, -1])).unwrap());
        assert_eq!(r.denominator(), &p(&[-1, 1]));
    }

    #[test]
    fn reduce_already_reduced() {
        let r = RatFun::new(p(&[1]), p(&[1, -1])).unwrap();
        assert_eq!(r.numerator(), &p(&[-1]));
        assert_eq!(r.valuation_at_one(), 1);
    }

    #[test]
    fn unit_constant_display() {
        let r = RatFun::new(p(&[2]), p(&[1, -1])).unwrap();
        assert_eq!(r.display_unit_constant(), "2/(1 - t)");
        let r = RatFun::new(p(&[1, 1]), p(&[1, -2, 1])).unwrap();
        assert_eq!(r.display_unit_constant(), "(1 + t)/(1 - 2*t + t^2)");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFun::new(p(&[1]), p(&[])), Err(Error::ZeroDenominator));
    }

    #[test]
    fn valuations() {
        let r = RatFun::new(p(&[1]), &p(&[1, -1]) * &p(&[1, 0, -1])).unwrap();
        assert_eq!(r.valuation_at_one(), 2);
        assert_eq!(RatFun::new(p(&[1]), p(&[1, 1])).unwrap().valuation_at_one(), 0);
        assert_eq!(RatFun::from_poly(p(&[1, -2, 1])).valuation_at_one(), -2);
    }

    #[test]
    fn eps_values() {
        let two = RatFun::new(p(&[2]), p(&[1, -2, 1])).unwrap();
        assert_eq!(two.multiplicity_eps(), q(2, 1));
        let n = RatFun::new(p(&[5]), p(&[1, -1])).unwrap();
        assert_eq!(n.multiplicity_eps(), q(5, 1));
        assert_eq!(RatFun::zero().multiplicity_eps(), q(0, 1));
        let half = RatFun::new(p(&[1]), &p(&[1, -1]) * &p(&[1, 0, -1])).unwrap();
        assert_eq!(half.multiplicity_eps(), q(1, 2));
        // a zero of order 3: (1-t)^3 (1+t) -> eps 2
        let z = RatFun::from_poly(p(&[1, -2, 0, 2, -1]));
        assert_eq!(z.multiplicity_eps(), q(2, 1));
    }

    #[test]
    fn series_of_geometric() {
        let r = RatFun::new(p(&[1]), p(&[1, -2])).unwrap();
        let s: Vec<BigRational> = [1, 2, 4, 8].iter().map(|c| q(*c, 1)).collect();
        assert_eq!(r.series(3), s);
    }
}
