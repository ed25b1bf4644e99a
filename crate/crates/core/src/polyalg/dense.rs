//! Dense ascending-coefficient helpers for polynomial division and gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Exact integer quotient `a / b`, or `None` when `b` does not divide `a` in `Z[t]`.
pub(crate) fn int_divrem_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rem: Vec<BigInt> = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let lead = b.last()?.clone();
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() < b.len() {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = rem[k + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(&lead);
        if !r.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &q * bi;
        }
        quot[k] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

/// Quotient and remainder over the rationals.
pub(crate) fn rat_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let lead = b.last().expect("division by zero polynomial").clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let q = top / &lead;
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] = &rem[k + i] - &q * bi;
        }
        quot[k] = q;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// Monic gcd over the rationals; the gcd of two zeros is zero.
pub(crate) fn rat_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = rat_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c = &*c / &lead;
        }
    }
    x
}

pub(crate) fn rat_eval_one(a: &[BigRational]) -> BigRational {
    a.iter().fold(BigRational::zero(), |acc, c| acc + c)
}

/// Divide out `(t - 1)` as often as possible; returns the count and the cofactor.
pub(crate) fn strip_root_one(a: &[BigRational]) -> (u32, Vec<BigRational>) {
    let mut cur = a.to_vec();
    trim(&mut cur);
    let mut count = 0;
    let t_minus_one = vec![-BigRational::one(), BigRational::one()];
    while !cur.is_empty() && rat_eval_one(&cur).is_zero() {
        let (q, r) = rat_divrem(&cur, &t_minus_one);
        debug_assert!(r.is_empty());
        cur = q;
        count += 1;
    }
    (count, cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|c| BigRational::from_integer((*c).into())).collect()
    }

    #[test]
    fn gcd_is_monic() {
        // (1 - t)^2 (1 + t) and (1 - t)(1 + t)
        let g = rat_gcd(&q(&[1, -1, -1, 1]), &q(&[1, 0, -1]));
        assert_eq!(g, q(&[-1, 0, 1]));
    }

    #[test]
    fn strip_one() {
        let (k, rest) = strip_root_one(&q(&[1, -1, -1, 1]));
        assert_eq!(k, 2);
        assert_eq!(rest, q(&[1, 1]));
    }
}
