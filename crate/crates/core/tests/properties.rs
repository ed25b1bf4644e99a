use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use cygrowth::oracle::{graded_dims, GradedPresentation, Relation, Term};
use cygrowth::polyalg::{invert_as_series, multiply_truncated, reduce, IntLaurentPoly, MatPoly, RatFun};
use cygrowth::quiver::{Arrow, WeightedQuiver};

fn poly(coeffs: Vec<i64>) -> IntLaurentPoly {
    IntLaurentPoly::from_i64(&coeffs)
}

fn small_poly(max_len: usize) -> impl Strategy<Value = IntLaurentPoly> {
    prop::collection::vec(-3i64..=3, 1..=max_len).prop_map(poly)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = IntLaurentPoly> {
    small_poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

/// Square matrices `I + t * X(t)` with small integer entries.
fn unipotent_at_zero(max_n: usize) -> impl Strategy<Value = MatPoly> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(small_poly(3), n * n).prop_map(move |entries| {
            let mut m = MatPoly::identity(n);
            for (k, p) in entries.into_iter().enumerate() {
                let (i, j) = (k / n, k % n);
                let e = m.get(i, j) + &p.shift(1);
                m.set(i, j, e);
            }
            m
        })
    })
}

fn any_matrix(max_n: usize) -> impl Strategy<Value = MatPoly> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(small_poly(3), n * n).prop_map(move |entries| {
            let rows = entries.chunks(n).map(|r| r.to_vec()).collect();
            MatPoly::from_rows(rows)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_inverse_is_a_right_inverse(q in unipotent_at_zero(3), degree in 0usize..8) {
        let s = invert_as_series(&q, degree).unwrap();
        let prod = multiply_truncated(&q, &s);
        let n = q.size();
        for k in 0..=degree {
            for i in 0..n {
                for j in 0..n {
                    let expected = if k == 0 && i == j { BigRational::one() } else { BigRational::zero() };
                    prop_assert_eq!(prod.coeff(i, j, k), &expected);
                }
            }
        }
    }

    #[test]
    fn adjugate_times_matrix_is_determinant(q in any_matrix(3)) {
        let n = q.size();
        let det = q.det();
        let mut scalar = MatPoly::zero(n);
        for i in 0..n {
            scalar.set(i, i, det.clone());
        }
        prop_assert_eq!(q.mul(&q.adjugate()), scalar.clone());
        prop_assert_eq!(q.adjugate().mul(&q), scalar);
    }

    #[test]
    fn reduction_is_idempotent_and_preserves_value(p in small_poly(5), d in nonzero_poly(5)) {
        let r = reduce(&p, &d).unwrap();
        let again = RatFun::new(r.numerator().clone(), r.denominator().clone()).unwrap();
        prop_assert_eq!(&again, &r);
        // p * denom(r) == numer(r) * d
        let lhs = &p.to_rational() * r.denominator();
        let rhs = r.numerator() * &d.to_rational();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplicity_is_multiplicative(
        a in nonzero_poly(4), b in nonzero_poly(4), c in nonzero_poly(4), d in nonzero_poly(4),
    ) {
        let x = reduce(&a, &b).unwrap();
        let y = reduce(&c, &d).unwrap();
        prop_assert_eq!(x.mul(&y).multiplicity_eps(), x.multiplicity_eps() * y.multiplicity_eps());
        prop_assert_eq!(x.mul(&y).valuation_at_one(), x.valuation_at_one() + y.valuation_at_one());
    }
}

/// One vertex, two loops of weight one, one quadratic relation with the given
/// coefficients on `xx, xy, yx, yy`.
fn quadratic_presentation(c: [i64; 4]) -> Option<GradedPresentation> {
    let quiver = WeightedQuiver::new(1, vec![Arrow::new("x", 1, 1, 1), Arrow::new("y", 1, 1, 1)]);
    let paths = [[0, 0], [0, 1], [1, 0], [1, 1]];
    let terms: Vec<Term> = c
        .iter()
        .zip(paths)
        .filter(|(c, _)| **c != 0)
        .map(|(c, p)| Term::new(BigRational::from_integer(BigInt::from(*c)), p.to_vec()))
        .collect();
    if terms.is_empty() {
        return None;
    }
    let rel = Relation::new(&quiver, terms).ok()?;
    GradedPresentation::new(quiver, vec![rel]).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_truncation_is_monotone_and_bounded(c in prop::array::uniform4(-2i64..=2)) {
        let Some(p) = quadratic_presentation(c) else { return Ok(()) };
        let short = graded_dims(&p, 3).unwrap();
        let long = graded_dims(&p, 6).unwrap();
        for n in 0..=3 {
            prop_assert_eq!(short.get(1, 1, n), long.get(1, 1, n));
        }
        for n in 0..=6usize {
            prop_assert!(long.get(1, 1, n) <= 1u64 << n);
        }
        // a single nonzero quadratic relation removes exactly one dimension in degree 2
        prop_assert_eq!(long.get(1, 1, 2), 3);
    }
}
