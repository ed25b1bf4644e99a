//! Exact roots-of-unity test on determinants, cross-checked numerically.

use cygrowth::growth::{all_roots_are_roots_of_unity, cyclotomic_poly};
use cygrowth::numeric::integer_poly_roots_on_unit_circle;
use cygrowth::polyalg::IntLaurentPoly;

fn main() -> cygrowth::Result<()> {
    let samples = [
        ("(1-t^2)(1-t)^2", IntLaurentPoly::from_i64(&[1, -2, 0, 2, -1])),
        ("1 - 3t + t^2", IntLaurentPoly::from_i64(&[1, -3, 1])),
        ("Phi_12 * Phi_7", &cyclotomic_poly(12) * &cyclotomic_poly(7)),
        ("Lehmer's polynomial", IntLaurentPoly::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])),
        ("(1-t)^3 (1-2t)", IntLaurentPoly::from_i64(&[1, -5, 9, -7, 2])),
    ];
    for (name, p) in samples {
        let (exact, f) = all_roots_are_roots_of_unity(&p)?;
        let numeric = integer_poly_roots_on_unit_circle(&p, 1e-8);
        println!("{name:>22}: exact {exact:5}  numeric {numeric:5}  factorization {f}");
    }
    Ok(())
}
