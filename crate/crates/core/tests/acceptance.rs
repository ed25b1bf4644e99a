//! Acceptance run: one line per criterion, non-zero exit status if any fails.
//!
//! Built with `harness = false` so the per-criterion lines always reach the
//! test log instead of being swallowed by output capture.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cygrowth::analysis::analyze;
use cygrowth::cy_series::{
    build_q, cycle_datum, dim3_normal_criterion, hypocycloid_contains, verify_functional_equation, Verdict,
};
use cygrowth::growth::{all_roots_are_roots_of_unity, classify_algebra, cyclotomic_poly, euler_phi, total_series, GrowthClass};
use cygrowth::numeric::integer_poly_roots_on_unit_circle;
use cygrowth::oracle::{build_semipotential_relations, check_against_series, graded_dims, Semipotential, Term};
use cygrowth::polyalg::{IntLaurentPoly, MatPoly};
use cygrowth::quiver::{Arrow, CyDatum, WeightedQuiver};
use cygrowth::search::{search, SearchBounds};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lp(c: &[i64]) -> IntLaurentPoly {
    IntLaurentPoly::from_i64(c)
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn skew_group_fixture() -> Outcome {
    let m = vec![vec![1, 1], vec![1, 1]];
    let a = analyze(&WeightedQuiver::from_incidence(&m), &CyDatum::new(2, vec![2, 1], vec![2, 2]), 1e-8)
        .map_err(|e| e.to_string())?;
    let expected = MatPoly::from_rows(vec![vec![lp(&[1, -1]), lp(&[0, -1, 1])], vec![lp(&[0, -1, 1]), lp(&[1, -1])]]);
    ensure(a.q == expected, format!("q(t) differs:\n{:?}", a.q))?;
    ensure(a.growth.det_q == lp(&[1, -2, 0, 2, -1]), format!("det q = {}", a.growth.det_q))?;
    ensure(
        a.growth.cyclotomic.is_complete() && a.growth.cyclotomic.factors == vec![(1, 3), (2, 1)],
        format!("factorization {}", a.growth.cyclotomic),
    )?;
    ensure(a.growth.growth_class == GrowthClass::FiniteGK, "not finite GK")?;
    ensure(a.growth.gk_dimension == Some(2), format!("GK dimension {:?}", a.growth.gk_dimension))?;
    let total = total_series(&a.q).map_err(|e| e.to_string())?;
    ensure(total.eps == BigRational::from_integer(2.into()), format!("total eps {}", total.eps))?;
    ensure(total.gk == Some(2), format!("total GK {:?}", total.gk))?;
    ensure(a.functional_equation.holds(), "functional equation fails")?;
    Ok(format!("det q = {}, {}, GK 2, eps 2", a.growth.det_q, a.growth.cyclotomic))
}

fn weighted_two_loop_fixture() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_cygrowth"))
        .args(["--format", "json", "--degree", "10", "check"])
        .arg(fixture("weighted_plane.json"))
        .arg(fixture("weighted_plane_relations.json"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), format!("check exited with {:?}", out.status.code()))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(v["comparison"]["matches"] == true, "check does not report a match")?;
    let dims: Vec<u64> = (0..=10).map(|n| v["table"]["dims"][n][0][0].as_u64().unwrap_or(u64::MAX)).collect();
    // coefficients of 1/((1-t)(1-t^2)): floor(n/2) + 1
    let expected: Vec<u64> = (0..=10).map(|n| n / 2 + 1).collect();
    ensure(dims == expected, format!("dims {dims:?}"))?;
    for side in ["left_socle", "right_socle"] {
        ensure(v[side]["trivial"] == true, format!("{side} not trivial"))?;
    }
    Ok(format!(
        "dims {dims:?}, socles trivial through degree {}",
        v["right_socle"]["checked_up_to"]
    ))
}

fn dimension_one_cycles() -> Outcome {
    let mut shown = Vec::new();
    for n in 1..=3usize {
        let arrows = (1..=n).map(|i| Arrow::new(format!("a{i}"), i, i % n + 1, 1)).collect();
        let quiver = WeightedQuiver::new(n, arrows);
        let cy = cycle_datum(&quiver).map_err(|e| e.to_string())?;
        let model = build_q(&quiver, &cy).map_err(|e| e.to_string())?;
        let incidence: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| i64::from(j == (i + 1) % n)).collect()).collect();
        let expected = MatPoly::identity(n).sub(&MatPoly::from_int_matrix(&incidence, 1));
        ensure(model.q == expected, format!("{n}-cycle: q is not I - N"))?;
        let total = total_series(&model.q).map_err(|e| e.to_string())?;
        let rendered = total.total.display_unit_constant();
        ensure(total.gk == Some(1), format!("{n}-cycle GK {:?}", total.gk))?;
        ensure(total.eps == BigRational::from_integer(BigInt::from(n)), format!("{n}-cycle eps {}", total.eps))?;
        ensure(rendered == format!("{n}/(1 - t)"), format!("{n}-cycle total {rendered}"))?;
        shown.push(rendered);
    }
    Ok(shown.join(", "))
}

fn one_vertex_dimension_three() -> Outcome {
    let run = |a: i64, ell: i64| {
        let model = build_q(&WeightedQuiver::from_incidence(&[vec![a]]), &CyDatum::untwisted(3, 1, ell))
            .map_err(|e| e.to_string())?;
        Ok::<_, String>((model.q.det(), dim3_normal_criterion(&model)))
    };
    let (det, r) = run(3, 3)?;
    ensure(det == lp(&[1, -3, 3, -1]), format!("a=3, ell=3: det {det}"))?;
    ensure(r.verdict == Verdict::Pass, format!("a=3, ell=3: {}", r.verdict))?;
    ensure(r.exact_class == Some(GrowthClass::FiniteGK), "a=3, ell=3 not finite GK")?;
    ensure((r.spectral_radius - 3.0).abs() < 1e-8 && r.expected_rho == Some(3.0), "a=3: rho")?;

    let (det, r) = run(2, 4)?;
    ensure(det == lp(&[1, -2, 0, 2, -1]), format!("a=2, ell=4: det {det}"))?;
    ensure(r.verdict == Verdict::Pass, format!("a=2, ell=4: {}", r.verdict))?;
    ensure(r.exact_class == Some(GrowthClass::FiniteGK), "a=2, ell=4 not finite GK")?;
    ensure((r.spectral_radius - 2.0).abs() < 1e-8 && r.expected_rho == Some(2.0), "a=2: rho")?;

    for a in 1..=4 {
        let (_, r) = run(a, 5)?;
        ensure(r.verdict == Verdict::Fail, format!("a={a}, ell=5: {}", r.verdict))?;
    }
    let two_vertex = build_q(&WeightedQuiver::from_incidence(&[vec![1, 1], vec![1, 1]]), &CyDatum::untwisted(3, 2, 5))
        .map_err(|e| e.to_string())?;
    ensure(dim3_normal_criterion(&two_vertex).verdict == Verdict::Fail, "two-vertex ell=5 datum")?;
    Ok("ell 3: Pass rho 3, ell 4: Pass rho 2, ell 5: Fail".into())
}

fn negative_fixture() -> Outcome {
    let m = vec![vec![0, 3], vec![3, 0]];
    let model = build_q(&WeightedQuiver::from_incidence(&m), &CyDatum::untwisted(3, 2, 3)).map_err(|e| e.to_string())?;
    let growth = classify_algebra(&model.q).map_err(|e| e.to_string())?;
    ensure(growth.growth_class == GrowthClass::Exponential, "not exponential")?;
    let r = dim3_normal_criterion(&model);
    ensure(r.verdict == Verdict::Fail, format!("verdict {}", r.verdict))?;
    let mut eig: Vec<f64> = r.eigenvalues.iter().map(|z| z.re).collect();
    eig.sort_by(f64::total_cmp);
    ensure(
        eig.len() == 2 && (eig[0] + 3.0).abs() < 1e-8 && (eig[1] - 3.0).abs() < 1e-8,
        format!("eigenvalues {eig:?}"),
    )?;
    ensure(r.eigenvalues.iter().all(|z| z.im.abs() < 1e-8), "complex eigenvalues")?;
    let outside: Vec<_> = r.eigen_pairs.iter().filter(|p| !p.inside).collect();
    ensure(
        outside.len() == 1 && (outside[0].delta.re + 3.0).abs() < 1e-8,
        "expected exactly the eigenvalue -3 outside",
    )?;
    Ok(format!("Exponential, det q = {}, eigenvalue -3 outside", growth.det_q))
}

fn real_sections_and_rotation() -> Outcome {
    let one = Complex64::new(1.0, 0.0);
    let step = 0.05;
    for (k, lo, hi) in [(3u32, -1.0, 3.0), (4, -2.0, 2.0)] {
        let inside: Vec<f64> = (-100..=100)
            .map(|i| f64::from(i) * step)
            .filter(|&a| hypocycloid_contains(Complex64::new(a, 0.0), k, one))
            .collect();
        let (first, last) = (inside[0], inside[inside.len() - 1]);
        ensure(
            (first - lo).abs() <= step + 1e-12 && (last - hi).abs() <= step + 1e-12,
            format!("k={k}: section [{first}, {last}]"),
        )?;
        // the section is an interval: no gaps on the grid
        ensure(inside.len() == ((last - first) / step).round() as usize + 1, format!("k={k}: gaps"))?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for k in [3u32, 4] {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / f64::from(k));
        for _ in 0..200 {
            let a = Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            let base = hypocycloid_contains(a, k, one);
            let mut z = a;
            for _ in 1..k {
                z *= w;
                ensure(hypocycloid_contains(z, k, one) == base, format!("k={k}: rotation changes membership of {a}"))?;
            }
        }
    }
    Ok("[-1, 3] and [-2, 2]; 200 points invariant for k = 3, 4".into())
}

fn random_cyclotomic_product(rng: &mut StdRng) -> IntLaurentPoly {
    let target = rng.gen_range(1..=12u64);
    let mut p = IntLaurentPoly::one();
    let mut degree = 0;
    while degree < target {
        let n = rng.gen_range(1..=40u64);
        let phi = euler_phi(n);
        if degree + phi > 12 {
            continue;
        }
        p = &p * &cyclotomic_poly(n);
        degree += phi;
    }
    if rng.gen_bool(0.5) {
        p = p.scale(&BigInt::from(-1));
    }
    p
}

fn roots_of_unity_classifier() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let twice = lp(&[1, -2]);
    for i in 0..500 {
        let p = random_cyclotomic_product(&mut rng);
        let (exact, f) = all_roots_are_roots_of_unity(&p).map_err(|e| e.to_string())?;
        ensure(exact, format!("instance {i}: {p} not recognised ({f})"))?;
        ensure(integer_poly_roots_on_unit_circle(&p, 1e-8), format!("instance {i}: numeric oracle rejects {p}"))?;
        let bad = &p * &twice;
        let (exact, _) = all_roots_are_roots_of_unity(&bad).map_err(|e| e.to_string())?;
        ensure(!exact, format!("instance {i}: {bad} accepted"))?;
        ensure(!integer_poly_roots_on_unit_circle(&bad, 1e-8), format!("instance {i}: numeric oracle accepts {bad}"))?;
    }
    Ok("500 products accepted, 500 multiplied by (1-2t) rejected, oracle agrees".into())
}

fn random_datum(rng: &mut StdRng) -> (WeightedQuiver, CyDatum) {
    let d = rng.gen_range(1..=3u8);
    let n = rng.gen_range(1..=3usize);
    let mut arrows = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for _ in 0..rng.gen_range(0..=2) {
                let w = rng.gen_range(1..=2u32);
                arrows.push(Arrow::new(format!("x{}", arrows.len()), i, j, w));
            }
        }
    }
    let quiver = WeightedQuiver::new(n, arrows);
    let mut mu: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        mu.swap(i, rng.gen_range(0..=i));
    }
    let ell = if rng.gen_bool(0.7) {
        vec![rng.gen_range(1..=5i64); n]
    } else {
        (0..n).map(|_| rng.gen_range(1..=5i64)).collect()
    };
    (quiver, CyDatum::new(d, mu, ell))
}

fn functional_equation_corpus() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut accepted = [0usize; 4];
    let mut twisted = [0usize; 4];
    for _ in 0..100_000 {
        let (quiver, cy) = random_datum(&mut rng);
        let d = cy.dimension as usize;
        let Ok(model) = build_q(&quiver, &cy) else { continue };
        let check = verify_functional_equation(&model);
        ensure(check.holds(), format!("functional equation fails for {quiver:?} with {cy:?}"))?;
        accepted[d] += 1;
        if cy.mu.iter().enumerate().any(|(i, &m)| m != i + 1) {
            twisted[d] += 1;
        }
    }
    // dimension one: disjoint unions of weighted cycles
    for _ in 0..200 {
        let mut quiver = WeightedQuiver::new(0, Vec::new());
        for _ in 0..rng.gen_range(1..=3) {
            let len = rng.gen_range(1..=3usize);
            let arrows = (1..=len)
                .map(|i| Arrow::new(format!("c{i}"), i, i % len + 1, rng.gen_range(1..=3)))
                .collect();
            quiver = quiver.disjoint_union(&WeightedQuiver::new(len, arrows));
        }
        let cy = cycle_datum(&quiver).map_err(|e| e.to_string())?;
        let model = build_q(&quiver, &cy).map_err(|e| e.to_string())?;
        ensure(verify_functional_equation(&model).holds(), "functional equation fails on a cycle union")?;
        accepted[1] += 1;
    }
    for d in 2..=3 {
        ensure(accepted[d] >= 100 && twisted[d] >= 10, format!("thin corpus in dimension {d}: {accepted:?} {twisted:?}"))?;
    }
    Ok(format!(
        "models per dimension 1/2/3: {}/{}/{} ({} / {} twisted)",
        accepted[1], accepted[2], accepted[3], twisted[2], twisted[3]
    ))
}

fn search_regression() -> Outcome {
    let bounds = SearchBounds::new(3, 3, 3, 3, 4);
    let hits = search(&bounds).map_err(|e| e.to_string())?;
    let again = search(&bounds).map_err(|e| e.to_string())?;
    ensure(hits == again, "search output is not deterministic")?;
    let markov = vec![vec![0, 3, 0], vec![0, 0, 3], vec![3, 0, 0]];
    let found = hits.iter().any(|h| h.is_quiver(&markov) && h.ell == 3);
    ensure(found, "cyclic Markov quiver missing")?;
    let swap = vec![vec![0, 3], vec![3, 0]];
    let offending: Vec<String> = hits
        .iter()
        .filter(|h| h.is_quiver(&swap))
        .map(|h| format!("mu {:?}, ell {}, det q = {}", h.mu, h.ell, h.det_q))
        .collect();
    ensure(
        offending.is_empty(),
        format!("{} hits total, Markov quiver present, but [[0,3],[3,0]] present: {}", hits.len(), offending.join("; ")),
    )?;
    Ok(format!("{} hits, Markov quiver present", hits.len()))
}

fn semipotential_oracle() -> Outcome {
    let quiver = WeightedQuiver::new(1, ["x", "y", "z"].iter().map(|n| Arrow::new(*n, 1, 1, 1)).collect());
    let cy = CyDatum::untwisted(3, 1, 3);
    let term = |c: i64, p: &[usize]| Term::new(BigRational::from_integer(c.into()), p.to_vec());
    let omega = vec![
        term(1, &[0, 1, 2]),
        term(1, &[1, 2, 0]),
        term(1, &[2, 0, 1]),
        term(-1, &[0, 2, 1]),
        term(-1, &[2, 1, 0]),
        term(-1, &[1, 0, 2]),
    ];
    let sp = Semipotential::from_potential(&quiver, &omega).map_err(|e| e.to_string())?;
    let rel = build_semipotential_relations(&quiver, &cy, &sp).map_err(|e| e.to_string())?;
    let rows = graded_dims(&rel.rows, 6).map_err(|e| e.to_string())?;
    let cols = graded_dims(&rel.cols, 6).map_err(|e| e.to_string())?;
    let dims: Vec<u64> = (0..=6).map(|n| rows.get(1, 1, n)).collect();
    let expected: Vec<u64> = (0..=6u64).map(|n| (n + 1) * (n + 2) / 2).collect();
    ensure(dims == expected, format!("dims {dims:?}"))?;
    ensure(rows == cols, "row and column ideals differ")?;
    let model = build_q(&quiver, &cy).map_err(|e| e.to_string())?;
    ensure(model.q.get(0, 0) == &lp(&[1, -3, 3, -1]), "q is not 1 - 3t + 3t^2 - t^3")?;
    ensure(check_against_series(&rows, &model.q).map_err(|e| e.to_string())?.matches, "series mismatch")?;
    Ok(format!("dims {dims:?}, row/column agree"))
}

fn main() {
    let criteria: Vec<(u32, &str, Duration, fn() -> Outcome)> = vec![
        (1, "skew group fixture", Duration::from_secs(1), skew_group_fixture),
        (2, "weighted two-loop fixture", Duration::from_secs(10), weighted_two_loop_fixture),
        (3, "dimension-1 cycles", Duration::from_secs(1), dimension_one_cycles),
        (4, "dimension-3 one-vertex cases", Duration::from_secs(1), one_vertex_dimension_three),
        (5, "negative two-vertex fixture", Duration::from_secs(1), negative_fixture),
        (6, "real sections and rotation invariance", Duration::from_secs(5), real_sections_and_rotation),
        (7, "roots-of-unity classifier", Duration::from_secs(30), roots_of_unity_classifier),
        (8, "functional equation corpus", Duration::from_secs(10), functional_equation_corpus),
        (9, "search regression", Duration::from_secs(300), search_regression),
        (10, "semipotential oracle", Duration::from_secs(60), semipotential_oracle),
    ];
    let mut failed = Vec::new();
    for (n, name, budget, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                println!("criterion {n:>2} FAIL  {name} ({elapsed:.2?}): {why}");
                failed.push(n);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
