//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the terminal; exits nonzero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gradkit::cliffkit::{
    clifford_homs, default_q_max, pf_bilinear_check, pfaffian_report, specialization_suite, verify_moments_and_projectors,
    CliffordHomSet, SpecializationKind,
};
use gradkit::curvkit::{bochner_report, constant_curvature, curvature_suite, r1_transform, verify_symbols};
use gradkit::linalg::{c64, ComplexMatrix};
use gradkit::report::Report;
use gradkit::repforge::{RepBuilder, Representation, MAX_TENSOR_DIM};
use gradkit::weightcalc::{
    decompose, dominant_weights, eigenvalue_bound, format_rational, weyl_dimension, DominantWeight, HalfInt, Rational,
};

const TOL: f64 = 1e-9;
const GRID_BOUND: HalfInt = HalfInt::from_int(2);
const GRID_TIME_LIMIT: Duration = Duration::from_secs(300);

type Outcome = Result<String, String>;

/// Everything built once for the grid: the representation and its
/// Clifford homomorphisms, plus the spectrum data from the split.
struct Cell {
    weight: DominantWeight,
    rep: Arc<Representation>,
    set: CliffordHomSet,
}

fn grid_weights(ns: std::ops::RangeInclusive<usize>) -> Vec<DominantWeight> {
    ns.flat_map(|n| dominant_weights(n, GRID_BOUND).expect("grid"))
        .filter(|w| weyl_dimension(w) as usize * w.n() <= MAX_TENSOR_DIM)
        .collect()
}

/// Criterion 1, which also builds the grid reused by 2, 3, 9 and 10.
fn spectra(cells: &mut Vec<Cell>) -> Outcome {
    let start = Instant::now();
    let builder = RepBuilder::new();
    let weights = grid_weights(3..=7);
    let mut worst = 0.0f64;
    let mut eigenvalues = 0usize;
    for w in &weights {
        let (trep, table, split) = builder.expand(w, GRID_BOUND).map_err(|e| format!("{w}: {e}"))?;
        // Expected multiset: each conformal weight with multiplicity Σ dim V_λ.
        let mut expected: Vec<(Rational, u64)> = Vec::new();
        for c in &table.components {
            match expected.iter_mut().find(|(m, _)| *m == c.conformal_weight) {
                Some(entry) => entry.1 += c.dimension,
                None => expected.push((c.conformal_weight, c.dimension)),
            }
        }
        expected.sort();
        let got: Vec<(Rational, u64)> = split.spectrum.iter().map(|(m, k)| (*m, *k as u64)).collect();
        if got != expected {
            return Err(format!("{w}: spectrum {got:?} differs from {expected:?}"));
        }
        // Per-eigenvalue check on a fresh dense eigendecomposition.
        let eig = trep.chat().hermitian_eigenvalues().map_err(|e| e.to_string())?;
        let mut want: Vec<f64> = Vec::with_capacity(eig.len());
        for (m, k) in &expected {
            want.extend(std::iter::repeat_n(*m.numer() as f64 / *m.denom() as f64, *k as usize));
        }
        for (a, b) in eig.iter().zip(&want) {
            worst = worst.max((a - b).abs());
        }
        if eig.len() != want.len() || worst > 1e-8 {
            return Err(format!("{w}: eigenvalue deviation {worst:.3e}"));
        }
        eigenvalues += eig.len();
        let set = clifford_homs(&trep, &split, TOL).map_err(|e| format!("{w}: {e}"))?;
        cells.push(Cell { weight: w.clone(), rep: trep.base_arc(), set });
    }
    let elapsed = start.elapsed();
    if elapsed > GRID_TIME_LIMIT {
        return Err(format!("{} weights took {:.1}s", weights.len(), elapsed.as_secs_f64()));
    }
    Ok(format!(
        "{} weights, {eigenvalues} eigenvalues, max deviation {worst:.2e} (tol 1e-8), {:.1}s",
        weights.len(),
        elapsed.as_secs_f64()
    ))
}

fn moments_and_projectors(cells: &[Cell]) -> (Outcome, Outcome) {
    let mut moments = Report::new("moments");
    let mut projectors = Report::new("projectors");
    let mut q_total = 0;
    let mut unscaled_ok = 0;
    let mut flat_misses = Vec::new();
    for cell in cells {
        let set = &cell.set;
        let coeffs = match gradkit::weightcalc::vandermonde_coefficients(set.table()) {
            Ok(c) => c,
            Err(e) => return (Err(format!("{}: {e}", cell.weight)), Err("not run".into())),
        };
        let q_max = default_q_max(set);
        q_total += q_max + 1;
        match verify_moments_and_projectors(set, q_max, &coeffs, TOL) {
            Ok((m, p)) => {
                let flat = TOL * set.tensor_dim() as f64;
                for c in m.checks.iter().filter(|c| c.identity == "moment") {
                    if c.max_residual <= flat {
                        unscaled_ok += 1;
                    } else {
                        flat_misses.push(format!("n={} {} q={}", cell.weight.n(), cell.weight, c.params["q"]));
                    }
                }
                moments.extend(m);
                projectors.extend(p);
            }
            Err(e) => return (Err(format!("{}: {e}", cell.weight)), Err("not run".into())),
        }
    }
    let summary = |r: &Report, what: String| -> Outcome {
        match r.worst() {
            None => Ok(format!("{what}, max residual {:.2e}", r.max_residual())),
            Some(c) => Err(format!("{} {:?}: {:.3e} > {:.3e}", c.identity, c.params, c.max_residual, c.tolerance)),
        }
    };
    (
        summary(
            &moments,
            format!(
                "{} weights, {q_total} moment orders up to 2N+2 at 1e-9·dim·max(1,|m|)^q; {unscaled_ok}/{q_total} also within the flat 1e-9·dim (others: {})",
                cells.len(),
                flat_misses.join(", ")
            ),
        ),
        summary(&projectors, format!("{} weights, three forms pairwise plus algebra", cells.len())),
    )
}

fn report_outcome(r: &Report, what: &str) -> Outcome {
    match r.worst() {
        None => Ok(what.to_string()),
        Some(c) => Err(format!("{} {:?}: {:.3e} > {:.3e}", c.identity, c.params, c.max_residual, c.tolerance)),
    }
}

fn spinor_specialization() -> Outcome {
    let mut fits = Vec::new();
    for n in [3, 5, 7] {
        let r = specialization_suite(n, SpecializationKind::Spinor, TOL).map_err(|e| format!("n={n}: {e}"))?;
        report_outcome(&r, "")?;
        let fit = r.find("clifford_constant").ok_or("missing clifford_constant")?;
        if fit.max_residual >= 1e-10 {
            return Err(format!("n={n}: constant 2/n fit error {:.3e}", fit.max_residual));
        }
        let exact: Vec<String> = r
            .checks
            .iter()
            .filter(|c| c.identity == "projector_coefficients_exact")
            .map(|c| format!("{}:{}", c.params["delta_coefficient"], c.params["bracket_coefficient"]))
            .collect();
        // The Dirac projector carries 1/n with bracket coefficient −1/(2n)
        // pattern; the twistor projector (n−1)/n.
        let one_over_n = format_rational(&Rational::new(1, n as i64));
        let rest = format_rational(&Rational::new(n as i64 - 1, n as i64));
        if !exact.iter().any(|e| e.starts_with(&format!("{one_over_n}:"))) || !exact.iter().any(|e| e.starts_with(&format!("{rest}:"))) {
            return Err(format!("n={n}: coefficients {exact:?}"));
        }
        fits.push(format!("n={n} fit err {:.1e} coeffs [{}]", fit.max_residual, exact.join(" ")));
    }
    Ok(fits.join("; "))
}

fn exterior_specialization() -> Outcome {
    let mut parts = Vec::new();
    for (n, k) in [(5, 1), (5, 2), (6, 1), (6, 2)] {
        let r = specialization_suite(n, SpecializationKind::Exterior(k), TOL).map_err(|e| format!("n={n} k={k}: {e}"))?;
        report_outcome(&r, "")?;
        let mut dens: Vec<i64> = r
            .checks
            .iter()
            .filter(|c| c.identity == "form_coefficients_exact")
            .map(|c| c.params["denominator"].parse().expect("integer denominator"))
            .collect();
        dens.sort();
        let (n_, k_) = (n as i64, k as i64);
        let mut want = vec![(k_ + 1) * (n_ - k_ + 1), (k_ + 1) * (n_ - 2 * k_), (n_ - 2 * k_) * (n_ - k_ + 1)];
        want.sort();
        if dens != want {
            return Err(format!("n={n} k={k}: denominators {dens:?}, expected {want:?}"));
        }
        parts.push(format!("n={n} k={k} {dens:?}"));
    }
    let hodge = specialization_suite(6, SpecializationKind::HodgeSplit, TOL).map_err(|e| e.to_string())?;
    report_outcome(&hodge, "")?;
    let ranks: Vec<&str> =
        hodge.checks.iter().filter(|c| c.identity == "hodge_projector_rank").map(|c| c.params["rank"].as_str()).collect();
    if ranks != ["10", "10"] {
        return Err(format!("Hodge ranks {ranks:?}"));
    }
    parts.push("Hodge n=6 k=2 ranks 10+10".into());
    Ok(parts.join("; "))
}

fn pfaffian() -> Outcome {
    let builder = RepBuilder::new();
    let mut weights = dominant_weights(4, HalfInt::from_twice(3)).map_err(|e| e.to_string())?;
    for s in ["1/2,1/2,1/2", "1/2,1/2,-1/2", "1,1,1", "1,1,-1"] {
        weights.push(DominantWeight::parse(6, s).map_err(|e| e.to_string())?);
    }
    let mut worst = 0.0f64;
    for w in &weights {
        let rep = builder.build(w).map_err(|e| format!("{w}: {e}"))?;
        let r = pfaffian_report(&rep, TOL).map_err(|e| format!("{w}: {e}"))?;
        report_outcome(&r, "").map_err(|e| format!("{w}: {e}"))?;
        worst = worst.max(r.find("pfaffian_relative_error").map(|c| c.max_residual).unwrap_or(f64::INFINITY));
    }
    let set = CliffordHomSet::build(&builder, &DominantWeight::parse(6, "1,1,0").unwrap(), TOL).map_err(|e| e.to_string())?;
    let bilinear = pf_bilinear_check(&set, TOL).map_err(|e| e.to_string())?;
    report_outcome(&bilinear, "")?;
    let pair = bilinear.find("pair_opposite_sign").ok_or("no exceptional pair found")?;
    Ok(format!(
        "{} weights, signs exact, max relative error {worst:.1e}; (6,Λ²) pair scalars {} and {}",
        weights.len(),
        pair.params["p_first"],
        pair.params["p_second"]
    ))
}

fn bochner() -> Outcome {
    let mut parts = Vec::new();
    for n in 3..=8 {
        let r = bochner_report(&DominantWeight::spinor(n).unwrap()).map_err(|e| e.to_string())?.checks();
        report_outcome(&r, "").map_err(|e| format!("spinor n={n}: {e}"))?;
        let lich = &r.find("lichnerowicz_scalar").ok_or("missing lichnerowicz")?.params["derived"];
        let twist = &r.find("twistor_scalar").ok_or("missing twistor")?.params["derived"];
        let want = format_rational(&Rational::new(-1, 4 * (n as i64 - 1)));
        if lich != "1/4" || *twist != want {
            return Err(format!("n={n}: D² scalar {lich}, T*T scalar {twist}"));
        }
        parts.push(format!("n={n} κ·{lich}, κ·{twist}"));
    }
    let mut forms = 0;
    for n in 3..=8 {
        for k in 1..=n / 2 {
            if 2 * k >= n {
                continue;
            }
            let r = bochner_report(&DominantWeight::fundamental_form(n, k).unwrap()).map_err(|e| e.to_string())?.checks();
            report_outcome(&r, "").map_err(|e| format!("Λ^{k} n={n}: {e}"))?;
            if r.checks.iter().filter(|c| c.identity == "form_bochner_row").count() != 3 {
                return Err(format!("Λ^{k} n={n}: missing form rows"));
            }
            forms += 1;
        }
    }
    Ok(format!("{}; {forms} form cases exact", parts.join(", ")))
}

fn bound_formula() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in 3..=8 {
        for k in 1..=n / 2 {
            let w = DominantWeight::fundamental_form(n, k).unwrap();
            for r in [Rational::from_integer(1), Rational::new(1, 3), Rational::new(7, 2)] {
                let got = eigenvalue_bound(&w, r).map_err(|e| format!("n={n} k={k}: {e}"))?.bound;
                let want = Rational::from_integer((k * (n - k + 1)) as i64) * r;
                if got != want {
                    return Err(format!("n={n} k={k} r={r}: {got} ≠ {want}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} exact equalities in {:.1}ms", start.elapsed().as_secs_f64() * 1e3))
}

fn curvature(cells: &[Cell]) -> Outcome {
    // Scalar identities at constant curvature.
    let builder = RepBuilder::new();
    let mut scalar_worst = 0.0f64;
    for n in 3..=6 {
        for k in [1.0, -0.5] {
            let r = constant_curvature(n, k);
            let kappa = r.scalar();
            let mut spinors = vec![DominantWeight::spinor(n).unwrap()];
            if n % 2 == 0 {
                let mut coords = spinors[0].coords().to_vec();
                *coords.last_mut().unwrap() = HalfInt::from_twice(-1);
                spinors.push(DominantWeight::new(n, coords).unwrap());
            }
            for s in spinors {
                let rep = builder.build(&s).map_err(|e| e.to_string())?;
                let t = r1_transform(&rep, &r).map_err(|e| e.to_string())?;
                let d = rep.dim();
                let res = t.matrix.distance(&ComplexMatrix::scalar(d, c64::new(kappa / 8.0, 0.0)));
                if res > TOL * d as f64 {
                    return Err(format!("R¹ on V_{s}: {res:.3e} from κ/8"));
                }
                scalar_worst = scalar_worst.max(res);
            }
            let vector = builder.build(&DominantWeight::vector(n).unwrap()).map_err(|e| e.to_string())?;
            let t = r1_transform(&vector, &r).map_err(|e| e.to_string())?;
            let ric = r.ricci();
            let res = t.matrix.distance(&ComplexMatrix::from_fn(n, n, |a, b| c64::new(ric[a][b], 0.0)));
            if res > TOL * n as f64 {
                return Err(format!("R¹ on Rⁿ, n={n}: {res:.3e} from Ric"));
            }
            scalar_worst = scalar_worst.max(res);
        }
    }
    // Lower bound on seeded tensors with sectional curvature ≥ 2r.
    let mut reps = 0;
    let mut slack = f64::INFINITY;
    for cell in cells.iter().filter(|c| c.weight.n() <= 6) {
        let r = curvature_suite(&cell.rep, 100, 2024, TOL).map_err(|e| format!("{}: {e}", cell.weight))?;
        report_outcome(&r, "").map_err(|e| format!("{}: {e}", cell.weight))?;
        slack = slack.min(r.find("curvature_bound_min_slack").map(|c| c.max_residual).unwrap_or(f64::NAN));
        reps += 1;
    }
    Ok(format!(
        "κ/8 and Ric max residual {scalar_worst:.1e}; bound holds on {reps} reps × 100 tensors, min slack {slack:.3}"
    ))
}

fn symbols(cells: &[Cell]) -> Outcome {
    let mut reps = 0;
    let mut worst = 0.0f64;
    for cell in cells.iter().filter(|c| c.weight.n() <= 6 && decompose(&c.weight).distinct_weights().len() >= 2) {
        let r = verify_symbols(&cell.set, 50, 99, TOL).map_err(|e| format!("{}: {e}", cell.weight))?;
        report_outcome(&r, "").map_err(|e| format!("{}: {e}", cell.weight))?;
        worst = worst.max(r.max_residual());
        reps += 1;
    }
    Ok(format!("{reps} reps × 50 covectors, max relative residual {worst:.1e}"))
}

fn guarded<T>(f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => Err(format!(
            "panicked: {}",
            p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
        )),
    }
}

fn main() -> ExitCode {
    let mut cells = Vec::new();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "conformal-weight spectra", guarded(|| spectra(&mut cells))));
    let (moments, projectors) =
        guarded(|| Ok(moments_and_projectors(&cells))).unwrap_or_else(|e| (Err(e.clone()), Err(e)));
    results.push((2, "moment identities", moments));
    results.push((3, "projector triple agreement", projectors));
    results.push((4, "spinor specialization", guarded(spinor_specialization)));
    results.push((5, "exterior specialization", guarded(exterior_specialization)));
    results.push((6, "Pfaffian", guarded(pfaffian)));
    results.push((7, "Bochner coefficients", guarded(bochner)));
    results.push((8, "bound formula", guarded(bound_formula)));
    results.push((9, "curvature", guarded(|| curvature(&cells))));
    results.push((10, "symbol ellipticity", guarded(|| symbols(&cells))));

    let mut failed = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2} ({name}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id:>2} ({name}): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
