//! End-to-end acceptance battery: eleven checks spanning the displayed
//! matrices, the moment system lemmas, the power identities, and the
//! geometric curvature laws. Each check prints exactly one pass or fail
//! line; the process exits nonzero when any check fails or overruns its
//! time budget.

use std::time::{Duration, Instant};

use rand::Rng;

use kacflow::exact::sample::{seeded_rng, DEFAULT_SEED};
use kacflow::exact::{binomial, det_laplace_generic, rat, rat_int, MultiPoly, Rational};
use kacflow::geometry::{
    horospherical_suite, product_curvatures, riccati_residual, trace_identity_check,
    HorosphericalConfig, PhiSpec, SpaceFormFactor, CENTRAL_DIFF_STEP,
};
use kacflow::jacobi::{
    coeff_derivative, expand_d, parallel_state, recurrence_check, ExpansionMode, ShapeMatrix,
    DEFAULT_SYMBOLIC_CAP,
};
use kacflow::kac::{
    build_kac_second, chessboard_check, e1_eigen_coordinates, km_binomial_check,
    predicted_spectrum, q_power_check, table5_comparison,
};
use kacflow::linsys::{
    build_bundle, degree_structure, generalized_eigvec_check, norm_identity_check,
    solve_x0_from_tau, vandermonde_generalized, verify_cramer, verify_independence_family,
    verify_rank, verify_singular, LemmaReport, ReportStatus,
};

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

struct Criterion {
    number: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Result<(), String>,
}

fn main() {
    let criteria = [
        Criterion {
            number: 1,
            name: "displayed kac matrices",
            budget: Duration::from_secs(1),
            run: displayed_kac_matrices,
        },
        Criterion {
            number: 2,
            name: "displayed flat moment matrices",
            budget: Duration::from_secs(10),
            run: displayed_flat_moment_matrices,
        },
        Criterion {
            number: 3,
            name: "mixed moment zero patterns",
            budget: Duration::from_secs(30),
            run: mixed_moment_zero_patterns,
        },
        Criterion {
            number: 4,
            name: "published coefficient tables",
            budget: Duration::from_secs(5),
            run: published_coefficient_tables,
        },
        Criterion {
            number: 5,
            name: "kac spectrum and first eigenvector",
            budget: Duration::from_secs(30),
            run: kac_spectrum_and_first_eigenvector,
        },
        Criterion {
            number: 6,
            name: "coefficient recurrence",
            budget: Duration::from_secs(120),
            run: coefficient_recurrence,
        },
        Criterion {
            number: 7,
            name: "moment system singularity and rank",
            budget: Duration::from_secs(120),
            run: moment_system_singularity_and_rank,
        },
        Criterion {
            number: 8,
            name: "power row independence",
            budget: Duration::from_secs(120),
            run: power_row_independence,
        },
        Criterion {
            number: 9,
            name: "degree structure and coefficient recovery",
            budget: Duration::from_secs(120),
            run: degree_structure_and_recovery,
        },
        Criterion {
            number: 10,
            name: "power and block identities",
            budget: Duration::from_secs(60),
            run: power_and_block_identities,
        },
        Criterion {
            number: 11,
            name: "geometric curvature identities",
            budget: Duration::from_secs(60),
            run: geometric_curvature_identities,
        },
    ];

    let mut failures = 0;
    for criterion in &criteria {
        let start = Instant::now();
        let mut outcome = (criterion.run)();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > criterion.budget {
            outcome = Err(format!(
                "ran {:.2}s, budget {}s",
                elapsed.as_secs_f64(),
                criterion.budget.as_secs()
            ));
        }
        match outcome {
            Ok(()) => println!(
                "criterion {:2} ({}): PASS [{:.2}s]",
                criterion.number,
                criterion.name,
                elapsed.as_secs_f64()
            ),
            Err(message) => {
                failures += 1;
                println!(
                    "criterion {:2} ({}): FAIL [{:.2}s] {}",
                    criterion.number,
                    criterion.name,
                    elapsed.as_secs_f64(),
                    message
                );
            }
        }
    }
    if failures > 0 {
        println!("{failures} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}

fn expect_verified(report: &LemmaReport) -> Result<(), String> {
    if report.status == ReportStatus::Verified {
        Ok(())
    } else {
        Err(format!(
            "{} came back {} with witness {:?}",
            report.lemma_id, report.status, report.witness
        ))
    }
}

fn av(i: usize, j: usize) -> MultiPoly {
    let (row, col) = if i <= j { (i, j) } else { (j, i) };
    MultiPoly::var(&format!("a{row}{col}"))
}

fn principal_minor(skip: usize) -> MultiPoly {
    let kept: Vec<usize> = (1..=3).filter(|&k| k != skip).collect();
    let (p, q) = (kept[0], kept[1]);
    av(p, p).mul(&av(q, q)).sub(&av(p, q).mul(&av(p, q)))
}

fn det3() -> MultiPoly {
    det_laplace_generic(3, &|i, j| av(i + 1, j + 1))
}

fn displayed_kac_matrices() -> Result<(), String> {
    let x = MultiPoly::var("x");
    let y = MultiPoly::var("y");
    let cases: [(usize, usize, &str); 3] = [
        (2, 2, include_str!("goldens/kac_2_2.txt")),
        (2, 3, include_str!("goldens/kac_2_3.txt")),
        (3, 2, include_str!("goldens/kac_3_2.txt")),
    ];
    for (n1, n2, golden) in cases {
        let k = build_kac_second(n1, n2, &x, &y).map_err(|e| e.to_string())?;
        ensure!(
            k.render() == golden.trim_end(),
            "matrix {n1} x {n2} deviates from the published display"
        );
    }
    Ok(())
}

fn displayed_flat_moment_matrices() -> Result<(), String> {
    let zero = MultiPoly::zero();
    let tau = MultiPoly::var("tau");
    let mut rng = seeded_rng(DEFAULT_SEED);
    let cases: [(usize, usize, &str); 4] = [
        (2, 2, include_str!("goldens/moment_2_2.txt")),
        (3, 2, include_str!("goldens/moment_3_2.txt")),
        (2, 3, include_str!("goldens/moment_2_3.txt")),
        (3, 3, include_str!("goldens/moment_3_3.txt")),
    ];
    for (n1, n2, golden) in cases {
        let a = ShapeMatrix::random_symmetric(n1, n2, &mut rng).map_err(|e| e.to_string())?;
        let bundle =
            build_bundle(&a, &zero, &tau, ExpansionMode::Flat).map_err(|e| e.to_string())?;
        ensure!(
            bundle.mbar.render() == golden.trim_end(),
            "moment matrix {n1} x {n2} deviates from the published display"
        );
    }
    Ok(())
}

const PATTERN_2_2: [&str; 7] = [
    "* 0 0 2 0 2 2 0",
    "0 * * 0 * 0 0 4",
    "* 0 0 * 0 * * 0",
    "0 * * 0 * 0 0 *",
    "* 0 0 * 0 * * 0",
    "0 * * 0 * 0 0 *",
    "* 0 0 * 0 * * 0",
];

const PATTERN_2_3: [&str; 11] = [
    "* 0 2 0 2 0 0 2 0 2 0 0",
    "0 * 0 * 0 6 * 0 6 0 6 0",
    "* 0 * 0 * 0 0 * 0 * 0 24",
    "0 * 0 * 0 * * 0 * 0 * 0",
    "* 0 * 0 * 0 0 * 0 * 0 *",
    "0 * 0 * 0 * * 0 * 0 * 0",
    "* 0 * 0 * 0 0 * 0 * 0 *",
    "0 * 0 * 0 * * 0 * 0 * 0",
    "* 0 * 0 * 0 0 * 0 * 0 *",
    "0 * 0 * 0 * * 0 * 0 * 0",
    "* 0 * 0 * 0 0 * 0 * 0 *",
];

// The published 2 x 2 display closes its second row with 4, but that row
// is the first row of the third companion power, so the constant is three
// times the 2 that closes the first row; the 2 x 3 display agrees with
// the tripled value. The computed 6 is pinned as the correct entry.
const DISPLAY_DEVIATIONS_2_2: [(usize, usize, i64); 1] = [(1, 7, 6)];

fn mixed_moment_zero_patterns() -> Result<(), String> {
    let t1 = MultiPoly::var("tau1");
    let t2 = MultiPoly::var("tau2");
    let mut rng = seeded_rng(DEFAULT_SEED);
    let cases: [(usize, usize, &[&str], &[(usize, usize, i64)]); 2] = [
        (2, 2, &PATTERN_2_2, &DISPLAY_DEVIATIONS_2_2),
        (2, 3, &PATTERN_2_3, &[]),
    ];
    for (n1, n2, pattern, deviations) in cases {
        let a = ShapeMatrix::random_symmetric(n1, n2, &mut rng).map_err(|e| e.to_string())?;
        let bundle =
            build_bundle(&a, &t1, &t2, ExpansionMode::Mixed).map_err(|e| e.to_string())?;
        ensure!(
            bundle.mbar.rows() == pattern.len(),
            "moment matrix {n1} x {n2} has {} rows, expected {}",
            bundle.mbar.rows(),
            pattern.len()
        );
        for (i, row) in pattern.iter().enumerate() {
            let cells: Vec<&str> = row.split_whitespace().collect();
            ensure!(
                bundle.mbar.cols() == cells.len(),
                "moment matrix {n1} x {n2} has {} columns, expected {}",
                bundle.mbar.cols(),
                cells.len()
            );
            for (j, cell) in cells.iter().enumerate() {
                let entry = bundle.mbar.at(i, j);
                match *cell {
                    "0" => ensure!(
                        entry.is_zero(),
                        "entry ({i}, {j}) of {n1} x {n2} should vanish, got {}",
                        entry.render()
                    ),
                    "*" => {
                        ensure!(
                            !entry.is_zero(),
                            "entry ({i}, {j}) of {n1} x {n2} should be nonzero"
                        );
                        ensure!(
                            entry.is_homogeneous(),
                            "entry ({i}, {j}) of {n1} x {n2} is not homogeneous: {}",
                            entry.render()
                        );
                    }
                    literal => {
                        let displayed: i64 = literal
                            .parse()
                            .map_err(|_| format!("bad pattern literal {literal}"))?;
                        let pinned = deviations
                            .iter()
                            .find(|&&(row, col, _)| (row, col) == (i, j));
                        let value = pinned.map_or(displayed, |&(_, _, actual)| actual);
                        ensure!(
                            entry == &MultiPoly::from_int(value),
                            "entry ({i}, {j}) of {n1} x {n2} should be {value}, got {}",
                            entry.render()
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

fn published_coefficient_tables() -> Result<(), String> {
    let t1 = MultiPoly::var("tau1");
    let t2 = MultiPoly::var("tau2");
    let a = ShapeMatrix::symbolic(2, 2).map_err(|e| e.to_string())?;
    let d11 = principal_minor(1);
    let d22 = principal_minor(2);
    let d33 = principal_minor(3);
    let det = det3();
    let trace_neg = av(1, 1).add(&av(2, 2)).add(&av(3, 3)).neg();

    let p0 = expand_d(&a, &t1, &t2, DEFAULT_SYMBOLIC_CAP).map_err(|e| e.to_string())?;
    let p1 = coeff_derivative(&p0, &t1, &t2).map_err(|e| e.to_string())?;
    let mixed_cells: [(&MultiPoly, MultiPoly, &str); 16] = [
        (p0.alpha(0, 0), MultiPoly::one(), "alpha[0,0] order 0"),
        (p0.alpha(0, 1), av(3, 3).neg(), "alpha[0,1] order 0"),
        (p0.alpha(1, 0), av(2, 2).neg(), "alpha[1,0] order 0"),
        (p0.alpha(1, 1), d11.clone(), "alpha[1,1] order 0"),
        (p0.beta(0, 0), av(1, 1).neg(), "beta[0,0] order 0"),
        (p0.beta(0, 1), d22.clone(), "beta[0,1] order 0"),
        (p0.beta(1, 0), d33.clone(), "beta[1,0] order 0"),
        (p0.beta(1, 1), det.neg(), "beta[1,1] order 0"),
        (p1.alpha(0, 0), trace_neg.clone(), "alpha[0,0] order 1"),
        (p1.alpha(0, 1), t2.add(&d22).add(&d11), "alpha[0,1] order 1"),
        (p1.alpha(1, 0), t1.add(&d33).add(&d11), "alpha[1,0] order 1"),
        (
            p1.alpha(1, 1),
            av(3, 3)
                .mul(&t1)
                .add(&av(2, 2).mul(&t2))
                .add(&det)
                .neg(),
            "alpha[1,1] order 1",
        ),
        (p1.beta(0, 0), d22.add(&d33), "beta[0,0] order 1"),
        (
            p1.beta(0, 1),
            av(1, 1).mul(&t2).add(&det).neg(),
            "beta[0,1] order 1",
        ),
        (
            p1.beta(1, 0),
            av(1, 1).mul(&t1).add(&det).neg(),
            "beta[1,0] order 1",
        ),
        (
            p1.beta(1, 1),
            t1.mul(&d22).add(&t2.mul(&d33)),
            "beta[1,1] order 1",
        ),
    ];
    for (got, want, label) in &mixed_cells {
        ensure!(
            *got == want,
            "mixed cell {label} deviates from the published table"
        );
    }

    let zero = MultiPoly::zero();
    let tau = MultiPoly::var("tau");
    let q0 = expand_d(&a, &zero, &tau, DEFAULT_SYMBOLIC_CAP).map_err(|e| e.to_string())?;
    let q1 = coeff_derivative(&q0, &zero, &tau).map_err(|e| e.to_string())?;
    let two = rat_int(2);
    let flat_cells: [(&MultiPoly, MultiPoly, &str); 12] = [
        (q0.alpha(0, 0), MultiPoly::one(), "alpha[0,0] order 0"),
        (q0.alpha(0, 1), av(3, 3).neg(), "alpha[0,1] order 0"),
        (
            q0.alpha(1, 0),
            av(1, 1).add(&av(2, 2)).neg(),
            "alpha[1,0] order 0",
        ),
        (q0.alpha(1, 1), d11.add(&d22), "alpha[1,1] order 0"),
        (q0.alpha(2, 0), d33.clone(), "alpha[2,0] order 0"),
        (q0.alpha(2, 1), det.neg(), "alpha[2,1] order 0"),
        (q1.alpha(0, 0), trace_neg, "alpha[0,0] order 1"),
        (q1.alpha(0, 1), tau.add(&d11).add(&d22), "alpha[0,1] order 1"),
        (
            q1.alpha(1, 0),
            d33.scale(&two).add(&d11).add(&d22),
            "alpha[1,0] order 1",
        ),
        (
            q1.alpha(1, 1),
            tau.mul(&av(1, 1).add(&av(2, 2)))
                .add(&det.scale(&two))
                .neg(),
            "alpha[1,1] order 1",
        ),
        (q1.alpha(2, 0), det.neg(), "alpha[2,0] order 1"),
        (q1.alpha(2, 1), tau.mul(&d33), "alpha[2,1] order 1"),
    ];
    for (got, want, label) in &flat_cells {
        ensure!(
            *got == want,
            "flat cell {label} deviates from the published table"
        );
    }
    Ok(())
}

fn kac_spectrum_and_first_eigenvector() -> Result<(), String> {
    let sx = rat_int(2);
    let sy = rat_int(3);
    for (n1, n2) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
        let report = predicted_spectrum(n1, n2, &sx, &sy).map_err(|e| e.to_string())?;
        ensure!(
            report.char_poly_matches,
            "characteristic polynomial of {n1} x {n2} is not the predicted eigenvalue product"
        );
        ensure!(report.simple, "spectrum of {n1} x {n2} is not simple");
        let expected_rank = n1 * n2 - (n1 * n2) % 2;
        ensure!(
            report.parity_expected_rank == expected_rank,
            "parity rank of {n1} x {n2} should be {expected_rank}, got {}",
            report.parity_expected_rank
        );
        ensure!(
            report.computed_rank == expected_rank,
            "rank of {n1} x {n2} should be {expected_rank}, got {}",
            report.computed_rank
        );
        let coords = e1_eigen_coordinates(n1, n2, &sx, &sy).map_err(|e| e.to_string())?;
        let scale = rat(1, 1i64 << (n1 + n2 - 2));
        for u in 0..n1 {
            for v in 0..n2 {
                let want: Rational = binomial((n1 - 1) as u64, u as u64)
                    * binomial((n2 - 1) as u64, v as u64)
                    * &scale;
                ensure!(
                    coords[u * n2 + v] == want,
                    "coordinate ({u}, {v}) of {n1} x {n2} deviates from the binomial law"
                );
            }
        }
    }
    Ok(())
}

fn coefficient_recurrence() -> Result<(), String> {
    let t1 = MultiPoly::var("tau1");
    let t2 = MultiPoly::var("tau2");
    let zero = MultiPoly::zero();
    let tau = MultiPoly::var("tau");
    for (n1, n2) in [(2usize, 2usize), (2, 3), (3, 2)] {
        let a = ShapeMatrix::symbolic(n1, n2).map_err(|e| e.to_string())?;
        let check =
            recurrence_check(&a, &t1, &t2, 3, DEFAULT_SYMBOLIC_CAP).map_err(|e| e.to_string())?;
        ensure!(
            check.pass,
            "mixed recurrence fails for {n1} x {n2} at {:?}",
            check.failure
        );
    }
    for (n1, n2) in [(2usize, 2usize), (2, 3)] {
        let a = ShapeMatrix::symbolic(n1, n2).map_err(|e| e.to_string())?;
        let check =
            recurrence_check(&a, &zero, &tau, 3, DEFAULT_SYMBOLIC_CAP).map_err(|e| e.to_string())?;
        ensure!(
            check.pass,
            "flat recurrence fails for {n1} x {n2} at {:?}",
            check.failure
        );
    }
    let mut rng = seeded_rng(DEFAULT_SEED);
    let a = ShapeMatrix::random_symmetric(3, 3, &mut rng).map_err(|e| e.to_string())?;
    let check =
        recurrence_check(&a, &t1, &t2, 6, DEFAULT_SYMBOLIC_CAP).map_err(|e| e.to_string())?;
    ensure!(
        check.pass,
        "sampled recurrence fails for 3 x 3 at {:?}",
        check.failure
    );
    Ok(())
}

fn moment_system_singularity_and_rank() -> Result<(), String> {
    let t1 = MultiPoly::var("tau1");
    let t2 = MultiPoly::var("tau2");
    let zero = MultiPoly::zero();
    let tau = MultiPoly::var("tau");
    let mut rng = seeded_rng(DEFAULT_SEED);

    for (n1, n2) in [(2usize, 2usize), (2, 3), (3, 2)] {
        let a = ShapeMatrix::random_symmetric(n1, n2, &mut rng).map_err(|e| e.to_string())?;
        let bundle =
            build_bundle(&a, &t1, &t2, ExpansionMode::Mixed).map_err(|e| e.to_string())?;
        expect_verified(&verify_singular(&bundle).map_err(|e| e.to_string())?)?;
        expect_verified(&verify_rank(&bundle).map_err(|e| e.to_string())?)?;
    }
    for (n1, n2) in [(2usize, 2usize), (3, 2)] {
        let a = ShapeMatrix::random_symmetric(n1, n2, &mut rng).map_err(|e| e.to_string())?;
        let bundle =
            build_bundle(&a, &zero, &tau, ExpansionMode::Flat).map_err(|e| e.to_string())?;
        expect_verified(&verify_singular(&bundle).map_err(|e| e.to_string())?)?;
        expect_verified(&verify_rank(&bundle).map_err(|e| e.to_string())?)?;
    }

    let symbolic = ShapeMatrix::symbolic(2, 2).map_err(|e| e.to_string())?;
    expect_verified(
        &verify_cramer(&symbolic, &t1, &t2, ExpansionMode::Mixed).map_err(|e| e.to_string())?,
    )?;
    expect_verified(
        &verify_cramer(&symbolic, &zero, &tau, ExpansionMode::Flat).map_err(|e| e.to_string())?,
    )?;
    let sampled = ShapeMatrix::random_symmetric(2, 3, &mut rng).map_err(|e| e.to_string())?;
    expect_verified(
        &verify_cramer(&sampled, &t1, &t2, ExpansionMode::Mixed).map_err(|e| e.to_string())?,
    )?;
    Ok(())
}

fn power_row_independence() -> Result<(), String> {
    let t1 = MultiPoly::var("tau1");
    let t2 = MultiPoly::var("tau2");
    let zero = MultiPoly::zero();
    let tau = MultiPoly::var("tau");
    for s in [2usize, 5] {
        expect_verified(
            &verify_independence_family(2, 2, &t1, &t2, ExpansionMode::Mixed, s)
                .map_err(|e| e.to_string())?,
        )?;
        expect_verified(
            &verify_independence_family(2, 2, &zero, &tau, ExpansionMode::Flat, s)
                .map_err(|e| e.to_string())?,
        )?;
    }
    for s in [15usize, 20] {
        expect_verified(
            &verify_independence_family(2, 3, &zero, &tau, ExpansionMode::Flat, s)
                .map_err(|e| e.to_string())?,
        )?;
    }
    for (n1, n2) in [(2usize, 2usize), (2, 3), (3, 2)] {
        let nodes: Vec<Rational> = (0..n2)
            .map(|v| rat_int(3 * (n2 as i64 - 1 - 2 * v as i64)))
            .collect();
        let check = vandermonde_generalized(&nodes, n1).map_err(|e| e.to_string())?;
        ensure!(
            check.nonsingular,
            "generalized Vandermonde matrix is singular for {n1} x {n2}"
        );
    }
    Ok(())
}

fn degree_structure_and_recovery() -> Result<(), String> {
    let t1 = MultiPoly::var("tau1");
    let t2 = MultiPoly::var("tau2");
    let zero = MultiPoly::zero();
    let tau = MultiPoly::var("tau");
    let mut rng = seeded_rng(DEFAULT_SEED);

    let a22 = ShapeMatrix::random_symmetric(2, 2, &mut rng).map_err(|e| e.to_string())?;
    let mixed = build_bundle(&a22, &t1, &t2, ExpansionMode::Mixed).map_err(|e| e.to_string())?;
    expect_verified(&degree_structure(&mixed, None).map_err(|e| e.to_string())?)?;

    let flat22 = build_bundle(&a22, &zero, &tau, ExpansionMode::Flat).map_err(|e| e.to_string())?;
    expect_verified(&degree_structure(&flat22, None).map_err(|e| e.to_string())?)?;

    let a23 = ShapeMatrix::random_symmetric(2, 3, &mut rng).map_err(|e| e.to_string())?;
    let flat23 = build_bundle(&a23, &zero, &tau, ExpansionMode::Flat).map_err(|e| e.to_string())?;
    expect_verified(&degree_structure(&flat23, Some(15)).map_err(|e| e.to_string())?)?;

    expect_verified(
        &solve_x0_from_tau(&a22, &t1, &t2, ExpansionMode::Mixed).map_err(|e| e.to_string())?,
    )?;
    expect_verified(
        &solve_x0_from_tau(&a22, &zero, &tau, ExpansionMode::Flat).map_err(|e| e.to_string())?,
    )?;
    expect_verified(
        &solve_x0_from_tau(&a23, &zero, &tau, ExpansionMode::Flat).map_err(|e| e.to_string())?,
    )?;
    Ok(())
}

fn power_and_block_identities() -> Result<(), String> {
    let x = MultiPoly::var("x");
    let y = MultiPoly::var("y");
    for n in 2usize..=5 {
        for m in 1..=8 {
            ensure!(
                chessboard_check(n, &y, m).map_err(|e| e.to_string())?,
                "chessboard law fails for n = {n}, m = {m}"
            );
        }
    }
    for (n1, n2) in [(2usize, 2usize), (2, 3), (3, 2)] {
        for m in 1..=4 {
            ensure!(
                km_binomial_check(n1, n2, &x, &y, m).map_err(|e| e.to_string())?,
                "binomial law fails for {n1} x {n2}, m = {m}"
            );
        }
    }
    for (n1, n2) in [(2usize, 2usize), (2, 3)] {
        for m in 1..=6 {
            ensure!(
                q_power_check(n1, n2, &x, &y, m).map_err(|e| e.to_string())?,
                "block power law fails for {n1} x {n2}, m = {m}"
            );
        }
    }
    expect_verified(&generalized_eigvec_check(2, 2, &rat_int(9)).map_err(|e| e.to_string())?)?;
    expect_verified(&generalized_eigvec_check(2, 3, &rat_int(9)).map_err(|e| e.to_string())?)?;

    let t1 = MultiPoly::var("tau1");
    let t2 = MultiPoly::var("tau2");
    for (n1, n2) in [(2usize, 2usize), (3, 2)] {
        let a = ShapeMatrix::symbolic_zero_first(n1, n2).map_err(|e| e.to_string())?;
        expect_verified(&norm_identity_check(&a, &t1, &t2).map_err(|e| e.to_string())?)?;
    }

    let cells = table5_comparison(2, &t1, &t2).map_err(|e| e.to_string())?;
    ensure!(
        cells.len() == 20,
        "block table should have 20 cells, found {}",
        cells.len()
    );
    let known_deviations: [(u32, usize); 8] = [
        (2, 2),
        (3, 1),
        (3, 2),
        (3, 3),
        (4, 1),
        (4, 2),
        (4, 3),
        (4, 4),
    ];
    for cell in &cells {
        if known_deviations.contains(&(cell.m, cell.l)) {
            ensure!(
                !cell.matches,
                "block table cell ({}, {}) unexpectedly agrees with the direct power",
                cell.m,
                cell.l
            );
        } else {
            ensure!(
                cell.matches,
                "block table cell ({}, {}) deviates from the direct power",
                cell.m,
                cell.l
            );
        }
    }
    Ok(())
}

fn geometric_curvature_identities() -> Result<(), String> {
    let mut rng = seeded_rng(DEFAULT_SEED);
    for (n1, n2) in [(2usize, 2usize), (2, 3), (3, 2)] {
        let a = ShapeMatrix::random_symmetric(n1, n2, &mut rng).map_err(|e| e.to_string())?;
        for r in [0.05f64, 0.1, 0.2, 0.3] {
            let state = parallel_state(&a, 4.0, 9.0, r).map_err(|e| e.to_string())?;
            let residual = (state.h_r + state.d_prime_r / state.d_r).abs();
            ensure!(
                residual < 1e-8,
                "mean curvature residual {residual:e} at r = {r} for {n1} x {n2}"
            );
        }
    }

    let identity = PhiSpec::linear(1.0);
    let bi = HorosphericalConfig::bi(3, 3, -1.0, -1.0, 1.0).map_err(|e| e.to_string())?;
    for s in bi.grid() {
        let state = product_curvatures(&bi.f1, &bi.f2, &identity, s).map_err(|e| e.to_string())?;
        ensure!(
            state.theta.abs() < 1e-15,
            "angle function {:e} at s = {s} under the identity profile",
            state.theta
        );
        ensure!(
            state.h.abs() < 1e-12,
            "bi-horospherical mean curvature {:e} at s = {s}",
            state.h
        );
    }

    // Base curvatures are kept dyadic so the flow quotients evaluate
    // exactly and the scans can honestly meet the 1e-12 constancy bound.
    let configs = [
        HorosphericalConfig::flat(2, 2, -1.0, 1.0),
        HorosphericalConfig::flat(3, 2, -4.0, 0.5),
        HorosphericalConfig::bi(2, 2, -1.0, -1.0, 1.0),
        HorosphericalConfig::bi(3, 3, -0.25, -0.25, 1.5),
        HorosphericalConfig::bi(2, 3, -1.0, -4.0, 1.5),
    ];
    for config in configs {
        let config = config.map_err(|e| e.to_string())?;
        let report = horospherical_suite(&config).map_err(|e| e.to_string())?;
        ensure!(
            report.is_horospherical,
            "configuration was not recognized as horospherical"
        );
        ensure!(report.constant, "scan of a horospherical product drifts");
        ensure!(
            report.theta_deviation < 1e-12,
            "angle deviation {:e}",
            report.theta_deviation
        );
        ensure!(
            report.curvature_deviation < 1e-12,
            "curvature deviation {:e}",
            report.curvature_deviation
        );
        ensure!(
            report.h_deviation < 1e-12,
            "mean curvature deviation {:e}",
            report.h_deviation
        );
    }

    for _ in 0..6 {
        let eps1: f64 = rng.random_range(-2.0..0.0);
        let eps2: f64 = rng.random_range(-2.0..0.0);
        let bases1: Vec<f64> = (0..2).map(|_| rng.random_range(-0.5..0.5)).collect();
        let bases2: Vec<f64> = (0..3).map(|_| rng.random_range(-0.5..0.5)).collect();
        let f1 = SpaceFormFactor::new(eps1, 3, bases1).map_err(|e| e.to_string())?;
        let f2 = SpaceFormFactor::new(eps2, 4, bases2).map_err(|e| e.to_string())?;
        let slope: f64 = rng.random_range(0.5..2.0);
        let s: f64 = rng.random_range(0.1..0.4);
        let (r1, r2) = trace_identity_check(&f1, &f2, &PhiSpec::linear(slope), s, CENTRAL_DIFF_STEP)
            .map_err(|e| e.to_string())?;
        ensure!(
            r1 < 1e-6 && r2 < 1e-6,
            "trace residuals {r1:e}, {r2:e} at slope {slope}, s = {s}"
        );
    }

    for kappa0 in [0.25f64, 0.5, 1.0, 2.0] {
        for epsilon in [-1.0f64, 0.0, 1.0] {
            for t in [0.05f64, 0.15, 0.3] {
                let residual = riccati_residual(kappa0, epsilon, t, CENTRAL_DIFF_STEP)
                    .map_err(|e| e.to_string())?;
                ensure!(
                    residual < 1e-6,
                    "Riccati residual {residual:e} for kappa0 = {kappa0}, epsilon = {epsilon}, t = {t}"
                );
            }
        }
    }
    Ok(())
}
