//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::TAU;
use std::fs;
use std::time::Instant;

use num_complex::Complex64;
use qudit_steering::coarse::{coarse_correlation, OutcomeDistribution};
use qudit_steering::state::{hermitian_eigenvalues, DensityMatrix, IndexConvention, Tolerance};
use qudit_steering::steering::{
    boundary_bisection, sweep_gisin, sweep_werner, Classification, Family, SteeringFunctional,
};
use qudit_steering::xstate::{
    gisin, gisin_x_max, werner, xstate_psd, xstate_to_density, GisinParam, WernerParam, XState,
};
use qudit_steering::{correlation_tensor, correlation_value, grid_max_oracle, max_correlation};
use qudit_steering::{xstate_zero_pattern, CorrelationTensor};
use qudit_steering_cli::{cmd_sweep, csv, FamilyArg, FunctionalArg, SweepParams};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const GISIN_COEFF: f64 = 0.391_918_358_845_308_5; // 4√6/25

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { id, pass, detail }
}

fn a02() -> Complex64 {
    Complex64::new(0.2, 0.0)
}

fn b02() -> Complex64 {
    Complex64::new(0.96_f64.sqrt(), 0.0)
}

fn random_density(rng: &mut StdRng) -> DensityMatrix {
    let g: [[Complex64; 4]; 4] = std::array::from_fn(|_| {
        std::array::from_fn(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    });
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = (0..4).map(|k| g[i][k] * g[j][k].conj()).sum();
        }
    }
    let tr: f64 = (0..4).map(|i| m[i][i].re).sum();
    DensityMatrix::new(m.map(|row| row.map(|z| z / tr)), IndexConvention::SpinProjection).unwrap()
}

fn random_valid_xstate(rng: &mut StdRng) -> XState {
    let w: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
    let s: f64 = w.iter().sum();
    let d = w.map(|x| x / s);
    let anti = Complex64::from_polar(rng.gen_range(0.0..1.0) * (d[0] * d[3]).sqrt(), rng.gen_range(0.0..TAU));
    let inner = Complex64::from_polar(rng.gen_range(0.0..1.0) * (d[1] * d[2]).sqrt(), rng.gen_range(0.0..TAU));
    XState::new(d, anti, inner, Tolerance::DEFAULT).unwrap()
}

fn c1_werner_boundary() -> Outcome {
    let start = Instant::now();
    let b = boundary_bisection(Family::Werner, SteeringFunctional::SumSquared, 0.4, 0.6, Tolerance::DEFAULT);
    let elapsed = start.elapsed().as_secs_f64();
    match b {
        Ok(b) => outcome(
            "C1 Werner boundary",
            (b - 0.5).abs() <= 1e-9 && elapsed < 1.0,
            format!("boundary {b:.12} (|err| {:.1e}), {elapsed:.4} s", (b - 0.5).abs()),
        ),
        Err(e) => outcome("C1 Werner boundary", false, e.to_string()),
    }
}

fn c2_werner_domains() -> Outcome {
    let n = 1000;
    let recs = sweep_werner(-1.0 / 3.0, 1.0, n, SteeringFunctional::SumSquared).unwrap();
    let step = (4.0 / 3.0) / (n - 1) as f64;
    let entangled_exact = recs.iter().all(|r| r.entangled == (r.param > 1.0 / 3.0));
    let fulfilled_band_exact = recs.iter().all(|r| {
        (r.classification() == Classification::EntangledFulfilled) == (r.param > 1.0 / 3.0 && r.param < 0.5)
    });
    let first_entangled = recs.iter().find(|r| r.entangled).map(|r| r.param).unwrap_or(f64::NAN);
    let last_fulfilled_band = recs
        .iter()
        .filter(|r| r.classification() == Classification::EntangledFulfilled)
        .map(|r| r.param)
        .fold(f64::NAN, f64::max);
    let first_violating = recs
        .iter()
        .find(|r| r.classification() == Classification::EntangledViolating)
        .map(|r| r.param)
        .unwrap_or(f64::NAN);
    let edges_ok = (first_entangled - 1.0 / 3.0).abs() <= step
        && (last_fulfilled_band - 0.5).abs() <= step
        && (first_violating - 0.5).abs() <= step;
    outcome(
        "C2 Werner domains",
        entangled_exact && fulfilled_band_exact && edges_ok,
        format!(
            "entangled from p={first_entangled:.6}, EntangledFulfilled up to p={last_fulfilled_band:.6}, \
             violating from p={first_violating:.6} (grid step {step:.2e})"
        ),
    )
}

/// Bisection on a boolean verdict; `None` when the verdict does not differ at
/// the bracket ends.
fn bisect_verdict(mut lo: f64, mut hi: f64, verdict: impl Fn(f64) -> bool) -> Option<f64> {
    let v_lo = verdict(lo);
    if v_lo == verdict(hi) {
        return None;
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if verdict(mid) == v_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn gisin_min_eigenvalue(x: f64, partial_transpose: bool) -> f64 {
    let rho = xstate_to_density(&gisin(GisinParam::new(x, a02(), b02()).unwrap()));
    let rho = if partial_transpose { rho.partial_transpose() } else { rho };
    hermitian_eigenvalues(&rho).unwrap()[0]
}

fn c3_gisin_bound() -> Vec<Outcome> {
    let x_max = gisin_x_max(a02(), b02()).unwrap();
    let eps = Tolerance::DEFAULT.eps();
    let (lo, hi) = (0.5, 0.95);

    let literal = bisect_verdict(lo, hi, |x| gisin_min_eigenvalue(x, false) >= -eps);
    let literal_detail = match literal {
        Some(x) => format!("verdict flips at {x:.9} (|x - x_max| {:.1e})", (x - x_max).abs()),
        None => format!(
            "no flip on [{lo}, {hi}]: min eigenvalue of the Gisin matrix is {:.1e} at x={lo} and {:.1e} at x={hi} \
             (spectrum {{0, x, (1-x)/2, (1-x)/2}}); x_max bounds the partial transpose, see next line",
            gisin_min_eigenvalue(lo, false),
            gisin_min_eigenvalue(hi, false)
        ),
    };

    let pt = bisect_verdict(lo, hi, |x| gisin_min_eigenvalue(x, true) >= -eps);
    let pt_detail = match pt {
        Some(x) => format!("partial-transpose verdict flips at {x:.9} (|x - x_max| {:.1e})", (x - x_max).abs()),
        None => "partial-transpose verdict does not flip".into(),
    };

    vec![
        outcome(
            "C3a Gisin x_max value",
            (x_max - 0.71843).abs() <= 5e-4,
            format!("x_max(a=0.2) = {x_max:.8}"),
        ),
        outcome(
            "C3b Gisin PSD flip at x_max (eigensolver on the Gisin matrix)",
            literal.is_some_and(|x| (x - x_max).abs() <= 1e-6),
            literal_detail,
        ),
        outcome(
            "C3c Gisin partial-transpose PSD flip at x_max (supplementary)",
            pt.is_some_and(|x| (x - x_max).abs() <= 1e-6),
            pt_detail,
        ),
    ]
}

fn c4_gisin_kinks() -> Outcome {
    let recs = sweep_gisin(a02(), 10_000, SteeringFunctional::SumSquared).unwrap();
    let slopes: Vec<f64> = recs
        .windows(2)
        .map(|w| (w[1].lhs - w[0].lhs) / (w[1].param - w[0].param))
        .collect();
    let mut kinks = Vec::new();
    for k in 0..slopes.len() - 1 {
        if (slopes[k + 1] - slopes[k]).abs() > 0.1 {
            // intersect the straight pieces on either side of the kink
            let (x0, y0, s0) = (recs[k].param, recs[k].lhs, slopes[k]);
            let (x2, y2, s2) = (recs[k + 2].param, recs[k + 2].lhs, slopes[k + 1]);
            let x = (y2 - y0 + s0 * x0 - s2 * x2) / (s0 - s2);
            if kinks.last().is_none_or(|&prev: &f64| (x - prev).abs() > 1e-3) {
                kinks.push(x);
            }
        }
    }
    let pass = kinks.len() == 2 && (kinks[0] - 0.4181).abs() <= 5e-4 && (kinks[1] - 0.6219).abs() <= 5e-4;
    outcome("C4 Gisin piecewise maximum", pass, format!("kinks at {kinks:.7?}"))
}

fn c5_gisin_fulfilled() -> Outcome {
    let recs = sweep_gisin(a02(), 10_000, SteeringFunctional::SumSquared).unwrap();
    let failures = recs.iter().filter(|r| !r.fulfilled).count();
    let min_margin = recs.iter().map(|r| r.lhs - r.rhs).fold(f64::INFINITY, f64::min);
    outcome(
        "C5 Gisin fulfillment",
        failures == 0 && recs.len() == 10_000,
        format!("{failures} of {} points violate; smallest lhs - rhs = {min_margin:.6}", recs.len()),
    )
}

fn c6_tensor_closed_forms(rng: &mut StdRng) -> Outcome {
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let p = rng.gen_range(-1.0 / 3.0..=1.0);
        let t = correlation_tensor(&xstate_to_density(&werner(WernerParam::new(p).unwrap()))).unwrap();
        worst = worst.max(max_abs_diff(&t, &CorrelationTensor::diagonal([p, -p, p])));

        let x = rng.gen_range(1e-9..1.0);
        let t = correlation_tensor(&xstate_to_density(&gisin(GisinParam::new(x, a02(), b02()).unwrap()))).unwrap();
        let expected = CorrelationTensor::diagonal([GISIN_COEFF * x, GISIN_COEFF * x, 1.0 - 2.0 * x]);
        worst = worst.max(max_abs_diff(&t, &expected));
    }
    outcome(
        "C6 Tensor closed forms",
        worst <= 1e-12,
        format!("max deviation {worst:.1e} over 100 Werner + 100 Gisin parameters"),
    )
}

fn max_abs_diff(a: &CorrelationTensor, b: &CorrelationTensor) -> f64 {
    let mut m = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            m = m.max((a.entries()[i][j] - b.entries()[i][j]).abs());
        }
    }
    m
}

fn c7_oracle_equivalence(rng: &mut StdRng) -> Outcome {
    let start = Instant::now();
    let mut worst_gap = 0.0_f64;
    let mut worst_cert = 0.0_f64;
    let mut oracle_above = false;
    for _ in 0..100 {
        let t = CorrelationTensor::new(std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..=1.0))));
        let mc = max_correlation(&t);
        let grid = grid_max_oracle(&t, 128).unwrap();
        oracle_above |= grid > mc.value + 1e-12;
        worst_gap = worst_gap.max((mc.value - grid).abs());
        worst_cert = worst_cert.max((correlation_value(&t, &mc.m_star, &mc.n_star) - mc.value).abs());
    }
    outcome(
        "C7 Oracle equivalence",
        worst_gap <= 5e-3 && worst_cert <= 1e-12 && !oracle_above,
        format!(
            "max |svd - grid| {worst_gap:.2e}, max certificate error {worst_cert:.1e}, {:.2} s",
            start.elapsed().as_secs_f64()
        ),
    )
}

fn c8_xstate_invariants(rng: &mut StdRng) -> Outcome {
    let tight = Tolerance::new(1e-12).unwrap();
    let mut pattern_failures = 0;
    let mut psd_disagreements = 0;
    for _ in 0..1000 {
        let s = random_valid_xstate(rng);
        let rho = xstate_to_density(&s);
        if !xstate_zero_pattern(&correlation_tensor(&rho).unwrap(), tight) {
            pattern_failures += 1;
        }
        let by_eigen = hermitian_eigenvalues(&rho).unwrap()[0] >= -1e-9;
        if xstate_psd(&s, Tolerance::new(1e-9).unwrap()) != by_eigen {
            psd_disagreements += 1;
        }
    }
    outcome(
        "C8 X-pattern invariants",
        pattern_failures == 0 && psd_disagreements == 0,
        format!("{pattern_failures} zero-pattern failures, {psd_disagreements} PSD disagreements in 1000 states"),
    )
}

fn c9_coarse_identity(rng: &mut StdRng) -> Outcome {
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let rho = random_density(rng);
        let d = OutcomeDistribution::from_density(&rho, Tolerance::DEFAULT).unwrap();
        let t33 = correlation_tensor(&rho).unwrap().t(3, 3);
        worst = worst.max((coarse_correlation(&d) - t33).abs());
    }
    outcome(
        "C9 Coarse identity",
        worst <= 1e-12,
        format!("max |coarse - T33| {worst:.1e} over 1000 states"),
    )
}

fn c10_figures() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let sweep = |family: FamilyArg, name: &str| {
        let path = dir.path().join(name);
        let params = SweepParams {
            family,
            functional: FunctionalArg::SumSquared,
            ..SweepParams::default()
        };
        cmd_sweep(&params, Some(&path), Some(None), &mut std::io::sink()).unwrap();
        assert!(path.with_extension("gp").exists());
        csv::parse(&fs::read_to_string(path).unwrap()).unwrap()
    };

    let werner_rows = sweep(FamilyArg::Werner, "werner.csv");
    let step = werner_rows[1].param - werner_rows[0].param;
    // downward crossings of lhs - rhs, by linear interpolation
    let mut crossings = Vec::new();
    for w in werner_rows.windows(2) {
        let (g0, g1) = (w[0].lhs - w[0].rhs, w[1].lhs - w[1].rhs);
        if g0 >= -1e-9 && g1 < -1e-9 {
            let x = if g0.abs() <= 1e-9 {
                w[0].param
            } else {
                w[0].param + (w[1].param - w[0].param) * g0 / (g0 - g1)
            };
            crossings.push(x);
        }
    }
    let werner_ok = crossings.len() == 1 && (crossings[0] - 0.5).abs() <= step;

    let gisin_rows = sweep(FamilyArg::Gisin, "gisin.csv");
    let gisin_margin = gisin_rows.iter().map(|r| r.lhs - r.rhs).fold(f64::INFINITY, f64::min);
    let gisin_ok = gisin_margin > 0.0 && gisin_rows.len() == 201;

    outcome(
        "C10 Figure reproduction",
        werner_ok && gisin_ok,
        format!(
            "Werner CSV curves cross at {crossings:.6?}; Gisin CSV min lhs - rhs = {gisin_margin:.6} over {} rows",
            gisin_rows.len()
        ),
    )
}

fn main() {
    let mut rng = StdRng::seed_from_u64(20091005);
    let mut outcomes = vec![c1_werner_boundary(), c2_werner_domains()];
    outcomes.extend(c3_gisin_bound());
    outcomes.push(c4_gisin_kinks());
    outcomes.push(c5_gisin_fulfilled());
    outcomes.push(c6_tensor_closed_forms(&mut rng));
    outcomes.push(c7_oracle_equivalence(&mut rng));
    outcomes.push(c8_xstate_invariants(&mut rng));
    outcomes.push(c9_coarse_identity(&mut rng));
    outcomes.push(c10_figures());

    let mut failed = 0;
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {}: {}", o.id, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
