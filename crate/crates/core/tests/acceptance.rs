//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use mixvol::body::BodySpec;
use mixvol::discriminant::{thm1_check, EqualityCase, DEFAULT_EQUALITY_TOL};
use mixvol::harmonics::{self, HarmonicBody, DEFAULT_LMAX, MAX_LMAX};
use mixvol::ineq;
use mixvol::matrix::{random_psd, SymMatrix};
use mixvol::mixed;
use mixvol::quadrature::QuadratureScheme;
use mixvol::report::Verdict;
use mixvol::special::kappa;
use mixvol::sweep;

const SEED: u64 = 7;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn sphere() -> QuadratureScheme {
    QuadratureScheme::default_for(3).unwrap()
}

fn c1_discriminant_oracles() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=6 {
        let s = sweep::md_agreement(n, 1000, SEED, 1e-9).map_err(err)?;
        ensure(
            s.failures == 0,
            format!("n={n}: {} tuples differ beyond 1e-9 (max {:.2e})", s.failures, s.max_relative_difference),
        )?;
        worst = worst.max(s.max_relative_difference);
    }
    Ok(format!("5000 tuples, max relative difference {worst:.2e}"))
}

fn c2_discriminant_inequality() -> Outcome {
    let mut min_gap = f64::INFINITY;
    let mut max_identity: f64 = 0.0;
    let mut invertible = 0;
    for n in 2..=6 {
        let reports = sweep::thm1_sweep(n, 1000, SEED, DEFAULT_EQUALITY_TOL).map_err(err)?;
        let s = sweep::summarize_thm1(n, &reports);
        ensure(s.min_scaled_gap >= -1e-9, format!("n={n}: gap/scale = {:.3e}", s.min_scaled_gap))?;
        ensure(
            s.max_trace_identity_relative <= 1e-8,
            format!("n={n}: trace identity off by {:.3e}", s.max_trace_identity_relative),
        )?;
        min_gap = min_gap.min(s.min_scaled_gap);
        max_identity = max_identity.max(s.max_trace_identity_relative);
        invertible += s.invertible;
    }
    Ok(format!(
        "5000 triples, min gap/scale {min_gap:.2e}, trace identity max {max_identity:.2e} over {invertible} invertible A3"
    ))
}

fn c3_equality_cases() -> Outcome {
    let id = SymMatrix::identity(3);
    let e1 = SymMatrix::diag(&[1.0, 0.0, 0.0]);
    let e2 = SymMatrix::diag(&[0.0, 1.0, 0.0]);
    let mut lines = Vec::new();

    let r = thm1_check(&e1, &e2, &id, DEFAULT_EQUALITY_TOL).map_err(err)?;
    ensure(r.gap.abs() <= 1e-10 * r.scale, format!("case i gap {:e}", r.gap))?;
    ensure(r.equality_case == EqualityCase::CaseI, format!("case i labelled {:?}", r.equality_case))?;
    lines.push(format!("i {:.1e}", r.gap));

    let a1 = random_psd(3, 3, 1).map_err(err)?;
    let a2 = random_psd(3, 3, 2).map_err(err)?;
    let r = thm1_check(&a1, &a2, &e1, DEFAULT_EQUALITY_TOL).map_err(err)?;
    ensure(r.gap.abs() <= 1e-10 * r.scale, format!("case ii gap {:e}", r.gap))?;
    ensure(r.equality_case == EqualityCase::CaseII, format!("case ii labelled {:?}", r.equality_case))?;
    lines.push(format!("ii {:.1e}", r.gap));

    // rank A3 = 2 with Im A1 inside Im A3, A2 generic.
    let a3 = SymMatrix::diag(&[2.0, 3.0, 0.0]);
    let a1 = SymMatrix::from_rows(&[vec![1.0, 0.5, 0.0], vec![0.5, 2.0, 0.0], vec![0.0, 0.0, 0.0]]).map_err(err)?;
    let r = thm1_check(&a1, &a2, &a3, DEFAULT_EQUALITY_TOL).map_err(err)?;
    ensure(r.gap.abs() <= 1e-10 * r.scale, format!("case iii gap {:e}", r.gap))?;
    ensure(r.equality_case == EqualityCase::CaseIII, format!("case iii labelled {:?}", r.equality_case))?;
    lines.push(format!("iii {:.1e}", r.gap));

    let r = thm1_check(&id, &id, &id, DEFAULT_EQUALITY_TOL).map_err(err)?;
    ensure(
        r.equality_case == EqualityCase::Strict && (r.gap - 1.0 / 3.0).abs() < 1e-12,
        "identity triple should be strict with gap 1/3",
    )?;
    Ok(format!("gaps: {}; identity triple strict", lines.join(", ")))
}

fn c4_planar_universal() -> Outcome {
    let reports = sweep::prop51_sweep(10_000, SEED).map_err(err)?;
    let s = sweep::SweepSummary::from_reports("prop51", SEED, &reports);
    ensure(s.count(Verdict::Violated) == 0, format!("{} violations", s.count(Verdict::Violated)))?;
    ensure(
        reports.iter().all(|r| r.gap >= -1e-9 * r.scale),
        "a gap below -1e-9 scale",
    )?;
    let k = BodySpec::segment(vec![0.0, 0.0], vec![1.0, 0.0]).map_err(err)?;
    let t = BodySpec::segment(vec![0.0, 0.0], vec![0.0, 1.0]).map_err(err)?;
    let a = BodySpec::unit_cube(2).map_err(err)?;
    let r = ineq::prop51_check(&k, &t, &a).map_err(err)?;
    ensure(
        (r.lhs - 0.25).abs() <= 1e-12 && (r.rhs - 0.25).abs() <= 1e-12,
        format!("parallelogram instance {} vs {}", r.lhs, r.rhs),
    )?;
    ensure(
        r.equality_case.as_deref() == Some("intervals_parallelogram"),
        format!("parallelogram labelled {:?}", r.equality_case),
    )?;
    Ok(format!("{:?} over 10000 triples; 1/4 = 1/4 reproduced", s.verdicts))
}

fn c5_counterexample() -> Outcome {
    let r = ineq::counterexample_verify(3, 0.1, 400.0).map_err(err)?;
    let info = r.rhs;
    ensure((info - 0.25111).abs() <= 1e-4, format!("I(A) = {info}"))?;
    ensure(info > 0.25 && r.lhs == 0.25, format!("I(A|u) = {}", r.lhs))?;
    ensure(r.verdict == Verdict::Violated, format!("verdict {}", r.verdict))?;
    let agree = r.details["pipeline_relative_difference"];
    ensure(agree <= 1e-9, format!("pipelines differ by {agree:e}"))?;
    let fp = r.details["fprime0"];
    ensure(fp < 0.0, format!("fprime0 = {fp}"))?;
    Ok(format!("I(A) = {info:.6} > 1/4, pipelines agree to {agree:.1e}, f'(0) = {fp:.4e}"))
}

fn c6_zonotope_inequality() -> Outcome {
    let q = sphere();
    let square = BodySpec::polytope(
        &[vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![1.0, 1.0, 0.0]],
        3,
    )
    .map_err(err)?;
    let z = BodySpec::segment(vec![0.0; 3], vec![0.0, 0.0, 1.0]).map_err(err)?;
    let r = ineq::thm2_check(&square, &z, &q).map_err(err)?;
    ensure(
        r.verdict == Verdict::Equality && r.relative_gap.abs() <= 2e-3,
        format!("orthogonal instance {} with relative gap {:e}", r.verdict, r.relative_gap),
    )?;
    let orth = r.relative_gap;

    let ball = BodySpec::unit_ball(3);
    let r = ineq::thm2_check(&ball, &ball, &q).map_err(err)?;
    let k3 = kappa(3);
    let expect = k3 * k3 * (1.0 - PI / 4.0);
    ensure(
        ((r.gap - expect) / expect).abs() <= 1e-3,
        format!("ball-ball gap {} vs {}", r.gap, expect),
    )?;

    let reports = sweep::thm2_sweep(500, SEED, &q).map_err(err)?;
    let s = sweep::SweepSummary::from_reports("thm2", SEED, &reports);
    ensure(s.count(Verdict::Violated) == 0, format!("{} violated", s.count(Verdict::Violated)))?;
    Ok(format!(
        "orthogonal relative gap {orth:.1e}; ball-ball gap {:.6}; sweep {:?}",
        r.gap, s.verdicts
    ))
}

fn c7_constants() -> Outcome {
    let c = harmonics::constants(3).map_err(err)?;
    ensure((c.c_n - PI / 4.0).abs() <= 1e-12, format!("C3 = {}", c.c_n))?;
    ensure((c.d_n - PI / (4.0 - PI)).abs() <= 1e-12, format!("D3 = {}", c.d_n))?;
    for n in 2..=12 {
        let c = harmonics::constants(n).map_err(err)?;
        let upper = 1.0 + 1.0 / (n as f64 - 1.0);
        ensure(
            c.ratio > 1.0 && c.ratio < upper && c.ratio_in_bounds,
            format!("n={n}: ratio {} outside (1, {upper})", c.ratio),
        )?;
    }
    Ok(format!("C3 = {:.12}, D3 = {:.12}, bounds hold for n = 2..12", c.c_n, c.d_n))
}

fn c8_bonnesen() -> Outcome {
    let reports = sweep::bonnesen_sweep(1000, SEED).map_err(err)?;
    for (i, r) in reports.iter().enumerate() {
        ensure(r.verdict.is_ok(), format!("trial {i}: {} ({:?})", r.verdict, r.notes))?;
        let d = &r.details;
        let tol = 1e-9 * r.scale.max(1.0);
        ensure(d["p_at_minus_R"] <= tol && d["p_at_minus_r"] <= tol, format!("trial {i}: P positive"))?;
        ensure(
            d["root_low"] <= -d["R"] + tol && -d["R"] <= -d["r"] + tol && -d["r"] <= d["root_high"] + tol,
            format!("trial {i}: roots not bracketing"),
        )?;
    }
    let disk = BodySpec::regular_polygon(256, 1.0).map_err(err)?;
    let square = BodySpec::unit_cube(2).map_err(err)?;
    let r = ineq::bonnesen_check(&square, &disk).map_err(err)?;
    let (pr, pbig) = (r.details["p_at_minus_r"], r.details["p_at_minus_R"]);
    ensure((pr + 0.2146).abs() <= 1e-3, format!("P(-r) = {pr}"))?;
    ensure((pbig + 0.2576).abs() <= 1e-3, format!("P(-R) = {pbig}"))?;
    Ok(format!("1000 pairs ok; P(-1/2) = {pr:.4}, P(-sqrt2/2) = {pbig:.4}"))
}

fn c9_planar_ball() -> Outcome {
    let (a, b) = (1.7, 0.6);
    let k = BodySpec::segment(vec![0.0, 0.0], vec![a, 0.0]).map_err(err)?;
    let t = BodySpec::segment(vec![0.0, 0.0], vec![0.0, b]).map_err(err)?;
    let r = ineq::prop53_check(&k, &t).map_err(err)?;
    ensure(
        (r.lhs - a * b).abs() <= 1e-9 && (r.rhs - a * b).abs() <= 1e-9,
        format!("segments give {} vs {}", r.lhs, r.rhs),
    )?;
    ensure(r.equality_case.as_deref() == Some("orthogonal_segments"), "orthogonal segments not labelled")?;

    let rows = sweep::prop53_sweep(2000, SEED).map_err(err)?;
    for (i, (rep, row)) in rows.iter().enumerate() {
        ensure(rep.verdict.is_ok(), format!("trial {i}: {} ({:?})", rep.verdict, rep.notes))?;
        ensure(row.ratio >= 1.0 - 1e-9, format!("trial {i}: L/4R = {}", row.ratio))?;
    }
    // Near-equality in L ≥ 4R only for nearly flat T, and flat T do approach it.
    let near: Vec<_> = rows.iter().filter(|(_, row)| row.ratio < 1.01).collect();
    let worst_flatness = near.iter().map(|(_, row)| row.flatness).fold(0.0, f64::max);
    ensure(
        worst_flatness < 0.2,
        format!("L/4R < 1.01 with width/diameter {worst_flatness:.3}"),
    )?;
    let best = rows.iter().map(|(_, row)| row.ratio).fold(f64::INFINITY, f64::min);
    ensure(best < 1.0 + 1e-6, format!("closest approach L/4R = {best}"))?;
    Ok(format!(
        "lhs = rhs = ab; 2000 T: min L/4R = {best:.9}, {} with L/4R < 1.01 all have width/diameter <= {worst_flatness:.3}",
        near.len()
    ))
}

fn c10_harmonics() -> Outcome {
    let gl = QuadratureScheme::from_id(harmonics::DEFAULT_QUAD).map_err(err)?;
    let basis = harmonics::HarmonicBasis::new(DEFAULT_LMAX, gl.clone()).map_err(err)?;
    let mut worst: f64 = 0.0;
    for s in 0..10u64 {
        let h = HarmonicBody::random_smooth(0.1, s).map_err(err)?;
        let e = basis.expand(&h).map_err(err)?;
        worst = worst.max((e.get(0, 0) - h.coeffs()[0]).abs());
        let c = [0.1 * s as f64, -0.2, 0.05 * s as f64];
        let ball = BodySpec::ball(c.to_vec(), 0.5 + 0.1 * s as f64).map_err(err)?;
        let e = basis.expand(&ball).map_err(err)?;
        worst = worst.max((e.get(0, 0) - ball.mean_support().map_err(err)?).abs());
    }
    ensure(worst <= 1e-6, format!("k00 off by {worst:e}"))?;

    let cube = BodySpec::unit_cube(3).map_err(err)?;
    let ball = BodySpec::unit_ball(3);
    let spectral = harmonics::mv_spectral(&cube, &ball, DEFAULT_LMAX, &gl).map_err(err)?;
    let mstar = mixed::quermassintegral_mstar(&cube, &sphere()).map_err(err)?.mstar;
    let target = kappa(3) * mstar;
    let rel = ((spectral - target) / target).abs();
    ensure(rel <= 1e-3, format!("mv_spectral(cube, ball) off by {rel:e}"))?;

    let rows = sweep::harmonic_agreement_sweep(100, SEED, MAX_LMAX, &gl, &sphere()).map_err(err)?;
    let disagree: Vec<usize> = rows.iter().filter(|r| r.thm2 != r.harmonic).map(|r| r.trial).collect();
    ensure(disagree.is_empty(), format!("verdicts differ on trials {disagree:?}"))?;
    let equalities = rows.iter().filter(|r| r.thm2 == Verdict::Equality).count();
    Ok(format!(
        "k00 error {worst:.1e}; mv_spectral(cube, ball) rel {rel:.1e}; 100/100 verdicts agree ({equalities} equality) at lmax {MAX_LMAX}"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("discriminant oracle equivalence", c1_discriminant_oracles),
        ("discriminant inequality sweep and trace identity", c2_discriminant_inequality),
        ("discriminant equality cases", c3_equality_cases),
        ("planar universal inequality", c4_planar_universal),
        ("truncated prism counterexample", c5_counterexample),
        ("zonotope inequality instances", c6_zonotope_inequality),
        ("constants", c7_constants),
        ("Bonnesen relations", c8_bonnesen),
        ("planar ball inequality and L >= 4R", c9_planar_ball),
        ("harmonics consistency", c10_harmonics),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
