//! Command dispatch.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use mixvol::body::{self, BodyKind, BodySpec};
use mixvol::discriminant::{thm1_check, Thm1Report, DEFAULT_EQUALITY_TOL};
use mixvol::geom;
use mixvol::harmonics::{self, MAX_LMAX};
use mixvol::ineq;
use mixvol::matrix::{random_psd, SymMatrix};
use mixvol::mixed::{self, BodyArgs};
use mixvol::quadrature::{QuadratureScheme, DEFAULT_CIRCLE, DEFAULT_SPHERE};
use mixvol::report::{InequalityReport, Verdict};
use mixvol::rng;
use mixvol::special::kappa;
use mixvol::sweep::{self, SweepSummary};
use serde_json::{json, Value};

use crate::output::{self, Collector, Format, RunReport, Table, ToleranceRecord};
use crate::{BodiesCmd, Cli, Command, HarmonicsCmd, IneqCmd, MdCmd, MvCmd, PaperCmd};

#[derive(Debug)]
pub struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<mixvol::Error> for CliError {
    fn from(e: mixvol::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError(msg.into()))
}

/// Validated run settings shared by all commands.
struct Ctx {
    seed: u64,
    trials: Option<usize>,
    tol: Option<f64>,
    sphere: QuadratureScheme,
    circle: QuadratureScheme,
    harmonic: QuadratureScheme,
}

impl Ctx {
    fn from_cli(cli: &Cli) -> Result<Self> {
        if cli.trials == Some(0) {
            return fail("--trials must be at least 1");
        }
        if let Some(t) = cli.tol {
            if !(t.is_finite() && t > 0.0 && t < 1.0) {
                return fail(format!("--tol must lie in (0, 1), got {t}"));
            }
        }
        let mut sphere = QuadratureScheme::from_id(DEFAULT_SPHERE)?;
        let mut circle = QuadratureScheme::from_id(DEFAULT_CIRCLE)?;
        let mut harmonic = QuadratureScheme::from_id(harmonics::DEFAULT_QUAD)?;
        if let Some(id) = &cli.quad {
            let q = QuadratureScheme::from_id(id)?;
            if q.dim() == 2 {
                circle = q;
            } else {
                sphere = q.clone();
                harmonic = q;
            }
        }
        Ok(Ctx {
            seed: cli.seed,
            trials: cli.trials,
            tol: cli.tol,
            sphere,
            circle,
            harmonic,
        })
    }

    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    fn adjust(&self, r: InequalityReport) -> InequalityReport {
        match self.tol {
            Some(t) => r.with_relative_tolerance(t),
            None => r,
        }
    }

    fn adjust_all(&self, rs: Vec<InequalityReport>) -> Vec<InequalityReport> {
        rs.into_iter().map(|r| self.adjust(r)).collect()
    }

    fn quad_for(&self, dim: usize) -> Result<&QuadratureScheme> {
        match dim {
            2 => Ok(&self.circle),
            3 => Ok(&self.sphere),
            _ => fail(format!("no quadrature for dimension {dim}")),
        }
    }
}

fn load_body(path: &Path) -> Result<BodySpec> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn both<'a>(a: &'a Option<std::path::PathBuf>, b: &'a Option<std::path::PathBuf>) -> Result<Option<(&'a Path, &'a Path)>> {
    match (a, b) {
        (Some(a), Some(b)) => Ok(Some((a, b))),
        (None, None) => Ok(None),
        _ => fail("give all bodies for a single check, or none for a sweep"),
    }
}

fn computed(c: &mut Collector, name: &str, value: Value) {
    c.push(name, "computed", "none", false, value);
}

/// Runs the command and writes its report; returns the process exit code.
pub fn run(cli: &Cli) -> Result<u8> {
    let ctx = Ctx::from_cli(cli)?;
    if let Command::Bodies { cmd: BodiesCmd::Make(args) } = &cli.command {
        if cli.format == Format::Csv {
            return fail("bodies make writes JSON only");
        }
        let body = make_body(args, ctx.seed)?;
        let mut text = serde_json::to_string_pretty(&body).map_err(|e| CliError(e.to_string()))?;
        text.push('\n');
        match &cli.out {
            Some(p) => std::fs::write(p, text)?,
            None => print!("{text}"),
        }
        return Ok(0);
    }

    let mut c = Collector::new();
    let name = match &cli.command {
        Command::Md { cmd: MdCmd::Verify { n } } => {
            md_verify(&ctx, &mut c, *n)?;
            "md verify"
        }
        Command::Mv { cmd } => {
            mv(&ctx, &mut c, cmd)?;
            "mv"
        }
        Command::Ineq { cmd } => {
            ineq_cmd(&ctx, &mut c, cmd)?;
            "ineq"
        }
        Command::Counterexample { n, eps, m, scan } => {
            counterexample(&ctx, &mut c, *n, *eps, *m, *scan)?;
            "counterexample"
        }
        Command::Harmonics { cmd } => {
            harmonics_cmd(&ctx, &mut c, cmd)?;
            "harmonics"
        }
        Command::Paper { cmd: PaperCmd::Reproduce } => {
            reproduce(&ctx, &mut c)?;
            "paper reproduce"
        }
        Command::Bodies { .. } => unreachable!("handled above"),
    };
    let command = match &cli.command {
        Command::Mv { cmd } => format!("{name} {}", mv_name(cmd)),
        Command::Ineq { cmd } => format!("{name} {}", ineq_name(cmd)),
        Command::Harmonics { cmd } => format!("{name} {}", harmonics_name(cmd)),
        _ => name.to_string(),
    };
    let unexpected = c.checks.iter().filter(|ch| ch.unexpected).count();
    let exit_code = if unexpected > 0 { 2 } else { 0 };
    let report = RunReport {
        artifact: "mixvol",
        version: env!("CARGO_PKG_VERSION"),
        command,
        seed: ctx.seed,
        prng: rng::GENERATOR,
        timestamp: (!cli.no_timestamp).then(output::timestamp),
        tolerances: ToleranceRecord::new(ctx.tol, ctx.sphere.id(), ctx.circle.id(), ctx.harmonic.id()),
        checks: c.checks,
        unexpected,
        exit_code,
    };
    output::write(&report, &c.table, cli.format, cli.out.as_deref())?;
    Ok(exit_code as u8)
}

fn mv_name(cmd: &MvCmd) -> &'static str {
    match cmd {
        MvCmd::Compute { .. } => "compute",
        MvCmd::Mstar { .. } => "mstar",
    }
}

fn ineq_name(cmd: &IneqCmd) -> &'static str {
    match cmd {
        IneqCmd::Thm2 { .. } => "thm2",
        IneqCmd::Prop13 { .. } => "prop13",
        IneqCmd::Prop51 { .. } => "prop51",
        IneqCmd::Prop53 { .. } => "prop53",
        IneqCmd::Bonnesen { .. } => "bonnesen",
    }
}

fn harmonics_name(cmd: &HarmonicsCmd) -> &'static str {
    match cmd {
        HarmonicsCmd::Expand { .. } => "expand",
        HarmonicsCmd::Mv { .. } => "mv",
        HarmonicsCmd::Conjecture { .. } => "conjecture",
    }
}

// ---------------------------------------------------------------------------

fn make_body(args: &crate::MakeArgs, seed: u64) -> Result<BodySpec> {
    Ok(match args.kind.as_str() {
        "cube" => BodySpec::unit_cube(args.dim)?,
        "unit-ball" => BodySpec::unit_ball(args.dim),
        "prism" => BodySpec::truncated_prism(args.dim, args.eps, args.m)?,
        "polygon" => BodySpec::regular_polygon(args.size, args.radius)?,
        other => {
            let kind: BodyKind = other.parse()?;
            body::random_body(kind, args.dim, args.size, seed)?
        }
    })
}

fn md_verify(ctx: &Ctx, c: &mut Collector, n: usize) -> Result<()> {
    let trials = ctx.trials(1000);
    let agreement = sweep::md_agreement(n, trials, ctx.seed, ctx.tol.unwrap_or(1e-9))?;
    let ok = agreement.failures == 0;
    c.push(
        "md_algorithm_agreement",
        if ok { "holds" } else { "violated" },
        "holds",
        !ok,
        serde_json::to_value(&agreement).unwrap_or(Value::Null),
    );
    let reports = sweep::thm1_sweep(n, trials, ctx.seed, ctx.tol.unwrap_or(DEFAULT_EQUALITY_TOL))?;
    thm1_summary(c, &format!("discriminant_inequality_n{n}"), n, &reports);
    Ok(())
}

fn thm1_summary(c: &mut Collector, name: &str, n: usize, reports: &[Thm1Report]) {
    let s = sweep::summarize_thm1(n, reports);
    let bad = s.min_scaled_gap < -1e-9 || s.max_trace_identity_relative > 1e-8;
    c.push(
        name,
        if bad { "violated" } else { "holds" },
        "holds",
        bad,
        serde_json::to_value(&s).unwrap_or(Value::Null),
    );
    for (i, r) in reports.iter().enumerate() {
        c.table.push_sweep_row(name, &sweep::thm1_row(i, r));
    }
}

fn thm1_instance(c: &mut Collector, name: &str, r: &Thm1Report, expected: &str) {
    let label = format!("{:?}", r.equality_case);
    let ok = r.is_equality && label == expected && r.consistent;
    c.push(
        name,
        if r.is_equality { "equality" } else { "holds" },
        "equality",
        !ok,
        serde_json::to_value(r).unwrap_or(Value::Null),
    );
    c.table.push_sweep_row(name, &sweep::thm1_row(0, r));
}

fn mv(ctx: &Ctx, c: &mut Collector, cmd: &MvCmd) -> Result<()> {
    match cmd {
        MvCmd::Compute { args } => {
            let text = std::fs::read_to_string(args)?;
            let parsed: BodyArgs = serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", args.display())))?;
            let v = mixed::mixed_volume(&parsed)?;
            computed(c, "mixed_volume", json!({ "value": v, "dim": parsed.dim() }));
        }
        MvCmd::Mstar { body } => {
            let k = load_body(body)?;
            let q = ctx.quad_for(k.dim())?;
            let quad = mixed::quermassintegral_mstar(&k, q)?;
            let exact = k.mean_support().ok();
            computed(
                c,
                "mean_width",
                json!({ "mstar_quadrature": quad.mstar, "mstar_exact": exact, "v_ball_slots": quad.v_ball, "quadrature": q.id() }),
            );
        }
    }
    Ok(())
}

fn ineq_cmd(ctx: &Ctx, c: &mut Collector, cmd: &IneqCmd) -> Result<()> {
    match cmd {
        IneqCmd::Thm2 { k, z } => match both(k, z)? {
            Some((k, z)) => {
                let r = ineq::thm2_check(&load_body(k)?, &load_body(z)?, &ctx.sphere)?;
                c.report("zonotope_inequality", &ctx.adjust(r));
            }
            None => {
                let rs = ctx.adjust_all(sweep::thm2_sweep(ctx.trials(500), ctx.seed, &ctx.sphere)?);
                c.sweep("zonotope_inequality_sweep", &SweepSummary::from_reports("thm2", ctx.seed, &rs), "holds");
            }
        },
        IneqCmd::Prop13 { a, t } => match both(a, t)? {
            Some((a, t)) => {
                let (i, ii) = ineq::prop13_check(&load_body(a)?, &load_body(t)?)?;
                c.report("monotonicity_mixed_form", &ctx.adjust(i));
                c.report("monotonicity_information", &ctx.adjust(ii));
            }
            None => {
                let rs = ctx.adjust_all(sweep::cor52_sweep(ctx.trials(1000), ctx.seed)?);
                c.sweep("planar_information_monotonicity", &SweepSummary::from_reports("cor52", ctx.seed, &rs), "holds");
            }
        },
        IneqCmd::Prop51 { k, t, a } => match (k, t, a) {
            (Some(k), Some(t), Some(a)) => {
                let r = ineq::prop51_check(&load_body(k)?, &load_body(t)?, &load_body(a)?)?;
                c.report("planar_product_inequality", &ctx.adjust(r));
            }
            (None, None, None) => {
                let rs = ctx.adjust_all(sweep::prop51_sweep(ctx.trials(10_000), ctx.seed)?);
                c.sweep("planar_product_sweep", &SweepSummary::from_reports("prop51", ctx.seed, &rs), "holds");
            }
            _ => return fail("give --k, --t and --a for a single check, or none for a sweep"),
        },
        IneqCmd::Prop53 { k, t } => match both(k, t)? {
            Some((k, t)) => {
                let r = ineq::prop53_check(&load_body(k)?, &load_body(t)?)?;
                c.report("planar_ball_product_inequality", &ctx.adjust(r));
            }
            None => prop53_sweep(ctx, c, ctx.trials(1000))?,
        },
        IneqCmd::Bonnesen { t, a } => match both(t, a)? {
            Some((t, a)) => {
                let r = ineq::bonnesen_check(&load_body(t)?, &load_body(a)?)?;
                c.report("bonnesen_relations", &ctx.adjust(r));
            }
            None => {
                let rs = ctx.adjust_all(sweep::bonnesen_sweep(ctx.trials(1000), ctx.seed)?);
                c.sweep("bonnesen_sweep", &SweepSummary::from_reports("bonnesen", ctx.seed, &rs), "holds");
            }
        },
    }
    Ok(())
}

fn prop53_sweep(ctx: &Ctx, c: &mut Collector, trials: usize) -> Result<()> {
    let rows = sweep::prop53_sweep(trials, ctx.seed)?;
    let reports: Vec<InequalityReport> = rows.iter().map(|(r, _)| ctx.adjust(r.clone())).collect();
    c.sweep("planar_ball_product_sweep", &SweepSummary::from_reports("prop53", ctx.seed, &reports), "holds");
    let min_ratio = rows.iter().map(|(_, p)| p.ratio).fold(f64::INFINITY, f64::min);
    let near = rows.iter().filter(|(_, p)| p.ratio < 1.01).count();
    let flat = rows
        .iter()
        .filter(|(_, p)| p.ratio < 1.01)
        .map(|(_, p)| p.flatness)
        .fold(0.0, f64::max);
    let ok = min_ratio >= 1.0 - 1e-9;
    c.push(
        "perimeter_circumradius_bound",
        if ok { "holds" } else { "violated" },
        "holds",
        !ok,
        json!({
            "min_perimeter_over_4r": min_ratio,
            "near_equality_count": near,
            "near_equality_max_width_over_diameter": flat,
        }),
    );
    Ok(())
}

fn counterexample(ctx: &Ctx, c: &mut Collector, n: usize, eps: f64, m: f64, scan: bool) -> Result<()> {
    if !scan {
        let r = ineq::counterexample_verify(n, eps, m)?;
        c.report("projection_information", &ctx.adjust(r));
        return Ok(());
    }
    let rows = ineq::default_scan(n)?;
    let mut table = Table::new(&["n", "eps", "M", "condition_lhs", "condition_rhs", "feasible", "info", "info_shadow"]);
    for r in &rows {
        table.rows.push(vec![
            r.n.to_string(),
            r.eps.to_string(),
            r.m.to_string(),
            r.condition_lhs.to_string(),
            r.condition_rhs.to_string(),
            r.feasible.to_string(),
            r.info.to_string(),
            r.info_shadow.to_string(),
        ]);
    }
    let feasible: Vec<_> = rows.iter().filter(|r| r.feasible).collect();
    let beats = feasible.iter().filter(|r| r.info > r.info_shadow).count();
    let ok = beats == feasible.len();
    c.push(
        "counterexample_scan",
        if feasible.is_empty() { "inconclusive" } else { "violated" },
        "violated",
        !ok,
        json!({ "grid_points": rows.len(), "feasible": feasible.len(), "feasible_with_info_above_shadow": beats }),
    );
    c.table = table;
    Ok(())
}

fn harmonics_cmd(ctx: &Ctx, c: &mut Collector, cmd: &HarmonicsCmd) -> Result<()> {
    match cmd {
        HarmonicsCmd::Expand { body, lmax } => {
            let k = load_body(body)?;
            let e = harmonics::expand_support(&k, *lmax, &ctx.harmonic)?;
            let mut table = Table::new(&["m", "l", "value"]);
            for row in e.rows() {
                table.rows.push(vec![row.m.to_string(), row.l.to_string(), row.value.to_string()]);
            }
            computed(
                c,
                "harmonic_expansion",
                json!({
                    "lmax": e.lmax,
                    "quadrature": e.quadrature,
                    "residual": e.residual,
                    "k00": e.get(0, 0),
                    "coefficients": e.rows(),
                }),
            );
            c.table = table;
        }
        HarmonicsCmd::Mv { k, t, lmax } => {
            let (k, t) = (load_body(k)?, load_body(t)?);
            let v = harmonics::mv_spectral(&k, &t, *lmax, &ctx.harmonic)?;
            let oracle = mixed::mv_with_ball(&k, &t).ok();
            computed(c, "spectral_mixed_volume", json!({ "value": v, "lmax": lmax, "surface_polarization": oracle }));
        }
        HarmonicsCmd::Conjecture { k, t, lmax } => match both(k, t)? {
            Some((k, t)) => {
                let r = harmonics::conjecture_check(&load_body(k)?, &load_body(t)?, *lmax, &ctx.harmonic)?;
                c.report("harmonic_coefficient_inequality", &ctx.adjust(r));
            }
            None => {
                let rs = sweep::smooth_conjecture_sweep(ctx.trials(100), ctx.seed, 0.1, *lmax, &ctx.harmonic)?;
                let rs = ctx.adjust_all(rs);
                c.sweep("smooth_body_sweep", &SweepSummary::from_reports("smooth", ctx.seed, &rs), "evidence");
            }
        },
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn reproduce(ctx: &Ctx, c: &mut Collector) -> Result<()> {
    let seed = ctx.seed;
    let tol = ctx.tol.unwrap_or(DEFAULT_EQUALITY_TOL);

    for n in 2..=6 {
        let a = sweep::md_agreement(n, ctx.trials(1000), seed, 1e-9)?;
        let ok = a.failures == 0;
        c.push(
            &format!("md_algorithm_agreement_n{n}"),
            if ok { "holds" } else { "violated" },
            "holds",
            !ok,
            serde_json::to_value(&a).unwrap_or(Value::Null),
        );
        let reports = sweep::thm1_sweep(n, ctx.trials(1000), seed, tol)?;
        thm1_summary(c, &format!("discriminant_inequality_n{n}"), n, &reports);
    }
    let id = SymMatrix::identity(3);
    let e1 = SymMatrix::diag(&[1.0, 0.0, 0.0]);
    let e2 = SymMatrix::diag(&[0.0, 1.0, 0.0]);
    thm1_instance(c, "discriminant_equality_i", &thm1_check(&e1, &e2, &id, tol)?, "CaseI");
    let (g1, g2) = (random_psd(3, 3, 1)?, random_psd(3, 3, 2)?);
    thm1_instance(c, "discriminant_equality_ii", &thm1_check(&g1, &g2, &e1, tol)?, "CaseII");
    let a3 = SymMatrix::diag(&[2.0, 3.0, 0.0]);
    let a1 = SymMatrix::from_rows(&[vec![1.0, 0.5, 0.0], vec![0.5, 2.0, 0.0], vec![0.0, 0.0, 0.0]])?;
    thm1_instance(c, "discriminant_equality_iii", &thm1_check(&a1, &g2, &a3, tol)?, "CaseIII");

    // Zonotope inequality.
    let square = BodySpec::polytope(
        &[vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![1.0, 1.0, 0.0]],
        3,
    )?;
    let e3 = BodySpec::segment(vec![0.0; 3], geom::axis(3, 2))?;
    let cube = BodySpec::unit_cube(3)?;
    let ball = BodySpec::unit_ball(3);
    c.report("zonotope_orthogonal", &ctx.adjust(ineq::thm2_check(&square, &e3, &ctx.sphere)?));
    c.report("zonotope_cube_segment", &ctx.adjust(ineq::thm2_check(&cube, &e3, &ctx.sphere)?));
    let bb = ctx.adjust(ineq::thm2_check(&ball, &ball, &ctx.sphere)?);
    let expect = kappa(3).powi(2) * (1.0 - PI / 4.0);
    let bb = bb.with_detail("expected_gap", expect);
    c.report("zonotope_ball_ball", &bb);
    let rs = ctx.adjust_all(sweep::thm2_sweep(ctx.trials(500), seed, &ctx.sphere)?);
    c.sweep("zonotope_sweep", &SweepSummary::from_reports("thm2", seed, &rs), "holds");

    // Information monotonicity, both directions.
    let point = BodySpec::point(vec![0.0; 3])?;
    let (i, ii) = ineq::prop13_check(&cube, &point)?;
    c.report("monotonicity_point_mixed_form", &ctx.adjust(i));
    c.report("monotonicity_point_information", &ctx.adjust(ii));
    let z = body::random_body(BodyKind::Zonotope, 3, 4, 5)?;
    let (i, ii) = ineq::prop13_check(&cube, &z)?;
    c.report("monotonicity_cube_zonotope_mixed_form", &ctx.adjust(i));
    c.report("monotonicity_cube_zonotope_information", &ctx.adjust(ii));
    let prism = BodySpec::truncated_prism(3, 0.1, 400.0)?;
    let prism = BodySpec::Polytope(prism.to_polytope()?);
    let (i, ii) = ineq::prop13_check(&prism, &e3)?;
    c.report("monotonicity_prism_mixed_form", &ctx.adjust(i));
    c.report("monotonicity_prism_information", &ctx.adjust(ii));
    let rs = ctx.adjust_all(sweep::cor52_sweep(ctx.trials(1000), seed)?);
    c.sweep("planar_information_monotonicity", &SweepSummary::from_reports("cor52", seed, &rs), "holds");
    c.report(
        "projection_information",
        &ctx.adjust(ineq::counterexample_verify(3, 0.1, 400.0)?),
    );

    // Planar inequalities.
    let rs = ctx.adjust_all(sweep::prop51_sweep(ctx.trials(10_000), seed)?);
    c.sweep("planar_product_sweep", &SweepSummary::from_reports("prop51", seed, &rs), "holds");
    let k = BodySpec::segment(vec![0.0, 0.0], vec![1.0, 0.0])?;
    let t = BodySpec::segment(vec![0.0, 0.0], vec![0.0, 1.0])?;
    let unit_square = BodySpec::unit_cube(2)?;
    c.report("planar_product_parallelogram", &ctx.adjust(ineq::prop51_check(&k, &t, &unit_square)?));
    prop53_sweep(ctx, c, ctx.trials(2000))?;
    let ka = BodySpec::segment(vec![0.0, 0.0], vec![1.7, 0.0])?;
    let tb = BodySpec::segment(vec![0.0, 0.0], vec![0.0, 0.6])?;
    c.report("planar_ball_orthogonal_segments", &ctx.adjust(ineq::prop53_check(&ka, &tb)?));
    let rs = ctx.adjust_all(sweep::bonnesen_sweep(ctx.trials(1000), seed)?);
    c.sweep("bonnesen_sweep", &SweepSummary::from_reports("bonnesen", seed, &rs), "holds");
    let disk = BodySpec::regular_polygon(256, 1.0)?;
    c.report("bonnesen_square_disk", &ctx.adjust(ineq::bonnesen_check(&unit_square, &disk)?));

    // Harmonics.
    let k3 = harmonics::constants(3)?;
    let bounds_ok = (2..=12).all(|n| harmonics::constants(n).map(|c| c.ratio_in_bounds).unwrap_or(false));
    let ok = (k3.c_n - PI / 4.0).abs() <= 1e-12 && (k3.d_n - PI / (4.0 - PI)).abs() <= 1e-12 && bounds_ok;
    c.push(
        "constants",
        if ok { "holds" } else { "violated" },
        "holds",
        !ok,
        serde_json::to_value(k3).unwrap_or(Value::Null),
    );
    let spectral = harmonics::mv_spectral(&cube, &ball, harmonics::DEFAULT_LMAX, &ctx.harmonic)?;
    let target = kappa(3) * mixed::quermassintegral_mstar(&cube, &ctx.sphere)?.mstar;
    let rel = ((spectral - target) / target).abs();
    c.push(
        "spectral_cube_ball",
        if rel <= 1e-3 { "equality" } else { "violated" },
        "equality",
        rel > 1e-3,
        json!({ "spectral": spectral, "kappa3_mstar": target, "relative_difference": rel }),
    );
    let s1 = BodySpec::segment(vec![-1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0])?;
    let r = harmonics::conjecture_check(&s1, &e3, MAX_LMAX, &ctx.harmonic)?;
    c.report("harmonic_orthogonal_segments", &ctx.adjust(r));
    let rows = sweep::harmonic_agreement_sweep(ctx.trials(100), seed, MAX_LMAX, &ctx.harmonic, &ctx.sphere)?;
    let disagree = rows.iter().filter(|r| r.thm2 != r.harmonic).count();
    let equal = rows.iter().filter(|r| r.thm2 == Verdict::Equality).count();
    c.push(
        "harmonic_zonotope_agreement",
        if disagree == 0 { "holds" } else { "violated" },
        "holds",
        disagree > 0,
        json!({ "instances": rows.len(), "disagreements": disagree, "equality_instances": equal, "lmax": MAX_LMAX }),
    );
    let rs = sweep::smooth_conjecture_sweep(ctx.trials(100), seed, 0.1, harmonics::DEFAULT_LMAX, &ctx.harmonic)?;
    c.sweep(
        "harmonic_smooth_sweep",
        &SweepSummary::from_reports("smooth", seed, &ctx.adjust_all(rs)),
        "evidence",
    );
    Ok(())
}
