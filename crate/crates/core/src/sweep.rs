//! Seeded sweeps over random inputs.
//!
//! Trial `i` of a sweep named `s` run with master seed `m` draws from
//! `rng(trial_seed(stream_seed(m, s), i))`. Trials run in parallel and are
//! collected in trial order, so output is independent of the thread count.

use std::collections::BTreeMap;

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::body::{random_body_with, BodyKind, BodySpec};
use crate::discriminant::{self, MatArgs, Thm1Report};
use crate::error::{Error, Result};
use crate::geom::{self, HyperplaneBasis, Point, UnitVector};
use crate::harmonics::{self, HarmonicBasis, HarmonicBody};
use crate::ineq;
use crate::matrix::{random_psd_with, SymMatrix};
use crate::planar;
use crate::quadrature::QuadratureScheme;
use crate::report::{InequalityReport, Verdict};
use crate::rng::{self, Rng};

/// Runs `f` for trials `0..trials` in parallel; results come back in trial order.
pub fn run_trials<T, F>(master: u64, stream: &str, trials: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &mut Rng) -> Result<T> + Sync,
{
    let base = rng::stream_seed(master, stream);
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::rng(rng::trial_seed(base, i as u64));
            f(i, &mut r)
        })
        .collect()
}

/// One CSV-ready line per trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub trial: usize,
    pub inputs_digest: String,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub relative_gap: f64,
    pub verdict: Verdict,
    pub equality_case: Option<String>,
}

impl SweepRow {
    pub fn from_report(trial: usize, r: &InequalityReport) -> Self {
        SweepRow {
            trial,
            inputs_digest: r.inputs_digest.clone(),
            lhs: r.lhs,
            rhs: r.rhs,
            gap: r.gap,
            relative_gap: r.relative_gap,
            verdict: r.verdict,
            equality_case: r.equality_case.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub name: String,
    pub seed: u64,
    pub trials: usize,
    pub verdicts: BTreeMap<String, usize>,
    /// Verdicts contradicting the expectation attached to each report.
    pub unexpected: usize,
    pub min_relative_gap: f64,
    pub rows: Vec<SweepRow>,
}

impl SweepSummary {
    pub fn from_reports(name: &str, seed: u64, reports: &[InequalityReport]) -> Self {
        let mut verdicts = BTreeMap::new();
        for r in reports {
            *verdicts.entry(r.verdict.to_string()).or_insert(0) += 1;
        }
        SweepSummary {
            name: name.to_string(),
            seed,
            trials: reports.len(),
            verdicts,
            unexpected: reports.iter().filter(|r| r.is_unexpected()).count(),
            min_relative_gap: reports.iter().map(|r| r.relative_gap).fold(f64::INFINITY, f64::min),
            rows: reports.iter().enumerate().map(|(i, r)| SweepRow::from_report(i, r)).collect(),
        }
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.verdicts.get(&verdict.to_string()).copied().unwrap_or(0)
    }
}

// ---------------------------------------------------------------------------
// Discriminants.

/// Random PSD matrix of random rank in `1..=n`.
fn random_psd_any_rank(n: usize, r: &mut Rng) -> Result<SymMatrix> {
    let rank = r.random_range(1..=n);
    random_psd_with(n, rank, r)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MdAgreement {
    pub n: usize,
    pub trials: usize,
    /// `max |perm − incl_excl| / (1 + |perm|)`.
    pub max_relative_difference: f64,
    pub failures: usize,
    pub tol: f64,
}

/// `md_perm` against `md_incl_excl` on random PSD `n`-tuples.
pub fn md_agreement(n: usize, trials: usize, seed: u64, tol: f64) -> Result<MdAgreement> {
    let diffs = run_trials(seed, &format!("md_agreement/{n}"), trials, |_, r| {
        let ms: Vec<SymMatrix> = (0..n).map(|_| random_psd_any_rank(n, r)).collect::<Result<_>>()?;
        let refs: Vec<&SymMatrix> = ms.iter().collect();
        let args = MatArgs::from_list(&refs)?;
        let p = discriminant::md_perm(&args)?;
        let q = discriminant::md_incl_excl(&args)?;
        Ok((p - q).abs() / (1.0 + p.abs()))
    })?;
    Ok(MdAgreement {
        n,
        trials,
        max_relative_difference: diffs.iter().copied().fold(0.0, f64::max),
        failures: diffs.iter().filter(|&&d| d > tol).count(),
        tol,
    })
}

/// Discriminant inequality on random PSD triples; `A₃` has random rank so
/// all structural regimes appear.
pub fn thm1_sweep(n: usize, trials: usize, seed: u64, tol: f64) -> Result<Vec<Thm1Report>> {
    run_trials(seed, &format!("thm1/{n}"), trials, |_, r| {
        let a1 = random_psd_any_rank(n, r)?;
        let a2 = random_psd_any_rank(n, r)?;
        let a3 = random_psd_any_rank(n, r)?;
        discriminant::thm1_check(&a1, &a2, &a3, tol)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm1Summary {
    pub n: usize,
    pub trials: usize,
    /// `min gap/scale`.
    pub min_scaled_gap: f64,
    pub max_trace_identity_relative: f64,
    pub invertible: usize,
    pub equalities: usize,
    pub inconsistent: usize,
}

pub fn summarize_thm1(n: usize, reports: &[Thm1Report]) -> Thm1Summary {
    Thm1Summary {
        n,
        trials: reports.len(),
        min_scaled_gap: reports.iter().map(|r| r.gap / r.scale).fold(f64::INFINITY, f64::min),
        max_trace_identity_relative: reports
            .iter()
            .filter_map(|r| r.trace_identity_relative)
            .fold(0.0, f64::max),
        invertible: reports.iter().filter(|r| r.trace_identity.is_some()).count(),
        equalities: reports.iter().filter(|r| r.is_equality).count(),
        inconsistent: reports.iter().filter(|r| !r.consistent).count(),
    }
}

pub fn thm1_row(trial: usize, r: &Thm1Report) -> SweepRow {
    SweepRow {
        trial,
        inputs_digest: String::new(),
        lhs: r.lhs,
        rhs: r.rhs,
        gap: r.gap,
        relative_gap: r.gap / r.scale,
        verdict: if r.is_equality {
            Verdict::Equality
        } else if r.gap > 0.0 {
            Verdict::Holds
        } else {
            Verdict::Violated
        },
        equality_case: Some(format!("{:?}", r.equality_case)),
    }
}

// ---------------------------------------------------------------------------
// Planar bodies.

/// Polygon from 3 to 8 random points in the unit disk.
fn random_polygon(r: &mut Rng) -> Result<BodySpec> {
    loop {
        let size = r.random_range(3..=8);
        let p = random_body_with(BodyKind::Polytope, 2, size, r)?;
        if p.is_full_dimensional() {
            return Ok(p);
        }
    }
}

/// Polygon (60%), segment (30%) or point (10%).
fn random_planar(r: &mut Rng) -> Result<BodySpec> {
    let x: f64 = r.random();
    if x < 0.6 {
        random_polygon(r)
    } else if x < 0.9 {
        random_body_with(BodyKind::Segment, 2, 0, r)
    } else {
        random_body_with(BodyKind::Point, 2, 0, r)
    }
}

pub fn prop51_sweep(trials: usize, seed: u64) -> Result<Vec<InequalityReport>> {
    run_trials(seed, "prop51", trials, |_, r| {
        let k = random_planar(r)?;
        let t = random_planar(r)?;
        let a = random_planar(r)?;
        ineq::prop51_check(&k, &t, &a)
    })
}

/// Information monotonicity `I(A+T) ≥ I(A)` for full-dimensional planar pairs.
pub fn cor52_sweep(trials: usize, seed: u64) -> Result<Vec<InequalityReport>> {
    run_trials(seed, "cor52", trials, |_, r| {
        let a = random_polygon(r)?;
        let t = random_polygon(r)?;
        Ok(ineq::prop13_check(&a, &t)?.1)
    })
}

pub fn bonnesen_sweep(trials: usize, seed: u64) -> Result<Vec<InequalityReport>> {
    run_trials(seed, "bonnesen", trials, |_, r| {
        let t = random_polygon(r)?;
        let a = random_polygon(r)?;
        ineq::bonnesen_check(&t, &a)
    })
}

/// Random polygon squeezed by a factor `10^{-k}`, `k ∈ [0, 4]`, along a random direction.
fn random_flattened_polygon(r: &mut Rng) -> Result<BodySpec> {
    let p = random_polygon(r)?.to_polytope()?;
    let squeeze = 10f64.powf(-r.random_range(0.0..4.0));
    let angle: f64 = r.random_range(0.0..std::f64::consts::PI);
    let (c, s) = (angle.cos(), angle.sin());
    let pts: Vec<Point> = p
        .vertices()
        .iter()
        .map(|v| {
            let (x, y) = (c * v[0] + s * v[1], -s * v[0] + c * v[1]);
            let y = squeeze * y;
            vec![c * x - s * y, s * x + c * y]
        })
        .collect();
    BodySpec::polytope(&pts, 2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerimeterRow {
    /// `L(T)/(4R(T))`.
    pub ratio: f64,
    /// `width/diameter`, zero exactly for segments.
    pub flatness: f64,
}

/// Planar ball-product instances with half of the `T`s flattened toward segments.
pub fn prop53_sweep(trials: usize, seed: u64) -> Result<Vec<(InequalityReport, PerimeterRow)>> {
    run_trials(seed, "prop53", trials, |i, r| {
        let k = random_planar(r)?;
        let t = if i % 2 == 0 { random_polygon(r)? } else { random_flattened_polygon(r)? };
        let report = ineq::prop53_check(&k, &t)?;
        let row = PerimeterRow {
            ratio: report.details["perimeter_t"] / (4.0 * report.details["circumradius_t"]),
            flatness: planar::width(&t)? / planar::diameter(&t)?,
        };
        Ok((report, row))
    })
}

// ---------------------------------------------------------------------------
// Three-dimensional checks.

fn random_direction(r: &mut Rng) -> Result<UnitVector> {
    loop {
        let v: Vec<f64> = (0..3).map(|_| r.random_range(-1.0..1.0)).collect();
        let n = geom::norm(&v);
        if n > 0.1 && n <= 1.0 {
            return UnitVector::new(v);
        }
    }
}

/// Zonotope inequality for random polytopes `K` and zonotopes `Z` with one to five generators.
pub fn thm2_sweep(trials: usize, seed: u64, q: &QuadratureScheme) -> Result<Vec<InequalityReport>> {
    run_trials(seed, "thm2", trials, |_, r| {
        let k = random_body_with(BodyKind::Polytope, 3, r.random_range(4..=16), r)?;
        let z = random_body_with(BodyKind::Zonotope, 3, r.random_range(1..=5), r)?;
        ineq::thm2_check(&k, &z, q)
    })
}

/// A `(K, segment)` instance; every fourth `K` is a polygon orthogonal to the segment.
fn random_segment_instance(i: usize, r: &mut Rng) -> Result<(BodySpec, BodySpec)> {
    let u = random_direction(r)?;
    let len = r.random_range(0.5..2.0);
    let seg = BodySpec::segment(vec![0.0; 3], geom::scale(&u, len))?;
    let k = if i % 4 == 0 {
        let hb = HyperplaneBasis::new(&u);
        let offset = r.random_range(-1.0..1.0);
        let pts: Vec<Point> = (0..r.random_range(3..=8))
            .map(|_| {
                let w = [r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)];
                geom::add(&hb.embed(&w), &geom::scale(&u, offset))
            })
            .collect();
        BodySpec::polytope(&pts, 3)?
    } else {
        random_body_with(BodyKind::Polytope, 3, r.random_range(4..=16), r)?
    };
    Ok((k, seg))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementRow {
    pub trial: usize,
    pub thm2: Verdict,
    pub thm2_relative_gap: f64,
    pub harmonic: Verdict,
    pub harmonic_relative_gap: f64,
}

/// Harmonic coefficient inequality against the zonotope inequality on the same `(K, segment)` pairs.
pub fn harmonic_agreement_sweep(
    trials: usize,
    seed: u64,
    lmax: usize,
    harmonic_quad: &QuadratureScheme,
    thm2_quad: &QuadratureScheme,
) -> Result<Vec<AgreementRow>> {
    let basis = HarmonicBasis::new(lmax, harmonic_quad.clone())?;
    run_trials(seed, "harmonic_agreement", trials, |i, r| {
        let (k, seg) = random_segment_instance(i, r)?;
        let a = ineq::thm2_check(&k, &seg, thm2_quad)?;
        let b = harmonics::conjecture_with(&basis, &k, &seg)?;
        Ok(AgreementRow {
            trial: i,
            thm2: a.verdict,
            thm2_relative_gap: a.relative_gap,
            harmonic: b.verdict,
            harmonic_relative_gap: b.relative_gap,
        })
    })
}

/// Coefficient inequality on random smooth bodies `1 + amplitude·Y₂`.
pub fn smooth_conjecture_sweep(
    trials: usize,
    seed: u64,
    amplitude: f64,
    lmax: usize,
    q: &QuadratureScheme,
) -> Result<Vec<InequalityReport>> {
    let basis = HarmonicBasis::new(lmax, q.clone())?;
    run_trials(seed, "smooth_conjecture", trials, |_, r| {
        let h1 = HarmonicBody::random_smooth(amplitude, r.random())?;
        let h2 = HarmonicBody::random_smooth(amplitude, r.random())?;
        harmonics::conjecture_with(&basis, &h1, &h2)
    })
}

/// Rejects zero trial counts with a readable message.
pub fn require_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        Err(Error::param("trials must be at least 1"))
    } else {
        Ok(())
    }
}
