//! Mixed volumes by polarization of the volume polynomial, with closed forms
//! for slots occupied by Euclidean balls.
//!
//! `V(K₁[m₁], …, K_p[m_p]) = (1/n!) Σ_{0≤s≤m, s≠0} Π C(mⱼ,sⱼ) (−1)^{n−|s|} Vol(Σ sⱼKⱼ)`.
//!
//! Ball slots are handled by the identities
//! - `V(K₁, …, K_{n−1}, B) = (1/n)·S(K₁, …, K_{n−1})` (polarized surface area),
//! - `V(K, B[n−1]) = κ_n M*(K)`,
//! - `V(B[n]) = κ_n`,
//!
//! scaled by the product of the radii. Other ball multiplicities are outside
//! the supported range.

use serde::{Deserialize, Serialize};

use crate::body::{self, BodySpec};
use crate::error::{Error, Result};
use crate::geom::{self, HyperplaneBasis, UnitVector};
use crate::quadrature::QuadratureScheme;
use crate::special::{binomial, factorial, kappa};

/// A list of bodies with multiplicities summing to the ambient dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodyArgsJson", into = "BodyArgsJson")]
pub struct BodyArgs {
    dim: usize,
    items: Vec<(BodySpec, usize)>,
}

#[derive(Serialize, Deserialize)]
struct BodyArgsJson {
    dim: usize,
    items: Vec<BodyArgsItem>,
}

#[derive(Serialize, Deserialize)]
struct BodyArgsItem {
    body: BodySpec,
    #[serde(default = "one")]
    multiplicity: usize,
}

fn one() -> usize {
    1
}

impl TryFrom<BodyArgsJson> for BodyArgs {
    type Error = Error;

    fn try_from(raw: BodyArgsJson) -> Result<Self> {
        BodyArgs::new(raw.dim, raw.items.into_iter().map(|i| (i.body, i.multiplicity)).collect())
    }
}

impl From<BodyArgs> for BodyArgsJson {
    fn from(a: BodyArgs) -> Self {
        BodyArgsJson {
            dim: a.dim,
            items: a
                .items
                .into_iter()
                .map(|(body, multiplicity)| BodyArgsItem { body, multiplicity })
                .collect(),
        }
    }
}

impl BodyArgs {
    pub fn new(dim: usize, items: Vec<(BodySpec, usize)>) -> Result<Self> {
        let mut args = BodyArgs { dim, items: Vec::new() };
        for (b, m) in items {
            args = args.with(b, m)?;
        }
        args.validate()?;
        Ok(args)
    }

    /// Appends a body without checking the total multiplicity.
    pub fn with(mut self, body: BodySpec, multiplicity: usize) -> Result<Self> {
        Error::check_dim(self.dim, body.dim())?;
        if multiplicity > 0 {
            self.items.push((body, multiplicity));
        }
        Ok(self)
    }

    pub fn builder(dim: usize) -> Self {
        BodyArgs { dim, items: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::param("dimension must be positive"));
        }
        let total: usize = self.items.iter().map(|(_, m)| m).sum();
        if total != self.dim {
            return Err(Error::param(format!(
                "multiplicities sum to {total}, expected {}",
                self.dim
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn items(&self) -> &[(BodySpec, usize)] {
        &self.items
    }
}

/// `(1/d!) Σ_s Π C(mⱼ,sⱼ)(−1)^{d−|s|} f(Σ sⱼKⱼ)` for a functional `f`
/// homogeneous of degree `d = Σ mⱼ`.
fn polarize(items: &[(BodySpec, usize)], f: impl Fn(&BodySpec) -> Result<f64>) -> Result<f64> {
    let d: usize = items.iter().map(|(_, m)| m).sum();
    if items.is_empty() {
        return Err(Error::param("polarization needs at least one body"));
    }
    let mut s = vec![0usize; items.len()];
    let mut total = 0.0;
    loop {
        // Advance the mixed-radix counter s ∈ Π [0, mⱼ].
        let mut j = 0;
        loop {
            if j == items.len() {
                return Ok(total / factorial(d));
            }
            if s[j] < items[j].1 {
                s[j] += 1;
                break;
            }
            s[j] = 0;
            j += 1;
        }
        let mut coeff = 1.0;
        let mut size = 0;
        let mut sum: Option<BodySpec> = None;
        for ((k, m), &sj) in items.iter().zip(&s) {
            if sj == 0 {
                continue;
            }
            coeff *= binomial(*m, sj);
            size += sj;
            let scaled = k.scaled(sj as f64)?;
            sum = Some(match sum {
                None => scaled,
                Some(acc) => body::minkowski_sum(&acc, &scaled)?,
            });
        }
        let sign = if (d - size) % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * coeff * f(sum.as_ref().expect("nonzero counter"))?;
    }
}

/// Splits ball slots off: returns the non-ball items, the ball multiplicity and
/// the product of ball radii.
fn split_balls(args: &BodyArgs) -> (Vec<(BodySpec, usize)>, usize, f64) {
    let mut rest = Vec::new();
    let mut balls = 0;
    let mut radii = 1.0;
    for (b, m) in &args.items {
        match b {
            BodySpec::Ball(ball) => {
                balls += m;
                radii *= ball.radius.powi(*m as i32);
            }
            other => rest.push((other.clone(), *m)),
        }
    }
    (rest, balls, radii)
}

/// `V(K₁[m₁], …, K_p[m_p])`.
pub fn mixed_volume(args: &BodyArgs) -> Result<f64> {
    args.validate()?;
    let n = args.dim;
    // A point slot contributes nothing; returning 0 avoids polarization round-off.
    if args.items.iter().any(|(k, m)| *m > 0 && k.is_singleton()) {
        return Ok(0.0);
    }
    let (rest, balls, radii) = split_balls(args);
    if radii == 0.0 {
        return Ok(0.0);
    }
    let unit = match balls {
        0 => polarize(&rest, |k| Ok(k.volume()))?,
        b if b == n => kappa(n),
        b if b == n - 1 => kappa(n) * rest[0].0.mean_support()?,
        1 => polarize(&rest, |k| k.surface_area())? / n as f64,
        b => {
            return Err(Error::capacity(
                format!("mixed volume with {b} ball slots in dimension {n}"),
                "0, 1, n-1 or n ball slots",
            ))
        }
    };
    Ok(radii * unit)
}

/// Shorthand for `V(K₁, …, K_n)` with unit multiplicities.
pub fn mixed_volume_of(bodies: &[&BodySpec]) -> Result<f64> {
    let dim = bodies
        .first()
        .ok_or_else(|| Error::param("no bodies"))?
        .dim();
    let items = bodies.iter().map(|b| ((*b).clone(), 1)).collect();
    mixed_volume(&BodyArgs::new(dim, items)?)
}

/// `V(K, T, B)` in dimension 3 as `(|∂(K+T)| − |∂K| − |∂T|)/6`.
pub fn mv_with_ball(k: &BodySpec, t: &BodySpec) -> Result<f64> {
    if k.dim() != 3 {
        return Err(Error::param("mv_with_ball works in dimension 3"));
    }
    Error::check_dim(3, t.dim())?;
    let sum = body::minkowski_sum(k, t)?;
    Ok((sum.surface_area()? - k.surface_area()? - t.surface_area()?) / 6.0)
}

/// `M*(K)` by quadrature together with `V(K, B[n−1]) = κ_n M*(K)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quermass {
    pub mstar: f64,
    pub v_ball: f64,
}

pub fn quermassintegral_mstar(k: &BodySpec, q: &QuadratureScheme) -> Result<Quermass> {
    let mstar = q.mean_support(k)?;
    Ok(Quermass {
        mstar,
        v_ball: kappa(k.dim()) * mstar,
    })
}

/// `V([0,u], K₂, …, K_n) = (1/n)·ν(K₂|u, …, K_n|u)` with `ν` the mixed volume in `u⊥`.
pub fn segment_mv(u: &UnitVector, rest: &[(BodySpec, usize)]) -> Result<f64> {
    let n = u.dim();
    if n < 2 {
        return Err(Error::param("segment_mv needs dim >= 2"));
    }
    let total: usize = rest.iter().map(|(_, m)| m).sum();
    if total != n - 1 {
        return Err(Error::param(format!("expected {} bodies after the segment, got {total}", n - 1)));
    }
    let basis = HyperplaneBasis::new(u);
    let mut projected = BodyArgs::builder(n - 1);
    for (k, m) in rest {
        Error::check_dim(n, k.dim())?;
        projected = projected.with(body::project_with(k, &basis)?, *m)?;
    }
    Ok(mixed_volume(&projected)? / n as f64)
}

/// `I(K) = |K| / |∂K|`.
pub fn info(k: &BodySpec) -> Result<f64> {
    let s = k.surface_area()?;
    if s <= 0.0 {
        return Err(Error::Undefined(format!(
            "information functional of a {} with zero surface area",
            k.kind()
        )));
    }
    Ok(k.volume() / s)
}

/// The pieces of the derivative of `λ ↦ I(A + λT)` at `λ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeReport {
    /// `|A|`
    pub v0: f64,
    /// `V(T, A[n−1])`
    pub v1: f64,
    /// `|∂A| / n = V(B, A[n−1])`
    pub w0: f64,
    /// `V(T, A[n−2], B)`
    pub w1: f64,
    pub info: f64,
    /// `I(A)·(n V₁/V₀ − (n−1) W₁/W₀)`
    pub fprime0: f64,
}

pub fn first_variation(a: &BodySpec, t: &BodySpec) -> Result<DerivativeReport> {
    let n = a.dim();
    Error::check_dim(n, t.dim())?;
    if !(2..=3).contains(&n) {
        return Err(Error::capacity(format!("first variation in dimension {n}"), "dim 2 or 3"));
    }
    if !a.is_full_dimensional() {
        return Err(Error::param("first variation needs a full-dimensional A"));
    }
    let v0 = a.volume();
    let w0 = a.surface_area()? / n as f64;
    let v1 = mixed_volume(&BodyArgs::new(n, vec![(t.clone(), 1), (a.clone(), n - 1)])?)?;
    let unit_ball = BodySpec::unit_ball(n);
    let w1 = mixed_volume(&BodyArgs::new(
        n,
        vec![(t.clone(), 1), (a.clone(), n - 2), (unit_ball, 1)],
    )?)?;
    let info = v0 / (n as f64 * w0);
    let nf = n as f64;
    Ok(DerivativeReport {
        v0,
        v1,
        w0,
        w1,
        info,
        fprime0: info * (nf * v1 / v0 - (nf - 1.0) * w1 / w0),
    })
}

/// `(K + Π_u K)/2`, the Minkowski symmetral of `K` in direction `u`.
pub fn symmetral(k: &BodySpec, u: &UnitVector) -> Result<BodySpec> {
    let reflected = body::reflect(k, u)?;
    body::minkowski_sum(k, &reflected)?.scaled(0.5)
}

/// Length `|g|` and direction of a nonzero vector.
pub(crate) fn split_direction(g: &[f64]) -> Option<(f64, UnitVector)> {
    let len = geom::norm(g);
    if len == 0.0 {
        None
    } else {
        UnitVector::new(g.to_vec()).ok().map(|u| (len, u))
    }
}
