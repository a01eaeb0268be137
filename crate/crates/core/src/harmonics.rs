//! Real spherical harmonics on `S²`, expansions of support functions, the
//! spectral form of `V(K,T,B)` and the coefficient inequality.
//!
//! Normalization: `Y` is orthonormal for the normalized measure `σ`, so
//! `Y₀₀ ≡ 1` and the `(0,0)` coefficient of `h_K` is `M*(K)`. In degree `m`
//! the index `l ∈ 0..=2m` selects `P̄_{m0}` for `l = 0`, `P̄_{mk}(cos θ) cos kφ`
//! for `l = 2k−1` and `P̄_{mk}(cos θ) sin kφ` for `l = 2k`, with `P̄` the fully
//! normalized associated Legendre functions (`(1/4π)∫Y² = 1`).
//!
//! With `Δ_S Y = −m(m+1)Y`,
//! `V(K,T,B) = κ₃ Σ_{m,l} k_{ml} t_{ml} (1 − m(m+1)/2)`.

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::body::BodySpec;
use crate::error::{Error, Result};
use crate::geom;
use crate::quadrature::QuadratureScheme;
use crate::report::{Expectation, InequalityReport, Tolerances, Verdict};
use crate::rng;
use crate::special::kappa;

pub const DEFAULT_LMAX: usize = 16;
pub const MAX_LMAX: usize = 24;
/// Quadrature used by default for expansions (exact for band-limited products up to degree 63).
pub const DEFAULT_QUAD: &str = "gl64";

/// Ball-volume constants and the two inequality constants in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub n: usize,
    pub kappa: f64,
    /// `κ²_{n−1} / (κ_n κ_{n−2})`
    pub ratio: f64,
    /// `((n−1)/n)·ratio`
    pub c_n: f64,
    /// `(n−1)κ²_{n−1} / (nκ_nκ_{n−2} − (n−1)κ²_{n−1}) = C_n/(1−C_n)`
    pub d_n: f64,
    /// `1 < ratio < 1 + 1/(n−1)`
    pub ratio_in_bounds: bool,
    /// `1 − C_n > 0`, needed to move the `m = 0` term across.
    pub rearrangement_valid: bool,
}

pub fn constants(n: usize) -> Result<Constants> {
    if n < 2 {
        return Err(Error::param("constants need n >= 2"));
    }
    let (kn, k1, k2) = (kappa(n), kappa(n - 1), kappa(n - 2));
    let nf = n as f64;
    let ratio = k1 * k1 / (kn * k2);
    let c_n = (nf - 1.0) / nf * ratio;
    let d_n = (nf - 1.0) * k1 * k1 / (nf * kn * k2 - (nf - 1.0) * k1 * k1);
    Ok(Constants {
        n,
        kappa: kn,
        ratio,
        c_n,
        d_n,
        ratio_in_bounds: ratio > 1.0 && ratio < 1.0 + 1.0 / (nf - 1.0),
        rearrangement_valid: 1.0 - c_n > 0.0,
    })
}

/// `c_{i,k} = κ_{k−i} / C(k,i)`, the constants relating `V(K[i], B[k−i])` in
/// dimension `k` to intrinsic volumes.
pub fn reduction_constant(i: usize, k: usize) -> Result<f64> {
    if i > k {
        return Err(Error::param("need i <= k"));
    }
    Ok(kappa(k - i) / crate::special::binomial(k, i))
}

/// Number of basis functions up to degree `lmax`.
pub fn basis_len(lmax: usize) -> usize {
    (lmax + 1) * (lmax + 1)
}

/// Position of `(m, l)` in the flat coefficient vector.
pub fn index(m: usize, l: usize) -> usize {
    m * m + l
}

/// All `Y_{ml}(u)` for `m ≤ lmax`, flat in [`index`] order.
pub fn eval_basis(lmax: usize, u: &[f64], out: &mut Vec<f64>) {
    out.clear();
    out.resize(basis_len(lmax), 0.0);
    let x = u[2].clamp(-1.0, 1.0);
    let s = (u[0] * u[0] + u[1] * u[1]).sqrt();
    let (cphi, sphi) = if s > 0.0 { (u[0] / s, u[1] / s) } else { (1.0, 0.0) };
    // cos kφ, sin kφ by the angle-addition recurrence.
    let mut cos_k = vec![1.0; lmax + 1];
    let mut sin_k = vec![0.0; lmax + 1];
    for k in 1..=lmax {
        cos_k[k] = cos_k[k - 1] * cphi - sin_k[k - 1] * sphi;
        sin_k[k] = sin_k[k - 1] * cphi + cos_k[k - 1] * sphi;
    }
    // P̄_{kk}, then upward in degree for each order k.
    let mut pkk = 1.0;
    for k in 0..=lmax {
        if k == 1 {
            pkk = 3f64.sqrt() * s;
        } else if k >= 2 {
            pkk *= ((2 * k + 1) as f64 / (2 * k) as f64).sqrt() * s;
        }
        let mut prev2 = 0.0;
        let mut prev = pkk;
        for m in k..=lmax {
            let p = if m == k {
                pkk
            } else if m == k + 1 {
                ((2 * k + 3) as f64).sqrt() * x * pkk
            } else {
                let (mf, kf) = (m as f64, k as f64);
                let a = ((2.0 * mf - 1.0) * (2.0 * mf + 1.0) / ((mf - kf) * (mf + kf))).sqrt();
                let b = ((2.0 * mf + 1.0) * (mf + kf - 1.0) * (mf - kf - 1.0)
                    / ((mf - kf) * (mf + kf) * (2.0 * mf - 3.0)))
                    .sqrt();
                a * x * prev - b * prev2
            };
            if m > k {
                prev2 = prev;
                prev = p;
            }
            if k == 0 {
                out[index(m, 0)] = p;
            } else {
                out[index(m, 2 * k - 1)] = p * cos_k[k];
                out[index(m, 2 * k)] = p * sin_k[k];
            }
        }
    }
}

/// Anything with a support function on `S²`.
pub trait SupportFunction {
    fn dim(&self) -> usize;
    fn support_at(&self, u: &[f64]) -> f64;
    fn as_body(&self) -> Option<&BodySpec> {
        None
    }
}

impl SupportFunction for BodySpec {
    fn dim(&self) -> usize {
        BodySpec::dim(self)
    }

    fn support_at(&self, u: &[f64]) -> f64 {
        self.support_raw(u)
    }

    fn as_body(&self) -> Option<&BodySpec> {
        Some(self)
    }
}

/// Basis values tabulated on the nodes of a quadrature rule.
#[derive(Debug, Clone)]
pub struct HarmonicBasis {
    lmax: usize,
    quad: QuadratureScheme,
    table: Vec<f64>,
}

impl HarmonicBasis {
    pub fn new(lmax: usize, quad: QuadratureScheme) -> Result<Self> {
        if lmax > MAX_LMAX {
            return Err(Error::capacity(format!("lmax = {lmax}"), "lmax <= 24"));
        }
        if quad.dim() != 3 {
            return Err(Error::param("harmonic expansions live on S^2"));
        }
        let len = basis_len(lmax);
        let mut table = Vec::with_capacity(len * quad.len());
        let mut row = Vec::new();
        for u in quad.nodes() {
            eval_basis(lmax, u, &mut row);
            table.extend_from_slice(&row);
        }
        Ok(HarmonicBasis { lmax, quad, table })
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    pub fn quadrature(&self) -> &QuadratureScheme {
        &self.quad
    }

    pub fn expand<S: SupportFunction + ?Sized>(&self, k: &S) -> Result<HarmonicExpansion> {
        Error::check_dim(3, k.dim())?;
        let len = basis_len(self.lmax);
        let mut coeffs = vec![0.0; len];
        let mut norm2 = 0.0;
        for (i, (u, w)) in self.quad.nodes().iter().zip(self.quad.weights()).enumerate() {
            let h = k.support_at(u);
            norm2 += w * h * h;
            let wh = w * h;
            for (c, y) in coeffs.iter_mut().zip(&self.table[i * len..(i + 1) * len]) {
                *c += wh * y;
            }
        }
        let captured: f64 = coeffs.iter().map(|c| c * c).sum();
        let residual = if norm2 > 0.0 {
            ((norm2 - captured).max(0.0) / norm2).sqrt()
        } else {
            0.0
        };
        Ok(HarmonicExpansion {
            lmax: self.lmax,
            quadrature: self.quad.id().to_string(),
            coeffs,
            l2_norm_sq: norm2,
            residual,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicExpansion {
    pub lmax: usize,
    pub quadrature: String,
    /// Flat in [`index`] order.
    pub coeffs: Vec<f64>,
    /// `∫ h² dσ` by quadrature.
    pub l2_norm_sq: f64,
    /// Relative L² truncation error `sqrt(∫h² − Σc²)/sqrt(∫h²)`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientRow {
    pub m: usize,
    pub l: usize,
    pub value: f64,
}

impl HarmonicExpansion {
    pub fn get(&self, m: usize, l: usize) -> f64 {
        if m > self.lmax || l > 2 * m {
            0.0
        } else {
            self.coeffs[index(m, l)]
        }
    }

    /// Sum of squares of the degree-`m` coefficients.
    pub fn degree_energy(&self, m: usize) -> f64 {
        (0..=2 * m).map(|l| self.get(m, l).powi(2)).sum()
    }

    pub fn rows(&self) -> Vec<CoefficientRow> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for m in 0..=self.lmax {
            for l in 0..=2 * m {
                out.push(CoefficientRow { m, l, value: self.get(m, l) });
            }
        }
        out
    }

    /// Truncated series evaluated at `u`.
    pub fn eval(&self, u: &[f64]) -> f64 {
        let mut y = Vec::new();
        eval_basis(self.lmax, u, &mut y);
        self.coeffs.iter().zip(&y).map(|(c, y)| c * y).sum()
    }

    /// `Σ_l a_{ml} b_{ml}` for one degree.
    fn degree_product(&self, other: &Self, m: usize) -> f64 {
        (0..=2 * m).map(|l| self.get(m, l) * other.get(m, l)).sum()
    }
}

pub fn expand_support<S: SupportFunction + ?Sized>(
    k: &S,
    lmax: usize,
    q: &QuadratureScheme,
) -> Result<HarmonicExpansion> {
    HarmonicBasis::new(lmax, q.clone())?.expand(k)
}

/// `κ₃ Σ k_{ml} t_{ml}(1 − m(m+1)/2)` from two expansions.
pub fn mv_spectral_from(a: &HarmonicExpansion, b: &HarmonicExpansion) -> f64 {
    let lmax = a.lmax.min(b.lmax);
    let s: f64 = (0..=lmax)
        .map(|m| {
            let mf = m as f64;
            (1.0 - mf * (mf + 1.0) / 2.0) * a.degree_product(b, m)
        })
        .sum();
    kappa(3) * s
}

/// Spectral approximation of `V(K, T, B)` in dimension 3.
pub fn mv_spectral<S: SupportFunction + ?Sized, T: SupportFunction + ?Sized>(
    k: &S,
    t: &T,
    lmax: usize,
    q: &QuadratureScheme,
) -> Result<f64> {
    let basis = HarmonicBasis::new(lmax, q.clone())?;
    Ok(mv_spectral_from(&basis.expand(k)?, &basis.expand(t)?))
}

/// Is `b` a zonoid we can recognize syntactically (zonotope, segment, point, ball)?
fn is_zonoid(b: &BodySpec) -> bool {
    matches!(b, BodySpec::Ball(_)) || b.as_zonotope().is_some()
}

/// `a₀₀b₀₀ ≥ D₃ Σ_{m≥1} ((1−m)(m+2)/2) Σ_l a_{ml}b_{ml}` on truncated expansions.
pub fn conjecture_from(a: &HarmonicExpansion, b: &HarmonicExpansion, inputs_digest: &str) -> Result<InequalityReport> {
    let c = constants(3)?;
    let lmax = a.lmax.min(b.lmax);
    let lhs = a.get(0, 0) * b.get(0, 0);
    let sum: f64 = (1..=lmax)
        .map(|m| {
            let mf = m as f64;
            (1.0 - mf) * (mf + 2.0) / 2.0 * a.degree_product(b, m)
        })
        .sum();
    let rhs = c.d_n * sum;
    let mut tol = Tolerances::quadrature(&a.quadrature, 0);
    tol.quadrature_nodes = None;
    let mut r = InequalityReport::evaluate(
        "harmonic_coefficient_inequality",
        lhs,
        rhs,
        tol,
        Expectation::Evidence,
        &(),
    )
    .with_detail("lmax", lmax as f64)
    .with_detail("d3", c.d_n)
    .with_detail("residual_a", a.residual)
    .with_detail("residual_b", b.residual);
    r.inputs_digest = inputs_digest.to_string();
    Ok(r)
}

pub fn conjecture_check<S: SupportFunction + ?Sized, T: SupportFunction + ?Sized>(
    k: &S,
    t: &T,
    lmax: usize,
    q: &QuadratureScheme,
) -> Result<InequalityReport> {
    let basis = HarmonicBasis::new(lmax, q.clone())?;
    conjecture_with(&basis, k, t)
}

/// As [`conjecture_check`] with a pre-tabulated basis.
pub fn conjecture_with<S: SupportFunction + ?Sized, T: SupportFunction + ?Sized>(
    basis: &HarmonicBasis,
    k: &S,
    t: &T,
) -> Result<InequalityReport> {
    let a = basis.expand(k)?;
    let b = basis.expand(t)?;
    let digest = match (k.as_body(), t.as_body()) {
        (Some(kb), Some(tb)) => crate::report::digest(&(kb, tb, basis.lmax, basis.quad.id())),
        _ => crate::report::digest(&(&a.coeffs, &b.coeffs)),
    };
    let mut r = conjecture_from(&a, &b, &digest)?;
    if let (Some(kb), Some(tb)) = (k.as_body(), t.as_body()) {
        if is_zonoid(kb) || is_zonoid(tb) {
            // With a zonoid slot the inequality is the zonotope theorem.
            r.expected = Expectation::Holds;
        }
        if r.verdict == Verdict::Equality {
            if let Some(case) = orthogonal_case(kb, tb)? {
                r = r.with_case(case);
            }
        }
        if kb.to_polytope().is_ok() || tb.to_polytope().is_ok() {
            r = r.with_note("polytope support functions have kinks; spectral convergence is slow");
        }
    }
    Ok(r)
}

/// `Some("orthogonal")` when one body is zonotope-like with all generators
/// orthogonal to the affine hull of the other.
fn orthogonal_case(k: &BodySpec, t: &BodySpec) -> Result<Option<&'static str>> {
    for (z, other) in [(t, k), (k, t)] {
        if let Some(zon) = z.as_zonotope() {
            let dirs = other.direction_space()?;
            let ok = zon.generators.iter().all(|g| {
                let lg = geom::norm(g);
                dirs.iter().all(|d| geom::dot(g, d).abs() <= 1e-9 * lg * geom::norm(d))
            });
            if ok {
                return Ok(Some("orthogonal"));
            }
        }
    }
    Ok(None)
}

/// A function on `S²` given by finitely many harmonic coefficients; when convex
/// (see [`HarmonicBody::convexity_defect`]) it is the support function of a smooth body.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicBody {
    lmax: usize,
    coeffs: Vec<f64>,
}

impl HarmonicBody {
    pub fn new(lmax: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != basis_len(lmax) {
            return Err(Error::DimensionMismatch {
                expected: basis_len(lmax),
                found: coeffs.len(),
            });
        }
        Ok(HarmonicBody { lmax, coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    fn eval(&self, u: &[f64]) -> f64 {
        let mut y = Vec::new();
        eval_basis(self.lmax, u, &mut y);
        self.coeffs.iter().zip(&y).map(|(c, y)| c * y).sum()
    }

    /// Homogeneous extension `H(x) = |x| h(x/|x|)`.
    fn extension(&self, x: &[f64]) -> f64 {
        let r = geom::norm(x);
        let u: Vec<f64> = x.iter().map(|v| v / r).collect();
        r * self.eval(&u)
    }

    /// Most negative eigenvalue of the tangential Hessian of `H` over the
    /// nodes of `q` (finite differences); `≥ 0` up to round-off means convex.
    pub fn convexity_defect(&self, q: &QuadratureScheme) -> f64 {
        let d = 1e-4;
        let mut worst = f64::INFINITY;
        for u in q.nodes() {
            let uv = crate::geom::UnitVector::new(u.clone()).expect("unit node");
            let basis = geom::HyperplaneBasis::new(&uv);
            let t = basis.vectors();
            let shifted = |a: f64, b: f64| -> f64 {
                let x: Vec<f64> = (0..3).map(|i| u[i] + a * t[0][i] + b * t[1][i]).collect();
                self.extension(&x)
            };
            let h0 = shifted(0.0, 0.0);
            let h11 = (shifted(d, 0.0) - 2.0 * h0 + shifted(-d, 0.0)) / (d * d);
            let h22 = (shifted(0.0, d) - 2.0 * h0 + shifted(0.0, -d)) / (d * d);
            let h12 = (shifted(d, d) - shifted(d, -d) - shifted(-d, d) + shifted(-d, -d)) / (4.0 * d * d);
            let tr = h11 + h22;
            let det = h11 * h22 - h12 * h12;
            let min_eig = tr / 2.0 - ((tr * tr / 4.0 - det).max(0.0)).sqrt();
            worst = worst.min(min_eig);
        }
        worst
    }

    /// `1 + amplitude·Σ_l c_l Y_{2,l}` with Gaussian `c` of unit norm,
    /// resampled until the convexity pre-check passes.
    pub fn random_smooth(amplitude: f64, seed: u64) -> Result<Self> {
        let mut r = rng::rng(seed);
        let check = QuadratureScheme::from_id("icosa2")?;
        for _ in 0..1000 {
            let mut coeffs = vec![0.0; basis_len(2)];
            coeffs[0] = 1.0;
            let c: Vec<f64> = (0..5).map(|_| r.sample::<f64, _>(StandardNormal)).collect();
            let norm = geom::norm(&c);
            for (l, v) in c.iter().enumerate() {
                coeffs[index(2, l)] = amplitude * v / norm;
            }
            let body = HarmonicBody::new(2, coeffs)?;
            if body.convexity_defect(&check) >= -1e-6 {
                return Ok(body);
            }
        }
        Err(Error::param(format!(
            "no convex sample found with amplitude {amplitude}"
        )))
    }
}

impl SupportFunction for HarmonicBody {
    fn dim(&self) -> usize {
        3
    }

    fn support_at(&self, u: &[f64]) -> f64 {
        self.eval(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn gl() -> QuadratureScheme {
        QuadratureScheme::from_id(DEFAULT_QUAD).unwrap()
    }

    #[test]
    fn constants_examples() {
        let c = constants(3).unwrap();
        assert!((c.c_n - PI / 4.0).abs() < 1e-12);
        assert!((c.d_n - PI / (4.0 - PI)).abs() < 1e-12);
        assert!(c.rearrangement_valid && c.ratio_in_bounds);
        let c2 = constants(2).unwrap();
        assert!((c2.ratio - 4.0 / PI).abs() < 1e-14);
        assert!(c2.ratio_in_bounds);
        assert!((reduction_constant(2, 3).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn basis_is_orthonormal() {
        let q = QuadratureScheme::from_id("gl32").unwrap();
        let lmax = 8;
        let n = basis_len(lmax);
        let mut gram = vec![0.0; n * n];
        let mut y = Vec::new();
        for (u, w) in q.nodes().iter().zip(q.weights()) {
            eval_basis(lmax, u, &mut y);
            for i in 0..n {
                for j in 0..n {
                    gram[i * n + j] += w * y[i] * y[j];
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((gram[i * n + j] - expect).abs() < 1e-12, "({i},{j}) {}", gram[i * n + j]);
            }
        }
        // Degree one spans the coordinate functions: Y = √3·(z, x, y).
        eval_basis(1, &[0.6, 0.0, 0.8], &mut y);
        assert!((y[index(1, 0)] - 3f64.sqrt() * 0.8).abs() < 1e-15);
        assert!((y[index(1, 1)] - 3f64.sqrt() * 0.6).abs() < 1e-15);
    }

    #[test]
    fn expansion_examples() {
        let q = gl();
        let ball = BodySpec::unit_ball(3);
        let e = expand_support(&ball, DEFAULT_LMAX, &q).unwrap();
        assert!((e.get(0, 0) - 1.0).abs() < 1e-12);
        assert!(e.coeffs[1..].iter().all(|c| c.abs() < 1e-6));

        let moved = BodySpec::ball(vec![0.3, -0.2, 0.5], 1.0).unwrap();
        let e = expand_support(&moved, DEFAULT_LMAX, &q).unwrap();
        for m in 2..=DEFAULT_LMAX {
            assert!(e.degree_energy(m) < 1e-20);
        }
        assert!((e.get(1, 0) - 0.5 / 3f64.sqrt()).abs() < 1e-12);

        let seg = BodySpec::segment(vec![0.0, 0.0, -1.0], vec![0.0, 0.0, 1.0]).unwrap();
        let e = expand_support(&seg, DEFAULT_LMAX, &q).unwrap();
        assert!((e.get(0, 0) - 0.5).abs() < 1e-12);
        for m in (1..=DEFAULT_LMAX).step_by(2) {
            assert!(e.degree_energy(m) < 1e-20);
        }
    }

    #[test]
    fn spectral_mixed_volume_examples() {
        let q = gl();
        let ball = BodySpec::unit_ball(3);
        let v = mv_spectral(&ball, &ball, DEFAULT_LMAX, &q).unwrap();
        assert!((v - kappa(3)).abs() < 1e-12);
        let cube = BodySpec::unit_cube(3).unwrap();
        let v = mv_spectral(&cube, &ball, DEFAULT_LMAX, &q).unwrap();
        assert!((v - kappa(3) * 0.75).abs() < 1e-3 * kappa(3) * 0.75);
        let v = mv_spectral(&cube, &cube, DEFAULT_LMAX, &q).unwrap();
        assert!((v - 2.0).abs() < 0.03 * 2.0, "{v}");
    }

    #[test]
    fn conjecture_examples() {
        let q = gl();
        let ball = BodySpec::unit_ball(3);
        let r = conjecture_check(&ball, &ball, DEFAULT_LMAX, &q).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!((r.lhs - 1.0).abs() < 1e-12);

        let k = BodySpec::segment(vec![-1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]).unwrap();
        let t = BodySpec::segment(vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]).unwrap();
        // The orthogonal series alternates in sign; lmax = 16 leaves ≈2.8e-3.
        let r = conjecture_check(&k, &t, DEFAULT_LMAX, &q).unwrap();
        assert!(r.relative_gap.abs() < 5e-3);
        let r = conjecture_check(&k, &t, MAX_LMAX, &q).unwrap();
        assert_eq!(r.verdict, Verdict::Equality, "{r:?}");
        assert_eq!(r.equality_case.as_deref(), Some("orthogonal"));

        let h1 = HarmonicBody::random_smooth(0.1, 1).unwrap();
        let h2 = HarmonicBody::random_smooth(0.1, 2).unwrap();
        let r = conjecture_check(&h1, &h2, DEFAULT_LMAX, &q).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn smooth_body_reconstruction() {
        let q = gl();
        let h = HarmonicBody::random_smooth(0.1, 5).unwrap();
        let e = expand_support(&h, DEFAULT_LMAX, &q).unwrap();
        assert!((e.get(0, 0) - 1.0).abs() < 1e-12);
        let mut r = rng::rng(8);
        for _ in 0..100 {
            let v: Vec<f64> = (0..3).map(|_| r.sample::<f64, _>(StandardNormal)).collect();
            let u = geom::UnitVector::new(v).unwrap();
            assert!((e.eval(&u) - h.support_at(&u)).abs() < e.residual + 1e-6);
        }
        let energy: f64 = e.coeffs.iter().map(|c| c * c).sum();
        assert!(energy <= e.l2_norm_sq + 1e-12);
    }

    #[test]
    fn convexity_precheck() {
        let q = QuadratureScheme::from_id("icosa2").unwrap();
        let ball = HarmonicBody::new(0, vec![1.0]).unwrap();
        assert!(ball.convexity_defect(&q) > 0.9);
        let mut coeffs = vec![0.0; basis_len(2)];
        coeffs[0] = 1.0;
        coeffs[index(2, 0)] = 2.0;
        let dented = HarmonicBody::new(2, coeffs).unwrap();
        assert!(dented.convexity_defect(&q) < 0.0);
    }
}
