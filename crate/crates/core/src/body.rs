//! Convex bodies: polytopes, zonotopes, balls, segments and the truncated
//! prism, with support functions, volumes, surface areas, Minkowski sums,
//! projections and reflections.
//!
//! Conventions:
//! - a zonotope is `c + Σ [0, gᵢ]`, so its support is `⟨c,u⟩ + Σ max(0, ⟨gᵢ,u⟩)`
//!   and its volume is `Σ_{n-subsets} |det|`;
//! - surface area of a body of codimension one counts both sides.

use std::f64::consts::PI;

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, HyperplaneBasis, Point, UnitVector};
use crate::matrix::det_in_place;
use crate::polytope::{self, Polytope};
use crate::rng;
use crate::special::{factorial, gamma_half, kappa};

/// Relative tolerance for rank decisions on generator sets.
const RANK_TOL: f64 = 1e-12;

/// `c + Σ [0, gᵢ]`. Zero generators describe the point `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Zonotope {
    pub center: Point,
    pub generators: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

/// The box `[0,1]^{n−1} × [0,M]` with the corner simplex
/// `conv{0, εe₁, …, εe_{n−1}, Me_n}` cut off, i.e. the intersection of the box
/// with the half-space `x₁/ε + ⋯ + x_{n−1}/ε + x_n/M ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedPrism {
    dim: usize,
    eps: f64,
    m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodyJson", into = "BodyJson")]
pub enum BodySpec {
    Polytope(Polytope),
    Zonotope(Zonotope),
    Ball(Ball),
    Segment(Segment),
    TruncatedPrism(TruncatedPrism),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum BodyJson {
    Polytope {
        dim: usize,
        vertices: Vec<Point>,
    },
    Zonotope {
        dim: usize,
        center: Point,
        generators: Vec<Point>,
    },
    Ball {
        dim: usize,
        center: Point,
        radius: f64,
    },
    Segment {
        dim: usize,
        a: Point,
        b: Point,
    },
    TruncatedPrism {
        dim: usize,
        eps: f64,
        #[serde(rename = "M")]
        m: f64,
    },
}

impl TryFrom<BodyJson> for BodySpec {
    type Error = Error;

    fn try_from(raw: BodyJson) -> Result<Self> {
        let check = |dim: usize, p: &[f64]| -> Result<()> {
            Error::check_dim(dim, p.len())?;
            if p.iter().all(|x| x.is_finite()) {
                Ok(())
            } else {
                Err(Error::NonFinite("body coordinate".into()))
            }
        };
        match raw {
            BodyJson::Polytope { dim, vertices } => Ok(BodySpec::Polytope(polytope::hull(&vertices, dim)?)),
            BodyJson::Zonotope { dim, center, generators } => {
                check(dim, &center)?;
                for g in &generators {
                    check(dim, g)?;
                }
                Ok(BodySpec::Zonotope(Zonotope { center, generators }))
            }
            BodyJson::Ball { dim, center, radius } => {
                check(dim, &center)?;
                BodySpec::ball(center, radius)
            }
            BodyJson::Segment { dim, a, b } => {
                check(dim, &a)?;
                check(dim, &b)?;
                BodySpec::segment(a, b)
            }
            BodyJson::TruncatedPrism { dim, eps, m } => Ok(BodySpec::TruncatedPrism(TruncatedPrism::new(dim, eps, m)?)),
        }
    }
}

impl From<BodySpec> for BodyJson {
    fn from(b: BodySpec) -> Self {
        let dim = b.dim();
        match b {
            BodySpec::Polytope(p) => BodyJson::Polytope {
                dim,
                vertices: p.vertices().to_vec(),
            },
            BodySpec::Zonotope(z) => BodyJson::Zonotope {
                dim,
                center: z.center,
                generators: z.generators,
            },
            BodySpec::Ball(b) => BodyJson::Ball {
                dim,
                center: b.center,
                radius: b.radius,
            },
            BodySpec::Segment(s) => BodyJson::Segment { dim, a: s.a, b: s.b },
            BodySpec::TruncatedPrism(t) => BodyJson::TruncatedPrism {
                dim,
                eps: t.eps,
                m: t.m,
            },
        }
    }
}

impl TruncatedPrism {
    pub fn new(dim: usize, eps: f64, m: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::param("truncated prism needs dim >= 2"));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::param(format!("eps = {eps} must lie in (0, 1)")));
        }
        if !(m > 1.0 && m.is_finite()) {
            return Err(Error::param(format!("M = {m} must exceed 1")));
        }
        Ok(TruncatedPrism { dim, eps, m })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn height(&self) -> f64 {
        self.m
    }

    /// `|D| = Mε^{n−1}/n!`, the volume of the removed corner simplex.
    pub fn corner_volume(&self) -> f64 {
        self.m * self.eps.powi(self.dim as i32 - 1) / factorial(self.dim)
    }

    pub fn volume(&self) -> f64 {
        self.m - self.corner_volume()
    }

    /// `|F_n| = ε^{n−1}/(n−1)!`: the simplex facet lying in `x_n = 0`.
    pub fn facet_base(&self) -> f64 {
        self.eps.powi(self.dim as i32 - 1) / factorial(self.dim - 1)
    }

    /// `|F_i| = Mε^{n−2}/(n−1)!` for `1 ≤ i ≤ n−1`: simplex facets in `x_i = 0`.
    pub fn facet_side(&self) -> f64 {
        self.m * self.eps.powi(self.dim as i32 - 2) / factorial(self.dim - 1)
    }

    /// `|F_0|`: the `(n−1)`-volume of `conv{εe₁, …, εe_{n−1}, Me_n}`, the cut
    /// face, from the Gram determinant of its edges at `εe₁` (this base keeps
    /// the large `M²` entries out of the cancellation).
    pub fn facet_cut(&self) -> f64 {
        let n = self.dim;
        let k = n - 1;
        let base = geom::scale(&geom::axis(n, 0), self.eps);
        let edges: Vec<Point> = (1..n)
            .map(|i| {
                let tip = if i == n - 1 {
                    geom::scale(&geom::axis(n, i), self.m)
                } else {
                    geom::scale(&geom::axis(n, i), self.eps)
                };
                geom::sub(&tip, &base)
            })
            .collect();
        let mut gram: Vec<f64> = Vec::with_capacity(k * k);
        for a in &edges {
            for b in &edges {
                gram.push(geom::dot(a, b));
            }
        }
        det_in_place(&mut gram, k).max(0.0).sqrt() / factorial(k)
    }

    /// `2M(n−1) + 2 − Σ_{i=1}^{n}|F_i| + |F_0|`.
    pub fn surface_area(&self) -> f64 {
        let n = self.dim as f64;
        2.0 * self.m * (n - 1.0) + 2.0 - ((n - 1.0) * self.facet_side() + self.facet_base()) + self.facet_cut()
    }

    /// All vertices: the box corners except the origin, plus `εeᵢ` for `i < n`.
    pub fn vertices(&self) -> Vec<Point> {
        let n = self.dim;
        let mut out = Vec::with_capacity((1 << n) + n);
        for mask in 1usize..(1 << n) {
            let v: Point = (0..n)
                .map(|i| {
                    if mask & (1 << i) == 0 {
                        0.0
                    } else if i == n - 1 {
                        self.m
                    } else {
                        1.0
                    }
                })
                .collect();
            out.push(v);
        }
        for i in 0..n - 1 {
            out.push(geom::scale(&geom::axis(n, i), self.eps));
        }
        out
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        if self.dim > 3 {
            return Err(Error::capacity(
                format!("truncated prism in dimension {} as an explicit polytope", self.dim),
                "dim <= 3",
            ));
        }
        polytope::hull(&self.vertices(), self.dim)
    }
}

impl Zonotope {
    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        geom::dot(&self.center, u) + self.generators.iter().map(|g| geom::dot(g, u).max(0.0)).sum::<f64>()
    }

    /// `Σ_{n-subsets} |det(g_{i₁}, …, g_{iₙ})|`.
    pub fn volume(&self) -> f64 {
        let n = self.dim();
        let mut total = 0.0;
        let mut work = vec![0.0; n * n];
        for_each_subset(self.generators.len(), n, |subset| {
            for (r, &gi) in subset.iter().enumerate() {
                work[r * n..(r + 1) * n].copy_from_slice(&self.generators[gi]);
            }
            total += det_in_place(&mut work, n).abs();
        });
        total
    }

    /// `2 Σ_{(n−1)-subsets} vol_{n−1}(parallelotope)`.
    pub fn surface_area(&self) -> f64 {
        let n = self.dim();
        let k = n - 1;
        let mut total = 0.0;
        let mut gram = vec![0.0; k * k];
        for_each_subset(self.generators.len(), k, |subset| {
            for (r, &a) in subset.iter().enumerate() {
                for (c, &b) in subset.iter().enumerate() {
                    gram[r * k + c] = geom::dot(&self.generators[a], &self.generators[b]);
                }
            }
            total += det_in_place(&mut gram, k).max(0.0).sqrt();
        });
        2.0 * total
    }

    /// Polytope realized by iterated Minkowski sums with each generator segment.
    pub fn to_polytope(&self) -> Result<Polytope> {
        let mut p = Polytope::point(self.center.clone())?;
        for g in &self.generators {
            let mut pts = p.vertices().to_vec();
            pts.extend(p.vertices().iter().map(|v| geom::add(v, g)));
            p = polytope::hull(&pts, self.dim())?;
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        vector_rank(&self.generators)
    }
}

/// Calls `f` with every increasing `k`-subset of `0..n`.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Numeric rank of a set of vectors (Gram–Schmidt with a relative threshold).
pub fn vector_rank(vectors: &[Point]) -> usize {
    let scale = vectors.iter().map(|v| geom::norm(v)).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let mut basis: Vec<Point> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = geom::dot(&w, b);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let len = geom::norm(&w);
        if len > RANK_TOL * scale * 1e3 {
            basis.push(w.into_iter().map(|x| x / len).collect());
        }
    }
    basis.len()
}

/// `E[max(0, ⟨e, u⟩)]` for `u` uniform on `S^{n−1}`: the mean support of `[0, e]`.
pub fn mean_positive_part(n: usize) -> f64 {
    let n = n as u32;
    0.5 * gamma_half(n) / (PI.sqrt() * gamma_half(n + 1))
}

impl BodySpec {
    pub fn point(p: Point) -> Result<Self> {
        Ok(BodySpec::Polytope(Polytope::point(p)?))
    }

    pub fn polytope(points: &[Point], dim: usize) -> Result<Self> {
        Ok(BodySpec::Polytope(polytope::hull(points, dim)?))
    }

    pub fn zonotope(center: Point, generators: Vec<Point>) -> Result<Self> {
        for g in &generators {
            Error::check_dim(center.len(), g.len())?;
        }
        Ok(BodySpec::Zonotope(Zonotope { center, generators }))
    }

    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::param(format!("radius {radius} must be a finite value >= 0")));
        }
        if center.is_empty() {
            return Err(Error::param("ball needs a center"));
        }
        Ok(BodySpec::Ball(Ball { center, radius }))
    }

    pub fn unit_ball(dim: usize) -> Self {
        BodySpec::Ball(Ball {
            center: vec![0.0; dim],
            radius: 1.0,
        })
    }

    pub fn segment(a: Point, b: Point) -> Result<Self> {
        Error::check_dim(a.len(), b.len())?;
        if a.is_empty() {
            return Err(Error::param("segment needs coordinates"));
        }
        Ok(BodySpec::Segment(Segment { a, b }))
    }

    pub fn truncated_prism(dim: usize, eps: f64, m: f64) -> Result<Self> {
        Ok(BodySpec::TruncatedPrism(TruncatedPrism::new(dim, eps, m)?))
    }

    /// `[0,1]^dim` as a polytope.
    pub fn unit_cube(dim: usize) -> Result<Self> {
        let pts: Vec<Point> = (0..1usize << dim)
            .map(|mask| (0..dim).map(|i| ((mask >> i) & 1) as f64).collect())
            .collect();
        BodySpec::polytope(&pts, dim)
    }

    /// Regular `k`-gon inscribed in the circle of the given radius, with a vertex on the positive x-axis.
    pub fn regular_polygon(k: usize, radius: f64) -> Result<Self> {
        if k < 3 {
            return Err(Error::param("regular polygon needs at least 3 vertices"));
        }
        let pts: Vec<Point> = (0..k)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / k as f64;
                vec![radius * t.cos(), radius * t.sin()]
            })
            .collect();
        BodySpec::polytope(&pts, 2)
    }

    pub fn dim(&self) -> usize {
        match self {
            BodySpec::Polytope(p) => p.dim(),
            BodySpec::Zonotope(z) => z.dim(),
            BodySpec::Ball(b) => b.center.len(),
            BodySpec::Segment(s) => s.a.len(),
            BodySpec::TruncatedPrism(t) => t.dim,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            BodySpec::Polytope(_) => "polytope",
            BodySpec::Zonotope(_) => "zonotope",
            BodySpec::Ball(_) => "ball",
            BodySpec::Segment(_) => "segment",
            BodySpec::TruncatedPrism(_) => "truncated_prism",
        }
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        match self {
            BodySpec::Polytope(p) => p.affine_dim(),
            BodySpec::Zonotope(z) => z.rank(),
            BodySpec::Ball(b) => {
                if b.radius > 0.0 {
                    b.center.len()
                } else {
                    0
                }
            }
            BodySpec::Segment(s) => vector_rank(&[geom::sub(&s.b, &s.a)]),
            BodySpec::TruncatedPrism(t) => t.dim,
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim()
    }

    pub fn is_singleton(&self) -> bool {
        self.affine_dim() == 0
    }

    /// Direction vectors spanning the linear space parallel to the affine hull.
    pub fn direction_space(&self) -> Result<Vec<Point>> {
        Ok(match self {
            BodySpec::Zonotope(z) => z.generators.clone(),
            BodySpec::Segment(s) => vec![geom::sub(&s.b, &s.a)],
            BodySpec::Ball(b) => {
                if b.radius > 0.0 {
                    (0..b.center.len()).map(|k| geom::axis(b.center.len(), k)).collect()
                } else {
                    Vec::new()
                }
            }
            BodySpec::Polytope(p) => p.vertices().iter().map(|v| geom::sub(v, &p.vertices()[0])).collect(),
            BodySpec::TruncatedPrism(t) => (0..t.dim).map(|k| geom::axis(t.dim, k)).collect(),
        })
    }

    /// Support function at an arbitrary (not necessarily unit) direction.
    pub fn support_raw(&self, u: &[f64]) -> f64 {
        match self {
            BodySpec::Polytope(p) => p.support(u),
            BodySpec::Zonotope(z) => z.support(u),
            BodySpec::Ball(b) => geom::dot(&b.center, u) + b.radius * geom::norm(u),
            BodySpec::Segment(s) => geom::dot(&s.a, u).max(geom::dot(&s.b, u)),
            BodySpec::TruncatedPrism(t) => t
                .vertices()
                .iter()
                .map(|v| geom::dot(v, u))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            BodySpec::Polytope(p) => p.volume(),
            BodySpec::Zonotope(z) => z.volume(),
            BodySpec::Ball(b) => kappa(b.center.len()) * b.radius.powi(b.center.len() as i32),
            BodySpec::Segment(s) => {
                if s.a.len() == 1 {
                    (s.b[0] - s.a[0]).abs()
                } else {
                    0.0
                }
            }
            BodySpec::TruncatedPrism(t) => t.volume(),
        }
    }

    pub fn surface_area(&self) -> Result<f64> {
        Ok(match self {
            BodySpec::Polytope(p) => p.surface_area(),
            BodySpec::Zonotope(z) => z.surface_area(),
            BodySpec::Ball(b) => {
                let n = b.center.len();
                n as f64 * kappa(n) * b.radius.powi(n as i32 - 1)
            }
            BodySpec::Segment(s) => match s.a.len() {
                1 => 2.0,
                2 => 2.0 * geom::norm(&geom::sub(&s.b, &s.a)),
                _ => 0.0,
            },
            BodySpec::TruncatedPrism(t) => t.surface_area(),
        })
    }

    /// Exact `M*(K) = ∫ h_K dσ` where a closed form is available.
    pub fn mean_support(&self) -> Result<f64> {
        Ok(match self {
            BodySpec::Ball(b) => b.radius,
            BodySpec::Zonotope(z) => {
                let c = mean_positive_part(z.dim());
                z.generators.iter().map(|g| c * geom::norm(g)).sum()
            }
            BodySpec::Segment(s) => mean_positive_part(s.a.len()) * geom::norm(&geom::sub(&s.b, &s.a)),
            other => {
                if other.dim() > 3 {
                    return Err(Error::capacity("exact mean support of a polytope", "dim <= 3"));
                }
                other.to_polytope()?.mean_support()
            }
        })
    }

    /// Explicit vertex representation (dimensions 1–3, no balls).
    pub fn to_polytope(&self) -> Result<Polytope> {
        if self.dim() > 3 {
            return Err(Error::capacity(
                format!("{} in dimension {} as a polytope", self.kind(), self.dim()),
                "dim <= 3",
            ));
        }
        match self {
            BodySpec::Polytope(p) => Ok(p.clone()),
            BodySpec::Zonotope(z) => z.to_polytope(),
            BodySpec::Segment(s) => polytope::hull(&[s.a.clone(), s.b.clone()], s.a.len()),
            BodySpec::TruncatedPrism(t) => t.to_polytope(),
            BodySpec::Ball(_) => Err(Error::capacity(
                "ball as a polytope",
                "curved bodies enter mixed volumes through Steiner-type closed forms",
            )),
        }
    }

    /// The same body as a zonotope, if it is one syntactically (zonotope or segment).
    pub fn as_zonotope(&self) -> Option<Zonotope> {
        match self {
            BodySpec::Zonotope(z) => Some(z.clone()),
            BodySpec::Segment(s) => Some(Zonotope {
                center: s.a.clone(),
                generators: vec![geom::sub(&s.b, &s.a)],
            }),
            BodySpec::Polytope(p) if p.affine_dim() == 0 => Some(Zonotope {
                center: p.vertices()[0].clone(),
                generators: Vec::new(),
            }),
            _ => None,
        }
    }

    /// `s·K` for `s ≥ 0` (homothety about the origin).
    pub fn scaled(&self, s: f64) -> Result<BodySpec> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::param(format!("scale factor {s} must be finite and >= 0")));
        }
        Ok(match self {
            BodySpec::Polytope(p) => BodySpec::Polytope(p.scale(s)?),
            BodySpec::Zonotope(z) => BodySpec::Zonotope(Zonotope {
                center: geom::scale(&z.center, s),
                generators: z.generators.iter().map(|g| geom::scale(g, s)).collect(),
            }),
            BodySpec::Ball(b) => BodySpec::Ball(Ball {
                center: geom::scale(&b.center, s),
                radius: b.radius * s,
            }),
            BodySpec::Segment(seg) => BodySpec::Segment(Segment {
                a: geom::scale(&seg.a, s),
                b: geom::scale(&seg.b, s),
            }),
            BodySpec::TruncatedPrism(t) => {
                if t.dim > 3 {
                    return Err(Error::capacity("scaling a truncated prism in dim > 3", "dim <= 3"));
                }
                BodySpec::Polytope(t.to_polytope()?.scale(s)?)
            }
        })
    }

    pub fn translated(&self, t: &[f64]) -> Result<BodySpec> {
        Error::check_dim(self.dim(), t.len())?;
        Ok(match self {
            BodySpec::Polytope(p) => BodySpec::Polytope(p.translate(t)),
            BodySpec::Zonotope(z) => BodySpec::Zonotope(Zonotope {
                center: geom::add(&z.center, t),
                generators: z.generators.clone(),
            }),
            BodySpec::Ball(b) => BodySpec::Ball(Ball {
                center: geom::add(&b.center, t),
                radius: b.radius,
            }),
            BodySpec::Segment(s) => BodySpec::Segment(Segment {
                a: geom::add(&s.a, t),
                b: geom::add(&s.b, t),
            }),
            BodySpec::TruncatedPrism(p) => BodySpec::Polytope(p.to_polytope()?.translate(t)),
        })
    }
}

/// `h_K(u) = sup ⟨x, u⟩`.
pub fn support(k: &BodySpec, u: &UnitVector) -> Result<f64> {
    Error::check_dim(k.dim(), u.dim())?;
    Ok(k.support_raw(u))
}

pub fn volume(k: &BodySpec) -> f64 {
    k.volume()
}

pub fn surface_area(k: &BodySpec) -> Result<f64> {
    k.surface_area()
}

/// `K + L`. Zonotope-like pairs stay zonotopes; anything involving a
/// polytope is realized as a polytope (dimension ≤ 3). Balls are rejected.
pub fn minkowski_sum(k: &BodySpec, l: &BodySpec) -> Result<BodySpec> {
    Error::check_dim(k.dim(), l.dim())?;
    if matches!(k, BodySpec::Ball(_)) || matches!(l, BodySpec::Ball(_)) {
        return Err(Error::capacity(
            "Minkowski sum with a ball",
            "ball sums are handled by the Steiner-based mixed-volume operations",
        ));
    }
    if let (Some(a), Some(b)) = (k.as_zonotope(), l.as_zonotope()) {
        let mut generators = a.generators;
        generators.extend(b.generators);
        return Ok(BodySpec::Zonotope(Zonotope {
            center: geom::add(&a.center, &b.center),
            generators,
        }));
    }
    let p = k.to_polytope()?;
    let q = l.to_polytope()?;
    Ok(BodySpec::Polytope(p.minkowski_sum(&q)?))
}

/// Orthogonal projection onto `u⊥`, expressed in the coordinates of
/// [`HyperplaneBasis::new(u)`](HyperplaneBasis::new).
pub fn project(k: &BodySpec, u: &UnitVector) -> Result<BodySpec> {
    Error::check_dim(k.dim(), u.dim())?;
    if k.dim() < 2 {
        return Err(Error::param("projection needs dim >= 2"));
    }
    let basis = HyperplaneBasis::new(u);
    project_with(k, &basis)
}

pub fn project_with(k: &BodySpec, basis: &HyperplaneBasis) -> Result<BodySpec> {
    let d = k.dim() - 1;
    Ok(match k {
        BodySpec::Polytope(p) => {
            let pts: Vec<Point> = p.vertices().iter().map(|v| basis.project(v)).collect();
            BodySpec::Polytope(polytope::hull(&pts, d)?)
        }
        BodySpec::Zonotope(z) => BodySpec::Zonotope(Zonotope {
            center: basis.project(&z.center),
            generators: z.generators.iter().map(|g| basis.project(g)).collect(),
        }),
        BodySpec::Ball(b) => BodySpec::Ball(Ball {
            center: basis.project(&b.center),
            radius: b.radius,
        }),
        BodySpec::Segment(s) => BodySpec::Segment(Segment {
            a: basis.project(&s.a),
            b: basis.project(&s.b),
        }),
        BodySpec::TruncatedPrism(t) => {
            let n = t.dim;
            let u = basis.normal();
            if u[n - 1].abs() >= 1.0 - 1e-15 {
                // Along e_n the cut is invisible: the shadow is the unit cube Q.
                BodySpec::Zonotope(Zonotope {
                    center: vec![0.0; d],
                    generators: (0..n - 1).map(|i| basis.project(&geom::axis(n, i))).collect(),
                })
            } else {
                let pts: Vec<Point> = t.vertices().iter().map(|v| basis.project(v)).collect();
                if d > 3 {
                    return Err(Error::capacity("oblique projection of a truncated prism", "dim <= 4"));
                }
                BodySpec::Polytope(polytope::hull(&pts, d)?)
            }
        }
    })
}

/// Inverse of [`project_with`] on bodies: the flat copy of `k` inside `u⊥ ⊂ ℝⁿ`.
pub fn embed_with(k: &BodySpec, basis: &HyperplaneBasis) -> Result<BodySpec> {
    let n = basis.normal().len();
    Error::check_dim(n - 1, k.dim())?;
    Ok(match k {
        BodySpec::Ball(_) => {
            return Err(Error::capacity(
                "embedding a ball into a hyperplane",
                "polytopes, zonotopes and segments",
            ))
        }
        BodySpec::Zonotope(z) => BodySpec::Zonotope(Zonotope {
            center: basis.embed(&z.center),
            generators: z.generators.iter().map(|g| basis.embed(g)).collect(),
        }),
        BodySpec::Segment(s) => BodySpec::Segment(Segment {
            a: basis.embed(&s.a),
            b: basis.embed(&s.b),
        }),
        other => {
            let p = other.to_polytope()?;
            let pts: Vec<Point> = p.vertices().iter().map(|v| basis.embed(v)).collect();
            BodySpec::Polytope(polytope::hull(&pts, n)?)
        }
    })
}

/// Image under the reflection `Π_u(x) = x − 2u⟨x,u⟩` through `u⊥`.
pub fn reflect(k: &BodySpec, u: &UnitVector) -> Result<BodySpec> {
    Error::check_dim(k.dim(), u.dim())?;
    let pi = |x: &[f64]| -> Point {
        let c = 2.0 * geom::dot(x, u);
        x.iter().zip(u.iter()).map(|(a, b)| a - c * b).collect()
    };
    Ok(match k {
        BodySpec::Polytope(p) => BodySpec::Polytope(p.map_points(pi, p.dim())?),
        BodySpec::Zonotope(z) => BodySpec::Zonotope(Zonotope {
            center: pi(&z.center),
            generators: z.generators.iter().map(|g| pi(g)).collect(),
        }),
        BodySpec::Ball(b) => BodySpec::Ball(Ball {
            center: pi(&b.center),
            radius: b.radius,
        }),
        BodySpec::Segment(s) => BodySpec::Segment(Segment { a: pi(&s.a), b: pi(&s.b) }),
        BodySpec::TruncatedPrism(t) => BodySpec::Polytope(t.to_polytope()?.map_points(pi, t.dim)?),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyKind {
    Polytope,
    Zonotope,
    Segment,
    Ball,
    Point,
}

impl std::str::FromStr for BodyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "polytope" => BodyKind::Polytope,
            "zonotope" => BodyKind::Zonotope,
            "segment" => BodyKind::Segment,
            "ball" => BodyKind::Ball,
            "point" => BodyKind::Point,
            other => return Err(Error::param(format!("unknown body kind `{other}`"))),
        })
    }
}

fn random_in_ball(dim: usize, r: &mut rng::Rng) -> Point {
    loop {
        let p: Point = (0..dim).map(|_| r.random_range(-1.0..1.0)).collect();
        if geom::norm(&p) <= 1.0 {
            return p;
        }
    }
}

/// Seeded random body. Polytopes are hulls of `size` uniform points in the unit
/// ball; zonotopes have `size` Gaussian generators scaled by `1/√size`.
pub fn random_body(kind: BodyKind, dim: usize, size: usize, seed: u64) -> Result<BodySpec> {
    random_body_with(kind, dim, size, &mut rng::rng(seed))
}

pub fn random_body_with(kind: BodyKind, dim: usize, size: usize, r: &mut rng::Rng) -> Result<BodySpec> {
    if dim == 0 {
        return Err(Error::param("dimension must be positive"));
    }
    match kind {
        BodyKind::Polytope => {
            if !(1..=3).contains(&dim) {
                return Err(Error::capacity(format!("random polytope in dimension {dim}"), "dim <= 3"));
            }
            if size == 0 {
                return Err(Error::param("random polytope needs at least one point"));
            }
            let pts: Vec<Point> = (0..size).map(|_| random_in_ball(dim, r)).collect();
            BodySpec::polytope(&pts, dim)
        }
        BodyKind::Zonotope => {
            let s = 1.0 / (size.max(1) as f64).sqrt();
            let generators = (0..size)
                .map(|_| (0..dim).map(|_| s * r.sample::<f64, _>(StandardNormal)).collect())
                .collect();
            BodySpec::zonotope(random_in_ball(dim, r), generators)
        }
        BodyKind::Segment => BodySpec::segment(random_in_ball(dim, r), random_in_ball(dim, r)),
        BodyKind::Ball => BodySpec::ball(random_in_ball(dim, r), r.random_range(0.2..1.2)),
        BodyKind::Point => BodySpec::point(random_in_ball(dim, r)),
    }
}
