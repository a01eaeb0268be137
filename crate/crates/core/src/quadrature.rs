//! Deterministic quadrature rules for the normalized measure on `S¹` and `S²`.
//!
//! Identifiers:
//! - `icosaK`: vertices of the `K`-times subdivided icosahedron (`10·4^K + 2`
//!   nodes), each weighted by one third of the spherical area of its incident
//!   triangles;
//! - `circleN`: `N` equally spaced nodes on `S¹`;
//! - `glN`: product rule on `S²` with `N` Gauss–Legendre nodes in `cos θ`
//!   (`N/2` on each hemisphere, so kinks along the equator are integrated
//!   exactly) and `2N` equally spaced longitudes.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::body::BodySpec;
use crate::error::{Error, Result};
use crate::geom::{cross, dot3, norm3};

pub const DEFAULT_SPHERE: &str = "icosa4";
pub const DEFAULT_CIRCLE: &str = "circle4096";

#[derive(Debug, Clone, Serialize)]
pub struct QuadratureScheme {
    id: String,
    dim: usize,
    #[serde(skip)]
    nodes: Vec<Vec<f64>>,
    #[serde(skip)]
    weights: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureInfo<'a> {
    pub id: &'a str,
    pub dim: usize,
    pub nodes: usize,
}

impl QuadratureScheme {
    /// Parses an identifier such as `icosa4`, `circle4096` or `gl48`.
    pub fn from_id(id: &str) -> Result<Self> {
        let parse = |prefix: &str| -> Option<usize> { id.strip_prefix(prefix).and_then(|s| s.parse().ok()) };
        if let Some(level) = parse("icosa") {
            if level > 7 {
                return Err(Error::capacity(format!("quadrature `{id}`"), "icosa0..icosa7"));
            }
            Ok(icosahedral(level))
        } else if let Some(n) = parse("circle") {
            if !(3..=1 << 20).contains(&n) {
                return Err(Error::param(format!("quadrature `{id}`: need 3 <= N <= 2^20")));
            }
            Ok(circle(n))
        } else if let Some(n) = parse("gl") {
            if n < 2 || n % 2 != 0 || n > 512 {
                return Err(Error::param(format!("quadrature `{id}`: need an even N in 2..=512")));
            }
            Ok(gauss_legendre_sphere(n))
        } else {
            Err(Error::param(format!(
                "unknown quadrature `{id}` (expected icosaK, circleN or glN)"
            )))
        }
    }

    /// Default rule for the given sphere dimension (`S^{dim−1}`).
    pub fn default_for(dim: usize) -> Result<Self> {
        match dim {
            2 => Self::from_id(DEFAULT_CIRCLE),
            3 => Self::from_id(DEFAULT_SPHERE),
            _ => Err(Error::capacity(format!("quadrature on S^{}", dim.saturating_sub(1)), "dim 2 or 3")),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn info(&self) -> QuadratureInfo<'_> {
        QuadratureInfo {
            id: &self.id,
            dim: self.dim,
            nodes: self.nodes.len(),
        }
    }

    /// `Σ wᵢ f(uᵢ)` with compensated summation in node order.
    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> f64) -> f64 {
        let mut sum = 0.0;
        let mut c = 0.0;
        for (u, w) in self.nodes.iter().zip(&self.weights) {
            let term = w * f(u);
            let t = sum + term;
            if sum.abs() >= term.abs() {
                c += (sum - t) + term;
            } else {
                c += (term - t) + sum;
            }
            sum = t;
        }
        sum + c
    }

    /// `M*(K) ≈ Σ wᵢ h_K(uᵢ)`.
    pub fn mean_support(&self, k: &BodySpec) -> Result<f64> {
        Error::check_dim(self.dim, k.dim())?;
        Ok(self.integrate(|u| k.support_raw(u)))
    }
}

fn circle(n: usize) -> QuadratureScheme {
    let nodes = (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            vec![t.cos(), t.sin()]
        })
        .collect();
    QuadratureScheme {
        id: format!("circle{n}"),
        dim: 2,
        nodes,
        weights: vec![1.0 / n as f64; n],
    }
}

fn normalize(p: [f64; 3]) -> [f64; 3] {
    let l = norm3(p);
    [p[0] / l, p[1] / l, p[2] / l]
}

/// Area of the spherical triangle with unit-vector corners.
fn spherical_triangle_area(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let num = dot3(a, cross(b, c)).abs();
    let den = 1.0 + dot3(a, b) + dot3(b, c) + dot3(c, a);
    2.0 * num.atan2(den)
}

fn icosahedral(level: usize) -> QuadratureScheme {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<[f64; 3]> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .into_iter()
    .map(normalize)
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, verts: &mut Vec<[f64; 3]>| -> usize {
            let key = (a.min(b), a.max(b));
            *mid.entry(key).or_insert_with(|| {
                let (p, q) = (verts[a], verts[b]);
                verts.push(normalize([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    let mut weights = vec![0.0; verts.len()];
    for &[a, b, c] in &faces {
        let area = spherical_triangle_area(verts[a], verts[b], verts[c]) / 3.0;
        weights[a] += area;
        weights[b] += area;
        weights[c] += area;
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    QuadratureScheme {
        id: format!("icosa{level}"),
        dim: 3,
        nodes: verts.into_iter().map(|v| v.to_vec()).collect(),
        weights,
    }
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn gauss_legendre_sphere(n: usize) -> QuadratureScheme {
    let half = n / 2;
    let (x, w) = gauss_legendre(half);
    // Map each half-rule to [−1, 0] and [0, 1].
    let mut zs = Vec::with_capacity(n);
    let mut zw = Vec::with_capacity(n);
    for shift in [-0.5, 0.5] {
        for (xi, wi) in x.iter().zip(&w) {
            zs.push(shift + 0.5 * xi);
            zw.push(0.5 * wi);
        }
    }
    let nphi = 2 * n;
    let mut nodes = Vec::with_capacity(n * nphi);
    let mut weights = Vec::with_capacity(n * nphi);
    for (z, wz) in zs.iter().zip(&zw) {
        let s = (1.0 - z * z).max(0.0).sqrt();
        for j in 0..nphi {
            // Half-step offset keeps nodes off the coordinate half-planes.
            let phi = 2.0 * PI * (j as f64 + 0.5) / nphi as f64;
            nodes.push(vec![s * phi.cos(), s * phi.sin(), *z]);
            weights.push(wz / (2.0 * nphi as f64));
        }
    }
    QuadratureScheme {
        id: format!("gl{n}"),
        dim: 3,
        nodes,
        weights,
    }
}
