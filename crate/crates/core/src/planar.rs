//! Planar tools: relative inner and outer radii, smallest enclosing circle,
//! width and diameter.

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::body::BodySpec;
use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::rng;

/// Seed of the shuffle in [`circumradius`].
const WELZL_SEED: u64 = 0x5eed_c1e5;

/// `rA + x ⊆ T ⊆ RA + y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiiResult {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub x: [f64; 2],
    pub y: [f64; 2],
}

fn polygon(b: &BodySpec, what: &str) -> Result<Polytope> {
    if b.dim() != 2 {
        return Err(Error::param(format!("{what} must be planar")));
    }
    b.to_polytope()
}

/// Solves the 3×3 system `m z = rhs` by Cramer's rule; `None` when nearly singular.
fn solve3(m: [[f64; 3]; 3], rhs: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(m);
    let scale: f64 = m.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
    if d.abs() <= 1e-12 * scale.powi(3) {
        return None;
    }
    let mut z = [0.0; 3];
    for (k, zk) in z.iter_mut().enumerate() {
        let mut mk = m;
        for row in 0..3 {
            mk[row][k] = rhs[row];
        }
        *zk = det(mk) / d;
    }
    Some(z)
}

/// Lexicographically smallest `z` minimizing `z[0]` subject to `rows[i]·z ≥ b[i]`,
/// by enumeration of basic solutions.
fn lp_min(rows: &[[f64; 3]], b: &[f64]) -> Option<[f64; 3]> {
    let m = rows.len();
    let scale = b.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let tol = 1e-10 * scale;
    let mut best: Option<[f64; 3]> = None;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let Some(z) = solve3([rows[i], rows[j], rows[k]], [b[i], b[j], b[k]]) else {
                    continue;
                };
                if let Some(cur) = best {
                    let better = z[0] < cur[0] - tol
                        || ((z[0] - cur[0]).abs() <= tol
                            && (z[1] < cur[1] - tol || ((z[1] - cur[1]).abs() <= tol && z[2] < cur[2] - tol)));
                    if !better {
                        continue;
                    }
                }
                let feasible = rows
                    .iter()
                    .zip(b)
                    .all(|(row, bi)| row[0] * z[0] + row[1] * z[1] + row[2] * z[2] >= bi - tol);
                if feasible {
                    best = Some(z);
                }
            }
        }
    }
    best
}

/// Relative inner radius `r_A(T)` and outer radius `R_A(T)` of planar `T` with
/// respect to a full-dimensional planar `A`, with witness translations.
pub fn inner_outer_radii(t: &BodySpec, a: &BodySpec) -> Result<RadiiResult> {
    let pa = polygon(a, "A")?;
    let pt = polygon(t, "T")?;
    if !pa.is_full_dimensional() {
        return Err(Error::capacity(
            "relative radii with a degenerate A",
            "A must be a full-dimensional polygon",
        ));
    }
    // Outer: min R with h_T(u) ≤ R h_A(u) + ⟨y,u⟩ on the edge normals of A.
    let normals_a = pa.edge_normals()?;
    let rows: Vec<[f64; 3]> = normals_a.iter().map(|(u, h)| [*h, u[0], u[1]]).collect();
    let b: Vec<f64> = normals_a.iter().map(|(u, _)| pt.support(u)).collect();
    let outer = lp_min(&rows, &b).ok_or_else(|| Error::Undefined("outer radius LP has no vertex".into()))?;

    // Inner: max r with r h_A(v) + ⟨x,v⟩ ≤ h_T(v) on the edge normals of T.
    let (r, x) = if pt.is_full_dimensional() {
        let normals_t = pt.edge_normals()?;
        // With s = −r: s·h_A(v) − ⟨x,v⟩ ≥ −h_T(v), minimize s.
        let rows: Vec<[f64; 3]> = normals_t.iter().map(|(v, _)| [pa.support(v), -v[0], -v[1]]).collect();
        let b: Vec<f64> = normals_t.iter().map(|(_, h)| -h).collect();
        let z = lp_min(&rows, &b).ok_or_else(|| Error::Undefined("inner radius LP has no vertex".into()))?;
        (-z[0], [z[1], z[2]])
    } else {
        let v = &pt.vertices()[0];
        (0.0, [v[0], v[1]])
    };
    Ok(RadiiResult {
        r: r.max(0.0),
        big_r: outer[0].max(0.0),
        x,
        y: [outer[1], outer[2]],
    })
}

impl RadiiResult {
    /// Largest violation of `rA + x ⊆ T ⊆ RA + y` over the edge normals of `A` and `T`.
    pub fn containment_residual(&self, t: &BodySpec, a: &BodySpec) -> Result<f64> {
        let pa = polygon(a, "A")?;
        let pt = polygon(t, "T")?;
        let mut worst: f64 = 0.0;
        let mut dirs: Vec<[f64; 2]> = pa.edge_normals()?.into_iter().map(|(u, _)| u).collect();
        if pt.is_full_dimensional() {
            dirs.extend(pt.edge_normals()?.into_iter().map(|(u, _)| u));
        }
        for u in dirs {
            let ht = pt.support(&u);
            let ha = pa.support(&u);
            worst = worst.max(ht - (self.big_r * ha + self.y[0] * u[0] + self.y[1] * u[1]));
            worst = worst.max(self.r * ha + self.x[0] * u[0] + self.x[1] * u[1] - ht);
        }
        Ok(worst)
    }
}

/// Smallest enclosing circle of a finite planar point set: `(center, radius)`.
pub fn enclosing_circle(points: &[[f64; 2]]) -> Result<([f64; 2], f64)> {
    if points.is_empty() {
        return Err(Error::param("enclosing circle of no points"));
    }
    let mut pts = points.to_vec();
    pts.shuffle(&mut rng::rng(WELZL_SEED));
    let dist = |a: [f64; 2], b: [f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
    let outside = |c: [f64; 2], r: f64, p: [f64; 2]| dist(c, p) > r * (1.0 + 1e-12) + 1e-300;
    let mut c = pts[0];
    let mut r = 0.0;
    for i in 1..pts.len() {
        if !outside(c, r, pts[i]) {
            continue;
        }
        c = pts[i];
        r = 0.0;
        for j in 0..i {
            if !outside(c, r, pts[j]) {
                continue;
            }
            c = [(pts[i][0] + pts[j][0]) / 2.0, (pts[i][1] + pts[j][1]) / 2.0];
            r = dist(pts[i], pts[j]) / 2.0;
            for k in 0..j {
                if !outside(c, r, pts[k]) {
                    continue;
                }
                (c, r) = circumcircle(pts[i], pts[j], pts[k]);
            }
        }
    }
    Ok((c, r))
}

fn circumcircle(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> ([f64; 2], f64) {
    let (bx, by) = (b[0] - a[0], b[1] - a[1]);
    let (cx, cy) = (c[0] - a[0], c[1] - a[1]);
    let d = 2.0 * (bx * cy - by * cx);
    if d == 0.0 {
        // Collinear: the circle on the farthest pair.
        let pairs = [(a, b), (a, c), (b, c)];
        let (p, q) = pairs
            .into_iter()
            .max_by(|x, y| {
                let dx = (x.0[0] - x.1[0]).hypot(x.0[1] - x.1[1]);
                let dy = (y.0[0] - y.1[0]).hypot(y.0[1] - y.1[1]);
                dx.total_cmp(&dy)
            })
            .expect("three pairs");
        let center = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
        return (center, (p[0] - q[0]).hypot(p[1] - q[1]) / 2.0);
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    ([a[0] + ux, a[1] + uy], ux.hypot(uy))
}

/// Circumradius `R(T)` of a planar body (radius of the smallest enclosing disk).
pub fn circumradius(t: &BodySpec) -> Result<f64> {
    if let BodySpec::Ball(b) = t {
        return Ok(b.radius);
    }
    let p = polygon(t, "T")?;
    let pts: Vec<[f64; 2]> = p.vertices().iter().map(|v| [v[0], v[1]]).collect();
    Ok(enclosing_circle(&pts)?.1)
}

/// Largest distance between two points of a planar body.
pub fn diameter(t: &BodySpec) -> Result<f64> {
    let p = polygon(t, "T")?;
    let v = p.vertices();
    let mut d: f64 = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            d = d.max((v[i][0] - v[j][0]).hypot(v[i][1] - v[j][1]));
        }
    }
    Ok(d)
}

/// Minimal width `min_u (h(u) + h(−u))` of a planar body; zero for segments and points.
pub fn width(t: &BodySpec) -> Result<f64> {
    let p = polygon(t, "T")?;
    if !p.is_full_dimensional() {
        return Ok(0.0);
    }
    Ok(p
        .edge_normals()?
        .into_iter()
        .map(|(u, h)| h + p.support(&[-u[0], -u[1]]))
        .fold(f64::INFINITY, f64::min))
}
