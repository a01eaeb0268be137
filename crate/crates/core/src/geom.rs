//! Small vector helpers, unit vectors and orthonormal bases of hyperplanes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = Vec<f64>;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn add(a: &[f64], b: &[f64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Point {
    a.iter().map(|x| x * s).collect()
}

pub fn axis(dim: usize, k: usize) -> Point {
    let mut v = vec![0.0; dim];
    v[k] = 1.0;
    v
}

#[inline]
pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub fn to3(p: &[f64]) -> [f64; 3] {
    [p[0], p[1], p[2]]
}

/// Lexicographic comparison with `total_cmp` on each coordinate.
pub fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// A direction on the unit sphere `S^{n−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct UnitVector(Vec<f64>);

impl TryFrom<Vec<f64>> for UnitVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        UnitVector::new(v)
    }
}

impl From<UnitVector> for Vec<f64> {
    fn from(u: UnitVector) -> Self {
        u.0
    }
}

impl UnitVector {
    /// Normalizes `v`; fails on zero or non-finite input.
    pub fn new(v: Vec<f64>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::param("empty direction"));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("direction".into()));
        }
        let n = norm(&v);
        if n == 0.0 {
            return Err(Error::param("zero direction"));
        }
        Ok(UnitVector(v.into_iter().map(|x| x / n).collect()))
    }

    pub fn axis(dim: usize, k: usize) -> Self {
        UnitVector(axis(dim, k))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::Deref for UnitVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Orthonormal basis of `u⊥`, built by Gram–Schmidt on the standard basis with
/// the coordinate of largest `|uᵢ|` removed. Deterministic in `u`.
#[derive(Debug, Clone)]
pub struct HyperplaneBasis {
    normal: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

impl HyperplaneBasis {
    pub fn new(u: &UnitVector) -> Self {
        let n = u.dim();
        let skip = (0..n)
            .max_by(|&a, &b| u[a].abs().total_cmp(&u[b].abs()))
            .unwrap_or(0);
        let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(n.saturating_sub(1));
        for k in (0..n).filter(|&k| k != skip) {
            let mut v = axis(n, k);
            // Two passes of modified Gram–Schmidt keep the basis orthogonal to round-off.
            for _ in 0..2 {
                let c = dot(&v, u);
                v.iter_mut().zip(u.iter()).for_each(|(x, y)| *x -= c * y);
                for b in &vectors {
                    let c = dot(&v, b);
                    v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
                }
            }
            let len = norm(&v);
            vectors.push(v.into_iter().map(|x| x / len).collect());
        }
        HyperplaneBasis {
            normal: u.as_slice().to_vec(),
            vectors,
        }
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Coordinates of the orthogonal projection of `x` onto `u⊥`.
    pub fn project(&self, x: &[f64]) -> Point {
        self.vectors.iter().map(|b| dot(b, x)).collect()
    }

    /// The point of `u⊥ ⊂ ℝⁿ` with the given coordinates.
    pub fn embed(&self, w: &[f64]) -> Point {
        let mut out = vec![0.0; self.normal.len()];
        for (c, b) in w.iter().zip(&self.vectors) {
            out.iter_mut().zip(b).for_each(|(o, bi)| *o += c * bi);
        }
        out
    }
}
