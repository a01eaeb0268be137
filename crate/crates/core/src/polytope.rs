//! Convex polytopes in dimensions 1–3, stored by their extreme points.
//!
//! Hulls are computed with Andrew's monotone chain in the plane and an
//! incremental algorithm with facet adjacency in space. Lower-dimensional
//! point sets are first-class: they produce a polytope whose `affine_dim` is
//! smaller than `dim`, with volume zero and valid support function.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, cross, dot3, lex_cmp, norm3, sub3, to3, Point};

/// Points closer than this (relative to the point-set extent) to a lower
/// dimensional affine subspace are treated as lying in it.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Angular tolerance when deciding whether incident facet normals are independent.
const NORMAL_RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolytopeJson", into = "PolytopeJson")]
pub struct Polytope {
    dim: usize,
    affine_dim: usize,
    /// Extreme points. Counter-clockwise in the plane (full-dimensional case),
    /// lexicographically sorted otherwise.
    vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    vertices: Vec<Point>,
}

impl TryFrom<PolytopeJson> for Polytope {
    type Error = Error;

    fn try_from(raw: PolytopeJson) -> Result<Self> {
        hull(&raw.vertices, raw.dim)
    }
}

impl From<Polytope> for PolytopeJson {
    fn from(p: Polytope) -> Self {
        PolytopeJson {
            dim: p.dim,
            vertices: p.vertices,
        }
    }
}

/// Convex hull of `points` in `ℝ^dim`, `dim ∈ {1, 2, 3}`.
pub fn hull(points: &[Point], dim: usize) -> Result<Polytope> {
    if points.is_empty() {
        return Err(Error::param("hull of an empty point set"));
    }
    if !(1..=3).contains(&dim) {
        return Err(Error::capacity(format!("polytope in dimension {dim}"), "1 <= dim <= 3"));
    }
    for p in points {
        Error::check_dim(dim, p.len())?;
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("hull point".into()));
        }
    }
    let (affine_dim, mut vertices) = match dim {
        1 => hull1(points),
        2 => hull2(points),
        _ => {
            let pts: Vec<[f64; 3]> = points.iter().map(|p| to3(p)).collect();
            match hull3(&pts) {
                Hull3::Point(i) => (0, vec![points[i].clone()]),
                Hull3::Segment(i, j) => (1, vec![points[i].clone(), points[j].clone()]),
                Hull3::Planar { ring, .. } => (2, ring.iter().map(|&i| points[i].clone()).collect()),
                Hull3::Solid(s) => (3, s.extreme_vertices().into_iter().map(|i| points[i].clone()).collect()),
            }
        }
    };
    if !(dim == 2 && affine_dim == 2) {
        vertices.sort_by(|a, b| lex_cmp(a, b));
    }
    Ok(Polytope {
        dim,
        affine_dim,
        vertices,
    })
}

fn extent(points: &[Point]) -> f64 {
    let dim = points[0].len();
    (0..dim)
        .map(|k| {
            let (lo, hi) = points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])));
            (hi - lo).powi(2)
        })
        .sum::<f64>()
        .sqrt()
}

fn hull1(points: &[Point]) -> (usize, Vec<Point>) {
    let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
    if hi - lo <= DEGENERACY_TOL * hi.abs().max(lo.abs()) {
        (0, vec![vec![lo]])
    } else {
        (1, vec![vec![lo], vec![hi]])
    }
}

#[inline]
fn cross2(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Indices of the counter-clockwise hull of planar points (monotone chain),
/// dropping points within `tol` (area units) of collinearity.
fn monotone_chain(points: &[[f64; 2]], tol: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| lex_cmp(&points[a], &points[b]));
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && cross2(&points[lower[lower.len() - 2]], &points[lower[lower.len() - 1]], &points[i]) <= tol
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && cross2(&points[upper[upper.len() - 2]], &points[upper[upper.len() - 1]], &points[i]) <= tol
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Affine dimension and the extreme points of a planar configuration given
/// in 2D coordinates. Returns indices.
fn planar_hull_indices(points: &[[f64; 2]], scale: f64) -> (usize, Vec<usize>) {
    let tol = DEGENERACY_TOL * scale;
    let i0 = (0..points.len())
        .min_by(|&a, &b| lex_cmp(&points[a], &points[b]))
        .unwrap_or(0);
    let p0 = points[i0];
    let dist = |p: &[f64; 2]| ((p[0] - p0[0]).powi(2) + (p[1] - p0[1]).powi(2)).sqrt();
    let i1 = (0..points.len())
        .max_by(|&a, &b| dist(&points[a]).total_cmp(&dist(&points[b])))
        .unwrap_or(0);
    let len = dist(&points[i1]);
    if len <= tol {
        return (0, vec![i0]);
    }
    let off = (0..points.len())
        .map(|i| cross2(&p0, &points[i1], &points[i]).abs() / len)
        .fold(0.0, f64::max);
    if off <= tol {
        // Collinear: the two extremes along the line.
        let dir = [(points[i1][0] - p0[0]) / len, (points[i1][1] - p0[1]) / len];
        let t = |p: &[f64; 2]| (p[0] - p0[0]) * dir[0] + (p[1] - p0[1]) * dir[1];
        let lo = (0..points.len()).min_by(|&a, &b| t(&points[a]).total_cmp(&t(&points[b]))).unwrap_or(0);
        let hi = (0..points.len()).max_by(|&a, &b| t(&points[a]).total_cmp(&t(&points[b]))).unwrap_or(0);
        return (1, vec![lo, hi]);
    }
    (2, monotone_chain(points, tol * scale))
}

fn hull2(points: &[Point]) -> (usize, Vec<Point>) {
    let pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    let (affine_dim, idx) = planar_hull_indices(&pts, extent(points));
    (affine_dim, idx.into_iter().map(|i| points[i].clone()).collect())
}

pub(crate) enum Hull3 {
    Point(usize),
    Segment(usize, usize),
    Planar {
        /// Unit normal of the supporting plane.
        normal: [f64; 3],
        /// Counter-clockwise around `normal`.
        ring: Vec<usize>,
    },
    Solid(Solid),
}

#[derive(Clone, Copy)]
struct Face {
    v: [usize; 3],
    normal: [f64; 3],
    offset: f64,
    alive: bool,
}

impl Face {
    fn new(points: &[[f64; 3]], v: [usize; 3]) -> Self {
        let n = cross(sub3(points[v[1]], points[v[0]]), sub3(points[v[2]], points[v[0]]));
        let len = norm3(n);
        let normal = if len > 0.0 { [n[0] / len, n[1] / len, n[2] / len] } else { [0.0; 3] };
        Face {
            v,
            normal,
            offset: dot3(normal, points[v[0]]),
            alive: true,
        }
    }

    #[inline]
    fn distance(&self, p: [f64; 3]) -> f64 {
        dot3(self.normal, p) - self.offset
    }
}

/// A full-dimensional triangulated hull; faces are oriented outward.
pub(crate) struct Solid {
    points: Vec<[f64; 3]>,
    faces: Vec<[usize; 3]>,
}

impl Solid {
    fn face_normal(&self, f: &[usize; 3]) -> [f64; 3] {
        let p = &self.points;
        let n = cross(sub3(p[f[1]], p[f[0]]), sub3(p[f[2]], p[f[0]]));
        let len = norm3(n);
        if len == 0.0 {
            return [0.0; 3];
        }
        [n[0] / len, n[1] / len, n[2] / len]
    }

    /// Hull vertices at which the incident facet normals span `ℝ³`; points in
    /// the relative interior of a facet or an edge are dropped.
    fn extreme_vertices(&self) -> Vec<usize> {
        let mut incident: HashMap<usize, Vec<[f64; 3]>> = HashMap::new();
        for f in &self.faces {
            let n = self.face_normal(f);
            for &v in f {
                incident.entry(v).or_default().push(n);
            }
        }
        let mut out: Vec<usize> = incident
            .into_iter()
            .filter(|(_, normals)| normals_span_space(normals))
            .map(|(v, _)| v)
            .collect();
        out.sort_unstable();
        out
    }

    pub(crate) fn volume(&self) -> f64 {
        let c = self.centroid();
        self.faces
            .iter()
            .map(|f| {
                let a = sub3(self.points[f[0]], c);
                let b = sub3(self.points[f[1]], c);
                let d = sub3(self.points[f[2]], c);
                dot3(a, cross(b, d))
            })
            .sum::<f64>()
            / 6.0
    }

    pub(crate) fn surface_area(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let p = &self.points;
                norm3(cross(sub3(p[f[1]], p[f[0]]), sub3(p[f[2]], p[f[0]]))) / 2.0
            })
            .sum()
    }

    /// `Σ_edges length · (angle between the outward normals of the two adjacent faces)`.
    pub(crate) fn edge_angle_sum(&self) -> f64 {
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (k, f) in self.faces.iter().enumerate() {
            for e in 0..3 {
                owner.insert((f[e], f[(e + 1) % 3]), k);
            }
        }
        let mut total = 0.0;
        for (&(a, b), &k) in &owner {
            if a > b {
                continue;
            }
            if let Some(&other) = owner.get(&(b, a)) {
                let n1 = self.face_normal(&self.faces[k]);
                let n2 = self.face_normal(&self.faces[other]);
                let angle = norm3(cross(n1, n2)).atan2(dot3(n1, n2));
                total += norm3(sub3(self.points[a], self.points[b])) * angle;
            }
        }
        total
    }

    fn centroid(&self) -> [f64; 3] {
        let mut used: Vec<usize> = self.faces.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let k = used.len() as f64;
        let mut c = [0.0; 3];
        for &i in &used {
            for d in 0..3 {
                c[d] += self.points[i][d] / k;
            }
        }
        c
    }
}

fn normals_span_space(normals: &[[f64; 3]]) -> bool {
    let n0 = normals[0];
    let Some(n1) = normals.iter().find(|n| norm3(cross(n0, **n)) > NORMAL_RANK_TOL) else {
        return false;
    };
    let c = cross(n0, *n1);
    let c_len = norm3(c);
    normals.iter().any(|n| (dot3(c, *n) / c_len).abs() > NORMAL_RANK_TOL)
}

fn extent3(points: &[[f64; 3]]) -> f64 {
    (0..3)
        .map(|k| {
            let (lo, hi) = points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])));
            (hi - lo).powi(2)
        })
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn hull3(points: &[[f64; 3]]) -> Hull3 {
    let scale = extent3(points);
    let tol = DEGENERACY_TOL * scale;
    let n = points.len();
    let i0 = (0..n).min_by(|&a, &b| lex_cmp(&points[a], &points[b])).unwrap_or(0);
    let p0 = points[i0];
    let i1 = (0..n)
        .max_by(|&a, &b| norm3(sub3(points[a], p0)).total_cmp(&norm3(sub3(points[b], p0))))
        .unwrap_or(0);
    let len = norm3(sub3(points[i1], p0));
    if len <= tol || scale == 0.0 {
        return Hull3::Point(i0);
    }
    let dir = {
        let d = sub3(points[i1], p0);
        [d[0] / len, d[1] / len, d[2] / len]
    };
    let line_dist = |p: [f64; 3]| norm3(cross(sub3(p, p0), dir));
    let i2 = (0..n)
        .max_by(|&a, &b| line_dist(points[a]).total_cmp(&line_dist(points[b])))
        .unwrap_or(0);
    if line_dist(points[i2]) <= tol {
        let t = |p: [f64; 3]| dot3(sub3(p, p0), dir);
        let lo = (0..n).min_by(|&a, &b| t(points[a]).total_cmp(&t(points[b]))).unwrap_or(0);
        let hi = (0..n).max_by(|&a, &b| t(points[a]).total_cmp(&t(points[b]))).unwrap_or(0);
        return Hull3::Segment(lo, hi);
    }
    let normal = {
        let c = cross(sub3(points[i1], p0), sub3(points[i2], p0));
        let l = norm3(c);
        [c[0] / l, c[1] / l, c[2] / l]
    };
    let plane_dist = |p: [f64; 3]| dot3(sub3(p, p0), normal);
    let i3 = (0..n)
        .max_by(|&a, &b| plane_dist(points[a]).abs().total_cmp(&plane_dist(points[b]).abs()))
        .unwrap_or(0);
    if plane_dist(points[i3]).abs() <= tol {
        let e2 = cross(normal, dir);
        let coords: Vec<[f64; 2]> = points
            .iter()
            .map(|p| {
                let d = sub3(*p, p0);
                [dot3(d, dir), dot3(d, e2)]
            })
            .collect();
        let (_, ring) = planar_hull_indices(&coords, scale);
        return Hull3::Planar { normal, ring };
    }
    Hull3::Solid(incremental_hull(points, [i0, i1, i2, i3], tol))
}

fn incremental_hull(points: &[[f64; 3]], seed: [usize; 4], tol: f64) -> Solid {
    let mut centre = [0.0; 3];
    for &i in &seed {
        for d in 0..3 {
            centre[d] += points[i][d] / 4.0;
        }
    }
    let mut faces: Vec<Face> = Vec::new();
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();

    let add_face = |faces: &mut Vec<Face>, edges: &mut HashMap<(usize, usize), usize>, v: [usize; 3]| {
        let k = faces.len();
        faces.push(Face::new(points, v));
        for e in 0..3 {
            edges.insert((v[e], v[(e + 1) % 3]), k);
        }
    };

    let [a, b, c, d] = seed;
    for tri in [[a, b, c], [a, b, d], [a, c, d], [b, c, d]] {
        let f = Face::new(points, tri);
        let oriented = if f.distance(centre) > 0.0 { [tri[0], tri[2], tri[1]] } else { tri };
        add_face(&mut faces, &mut edges, oriented);
    }

    let mut order: Vec<usize> = (0..points.len()).filter(|i| !seed.contains(i)).collect();
    let far = |i: usize| norm3(sub3(points[i], centre));
    order.sort_by(|&x, &y| far(y).total_cmp(&far(x)).then(x.cmp(&y)));

    let mut visible = Vec::new();
    let mut queue = VecDeque::new();
    let mut mark: Vec<bool> = Vec::new();
    for p_idx in order {
        let p = points[p_idx];
        let start = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive)
            .map(|(k, f)| (k, f.distance(p)))
            .max_by(|x, y| x.1.total_cmp(&y.1));
        let Some((start, dist)) = start else { break };
        if dist <= tol {
            continue;
        }
        mark.clear();
        mark.resize(faces.len(), false);
        visible.clear();
        queue.clear();
        queue.push_back(start);
        mark[start] = true;
        while let Some(k) = queue.pop_front() {
            visible.push(k);
            let v = faces[k].v;
            for e in 0..3 {
                if let Some(&nb) = edges.get(&(v[(e + 1) % 3], v[e])) {
                    if !mark[nb] && faces[nb].alive && faces[nb].distance(p) > tol {
                        mark[nb] = true;
                        queue.push_back(nb);
                    }
                }
            }
        }
        let mut horizon = Vec::new();
        for &k in &visible {
            let v = faces[k].v;
            for e in 0..3 {
                let (from, to) = (v[e], v[(e + 1) % 3]);
                match edges.get(&(to, from)) {
                    Some(&nb) if mark[nb] => {}
                    _ => horizon.push((from, to)),
                }
            }
        }
        for &k in &visible {
            faces[k].alive = false;
            let v = faces[k].v;
            for e in 0..3 {
                let key = (v[e], v[(e + 1) % 3]);
                if edges.get(&key) == Some(&k) {
                    edges.remove(&key);
                }
            }
        }
        for (from, to) in horizon {
            add_face(&mut faces, &mut edges, [from, to, p_idx]);
        }
    }
    Solid {
        points: points.to_vec(),
        faces: faces.into_iter().filter(|f| f.alive).map(|f| f.v).collect(),
    }
}

impl Polytope {
    /// A single point.
    pub fn point(p: Point) -> Result<Self> {
        let dim = p.len();
        hull(&[p], dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// `max ⟨x, u⟩` over the vertices; `u` need not be normalized.
    pub fn support(&self, u: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| geom::dot(v, u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn map_points(&self, f: impl Fn(&[f64]) -> Point, dim: usize) -> Result<Polytope> {
        let pts: Vec<Point> = self.vertices.iter().map(|v| f(v)).collect();
        hull(&pts, dim)
    }

    pub fn translate(&self, t: &[f64]) -> Polytope {
        let mut p = self.clone();
        for v in &mut p.vertices {
            v.iter_mut().zip(t).for_each(|(x, y)| *x += y);
        }
        p
    }

    /// `s·P` for `s ≥ 0`.
    pub fn scale(&self, s: f64) -> Result<Polytope> {
        if s == 0.0 {
            return Polytope::point(vec![0.0; self.dim]);
        }
        if s > 0.0 {
            let mut p = self.clone();
            for v in &mut p.vertices {
                v.iter_mut().for_each(|x| *x *= s);
            }
            Ok(p)
        } else {
            self.map_points(|v| geom::scale(v, s), self.dim)
        }
    }

    /// Minkowski sum, as the hull of all pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        Error::check_dim(self.dim, other.dim)?;
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(geom::add(a, b));
            }
        }
        hull(&pts, self.dim)
    }

    pub(crate) fn solid(&self) -> Option<Solid> {
        if self.dim != 3 || self.affine_dim != 3 {
            return None;
        }
        let pts: Vec<[f64; 3]> = self.vertices.iter().map(|p| to3(p)).collect();
        match hull3(&pts) {
            Hull3::Solid(s) => Some(s),
            _ => None,
        }
    }

    /// Counter-clockwise 2D coordinates of a planar polygon (2D polytope, or a
    /// flat polytope in 3D expressed in an in-plane basis).
    fn planar_ring(&self) -> Vec<[f64; 2]> {
        match (self.dim, self.affine_dim) {
            (2, _) => self.vertices.iter().map(|v| [v[0], v[1]]).collect(),
            (3, 2) => {
                let pts: Vec<[f64; 3]> = self.vertices.iter().map(|p| to3(p)).collect();
                match hull3(&pts) {
                    Hull3::Planar { normal, ring } => {
                        let p0 = pts[ring[0]];
                        let d = sub3(pts[ring[1]], p0);
                        let l = norm3(d);
                        let e1 = [d[0] / l, d[1] / l, d[2] / l];
                        let e2 = cross(normal, e1);
                        ring.iter()
                            .map(|&i| {
                                let q = sub3(pts[i], p0);
                                [dot3(q, e1), dot3(q, e2)]
                            })
                            .collect()
                    }
                    _ => Vec::new(),
                }
            }
            _ => Vec::new(),
        }
    }

    /// `affine_dim`-dimensional measure of the polytope (length, area or volume).
    pub fn relative_volume(&self) -> f64 {
        match self.affine_dim {
            0 => 1.0,
            1 => geom::norm(&geom::sub(&self.vertices[1], &self.vertices[0])),
            2 => shoelace(&self.planar_ring()),
            _ => self.solid().map_or(0.0, |s| s.volume()),
        }
    }

    pub fn volume(&self) -> f64 {
        if self.affine_dim == self.dim {
            self.relative_volume()
        } else {
            0.0
        }
    }

    /// Surface area, counting both sides of a body of codimension one
    /// (`|∂K| = 2·vol_{n−1}(K)`), which is the Minkowski-limit convention.
    pub fn surface_area(&self) -> f64 {
        if self.dim == 1 {
            return 2.0;
        }
        if self.affine_dim == self.dim {
            match self.dim {
                2 => perimeter(&self.planar_ring()),
                _ => self.solid().map_or(0.0, |s| s.surface_area()),
            }
        } else if self.affine_dim + 1 == self.dim {
            2.0 * self.relative_volume()
        } else {
            0.0
        }
    }

    /// Perimeter of a planar polygon (a segment counts twice).
    pub fn perimeter(&self) -> Result<f64> {
        match (self.dim, self.affine_dim) {
            (_, 0) => Ok(0.0),
            (_, 1) => Ok(2.0 * self.relative_volume()),
            (2, 2) | (3, 2) => Ok(perimeter(&self.planar_ring())),
            _ => Err(Error::param("perimeter of a solid polytope")),
        }
    }

    /// Exact mean of the support function over the sphere with normalized
    /// measure (`M*`, half the mean width), in dimensions 1–3.
    pub fn mean_support(&self) -> f64 {
        // Translation invariant; a point contributes zero.
        match (self.dim, self.affine_dim) {
            (_, 0) => 0.0,
            (1, _) => self.relative_volume() / 2.0,
            (2, _) => self.perimeter().unwrap_or(0.0) / (2.0 * PI),
            (3, 1) => self.relative_volume() / 4.0,
            (3, 2) => self.perimeter().unwrap_or(0.0) / 8.0,
            _ => self.solid().map_or(0.0, |s| s.edge_angle_sum() / (8.0 * PI)),
        }
    }

    /// Outward unit normals and support values of the edges of a full-dimensional polygon.
    pub fn edge_normals(&self) -> Result<Vec<([f64; 2], f64)>> {
        if self.dim != 2 || self.affine_dim != 2 {
            return Err(Error::param("edge normals need a full-dimensional polygon"));
        }
        let ring = &self.vertices;
        let k = ring.len();
        Ok((0..k)
            .map(|i| {
                let a = &ring[i];
                let b = &ring[(i + 1) % k];
                let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
                let l = (dx * dx + dy * dy).sqrt();
                let n = [dy / l, -dx / l];
                (n, n[0] * a[0] + n[1] * a[1])
            })
            .collect())
    }
}

fn shoelace(ring: &[[f64; 2]]) -> f64 {
    let k = ring.len();
    if k < 3 {
        return 0.0;
    }
    let o = ring[0];
    (1..k - 1)
        .map(|i| cross2(&o, &ring[i], &ring[i + 1]))
        .sum::<f64>()
        .abs()
        / 2.0
}

fn perimeter(ring: &[[f64; 2]]) -> f64 {
    let k = ring.len();
    (0..k)
        .map(|i| {
            let a = ring[i];
            let b = ring[(i + 1) % k];
            ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng as _;

    fn cube_points() -> Vec<Point> {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(vec![(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64]);
        }
        pts
    }

    #[test]
    fn cube_with_centre_and_face_points() {
        let mut pts = cube_points();
        pts.push(vec![0.5, 0.5, 0.5]);
        pts.push(vec![0.5, 0.5, 1.0]);
        pts.push(vec![1.0, 0.5, 0.0]);
        let p = hull(&pts, 3).unwrap();
        assert_eq!(p.vertices().len(), 8);
        assert!((p.volume() - 1.0).abs() < 1e-14);
        assert!((p.surface_area() - 6.0).abs() < 1e-14);
        assert!((p.mean_support() - 0.75).abs() < 1e-14);
    }

    #[test]
    fn collinear_planar_points() {
        let pts: Vec<Point> = (0..5).map(|i| vec![i as f64, 2.0 * i as f64]).collect();
        let p = hull(&pts, 2).unwrap();
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.volume(), 0.0);
        assert!((p.surface_area() - 2.0 * 80f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn flat_square_in_space() {
        let pts = vec![
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![1.0, 1.0, 0.0],
            vec![0.5, 0.5, 0.0],
        ];
        let p = hull(&pts, 3).unwrap();
        assert_eq!(p.affine_dim(), 2);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.volume(), 0.0);
        assert!((p.surface_area() - 2.0).abs() < 1e-14);
        assert!((p.mean_support() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn square_is_counter_clockwise_with_normals() {
        let pts = vec![vec![1.0, 1.0], vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.0]];
        let p = hull(&pts, 2).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!((p.volume() - 1.0).abs() < 1e-15);
        for (n, h) in p.edge_normals().unwrap() {
            let c = [0.5, 0.5];
            assert!(n[0] * c[0] + n[1] * c[1] < h);
        }
    }

    #[test]
    fn random_ball_hull_is_monotone() {
        let mut r = crate::rng::rng(42);
        let mut pts: Vec<Point> = Vec::new();
        let mut last = 0.0;
        while pts.len() < 100 {
            let p: Vec<f64> = (0..3).map(|_| r.random_range(-1.0..1.0)).collect();
            if geom::norm(&p) > 1.0 {
                continue;
            }
            pts.push(p);
            if pts.len() >= 4 {
                let v = hull(&pts, 3).unwrap().volume();
                assert!(v >= last - 1e-12);
                last = v;
            }
        }
        assert!(last < 4.0 * PI / 3.0 && last > 0.0);
    }

    #[test]
    fn degenerate_inputs() {
        let p = hull(&[vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]], 3).unwrap();
        assert_eq!(p.affine_dim(), 0);
        assert!(hull(&[], 2).is_err());
        assert!(hull(&[vec![0.0; 4]], 4).is_err());
        assert!(hull(&[vec![0.0, 1.0]], 3).is_err());
    }

    #[test]
    fn json_round_trip_rehulls() {
        let p: Polytope = serde_json::from_str(r#"{"dim":2,"vertices":[[0,0],[1,0],[0.5,0],[0,1]]}"#).unwrap();
        assert_eq!(p.vertices().len(), 3);
        let again: Polytope = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(p, again);
    }
}
