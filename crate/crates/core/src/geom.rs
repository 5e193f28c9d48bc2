//! Points, segments, balls and curves.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{check_delta, Error, Result};

/// Absolute tolerance used for every comparison against δ.
pub const EPS: f64 = 1e-9;

/// A point in R^d.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    /// Builds a point without validation. Use [`Point::try_new`] for untrusted input.
    pub fn new(coords: Vec<f64>) -> Point {
        Point { coords }
    }

    pub fn try_new(coords: Vec<f64>) -> Result<Point> {
        if coords.is_empty() {
            return Err(Error::Empty("point has no coordinates"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Point { coords })
    }

    pub fn x(x: f64) -> Point {
        Point::new(vec![x])
    }

    pub fn xy(x: f64, y: f64) -> Point {
        Point::new(vec![x, y])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// `(1 - t) a + t b`.
    pub fn lerp(a: &Point, b: &Point, t: f64) -> Point {
        Point::new(lerp(&a.coords, &b.coords, t))
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Point {
        Point::new(coords)
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(coords: [f64; N]) -> Point {
        Point::new(coords.to_vec())
    }
}

pub(crate) fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

#[inline]
pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub(crate) fn dist_raw(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(dist_sq(a, b))
}

/// True when `|a - b| <= delta` up to [`EPS`].
#[inline]
pub(crate) fn within(a: &[f64], b: &[f64], delta: f64) -> bool {
    let r = delta + EPS;
    dist_sq(a, b) <= r * r
}

fn same_dim(p: &Point, q: &Point) -> Result<()> {
    if p.dim() == q.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        })
    }
}

/// Euclidean distance.
pub fn dist(p: &Point, q: &Point) -> Result<f64> {
    same_dim(p, q)?;
    Ok(dist_raw(&p.coords, &q.coords))
}

/// A directed segment `a -> b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Segment> {
        same_dim(&a, &b)?;
        Ok(Segment { a, b })
    }

    pub fn point_at(&self, t: f64) -> Point {
        Point::lerp(&self.a, &self.b, t)
    }
}

pub(crate) fn point_segment_dist_raw(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let len2 = dist_sq(a, b);
    if len2 == 0.0 {
        return dist_raw(p, a);
    }
    let t = (proj(p, a, b) / len2).clamp(0.0, 1.0);
    libm::sqrt(offset_sq(p, a, b, t))
}

/// `(p - a) · (b - a)`.
#[inline]
fn proj(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    p.iter()
        .zip(a)
        .zip(b)
        .map(|((pi, ai), bi)| (pi - ai) * (bi - ai))
        .sum()
}

/// `|p - (a + t (b - a))|²`.
#[inline]
fn offset_sq(p: &[f64], a: &[f64], b: &[f64], t: f64) -> f64 {
    p.iter()
        .zip(a)
        .zip(b)
        .map(|((pi, ai), bi)| {
            let d = pi - ai - t * (bi - ai);
            d * d
        })
        .sum()
}

/// Distance from `p` to the closest point of `s`.
pub fn point_segment_dist(p: &Point, s: &Segment) -> Result<f64> {
    same_dim(p, &s.a)?;
    Ok(point_segment_dist_raw(&p.coords, &s.a.coords, &s.b.coords))
}

/// A closed ball.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Ball> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::InvalidDelta(radius));
        }
        Ok(Ball { center, radius })
    }

    /// Closed containment with tolerance [`EPS`].
    pub fn contains(&self, p: &Point) -> bool {
        within(&self.center.coords, &p.coords, self.radius)
    }
}

/// Parameter interval of segment `a -> b` inside the closed ball `(c, r)`.
///
/// Endpoints within [`EPS`] of 0 or 1 are snapped.
pub(crate) fn clip_raw(c: &[f64], r: f64, a: &[f64], b: &[f64]) -> Option<(f64, f64)> {
    let len2 = dist_sq(a, b);
    if len2 == 0.0 {
        return within(c, a, r).then_some((0.0, 1.0));
    }
    let len = libm::sqrt(len2);
    // Foot of the perpendicular, as an unclamped parameter.
    let tc = proj(c, a, b) / len2;
    let h2 = offset_sq(c, a, b, tc);
    let rr = r + EPS;
    if h2 > rr * rr {
        return None;
    }
    let half = libm::sqrt((r * r - h2).max(0.0)) / len;
    let mut t0 = tc - half;
    let mut t1 = tc + half;
    if t1 < 0.0 {
        return within(c, a, r).then_some((0.0, 0.0));
    }
    if t0 > 1.0 {
        return within(c, b, r).then_some((1.0, 1.0));
    }
    t0 = t0.max(0.0);
    t1 = t1.min(1.0);
    let snap = |t: f64| {
        if t.abs() <= EPS {
            0.0
        } else if (1.0 - t).abs() <= EPS {
            1.0
        } else {
            t
        }
    };
    Some((snap(t0), snap(t1)))
}

/// The closed parameter interval `{t : |center - s(t)| <= radius}`, or `None`.
pub fn ball_segment_clip(ball: &Ball, s: &Segment) -> Result<Option<(f64, f64)>> {
    same_dim(&ball.center, &s.a)?;
    same_dim(&s.a, &s.b)?;
    Ok(clip_raw(
        &ball.center.coords,
        ball.radius,
        &s.a.coords,
        &s.b.coords,
    ))
}

fn clip_point(p: &Point, s: &Segment, delta: f64, last: bool) -> Result<Point> {
    check_delta(delta)?;
    same_dim(p, &s.a)?;
    match clip_raw(&p.coords, delta, &s.a.coords, &s.b.coords) {
        Some((t0, t1)) => Ok(s.point_at(if last { t1 } else { t0 })),
        None => Err(Error::Precondition(alloc::format!(
            "point is farther than {delta} from the segment"
        ))),
    }
}

/// The point of `B(p, δ) ∩ s` closest to `s.a`.
pub fn enter(p: &Point, s: &Segment, delta: f64) -> Result<Point> {
    clip_point(p, s, delta, false)
}

/// The point of `B(p, δ) ∩ s` closest to `s.b`.
pub fn leave(p: &Point, s: &Segment, delta: f64) -> Result<Point> {
    clip_point(p, s, delta, true)
}

/// A nonempty polygonal curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    vertices: Vec<Point>,
}

impl Curve {
    /// Validates that the curve is nonempty, finite and of uniform dimension.
    pub fn new(vertices: Vec<Point>) -> Result<Curve> {
        let first = vertices
            .first()
            .ok_or(Error::Empty("curve has no vertices"))?;
        let d = first.dim();
        if d == 0 {
            return Err(Error::Empty("point has no coordinates"));
        }
        for v in &vertices {
            if v.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.dim(),
                });
            }
            if v.coords.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        Ok(Curve { vertices })
    }

    /// Curve in R^1 from plain values.
    pub fn from_values(values: &[f64]) -> Result<Curve> {
        Curve::new(values.iter().map(|&x| Point::x(x)).collect())
    }

    /// Curve in R^2 from `(x, y)` pairs.
    pub fn from_xy(pts: &[(f64, f64)]) -> Result<Curve> {
        Curve::new(pts.iter().map(|&(x, y)| Point::xy(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false; curves are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Vertex by 0-based index.
    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn first(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Point {
        &self.vertices[self.vertices.len() - 1]
    }

    /// Edge from vertex `i` to vertex `i + 1` (0-based).
    pub fn edge(&self, i: usize) -> Segment {
        Segment {
            a: self.vertices[i].clone(),
            b: self.vertices[i + 1].clone(),
        }
    }

    /// Point at 1-based parameter `t ∈ [1, m]`: `point_at(i + α) = (1-α) v_i + α v_{i+1}`.
    pub fn point_at(&self, t: f64) -> Point {
        let m = self.len();
        let t = t.clamp(1.0, m as f64);
        let i = libm::floor(t) as usize;
        if i >= m {
            return self.last().clone();
        }
        let alpha = t - i as f64;
        Point::lerp(&self.vertices[i - 1], &self.vertices[i], alpha)
    }

    pub fn reversed(&self) -> Curve {
        let mut v = self.vertices.clone();
        v.reverse();
        Curve { vertices: v }
    }

    pub(crate) fn from_vec_unchecked(vertices: Vec<Point>) -> Curve {
        debug_assert!(!vertices.is_empty());
        Curve { vertices }
    }

    pub(crate) fn check_same_dim(&self, other: &Curve) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }
}

/// Which ends of a curve [`clip_sided`] trims.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClipSide {
    Both,
    Start,
    End,
}

/// `⟨leave(s, π1π2), π2, …, π_{m-1}, enter(t, π_{m-1}π_m)⟩`.
///
/// Requires `|π| > 2`. A clipped end that lands exactly on its inner
/// neighbour is not emitted twice.
pub fn clip(s: &Point, t: &Point, pi: &Curve, delta: f64) -> Result<Curve> {
    if pi.len() <= 2 {
        return Err(Error::Invalid(alloc::format!(
            "clip needs more than two vertices, got {}",
            pi.len()
        )));
    }
    clip_sided(Some(s), Some(t), pi, delta)
}

/// `clip(s, ·, π)`: trims only the start. Requires `|π| >= 2`.
pub fn clip_start(s: &Point, pi: &Curve, delta: f64) -> Result<Curve> {
    clip_sided(Some(s), None, pi, delta)
}

/// `clip(·, t, π)`: trims only the end. Requires `|π| >= 2`.
pub fn clip_end(t: &Point, pi: &Curve, delta: f64) -> Result<Curve> {
    clip_sided(None, Some(t), pi, delta)
}

fn clip_sided(s: Option<&Point>, t: Option<&Point>, pi: &Curve, delta: f64) -> Result<Curve> {
    let m = pi.len();
    if m < 2 {
        return Err(Error::Invalid("clip needs at least two vertices".into()));
    }
    let mut out: Vec<Point> = Vec::with_capacity(m);
    out.push(match s {
        Some(s) => leave(s, &pi.edge(0), delta)?,
        None => pi.vertices[0].clone(),
    });
    out.extend(pi.vertices[1..m - 1].iter().cloned());
    out.push(match t {
        Some(t) => enter(t, &pi.edge(m - 2), delta)?,
        None => pi.vertices[m - 1].clone(),
    });
    if s.is_some() && out.len() > 1 && out[0] == out[1] {
        out.remove(0);
    }
    let n = out.len();
    if t.is_some() && n > 1 && out[n - 1] == out[n - 2] {
        out.pop();
    }
    Ok(Curve::from_vec_unchecked(out))
}

/// Minimum enclosing ball with the default seed 0.
pub fn min_enclosing_ball(pts: &[Point]) -> Result<Ball> {
    min_enclosing_ball_seeded(pts, 0)
}

/// Randomized incremental minimum enclosing ball (move-to-front), in any dimension.
///
/// The seed only controls the insertion order.
pub fn min_enclosing_ball_seeded(pts: &[Point], seed: u64) -> Result<Ball> {
    let first = pts.first().ok_or(Error::Empty("no points"))?;
    let d = first.dim();
    for p in pts {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.dim(),
            });
        }
    }
    let (c, r) = meb_raw(pts, seed);
    Ok(Ball {
        center: Point::new(c),
        radius: r,
    })
}

pub(crate) fn meb_raw(pts: &[Point], seed: u64) -> (Vec<f64>, f64) {
    let d = pts[0].dim();
    if pts.len() == 1 {
        return (pts[0].coords.clone(), 0.0);
    }
    if d == 1 {
        let (lo, hi) = pts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.coords[0]), hi.max(p.coords[0]))
            });
        return (vec![(lo + hi) / 2.0], (hi - lo) / 2.0);
    }
    let mut order: Vec<usize> = (0..pts.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let mut support = Vec::with_capacity(d + 1);
    let (c, _) = mtf(pts, &mut order, pts.len(), &mut support, d);
    // The radius is re-measured so that enclosure holds exactly in floating point.
    let r2 = pts
        .iter()
        .map(|p| dist_sq(&p.coords, &c))
        .fold(0.0f64, f64::max);
    (c, libm::sqrt(r2))
}

fn mtf(
    pts: &[Point],
    order: &mut Vec<usize>,
    end: usize,
    support: &mut Vec<usize>,
    d: usize,
) -> (Vec<f64>, f64) {
    let (mut c, mut r2) = ball_through(pts, support, d);
    if support.len() == d + 1 {
        return (c, r2);
    }
    for i in 0..end {
        let p = order[i];
        let q = &pts[p].coords;
        if r2 < 0.0 || dist_sq(q, &c) > r2 + 1e-12 * r2.max(1.0) {
            support.push(p);
            let b = mtf(pts, order, i, support, d);
            c = b.0;
            r2 = b.1;
            support.pop();
            order[..=i].rotate_right(1);
        }
    }
    (c, r2)
}

/// Smallest ball with all of `support` on its boundary. Negative radius
/// squared encodes the empty ball.
fn ball_through(pts: &[Point], support: &[usize], d: usize) -> (Vec<f64>, f64) {
    match support.len() {
        0 => (vec![0.0; d], -1.0),
        1 => (pts[support[0]].coords.clone(), 0.0),
        k => {
            let p0 = &pts[support[0]].coords;
            let q: Vec<Vec<f64>> = support[1..]
                .iter()
                .map(|&i| pts[i].coords.iter().zip(p0).map(|(a, b)| a - b).collect())
                .collect();
            let n = k - 1;
            let mut a = vec![vec![0.0; n + 1]; n];
            for i in 0..n {
                for j in 0..n {
                    a[i][j] = 2.0 * dot(&q[i], &q[j]);
                }
                a[i][n] = dot(&q[i], &q[i]);
            }
            match solve(&mut a, n) {
                Some(lambda) => {
                    let mut c = p0.clone();
                    for (l, qi) in lambda.iter().zip(&q) {
                        for (cj, qij) in c.iter_mut().zip(qi) {
                            *cj += l * qij;
                        }
                    }
                    let r2 = dist_sq(&c, p0);
                    (c, r2)
                }
                None => {
                    // Affinely dependent support: use the farthest pair as a diameter.
                    let mut best = (0.0, support[0], support[0]);
                    for (x, &i) in support.iter().enumerate() {
                        for &j in &support[x + 1..] {
                            let dd = dist_sq(&pts[i].coords, &pts[j].coords);
                            if dd > best.0 {
                                best = (dd, i, j);
                            }
                        }
                    }
                    let c = lerp(&pts[best.1].coords, &pts[best.2].coords, 0.5);
                    (c, best.0 / 4.0)
                }
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting on an augmented `n × (n+1)` matrix.
fn solve(a: &mut [Vec<f64>], n: usize) -> Option<Vec<f64>> {
    let scale = a
        .iter()
        .flat_map(|r| r[..n].iter())
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, piv);
        let (top, rest) = a.split_at_mut(col + 1);
        let p = &top[col];
        for r in rest.iter_mut() {
            let f = r[col] / p[col];
            for (x, y) in r[col..=n].iter_mut().zip(&p[col..=n]) {
                *x -= f * y;
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = a[row][n];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}
