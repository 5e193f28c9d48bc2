//! Minimum-vertex curves within Fréchet distance δ of a planar polyline.
//!
//! The search is exact over a finite candidate vertex set: the vertices of π,
//! points on the δ-circles around them, offsets from its edges, centres of
//! enclosing balls of its windows and a lattice of spacing δ/2 inside the
//! δ-tube. For each candidate the search keeps the reachable part of the
//! free-space row `π × {c}` and extends it one link at a time.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::dag::cell_exit;
use crate::error::{check_delta, Error, Result};
use crate::frechet::{decide_continuous, FreeSpaceDiagram};
use crate::geom::{clip_raw, meb_raw, point_segment_dist_raw, within, Curve, Point};

/// Result of a minimum-vertex computation.
#[derive(Clone, Debug, PartialEq)]
pub struct MvResult {
    /// Vertices strictly between the anchors (all vertices when unanchored).
    pub vertices: Vec<Point>,
    pub start: Option<Point>,
    pub end: Option<Point>,
    /// For anchored results obtained through the padded curve: whether the
    /// extracted curve has at most as many vertices as the padded optimum.
    pub within_bound: bool,
    /// False when the anchored answer came from the direct pinned search.
    pub via_reduction: bool,
}

impl MvResult {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_anchored(&self) -> bool {
        self.start.is_some() || self.end.is_some()
    }

    /// Anchors and interior as one curve.
    pub fn full_curve(&self) -> Result<Curve> {
        let mut v = Vec::with_capacity(self.vertices.len() + 2);
        v.extend(self.start.iter().cloned());
        v.extend(self.vertices.iter().cloned());
        v.extend(self.end.iter().cloned());
        Curve::new(v)
    }
}

/// One anchor for [`mv_one_sided`].
#[derive(Clone, Debug, PartialEq)]
pub enum Anchor {
    Start(Point),
    End(Point),
}

/// Fewest-vertex curve ζ with `d_F(π, ζ) ≤ δ`.
pub fn mv_unanchored(pi: &Curve, delta: f64) -> Result<MvResult> {
    check_delta(delta)?;
    check_planar(pi)?;
    let vertices = unanchored_vertices(pi, delta)?;
    Ok(MvResult {
        vertices,
        start: None,
        end: None,
        within_bound: true,
        via_reduction: false,
    })
}

/// Fewest interior vertices ζ with `d_F(π, s∘ζ∘t) ≤ δ`.
pub fn mv_anchored(s: &Point, t: &Point, pi: &Curve, delta: f64) -> Result<MvResult> {
    check_delta(delta)?;
    check_planar(pi)?;
    reduce(pi, delta, Some(s), Some(t))
}

/// One-anchor variant: `d_F(π, s∘ζ) ≤ δ` or `d_F(π, ζ∘t) ≤ δ`.
pub fn mv_one_sided(anchor: &Anchor, pi: &Curve, delta: f64) -> Result<MvResult> {
    check_delta(delta)?;
    check_planar(pi)?;
    match anchor {
        Anchor::Start(s) => reduce(pi, delta, Some(s), None),
        Anchor::End(t) => reduce(pi, delta, None, Some(t)),
    }
}

/// Fewest-vertex curve within δ of π whose first and/or last vertex is fixed,
/// found by searching directly with the pins. Returns the whole curve.
pub fn mv_pinned(
    pi: &Curve,
    delta: f64,
    start: Option<&Point>,
    end: Option<&Point>,
) -> Result<Vec<Point>> {
    check_delta(delta)?;
    check_planar(pi)?;
    check_anchors(pi, delta, start, end)?;
    let extra: Vec<&Point> = start.iter().chain(end.iter()).copied().collect();
    let search = Search::new(pi, delta, &extra);
    let find = |p: Option<&Point>| p.map(|p| search.index_of(p.coords()));
    let path = search
        .run(find(start), find(end))
        .ok_or_else(|| Error::Invalid("no candidate curve reaches the end of π".into()))?;
    Ok(path
        .into_iter()
        .map(|c| Point::new(search.cands[c].clone()))
        .collect())
}

fn check_planar(pi: &Curve) -> Result<()> {
    if pi.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: pi.dim(),
        });
    }
    Ok(())
}

fn check_anchors(pi: &Curve, delta: f64, s: Option<&Point>, t: Option<&Point>) -> Result<()> {
    for p in s.iter().chain(t.iter()) {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.dim(),
            });
        }
    }
    if let Some(s) = s {
        if !within(s.coords(), pi.first().coords(), delta) {
            return Err(Error::Precondition(
                "start anchor is farther than δ from the first vertex of π".into(),
            ));
        }
    }
    if let Some(t) = t {
        if !within(t.coords(), pi.last().coords(), delta) {
            return Err(Error::Precondition(
                "end anchor is farther than δ from the last vertex of π".into(),
            ));
        }
    }
    Ok(())
}

fn unanchored_vertices(pi: &Curve, delta: f64) -> Result<Vec<Point>> {
    if pi.len() == 1 {
        return Ok(vec![pi.first().clone()]);
    }
    let (center, r) = meb_raw(pi.vertices(), 0);
    if r <= delta {
        return Ok(vec![Point::new(center)]);
    }
    let search = Search::new(pi, delta, &[]);
    let path = search
        .run(None, None)
        .ok_or_else(|| Error::Invalid("no candidate curve reaches the end of π".into()))?;
    Ok(path
        .into_iter()
        .map(|c| Point::new(search.cands[c].clone()))
        .collect())
}

/// `⟨p1,p2,p1,p2,s⟩` with p1, p2 at distance δ from s on the line through s
/// perpendicular to `dir`.
fn pad(s: &Point, dir: (f64, f64), delta: f64) -> [Point; 5] {
    let len = libm::hypot(dir.0, dir.1);
    let (nx, ny) = if len > 0.0 {
        (-dir.1 / len, dir.0 / len)
    } else {
        (1.0, 0.0)
    };
    let (sx, sy) = (s.coords()[0], s.coords()[1]);
    let p1 = Point::xy(sx + delta * nx, sy + delta * ny);
    let p2 = Point::xy(sx - delta * nx, sy - delta * ny);
    [p1.clone(), p2.clone(), p1, p2, s.clone()]
}

fn direction(a: &Point, b: &Point) -> (f64, f64) {
    (b.coords()[0] - a.coords()[0], b.coords()[1] - a.coords()[1])
}

fn reduce(pi: &Curve, delta: f64, s: Option<&Point>, t: Option<&Point>) -> Result<MvResult> {
    check_anchors(pi, delta, s, t)?;
    let m = pi.len();
    let mut padded = Vec::with_capacity(m + 10);
    if let Some(s) = s {
        let dir = if m > 1 {
            direction(pi.vertex(0), pi.vertex(1))
        } else {
            (0.0, 0.0)
        };
        padded.extend(pad(s, dir, delta));
    }
    padded.extend(pi.vertices().iter().cloned());
    if let Some(t) = t {
        let dir = if m > 1 {
            direction(pi.vertex(m - 2), pi.vertex(m - 1))
        } else {
            (0.0, 0.0)
        };
        let mut q = pad(t, dir, delta);
        q.reverse();
        padded.extend(q);
    }
    let padded = Curve::from_vec_unchecked(padded);
    let sigma = Curve::from_vec_unchecked(unanchored_vertices(&padded, delta)?);

    if let Some(full) = extract(pi, &padded, &sigma, delta, s, t)? {
        let within_bound = full.len() <= sigma.len();
        debug_assert!(
            within_bound,
            "extracted anchored curve exceeds the padded optimum"
        );
        return Ok(finish(full, s, t, within_bound, true));
    }
    let full = mv_pinned(pi, delta, s, t)?;
    Ok(finish(full, s, t, true, false))
}

fn finish(
    mut full: Vec<Point>,
    s: Option<&Point>,
    t: Option<&Point>,
    within_bound: bool,
    via_reduction: bool,
) -> MvResult {
    if t.is_some() {
        full.pop();
    }
    if s.is_some() {
        full.remove(0);
    }
    MvResult {
        vertices: full,
        start: s.cloned(),
        end: t.cloned(),
        within_bound,
        via_reduction,
    }
}

/// Cuts σ′ at the points matched to π₁ and π_m and reattaches the anchors,
/// keeping the shortest variant that passes the decision procedure.
fn extract(
    pi: &Curve,
    padded: &Curve,
    sigma: &Curve,
    delta: f64,
    s: Option<&Point>,
    t: Option<&Point>,
) -> Result<Option<Vec<Point>>> {
    let Some(path) = FreeSpaceDiagram::new(padded, sigma, delta)?.feasible_path() else {
        return Ok(None);
    };
    let off = if s.is_some() { 5.0 } else { 0.0 };
    let m = pi.len() as f64;
    let y = if s.is_some() {
        first_at(&path, off + 1.0)
    } else {
        1.0
    };
    let z = if t.is_some() {
        last_at(&path, off + m)
    } else {
        sigma.len() as f64
    };
    let core = subcurve(sigma, y, z.max(y));

    let starts: &[bool] = if s.is_some() {
        &[true, false]
    } else {
        &[false]
    };
    let ends: &[bool] = if t.is_some() {
        &[true, false]
    } else {
        &[false]
    };
    let mut best: Option<Vec<Point>> = None;
    for &replace_s in starts {
        for &replace_t in ends {
            let mut v = core.clone();
            if let Some(s) = s {
                if replace_s {
                    v[0] = s.clone();
                } else {
                    v.insert(0, s.clone());
                }
            }
            if let Some(t) = t {
                let last = v.len() - 1;
                if replace_t && !(last == 0 && s.is_some()) {
                    v[last] = t.clone();
                } else {
                    v.push(t.clone());
                }
            }
            if best.as_ref().is_some_and(|b| b.len() <= v.len()) {
                continue;
            }
            let curve = Curve::from_vec_unchecked(v);
            if decide_continuous(pi, &curve, delta)? {
                best = Some(curve.into_vertices());
            }
        }
    }
    Ok(best)
}

/// Smallest σ′ parameter matched to π′ parameter `u` along `path`.
fn first_at(path: &[(f64, f64)], u: f64) -> f64 {
    for w in path.windows(2) {
        let ((a, p), (b, q)) = (w[0], w[1]);
        if a <= u && u <= b {
            if b - a <= 0.0 {
                return p;
            }
            return p + (q - p) * (u - a) / (b - a);
        }
    }
    path.last().map_or(1.0, |l| l.1)
}

/// Largest σ′ parameter matched to π′ parameter `u` along `path`.
fn last_at(path: &[(f64, f64)], u: f64) -> f64 {
    for w in path.windows(2).rev() {
        let ((a, p), (b, q)) = (w[0], w[1]);
        if a <= u && u <= b {
            if b - a <= 0.0 {
                return q;
            }
            return p + (q - p) * (u - a) / (b - a);
        }
    }
    path.first().map_or(1.0, |f| f.1)
}

/// `σ[a, b]` for 1-based parameters `a ≤ b`, as a vertex list.
fn subcurve(c: &Curve, a: f64, b: f64) -> Vec<Point> {
    let mut out = vec![c.point_at(a)];
    let mut k = libm::floor(a) as usize + 1;
    while k <= c.len() && (k as f64) < b {
        out.push(c.vertex(k - 1).clone());
        k += 1;
    }
    if b > a {
        out.push(c.point_at(b));
    }
    out.dedup();
    out
}

const SEED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Src {
    from: u32,
    snap: u32,
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    lo: f64,
    src: Src,
}

/// Reachable part of the row `π × {c}`: one lower bound per edge of π, plus
/// the two ends of the row.
#[derive(Clone, Debug)]
struct Row {
    cells: Vec<Option<Entry>>,
    col0: Option<Src>,
    end: Option<Src>,
}

impl Row {
    fn empty(m: usize) -> Row {
        Row {
            cells: vec![None; m - 1],
            col0: None,
            end: None,
        }
    }

    fn first(&self) -> Option<usize> {
        if self.col0.is_some() {
            return Some(0);
        }
        self.cells.iter().position(Option::is_some)
    }
}

struct Strip {
    left: Vec<Option<f64>>,
    vfree: Vec<Option<(f64, f64)>>,
    top: Vec<Option<f64>>,
    col0: bool,
    end: bool,
}

#[derive(Clone, Copy)]
enum Target {
    End,
    Col0,
    Cell(usize),
}

struct Search<'a> {
    pi: Vec<&'a [f64]>,
    delta: f64,
    cands: Vec<Vec<f64>>,
    free: Vec<Vec<Option<(f64, f64)>>>,
    last_free: Vec<Option<usize>>,
}

impl<'a> Search<'a> {
    fn new(pi: &'a Curve, delta: f64, extra: &[&Point]) -> Search<'a> {
        let pts: Vec<&[f64]> = pi.vertices().iter().map(Point::coords).collect();
        let cands = candidates(pi, delta, extra);
        let free: Vec<Vec<Option<(f64, f64)>>> = cands
            .iter()
            .map(|c| {
                pts.windows(2)
                    .map(|e| clip_raw(c, delta, e[0], e[1]))
                    .collect()
            })
            .collect();
        let last_free = free
            .iter()
            .map(|f| f.iter().rposition(Option::is_some))
            .collect();
        Search {
            pi: pts,
            delta,
            cands,
            free,
            last_free,
        }
    }

    fn index_of(&self, p: &[f64]) -> usize {
        self.cands
            .iter()
            .position(|c| c.as_slice() == p)
            .expect("anchors are candidates")
    }

    fn m(&self) -> usize {
        self.pi.len()
    }

    fn seed_row(&self, c: usize) -> Row {
        let m = self.m();
        let mut row = Row::empty(m);
        let seed = Src {
            from: SEED,
            snap: 0,
        };
        if !within(&self.cands[c], self.pi[0], self.delta) {
            return row;
        }
        row.col0 = Some(seed);
        if m == 1 {
            row.end = Some(seed);
            return row;
        }
        for e in 0..m - 1 {
            match self.free[c][e] {
                Some((lo, hi)) if lo <= 0.0 => {
                    row.cells[e] = Some(Entry { lo: 0.0, src: seed });
                    if hi < 1.0 {
                        break;
                    }
                    if e == m - 2 {
                        row.end = Some(seed);
                    }
                }
                _ => break,
            }
        }
        row
    }

    /// Propagates `row` (at candidate `c`) through the strip of segment `c d`.
    fn strip(&self, row: &Row, c: usize, d: usize) -> Strip {
        let m = self.m();
        let (a, b) = (&self.cands[c], &self.cands[d]);
        let vfree: Vec<Option<(f64, f64)>> = self
            .pi
            .iter()
            .map(|p| clip_raw(p, self.delta, a, b))
            .collect();
        let mut left = vec![None; m];
        let mut top = vec![None; m - 1];
        if row.col0.is_some() {
            left[0] = vfree[0].filter(|f| f.0 <= 0.0).map(|_| 0.0);
        }
        for e in 0..m - 1 {
            let bottom = row.cells[e].map(|x| x.lo);
            left[e + 1] = cell_exit(vfree[e + 1], bottom.is_some(), left[e]);
            top[e] = cell_exit(self.free[d][e], left[e].is_some(), bottom);
        }
        let reaches_top =
            |r: Option<f64>, f: Option<(f64, f64)>| r.is_some() && f.is_some_and(|f| f.1 >= 1.0);
        let col0 = reaches_top(left[0], vfree[0]);
        let end = reaches_top(left[m - 1], vfree[m - 1])
            || (m > 1 && reaches_top(top[m - 2], self.free[d][m - 2]));
        Strip {
            left,
            vfree,
            top,
            col0,
            end,
        }
    }

    /// Candidate indices of a fewest-vertex curve, honouring optional pins.
    fn run(&self, start: Option<usize>, end: Option<usize>) -> Option<Vec<usize>> {
        let (m, n) = (self.m(), self.cands.len());
        let done = |rows: &[Row]| -> Option<usize> {
            match end {
                Some(e) => rows[e].end.is_some().then_some(e),
                None => rows.iter().position(|r| r.end.is_some()),
            }
        };
        let first: Vec<Row> = (0..n)
            .map(|c| {
                if start.is_none_or(|s| s == c) {
                    self.seed_row(c)
                } else {
                    Row::empty(m)
                }
            })
            .collect();
        let mut changed: Vec<usize> = (0..n).filter(|&c| first[c].first().is_some()).collect();
        let mut snaps = vec![first];
        if let Some(c) = done(&snaps[0]) {
            return Some(self.trace(&snaps, c, 0));
        }
        let max_rounds = m + 3;
        for round in 1..max_rounds {
            let prev = &snaps[round - 1];
            let mut cur = prev.clone();
            let mut improved = vec![false; n];
            for &c in &changed {
                let row = &prev[c];
                let Some(lo_edge) = row.first() else { continue };
                let src = Src {
                    from: c as u32,
                    snap: (round - 1) as u32,
                };
                for d in 0..n {
                    if d == c {
                        continue;
                    }
                    if m > 1 && self.last_free[d].is_none_or(|l| l < lo_edge) {
                        continue;
                    }
                    let st = self.strip(row, c, d);
                    let target = &mut cur[d];
                    for (e, lo) in st.top.iter().enumerate() {
                        if let Some(lo) = *lo {
                            if target.cells[e].is_none_or(|x| lo < x.lo - 1e-12) {
                                target.cells[e] = Some(Entry { lo, src });
                                improved[d] = true;
                            }
                        }
                    }
                    if st.col0 && target.col0.is_none() {
                        target.col0 = Some(src);
                        improved[d] = true;
                    }
                    if st.end && target.end.is_none() {
                        target.end = Some(src);
                        improved[d] = true;
                    }
                }
            }
            snaps.push(cur);
            if let Some(c) = done(&snaps[round]) {
                return Some(self.trace(&snaps, c, round));
            }
            changed = (0..n).filter(|&d| improved[d]).collect();
            if changed.is_empty() {
                return None;
            }
        }
        None
    }

    fn trace(&self, snaps: &[Vec<Row>], mut c: usize, mut snap: usize) -> Vec<usize> {
        let m = self.m();
        let mut out = vec![c];
        let mut target = Target::End;
        loop {
            let row = &snaps[snap][c];
            let src = match target {
                Target::End => row.end,
                Target::Col0 => row.col0,
                Target::Cell(e) => row.cells[e].map(|x| x.src),
            }
            .expect("traced entries are reachable");
            if src.from == SEED {
                break;
            }
            let (p, ps) = (src.from as usize, src.snap as usize);
            let prow = &snaps[ps][p];
            let st = self.strip(prow, p, c);
            // Walk back through the strip: Ok(i) is vertical line i, Err(e) the top of cell e.
            let mut pos: core::result::Result<usize, usize> = match target {
                Target::End => {
                    if st.left[m - 1].is_some() && st.vfree[m - 1].is_some_and(|f| f.1 >= 1.0) {
                        Ok(m - 1)
                    } else {
                        Err(m - 2)
                    }
                }
                Target::Col0 => Ok(0),
                Target::Cell(e) => Err(e),
            };
            target = loop {
                match pos {
                    Err(e) => {
                        if st.left[e].is_some() {
                            pos = Ok(e);
                        } else {
                            break Target::Cell(e);
                        }
                    }
                    Ok(0) => break Target::Col0,
                    Ok(i) => {
                        if prow.cells[i - 1].is_some() {
                            break Target::Cell(i - 1);
                        }
                        pos = Ok(i - 1);
                    }
                }
            };
            debug_assert!(st.top.len() + 1 == m);
            c = p;
            snap = ps;
            out.push(c);
        }
        out.reverse();
        out
    }
}

fn candidates(pi: &Curve, delta: f64, extra: &[&Point]) -> Vec<Vec<f64>> {
    let pts: Vec<&[f64]> = pi.vertices().iter().map(Point::coords).collect();
    let mut seen = BTreeSet::new();
    let mut out: Vec<Vec<f64>> = Vec::new();
    let mut push = |c: Vec<f64>| {
        let key = (c[0].to_bits(), c[1].to_bits());
        if c.iter().all(|x| x.is_finite()) && seen.insert(key) {
            out.push(c);
        }
    };
    for p in extra {
        push(p.coords().to_vec());
    }
    for p in &pts {
        push(p.to_vec());
    }
    if delta <= 0.0 {
        return out;
    }
    const ANGLES: usize = 8;
    for p in &pts {
        for k in 0..ANGLES {
            let th = core::f64::consts::TAU * k as f64 / ANGLES as f64;
            push(vec![
                p[0] + delta * libm::cos(th),
                p[1] + delta * libm::sin(th),
            ]);
        }
    }
    for e in pts.windows(2) {
        let (a, b) = (e[0], e[1]);
        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
        let len = libm::hypot(dx, dy);
        if len == 0.0 {
            continue;
        }
        let (nx, ny) = (-dy / len, dx / len);
        for t in [0.0, 0.5, 1.0] {
            let (x, y) = (a[0] + t * dx, a[1] + t * dy);
            for r in [delta, -delta] {
                push(vec![x + r * nx, y + r * ny]);
            }
        }
    }
    let m = pts.len();
    for i in 0..m {
        for j in i + 1..m {
            let (c, r) = meb_raw(&pi.vertices()[i..=j], 0);
            if r > delta {
                break;
            }
            push(c);
        }
    }
    // Lattice of spacing δ/2 inside the δ-tube, coarsened if it would be huge.
    let mut h = delta / 2.0;
    let boxes = |h: f64| -> f64 {
        pts.windows(2)
            .map(|e| {
                let w = (e[0][0] - e[1][0]).abs() + 2.0 * delta;
                let ht = (e[0][1] - e[1][1]).abs() + 2.0 * delta;
                (w / h + 2.0) * (ht / h + 2.0)
            })
            .sum::<f64>()
            + m as f64 * (2.0 * delta / h + 2.0).powi(2)
    };
    while boxes(h) > 20_000.0 {
        h *= 2.0;
    }
    let mut lattice = BTreeSet::new();
    let segs: Vec<(&[f64], &[f64])> = if m == 1 {
        vec![(pts[0], pts[0])]
    } else {
        pts.windows(2).map(|e| (e[0], e[1])).collect()
    };
    for (a, b) in segs {
        let i0 = libm::floor((a[0].min(b[0]) - delta) / h) as i64;
        let i1 = libm::ceil((a[0].max(b[0]) + delta) / h) as i64;
        let j0 = libm::floor((a[1].min(b[1]) - delta) / h) as i64;
        let j1 = libm::ceil((a[1].max(b[1]) + delta) / h) as i64;
        for i in i0..=i1 {
            for j in j0..=j1 {
                let q = [i as f64 * h, j as f64 * h];
                if point_segment_dist_raw(&q, a, b) <= delta + crate::geom::EPS {
                    lattice.insert((i, j));
                }
            }
        }
    }
    for (i, j) in lattice {
        push(vec![i as f64 * h, j as f64 * h]);
    }
    out
}
