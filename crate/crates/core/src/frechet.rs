//! Fréchet decision procedures and the free-space diagram.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{check_delta, Result};
use crate::geom::{clip_raw, dist_raw, within, Curve, EPS};

/// Discrete or continuous Fréchet distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Discrete,
    Continuous,
}

/// Strong (monotone) or weak (non-monotone) matchings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Strong,
    Weak,
}

/// Exact discrete Fréchet distance.
pub fn discrete_frechet(pi: &Curve, sigma: &Curve) -> Result<f64> {
    pi.check_same_dim(sigma)?;
    let (m, n) = (pi.len(), sigma.len());
    let mut prev = vec![f64::INFINITY; n];
    let mut cur = vec![f64::INFINITY; n];
    for i in 0..m {
        for j in 0..n {
            let d = dist_raw(pi.vertex(i).coords(), sigma.vertex(j).coords());
            let best = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]),
            };
            cur[j] = d.max(best);
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[n - 1])
}

/// Boolean grid of free vertex pairs, `free(i, j) ⇔ |π_i − σ_j| ≤ δ` (0-based).
#[derive(Clone, Debug)]
pub struct DiscreteFreeGrid {
    m: usize,
    n: usize,
    free: Vec<bool>,
}

impl DiscreteFreeGrid {
    pub fn new(pi: &Curve, sigma: &Curve, delta: f64) -> Result<Self> {
        check_delta(delta)?;
        pi.check_same_dim(sigma)?;
        let (m, n) = (pi.len(), sigma.len());
        let mut free = Vec::with_capacity(m * n);
        for p in pi.vertices() {
            for q in sigma.vertices() {
                free.push(within(p.coords(), q.coords(), delta));
            }
        }
        Ok(DiscreteFreeGrid { m, n, free })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn is_free(&self, i: usize, j: usize) -> bool {
        self.free[i * self.n + j]
    }
}

/// Strong discrete decision: a monotone path of free vertices from `(1,1)` to `(m,n)`.
pub fn decide_discrete(pi: &Curve, sigma: &Curve, delta: f64) -> Result<bool> {
    let g = DiscreteFreeGrid::new(pi, sigma, delta)?;
    let (m, n) = g.dims();
    let mut prev = vec![false; n];
    let mut cur = vec![false; n];
    for i in 0..m {
        for j in 0..n {
            cur[j] = g.is_free(i, j)
                && match (i, j) {
                    (0, 0) => true,
                    (0, _) => cur[j - 1],
                    (_, 0) => prev[0],
                    _ => prev[j] || prev[j - 1] || cur[j - 1],
                };
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[n - 1])
}

/// Weak discrete decision: breadth-first search on the 8-neighbour grid of free vertices.
pub fn decide_weak_discrete(pi: &Curve, sigma: &Curve, delta: f64) -> Result<bool> {
    let g = DiscreteFreeGrid::new(pi, sigma, delta)?;
    let (m, n) = g.dims();
    if !g.is_free(0, 0) || !g.is_free(m - 1, n - 1) {
        return Ok(false);
    }
    let mut seen = vec![false; m * n];
    let mut queue = VecDeque::new();
    seen[0] = true;
    queue.push_back((0usize, 0usize));
    while let Some((i, j)) = queue.pop_front() {
        if (i, j) == (m - 1, n - 1) {
            return Ok(true);
        }
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                let (a, b) = (i as i64 + di, j as i64 + dj);
                if a < 0 || b < 0 || a >= m as i64 || b >= n as i64 {
                    continue;
                }
                let (a, b) = (a as usize, b as usize);
                if g.is_free(a, b) && !seen[a * n + b] {
                    seen[a * n + b] = true;
                    queue.push_back((a, b));
                }
            }
        }
    }
    Ok(false)
}

type Interval = Option<(f64, f64)>;

/// Free and reachable boundary intervals of the continuous free space.
///
/// Indices are 0-based. `left(i, j)` is the interval on the vertical line
/// through π vertex `i`, over σ edge `j` (`i < m`, `j < n-1`); `bottom(i, j)`
/// lies on the horizontal line through σ vertex `j`, over π edge `i`.
#[derive(Clone, Debug)]
pub struct FreeSpaceDiagram {
    m: usize,
    n: usize,
    left_free: Vec<Interval>,
    bottom_free: Vec<Interval>,
    left_reach: Vec<Interval>,
    bottom_reach: Vec<Interval>,
    corner_start: bool,
    corner_end: bool,
}

fn meet_from(free: Interval, lo: f64) -> Interval {
    let (a, b) = free?;
    if lo > b + EPS {
        return None;
    }
    Some((a.max(lo).min(b), b))
}

impl FreeSpaceDiagram {
    /// Computes the free intervals and propagates reachability.
    pub fn new(pi: &Curve, sigma: &Curve, delta: f64) -> Result<Self> {
        check_delta(delta)?;
        pi.check_same_dim(sigma)?;
        let (m, n) = (pi.len(), sigma.len());
        let p = |i: usize| pi.vertex(i).coords();
        let q = |j: usize| sigma.vertex(j).coords();
        let ne = n.saturating_sub(1);
        let me = m.saturating_sub(1);
        let mut left_free = vec![None; m * ne];
        for i in 0..m {
            for j in 0..ne {
                left_free[i * ne + j] = clip_raw(p(i), delta, q(j), q(j + 1));
            }
        }
        let mut bottom_free = vec![None; me * n];
        for i in 0..me {
            for j in 0..n {
                bottom_free[i * n + j] = clip_raw(q(j), delta, p(i), p(i + 1));
            }
        }
        let mut d = FreeSpaceDiagram {
            m,
            n,
            left_reach: vec![None; m * ne],
            bottom_reach: vec![None; me * n],
            left_free,
            bottom_free,
            corner_start: within(p(0), q(0), delta),
            corner_end: within(p(m - 1), q(n - 1), delta),
        };
        d.propagate();
        Ok(d)
    }

    fn li(&self, i: usize, j: usize) -> usize {
        i * (self.n - 1) + j
    }

    fn bi(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    fn propagate(&mut self) {
        let (m, n) = (self.m, self.n);
        if !self.corner_start {
            return;
        }
        // Left boundary, then bottom boundary.
        for j in 0..n - 1 {
            let k = self.li(0, j);
            let f = self.left_free[k];
            let open =
                j == 0 || matches!(self.left_reach[self.li(0, j - 1)], Some((_, b)) if b >= 1.0);
            if open && matches!(f, Some((a, _)) if a <= 0.0) {
                self.left_reach[k] = f;
            } else {
                break;
            }
        }
        for i in 0..m - 1 {
            let k = self.bi(i, 0);
            let f = self.bottom_free[k];
            let open =
                i == 0 || matches!(self.bottom_reach[self.bi(i - 1, 0)], Some((_, b)) if b >= 1.0);
            if open && matches!(f, Some((a, _)) if a <= 0.0) {
                self.bottom_reach[k] = f;
            } else {
                break;
            }
        }
        for i in 0..m - 1 {
            for j in 0..n - 1 {
                let l = self.left_reach[self.li(i, j)];
                let b = self.bottom_reach[self.bi(i, j)];
                let rk = self.li(i + 1, j);
                let tk = self.bi(i, j + 1);
                self.left_reach[rk] = if b.is_some() {
                    self.left_free[rk]
                } else {
                    l.and_then(|(lo, _)| meet_from(self.left_free[rk], lo))
                };
                self.bottom_reach[tk] = if l.is_some() {
                    self.bottom_free[tk]
                } else {
                    b.and_then(|(lo, _)| meet_from(self.bottom_free[tk], lo))
                };
            }
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn left_free(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        self.left_free[self.li(i, j)]
    }

    pub fn bottom_free(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        self.bottom_free[self.bi(i, j)]
    }

    pub fn left_reach(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        self.left_reach[self.li(i, j)]
    }

    pub fn bottom_reach(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        self.bottom_reach[self.bi(i, j)]
    }

    /// Whether `(m, n)` is reachable by a monotone path from `(1, 1)`.
    pub fn end_reachable(&self) -> bool {
        let (m, n) = (self.m, self.n);
        if !self.corner_start || !self.corner_end {
            return false;
        }
        let top = |r: Interval| matches!(r, Some((_, b)) if b >= 1.0);
        match (m, n) {
            (1, 1) => true,
            (1, _) => top(self.left_reach(0, n - 2)),
            (_, 1) => top(self.bottom_reach(m - 2, 0)),
            _ => top(self.left_reach(m - 1, n - 2)) || top(self.bottom_reach(m - 2, n - 1)),
        }
    }

    /// A monotone feasible path as a polyline of 1-based `(π, σ)` parameters,
    /// from `(1, 1)` to `(m, n)`; `None` when the end is unreachable.
    pub fn feasible_path(&self) -> Option<Vec<(f64, f64)>> {
        if !self.end_reachable() {
            return None;
        }
        let (m, n) = (self.m, self.n);
        let top = |r: Interval| matches!(r, Some((_, b)) if b >= 1.0);
        // Positions: Line(i, j, y) is (i, j + y) on vertical line i; Row(i, j, x) is (i + x, j).
        #[derive(Clone, Copy)]
        enum Pos {
            Line(usize, usize, f64),
            Row(usize, usize, f64),
        }
        let mut pos = if m == 1 && n == 1 {
            return Some(vec![(1.0, 1.0)]);
        } else if m == 1 || (n > 1 && top(self.left_reach(m - 1, n - 2))) {
            Pos::Line(m - 1, n - 2, 1.0)
        } else {
            Pos::Row(m - 2, n - 1, 1.0)
        };
        let mut rev = Vec::new();
        loop {
            match pos {
                Pos::Line(i, j, y) => {
                    rev.push((i as f64, j as f64 + y));
                    if i == 0 {
                        break;
                    }
                    let (ci, cj) = (i - 1, j);
                    if let Some((lo, _)) = self.bottom_reach(ci, cj) {
                        pos = Pos::Row(ci, cj, lo);
                    } else {
                        let (lo, _) = self.left_reach(ci, cj).expect("reachable predecessor");
                        pos = Pos::Line(ci, cj, lo.min(y));
                    }
                }
                Pos::Row(i, j, x) => {
                    rev.push((i as f64 + x, j as f64));
                    if j == 0 {
                        break;
                    }
                    let (ci, cj) = (i, j - 1);
                    if let Some((lo, _)) = self.left_reach(ci, cj) {
                        pos = Pos::Line(ci, cj, lo);
                    } else {
                        let (lo, _) = self.bottom_reach(ci, cj).expect("reachable predecessor");
                        pos = Pos::Row(ci, cj, lo.min(x));
                    }
                }
            }
        }
        rev.push((0.0, 0.0));
        rev.reverse();
        rev.dedup();
        Some(rev.into_iter().map(|(a, b)| (a + 1.0, b + 1.0)).collect())
    }

    /// Reachable intervals are contained in the free ones.
    pub fn reach_within_free(&self) -> bool {
        let sub = |r: Interval, f: Interval| match (r, f) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a, b)), Some((c, d))) => a >= c - EPS && b <= d + EPS && a <= b + EPS,
        };
        self.left_reach
            .iter()
            .zip(&self.left_free)
            .chain(self.bottom_reach.iter().zip(&self.bottom_free))
            .all(|(r, f)| sub(*r, *f))
    }
}

/// Strong continuous decision by Alt–Godau propagation.
pub fn decide_continuous(pi: &Curve, sigma: &Curve, delta: f64) -> Result<bool> {
    Ok(FreeSpaceDiagram::new(pi, sigma, delta)?.end_reachable())
}

/// Weak continuous decision: connectivity of cells through nonempty shared free intervals.
pub fn decide_weak_continuous(pi: &Curve, sigma: &Curve, delta: f64) -> Result<bool> {
    let d = FreeSpaceDiagram::new(pi, sigma, delta)?;
    let (m, n) = d.dims();
    if !d.corner_start || !d.corner_end {
        return Ok(false);
    }
    if m == 1 || n == 1 {
        // The free space is a segment; a weak path must cover all of it.
        return Ok(d.end_reachable());
    }
    let (cm, cn) = (m - 1, n - 1);
    let mut dsu = Dsu::new(cm * cn);
    for i in 1..m - 1 {
        for j in 0..cn {
            if d.left_free(i, j).is_some() {
                dsu.union((i - 1) * cn + j, i * cn + j);
            }
        }
    }
    for i in 0..cm {
        for j in 1..n - 1 {
            if d.bottom_free(i, j).is_some() {
                dsu.union(i * cn + j - 1, i * cn + j);
            }
        }
    }
    Ok(dsu.find(0) == dsu.find(cm * cn - 1))
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a] = b;
        }
    }
}

const CELL: f64 = 48.0;
const MARGIN: f64 = 56.0;
const ROWS: usize = 64;

/// Deterministic SVG picture of the free space.
///
/// Continuous: one `<g class="cell">` per cell holding a polygon that samples
/// the free region at 64 rows. Discrete: one circle per free vertex pair.
/// R^1 inputs get their coordinates as axis labels.
pub fn render_free_space(
    pi: &Curve,
    sigma: &Curve,
    delta: f64,
    variant: Variant,
) -> Result<String> {
    check_delta(delta)?;
    pi.check_same_dim(sigma)?;
    let (m, n) = (pi.len(), sigma.len());
    let (gw, gh) = match variant {
        Variant::Continuous => ((m.max(2) - 1) as f64, (n.max(2) - 1) as f64),
        Variant::Discrete => ((m - 1) as f64 + 1.0, (n - 1) as f64 + 1.0),
    };
    let width = gw * CELL + 2.0 * MARGIN;
    let height = gh * CELL + 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + x * CELL;
    let sy = |y: f64| height - MARGIN - y * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.1}" height="{:.1}" viewBox="0 0 {:.1} {:.1}">"#,
        width, height, width, height
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{width:.1}" height="{height:.1}" fill="white"/>"#
    );
    match variant {
        Variant::Continuous => {
            for i in 0..m.saturating_sub(1) {
                for j in 0..n.saturating_sub(1) {
                    let _ = writeln!(
                        out,
                        r#"<g class="cell" data-i="{}" data-j="{}">"#,
                        i + 1,
                        j + 1
                    );
                    let poly = cell_polygon(pi, sigma, delta, i, j);
                    if !poly.is_empty() {
                        out.push_str(r##"<polygon fill="#9ecae1" stroke="none" points=""##);
                        for (k, (x, y)) in poly.iter().enumerate() {
                            if k > 0 {
                                out.push(' ');
                            }
                            let _ = write!(out, "{:.2},{:.2}", sx(i as f64 + x), sy(j as f64 + y));
                        }
                        out.push_str("\"/>\n");
                    }
                    let _ = writeln!(
                        out,
                        r#"<rect x="{:.2}" y="{:.2}" width="{CELL:.2}" height="{CELL:.2}" fill="none" stroke="black" stroke-width="0.5"/>"#,
                        sx(i as f64),
                        sy(j as f64 + 1.0)
                    );
                    out.push_str("</g>\n");
                }
            }
        }
        Variant::Discrete => {
            let g = DiscreteFreeGrid::new(pi, sigma, delta)?;
            for i in 0..m {
                let x = sx(i as f64 + 0.5);
                let _ = writeln!(
                    out,
                    r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="gray" stroke-width="0.5"/>"#,
                    sy(0.0),
                    sy(gh)
                );
            }
            for j in 0..n {
                let y = sy(j as f64 + 0.5);
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="gray" stroke-width="0.5"/>"#,
                    sx(0.0),
                    sx(gw)
                );
            }
            for i in 0..m {
                for j in 0..n {
                    if g.is_free(i, j) {
                        let _ = writeln!(
                            out,
                            r##"<circle class="free" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="#3182bd"/>"##,
                            sx(i as f64 + 0.5),
                            sy(j as f64 + 0.5),
                            CELL * 0.3
                        );
                    }
                }
            }
        }
    }
    if pi.dim() == 1 {
        let off = if variant == Variant::Discrete {
            0.5
        } else {
            0.0
        };
        for (i, v) in pi.vertices().iter().enumerate() {
            let _ = writeln!(
                out,
                r#"<text class="pi-label" x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{}</text>"#,
                sx(i as f64 + off),
                height - MARGIN / 3.0,
                fmt_num(v.coords()[0])
            );
        }
        for (j, v) in sigma.vertices().iter().enumerate() {
            let _ = writeln!(
                out,
                r#"<text class="sigma-label" x="{:.2}" y="{:.2}" font-size="10" text-anchor="end">{}</text>"#,
                MARGIN * 0.7,
                sy(j as f64 + off) + 3.0,
                fmt_num(v.coords()[0])
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn fmt_num(x: f64) -> String {
    if x == libm::round(x) && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.3}")
    }
}

/// Free region of cell `(i, j)` in local `[0,1]^2` coordinates: left chain
/// upward followed by the right chain downward.
fn cell_polygon(pi: &Curve, sigma: &Curve, delta: f64, i: usize, j: usize) -> Vec<(f64, f64)> {
    let a = pi.vertex(i).coords();
    let b = pi.vertex(i + 1).coords();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for r in 0..=ROWS {
        let y = r as f64 / ROWS as f64;
        let q = Curve::point_at(sigma, j as f64 + 1.0 + y);
        if let Some((x0, x1)) = clip_raw(q.coords(), delta, a, b) {
            left.push((x0, y));
            right.push((x1, y));
        }
    }
    right.reverse();
    left.extend(right);
    left
}
