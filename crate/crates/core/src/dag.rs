//! DAG complexes and reachability in their product free space.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_delta, Error, Result};
use crate::geom::{clip_raw, within, Curve, Point, EPS};

/// A directed acyclic graph embedded in R^d; edges are straight segments.
///
/// Parallel edges, crossings and coincident vertices are all allowed.
#[derive(Clone, Debug)]
pub struct DagComplex {
    points: Vec<Point>,
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl DagComplex {
    /// Builds a complex and checks indices, dimensions and acyclicity.
    pub fn new(points: Vec<Point>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let d = points
            .first()
            .ok_or(Error::Empty("complex has no vertices"))?
            .dim();
        for p in &points {
            if p.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.dim(),
                });
            }
        }
        let c = Self::build(points, edges)?;
        c.topological_order()?;
        Ok(c)
    }

    fn build(points: Vec<Point>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = points.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Invalid(alloc::format!(
                    "edge {u} -> {v} refers to a missing vertex"
                )));
            }
            out[u].push(k);
            inc[v].push(k);
        }
        Ok(DagComplex {
            points,
            edges,
            out,
            inc,
        })
    }

    /// The path complex `v_1 -> v_2 -> … -> v_m` of a curve.
    pub fn path(curve: &Curve) -> DagComplex {
        let m = curve.len();
        let edges = (0..m - 1).map(|i| (i, i + 1)).collect();
        Self::build(curve.vertices().to_vec(), edges).expect("path indices are valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.points.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn point(&self, v: usize) -> &Point {
        &self.points[v]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    /// Kahn's algorithm, smallest index first, so a path comes out as the identity.
    ///
    /// On a cycle the error names an edge lying on it.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.points.len();
        let mut indeg: Vec<usize> = self.inc.iter().map(Vec::len).collect();
        let mut ready: alloc::collections::BinaryHeap<core::cmp::Reverse<usize>> = (0..n)
            .filter(|&v| indeg[v] == 0)
            .map(core::cmp::Reverse)
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(core::cmp::Reverse(v)) = ready.pop() {
            order.push(v);
            for &e in &self.out[v] {
                let w = self.edges[e].1;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(core::cmp::Reverse(w));
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        // Every leftover vertex has a leftover predecessor; walking backwards must repeat.
        let mut seen = vec![usize::MAX; n];
        let mut v = (0..n).find(|&v| indeg[v] > 0).expect("leftover vertex");
        let mut step = 0;
        loop {
            seen[v] = step;
            step += 1;
            let e = *self.inc[v]
                .iter()
                .find(|&&e| indeg[self.edges[e].0] > 0)
                .expect("leftover predecessor");
            let u = self.edges[e].0;
            if seen[u] != usize::MAX {
                return Err(Error::Cycle { from: u, to: v });
            }
            v = u;
        }
    }

    /// Every vertex sequence along an edge walk.
    pub fn walk_points(&self, start: usize, edges: &[usize]) -> Vec<Point> {
        let mut out = vec![self.points[start].clone()];
        for &e in edges {
            out.push(self.points[self.edges[e].1].clone());
        }
        out
    }
}

/// A compliant walk through both complexes reaching a target pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTrace {
    pub start: (usize, usize),
    /// Edges of the first complex, in order.
    pub edges1: Vec<usize>,
    /// Edges of the second complex, in order.
    pub edges2: Vec<usize>,
}

/// Result of [`product_reachability`]: per vertex pair reachability plus the
/// boundary intervals needed to trace witnesses.
#[derive(Clone, Debug)]
pub struct ProductReach<'a> {
    c1: &'a DagComplex,
    c2: &'a DagComplex,
    is_start1: Vec<bool>,
    is_start2: Vec<bool>,
    vertex_free: Vec<bool>,
    reached: Vec<bool>,
    /// Free interval on `u × e2` (vertex of C1, edge of C2).
    vert_free: Vec<Option<(f64, f64)>>,
    /// Lower end of the reachable part of `u × e2`; the upper end is the free one.
    vert_reach: Vec<Option<f64>>,
    horz_free: Vec<Option<(f64, f64)>>,
    horz_reach: Vec<Option<f64>>,
    targets: Vec<(usize, usize)>,
}

/// All target pairs `(t1, t2) ∈ T1 × T2` reachable from some start pair in
/// `S1 × S2` by compliant curves at Fréchet distance at most δ.
pub fn product_reachability<'a>(
    c1: &'a DagComplex,
    c2: &'a DagComplex,
    s1: &[usize],
    s2: &[usize],
    t1: &[usize],
    t2: &[usize],
    delta: f64,
) -> Result<ProductReach<'a>> {
    check_delta(delta)?;
    if c1.dim() != c2.dim() {
        return Err(Error::DimensionMismatch {
            expected: c1.dim(),
            found: c2.dim(),
        });
    }
    let (n1, n2) = (c1.num_vertices(), c2.num_vertices());
    let (e1n, e2n) = (c1.num_edges(), c2.num_edges());
    for &v in s1.iter().chain(t1) {
        if v >= n1 {
            return Err(Error::Invalid(alloc::format!(
                "vertex {v} not in first complex"
            )));
        }
    }
    for &v in s2.iter().chain(t2) {
        if v >= n2 {
            return Err(Error::Invalid(alloc::format!(
                "vertex {v} not in second complex"
            )));
        }
    }
    let order1 = c1.topological_order()?;
    let order2 = c2.topological_order()?;
    let mut is_start1 = vec![false; n1];
    s1.iter().for_each(|&v| is_start1[v] = true);
    let mut is_start2 = vec![false; n2];
    s2.iter().for_each(|&v| is_start2[v] = true);

    let pc = |c: &DagComplex, v: usize| c.point(v).coords().to_vec();
    let mut vert_free = vec![None; n1 * e2n];
    for u in 0..n1 {
        let p = c1.point(u).coords();
        for (e, &(a, b)) in c2.edges().iter().enumerate() {
            vert_free[u * e2n + e] = clip_raw(p, delta, c2.point(a).coords(), c2.point(b).coords());
        }
    }
    let mut horz_free = vec![None; e1n * n2];
    for (e, &(a, b)) in c1.edges().iter().enumerate() {
        let (pa, pb) = (pc(c1, a), pc(c1, b));
        for v in 0..n2 {
            horz_free[e * n2 + v] = clip_raw(c2.point(v).coords(), delta, &pa, &pb);
        }
    }
    let mut vertex_free = vec![false; n1 * n2];
    for u in 0..n1 {
        for v in 0..n2 {
            vertex_free[u * n2 + v] = within(c1.point(u).coords(), c2.point(v).coords(), delta);
        }
    }

    let mut r = ProductReach {
        c1,
        c2,
        is_start1,
        is_start2,
        vertex_free,
        reached: vec![false; n1 * n2],
        vert_free,
        vert_reach: vec![None; n1 * e2n],
        horz_free,
        horz_reach: vec![None; e1n * n2],
        targets: Vec::new(),
    };

    for &u in &order1 {
        for &v in &order2 {
            let reached = r.vertex_free[u * n2 + v]
                && ((r.is_start1[u] && r.is_start2[v])
                    || c2.in_edges(v).iter().any(|&e| r.vert_top(u, e))
                    || c1.in_edges(u).iter().any(|&e| r.horz_top(e, v)));
            if reached {
                r.reached[u * n2 + v] = true;
                for &e in c2.out_edges(v) {
                    let k = u * e2n + e;
                    if let Some((lo, _)) = r.vert_free[k] {
                        r.vert_reach[k] = Some(min_opt(r.vert_reach[k], lo));
                    }
                }
                for &e in c1.out_edges(u) {
                    let k = e * n2 + v;
                    if let Some((lo, _)) = r.horz_free[k] {
                        r.horz_reach[k] = Some(min_opt(r.horz_reach[k], lo));
                    }
                }
            }
            for &ea in c1.out_edges(u) {
                let u2 = c1.edge(ea).1;
                let bottom = r.horz_reach[ea * n2 + v];
                for &eb in c2.out_edges(v) {
                    let v2 = c2.edge(eb).1;
                    let left = r.vert_reach[u * e2n + eb];
                    if left.is_none() && bottom.is_none() {
                        continue;
                    }
                    let rk = u2 * e2n + eb;
                    if let Some(lo) = cell_exit(r.vert_free[rk], bottom.is_some(), left) {
                        r.vert_reach[rk] = Some(min_opt(r.vert_reach[rk], lo));
                    }
                    let tk = ea * n2 + v2;
                    if let Some(lo) = cell_exit(r.horz_free[tk], left.is_some(), bottom) {
                        r.horz_reach[tk] = Some(min_opt(r.horz_reach[tk], lo));
                    }
                }
            }
        }
    }
    for &a in t1 {
        for &b in t2 {
            if r.reached[a * n2 + b] && !r.targets.contains(&(a, b)) {
                r.targets.push((a, b));
            }
        }
    }
    Ok(r)
}

fn min_opt(old: Option<f64>, lo: f64) -> f64 {
    old.map_or(lo, |o| o.min(lo))
}

/// Lower end of the reachable part of a cell's exit edge. The whole free
/// interval is reachable when the perpendicular entry edge is reachable;
/// otherwise only the part at or above the parallel entry's lower end.
pub(crate) fn cell_exit(
    free: Option<(f64, f64)>,
    cross: bool,
    parallel: Option<f64>,
) -> Option<f64> {
    let (a, b) = free?;
    if cross {
        return Some(a);
    }
    let lo = parallel?;
    (lo <= b + EPS).then(|| a.max(lo).min(b))
}

impl<'a> ProductReach<'a> {
    /// Reachable target pairs, in `T1 × T2` order.
    pub fn targets(&self) -> &[(usize, usize)] {
        &self.targets
    }

    /// Whether the vertex pair `(u, v)` is reachable (not limited to targets).
    pub fn is_reached(&self, u: usize, v: usize) -> bool {
        self.reached[u * self.c2.num_vertices() + v]
    }

    fn vert_top(&self, u: usize, e: usize) -> bool {
        let k = u * self.c2.num_edges() + e;
        matches!((self.vert_reach[k], self.vert_free[k]), (Some(_), Some((_, b))) if b >= 1.0)
    }

    fn horz_top(&self, e: usize, v: usize) -> bool {
        let k = e * self.c2.num_vertices() + v;
        matches!((self.horz_reach[k], self.horz_free[k]), (Some(_), Some((_, b))) if b >= 1.0)
    }

    /// Reachable interval on `u × e2`.
    pub fn vert_interval(&self, u: usize, e: usize) -> Option<(f64, f64)> {
        let k = u * self.c2.num_edges() + e;
        Some((self.vert_reach[k]?, self.vert_free[k]?.1))
    }

    /// Reachable interval on `e1 × v`.
    pub fn horz_interval(&self, e: usize, v: usize) -> Option<(f64, f64)> {
        let k = e * self.c2.num_vertices() + v;
        Some((self.horz_reach[k]?, self.horz_free[k]?.1))
    }

    /// Free interval on `u × e2`.
    pub fn vert_free(&self, u: usize, e: usize) -> Option<(f64, f64)> {
        self.vert_free[u * self.c2.num_edges() + e]
    }

    /// Free interval on `e1 × v`.
    pub fn horz_free(&self, e: usize, v: usize) -> Option<(f64, f64)> {
        self.horz_free[e * self.c2.num_vertices() + v]
    }

    /// Backtracks a witness for a reached pair `(t1, t2)`.
    pub fn trace(&self, t1: usize, t2: usize) -> Option<ProductTrace> {
        if !self.is_reached(t1, t2) {
            return None;
        }
        #[derive(Clone, Copy)]
        enum Pos {
            Vertex(usize, usize),
            Vert(usize, usize, f64),
            Horz(usize, usize, f64),
        }
        let (c1, c2) = (self.c1, self.c2);
        let n2 = c2.num_vertices();
        let mut ev1 = Vec::new();
        let mut ev2 = Vec::new();
        let mut pos = Pos::Vertex(t1, t2);
        let start = loop {
            match pos {
                Pos::Vertex(u, v) => {
                    if self.is_start1[u] && self.is_start2[v] && self.vertex_free[u * n2 + v] {
                        break (u, v);
                    }
                    if let Some(&e) = c2.in_edges(v).iter().find(|&&e| self.vert_top(u, e)) {
                        pos = Pos::Vert(u, e, 1.0);
                    } else {
                        let &e = c1.in_edges(u).iter().find(|&&e| self.horz_top(e, v))?;
                        pos = Pos::Horz(e, v, 1.0);
                    }
                }
                Pos::Vert(u, e2, y) => {
                    ev2.push(e2);
                    let v = c2.edge(e2).0;
                    if self.is_reached(u, v) {
                        pos = Pos::Vertex(u, v);
                        continue;
                    }
                    let mut next = None;
                    for &e1 in c1.in_edges(u) {
                        let w = c1.edge(e1).0;
                        if let Some((lo, _)) = self.horz_interval(e1, v) {
                            next = Some((e1, Pos::Horz(e1, v, lo)));
                            break;
                        }
                        if let Some((lo, _)) = self.vert_interval(w, e2) {
                            if lo <= y + EPS {
                                next = Some((e1, Pos::Vert(w, e2, lo.min(y))));
                                break;
                            }
                        }
                    }
                    let (e1, p) = next?;
                    ev1.push(e1);
                    pos = p;
                }
                Pos::Horz(e1, v, x) => {
                    ev1.push(e1);
                    let u = c1.edge(e1).0;
                    if self.is_reached(u, v) {
                        pos = Pos::Vertex(u, v);
                        continue;
                    }
                    let mut next = None;
                    for &e2 in c2.in_edges(v) {
                        let w = c2.edge(e2).0;
                        if let Some((lo, _)) = self.vert_interval(u, e2) {
                            next = Some((e2, Pos::Vert(u, e2, lo)));
                            break;
                        }
                        if let Some((lo, _)) = self.horz_interval(e1, w) {
                            if lo <= x + EPS {
                                next = Some((e2, Pos::Horz(e1, w, lo.min(x))));
                                break;
                            }
                        }
                    }
                    let (e2, p) = next?;
                    ev2.push(e2);
                    pos = p;
                }
            }
        };
        ev1.reverse();
        ev1.dedup();
        ev2.reverse();
        ev2.dedup();
        Some(ProductTrace {
            start,
            edges1: ev1,
            edges2: ev2,
        })
    }
}

/// Vertices reachable from `from` (inclusive), by breadth-first search.
pub fn forward_closure(c: &DagComplex, from: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; c.num_vertices()];
    let mut q: VecDeque<usize> = from.iter().copied().collect();
    for &v in from {
        seen[v] = true;
    }
    while let Some(v) = q.pop_front() {
        for &e in c.out_edges(v) {
            let w = c.edge(e).1;
            if !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    seen
}
