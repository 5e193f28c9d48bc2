//! Continuous strong Fréchet edit distance through layered DAG complexes.
//!
//! Copies `σ^0..σ^k` of σ form the layers; a vertex on layer ℓ has paid ℓ
//! edits. Deletions are skip edges between layers, insertions are canonical
//! subcurves grafted between σ vertices.

use alloc::vec;
use alloc::vec::Vec;

use crate::cost::Cost;
use crate::dag::{product_reachability, DagComplex};
use crate::error::{check_delta, Error, Result};
use crate::geom::{clip, clip_end, clip_start, point_segment_dist_raw, Curve, Point};
use crate::minvertex::{mv_anchored, mv_one_sided, mv_unanchored, Anchor};
use crate::script::{EditOp, EditOps, EditScript};

/// What a vertex of a layered complex stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Copy of σ vertex `index` (0-based).
    Original(usize),
    /// Vertex of an inserted subcurve.
    Inserted,
}

/// Vertex tag: origin and the edits paid on reaching it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tag {
    pub origin: Origin,
    pub layer: usize,
}

/// DAG complex over copies of σ with per-vertex layer tags.
#[derive(Clone, Debug)]
pub struct WeightedLayeredComplex {
    pub complex: DagComplex,
    pub tags: Vec<Tag>,
    pub k: usize,
    /// Vertices a compliant curve may start at.
    pub starts: Vec<usize>,
    /// Vertices a compliant curve may end at, with the total edit cost.
    pub terminals: Vec<(usize, usize)>,
}

impl WeightedLayeredComplex {
    /// Checks that no edge decreases the layer and that the complex is acyclic.
    pub fn validate(&self) -> Result<()> {
        for &(a, b) in self.complex.edges() {
            if self.tags[b].layer < self.tags[a].layer {
                return Err(Error::Invalid(alloc::format!(
                    "edge {a}->{b} goes from layer {} down to {}",
                    self.tags[a].layer,
                    self.tags[b].layer
                )));
            }
        }
        self.complex.topological_order().map(|_| ())
    }

    /// Edit script for the walk visiting `walk` (complex vertex ids).
    pub fn script_for(&self, walk: &[usize], n: usize) -> EditScript {
        let mut kept = vec![false; n];
        let mut inserts = Vec::new();
        let mut last = 0;
        for &v in walk {
            match self.tags[v].origin {
                Origin::Original(i) => {
                    kept[i] = true;
                    last = i + 1;
                }
                Origin::Inserted => inserts.push(EditOp::Insert {
                    position: last,
                    point: self.complex.point(v).clone(),
                }),
            }
        }
        let mut ops: Vec<EditOp> = (0..n)
            .filter(|&i| !kept[i])
            .map(|i| EditOp::Delete { index: i + 1 })
            .collect();
        ops.extend(inserts);
        EditScript { ops }
    }
}

/// Outcome of an edit computation: the cost and, when finite, a script.
#[derive(Clone, Debug, PartialEq)]
pub struct EditResult {
    pub cost: Cost,
    pub script: Option<EditScript>,
}

impl EditResult {
    fn infinite() -> EditResult {
        EditResult {
            cost: Cost::INFINITE,
            script: None,
        }
    }
}

/// Outcome of two-sided deletion.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoSidedResult {
    pub cost: Cost,
    pub pi_script: Option<EditScript>,
    pub sigma_script: Option<EditScript>,
}

fn base_id(n: usize, i: usize, layer: usize) -> usize {
    layer * n + i
}

struct Builder {
    points: Vec<Point>,
    tags: Vec<Tag>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn layers(sigma: &Curve, k: usize) -> Builder {
        let n = sigma.len();
        let mut b = Builder {
            points: Vec::with_capacity(n * (k + 1)),
            tags: Vec::with_capacity(n * (k + 1)),
            edges: Vec::new(),
        };
        for layer in 0..=k {
            for (i, p) in sigma.vertices().iter().enumerate() {
                b.points.push(p.clone());
                b.tags.push(Tag {
                    origin: Origin::Original(i),
                    layer,
                });
            }
        }
        b
    }

    fn add(&mut self, p: &Point, layer: usize) -> usize {
        self.points.push(p.clone());
        self.tags.push(Tag {
            origin: Origin::Inserted,
            layer,
        });
        self.points.len() - 1
    }

    /// Appends the path `γ` with layers `first_layer, first_layer + 1, …`;
    /// returns its first and last vertex ids.
    fn path(&mut self, gamma: &[Point], first_layer: usize) -> (usize, usize) {
        let first = self.add(&gamma[0], first_layer);
        let mut prev = first;
        for (t, p) in gamma.iter().enumerate().skip(1) {
            let v = self.add(p, first_layer + t);
            self.edges.push((prev, v));
            prev = v;
        }
        (first, prev)
    }

    fn finish(
        self,
        k: usize,
        starts: Vec<usize>,
        terminals: Vec<(usize, usize)>,
    ) -> Result<WeightedLayeredComplex> {
        let wc = WeightedLayeredComplex {
            complex: DagComplex::new(self.points, self.edges)?,
            tags: self.tags,
            k,
            starts,
            terminals,
        };
        wc.validate()?;
        Ok(wc)
    }
}

/// `k + 1` copies of σ with every budget-feasible forward edge
/// `σ_i^ℓ → σ_j^{ℓ + (j − i − 1)}`. Starts are `σ_{i+1}^i`; terminals are all
/// copies, charged for the deleted suffix.
pub fn complete_weighted_complex(sigma: &Curve, k: usize) -> Result<WeightedLayeredComplex> {
    let n = sigma.len();
    let mut b = Builder::layers(sigma, k);
    for layer in 0..=k {
        for i in 0..n {
            for j in i + 1..n {
                let to = layer + (j - i - 1);
                if to > k {
                    break;
                }
                b.edges.push((base_id(n, i, layer), base_id(n, j, to)));
            }
        }
    }
    let starts = (0..n.min(k + 1)).map(|i| base_id(n, i, i)).collect();
    b.finish(k, starts, suffix_terminals(n, k, true))
}

fn suffix_terminals(n: usize, k: usize, deletes: bool) -> Vec<(usize, usize)> {
    let mut t = Vec::new();
    for layer in 0..=k {
        for i in 0..n {
            if !deletes && i + 1 != n {
                continue;
            }
            let cost = layer + (n - 1 - i);
            if cost <= k {
                t.push((base_id(n, i, layer), cost));
            }
        }
    }
    t
}

/// Cheapest reachable terminal of `wc` against π, with its script.
fn best_terminal(
    pi: &Curve,
    sigma: &Curve,
    wc: &WeightedLayeredComplex,
    delta: f64,
) -> Result<EditResult> {
    let path = DagComplex::path(pi);
    let m = pi.len();
    let targets: Vec<usize> = wc.terminals.iter().map(|t| t.0).collect();
    let reach = product_reachability(
        &path,
        &wc.complex,
        &[0],
        &wc.starts,
        &[m - 1],
        &targets,
        delta,
    )?;
    let mut best: Option<(usize, usize)> = None;
    for &(v, cost) in &wc.terminals {
        if reach.is_reached(m - 1, v) && best.is_none_or(|b| cost < b.1) {
            best = Some((v, cost));
        }
    }
    let Some((v, cost)) = best else {
        return Ok(EditResult::infinite());
    };
    let trace = reach
        .trace(m - 1, v)
        .ok_or_else(|| Error::Invalid("reached terminal has no trace".into()))?;
    let walk = walk_vertices(&wc.complex, trace.start.1, &trace.edges2);
    let script = wc.script_for(&walk, sigma.len());
    debug_assert_eq!(script.len(), cost);
    Ok(EditResult {
        cost: Cost::finite(cost as u32),
        script: Some(script),
    })
}

fn walk_vertices(c: &DagComplex, start: usize, edges: &[usize]) -> Vec<usize> {
    let mut w = vec![start];
    w.extend(edges.iter().map(|&e| c.edge(e).1));
    w
}

fn check_pair(pi: &Curve, sigma: &Curve, delta: f64) -> Result<()> {
    check_delta(delta)?;
    pi.check_same_dim(sigma)
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

/// Whether at most `k` deletions from σ bring it within δ of π.
pub fn continuous_delete_edit(pi: &Curve, sigma: &Curve, delta: f64, k: usize) -> Result<bool> {
    check_pair(pi, sigma, delta)?;
    let wc = complete_weighted_complex(sigma, k)?;
    Ok(best_terminal(pi, sigma, &wc, delta)?.cost.within(k as u32))
}

/// Fewest deletions from σ bringing it within δ of π.
pub fn continuous_delete_edit_value(pi: &Curve, sigma: &Curve, delta: f64) -> Result<EditResult> {
    check_pair(pi, sigma, delta)?;
    let wc = complete_weighted_complex(sigma, sigma.len())?;
    best_terminal(pi, sigma, &wc, delta)
}

/// Two-sided deletion with a shared budget `k`.
pub fn continuous_delete_edit_two_sided(
    pi: &Curve,
    sigma: &Curve,
    delta: f64,
    k: usize,
) -> Result<bool> {
    Ok(two_sided(pi, sigma, delta, k, k, k)?.cost.within(k as u32))
}

/// Fewest deletions from π and σ together.
pub fn continuous_delete_edit_two_sided_value(
    pi: &Curve,
    sigma: &Curve,
    delta: f64,
) -> Result<TwoSidedResult> {
    two_sided(
        pi,
        sigma,
        delta,
        pi.len(),
        sigma.len(),
        pi.len() + sigma.len(),
    )
}

fn two_sided(
    pi: &Curve,
    sigma: &Curve,
    delta: f64,
    k1: usize,
    k2: usize,
    budget: usize,
) -> Result<TwoSidedResult> {
    check_pair(pi, sigma, delta)?;
    let a = complete_weighted_complex(pi, k1)?;
    let b = complete_weighted_complex(sigma, k2)?;
    let t1: Vec<usize> = a.terminals.iter().map(|t| t.0).collect();
    let t2: Vec<usize> = b.terminals.iter().map(|t| t.0).collect();
    let reach = product_reachability(
        &a.complex, &b.complex, &a.starts, &b.starts, &t1, &t2, delta,
    )?;
    let mut best: Option<(usize, usize, usize)> = None;
    for &(u, cu) in &a.terminals {
        for &(v, cv) in &b.terminals {
            let c = cu + cv;
            if c <= budget && best.is_none_or(|x| c < x.2) && reach.is_reached(u, v) {
                best = Some((u, v, c));
            }
        }
    }
    let Some((u, v, cost)) = best else {
        return Ok(TwoSidedResult {
            cost: Cost::INFINITE,
            pi_script: None,
            sigma_script: None,
        });
    };
    let trace = reach
        .trace(u, v)
        .ok_or_else(|| Error::Invalid("reached terminal has no trace".into()))?;
    let wa = walk_vertices(&a.complex, trace.start.0, &trace.edges1);
    let wb = walk_vertices(&b.complex, trace.start.1, &trace.edges2);
    Ok(TwoSidedResult {
        cost: Cost::finite(cost as u32),
        pi_script: Some(a.script_for(&wa, pi.len())),
        sigma_script: Some(b.script_for(&wb, sigma.len())),
    })
}

/// Whether some subsequence of σ keeping both endpoints is within δ of π.
pub fn shortcut_decide(pi: &Curve, sigma: &Curve, delta: f64) -> Result<bool> {
    check_pair(pi, sigma, delta)?;
    let n = sigma.len();
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let c = DagComplex::new(sigma.vertices().to_vec(), edges)?;
    let path = DagComplex::path(pi);
    let reach = product_reachability(&path, &c, &[0], &[0], &[pi.len() - 1], &[n - 1], delta)?;
    Ok(reach.is_reached(pi.len() - 1, n - 1))
}

/// A canonical subcurve inserted strictly between σ vertices `from` and `to`.
#[derive(Clone, Debug, PartialEq)]
pub struct Subcurve {
    pub from: usize,
    pub to: usize,
    /// 1-based window `[α, β]` of π it was computed from.
    pub window: (usize, usize),
    pub curve: Vec<Point>,
}

/// A canonical subcurve ending just before or starting just after σ vertex `at`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCurve {
    pub at: usize,
    pub window: (usize, usize),
    pub curve: Vec<Point>,
}

/// Which σ vertex pairs receive inner canonical subcurves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairs {
    /// Consecutive pairs only, with boundary curves at σ_1 and σ_n.
    Consecutive,
    /// Pairs skipping at most this many vertices, boundary curves everywhere.
    Skipping(usize),
}

/// Canonical subcurves (all indices 0-based, curves are interiors).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CanonicalSubcurveSet {
    pub inner: Vec<Subcurve>,
    /// Curves inserted before σ vertex `at` with everything earlier removed.
    pub ends: Vec<BoundaryCurve>,
    /// Curves inserted after σ vertex `at` with everything later removed.
    pub starts: Vec<BoundaryCurve>,
}

impl CanonicalSubcurveSet {
    pub fn between(&self, i: usize, j: usize) -> impl Iterator<Item = &Subcurve> {
        self.inner.iter().filter(move |s| s.from == i && s.to == j)
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty() && self.ends.is_empty() && self.starts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.inner.len() + self.ends.len() + self.starts.len()
    }
}

fn near_edge(p: &Point, pi: &Curve, e: usize, delta: f64) -> bool {
    point_segment_dist_raw(p.coords(), pi.vertex(e).coords(), pi.vertex(e + 1).coords())
        <= delta + crate::geom::EPS
}

fn window(pi: &Curve, a: usize, b: usize) -> Curve {
    Curve::from_vec_unchecked(pi.vertices()[a..=b].to_vec())
}

/// Builds the canonical subcurves of π relative to σ.
pub fn canonical_subcurves(
    pi: &Curve,
    sigma: &Curve,
    delta: f64,
    pairs: Pairs,
) -> Result<CanonicalSubcurveSet> {
    check_pair(pi, sigma, delta)?;
    check_planar(pi)?;
    let (m, n) = (pi.len(), sigma.len());
    let mut set = CanonicalSubcurveSet::default();
    if m < 2 {
        return Ok(set);
    }
    let skip = match pairs {
        Pairs::Consecutive => 0,
        Pairs::Skipping(s) => s,
    };
    // Windows are 0-based [a, b] here and reported 1-based.
    for i in 0..n {
        for j in i + 1..n.min(i + skip + 2) {
            let (si, sj) = (sigma.vertex(i), sigma.vertex(j));
            for a in 0..m {
                if a + 1 >= m || !near_edge(si, pi, a, delta) {
                    continue;
                }
                for b in a + 2..m {
                    if !near_edge(sj, pi, b - 1, delta) {
                        continue;
                    }
                    let clipped = clip(si, sj, &window(pi, a, b), delta)?;
                    let r = mv_anchored(si, sj, &clipped, delta)?;
                    push_unique_inner(&mut set.inner, i, j, (a + 1, b + 1), r.vertices);
                }
            }
        }
    }
    for i in 0..n {
        let boundary_ok = |first: bool| match pairs {
            Pairs::Consecutive => (first && i == 0) || (!first && i + 1 == n),
            Pairs::Skipping(_) => true,
        };
        let si = sigma.vertex(i);
        if boundary_ok(true) {
            for b in 1..m {
                if near_edge(si, pi, b - 1, delta) {
                    let clipped = clip_end(si, &window(pi, 0, b), delta)?;
                    let r = mv_one_sided(&Anchor::End(si.clone()), &clipped, delta)?;
                    push_unique_boundary(&mut set.ends, i, (1, b + 1), r.vertices);
                }
            }
        }
        if boundary_ok(false) {
            for a in 0..m - 1 {
                if near_edge(si, pi, a, delta) {
                    let clipped = clip_start(si, &window(pi, a, m - 1), delta)?;
                    let r = mv_one_sided(&Anchor::Start(si.clone()), &clipped, delta)?;
                    push_unique_boundary(&mut set.starts, i, (a + 1, m), r.vertices);
                }
            }
        }
    }
    Ok(set)
}

fn push_unique_inner(
    v: &mut Vec<Subcurve>,
    from: usize,
    to: usize,
    window: (usize, usize),
    curve: Vec<Point>,
) {
    if curve.is_empty()
        || v.iter()
            .any(|s| s.from == from && s.to == to && s.curve == curve)
    {
        return;
    }
    v.push(Subcurve {
        from,
        to,
        window,
        curve,
    });
}

fn push_unique_boundary(
    v: &mut Vec<BoundaryCurve>,
    at: usize,
    window: (usize, usize),
    curve: Vec<Point>,
) {
    if curve.is_empty() || v.iter().any(|s| s.at == at && s.curve == curve) {
        return;
    }
    v.push(BoundaryCurve { at, window, curve });
}

/// Insertion (or combined) complex of σ with respect to the canonical set.
pub fn insertion_complex(
    sigma: &Curve,
    cs: &CanonicalSubcurveSet,
    k: usize,
    ops: EditOps,
) -> Result<WeightedLayeredComplex> {
    let n = sigma.len();
    let deletes = ops.deletes();
    let mut b = Builder::layers(sigma, k);
    for layer in 0..=k {
        for i in 0..n {
            for j in i + 1..n {
                let to = layer + (j - i - 1);
                if to > k || (!deletes && j > i + 1) {
                    break;
                }
                b.edges.push((base_id(n, i, layer), base_id(n, j, to)));
            }
        }
    }
    let mut starts: Vec<usize> = if deletes {
        (0..n.min(k + 1)).map(|i| base_id(n, i, i)).collect()
    } else {
        vec![base_id(n, 0, 0)]
    };
    let mut terminals = suffix_terminals(n, k, deletes);
    if ops.inserts() {
        for s in &cs.inner {
            let skipped = s.to - s.from - 1;
            if !deletes && skipped > 0 {
                continue;
            }
            let g = s.curve.len();
            for layer in 0..=k {
                let end = layer + skipped + g;
                if end > k {
                    break;
                }
                let (first, last) = b.path(&s.curve, layer + skipped + 1);
                b.edges.push((base_id(n, s.from, layer), first));
                b.edges.push((last, base_id(n, s.to, end)));
            }
        }
        for s in &cs.ends {
            if !deletes && s.at != 0 {
                continue;
            }
            let layer = s.at + s.curve.len();
            if layer > k {
                continue;
            }
            let (first, last) = b.path(&s.curve, s.at + 1);
            b.edges.push((last, base_id(n, s.at, layer)));
            starts.push(first);
        }
        for s in &cs.starts {
            if !deletes && s.at + 1 != n {
                continue;
            }
            let dropped = n - 1 - s.at;
            for layer in 0..=k {
                let cost = layer + dropped + s.curve.len();
                if cost > k {
                    break;
                }
                let (first, last) = b.path(&s.curve, layer + dropped + 1);
                b.edges.push((base_id(n, s.at, layer), first));
                terminals.push((last, cost));
            }
        }
    }
    b.finish(k, starts, terminals)
}

fn edit(pi: &Curve, sigma: &Curve, delta: f64, k: usize, ops: EditOps) -> Result<EditResult> {
    let pairs = if ops.deletes() {
        Pairs::Skipping(k)
    } else {
        Pairs::Consecutive
    };
    let cs = canonical_subcurves(pi, sigma, delta, pairs)?;
    let wc = insertion_complex(sigma, &cs, k, ops)?;
    let mut best = best_terminal(pi, sigma, &wc, delta)?;
    if ops == EditOps::Both {
        let mv = mv_unanchored(pi, delta)?;
        let n = sigma.len();
        let total = n + mv.len();
        if total <= k && best.cost.value().is_none_or(|c| total < c as usize) {
            let mut ops: Vec<EditOp> = (1..=n).map(|index| EditOp::Delete { index }).collect();
            ops.extend(
                mv.vertices
                    .into_iter()
                    .map(|point| EditOp::Insert { position: 0, point }),
            );
            best = EditResult {
                cost: Cost::finite(total as u32),
                script: Some(EditScript { ops }),
            };
        }
    }
    Ok(best)
}

/// Whether at most `k` insertions into σ bring it within δ of π (planar).
pub fn continuous_insert_edit(pi: &Curve, sigma: &Curve, delta: f64, k: usize) -> Result<bool> {
    check_pair(pi, sigma, delta)?;
    check_planar(pi)?;
    Ok(edit(pi, sigma, delta, k, EditOps::Insert)?
        .cost
        .within(k as u32))
}

/// Upper bound on a finite insertion-only cost.
fn insertion_bound(m: usize, n: usize) -> usize {
    m + 2 * (n + 1)
}

/// Fewest insertions into σ bringing it within δ of π (planar).
pub fn continuous_insert_edit_value(pi: &Curve, sigma: &Curve, delta: f64) -> Result<EditResult> {
    check_pair(pi, sigma, delta)?;
    check_planar(pi)?;
    edit(
        pi,
        sigma,
        delta,
        insertion_bound(pi.len(), sigma.len()),
        EditOps::Insert,
    )
}

/// Whether at most `k` insertions and deletions bring σ within δ of π (planar).
pub fn continuous_edit(pi: &Curve, sigma: &Curve, delta: f64, k: usize) -> Result<bool> {
    check_pair(pi, sigma, delta)?;
    check_planar(pi)?;
    Ok(edit(pi, sigma, delta, k, EditOps::Both)?
        .cost
        .within(k as u32))
}

/// Fewest insertions and deletions bringing σ within δ of π (planar).
pub fn continuous_edit_value(pi: &Curve, sigma: &Curve, delta: f64) -> Result<EditResult> {
    check_pair(pi, sigma, delta)?;
    check_planar(pi)?;
    let k = sigma.len() + mv_unanchored(pi, delta)?.len();
    edit(pi, sigma, delta, k, EditOps::Both)
}

/// Dispatches on `ops` for the value version.
pub fn continuous_edit_value_with(
    pi: &Curve,
    sigma: &Curve,
    delta: f64,
    ops: EditOps,
) -> Result<EditResult> {
    match ops {
        EditOps::Delete => continuous_delete_edit_value(pi, sigma, delta),
        EditOps::Insert => continuous_insert_edit_value(pi, sigma, delta),
        EditOps::Both => continuous_edit_value(pi, sigma, delta),
    }
}
