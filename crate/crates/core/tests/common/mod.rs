//! Brute-force references shared by the integration tests. Nothing here calls
//! into the algorithms under test except where a helper says so.
#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use frechet_edit_core::{Curve, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Curve with integer coordinates in `[0, range]`.
pub fn int_curve(rng: &mut ChaCha8Rng, len: usize, dim: usize, range: i32) -> Curve {
    let pts = (0..len)
        .map(|_| {
            Point::new(
                (0..dim)
                    .map(|_| rng.random_range(0..=range) as f64)
                    .collect(),
            )
        })
        .collect();
    Curve::new(pts).unwrap()
}

/// Copy of `c` with each coordinate moved by an integer in `[-jitter, jitter]`,
/// vertices repeated with probability `dup`, and outliers (offset by `far`)
/// inserted with probability `outlier`.
pub fn perturbed(
    rng: &mut ChaCha8Rng,
    c: &Curve,
    jitter: i32,
    dup: f64,
    outlier: f64,
    far: f64,
) -> Curve {
    let mut out = Vec::new();
    for p in c.vertices() {
        let reps = if rng.random_bool(dup) { 2 } else { 1 };
        for _ in 0..reps {
            out.push(Point::new(
                p.coords()
                    .iter()
                    .map(|x| x + rng.random_range(-jitter..=jitter) as f64)
                    .collect(),
            ));
        }
        if rng.random_bool(outlier) {
            out.push(Point::new(p.coords().iter().map(|x| x + far).collect()));
        }
    }
    Curve::new(out).unwrap()
}

pub fn pts(c: &Curve) -> Vec<Vec<f64>> {
    c.vertices().iter().map(|p| p.coords().to_vec()).collect()
}

pub fn curve(v: &[Vec<f64>]) -> Curve {
    Curve::new(v.iter().map(|c| Point::new(c.clone())).collect()).unwrap()
}

pub fn d2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn near(a: &[f64], b: &[f64], delta: f64) -> bool {
    d2(a, b).sqrt() <= delta + TOL
}

/// Discrete Fréchet decision by the textbook boolean table.
pub fn disc_decide(pi: &[Vec<f64>], sigma: &[Vec<f64>], delta: f64) -> bool {
    let (m, n) = (pi.len(), sigma.len());
    let mut r = vec![vec![false; n]; m];
    for i in 0..m {
        for j in 0..n {
            if !near(&pi[i], &sigma[j], delta) {
                continue;
            }
            r[i][j] = (i == 0 && j == 0)
                || (i > 0 && r[i - 1][j])
                || (j > 0 && r[i][j - 1])
                || (i > 0 && j > 0 && r[i - 1][j - 1]);
        }
    }
    r[m - 1][n - 1]
}

/// Weak discrete Fréchet decision: BFS over free index pairs with king moves.
pub fn weak_disc_decide(pi: &[Vec<f64>], sigma: &[Vec<f64>], delta: f64) -> bool {
    let (m, n) = (pi.len(), sigma.len());
    let free = |i: usize, j: usize| near(&pi[i], &sigma[j], delta);
    if !free(0, 0) || !free(m - 1, n - 1) {
        return false;
    }
    let mut seen = vec![vec![false; n]; m];
    let mut stack = vec![(0usize, 0usize)];
    seen[0][0] = true;
    while let Some((i, j)) = stack.pop() {
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                let (a, b) = (i as i64 + di, j as i64 + dj);
                if a < 0 || b < 0 || a >= m as i64 || b >= n as i64 {
                    continue;
                }
                let (a, b) = (a as usize, b as usize);
                if !seen[a][b] && free(a, b) {
                    seen[a][b] = true;
                    stack.push((a, b));
                }
            }
        }
    }
    seen[m - 1][n - 1]
}

/// Parameters `t ∈ [0, 1]` with `|a + t(b − a) − p| ≤ δ`.
pub fn free_interval(p: &[f64], a: &[f64], b: &[f64], delta: f64) -> Option<(f64, f64)> {
    let dir: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let w: Vec<f64> = a.iter().zip(p).map(|(x, y)| x - y).collect();
    let qa: f64 = dir.iter().map(|x| x * x).sum();
    let qb: f64 = 2.0 * dir.iter().zip(&w).map(|(x, y)| x * y).sum::<f64>();
    let r = delta + TOL;
    let qc: f64 = w.iter().map(|x| x * x).sum::<f64>() - r * r;
    if qa == 0.0 {
        return (qc <= 0.0).then_some((0.0, 1.0));
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let lo = ((-qb - s) / (2.0 * qa)).max(0.0);
    let hi = ((-qb + s) / (2.0 * qa)).min(1.0);
    (lo <= hi).then_some((lo, hi))
}

fn from_lower(free: Option<(f64, f64)>, lo: f64) -> Option<(f64, f64)> {
    free.and_then(|(a, b)| (lo <= b + 1e-12).then_some((a.max(lo).min(b), b)))
}

/// Continuous Fréchet decision: reachable intervals on cell boundaries.
pub fn cont_decide(pi: &[Vec<f64>], sigma: &[Vec<f64>], delta: f64) -> bool {
    let (m, n) = (pi.len(), sigma.len());
    if !near(&pi[0], &sigma[0], delta) || !near(&pi[m - 1], &sigma[n - 1], delta) {
        return false;
    }
    if m == 1 {
        return sigma.iter().all(|q| near(&pi[0], q, delta));
    }
    if n == 1 {
        return pi.iter().all(|p| near(p, &sigma[0], delta));
    }
    // bottom[i][j]: on π edge i at σ vertex j; left[i][j]: at π vertex i on σ edge j.
    let mut bottom = vec![vec![None; n]; m - 1];
    let mut left = vec![vec![None; n - 1]; m];
    let mut open = true;
    for i in 0..m - 1 {
        let f = free_interval(&sigma[0], &pi[i], &pi[i + 1], delta);
        bottom[i][0] = if open {
            f.filter(|f| f.0 <= 1e-12)
        } else {
            None
        };
        open = bottom[i][0].is_some_and(|f: (f64, f64)| f.1 >= 1.0 - 1e-12);
    }
    open = true;
    for j in 0..n - 1 {
        let f = free_interval(&pi[0], &sigma[j], &sigma[j + 1], delta);
        left[0][j] = if open {
            f.filter(|f| f.0 <= 1e-12)
        } else {
            None
        };
        open = left[0][j].is_some_and(|f: (f64, f64)| f.1 >= 1.0 - 1e-12);
    }
    for i in 0..m - 1 {
        for j in 0..n - 1 {
            let b: Option<(f64, f64)> = bottom[i][j];
            let l: Option<(f64, f64)> = left[i][j];
            let top = free_interval(&sigma[j + 1], &pi[i], &pi[i + 1], delta);
            let right = free_interval(&pi[i + 1], &sigma[j], &sigma[j + 1], delta);
            bottom[i][j + 1] = match (l, b) {
                (Some(_), _) => top,
                (None, Some(b)) => from_lower(top, b.0),
                _ => None,
            };
            left[i + 1][j] = match (b, l) {
                (Some(_), _) => right,
                (None, Some(l)) => from_lower(right, l.0),
                _ => None,
            };
        }
    }
    let t = bottom[m - 2][n - 1].is_some_and(|f| f.1 >= 1.0 - 1e-12);
    let r = left[m - 1][n - 2].is_some_and(|f| f.1 >= 1.0 - 1e-12);
    t || r
}

/// Minimum enclosing ball by trying every support set of size ≤ 3 (dims 1, 2).
pub fn meb_brute(p: &[Vec<f64>]) -> (Vec<f64>, f64) {
    let dim = p[0].len();
    let mut cands: Vec<Vec<f64>> = Vec::new();
    for a in 0..p.len() {
        cands.push(p[a].clone());
        for b in a + 1..p.len() {
            cands.push(p[a].iter().zip(&p[b]).map(|(x, y)| (x + y) / 2.0).collect());
            if dim == 2 {
                for c in b + 1..p.len() {
                    if let Some(cc) = circumcentre(&p[a], &p[b], &p[c]) {
                        cands.push(cc);
                    }
                }
            }
        }
    }
    let mut best = (p[0].clone(), f64::INFINITY);
    for c in cands {
        let r = p.iter().map(|q| d2(&c, q)).fold(0.0, f64::max).sqrt();
        if r < best.1 {
            best = (c, r);
        }
    }
    best
}

fn circumcentre(a: &[f64], b: &[f64], c: &[f64]) -> Option<Vec<f64>> {
    let (bx, by) = (b[0] - a[0], b[1] - a[1]);
    let (cx, cy) = (c[0] - a[0], c[1] - a[1]);
    let d = 2.0 * (bx * cy - by * cx);
    if d.abs() < 1e-12 {
        return None;
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    Some(vec![
        a[0] + (cy * b2 - by * c2) / d,
        a[1] + (bx * c2 - cx * b2) / d,
    ])
}

/// Centres of every window of π whose enclosing ball has radius ≤ δ.
pub fn window_centres(pi: &[Vec<f64>], delta: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for a in 0..pi.len() {
        for b in a..pi.len() {
            let (c, r) = meb_brute(&pi[a..=b]);
            if r <= delta + TOL && !out.iter().any(|o| d2(o, &c) < 1e-20) {
                out.push(c);
            }
        }
    }
    out
}

/// Fewest deletions leaving a nonempty subsequence of σ accepted by `ok`.
pub fn min_deletions(sigma: &[Vec<f64>], ok: impl Fn(&[Vec<f64>]) -> bool) -> Option<usize> {
    let n = sigma.len();
    let mut best: Option<usize> = None;
    for mask in 1u32..(1 << n) {
        let del = n - mask.count_ones() as usize;
        if best.is_some_and(|b| b <= del) {
            continue;
        }
        let sub: Vec<Vec<f64>> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| sigma[i].clone())
            .collect();
        if ok(&sub) {
            best = Some(del);
        }
    }
    best
}

/// Every subsequence keeping the first and last vertex.
pub fn endpoint_subsequences(sigma: &[Vec<f64>]) -> Vec<Vec<Vec<f64>>> {
    let n = sigma.len();
    if n == 1 {
        return vec![sigma.to_vec()];
    }
    let inner = n - 2;
    (0u32..(1 << inner))
        .map(|mask| {
            let mut v = vec![sigma[0].clone()];
            v.extend(
                (0..inner)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| sigma[i + 1].clone()),
            );
            v.push(sigma[n - 1].clone());
            v
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Cur {
    Orig,
    Ins(usize),
}

/// Discrete edit cost by Dijkstra over (π index, σ originals consumed, current
/// σ′ vertex), with inserted points drawn from `cands`. `None` when infeasible.
pub fn discrete_edit_oracle(
    pi: &[Vec<f64>],
    sigma: &[Vec<f64>],
    delta: f64,
    del: bool,
    ins: bool,
    cands: &[Vec<f64>],
) -> Option<usize> {
    let (m, n) = (pi.len(), sigma.len());
    let point = |p: usize, c: Cur| -> &Vec<f64> {
        match c {
            Cur::Orig => &sigma[p - 1],
            Cur::Ins(k) => &cands[k],
        }
    };
    // Successors of σ′ vertex state (p, cur): next vertex and its edit cost.
    let next = |p: usize| -> Vec<(usize, Cur, usize)> {
        let mut v = Vec::new();
        for q in p + 1..=n {
            if q == p + 1 || del {
                v.push((q, Cur::Orig, q - p - 1));
            }
        }
        if ins {
            for q in p..=n {
                if q == p || del {
                    for k in 0..cands.len() {
                        v.push((q, Cur::Ins(k), q - p + 1));
                    }
                }
            }
        }
        v
    };
    let mut dist = std::collections::HashMap::new();
    let mut heap = BinaryHeap::new();
    for (q, c, w) in next(0) {
        if near(&pi[0], point(q, c), delta) {
            heap.push(Reverse((w, 0usize, q, c)));
        }
    }
    while let Some(Reverse((w, i, p, c))) = heap.pop() {
        if dist.contains_key(&(i, p, c)) {
            continue;
        }
        dist.insert((i, p, c), w);
        if i + 1 < m && near(&pi[i + 1], point(p, c), delta) {
            heap.push(Reverse((w, i + 1, p, c)));
        }
        for (q, nc, dw) in next(p) {
            let pt = point(q, nc);
            if near(&pi[i], pt, delta) {
                heap.push(Reverse((w + dw, i, q, nc)));
            }
            if i + 1 < m && near(&pi[i + 1], pt, delta) {
                heap.push(Reverse((w + dw, i + 1, q, nc)));
            }
        }
    }
    let mut best: Option<usize> = None;
    for (&(ei, ep, _), &ew) in dist.iter() {
        if ei == m - 1 && (ep == n || del) {
            let t = ew + (n - ep);
            best = Some(best.map_or(t, |b| b.min(t)));
        }
    }
    best
}

/// Points of the origin-aligned lattice of spacing δ/2 within δ of π (planar).
pub fn lattice(pi: &[Vec<f64>], delta: f64) -> Vec<Vec<f64>> {
    let h = delta / 2.0;
    let lo = |k: usize| pi.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min) - delta;
    let hi = |k: usize| pi.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max) + delta;
    let mut out = Vec::new();
    let (x0, x1, y0, y1) = (
        (lo(0) / h).ceil() as i64,
        (hi(0) / h).floor() as i64,
        (lo(1) / h).ceil() as i64,
        (hi(1) / h).floor() as i64,
    );
    for a in x0..=x1 {
        for b in y0..=y1 {
            let q = vec![a as f64 * h, b as f64 * h];
            let inside = if pi.len() == 1 {
                near(&pi[0], &q, delta)
            } else {
                pi.windows(2)
                    .any(|w| free_interval(&q, &w[0], &w[1], delta).is_some())
            };
            if inside {
                out.push(q);
            }
        }
    }
    out
}

/// Fewest vertices of a curve through `cands` within Fréchet distance δ of π,
/// found by layered search over free-space rows. `None` beyond `max_len`.
pub fn min_vertices_over(
    pi: &[Vec<f64>],
    delta: f64,
    cands: &[Vec<f64>],
    max_len: usize,
) -> Option<usize> {
    let m = pi.len();
    assert!(m >= 2);
    let e = m - 1;
    let free = |c: &[f64], k: usize| free_interval(c, &pi[k], &pi[k + 1], delta);
    let rows_free: Vec<Vec<Option<(f64, f64)>>> = cands
        .iter()
        .map(|c| (0..e).map(|k| free(c, k)).collect())
        .collect();
    let done = |ci: usize, row: &[Option<f64>]| {
        row[e - 1].is_some() && rows_free[ci][e - 1].is_some_and(|f| f.1 >= 1.0 - 1e-12)
    };
    let mut rows: Vec<Option<Vec<Option<f64>>>> = cands
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            if !near(&pi[0], c, delta) {
                return None;
            }
            let mut row = vec![None; e];
            for k in 0..e {
                match rows_free[ci][k] {
                    Some(f) if f.0 <= 1e-12 => row[k] = Some(0.0),
                    _ => break,
                }
                if rows_free[ci][k].unwrap().1 < 1.0 - 1e-12 {
                    break;
                }
            }
            Some(row)
        })
        .collect();
    for len in 1..=max_len {
        if rows
            .iter()
            .enumerate()
            .any(|(ci, r)| r.as_ref().is_some_and(|r| done(ci, r)))
        {
            return Some(len);
        }
        let mut next: Vec<Option<Vec<Option<f64>>>> = vec![None; cands.len()];
        for (ci, row) in rows.iter().enumerate() {
            let Some(row) = row else { continue };
            for di in 0..cands.len() {
                let (c, d) = (&cands[ci], &cands[di]);
                let vert = |k: usize| free_interval(&pi[k], c, d, delta);
                let mut l = if row[0].is_some_and(|x| x <= 1e-12) {
                    vert(0)
                } else {
                    None
                };
                let mut out = vec![None; e];
                let mut any = false;
                for k in 0..e {
                    let b = row[k].map(|lo| (lo, rows_free[ci][k].unwrap().1));
                    let top = rows_free[di][k];
                    out[k] = match (l, b) {
                        (Some(_), _) => top.map(|t| t.0),
                        (None, Some(b)) => from_lower(top, b.0).map(|t| t.0),
                        _ => None,
                    };
                    any |= out[k].is_some();
                    let right = vert(k + 1);
                    l = match (b, l) {
                        (Some(_), _) => right,
                        (None, Some(lv)) => from_lower(right, lv.0),
                        _ => None,
                    };
                }
                if !any {
                    continue;
                }
                let slot = next[di].get_or_insert_with(|| vec![None; e]);
                for k in 0..e {
                    slot[k] = match (slot[k], out[k]) {
                        (Some(a), Some(b)) => Some(f64::min(a, b)),
                        (a, b) => a.or(b),
                    };
                }
            }
        }
        rows = next;
    }
    None
}

/// Fewest insertions (up to `max_k`) from `pool` into σ that make `ok` hold.
pub fn min_insertions(
    sigma: &[Vec<f64>],
    pool: &[Vec<f64>],
    max_k: usize,
    ok: &dyn Fn(&[Vec<f64>]) -> bool,
) -> Option<usize> {
    fn go(
        cur: &mut Vec<Vec<f64>>,
        from: usize,
        left: usize,
        pool: &[Vec<f64>],
        ok: &dyn Fn(&[Vec<f64>]) -> bool,
    ) -> bool {
        if left == 0 {
            return ok(cur);
        }
        // Insert at slot ≥ `from` so each multiset of positions is tried once.
        for slot in from..=cur.len() {
            for p in pool {
                cur.insert(slot, p.clone());
                let hit = go(cur, slot + 1, left - 1, pool, ok);
                cur.remove(slot);
                if hit {
                    return true;
                }
            }
        }
        false
    }
    (0..=max_k).find(|&k| go(&mut sigma.to_vec(), 0, k, pool, ok))
}

/// All formulas over `v` variables with `c` clauses, clauses and formulas
/// taken as multisets.
pub fn formulas(v: usize, c: usize) -> Vec<Vec<[i32; 3]>> {
    let lits: Vec<i32> = (1..=v as i32).flat_map(|x| [x, -x]).collect();
    let mut clauses = Vec::new();
    for a in 0..lits.len() {
        for b in a..lits.len() {
            for d in b..lits.len() {
                clauses.push([lits[a], lits[b], lits[d]]);
            }
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; c];
    loop {
        out.push(idx.iter().map(|&i| clauses[i]).collect());
        let mut k = c;
        while k > 0 && idx[k - 1] == clauses.len() - 1 {
            k -= 1;
        }
        if k == 0 {
            return out;
        }
        idx[k - 1] += 1;
        for j in k..c {
            idx[j] = idx[k - 1];
        }
    }
}
