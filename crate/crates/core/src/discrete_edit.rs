//! Discrete Fréchet edit distance: deletion-only, insertion-only and combined.
//!
//! Every table cell holds two values. `full(i, j)` is the cheapest way to edit
//! σ[1, j] into σ' with discrete Fréchet distance at most δ to π[1, i].
//! `end(i, j)` is the same minimum restricted to σ' ending with the original
//! vertex σ_j. Keeping `end` separate matters for insertions: a solution for
//! π[1, i-1] that ends with a point inserted after σ_j cannot be extended by
//! pairing π_i with σ_j.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::cost::Cost;
use crate::error::{check_delta, Error, Result};
use crate::geom::{meb_raw, within, Curve, Point, EPS};
use crate::script::{EditOp, EditOps, EditScript};

/// `μ(i)`: the smallest `t` such that the minimum enclosing ball of
/// `⟨π_t, …, π_i⟩` has radius at most δ. Indices are 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct MuTable {
    mu: Vec<usize>,
    centers: Vec<Point>,
}

impl MuTable {
    /// μ(i) for `1 <= i <= m`.
    pub fn get(&self, i: usize) -> usize {
        self.mu[i - 1]
    }

    /// All values μ(1), …, μ(m).
    pub fn values(&self) -> &[usize] {
        &self.mu
    }

    /// Centre of the minimum enclosing ball of `⟨π_μ(i), …, π_i⟩`.
    pub fn center(&self, i: usize) -> &Point {
        &self.centers[i - 1]
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }
}

/// Two-pointer sweep: μ is nondecreasing, so the window start only moves forward.
pub fn mu_table(pi: &Curve, delta: f64) -> Result<MuTable> {
    mu_table_seeded(pi, delta, 0)
}

pub fn mu_table_seeded(pi: &Curve, delta: f64, seed: u64) -> Result<MuTable> {
    check_delta(delta)?;
    let v = pi.vertices();
    let mut mu = Vec::with_capacity(v.len());
    let mut centers = Vec::with_capacity(v.len());
    let mut t = 0;
    for i in 0..v.len() {
        loop {
            let (c, r) = meb_raw(&v[t..=i], seed);
            if r <= delta + EPS {
                mu.push(t + 1);
                centers.push(Point::new(c));
                break;
            }
            t += 1;
        }
    }
    Ok(MuTable { mu, centers })
}

/// FIFO queue answering minimum-priority queries in O(1).
///
/// Besides the queue itself it keeps the candidates that may still become
/// the minimum: each is followed by the minimum among later elements.
#[derive(Clone, Debug)]
pub struct MinQueue<T, P> {
    items: VecDeque<(T, P)>,
    candidates: VecDeque<(u64, P)>,
    head: u64,
    tail: u64,
}

impl<T, P: Ord + Copy> Default for MinQueue<T, P> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T, P: Ord + Copy> MinQueue<T, P> {
    pub fn new() -> Self {
        MinQueue {
            items: VecDeque::new(),
            candidates: VecDeque::new(),
            head: 0,
            tail: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn enqueue(&mut self, e: T, priority: P) {
        while matches!(self.candidates.back(), Some(&(_, p)) if p > priority) {
            self.candidates.pop_back();
        }
        self.candidates.push_back((self.tail, priority));
        self.items.push_back((e, priority));
        self.tail += 1;
    }

    pub fn dequeue(&mut self) -> Result<T> {
        let (e, _) = self.items.pop_front().ok_or(Error::EmptyQueue)?;
        if matches!(self.candidates.front(), Some(&(s, _)) if s == self.head) {
            self.candidates.pop_front();
        }
        self.head += 1;
        Ok(e)
    }

    pub fn min(&self) -> Result<P> {
        self.candidates
            .front()
            .map(|c| c.1)
            .ok_or(Error::EmptyQueue)
    }

    /// The oldest element of minimum priority.
    pub fn min_entry(&self) -> Result<(&T, P)> {
        let &(s, p) = self.candidates.front().ok_or(Error::EmptyQueue)?;
        Ok((&self.items[(s - self.head) as usize].0, p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Full {
    None,
    End,
    Delete,
    /// The final inserted point covers π_k..π_i, k stored in `insert_from`.
    Insert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EndStep {
    None,
    Left,
    Down,
    Diag,
}

/// Filled dynamic-programming table for one of the three edit variants.
#[derive(Clone, Debug)]
pub struct EditDpTable {
    ops: EditOps,
    m: usize,
    n: usize,
    full: Vec<Cost>,
    end: Vec<Cost>,
    full_step: Vec<Full>,
    insert_from: Vec<u32>,
    end_step: Vec<EndStep>,
    mu: Option<MuTable>,
}

impl EditDpTable {
    // Column-major, matching the j-major sweep.
    fn at(&self, i: usize, j: usize) -> usize {
        j * (self.m + 1) + i
    }

    pub fn ops(&self) -> EditOps {
        self.ops
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Edit cost for the prefixes π[1, i] and σ[1, j]; `(0, 0)` is 0.
    pub fn get(&self, i: usize, j: usize) -> Cost {
        self.full[self.at(i, j)]
    }

    /// Like [`EditDpTable::get`], restricted to σ' ending with σ_j.
    pub fn get_end(&self, i: usize, j: usize) -> Cost {
        self.end[self.at(i, j)]
    }

    pub fn cost(&self) -> Cost {
        self.get(self.m, self.n)
    }

    pub fn mu(&self) -> Option<&MuTable> {
        self.mu.as_ref()
    }
}

/// Fills the table for `ops`. The seed only affects the ball computations.
pub fn edit_table(
    pi: &Curve,
    sigma: &Curve,
    delta: f64,
    ops: EditOps,
    seed: u64,
) -> Result<EditDpTable> {
    check_delta(delta)?;
    pi.check_same_dim(sigma)?;
    let (m, n) = (pi.len(), sigma.len());
    let mu = if ops.inserts() {
        Some(mu_table_seeded(pi, delta, seed)?)
    } else {
        None
    };
    let cells = (m + 1) * (n + 1);
    let mut t = EditDpTable {
        ops,
        m,
        n,
        full: vec![Cost::INFINITE; cells],
        end: vec![Cost::INFINITE; cells],
        full_step: vec![Full::None; cells],
        insert_from: if ops.inserts() {
            vec![0; cells]
        } else {
            Vec::new()
        },
        end_step: vec![EndStep::None; cells],
        mu,
    };
    let h = m + 1;
    t.full[0] = Cost::ZERO;
    for j in 0..=n {
        let mut queue: MinQueue<u32, Cost> = MinQueue::new();
        let q = (j > 0).then(|| sigma.vertex(j - 1).coords());
        for i in 0..=m {
            let k = j * h + i;
            if i == 0 && j == 0 {
                continue;
            }
            let mut best = Cost::INFINITE;
            let mut step = Full::None;
            if let (true, Some(q)) = (i > 0, q) {
                if within(pi.vertex(i - 1).coords(), q, delta) {
                    let opts = [
                        (t.full[k - h], EndStep::Left),
                        (t.end[k - 1], EndStep::Down),
                        (t.full[k - h - 1], EndStep::Diag),
                    ];
                    let (c, s) = opts.into_iter().min_by_key(|o| o.0).expect("three options");
                    if c.is_finite() {
                        t.end[k] = c;
                        t.end_step[k] = s;
                        best = c;
                        step = Full::End;
                    }
                }
            }
            if ops.deletes() && j > 0 {
                let c = t.full[k - h].plus(1);
                if c < best {
                    best = c;
                    step = Full::Delete;
                }
            }
            if let (Some(mu), true) = (&t.mu, i > 0) {
                // Window of the final inserted point: k' ∈ [μ(i), i], priority full(k'-1, j).
                let lo = mu.get(i);
                let prev_lo = if i > 1 { mu.get(i - 1) } else { 1 };
                for _ in prev_lo..lo {
                    queue.dequeue()?;
                }
                queue.enqueue(i as u32, t.full[k - 1]);
                let (&kk, c) = queue.min_entry()?;
                let c = c.plus(1);
                if c < best {
                    best = c;
                    step = Full::Insert;
                    t.insert_from[k] = kk;
                }
            }
            t.full[k] = best;
            t.full_step[k] = step;
        }
    }
    Ok(t)
}

/// Deletion-only discrete edit distance.
pub fn discrete_delete_edit(pi: &Curve, sigma: &Curve, delta: f64) -> Result<Cost> {
    Ok(edit_table(pi, sigma, delta, EditOps::Delete, 0)?.cost())
}

/// Insertion-only discrete edit distance.
pub fn discrete_insert_edit(pi: &Curve, sigma: &Curve, delta: f64) -> Result<Cost> {
    Ok(edit_table(pi, sigma, delta, EditOps::Insert, 0)?.cost())
}

/// Discrete edit distance with deletions and insertions; always finite.
pub fn discrete_edit(pi: &Curve, sigma: &Curve, delta: f64) -> Result<Cost> {
    Ok(edit_table(pi, sigma, delta, EditOps::Both, 0)?.cost())
}

/// Backtracks an optimal script. Inserted points are ball centres of μ windows.
pub fn reconstruct_edits(table: &EditDpTable) -> Result<EditScript> {
    if !table.cost().is_finite() {
        return Err(Error::NoScript);
    }
    let mut rev = Vec::new();
    let (mut i, mut j) = (table.m, table.n);
    let mut at_end = false;
    while i > 0 || j > 0 {
        let k = table.at(i, j);
        if at_end {
            match table.end_step[k] {
                EndStep::Left => {
                    j -= 1;
                    at_end = false;
                }
                EndStep::Down => i -= 1,
                EndStep::Diag => {
                    i -= 1;
                    j -= 1;
                    at_end = false;
                }
                EndStep::None => unreachable!("finite end entry without a step"),
            }
            continue;
        }
        match table.full_step[k] {
            Full::End => at_end = true,
            Full::Delete => {
                rev.push(EditOp::Delete { index: j });
                j -= 1;
            }
            Full::Insert => {
                let kk = table.insert_from[k];
                let mu = table.mu.as_ref().expect("insertion needs μ");
                rev.push(EditOp::Insert {
                    position: j,
                    point: mu.center(i).clone(),
                });
                i = kk as usize - 1;
            }
            Full::None => unreachable!("finite entry without a step"),
        }
    }
    rev.reverse();
    Ok(EditScript { ops: rev })
}
