//! 3SAT reductions for the weak edit variants, with brute-force verifiers.
//!
//! All generated curves live in R^1 with integer values and δ = 1; the lift
//! moves them to the x-axis of the plane with a far point between neighbours.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::frechet::decide_weak_discrete;
use crate::geom::{Curve, Point};
use crate::script::EditOps;

/// Lift height used by default.
pub const BIG: f64 = 1e6;

/// A 3SAT formula over variables `1..=v`; literal `-k` negates variable k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatInstance {
    v: usize,
    clauses: Vec<[i32; 3]>,
}

impl SatInstance {
    pub fn new(v: usize, clauses: Vec<[i32; 3]>) -> Result<SatInstance> {
        if v == 0 {
            return Err(Error::Invalid(
                "a formula needs at least one variable".into(),
            ));
        }
        if clauses.is_empty() {
            return Err(Error::Invalid("a formula needs at least one clause".into()));
        }
        for c in &clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > v {
                    return Err(Error::Invalid(alloc::format!(
                        "literal {l} outside 1..={v}"
                    )));
                }
            }
        }
        Ok(SatInstance { v, clauses })
    }

    pub fn vars(&self) -> usize {
        self.v
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// Exhaustive check over all `2^v` assignments.
    pub fn satisfiable(&self) -> bool {
        assert!(self.v < 32, "too many variables for exhaustive search");
        (0u32..1 << self.v).any(|bits| {
            self.clauses.iter().all(|c| {
                c.iter().any(|&l| {
                    let val = bits >> (l.unsigned_abs() - 1) & 1 == 1;
                    val == (l > 0)
                })
            })
        })
    }
}

/// Which edit problem a blueprint encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    /// Any number of deletions from σ; containment gadget at the end of π.
    DeleteUnlimited,
    /// At most v deletions; non-variable rows and all columns repeated v+1 times.
    DeleteBudget,
    /// At most v insertions into σ.
    InsertBudget,
    /// At most v insertions or deletions; σ rows repeated v+1 times.
    EditBudget,
}

impl ReductionKind {
    pub fn ops(self) -> EditOps {
        match self {
            ReductionKind::DeleteUnlimited | ReductionKind::DeleteBudget => EditOps::Delete,
            ReductionKind::InsertBudget => EditOps::Insert,
            ReductionKind::EditBudget => EditOps::Both,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::DeleteUnlimited => "delete-unlimited",
            ReductionKind::DeleteBudget => "delete-budget",
            ReductionKind::InsertBudget => "insert-budget",
            ReductionKind::EditBudget => "edit-budget",
        }
    }
}

/// Generated instance plus the pieces it was assembled from.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionBlueprint {
    pub kind: ReductionKind,
    pub pi: Curve,
    pub sigma: Curve,
    pub delta: f64,
    pub budget: Option<usize>,
    /// Clauses actually encoded (after parity padding).
    pub clauses: Vec<[i32; 3]>,
    /// Named building sequences.
    pub sequences: Vec<(String, Vec<i64>)>,
    /// Number of σ vertices before the empty variable sublayer (insertion kinds).
    pub sublayer_gap: Option<usize>,
    /// Copies of each protected vertex (1 when nothing is repeated).
    pub copies: usize,
    /// Lift height, once lifted.
    pub lift: Option<f64>,
}

fn l_seq(v: usize) -> Vec<i64> {
    (1..=v as i64).map(|i| 10 * i + 5).collect()
}

fn replaced(v: usize, k: usize, val: i64) -> Vec<i64> {
    let mut l = l_seq(v);
    l[k - 1] = val;
    l
}

fn rev(s: &[i64]) -> Vec<i64> {
    s.iter().rev().copied().collect()
}

fn cat(parts: &[&[i64]]) -> Vec<i64> {
    parts.concat()
}

fn to_curve(vals: &[i64]) -> Curve {
    Curve::from_vec_unchecked(vals.iter().map(|&x| Point::x(x as f64)).collect())
}

fn repeat_each(vals: &[i64], copies: usize, keep: impl Fn(usize) -> bool) -> Vec<i64> {
    let mut out = Vec::new();
    for (i, &x) in vals.iter().enumerate() {
        let c = if keep(i) { 1 } else { copies };
        out.extend(core::iter::repeat_n(x, c));
    }
    out
}

/// Pads the clause list to the wanted parity by repeating the last clause.
fn with_parity(clauses: &[[i32; 3]], odd: bool) -> Vec<[i32; 3]> {
    let mut c = clauses.to_vec();
    if (c.len() % 2 == 1) != odd {
        c.push(*c.last().expect("nonempty"));
    }
    c
}

/// Deletion reduction with unlimited deletions (containment gadget).
pub fn gen_deletion_reduction(sat: &SatInstance) -> ReductionBlueprint {
    deletion(sat, false)
}

/// Deletion reduction with a budget of v deletions.
pub fn gen_deletion_budget_reduction(sat: &SatInstance) -> ReductionBlueprint {
    deletion(sat, true)
}

fn deletion(sat: &SatInstance, budget: bool) -> ReductionBlueprint {
    let v = sat.v;
    let vi = v as i64;
    let top = 10 * (vi + 1);
    let end = 10 * (vi + 2);
    let l = l_seq(v);
    let l_hat: Vec<i64> = (1..=vi).flat_map(|j| [10 * j + 4, 10 * j + 6]).collect();
    let lit = |x: i32| {
        let k = x.unsigned_abs() as usize;
        replaced(v, k, 10 * k as i64 + if x > 0 { 6 } else { 4 })
    };
    let gadget = |c: &[i32; 3]| {
        cat(&[
            &[10],
            &lit(c[0]),
            &[top],
            &rev(&lit(c[1])),
            &[10],
            &lit(c[2]),
            &[top],
        ])
    };
    let clauses = with_parity(&sat.clauses, budget);
    let mut pi = vec![0];
    for (i, c) in clauses.iter().enumerate() {
        if i % 2 == 0 {
            pi.extend(gadget(c));
            pi.push(end);
        } else {
            pi.extend(rev(&gadget(c)));
            pi.push(0);
        }
    }
    let (lo_glue, hi_glue) = if budget { (10, 10) } else { (9, 11) };
    if !budget {
        let containment = cat(&[&[9], &l, &[top], &rev(&l), &[11], &l, &[top]]);
        pi.extend(containment);
        pi.push(end);
    }
    let head = cat(&[&[0, lo_glue], &l, &[top]]);
    let tail = cat(&[&[hi_glue], &l, &[top, end]]);
    let sigma = cat(&[&head, &rev(&l_hat), &tail]);
    let copies = if budget { v + 1 } else { 1 };
    let (pi, sigma) = if budget {
        let (a, b) = (head.len(), head.len() + l_hat.len());
        (
            repeat_each(&pi, copies, |_| false),
            repeat_each(&sigma, copies, |i| i >= a && i < b),
        )
    } else {
        (pi, sigma)
    };
    let mut sequences = vec![("L".into(), l.clone()), ("L_hat".into(), l_hat)];
    for k in 1..=v {
        sequences.push((alloc::format!("L_{k}^+"), replaced(v, k, 10 * k as i64 + 6)));
        sequences.push((alloc::format!("L_{k}^-"), replaced(v, k, 10 * k as i64 + 4)));
    }
    ReductionBlueprint {
        kind: if budget {
            ReductionKind::DeleteBudget
        } else {
            ReductionKind::DeleteUnlimited
        },
        pi: to_curve(&pi),
        sigma: to_curve(&sigma),
        delta: 1.0,
        budget: budget.then_some(v),
        clauses,
        sequences,
        sublayer_gap: None,
        copies,
        lift: None,
    }
}

/// Insertion reduction with a budget of v insertions.
pub fn gen_insertion_reduction(sat: &SatInstance) -> ReductionBlueprint {
    insertion(sat, false)
}

/// Insertion reduction with every σ row repeated, for budgeted edits.
pub fn gen_edit_reduction(sat: &SatInstance) -> ReductionBlueprint {
    insertion(sat, true)
}

fn insertion(sat: &SatInstance, edit: bool) -> ReductionBlueprint {
    let v = sat.v;
    let vi = v as i64;
    let top = 10 * (vi + 1);
    let l = l_seq(v);
    let l_plus: Vec<i64> = l.iter().map(|x| x + 1).collect();
    let l_minus: Vec<i64> = l.iter().map(|x| x - 1).collect();
    let lit = |x: i32| {
        let k = x.unsigned_abs() as usize;
        replaced(v, k, 10 * k as i64 + if x > 0 { 7 } else { 3 })
    };
    let g = cat(&[&[10], &l_minus, &[top], &rev(&l_plus), &[10], &l, &[top]]);
    let g_hat_front = cat(&[&[10], &l, &[top]]);
    let g_hat_back = cat(&[&[10], &l, &[top]]);
    let g_hat = cat(&[&g_hat_front, &g_hat_back]);
    let g_lit = |x: i32| cat(&[&[10], &l, &[top], &rev(&lit(x)), &[10], &l, &[top]]);
    let mid = 10 * (vi + 2);
    let end = 10 * (vi + 3);
    let head = cat(&[&[0, 5], &g, &[mid]]);
    // Ĝ^R: the gap sits after the reversed back half.
    let sigma = cat(&[&head, &rev(&g_hat), &[5], &g, &[mid, end]]);
    let gap = head.len() + g_hat_back.len();
    let gadget = |c: &[i32; 3]| {
        cat(&[
            &[5],
            &g_lit(c[0]),
            &[mid],
            &rev(&g_lit(c[1])),
            &[5],
            &g_lit(c[2]),
            &[mid],
        ])
    };
    let clauses = with_parity(&sat.clauses, true);
    let mut pi = vec![0];
    for (i, c) in clauses.iter().enumerate() {
        if i % 2 == 0 {
            pi.extend(gadget(c));
            pi.push(end);
        } else {
            pi.extend(rev(&gadget(c)));
            pi.push(0);
        }
    }
    let copies = if edit { v + 1 } else { 1 };
    let sigma = repeat_each(&sigma, copies, |_| false);
    let mut sequences = vec![
        ("L".into(), l.clone()),
        ("L^+".into(), l_plus),
        ("L^-".into(), l_minus),
        ("G".into(), g),
        ("G_hat".into(), g_hat),
    ];
    for k in 1..=v {
        sequences.push((alloc::format!("L_{k}^+"), replaced(v, k, 10 * k as i64 + 7)));
        sequences.push((alloc::format!("L_{k}^-"), replaced(v, k, 10 * k as i64 + 3)));
    }
    ReductionBlueprint {
        kind: if edit {
            ReductionKind::EditBudget
        } else {
            ReductionKind::InsertBudget
        },
        pi: to_curve(&pi),
        sigma: to_curve(&sigma),
        delta: 1.0,
        budget: Some(v),
        clauses,
        sequences,
        sublayer_gap: Some(gap * copies),
        copies,
        lift: None,
    }
}

/// Blueprint of the given kind.
pub fn gen_reduction(sat: &SatInstance, kind: ReductionKind) -> ReductionBlueprint {
    match kind {
        ReductionKind::DeleteUnlimited => gen_deletion_reduction(sat),
        ReductionKind::DeleteBudget => gen_deletion_budget_reduction(sat),
        ReductionKind::InsertBudget => gen_insertion_reduction(sat),
        ReductionKind::EditBudget => gen_edit_reduction(sat),
    }
}

fn check_line(c: &Curve) -> Result<()> {
    if c.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: c.dim(),
        });
    }
    Ok(())
}

/// `x ↦ (x, 0)` with `(0, big)` between consecutive vertices.
pub fn lift_to_plane(c: &Curve, big: f64) -> Result<Curve> {
    lift_with(c, big, |_| 1)
}

/// Lift where gap `i` (after vertex i) receives `far(i)` far points.
fn lift_with(c: &Curve, big: f64, far: impl Fn(usize) -> usize) -> Result<Curve> {
    check_line(c)?;
    let mut out = Vec::with_capacity(2 * c.len());
    for (i, p) in c.vertices().iter().enumerate() {
        if i > 0 {
            for _ in 0..far(i - 1) {
                out.push(Point::xy(0.0, big));
            }
        }
        out.push(Point::xy(p.coords()[0], 0.0));
    }
    Curve::new(out)
}

/// Lifts both curves of a blueprint. Far points are repeated like the
/// protected vertices, and the empty sublayer receives `v + 1` of them so
/// that inserted values can sit between far points.
pub fn lift_blueprint(bp: &ReductionBlueprint, big: f64) -> Result<ReductionBlueprint> {
    let copies = bp.copies;
    let pi = lift_with(&bp.pi, big, |_| copies)?;
    let v = bp.budget.unwrap_or(1);
    let gap = bp.sublayer_gap;
    let sigma = lift_with(&bp.sigma, big, |i| {
        if gap == Some(i + 1) {
            copies.max(v + 1)
        } else {
            copies
        }
    })?;
    let mut out = bp.clone();
    out.pi = pi;
    out.sigma = sigma;
    out.lift = Some(big);
    Ok(out)
}

/// Enumeration limits for [`brute_force_weak_edit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumCaps {
    pub subsets: u64,
    pub insertions: u64,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            subsets: 1 << 20,
            insertions: 1_000_000,
        }
    }
}

/// Feasibility with unlimited insertions: every σ vertex within δ of some π vertex.
pub fn unlimited_insertion_feasible(pi: &Curve, sigma: &Curve, delta: f64) -> Result<bool> {
    pi.check_same_dim(sigma)?;
    Ok(sigma.vertices().iter().all(|s| {
        pi.vertices()
            .iter()
            .any(|p| crate::geom::within(s.coords(), p.coords(), delta))
    }))
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Candidate inserted values `{π_i − δ, π_i, π_i + δ}`.
pub fn insertion_candidates(pi: &Curve, delta: f64) -> Vec<f64> {
    let mut c: Vec<f64> = pi
        .vertices()
        .iter()
        .flat_map(|p| {
            let x = p.coords()[0];
            [x - delta, x, x + delta]
        })
        .collect();
    c.sort_by(f64::total_cmp);
    c.dedup();
    c
}

/// Fewest edits making the weak discrete distance at most δ, by exhaustive
/// enumeration; `Cost::INFINITE` when no edit set within `budget` works.
pub fn brute_force_weak_edit(
    pi: &Curve,
    sigma: &Curve,
    delta: f64,
    ops: EditOps,
    budget: Option<usize>,
    caps: &EnumCaps,
) -> Result<Cost> {
    check_line(pi)?;
    check_line(sigma)?;
    crate::error::check_delta(delta)?;
    let n = sigma.len();
    let vals: Vec<f64> = sigma.vertices().iter().map(|p| p.coords()[0]).collect();
    let cands = insertion_candidates(pi, delta);
    let feasible = |vs: &[f64]| -> Result<bool> {
        if vs.is_empty() {
            return Ok(false);
        }
        let c = Curve::from_vec_unchecked(vs.iter().map(|&x| Point::x(x)).collect());
        decide_weak_discrete(pi, &c, delta)
    };
    let limit = match (ops, budget) {
        (_, Some(b)) => b,
        (EditOps::Delete, None) => n,
        (_, None) => {
            if !unlimited_insertion_feasible(pi, sigma, delta)? && ops == EditOps::Insert {
                return Ok(Cost::INFINITE);
            }
            usize::MAX
        }
    };
    // Budget checks happen per level so unlimited insertion can grow until found.
    let mut spent_subsets: u64 = 0;
    let mut spent_inserts: u64 = 0;
    let mut t = 0usize;
    while t <= limit {
        let dels: Vec<usize> = match ops {
            EditOps::Delete => vec![t],
            EditOps::Insert => vec![0],
            EditOps::Both => (0..=t.min(n)).collect(),
        };
        for d in dels {
            let ins = t - d;
            if ops == EditOps::Delete && d > n {
                continue;
            }
            spent_subsets = spent_subsets.saturating_add(binom(n as u64, d as u64));
            if spent_subsets > caps.subsets {
                return Err(Error::Capacity {
                    needed: spent_subsets,
                    cap: caps.subsets,
                });
            }
            let per = binom((n - d + ins) as u64, ins as u64)
                .saturating_mul((cands.len() as u64).saturating_pow(ins as u32));
            if ins > 0 {
                spent_inserts =
                    spent_inserts.saturating_add(per.saturating_mul(binom(n as u64, d as u64)));
                if spent_inserts > caps.insertions {
                    return Err(Error::Capacity {
                        needed: spent_inserts,
                        cap: caps.insertions,
                    });
                }
            }
            let mut found = false;
            for_each_subset(n, d, &mut |del: &[bool]| {
                if found {
                    return Ok(());
                }
                let kept: Vec<f64> = (0..n).filter(|&i| !del[i]).map(|i| vals[i]).collect();
                if ins == 0 {
                    found = feasible(&kept)?;
                } else {
                    found = any_insertion(&kept, ins, &cands, &feasible)?;
                }
                Ok(())
            })?;
            if found {
                return Ok(Cost::finite(t as u32));
            }
        }
        if t == usize::MAX {
            break;
        }
        t += 1;
    }
    Ok(Cost::INFINITE)
}

fn for_each_subset(n: usize, d: usize, f: &mut dyn FnMut(&[bool]) -> Result<()>) -> Result<()> {
    fn rec(
        i: usize,
        left: usize,
        n: usize,
        cur: &mut Vec<bool>,
        f: &mut dyn FnMut(&[bool]) -> Result<()>,
    ) -> Result<()> {
        if left == 0 {
            return f(cur);
        }
        if n - i < left {
            return Ok(());
        }
        cur[i] = true;
        rec(i + 1, left - 1, n, cur, f)?;
        cur[i] = false;
        rec(i + 1, left, n, cur, f)
    }
    let mut cur = vec![false; n];
    rec(0, d, n, &mut cur, f)
}

/// Whether inserting exactly `ins` candidate values somewhere makes `base` feasible.
fn any_insertion(
    base: &[f64],
    ins: usize,
    cands: &[f64],
    feasible: &dyn Fn(&[f64]) -> Result<bool>,
) -> Result<bool> {
    // Choose the inserted slots of the final sequence, then their values.
    let total = base.len() + ins;
    let mut slots = vec![false; total];
    let mut hit = false;
    for_each_subset(total, ins, &mut |mask: &[bool]| {
        if hit {
            return Ok(());
        }
        slots.copy_from_slice(mask);
        let mut pick = vec![0usize; ins];
        loop {
            let mut out = Vec::with_capacity(total);
            let (mut b, mut p) = (0, 0);
            for &s in slots.iter() {
                if s {
                    out.push(cands[pick[p]]);
                    p += 1;
                } else {
                    out.push(base[b]);
                    b += 1;
                }
            }
            if feasible(&out)? {
                hit = true;
                return Ok(());
            }
            let mut i = 0;
            while i < ins {
                pick[i] += 1;
                if pick[i] < cands.len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == ins {
                return Ok(());
            }
        }
    })?;
    Ok(hit)
}

/// Whether satisfiability of `sat` matches edit feasibility of its blueprint.
pub fn verify_reduction(sat: &SatInstance, kind: ReductionKind, caps: &EnumCaps) -> Result<bool> {
    let bp = gen_reduction(sat, kind);
    let cost = brute_force_weak_edit(&bp.pi, &bp.sigma, bp.delta, kind.ops(), bp.budget, caps)?;
    let feasible = match bp.budget {
        Some(b) => cost.within(b as u32),
        None => cost.is_finite(),
    };
    Ok(feasible == sat.satisfiable())
}
