mod common;

use common::*;
use frechet_edit_core::frechet::{decide_weak_continuous, decide_weak_discrete};
use frechet_edit_core::hardness::{
    brute_force_weak_edit, gen_deletion_reduction, gen_reduction, lift_blueprint, lift_to_plane,
    unlimited_insertion_feasible, verify_reduction, EnumCaps, ReductionKind, SatInstance, BIG,
};
use frechet_edit_core::script::EditOps;
use frechet_edit_core::{Curve, Error, Point};
use rand::Rng;

fn line(v: &[f64]) -> Curve {
    Curve::from_values(v).unwrap()
}

fn values(c: &Curve) -> Vec<f64> {
    c.vertices().iter().map(|p| p.coords()[0]).collect()
}

fn all_formulas(vs: &[usize]) -> Vec<SatInstance> {
    vs.iter()
        .flat_map(|&v| {
            (1..=2).flat_map(move |c| {
                formulas(v, c)
                    .into_iter()
                    .map(move |f| SatInstance::new(v, f).unwrap())
            })
        })
        .collect()
}

#[test]
fn budgeted_deletion_sweep() {
    for sat in all_formulas(&[1, 2]) {
        let ok = verify_reduction(&sat, ReductionKind::DeleteBudget, &EnumCaps::default()).unwrap();
        assert!(ok, "{:?}", sat.clauses());
    }
}

#[test]
fn edit_reduction_v1() {
    for sat in all_formulas(&[1]) {
        let ok = verify_reduction(&sat, ReductionKind::EditBudget, &EnumCaps::default()).unwrap();
        assert!(ok, "{:?}", sat.clauses());
    }
}

/// Every feasible deletion set of the unlimited blueprint stays inside the
/// variable layer, and removing 14 (resp. 16) only works when every clause
/// holds x1 (resp. ¬x1).
#[test]
fn containment_and_opposing_gaps() {
    for sat in all_formulas(&[1]) {
        let bp = gen_deletion_reduction(&sat);
        let p = pts(&bp.pi);
        let s = values(&bp.sigma);
        let n = s.len();
        let mut feasible = 0;
        for mask in 0u32..(1 << n) {
            let kept: Vec<Vec<f64>> = (0..n)
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| vec![s[i]])
                .collect();
            if kept.is_empty() || !weak_disc_decide(&p, &kept, 1.0) {
                continue;
            }
            feasible += 1;
            let deleted: Vec<f64> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| s[i])
                .collect();
            assert!(
                deleted.iter().all(|&x| (13.0..=17.0).contains(&x)),
                "{:?}: deleted {deleted:?}",
                sat.clauses()
            );
            if deleted.contains(&14.0) {
                assert!(
                    sat.clauses().iter().all(|c| c.contains(&1)),
                    "{:?}: deleted {deleted:?}",
                    sat.clauses()
                );
            }
            if deleted.contains(&16.0) {
                assert!(
                    sat.clauses().iter().all(|c| c.contains(&-1)),
                    "{:?}: deleted {deleted:?}",
                    sat.clauses()
                );
            }
        }
        assert_eq!(feasible > 0, sat.satisfiable(), "{:?}", sat.clauses());
    }
}

#[test]
fn weak_discrete_matches_reference() {
    let mut r = rng(21);
    for _ in 0..300 {
        let (m, n) = (r.random_range(1..=6), r.random_range(1..=6));
        let pi = int_curve(&mut r, m, 1, 5);
        let sigma = int_curve(&mut r, n, 1, 5);
        assert_eq!(
            decide_weak_discrete(&pi, &sigma, 1.0).unwrap(),
            weak_disc_decide(&pts(&pi), &pts(&sigma), 1.0)
        );
    }
}

#[test]
fn deletion_brute_force_matches_subsets() {
    let mut r = rng(22);
    for _ in 0..200 {
        let (m, n) = (r.random_range(1..=5), r.random_range(1..=7));
        let pi = int_curve(&mut r, m, 1, 6);
        let sigma = int_curve(&mut r, n, 1, 6);
        let p = pts(&pi);
        let want = min_deletions(&pts(&sigma), |s| weak_disc_decide(&p, s, 1.0));
        let got = brute_force_weak_edit(
            &pi,
            &sigma,
            1.0,
            EditOps::Delete,
            None,
            &EnumCaps::default(),
        )
        .unwrap();
        assert_eq!(got.value().map(|v| v as usize), want);
    }
}

#[test]
fn unlimited_insertion_easy_case() {
    let mut r = rng(23);
    let caps = EnumCaps::default();
    for _ in 0..150 {
        let (m, n) = (r.random_range(1..=2), r.random_range(1..=2));
        let pi = int_curve(&mut r, m, 1, 6);
        let sigma = int_curve(&mut r, n, 1, 6);
        let easy = unlimited_insertion_feasible(&pi, &sigma, 1.0).unwrap();
        let bounded =
            brute_force_weak_edit(&pi, &sigma, 1.0, EditOps::Insert, Some(4), &caps).unwrap();
        assert_eq!(
            easy,
            bounded.is_finite(),
            "{:?} {:?}",
            values(&pi),
            values(&sigma)
        );
        let unlimited =
            brute_force_weak_edit(&pi, &sigma, 1.0, EditOps::Insert, None, &caps).unwrap();
        assert_eq!(unlimited, bounded);
    }
}

/// Fewest edits using any inserted value from `grid`, by plain enumeration.
fn grid_edit_cost(pi: &[f64], sigma: &[f64], grid: &[f64], max: usize) -> Option<usize> {
    let p: Vec<Vec<f64>> = pi.iter().map(|&x| vec![x]).collect();
    let ok = |s: &[Vec<f64>]| !s.is_empty() && weak_disc_decide(&p, s, 1.0);
    let pool: Vec<Vec<f64>> = grid.iter().map(|&x| vec![x]).collect();
    let n = sigma.len();
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << n) {
        let d = mask.count_ones() as usize;
        if d > max {
            continue;
        }
        let kept: Vec<Vec<f64>> = (0..n)
            .filter(|i| mask >> i & 1 == 0)
            .map(|i| vec![sigma[i]])
            .collect();
        if let Some(k) = min_insertions(&kept, &pool, max - d, &|s| ok(s)) {
            best = Some(best.map_or(d + k, |b| b.min(d + k)));
        }
    }
    best
}

#[test]
fn insertion_candidates_are_complete_at_micro_scale() {
    let grid: Vec<f64> = (-12..=28).map(|i| i as f64 * 0.25).collect();
    for (pi, sigma) in [
        (vec![0.0, 3.0, 1.0], vec![0.0, 2.5]),
        (vec![0.0, 4.0], vec![0.5, 6.0, 3.5]),
        (vec![1.0, 3.5, 0.0, 2.0], vec![1.0, 2.0]),
    ] {
        let got = brute_force_weak_edit(
            &line(&pi),
            &line(&sigma),
            1.0,
            EditOps::Both,
            Some(2),
            &EnumCaps::default(),
        )
        .unwrap();
        let want = grid_edit_cost(&pi, &sigma, &grid, 2);
        assert_eq!(got.value().map(|v| v as usize), want, "{pi:?} {sigma:?}");
    }
}

#[test]
fn caps_are_enforced() {
    let pi = line(&[0.0, 5.0, 10.0]);
    let sigma = line(&[40.0, 50.0, 60.0, 70.0]);
    let caps = EnumCaps {
        subsets: 3,
        insertions: 3,
    };
    let e = brute_force_weak_edit(&pi, &sigma, 1.0, EditOps::Delete, None, &caps).unwrap_err();
    assert!(matches!(e, Error::Capacity { .. }));
    let e = brute_force_weak_edit(
        &pi,
        &line(&[0.0, 10.0]),
        1.0,
        EditOps::Insert,
        Some(3),
        &caps,
    )
    .unwrap_err();
    assert!(matches!(e, Error::Capacity { .. }));
}

#[test]
fn lift_on_generated_instances() {
    for sat in all_formulas(&[1]) {
        let bp = gen_deletion_reduction(&sat);
        let lp = lift_to_plane(&bp.pi, BIG).unwrap();
        let s = values(&bp.sigma);
        for a in 0..s.len() {
            for b in a..s.len() {
                let kept: Vec<f64> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != a && i != b)
                    .map(|(_, &x)| x)
                    .collect();
                let sig = line(&kept);
                let want = decide_weak_discrete(&bp.pi, &sig, 1.0).unwrap();
                let got =
                    decide_weak_continuous(&lp, &lift_to_plane(&sig, BIG).unwrap(), 1.0).unwrap();
                assert_eq!(got, want, "{:?} minus {a},{b}", sat.clauses());
            }
        }
    }
}

#[test]
fn lifted_blueprint_keeps_answer() {
    for sat in all_formulas(&[1]) {
        for kind in [
            ReductionKind::DeleteUnlimited,
            ReductionKind::DeleteBudget,
            ReductionKind::InsertBudget,
        ] {
            let bp = gen_reduction(&sat, kind);
            let l = lift_blueprint(&bp, BIG).unwrap();
            assert_eq!(l.pi.dim(), 2);
            assert!(l.sigma.vertices().iter().any(|p| p.coords() == [0.0, BIG]));
            assert_eq!(
                decide_weak_discrete(&bp.pi, &bp.sigma, 1.0).unwrap(),
                decide_weak_continuous(&l.pi, &l.sigma, 1.0).unwrap()
            );
        }
    }
}

#[test]
fn blueprints_are_integral_and_deterministic() {
    for sat in all_formulas(&[1, 2]) {
        for kind in [
            ReductionKind::DeleteUnlimited,
            ReductionKind::DeleteBudget,
            ReductionKind::InsertBudget,
            ReductionKind::EditBudget,
        ] {
            let a = gen_reduction(&sat, kind);
            assert_eq!(a, gen_reduction(&sat, kind));
            assert_eq!(a.delta, 1.0);
            let all: Vec<&Point> = a.pi.vertices().iter().chain(a.sigma.vertices()).collect();
            assert!(all.iter().all(|p| p.coords()[0].fract() == 0.0));
            assert_eq!(
                a.clauses.len() % 2,
                if kind == ReductionKind::DeleteUnlimited {
                    0
                } else {
                    1
                }
            );
        }
    }
}
