//! Index formula and the corner-rounding relation between orbit sets.

use super::orbit::{Orbit, OrbitSet};
use crate::error::{Error, Result};
use crate::lattice::{e_path, lattice_points_strictly_between, strictly_left_inside, Bound, Frac, Vec2};

fn same_total(a: &OrbitSet, b: &OrbitSet) -> Result<()> {
    if a.total() != b.total() {
        return Err(Error::TotalMismatch(a.to_string(), b.to_string()));
    }
    Ok(())
}

fn half_integer_to_int(x: Frac) -> i64 {
    assert!(x.is_integer(), "index {x} is not an integer");
    x.to_integer()
}

/// `I(a, b)`: elliptic count difference plus twice the area between paths.
pub fn relative_index(a: &OrbitSet, b: &OrbitSet) -> Result<i64> {
    same_total(a, b)?;
    let area = (b.path().area_pdq() - a.path().area_pdq()) * 2;
    Ok(b.elliptic_count() - a.elliptic_count() + half_integer_to_int(area))
}

fn pairwise_dets(s: &OrbitSet) -> i64 {
    let f: Vec<Vec2> = s.factors().into_iter().map(|(v, _)| v).collect();
    let mut total = 0;
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            total += f[i].det(&f[j]);
        }
    }
    total
}

/// The quadratic term two ways: twice the area difference, and the sum of
/// pairwise determinants. Returns `(via_area, via_dets)`.
pub fn q_tau_crosscheck(a: &OrbitSet, b: &OrbitSet) -> Result<(i64, i64)> {
    same_total(a, b)?;
    let via_area = half_integer_to_int((b.path().area_pdq() - a.path().area_pdq()) * 2);
    let via_dets = pairwise_dets(b) - pairwise_dets(a);
    Ok((via_area, via_dets))
}

/// How `a` sits inside `b`: `a = gamma + a_loc`, `b = gamma + b_loc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub gamma: OrbitSet,
    pub a_loc: OrbitSet,
    pub b_loc: OrbitSet,
}

/// Slope conditions plus the two path conditions.
fn local_geometry(a_loc: &OrbitSet, b_loc: &OrbitSet, gamma: &OrbitSet) -> bool {
    let (Some(hi), Some(lo)) = (b_loc.max_slope(), b_loc.min_slope()) else {
        return false;
    };
    let gamma_ok = gamma
        .orbits()
        .iter()
        .all(|o| o.v.cmp_slope(&hi).is_ge() || o.v.cmp_slope(&lo).is_le());
    let a_ok = a_loc
        .orbits()
        .iter()
        .all(|o| o.v.cmp_slope(&hi).is_le() && o.v.cmp_slope(&lo).is_ge());
    if !(gamma_ok && a_ok) {
        return false;
    }
    let (pa, pb) = (a_loc.path(), b_loc.path());
    strictly_left_inside(&pa, &pb).unwrap_or(false)
        && lattice_points_strictly_between(&pa, &pb).is_ok_and(|v| v.is_empty())
}

fn search(a: &OrbitSet, b: &OrbitSet, k: usize, labels_ok: impl Fn(i64, i64) -> bool) -> Option<Witness> {
    for b_loc in b.sub_multisets(k) {
        let hb = b_loc.hyperbolic_count();
        let gamma = b.minus(&b_loc).expect("sub-multiset");
        let Some(a_loc) = a.minus(&gamma) else { continue };
        if !labels_ok(hb, a_loc.hyperbolic_count()) {
            continue;
        }
        if local_geometry(&a_loc, &b_loc, &gamma) {
            return Some(Witness { gamma, a_loc, b_loc });
        }
    }
    None
}

/// Whether `a` is obtained from `b` by rounding a corner, tested directly
/// against the definition over every two-factor sub-multiset of `b`.
pub fn is_rounding(a: &OrbitSet, b: &OrbitSet) -> Result<Option<Witness>> {
    same_total(a, b)?;
    Ok(search(a, b, 2, |hb, ha| (hb == 1 && ha == 0) || (hb == 2 && ha == 1)))
}

/// Same conditions with a three-factor, all-hyperbolic corner and an
/// all-elliptic replacement.
pub fn is_double_rounding(a: &OrbitSet, b: &OrbitSet) -> Result<Option<Witness>> {
    same_total(a, b)?;
    Ok(search(a, b, 3, |hb, ha| hb == 3 && ha == 0))
}

/// Labelings of a rounded path: all elliptic when the corner had one
/// hyperbolic factor, one hyperbolic edge at a time when it had two.
fn labelled(path: &[(Vec2, u32)], corner_hyperbolic: i64) -> Vec<OrbitSet> {
    let plain = |h_at: Option<usize>| {
        OrbitSet::from_orbits(path.iter().enumerate().map(|(i, &(v, m))| {
            let h = h_at == Some(i);
            Orbit { v, e: m - h as u32, h }
        }))
        .expect("distinct slopes")
    };
    match corner_hyperbolic {
        1 => vec![plain(None)],
        2 => (0..path.len()).map(|i| plain(Some(i))).collect(),
        _ => Vec::new(),
    }
}

/// Every `a` obtained from `b` by rounding a corner, built from the hull of
/// the lattice triangle under each corner. Entries may repeat when two
/// corners round to the same set.
pub fn rounding_sources(b: &OrbitSet) -> Vec<(OrbitSet, Witness)> {
    let mut out = Vec::new();
    for b_loc in b.sub_multisets(2) {
        let hb = b_loc.hyperbolic_count();
        let (Some(hi), Some(lo)) = (b_loc.max_slope(), b_loc.min_slope()) else { continue };
        if hb == 0 || hi == lo {
            continue;
        }
        let gamma = b.minus(&b_loc).expect("sub-multiset");
        let inside = gamma
            .orbits()
            .iter()
            .any(|o| o.v.cmp_slope(&hi).is_lt() && o.v.cmp_slope(&lo).is_gt());
        if inside {
            continue;
        }
        let t = b_loc.total();
        let path = e_path(Bound::plus_eps(lo.slope()), Bound::minus_eps(hi.slope()), t.p, t.q)
            .expect("corner total lies strictly between its slopes");
        for a_loc in labelled(path.edges(), hb) {
            if let Some(a) = gamma.union(&a_loc) {
                out.push((a, Witness { gamma: gamma.clone(), a_loc, b_loc: b_loc.clone() }));
            }
        }
    }
    out
}
