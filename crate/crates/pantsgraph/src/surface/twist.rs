//! Dehn twists computed by crossing resolution.
//!
//! The twist along `about` is the image of the annulus homeomorphism: at
//! every crossing of the curve with `about`, the curve is rerouted around a
//! full parallel copy of `about`.  The copy's traversal direction is the
//! product of the twist handedness with the local crossing sign (a strand
//! crossing the annulus the other way traverses its spiral in the opposite
//! word order; getting this wrong fails to fix null-homotopic circles).
//! The rerouted edge word is then reduced to its taut form, whose per-edge
//! counts are the normal coordinates of the twisted class.

use crate::error::{Error, Result};

use super::arrange::{Arrangement, Event};
use super::curve::{curve_from_word, CurveClass};
use super::triangulation::EdgeId;

/// T_about^power applied to c.  Power 0 is the identity; negative powers
/// twist the other way.
pub fn dehn_twist(c: &CurveClass, about: &CurveClass, power: i64) -> Result<CurveClass> {
    if c.surface() != about.surface() {
        return Err(Error::SurfaceMismatch);
    }
    if !about.is_essential() {
        return Err(Error::NotEssential);
    }
    if power == 0 {
        return Ok(c.clone());
    }
    let hand = power.signum() as i8;
    let mut cur = c.clone();
    for _ in 0..power.abs() {
        cur = twist_once(&cur, about, hand)?;
    }
    Ok(cur)
}

fn twist_once(c: &CurveClass, about: &CurveClass, hand: i8) -> Result<CurveClass> {
    let arr = Arrangement::build(c.curve(), about.curve());
    debug_assert_eq!(arr.a_walks.len(), 1);
    debug_assert_eq!(arr.b_walks.len(), 1);
    let a_walk = &arr.a_walks[0];
    let b_walk = &arr.b_walks[0];

    let mut word: Vec<EdgeId> = Vec::new();
    for ev in a_walk {
        match *ev {
            Event::Edge { edge, .. } => word.push(edge),
            Event::Cross { id } => {
                let x = arr.crossings[id];
                splice_loop(b_walk, x.b_pos, hand * x.sign(), &mut word);
            }
        }
    }
    let curve = curve_from_word(c.surface(), &word)?;
    CurveClass::from_curve(curve)
}

/// Append one full loop of the `about` walk, starting at the crossing
/// position, in the requested direction.
fn splice_loop(b_walk: &[Event], pos: usize, dir: i8, out: &mut Vec<EdgeId>) {
    let len = b_walk.len();
    for k in 1..=len {
        let idx = if dir > 0 { (pos + k) % len } else { (pos + len - k) % len };
        if let Event::Edge { edge, .. } = b_walk[idx] {
            out.push(edge);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::arrange::geometric_intersection;
    use crate::surface::curve::{NormalMultiCurve, SurfaceSpec};

    fn s4() -> SurfaceSpec {
        SurfaceSpec::sphere(4).unwrap()
    }

    fn cc(w: Vec<i64>) -> CurveClass {
        CurveClass::from_curve(NormalMultiCurve::new(s4(), w).unwrap()).unwrap()
    }

    #[test]
    fn power_zero_is_identity() {
        let c12 = cc(vec![0, 1, 1, 1, 0, 1]);
        let c23 = cc(vec![1, 0, 0, 1, 1, 1]);
        assert_eq!(dehn_twist(&c23, &c12, 0).unwrap(), c23);
    }

    #[test]
    fn twist_about_disjoint_curve_fixes() {
        let s6 = SurfaceSpec::sphere(6).unwrap();
        // boundaries of neighborhoods of the arcs (1,2) and (4,5) in fan(6)
        let a = CurveClass::from_curve(
            NormalMultiCurve::new(s6, vec![0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1]).unwrap(),
        )
        .unwrap();
        let b = CurveClass::from_curve(
            NormalMultiCurve::new(s6, vec![0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 1, 1]).unwrap(),
        )
        .unwrap();
        assert_eq!(geometric_intersection(a.curve(), b.curve()), 0);
        for n in [-2, 1, 3] {
            assert_eq!(dehn_twist(&a, &b, n).unwrap(), a);
        }
    }

    #[test]
    fn twist_then_untwist_is_identity() {
        let c12 = cc(vec![0, 1, 1, 1, 0, 1]);
        let c23 = cc(vec![1, 0, 0, 1, 1, 1]);
        let t = dehn_twist(&c23, &c12, 1).unwrap();
        assert_ne!(t, c23);
        let back = dehn_twist(&t, &c12, -1).unwrap();
        assert_eq!(back, c23);
    }

    #[test]
    fn twist_growth_matches_intersection_square() {
        // i(T_a^n(b), b) = |n| i(a, b)^2
        let a = cc(vec![0, 1, 1, 1, 0, 1]);
        let b = cc(vec![1, 0, 0, 1, 1, 1]);
        let i_ab = geometric_intersection(a.curve(), b.curve());
        assert_eq!(i_ab, 2);
        for n in -3i64..=3 {
            let t = dehn_twist(&b, &a, n).unwrap();
            assert_eq!(
                geometric_intersection(t.curve(), b.curve()),
                n.abs() * i_ab * i_ab,
                "growth mismatch at n = {n}"
            );
        }
    }
}
