//! Normal coordinates for multicurves, component tracing and taut words.
//!
//! A multicurve with no trivial components meets each triangle of the fan in
//! corner arcs only; the vector of edge crossing numbers then determines the
//! isotopy class, and equal classes have equal vectors.  That canonicity is
//! what everything else in the crate leans on.
//!
//! Curves also move through the crate as *words*: cyclic sequences of edge
//! crossings.  A word with no two consecutive crossings of the same edge is
//! taut: lifting to the universal cover, a repeat-free word crosses each
//! edge line minimally, so its per-edge counts are exactly the normal
//! coordinates of its class.  `reduce_word` cancels consecutive repeats
//! (each cancellation is a homotopy across a disk contained in a single
//! triangle, which can never contain a puncture) and therefore computes
//! normal coordinates for any closed edge word.

use std::collections::HashMap;
use std::fmt;

use serde::ser::SerializeStruct;

use crate::error::{Error, Result};

use super::triangulation::{EdgeId, Triangulation, TriId};

/// A punctured sphere S_{0,n}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceSpec {
    n: u32,
}

impl SurfaceSpec {
    pub fn sphere(punctures: u32) -> Result<SurfaceSpec> {
        if punctures < 4 {
            return Err(Error::TooFewPunctures(punctures));
        }
        Ok(SurfaceSpec { n: punctures })
    }

    pub fn punctures(&self) -> u32 {
        self.n
    }

    pub fn genus(&self) -> u32 {
        0
    }

    /// kappa(S) = 3g - 3 + p.
    pub fn complexity(&self) -> usize {
        self.n as usize - 3
    }

    pub fn triangulation(&self) -> Triangulation {
        Triangulation::fan(self.n).expect("spec guarantees n >= 4")
    }

    pub fn name(&self) -> String {
        format!("S0.{}", self.n)
    }

    pub fn parse_name(s: &str) -> Result<SurfaceSpec> {
        let rest = s
            .strip_prefix("S0.")
            .ok_or_else(|| Error::Precondition(format!("bad surface name {s:?}")))?;
        let n: u32 = rest
            .parse()
            .map_err(|_| Error::Precondition(format!("bad surface name {s:?}")))?;
        SurfaceSpec::sphere(n)
    }
}

impl fmt::Debug for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A multicurve in normal coordinates over the fan triangulation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalMultiCurve {
    surface: SurfaceSpec,
    weights: Vec<i64>,
}

impl fmt::Debug for NormalMultiCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.surface, self.weights)
    }
}

impl serde::Serialize for NormalMultiCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NormalMultiCurve", 2)?;
        st.serialize_field("surface", &self.surface.name())?;
        st.serialize_field("weights", &self.weights)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for NormalMultiCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            surface: String,
            weights: Vec<i64>,
        }
        let raw = Raw::deserialize(d)?;
        let spec = SurfaceSpec::parse_name(&raw.surface).map_err(serde::de::Error::custom)?;
        NormalMultiCurve::new(spec, raw.weights).map_err(serde::de::Error::custom)
    }
}

impl NormalMultiCurve {
    pub fn new(surface: SurfaceSpec, weights: Vec<i64>) -> Result<NormalMultiCurve> {
        let tri = surface.triangulation();
        if weights.len() != tri.num_edges() {
            return Err(Error::NotAdmissible(format!(
                "expected {} weights, got {}",
                tri.num_edges(),
                weights.len()
            )));
        }
        if weights.iter().any(|&w| w < 0) {
            return Err(Error::NotAdmissible("negative weight".into()));
        }
        for (t, sides) in tri.triangles() {
            let [x, y, z] = [0, 1, 2].map(|k| weights[sides[k].edge]);
            if (x + y + z) % 2 != 0 {
                return Err(Error::NotAdmissible(format!("odd weight sum in triangle {t}")));
            }
            if x > y + z || y > x + z || z > x + y {
                return Err(Error::NotAdmissible(format!(
                    "triangle inequality fails in triangle {t}"
                )));
            }
        }
        Ok(NormalMultiCurve { surface, weights })
    }

    pub fn empty(surface: SurfaceSpec) -> NormalMultiCurve {
        let tri = surface.triangulation();
        NormalMultiCurve { surface, weights: vec![0; tri.num_edges()] }
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, e: EdgeId) -> i64 {
        self.weights[e]
    }

    pub fn is_empty(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    pub fn total_weight(&self) -> i64 {
        self.weights.iter().sum()
    }

    /// The curve going once around puncture v (its vertex link).  A valid
    /// normal multicurve, but never an essential one.
    pub fn vertex_link(surface: SurfaceSpec, v: u32) -> NormalMultiCurve {
        let tri = surface.triangulation();
        let mut weights = vec![0i64; tri.num_edges()];
        for e in tri.rotation(v) {
            weights[e] += 1;
        }
        NormalMultiCurve { surface, weights }
    }

    /// Componentwise sum (disjoint union of the classes when they are in
    /// fact disjoint; callers must know that).
    pub fn union(&self, other: &NormalMultiCurve) -> Result<NormalMultiCurve> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch);
        }
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| a + b)
            .collect();
        NormalMultiCurve::new(self.surface, weights)
    }

    /// Count of arcs in triangle `t` cutting the corner after slot `k`
    /// (between slots k and k+1).
    pub fn corner_count(&self, tri: &Triangulation, t: TriId, k: usize) -> i64 {
        let sides = tri.triangle(t);
        let w = |k: usize| self.weights[sides[k % 3].edge];
        (w(k) + w(k + 1) - w(k + 2)) / 2
    }

    /// Split into connected components with multiplicities; each component
    /// is returned through its taut cyclic edge word.
    pub fn trace_components(&self) -> Vec<(CurveClass, u32)> {
        let mut classes: HashMap<Vec<i64>, (Vec<EdgeId>, u32)> = HashMap::new();
        for raw in raw_components(self) {
            let mut weights = vec![0i64; self.weights.len()];
            for &(e, _) in &raw.points {
                weights[e] += 1;
            }
            let entry = classes.entry(weights).or_insert_with(|| (raw.word, 0));
            entry.1 += 1;
        }
        let mut out: Vec<(CurveClass, u32)> = classes
            .into_iter()
            .map(|(weights, (word, mult))| {
                let curve = NormalMultiCurve { surface: self.surface, weights };
                (CurveClass::from_connected(curve, word), mult)
            })
            .collect();
        out.sort_by(|a, b| a.0.curve().cmp(b.0.curve()));
        out
    }

    /// True when the multicurve has a single component of multiplicity one.
    pub fn is_connected_curve(&self) -> bool {
        let comps = self.trace_components();
        comps.len() == 1 && comps[0].1 == 1 && !self.is_empty()
    }
}

/// One traced component: its points in walk order (the word is the edge of
/// each point in the same order).
pub(crate) struct RawComponent {
    pub points: Vec<(EdgeId, i64)>,
    pub word: Vec<EdgeId>,
}

/// Walk every component of the multicurve once, in a deterministic order.
pub(crate) fn raw_components(curve: &NormalMultiCurve) -> Vec<RawComponent> {
    let tri = curve.surface().triangulation();
    let offsets = point_offsets(curve.weights());
    let total: usize = curve.weights().iter().map(|&w| w as usize).sum();
    let mut seen = vec![false; total];
    let mut out = Vec::new();

    for start in 0..total {
        if seen[start] {
            continue;
        }
        let (e0, i0) = point_at(&offsets, start);
        let mut points = Vec::new();
        let mut cur = (e0, i0);
        let mut side = tri.side(e0, 0);
        loop {
            seen[offsets[cur.0] as usize + cur.1 as usize] = true;
            points.push(cur);
            let (next, exit_slot) = step_through(&tri, curve, side.tri, side.slot, cur);
            side = tri.other_side(next.0, side.tri, exit_slot);
            cur = next;
            // a transverse curve passes each point once, so returning to the
            // start point closes the component
            if cur == (e0, i0) {
                break;
            }
        }
        let word = points.iter().map(|&(e, _)| e).collect();
        out.push(RawComponent { points, word });
    }
    out
}

fn point_offsets(weights: &[i64]) -> Vec<i64> {
    let mut off = Vec::with_capacity(weights.len());
    let mut acc = 0i64;
    for &w in weights {
        off.push(acc);
        acc += w;
    }
    off
}

fn point_at(offsets: &[i64], id: usize) -> (EdgeId, i64) {
    let id = id as i64;
    let e = match offsets.binary_search(&id) {
        Ok(mut k) => {
            // zero-weight edges share offsets; move to the last edge with
            // this offset that actually has points
            while k + 1 < offsets.len() && offsets[k + 1] == id {
                k += 1;
            }
            k
        }
        Err(k) => k - 1,
    };
    (e, id - offsets[e])
}

/// Follow the normal arc of `curve` through triangle `t` entered via the
/// point `at = (edge, index)` sitting on slot `slot`.  Returns the exit
/// point and its slot.
fn step_through(
    tri: &Triangulation,
    curve: &NormalMultiCurve,
    t: TriId,
    slot: u8,
    at: (EdgeId, i64),
) -> ((EdgeId, i64), u8) {
    let sides = tri.triangle(t);
    let k = slot as usize;
    debug_assert_eq!(sides[k].edge, at.0);
    let w = |k: usize| curve.weight(sides[k % 3].edge);
    // traversal index along the ccw boundary
    let j = if sides[k].forward { at.1 } else { w(k) - 1 - at.1 };
    let c_before = (w(k + 2) + w(k) - w(k + 1)) / 2; // corner between slots k-1 and k
    let (k2, j2) = if j < c_before {
        // arc cutting the corner at the start of slot k, to slot k-1
        let k2 = (k + 2) % 3;
        (k2, w(k2) - 1 - j)
    } else {
        // corner at the end of slot k, to slot k+1
        let k2 = (k + 1) % 3;
        (k2, w(k) - 1 - j)
    };
    let side2 = sides[k2];
    let i2 = if side2.forward { j2 } else { w(k2) - 1 - j2 };
    ((side2.edge, i2), k2 as u8)
}

/// A single connected curve (one component, multiplicity one) together with
/// its essential flag and a taut representative word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    curve: NormalMultiCurve,
    essential: bool,
    word: Vec<EdgeId>,
}

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Curve{:?}", self.curve)
    }
}

impl CurveClass {
    fn from_connected(curve: NormalMultiCurve, word: Vec<EdgeId>) -> CurveClass {
        let essential = !curve.is_empty() && !is_peripheral(&curve);
        CurveClass { curve, essential, word }
    }

    /// Wrap a normal multicurve known to be connected with multiplicity one.
    pub fn from_curve(curve: NormalMultiCurve) -> Result<CurveClass> {
        let comps = curve.trace_components();
        if comps.len() != 1 || comps[0].1 != 1 {
            return Err(Error::Precondition("multicurve is not a single curve".into()));
        }
        Ok(comps.into_iter().next().unwrap().0)
    }

    pub fn curve(&self) -> &NormalMultiCurve {
        &self.curve
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.curve.surface
    }

    pub fn is_essential(&self) -> bool {
        self.essential
    }

    /// A taut cyclic edge word for the class.
    pub fn word(&self) -> &[EdgeId] {
        &self.word
    }

    pub fn weights(&self) -> &[i64] {
        self.curve.weights()
    }
}

fn is_peripheral(curve: &NormalMultiCurve) -> bool {
    let n = curve.surface.punctures();
    (1..=n).any(|v| NormalMultiCurve::vertex_link(curve.surface, v).weights == curve.weights)
}

/// Cancel consecutive same-edge crossings (cyclically) until the word is
/// taut.  Returns the empty word exactly for null-homotopic curves.
pub fn reduce_word(mut word: Vec<EdgeId>) -> Vec<EdgeId> {
    loop {
        let mut out: Vec<EdgeId> = Vec::with_capacity(word.len());
        for e in word.drain(..) {
            if out.last() == Some(&e) {
                out.pop();
            } else {
                out.push(e);
            }
        }
        // cyclic wrap-around
        let mut changed = false;
        while out.len() >= 2 && out.first() == out.last() {
            out.pop();
            out.remove(0);
            changed = true;
        }
        if !changed {
            return out;
        }
        word = out;
    }
}

/// Normal coordinates of the isotopy class of a closed edge word known to
/// be freely homotopic to an embedded curve (or to a point).  Returns the
/// empty multicurve for null-homotopic words.
pub fn curve_from_word(surface: SurfaceSpec, word: &[EdgeId]) -> Result<NormalMultiCurve> {
    let taut = reduce_word(word.to_vec());
    let tri = surface.triangulation();
    let mut weights = vec![0i64; tri.num_edges()];
    for &e in &taut {
        weights[e] += 1;
    }
    let curve = NormalMultiCurve::new(surface, weights)?;
    if !taut.is_empty() {
        // cross-check: the decoded normal curve must be a single component
        // whose taut word matches ours up to rotation and reversal
        let comps = curve.trace_components();
        if comps.len() != 1 || comps[0].1 != 1 {
            return Err(Error::Precondition(
                "edge word does not describe a single embedded curve".into(),
            ));
        }
        if !cyclic_words_equal(&taut, comps[0].0.word()) {
            return Err(Error::Precondition(
                "edge word is taut but not realized by a normal curve".into(),
            ));
        }
    }
    Ok(curve)
}

/// Equality of cyclic words up to rotation and reversal.
pub fn cyclic_words_equal(a: &[EdgeId], b: &[EdgeId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let doubled: Vec<EdgeId> = b.iter().chain(b.iter()).copied().collect();
    let reversed: Vec<EdgeId> = b.iter().rev().chain(b.iter().rev()).copied().collect();
    windows_contain(&doubled, a) || windows_contain(&reversed, a)
}

fn windows_contain(haystack: &[EdgeId], needle: &[EdgeId]) -> bool {
    haystack.windows(needle.len()).any(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> SurfaceSpec {
        SurfaceSpec::sphere(4).unwrap()
    }

    // fan(4) edge order: h1 h2 v1 v2 v3 d3
    fn curve12() -> NormalMultiCurve {
        NormalMultiCurve::new(s4(), vec![0, 1, 1, 1, 0, 1]).unwrap()
    }

    fn curve23() -> NormalMultiCurve {
        NormalMultiCurve::new(s4(), vec![1, 0, 0, 1, 1, 1]).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(NormalMultiCurve::new(s4(), vec![1, 0, 0, 0, 0, 0]).is_err());
        assert!(NormalMultiCurve::new(s4(), vec![0, 0, 0, 0, 0, 0]).is_ok());
        assert!(NormalMultiCurve::new(s4(), vec![0, 4, 1, 1, 0, 1]).is_err());
        curve12();
        curve23();
    }

    #[test]
    fn vertex_links_are_inessential() {
        for v in 1..=4 {
            let link = NormalMultiCurve::vertex_link(s4(), v);
            let comps = link.trace_components();
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0].1, 1);
            assert!(!comps[0].0.is_essential(), "link of {v} must be peripheral");
        }
    }

    #[test]
    fn trace_zero_and_doubled() {
        let zero = NormalMultiCurve::empty(s4());
        assert!(zero.trace_components().is_empty());

        let doubled = curve12().union(&curve12()).unwrap();
        let comps = doubled.trace_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].1, 2);
        assert_eq!(comps[0].0.curve(), &curve12());
    }

    #[test]
    fn curve12_is_essential_single() {
        let comps = curve12().trace_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].1, 1);
        assert!(comps[0].0.is_essential());
        assert_eq!(comps[0].0.word().len(), 4);
    }

    #[test]
    fn word_roundtrip() {
        let comps = curve12().trace_components();
        let word = comps[0].0.word().to_vec();
        let rebuilt = curve_from_word(s4(), &word).unwrap();
        assert_eq!(rebuilt, curve12());
    }

    #[test]
    fn reduce_word_cancels() {
        assert_eq!(reduce_word(vec![3, 5, 5, 3]), Vec::<EdgeId>::new());
        assert_eq!(reduce_word(vec![1, 2, 2, 3]), vec![1, 3]);
        // cancellations cascade across the cyclic seam
        assert_eq!(reduce_word(vec![2, 0, 1, 1, 0, 3, 2]), vec![3]);
    }

    #[test]
    fn serde_roundtrip() {
        let c = curve12();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"surface":"S0.4","weights":[0,1,1,1,0,1]}"#);
        let back: NormalMultiCurve = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
