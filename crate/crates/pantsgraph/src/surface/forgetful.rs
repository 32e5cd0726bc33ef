//! Forgetful maps between punctured spheres.
//!
//! Forgetting a puncture is implemented by contracting a triangulation edge
//! into the filled vertex: the two adjacent triangles collapse, their
//! remaining side pairs become isotopic, and the quotient complex is again a
//! fan (checked by endpoint matching).  A curve's image is its edge word
//! with the contracted edge's crossings deleted, reduced to taut form on the
//! smaller fan.  Trivial and peripheral images are dropped.

use crate::error::{Error, Result};

use super::curve::{curve_from_word, CurveClass, SurfaceSpec};
use super::triangulation::{EdgeId, Triangulation, Vertex};

#[derive(Clone, Debug)]
pub struct ForgetfulMap {
    source: SurfaceSpec,
    kept: Vec<Vertex>,
    target: SurfaceSpec,
    /// edge maps of the contraction steps, largest forgotten label first
    steps: Vec<Vec<Option<EdgeId>>>,
}

impl ForgetfulMap {
    /// Forget every puncture of `source` not listed in `kept`.
    pub fn new(source: SurfaceSpec, kept: &[Vertex]) -> Result<ForgetfulMap> {
        let mut kept: Vec<Vertex> = kept.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.len() < 4 {
            return Err(Error::TooFewKept(kept.len()));
        }
        if kept.iter().any(|&v| v < 1 || v > source.punctures()) {
            return Err(Error::Precondition("kept puncture out of range".into()));
        }
        let target = SurfaceSpec::sphere(kept.len() as u32)?;

        // forget from the largest label down so smaller labels stay put
        let mut steps = Vec::new();
        let mut n = source.punctures();
        let mut to_forget: Vec<Vertex> =
            (1..=source.punctures()).filter(|v| !kept.contains(v)).collect();
        to_forget.sort_unstable_by(|a, b| b.cmp(a));
        let mut relabel: Vec<Vertex> = (0..=source.punctures()).collect();
        for kill0 in to_forget {
            let kill = relabel[kill0 as usize];
            let tri = Triangulation::fan(n)?;
            let e = tri.contraction_edge(kill);
            let (complex, edge_map) = tri.contract(e, kill)?;
            let target_tri = Triangulation::fan(n - 1)?;
            let iso = complex.match_by_endpoints(&target_tri)?;
            let full: Vec<Option<EdgeId>> =
                edge_map.into_iter().map(|m| m.map(|e| iso[e])).collect();
            steps.push(full);
            for v in relabel.iter_mut() {
                if *v > kill {
                    *v -= 1;
                } else if *v == kill {
                    *v = 0; // forgotten
                }
            }
            n -= 1;
        }
        Ok(ForgetfulMap { source, kept, target, steps })
    }

    pub fn source(&self) -> SurfaceSpec {
        self.source
    }

    pub fn target(&self) -> SurfaceSpec {
        self.target
    }

    pub fn kept(&self) -> &[Vertex] {
        &self.kept
    }

    /// Image of a curve; `None` when it becomes trivial or peripheral.
    pub fn apply_curve(&self, c: &CurveClass) -> Result<Option<CurveClass>> {
        if c.surface() != self.source {
            return Err(Error::SurfaceMismatch);
        }
        let mut word: Vec<EdgeId> = c.word().to_vec();
        for step in &self.steps {
            word = word.into_iter().filter_map(|e| step[e]).collect();
        }
        let curve = curve_from_word(self.target, &word)?;
        if curve.is_empty() {
            return Ok(None);
        }
        let class = CurveClass::from_curve(curve)?;
        if !class.is_essential() {
            return Ok(None);
        }
        Ok(Some(class))
    }

    /// Image of a multicurve: components mapped, trivial and peripheral
    /// images dropped, coinciding images merged.
    pub fn apply_multicurve(&self, curves: &[CurveClass]) -> Result<Vec<CurveClass>> {
        let mut out: Vec<CurveClass> = Vec::new();
        for c in curves {
            if let Some(img) = self.apply_curve(c)? {
                if !out.contains(&img) {
                    out.push(img);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::arrange::geometric_intersection;
    use crate::surface::cut::curve_around;

    fn s(n: u32) -> SurfaceSpec {
        SurfaceSpec::sphere(n).unwrap()
    }

    #[test]
    fn curve_around_forgotten_puncture_drops() {
        let f = ForgetfulMap::new(s(5), &[1, 3, 4, 5]).unwrap();
        let c = curve_around(s(5), &[1, 2]).unwrap();
        assert_eq!(f.apply_curve(&c).unwrap(), None);
    }

    #[test]
    fn curve_missing_the_puncture_survives() {
        let f = ForgetfulMap::new(s(5), &[1, 2, 3, 4]).unwrap();
        let c = curve_around(s(5), &[1, 2]).unwrap();
        let img = f.apply_curve(&c).unwrap().expect("stays essential");
        let expect = curve_around(s(4), &[1, 2]).unwrap();
        assert_eq!(img, expect);
    }

    #[test]
    fn images_merge_when_they_coincide() {
        // around {1,2} and around {1,2,5}: images agree once 5 is forgotten
        let f = ForgetfulMap::new(s(5), &[1, 2, 3, 4]).unwrap();
        let a = curve_around(s(5), &[1, 2]).unwrap();
        let b = curve_around(s(5), &[1, 2, 5]).unwrap();
        assert_ne!(a, b);
        let images = f.apply_multicurve(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(images.len(), 1);
        // while distinct-image curves stay distinct
        let c = curve_around(s(5), &[3, 4]).unwrap();
        let images = f.apply_multicurve(&[a, c]).unwrap();
        assert_eq!(images.len(), 2);
    }

    #[test]
    fn forgetting_preserves_disjointness() {
        // i(image, image) <= i(original, original) = 0
        let f = ForgetfulMap::new(s(6), &[1, 2, 4, 6]).unwrap();
        let a = curve_around(s(6), &[1, 2]).unwrap();
        let b = curve_around(s(6), &[1, 2, 3]).unwrap();
        assert_eq!(geometric_intersection(a.curve(), b.curve()), 0);
        let ia = f.apply_curve(&a).unwrap();
        let ib = f.apply_curve(&b).unwrap();
        if let (Some(ia), Some(ib)) = (ia, ib) {
            assert_eq!(geometric_intersection(ia.curve(), ib.curve()), 0);
        }
    }

    #[test]
    fn forget_each_single_puncture_of_s6() {
        // images of a fixed curve stay well-formed whichever puncture dies
        for kill in 1..=6u32 {
            let kept: Vec<u32> = (1..=6).filter(|&v| v != kill).collect();
            let f = ForgetfulMap::new(s(6), &kept).unwrap();
            let c = curve_around(s(6), &[2, 3, 4]).unwrap();
            let img = f.apply_curve(&c).unwrap();
            if let Some(img) = img {
                assert!(img.is_essential());
            }
        }
    }
}
