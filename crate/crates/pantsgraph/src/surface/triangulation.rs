//! The fixed ideal triangulation underlying normal coordinates.
//!
//! For S_{0,n} we use the "fan" triangulation (layout version 1, frozen so
//! fixtures stay stable): punctures 1..n-1 sit on a line with puncture n at
//! infinity.  Edges, in id order:
//!
//! * `h_i = (i, i+1)` for `i = 1..n-2`     (ids `0 .. n-3`)
//! * `v_i = (i, n)`   for `i = 1..n-1`     (ids `n-2 .. 2n-4`)
//! * `d_j = (1, j)`   for `j = 3..n-1`     (ids `2n-3 .. 3n-7`)
//!
//! Triangles, all oriented counterclockwise:
//!
//! * upper `U_i = (i, i+1, n)` with sides `(h_i, v_{i+1}, rev v_i)`
//! * lower `L_j = (1, j, j+1)` with sides `(d_{j+1}, rev h_j, rev d_j)`
//!   for `j = 2..n-2`, reading `d_2 = h_1`
//! * last lower `L_{n-1} = (1, n-1, n)` with sides `(v_1, rev v_{n-1}, rev d_{n-1})`
//!
//! Every edge is traversed once forwards and once backwards, so the triangle
//! orientations define a global orientation of the sphere.

use crate::error::{Error, Result};

pub const TRIANGULATION_LAYOUT_VERSION: u32 = 1;

pub type EdgeId = usize;
pub type TriId = usize;
/// Punctures are labelled 1..=n.
pub type Vertex = u32;

/// One side of a triangle: an edge together with whether the ccw boundary
/// traversal agrees with the edge's canonical orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Side {
    pub edge: EdgeId,
    pub forward: bool,
}

/// Where an edge appears among the triangles: exactly one forward side and
/// one backward side on a closed surface.
#[derive(Clone, Copy, Debug)]
pub struct EdgeIncidence {
    pub tri: TriId,
    pub slot: u8,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    n: u32,
    endpoints: Vec<[Vertex; 2]>,
    tris: Vec<[Side; 3]>,
    /// `sides[e][0]` traverses e forward, `sides[e][1]` backward.
    sides: Vec<[EdgeIncidence; 2]>,
    /// Rotation around each vertex (index v-1): the cyclic list of corners
    /// visited walking around the puncture, each with the edge crossed when
    /// leaving it; consistent with the surface orientation.
    rotations: Vec<Vec<(TriId, u8, EdgeId)>>,
}

impl Triangulation {
    /// The canonical fan triangulation of S_{0,n}.
    pub fn fan(n: u32) -> Result<Triangulation> {
        if n < 4 {
            return Err(Error::TooFewPunctures(n));
        }
        let n_us = n as usize;
        let h = |i: usize| -> EdgeId { i - 1 };
        let v = |i: usize| -> EdgeId { n_us - 2 + (i - 1) };
        // d(2) aliases h_1; d(j) for 3 <= j <= n-1
        let d = |j: usize| -> EdgeId {
            if j == 2 {
                h(1)
            } else {
                2 * n_us - 3 + (j - 3)
            }
        };

        let mut endpoints = vec![[0u32; 2]; 3 * n_us - 6];
        for i in 1..=n_us - 2 {
            endpoints[h(i)] = [i as u32, i as u32 + 1];
        }
        for i in 1..=n_us - 1 {
            endpoints[v(i)] = [i as u32, n];
        }
        for j in 3..=n_us - 1 {
            endpoints[d(j)] = [1, j as u32];
        }

        let mut tris = Vec::with_capacity(2 * n_us - 4);
        for i in 1..=n_us - 2 {
            tris.push([
                Side { edge: h(i), forward: true },
                Side { edge: v(i + 1), forward: true },
                Side { edge: v(i), forward: false },
            ]);
        }
        for j in 2..=n_us - 2 {
            tris.push([
                Side { edge: d(j + 1), forward: true },
                Side { edge: h(j), forward: false },
                Side { edge: d(j), forward: false },
            ]);
        }
        tris.push([
            Side { edge: v(1), forward: true },
            Side { edge: v(n_us - 1), forward: false },
            Side { edge: d(n_us - 1), forward: false },
        ]);

        Triangulation::from_parts(n, endpoints, tris)
    }

    /// Assemble and validate a triangulation from raw data.
    fn from_parts(n: u32, endpoints: Vec<[Vertex; 2]>, tris: Vec<[Side; 3]>) -> Result<Triangulation> {
        let ne = endpoints.len();
        let mut fwd = vec![None; ne];
        let mut bwd = vec![None; ne];
        for (t, tri) in tris.iter().enumerate() {
            for (k, side) in tri.iter().enumerate() {
                let inc = EdgeIncidence { tri: t, slot: k as u8 };
                let slot = if side.forward { &mut fwd } else { &mut bwd };
                if slot[side.edge].is_some() {
                    return Err(Error::Precondition(format!(
                        "edge {} traversed twice in the same direction",
                        side.edge
                    )));
                }
                slot[side.edge] = Some(inc);
            }
        }
        let sides: Vec<[EdgeIncidence; 2]> = fwd
            .into_iter()
            .zip(bwd)
            .map(|(f, b)| [f.expect("edge missing fwd side"), b.expect("edge missing bwd side")])
            .collect();

        let mut tr = Triangulation { n, endpoints, tris, sides, rotations: Vec::new() };
        tr.rotations = tr.compute_rotations()?;
        Ok(tr)
    }

    fn compute_rotations(&self) -> Result<Vec<Vec<(TriId, u8, EdgeId)>>> {
        let mut rotations = Vec::with_capacity(self.n as usize);
        for vtx in 1..=self.n {
            // find a corner at vtx: corner k of triangle t sits between the
            // head of slot k and is the start of slot k+1
            let mut start = None;
            'outer: for (t, _) in self.tris.iter().enumerate() {
                for k in 0..3 {
                    if self.corner_vertex(t, k) == vtx {
                        start = Some((t, k));
                        break 'outer;
                    }
                }
            }
            let (t0, k0) = start.ok_or_else(|| {
                Error::Precondition(format!("vertex {vtx} belongs to no triangle"))
            })?;
            let mut rot = Vec::new();
            let (mut t, mut k) = (t0, k0);
            loop {
                // leave the corner across the outgoing side (slot k+1)
                let out = self.tris[t][(k + 1) % 3];
                rot.push((t, k as u8, out.edge));
                let other = self.other_side(out.edge, t, ((k + 1) % 3) as u8);
                let t2 = other.tri;
                let k2 = other.slot as usize; // slot of the same edge in t2
                debug_assert_eq!(self.corner_vertex(t2, k2), vtx);
                t = t2;
                k = k2;
                if (t, k) == (t0, k0) {
                    break;
                }
            }
            rotations.push(rot);
        }
        Ok(rotations)
    }

    pub fn punctures(&self) -> u32 {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.endpoints.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.tris.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> [Vertex; 2] {
        self.endpoints[e]
    }

    pub fn triangle(&self, t: TriId) -> &[Side; 3] {
        &self.tris[t]
    }

    pub fn triangles(&self) -> impl Iterator<Item = (TriId, &[Side; 3])> {
        self.tris.iter().enumerate()
    }

    /// The (triangle, slot) pair traversing e forward (`which = 0`) or
    /// backward (`which = 1`).
    pub fn side(&self, e: EdgeId, which: usize) -> EdgeIncidence {
        self.sides[e][which]
    }

    /// The incidence of edge e on the opposite side of (tri, slot).
    pub fn other_side(&self, e: EdgeId, tri: TriId, slot: u8) -> EdgeIncidence {
        let [f, b] = self.sides[e];
        if f.tri == tri && f.slot == slot {
            b
        } else {
            debug_assert!(b.tri == tri && b.slot == slot);
            f
        }
    }

    /// The vertex at corner k of triangle t (between slots k and k+1); this
    /// is the head of side k under the ccw traversal.
    pub fn corner_vertex(&self, t: TriId, k: usize) -> Vertex {
        let side = self.tris[t][k];
        let [a, b] = self.endpoints[side.edge];
        if side.forward {
            b
        } else {
            a
        }
    }

    /// Rotation of edges around a puncture (each incident edge-end
    /// contributes one entry).
    pub fn rotation(&self, v: Vertex) -> Vec<EdgeId> {
        self.rotations[(v - 1) as usize].iter().map(|&(_, _, e)| e).collect()
    }

    /// Rotation around a puncture with the corner each edge-end leaves:
    /// entries (triangle, corner slot, crossed edge).
    pub fn rotation_corners(&self, v: Vertex) -> &[(TriId, u8, EdgeId)] {
        &self.rotations[(v - 1) as usize]
    }

    /// Edge of the fan connecting puncture p to puncture n, for p < n.
    /// These are the "tail" edges used as Jordan-parity probes.
    pub fn tail_edge(&self, p: Vertex) -> EdgeId {
        debug_assert!(p >= 1 && p < self.n);
        self.n as usize - 2 + (p as usize - 1)
    }

    /// h-edge (i, i+1); valid for 1 <= i <= n-2.
    pub fn h_edge(&self, i: u32) -> EdgeId {
        debug_assert!(i >= 1 && i <= self.n - 2);
        (i - 1) as usize
    }

    /// The edge contracted to delete a puncture: (k-1, k) in the generic
    /// case, (1, 2) for k = 1 and (n-1, n) for k = n.  Contracting it turns
    /// the fan of S_{0,n} into the fan of S_{0,n-1}.
    pub fn contraction_edge(&self, kill: Vertex) -> EdgeId {
        if kill == 1 {
            self.h_edge(1)
        } else if kill == self.n {
            self.tail_edge(self.n - 1)
        } else {
            self.h_edge(kill - 1)
        }
    }

    /// Contract edge `e`, deleting the puncture `kill` (an endpoint of `e`)
    /// by merging it into the other endpoint.  Returns the quotient complex
    /// (with `kill` removed and higher labels shifted down) and the map from
    /// old edge ids to new ones (`None` for the contracted edge).
    ///
    /// This is the combinatorial shadow of filling the puncture `kill`: the
    /// two triangles adjacent to `e` collapse and their remaining side pairs
    /// become isotopic, hence identified.
    pub fn contract(&self, e: EdgeId, kill: Vertex) -> Result<(ContractedComplex, Vec<Option<EdgeId>>)> {
        let [a, b] = self.endpoints[e];
        if kill != a && kill != b {
            return Err(Error::Precondition(format!(
                "vertex {kill} is not an endpoint of edge {e}"
            )));
        }
        let survivor = if kill == a { b } else { a };
        if survivor == kill {
            return Err(Error::Precondition("cannot contract a loop edge".into()));
        }
        let [s0, s1] = self.sides[e];
        if s0.tri == s1.tri {
            return Err(Error::Precondition("edge bounds one triangle twice".into()));
        }

        // union-find over edges: identify the two surviving sides of each
        // dying triangle
        let ne = self.num_edges();
        let mut parent: Vec<usize> = (0..ne).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for inc in [s0, s1] {
            let tri = &self.tris[inc.tri];
            let others: Vec<EdgeId> = (0..3)
                .filter(|&k| k != inc.slot as usize)
                .map(|k| tri[k].edge)
                .collect();
            let (x, y) = (find(&mut parent, others[0]), find(&mut parent, others[1]));
            if x == y {
                return Err(Error::Precondition("degenerate contraction".into()));
            }
            parent[x] = y;
        }

        let relabel = |v: Vertex| -> Vertex {
            let v = if v == kill { survivor } else { v };
            if v > kill {
                v - 1
            } else {
                v
            }
        };

        // compact surviving edge classes
        let mut new_id: Vec<Option<EdgeId>> = vec![None; ne];
        let mut new_endpoints: Vec<[Vertex; 2]> = Vec::new();
        for old in 0..ne {
            if old == e {
                continue;
            }
            let root = find(&mut parent, old);
            if new_id[root].is_none() {
                let [x, y] = self.endpoints[root];
                new_id[root] = Some(new_endpoints.len());
                new_endpoints.push([relabel(x), relabel(y)]);
            }
        }
        let edge_map: Vec<Option<EdgeId>> = (0..ne)
            .map(|old| {
                if old == e {
                    None
                } else {
                    new_id[find(&mut parent, old)]
                }
            })
            .collect();

        let mut new_tris = Vec::new();
        for (t, tri) in self.tris.iter().enumerate() {
            if t == s0.tri || t == s1.tri {
                continue;
            }
            new_tris.push([0, 1, 2].map(|k| {
                edge_map[tri[k].edge].expect("surviving triangle uses surviving edges")
            }));
        }
        let complex =
            ContractedComplex { n: self.n - 1, endpoints: new_endpoints, tris: new_tris };
        Ok((complex, edge_map))
    }
}

/// An unoriented 2-complex produced by an edge contraction.  Curve words do
/// not need orientations, so this stays lightweight; it is matched against a
/// canonical fan via [`ContractedComplex::match_by_endpoints`].
#[derive(Clone, Debug)]
pub struct ContractedComplex {
    pub n: u32,
    pub endpoints: Vec<[Vertex; 2]>,
    pub tris: Vec<[EdgeId; 3]>,
}

impl ContractedComplex {
    /// Match this complex against a triangulation by endpoint pairs (both
    /// must be simple); checks the triangle sets agree.  Returns the edge
    /// map self -> other.
    pub fn match_by_endpoints(&self, other: &Triangulation) -> Result<Vec<EdgeId>> {
        if self.n != other.n || self.endpoints.len() != other.num_edges() {
            return Err(Error::Precondition("complex sizes differ".into()));
        }
        let norm = |mut p: [Vertex; 2]| {
            p.sort_unstable();
            p
        };
        let mut map = vec![usize::MAX; self.endpoints.len()];
        for (mine, &ep) in self.endpoints.iter().enumerate() {
            let target = (0..other.num_edges())
                .position(|q| norm(other.endpoints(q)) == norm(ep))
                .ok_or_else(|| Error::Precondition(format!("no edge with endpoints {ep:?}")))?;
            map[mine] = target;
        }
        let mut seen = vec![false; map.len()];
        for &m in &map {
            if seen[m] {
                return Err(Error::Precondition("endpoint matching not bijective".into()));
            }
            seen[m] = true;
        }
        let mut mine: Vec<Vec<EdgeId>> = self
            .tris
            .iter()
            .map(|t| {
                let mut k: Vec<EdgeId> = t.iter().map(|&e| map[e]).collect();
                k.sort_unstable();
                k
            })
            .collect();
        let mut theirs: Vec<Vec<EdgeId>> = other
            .tris
            .iter()
            .map(|t| {
                let mut k: Vec<EdgeId> = t.iter().map(|s| s.edge).collect();
                k.sort_unstable();
                k
            })
            .collect();
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return Err(Error::Precondition("triangle sets do not match".into()));
        }
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_counts() {
        let t = Triangulation::fan(4).unwrap();
        assert_eq!(t.num_triangles(), 4);
        assert_eq!(t.num_edges(), 6);
        let t = Triangulation::fan(6).unwrap();
        assert_eq!(t.num_triangles(), 8);
        assert_eq!(t.num_edges(), 12);
        assert!(Triangulation::fan(3).is_err());
    }

    #[test]
    fn fan_rotations_cover_all_ends() {
        for n in 4..=8 {
            let t = Triangulation::fan(n).unwrap();
            let mut ends = vec![0usize; t.num_edges()];
            for v in 1..=n {
                for e in t.rotation(v) {
                    ends[e] += 1;
                }
            }
            assert!(ends.iter().all(|&c| c == 2), "n={n}: every edge has two ends");
        }
    }

    #[test]
    fn fan6_layout_frozen() {
        // regression pin for the documented layout (version 1)
        let t = Triangulation::fan(6).unwrap();
        assert_eq!(TRIANGULATION_LAYOUT_VERSION, 1);
        let eps: Vec<[u32; 2]> = (0..t.num_edges()).map(|e| t.endpoints(e)).collect();
        assert_eq!(
            eps,
            vec![
                [1, 2],
                [2, 3],
                [3, 4],
                [4, 5], // h
                [1, 6],
                [2, 6],
                [3, 6],
                [4, 6],
                [5, 6], // v
                [1, 3],
                [1, 4],
                [1, 5], // d
            ]
        );
    }

    #[test]
    fn contraction_yields_smaller_fan() {
        // forget each puncture of S_{0,n} in turn and match fan(n-1)
        for n in 5..=8u32 {
            let tn = Triangulation::fan(n).unwrap();
            let tm = Triangulation::fan(n - 1).unwrap();
            for kill in 1..=n {
                let e = tn.contraction_edge(kill);
                let (contracted, _map) = tn.contract(e, kill).unwrap();
                contracted.match_by_endpoints(&tm).unwrap_or_else(|err| {
                    panic!("n={n}, killing {kill}: contracted complex is not the fan: {err}")
                });
            }
        }
    }
}
