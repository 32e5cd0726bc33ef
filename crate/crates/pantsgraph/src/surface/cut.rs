//! Cutting along a multicurve: complementary pieces, arcs between holes,
//! boundary-of-neighborhood curves, and slope markings for four-holed
//! pieces.
//!
//! The triangles are subdivided by the multicurve's chords into cells (a
//! parenthesis walk around each triangle boundary; chords of an embedded
//! multicurve never cross, so they nest).  Gluing cells across the gaps
//! between consecutive points on每 edge yields the complementary pieces.
//! Arcs between holes of a piece are shortest paths in the cell graph, and
//! curves are produced from arcs by assembling the boundary word of a
//! ribbon neighborhood and reducing it to taut form.

use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::farey::Slope;

use super::arrange::geometric_intersection;
use super::curve::{curve_from_word, raw_components, CurveClass, NormalMultiCurve, SurfaceSpec};
use super::triangulation::{EdgeId, Triangulation, TriId, Vertex};

type S64 = Slope<i64>;

/// A hole of a piece: either a puncture of S or a boundary circle coming
/// from a component of the cutting multicurve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hole {
    Puncture(Vertex),
    Boundary(usize),
}

/// A complementary piece of the cut surface.
#[derive(Clone, Debug)]
pub struct Piece {
    pub punctures: Vec<Vertex>,
    pub boundary: Vec<usize>,
    pub complexity: usize,
}

impl Piece {
    pub fn holes(&self) -> Vec<Hole> {
        let mut h: Vec<Hole> = self.punctures.iter().map(|&v| Hole::Puncture(v)).collect();
        h.extend(self.boundary.iter().map(|&c| Hole::Boundary(c)));
        h
    }
}

/// Where a curve disjoint from the multicurve sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside(usize),
    BoundaryParallel(usize),
}

/// Attachment of an arc end to a hole.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Attach {
    /// at the corner of `tri` with slot `k`, around puncture `v`
    Corner { v: Vertex, tri: TriId, slot: u8 },
    /// on the chord after word position `pos` of component `comp`
    Chord { comp: usize, pos: usize },
}

struct ChordInfo {
    comp: usize,
    pos: usize,
    cell_outer: usize,
    cell_inner: usize,
    /// the endpoint hit first by the boundary walk
    first_end: (EdgeId, i64),
    ends: [(EdgeId, i64); 2],
}

pub struct CutSurface {
    surface: SurfaceSpec,
    tri: Triangulation,
    comps: Vec<CurveClass>,
    comp_words: Vec<Vec<EdgeId>>,
    union_curve: NormalMultiCurve,
    n_cells: usize,
    /// per side (fwd/bwd), per edge, per gap 0..w: the adjacent cell
    gap_cells: [Vec<Vec<usize>>; 2],
    corner_cells: Vec<[usize; 3]>,
    chords: Vec<ChordInfo>,
    /// chord ids in walk order per component
    comp_chords: Vec<Vec<usize>>,
    pieces: Vec<Piece>,
    piece_of_cell: Vec<usize>,
    /// pieces on the two sides of each component
    comp_pieces: Vec<[usize; 2]>,
    /// component of each canonical point, per edge
    point_comp: Vec<Vec<usize>>,
}

impl CutSurface {
    /// Cut along the union of the given pairwise disjoint, pairwise
    /// distinct, essential curves.
    pub fn new(surface: SurfaceSpec, comps: Vec<CurveClass>) -> Result<CutSurface> {
        let mut union_curve = NormalMultiCurve::empty(surface);
        for (i, c) in comps.iter().enumerate() {
            if c.surface() != surface {
                return Err(Error::SurfaceMismatch);
            }
            if !c.is_essential() {
                return Err(Error::NotEssential);
            }
            for d in &comps[..i] {
                if d.curve() == c.curve() {
                    return Err(Error::RepeatedCurve);
                }
                let i_cd = geometric_intersection(c.curve(), d.curve());
                if i_cd != 0 {
                    return Err(Error::IntersectingCurves(i_cd as u64));
                }
            }
            union_curve = union_curve.union(c.curve())?;
        }
        Self::build(surface, comps, union_curve)
    }

    fn build(
        surface: SurfaceSpec,
        comps: Vec<CurveClass>,
        union_curve: NormalMultiCurve,
    ) -> Result<CutSurface> {
        let tri = surface.triangulation();
        let ne = tri.num_edges();

        // label every point of the union with its component and walk position
        let raw = raw_components(&union_curve);
        // match raw components to the given comps by weights
        let mut raw_to_comp = vec![usize::MAX; raw.len()];
        for (ri, rc) in raw.iter().enumerate() {
            let mut w = vec![0i64; ne];
            for &(e, _) in &rc.points {
                w[e] += 1;
            }
            let ci = comps
                .iter()
                .position(|c| c.weights() == w.as_slice())
                .ok_or_else(|| Error::Precondition("component mismatch in cut".into()))?;
            if raw_to_comp.contains(&ci) {
                return Err(Error::RepeatedCurve);
            }
            raw_to_comp[ri] = ci;
        }
        let mut comp_words = vec![Vec::new(); comps.len()];
        // point -> (comp, walk position)
        let mut point_label: HashMap<(EdgeId, i64), (usize, usize)> = HashMap::new();
        let mut point_comp: Vec<Vec<usize>> =
            (0..ne).map(|e| vec![usize::MAX; union_curve.weight(e) as usize]).collect();
        for (ri, rc) in raw.iter().enumerate() {
            let ci = raw_to_comp[ri];
            comp_words[ci] = rc.word.clone();
            for (pos, &pt) in rc.points.iter().enumerate() {
                point_label.insert(pt, (ci, pos));
                point_comp[pt.0][pt.1 as usize] = ci;
            }
        }

        // per-triangle parenthesis walk
        let mut n_cells = 0usize;
        let mut gap_cells: [Vec<Vec<usize>>; 2] = [
            (0..ne).map(|e| vec![usize::MAX; union_curve.weight(e) as usize + 1]).collect(),
            (0..ne).map(|e| vec![usize::MAX; union_curve.weight(e) as usize + 1]).collect(),
        ];
        let mut corner_cells = vec![[usize::MAX; 3]; tri.num_triangles()];
        let mut chords: Vec<ChordInfo> = Vec::new();
        // (comp, pos) -> chord id, filled when chords are discovered
        let mut chord_of: HashMap<(usize, usize), usize> = HashMap::new();

        for (t, sides) in tri.triangles() {
            let w = |k: usize| union_curve.weight(sides[k % 3].edge);
            // chord partner of a point within this triangle
            let partner = |k: usize, trav: i64| -> (usize, i64) {
                let c_before = (w(k + 2) + w(k) - w(k + 1)) / 2;
                if trav < c_before {
                    ((k + 2) % 3, w(k + 2) - 1 - trav)
                } else {
                    ((k + 1) % 3, w(k) - 1 - trav)
                }
            };
            let own_of = |k: usize, trav: i64| -> i64 {
                if sides[k].forward {
                    trav
                } else {
                    w(k) - 1 - trav
                }
            };

            let mut current = n_cells;
            n_cells += 1;
            let first_cell = current;
            // open chords: key by canonical (slot, trav) of the first end
            let mut stack: Vec<((usize, i64), usize)> = Vec::new();
            let mut local_chords: HashMap<(usize, i64), usize> = HashMap::new();

            for k in 0..3 {
                let e = sides[k].edge;
                let we = w(k);
                for trav in 0..=we {
                    // gap before point `trav` (in traversal order)
                    let gap = if sides[k].forward { trav } else { we - trav };
                    let side_idx = if sides[k].forward { 0 } else { 1 };
                    gap_cells[side_idx][e][gap as usize] = current;
                    if trav == we {
                        break;
                    }
                    // the point itself: chord endpoint
                    let (k2, trav2) = partner(k, trav);
                    let this_key = (k, trav);
                    let partner_key = (k2, trav2);
                    if let Some(&chord_id) = local_chords.get(&partner_key) {
                        // closing: must be the top of the stack
                        let (open_key, outer) = stack.pop().expect("balanced chords");
                        debug_assert_eq!(open_key, partner_key);
                        let inner = current;
                        current = outer;
                        chords[chord_id].cell_outer = outer;
                        chords[chord_id].cell_inner = inner;
                        chords[chord_id].ends[1] = (e, own_of(k, trav));
                    } else {
                        // opening
                        let own = own_of(k, trav);
                        let (comp, pos0) = point_label[&(e, own)];
                        // the chord after this point or before it: resolve by
                        // matching the partner point's label
                        let e2 = sides[k2].edge;
                        let own2 = own_of(k2, trav2);
                        let (comp2, pos2) = point_label[&(e2, own2)];
                        debug_assert_eq!(comp, comp2);
                        let len = comp_words[comp].len();
                        // chord position: the walk step between the two
                        // point positions (cyclically adjacent)
                        let pos = if (pos0 + 1) % len == pos2 { pos0 } else { pos2 };
                        debug_assert!(
                            (pos0 + 1) % len == pos2 || (pos2 + 1) % len == pos0 || len == 2
                        );
                        let chord_id = chords.len();
                        chords.push(ChordInfo {
                            comp,
                            pos,
                            cell_outer: usize::MAX,
                            cell_inner: usize::MAX,
                            first_end: (e, own),
                            ends: [(e, own), (e, own)],
                        });
                        chord_of.insert((comp, pos), chord_id);
                        local_chords.insert(this_key, chord_id);
                        stack.push((this_key, current));
                        current = n_cells;
                        n_cells += 1;
                    }
                }
                // corner after slot k
                corner_cells[t][k] = current;
            }
            debug_assert!(stack.is_empty());
            debug_assert_eq!(current, first_cell);
        }

        // glue cells across gaps
        let mut parent: Vec<usize> = (0..n_cells).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in 0..ne {
            for g in 0..=union_curve.weight(e) as usize {
                let (a, b) = (gap_cells[0][e][g], gap_cells[1][e][g]);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        let mut piece_id: Vec<usize> = vec![usize::MAX; n_cells];
        let mut pieces: Vec<Piece> = Vec::new();
        for cell in 0..n_cells {
            let root = find(&mut parent, cell);
            if piece_id[root] == usize::MAX {
                piece_id[root] = pieces.len();
                pieces.push(Piece { punctures: Vec::new(), boundary: Vec::new(), complexity: 0 });
            }
            piece_id[cell] = piece_id[root];
        }
        let piece_of_cell = piece_id;

        // punctures per piece (via corner cells)
        for (t, _) in tri.triangles() {
            for k in 0..3 {
                let v = tri.corner_vertex(t, k);
                let p = piece_of_cell[corner_cells[t][k]];
                if !pieces[p].punctures.contains(&v) {
                    pieces[p].punctures.push(v);
                }
            }
        }
        // boundary components per piece
        let mut comp_pieces = vec![[usize::MAX; 2]; comps.len()];
        for ch in &chords {
            let p_in = piece_of_cell[ch.cell_inner];
            let p_out = piece_of_cell[ch.cell_outer];
            comp_pieces[ch.comp] = [p_in.min(p_out), p_in.max(p_out)];
            for p in [p_in, p_out] {
                if !pieces[p].boundary.contains(&ch.comp) {
                    pieces[p].boundary.push(ch.comp);
                }
            }
        }
        for cp in &comp_pieces {
            if cp[0] == cp[1] {
                return Err(Error::Precondition(
                    "component does not separate; not a genus-0 multicurve".into(),
                ));
            }
        }
        for p in &mut pieces {
            p.punctures.sort_unstable();
            p.boundary.sort_unstable();
            let holes = p.punctures.len() + p.boundary.len();
            if holes < 3 {
                return Err(Error::Precondition("piece with fewer than 3 holes".into()));
            }
            p.complexity = holes - 3;
        }

        let comp_chords = {
            let mut cw = vec![Vec::new(); comps.len()];
            for (ci, word) in comp_words.iter().enumerate() {
                for pos in 0..word.len() {
                    cw[ci].push(chord_of[&(ci, pos)]);
                }
            }
            cw
        };

        Ok(CutSurface {
            surface,
            tri,
            comps,
            comp_words,
            union_curve,
            n_cells,
            gap_cells,
            corner_cells,
            chords,
            comp_chords,
            pieces,
            piece_of_cell,
            comp_pieces,
            point_comp,
        })
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn components(&self) -> &[CurveClass] {
        &self.comps
    }

    pub fn component_word(&self, c: usize) -> &[EdgeId] {
        &self.comp_words[c]
    }

    pub fn union_curve(&self) -> &NormalMultiCurve {
        &self.union_curve
    }

    /// The two pieces adjacent to a component.
    pub fn sides_of(&self, comp: usize) -> [usize; 2] {
        self.comp_pieces[comp]
    }

    /// Punctures with an odd number of essential crossings with the tails
    /// (p, n); this is the side of the curve away from puncture n.
    fn partition_mask(&self, weights: &[i64]) -> u64 {
        let n = self.surface.punctures();
        let mut mask = 0u64;
        for p in 1..n {
            if weights[self.tri.tail_edge(p)] % 2 != 0 {
                mask |= 1 << (p - 1);
            }
        }
        mask
    }

    fn full_mask(&self) -> u64 {
        let n = self.surface.punctures();
        (1u64 << (n - 1)) - 1 // punctures 1..n-1; n is the basepoint
    }

    /// Punctures in the branch hanging off `piece` behind component `c`
    /// (as a mask over punctures 1..n-1 plus bit n-1 for the basepoint).
    fn branch_punctures(&self, piece: usize, comp: usize) -> u64 {
        let [a, b] = self.comp_pieces[comp];
        let start = if a == piece { b } else { a };
        debug_assert!(a == piece || b == piece);
        // BFS over the dual tree away from `piece`
        let mut seen_pieces = vec![false; self.pieces.len()];
        seen_pieces[piece] = true;
        let mut stack = vec![start];
        let mut mask = 0u64;
        seen_pieces[start] = true;
        while let Some(p) = stack.pop() {
            for &v in &self.pieces[p].punctures {
                mask |= 1 << (v - 1);
            }
            for &c2 in &self.pieces[p].boundary {
                let [x, y] = self.comp_pieces[c2];
                for q in [x, y] {
                    if !seen_pieces[q] {
                        seen_pieces[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        mask
    }

    /// The puncture-side mask of a hole seen from `piece` (punctures hidden
    /// behind it), over all punctures including n.
    fn hole_mask(&self, piece: usize, hole: Hole) -> u64 {
        match hole {
            Hole::Puncture(v) => 1 << (v - 1),
            Hole::Boundary(c) => self.branch_punctures(piece, c),
        }
    }

    /// Locate an essential curve with i(c, multicurve) = 0.
    pub fn locate(&self, c: &CurveClass) -> Result<Location> {
        for (ci, comp) in self.comps.iter().enumerate() {
            if comp.curve() == c.curve() {
                return Ok(Location::BoundaryParallel(ci));
            }
        }
        let i_total = geometric_intersection(c.curve(), &self.union_curve);
        if i_total != 0 {
            return Err(Error::Precondition(
                "curve crosses the multicurve; it lies in no piece".into(),
            ));
        }
        let part = self.partition_mask(c.weights());
        let full = self.full_mask();
        // side of the basepoint puncture n: complement of `part`, plus n
        let n_side = (!part & full) | (1 << (self.surface.punctures() - 1));
        let mut found = None;
        'pieces: for (pi, piece) in self.pieces.iter().enumerate() {
            for &comp in &piece.boundary {
                let branch = self.branch_punctures(pi, comp);
                // every branch hanging off the piece must lie on one side
                if branch & part != 0 && branch & n_side != 0 {
                    continue 'pieces;
                }
            }
            if found.is_some() {
                return Err(Error::Precondition("ambiguous piece location".into()));
            }
            found = Some(pi);
        }
        found.map(Location::Inside).ok_or_else(|| {
            Error::Precondition("no piece is compatible with the curve's partition".into())
        })
    }

    /// Cells adjacent to a hole passing the filter, with attachments.
    fn hole_cells(&self, cell_ok: &dyn Fn(usize) -> bool, hole: Hole) -> Vec<(usize, Attach)> {
        let mut out = Vec::new();
        match hole {
            Hole::Puncture(v) => {
                for &(t, k, _) in self.tri.rotation_corners(v) {
                    let cell = self.corner_cells[t][k as usize];
                    if cell_ok(cell) {
                        out.push((cell, Attach::Corner { v, tri: t, slot: k }));
                    }
                }
            }
            Hole::Boundary(c) => {
                for &chord_id in &self.comp_chords[c] {
                    let ch = &self.chords[chord_id];
                    for cell in [ch.cell_inner, ch.cell_outer] {
                        if cell_ok(cell) {
                            out.push((cell, Attach::Chord { comp: c, pos: ch.pos }));
                        }
                    }
                }
            }
        }
        out
    }

    /// Which piece of a coarser cut (over a prefix of this cut's component
    /// list) each cell of this cut lies in.
    pub fn cells_to_pieces_of(&self, coarse: &CutSurface) -> Vec<usize> {
        let coarse_count = coarse.comps.len();
        debug_assert!(self
            .comps
            .iter()
            .take(coarse_count)
            .zip(&coarse.comps)
            .all(|(a, b)| a.curve() == b.curve()));
        let mut out = vec![usize::MAX; self.n_cells];
        for e in 0..self.tri.num_edges() {
            let w = self.union_curve.weight(e) as usize;
            // coarse gap index before each refined gap: number of points
            // belonging to coarse components seen so far
            let mut coarse_gap = 0usize;
            for g in 0..=w {
                let coarse_cell = coarse.gap_cells[0][e][coarse_gap];
                let piece = coarse.piece_of_cell[coarse_cell];
                for side in 0..2 {
                    let cell = self.gap_cells[side][e][g];
                    debug_assert!(out[cell] == usize::MAX || out[cell] == piece);
                    out[cell] = piece;
                }
                if g < w && self.point_comp[e][g] < coarse_count {
                    coarse_gap += 1;
                }
            }
        }
        out
    }

    /// Shortest arc between two holes of a piece, crossing only the listed
    /// permeable components (minimizing crossings first, then length).
    /// Returns (edge word, attach at from, attach at to).
    pub fn arc_between(
        &self,
        piece: usize,
        from: Hole,
        to: Hole,
        permeable: &[usize],
    ) -> Result<(Vec<EdgeId>, Attach, Attach)> {
        let filter = |cell: usize| self.piece_of_cell[cell] == piece;
        self.arc_between_filtered(&filter, from, to, permeable)
    }

    /// Like [`CutSurface::arc_between`] with an arbitrary admissibility
    /// filter on endpoint cells (used when the working piece belongs to a
    /// coarser cut).
    pub fn arc_between_filtered(
        &self,
        cell_ok: &dyn Fn(usize) -> bool,
        from: Hole,
        to: Hole,
        permeable: &[usize],
    ) -> Result<(Vec<EdgeId>, Attach, Attach)> {
        #[derive(Clone, Copy, PartialEq, Eq)]
        enum Move {
            Gap(EdgeId),
            Chord,
        }
        // adjacency: cell -> (neighbor, move)
        let mut adj: Vec<Vec<(usize, Move)>> = vec![Vec::new(); self.n_cells];
        let ne = self.tri.num_edges();
        for e in 0..ne {
            for g in 0..=self.union_curve.weight(e) as usize {
                let (a, b) = (self.gap_cells[0][e][g], self.gap_cells[1][e][g]);
                if a != b {
                    adj[a].push((b, Move::Gap(e)));
                    adj[b].push((a, Move::Gap(e)));
                }
            }
        }
        for ch in &self.chords {
            if permeable.contains(&ch.comp) {
                adj[ch.cell_inner].push((ch.cell_outer, Move::Chord));
                adj[ch.cell_outer].push((ch.cell_inner, Move::Chord));
            }
        }

        let starts = self.hole_cells(cell_ok, from);
        let targets = self.hole_cells(cell_ok, to);
        if starts.is_empty() || targets.is_empty() {
            return Err(Error::Precondition("hole not adjacent to the piece".into()));
        }
        let target_attach: HashMap<usize, Attach> = targets.iter().map(|&(c, a)| (c, a)).collect();

        // Dijkstra on (chord crossings, edge crossings), deterministic
        let mut dist: Vec<Option<(u64, u64)>> = vec![None; self.n_cells];
        let mut from_move: Vec<Option<(usize, Move)>> = vec![None; self.n_cells];
        let mut start_attach: Vec<Option<Attach>> = vec![None; self.n_cells];
        let mut heap: BinaryHeap<std::cmp::Reverse<((u64, u64), usize)>> = BinaryHeap::new();
        for &(c, at) in &starts {
            if dist[c].is_none() {
                dist[c] = Some((0, 0));
                start_attach[c] = Some(at);
                heap.push(std::cmp::Reverse(((0, 0), c)));
            }
        }
        let mut reached = None;
        while let Some(std::cmp::Reverse((d, cell))) = heap.pop() {
            if dist[cell] != Some(d) {
                continue;
            }
            if target_attach.contains_key(&cell) {
                reached = Some(cell);
                break;
            }
            for &(nb, mv) in &adj[cell] {
                let nd = match mv {
                    Move::Gap(_) => (d.0, d.1 + 1),
                    Move::Chord => (d.0 + 1, d.1),
                };
                if dist[nb].map_or(true, |old| nd < old) {
                    dist[nb] = Some(nd);
                    from_move[nb] = Some((cell, mv));
                    start_attach[nb] = start_attach[cell];
                    heap.push(std::cmp::Reverse((nd, nb)));
                }
            }
        }
        let end = reached.ok_or_else(|| {
            Error::Precondition("holes are not connected within the piece".into())
        })?;

        let mut word_rev = Vec::new();
        let mut cur = end;
        while let Some((prev, mv)) = from_move[cur] {
            if let Move::Gap(e) = mv {
                word_rev.push(e);
            }
            cur = prev;
        }
        word_rev.reverse();
        let a_from = start_attach[end].expect("start attach propagated");
        let a_to = target_attach[&end];
        Ok((word_rev, a_from, a_to))
    }

    fn wrap_words(&self, attach: Attach) -> Vec<Vec<EdgeId>> {
        match attach {
            Attach::Corner { v, tri, slot } => {
                let rot = self.tri.rotation_corners(v);
                let pos = rot
                    .iter()
                    .position(|&(t, k, _)| t == tri && k == slot)
                    .expect("attach corner in rotation");
                let fwd: Vec<EdgeId> = rot[pos..].iter().chain(&rot[..pos]).map(|&(_, _, e)| e).collect();
                let bwd: Vec<EdgeId> = fwd.iter().rev().copied().collect();
                vec![fwd, bwd]
            }
            Attach::Chord { comp, pos } => {
                let word = &self.comp_words[comp];
                let len = word.len();
                let fwd: Vec<EdgeId> = (1..=len).map(|k| word[(pos + k) % len]).collect();
                let bwd: Vec<EdgeId> = fwd.iter().rev().copied().collect();
                vec![fwd, bwd]
            }
        }
    }

    /// Partial walk along a component from one chord attach to another; for
    /// the boundary of a neighborhood of an arc with both ends on the same
    /// component.
    fn partial_words(&self, comp: usize, from_pos: usize, to_pos: usize) -> Vec<Vec<EdgeId>> {
        let word = &self.comp_words[comp];
        let len = word.len();
        let mut out = Vec::new();
        if from_pos == to_pos {
            out.push(Vec::new());
            let full: Vec<EdgeId> = (1..=len).map(|k| word[(from_pos + k) % len]).collect();
            out.push(full.clone());
            out.push(full.into_iter().rev().collect());
        } else {
            let fwd: Vec<EdgeId> = {
                let mut w = Vec::new();
                let mut k = (from_pos + 1) % len;
                loop {
                    w.push(word[k]);
                    if k == to_pos {
                        break;
                    }
                    k = (k + 1) % len;
                }
                w
            };
            let bwd: Vec<EdgeId> = {
                let mut w = Vec::new();
                let mut k = from_pos;
                loop {
                    if k == to_pos {
                        break;
                    }
                    w.push(word[k]);
                    k = (k + len - 1) % len;
                }
                w
            };
            out.push(fwd);
            out.push(bwd);
        }
        out
    }

    /// A copy of this cut with extra components appended.
    pub fn refine_with(&self, extra: &[CurveClass]) -> Result<CutSurface> {
        let mut comps = self.comps.clone();
        comps.extend(extra.iter().cloned());
        CutSurface::new(self.surface, comps)
    }

    /// The essential boundary curve of a neighborhood of
    /// hole1 ∪ arc ∪ hole2 inside a piece, given the arc as an edge word
    /// with attachments.  For arcs with both endpoints on the same
    /// component this is the wave projection curve.
    pub fn curve_from_arc(
        &self,
        piece: usize,
        a_from: Attach,
        word: &[EdgeId],
        a_to: Attach,
    ) -> Result<CurveClass> {
        self.curve_from_arc_located(self, piece, a_from, word, a_to)
    }

    /// Like [`CutSurface::curve_from_arc`], but the result is validated to
    /// live in a piece of a coarser cut (the arc data still refers to this
    /// cut's components).
    pub fn curve_from_arc_located(
        &self,
        val_cut: &CutSurface,
        val_piece: usize,
        a_from: Attach,
        word: &[EdgeId],
        a_to: Attach,
    ) -> Result<CurveClass> {
        let rev: Vec<EdgeId> = word.iter().rev().copied().collect();
        let mut candidates: Vec<Vec<EdgeId>> = Vec::new();
        match (a_from, a_to) {
            (Attach::Chord { comp: c1, pos: p1 }, Attach::Chord { comp: c2, pos: p2 })
                if c1 == c2 =>
            {
                // wave: arc out, partial hug back
                for partial in self.partial_words(c1, p2, p1) {
                    let mut w = word.to_vec();
                    w.extend(partial);
                    candidates.push(w);
                }
            }
            _ => {
                for w2 in self.wrap_words(a_to) {
                    for w1 in self.wrap_words(a_from) {
                        let mut w = word.to_vec();
                        w.extend(w2.iter().copied());
                        w.extend(rev.iter().copied());
                        w.extend(w1.iter().copied());
                        candidates.push(w);
                    }
                }
            }
        }

        let mut accepted: Vec<CurveClass> = Vec::new();
        for cand in candidates {
            let Ok(curve) = curve_from_word(self.surface, &cand) else { continue };
            if curve.is_empty() {
                continue;
            }
            let Ok(class) = CurveClass::from_curve(curve) else { continue };
            if !class.is_essential() {
                continue;
            }
            if geometric_intersection(class.curve(), &val_cut.union_curve) != 0 {
                continue;
            }
            match val_cut.locate(&class) {
                Ok(Location::Inside(p)) if p == val_piece => {}
                _ => continue,
            }
            if !accepted.iter().any(|c| c == &class) {
                accepted.push(class);
            }
        }
        match accepted.len() {
            1 => Ok(accepted.pop().unwrap()),
            0 => Err(Error::Precondition(
                "no boundary-of-neighborhood candidate validates".into(),
            )),
            _ => Err(Error::Precondition(
                "ambiguous boundary-of-neighborhood construction".into(),
            )),
        }
    }

    /// Curve around two holes of a piece (the boundary of a neighborhood of
    /// the holes joined by a shortest arc).
    pub fn curve_around_holes(&self, piece: usize, h1: Hole, h2: Hole) -> Result<CurveClass> {
        let (word, a1, a2) = self.arc_between(piece, h1, h2, &[])?;
        self.curve_from_arc(piece, a1, &word, a2)
    }
}

/// Cut along a multicurve and report the pieces.
pub fn cut_along(surface: SurfaceSpec, comps: Vec<CurveClass>) -> Result<Vec<Piece>> {
    Ok(CutSurface::new(surface, comps)?.pieces().to_vec())
}

/// The curve enclosing exactly the given punctures (at least 2, at most
/// n - 2), built by iterated neighborhood boundaries.
pub fn curve_around(surface: SurfaceSpec, punctures: &[Vertex]) -> Result<CurveClass> {
    let n = surface.punctures();
    let mut set: Vec<Vertex> = punctures.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() < 2 || set.len() > (n as usize - 2) {
        return Err(Error::Precondition(format!(
            "a curve must enclose 2..={} punctures, got {}",
            n - 2,
            set.len()
        )));
    }
    let empty = CutSurface::new(surface, Vec::new())?;
    let mut cur =
        empty.curve_around_holes(0, Hole::Puncture(set[0]), Hole::Puncture(set[1]))?;
    for &v in &set[2..] {
        let cut = CutSurface::new(surface, vec![cur.clone()])?;
        // the piece containing v but not the previously enclosed punctures
        let piece = (0..cut.pieces().len())
            .find(|&p| cut.pieces()[p].punctures.contains(&v) && cut.pieces()[p].boundary == [0])
            .ok_or_else(|| Error::Precondition("puncture not adjacent to growth piece".into()))?;
        cur = cut.curve_around_holes(piece, Hole::Boundary(0), Hole::Puncture(v))?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: u32) -> SurfaceSpec {
        SurfaceSpec::sphere(n).unwrap()
    }

    #[test]
    fn around_two_punctures_s4() {
        let c = curve_around(s(4), &[1, 2]).unwrap();
        assert_eq!(c.weights(), &[0, 1, 1, 1, 0, 1]);
        let c = curve_around(s(4), &[2, 3]).unwrap();
        assert_eq!(c.weights(), &[1, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn around_sets_partition_correctly() {
        for n in 4..=7u32 {
            let spec = s(n);
            let tri = spec.triangulation();
            for a in 1..=n {
                for b in a + 1..=n {
                    if (n as usize) - 2 < 2 {
                        continue;
                    }
                    let c = curve_around(spec, &[a, b]).unwrap();
                    assert!(c.is_essential());
                    // tail parities match the expected partition
                    for p in 1..n {
                        let odd = c.weights()[tri.tail_edge(p)] % 2 != 0;
                        let inside = (p == a || p == b) != (a == n || b == n);
                        assert_eq!(odd, inside, "n={n} around {{{a},{b}}} tail {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn cut_pants_decomposition_s5() {
        let spec = s(5);
        let c1 = curve_around(spec, &[1, 2]).unwrap();
        let c2 = curve_around(spec, &[1, 2, 3]).unwrap();
        let pieces = cut_along(spec, vec![c1, c2]).unwrap();
        assert_eq!(pieces.len(), 3);
        assert!(pieces.iter().all(|p| p.complexity == 0));
    }

    #[test]
    fn cut_deficiency_one_s5() {
        let spec = s(5);
        let c1 = curve_around(spec, &[1, 2]).unwrap();
        let pieces = cut_along(spec, vec![c1]).unwrap();
        assert_eq!(pieces.len(), 2);
        let mut cx: Vec<usize> = pieces.iter().map(|p| p.complexity).collect();
        cx.sort_unstable();
        assert_eq!(cx, vec![0, 1]);
    }

    #[test]
    fn cut_empty_multicurve() {
        let spec = s(6);
        let pieces = cut_along(spec, Vec::new()).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].complexity, 3);
        assert_eq!(pieces[0].punctures.len(), 6);
    }

    #[test]
    fn complexity_bookkeeping() {
        // sum of piece complexities = kappa(S) - number of components
        let spec = s(7);
        let c1 = curve_around(spec, &[1, 2]).unwrap();
        let c2 = curve_around(spec, &[4, 5]).unwrap();
        let pieces = cut_along(spec, vec![c1, c2]).unwrap();
        let total: usize = pieces.iter().map(|p| p.complexity).sum();
        assert_eq!(total, spec.complexity() - 2);
    }

    #[test]
    fn locate_finds_the_piece() {
        let spec = s(6);
        let c = curve_around(spec, &[1, 2, 3]).unwrap();
        let cut = CutSurface::new(spec, vec![c]).unwrap();
        let inner = curve_around(spec, &[1, 2]).unwrap();
        let outer = curve_around(spec, &[4, 5]).unwrap();
        let li = cut.locate(&inner).unwrap();
        let lo = cut.locate(&outer).unwrap();
        let (Location::Inside(pi), Location::Inside(po)) = (li, lo) else {
            panic!("expected inside locations");
        };
        assert_ne!(pi, po);
        assert!(cut.pieces()[pi].punctures.contains(&1));
        assert!(cut.pieces()[po].punctures.contains(&4));
        let par = cut.locate(&curve_around(spec, &[1, 2, 3]).unwrap()).unwrap();
        assert_eq!(par, Location::BoundaryParallel(0));
    }
}
