//! Glued-triangle complexes: the combinatorial charts all curves are written over.
//!
//! A [`Complex`] is a collection of oriented triangles together with an
//! orientation-reversing gluing of some of their sides. Unglued sides are
//! boundary. The conventions are global and everything in this crate depends
//! on them:
//!
//! * corners of a triangle are numbered `0, 1, 2` anticlockwise;
//! * side `i` runs from corner `i` to corner `(i+1) % 3`, so the triangle
//!   interior lies on the left of that direction;
//! * corner `i` sits between incoming side `(i+2) % 3` and outgoing side `i`;
//! * gluing side `(t,i)` to `(t',j)` identifies corner `i` of `t` with corner
//!   `(j+1) % 3` of `t'` and corner `(i+1) % 3` of `t` with corner `j` of `t'`
//!   (orientation-reversing, so the glued surface is oriented);
//! * the positive direction along the boundary is the side direction
//!   (surface on the left); "anticlockwise" always refers to this
//!   orientation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

/// One side of one triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub tri: u32,
    pub side: u8,
}

impl Slot {
    pub const fn new(tri: u32, side: u8) -> Self {
        Slot { tri, side }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}s{}", self.tri, self.side)
    }
}

/// One corner of one triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner {
    pub tri: u32,
    pub corner: u8,
}

impl Corner {
    pub const fn new(tri: u32, corner: u8) -> Self {
        Corner { tri, corner }
    }

    /// The side leaving this corner (side `i`).
    pub fn outgoing_side(self) -> Slot {
        Slot::new(self.tri, self.corner)
    }

    /// The side arriving at this corner (side `(i+2) % 3`).
    pub fn incoming_side(self) -> Slot {
        Slot::new(self.tri, (self.corner + 2) % 3)
    }

    /// The side of the triangle not touching this corner.
    pub fn opposite_side(self) -> Slot {
        Slot::new(self.tri, (self.corner + 1) % 3)
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}c{}", self.tri, self.corner)
    }
}

/// Identifier of a vertex of the glued complex (a class of corners).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Whether a vertex lies on the boundary of the glued surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    /// On the boundary: the corner fan is a chain between two boundary sides.
    Boundary,
    /// Interior: the corner fan is a full cycle.
    Interior,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexInfo {
    pub kind: VertexKind,
    /// All corners at this vertex in anticlockwise order. For a boundary
    /// vertex the list starts at the corner adjacent to the outgoing boundary
    /// side and ends at the corner adjacent to the incoming one; for an
    /// interior vertex it is a cycle starting at the smallest corner.
    pub corners: Vec<Corner>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    BadSlot(Slot),
    SelfGluedSlot(Slot),
    NotInvolution(Slot),
    InconsistentVertex(Corner),
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::BadSlot(s) => write!(f, "slot {s} out of range"),
            ComplexError::SelfGluedSlot(s) => write!(f, "slot {s} glued to itself"),
            ComplexError::NotInvolution(s) => write!(f, "gluing at {s} is not an involution"),
            ComplexError::InconsistentVertex(c) => {
                write!(f, "corner fan around {c} is inconsistent")
            }
        }
    }
}

/// A glued oriented-triangle complex (possibly disconnected).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    n_tris: u32,
    glue: BTreeMap<Slot, Slot>,
    vertex_of_corner: Vec<u32>,
    vertices: Vec<VertexInfo>,
}

impl Complex {
    /// Build and validate a complex from a triangle count and a list of glued
    /// slot pairs. Two slots of the same triangle may be glued to each other,
    /// but a slot is never glued to itself.
    pub fn new(n_tris: u32, gluings: &[(Slot, Slot)]) -> Result<Self, ComplexError> {
        let mut glue = BTreeMap::new();
        let check = |s: Slot| -> Result<(), ComplexError> {
            if s.tri >= n_tris || s.side >= 3 {
                return Err(ComplexError::BadSlot(s));
            }
            Ok(())
        };
        for &(a, b) in gluings {
            check(a)?;
            check(b)?;
            if a == b {
                return Err(ComplexError::SelfGluedSlot(a));
            }
            if glue.insert(a, b).is_some() {
                return Err(ComplexError::NotInvolution(a));
            }
            if glue.insert(b, a).is_some() {
                return Err(ComplexError::NotInvolution(b));
            }
        }
        let (vertex_of_corner, vertices) = Self::build_vertices(n_tris, &glue)?;
        Ok(Complex {
            n_tris,
            glue,
            vertex_of_corner,
            vertices,
        })
    }

    fn corner_index(c: Corner) -> usize {
        c.tri as usize * 3 + c.corner as usize
    }

    fn build_vertices(
        n_tris: u32,
        glue: &BTreeMap<Slot, Slot>,
    ) -> Result<(Vec<u32>, Vec<VertexInfo>), ComplexError> {
        let n_corners = n_tris as usize * 3;
        // Union-find over corners.
        let mut parent: Vec<usize> = (0..n_corners).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        };
        for (&a, &b) in glue.iter() {
            // corner i of t ≡ corner (j+1)%3 of t'; corner (i+1)%3 of t ≡ corner j of t'.
            let ca = Corner::new(a.tri, a.side);
            let cb = Corner::new(b.tri, (b.side + 1) % 3);
            union(&mut parent, Self::corner_index(ca), Self::corner_index(cb));
            let ca2 = Corner::new(a.tri, (a.side + 1) % 3);
            let cb2 = Corner::new(b.tri, b.side);
            union(&mut parent, Self::corner_index(ca2), Self::corner_index(cb2));
        }

        // Local rotation helpers (cannot use self yet).
        let acw_next = |c: Corner| -> Option<Corner> {
            let s = c.incoming_side();
            glue.get(&s).map(|p| Corner::new(p.tri, p.side))
        };
        let cw_next = |c: Corner| -> Option<Corner> {
            let s = c.outgoing_side();
            glue.get(&s).map(|p| Corner::new(p.tri, (p.side + 1) % 3))
        };

        // Group corners by class.
        let mut classes: BTreeMap<usize, Vec<Corner>> = BTreeMap::new();
        for t in 0..n_tris {
            for k in 0..3u8 {
                let c = Corner::new(t, k);
                let root = find(&mut parent, Self::corner_index(c));
                classes.entry(root).or_default().push(c);
            }
        }

        let mut vertex_of_corner = alloc::vec![u32::MAX; n_corners];
        let mut vertices = Vec::new();
        for (_, members) in classes {
            let id = vertices.len() as u32;
            // A vertex is boundary iff some corner in the class has no
            // cw-neighbour (its outgoing side is unglued).
            let start_boundary = members.iter().copied().find(|&c| cw_next(c).is_none());
            let (kind, ordered) = match start_boundary {
                Some(start) => {
                    let mut ordered = alloc::vec![start];
                    let mut cur = start;
                    while let Some(next) = acw_next(cur) {
                        if ordered.contains(&next) {
                            return Err(ComplexError::InconsistentVertex(next));
                        }
                        ordered.push(next);
                        cur = next;
                    }
                    (VertexKind::Boundary, ordered)
                }
                None => {
                    let start = *members.iter().min().unwrap();
                    let mut ordered = alloc::vec![start];
                    let mut cur = start;
                    loop {
                        let next =
                            acw_next(cur).ok_or(ComplexError::InconsistentVertex(cur))?;
                        if next == start {
                            break;
                        }
                        if ordered.contains(&next) {
                            return Err(ComplexError::InconsistentVertex(next));
                        }
                        ordered.push(next);
                        cur = next;
                    }
                    (VertexKind::Interior, ordered)
                }
            };
            if ordered.len() != members.len() {
                return Err(ComplexError::InconsistentVertex(members[0]));
            }
            for &c in &ordered {
                vertex_of_corner[Self::corner_index(c)] = id;
            }
            vertices.push(VertexInfo {
                kind,
                corners: ordered,
            });
        }
        Ok((vertex_of_corner, vertices))
    }

    pub fn n_tris(&self) -> u32 {
        self.n_tris
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    /// The slot glued to `s`, or `None` if `s` is boundary.
    pub fn partner(&self, s: Slot) -> Option<Slot> {
        self.glue.get(&s).copied()
    }

    pub fn is_boundary_slot(&self, s: Slot) -> bool {
        !self.glue.contains_key(&s)
    }

    /// Canonical representative of the edge containing `s`: the smaller of
    /// the slot and its partner.
    pub fn edge_of(&self, s: Slot) -> Slot {
        match self.partner(s) {
            Some(p) => s.min(p),
            None => s,
        }
    }

    /// All canonical edge representatives, interior edges first by slot order.
    pub fn edges(&self) -> Vec<Slot> {
        let mut out = BTreeSet::new();
        for t in 0..self.n_tris {
            for side in 0..3u8 {
                out.insert(self.edge_of(Slot::new(t, side)));
            }
        }
        out.into_iter().collect()
    }

    pub fn interior_edges(&self) -> Vec<Slot> {
        self.edges()
            .into_iter()
            .filter(|&e| !self.is_boundary_slot(e))
            .collect()
    }

    /// All glued slot pairs, each listed once with the smaller slot first.
    pub fn gluings(&self) -> Vec<(Slot, Slot)> {
        self.glue
            .iter()
            .filter(|(a, b)| a < b)
            .map(|(&a, &b)| (a, b))
            .collect()
    }

    pub fn boundary_slots(&self) -> Vec<Slot> {
        self.edges()
            .into_iter()
            .filter(|&e| self.is_boundary_slot(e))
            .collect()
    }

    pub fn vertex_of(&self, c: Corner) -> VertexId {
        VertexId(self.vertex_of_corner[Self::corner_index(c)])
    }

    pub fn vertex(&self, v: VertexId) -> &VertexInfo {
        &self.vertices[v.0 as usize]
    }

    /// Anticlockwise rotation of a corner around its vertex (crossing the
    /// incoming side). `None` when that side is boundary.
    pub fn acw_next(&self, c: Corner) -> Option<Corner> {
        let p = self.partner(c.incoming_side())?;
        Some(Corner::new(p.tri, p.side))
    }

    /// Clockwise rotation of a corner around its vertex (crossing the
    /// outgoing side). `None` when that side is boundary.
    pub fn cw_next(&self, c: Corner) -> Option<Corner> {
        let p = self.partner(c.outgoing_side())?;
        Some(Corner::new(p.tri, (p.side + 1) % 3))
    }

    /// Both endpoints of the side, as vertices: (start, end) in side
    /// direction corner `i` → corner `i+1`.
    pub fn slot_endpoints(&self, s: Slot) -> (VertexId, VertexId) {
        (
            self.vertex_of(Corner::new(s.tri, s.side)),
            self.vertex_of(Corner::new(s.tri, (s.side + 1) % 3)),
        )
    }

    /// For a boundary vertex, the boundary slot leaving it in the positive
    /// direction (surface on the left).
    pub fn outgoing_boundary_slot(&self, v: VertexId) -> Option<Slot> {
        let info = self.vertex(v);
        if info.kind != VertexKind::Boundary {
            return None;
        }
        // First corner of the fan is adjacent to the outgoing boundary side.
        Some(info.corners[0].outgoing_side())
    }

    /// For a boundary vertex, the boundary slot arriving at it.
    pub fn incoming_boundary_slot(&self, v: VertexId) -> Option<Slot> {
        let info = self.vertex(v);
        if info.kind != VertexKind::Boundary {
            return None;
        }
        Some(info.corners.last().unwrap().incoming_side())
    }

    /// The boundary slot following `s` in the positive direction.
    pub fn next_boundary_slot(&self, s: Slot) -> Slot {
        debug_assert!(self.is_boundary_slot(s));
        let end = self.vertex_of(Corner::new(s.tri, (s.side + 1) % 3));
        self.outgoing_boundary_slot(end).expect("boundary vertex")
    }

    /// Boundary components as cycles of boundary slots in positive direction,
    /// each cycle starting at its smallest slot, components sorted by that
    /// slot.
    pub fn boundary_walks(&self) -> Vec<Vec<Slot>> {
        let mut remaining: BTreeSet<Slot> = self.boundary_slots().into_iter().collect();
        let mut walks = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut walk = alloc::vec![start];
            remaining.remove(&start);
            let mut cur = start;
            loop {
                let next = self.next_boundary_slot(cur);
                if next == start {
                    break;
                }
                remaining.remove(&next);
                walk.push(next);
                cur = next;
            }
            walks.push(walk);
        }
        walks
    }

    /// Euler characteristic of the glued surface.
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertices.len() as i64;
        let e = self.edges().len() as i64;
        let f = self.n_tris as i64;
        v - e + f
    }

    /// Connected components, as sorted lists of triangle indices.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = alloc::vec![false; self.n_tris as usize];
        let mut comps = Vec::new();
        for t0 in 0..self.n_tris {
            if seen[t0 as usize] {
                continue;
            }
            let mut stack = alloc::vec![t0];
            let mut comp = Vec::new();
            seen[t0 as usize] = true;
            while let Some(t) = stack.pop() {
                comp.push(t);
                for side in 0..3u8 {
                    if let Some(p) = self.partner(Slot::new(t, side)) {
                        if !seen[p.tri as usize] {
                            seen[p.tri as usize] = true;
                            stack.push(p.tri);
                        }
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Number of corners at a vertex (the length of one full turn of germ
    /// rotation for interior vertices).
    pub fn vertex_degree(&self, v: VertexId) -> usize {
        self.vertex(v).corners.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Square disc: t0 = (v0,v1,v2), t1 = (v0,v2,v3), glued along the
    /// diagonal v0–v2.
    pub(crate) fn square() -> Complex {
        Complex::new(2, &[(Slot::new(0, 2), Slot::new(1, 0))]).unwrap()
    }

    #[test]
    fn square_structure() {
        let c = square();
        assert_eq!(c.n_vertices(), 4);
        assert_eq!(c.euler_characteristic(), 1);
        assert_eq!(c.edges().len(), 5);
        assert_eq!(c.boundary_slots().len(), 4);
        let walks = c.boundary_walks();
        assert_eq!(walks.len(), 1);
        assert_eq!(walks[0].len(), 4);
        // v0 is the class of corners (t0,0) and (t1,0).
        let v0 = c.vertex_of(Corner::new(0, 0));
        assert_eq!(v0, c.vertex_of(Corner::new(1, 0)));
        let info = c.vertex(v0);
        assert_eq!(info.kind, VertexKind::Boundary);
        assert_eq!(info.corners, alloc::vec![Corner::new(0, 0), Corner::new(1, 0)]);
        // Rotation as derived by hand in the plane picture.
        assert_eq!(c.acw_next(Corner::new(0, 0)), Some(Corner::new(1, 0)));
        assert_eq!(c.acw_next(Corner::new(1, 0)), None);
        assert_eq!(c.cw_next(Corner::new(1, 0)), Some(Corner::new(0, 0)));
        assert_eq!(c.cw_next(Corner::new(0, 0)), None);
        assert_eq!(c.outgoing_boundary_slot(v0), Some(Slot::new(0, 0)));
        assert_eq!(c.incoming_boundary_slot(v0), Some(Slot::new(1, 2)));
    }

    #[test]
    fn boundary_walk_direction() {
        let c = square();
        let walk = &c.boundary_walks()[0];
        // Positive walk visits t0.s0 (v0→v1), t0.s1 (v1→v2), t1.s1 (v2→v3),
        // t1.s2 (v3→v0) in order.
        let start = walk.iter().position(|&s| s == Slot::new(0, 0)).unwrap();
        let rot: Vec<Slot> = (0..4).map(|k| walk[(start + k) % 4]).collect();
        assert_eq!(
            rot,
            alloc::vec![
                Slot::new(0, 0),
                Slot::new(0, 1),
                Slot::new(1, 1),
                Slot::new(1, 2)
            ]
        );
    }

    #[test]
    fn self_folded_cone() {
        // A single triangle with sides 1 and 2 glued: a cone over a monogon,
        // i.e. a self-folded triangle. Vertices: the apex (interior) and the
        // rim vertex.
        let c = Complex::new(1, &[(Slot::new(0, 1), Slot::new(0, 2))]).unwrap();
        assert_eq!(c.n_vertices(), 2);
        assert_eq!(c.euler_characteristic(), 1);
        let kinds: Vec<VertexKind> = c.vertex_ids().map(|v| c.vertex(v).kind).collect();
        assert_eq!(
            kinds.iter().filter(|&&k| k == VertexKind::Interior).count(),
            1
        );
    }

    #[test]
    fn rejects_bad_gluing() {
        assert!(Complex::new(1, &[(Slot::new(0, 0), Slot::new(0, 0))]).is_err());
        assert!(Complex::new(1, &[(Slot::new(0, 0), Slot::new(1, 0))]).is_err());
        assert!(Complex::new(
            2,
            &[
                (Slot::new(0, 0), Slot::new(1, 0)),
                (Slot::new(0, 0), Slot::new(1, 1))
            ]
        )
        .is_err());
    }
}
