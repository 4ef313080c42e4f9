//! Marked surfaces and their deterministic base triangulations.
//!
//! A [`SurfaceSpec`] names an oriented surface with non-empty boundary by
//! genus, marked-point counts per boundary component, and puncture count.
//! [`build_surface`] realizes it as a glued-triangle chart via a fixed
//! fan-and-cone construction, so the same spec always yields the identical
//! labeled complex:
//!
//! * the surface is presented as a polygon whose boundary word consists of
//!   the free segments of the first boundary component, one `x y x⁻¹ y⁻¹`
//!   block per handle, and one `t … t⁻¹` slit block per extra boundary
//!   component;
//! * without punctures the polygon is fan-triangulated from its first
//!   vertex; with punctures the first puncture is coned against the whole
//!   polygon and each further puncture is coned into a triangle.
//!
//! All vertices of the resulting complex are marked points or punctures;
//! the chart is an ideal triangulation of the surface.

use alloc::vec::Vec;
use core::fmt;

use crate::complex::{Complex, Corner, Slot, VertexId, VertexKind};

/// A marked surface with non-empty boundary, by coarse invariants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceSpec {
    pub genus: u32,
    /// Marked-point count per boundary component; each entry must be ≥ 1.
    pub boundary: Vec<u32>,
    pub punctures: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    /// The spec has no boundary component (closed surfaces are out of scope).
    NoBoundary,
    /// The surface is one of the excluded degenerate cases, a boundary
    /// component has no marked point, or the rank is below one.
    DegenerateSurface,
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::NoBoundary => write!(f, "surface has no boundary component"),
            SurfaceError::DegenerateSurface => write!(f, "degenerate or excluded surface"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SurfaceError {}

impl SurfaceSpec {
    pub fn new(genus: u32, boundary: Vec<u32>, punctures: u32) -> Self {
        SurfaceSpec {
            genus,
            boundary,
            punctures,
        }
    }

    /// Total number of boundary marked points.
    pub fn marked_on_boundary(&self) -> u32 {
        self.boundary.iter().sum()
    }

    /// Rank `n = 6g + 3b + 3p + c − 6`: the number of arcs in any
    /// triangulation of the surface.
    pub fn rank(&self) -> i64 {
        6 * self.genus as i64
            + 3 * self.boundary.len() as i64
            + 3 * self.punctures as i64
            + self.marked_on_boundary() as i64
            - 6
    }

    /// Expected triangle count of any ideal triangulation:
    /// `4g + 2b + 2p + c − 4`.
    pub fn triangle_count(&self) -> i64 {
        4 * self.genus as i64
            + 2 * self.boundary.len() as i64
            + 2 * self.punctures as i64
            + self.marked_on_boundary() as i64
            - 4
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary.len() as i64
    }

    /// Check the spec invariants: non-empty boundary, every component
    /// marked, rank ≥ 1, and not an excluded surface (unpunctured monogon,
    /// digon, triangle, or once-punctured monogon).
    pub fn validate(&self) -> Result<(), SurfaceError> {
        if self.boundary.is_empty() {
            return Err(SurfaceError::NoBoundary);
        }
        if self.boundary.iter().any(|&c| c == 0) {
            return Err(SurfaceError::DegenerateSurface);
        }
        if self.rank() < 1 {
            return Err(SurfaceError::DegenerateSurface);
        }
        let disc = self.genus == 0 && self.boundary.len() == 1;
        if disc {
            let c = self.boundary[0];
            if self.punctures == 0 && c <= 3 {
                return Err(SurfaceError::DegenerateSurface);
            }
            if self.punctures == 1 && c == 1 {
                return Err(SurfaceError::DegenerateSurface);
            }
        }
        Ok(())
    }
}

/// A boundary marked point, located on its boundary component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkedPoint {
    pub vertex: VertexId,
    pub component: usize,
    /// Cyclic position along the component in the positive direction.
    pub position: usize,
}

/// A surface realized as a labeled glued-triangle chart.
#[derive(Debug, Clone)]
pub struct SurfaceModel {
    pub spec: SurfaceSpec,
    pub complex: Complex,
    /// Interior vertices, sorted by id: exactly the punctures.
    pub punctures: Vec<VertexId>,
    /// Boundary marked points grouped per boundary component, each component
    /// listed in positive cyclic order starting at its smallest vertex.
    pub marked: Vec<Vec<MarkedPoint>>,
    /// Boundary segments per component, in positive cyclic order; segment
    /// `k` of a component runs from its marked point `k` to marked point
    /// `k+1`.
    pub boundary_segments: Vec<Vec<Slot>>,
}

impl SurfaceModel {
    pub fn rank(&self) -> i64 {
        self.complex.interior_edges().len() as i64
    }

    /// Interior edges of the base triangulation, canonical representatives
    /// in sorted order. Their indices are the stable arc labels of the chart.
    pub fn chart_arcs(&self) -> Vec<Slot> {
        self.complex.interior_edges()
    }

    pub fn is_puncture(&self, v: VertexId) -> bool {
        self.complex.vertex(v).kind == VertexKind::Interior
    }
}

/// Wrap an arbitrary valid complex (possibly disconnected, as produced by
/// cutting) as a surface model. The spec is synthesized from the complex's
/// aggregate invariants; per-component data lives in the complex itself.
pub fn model_from_complex(complex: Complex) -> SurfaceModel {
    let punctures: Vec<VertexId> = complex
        .vertex_ids()
        .filter(|&v| complex.vertex(v).kind == VertexKind::Interior)
        .collect();
    let walks = complex.boundary_walks();
    let n_comp = complex.components().len() as i64;
    let total_genus =
        (2 * n_comp - walks.len() as i64 - complex.euler_characteristic()).max(0) / 2;
    let spec = SurfaceSpec::new(
        total_genus as u32,
        walks.iter().map(|w| w.len() as u32).collect(),
        punctures.len() as u32,
    );
    let mut marked = Vec::new();
    let mut boundary_segments = Vec::new();
    for (ci, walk) in walks.iter().enumerate() {
        let pts = walk
            .iter()
            .enumerate()
            .map(|(k, &s)| MarkedPoint {
                vertex: complex.vertex_of(Corner::new(s.tri, s.side)),
                component: ci,
                position: k,
            })
            .collect();
        marked.push(pts);
        boundary_segments.push(walk.clone());
    }
    SurfaceModel {
        spec,
        complex,
        punctures,
        marked,
        boundary_segments,
    }
}

/// One side of the defining polygon.
#[derive(Debug, Clone, Copy)]
enum PolySide {
    /// A genuine boundary segment of the surface.
    Free,
    /// First occurrence of a paired side.
    Pair(usize),
    /// Second (reversed) occurrence of a paired side.
    PairInv(usize),
}

/// Build the deterministic base chart for the surface.
pub fn build_surface(spec: &SurfaceSpec) -> Result<SurfaceModel, SurfaceError> {
    spec.validate()?;
    let g = spec.genus as usize;
    let p = spec.punctures as usize;

    // Polygon boundary word.
    let mut word: Vec<PolySide> = Vec::new();
    for _ in 0..spec.boundary[0] {
        word.push(PolySide::Free);
    }
    let mut next_pair = 0usize;
    for _ in 0..g {
        let x = next_pair;
        let y = next_pair + 1;
        next_pair += 2;
        word.push(PolySide::Pair(x));
        word.push(PolySide::Pair(y));
        word.push(PolySide::PairInv(x));
        word.push(PolySide::PairInv(y));
    }
    for &cj in &spec.boundary[1..] {
        let t = next_pair;
        next_pair += 1;
        word.push(PolySide::Pair(t));
        for _ in 0..cj {
            word.push(PolySide::Free);
        }
        word.push(PolySide::PairInv(t));
    }
    let n_sides = word.len();

    // Triangulate: slot carrying polygon side k, plus internal gluings.
    let mut gluings: Vec<(Slot, Slot)> = Vec::new();
    let mut n_tris: u32;
    let side_slot: Vec<Slot>;
    if p == 0 {
        // Fan from polygon vertex 0: triangles (v0, v_{k+1}, v_{k+2}).
        debug_assert!(n_sides >= 4);
        n_tris = n_sides as u32 - 2;
        for t in 0..n_tris - 1 {
            gluings.push((Slot::new(t, 2), Slot::new(t + 1, 0)));
        }
        side_slot = (0..n_sides)
            .map(|k| {
                if k == 0 {
                    Slot::new(0, 0)
                } else if k == n_sides - 1 {
                    Slot::new(n_tris - 1, 2)
                } else {
                    Slot::new(k as u32 - 1, 1)
                }
            })
            .collect();
    } else {
        // Cone the whole polygon against the first puncture: triangles
        // (v_k, v_{k+1}, P), cyclically glued around P.
        n_tris = n_sides as u32;
        for k in 0..n_tris {
            gluings.push((Slot::new(k, 1), Slot::new((k + 1) % n_tris, 2)));
        }
        side_slot = (0..n_sides).map(|k| Slot::new(k as u32, 0)).collect();
    }

    // Glue paired polygon sides (side with reversed side: start of one meets
    // end of the other, matching the slot-gluing convention).
    let mut first_occurrence: Vec<Option<Slot>> = alloc::vec![None; next_pair];
    for (k, ps) in word.iter().enumerate() {
        match ps {
            PolySide::Free => {}
            PolySide::Pair(id) => first_occurrence[*id] = Some(side_slot[k]),
            PolySide::PairInv(id) => {
                gluings.push((first_occurrence[*id].unwrap(), side_slot[k]));
            }
        }
    }

    // Cone the remaining punctures into distinct triangles 0, 1, ….
    for extra in 0..p.saturating_sub(1) {
        cone_into(&mut gluings, &mut n_tris, extra as u32);
    }

    let complex = Complex::new(n_tris, &gluings).expect("construction yields a valid complex");

    // Cross-check every derived invariant of the construction.
    if complex.components().len() != 1
        || complex.euler_characteristic() != spec.euler_characteristic()
        || complex.n_tris() as i64 != spec.triangle_count()
        || complex.interior_edges().len() as i64 != spec.rank()
    {
        return Err(SurfaceError::DegenerateSurface);
    }
    let punctures: Vec<VertexId> = complex
        .vertex_ids()
        .filter(|&v| complex.vertex(v).kind == VertexKind::Interior)
        .collect();
    if punctures.len() != p {
        return Err(SurfaceError::DegenerateSurface);
    }

    // Boundary components, each walk starting at its smallest slot.
    let walks = complex.boundary_walks();
    if walks.len() != spec.boundary.len() {
        return Err(SurfaceError::DegenerateSurface);
    }
    let mut lens: Vec<usize> = walks.iter().map(|w| w.len()).collect();
    let mut want: Vec<usize> = spec.boundary.iter().map(|&c| c as usize).collect();
    lens.sort_unstable();
    want.sort_unstable();
    if lens != want {
        return Err(SurfaceError::DegenerateSurface);
    }
    let mut marked = Vec::new();
    let mut boundary_segments = Vec::new();
    for (ci, walk) in walks.iter().enumerate() {
        let pts = walk
            .iter()
            .enumerate()
            .map(|(k, &s)| MarkedPoint {
                vertex: complex.vertex_of(Corner::new(s.tri, s.side)),
                component: ci,
                position: k,
            })
            .collect();
        marked.push(pts);
        boundary_segments.push(walk.clone());
    }

    Ok(SurfaceModel {
        spec: spec.clone(),
        complex,
        punctures,
        marked,
        boundary_segments,
    })
}

/// Replace triangle `t = (A, B, C)` by three triangles around a fresh
/// interior vertex `P`: `(A, B, P)` at index `t`, `(B, C, P)` and
/// `(C, A, P)` appended. External gluings of the old sides move to side 0 of
/// the corresponding new triangle.
fn cone_into(gluings: &mut Vec<(Slot, Slot)>, n_tris: &mut u32, t: u32) {
    let u = *n_tris;
    let w = *n_tris + 1;
    *n_tris += 2;
    let remap = |s: Slot| -> Slot {
        if s.tri == t {
            match s.side {
                0 => Slot::new(t, 0),
                1 => Slot::new(u, 0),
                _ => Slot::new(w, 0),
            }
        } else {
            s
        }
    };
    for pair in gluings.iter_mut() {
        *pair = (remap(pair.0), remap(pair.1));
    }
    gluings.push((Slot::new(t, 1), Slot::new(u, 2)));
    gluings.push((Slot::new(u, 1), Slot::new(w, 2)));
    gluings.push((Slot::new(w, 1), Slot::new(t, 2)));
}
