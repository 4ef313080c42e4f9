//! Quiver presentations extracted from admissible partial ideal
//! triangulations.
//!
//! An admissible collection (every puncture enclosed in a self-folded
//! triangle) determines a quiver whose vertices are the arcs other than
//! folded sides, with an arrow for every pair of arc ends that are
//! immediately adjacent around a shared marked point, boundary segments
//! acting as separators.  Zero relations are the composable arrow pairs
//! that switch between the two ends of the middle arc; in the skew
//! variant the loop at each non-folded side of a self-folded triangle is
//! declared special and its square relation becomes an idempotency
//! instead.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{Complex, Corner, VertexId};
use crate::curve::{Curve, End};
use crate::overlay::Overlay;
use crate::standard::{hug_side, sector_strands};
use crate::surface::SurfaceModel;
use crate::triang::{ideal_form, PartialTaggedTriangulation};

/// Failure modes of presentation extraction and validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// Some puncture is not enclosed in a self-folded triangle.
    NotAdmissible,
    /// The validated presentation is not in skew-tiling mode.
    NotSkewTiling,
    /// A structural condition of the presentation fails; on admissible
    /// input this signals an extraction bug, never a legal outcome.
    AxiomViolation(&'static str),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NotAdmissible => {
                write!(f, "some puncture is not enclosed in a self-folded triangle")
            }
            AlgebraError::NotSkewTiling => {
                write!(f, "presentation is not in skew-tiling mode")
            }
            AlgebraError::AxiomViolation(c) => write!(f, "axiom violation: {c}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AlgebraError {}

/// Which relation scheme the presentation carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresentationMode {
    Tiling,
    SkewTiling,
}

/// An arrow between two arcs sharing the marked point `point`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub point: VertexId,
    /// The end of the source arc the arrow leaves from, as (arc, end).
    source_end: (usize, u8),
    /// The end of the target arc the arrow enters, as (arc, end).
    target_end: (usize, u8),
}

/// A quiver with length-2 zero relations extracted from an admissible
/// collection of arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverPresentation {
    /// The arcs indexing the vertices: all members except folded sides.
    pub vertices: Vec<Curve>,
    pub arrows: Vec<Arrow>,
    /// Indices into `arrows` of the loops at non-folded sides of
    /// self-folded triangles.
    pub special_loops: Vec<usize>,
    /// Zero relations, each the path traversing `[first, second]`.  In
    /// skew-tiling mode the squares of special loops are omitted here:
    /// those loops square to themselves instead of to zero.
    pub relations: Vec<[usize; 2]>,
    pub mode: PresentationMode,
}

/// A triple (Q, Sp, I): the quiver without its special loops, the set of
/// special vertices, and the plain zero relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewGentleTriple {
    pub vertices: Vec<Curve>,
    pub arrows: Vec<Arrow>,
    /// Vertex indices carrying a special loop.
    pub special: Vec<usize>,
    pub relations: Vec<[usize; 2]>,
}

/// One arc end incident to the vertex being swept.
struct GermRef {
    arc: usize,
    end: u8,
    germ: Corner,
    strand: Option<(usize, usize)>,
    hug: Option<crate::complex::Slot>,
}

/// The ends of `curves` at vertex `v`, in anticlockwise angular order.
/// For a boundary vertex the order is linear between the two boundary
/// segments; for an interior vertex it is cyclic.
fn germ_cycle(cx: &Complex, ov: &Overlay<'_>, curves: &[Curve], v: VertexId) -> (Vec<(usize, u8)>, bool) {
    let mut germs: Vec<GermRef> = Vec::new();
    for (j, c) in curves.iter().enumerate() {
        for end in 0u8..2 {
            let e = if end == 0 { c.start } else { c.end };
            let End::Corner(g) = e else { continue };
            if cx.vertex_of(g) != v {
                continue;
            }
            let (strand, hug) = if c.steps.is_empty() {
                (None, Some(hug_side(c)))
            } else {
                let k = if end == 0 { 0 } else { c.steps.len() - 1 };
                (Some((j, k)), None)
            };
            germs.push(GermRef { arc: j, end, germ: g, strand, hug });
        }
    }
    let info = cx.vertex(v);
    let cyclic = info.kind == crate::complex::VertexKind::Interior;
    let mut order: Vec<(usize, u8)> = Vec::new();
    for (ci, &cur) in info.corners.iter().enumerate() {
        for s in sector_strands(cx, ov, cur, true) {
            for g in &germs {
                if g.strand == Some(s) && g.germ == cur {
                    order.push((g.arc, g.end));
                }
            }
        }
        // Cross the fan edge towards the next corner and pick up the
        // 0-step arcs hugging it; the edge past the last corner of a
        // boundary vertex is a boundary segment carrying none.
        let f = cur.incoming_side();
        if cx.partner(f).is_none() {
            continue;
        }
        let flank = if ci + 1 < info.corners.len() {
            Some(info.corners[ci + 1])
        } else if cyclic {
            Some(info.corners[0])
        } else {
            None
        };
        for g in &germs {
            if g.hug.is_some_and(|h| cx.edge_of(h) == cx.edge_of(f))
                && (g.germ == cur || Some(g.germ) == flank)
            {
                order.push((g.arc, g.end));
            }
        }
    }
    debug_assert_eq!(order.len(), germs.len());
    (order, cyclic)
}

fn extract(
    model: &SurfaceModel,
    r: &PartialTaggedTriangulation,
    mode: PresentationMode,
) -> Result<QuiverPresentation, AlgebraError> {
    let cx = &model.complex;
    let ideal = ideal_form(model, r);
    let covered: BTreeSet<VertexId> = ideal.folded.iter().map(|f| f.puncture).collect();
    if model.punctures.iter().any(|p| !covered.contains(p)) {
        return Err(AlgebraError::NotAdmissible);
    }
    let radii: BTreeSet<&Curve> = ideal.folded.iter().map(|f| &f.radius).collect();
    let vertices: Vec<Curve> = ideal
        .curves
        .iter()
        .filter(|c| !radii.contains(c))
        .cloned()
        .collect();
    let special_arcs: BTreeSet<usize> = ideal
        .folded
        .iter()
        .filter_map(|f| vertices.iter().position(|c| *c == f.loop_arc))
        .collect();
    let ov = Overlay::new(cx, vertices.clone());
    let mut arrows: Vec<Arrow> = Vec::new();
    for v in cx.vertex_ids() {
        let (order, cyclic) = germ_cycle(cx, &ov, &vertices, v);
        let n = order.len();
        let pairs = if cyclic && n >= 2 { n } else { n.saturating_sub(1) };
        for i in 0..pairs {
            let a = order[i];
            let b = order[(i + 1) % n];
            arrows.push(Arrow {
                source: a.0,
                target: b.0,
                point: v,
                source_end: a,
                target_end: b,
            });
        }
    }
    let special_loops: Vec<usize> = arrows
        .iter()
        .enumerate()
        .filter(|(_, a)| a.source == a.target && special_arcs.contains(&a.source))
        .map(|(i, _)| i)
        .collect();
    let mut relations: Vec<[usize; 2]> = Vec::new();
    for (fi, f) in arrows.iter().enumerate() {
        for (gi, g) in arrows.iter().enumerate() {
            if f.target != g.source {
                continue;
            }
            // The composite continues around a marked point only when it
            // enters and leaves through the same end of the middle arc.
            if f.target_end != g.source_end {
                let skew_square = mode == PresentationMode::SkewTiling
                    && fi == gi
                    && special_loops.contains(&fi);
                if !skew_square {
                    relations.push([fi, gi]);
                }
            }
        }
    }
    Ok(QuiverPresentation {
        vertices,
        arrows,
        special_loops,
        relations,
        mode,
    })
}

/// The tiling presentation of an admissible collection.
pub fn tiling_presentation(
    model: &SurfaceModel,
    r: &PartialTaggedTriangulation,
) -> Result<QuiverPresentation, AlgebraError> {
    extract(model, r, PresentationMode::Tiling)
}

/// The skew-tiling presentation: same quiver, with each special loop
/// squaring to itself instead of to zero.
pub fn skew_tiling_presentation(
    model: &SurfaceModel,
    r: &PartialTaggedTriangulation,
) -> Result<QuiverPresentation, AlgebraError> {
    extract(model, r, PresentationMode::SkewTiling)
}

/// Check the three structural conditions on the presentation and return
/// the underlying triple with special loops split off.
pub fn validate_skew_gentle(p: &QuiverPresentation) -> Result<SkewGentleTriple, AlgebraError> {
    if p.mode != PresentationMode::SkewTiling {
        return Err(AlgebraError::NotSkewTiling);
    }
    // The augmented quiver is the presentation itself; the augmented
    // relation set re-adds the squares of special loops.
    let mut rels: BTreeSet<[usize; 2]> = p.relations.iter().copied().collect();
    for &l in &p.special_loops {
        rels.insert([l, l]);
    }
    let nv = p.vertices.len();
    let mut outdeg = alloc::vec![0usize; nv];
    let mut indeg = alloc::vec![0usize; nv];
    for a in &p.arrows {
        outdeg[a.source] += 1;
        indeg[a.target] += 1;
    }
    if outdeg.iter().any(|&d| d > 2) {
        return Err(AlgebraError::AxiomViolation(
            "a vertex is the start of more than two arrows",
        ));
    }
    if indeg.iter().any(|&d| d > 2) {
        return Err(AlgebraError::AxiomViolation(
            "a vertex is the terminal of more than two arrows",
        ));
    }
    for (ai, a) in p.arrows.iter().enumerate() {
        let mut succ_rel = 0;
        let mut succ_free = 0;
        let mut pred_rel = 0;
        let mut pred_free = 0;
        for (bi, b) in p.arrows.iter().enumerate() {
            if a.target == b.source {
                if rels.contains(&[ai, bi]) {
                    succ_rel += 1;
                } else {
                    succ_free += 1;
                }
            }
            if b.target == a.source {
                if rels.contains(&[bi, ai]) {
                    pred_rel += 1;
                } else {
                    pred_free += 1;
                }
            }
        }
        if succ_rel > 1 || pred_rel > 1 {
            return Err(AlgebraError::AxiomViolation(
                "an arrow has more than one relation partner",
            ));
        }
        if succ_free > 1 || pred_free > 1 {
            return Err(AlgebraError::AxiomViolation(
                "an arrow has more than one relation-free continuation",
            ));
        }
    }
    // Split the special loops off to recover the bare triple.
    let keep: Vec<usize> = (0..p.arrows.len())
        .filter(|i| !p.special_loops.contains(i))
        .collect();
    let remap = |i: usize| keep.iter().position(|&k| k == i);
    let arrows: Vec<Arrow> = keep.iter().map(|&i| p.arrows[i].clone()).collect();
    let special: Vec<usize> = p
        .special_loops
        .iter()
        .map(|&l| p.arrows[l].source)
        .collect();
    let relations: Vec<[usize; 2]> = p
        .relations
        .iter()
        .filter_map(|&[a, b]| Some([remap(a)?, remap(b)?]))
        .collect();
    Ok(SkewGentleTriple {
        vertices: p.vertices.clone(),
        arrows,
        special,
        relations,
    })
}

impl QuiverPresentation {
    /// A stable plain-text rendering of the presentation.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("vertices:");
        for i in 0..self.vertices.len() {
            s.push_str(&format!(" {i}"));
        }
        s.push('\n');
        s.push_str("arrows:");
        for (i, a) in self.arrows.iter().enumerate() {
            if i > 0 {
                s.push(';');
            }
            s.push_str(&format!(" a{i}: {} -> {}", a.source, a.target));
        }
        s.push('\n');
        s.push_str("special: {");
        for (k, &l) in self.special_loops.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            s.push_str(&format!("a{l}"));
        }
        s.push_str("}\n");
        s.push_str("relations: [");
        for (k, &[a, b]) in self.relations.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            s.push_str(&format!("a{a} a{b}"));
        }
        s.push_str("]\n");
        if self.mode == PresentationMode::SkewTiling {
            for &l in &self.special_loops {
                s.push_str(&format!("idempotent: a{l} a{l} = a{l}\n"));
            }
        }
        s
    }
}
