//! Cutting a surface along an arc, and rotation relative to a context.
//!
//! Cutting along a tagged arc is done in two chart-level stages: first the
//! arc is straightened into an edge of the chart by a sequence of diagonal
//! flips, each of which rewrites crossing words through the flipped
//! quadrilateral; then the straightened edge is simply un-glued. The
//! transport of a compatible arc to the cut surface is word-for-word once
//! the flips are applied, except for arcs sharing the cut arc's underlying
//! curve: those map to the arcs wrapping the cut locus (taggings at
//! punctures that become boundary marked points are forgotten).
//!
//! The rotation relative to a context cuts along all of its arcs in
//! sequence, applies the tagged rotation on the cut surface, and transports
//! the result back.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::arc::{intersection_number, TaggedArc};
use crate::complex::{Complex, Corner, Slot};
use crate::curve::{Curve, End, Normalized};
use crate::rotation::{advance_boundary_end, tagged_rotation};
use crate::surface::{model_from_complex, SurfaceModel};
use crate::triang::PartialTaggedTriangulation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutError {
    /// The transported arc meets the cut arc, or is the cut arc itself.
    IncompatibleArc,
    /// The cut surface would be degenerate.
    DegenerateAfterCut,
    /// The arc could not be straightened into a chart edge.
    UnsupportedConfiguration,
}

impl fmt::Display for CutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutError::IncompatibleArc => write!(f, "arc is not compatible with the cut arc"),
            CutError::DegenerateAfterCut => write!(f, "cut surface is degenerate"),
            CutError::UnsupportedConfiguration => {
                write!(f, "arc cannot be straightened into a chart edge")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CutError {}

/// A flipped quadrilateral, described on one side of the flip.
///
/// The quadrilateral has corners `c0, c1, c2, c3` in anticlockwise order and
/// `outer[k]` is the slot of side `c_k → c_{k+1}` in its own triangle. The
/// source diagonal of a transport joins `c2 → c0` (slot pair `diag`, first
/// component running `c2 → c0`); the destination diagonal joins `c1 → c3`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Quad {
    diag: (Slot, Slot),
    outer: [Slot; 4],
}

/// One diagonal flip of the chart: the quadrilateral as labeled before and
/// after. `src.diag` joins quad corners `c2 → c0`, `dst.diag` joins
/// `c1 → c3`, and `src.outer[k]` and `dst.outer[k]` are the same geometric
/// side.
#[derive(Debug, Clone, PartialEq, Eq)]
struct FlipStep {
    src: Quad,
    dst: Quad,
}

/// Flip the interior, non-folded edge `e` of the chart.
fn flip_edge(cx: &Complex, e: Slot) -> Option<(Complex, FlipStep)> {
    let ep = cx.partner(e)?;
    let (t, i) = (e.tri, e.side);
    let (tp, j) = (ep.tri, ep.side);
    if t == tp {
        return None;
    }
    let src = Quad {
        diag: (e, ep),
        outer: [
            Slot::new(t, (i + 1) % 3),
            Slot::new(t, (i + 2) % 3),
            Slot::new(tp, (j + 1) % 3),
            Slot::new(tp, (j + 2) % 3),
        ],
    };
    // New triangles reuse the indices: `t` gets corners (c3, c0, c1) so its
    // side 2 is the new diagonal c1 → c3, `tp` gets (c1, c2, c3).
    let dst = Quad {
        diag: (Slot::new(t, 2), Slot::new(tp, 2)),
        outer: [
            Slot::new(t, 1),
            Slot::new(tp, 0),
            Slot::new(tp, 1),
            Slot::new(t, 0),
        ],
    };
    let remap = |s: Slot| -> Slot {
        for k in 0..4 {
            if s == src.outer[k] {
                return dst.outer[k];
            }
        }
        s
    };
    let mut gluings: Vec<(Slot, Slot)> = Vec::new();
    for (a, b) in cx.gluings() {
        if a == e || b == e {
            continue;
        }
        gluings.push((remap(a), remap(b)));
    }
    gluings.push((dst.diag.0, dst.diag.1));
    let new_cx = Complex::new(cx.n_tris(), &gluings).ok()?;
    Some((new_cx, FlipStep { src, dst }))
}

/// One end or side of a passage through the flipped quadrilateral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PObj {
    /// Crossing of outer side `k`.
    Side(u8),
    /// Curve end at quad corner `k`.
    CornerEnd(u8),
    /// Curve end on the boundary at outer side `k`.
    BoundaryEnd(u8),
}

/// Which side of the destination diagonal (`c1 → c3`) an object lies on:
/// `true` for the half containing `c2`.
fn far_zone(o: PObj) -> Option<bool> {
    match o {
        PObj::Side(k) | PObj::BoundaryEnd(k) => Some(k == 1 || k == 2),
        PObj::CornerEnd(0) => Some(false),
        PObj::CornerEnd(2) => Some(true),
        PObj::CornerEnd(_) => None,
    }
}

/// Map every corner of the quadrilateral's two triangles to its quad-corner
/// index, in the source labeling.
fn src_corner_positions(src: &Quad) -> Vec<(Corner, u8)> {
    let mut out = Vec::new();
    for k in 0..4u8 {
        let s = src.outer[k as usize];
        out.push((Corner::new(s.tri, s.side), k));
        out.push((Corner::new(s.tri, (s.side + 1) % 3), (k + 1) % 4));
    }
    let (d0, d1) = src.diag;
    out.push((Corner::new(d0.tri, d0.side), 2));
    out.push((Corner::new(d0.tri, (d0.side + 1) % 3), 0));
    out.push((Corner::new(d1.tri, d1.side), 0));
    out.push((Corner::new(d1.tri, (d1.side + 1) % 3), 2));
    out
}

/// The destination corner for quad corner `pos`. Corners `c1` and `c3` lie
/// on the destination diagonal and have a germ on each side of it;
/// `mate_far` picks the one facing the other end of the passage.
fn dst_corner(dst: &Quad, pos: u8, mate_far: bool) -> Corner {
    match (pos, mate_far) {
        (0, _) => Corner::new(dst.outer[0].tri, dst.outer[0].side),
        (2, _) => Corner::new(dst.outer[2].tri, dst.outer[2].side),
        (1, true) => Corner::new(dst.outer[1].tri, dst.outer[1].side),
        (1, false) => Corner::new(dst.outer[0].tri, (dst.outer[0].side + 1) % 3),
        (3, true) => Corner::new(dst.outer[2].tri, (dst.outer[2].side + 1) % 3),
        (3, false) => Corner::new(dst.outer[3].tri, dst.outer[3].side),
        _ => unreachable!("quad corner index"),
    }
}

/// Rewrite one passage through the quadrilateral: returns the replacement
/// interior steps and, for passages containing a curve end, the new end.
fn emit_passage(
    dst: &Quad,
    entry: PObj,
    exit: PObj,
) -> (Option<End>, Vec<Slot>, Option<End>) {
    // A passage between the two diagonal-end corners is the diagonal edge.
    if let (PObj::CornerEnd(a), PObj::CornerEnd(b)) = (entry, exit) {
        if (a, b) == (1, 3) || (a, b) == (3, 1) {
            let d = dst.diag.0;
            let (s, e) = (
                Corner::new(d.tri, d.side),
                Corner::new(d.tri, (d.side + 1) % 3),
            );
            return if a == 1 {
                (Some(End::Corner(s)), Vec::new(), Some(End::Corner(e)))
            } else {
                (Some(End::Corner(e)), Vec::new(), Some(End::Corner(s)))
            };
        }
    }
    let zin = far_zone(entry);
    let zout = far_zone(exit);
    let cross = matches!((zin, zout), (Some(a), Some(b)) if a != b);
    let mate_far_for = |other: Option<bool>| other.unwrap_or(false);
    let entry_tri = match entry {
        PObj::Side(k) | PObj::BoundaryEnd(k) => dst.outer[k as usize].tri,
        PObj::CornerEnd(p) => dst_corner(dst, p, mate_far_for(zout)).tri,
    };
    let mut steps = Vec::new();
    if cross {
        let d = if dst.diag.0.tri == entry_tri {
            dst.diag.0
        } else {
            dst.diag.1
        };
        debug_assert_eq!(d.tri, entry_tri);
        steps.push(d);
    }
    let start = match entry {
        PObj::Side(_) => None,
        PObj::CornerEnd(p) => Some(End::Corner(dst_corner(dst, p, mate_far_for(zout)))),
        PObj::BoundaryEnd(k) => Some(End::Boundary(dst.outer[k as usize])),
    };
    let end = match exit {
        PObj::Side(k) => {
            steps.push(dst.outer[k as usize]);
            None
        }
        PObj::CornerEnd(p) => Some(End::Corner(dst_corner(dst, p, mate_far_for(zin)))),
        PObj::BoundaryEnd(k) => Some(End::Boundary(dst.outer[k as usize])),
    };
    (start, steps, end)
}

/// Rewrite a curve of the source chart in the destination chart of one
/// flip. The result is raw; callers normalize it in the destination chart.
fn transport_quad(src_cx: &Complex, step: &FlipStep, c: &Curve) -> Curve {
    let (src, dst) = (&step.src, &step.dst);
    let qt = src.diag.0.tri;
    let qtp = src.diag.1.tri;
    let in_quad = |tri: u32| tri == qt || tri == qtp;
    let corner_pos = src_corner_positions(src);
    let pos_of = |c: Corner| -> u8 {
        corner_pos
            .iter()
            .find(|(x, _)| *x == c)
            .map(|&(_, k)| k)
            .expect("corner of the flipped quadrilateral")
    };
    let side_pos = |s: Slot| -> u8 {
        src.outer
            .iter()
            .position(|&x| x == s)
            .expect("outer side of the flipped quadrilateral") as u8
    };
    let end_obj = |e: End| -> PObj {
        match e {
            End::Corner(c) => PObj::CornerEnd(pos_of(c)),
            End::Boundary(s) => PObj::BoundaryEnd(side_pos(s)),
        }
    };

    let mut out_start = c.start;
    let mut out_steps: Vec<Slot> = Vec::new();
    let mut out_end = c.end;
    let start_tri = match c.start {
        End::Corner(x) => x.tri,
        End::Boundary(s) => s.tri,
    };
    let mut cur = start_tri;
    let mut pending: Option<PObj> = if in_quad(start_tri) {
        Some(end_obj(c.start))
    } else {
        None
    };
    let finalize = |entry: PObj, exit: PObj, out_steps: &mut Vec<Slot>| -> (Option<End>, Option<End>) {
        let (s, mid, e) = emit_passage(dst, entry, exit);
        out_steps.extend(mid);
        (s, e)
    };
    for &s in &c.steps {
        debug_assert_eq!(s.tri, cur);
        if let Some(entry) = pending {
            if s == src.diag.0 || s == src.diag.1 {
                // Internal diagonal crossing: handled by the passage.
                cur = src_cx.partner(s).expect("interior diagonal").tri;
                continue;
            }
            let k = side_pos(s);
            let (st, _) = finalize(entry, PObj::Side(k), &mut out_steps);
            if let Some(st) = st {
                out_start = st;
            }
            pending = None;
            cur = src_cx.partner(s).expect("crossed side is interior").tri;
            if in_quad(cur) {
                let back = src_cx.partner(s).unwrap();
                pending = Some(PObj::Side(side_pos(back)));
            }
        } else {
            out_steps.push(s);
            cur = src_cx.partner(s).expect("crossed side is interior").tri;
            if in_quad(cur) {
                let back = src_cx.partner(s).unwrap();
                pending = Some(PObj::Side(side_pos(back)));
            }
        }
    }
    if let Some(entry) = pending {
        let (st, en) = finalize(entry, end_obj(c.end), &mut out_steps);
        if let Some(st) = st {
            out_start = st;
        }
        out_end = en.expect("passage ending at a curve end");
    }
    Curve::new(out_start, out_steps, out_end)
}

/// The reversed transport data of a flip: the same quadrilateral read with
/// its corners rotated by one, so the destination diagonal becomes the
/// source one.
fn reversed_step(step: &FlipStep) -> FlipStep {
    let rot = |q: &Quad| [q.outer[1], q.outer[2], q.outer[3], q.outer[0]];
    FlipStep {
        src: Quad {
            diag: (step.dst.diag.1, step.dst.diag.0),
            outer: rot(&step.dst),
        },
        dst: Quad {
            diag: step.src.diag,
            outer: rot(&step.src),
        },
    }
}

fn normalized_curve(cx: &Complex, c: &Curve) -> Curve {
    match c.normalize_oriented(cx).expect("transported curve is valid") {
        Normalized::Curve(r) => r,
        Normalized::Null => panic!("transported arc became null-homotopic"),
    }
}

/// Straighten `eta` into a chart edge by diagonal flips; best-first search
/// on the crossing number, deterministic by the flip sequence.
fn straighten(
    cx0: &Complex,
    eta: &Curve,
) -> Result<(Vec<Complex>, Vec<FlipStep>, Curve), CutError> {
    type Key = (Vec<(Slot, Slot)>, Curve);
    let key = |cx: &Complex, c: &Curve| -> Key { (cx.gluings(), c.clone()) };
    struct State {
        charts: Vec<Complex>,
        flips: Vec<FlipStep>,
        curve: Curve,
        picks: Vec<Slot>,
    }
    let start = State {
        charts: alloc::vec![cx0.clone()],
        flips: Vec::new(),
        curve: normalized_curve(cx0, eta),
        picks: Vec::new(),
    };
    let mut frontier: Vec<State> = alloc::vec![start];
    let mut seen: BTreeSet<Key> = BTreeSet::new();
    let mut budget = 20_000usize;
    while let Some(best) = frontier
        .iter()
        .enumerate()
        .min_by_key(|(_, s)| (s.curve.steps.len(), s.picks.len(), s.picks.clone()))
        .map(|(i, _)| i)
    {
        let st = frontier.swap_remove(best);
        let cx = st.charts.last().unwrap();
        if st.curve.steps.is_empty() {
            return Ok((st.charts, st.flips, st.curve));
        }
        if !seen.insert(key(cx, &st.curve)) {
            continue;
        }
        let mut edges: Vec<Slot> = st.curve.crossed_edges(cx);
        edges.sort_unstable();
        edges.dedup();
        for e in edges {
            budget = budget.checked_sub(1).ok_or(CutError::UnsupportedConfiguration)?;
            let Some((new_cx, step)) = flip_edge(cx, e) else {
                continue;
            };
            let moved = normalized_curve(&new_cx, &transport_quad(cx, &step, &st.curve));
            if seen.contains(&key(&new_cx, &moved)) {
                continue;
            }
            let mut charts = st.charts.clone();
            charts.push(new_cx);
            let mut flips = st.flips.clone();
            flips.push(step);
            let mut picks = st.picks.clone();
            picks.push(e);
            frontier.push(State {
                charts,
                flips,
                curve: moved,
                picks,
            });
        }
    }
    Err(CutError::UnsupportedConfiguration)
}

/// The side a 0-step corner-to-corner curve runs along.
fn hug_side(c: &Curve) -> Slot {
    let (End::Corner(a), End::Corner(b)) = (c.start, c.end) else {
        panic!("0-step curve with a boundary end");
    };
    debug_assert!(a.tri == b.tri && a.corner != b.corner);
    if (a.corner + 1) % 3 == b.corner {
        Slot::new(a.tri, a.corner)
    } else {
        Slot::new(b.tri, b.corner)
    }
}

/// The result of cutting a surface along one tagged arc.
pub struct CutResult {
    /// The cut surface.
    pub surface: SurfaceModel,
    eta: TaggedArc,
    original: SurfaceModel,
    charts: Vec<Complex>,
    flips: Vec<FlipStep>,
    /// The straightened cut arc in the last (still glued) chart, oriented
    /// like `eta`.
    final_eta: Curve,
    /// The two banks of the cut locus in the cut chart.
    banks: (Slot, Slot),
    /// Per end of `eta`: the arc on the cut surface that the arc with the
    /// tag flipped at that end maps to, when that arc exists.
    special: [Option<(TaggedArc, TaggedArc)>; 2],
}

/// Cut the surface along the tagged arc `eta`.
pub fn cut(model: &SurfaceModel, eta: &TaggedArc) -> Result<CutResult, CutError> {
    let (charts, flips, final_eta) = straighten(&model.complex, &eta.curve)?;
    let glued = charts.last().unwrap();
    let bank1 = hug_side(&final_eta);
    let bank2 = glued.partner(bank1).expect("cut arc is interior");
    let gluings: Vec<(Slot, Slot)> = glued
        .gluings()
        .into_iter()
        .filter(|&(a, _)| a != bank1.min(bank2))
        .collect();
    let cut_cx =
        Complex::new(glued.n_tris(), &gluings).map_err(|_| CutError::DegenerateAfterCut)?;
    let surface = model_from_complex(cut_cx);
    let mut res = CutResult {
        surface,
        eta: eta.clone(),
        original: model.clone(),
        charts,
        flips,
        final_eta,
        banks: (bank1, bank2),
        special: [None, None],
    };
    for k in 0..2 {
        res.special[k] = res.special_pair(k);
    }
    Ok(res)
}

impl CutResult {
    /// The preimage/image pair for the arc with `eta`'s underlying curve
    /// and the tag flipped at end `k`, when that arc is admissible.
    fn special_pair(&self, k: usize) -> Option<(TaggedArc, TaggedArc)> {
        let mut tags = self.eta.tags;
        tags[k] = -tags[k];
        let pre = TaggedArc::normalize(&self.original, &self.eta.curve, tags).ok()?;
        if pre == self.eta || intersection_number(&self.original, &pre, &self.eta) != 0 {
            return None;
        }
        // The image wraps the boundary image of the flipped end: move that
        // end of a bank edge one marked point along the boundary, across
        // the other bank.
        let cx = &self.surface.complex;
        let mut curve = self.final_eta.clone();
        let End::Corner(pc) = (if k == 0 { curve.start } else { curve.end }) else {
            panic!("arc end is a corner");
        };
        let m = cx.vertex_of(pc);
        let this_bank = hug_side(&curve);
        let other_bank = if this_bank == self.banks.0 {
            self.banks.1
        } else {
            self.banks.0
        };
        let dir = if cx.outgoing_boundary_slot(m) == Some(other_bank) {
            1
        } else {
            debug_assert_eq!(cx.incoming_boundary_slot(m), Some(other_bank));
            -1
        };
        advance_boundary_end(cx, &mut curve, k, dir);
        let img = TaggedArc::normalize(&self.surface, &curve, [1, 1])
            .expect("wrapping arc of the cut locus is admissible");
        Some((pre, img))
    }

    /// Transport a compatible tagged arc to the cut surface.
    pub fn forward(&self, gamma: &TaggedArc) -> Result<TaggedArc, CutError> {
        if *gamma == self.eta || intersection_number(&self.original, gamma, &self.eta) != 0 {
            return Err(CutError::IncompatibleArc);
        }
        if gamma.curve == self.eta.curve {
            for sp in self.special.iter().flatten() {
                if sp.0 == *gamma {
                    return Ok(sp.1.clone());
                }
            }
            return Err(CutError::IncompatibleArc);
        }
        let mut c = gamma.curve.clone();
        for (i, step) in self.flips.iter().enumerate() {
            c = normalized_curve(&self.charts[i + 1], &transport_quad(&self.charts[i], step, &c));
        }
        debug_assert!(!c
            .crossed_edges(self.charts.last().unwrap())
            .contains(&self.banks.0.min(self.banks.1)));
        TaggedArc::normalize(&self.surface, &c, gamma.tags)
            .map_err(|_| CutError::IncompatibleArc)
    }

    /// Transport a tagged arc of the cut surface back.
    pub fn backward(&self, gamma: &TaggedArc) -> Result<TaggedArc, CutError> {
        for (pre, img) in self.special.iter().flatten() {
            if img == gamma {
                return Ok(pre.clone());
            }
        }
        let glued = self.charts.last().unwrap();
        let mut c = normalized_curve(glued, &gamma.curve);
        for (i, step) in self.flips.iter().enumerate().rev() {
            c = normalized_curve(
                &self.charts[i],
                &transport_quad(&self.charts[i + 1], &reversed_step(step), &c),
            );
        }
        // Taggings forgotten at restored punctures are recovered by
        // matching the forward image.
        for ta in [1i8, -1] {
            for tb in [1i8, -1] {
                let Ok(cand) = TaggedArc::normalize(&self.original, &c, [ta, tb]) else {
                    continue;
                };
                if self.forward(&cand) == Ok(gamma.clone()) {
                    return Ok(cand);
                }
            }
        }
        Err(CutError::IncompatibleArc)
    }
}

/// The tagged rotation relative to a context: cut along all of its arcs,
/// rotate on the cut surface, transport back.
pub fn relative_rotation(
    model: &SurfaceModel,
    l: &TaggedArc,
    n: &PartialTaggedTriangulation,
    direction: i8,
) -> Result<TaggedArc, CutError> {
    if n.arcs.iter().any(|h| h == l)
        || n.arcs
            .iter()
            .any(|h| intersection_number(model, l, h) != 0)
    {
        return Err(CutError::IncompatibleArc);
    }
    let mut cuts: Vec<CutResult> = Vec::new();
    let mut cur_model = model.clone();
    let mut rest: Vec<TaggedArc> = n.arcs.clone();
    let mut cur_l = l.clone();
    while let Some(eta) = rest.first().cloned() {
        rest.remove(0);
        let c = cut(&cur_model, &eta)?;
        for h in &mut rest {
            *h = c.forward(h)?;
        }
        cur_l = c.forward(&cur_l)?;
        cur_model = c.surface.clone();
        cuts.push(c);
    }
    let mut back = tagged_rotation(&cur_model, &cur_l, direction);
    for c in cuts.iter().rev() {
        back = c.backward(&back)?;
    }
    Ok(back)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_surface, SurfaceSpec};

    fn arc(m: &SurfaceModel, c: Curve, tags: [i8; 2]) -> TaggedArc {
        TaggedArc::normalize(m, &c, tags).unwrap()
    }

    fn ptt(m: &SurfaceModel, arcs: Vec<TaggedArc>) -> PartialTaggedTriangulation {
        PartialTaggedTriangulation::new(m, arcs).unwrap()
    }

    fn hexagon() -> SurfaceModel {
        build_surface(&SurfaceSpec::new(0, alloc::vec![6], 0)).unwrap()
    }

    fn hexagon_diag(m: &SurfaceModel, which: usize) -> TaggedArc {
        // Fan diagonals v0v2, v0v3, v0v4.
        let e = m.chart_arcs()[which];
        arc(
            m,
            Curve::chart_edge(
                Corner::new(e.tri, e.side),
                Corner::new(e.tri, (e.side + 1) % 3),
            ),
            [1, 1],
        )
    }

    #[test]
    fn flip_transport_roundtrip() {
        let m = hexagon();
        let cx = &m.complex;
        let v1v3 = Curve::new(
            End::Corner(Corner::new(0, 1)),
            alloc::vec![Slot::new(0, 2)],
            End::Corner(Corner::new(1, 2)),
        );
        let v1v5 = Curve::new(
            End::Corner(Corner::new(0, 1)),
            alloc::vec![Slot::new(0, 2), Slot::new(1, 2), Slot::new(2, 2)],
            End::Corner(Corner::new(3, 2)),
        );
        for e in cx.interior_edges() {
            let (new_cx, step) = flip_edge(cx, e).unwrap();
            for c in [&v1v3, &v1v5] {
                let over = normalized_curve(&new_cx, &transport_quad(cx, &step, c));
                let back = normalized_curve(
                    cx,
                    &transport_quad(&new_cx, &reversed_step(&step), &over),
                );
                assert_eq!(back, normalized_curve(cx, c), "flip of {e} round trip");
            }
        }
    }

    #[test]
    fn cut_hexagon_along_first_diagonal() {
        let m = hexagon();
        let d1 = hexagon_diag(&m, 0);
        let d2 = hexagon_diag(&m, 1);
        let c = cut(&m, &d1).unwrap();
        // A triangle piece and a pentagon piece.
        assert_eq!(c.surface.complex.components().len(), 2);
        assert_eq!(c.surface.punctures.len(), 0);
        let mut walk_lens: Vec<usize> =
            c.surface.boundary_segments.iter().map(|w| w.len()).collect();
        walk_lens.sort_unstable();
        assert_eq!(walk_lens, alloc::vec![3, 5]);
        // Transport of a disjoint arc round-trips.
        let img = c.forward(&d2).unwrap();
        assert_eq!(c.backward(&img).unwrap(), d2);
        // A crossing arc is rejected.
        let v1v3 = arc(
            &m,
            Curve::new(
                End::Corner(Corner::new(0, 1)),
                alloc::vec![Slot::new(0, 2)],
                End::Corner(Corner::new(1, 2)),
            ),
            [1, 1],
        );
        assert_eq!(c.forward(&v1v3), Err(CutError::IncompatibleArc));
        assert_eq!(c.forward(&d1), Err(CutError::IncompatibleArc));
    }

    #[test]
    fn relative_rotation_quadrilateral() {
        // Cutting the hexagon along v0v3 leaves two quadrilaterals; inside
        // one of them the relative rotation swaps the diagonals.
        let m = hexagon();
        let d02 = hexagon_diag(&m, 0);
        let d03 = hexagon_diag(&m, 1);
        let n = ptt(&m, alloc::vec![d03.clone()]);
        let v1v3 = arc(
            &m,
            Curve::new(
                End::Corner(Corner::new(0, 1)),
                alloc::vec![Slot::new(0, 2)],
                End::Corner(Corner::new(1, 2)),
            ),
            [1, 1],
        );
        let plus = relative_rotation(&m, &d02, &n, 1).unwrap();
        let minus = relative_rotation(&m, &d02, &n, -1).unwrap();
        assert_eq!(plus, v1v3);
        assert_eq!(minus, v1v3);
        assert_eq!(relative_rotation(&m, &plus, &n, -1).unwrap(), d02);
    }

    #[test]
    fn relative_rotation_empty_context_is_rotation() {
        let m = hexagon();
        let n = ptt(&m, alloc::vec![]);
        for which in 0..3 {
            let d = hexagon_diag(&m, which);
            for dir in [1, -1] {
                assert_eq!(
                    relative_rotation(&m, &d, &n, dir).unwrap(),
                    tagged_rotation(&m, &d, dir)
                );
            }
        }
    }

    #[test]
    fn cut_punctured_square_along_notched_radius() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![4], 1)).unwrap();
        let rad = Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2));
        let plus = arc(&m, rad.clone(), [1, 1]);
        let minus = arc(&m, rad, [1, -1]);
        let c = cut(&m, &minus).unwrap();
        // One disc, six boundary marked points, no punctures left.
        assert_eq!(c.surface.complex.components().len(), 1);
        assert_eq!(c.surface.punctures.len(), 0);
        assert_eq!(c.surface.boundary_segments.len(), 1);
        assert_eq!(c.surface.boundary_segments[0].len(), 6);
        // The oppositely tagged radius maps to the wrapping arc and back.
        let img = c.forward(&plus).unwrap();
        assert_ne!(img.curve.steps.len(), 0);
        assert_eq!(c.backward(&img).unwrap(), plus);
        // Other arcs round-trip too.
        let left = arc(
            &m,
            Curve::new(
                End::Corner(Corner::new(0, 0)),
                alloc::vec![Slot::new(0, 1)],
                End::Corner(Corner::new(1, 1)),
            ),
            [1, 1],
        );
        let img_l = c.forward(&left).unwrap();
        assert_eq!(c.backward(&img_l).unwrap(), left);
    }

    #[test]
    fn relative_rotation_inverse_on_punctured_square() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![4], 1)).unwrap();
        let rad = Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2));
        let minus = arc(&m, rad.clone(), [1, -1]);
        let plus = arc(&m, rad, [1, 1]);
        let n = ptt(&m, alloc::vec![minus]);
        for d in [
            plus.clone(),
            tagged_rotation(&m, &plus, 1),
            tagged_rotation(&m, &plus, -1),
        ] {
            if n.arcs.iter().any(|h| intersection_number(&m, &d, h) != 0) {
                continue;
            }
            let r = relative_rotation(&m, &d, &n, 1).unwrap();
            assert_eq!(relative_rotation(&m, &r, &n, -1).unwrap(), d);
        }
    }
}
