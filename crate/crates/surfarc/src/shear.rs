//! Shear coordinate vectors of laminates with respect to partial tagged
//! triangulations.
//!
//! The laminate is first adjusted to the context: spiral directions flip at
//! punctures whose tag signature is negative. It is then overlaid with the
//! ideal form of the context. Each crossing with a member curve γ looks at
//! the two adjacent laminate segments: every segment must cut out an angle
//! of the complement (certified by contracting the segment against rays of
//! the bounding curves), and the crossing contributes 0 when both adjacent
//! angles sit at the same end of γ, otherwise ±1 depending on which side of
//! γ carries the angle at its head. Entries for the folded side of a
//! self-folded triangle are computed on the enclosing loop instead, with
//! the spirals at the enclosed puncture reversed.

use alloc::vec::Vec;

use crate::complex::{Corner, Slot};
use crate::curve::{Curve, End, Normalized};
use crate::laminate::Laminate;
use crate::overlay::{Overlay, PortPos};
use crate::surface::SurfaceModel;
use crate::triang::{ideal_form, PartialTaggedTriangulation};

/// Number of full turns to wind each spiral before overlaying; one turn
/// past the aperiodic head is enough, the rest only adds zero
/// contributions.
const TURNS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShearError {
    /// Some laminate segment does not cut out an angle of the context.
    DoesNotShear,
}

/// A shear coordinate vector; entries are aligned with the (sorted) member
/// arcs of the context triangulation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShearVector {
    pub entries: Vec<i64>,
}

/// Flip the laminate's spirals at every puncture where the context's tag
/// signature is negative.
pub fn retag_laminate(
    model: &SurfaceModel,
    lam: &Laminate,
    r: &PartialTaggedTriangulation,
) -> Laminate {
    let mut out = lam.clone();
    for (&p, &k) in &r.kappa {
        if k < 0 {
            out = out.spin_flipped_at(&model.complex, p);
        }
    }
    out
}

/// One crossing of the laminate with a context curve, ordered along the
/// laminate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Event {
    /// Segment of the laminate (itinerary position in the overlay).
    pub(crate) lseg: usize,
    /// Index of the context curve (0-based into the curve list).
    pub(crate) curve: usize,
    /// Segment of the context curve at the crossing.
    pub(crate) cseg: usize,
}

/// Which end of a context curve a ray starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sel {
    Start,
    End,
}

/// Is `p` strictly inside the cyclic open interval (lo, hi)?
pub(crate) fn between_cyc(p: PortPos, lo: PortPos, hi: PortPos) -> bool {
    if lo < hi {
        lo < p && p < hi
    } else {
        p > lo || p < hi
    }
}

pub(crate) struct Engine<'m> {
    model: &'m SurfaceModel,
    lam: Curve,
    curves: Vec<Curve>,
}

impl<'m> Engine<'m> {
    fn new(model: &'m SurfaceModel, lam: &Laminate, curves: &[Curve]) -> Engine<'m> {
        Engine::for_curve(model, lam.materialize(&model.complex, TURNS), curves)
    }

    /// An engine over a plain taut curve instead of a laminate; used to
    /// split arcs into their segments against a context.
    pub(crate) fn for_curve(model: &'m SurfaceModel, c: Curve, curves: &[Curve]) -> Engine<'m> {
        Engine {
            model,
            lam: c,
            curves: curves.to_vec(),
        }
    }

    pub(crate) fn overlay(&self) -> Overlay<'_> {
        let mut all = Vec::with_capacity(self.curves.len() + 1);
        all.push(self.lam.clone());
        all.extend(self.curves.iter().cloned());
        Overlay::new(&self.model.complex, all)
    }

    /// All crossings of the laminate with context curves, ordered along the
    /// laminate's stored direction.
    pub(crate) fn events(&self, ov: &Overlay<'_>) -> Vec<Event> {
        let mut raw: Vec<Event> = Vec::new();
        for i in 0..self.curves.len() {
            for (lseg, cseg) in ov.crossing_pairs(0, i + 1) {
                raw.push(Event {
                    lseg,
                    curve: i,
                    cseg,
                });
            }
        }
        // Order along the laminate: by itinerary position, and within one
        // triangle visit by the crossing chord's near port (anticlockwise
        // from the laminate chord's entry), breaking ties at a shared
        // corner fan by the far port (clockwise from the entry). Context
        // curves are pairwise non-crossing, so this is the crossing order
        // along the chord.
        raw.sort_by_key(|e| {
            let lch = ov.chord(0, e.lseg);
            let cch = ov.chord(e.curve + 1, e.cseg);
            let (near, far) = if between_cyc(cch.a, lch.a, lch.b) {
                (cch.a, cch.b)
            } else {
                debug_assert!(between_cyc(cch.b, lch.a, lch.b));
                (cch.b, cch.a)
            };
            (
                e.lseg,
                (near <= lch.a, near),
                core::cmp::Reverse((far <= lch.a, far)),
            )
        });
        raw
    }

    /// Ray of context curve `i` from the end `sel` to its crossing segment
    /// `seg`, as (start end, steps ending in that segment's triangle).
    pub(crate) fn ray(&self, i: usize, sel: Sel, seg: usize) -> (End, Vec<Slot>) {
        let c = &self.curves[i];
        match sel {
            Sel::Start => (c.start, c.steps[..seg].to_vec()),
            Sel::End => {
                let rev = c.reversed(&self.model.complex);
                let m = c.steps.len();
                (rev.start, rev.steps[..m - seg].to_vec())
            }
        }
    }

    /// Null test: does the laminate segment between positions `l1 ≤ l2`
    /// contract onto the corner between the two given rays?
    fn angle_null(&self, e1: (usize, Sel, usize), l1: usize, l2: usize, e2: (usize, Sel, usize)) -> bool {
        let cx = &self.model.complex;
        let (start, mut steps) = self.ray(e1.0, e1.1, e1.2);
        let End::Corner(sc) = start else { return false };
        let (end2, back) = self.ray(e2.0, e2.1, e2.2);
        let End::Corner(ec) = end2 else { return false };
        if cx.vertex_of(sc) != cx.vertex_of(ec) {
            return false;
        }
        steps.extend_from_slice(&self.lam.steps[l1..l2]);
        // The second ray is traversed backwards (crossing back to its end).
        for &s in back.iter().rev() {
            steps.push(cx.partner(s).expect("interior step"));
        }
        let lp = Curve::new(start, steps, end2);
        matches!(
            lp.normalize_oriented(cx).expect("valid angle probe"),
            Normalized::Null
        )
    }

    /// Angle certificates of the laminate segment between two consecutive
    /// events: pairs (end of the first curve, end of the second curve).
    pub(crate) fn mid_certs(&self, e1: Event, e2: Event) -> Vec<(Sel, Sel)> {
        let mut out = Vec::new();
        for s1 in [Sel::Start, Sel::End] {
            for s2 in [Sel::Start, Sel::End] {
                if self.angle_null(
                    (e1.curve, s1, e1.cseg),
                    e1.lseg,
                    e2.lseg,
                    (e2.curve, s2, e2.cseg),
                ) {
                    out.push((s1, s2));
                }
            }
        }
        out
    }

    /// Angle certificates of the laminate piece between one of its own ends
    /// (`head` = the stored start) and the adjacent event: the certified
    /// ends of the event's curve.
    fn end_certs(&self, head: bool, e: Event) -> Vec<Sel> {
        let cx = &self.model.complex;
        let mut out = Vec::new();
        for sel in [Sel::Start, Sel::End] {
            let (aend, ray) = self.ray(e.curve, sel, e.cseg);
            let End::Corner(_) = aend else { continue };
            let ok = if head {
                // Walk from the laminate start forward to the crossing,
                // then back along the ray to the curve's end.
                let mut steps: Vec<Slot> = self.lam.steps[..e.lseg].to_vec();
                for &s in ray.iter().rev() {
                    steps.push(cx.partner(s).expect("interior step"));
                }
                self.closes(Curve::new(self.lam.start, steps, aend))
            } else {
                // Walk from the curve's end along the ray to the crossing,
                // then forward to the laminate end.
                let mut steps = ray;
                steps.extend_from_slice(&self.lam.steps[e.lseg..]);
                self.closes(Curve::new(aend, steps, self.lam.end))
            };
            if ok {
                out.push(sel);
            }
        }
        out
    }

    /// Does the probe contract onto the corner `ac`, against either the
    /// boundary segment carrying the laminate end or the pinned spiral
    /// germ?
    fn closes(&self, probe: Curve) -> bool {
        let cx = &self.model.complex;
        let Normalized::Curve(r) = probe.normalize_oriented(cx).expect("valid angle probe") else {
            // Corner-to-corner null: the spiral germ sits at the same
            // vertex as the certified curve end.
            return true;
        };
        if !r.steps.is_empty() {
            return false;
        }
        // Boundary-ended probe: an angle against the boundary segment needs
        // the corner to be one of that segment's endpoints.
        let (c, s) = match (r.start, r.end) {
            (End::Boundary(s), End::Corner(c)) | (End::Corner(c), End::Boundary(s)) => (c, s),
            _ => return false,
        };
        c.tri == s.tri && (c.corner == s.side || c.corner == (s.side + 1) % 3)
    }

    /// Per-crossing contributions on the target curve, along the laminate.
    fn contributions(&self, target: usize) -> Result<Vec<i64>, ShearError> {
        let ov = self.overlay();
        let events = self.events(&ov);
        let mut out = Vec::new();
        for (k, e) in events.iter().enumerate() {
            if e.curve != target {
                continue;
            }
            let mut before = if k == 0 {
                self.end_certs(true, *e)
            } else {
                self.mid_certs(events[k - 1], *e)
                    .into_iter()
                    .map(|(_, s2)| s2)
                    .collect()
            };
            let mut after = if k + 1 == events.len() {
                self.end_certs(false, *e)
            } else {
                self.mid_certs(*e, events[k + 1])
                    .into_iter()
                    .map(|(s1, _)| s1)
                    .collect()
            };
            before.dedup();
            after.dedup();
            if before.is_empty() || after.is_empty() {
                return Err(ShearError::DoesNotShear);
            }
            assert!(
                before.len() == 1 && after.len() == 1,
                "ambiguous angle certificate"
            );
            let (b, a) = (before[0], after[0]);
            if b == a {
                out.push(0);
                continue;
            }
            // Side of the before-portion relative to the target's stored
            // direction: ports strictly between the exit and the entry of
            // the target chord (anticlockwise) lie on its left.
            let lch = ov.chord(0, e.lseg);
            let gch = ov.chord(target + 1, e.cseg);
            let before_left = between_cyc(lch.a, gch.b, gch.a);
            // The angle at the head (stored end) contributes +1 on the
            // left, -1 on the right; the sign is fixed by the global
            // orientation convention.
            let head_left = if b == Sel::End {
                before_left
            } else {
                !before_left
            };
            out.push(if head_left { 1 } else { -1 });
        }
        Ok(out)
    }

    /// A laminate disjoint from the context is a single segment: it must
    /// itself cut out an angle, between the two boundary segments meeting
    /// at a vertex the laminate hugs. A spiralling end leaves no such
    /// vertex, since every arc at its puncture would be crossed.
    fn cuts_single_angle(&self) -> bool {
        let cx = &self.model.complex;
        let (End::Boundary(s1), End::Boundary(s2)) = (self.lam.start, self.lam.end) else {
            return false;
        };
        for i in 0..2 {
            for j in 0..2 {
                let c1 = Corner::new(s1.tri, (s1.side + i) % 3);
                let c2 = Corner::new(s2.tri, (s2.side + j) % 3);
                if cx.vertex_of(c1) != cx.vertex_of(c2) {
                    continue;
                }
                let probe = Curve::new(End::Corner(c1), self.lam.steps.clone(), End::Corner(c2));
                if matches!(
                    probe.normalize_oriented(cx).expect("valid angle probe"),
                    Normalized::Null
                ) {
                    return true;
                }
            }
        }
        false
    }

    /// Do all laminate segments cut out angles of the context?
    fn shears(&self) -> bool {
        let ov = self.overlay();
        let events = self.events(&ov);
        if events.is_empty() {
            return self.cuts_single_angle();
        }
        if self.end_certs(true, events[0]).is_empty() {
            return false;
        }
        if self.end_certs(false, *events.last().unwrap()).is_empty() {
            return false;
        }
        events
            .windows(2)
            .all(|w| !self.mid_certs(w[0], w[1]).is_empty())
    }
}

/// Does the laminate shear the context (every segment cut by the context's
/// ideal form cuts out an angle)?
pub fn shears(model: &SurfaceModel, lam: &Laminate, r: &PartialTaggedTriangulation) -> bool {
    let ideal = ideal_form(model, r);
    let l = retag_laminate(model, lam, r);
    Engine::new(model, &l, &ideal.image).shears()
}

/// Per-crossing contributions of the laminate on one member arc of the
/// context (after retagging and the folded-side rule), for sign-coherence
/// inspection.
pub fn shear_contributions(
    model: &SurfaceModel,
    lam: &Laminate,
    r: &PartialTaggedTriangulation,
    member: usize,
) -> Result<Vec<i64>, ShearError> {
    let ideal = ideal_form(model, r);
    let l = retag_laminate(model, lam, r);
    let arc = &r.arcs[member];
    if let Some(ft) = ideal
        .folded
        .iter()
        .find(|ft| ft.radius == ideal.image[member] && ideal.image[member] == arc.curve)
    {
        // Folded side: evaluate on the enclosing loop with the spirals at
        // the enclosed puncture reversed.
        let lp = l.spin_flipped_at(&model.complex, ft.puncture);
        let target = ideal
            .image
            .iter()
            .position(|c| *c == ft.loop_arc)
            .expect("loop is a member image");
        Engine::new(model, &lp, &ideal.image).contributions(target)
    } else {
        Engine::new(model, &l, &ideal.image).contributions(member)
    }
}

/// The shear coordinate vector of the laminate in the given context.
pub fn shear_vector(
    model: &SurfaceModel,
    lam: &Laminate,
    r: &PartialTaggedTriangulation,
) -> Result<ShearVector, ShearError> {
    if !shears(model, lam, r) {
        return Err(ShearError::DoesNotShear);
    }
    let mut entries = Vec::with_capacity(r.arcs.len());
    for i in 0..r.arcs.len() {
        entries.push(shear_contributions(model, lam, r, i)?.iter().sum());
    }
    Ok(ShearVector { entries })
}
