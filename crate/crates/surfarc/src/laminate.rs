//! Elementary and co-elementary laminates of tagged arcs.
//!
//! The elementary laminate e(δ) runs parallel to δ; each boundary endpoint
//! is displaced clockwise past its marked point onto the neighbouring
//! boundary segment, and each puncture endpoint becomes a spiral: clockwise
//! for tag +1 and anticlockwise for tag −1. The co-elementary laminate
//! e°(δ) displaces and spirals the opposite way. Spirals are stored
//! symbolically; [`Laminate::materialize`] winds them a finite number of
//! turns for crossing computations.


use crate::arc::TaggedArc;
use crate::complex::{Complex, VertexId};
use crate::curve::{Curve, End};
use crate::rotation::{slide_end_acw, slide_end_cw, slide_start_acw, slide_start_cw};
use crate::surface::SurfaceModel;

/// Direction of a spiral around a puncture, seen while travelling towards
/// the puncture along the laminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spin {
    Cw,
    Acw,
}

impl Spin {
    pub fn flipped(self) -> Spin {
        match self {
            Spin::Cw => Spin::Acw,
            Spin::Acw => Spin::Cw,
        }
    }
}

/// A laminate: a reduced crossing word whose ends are boundary points or
/// symbolic spirals at punctures (kept as a pinned germ plus a direction).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Laminate {
    pub curve: Curve,
    /// Spiral directions at the start and end; `None` for boundary ends.
    pub spins: [Option<Spin>; 2],
}

impl Laminate {
    /// Canonicalize the spiral germs (taut normal form) and the traversal
    /// direction.
    pub fn canonical(cx: &Complex, curve: Curve, spins: [Option<Spin>; 2]) -> Laminate {
        let curve = curve
            .normalize_oriented(cx)
            .expect("valid laminate word")
            .into_curve()
            .expect("laminate is essential");
        let rev = curve.reversed(cx);
        let rspins = [spins[1], spins[0]];
        if (&rev, &rspins) < (&curve, &spins) {
            Laminate {
                curve: rev,
                spins: rspins,
            }
        } else {
            Laminate { curve, spins }
        }
    }

    /// Wind every spiral end the given number of full turns, leaving a
    /// curve that pins each spiral at its puncture germ.
    pub fn materialize(&self, cx: &Complex, turns: usize) -> Curve {
        let mut c = self.curve.clone();
        if let Some(spin) = self.spins[1] {
            let p = cx.vertex_of(c.end.as_corner().expect("spiral end at a corner"));
            let deg = cx.vertex(p).corners.len();
            for _ in 0..turns * deg {
                match spin {
                    Spin::Cw => slide_end_cw(cx, &mut c),
                    Spin::Acw => slide_end_acw(cx, &mut c),
                }
            }
        }
        if let Some(spin) = self.spins[0] {
            let p = cx.vertex_of(c.start.as_corner().expect("spiral end at a corner"));
            let deg = cx.vertex(p).corners.len();
            for _ in 0..turns * deg {
                match spin {
                    Spin::Cw => slide_start_cw(cx, &mut c),
                    Spin::Acw => slide_start_acw(cx, &mut c),
                }
            }
        }
        c
    }

    /// Reverse the spiral directions at the puncture `p`.
    pub fn spin_flipped_at(&self, cx: &Complex, p: VertexId) -> Laminate {
        let mut spins = self.spins;
        for (which, e) in [(0usize, self.curve.start), (1, self.curve.end)] {
            if let (Some(s), Some(c)) = (spins[which], e.as_corner()) {
                if cx.vertex_of(c) == p {
                    spins[which] = Some(s.flipped());
                }
            }
        }
        Laminate::canonical(cx, self.curve.clone(), spins)
    }
}

/// Move the end of the curve off its boundary vertex onto the neighbouring
/// boundary segment: clockwise past the vertex when `cw` is true, else
/// anticlockwise.
fn displace_end(cx: &Complex, c: &mut Curve, cw: bool) {
    let corner = |c: &Curve| c.end.as_corner().expect("corner end");
    if cw {
        // The clockwise-neighbouring segment is the incoming boundary slot,
        // which sits next to the anticlockwise-extreme corner of the fan.
        while cx.acw_next(corner(c)).is_some() {
            slide_end_acw(cx, c);
        }
        c.end = End::Boundary(corner(c).incoming_side());
    } else {
        while cx.cw_next(corner(c)).is_some() {
            slide_end_cw(cx, c);
        }
        c.end = End::Boundary(corner(c).outgoing_side());
    }
}

fn build(model: &SurfaceModel, delta: &TaggedArc, op: bool) -> Laminate {
    let cx = &model.complex;
    let spin_for = |tag: i8| -> Spin {
        match (tag > 0, op) {
            (true, false) | (false, true) => Spin::Acw,
            _ => Spin::Cw,
        }
    };
    let mut spins = [None, None];
    let mut curve = delta.curve.clone();
    // End, then start (on the reversed curve).
    for which in [1usize, 0] {
        let mut rev = if which == 0 {
            curve.reversed(cx)
        } else {
            curve.clone()
        };
        let v = cx.vertex_of(rev.end.as_corner().expect("corner end"));
        if model.is_puncture(v) {
            spins[which] = Some(spin_for(delta.tags[which]));
        } else {
            displace_end(cx, &mut rev, !op);
        }
        curve = if which == 0 { rev.reversed(cx) } else { rev };
    }
    Laminate::canonical(cx, curve, spins)
}

/// The elementary laminate e(δ).
pub fn elementary_laminate(model: &SurfaceModel, delta: &TaggedArc) -> Laminate {
    build(model, delta, false)
}

/// The co-elementary laminate e°(δ), displacing and spiralling oppositely.
pub fn co_elementary_laminate(model: &SurfaceModel, delta: &TaggedArc) -> Laminate {
    build(model, delta, true)
}
