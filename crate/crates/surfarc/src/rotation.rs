//! Tagged rotation of arcs, and the germ-slide primitives it builds on.
//!
//! Sliding an end germ around its vertex is the inverse of a spike
//! reduction: rotating the germ across an adjacent interior edge adds one
//! crossing of that edge. The tagged rotation ρ (direction +1) moves every
//! boundary endpoint one marked point anticlockwise along its boundary
//! component (sweeping across the boundary segment in between) and negates
//! every puncture tag; ρ⁻¹ is the clockwise inverse.

use crate::arc::TaggedArc;
use crate::complex::{Complex, Corner, VertexKind};
use crate::curve::{Curve, End};
use crate::surface::SurfaceModel;

/// Rotate the start germ one corner anticlockwise around its vertex.
pub fn slide_start_acw(cx: &Complex, c: &mut Curve) {
    let End::Corner(x) = c.start else {
        panic!("corner end expected")
    };
    let next = cx.acw_next(x).expect("interior side to slide across");
    c.steps.insert(0, next.outgoing_side());
    c.start = End::Corner(next);
}

/// Rotate the start germ one corner clockwise around its vertex.
pub fn slide_start_cw(cx: &Complex, c: &mut Curve) {
    let End::Corner(x) = c.start else {
        panic!("corner end expected")
    };
    let next = cx.cw_next(x).expect("interior side to slide across");
    c.steps.insert(0, next.incoming_side());
    c.start = End::Corner(next);
}

/// Rotate the end germ one corner anticlockwise around its vertex.
pub fn slide_end_acw(cx: &Complex, c: &mut Curve) {
    let End::Corner(x) = c.end else {
        panic!("corner end expected")
    };
    let next = cx.acw_next(x).expect("interior side to slide across");
    c.steps.push(x.incoming_side());
    c.end = End::Corner(next);
}

/// Rotate the end germ one corner clockwise around its vertex.
pub fn slide_end_cw(cx: &Complex, c: &mut Curve) {
    let End::Corner(x) = c.end else {
        panic!("corner end expected")
    };
    let next = cx.cw_next(x).expect("interior side to slide across");
    c.steps.push(x.outgoing_side());
    c.end = End::Corner(next);
}

/// Move the end of the curve (`which = 1`, else the start) from its
/// boundary vertex to the next marked point along the boundary: `direction
/// = +1` anticlockwise, `-1` clockwise.
pub(crate) fn advance_boundary_end(cx: &Complex, c: &mut Curve, which: usize, direction: i8) {
    let get = |c: &Curve| -> Corner {
        let e = if which == 1 { c.end } else { c.start };
        e.as_corner().expect("corner end")
    };
    if direction > 0 {
        // Slide the germ clockwise until it sits next to the outgoing
        // boundary side, then jump to the far corner of that side.
        while cx.cw_next(get(c)).is_some() {
            if which == 1 {
                slide_end_cw(cx, c);
            } else {
                slide_start_cw(cx, c);
            }
        }
        let s = get(c).outgoing_side();
        debug_assert!(cx.is_boundary_slot(s));
        let far = End::Corner(Corner::new(s.tri, (s.side + 1) % 3));
        if which == 1 {
            c.end = far;
        } else {
            c.start = far;
        }
    } else {
        // Mirror image: slide anticlockwise to the incoming boundary side
        // and jump to its near corner.
        while cx.acw_next(get(c)).is_some() {
            if which == 1 {
                slide_end_acw(cx, c);
            } else {
                slide_start_acw(cx, c);
            }
        }
        let s = get(c).incoming_side();
        debug_assert!(cx.is_boundary_slot(s));
        let near = End::Corner(Corner::new(s.tri, s.side));
        if which == 1 {
            c.end = near;
        } else {
            c.start = near;
        }
    }
}

/// The tagged rotation ρ (direction +1) or its inverse ρ⁻¹ (direction −1).
pub fn tagged_rotation(model: &SurfaceModel, arc: &TaggedArc, direction: i8) -> TaggedArc {
    debug_assert!(direction == 1 || direction == -1);
    let cx = &model.complex;
    let mut curve = arc.curve.clone();
    let mut tags = arc.tags;
    for which in 0..2usize {
        let e = if which == 1 { curve.end } else { curve.start };
        let v = cx.vertex_of(e.as_corner().expect("corner end"));
        match cx.vertex(v).kind {
            VertexKind::Boundary => advance_boundary_end(cx, &mut curve, which, direction),
            VertexKind::Interior => tags[which] = -tags[which],
        }
    }
    TaggedArc::normalize(model, &curve, tags).expect("rotation preserves admissibility")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::intersection_number;
    use crate::complex::Slot;
    use crate::surface::{build_surface, SurfaceSpec};

    fn arc(m: &SurfaceModel, c: Curve, tags: [i8; 2]) -> TaggedArc {
        TaggedArc::normalize(m, &c, tags).unwrap()
    }

    #[test]
    fn square_rotation_swaps_diagonals() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![4], 0)).unwrap();
        let d1 = arc(
            &m,
            Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2)),
            [1, 1],
        );
        let d2 = tagged_rotation(&m, &d1, 1);
        assert_ne!(d1, d2);
        assert_eq!(intersection_number(&m, &d1, &d2), 1);
        // The other diagonal joins v1 and v3.
        let expect = arc(
            &m,
            Curve::new(
                End::Corner(Corner::new(0, 1)),
                alloc::vec![Slot::new(0, 2)],
                End::Corner(Corner::new(1, 2)),
            ),
            [1, 1],
        );
        assert_eq!(d2, expect);
        // ρ⁻¹ ∘ ρ = id and ρ² = id on the square's diagonals.
        assert_eq!(tagged_rotation(&m, &d2, -1), d1);
        assert_eq!(tagged_rotation(&m, &d2, 1), d1);
    }

    #[test]
    fn full_turn_on_hexagon_is_identity() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![6], 0)).unwrap();
        let a = arc(
            &m,
            Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2)),
            [1, 1],
        );
        let mut cur = a.clone();
        for k in 1..=6 {
            cur = tagged_rotation(&m, &cur, 1);
            if k < 6 {
                assert_ne!(cur, a, "returned early at step {k}");
            }
        }
        assert_eq!(cur, a);
        // And clockwise back.
        let mut back = a.clone();
        for _ in 0..6 {
            back = tagged_rotation(&m, &back, -1);
        }
        assert_eq!(back, a);
    }

    #[test]
    fn puncture_arc_rotation_is_adjoint() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![1], 2)).unwrap();
        let cx = &m.complex;
        let e = cx
            .interior_edges()
            .into_iter()
            .find(|&e| {
                let (a, b) = cx.slot_endpoints(e);
                a != b && m.is_puncture(a) && m.is_puncture(b)
            })
            .unwrap();
        let delta = arc(
            &m,
            Curve::chart_edge(
                Corner::new(e.tri, e.side),
                Corner::new(e.tri, (e.side + 1) % 3),
            ),
            [1, 1],
        );
        let rho = tagged_rotation(&m, &delta, 1);
        assert_eq!(rho.curve, delta.curve);
        assert_eq!(rho.tags, [-1, -1]);
        assert_eq!(tagged_rotation(&m, &delta, -1), rho);
    }

    #[test]
    fn mixed_arc_rotation() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![4], 1)).unwrap();
        // Radius from a boundary vertex to the puncture.
        let r = arc(
            &m,
            Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2)),
            [1, 1],
        );
        let rot = tagged_rotation(&m, &r, 1);
        assert_eq!(tagged_rotation(&m, &rot, -1), r);
        // The puncture tag flipped.
        assert_eq!(rot.tags.iter().product::<i8>(), -1);
        // Four anticlockwise steps restore the boundary endpoint, and the
        // puncture tag flips an even number of times: ρ⁴ is the identity.
        let mut cur = r.clone();
        for k in 1..=4 {
            cur = tagged_rotation(&m, &cur, 1);
            if k < 4 {
                assert_ne!(cur, r, "returned early at step {k}");
            }
        }
        assert_eq!(cur, r);
    }
}
