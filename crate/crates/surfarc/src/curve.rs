//! Curves over a chart, written as crossing words, and their taut normal
//! forms.
//!
//! A [`Curve`] starts at an [`End`], crosses a sequence of interior edges
//! (each step names the slot through which it *leaves* the triangle it is
//! currently in), and stops at an [`End`]. Homotopy classes (rel endpoints;
//! germs at a vertex may rotate around it) are captured by a normal form:
//!
//! * no step re-crosses the edge it just entered through (bigon);
//! * a curve leaving a corner first crosses the opposite side of its
//!   triangle; anything else is a spike and is reduced by rotating the end
//!   germ around the vertex;
//! * a curve with no steps between two corners of a triangle is a chart
//!   edge and is written in the triangle of the canonical slot of that edge.
//!
//! These local rules yield minimal position: the unique normal form of a
//! class crosses each edge as few times as possible. A null-homotopic path
//! between copies of the same vertex reduces to [`Normalized::Null`].

use alloc::vec::Vec;
use core::fmt;

use crate::complex::{Complex, Corner, Slot};

/// An endpoint of a curve: a vertex of the chart (with the germ recorded by
/// a corner) or an unmarked point on a boundary side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Corner(Corner),
    Boundary(Slot),
}

impl End {
    /// The triangle the curve occupies at this end.
    pub fn tri(self) -> u32 {
        match self {
            End::Corner(c) => c.tri,
            End::Boundary(s) => s.tri,
        }
    }

    pub fn as_corner(self) -> Option<Corner> {
        match self {
            End::Corner(c) => Some(c),
            End::Boundary(_) => None,
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::Corner(c) => write!(f, "{c}"),
            End::Boundary(s) => write!(f, "b{s}"),
        }
    }
}

/// A curve as a crossing word: `steps[k]` is the slot by which the curve
/// leaves the `k`-th triangle of its itinerary.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Curve {
    pub start: End,
    pub steps: Vec<Slot>,
    pub end: End,
}

/// Result of normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    /// The taut representative of the class.
    Curve(Curve),
    /// The class is a null-homotopic loop at a vertex.
    Null,
}

impl Normalized {
    pub fn into_curve(self) -> Option<Curve> {
        match self {
            Normalized::Curve(c) => Some(c),
            Normalized::Null => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    /// A step is not a slot of the triangle the curve is in, or the end does
    /// not lie in the final triangle.
    Discontinuous,
    /// A step crosses a boundary side, or a boundary end names an interior
    /// slot.
    CrossesBoundary(Slot),
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::Discontinuous => write!(f, "crossing word is discontinuous"),
            CurveError::CrossesBoundary(s) => write!(f, "curve crosses boundary slot {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CurveError {}

impl Curve {
    pub fn new(start: End, steps: Vec<Slot>, end: End) -> Self {
        Curve { start, steps, end }
    }

    /// Zero-step curve along a chart edge, from corner `a` to corner `b` of
    /// the same triangle.
    pub fn chart_edge(a: Corner, b: Corner) -> Self {
        debug_assert_eq!(a.tri, b.tri);
        debug_assert_ne!(a.corner, b.corner);
        Curve::new(End::Corner(a), Vec::new(), End::Corner(b))
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self, cx: &Complex) -> Self {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|&s| cx.partner(s).expect("interior step"))
            .collect();
        Curve::new(self.end, steps, self.start)
    }

    /// Check continuity of the crossing word.
    pub fn validate(&self, cx: &Complex) -> Result<(), CurveError> {
        if let End::Boundary(s) = self.start {
            if !cx.is_boundary_slot(s) {
                return Err(CurveError::CrossesBoundary(s));
            }
        }
        if let End::Boundary(s) = self.end {
            if !cx.is_boundary_slot(s) {
                return Err(CurveError::CrossesBoundary(s));
            }
        }
        let mut tri = self.start.tri();
        for &s in &self.steps {
            if s.tri != tri {
                return Err(CurveError::Discontinuous);
            }
            let p = cx.partner(s).ok_or(CurveError::CrossesBoundary(s))?;
            tri = p.tri;
        }
        if self.end.tri() != tri {
            return Err(CurveError::Discontinuous);
        }
        Ok(())
    }

    /// Reduce to the taut normal form (or detect a null-homotopic loop),
    /// then canonicalize orientation: the smaller of the word and its
    /// reverse is kept.
    pub fn normalize(&self, cx: &Complex) -> Result<Normalized, CurveError> {
        match self.normalize_oriented(cx)? {
            Normalized::Null => Ok(Normalized::Null),
            Normalized::Curve(cur) => {
                let rev = cur.reversed(cx);
                Ok(Normalized::Curve(if rev < cur { rev } else { cur }))
            }
        }
    }

    /// Like [`Curve::normalize`], but keeps the original orientation.
    pub fn normalize_oriented(&self, cx: &Complex) -> Result<Normalized, CurveError> {
        self.validate(cx)?;
        let mut cur = self.clone();
        loop {
            if reduce_bigon(cx, &mut cur) {
                continue;
            }
            if reduce_start_spike(cx, &mut cur) {
                continue;
            }
            let mut rev = cur.reversed(cx);
            if reduce_start_spike(cx, &mut rev) {
                cur = rev.reversed(cx);
                continue;
            }
            break;
        }
        if cur.steps.is_empty() {
            if let (End::Corner(a), End::Corner(b)) = (cur.start, cur.end) {
                if a == b {
                    return Ok(Normalized::Null);
                }
                cur = canonical_chart_edge(cx, a, b);
            }
            if let (End::Boundary(a), End::Boundary(b)) = (cur.start, cur.end) {
                if a == b {
                    return Ok(Normalized::Null);
                }
            }
        }
        Ok(Normalized::Curve(cur))
    }

    /// Multiset of chart edges crossed, as canonical slots.
    pub fn crossed_edges(&self, cx: &Complex) -> Vec<Slot> {
        let mut out: Vec<Slot> = self.steps.iter().map(|&s| cx.edge_of(s)).collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for s in &self.steps {
            write!(f, " |{s}")?;
        }
        write!(f, " {}", self.end)
    }
}

/// Remove one innermost bigon (entering and leaving a triangle through the
/// same edge). Returns true if a reduction happened.
fn reduce_bigon(cx: &Complex, c: &mut Curve) -> bool {
    for k in 1..c.steps.len() {
        let entry = cx.partner(c.steps[k - 1]).expect("interior step");
        if c.steps[k] == entry {
            c.steps.drain(k - 1..=k);
            return true;
        }
    }
    false
}

/// Rotate the start germ around its vertex when the first crossing is a side
/// adjacent to the start corner. Returns true if a reduction happened.
fn reduce_start_spike(cx: &Complex, c: &mut Curve) -> bool {
    let End::Corner(corner) = c.start else {
        return false;
    };
    let Some(&first) = c.steps.first() else {
        return false;
    };
    if first == corner.incoming_side() {
        let next = cx.acw_next(corner).expect("interior step");
        c.start = End::Corner(next);
        c.steps.remove(0);
        true
    } else if first == corner.outgoing_side() {
        let next = cx.cw_next(corner).expect("interior step");
        c.start = End::Corner(next);
        c.steps.remove(0);
        true
    } else {
        false
    }
}

/// Rewrite a zero-step corner-to-corner curve in the triangle of the
/// canonical slot of the chart edge it runs along.
fn canonical_chart_edge(cx: &Complex, a: Corner, b: Corner) -> Curve {
    debug_assert_eq!(a.tri, b.tri);
    // The side joining the two corners: from a when b follows a, else from b.
    let side = if b.corner == (a.corner + 1) % 3 {
        a.outgoing_side()
    } else {
        debug_assert_eq!(a.corner, (b.corner + 1) % 3);
        b.outgoing_side()
    };
    match cx.partner(side) {
        Some(p) if p < side => {
            // Corner `side.side` of this triangle is corner `(p.side+1)%3`
            // of the partner; the following corner is corner `p.side`.
            let map = |c: Corner| -> Corner {
                if c.corner == side.side {
                    Corner::new(p.tri, (p.side + 1) % 3)
                } else {
                    Corner::new(p.tri, p.side)
                }
            };
            Curve::chart_edge(map(a), map(b))
        }
        _ => Curve::chart_edge(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Complex;

    /// Square disc: t0 = (v0,v1,v2), t1 = (v0,v2,v3), diagonal t0.s2 ↔ t1.s0.
    fn square() -> Complex {
        Complex::new(2, &[(Slot::new(0, 2), Slot::new(1, 0))]).unwrap()
    }

    fn n(cx: &Complex, c: Curve) -> Normalized {
        c.normalize(cx).unwrap()
    }

    #[test]
    fn chart_edge_canonical_across_gluing() {
        let cx = square();
        // The diagonal v0–v2, written in either triangle, normalizes the
        // same way.
        let d0 = Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2));
        let d1 = Curve::chart_edge(Corner::new(1, 0), Corner::new(1, 1));
        let d1r = Curve::chart_edge(Corner::new(1, 1), Corner::new(1, 0));
        let a = n(&cx, d0);
        assert_eq!(a, n(&cx, d1));
        assert_eq!(a, n(&cx, d1r));
        let Normalized::Curve(c) = a else { panic!() };
        assert!(c.steps.is_empty());
        assert_eq!(c.start.tri(), 0);
    }

    #[test]
    fn bigon_reduces_to_null() {
        let cx = square();
        // Out through the diagonal and straight back: a null loop at v0.
        let c = Curve::new(
            End::Corner(Corner::new(0, 0)),
            alloc::vec![Slot::new(0, 2), Slot::new(1, 0)],
            End::Corner(Corner::new(0, 0)),
        );
        assert_eq!(n(&cx, c), Normalized::Null);
    }

    #[test]
    fn spike_reduces_to_boundary_edge() {
        let cx = square();
        // From v0 (corner t0c0), cross the diagonal, stop at v3: homotopic
        // to the boundary edge v0–v3.
        let c = Curve::new(
            End::Corner(Corner::new(0, 0)),
            alloc::vec![Slot::new(0, 2)],
            End::Corner(Corner::new(1, 2)),
        );
        let Normalized::Curve(r) = n(&cx, c) else { panic!() };
        assert!(r.steps.is_empty());
        let ends = [r.start, r.end];
        assert!(ends.contains(&End::Corner(Corner::new(1, 0))));
        assert!(ends.contains(&End::Corner(Corner::new(1, 2))));
    }

    #[test]
    fn crossing_arc_is_already_taut() {
        let cx = square();
        // v1 → v3 crosses the diagonal once.
        let c = Curve::new(
            End::Corner(Corner::new(0, 1)),
            alloc::vec![Slot::new(0, 2)],
            End::Corner(Corner::new(1, 2)),
        );
        let Normalized::Curve(r) = n(&cx, c.clone()) else { panic!() };
        assert_eq!(r.steps.len(), 1);
        // Orientation-canonical: reverse normalizes identically.
        assert_eq!(n(&cx, c.reversed(&cx)), Normalized::Curve(r));
    }

    #[test]
    fn end_spike_reduction() {
        let cx = square();
        // v1 → cross diagonal → end at v0 germ in t1: homotopic to the
        // boundary edge v0–v1 (zero crossings).
        let c = Curve::new(
            End::Corner(Corner::new(0, 1)),
            alloc::vec![Slot::new(0, 2)],
            End::Corner(Corner::new(1, 0)),
        );
        let Normalized::Curve(r) = n(&cx, c) else { panic!() };
        assert!(r.steps.is_empty());
    }

    #[test]
    fn boundary_to_boundary_normalizes() {
        let cx = square();
        let c = Curve::new(
            End::Boundary(Slot::new(0, 0)),
            alloc::vec![Slot::new(0, 2)],
            End::Boundary(Slot::new(1, 1)),
        );
        let Normalized::Curve(r) = n(&cx, c) else { panic!() };
        assert_eq!(r.steps.len(), 1);
        // Backtracking excursion reduces away.
        let c2 = Curve::new(
            End::Boundary(Slot::new(0, 0)),
            alloc::vec![
                Slot::new(0, 2),
                Slot::new(1, 0),
                Slot::new(0, 2)
            ],
            End::Boundary(Slot::new(1, 1)),
        );
        let Normalized::Curve(r2) = n(&cx, c2) else { panic!() };
        assert_eq!(r2.steps.len(), 1);
    }

    #[test]
    fn rejects_invalid_words() {
        let cx = square();
        // Step through a boundary side.
        let c = Curve::new(
            End::Corner(Corner::new(0, 0)),
            alloc::vec![Slot::new(0, 0)],
            End::Corner(Corner::new(0, 1)),
        );
        assert!(c.normalize(&cx).is_err());
        // Discontinuous word.
        let c = Curve::new(
            End::Corner(Corner::new(0, 0)),
            alloc::vec![Slot::new(1, 1)],
            End::Corner(Corner::new(0, 1)),
        );
        assert!(c.normalize(&cx).is_err());
    }
}
