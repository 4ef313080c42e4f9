//! Partial tagged triangulations, their ideal forms, and retagging.
//!
//! A partial tagged triangulation is a set of pairwise non-crossing tagged
//! arcs. Its tag signature κ assigns to each touched puncture −1 if every
//! incident end is tagged −1 there, +1 if every incident end is tagged +1,
//! and 0 otherwise. A puncture with κ = 0 is incident to exactly one pair
//! of arcs with the same underlying curve whose tags differ there; in the
//! ideal form that pair becomes a self-folded triangle: the shared curve
//! stays as the folded side and the notched copy becomes the loop
//! enclosing the puncture.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arc::{encircles_only, intersection_number, ArcError, TaggedArc};
use crate::complex::VertexId;
use crate::curve::{Curve, CurveError, End, Normalized};
use crate::rotation::slide_end_acw;
use crate::surface::SurfaceModel;

/// Errors raised when assembling or converting triangulations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangError {
    /// Two member arcs cross (indices into the input, intersection count).
    Incompatible(usize, usize, u64),
    /// The same tagged arc appears twice.
    Duplicate(usize, usize),
    /// A loop enclosing a puncture lacks its folded side.
    FoldedClosureViolated,
    /// A member curve fails tagged-arc validation.
    Arc(ArcError),
    /// A member curve is not a well-formed arc between marked points.
    Curve(CurveError),
    /// A member curve normalizes to a point.
    NullCurve,
}

impl From<ArcError> for TriangError {
    fn from(e: ArcError) -> Self {
        TriangError::Arc(e)
    }
}

/// A set of pairwise compatible tagged arcs with its tag signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartialTaggedTriangulation {
    /// Member arcs, sorted and deduplicated.
    pub arcs: Vec<TaggedArc>,
    /// Tag signature at each puncture touched by a member arc.
    pub kappa: BTreeMap<VertexId, i8>,
}

impl PartialTaggedTriangulation {
    /// Validate pairwise compatibility and compute the tag signature.
    pub fn new(
        model: &SurfaceModel,
        arcs: Vec<TaggedArc>,
    ) -> Result<PartialTaggedTriangulation, TriangError> {
        for i in 0..arcs.len() {
            for j in (i + 1)..arcs.len() {
                if arcs[i] == arcs[j] {
                    return Err(TriangError::Duplicate(i, j));
                }
                let n = intersection_number(model, &arcs[i], &arcs[j]);
                if n != 0 {
                    return Err(TriangError::Incompatible(i, j, n));
                }
            }
        }
        let mut arcs = arcs;
        arcs.sort();
        let kappa = compute_kappa(model, &arcs);
        Ok(PartialTaggedTriangulation { arcs, kappa })
    }

    /// The tag signature at `p`: `None` when no member arc touches `p`.
    pub fn kappa_at(&self, p: VertexId) -> Option<i8> {
        self.kappa.get(&p).copied()
    }
}

/// Recompute the tag signature of a set of tagged arcs.
pub fn compute_kappa(model: &SurfaceModel, arcs: &[TaggedArc]) -> BTreeMap<VertexId, i8> {
    let mut seen: BTreeMap<VertexId, (bool, bool)> = BTreeMap::new();
    for arc in arcs {
        let (a, b) = arc.endpoints(&model.complex);
        for (v, tag) in [(a, arc.tags[0]), (b, arc.tags[1])] {
            if model.is_puncture(v) {
                let entry = seen.entry(v).or_insert((false, false));
                if tag > 0 {
                    entry.0 = true;
                } else {
                    entry.1 = true;
                }
            }
        }
    }
    seen.into_iter()
        .map(|(v, (plus, minus))| {
            let k = if plus && minus {
                0
            } else if plus {
                1
            } else {
                -1
            };
            (v, k)
        })
        .collect()
}

fn end_vertex(model: &SurfaceModel, e: End) -> VertexId {
    model
        .complex
        .vertex_of(e.as_corner().expect("arc ends at a marked point"))
}

/// The loop enclosing the puncture `p` that, together with the radius
/// `delta` (an arc with exactly one end at `p`), bounds a self-folded
/// triangle.
pub fn folded_loop(model: &SurfaceModel, delta: &Curve, p: VertexId) -> Curve {
    let cx = &model.complex;
    let d = if end_vertex(model, delta.end) == p {
        delta.clone()
    } else {
        delta.reversed(cx)
    };
    assert_eq!(end_vertex(model, d.end), p, "radius must end at the puncture");
    assert_ne!(end_vertex(model, d.start), p, "radius must not be a loop at the puncture");
    // Drag the puncture end once fully around the puncture, then travel
    // back along the radius: the composite is homotopic to the enclosing
    // loop pushed off the puncture.
    let mut wound = d.clone();
    let deg = cx.vertex(p).corners.len();
    for _ in 0..deg {
        slide_end_acw(cx, &mut wound);
    }
    let back = d.reversed(cx);
    let mut steps = wound.steps;
    steps.extend(back.steps);
    let raw = Curve::new(wound.start, steps, back.end);
    match raw.normalize(cx).expect("composite loop is a valid curve") {
        Normalized::Curve(c) => c,
        Normalized::Null => unreachable!("enclosing loop is essential"),
    }
}

/// A self-folded triangle detected in an ideal fragment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedTriangle {
    /// The loop enclosing the puncture.
    pub loop_arc: Curve,
    /// The folded side joining the loop basepoint to the puncture.
    pub radius: Curve,
    /// The enclosed puncture.
    pub puncture: VertexId,
}

/// The ideal form of a partial tagged triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealForm {
    /// The ideal arcs, sorted and deduplicated.
    pub curves: Vec<Curve>,
    /// Per-arc images aligned with the member arcs of the source.
    pub image: Vec<Curve>,
    /// Self-folded triangles created at punctures with κ = 0.
    pub folded: Vec<FoldedTriangle>,
}

/// Forget taggings, turning each κ = 0 pair into a self-folded triangle.
pub fn ideal_form(model: &SurfaceModel, r: &PartialTaggedTriangulation) -> IdealForm {
    let mut image: Vec<Curve> = r.arcs.iter().map(|a| a.curve.clone()).collect();
    let mut folded = Vec::new();
    for (&p, &k) in &r.kappa {
        if k != 0 {
            continue;
        }
        // The arcs at p are exactly one pair with the same underlying
        // curve; the member notched at p becomes the enclosing loop.
        for (i, arc) in r.arcs.iter().enumerate() {
            let (a, b) = arc.endpoints(&model.complex);
            let tag_at_p = if a == p { arc.tags[0] } else { arc.tags[1] };
            if (a != p && b != p) || tag_at_p > 0 {
                continue;
            }
            let eps = folded_loop(model, &arc.curve, p);
            folded.push(FoldedTriangle {
                loop_arc: eps.clone(),
                radius: arc.curve.clone(),
                puncture: p,
            });
            image[i] = eps;
        }
    }
    let mut curves = image.clone();
    curves.sort();
    curves.dedup();
    IdealForm {
        curves,
        image,
        folded,
    }
}

/// Identify the self-folded triangles of a set of ideal arcs.
///
/// Returns one entry per loop that encloses exactly one puncture; the
/// folded side must also be present or `FoldedClosureViolated` is raised.
pub fn folded_triangles(
    model: &SurfaceModel,
    curves: &[Curve],
) -> Result<Vec<FoldedTriangle>, TriangError> {
    let cx = &model.complex;
    let mut out = Vec::new();
    for eps in curves {
        let (a, b) = (end_vertex(model, eps.start), end_vertex(model, eps.end));
        if a != b {
            continue;
        }
        for &p in &model.punctures {
            if p == a || !encircles_only(cx, eps, p) {
                continue;
            }
            let radius = curves
                .iter()
                .find(|d| {
                    let (x, y) = (end_vertex(model, d.start), end_vertex(model, d.end));
                    (x == p) != (y == p) && folded_loop(model, d, p) == *eps
                })
                .ok_or(TriangError::FoldedClosureViolated)?;
            out.push(FoldedTriangle {
                loop_arc: eps.clone(),
                radius: radius.clone(),
                puncture: p,
            });
        }
    }
    Ok(out)
}

/// Reintroduce taggings: each self-folded triangle becomes the pair of
/// same-curve arcs tagged +1 and −1 at the enclosed puncture, and every
/// other end is tagged +1.
pub fn tagged_form(
    model: &SurfaceModel,
    curves: &[Curve],
) -> Result<PartialTaggedTriangulation, TriangError> {
    let folded = folded_triangles(model, curves)?;
    let mut arcs = Vec::new();
    for c in curves {
        if let Some(ft) = folded.iter().find(|ft| ft.loop_arc == *c) {
            // Orient the folded side towards the puncture so the notched
            // tag lands on the right end.
            let d = if end_vertex(model, ft.radius.end) == ft.puncture {
                ft.radius.clone()
            } else {
                ft.radius.reversed(&model.complex)
            };
            arcs.push(TaggedArc::normalize(model, &d, [1, -1])?);
        } else {
            arcs.push(TaggedArc::normalize(model, c, [1, 1])?);
        }
    }
    PartialTaggedTriangulation::new(model, arcs)
}

/// Whether every puncture of the surface is enclosed by a self-folded
/// triangle of the given ideal arcs.
pub fn is_admissible(model: &SurfaceModel, curves: &[Curve]) -> bool {
    match folded_triangles(model, curves) {
        Ok(folded) => model
            .punctures
            .iter()
            .all(|p| folded.iter().any(|ft| ft.puncture == *p)),
        Err(_) => false,
    }
}

/// Flip the taggings of `delta` at every puncture where κ is negative.
pub fn retag(
    model: &SurfaceModel,
    delta: &TaggedArc,
    r: &PartialTaggedTriangulation,
) -> TaggedArc {
    let mut out = delta.clone();
    let (a, b) = delta.endpoints(&model.complex);
    let mut flips: Vec<VertexId> = [a, b]
        .into_iter()
        .filter(|&v| model.is_puncture(v) && r.kappa_at(v) == Some(-1))
        .collect();
    flips.sort();
    flips.dedup();
    for p in flips {
        out = out.retagged_at(&model.complex, p, true);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Corner, Slot};
    use crate::surface::{build_surface, SurfaceSpec};

    fn punctured_square() -> SurfaceModel {
        build_surface(&SurfaceSpec::new(0, alloc::vec![4], 1)).unwrap()
    }

    fn radius(_m: &SurfaceModel) -> Curve {
        // The interior edge of triangle 0 joining the first boundary
        // vertex to the puncture.
        Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2))
    }

    #[test]
    fn folded_loop_matches_taut_monogon_boundary() {
        let m = punctured_square();
        let p = m.punctures[0];
        let eps = folded_loop(&m, &radius(&m), p);
        let expect = Curve::new(
            End::Corner(Corner::new(0, 0)),
            alloc::vec![Slot::new(0, 1), Slot::new(1, 1), Slot::new(2, 1)],
            End::Corner(Corner::new(3, 1)),
        )
        .normalize(&m.complex)
        .unwrap()
        .into_curve()
        .unwrap();
        assert_eq!(eps, expect);
        assert!(encircles_only(&m.complex, &eps, p));
    }

    #[test]
    fn kappa_and_round_trip_on_notched_pair() {
        let m = punctured_square();
        let p = m.punctures[0];
        let plus = TaggedArc::normalize(&m, &radius(&m), [1, 1]).unwrap();
        let minus = TaggedArc::normalize(&m, &radius(&m), [1, -1]).unwrap();
        assert_eq!(intersection_number(&m, &plus, &minus), 0);
        let r = PartialTaggedTriangulation::new(&m, alloc::vec![plus.clone(), minus.clone()])
            .unwrap();
        assert_eq!(r.kappa_at(p), Some(0));

        let ideal = ideal_form(&m, &r);
        assert_eq!(ideal.curves.len(), 2);
        assert_eq!(ideal.folded.len(), 1);
        assert_eq!(ideal.folded[0].puncture, p);
        assert!(ideal.curves.contains(&plus.curve));
        assert!(ideal.curves.contains(&ideal.folded[0].loop_arc));
        assert!(is_admissible(&m, &ideal.curves));

        let back = tagged_form(&m, &ideal.curves).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn single_tagged_arc_forms() {
        let m = punctured_square();
        let p = m.punctures[0];
        let minus = TaggedArc::normalize(&m, &radius(&m), [1, -1]).unwrap();
        let r = PartialTaggedTriangulation::new(&m, alloc::vec![minus.clone()]).unwrap();
        assert_eq!(r.kappa_at(p), Some(-1));
        // Taggings are simply erased away from κ = 0.
        let ideal = ideal_form(&m, &r);
        assert_eq!(ideal.curves, alloc::vec![minus.curve.clone()]);
        assert!(ideal.folded.is_empty());
        // A lone radius encloses nothing.
        assert!(!is_admissible(&m, &ideal.curves));
    }

    #[test]
    fn missing_folded_side_is_rejected() {
        let m = punctured_square();
        let eps = folded_loop(&m, &radius(&m), m.punctures[0]);
        assert_eq!(
            tagged_form(&m, &[eps]),
            Err(TriangError::FoldedClosureViolated)
        );
        assert!(!is_admissible(&m, &[]));
    }

    #[test]
    fn retagging_flips_only_negative_punctures() {
        let m = punctured_square();
        let plus = TaggedArc::normalize(&m, &radius(&m), [1, 1]).unwrap();
        let minus = TaggedArc::normalize(&m, &radius(&m), [1, -1]).unwrap();
        let r_minus = PartialTaggedTriangulation::new(&m, alloc::vec![minus.clone()]).unwrap();
        assert_eq!(retag(&m, &plus, &r_minus), minus);
        assert_eq!(retag(&m, &retag(&m, &plus, &r_minus), &r_minus), plus);
        let r_plus = PartialTaggedTriangulation::new(&m, alloc::vec![plus.clone()]).unwrap();
        assert_eq!(retag(&m, &minus, &r_plus), minus);
    }

    #[test]
    fn crossing_arcs_are_rejected() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![4], 0)).unwrap();
        let d1 = TaggedArc::normalize(
            &m,
            &Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2)),
            [1, 1],
        )
        .unwrap();
        let d2 = TaggedArc::normalize(
            &m,
            &Curve::new(
                End::Corner(Corner::new(0, 1)),
                alloc::vec![Slot::new(0, 2)],
                End::Corner(Corner::new(1, 2)),
            ),
            [1, 1],
        )
        .unwrap();
        assert_eq!(
            PartialTaggedTriangulation::new(&m, alloc::vec![d1, d2]),
            Err(TriangError::Incompatible(0, 1, 1))
        );
    }
}
