//! Signed flips of dissections, mutation directions, and the two-part
//! labeling of a dissection over its context.
//!
//! The flip replaces one arc `l` of a dissection `U` by the relative
//! rotation of `l` with respect to `U \ {l}`, in the direction given by
//! the common sign of the co-elementary shear values of the context arcs
//! at `l`. When the untagged form of `l` is not the folded side of a
//! self-folded triangle, an independent endpoint-sliding construction on
//! the untagged forms must produce the same collection of plain arcs; the
//! two are cross-checked on every call.

use alloc::vec::Vec;

use crate::arc::TaggedArc;
use crate::complex::{Corner, Slot};
use crate::curve::{Curve, End, Normalized};
use crate::cut::{relative_rotation, CutError};
use crate::laminate::co_elementary_laminate;
use crate::overlay::Overlay;
use crate::rotation::{advance_boundary_end, tagged_rotation};
use crate::shear::{shear_vector, Engine};
use crate::standard::{cands_at, fan_first_path, hug_side, oriented_from, FanItem};
use crate::surface::SurfaceModel;
use crate::triang::{ideal_form, PartialTaggedTriangulation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlipError {
    /// The arc to flip is not a member of the dissection.
    NotMember,
    /// The given arcs do not form a valid compatible collection.
    InvalidDissection,
    /// A theory-level impossibility surfaced: the flip-direction signs are
    /// all zero or mixed. This is an implementation defect, not bad input.
    InternalInconsistency,
    /// The sliding construction disagrees with the relative rotation.
    CrossCheckMismatch,
    /// The underlying surface cut failed.
    Cut(CutError),
}

impl From<CutError> for FlipError {
    fn from(e: CutError) -> FlipError {
        FlipError::Cut(e)
    }
}

/// The outcome of a flip: the new dissection (sorted) and the arc that
/// replaced the flipped one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flip {
    pub arcs: Vec<TaggedArc>,
    pub new_arc: TaggedArc,
    pub sign: i8,
}

/// The direction a flip mutates in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationDirection {
    Left,
    Right,
}

/// The two-part labeling of a dissection `U` over its context `R`: the
/// arcs of `U` outside the rotation of `R` index the module part, those
/// inside it the shifted projective part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauTiltingLabel {
    pub module_arcs: Vec<TaggedArc>,
    pub projective_shift_arcs: Vec<TaggedArc>,
}

/// The common sign of the nonzero co-elementary shear values
/// `b_{l,U}(e^op(γ))` over the context arcs `γ`.
pub fn flip_sign(
    model: &SurfaceModel,
    r: &PartialTaggedTriangulation,
    u: &PartialTaggedTriangulation,
    l: &TaggedArc,
) -> Result<i8, FlipError> {
    let li = u
        .arcs
        .iter()
        .position(|a| a == l)
        .ok_or(FlipError::NotMember)?;
    let mut sign = 0i8;
    for g in &r.arcs {
        let sv = shear_vector(model, &co_elementary_laminate(model, g), u)
            .map_err(|_| FlipError::InternalInconsistency)?;
        let x = sv.entries[li];
        if x == 0 {
            continue;
        }
        let s = if x > 0 { 1 } else { -1 };
        if sign == 0 {
            sign = s;
        } else if sign != s {
            return Err(FlipError::InternalInconsistency);
        }
    }
    if sign == 0 {
        return Err(FlipError::InternalInconsistency);
    }
    Ok(sign)
}

/// Flip the dissection `u` (over context `r`) at its member `l`.
pub fn flip(
    model: &SurfaceModel,
    r: &PartialTaggedTriangulation,
    u: &[TaggedArc],
    l: &TaggedArc,
) -> Result<Flip, FlipError> {
    let uptt = PartialTaggedTriangulation::new(model, u.to_vec())
        .map_err(|_| FlipError::InvalidDissection)?;
    let li = uptt
        .arcs
        .iter()
        .position(|a| a == l)
        .ok_or(FlipError::NotMember)?;
    let sign = flip_sign(model, r, &uptt, l)?;
    let mut rest = uptt.arcs.clone();
    rest.remove(li);
    let n = PartialTaggedTriangulation::new(model, rest.clone())
        .map_err(|_| FlipError::InvalidDissection)?;
    let new_arc = relative_rotation(model, l, &n, sign)?;

    // Independent construction on the untagged forms, when `l` does not
    // untag to a folded side.
    let ideal_u = ideal_form(model, &uptt);
    let v = ideal_u.image[li].clone();
    let is_folded_side = ideal_u.folded.iter().any(|f| f.radius == v);
    if !is_folded_side {
        let ctx: Vec<Curve> = ideal_u
            .curves
            .iter()
            .filter(|c| **c != v)
            .cloned()
            .collect();
        let slid =
            slide_flip(model, &ctx, &v, sign > 0).ok_or(FlipError::CrossCheckMismatch)?;
        let mut new_u = rest.clone();
        new_u.push(new_arc.clone());
        let new_ptt = PartialTaggedTriangulation::new(model, new_u)
            .map_err(|_| FlipError::CrossCheckMismatch)?;
        let got = ideal_form(model, &new_ptt).curves;
        let mut want = ctx;
        want.push(slid);
        want.sort();
        want.dedup();
        if got != want {
            return Err(FlipError::CrossCheckMismatch);
        }
    }

    let mut arcs = rest;
    arcs.push(new_arc.clone());
    arcs.sort();
    Ok(Flip {
        arcs,
        new_arc,
        sign,
    })
}

/// The endpoint-sliding flip of the plain arc `v` within the collection
/// `ctx ∪ {v}`: each endpoint moves along the neighboring arc or boundary
/// segment found rotating clockwise (negative flip) or anticlockwise
/// (positive flip), sweeping the angle between them.
fn slide_flip(model: &SurfaceModel, ctx: &[Curve], v: &Curve, plus: bool) -> Option<Curve> {
    let cx = &model.complex;
    let eng = Engine::for_curve(model, v.clone(), ctx);
    let ov = eng.overlay();
    let hug = if v.steps.is_empty() {
        Some(hug_side(v))
    } else {
        None
    };
    let end_data = |which: usize| -> (Corner, Option<(usize, usize)>) {
        let (e, strand) = if which == 0 {
            (v.start, Some((0usize, 0usize)))
        } else {
            (v.end, Some((0usize, v.steps.len().wrapping_sub(1))))
        };
        let End::Corner(c) = e else {
            panic!("plain arc ends at a corner");
        };
        (c, if v.steps.is_empty() { None } else { strand })
    };
    // In the fixed global orientation the neighbor for the positive flip
    // is found rotating clockwise, and the swept angle is traversed the
    // opposite way.
    let first_of = |c: Corner, strand: Option<(usize, usize)>| {
        let cands = cands_at(cx, ctx, c);
        fan_first_path(cx, &ov, &cands, c, strand, hug, !plus)
    };
    let (c0, s0) = end_data(0);
    let (c1, s1) = end_data(1);
    let item0 = first_of(c0, s0);
    let item1 = first_of(c1, s1);

    let mut start = v.start;
    let mut end = v.end;
    let mut prefix: Vec<Slot> = Vec::new();
    let mut fan0: Vec<Slot> = Vec::new();
    let mut fan1: Vec<Slot> = Vec::new();
    let mut suffix: Vec<Slot> = Vec::new();
    let mut advance = [false, false];
    match item0 {
        None => {}
        Some((FanItem::Boundary(_, _), _)) => advance[0] = true,
        Some((FanItem::Arc(j, sel), path)) => {
            // The composite enters the swept fan from the neighbor's side,
            // so the search path is traversed backwards across partners.
            let w = oriented_from(cx, &ctx[j], sel).reversed(cx);
            fan0 = path
                .iter()
                .rev()
                .map(|&s| cx.partner(s))
                .collect::<Option<Vec<Slot>>>()?;
            prefix = w.steps.clone();
            start = w.start;
        }
    }
    match item1 {
        None => {}
        Some((FanItem::Boundary(_, _), _)) => advance[1] = true,
        Some((FanItem::Arc(j, sel), path)) => {
            let w = oriented_from(cx, &ctx[j], sel);
            fan1 = path;
            suffix = w.steps.clone();
            end = w.end;
        }
    }
    let mut steps = prefix;
    steps.extend(fan0);
    steps.extend_from_slice(&v.steps);
    steps.extend(fan1);
    steps.extend(suffix);
    let composite = Curve::new(start, steps, end);
    composite.validate(cx).ok()?;
    let mut cur = match composite.normalize_oriented(cx).ok()? {
        Normalized::Curve(c) => c,
        Normalized::Null => return None,
    };
    let dir = if plus { 1 } else { -1 };
    for (which, adv) in advance.iter().enumerate() {
        if *adv {
            advance_boundary_end(cx, &mut cur, which, dir);
            cur = match cur.normalize_oriented(cx).ok()? {
                Normalized::Curve(c) => c,
                Normalized::Null => return None,
            };
        }
    }
    match cur.normalize(cx).ok()? {
        Normalized::Curve(c) => Some(c),
        Normalized::Null => None,
    }
}

/// The mutation direction of the flip of `u` at `l`.
pub fn mutation_direction(
    model: &SurfaceModel,
    r: &PartialTaggedTriangulation,
    u: &PartialTaggedTriangulation,
    l: &TaggedArc,
) -> Result<MutationDirection, FlipError> {
    Ok(if flip_sign(model, r, u, l)? > 0 {
        MutationDirection::Right
    } else {
        MutationDirection::Left
    })
}

/// Split a dissection into its module part and shifted projective part over
/// the context.
pub fn tau_tilting_label(
    model: &SurfaceModel,
    r: &PartialTaggedTriangulation,
    u: &[TaggedArc],
) -> TauTiltingLabel {
    let rho_r: Vec<TaggedArc> = r
        .arcs
        .iter()
        .map(|g| tagged_rotation(model, g, 1))
        .collect();
    let mut module_arcs = Vec::new();
    let mut projective_shift_arcs = Vec::new();
    for a in u {
        if rho_r.contains(a) {
            projective_shift_arcs.push(a.clone());
        } else {
            module_arcs.push(a.clone());
        }
    }
    TauTiltingLabel {
        module_arcs,
        projective_shift_arcs,
    }
}

/// Does every endpoint-connected component of the context contain an arc
/// with a boundary marked endpoint?
pub fn connects_to_boundary(model: &SurfaceModel, r: &PartialTaggedTriangulation) -> bool {
    let cx = &model.complex;
    let n = r.arcs.len();
    if n == 0 {
        return true;
    }
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(comp: &mut Vec<usize>, mut i: usize) -> usize {
        while comp[i] != i {
            comp[i] = comp[comp[i]];
            i = comp[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (a1, a2) = r.arcs[i].endpoints(cx);
            let (b1, b2) = r.arcs[j].endpoints(cx);
            if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
                let (ri, rj) = (root(&mut comp, i), root(&mut comp, j));
                comp[ri] = rj;
            }
        }
    }
    for i in 0..n {
        let ri = root(&mut comp, i);
        let reaches = (0..n).any(|j| {
            if root(&mut comp, j) != ri {
                return false;
            }
            let (a, b) = r.arcs[j].endpoints(cx);
            !model.is_puncture(a) || !model.is_puncture(b)
        });
        if !reaches {
            return false;
        }
    }
    true
}

/// Interior crossings of a context arc's untagged form with the untagged
/// forms of a dissection.
pub fn int_circ(
    model: &SurfaceModel,
    gamma: &TaggedArc,
    r: &PartialTaggedTriangulation,
    u: &[TaggedArc],
) -> u64 {
    let ri = r
        .arcs
        .iter()
        .position(|a| a == gamma)
        .expect("arc belongs to the context");
    let g = ideal_form(model, r).image[ri].clone();
    let uptt =
        PartialTaggedTriangulation::new(model, u.to_vec()).expect("valid dissection");
    let ucurves = ideal_form(model, &uptt).curves;
    let mut all = alloc::vec![g];
    all.extend(ucurves.iter().cloned());
    let ov = Overlay::new(&model.complex, all);
    (1..=ucurves.len()).map(|j| ov.crossings(0, j)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::is_dissection;
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

    fn fan(m: &SurfaceModel) -> Vec<TaggedArc> {
        m.chart_arcs()
            .into_iter()
            .map(|e| {
                arc(
                    m,
                    Curve::chart_edge(
                        Corner::new(e.tri, e.side),
                        Corner::new(e.tri, (e.side + 1) % 3),
                    ),
                    [1, 1],
                )
            })
            .collect()
    }

    fn one_step(m: &SurfaceModel, a: Corner, s: Slot, b: Corner) -> TaggedArc {
        arc(
            m,
            Curve::new(End::Corner(a), alloc::vec![s], End::Corner(b)),
            [1, 1],
        )
    }

    #[test]
    fn hexagon_fan_flips_match_polygon_oracle() {
        let m = hexagon();
        let t = fan(&m);
        let r = ptt(&m, t.clone());
        // Flipping a fan diagonal inside its quadrilateral yields the other
        // diagonal of that quadrilateral.
        let expect = [
            one_step(&m, Corner::new(0, 1), Slot::new(0, 2), Corner::new(1, 2)),
            one_step(&m, Corner::new(1, 1), Slot::new(1, 2), Corner::new(2, 2)),
            one_step(&m, Corner::new(2, 1), Slot::new(2, 2), Corner::new(3, 2)),
        ];
        for (i, l) in t.iter().enumerate() {
            let f = flip(&m, &r, &t, l).unwrap();
            assert_eq!(f.new_arc, expect[i], "flip of fan diagonal {i}");
            assert_eq!(f.sign, 1);
            assert_eq!(f.arcs.len(), 3);
            assert!(is_dissection(&m, &f.arcs, &r));
            // Involution: flipping the new arc restores the original set.
            let back = flip(&m, &r, &f.arcs, &f.new_arc).unwrap();
            assert_eq!(back.new_arc, *l);
            let mut orig = t.clone();
            orig.sort();
            assert_eq!(back.arcs, orig);
            assert_eq!(back.sign, -1);
        }
    }

    #[test]
    fn flip_signs_and_labels_at_the_extremes() {
        let m = hexagon();
        let t = fan(&m);
        let r = ptt(&m, t.clone());
        let u_r = ptt(&m, t.clone());
        let rho_r: Vec<TaggedArc> = t.iter().map(|g| tagged_rotation(&m, g, 1)).collect();
        let u_rho = ptt(&m, rho_r.clone());
        for l in &t {
            assert_eq!(flip_sign(&m, &r, &u_r, l).unwrap(), 1);
            assert_eq!(
                mutation_direction(&m, &r, &u_r, l).unwrap(),
                MutationDirection::Right
            );
        }
        for l in &rho_r {
            assert_eq!(flip_sign(&m, &r, &u_rho, l).unwrap(), -1);
            assert_eq!(
                mutation_direction(&m, &r, &u_rho, l).unwrap(),
                MutationDirection::Left
            );
        }
        let lab_r = tau_tilting_label(&m, &r, &t);
        assert_eq!(lab_r.module_arcs.len(), 3);
        assert!(lab_r.projective_shift_arcs.is_empty());
        let lab_rho = tau_tilting_label(&m, &r, &rho_r);
        assert!(lab_rho.module_arcs.is_empty());
        assert_eq!(lab_rho.projective_shift_arcs.len(), 3);
        assert_eq!(flip(&m, &r, &t, &rho_r[0]), Err(FlipError::NotMember));
    }

    #[test]
    fn punctured_square_radius_flips() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![4], 1)).unwrap();
        let rad = Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2));
        let plus = arc(&m, rad.clone(), [1, 1]);
        let minus = arc(&m, rad, [1, -1]);
        let left = one_step(&m, Corner::new(0, 0), Slot::new(0, 1), Corner::new(1, 1));
        let right = one_step(&m, Corner::new(3, 1), Slot::new(3, 2), Corner::new(2, 0));
        let t = alloc::vec![plus.clone(), minus.clone(), left.clone(), right.clone()];
        let r = ptt(&m, t.clone());
        // The opposite radius, from the far corner of the square.
        let far = Curve::chart_edge(Corner::new(1, 1), Corner::new(1, 2));
        let (fa, fb) = arc(&m, far.clone(), [1, 1]).endpoints(&m.complex);
        let far_tags = |at_p: i8| {
            let mut tg = [1, 1];
            if m.is_puncture(fa) {
                tg[0] = at_p;
            }
            if m.is_puncture(fb) {
                tg[1] = at_p;
            }
            tg
        };
        let far_plus = arc(&m, far.clone(), far_tags(1));
        let far_minus = arc(&m, far, far_tags(-1));
        // Flipping the notched radius gives the plain far radius; its
        // untagged form is the enclosing loop, so the sliding construction
        // is exercised. Flipping the plain radius takes the folded-side
        // path and gives the notched far radius.
        let f_minus = flip(&m, &r, &t, &minus).unwrap();
        assert_eq!(f_minus.new_arc, far_plus);
        assert!(is_dissection(&m, &f_minus.arcs, &r));
        let back = flip(&m, &r, &f_minus.arcs, &f_minus.new_arc).unwrap();
        assert_eq!(back.new_arc, minus);
        let f_plus = flip(&m, &r, &t, &plus).unwrap();
        assert_eq!(f_plus.new_arc, far_minus);
        let back2 = flip(&m, &r, &f_plus.arcs, &f_plus.new_arc).unwrap();
        assert_eq!(back2.new_arc, plus);
        // Each flip changes exactly one arc.
        for f in [&f_minus, &f_plus] {
            let kept = f.arcs.iter().filter(|a| t.contains(a)).count();
            assert_eq!(kept, 3);
        }
    }

    #[test]
    fn boundary_connectivity() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![1], 2)).unwrap();
        let cx = &m.complex;
        let mut joining = None;
        let mut to_marked = None;
        'outer: for t in 0..cx.n_tris() {
            for s in 0..3u8 {
                let sl = Slot::new(t, s);
                if cx.is_boundary_slot(sl) {
                    continue;
                }
                let (a, b) = cx.slot_endpoints(sl);
                let c = Curve::chart_edge(Corner::new(t, s), Corner::new(t, (s + 1) % 3));
                if m.is_puncture(a) && m.is_puncture(b) && a != b {
                    joining = Some(c);
                } else if m.is_puncture(a) != m.is_puncture(b) && to_marked.is_none() {
                    to_marked = Some(c);
                }
                if joining.is_some() && to_marked.is_some() {
                    break 'outer;
                }
            }
        }
        let j = arc(&m, joining.unwrap(), [1, 1]);
        let k = arc(&m, to_marked.unwrap(), [1, 1]);
        assert!(!connects_to_boundary(&m, &ptt(&m, alloc::vec![j.clone()])));
        assert!(connects_to_boundary(&m, &ptt(&m, alloc::vec![k.clone()])));
        // One component that reaches the boundary through the second arc.
        assert!(connects_to_boundary(&m, &ptt(&m, alloc::vec![j, k])));
        assert!(connects_to_boundary(&m, &ptt(&m, alloc::vec![])));
    }

    #[test]
    fn interior_crossing_counts() {
        let m = hexagon();
        let t = fan(&m);
        let r = ptt(&m, t.clone());
        for g in &t {
            assert_eq!(int_circ(&m, g, &r, &t), 0);
        }
        // Flipped dissection: the flipped arc crosses its old partner once.
        let f = flip(&m, &r, &t, &t[0]).unwrap();
        assert_eq!(int_circ(&m, &t[0], &r, &f.arcs), 1);
        assert_eq!(int_circ(&m, &t[1], &r, &f.arcs), 0);
    }
}
