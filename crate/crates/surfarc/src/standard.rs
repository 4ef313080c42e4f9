//! Standard and co-standard arcs, dissections, and index vectors.
//!
//! An arc is standard with respect to a context when its elementary
//! laminate shears the context; co-standard when the co-elementary
//! laminate does. Two further routes compute the same predicate
//! independently: a direct geometric evaluation that splits the arc into
//! segments against the context and checks the angle and first-arc rules
//! at its endpoints, and a restriction check that the shear entries vanish
//! on the complement of the context inside a chosen completion.

use alloc::vec::Vec;

use crate::arc::{intersection_number, TaggedArc};
use crate::complex::{Complex, Corner, Slot};
use crate::curve::{Curve, End, Normalized};
use crate::laminate::{co_elementary_laminate, elementary_laminate};
use crate::overlay::Overlay;
use crate::shear::{shear_vector, shears, Engine, Event, Sel, ShearVector};
use crate::surface::SurfaceModel;
use crate::triang::{ideal_form, retag, PartialTaggedTriangulation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardError {
    /// The arc is not standard (resp. co-standard) in the given context.
    NotStandard,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompletionError {
    /// The claimed completion does not contain the context.
    NotContained,
    /// The claimed completion is not a full triangulation: some laminate
    /// segment fails to cut out an angle of it.
    NotTriangulation,
}

/// Is `delta` standard with respect to `r` (its elementary laminate shears
/// `r`)?
pub fn is_standard(model: &SurfaceModel, delta: &TaggedArc, r: &PartialTaggedTriangulation) -> bool {
    shears(model, &elementary_laminate(model, delta), r)
}

/// Is `delta` co-standard with respect to `r` (its co-elementary laminate
/// shears `r`)?
pub fn is_costandard(
    model: &SurfaceModel,
    delta: &TaggedArc,
    r: &PartialTaggedTriangulation,
) -> bool {
    shears(model, &co_elementary_laminate(model, delta), r)
}

/// Independent geometric evaluation of standardness: membership or
/// adjointness, or every segment of the arc cuts out an angle of the
/// context, with the first-arc rule at the endpoints.
pub fn is_standard_geometric(
    model: &SurfaceModel,
    delta: &TaggedArc,
    r: &PartialTaggedTriangulation,
) -> bool {
    geometric(model, delta, r, false)
}

/// Geometric evaluation of co-standardness (the mirror of
/// [`is_standard_geometric`]).
pub fn is_costandard_geometric(
    model: &SurfaceModel,
    delta: &TaggedArc,
    r: &PartialTaggedTriangulation,
) -> bool {
    geometric(model, delta, r, true)
}

/// Standardness via a completion `t ⊇ r`: the shear entries of the
/// elementary laminate must vanish on every arc of `t` outside `r`.
pub fn is_standard_in(
    model: &SurfaceModel,
    delta: &TaggedArc,
    r: &PartialTaggedTriangulation,
    t: &PartialTaggedTriangulation,
) -> Result<bool, CompletionError> {
    completion_route(model, &elementary_laminate(model, delta), r, t)
}

/// Co-standardness via a completion `t ⊇ r`.
pub fn is_costandard_in(
    model: &SurfaceModel,
    delta: &TaggedArc,
    r: &PartialTaggedTriangulation,
    t: &PartialTaggedTriangulation,
) -> Result<bool, CompletionError> {
    completion_route(model, &co_elementary_laminate(model, delta), r, t)
}

fn completion_route(
    model: &SurfaceModel,
    lam: &crate::laminate::Laminate,
    r: &PartialTaggedTriangulation,
    t: &PartialTaggedTriangulation,
) -> Result<bool, CompletionError> {
    if !r.arcs.iter().all(|a| t.arcs.contains(a)) {
        return Err(CompletionError::NotContained);
    }
    let v = shear_vector(model, lam, t).map_err(|_| CompletionError::NotTriangulation)?;
    Ok(t.arcs
        .iter()
        .zip(&v.entries)
        .all(|(a, &x)| x == 0 || r.arcs.contains(a)))
}

/// The index vector of a standard arc: the negated shear vector of its
/// elementary laminate.
pub fn index_vector(
    model: &SurfaceModel,
    delta: &TaggedArc,
    r: &PartialTaggedTriangulation,
) -> Result<ShearVector, StandardError> {
    let v = shear_vector(model, &elementary_laminate(model, delta), r)
        .map_err(|_| StandardError::NotStandard)?;
    Ok(ShearVector {
        entries: v.entries.iter().map(|x| -x).collect(),
    })
}

/// The co-index vector of a co-standard arc: the negated shear vector of
/// its co-elementary laminate.
pub fn coindex_vector(
    model: &SurfaceModel,
    delta: &TaggedArc,
    r: &PartialTaggedTriangulation,
) -> Result<ShearVector, StandardError> {
    let v = shear_vector(model, &co_elementary_laminate(model, delta), r)
        .map_err(|_| StandardError::NotStandard)?;
    Ok(ShearVector {
        entries: v.entries.iter().map(|x| -x).collect(),
    })
}

/// Is `u` a dissection in the context `r`: pairwise compatible standard
/// arcs, as many as `r` has members?
pub fn is_dissection(
    model: &SurfaceModel,
    u: &[TaggedArc],
    r: &PartialTaggedTriangulation,
) -> bool {
    if u.len() != r.arcs.len() {
        return false;
    }
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            if u[i] == u[j] || intersection_number(model, &u[i], &u[j]) != 0 {
                return false;
            }
        }
    }
    u.iter().all(|d| is_standard(model, d, r))
}

/// One position in the fan of context edges around a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum FanItem {
    /// End `sel` of context curve `j` (0-based).
    Arc(usize, Sel),
    /// A boundary segment, with the fan corner at which it was met.
    Boundary(Slot, Corner),
}

/// An end of a context curve sitting at the probed vertex.
pub(crate) struct Cand {
    pub(crate) item: FanItem,
    /// Taut germ corner at the vertex.
    pub(crate) germ: Corner,
    /// Overlay strand of the germ's first crossing, when the curve has
    /// steps.
    pub(crate) strand: Option<(usize, usize)>,
    /// For 0-step curves, the side the curve runs along, in the germ's
    /// triangle.
    pub(crate) hug: Option<Slot>,
}

/// The side a 0-step corner-to-corner curve runs along.
pub(crate) fn hug_side(c: &Curve) -> Slot {
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

/// All context-curve ends at the vertex of `q`, with their fan data.
/// Overlay curve indices are shifted by one (the probed arc is curve 0).
pub(crate) fn cands_at(cx: &Complex, ctx: &[Curve], q: Corner) -> Vec<Cand> {
    let v = cx.vertex_of(q);
    let mut out = Vec::new();
    for (j, c) in ctx.iter().enumerate() {
        for sel in [Sel::Start, Sel::End] {
            let e = match sel {
                Sel::Start => c.start,
                Sel::End => c.end,
            };
            let End::Corner(g) = e else { continue };
            if cx.vertex_of(g) != v {
                continue;
            }
            let (strand, hug) = if c.steps.is_empty() {
                (None, Some(hug_side(c)))
            } else {
                let k = match sel {
                    Sel::Start => 0,
                    Sel::End => c.steps.len() - 1,
                };
                (Some((j + 1, k)), None)
            };
            out.push(Cand {
                item: FanItem::Arc(j, sel),
                germ: g,
                strand,
                hug,
            });
        }
    }
    out
}

/// Strands on the side opposite a corner, ordered anticlockwise (or
/// clockwise) as seen from that corner.
pub(crate) fn sector_strands(cx: &Complex, ov: &Overlay<'_>, c: Corner, acw: bool) -> Vec<(usize, usize)> {
    let e = c.opposite_side();
    let canon = cx.edge_of(e);
    let mut v: Vec<(usize, usize)> = ov.edge_strands(canon).to_vec();
    // Along the slot direction of `e`, increasing offset sweeps the corner
    // anticlockwise; the canonical order follows the canonical slot.
    if (canon == e) != acw {
        v.reverse();
    }
    v
}

/// The first context edge (or boundary segment) met when rotating from the
/// probed arc's germ around the vertex.
pub(crate) fn fan_first(
    cx: &Complex,
    ov: &Overlay<'_>,
    cands: &[Cand],
    c0: Corner,
    d_strand: Option<(usize, usize)>,
    d_hug: Option<Slot>,
    acw: bool,
) -> Option<FanItem> {
    fan_first_path(cx, ov, cands, c0, d_strand, d_hug, acw).map(|(it, _)| it)
}

/// Like [`fan_first`], but also returns the fan edges crossed while
/// rotating from the probed germ to the item found, as exit slots in
/// rotation order.  The rotation may wind all the way around the vertex,
/// so this path can be longer than any corner-to-corner fan.
pub(crate) fn fan_first_path(
    cx: &Complex,
    ov: &Overlay<'_>,
    cands: &[Cand],
    c0: Corner,
    d_strand: Option<(usize, usize)>,
    d_hug: Option<Slot>,
    acw: bool,
) -> Option<(FanItem, Vec<Slot>)> {
    let by_strand = |s: (usize, usize)| -> Option<FanItem> {
        cands
            .iter()
            .find(|cd| cd.strand == Some(s))
            .map(|cd| cd.item)
    };
    let next = |c: Corner| if acw { cx.acw_next(c) } else { cx.cw_next(c) };
    let fan_edge = |c: Corner| {
        if acw {
            c.incoming_side()
        } else {
            c.outgoing_side()
        }
    };
    // A 0-step curve hugging the crossed fan edge, with its germ at one of
    // the two fan corners flanking the edge at this vertex.  The flag says
    // whether the germ sits past the edge, i.e. the rotation crosses it.
    let by_hug = |c: Corner, f: Slot| -> Option<(FanItem, bool)> {
        let flank = next(c);
        cands
            .iter()
            .find(|cd| {
                cd.hug.is_some_and(|h| cx.edge_of(h) == cx.edge_of(f))
                    && (cd.germ == c || Some(cd.germ) == flank)
            })
            .map(|cd| (cd.item, Some(cd.germ) == flank))
    };
    // Remaining strands of the starting sector, past the probed arc's own
    // fan position; `tail` keeps the ones before it for the full cycle.
    let mut cur = c0;
    let mut head: Vec<(usize, usize)>;
    let mut tail: Vec<(usize, usize)> = Vec::new();
    let mut skip_first_sector = false;
    let mut path: Vec<Slot> = Vec::new();
    if let Some(ds) = d_strand {
        let all = sector_strands(cx, ov, c0, acw);
        let i = all
            .iter()
            .position(|&s| s == ds)
            .expect("probed germ strand on its opposite side");
        head = all[i + 1..].to_vec();
        tail = all[..i].to_vec();
    } else {
        let f0 = d_hug.expect("0-step probed arc hugs a side");
        // Rotating away from a hugged edge starts with a full sector:
        // this one if the edge bounds it behind the rotation, else the
        // sector just across the edge.
        if f0 == fan_edge(c0) {
            match next(c0) {
                Some(n) => {
                    cur = n;
                    path.push(f0);
                    head = sector_strands(cx, ov, cur, acw);
                }
                None => {
                    // The hugged edge is the boundary extreme itself.
                    return Some((FanItem::Boundary(f0, c0), path));
                }
            }
        } else {
            head = sector_strands(cx, ov, c0, acw);
        }
        skip_first_sector = true;
    }
    let mut budget = 4 * cx.n_tris() as usize + 8;
    let mut first_pass = true;
    loop {
        let strands = if first_pass || skip_first_sector {
            core::mem::take(&mut head)
        } else {
            sector_strands(cx, ov, cur, acw)
        };
        skip_first_sector = false;
        first_pass = false;
        for s in strands {
            if let Some(it) = by_strand(s) {
                return Some((it, path));
            }
        }
        let f = fan_edge(cur);
        match next(cur) {
            None => return Some((FanItem::Boundary(f, cur), path)),
            Some(n) => {
                if let Some((it, past)) = by_hug(cur, f) {
                    if past {
                        path.push(f);
                    }
                    return Some((it, path));
                }
                path.push(f);
                cur = n;
            }
        }
        if cur == c0 {
            // Full cycle: the leftover strands before the probed germ.
            for s in core::mem::take(&mut tail) {
                if let Some(it) = by_strand(s) {
                    return Some((it, path));
                }
            }
            return None;
        }
        budget -= 1;
        if budget == 0 {
            return None;
        }
    }
}

/// Context curve oriented so that the given end comes first.
pub(crate) fn oriented_from(cx: &Complex, c: &Curve, sel: Sel) -> Curve {
    match sel {
        Sel::Start => c.clone(),
        Sel::End => c.reversed(cx),
    }
}

/// Oriented normal form of a curve.
pub(crate) fn canon(cx: &Complex, c: &Curve) -> Curve {
    match c.normalize_oriented(cx).expect("valid probe") {
        Normalized::Curve(r) => r,
        Normalized::Null => panic!("null probe where a curve was expected"),
    }
}

/// Fan steps hugging the vertex of `from`, rotating to `to`.
pub(crate) fn fan_steps(cx: &Complex, from: Corner, to: Corner, acw: bool) -> Option<Vec<Slot>> {
    let mut c = from;
    let mut steps = Vec::new();
    let mut budget = 4 * cx.n_tris() as usize + 8;
    while c != to {
        let f = if acw {
            c.incoming_side()
        } else {
            c.outgoing_side()
        };
        steps.push(f);
        c = if acw { cx.acw_next(c)? } else { cx.cw_next(c)? };
        budget -= 1;
        if budget == 0 {
            return None;
        }
    }
    Some(steps)
}

/// Rotation direction of the first-arc rule at an arc end: clockwise at a
/// negatively tagged puncture for the standard reading, anticlockwise
/// otherwise; the co-standard reading mirrors this.
fn rule_acw(minus_puncture: bool, co: bool) -> bool {
    minus_puncture == co
}

fn geometric(
    model: &SurfaceModel,
    delta: &TaggedArc,
    r: &PartialTaggedTriangulation,
    co: bool,
) -> bool {
    let cx = &model.complex;
    if r.arcs.iter().any(|a| a == delta) {
        return true;
    }
    let (va, vb) = delta.endpoints(cx);
    if model.is_puncture(va) && model.is_puncture(vb) {
        let adj = TaggedArc::normalize(model, &delta.curve, [-delta.tags[0], -delta.tags[1]])
            .expect("adjoint of a valid arc");
        if r.arcs.iter().any(|a| *a == adj) {
            return true;
        }
    }
    let dl = retag(model, delta, r);
    let ideal = ideal_form(model, r);
    let ctx = ideal.curves.clone();
    let eng = Engine::for_curve(model, dl.curve.clone(), &ctx);
    let ov = eng.overlay();
    let events = eng.events(&ov);
    if events.is_empty() {
        return single_segment(model, &dl, &ctx, &ov, co);
    }
    for w in events.windows(2) {
        if eng.mid_certs(w[0], w[1]).is_empty() {
            return false;
        }
    }
    end_segment_ok(model, &eng, &ov, &ctx, &dl, events[0], true, co)
        && end_segment_ok(model, &eng, &ov, &ctx, &dl, *events.last().unwrap(), false, co)
}

/// Angle certificates of an end segment: the context edges at the arc's
/// endpoint that bound an angle cut out by the segment together with the
/// crossed curve.
#[allow(clippy::too_many_arguments)]
fn end_items(
    model: &SurfaceModel,
    eng: &Engine<'_>,
    ctx: &[Curve],
    cands: &[Cand],
    dl: &TaggedArc,
    ev: Event,
    head: bool,
) -> Vec<FanItem> {
    let cx = &model.complex;
    let mut out = Vec::new();
    for sel_r in [Sel::Start, Sel::End] {
        let (aend, ray) = eng.ray(ev.curve, sel_r, ev.cseg);
        let End::Corner(_) = aend else { continue };
        let mut steps = ray;
        let probe = if head {
            for &s in dl.curve.steps[..ev.lseg].iter().rev() {
                steps.push(cx.partner(s).expect("interior step"));
            }
            Curve::new(aend, steps, dl.curve.start)
        } else {
            steps.extend_from_slice(&dl.curve.steps[ev.lseg..]);
            Curve::new(aend, steps, dl.curve.end)
        };
        match probe.normalize_oriented(cx).expect("valid angle probe") {
            Normalized::Null => {
                // The crossed curve itself ends at the arc's endpoint and
                // the segment contracts onto it.
                out.push(FanItem::Arc(ev.curve, sel_r));
            }
            Normalized::Curve(rn) => {
                if rn.steps.is_empty() {
                    let End::Corner(qc) = rn.end else { continue };
                    let side = hug_side(&rn);
                    if cx.is_boundary_slot(side) {
                        out.push(FanItem::Boundary(side, qc));
                        continue;
                    }
                }
                for cd in cands {
                    let FanItem::Arc(j, sel_q) = cd.item else {
                        continue;
                    };
                    // Oriented from the angle apex towards the endpoint.
                    let toward_q = oriented_from(cx, &ctx[j], flip(sel_q));
                    if canon(cx, &toward_q) == rn {
                        out.push(cd.item);
                    }
                }
            }
        }
    }
    out.dedup();
    out
}

fn flip(s: Sel) -> Sel {
    match s {
        Sel::Start => Sel::End,
        Sel::End => Sel::Start,
    }
}

#[allow(clippy::too_many_arguments)]
fn end_segment_ok(
    model: &SurfaceModel,
    eng: &Engine<'_>,
    ov: &Overlay<'_>,
    ctx: &[Curve],
    dl: &TaggedArc,
    ev: Event,
    head: bool,
    co: bool,
) -> bool {
    let cx = &model.complex;
    let (e, tag) = if head {
        (dl.curve.start, dl.tags[0])
    } else {
        (dl.curve.end, dl.tags[1])
    };
    let End::Corner(c0) = e else {
        return false;
    };
    let (strand, hug) = if dl.curve.steps.is_empty() {
        (None, Some(hug_side(&dl.curve)))
    } else if head {
        (Some((0usize, 0usize)), None)
    } else {
        (Some((0usize, dl.curve.steps.len() - 1)), None)
    };
    let minus = model.is_puncture(cx.vertex_of(c0)) && tag < 0;
    let cands = cands_at(cx, ctx, c0);
    let Some(first) = fan_first(cx, ov, &cands, c0, strand, hug, rule_acw(minus, co)) else {
        return false;
    };
    end_items(model, eng, ctx, &cands, dl, ev, head).contains(&first)
}

/// The whole arc is a single segment: one endpoint must be a negatively
/// tagged puncture (on the standard side fixed by `co`), and the arc must
/// cut out the angle between the first context edges at its two ends.
fn single_segment(
    model: &SurfaceModel,
    dl: &TaggedArc,
    ctx: &[Curve],
    ov: &Overlay<'_>,
    co: bool,
) -> bool {
    let cx = &model.complex;
    let (End::Corner(ca), End::Corner(cb)) = (dl.curve.start, dl.curve.end) else {
        return false;
    };
    let minus_at = |c: Corner, t: i8| model.is_puncture(cx.vertex_of(c)) && t < 0;
    let (cm, co_c) = match (minus_at(ca, dl.tags[0]), minus_at(cb, dl.tags[1])) {
        (true, false) => (ca, cb),
        (false, true) => (cb, ca),
        _ => return false,
    };
    let strand_at = |c: Corner| -> Option<(usize, usize)> {
        if dl.curve.steps.is_empty() {
            None
        } else if c == cm && (cm == ca) || c == co_c && (co_c == ca) {
            Some((0, 0))
        } else {
            Some((0, dl.curve.steps.len() - 1))
        }
    };
    let hug = if dl.curve.steps.is_empty() {
        Some(hug_side(&dl.curve))
    } else {
        None
    };
    let first_of = |c: Corner, acw: bool| {
        let cands = cands_at(cx, ctx, c);
        fan_first(cx, ov, &cands, c, strand_at(c), hug, acw)
    };
    let Some(item_m) = first_of(cm, rule_acw(true, co)) else {
        return false;
    };
    let Some(item_o) = first_of(co_c, rule_acw(false, co)) else {
        return false;
    };
    // Paths from each endpoint along its first edge towards the apex.
    let to_path = |item: FanItem, q: Corner| -> Curve {
        match item {
            FanItem::Arc(j, sel) => {
                let _ = q;
                oriented_from(cx, &ctx[j], sel)
            }
            FanItem::Boundary(s, qc) => {
                let other = if qc.corner == s.side {
                    Corner::new(s.tri, (s.side + 1) % 3)
                } else {
                    Corner::new(s.tri, s.side)
                };
                Curve::new(End::Corner(qc), Vec::new(), End::Corner(other))
            }
        }
    };
    let pm = to_path(item_m, cm);
    let po = to_path(item_o, co_c);
    let (End::Corner(wm), End::Corner(wo)) = (pm.end, po.end) else {
        return false;
    };
    if cx.vertex_of(wm) != cx.vertex_of(wo) {
        return false;
    }
    let po_rev = po.reversed(cx);
    let End::Corner(wo_rev) = po_rev.start else {
        return false;
    };
    // The arc oriented from the negatively tagged end.
    let want = if cm == ca {
        canon(cx, &dl.curve)
    } else {
        canon(cx, &dl.curve.reversed(cx))
    };
    for acw in [true, false] {
        let Some(fan) = fan_steps(cx, wm, wo_rev, acw) else {
            continue;
        };
        let mut steps = pm.steps.clone();
        steps.extend(fan);
        steps.extend_from_slice(&po_rev.steps);
        let composite = Curve::new(pm.start, steps, po_rev.end);
        if composite.validate(cx).is_err() {
            continue;
        }
        if let Ok(Normalized::Curve(rn)) = composite.normalize_oriented(cx) {
            if rn == want {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::tagged_rotation;
    use crate::surface::{build_surface, SurfaceSpec};

    fn arc(m: &SurfaceModel, c: Curve, tags: [i8; 2]) -> TaggedArc {
        TaggedArc::normalize(m, &c, tags).unwrap()
    }

    fn ptt(m: &SurfaceModel, arcs: Vec<TaggedArc>) -> PartialTaggedTriangulation {
        PartialTaggedTriangulation::new(m, arcs).unwrap()
    }

    fn hexagon_arcs(m: &SurfaceModel) -> Vec<TaggedArc> {
        let a02 = arc(
            m,
            Curve::chart_edge(Corner::new(0, 2), Corner::new(0, 0)),
            [1, 1],
        );
        let a03 = arc(
            m,
            Curve::chart_edge(Corner::new(1, 2), Corner::new(1, 0)),
            [1, 1],
        );
        let mut out = Vec::new();
        let mut d = a02;
        for _ in 0..6 {
            out.push(d.clone());
            d = tagged_rotation(m, &d, 1);
        }
        let mut d = a03;
        for _ in 0..3 {
            out.push(d.clone());
            d = tagged_rotation(m, &d, 1);
        }
        assert_eq!(out.len(), 9);
        out
    }

    #[test]
    fn hexagon_census_routes_agree() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![6], 0)).unwrap();
        let all = hexagon_arcs(&m);
        let r = ptt(&m, alloc::vec![all[0].clone()]);
        let fan: Vec<TaggedArc> = m
            .chart_arcs()
            .into_iter()
            .map(|e| {
                arc(
                    &m,
                    Curve::chart_edge(
                        Corner::new(e.tri, e.side),
                        Corner::new(e.tri, (e.side + 1) % 3),
                    ),
                    [1, 1],
                )
            })
            .collect();
        let t = ptt(&m, fan);
        let mut std_set = Vec::new();
        let mut cstd_set = Vec::new();
        for d in &all {
            let s1 = is_standard(&m, d, &r);
            let s2 = is_standard_geometric(&m, d, &r);
            let s3 = is_standard_in(&m, d, &r, &t).unwrap();
            assert_eq!(s1, s2, "standard routes disagree on {:?}", d.curve);
            assert_eq!(s1, s3, "completion route disagrees on {:?}", d.curve);
            let c1 = is_costandard(&m, d, &r);
            let c2 = is_costandard_geometric(&m, d, &r);
            let c3 = is_costandard_in(&m, d, &r, &t).unwrap();
            assert_eq!(c1, c2, "co-standard routes disagree on {:?}", d.curve);
            assert_eq!(c1, c3, "co-completion route disagrees on {:?}", d.curve);
            if s1 {
                std_set.push(d.clone());
            }
            if c1 {
                cstd_set.push(d.clone());
            }
        }
        // The member itself and its rotate are the only standard arcs; the
        // member and its inverse rotate the only co-standard ones.
        assert_eq!(std_set.len(), 2);
        assert!(std_set.contains(&all[0]));
        assert!(std_set.contains(&tagged_rotation(&m, &all[0], 1)));
        assert_eq!(cstd_set.len(), 2);
        assert!(cstd_set.contains(&all[0]));
        assert!(cstd_set.contains(&tagged_rotation(&m, &all[0], -1)));
    }

    #[test]
    fn full_context_all_sample_arcs_standard() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![4], 1)).unwrap();
        let rad = Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2));
        let plus = arc(&m, rad.clone(), [1, 1]);
        let minus = arc(&m, rad, [1, -1]);
        let left = arc(
            &m,
            Curve::new(
                End::Corner(Corner::new(0, 0)),
                alloc::vec![Slot::new(0, 1)],
                End::Corner(Corner::new(1, 1)),
            ),
            [1, 1],
        );
        let right = arc(
            &m,
            Curve::new(
                End::Corner(Corner::new(3, 1)),
                alloc::vec![Slot::new(3, 2)],
                End::Corner(Corner::new(2, 0)),
            ),
            [1, 1],
        );
        let t = ptt(&m, alloc::vec![plus, minus, left, right]);
        let mut samples: Vec<TaggedArc> = t.arcs.clone();
        for d in t.arcs.clone() {
            samples.push(tagged_rotation(&m, &d, 1));
            samples.push(tagged_rotation(&m, &d, -1));
        }
        for d in &samples {
            assert!(is_standard(&m, d, &t), "not standard: {:?}", d);
            assert!(
                is_standard_geometric(&m, d, &t),
                "geometric route rejects: {:?}",
                d
            );
            assert!(is_standard_in(&m, d, &t, &t).unwrap());
            assert!(is_costandard(&m, d, &t), "not co-standard: {:?}", d);
            assert!(
                is_costandard_geometric(&m, d, &t),
                "co-geometric route rejects: {:?}",
                d
            );
            assert!(is_costandard_in(&m, d, &t, &t).unwrap());
        }
    }

    #[test]
    fn partial_notched_radius_census() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![4], 1)).unwrap();
        let rad = Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2));
        let plus = arc(&m, rad.clone(), [1, 1]);
        let minus = arc(&m, rad, [1, -1]);
        let r = ptt(&m, alloc::vec![minus.clone()]);
        let mut samples = alloc::vec![plus.clone(), minus.clone()];
        for d in [plus, minus] {
            samples.push(tagged_rotation(&m, &d, 1));
            samples.push(tagged_rotation(&m, &d, -1));
        }
        for d in &samples {
            assert_eq!(
                is_standard(&m, d, &r),
                is_standard_geometric(&m, d, &r),
                "routes disagree on {:?}",
                d
            );
            assert_eq!(
                is_costandard(&m, d, &r),
                is_costandard_geometric(&m, d, &r),
                "co-routes disagree on {:?}",
                d
            );
        }
        // The member and its rotate are standard; the member's adjoint
        // candidate (same curve, plain tags) is not.
        assert!(is_standard(&m, &samples[1], &r));
        assert!(is_standard(&m, &tagged_rotation(&m, &samples[1], 1), &r));
        assert!(!is_standard(&m, &samples[0], &r));
    }

    #[test]
    fn adjoint_arc_is_standard() {
        // Disc with one marked point and two punctures; the arc joining
        // the punctures and its adjoint (both tags negated).
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![1], 2)).unwrap();
        let mut joining = None;
        'outer: for t in 0..m.complex.n_tris() {
            for s in 0..3u8 {
                let sl = Slot::new(t, s);
                if m.complex.is_boundary_slot(sl) {
                    continue;
                }
                let (a, b) = m.complex.slot_endpoints(sl);
                if m.is_puncture(a) && m.is_puncture(b) && a != b {
                    joining = Some(Curve::chart_edge(
                        Corner::new(t, s),
                        Corner::new(t, (s + 1) % 3),
                    ));
                    break 'outer;
                }
            }
        }
        let j = joining.expect("chart edge joining the two punctures");
        let d = arc(&m, j, [1, 1]);
        let adj = arc(&m, d.curve.clone(), [-1, -1]);
        let r = ptt(&m, alloc::vec![d.clone()]);
        assert!(is_standard(&m, &adj, &r));
        assert!(is_standard_geometric(&m, &adj, &r));
        assert!(is_costandard(&m, &adj, &r));
        assert!(is_costandard_geometric(&m, &adj, &r));
    }

    #[test]
    fn index_vectors_and_dissections() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![6], 0)).unwrap();
        let all = hexagon_arcs(&m);
        let r = ptt(&m, alloc::vec![all[0].clone()]);
        let member = &all[0];
        let rot = tagged_rotation(&m, member, 1);
        assert_eq!(
            index_vector(&m, member, &r).unwrap().entries,
            alloc::vec![1]
        );
        assert_eq!(index_vector(&m, &rot, &r).unwrap().entries, alloc::vec![-1]);
        assert_eq!(
            coindex_vector(&m, member, &r).unwrap().entries,
            alloc::vec![-1]
        );
        // A distant diagonal is not standard: no index vector.
        let far = all
            .iter()
            .find(|d| {
                **d != *member && !is_standard(&m, d, &r) && intersection_number(&m, d, member) == 0
            })
            .unwrap();
        assert_eq!(
            index_vector(&m, far, &r),
            Err(StandardError::NotStandard)
        );
        assert!(is_dissection(&m, &[member.clone()], &r));
        assert!(is_dissection(&m, &[rot.clone()], &r));
        assert!(!is_dissection(&m, &[far.clone()], &r));
        assert!(!is_dissection(&m, &[], &r));
    }
}

