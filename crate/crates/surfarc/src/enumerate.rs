//! Bounded enumeration of tagged arcs and dissections.
//!
//! These searches are independent oracles for the flip-based machinery:
//! arcs are generated from raw crossing words up to a length bound and
//! canonicalized, and dissections are found as exhaustive
//! pairwise-compatible subsets of the standard arcs. The length bound is a
//! heuristic; callers should check that counts are stable when the bound
//! grows.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::arc::{intersection_number, TaggedArc};
use crate::complex::{Corner, Slot};
use crate::curve::{Curve, End};
use crate::standard::is_standard;
use crate::surface::SurfaceModel;
use crate::triang::PartialTaggedTriangulation;

/// All tagged arcs whose reduced crossing word has at most `max_steps`
/// crossings, in canonical order.
pub fn enumerate_arcs(model: &SurfaceModel, max_steps: usize) -> Vec<TaggedArc> {
    let cx = &model.complex;
    let mut found: BTreeSet<TaggedArc> = BTreeSet::new();
    let mut emit = |start: Corner, steps: &[Slot], end: Corner| {
        let c = Curve::new(End::Corner(start), steps.to_vec(), End::Corner(end));
        if c.validate(cx).is_err() {
            return;
        }
        for ta in [1i8, -1] {
            for tb in [1i8, -1] {
                if let Ok(a) = TaggedArc::normalize(model, &c, [ta, tb]) {
                    if a.curve.steps.len() <= steps.len() {
                        found.insert(a);
                    }
                }
            }
        }
    };
    // Depth-first over crossing words, skipping immediate back-crossings.
    for t in 0..cx.n_tris() {
        for s in 0..3u8 {
            let start = Corner::new(t, s);
            let mut stack: Vec<(Vec<Slot>, u32, Option<Slot>)> =
                alloc::vec![(Vec::new(), t, None)];
            while let Some((steps, cur, entry)) = stack.pop() {
                for e in 0..3u8 {
                    emit(start, &steps, Corner::new(cur, e));
                }
                if steps.len() == max_steps {
                    continue;
                }
                for e in 0..3u8 {
                    let out = Slot::new(cur, e);
                    if Some(out) == entry {
                        continue;
                    }
                    let Some(p) = cx.partner(out) else { continue };
                    let mut next = steps.clone();
                    next.push(out);
                    stack.push((next, p.tri, Some(p)));
                }
            }
        }
    }
    found.into_iter().collect()
}

/// The standard arcs among a bounded enumeration.
pub fn enumerate_standard_arcs(
    model: &SurfaceModel,
    r: &PartialTaggedTriangulation,
    max_steps: usize,
) -> Vec<TaggedArc> {
    enumerate_arcs(model, max_steps)
        .into_iter()
        .filter(|a| is_standard(model, a, r))
        .collect()
}

/// All pairwise-compatible subsets of `arcs` of size `|r|` (the dissection
/// size), in canonical order.
pub fn enumerate_dissections(
    model: &SurfaceModel,
    r: &PartialTaggedTriangulation,
    arcs: &[TaggedArc],
) -> Vec<Vec<TaggedArc>> {
    let k = r.arcs.len();
    let n = arcs.len();
    let mut compat = alloc::vec![alloc::vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let ok = intersection_number(model, &arcs[i], &arcs[j]) == 0;
            compat[i][j] = ok;
            compat[j][i] = ok;
        }
    }
    let mut out = Vec::new();
    let mut pick: Vec<usize> = Vec::new();
    fn rec(
        compat: &[Vec<bool>],
        n: usize,
        k: usize,
        from: usize,
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pick.len() == k {
            out.push(pick.clone());
            return;
        }
        let need = k - pick.len();
        for i in from..n {
            if n - i < need {
                break;
            }
            if pick.iter().all(|&j| compat[j][i]) {
                pick.push(i);
                rec(compat, n, k, i + 1, pick, out);
                pick.pop();
            }
        }
    }
    let mut sets = Vec::new();
    rec(&compat, n, k, 0, &mut pick, &mut sets);
    for s in sets {
        out.push(s.into_iter().map(|i| arcs[i].clone()).collect());
    }
    out
}
