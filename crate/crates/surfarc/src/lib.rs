//! Combinatorial engine for tagged arcs on punctured marked surfaces.
//!
//! The crate models oriented surfaces with marked points and punctures as
//! glued-triangle complexes, represents tagged arcs and laminates as reduced
//! crossing words over a fixed chart, and builds on top of that: intersection
//! numbers, tagged rotation, surface cutting, shear coordinate vectors,
//! standard dissections, signed flips and exchange graphs, and extraction of
//! the associated tiling / skew-tiling algebra presentations.
//!
//! The crate is `no_std` (with `alloc`); enable the default `std` feature for
//! `std::error::Error` impls.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod algebra;
pub mod arc;
pub mod complex;
pub mod curve;
pub mod laminate;
pub mod overlay;
pub mod rotation;
pub mod shear;
pub mod cut;
pub mod dissection;
pub mod enumerate;
pub mod graph;
pub mod standard;
pub mod surface;
pub mod triang;

pub use algebra::{
    skew_tiling_presentation, tiling_presentation, validate_skew_gentle, AlgebraError, Arrow,
    PresentationMode, QuiverPresentation, SkewGentleTriple,
};
pub use curve::{Curve, CurveError, End, Normalized};
pub use arc::{intersection_number, ArcError, TaggedArc};
pub use complex::{Complex, Corner, Slot, VertexId, VertexKind};
pub use surface::{build_surface, SurfaceError, SurfaceModel, SurfaceSpec};
pub use cut::{cut, relative_rotation, CutError, CutResult};
pub use enumerate::{enumerate_arcs, enumerate_dissections, enumerate_standard_arcs};
pub use graph::{
    check_connected, exchange_graph, ConnectivityReport, ExchangeGraph, GraphEdge, GraphError,
    GraphLimits,
};
pub use dissection::{
    connects_to_boundary, flip, flip_sign, int_circ, mutation_direction, tau_tilting_label,
    Flip, FlipError, MutationDirection, TauTiltingLabel,
};
pub use standard::{
    coindex_vector, index_vector, is_costandard, is_dissection, is_standard, CompletionError,
    StandardError,
};
