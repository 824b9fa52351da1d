//! Iterated T-shifts and the weave they assemble into.

mod ngraph;
mod pipeline;
mod tshift;

pub use ngraph::{boundary_braid, build_weave, shift_layers, validate_ngraph, BraidWord, Layers, WeaveGraph, WeaveVertex};
pub use pipeline::{symmetric_weave_pipeline, weave_rotation, Certificates, LayerSite, PipelineReport, WeaveCertificate};
pub use tshift::{t_shift, Provenance, TShift};
