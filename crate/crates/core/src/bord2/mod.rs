//! Oriented 2-bordisms: canonical forms, gluing, pants decompositions,
//! surgery on closed surfaces and corner-level generator words.

mod canonical;
mod decompose;
mod surgery;
mod word;

pub use canonical::{compose, compose_all, parse_bordism, tensor, tensor_all, Bordism2Canonical, ClosedOneManifold, Component};
pub use decompose::{compose_layers, pants_decompose, pants_decompose_with, Elementary, Layer, Strategy};
pub use surgery::{
    handle_pair, handle_pair_compose, moves, punctured_handle_compose, replay, surgery_apply, surgery_cobordism,
    surgery_path, CornerSurface, SurfaceState, SurgeryMove, DEFAULT_GENUS_CAP,
};
pub use word::{GeneratorWord, OneCell, PointSign, TwoCell};
