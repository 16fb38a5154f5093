//! Exact computations for hypergraph curves and the moduli spaces M̄₀,ₙ.

pub mod crossratio_maps;
pub mod divisor_classes;
pub mod exact_arith;
pub mod generator;
pub mod hesse_verify;
pub mod hypergraph;
pub mod realization;
pub mod stability;
