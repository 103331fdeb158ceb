//! Lattice T- and Q-operators of the open XXZ chain with diagonal
//! boundaries, the Baxter TQ relation they satisfy, and the simultaneous
//! spectrum of the commuting family.

pub mod ops;
pub mod registry;
pub mod spectrum;
pub mod tq;

pub use ops::{eta, flip_all, q_operator, q_operator_fixed, t_operator, total_sz, trace_weights, QEval, TraceOptions};
pub use registry::{check_all_transfer, check_transfer_identity, flavor_point, TransferCheckOptions, TRANSFER_IDS};
pub use spectrum::{spectrum, Eigenpair, SpectrumOptions, SpectrumReport, XGrid};
pub use tq::{chi1, chi2, tq_coefficients, tq_residual, tq_sides};
