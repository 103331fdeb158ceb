//! Boundary data of the open XXZ construction: diagonal K-matrices,
//! q-oscillator K-operators, the dressing elements `G`/`Gbar`, dressed
//! K-operators, and the registry of reflection-equation and dressing
//! identities.

pub mod coeffs;
pub mod delta;
pub mod dress;
pub mod kmat;
pub mod registry;

pub use coeffs::{omega, Omega};
pub use delta::{delta_conj_sides, DeltaGen};
pub use dress::{dressed_k_q, dressed_k_t, dressing_g};
pub use kmat::{k_matrix, k_operator, k_operator_levels, k_operator_levels_qexp, k_ratios, kbar_matrix, KOpKind};
pub use registry::{check_all_boundary, check_boundary_identity, BoundaryCheckOptions, BOUNDARY_IDS};
