//! R-matrices and q-oscillator L-operators of the open XXZ construction,
//! the symmetry maps `sigma`/`zeta`, and the registry of Lax-level
//! identities (inverses, transpositions, RLL relations, unitarity).

pub mod ops;
pub mod registry;

pub use ops::{block, from_blocks, g_matrix, l_operator, r_matrix, rbar_matrix, sigma_map, zeta_params, LaxKind, LaxShape};
pub use registry::{check_all_lax, check_lax_identity, LaxCheckOptions, LAX_IDS};
