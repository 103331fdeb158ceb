//! Root vectors of the affine algebra under the evaluation map, central
//! elements, and reconstruction of the fundamental R-matrix and the
//! flavor-1 q-oscillator L-operator from the ordered product formula of the
//! universal R-matrix.

pub mod casimir;
pub mod recon;
pub mod registry;
pub mod roots;

pub use casimir::{casimir_ef_form, casimir_fe_form, casimir_fundamental, central_ck, scalar_series_exp, scalar_series_log, series_log};
pub use recon::{l1_cartan_factor, reconstruct_l1, reconstruct_r, reconstruct_r_truncated, DEFAULT_KMAX, TAIL_TOL};
pub use registry::{check_all_kt, check_kt_identity, KtCheckOptions, KT_IDS};
pub use roots::{closed_image, q_int, recursive_roots, root_vector_image, EvalRootVector, RecursiveRoots, RootMode, Species, DEFAULT_K};
