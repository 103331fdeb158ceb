//! Core of the open XXZ TQ laboratory: scalar abstraction, parameter model,
//! q-special functions, seeded sampling and residual records.

pub mod checks;
pub mod error;
pub mod params;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod special;

pub use checks::{check_all_core, check_core_identity, CORE_IDS};
pub use error::{TqError, TqResult};
pub use params::{ChainSpec, Params};
pub use report::{IdentityReport, Residual};
pub use sampling::SpectralSampler;
pub use scalar::{cx, ipow, parse_complex, Cx, Real};
pub use special::{norm_functions, q_bracket, q_exp, q_pochhammer, ExpBase, NormFunctions};

/// Double-precision complex number.
pub type C64 = num_complex::Complex<f64>;
/// Single-precision complex number.
pub type C32 = num_complex::Complex<f32>;
/// Double-precision parameter bundle.
pub type Params64 = Params<f64>;
/// Single-precision parameter bundle.
pub type Params32 = Params<f32>;
/// Double-precision chain.
pub type Chain64 = ChainSpec<f64>;
