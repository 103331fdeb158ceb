//! Scalar coefficients produced by dressing the K-operators.

use tqlab_core::scalar::{ipow, one};
use tqlab_core::{Cx, Params, Real};
use tqlab_fock::Flavor;

/// Coefficients of the decomposition of the dressed K-operators, for one
/// flavor.  Flavor 2 is flavor 1 at `zeta`-swapped parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Omega<T: Real> {
    pub w1: Cx<T>,
    pub w2: Cx<T>,
    pub wb1: Cx<T>,
    pub wb2: Cx<T>,
    /// Coefficient of the `E21` term of the `K` decomposition.
    pub w21: Cx<T>,
    /// Coefficient of the `E12` term of the `Kcheckbar` decomposition.
    pub wb12: Cx<T>,
}

/// `omega` coefficients at `x`:
///
/// `w1 = e+ x^{s0} + e- x^{-s1}`,
/// `w2 = (1 - x^{-2s}) (e+ x^{-s0} + e- q^2 x^{s1}) q^{-2}`,
/// `wb1 = (1 - x^{2s} q^4) (eb+ x^{-s0} + eb- x^{s1}) q^{-1}`,
/// `wb2 = -x^{2s} (eb+ x^{s0} + eb- q^{-2} x^{-s1}) q^7`,
/// `w21 = lambda x^{-s} (e+ x^{s1} + e- x^{-s0}) q^{-s0/s}`,
/// `wb12 = lambda x^{2 s1} (eb+ q x^{s0} + eb- q^{-1} x^{-s1}) q^{s1/s}`.
pub fn omega<T: Real>(flavor: Flavor, x: Cx<T>, params: &Params<T>) -> Omega<T> {
    let pf = match flavor {
        Flavor::One => params.clone(),
        Flavor::Two => params.zeta(),
    };
    let (s0, s1, s) = (pf.s0 as i64, pf.s1 as i64, pf.s() as i64);
    let q = pf.q();
    let lam = pf.lambda();
    let (ep, em, ebp, ebm) = (pf.eps_plus, pf.eps_minus, pf.epsbar_plus, pf.epsbar_minus);
    let xp = |k: i64| ipow(x, k);
    let o = one::<T>();
    Omega {
        w1: ep * xp(s0) + em * xp(-s1),
        w2: (o - xp(-2 * s)) * (ep * xp(-s0) + em * q * q * xp(s1)) / (q * q),
        wb1: (o - xp(2 * s) * ipow(q, 4)) * (ebp * xp(-s0) + ebm * xp(s1)) / q,
        wb2: -xp(2 * s) * (ebp * xp(s0) + ebm * xp(-s1) / (q * q)) * ipow(q, 7),
        w21: lam * xp(-s) * (ep * xp(s1) + em * xp(-s0)) * pf.pp(-s0),
        wb12: lam * xp(2 * s1) * (ebp * q * xp(s0) + ebm / q * xp(-s1)) * pf.pp(s1),
    }
}
