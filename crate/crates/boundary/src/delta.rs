//! Conjugation of coproduct images by the dressing elements.
//!
//! `G^{-1} (rho_{x/p} (x) pi_x) Delta(a) G` and
//! `Gbar^{-1} (rho_{xp} (x) pi_x) Delta'(a) Gbar` split into an `E11` part, an
//! `E22` part and, for `e0` and `f1`, an extra `1 (x) E21` term.  Here `rho_y`
//! is the evaluation of the Borel subalgebra on the flavor-1 Fock space
//! (`e0 -> y^{s0} f`, `e1 -> y^{s1} e`, `f0 -> y^{-s0} e`, `f1 -> y^{-s1} f`,
//! `q^{h0} -> q^{-h}`, `q^{h1} -> q^{h}`) and `pi_x` the fundamental
//! evaluation representation.

use crate::dress::dressing_g;
use tqlab_core::scalar::{ipow, one};
use tqlab_core::special::q_pow;
use tqlab_core::{Cx, Params, Real, TqError, TqResult};
use tqlab_fock::FockRep;
use tqlab_tensor::{mat2, unit, TensorOp};

/// Generator whose coproduct image is conjugated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaGen {
    /// `q^{xi h0}` under `G`.
    H0,
    /// `q^{xi h1}` under `G`.
    H1,
    /// `e0` under `G`.
    E0,
    /// `e1` under `G`.
    E1,
    /// `q^{xi h0}` under `Gbar`, opposite coproduct.
    Hb0,
    /// `q^{xi h1}` under `Gbar`, opposite coproduct.
    Hb1,
    /// `f0` under `Gbar`, opposite coproduct.
    F0,
    /// `f1` under `Gbar`, opposite coproduct.
    F1,
}

impl DeltaGen {
    /// All eight relations.
    pub const ALL: [DeltaGen; 8] =
        [DeltaGen::H0, DeltaGen::H1, DeltaGen::E0, DeltaGen::E1, DeltaGen::Hb0, DeltaGen::Hb1, DeltaGen::F0, DeltaGen::F1];

    /// Suffix used in identity ids.
    pub fn name(self) -> &'static str {
        match self {
            DeltaGen::H0 => "h0",
            DeltaGen::H1 => "h1",
            DeltaGen::E0 => "e0",
            DeltaGen::E1 => "e1",
            DeltaGen::Hb0 => "hb0",
            DeltaGen::Hb1 => "hb1",
            DeltaGen::F0 => "f0",
            DeltaGen::F1 => "f1",
        }
    }

    /// Parses the id suffix.
    pub fn from_name(name: &str) -> TqResult<Self> {
        Self::ALL.iter().copied().find(|g| g.name() == name).ok_or_else(|| TqError::UnknownIdentity(format!("bnd.deltaconj.{name}")))
    }

    fn barred(self) -> bool {
        matches!(self, DeltaGen::Hb0 | DeltaGen::Hb1 | DeltaGen::F0 | DeltaGen::F1)
    }
}

#[derive(Clone, Copy)]
enum Gen {
    E(u8),
    F(u8),
}

struct Images<'a, T: Real> {
    rep: &'a FockRep<T>,
    params: &'a Params<T>,
}

impl<T: Real> Images<'_, T> {
    /// `q^{c h}` on the Fock space for complex `c`.
    fn qh(&self, c: Cx<T>) -> TensorOp<T> {
        let v: Vec<Cx<T>> = self.rep.levels.iter().map(|&h| q_pow(c * Cx::new(T::lit(h as f64), T::zero()), self.params)).collect();
        TensorOp::diagonal(&v)
    }

    /// `rho(q^{c h_i})`.
    fn rho_qh(&self, i: u8, c: Cx<T>) -> TensorOp<T> {
        self.qh(if i == 0 { -c } else { c })
    }

    /// `pi(q^{c h_i})`, with `H = diag(1, -1)`.
    fn pi_qh(&self, i: u8, c: Cx<T>) -> TensorOp<T> {
        let c = if i == 0 { -c } else { c };
        mat2(q_pow(c, self.params), Cx::new(T::zero(), T::zero()), Cx::new(T::zero(), T::zero()), q_pow(-c, self.params))
    }

    fn rho(&self, g: Gen, y: Cx<T>) -> TensorOp<T> {
        let (s0, s1) = (self.params.s0 as i64, self.params.s1 as i64);
        match g {
            Gen::E(0) => self.rep.f.scale(ipow(y, s0)),
            Gen::E(_) => self.rep.e.scale(ipow(y, s1)),
            Gen::F(0) => self.rep.e.scale(ipow(y, -s0)),
            Gen::F(_) => self.rep.f.scale(ipow(y, -s1)),
        }
    }

    fn pi(&self, g: Gen, x: Cx<T>) -> TensorOp<T> {
        let (s0, s1) = (self.params.s0 as i64, self.params.s1 as i64);
        match g {
            Gen::E(0) => unit(2, 1, 0).scale(ipow(x, s0)),
            Gen::E(_) => unit(2, 0, 1).scale(ipow(x, s1)),
            Gen::F(0) => unit(2, 0, 1).scale(ipow(x, -s0)),
            Gen::F(_) => unit(2, 1, 0).scale(ipow(x, -s1)),
        }
    }

    /// `Delta(a)` (or `Delta'(a)` when `opposite`) in `rho_y (x) pi_x`.
    fn coproduct(&self, g: Gen, y: Cx<T>, x: Cx<T>, opposite: bool) -> TqResult<TensorOp<T>> {
        let one_c = one::<T>();
        let id = self.rep.identity();
        let id2 = TensorOp::identity(&[2]);
        Ok(match (g, opposite) {
            (Gen::E(i), false) => self.rho(g, y).kron(&id2).add(&self.rho_qh(i, -one_c).kron(&self.pi(g, x)))?,
            (Gen::F(i), false) => self.rho(g, y).kron(&self.pi_qh(i, one_c)).add(&id.kron(&self.pi(g, x)))?,
            (Gen::E(i), true) => id.kron(&self.pi(g, x)).add(&self.rho(g, y).kron(&self.pi_qh(i, -one_c)))?,
            (Gen::F(i), true) => self.rho_qh(i, one_c).kron(&self.pi(g, x)).add(&self.rho(g, y).kron(&id2))?,
        })
    }

    /// `q^{k h/(2s)} M q^{-k h/(2s)}`.
    fn cj(&self, k: i64, m: &TensorOp<T>) -> TqResult<TensorOp<T>> {
        TensorOp::chain(&[&self.rep.p_half_h(k), m, &self.rep.p_half_h(-k)])
    }
}

/// Both sides of one conjugation relation on `Fock_1 x C^2` at spectral
/// point `x` and Cartan exponent `xi`.
pub fn delta_conj_sides<T: Real>(
    gen: DeltaGen,
    x: Cx<T>,
    xi: Cx<T>,
    rep: &FockRep<T>,
    params: &Params<T>,
) -> TqResult<(TensorOp<T>, TensorOp<T>)> {
    let im = Images { rep, params };
    let p = params.p;
    let d = (params.s0 - params.s1) as i64;
    let barred = gen.barred();
    let g = dressing_g(rep, barred, false, params)?;
    let ginv = dressing_g(rep, barred, true, params)?;
    let e11 = unit::<T>(2, 0, 0);
    let e22 = unit::<T>(2, 1, 1);
    let e21 = unit::<T>(2, 1, 0);
    let id = rep.identity();
    // Spectral points of rho on the left-hand side and in the E11 / E22 parts.
    let (y, y11, y22, k11) = if barred { (x * p, x / p, x * ipow(p, 3), -d) } else { (x / p, x * p, x / ipow(p, 3), d) };
    let (lhs_mid, r11, r22, extra) = match gen {
        DeltaGen::H0 | DeltaGen::H1 | DeltaGen::Hb0 | DeltaGen::Hb1 => {
            let i = if matches!(gen, DeltaGen::H0 | DeltaGen::Hb0) { 0 } else { 1 };
            let mid = im.rho_qh(i, xi).kron(&im.pi_qh(i, xi));
            // rho(q^{xi(h0 - 1)}) on E11 and rho(q^{xi(h0 + 1)}) on E22; signs reversed for h1.
            let shift = q_pow(xi, params);
            let base = im.rho_qh(i, xi);
            let (a, b) = if i == 0 { (shift.inv(), shift) } else { (shift, shift.inv()) };
            (mid, base.scale(a), base.scale(b), None)
        }
        DeltaGen::E0 | DeltaGen::E1 => {
            let gg = if gen == DeltaGen::E0 { Gen::E(0) } else { Gen::E(1) };
            let extra = (gen == DeltaGen::E0).then(|| id.kron(&e21).scale(ipow(x, params.s0 as i64)));
            (im.coproduct(gg, y, x, false)?, im.rho(gg, y11), im.rho(gg, y22), extra)
        }
        DeltaGen::F0 | DeltaGen::F1 => {
            let gg = if gen == DeltaGen::F0 { Gen::F(0) } else { Gen::F(1) };
            let extra = (gen == DeltaGen::F1).then(|| id.kron(&e21).scale(ipow(x, -(params.s1 as i64))));
            (im.coproduct(gg, y, x, true)?, im.rho(gg, y11), im.rho(gg, y22), extra)
        }
    };
    let lhs = TensorOp::chain(&[&ginv, &lhs_mid, &g])?;
    let mut rhs = im.cj(k11, &r11)?.kron(&e11).add(&im.cj(-k11, &r22)?.kron(&e22))?;
    if let Some(extra) = extra {
        rhs = rhs.add(&extra)?;
    }
    Ok((lhs, rhs))
}
