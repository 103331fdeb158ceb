//! Dressing elements `G`, `Gbar` and Sklyanin-dressed K-operators.

use crate::kmat::{k_matrix, k_operator, KOpKind};
use tqlab_core::scalar::zero;
use tqlab_core::{ChainSpec, Cx, Params, Real, TqError, TqResult};
use tqlab_fock::{Flavor, FockRep};
use tqlab_lax::{from_blocks, l_operator, r_matrix, rbar_matrix, LaxKind, LaxShape};
use tqlab_tensor::{SparseLocal, TensorOp};

/// `G`, `G^{-1}`, `Gbar` or `Gbar^{-1}` on `Fock_1 x C^2`:
///
/// `G = q^{-h/2} E11 + q^{h/2} E22 - lambda q^{-s0/s} q^{-h/2} f E12`,
/// `G^{-1} = q^{h/2} E11 + q^{-h/2} E22 + lambda q^{-s0/s} q^{-1} q^{-h/2} f E12`;
/// the barred elements carry `q^{-s1/s}` instead of `q^{-s0/s}`.
pub fn dressing_g<T: Real>(rep: &FockRep<T>, barred: bool, inverse: bool, params: &Params<T>) -> TqResult<TensorOp<T>> {
    if rep.flavor != Flavor::One {
        return Err(TqError::ShapeMismatch("dressing elements act on the flavor-1 Fock space".into()));
    }
    let s = params.s() as i64;
    let shift = if barred { params.s1 } else { params.s0 } as i64;
    let lam = params.lambda();
    let coeff = if inverse { lam * params.pp(-shift) / params.q() } else { -lam * params.pp(-shift) };
    let (d11, d22) = if inverse { (rep.p_half_h(s), rep.p_half_h(-s)) } else { (rep.p_half_h(-s), rep.p_half_h(s)) };
    let b12 = rep.p_half_h(-s).matmul(&rep.f)?.scale(coeff);
    let b21 = TensorOp::zeros(&[rep.cutoff]);
    from_blocks([[&d11, &b12], [&b21, &d22]])
}

fn check_chain<T: Real>(chain: &ChainSpec<T>) -> TqResult<()> {
    if chain.xi.iter().any(|z| *z == zero()) {
        return Err(TqError::InvalidParams("inhomogeneities must be nonzero".into()));
    }
    Ok(())
}

/// Dressed K-matrix of a T-operator on `C^2_aux x (C^2)^L`:
/// `R_{0L}(1/(x xi_L)) ... R_{01}(1/(x xi_1)) K_0(x) Rbar_{01}(x/xi_1) ... Rbar_{0L}(x/xi_L)`.
pub fn dressed_k_t<T: Real>(x: Cx<T>, chain: &ChainSpec<T>, params: &Params<T>) -> TqResult<TensorOp<T>> {
    check_chain(chain)?;
    let l = chain.len();
    let mut dims = vec![2];
    dims.extend(std::iter::repeat_n(2, l));
    let mut m = k_matrix(x, params).embed(&[0], &dims)?;
    for k in 0..l {
        let left = SparseLocal::from_dense(&r_matrix((x * chain.xi[k]).inv(), params));
        m = m.embedded_mul(&left, &[0, k + 1])?;
        let right = SparseLocal::from_dense(&rbar_matrix(x / chain.xi[k], params));
        m = m.mul_embedded(&right, &[0, k + 1])?;
    }
    Ok(m)
}

/// Dressed K-operator of a Q-operator on `Fock x (C^2)^L`:
/// `L_{0L}(1/(x xi_L)) ... L_{01}(1/(x xi_1)) K^{(a)}_0(x) Lbar_{01}(x/xi_1) ... Lbar_{0L}(x/xi_L)`.
pub fn dressed_k_q<T: Real>(x: Cx<T>, rep: &FockRep<T>, chain: &ChainSpec<T>, params: &Params<T>) -> TqResult<TensorOp<T>> {
    check_chain(chain)?;
    let l = chain.len();
    let mut dims = vec![rep.cutoff];
    dims.extend(std::iter::repeat_n(2, l));
    let mut m = k_operator(KOpKind::K, x, rep, params)?.embed(&[0], &dims)?;
    for k in 0..l {
        let lk = l_operator(LaxKind::new(LaxShape::Plain, rep.flavor), (x * chain.xi[k]).inv(), rep, params)?;
        m = m.embedded_mul(&SparseLocal::from_dense(&lk), &[0, k + 1])?;
        let rk = l_operator(LaxKind::new(LaxShape::Bar, rep.flavor), x / chain.xi[k], rep, params)?;
        m = m.mul_embedded(&SparseLocal::from_dense(&rk), &[0, k + 1])?;
    }
    Ok(m)
}
