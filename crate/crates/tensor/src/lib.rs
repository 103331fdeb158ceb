//! Shape-aware complex tensor-operator algebra.

pub mod op;
pub mod sparse;

pub use op::{strides, Layout, TensorOp};
pub use sparse::SparseLocal;

/// Double-precision tensor operator.
pub type TensorOp64 = TensorOp<f64>;

use tqlab_core::scalar::{one, zero};
use tqlab_core::{Cx, Real};

/// Matrix unit `E_ij` (0-based) of size `d`.
pub fn unit<T: Real>(d: usize, i: usize, j: usize) -> TensorOp<T> {
    let mut m = TensorOp::zeros(&[d]);
    m.set(i, j, one());
    m
}

/// 2x2 operator from its entries.
pub fn mat2<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, d: Cx<T>) -> TensorOp<T> {
    TensorOp::from_vec(&[2], vec![a, b, c, d]).expect("2x2 shape")
}

/// The flip `E_12 + E_21`.
pub fn flip<T: Real>() -> TensorOp<T> {
    mat2(zero(), one(), one(), zero())
}

/// Kronecker power of a single-slot operator.
pub fn kron_power<T: Real>(op: &TensorOp<T>, n: usize) -> TensorOp<T> {
    let mut acc = TensorOp::identity(&[]);
    for _ in 0..n {
        acc = acc.kron(op);
    }
    acc
}
