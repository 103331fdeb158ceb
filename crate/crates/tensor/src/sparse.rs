//! Structure-aware application of small operators to large ones.
//!
//! A monodromy product never materializes its embedded factors: each factor
//! is kept as the nonzero entries of a local operator and applied to the
//! accumulated operator slot-wise, in `O(nnz * rest * side)` work.

use crate::op::{Layout, TensorOp};
use tqlab_core::scalar::zero;
use tqlab_core::{Cx, Real, TqError, TqResult};

/// Nonzero entries of a local operator together with its slot dimensions.
#[derive(Debug, Clone)]
pub struct SparseLocal<T: Real> {
    pub dims: Vec<usize>,
    pub entries: Vec<(usize, usize, Cx<T>)>,
}

impl<T: Real> SparseLocal<T> {
    /// Extracts the nonzero entries of a dense operator.
    pub fn from_dense(op: &TensorOp<T>) -> Self {
        let n = op.side();
        let mut entries = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = op.get(r, c);
                if v != zero() {
                    entries.push((r, c, v));
                }
            }
        }
        Self { dims: op.dims().to_vec(), entries }
    }

    /// Scales every entry `(r, c)` by `f(r, c)`.
    pub fn map(mut self, f: impl Fn(usize, usize, Cx<T>) -> Cx<T>) -> Self {
        for e in &mut self.entries {
            e.2 = f(e.0, e.1, e.2);
        }
        self
    }

    fn layout(&self, full: &[usize], slots: &[usize]) -> TqResult<Layout> {
        let layout = Layout::new(full, slots)?;
        if layout.local_dims != self.dims {
            return Err(TqError::ShapeMismatch(format!(
                "local dims {:?} do not match slots {:?} of {:?}",
                self.dims, slots, full
            )));
        }
        Ok(layout)
    }
}

impl<T: Real> TensorOp<T> {
    /// `self * embed(local, slots)`.
    pub fn mul_embedded(&self, local: &SparseLocal<T>, slots: &[usize]) -> TqResult<Self> {
        let layout = local.layout(self.dims(), slots)?;
        let n = self.side();
        let src = self.data();
        let mut out = vec![zero::<T>(); n * n];
        for r in 0..n {
            let row_in = &src[r * n..(r + 1) * n];
            let row_out = &mut out[r * n..(r + 1) * n];
            for &o in &layout.rest {
                for &(a, b, v) in &local.entries {
                    let x = row_in[layout.local[a] + o];
                    if x != zero() {
                        row_out[layout.local[b] + o] = row_out[layout.local[b] + o] + x * v;
                    }
                }
            }
        }
        TensorOp::from_vec(self.dims(), out)
    }

    /// `embed(local, slots) * self`.
    pub fn embedded_mul(&self, local: &SparseLocal<T>, slots: &[usize]) -> TqResult<Self> {
        let layout = local.layout(self.dims(), slots)?;
        let n = self.side();
        let src = self.data();
        let mut out = vec![zero::<T>(); n * n];
        for &o in &layout.rest {
            for &(a, b, v) in &local.entries {
                let dst = layout.local[a] + o;
                let from = layout.local[b] + o;
                let (row_out, row_in) = (dst * n, from * n);
                for c in 0..n {
                    out[row_out + c] = out[row_out + c] + v * src[row_in + c];
                }
            }
        }
        TensorOp::from_vec(self.dims(), out)
    }
}
