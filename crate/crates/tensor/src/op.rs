//! Dense square operator on a tensor product of slots.
//!
//! Basis ordering is row-major with the leftmost slot most significant, so
//! `kron(A, B)` places `A` on slot 0.

use num_complex::Complex;
use tqlab_core::scalar::{one, widen, zero};
use tqlab_core::{Cx, Real, Residual, TqError, TqResult};

/// Complex square matrix tagged with its ordered slot dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorOp<T: Real> {
    dims: Vec<usize>,
    side: usize,
    data: Vec<Cx<T>>,
}

fn product(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// Row-major strides of a slot list.
pub fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

impl<T: Real> TensorOp<T> {
    /// Zero operator.
    pub fn zeros(dims: &[usize]) -> Self {
        let side = product(dims);
        Self { dims: dims.to_vec(), side, data: vec![zero(); side * side] }
    }

    /// Identity operator.
    pub fn identity(dims: &[usize]) -> Self {
        let mut m = Self::zeros(dims);
        for i in 0..m.side {
            m.data[i * m.side + i] = one();
        }
        m
    }

    /// Diagonal operator on a single slot.
    pub fn diagonal(values: &[Cx<T>]) -> Self {
        let mut m = Self::zeros(&[values.len()]);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * m.side + i] = v;
        }
        m
    }

    /// Operator from an entry function.
    pub fn from_fn(dims: &[usize], f: impl Fn(usize, usize) -> Cx<T>) -> Self {
        let side = product(dims);
        let mut data = Vec::with_capacity(side * side);
        for r in 0..side {
            for c in 0..side {
                data.push(f(r, c));
            }
        }
        Self { dims: dims.to_vec(), side, data }
    }

    /// Operator from row-major data.
    pub fn from_vec(dims: &[usize], data: Vec<Cx<T>>) -> TqResult<Self> {
        let side = product(dims);
        if data.len() != side * side {
            return Err(TqError::ShapeMismatch(format!(
                "{} entries for dims {:?} (side {side})",
                data.len(),
                dims
            )));
        }
        Ok(Self { dims: dims.to_vec(), side, data })
    }

    /// Slot dimensions.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Matrix side length.
    pub fn side(&self) -> usize {
        self.side
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Cx<T>] {
        &self.data
    }

    /// Mutable row-major entries.
    pub fn data_mut(&mut self) -> &mut [Cx<T>] {
        &mut self.data
    }

    /// Entry `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> Cx<T> {
        self.data[r * self.side + c]
    }

    /// Sets entry `(r, c)`.
    pub fn set(&mut self, r: usize, c: usize, v: Cx<T>) {
        self.data[r * self.side + c] = v;
    }

    /// Adds to entry `(r, c)`.
    pub fn add_at(&mut self, r: usize, c: usize, v: Cx<T>) {
        self.data[r * self.side + c] = self.data[r * self.side + c] + v;
    }

    /// Reinterprets the slot structure without touching entries.
    pub fn with_dims(mut self, dims: &[usize]) -> TqResult<Self> {
        if product(dims) != self.side {
            return Err(TqError::ShapeMismatch(format!("dims {:?} do not factor side {}", dims, self.side)));
        }
        self.dims = dims.to_vec();
        Ok(self)
    }

    fn check_same(&self, other: &Self, what: &str) -> TqResult<()> {
        if self.dims != other.dims {
            return Err(TqError::ShapeMismatch(format!("{what}: {:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(())
    }

    fn check_slot(&self, slot: usize) -> TqResult<()> {
        if slot >= self.dims.len() {
            return Err(TqError::ShapeMismatch(format!("slot {slot} out of range for dims {:?}", self.dims)));
        }
        Ok(())
    }

    /// `self + other`.
    pub fn add(&self, other: &Self) -> TqResult<Self> {
        self.check_same(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { data, ..self.clone() })
    }

    /// `self - other`.
    pub fn sub(&self, other: &Self) -> TqResult<Self> {
        self.check_same(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { data, ..self.clone() })
    }

    /// `z * self`.
    pub fn scale(&self, z: Cx<T>) -> Self {
        Self { data: self.data.iter().map(|a| a * z).collect(), ..self.clone() }
    }

    /// `self += z * other`.
    pub fn axpy(&mut self, z: Cx<T>, other: &Self) -> TqResult<()> {
        self.check_same(other, "axpy")?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = *a + z * b;
        }
        Ok(())
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> TqResult<Self> {
        self.check_same(other, "matmul")?;
        let n = self.side;
        let mut out = vec![zero::<T>(); n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == zero() {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, b) in row.iter_mut().zip(brow) {
                    *o = *o + a * b;
                }
            }
        }
        Ok(Self { dims: self.dims.clone(), side: n, data: out })
    }

    /// Product of a sequence of operators, left to right.
    pub fn chain(ops: &[&Self]) -> TqResult<Self> {
        let first = ops.first().ok_or_else(|| TqError::ShapeMismatch("empty product".into()))?;
        let mut acc = (*first).clone();
        for op in &ops[1..] {
            acc = acc.matmul(op)?;
        }
        Ok(acc)
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> TqResult<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// Kronecker product; dims are concatenated.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.side, other.side);
        let side = n * m;
        let mut data = vec![zero::<T>(); side * side];
        for i in 0..n {
            for j in 0..n {
                let a = self.data[i * n + j];
                if a == zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        data[(i * m + k) * side + j * m + l] = a * other.data[k * m + l];
                    }
                }
            }
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { dims, side, data }
    }

    /// Places `self` on the listed slots of a product space with slot
    /// dimensions `dims`; the identity acts everywhere else.
    ///
    /// Slots may be non-adjacent and in any order: the k-th slot of `self`
    /// lands on `slots[k]`.
    pub fn embed(&self, slots: &[usize], dims: &[usize]) -> TqResult<Self> {
        let layout = Layout::new(dims, slots)?;
        if layout.local_dims != self.dims {
            return Err(TqError::ShapeMismatch(format!(
                "operator dims {:?} do not match slots {:?} of {:?}",
                self.dims, slots, dims
            )));
        }
        let mut out = Self::zeros(dims);
        let n = self.side;
        for a in 0..n {
            for b in 0..n {
                let v = self.data[a * n + b];
                if v == zero() {
                    continue;
                }
                for &o in &layout.rest {
                    out.set(layout.local[a] + o, layout.local[b] + o, v);
                }
            }
        }
        Ok(out)
    }

    /// Trace over one slot.
    pub fn partial_trace(&self, slot: usize) -> TqResult<Self> {
        self.check_slot(slot)?;
        let mut dims = self.dims.clone();
        let d = dims.remove(slot);
        let st = strides(&self.dims)[slot];
        let outer = self.side / (d * st);
        let mut out = Self::zeros(&dims);
        let m = out.side;
        for hi_r in 0..outer {
            for lo_r in 0..st {
                let r = hi_r * st + lo_r;
                for hi_c in 0..outer {
                    for lo_c in 0..st {
                        let c = hi_c * st + lo_c;
                        let mut acc = zero::<T>();
                        for k in 0..d {
                            let rr = hi_r * d * st + k * st + lo_r;
                            let cc = hi_c * d * st + k * st + lo_c;
                            acc = acc + self.data[rr * self.side + cc];
                        }
                        out.data[r * m + c] = acc;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Partial transposition on one slot.
    pub fn slot_transpose(&self, slot: usize) -> TqResult<Self> {
        self.check_slot(slot)?;
        let d = self.dims[slot];
        let st = strides(&self.dims)[slot];
        let mut out = Self::zeros(&self.dims);
        let n = self.side;
        for r in 0..n {
            let dr = (r / st) % d;
            for c in 0..n {
                let dc = (c / st) % d;
                let r2 = r - dr * st + dc * st;
                let c2 = c - dc * st + dr * st;
                out.data[r2 * n + c2] = self.data[r * n + c];
            }
        }
        Ok(out)
    }

    /// Full transpose.
    pub fn transpose(&self) -> Self {
        let n = self.side;
        Self::from_fn(&self.dims, |r, c| self.data[c * n + r])
    }

    /// Operator restricted to basis states whose index on `slot` is `< keep`.
    pub fn restrict_slot(&self, slot: usize, keep: usize) -> TqResult<Self> {
        self.check_slot(slot)?;
        let d = self.dims[slot];
        let keep = keep.min(d);
        let st = strides(&self.dims)[slot];
        let idx: Vec<usize> = (0..self.side).filter(|i| (i / st) % d < keep).collect();
        let mut dims = self.dims.clone();
        dims[slot] = keep;
        let mut out = Self::zeros(&dims);
        let m = idx.len();
        for (a, &r) in idx.iter().enumerate() {
            for (b, &c) in idx.iter().enumerate() {
                out.data[a * m + b] = self.data[r * self.side + c];
            }
        }
        Ok(out)
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| widen(*z).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| widen(*z).norm()).fold(0.0, f64::max)
    }

    /// Trace.
    pub fn trace(&self) -> Cx<T> {
        (0..self.side).fold(zero(), |acc, i| acc + self.data[i * self.side + i])
    }

    /// Relative residual `||self - reference||_F / max(1, ||reference||_F)`.
    pub fn rel_residual(&self, reference: &Self) -> TqResult<Residual> {
        self.check_same(reference, "rel_residual")?;
        let diff: f64 = self.data.iter().zip(&reference.data).map(|(a, b)| widen(a - b).norm_sqr()).sum::<f64>().sqrt();
        Ok(Residual::from_norms(diff, reference.frobenius()))
    }

    /// Level-balanced residual for operators with a Fock slot.
    ///
    /// Compares only basis states with index `< keep` on `slot` and reports
    /// the worst relative residual over the row slabs of fixed `slot`
    /// index, so that entries growing with the level cannot mask
    /// discrepancies on low levels.
    pub fn slab_residual(&self, reference: &Self, slot: usize, keep: usize) -> TqResult<Residual> {
        self.check_same(reference, "slab_residual")?;
        let a = self.restrict_slot(slot, keep)?;
        let b = reference.restrict_slot(slot, keep)?;
        let d = a.dims[slot];
        let st = strides(&a.dims)[slot];
        let n = a.side;
        let mut diff = vec![0.0_f64; d];
        let mut refn = vec![0.0_f64; d];
        for r in 0..n {
            let lvl = (r / st) % d;
            for c in 0..n {
                diff[lvl] += widen(a.data[r * n + c] - b.data[r * n + c]).norm_sqr();
                refn[lvl] += widen(b.data[r * n + c]).norm_sqr();
            }
        }
        let worst = (0..d).map(|l| Residual::from_norms(diff[l].sqrt(), refn[l].sqrt())).fold(Residual::default(), Residual::max);
        Ok(worst)
    }

    /// Converts to double precision.
    pub fn to_f64(&self) -> TensorOp<f64> {
        TensorOp { dims: self.dims.clone(), side: self.side, data: self.data.iter().map(|z| widen(*z)).collect() }
    }

    /// Matrix dump: a `dims` header and one `row col re im` line per nonzero.
    pub fn dump(&self) -> String {
        let mut out = String::from("dims");
        for d in &self.dims {
            out.push_str(&format!(" {d}"));
        }
        out.push('\n');
        for r in 0..self.side {
            for c in 0..self.side {
                let z: Complex<f64> = widen(self.data[r * self.side + c]);
                if z != Complex::new(0.0, 0.0) {
                    out.push_str(&format!("{r} {c} {:.17e} {:.17e}\n", z.re, z.im));
                }
            }
        }
        out
    }

    /// Parses [`TensorOp::dump`] output.
    pub fn parse_dump(text: &str) -> TqResult<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| TqError::ShapeMismatch("empty dump".into()))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("dims") {
            return Err(TqError::ShapeMismatch("dump header must start with `dims`".into()));
        }
        let dims: Vec<usize> = words.map(|w| w.parse().map_err(|_| TqError::ShapeMismatch(format!("bad dim `{w}`")))).collect::<TqResult<_>>()?;
        let mut out = Self::zeros(&dims);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(TqError::ShapeMismatch(format!("bad dump line `{line}`")));
            }
            let bad = || TqError::ShapeMismatch(format!("bad dump line `{line}`"));
            let r: usize = f[0].parse().map_err(|_| bad())?;
            let c: usize = f[1].parse().map_err(|_| bad())?;
            let re: f64 = f[2].parse().map_err(|_| bad())?;
            let im: f64 = f[3].parse().map_err(|_| bad())?;
            if r >= out.side || c >= out.side {
                return Err(TqError::ShapeMismatch(format!("index out of range in `{line}`")));
            }
            out.set(r, c, tqlab_core::cx(re, im));
        }
        Ok(out)
    }
}

/// Index bookkeeping for an operator acting on a subset of slots.
#[derive(Debug, Clone)]
pub struct Layout {
    /// Dimensions of the selected slots, in selection order.
    pub local_dims: Vec<usize>,
    /// Full-space offset of every local multi-index.
    pub local: Vec<usize>,
    /// Full-space offset of every configuration of the remaining slots.
    pub rest: Vec<usize>,
}

impl Layout {
    /// Layout of `slots` inside a product space with slot dimensions `dims`.
    pub fn new(dims: &[usize], slots: &[usize]) -> TqResult<Self> {
        for (i, &s) in slots.iter().enumerate() {
            if s >= dims.len() || slots[..i].contains(&s) {
                return Err(TqError::ShapeMismatch(format!("invalid slot list {:?} for dims {:?}", slots, dims)));
            }
        }
        let st = strides(dims);
        let local_dims: Vec<usize> = slots.iter().map(|&s| dims[s]).collect();
        let local = offsets(&local_dims, &slots.iter().map(|&s| st[s]).collect::<Vec<_>>());
        let rest_slots: Vec<usize> = (0..dims.len()).filter(|s| !slots.contains(s)).collect();
        let rest = offsets(
            &rest_slots.iter().map(|&s| dims[s]).collect::<Vec<_>>(),
            &rest_slots.iter().map(|&s| st[s]).collect::<Vec<_>>(),
        );
        Ok(Self { local_dims, local, rest })
    }
}

fn offsets(dims: &[usize], strides_full: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for (&d, &st) in dims.iter().zip(strides_full) {
        let mut next = Vec::with_capacity(out.len() * d);
        for &o in &out {
            for k in 0..d {
                next.push(o + k * st);
            }
        }
        out = next;
    }
    out
}
