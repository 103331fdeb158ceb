//! R-matrices, the eight q-oscillator L-operators, `g`, and the flip `sigma`.

use tqlab_core::scalar::{ipow, one, zero};
use tqlab_core::{Cx, Params, Real, TqError, TqResult};
use tqlab_fock::{Flavor, FockRep};
use tqlab_tensor::{flip, mat2, TensorOp};

/// Six-vertex R-matrix `R(x)` on `C^2 x C^2`.
pub fn r_matrix<T: Real>(x: Cx<T>, params: &Params<T>) -> TensorOp<T> {
    six_vertex(x, params, false)
}

/// `Rbar(x)`: `R(1/x)` with `s0 <-> s1` in the off-diagonal entries.
pub fn rbar_matrix<T: Real>(x: Cx<T>, params: &Params<T>) -> TensorOp<T> {
    six_vertex(x, params, true)
}

fn six_vertex<T: Real>(x: Cx<T>, params: &Params<T>, bar: bool) -> TensorOp<T> {
    let q = params.q();
    let lam = params.lambda();
    let (xs, a23, a32) = if bar {
        (ipow(x, -params.s() as i64), ipow(x, -params.s0 as i64), ipow(x, -params.s1 as i64))
    } else {
        (ipow(x, params.s() as i64), ipow(x, params.s1 as i64), ipow(x, params.s0 as i64))
    };
    let mut r = TensorOp::zeros(&[2, 2]);
    let d = q - xs / q;
    r.set(0, 0, d);
    r.set(3, 3, d);
    r.set(1, 1, one::<T>() - xs);
    r.set(2, 2, one::<T>() - xs);
    r.set(1, 2, lam * a23);
    r.set(2, 1, lam * a32);
    r
}

/// Shape of an L-operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LaxShape {
    /// `L`.
    Plain,
    /// `Lbar`.
    Bar,
    /// `Lcheck`, proportional to the inverse of `Lbar`.
    Check,
    /// `Lcheckbar`, proportional to the inverse of `L`.
    CheckBar,
}

impl LaxShape {
    /// All four shapes.
    pub const ALL: [LaxShape; 4] = [LaxShape::Plain, LaxShape::Bar, LaxShape::Check, LaxShape::CheckBar];

    fn barred(self) -> bool {
        matches!(self, LaxShape::Bar | LaxShape::CheckBar)
    }

    fn checked(self) -> bool {
        matches!(self, LaxShape::Check | LaxShape::CheckBar)
    }

    /// Shape exchanged by the double anti-involution `t1 t2`.
    pub fn tt_partner(self) -> Self {
        match self {
            LaxShape::Plain => LaxShape::Bar,
            LaxShape::Bar => LaxShape::Plain,
            LaxShape::Check => LaxShape::CheckBar,
            LaxShape::CheckBar => LaxShape::Check,
        }
    }
}

/// One of the eight L-operators: shape x oscillator flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LaxKind {
    pub shape: LaxShape,
    pub flavor: Flavor,
}

impl LaxKind {
    pub fn new(shape: LaxShape, flavor: Flavor) -> Self {
        Self { shape, flavor }
    }
}

/// Assembles a Fock x C^2 operator from its four Fock blocks.
pub fn from_blocks<T: Real>(blocks: [[&TensorOp<T>; 2]; 2]) -> TqResult<TensorOp<T>> {
    let n = blocks[0][0].side();
    let mut out = TensorOp::zeros(&[n, 2]);
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            if b.side() != n {
                return Err(TqError::ShapeMismatch("L-operator blocks of unequal size".into()));
            }
            for r in 0..n {
                for c in 0..n {
                    let v = b.get(r, c);
                    if v != zero() {
                        out.set(2 * r + i, 2 * c + j, v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Block `(i, j)` of a Fock x C^2 operator.
pub fn block<T: Real>(op: &TensorOp<T>, i: usize, j: usize) -> TensorOp<T> {
    let n = op.dims()[0];
    TensorOp::from_fn(&[n], |r, c| op.get(2 * r + i, 2 * c + j))
}

/// `X * diag(d)`.
fn times_diag<T: Real>(x: &TensorOp<T>, d: &[Cx<T>]) -> TensorOp<T> {
    let n = x.side();
    TensorOp::from_fn(x.dims(), |r, c| x.get(r, c) * d[c % n])
}

/// L-operator of the given kind on `Fock x C^2`, exactly as in the matrix
/// forms of the eight q-oscillator L-operators.
pub fn l_operator<T: Real>(kind: LaxKind, x: Cx<T>, rep: &FockRep<T>, params: &Params<T>) -> TqResult<TensorOp<T>> {
    if rep.flavor != kind.flavor {
        return Err(TqError::ShapeMismatch(format!(
            "L-operator of flavor {} on a flavor-{} representation",
            kind.flavor.index(),
            rep.flavor.index()
        )));
    }
    let q = params.q();
    let lam = params.lambda();
    let (s0, s1, s) = (params.s0 as i64, params.s1 as i64, params.s() as i64);
    let (a12, a21, xs) = if kind.shape.barred() {
        (ipow(x, -s1), ipow(x, -s0), ipow(x, -s))
    } else {
        (ipow(x, s0), ipow(x, s1), ipow(x, s))
    };
    let qp: Vec<Cx<T>> = rep.levels.iter().map(|&h| ipow(q, h / 2)).collect();
    let qm: Vec<Cx<T>> = rep.levels.iter().map(|&h| ipow(q, -h / 2)).collect();
    let c = xs / q;
    let n = rep.cutoff;
    let diag = |v: Vec<Cx<T>>| TensorOp::diagonal(&v);
    let comb = |a: &[Cx<T>], ca: Cx<T>, b: &[Cx<T>], cb: Cx<T>| diag((0..n).map(|k| ca * a[k] + cb * b[k]).collect());
    let b12 = times_diag(&rep.f, &qm).scale(lam * a12);
    let b21 = times_diag(&rep.e, &qp).scale(lam * a21);
    let (o, z) = (one::<T>(), zero::<T>());
    let (b11, b22) = match (kind.flavor, kind.shape.checked()) {
        (Flavor::One, false) => (comb(&qp, o, &qm, z), comb(&qm, o, &qp, -c)),
        (Flavor::One, true) => (comb(&qp, o, &qm, -c), comb(&qp, -c, &qm, z)),
        (Flavor::Two, false) => (comb(&qp, o, &qm, -c), comb(&qm, o, &qp, z)),
        (Flavor::Two, true) => (comb(&qm, -c, &qp, z), comb(&qm, o, &qp, -c)),
    };
    from_blocks([[&b11, &b12], [&b21, &b22]])
}

/// `g = diag(q^{(s0-s1)/s}, q^{-(s0-s1)/s}) = diag(p^{s0-s1}, p^{s1-s0})`.
pub fn g_matrix<T: Real>(params: &Params<T>) -> TensorOp<T> {
    let d = (params.s0 - params.s1) as i64;
    mat2(params.pp(d), zero(), zero(), params.pp(-d))
}

/// `sigma`: conjugation by the flip `E_12 + E_21` on a two-dimensional slot.
pub fn sigma_map<T: Real>(a: &TensorOp<T>, slot: usize) -> TqResult<TensorOp<T>> {
    if a.dims().get(slot) != Some(&2) {
        return Err(TqError::ShapeMismatch(format!("sigma needs a 2-dimensional slot, got dims {:?}", a.dims())));
    }
    let f = flip::<T>().embed(&[slot], a.dims())?;
    f.matmul(a)?.matmul(&f)
}

/// The parameter swap `zeta`.
pub fn zeta_params<T: Real>(params: &Params<T>) -> Params<T> {
    params.zeta()
}
