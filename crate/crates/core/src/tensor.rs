//! Frame-component tensors: endomorphism fields, (1,2)-tensors and
//! (0,3)-tensors.
//!
//! Components are constant in the frame. An `Endo` acts on columns,
//! `(J x)^k = M^k_j x^j`; a `Tensor12` stores `S^k_{ij}` with
//! `S(X_i, X_j) = S^k_{ij} X_k`; a `Tensor03` stores `T_{ijk} =
//! T(X_i, X_j, X_k)`.

use crate::error::{Error, Result};
use crate::frame::LieFrame;
use crate::linalg::Matrix;
use crate::scalar::{max_abs_f64, Scalar};

#[inline]
pub(crate) fn idx3(i: usize, j: usize, k: usize, n: usize) -> usize {
    (i * n + j) * n + k
}

/// Constant (1,1)-tensor field attached to a frame.
#[derive(Clone, Debug)]
pub struct Endo {
    frame: LieFrame,
    m: Matrix,
}

impl Endo {
    pub fn new(frame: &LieFrame, m: Matrix) -> Result<Endo> {
        let n = frame.n();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "endomorphism is {}x{} on a dimension-{} frame",
                m.rows(),
                m.cols(),
                n
            )));
        }
        if m.backend() != frame.backend() {
            return Err(Error::BackendMismatch("endomorphism components"));
        }
        Ok(Endo {
            frame: frame.clone(),
            m,
        })
    }

    pub fn identity(frame: &LieFrame) -> Endo {
        Endo {
            frame: frame.clone(),
            m: Matrix::identity(frame.n(), frame.backend()),
        }
    }

    pub fn zero(frame: &LieFrame) -> Endo {
        Endo {
            frame: frame.clone(),
            m: Matrix::zeros(frame.n(), frame.n(), frame.backend()),
        }
    }

    pub fn frame(&self) -> &LieFrame {
        &self.frame
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn at(&self, k: usize, j: usize) -> &Scalar {
        self.m.at(k, j)
    }

    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.m.apply(x)
    }

    /// Composition `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Endo) -> Result<Endo> {
        self.check_same_frame(rhs)?;
        Ok(Endo {
            frame: self.frame.clone(),
            m: self.m.mul(&rhs.m)?,
        })
    }

    pub fn add(&self, rhs: &Endo) -> Result<Endo> {
        self.check_same_frame(rhs)?;
        Ok(Endo {
            frame: self.frame.clone(),
            m: self.m.add(&rhs.m)?,
        })
    }

    pub fn neg(&self) -> Endo {
        Endo {
            frame: self.frame.clone(),
            m: self.m.neg(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Endo {
        Endo {
            frame: self.frame.clone(),
            m: self.m.scale(s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.entries().iter().all(Scalar::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.m.max_abs()
    }

    pub fn check_same_frame(&self, rhs: &Endo) -> Result<()> {
        if LieFrame::same(&self.frame, &rhs.frame) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

impl PartialEq for Endo {
    fn eq(&self, other: &Endo) -> bool {
        LieFrame::same(&self.frame, &other.frame) && self.m == other.m
    }
}

/// Constant (1,2)-tensor field `S^k_{ij}` attached to a frame.
#[derive(Clone, Debug)]
pub struct Tensor12 {
    frame: LieFrame,
    s: Vec<Scalar>,
}

impl Tensor12 {
    pub fn zero(frame: &LieFrame) -> Tensor12 {
        let n = frame.n();
        Tensor12 {
            frame: frame.clone(),
            s: vec![Scalar::zero(frame.backend()); n * n * n],
        }
    }

    pub fn from_fn<F>(frame: &LieFrame, mut f: F) -> Tensor12
    where
        F: FnMut(usize, usize, usize) -> Scalar,
    {
        let n = frame.n();
        let mut s = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    s.push(f(i, j, k));
                }
            }
        }
        Tensor12 {
            frame: frame.clone(),
            s,
        }
    }

    pub(crate) fn from_components(frame: &LieFrame, s: Vec<Scalar>) -> Tensor12 {
        debug_assert_eq!(s.len(), frame.n().pow(3));
        Tensor12 {
            frame: frame.clone(),
            s,
        }
    }

    pub fn frame(&self) -> &LieFrame {
        &self.frame
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    /// Component `S^k_{ij}`.
    pub fn at(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.s[idx3(i, j, k, self.n())]
    }

    pub fn components(&self) -> &[Scalar] {
        &self.s
    }

    /// Value on two frame-component vectors.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.n();
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch("tensor argument length".into()));
        }
        let backend = self.frame.backend();
        let mut out = vec![Scalar::zero(backend); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o = &*o + &(self.at(i, j, k) * &xy);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Tensor12) -> Tensor12 {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Tensor12) -> Tensor12 {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip<F>(&self, rhs: &Tensor12, f: F) -> Tensor12
    where
        F: Fn(&Scalar, &Scalar) -> Scalar,
    {
        assert!(
            LieFrame::same(&self.frame, &rhs.frame),
            "tensor frames differ"
        );
        Tensor12 {
            frame: self.frame.clone(),
            s: self
                .s
                .iter()
                .zip(rhs.s.iter())
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Tensor12 {
        Tensor12 {
            frame: self.frame.clone(),
            s: self.s.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Tensor12 {
        Tensor12 {
            frame: self.frame.clone(),
            s: self.s.iter().map(|a| a * c).collect(),
        }
    }

    /// `(L ∘ S)^k_{ij} = L^k_p S^p_{ij}`.
    pub fn compose_out(&self, l: &Endo) -> Tensor12 {
        let n = self.n();
        let backend = self.frame.backend();
        let mut out = vec![Scalar::zero(backend); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let base = (i * n + j) * n;
                for p in 0..n {
                    let spij = &self.s[base + p];
                    if spij.is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        let lkp = l.at(k, p);
                        if lkp.is_zero() {
                            continue;
                        }
                        out[base + k] = &out[base + k] + &(lkp * spij);
                    }
                }
            }
        }
        Tensor12 {
            frame: self.frame.clone(),
            s: out,
        }
    }

    /// `S(L·, ·)^k_{ij} = S^k_{pj} L^p_i`.
    pub fn pullback_first(&self, l: &Endo) -> Tensor12 {
        let n = self.n();
        Tensor12::from_fn(&self.frame, |i, j, k| {
            let mut acc = Scalar::zero(self.frame.backend());
            for p in 0..n {
                let lpi = l.at(p, i);
                if lpi.is_zero() {
                    continue;
                }
                acc = &acc + &(self.at(p, j, k) * lpi);
            }
            acc
        })
    }

    /// `S(·, L·)^k_{ij} = S^k_{ip} L^p_j`.
    pub fn pullback_second(&self, l: &Endo) -> Tensor12 {
        let n = self.n();
        Tensor12::from_fn(&self.frame, |i, j, k| {
            let mut acc = Scalar::zero(self.frame.backend());
            for p in 0..n {
                let lpj = l.at(p, j);
                if lpj.is_zero() {
                    continue;
                }
                acc = &acc + &(self.at(i, p, k) * lpj);
            }
            acc
        })
    }

    /// `S(P·, Q·)^k_{ij} = S^k_{pq} P^p_i Q^q_j`, contracted in two passes.
    pub fn pullback_both(&self, p: &Endo, q: &Endo) -> Tensor12 {
        self.pullback_second(q).pullback_first(p)
    }

    pub fn max_abs_report(&self) -> (Scalar, Option<[usize; 3]>) {
        max_component(&self.s, self.n())
    }

    pub fn max_abs(&self) -> f64 {
        max_abs_f64(self.s.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.s.iter().all(Scalar::is_zero)
    }

    /// Zero test honoring the backend tolerance policy.
    pub fn is_zero_within(&self, scale: f64) -> bool {
        self.s.iter().all(|v| v.is_zero_within(scale))
    }

    /// Max-norm of `S(x, y) + S(y, x)`; zero iff antisymmetric.
    pub fn antisymmetry_defect(&self) -> Scalar {
        self.pair_defect(|a, b| a + b)
    }

    /// Max-norm of `S(x, y) - S(y, x)`; zero iff symmetric.
    pub fn symmetry_defect(&self) -> Scalar {
        self.pair_defect(|a, b| a - b)
    }

    fn pair_defect<F>(&self, f: F) -> Scalar
    where
        F: Fn(&Scalar, &Scalar) -> Scalar,
    {
        let n = self.n();
        let mut worst = Scalar::zero(self.frame.backend());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = f(self.at(i, j, k), self.at(j, i, k)).abs();
                    if worst.abs_cmp(&d) == std::cmp::Ordering::Less {
                        worst = d;
                    }
                }
            }
        }
        worst
    }

    pub fn check_frame(&self, other: &LieFrame) -> Result<()> {
        if LieFrame::same(&self.frame, other) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

impl PartialEq for Tensor12 {
    fn eq(&self, other: &Tensor12) -> bool {
        LieFrame::same(&self.frame, &other.frame) && self.s == other.s
    }
}

/// Constant (0,3)-tensor field `T_{ijk}` attached to a frame.
#[derive(Clone, Debug)]
pub struct Tensor03 {
    frame: LieFrame,
    t: Vec<Scalar>,
}

impl Tensor03 {
    pub fn zero(frame: &LieFrame) -> Tensor03 {
        let n = frame.n();
        Tensor03 {
            frame: frame.clone(),
            t: vec![Scalar::zero(frame.backend()); n * n * n],
        }
    }

    pub fn from_fn<F>(frame: &LieFrame, mut f: F) -> Tensor03
    where
        F: FnMut(usize, usize, usize) -> Scalar,
    {
        let n = frame.n();
        let mut t = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.push(f(i, j, k));
                }
            }
        }
        Tensor03 {
            frame: frame.clone(),
            t,
        }
    }

    pub fn frame(&self) -> &LieFrame {
        &self.frame
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.t[idx3(i, j, k, self.n())]
    }

    pub fn components(&self) -> &[Scalar] {
        &self.t
    }

    pub fn add(&self, rhs: &Tensor03) -> Tensor03 {
        assert!(
            LieFrame::same(&self.frame, &rhs.frame),
            "tensor frames differ"
        );
        Tensor03 {
            frame: self.frame.clone(),
            t: self
                .t
                .iter()
                .zip(rhs.t.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Tensor03) -> Tensor03 {
        assert!(
            LieFrame::same(&self.frame, &rhs.frame),
            "tensor frames differ"
        );
        Tensor03 {
            frame: self.frame.clone(),
            t: self
                .t
                .iter()
                .zip(rhs.t.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn max_abs_report(&self) -> (Scalar, Option<[usize; 3]>) {
        max_component(&self.t, self.n())
    }

    pub fn max_abs(&self) -> f64 {
        max_abs_f64(self.t.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().all(Scalar::is_zero)
    }

    /// First triple violating total antisymmetry, or `None` for a 3-form.
    /// Adjacent transpositions generate all permutations, so checking the
    /// two swaps suffices.
    pub fn three_form_defect(&self, scale: f64) -> Option<[usize; 3]> {
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let swap_first = self.at(i, j, k) + self.at(j, i, k);
                    let swap_last = self.at(i, j, k) + self.at(i, k, j);
                    if !swap_first.is_zero_within(scale) || !swap_last.is_zero_within(scale) {
                        return Some([i, j, k]);
                    }
                }
            }
        }
        None
    }

    pub fn check_frame(&self, other: &LieFrame) -> Result<()> {
        if LieFrame::same(&self.frame, other) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

impl PartialEq for Tensor03 {
    fn eq(&self, other: &Tensor03) -> bool {
        LieFrame::same(&self.frame, &other.frame) && self.t == other.t
    }
}

fn max_component(values: &[Scalar], n: usize) -> (Scalar, Option<[usize; 3]>) {
    let mut worst = Scalar::zero(values[0].backend());
    let mut arg = None;
    for (flat, v) in values.iter().enumerate() {
        let a = v.abs();
        if worst.abs_cmp(&a) == std::cmp::Ordering::Less {
            worst = a;
            let k = flat % n;
            let j = (flat / n) % n;
            let i = flat / (n * n);
            arg = Some([i, j, k]);
        }
    }
    (worst, arg)
}
