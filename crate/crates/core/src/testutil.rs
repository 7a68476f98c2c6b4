//! Shared helpers for the unit tests; compiled only under `cfg(test)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frame::LieFrame;
use crate::linalg::Matrix;
use crate::scalar::{Backend, Scalar};
use crate::tensor::{Endo, Tensor12};

pub fn rat(v: i64) -> Scalar {
    Scalar::from_int(v, Backend::Rational)
}

pub fn diag(entries: &[i64]) -> Matrix {
    let n = entries.len();
    Matrix::from_fn(n, n, |r, c| if r == c { rat(entries[r]) } else { rat(0) })
}

pub fn basis(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|k| rat((k == i) as i64)).collect()
}

/// Four-dimensional solvable family with integer parameters.
pub fn solvable_g4(l: [i64; 4]) -> LieFrame {
    let p = crate::instances::ExampleParams::from_ints(l, Backend::Rational).unwrap();
    crate::instances::example_frame(&p).unwrap()
}

pub fn abelian4() -> LieFrame {
    LieFrame::abelian(diag(&[1, 1, -1, -1])).unwrap()
}

pub fn random_endo(frame: &LieFrame, rng: &mut ChaCha8Rng) -> Endo {
    let n = frame.n();
    Endo::new(
        frame,
        Matrix::from_fn(n, n, |_, _| rat(rng.gen_range(-3..=3))),
    )
    .unwrap()
}

pub fn random_tensor12(frame: &LieFrame, rng: &mut ChaCha8Rng) -> Tensor12 {
    Tensor12::from_fn(frame, |_, _, _| rat(rng.gen_range(-3..=3)))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
