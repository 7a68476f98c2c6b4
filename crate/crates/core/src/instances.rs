//! Concrete structures: a four-dimensional solvable example family and
//! seeded random instances for property sweeps.
//!
//! Random Lie algebras are drawn from a curated list (abelian, and
//! block sums of the four-dimensional solvable family) rather than from raw
//! random constants, which almost never satisfy the Jacobi identity; a
//! random basis change still scrambles every component. Random quaternionic
//! triples conjugate the standard block triple, and compatible metrics come
//! from sign-weighted averaging, so every draw passes the structure gate by
//! construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frame::{constants_from_brackets, LieFrame};
use crate::hn::HnStructure;
use crate::linalg::{signature, Matrix};
use crate::scalar::{Backend, Scalar};
use crate::tensor::{idx3, Endo};

/// Parameters of the four-dimensional example family.
#[derive(Clone, Debug)]
pub struct ExampleParams {
    lambda: [Scalar; 4],
}

impl ExampleParams {
    pub fn new(lambda: [Scalar; 4]) -> Result<ExampleParams> {
        let backend = lambda[0].backend();
        if lambda.iter().any(|l| l.backend() != backend) {
            return Err(Error::BackendMismatch("example parameters"));
        }
        if lambda.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroLambda);
        }
        Ok(ExampleParams { lambda })
    }

    pub fn from_ints(l: [i64; 4], backend: Backend) -> Result<ExampleParams> {
        ExampleParams::new(l.map(|v| Scalar::from_int(v, backend)))
    }

    pub fn lambda(&self) -> &[Scalar; 4] {
        &self.lambda
    }

    pub fn backend(&self) -> Backend {
        self.lambda[0].backend()
    }
}

/// The example family's Lie frame: six brackets driven by `(λ1..λ4)` and
/// the neutral diagonal metric.
///
/// Bracket table (1-based):
///
/// ```text
/// [X1,X3] = λ2 X2 + λ4 X4     [X2,X4] = λ1 X1 + λ3 X3
/// [X3,X2] = λ2 X1 + λ3 X4     [X4,X3] = λ4 X1 - λ3 X2
/// [X4,X1] = λ1 X2 + λ4 X3     [X1,X2] = λ2 X3 - λ1 X4
/// ```
pub fn example_frame(p: &ExampleParams) -> Result<LieFrame> {
    let backend = p.backend();
    let [l1, l2, l3, l4] = &p.lambda;
    let zero = || Scalar::zero(backend);
    let brackets = vec![
        (0, 2, vec![zero(), l2.clone(), zero(), l4.clone()]),
        (1, 3, vec![l1.clone(), zero(), l3.clone(), zero()]),
        (1, 2, vec![-l2, zero(), zero(), -l3]),
        (2, 3, vec![-l4, l3.clone(), zero(), zero()]),
        (0, 3, vec![zero(), -l1, -l4, zero()]),
        (0, 1, vec![zero(), zero(), l2.clone(), -l1]),
    ];
    let c = constants_from_brackets(4, backend, &brackets)?;
    LieFrame::new(4, c, neutral_metric(4, backend))
}

/// The validated hypercomplex structure of the example family.
pub fn example_g4(p: &ExampleParams) -> Result<HnStructure> {
    let frame = example_frame(p)?;
    let [m1, m2, m3] = standard_quaternion(1, p.backend());
    HnStructure::new(
        &frame,
        Endo::new(&frame, m1)?,
        Endo::new(&frame, m2)?,
        Endo::new(&frame, m3)?,
    )
}

/// `diag(1, ..., 1, -1, ..., -1)` with `n/2` entries of each sign.
pub fn neutral_metric(n: usize, backend: Backend) -> Matrix {
    Matrix::from_fn(n, n, |r, c| {
        if r != c {
            Scalar::zero(backend)
        } else if r < n / 2 {
            Scalar::one(backend)
        } else {
            Scalar::from_int(-1, backend)
        }
    })
}

/// The standard quaternionic triple on dimension `4m`: the block
///
/// ```text
/// J1: X1→ X2, X2→-X1, X3→-X4, X4→ X3
/// J2: X1→ X3, X2→ X4, X3→-X1, X4→-X2
/// J3: X1→-X4, X2→ X3, X3→-X2, X4→ X1
/// ```
///
/// repeated down the diagonal.
pub fn standard_quaternion(m: usize, backend: Backend) -> [Matrix; 3] {
    assert!(m >= 1, "need at least one block");
    let blocks: [[[i64; 4]; 4]; 3] = [
        [
            [0, -1, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, -1, 0],
        ],
        [
            [0, 0, -1, 0],
            [0, 0, 0, -1],
            [1, 0, 0, 0],
            [0, 1, 0, 0],
        ],
        [
            [0, 0, 0, 1],
            [0, 0, -1, 0],
            [0, 1, 0, 0],
            [-1, 0, 0, 0],
        ],
    ];
    let n = 4 * m;
    std::array::from_fn(|a| {
        Matrix::from_fn(n, n, |r, c| {
            if r / 4 == c / 4 {
                Scalar::from_int(blocks[a][r % 4][c % 4], backend)
            } else {
                Scalar::zero(backend)
            }
        })
    })
}

/// Curated Lie algebras available to the random generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    /// All brackets zero; yields Kähler-type instances.
    Abelian,
    /// Block sum of solvable example-family copies with random parameters.
    SolvableBlocks,
}

fn random_lambda(rng: &mut ChaCha8Rng) -> [i64; 4] {
    loop {
        let l: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        if l.iter().any(|&v| v != 0) {
            return l;
        }
    }
}

/// Dense constants of a block sum of example-family algebras.
fn solvable_block_constants(m: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let n = 4 * m;
    let backend = Backend::Rational;
    let mut c = vec![Scalar::zero(backend); n * n * n];
    for block in 0..m {
        let p = ExampleParams::from_ints(random_lambda(rng), backend).unwrap();
        let frame = example_frame(&p).unwrap();
        let base = 4 * block;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    c[idx3(base + i, base + j, base + k, n)] = frame.c(i, j, k).clone();
                }
            }
        }
    }
    c
}

fn random_int_matrix(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(n, n, |_, _| {
        Scalar::from_int(rng.gen_range(-3..=3), Backend::Rational)
    })
}

/// Random unimodular integer matrix: a product of elementary shears, swaps
/// and sign flips. Determinant is ±1, so the inverse is again an integer
/// matrix and conjugated tensors keep small denominators.
fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for _ in 0..2 * n {
        match rng.gen_range(0..4u8) {
            0 | 1 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                let c = *[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
                for k in 0..n {
                    m[i][k] += c * m[j][k];
                }
            }
            2 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                m.swap(i, j);
            }
            _ => {
                let i = rng.gen_range(0..n);
                for v in m[i].iter_mut() {
                    *v = -*v;
                }
            }
        }
    }
    Matrix::from_fn(n, n, |r, c| Scalar::from_int(m[r][c], Backend::Rational))
}

fn random_symmetric_matrix(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(n, n, Backend::Rational);
    for i in 0..n {
        for j in i..n {
            let v = Scalar::from_int(rng.gen_range(-3..=3), Backend::Rational);
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// `C'^k_{ij} = (A⁻¹)^k_c C^c_{ab} A^a_i A^b_j`, the constants after the
/// basis change `Y_i = A^j_i X_j`.
fn conjugate_constants(c: &[Scalar], a: &Matrix, a_inv: &Matrix, n: usize) -> Vec<Scalar> {
    let backend = a.backend();
    let mut out = vec![Scalar::zero(backend); n * n * n];
    for i in 0..n {
        for j in 0..n {
            // bracket of the new basis pair, in old coordinates
            let mut v = vec![Scalar::zero(backend); n];
            for p in 0..n {
                let api = a.at(p, i);
                if api.is_zero() {
                    continue;
                }
                for q in 0..n {
                    let aqj = a.at(q, j);
                    if aqj.is_zero() {
                        continue;
                    }
                    let w = api * aqj;
                    for (k, vk) in v.iter_mut().enumerate() {
                        *vk = &*vk + &(&c[idx3(p, q, k, n)] * &w);
                    }
                }
            }
            // express in the new basis
            for k in 0..n {
                let mut acc = Scalar::zero(backend);
                for (cc, vc) in v.iter().enumerate() {
                    acc = &acc + &(a_inv.at(k, cc) * vc);
                }
                out[idx3(i, j, k, n)] = acc;
            }
        }
    }
    out
}

const MAX_REJECTIONS: usize = 100;

/// Seeded random hypercomplex Hermitian-Norden structure on dimension `4m`.
///
/// Draws an invertible integer matrix `A`, conjugates the standard
/// quaternionic triple, projects a random symmetric `h` onto the compatible
/// metrics via `g = (h + J1ᵀhJ1 - J2ᵀhJ2 - J3ᵀhJ3)/4`, and conjugates the
/// chosen curated algebra by the same `A`. Draws failing nondegeneracy or
/// the neutral-signature requirement are rejected and redrawn.
pub fn random_hn_with(kind: AlgebraKind, seed: u64, m: usize) -> Result<HnStructure> {
    assert!(m >= 1, "need at least one block");
    let n = 4 * m;
    let backend = Backend::Rational;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..MAX_REJECTIONS {
        let a = random_unimodular(n, &mut rng);
        let a_inv = a.inverse().expect("unimodular matrices are invertible");

        let [s1, s2, s3] = standard_quaternion(m, backend);
        let conj = |s: &Matrix| a.mul(s).unwrap().mul(&a_inv).unwrap();
        let j = [conj(&s1), conj(&s2), conj(&s3)];

        let h = random_symmetric_matrix(n, &mut rng);
        let quarter = Scalar::ratio(1, 4, backend);
        let pull = |jm: &Matrix| jm.transpose().mul(&h).unwrap().mul(jm).unwrap();
        let g = h
            .add(&pull(&j[0]))
            .unwrap()
            .sub(&pull(&j[1]))
            .unwrap()
            .sub(&pull(&j[2]))
            .unwrap()
            .scale(&quarter);

        match signature(&g) {
            Ok((p, q)) if p == n / 2 && q == n / 2 => {}
            _ => continue,
        }

        let c = match kind {
            AlgebraKind::Abelian => vec![Scalar::zero(backend); n * n * n],
            AlgebraKind::SolvableBlocks => {
                let base = solvable_block_constants(m, &mut rng);
                conjugate_constants(&base, &a, &a_inv, n)
            }
        };

        let frame = LieFrame::new(n, c, g)?;
        let [j1, j2, j3] = j;
        return HnStructure::new(
            &frame,
            Endo::new(&frame, j1)?,
            Endo::new(&frame, j2)?,
            Endo::new(&frame, j3)?,
        );
    }
    Err(Error::GeneratorFailure(MAX_REJECTIONS))
}

/// Random structure with the algebra kind selected by the seed (one in four
/// draws is abelian).
pub fn random_hn(seed: u64, m: usize) -> Result<HnStructure> {
    let kind = if seed.is_multiple_of(4) {
        AlgebraKind::Abelian
    } else {
        AlgebraKind::SolvableBlocks
    };
    random_hn_with(kind, seed, m)
}

/// Seeded random Lie frame of dimension `n` (any positive multiple of 4 for
/// the solvable kind, anything for abelian): curated algebra conjugated by
/// a random basis change, with a random nondegenerate symmetric metric of
/// unconstrained signature.
pub fn random_lie_frame(seed: u64, n: usize) -> Result<LieFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let backend = Backend::Rational;
    for _ in 0..MAX_REJECTIONS {
        let a = random_unimodular(n, &mut rng);
        let a_inv = a.inverse().expect("unimodular matrices are invertible");
        let g = random_symmetric_matrix(n, &mut rng);
        if g.inverse().is_err() {
            continue;
        }
        let c = if n.is_multiple_of(4) && rng.gen_bool(0.75) {
            let base = solvable_block_constants(n / 4, &mut rng);
            conjugate_constants(&base, &a, &a_inv, n)
        } else {
            vec![Scalar::zero(backend); n * n * n]
        };
        return LieFrame::new(n, c, g);
    }
    Err(Error::GeneratorFailure(MAX_REJECTIONS))
}

/// Seeded random endomorphism with small integer components.
pub fn random_endo(frame: &LieFrame, seed: u64) -> Endo {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = frame.n();
    let m = match frame.backend() {
        Backend::Rational => random_int_matrix(n, &mut rng),
        Backend::Float => {
            Matrix::from_fn(n, n, |_, _| Scalar::Float(rng.gen_range(-3..=3) as f64))
        }
    };
    Endo::new(frame, m).expect("shape and backend match by construction")
}
