//! Lie algebras given by structure constants, carrying a left-invariant
//! pseudo-Riemannian metric and its Levi-Civita connection.
//!
//! All tensor fields handled by this crate are left-invariant, so their
//! components are constants in the frame `X_1, ..., X_n` and every metric
//! coefficient is killed by the frame fields: `X_i g(X_j, X_k) = 0`. The
//! Koszul formula for the Levi-Civita connection then collapses to its three
//! bracket terms,
//!
//! ```text
//! 2 g(∇_{X_i} X_j, X_k) = g([X_i,X_j], X_k) - g([X_j,X_k], X_i) + g([X_k,X_i], X_j)
//! ```
//!
//! which is how [`LieFrame::new`] computes the coefficients `Γ^k_{ij}`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{check_backend, max_abs_f64, Backend, Scalar};
use crate::tensor::{idx3, Endo, Tensor12};

#[derive(Debug)]
struct FrameData {
    n: usize,
    backend: Backend,
    /// Structure constants `C^k_{ij}` with `[X_i, X_j] = C^k_{ij} X_k`.
    c: Vec<Scalar>,
    g: Matrix,
    g_inv: Matrix,
    /// Connection coefficients `Γ^k_{ij}` with `∇_{X_i} X_j = Γ^k_{ij} X_k`.
    gamma: Vec<Scalar>,
}

impl PartialEq for FrameData {
    fn eq(&self, other: &FrameData) -> bool {
        self.n == other.n && self.c == other.c && self.g == other.g
    }
}

/// A Lie algebra with structure constants and a left-invariant metric;
/// cheap to clone, immutable after construction.
#[derive(Clone, Debug)]
pub struct LieFrame {
    data: Arc<FrameData>,
}

impl LieFrame {
    /// All tensor fields on a `LieFrame` are left-invariant by construction;
    /// there is no way to express position-dependent components.
    pub const LEFT_INVARIANT: bool = true;

    /// Builds a frame from dense structure constants (layout `C^k_{ij}` at
    /// `(i*n + j)*n + k`) and a metric.
    ///
    /// Validates antisymmetry of the constants, the Jacobi identity (exact
    /// on rationals, scaled tolerance on floats) and nondegeneracy of the
    /// metric, then derives the connection coefficients from the collapsed
    /// Koszul formula.
    pub fn new(n: usize, c: Vec<Scalar>, g: Matrix) -> Result<LieFrame> {
        if n == 0 {
            return Err(Error::DimensionMismatch("frame dimension is zero".into()));
        }
        if c.len() != n * n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} structure constants, got {}",
                n * n * n,
                c.len()
            )));
        }
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "metric is {}x{} on a dimension-{} frame",
                g.rows(),
                g.cols(),
                n
            )));
        }
        let backend = g.backend();
        check_backend(c.iter(), backend, "structure constants")?;
        if let Some((i, j)) = g.asymmetry() {
            return Err(Error::MetricNotSymmetric(i, j));
        }

        let c_scale = max_abs_f64(c.iter());
        for i in 0..n {
            for j in 0..=i {
                for k in 0..n {
                    let defect = &c[idx3(i, j, k, n)] + &c[idx3(j, i, k, n)];
                    if !defect.is_zero_within(c_scale) {
                        return Err(Error::ConstantsNotAntisymmetric(i, j));
                    }
                }
            }
        }

        // Jacobi: cyclic sum of [[X_i, X_j], X_k] vanishes componentwise.
        let jacobi_scale = c_scale * c_scale * n as f64;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for m in 0..n {
                        let mut acc = Scalar::zero(backend);
                        for p in 0..n {
                            acc = &acc + &(&c[idx3(i, j, p, n)] * &c[idx3(p, k, m, n)]);
                            acc = &acc + &(&c[idx3(j, k, p, n)] * &c[idx3(p, i, m, n)]);
                            acc = &acc + &(&c[idx3(k, i, p, n)] * &c[idx3(p, j, m, n)]);
                        }
                        if !acc.is_zero_within(jacobi_scale) {
                            return Err(Error::JacobiFailure(i, j, k));
                        }
                    }
                }
            }
        }

        let g_inv = g.inverse().map_err(|e| match e {
            Error::SingularMatrix => Error::DegenerateMetric,
            other => other,
        })?;

        // Lowered coefficients K_{ijk} = g(∇_{X_i} X_j, X_k) from the three
        // bracket terms, then raise the last index with the inverse metric.
        let half = match backend {
            Backend::Rational => Scalar::ratio(1, 2, backend),
            Backend::Float => Scalar::Float(0.5),
        };
        let mut lowered = vec![Scalar::zero(backend); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = Scalar::zero(backend);
                    for p in 0..n {
                        acc = &acc + &(&c[idx3(i, j, p, n)] * g.at(p, k));
                        acc = &acc - &(&c[idx3(j, k, p, n)] * g.at(p, i));
                        acc = &acc + &(&c[idx3(k, i, p, n)] * g.at(p, j));
                    }
                    lowered[idx3(i, j, k, n)] = &half * &acc;
                }
            }
        }
        let mut gamma = vec![Scalar::zero(backend); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    let mut acc = Scalar::zero(backend);
                    for k in 0..n {
                        acc = &acc + &(g_inv.at(m, k) * &lowered[idx3(i, j, k, n)]);
                    }
                    gamma[idx3(i, j, m, n)] = acc;
                }
            }
        }

        Ok(LieFrame {
            data: Arc::new(FrameData {
                n,
                backend,
                c,
                g,
                g_inv,
                gamma,
            }),
        })
    }

    /// Abelian algebra (all brackets zero) with the given metric.
    pub fn abelian(g: Matrix) -> Result<LieFrame> {
        let n = g.rows();
        LieFrame::new(n, vec![Scalar::zero(g.backend()); n * n * n], g)
    }

    pub fn n(&self) -> usize {
        self.data.n
    }

    pub fn backend(&self) -> Backend {
        self.data.backend
    }

    pub fn metric(&self) -> &Matrix {
        &self.data.g
    }

    pub fn metric_inv(&self) -> &Matrix {
        &self.data.g_inv
    }

    /// Structure constant `C^k_{ij}`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data.c[idx3(i, j, k, self.data.n)]
    }

    /// Connection coefficient `Γ^k_{ij}`.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data.gamma[idx3(i, j, k, self.data.n)]
    }

    /// Identity of frames: same allocation or equal defining data.
    pub fn same(a: &LieFrame, b: &LieFrame) -> bool {
        Arc::ptr_eq(&a.data, &b.data) || a.data == b.data
    }

    /// `g(x, y)` for frame-component vectors.
    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        let gx = self.data.g.apply(x)?;
        if y.len() != self.data.n {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let mut acc = Scalar::zero(self.data.backend);
        for (a, b) in gx.iter().zip(y) {
            acc = &acc + &(a * b);
        }
        Ok(acc)
    }

    /// Lie bracket of two frame-component vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.contract_pair(&self.data.c, x, y)
    }

    /// Symmetric braces `{x, y} = ∇_x y + ∇_y x`.
    pub fn braces(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.data.n;
        let mut sym = vec![Scalar::zero(self.data.backend); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    sym[idx3(i, j, k, n)] =
                        self.gamma(i, j, k) + self.gamma(j, i, k);
                }
            }
        }
        self.contract_pair(&sym, x, y)
    }

    fn contract_pair(&self, t: &[Scalar], x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.data.n;
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        check_backend(x.iter().chain(y.iter()), self.data.backend, "vector components")?;
        let mut out = vec![Scalar::zero(self.data.backend); n];
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
                    *o = &*o + &(&t[idx3(i, j, k, n)] * &xy);
                }
            }
        }
        Ok(out)
    }

    /// The structure constants as a (1,2)-tensor.
    pub fn bracket_tensor(&self) -> Tensor12 {
        Tensor12::from_components(self, self.data.c.clone())
    }

    /// The symmetrized connection coefficients as a (1,2)-tensor:
    /// `{X_i, X_j} = (Γ^k_{ij} + Γ^k_{ji}) X_k`.
    pub fn braces_tensor(&self) -> Tensor12 {
        Tensor12::from_fn(self, |i, j, k| self.gamma(i, j, k) + self.gamma(j, i, k))
    }

    /// Covariant derivative of an endomorphism field:
    /// `(∇_{X_i} J) X_j = ∇_{X_i}(J X_j) - J(∇_{X_i} X_j)`, i.e.
    /// `(∇J)^k_{ij} = Γ^k_{ip} J^p_j - J^k_p Γ^p_{ij}`.
    pub fn nabla_endo(&self, j_field: &Endo) -> Result<Tensor12> {
        if !LieFrame::same(self, j_field.frame()) {
            return Err(Error::FrameMismatch);
        }
        let n = self.data.n;
        Ok(Tensor12::from_fn(self, |i, j, k| {
            let mut acc = Scalar::zero(self.data.backend);
            for p in 0..n {
                acc = &acc + &(self.gamma(i, p, k) * j_field.at(p, j));
                acc = &acc - &(j_field.at(k, p) * self.gamma(i, j, p));
            }
            acc
        }))
    }

    /// Largest component magnitude over constants, metric and connection.
    pub fn max_abs(&self) -> f64 {
        max_abs_f64(self.data.c.iter())
            .max(self.data.g.max_abs())
            .max(max_abs_f64(self.data.gamma.iter()))
    }

    /// The same frame with every component converted to `f64`; the
    /// connection is recomputed on the float backend.
    pub fn to_float_backend(&self) -> Result<LieFrame> {
        let c = self
            .data
            .c
            .iter()
            .map(Scalar::to_float_backend)
            .collect();
        LieFrame::new(self.data.n, c, self.data.g.to_float_backend())
    }
}

/// Assembles dense structure constants from a sparse bracket table
/// `[(i, j, [components of [X_i, X_j]])]` with `i < j` (0-based); the
/// antisymmetric counterparts are filled in.
pub fn constants_from_brackets(
    n: usize,
    backend: Backend,
    brackets: &[(usize, usize, Vec<Scalar>)],
) -> Result<Vec<Scalar>> {
    let mut c = vec![Scalar::zero(backend); n * n * n];
    for (i, j, comps) in brackets {
        let (i, j) = (*i, *j);
        if i >= j || j >= n {
            return Err(Error::DimensionMismatch(format!(
                "bracket pair ({i}, {j}) out of range (need i < j < {n})"
            )));
        }
        if comps.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "bracket ({i}, {j}) has {} components, expected {n}",
                comps.len()
            )));
        }
        for (k, v) in comps.iter().enumerate() {
            c[idx3(i, j, k, n)] = v.clone();
            c[idx3(j, i, k, n)] = -v;
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{basis, diag, rat, solvable_g4};

    #[test]
    fn abelian_frame_has_zero_connection() {
        let f = LieFrame::abelian(diag(&[1, 2, -1])).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert!(f.gamma(i, j, k).is_zero());
                }
            }
        }
    }

    #[test]
    fn non_antisymmetric_constants_are_rejected() {
        let mut c = vec![rat(0); 8];
        c[idx3(0, 1, 0, 2)] = rat(1); // C^1_{12} set without counterpart
        let err = LieFrame::new(2, c, diag(&[1, 1])).unwrap_err();
        assert!(matches!(err, Error::ConstantsNotAntisymmetric(_, _)));
    }

    #[test]
    fn jacobi_violation_reports_the_offending_triple() {
        // [[X1,X2],X3] + [[X2,X3],X1] + [[X3,X1],X2] = -X3 here.
        let backend = Backend::Rational;
        let brackets = vec![
            (0, 1, vec![rat(0), rat(0), rat(1)]),
            (0, 2, vec![rat(1), rat(0), rat(0)]),
        ];
        let c = constants_from_brackets(3, backend, &brackets).unwrap();
        let err = LieFrame::new(3, c, diag(&[1, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::JacobiFailure(0, 1, 2)));
    }

    #[test]
    fn degenerate_metric_is_rejected() {
        let err = LieFrame::abelian(diag(&[1, 0])).unwrap_err();
        assert!(matches!(err, Error::DegenerateMetric));
    }

    #[test]
    fn solvable_family_satisfies_jacobi_for_generic_parameters() {
        // Construction already runs the Jacobi gate.
        solvable_g4([1, 2, 3, 4]);
        solvable_g4([1, 0, 0, 0]);
        solvable_g4([-2, 5, 1, -1]);
    }

    #[test]
    fn bracket_on_basis_vectors_reproduces_the_table() {
        let l = [2, 3, 5, 7];
        let f = solvable_g4(l);
        // [X1, X3] = l2 X2 + l4 X4
        let b = f.bracket(&basis(4, 0), &basis(4, 2)).unwrap();
        assert_eq!(b, vec![rat(0), rat(l[1]), rat(0), rat(l[3])]);
        // [X2, X4] = l1 X1 + l3 X3
        let b = f.bracket(&basis(4, 1), &basis(4, 3)).unwrap();
        assert_eq!(b, vec![rat(l[0]), rat(0), rat(l[2]), rat(0)]);
    }

    #[test]
    fn bracket_of_a_vector_with_itself_vanishes() {
        let f = solvable_g4([1, 2, 3, 4]);
        let x: Vec<Scalar> = vec![rat(3), rat(-1), rat(2), rat(5)];
        let b = f.bracket(&x, &x).unwrap();
        assert!(b.iter().all(Scalar::is_zero));
    }

    /// Koszul check, written against the defining relation (no inverse
    /// metric involved): 2 g(∇_i X_j, X_k) equals the three bracket terms.
    fn koszul_defect(f: &LieFrame) -> Scalar {
        let n = f.n();
        let mut worst = Scalar::zero(f.backend());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut lhs = Scalar::zero(f.backend());
                    for p in 0..n {
                        lhs = &lhs + &(f.gamma(i, j, p) * f.metric().at(p, k));
                    }
                    lhs = &lhs + &lhs;
                    let mut rhs = Scalar::zero(f.backend());
                    for p in 0..n {
                        rhs = &rhs + &(f.c(i, j, p) * f.metric().at(p, k));
                        rhs = &rhs - &(f.c(j, k, p) * f.metric().at(p, i));
                        rhs = &rhs + &(f.c(k, i, p) * f.metric().at(p, j));
                    }
                    let d = (&lhs - &rhs).abs();
                    if worst.abs_cmp(&d) == std::cmp::Ordering::Less {
                        worst = d;
                    }
                }
            }
        }
        worst
    }

    #[test]
    fn connection_satisfies_the_koszul_relation_exactly() {
        for l in [[1, 0, 0, 0], [1, 2, 3, 4], [-1, 1, 2, 0]] {
            assert!(koszul_defect(&solvable_g4(l)).is_zero());
        }
    }

    #[test]
    fn connection_is_torsion_free_and_metric_compatible() {
        let f = solvable_g4([1, 2, 3, 4]);
        let n = f.n();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // Γ^k_{ij} - Γ^k_{ji} = C^k_{ij}
                    let t = &(f.gamma(i, j, k) - f.gamma(j, i, k)) - f.c(i, j, k);
                    assert!(t.is_zero(), "torsion defect at ({i},{j},{k})");
                }
                // g(∇_i X_j, X_k) + g(X_j, ∇_i X_k) = 0
                for k in 0..n {
                    let mut acc = Scalar::zero(f.backend());
                    for p in 0..n {
                        acc = &acc + &(f.gamma(i, j, p) * f.metric().at(p, k));
                        acc = &acc + &(f.gamma(i, k, p) * f.metric().at(p, j));
                    }
                    assert!(acc.is_zero(), "metric defect at ({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn braces_are_symmetric_and_vanish_on_abelian_frames() {
        let f = LieFrame::abelian(diag(&[1, 1, -1, -1])).unwrap();
        let x = vec![rat(1), rat(2), rat(0), rat(-1)];
        let y = vec![rat(0), rat(1), rat(3), rat(2)];
        assert!(f.braces(&x, &y).unwrap().iter().all(Scalar::is_zero));

        let f = solvable_g4([1, 2, 3, 4]);
        let xy = f.braces(&x, &y).unwrap();
        let yx = f.braces(&y, &x).unwrap();
        assert_eq!(xy, yx);
    }

    /// Independent Koszul solve: recover ∇_i X_j by solving
    /// g(w, X_k) = K_{ijk} with the right-hand side built from brackets.
    fn nabla_by_solving(f: &LieFrame, i: usize, j: usize) -> Vec<Scalar> {
        let n = f.n();
        let half = Scalar::ratio(1, 2, f.backend());
        let rhs: Vec<Scalar> = (0..n)
            .map(|k| {
                let mut acc = Scalar::zero(f.backend());
                for p in 0..n {
                    acc = &acc + &(f.c(i, j, p) * f.metric().at(p, k));
                    acc = &acc - &(f.c(j, k, p) * f.metric().at(p, i));
                    acc = &acc + &(f.c(k, i, p) * f.metric().at(p, j));
                }
                &half * &acc
            })
            .collect();
        match crate::linalg::solve_affine(f.metric(), &rhs).unwrap() {
            crate::linalg::SolutionSet::Affine { particular, .. } => particular,
            crate::linalg::SolutionSet::Empty => panic!("metric is invertible"),
        }
    }

    #[test]
    fn braces_match_an_independent_koszul_solve() {
        let f = solvable_g4([1, 0, 0, 0]);
        let expect: Vec<Scalar> = {
            let a = nabla_by_solving(&f, 1, 3);
            let b = nabla_by_solving(&f, 3, 1);
            a.iter().zip(&b).map(|(x, y)| x + y).collect()
        };
        let got = f.braces(&basis(4, 1), &basis(4, 3)).unwrap();
        assert_eq!(got, expect);
        // Frozen value: for this parameter choice the braces {X2, X4}
        // cancel exactly.
        assert!(got.iter().all(Scalar::is_zero));
    }

    #[test]
    fn gamma_reconstructs_from_braces_and_bracket() {
        let f = solvable_g4([1, 2, 3, 4]);
        let n = f.n();
        let half = Scalar::ratio(1, 2, f.backend());
        for i in 0..n {
            for j in 0..n {
                let br = f.bracket(&basis(n, i), &basis(n, j)).unwrap();
                let sy = f.braces(&basis(n, i), &basis(n, j)).unwrap();
                for k in 0..n {
                    let rebuilt = &half * &(&sy[k] + &br[k]);
                    assert_eq!(&rebuilt, f.gamma(i, j, k));
                }
            }
        }
    }

    #[test]
    fn nabla_of_identity_and_constant_fields_on_abelian_frames() {
        let f = solvable_g4([1, 2, 3, 4]);
        assert!(f.nabla_endo(&Endo::identity(&f)).unwrap().is_zero());

        let ab = LieFrame::abelian(diag(&[1, 1, -1, -1])).unwrap();
        let j = Endo::new(
            &ab,
            Matrix::from_fn(4, 4, |r, c| rat((r * 4 + c) as i64 % 3 - 1)),
        )
        .unwrap();
        assert!(ab.nabla_endo(&j).unwrap().is_zero());
    }

    #[test]
    fn nabla_endo_matches_direct_index_expansion() {
        let f = solvable_g4([1, 2, 3, 4]);
        // J2-style block matrix: X1→X3, X2→X4, X3→-X1, X4→-X2.
        let m = Matrix::from_rows(vec![
            vec![rat(0), rat(0), rat(-1), rat(0)],
            vec![rat(0), rat(0), rat(0), rat(-1)],
            vec![rat(1), rat(0), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0), rat(0)],
        ])
        .unwrap();
        let j = Endo::new(&f, m).unwrap();
        let nj = f.nabla_endo(&j).unwrap();
        assert!(!nj.is_zero());
        let n = f.n();
        for i in 0..n {
            for jj in 0..n {
                for k in 0..n {
                    let mut acc = Scalar::zero(f.backend());
                    for p in 0..n {
                        acc = &acc + &(f.gamma(i, p, k) * j.at(p, jj));
                        acc = &acc - &(j.at(k, p) * f.gamma(i, jj, p));
                    }
                    assert_eq!(&acc, nj.at(i, jj, k));
                }
            }
        }
    }

    #[test]
    fn float_conversion_keeps_the_frame_valid() {
        let f = solvable_g4([1, 2, 3, 4]).to_float_backend().unwrap();
        assert_eq!(f.backend(), Backend::Float);
        let scale = f.max_abs();
        let n = f.n();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t = &(f.gamma(i, j, k) - f.gamma(j, i, k)) - f.c(i, j, k);
                    assert!(t.is_zero_within(scale));
                }
            }
        }
    }

    #[test]
    fn frame_identity_covers_reloaded_data() {
        let a = solvable_g4([1, 2, 3, 4]);
        let b = solvable_g4([1, 2, 3, 4]);
        let c = solvable_g4([1, 2, 3, 5]);
        assert!(LieFrame::same(&a, &b));
        assert!(!LieFrame::same(&a, &c));
    }
}
