//! Dense matrices and the elimination routines behind every decision the
//! crate makes: affine solution sets with nullspace bases, inverses, and
//! signatures of symmetric matrices.
//!
//! On the rational backend every pivot decision is exact. On the float
//! backend rank decisions use scaled partial pivoting with the crate-wide
//! `1e-9` relative threshold.

use crate::error::{Error, Result};
use crate::scalar::{check_backend, max_abs_f64, scaled_tol, Backend, Scalar};

/// Row-major dense matrix over one scalar backend.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn from_fn<F>(rows: usize, cols: usize, mut entry: F) -> Matrix
    where
        F: FnMut(usize, usize) -> Scalar,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(entry(r, c));
            }
        }
        let m = Matrix { rows, cols, data };
        debug_assert!(m.uniform_backend());
        m
    }

    /// Builds a matrix from row vectors, validating shape and backend.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::DimensionMismatch("matrix needs at least one row".into()));
        }
        let ncols = rows[0].len();
        if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        let backend = data[0].backend();
        check_backend(data.iter(), backend, "matrix entries")?;
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize, backend: Backend) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| Scalar::zero(backend))
    }

    pub fn identity(n: usize, backend: Backend) -> Matrix {
        Matrix::from_fn(n, n, |r, c| {
            if r == c {
                Scalar::one(backend)
            } else {
                Scalar::zero(backend)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn backend(&self) -> Backend {
        self.data[0].backend()
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    fn uniform_backend(&self) -> bool {
        let backend = self.data[0].backend();
        self.data.iter().all(|s| s.backend() == backend)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// First index pair breaking symmetry, if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        for r in 0..self.rows {
            for c in r + 1..self.cols {
                if self.at(r, c) != self.at(c, r) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.backend() != rhs.backend() {
            return Err(Error::BackendMismatch("matrix product"));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = Scalar::zero(self.backend());
            for k in 0..self.cols {
                acc = &acc + &(self.at(r, k) * rhs.at(k, c));
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with<F>(&self, rhs: &Matrix, f: F) -> Result<Matrix>
    where
        F: Fn(&Scalar, &Scalar) -> Scalar,
    {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix shapes differ".into()));
        }
        if self.backend() != rhs.backend() {
            return Err(Error::BackendMismatch("matrix sum"));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |r, c| {
            f(self.at(r, c), rhs.at(r, c))
        }))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self.at(r, c))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero(self.backend());
                for c in 0..self.cols {
                    acc = &acc + &(self.at(r, c) * &x[c]);
                }
                acc
            })
            .collect())
    }

    pub fn max_abs(&self) -> f64 {
        max_abs_f64(self.data.iter())
    }

    pub fn to_float_backend(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).to_float_backend()
        })
    }

    /// Inverse by Gauss-Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let backend = self.backend();
        let tol = match backend {
            Backend::Rational => 0.0,
            Backend::Float => scaled_tol(self.max_abs()),
        };

        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row: Vec<Scalar> = (0..n).map(|c| self.at(r, c).clone()).collect();
                row.extend((0..n).map(|c| {
                    if r == c {
                        Scalar::one(backend)
                    } else {
                        Scalar::zero(backend)
                    }
                }));
                row
            })
            .collect();

        for col in 0..n {
            // Any nonzero pivot works exactly on rationals; floats take the
            // largest magnitude for stability.
            let pivot_row = match backend {
                Backend::Rational => (col..n).find(|&r| !aug[r][col].is_zero()),
                Backend::Float => (col..n)
                    .filter(|&r| !is_negligible(&aug[r][col], tol))
                    .max_by(|&x, &y| aug[x][col].abs_cmp(&aug[y][col])),
            }
            .ok_or(Error::SingularMatrix)?;
            aug.swap(col, pivot_row);

            let pivot = aug[col][col].clone();
            for v in aug[col].iter_mut() {
                *v = v.div(&pivot);
            }
            for r in 0..n {
                if r == col || aug[r][col].is_zero() {
                    continue;
                }
                let factor = aug[r][col].clone();
                let (pivot_row_vec, target) = if r < col {
                    let (head, tail) = aug.split_at_mut(col);
                    (&tail[0], &mut head[r])
                } else {
                    let (head, tail) = aug.split_at_mut(r);
                    (&head[col], &mut tail[0])
                };
                for (t, p) in target.iter_mut().zip(pivot_row_vec.iter()) {
                    *t = &*t - &(&factor * p);
                }
            }
        }

        Ok(Matrix::from_fn(n, n, |r, c| aug[r][n + c].clone()))
    }
}

fn is_negligible(s: &Scalar, tol: f64) -> bool {
    match s {
        Scalar::Rational(_) => s.is_zero(),
        Scalar::Float(x) => x.abs() <= tol,
    }
}

/// Full solution set of a linear system `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum SolutionSet {
    Empty,
    Affine {
        particular: Vec<Scalar>,
        nullspace_basis: Vec<Vec<Scalar>>,
    },
}

impl SolutionSet {
    pub fn nullity(&self) -> Option<usize> {
        match self {
            SolutionSet::Empty => None,
            SolutionSet::Affine { nullspace_basis, .. } => Some(nullspace_basis.len()),
        }
    }
}

/// Solves `A x = b`, returning the affine solution set.
///
/// The rational path runs fraction-free integer elimination (rows scaled to
/// primitive integer vectors, two-row combinations, content reduction), so
/// no gcd-heavy rational arithmetic happens in the hot loop; only the final
/// reduced pivot block is solved over the rationals. The float path uses
/// scaled partial pivoting with the crate-wide rank tolerance.
pub fn solve_affine(a: &Matrix, b: &[Scalar]) -> Result<SolutionSet> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but {} right-hand sides",
            a.rows(),
            b.len()
        )));
    }
    let backend = a.backend();
    check_backend(b.iter(), backend, "right-hand side")?;
    match backend {
        Backend::Rational => solve_affine_rational(a, b),
        Backend::Float => solve_affine_float(a, b),
    }
}

fn solve_affine_float(a: &Matrix, b: &[Scalar]) -> Result<SolutionSet> {
    let backend = a.backend();
    let m = a.rows();
    let n = a.cols();
    let tol = scaled_tol(a.max_abs().max(max_abs_f64(b.iter())));

    // Augmented rows [A | b].
    let mut aug: Vec<Vec<Scalar>> = (0..m)
        .map(|r| {
            let mut row: Vec<Scalar> = (0..n).map(|c| a.at(r, c).clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut next_row = 0;
    for col in 0..n {
        if next_row == m {
            break;
        }
        let pivot_row = (next_row..m)
            .filter(|&r| !is_negligible(&aug[r][col], tol))
            .max_by(|&x, &y| aug[x][col].abs_cmp(&aug[y][col]));
        let Some(pivot_row) = pivot_row else {
            continue;
        };
        aug.swap(next_row, pivot_row);

        let pivot = aug[next_row][col].clone();
        for v in aug[next_row][col..].iter_mut() {
            *v = v.div(&pivot);
        }
        let (done, rest) = aug.split_at_mut(next_row + 1);
        let pivot_vec = &done[next_row];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (t, p) in row[col..].iter_mut().zip(pivot_vec[col..].iter()) {
                *t = &*t - &(&factor * p);
            }
        }
        pivot_cols.push(col);
        next_row += 1;
    }

    // Rows below the last pivot have zero coefficients; a nonzero right-hand
    // side there makes the system inconsistent.
    for row in aug[pivot_cols.len()..].iter() {
        if !is_negligible(&row[n], tol) {
            return Ok(SolutionSet::Empty);
        }
    }

    // Backward pass: clear pivot columns above each pivot.
    for k in (0..pivot_cols.len()).rev() {
        let col = pivot_cols[k];
        for r in 0..k {
            if aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            let (head, tail) = aug.split_at_mut(k);
            let pivot_vec = &tail[0];
            for (t, p) in head[r][col..].iter_mut().zip(pivot_vec[col..].iter()) {
                *t = &*t - &(&factor * p);
            }
        }
    }

    let mut particular = vec![Scalar::zero(backend); n];
    for (k, &col) in pivot_cols.iter().enumerate() {
        particular[col] = aug[k][n].clone();
    }

    let pivot_set: Vec<bool> = {
        let mut set = vec![false; n];
        for &c in &pivot_cols {
            set[c] = true;
        }
        set
    };
    let mut nullspace_basis = Vec::new();
    for free in (0..n).filter(|&c| !pivot_set[c]) {
        let mut v = vec![Scalar::zero(backend); n];
        v[free] = Scalar::one(backend);
        for (k, &col) in pivot_cols.iter().enumerate() {
            v[col] = -&aug[k][free];
        }
        nullspace_basis.push(v);
    }

    Ok(SolutionSet::Affine {
        particular,
        nullspace_basis,
    })
}

fn solve_affine_rational(a: &Matrix, b: &[Scalar]) -> Result<SolutionSet> {
    use num::{BigInt, BigRational, Integer, One, Signed, Zero};

    let m = a.rows();
    let n = a.cols();

    fn as_ratio(s: &Scalar) -> &num::BigRational {
        match s {
            Scalar::Rational(r) => r,
            Scalar::Float(_) => unreachable!("backend checked by caller"),
        }
    }

    // Primitive integer rows: clear denominators, divide out the content.
    let reduce_content = |row: &mut [BigInt]| {
        let mut content = BigInt::zero();
        for v in row.iter() {
            if !v.is_zero() {
                content = content.gcd(v);
            }
        }
        if !content.is_zero() && !content.is_one() {
            for v in row.iter_mut() {
                *v = &*v / &content;
            }
        }
    };
    let mut aug: Vec<Vec<BigInt>> = (0..m)
        .map(|r| {
            let mut denom_lcm = BigInt::one();
            for c in 0..n {
                denom_lcm = denom_lcm.lcm(as_ratio(a.at(r, c)).denom());
            }
            denom_lcm = denom_lcm.lcm(as_ratio(&b[r]).denom());
            let scaled = |s: &Scalar| -> BigInt {
                let q = as_ratio(s);
                q.numer() * (&denom_lcm / q.denom())
            };
            let mut row: Vec<BigInt> = (0..n).map(|c| scaled(a.at(r, c))).collect();
            row.push(scaled(&b[r]));
            reduce_content(&mut row);
            row
        })
        .collect();

    // Fraction-free forward elimination: combine rows as
    // (p/g)·row - (v/g)·pivot_row with g = gcd(p, v), then strip the
    // content, so every intermediate row stays a primitive integer vector.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut next_row = 0;
    for col in 0..n {
        if next_row == m {
            break;
        }
        // Smallest nonzero pivot keeps the combination factors small.
        let pivot_row = (next_row..m)
            .filter(|&r| !aug[r][col].is_zero())
            .min_by(|&x, &y| aug[x][col].abs().cmp(&aug[y][col].abs()));
        let Some(pivot_row) = pivot_row else {
            continue;
        };
        aug.swap(next_row, pivot_row);

        let (done, rest) = aug.split_at_mut(next_row + 1);
        let pivot_vec = &done[next_row];
        let p = pivot_vec[col].clone();
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = p.gcd(&row[col]);
            let pm = &p / &g;
            let rm = &row[col] / &g;
            // v*(p/g) - (v/g)*p cancels exactly in the pivot column.
            let mut grown = false;
            for (t, pv) in row[col..].iter_mut().zip(pivot_vec[col..].iter()) {
                *t = &(&*t * &pm) - &(&rm * pv);
                grown |= t.bits() > 64;
            }
            debug_assert!(row[col].is_zero());
            // Content stripping costs a gcd pass; only pay for it once
            // entries outgrow a machine word.
            if grown {
                reduce_content(&mut row[col..]);
            }
        }
        pivot_cols.push(col);
        next_row += 1;
    }

    // Leftover rows have zero coefficients everywhere.
    for row in aug[pivot_cols.len()..].iter() {
        if !row[n].is_zero() {
            return Ok(SolutionSet::Empty);
        }
    }

    // Reduce the small pivot block over the rationals.
    let k = pivot_cols.len();
    let mut reduced: Vec<Vec<BigRational>> = aug[..k]
        .iter()
        .map(|row| row.iter().map(|v| BigRational::from_integer(v.clone())).collect())
        .collect();
    for (idx, &col) in pivot_cols.iter().enumerate() {
        let pivot = reduced[idx][col].clone();
        for v in reduced[idx][col..].iter_mut() {
            *v = &*v / &pivot;
        }
        for r in 0..k {
            if r == idx || reduced[r][col].is_zero() {
                continue;
            }
            let factor = reduced[r][col].clone();
            let (head, tail) = if r < idx {
                let (h, t) = reduced.split_at_mut(idx);
                (&mut h[r], &t[0])
            } else {
                let (h, t) = reduced.split_at_mut(r);
                (&mut t[0], &h[idx])
            };
            for (t, p) in head[col..].iter_mut().zip(tail[col..].iter()) {
                *t = &*t - &(&factor * p);
            }
        }
    }

    let backend = Backend::Rational;
    let mut particular = vec![Scalar::zero(backend); n];
    for (idx, &col) in pivot_cols.iter().enumerate() {
        particular[col] = Scalar::Rational(reduced[idx][n].clone());
    }
    let pivot_set: Vec<bool> = {
        let mut set = vec![false; n];
        for &c in &pivot_cols {
            set[c] = true;
        }
        set
    };
    let mut nullspace_basis = Vec::new();
    for free in (0..n).filter(|&c| !pivot_set[c]) {
        let mut v = vec![Scalar::zero(backend); n];
        v[free] = Scalar::one(backend);
        for (idx, &col) in pivot_cols.iter().enumerate() {
            v[col] = Scalar::Rational(-&reduced[idx][free]);
        }
        nullspace_basis.push(v);
    }

    Ok(SolutionSet::Affine {
        particular,
        nullspace_basis,
    })
}

/// Signature `(p, q)` of a symmetric nondegenerate matrix, computed by
/// symmetric congruence diagonalization.
///
/// When the trailing block has only zeros on its diagonal, a row+column
/// addition moves a nonzero off-diagonal entry onto the diagonal first; the
/// whole reduction stays a congruence, so the sign counts are exact on the
/// rational backend.
pub fn signature(g: &Matrix) -> Result<(usize, usize)> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch("signature of non-square matrix".into()));
    }
    if let Some((r, c)) = g.asymmetry() {
        return Err(Error::MetricNotSymmetric(r, c));
    }
    let n = g.rows();
    let backend = g.backend();
    let tol = match backend {
        Backend::Rational => 0.0,
        Backend::Float => scaled_tol(g.max_abs()),
    };

    let mut d: Vec<Vec<Scalar>> = (0..n)
        .map(|r| (0..n).map(|c| g.at(r, c).clone()).collect())
        .collect();

    let mut pos = 0;
    let mut neg = 0;
    for step in 0..n {
        let diag_pivot = match backend {
            Backend::Rational => (step..n).find(|&r| !d[r][r].is_zero()),
            Backend::Float => (step..n)
                .filter(|&r| !is_negligible(&d[r][r], tol))
                .max_by(|&x, &y| d[x][x].abs_cmp(&d[y][y])),
        };

        let pivot_idx = match diag_pivot {
            Some(r) => r,
            None => {
                // All trailing diagonal entries vanish; pull in the largest
                // off-diagonal entry via the congruence row_r += row_s,
                // col_r += col_s, which puts 2*d[r][s] on the diagonal.
                let mut best: Option<(usize, usize)> = None;
                for r in step..n {
                    for s in r + 1..n {
                        if is_negligible(&d[r][s], tol) {
                            continue;
                        }
                        best = match best {
                            Some((br, bs))
                                if d[br][bs].abs_cmp(&d[r][s])
                                    != std::cmp::Ordering::Less =>
                            {
                                best
                            }
                            _ => Some((r, s)),
                        };
                    }
                }
                let Some((r, s)) = best else {
                    return Err(Error::DegenerateMetric);
                };
                for j in 0..n {
                    let v = d[s][j].clone();
                    d[r][j] = &d[r][j] + &v;
                }
                for i in 0..n {
                    let v = d[i][s].clone();
                    d[i][r] = &d[i][r] + &v;
                }
                r
            }
        };

        if pivot_idx != step {
            d.swap(step, pivot_idx);
            for row in d.iter_mut() {
                row.swap(step, pivot_idx);
            }
        }

        let pivot = d[step][step].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }

        // Congruence elimination of row/column `step` from the trailing
        // block: d[i][j] -= f_i * f_j * pivot with f_i = d[i][step]/pivot.
        let factors: Vec<Scalar> = (step + 1..n)
            .map(|i| d[i][step].div(&pivot))
            .collect();
        for (ii, fi) in factors.iter().enumerate() {
            let i = step + 1 + ii;
            for (jj, fj) in factors.iter().enumerate() {
                let j = step + 1 + jj;
                d[i][j] = &d[i][j] - &(&(fi * fj) * &pivot);
            }
        }
    }

    Ok((pos, neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(v: i64) -> Scalar {
        Scalar::from_int(v, Backend::Rational)
    }

    fn rat_matrix(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn residual_is_zero(a: &Matrix, b: &[Scalar], x: &[Scalar]) -> bool {
        let ax = a.apply(x).unwrap();
        ax.iter().zip(b).all(|(l, r)| l == r)
    }

    #[test]
    fn identity_system_has_unique_solution() {
        let a = Matrix::identity(3, Backend::Rational);
        let b = vec![rat(1), rat(2), rat(3)];
        match solve_affine(&a, &b).unwrap() {
            SolutionSet::Affine {
                particular,
                nullspace_basis,
            } => {
                assert_eq!(particular, b);
                assert!(nullspace_basis.is_empty());
            }
            SolutionSet::Empty => panic!("identity system must be solvable"),
        }
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let a = Matrix::zeros(2, 2, Backend::Rational);
        let b = vec![rat(1), rat(0)];
        assert_eq!(solve_affine(&a, &b).unwrap(), SolutionSet::Empty);
    }

    #[test]
    fn rank_one_system_has_line_of_solutions() {
        let a = rat_matrix(&[&[1, 1], &[2, 2]]);
        let b = vec![rat(3), rat(6)];
        match solve_affine(&a, &b).unwrap() {
            SolutionSet::Affine {
                particular,
                nullspace_basis,
            } => {
                assert_eq!(nullspace_basis.len(), 1);
                // Basis vector is proportional to (1, -1).
                let v = &nullspace_basis[0];
                assert_eq!(&v[0] + &v[1], rat(0));
                assert!(!v[0].is_zero());
                assert!(residual_is_zero(&a, &b, &particular));
                let shifted: Vec<Scalar> =
                    particular.iter().zip(v).map(|(p, n)| p + n).collect();
                assert!(residual_is_zero(&a, &b, &shifted));
            }
            SolutionSet::Empty => panic!("consistent system"),
        }
    }

    #[test]
    fn backend_mismatch_is_rejected() {
        let a = Matrix::identity(2, Backend::Rational);
        let b = vec![Scalar::Float(1.0), Scalar::Float(0.0)];
        assert!(matches!(
            solve_affine(&a, &b),
            Err(Error::BackendMismatch(_))
        ));
    }

    #[test]
    fn neutral_metric_signature() {
        let g = rat_matrix(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, -1, 0],
            &[0, 0, 0, -1],
        ]);
        assert_eq!(signature(&g).unwrap(), (2, 2));
    }

    #[test]
    fn identity_signature_is_definite() {
        for n in 1..6 {
            let g = Matrix::identity(n, Backend::Rational);
            assert_eq!(signature(&g).unwrap(), (n, 0));
        }
    }

    /// Expected value frozen from a brute-force eigenvalue count at float
    /// precision (see the congruence below: eigenvalues ~ {3.56, -2.56}).
    #[test]
    fn signature_is_congruence_invariant_on_the_worked_example() {
        let g = rat_matrix(&[&[2, 0], &[0, -3]]);
        let p = rat_matrix(&[&[1, 1], &[0, 1]]);
        let ptgp = p.transpose().mul(&g).unwrap().mul(&p).unwrap();
        assert_eq!(ptgp, rat_matrix(&[&[2, 2], &[2, -1]]));
        assert_eq!(signature(&ptgp).unwrap(), (1, 1));

        let eigs = jacobi_eigenvalues(&[[2.0, 2.0], [2.0, -1.0]].map(|r| r.to_vec()));
        let pos = eigs.iter().filter(|&&x| x > 0.0).count();
        let neg = eigs.iter().filter(|&&x| x < 0.0).count();
        assert_eq!((pos, neg), (1, 1));
    }

    #[test]
    fn off_diagonal_only_matrix_has_split_signature() {
        // Forces the row+column addition path.
        let g = rat_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&g).unwrap(), (1, 1));
    }

    #[test]
    fn degenerate_metric_is_detected() {
        let g = rat_matrix(&[&[1, 0], &[0, 0]]);
        assert!(matches!(signature(&g), Err(Error::DegenerateMetric)));
    }

    #[test]
    fn inverse_of_identity_and_neutral_metric() {
        let i4 = Matrix::identity(4, Backend::Rational);
        assert_eq!(i4.inverse().unwrap(), i4);
        let g = rat_matrix(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, -1, 0],
            &[0, 0, 0, -1],
        ]);
        // The neutral diagonal metric is its own inverse.
        assert_eq!(g.inverse().unwrap(), g);
    }

    #[test]
    fn random_rational_inverse_passes_product_check() {
        let a = rat_matrix(&[
            &[2, 1, 0, -1],
            &[1, 3, 1, 0],
            &[0, -2, 1, 1],
            &[1, 0, 0, 2],
        ]);
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv).unwrap();
        assert_eq!(prod, Matrix::identity(4, Backend::Rational));
        let prod2 = inv.mul(&a).unwrap();
        assert_eq!(prod2, Matrix::identity(4, Backend::Rational));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = rat_matrix(&[&[1, 2], &[2, 4]]);
        assert!(matches!(a.inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn float_solver_uses_scaled_tolerance() {
        let a = Matrix::from_rows(vec![
            vec![Scalar::Float(1.0), Scalar::Float(1.0)],
            vec![Scalar::Float(1.0), Scalar::Float(1.0 + 1e-13)],
        ])
        .unwrap();
        let b = vec![Scalar::Float(2.0), Scalar::Float(2.0)];
        // The second row is within tolerance of the first: rank 1.
        match solve_affine(&a, &b).unwrap() {
            SolutionSet::Affine { nullspace_basis, .. } => {
                assert_eq!(nullspace_basis.len(), 1)
            }
            SolutionSet::Empty => panic!("consistent within tolerance"),
        }
    }

    /// Plain cyclic Jacobi iteration; test-only oracle for sign counts.
    fn jacobi_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
        let n = m.len();
        let mut a: Vec<Vec<f64>> = m.to_vec();
        for _ in 0..100 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in i + 1..n {
                    off += a[i][j] * a[i][j];
                }
            }
            if off.sqrt() < 1e-12 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[p][q].abs() < 1e-15 {
                        continue;
                    }
                    let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        (0..n).map(|i| a[i][i]).collect()
    }

    proptest! {
        /// Substituting the particular solution and each basis shift back
        /// into the system gives an exact zero residual.
        #[test]
        fn affine_solutions_satisfy_the_system(
            entries in proptest::collection::vec(-4i64..=4, 12),
            rhs in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let a = Matrix::from_fn(3, 4, |r, c| rat(entries[r * 4 + c]));
            let b: Vec<Scalar> = rhs.iter().map(|&v| rat(v)).collect();
            if let SolutionSet::Affine { particular, nullspace_basis } =
                solve_affine(&a, &b).unwrap()
            {
                prop_assert!(residual_is_zero(&a, &b, &particular));
                for basis in &nullspace_basis {
                    let shifted: Vec<Scalar> =
                        particular.iter().zip(basis).map(|(p, n)| p + n).collect();
                    prop_assert!(residual_is_zero(&a, &b, &shifted));
                }
            }
        }

        /// Signature is invariant under congruence by an invertible matrix.
        #[test]
        fn signature_congruence_invariance(
            diag in proptest::collection::vec(prop_oneof![Just(-3i64), Just(-1), Just(1), Just(2)], 3),
            upper in proptest::collection::vec(-2i64..=2, 3),
        ) {
            let g = Matrix::from_fn(3, 3, |r, c| {
                if r == c { rat(diag[r]) } else { rat(0) }
            });
            // Unit upper-triangular congruence: always invertible.
            let p = Matrix::from_fn(3, 3, |r, c| {
                if r == c { rat(1) }
                else if r < c { rat(upper[r + c - 1]) }
                else { rat(0) }
            });
            let ptgp = p.transpose().mul(&g).unwrap().mul(&p).unwrap();
            prop_assert_eq!(signature(&g).unwrap(), signature(&ptgp).unwrap());
        }

        /// Inverting twice returns the original matrix.
        #[test]
        fn inverse_is_an_involution(entries in proptest::collection::vec(-3i64..=3, 9)) {
            let a = Matrix::from_fn(3, 3, |r, c| rat(entries[r * 3 + c]));
            if let Ok(inv) = a.inverse() {
                prop_assert_eq!(inv.inverse().unwrap(), a);
            }
        }
    }
}
