//! Existence of a metric connection with totally skew-symmetric torsion
//! preserving a prescribed part of the hypercomplex structure.
//!
//! The candidate connection is parameterized as
//!
//! ```text
//! ∇'_x y = ∇_x y + 1/2 · sharp(T(x, y, ·))
//! ```
//!
//! with `T` an unknown 3-form and `sharp` raising the last slot by the
//! inverse metric. The factor 1/2 makes the torsion tensor of `∇'` equal to
//! `sharp(T)` exactly, and metric preservation is automatic for skew `T`
//! (both facts are re-verified on every solution rather than assumed).
//! Requiring `∇' J_a = 0` for each preserved structure is linear in the
//! `C(n,3)` independent components `T_{ijk}` (`i<j<k`):
//!
//! ```text
//! (∇_{X_i} J_a) X_j + 1/2 [ sharp T(X_i, J_a X_j, ·) - J_a sharp T(X_i, X_j, ·) ] = 0 ,
//! ```
//!
//! one equation per basis pair and output component; the assembled rows are
//! these equations contracted with the metric, which leaves the solution
//! set unchanged and the coefficients free of inverse-metric fractions. The
//! affine solver reports the full solution set, so existence, uniqueness
//! and the family dimension come straight from the rank data.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hn::{metric_sign, HnStructure};
use crate::linalg::{solve_affine, Matrix, SolutionSet};
use crate::report::{residual_value, ResidualReport};
use crate::scalar::Scalar;
use crate::tensor::{idx3, Tensor03};

/// Nonempty subset of `{1, 2, 3}`: which structures the connection must
/// keep parallel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Preserve {
    mask: [bool; 3],
}

impl Preserve {
    pub fn new(alphas: &[usize]) -> Result<Preserve> {
        if alphas.is_empty() {
            return Err(Error::EmptyPreserve);
        }
        let mut mask = [false; 3];
        for &a in alphas {
            if !(1..=3).contains(&a) {
                return Err(Error::BadStructureIndex(a));
            }
            mask[a - 1] = true;
        }
        Ok(Preserve { mask })
    }

    pub fn all() -> Preserve {
        Preserve {
            mask: [true; 3],
        }
    }

    pub fn single(alpha: usize) -> Result<Preserve> {
        Preserve::new(&[alpha])
    }

    pub fn contains(&self, alpha: usize) -> bool {
        (1..=3).contains(&alpha) && self.mask[alpha - 1]
    }

    pub fn alphas(&self) -> Vec<usize> {
        (1..=3).filter(|&a| self.mask[a - 1]).collect()
    }
}

#[derive(Clone, Debug)]
pub struct TorsionProblem {
    pub hn: HnStructure,
    pub preserve: Preserve,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionStatus {
    NoSolution,
    Unique,
    Family,
}

impl TorsionStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            TorsionStatus::NoSolution => "none",
            TorsionStatus::Unique => "unique",
            TorsionStatus::Family => "family",
        }
    }

    pub fn exists(&self) -> bool {
        !matches!(self, TorsionStatus::NoSolution)
    }
}

/// Outcome of a torsion solve. `torsion` is the particular solution (a
/// 3-form) when one exists; `verification` holds the substituted-back
/// residual rows for it.
#[derive(Clone, Debug)]
pub struct TorsionResult {
    pub status: TorsionStatus,
    pub torsion: Option<Tensor03>,
    pub family_dim: usize,
    pub verification: Option<ConnectionReport>,
}

impl TorsionResult {
    pub fn to_json(&self) -> Value {
        let torsion = self.torsion.as_ref().map(|t| {
            let n = t.n();
            let mut rows = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let v = t.at(i, j, k);
                        if v.is_zero() {
                            continue;
                        }
                        rows.push(json!({
                            "i": i + 1,
                            "j": j + 1,
                            "k": k + 1,
                            "value": residual_value(v),
                        }));
                    }
                }
            }
            Value::Array(rows)
        });
        json!({
            "status": self.status.as_str(),
            "family_dim": self.family_dim,
            "T": torsion,
            "residuals": self
                .verification
                .as_ref()
                .map(ConnectionReport::residual_map),
        })
    }
}

/// Residual rows from substituting a candidate torsion form back into every
/// defining property of the connection.
#[derive(Clone, Debug)]
pub struct ConnectionReport {
    pub rows: Vec<ResidualReport>,
}

impl ConnectionReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(ResidualReport::passes)
    }

    pub fn residual_map(&self) -> Value {
        let mut map = Map::new();
        for row in &self.rows {
            map.insert(row.label.clone(), residual_value(&row.max_abs));
        }
        Value::Object(map)
    }
}

/// Ordered list of index triples `i < j < k`.
pub fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Lookup table: flat `(i,j,k)` index of a sorted triple to its unknown
/// slot; `None` off the strictly increasing triples.
fn triple_slots(n: usize, trips: &[[usize; 3]]) -> Vec<Option<usize>> {
    let mut slots = vec![None; n * n * n];
    for (s, &[i, j, k]) in trips.iter().enumerate() {
        slots[idx3(i, j, k, n)] = Some(s);
    }
    slots
}

/// Signed unknown slot of `T_{ijk}` for arbitrary distinct indices.
fn signed_slot(
    mut i: usize,
    mut j: usize,
    mut k: usize,
    n: usize,
    slots: &[Option<usize>],
) -> Option<(usize, i8)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut sign = 1i8;
    if i > j {
        std::mem::swap(&mut i, &mut j);
        sign = -sign;
    }
    if j > k {
        std::mem::swap(&mut j, &mut k);
        sign = -sign;
    }
    if i > j {
        std::mem::swap(&mut i, &mut j);
        sign = -sign;
    }
    slots[idx3(i, j, k, n)].map(|s| (s, sign))
}

/// Decides whether a connection with totally skew-symmetric torsion exists
/// that preserves the metric and every requested `J_a`, and returns the
/// solution set classification together with a verified particular torsion
/// form.
pub fn solve_skew_torsion(problem: &TorsionProblem) -> Result<TorsionResult> {
    let h = &problem.hn;
    let frame = h.frame();
    let n = frame.n();
    let backend = frame.backend();
    let trips = triples(n);
    let slots = triple_slots(n, &trips);
    let unknowns = trips.len();

    let alphas = problem.preserve.alphas();
    let rows = alphas.len() * n * n * n;

    let two = Scalar::from_int(2, backend);
    let mut coeffs: Vec<Vec<Scalar>> = Vec::with_capacity(rows);
    let mut rhs: Vec<Scalar> = Vec::with_capacity(rows);

    // Rows are the lowered parallelism equations
    //
    //   2 F_a(X_i, X_j, X_s) + T(X_i, J_a X_j, X_s) + eps_a T(X_i, X_j, J_a X_s) = 0,
    //
    // the contraction of the defining condition with the invertible metric
    // (using eps_a J_aT g J_a = g); same solution set, but the coefficients
    // are structure-matrix entries rather than inverse-metric fractions.
    for &alpha in &alphas {
        let j = h.j(alpha);
        let f = h.fundamental(alpha)?;
        let eps = metric_sign(alpha);
        for i in 0..n {
            for jj in 0..n {
                for s in 0..n {
                    let mut row = vec![Scalar::zero(backend); unknowns];
                    // T(X_i, J X_j, X_s): J^m_j T_{ims}
                    for m in 0..n {
                        let jmj = j.at(m, jj);
                        if jmj.is_zero() {
                            continue;
                        }
                        if let Some((slot, sign)) = signed_slot(i, m, s, n, &slots) {
                            row[slot] = if sign > 0 {
                                &row[slot] + jmj
                            } else {
                                &row[slot] - jmj
                            };
                        }
                    }
                    // eps * T(X_i, X_j, J X_s): eps J^p_s T_{ijp}
                    for p in 0..n {
                        let jps = j.at(p, s);
                        if jps.is_zero() {
                            continue;
                        }
                        if let Some((slot, sign)) = signed_slot(i, jj, p, n, &slots) {
                            row[slot] = if (sign > 0) == (eps > 0) {
                                &row[slot] + jps
                            } else {
                                &row[slot] - jps
                            };
                        }
                    }
                    coeffs.push(row);
                    rhs.push(-&(&two * f.t.at(i, jj, s)));
                }
            }
        }
    }

    let a = Matrix::from_rows(coeffs)?;
    let solution = solve_affine(&a, &rhs)?;

    match solution {
        SolutionSet::Empty => Ok(TorsionResult {
            status: TorsionStatus::NoSolution,
            torsion: None,
            family_dim: 0,
            verification: None,
        }),
        SolutionSet::Affine {
            particular,
            nullspace_basis,
        } => {
            let torsion = expand_form(frame_ref(h), &trips, &particular);
            let status = if nullspace_basis.is_empty() {
                TorsionStatus::Unique
            } else {
                TorsionStatus::Family
            };
            let verification = verify_connection(h, &torsion, &problem.preserve)?;
            Ok(TorsionResult {
                status,
                family_dim: nullspace_basis.len(),
                torsion: Some(torsion),
                verification: Some(verification),
            })
        }
    }
}

fn frame_ref(h: &HnStructure) -> &crate::frame::LieFrame {
    h.frame()
}

/// Expands independent components `t_{i<j<k}` into the dense, totally
/// antisymmetric (0,3)-tensor.
pub fn expand_form(
    frame: &crate::frame::LieFrame,
    trips: &[[usize; 3]],
    values: &[Scalar],
) -> Tensor03 {
    let n = frame.n();
    let slots = triple_slots(n, trips);
    Tensor03::from_fn(frame, |i, j, k| {
        match signed_slot(i, j, k, n, &slots) {
            Some((slot, sign)) => {
                if sign > 0 {
                    values[slot].clone()
                } else {
                    -&values[slot]
                }
            }
            None => Scalar::zero(frame.backend()),
        }
    })
}

/// Substitutes a torsion 3-form back into the connection and reports the
/// residuals of every defining property:
///
/// * `torsion-skew`: total antisymmetry of `T` (also a precondition);
/// * `metric-parallel`: `∇' g = 0` on all basis triples;
/// * `J{a}-parallel`: `∇' J_a = 0` for each preserved structure;
/// * `torsion-matches-sharp` / `torsion-matches-form`: the torsion tensor
///   of `∇'` recovers `sharp(T)` and, lowered, `T` itself.
pub fn verify_connection(
    h: &HnStructure,
    t: &Tensor03,
    preserve: &Preserve,
) -> Result<ConnectionReport> {
    let frame = h.frame();
    t.check_frame(frame)?;
    let n = frame.n();
    let backend = frame.backend();
    let scale = h.max_abs().max(t.max_abs());
    if let Some([i, j, k]) = t.three_form_defect(scale) {
        return Err(Error::NotSkewTorsion(i, j, k));
    }

    let g = frame.metric();
    let g_inv = frame.metric_inv();
    let half = Scalar::ratio(1, 2, backend);

    // sharp(T)^k_{ij} = g^{kp} T_{ijp}
    let sharp = |i: usize, j: usize, k: usize| -> Scalar {
        let mut acc = Scalar::zero(backend);
        for p in 0..n {
            let tijp = t.at(i, j, p);
            if tijp.is_zero() {
                continue;
            }
            acc = &acc + &(g_inv.at(k, p) * tijp);
        }
        acc
    };

    // Γ'^k_{ij}
    let mut gamma_prime = vec![Scalar::zero(backend); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                gamma_prime[idx3(i, j, k, n)] =
                    frame.gamma(i, j, k) + &(&half * &sharp(i, j, k));
            }
        }
    }
    let gp = |i: usize, j: usize, k: usize| &gamma_prime[idx3(i, j, k, n)];

    let mut rows = Vec::new();
    fn track(value: Scalar, arg: [usize; 3], worst: &mut (Scalar, Option<[usize; 3]>)) {
        let a = value.abs();
        if worst.0.abs_cmp(&a) == std::cmp::Ordering::Less {
            *worst = (a, Some(arg));
        }
    }

    // (a) total antisymmetry of T
    let mut skew_worst = (Scalar::zero(backend), None);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                track(t.at(i, j, k) + t.at(j, i, k), [i, j, k], &mut skew_worst);
                track(t.at(i, j, k) + t.at(i, k, j), [i, j, k], &mut skew_worst);
            }
        }
    }
    rows.push(ResidualReport::new(
        "torsion-skew",
        skew_worst.0,
        skew_worst.1,
        scale,
    ));

    // (b) ∇' g = 0: g(∇'_i X_j, X_k) + g(X_j, ∇'_i X_k) = 0
    let mut metric_worst = (Scalar::zero(backend), None);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = Scalar::zero(backend);
                for p in 0..n {
                    acc = &acc + &(gp(i, j, p) * g.at(p, k));
                    acc = &acc + &(gp(i, k, p) * g.at(p, j));
                }
                track(acc, [i, j, k], &mut metric_worst);
            }
        }
    }
    rows.push(ResidualReport::new(
        "metric-parallel",
        metric_worst.0,
        metric_worst.1,
        scale,
    ));

    // (c) ∇' J_a = 0 for each preserved structure
    for alpha in preserve.alphas() {
        let j = h.j(alpha);
        let mut worst = (Scalar::zero(backend), None);
        for i in 0..n {
            for jj in 0..n {
                for k in 0..n {
                    let mut acc = Scalar::zero(backend);
                    for p in 0..n {
                        acc = &acc + &(gp(i, p, k) * j.at(p, jj));
                        acc = &acc - &(j.at(k, p) * gp(i, jj, p));
                    }
                    track(acc, [i, jj, k], &mut worst);
                }
            }
        }
        rows.push(ResidualReport::new(
            format!("J{alpha}-parallel"),
            worst.0,
            worst.1,
            scale,
        ));
    }

    // (d) torsion of ∇' equals sharp(T), checked raised and lowered
    let mut raised_worst = (Scalar::zero(backend), None);
    let mut lowered_worst = (Scalar::zero(backend), None);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let tor = &(gp(i, j, k) - gp(j, i, k)) - frame.c(i, j, k);
                track(&tor - &sharp(i, j, k), [i, j, k], &mut raised_worst);
                // lowered torsion component against T itself
                let mut low = Scalar::zero(backend);
                for p in 0..n {
                    let torp = &(gp(i, j, p) - gp(j, i, p)) - frame.c(i, j, p);
                    low = &low + &(&torp * g.at(p, k));
                }
                track(&low - t.at(i, j, k), [i, j, k], &mut lowered_worst);
            }
        }
    }
    rows.push(ResidualReport::new(
        "torsion-matches-sharp",
        raised_worst.0,
        raised_worst.1,
        scale,
    ));
    rows.push(ResidualReport::new(
        "torsion-matches-form",
        lowered_worst.0,
        lowered_worst.1,
        scale,
    ));

    Ok(ConnectionReport { rows })
}
