//! Almost hypercomplex structures with a Hermitian-Norden metric.
//!
//! A structure bundles a frame of dimension `4m` with a quaternionic triple
//! `(J1, J2, J3)`: `J_a = J_b ∘ J_c = -J_c ∘ J_b` for cyclic `(a, b, c)` and
//! `J_a² = -I`. The metric is Hermitian for `J1` and Norden (an
//! anti-isometry) for `J2`, `J3`:
//!
//! ```text
//! g(x, y) = ε_a g(J_a x, J_a y),   ε_1 = +1,  ε_2 = ε_3 = -1,
//! ```
//!
//! which forces neutral signature `(2m, 2m)`.
//!
//! On top of a validated structure this module computes the fundamental
//! tensors `F_a(x,y,z) = g((∇_x J_a) y, z)`, the six associated Nijenhuis
//! tensors, the class predicates (cocalibrated / quasi-Kähler / Kähler) and
//! executable verifiers for the identity web tying all of these together.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frame::LieFrame;
use crate::linalg::signature;
use crate::nijenhuis::{assoc_nijenhuis_pair, barwedge_left, barwedge_right, nijenhuis_pair};
use crate::report::ResidualReport;
use crate::scalar::Scalar;
use crate::tensor::{Endo, Tensor03, Tensor12};

/// Metric sign `ε_a`: `+1` for the Hermitian structure, `-1` for the two
/// Norden structures.
pub fn metric_sign(alpha: usize) -> i8 {
    match alpha {
        1 => 1,
        2 | 3 => -1,
        _ => panic!("structure index out of range"),
    }
}

fn check_alpha(alpha: usize) -> Result<()> {
    if (1..=3).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::BadStructureIndex(alpha))
    }
}

/// Validated almost hypercomplex Hermitian-Norden structure.
#[derive(Clone, Debug)]
pub struct HnStructure {
    frame: LieFrame,
    j: [Endo; 3],
}

/// Runs every structural check and collects all violations instead of
/// stopping at the first.
pub fn check_structure(frame: &LieFrame, j: &[Endo; 3]) -> Vec<Error> {
    let mut violations = Vec::new();
    let n = frame.n();
    if !n.is_multiple_of(4) {
        violations.push(Error::NotQuaternionicDimension(n));
    }
    for e in j {
        if !LieFrame::same(e.frame(), frame) {
            violations.push(Error::FrameMismatch);
            return violations;
        }
    }

    let scale = frame.max_abs().max(1.0)
        * j.iter().map(Endo::max_abs).fold(1.0f64, f64::max).powi(2);

    // J_a² = -I and the cyclic quaternionic relations.
    let id = Endo::identity(frame);
    let square_labels = ["J1∘J1 = -I", "J2∘J2 = -I", "J3∘J3 = -I"];
    for a in 0..3 {
        let defect = j[a].compose(&j[a]).unwrap().add(&id).unwrap();
        if let Some((i, jj)) = first_nonzero(&defect, scale) {
            violations.push(Error::QuaternionicViolation {
                relation: square_labels[a],
                i,
                j: jj,
            });
        }
    }
    let cyclic = [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)];
    let compose_labels = ["J1 = J2∘J3", "J2 = J3∘J1", "J3 = J1∘J2"];
    let anti_labels = ["J1 = -J3∘J2", "J2 = -J1∘J3", "J3 = -J2∘J1"];
    for (idx, &(a, b, c)) in cyclic.iter().enumerate() {
        let bc = j[b].compose(&j[c]).unwrap();
        let defect = bc.add(&j[a].neg()).unwrap();
        if let Some((i, jj)) = first_nonzero(&defect, scale) {
            violations.push(Error::QuaternionicViolation {
                relation: compose_labels[idx],
                i,
                j: jj,
            });
        }
        let cb = j[c].compose(&j[b]).unwrap();
        let defect = cb.add(&j[a]).unwrap();
        if let Some((i, jj)) = first_nonzero(&defect, scale) {
            violations.push(Error::QuaternionicViolation {
                relation: anti_labels[idx],
                i,
                j: jj,
            });
        }
    }

    // g(x, y) = ε_a g(J_a x, J_a y), componentwise G = ε_a J_aᵀ G J_a.
    let g = frame.metric();
    for a in 0..3 {
        let m = j[a].matrix();
        let pulled = m.transpose().mul(g).unwrap().mul(m).unwrap();
        let eps = Scalar::from_int(metric_sign(a + 1) as i64, frame.backend());
        let defect = pulled.scale(&eps).sub(g).unwrap();
        'outer: for i in 0..n {
            for jj in 0..n {
                if !defect.at(i, jj).is_zero_within(scale) {
                    violations.push(Error::CompatibilityViolation {
                        alpha: a + 1,
                        i,
                        j: jj,
                    });
                    break 'outer;
                }
            }
        }
    }

    if n.is_multiple_of(4) {
        match signature(g) {
            Ok((p, q)) => {
                if p != n / 2 || q != n / 2 {
                    violations.push(Error::SignatureViolation {
                        p,
                        q,
                        expected: n / 2,
                    });
                }
            }
            Err(e) => violations.push(e),
        }
    }

    violations
}

fn first_nonzero(e: &Endo, scale: f64) -> Option<(usize, usize)> {
    let n = e.n();
    for i in 0..n {
        for j in 0..n {
            if !e.at(i, j).is_zero_within(scale) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Fundamental tensor `F_a(x, y, z) = g((∇_x J_a) y, z)` of one structure.
#[derive(Clone, Debug)]
pub struct FundamentalTensor {
    pub alpha: usize,
    pub t: Tensor03,
}

impl FundamentalTensor {
    /// Residuals of the two structural symmetries
    /// `F_a(x,y,z) = -ε_a F_a(x,z,y)` and
    /// `F_a(x,y,z) = -ε_a F_a(x, J_a y, J_a z)`.
    pub fn symmetry_reports(&self, j: &Endo) -> [ResidualReport; 2] {
        let n = self.t.n();
        let backend = self.t.frame().backend();
        let eps = Scalar::from_int(metric_sign(self.alpha) as i64, backend);
        let scale = self.t.max_abs().max(1.0);

        let swap = Tensor03::from_fn(self.t.frame(), |i, jj, k| {
            self.t.at(i, jj, k) + &(&eps * self.t.at(i, k, jj))
        });
        let (swap_max, swap_arg) = swap.max_abs_report();

        let pulled = Tensor03::from_fn(self.t.frame(), |i, jj, k| {
            let mut acc = Scalar::zero(backend);
            for p in 0..n {
                let jpj = j.at(p, jj);
                if jpj.is_zero() {
                    continue;
                }
                for q in 0..n {
                    acc = &acc + &(&(jpj * j.at(q, k)) * self.t.at(i, p, q));
                }
            }
            self.t.at(i, jj, k) + &(&eps * &acc)
        });
        let (pull_max, pull_arg) = pulled.max_abs_report();

        [
            ResidualReport::new(
                format!("F{}-skew-in-last-two", self.alpha),
                swap_max,
                swap_arg,
                scale,
            ),
            ResidualReport::new(
                format!("F{}-J-pullback", self.alpha),
                pull_max,
                pull_arg,
                scale,
            ),
        ]
    }
}

/// The six associated Nijenhuis tensors with their vanish flags.
#[derive(Clone, Debug)]
pub struct AssocSix {
    /// Order: `{J1,J1}, {J2,J2}, {J3,J3}, {J1,J2}, {J2,J3}, {J3,J1}`.
    pub tensors: [Tensor12; 6],
    pub vanish: [bool; 6],
    pub scale: f64,
}

pub const ASSOC_LABELS: [&str; 6] = [
    "{J1,J1}",
    "{J2,J2}",
    "{J3,J3}",
    "{J1,J2}",
    "{J2,J3}",
    "{J3,J1}",
];

impl AssocSix {
    pub fn all_vanish(&self) -> bool {
        self.vanish.iter().all(|&b| b)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .tensors
            .iter()
            .zip(ASSOC_LABELS)
            .zip(self.vanish)
            .map(|((t, label), vanish)| {
                let (max_abs, _) = t.max_abs_report();
                json!({
                    "label": label,
                    "max_abs": crate::report::residual_value(&max_abs),
                    "vanish": vanish,
                })
            })
            .collect();
        json!({ "tensors": rows, "all_vanish": self.all_vanish() })
    }
}

/// Class membership of a structure.
///
/// `cocalibrated_j1` is the Hermitian-side class whose lowered Nijenhuis
/// tensor is a 3-form; `quasi_kaehler_j2/j3` are the Norden-side classes
/// with vanishing cyclic sum of the fundamental tensor; `kaehler[a]` records
/// `F_{a+1} = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub cocalibrated_j1: bool,
    pub quasi_kaehler_j2: bool,
    pub quasi_kaehler_j3: bool,
    pub kaehler: [bool; 3],
}

impl ClassReport {
    pub fn to_json(&self) -> Value {
        json!({
            "cocalibrated_j1": self.cocalibrated_j1,
            "quasi_kaehler_j2": self.quasi_kaehler_j2,
            "quasi_kaehler_j3": self.quasi_kaehler_j3,
            "kaehler": self.kaehler.to_vec(),
        })
    }
}

impl HnStructure {
    /// Validates the quaternionic relations, the metric compatibilities and
    /// the neutral signature, and returns the assembled structure. The first
    /// violation is reported; [`check_structure`] lists them all.
    pub fn new(frame: &LieFrame, j1: Endo, j2: Endo, j3: Endo) -> Result<HnStructure> {
        let j = [j1, j2, j3];
        match check_structure(frame, &j).into_iter().next() {
            Some(violation) => Err(violation),
            None => Ok(HnStructure {
                frame: frame.clone(),
                j,
            }),
        }
    }

    pub fn frame(&self) -> &LieFrame {
        &self.frame
    }

    /// The structure endomorphism `J_alpha`, `alpha` in `1..=3`.
    pub fn j(&self, alpha: usize) -> &Endo {
        assert!((1..=3).contains(&alpha), "structure index out of range");
        &self.j[alpha - 1]
    }

    pub fn eps(&self, alpha: usize) -> Scalar {
        Scalar::from_int(metric_sign(alpha) as i64, self.frame.backend())
    }

    /// Largest component magnitude across frame and structure tensors.
    pub fn max_abs(&self) -> f64 {
        self.j
            .iter()
            .map(Endo::max_abs)
            .fold(self.frame.max_abs(), f64::max)
    }

    pub fn to_float_backend(&self) -> Result<HnStructure> {
        let frame = self.frame.to_float_backend()?;
        let j = |a: usize| Endo::new(&frame, self.j[a].matrix().to_float_backend());
        HnStructure::new(&frame, j(0)?, j(1)?, j(2)?)
    }

    /// Lowers a (1,2)-tensor with the metric: `T_{ijk} = g_{kp} S^p_{ij}`.
    pub fn lower(&self, s: &Tensor12) -> Result<Tensor03> {
        s.check_frame(&self.frame)?;
        let n = self.frame.n();
        let g = self.frame.metric();
        Ok(Tensor03::from_fn(&self.frame, |i, j, k| {
            let mut acc = Scalar::zero(self.frame.backend());
            for p in 0..n {
                let spij = s.at(i, j, p);
                if spij.is_zero() {
                    continue;
                }
                acc = &acc + &(g.at(k, p) * spij);
            }
            acc
        }))
    }

    /// Raises the last index with the inverse metric; inverse of [`lower`].
    ///
    /// [`lower`]: HnStructure::lower
    pub fn raise(&self, t: &Tensor03) -> Result<Tensor12> {
        t.check_frame(&self.frame)?;
        let n = self.frame.n();
        let g_inv = self.frame.metric_inv();
        Ok(Tensor12::from_fn(&self.frame, |i, j, k| {
            let mut acc = Scalar::zero(self.frame.backend());
            for p in 0..n {
                let tijp = t.at(i, j, p);
                if tijp.is_zero() {
                    continue;
                }
                acc = &acc + &(g_inv.at(k, p) * tijp);
            }
            acc
        }))
    }

    /// Fundamental tensor `F_a = g((∇ J_a)·, ·)` of the structure `J_a`.
    pub fn fundamental(&self, alpha: usize) -> Result<FundamentalTensor> {
        check_alpha(alpha)?;
        let nabla_j = self.frame.nabla_endo(&self.j[alpha - 1])?;
        Ok(FundamentalTensor {
            alpha,
            t: self.lower(&nabla_j)?,
        })
    }

    /// Computes all six associated Nijenhuis tensors with vanish flags and
    /// enforces the two-imply-all consistency rule: with at least two flags
    /// set, all six must be set (anything else signals an implementation
    /// bug, never a property of the input).
    pub fn assoc_six(&self) -> Result<AssocSix> {
        let pairs = [(1, 1), (2, 2), (3, 3), (1, 2), (2, 3), (3, 1)];
        let mut tensors = Vec::with_capacity(6);
        for (a, b) in pairs {
            tensors.push(assoc_nijenhuis_pair(&self.j[a - 1], &self.j[b - 1])?);
        }
        let tensors: [Tensor12; 6] = tensors.try_into().expect("six tensors");
        let scale = tensors
            .iter()
            .map(Tensor12::max_abs)
            .fold(self.max_abs(), f64::max);
        let vanish: [bool; 6] = std::array::from_fn(|i| tensors[i].is_zero_within(scale));
        let set = vanish.iter().filter(|&&b| b).count();
        if (2..6).contains(&set) {
            return Err(Error::VanishingInconsistency { flags: vanish });
        }
        Ok(AssocSix {
            tensors,
            vanish,
            scale,
        })
    }

    /// Verifies the ten relations between the six associated Nijenhuis
    /// tensors (labels `Eq-2.2` ... `Eq-2.15`, the tool's identity catalog);
    /// every residual is exactly zero on the rational backend.
    pub fn verify_assoc_relations(&self) -> Result<Vec<ResidualReport>> {
        let six = self.assoc_six()?;
        let [n11, n22, n33, n12, n23, n31] = &six.tensors;
        let [j1, j2, j3] = &self.j;
        let backend = self.frame.backend();
        let half = Scalar::ratio(1, 2, backend);
        let two = Scalar::from_int(2, backend);
        let scale = six.scale;

        let mut reports = Vec::with_capacity(10);
        let mut push = |label: &str, residual: Tensor12| {
            let (max_abs, argmax) = residual.max_abs_report();
            reports.push(ResidualReport::new(label, max_abs, argmax, scale));
        };

        // {J3,J1} = 1/2 {J1,J1}⋏J2 + J1⋏{J1,J2}
        push(
            "Eq-2.2",
            n31.sub(
                &barwedge_right(n11, j2)?
                    .scale(&half)
                    .add(&barwedge_left(j1, n12)?),
            ),
        );
        // {J3,J1} = -{J1,J2}⋏J1 - J1⋏{J1,J2} - J2⋏{J1,J1}
        push(
            "Eq-2.3",
            n31.add(&barwedge_right(n12, j1)?)
                .add(&barwedge_left(j1, n12)?)
                .add(&barwedge_left(j2, n11)?),
        );
        // J2⋏{J1,J1} + 1/2 {J1,J1}⋏J2 + 2 J1⋏{J1,J2} + {J1,J2}⋏J1 = 0
        push(
            "Eq-2.5",
            barwedge_left(j2, n11)?
                .add(&barwedge_right(n11, j2)?.scale(&half))
                .add(&barwedge_left(j1, n12)?.scale(&two))
                .add(&barwedge_right(n12, j1)?),
        );
        // {J2,J3} = -1/2 {J2,J2}⋏J1 - J2⋏{J1,J2}
        push(
            "Eq-2.6",
            n23.add(&barwedge_right(n22, j1)?.scale(&half))
                .add(&barwedge_left(j2, n12)?),
        );
        // {J2,J3} = J1⋏{J2,J2} + {J1,J2}⋏J2 + J2⋏{J1,J2}
        push(
            "Eq-2.7",
            n23.sub(
                &barwedge_left(j1, n22)?
                    .add(&barwedge_right(n12, j2)?)
                    .add(&barwedge_left(j2, n12)?),
            ),
        );
        // J1⋏{J2,J2} + 1/2 {J2,J2}⋏J1 + {J1,J2}⋏J2 + 2 J2⋏{J1,J2} = 0
        push(
            "Eq-2.9",
            barwedge_left(j1, n22)?
                .add(&barwedge_right(n22, j1)?.scale(&half))
                .add(&barwedge_right(n12, j2)?)
                .add(&barwedge_left(j2, n12)?.scale(&two)),
        );
        // {J3,J3} - {J1,J1} = {J3,J1}⋏J2 + J3⋏{J1,J2} + J1⋏{J2,J3}
        push(
            "Eq-2.10",
            n33.sub(n11).sub(
                &barwedge_right(n31, j2)?
                    .add(&barwedge_left(j3, n12)?)
                    .add(&barwedge_left(j1, n23)?),
            ),
        );
        // {J3,J3} = 1/2 ({J1,J1} + {J2,J2} + {J3,J1}⋏J2 - J2⋏{J3,J1}
        //                 - {J2,J3}⋏J1 + J1⋏{J2,J3})
        // (difference of Eq-2.10 with its cyclically substituted copy)
        push(
            "Eq-2.12",
            n33.sub(
                &n11.add(n22)
                    .add(&barwedge_right(n31, j2)?)
                    .sub(&barwedge_left(j2, n31)?)
                    .sub(&barwedge_right(n23, j1)?)
                    .add(&barwedge_left(j1, n23)?)
                    .scale(&half),
            ),
        );
        // {J1,J1} - {J2,J2} + {J3,J1}⋏J2 + J2⋏{J3,J1}
        //   + 2 J3⋏{J1,J2} + {J2,J3}⋏J1 + J1⋏{J2,J3} = 0
        push(
            "Eq-2.13",
            n11.sub(n22)
                .add(&barwedge_right(n31, j2)?)
                .add(&barwedge_left(j2, n31)?)
                .add(&barwedge_left(j3, n12)?.scale(&two))
                .add(&barwedge_right(n23, j1)?)
                .add(&barwedge_left(j1, n23)?),
        );
        // {J2,J2}⋏J2 = -2 J2⋏{J2,J2}
        push(
            "Eq-2.15",
            barwedge_right(n22, j2)?.add(&barwedge_left(j2, n22)?.scale(&two)),
        );

        Ok(reports)
    }

    /// Cross-checks the expansions of the lowered Nijenhuis tensor and the
    /// lowered associated Nijenhuis tensor through the fundamental tensor:
    ///
    /// ```text
    /// [J,J](x,y,z) = F(Jx,y,z) + ε F(x,y,Jz) - F(Jy,x,z) - ε F(y,x,Jz)
    /// {J,J}(x,y,z) = F(Jx,y,z) + ε F(x,y,Jz) + F(Jy,x,z) + ε F(y,x,Jz)
    /// ```
    pub fn verify_fundamental_expansions(&self, alpha: usize) -> Result<[ResidualReport; 2]> {
        check_alpha(alpha)?;
        let j = &self.j[alpha - 1];
        let f = self.fundamental(alpha)?.t;
        let eps = self.eps(alpha);
        let n = self.frame.n();
        let backend = self.frame.backend();

        let term = |i: usize, jj: usize, k: usize, sign_third: i8| -> Scalar {
            // F(J x_i, x_j, x_k) ± F(J x_j, x_i, x_k)
            //   + ε [F(x_i, x_j, J x_k) ± F(x_j, x_i, J x_k)]
            let mut acc = Scalar::zero(backend);
            for p in 0..n {
                let jpi = j.at(p, i);
                if !jpi.is_zero() {
                    acc = &acc + &(jpi * f.at(p, jj, k));
                }
                let jpj = j.at(p, jj);
                if !jpj.is_zero() {
                    let v = jpj * f.at(p, i, k);
                    acc = if sign_third > 0 { &acc + &v } else { &acc - &v };
                }
                let jpk = j.at(p, k);
                if !jpk.is_zero() {
                    let first = &eps * &(jpk * f.at(i, jj, p));
                    acc = &acc + &first;
                    let second = &eps * &(jpk * f.at(jj, i, p));
                    acc = if sign_third > 0 {
                        &acc + &second
                    } else {
                        &acc - &second
                    };
                }
            }
            acc
        };

        let nij = self.lower(&nijenhuis_pair(j, j)?)?;
        let nij_defect = Tensor03::from_fn(&self.frame, |i, jj, k| {
            nij.at(i, jj, k) - &term(i, jj, k, -1)
        });
        let assoc = self.lower(&assoc_nijenhuis_pair(j, j)?)?;
        let assoc_defect = Tensor03::from_fn(&self.frame, |i, jj, k| {
            assoc.at(i, jj, k) - &term(i, jj, k, 1)
        });

        let scale = self
            .max_abs()
            .max(f.max_abs())
            .max(nij.max_abs())
            .max(assoc.max_abs());
        let (nm, na) = nij_defect.max_abs_report();
        let (am, aa) = assoc_defect.max_abs_report();
        Ok([
            ResidualReport::new(format!("nijenhuis-F-expansion-J{alpha}"), nm, na, scale),
            ResidualReport::new(format!("assoc-F-expansion-J{alpha}"), am, aa, scale),
        ])
    }

    /// Verifies that the lowered associated Nijenhuis tensor of `J1` is the
    /// symmetrization of the lowered Nijenhuis tensor in its last two slots:
    /// `{J1,J1}(x,y,z) = [J1,J1](z,x,y) + [J1,J1](z,y,x)`.
    pub fn verify_assoc_from_nijenhuis(&self) -> Result<ResidualReport> {
        let j1 = &self.j[0];
        let nij = self.lower(&nijenhuis_pair(j1, j1)?)?;
        let assoc = self.lower(&assoc_nijenhuis_pair(j1, j1)?)?;
        let defect = Tensor03::from_fn(&self.frame, |i, j, k| {
            assoc.at(i, j, k) - &(nij.at(k, i, j) + nij.at(k, j, i))
        });
        let scale = self.max_abs().max(nij.max_abs()).max(assoc.max_abs());
        let (max_abs, argmax) = defect.max_abs_report();
        Ok(ResidualReport::new(
            "assoc-from-nijenhuis",
            max_abs,
            argmax,
            scale,
        ))
    }

    /// Class membership booleans.
    ///
    /// The cocalibrated test runs twice, once through the polarized
    /// fundamental-tensor condition and once through the three-form test on
    /// the lowered Nijenhuis tensor; the two predicates must agree.
    pub fn class_report(&self) -> Result<ClassReport> {
        let n = self.frame.n();
        let backend = self.frame.backend();

        let f1 = self.fundamental(1)?.t;
        let f2 = self.fundamental(2)?.t;
        let f3 = self.fundamental(3)?.t;
        let scale = self
            .max_abs()
            .max(f1.max_abs())
            .max(f2.max_abs())
            .max(f3.max_abs());

        // Polarized form of F1(x,x,z) = F1(J1 x, J1 x, z): symmetrize in the
        // first two arguments, then compare with the J1-pulled version.
        let j1 = &self.j[0];
        let mut polarized = true;
        'outer: for i in 0..n {
            for jj in 0..n {
                for k in 0..n {
                    let plain = f1.at(i, jj, k) + f1.at(jj, i, k);
                    let mut pulled = Scalar::zero(backend);
                    for p in 0..n {
                        let jpi = j1.at(p, i);
                        if jpi.is_zero() {
                            continue;
                        }
                        for q in 0..n {
                            let jqj = j1.at(q, jj);
                            if jqj.is_zero() {
                                continue;
                            }
                            pulled =
                                &pulled + &(&(jpi * jqj) * &(f1.at(p, q, k) + f1.at(q, p, k)));
                        }
                    }
                    if !(&plain - &pulled).is_zero_within(scale) {
                        polarized = false;
                        break 'outer;
                    }
                }
            }
        }

        let lowered_nij = self.lower(&nijenhuis_pair(j1, j1)?)?;
        let three_form = lowered_nij
            .three_form_defect(scale.max(lowered_nij.max_abs()))
            .is_none();
        if polarized != three_form {
            return Err(Error::CocalibratedDisagreement {
                polarized,
                three_form,
            });
        }

        let cyclic_vanishes = |f: &Tensor03| -> bool {
            for i in 0..n {
                for jj in 0..n {
                    for k in 0..n {
                        let sum = &(f.at(i, jj, k) + f.at(jj, k, i)) + f.at(k, i, jj);
                        if !sum.is_zero_within(scale) {
                            return false;
                        }
                    }
                }
            }
            true
        };

        let kaehler = [
            f1.components().iter().all(|v| v.is_zero_within(scale)),
            f2.components().iter().all(|v| v.is_zero_within(scale)),
            f3.components().iter().all(|v| v.is_zero_within(scale)),
        ];

        Ok(ClassReport {
            cocalibrated_j1: polarized,
            quasi_kaehler_j2: cyclic_vanishes(&f2),
            quasi_kaehler_j3: cyclic_vanishes(&f3),
            kaehler,
        })
    }
}
