//! Acceptance suite: every release criterion as one test, each printing a
//! PASS line with `--nocapture`. All identity checks target exact zero on
//! the rational backend; float re-runs use the scaled 1e-9 tolerance.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypernij::instances::{
    example_g4, random_endo, random_hn, random_hn_with, random_lie_frame, AlgebraKind,
    ExampleParams,
};
use hypernij::nijenhuis::{
    assoc_nijenhuis_pair, barwedge_left, barwedge_right, nijenhuis_pair, verify_pair_composition,
};
use hypernij::torsion::{solve_skew_torsion, Preserve, TorsionProblem};
use hypernij::{Backend, Endo, HnStructure, LieFrame, Scalar, Tensor12};

/// Independent evaluation of the single-structure Nijenhuis formula
/// `[J,J](X,Y) = [JX,JY] + J²[X,Y] - J[JX,Y] - J[X,JY]` through vector
/// brackets; shares no code with the pair-tensor contraction path.
fn nijenhuis_direct(j: &Endo) -> Tensor12 {
    let f = j.frame();
    let n = f.n();
    let backend = f.backend();
    let basis = |i: usize| -> Vec<Scalar> {
        (0..n)
            .map(|k| {
                if k == i {
                    Scalar::one(backend)
                } else {
                    Scalar::zero(backend)
                }
            })
            .collect()
    };
    let mut vals = vec![Scalar::zero(backend); n * n * n];
    for a in 0..n {
        for b in 0..n {
            let ea = basis(a);
            let eb = basis(b);
            let ja = j.apply(&ea).unwrap();
            let jb = j.apply(&eb).unwrap();
            let t1 = f.bracket(&ja, &jb).unwrap();
            let t2 = j
                .apply(&j.apply(&f.bracket(&ea, &eb).unwrap()).unwrap())
                .unwrap();
            let t3 = j.apply(&f.bracket(&ja, &eb).unwrap()).unwrap();
            let t4 = j.apply(&f.bracket(&ea, &jb).unwrap()).unwrap();
            for k in 0..n {
                vals[(a * n + b) * n + k] = &(&(&t1[k] + &t2[k]) - &t3[k]) - &t4[k];
            }
        }
    }
    Tensor12::from_fn(f, |i, jj, k| vals[(i * n + jj) * n + k].clone())
}

/// Exact torsion-free and metric-compatibility checks on the connection
/// coefficients, straight from the defining relations.
fn assert_levi_civita_exact(f: &LieFrame) {
    let n = f.n();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let torsion = &(f.gamma(i, j, k) - f.gamma(j, i, k)) - f.c(i, j, k);
                assert!(torsion.is_zero(), "torsion defect at ({i},{j},{k})");
            }
            for k in 0..n {
                let mut compat = Scalar::zero(f.backend());
                for p in 0..n {
                    compat = &compat + &(f.gamma(i, j, p) * f.metric().at(p, k));
                    compat = &compat + &(f.gamma(i, k, p) * f.metric().at(p, j));
                }
                assert!(compat.is_zero(), "metric defect at ({i},{j},{k})");
            }
        }
    }
}

fn random_rational_lambda(rng: &mut ChaCha8Rng) -> ExampleParams {
    loop {
        let lambda: [Scalar; 4] = std::array::from_fn(|_| {
            Scalar::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4), Backend::Rational)
        });
        if let Ok(p) = ExampleParams::new(lambda) {
            return p;
        }
    }
}

fn example(l: [i64; 4]) -> HnStructure {
    example_g4(&ExampleParams::from_ints(l, Backend::Rational).unwrap()).unwrap()
}

/// Example-family suite: the structure gate, exact vanishing of all six
/// associated Nijenhuis tensors, and the expected class membership, for the
/// named parameters and 50 random rational ones.
#[test]
fn acceptance_example_family_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut params: Vec<ExampleParams> = vec![
        ExampleParams::from_ints([1, 2, 3, 4], Backend::Rational).unwrap(),
        ExampleParams::from_ints([1, 0, 0, 0], Backend::Rational).unwrap(),
        ExampleParams::from_ints([0, 1, 0, 0], Backend::Rational).unwrap(),
    ];
    params.extend((0..50).map(|_| random_rational_lambda(&mut rng)));

    for p in &params {
        let start = Instant::now();
        let h = example_g4(p).expect("example instances satisfy the structure gate");
        let six = h.assoc_six().unwrap();
        for (t, label) in six.tensors.iter().zip(hypernij::hn::ASSOC_LABELS) {
            assert!(t.is_zero(), "{label} nonzero for lambda {:?}", p.lambda());
        }
        let classes = h.class_report().unwrap();
        assert!(classes.cocalibrated_j1, "lambda {:?}", p.lambda());
        assert!(classes.quasi_kaehler_j2, "lambda {:?}", p.lambda());
        assert!(classes.quasi_kaehler_j3, "lambda {:?}", p.lambda());
        let elapsed = start.elapsed();
        assert!(
            elapsed < Duration::from_secs(1),
            "instance exceeded 1 s: {elapsed:?}"
        );
    }
    println!(
        "ACCEPTANCE example-family-suite: PASS ({} instances)",
        params.len()
    );
}

/// Lemma suite: the pair-composition identity on 200 random endomorphism
/// triples over 20 random frames, and the ten associated-tensor relations
/// on 100 random dim-4 and 20 random dim-8 structures; exact zeros on the
/// rational backend, scaled 1e-9 on the float re-run.
#[test]
fn acceptance_lemma_suite() {
    // Pair-composition identity: 10 triples on each of 20 frames.
    for frame_seed in 0..20u64 {
        let frame = random_lie_frame(1000 + frame_seed, 4).unwrap();
        let float_frame = frame.to_float_backend().unwrap();
        for t in 0..10u64 {
            let s = frame_seed * 100 + t * 3;
            let (j, k, l) = (
                random_endo(&frame, s),
                random_endo(&frame, s + 1),
                random_endo(&frame, s + 2),
            );
            let report = verify_pair_composition(&j, &k, &l).unwrap();
            assert!(
                report.max_abs.is_zero(),
                "rational residual {:?} at seed {s}",
                report.max_abs
            );
            let (jf, kf, lf) = (
                random_endo(&float_frame, s),
                random_endo(&float_frame, s + 1),
                random_endo(&float_frame, s + 2),
            );
            let report = verify_pair_composition(&jf, &kf, &lf).unwrap();
            assert!(report.passes(), "float residual {:?}", report.max_abs);
        }
    }

    // Ten relations, dim 4 and dim 8.
    let mut checked = 0;
    for (count, blocks, base) in [(100usize, 1usize, 2000u64), (20, 2, 3000)] {
        for k in 0..count {
            let h = random_hn(base + k as u64, blocks).unwrap();
            for report in h.verify_assoc_relations().unwrap() {
                assert!(
                    report.max_abs.is_zero(),
                    "{} residual {:?} at seed {}",
                    report.label,
                    report.max_abs,
                    base + k as u64
                );
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 120);

    // Float re-run of the relation suite on a sample of each dimension.
    for (blocks, base) in [(1usize, 2000u64), (2, 3000)] {
        for k in 0..5u64 {
            let h = random_hn(base + k, blocks).unwrap().to_float_backend().unwrap();
            for report in h.verify_assoc_relations().unwrap() {
                assert!(
                    report.passes(),
                    "float {} residual {:?}",
                    report.label,
                    report.max_abs
                );
            }
        }
    }
    println!("ACCEPTANCE lemma-suite: PASS (200 triples, 120 structures, float re-run)");
}

/// Operator identities: vanishing against the identity endomorphism,
/// symmetry of the pair tensors, the right-wedge commutator collapse and
/// the left/right wedge associativity, 200 random draws each.
#[test]
fn acceptance_operator_identities() {
    let mut draws = 0;
    for frame_seed in 0..10u64 {
        let frame = random_lie_frame(500 + frame_seed, 4).unwrap();
        let id = Endo::identity(&frame);
        for t in 0..20u64 {
            let s = frame_seed * 1000 + t * 7;
            let j = random_endo(&frame, s);
            let k = random_endo(&frame, s + 1);
            let st = Tensor12::from_fn(&frame, {
                let mut rng = ChaCha8Rng::seed_from_u64(s + 2);
                move |_, _, _| Scalar::from_int(rng.gen_range(-3..=3), Backend::Rational)
            });

            // {J, I} = {I, K} = 0
            assert!(assoc_nijenhuis_pair(&j, &id).unwrap().is_zero());
            assert!(assoc_nijenhuis_pair(&id, &k).unwrap().is_zero());

            // {J,K} = {K,J} and [J,K] = [K,J]
            assert_eq!(
                assoc_nijenhuis_pair(&j, &k).unwrap(),
                assoc_nijenhuis_pair(&k, &j).unwrap()
            );
            assert_eq!(
                nijenhuis_pair(&j, &k).unwrap(),
                nijenhuis_pair(&k, &j).unwrap()
            );

            // (S⋏J)⋏K - (S⋏K)⋏J = S⋏(JK) - S⋏(KJ)
            let lhs = barwedge_right(&barwedge_right(&st, &j).unwrap(), &k)
                .unwrap()
                .sub(&barwedge_right(&barwedge_right(&st, &k).unwrap(), &j).unwrap());
            let rhs = barwedge_right(&st, &j.compose(&k).unwrap())
                .unwrap()
                .sub(&barwedge_right(&st, &k.compose(&j).unwrap()).unwrap());
            assert_eq!(lhs, rhs);

            // (J⋏S)⋏K = J⋏(S⋏K)
            let lhs = barwedge_right(&barwedge_left(&j, &st).unwrap(), &k).unwrap();
            let rhs = barwedge_left(&j, &barwedge_right(&st, &k).unwrap()).unwrap();
            assert_eq!(lhs, rhs);

            draws += 1;
        }
    }
    assert_eq!(draws, 200);
    println!("ACCEPTANCE operator-identities: PASS (200 draws per identity)");
}

/// Fundamental-tensor cross-checks: the expansions of the lowered
/// Nijenhuis and associated Nijenhuis tensors, the symmetrization linking
/// the two, and agreement of the twin cocalibration predicates, on the
/// example family and 100 random structures.
#[test]
fn acceptance_fundamental_expansions() {
    let mut instances: Vec<HnStructure> = vec![
        example([1, 2, 3, 4]),
        example([1, 0, 0, 0]),
        example([0, 1, 0, 0]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..5 {
        instances.push(example_g4(&random_rational_lambda(&mut rng)).unwrap());
    }
    for k in 0..95u64 {
        let blocks = if k % 10 == 0 { 2 } else { 1 };
        instances.push(random_hn(4000 + k, blocks).unwrap());
    }

    for (idx, h) in instances.iter().enumerate() {
        for alpha in 1..=3 {
            for report in h.verify_fundamental_expansions(alpha).unwrap() {
                assert!(
                    report.max_abs.is_zero(),
                    "{} residual {:?} on instance {idx}",
                    report.label,
                    report.max_abs
                );
            }
            for report in h.fundamental(alpha).unwrap().symmetry_reports(h.j(alpha)) {
                assert!(
                    report.max_abs.is_zero(),
                    "{} residual {:?} on instance {idx}",
                    report.label,
                    report.max_abs
                );
            }
        }
        let report = h.verify_assoc_from_nijenhuis().unwrap();
        assert!(report.max_abs.is_zero(), "instance {idx}");
        // class_report errors out if the polarized predicate and the
        // three-form predicate ever disagree.
        h.class_report().unwrap();
    }
    println!(
        "ACCEPTANCE fundamental-expansions: PASS ({} instances)",
        instances.len()
    );
}

/// Two-imply-all: across every instance kind the suite touches, at least
/// two vanishing flags force all six. `assoc_six` hard-errors on any
/// violation; this test sweeps vanishing and non-vanishing populations.
#[test]
fn acceptance_vanishing_propagation() {
    let mut vanishing = 0;
    let mut nonvanishing = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(55);

    let mut sweep = |h: &HnStructure| {
        let six = h.assoc_six().expect("two-imply-all must never trip");
        let set = six.vanish.iter().filter(|&&b| b).count();
        assert!(set == 0 || set == 1 || set == 6, "flags {:?}", six.vanish);
        if six.all_vanish() {
            vanishing += 1;
        } else {
            nonvanishing += 1;
        }
    };

    for _ in 0..10 {
        sweep(&example_g4(&random_rational_lambda(&mut rng)).unwrap());
    }
    for seed in 0..25u64 {
        sweep(&random_hn(6000 + seed, 1).unwrap());
    }
    for seed in 0..5u64 {
        sweep(&random_hn(7000 + seed, 2).unwrap());
    }
    assert!(vanishing >= 10, "need vanishing instances, saw {vanishing}");
    assert!(
        nonvanishing >= 10,
        "need nonvanishing instances, saw {nonvanishing}"
    );
    println!(
        "ACCEPTANCE vanishing-propagation: PASS ({vanishing} vanishing, {nonvanishing} nonvanishing)"
    );
}

/// Solver biconditionals: for the Hermitian structure alone, existence of
/// the skew-torsion connection is equivalent to `{J1,J1} = 0` and the
/// connection is then unique; for the full triple, existence is equivalent
/// to all six associated tensors vanishing. Existence side on the example
/// family with exact residuals, non-existence side on 20+ random
/// non-vanishing instances; dim-8 solves stay under 5 s.
#[test]
fn acceptance_solver_biconditional() {
    // Existence side: example family.
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut family: Vec<HnStructure> = vec![
        example([1, 2, 3, 4]),
        example([1, 0, 0, 0]),
        example([0, 1, 0, 0]),
    ];
    for _ in 0..3 {
        family.push(example_g4(&random_rational_lambda(&mut rng)).unwrap());
    }
    for h in &family {
        let hermitian = solve_skew_torsion(&TorsionProblem {
            hn: h.clone(),
            preserve: Preserve::single(1).unwrap(),
        })
        .unwrap();
        assert!(hermitian.status.exists());
        assert_eq!(hermitian.family_dim, 0, "Hermitian connection not unique");
        for row in &hermitian.verification.as_ref().unwrap().rows {
            assert!(row.max_abs.is_zero(), "{}", row.label);
        }

        let full = solve_skew_torsion(&TorsionProblem {
            hn: h.clone(),
            preserve: Preserve::all(),
        })
        .unwrap();
        assert!(full.status.exists());
        for row in &full.verification.as_ref().unwrap().rows {
            assert!(row.max_abs.is_zero(), "{}", row.label);
        }
    }

    // Non-existence side: random structures with nonvanishing tensors.
    let mut nonexistence = 0;
    let mut seed = 0u64;
    while nonexistence < 20 {
        seed += 1;
        let h = random_hn_with(AlgebraKind::SolvableBlocks, 8000 + seed, 1).unwrap();
        let six = h.assoc_six().unwrap();
        if six.all_vanish() {
            continue;
        }
        let j1_vanishes = six.vanish[0];
        let hermitian = solve_skew_torsion(&TorsionProblem {
            hn: h.clone(),
            preserve: Preserve::single(1).unwrap(),
        })
        .unwrap();
        assert_eq!(
            hermitian.status.exists(),
            j1_vanishes,
            "Hermitian biconditional failed at seed {seed}"
        );
        if hermitian.status.exists() {
            assert_eq!(hermitian.family_dim, 0);
        }
        let full = solve_skew_torsion(&TorsionProblem {
            hn: h,
            preserve: Preserve::all(),
        })
        .unwrap();
        assert!(!full.status.exists(), "full biconditional failed at seed {seed}");
        nonexistence += 1;
    }

    // Dimension 8, both sides, timed.
    let h = random_hn_with(AlgebraKind::SolvableBlocks, 42, 2).unwrap();
    assert!(!h.assoc_six().unwrap().all_vanish());
    let start = Instant::now();
    let result = solve_skew_torsion(&TorsionProblem {
        hn: h,
        preserve: Preserve::all(),
    })
    .unwrap();
    let elapsed = start.elapsed();
    assert!(!result.status.exists());
    assert!(elapsed < Duration::from_secs(5), "dim-8 solve took {elapsed:?}");

    let h = random_hn_with(AlgebraKind::Abelian, 43, 2).unwrap();
    let start = Instant::now();
    let result = solve_skew_torsion(&TorsionProblem {
        hn: h,
        preserve: Preserve::all(),
    })
    .unwrap();
    let elapsed = start.elapsed();
    assert!(result.status.exists());
    for row in &result.verification.as_ref().unwrap().rows {
        assert!(row.max_abs.is_zero(), "{}", row.label);
    }
    assert!(elapsed < Duration::from_secs(5), "dim-8 solve took {elapsed:?}");

    println!(
        "ACCEPTANCE solver-biconditional: PASS ({} existence, {nonexistence} non-existence, dim-8 timed)",
        family.len()
    );
}

/// Oracle equivalence: the pair-tensor path specialized to `[J,J]` matches
/// the direct bracket-formula evaluation on 100 random draws, and every
/// constructed frame carries an exactly torsion-free, metric-compatible
/// connection.
#[test]
fn acceptance_oracle_equivalence() {
    let mut draws = 0;
    for frame_seed in 0..10u64 {
        let frame = random_lie_frame(9000 + frame_seed, 4).unwrap();
        assert_levi_civita_exact(&frame);
        for t in 0..10u64 {
            let j = random_endo(&frame, frame_seed * 50 + t);
            assert_eq!(
                nijenhuis_pair(&j, &j).unwrap(),
                nijenhuis_direct(&j),
                "oracle mismatch at frame {frame_seed} draw {t}"
            );
            draws += 1;
        }
    }
    assert_eq!(draws, 100);

    // Levi-Civita invariants on the other frame populations used above.
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..10 {
        assert_levi_civita_exact(example_g4(&random_rational_lambda(&mut rng)).unwrap().frame());
    }
    for seed in 0..5u64 {
        assert_levi_civita_exact(random_hn(9500 + seed, 2).unwrap().frame());
    }
    println!("ACCEPTANCE oracle-equivalence: PASS (100 draws, all frames exact)");
}
