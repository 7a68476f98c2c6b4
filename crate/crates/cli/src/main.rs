//! Command-line surface: load or generate instances, run the verification
//! suites, decide skew-torsion connection existence, and emit JSON or text
//! reports with CI-friendly exit codes.
//!
//! Exit codes: `0` all checks passed, `1` a mathematical check failed,
//! `2` input or usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypernij::hn::check_structure;
use hypernij::instances::{example_g4, random_endo, random_hn, random_lie_frame, ExampleParams};
use hypernij::json::{instance_to_json, parse_instance, to_pretty_string};
use hypernij::nijenhuis::verify_pair_composition;
use hypernij::report::{all_pass, ResidualReport};
use hypernij::torsion::{solve_skew_torsion, Preserve, TorsionProblem};
use hypernij::{Backend, Endo, Error, HnStructure, Scalar};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "hypernij",
    version,
    about = "Exact verification of hypercomplex Hermitian-Norden structures"
)]
struct Cli {
    /// Compute on the f64 backend with scaled 1e-9 tolerances instead of
    /// exact rationals (also via NIJ_BACKEND=float).
    #[arg(long, global = true)]
    float: bool,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every structure invariant of an instance file.
    Check {
        /// Instance JSON file.
        instance: PathBuf,
    },
    /// Verify the operator identities: the three-endomorphism composition
    /// identity on random triples and the ten relations between the six
    /// associated Nijenhuis tensors.
    Lemmas {
        /// Instance JSON file; omit when using --random.
        instance: Option<PathBuf>,
        /// Verify on this many seeded random instances instead of a file.
        #[arg(long)]
        random: Option<usize>,
        /// Seed for random draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Frame dimension for random draws (multiple of 4).
        #[arg(long, default_value_t = 4)]
        dim: usize,
        /// Random endomorphism triples per instance.
        #[arg(long, default_value_t = 20)]
        triples: usize,
    },
    /// Report class membership and associated-tensor vanishing.
    Classes {
        /// Instance JSON file.
        instance: PathBuf,
    },
    /// Decide whether a metric connection with totally skew-symmetric
    /// torsion preserves the selected structures.
    Torsion {
        /// Instance JSON file.
        instance: PathBuf,
        /// Structures to preserve, e.g. --preserve 1,2,3 or --preserve 1.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1usize, 2, 3])]
        preserve: Vec<usize>,
    },
    /// Write an example-family instance file.
    Example {
        /// Four parameters, e.g. --lambdas 1,2,3,4 or --lambdas 1/2,0,0,-3.
        #[arg(long, value_delimiter = ',')]
        lambdas: Vec<String>,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate seeded random instances and run the full verification
    /// battery on each.
    RandomSweep {
        /// Number of instances.
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Base seed; instance k uses seed + k.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Frame dimension (multiple of 4).
        #[arg(long, default_value_t = 4)]
        dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let backend = match resolve_backend(cli.float) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli, backend) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// `--float` wins, then NIJ_BACKEND, then the rational default.
fn resolve_backend(float_flag: bool) -> anyhow::Result<Backend> {
    if float_flag {
        return Ok(Backend::Float);
    }
    match std::env::var("NIJ_BACKEND") {
        Ok(value) => Backend::parse(&value).map_err(|_| {
            anyhow!("NIJ_BACKEND must be \"rational\" or \"float\", got {value:?}")
        }),
        Err(_) => Ok(Backend::Rational),
    }
}

fn run(cli: Cli, backend: Backend) -> anyhow::Result<bool> {
    match cli.command {
        Command::Check { instance } => cmd_check(&instance, backend, cli.format),
        Command::Lemmas {
            instance,
            random,
            seed,
            dim,
            triples,
        } => cmd_lemmas(instance, random, seed, dim, triples, backend, cli.format),
        Command::Classes { instance } => cmd_classes(&instance, backend, cli.format),
        Command::Torsion { instance, preserve } => {
            cmd_torsion(&instance, &preserve, backend, cli.format)
        }
        Command::Example { lambdas, output } => cmd_example(&lambdas, output, backend),
        Command::RandomSweep { count, seed, dim } => {
            cmd_random_sweep(count, seed, dim, backend, cli.format)
        }
    }
}

/// Loads an instance file; any failure here is a usage error (exit 2).
fn load_instance(path: &Path, backend: Backend) -> anyhow::Result<hypernij::json::RawInstance> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    parse_instance(&text, backend).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Builds the structure from parsed data; failures are mathematical
/// violations (exit 1), reported rather than bubbled up.
fn build_checked(
    raw: &hypernij::json::RawInstance,
) -> std::result::Result<HnStructure, Vec<Error>> {
    let frame = raw.build_frame().map_err(|e| vec![e])?;
    let endos: Vec<Endo> = raw
        .j
        .iter()
        .map(|m| Endo::new(&frame, m.clone()))
        .collect::<hypernij::Result<_>>()
        .map_err(|e| vec![e])?;
    let j: [Endo; 3] = endos.try_into().expect("three matrices");
    let violations = check_structure(&frame, &j);
    if violations.is_empty() {
        let [j1, j2, j3] = j;
        Ok(HnStructure::new(&frame, j1, j2, j3).expect("validated above"))
    } else {
        Err(violations)
    }
}

fn emit(format: Format, report: &Value, text_lines: &[String]) {
    match format {
        Format::Json => print!("{}", to_pretty_string(report)),
        Format::Text => {
            for line in text_lines {
                println!("{line}");
            }
        }
    }
}

fn residual_lines(rows: &[ResidualReport]) -> Vec<String> {
    rows.iter()
        .map(|r| {
            format!(
                "  {}: residual {} [{}]",
                r.label,
                r.max_abs,
                if r.passes() { "ok" } else { "FAIL" }
            )
        })
        .collect()
}

fn residual_json(rows: &[ResidualReport]) -> Value {
    Value::Array(rows.iter().map(ResidualReport::to_json).collect())
}

fn verdict_line(pass: bool) -> String {
    format!("RESULT: {}", if pass { "PASS" } else { "FAIL" })
}

fn cmd_check(path: &Path, backend: Backend, format: Format) -> anyhow::Result<bool> {
    let raw = load_instance(path, backend)?;
    let (pass, violations) = match build_checked(&raw) {
        Ok(_) => (true, Vec::new()),
        Err(violations) => (false, violations),
    };
    let violation_strings: Vec<String> = violations.iter().map(|e| e.to_string()).collect();
    let report = json!({
        "command": "check",
        "backend": backend.to_string(),
        "instance": path.display().to_string(),
        "violations": violation_strings,
        "pass": pass,
    });
    let mut lines = vec![format!("check {} [{}]", path.display(), backend)];
    for v in &violation_strings {
        lines.push(format!("  violated: {v}"));
    }
    lines.push(verdict_line(pass));
    emit(format, &report, &lines);
    Ok(pass)
}

/// The per-instance identity battery shared by `lemmas` and `random-sweep`.
fn lemma_rows(
    h: &HnStructure,
    triple_count: usize,
    seed: u64,
) -> anyhow::Result<Vec<ResidualReport>> {
    let mut rows = Vec::new();
    for t in 0..triple_count {
        let j = random_endo(h.frame(), seed.wrapping_add(3 * t as u64));
        let k = random_endo(h.frame(), seed.wrapping_add(3 * t as u64 + 1));
        let l = random_endo(h.frame(), seed.wrapping_add(3 * t as u64 + 2));
        let mut report = verify_pair_composition(&j, &k, &l)?;
        report.label = format!("pair-composition[{t}]");
        rows.push(report);
    }
    rows.extend(h.verify_assoc_relations()?);
    Ok(rows)
}

fn cmd_lemmas(
    instance: Option<PathBuf>,
    random: Option<usize>,
    seed: u64,
    dim: usize,
    triples: usize,
    backend: Backend,
    format: Format,
) -> anyhow::Result<bool> {
    let mut sections: Vec<(String, Vec<ResidualReport>)> = Vec::new();
    match (&instance, random) {
        (Some(path), None) => {
            let raw = load_instance(path, backend)?;
            match build_checked(&raw) {
                Ok(h) => sections.push((path.display().to_string(), lemma_rows(&h, triples, seed)?)),
                Err(violations) => {
                    return report_invalid_instance(path, &violations, backend, format)
                }
            }
        }
        (None, Some(count)) => {
            if dim == 0 || !dim.is_multiple_of(4) {
                bail!("--dim must be a positive multiple of 4, got {dim}");
            }
            for idx in 0..count {
                let s = seed.wrapping_add(idx as u64);
                // Composition identity on a plain random frame with random
                // endomorphisms, independent of any hypercomplex structure.
                let frame = random_lie_frame(s, dim)?;
                let frame = match backend {
                    Backend::Rational => frame,
                    Backend::Float => frame.to_float_backend()?,
                };
                let j = random_endo(&frame, s.wrapping_mul(3));
                let k = random_endo(&frame, s.wrapping_mul(3).wrapping_add(1));
                let l = random_endo(&frame, s.wrapping_mul(3).wrapping_add(2));
                let mut rows = vec![verify_pair_composition(&j, &k, &l)?];
                rows[0].label = "pair-composition".into();
                // The ten associated-tensor relations on a structured draw.
                let h = random_hn(s, dim / 4)?;
                let h = match backend {
                    Backend::Rational => h,
                    Backend::Float => h.to_float_backend()?,
                };
                rows.extend(h.verify_assoc_relations()?);
                sections.push((format!("seed:{s}"), rows));
            }
        }
        (Some(_), Some(_)) => bail!("pass either an instance file or --random, not both"),
        (None, None) => bail!("pass an instance file or --random N"),
    }

    let pass = sections.iter().all(|(_, rows)| all_pass(rows));
    let report = json!({
        "command": "lemmas",
        "backend": backend.to_string(),
        "instances": sections
            .iter()
            .map(|(source, rows)| json!({
                "source": source,
                "identities": residual_json(rows),
                "pass": all_pass(rows),
            }))
            .collect::<Vec<_>>(),
        "pass": pass,
    });
    let mut lines = vec![format!("lemmas [{}]", backend)];
    for (source, rows) in &sections {
        lines.push(format!("instance {source}"));
        lines.extend(residual_lines(rows));
    }
    lines.push(verdict_line(pass));
    emit(format, &report, &lines);
    Ok(pass)
}

fn report_invalid_instance(
    path: &Path,
    violations: &[Error],
    backend: Backend,
    format: Format,
) -> anyhow::Result<bool> {
    let violation_strings: Vec<String> = violations.iter().map(|e| e.to_string()).collect();
    let report = json!({
        "command": "lemmas",
        "backend": backend.to_string(),
        "instance": path.display().to_string(),
        "violations": violation_strings,
        "pass": false,
    });
    let mut lines = vec![format!("lemmas {} [{}]", path.display(), backend)];
    for v in &violation_strings {
        lines.push(format!("  violated: {v}"));
    }
    lines.push(verdict_line(false));
    emit(format, &report, &lines);
    Ok(false)
}

fn cmd_classes(path: &Path, backend: Backend, format: Format) -> anyhow::Result<bool> {
    let raw = load_instance(path, backend)?;
    let h = match build_checked(&raw) {
        Ok(h) => h,
        Err(violations) => return report_invalid_instance(path, &violations, backend, format),
    };
    // Both calls run internal consistency gates (two-imply-all, the twin
    // cocalibration predicates); a failure there is a math failure.
    let six = h.assoc_six().map_err(consistency_failure)?;
    let classes = h.class_report().map_err(consistency_failure)?;
    let report = json!({
        "command": "classes",
        "backend": backend.to_string(),
        "instance": path.display().to_string(),
        "associated": six.to_json(),
        "classes": classes.to_json(),
        "pass": true,
    });
    let mut lines = vec![format!("classes {} [{}]", path.display(), backend)];
    for (label, t, vanish) in six
        .tensors
        .iter()
        .zip(hypernij::hn::ASSOC_LABELS)
        .map(|(t, l)| (l, t, t.is_zero_within(six.scale)))
    {
        let (max_abs, _) = t.max_abs_report();
        lines.push(format!(
            "  {label}: max |component| {} [{}]",
            max_abs,
            if vanish { "vanishes" } else { "nonzero" }
        ));
    }
    lines.push(format!("  cocalibrated(J1): {}", classes.cocalibrated_j1));
    lines.push(format!("  quasi-Kaehler(J2): {}", classes.quasi_kaehler_j2));
    lines.push(format!("  quasi-Kaehler(J3): {}", classes.quasi_kaehler_j3));
    lines.push(format!(
        "  Kaehler: J1 {} / J2 {} / J3 {}",
        classes.kaehler[0], classes.kaehler[1], classes.kaehler[2]
    ));
    lines.push(verdict_line(true));
    emit(format, &report, &lines);
    Ok(true)
}

fn consistency_failure(e: Error) -> anyhow::Error {
    anyhow!("internal consistency check failed: {e}")
}

fn cmd_torsion(
    path: &Path,
    preserve: &[usize],
    backend: Backend,
    format: Format,
) -> anyhow::Result<bool> {
    let preserve = Preserve::new(preserve).map_err(|e| anyhow!("--preserve: {e}"))?;
    let raw = load_instance(path, backend)?;
    let h = match build_checked(&raw) {
        Ok(h) => h,
        Err(violations) => return report_invalid_instance(path, &violations, backend, format),
    };

    let six = h.assoc_six().map_err(consistency_failure)?;
    let result = solve_skew_torsion(&TorsionProblem {
        hn: h,
        preserve,
    })?;

    // Existence must agree with the vanishing of {J_a, J_a} for every
    // preserved structure.
    let predicted = preserve.alphas().iter().all(|&a| six.vanish[a - 1]);
    let consistent = predicted == result.status.exists();
    let verified = result
        .verification
        .as_ref()
        .map(|r| r.all_pass())
        .unwrap_or(true);
    let pass = consistent && verified;

    let report = json!({
        "command": "torsion",
        "backend": backend.to_string(),
        "instance": path.display().to_string(),
        "preserve": preserve.alphas(),
        "result": result.to_json(),
        "vanishing_predicts_existence": predicted,
        "consistent": consistent,
        "pass": pass,
    });
    let mut lines = vec![format!(
        "torsion {} [{}] preserve {:?}",
        path.display(),
        backend,
        preserve.alphas()
    )];
    lines.push(format!("  status: {}", result.status.as_str()));
    if result.status.exists() {
        lines.push(format!("  family dimension: {}", result.family_dim));
    }
    if let Some(v) = &result.verification {
        lines.extend(residual_lines(&v.rows));
    }
    lines.push(format!(
        "  vanishing biconditional: {}",
        if consistent { "consistent" } else { "VIOLATED" }
    ));
    lines.push(verdict_line(pass));
    emit(format, &report, &lines);
    Ok(pass)
}

fn cmd_example(
    lambdas: &[String],
    output: Option<PathBuf>,
    backend: Backend,
) -> anyhow::Result<bool> {
    if lambdas.len() != 4 {
        bail!("--lambdas needs exactly four comma-separated values");
    }
    let mut parsed = Vec::with_capacity(4);
    for text in lambdas {
        parsed.push(Scalar::parse(text, backend).map_err(|e| anyhow!("{e}"))?);
    }
    let lambda: [Scalar; 4] = parsed.try_into().expect("four values");
    let params = ExampleParams::new(lambda).map_err(|e| anyhow!("{e}"))?;
    let h = example_g4(&params).map_err(|e| anyhow!("{e}"))?;
    let text = to_pretty_string(&instance_to_json(&h));
    match output {
        Some(path) => fs::write(&path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn cmd_random_sweep(
    count: usize,
    seed: u64,
    dim: usize,
    backend: Backend,
    format: Format,
) -> anyhow::Result<bool> {
    if dim == 0 || !dim.is_multiple_of(4) {
        bail!("--dim must be a positive multiple of 4, got {dim}");
    }
    let mut instance_reports = Vec::new();
    let mut lines = vec![format!("random-sweep [{}] count {count} dim {dim}", backend)];
    let mut pass = true;

    for k in 0..count {
        let s = seed.wrapping_add(k as u64);
        let h = random_hn(s, dim / 4)?;
        let h = match backend {
            Backend::Rational => h,
            Backend::Float => h.to_float_backend()?,
        };

        let six = h.assoc_six().map_err(consistency_failure)?;
        let classes = h.class_report().map_err(consistency_failure)?;

        let mut rows = h.verify_assoc_relations()?;
        for alpha in 1..=3 {
            rows.extend(h.verify_fundamental_expansions(alpha)?);
            rows.extend(h.fundamental(alpha)?.symmetry_reports(h.j(alpha)));
        }
        rows.push(h.verify_assoc_from_nijenhuis()?);
        let identities_pass = all_pass(&rows);

        // Solver biconditionals for the Hermitian structure alone and for
        // the full triple.
        let mut solver_pass = true;
        let mut solver_json = Vec::new();
        for alphas in [vec![1usize], vec![1usize, 2, 3]] {
            let preserve = Preserve::new(&alphas).expect("nonempty");
            let result = solve_skew_torsion(&TorsionProblem {
                hn: h.clone(),
                preserve,
            })?;
            let predicted = alphas.iter().all(|&a| six.vanish[a - 1]);
            let consistent = predicted == result.status.exists();
            let verified = result
                .verification
                .as_ref()
                .map(|r| r.all_pass())
                .unwrap_or(true);
            // A connection preserving the Hermitian structure alone is
            // unique whenever it exists.
            let unique_ok =
                !(alphas == [1] && result.status.exists() && result.family_dim != 0);
            solver_pass &= consistent && verified && unique_ok;
            solver_json.push(json!({
                "preserve": alphas,
                "status": result.status.as_str(),
                "family_dim": result.family_dim,
                "consistent": consistent,
            }));
        }

        let instance_pass = identities_pass && solver_pass;
        pass &= instance_pass;

        instance_reports.push(json!({
            "seed": s,
            "all_assoc_vanish": six.all_vanish(),
            "classes": classes.to_json(),
            "identities_pass": identities_pass,
            "solver": solver_json,
            "pass": instance_pass,
        }));
        lines.push(format!(
            "  seed {s}: assoc {} | identities {} | solver {} [{}]",
            if six.all_vanish() { "vanish" } else { "nonzero" },
            if identities_pass { "ok" } else { "FAIL" },
            if solver_pass { "ok" } else { "FAIL" },
            if instance_pass { "ok" } else { "FAIL" },
        ));
    }

    let report = json!({
        "command": "random-sweep",
        "backend": backend.to_string(),
        "count": count,
        "dim": dim,
        "instances": instance_reports,
        "pass": pass,
    });
    lines.push(verdict_line(pass));
    emit(format, &report, &lines);
    Ok(pass)
}
