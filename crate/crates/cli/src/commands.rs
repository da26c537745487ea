use std::path::Path;

use mclab_core::arveson::{classify_with, model_space, truncated_multishift, ClassifyConfig};
use mclab_core::ball::{apply_automorphism, Automorphism, BallPoint};
use mclab_core::charfn::{spectrum_charfn_consistency, CharacteristicFunction};
use mclab_core::opcore::{
    random_commuting_tuple, random_nilpotent_tuple, seeded_rng, validate_tuple,
    word_trace_invariants,
};
use mclab_core::sample::random_spherical_diagonal;
use mclab_core::verify::{self, SuiteConfig};
use mclab_core::{CMat, OperatorTuple, Tolerances, C64};
use serde_json::{json, Value};

use crate::args::{
    ClassifyArgs, Cli, Command, GenArgs, ModelArgs, OutputFormat, SpectrumArgs, ThetaArgs,
    TransformArgs, TupleKind, VerifyArgs,
};
use crate::document::{
    matrix_from_json, matrix_to_json, read_text, read_tuple, write_text, MatrixJson, Metadata,
    TupleDocument,
};
use crate::{CliError, ExitStatus};

/// What a command prints and how the process should exit.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: Vec<String>,
    pub stderr: Vec<String>,
    pub status: ExitStatus,
}

impl Outcome {
    fn ok(lines: Vec<String>) -> Self {
        Self {
            stdout: lines,
            stderr: Vec::new(),
            status: ExitStatus::Success,
        }
    }
}

struct Ctx {
    tol: f64,
    seed: u64,
    format: OutputFormat,
}

impl Ctx {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            commute: self.tol,
            contract: self.tol,
            ..Tolerances::default()
        }
    }

    fn render(&self, value: &Value) -> String {
        match self.format {
            OutputFormat::Json => value.to_string(),
            OutputFormat::Text => match value {
                Value::Object(map) => map
                    .iter()
                    .map(|(k, v)| format!("{k}: {v}"))
                    .collect::<Vec<_>>()
                    .join("\n"),
                other => other.to_string(),
            },
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let ctx = Ctx {
        tol: cli.tol,
        seed: cli.seed,
        format: cli.output,
    };
    match cli.command {
        Command::Gen(a) => gen(&ctx, a),
        Command::Classify(a) => classify(&ctx, a),
        Command::Theta(a) => theta(&ctx, a),
        Command::Transform(a) => transform(&ctx, a),
        Command::Verify(a) => verify_cmd(&ctx, a),
        Command::Model(a) => model(&ctx, a),
        Command::Spectrum(a) => spectrum(&ctx, a),
    }
}

/// Parses `"c1,c2,…"` into a point of `ℂⁿ`.
pub fn parse_point(text: &str) -> Result<BallPoint, CliError> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<C64>()
                .map_err(|_| CliError::Parse(format!("cannot parse {s:?} as a complex number")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(BallPoint::new)
}

fn point_json(p: &BallPoint) -> Value {
    json!(p.coords().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

/// Reads a tuple and checks that it is a commuting row contraction.
fn load_valid(ctx: &Ctx, path: &Path) -> Result<OperatorTuple, CliError> {
    let t = read_tuple(path)?;
    let diag = validate_tuple(&t, ctx.tol, ctx.tol);
    if !diag.pass {
        return Err(CliError::Precondition(format!(
            "not a commuting row contraction (max commutator {:e}, row norm {})",
            diag.max_commutator, diag.row_norm
        )));
    }
    Ok(t)
}

fn emit_document(
    ctx: &Ctx,
    doc: &TupleDocument,
    out: Option<&Path>,
    info: Value,
) -> Result<Outcome, CliError> {
    match out {
        Some(path) => {
            write_text(path, &doc.to_json())?;
            Ok(Outcome::ok(vec![ctx.render(&info)]))
        }
        None => Ok(Outcome {
            stdout: vec![doc.to_json()],
            stderr: vec![ctx.render(&info)],
            status: ExitStatus::Success,
        }),
    }
}

fn gen(ctx: &Ctx, a: GenArgs) -> Result<Outcome, CliError> {
    if a.dim == 0 || a.n == 0 {
        return Err(CliError::Parse("--dim and --n must be positive".into()));
    }
    if !(0.0..1.0).contains(&a.margin) {
        return Err(CliError::Parse("--margin must lie in [0, 1)".into()));
    }
    let (t, generator) = match a.kind {
        TupleKind::Random => (
            random_commuting_tuple(a.dim, a.n, ctx.seed, a.margin),
            "random_commuting_tuple",
        ),
        TupleKind::Nilpotent => (
            random_nilpotent_tuple(a.dim, a.n, ctx.seed, a.margin),
            "random_nilpotent_tuple",
        ),
        TupleKind::Multishift => {
            if a.degree == 0 {
                return Err(CliError::Parse("--degree must be positive".into()));
            }
            (truncated_multishift(a.n, a.degree, 1), "truncated_multishift")
        }
        TupleKind::Spherical => (
            random_spherical_diagonal(a.dim, a.n, &mut seeded_rng(ctx.seed)),
            "random_spherical_diagonal",
        ),
    };
    let description = match a.kind {
        TupleKind::Random | TupleKind::Nilpotent => {
            format!("dim {}, n {}, margin {}", a.dim, a.n, a.margin)
        }
        TupleKind::Multishift => format!("n {}, degree {}", a.n, a.degree),
        TupleKind::Spherical => format!("dim {}, n {}", a.dim, a.n),
    };
    let doc = TupleDocument::from_tuple(
        &t,
        Some(Metadata {
            seed: Some(ctx.seed),
            generator: Some(generator.into()),
            description: Some(description),
        }),
    );
    let diag = validate_tuple(&t, ctx.tol, ctx.tol);
    let info = serde_json::to_value(diag).expect("diagnostics serialize");
    emit_document(ctx, &doc, a.out.as_deref(), info)
}

fn classify(ctx: &Ctx, a: ClassifyArgs) -> Result<Outcome, CliError> {
    let t = load_valid(ctx, &a.input)?;
    let cfg = ClassifyConfig {
        tol_zero: a.tol_zero.unwrap_or(ctx.tol),
        tol_one: a.tol_one.unwrap_or(ctx.tol),
        k_max: a.k_max,
        ..ClassifyConfig::default()
    };
    let report = classify_with(&t, &cfg);
    let value = serde_json::to_value(&report).expect("report serializes");
    Ok(Outcome::ok(vec![ctx.render(&value)]))
}

fn theta(ctx: &Ctx, a: ThetaArgs) -> Result<Outcome, CliError> {
    let t = load_valid(ctx, &a.input)?;
    let z = parse_point(&a.z)?;
    let cf = CharacteristicFunction::new(&t, &ctx.tolerances())?;
    let value = cf.eval(&z)?;
    let out = json!({
        "z": point_json(&z),
        "domainDim": cf.domain_dim(),
        "codomainDim": cf.codomain_dim(),
        "theta": matrix_to_json(&value),
    });
    Ok(Outcome::ok(vec![ctx.render(&out)]))
}

fn read_matrix(path: &Path) -> Result<CMat, CliError> {
    let rows: MatrixJson = serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    matrix_from_json(&rows, "ω")
}

fn transform(ctx: &Ctx, a: TransformArgs) -> Result<Outcome, CliError> {
    let t = load_valid(ctx, &a.input)?;
    let lambda = match &a.lambda {
        Some(s) => parse_point(s)?,
        None => BallPoint::zero(t.n()),
    };
    if lambda.n() != t.n() {
        return Err(CliError::Parse(format!(
            "λ has {} coordinates but the tuple has {} operators",
            lambda.n(),
            t.n()
        )));
    }
    let omega = match &a.omega {
        Some(p) => read_matrix(p)?,
        None => CMat::identity(t.n(), t.n()),
    };
    let alpha = Automorphism::new(omega, lambda.clone())?;
    let image = apply_automorphism(&alpha, &t, &ctx.tolerances())?;

    let cfg = ClassifyConfig {
        tol_zero: ctx.tol,
        tol_one: ctx.tol,
        ..ClassifyConfig::default()
    };
    let before = classify_with(&t, &cfg);
    let after = classify_with(&image, &cfg);
    let info = json!({
        "lambda": point_json(&lambda),
        "before": serde_json::to_value(&before).expect("report serializes"),
        "after": serde_json::to_value(&after).expect("report serializes"),
        "classesPreserved": before.flags() == after.flags(),
    });
    let doc = TupleDocument::from_tuple(
        &image,
        Some(Metadata {
            seed: None,
            generator: Some("transform".into()),
            description: Some(format!("α(T) for λ = {:?}", lambda.coords())),
        }),
    );
    emit_document(ctx, &doc, a.out.as_deref(), info)
}

fn verify_cmd(ctx: &Ctx, a: VerifyArgs) -> Result<Outcome, CliError> {
    if a.dims == 0 || a.max_n == 0 {
        return Err(CliError::Parse("--dims and --max-n must be positive".into()));
    }
    let cfg = SuiteConfig {
        trials: a.trials,
        seed: ctx.seed,
        max_dim: a.dims,
        max_n: a.max_n,
        degree: a.degree,
    };
    let reports = if a.suite == "all" {
        verify::run_all(&cfg)
    } else {
        let suite = verify::find(&a.suite).ok_or_else(|| CliError::UnknownSuite {
            name: a.suite.clone(),
            known: verify::suite_names().join(", "),
        })?;
        vec![verify::run_suite(&suite, &cfg)]
    };
    let all_pass = reports.iter().all(|r| r.pass);
    let lines = reports
        .iter()
        .map(|r| match ctx.format {
            OutputFormat::Json => serde_json::to_string(r).expect("report serializes"),
            OutputFormat::Text => format!(
                "{} {:<20} maxResidual {:.3e} (tolerance {:.0e}, {} trials, {} skipped, {} ms)",
                if r.pass { "PASS" } else { "FAIL" },
                r.suite_name,
                r.max_residual,
                r.tolerance,
                r.trials,
                r.skipped,
                r.runtime_millis
            ),
        })
        .collect();
    Ok(Outcome {
        stdout: lines,
        stderr: Vec::new(),
        status: if all_pass {
            ExitStatus::Success
        } else {
            ExitStatus::VerificationFailed
        },
    })
}

fn model(ctx: &Ctx, a: ModelArgs) -> Result<Outcome, CliError> {
    let t = load_valid(ctx, &a.input)?;
    let degree = a.degree.unwrap_or(t.dim());
    let cfg = ClassifyConfig {
        tol_zero: ctx.tol,
        tol_one: ctx.tol,
        ..ClassifyConfig::default()
    };
    let m = model_space(&t, degree, &ctx.tolerances(), &cfg)?;
    let len = (2 * t.dim()).clamp(1, 6);
    let words = word_trace_invariants(&t, len)
        .max_distance(&word_trace_invariants(&m.model_tuple, len))
        .unwrap_or(f64::INFINITY);
    let out = json!({
        "degree": degree,
        "modelDim": m.basis_ht.ncols(),
        "phiUnitarity": m.phi_unitarity,
        "adjointResidual": m.adjoint_residual,
        "intertwiningResidual": m.intertwining_residual,
        "wordLength": len,
        "wordInvariantDistance": words,
        "modelTuple": serde_json::to_value(TupleDocument::from_tuple(&m.model_tuple, None))
            .expect("document serializes"),
    });
    Ok(Outcome::ok(vec![ctx.render(&out)]))
}

fn spectrum(ctx: &Ctx, a: SpectrumArgs) -> Result<Outcome, CliError> {
    let t = load_valid(ctx, &a.input)?;
    let lambda = parse_point(&a.lambda)?;
    let r = spectrum_charfn_consistency(&t, &lambda, ctx.tol, &ctx.tolerances())?;
    let out = json!({
        "lambda": point_json(&lambda),
        "inSigmaR": r.in_sigma_r,
        "thetaNotSurjective": r.theta_not_surjective,
        "minEigenvalue": r.min_eigenvalue,
        "thetaMinEigenvalue": r.theta_min_eigenvalue,
        "agree": r.agree,
    });
    Ok(Outcome::ok(vec![ctx.render(&out)]))
}
