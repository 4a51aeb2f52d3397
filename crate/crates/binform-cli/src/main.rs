//! binform: reduction theory of binary forms on the command line.
//!
//! Subcommands: reduce-quad, reduce-herm, enum, julia, reduce, bounds.
//! Every command prints one JSON envelope (or a table for `enum`) and exits
//! 0 on success, 2 on invalid input, 3 on unstable or degenerate forms and
//! 4 on solver failure. The JSON schema ships in docs/schema.json.

mod emit;
mod parse;

use binform::arith::{UniMatZ, UniMatZi};
use binform::halfplane::{in_f_h2, in_f_h3_qi, H2Point, H3Point, Membership};
use binform::hermforms::{
    act_herm, enumerate_reduced_herm, in_b_k, reduce_herm, zero_map_herm, BkMembership, HermForm,
    ImaginaryQuadraticField,
};
use binform::julia::{
    act_form_exact, julia_bounds_check, julia_covariant, stoll_cremona_reduce, BinaryForm,
    CovariantQuad, IntBinaryForm, UhPoint,
};
use binform::quadforms::{act, class_height, enumerate_reduced, reduce, zero_map, QuadForm};
use binform::Error as LibError;
use clap::{Parser, Subcommand, ValueEnum};
use emit::{json_f64, json_str, obj};
use serde_json::Value;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "binform", version, about = "Reduction theory of binary forms")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum EnumKind {
    Quad,
    Herm,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum JuliaEmit {
    Invariant,
    Quadratic,
    Point,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce a positive definite rational quadratic form a,b,c
    ReduceQuad {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Reduce a positive definite Hermitian form a,b,c over `Z[i]` (b Gaussian)
    ReduceHerm {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        /// Norm bound for the B_K cross-check of the reduced zero
        #[arg(long, default_value_t = 10)]
        seed_bound: i64,
    },
    /// Enumerate reduced classes of fixed discriminant (disc may be a
    /// comma-separated list)
    Enum {
        #[arg(value_enum)]
        kind: EnumKind,
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Julia invariant, Julia quadratic and representative point of a
    /// stable binary form
    Julia {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, value_enum, default_value = "all")]
        emit: JuliaEmit,
        /// Membership tolerance band for the reported domain classification
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Stoll-Cremona reduction of a stable integral binary form
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Julia bound report (leading coefficient and root bounds)
    Bounds {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<LibError> for Failure {
    fn from(e: LibError) -> Self {
        let code = match e {
            LibError::NotPositiveDefinite | LibError::InvalidDiscriminant(_) => 2,
            LibError::NotStable { .. }
            | LibError::DegreeTooSmall(_)
            | LibError::RepeatedRoot
            | LibError::DegenerateInput
            | LibError::PolicyNotApplicable => 3,
            LibError::SolverDiverged { .. }
            | LibError::NonConvergence
            | LibError::NonTermination => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::invalid(message)
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(text) => {
            use std::io::Write;
            // ignore a closed pipe downstream
            let _ = writeln!(std::io::stdout(), "{text}");
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    }
}

fn run(cmd: Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::ReduceQuad { form } => cmd_reduce_quad(&form),
        Cmd::ReduceHerm { form, seed_bound } => cmd_reduce_herm(&form, seed_bound),
        Cmd::Enum { kind, disc, format } => cmd_enum(kind, &disc, format),
        Cmd::Julia { coeffs, emit, tol } => cmd_julia(&coeffs, emit, tol),
        Cmd::Reduce { coeffs } => cmd_reduce(&coeffs),
        Cmd::Bounds { coeffs } => cmd_bounds(&coeffs),
    }
}

fn mat_z_json(m: &UniMatZ) -> Value {
    Value::Array(vec![
        Value::Array(vec![json_str(&m.a), json_str(&m.b)]),
        Value::Array(vec![json_str(&m.c), json_str(&m.d)]),
    ])
}

fn mat_zi_json(m: &UniMatZi) -> Value {
    Value::Array(vec![
        Value::Array(vec![json_str(&m.a), json_str(&m.b)]),
        Value::Array(vec![json_str(&m.c), json_str(&m.d)]),
    ])
}

fn h2_json(p: H2Point) -> Value {
    obj(vec![("x", json_f64(p.x)), ("y", json_f64(p.y))])
}

fn h3_json(p: H3Point) -> Value {
    obj(vec![
        ("re", json_f64(p.z.re)),
        ("im", json_f64(p.z.im)),
        ("t", json_f64(p.t)),
    ])
}

fn membership_str(m: Membership) -> &'static str {
    match m {
        Membership::Interior => "interior",
        Membership::Boundary => "boundary",
        Membership::Outside => "outside",
    }
}

fn envelope(
    command: &str,
    input: Value,
    output: Value,
    transcript: Option<Value>,
    invariants: Value,
    started: Instant,
) -> String {
    let env = obj(vec![
        ("command", json_str(command)),
        ("input", input),
        ("output", output),
        ("transcript", transcript.unwrap_or(Value::Null)),
        ("invariants", invariants),
        ("timing_ms", json_f64(started.elapsed().as_secs_f64() * 1e3)),
    ]);
    serde_json::to_string_pretty(&env).expect("serialization cannot fail")
}

fn cmd_reduce_quad(form: &str) -> Result<String, Failure> {
    let started = Instant::now();
    let entries = parse::parse_rational_list(form)?;
    if entries.len() != 3 {
        return Err(Failure::invalid("expected three coefficients a,b,c"));
    }
    let q = QuadForm::new(entries[0].clone(), entries[1].clone(), entries[2].clone());
    let (reduced, m) = reduce(&q)?;
    debug_assert_eq!(act(&m, &q), reduced);
    let ch = class_height(&q)?;
    let invariants = obj(vec![
        ("discriminant", json_str(q.disc())),
        ("class_height", json_str(&ch)),
        ("height_before", json_str(q.height())),
        ("height_after", json_str(reduced.height())),
        ("zero", h2_json(zero_map(&reduced)?)),
    ]);
    Ok(envelope(
        "reduce-quad",
        obj(vec![
            ("kind", json_str("quad")),
            (
                "coefficients",
                Value::Array(vec![json_str(&q.a), json_str(&q.b), json_str(&q.c)]),
            ),
        ]),
        obj(vec![(
            "reduced",
            Value::Array(vec![
                json_str(&reduced.a),
                json_str(&reduced.b),
                json_str(&reduced.c),
            ]),
        )]),
        Some(mat_z_json(&m)),
        invariants,
        started,
    ))
}

fn cmd_reduce_herm(form: &str, seed_bound: i64) -> Result<String, Failure> {
    let started = Instant::now();
    let entries = parse::split_list(form);
    if entries.len() != 3 {
        return Err(Failure::invalid("expected three coefficients a,b,c"));
    }
    let a = parse::parse_bigint(entries[0])?;
    let b = parse::parse_gauss_int(entries[1])?;
    let c = parse::parse_bigint(entries[2])?;
    let q = HermForm::new(a, b, c);
    let (reduced, m) = reduce_herm(&q)?;
    debug_assert_eq!(act_herm(&m, &q), reduced);
    let zero = zero_map_herm(&reduced)?;
    let k = ImaginaryQuadraticField::new(-1).expect("Q(i) is valid");
    let bk = match in_b_k(&zero, &k, seed_bound) {
        BkMembership::InsideBounded => format!("inside (bounded check, norms <= {seed_bound})"),
        BkMembership::Outside { c, d } => {
            format!("outside (witness c = {:?}, d = {:?})", c, d)
        }
    };
    let invariants = obj(vec![
        ("discriminant", json_str(q.disc())),
        ("zero", h3_json(zero)),
        ("bk_check", json_str(bk)),
    ]);
    Ok(envelope(
        "reduce-herm",
        obj(vec![
            ("kind", json_str("herm")),
            (
                "coefficients",
                Value::Array(vec![json_str(&q.a), json_str(&q.b), json_str(&q.c)]),
            ),
        ]),
        obj(vec![(
            "reduced",
            Value::Array(vec![
                json_str(&reduced.a),
                json_str(&reduced.b),
                json_str(&reduced.c),
            ]),
        )]),
        Some(mat_zi_json(&m)),
        invariants,
        started,
    ))
}

fn cmd_enum(kind: EnumKind, disc: &str, format: Format) -> Result<String, Failure> {
    let discs = parse::parse_bigint_list(disc)?;
    if discs.is_empty() {
        return Err(Failure::invalid("no discriminant given"));
    }
    match kind {
        EnumKind::Quad => {
            let lists = discs
                .iter()
                .map(enumerate_reduced)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(match format {
                Format::Json => serde_json::to_string_pretty(&emit::quad_json(&lists)).unwrap(),
                Format::Csv => emit::quad_csv(&lists).trim_end().to_string(),
                Format::Md => emit::quad_md(&lists).trim_end().to_string(),
            })
        }
        EnumKind::Herm => {
            let lists = discs
                .iter()
                .map(enumerate_reduced_herm)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(match format {
                Format::Json => serde_json::to_string_pretty(&emit::herm_json(&lists)).unwrap(),
                Format::Csv => emit::herm_csv(&lists).trim_end().to_string(),
                Format::Md => emit::herm_md(&lists).trim_end().to_string(),
            })
        }
    }
}

fn covariant_json(q: &CovariantQuad, normalized: bool) -> Value {
    match q {
        CovariantQuad::Real(r) => {
            let s = if normalized { 1.0 / r.a } else { 1.0 };
            obj(vec![
                ("a", json_f64(r.a * s)),
                ("b", json_f64(r.b * s)),
                ("c", json_f64(r.c * s)),
            ])
        }
        CovariantQuad::Herm(h) => {
            let s = if normalized { 1.0 / h.a } else { 1.0 };
            obj(vec![
                ("a", json_f64(h.a * s)),
                ("b_re", json_f64(h.b.re * s)),
                ("b_im", json_f64(h.b.im * s)),
                ("c", json_f64(h.c * s)),
            ])
        }
    }
}

fn point_json(p: &UhPoint) -> Value {
    match p {
        UhPoint::Plane(p) => h2_json(*p),
        UhPoint::Space(p) => h3_json(*p),
    }
}

fn cmd_julia(coeffs: &str, which: JuliaEmit, tol: f64) -> Result<String, Failure> {
    let started = Instant::now();
    let entries = parse::parse_complex_list(coeffs)?;
    if entries.len() < 3 {
        return Err(Failure::invalid("need degree >= 2 (three coefficients)"));
    }
    let f = BinaryForm::new(entries);
    let jd = julia_covariant(&f)?;
    let membership = match jd.critical_point {
        UhPoint::Plane(p) => in_f_h2(p, tol),
        UhPoint::Space(p) => in_f_h3_qi(p, tol),
    };
    let mut fields: Vec<(&str, Value)> = Vec::new();
    if matches!(which, JuliaEmit::Invariant | JuliaEmit::All) {
        fields.push(("theta0", json_f64(jd.theta0)));
    }
    if matches!(which, JuliaEmit::Quadratic | JuliaEmit::All) {
        fields.push((
            "julia_quadratic",
            covariant_json(&jd.julia_quadratic, false),
        ));
        fields.push((
            "julia_quadratic_normalized",
            covariant_json(&jd.julia_quadratic, true),
        ));
    }
    if matches!(which, JuliaEmit::Point | JuliaEmit::All) {
        fields.push(("point", point_json(&jd.critical_point)));
        fields.push(("membership", json_str(membership_str(membership))));
    }
    fields.push(("residual", json_f64(jd.residual)));
    if jd.borderline_stable {
        fields.push((
            "warning",
            json_str("stable with a repeated root at the maximal allowed multiplicity"),
        ));
    }
    let weights = Value::Array(jd.weights.iter().map(|&w| json_f64(w)).collect());
    let invariants = obj(vec![("theta0", json_f64(jd.theta0)), ("weights", weights)]);
    Ok(envelope(
        "julia",
        obj(vec![
            ("kind", json_str("binary")),
            ("coefficients", json_str(coeffs.trim())),
        ]),
        obj(fields),
        None,
        invariants,
        started,
    ))
}

fn cmd_reduce(coeffs: &str) -> Result<String, Failure> {
    let started = Instant::now();
    let entries = parse::parse_bigint_list(coeffs)?;
    if entries.len() < 4 {
        return Err(Failure::invalid(
            "need an integral form of degree >= 3 (four or more coefficients)",
        ));
    }
    let f = IntBinaryForm::new(entries);
    let (g, m) = stoll_cremona_reduce(&f)?;
    debug_assert_eq!(act_form_exact(&m, &f), g);
    let jd = julia_covariant(&g.to_float())?;
    let point = match jd.critical_point {
        UhPoint::Plane(p) => p,
        UhPoint::Space(_) => unreachable!("integral forms are real"),
    };
    let invariants = obj(vec![
        ("height_before", json_str(f.naive_height())),
        ("height_after", json_str(g.naive_height())),
        ("theta0", json_f64(jd.theta0)),
        ("julia_point", h2_json(point)),
    ]);
    Ok(envelope(
        "reduce",
        obj(vec![
            ("kind", json_str("binary")),
            (
                "coefficients",
                Value::Array(f.coeffs().iter().map(json_str).collect()),
            ),
        ]),
        obj(vec![(
            "reduced",
            Value::Array(g.coeffs().iter().map(json_str).collect()),
        )]),
        Some(mat_z_json(&m)),
        invariants,
        started,
    ))
}

fn cmd_bounds(coeffs: &str) -> Result<String, Failure> {
    let started = Instant::now();
    let entries = parse::parse_complex_list(coeffs)?;
    if entries.len() < 4 {
        return Err(Failure::invalid("need degree >= 3"));
    }
    let f = BinaryForm::new(entries);
    let report = julia_bounds_check(&f)?;
    let output = obj(vec![
        ("degree", Value::from(report.degree)),
        ("reduced", Value::Bool(report.reduced)),
        ("theta0_real_convention", json_f64(report.theta0_real)),
        ("lead", json_f64(report.lead)),
        ("lead_bound", json_f64(report.lead_bound)),
        ("lead_ok", Value::Bool(report.lead_ok)),
        ("lead_margin", json_f64(report.lead_margin)),
        ("root_bound", json_f64(report.root_bound)),
        ("max_root_norm_sq", json_f64(report.max_root_norm_sq)),
        ("roots_ok", Value::Bool(report.roots_ok)),
        ("root_margin", json_f64(report.root_margin)),
    ]);
    Ok(envelope(
        "bounds",
        obj(vec![
            ("kind", json_str("binary")),
            ("coefficients", json_str(coeffs.trim())),
        ]),
        output,
        None,
        obj(vec![]),
        started,
    ))
}
