use std::fmt::Write as _;
use std::path::Path;

use anyhow::anyhow;
use log::{info, warn};
use mpshift_core::equations::{self, Method, SolveOptions, SolveReport};
use mpshift_core::factorizations::{self, QuadFactorization};
use mpshift_core::io;
use mpshift_core::oracle::{det_ratio_oracle, OracleConfig, OracleReport, RatioConstant};
use mpshift_core::shifts::{self, DetRatio, MultiShiftSpec, ShiftSpec};
use mpshift_core::spectra::polyeig;
use mpshift_core::types::format_complex;
use mpshift_core::{fixtures, linalg};
use mpshift_core::{CMatrix, CVector, Complex, Eigenvalue, Error, LaurentPoly, MatrixFunction, MatrixPoly};
use serde_json::{json, Value};

use crate::{Cli, Command, Format, MethodArg, ShiftArgs, SideArg};

const ORACLE_SAMPLES: usize = 16;

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 2,
        error: error.into(),
    }
}

fn numeric(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 1,
        error: error.into(),
    }
}

/// Input problems exit with 2, everything else is a numeric failure.
fn classify(error: Error) -> Failure {
    match error {
        Error::Parse { .. } | Error::Io(_) | Error::DimensionMismatch { .. } => usage(error),
        other => numeric(other),
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Fixture { name, output } => fixture(name, output.as_deref()),
        Command::Eig { input, left } => eig(cli, input, *left),
        Command::Shift(args) => shift(cli, args),
        Command::Factor {
            input,
            both,
            quad,
            tol,
            maxit,
        } => factor(cli, input, *both, *quad, *tol, *maxit),
        Command::Solve {
            input,
            shift,
            u,
            v,
            method,
            tol,
            maxit,
        } => solve(cli, input, shift.as_deref(), u, v, *method, *tol, *maxit),
        Command::Check {
            original,
            shifted,
            removed,
            added,
            constant,
            samples,
            tolerance,
        } => check(cli, original, shifted, removed, added, constant, *samples, *tolerance),
    }
}

/// A path if it exists, otherwise a built-in fixture name.
fn load(input: &str) -> CliResult<LaurentPoly> {
    if Path::new(input).exists() {
        return io::read_laurent(input).map_err(classify);
    }
    fixtures::by_name(input).ok_or_else(|| usage(anyhow!("'{input}' is neither a file nor a fixture name")))
}

fn load_poly(input: &str) -> CliResult<MatrixPoly> {
    load(input)?
        .to_poly()
        .ok_or_else(|| usage(anyhow!("'{input}' has negative powers; a matrix polynomial is required")))
}

fn emit(format: Format, table: &str, value: &Value) {
    match format {
        Format::Table => print!("{table}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
    }
}

fn write_matrix(out: &mut String, name: &str, m: &CMatrix) {
    writeln!(out, "{name} =").unwrap();
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| format_complex(m[(r, c)])).collect();
        writeln!(out, "  [{}]", row.join(", ")).unwrap();
    }
}

fn parse_value(flag: &str, text: &str) -> CliResult<Eigenvalue> {
    io::parse_eigenvalue(text).map_err(|e| usage(anyhow!("--{flag}: {e}")))
}

fn parse_finite(flag: &str, text: &str) -> CliResult<Complex> {
    io::parse_complex(text).map_err(|e| usage(anyhow!("--{flag}: {e}")))
}

fn required<'a>(flag: &str, value: &'a Option<String>) -> CliResult<&'a str> {
    value.as_deref().ok_or_else(|| usage(anyhow!("--{flag} is required")))
}

fn parse_pair(flag: &str, text: &str) -> CliResult<(Complex, Option<Complex>)> {
    let mut parts = text.split(',');
    let first = parse_finite(flag, parts.next().unwrap_or(""))?;
    let second = parts.next().map(|t| parse_finite(flag, t)).transpose()?;
    if parts.next().is_some() {
        return Err(usage(anyhow!("--{flag} takes at most two values")));
    }
    Ok((first, second))
}

fn explicit_vector(flag: &str, text: &str, n: usize) -> CliResult<Option<CVector>> {
    if text == "auto" {
        return Ok(None);
    }
    let v = io::parse_vector(text).map_err(|e| usage(anyhow!("--{flag}: {e}")))?;
    if v.len() != n {
        return Err(usage(anyhow!("--{flag} has {} entries, expected {n}", v.len())));
    }
    Ok(Some(v))
}

fn value_at(p: &LaurentPoly, lambda: Complex) -> CliResult<CMatrix> {
    p.evaluate(lambda).map_err(classify)
}

/// `u` from the flag, or the smallest right singular vector of `m`.
fn right_vector(flag: &str, text: &str, m: &CMatrix) -> CliResult<CVector> {
    Ok(match explicit_vector(flag, text, m.ncols())? {
        Some(u) => u,
        None => linalg::smallest_right_singular(m).0,
    })
}

fn left_vector(flag: &str, text: &str, m: &CMatrix) -> CliResult<CVector> {
    Ok(match explicit_vector(flag, text, m.nrows())? {
        Some(v) => v,
        None => linalg::smallest_left_singular(m).0,
    })
}

fn fixture(name: &str, output: Option<&Path>) -> CliResult<()> {
    let p = fixtures::by_name(name).ok_or_else(|| {
        usage(anyhow!(
            "unknown fixture '{name}', expected one of {}",
            fixtures::NAMES.join(", ")
        ))
    })?;
    let text = io::format_laurent(&p).map_err(numeric)?;
    match output {
        Some(path) => std::fs::write(path, text).map_err(usage)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn eig(cli: &Cli, input: &str, left: bool) -> CliResult<()> {
    let p = load(input)?;
    let poly = match p.to_poly() {
        Some(poly) => poly,
        None => {
            info!("multiplying by z^{} to obtain a matrix polynomial", -p.lo());
            p.shifted_to_poly()
        }
    };
    let mut spectrum = polyeig(&poly, cli.seed).map_err(numeric)?;
    if left {
        spectrum.compute_left(&poly).map_err(numeric)?;
    }
    let mut table = String::new();
    writeln!(table, "{:>3}  {:<44} {:>12}  {:>10}", "#", "eigenvalue", "modulus", "residual").unwrap();
    let mut rows = Vec::new();
    for (k, pair) in spectrum.pairs.iter().enumerate() {
        let left_residual = pair.left.as_ref().map(|w| left_residual(&poly, pair.value, w));
        let shown = match pair.value {
            Eigenvalue::Finite(z) => format_complex(z),
            Eigenvalue::Infinite => "Inf".to_string(),
        };
        write!(
            table,
            "{:>3}  {:<44} {:>12.6e}  {:>10.3e}",
            k + 1,
            shown,
            pair.value.modulus(),
            pair.residual
        )
        .unwrap();
        if let Some(r) = left_residual {
            write!(table, "  left {r:.3e}").unwrap();
        }
        if pair.borderline {
            table.push_str("  (borderline)");
        }
        table.push('\n');
        let (re, im) = pair.value.finite().map_or((None, None), |z| (Some(z.re), Some(z.im)));
        rows.push(json!({
            "value": shown,
            "re": re,
            "im": im,
            "infinite": !pair.value.is_finite(),
            "modulus": if pair.value.is_finite() { Some(pair.value.modulus()) } else { None },
            "residual": pair.residual,
            "left_residual": left_residual,
            "borderline": pair.borderline,
        }));
    }
    emit(cli.format, &table, &json!({ "eigenvalues": rows }));
    Ok(())
}

fn left_residual(p: &MatrixPoly, value: Eigenvalue, w: &CVector) -> f64 {
    match value {
        Eigenvalue::Finite(z) => {
            let a = p.evaluate(z).expect("polynomial");
            (w.adjoint() * a).norm() / (w.norm() * p.scale_at(z)).max(f64::MIN_POSITIVE)
        }
        Eigenvalue::Infinite => {
            let a = p.leading();
            (w.adjoint() * a).norm() / (w.norm() * a.norm()).max(f64::MIN_POSITIVE)
        }
    }
}

fn oracle_config(cli: &Cli, constant: RatioConstant) -> OracleConfig {
    OracleConfig::default()
        .with_samples(ORACLE_SAMPLES)
        .with_seed(cli.seed)
        .with_constant(constant)
}

fn oracle_table(report: &OracleReport, ratio: &DetRatio) -> String {
    let list = |values: &[Eigenvalue]| values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ");
    format!(
        "oracle: {} (max error {:.3e}, tolerance {:.0e}, {} samples, removed [{}], added [{}])\n",
        report.verdict(),
        report.max_error,
        report.tolerance,
        report.samples,
        list(&ratio.removed),
        list(&ratio.added)
    )
}

fn oracle_json(report: &OracleReport, ratio: &DetRatio) -> Value {
    let list = |values: &[Eigenvalue]| values.iter().map(|v| v.to_string()).collect::<Vec<_>>();
    json!({
        "verdict": report.verdict(),
        "max_error": report.max_error,
        "tolerance": report.tolerance,
        "samples": report.samples,
        "constant": format_complex(report.constant),
        "removed": list(&ratio.removed),
        "added": list(&ratio.added),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Single,
    Double,
    Multi,
    FromInf,
    ToInf,
    Palindromic,
}

fn shift_mode(args: &ShiftArgs) -> CliResult<Mode> {
    let selected: Vec<Mode> = [
        (args.double.is_some(), Mode::Double),
        (args.multi.is_some(), Mode::Multi),
        (args.from_inf, Mode::FromInf),
        (args.to_inf, Mode::ToInf),
        (args.palindromic, Mode::Palindromic),
    ]
    .into_iter()
    .filter_map(|(on, mode)| on.then_some(mode))
    .collect();
    match selected.as_slice() {
        [] => Ok(Mode::Single),
        [mode] => Ok(*mode),
        _ => Err(usage(anyhow!(
            "--double, --multi, --from-inf, --to-inf and --palindromic are mutually exclusive"
        ))),
    }
}

fn require_poly(p: &LaurentPoly, what: &str) -> CliResult<MatrixPoly> {
    p.to_poly()
        .ok_or_else(|| usage(anyhow!("{what} needs a matrix polynomial (lo = 0)")))
}

fn shift(cli: &Cli, args: &ShiftArgs) -> CliResult<()> {
    let mode = shift_mode(args)?;
    if mode != Mode::Single && args.side == SideArg::Left {
        return Err(usage(anyhow!("--side left applies to single shifts only")));
    }
    let p = load(&args.input)?;
    let n = p.n();
    let (shifted, ratio) = match mode {
        Mode::Single => {
            let lambda = parse_value("lambda", required("lambda", &args.lambda)?)?;
            let mu = parse_value("mu", required("mu", &args.mu)?)?;
            if lambda == mu {
                warn!("lambda equals mu; the polynomial is returned unchanged");
                (p.clone(), DetRatio::simple(vec![], vec![]))
            } else {
                let at = match lambda {
                    Eigenvalue::Finite(z) => value_at(&p, z)?,
                    Eigenvalue::Infinite => p.coeffs().last().expect("non-empty").clone(),
                };
                let spec = match args.side {
                    SideArg::Right => ShiftSpec::right(lambda, mu, right_vector("u", &args.u, &at)?),
                    SideArg::Left => ShiftSpec::left(lambda, mu, left_vector("u", &args.u, &at)?),
                };
                let spec = match explicit_vector("v", &args.v, n)? {
                    Some(v) => spec.with_dual(v),
                    None => spec,
                };
                let shifted = match (p.to_poly(), args.side) {
                    (Some(poly), SideArg::Right) => shifts::right_shift_poly(&poly, &spec).map(LaurentPoly::from),
                    (Some(poly), SideArg::Left) => shifts::left_shift_poly(&poly, &spec).map(LaurentPoly::from),
                    (None, SideArg::Right) => shifts::right_shift_laurent(&p, &spec),
                    (None, SideArg::Left) => shifts::left_shift_laurent(&p, &spec),
                }
                .map_err(classify)?;
                (shifted, shifts::det_ratio_for(&spec))
            }
        }
        Mode::Double => {
            let lambda = parse_finite("lambda", required("lambda", &args.lambda)?)?;
            let mu = parse_finite("mu", required("mu", &args.mu)?)?;
            let (lambda2, mu2) = parse_pair("double", args.double.as_deref().expect("double mode"))?;
            let mu2 = mu2.ok_or_else(|| usage(anyhow!("--double expects LAMBDA2,MU2")))?;
            let u = right_vector("u", &args.u, &value_at(&p, lambda)?)?;
            let w = left_vector("w", &args.w, &value_at(&p, lambda2)?)?;
            let mut right = ShiftSpec::right(lambda, mu, u);
            if let Some(v) = explicit_vector("v", &args.v, n)? {
                right = right.with_dual(v);
            }
            let left = ShiftSpec::left(lambda2, mu2, w);
            let shifted = shifts::double_shift_laurent(&p, &right, &left).map_err(classify)?;
            let ratio = DetRatio::simple(vec![lambda.into(), lambda2.into()], vec![mu.into(), mu2.into()]);
            (shifted, ratio)
        }
        Mode::Multi => {
            let path = args.multi.as_ref().expect("multi mode");
            let ms = read_multishift(path)?;
            let shifted = match p.to_poly() {
                Some(poly) => shifts::multishift_poly(&poly, &ms).map(LaurentPoly::from),
                None => shifts::multishift_laurent(&p, &ms),
            }
            .map_err(classify)?;
            (shifted, shifts::multishift_det_ratio(&ms).map_err(numeric)?)
        }
        Mode::FromInf => {
            let poly = require_poly(&p, "--from-inf")?;
            if args.lambda.as_deref().is_some_and(|l| parse_value("lambda", l).ok() != Some(Eigenvalue::Infinite)) {
                return Err(usage(anyhow!("--from-inf moves the eigenvalue at infinity; --lambda must be omitted or inf")));
            }
            let mu = parse_finite("mu", required("mu", &args.mu)?)?;
            let u = right_vector("u", &args.u, poly.leading())?;
            let v = explicit_vector("v", &args.v, n)?;
            let shifted = shifts::shift_from_infinity(&poly, mu, &u, v.as_ref()).map_err(classify)?;
            let ratio = shifts::det_ratio_for(&ShiftSpec::right(Eigenvalue::Infinite, mu, u));
            (shifted.into(), ratio)
        }
        Mode::ToInf => {
            let poly = require_poly(&p, "--to-inf")?;
            if args.mu.as_deref().is_some_and(|m| parse_value("mu", m).ok() != Some(Eigenvalue::Infinite)) {
                return Err(usage(anyhow!("--to-inf moves --lambda to infinity; --mu must be omitted or inf")));
            }
            let lambda = parse_finite("lambda", required("lambda", &args.lambda)?)?;
            let u = right_vector("u", &args.u, &value_at(&p, lambda)?)?;
            let v = explicit_vector("v", &args.v, n)?;
            let shifted = shifts::shift_to_infinity(&poly, lambda, &u, v.as_ref()).map_err(classify)?;
            let ratio = shifts::det_ratio_for(&ShiftSpec::right(lambda, Eigenvalue::Infinite, u));
            (shifted.into(), ratio)
        }
        Mode::Palindromic => {
            let poly = require_poly(&p, "--palindromic")?;
            let lambda = parse_finite("lambda", required("lambda", &args.lambda)?)?;
            let mu = parse_finite("mu", required("mu", &args.mu)?)?;
            let u = right_vector("u", &args.u, &value_at(&p, lambda)?)?;
            let shifted = shifts::palindromic_shift(&poly, lambda, mu, &u).map_err(classify)?;
            (shifted.into(), shifts::palindromic_det_ratio(lambda, mu))
        }
    };
    let report = det_ratio_oracle(
        &p,
        &shifted,
        &ratio.removed,
        &ratio.added,
        &oracle_config(cli, ratio.constant),
    )
    .map_err(numeric)?;
    let text = io::format_laurent(&shifted).map_err(numeric)?;
    let table = oracle_table(&report, &ratio);
    let value = json!({ "oracle": oracle_json(&report, &ratio), "output": args.output });
    match &args.output {
        Some(path) => {
            if report.pass {
                std::fs::write(path, &text).map_err(usage)?;
            }
            emit(cli.format, &table, &value);
        }
        None => {
            if report.pass {
                print!("{text}");
            }
            match cli.format {
                Format::Table => eprint!("{table}"),
                Format::Json => eprintln!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
            }
        }
    }
    if !report.pass {
        return Err(numeric(anyhow!(
            "determinant-ratio oracle failed: max error {:.3e} > {:.0e}",
            report.max_error,
            report.tolerance
        )));
    }
    Ok(())
}

fn read_multishift(path: &Path) -> CliResult<MultiShiftSpec> {
    let text = std::fs::read_to_string(path).map_err(usage)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| usage(anyhow!("{}: {e}", path.display())))?;
    let field = |name: &str| -> CliResult<Option<CMatrix>> {
        value
            .get(name)
            .map(|v| io::matrix_from_json(v, name))
            .transpose()
            .map_err(classify)
    };
    let missing = |name: &str| usage(anyhow!("{}: missing '{name}'", path.display()));
    let u = field("u")?.ok_or_else(|| missing("u"))?;
    let lambda = field("lambda")?.ok_or_else(|| missing("lambda"))?;
    let s = field("s")?.ok_or_else(|| missing("s"))?;
    let v = field("v")?;
    MultiShiftSpec::new(u, lambda, s, v).map_err(usage)
}

fn quad_report(table: &mut String, f: &QuadFactorization) -> Value {
    write_matrix(table, "G+", &f.gplus);
    write_matrix(table, "R+", &f.rplus);
    write_matrix(table, "K+", &f.kplus);
    writeln!(table, "iterations: {}", f.iterations).unwrap();
    writeln!(table, "residual: {:.3e}", f.residual).unwrap();
    json!({
        "gplus": io::matrix_to_json(&f.gplus),
        "rplus": io::matrix_to_json(&f.rplus),
        "kplus": io::matrix_to_json(&f.kplus),
        "iterations": f.iterations,
        "residual": f.residual,
    })
}

fn factor(cli: &Cli, input: &str, both: bool, quad: bool, tol: f64, maxit: usize) -> CliResult<()> {
    let p = load(input)?;
    let is_quadratic = p.lo() == -1 && p.hi() == 1;
    let mut table = String::new();
    if quad || is_quadratic {
        if !is_quadratic {
            return Err(usage(anyhow!(
                "--quad needs coefficients at powers -1, 0, 1; input spans {}..{}",
                p.lo(),
                p.hi()
            )));
        }
        let (am, a0, ap) = factorizations::quadratic_parts(&p).map_err(usage)?;
        let f = factorizations::cr_quadratic(&am, &a0, &ap, tol, maxit).map_err(numeric)?;
        let mut value = quad_report(&mut table, &f);
        if both {
            let r = factorizations::reversed_factorization(&am, &a0, &ap, &f).map_err(numeric)?;
            write_matrix(&mut table, "G-", &r.gminus);
            write_matrix(&mut table, "R-", &r.rminus);
            write_matrix(&mut table, "K-", &r.kminus);
            write_matrix(&mut table, "W", &r.w);
            writeln!(table, "rcond(W): {:.3e}", r.rcond).unwrap();
            writeln!(table, "reversed residual: {:.3e}", r.residual).unwrap();
            value["gminus"] = io::matrix_to_json(&r.gminus);
            value["rminus"] = io::matrix_to_json(&r.rminus);
            value["kminus"] = io::matrix_to_json(&r.kminus);
            value["w"] = io::matrix_to_json(&r.w);
            value["w_rcond"] = json!(r.rcond);
            value["reversed_residual"] = json!(r.residual);
        }
        emit(cli.format, &table, &value);
        return Ok(());
    }
    if both {
        return Err(usage(anyhow!("--both applies to quadratic Laurent input")));
    }
    let poly = p
        .to_poly()
        .ok_or_else(|| usage(anyhow!("input must be a matrix polynomial or a quadratic Laurent polynomial")))?;
    let opts = SolveOptions {
        tol,
        maxit,
        seed: cli.seed,
        ..SolveOptions::default()
    };
    let solved = equations::solve_unilateral(&poly, &opts).map_err(numeric)?;
    let f = factorizations::poly_factorization(&poly, &solved.g).map_err(numeric)?;
    write_matrix(&mut table, "G", &f.g);
    for (i, u) in f.u.iter().enumerate() {
        write_matrix(&mut table, &format!("U{i}"), u);
    }
    writeln!(table, "iterations: {}", solved.iterations).unwrap();
    writeln!(table, "solvent residual: {:.3e}", f.residual).unwrap();
    writeln!(table, "division residual: {:.3e}", f.consistency).unwrap();
    let value = json!({
        "g": io::matrix_to_json(&f.g),
        "u": f.u.iter().map(io::matrix_to_json).collect::<Vec<_>>(),
        "iterations": solved.iterations,
        "residual": f.residual,
        "consistency": f.consistency,
    });
    emit(cli.format, &table, &value);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn solve(
    cli: &Cli,
    input: &str,
    shift: Option<&str>,
    u: &str,
    v: &str,
    method: MethodArg,
    tol: f64,
    maxit: usize,
) -> CliResult<()> {
    let p = load_poly(input)?;
    let opts = SolveOptions {
        method: match method {
            MethodArg::Cr => Method::Cr,
            MethodArg::Eigen => Method::Eigen,
        },
        tol,
        maxit,
        seed: cli.seed,
    };
    let report = match shift {
        None => equations::solve_unilateral(&p, &opts).map_err(numeric)?,
        Some(text) => {
            let (lambda, mu) = parse_pair("shift", text)?;
            let mu = mu.unwrap_or(Complex::new(0.0, 0.0));
            if lambda == mu {
                return Err(usage(anyhow!("--shift with MU equal to LAMBDA does not accelerate anything")));
            }
            let at = p.evaluate(lambda).map_err(classify)?;
            let u = right_vector("u", u, &at)?;
            let v = explicit_vector("v", v, p.n())?;
            equations::shift_accelerated_solve(&p, lambda, mu, &u, v.as_ref(), &opts).map_err(numeric)?
        }
    };
    let (table, value) = solve_report(&report);
    emit(cli.format, &table, &value);
    Ok(())
}

fn solve_report(report: &SolveReport) -> (String, Value) {
    let mut table = String::new();
    write_matrix(&mut table, "G", &report.g);
    writeln!(table, "iterations: {}", report.iterations).unwrap();
    writeln!(table, "residual: {:.3e}", report.residual).unwrap();
    match report.sigma {
        Some(s) => writeln!(table, "sigma: {s:.5}").unwrap(),
        None => writeln!(table, "sigma: n/a").unwrap(),
    }
    let mut value = json!({
        "g": io::matrix_to_json(&report.g),
        "iterations": report.iterations,
        "residual": report.residual,
        "sigma": report.sigma,
        "shifted": report.shifted,
    });
    if let Some(rec) = &report.recovery {
        writeln!(
            table,
            "shift: {} -> {}",
            format_complex(rec.lambda),
            format_complex(rec.mu)
        )
        .unwrap();
        write_matrix(&mut table, "Q", &rec.q);
        writeln!(table, "shifted residual: {:.3e}", rec.shifted_residual).unwrap();
        writeln!(table, "original residual: {:.3e}", report.residual).unwrap();
        value["recovery"] = json!({
            "lambda": format_complex(rec.lambda),
            "mu": format_complex(rec.mu),
            "q": io::matrix_to_json(&rec.q),
            "shifted_residual": rec.shifted_residual,
            "original_residual": report.residual,
        });
    }
    (table, value)
}

fn parse_values(flag: &str, text: &str) -> CliResult<Vec<Eigenvalue>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| parse_value(flag, t)).collect()
}

#[allow(clippy::too_many_arguments)]
fn check(
    cli: &Cli,
    original: &str,
    shifted: &str,
    removed: &str,
    added: &str,
    constant: &str,
    samples: usize,
    tolerance: f64,
) -> CliResult<()> {
    let a = load(original)?;
    let b = load(shifted)?;
    let removed = parse_values("removed", removed)?;
    let added = parse_values("added", added)?;
    let constant = match constant {
        "unit" => RatioConstant::Unit,
        "fitted" => RatioConstant::Fitted,
        literal => RatioConstant::Known(parse_finite("constant", literal)?),
    };
    if samples == 0 {
        return Err(usage(anyhow!("--samples must be positive")));
    }
    let mut config = oracle_config(cli, constant).with_samples(samples);
    config.tolerance = tolerance;
    let report = det_ratio_oracle(&a, &b, &removed, &added, &config).map_err(classify)?;
    let ratio = DetRatio {
        removed,
        added,
        constant,
    };
    emit(cli.format, &oracle_table(&report, &ratio), &json!({ "oracle": oracle_json(&report, &ratio) }));
    if !report.pass {
        return Err(numeric(anyhow!(
            "determinant-ratio oracle failed: max error {:.3e} > {:.0e}",
            report.max_error,
            report.tolerance
        )));
    }
    Ok(())
}
