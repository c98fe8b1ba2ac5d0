//! `eqbif` — classify planar quadratic bifurcation problems and their
//! octahedral reductions from the command line.
//!
//! Subcommands: `classify` (six explicit coefficients), `o3` (reduce the
//! degree-l spherical-harmonic equivariant to the invariant plane), `dims`
//! (fixed-subspace dimension table), `portrait` (SVG/CSV phase portrait),
//! `verify` (the library's self-check suite).
//!
//! Exit codes: 0 success, 1 verification failure, 2 degenerate input
//! (an invariant sits inside the degeneracy band or a sign could not be
//! certified), 3 invalid input (bad flags, odd degree, a fixed-point
//! subspace that is not a plane). Reports go to stdout, or to `--out`;
//! every scalar in a JSON report carries both the f64 value and a decimal
//! rendering, so downstream tools never have to re-derive precision.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use eqbif_core::exact::{rat_to_decimal, rat_to_f64, Rat, Sign};
use eqbif_core::o3::{character_dim, extract_planar, two_dim_degrees, O3Error, PointGroup};
use eqbif_core::planar::{
    Case, ClassificationReport, FixedPoint, Kind, PlanarError, PlanarQuadratic, ScalarValue,
    Tolerances, COEFF_NAMES,
};
use eqbif_core::portrait::{
    export_csv, phase_portrait_with, render_portrait, PortraitOptions, PortraitStyle,
};
use eqbif_core::verify;

const EXIT_OK: i32 = 0;
const EXIT_VERIFY: i32 = 1;
const EXIT_DEGENERATE: i32 = 2;
const EXIT_INVALID: i32 = 3;

#[derive(Parser)]
#[command(
    name = "eqbif",
    version,
    about = "Planar quadratic bifurcation problems: classification, octahedral reduction, phase portraits",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 degenerate input, 3 invalid input."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify 0 = mu x + a x^2 + b x y + c y^2, 0 = mu y + p x^2 + q x y + r y^2
    Classify {
        #[command(flatten)]
        coeffs: Coefficients,
        /// Bifurcation parameter (nonzero)
        #[arg(long, default_value = "1", allow_negative_numbers = true)]
        mu: f64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Reduce the degree-l spherical-harmonic quadratic to the octahedral plane and classify it
    O3 {
        /// Even harmonic degree; dim Fix(O + Z2c) must be 2
        #[arg(long)]
        l: u32,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Tabulate dim Fix(group + Z2c) for even degrees 0..=l-max
    Dims {
        /// Rotation group: O (octahedral) or I (icosahedral)
        #[arg(long, value_parser = parse_group, default_value = "O")]
        group: PointGroup,
        /// Largest degree to tabulate
        #[arg(long)]
        l_max: u32,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Integrate trajectories and write an SVG phase portrait (optionally CSV)
    Portrait {
        #[command(flatten)]
        coeffs: Coefficients,
        /// Bifurcation parameter (nonzero)
        #[arg(long, default_value = "1", allow_negative_numbers = true)]
        mu: f64,
        /// Portray the degree-l octahedral reduction instead of explicit coefficients
        #[arg(long, conflicts_with_all = ["a", "b", "c", "p", "q", "r"])]
        l: Option<u32>,
        /// SVG output path
        #[arg(long, value_name = "PATH", default_value = "portrait.svg")]
        svg: PathBuf,
        /// Also write every trajectory polyline and fixed point as CSV
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// Seed trajectories at the cell centres of a GRID x GRID grid
        #[arg(long, value_name = "GRID", default_value = "12")]
        grid: usize,
        /// Integration horizon per trajectory
        #[arg(long, value_name = "T", default_value = "20")]
        t_end: f64,
        /// Adaptive step tolerance for the integrator
        #[arg(long, value_name = "TOL", default_value = "1e-9")]
        ode_tol: f64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Run the self-check suite and report per-check status
    Verify {
        /// Only run checks whose name contains this substring
        #[arg(long, value_name = "SUBSTRING")]
        only: Option<String>,
        /// List the check names and exit
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        report: ReportArgs,
    },
}

/// The six quadratic coefficients. All default to zero, so a run that sets
/// none of them is rejected as non-quadratic rather than silently linear.
#[derive(Args, Clone, Copy, Debug)]
struct Coefficients {
    /// Coefficient of x^2 in the x equation
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    a: f64,
    /// Coefficient of x y in the x equation
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    b: f64,
    /// Coefficient of y^2 in the x equation
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    c: f64,
    /// Coefficient of x^2 in the y equation
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    p: f64,
    /// Coefficient of x y in the y equation
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    q: f64,
    /// Coefficient of y^2 in the y equation
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    r: f64,
}

impl Coefficients {
    fn values(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.p, self.q, self.r]
    }
}

#[derive(Args, Clone, Debug)]
struct ReportArgs {
    /// Relative width of the degeneracy band for invariant signs
    #[arg(long, value_name = "EPS", default_value = "1e-10")]
    tolerance: f64,
    /// Significant digits for decimal renderings (minimum 30)
    #[arg(long, value_name = "DIGITS", default_value = "50")]
    precision: u32,
    /// Report format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

fn parse_group(s: &str) -> Result<PointGroup, String> {
    match s {
        "O" | "o" | "octahedral" => Ok(PointGroup::O),
        "I" | "i" | "icosahedral" => Ok(PointGroup::I),
        other => Err(format!("unknown group '{other}' (expected O or I)")),
    }
}

/// Validated run settings shared by every subcommand.
struct CliConfig {
    tolerances: Tolerances,
    precision: usize,
    format: Format,
    out: Option<PathBuf>,
}

impl CliConfig {
    fn new(r: &ReportArgs) -> Result<CliConfig, Failure> {
        if !r.tolerance.is_finite() || r.tolerance <= 0.0 {
            return Err(invalid(format!(
                "--tolerance must be a positive finite number, got {}",
                r.tolerance
            )));
        }
        if r.precision < 30 {
            return Err(invalid(format!(
                "--precision must be at least 30 significant digits, got {}",
                r.precision
            )));
        }
        Ok(CliConfig {
            tolerances: Tolerances {
                degeneracy_eps: r.tolerance,
                precision_digits: r.precision,
                ..Tolerances::default()
            },
            precision: r.precision as usize,
            format: r.format,
            out: r.out.clone(),
        })
    }

    fn settings_json(&self) -> Value {
        json!({
            "tolerance": self.tolerances.degeneracy_eps,
            "precision_digits": self.precision,
        })
    }

    fn settings_text(&self) -> String {
        format!(
            "tolerance {:e}, precision {} digits",
            self.tolerances.degeneracy_eps, self.precision
        )
    }

    fn emit(&self, content: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => fs::write(path, content)
                .map_err(|e| invalid(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{content}");
                Ok(())
            }
        }
    }
}

/// Terminal outcome other than a clean report: the exit code plus a message
/// for stderr.
struct Failure {
    code: i32,
    message: String,
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

fn planar_failure(e: PlanarError) -> Failure {
    let code = match &e {
        PlanarError::NonQuadratic | PlanarError::ZeroMu => EXIT_INVALID,
        PlanarError::DegenerateP | PlanarError::DegenerateR | PlanarError::SignUncertain(_) => {
            EXIT_DEGENERATE
        }
        PlanarError::Inconsistent { .. } => EXIT_VERIFY,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn o3_failure(e: O3Error) -> Failure {
    let code = match &e {
        O3Error::SignUncertain(_) => EXIT_DEGENERATE,
        O3Error::ClosureViolation { .. } | O3Error::Internal(_) => EXIT_VERIFY,
        _ => EXIT_INVALID,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn ensure_finite(flag: &str, v: f64) -> Result<(), Failure> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{flag} must be finite, got {v}")))
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Classify { coeffs, mu, report } => {
            run_classify(&coeffs, mu, &CliConfig::new(&report)?)
        }
        Command::O3 { l, report } => run_o3(l, &CliConfig::new(&report)?),
        Command::Dims {
            group,
            l_max,
            report,
        } => run_dims(group, l_max, &CliConfig::new(&report)?),
        Command::Portrait {
            coeffs,
            mu,
            l,
            svg,
            csv,
            grid,
            t_end,
            ode_tol,
            report,
        } => run_portrait(
            &coeffs,
            mu,
            l,
            &svg,
            csv.as_deref(),
            grid,
            t_end,
            ode_tol,
            &CliConfig::new(&report)?,
        ),
        Command::Verify { only, list, report } => {
            run_verify(only.as_deref(), list, &CliConfig::new(&report)?)
        }
    }
}

// ---------------------------------------------------------------------------
// shared rendering

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Pos => "+",
        Sign::Zero => "0",
        Sign::Neg => "-",
    }
}

fn kind_str(k: Kind) -> &'static str {
    match k {
        Kind::Saddle => "saddle",
        Kind::Node => "node",
    }
}

/// f64 Display is shortest round-trip, so the decimal string preserves the
/// value exactly.
fn f64_json(v: f64) -> Value {
    json!({ "value": v, "decimal": format!("{v}") })
}

/// Decimal re-rendered from the exact backend at the requested precision,
/// so `--precision` applies uniformly whatever the library embedded.
fn scalar_json(s: &ScalarValue, digits: usize) -> Value {
    json!({
        "value": s.value,
        "decimal": s.exact.to_decimal(digits),
        "sign": sign_str(s.sign),
        "degenerate": s.degenerate,
    })
}

fn rat_json(q: &Rat, digits: usize) -> Value {
    json!({ "value": rat_to_f64(q), "decimal": rat_to_decimal(q, digits) })
}

fn fixed_point_json(p: &FixedPoint) -> Value {
    json!({
        "x": f64_json(p.x),
        "y": f64_json(p.y),
        "eigenvalues": [f64_json(p.eigenvalues.0), f64_json(p.eigenvalues.1)],
        "kind": kind_str(p.kind),
    })
}

fn coefficients_json(sys: &PlanarQuadratic) -> Value {
    let mut map = serde_json::Map::new();
    for (name, &v) in COEFF_NAMES.iter().zip(sys.coeffs().iter()) {
        map.insert((*name).to_string(), f64_json(v));
    }
    Value::Object(map)
}

fn case_blurb(case: &Case) -> String {
    match case {
        Case::A => "one fixed point, a saddle".to_string(),
        Case::B => "one fixed point, a node".to_string(),
        Case::C => "three fixed points, one node and two saddles".to_string(),
        Case::D => "three fixed points, two nodes and one saddle".to_string(),
        Case::E => "three fixed points, all saddles".to_string(),
        Case::Degenerate(f) => {
            let mut parts = Vec::new();
            if f.non_quadratic {
                parts.push("no quadratic terms");
            }
            if f.p {
                parts.push("P inside the degeneracy band");
            }
            if f.r {
                parts.push("R inside the degeneracy band");
            }
            if f.all_on_axis {
                parts.push("direction cubic vanishes identically");
            }
            format!("degenerate ({})", parts.join(", "))
        }
    }
}

fn degenerate_flags_json(case: &Case) -> Value {
    let flags = match case {
        Case::Degenerate(f) => *f,
        _ => Default::default(),
    };
    serde_json::to_value(flags).expect("flags serialize")
}

fn signs_json(rep: &ClassificationReport) -> Value {
    json!({
        "P": sign_str(rep.invariants.p.sign),
        "R": sign_str(rep.invariants.r.sign),
        "I": sign_str(rep.invariants.i.sign),
    })
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
    s.push('\n');
    s
}

fn scalar_text(out: &mut String, name: &str, s: &ScalarValue, digits: usize, certified: bool) {
    let cert = if certified { ", certified" } else { "" };
    let band = if s.degenerate {
        "  [inside degeneracy band]"
    } else {
        ""
    };
    out.push_str(&format!(
        "  {name} = {}  (sign {}{cert}){band}\n",
        s.exact.to_decimal(digits),
        sign_str(s.sign),
    ));
}

fn fixed_points_text(out: &mut String, points: &[FixedPoint]) {
    out.push_str("fixed points (radial eigenvalue first):\n");
    for p in points {
        out.push_str(&format!(
            "  ({}, {})  {}  eigenvalues ({}, {})\n",
            p.x,
            p.y,
            kind_str(p.kind),
            p.eigenvalues.0,
            p.eigenvalues.1,
        ));
    }
}

// ---------------------------------------------------------------------------
// classify

fn run_classify(coeffs: &Coefficients, mu: f64, cfg: &CliConfig) -> Result<i32, Failure> {
    let values = coeffs.values();
    for (name, &v) in COEFF_NAMES.iter().zip(values.iter()) {
        ensure_finite(&format!("--{name}"), v)?;
    }
    ensure_finite("--mu", mu)?;
    let [a, b, c, p, q, r] = values;
    let sys = PlanarQuadratic::from_f64(a, b, c, p, q, r);
    let rep = sys
        .classify_with(mu, &cfg.tolerances)
        .map_err(planar_failure)?;
    let body = match cfg.format {
        Format::Json => classify_json(&sys, &rep, cfg),
        Format::Text => classify_text(&sys, &rep, cfg),
    };
    cfg.emit(&body)?;
    Ok(if rep.case.is_degenerate() {
        EXIT_DEGENERATE
    } else {
        EXIT_OK
    })
}

fn classify_json(sys: &PlanarQuadratic, rep: &ClassificationReport, cfg: &CliConfig) -> String {
    let d = cfg.precision;
    pretty(json!({
        "command": "classify",
        "mu": f64_json(rep.mu),
        "coefficients": coefficients_json(sys),
        "P": scalar_json(&rep.invariants.p, d),
        "R": scalar_json(&rep.invariants.r, d),
        "I": scalar_json(&rep.invariants.i, d),
        "signs": signs_json(rep),
        "certified": rep.invariants.certified,
        "case": rep.case.label().to_string(),
        "case_description": case_blurb(&rep.case),
        "fixed_points": rep.fixed_points.iter().map(fixed_point_json).collect::<Vec<_>>(),
        "rejected_directions": rep.rejected.len(),
        "degenerate_flags": degenerate_flags_json(&rep.case),
        "settings": cfg.settings_json(),
    }))
}

fn classify_text(sys: &PlanarQuadratic, rep: &ClassificationReport, cfg: &CliConfig) -> String {
    let mut out = String::new();
    out.push_str(&format!("planar quadratic classification (mu = {})\n", rep.mu));
    let coeffs = sys.coeffs();
    let list: Vec<String> = COEFF_NAMES
        .iter()
        .zip(coeffs.iter())
        .map(|(n, v)| format!("{n} = {v}"))
        .collect();
    out.push_str(&format!("  coefficients: {}\n", list.join(", ")));
    out.push_str(&format!("  settings: {}\n\n", cfg.settings_text()));
    let inv = &rep.invariants;
    scalar_text(&mut out, "P", &inv.p, cfg.precision, inv.certified);
    scalar_text(&mut out, "R", &inv.r, cfg.precision, inv.certified);
    scalar_text(&mut out, "I", &inv.i, cfg.precision, inv.certified);
    out.push_str(&format!(
        "\ncase {}: {}\n\n",
        rep.case.label(),
        case_blurb(&rep.case)
    ));
    fixed_points_text(&mut out, &rep.fixed_points);
    if !rep.rejected.is_empty() {
        out.push_str(&format!(
            "rejected directions (no finite fixed point): {}\n",
            rep.rejected.len()
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// o3

fn run_o3(l: u32, cfg: &CliConfig) -> Result<i32, Failure> {
    let red = extract_planar(l).map_err(o3_failure)?;
    let body = match cfg.format {
        Format::Json => o3_json(&red, cfg),
        Format::Text => o3_text(&red, cfg),
    };
    cfg.emit(&body)?;
    Ok(if red.report.case.is_degenerate() {
        EXIT_DEGENERATE
    } else {
        EXIT_OK
    })
}

fn o3_json(red: &eqbif_core::o3::O3Reduction, cfg: &CliConfig) -> String {
    let d = cfg.precision;
    let coeffs: Vec<Value> = COEFF_NAMES
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let exact = red.planar.coeff_exact(i);
            json!({
                "name": name,
                "value": red.planar.coeffs()[i],
                "decimal": exact.to_decimal(d),
                "radical": exact.to_string(),
            })
        })
        .collect();
    let ratio = |q: &Option<Rat>| match q {
        Some(q) => rat_json(q, d),
        None => Value::Null,
    };
    pretty(json!({
        "command": "o3",
        "l": red.l,
        "group": "O",
        "dim_fix": red.fix.dim(),
        "coefficients": coeffs,
        "P": scalar_json(&red.invariants.p, d),
        "R": scalar_json(&red.invariants.r, d),
        "I": scalar_json(&red.invariants.i, d),
        "signs": signs_json(&red.report),
        "certified": red.invariants.certified,
        "case": red.report.case.label().to_string(),
        "case_description": case_blurb(&red.report.case),
        "branches": red.report.branches(),
        "fixed_points": red.report.fixed_points.iter().map(fixed_point_json).collect::<Vec<_>>(),
        "ratios": { "P_over_R": ratio(&red.p_over_r), "I2_over_R": ratio(&red.i2_over_r) },
        "degenerate_flags": degenerate_flags_json(&red.report.case),
        "settings": cfg.settings_json(),
    }))
}

fn o3_text(red: &eqbif_core::o3::O3Reduction, cfg: &CliConfig) -> String {
    let d = cfg.precision;
    let mut out = String::new();
    out.push_str(&format!("octahedral reduction at l = {}\n", red.l));
    out.push_str(&format!("  dim Fix(O + Z2c) = {}\n", red.fix.dim()));
    out.push_str(&format!("  settings: {}\n\n", cfg.settings_text()));
    out.push_str("planar coefficients (normalized invariant-plane basis):\n");
    for (i, name) in COEFF_NAMES.iter().enumerate() {
        let exact = red.planar.coeff_exact(i);
        out.push_str(&format!("  {name} = {}\n", exact.to_decimal(d)));
        out.push_str(&format!("    = {}\n", exact));
    }
    out.push('\n');
    let inv = &red.invariants;
    scalar_text(&mut out, "P", &inv.p, d, inv.certified);
    scalar_text(&mut out, "R", &inv.r, d, inv.certified);
    scalar_text(&mut out, "I", &inv.i, d, inv.certified);
    out.push_str(&format!(
        "\ncase {}: {} ({} branch{})\n",
        red.report.case.label(),
        case_blurb(&red.report.case),
        red.report.branches(),
        if red.report.branches() == 1 { "" } else { "es" },
    ));
    if let (Some(pr), Some(ir)) = (&red.p_over_r, &red.i2_over_r) {
        out.push_str(&format!(
            "scale-invariant ratios: P/R = {}, I^2/R = {}\n",
            rat_to_decimal(pr, d),
            rat_to_decimal(ir, d),
        ));
    }
    out.push('\n');
    fixed_points_text(&mut out, &red.report.fixed_points);
    out
}

// ---------------------------------------------------------------------------
// dims

fn run_dims(group: PointGroup, l_max: u32, cfg: &CliConfig) -> Result<i32, Failure> {
    let mut rows: Vec<(u32, usize)> = Vec::new();
    for l in (0..=l_max).step_by(2) {
        rows.push((l, character_dim(group, l).map_err(o3_failure)?));
    }
    let plane = two_dim_degrees(group, l_max);
    let body = match cfg.format {
        Format::Json => pretty(json!({
            "command": "dims",
            "group": group.as_str(),
            "l_max": l_max,
            "rows": rows.iter().map(|&(l, dim)| json!({"l": l, "dim": dim})).collect::<Vec<_>>(),
            "two_dimensional": plane,
            "settings": cfg.settings_json(),
        })),
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "fixed-subspace dimensions, dim Fix({} + Z2c)\n",
                group.as_str()
            ));
            out.push_str(&format!("  settings: {}\n\n", cfg.settings_text()));
            out.push_str("     l   dim\n");
            for &(l, dim) in &rows {
                out.push_str(&format!("  {l:>4}  {dim:>4}\n"));
            }
            let list: Vec<String> = plane.iter().map(|l| l.to_string()).collect();
            out.push_str(&format!(
                "\ntwo-dimensional at l = {}\n",
                if list.is_empty() {
                    "(none)".to_string()
                } else {
                    list.join(", ")
                }
            ));
            out
        }
    };
    cfg.emit(&body)?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// portrait

#[allow(clippy::too_many_arguments)]
fn run_portrait(
    coeffs: &Coefficients,
    mu: f64,
    l: Option<u32>,
    svg_path: &std::path::Path,
    csv_path: Option<&std::path::Path>,
    grid: usize,
    t_end: f64,
    ode_tol: f64,
    cfg: &CliConfig,
) -> Result<i32, Failure> {
    ensure_finite("--mu", mu)?;
    if grid == 0 {
        return Err(invalid("--grid must be at least 1"));
    }
    if !t_end.is_finite() || t_end <= 0.0 {
        return Err(invalid(format!("--t-end must be positive, got {t_end}")));
    }
    if !ode_tol.is_finite() || ode_tol <= 0.0 {
        return Err(invalid(format!("--ode-tol must be positive, got {ode_tol}")));
    }
    let sys = match l {
        Some(l) => extract_planar(l).map_err(o3_failure)?.planar,
        None => {
            let values = coeffs.values();
            for (name, &v) in COEFF_NAMES.iter().zip(values.iter()) {
                ensure_finite(&format!("--{name}"), v)?;
            }
            let [a, b, c, p, q, r] = values;
            PlanarQuadratic::from_f64(a, b, c, p, q, r)
        }
    };
    let rep = sys
        .classify_with(mu, &cfg.tolerances)
        .map_err(planar_failure)?;
    let opt = PortraitOptions {
        tol: ode_tol,
        t_end,
        grid,
        ..PortraitOptions::default()
    };
    let set = phase_portrait_with(&sys, mu, &opt).map_err(planar_failure)?;
    let svg = render_portrait(&set, &PortraitStyle::default());
    fs::write(svg_path, &svg)
        .map_err(|e| invalid(format!("cannot write {}: {e}", svg_path.display())))?;
    if let Some(path) = csv_path {
        fs::write(path, export_csv(&set))
            .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    let body = match cfg.format {
        Format::Json => pretty(json!({
            "command": "portrait",
            "mu": f64_json(mu),
            "coefficients": coefficients_json(&sys),
            "case": rep.case.label().to_string(),
            "case_description": case_blurb(&rep.case),
            "degenerate_flags": degenerate_flags_json(&rep.case),
            "fixed_points": set.fixed_points.iter().map(fixed_point_json).collect::<Vec<_>>(),
            "trajectories": set.trajectories.len(),
            "window": {
                "x_min": f64_json(set.window.x_min),
                "x_max": f64_json(set.window.x_max),
                "y_min": f64_json(set.window.y_min),
                "y_max": f64_json(set.window.y_max),
            },
            "grid": grid,
            "t_end": t_end,
            "ode_tolerance": ode_tol,
            "svg": svg_path.display().to_string(),
            "csv": csv_path.map(|p| p.display().to_string()),
            "settings": cfg.settings_json(),
        })),
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "phase portrait (mu = {mu}, case {})\n",
                rep.case.label()
            ));
            out.push_str(&format!(
                "  window [{}, {}] x [{}, {}], seed grid {grid} x {grid}, t in [0, {t_end}], ode tolerance {ode_tol:e}\n",
                set.window.x_min, set.window.x_max, set.window.y_min, set.window.y_max
            ));
            out.push_str(&format!("  settings: {}\n", cfg.settings_text()));
            out.push_str(&format!(
                "  {} fixed points, {} trajectories\n",
                set.fixed_points.len(),
                set.trajectories.len()
            ));
            out.push_str(&format!("  svg: {}\n", svg_path.display()));
            if let Some(path) = csv_path {
                out.push_str(&format!("  csv: {}\n", path.display()));
            }
            out
        }
    };
    cfg.emit(&body)?;
    Ok(if rep.case.is_degenerate() {
        EXIT_DEGENERATE
    } else {
        EXIT_OK
    })
}

// ---------------------------------------------------------------------------
// verify

fn run_verify(only: Option<&str>, list: bool, cfg: &CliConfig) -> Result<i32, Failure> {
    if list {
        let mut out = String::new();
        for name in verify::CHECK_NAMES {
            out.push_str(name);
            out.push('\n');
        }
        cfg.emit(&out)?;
        return Ok(EXIT_OK);
    }
    if let Some(filter) = only {
        if !verify::CHECK_NAMES.iter().any(|n| n.contains(filter)) {
            return Err(invalid(format!(
                "no check matches --only '{filter}'; available: {}",
                verify::CHECK_NAMES.join(", ")
            )));
        }
    }
    let summary = verify::run(only);
    let passed = summary.checks.iter().filter(|c| c.passed).count();
    let failed = summary.checks.len() - passed;
    let body = match cfg.format {
        Format::Json => pretty(json!({
            "command": "verify",
            "checks": serde_json::to_value(&summary.checks).expect("checks serialize"),
            "passed": passed,
            "failed": failed,
            "all_passed": summary.all_passed(),
            "settings": cfg.settings_json(),
        })),
        Format::Text => {
            let mut out = String::new();
            for c in &summary.checks {
                out.push_str(&format!(
                    "{}  {:<24} {:>8.2} s  {}\n",
                    if c.passed { "ok  " } else { "FAIL" },
                    c.name,
                    c.seconds,
                    c.detail,
                ));
            }
            out.push_str(&format!(
                "{passed}/{} checks passed\n",
                summary.checks.len()
            ));
            out
        }
    };
    cfg.emit(&body)?;
    Ok(if summary.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}
