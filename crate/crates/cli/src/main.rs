//! `jetvar`: command-line driver for the variational calculus engine.
//!
//! Reads a theory file (`.jvt`, or `-` for standard input), runs one of the
//! symbolic pipelines, and renders the result as plain text, LaTeX, or JSON.
//!
//! Exit codes: 0 on success; 1 on usage, I/O, or input errors; 2 when a
//! requested mathematical identity fails to hold (a broken symmetry, a gauge
//! obstruction, a failed `--verify` or `check`).

use std::collections::BTreeSet;
use std::fmt;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jetvar::dsl::{parse_theory_bytes, Theory};
use jetvar::jetspace::{total_derivative, EvolutionaryField};
use jetvar::symkernel::display::{bundle_names, jet_text, render_latex, render_text};
use jetvar::symkernel::json::expr_to_json;
use jetvar::symkernel::ScalarExpr;
use jetvar::variational::{
    bianchi_identities, check_symmetry, euler_lagrange, first_variation_residual,
    helmholtz_residuals, jacobi_form, kernel_residuals, momentum, noether_current,
    noether_current_evolutionary, noether_residual, reduced_current, second_variation,
    superpotential, GaugeGenerator, Limits, SymmetryCheck, MAX_SUPPORTED_ORDER,
};
use jetvar::Error;

#[derive(Parser)]
#[command(
    name = "jetvar",
    version,
    about = "Symbolic variational calculus on jet bundles",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Euler-Lagrange form of the Lagrangian, one component per field
    El(ElArgs),
    /// Momentum coefficients of the first-variation boundary current
    Momentum(MomentumArgs),
    /// Noether current of a declared vector field
    Noether(NoetherArgs),
    /// Helmholtz residuals of the field equations
    Helmholtz(PlainArgs),
    /// Linearized field equations along canonical direction fields
    Jacobi(JacobiArgs),
    /// Identities among the field equations induced by a gauge generator
    Bianchi(GaugeArgs),
    /// Antisymmetric potential of the gauge current difference
    Superpotential(GaugeArgs),
    /// Second variation of the action density
    SecondVariation(PlainArgs),
    /// Run the full identity suite and print a pass/fail table
    Check(CheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Latex,
    Json,
}

#[derive(Args)]
struct IoArgs {
    /// Theory source file; "-" reads standard input
    input: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct ElArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Print only the component for this field
    #[arg(long)]
    field: Option<String>,
    /// Re-check the result against the variationality conditions
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct MomentumArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Print only the coefficients attached to this field
    #[arg(long)]
    field: Option<String>,
    /// Cross-check the cascade against the direct Euler-Lagrange form
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct NoetherArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Vector field to use when several are declared
    #[arg(long)]
    vfield: Option<String>,
    /// Fail unless the vector field is a (divergence) symmetry
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct JacobiArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Print only the component for this field
    #[arg(long)]
    field: Option<String>,
    /// Cross-check against half the second variation
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct GaugeArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Gauge generator to use when several are declared
    #[arg(long)]
    gauge: Option<String>,
    /// Fail if the generator breaks the identities it should satisfy
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct PlainArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Fail if the computed object breaks its defining identity
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Restrict the vector-field rows to this name
    #[arg(long)]
    vfield: Option<String>,
    /// Restrict the gauge rows to this name
    #[arg(long)]
    gauge: Option<String>,
}

/// Failures split by exit code: operational problems exit 1, mathematical
/// failures exit 2.
enum CliError {
    Io(String),
    Engine(Error),
    Math(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(msg) | CliError::Math(msg) => f.write_str(msg),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Math(_) => 2,
            CliError::Engine(e) => match e {
                Error::NotASymmetry { .. }
                | Error::BianchiObstruction { .. }
                | Error::KernelPrecondition { .. }
                | Error::DegenerateDimension { .. }
                | Error::InternalInvariant(_) => 2,
                _ => 1,
            },
        }
    }
}

struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Cmd::El(a) => cmd_el(a),
        Cmd::Momentum(a) => cmd_momentum(a),
        Cmd::Noether(a) => cmd_noether(a),
        Cmd::Helmholtz(a) => cmd_helmholtz(a),
        Cmd::Jacobi(a) => cmd_jacobi(a),
        Cmd::Bianchi(a) => cmd_bianchi(a),
        Cmd::Superpotential(a) => cmd_superpotential(a),
        Cmd::SecondVariation(a) => cmd_second_variation(a),
        Cmd::Check(a) => cmd_check(a),
    }
}

fn read_input(path: &str) -> Result<Vec<u8>, CliError> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::Io(format!("reading standard input: {e}")))?;
        return Ok(buf);
    }
    std::fs::read(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

/// Default order cap, overridable through `JETVAR_MAX_ORDER` (1 through 6).
fn limits_from_env() -> Result<Limits, CliError> {
    let Some(raw) = std::env::var_os("JETVAR_MAX_ORDER") else {
        return Ok(Limits::default());
    };
    let text = raw.to_string_lossy();
    let order: u32 = text.trim().parse().map_err(|_| {
        CliError::Io(format!(
            "JETVAR_MAX_ORDER must be an integer in 1..={MAX_SUPPORTED_ORDER}, got {text:?}"
        ))
    })?;
    Ok(Limits::new(order)?)
}

/// Ceiling limits for derived objects whose order legitimately exceeds the
/// input cap (field equations, their linearizations).
fn wide() -> Limits {
    Limits::new(MAX_SUPPORTED_ORDER).expect("engine ceiling is a valid order")
}

struct Loaded {
    theory: Theory,
    limits: Limits,
}

fn load(io: &IoArgs) -> Result<Loaded, CliError> {
    let limits = limits_from_env()?;
    let bytes = read_input(&io.input)?;
    let theory = parse_theory_bytes(&bytes)?;
    Ok(Loaded { theory, limits })
}

/// Names that rendering must avoid when building subscript words: every
/// coordinate of the expression's own bundle plus the theory parameters.
fn declared_for(theory: &Theory, expr: &ScalarExpr) -> BTreeSet<String> {
    let mut names = bundle_names(expr.bundle());
    names.extend(theory.params().iter().cloned());
    names
}

fn render_one(theory: &Theory, expr: &ScalarExpr, format: OutputFormat) -> String {
    let declared = declared_for(theory, expr);
    match format {
        OutputFormat::Text => render_text(expr, &declared),
        OutputFormat::Latex => render_latex(expr, &declared),
        OutputFormat::Json => unreachable!("JSON goes through the envelope"),
    }
}

/// Render a labeled component list. A single component prints bare; several
/// print one `label: value` line each. JSON always uses the full envelope.
fn emit(
    theory: &Theory,
    command: &str,
    components: &[(String, ScalarExpr)],
    format: OutputFormat,
) -> Outcome {
    let stdout = match format {
        OutputFormat::Text | OutputFormat::Latex => {
            if let [(_, expr)] = components {
                format!("{}\n", render_one(theory, expr, format))
            } else {
                components
                    .iter()
                    .map(|(label, expr)| format!("{label}: {}\n", render_one(theory, expr, format)))
                    .collect()
            }
        }
        OutputFormat::Json => {
            let list: Vec<Value> = components
                .iter()
                .map(|(label, expr)| json!({"name": label, "value": expr_to_json(expr)}))
                .collect();
            let envelope = json!({"schema": 1, "command": command, "components": list});
            format!("{envelope}\n")
        }
    };
    Outcome::ok(stdout)
}

fn field_index(theory: &Theory, name: &str) -> Result<usize, CliError> {
    theory.bundle().field_index(name).ok_or_else(|| {
        CliError::Engine(Error::UnknownName(format!("no field named `{name}` in the bundle")))
    })
}

fn cmd_el(args: &ElArgs) -> Result<Outcome, CliError> {
    let loaded = load(&args.io)?;
    let theory = &loaded.theory;
    let lam = theory.lagrangian(None)?;
    let el = euler_lagrange(lam, &loaded.limits)?;
    if args.verify {
        let entries = helmholtz_residuals(&el, &wide())?;
        if !entries.is_empty() {
            return Err(CliError::Math(
                "euler-lagrange components failed the variationality self-check".into(),
            ));
        }
    }
    let names = theory.bundle().field_names();
    let mut components: Vec<(String, ScalarExpr)> = names.iter().cloned().zip(el).collect();
    if let Some(name) = &args.field {
        let idx = field_index(theory, name)?;
        components = vec![components.swap_remove(idx)];
    }
    Ok(emit(theory, "el", &components, args.io.format))
}

fn cmd_momentum(args: &MomentumArgs) -> Result<Outcome, CliError> {
    let loaded = load(&args.io)?;
    let theory = &loaded.theory;
    let lam = theory.lagrangian(None)?;
    let p = momentum(lam, &loaded.limits)?;
    if args.verify && p.euler_lagrange() != euler_lagrange(lam, &loaded.limits)? {
        return Err(CliError::Math(
            "momentum cascade disagrees with the direct Euler-Lagrange form".into(),
        ));
    }
    let keep = match &args.field {
        Some(name) => Some(field_index(theory, name)?),
        None => None,
    };
    let bundle = theory.bundle();
    let declared = theory.declared_names();
    let mut components = Vec::new();
    for c in p.components() {
        if keep.is_some_and(|idx| idx != c.field) {
            continue;
        }
        let jet = jet_text(bundle, c.field, &c.alpha, &declared);
        let label = format!("p^{}[{}]", bundle.base_name(c.sigma), jet);
        components.push((label, c.value));
    }
    if components.is_empty() {
        components.push(("p".into(), ScalarExpr::zero(bundle)));
    }
    Ok(emit(theory, "momentum", &components, args.io.format))
}

fn cmd_noether(args: &NoetherArgs) -> Result<Outcome, CliError> {
    let loaded = load(&args.io)?;
    let theory = &loaded.theory;
    let lam = theory.lagrangian(None)?;
    let x = theory.vfield(args.vfield.as_deref())?;
    if args.verify {
        if let SymmetryCheck::Broken { residual } = check_symmetry(lam, x, &loaded.limits)? {
            let declared = theory.declared_names();
            return Err(CliError::Engine(Error::NotASymmetry {
                residual: render_text(&residual, &declared),
            }));
        }
    }
    let eps = noether_current(lam, x, &loaded.limits)?;
    let components: Vec<(String, ScalarExpr)> =
        theory.bundle().base_names().iter().map(|b| format!("eps^{b}")).zip(eps).collect();
    Ok(emit(theory, "noether", &components, args.io.format))
}

fn cmd_helmholtz(args: &PlainArgs) -> Result<Outcome, CliError> {
    let loaded = load(&args.io)?;
    let theory = &loaded.theory;
    let lam = theory.lagrangian(None)?;
    let el = euler_lagrange(lam, &loaded.limits)?;
    let entries = helmholtz_residuals(&el, &wide())?;
    if args.verify && !entries.is_empty() {
        return Err(CliError::Math(format!(
            "field equations are not locally variational: {} nonzero residual(s)",
            entries.len()
        )));
    }
    let bundle = theory.bundle();
    let mut components: Vec<(String, ScalarExpr)> = entries
        .into_iter()
        .map(|e| {
            let alpha: Vec<String> = e.alpha.entries().iter().map(u32::to_string).collect();
            let label = format!(
                "A({},{})[{}]",
                bundle.field_name(e.i),
                bundle.field_name(e.j),
                alpha.join(",")
            );
            (label, e.residual)
        })
        .collect();
    if components.is_empty() {
        components.push(("A".into(), ScalarExpr::zero(bundle)));
    }
    Ok(emit(theory, "helmholtz", &components, args.io.format))
}

/// Exactness check shared by `jacobi --verify` and `second-variation
/// --verify`: twice the linearized equations must equal the Euler-Lagrange
/// form of the second variation taken over the direction fields.
fn second_variation_matches_jacobi(lam: &ScalarExpr, limits: &Limits) -> Result<bool, CliError> {
    let sv = second_variation(lam, limits)?;
    let j = jacobi_form(lam, limits)?;
    let el_aux = euler_lagrange(&sv.density, &wide())?;
    for (i, comp) in j.components.iter().enumerate() {
        let twice = comp.checked_add(comp)?;
        if el_aux[sv.direction_of[i]] != twice {
            return Ok(false);
        }
    }
    Ok(true)
}

fn cmd_jacobi(args: &JacobiArgs) -> Result<Outcome, CliError> {
    let loaded = load(&args.io)?;
    let theory = &loaded.theory;
    let lam = theory.lagrangian(None)?;
    let j = jacobi_form(lam, &loaded.limits)?;
    if args.verify && !second_variation_matches_jacobi(lam, &loaded.limits)? {
        return Err(CliError::Math(
            "linearized equations disagree with the second variation".into(),
        ));
    }
    let names = theory.bundle().field_names();
    let mut components: Vec<(String, ScalarExpr)> =
        names.iter().map(|f| format!("J[{f}]")).zip(j.components).collect();
    if let Some(name) = &args.field {
        let idx = field_index(theory, name)?;
        components = vec![components.swap_remove(idx)];
    }
    Ok(emit(theory, "jacobi", &components, args.io.format))
}

fn cmd_second_variation(args: &PlainArgs) -> Result<Outcome, CliError> {
    let loaded = load(&args.io)?;
    let theory = &loaded.theory;
    let lam = theory.lagrangian(None)?;
    let sv = second_variation(lam, &loaded.limits)?;
    if args.verify && !second_variation_matches_jacobi(lam, &loaded.limits)? {
        return Err(CliError::Math(
            "second variation disagrees with the linearized equations".into(),
        ));
    }
    let components = vec![("delta2".into(), sv.density)];
    Ok(emit(theory, "second-variation", &components, args.io.format))
}

fn cmd_bianchi(args: &GaugeArgs) -> Result<Outcome, CliError> {
    let loaded = load(&args.io)?;
    let theory = &loaded.theory;
    let lam = theory.lagrangian(None)?;
    let block = theory.gauge(args.gauge.as_deref())?;
    let beta = bianchi_identities(lam, &block.generator, &loaded.limits)?;
    if args.verify {
        for (name, b) in block.generator.parameter_names().iter().zip(&beta) {
            if !b.is_zero() {
                let declared = declared_for(theory, b);
                return Err(CliError::Math(format!(
                    "gauge generator `{}` breaks the identity for parameter {name}: {}",
                    block.name,
                    render_text(b, &declared)
                )));
            }
        }
    }
    let components: Vec<(String, ScalarExpr)> =
        block.generator.parameter_names().iter().map(|p| format!("I[{p}]")).zip(beta).collect();
    Ok(emit(theory, "bianchi", &components, args.io.format))
}

fn cmd_superpotential(args: &GaugeArgs) -> Result<Outcome, CliError> {
    let loaded = load(&args.io)?;
    let theory = &loaded.theory;
    let lam = theory.lagrangian(None)?;
    let block = theory.gauge(args.gauge.as_deref())?;
    let sp = superpotential(lam, &block.generator, &loaded.limits)?;
    let base = theory.bundle().base_names();
    let n = base.len();
    let mut components = Vec::new();
    for s in 0..n {
        for m in (s + 1)..n {
            let label = format!("nu[{},{}]", base[s], base[m]);
            components.push((label, sp.matrix[s][m].clone()));
        }
    }
    Ok(emit(theory, "superpotential", &components, args.io.format))
}

/// Divergence of the difference between the gauge Noether current and the
/// reduced current; identically zero exactly when conservation is strong.
fn strong_conservation_defect(
    lam: &ScalarExpr,
    gen: &GaugeGenerator,
    limits: &Limits,
) -> Result<ScalarExpr, CliError> {
    let ext = gen.extended_bundle();
    let lam_ext = lam.cast(ext)?;
    let w = EvolutionaryField::new(ext, gen.padded_components())?;
    let eps = noether_current_evolutionary(&lam_ext, &w, &wide())?;
    let rc = reduced_current(lam, gen, limits)?;
    let mut div = ScalarExpr::zero(ext);
    for (sigma, (e, t)) in eps.iter().zip(&rc.tilde).enumerate() {
        let c = e.checked_sub(t)?;
        div = div.checked_add(&total_derivative(&c, sigma)?)?;
    }
    Ok(div)
}

fn cmd_check(args: &CheckArgs) -> Result<Outcome, CliError> {
    let loaded = load(&args.io)?;
    let theory = &loaded.theory;
    let limits = &loaded.limits;
    let lam = theory.lagrangian(None)?;
    let bundle = theory.bundle();
    let mut rows: Vec<(String, bool)> = Vec::new();

    let canonical: Vec<ScalarExpr> = (0..bundle.dim_fiber())
        .map(|i| ScalarExpr::field(bundle, i))
        .collect::<jetvar::Result<_>>()?;
    let w = EvolutionaryField::new(bundle, canonical)?;
    let split = first_variation_residual(lam, &w, limits)?;
    rows.push((
        "first variation splits into field equations and a boundary current".into(),
        split.is_zero(),
    ));

    let vfields: Vec<&(String, jetvar::jetspace::ProjectableVectorField)> = match &args.vfield {
        Some(n) => {
            let found = theory
                .vfields()
                .iter()
                .find(|(name, _)| name == n)
                .ok_or_else(|| Error::UnknownName(format!("no vector field named `{n}`")))?;
            vec![found]
        }
        None => theory.vfields().iter().collect(),
    };
    for (name, x) in vfields {
        let defect = noether_residual(lam, x, limits)?;
        rows.push((format!("noether splitting holds along vector field {name}"), defect.is_zero()));
        let symmetric = !matches!(check_symmetry(lam, x, limits)?, SymmetryCheck::Broken { .. });
        rows.push((format!("vector field {name} generates a divergence symmetry"), symmetric));
    }

    let el = euler_lagrange(lam, limits)?;
    let entries = helmholtz_residuals(&el, &wide())?;
    rows.push(("field equations pass the variationality conditions".into(), entries.is_empty()));

    rows.push((
        "second variation linearizes the field equations".into(),
        second_variation_matches_jacobi(lam, limits)?,
    ));

    let gauges: Vec<&jetvar::dsl::GaugeBlock> = match &args.gauge {
        Some(n) => {
            let found = theory
                .gauges()
                .iter()
                .find(|g| g.name == *n)
                .ok_or_else(|| Error::UnknownName(format!("no gauge generator named `{n}`")))?;
            vec![found]
        }
        None => theory.gauges().iter().collect(),
    };
    for block in gauges {
        let gen = &block.generator;
        let beta = bianchi_identities(lam, gen, limits)?;
        rows.push((
            format!("gauge generator {} satisfies the identity among field equations", block.name),
            beta.iter().all(ScalarExpr::is_zero),
        ));
        let kernel = kernel_residuals(lam, gen.components(), &wide())?;
        rows.push((
            format!(
                "gauge generator {} lies in the kernel of the linearized equations",
                block.name
            ),
            kernel.iter().all(ScalarExpr::is_zero),
        ));
        let defect = strong_conservation_defect(lam, gen, limits)?;
        rows.push((
            format!("current difference for {} is conserved off shell", block.name),
            defect.is_zero(),
        ));
    }

    let all_pass = rows.iter().all(|(_, pass)| *pass);
    let stdout = match args.io.format {
        OutputFormat::Text | OutputFormat::Latex => rows
            .iter()
            .map(|(name, pass)| format!("{}  {name}\n", if *pass { "PASS" } else { "FAIL" }))
            .collect(),
        OutputFormat::Json => {
            let list: Vec<Value> =
                rows.iter().map(|(name, pass)| json!({"name": name, "pass": pass})).collect();
            format!("{}\n", json!({"schema": 1, "command": "check", "results": list}))
        }
    };
    Ok(Outcome { stdout, code: if all_pass { 0 } else { 2 } })
}
