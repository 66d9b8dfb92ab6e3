//! Command dispatch for the `janetlike` binary.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use janetlike::{
    comp_cond, cone_decomposition, extract_reduced_gb, flip_direction, format_diffpoly, format_linear,
    format_shift_op, format_term, janet_like_basis, pol2shift, pol2shift_grouped, residue_class_basis, shift2pol,
    standard_basis, CompletionOptions, CompletionStatus, ConeDecomposition, DivisionKind, Error, ExponentVector,
    JanetBasis, LinearPoly, MonomialOrder, Priority, RelationStore, Ring, TraceEvent,
};

pub mod problem;

pub use problem::{Overrides, ProblemFile, Session};

/// Environment variable selecting trace output on stderr: `1` prints
/// completion statistics, `2` also prints every completion event.
pub const TRACE_ENV: &str = "JANETLIKE_TRACE";

pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const BUDGET: i32 = 4;
    pub const OPTIONS: i32 = 5;
    pub const ARITHMETIC: i32 = 6;
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    /// Malformed problem file.
    Problem(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Problem(m) => write!(f, "problem file: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => exit::IO,
            CliError::Problem(_) => exit::PARSE,
            CliError::Core(e) => match e {
                Error::Parse { .. } | Error::Signature(_) | Error::InvalidInput(_) => exit::PARSE,
                Error::InvalidOption(_) => exit::OPTIONS,
                Error::Arithmetic(_) => exit::ARITHMETIC,
                Error::SignatureMismatch(_) | Error::DuplicateLeadingMonomial(_) => exit::IO,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "janetlike", version, about = "Janet-like Gröbner bases for linear difference systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Division {
    Janet,
    JanetLike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Degrevlex,
    Lex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PriorityArg {
    Top,
    Pot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Problem file (TOML).
    pub problem: PathBuf,
    #[arg(long, value_enum)]
    pub division: Option<Division>,
    #[arg(long, value_enum)]
    pub order: Option<Order>,
    #[arg(long, value_enum)]
    pub priority: Option<PriorityArg>,
    /// Completion criteria.
    #[arg(long, value_enum)]
    pub criteria: Option<Switch>,
    /// Pre-shift the system so that no offset points against the shift direction.
    #[arg(long)]
    pub normalize_shifts: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Extra quotient relations, one per line.
    #[arg(long)]
    pub relations_file: Option<PathBuf>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            division: self.division.map(|d| match d {
                Division::Janet => DivisionKind::Janet,
                Division::JanetLike => DivisionKind::JanetLike,
            }),
            order: self.order.map(|o| match o {
                Order::Degrevlex => MonomialOrder::DegRevLex,
                Order::Lex => MonomialOrder::Lex,
            }),
            priority: self.priority.map(|p| match p {
                PriorityArg::Top => Priority::TermOverPosition,
                PriorityArg::Pot => Priority::PositionOverTerm,
            }),
            criteria: self.criteria.map(|c| c == Switch::On),
            normalize_shifts: self.normalize_shifts,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Complete the equations to a Janet-like (or Janet) basis.
    Basis {
        #[command(flatten)]
        common: Common,
        /// Print the reduced Gröbner basis instead.
        #[arg(long)]
        reduced: bool,
    },
    /// Reduce the targets modulo the completed basis and the quotient relations.
    Reduce {
        #[command(flatten)]
        common: Common,
    },
    /// Compatibility conditions on the right-hand sides.
    Compcond {
        #[command(flatten)]
        common: Common,
    },
    /// Hilbert series of the quotient.
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        series_order: u64,
    },
    /// Residue class basis as a cone decomposition.
    ResidueBasis {
        #[command(flatten)]
        common: Common,
        /// List the residue classes of each degree up to this bound.
        #[arg(long)]
        max_degree: Option<u64>,
    },
    /// Standard basis of a (possibly nonlinear) system.
    StandardBasis {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = janetlike::nonlinear::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// List the quotient relations in effect.
    Relations {
        #[command(flatten)]
        common: Common,
    },
    /// Print the equations in shift operator form.
    Pol2shift {
        #[command(flatten)]
        common: Common,
        /// One operator per function instead of rejecting multi-function equations.
        #[arg(long)]
        grouped: bool,
    },
    /// Apply the operators of the problem file to a function.
    Shift2pol {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        function: String,
    },
    /// Rewrite the equations in the opposite shift direction.
    Flip {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Basis { common, .. }
            | Command::Reduce { common }
            | Command::Compcond { common }
            | Command::Hilbert { common, .. }
            | Command::ResidueBasis { common, .. }
            | Command::StandardBasis { common, .. }
            | Command::Relations { common }
            | Command::Pol2shift { common, .. }
            | Command::Shift2pol { common, .. }
            | Command::Flip { common } => common,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Basis { .. } => "basis",
            Command::Reduce { .. } => "reduce",
            Command::Compcond { .. } => "compcond",
            Command::Hilbert { .. } => "hilbert",
            Command::ResidueBasis { .. } => "residue-basis",
            Command::StandardBasis { .. } => "standard-basis",
            Command::Relations { .. } => "relations",
            Command::Pol2shift { .. } => "pol2shift",
            Command::Shift2pol { .. } => "shift2pol",
            Command::Flip { .. } => "flip",
        }
    }
}

/// Output of a command: ordered key/value pairs plus a human-readable rendering.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub fields: Vec<(String, String)>,
    pub text: String,
    pub exit_code: i32,
}

impl Report {
    fn field(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.fields.push((key.into(), value.into()));
    }

    fn list<I: IntoIterator<Item = String>>(&mut self, key: &str, values: I) {
        for (i, v) in values.into_iter().enumerate() {
            self.field(format!("{key}[{i}]"), v);
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn structured(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.fields {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Structured => self.structured(),
        }
    }
}

fn trace_level() -> u8 {
    std::env::var(TRACE_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(0)
}

fn ranking_name(ring: &Ring) -> String {
    ring.ranking().to_string()
}

fn header(r: &mut Report, command: &str, s: &Session) {
    r.field("command", command);
    r.field("ranking", ranking_name(&s.ring));
    r.field("direction", s.ring.direction().name());
}

fn store(problem: &ProblemFile, common: &Common, ring: &Ring) -> Result<RelationStore, CliError> {
    let extra = match &common.relations_file {
        Some(p) => problem::read_relations_file(p)?,
        None => Vec::new(),
    };
    let mut st = RelationStore::new();
    for rel in problem.quotient_relations(&extra, ring)? {
        st.add(rel);
    }
    Ok(st)
}

fn complete(problem: &ProblemFile, s: &Session, err: &mut dyn Write) -> Result<JanetBasis, CliError> {
    let eqs = problem.linear_equations(s)?;
    let level = trace_level();
    let opts = CompletionOptions { division: s.division, criteria: s.criteria, track_cofactors: false, trace: level >= 2 };
    let basis = janet_like_basis(&eqs, &s.ring, opts)?;
    if level >= 2 {
        for ev in basis.trace() {
            let _ = writeln!(err, "trace: {}", describe_event(ev, &s.ring));
        }
    }
    if level >= 1 {
        let st = basis.stats();
        let _ = writeln!(
            err,
            "stats: selections={} reductions={} zero_reductions={} criteria_skips={} prolongations={} displacements={} certification_rounds={}",
            st.selections, st.reductions, st.zero_reductions, st.criteria_skips, st.prolongations, st.displacements, st.certification_rounds
        );
    }
    Ok(basis)
}

fn describe_event(ev: &TraceEvent, ring: &Ring) -> String {
    match ev {
        TraceEvent::Selected { lm, prolongation } => {
            format!("select {}{}", format_term(lm, ring), if *prolongation { " (prolongation)" } else { "" })
        }
        TraceEvent::CriterionSkip { lm } => format!("criterion skips {}", format_term(lm, ring)),
        TraceEvent::Reduced { from, steps, to } => format!(
            "reduce {} in {steps} steps to {}",
            format_term(from, ring),
            to.as_ref().map_or("0".to_string(), |t| format_term(t, ring))
        ),
        TraceEvent::Displaced { lm } => format!("displace {}", format_term(lm, ring)),
        TraceEvent::Inserted { lm } => format!("insert {}", format_term(lm, ring)),
        TraceEvent::Certification { violations } => format!("certification found {violations} violations"),
    }
}

fn shift_text(beta: &ExponentVector, ring: &Ring) -> String {
    let s = format_shift_op(beta, ring);
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn count(k: usize, noun: &str) -> String {
    if k == 1 {
        format!("1 {noun}")
    } else {
        format!("{k} {noun}s")
    }
}

fn numbered(r: &mut Report, items: &[String]) {
    let width = items.len().saturating_sub(1).to_string().len();
    for (i, p) in items.iter().enumerate() {
        r.line(format!("  [{i:>width$}] {p}"));
    }
}

/// Runs one command on a loaded problem. Trace output goes to `err`.
pub fn run_command(cmd: &Command, problem: &ProblemFile, err: &mut dyn Write) -> Result<Report, CliError> {
    let common = cmd.common();
    let s = problem.session(&common.overrides())?;
    let ring = &s.ring;
    let mut r = Report::default();
    header(&mut r, cmd.name(), &s);
    match cmd {
        Command::Basis { reduced, .. } => {
            let basis = complete(problem, &s, err)?;
            r.field("division", s.division.name());
            r.field("reduced", reduced.to_string());
            let polys: Vec<LinearPoly> = if *reduced { extract_reduced_gb(&basis) } else { basis.polys().to_vec() };
            let texts: Vec<String> = polys.iter().map(|p| format_linear(p, ring)).collect();
            r.field("count", texts.len().to_string());
            r.list("poly", texts.clone());
            let what = if *reduced {
                "Reduced Gröbner basis".to_string()
            } else if s.division == DivisionKind::Janet {
                "Janet basis".to_string()
            } else {
                "Janet-like basis".to_string()
            };
            r.line(format!("{what}: {} ({})", count(texts.len(), "element"), ranking_name(ring)));
            numbered(&mut r, &texts);
            if !*reduced {
                let powers: Vec<String> = (0..basis.len())
                    .map(|i| {
                        let dps = basis.difference_powers(i);
                        if dps.is_empty() {
                            "-".to_string()
                        } else {
                            dps.iter().map(|d| shift_text(&d.exponent(ring.n()), ring)).collect::<Vec<_>>().join(",")
                        }
                    })
                    .collect();
                r.list("powers", powers.clone());
                let label = if s.division == DivisionKind::Janet { "nonmultiplicative" } else { "difference powers" };
                r.line(format!("{label}:"));
                numbered(&mut r, &powers);
            }
        }
        Command::Reduce { common } => {
            let basis = complete(problem, &s, err)?;
            let st = store(problem, common, ring)?;
            let targets = problem.targets(&s)?;
            if targets.is_empty() {
                return Err(Error::InvalidInput("no targets to reduce".into()).into());
            }
            r.field("division", s.division.name());
            r.field("relations", st.relations().len().to_string());
            r.field("count", targets.len().to_string());
            r.line(format!("Normal forms modulo {}:", count(basis.len(), "basis element")));
            for (i, t) in targets.iter().enumerate() {
                let nf = st.reduce(t, &basis);
                let (a, b) = (format_linear(t, ring), format_linear(&nf, ring));
                r.field(format!("target[{i}]"), a.clone());
                r.field(format!("nf[{i}]"), b.clone());
                r.line(format!("  {a}  ->  {b}"));
            }
        }
        Command::Compcond { .. } => {
            let eqs = problem.linear_equations(&s)?;
            if problem.rhs.len() != eqs.len() {
                return Err(Error::InvalidInput(format!(
                    "compcond needs one rhs tag per equation ({} equations, {} tags)",
                    eqs.len(),
                    problem.rhs.len()
                ))
                .into());
            }
            let system: Vec<(LinearPoly, String)> = eqs.into_iter().zip(problem.rhs.iter().cloned()).collect();
            let cc = comp_cond(&system, ring, s.division)?;
            let texts: Vec<String> = cc.conditions.iter().map(|p| format_linear(p, &cc.ring)).collect();
            r.field("count", texts.len().to_string());
            r.list("condition", texts.clone());
            if texts.is_empty() {
                r.line("No compatibility conditions.");
            } else {
                r.line(format!("Compatibility conditions ({}):", texts.len()));
                numbered(&mut r, &texts);
            }
        }
        Command::Hilbert { common, series_order } => {
            let cones = decomposition(problem, common, &s, err)?;
            let series = cones.hilbert_series();
            r.field("series", series.to_string());
            r.field("expansion", series.series_string(*series_order));
            r.field("numerator", series.numerator().iter().map(i64::to_string).collect::<Vec<_>>().join(","));
            r.field("denominator_power", series.denominator_power().to_string());
            r.line(format!("Hilbert series: {series}"));
            r.line(format!("  = {}", series.series_string(*series_order)));
        }
        Command::ResidueBasis { common, max_degree } => {
            let cones = decomposition(problem, common, &s, err)?;
            let rendered: Vec<String> = cones.cones().iter().map(|c| cone_text(c, ring)).collect();
            r.field("finite", cones.is_finite().to_string());
            r.field("count", rendered.len().to_string());
            r.list("cone", rendered.clone());
            if let Some(terms) = cones.finite_terms() {
                let texts: Vec<String> = terms.iter().map(|t| format_term(t, ring)).collect();
                r.line(format!("Residue class basis: {}", count(texts.len(), "term")));
                numbered(&mut r, &texts);
            } else {
                r.line(format!("Residue class basis: infinite, {}", count(rendered.len(), "cone")));
                numbered(&mut r, &rendered);
                r.line(format!("Hilbert series: {}", cones.hilbert_series()));
            }
            if let Some(d) = max_degree {
                for k in 0..=*d {
                    let terms: Vec<String> = cones.terms_of_degree(k).iter().map(|t| format_term(t, ring)).collect();
                    let joined = terms.join(", ");
                    r.field(format!("degree[{k}]"), joined.clone());
                    r.line(format!("  degree {k}: {}", if joined.is_empty() { "-" } else { &joined }));
                }
            }
        }
        Command::StandardBasis { budget, .. } => {
            let eqs = problem.equations(&s)?;
            let sb = standard_basis(&eqs, ring, *budget)?;
            let texts: Vec<String> = sb.basis.iter().map(|p| format_diffpoly(p, ring)).collect();
            r.field("status", sb.status.name());
            r.field("rounds", sb.rounds.to_string());
            r.field("count", texts.len().to_string());
            r.list("poly", texts.clone());
            match sb.status {
                CompletionStatus::Complete => {
                    r.line(format!("Standard basis: {} after {}", count(texts.len(), "element"), count(sb.rounds, "round")));
                }
                CompletionStatus::BudgetExhausted => {
                    r.line(format!("Budget of {} exhausted; partial set of {}", count(sb.rounds, "round"), count(texts.len(), "element")));
                    r.exit_code = exit::BUDGET;
                }
            }
            numbered(&mut r, &texts);
        }
        Command::Relations { common } => {
            let st = store(problem, common, ring)?;
            let list: Vec<String> = st.list().iter().map(|s| s.to_string()).collect();
            r.field("count", list.len().to_string());
            r.list("relation", list.clone());
            if list.is_empty() {
                r.line("No quotient relations.");
            } else {
                r.line(format!("Quotient relations ({}):", list.len()));
                numbered(&mut r, &list);
            }
        }
        Command::Pol2shift { grouped, .. } => {
            let eqs = problem.linear_equations(&s)?;
            let mut texts = Vec::with_capacity(eqs.len());
            for p in &eqs {
                texts.push(if *grouped { pol2shift_grouped(p, ring) } else { pol2shift(p, ring)? });
            }
            r.field("count", texts.len().to_string());
            r.list("op", texts.clone());
            numbered(&mut r, &texts);
        }
        Command::Shift2pol { function, .. } => {
            let mut texts = Vec::with_capacity(problem.operators.len());
            for op in &problem.operators {
                texts.push(format_linear(&shift2pol(op, function, ring)?, ring));
            }
            r.field("count", texts.len().to_string());
            r.list("poly", texts.clone());
            numbered(&mut r, &texts);
        }
        Command::Flip { .. } => {
            let eqs = problem.linear_equations(&s)?;
            let (flipped, fr) = flip_direction(&eqs, ring)?;
            let texts: Vec<String> = flipped.iter().map(|p| format_linear(p, &fr)).collect();
            r.field("flipped_direction", fr.direction().name());
            r.field("count", texts.len().to_string());
            r.list("poly", texts.clone());
            r.line(format!("Equations in {} direction:", fr.direction().name()));
            numbered(&mut r, &texts);
        }
    }
    Ok(r)
}

fn decomposition(
    problem: &ProblemFile,
    common: &Common,
    s: &Session,
    err: &mut dyn Write,
) -> Result<ConeDecomposition, CliError> {
    let st = store(problem, common, &s.ring)?;
    if problem.equations.is_empty() {
        let mut cones = cone_decomposition(&[], &s.ring);
        for rel in st.relations() {
            cones.remove(rel);
        }
        return Ok(cones);
    }
    let basis = complete(problem, s, err)?;
    Ok(residue_class_basis(&basis, &st))
}

fn cone_text(c: &janetlike::Cone, ring: &Ring) -> String {
    let names = ring.signature().index_names();
    let mult: Vec<&str> = c.multiplicative.iter().map(|&i| names[i].as_str()).collect();
    format!("{} {{{}}}", format_term(&c.root, ring), mult.join(","))
}

/// Parses arguments, runs the command and writes the report. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            if code == exit::OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let common = cli.command.common();
    let result = ProblemFile::load(&common.problem).and_then(|p| run_command(&cli.command, &p, err));
    match result {
        Ok(report) => {
            let _ = write!(out, "{}", report.render(common.format));
            report.exit_code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
