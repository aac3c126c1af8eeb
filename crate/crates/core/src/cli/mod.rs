//! Command-line surface.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or spec error,
//! 3 file I/O error, 4 any other domain error (budget, no solution, ...).

mod matrix_file;
mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

pub use matrix_file::{Format, MatrixFile};
pub use spec::{parse_spec, parse_spec_terms};

use crate::error::{Error, Result};
use crate::exact_linalg::IntegerMatrix;
use crate::lattice_realization::{
    coset_minima, discriminant_form, extremality_score, glue_selfdual_8, orthogonal_complement,
    positive_definite_realization, verify_realization, Check, Lattice,
};
use crate::metric_groups::{central_charge_closed, central_charge_gauss, gauged_center_fpdim, Family, PrimeFamilySpec};
use crate::symmetry::{aut_bruteforce, aut_order_closed};
use crate::wall_synthesis::{direct_ef_k, k_for_family};
use crate::Budget;

/// Largest group whose full q-table is printed by `model`.
const Q_TABLE_LIMIT: u64 = 64;

#[derive(Debug, Parser)]
#[command(name = "anyon-kit", version, about = "Abelian anyon models, K-matrices and lattice realizations")]
pub struct Cli {
    /// Report and matrix layout.
    #[arg(long, global = true, value_enum, default_value = "structured")]
    pub format: Format,
    /// Largest group order enumerated by isometry and automorphism searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Write the produced matrix here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group, q-values, central charge (both methods) and |Aut| of a model.
    Model { spec: String },
    /// A K-matrix for a model: Wall's algorithm, or a positive-definite lattice.
    Kmatrix {
        spec: String,
        #[arg(long)]
        positive_definite: bool,
    },
    /// Check that a Gram matrix realizes a model.
    Verify {
        file: PathBuf,
        /// Overrides the target stored in the file.
        #[arg(long)]
        target: Option<String>,
    },
    /// Glue eight copies to an even unimodular lattice and output the complement of one copy.
    Complement { file: PathBuf },
    /// Minimal conformal weights of every coset and the extremality score.
    Weights { file: PathBuf },
}

/// Outcome of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
    pub elapsed_ms: u128,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report { command, checks: Vec::new(), data: Map::new(), elapsed_ms: 0 }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name, passed, detail: detail.into() });
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.data.insert(key.to_string(), v.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let checks: Vec<Value> = self
                    .checks
                    .iter()
                    .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                    .collect();
                let v = json!({
                    "command": self.command,
                    "verdict": if self.passed() { "pass" } else { "fail" },
                    "checks": checks,
                    "data": Value::Object(self.data.clone()),
                    "elapsed_ms": self.elapsed_ms as u64,
                });
                serde_json::to_string_pretty(&v).expect("serializable") + "\n"
            }
            Format::Plain => {
                let mut out = String::new();
                for (k, v) in &self.data {
                    match v {
                        Value::String(s) => out += &format!("{k}: {s}\n"),
                        other => out += &format!("{k}: {other}\n"),
                    }
                }
                for c in &self.checks {
                    out += &format!("[{}] {}: {}\n", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
                }
                out += &format!("verdict: {}\n", if self.passed() { "pass" } else { "fail" });
                out
            }
        }
    }
}

/// `p/q` in lowest terms, reduced into `[0, 1)`.
pub fn render_mod1(x: &BigRational) -> String {
    let f = x - x.floor();
    if f.is_zero() {
        "0".into()
    } else {
        f.to_string()
    }
}

fn budget_of(cli: &Cli) -> Budget {
    let b = Budget::default();
    match cli.budget {
        Some(n) => b.with_group(n),
        None => b,
    }
}

fn read_matrix(path: &PathBuf) -> Result<MatrixFile> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    MatrixFile::parse(&text)
}

/// I/O failures are carried as [`Error::InvalidArgument`] with this prefix
/// so that [`exit_code`] can single them out.
const IO_PREFIX: &str = "I/O: ";

fn io_error(path: &std::path::Path, e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("{IO_PREFIX}{}: {e}", path.display()))
}

/// Exit code for a domain error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(m) if m.starts_with(IO_PREFIX) => 3,
        Error::Parse { .. } | Error::InvalidFamily(_) | Error::InvalidArgument(_) => 2,
        Error::NotSquare { .. } | Error::NotSymmetric | Error::Dimension(_) => 2,
        _ => 4,
    }
}

fn central_charges(terms: &[PrimeFamilySpec], budget: &Budget, report: &mut Report) -> Result<u8> {
    let mut closed = 0u8;
    for t in terms {
        closed = (closed + central_charge_closed(t)?) % 8;
    }
    let group = spec::group_of(terms)?;
    report.set("central_charge_closed", closed);
    if group.order() <= budget.gauss {
        let gauss = central_charge_gauss(&group, budget.gauss)?;
        report.set("central_charge_gauss", gauss);
        report.check("central charge", gauss == closed, format!("closed form {closed}, Gauss sum {gauss}"));
    }
    Ok(closed)
}

fn cmd_model(text: &str, budget: &Budget) -> Result<Report> {
    let mut report = Report::new("model");
    let terms = parse_spec_terms(text)?;
    let group = spec::group_of(&terms)?;
    report.set("spec", spec::render_terms(&terms));
    report.set("group", group.to_string());
    report.set("order", group.order());
    if group.order() <= Q_TABLE_LIMIT {
        let table: Vec<Value> = group
            .elements()
            .map(|x| json!({"element": x, "q": render_mod1(&group.q(&x))}))
            .collect();
        report.set("q_table", table);
    }
    central_charges(&terms, budget, &mut report)?;
    let closed = if let [single] = terms.as_slice() {
        let (order, name) = aut_order_closed(single)?;
        report.set("aut_order_closed", order);
        if let Some(n) = name {
            report.set("aut_structure", n);
        }
        report.set("fpdim_gauged_center", gauged_center_fpdim(single)?.to_string());
        Some(order)
    } else {
        None
    };
    if group.order() <= budget.group {
        let aut = aut_bruteforce(&group, budget.group)?;
        report.set("aut_order", aut.order());
        if let Some(c) = closed {
            report.check("aut order", c == aut.order(), format!("closed form {c}, enumeration {}", aut.order()));
        }
    }
    Ok(report)
}

/// K-matrix for one prime family.
pub fn kmatrix_for(spec: &PrimeFamilySpec, positive_definite: bool, budget: &Budget) -> Result<IntegerMatrix> {
    if positive_definite {
        return Ok(positive_definite_realization(spec, budget)?.into_gram());
    }
    match spec.family {
        Family::E | Family::F => direct_ef_k(spec.family, spec.r),
        _ => match k_for_family(spec) {
            Err(Error::Routed(_)) => Ok(positive_definite_realization(spec, budget)?.into_gram()),
            other => other,
        },
    }
}

fn verify_into(report: &mut Report, gram: &IntegerMatrix, target: &str, budget: &Budget) -> Result<()> {
    let group = parse_spec(target)?;
    let rep = verify_realization(gram, &group, budget)?;
    report.set("target", target);
    report.set("rank", gram.rows() as u64);
    report.set("signature", rep.signature);
    report.set("central_charge", rep.central_charge);
    report.checks.extend(rep.checks);
    Ok(())
}

fn cmd_kmatrix(text: &str, pd: bool, budget: &Budget) -> Result<(Report, MatrixFile)> {
    let mut report = Report::new("kmatrix");
    let terms = parse_spec_terms(text)?;
    let mut gram = IntegerMatrix::zeros(0, 0);
    for t in &terms {
        gram = gram.direct_sum(&kmatrix_for(t, pd, budget)?);
    }
    let target = spec::render_terms(&terms);
    verify_into(&mut report, &gram, &target, budget)?;
    report.set("route", if pd { "positive-definite" } else { "wall" });
    let mut file = MatrixFile::new(gram);
    file.target = Some(target);
    Ok((report, file))
}

fn cmd_verify(file: &MatrixFile, target: Option<&str>, budget: &Budget) -> Result<Report> {
    let mut report = Report::new("verify");
    let target = target
        .or(file.target.as_deref())
        .ok_or_else(|| Error::InvalidArgument("no target: pass --target or store one in the file".into()))?;
    verify_into(&mut report, &file.gram, target, budget)?;
    Ok(report)
}

fn cmd_complement(file: &MatrixFile, budget: &Budget) -> Result<(Report, MatrixFile)> {
    let mut report = Report::new("complement");
    let base = Lattice::new(file.gram.clone())?;
    let glued = glue_selfdual_8(&base, budget)?;
    let lam = &glued.lattice;
    report.check(
        "glued lattice",
        lam.is_even() && lam.is_unimodular(),
        format!("rank {}, det {}, even {}", lam.rank(), lam.determinant(), lam.is_even()),
    );
    report.check("primitive copy", glued.copy.is_primitive(), "quotient by the embedded copy is torsion-free");
    let comp = orthogonal_complement(lam, &glued.copy)?;
    report.check(
        "complement",
        comp.rank() == 7 * base.rank() && comp.is_even() && comp.determinant().magnitude() == base.determinant().magnitude(),
        format!("rank {}, det {}", comp.rank(), comp.determinant()),
    );
    let mut out = MatrixFile::new(comp.into_gram());
    if let Some(t) = &file.target {
        let terms = parse_spec_terms(t)?;
        let conj: Vec<PrimeFamilySpec> = terms.iter().map(|s| s.conjugate()).collect();
        let target = spec::render_terms(&conj);
        verify_into(&mut report, &out.gram, &target, budget)?;
        out.target = Some(target);
    } else {
        let d = discriminant_form(&out.gram)?;
        let want = discriminant_form(&file.gram)?.metric_group().conjugate();
        let ok = crate::metric_groups::is_isomorphic(d.metric_group(), &want, budget.group)?.is_some();
        report.check("conjugate form", ok, format!("{}", d.metric_group()));
    }
    Ok((report, out))
}

fn cmd_weights(file: &MatrixFile, budget: &Budget) -> Result<Report> {
    let mut report = Report::new("weights");
    let weights = coset_minima(&file.gram, budget)?;
    let table: Vec<Value> = weights.iter().map(|w| json!({"coset": w.coset, "h": w.h.to_string()})).collect();
    let min_nonzero = weights.iter().map(|w| &w.h).filter(|h| !h.is_zero()).min();
    report.set("order", weights.len() as u64);
    report.set("weights", table);
    if let Some(h) = min_nonzero {
        report.set("min_nonzero_h", h.to_string());
    }
    report.set("extremality_score", extremality_score(&file.gram, budget)?.to_string());
    report.check("h = q2/2 mod 1", true, "checked for every coset");
    Ok(report)
}

fn write_out(path: &Option<PathBuf>, file: &MatrixFile, format: Format, stdout: &mut dyn Write) -> Result<bool> {
    let text = file.render(format);
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| io_error(p, e))?;
            Ok(false)
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
            Ok(true)
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Report> {
    let budget = budget_of(cli);
    let start = Instant::now();
    let (mut report, matrix) = match &cli.command {
        Command::Model { spec } => (cmd_model(spec, &budget)?, None),
        Command::Kmatrix { spec, positive_definite } => {
            let (r, f) = cmd_kmatrix(spec, *positive_definite, &budget)?;
            (r, Some(f))
        }
        Command::Verify { file, target } => (cmd_verify(&read_matrix(file)?, target.as_deref(), &budget)?, None),
        Command::Complement { file } => {
            let (r, f) = cmd_complement(&read_matrix(file)?, &budget)?;
            (r, Some(f))
        }
        Command::Weights { file } => (cmd_weights(&read_matrix(file)?, &budget)?, None),
    };
    report.elapsed_ms = start.elapsed().as_millis();
    let matrix_on_stdout = match &matrix {
        Some(f) => write_out(&cli.out, f, cli.format, stdout)?,
        None => false,
    };
    // The matrix owns stdout when no --out is given; the report then goes to stderr.
    let text = report.render(cli.format);
    if matrix_on_stdout {
        let _ = stderr.write_all(text.as_bytes());
    } else {
        let _ = stdout.write_all(text.as_bytes());
    }
    Ok(report)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, stdout, stderr) {
        Ok(r) if r.passed() => 0,
        Ok(_) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
