//! `clifgroups`: build representations, run the verification suites and
//! look up classical group isomorphisms from the command line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use clifford_groups::classify::{
    classification, dimension_consistency, form_spec, stated_dimension_identities,
    table_consistency, verify_classification, ClassifyError, FormKind,
};
use clifford_groups::groups::{bracket_closure_check, lie_algebra_dimension, vee_group, GroupId};
use clifford_groups::multivector::verify_dagger_identities;
use clifford_groups::report::{Report, Status};
use clifford_groups::representation::{
    build_representation, transposition_witness, verify_additional_signature_table,
    verify_conjugation_identities, verify_relat, DEFAULT_MAX_N,
};
use clifford_groups::sampling::{
    sample_exact, sample_exponential, spin_g2_comparison, DEFAULT_TOL,
};
use clifford_groups::transport::verify_transports;
use clifford_groups::{Rational, Scalar, Signature};
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "clifgroups",
    version,
    about = "Clifford algebra representations and Lie group classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed for every random choice; echoed in the output.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct SigArgs {
    /// Number of generators squaring to +1.
    #[arg(long)]
    p: usize,
    /// Number of generators squaring to -1.
    #[arg(long)]
    q: usize,
}

impl SigArgs {
    fn signature(self) -> Result<Signature, String> {
        let sig = Signature::new(self.p, self.q);
        if sig.n() > DEFAULT_MAX_N {
            return Err(format!(
                "p + q = {} exceeds the maximum of {DEFAULT_MAX_N}",
                sig.n()
            ));
        }
        Ok(sig)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the matrix representation of Cl(p,q).
    Repr {
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Run a verification suite over every signature with p + q ≤ n-max.
    Verify {
        #[arg(value_enum)]
        scope: Scope,
        /// Largest p + q; each scope has its own default.
        #[arg(long)]
        n_max: Option<usize>,
        /// Random trials or samples per signature.
        #[arg(long)]
        samples: Option<usize>,
        /// Tolerance for floating-point samples.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Name the classical group isomorphic to a group on Cl(p,q).
    Classify {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        sig: SigArgs,
        /// Also check the invariant form on sampled elements.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// The signed basis blades: group laws and membership in each group.
    Vee {
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Draw group elements, exactly or through the exponential map.
    Sample {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value_t = 4)]
        samples: usize,
        /// Use the exponential of a random Lie algebra element.
        #[arg(long)]
        exponential: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Scope {
    Relat,
    Conjugation,
    Addsig,
    Brackets,
    Dims,
    Tables,
    Spin,
    Forms,
    Transports,
    All,
}

impl Scope {
    fn default_n_max(self) -> usize {
        match self {
            Scope::Relat | Scope::Conjugation | Scope::Addsig | Scope::Tables => 8,
            Scope::Dims => 16,
            _ => 6,
        }
    }
}

/// Non-zero exits that are not verification failures.
struct UsageError(String);

impl From<ClassifyError> for UsageError {
    fn from(e: ClassifyError) -> Self {
        UsageError(e.to_string())
    }
}

impl From<String> for UsageError {
    fn from(e: String) -> Self {
        UsageError(e)
    }
}

struct Out {
    format: Format,
    sink: Box<dyn Write>,
}

impl Out {
    fn json(&mut self, v: &impl serde::Serialize) -> io::Result<()> {
        writeln!(
            self.sink,
            "{}",
            serde_json::to_string(v).expect("serializable")
        )
    }

    fn text(&mut self, s: impl AsRef<str>) -> io::Result<()> {
        writeln!(self.sink, "{}", s.as_ref())
    }

    fn report(&mut self, r: &Report) -> io::Result<()> {
        if self.format == Format::Json {
            return self.json(r);
        }
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Witness => "WITNESS",
        };
        let sig = r.signature.map(|s| format!(" {s}")).unwrap_or_default();
        let group = r
            .group
            .as_deref()
            .map(|g| format!(" [{g}]"))
            .unwrap_or_default();
        let details = if r.status == Status::Pass {
            String::new()
        } else {
            format!(" {}", r.details)
        };
        self.text(format!("{status:<7}{sig}{group} {}{details}", r.claim))
    }
}

fn signatures(n_max: usize) -> Vec<Signature> {
    Signature::all_up_to(1, n_max)
}

fn with_build<F>(sig: Signature, f: F) -> Vec<Report>
where
    F: FnOnce(&clifford_groups::representation::Representation) -> Vec<Report>,
{
    match build_representation(sig) {
        Ok(rep) => f(&rep),
        Err(e) => vec![Report::check(e.to_string(), false).with_signature(sig)],
    }
}

fn dims_reports(n_max: usize) -> Vec<Report> {
    let mut out: Vec<Report> = GroupId::ALL
        .into_iter()
        .map(|g| {
            let bad: Vec<usize> = (1..=n_max)
                .filter(|&n| {
                    let (sum, closed) = lie_algebra_dimension(g, n);
                    closed != Rational::from_i64(sum as i64)
                })
                .collect();
            Report::check("binomial sum equals the closed form", bad.is_empty())
                .with_group(g.name())
                .with_details(json!({ "n_max": n_max, "failing_n": bad }))
        })
        .collect();
    out.extend(dimension_consistency(n_max.min(DEFAULT_MAX_N)));
    out.extend(stated_dimension_identities(n_max));
    out
}

fn run_scope(
    scope: Scope,
    n_max: Option<usize>,
    samples: Option<usize>,
    seed: u64,
    tol: f64,
) -> Vec<Report> {
    let n = n_max.unwrap_or(scope.default_n_max());
    let sigs = signatures(n);
    match scope {
        Scope::Relat => sigs
            .into_par_iter()
            .flat_map_iter(|s| with_build(s, |rep| vec![verify_relat(rep)]))
            .collect(),
        Scope::Conjugation => {
            let mut out: Vec<Report> = sigs
                .into_par_iter()
                .flat_map_iter(|s| {
                    let mut v = verify_dagger_identities(s);
                    v.extend(with_build(s, |rep| {
                        verify_conjugation_identities(rep).unwrap_or_else(|e| {
                            vec![Report::check(e.to_string(), false).with_signature(s)]
                        })
                    }));
                    v
                })
                .collect();
            // the smallest quaternionic signature has two generators
            if n >= 2 {
                out.push(transposition_witness(n));
            }
            out
        }
        Scope::Addsig => verify_additional_signature_table(n),
        Scope::Brackets => {
            let trials = samples.unwrap_or(100);
            sigs.into_par_iter()
                .flat_map_iter(|s| bracket_closure_check(s, trials, seed))
                .collect()
        }
        Scope::Dims => dims_reports(n),
        Scope::Tables => table_consistency(n),
        Scope::Spin => {
            let count = samples.unwrap_or(8);
            sigs.into_par_iter()
                .map(|s| spin_g2_comparison(s, count, seed))
                .collect()
        }
        Scope::Forms => {
            let count = samples.unwrap_or(6);
            let jobs: Vec<(GroupId, Signature)> = sigs
                .into_iter()
                .flat_map(|s| GroupId::ALL.into_iter().map(move |g| (g, s)))
                .filter(|(g, s)| *g != GroupId::SpinPlus || s.n() <= 5)
                .collect();
            jobs.into_par_iter()
                .flat_map_iter(|(g, s)| verify_classification(g, s, count, seed, tol))
                .collect()
        }
        Scope::Transports => {
            let count = samples.unwrap_or(6);
            sigs.into_par_iter()
                .flat_map_iter(|s| verify_transports(s, count, seed))
                .collect()
        }
        Scope::All => [
            Scope::Relat,
            Scope::Conjugation,
            Scope::Addsig,
            Scope::Brackets,
            Scope::Dims,
            Scope::Tables,
            Scope::Spin,
            Scope::Forms,
            Scope::Transports,
        ]
        .into_iter()
        .flat_map(|s| run_scope(s, n_max, samples, seed, tol))
        .collect(),
    }
}

fn parse_group(s: &str) -> Result<GroupId, UsageError> {
    s.parse()
        .map_err(|e: clifford_groups::groups::GroupError| UsageError(e.to_string()))
}

fn cmd_repr(out: &mut Out, sig: Signature) -> io::Result<Result<bool, UsageError>> {
    let rep = match build_representation(sig) {
        Ok(r) => r,
        Err(e) => return Ok(Err(UsageError(e.to_string()))),
    };
    let dump = rep.dump();
    if out.format == Format::Json {
        out.json(&dump)?;
        return Ok(Ok(true));
    }
    out.text(format!(
        "{sig}: {} matrices of size {}",
        rep.rep_class(),
        rep.size()
    ))?;
    if let Some(add) = &dump.additional_signature {
        out.text(format!(
            "additional signature (k,l) = ({},{}); symmetric {:?}, skew {:?}",
            add.k, add.l, add.sym_indices, add.skew_indices
        ))?;
    }
    let trace: Vec<String> = dump
        .trace
        .iter()
        .map(|s| format!("{:?} -> Cl({},{})", s.kind, s.to.p, s.to.q))
        .collect();
    out.text(format!("construction: {}", trace.join(", ")))?;
    match &dump.generators {
        clifford_groups::representation::GeneratorMatrices::Real(v) => print_gens(out, v)?,
        clifford_groups::representation::GeneratorMatrices::Complex(v) => print_gens(out, v)?,
        clifford_groups::representation::GeneratorMatrices::Quaternion(v) => print_gens(out, v)?,
    }
    Ok(Ok(true))
}

fn print_gens<M: std::fmt::Display>(out: &mut Out, gens: &[M]) -> io::Result<()> {
    for (a, m) in gens.iter().enumerate() {
        out.text(format!("e{}:\n{m}", a + 1))?;
    }
    Ok(())
}

fn cmd_classify(
    out: &mut Out,
    group: &str,
    sig: Signature,
    verify: bool,
    samples: usize,
    seed: u64,
    tol: f64,
) -> io::Result<Result<bool, UsageError>> {
    let g = match parse_group(group) {
        Ok(g) => g,
        Err(e) => return Ok(Err(e)),
    };
    let c = match classification(g, sig) {
        Ok(c) => c,
        Err(e) => return Ok(Err(e.into())),
    };
    let form = form_spec(g, sig).ok();
    if out.format == Format::Json {
        out.json(&c)?;
        if let Some(f) = &form {
            out.json(&json!({ "form": f }))?;
        }
    } else {
        let alias = if g == GroupId::SpinPlus && c.name.contains("Sp(1)") {
            " (≅SU(2))"
        } else {
            ""
        };
        out.text(format!("{g} on {sig}: {}{alias}", c.name))?;
        out.text(format!("params {:?}, doubled {}", c.params, c.doubled))?;
        if let Some(f) = &form {
            let via = if f.transported {
                format!(" via {} on {}", f.target_group, f.target_signature)
            } else {
                String::new()
            };
            let kind = match f.kind {
                FormKind::Invariant => "invariant form",
                FormKind::BlockPairing => "block pairing",
            };
            out.text(format!("{kind} {}{via}: {}", f.frame_label, f.equation))?;
        }
    }
    if !verify {
        return Ok(Ok(true));
    }
    let reports = verify_classification(g, sig, samples, seed, tol);
    for r in &reports {
        out.report(r)?;
    }
    Ok(Ok(reports.iter().all(Report::passed)))
}

fn cmd_vee(out: &mut Out, sig: Signature) -> io::Result<bool> {
    let r = vee_group(sig);
    if out.format == Format::Json {
        out.json(&r)?;
        return Ok(r.passed());
    }
    out.report(&r)?;
    out.text(format!(
        "order {}, closed {}, inverses {}",
        r.details["order"], r.details["closed"], r.details["inverses"]
    ))?;
    if let Some(counts) = r.details["member_counts"].as_object() {
        for (g, c) in counts {
            out.text(format!("  {g:<9} {c} members"))?;
        }
    }
    if let Some(rows) = r.details["membership"].as_array() {
        for row in rows {
            let members: Vec<&str> = row["members"]
                .as_array()
                .into_iter()
                .flatten()
                .filter_map(|m| m.as_str())
                .collect();
            out.text(format!(
                "  {:<9} {}",
                row["group"].as_str().unwrap_or(""),
                members.join(" ")
            ))?;
        }
    }
    Ok(r.passed())
}

fn cmd_sample(
    out: &mut Out,
    group: &str,
    sig: Signature,
    count: usize,
    exponential: bool,
    seed: u64,
    tol: f64,
) -> io::Result<Result<bool, UsageError>> {
    let g = match parse_group(group) {
        Ok(g) => g,
        Err(e) => return Ok(Err(e)),
    };
    if exponential {
        match sample_exponential(g, sig, count, seed, tol) {
            Ok(v) => {
                for s in &v {
                    if out.format == Format::Json {
                        out.json(s)?;
                    } else {
                        out.text(format!("{} (seed {seed})", s.value))?;
                    }
                }
                Ok(Ok(true))
            }
            Err(e) => {
                out.report(
                    &Report::check(e.to_string(), false)
                        .with_signature(sig)
                        .with_group(g.name()),
                )?;
                Ok(Ok(false))
            }
        }
    } else {
        match sample_exact(g, sig, count, seed) {
            Ok(v) => {
                for s in &v.samples {
                    if out.format == Format::Json {
                        out.json(s)?;
                    } else {
                        out.text(format!("{} (seed {seed})", s.value))?;
                    }
                }
                Ok(Ok(true))
            }
            Err(e) => {
                out.report(
                    &Report::check(e.to_string(), false)
                        .with_signature(sig)
                        .with_group(g.name()),
                )?;
                Ok(Ok(false))
            }
        }
    }
}

fn run(cli: Cli, out: &mut Out) -> io::Result<Result<bool, UsageError>> {
    let seed = cli.seed;
    match cli.command {
        Command::Repr { sig } => match sig.signature() {
            Ok(s) => cmd_repr(out, s),
            Err(e) => Ok(Err(e.into())),
        },
        Command::Verify {
            scope,
            n_max,
            samples,
            tol,
        } => {
            if tol <= 0.0 {
                return Ok(Err(UsageError("--tol must be positive".into())));
            }
            if n_max.is_some_and(|n| n > DEFAULT_MAX_N && scope != Scope::Dims) {
                return Ok(Err(UsageError(format!("--n-max exceeds {DEFAULT_MAX_N}"))));
            }
            let reports = run_scope(scope, n_max, samples, seed, tol);
            for r in &reports {
                out.report(r)?;
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let summary = json!({ "scope": format!("{scope:?}").to_lowercase(), "seed": seed, "reports": reports.len(), "failed": failed });
            if out.format == Format::Json {
                out.json(&json!({ "summary": summary }))?;
            } else {
                out.text(format!(
                    "{} reports, {failed} failed, seed {seed}",
                    reports.len()
                ))?;
            }
            Ok(Ok(failed == 0))
        }
        Command::Classify {
            group,
            sig,
            verify,
            samples,
            tol,
        } => match sig.signature() {
            Ok(s) => cmd_classify(out, &group, s, verify, samples, seed, tol),
            Err(e) => Ok(Err(e.into())),
        },
        Command::Vee { sig } => match sig.signature() {
            Ok(s) => cmd_vee(out, s).map(Ok),
            Err(e) => Ok(Err(e.into())),
        },
        Command::Sample {
            group,
            sig,
            samples,
            exponential,
            tol,
        } => match sig.signature() {
            Ok(s) => cmd_sample(out, &group, s, samples, exponential, seed, tol),
            Err(e) => Ok(Err(e.into())),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let sink: Box<dyn Write> = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let mut out = Out {
        format: cli.format,
        sink,
    };
    let result = run(cli, &mut out);
    let flushed = out.sink.flush();
    match (result, flushed) {
        (Ok(Ok(true)), Ok(())) => ExitCode::SUCCESS,
        (Ok(Ok(false)), Ok(())) => ExitCode::from(1),
        (Ok(Err(UsageError(msg))), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
