//! Command-line front end. [`run`] parses arguments and returns the report
//! and exit code instead of printing, so the binary stays a thin wrapper.
//!
//! Exit codes: 0 success, 1 a witness detected the evaluated state,
//! 2 usage or input error, 3 numerical failure.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::families::{hasse_graph, DegeneracyConfiguration};
use crate::io;
use crate::majorana::{to_constellation, BlochPoint, Constellation};
use crate::sampler::{
    polarizer_mixture, sample_mixed_in_family, OrientationDistribution, SamplingSpec,
};
use crate::sepbasis::{build_basis, choose_points, decompose, DEFAULT_CONDITION_THRESHOLD};
use crate::state::DensityMatrix;
use crate::witness::{build_witness, OptimizerConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DETECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Largest N accepted by `families`.
pub const MAX_FAMILY_QUBITS: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "symfam",
    version,
    about = "Entanglement families of symmetric multiqubit states"
)]
struct Cli {
    /// Emit the report as a JSON document instead of key: value lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the entanglement families of N qubits and their descendant edges.
    Families {
        n: i64,
        /// Emit the family graph in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// Majorana constellation and family of a pure state file.
    Classify {
        state_file: PathBuf,
        /// Chordal distance below which Majorana points coincide.
        #[arg(long, default_value_t = crate::DEFAULT_COINCIDENCE_TOL)]
        tol: f64,
    },
    /// Build a family witness from a reference state, optionally evaluating it.
    Witness {
        ref_state_file: PathBuf,
        /// Family as a comma-separated partition, e.g. "2,1,1".
        #[arg(long)]
        family: String,
        /// Density matrix file to evaluate the witness on.
        #[arg(long)]
        eval: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Initial number of optimization starts.
        #[arg(long, default_value_t = 64)]
        starts: usize,
    },
    /// Sample a mixed state inside a family and write it to a file.
    Sample {
        /// Family as a comma-separated partition, e.g. "3,1".
        #[arg(long)]
        family: String,
        #[arg(long = "n-qubits")]
        n_qubits: usize,
        /// Number of pure projectors in the convex sum.
        #[arg(long, default_value_t = 1)]
        terms: usize,
        /// Also draw terms from descendant families.
        #[arg(long)]
        descendants: bool,
        /// Monte Carlo mode: average this many random orientation sets.
        #[arg(long)]
        samples: Option<usize>,
        /// Restrict orientations to a cap "theta,phi,radius" (radians).
        #[arg(long)]
        cap: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Density matrix file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a separable operator basis, optionally decomposing a state over it.
    Basis {
        #[arg(long = "n-qubits")]
        n_qubits: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Density matrix file to decompose.
        #[arg(long)]
        decompose: Option<PathBuf>,
        /// Basis file to write.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest accepted condition number of the basis matrix.
        #[arg(long = "cond-threshold", default_value_t = DEFAULT_CONDITION_THRESHOLD)]
        cond_threshold: f64,
        #[arg(long = "max-attempts", default_value_t = 50)]
        max_attempts: usize,
    },
}

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// Standard output.
    pub report: String,
    /// Diagnostic for standard error, if any.
    pub error: Option<String>,
}

impl CommandResult {
    fn failure(exit_code: i32, msg: String) -> Self {
        CommandResult {
            exit_code,
            report: String::new(),
            error: Some(msg),
        }
    }
}

struct Entry {
    key: &'static str,
    value: Value,
    text: Option<String>,
    list: bool,
}

/// Line-oriented `key: value` report that can also render as JSON.
struct Report {
    entries: Vec<Entry>,
    /// Verbatim text output replacing the key: value lines.
    raw: Option<String>,
}

impl Report {
    fn new() -> Self {
        Report {
            entries: Vec::new(),
            raw: None,
        }
    }

    fn field(&mut self, key: &'static str, value: impl Into<Value>) {
        self.entries.push(Entry {
            key,
            value: value.into(),
            text: None,
            list: false,
        });
    }

    /// Repeated key; collected into an array in JSON output.
    fn item(&mut self, key: &'static str, value: impl Into<Value>, text: Option<String>) {
        self.entries.push(Entry {
            key,
            value: value.into(),
            text,
            list: true,
        });
    }

    fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut map = Map::new();
            for e in &self.entries {
                if e.list {
                    let slot = map
                        .entry(e.key.to_string())
                        .or_insert_with(|| Value::Array(Vec::new()));
                    slot.as_array_mut().expect("list key").push(e.value.clone());
                } else {
                    map.insert(e.key.to_string(), e.value.clone());
                }
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json value");
            s.push('\n');
            return s;
        }
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let mut s = String::new();
        for e in &self.entries {
            let shown = match (&e.text, &e.value) {
                (Some(text), _) => text.clone(),
                (None, Value::String(text)) => text.clone(),
                (None, other) => other.to_string(),
            };
            s.push_str(&format!("{}: {shown}\n", e.key));
        }
        s
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Numerical(_) | Error::Conditioning { .. } => EXIT_NUMERICAL,
        Error::Domain(_) | Error::Format(_) | Error::Io(_) => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult::failure(EXIT_USAGE, text)
            } else {
                CommandResult {
                    exit_code: EXIT_OK,
                    report: text,
                    error: None,
                }
            };
        }
    };
    let json = cli.json;
    match execute(cli.command) {
        Ok((code, report)) => CommandResult {
            exit_code: code,
            report: report.render(json),
            error: None,
        },
        Err(e) => CommandResult::failure(exit_code_for(&e), format!("error: {e}")),
    }
}

fn constellation_items(report: &mut Report, c: &Constellation) {
    for (p, m) in c.points() {
        let text = format!(
            "theta={:.12} phi={:.12} multiplicity={m}",
            p.theta(),
            p.phi()
        );
        report.item("point", point_value(p, *m), Some(text));
    }
}

fn point_value(p: &BlochPoint, multiplicity: usize) -> Value {
    json!({ "theta": p.theta(), "phi": p.phi(), "multiplicity": multiplicity })
}

fn parse_family(text: &str, n: usize) -> crate::Result<DegeneracyConfiguration> {
    let family: DegeneracyConfiguration = text.parse()?;
    if family.n_qubits() != n {
        return Err(Error::Domain(format!(
            "{family} is not a partition of N = {n}"
        )));
    }
    Ok(family)
}

fn parse_cap(text: &str) -> crate::Result<OrientationDistribution> {
    let values = text
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Format(format!("bad cap value {v:?}")))
        })
        .collect::<crate::Result<Vec<f64>>>()?;
    let [theta, phi, radius] = values[..] else {
        return Err(Error::Format("cap takes theta,phi,radius".into()));
    };
    OrientationDistribution::cap(BlochPoint::new(theta, phi)?, radius)
}

fn execute(command: Command) -> crate::Result<(i32, Report)> {
    let mut report = Report::new();
    match command {
        Command::Families { n, dot } => {
            if n < 1 || n > MAX_FAMILY_QUBITS as i64 {
                return Err(Error::Domain(format!(
                    "N = {n} outside 1..={MAX_FAMILY_QUBITS}"
                )));
            }
            let graph = hasse_graph(n as usize)?;
            if dot {
                let text = graph.to_dot();
                report.field("dot", text.clone());
                report.raw = Some(text);
                return Ok((EXIT_OK, report));
            }
            report.field("n_qubits", n);
            report.field("families", graph.nodes().len());
            for node in graph.nodes() {
                let text = format!("{node} diversity={}", node.diversity());
                report.item(
                    "family",
                    json!({ "family": node.to_string(), "diversity": node.diversity() }),
                    Some(text),
                );
            }
            for (a, b) in graph.edge_families() {
                report.item("edge", format!("{a} -> {b}"), None);
            }
        }
        Command::Classify { state_file, tol } => {
            let psi = io::read_state(&state_file)?;
            let c = to_constellation(&psi, tol)?;
            let family = c.degeneracy();
            report.field("n_qubits", psi.n_qubits());
            report.field("family", family.to_string());
            report.field("partition", family.to_list_string());
            report.field("diversity", family.diversity());
            constellation_items(&mut report, &c);
        }
        Command::Witness {
            ref_state_file,
            family,
            eval,
            seed,
            starts,
        } => {
            let psi = io::read_state(&ref_state_file)?;
            let family = parse_family(&family, psi.n_qubits())?;
            let rho = eval.map(io::read_density).transpose()?;
            let cfg = OptimizerConfig {
                n_starts: starts,
                seed,
                ..Default::default()
            };
            let w = build_witness(&psi, &family, &cfg)?;
            report.field("family", family.to_string());
            report.field("alpha", w.alpha);
            report.field("confidence", w.confidence);
            constellation_items(&mut report, &w.argmax_constellation);
            if let Some(rho) = rho {
                let value = w.evaluate(&rho)?;
                report.field("expectation", value);
                report.field("detected", value < 0.0);
                if value < 0.0 {
                    return Ok((EXIT_DETECTED, report));
                }
            }
        }
        Command::Sample {
            family,
            n_qubits,
            terms,
            descendants,
            samples,
            cap,
            seed,
            out,
        } => {
            let family = parse_family(&family, n_qubits)?;
            let dist = cap
                .as_deref()
                .map(parse_cap)
                .transpose()?
                .unwrap_or(OrientationDistribution::UniformSphere);
            report.field("family", family.to_string());
            let rho = match samples {
                Some(n_samples) => {
                    let mix = polarizer_mixture(&family, &dist, n_samples, seed)?;
                    let uniform = DensityMatrix::maximally_mixed(n_qubits)?;
                    report.field("samples", n_samples);
                    report.field("half_trace_distance", mix.half_trace_distance);
                    report.field(
                        "distance_to_maximally_mixed",
                        mix.rho.trace_distance(&uniform)?,
                    );
                    mix.rho
                }
                None => {
                    let spec = SamplingSpec {
                        family: family.clone(),
                        n_terms: terms,
                        include_descendants: descendants,
                        orientation_distribution: dist,
                        seed,
                    };
                    report.field("terms", terms);
                    report.field("descendants", descendants);
                    sample_mixed_in_family(&spec, n_qubits)?
                }
            };
            io::write_density(&out, &rho)?;
            report.field("out", out.display().to_string());
        }
        Command::Basis {
            n_qubits,
            seed,
            decompose: target,
            out,
            cond_threshold,
            max_attempts,
        } => {
            let points = choose_points(n_qubits, seed, cond_threshold, max_attempts)?;
            let basis = build_basis(n_qubits, &points)?;
            report.field("n_qubits", n_qubits);
            report.field("directions", basis.directions().len());
            report.field("condition_number", basis.condition_number());
            if let Some(path) = out {
                io::write_basis(&path, &basis)?;
                report.field("out", path.display().to_string());
            }
            if let Some(path) = target {
                let rho = io::read_density(&path)?;
                let coeffs = decompose(&rho, &basis)?;
                let min = coeffs.iter().copied().fold(f64::INFINITY, f64::min);
                report.field("coefficient_sum", coeffs.iter().sum::<f64>());
                report.field("min_coefficient", min);
                report.field("all_nonnegative", min >= 0.0);
                report.field("coefficients", coeffs);
            }
        }
    }
    Ok((EXIT_OK, report))
}
