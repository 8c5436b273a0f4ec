//! Command-line interface. Exit codes: 0 success, 1 failed or inconclusive
//! verification, 2 usage or parse errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use lnd_core::derivation::CertStatus;
use lnd_core::dixmier::{find_slices, kernel_via_slice};
use lnd_core::invariant::{intersect_spans, kernel_basis_bounded, ml_star_estimate_bounded};
use lnd_core::{Derivation, Limits, NilpotencyCertificate, OrderKind, RingElement, SpanBasis};
use rayon::prelude::*;
use serde_json::json;

use crate::corpus;
use crate::fixture::{Fixture, FixtureError, FixtureFile};
use crate::report::VerificationReport;
use crate::run::{run_fixture, RunOptions};

#[derive(Parser, Debug)]
#[command(name = "lnd", version, about = "Exact computations with locally nilpotent derivations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Degree bound for bounded kernel computations.
    #[arg(long, global = true, default_value_t = 3)]
    pub degree: u32,
    /// Iteration bound for nilpotency certificates.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_steps: u32,
    /// Monomial order, overriding the fixture (lex or grevlex).
    #[arg(long, global = true)]
    pub order: Option<OrderKind>,
    /// Write a JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Fixtures run concurrently by `corpus`.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that every derivation respects the relations.
    Check { file: String },
    /// Nilpotency certificate for one derivation.
    Lnd { file: String, derivation: String },
    /// Search for slices and local slices.
    Slice { file: String, derivation: String },
    /// Kernel generators from a slice, or the bounded kernel basis.
    Kernel {
        file: String,
        derivation: String,
        #[arg(long)]
        slice: Option<String>,
    },
    /// Bounded intersection of kernels.
    Intersect {
        file: String,
        #[arg(required = true)]
        derivations: Vec<String>,
    },
    /// Bounded ML* estimate over the derivations that admit a slice.
    Mlstar { file: String },
    /// Evaluate every claim of a fixture.
    Verify { file: String },
    /// Verify all bundled fixtures.
    Corpus,
}

/// Usage and input problems; everything else exits with 1.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Run with explicit arguments and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() || e.is::<FixtureError>() {
                2
            } else {
                1
            }
        }
    }
}

/// A path on disk, or the name of a bundled fixture.
fn load(file: &str) -> anyhow::Result<FixtureFile> {
    let path = Path::new(file);
    if !path.exists() {
        if let Some(text) = corpus::bundled(file) {
            return Ok(FixtureFile::parse(text)?);
        }
    }
    Ok(FixtureFile::load(path)?)
}

fn options(cli: &Cli) -> RunOptions {
    RunOptions { degree: cli.degree, max_steps: cli.max_steps, order: cli.order, limits: Limits::default() }
}

fn build(cli: &Cli, file: &str) -> anyhow::Result<Fixture> {
    Ok(Fixture::build(&load(file)?, cli.order)?)
}

fn lookup<'a>(fx: &'a Fixture, name: &str) -> anyhow::Result<&'a Derivation> {
    match fx.named(name) {
        None => Err(Usage(format!("no derivation named {name}")).into()),
        Some(n) => n.derivation.as_ref().map_err(|e| anyhow!("{name} is not a derivation: {e}")),
    }
}

fn certify(d: &Derivation, cli: &Cli) -> anyhow::Result<NilpotencyCertificate> {
    let cert = d.certify(cli.max_steps);
    if let CertStatus::Inconclusive(b) = cert.status() {
        bail!("{} is not shown locally nilpotent within {b} steps", d.label());
    }
    Ok(cert)
}

fn write_json(cli: &Cli, value: &serde_json::Value) -> anyhow::Result<()> {
    if let Some(path) = &cli.out {
        let text = serde_json::to_string_pretty(value)?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn strings(es: &[RingElement]) -> Vec<String> {
    es.iter().map(|e| e.to_string()).collect()
}

fn print_span(label: &str, span: &SpanBasis) -> serde_json::Value {
    println!("{label} (d={}, dim {}):", span.degree_bound(), span.dim());
    let elems = strings(&span.elements());
    for e in &elems {
        println!("  {e}");
    }
    json!({ "degree": span.degree_bound(), "dim": span.dim(), "basis": elems })
}

fn execute(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Check { file } => {
            let fx = build(cli, file)?;
            println!("ring {}", fx.ring);
            let mut ok = true;
            let mut rows = Vec::new();
            for n in &fx.derivations {
                match &n.derivation {
                    Ok(d) => println!("  {}: well defined  {d}", n.name),
                    Err(e) => {
                        ok = false;
                        println!("  {}: {e}", n.name);
                    }
                }
                rows.push(json!({ "derivation": n.name, "well_defined": n.derivation.is_ok(),
                    "error": n.derivation.as_ref().err() }));
            }
            write_json(cli, &json!({ "fixture": fx.file.id, "derivations": rows }))?;
            Ok(ok)
        }

        Command::Lnd { file, derivation } => {
            let fx = build(cli, file)?;
            let d = lookup(&fx, derivation)?;
            let cert = d.certify(cli.max_steps);
            println!("{cert}");
            let indices: Vec<_> =
                cert.per_generator_index().iter().map(|(v, n)| json!({ "variable": v, "index": n.index() })).collect();
            write_json(
                cli,
                &json!({ "derivation": derivation, "certified": cert.is_certified(), "indices": indices }),
            )?;
            Ok(cert.is_certified())
        }

        Command::Slice { file, derivation } => {
            let fx = build(cli, file)?;
            let d = lookup(&fx, derivation)?;
            let report = find_slices(d, &[]);
            println!("searched: {}", report.search_space);
            println!("slices: {}", strings(&report.slices).join(", "));
            let local: Vec<String> = report.local_slices.iter().map(|(r, t)| format!("{r} (D = {t})")).collect();
            println!("local slices: {}", local.join(", "));
            write_json(
                cli,
                &json!({ "derivation": derivation, "slices": strings(&report.slices), "local_slices": local }),
            )?;
            Ok(true)
        }

        Command::Kernel { file, derivation, slice } => {
            let fx = build(cli, file)?;
            let d = lookup(&fx, derivation)?;
            let value = match slice {
                Some(s) => {
                    let cert = certify(d, cli)?;
                    let s = d.ring().parse_element(s).map_err(|e| Usage(e.to_string()))?;
                    let k = kernel_via_slice(&cert, &s)?;
                    let gens = strings(&k.generators);
                    println!("ker {} = Q[{}]", d.label(), gens.join(", "));
                    json!({ "derivation": derivation, "slice": s.to_string(), "generators": gens })
                }
                None => {
                    let k = kernel_basis_bounded(d, cli.degree, Limits::default())?;
                    print_span(&format!("ker {} up to degree {}", d.label(), cli.degree), &k)
                }
            };
            write_json(cli, &value)?;
            Ok(true)
        }

        Command::Intersect { file, derivations } => {
            let fx = build(cli, file)?;
            let ks = derivations
                .iter()
                .map(|n| Ok(kernel_basis_bounded(lookup(&fx, n)?, cli.degree, Limits::default())?))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let refs: Vec<&SpanBasis> = ks.iter().collect();
            let meet = intersect_spans(&refs)?;
            let value = print_span(&format!("intersection of {}", derivations.join(", ")), &meet);
            write_json(cli, &value)?;
            Ok(true)
        }

        Command::Mlstar { file } => {
            let fx = build(cli, file)?;
            let mut family = Vec::new();
            for d in fx.base_derivations() {
                match find_slices(d, &[]).slices.into_iter().next() {
                    Some(s) => family.push((certify(d, cli)?, s)),
                    None => println!("{}: no slice found, left out", d.label()),
                }
            }
            if family.is_empty() {
                println!("no derivation with a slice: ML* = B by convention");
                write_json(cli, &json!({ "fixture": fx.file.id, "family": [], "estimate": null }))?;
                return Ok(true);
            }
            let pairs: Vec<(&NilpotencyCertificate, &RingElement)> = family.iter().map(|(c, s)| (c, s)).collect();
            let est = ml_star_estimate_bounded(&pairs, cli.degree, Limits::default())?;
            let names: Vec<String> =
                family.iter().map(|(c, s)| format!("{} (slice {s})", c.derivation().label())).collect();
            println!("family: {}", names.join(", "));
            let value = print_span("ML* estimate", &est);
            write_json(cli, &json!({ "fixture": fx.file.id, "family": names, "estimate": value }))?;
            Ok(true)
        }

        Command::Verify { file } => {
            let report = run_fixture(&load(file)?, &options(cli))?;
            println!("{report}");
            write_json(cli, &serde_json::to_value(&report)?)?;
            Ok(report.passed())
        }

        Command::Corpus => {
            let files = corpus::corpus()?;
            let opts = options(cli);
            let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build()?;
            let reports: Vec<VerificationReport> =
                pool.install(|| files.par_iter().map(|f| run_fixture(f, &opts)).collect::<Result<Vec<_>, _>>())?;
            for r in &reports {
                println!("{r}");
            }
            let ok = reports.iter().all(VerificationReport::passed);
            println!("corpus: {} of {} fixtures pass", reports.iter().filter(|r| r.passed()).count(), reports.len());
            write_json(cli, &serde_json::to_value(&reports)?)?;
            Ok(ok)
        }
    }
}
