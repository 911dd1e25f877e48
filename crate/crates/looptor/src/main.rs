//! Command-line front end: loop-space homology, verification suites,
//! and twisted-product comparison.
//!
//! Exit codes: 0 on success, 1 when a verified identity or comparison
//! fails, 2 on malformed input.

use clap::{Parser, Subcommand, ValueEnum};
use looptor::report::{self, Report, SuiteOptions};
use looptor::twisted::{compare_homology, GxMorphism, TwistedCartesian, TwistedTensor};
use serde::Serialize;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "looptor",
    version,
    about = "Loop-space homology and twisted product calculator over exact integers"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Homology of the based loop space through the cobar complex.
    #[command(name = "loop-homology")]
    LoopHomology {
        /// `builtin:<name>[:params]` or a JSON space file.
        #[arg(long)]
        space: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Run a verification suite against a space.
    Verify {
        /// One of: prisms, conventions, twisting, cobar, psi, homology, all.
        suite: String,
        /// Space under test (defaults to the reduced 3-simplex).
        space: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        /// Randomized case count for the conventions and homology suites.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 0x100f)]
        seed: u64,
    },
    /// Compare homology of a twisted tensor product with the twisted
    /// cartesian product it models.
    #[command(name = "compare-twisted")]
    CompareTwisted {
        #[arg(long)]
        base: String,
        /// Fiber space; `builtin:points:m` gives the constant m-point set.
        #[arg(long)]
        fiber: String,
        /// Structure group: `builtin:cyclic:m`, `builtin:trivial`, or a
        /// JSON constant-group table.
        #[arg(long)]
        group: String,
        /// `trivial`, `step`, or a JSON file of generator values.
        #[arg(long)]
        twist: String,
        #[arg(long)]
        max_degree: usize,
        /// `auto`, `trivial`, or `translation`.
        #[arg(long, default_value = "auto")]
        action: String,
    },
}

#[derive(Serialize)]
struct HomologyEntry {
    degree: usize,
    betti: usize,
    torsion: Vec<String>,
}

#[derive(Serialize)]
struct HomologyReport {
    schema: u32,
    space: String,
    max_degree: usize,
    homology: Vec<HomologyEntry>,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct CompareEntry {
    degree: usize,
    cartesian: HomologyEntry,
    tensor: HomologyEntry,
    equal: bool,
}

#[derive(Serialize)]
struct CompareReport {
    schema: u32,
    base: String,
    fiber: String,
    group: String,
    max_degree: usize,
    degrees: Vec<CompareEntry>,
    equal: bool,
    elapsed_ms: u128,
}

fn entry(degree: usize, h: &looptor::homology::HomologyGroup) -> HomologyEntry {
    HomologyEntry {
        degree,
        betti: h.betti,
        torsion: h.torsion.iter().map(|t| t.to_string()).collect(),
    }
}

fn fail_input(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit_report(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!("{}", report.render_json()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("LOOPTOR_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::LoopHomology { space, max_degree } => {
            let start = Instant::now();
            let set = match report::load_space(&space) {
                Ok(s) => s,
                Err(e) => return fail_input(&e),
            };
            let cobar = match looptor::cobar::Cobar::new(&set) {
                Ok(c) => c,
                Err(e) => return fail_input(&e.to_string()),
            };
            let table = match cobar.homology(max_degree) {
                Ok(t) => t,
                Err(e) => return fail_input(&e.to_string()),
            };
            let rep = HomologyReport {
                schema: report::SCHEMA_VERSION,
                space: set.name().to_string(),
                max_degree,
                homology: table.iter().enumerate().map(|(k, h)| entry(k, h)).collect(),
                elapsed_ms: start.elapsed().as_millis(),
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep).unwrap()),
                Format::Text => {
                    println!("loop-space homology of {} up to degree {}", rep.space, max_degree);
                    for (k, h) in table.iter().enumerate() {
                        println!("  H_{k} = {}", h.render());
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Verify { suite, space, max_dim, cases, seed } => {
            let spec = space.unwrap_or_else(|| "builtin:reduced-simplex:3".into());
            let set = match report::load_space(&spec) {
                Ok(s) => s,
                Err(e) => return fail_input(&e),
            };
            let opts = SuiteOptions { max_dim, cases, seed };
            match report::run_suite(&suite, &set, &opts) {
                Ok(rep) => emit_report(&rep, cli.format),
                Err(e) => fail_input(&e),
            }
        }
        Cmd::CompareTwisted { base, fiber, group, twist, max_degree, action } => {
            let start = Instant::now();
            let base_set = match report::load_space(&base) {
                Ok(s) => s,
                Err(e) => return fail_input(&e),
            };
            let fiber_set = match report::load_space(&fiber) {
                Ok(s) => s,
                Err(e) => return fail_input(&e),
            };
            // group tables must reach one dimension past the comparison
            let depth = max_degree + 2;
            let grp = match report::load_group(&group, depth) {
                Ok(g) => g,
                Err(e) => return fail_input(&e),
            };
            let tw = match report::load_twist(&twist, &base_set, &grp) {
                Ok(t) => t,
                Err(e) => return fail_input(&e),
            };
            if let Err(e) = tw.check(&base_set, &grp, max_degree + 1) {
                return fail_input(&e.to_string());
            }
            let act = match report::load_action(&action, &grp, &fiber_set, depth) {
                Ok(a) => a,
                Err(e) => return fail_input(&e),
            };
            let morphism = GxMorphism::new(&base_set, &grp, tw.clone());
            let tcp = TwistedCartesian {
                base: &base_set,
                grp: &grp,
                twist: &tw,
                fiber: &fiber_set,
                action: &act,
            };
            let tt = TwistedTensor {
                base: &base_set,
                grp: &grp,
                morphism: &morphism,
                fiber: &fiber_set,
                action: &act,
            };
            let (h_tcp, h_tt) = match compare_homology(&tcp, &tt, max_degree) {
                Ok(pair) => pair,
                Err(e) => return fail_input(&e.to_string()),
            };
            let degrees: Vec<CompareEntry> = (0..=max_degree)
                .map(|k| CompareEntry {
                    degree: k,
                    cartesian: entry(k, &h_tcp[k]),
                    tensor: entry(k, &h_tt[k]),
                    equal: h_tcp[k] == h_tt[k],
                })
                .collect();
            let equal = degrees.iter().all(|d| d.equal);
            let rep = CompareReport {
                schema: report::SCHEMA_VERSION,
                base: base_set.name().to_string(),
                fiber: fiber_set.name().to_string(),
                group: grp.name().to_string(),
                max_degree,
                degrees,
                equal,
                elapsed_ms: start.elapsed().as_millis(),
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep).unwrap()),
                Format::Text => {
                    for (k, (a, b)) in h_tcp.iter().zip(h_tt.iter()).enumerate() {
                        let mark = if a == b { "=" } else { "≠" };
                        println!("  H_{k}: cartesian {} {mark} tensor {}", a.render(), b.render());
                    }
                    let verdict = if equal { "EQUAL" } else { "DIFFER" };
                    let left = h_tcp.iter().map(|h| h.render()).collect::<Vec<_>>().join(", ");
                    let right = h_tt.iter().map(|h| h.render()).collect::<Vec<_>>().join(", ");
                    println!("{verdict}: ({left}),({right})");
                }
            }
            if equal {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
