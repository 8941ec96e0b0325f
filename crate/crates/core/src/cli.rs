//! Command-line front end. Exit codes: 0 all checks pass, 1 some check failed, 2 bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::exterior::binomial;
use crate::fan::{Cohomology, Fan, FanStats};
use crate::fixtures::{self, FIXTURES};
use crate::input::{parse_fan, parse_matroid};
use crate::matroid::Matroid;
use crate::orlik_solomon::{degree_fragment, os0_ideal_degree, os_ideal_degree};
use crate::report::{DegreeRecord, VerificationReport};
use crate::verify::{verify, VerifyOptions, DEFAULT_MAX_ORACLE_SIZE, ORACLE_ENV};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "bergman-os",
    version,
    about = "Compare tropical homology of Bergman fans with Orlik-Solomon algebras"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest ground set for brute-force and exhaustive checks.
    #[arg(long, env = ORACLE_ENV, default_value_t = DEFAULT_MAX_ORACLE_SIZE, global = true)]
    max_oracle_size: usize,
    /// Seed for the randomized lemma checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Circuits, flats and fan statistics.
    Info { matroid: String },
    /// Ranks of F_k and of the Orlik-Solomon algebras per degree.
    Ranks { matroid: String },
    /// Run the verification battery.
    Verify {
        #[arg(required = true)]
        matroids: Vec<String>,
        /// Also run the lemma checks.
        #[arg(long)]
        lemmas: bool,
        /// Also compare against the brute-force ideal.
        #[arg(long)]
        oracle: bool,
    },
    /// List the built-in matroids.
    Fixtures,
    /// F_k of a general simplicial fan given as JSON.
    Fan { path: String },
}

/// A fixture name or a path to a matroid JSON file.
pub fn load_matroid(arg: &str) -> Result<(String, Matroid), String> {
    if let Some(m) = fixtures::fixture(arg) {
        return m
            .map(|m| (arg.to_string(), m))
            .map_err(|e| format!("{arg}: {e}"));
    }
    let text = read(arg)?;
    parse_matroid(&text).map_err(|e| format!("{arg}: {e}"))
}

fn read(path: &str) -> Result<String, String> {
    if !Path::new(path).exists() {
        return Err(format!(
            "{path}: neither a built-in matroid nor an existing file"
        ));
    }
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn fan_stats_text(label: &str, s: &FanStats) -> String {
    format!(
        "{label}: ambient rank {}, {} rays{}, cones by dimension {:?}, distinct cone multivectors {:?}\n",
        s.ambient_rank,
        s.rays,
        s.connected_rays
            .map_or(String::new(), |c| format!(" ({c} from connected flats)")),
        s.cones_by_dimension,
        s.distinct_cone_multivectors
    )
}

fn info(name: &str, m: &Matroid, format: Format) -> String {
    let affine = Fan::affine(m).stats();
    let bergman = Fan::bergman(m).stats();
    let flats: Vec<Vec<Vec<usize>>> = (0..=m.rank())
        .map(|k| m.flats(k).into_iter().map(|f| f.elements).collect())
        .collect();
    match format {
        Format::Json => to_json(&json!({
            "matroid_name": name,
            "source": m.source(),
            "ground_size": m.ground_size(),
            "rank": m.rank(),
            "validated": m.validated(),
            "simple": m.is_simple(),
            "circuits": m.circuits(),
            "flats_by_rank": flats,
            "fans": { "affine": affine, "bergman": bergman },
        })),
        Format::Text => {
            let mut out = format!(
                "matroid {name} ({}, ground size {}, rank {}{})\n",
                m.source(),
                m.ground_size(),
                m.rank(),
                if m.validated() {
                    ""
                } else {
                    ", circuit axioms not checked"
                }
            );
            let circuits: Vec<String> = m.circuits().iter().map(|c| format!("{c:?}")).collect();
            out += &format!("circuits: {}\n", circuits.join(" "));
            for (k, fs) in flats.iter().enumerate() {
                let fs: Vec<String> = fs.iter().map(|f| format!("{f:?}")).collect();
                out += &format!("flats of rank {k}: {}\n", fs.join(" "));
            }
            out += &fan_stats_text("Σ", &affine);
            out += &fan_stats_text("Σ₀", &bergman);
            out
        }
    }
}

fn rank_records(m: &Matroid) -> Vec<DegreeRecord> {
    let n = m.ground_size();
    let affine = Fan::affine(m);
    let bergman = Fan::bergman(m);
    (0..=m.rank())
        .map(|k| {
            let ideal = os_ideal_degree(m, k).subgroup;
            let ideal0 = (k < n).then(|| os0_ideal_degree(m, k).subgroup);
            let fragment = degree_fragment(n, k, &ideal, ideal0.as_ref());
            let fk0 = if k < n {
                bergman.fk_lattice(k).rank()
            } else {
                0
            };
            DegreeRecord::new(&fragment, affine.fk_lattice(k).rank(), fk0)
        })
        .collect()
}

fn ranks(name: &str, m: &Matroid, format: Format) -> String {
    let records = rank_records(m);
    match format {
        Format::Json => to_json(&json!({ "matroid_name": name, "degrees": records })),
        Format::Text => {
            let mut out = format!("matroid {name}\n");
            out += "degree  F_k(Σ)  OS^k  F_k(Σ₀)  OS₀^k  torsion\n";
            for d in &records {
                out += &format!(
                    "{:>6}  {:>6}  {:>4}  {:>7}  {:>5}  {:?}\n",
                    d.degree,
                    d.fk_affine_rank,
                    d.os_rank,
                    d.fk_projective_rank,
                    d.os0_rank,
                    d.torsion
                );
            }
            out
        }
    }
}

fn fixture_list(format: Format) -> String {
    match format {
        Format::Json => to_json(
            &FIXTURES
                .iter()
                .map(|f| json!({ "name": f.name, "description": f.description }))
                .collect::<Vec<_>>(),
        ),
        Format::Text => FIXTURES
            .iter()
            .map(|f| format!("{:<10} {}\n", f.name, f.description))
            .collect(),
    }
}

#[derive(Serialize)]
struct FanDegree {
    degree: usize,
    fk_rank: usize,
    exterior_rank: usize,
    cohomology: Cohomology,
}

fn fan_report(fan: &Fan, format: Format) -> String {
    let degrees: Vec<FanDegree> = (0..=fan.ambient_rank())
        .map(|k| FanDegree {
            degree: k,
            fk_rank: fan.fk_lattice(k).rank(),
            exterior_rank: binomial(fan.ambient_rank(), k),
            cohomology: fan.fk_cohomology(k),
        })
        .collect();
    let balanced = fan.check_balanced().map_err(|e| e.to_string());
    let ideal = fan.check_ideal_property();
    match format {
        Format::Json => to_json(&json!({
            "stats": fan.stats(),
            "degrees": degrees,
            "balanced": balanced.as_ref().ok(),
            "balanced_error": balanced.as_ref().err(),
            "ideal_property": ideal,
        })),
        Format::Text => {
            let mut out = fan_stats_text("fan", &fan.stats());
            out += "degree  F_k  ∧^k  torsion\n";
            for d in &degrees {
                out += &format!(
                    "{:>6}  {:>3}  {:>3}  {:?}\n",
                    d.degree, d.fk_rank, d.exterior_rank, d.cohomology.torsion
                );
            }
            out += &match balanced {
                Ok(b) => format!("balanced: {b}\n"),
                Err(e) => format!("balanced: no ({e})\n"),
            };
            out += &format!("annihilators form an ideal: {ideal}\n");
            out
        }
    }
}

fn verify_all(
    args: &[String],
    opts: &VerifyOptions,
    format: Format,
) -> Result<(String, bool), String> {
    let loaded = args
        .iter()
        .map(|a| load_matroid(a))
        .collect::<Result<Vec<_>, _>>()?;
    let reports: Vec<VerificationReport> = loaded
        .par_iter()
        .map(|(name, m)| verify(name, m, opts))
        .collect();
    let passed = reports.iter().all(VerificationReport::passed);
    let out = match format {
        Format::Json if reports.len() == 1 => reports[0].to_json(),
        Format::Json => to_json(&reports),
        Format::Text => reports.iter().map(VerificationReport::to_text).collect(),
    };
    Ok((out, passed))
}

fn execute(cli: Cli) -> Result<(String, i32), String> {
    let format = cli.format;
    let pass = |s: String| (s, EXIT_PASS);
    match cli.command {
        Command::Info { matroid } => {
            let (name, m) = load_matroid(&matroid)?;
            Ok(pass(info(&name, &m, format)))
        }
        Command::Ranks { matroid } => {
            let (name, m) = load_matroid(&matroid)?;
            Ok(pass(ranks(&name, &m, format)))
        }
        Command::Fixtures => Ok(pass(fixture_list(format))),
        Command::Fan { path } => {
            let text = read(&path)?;
            let fan = parse_fan(&text).map_err(|e| format!("{path}: {e}"))?;
            Ok(pass(fan_report(&fan, format)))
        }
        Command::Verify {
            matroids,
            lemmas,
            oracle,
        } => {
            let opts = VerifyOptions {
                lemmas,
                oracle,
                max_oracle_size: cli.max_oracle_size,
                seed: cli.seed,
            };
            let (out, passed) = verify_all(&matroids, &opts, format)?;
            Ok((out, if passed { EXIT_PASS } else { EXIT_FAIL }))
        }
    }
}

/// Parses `args` (including the program name), runs the command, and returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_PASS;
        }
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return EXIT_INPUT;
        }
    };
    match execute(cli) {
        Ok((text, code)) => {
            let _ = write!(out, "{text}");
            if !text.ends_with('\n') {
                let _ = writeln!(out);
            }
            code
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_cli(
            std::iter::once("bergman-os").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn ranks_of_m1() {
        let (code, out, _) = run(&["ranks", "m1", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let d2 = &v["degrees"][2];
        assert_eq!(d2["fk_projective_rank"], 2);
        assert_eq!(d2["os0_rank"], 2);
    }

    #[test]
    fn unknown_input_exits_2() {
        let (code, _, err) = run(&["verify", "no_such_matroid"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("no_such_matroid"));
        let (code, _, _) = run(&["verify"]);
        assert_eq!(code, EXIT_INPUT);
        let (code, _, _) = run(&["ranks", "m1", "--format", "yaml"]);
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }

    #[test]
    fn fixtures_and_info() {
        let (code, out, _) = run(&["fixtures"]);
        assert_eq!(code, 0);
        assert!(out.contains("nonfano"));
        let (code, out, _) = run(&["info", "m2", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["circuits"].as_array().unwrap().len(), 7);
        assert_eq!(v["fans"]["bergman"]["rays"], 13);
    }
}
