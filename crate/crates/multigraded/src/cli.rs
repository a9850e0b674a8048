//! Command-line front end: scheme ingestion, cohomology tables, generator
//! tables and the verification campaigns, with JSON/CSV/text output.
//!
//! Exit codes are a stable contract: 0 pass, 1 verification failure,
//! 2 usage or input error, 3 configuration error. Identical invocations
//! produce byte-identical reports (fixed orderings, no timestamps).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::baselocus::{verify_f3, verify_f4, BaseLocusCampaign};
use crate::cohomology::{default_box, regions, verify_prop0bg1, CohomologyTable};
use crate::cotangent::{verify_bg2, verify_ee2};
use crate::degree::{DegreeBox, MultiIndex};
use crate::error::Error;
use crate::field::{PrimeField, DEFAULT_MODULUS};
use crate::generators::{generator_table, verify_bb1, verify_p2p1, verify_pbg1};
use crate::report::{Campaign, VerifyReport};
use crate::ring::Space;
use crate::scheme::{ComponentKind, SchemeFile, ZeroScheme};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "multigraded",
    about = "Cohomology, ideal generators and base loci of finite schemes in products of projective spaces",
    version
)]
pub struct Cli {
    /// Prime modulus of the working field.
    #[arg(long, global = true, default_value_t = DEFAULT_MODULUS)]
    pub modulus: u64,

    /// Base seed; campaign seed i is base + i.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Number of seeds per campaign.
    #[arg(long, global = true, default_value_t = 20)]
    pub seeds: usize,

    /// Minimum passing seeds for an overall pass (defaults to seeds - 1).
    #[arg(long, global = true)]
    pub threshold: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Reduced,
    Tangent,
    Double,
    Mixed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology table (h0/h1, regions, maximal-rank verdict) over a box.
    Regions(RegionsArgs),
    /// Minimal-generator table of the multigraded ideal over a box.
    Generators(RegionsArgs),
    /// Run one verification campaign.
    Verify {
        #[command(subcommand)]
        which: Verifier,
    },
}

#[derive(Debug, Args)]
pub struct RegionsArgs {
    /// Scheme description file (JSON).
    #[arg(long, conflicts_with_all = ["space", "points"])]
    pub scheme: Option<PathBuf>,

    /// Space shape for a random scheme, e.g. 1,1 for P1 x P1.
    #[arg(long, value_delimiter = ',', requires = "points")]
    pub space: Option<Vec<u32>>,

    /// Number of random components (for kind mixed: the target degree).
    #[arg(long)]
    pub points: Option<usize>,

    #[arg(long, value_enum, default_value_t = KindArg::Reduced)]
    pub kind: KindArg,

    /// Box upper corner, e.g. 3,3; defaults to deg(Z) in every slot.
    #[arg(long = "box", value_delimiter = ',')]
    pub window: Option<Vec<u32>>,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Verifier {
    /// Cokernel formula for ideal generators on (P^1)^k.
    Bb1 {
        /// Number of P^1 factors.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Number of general points.
        #[arg(long, default_value_t = 3)]
        z: usize,
        #[arg(long = "box", value_delimiter = ',')]
        window: Option<Vec<u32>>,
    },
    /// Cokernel formula and maximal rank on products of P^1 and P^2.
    P2p1 {
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        space: Vec<u32>,
        #[arg(long, default_value_t = 4)]
        z: usize,
        #[arg(long = "box", value_delimiter = ',')]
        window: Option<Vec<u32>>,
    },
    /// Cotangent-bundle section counts on Y x P^2 (Y = P^1).
    Bg2 {
        /// h0 of the Y-side twist; the twist degree is alpha - 1.
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        /// Cotangent twist x.
        #[arg(long, default_value_t = 2)]
        x: u32,
    },
    /// Maximal rank of one mult-map slot via cotangent sections.
    Ee2 {
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        space: Vec<u32>,
        /// Slot with the cotangent twist (1-based).
        #[arg(long, default_value_t = 2)]
        i: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        a: Vec<u32>,
    },
    /// Surjectivity of the P^2-slot multiplication step.
    Pbg1 {
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        space: Vec<u32>,
        /// The P^2 slot (1-based).
        #[arg(long, default_value_t = 2)]
        slot: usize,
        /// Twist on the other factors.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        outer: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
    /// Scheme-theoretic base locus at the given multidegree.
    F3 {
        #[arg(long, value_delimiter = ',', default_value = "1,1")]
        space: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "1,1")]
        a: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 1000)]
        probes: usize,
    },
    /// Base locus one multidegree step up.
    F4 {
        #[arg(long, value_delimiter = ',', default_value = "1,1")]
        space: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "1,1")]
        a: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Direction of the step (1-based).
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 1000)]
        probes: usize,
    },
    /// h1 monotonicity, fiber equality and stabilization criterion.
    Prop0bg1 {
        #[arg(long, value_delimiter = ',', default_value = "1,1")]
        space: Vec<u32>,
        /// Number of random schemes.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest scheme degree in the corpus.
        #[arg(long, default_value_t = 8)]
        deg: usize,
    },
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through this path too
            let _ = write!(stdout, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok((payload, code)) => {
            if let Err(e) = emit(payload, stdout) {
                let _ = writeln!(stdout, "error: {e}");
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stdout, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &CliError) -> i32 {
    match e {
        CliError::Config(_) => EXIT_CONFIG,
        CliError::Input(_) => EXIT_USAGE,
    }
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) | CliError::Input(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_) | Error::ModulusTooSmall(_) => CliError::Config(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    path: Option<PathBuf>,
}

fn emit(out: Output, stdout: &mut dyn Write) -> std::io::Result<()> {
    match out.path {
        Some(p) => fs::write(p, out.text),
        None => stdout.write_all(out.text.as_bytes()),
    }
}

fn execute(cli: Cli) -> Result<(Output, i32), CliError> {
    let field = PrimeField::new(cli.modulus)?;
    let campaign = Campaign {
        base_seed: cli.seed,
        seeds: cli.seeds,
        threshold: cli
            .threshold
            .unwrap_or_else(|| cli.seeds.saturating_sub(1).max(1)),
    };
    let (text, code) = match &cli.command {
        Command::Regions(args) => {
            let z = load_scheme(args, cli.seed, &field)?;
            let window = window_for(&z, &args.window)?;
            let table = regions(&z, &window, &field);
            (render_regions(&table, cli.format)?, EXIT_OK)
        }
        Command::Generators(args) => {
            let z = load_scheme(args, cli.seed, &field)?;
            let window = window_for(&z, &args.window)?;
            let table = generator_table(&z, &window, &field);
            (render_json_or_text(&table, cli.format, |t| {
                let mut s = String::from("a,h0,gens\n");
                for r in &t.records {
                    s.push_str(&format!("{},{},{}\n", join(&r.a.0), r.h0, r.gens));
                }
                s
            })?, EXIT_OK)
        }
        Command::Verify { which } => run_verifier(which, &campaign, cli.format, &field)?,
    };
    Ok((
        Output {
            text,
            path: cli.out,
        },
        code,
    ))
}

fn join(v: &[u32]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn load_scheme(
    args: &RegionsArgs,
    seed: u64,
    field: &PrimeField,
) -> Result<ZeroScheme, CliError> {
    match (&args.scheme, &args.space, args.points) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            let file: SchemeFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("malformed scheme JSON: {e}")))?;
            Ok(ZeroScheme::from_file(&file, field)?)
        }
        (None, Some(dims), Some(points)) => {
            let space = Space::new(dims.clone())?;
            Ok(match args.kind {
                KindArg::Reduced => {
                    ZeroScheme::random_general(&space, points, ComponentKind::Reduced, seed, field)
                }
                KindArg::Tangent => {
                    ZeroScheme::random_general(&space, points, ComponentKind::Tangent, seed, field)
                }
                KindArg::Double => {
                    ZeroScheme::random_general(&space, points, ComponentKind::Double, seed, field)
                }
                KindArg::Mixed => ZeroScheme::random_mixed(&space, points, seed, field),
            })
        }
        _ => Err(CliError::Input(
            "provide either --scheme FILE or --space and --points".into(),
        )),
    }
}

fn window_for(z: &ZeroScheme, upper: &Option<Vec<u32>>) -> Result<DegreeBox, CliError> {
    match upper {
        None => Ok(default_box(z)),
        Some(v) => {
            if v.len() != z.space().k() {
                return Err(CliError::Input(format!(
                    "--box needs {} entries for this space",
                    z.space().k()
                )));
            }
            Ok(DegreeBox::new(MultiIndex(v.clone())))
        }
    }
}

fn render_regions(table: &CohomologyTable, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => pretty(table)?,
        Format::Csv => table.to_csv(),
        Format::Text => {
            let mut s = String::new();
            s.push_str(&format!(
                "space {}  scheme degree {}  box {}\n",
                table.space, table.scheme_degree, table.box_upper
            ));
            if table.space.k() == 2 {
                s.push_str(&staircase(table));
            } else {
                for r in &table.degrees {
                    s.push_str(&format!(
                        "{}  N={} h0={} h1={}\n",
                        r.a, r.n, r.h0, r.h1
                    ));
                }
            }
            s.push_str(&format!(
                "minimal I0 degrees: {}\n",
                table
                    .i0_min
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            s.push_str(&format!("maximal rank: {}\n", table.maximal_rank));
            s
        }
    })
}

/// Text staircase of the two regions for k = 2: rows are a2 descending.
fn staircase(table: &CohomologyTable) -> String {
    let mut s = String::new();
    let u1 = table.box_upper.get(0);
    let u2 = table.box_upper.get(1);
    for a2 in (0..=u2).rev() {
        s.push_str(&format!("a2={a2:2} "));
        for a1 in 0..=u1 {
            let rec = table
                .lookup(&MultiIndex(vec![a1, a2]))
                .expect("box degree present");
            let symbol = match (rec.h0 > 0, rec.h1 > 0) {
                (true, true) => '#',
                (true, false) => 'o',
                (false, true) => 'x',
                (false, false) => '.',
            };
            s.push(symbol);
            s.push(' ');
        }
        s.push('\n');
    }
    s.push_str("      ");
    for a1 in 0..=u1 {
        s.push_str(&format!("{a1} "));
    }
    s.push_str("(a1)\n");
    s.push_str("o: h0>0 only  x: h1>0 only  #: both (maximal rank fails)  .: neither\n");
    s
}

fn pretty<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Input(format!("serialization failed: {e}")))
}

fn render_json_or_text<T: serde::Serialize>(
    value: &T,
    format: Format,
    csv: impl Fn(&T) -> String,
) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => pretty(value)?,
        Format::Csv => csv(value),
        Format::Text => pretty(value)?,
    })
}

fn verify_report_output(report: &VerifyReport, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => pretty(report)?,
        Format::Csv => {
            let mut s = String::from("seed,a,i,formula,computed,hypothesis_ok,pass\n");
            for run in &report.runs {
                for c in &run.checks {
                    s.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        run.seed,
                        join(&c.a.0),
                        c.i,
                        c.formula,
                        c.computed.map_or("".into(), |v| v.to_string()),
                        c.hypothesis_ok,
                        c.pass
                    ));
                }
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{}: {}/{} seeds passed (threshold {})\n",
                report.verifier, report.seeds_passed, report.seeds_total, report.threshold
            );
            for (seed, check) in report.failures() {
                s.push_str(&format!(
                    "  seed {seed}: a={} i={} formula={} computed={:?}\n",
                    check.a, check.i, check.formula, check.computed
                ));
            }
            s.push_str(if report.pass { "PASS\n" } else { "FAIL\n" });
            s
        }
    })
}

fn baselocus_output(c: &BaseLocusCampaign, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => pretty(c)?,
        Format::Csv => {
            let mut s = String::from("seed,h0,probes,failures,verdict\n");
            for (seed, r) in &c.reports {
                s.push_str(&format!(
                    "{},{},{},{},{:?}\n",
                    seed,
                    r.h0,
                    r.probes,
                    r.failures.len(),
                    r.verdict
                ));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{}: {}/{} seeds passed (threshold {})\n",
                c.verifier, c.seeds_passed, c.seeds_total, c.threshold
            );
            s.push_str(if c.pass { "PASS\n" } else { "FAIL\n" });
            s
        }
    })
}

fn one_based_slot(i: usize, k: usize) -> Result<usize, CliError> {
    if i == 0 || i > k {
        return Err(CliError::Input(format!(
            "factor index {i} out of range 1..={k}"
        )));
    }
    Ok(i - 1)
}

fn run_verifier(
    which: &Verifier,
    campaign: &Campaign,
    format: Format,
    field: &PrimeField,
) -> Result<(String, i32), CliError> {
    match which {
        Verifier::Bb1 { k, z, window } => {
            let space = Space::new(vec![1; *k])?;
            let window = match window {
                Some(v) => DegreeBox::new(MultiIndex(v.clone())),
                None => DegreeBox::cube(*k, *z as u32),
            };
            let report = verify_bb1(&space, *z, &window, campaign, field)?;
            let code = if report.pass {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            };
            Ok((verify_report_output(&report, format)?, code))
        }
        Verifier::P2p1 { space, z, window } => {
            let space = Space::new(space.clone())?;
            let window = match window {
                Some(v) => DegreeBox::new(MultiIndex(v.clone())),
                None => DegreeBox::cube(space.k(), *z as u32),
            };
            let report = verify_p2p1(&space, *z, &window, campaign, field)?;
            let code = if report.pass {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            };
            Ok((verify_report_output(&report, format)?, code))
        }
        Verifier::Bg2 { alpha, x } => {
            if *alpha == 0 {
                return Err(CliError::Input("--alpha must be positive".into()));
            }
            let y = Space::new(vec![1])?;
            let outer = MultiIndex(vec![*alpha as u32 - 1]);
            let report = verify_bg2(&y, &outer, *x, campaign, field)?;
            let code = if report.pass {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            };
            Ok((verify_report_output(&report, format)?, code))
        }
        Verifier::Ee2 { space, i, a } => {
            let space = Space::new(space.clone())?;
            let slot = one_based_slot(*i, space.k())?;
            let report = verify_ee2(&space, slot, &MultiIndex(a.clone()), campaign, field)?;
            let code = if report.pass {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            };
            Ok((verify_report_output(&report, format)?, code))
        }
        Verifier::Pbg1 {
            space,
            slot,
            outer,
            t,
        } => {
            let space = Space::new(space.clone())?;
            let slot = one_based_slot(*slot, space.k())?;
            let outer = MultiIndex(outer.clone());
            let alpha = space.without_factor(slot).piece_dim(&outer);
            let bound = alpha * crate::ring::binomial(*t as usize + 2, 2);
            let s_values: Vec<usize> = (0..bound + 2).collect();
            let report = verify_pbg1(&space, slot, &outer, *t, &s_values, campaign, field)?;
            let code = if report.pass {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            };
            Ok((verify_report_output(&report, format)?, code))
        }
        Verifier::F3 {
            space,
            a,
            s,
            probes,
        } => {
            let space = Space::new(space.clone())?;
            let c = verify_f3(&space, *s, &MultiIndex(a.clone()), *probes, campaign, field)?;
            let code = if c.pass {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            };
            Ok((baselocus_output(&c, format)?, code))
        }
        Verifier::F4 {
            space,
            a,
            s,
            i,
            probes,
        } => {
            let space = Space::new(space.clone())?;
            let slot = one_based_slot(*i, space.k())?;
            let c = verify_f4(
                &space,
                *s,
                &MultiIndex(a.clone()),
                slot,
                *probes,
                campaign,
                field,
            )?;
            let code = if c.pass {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            };
            Ok((baselocus_output(&c, format)?, code))
        }
        Verifier::Prop0bg1 { space, count, deg } => {
            let space = Space::new(space.clone())?;
            let report = verify_prop0bg1(&space, *count, *deg, campaign.base_seed, field);
            let code = if report.pass {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            };
            Ok((
                render_json_or_text(&report, format, |r| {
                    format!(
                        "schemes,steps,monotone_violations,fiber_equality_violations,stabilization_mismatches,pass\n{},{},{},{},{},{}\n",
                        r.schemes, r.steps_checked, r.monotone_violations,
                        r.fiber_equality_violations, r.stabilization_mismatches, r.pass
                    )
                })?,
                code,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(args: &[&str]) -> (String, i32) {
        let mut buf = Vec::new();
        let code = run(args.iter().map(|s| s.to_string()), &mut buf);
        (String::from_utf8(buf).unwrap(), code)
    }

    #[test]
    fn regions_of_random_points_pass() {
        let (out, code) = run_to_string(&[
            "multigraded",
            "regions",
            "--space",
            "1,1",
            "--points",
            "3",
            "--box",
            "3,3",
        ]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"maximal_rank\": true"));
        assert!(out.contains("\"I0min\""));
    }

    #[test]
    fn composite_modulus_is_a_config_error() {
        let (out, code) = run_to_string(&[
            "multigraded",
            "--modulus",
            "1048577",
            "regions",
            "--space",
            "1,1",
            "--points",
            "1",
        ]);
        assert_eq!(code, EXIT_CONFIG, "{out}");
    }

    #[test]
    fn unknown_verifier_is_a_usage_error() {
        let (_, code) = run_to_string(&["multigraded", "verify", "nonsense"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn identical_runs_are_byte_identical() {
        let args = [
            "multigraded",
            "--seeds",
            "3",
            "--threshold",
            "3",
            "verify",
            "bb1",
            "--k",
            "2",
            "--z",
            "3",
        ];
        let (a, code_a) = run_to_string(&args);
        let (b, code_b) = run_to_string(&args);
        assert_eq!(code_a, EXIT_OK);
        assert_eq!(code_a, code_b);
        assert_eq!(a, b);
        assert!(!a.contains("time"));
    }

    #[test]
    fn staircase_renders_for_two_factors() {
        let (out, code) = run_to_string(&[
            "multigraded",
            "--format",
            "text",
            "regions",
            "--space",
            "1,1",
            "--points",
            "3",
            "--box",
            "3,3",
        ]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("maximal rank: true"));
        assert!(out.contains("a2= 0"));
    }
}
