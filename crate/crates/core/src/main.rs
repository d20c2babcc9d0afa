use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use homsurf::actions::d1::classify_d1_subgroup_with_bound;
use homsurf::actions::{family_action, FamilyId};
use homsurf::bbeta::{classify_pi_with_bound, example_quotients, rgd_quotients, BBeta1Label, BBeta1Quotient, GdElement, RgdElement};
use homsurf::catalogue::enumerate_catalogue;
use homsurf::divisor::Divisor;
use homsurf::error::Error;
use homsurf::points::AffinePoint;
use homsurf::scalar::Cx;
use homsurf::tolerance::DENOMINATOR_BOUND;
use homsurf::uaff::{classify_subgroup_with_bound, product_cover, D2Label, UAffElement};
use homsurf::verify::{verify_all, verify_family, VerificationReport};
use homsurf::C64;

#[derive(Parser)]
#[command(name = "homsurf", version, about = "Transitive holomorphic Lie group actions on complex surfaces")]
struct Cli {
    /// Denominator bound for rational reconstruction in `classify`.
    #[arg(long, global = true, default_value_t = DENOMINATOR_BOUND)]
    denominator_bound: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the rows of the big table.
    Catalogue {
        /// Keep labels starting with this prefix.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Classify a discrete subgroup given by a generator file.
    Classify { file: PathBuf },
    /// Apply a group element to a point.
    Act {
        /// Family label, or a JSON file holding a family with parameters.
        #[arg(long)]
        family: String,
        #[arg(long)]
        element: PathBuf,
        #[arg(long)]
        point: PathBuf,
        /// Quotient label or JSON file; the result is pushed through its covering map.
        #[arg(long)]
        cover: Option<String>,
    },
    /// Run the seeded verification suites.
    Verify {
        /// A family label or `all`.
        #[arg(default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Input problems exit with 2, failed verification with 1.
enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Catalogue { filter, json } => {
            let rows = enumerate_catalogue(filter.as_deref());
            if json {
                emit(&serde_json::to_string_pretty(&rows)?);
            } else {
                for r in rows {
                    emit(&format!("{}\t{}\t{}\t{}", r.label, r.surface, r.group, r.stabilizer));
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Classify { file } => {
            let out = classify(&read_json(&file)?, cli.denominator_bound)?;
            emit(&serde_json::to_string_pretty(&out)?);
            Ok(Outcome::Ok)
        }
        Command::Act { family, element, point, cover } => {
            let out = act(&family, &read_json(&element)?, &read_json(&point)?, cover.as_deref())?;
            emit(&serde_json::to_string_pretty(&out)?);
            Ok(Outcome::Ok)
        }
        Command::Verify { family, samples, seed, json } => {
            let reports = if family == "all" {
                verify_all(samples, seed)?
            } else {
                vec![verify_family(&parse_family(&family)?.0, samples, seed)?]
            };
            print_reports(&reports, json)?;
            Ok(if reports.iter().all(|r| r.passed) { Outcome::Ok } else { Outcome::Failed })
        }
    }
}

/// Write a line to stdout; a closed pipe is not an error.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_reports(reports: &[VerificationReport], json: bool) -> anyhow::Result<()> {
    if json {
        emit(&serde_json::to_string_pretty(reports)?);
        return Ok(());
    }
    for r in reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        emit(&format!("{status} {:<5} checks={} samples={} max_error={:.3e}", r.family, r.checks.len(), r.samples, r.max_error));
        for c in r.checks.iter().filter(|c| !c.passed) {
            emit(&format!("    {}: {}", c.check, c.first_failure.as_deref().unwrap_or("failed")));
        }
    }
    Ok(())
}

#[derive(Deserialize)]
struct GeneratorFile {
    ambient: String,
    generators: Vec<[Cx; 2]>,
    #[serde(default)]
    divisor: Option<Divisor>,
}

fn classify(input: &Value, bound: u64) -> anyhow::Result<Value> {
    let f: GeneratorFile = serde_json::from_value(input.clone()).context("generator file")?;
    let pairs: Vec<[C64; 2]> = f.generators.iter().map(|[a, b]| [C64::from(*a), C64::from(*b)]).collect();
    Ok(match f.ambient.as_str() {
        "C2" => {
            let r = classify_d1_subgroup_with_bound(&pairs, bound)?;
            json!({"ambient": "C2", "label": r.label.as_str(), "classification": r})
        }
        "uaff" => {
            let gens: Vec<UAffElement> = pairs.iter().map(|[a, b]| UAffElement::new(*a, *b)).collect();
            let r = classify_subgroup_with_bound(&gens, bound)?;
            json!({"ambient": "uaff", "label": r.label.name(), "classification": r})
        }
        "qd" => {
            let d = f.divisor.ok_or_else(|| anyhow!("ambient qd needs a divisor"))?;
            let gens: Vec<_> = pairs.iter().map(|[p, s]| homsurf::bbeta::CentralizerElement::new(*p, *s)).collect();
            let r = classify_pi_with_bound(&gens, &d, bound)?;
            json!({"ambient": "qd", "label": r.label.name(), "classification": r})
        }
        other => bail!("unknown ambient {other:?}; expected C2, uaff or qd"),
    })
}

/// The family and whether its parameters were given explicitly.
fn parse_family(arg: &str) -> anyhow::Result<(FamilyId, bool)> {
    let path = Path::new(arg);
    if path.is_file() {
        let f: FamilyId = serde_json::from_value(read_json(path)?).context("family file")?;
        return Ok((f, true));
    }
    Ok((arg.parse()?, false))
}

/// A bare label becomes `{tag: label}`; anything else is read as a JSON file.
fn tagged(arg: &str, tag: &str) -> anyhow::Result<Value> {
    let path = Path::new(arg);
    if path.is_file() {
        return read_json(path);
    }
    Ok(json!({ tag: arg }))
}

fn act(family: &str, element: &Value, point: &Value, cover: Option<&str>) -> anyhow::Result<Value> {
    let (fam, explicit) = parse_family(family)?;
    let Some(cover) = cover else {
        return Ok(family_action(&fam)?.act_json(element, point)?);
    };
    match &fam {
        FamilyId::BBeta1 { divisor } => {
            let q = if Path::new(cover).is_file() {
                let label: BBeta1Label = serde_json::from_value(read_json(Path::new(cover))?).context("Bβ1 cover label")?;
                BBeta1Quotient::new(label, divisor.clone())?
            } else {
                let q = example_quotients()
                    .into_iter()
                    .find(|q| q.label().name() == cover)
                    .ok_or_else(|| anyhow!("no example quotient {cover}"))?;
                if explicit && q.divisor() != divisor {
                    return Err(Error::FamilyMismatch("example cover divisor differs from the family divisor".into()).into());
                }
                q
            };
            let g: GdElement = serde_json::from_value(element.clone()).context("element")?;
            let x: AffinePoint = serde_json::from_value(point.clone()).context("point")?;
            Ok(serde_json::to_value(q.cover(&homsurf::bbeta::gd_act(&g, &x)))?)
        }
        FamilyId::BBeta2 { divisor } => {
            let wanted = tagged(cover, "example")?;
            if wanted["example"] != "Bβ2′" {
                bail!("Bβ2 covers: expected Bβ2′");
            }
            let n = wanted.get("n").and_then(Value::as_u64).unwrap_or(1) as u32;
            let q = rgd_quotients(divisor, n)?;
            let g: RgdElement = serde_json::from_value(element.clone()).context("element")?;
            let x: AffinePoint = serde_json::from_value(point.clone()).context("point")?;
            Ok(serde_json::to_value(q.cover(&homsurf::bbeta::rgd_act(&g, &x)))?)
        }
        FamilyId::D2 => {
            let label: D2Label = serde_json::from_value(tagged(cover, "label")?).context("D2 cover label")?;
            let y = family_action(&fam)?.act_json(element, point)?;
            let y: UAffElement = serde_json::from_value(y)?;
            Ok(serde_json::to_value(product_cover(&label, &y)?)?)
        }
        other => Err(Error::FamilyMismatch(format!("no covering maps for {other}")).into()),
    }
}
