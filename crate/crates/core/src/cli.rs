//! Command-line frontend. The `lieimage` binary is a thin wrapper over [`run`].

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::census::{self, CensusError, VerificationReport};
use crate::engine::{self, EngineError, ImageDescriptor, Strategy};
use crate::genset::{self, GensetError};
use crate::gf::{Field, GfError};
use crate::lieword::{self, FamilyParams, LieWord, WordError};
use crate::sl2::Sl2Element;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Genset(#[from] GensetError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug)]
#[command(name = "lieimage", version, about = "Images of Lie word maps on sl2(F_q), q odd")]
pub struct Cli {
    /// Worker threads for the parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the image of a word as a union of orbits.
    Image(ImageArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Orbit and value counts.
    Census(CensusArgs),
    /// Generating tuples and one-and-a-half generation.
    Ktuple(KtupleArgs),
    /// Parse a word and echo its canonical form.
    Parse(ParseArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Field order (an odd prime power).
    #[arg(long, conflicts_with_all = ["p", "r"])]
    pub q: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, requires = "p")]
    pub r: Option<u32>,
    /// Monic modulus coefficients, low to high, e.g. `1,0,1`.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u64>>,
}

impl FieldArgs {
    pub fn field(&self) -> Result<Field, CliError> {
        match (self.q, self.p) {
            (Some(q), None) if self.modulus.is_none() => Ok(Field::with_order(q)?),
            (Some(q), None) => {
                let (p, r) = crate::gf::prime_power(q)?;
                Ok(Field::new(p, r, self.modulus.as_deref())?)
            }
            (None, Some(p)) => Ok(Field::new(p, self.r.unwrap_or(1), self.modulus.as_deref())?),
            _ => Err(CliError::Usage("give the field as --q or --p [--r] [--modulus]".into())),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct WordArgs {
    /// Word text, e.g. `ad(x1,2,x2) - ad(x1,10,x2)`.
    #[arg(long, conflicts_with = "family")]
    pub word: Option<String>,
    /// Named family: diff, comm, wn, wmn, w0mn.
    #[arg(long, requires = "params")]
    pub family: Option<String>,
    /// Family parameters, e.g. `i=4,j=2,pairs=2:1`.
    #[arg(long)]
    pub params: Option<String>,
}

impl WordArgs {
    pub fn resolve(&self) -> Result<(LieWord, Option<FamilyParams>), CliError> {
        match (&self.word, &self.family) {
            (Some(text), None) => Ok((lieword::parse(text)?, None)),
            (None, Some(family)) => {
                let p = FamilyParams::parse(family, self.params.as_deref().unwrap_or(""))?;
                Ok((p.build()?, Some(p)))
            }
            _ => Err(CliError::Usage("give exactly one of --word or --family".into())),
        }
    }
}

#[derive(Args, Debug)]
pub struct ImageArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub word: WordArgs,
    #[arg(long, default_value = "reduced", value_parser = parse_strategy)]
    pub strategy: Strategy,
    /// Enumeration cap (overrides LIEIMAGE_BUDGET).
    #[arg(long)]
    pub budget: Option<u64>,
    /// Also report the determinant value counts.
    #[arg(long)]
    pub spectrum: bool,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    Strategy::parse(s).ok_or_else(|| format!("unknown strategy {s:?} (brute, reduced, closed)"))
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated ids, or `all`.
    #[arg(long, default_value = "all")]
    pub props: String,
    #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5, 7, 9, 11, 13])]
    pub q: Vec<u64>,
    /// Extra `key=value` parameters passed to every suite.
    #[arg(long)]
    pub params: Option<String>,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// N_S(a) for one `a`, or `all`.
    #[arg(long)]
    pub ns: Option<String>,
    /// Fiber table of x²(1−4x)².
    #[arg(long)]
    pub salpha: bool,
    /// Values missed by x²(1−4x)²·y^d, given as `d=7`.
    #[arg(long)]
    pub missed_values: Option<String>,
}

#[derive(Args, Debug)]
pub struct KtupleArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct ParseArgs {
    #[arg(long)]
    pub word: String,
}

/// Runs `cli`, writing to `out`. Returns whether every check passed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    if let Some(jobs) = cli.jobs {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match &cli.command {
        Command::Image(a) => cmd_image(a, cli.format, out),
        Command::Verify(a) => cmd_verify(a, cli.format, out),
        Command::Census(a) => cmd_census(a, cli.format, out),
        Command::Ktuple(a) => cmd_ktuple(a, cli.format, out),
        Command::Parse(a) => cmd_parse(a, cli.format, out),
    }
}

fn json_line(out: &mut dyn Write, v: &impl Serialize) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).map_err(|e| CliError::Usage(e.to_string()))?)?;
    Ok(())
}

pub fn compute_image(a: &ImageArgs) -> Result<ImageDescriptor, CliError> {
    let field = a.field.field()?;
    let (w, family) = a.word.resolve()?;
    let budget = a.budget.unwrap_or_else(engine::default_budget);
    Ok(match a.strategy {
        Strategy::BruteForce => engine::image_bruteforce_with_budget(&w, field, budget)?,
        Strategy::Reduced => engine::image_reduced_with(&w, field, 1, budget)?,
        Strategy::ClosedForm => {
            let family = family.ok_or_else(|| CliError::Usage("the closed strategy needs --family".into()))?;
            engine::closed_form_image(&family, field)?
        }
    })
}

fn cmd_image(a: &ImageArgs, format: Format, out: &mut dyn Write) -> Result<bool, CliError> {
    let img = compute_image(a)?;
    let spectrum = if a.spectrum {
        let (w, _) = a.word.resolve()?;
        let field = a.field.field()?;
        let strategy = if a.strategy == Strategy::ClosedForm { Strategy::Reduced } else { a.strategy };
        let budget = a.budget.unwrap_or_else(engine::default_budget);
        Some(engine::det_spectrum_with(&w, field, strategy, budget)?)
    } else {
        None
    };
    match format {
        Format::Json => {
            let mut v = img.to_json();
            if let Some(s) = &spectrum {
                v["spectrum"] = s
                    .counts
                    .iter()
                    .map(|(d, n)| json!({"det": d.to_string(), "count": n}))
                    .collect();
            }
            json_line(out, &v)?;
        }
        Format::Csv => {
            if let Some(s) = &spectrum {
                write!(out, "{}", s.to_csv()?)?;
            } else {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["kind", "det", "orbit_size"])?;
                for l in &img.labels {
                    let det = l.det().map(|d| d.to_string()).unwrap_or_default();
                    w.write_record([l.kind().as_str(), &det, &l.orbit_size(img.q()).to_string()])?;
                }
                out.write_all(&w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)?;
            }
        }
        Format::Pretty => {
            writeln!(out, "word: {}", img.word)?;
            writeln!(out, "q = {}, strategy {}", img.q(), img.strategy)?;
            for l in &img.labels {
                writeln!(out, "  {l}")?;
            }
            writeln!(out, "{}; {} elements", img.counts(), img.element_count())?;
            if let Some(s) = &spectrum {
                writeln!(out, "det spectrum ({} evaluations):", s.total())?;
                for (d, n) in &s.counts {
                    writeln!(out, "  det {d}: {n}")?;
                }
            }
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct VerifyOutcome {
    id: String,
    q: u64,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<VerificationReport>,
}

fn cmd_verify(a: &VerifyArgs, format: Format, out: &mut dyn Write) -> Result<bool, CliError> {
    let all = a.props.trim() == "all";
    let ids: Vec<&str> = if all {
        census::VERIFY_IDS.to_vec()
    } else {
        a.props.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
    };
    let mut outcomes = Vec::new();
    let mut ok = true;
    for &q in &a.q {
        let field = Field::with_order(q)?;
        for id in &ids {
            let (status, error, report) = match census::verify(id, field, a.params.as_deref()) {
                Ok(r) => (if r.pass { "pass" } else { "fail" }, None, Some(r)),
                Err(CensusError::InapplicableAtQ { .. }) if all => ("skip", None, None),
                Err(e @ CensusError::UnknownId(_)) => return Err(e.into()),
                Err(e @ CensusError::InapplicableAtQ { .. }) => ("inapplicable", Some(e.to_string()), None),
                Err(e) => ("error", Some(e.to_string()), None),
            };
            ok &= matches!(status, "pass" | "skip");
            let outcome = VerifyOutcome { id: id.to_string(), q, status, error, report };
            if format == Format::Pretty {
                write_outcome(out, &outcome)?;
            }
            outcomes.push(outcome);
        }
    }
    match format {
        Format::Json => json_line(out, &outcomes)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "q", "status", "cases", "failed", "wall_ms"])?;
            for o in &outcomes {
                let (cases, failed, ms) = o.report.as_ref().map_or((0, 0, 0.0), |r| {
                    (r.cases.len(), r.failed_cases().count(), r.wall_ms)
                });
                w.write_record([
                    o.id.clone(),
                    o.q.to_string(),
                    o.status.to_string(),
                    cases.to_string(),
                    failed.to_string(),
                    format!("{ms:.1}"),
                ])?;
            }
            out.write_all(&w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)?;
        }
        Format::Pretty => {
            let count = |s: &str| outcomes.iter().filter(|o| o.status == s).count();
            writeln!(
                out,
                "{} pass, {} fail, {} skipped, {} errors",
                count("pass"),
                count("fail"),
                count("skip"),
                count("error") + count("inapplicable")
            )?;
        }
    }
    Ok(ok)
}

fn write_outcome(out: &mut dyn Write, o: &VerifyOutcome) -> Result<(), CliError> {
    let tag = o.status.to_uppercase();
    match (&o.report, &o.error) {
        (Some(r), _) => {
            writeln!(out, "{tag:<5} {} q={} ({} cases, {:.0} ms)", o.id, o.q, r.cases.len(), r.wall_ms)?;
            for c in &r.cases {
                if !c.pass || c.notes.iter().any(|n| n.starts_with("missed")) {
                    writeln!(out, "      {} {}: {}", if c.pass { "ok" } else { "FAIL" }, c.case, c.notes.join("; "))?;
                }
            }
        }
        (None, Some(e)) => writeln!(out, "{tag:<5} {} q={}: {e}", o.id, o.q)?,
        (None, None) => writeln!(out, "{tag:<5} {} q={}", o.id, o.q)?,
    }
    Ok(())
}

fn cmd_census(a: &CensusArgs, format: Format, out: &mut dyn Write) -> Result<bool, CliError> {
    let field = a.field.field()?;
    let mut doc = serde_json::Map::new();
    let mut ok = true;
    let mut lines = Vec::new();
    let orbits = census::orbit_census(field);
    ok &= orbits.agree;
    lines.push(format!(
        "orbits (zero, nilpotent, split, anisotropic): {:?}, oracle {:?}",
        orbits.formula, orbits.oracle
    ));
    doc.insert("orbits".into(), serde_json::to_value(&orbits).expect("serializes"));
    if let Some(arg) = &a.ns {
        let targets: Vec<_> = if arg == "all" {
            field.elements().filter(|x| !x.is_zero()).collect()
        } else {
            vec![field.parse_element(arg)?]
        };
        let mut rows = Vec::new();
        for t in targets {
            let r = census::n_s(t)?;
            ok &= r.agree;
            lines.push(format!("N_S({t}) = {} (oracle {})", r.formula[0], r.oracle[0]));
            rows.push(json!({"a": t.to_string(), "formula": r.formula[0], "oracle": r.oracle[0]}));
        }
        doc.insert("n_s".into(), rows.into());
    }
    if a.salpha {
        let r = census::s_alpha_table(field);
        ok &= r.agree;
        let t = r.oracle;
        lines.push(format!("s_alpha = ({},{},{},{},{}), formula {:?}, max fiber {}", t[0], t[1], t[2], t[3], t[4], r.formula, r.max_fiber));
        doc.insert("s_alpha".into(), serde_json::to_value(&r).expect("serializes"));
    }
    if let Some(arg) = &a.missed_values {
        let d: u64 = arg
            .trim_start_matches("d=")
            .parse()
            .map_err(|_| CliError::Usage(format!("--missed-values expects d=<integer>, got {arg:?}")))?;
        let n = census::missed_values_count(field, d);
        lines.push(format!("x²(1−4x)²·y^{d} misses {n} values"));
        doc.insert("missed_values".into(), json!({"d": d, "missed": n}));
    }
    match format {
        Format::Json => json_line(out, &doc)?,
        _ => {
            writeln!(out, "q = {}", field.q())?;
            for l in lines {
                writeln!(out, "{l}")?;
            }
        }
    }
    Ok(ok)
}

fn cmd_ktuple(a: &KtupleArgs, format: Format, out: &mut dyn Write) -> Result<bool, CliError> {
    let field = a.field.field()?;
    let report = genset::tuple_orbit_census(field, a.k)?;
    let halves = genset::is_one_and_a_half_generated(field)?;
    let (h, e, f) = (Sl2Element::h(field), Sl2Element::e(field), Sl2Element::f(field));
    let distinct = !genset::same_tuple_orbit(&[e, f], &[h, e + f]);
    match format {
        Format::Json => json_line(
            out,
            &json!({
                "report": report,
                "one_and_a_half_generated": halves.holds,
                "k_of_L": if halves.holds { 2 } else { 3 },
                "ef_and_h_eplusf_distinct": distinct,
            }),
        )?,
        Format::Csv => write!(out, "{}", report.representatives_csv()?)?,
        Format::Pretty => {
            writeln!(out, "q = {}, k = {}", report.q, report.k)?;
            writeln!(out, "tuples {}, generating {}", report.total_tuples, report.generating_tuples)?;
            writeln!(out, "|Aut| = {}, orbits r = {}", report.aut_order, report.orbit_count)?;
            writeln!(out, "free action: {}", report.free)?;
            writeln!(out, "one-and-a-half generated: {}", halves.holds)?;
            writeln!(out, "(e,f) and (h,e+f) in distinct orbits: {distinct}")?;
        }
    }
    Ok(report.free && halves.holds)
}

fn cmd_parse(a: &ParseArgs, format: Format, out: &mut dyn Write) -> Result<bool, CliError> {
    let w = lieword::parse(&a.word)?;
    match format {
        Format::Json => json_line(
            out,
            &json!({"canonical": w.to_string(), "arity": w.arity(), "size": w.size(), "ast": format!("{w:?}")}),
        )?,
        _ => {
            writeln!(out, "{w}")?;
            writeln!(out, "{w:#?}")?;
        }
    }
    Ok(true)
}
