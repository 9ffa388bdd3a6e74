//! Command-line front end: `verify` emits a certificate, `survey` tabulates
//! a range of powers.
//!
//! Exit codes: 0 when every executed check holds, 1 when a check fails, 2 on
//! usage errors and exceeded resource bounds.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::certificate::{
    cohomology_within_bounds, formal_within_bounds, label, replay_proof, verdict_label, Certificate, ReplayOptions,
    StepStatus, Verdict,
};
use crate::diagonal::AmbientParams;
use crate::error::{Error, Result};
use crate::grading::{prove_empty_pigeonhole, PigeonholeOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_MAX_DIM: u128 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "moddiag", version, about = "Exact verification of modified diagonal classes on powers of abelian varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Replay the vanishing argument for one (g, m) and emit a certificate.
    Verify {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        power: i64,
        #[arg(long, value_delimiter = ',', default_value = "formal,grading,cohomology")]
        layers: Vec<Layer>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_dim: u128,
    },
    /// Tabulate m = 1..power-max for one genus.
    Survey {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        power_max: i64,
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_dim: u128,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Layer {
    Formal,
    Grading,
    Cohomology,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyRequest {
    pub g: i64,
    pub m: i64,
    pub layers: Vec<Layer>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub max_dim: u128,
}

impl VerifyRequest {
    pub fn new(g: i64, m: i64) -> Self {
        Self {
            g,
            m,
            layers: vec![Layer::Formal, Layer::Grading, Layer::Cohomology],
            format: Format::Json,
            out: None,
            max_dim: DEFAULT_MAX_DIM,
        }
    }

    fn options(&self) -> ReplayOptions {
        ReplayOptions {
            run_formal: self.layers.contains(&Layer::Formal),
            run_grading: self.layers.contains(&Layer::Grading),
            run_cohomology: self.layers.contains(&Layer::Cohomology),
            max_dim: self.max_dim,
            ..ReplayOptions::default()
        }
    }
}

/// Runs the replay for `req` and renders the certificate.
pub fn cmd_verify(req: &VerifyRequest) -> Result<(Certificate, String)> {
    if req.layers.is_empty() {
        return Err(Error::InvalidMap("at least one layer is required".into()));
    }
    let cert = replay_proof(req.g, req.m, &req.options())?;
    let rendered = match req.format {
        Format::Json => cert.to_json(),
        Format::Text => cert.to_text(),
    };
    Ok((cert, rendered))
}

pub fn exit_code(cert: &Certificate) -> i32 {
    if cert.checks_hold() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub m: usize,
    pub lemma_i: String,
    pub lemma_ii: String,
    pub survivors: String,
    pub cohomology: String,
    pub predicted_vanishing: bool,
    pub result: String,
}

pub fn cmd_survey(g: i64, power_max: i64, max_dim: u128) -> Result<Vec<SurveyRow>> {
    AmbientParams::new(g, 1)?;
    if power_max < 1 {
        return Err(Error::InvalidPower(power_max));
    }
    (1..=power_max).map(|m| survey_row(g, m, max_dim)).collect()
}

fn survey_row(g: i64, m: i64, max_dim: u128) -> Result<SurveyRow> {
    let ambient = AmbientParams::new(g, m)?;
    let run_formal = formal_within_bounds(ambient.m(), max_dim);
    let run_cohomology = cohomology_within_bounds(&ambient, max_dim);
    let options = ReplayOptions {
        run_formal,
        run_grading: true,
        run_cohomology,
        max_dim,
        ..ReplayOptions::default()
    };
    let cert = replay_proof(g, m, &options)?;
    let status = |id: &str| cert.step(id).map(|s| label(s.status)).unwrap_or_default();

    let filter = cert.step("grading_filter");
    let survivors = match filter {
        Some(step) if step.status != StepStatus::Skipped => step.witness["survivor_count"].to_string(),
        _ => match prove_empty_pigeonhole(ambient.g(), ambient.m()) {
            PigeonholeOutcome::Counterexample { survivor_count, .. } => survivor_count,
            PigeonholeOutcome::Proof { .. } => "0".to_string(),
        },
    };
    let cohomology = match cert.step("cohomology") {
        Some(step) if step.status == StepStatus::Skipped => "SKIPPED".to_string(),
        Some(step) if step.status == StepStatus::Fail => "FAIL".to_string(),
        Some(step) if step.witness["zero"] == true => "ZERO".to_string(),
        Some(_) => "NONZERO".to_string(),
        None => "SKIPPED".to_string(),
    };
    Ok(SurveyRow {
        m: ambient.m(),
        lemma_i: status("lemma_i"),
        lemma_ii: status("lemma_ii"),
        survivors,
        cohomology,
        predicted_vanishing: ambient.m() > ambient.two_g(),
        result: verdict_label(cert.result),
    })
}

pub fn render_survey(g: i64, rows: &[SurveyRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "survey g={g} (theorem predicts vanishing for m >= {})", 2 * g + 1);
    let _ = writeln!(
        out,
        "{:>3}  {:<9} {:<9} {:>9}  {:<10} {:<9} result",
        "m", "lemma_i", "lemma_ii", "survivors", "cohomology", "predicted"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>3}  {:<9} {:<9} {:>9}  {:<10} {:<9} {}",
            r.m,
            r.lemma_i,
            r.lemma_ii,
            r.survivors,
            r.cohomology,
            if r.predicted_vanishing { "vanish" } else { "-" },
            r.result
        );
    }
    out
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    match cli.command {
        Command::Verify {
            genus,
            power,
            mut layers,
            format,
            out,
            max_dim,
        } => {
            layers.sort();
            layers.dedup();
            let req = VerifyRequest {
                g: genus,
                m: power,
                layers,
                format,
                out,
                max_dim,
            };
            let (cert, rendered) = match cmd_verify(&req) {
                Ok(x) => x,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            match &req.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered.as_bytes()) {
                        let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                        return EXIT_USAGE;
                    }
                    let _ = writeln!(stdout, "result: {} ({})", verdict_label(cert.result), path.display());
                }
                None => {
                    let _ = stdout.write_all(rendered.as_bytes());
                }
            }
            if cert.result == Verdict::Inconclusive {
                let _ = writeln!(stderr, "note: certificate is inconclusive; no claim about vanishing is made");
            }
            exit_code(&cert)
        }
        Command::Survey {
            genus,
            power_max,
            max_dim,
        } => match cmd_survey(genus, power_max, max_dim) {
            Ok(rows) => {
                let _ = stdout.write_all(render_survey(genus, &rows).as_bytes());
                if rows.iter().any(|r| r.result == verdict_label(Verdict::Fail)) {
                    EXIT_FAILED
                } else {
                    EXIT_OK
                }
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_USAGE
            }
        },
    }
}
