use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use salemlab_core::experiment::{
    run_cyclic_scaling, run_ramification_survey, run_salem_enumeration, run_two_cover, SurveyRow, TwoCoverParams,
};
use salemlab_core::salem::{compare_tau, SalemReport, CERTIFICATE_BITS};

use crate::config::{ExperimentConfig, ExperimentKind, Format};
use crate::{CliError, EXIT_OK, EXIT_VIOLATION};

/// Largest deviation from the closed form tolerated in the cyclic-cover scan.
pub const CYCLIC_TOLERANCE: f64 = 1e-9;

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn render<T: Serialize>(rows: &[T], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(to_json(rows)),
        Format::Csv => to_csv(rows),
    }
}

pub fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|source| CliError::Write { path: path.into(), source })
}

/// `results.csv` -> `results.<suffix>.json`.
pub fn sibling(out: &Path, suffix: &str) -> PathBuf {
    out.with_extension(format!("{suffix}.json"))
}

/// Writes the main output to `config.out` (or `stdout`); with an output file,
/// the summary goes to a sibling `.summary.json` and is echoed to `stdout`.
fn emit(
    config: &ExperimentConfig,
    main: &str,
    extras: &[(&str, String)],
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    match &config.out {
        Some(out) => {
            write_file(out, main)?;
            for (suffix, content) in extras {
                write_file(&sibling(out, suffix), content)?;
            }
            if let Some((_, summary)) = extras.iter().find(|(s, _)| *s == "summary") {
                stdout.write_all(summary.as_bytes()).map_err(CliError::Stdout)?;
            }
        }
        None => stdout.write_all(main.as_bytes()).map_err(CliError::Stdout)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct CyclicSummary {
    m_min: usize,
    m_max: usize,
    slope: f64,
    max_abs_error: f64,
    tolerance: f64,
}

#[derive(Serialize)]
struct EnumerationSummary<'a> {
    half_degree: usize,
    height: u32,
    count: usize,
    smallest: Option<&'a SalemReport>,
}

#[derive(Serialize)]
struct SurveySummary {
    half_degree: usize,
    height: u32,
    prime_bound: u64,
    count: usize,
    failures: usize,
}

/// One flat CSV row of the ramification survey.
#[derive(Serialize)]
struct SurveyCsvRow<'a> {
    p: &'a str,
    q: &'a str,
    tau_lo: &'a str,
    tau_hi: &'a str,
    trace_field_degree: usize,
    archimedean_count: Option<&'a str>,
    finite_p: Option<&'a str>,
    finite_a: Option<&'a str>,
    delta_residue: Option<&'a str>,
    parity_ok: Option<bool>,
    error: Option<&'a str>,
}

impl<'a> From<&'a SurveyRow> for SurveyCsvRow<'a> {
    fn from(r: &'a SurveyRow) -> Self {
        let plan = r.plan.as_ref();
        let prime = plan.and_then(|p| p.finite_prime.as_ref());
        Self {
            p: &r.salem.p,
            q: &r.salem.q,
            tau_lo: &r.salem.tau_lo,
            tau_hi: &r.salem.tau_hi,
            trace_field_degree: r.trace_field_degree,
            archimedean_count: plan.map(|p| p.archimedean_count.as_str()),
            finite_p: prime.map(|f| f.p.as_str()),
            finite_a: prime.map(|f| f.a.as_str()),
            delta_residue: plan.and_then(|p| p.delta_residue.as_deref()),
            parity_ok: plan.map(|p| p.parity_ok),
            error: r.error.as_deref(),
        }
    }
}

/// Runs one configured experiment, writes its files and returns the exit code.
pub fn run(config: &ExperimentConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    config.validate()?;
    let format = config.resolved_format();
    let jobs = config.jobs;
    match config.experiment {
        ExperimentKind::TwoCover { vertices, instances, edge_probability } => {
            let params = TwoCoverParams { seed: config.seed, vertices, instances, edge_probability };
            let result = run_two_cover(&params, jobs).map_err(|e| CliError::Input(e.to_string()))?;
            let main = render(&result.rows, format)?;
            let extras = [("summary", to_json(&result.summary)), ("violations", to_json(&result.violations))];
            emit(config, &main, &extras, stdout)?;
            Ok(if result.has_violations() { EXIT_VIOLATION } else { EXIT_OK })
        }
        ExperimentKind::CyclicScaling { m_min, m_max } => {
            let ms: Vec<usize> = (m_min..=m_max).collect();
            let report = run_cyclic_scaling(&ms, jobs).map_err(|e| CliError::Input(e.to_string()))?;
            let max_abs_error = report.rows.iter().map(|r| r.abs_error).fold(0.0, f64::max);
            let summary =
                CyclicSummary { m_min, m_max, slope: report.slope, max_abs_error, tolerance: CYCLIC_TOLERANCE };
            let main = render(&report.rows, format)?;
            emit(config, &main, &[("summary", to_json(&summary))], stdout)?;
            Ok(if max_abs_error > CYCLIC_TOLERANCE { EXIT_VIOLATION } else { EXIT_OK })
        }
        ExperimentKind::SalemEnumeration { half_degree, height } => {
            let certs = run_salem_enumeration(half_degree, height, jobs);
            let reports: Vec<SalemReport> = certs.iter().map(|c| SalemReport::new(c, CERTIFICATE_BITS)).collect();
            let smallest = certs.iter().enumerate().min_by(|a, b| compare_tau(a.1, b.1)).map(|(i, _)| &reports[i]);
            let summary = EnumerationSummary { half_degree, height, count: reports.len(), smallest };
            let main = render(&reports, format)?;
            emit(config, &main, &[("summary", to_json(&summary))], stdout)?;
            Ok(EXIT_OK)
        }
        ExperimentKind::RamificationSurvey { half_degree, height, prime_bound } => {
            let rows = run_ramification_survey(half_degree, height, prime_bound, jobs);
            let failures =
                rows.iter().filter(|r| r.error.is_some() || r.plan.as_ref().is_some_and(|p| !p.parity_ok)).count();
            let summary = SurveySummary { half_degree, height, prime_bound, count: rows.len(), failures };
            let main = match format {
                Format::Json => to_json(&rows),
                Format::Csv => to_csv(&rows.iter().map(SurveyCsvRow::from).collect::<Vec<_>>())?,
            };
            emit(config, &main, &[("summary", to_json(&summary))], stdout)?;
            Ok(if failures > 0 { EXIT_VIOLATION } else { EXIT_OK })
        }
    }
}
