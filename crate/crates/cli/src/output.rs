//! Report serialization: one JSON per experiment plus one CSV per series
//! (UTF-8, comma-separated, header row, 17 significant digits).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use fraclap_core::harness::{Criterion, ExperimentReport, Series, Verdict};

use crate::config::OutputFormat;

#[derive(Serialize)]
struct ReportJson<'a> {
    name: &'a str,
    params: &'a BTreeMap<String, f64>,
    metrics: &'a BTreeMap<String, f64>,
    verdict: Verdict,
    series_files: &'a [String],
    tolerances: &'a [Criterion],
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn csv_for(series: &Series) -> String {
    let mut out = String::new();
    out.push_str(&format!("{},{}\n", series.x_label, series.y_label));
    for &(x, y) in &series.points {
        out.push_str(&format!("{x:.16e},{y:.16e}\n"));
    }
    out
}

/// Write report.json (and the CSVs it references) into `dir`. Returns the
/// JSON path.
pub fn write_report(
    report: &ExperimentReport,
    dir: &Path,
    format: OutputFormat,
    timestamp: bool,
) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut series_files = Vec::new();
    if format.wants_csv() {
        for series in &report.series {
            let file = format!("{}.csv", series.label);
            std::fs::write(dir.join(&file), csv_for(series))?;
            series_files.push(file);
        }
    }
    let json_path = dir.join("report.json");
    if format.wants_json() {
        let ts = if timestamp {
            Some(
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            )
        } else {
            None
        };
        let doc = ReportJson {
            name: &report.name,
            params: &report.params,
            metrics: &report.metrics,
            verdict: report.verdict,
            series_files: &series_files,
            tolerances: &report.tolerances,
            timestamp: ts,
        };
        let mut f = std::fs::File::create(&json_path)?;
        writeln!(f, "{}", serde_json::to_string_pretty(&doc)?)?;
    }
    Ok(json_path)
}

/// One line of the suite summary table.
pub fn summary_line(report: &ExperimentReport) -> String {
    let verdict = match report.verdict {
        Verdict::Pass => "PASS",
        Verdict::Warn => "WARN",
        Verdict::Fail => "FAIL",
    };
    let failed: Vec<&str> = report
        .tolerances
        .iter()
        .filter(|c| !c.satisfied)
        .map(|c| c.metric.as_str())
        .collect();
    if failed.is_empty() {
        format!("{:<24} {}", report.name, verdict)
    } else {
        format!("{:<24} {}  ({})", report.name, verdict, failed.join(", "))
    }
}
