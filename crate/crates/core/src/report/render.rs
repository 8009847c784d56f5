//! CSV, JSON and markdown renderings of a [`Report`].
//!
//! Human formats print two decimals (proportions as percentages, p-values
//! with four); JSON keeps full precision. Missing values print as `NA`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{Report, ReportError};
use crate::classify::eval::CrossValidation;
use crate::lifecycle::LifecycleMetrics;
use crate::stats::{Hypothesis, HypothesisReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = ReportError;
    fn from_str(s: &str) -> Result<Self, ReportError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(ReportError::Format(s.to_string())),
        }
    }
}

const NA: &str = "NA";

fn fixed(v: Option<f64>, places: usize) -> String {
    v.map_or_else(|| NA.to_string(), |x| format!("{x:.places$}"))
}

fn pct(v: Option<f64>) -> String {
    fixed(v.map(|x| x * 100.0), 2)
}

type Table = (Vec<String>, Vec<Vec<String>>);

fn distribution_table(report: &Report) -> Option<Table> {
    let tables = report.distribution.as_ref()?;
    let header = ["scope", "category", "count", "proportion"].map(String::from).to_vec();
    let rows = tables
        .iter()
        .flat_map(|t| {
            t.rows
                .iter()
                .map(|r| vec![t.scope.to_string(), r.category.label().to_string(), r.count.to_string(), pct(Some(r.proportion))])
        })
        .collect();
    Some((header, rows))
}

fn metrics_table(metrics: &[LifecycleMetrics]) -> Table {
    let by_repo = metrics.iter().any(|m| m.repo_id.is_some());
    let mut header: Vec<String> = Vec::new();
    if by_repo {
        header.push("repo_id".into());
    }
    header.extend(
        [
            "category",
            "total",
            "removed",
            "resolved",
            "unresolved",
            "resolved_pct",
            "unresolved_pct",
            "mean_time_interval_days",
            "mean_commits",
        ]
        .map(String::from),
    );
    let rows = metrics
        .iter()
        .map(|m| {
            let mut row = Vec::new();
            if by_repo {
                row.push(m.repo_id.clone().unwrap_or_default());
            }
            row.extend([
                m.category.clone(),
                m.total.to_string(),
                m.removed.to_string(),
                m.resolved.to_string(),
                m.unresolved.to_string(),
                pct(m.resolved_pct),
                pct(m.unresolved_pct),
                fixed(m.mean_time_interval_days, 2),
                fixed(m.mean_commits, 2),
            ]);
            row
        })
        .collect();
    (header, rows)
}

fn stats_table(stats: &HypothesisReport) -> Table {
    let header = ["hypothesis_id", "compares", "n_high", "n_low", "u_statistic", "p_value", "method", "alpha_adjusted", "rejected"]
        .map(String::from)
        .to_vec();
    let rows = Hypothesis::ALL
        .iter()
        .map(|&h| match stats.results.iter().find(|r| r.hypothesis_id == h) {
            Some(r) => vec![
                format!("{h:?}"),
                h.describe().to_string(),
                r.n_high.to_string(),
                r.n_low.to_string(),
                fixed(Some(r.u_statistic), 2),
                fixed(Some(r.p_value), 4),
                serde_json::to_value(r.method).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                fixed(Some(r.alpha_adjusted), 4),
                r.rejected.to_string(),
            ],
            None => {
                let mut row = vec![format!("{h:?}"), h.describe().to_string()];
                row.extend(std::iter::repeat_n(NA.to_string(), 7));
                row
            }
        })
        .collect();
    (header, rows)
}

fn evaluation_table(runs: &[CrossValidation]) -> Table {
    let header = [
        "target",
        "k",
        "seed",
        "accuracy",
        "precision",
        "recall",
        "f1",
        "accuracy_sd",
        "precision_sd",
        "recall_sd",
        "f1_sd",
    ]
    .map(String::from)
    .to_vec();
    let rows = runs
        .iter()
        .map(|cv| {
            let mut row = vec![
                serde_json::to_value(cv.target).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                cv.k.to_string(),
                cv.seed.to_string(),
            ];
            for s in [cv.mean, cv.stdev] {
                row.extend([s.accuracy, s.precision, s.recall, s.f1].map(|x| pct(Some(x))));
            }
            row
        })
        .collect();
    (header, rows)
}

fn sections(report: &Report) -> Vec<(&'static str, &'static str, Table)> {
    let mut out = Vec::new();
    if let Some(t) = distribution_table(report) {
        out.push(("distribution", "Category distribution (%)", t));
    }
    if let Some(m) = &report.metrics {
        out.push(("metrics", "Lifecycle by category (percentages, days, commits)", metrics_table(m)));
    }
    if let Some(s) = &report.stats {
        out.push(("stats", "High vs low quality (Wilcoxon rank-sum, Holm-corrected)", stats_table(s)));
    }
    if let Some(e) = &report.evaluation {
        out.push(("evaluation", "Cross-validation (%)", evaluation_table(e)));
    }
    out
}

fn csv_string((header, rows): &Table) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| ReportError::Io {
        path: "<csv buffer>".into(),
        source: e.into_error(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn markdown_table((header, rows): &Table) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| {} |", header.join(" | "));
    let _ = writeln!(s, "|{}", "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(s, "| {} |", r.join(" | "));
    }
    s
}

/// The lifecycle table on its own, as written by `lifecycle --out-metrics`.
pub fn metrics_csv(metrics: &[LifecycleMetrics]) -> Result<String, ReportError> {
    csv_string(&metrics_table(metrics))
}

/// Renders the report to strings keyed by file name, without touching disk.
pub fn render(report: &Report, format: Format) -> Result<Vec<(String, String)>, ReportError> {
    if report.is_empty() {
        return Err(ReportError::NoSections);
    }
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            Ok(vec![("report.json".into(), s)])
        }
        Format::Csv => sections(report)
            .iter()
            .map(|(name, _, t)| Ok((format!("{name}.csv"), csv_string(t)?)))
            .collect(),
        Format::Markdown => {
            let mut s = String::from("# TODO report\n");
            for (_, title, t) in sections(report) {
                let _ = write!(s, "\n## {title}\n\n{}", markdown_table(&t));
            }
            if let Some(st) = report.stats.as_ref().filter(|st| !st.skipped.is_empty()) {
                let names: Vec<String> = st.skipped.iter().map(|h| format!("{h:?}")).collect();
                let _ = write!(s, "\nNot tested (a sample was empty): {}\n", names.join(", "));
            }
            Ok(vec![("report.md".into(), s)])
        }
    }
}

/// Writes the rendered files into `out_dir` and returns their paths.
pub fn emit_report(report: &Report, format: Format, out_dir: &Path) -> Result<Vec<PathBuf>, ReportError> {
    let files = render(report, format)?;
    let io = |path: &Path, source| ReportError::Io {
        path: path.display().to_string(),
        source,
    };
    std::fs::create_dir_all(out_dir).map_err(|e| io(out_dir, e))?;
    let mut written = Vec::new();
    for (name, body) in files {
        let path = out_dir.join(name);
        std::fs::write(&path, body).map_err(|e| io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
