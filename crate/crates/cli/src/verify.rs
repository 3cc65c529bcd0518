//! Battery runner: streams one report per line with a schema header and
//! a trailing summary, in JSON lines, CSV, or plain text.

use kacflow::jacobi::ExpansionMode;
use kacflow::linsys::{LemmaReport, ReportStatus};
use kacflow::suite::{battery, VerifyConfig, REPORT_SCHEMA_VERSION};
use serde_json::json;

use crate::{FormatArg, RunConfig, EXIT_CONFIG, EXIT_FAILURE};

pub fn run(config: &RunConfig) -> u8 {
    let mode = config.mode.unwrap_or(ExpansionMode::Mixed);
    let verify_config = VerifyConfig {
        n1: config.n1,
        n2: config.n2,
        mode,
        tau_samples: config.tau_samples,
        seed: config.seed,
        symbolic_cap: config.symbolic_cap,
        timings: config.timings,
    };
    let reports = match battery(&verify_config) {
        Ok(reports) => reports,
        Err(err) => {
            eprintln!("kacflow verify: {err}");
            return EXIT_CONFIG;
        }
    };
    let text = match config.format.unwrap_or(FormatArg::Json) {
        FormatArg::Json => render_json_lines(&verify_config, &reports),
        FormatArg::Csv => render_csv(&reports),
        FormatArg::Text => render_text(&reports),
    };
    if let Err(err) = config.emit(&text) {
        eprintln!("kacflow verify: {err}");
        return EXIT_CONFIG;
    }
    let failed = reports
        .iter()
        .filter(|r| r.status == ReportStatus::Failed)
        .count();
    if failed > 0 {
        EXIT_FAILURE
    } else {
        0
    }
}

fn discrepancy_ids(reports: &[LemmaReport]) -> Vec<&str> {
    reports
        .iter()
        .filter(|r| r.status == ReportStatus::PaperDiscrepancy)
        .map(|r| r.lemma_id.as_str())
        .collect()
}

fn status_counts(reports: &[LemmaReport]) -> (usize, usize, usize) {
    let verified = reports
        .iter()
        .filter(|r| r.status == ReportStatus::Verified)
        .count();
    let failed = reports
        .iter()
        .filter(|r| r.status == ReportStatus::Failed)
        .count();
    (verified, failed, reports.len() - verified - failed)
}

fn render_json_lines(config: &VerifyConfig, reports: &[LemmaReport]) -> String {
    let header = json!({
        "schema_version": REPORT_SCHEMA_VERSION,
        "command": "verify",
        "n1": config.n1,
        "n2": config.n2,
        "mode": config.mode.to_string(),
        "tau_samples": config.tau_samples,
        "seed": config.seed,
        "symbolic_cap": config.symbolic_cap,
    });
    let (verified, failed, discrepancies) = status_counts(reports);
    let summary = json!({
        "summary": {
            "total": reports.len(),
            "verified": verified,
            "failed": failed,
            "paper_discrepancy": discrepancies,
            "discrepancies": discrepancy_ids(reports),
        }
    });
    let mut out = String::new();
    out.push_str(&header.to_string());
    out.push('\n');
    for report in reports {
        out.push_str(&serde_json::to_string(report).expect("reports serialize"));
        out.push('\n');
    }
    out.push_str(&summary.to_string());
    out.push('\n');
    out
}

fn render_csv(reports: &[LemmaReport]) -> String {
    let mut out = String::from("lemma_id,status,elapsed_ms,params\n");
    for report in reports {
        let params = report
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join("; ");
        out.push_str(&format!(
            "{},{},{},\"{}\"\n",
            report.lemma_id,
            report.status,
            report.elapsed_ms,
            params.replace('"', "\"\"")
        ));
    }
    out
}

fn render_text(reports: &[LemmaReport]) -> String {
    let mut out = String::new();
    for report in reports {
        let params = report
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "{:<18} {} ({params})\n",
            report.status.to_string(),
            report.lemma_id
        ));
    }
    let (verified, failed, discrepancies) = status_counts(reports);
    out.push_str(&format!(
        "{} reports: {verified} verified, {failed} failed, {discrepancies} paper discrepancies\n",
        reports.len()
    ));
    out
}
