use serde_json::{json, Value as Json};

use super::run::ReportRecord;

pub const REPORT_VERSION: u32 = 1;

pub fn render_json(records: &[ReportRecord]) -> Json {
    let mut fixtures: Vec<&str> = records.iter().map(|r| r.fixture.as_str()).collect();
    fixtures.dedup();
    json!({
        "version": REPORT_VERSION,
        "fixtures": fixtures,
        "records": records,
    })
}

pub fn render_text(records: &[ReportRecord]) -> String {
    let rows: Vec<[String; 5]> = records
        .iter()
        .map(|r| {
            let detail = match &r.error {
                Some(e) => e.clone(),
                None => r
                    .values
                    .get("clause")
                    .and_then(|c| c.as_str())
                    .map(str::to_string)
                    .unwrap_or_default(),
            };
            [
                r.fixture.clone(),
                r.check.clone(),
                r.status.clone(),
                if r.ok { "ok" } else { "FAILED" }.to_string(),
                format!("{}ms  {}", r.timing_ms, detail).trim_end().to_string(),
            ]
        })
        .collect();
    let header = ["fixture", "check", "status", "result", "detail"].map(String::from);
    let mut widths = [0usize; 5];
    for row in std::iter::once(&header).chain(&rows) {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let line: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    let failed = records.iter().filter(|r| !r.ok).count();
    out.push_str(&format!("{} checks, {} failed\n", records.len(), failed));
    out
}
