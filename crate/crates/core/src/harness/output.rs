use std::io::Write;

use serde::Serialize;

use super::run::{Summary, TheoremReport};
use super::HarnessError;

pub const CSV_HEADER: [&str; 10] = [
    "theorem",
    "factors",
    "left",
    "right",
    "constant",
    "D_size",
    "slack",
    "pass",
    "claims_failed",
    "millis",
];

/// Writes one CSV row per report. The `millis` column stays empty unless
/// `timing` is set, so untimed output is reproducible byte for byte.
pub fn write_csv<W: Write>(writer: W, reports: &[TheoremReport], timing: bool) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record([
            r.theorem.number().to_string(),
            r.factors.join(" x "),
            r.left.to_string(),
            r.right.to_string(),
            r.constant.to_string(),
            r.d_size.to_string(),
            format!("{:.6}", r.slack),
            r.pass.to_string(),
            r.claims_failed.to_string(),
            if timing { format!("{:.3}", r.millis) } else { String::new() },
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonReport<'a> {
    summary: &'a Summary,
    reports: &'a [TheoremReport],
}

/// Writes the summary and every row, ledgers included, as pretty JSON.
pub fn write_json<W: Write>(writer: W, reports: &[TheoremReport], summary: &Summary) -> Result<(), HarnessError> {
    serde_json::to_writer_pretty(writer, &JsonReport { summary, reports })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::complete;
    use crate::harness::run_theorem;
    use crate::machinery::TheoremId;

    #[test]
    fn csv_rows() {
        let r = run_theorem(TheoremId::TotalTotal, &[complete(2), complete(2)]).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, std::slice::from_ref(&r), false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "theorem,factors,left,right,constant,D_size,slack,pass,claims_failed,millis");
        assert_eq!(lines[1], "2,K2 x K2,4,4,2,2,1.000000,true,0,");
        let mut timed = Vec::new();
        write_csv(&mut timed, &[r], true).unwrap();
        assert!(!String::from_utf8(timed).unwrap().lines().nth(1).unwrap().ends_with(','));
    }

    #[test]
    fn json_mirrors_rows() {
        let r = run_theorem(TheoremId::PairedPaired, &[complete(2), complete(2)]).unwrap();
        let summary = Summary::of(std::slice::from_ref(&r));
        let mut buf = Vec::new();
        write_json(&mut buf, &[r], &summary).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["summary"]["passed"], 1);
        assert_eq!(v["reports"][0]["theorem"], 4);
        assert_eq!(v["reports"][0]["right"], 12);
        assert!(v["reports"][0]["ledger"].as_array().unwrap().len() > 10);
    }
}
