//! Collecting result files into one CSV table.

use std::path::Path;

use log::warn;

use super::run::{read_results, MetricsLine, ResultLine};

pub const SUMMARY_HEADER: [&str; 8] = [
    "config_hash",
    "domain",
    "domain_params",
    "evaluator",
    "discovery_expansions",
    "proof_expansions",
    "best_cost",
    "termination",
];

/// One row per readable run file, sorted by domain then config hash.
/// Files that do not parse or lack a metrics line are skipped.
pub fn summarize<P: AsRef<Path>>(files: &[P]) -> String {
    let mut rows: Vec<MetricsLine> = Vec::new();
    for file in files {
        let path = file.as_ref();
        let metrics = match read_results(path) {
            Ok(lines) => lines.into_iter().rev().find_map(|l| match l {
                ResultLine::Metrics(m) => Some(*m),
                ResultLine::Incumbent(_) => None,
            }),
            Err(e) => {
                warn!("skipping {}: {e}", path.display());
                continue;
            }
        };
        match metrics {
            Some(m) => rows.push(m),
            None => warn!("skipping {}: no metrics line", path.display()),
        }
    }
    rows.sort_by(|a, b| (&a.domain, &a.config_hash).cmp(&(&b.domain, &b.config_hash)));

    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(SUMMARY_HEADER).expect("in-memory write");
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    for m in rows {
        out.write_record([
            m.config_hash,
            m.domain,
            m.domain_params.to_string(),
            m.evaluator,
            opt(m.discovery_expansions),
            opt(m.proof_expansions),
            opt(m.best_cost),
            m.termination.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(out.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}
