use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ExperimentResult;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Plotdata,
}

impl OutputFormat {
    pub const ALL: [OutputFormat; 3] = [OutputFormat::Json, OutputFormat::Csv, OutputFormat::Plotdata];

    fn suffix(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Plotdata => "plot.tsv",
        }
    }
}

/// Writes `<prefix>.json`, `<prefix>.csv` and/or `<prefix>.plot.tsv`.
pub fn emit_outputs(result: &ExperimentResult, prefix: &Path, formats: &[OutputFormat]) -> Result<Vec<PathBuf>> {
    if let Some(dir) = prefix.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut written = Vec::new();
    for &f in formats {
        let mut name = prefix.as_os_str().to_owned();
        name.push(".");
        name.push(f.suffix());
        let path = PathBuf::from(name);
        match f {
            OutputFormat::Json => {
                let mut text = serde_json::to_string_pretty(result)?;
                text.push('\n');
                fs::write(&path, text)?;
            }
            OutputFormat::Csv => write_csv(result, &path)?,
            OutputFormat::Plotdata => fs::write(&path, plotdata(result))?,
        }
        written.push(path);
    }
    Ok(written)
}

/// One row per trial; each measure contributes an outcome and a node column.
fn write_csv(result: &ExperimentResult, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let measures: Vec<String> = result
        .trials
        .first()
        .map(|t| t.outcomes.iter().map(|o| o.measure.clone()).collect())
        .unwrap_or_default();
    let mut header: Vec<String> = ["point", "trial", "seed", "edges", "t1", "t2"].map(String::from).to_vec();
    for m in &measures {
        header.push(m.clone());
        header.push(format!("{m}Nodes"));
    }
    w.write_record(&header)?;
    let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
    for t in &result.trials {
        let mut row = vec![
            t.point.map_or(String::new(), |p| p.to_string()),
            t.trial.to_string(),
            t.seed.to_string(),
            t.edges.to_string(),
            opt(t.t1),
            opt(t.t2),
        ];
        for o in &t.outcomes {
            row.push(serde_json::to_value(o.outcome)?.as_str().unwrap_or_default().to_string());
            row.push(o.nodes.to_string());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Tab-separated `x frequency limit` blocks, one per measure, separated by
/// blank lines. `x` is `c` on threshold runs and `n` otherwise; `limit` is
/// `nan` where no limit curve applies.
fn plotdata(result: &ExperimentResult) -> String {
    let mut out = Vec::new();
    let mut measures: Vec<&str> = Vec::new();
    for a in &result.aggregates {
        if !measures.contains(&a.measure.as_str()) {
            measures.push(&a.measure);
        }
    }
    for (i, m) in measures.iter().enumerate() {
        if i > 0 {
            writeln!(out).unwrap();
        }
        writeln!(out, "# {m}\nx\tfrequency\tlimit").unwrap();
        let mut rows: Vec<(f64, f64, f64)> = result
            .aggregates
            .iter()
            .filter(|a| a.measure == *m)
            .map(|a| {
                (
                    a.point.unwrap_or(result.config.n as f64),
                    a.frequency,
                    a.limit.unwrap_or(f64::NAN),
                )
            })
            .collect();
        rows.sort_by(|p, q| p.0.total_cmp(&q.0));
        for (x, f, l) in rows {
            writeln!(out, "{x}\t{f:.6}\t{l:.6}").unwrap();
        }
    }
    String::from_utf8(out).expect("ascii output")
}
