//! Bench output: `n,steps,verdict` rows followed by `#` fit lines.

use std::fmt::Write as _;

use f2lab_core::bench::{BenchSample, ExponentFit};
use f2lab_core::simulator::Verdict;

pub const HEADER: &str = "n,steps,verdict";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("csv line {line}: {message}")]
pub struct CsvError {
    pub line: usize,
    pub message: String,
}

pub fn samples_to_csv(samples: &[BenchSample]) -> String {
    let mut s = format!("{HEADER}\n");
    for x in samples {
        let _ = writeln!(s, "{},{},{}", x.n, x.steps, x.verdict.label());
    }
    s
}

pub fn fit_comments(fit: &ExponentFit) -> String {
    format!(
        "# slope={:.6}\n# intercept={:.6}\n# r_squared={:.6}\n# samples={}\n",
        fit.slope, fit.intercept, fit.r_squared, fit.samples
    )
}

/// Rows of a bench CSV; `#` lines are skipped.
pub fn parse_csv(text: &str) -> Result<Vec<BenchSample>, CsvError> {
    let e = |line: usize, message: String| CsvError { line, message };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.starts_with('#'));
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        _ => return Err(e(1, format!("expected header `{HEADER}`"))),
    }
    lines
        .map(|(i, l)| {
            let ln = i + 1;
            let f: Vec<&str> = l.split(',').collect();
            let [n, steps, verdict] = f[..] else {
                return Err(e(ln, "expected three fields".into()));
            };
            Ok(BenchSample {
                n: n.parse().map_err(|_| e(ln, format!("bad n {n:?}")))?,
                steps: steps.parse().map_err(|_| e(ln, format!("bad steps {steps:?}")))?,
                verdict: Verdict::from_label(verdict).ok_or_else(|| e(ln, format!("bad verdict {verdict:?}")))?,
            })
        })
        .collect()
}
