//! Benchmark rows and their CSV table.

use std::collections::BTreeSet;
use std::io::Write;

use crate::CliError;

pub const CSV_HEADER: [&str; 7] = ["method", "d", "n", "seed", "final_size", "runtime_ms", "exponent_estimate"];

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub method: &'static str,
    pub d: usize,
    pub n: i64,
    pub seed: u64,
    pub final_size: u64,
    /// `None` when timing is switched off for byte-reproducible tables.
    pub runtime_ms: Option<f64>,
    pub exponent_estimate: Option<f64>,
}

impl BenchRow {
    fn key(&self) -> (&'static str, usize, i64, u64) {
        (self.method, self.d, self.n, self.seed)
    }
}

/// `log(size) / log(n)`, defined for `size >= 1` and `n >= 2`.
pub fn exponent_estimate(final_size: u64, n: i64) -> Option<f64> {
    (final_size >= 1 && n >= 2).then(|| (final_size as f64).ln() / (n as f64).ln())
}

/// Growth exponents the measured ones are compared against.
pub fn reference_exponents(d: usize) -> [(&'static str, f64); 3] {
    [
        ("sample_and_delete 3/(d+1)", 3.0 / (d as f64 + 1.0)),
        ("thiele 1/(d-1)", 1.0 / (d as f64 - 1.0)),
        ("moment_curve 1", 1.0),
    ]
}

pub fn sort_rows(rows: &mut [BenchRow]) {
    rows.sort_by(|a, b| a.key().cmp(&b.key()));
}

pub fn write_csv(rows: &[BenchRow], w: impl Write) -> Result<(), CliError> {
    let fail = |e: csv::Error| CliError::Internal(format!("writing csv: {e}"));
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER).map_err(fail)?;
    for r in rows {
        let opt = |v: Option<f64>, digits: usize| v.map(|x| format!("{x:.digits$}")).unwrap_or_default();
        out.write_record([
            r.method.to_string(),
            r.d.to_string(),
            r.n.to_string(),
            r.seed.to_string(),
            r.final_size.to_string(),
            opt(r.runtime_ms, 3),
            opt(r.exponent_estimate, 6),
        ])
        .map_err(fail)?;
    }
    out.flush().map_err(|e| CliError::Internal(format!("writing csv: {e}")))
}

/// Per `(method, d, n)`: seeds, mean size and mean exponent, followed by the
/// reference exponents for every dimension present.
pub fn write_summary(rows: &[BenchRow], mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "{:<10} {:>2} {:>6} {:>5} {:>10} {:>9}", "method", "d", "n", "seeds", "mean_size", "exponent")?;
    let mut i = 0;
    while i < rows.len() {
        let group: Vec<&BenchRow> =
            rows[i..].iter().take_while(|r| (r.method, r.d, r.n) == (rows[i].method, rows[i].d, rows[i].n)).collect();
        let mean = group.iter().map(|r| r.final_size as f64).sum::<f64>() / group.len() as f64;
        let exps: Vec<f64> = group.iter().filter_map(|r| r.exponent_estimate).collect();
        let exp = if exps.is_empty() { "-".to_string() } else { format!("{:.4}", exps.iter().sum::<f64>() / exps.len() as f64) };
        let r = group[0];
        writeln!(w, "{:<10} {:>2} {:>6} {:>5} {:>10.2} {:>9}", r.method, r.d, r.n, group.len(), mean, exp)?;
        i += group.len();
    }
    let dims: BTreeSet<usize> = rows.iter().map(|r| r.d).collect();
    for d in dims {
        let refs = reference_exponents(d).map(|(name, v)| format!("{name} = {v:.4}"));
        writeln!(w, "reference exponents, d={d}: {}", refs.join(", "))?;
    }
    Ok(())
}
