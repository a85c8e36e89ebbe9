use std::path::Path;

use anyhow::{bail, Context, Result};
use foavr::ControllerGenes64;

/// One parsed gene row; `line` is the 1-based data-row number in the file
/// (header excluded), used to label trace files and warnings.
#[derive(Debug, Clone)]
pub struct GeneRow {
    pub line: usize,
    pub genes: ControllerGenes64,
}

/// Reads controller genes from a headed CSV file.
///
/// The header must contain `Kp`, `Ki` and `Kd` columns; `lambda` and `mu`
/// are optional and blank cells default to 1 (PID). Extra columns — like the
/// objective and label columns of the transcribed table fixtures — are
/// ignored, so fixture files can be fed in directly.
pub fn read_genes_csv(path: &Path) -> Result<Vec<GeneRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_path(path)
        .with_context(|| format!("cannot open genes file {}", path.display()))?;

    let headers = reader.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let (kp, ki, kd) = match (col("Kp"), col("Ki"), col("Kd")) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => bail!(
            "genes file {} must have Kp, Ki and Kd columns",
            path.display()
        ),
    };
    let lambda = col("lambda");
    let mu = col("mu");

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let field = |idx: Option<usize>| -> Result<f64> {
            let raw = idx.and_then(|j| record.get(j)).unwrap_or("").trim();
            if raw.is_empty() {
                return Ok(1.0);
            }
            raw.parse()
                .with_context(|| format!("row {}: bad number {raw:?}", i + 1))
        };
        let genes = ControllerGenes64::new(
            field(Some(kp))?,
            field(Some(ki))?,
            field(Some(kd))?,
            field(lambda)?,
            field(mu)?,
        );
        rows.push(GeneRow { line: i + 1, genes });
    }
    Ok(rows)
}

/// Formats a float for CSV output: shortest exact round-trip representation,
/// forced to carry a decimal point so integer-valued cells still read as
/// reals (PID rows print lambda and mu as 1.0).
pub fn fmt_f64(v: f64) -> String {
    let s = format!("{v}");
    if s.contains('.') || s.contains('e') || s.contains("inf") || s.contains("NaN") {
        s
    } else {
        format!("{s}.0")
    }
}
