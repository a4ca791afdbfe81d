//! Time-indexed (feature, outcome, prediction) rows — the universal input to
//! every sequential metric. CSV schema: `t,x0..,y,p` with floats printed to
//! 17 significant digits.

use std::io::{BufRead, Write};

use super::Feature;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Row {
    pub x: Feature,
    pub y: bool,
    pub p: f64,
}

#[derive(Clone, Debug)]
pub struct Transcript {
    pub rows: Vec<Row>,
    /// Declared prediction grid denominator: every p is a multiple of 1/den.
    pub grid: Option<u64>,
}

impl Transcript {
    pub fn new(rows: Vec<Row>, grid: Option<u64>) -> Self {
        Transcript { rows, grid }
    }

    pub fn horizon(&self) -> usize {
        self.rows.len()
    }

    /// The declared grid, or an error for metrics that need one.
    pub fn require_grid(&self) -> Result<u64> {
        self.grid.ok_or(Error::NoGrid)
    }

    /// Checks every prediction sits on the declared grid.
    pub fn check_gridded(&self) -> Result<u64> {
        let den = self.require_grid()?;
        for row in &self.rows {
            let scaled = row.p * den as f64;
            if (scaled - scaled.round()).abs() > 1e-9 {
                return Err(Error::UngriddedTranscript { value: row.p, den });
            }
        }
        Ok(den)
    }

    pub fn residual(&self, t: usize) -> f64 {
        let row = &self.rows[t];
        (row.y as u8) as f64 - row.p
    }

    pub fn residual_sum(&self) -> f64 {
        self.rows.iter().map(|r| (r.y as u8) as f64 - r.p).sum()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let d = self.rows.first().map_or(0, |r| r.x.coords.len());
        let mut header = String::from("t");
        for j in 0..d {
            header.push_str(&format!(",x{j}"));
        }
        header.push_str(",y,p");
        writeln!(w, "{header}")?;
        for (t, row) in self.rows.iter().enumerate() {
            let mut line = t.to_string();
            for c in &row.x.coords {
                line.push(',');
                line.push_str(&fmt_f64(*c));
            }
            line.push(',');
            line.push_str(if row.y { "1" } else { "0" });
            line.push(',');
            line.push_str(&fmt_f64(row.p));
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R, grid: Option<u64>) -> Result<Self> {
        let mut rows = Vec::new();
        let mut lines = r.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::CsvParse { line: 1, msg: "empty file".into() })?;
        let header = header?;
        let cols: Vec<&str> = header.trim().split(',').collect();
        if cols.first() != Some(&"t") || cols.last() != Some(&"p") {
            return Err(Error::CsvParse { line: 1, msg: format!("unexpected header `{header}`") });
        }
        let d = cols.len() - 3;
        for (i, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.trim().split(',').collect();
            if parts.len() != d + 3 {
                return Err(Error::CsvParse { line: i + 1, msg: format!("expected {} fields, got {}", d + 3, parts.len()) });
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|e| Error::CsvParse { line: i + 1, msg: format!("bad float `{s}`: {e}") })
            };
            let coords = parts[1..1 + d].iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
            let y = match parts[1 + d] {
                "0" => false,
                "1" => true,
                other => return Err(Error::CsvParse { line: i + 1, msg: format!("bad outcome `{other}`") }),
            };
            let p = parse(parts[2 + d])?;
            rows.push(Row { x: Feature::from_coords(coords), y, p });
        }
        Ok(Transcript::new(rows, grid))
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
