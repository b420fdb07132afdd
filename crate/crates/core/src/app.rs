//! Batch ingestion, report assembly, and deterministic serialization shared
//! by the command-line front end.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::classify::CurveOverQ;
use crate::error::{Error, Result};
use crate::gf::ZPoly;

/// Parse a curve file: one curve per line,
/// `label: [[f0,...,fk],[h0,...,hm]]` with the label optional, blank lines
/// and `#` comments skipped, whitespace-insensitive. The file is rejected
/// atomically on the first malformed line.
pub fn ingest_curves(text: &str) -> Result<Vec<CurveOverQ>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label, body) = match line.find(':') {
            Some(pos) if !line[..pos].contains('[') => (
                Some(line[..pos].trim().to_string()),
                line[pos + 1..].trim(),
            ),
            _ => (None, line),
        };
        let parsed = parse_pair(body).map_err(|msg| Error::Parse {
            line: lineno + 1,
            msg,
        })?;
        let (f, h) = parsed;
        if f.len() > 7 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: "f degree bound exceeded (at most 7 coefficients)".into(),
            });
        }
        if h.len() > 4 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: "h degree bound exceeded (at most 4 coefficients)".into(),
            });
        }
        let curve = CurveOverQ::new(label, ZPoly::from_i64(&f), ZPoly::from_i64(&h))
            .map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: e.to_string(),
            })?;
        out.push(curve);
    }
    Ok(out)
}

fn parse_pair(body: &str) -> std::result::Result<(Vec<i64>, Vec<i64>), String> {
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("[[")
        .and_then(|s| s.strip_suffix("]]"))
        .ok_or("expected [[...],[...]]")?;
    let parts: Vec<&str> = inner.split("],[").collect();
    if parts.len() != 2 {
        return Err("expected exactly two coefficient lists".into());
    }
    let parse_list = |s: &str| -> std::result::Result<Vec<i64>, String> {
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split(',')
            .map(|t| t.parse::<i64>().map_err(|e| format!("bad integer {t:?}: {e}")))
            .collect()
    };
    Ok((parse_list(parts[0])?, parse_list(parts[1])?))
}

/// Render a curve back into the file grammar.
pub fn format_curve(c: &CurveOverQ) -> String {
    let list = |p: &ZPoly| -> String {
        let items: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
        format!("[{}]", items.join(","))
    };
    let body = format!("[{},{}]", list(&c.model.f), list(&c.model.h));
    match &c.label {
        Some(l) => format!("{l}: {body}"),
        None => body,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<OutputFormat> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" | "text-table" => Ok(OutputFormat::Text),
            other => Err(Error::parameter(format!("unknown format {other:?}"))),
        }
    }
}

/// A report: metadata plus tabular rows plus optional summary lines for the
/// text rendering.
pub struct Report {
    pub meta: Map<String, Value>,
    /// column order for csv/text
    pub columns: Vec<String>,
    pub rows: Vec<Map<String, Value>>,
    /// extra top-level JSON fields
    pub extra: Map<String, Value>,
    /// trailing summary lines for the text format
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(seed: u64, config: &str) -> Report {
        let mut meta = Map::new();
        meta.insert("seed".into(), json!(seed));
        meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        meta.insert("config".into(), json!(config));
        Report {
            meta,
            columns: Vec::new(),
            rows: Vec::new(),
            extra: Map::new(),
            summary: Vec::new(),
        }
    }

    pub fn emit(&self, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
        match format {
            OutputFormat::Json => {
                let mut top = Map::new();
                top.insert("meta".into(), Value::Object(self.meta.clone()));
                for (k, v) in &self.extra {
                    top.insert(k.clone(), v.clone());
                }
                top.insert(
                    "results".into(),
                    Value::Array(self.rows.iter().cloned().map(Value::Object).collect()),
                );
                serde_json::to_writer_pretty(&mut *out, &Value::Object(top))
                    .map_err(|e| Error::diagnostic(e.to_string()))?;
                writeln!(out)?;
            }
            OutputFormat::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = self
                        .columns
                        .iter()
                        .map(|c| csv_cell(row.get(c).unwrap_or(&Value::Null)))
                        .collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            OutputFormat::Text => {
                // aligned columns
                let mut widths: Vec<usize> =
                    self.columns.iter().map(|c| c.len()).collect();
                let cells: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|row| {
                        self.columns
                            .iter()
                            .enumerate()
                            .map(|(i, c)| {
                                let s = plain_cell(row.get(c).unwrap_or(&Value::Null));
                                widths[i] = widths[i].max(s.len());
                                s
                            })
                            .collect()
                    })
                    .collect();
                if !self.columns.is_empty() {
                    let header: Vec<String> = self
                        .columns
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{c:<width$}", width = widths[i]))
                        .collect();
                    writeln!(out, "{}", header.join("  "))?;
                }
                for row in cells {
                    let line: Vec<String> = row
                        .iter()
                        .enumerate()
                        .map(|(i, s)| format!("{s:<width$}", width = widths[i]))
                        .collect();
                    writeln!(out, "{}", line.join("  ").trim_end())?;
                }
                for line in &self.summary {
                    writeln!(out, "{line}")?;
                }
            }
        }
        Ok(())
    }
}

fn csv_cell(v: &Value) -> String {
    let s = plain_cell(v);
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn plain_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ingest_examples() {
        let curves = ingest_curves("[[0,1,1,0,0,0,0],[1,0,0,1]]").unwrap();
        assert_eq!(curves.len(), 1);
        assert_eq!(curves[0].model.f.coeffs().len(), 3); // x^2 + x, trimmed
        let empty = ingest_curves("# comment\n\n").unwrap();
        assert!(empty.is_empty());
        // h degree bound: 5 coefficients
        assert!(ingest_curves("[[1,2],[1,2,3,4,5]]").is_err());
        // labels and whitespace
        let labeled = ingest_curves("mycurve:  [[ 0, 1,1],[1, 0,0, 1]]").unwrap();
        assert_eq!(labeled[0].label.as_deref(), Some("mycurve"));
    }

    #[test]
    fn ingest_roundtrip() {
        let text = "c1: [[0,1,1],[1,0,0,1]]\nc3: [[-1,-8,-16,1,2,1],[0,1,1]]\n";
        let once = ingest_curves(text).unwrap();
        let emitted: String = once
            .iter()
            .map(|c| format!("{}\n", format_curve(c)))
            .collect();
        let twice = ingest_curves(&emitted).unwrap();
        assert_eq!(once.len(), twice.len());
        for (a, b) in once.iter().zip(twice.iter()) {
            assert_eq!(a.label, b.label);
            assert_eq!(a.model, b.model);
        }
    }

    #[test]
    fn fixture_corpus_parses() {
        let text = include_str!("../fixtures/curves.txt");
        let curves = ingest_curves(text).unwrap();
        assert!(curves.len() >= 20);
        assert!(curves.iter().all(|c| c.label.is_some()));
    }
}
