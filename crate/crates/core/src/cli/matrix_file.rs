use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact_linalg::IntegerMatrix;

/// Output layout of matrix files and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Structured,
    Plain,
}

/// A Gram matrix with optional metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub gram: IntegerMatrix,
    pub target: Option<String>,
    pub comment: Option<String>,
}

impl MatrixFile {
    pub fn new(gram: IntegerMatrix) -> Self {
        MatrixFile { gram, target: None, comment: None }
    }

    /// Loads either the JSON layout or a whitespace-separated matrix
    /// (`#` starts a comment line); the choice is made from the first
    /// non-blank character.
    pub fn parse(text: &str) -> Result<Self> {
        let file = if text.trim_start().starts_with('{') { parse_structured(text)? } else { parse_plain(text)? };
        file.gram.require_symmetric()?;
        Ok(file)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => self.render_structured(),
            Format::Plain => self.render_plain(),
        }
    }

    fn render_structured(&self) -> String {
        let rows: Vec<String> = (0..self.gram.rows())
            .map(|i| {
                let r: Vec<String> = self.gram.row(i).iter().map(|x| x.to_string()).collect();
                format!("    [{}]", r.join(", "))
            })
            .collect();
        let mut out = format!("{{\n  \"gram\": [\n{}\n  ]", rows.join(",\n"));
        if let Some(t) = &self.target {
            out += &format!(",\n  \"target\": {}", Value::String(t.clone()));
        }
        if let Some(c) = &self.comment {
            out += &format!(",\n  \"comment\": {}", Value::String(c.clone()));
        }
        out + "\n}\n"
    }

    fn render_plain(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.target {
            out += &format!("# target: {t}\n");
        }
        if let Some(c) = &self.comment {
            for line in c.lines() {
                out += &format!("# {line}\n");
            }
        }
        for i in 0..self.gram.rows() {
            let r: Vec<String> = self.gram.row(i).iter().map(|x| x.to_string()).collect();
            out += &r.join(" ");
            out.push('\n');
        }
        out
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_structured(text: &str) -> Result<MatrixFile> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
    let obj = v.as_object().ok_or_else(|| bad("matrix file must be a JSON object"))?;
    let rows = obj.get("gram").and_then(Value::as_array).ok_or_else(|| bad("missing \"gram\" array"))?;
    let mut gram = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| bad("\"gram\" rows must be arrays"))?;
        let mut out = Vec::with_capacity(row.len());
        for x in row {
            let Value::Number(n) = x else {
                return Err(bad(format!("non-integer entry {x}")));
            };
            out.push(n.as_str().parse::<BigInt>().map_err(|_| bad(format!("non-integer entry {n}")))?);
        }
        gram.push(out);
    }
    let text_field = |k: &str| -> Result<Option<String>> {
        match obj.get(k) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(bad(format!("\"{k}\" must be a string"))),
        }
    };
    Ok(MatrixFile { gram: IntegerMatrix::try_from_rows(gram)?, target: text_field("target")?, comment: text_field("comment")? })
}

fn parse_plain(text: &str) -> Result<MatrixFile> {
    let mut rows = Vec::new();
    let mut target = None;
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(t) = rest.trim().strip_prefix("target:") {
                target = Some(t.trim().to_string());
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<BigInt>().map_err(|_| bad(format!("non-integer entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(bad("empty matrix"));
    }
    Ok(MatrixFile { gram: IntegerMatrix::try_from_rows(rows)?, target, comment: None })
}
