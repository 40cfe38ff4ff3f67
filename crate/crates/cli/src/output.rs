use std::io::Write;

use serde_json::Value;

use crate::config::Format;

/// What a command produced: the JSON document plus a flat table for CSV and
/// plain output.
pub struct Report {
    pub json: Value,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Overrides the plain rendering of the table.
    pub plain: Option<String>,
    /// A verification ran and failed.
    pub failed: bool,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report { json, headers: Vec::new(), rows: Vec::new(), plain: None, failed: false }
    }

    pub fn table(mut self, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.headers = headers.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn plain(mut self, text: String) -> Self {
        self.plain = Some(text);
        self
    }

    pub fn failed(mut self, f: bool) -> Self {
        self.failed = f;
        self
    }

    pub fn render(&self, f: Format) -> anyhow::Result<String> {
        Ok(match f {
            Format::Json => serde_json::to_string_pretty(&self.json)? + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Plain => match &self.plain {
                Some(t) => format!("{t}\n"),
                None => aligned(&self.headers, &self.rows),
            },
        })
    }

    pub fn emit(&self, f: Format, path: Option<&std::path::Path>) -> anyhow::Result<()> {
        let text = self.render(f)?;
        match path {
            Some(p) => std::fs::write(p, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn aligned(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let parts: Vec<String> =
            cells.iter().zip(&width).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        let r = Report::new(serde_json::json!({"a": 1})).table(&["x", "value"], vec![vec!["1".into(), "a,b".into()]]);
        assert_eq!(r.render(Format::Csv).unwrap(), "x,value\n1,\"a,b\"\n");
        assert_eq!(r.render(Format::Plain).unwrap(), "x  value\n1  a,b\n");
        assert_eq!(r.render(Format::Json).unwrap(), "{\n  \"a\": 1\n}\n");
    }
}
