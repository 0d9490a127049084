//! Output formats for class tables.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::schubert::ClassTable;
use crate::verify::describe;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!(
                "unknown format '{s}' (text, latex, csv, json)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Format::Text => "text",
            Format::Latex => "latex",
            Format::Csv => "csv",
            Format::Json => "json",
        };
        f.write_str(s)
    }
}

#[derive(Serialize)]
struct JsonEntry<'a> {
    w: String,
    v: String,
    text: String,
    expr: &'a Expr,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    setup: String,
    method: String,
    elements: Vec<String>,
    entries: Vec<JsonEntry<'a>>,
}

pub fn render_table(table: &ClassTable, format: Format) -> Result<String> {
    let s = table.setup();
    let labels: Vec<String> = table.elements().iter().map(|&w| s.label(w)).collect();
    match format {
        Format::Text => {
            let mut out = format!("# {} ({})\n", describe(s), table.method());
            for (w, v, e) in table.iter() {
                out.push_str(&format!("E(X_{})_{} = {}\n", s.label(w), s.label(v), e));
            }
            Ok(out)
        }
        Format::Latex => {
            let mut out = format!("\\begin{{tabular}}{{c|{}}}\n", "c".repeat(labels.len()));
            out.push_str(&format!(" & {} \\\\\n\\hline\n", labels.join(" & ")));
            for &w in table.elements() {
                let cells: Vec<String> = table
                    .row(w)
                    .iter()
                    .map(|e| format!("${}$", e.latex()))
                    .collect();
                out.push_str(&format!(
                    "$E(X_{{{}}})$ & {} \\\\\n",
                    s.label(w),
                    cells.join(" & ")
                ));
            }
            out.push_str("\\end{tabular}\n");
            Ok(out)
        }
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Parse(e.to_string());
            wtr.write_record(["w", "v", "expr"]).map_err(io)?;
            for (w, v, e) in table.iter() {
                wtr.write_record([s.label(w), s.label(v), e.to_string()])
                    .map_err(io)?;
            }
            let bytes = wtr.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("utf8 records"))
        }
        Format::Json => {
            let t = JsonTable {
                setup: describe(s),
                method: table.method().to_string(),
                elements: labels,
                entries: table
                    .iter()
                    .map(|(w, v, e)| JsonEntry {
                        w: s.label(w),
                        v: s.label(v),
                        text: e.to_string(),
                        expr: e,
                    })
                    .collect(),
            };
            Ok(serde_json::to_string_pretty(&t).expect("tables serialize") + "\n")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::ParabolicSetup;
    use crate::schubert::{LambdaSymbol, Method};

    fn sl2() -> ClassTable {
        let s = ParabolicSetup::type_a(&[1, 1]).unwrap();
        ClassTable::new(&s, &LambdaSymbol::generic(&s), Method::Recursion).unwrap()
    }

    #[test]
    fn text_lists_every_entry() {
        let out = render_table(&sl2(), Format::Text).unwrap();
        assert!(out.contains("E(X_21)_12 = d(z2/z1, mu2/mu1)"));
        assert_eq!(out.lines().count(), 5);
    }

    #[test]
    fn csv_quotes_commas() {
        let out = render_table(&sl2(), Format::Csv).unwrap();
        assert!(out.contains("21,12,\"d(z2/z1, mu2/mu1)\""));
    }

    #[test]
    fn json_entries_parse_back() {
        let t = sl2();
        let out = render_table(&t, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let entries = v["entries"].as_array().unwrap();
        assert_eq!(entries.len(), 4);
        for (entry, (_, _, e)) in entries.iter().zip(t.iter()) {
            let back: Expr = serde_json::from_value(entry["expr"].clone()).unwrap();
            assert_eq!(&back, e);
        }
    }

    #[test]
    fn latex_has_a_row_per_element() {
        let out = render_table(&sl2(), Format::Latex).unwrap();
        assert_eq!(out.matches("$E(X_").count(), 2);
        assert!("yaml".parse::<Format>().is_err());
    }
}
