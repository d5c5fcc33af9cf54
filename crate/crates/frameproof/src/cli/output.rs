//! Output records: one flat set of key/value fields plus an optional row
//! table, rendered as text, JSON (one object) or CSV. Values are formatted
//! once, so every format carries identical digits.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// Floats are printed with 12 significant digits so golden files stay
/// portable: fixed notation while the exponent allows, scientific otherwise.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let scientific = format!("{x:.11e}");
    let exp: i32 = scientific
        .split_once('e')
        .expect("scientific notation has an exponent")
        .1
        .parse()
        .expect("exponent is an integer");
    if (-4..12).contains(&exp) {
        format!("{x:.*}", (11 - exp).max(0) as usize)
    } else {
        scientific
    }
}

#[derive(Debug, Clone, Default)]
pub struct TableData {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Default)]
pub struct OutputRecord {
    fields: Vec<(String, String)>,
    table: Option<TableData>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        let mut record = OutputRecord::default();
        record.push("command", command);
        record.push("version", env!("CARGO_PKG_VERSION"));
        record
    }

    pub fn push(&mut self, key: &str, value: impl Into<String>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn push_float(&mut self, key: &str, value: f64) {
        self.push(key, format_float(value));
    }

    pub fn set_table(&mut self, table: TableData) {
        self.table = Some(table);
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Json => self.render_json(),
            OutputFormat::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.fields {
            out.push_str(&format!("{key}: {value}\n"));
        }
        if let Some(table) = &self.table {
            out.push('\n');
            let mut widths: Vec<usize> = table.columns.iter().map(String::len).collect();
            for row in &table.rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let render_row = |cells: &[String]| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            out.push_str(&render_row(&table.columns));
            out.push('\n');
            for row in &table.rows {
                out.push_str(&render_row(row));
                out.push('\n');
            }
        }
        out
    }

    fn render_json(&self) -> String {
        // field order is part of the output contract, so the object is
        // assembled by hand; serde_json handles the string escaping
        let escape = |s: &str| serde_json::to_string(s).expect("strings always serialize");
        let mut parts: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("{}: {}", escape(k), escape(v)))
            .collect();
        if let Some(table) = &self.table {
            let rows: Vec<String> = table
                .rows
                .iter()
                .map(|row| {
                    let cells: Vec<String> = table
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| format!("{}: {}", escape(c), escape(v)))
                        .collect();
                    format!("{{{}}}", cells.join(", "))
                })
                .collect();
            parts.push(format!("\"rows\": [{}]", rows.join(", ")));
        }
        format!("{{{}}}\n", parts.join(", "))
    }

    fn render_csv(&self) -> String {
        let quote = |s: &str| {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let join = |cells: &[String]| {
            cells
                .iter()
                .map(|c| quote(c))
                .collect::<Vec<_>>()
                .join(",")
        };
        match &self.table {
            Some(table) => {
                let mut out = String::new();
                for (key, value) in &self.fields {
                    out.push_str(&format!("# {key}: {value}\n"));
                }
                out.push_str(&join(&table.columns));
                out.push('\n');
                for row in &table.rows {
                    out.push_str(&join(row));
                    out.push('\n');
                }
                out
            }
            None => {
                let keys: Vec<String> = self.fields.iter().map(|(k, _)| k.clone()).collect();
                let values: Vec<String> = self.fields.iter().map(|(_, v)| v.clone()).collect();
                format!("{}\n{}\n", join(&keys), join(&values))
            }
        }
    }
}
