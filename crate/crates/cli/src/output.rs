use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, ValueEnum)]
pub enum Tabular {
    /// One JSON object per line.
    Json,
    /// A header row, then one row per record. Nested fields are addressed as `a.b`.
    Csv,
    /// Short human-readable lines.
    Text,
}

pub struct Row {
    pub json: Value,
    text: Option<String>,
}

impl Row {
    pub fn new(json: Value) -> Self {
        Row { json, text: None }
    }

    pub fn text(mut self, line: String) -> Self {
        self.text = Some(line);
        self
    }
}

fn lookup<'a>(v: &'a Value, path: &str) -> &'a Value {
    path.split('.')
        .fold(v, |v, key| v.get(key).unwrap_or(&Value::Null))
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| x.is_number()) => items
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

pub fn emit(rows: &[Row], out: Tabular, columns: &[&str]) {
    match out {
        Tabular::Json => {
            for r in rows {
                println!("{}", r.json);
            }
        }
        Tabular::Csv => {
            println!("{}", columns.join(","));
            for r in rows {
                let cells: Vec<String> = columns
                    .iter()
                    .map(|c| csv_cell(lookup(&r.json, c)))
                    .collect();
                println!("{}", cells.join(","));
            }
        }
        Tabular::Text => {
            for r in rows {
                match &r.text {
                    Some(t) => println!("{t}"),
                    None => println!("{}", r.json),
                }
            }
        }
    }
}
