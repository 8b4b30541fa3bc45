//! Plain-text and JSON rendering.

use serde_json::{json, Value};

/// Result of a subcommand: the JSON document parts and the plain rendering.
pub struct Report {
    parameters: Value,
    result: Value,
    breakdown: Vec<Value>,
    text: String,
}

impl Report {
    pub fn new(parameters: Value, result: Value, breakdown: Vec<Value>, text: String) -> Self {
        Self {
            parameters,
            result,
            breakdown,
            text,
        }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let doc = json!({
                "parameters": self.parameters,
                "result": self.result,
                "breakdown": self.breakdown,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("JSON values serialise"))
        } else {
            self.text.clone()
        }
    }
}

/// A table whose cells may be unavailable (rendered empty / null).
pub struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<Option<String>>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Self {
            headers: headers.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Option<String>>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.headers.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<&str> = row.iter().map(|c| c.as_deref().unwrap_or("")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, parameters: Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, Value> = self
                    .headers
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.to_string(), c.as_ref().map_or(Value::Null, |v| json!(v))))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "parameters": parameters,
            "result": { "columns": self.headers, "rows": self.rows.len() },
            "breakdown": rows,
        });
        format!("{}\n", serde_json::to_string_pretty(&doc).expect("JSON values serialise"))
    }
}
