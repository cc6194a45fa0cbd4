use serde_json::Value;

use crate::Format;

pub(crate) fn render(value: &Value, csv: Option<&(Vec<String>, Vec<Vec<String>>)>, format: Format) -> Result<String, String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(value).expect("serializable")),
        Format::Table => Ok(table(value)),
        Format::Csv => {
            let (header, rows) = csv.ok_or("csv output is available for scan and quartic only")?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).map_err(|e| e.to_string())?;
            for row in rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            let text = String::from_utf8(bytes).expect("utf-8");
            Ok(text.trim_end().to_string())
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(", ")
        }
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join("; "),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

/// Key/value lines for an object; arrays of objects become column tables.
fn table(value: &Value) -> String {
    let Value::Object(map) = value else {
        return scalar(value);
    };
    let mut out = Vec::new();
    let width = map.keys().map(String::len).max().unwrap_or(0);
    let mut sections = Vec::new();
    for (k, v) in map {
        match v {
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                sections.push((k, items));
            }
            Value::Object(inner) if inner.values().any(Value::is_array) => {
                // tagged content such as {"kind": ..., "members": [...]}
                out.push(format!("{k:width$}  {}", scalar(inner.get("kind").unwrap_or(&Value::Null))));
                if let Some(Value::Array(items)) = inner.get("members") {
                    sections.push((k, items));
                }
            }
            _ => out.push(format!("{k:width$}  {}", scalar(v))),
        }
    }
    for (name, items) in sections {
        out.push(String::new());
        out.push(format!("{name}:"));
        out.push(columns(items));
    }
    out.join("\n")
}

fn columns(items: &[Value]) -> String {
    let mut keys: Vec<String> = Vec::new();
    for item in items {
        if let Value::Object(m) = item {
            for k in m.keys() {
                if !keys.contains(k) {
                    keys.push(k.clone());
                }
            }
        }
    }
    let rows: Vec<Vec<String>> = items
        .iter()
        .map(|item| keys.iter().map(|k| scalar(item.get(k).unwrap_or(&Value::Null))).collect())
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| rows.iter().map(|r| r[i].len()).chain([k.len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(keys.iter().map(String::as_str).collect())];
    for r in &rows {
        out.push(line(r.iter().map(String::as_str).collect()));
    }
    out.join("\n")
}
