use std::io::{self, Write};

use serde_json::Value;

/// One compact JSON object per line.
pub fn write_json_lines<W: Write>(records: &[Value], mut w: W) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

/// Two-column `key  value` tables, nested objects flattened with dots.
pub fn write_tables<W: Write>(records: &[Value], mut w: W) -> io::Result<()> {
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            writeln!(w)?;
        }
        let mut rows = Vec::new();
        flatten("", r, &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            writeln!(w, "{k:<width$}  {v}")?;
        }
    }
    Ok(())
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), "-".into())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}
