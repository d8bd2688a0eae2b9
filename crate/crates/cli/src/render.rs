use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

/// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
pub fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object))
}

fn table(rows: &[Value], sep: &str, out: &mut String) {
    let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
    out.push_str(&keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(sep));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = keys.iter().map(|k| scalar(&row[k.as_str()])).collect();
        out.push_str(&cells.join(sep));
        out.push('\n');
    }
}

/// JSON is one line. Text gives `key: value` lines and tables; TSV gives
/// only the tables when there are any, `key<TAB>value` lines otherwise.
pub fn render(v: &Value, format: Format) -> String {
    let mut out = String::new();
    let Value::Object(map) = v else {
        // Raw payloads such as an SVG document.
        out.push_str(&scalar(v));
        if !out.ends_with('\n') {
            out.push('\n');
        }
        return out;
    };
    match format {
        Format::Json => {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        Format::Text => {
            for (k, val) in map.iter().filter(|(k, _)| k.as_str() != "schema") {
                if is_table(val) {
                    out.push_str(&format!("{k}:\n"));
                    table(val.as_array().unwrap(), "  ", &mut out);
                } else {
                    out.push_str(&format!("{k}: {}\n", scalar(val)));
                }
            }
        }
        Format::Tsv => {
            let tables: Vec<&Value> = map.values().filter(|v| is_table(v)).collect();
            if tables.is_empty() {
                for (k, val) in map.iter().filter(|(k, _)| k.as_str() != "schema") {
                    out.push_str(&format!("{k}\t{}\n", scalar(val)));
                }
            } else {
                for t in tables {
                    table(t.as_array().unwrap(), "\t", &mut out);
                }
            }
        }
    }
    out
}
