use std::io::Write;

use serde_json::Value;

use crate::commands::{CommandResult, Layout};
use crate::Format;

/// Payload to stdout, diagnostics to stderr.
pub fn emit(result: &CommandResult, format: Format) {
    for line in &result.diagnostics {
        eprintln!("hyperinv: {line}");
    }
    if result.payload.is_null() {
        return;
    }
    let body = match format {
        Format::Json => {
            let json = serde_json::to_string_pretty(&result.payload).expect("values serialize");
            format!("{json}\n")
        }
        Format::Text => text(result),
    };
    // A reader that hangs up early is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

fn text(result: &CommandResult) -> String {
    match result.layout {
        Layout::BoundsTable => bounds_table(&result.payload),
        Layout::Checks => checks(&result.payload),
        Layout::Fields => fields(&result.payload),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn fields(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}: {}\n", scalar(v)))
            .collect(),
        other => format!("{}\n", scalar(other)),
    }
}

fn table(header: &[&str], rows: &[Vec<String>], right: bool) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| {
                if right {
                    format!("{c:>w$}")
                } else {
                    format!("{c:<w$}")
                }
            })
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn bounds_table(v: &Value) -> String {
    let rows: Vec<Vec<String>> = v["rows"]
        .as_array()
        .map(|rows| {
            rows.iter()
                .map(|r| {
                    vec![
                        scalar(&r["d"]),
                        scalar(&r["b"]["lower"]),
                        scalar(&r["b"]["upper"]),
                        scalar(&r["i"]["lower"]),
                        scalar(&r["i"]["upper"]),
                    ]
                })
                .collect()
        })
        .unwrap_or_default();
    let mut out = table(
        &["d", "b_lower", "b_upper", "i_lower", "i_upper"],
        &rows,
        true,
    );
    if let Some(t) = v.get("two_sided") {
        out.push_str(&format!(
            "b({}, {}): lower {}, upper {} (level sum {})\n",
            scalar(&t["d"]),
            scalar(&t["d2"]),
            scalar(&t["lower"]),
            scalar(&t["upper"]),
            scalar(&t["upper_level_sum"]),
        ));
    }
    out
}

fn checks(v: &Value) -> String {
    let rows: Vec<Vec<String>> = v["checks"]
        .as_array()
        .map(|cs| {
            cs.iter()
                .map(|c| {
                    let verdict = if c["passed"].as_bool() == Some(true) {
                        "PASS"
                    } else {
                        "FAIL"
                    };
                    vec![
                        verdict.to_string(),
                        scalar(&c["name"]),
                        scalar(&c["expected"]),
                        scalar(&c["observed"]),
                    ]
                })
                .collect()
        })
        .unwrap_or_default();
    table(&["", "check", "expected", "observed"], &rows, false)
}
