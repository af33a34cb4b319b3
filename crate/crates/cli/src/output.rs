//! Table emission: CSV and JSON writers with a fixed floating-point
//! rendering so identical configurations produce byte-identical files.

use cocycle_core::Result;

/// Formats with 12 significant digits, plain notation for moderate
/// magnitudes and scientific otherwise (the `%g` convention).
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..12).contains(&mag) {
        let prec = (11 - mag).max(0) as usize;
        trim_zeros(format!("{x:.prec$}"))
    } else {
        format!("{x:.11e}")
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Serializes rows to CSV with the given header.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| cocycle_core::Error::Io {
        path: "<csv buffer>".into(),
        message: e.to_string(),
    })?;
    String::from_utf8(bytes).map_err(|e| cocycle_core::Error::Io {
        path: "<csv buffer>".into(),
        message: e.to_string(),
    })
}

fn csv_err(e: csv::Error) -> cocycle_core::Error {
    cocycle_core::Error::Io {
        path: "<csv buffer>".into(),
        message: e.to_string(),
    }
}

/// Pretty JSON plus a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("rows serialize");
    s.push('\n');
    s
}
