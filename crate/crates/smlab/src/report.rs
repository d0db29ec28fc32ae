//! CSV and JSON emission shared by the report types. CSV files start with the
//! schema comment line `# smlab-v1`; rows are written in a canonical order so a
//! fixed command line and seed produce byte-identical output.

pub const CSV_SCHEMA: &str = "# smlab-v1";

/// Render a CSV document with the schema comment, a header row, and data rows.
pub fn csv_document(columns: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(CSV_SCHEMA);
    out.push('\n');
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), columns.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Format an f64 so that equal values always render identically.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.6}")
}
