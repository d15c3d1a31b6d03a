use serde::Serialize;
use std::fmt::Write;

/// 17 significant digits; infinities as `inf`.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.16e}")
    }
}

/// A numeric table with a header row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    #[serde(serialize_with = "rows_ext")]
    pub rows: Vec<Vec<f64>>,
}

fn rows_ext<S: serde::Serializer>(rows: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
    let encoded: Vec<Vec<serde_json::Value>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| match serde_json::Number::from_f64(v) {
                    Some(num) => serde_json::Value::Number(num),
                    None => serde_json::Value::String(fmt_num(v)),
                })
                .collect()
        })
        .collect();
    encoded.serialize(s)
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        self.to_csv_prefixed(None)
    }

    /// CSV with an optional leading `report` column holding `label`.
    pub fn to_csv_prefixed(&self, label: Option<&str>) -> String {
        let mut out = String::new();
        if label.is_some() {
            out.push_str("report,");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            if let Some(l) = label {
                write!(out, "{l},").unwrap();
            }
            let cells: Vec<String> = row.iter().map(|&v| fmt_num(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_formatting() {
        let mut t = Table::new(&["t", "value"]);
        t.push(vec![0.5, f64::INFINITY]);
        t.push(vec![1.0, 1.0 / 3.0]);
        assert_eq!(
            t.to_csv(),
            "t,value\n5.0000000000000000e-1,inf\n1.0000000000000000e0,3.3333333333333331e-1\n"
        );
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"columns":["t","value"],"rows":[[0.5,"inf"],[1.0,0.3333333333333333]]}"#);
    }
}
