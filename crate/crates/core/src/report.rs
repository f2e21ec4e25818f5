//! Tabular report rendering. Values stay exact rationals internally;
//! rounding (half away from zero, two decimals by default) happens only
//! when a cell is rendered. The same report renders as aligned text, CSV,
//! or JSON with identical cell values.

use serde_json::json;

use crate::numeric::{rounded_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Rational(Rational),
    Text(String),
    Count(u64),
}

impl From<Rational> for Cell {
    fn from(value: Rational) -> Self {
        Cell::Rational(value)
    }
}

impl From<&Rational> for Cell {
    fn from(value: &Rational) -> Self {
        Cell::Rational(value.clone())
    }
}

impl From<&str> for Cell {
    fn from(value: &str) -> Self {
        Cell::Text(value.to_string())
    }
}

impl From<String> for Cell {
    fn from(value: String) -> Self {
        Cell::Text(value)
    }
}

impl From<u64> for Cell {
    fn from(value: u64) -> Self {
        Cell::Count(value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub label: String,
    pub cells: Vec<Cell>,
}

/// A titled table of labeled rows. Rows may be shorter than the column
/// header list; missing cells render empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    /// Column headers, not counting the leading label column.
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
    /// Decimal places used when rendering rational cells.
    pub rounding: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    TableText,
    Csv,
    Json,
}

impl Report {
    pub fn new(title: impl Into<String>, columns: Vec<String>) -> Report {
        Report {
            title: title.into(),
            columns,
            rows: Vec::new(),
            rounding: 2,
        }
    }

    pub fn push(&mut self, label: impl Into<String>, cells: Vec<Cell>) {
        self.rows.push(ReportRow {
            label: label.into(),
            cells,
        });
    }

    fn cell_string(&self, cell: &Cell) -> String {
        match cell {
            Cell::Rational(r) => rounded_string(r, self.rounding),
            Cell::Text(t) => t.clone(),
            Cell::Count(c) => c.to_string(),
        }
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::TableText => self.render_table(),
            ReportFormat::Csv => self.render_csv(),
            ReportFormat::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let header: Vec<String> = std::iter::once(String::new())
            .chain(self.columns.iter().cloned())
            .collect();
        let mut grid: Vec<Vec<String>> = vec![header];
        for row in &self.rows {
            let mut line = vec![row.label.clone()];
            line.extend(row.cells.iter().map(|c| self.cell_string(c)));
            grid.push(line);
        }
        let width = grid.iter().map(Vec::len).max().unwrap_or(1);
        let mut col_widths = vec![0usize; width];
        for line in &grid {
            for (i, cell) in line.iter().enumerate() {
                col_widths[i] = col_widths[i].max(cell.chars().count());
            }
        }
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        for line in &grid {
            let rendered: Vec<String> = line
                .iter()
                .enumerate()
                .map(|(i, cell)| format!("{:<width$}", cell, width = col_widths[i]))
                .collect();
            out.push_str(rendered.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> String {
        let escape = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let mut out = String::new();
        let header: Vec<String> = std::iter::once(escape(&self.title))
            .chain(self.columns.iter().map(|c| escape(c)))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = std::iter::once(escape(&row.label))
                .chain(row.cells.iter().map(|c| escape(&self.cell_string(c))))
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "title": self.title,
            "columns": self.columns,
            "rows": self.rows.iter().map(|row| json!({
                "label": row.label,
                "values": row.cells.iter().map(|c| self.cell_string(c)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Renders a list of reports as one document.
pub fn render_all(reports: &[Report], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let value =
                serde_json::Value::Array(reports.iter().map(Report::to_json_value).collect());
            let mut out = serde_json::to_string_pretty(&value).expect("reports serialize");
            out.push('\n');
            out
        }
        _ => {
            let mut out = String::new();
            for (i, report) in reports.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&report.render(format));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{ratio, rational};

    fn sample() -> Report {
        let mut report = Report::new(
            "Desirability",
            vec!["AS1".into(), "AS2".into(), "AS3".into()],
        );
        report.push(
            "Desirability",
            vec![
                Cell::from(ratio(-1, 4)),
                Cell::from(ratio(34, 57)),
                Cell::from(ratio(187, 270)),
            ],
        );
        report.push("Selected", vec![Cell::from("AS3")]);
        report
    }

    #[test]
    fn table_text_uses_display_rounding() {
        let text = sample().render(ReportFormat::TableText);
        assert!(text.contains("-0.25"));
        assert!(text.contains("0.60"));
        assert!(text.contains("0.69"));
        assert!(text.contains("AS3"));
    }

    #[test]
    fn formats_carry_identical_values() {
        let report = sample();
        let csv = report.render(ReportFormat::Csv);
        let json = report.render(ReportFormat::Json);
        for value in ["-0.25", "0.60", "0.69", "AS3"] {
            assert!(csv.contains(value), "csv missing {value}: {csv}");
            assert!(json.contains(value), "json missing {value}: {json}");
        }
        assert!(csv.starts_with("Desirability,AS1,AS2,AS3"));
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["rows"][0]["values"][1], "0.60");
    }

    #[test]
    fn csv_escapes_commas_and_quotes() {
        let mut report = Report::new("t", vec!["a,b".into()]);
        report.push("l\"x", vec![Cell::from("v,1")]);
        let csv = report.render(ReportFormat::Csv);
        assert!(csv.contains("\"a,b\""));
        assert!(csv.contains("\"l\"\"x\""));
        assert!(csv.contains("\"v,1\""));
    }

    #[test]
    fn counts_render_verbatim() {
        let mut report = Report::new("t", vec![]);
        report.push(
            "profiles",
            vec![Cell::from(216u64), Cell::from(rational(36))],
        );
        let text = report.render(ReportFormat::TableText);
        assert!(text.contains("216"));
        assert!(text.contains("36.00"));
    }
}
