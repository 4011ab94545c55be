//! Plain-text rendering shared by the commands.

use std::fmt::Write;

/// Every number in the output goes through here: 4 decimals, no `-0.0000`.
pub fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_owned()
    } else {
        s
    }
}

pub fn opt_num(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_owned(), num)
}

/// Column-aligned table. Columns after `text_columns` are right-aligned.
#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    text_columns: usize,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>, text_columns: usize) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new(), text_columns }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn render(&self, out: &mut String) {
        let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let mut line = String::new();
            for (k, (cell, &w)) in row.iter().zip(&widths).enumerate() {
                if k > 0 {
                    line.push_str("  ");
                }
                if k < self.text_columns {
                    let _ = write!(line, "{cell:<w$}");
                } else {
                    let _ = write!(line, "{cell:>w$}");
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
}
