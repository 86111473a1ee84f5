//! CSV assembly: header row, `#` metadata lines, 17 significant digits.

use std::fmt::Write;

#[derive(Debug, Default)]
pub struct Csv {
    meta: Vec<String>,
    header: Vec<&'static str>,
    rows: Vec<String>,
    trailer: Vec<String>,
}

/// A single CSV field.
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Self::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Self::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Self::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Self::Text(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Self::Text(if v { "true" } else { "false" }.into())
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Self::Empty, Self::Num)
    }
}

pub fn num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.16e}")
    }
}

impl Csv {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), ..Self::default() }
    }

    /// `# key=value` line above the header.
    pub fn meta(&mut self, line: impl Into<String>) {
        self.meta.push(line.into());
    }

    /// `# ...` line after the data.
    pub fn trailer(&mut self, line: impl Into<String>) {
        self.trailer.push(line.into());
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.header.len());
        let mut line = String::new();
        for (i, c) in cells.into_iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            match c {
                Cell::Int(v) => write!(line, "{v}").unwrap(),
                Cell::Num(v) => line.push_str(&num(v)),
                Cell::Text(s) => line.push_str(&s),
                Cell::Empty => {}
            }
        }
        self.rows.push(line);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for m in &self.meta {
            writeln!(out, "# {m}").unwrap();
        }
        writeln!(out, "{}", self.header.join(",")).unwrap();
        for r in &self.rows {
            writeln!(out, "{r}").unwrap();
        }
        for t in &self.trailer {
            writeln!(out, "# {t}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(std::f64::consts::PI), "3.1415926535897931e0");
        assert_eq!(num(f64::NAN), "nan");
        let mut c = Csv::new(&["k", "x", "g"]);
        c.meta("seed=1");
        c.row(vec![1usize.into(), 0.5.into(), Cell::Empty]);
        c.trailer("done");
        assert_eq!(c.render(), "# seed=1\nk,x,g\n1,5.0000000000000000e-1,\n# done\n");
    }
}
