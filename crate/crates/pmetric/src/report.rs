//! Line-oriented key/value reports: every value is exact rational text,
//! and the parsed input space is embedded so verdicts can be recomputed
//! from the report alone.

use std::fmt::Display;

use crate::rational::{fmt_rat, Rat};
use crate::space::FinitePMetricSpace;

#[derive(Debug, Clone, Default)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Self::default();
        r.push("command", command);
        r
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    pub fn push_rat(&mut self, key: &str, value: &Rat) {
        self.push(key, fmt_rat(value));
    }

    pub fn push_bool(&mut self, key: &str, value: bool) {
        self.push(key, value);
    }

    /// Embeds a space under `prefix.*` keys: points, labels, one row per
    /// line.
    pub fn embed_space(&mut self, prefix: &str, space: &FinitePMetricSpace) {
        self.push(&format!("{prefix}.points"), space.len());
        self.push(&format!("{prefix}.labels"), space.labels().join(" "));
        for (i, row) in space.matrix().iter().enumerate() {
            let cells: Vec<String> = row.iter().map(fmt_rat).collect();
            self.push(&format!("{prefix}.row.{i}"), cells.join(" "));
        }
    }

    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::space::two_point_y;

    #[test]
    fn reports_are_line_oriented_key_value() {
        let mut r = Report::new("check");
        r.push_bool("valid", true);
        r.push_rat("epsilon", &rat(1, 2));
        r.embed_space("space", &two_point_y());
        let text = r.render();
        assert_eq!(
            text,
            "command: check\nvalid: true\nepsilon: 1/2\nspace.points: 2\n\
             space.labels: a b\nspace.row.0: 0 1\nspace.row.1: 1 1\n"
        );
        for line in text.lines() {
            assert!(line.contains(": "), "not key/value: {line}");
        }
    }
}
