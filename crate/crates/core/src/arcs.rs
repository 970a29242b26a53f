//! Arc diagrams of a matching drawn over its string: plain text, Graphviz DOT, and SVG.

use std::fmt::Write as _;

use crate::matching::{Matching, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Dot,
    Svg,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "dot" => Ok(Format::Dot),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacedArc {
    pub left: usize,
    pub right: usize,
    /// Text row, 0 being nearest the symbols. Overlapping arcs never share a row.
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcLayout {
    pub labels: Vec<String>,
    pub arcs: Vec<PlacedArc>,
}

impl ArcLayout {
    /// Lays out a validated matching; rows are assigned greedily by left endpoint.
    pub fn new<S: AsRef<str> + PartialEq>(labels: &[S], m: &Matching) -> Result<Self, Violation> {
        m.validate(labels)?;
        let mut row_ends: Vec<usize> = Vec::new();
        let mut arcs = Vec::with_capacity(m.len());
        for &(left, right) in m.pairs() {
            let level = match row_ends.iter().position(|&end| end < left) {
                Some(r) => r,
                None => {
                    row_ends.push(0);
                    row_ends.len() - 1
                }
            };
            row_ends[level] = right;
            arcs.push(PlacedArc { left, right, level });
        }
        Ok(ArcLayout {
            labels: labels.iter().map(|s| s.as_ref().to_string()).collect(),
            arcs,
        })
    }

    pub fn levels(&self) -> usize {
        self.arcs.iter().map(|a| a.level + 1).max().unwrap_or(0)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Ascii => self.ascii(),
            Format::Dot => self.dot(),
            Format::Svg => self.svg(),
        }
    }

    pub fn ascii(&self) -> String {
        let cell = self.labels.iter().map(|l| l.len()).max().unwrap_or(1) + 1;
        let width = self.labels.len() * cell;
        let levels = self.levels();
        let mut grid = vec![vec![b' '; width]; levels];
        // horizontal bars first, then verticals dropping to the symbol row
        for a in &self.arcs {
            let row = levels - 1 - a.level;
            let (l, r) = (a.left * cell, a.right * cell);
            grid[row][l] = b'[';
            grid[row][r] = b']';
            for c in &mut grid[row][l + 1..r] {
                *c = b'-';
            }
        }
        for a in &self.arcs {
            for row in &mut grid[levels - a.level..] {
                row[a.left * cell] = b'|';
                row[a.right * cell] = b'|';
            }
        }
        let mut out = String::new();
        for row in grid {
            let line = String::from_utf8(row).expect("ascii");
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let mut text = String::new();
        for l in &self.labels {
            let _ = write!(text, "{l:<cell$}");
        }
        out.push_str(text.trim_end());
        out.push('\n');
        out
    }

    pub fn dot(&self) -> String {
        let mut out = String::from("graph matching {\n  rankdir=LR;\n  node [shape=plaintext];\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  p{i} [label=\"{l}\"];");
        }
        if !self.labels.is_empty() {
            let ids: Vec<String> = (0..self.labels.len()).map(|i| format!("p{i}")).collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
            if ids.len() > 1 {
                let _ = writeln!(out, "  {} [style=invis];", ids.join(" -- "));
            }
        }
        for a in &self.arcs {
            let _ = writeln!(out, "  p{} -- p{} [constraint=false];", a.left, a.right);
        }
        out.push_str("}\n");
        out
    }

    pub fn svg(&self) -> String {
        const DX: usize = 28;
        const MARGIN: usize = 20;
        let n = self.labels.len();
        let max_span = self
            .arcs
            .iter()
            .map(|a| a.right - a.left)
            .max()
            .unwrap_or(0);
        let radius = max_span * DX / 2;
        let baseline = MARGIN + radius + 8;
        let width = 2 * MARGIN + n.saturating_sub(1) * DX;
        let height = baseline + MARGIN + 8;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
        );
        let _ = writeln!(
            out,
            "  <line x1=\"{MARGIN}\" y1=\"{baseline}\" x2=\"{}\" y2=\"{baseline}\" stroke=\"#bbb\"/>",
            width - MARGIN
        );
        for a in &self.arcs {
            let x1 = MARGIN + a.left * DX;
            let x2 = MARGIN + a.right * DX;
            let r = (x2 - x1) / 2;
            let _ = writeln!(
                out,
                "  <path d=\"M {x1} {baseline} A {r} {r} 0 0 1 {x2} {baseline}\" fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\"/>"
            );
        }
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(
                out,
                "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
                MARGIN + i * DX,
                baseline + 16,
                l
            );
        }
        out.push_str("</svg>\n");
        out
    }
}
