//! Zero-pattern diagrams: `0` marks entries forced to zero, `*` entries that
//! may be nonzero, and gray cells mark the support of a highlighted matrix.

use std::fmt::Write as _;

use num::Zero;

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::patterns::IndexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Zero,
    Star,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub symbol: Symbol,
    pub gray: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPatternDiagram {
    n: usize,
    cells: Vec<Vec<Cell>>,
}

pub fn render_diagram(set: &IndexSet, highlight: Option<&SymMatrix>) -> Result<ZeroPatternDiagram> {
    let n = set.order();
    if let Some(h) = highlight {
        if h.order() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: h.order(),
            });
        }
    }
    let cells = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| Cell {
                    symbol: if set.contains(r + 1, c + 1) {
                        Symbol::Zero
                    } else {
                        Symbol::Star
                    },
                    gray: highlight.is_some_and(|h| !h.get(r, c).is_zero()),
                })
                .collect()
        })
        .collect();
    Ok(ZeroPatternDiagram { n, cells })
}

impl ZeroPatternDiagram {
    pub fn order(&self) -> usize {
        self.n
    }

    /// 0-based cell access.
    pub fn cell(&self, r: usize, c: usize) -> Cell {
        self.cells[r][c]
    }

    /// `n` lines of `n` space-separated symbols; gray cells wrapped in `[ ]`.
    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        for row in &self.cells {
            let tokens: Vec<String> = row
                .iter()
                .map(|cell| {
                    let s = match cell.symbol {
                        Symbol::Zero => "0",
                        Symbol::Star => "*",
                    };
                    if cell.gray {
                        format!("[{s}]")
                    } else {
                        s.to_string()
                    }
                })
                .collect();
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_svg(&self) -> String {
        const CELL: usize = 32;
        let size = CELL * self.n;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        for (r, row) in self.cells.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                let (x, y) = (c * CELL, r * CELL);
                let fill = if cell.gray { "#bbbbbb" } else { "#ffffff" };
                let _ = writeln!(
                    out,
                    r##"  <rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#000000"/>"##
                );
                let text = match cell.symbol {
                    Symbol::Zero => "0",
                    Symbol::Star => "*",
                };
                let _ = writeln!(
                    out,
                    r#"  <text x="{}" y="{}" font-family="monospace" font-size="16" text-anchor="middle">{text}</text>"#,
                    x + CELL / 2,
                    y + CELL / 2 + 6
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }
}
