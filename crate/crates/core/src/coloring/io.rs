//! Precoloring file format:
//!
//! ```text
//! palette <k>
//! vcolor <v> <c>
//! ecolor <u> <v> <c>
//! ```
//!
//! `#` starts a comment. Every mentioned vertex belongs to `H`, every
//! `ecolor` line contributes an edge of `H`.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Color, ColoringError, Item, PartialTotalColoring};
use crate::planar::{tokenize_line, Edge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrecoloringParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

impl PartialTotalColoring {
    pub fn parse(text: &str) -> Result<Self, PrecoloringParseError> {
        let mut palette: Option<Color> = None;
        let mut entries: Vec<(usize, usize, Item, Color)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens = tokenize_line(content);
            let Some(&(col, first)) = tokens.first() else {
                continue;
            };
            let syntax = |column: usize, message: String| PrecoloringParseError::Syntax { line, column, message };
            let number = |(column, tok): (usize, &str)| -> Result<u64, PrecoloringParseError> {
                tok.parse().map_err(|_| PrecoloringParseError::Syntax {
                    line,
                    column,
                    message: format!("expected a non-negative integer, found `{tok}`"),
                })
            };
            let arity = |n: usize, usage: &str| {
                if tokens.len() == n + 1 {
                    Ok(())
                } else {
                    Err(syntax(col, format!("expected `{usage}`")))
                }
            };
            match first {
                "palette" => {
                    arity(1, "palette <k>")?;
                    if palette.is_some() {
                        return Err(syntax(col, "duplicate `palette` line".into()));
                    }
                    palette = Some(to_color(number(tokens[1])?, tokens[1].0, line)?);
                }
                "vcolor" => {
                    arity(2, "vcolor <v> <c>")?;
                    let v = number(tokens[1])? as usize;
                    let c = to_color(number(tokens[2])?, tokens[2].0, line)?;
                    entries.push((line, col, Item::vertex(v), c));
                }
                "ecolor" => {
                    arity(3, "ecolor <u> <v> <c>")?;
                    let u = number(tokens[1])? as usize;
                    let v = number(tokens[2])? as usize;
                    if u == v {
                        return Err(syntax(tokens[2].0, format!("edge {u}-{v} is a self-loop")));
                    }
                    let c = to_color(number(tokens[3])?, tokens[3].0, line)?;
                    entries.push((line, col, Item::edge(Edge::new(u, v)), c));
                }
                other => return Err(syntax(col, format!("unknown directive `{other}`"))),
            }
        }
        let Some(k) = palette else {
            return Err(PrecoloringParseError::Syntax {
                line: 1,
                column: 1,
                message: "missing `palette <k>` line".into(),
            });
        };
        let mut c = PartialTotalColoring::new(k);
        for (line, column, item, color) in entries {
            if c.get(item).is_some() {
                return Err(PrecoloringParseError::Syntax {
                    line,
                    column,
                    message: format!("{item} colored twice"),
                });
            }
            c.set(item, color)?;
        }
        Ok(c)
    }

    /// Serializes to the precoloring file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "palette {}", self.palette());
        for (v, c) in self.vertex_colors() {
            let _ = writeln!(out, "vcolor {v} {c}");
        }
        for (e, c) in self.edge_colors() {
            let _ = writeln!(out, "ecolor {} {} {c}", e.u, e.v);
        }
        out
    }
}

fn to_color(x: u64, column: usize, line: usize) -> Result<Color, PrecoloringParseError> {
    Color::try_from(x).map_err(|_| PrecoloringParseError::Syntax {
        line,
        column,
        message: format!("color {x} is too large"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "palette 5 # k\nvcolor 1 1\nvcolor 2 2\necolor 2 1 3\n";
        let c = PartialTotalColoring::parse(text).unwrap();
        assert_eq!(c.palette(), 5);
        assert_eq!(c.edge_color(Edge::new(1, 2)), Some(3));
        assert_eq!(c.to_text(), "palette 5\nvcolor 1 1\nvcolor 2 2\necolor 1 2 3\n");
        assert_eq!(PartialTotalColoring::parse(&c.to_text()).unwrap(), c);
        let h = c.subgraph();
        assert_eq!(h.vertices().len(), 2);
        assert_eq!(h.edges().len(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            PartialTotalColoring::parse("vcolor 0 1\n"),
            Err(PrecoloringParseError::Syntax { message, .. }) if message.contains("palette")
        ));
        assert!(matches!(
            PartialTotalColoring::parse("palette 3\nvcolor 0 4\n"),
            Err(PrecoloringParseError::Coloring(ColoringError::ColorOutOfRange { .. }))
        ));
        assert_eq!(
            PartialTotalColoring::parse("palette 3\necolor 0 x 1\n"),
            Err(PrecoloringParseError::Syntax {
                line: 2,
                column: 10,
                message: "expected a non-negative integer, found `x`".into()
            })
        );
        assert!(PartialTotalColoring::parse("palette 3\nvcolor 0 1\nvcolor 0 2\n").is_err());
    }
}
