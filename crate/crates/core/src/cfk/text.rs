//! The line-oriented `cfk v1` interchange format.
//!
//! ```text
//! cfk v1
//! gen x0 A=1 M=0
//! gen x1 A=0 M=-1
//! arr x1 x0 u=1
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::CfkComplex;

pub const HEADER: &str = "cfk v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl CfkComplex {
    /// Canonical text: generators by `(A, M, name)`, arrows by
    /// `(source name, target name, u)`.
    pub fn to_text(&self) -> String {
        let mut gens: Vec<_> = self.generators().iter().collect();
        gens.sort_by(|a, b| {
            (a.alexander, a.maslov, &a.name).cmp(&(b.alexander, b.maslov, &b.name))
        });
        let mut arrows: Vec<_> = self
            .arrows()
            .map(|a| {
                (
                    &self.generator(a.source).name,
                    &self.generator(a.target).name,
                    a.u_exp,
                )
            })
            .collect();
        arrows.sort();
        let mut out = String::from(HEADER);
        out.push('\n');
        for g in gens {
            writeln!(out, "gen {} A={} M={}", g.name, g.alexander, g.maslov).unwrap();
        }
        for (s, t, u) in arrows {
            writeln!(out, "arr {s} {t} u={u}").unwrap();
        }
        out
    }

    /// Parses the text format. Blank lines and lines starting with `#` are
    /// skipped. Gradings are not checked here; see [`super::validate`].
    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let lines: Vec<(usize, Vec<Token<'_>>)> = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, tokenize(l)))
            .filter(|(_, toks)| toks.first().is_some_and(|t| !t.text.starts_with('#')))
            .collect();
        let Some(((first_line, header), body)) = lines.split_first() else {
            return Err(ParseError {
                line: 1,
                column: 1,
                message: format!("empty input, expected '{HEADER}'"),
            });
        };
        let header_text: Vec<&str> = header.iter().map(|t| t.text).collect();
        if header_text != ["cfk", "v1"] {
            return Err(err(
                *first_line,
                &header[0],
                format!("expected header '{HEADER}'"),
            ));
        }

        let mut c = CfkComplex::new();
        let mut arrows = Vec::new();
        for (line, toks) in body {
            let line = *line;
            match toks[0].text {
                "gen" => {
                    expect_len(line, toks, 4, "gen <name> A=<int> M=<int>")?;
                    let a = keyed_int(line, &toks[2], "A")?;
                    let m = keyed_int(line, &toks[3], "M")?;
                    c.add_generator(toks[1].text, a, m)
                        .map_err(|e| err(line, &toks[1], e.to_string()))?;
                }
                "arr" => {
                    expect_len(line, toks, 4, "arr <source> <target> u=<nonneg int>")?;
                    let u = keyed_int(line, &toks[3], "u")?;
                    if u < 0 {
                        return Err(err(
                            line,
                            &toks[3],
                            "arrow power must be non-negative".into(),
                        ));
                    }
                    arrows.push((line, toks[1], toks[2], u));
                }
                other => {
                    return Err(err(line, &toks[0], format!("unknown directive {other:?}")));
                }
            }
        }
        for (line, s, t, u) in arrows {
            let lookup = |tok: Token<'_>| {
                c.index_of(tok.text)
                    .ok_or_else(|| err(line, &tok, format!("unknown generator {:?}", tok.text)))
            };
            let (si, ti) = (lookup(s)?, lookup(t)?);
            c.toggle_arrow(si, ti, u);
        }
        Ok(c)
    }
}

impl FromStr for CfkComplex {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_text(s)
    }
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut toks = Vec::new();
    let mut start = None;
    for (i, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                toks.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    toks
}

fn err(line: usize, tok: &Token<'_>, message: String) -> ParseError {
    ParseError {
        line,
        column: tok.column,
        message,
    }
}

fn expect_len(line: usize, toks: &[Token<'_>], n: usize, shape: &str) -> Result<(), ParseError> {
    if toks.len() == n {
        return Ok(());
    }
    let at = toks.get(n).unwrap_or(&toks[toks.len() - 1]);
    Err(err(line, at, format!("expected '{shape}'")))
}

fn keyed_int(line: usize, tok: &Token<'_>, key: &str) -> Result<i64, ParseError> {
    tok.text
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| err(line, tok, format!("expected {key}=<int>")))
}
