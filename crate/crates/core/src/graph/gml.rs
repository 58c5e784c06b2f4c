//! A tolerant GML reader and a canonical GML writer.
//!
//! The reader understands `key value` lists where a value is an integer, a
//! real, a quoted string or a bracketed sub-list. Only `graph`, `directed`,
//! `node.id`, `node.label`, `edge.source`, `edge.target` and `edge.weight`
//! are interpreted; everything else is skipped.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct RawNode {
    pub id: i64,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawEdge {
    pub source: i64,
    pub target: i64,
    pub weight: Option<f64>,
}

/// A graph exactly as declared in the file, before simplification.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawGraphRecord {
    pub directed: bool,
    pub nodes: Vec<RawNode>,
    pub entries: Vec<RawEdge>,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Key(String),
    Int(i64),
    Real(f64),
    Str(String),
    Open,
    Close,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            src: text.as_bytes(),
            pos: 0,
            line: 1,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::GmlSyntax {
            line: self.line,
            message: message.into(),
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.src.get(self.pos) {
            match c {
                b'\n' => {
                    self.line += 1;
                    self.pos += 1;
                }
                b'#' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    /// Next token with the line it starts on.
    fn next(&mut self) -> Result<Option<(Token, usize)>> {
        self.skip_trivia();
        let Some(&c) = self.src.get(self.pos) else {
            return Ok(None);
        };
        let line = self.line;
        let tok =
            match c {
                b'[' => {
                    self.pos += 1;
                    Token::Open
                }
                b']' => {
                    self.pos += 1;
                    Token::Close
                }
                b'"' => {
                    self.pos += 1;
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos] != b'"' {
                        if self.src[self.pos] == b'\n' {
                            self.line += 1;
                        }
                        self.pos += 1;
                    }
                    if self.pos >= self.src.len() {
                        return Err(Error::GmlSyntax {
                            line,
                            message: "unterminated string".into(),
                        });
                    }
                    let raw = String::from_utf8_lossy(&self.src[start..self.pos]);
                    self.pos += 1;
                    Token::Str(unescape(&raw))
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self
                        .src
                        .get(self.pos)
                        .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                    {
                        self.pos += 1;
                    }
                    Token::Key(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
                }
                c if c.is_ascii_digit() || c == b'-' || c == b'+' || c == b'.' => {
                    let start = self.pos;
                    while self.src.get(self.pos).is_some_and(|c| {
                        c.is_ascii_alphanumeric() || matches!(c, b'-' | b'+' | b'.')
                    }) {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                    if let Ok(i) = text.parse::<i64>() {
                        Token::Int(i)
                    } else if let Ok(f) = text.parse::<f64>() {
                        Token::Real(f)
                    } else {
                        return Err(self.err(format!("malformed number `{text}`")));
                    }
                }
                other => {
                    return Err(self.err(format!("unexpected character `{}`", other as char)));
                }
            };
        Ok(Some((tok, line)))
    }
}

fn unescape(s: &str) -> String {
    if !s.contains('&') {
        return s.to_owned();
    }
    s.replace("&quot;", "\"").replace("&amp;", "&")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;")
}

#[derive(Debug)]
enum Value {
    Int(i64),
    Real(f64),
    Str(String),
    List(Vec<Entry>),
}

#[derive(Debug)]
struct Entry {
    key: String,
    value: Value,
    line: usize,
}

/// Parse a key/value list until `]` (nested) or end of input (top level).
fn parse_list(lex: &mut Lexer<'_>, nested: bool, open_line: usize) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    loop {
        let Some((tok, line)) = lex.next()? else {
            if nested {
                return Err(Error::GmlSyntax {
                    line: open_line,
                    message: "unbalanced `[`: list never closed".into(),
                });
            }
            return Ok(out);
        };
        let key = match tok {
            Token::Key(k) => k,
            Token::Close if nested => return Ok(out),
            Token::Close => {
                return Err(Error::GmlSyntax {
                    line,
                    message: "unbalanced `]`".into(),
                })
            }
            other => {
                return Err(Error::GmlSyntax {
                    line,
                    message: format!("expected a key, found {other:?}"),
                })
            }
        };
        let Some((vtok, vline)) = lex.next()? else {
            return Err(Error::GmlSyntax {
                line,
                message: format!("key `{key}` has no value"),
            });
        };
        let value = match vtok {
            Token::Int(i) => Value::Int(i),
            Token::Real(r) => Value::Real(r),
            Token::Str(s) => Value::Str(s),
            Token::Open => Value::List(parse_list(lex, true, vline)?),
            Token::Close | Token::Key(_) => {
                return Err(Error::GmlSyntax {
                    line: vline,
                    message: format!("key `{key}` has no value"),
                })
            }
        };
        out.push(Entry { key, value, line });
    }
}

fn int_field(entries: &[Entry], key: &str, owner: &str, line: usize) -> Result<i64> {
    match entries.iter().find(|e| e.key == key) {
        Some(Entry {
            value: Value::Int(i),
            ..
        }) => Ok(*i),
        Some(Entry {
            value: Value::Real(r),
            ..
        }) if r.fract() == 0.0 && r.abs() < 9.0e15 => Ok(*r as i64),
        Some(e) => Err(Error::GmlSyntax {
            line: e.line,
            message: format!("{owner} `{key}` must be an integer"),
        }),
        None => Err(Error::GmlSyntax {
            line,
            message: format!("{owner} is missing `{key}`"),
        }),
    }
}

/// Parse a GML document into a [`RawGraphRecord`].
///
/// Node ids may be arbitrary integers. The first `graph [...]` block is used.
pub fn parse_gml(text: &str) -> Result<RawGraphRecord> {
    let mut lex = Lexer::new(text);
    let top = parse_list(&mut lex, false, 1)?;
    let body = top
        .into_iter()
        .find_map(|e| match (e.key.as_str(), e.value) {
            ("graph", Value::List(body)) => Some(body),
            _ => None,
        })
        .ok_or_else(|| Error::GmlSyntax {
            line: 1,
            message: "no `graph [ ... ]` block".into(),
        })?;

    let mut rec = RawGraphRecord::default();
    let mut declared = rustc_hash::FxHashSet::default();
    let mut pending_edges = Vec::new();
    for entry in body {
        match (entry.key.as_str(), entry.value) {
            ("directed", Value::Int(flag)) => rec.directed = flag != 0,
            ("node", Value::List(fields)) => {
                let id = int_field(&fields, "id", "node", entry.line)?;
                if !declared.insert(id) {
                    return Err(Error::GmlSyntax {
                        line: entry.line,
                        message: format!("duplicate node id {id}"),
                    });
                }
                let label = fields.iter().find_map(|f| match (&*f.key, &f.value) {
                    ("label", Value::Str(s)) => Some(s.clone()),
                    _ => None,
                });
                rec.nodes.push(RawNode { id, label });
            }
            ("edge", Value::List(fields)) => {
                let source = int_field(&fields, "source", "edge", entry.line)?;
                let target = int_field(&fields, "target", "edge", entry.line)?;
                let weight = fields.iter().find_map(|f| match (&*f.key, &f.value) {
                    ("weight", Value::Int(i)) => Some(*i as f64),
                    ("weight", Value::Real(r)) => Some(*r),
                    _ => None,
                });
                pending_edges.push((
                    entry.line,
                    RawEdge {
                        source,
                        target,
                        weight,
                    },
                ));
            }
            _ => {}
        }
    }
    for (line, e) in pending_edges {
        for id in [e.source, e.target] {
            if !declared.contains(&id) {
                return Err(Error::UndeclaredNode { id, line });
            }
        }
        rec.entries.push(e);
    }
    Ok(rec)
}

/// Serialize `g` as canonical GML: nodes by ascending id, edges in
/// lexicographic `(min, max)` order. Output is byte-deterministic.
pub fn write_gml(g: &Graph) -> String {
    let mut out = String::with_capacity(32 + 24 * g.node_count() + 40 * g.edge_count());
    out.push_str("graph [\n");
    for i in 0..g.node_count() {
        let _ = write!(out, "  node [\n    id {i}\n");
        if let Some(labels) = g.node_labels() {
            let _ = writeln!(out, "    label \"{}\"", escape(&labels[i]));
        }
        out.push_str("  ]\n");
    }
    for &(a, b) in g.edges() {
        let _ = write!(out, "  edge [\n    source {a}\n    target {b}\n  ]\n");
    }
    out.push_str("]\n");
    out
}
