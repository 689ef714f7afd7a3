//! Parser for the `.lpg` graph description format.
//!
//! ```text
//! stmt    := "vertex" id ";" | "edge" id ":" id "->" id ";"
//!          | "infedges" id "->" id ";" | "ladder" "{" ldecl* "}"
//! ldecl   := "spine" ("nat"|"int") ";" | "loops" pattern ";"
//!          | "tail" "start" int "step" posint "length" int "*t" ("+" int)? ";"
//!          | "tail_exception" "col" int "length" posint ";"
//! pattern := "all" | "none" | "cols" int ("," int)* | "from" int "step" posint
//! ```
//!
//! A file holds either finite statements or exactly one ladder block.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use super::ladder::LadderError;
use super::{
    ColumnPattern, EdgeId, FiniteGraphBuilder, GraphSpec, LadderSpec, SpineKind,
    TailFamily, Vertex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: edge endpoint `{name}` is not a declared vertex")]
    UndeclaredVertex {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: {msg}")]
    Semantic { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: ladder parameter out of range: {msg}")]
    OutOfRange { line: usize, col: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Semi,
    Colon,
    Arrow,
    LBrace,
    RBrace,
    Comma,
    Star,
    Plus,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(i) => format!("`{i}`"),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Star => "`*`".into(),
            Tok::Plus => "`+`".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos {
                line: li + 1,
                col: i + 1,
            };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let single = match c {
                ';' => Some(Tok::Semi),
                ':' => Some(Tok::Colon),
                '{' => Some(Tok::LBrace),
                '}' => Some(Tok::RBrace),
                ',' => Some(Tok::Comma),
                '*' => Some(Tok::Star),
                '+' => Some(Tok::Plus),
                _ => None,
            };
            if let Some(t) = single {
                out.push((t, pos));
                i += 1;
                continue;
            }
            if c == '-' && chars.get(i + 1) == Some(&'>') {
                out.push((Tok::Arrow, pos));
                i += 2;
                continue;
            }
            if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let value = text.parse().map_err(|_| ParseError::Syntax {
                    line: pos.line,
                    col: pos.col,
                    msg: format!("integer `{text}` out of range"),
                })?;
                out.push((Tok::Int(value), pos));
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                continue;
            }
            return Err(ParseError::Syntax {
                line: pos.line,
                col: pos.col,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let p = self.pos();
        Err(ParseError::Syntax {
            line: p.line,
            col: p.col,
            msg: msg.into(),
        })
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), Tok::describe)
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            self.syntax(format!("expected {}, found {}", want.describe(), self.found()))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.at += 1;
                Ok(())
            }
            _ => self.syntax(format!("expected `{kw}`, found {}", self.found())),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok((s, pos))
            }
            _ => self.syntax(format!("expected identifier, found {}", self.found())),
        }
    }

    fn int(&mut self) -> Result<(i64, Pos), ParseError> {
        let pos = self.pos();
        match self.peek() {
            Some(&Tok::Int(i)) => {
                self.at += 1;
                Ok((i, pos))
            }
            _ => self.syntax(format!("expected integer, found {}", self.found())),
        }
    }

    fn posint(&mut self, what: &str) -> Result<u64, ParseError> {
        let (i, pos) = self.int()?;
        if i <= 0 {
            return Err(ParseError::OutOfRange {
                line: pos.line,
                col: pos.col,
                msg: format!("{what} must be positive, got {i}"),
            });
        }
        Ok(i as u64)
    }
}

/// Parses `.lpg` source text into a graph.
pub fn parse_graph(src: &str) -> Result<GraphSpec, ParseError> {
    let toks = lex(src)?;
    let end = Pos {
        line: src.lines().count().max(1),
        col: src.lines().last().map_or(1, |l| l.chars().count() + 1),
    };
    let mut p = Parser { toks, at: 0, end };

    let mut ladder: Option<(LadderSpec, Pos)> = None;
    let mut finite_pos: Option<Pos> = None;
    let mut builder = FiniteGraphBuilder::new();
    let mut declared: HashSet<String> = HashSet::new();
    let mut edge_names: HashSet<String> = HashSet::new();
    let mut families: HashSet<(String, String)> = HashSet::new();
    let mut references: Vec<(String, Pos)> = Vec::new();

    while let Some(tok) = p.peek().cloned() {
        let start = p.pos();
        let Tok::Ident(kw) = tok else {
            return p.syntax(format!("expected a statement, found {}", p.found()));
        };
        if kw == "ladder" {
            if let Some((_, first)) = &ladder {
                return Err(semantic(start, format!("second ladder block (first at line {})", first.line)));
            }
            if finite_pos.is_some() {
                return Err(semantic(start, "a file holds either finite statements or one ladder block"));
            }
            p.at += 1;
            ladder = Some((parse_ladder(&mut p, start)?, start));
            continue;
        }
        if ladder.is_some() {
            return Err(semantic(start, "a file holds either finite statements or one ladder block"));
        }
        finite_pos.get_or_insert(start);
        match kw.as_str() {
            "vertex" => {
                p.at += 1;
                let (name, pos) = p.ident()?;
                p.expect(Tok::Semi)?;
                if !declared.insert(name.clone()) {
                    return Err(semantic(pos, format!("duplicate vertex `{name}`")));
                }
                builder.add_vertex(Vertex::Named(name));
            }
            "edge" => {
                p.at += 1;
                let (name, pos) = p.ident()?;
                p.expect(Tok::Colon)?;
                let src = p.ident()?;
                p.expect(Tok::Arrow)?;
                let dst = p.ident()?;
                p.expect(Tok::Semi)?;
                if !edge_names.insert(name.clone()) {
                    return Err(semantic(pos, format!("duplicate edge `{name}`")));
                }
                builder.add_edge(
                    EdgeId::Named(name),
                    Vertex::Named(src.0.clone()),
                    Vertex::Named(dst.0.clone()),
                );
                references.push(src);
                references.push(dst);
            }
            "infedges" => {
                p.at += 1;
                let src = p.ident()?;
                p.expect(Tok::Arrow)?;
                let dst = p.ident()?;
                p.expect(Tok::Semi)?;
                if !families.insert((src.0.clone(), dst.0.clone())) {
                    return Err(semantic(start, format!("duplicate infedges `{} -> {}`", src.0, dst.0)));
                }
                builder.add_infinite_family(Vertex::Named(src.0.clone()), Vertex::Named(dst.0.clone()));
                references.push(src);
                references.push(dst);
            }
            _ => return p.syntax(format!("unknown statement `{kw}`")),
        }
    }

    if let Some((l, _)) = ladder {
        return Ok(GraphSpec::Ladder(l));
    }
    for (name, pos) in references {
        if !declared.contains(&name) {
            return Err(ParseError::UndeclaredVertex {
                line: pos.line,
                col: pos.col,
                name,
            });
        }
    }
    builder
        .build()
        .map(GraphSpec::Finite)
        .map_err(|e| semantic(p.end, e.to_string()))
}

fn semantic(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::Semantic {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

fn parse_ladder(p: &mut Parser, start: Pos) -> Result<LadderSpec, ParseError> {
    p.expect(Tok::LBrace)?;
    let mut spine = None;
    let mut loops = None;
    let mut tails = Vec::new();
    let mut exceptions = BTreeMap::new();
    loop {
        let pos = p.pos();
        let (kw, _) = match p.peek() {
            Some(Tok::RBrace) => {
                p.at += 1;
                break;
            }
            Some(Tok::Ident(_)) => p.ident()?,
            _ => return p.syntax(format!("expected ladder declaration or `}}`, found {}", p.found())),
        };
        match kw.as_str() {
            "spine" => {
                let (kind, kpos) = p.ident()?;
                let kind = match kind.as_str() {
                    "nat" => SpineKind::Nat,
                    "int" => SpineKind::Int,
                    other => {
                        return Err(ParseError::Syntax {
                            line: kpos.line,
                            col: kpos.col,
                            msg: format!("expected `nat` or `int`, found `{other}`"),
                        })
                    }
                };
                p.expect(Tok::Semi)?;
                if spine.replace(kind).is_some() {
                    return Err(semantic(pos, "spine declared twice"));
                }
            }
            "loops" => {
                let pat = parse_pattern(p)?;
                p.expect(Tok::Semi)?;
                if loops.replace(pat).is_some() {
                    return Err(semantic(pos, "loops declared twice"));
                }
            }
            "tail" => {
                p.keyword("start")?;
                let (start_col, _) = p.int()?;
                p.keyword("step")?;
                let step = p.posint("tail step")?;
                p.keyword("length")?;
                let (slope, slope_pos) = p.int()?;
                p.expect(Tok::Star)?;
                p.keyword("t")?;
                let offset = if p.peek() == Some(&Tok::Plus) {
                    p.at += 1;
                    p.int()?.0
                } else {
                    0
                };
                p.expect(Tok::Semi)?;
                if slope < 0 {
                    return Err(ParseError::OutOfRange {
                        line: slope_pos.line,
                        col: slope_pos.col,
                        msg: format!("tail slope must be non-negative, got {slope}"),
                    });
                }
                tails.push((
                    TailFamily {
                        start: start_col,
                        step,
                        slope: slope as u64,
                        offset,
                    },
                    pos,
                ));
            }
            "tail_exception" => {
                p.keyword("col")?;
                let (col, _) = p.int()?;
                p.keyword("length")?;
                let len = p.posint("tail exception length")?;
                p.expect(Tok::Semi)?;
                if exceptions.insert(col, (len, pos)).is_some() {
                    return Err(semantic(pos, format!("two tail exceptions at column {col}")));
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    line: pos.line,
                    col: pos.col,
                    msg: format!("unknown ladder declaration `{other}`"),
                })
            }
        }
    }
    let Some(spine) = spine else {
        return Err(semantic(start, "ladder block needs a `spine` declaration"));
    };

    // validate piecewise so errors point at the offending declaration
    for (f, pos) in &tails {
        LadderSpec::new(spine, ColumnPattern::None, vec![*f], BTreeMap::new())
            .map_err(|e| out_of_range(*pos, e))?;
    }
    for (&col, &(len, pos)) in &exceptions {
        LadderSpec::new(spine, ColumnPattern::None, vec![], BTreeMap::from([(col, len)]))
            .map_err(|e| out_of_range(pos, e))?;
    }
    LadderSpec::new(
        spine,
        loops.unwrap_or(ColumnPattern::None),
        tails.into_iter().map(|(f, _)| f).collect(),
        exceptions.into_iter().map(|(c, (l, _))| (c, l)).collect(),
    )
    .map_err(|e| out_of_range(start, e))
}

fn out_of_range(pos: Pos, e: LadderError) -> ParseError {
    ParseError::OutOfRange {
        line: pos.line,
        col: pos.col,
        msg: e.to_string(),
    }
}

fn parse_pattern(p: &mut Parser) -> Result<ColumnPattern, ParseError> {
    let (kw, pos) = p.ident()?;
    match kw.as_str() {
        "all" => Ok(ColumnPattern::All),
        "none" => Ok(ColumnPattern::None),
        "cols" => {
            let mut cols = BTreeSet::new();
            cols.insert(p.int()?.0);
            while p.peek() == Some(&Tok::Comma) {
                p.at += 1;
                cols.insert(p.int()?.0);
            }
            Ok(ColumnPattern::Cols(cols))
        }
        "from" => {
            let (start, _) = p.int()?;
            p.keyword("step")?;
            let step = p.posint("loop step")?;
            Ok(ColumnPattern::From { start, step })
        }
        other => Err(ParseError::Syntax {
            line: pos.line,
            col: pos.col,
            msg: format!("expected `all`, `none`, `cols` or `from`, found `{other}`"),
        }),
    }
}
