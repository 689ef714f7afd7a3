//! Element expressions:
//!
//! ```text
//! element  := ("-")? term (("+" | "-") term)*
//! term     := "0" | (int "*")? mono
//! mono     := vertex-id | "(" pathseq "|" pathseq ")"
//! pathseq  := edge-id (edge-id)* | "@" vertex-id
//! ```
//!
//! Ids are identifiers, optionally followed by a bracketed suffix such as
//! `u[3]`, `e[1:2]` or `inf[v->w]`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Element, IdxPath, Lpa, LpaError, Monomial};
use crate::graph::{EdgeId, GraphError, Vertex};
use crate::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("ill-formed path: {0}")]
    IllFormedPath(GraphError),
}

/// A parsed element (in normal form) plus notes about terms that vanished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedElement {
    pub element: Element,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Id(String),
    Int(BigInt),
    LParen,
    RParen,
    Bar,
    Plus,
    Minus,
    Star,
    At,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ElementParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '|' => Some(Tok::Bar),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '@' => Some(Tok::At),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(text[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'[' {
                match text[i..].find(']') {
                    Some(close) => i += close + 1,
                    None => {
                        return Err(ElementParseError::Syntax {
                            pos: i,
                            msg: "unclosed `[`".into(),
                        })
                    }
                }
            }
            out.push((start, Tok::Id(text[start..i].to_string())));
        } else {
            return Err(ElementParseError::Syntax {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a, 'g> {
    lpa: &'a Lpa<'g>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    warnings: Vec<String>,
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ElementParseError> {
        Err(ElementParseError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ElementParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn element(&mut self) -> Result<Element, ElementParseError> {
        let mut acc = Element::zero();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negate = true;
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                None => return Ok(acc),
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Element, ElementParseError> {
        let mut coeff = BigInt::from(1);
        if let Some(Tok::Int(n)) = self.peek() {
            coeff = n.clone();
            self.pos += 1;
            if coeff.is_zero() && self.peek() != Some(&Tok::Star) {
                return Ok(Element::zero());
            }
            self.expect(Tok::Star, "`*` after coefficient")?;
        }
        let m = self.mono()?;
        Ok(m.scale(&coeff))
    }

    fn mono(&mut self) -> Result<Element, ElementParseError> {
        match self.bump() {
            Some(Tok::Id(name)) => {
                let v = self.vertex(&name)?;
                Ok(self.lpa.vertex_at(v))
            }
            Some(Tok::LParen) => {
                let a = self.pathseq()?;
                self.expect(Tok::Bar, "`|`")?;
                let b = self.pathseq()?;
                self.expect(Tok::RParen, "`)`")?;
                match Monomial::new(a.clone(), b.clone()) {
                    Some(m) => Ok(Element::monomial(m)),
                    None => {
                        self.warnings.push(format!(
                            "({}|{}): ranges differ, term is zero",
                            self.lpa.path(&a),
                            self.lpa.path(&b)
                        ));
                        Ok(Element::zero())
                    }
                }
            }
            _ => {
                self.pos -= 1;
                self.err("expected a vertex or `(`")
            }
        }
    }

    fn pathseq(&mut self) -> Result<IdxPath, ElementParseError> {
        if self.peek() == Some(&Tok::At) {
            self.pos += 1;
            return match self.bump() {
                Some(Tok::Id(name)) => Ok(IdxPath::trivial(self.vertex(&name)?)),
                _ => {
                    self.pos -= 1;
                    self.err("expected a vertex after `@`")
                }
            };
        }
        let mut ids = Vec::new();
        while let Some(Tok::Id(name)) = self.peek() {
            let id = EdgeId::parse_label(name)
                .filter(|e| self.lpa.graph().edge_idx(e).is_some())
                .ok_or_else(|| ElementParseError::UnknownEdge(name.clone()))?;
            ids.push(id);
            self.pos += 1;
        }
        if ids.is_empty() {
            return self.err("expected an edge or `@vertex`");
        }
        let g = self.lpa.graph();
        let first = g.edge_idx(&ids[0]).expect("checked");
        let base = g.vertex(g.src(first)).clone();
        self.lpa
            .idx_path(&Path::new(base, ids))
            .map_err(|LpaError::Graph(e)| ElementParseError::IllFormedPath(e))
    }

    fn vertex(&self, name: &str) -> Result<crate::graph::VertexIdx, ElementParseError> {
        Vertex::parse_label(name)
            .and_then(|v| self.lpa.graph().vertex_idx(&v))
            .ok_or_else(|| ElementParseError::UnknownVertex(name.to_string()))
    }
}

pub(super) fn parse_element(lpa: &Lpa<'_>, text: &str) -> Result<ParsedElement, ElementParseError> {
    let mut p = Parser {
        lpa,
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
        warnings: Vec::new(),
    };
    let raw = p.element()?;
    Ok(ParsedElement {
        element: lpa.normal_form(&raw),
        warnings: p.warnings,
    })
}
