//! Recursive-descent parser for the sentence grammar.
//!
//! ```text
//! formula := or ("->" formula)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | quant | primary
//! quant   := ("forall" | "exists") ident "." formula
//! primary := "(" formula ")" | ident ("=" | "~") ident | ident "in" ident
//! ```

use super::ast::{is_set_name, Formula};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Forall,
    Exists,
    In,
    And,
    Or,
    Not,
    Implies,
    Adj,
    Eq,
    Dot,
    LParen,
    RParen,
    Ident(String),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let ch = chars[i];
        let (tl, tc) = (line, col);
        if ch == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match ch {
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '!' => Some(Tok::Not),
            '~' => Some(Tok::Adj),
            '=' => Some(Tok::Eq),
            '.' => Some(Tok::Dot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token {
                tok,
                line: tl,
                col: tc,
            });
            i += 1;
            col += 1;
            continue;
        }
        if ch == '-' {
            if chars.get(i + 1) == Some(&'>') {
                out.push(Token {
                    tok: Tok::Implies,
                    line: tl,
                    col: tc,
                });
                i += 2;
                col += 2;
                continue;
            }
            return Err(Error::Syntax {
                line: tl,
                col: tc,
                msg: "expected `->`".into(),
            });
        }
        if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = match word.as_str() {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "in" => Tok::In,
                _ => Tok::Ident(word),
            };
            out.push(Token {
                tok,
                line: tl,
                col: tc,
            });
            continue;
        }
        return Err(Error::Syntax {
            line: tl,
            col: tc,
            msg: format!("unexpected character `{ch}`"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    scope: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            self.err(&t, format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.peek().tok == Tok::Implies {
            self.next();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.peek().tok == Tok::Or {
            self.next();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::And {
            self.next();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().tok {
            Tok::Not => {
                self.next();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let q = self.next();
                let t = self.next();
                let Tok::Ident(v) = t.tok.clone() else {
                    return self.err(&t, "expected variable after quantifier");
                };
                self.expect(Tok::Dot, "`.` after quantified variable")?;
                self.scope.push(v.clone());
                let body = self.formula();
                self.scope.pop();
                let body = Box::new(body?);
                Ok(if q.tok == Tok::Forall {
                    Formula::Forall(v, body)
                } else {
                    Formula::Exists(v, body)
                })
            }
            _ => self.primary(),
        }
    }

    fn variable(&mut self, want_set: bool) -> Result<String> {
        let t = self.next();
        let Tok::Ident(v) = t.tok.clone() else {
            return self.err(
                &t,
                if want_set {
                    "expected set variable"
                } else {
                    "expected vertex variable"
                },
            );
        };
        if is_set_name(&v) != want_set {
            let msg = if want_set {
                format!("`{v}` is not a set variable")
            } else {
                format!("`{v}` is not a vertex variable")
            };
            return self.err(&t, msg);
        }
        if !self.scope.contains(&v) {
            return Err(Error::Unbound {
                name: v,
                line: t.line,
                col: t.col,
            });
        }
        Ok(v)
    }

    fn primary(&mut self) -> Result<Formula> {
        if self.peek().tok == Tok::LParen {
            self.next();
            let f = self.formula()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(f);
        }
        let x = self.variable(false)?;
        let op = self.next();
        match op.tok {
            Tok::Eq => Ok(Formula::Eq(x, self.variable(false)?)),
            Tok::Adj => Ok(Formula::Adj(x, self.variable(false)?)),
            Tok::In => Ok(Formula::In(x, self.variable(true)?)),
            _ => self.err(&op, "expected `=`, `~` or `in`"),
        }
    }
}

/// Parses a sentence; every variable must be bound.
pub fn parse(text: &str) -> Result<Formula> {
    parse_open(text, &[])
}

/// Parses a formula whose free variables are among `free`.
pub fn parse_open(text: &str, free: &[&str]) -> Result<Formula> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        scope: free.iter().map(|s| s.to_string()).collect(),
    };
    let f = p.formula()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, "unexpected trailing input");
    }
    Ok(f)
}
