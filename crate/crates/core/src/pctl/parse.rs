//! Recursive-descent parser for requirement text.
//!
//! ```text
//! requirement := "P" "[" ">=" number "]" "(" path ")" "with" "C" "[" ">=" number "]"
//! path        := ("G" | "F" | "X") state
//!              | state "U" [ "[" "<=" integer "]" ] state
//! state       := conj { "|" conj }
//! conj        := unary { "&" unary }
//! unary       := "!" unary | "true" | atom | "(" state ")"
//! ```
//!
//! `G`, `F`, `X`, `U` and `true` are reserved and cannot name atoms.

use super::ast::{PathFormula, Requirement, StateFormula};
use crate::error::{Error, Result};

const RESERVED: [&str; 5] = ["G", "F", "X", "U", "true"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Bang,
    Amp,
    Bar,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Ge,
    Le,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Ge => "`>=`".into(),
            Tok::Le => "`<=`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => Tok::Bang,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'>' | b'<' => {
                if bytes.get(i + 1) != Some(&b'=') {
                    return Err(Error::Syntax {
                        position: i,
                        message: format!("expected `{}=`", c as char),
                    });
                }
                i += 1;
                if c == b'>' {
                    Tok::Ge
                } else {
                    Tok::Le
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_owned())
            }
            c if c.is_ascii_digit() || c == b'.' => {
                while i + 1 < bytes.len() {
                    let n = bytes[i + 1];
                    let exp_sign = (n == b'+' || n == b'-') && matches!(bytes[i], b'e' | b'E');
                    if n.is_ascii_digit() || n == b'.' || n == b'e' || n == b'E' || exp_sign {
                        i += 1;
                    } else {
                        break;
                    }
                }
                Tok::Number(text[start..=i].to_owned())
            }
            other => {
                return Err(Error::Syntax {
                    position: i,
                    message: format!("unexpected character `{}`", other as char),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax {
            position: self.offset(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&tok.describe())
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.error(&format!("`{kw}`")),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    fn probability(&mut self, name: &'static str) -> Result<f64> {
        let at = self.offset();
        match self.bump() {
            Tok::Number(s) => {
                let v: f64 = s.parse().map_err(|_| Error::Syntax {
                    position: at,
                    message: format!("malformed number `{s}`"),
                })?;
                super::ast::check_open_unit(name, v)?;
                Ok(v)
            }
            _ => {
                self.pos -= 1;
                self.error("a number")
            }
        }
    }

    fn requirement(&mut self) -> Result<Requirement> {
        self.expect_keyword("P")?;
        self.expect(Tok::LBracket)?;
        self.expect(Tok::Ge)?;
        let p_req = self.probability("p_req")?;
        self.expect(Tok::RBracket)?;
        self.expect(Tok::LParen)?;
        let path = self.path()?;
        self.expect(Tok::RParen)?;
        self.expect_keyword("with")?;
        self.expect_keyword("C")?;
        self.expect(Tok::LBracket)?;
        self.expect(Tok::Ge)?;
        let c_req = self.probability("c_req")?;
        self.expect(Tok::RBracket)?;
        self.finish()?;
        Ok(Requirement { path, p_req, c_req })
    }

    fn path(&mut self) -> Result<PathFormula> {
        for (kw, make) in [
            ("G", PathFormula::Always as fn(StateFormula) -> PathFormula),
            ("F", PathFormula::Eventually),
            ("X", PathFormula::Next),
        ] {
            if self.at_keyword(kw) {
                self.bump();
                return Ok(make(self.state()?));
            }
        }
        let lhs = self.state()?;
        self.expect_keyword("U")?;
        if *self.peek() == Tok::LBracket {
            self.bump();
            self.expect(Tok::Le)?;
            let at = self.offset();
            let m = match self.bump() {
                Tok::Number(s) => s.parse::<usize>().map_err(|_| Error::Syntax {
                    position: at,
                    message: format!("step bound `{s}` is not a non-negative integer"),
                })?,
                _ => {
                    self.pos -= 1;
                    return self.error("a step bound");
                }
            };
            self.expect(Tok::RBracket)?;
            Ok(PathFormula::BoundedUntil(lhs, self.state()?, m))
        } else {
            Ok(PathFormula::Until(lhs, self.state()?))
        }
    }

    fn state(&mut self) -> Result<StateFormula> {
        let mut lhs = self.conj()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            lhs = StateFormula::or(lhs, self.conj()?);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<StateFormula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = StateFormula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<StateFormula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(StateFormula::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.state()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(StateFormula::True)
            }
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.bump();
                Ok(StateFormula::Atom(s))
            }
            _ => self.error("a state formula"),
        }
    }
}

pub fn parse_requirement(text: &str) -> Result<Requirement> {
    Parser::new(text)?.requirement()
}

pub fn parse_path(text: &str) -> Result<PathFormula> {
    let mut p = Parser::new(text)?;
    let f = p.path()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_state(text: &str) -> Result<StateFormula> {
    let mut p = Parser::new(text)?;
    let f = p.state()?;
    p.finish()?;
    Ok(f)
}
