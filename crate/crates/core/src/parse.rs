//! Recursive-descent parser for polynomial germs in `x` and `y`.
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = factor { "*" factor } ;
//! factor   = ("+" | "-") factor | power ;
//! power    = atom [ "^" integer ] ;
//! atom     = rational | "x" | "y" | "(" expr ")" ;
//! rational = integer [ "/" integer ] ;
//! integer  = digit { digit } ;
//! ```
//!
//! Whitespace is ignored between tokens. Products are truncated while
//! parsing, so `(x+y)^1000` at a small truncation degree stays cheap.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::jet::Jet;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unsupported coefficient `{text}` at position {position}: only rational literals p/q are allowed")]
    UnsupportedCoefficient { position: usize, text: String },
    #[error("truncation degree must be at least 1")]
    InvalidTruncation,
}

/// Parses `text` and truncates it at total degree `truncation`.
pub fn make_jet(text: &str, truncation: u32) -> Result<Jet, ParseError> {
    if truncation == 0 {
        return Err(ParseError::InvalidTruncation);
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n: truncation,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.syntax("empty polynomial"));
    }
    let jet = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.syntax(&format!("unexpected `{}`", p.peek_char())));
    }
    Ok(jet)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: u32,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        self.peek().map(char::from).unwrap_or('\0')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Jet, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Jet, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Jet, ParseError> {
        if self.eat(b'-') {
            return Ok(-&self.factor()?);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Jet, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.syntax("expected a nonnegative integer exponent"));
            }
            let exp: u32 = digits.parse().map_err(|_| ParseError::Syntax {
                position: start,
                message: format!("exponent `{digits}` is too large"),
            })?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Jet, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits();
                if self.peek() == Some(b'.') || matches!(self.peek(), Some(b'e' | b'E')) {
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'.') {
                        self.pos += 1;
                    }
                    return Err(ParseError::UnsupportedCoefficient {
                        position: start,
                        text: String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
                    });
                }
                let num: BigInt = num.parse().expect("ascii digits");
                let mut value = Q::from_integer(num);
                if self.eat(b'/') {
                    self.skip_ws();
                    let den_pos = self.pos;
                    let den = self.digits();
                    if den.is_empty() {
                        return Err(self.syntax("expected an integer denominator"));
                    }
                    let den: BigInt = den.parse().expect("ascii digits");
                    if den.is_zero() {
                        return Err(ParseError::Syntax {
                            position: den_pos,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= Q::from_integer(den);
                }
                Ok(Jet::constant(value, self.n))
            }
            Some(b'x') | Some(b'y') if !matches!(self.src.get(self.pos + 1), Some(c) if c.is_ascii_alphanumeric() || *c == b'_') =>
            {
                let var = self.src[self.pos];
                self.pos += 1;
                Ok(if var == b'x' { Jet::x(self.n) } else { Jet::y(self.n) })
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'.' || c == b'_' => {
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'.' || c == b'_') {
                    self.pos += 1;
                }
                Err(ParseError::UnsupportedCoefficient {
                    position: start,
                    text: String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
                })
            }
            Some(c) => Err(self.syntax(&format!("unexpected `{}`", char::from(c)))),
        }
    }
}
