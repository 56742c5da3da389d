//! Recursive-descent parser for polynomials in `x` and `y`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (['*'] unary)*      juxtaposition only before x, y or '('
//! unary  := ('+' | '-') unary | power
//! power  := atom ['^' integer]
//! atom   := integer ['/' integer] | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Positions are 1-based and count characters, so they match what an
//! editor shows.

use curvelab_core::exactalg::{parse_rat, BivarPoly, Rat};

/// Exponents above this are rejected rather than expanded.
pub const MAX_EXPONENT: u32 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("number {s}"),
            Tok::X => "'x'".into(),
            Tok::Y => "'y'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let mut pos = Pos { line: 1, column: 1 };
    while let Some(&c) = chars.peek() {
        let here = pos;
        chars.next();
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
            continue;
        }
        pos.column += 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            '0'..='9' => {
                let mut s = String::from(c);
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    chars.next();
                    pos.column += 1;
                }
                Tok::Int(s)
            }
            'x' | 'X' => Tok::X,
            'y' | 'Y' => Tok::Y,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{b7}' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError {
                    line: here.line,
                    column: here.column,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((tok, here));
    }
    out.push((Tok::End, pos));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let pos = self.toks[self.at].1;
        ParseError { line: pos.line, column: pos.column, message: message.into() }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expr(&mut self) -> Result<BivarPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivarPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Tok::X | Tok::Y | Tok::LParen => acc = &acc * &self.unary()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BivarPoly, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.next();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BivarPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let Tok::Int(digits) = self.peek().clone() else {
            return Err(self.unexpected("a nonnegative integer exponent"));
        };
        let e = digits.parse::<u32>().ok().filter(|&e| e <= MAX_EXPONENT);
        let Some(e) = e else {
            return Err(self.error_here(format!("exponent {digits} exceeds {MAX_EXPONENT}")));
        };
        self.next();
        if *self.peek() == Tok::Caret {
            return Err(self.error_here("chained exponents need parentheses"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<BivarPoly, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                let value = if *self.peek() == Tok::Slash {
                    self.next();
                    let Tok::Int(d) = self.peek().clone() else {
                        return Err(self.unexpected("an integer denominator"));
                    };
                    let q = parse_rat(&format!("{n}/{d}")).ok_or_else(|| self.error_here("zero denominator"))?;
                    self.next();
                    q
                } else {
                    parse_rat(&n).expect("digits form an integer")
                };
                Ok(BivarPoly::constant(value))
            }
            Tok::X => {
                self.next();
                Ok(BivarPoly::x())
            }
            Tok::Y => {
                self.next();
                Ok(BivarPoly::y())
            }
            Tok::LParen => {
                self.next();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.next();
                Ok(inner)
            }
            Tok::Slash => Err(self.error_here("'/' is only allowed between two integers")),
            _ => Err(self.unexpected("a number, 'x', 'y' or '('")),
        }
    }
}

/// Parses a polynomial with rational coefficients.
pub fn parse_poly(src: &str) -> Result<BivarPoly, ParseError> {
    let mut p = Parser { toks: tokenize(src)?, at: 0 };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::Slash => Err(p.error_here("'/' is only allowed between two integers")),
        _ => Err(p.unexpected("an operator or end of input")),
    }
}

/// Parses a rational literal `"p/q"` or `"n"`.
pub fn parse_rational(src: &str) -> Option<Rat> {
    parse_rat(src)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ts: &[(u32, u32, i64)]) -> BivarPoly {
        BivarPoly::from_i64_terms(ts)
    }

    #[test]
    fn basic_forms() {
        assert_eq!(parse_poly("y^2 - x^3").unwrap(), p(&[(0, 2, 1), (3, 0, -1)]));
        assert_eq!(parse_poly("(y - x^2)^2 - x^3").unwrap(), p(&[(0, 2, 1), (2, 1, -2), (4, 0, 1), (3, 0, -1)]));
        assert_eq!(parse_poly("2x^5y^2").unwrap(), p(&[(5, 2, 2)]));
        assert_eq!(parse_poly("-x^2").unwrap(), p(&[(2, 0, -1)]));
        assert_eq!(parse_poly("x*y").unwrap(), parse_poly("x y").unwrap());
        let half = parse_poly("1/2*x").unwrap();
        assert_eq!(half.coeff(1, 0), parse_rat("1/2").unwrap());
        assert_eq!(parse_poly("y \u{2212} x").unwrap(), p(&[(0, 1, 1), (1, 0, -1)]));
        assert_eq!(parse_poly("2^3").unwrap(), p(&[(0, 0, 8)]));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("y^2 - x^").unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
        let e = parse_poly("y^2 +\n  x^3 )").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        let e = parse_poly("x + z").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert!(parse_poly("x/2").unwrap_err().message.contains("between two integers"));
        assert!(parse_poly("1/0").unwrap_err().message.contains("zero denominator"));
        assert!(parse_poly("(x + y").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x^2^3").is_err());
    }
}
