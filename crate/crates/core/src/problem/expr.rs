//! Polynomial expressions in the single variable `a`: rational literals,
//! `+ - * / ^` and parentheses. Division is only by nonzero constants.

use num::{ToPrimitive, Zero};

use crate::algebra::{parse_rational, Rational, UniPoly, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Divisor position kept for error reporting.
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Exact expansion into a dense polynomial in alpha.
    pub fn expand(&self) -> Result<UniPoly> {
        Ok(match self {
            Expr::Num(c) => UniPoly::constant(c.clone(), Var::Alpha),
            Expr::Var => UniPoly::x(Var::Alpha),
            Expr::Neg(e) => -&e.expand()?,
            Expr::Add(l, r) => &l.expand()? + &r.expand()?,
            Expr::Sub(l, r) => &l.expand()? - &r.expand()?,
            Expr::Mul(l, r) => &l.expand()? * &r.expand()?,
            Expr::Div(l, r, pos) => {
                let d = r.expand()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Parse {
                        line: pos.0,
                        column: pos.1,
                        message: "divisor must be a nonzero constant".into(),
                    });
                }
                let inv = Rational::from_integer(1.into()) / d.coeff(0);
                l.expand()?.scale(&inv)
            }
            Expr::Pow(b, e) => b.expand()?.pow(*e),
        })
    }
}

/// `(line, column)`, both starting at 1.
pub type Pos = (usize, usize);

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let here = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent part: 1e-3
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut k = i + 1;
                if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                    k += 1;
                }
                if k < chars.len() && chars[k].is_ascii_digit() {
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    i = k;
                }
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), here));
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), here));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), here));
            i += 1;
        } else {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("unexpected character '{c}'"),
            });
        }
        col += i - start;
    }
    out.push((Tok::End, (line, col)));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> Pos {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: Pos, message: impl Into<String>) -> Error {
        Error::Parse {
            line: at.0,
            column: at.1,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    let at = self.here();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.here();
        let e = self.unary()?.expand()?;
        if !e.is_constant() {
            return Err(self.error(at, "exponent must be an integer literal"));
        }
        let c = e.coeff(0);
        if !c.is_integer() {
            return Err(self.error(at, "exponent must be an integer"));
        }
        if c < Rational::zero() {
            return Err(self.error(at, "negative exponent"));
        }
        let n = c
            .to_integer()
            .to_u32()
            .filter(|n| *n <= 1000)
            .ok_or_else(|| self.error(at, "exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn primary(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.bump() {
            Tok::Num(s) => parse_rational(&s)
                .map(Expr::Num)
                .map_err(|_| self.error(at, format!("invalid number '{s}'"))),
            Tok::Ident(s) if s == "a" => Ok(Expr::Var),
            Tok::Ident(s) => Err(self.error(at, format!("unknown identifier '{s}' (only 'a' is allowed)"))),
            Tok::Op('(') => {
                let e = self.expr()?;
                let close = self.here();
                match self.bump() {
                    Tok::Op(')') => Ok(e),
                    _ => Err(self.error(close, "expected ')'")),
                }
            }
            Tok::End => Err(self.error(at, "unexpected end of expression")),
            Tok::Op(c) => Err(self.error(at, format!("unexpected '{c}'"))),
        }
    }
}

/// Parses an expression into its syntax tree.
pub fn parse_expr(text: &str) -> Result<Expr> {
    if text.trim().is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty expression".into(),
        });
    }
    let mut lx = Lexer {
        toks: lex(text)?,
        pos: 0,
    };
    let e = lx.expr()?;
    if lx.peek() != &Tok::End {
        let at = lx.here();
        return Err(lx.error(at, "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses and expands in one step.
pub fn parse_poly(text: &str) -> Result<UniPoly> {
    parse_expr(text)?.expand()
}

/// A polynomial that must not depend on `a`.
pub fn parse_constant(text: &str) -> Result<Rational> {
    let p = parse_poly(text)?;
    if !p.is_constant() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("'{text}' must be a constant"),
        });
    }
    Ok(p.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, Var::Alpha)
    }

    #[test]
    fn expands_with_precedence() {
        assert_eq!(parse_poly("4 - 4*a^2").unwrap(), poly(&[4, 0, -4]));
        assert_eq!(parse_poly("-a^2").unwrap(), poly(&[0, 0, -1]));
        assert_eq!(parse_poly("(1 + a)^2").unwrap(), poly(&[1, 2, 1]));
        assert_eq!(parse_poly("2*3^2").unwrap(), poly(&[18]));
        assert_eq!(parse_poly("1 - 2 - 3").unwrap(), poly(&[-4]));
        assert_eq!(parse_poly("a/2").unwrap(), UniPoly::new(vec![int(0), ratio(1, 2)], Var::Alpha));
        assert_eq!(parse_constant("0.28").unwrap(), ratio(7, 25));
        assert_eq!(parse_constant("7/25").unwrap(), ratio(7, 25));
        assert_eq!(parse_constant("1e-3").unwrap(), ratio(1, 1000));
    }

    #[test]
    fn reports_errors_with_position() {
        match parse_poly("a^(-1)") {
            Err(Error::Parse { message, column, .. }) => {
                assert!(message.contains("negative exponent"));
                assert_eq!(column, 3);
            }
            other => panic!("{other:?}"),
        }
        match parse_poly("1 +\n  b") {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (2, 3));
                assert!(message.contains("unknown identifier"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("a^a").is_err());
        assert!(parse_poly("a^1.5").is_err());
        assert!(parse_poly("1/a").is_err());
        assert!(parse_poly("(1 + a").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1 2").is_err());
        assert!(parse_constant("a").is_err());
    }

    #[test]
    fn printer_round_trips() {
        let p = UniPoly::new(vec![ratio(-7, 25), int(0), int(1), ratio(3, 4)], Var::Alpha);
        assert_eq!(parse_poly(&p.to_expr_string("a")).unwrap(), p);
    }
}
