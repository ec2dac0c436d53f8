//! Expression language for elements and matrices.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' signed-int)?
//! atom   := 'u' | 't' | 'i' | 'a' | integer | '(' expr ')'
//! ```

use crate::algebra::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Int(String),
    Sym(char, usize, usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn line_col(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for c in self.chars.iter().take(pos) {
            if *c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn err(&self, pos: usize, msg: &str) -> Error {
        let (line, col) = self.line_col(pos);
        Error::SyntaxError {
            line,
            col,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' {
                Ast::Add(lhs.into(), rhs.into())
            } else {
                Ast::Sub(lhs.into(), rhs.into())
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = if c == '*' {
                Ast::Mul(lhs.into(), rhs.into())
            } else {
                Ast::Div(lhs.into(), rhs.into())
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Ast> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(Ast::Neg(self.factor()?.into()));
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.signed_int()?;
            return Ok(Ast::Pow(base.into(), e));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(start, "expected an integer exponent"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = s
            .parse()
            .map_err(|_| self.err(start, "exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Ast> {
        let Some(c) = self.peek() else {
            return Err(self.err(self.pos, "unexpected end of input"));
        };
        let start = self.pos;
        match c {
            '(' => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            '0'..='9' => {
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                Ok(Ast::Int(self.chars[start..self.pos].iter().collect()))
            }
            c if c.is_alphabetic() => {
                self.pos += 1;
                let (line, col) = self.line_col(start);
                Ok(Ast::Sym(c, line, col))
            }
            _ => Err(self.err(start, &format!("unexpected '{c}'"))),
        }
    }
}

pub fn parse(src: &str) -> Result<Ast> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err(p.pos, &format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(e)
}

/// Evaluate in `f`; `sym` resolves single-letter names.
pub fn eval<F: Field>(ast: &Ast, f: &F, sym: &dyn Fn(char) -> Option<F::Elem>) -> Result<F::Elem> {
    Ok(match ast {
        Ast::Int(s) => {
            let ten = f.from_i64(10);
            s.chars().fold(f.zero(), |acc, d| {
                f.add(&f.mul(&acc, &ten), &f.from_i64(d as i64 - '0' as i64))
            })
        }
        Ast::Sym(c, _, _) => sym(*c).ok_or_else(|| Error::UndefinedSymbol(c.to_string()))?,
        Ast::Neg(a) => f.neg(&eval(a, f, sym)?),
        Ast::Add(a, b) => f.add(&eval(a, f, sym)?, &eval(b, f, sym)?),
        Ast::Sub(a, b) => f.sub(&eval(a, f, sym)?, &eval(b, f, sym)?),
        Ast::Mul(a, b) => f.mul(&eval(a, f, sym)?, &eval(b, f, sym)?),
        Ast::Div(a, b) => {
            let d = eval(b, f, sym)?;
            if f.is_zero(&d) {
                return Err(Error::ZeroDenominator);
            }
            f.div(&eval(a, f, sym)?, &d)
        }
        Ast::Pow(a, e) => {
            let b = eval(a, f, sym)?;
            if *e < 0 && f.is_zero(&b) {
                return Err(Error::ZeroDenominator);
            }
            f.powi(&b, *e)
        }
    })
}

/// A square matrix given as a JSON array of rows of expression strings.
pub fn parse_matrix_json(src: &str) -> Result<Vec<Vec<String>>> {
    let rows: Vec<Vec<String>> = serde_json::from_str(src).map_err(|e| Error::SyntaxError {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("matrix must be square and nonempty".into()));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rationals;
    use num_rational::BigRational;

    #[test]
    fn syntax_error_column() {
        match parse("u+*t") {
            Err(Error::SyntaxError { line, col, .. }) => assert_eq!((line, col), (1, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("(u"),
            Err(Error::SyntaxError { col: 3, .. })
        ));
        assert!(matches!(parse("u^"), Err(Error::SyntaxError { .. })));
    }

    #[test]
    fn precedence() {
        let q = Rationals;
        let two = BigRational::from_integer(2.into());
        let sym = |c: char| (c == 't').then(|| two.clone());
        let v = eval(&parse("-t^2+3*t/2-1").unwrap(), &q, &sym).unwrap();
        assert_eq!(v, BigRational::from_integer((-2).into()));
        assert_eq!(
            eval(&parse("1/(t-t)").unwrap(), &q, &sym),
            Err(Error::ZeroDenominator)
        );
        assert_eq!(
            eval(&parse("x").unwrap(), &q, &sym),
            Err(Error::UndefinedSymbol("x".into()))
        );
    }
}
