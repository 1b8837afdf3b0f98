//! Class expressions such as `2*a1*b1 - 1/3*theta^2 + F(C)`.
//!
//! ```text
//! expr    := sign? term (("+" | "-") term)*
//! term    := power ("*" power | "/" integer)*
//! power   := primary ("^" integer)?
//! primary := number ("/" number)? | ident ("(" expr ("," expr)* ")")? | "(" expr ")"
//! ```

use std::fmt;

use num_bigint::BigInt;
use taut_core::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ExprError {}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(Rational),
    Atom { name: String, column: usize },
    Call { name: String, args: Vec<Expr>, column: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Symbol(char),
}

fn tokenize(src: &str) -> Result<Vec<(Token, usize)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Token::Int(digits.parse().expect("digits")), column));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), column));
        } else if "+-*/^(),".contains(c) {
            out.push((Token::Symbol(c), column));
            i += 1;
        } else {
            return Err(ExprError {
                column,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Symbol(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat('/') {
                match self.peek().cloned() {
                    Some(Token::Int(q)) if q != BigInt::from(0) => {
                        self.pos += 1;
                        let inv = Expr::Number(Rational::new(1.into(), q));
                        lhs = Expr::Mul(Box::new(lhs), Box::new(inv));
                    }
                    _ => return self.error("expected a nonzero integer divisor"),
                }
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Int(k)) => {
                    self.pos += 1;
                    let k = u32::try_from(k).or_else(|_| self.error("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => self.error("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Token::Int(p)) => {
                self.pos += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Token::Int(q)) if q != BigInt::from(0) => {
                            self.pos += 1;
                            Ok(Expr::Number(Rational::new(p, q)))
                        }
                        _ => self.error("expected a nonzero denominator"),
                    }
                } else {
                    Ok(Expr::Number(Rational::from_integer(p)))
                }
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    if !self.eat(')') {
                        return self.error("expected ')'");
                    }
                    Ok(Expr::Call { name, args, column })
                } else {
                    Ok(Expr::Atom { name, column })
                }
            }
            Some(Token::Symbol('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            Some(t) => self.error(format!("unexpected {t:?}")),
            None => self.error("unexpected end of expression"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: src.chars().count() + 1,
    };
    let e = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(e)
}

/// Target of evaluation: a ring with named atoms and named functions.
pub trait Evaluator {
    type Value: Clone;

    fn constant(&self, c: &Rational) -> Result<Self::Value, String>;
    fn atom(&self, name: &str) -> Result<Self::Value, String>;
    fn call(&self, name: &str, args: &[Self::Value]) -> Result<Self::Value, String>;
    fn add(&self, x: &Self::Value, y: &Self::Value) -> Result<Self::Value, String>;
    fn mul(&self, x: &Self::Value, y: &Self::Value) -> Result<Self::Value, String>;
    fn neg(&self, x: &Self::Value) -> Result<Self::Value, String>;
}

pub fn evaluate<E: Evaluator>(e: &Expr, ev: &E) -> Result<E::Value, ExprError> {
    let at = |column: usize| move |message: String| ExprError { column, message };
    match e {
        Expr::Number(c) => ev.constant(c).map_err(at(1)),
        Expr::Atom { name, column } => ev.atom(name).map_err(at(*column)),
        Expr::Call { name, args, column } => {
            let values = args.iter().map(|a| evaluate(a, ev)).collect::<Result<Vec<_>, _>>()?;
            ev.call(name, &values).map_err(at(*column))
        }
        Expr::Neg(x) => ev.neg(&evaluate(x, ev)?).map_err(at(1)),
        Expr::Add(x, y) => ev.add(&evaluate(x, ev)?, &evaluate(y, ev)?).map_err(at(1)),
        Expr::Sub(x, y) => {
            let y = ev.neg(&evaluate(y, ev)?).map_err(at(1))?;
            ev.add(&evaluate(x, ev)?, &y).map_err(at(1))
        }
        Expr::Mul(x, y) => ev.mul(&evaluate(x, ev)?, &evaluate(y, ev)?).map_err(at(1)),
        Expr::Pow(x, k) => {
            let base = evaluate(x, ev)?;
            let mut acc = ev.constant(&Rational::from_integer(1.into())).map_err(at(1))?;
            for _ in 0..*k {
                acc = ev.mul(&acc, &base).map_err(at(1))?;
            }
            Ok(acc)
        }
    }
}

pub fn parse_and_evaluate<E: Evaluator>(src: &str, ev: &E) -> Result<E::Value, ExprError> {
    evaluate(&parse(src)?, ev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use taut_core::exact::rat;

    struct Numbers;

    impl Evaluator for Numbers {
        type Value = Rational;

        fn constant(&self, c: &Rational) -> Result<Rational, String> {
            Ok(c.clone())
        }

        fn atom(&self, name: &str) -> Result<Rational, String> {
            match name {
                "x" => Ok(rat(1, 2)),
                _ => Err(format!("unknown class '{name}'")),
            }
        }

        fn call(&self, name: &str, args: &[Rational]) -> Result<Rational, String> {
            match (name, args) {
                ("double", [a]) => Ok(a * rat(2, 1)),
                _ => Err(format!("unknown function '{name}'")),
            }
        }

        fn add(&self, x: &Rational, y: &Rational) -> Result<Rational, String> {
            Ok(x + y)
        }

        fn mul(&self, x: &Rational, y: &Rational) -> Result<Rational, String> {
            Ok(x * y)
        }

        fn neg(&self, x: &Rational) -> Result<Rational, String> {
            Ok(-x)
        }
    }

    #[test]
    fn arithmetic() {
        let cases = [
            ("1 + 2*3", rat(7, 1)),
            ("-x^2 + 1/3", rat(1, 12)),
            ("(1 - x)^3", rat(1, 8)),
            ("double(x) * 5/2", rat(5, 2)),
            ("x^0", rat(1, 1)),
            ("x^2/2 - 1/8", rat(0, 1)),
        ];
        for (src, value) in cases {
            assert_eq!(parse_and_evaluate(src, &Numbers).unwrap(), value, "{src}");
        }
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(parse_and_evaluate("1 + y", &Numbers).unwrap_err().column, 5);
        assert_eq!(parse("2 $ 3").unwrap_err().column, 3);
        assert_eq!(parse("(1 + 2").unwrap_err().column, 7);
        assert!(parse("1/0").is_err());
        assert!(parse("x^y").is_err());
        assert!(parse("1 2").is_err());
    }
}
