//! Recursive-descent parser for the operator expression language.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Generator, OpExpr};

/// A diagnostic with a byte offset into the source, rendered as
/// `line:col: message`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub line: u32,
    pub col: u32,
    pub message: String,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Caret,
    LParen,
    RParen,
    Gen(Generator),
    ImaginaryUnit,
    Number(BigRational),
    Eof,
}

impl Token {
    fn describe(&self) -> &'static str {
        match self {
            Token::Plus => "'+'",
            Token::Minus => "'-'",
            Token::Caret => "'^'",
            Token::LParen => "'('",
            Token::RParen => "')'",
            Token::Gen(_) => "generator",
            Token::ImaginaryUnit => "'i'",
            Token::Number(_) => "number",
            Token::Eof => "end of input",
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

fn error_at(src: &[u8], offset: usize, message: String, expected: Vec<&'static str>) -> ParseError {
    let mut line = 1u32;
    let mut col = 1u32;
    for &b in &src[..offset.min(src.len())] {
        if b == b'\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    ParseError {
        offset,
        line,
        col,
        message,
        expected,
    }
}

impl<'a> Lexer<'a> {
    fn new(src: &'a [u8]) -> Self {
        Self { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<&'a [u8]> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos > start {
            Some(&self.src[start..self.pos])
        } else {
            None
        }
    }

    fn next(&mut self) -> Result<(Token, usize), ParseError> {
        self.skip_ws();
        let at = self.pos;
        if at >= self.src.len() {
            return Ok((Token::Eof, at));
        }
        let b = self.src[at];
        let token = match b {
            b'+' => {
                self.pos += 1;
                Token::Plus
            }
            b'-' => {
                self.pos += 1;
                Token::Minus
            }
            b'^' => {
                self.pos += 1;
                Token::Caret
            }
            b'(' => {
                self.pos += 1;
                Token::LParen
            }
            b')' => {
                self.pos += 1;
                Token::RParen
            }
            b'Q' => {
                self.pos += 1;
                Token::Gen(Generator::Q)
            }
            b'D' => {
                self.pos += 1;
                Token::Gen(Generator::D)
            }
            b'P' => {
                self.pos += 1;
                Token::Gen(Generator::P)
            }
            b'i' => {
                self.pos += 1;
                Token::ImaginaryUnit
            }
            b'0'..=b'9' => {
                let numer = self.digits().expect("digit present");
                let numer = BigInt::parse_bytes(numer, 10).expect("digit string");
                // '/' directly after the digits (no spaces) continues the literal
                if self.pos < self.src.len() && self.src[self.pos] == b'/' {
                    self.pos += 1;
                    let denom_at = self.pos;
                    let Some(denom) = self.digits() else {
                        return Err(error_at(
                            self.src,
                            denom_at,
                            "expected denominator digits after '/'".into(),
                            vec!["number"],
                        ));
                    };
                    let denom = BigInt::parse_bytes(denom, 10).expect("digit string");
                    if denom.is_zero() {
                        return Err(error_at(
                            self.src,
                            denom_at,
                            "zero denominator".into(),
                            vec![],
                        ));
                    }
                    Token::Number(BigRational::new(numer, denom))
                } else {
                    Token::Number(BigRational::from_integer(numer))
                }
            }
            other => {
                return Err(error_at(
                    self.src,
                    at,
                    format!("unexpected character {:?}", other as char),
                    vec!["'Q'", "'D'", "'P'", "'i'", "number", "'('"],
                ));
            }
        };
        Ok((token, at))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    tokens: Vec<(Token, usize)>,
    index: usize,
    depth: u32,
}

const MAX_DEPTH: u32 = 256;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.index].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.index].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.index].0.clone();
        if self.index + 1 < self.tokens.len() {
            self.index += 1;
        }
        t
    }

    fn fail(&self, message: &str, expected: Vec<&'static str>) -> ParseError {
        error_at(self.src, self.offset(), message.to_string(), expected)
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.fail("expression nests too deeply", vec![]));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<OpExpr, ParseError> {
        self.enter()?;
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = OpExpr::Sum(Box::new(acc), Box::new(rhs));
                }
                Token::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = OpExpr::Difference(Box::new(acc), Box::new(rhs));
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn starts_factor(token: &Token) -> bool {
        matches!(
            token,
            Token::Gen(_) | Token::ImaginaryUnit | Token::Number(_) | Token::LParen
        )
    }

    fn term(&mut self) -> Result<OpExpr, ParseError> {
        self.enter()?;
        let negated = if matches!(self.peek(), Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let mut factors = vec![self.factor()?];
        while Self::starts_factor(self.peek()) {
            factors.push(self.factor()?);
        }
        let product = if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            OpExpr::Product(factors)
        };
        self.depth -= 1;
        Ok(if negated {
            OpExpr::Negate(Box::new(product))
        } else {
            product
        })
    }

    fn factor(&mut self) -> Result<OpExpr, ParseError> {
        self.enter()?;
        let base = self.atom()?;
        let out = if matches!(self.peek(), Token::Caret) {
            self.bump();
            let negative = if matches!(self.peek(), Token::Minus) {
                self.bump();
                true
            } else {
                false
            };
            let at = self.offset();
            match self.bump() {
                Token::Number(r) if r.is_integer() => {
                    let value = i64::try_from(r.to_integer()).map_err(|_| {
                        error_at(self.src, at, "integer literal overflows".into(), vec![])
                    })?;
                    OpExpr::Power(Box::new(base), if negative { -value } else { value })
                }
                Token::Number(_) => {
                    return Err(error_at(
                        self.src,
                        at,
                        "exponent must be an integer".into(),
                        vec!["number"],
                    ))
                }
                other => {
                    return Err(error_at(
                        self.src,
                        at,
                        format!("expected exponent, found {}", other.describe()),
                        vec!["number"],
                    ))
                }
            }
        } else {
            base
        };
        self.depth -= 1;
        Ok(out)
    }

    fn atom(&mut self) -> Result<OpExpr, ParseError> {
        self.enter()?;
        let out = match self.peek().clone() {
            Token::Gen(g) => {
                self.bump();
                OpExpr::Generator(g)
            }
            Token::ImaginaryUnit => {
                self.bump();
                OpExpr::ImaginaryUnit
            }
            Token::Number(r) => {
                self.bump();
                OpExpr::Rational(r)
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                if !matches!(self.peek(), Token::RParen) {
                    return Err(self.fail("unclosed parenthesis", vec!["')'"]));
                }
                self.bump();
                inner
            }
            other => {
                return Err(self.fail(
                    &format!("expected an operand, found {}", other.describe()),
                    vec!["'Q'", "'D'", "'P'", "'i'", "number", "'('"],
                ))
            }
        };
        self.depth -= 1;
        Ok(out)
    }
}

/// Parses UTF-8 text into an expression tree.
pub fn parse(src: &str) -> Result<OpExpr, ParseError> {
    let bytes = src.as_bytes();
    let mut lexer = Lexer::new(bytes);
    let mut tokens = Vec::new();
    loop {
        let (token, at) = lexer.next()?;
        let done = token == Token::Eof;
        tokens.push((token, at));
        if done {
            break;
        }
    }
    let mut parser = Parser {
        src: bytes,
        tokens,
        index: 0,
        depth: 0,
    };
    let expr = parser.expr()?;
    if !matches!(parser.peek(), Token::Eof) {
        return Err(parser.fail(
            &format!("trailing input starting with {}", parser.peek().describe()),
            vec!["'+'", "'-'", "end of input"],
        ));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_letter_word() {
        let e = parse("Q D").unwrap();
        assert_eq!(
            e,
            OpExpr::Product(vec![
                OpExpr::Generator(Generator::Q),
                OpExpr::Generator(Generator::D)
            ])
        );
    }

    #[test]
    fn parses_parenthesized_power() {
        let e = parse("(Q D)^3").unwrap();
        match e {
            OpExpr::Power(base, 3) => assert!(matches!(*base, OpExpr::Product(_))),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn whitespace_is_immaterial() {
        assert_eq!(parse("QD+ iQ^2").unwrap(), parse(" Q D + i Q ^ 2 ").unwrap());
    }

    #[test]
    fn reports_position_and_expectation() {
        let err = parse("Q +").unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.col, 4);
        assert!(!err.expected.is_empty());
        let rendered = err.to_string();
        assert!(rendered.starts_with("1:4:"), "{rendered}");
    }

    #[test]
    fn rejects_zero_denominator() {
        let err = parse("1/0 Q").unwrap_err();
        assert!(err.message.contains("zero denominator"));
    }

    #[test]
    fn rejects_unknown_symbols() {
        assert!(parse("Q x D").is_err());
        assert!(parse("exp(Q)").is_err());
    }

    #[test]
    fn rejects_huge_exponent_literal() {
        let err = parse("Q^99999999999999999999").unwrap_err();
        assert!(err.message.contains("overflow"), "{}", err.message);
    }

    #[test]
    fn deep_nesting_is_a_diagnostic_not_a_crash() {
        let mut src = String::new();
        for _ in 0..2000 {
            src.push('(');
        }
        src.push('Q');
        for _ in 0..2000 {
            src.push(')');
        }
        assert!(parse(&src).is_err());
    }
}
