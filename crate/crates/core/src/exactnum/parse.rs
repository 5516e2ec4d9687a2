//! Parser for scalar expressions such as `-1/tau`, `(1-1/tau)/2` or
//! `3/2 + 3/2*tau`.
//!
//! Only operations that stay exact are accepted: sums, rational scaling,
//! and products/quotients inside the quadratic field.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Context, ExactNumber};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s
        .chars()
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Token::Num(decimal(&lit)?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

fn decimal(lit: &str) -> Result<BigRational> {
    let (int_part, frac_part) = lit.split_once('.').unwrap_or((lit, ""));
    if (int_part.is_empty() && frac_part.is_empty()) || frac_part.contains('.') {
        return Err(Error::Parse(format!("bad number {lit:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {lit:?}")))?;
    Ok(BigRational::new(
        numer,
        BigInt::from(10u32).pow(frac_part.len() as u32),
    ))
}

/// Parses a rational in `p/q`, integer or decimal form.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let ctx = super::GeneratorContext::rational();
    let v = parse_expr(&ctx, s)?;
    v.as_rational()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("not rational: {s:?}")))
}

/// Parses an expression over the generators of `ctx`.
pub fn parse_expr(ctx: &Context, s: &str) -> Result<ExactNumber> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        ctx,
        tokens: &tokens,
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

struct Parser<'a> {
    ctx: &'a Context,
    tokens: &'a [Token],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExactNumber> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactNumber> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?)?;
            } else if self.eat('/') {
                acc = acc.div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<ExactNumber> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        if self.eat('+') {
            return self.factor();
        }
        match self.peek().cloned() {
            Some(Token::Num(q)) => {
                self.pos += 1;
                Ok(ExactNumber::from_rational(self.ctx, q))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                ExactNumber::generator(self.ctx, &name)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a half-open interval literal `[a, b)`.
pub fn parse_interval(ctx: &Context, s: &str) -> Result<(ExactNumber, ExactNumber)> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected half-open interval [a, b), got {s:?}")))?;
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if split.is_some() {
                    return Err(Error::Parse(format!("too many commas in {s:?}")));
                }
                split = Some(i);
            }
            _ => {}
        }
    }
    let i = split.ok_or_else(|| Error::Parse(format!("missing comma in {s:?}")))?;
    Ok((parse_expr(ctx, &inner[..i])?, parse_expr(ctx, &inner[i + 1..])?))
}

/// Coefficient vector `[q0, q1, ...]` given as rational strings.
pub fn parse_coeff_vector(ctx: &Context, parts: &[String]) -> Result<ExactNumber> {
    let coeffs = parts
        .iter()
        .map(|p| parse_rational(p))
        .collect::<Result<Vec<_>>>()?;
    ExactNumber::from_coeffs(ctx, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GeneratorContext;

    #[test]
    fn parses_halffib_endpoints() {
        let ctx = GeneratorContext::golden();
        let a = parse_expr(&ctx, "−1/tau").unwrap();
        assert_eq!(a.to_string(), "1 - tau");
        let b = parse_expr(&ctx, "(1-1/tau)/2").unwrap();
        assert_eq!(b.to_string(), "1 - 1/2*tau");
        let (lo, hi) = parse_interval(&ctx, "[-1/tau,(1-1/tau)/2)").unwrap();
        assert_eq!((lo, hi), (a, b));
    }

    #[test]
    fn display_round_trips() {
        let ctx = GeneratorContext::golden();
        for s in ["0", "3/2 + 3/2*tau", "-tau", "-7/3 - 2*tau", "tau*tau/5", "0.125 - tau"] {
            let v = parse_expr(&ctx, s).unwrap();
            assert_eq!(parse_expr(&ctx, &v.to_string()).unwrap(), v, "{s}");
        }
    }

    #[test]
    fn rejects_garbage() {
        let ctx = GeneratorContext::golden();
        assert!(parse_expr(&ctx, "1 +").is_err());
        assert!(parse_expr(&ctx, "phi").is_err());
        assert!(parse_expr(&ctx, "(1").is_err());
        assert!(parse_expr(&ctx, "1/0").is_err());
        assert!(parse_interval(&ctx, "[0,1]").is_err());
        assert_eq!(parse_rational("-3/4").unwrap(), BigRational::new((-3).into(), 4.into()));
    }
}
