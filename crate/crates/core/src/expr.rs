//! Parser and evaluator for parameter expressions.
//!
//! An expression is a linear combination of rationals, `pi` and square roots
//! of rationals, built from decimal literals (with optional exponent),
//! `+ - * /`, parentheses, `pi` and `sqrt(..)`. Products and quotients must
//! keep the result linear in the irrational terms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// A parsed expression `r + a·π + Σ b_d·√d` with squarefree `d > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linear {
    pub rational: BigRational,
    pub pi: BigRational,
    pub roots: BTreeMap<BigInt, BigRational>,
}

impl Linear {
    fn constant(r: BigRational) -> Self {
        Linear { rational: r, pi: BigRational::zero(), roots: BTreeMap::new() }
    }

    /// True when the value has no irrational part.
    pub fn is_rational(&self) -> bool {
        self.pi.is_zero() && self.roots.is_empty()
    }

    fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    fn add(mut self, other: Linear) -> Linear {
        self.rational += other.rational;
        self.pi += other.pi;
        for (d, c) in other.roots {
            let e = self.roots.entry(d.clone()).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                self.roots.remove(&d);
            }
        }
        self
    }

    fn scale(mut self, k: &BigRational) -> Linear {
        self.rational *= k;
        self.pi *= k;
        if k.is_zero() {
            self.roots.clear();
        } else {
            for c in self.roots.values_mut() {
                *c *= k;
            }
        }
        self
    }

    fn neg(self) -> Linear {
        self.scale(&-BigRational::one())
    }

    /// Interval `[lo, hi]` containing the value, with irrationals resolved to
    /// `digits` decimal places.
    pub fn enclose(&self, digits: u32) -> (BigRational, BigRational) {
        let mut lo = self.rational.clone();
        let mut hi = self.rational.clone();
        if !self.pi.is_zero() {
            let (a, b) = pi_bounds(digits);
            add_scaled(&mut lo, &mut hi, &self.pi, &a, &b);
        }
        for (d, c) in &self.roots {
            let (a, b) = sqrt_bounds(d, digits);
            add_scaled(&mut lo, &mut hi, c, &a, &b);
        }
        (lo, hi)
    }

    /// `floor(value · 10^places)`, resolved rigorously.
    pub fn floor_scaled(&self, places: u32) -> Result<BigInt> {
        let scale = BigRational::from_integer(BigInt::from(10u32).pow(places));
        if let Some(r) = self.as_rational() {
            return Ok((r * &scale).floor().to_integer());
        }
        let mut guard = 20;
        while guard <= 400 {
            let (lo, hi) = self.enclose(places + guard);
            let a = (lo * &scale).floor().to_integer();
            let b = (hi * &scale).floor().to_integer();
            if a == b {
                return Ok(a);
            }
            guard += 40;
        }
        Err(Error::Parse("cannot resolve the truncation of the expression".into()))
    }
}

fn add_scaled(lo: &mut BigRational, hi: &mut BigRational, c: &BigRational, a: &BigRational, b: &BigRational) {
    if c.is_positive() {
        *lo += c * a;
        *hi += c * b;
    } else {
        *lo += c * b;
        *hi += c * a;
    }
}

fn ten_pow(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// Rational bounds on π at `digits` decimal places (Machin's formula).
pub fn pi_bounds(digits: u32) -> (BigRational, BigRational) {
    let s = ten_pow(digits);
    let (a, na) = arctan_inv(5, &s);
    let (b, nb) = arctan_inv(239, &s);
    let approx = a * 16 - b * 4;
    let err = BigInt::from(16 * (na + 2) + 4 * (nb + 2));
    (
        BigRational::new(&approx - &err, s.clone()),
        BigRational::new(approx + err, s),
    )
}

/// `arctan(1/x)·s` by the alternating series with truncated terms; also
/// returns the number of terms summed.
fn arctan_inv(x: u32, s: &BigInt) -> (BigInt, u64) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = s / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    (sum, k)
}

/// Rational bounds on `√d` at `digits` decimal places.
pub fn sqrt_bounds(d: &BigInt, digits: u32) -> (BigRational, BigRational) {
    let s = ten_pow(digits);
    let r = (d * &s * &s).sqrt();
    (
        BigRational::new(r.clone(), s.clone()),
        BigRational::new(r + 1, s),
    )
}

/// Splits `n > 0` as `k²·d`; returns `(k, d)`. Trial division is capped, so
/// `d` may retain square factors with large prime divisors.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::one();
    let mut d = n.clone();
    let mut i = BigInt::from(2u32);
    let mut steps = 0u32;
    while &i * &i <= d && steps < 1_000_000 {
        let sq = &i * &i;
        while (&d % &sq).is_zero() {
            d /= &sq;
            k *= &i;
        }
        i += 1u32;
        steps += 1;
    }
    let r = d.sqrt();
    if &r * &r == d {
        k *= &r;
        d = BigInt::one();
    }
    (k, d)
}

fn sqrt_of(v: &BigRational) -> Result<Linear> {
    if v.is_negative() {
        return Err(Error::Parse("square root of a negative number".into()));
    }
    if v.is_zero() {
        return Ok(Linear::constant(BigRational::zero()));
    }
    // sqrt(a/b) = sqrt(a·b)/b
    let ab = v.numer() * v.denom();
    let (k, d) = square_part(&ab);
    let coef = BigRational::new(k, v.denom().clone());
    if d.is_one() {
        return Ok(Linear::constant(coef));
    }
    let mut roots = BTreeMap::new();
    roots.insert(d, coef);
    Ok(Linear { rational: BigRational::zero(), pi: BigRational::zero(), roots })
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
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
            let mantissa: String = chars[start..i].iter().collect();
            let mut exp: i64 = 0;
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                let mut sign = 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    if chars[j] == '-' {
                        sign = -1;
                    }
                    j += 1;
                }
                let ds = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if ds == j {
                    return Err(Error::Parse(format!("bad exponent in '{src}'")));
                }
                let digits: String = chars[ds..j].iter().collect();
                exp = sign * digits.parse::<i64>().map_err(|e| Error::Parse(e.to_string()))?;
                if exp.abs() > 1000 {
                    return Err(Error::Parse("exponent too large".into()));
                }
                i = j;
            }
            out.push(Token::Num(decimal(&mantissa, exp)?));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push(Token::Ident(if word == "π" { "pi".into() } else { word.to_lowercase() }));
        } else if "+-*/()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

fn decimal(mantissa: &str, exp: i64) -> Result<BigRational> {
    let mut parts = mantissa.split('.');
    let int = parts.next().unwrap_or("");
    let frac = parts.next().unwrap_or("");
    if parts.next().is_some() || (int.is_empty() && frac.is_empty()) {
        return Err(Error::Parse(format!("bad number '{mantissa}'")));
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad number '{mantissa}'")))?;
    let shift = exp - frac.len() as i64;
    let p = BigInt::from(10u32).pow(shift.unsigned_abs() as u32);
    Ok(if shift >= 0 {
        BigRational::from_integer(n * p)
    } else {
        BigRational::new(n, p)
    })
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Linear> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.add(self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Linear> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let rhs = self.factor()?;
                acc = match (acc.as_rational().cloned(), rhs.as_rational().cloned()) {
                    (Some(a), _) => rhs.scale(&a),
                    (None, Some(b)) => acc.scale(&b),
                    _ => return Err(Error::Parse("product of two irrational terms".into())),
                };
            } else if self.eat('/') {
                let rhs = self.factor()?;
                let b = rhs
                    .as_rational()
                    .ok_or_else(|| Error::Parse("division by an irrational term".into()))?;
                if b.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                acc = acc.scale(&b.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Linear> {
        match self.toks.get(self.pos).cloned() {
            Some(Token::Num(r)) => {
                self.pos += 1;
                Ok(Linear::constant(r))
            }
            Some(Token::Ident(w)) if w == "pi" => {
                self.pos += 1;
                Ok(Linear { rational: BigRational::zero(), pi: BigRational::one(), roots: BTreeMap::new() })
            }
            Some(Token::Ident(w)) if w == "sqrt" => {
                self.pos += 1;
                if !self.eat('(') {
                    return Err(Error::Parse("expected '(' after sqrt".into()));
                }
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                let v = inner
                    .as_rational()
                    .ok_or_else(|| Error::Parse("sqrt of an irrational argument".into()))?;
                sqrt_of(v)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

/// Parses an expression into its linear form.
pub fn parse_linear(src: &str) -> Result<Linear> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{src}'")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn decimals_and_exponents() {
        assert_eq!(parse_linear("0.93").unwrap().rational, r(93, 100));
        assert_eq!(parse_linear("0.5+1e-6").unwrap().rational, r(500001, 1000000));
        assert_eq!(parse_linear("7/10").unwrap().rational, r(7, 10));
        assert_eq!(parse_linear("2.5E1/100").unwrap().rational, r(1, 4));
    }

    #[test]
    fn pi_terms() {
        let e = parse_linear("0.93+pi*1e-5").unwrap();
        assert_eq!(e.rational, r(93, 100));
        assert_eq!(e.pi, r(1, 100000));
        let e = parse_linear("0.6-1e-5*pi").unwrap();
        assert_eq!(e.pi, r(-1, 100000));
    }

    #[test]
    fn pi_digits() {
        let (lo, hi) = pi_bounds(40);
        let s = BigRational::from_integer(BigInt::from(10u32).pow(30u32));
        let want: BigInt = "3141592653589793238462643383279".parse().unwrap();
        assert_eq!((lo * &s).floor().to_integer(), want);
        assert_eq!((hi * &s).floor().to_integer(), want);
    }

    #[test]
    fn sqrt_simplifies() {
        let e = parse_linear("sqrt(8)").unwrap();
        assert_eq!(e.roots.get(&BigInt::from(2)), Some(&r(2, 1)));
        let e = parse_linear("sqrt(9/4)").unwrap();
        assert!(e.is_rational());
        assert_eq!(e.rational, r(3, 2));
        let e = parse_linear("0.3+sqrt(2)*1e-3").unwrap();
        assert_eq!(e.floor_scaled(12).unwrap(), BigInt::from(301414213562i64));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_linear("").is_err());
        assert!(parse_linear("0.5+").is_err());
        assert!(parse_linear("pi*pi").is_err());
        assert!(parse_linear("1/(pi)").is_err());
        assert!(parse_linear("0.5 0.3").is_err());
        assert!(parse_linear("1e").is_err());
        assert!(parse_linear("foo").is_err());
        assert!(parse_linear("1/0").is_err());
    }

    #[test]
    fn truncation() {
        let e = parse_linear("0.93+pi*1e-5").unwrap();
        assert_eq!(e.floor_scaled(12).unwrap(), BigInt::from(930031415926i64));
        let e = parse_linear("0.31+pi*1e-5").unwrap();
        assert_eq!(e.floor_scaled(12).unwrap(), BigInt::from(310031415926i64));
    }
}
