//! Arithmetic expressions in `q` (and `p`) as they appear in order and
//! p-part tables: `+ − * / ^`, parentheses, implicit multiplication, and
//! `(a,b)` meaning `gcd(a, b)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Q,
    P,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Gcd(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = cs[start..i].iter().collect();
                out.push(Tok::Num(s.parse().unwrap()));
            }
            'q' | 'p' => {
                out.push(Tok::Var(c));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' | ',' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            '−' => {
                out.push(Tok::Op('-'));
                i += 1;
            }
            _ => return Err(Error::Expr(format!("unexpected character {c:?} in {s:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) { Ok(()) } else { Err(Error::Expr(format!("expected {c:?} at token {}", self.pos))) }
    }

    // sum := term (('+'|'-') term)*
    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    // term := unary (('*'|'/')? unary)*   (juxtaposition multiplies)
    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Op('('))) {
                e = Expr::Mul(Box::new(e), Box::new(self.power()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let k = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n.to_u32().ok_or_else(|| Error::Expr("exponent too large".into()))?,
                _ => return Err(Error::Expr("exponent must be a nonnegative integer literal".into())),
            };
            if neg {
                return Err(Error::Expr("negative exponents are not supported".into()));
            }
            self.pos += 1;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Var('q')) => {
                self.pos += 1;
                Ok(Expr::Q)
            }
            Some(Tok::Var(_)) => {
                self.pos += 1;
                Ok(Expr::P)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let a = self.sum()?;
                if self.eat(',') {
                    let b = self.sum()?;
                    self.expect(')')?;
                    return Ok(Expr::Gcd(Box::new(a), Box::new(b)));
                }
                self.expect(')')?;
                Ok(a)
            }
            other => Err(Error::Expr(format!("unexpected token {other:?}"))),
        }
    }
}

/// Rational polynomial in `q`, low coefficient first, no trailing zeros.
pub type QPoly = Vec<BigRational>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn poly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add(a: &QPoly, b: &QPoly, sign: i32) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| {
                let y = b.get(i).unwrap_or(&z);
                a.get(i).unwrap_or(&z) + if sign > 0 { y.clone() } else { -y.clone() }
            })
            .collect(),
    )
}

/// Quotient and remainder.
pub fn poly_divrem(a: &QPoly, b: &QPoly) -> Result<(QPoly, QPoly)> {
    let b = trim(b.clone());
    let Some(lead) = b.last().cloned() else { return Err(Error::Expr("division by zero polynomial".into())) };
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return Ok((vec![], r));
    }
    let mut quo = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[k + i] -= &c * y;
        }
        quo[k] = c;
        r.pop();
        r = trim(r);
    }
    Ok((trim(quo), r))
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(Error::Expr("empty expression".into()));
        }
        let mut p = Parser { toks, pos: 0 };
        let e = p.sum()?;
        if p.pos != p.toks.len() {
            return Err(Error::Expr(format!("trailing input in {s:?}")));
        }
        Ok(e)
    }

    pub fn uses_p(&self) -> bool {
        match self {
            Expr::P => true,
            Expr::Num(_) | Expr::Q => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.uses_p(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Gcd(a, b) => {
                a.uses_p() || b.uses_p()
            }
        }
    }

    /// Exact value at integer `q` (and `p`, if the expression mentions it).
    pub fn eval(&self, q: &BigInt, p: Option<&BigInt>) -> Result<BigRational> {
        Ok(match self {
            Expr::Num(n) => BigRational::from_integer(n.clone()),
            Expr::Q => BigRational::from_integer(q.clone()),
            Expr::P => BigRational::from_integer(
                p.cloned().ok_or_else(|| Error::Expr("expression uses p but no p was given".into()))?,
            ),
            Expr::Neg(a) => -a.eval(q, p)?,
            Expr::Add(a, b) => a.eval(q, p)? + b.eval(q, p)?,
            Expr::Sub(a, b) => a.eval(q, p)? - b.eval(q, p)?,
            Expr::Mul(a, b) => a.eval(q, p)? * b.eval(q, p)?,
            Expr::Div(a, b) => {
                let d = b.eval(q, p)?;
                if d.is_zero() {
                    return Err(Error::Expr("division by zero".into()));
                }
                a.eval(q, p)? / d
            }
            Expr::Pow(a, k) => num_traits::pow(a.eval(q, p)?, *k as usize),
            Expr::Gcd(a, b) => {
                let (x, y) = (a.eval(q, p)?, b.eval(q, p)?);
                if !x.is_integer() || !y.is_integer() {
                    return Err(Error::Expr("gcd of non-integers".into()));
                }
                BigRational::from_integer(x.to_integer().gcd(&y.to_integer()))
            }
        })
    }

    /// Integer value; errors if the value is not integral.
    pub fn eval_int(&self, q: &BigInt, p: Option<&BigInt>) -> Result<BigInt> {
        let v = self.eval(q, p)?;
        if !v.is_integer() {
            return Err(Error::Expr(format!("{self} is not integral at q = {q}")));
        }
        Ok(v.to_integer())
    }

    /// Polynomial in `q`; `gcd` factors (which depend on `p`) are replaced by 1.
    pub fn to_poly(&self) -> Result<QPoly> {
        let one = || vec![BigRational::one()];
        Ok(match self {
            Expr::Num(n) => trim(vec![BigRational::from_integer(n.clone())]),
            Expr::Q => vec![BigRational::zero(), BigRational::one()],
            Expr::P => return Err(Error::Expr("p is not a polynomial variable".into())),
            Expr::Neg(a) => poly_add(&vec![], &a.to_poly()?, -1),
            Expr::Add(a, b) => poly_add(&a.to_poly()?, &b.to_poly()?, 1),
            Expr::Sub(a, b) => poly_add(&a.to_poly()?, &b.to_poly()?, -1),
            Expr::Mul(a, b) => poly_mul(&a.to_poly()?, &b.to_poly()?),
            Expr::Div(a, b) => {
                let (quo, rem) = poly_divrem(&a.to_poly()?, &b.to_poly()?)?;
                if !rem.is_empty() {
                    return Err(Error::Expr(format!("{self} is not a polynomial")));
                }
                quo
            }
            Expr::Pow(a, k) => {
                let base = a.to_poly()?;
                (0..*k).fold(one(), |acc, _| poly_mul(&acc, &base))
            }
            Expr::Gcd(..) => one(),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Q => f.write_str("q"),
            Expr::P => f.write_str("p"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
            Expr::Gcd(a, b) => write!(f, "gcd({a},{b})"),
        }
    }
}

/// Integer polynomial from rational coefficients, if all are integral.
pub fn integral(p: &QPoly) -> Option<Vec<BigInt>> {
    p.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, q: i64, p: i64) -> BigRational {
        Expr::parse(s).unwrap().eval(&BigInt::from(q), Some(&BigInt::from(p))).unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn evaluates() {
        assert_eq!(ev("q^6-q^3+1", 2, 19), int(57));
        assert_eq!(ev("(q^7+1)/(q+1)", 2, 43), int(43));
        assert_eq!(ev("(7,p)(5,p)(q+1)^7", 4, 5), int(5 * 5i64.pow(7)));
        assert_eq!(ev("(7,p)(5,p)^2(q+1)^8", 2, 3), int(3i64.pow(8)));
        assert_eq!(ev("2q+(q+1)/2", 7, 0), int(18));
        assert_eq!(ev("(q-1)^2/2", 8, 0), BigRational::new(49.into(), 2.into()));
        assert_eq!(ev("-q^2", 3, 0), int(-9));
        assert_eq!(ev("3 q", 5, 0), int(15));
        assert_eq!(ev("q^2 − q", 5, 0), int(20));
    }

    #[test]
    fn rejects() {
        for s in ["", "q+", "(q", "q^q", "q^-1", "q$", "()"] {
            assert!(Expr::parse(s).is_err(), "{s}");
        }
        assert!(Expr::parse("1/(q-2)").unwrap().eval(&BigInt::from(2), None).is_err());
        assert!(Expr::parse("p+1").unwrap().eval(&BigInt::from(2), None).is_err());
    }

    #[test]
    fn polynomials() {
        let p = Expr::parse("(q^7-1)/(q-1)").unwrap().to_poly().unwrap();
        assert_eq!(p, vec![int(1); 7]);
        assert!(Expr::parse("(q^2+1)/(q+1)").unwrap().to_poly().is_err());
        let g = Expr::parse("(5,p)(q+1)").unwrap().to_poly().unwrap();
        assert_eq!(g, vec![int(1), int(1)]);
    }
}
