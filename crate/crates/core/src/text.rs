//! Human-readable formatting and the expression parser.
//!
//! Grammar (whitespace is ignored, juxtaposition multiplies):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | 't' | 'i' | 'j' | 'k' | 'eps' | 'ε' | '(' expr ')'
//! ```
//!
//! Numbers are integers or decimals and are read exactly. Division is only
//! allowed by an invertible constant.

use crate::algebra::{parse_decimal, DualQuaternion, Quaternion, Ring, Scalar};
use crate::error::{Error, Result};
use crate::poly::{DualPoly, QuatPoly, RealPoly};

fn is_negative<S: Scalar>(c: &S) -> bool {
    *c < S::zero()
}

/// Appends `coef·name` to a signed sum. `name` empty means a bare number.
fn push_term<S: Scalar>(out: &mut String, coef: &S, name: &str, spaced: bool) {
    if coef.is_zero() {
        return;
    }
    let neg = is_negative(coef);
    let abs = if neg { -coef.clone() } else { coef.clone() };
    let sep = match (out.is_empty(), neg, spaced) {
        (true, true, _) => "-",
        (true, false, _) => "",
        (false, true, true) => " - ",
        (false, false, true) => " + ",
        (false, true, false) => "-",
        (false, false, false) => "+",
    };
    out.push_str(sep);
    if name.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs == S::one() {
        out.push_str(name);
    } else {
        out.push_str(&format!("{abs}*{name}"));
    }
}

fn quaternion_terms<S: Scalar>(out: &mut String, q: &Quaternion<S>, spaced: bool) {
    push_term(out, &q.w, "", spaced);
    push_term(out, &q.x, "i", spaced);
    push_term(out, &q.y, "j", spaced);
    push_term(out, &q.z, "k", spaced);
}

pub fn format_quaternion<S: Scalar>(q: &Quaternion<S>) -> String {
    let mut out = String::new();
    quaternion_terms(&mut out, q, true);
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_dual_quaternion<S: Scalar>(h: &DualQuaternion<S>) -> String {
    let mut out = String::new();
    quaternion_terms(&mut out, &h.primal, true);
    if !h.dual.is_zero() {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("eps*({})", format_quaternion(&h.dual)));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn power_name(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{k}"),
    }
}

/// Descending compact form such as `t^2+1`.
pub fn format_real_poly<S: Scalar>(p: &RealPoly<S>) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        push_term(&mut out, c, &power_name(k), false);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Descending form with parenthesized quaternion coefficients.
pub fn format_quat_poly<S: Scalar>(p: &QuatPoly<S>) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let nonzero = c.components().iter().filter(|x| !x.is_zero()).count();
        if nonzero == 1 {
            let (idx, val) = c.components().iter().enumerate().find(|(_, x)| !x.is_zero()).map(|(i, x)| (i, (*x).clone())).expect("one nonzero component");
            let unit = ["", "i", "j", "k"][idx];
            let name = match (unit, k) {
                ("", _) => power_name(k),
                (u, 0) => u.to_string(),
                (u, _) => format!("{u}*{}", power_name(k)),
            };
            push_term(&mut out, &val, &name, true);
        } else {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&format!("({})", format_quaternion(c)));
            if k > 0 {
                out.push('*');
                out.push_str(&power_name(k));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_dual_poly<S: Scalar>(p: &DualPoly<S>) -> String {
    let primal = p.primal();
    let dual = p.dual();
    let mut out = if primal.is_zero() { String::new() } else { format_quat_poly(&primal) };
    if !dual.is_zero() {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("eps*({})", format_quat_poly(&dual)));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `t - h` written out, e.g. `(t - i + eps*(j))`.
pub fn format_linear_factor<S: Scalar>(h: &DualQuaternion<S>) -> String {
    let mut out = String::from("t");
    quaternion_terms(&mut out, &(-h.primal.clone()), true);
    if !h.dual.is_zero() {
        out.push_str(&format!(" + eps*({})", format_quaternion(&(-h.dual.clone()))));
    }
    format!("({out})")
}

/// Product notation for a unit followed by linear factors.
pub fn format_chain<S: Scalar>(unit: &DualQuaternion<S>, factors: &[DualQuaternion<S>]) -> String {
    let mut out = String::new();
    if *unit != DualQuaternion::one() || factors.is_empty() {
        let u = format_dual_quaternion(unit);
        if factors.is_empty() {
            return u;
        }
        out.push_str(&format!("({u})"));
    }
    for h in factors {
        out.push_str(&format_linear_factor(h));
    }
    out
}

// ---------------------------------------------------------------- parsing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    T,
    I,
    J,
    K,
    Eps,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut n = 0;
    while n < chars.len() {
        let (pos, c) = chars[n];
        n += 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            '0'..='9' | '.' => {
                let mut s = String::from(c);
                while n < chars.len() && (chars[n].1.is_ascii_digit() || chars[n].1 == '.') {
                    s.push(chars[n].1);
                    n += 1;
                }
                Tok::Num(s)
            }
            't' => Tok::T,
            'i' => Tok::I,
            'j' => Tok::J,
            'k' => Tok::K,
            'ε' => Tok::Eps,
            'e' if src[pos..].starts_with("eps") => {
                n += 2;
                Tok::Eps
            }
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::Syntax { pos, msg: format!("unexpected character {other:?}") });
            }
        };
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<S> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    _s: std::marker::PhantomData<S>,
}

impl<S: Scalar> Parser<S> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<DualPoly<S>> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek().cloned() {
            match op {
                Tok::Plus => {
                    self.at += 1;
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.at += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<DualPoly<S>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = acc * self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.unary()?;
                    let inv = (d.deg() == 0)
                        .then(|| d.coeff(0).inverse())
                        .flatten()
                        .ok_or(Error::Syntax { pos, msg: "division by a non-invertible expression".into() })?;
                    acc = acc.mul_right(&inv);
                }
                Some(Tok::Num(_) | Tok::T | Tok::I | Tok::J | Tok::K | Tok::Eps | Tok::LParen) => {
                    acc = acc * self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<DualPoly<S>> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<DualPoly<S>> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                let n: usize = match s.parse() {
                    Ok(n) => n,
                    Err(_) => return self.err("exponent must be a nonnegative integer"),
                };
                self.at += 1;
                Ok(base.pow(n))
            }
            _ => self.err("exponent must be a nonnegative integer"),
        }
    }

    fn atom(&mut self) -> Result<DualPoly<S>> {
        let unit = |q: Quaternion<S>| DualPoly::constant(DualQuaternion::from_primal(q));
        let tok = match self.peek().cloned() {
            Some(t) => t,
            None => return self.err("unexpected end of input"),
        };
        let pos = self.pos();
        self.at += 1;
        Ok(match tok {
            Tok::Num(s) => {
                let r = parse_decimal(&s).ok_or(Error::Syntax { pos, msg: format!("malformed number {s:?}") })?;
                unit(Quaternion::real(S::from_rational(&r)))
            }
            Tok::T => DualPoly::t(),
            Tok::I => unit(Quaternion::i()),
            Tok::J => unit(Quaternion::j()),
            Tok::K => unit(Quaternion::k()),
            Tok::Eps => DualPoly::constant(DualQuaternion::eps()),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.at += 1;
                inner
            }
            _ => {
                self.at -= 1;
                return self.err("expected a number, t, i, j, k, eps or '('");
            }
        })
    }
}

/// Parses an expression into a dual-quaternion polynomial without any
/// validity checks.
pub fn parse_dual_poly<S: Scalar>(src: &str) -> Result<DualPoly<S>> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.len(), _s: std::marker::PhantomData };
    let value = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(value)
}

/// Parses an expression that must be a real polynomial.
pub fn parse_real_poly<S: Scalar>(src: &str) -> Result<RealPoly<S>> {
    let p = parse_dual_poly::<S>(src)?;
    if !p.dual().is_zero() {
        return Err(Error::Syntax { pos: 0, msg: "expected a real polynomial".into() });
    }
    let primal = p.primal();
    let [w, x, y, z] = primal.components();
    if !(x.is_zero() && y.is_zero() && z.is_zero()) {
        return Err(Error::Syntax { pos: 0, msg: "expected a real polynomial".into() });
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type DP = DualPoly<Rational>;
    type Q = Quaternion<Rational>;
    type DQ = DualQuaternion<Rational>;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn formats() {
        assert_eq!(format_real_poly(&RealPoly::<Rational>::from_i64s(&[1, 0, 1])), "t^2+1");
        assert_eq!(format_real_poly(&RealPoly::new(vec![r(0, 1), r(3, 5)])), "3/5*t");
        assert_eq!(format_real_poly(&RealPoly::<Rational>::zero()), "0");
        let h = DQ::new(Q::i(), -Q::j());
        assert_eq!(format_linear_factor(&h), "(t - i + eps*(j))");
        let h = DQ::from_primal(Q::vector(r(-3, 5), r(0, 1), r(-4, 5)));
        assert_eq!(format_linear_factor(&h), "(t + 3/5*i + 4/5*k)");
        assert_eq!(format_chain(&DQ::one(), &[]), "1");
        assert_eq!(format_quaternion(&Q::new(r(1, 1), r(-1, 2), r(0, 1), r(2, 1))), "1 - 1/2*i + 2*k");
    }

    #[test]
    fn parses() {
        let m: DP = parse_dual_poly("t^2 + 1 + eps*i").unwrap();
        assert_eq!(m.coeffs().len(), 3);
        assert_eq!(m.coeff(0), DQ::new(Q::one(), Q::i()));
        let a: DP = parse_dual_poly("(t - i)(t - j)").unwrap();
        let b: DP = parse_dual_poly("t^2 - (i + j) t + k").unwrap();
        assert_eq!(a, b);
        let c: DP = parse_dual_poly("t - (3i + 4k)/5 - ε5j/4").unwrap();
        assert_eq!(c.coeff(0), DQ::new(Q::vector(r(-3, 5), r(0, 1), r(-4, 5)), Q::vector(r(0, 1), r(-5, 4), r(0, 1))));
        let d: DP = parse_dual_poly("0.6t").unwrap();
        assert_eq!(d.coeff(1), DQ::from_primal(Q::real(r(3, 5))));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_dual_poly::<Rational>("t +"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_dual_poly::<Rational>("t $ 1"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_dual_poly::<Rational>("(t"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_dual_poly::<Rational>("1/eps"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn formatted_chains_parse_back() {
        let f = [DQ::new(Q::i(), -Q::j()), DQ::from_primal(Q::vector(r(-3, 5), r(0, 1), r(-4, 5)))];
        let text = format_chain(&DQ::one(), &f);
        let back: DP = parse_dual_poly(&text).unwrap();
        let direct = DP::linear(f[0].clone()) * DP::linear(f[1].clone());
        assert_eq!(back, direct);
    }
}
