//! Operator expression grammar: parsing and canonical rendering.
//!
//! ```text
//! expr   := [ "-" ] term { ("+" | "-") term }
//! term   := factor { ("*" | "/") factor }
//! factor := base [ "^" natural ]
//! base   := integer | "x" | "d" | "(" expr ")"
//! ```
//!
//! Every value is an operator in K[d]; `*` is the noncommutative Ore
//! product, applied left to right. `/` right-multiplies by the inverse of
//! its right operand, which must be a nonzero operator of order zero (a
//! rational function). The renderer emits division only inside order-zero
//! subexpressions, so `parse(render(a)) == a`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::OreMatrix;
use crate::ore::OreOp;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::ratfunc::RatFunc;

// ---- lexer ----

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    X,
    D,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

/// A token together with its 1-indexed column in the source string.
struct Lexer {
    tokens: Vec<(Token, usize)>,
    cursor: usize,
    end_pos: usize,
}

fn lex(input: &str) -> Result<Lexer> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value = digits.parse::<BigInt>().expect("digits parse");
                tokens.push((Token::Int(value), pos));
                continue;
            }
            'x' => tokens.push((Token::X, pos)),
            'd' => tokens.push((Token::D, pos)),
            '+' => tokens.push((Token::Plus, pos)),
            '-' => tokens.push((Token::Minus, pos)),
            '*' => tokens.push((Token::Star, pos)),
            '/' => tokens.push((Token::Slash, pos)),
            '^' => tokens.push((Token::Caret, pos)),
            '(' => tokens.push((Token::LParen, pos)),
            ')' => tokens.push((Token::RParen, pos)),
            other => {
                return Err(Error::Parse {
                    pos,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
        i += 1;
    }
    Ok(Lexer {
        tokens,
        cursor: 0,
        end_pos: chars.len() + 1,
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map_or(self.end_pos, |(_, p)| *p)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(t, _)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn eat(&mut self, expected: &Token) -> bool {
        if self.peek() == Some(expected) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }
}

// ---- parser ----

/// Parses an operator expression into its canonical K[d] form.
pub fn parse_operator(input: &str) -> Result<OreOp> {
    let mut lx = lex(input)?;
    let value = parse_expr(&mut lx)?;
    if lx.peek().is_some() {
        return Err(Error::Parse {
            pos: lx.pos(),
            message: "unexpected trailing input".into(),
        });
    }
    Ok(value)
}

/// Parses an expression that must be a rational function (order zero).
pub fn parse_ratfunc(input: &str) -> Result<RatFunc> {
    let op = parse_operator(input)?;
    if op.ord() > crate::order::OrderValue::Finite(0) {
        return Err(Error::Parse {
            pos: 1,
            message: "expected a rational function, found the symbol d".into(),
        });
    }
    Ok(op.coeff_at(0))
}

/// Parses an expression that must be a polynomial in R = Q[x].
pub fn parse_poly(input: &str) -> Result<Poly> {
    let f = parse_ratfunc(input)?;
    f.as_poly().cloned().ok_or_else(|| Error::Parse {
        pos: 1,
        message: "expected a polynomial (no x-denominator)".into(),
    })
}

fn parse_expr(lx: &mut Lexer) -> Result<OreOp> {
    let mut acc = if lx.eat(&Token::Minus) {
        -parse_term(lx)?
    } else {
        parse_term(lx)?
    };
    loop {
        if lx.eat(&Token::Plus) {
            acc = acc + parse_term(lx)?;
        } else if lx.eat(&Token::Minus) {
            acc = acc - parse_term(lx)?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_term(lx: &mut Lexer) -> Result<OreOp> {
    let mut acc = parse_factor(lx)?;
    loop {
        if lx.eat(&Token::Star) {
            acc = acc * parse_factor(lx)?;
        } else if lx.eat(&Token::Slash) {
            let pos = lx.pos();
            let divisor = parse_factor(lx)?;
            if divisor.is_zero() {
                return Err(Error::Parse {
                    pos,
                    message: "division by zero".into(),
                });
            }
            if divisor.ord() > crate::order::OrderValue::Finite(0) {
                return Err(Error::Parse {
                    pos,
                    message: "division is only defined by order-zero operators".into(),
                });
            }
            let inv = divisor.coeff_at(0).recip().expect("nonzero function");
            acc = acc * OreOp::from_ratfunc(inv);
        } else {
            return Ok(acc);
        }
    }
}

fn parse_factor(lx: &mut Lexer) -> Result<OreOp> {
    let base = parse_base(lx)?;
    if lx.eat(&Token::Caret) {
        let pos = lx.pos();
        match lx.next() {
            Some(Token::Int(k)) => {
                let exp = u32::try_from(&k).map_err(|_| Error::Parse {
                    pos,
                    message: "exponent too large".into(),
                })?;
                Ok(base.pow(exp))
            }
            _ => Err(Error::Parse {
                pos,
                message: "expected a natural number after '^'".into(),
            }),
        }
    } else {
        Ok(base)
    }
}

fn parse_base(lx: &mut Lexer) -> Result<OreOp> {
    let pos = lx.pos();
    match lx.next() {
        Some(Token::Int(n)) => Ok(OreOp::from_ratfunc(RatFunc::from_rational(
            Rational::from_integer(n),
        ))),
        Some(Token::X) => Ok(OreOp::from_ratfunc(RatFunc::x())),
        Some(Token::D) => Ok(OreOp::partial()),
        Some(Token::LParen) => {
            let inner = parse_expr(lx)?;
            if !lx.eat(&Token::RParen) {
                return Err(Error::Parse {
                    pos: lx.pos(),
                    message: "expected ')'".into(),
                });
            }
            Ok(inner)
        }
        Some(tok) => Err(Error::Parse {
            pos,
            message: format!("unexpected token {tok:?}"),
        }),
        None => Err(Error::Parse {
            pos,
            message: "unexpected end of input".into(),
        }),
    }
}

// ---- renderer ----

fn rational_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn x_power(k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    }
}

/// One polynomial term `c * x^k` without a leading sign.
fn poly_term(c: &Rational, k: usize) -> String {
    let c = c.abs();
    if k == 0 {
        rational_str(&c)
    } else if c.is_one() {
        x_power(k)
    } else {
        format!("{}*{}", rational_str(&c), x_power(k))
    }
}

/// Renders a polynomial as a sum of terms in descending powers.
fn poly_string(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for k in (0..p.coeffs().len()).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&poly_term(&c, k));
    }
    out
}

fn is_single_term(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
}

/// True when `p` is exactly `x^k` for some `k >= 0`.
fn is_monic_power(p: &Poly) -> bool {
    is_single_term(p) && p.leading_coeff().is_one()
}

/// Renders a rational function as `(sign, body)`; the body never starts
/// with '-' and always parses back to `|f|`.
fn ratfunc_parts(f: &RatFunc) -> (bool, String) {
    if f.is_zero() {
        return (false, "0".to_string());
    }
    let negative = f.num().leading_sign() < 0;
    let num = if negative { -f.num() } else { f.num().clone() };
    let den = f.den();

    let num_str = if is_single_term(&num) {
        poly_string(&num)
    } else {
        format!("({})", poly_string(&num))
    };
    if den.is_one() {
        return (negative, num_str);
    }
    let den_str = if is_monic_power(den) {
        poly_string(den)
    } else {
        format!("({})", poly_string(den))
    };
    (negative, format!("{num_str}/{den_str}"))
}

/// Canonical string form of an operator: descending powers of `d`,
/// reduced coefficients. `parse_operator` inverts it exactly.
pub fn render_operator(op: &OreOp) -> String {
    if op.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for k in (0..op.coeffs().len()).rev() {
        let c = op.coeff_at(k as i64);
        if c.is_zero() {
            continue;
        }
        let (negative, body) = ratfunc_parts(&c);
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let d_part = match k {
            0 => String::new(),
            1 => "d".to_string(),
            _ => format!("d^{k}"),
        };
        if k == 0 {
            out.push_str(&body);
        } else if body == "1" {
            out.push_str(&d_part);
        } else {
            out.push_str(&body);
            out.push('*');
            out.push_str(&d_part);
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly_string(self))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (negative, body) = ratfunc_parts(self);
        if negative {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

impl fmt::Display for OreOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_operator(self))
    }
}

impl fmt::Display for OreMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_oreop;
    use proptest::prelude::*;

    #[test]
    fn parser_applies_commutation() {
        // d*x = x*d + 1
        let op = parse_operator("d*x").unwrap();
        assert_eq!(op, OreOp::new(vec![RatFunc::one(), RatFunc::x()]));
    }

    #[test]
    fn direct_form_with_rational_coefficient() {
        let op = parse_operator("x*d^2 + (1/2)*d").unwrap();
        assert_eq!(op.coeff_at(2), RatFunc::x());
        assert_eq!(
            op.coeff_at(1),
            RatFunc::from_rational(crate::rational::rat(1, 2))
        );
        assert_eq!(op.coeff_at(0), RatFunc::zero());
    }

    #[test]
    fn parenthesized_product_squares() {
        // (x*d)^2 = x^2*d^2 + x*d
        let op = parse_operator("(x*d)^2").unwrap();
        let x2 = &RatFunc::x() * &RatFunc::x();
        assert_eq!(op, OreOp::new(vec![RatFunc::zero(), RatFunc::x(), x2]));
    }

    #[test]
    fn division_by_polynomial_is_right_inverse() {
        let op = parse_operator("d/x").unwrap();
        // d * (1/x) = (1/x) d - 1/x^2
        let inv_x = RatFunc::x().recip().unwrap();
        let minus_inv_x2 = -&(&inv_x * &inv_x);
        assert_eq!(op, OreOp::new(vec![minus_inv_x2, inv_x]));
    }

    #[test]
    fn division_by_operator_is_rejected() {
        let err = parse_operator("x/d").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = parse_operator("1/0").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_operator("d + ").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 5),
            other => panic!("unexpected error {other:?}"),
        }
        match parse_operator("d ? 1").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn renders_canonical_forms() {
        let op = OreOp::new(vec![RatFunc::one(), RatFunc::x()]);
        assert_eq!(render_operator(&op), "x*d + 1");
        assert_eq!(render_operator(&OreOp::zero()), "0");
        assert_eq!(
            render_operator(&-OreOp::partial()),
            "-d"
        );
    }

    #[test]
    fn renders_fractions_safely() {
        let f = RatFunc::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[-1, 1])).unwrap();
        let op = OreOp::monomial(f, 2);
        let rendered = render_operator(&op);
        assert_eq!(rendered, "(x + 1)/(x - 1)*d^2");
        assert_eq!(parse_operator(&rendered).unwrap(), op);
    }

    #[test]
    fn poly_display_roundtrips() {
        let p = Poly::new(vec![
            crate::rational::rat(-1, 2),
            crate::rational::rat(0, 1),
            crate::rational::rat(3, 1),
        ]);
        assert_eq!(p.to_string(), "3*x^2 - 1/2");
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn parse_render_roundtrip(op in arb_oreop(3, 3)) {
            let rendered = render_operator(&op);
            let parsed = parse_operator(&rendered).unwrap();
            prop_assert_eq!(parsed, op);
        }
    }
}
