//! Text input for noncommutative polynomials, scalars and 2x2 matrices.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ['^' natural]
//! atom   := integer | ident | 'x' | 'y' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Juxtaposition is rejected, `^` applies to a generator or a scalar, and `/`
//! divides by a nonzero scalar. Identifiers may carry trailing primes
//! (`alpha'`), and the Greek letters α β γ δ λ μ stand for their names.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::assume::Assumptions;
use crate::error::{Error, Result};
use crate::freealg::{Gen, Mat2, NCPoly, Word};
use crate::scalars::{adjoin_sqrt, declare_param, lookup_param, Scalar};

/// How unknown identifiers are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Symbols {
    /// Unknown identifiers become new parameters.
    #[default]
    Declare,
    /// Only already registered parameters are accepted.
    Strict,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    End,
}

fn greek(c: char) -> Option<&'static str> {
    Some(match c {
        'α' => "alpha",
        'β' => "beta",
        'γ' => "gamma",
        'δ' => "delta",
        'λ' => "lambda",
        'μ' => "mu",
        _ => return None,
    })
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' || greek(c).is_some() {
            let mut s = String::new();
            if let Some(g) = greek(c) {
                s.push_str(g);
                it.next();
            } else {
                while let Some(&(_, d)) = it.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    it.next();
                }
            }
            while let Some(&(_, '\'')) = it.peek() {
                s.push('\'');
                it.next();
            }
            if s.len() > 1 && s.chars().all(|c| c == 'x' || c == 'y') {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("juxtaposition `{s}` is not allowed; use `*`"),
                });
            }
            out.push((pos, Tok::Ident(s)));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            _ => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        it.next();
        out.push((pos, t));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    symbols: Symbols,
}

impl Parser {
    fn new(text: &str, symbols: Symbols) -> Result<Parser> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            symbols,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {what}"))
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            Tok::Ident(_) | Tok::Int(_) | Tok::LParen => {
                self.syntax("juxtaposition is not allowed; use `*`")
            }
            _ => self.syntax("unexpected trailing input"),
        }
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = self.term()?;
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            let pos = self.pos();
            self.bump();
            let rhs = self.term()?;
            let rhs = if neg { rhs.neg() } else { rhs };
            acc = add_checked(&acc, &rhs, pos)?;
        }
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs);
                }
                Tok::Slash => {
                    let pos = self.pos();
                    self.bump();
                    let rhs = self.factor()?;
                    let d = as_scalar(&rhs).ok_or(Error::Syntax {
                        pos,
                        msg: "division by a non-scalar".into(),
                    })?;
                    let inv = d.checked_inv()?;
                    acc = acc.scale(&inv);
                }
                Tok::Ident(_) | Tok::Int(_) | Tok::LParen => {
                    return self.syntax("juxtaposition is not allowed; use `*`")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<NCPoly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let (base, is_gen) = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let e = match self.bump() {
            Tok::Int(n) => n,
            _ => {
                return Err(Error::Syntax {
                    pos,
                    msg: "exponent must be an integer".into(),
                })
            }
        };
        let e: u32 = e.try_into().map_err(|_| Error::Syntax {
            pos,
            msg: "exponent too large".into(),
        })?;
        if is_gen {
            if neg {
                return Err(Error::Syntax {
                    pos,
                    msg: "negative power of a generator".into(),
                });
            }
            if e as usize > crate::freealg::MAX_DEGREE {
                return Err(Error::Syntax {
                    pos,
                    msg: "exponent too large".into(),
                });
            }
            let mut out = NCPoly::constant(Scalar::one());
            for _ in 0..e {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        let Some(s) = as_scalar(&base) else {
            return Err(Error::Syntax {
                pos,
                msg: "`^` applies only to a generator or a scalar".into(),
            });
        };
        let e = i64::from(e);
        if neg && s.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(NCPoly::constant(s.pow(if neg { -e } else { e })))
    }

    /// Returns the value and whether it is a bare generator.
    fn atom(&mut self) -> Result<(NCPoly, bool)> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok((
                NCPoly::constant(Scalar::from_rational(BigRational::from_integer(n))),
                false,
            )),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok((inner, false))
            }
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok((NCPoly::gen(Gen::X), true)),
                "y" => Ok((NCPoly::gen(Gen::Y), true)),
                "sqrt" => {
                    self.expect(Tok::LParen, "`(` after sqrt")?;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    let r = as_scalar(&inner).ok_or(Error::Syntax {
                        pos,
                        msg: "sqrt of a non-scalar".into(),
                    })?;
                    Ok((NCPoly::constant(adjoin_sqrt(&r)?), false))
                }
                _ => {
                    if *self.peek() == Tok::LParen {
                        return Err(Error::UnknownSymbol(name));
                    }
                    let v = match self.symbols {
                        Symbols::Declare => declare_param(&name).map_err(|e| match e {
                            Error::Syntax { msg, .. } => Error::Syntax { pos, msg },
                            other => other,
                        })?,
                        Symbols::Strict => lookup_param(&name).ok_or(Error::UnknownSymbol(name))?,
                    };
                    Ok((NCPoly::constant(Scalar::var(v)), false))
                }
            },
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            t => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
        }
    }
}

fn as_scalar(p: &NCPoly) -> Option<Scalar> {
    (p.degree() == 0).then(|| p.coeff(&Word::empty()))
}

/// Sum where a zero summand adopts the other side's degree.
fn add_checked(a: &NCPoly, b: &NCPoly, pos: usize) -> Result<NCPoly> {
    if a.degree() == b.degree() {
        return Ok(a.add(b));
    }
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    Err(Error::MixedDegree {
        pos,
        left: a.degree(),
        right: b.degree(),
    })
}

/// Parse a homogeneous polynomial, declaring new parameter names as needed.
pub fn parse_ncpoly(text: &str) -> Result<NCPoly> {
    parse_ncpoly_with(text, Symbols::Declare)
}

pub fn parse_ncpoly_with(text: &str, symbols: Symbols) -> Result<NCPoly> {
    let mut p = Parser::new(text, symbols)?;
    let out = p.expr()?;
    p.finish()?;
    Ok(out)
}

/// Parse a polynomial and require a given degree.
pub fn parse_ncpoly_of_degree(text: &str, degree: usize) -> Result<NCPoly> {
    let p = parse_ncpoly(text)?;
    if p.is_zero() {
        return Ok(NCPoly::zero(degree));
    }
    if p.degree() != degree {
        return Err(Error::WrongDegree {
            expected: degree,
            found: p.degree(),
        });
    }
    Ok(p)
}

/// Parse a scalar expression (no generators).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    parse_scalar_with(text, Symbols::Declare)
}

pub fn parse_scalar_with(text: &str, symbols: Symbols) -> Result<Scalar> {
    let p = parse_ncpoly_with(text, symbols)?;
    as_scalar(&p).ok_or(Error::NonScalarEntry(0))
}

/// Parse `[[e11,e12],[e21,e22]]`.
pub fn parse_matrix(text: &str) -> Result<Mat2> {
    parse_matrix_with(text, Symbols::Declare)
}

pub fn parse_matrix_with(text: &str, symbols: Symbols) -> Result<Mat2> {
    let mut p = Parser::new(text, symbols)?;
    let mut entries = Vec::with_capacity(4);
    p.expect(Tok::LBrack, "`[`")?;
    for row in 0..2 {
        if row == 1 {
            p.expect(Tok::Comma, "`,` between rows")?;
        }
        p.expect(Tok::LBrack, "`[`")?;
        for col in 0..2 {
            if col == 1 {
                p.expect(Tok::Comma, "`,` between entries")?;
            }
            let e = p.expr()?;
            let idx = row * 2 + col;
            let s = if e.is_zero() {
                Scalar::zero()
            } else {
                as_scalar(&e).ok_or(Error::NonScalarEntry(idx))?
            };
            entries.push(s);
        }
        p.expect(Tok::RBrack, "`]`")?;
    }
    p.expect(Tok::RBrack, "`]`")?;
    p.finish()?;
    let mut it = entries.into_iter();
    let mut next = || it.next().expect("four entries");
    Ok(Mat2::new(next(), next(), next(), next()))
}

/// Add one clause to `asm`: `lhs != rhs` asserts the difference is nonzero,
/// `name = value` substitutes a parameter.
pub fn parse_assumption(text: &str, asm: &Assumptions) -> Result<Assumptions> {
    let t = text.trim();
    if let Some((l, r)) = t.split_once("!=").or_else(|| t.split_once('≠')) {
        let d = &parse_scalar(l)? - &parse_scalar(r)?;
        return asm
            .with_nonzero(&d)
            .ok_or_else(|| Error::AssumptionViolated(t.to_string()));
    }
    if let Some((l, r)) = t.split_once('=') {
        let name = l.trim();
        let v = match parse_scalar(name)?.symbols().as_slice() {
            [v] if parse_scalar(name)? == Scalar::var(*v) => *v,
            _ => {
                return Err(Error::Syntax {
                    pos: 0,
                    msg: format!("left side of `{t}` must be a parameter name"),
                })
            }
        };
        return asm
            .with_sub(v, &parse_scalar(r)?)
            .ok_or_else(|| Error::AssumptionViolated(t.to_string()));
    }
    Err(Error::Syntax {
        pos: 0,
        msg: format!("expected `a != b` or `name = value`, found `{t}`"),
    })
}

/// Fold [`parse_assumption`] over clauses.
pub fn parse_assumptions<S: AsRef<str>>(clauses: &[S]) -> Result<Assumptions> {
    clauses
        .iter()
        .try_fold(Assumptions::new(), |a, c| parse_assumption(c.as_ref(), &a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn assumption_clauses() {
        let a = Scalar::param("a");
        let asm = parse_assumptions(&["a != 0", "b = 2*a"]).unwrap();
        assert!(!asm.is_zero(&a).unwrap());
        assert!(asm.is_zero(&(&Scalar::param("b") - &(&s(2) * &a))).unwrap());
        assert!(matches!(
            parse_assumptions(&["a = 0", "a != 0"]),
            Err(Error::AssumptionViolated(_))
        ));
        assert!(parse_assumptions(&["a+1 = 2"]).is_err());
        assert!(parse_assumptions(&["a > 0"]).is_err());
    }

    #[test]
    fn table_relation_parses() {
        let g = parse_ncpoly("x^2*y - a*y*x^2 + (a-1)*y^3").unwrap();
        let a = Scalar::param("a");
        let want = NCPoly::from_words(3, &[(s(1), "xxy"), (-&a, "yxx"), (&a - &s(1), "yyy")]);
        assert_eq!(g, want);
        let c = parse_ncpoly("x*y - y*x").unwrap();
        assert_eq!(c, NCPoly::from_words(2, &[(s(1), "xy"), (s(-1), "yx")]));
    }

    #[test]
    fn guards() {
        assert!(matches!(
            parse_ncpoly("x^2 + y^3"),
            Err(Error::MixedDegree { .. })
        ));
        assert!(matches!(parse_ncpoly("x y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_ncpoly("(x*y)^2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_ncpoly("x*y/x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_ncpoly("x/0"), Err(Error::DivisionByZero)));
        assert!(matches!(
            parse_ncpoly_with("zeta_unknown*x", Symbols::Strict),
            Err(Error::UnknownSymbol(_))
        ));
        assert!(matches!(
            parse_ncpoly("foo(x)"),
            Err(Error::UnknownSymbol(_))
        ));
        // A scalar zero may be added to anything.
        assert_eq!(parse_ncpoly("x*y + 0").unwrap().degree(), 2);
    }

    #[test]
    fn precedence_and_scalars() {
        let p = parse_ncpoly("-x^2*y + 2/3*(alpha+1)^2*y^3").unwrap();
        let a = Scalar::param("alpha");
        let c = &Scalar::frac(2, 3) * &(&(&a + &s(1)) * &(&a + &s(1)));
        assert_eq!(p, NCPoly::from_words(3, &[(s(-1), "xxy"), (c, "yyy")]));
        let q = parse_ncpoly("α*x - alpha'*y").unwrap();
        assert_eq!(q.coeff(&Word::parse("x").unwrap()), a);
        assert_eq!(
            q.coeff(&Word::parse("y").unwrap()),
            -Scalar::param("alpha'")
        );
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("[[1,0],[0,a]]").unwrap();
        assert_eq!(m, Mat2::diag(s(1), Scalar::param("a")));
        assert_eq!(parse_matrix("[[0,1],[1,0]]").unwrap(), Mat2::swap());
        assert_eq!(
            parse_matrix("[[1,1],[0,1]]").unwrap(),
            Mat2::ints(1, 1, 0, 1)
        );
        assert_eq!(parse_matrix("[[1,x],[0,1]]"), Err(Error::NonScalarEntry(1)));
        assert!(matches!(
            parse_matrix("[[1,0],[0]]"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn sqrt_entries() {
        let m = parse_matrix("[[1,0],[0,sqrt(lambda)]]").unwrap();
        let l = Scalar::param("lambda");
        assert!((&(&m.d * &m.d) - &l).is_zero());
    }

    #[test]
    fn display_round_trip() {
        let a = Scalar::param("alpha");
        let g = NCPoly::from_words(
            3,
            &[
                (s(1), "xxy"),
                (a.inv(), "yxy"),
                (&(&a - &s(1)) / &(&a + &s(2)), "yyy"),
            ],
        );
        assert_eq!(parse_ncpoly(&g.to_string()).unwrap(), g);
    }
}
