//! Text format for polynomials.
//!
//! ```text
//! expr     := term (('+'|'-') term)* ;
//! term     := ('-')? factor ('*' factor)* ;
//! factor   := base ('^' nat)? ;
//! base     := rational | var | '(' expr ')' ;
//! rational := int ('/' nat_nonzero)? ;
//! ```
//!
//! Printing emits terms in descending degrevlex order with coefficients in
//! lowest terms, and `parse(print(p)) == p`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{line}:{col}: unknown variable `{name}`")]
    UnknownVariable {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("invalid variable table: {0}")]
    BadVarTable(String),
}

/// Ordered variable names; position is the variable index and the
/// precedence in the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, ParseError> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim();
            if !valid_name(n) {
                return Err(ParseError::BadVarTable(format!(
                    "`{n}` is not an identifier"
                )));
            }
            if out.iter().any(|x| x == n) {
                return Err(ParseError::BadVarTable(format!("duplicate variable `{n}`")));
            }
            out.push(n.to_string());
        }
        Ok(VarTable { names: out })
    }

    /// `x1, x2, …` for debug printing.
    pub fn default_names(n: usize) -> VarTable {
        VarTable {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
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
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l, cl) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line: l,
                col: cl,
            });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    msg: "implicit multiplication is not allowed; use `*`".into(),
                });
            }
            out.push(Spanned {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l,
                col: cl,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l,
                col: cl,
            });
            continue;
        }
        return Err(ParseError::Syntax {
            line: l,
            col: cl,
            msg: format!("unexpected character `{c}`"),
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

/// Variables in order of first occurrence in `text`.
pub fn infer_vars(text: &str) -> Result<VarTable, ParseError> {
    let mut names: Vec<String> = Vec::new();
    for t in lex(text)? {
        if let Tok::Ident(n) = t.tok {
            if !names.contains(&n) {
                names.push(n);
            }
        }
    }
    Ok(VarTable { names })
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a VarTable,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(if negate { -acc } else { acc })
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = match self.peek().clone() {
                Tok::Int(n) => {
                    self.bump();
                    n
                }
                _ => return Err(self.error("exponent must be a non-negative integer literal")),
            };
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let t = self.toks[self.pos].clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                let mut value = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let d = match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            self.bump();
                            d
                        }
                        _ => return Err(self.error("expected a nonzero integer denominator")),
                    };
                    value /= Rational::from_integer(d);
                }
                Ok(Polynomial::constant(self.nvars(), value))
            }
            Tok::Ident(name) => match self.vars.index_of(&name) {
                Some(i) => {
                    self.bump();
                    Ok(Polynomial::var(self.nvars(), i))
                }
                None => Err(ParseError::UnknownVariable {
                    line: t.line,
                    col: t.col,
                    name,
                }),
            },
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Tok::End => Err(self.error("unexpected end of input")),
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}

/// Parses `text` over the given variables.
pub fn parse(text: &str, vars: &VarTable) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, vars };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("unexpected token after expression"));
    }
    Ok(e)
}

/// Parses with variables collected in first-occurrence order.
pub fn parse_infer(text: &str) -> Result<(Polynomial, VarTable), ParseError> {
    let vars = infer_vars(text)?;
    let p = parse(text, &vars)?;
    Ok((p, vars))
}

pub fn print(p: &Polynomial, vars: &VarTable) -> Result<String, crate::error::Error> {
    if p.nvars() != vars.len() {
        return Err(crate::error::Error::ArityMismatch(p.nvars(), vars.len()));
    }
    Ok(print_with(p, vars))
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(m: &Monomial, vars: &VarTable) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.names[i].clone()),
            _ => parts.push(format!("{}^{}", vars.names[i], e)),
        }
    }
    parts.join("*")
}

pub(crate) fn print_with(p: &Polynomial, vars: &VarTable) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&fmt_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&fmt_monomial(m, vars));
        } else {
            out.push_str(&fmt_rational(&abs));
            out.push('*');
            out.push_str(&fmt_monomial(m, vars));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};
    use proptest::prelude::*;

    fn xyz() -> VarTable {
        VarTable::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn whitney_umbrella() {
        let p = parse("x^2 - z*y^2", &xyz()).unwrap();
        let expected = Polynomial::from_int_terms(3, &[(1, &[2, 0, 0]), (-1, &[0, 2, 1])]);
        assert_eq!(p, expected);
    }

    #[test]
    fn smooth_surface_with_inferred_vars() {
        let (p, vars) = parse_infer("x^2*y - x - z").unwrap();
        assert_eq!(vars.names(), &["x", "y", "z"]);
        let expected =
            Polynomial::from_int_terms(3, &[(1, &[2, 1, 0]), (-1, &[1, 0, 0]), (-1, &[0, 0, 1])]);
        assert_eq!(p, expected);
    }

    #[test]
    fn cancellation_to_zero() {
        let (p, _) = parse_infer("-(x - x)").unwrap();
        assert!(p.is_zero());
        assert_eq!(print(&p, &VarTable::new(&["x"]).unwrap()).unwrap(), "0");
    }

    #[test]
    fn precedence_and_rationals() {
        let v = xyz();
        // a term may open with its own minus, but only one
        let p = parse("3/2*x^2 + -1", &v).unwrap();
        assert_eq!(p.coefficient(&Monomial::one(3)), rat(-1));
        assert!(parse("x + - -1", &v).is_err());
        let p = parse("3/2*x^2 - 1/4", &v).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 0, 0])), ratio(3, 2));
        assert_eq!(p.coefficient(&Monomial::one(3)), ratio(-1, 4));
        let q = parse("-x^2", &v).unwrap();
        assert_eq!(q.coefficient(&Monomial::new(vec![2, 0, 0])), rat(-1));
        let r = parse("(x + y)^2 * 2", &v).unwrap();
        assert_eq!(print(&r, &v).unwrap(), "2*x^2 + 4*x*y + 2*y^2");
    }

    #[test]
    fn errors_carry_positions() {
        let v = xyz();
        match parse("x +\n  2x", &v) {
            Err(ParseError::Syntax { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse("x + w", &v) {
            Err(ParseError::UnknownVariable {
                line: 1,
                col: 5,
                name,
            }) => assert_eq!(name, "w"),
            other => panic!("{other:?}"),
        }
        assert!(parse("x^-1", &v).is_err());
        assert!(parse("x^(1+1)", &v).is_err());
        assert!(parse("1/0", &v).is_err());
        assert!(parse("(x + y", &v).is_err());
        assert!(parse("", &v).is_err());
        assert!(VarTable::new(&["x", "x"]).is_err());
        assert!(VarTable::new(&["1x"]).is_err());
    }

    #[test]
    fn canonical_print() {
        let v = VarTable::new(&["x", "y"]).unwrap();
        let p = parse("x^2 - y^2", &v).unwrap();
        assert_eq!(print(&p, &v).unwrap(), "x^2 - y^2");
        let q = parse("-y + 1/3 - 2*x*y", &v).unwrap();
        assert_eq!(print(&q, &v).unwrap(), "-2*x*y - y + 1/3");
        assert!(print(&q, &xyz()).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let term = (prop::collection::vec(0u32..4, 3), -20i64..20, 1i64..6);
        prop::collection::vec(term, 0..8).prop_map(|ts| {
            Polynomial::from_terms(
                3,
                ts.into_iter()
                    .map(|(e, n, d)| (Monomial::new(e), ratio(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            let v = xyz();
            let s = print(&p, &v).unwrap();
            let back = parse(&s, &v).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(print(&back, &v).unwrap(), s);
        }
    }
}
