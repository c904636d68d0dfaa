//! Text and JSON forms of polynomials.
//!
//! Two text renderings are emitted:
//!
//! * canonical: every term as `(re+imi)*z^a*zbar^b`, all exponents written
//!   out, highest graded-lex term first, joined by `" + "`; the zero
//!   polynomial is `0`. Parsing it back yields the identical value.
//! * pretty: real coefficients written without the `+0i`, unit exponents and
//!   zero exponents dropped, e.g. `(4/5)*x^2 + (-4/5)*y^2 + (4/5)`.
//!
//! The parser accepts both, plus ordinary expressions: `+ - * / ^`,
//! parentheses, integer and `p/q` literals, an `i` suffix or standalone `i`
//! for the imaginary unit, and the variables `z`, `zbar`, `x`, `y`,
//! `x1..xn`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{parse_rational, GaussRat};
use crate::poly::{Monomial, PolyRealN, PolyZZbar, SparsePoly, Variables};

pub fn to_canonical<V: Variables>(p: &SparsePoly<V>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.terms()
        .rev()
        .map(|(m, c)| {
            let mut s = format!("({})", c.to_canonical_string());
            for (i, e) in m.exps().iter().enumerate() {
                s.push_str(&format!("*{}^{}", V::var_name(p.dim(), i), e));
            }
            s
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn to_pretty<V: Variables>(p: &SparsePoly<V>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.terms()
        .rev()
        .map(|(m, c)| {
            let mut s = format!("({c})");
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("*{}", V::var_name(p.dim(), i))),
                    _ => s.push_str(&format!("*{}^{}", V::var_name(p.dim(), i), e)),
                }
            }
            s
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Parses a polynomial in `z, zbar`; `x` and `y` are accepted and rewritten.
pub fn parse_zzbar(src: &str) -> Result<PolyZZbar> {
    let half = GaussRat::ratio(1, 2);
    Parser::new(src, 2, |name| match name {
        "z" => Some(PolyZZbar::z()),
        "zbar" => Some(PolyZZbar::zbar()),
        "x" => Some((PolyZZbar::z() + PolyZZbar::zbar()).scale(&half)),
        "y" => Some((PolyZZbar::z() - PolyZZbar::zbar()).scale(&GaussRat::complex(0, 1, -1, 2))),
        _ => None,
    })?
    .parse()
}

/// Parses a polynomial in `dim` real variables. Variables are `x1..xn`;
/// when `dim == 2`, `x`, `y`, `z` and `zbar` are accepted as well.
pub fn parse_real(src: &str, dim: usize) -> Result<PolyRealN> {
    if dim == 0 {
        return Err(Error::invalid("polynomial dimension must be positive"));
    }
    Parser::new(src, dim, |name| {
        if dim == 2 {
            let i = GaussRat::i();
            match name {
                "x" => return Some(PolyRealN::x()),
                "y" => return Some(PolyRealN::y()),
                "z" => return Some(PolyRealN::x() + PolyRealN::y().scale(&i)),
                "zbar" => return Some(PolyRealN::x() - PolyRealN::y().scale(&i)),
                _ => {}
            }
        }
        let idx: usize = name.strip_prefix('x')?.parse().ok()?;
        (1..=dim)
            .contains(&idx)
            .then(|| PolyRealN::var(dim, idx - 1))
    })?
    .parse()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num { value: GaussRat },
    Ident(String),
    Op(char),
}

struct Parser<V: Variables, F> {
    src: String,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    dim: usize,
    resolve: F,
    _v: std::marker::PhantomData<V>,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out: Vec<(usize, Tok)> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            // `p/q` is one literal unless it is an exponent (`x^2/4`).
            let after_caret = matches!(out.last(), Some((_, Tok::Op('^'))));
            if !after_caret
                && i + 1 < bytes.len()
                && bytes[i] == b'/'
                && bytes[i + 1].is_ascii_digit()
            {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let lit = &src[start..i];
            let value = parse_rational(lit).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(start, msg),
                other => other,
            })?;
            let imaginary = i < bytes.len()
                && bytes[i] == b'i'
                && !bytes
                    .get(i + 1)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_');
            let value = if imaginary {
                i += 1;
                GaussRat::new(num_traits::Zero::zero(), value)
            } else {
                GaussRat::real(value)
            };
            out.push((start, Tok::Num { value }));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            i += 1;
            out.push((start, Tok::Op(c)));
        } else {
            return Err(Error::parse(start, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

impl<V, F> Parser<V, F>
where
    V: Variables,
    F: Fn(&str) -> Option<SparsePoly<V>>,
{
    fn new(src: &str, dim: usize, resolve: F) -> Result<Self> {
        Ok(Self {
            src: src.to_string(),
            toks: tokenize(src)?,
            pos: 0,
            dim,
            resolve,
            _v: std::marker::PhantomData,
        })
    }

    fn parse(mut self) -> Result<SparsePoly<V>> {
        if self.toks.is_empty() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        let p = self.expr()?;
        if let Some((at, tok)) = self.toks.get(self.pos) {
            return Err(Error::parse(*at, format!("unexpected token {tok:?}")));
        }
        Ok(p)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |(p, _)| *p)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<SparsePoly<V>> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SparsePoly<V>> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            let at = self.here();
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                acc.try_mul(&rhs)
                    .map_err(|e| Error::parse(at, e.to_string()))?
            } else {
                let divisor = constant_value(&rhs)
                    .filter(|c| !num_traits::Zero::is_zero(c))
                    .ok_or_else(|| Error::parse(at, "divisor must be a nonzero constant"))?;
                acc.scale(&divisor.inv().expect("nonzero"))
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SparsePoly<V>> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SparsePoly<V>> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.here();
        let exp = match self.toks.get(self.pos) {
            Some((_, Tok::Num { value })) if value.is_real() && value.re.is_integer() => {
                u32::try_from(value.re.to_integer())
                    .map_err(|_| Error::parse(at, "exponent out of range"))?
            }
            _ => return Err(Error::parse(at, "expected a nonnegative integer exponent")),
        };
        self.pos += 1;
        base.try_pow(exp)
            .map_err(|e| Error::parse(at, e.to_string()))
    }

    fn atom(&mut self) -> Result<SparsePoly<V>> {
        let at = self.here();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(Error::parse(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num { value } => Ok(SparsePoly::constant(self.dim, value)),
            Tok::Ident(name) if name == "i" => Ok(SparsePoly::constant(self.dim, GaussRat::i())),
            Tok::Ident(name) => (self.resolve)(&name)
                .ok_or_else(|| Error::parse(at, format!("unknown variable `{name}`"))),
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::parse(self.here(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(Error::parse(at, format!("unexpected `{c}`"))),
        }
    }
}

fn constant_value<V: Variables>(p: &SparsePoly<V>) -> Option<GaussRat> {
    match p.degree() {
        -1 => Some(num_traits::Zero::zero()),
        0 => Some(p.coeff(&Monomial::one(p.dim()))),
        _ => None,
    }
}

/// One term of the JSON form of a [`PolyZZbar`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZZbarTermJson {
    pub a: u32,
    pub b: u32,
    pub re: String,
    pub im: String,
}

/// One term of the JSON form of a [`PolyRealN`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealTermJson {
    pub alpha: Vec<u32>,
    pub re: String,
    pub im: String,
}

pub fn zzbar_to_json(p: &PolyZZbar) -> Vec<ZZbarTermJson> {
    p.terms()
        .rev()
        .map(|(m, c)| ZZbarTermJson {
            a: m.exps()[0],
            b: m.exps()[1],
            re: c.re.to_string(),
            im: c.im.to_string(),
        })
        .collect()
}

pub fn zzbar_from_json(terms: &[ZZbarTermJson]) -> Result<PolyZZbar> {
    let pairs = terms
        .iter()
        .map(|t| {
            let c = GaussRat::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
            Ok((Monomial::new(vec![t.a, t.b]), c))
        })
        .collect::<Result<Vec<_>>>()?;
    PolyZZbar::from_terms(2, pairs)
}

pub fn real_to_json(p: &PolyRealN) -> Vec<RealTermJson> {
    p.terms()
        .rev()
        .map(|(m, c)| RealTermJson {
            alpha: m.exps().to_vec(),
            re: c.re.to_string(),
            im: c.im.to_string(),
        })
        .collect()
}

pub fn real_from_json(dim: usize, terms: &[RealTermJson]) -> Result<PolyRealN> {
    let pairs = terms
        .iter()
        .map(|t| {
            let c = GaussRat::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
            Ok((Monomial::new(t.alpha.clone()), c))
        })
        .collect::<Result<Vec<_>>>()?;
    PolyRealN::from_terms(dim, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::ratio(n, d)
    }

    #[test]
    fn canonical_form() {
        let p = PolyZZbar::zz(1, 0, q(-3, 8)) + PolyZZbar::zz(0, 1, q(5, 8));
        assert_eq!(
            to_canonical(&p),
            "(-3/8+0i)*z^1*zbar^0 + (5/8+0i)*z^0*zbar^1"
        );
        assert_eq!(parse_zzbar(&to_canonical(&p)).unwrap(), p);
        assert_eq!(to_canonical(&PolyZZbar::zero2()), "0");
    }

    #[test]
    fn pretty_form() {
        let p = PolyZZbar::zz(1, 0, q(3, 5));
        assert_eq!(to_pretty(&p), "(3/5)*z");
        let x2 = parse_real("x^2", 2).unwrap();
        let u = (&x2 - &parse_real("y^2", 2).unwrap()).scale(&q(4, 5))
            + PolyRealN::constant(2, q(4, 5));
        assert_eq!(to_pretty(&u), "(4/5)*x^2 + (-4/5)*y^2 + (4/5)");
        assert_eq!(parse_real(&to_pretty(&u), 2).unwrap(), u);
    }

    #[test]
    fn imaginary_literals() {
        let p = parse_zzbar("(1/2-3/4i)*z").unwrap();
        assert_eq!(p, PolyZZbar::zz(1, 0, GaussRat::complex(1, 2, -3, 4)));
        let p = parse_zzbar("i*zbar").unwrap();
        assert_eq!(p, PolyZZbar::zz(0, 1, GaussRat::i()));
        // an exponent never absorbs a following division
        let p = parse_real("x^2/4", 2).unwrap();
        assert_eq!(
            p,
            PolyRealN::from_terms(2, [(Monomial::new(vec![2, 0]), q(1, 4))]).unwrap()
        );
    }

    #[test]
    fn xy_and_zzbar_syntax_agree() {
        assert_eq!(
            parse_zzbar("x^2 + y^2").unwrap(),
            parse_zzbar("z*zbar").unwrap()
        );
        assert_eq!(
            parse_real("z*zbar", 2).unwrap(),
            parse_real("x^2 + y^2", 2).unwrap()
        );
        let p = parse_real("x1*x3^2 - 2", 3).unwrap();
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(
            parse_zzbar("z + w").unwrap_err(),
            Error::parse(4, "unknown variable `w`")
        );
        assert!(matches!(
            parse_zzbar("z^").unwrap_err(),
            Error::Parse { pos: 2, .. }
        ));
        assert!(matches!(
            parse_zzbar("z / zbar").unwrap_err(),
            Error::Parse { pos: 2, .. }
        ));
        assert!(matches!(
            parse_zzbar("(z").unwrap_err(),
            Error::Parse { pos: 2, .. }
        ));
        assert!(matches!(
            parse_zzbar("z $").unwrap_err(),
            Error::Parse { pos: 2, .. }
        ));
        assert!(matches!(
            parse_zzbar("").unwrap_err(),
            Error::Parse { pos: 0, .. }
        ));
        assert!(parse_real("x4", 3).is_err());
    }

    #[test]
    fn json_form() {
        let p = parse_zzbar("(-3/8)*z + (5/8+1/3i)*zbar^2").unwrap();
        let js = zzbar_to_json(&p);
        assert_eq!(
            js[0],
            ZZbarTermJson {
                a: 0,
                b: 2,
                re: "5/8".into(),
                im: "1/3".into()
            }
        );
        assert_eq!(zzbar_from_json(&js).unwrap(), p);
        let text = serde_json::to_string(&js).unwrap();
        let back: Vec<ZZbarTermJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(zzbar_from_json(&back).unwrap(), p);

        let r = parse_real("x1^2 - 1/2*x2*x3", 3).unwrap();
        assert_eq!(real_from_json(3, &real_to_json(&r)).unwrap(), r);
    }
}
