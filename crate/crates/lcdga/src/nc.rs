//! Free noncommutative polynomials over the Laurent coefficient ring.
//! Coefficients commute with generators.

use crate::error::{Error, Result};
use crate::laurent::{Laurent, Monomial};
use crate::symbol::{Gen, Var};
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub type Word = Vec<Gen>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Laurent>,
}

impl NcPoly {
    pub fn zero() -> NcPoly {
        NcPoly::default()
    }

    pub fn one() -> NcPoly {
        NcPoly::scalar(Laurent::one())
    }

    pub fn scalar(c: Laurent) -> NcPoly {
        NcPoly::term(c, Vec::new())
    }

    pub fn gen(g: Gen) -> NcPoly {
        NcPoly::term(Laurent::one(), vec![g])
    }

    pub fn term(c: Laurent, w: Word) -> NcPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Laurent)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[Gen]) -> Laurent {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The coefficient-ring summand (empty word).
    pub fn constant(&self) -> Laurent {
        self.coefficient(&[])
    }

    /// `Some(c)` when the polynomial has only an empty-word term.
    pub fn as_scalar(&self) -> Option<Laurent> {
        match self.terms.len() {
            0 => Some(Laurent::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, c: Laurent, w: Word) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Laurent) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        let mut out = NcPoly::zero();
        for (w, k) in &self.terms {
            out.add_term(k * c, w.clone());
        }
        out
    }

    pub fn generators(&self) -> Vec<Gen> {
        let mut v: Vec<Gen> = self.terms.keys().flatten().copied().collect();
        v.sort();
        v.dedup();
        v
    }

    /// Algebra-map image: generators through `gens` (missing generators are an
    /// error unless `keep_missing`), coefficient variables through `vars`.
    pub fn substitute_with(&self, gens: &HashMap<Gen, NcPoly>, vars: &HashMap<Var, Laurent>, keep_missing: bool) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        let mut cache: HashMap<Word, NcPoly> = HashMap::new();
        for (w, c) in &self.terms {
            let coeff = c.substitute(vars);
            let img = word_image(w, gens, keep_missing, &mut cache)?;
            out += &img.scale(&coeff);
        }
        Ok(out)
    }

    /// Substitution of generators only; generators without an image stay fixed.
    pub fn substitute(&self, gens: &HashMap<Gen, NcPoly>) -> NcPoly {
        self.substitute_with(gens, &HashMap::new(), true).expect("keep_missing never fails")
    }

    /// Strict substitution: every generator must have an image.
    pub fn substitute_strict(&self, gens: &HashMap<Gen, NcPoly>) -> Result<NcPoly> {
        self.substitute_with(gens, &HashMap::new(), false)
    }

    pub fn map_coefficients(&self, f: impl Fn(&Laurent) -> Laurent) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(f(c), w.clone());
        }
        out
    }

    /// Commutative evaluation: every generator is sent to a ring element.
    pub fn evaluate(&self, values: &HashMap<Gen, Laurent>) -> Result<Laurent> {
        let mut out = Laurent::zero();
        for (w, c) in &self.terms {
            let mut acc = c.clone();
            for g in w {
                let v = values.get(g).ok_or_else(|| Error::MissingImage(g.name()))?;
                if v.is_zero() {
                    acc = Laurent::zero();
                    break;
                }
                acc = &acc * v;
            }
            out += &acc;
        }
        Ok(out)
    }

    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut words: Vec<(&Vec<Gen>, &Laurent)> = self.terms.iter().collect();
        words.sort_by_cached_key(|(w, _)| w.iter().map(|g| crate::symbol::natural_key(&g.name())).collect::<Vec<_>>());
        let mut parts = Vec::new();
        for (w, c) in words {
            let word: Vec<String> = w.iter().map(|g| g.name()).collect();
            let word = word.join("*");
            let coeff = c.pretty();
            let s = if w.is_empty() {
                coeff
            } else if c.is_one() {
                word
            } else if c.len() == 1 {
                format!("{coeff}*{word}")
            } else {
                format!("({coeff})*{word}")
            };
            parts.push(s);
        }
        let mut out = String::new();
        for (i, t) in parts.into_iter().enumerate() {
            match (i, t.strip_prefix('-')) {
                (0, _) => out.push_str(&t),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(&t);
                }
            }
        }
        out
    }
}

fn word_image(w: &[Gen], gens: &HashMap<Gen, NcPoly>, keep_missing: bool, cache: &mut HashMap<Word, NcPoly>) -> Result<NcPoly> {
    if w.is_empty() {
        return Ok(NcPoly::one());
    }
    if let Some(p) = cache.get(w) {
        return Ok(p.clone());
    }
    let last = w[w.len() - 1];
    let head = word_image(&w[..w.len() - 1], gens, keep_missing, cache)?;
    let img = match gens.get(&last) {
        Some(p) => p.clone(),
        None if keep_missing => NcPoly::gen(last),
        None => return Err(Error::MissingImage(last.name())),
    };
    let p = &head * &img;
    if w.len() < 8 {
        cache.insert(w.to_vec(), p.clone());
    }
    Ok(p)
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl AddAssign<&NcPoly> for NcPoly {
    fn add_assign(&mut self, rhs: &NcPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(c.clone(), w.clone());
        }
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for NcPoly {
    type Output = NcPoly;
    fn add(mut self, rhs: NcPoly) -> NcPoly {
        self += &rhs;
        self
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        -&self
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(-c, w.clone());
        }
        out
    }
}

impl Sub for NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: NcPoly) -> NcPoly {
        &self - &rhs
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut w = Vec::with_capacity(w1.len() + w2.len());
                w.extend_from_slice(w1);
                w.extend_from_slice(w2);
                out.add_term(c1 * c2, w);
            }
        }
        out
    }
}

impl Mul for NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: NcPoly) -> NcPoly {
        &self * &rhs
    }
}

impl From<Laurent> for NcPoly {
    fn from(c: Laurent) -> NcPoly {
        NcPoly::scalar(c)
    }
}

impl From<Gen> for NcPoly {
    fn from(g: Gen) -> NcPoly {
        NcPoly::gen(g)
    }
}

/// `c·m` as a polynomial.
pub fn monomial_scalar(c: i64, m: Monomial) -> NcPoly {
    NcPoly::scalar(Laurent::term(BigInt::from(c), m))
}

/// Whether a name denotes a DGA generator (`a12`, `c0_1`) rather than a
/// coefficient variable.
pub fn is_generator_name(name: &str) -> bool {
    if let Some(rest) = name.strip_prefix('a') {
        return !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit());
    }
    crate::map::parse_chord(name).is_some()
}

/// Parses expressions such as `a16 - s^-1 - (a15 - s^-1*a10*a13)*a11*s^-1`.
/// Names accepted by [`is_generator_name`] are generators; everything else is
/// a coefficient variable. Products keep the written generator order.
pub fn parse_nc(src: &str) -> Result<NcPoly> {
    let mut p = NcParser { toks: crate::laurent::tokenize(src)?, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(out)
}

struct NcParser {
    toks: Vec<crate::laurent::Tok>,
    pos: usize,
}

impl NcParser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(crate::laurent::Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        let mut negative = false;
        if let Some(c @ ('+' | '-')) = self.peek_op() {
            negative = c == '-';
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            match self.peek_op() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<NcPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek_op() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    let inv = d.as_scalar().and_then(|c| c.unit_inverse()).ok_or_else(|| Error::Parse(format!("division by non-unit {d}")))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<NcPoly> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek_op() == Some('-');
        if negative {
            self.pos += 1;
        }
        let e = match self.toks.get(self.pos) {
            Some(crate::laurent::Tok::Int(n)) => i32::try_from(n.clone()).map_err(|_| Error::Parse("exponent too large".into()))?,
            _ => return Err(Error::Parse("expected exponent".into())),
        };
        self.pos += 1;
        let e = if negative { -e } else { e };
        if let Some(c) = base.as_scalar() {
            return c.powi(e).map(NcPoly::scalar).ok_or_else(|| Error::Parse(format!("negative power of non-unit {c}")));
        }
        if e < 0 {
            return Err(Error::Parse(format!("negative power of {base}")));
        }
        Ok((0..e).fold(NcPoly::one(), |acc, _| &acc * &base))
    }

    fn atom(&mut self) -> Result<NcPoly> {
        use crate::laurent::Tok;
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Int(n)) => Ok(NcPoly::scalar(Laurent::constant(n))),
            Some(Tok::Ident(name)) if is_generator_name(&name) => Ok(NcPoly::gen(Gen::new(&name))),
            Some(Tok::Ident(name)) => Ok(NcPoly::scalar(Laurent::var(Var::new(&name)))),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("expected `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Op('-')) => Ok(-self.factor()?),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_commute_with_generators() {
        let s = Var::new("nc_s");
        let a = NcPoly::gen(Gen::new("nc_a")).scale(&Laurent::var(s));
        let b = NcPoly::gen(Gen::new("nc_b")).scale(&Laurent::signed_var(1, s, -1));
        let p = &a * &b;
        assert_eq!(p, NcPoly::term(Laurent::one(), vec![Gen::new("nc_a"), Gen::new("nc_b")]));
    }

    #[test]
    fn parses_noncommutative_expressions() {
        let p = parse_nc("a15 - s^-1*a10*a13").unwrap();
        let s = Laurent::var(Var::new("s"));
        let mut q = NcPoly::gen(Gen::new("a15"));
        q.add_term(-s.unit_inverse().unwrap(), vec![Gen::new("a10"), Gen::new("a13")]);
        assert_eq!(p, q);
        assert_ne!(parse_nc("a10*a13").unwrap(), parse_nc("a13*a10").unwrap());
        assert_eq!(parse_nc("2*a1/t1 - a1*t1^-1").unwrap(), parse_nc("t1^-1*a1").unwrap());
        assert!(parse_nc("1/a1").is_err());
    }

    #[test]
    fn substitution_is_an_algebra_map() {
        let a = Gen::new("nc_x");
        let b = Gen::new("nc_y");
        let mut m = HashMap::new();
        m.insert(a, &NcPoly::gen(b) + &NcPoly::one());
        let p = &NcPoly::gen(a) * &NcPoly::gen(a);
        let q = p.substitute(&m);
        let yb = NcPoly::gen(b);
        let expect = &(&(&yb * &yb) + &yb.scale(&Laurent::constant(2))) + &NcPoly::one();
        assert_eq!(q, expect);
        assert!(p.substitute_strict(&HashMap::new()).is_err());
    }
}
