//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.

use crate::symbol::Var;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A Laurent monomial: variables with nonzero integer exponents, sorted by
/// variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: i32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i32)>) -> Monomial {
        let mut acc: BTreeMap<Var, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0.binary_search_by_key(&v, |p| p.0).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|p| p.0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut pairs: Vec<(String, i32)> = self.0.iter().map(|(v, e)| (v.name(), *e)).collect();
        pairs.sort_by_cached_key(|(n, _)| crate::symbol::natural_key(n));
        let parts: Vec<String> = pairs.into_iter().map(|(n, e)| if e == 1 { n } else { format!("{n}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of the Laurent ring ℤ[v₁^{±1}, …].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Laurent {
        Laurent::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Laurent {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Laurent { terms }
    }

    pub fn var(v: Var) -> Laurent {
        Laurent::term(1, Monomial::var(v, 1))
    }

    /// `±v^e`.
    pub fn signed_var(sign: i32, v: Var, e: i32) -> Laurent {
        Laurent::term(sign, Monomial::var(v, e))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, c: BigInt, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// If the polynomial is `±m` for a monomial `m`, returns the sign and `m`.
    pub fn as_unit(&self) -> Option<(i32, Monomial)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((1, m.clone()))
        } else if (-c).is_one() {
            Some((-1, m.clone()))
        } else {
            None
        }
    }

    /// Inverse of a unit `±m`.
    pub fn unit_inverse(&self) -> Option<Laurent> {
        self.as_unit().map(|(s, m)| Laurent::term(s, m.inv()))
    }

    pub fn scale_monomial(&self, c: &BigInt, m: &Monomial) -> Laurent {
        let mut terms = BTreeMap::new();
        if c.is_zero() {
            return Laurent { terms };
        }
        for (k, v) in &self.terms {
            terms.insert(k.mul(m), v * c);
        }
        Laurent { terms }
    }

    pub fn pow(&self, k: u32) -> Laurent {
        let mut acc = Laurent::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn powi(&self, k: i32) -> Option<Laurent> {
        if k >= 0 {
            Some(self.pow(k as u32))
        } else {
            self.unit_inverse().map(|u| u.pow((-k) as u32))
        }
    }

    /// Ring substitution of variables by units (or arbitrary polynomials when
    /// every substituted exponent is nonnegative).
    pub fn substitute(&self, map: &HashMap<Var, Laurent>) -> Laurent {
        if map.is_empty() || !self.terms.keys().any(|m| m.vars().any(|v| map.contains_key(&v))) {
            return self.clone();
        }
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            let mut keep = Vec::new();
            let mut factor = Laurent::one();
            for &(v, e) in m.pairs() {
                match map.get(&v) {
                    Some(img) => {
                        let p = img.powi(e).unwrap_or_else(|| panic!("substituting a non-unit for {v} with exponent {e}"));
                        factor = &factor * &p;
                    }
                    None => keep.push((v, e)),
                }
            }
            let rest = Monomial(keep);
            for (fm, fc) in factor.terms {
                out.add_term(fc * c, fm.mul(&rest));
            }
        }
        out
    }

    /// Replace `v` by `-v` for every variable in `flips`.
    pub fn flip(&self, flips: &[Var]) -> Laurent {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let odd = m.pairs().iter().filter(|(v, e)| flips.contains(v) && e % 2 != 0).count();
            let c = if odd % 2 == 1 { -c.clone() } else { c.clone() };
            out.insert(m.clone(), c);
        }
        Laurent { terms: out }
    }

    /// Evaluate at a ±1 assignment; variables missing from `signs` count as +1.
    pub fn eval_signs(&self, signs: &HashMap<Var, i8>) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut s = 1i8;
            for &(v, e) in m.pairs() {
                if e % 2 != 0 && signs.get(&v).copied().unwrap_or(1) < 0 {
                    s = -s;
                }
            }
            if s > 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    /// Sum of coefficients (evaluation at all variables equal to 1).
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.terms.keys().flat_map(|m| m.vars().collect::<Vec<_>>()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Human-readable form; terms and variables in natural name order.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        type Key = Vec<(Vec<(String, u64)>, i32)>;
        let mut keyed: Vec<(Key, String)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let key = m.pairs().iter().map(|(v, e)| (crate::symbol::natural_key(&v.name()), *e)).collect();
                (key, term_string(c, m))
            })
            .collect();
        keyed.sort();
        let mut s = String::new();
        for (i, (_, t)) in keyed.into_iter().enumerate() {
            if i > 0 {
                if let Some(rest) = t.strip_prefix('-') {
                    s.push_str(" - ");
                    s.push_str(rest);
                    continue;
                }
                s.push_str(" + ");
            }
            s.push_str(&t);
        }
        s
    }
}

/// Parses expressions such as `s9/s11 - s9*s12*s13/(s11^2*s15)` or
/// `-2*t1^-1 + 3`. Division is only allowed by units.
pub fn parse_laurent(src: &str) -> crate::error::Result<Laurent> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(crate::error::Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

pub(crate) fn tokenize(src: &str) -> crate::error::Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Int(text.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(crate::error::Error::Parse(format!("unexpected `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> crate::error::Result<Laurent> {
        let mut acc = Laurent::zero();
        let mut sign = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            if sign < 0 {
                acc = &acc - &t;
            } else {
                acc += &t;
            }
            match self.peek_op() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> crate::error::Result<Laurent> {
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
                    let inv = d.unit_inverse().ok_or_else(|| crate::error::Error::Parse(format!("division by non-unit {d}")))?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> crate::error::Result<Laurent> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let neg = if self.peek_op() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = match self.toks.get(self.pos) {
                Some(Tok::Int(n)) => i32::try_from(n.clone()).map_err(|_| crate::error::Error::Parse("exponent too large".into()))?,
                _ => return Err(crate::error::Error::Parse("expected exponent".into())),
            };
            self.pos += 1;
            let e = if neg { -e } else { e };
            return base.powi(e).ok_or_else(|| crate::error::Error::Parse(format!("negative power of non-unit {base}")));
        }
        Ok(base)
    }

    fn atom(&mut self) -> crate::error::Result<Laurent> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Int(n)) => Ok(Laurent::constant(n)),
            Some(Tok::Ident(name)) => Ok(Laurent::var(Var::new(&name))),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(crate::error::Error::Parse("expected `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Op('-')) => Ok(-self.factor()?),
            other => Err(crate::error::Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn term_string(c: &BigInt, m: &Monomial) -> String {
    if m.is_one() {
        return c.to_string();
    }
    let mono = format!("{m:?}");
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (m, c) in &rhs.terms {
            self.add_term(c.clone(), m.clone());
        }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        self += &rhs;
        self
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(c1 * c2, m1.mul(m2));
            }
        }
        out
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Laurent {
        Laurent::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_expressions() {
        let p = parse_laurent("s9/s11 - s9*s12*s13/(s11^2*s15)").unwrap();
        assert_eq!(p.len(), 2);
        let q = parse_laurent("-2*t1^-1 + 3 + 2/t1").unwrap();
        assert_eq!(q, Laurent::constant(3));
        assert!(parse_laurent("1/(1+x)").is_err());
    }

    fn v(n: &str) -> Laurent {
        Laurent::var(Var::new(n))
    }

    #[test]
    fn unit_inverse_and_products() {
        let s = v("lt_s");
        let u = -&s;
        let inv = u.unit_inverse().unwrap();
        assert!((&u * &inv).is_one());
        let x = &(&s + &Laurent::one()) * &(&s - &Laurent::one());
        assert_eq!(x, &(&s * &s) - &Laurent::one());
    }

    #[test]
    fn substitution_by_unit() {
        let t = Var::new("lt_t");
        let s = Var::new("lt_u");
        let mut map = HashMap::new();
        map.insert(t, Laurent::signed_var(-1, s, 2));
        let p = Laurent::term(3, Monomial::var(t, -1));
        let q = p.substitute(&map);
        assert_eq!(q, Laurent::term(-3, Monomial::var(s, -2)));
    }

    #[test]
    fn flips_and_signs() {
        let a = Var::new("lt_a");
        let b = Var::new("lt_b");
        let p = Laurent::term(2, Monomial::from_pairs([(a, 1), (b, 2)])) + Laurent::term(1, Monomial::var(b, -1));
        let f = p.flip(&[a]);
        assert_eq!(f.eval_ones(), BigInt::from(-1));
        let mut sg = HashMap::new();
        sg.insert(b, -1i8);
        assert_eq!(p.eval_signs(&sg), BigInt::from(1));
    }
}
