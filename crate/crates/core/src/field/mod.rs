//! Exact arithmetic over Q, GF(p), GF(p^n) and GF(2)(t).

mod classes;
mod gf2poly;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use classes::{class_system, class_system_bounded, s_equivalent, t_equivalent, ClassSystem, DEFAULT_DEGREE_BOUND};
pub use gf2poly::Gf2Poly;

/// Largest finite field we are willing to build log tables for.
const MAX_FINITE_ORDER: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    /// GF(p)[t]/(modulus), modulus given low-to-high, monic.
    Extension {
        p: u64,
        modulus: Vec<u64>,
    },
    /// GF(p)(t); only p = 2 is supported.
    RationalFunction(u64),
}

/// A reduced fraction of GF(2)[t] polynomials with gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn {
    pub num: Gf2Poly,
    pub den: Gf2Poly,
}

impl RatFn {
    pub fn new(num: Gf2Poly, den: Gf2Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn { num, den: Gf2Poly::one() };
        }
        let g = num.gcd(&den);
        RatFn { num: num.divrem(&g).0, den: den.divrem(&g).0 }
    }

    pub fn from_poly(p: Gf2Poly) -> Self {
        RatFn { num: p, den: Gf2Poly::one() }
    }

    /// max(deg num, deg den), the height used for bounded enumeration.
    pub fn height(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }
}

/// Canonical field element. Equality of elements is equality of representations.
///
/// Finite-field elements are stored as their enumeration index, so the derived
/// order on `Fin` is the enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Fin(u32),
    Rat(Box<BigRational>),
    Rf(Box<RatFn>),
}

impl Elem {
    pub fn fin(&self) -> u32 {
        match self {
            Elem::Fin(i) => *i,
            _ => panic!("not a finite-field element"),
        }
    }
}

struct ExtTables {
    p: u64,
    n: usize,
    q: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

enum Backend {
    Rational,
    Prime(u64),
    Ext(ExtTables),
    Gf2Rf,
}

struct Inner {
    spec: FieldSpec,
    backend: Backend,
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.spec {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Extension { p, modulus } => {
                let q = p.pow(modulus.len() as u32 - 1);
                write!(f, "GF({q})=GF({p})[t]/({})", format_fp_poly(modulus))
            }
            FieldSpec::RationalFunction(p) => write!(f, "GF({p})(t)"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Field::parse(s)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn format_fp_poly(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && e > 0 { String::new() } else { c.to_string() };
        parts.push(match e {
            0 => coef,
            1 => format!("{coef}t"),
            _ => format!("{coef}t^{e}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Parses `c0 + c1 t + c2 t^2 ...` style text into (coefficient, exponent) terms.
pub(crate) fn parse_terms(s: &str, var: char) -> Result<Vec<(i64, u32)>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bad = || Error::Parse(format!("malformed polynomial '{s}'"));
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut terms = Vec::new();
    while i < chars.len() {
        let mut sign = 1i64;
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if !terms.is_empty() {
            return Err(bad());
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let coef: Option<i64> =
            if i > start { Some(chars[start..i].iter().collect::<String>().parse().map_err(|_| bad())?) } else { None };
        if i < chars.len() && chars[i] == '*' {
            if coef.is_none() {
                return Err(bad());
            }
            i += 1;
        }
        let mut exp = None;
        if i < chars.len() && chars[i] == var {
            i += 1;
            let mut e = 1u32;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let st = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if st == i {
                    return Err(bad());
                }
                e = chars[st..i].iter().collect::<String>().parse().map_err(|_| bad())?;
            }
            exp = Some(e);
        }
        if coef.is_none() && exp.is_none() {
            return Err(bad());
        }
        terms.push((sign * coef.unwrap_or(1), exp.unwrap_or(0)));
    }
    Ok(terms)
}

fn terms_to_fp(terms: &[(i64, u32)], p: u64) -> Vec<u64> {
    let deg = terms.iter().map(|t| t.1).max().unwrap_or(0) as usize;
    let mut c = vec![0u64; deg + 1];
    for &(k, e) in terms {
        c[e as usize] = (c[e as usize] + k.rem_euclid(p as i64) as u64) % p;
    }
    trim_fp(&mut c);
    c
}

fn trim_fp(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

/// Remainder of `a` modulo a monic polynomial `m` over GF(p).
fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim_fp(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * mc) % p) % p;
        }
        trim_fp(&mut r);
    }
    r
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim_fp(&mut out);
    out
}

fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(d as u32)).map(move |mut idx| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(idx % p);
            idx /= p;
        }
        c.push(1);
        c
    })
}

pub(crate) fn fp_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        for g in monic_polys(p, d) {
            if fp_rem(m, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn index_to_digits(mut idx: u64, p: u64, n: usize) -> Vec<u64> {
    let mut c = Vec::with_capacity(n);
    for _ in 0..n {
        c.push(idx % p);
        idx /= p;
    }
    c
}

fn digits_to_index(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl ExtTables {
    fn build(p: u64, modulus: &[u64]) -> Result<Self> {
        let n = modulus.len() - 1;
        let q = p
            .checked_pow(n as u32)
            .filter(|&q| q <= MAX_FINITE_ORDER)
            .ok_or_else(|| Error::Usage(format!("field order above {MAX_FINITE_ORDER} is not supported")))?;
        let mulmod = |a: u64, b: u64| -> u64 {
            let prod = fp_mul(&index_to_digits(a, p, n), &index_to_digits(b, p, n), p);
            digits_to_index(&fp_rem(&prod, modulus, p), p)
        };
        for g in 2..q {
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut x = 1u64;
            loop {
                exp.push(x as u32);
                x = mulmod(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() as u64 == q - 1 {
                let mut log = vec![0u32; q as usize];
                for (k, &v) in exp.iter().enumerate() {
                    log[v as usize] = k as u32;
                }
                return Ok(ExtTables { p, n, q, exp, log });
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.n {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }

    fn neg(&self, a: u32) -> u32 {
        let mut a = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.n {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out as u32
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q - 1);
        self.exp[k as usize]
    }

    fn inv(&self, a: u32) -> u32 {
        let k = (self.q - 1 - self.log[a as usize] as u64) % (self.q - 1);
        self.exp[k as usize]
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn parse_gf_prefix(s: &str) -> Result<(u64, &str)> {
    let rest = s.strip_prefix("GF(").ok_or_else(|| Error::Parse(format!("unknown field '{s}'")))?;
    let close = rest.find(')').ok_or_else(|| Error::Parse(format!("unbalanced parentheses in '{s}'")))?;
    let q: u64 = rest[..close].parse().map_err(|_| Error::Parse(format!("bad field order in '{s}'")))?;
    Ok((q, &rest[close + 1..]))
}

/// Returns (p, n) with q = p^n, or None when q is not a prime power.
fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut r, mut n) = (q, 0);
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(Inner { spec: FieldSpec::Rationals, backend: Backend::Rational }))
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::from_spec(FieldSpec::Prime(p))
    }

    /// GF(2)(t).
    pub fn gf2t() -> Self {
        Field(Arc::new(Inner { spec: FieldSpec::RationalFunction(2), backend: Backend::Gf2Rf }))
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Self> {
        let backend = match &spec {
            FieldSpec::Rationals => Backend::Rational,
            FieldSpec::Prime(p) => {
                if !is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                if *p > u32::MAX as u64 {
                    return Err(Error::Usage("prime too large".into()));
                }
                Backend::Prime(*p)
            }
            FieldSpec::Extension { p, modulus } => {
                if !is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                if modulus.len() < 3 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= *p) {
                    return Err(Error::Parse(format!(
                        "modulus {} must be monic of degree at least 2 over GF({p})",
                        format_fp_poly(modulus)
                    )));
                }
                if !fp_irreducible(modulus, *p) {
                    return Err(Error::ReducibleModulus(format_fp_poly(modulus)));
                }
                Backend::Ext(ExtTables::build(*p, modulus)?)
            }
            FieldSpec::RationalFunction(p) => {
                if *p != 2 {
                    return Err(Error::Usage("only GF(2)(t) is supported as a rational function field".into()));
                }
                Backend::Gf2Rf
            }
        };
        Ok(Field(Arc::new(Inner { spec, backend })))
    }

    /// Parses `Q`, `GF(p)`, `GF(q)=GF(p)[t]/(poly)` or `GF(2)(t)`.
    ///
    /// A bare `GF(q)` with q a proper prime power picks the least monic
    /// irreducible modulus in coefficient order.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "Q" {
            return Ok(Self::rationals());
        }
        let (q, rest) = parse_gf_prefix(&s)?;
        if rest.is_empty() {
            if is_prime(q) {
                return Self::prime(q);
            }
            let (p, n) = prime_power(q).ok_or(Error::NotPrime(q))?;
            let modulus = monic_polys(p, n)
                .find(|m| fp_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree");
            return Self::from_spec(FieldSpec::Extension { p, modulus });
        }
        if rest == "(t)" {
            if !is_prime(q) {
                return Err(Error::NotPrime(q));
            }
            return Self::from_spec(FieldSpec::RationalFunction(q));
        }
        let rest = rest.strip_prefix('=').ok_or_else(|| Error::Parse(format!("unknown field '{text}'")))?;
        let (p, rest) = parse_gf_prefix(rest)?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let poly = rest
            .strip_prefix("[t]/(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected [t]/(poly) in '{text}'")))?;
        let modulus = terms_to_fp(&parse_terms(poly, 't')?, p);
        let n = modulus.len().saturating_sub(1);
        if p.checked_pow(n as u32) != Some(q) {
            return Err(Error::Parse(format!("GF({q}) does not match a degree-{n} modulus over GF({p})")));
        }
        Self::from_spec(FieldSpec::Extension { p, modulus })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.spec {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) | FieldSpec::Extension { p, .. } | FieldSpec::RationalFunction(p) => *p,
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        match &self.0.backend {
            Backend::Prime(p) => Some(*p),
            Backend::Ext(t) => Some(t.q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn zero(&self) -> Elem {
        match &self.0.backend {
            Backend::Rational => Elem::Rat(Box::new(BigRational::zero())),
            Backend::Prime(_) | Backend::Ext(_) => Elem::Fin(0),
            Backend::Gf2Rf => Elem::Rf(Box::new(RatFn::from_poly(Gf2Poly::zero()))),
        }
    }

    pub fn one(&self) -> Elem {
        match &self.0.backend {
            Backend::Rational => Elem::Rat(Box::new(BigRational::one())),
            Backend::Prime(_) | Backend::Ext(_) => Elem::Fin(1),
            Backend::Gf2Rf => Elem::Rf(Box::new(RatFn::from_poly(Gf2Poly::one()))),
        }
    }

    pub fn from_int(&self, n: i64) -> Elem {
        match &self.0.backend {
            Backend::Rational => Elem::Rat(Box::new(BigRational::from_integer(BigInt::from(n)))),
            Backend::Prime(p) => Elem::Fin(n.rem_euclid(*p as i64) as u32),
            Backend::Ext(t) => Elem::Fin(n.rem_euclid(t.p as i64) as u32),
            Backend::Gf2Rf => {
                if n.rem_euclid(2) == 1 {
                    self.one()
                } else {
                    self.zero()
                }
            }
        }
    }

    /// The indeterminate t of GF(p^n) or GF(2)(t).
    pub fn generator(&self) -> Option<Elem> {
        match &self.0.backend {
            Backend::Ext(t) => Some(Elem::Fin(t.p as u32)),
            Backend::Gf2Rf => Some(Elem::Rf(Box::new(RatFn::from_poly(Gf2Poly::monomial(1))))),
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Fin(i) => *i == 0,
            Elem::Rat(r) => r.is_zero(),
            Elem::Rf(r) => r.num.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.backend, a, b) {
            (Backend::Prime(p), Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(((*x as u64 + *y as u64) % p) as u32),
            (Backend::Ext(t), Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(t.add(*x, *y)),
            (Backend::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(Box::new(&**x + &**y)),
            (Backend::Gf2Rf, Elem::Rf(x), Elem::Rf(y)) => {
                if x.den == y.den {
                    Elem::Rf(Box::new(RatFn::new(x.num.add(&y.num), x.den.clone())))
                } else {
                    let num = x.num.mul(&y.den).add(&y.num.mul(&x.den));
                    Elem::Rf(Box::new(RatFn::new(num, x.den.mul(&y.den))))
                }
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.0.backend, a) {
            (Backend::Prime(p), Elem::Fin(x)) => Elem::Fin(((p - *x as u64) % p) as u32),
            (Backend::Ext(t), Elem::Fin(x)) => Elem::Fin(t.neg(*x)),
            (Backend::Rational, Elem::Rat(x)) => Elem::Rat(Box::new(-&**x)),
            (Backend::Gf2Rf, Elem::Rf(_)) => a.clone(),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.backend, a, b) {
            (Backend::Prime(p), Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(((*x as u64 * *y as u64) % p) as u32),
            (Backend::Ext(t), Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(t.mul(*x, *y)),
            (Backend::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(Box::new(&**x * &**y)),
            (Backend::Gf2Rf, Elem::Rf(x), Elem::Rf(y)) => {
                if x.num.is_zero() || y.num.is_zero() {
                    return self.zero();
                }
                Elem::Rf(Box::new(RatFn::new(x.num.mul(&y.num), x.den.mul(&y.den))))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn try_inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (&self.0.backend, a) {
            (Backend::Prime(p), Elem::Fin(x)) => Elem::Fin(mod_pow(*x as u64, p - 2, *p) as u32),
            (Backend::Ext(t), Elem::Fin(x)) => Elem::Fin(t.inv(*x)),
            (Backend::Rational, Elem::Rat(x)) => Elem::Rat(Box::new(x.recip())),
            (Backend::Gf2Rf, Elem::Rf(x)) => Elem::Rf(Box::new(RatFn::new(x.den.clone(), x.num.clone()))),
            _ => panic!("element does not belong to {self}"),
        })
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// All elements in canonical order (0, 1, ...).
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let q = self.order().ok_or(Error::InfiniteField)?;
        Ok((0..q as u32).map(Elem::Fin).collect())
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> Result<Vec<Elem>> {
        let q = self.order().ok_or(Error::InfiniteField)?;
        Ok((1..q as u32).map(Elem::Fin).collect())
    }

    /// Square root witness, or `None` when `a` is not a square.
    pub fn sqrt(&self, a: &Elem) -> Option<Elem> {
        match (&self.0.backend, a) {
            (Backend::Prime(_) | Backend::Ext(_), Elem::Fin(x)) => {
                let q = self.order().unwrap();
                if *x == 0 {
                    return Some(self.zero());
                }
                if q.is_multiple_of(2) {
                    // Frobenius is bijective: sqrt(a) = a^(q/2)
                    return Some(self.pow(a, q / 2));
                }
                if self.pow(a, (q - 1) / 2) != self.one() {
                    return None;
                }
                (1..q as u32).map(Elem::Fin).find(|y| self.mul(y, y) == *a)
            }
            (Backend::Rational, Elem::Rat(r)) => {
                let (n, d) = (r.numer(), r.denom());
                if n.is_negative() {
                    return None;
                }
                let (sn, sd) = (n.sqrt(), d.sqrt());
                (&sn * &sn == *n && &sd * &sd == *d).then(|| Elem::Rat(Box::new(BigRational::new(sn, sd))))
            }
            (Backend::Gf2Rf, Elem::Rf(r)) => {
                let (n, d) = (r.num.sqrt()?, r.den.sqrt()?);
                Some(Elem::Rf(Box::new(RatFn::new(n, d))))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn is_square(&self, a: &Elem) -> bool {
        self.sqrt(a).is_some()
    }

    /// Canonical text: "2/3", "2", "2t^2+t+1", "(t+1)/t^2".
    pub fn format(&self, a: &Elem) -> String {
        match (&self.0.backend, a) {
            (Backend::Prime(_), Elem::Fin(x)) => x.to_string(),
            (Backend::Ext(t), Elem::Fin(x)) => format_fp_poly(&index_to_digits(*x as u64, t.p, t.n)),
            (Backend::Rational, Elem::Rat(r)) => r.to_string(),
            (Backend::Gf2Rf, Elem::Rf(r)) => {
                if r.den.is_one() {
                    return r.num.to_string();
                }
                let wrap = |p: &Gf2Poly| {
                    if p.term_count() > 1 {
                        format!("({p})")
                    } else {
                        p.to_string()
                    }
                };
                format!("{}/{}", wrap(&r.num), wrap(&r.den))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("'{text}' is not an element of {self}"));
        match &self.0.backend {
            Backend::Rational => {
                let r = BigRational::from_str(&s).map_err(|_| bad())?;
                Ok(Elem::Rat(Box::new(r)))
            }
            Backend::Prime(p) => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (s.as_str(), None),
                };
                let n: BigInt = num.parse().map_err(|_| bad())?;
                let pb = BigInt::from(*p);
                let to_elem = |v: BigInt| Elem::Fin(v.mod_floor(&pb).try_into().unwrap());
                let e = to_elem(n);
                match den {
                    None => Ok(e),
                    Some(d) => {
                        let d = to_elem(d.parse().map_err(|_| bad())?);
                        let di = self.try_inv(&d).ok_or_else(bad)?;
                        Ok(self.mul(&e, &di))
                    }
                }
            }
            Backend::Ext(t) => {
                let terms = parse_terms(&s, 't').map_err(|_| bad())?;
                let c = terms_to_fp(&terms, t.p);
                let FieldSpec::Extension { modulus, .. } = &self.0.spec else { unreachable!() };
                let r = fp_rem(&c, modulus, t.p);
                Ok(Elem::Fin(digits_to_index(&r, t.p) as u32))
            }
            Backend::Gf2Rf => {
                let strip = |x: &str| -> String {
                    let x = x.trim();
                    if x.starts_with('(') && x.ends_with(')') {
                        x[1..x.len() - 1].to_string()
                    } else {
                        x.to_string()
                    }
                };
                let poly = |x: &str| -> Result<Gf2Poly> { Ok(Gf2Poly::from_terms(&parse_terms(&strip(x), 't')?)) };
                let (n, d) = match split_top_level_slash(&s) {
                    Some((n, d)) => (poly(n).map_err(|_| bad())?, poly(d).map_err(|_| bad())?),
                    None => (poly(&s).map_err(|_| bad())?, Gf2Poly::one()),
                };
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Elem::Rf(Box::new(RatFn::new(n, d))))
            }
        }
    }

    /// Index of a finite-field element in the canonical enumeration.
    pub fn index(&self, a: &Elem) -> Option<u64> {
        match a {
            Elem::Fin(i) if self.is_finite() => Some(*i as u64),
            _ => None,
        }
    }

    /// Elements of GF(2)(t) with numerator and denominator degree at most `bound`,
    /// ordered by height, then denominator, then numerator.
    pub fn bounded_elements(&self, bound: usize) -> Result<Vec<Elem>> {
        match &self.0.backend {
            Backend::Gf2Rf => {
                let mut out = Vec::new();
                for h in 0..=bound {
                    let top = 1u64 << (h + 1);
                    for den in 1..top {
                        for num in 0..top {
                            let (n, d) = (Gf2Poly::from_u64(num), Gf2Poly::from_u64(den));
                            let height = n.degree().unwrap_or(0).max(d.degree().unwrap_or(0));
                            if height != h || (num == 0 && den != 1) || !n.gcd(&d).is_one() {
                                continue;
                            }
                            out.push(Elem::Rf(Box::new(RatFn { num: n, den: d })));
                        }
                    }
                }
                Ok(out)
            }
            _ if self.is_finite() => self.elements(),
            _ => Err(Error::UnsupportedOverInfiniteField("bounded enumeration of Q".into())),
        }
    }
}

fn split_top_level_slash(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_grammar() {
        assert_eq!(Field::parse("GF(3)").unwrap().spec(), &FieldSpec::Prime(3));
        let f = Field::parse("GF(4)=GF(2)[t]/(t^2+t+1)").unwrap();
        assert_eq!(f.spec(), &FieldSpec::Extension { p: 2, modulus: vec![1, 1, 1] });
        assert_eq!(f.to_string(), "GF(4)=GF(2)[t]/(t^2+t+1)");
        assert!(matches!(Field::parse("GF(4)=GF(2)[t]/(t^2+1)"), Err(Error::ReducibleModulus(_))));
        assert!(matches!(Field::parse("GF(6)"), Err(Error::NotPrime(6))));
        assert!(matches!(Field::parse("GF(9)=GF(4)[t]/(t^2+1)"), Err(Error::NotPrime(4))));
        assert!(matches!(Field::parse("R"), Err(Error::Parse(_))));
        assert_eq!(Field::parse("Q").unwrap().spec(), &FieldSpec::Rationals);
        assert_eq!(Field::parse("GF(2)(t)").unwrap().spec(), &FieldSpec::RationalFunction(2));
        assert_eq!(Field::parse("GF(9)").unwrap().to_string(), "GF(9)=GF(3)[t]/(t^2+1)");
    }

    #[test]
    fn enumeration_order() {
        let f = Field::prime(2).unwrap();
        assert_eq!(f.elements().unwrap(), vec![Elem::Fin(0), Elem::Fin(1)]);
        assert_eq!(Field::parse("GF(4)").unwrap().elements().unwrap().len(), 4);
        assert!(matches!(Field::rationals().elements(), Err(Error::InfiniteField)));
    }

    #[test]
    fn gf4_arithmetic() {
        let f = Field::parse("GF(4)=GF(2)[t]/(t^2+t+1)").unwrap();
        let t = f.generator().unwrap();
        let t2 = f.mul(&t, &t);
        assert_eq!(f.format(&t2), "t+1");
        assert_eq!(f.mul(&t, &t2), f.one());
        assert_eq!(f.parse_elem("t^2").unwrap(), t2);
    }

    #[test]
    fn squares() {
        let f3 = Field::prime(3).unwrap();
        assert!(!f3.is_square(&f3.from_int(2)));
        let q = Field::rationals();
        let w = q.sqrt(&q.parse_elem("4/9").unwrap()).unwrap();
        assert_eq!(q.format(&w), "2/3");
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.sqrt(&f5.from_int(4)).map(|e| f5.format(&e)), Some("2".into()));
        let r = Field::gf2t();
        assert!(!r.is_square(&r.generator().unwrap()));
        assert!(r.is_square(&r.parse_elem("(t^2+1)/t^4").unwrap()));
    }

    #[test]
    fn rational_function_format_round_trip() {
        let r = Field::gf2t();
        for e in r.bounded_elements(2).unwrap() {
            assert_eq!(r.parse_elem(&r.format(&e)).unwrap(), e);
        }
        let x = r.parse_elem("(t+1)/(t^2+1)").unwrap();
        assert_eq!(r.format(&x), "1/(t+1)");
    }

    #[test]
    fn prime_field_parsing() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.parse_elem("-1").unwrap(), f.from_int(4));
        assert_eq!(f.parse_elem("1/2").unwrap(), f.from_int(3));
        assert!(f.parse_elem("1/0").is_err());
    }
}
