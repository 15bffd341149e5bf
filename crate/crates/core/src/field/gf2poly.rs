use std::cmp::Ordering;
use std::fmt;

/// Polynomial over GF(2), bit i = coefficient of t^i. Trailing zero words are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly(Vec<u64>);

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly(Vec::new())
    }

    pub fn one() -> Self {
        Gf2Poly(vec![1])
    }

    pub fn monomial(e: usize) -> Self {
        let mut p = Gf2Poly(vec![0; e / 64 + 1]);
        p.0[e / 64] |= 1 << (e % 64);
        p
    }

    /// Polynomial whose coefficient bits are the binary digits of `n`.
    pub fn from_u64(n: u64) -> Self {
        let mut p = Gf2Poly(vec![n]);
        p.trim();
        p
    }

    /// Inverse of `from_u64` for polynomials of degree < 64.
    pub fn to_u64(&self) -> Option<u64> {
        match self.0.len() {
            0 => Some(0),
            1 => Some(self.0[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.0.last()?;
        Some((self.0.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set_bit(&mut self, i: usize) {
        if self.0.len() <= i / 64 {
            self.0.resize(i / 64 + 1, 0);
        }
        self.0[i / 64] ^= 1 << (i % 64);
        self.trim();
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.0.get(i).copied().unwrap_or(0) ^ other.0.get(i).copied().unwrap_or(0));
        }
        let mut p = Gf2Poly(out);
        p.trim();
        p
    }

    pub fn shl(&self, s: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let words = s / 64;
        let bits = s % 64;
        let mut out = vec![0u64; self.0.len() + words + 1];
        for (i, &w) in self.0.iter().enumerate() {
            out[i + words] ^= w << bits;
            if bits > 0 {
                out[i + words + 1] ^= w >> (64 - bits);
            }
        }
        let mut p = Gf2Poly(out);
        p.trim();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        if let Some(d) = other.degree() {
            for i in 0..=d {
                if other.bit(i) {
                    acc = acc.add(&self.shl(i));
                }
            }
        }
        acc
    }

    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut q = Self::zero();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            q.set_bit(rd - dd);
            r = r.add(&divisor.shl(rd - dd));
        }
        (q, r)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    /// Square root if every odd-degree coefficient vanishes.
    pub fn sqrt(&self) -> Option<Self> {
        let mut out = Self::zero();
        if let Some(d) = self.degree() {
            for i in 0..=d {
                if self.bit(i) {
                    if i % 2 == 1 {
                        return None;
                    }
                    out.set_bit(i / 2);
                }
            }
        }
        Some(out)
    }

    /// Split into even and odd parts: self = e(t)^2 + t * o(t)^2.
    pub fn even_odd_roots(&self) -> (Self, Self) {
        let mut e = Self::zero();
        let mut o = Self::zero();
        if let Some(d) = self.degree() {
            for i in 0..=d {
                if self.bit(i) {
                    if i % 2 == 0 {
                        e.set_bit(i / 2);
                    } else {
                        o.set_bit(i / 2);
                    }
                }
            }
        }
        (e, o)
    }

    pub fn from_terms(terms: &[(i64, u32)]) -> Self {
        let mut p = Self::zero();
        for &(c, e) in terms {
            if c.rem_euclid(2) == 1 {
                p.set_bit(e as usize);
            }
        }
        p
    }

    pub fn term_count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl Ord for Gf2Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for i in (0..=d).rev() {
            if !self.bit(i) {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_divide() {
        let a = Gf2Poly::from_u64(0b111); // t^2+t+1
        let b = Gf2Poly::from_u64(0b11); // t+1
        let p = a.mul(&b);
        assert_eq!(p, Gf2Poly::from_u64(0b1001)); // t^3+1
        let (q, r) = p.divrem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        assert_eq!(a.gcd(&b), Gf2Poly::one());
    }

    #[test]
    fn wide_shift() {
        let x = Gf2Poly::monomial(70);
        assert_eq!(x.degree(), Some(70));
        assert_eq!(x.mul(&x).degree(), Some(140));
        assert_eq!(x.mul(&x).sqrt(), Some(x));
    }

    #[test]
    fn display() {
        assert_eq!(Gf2Poly::from_u64(0b1011).to_string(), "t^3+t+1");
        assert_eq!(Gf2Poly::zero().to_string(), "0");
    }
}
