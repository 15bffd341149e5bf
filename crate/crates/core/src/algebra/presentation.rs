//! Presentations such as "x^2 = 0, y^2 = y, xy = x, yx = 0" on a basis {1, x, y, ...}.

use super::Algebra;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{unit_vec, vadd, vneg, vscale, Vector};

const GENERATORS: [char; 4] = ['x', 'y', 'z', 'w'];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Letter(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(chars[st..i].iter().collect()));
        } else if c.is_alphabetic() {
            out.push(Tok::Letter(c));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' in '{s}'")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Val {
    Scalar(Elem),
    Vec(Vector),
}

struct ExprParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a Field,
    gens: &'a [char],
    dim: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at token {}", self.pos))
    }

    fn promote(&self, v: Val) -> Vector {
        match v {
            Val::Vec(v) => v,
            Val::Scalar(s) => vscale(self.field, &s, &unit_vec(self.field, self.dim, 0)),
        }
    }

    fn add(&self, a: Val, b: Val) -> Val {
        match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(self.field.add(&x, &y)),
            (a, b) => Val::Vec(vadd(self.field, &self.promote(a), &self.promote(b))),
        }
    }

    fn neg(&self, a: Val) -> Val {
        match a {
            Val::Scalar(x) => Val::Scalar(self.field.neg(&x)),
            Val::Vec(v) => Val::Vec(vneg(self.field, &v)),
        }
    }

    fn mul(&self, a: Val, b: Val) -> Result<Val> {
        Ok(match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(self.field.mul(&x, &y)),
            (Val::Scalar(x), Val::Vec(v)) | (Val::Vec(v), Val::Scalar(x)) => Val::Vec(vscale(self.field, &x, &v)),
            (Val::Vec(_), Val::Vec(_)) => {
                return Err(self.err("products of generators are only allowed on the left of '='"));
            }
        })
    }

    fn expr(&mut self) -> Result<Val> {
        let mut neg = false;
        if let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            neg = *c == '-';
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = self.neg(acc);
        }
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let minus = *c == '-';
            self.pos += 1;
            let t = self.term()?;
            acc = self.add(acc, if minus { self.neg(t) } else { t });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let b = self.factor()?;
                    acc = self.mul(acc, b)?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let b = self.factor()?;
                    let (Val::Scalar(x), Val::Scalar(y)) = (&acc, &b) else {
                        return Err(self.err("division is only defined for scalars"));
                    };
                    let inv = self.field.try_inv(y).ok_or_else(|| self.err("division by zero"))?;
                    acc = Val::Scalar(self.field.mul(x, &inv));
                }
                Some(Tok::Num(_) | Tok::Letter(_) | Tok::Op('(')) => {
                    let b = self.factor()?;
                    acc = self.mul(acc, b)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Val> {
        let base = self.primary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(self.err("expected exponent"));
            };
            self.pos += 1;
            let e: u64 = n.parse().map_err(|_| self.err("bad exponent"))?;
            let Val::Scalar(x) = base else {
                return Err(self.err("powers of generators are only allowed on the left of '='"));
            };
            return Ok(Val::Scalar(self.field.pow(&x, e)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Val> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of expression"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Val::Scalar(self.field.parse_elem(&n)?)),
            Tok::Letter(c) => {
                if let Some(i) = self.gens.iter().position(|&g| g == c) {
                    Ok(Val::Vec(unit_vec(self.field, self.dim, i + 1)))
                } else if c == 't' {
                    let t = self.field.generator().ok_or_else(|| self.err("this field has no indeterminate t"))?;
                    Ok(Val::Scalar(t))
                } else {
                    Err(self.err(&format!("unknown symbol '{c}'")))
                }
            }
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

fn parse_lhs(s: &str) -> Result<(char, char)> {
    let c: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let chars: Vec<char> = c.chars().collect();
    match chars.as_slice() {
        [g, '^', '2'] if GENERATORS.contains(g) => Ok((*g, *g)),
        [g, h] if GENERATORS.contains(g) && GENERATORS.contains(h) => Ok((*g, *h)),
        _ => Err(Error::Parse(format!("'{s}' is not a product of two generators"))),
    }
}

/// Builds the algebra with basis {1, x, y, ...} from relations giving every
/// product of two generators.
pub fn parse_presentation(field: &Field, text: &str) -> Result<Algebra> {
    let mut rels: Vec<(Vec<(char, char)>, String)> = Vec::new();
    let mut gens: Vec<char> = Vec::new();
    for rel in text.split(',') {
        let parts: Vec<&str> = rel.split('=').collect();
        if parts.len() < 2 {
            return Err(Error::Parse(format!("relation '{}' has no '='", rel.trim())));
        }
        let lhs: Vec<(char, char)> = parts[..parts.len() - 1].iter().map(|p| parse_lhs(p)).collect::<Result<_>>()?;
        for (g, h) in &lhs {
            for c in [g, h] {
                if !gens.contains(c) {
                    gens.push(*c);
                }
            }
        }
        rels.push((lhs, parts[parts.len() - 1].to_string()));
    }
    gens.sort_by_key(|c| GENERATORS.iter().position(|g| g == c));
    let n = gens.len() + 1;
    let mut products: Vec<Vec<Option<Vector>>> = vec![vec![None; n]; n];
    for (lhs, rhs) in rels {
        let mut p = ExprParser { toks: tokenize(&rhs)?, pos: 0, field, gens: &gens, dim: n };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in '{}'", rhs.trim())));
        }
        let v = p.promote(v);
        for (g, h) in lhs {
            let (i, j) =
                (gens.iter().position(|&c| c == g).unwrap() + 1, gens.iter().position(|&c| c == h).unwrap() + 1);
            if products[i][j].is_some() {
                return Err(Error::Parse(format!("product {g}{h} defined twice")));
            }
            products[i][j] = Some(v.clone());
        }
    }
    for i in 1..n {
        for j in 1..n {
            if products[i][j].is_none() {
                return Err(Error::Parse(format!("product {}{} is not defined", gens[i - 1], gens[j - 1])));
            }
        }
    }
    let f = field.clone();
    Ok(Algebra::from_fn(f.clone(), n, unit_vec(&f, n, 0), |i, j| match (i, j) {
        (0, j) => unit_vec(&f, n, j),
        (i, 0) => unit_vec(&f, n, i),
        _ => products[i][j].clone().unwrap(),
    }))
}

/// Parses an element written in the generators of `format_presentation`
/// ("1 + 2x", "xy") or as a coordinate list ("[1, 0, 2]").
pub fn parse_element(a: &Algebra, text: &str) -> Result<Vector> {
    let f = a.field();
    let n = a.dim();
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let v: Vector = inner.split(',').map(|c| f.parse_elem(c.trim())).collect::<Result<_>>()?;
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, algebra has dimension {n}",
                v.len()
            )));
        }
        return Ok(v);
    }
    if *a.unit() != unit_vec(f, n, 0) || n - 1 > GENERATORS.len() {
        return Err(Error::Parse("use coordinate lists for algebras without a presentation basis".into()));
    }
    let gens = &GENERATORS[..n - 1];
    let mut p = ExprParser { toks: tokenize(t)?, pos: 0, field: f, gens, dim: n };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{t}'")));
    }
    Ok(p.promote(v))
}

/// Splits "1, x, [0, 1, 0]" at the commas outside brackets.
pub fn split_elements(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn format_vector(f: &Field, v: &[Elem], gens: &[char]) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    let order = (1..v.len()).chain(std::iter::once(0));
    for i in order {
        if f.is_zero(&v[i]) {
            continue;
        }
        let mut c = f.format(&v[i]);
        let negative = c.starts_with('-');
        if negative {
            c.remove(0);
        }
        let text = if i == 0 {
            c
        } else {
            let g = gens[i - 1];
            if c == "1" {
                g.to_string()
            } else if c.contains(['+', '/', '-']) {
                format!("({c}){g}")
            } else {
                format!("{c}{g}")
            }
        };
        terms.push((negative, text));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (neg, t)) in terms.iter().enumerate() {
        match (k, neg) {
            (0, true) => s.push_str(&format!("-{t}")),
            (0, false) => s.push_str(t),
            (_, true) => s.push_str(&format!(" - {t}")),
            (_, false) => s.push_str(&format!(" + {t}")),
        }
    }
    s
}

/// Presentation of an algebra whose basis vector e_0 is the unit; `None` otherwise
/// or when the dimension exceeds the available generator names.
pub fn format_presentation(a: &Algebra) -> Option<String> {
    let f = a.field();
    let n = a.dim();
    if *a.unit() != unit_vec(f, n, 0) || n - 1 > GENERATORS.len() {
        return None;
    }
    if n == 1 {
        return Some(String::new());
    }
    let gens = &GENERATORS[..n - 1];
    let fmt = |i: usize, j: usize| format_vector(f, a.product(i, j), gens);
    let mut rels = Vec::new();
    for i in 1..n {
        rels.push(format!("{}^2 = {}", gens[i - 1], fmt(i, i)));
    }
    for i in 1..n {
        for j in i + 1..n {
            let (gi, gj) = (gens[i - 1], gens[j - 1]);
            let (p, q) = (fmt(i, j), fmt(j, i));
            if p == q {
                rels.push(format!("{gi}{gj} = {gj}{gi} = {p}"));
            } else {
                rels.push(format!("{gi}{gj} = {p}, {gj}{gi} = {q}"));
            }
        }
    }
    Some(rels.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let f = Field::prime(2).unwrap();
        let a = parse_presentation(&f, "x^2 = 0, y^2 = y, xy = x, yx = 0").unwrap();
        assert!(a.is_valid());
        assert_eq!(a.mul(&a.basis_vec(1), &a.basis_vec(2)), a.basis_vec(1));
        assert_eq!(format_presentation(&a).unwrap(), "x^2 = 0, y^2 = y, xy = x, yx = 0");
        let b = parse_presentation(&f, &format_presentation(&a).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scalars_and_parameters() {
        let f = Field::prime(3).unwrap();
        let a = parse_presentation(&f, "x^2 = x, y^2 = 2(x - 1), xy = yx = 0").unwrap();
        assert_eq!(a.product(2, 2), &[f.from_int(1), f.from_int(2), f.zero()]);
        let g = Field::gf2t();
        let d = parse_presentation(&g, "x^2 = x, y^2 = t(x + 1), xy = yx = 0").unwrap();
        assert!(d.is_valid());
        assert!(parse_presentation(&f, "x^2 = x").is_ok());
        assert!(parse_presentation(&f, "x^2 = x, y^2 = 0").is_err());
        assert!(parse_presentation(&f, "x^2 = xy").is_err());
    }

    #[test]
    fn elements_in_generators_and_coordinates() {
        let f = Field::prime(3).unwrap();
        let a = parse_presentation(&f, "x^2 = 0, y^2 = y, xy = x, yx = 0").unwrap();
        let parts = split_elements("1, 2x + y, [0, 1, 1]");
        assert_eq!(parts.len(), 3);
        let v: Vec<Vector> = parts.iter().map(|p| parse_element(&a, p).unwrap()).collect();
        assert_eq!(v[0], unit_vec(&f, 3, 0));
        assert_eq!(v[1], vec![f.zero(), f.from_int(2), f.one()]);
        assert_eq!(v[2], vec![f.zero(), f.one(), f.one()]);
        assert!(parse_element(&a, "[1, 0]").is_err());
    }
}
