//! Multivariate polynomials over GF(p) with named variables.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Elem, Gf};
use super::ChevError;

/// Exponent vector indexed by variable number; trailing zeros trimmed.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    p: u32,
    terms: BTreeMap<Monomial, u32>,
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
            .collect(),
    )
}

impl Poly {
    pub fn zero(p: u32) -> Poly {
        Poly {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u32, c: i64) -> Poly {
        let mut out = Poly::zero(p);
        out.add_term(Vec::new(), c.rem_euclid(p as i64) as u32);
        out
    }

    pub fn var(p: u32, i: usize) -> Poly {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        let mut out = Poly::zero(p);
        out.add_term(m, 1);
        out
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let m = trim(m);
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e = (*e + c) % self.p;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.p);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.p - c);
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.p);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Poly {
        self.mul(&Poly::constant(self.p, c))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(self.p, 1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.get(i).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Substitute constants from GF(p) for some variables.
    pub fn substitute(&self, values: &BTreeMap<usize, i64>) -> Poly {
        let mut out = Poly::zero(self.p);
        for (m, c) in &self.terms {
            let mut coeff = *c as i64;
            let mut rest = m.clone();
            for (&v, &x) in values {
                if let Some(e) = rest.get_mut(v) {
                    coeff *= x.rem_euclid(self.p as i64).pow(*e);
                    coeff %= self.p as i64;
                    *e = 0;
                }
            }
            out.add_term(rest, coeff as u32);
        }
        out
    }

    /// Replace variable `var` by the polynomial `by`.
    pub fn compose(&self, var: usize, by: &Poly) -> Poly {
        let mut out = Poly::zero(self.p);
        for (m, c) in &self.terms {
            let e = m.get(var).copied().unwrap_or(0);
            let mut rest = m.clone();
            if let Some(x) = rest.get_mut(var) {
                *x = 0;
            }
            let mut base = Poly::zero(self.p);
            base.add_term(rest, *c);
            out = out.add(&base.mul(&by.pow(e)));
        }
        out
    }

    /// Evaluate in an extension field; `values[i]` is the value of variable `i`.
    pub fn eval(&self, f: &Gf, values: &[Elem]) -> Result<Elem, ChevError> {
        if f.characteristic() != self.p {
            return Err(ChevError::Field(format!(
                "GF({}) polynomial evaluated in {f:?}",
                self.p
            )));
        }
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = f.from_int(*c as i64);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = *values
                    .get(i)
                    .ok_or_else(|| ChevError::Field(format!("no value for variable {i}")))?;
                t = f.mul(t, f.pow(v, e as i64)?);
            }
            acc = f.add(acc, t);
        }
        Ok(acc)
    }

    pub fn display<'a>(&'a self, vars: &'a Vars) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}

/// Variable names for parsing and printing polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vars {
    names: Vec<String>,
}

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Vars {
        Vars {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Index of `name`, adding it if new.
    pub fn intern(&mut self, name: &str) -> usize {
        match self.index(name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Parse `+`/`-` separated products of integers, variables and `^` powers,
    /// with parentheses; juxtaposition and `*` both multiply. Unknown variables
    /// are added.
    pub fn parse(&mut self, p: u32, s: &str) -> Result<Poly, ChevError> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let out = self.sum(p, &chars, &mut pos, s)?;
        if pos != chars.len() {
            return Err(ChevError::Parse(format!("trailing input in `{s}`")));
        }
        Ok(out)
    }

    fn sum(&mut self, p: u32, c: &[char], pos: &mut usize, src: &str) -> Result<Poly, ChevError> {
        let mut acc = Poly::zero(p);
        let mut sign = 1;
        if c.get(*pos) == Some(&'-') {
            sign = -1;
            *pos += 1;
        }
        loop {
            let t = self.product(p, c, pos, src)?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            match c.get(*pos) {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            *pos += 1;
        }
    }

    fn product(
        &mut self,
        p: u32,
        c: &[char],
        pos: &mut usize,
        src: &str,
    ) -> Result<Poly, ChevError> {
        let mut acc = self.power(p, c, pos, src)?;
        loop {
            match c.get(*pos) {
                Some('*') => {
                    *pos += 1;
                    acc = acc.mul(&self.power(p, c, pos, src)?);
                }
                Some(ch) if ch.is_alphanumeric() || *ch == '(' => {
                    acc = acc.mul(&self.power(p, c, pos, src)?)
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self, p: u32, c: &[char], pos: &mut usize, src: &str) -> Result<Poly, ChevError> {
        let base = self.atom(p, c, pos, src)?;
        if c.get(*pos) == Some(&'^') {
            *pos += 1;
            let start = *pos;
            while c.get(*pos).is_some_and(|d| d.is_ascii_digit()) {
                *pos += 1;
            }
            let e: u32 = c[start..*pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| ChevError::Parse(format!("bad exponent in `{src}`")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self, p: u32, c: &[char], pos: &mut usize, src: &str) -> Result<Poly, ChevError> {
        match c.get(*pos) {
            Some('(') => {
                *pos += 1;
                let inner = self.sum(p, c, pos, src)?;
                if c.get(*pos) != Some(&')') {
                    return Err(ChevError::Parse(format!(
                        "unbalanced parentheses in `{src}`"
                    )));
                }
                *pos += 1;
                Ok(inner)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let start = *pos;
                while c.get(*pos).is_some_and(|d| d.is_ascii_digit()) {
                    *pos += 1;
                }
                let n: i64 = c[start..*pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| ChevError::Parse(format!("bad integer in `{src}`")))?;
                Ok(Poly::constant(p, n))
            }
            Some(ch) if ch.is_alphabetic() => {
                // A variable is a letter followed by digits, so `a1a2` is a1·a2.
                let start = *pos;
                *pos += 1;
                while c.get(*pos).is_some_and(|d| d.is_ascii_digit()) {
                    *pos += 1;
                }
                let name: String = c[start..*pos].iter().collect();
                let i = self.intern(&name);
                Ok(Poly::var(p, i))
            }
            _ => Err(ChevError::Parse(format!("expected a term in `{src}`"))),
        }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    vars: &'a Vars,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first, then lexicographic.
        let mut terms: Vec<(&Monomial, u32)> = self.poly.terms().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (m, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let mut factors = Vec::new();
            if *c != 1 || m.iter().all(|&e| e == 0) {
                factors.push(c.to_string());
            }
            for (i, &e) in m.iter().enumerate() {
                let name = self
                    .vars
                    .names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("v{i}"));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_arithmetic() {
        let mut v = Vars::default();
        let x = v.parse(2, "(a+b)^2").unwrap();
        let y = v.parse(2, "a^2+b^2").unwrap();
        assert_eq!(x, y);
        let z = v.parse(3, "(a+b)^3 - a^3 - b^3").unwrap();
        assert!(z.is_zero());
        let w = v.parse(2, "a6+a1a2a5+a2a3^2").unwrap();
        assert_eq!(w.terms().count(), 3);
        assert_eq!(w.total_degree(), 3);
        assert_eq!(w.display(&v).to_string(), "a1*a2*a5+a2*a3^2+a6");
    }

    #[test]
    fn evaluation_and_substitution() {
        let f = Gf::new(2, 2).unwrap();
        let mut v = Vars::new(&["t"]);
        let p = v.parse(2, "t^2+t+1").unwrap();
        let roots: Vec<Elem> = f
            .elements()
            .filter(|&x| p.eval(&f, &[x]).unwrap() == 0)
            .collect();
        assert_eq!(roots.len(), 2);
        let q = v.parse(2, "a*t+b").unwrap();
        let mut vals = BTreeMap::new();
        vals.insert(v.index("a").unwrap(), 1);
        vals.insert(v.index("b").unwrap(), 0);
        assert_eq!(q.substitute(&vals), Poly::var(2, 0));
        let r = v
            .parse(2, "t^2+a")
            .unwrap()
            .compose(0, &v.parse(2, "b+1").unwrap());
        assert_eq!(r, v.parse(2, "b^2+1+a").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        let mut v = Vars::default();
        for s in ["", "(a", "a^", "a+*b"] {
            assert!(v.parse(2, s).is_err(), "{s}");
        }
    }
}
