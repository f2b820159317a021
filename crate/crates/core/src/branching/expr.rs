//! Module expressions such as `(100|(010+0)|100) + W(100)* + T(002)^2`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! layers  := sum ('|' sum)*
//! sum     := tensor ('+' tensor)*
//! tensor  := postfix ('⊗' postfix)*
//! postfix := atom ('^' n | '^*' | '*' | '[' r ']')*
//! atom    := weight | 'W(' weight ')' | 'T(' weight ')' | '(' layers (',' layers)* ')'
//! ```
//!
//! A bare weight is the irreducible `L(λ)`, `0` is the trivial module of any
//! type, `^n` is a direct sum of `n` copies, a tuple is an outer tensor
//! product over the components, and a symbolic twist `[r]` is taken as `r = 1`.
//! Socle layers are flattened to a character sum.

use std::fmt;

use crate::characters::{self, Character};
use crate::rootdata::{CartanType, Weight};

use super::{BranchError, IrrData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Irr(Weight),
    Weyl(Weight),
    Tilting(Weight),
    Layers(Vec<Expr>),
    Sum(Vec<Expr>),
    Tensor(Vec<Expr>),
    Tuple(Vec<Expr>),
    Pow(Box<Expr>, u32),
    Dual(Box<Expr>),
    Twist(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> BranchError {
        BranchError::Expr {
            expr: self.src.to_string(),
            msg: format!("{} at offset {}", msg.into(), self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), BranchError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn list(
        &mut self,
        sep: char,
        next: fn(&mut Self) -> Result<Expr, BranchError>,
        wrap: fn(Vec<Expr>) -> Expr,
    ) -> Result<Expr, BranchError> {
        let mut items = vec![next(self)?];
        while self.eat(sep) {
            items.push(next(self)?);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            wrap(items)
        })
    }

    fn layers(&mut self) -> Result<Expr, BranchError> {
        self.list('|', Self::sum, Expr::Layers)
    }

    fn sum(&mut self) -> Result<Expr, BranchError> {
        self.list('+', Self::tensor, Expr::Sum)
    }

    fn tensor(&mut self) -> Result<Expr, BranchError> {
        self.list('⊗', Self::postfix, Expr::Tensor)
    }

    fn number(&mut self) -> Option<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .ok()
    }

    fn postfix(&mut self) -> Result<Expr, BranchError> {
        let mut e = self.atom()?;
        loop {
            if self.eat('^') {
                if self.eat('*') {
                    e = Expr::Dual(Box::new(e));
                } else {
                    let n = self.number().ok_or_else(|| self.err("expected exponent"))?;
                    e = Expr::Pow(Box::new(e), n);
                }
            } else if self.eat('*') {
                e = Expr::Dual(Box::new(e));
            } else if self.eat('[') {
                let r = match self.number() {
                    Some(r) => r,
                    None => {
                        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                            return Err(self.err("expected twist"));
                        }
                        self.pos += 1;
                        1
                    }
                };
                self.expect(']')?;
                e = Expr::Twist(Box::new(e), r);
            } else {
                return Ok(e);
            }
        }
    }

    fn weight(&mut self) -> Result<Weight, BranchError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a weight"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Weight::parse(&s).map_err(|e| self.err(e.to_string()))
    }

    fn atom(&mut self) -> Result<Expr, BranchError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let first = self.layers()?;
                if self.eat(',') {
                    let mut items = vec![first, self.layers()?];
                    while self.eat(',') {
                        items.push(self.layers()?);
                    }
                    self.expect(')')?;
                    Ok(Expr::Tuple(items))
                } else {
                    self.expect(')')?;
                    Ok(first)
                }
            }
            Some(c @ ('W' | 'T')) => {
                self.pos += 1;
                self.expect('(')?;
                let w = self.weight()?;
                self.expect(')')?;
                Ok(if c == 'W' {
                    Expr::Weyl(w)
                } else {
                    Expr::Tilting(w)
                })
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Irr(self.weight()?)),
            _ => Err(self.err("expected a module")),
        }
    }
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr, BranchError> {
        let mut p = Parser {
            src: s,
            chars: s.chars().collect(),
            pos: 0,
        };
        let e = p.layers()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Character of the module for a group of type `ty` in characteristic `p`.
    pub fn eval(&self, ty: &CartanType, p: u32, data: &IrrData) -> Result<Character, BranchError> {
        let whole = |w: &Weight| -> Result<(), BranchError> {
            if w.rank() != ty.rank() {
                return Err(BranchError::Expr {
                    expr: self.to_string(),
                    msg: format!("weight {} does not have rank {}", w.label(), ty.rank()),
                });
            }
            Ok(())
        };
        Ok(match self {
            Expr::Irr(w) | Expr::Weyl(w) | Expr::Tilting(w) if w.is_zero() => {
                Character::trivial(ty)
            }
            Expr::Irr(w) => {
                whole(w)?;
                data.irreducible(ty, p, w)?
            }
            Expr::Weyl(w) => {
                whole(w)?;
                characters::weyl_character(ty, w)?
            }
            Expr::Tilting(w) => {
                whole(w)?;
                data.tilting(ty, p, w)?
            }
            Expr::Layers(items) | Expr::Sum(items) => {
                let mut c = Character::zero(ty);
                for e in items {
                    c = c.add(&e.eval(ty, p, data)?)?;
                }
                c
            }
            Expr::Tensor(items) => {
                let mut c = Character::trivial(ty);
                for e in items {
                    c = characters::tensor(&c, &e.eval(ty, p, data)?)?;
                }
                c
            }
            Expr::Tuple(items) => {
                let comps = ty.components();
                if comps.len() != items.len() {
                    return Err(BranchError::Expr {
                        expr: self.to_string(),
                        msg: format!(
                            "{} entries for a type with {} components",
                            items.len(),
                            comps.len()
                        ),
                    });
                }
                let mut acc: Option<Character> = None;
                for (t, e) in comps.iter().zip(items) {
                    let c = e.eval(&CartanType::simple(*t), p, data)?;
                    acc = Some(match acc {
                        None => c,
                        Some(a) => characters::outer_tensor(&a, &c),
                    });
                }
                acc.expect("tuples have two or more entries")
            }
            Expr::Pow(e, k) => e.eval(ty, p, data)?.scale(*k as u64),
            Expr::Dual(e) => characters::dual(&e.eval(ty, p, data)?),
            Expr::Twist(e, r) => characters::twist(&e.eval(ty, p, data)?, *r, p),
        })
    }

    /// Top-level socle layers; a single layer for non-layered expressions.
    pub fn layers(&self) -> Vec<&Expr> {
        match self {
            Expr::Layers(items) => items.iter().collect(),
            e => vec![e],
        }
    }

    /// Top-level direct summands, looking through a single pair of parentheses.
    pub fn summands(&self) -> Vec<&Expr> {
        match self {
            Expr::Sum(items) => items.iter().flat_map(|e| e.summands()).collect(),
            Expr::Pow(e, k) if !matches!(**e, Expr::Sum(_)) => {
                std::iter::repeat_n(&**e, *k as usize).collect()
            }
            e => vec![e],
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Expr], sep: &str, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "(")?;
    }
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            write!(f, "{sep}")?;
        }
        write!(f, "{e}")?;
    }
    if wrap {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Irr(w) => write!(f, "{}", w.label()),
            Expr::Weyl(w) => write!(f, "W({})", w.label()),
            Expr::Tilting(w) => write!(f, "T({})", w.label()),
            Expr::Layers(v) => write_list(f, v, "|", true),
            Expr::Sum(v) => write_list(f, v, "+", true),
            Expr::Tensor(v) => write_list(f, v, "⊗", true),
            Expr::Tuple(v) => write_list(f, v, ",", true),
            Expr::Pow(e, k) => write!(f, "{e}^{k}"),
            Expr::Dual(e) => write!(f, "{e}*"),
            Expr::Twist(e, r) => write!(f, "{e}[{r}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(s: &str, t: &str, p: u32) -> u64 {
        let ty = CartanType::parse(t).unwrap();
        Expr::parse(s)
            .unwrap()
            .eval(&ty, p, IrrData::builtin())
            .unwrap()
            .dim_u64()
    }

    #[test]
    fn parses_and_flattens() {
        assert_eq!(dim("100|010|100", "B3", 2), 26);
        assert_eq!(dim("T(100) + 001^2 + 0^2", "B3", 2), 26);
        assert_eq!(dim("(001,001)^2", "B3B3", 2), 128);
        assert_eq!(dim("0|((100,0)+(0,100))|0", "B3B3", 2), 14);
        assert_eq!(dim("(W(100)*)^3", "B3", 2), 21);
        assert_eq!(dim("001⊗001[r]", "B3", 2), 64);
        assert_eq!(
            dim("W(101) + W(101)* + T(101)^4 + T(020) + 0^3", "A3", 2),
            133
        );
    }

    #[test]
    fn dual_and_twist_postfixes() {
        let e = Expr::parse("W(100)^*").unwrap();
        assert_eq!(
            e,
            Expr::Dual(Box::new(Expr::Weyl(Weight::parse("100").unwrap())))
        );
        let e = Expr::parse("100[1]").unwrap();
        assert!(matches!(e, Expr::Twist(_, 1)));
    }

    #[test]
    fn display_round_trips() {
        for s in ["(100|(010+0^2)|(200+100))+T(100)", "(0|100|0)^2", "W(110)*"] {
            let e = Expr::parse(s).unwrap();
            assert_eq!(Expr::parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "100|", "W(100", "(100,", "100 200", "x"] {
            assert!(Expr::parse(s).is_err(), "{s}");
        }
        let ty = CartanType::parse("B3").unwrap();
        assert!(Expr::parse("1000")
            .unwrap()
            .eval(&ty, 2, IrrData::builtin())
            .is_err());
    }
}
