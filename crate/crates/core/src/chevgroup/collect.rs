//! Collection of words in positive root elements into the normal form
//! `Π x_γ(c_γ)` over positive roots in canonical order.

use std::fmt;

use super::field::{Elem, Gf};
use super::poly::Poly;
use super::structure::StructureConstants;
use super::ChevError;

/// Coefficient ring for collection.
pub trait Ring {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut out = self.from_int(1);
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }
}

impl Ring for Gf {
    type Elem = Elem;
    fn zero(&self) -> Elem {
        0
    }
    fn from_int(&self, n: i64) -> Elem {
        Gf::from_int(self, n)
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Gf::add(self, *a, *b)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Gf::mul(self, *a, *b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        Gf::neg(self, *a)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        *a == 0
    }
}

/// Polynomials over GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub p: u32,
}

impl Ring for PolyRing {
    type Elem = Poly;
    fn zero(&self) -> Poly {
        Poly::zero(self.p)
    }
    fn from_int(&self, n: i64) -> Poly {
        Poly::constant(self.p, n)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}

/// Which inversion to resolve first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Rewrite a word of positive root elements `x_γ(c)` (root index, coefficient)
/// into normal form: strictly increasing root index, no zero coefficients.
pub fn collect<R: Ring>(
    sc: &StructureConstants,
    ring: &R,
    word: &[(usize, R::Elem)],
    strategy: Strategy,
) -> Result<Vec<(usize, R::Elem)>, ChevError> {
    let npos = sc.root_system().num_positive();
    if let Some(&(r, _)) = word.iter().find(|(r, _)| *r >= npos) {
        return Err(ChevError::Word(format!(
            "collection needs positive roots, found {}",
            sc.root_system().roots()[r].label()
        )));
    }
    let mut w: Vec<(usize, R::Elem)> = word.to_vec();
    loop {
        normalize(ring, &mut w);
        let inversions = (0..w.len().saturating_sub(1)).filter(|&i| w[i].0 > w[i + 1].0);
        let pos = match strategy {
            Strategy::Leftmost => inversions.min(),
            Strategy::Rightmost => inversions.max(),
        };
        let Some(i) = pos else { return Ok(w) };
        let (s, u) = w[i].clone();
        let (r, t) = w[i + 1].clone();
        // x_s(u) x_r(t) = x_r(t) x_s(u) [x_s(u), x_r(t)]
        let mut repl = vec![(r, t.clone()), (s, u.clone())];
        let mt = ring.neg(&t);
        for term in sc.commutator(r, s) {
            let c = ring.mul(
                &ring.from_int(term.coeff),
                &ring.mul(&ring.pow(&mt, term.i), &ring.pow(&u, term.j)),
            );
            repl.push((term.root, c));
        }
        w.splice(i..i + 2, repl);
    }
}

fn normalize<R: Ring>(ring: &R, w: &mut Vec<(usize, R::Elem)>) {
    let mut out: Vec<(usize, R::Elem)> = Vec::with_capacity(w.len());
    for (r, c) in w.drain(..) {
        if ring.is_zero(&c) {
            continue;
        }
        match out.last_mut() {
            Some((lr, lc)) if *lr == r => {
                *lc = ring.add(lc, &c);
                if ring.is_zero(lc) {
                    out.pop();
                }
            }
            _ => out.push((r, c)),
        }
    }
    *w = out;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootSystem;

    #[test]
    fn a2_commutator_over_gf4() {
        let sc = StructureConstants::new(RootSystem::of("A2").unwrap()).unwrap();
        let f = Gf::of_order(4).unwrap();
        for t in f.nonzero() {
            for u in f.nonzero() {
                let w = [(1, u), (0, t)];
                let out = collect(&sc, &f, &w, Strategy::Leftmost).unwrap();
                assert_eq!(out, vec![(0, t), (1, u), (2, f.mul(t, u))]);
            }
        }
    }

    #[test]
    fn commuting_letters_are_only_reordered() {
        let sc = StructureConstants::new(RootSystem::of("A3").unwrap()).unwrap();
        let ring = PolyRing { p: 3 };
        let (a, b) = (Poly::var(3, 0), Poly::var(3, 1));
        let out = collect(
            &sc,
            &ring,
            &[(2, a.clone()), (0, b.clone())],
            Strategy::Rightmost,
        )
        .unwrap();
        assert_eq!(out, vec![(0, b), (2, a)]);
    }

    #[test]
    fn negative_letters_are_rejected() {
        let sc = StructureConstants::new(RootSystem::of("A2").unwrap()).unwrap();
        let f = Gf::of_order(2).unwrap();
        assert!(collect(&sc, &f, &[(3, 1)], Strategy::Leftmost).is_err());
    }

    #[test]
    fn inverse_letters_cancel() {
        let sc = StructureConstants::new(RootSystem::of("G2").unwrap()).unwrap();
        let f = Gf::of_order(9).unwrap();
        let g = f.generator();
        let w = [(0, g), (1, 1), (0, f.neg(g)), (1, f.neg(1))];
        let direct = collect(&sc, &f, &w, Strategy::Leftmost).unwrap();
        let other = collect(&sc, &f, &w, Strategy::Rightmost).unwrap();
        assert_eq!(direct, other);
        assert!(!direct.is_empty());
    }
}
