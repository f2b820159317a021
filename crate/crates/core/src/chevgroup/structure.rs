//! Chevalley structure constants `[e_r, e_s] = N(r,s) e_{r+s}`.
//!
//! Signs are fixed by declaring `N(α, ξ-α) = p+1 > 0` on the extraspecial pair of
//! each non-simple positive root ξ (α the first simple root with ξ-α a root),
//! together with `N(-r,-s) = -N(r,s)`. All other constants follow from the
//! standard identities, computed by induction on height.

use std::sync::Arc;

use crate::rootdata::{Root, RootSystem};

use super::ChevError;

#[derive(Debug)]
pub struct StructureConstants {
    rs: Arc<RootSystem>,
    nroots: usize,
    /// `sum[r][s]` = index of r+s if it is a root.
    sum: Vec<Vec<Option<u16>>>,
    n: Vec<Vec<i32>>,
    norms: Vec<i32>,
}

/// One factor `x_{i r + j s}(C · t^i u^j)` of a commutator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommTerm {
    pub i: u32,
    pub j: u32,
    pub root: usize,
    pub coeff: i64,
}

impl StructureConstants {
    pub fn new(rs: Arc<RootSystem>) -> Result<Self, ChevError> {
        let roots = rs.roots();
        let nroots = roots.len();
        let npos = rs.num_positive();
        let mut sum = vec![vec![None; nroots]; nroots];
        for (a, ra) in roots.iter().enumerate() {
            for (b, rb) in roots.iter().enumerate() {
                if let Some(c) = rs.index_of(&ra.add(rb)) {
                    sum[a][b] = Some(c as u16);
                }
            }
        }
        let norms: Vec<i32> = roots.iter().map(|r| rs.norm(r)).collect();
        let mut sc = StructureConstants {
            rs: rs.clone(),
            nroots,
            sum,
            n: vec![vec![0; nroots]; nroots],
            norms,
        };
        let neg = |i: usize| if i < npos { i + npos } else { i - npos };
        let mut known = vec![vec![false; nroots]; nroots];

        for xi in 0..npos {
            let pairs: Vec<(usize, usize)> = (0..npos)
                .flat_map(|r| (0..npos).map(move |s| (r, s)))
                .filter(|&(r, s)| sc.sum[r][s] == Some(xi as u16))
                .collect();
            if pairs.is_empty() {
                continue;
            }
            let alpha = (0..rs.rank())
                .find(|&i| pairs.iter().any(|&(r, _)| r == i))
                .ok_or_else(|| {
                    ChevError::Structure(format!("no simple summand of {}", roots[xi].label()))
                })?;
            let beta = pairs
                .iter()
                .find(|&&(r, _)| r == alpha)
                .expect("found above")
                .1;
            let p = sc.string_below(beta, alpha) as i32;
            sc.set(alpha, beta, p + 1, &mut known);
            sc.set(neg(alpha), neg(beta), -(p + 1), &mut known);
            let xi_norm = sc.norms[xi] as i64;
            let n_neg_ab = -(p + 1) as i64;
            for &(r, s) in &pairs {
                if known[r][s] {
                    continue;
                }
                // Four-term identity on r + s - α - β = 0.
                let mut acc = num_rational::Ratio::<i64>::from_integer(0);
                let (ma, mb) = (neg(alpha), neg(beta));
                if let Some(d) = sc.sum[s][ma] {
                    let num = sc.lookup(s, ma, &known)? as i64 * sc.lookup(r, mb, &known)? as i64;
                    acc += num_rational::Ratio::new(num, sc.norms[d as usize] as i64);
                }
                if let Some(d) = sc.sum[ma][r] {
                    let num = sc.lookup(ma, r, &known)? as i64 * sc.lookup(s, mb, &known)? as i64;
                    acc += num_rational::Ratio::new(num, sc.norms[d as usize] as i64);
                }
                let v = -acc * xi_norm / n_neg_ab;
                if !v.is_integer() {
                    return Err(ChevError::Structure(format!(
                        "non-integral constant for {} + {}",
                        roots[r].label(),
                        roots[s].label()
                    )));
                }
                let v = v.to_integer() as i32;
                sc.set(r, s, v, &mut known);
                sc.set(neg(r), neg(s), -v, &mut known);
            }
        }
        // Mixed-sign pairs from the three-term identity.
        for r in 0..nroots {
            for s in 0..nroots {
                if sc.sum[r][s].is_some() && !known[r][s] {
                    let v = sc.lookup(r, s, &known)?;
                    sc.n[r][s] = v;
                }
            }
        }
        Ok(sc)
    }

    fn set(&mut self, r: usize, s: usize, v: i32, known: &mut [Vec<bool>]) {
        self.n[r][s] = v;
        self.n[s][r] = -v;
        known[r][s] = true;
        known[s][r] = true;
    }

    /// Largest k with `b - k a` a root.
    fn string_below(&self, b: usize, a: usize) -> usize {
        let roots = self.rs.roots();
        let mut k = 0;
        let mut cur = roots[b];
        loop {
            cur = cur.sub(&roots[a]);
            if !self.rs.contains(&cur) {
                return k;
            }
            k += 1;
        }
    }

    /// Constant for any pair, reducing mixed signs to same-sign pairs via
    /// `N(r,s)/|t|² = N(s,t)/|r|² = N(t,r)/|s|²` for r + s + t = 0.
    fn lookup(&self, r: usize, s: usize, known: &[Vec<bool>]) -> Result<i32, ChevError> {
        let Some(rs_sum) = self.sum[r][s] else {
            return Ok(0);
        };
        if known[r][s] {
            return Ok(self.n[r][s]);
        }
        let npos = self.rs.num_positive();
        let neg = |i: usize| if i < npos { i + npos } else { i - npos };
        let t = neg(rs_sum as usize);
        let positive = |i: usize| i < npos;
        // Pair t with whichever of r, s has its sign.
        let (num, den) = if positive(s) == positive(t) {
            (
                self.norms[t] as i64 * self.known_same_sign(s, t, known)? as i64,
                self.norms[r] as i64,
            )
        } else {
            (
                self.norms[t] as i64 * self.known_same_sign(t, r, known)? as i64,
                self.norms[s] as i64,
            )
        };
        if num % den != 0 {
            return Err(ChevError::Structure("non-integral mixed constant".into()));
        }
        Ok((num / den) as i32)
    }

    fn known_same_sign(&self, a: usize, b: usize, known: &[Vec<bool>]) -> Result<i32, ChevError> {
        if !known[a][b] {
            return Err(ChevError::Structure(format!(
                "constant for {} + {} needed before it is defined",
                self.rs.roots()[a].label(),
                self.rs.roots()[b].label()
            )));
        }
        Ok(self.n[a][b])
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn num_roots(&self) -> usize {
        self.nroots
    }

    /// `N(r, s)` by root index; zero when r+s is not a root.
    pub fn n(&self, r: usize, s: usize) -> i32 {
        self.n[r][s]
    }

    pub fn n_roots(&self, r: &Root, s: &Root) -> Option<i32> {
        Some(self.n(self.rs.index_of(r)?, self.rs.index_of(s)?))
    }

    pub fn sum_index(&self, r: usize, s: usize) -> Option<usize> {
        self.sum[r][s].map(|x| x as usize)
    }

    pub fn norm(&self, r: usize) -> i32 {
        self.norms[r]
    }

    pub fn neg_index(&self, r: usize) -> usize {
        let npos = self.rs.num_positive();
        if r < npos {
            r + npos
        } else {
            r - npos
        }
    }

    /// `M(r,s,i) = N(r,s) N(r,r+s) ⋯ N(r,(i-1)r+s) / i!`.
    fn m(&self, r: usize, s: usize, i: u32) -> Option<i64> {
        let mut prod = 1i64;
        let mut cur = s;
        for _ in 0..i {
            let next = self.sum_index(r, cur)?;
            prod *= self.n(r, cur) as i64;
            cur = next;
        }
        let fact: i64 = (1..=i as i64).product();
        debug_assert_eq!(prod % fact, 0);
        Some(prod / fact)
    }

    /// Factors of `x_s(u)^{-1} x_r(t)^{-1} x_s(u) x_r(t)`, each `x_{ir+js}(C (-t)^i u^j)`,
    /// in order of increasing `i + j`.
    pub fn commutator(&self, r: usize, s: usize) -> Vec<CommTerm> {
        let roots = self.rs.roots();
        let (rr, sr) = (roots[r], roots[s]);
        let mut out = Vec::new();
        if r == self.neg_index(s) || r == s {
            return out;
        }
        for total in 2..=5u32 {
            for i in 1..total {
                let j = total - i;
                let target = rr.scale(i as i32).add(&sr.scale(j as i32));
                let Some(root) = self.rs.index_of(&target) else {
                    continue;
                };
                let c = match (i, j) {
                    (i, 1) => self.m(r, s, i),
                    (1, j) => self.m(s, r, j).map(|m| if j % 2 == 0 { m } else { -m }),
                    (3, 2) => self
                        .sum_index(r, s)
                        .and_then(|rs_| self.m(rs_, r, 2))
                        .map(|m| m / 3),
                    (2, 3) => self
                        .sum_index(r, s)
                        .and_then(|rs_| self.m(rs_, s, 2))
                        .map(|m| -2 * m / 3),
                    _ => None,
                };
                if let Some(coeff) = c.filter(|&c| c != 0) {
                    out.push(CommTerm { i, j, root, coeff });
                }
            }
        }
        out
    }

    /// Checks the Jacobi identity on every triple of root vectors, using the
    /// bracket of the Chevalley basis. Returns the first failing triple.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let alg = super::adjoint::AdjointData::integral(self);
        let nr = self.nroots;
        for a in 0..nr {
            for b in (a + 1)..nr {
                for c in (b + 1)..nr {
                    let x = alg.basis_root(a);
                    let y = alg.basis_root(b);
                    let z = alg.basis_root(c);
                    let t1 = alg.bracket(&x, &alg.bracket(&y, &z));
                    let t2 = alg.bracket(&y, &alg.bracket(&z, &x));
                    let t3 = alg.bracket(&z, &alg.bracket(&x, &y));
                    if (0..alg.dim()).any(|k| t1[k] + t2[k] + t3[k] != 0) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}
