//! Formal characters: Weyl modules via Freudenthal's formula and the usual
//! tensor, exterior, symmetric, twist and dual constructions.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rootdata::{CartanType, RootError, RootSystem, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("weight {weight} has rank {got}, expected {expected}")]
    RankMismatch {
        weight: Weight,
        got: usize,
        expected: usize,
    },
    #[error("characters of different types {0} and {1}")]
    TypeMismatch(CartanType, CartanType),
    #[error("subtraction would make the multiplicity of {0} negative")]
    Negative(Weight),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Weight multiset over the full weight set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character {
    pub ty: CartanType,
    pub mults: BTreeMap<Weight, BigUint>,
}

impl Character {
    pub fn zero(ty: &CartanType) -> Self {
        Character {
            ty: ty.clone(),
            mults: BTreeMap::new(),
        }
    }

    pub fn trivial(ty: &CartanType) -> Self {
        let mut c = Character::zero(ty);
        c.mults.insert(Weight::zero(ty.rank()), BigUint::one());
        c
    }

    pub fn root_system(&self) -> Arc<RootSystem> {
        RootSystem::get(&self.ty).expect("character type is admissible")
    }

    /// Character with the given multiplicities on dominant weights,
    /// extended to full Weyl orbits.
    pub fn from_dominant<I>(ty: &CartanType, dominant: I) -> Result<Self, CharError>
    where
        I: IntoIterator<Item = (Weight, BigUint)>,
    {
        let rs = RootSystem::get(ty)?;
        let mut c = Character::zero(ty);
        for (w, m) in dominant {
            check_rank(&rs, &w)?;
            if !w.is_dominant() {
                return Err(CharError::NotDominant(w));
            }
            if m.is_zero() {
                continue;
            }
            for v in orbit(&rs, &w) {
                *c.mults.entry(v).or_default() += &m;
            }
        }
        Ok(c)
    }

    pub fn dim(&self) -> BigUint {
        self.mults.values().sum()
    }

    /// Dimension as `u64`; panics past 2^64.
    pub fn dim_u64(&self) -> u64 {
        self.dim().to_u64().expect("dimension fits in u64")
    }

    pub fn mult(&self, w: &Weight) -> BigUint {
        self.mults.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    /// Multiplicities on dominant weights only.
    pub fn dominant(&self) -> BTreeMap<Weight, BigUint> {
        self.mults
            .iter()
            .filter(|(w, _)| w.is_dominant())
            .map(|(w, m)| (w.clone(), m.clone()))
            .collect()
    }

    pub fn add(&self, o: &Character) -> Result<Character, CharError> {
        self.same_type(o)?;
        let mut c = self.clone();
        for (w, m) in &o.mults {
            *c.mults.entry(w.clone()).or_default() += m;
        }
        Ok(c)
    }

    pub fn scale(&self, k: u64) -> Character {
        let mut c = Character::zero(&self.ty);
        if k == 0 {
            return c;
        }
        c.mults = self.mults.iter().map(|(w, m)| (w.clone(), m * k)).collect();
        c
    }

    /// Exact difference; fails if some multiplicity would go negative.
    pub fn checked_sub(&self, o: &Character) -> Result<Character, CharError> {
        self.same_type(o)?;
        let mut c = self.clone();
        for (w, m) in &o.mults {
            let cur = c.mults.get(w).cloned().unwrap_or_default();
            if cur < *m {
                return Err(CharError::Negative(w.clone()));
            }
            let rest = cur - m;
            if rest.is_zero() {
                c.mults.remove(w);
            } else {
                c.mults.insert(w.clone(), rest);
            }
        }
        Ok(c)
    }

    /// Multiplicity is constant on Weyl orbits.
    pub fn is_weyl_invariant(&self) -> bool {
        let rs = self.root_system();
        self.mults.iter().all(|(w, m)| {
            (0..rs.rank()).all(|i| self.mults.get(&rs.simple_reflect_weight(i, w)) == Some(m))
        })
    }

    fn same_type(&self, o: &Character) -> Result<(), CharError> {
        if self.ty != o.ty {
            Err(CharError::TypeMismatch(self.ty.clone(), o.ty.clone()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, m) in &self.mults {
            writeln!(f, "{w} {m}")?;
        }
        write!(f, "dim {}", self.dim())
    }
}

fn check_rank(rs: &RootSystem, w: &Weight) -> Result<(), CharError> {
    if w.rank() != rs.rank() {
        return Err(CharError::RankMismatch {
            weight: w.clone(),
            got: w.rank(),
            expected: rs.rank(),
        });
    }
    Ok(())
}

/// Weyl orbit of a weight.
pub fn orbit(rs: &RootSystem, w: &Weight) -> Vec<Weight> {
    let mut seen = std::collections::BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(v) = queue.pop_front() {
        for i in 0..rs.rank() {
            if v.0[i] == 0 {
                continue;
            }
            let u = rs.simple_reflect_weight(i, &v);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    seen.into_iter().collect()
}

/// `Σ_{α>0} <w, α^∨>`, strictly increasing along the dominance order.
fn dominance_height(rs: &RootSystem, w: &Weight) -> i64 {
    rs.positives().iter().map(|a| rs.pairing(w, a) as i64).sum()
}

/// Weyl dimension formula.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> BigUint {
    let lr = lambda.add(&rs.rho());
    let rho = rs.rho();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in rs.positives() {
        num *= rs.weight_root_inner(&lr, a);
        den *= rs.weight_root_inner(&rho, a);
    }
    (num / den)
        .to_biguint()
        .expect("dominant weight has positive dimension")
}

/// Dominant-weight multiplicities of the Weyl module by Freudenthal's
/// recursion.
pub fn freudenthal(
    rs: &RootSystem,
    lambda: &Weight,
) -> Result<BTreeMap<Weight, BigUint>, CharError> {
    check_rank(rs, lambda)?;
    if !lambda.is_dominant() {
        return Err(CharError::NotDominant(lambda.clone()));
    }
    let n = rs.rank();
    let pos_w: Vec<Weight> = rs
        .positives()
        .iter()
        .map(|a| rs.root_to_weight(a))
        .collect();
    // Dominant weights below λ with λ - μ in root coordinates.
    let mut offset: HashMap<Weight, Vec<i32>> = HashMap::new();
    offset.insert(lambda.clone(), vec![0; n]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        let off = offset[&mu].clone();
        for (a, aw) in rs.positives().iter().zip(&pos_w) {
            let nu = mu.sub(aw);
            if nu.is_dominant() && !offset.contains_key(&nu) {
                let o: Vec<i32> = off.iter().zip(a.coeffs()).map(|(x, y)| x + y).collect();
                offset.insert(nu.clone(), o);
                queue.push_back(nu);
            }
        }
    }
    let mut order: Vec<Weight> = offset.keys().cloned().collect();
    order.sort_by_key(|w| (offset[w].iter().sum::<i32>(), w.clone()));

    let two_rho = rs.rho().scale(2);
    let half_norm: Vec<i32> = (0..n).map(|i| rs.gram()[i][i] / 2).collect();
    let mut mult: HashMap<Weight, BigUint> = HashMap::new();
    for mu in order {
        if mu == *lambda {
            mult.insert(mu, BigUint::one());
            continue;
        }
        let off = &offset[&mu];
        let s = lambda.add(&mu).add(&two_rho);
        let den: i64 = (0..n)
            .map(|i| (off[i] * s.0[i] * half_norm[i]) as i64)
            .sum();
        let mut num = BigInt::zero();
        for (a, aw) in rs.positives().iter().zip(&pos_w) {
            let mut v = mu.add(aw);
            loop {
                let d = rs.dominant_conjugate(&v);
                let Some(m) = mult.get(&d) else { break };
                num += BigInt::from(m.clone()) * rs.weight_root_inner(&v, a);
                v = v.add(aw);
            }
        }
        num *= 2;
        debug_assert!(den > 0);
        let m = &num / den;
        debug_assert!((&m * den) == num);
        if m.is_positive() {
            mult.insert(mu, m.to_biguint().expect("positive"));
        }
    }
    Ok(mult.into_iter().collect())
}

fn weyl_cache() -> &'static Mutex<HashMap<(CartanType, Weight), Character>> {
    static CACHE: OnceLock<Mutex<HashMap<(CartanType, Weight), Character>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Character of the Weyl module `W(λ)`.
pub fn weyl_character(ty: &CartanType, lambda: &Weight) -> Result<Character, CharError> {
    let key = (ty.clone(), lambda.clone());
    if let Some(c) = weyl_cache().lock().expect("cache poisoned").get(&key) {
        return Ok(c.clone());
    }
    let rs = RootSystem::get(ty)?;
    let dom = freudenthal(&rs, lambda)?;
    let c = Character::from_dominant(ty, dom)?;
    weyl_cache()
        .lock()
        .expect("cache poisoned")
        .insert(key, c.clone());
    Ok(c)
}

pub fn tensor(a: &Character, b: &Character) -> Result<Character, CharError> {
    a.same_type(b)?;
    let mut c = Character::zero(&a.ty);
    for (w1, m1) in &a.mults {
        for (w2, m2) in &b.mults {
            *c.mults.entry(w1.add(w2)).or_default() += m1 * m2;
        }
    }
    Ok(c)
}

/// Outer tensor product for a product group; weights concatenate.
pub fn outer_tensor(a: &Character, b: &Character) -> Character {
    let mut comps = a.ty.0.clone();
    comps.extend_from_slice(&b.ty.0);
    let mut c = Character::zero(&CartanType(comps));
    for (w1, m1) in &a.mults {
        for (w2, m2) in &b.mults {
            let mut w = w1.0.clone();
            w.extend_from_slice(&w2.0);
            *c.mults.entry(Weight(w)).or_default() += m1 * m2;
        }
    }
    c
}

fn binomial(n: &BigUint, k: u64) -> BigUint {
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Truncated product `Π_w (Σ_j coeff(m_w, j) t^j e^{jw})`, degree `k`.
fn power_series(c: &Character, k: usize, coeff: impl Fn(&BigUint, u64) -> BigUint) -> Character {
    let mut layers: Vec<BTreeMap<Weight, BigUint>> = vec![BTreeMap::new(); k + 1];
    layers[0].insert(Weight::zero(c.ty.rank()), BigUint::one());
    for (w, m) in &c.mults {
        let mut next: Vec<BTreeMap<Weight, BigUint>> = vec![BTreeMap::new(); k + 1];
        for (d, layer) in layers.iter().enumerate() {
            for (v, a) in layer {
                for j in 0..=(k - d) {
                    let cf = coeff(m, j as u64);
                    if cf.is_zero() {
                        break;
                    }
                    *next[d + j].entry(v.add(&w.scale(j as i32))).or_default() += a * cf;
                }
            }
        }
        layers = next;
    }
    Character {
        ty: c.ty.clone(),
        mults: layers.pop().unwrap_or_default(),
    }
}

pub fn exterior_power(c: &Character, k: usize) -> Character {
    power_series(c, k, |m, j| {
        if BigUint::from(j) > *m {
            BigUint::zero()
        } else {
            binomial(m, j)
        }
    })
}

pub fn sym_power(c: &Character, k: usize) -> Character {
    power_series(c, k, |m, j| {
        if j == 0 {
            BigUint::one()
        } else {
            binomial(&(m + j - 1u32), j)
        }
    })
}

/// Frobenius twist `V^{[r]}`: weights scaled by `p^r`.
pub fn twist(c: &Character, r: u32, p: u32) -> Character {
    let f = (p as i32).pow(r);
    Character {
        ty: c.ty.clone(),
        mults: c
            .mults
            .iter()
            .map(|(w, m)| (w.scale(f), m.clone()))
            .collect(),
    }
}

/// Dual module; on a Weyl-invariant multiset this is `w ↦ -w`.
pub fn dual(c: &Character) -> Character {
    Character {
        ty: c.ty.clone(),
        mults: c.mults.iter().map(|(w, m)| (w.neg(), m.clone())).collect(),
    }
}

/// Expresses a character as an integer combination of Weyl characters.
pub fn decompose_weyl(c: &Character) -> Result<BTreeMap<Weight, BigInt>, CharError> {
    let rs = c.root_system();
    let mut rest: BTreeMap<Weight, BigInt> = c
        .mults
        .iter()
        .filter(|(w, _)| w.is_dominant())
        .map(|(w, m)| (w.clone(), BigInt::from(m.clone())))
        .collect();
    let mut out = BTreeMap::new();
    loop {
        let top = rest
            .keys()
            .max_by_key(|w| (dominance_height(&rs, w), (*w).clone()))
            .cloned();
        let Some(top) = top else { break };
        let k = rest[&top].clone();
        for (w, m) in freudenthal(&rs, &top)? {
            *rest.entry(w).or_default() -= &k * BigInt::from(m);
        }
        rest.retain(|_, m| !m.is_zero());
        out.insert(top, k);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CartanType {
        CartanType::parse(s).unwrap()
    }

    fn w(s: &str) -> Weight {
        Weight::parse(s).unwrap()
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(weyl_character(&ty("B3"), &w("101")).unwrap().dim_u64(), 48);
        assert_eq!(
            weyl_character(&ty("E7"), &w("0000001")).unwrap().dim_u64(),
            56
        );
        let a3 = weyl_character(&ty("A3"), &w("010")).unwrap();
        assert_eq!(a3.dim_u64(), 6);
        assert!(a3.mults.values().all(|m| m.is_one()));
        assert_eq!(
            weyl_character(&ty("E8"), &w("10000000")).unwrap().dim_u64(),
            3875
        );
        assert_eq!(
            weyl_character(&ty("E8"), &w("00000001"))
                .unwrap()
                .mult(&w("00000000")),
            BigUint::from(8u32)
        );
    }

    #[test]
    fn b3_spin_exterior_powers() {
        let spin = weyl_character(&ty("B3"), &w("001")).unwrap();
        let l2 = exterior_power(&spin, 2);
        assert_eq!(l2.dim_u64(), 28);
        let d = decompose_weyl(&l2).unwrap();
        assert_eq!(d.get(&w("010")), Some(&BigInt::from(1)));
        assert_eq!(d.get(&w("100")), Some(&BigInt::from(1)));
        assert_eq!(d.len(), 2);
        let l3 = exterior_power(&spin, 3);
        let d3 = decompose_weyl(&l3).unwrap();
        assert_eq!(d3.len(), 2);
        assert_eq!(d3[&w("101")], BigInt::from(1));
        assert_eq!(d3[&w("001")], BigInt::from(1));
    }

    #[test]
    fn twist_and_dual() {
        let v = weyl_character(&ty("A3"), &w("100")).unwrap();
        assert_eq!(dual(&v), weyl_character(&ty("A3"), &w("001")).unwrap());
        assert_eq!(twist(&v, 0, 2), v);
        let c3 = weyl_character(&ty("C3"), &w("100")).unwrap();
        assert!(twist(&c3, 1, 2).mults.contains_key(&w("200")));
    }

    #[test]
    fn sym_square_a1() {
        let v = weyl_character(&ty("A1"), &w("1")).unwrap();
        assert_eq!(
            sym_power(&v, 2),
            weyl_character(&ty("A1"), &w("2")).unwrap()
        );
        assert_eq!(sym_power(&v, 5).dim_u64(), 6);
    }
}
