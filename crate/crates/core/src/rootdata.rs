//! Root systems with Bourbaki numbering, weights and pairings.
//!
//! Roots live in simple-root coordinates and weights in fundamental-weight
//! coordinates. Nodes are indexed from 0 internally; labels and node lists
//! read from text use the 1-based Bourbaki numbers.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

pub const MAX_RANK: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("inadmissible type {family}{rank}")]
    Inadmissible { family: char, rank: usize },
    #[error("cannot parse type '{0}'")]
    BadTypeName(String),
    #[error("total rank {0} exceeds {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("label '{label}' does not have {rank} digits")]
    LabelLength { label: String, rank: usize },
    #[error("malformed label '{0}'")]
    BadLabel(String),
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("node {node} out of range for rank {rank}")]
    BadNode { node: usize, rank: usize },
}

/// A simple Lie type such as `E8` or `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LieType {
    pub family: char,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: char, rank: usize) -> Result<Self, RootError> {
        let ok = match family {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 3,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if !ok {
            return Err(RootError::Inadmissible { family, rank });
        }
        if rank > MAX_RANK {
            return Err(RootError::RankTooLarge(rank));
        }
        Ok(LieType { family, rank })
    }

    /// Symmetrized Gram matrix of the simple roots, scaled so that all
    /// entries are integers and the shortest roots have norm 2.
    fn gram(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut b = vec![vec![0; n]; n];
        let edge = |b: &mut Vec<Vec<i32>>, i: usize, j: usize, v: i32| {
            b[i][j] = v;
            b[j][i] = v;
        };
        match self.family {
            'A' => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                for i in 1..n {
                    edge(&mut b, i - 1, i, -1);
                }
            }
            'B' => {
                for i in 0..n {
                    b[i][i] = if i + 1 == n { 2 } else { 4 };
                }
                for i in 1..n {
                    edge(&mut b, i - 1, i, -2);
                }
            }
            'C' => {
                for i in 0..n {
                    b[i][i] = if i + 1 == n { 4 } else { 2 };
                }
                for i in 1..n {
                    edge(&mut b, i - 1, i, if i + 1 == n { -2 } else { -1 });
                }
            }
            'D' => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                for i in 1..n - 1 {
                    edge(&mut b, i - 1, i, -1);
                }
                edge(&mut b, n - 3, n - 1, -1);
            }
            'E' => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                edge(&mut b, 0, 2, -1);
                edge(&mut b, 1, 3, -1);
                for i in 3..n {
                    edge(&mut b, i - 1, i, -1);
                }
            }
            'F' => {
                b[0][0] = 4;
                b[1][1] = 4;
                b[2][2] = 2;
                b[3][3] = 2;
                edge(&mut b, 0, 1, -2);
                edge(&mut b, 1, 2, -2);
                edge(&mut b, 2, 3, -1);
            }
            'G' => {
                b[0][0] = 2;
                b[1][1] = 6;
                edge(&mut b, 0, 1, -3);
            }
            _ => unreachable!(),
        }
        b
    }

    /// Number of roots of the simple type.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            'A' => n * (n + 1),
            'B' | 'C' => 2 * n * n,
            'D' => 2 * n * (n - 1),
            'E' => [72, 126, 240][n - 6],
            'F' => 48,
            'G' => 12,
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A possibly reducible type, written as a product of simple components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CartanType(pub Vec<LieType>);

impl CartanType {
    pub fn simple(t: LieType) -> Self {
        CartanType(vec![t])
    }

    /// Parses `E8`, `A3A3`, `A3xA3`, `B3^2`, `A2^3`.
    pub fn parse(s: &str) -> Result<Self, RootError> {
        let bad = || RootError::BadTypeName(s.to_string());
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut comps = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c == 'x' || c == '*' || c == '.' {
                i += 1;
                continue;
            }
            if c == '^' {
                let start = i + 1;
                i = start;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let k: usize = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad())?;
                let last = *comps.last().ok_or_else(bad)?;
                for _ in 1..k {
                    comps.push(last);
                }
                continue;
            }
            if !c.is_ascii_uppercase() {
                return Err(bad());
            }
            let start = i + 1;
            i = start;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let rank: usize = chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| bad())?;
            comps.push(LieType::new(c, rank)?);
        }
        if comps.is_empty() {
            return Err(bad());
        }
        let total: usize = comps.iter().map(|t| t.rank).sum();
        if total > MAX_RANK {
            return Err(RootError::RankTooLarge(total));
        }
        Ok(CartanType(comps))
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank).sum()
    }

    pub fn components(&self) -> &[LieType] {
        &self.0
    }

    pub fn is_simple(&self) -> bool {
        self.0.len() == 1
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for CartanType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        CartanType::parse(s)
    }
}

/// Integer coordinates over the simple roots.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coeffs: [i32; MAX_RANK],
    rank: u8,
}

impl Root {
    /// Raw coordinate vector; membership is checked by [`RootSystem::root`].
    pub(crate) fn raw(c: &[i32]) -> Root {
        let mut coeffs = [0; MAX_RANK];
        coeffs[..c.len()].copy_from_slice(c);
        Root {
            coeffs,
            rank: c.len() as u8,
        }
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs[..self.rank as usize]
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn height(&self) -> i32 {
        self.coeffs().iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs().iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        let mut r = *self;
        r.coeffs.iter_mut().for_each(|c| *c = -*c);
        r
    }

    /// Coordinate sum; the result need not be a root.
    pub fn add(&self, other: &Root) -> Root {
        let mut r = *self;
        for i in 0..MAX_RANK {
            r.coeffs[i] += other.coeffs[i];
        }
        r
    }

    pub fn sub(&self, other: &Root) -> Root {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i32) -> Root {
        let mut r = *self;
        r.coeffs.iter_mut().for_each(|c| *c *= k);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Digit-string label, `-` prefixed for negative roots.
    pub fn label(&self) -> String {
        let neg = !self.is_positive();
        let digits: String = self
            .coeffs()
            .iter()
            .map(|c| char::from_digit(c.unsigned_abs(), 10).unwrap_or('?'))
            .collect();
        if neg {
            format!("-{digits}")
        } else {
            digits
        }
    }
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Integer coordinates over the fundamental weights.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    /// Parses a compact digit string (`0100`) or a space/comma separated
    /// list (`0 -1 2`).
    pub fn parse(s: &str) -> Result<Weight, RootError> {
        let s = s.trim();
        if s.contains([' ', ',']) {
            let v: Result<Vec<i32>, _> = s
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i32>())
                .collect();
            return v
                .map(Weight)
                .map_err(|_| RootError::BadLabel(s.to_string()));
        }
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as i32))
            .collect::<Option<Vec<_>>>()
            .filter(|v| !v.is_empty())
            .map(Weight)
            .ok_or_else(|| RootError::BadLabel(s.to_string()))
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }

    /// Compact digit string when every coordinate is a single digit,
    /// otherwise a space-separated list.
    pub fn label(&self) -> String {
        if self.0.iter().all(|c| (0..10).contains(c)) {
            self.0.iter().map(|c| c.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Converts 1-based node numbers to a sorted 0-based node list.
pub fn nodes(one_based: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = one_based.iter().map(|i| i - 1).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Parses a node list such as `13456` or `1,3,4` (1-based).
pub fn parse_nodes(s: &str, rank: usize) -> Result<Vec<usize>, RootError> {
    let s = s.trim();
    let raw: Vec<usize> = if s.is_empty() || s == "-" {
        Vec::new()
    } else if s.contains(',') {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| RootError::BadLabel(s.to_string()))
            })
            .collect::<Result<_, _>>()?
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| RootError::BadLabel(s.to_string()))
            })
            .collect::<Result<_, _>>()?
    };
    for &n in &raw {
        if n == 0 || n > rank {
            return Err(RootError::BadNode { node: n, rank });
        }
    }
    Ok(nodes(&raw))
}

#[derive(Debug)]
pub struct RootSystem {
    ty: CartanType,
    rank: usize,
    gram: Vec<Vec<i32>>,
    cartan: Vec<Vec<i32>>,
    roots: Vec<Root>,
    npos: usize,
    index: HashMap<Root, usize>,
    highest: Vec<Root>,
    comp_of: Vec<usize>,
}

impl RootSystem {
    pub fn build(ty: &CartanType) -> Result<RootSystem, RootError> {
        let rank = ty.rank();
        if rank > MAX_RANK {
            return Err(RootError::RankTooLarge(rank));
        }
        let mut gram = vec![vec![0; rank]; rank];
        let mut comp_of = Vec::with_capacity(rank);
        let mut off = 0;
        for (ci, t) in ty.0.iter().enumerate() {
            let g = t.gram();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    gram[off + i][off + j] = g[i][j];
                }
                comp_of.push(ci);
            }
            off += t.rank;
        }
        let cartan: Vec<Vec<i32>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();

        let mut seen: HashSet<Root> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..rank {
            let mut c = vec![0; rank];
            c[i] = 1;
            let r = Root::raw(&c);
            seen.insert(r);
            queue.push_back(r);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..rank {
                let k: i32 = (0..rank).map(|j| b.coeffs[j] * cartan[j][i]).sum();
                if k == 0 {
                    continue;
                }
                let mut r = b;
                r.coeffs[i] -= k;
                if seen.insert(r) {
                    queue.push_back(r);
                }
            }
        }
        let mut pos: Vec<Root> = seen.into_iter().filter(|r| r.is_positive()).collect();
        // Height first; within a height, larger coefficient vectors first so that
        // the simple roots come out as α_1, …, α_n.
        pos.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| b.coeffs().cmp(a.coeffs()))
        });
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.neg()));
        let index = roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();

        let highest = (0..ty.0.len())
            .map(|ci| {
                *pos.iter()
                    .filter(|r| (0..rank).all(|j| r.coeffs[j] == 0 || comp_of[j] == ci))
                    .max_by_key(|r| r.height())
                    .expect("component has roots")
            })
            .collect();

        Ok(RootSystem {
            ty: ty.clone(),
            rank,
            gram,
            cartan,
            roots,
            npos,
            index,
            highest,
            comp_of,
        })
    }

    /// Shared, lazily built root system for a type.
    pub fn get(ty: &CartanType) -> Result<Arc<RootSystem>, RootError> {
        static CACHE: OnceLock<Mutex<HashMap<CartanType, Arc<RootSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rs) = cache.lock().expect("cache poisoned").get(ty) {
            return Ok(rs.clone());
        }
        let rs = Arc::new(RootSystem::build(ty)?);
        cache
            .lock()
            .expect("cache poisoned")
            .insert(ty.clone(), rs.clone());
        Ok(rs)
    }

    pub fn of(name: &str) -> Result<Arc<RootSystem>, RootError> {
        RootSystem::get(&CartanType::parse(name)?)
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `cartan()[i][j] = <α_i, α_j^∨>`.
    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<i32>] {
        &self.gram
    }

    /// Component index of a node.
    pub fn component_of(&self, node: usize) -> usize {
        self.comp_of[node]
    }

    /// All roots: positives in canonical order, then their negatives.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positives(&self) -> &[Root] {
        &self.roots[..self.npos]
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn simple(&self, i: usize) -> Root {
        self.roots[i]
    }

    pub fn simples(&self) -> &[Root] {
        &self.roots[..self.rank]
    }

    /// Highest root of the first component.
    pub fn highest_root(&self) -> Root {
        self.highest[0]
    }

    pub fn highest_roots(&self) -> &[Root] {
        &self.highest
    }

    pub fn contains(&self, r: &Root) -> bool {
        r.rank() == self.rank && self.index.contains_key(r)
    }

    /// Position of a root in [`Self::roots`].
    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn root(&self, c: &[i32]) -> Result<Root, RootError> {
        if c.len() != self.rank {
            return Err(RootError::LabelLength {
                label: format!("{c:?}"),
                rank: self.rank,
            });
        }
        let r = Root::raw(c);
        if self.contains(&r) {
            Ok(r)
        } else {
            Err(RootError::NotARoot(r.label()))
        }
    }

    /// Root with the given digit label; a leading `-` negates.
    pub fn root_from_label(&self, label: &str) -> Result<Root, RootError> {
        let l = label.trim();
        let (neg, digits) = match l.strip_prefix('-') {
            Some(d) => (true, d),
            None => (false, l),
        };
        if digits.chars().count() != self.rank {
            return Err(RootError::LabelLength {
                label: l.to_string(),
                rank: self.rank,
            });
        }
        let c: Vec<i32> = digits
            .chars()
            .map(|ch| ch.to_digit(10).map(|d| d as i32))
            .collect::<Option<_>>()
            .ok_or_else(|| RootError::BadLabel(l.to_string()))?;
        let r = Root::raw(&c);
        let r = if neg { r.neg() } else { r };
        if self.contains(&r) {
            Ok(r)
        } else {
            Err(RootError::NotARoot(l.to_string()))
        }
    }

    /// Root with a 1 in node `i` (0-based) and a sign.
    pub fn simple_signed(&self, i: usize, negative: bool) -> Root {
        if negative {
            self.roots[i].neg()
        } else {
            self.roots[i]
        }
    }

    pub fn inner(&self, a: &Root, b: &Root) -> i32 {
        let mut s = 0;
        for i in 0..self.rank {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a.coeffs[i] * self.gram[i][j] * b.coeffs[j];
            }
        }
        s
    }

    pub fn norm(&self, r: &Root) -> i32 {
        self.inner(r, r)
    }

    /// Whether `r` has the maximal root length of its component.
    pub fn is_long(&self, r: &Root) -> bool {
        let comp = (0..self.rank)
            .find(|&i| r.coeffs[i] != 0)
            .map(|i| self.comp_of[i])
            .unwrap_or(0);
        self.norm(r) == self.norm(&self.highest[comp])
    }

    /// `<b, a^∨> = 2(b,a)/(a,a)`.
    pub fn root_pairing(&self, b: &Root, a: &Root) -> i32 {
        2 * self.inner(b, a) / self.norm(a)
    }

    /// `(w, r)` for a weight `w` and root `r`.
    pub fn weight_root_inner(&self, w: &Weight, r: &Root) -> i32 {
        (0..self.rank)
            .map(|i| r.coeffs[i] * w.0[i] * self.gram[i][i] / 2)
            .sum()
    }

    /// Exact Cartan pairing `<w, r^∨>`.
    pub fn pairing(&self, w: &Weight, r: &Root) -> i32 {
        let num: i32 = (0..self.rank)
            .map(|i| r.coeffs[i] * w.0[i] * self.gram[i][i])
            .sum();
        let n = self.norm(r);
        debug_assert_eq!(num % n, 0);
        num / n
    }

    /// Fundamental-weight coordinates of a root-lattice element.
    pub fn root_to_weight(&self, r: &Root) -> Weight {
        Weight(
            (0..self.rank)
                .map(|j| {
                    (0..self.rank)
                        .map(|i| r.coeffs[i] * self.cartan[i][j])
                        .sum()
                })
                .collect(),
        )
    }

    /// `s_a(b) = b - <b, a^∨> a`.
    pub fn reflect(&self, a: &Root, b: &Root) -> Root {
        b.sub(&a.scale(self.root_pairing(b, a)))
    }

    pub fn reflect_weight(&self, a: &Root, w: &Weight) -> Weight {
        let k = self.pairing(w, a);
        if k == 0 {
            return w.clone();
        }
        w.sub(&self.root_to_weight(a).scale(k))
    }

    /// Simple reflection `s_i` on a weight: `w - w_i α_i`.
    pub fn simple_reflect_weight(&self, i: usize, w: &Weight) -> Weight {
        let k = w.0[i];
        let mut out = w.clone();
        if k != 0 {
            for j in 0..self.rank {
                out.0[j] -= k * self.cartan[i][j];
            }
        }
        out
    }

    /// The dominant weight in the Weyl orbit of `w`.
    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        let mut v = w.clone();
        while let Some(i) = (0..self.rank).find(|&i| v.0[i] < 0) {
            v = self.simple_reflect_weight(i, &v);
        }
        v
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// Roots whose support lies in the node set `j`.
    pub fn subsystem(&self, j: &[usize]) -> Vec<Root> {
        self.roots
            .iter()
            .filter(|r| (0..self.rank).all(|i| r.coeffs[i] == 0 || j.contains(&i)))
            .copied()
            .collect()
    }

    /// Whether `(a, b)` is an edge of the Dynkin diagram.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.cartan[a][b] != 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_counts_and_highest_root() {
        let rs = RootSystem::of("E8").unwrap();
        assert_eq!(rs.roots().len(), 240);
        assert_eq!(rs.highest_root().label(), "23465432");
    }

    #[test]
    fn a1_two_roots() {
        let rs = RootSystem::of("A1").unwrap();
        let labels: Vec<String> = rs.roots().iter().map(|r| r.label()).collect();
        assert_eq!(labels, vec!["1", "-1"]);
    }

    #[test]
    fn labels_parse() {
        let e7 = RootSystem::of("E7").unwrap();
        assert!(e7.root_from_label("0101111").is_ok());
        assert!(matches!(
            e7.root_from_label("0000000"),
            Err(RootError::NotARoot(_))
        ));
        assert!(e7.root_from_label("010111").is_err());
        let e8 = RootSystem::of("E8").unwrap();
        assert_eq!(
            e8.root_from_label("-12232100").unwrap().label(),
            "-12232100"
        );
    }

    #[test]
    fn fundamental_pairing_is_kronecker() {
        for name in ["E8", "F4", "G2", "B4", "C3"] {
            let rs = RootSystem::of(name).unwrap();
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    let w = Weight::fundamental(rs.rank(), i);
                    assert_eq!(rs.pairing(&w, &rs.simple(j)), (i == j) as i32);
                }
            }
        }
        let a3 = RootSystem::of("A3").unwrap();
        assert_eq!(a3.pairing(&Weight::fundamental(3, 1), &a3.simple(0)), 0);
    }

    #[test]
    fn bourbaki_cartan_entries() {
        let b3 = RootSystem::of("B3").unwrap();
        assert_eq!(b3.cartan()[1][2], -2);
        assert_eq!(b3.cartan()[2][1], -1);
        let c3 = RootSystem::of("C3").unwrap();
        assert_eq!(c3.cartan()[1][2], -1);
        assert_eq!(c3.cartan()[2][1], -2);
        assert_eq!(c3.simple(0).label(), "100");
        let g2 = RootSystem::of("G2").unwrap();
        assert_eq!(g2.highest_root().label(), "32");
        let f4 = RootSystem::of("F4").unwrap();
        assert_eq!(f4.highest_root().label(), "2342");
    }

    #[test]
    fn type_names() {
        assert_eq!(CartanType::parse("A2^3").unwrap().to_string(), "A2A2A2");
        assert_eq!(CartanType::parse("B3xB3").unwrap().rank(), 6);
        assert!(CartanType::parse("E9").is_err());
        assert!(CartanType::parse("F3").is_err());
        assert!(CartanType::parse("A5A4").is_err());
    }

    #[test]
    fn reducible_system() {
        let rs = RootSystem::of("A3A3").unwrap();
        assert_eq!(rs.roots().len(), 24);
        assert_eq!(rs.highest_roots().len(), 2);
        assert_eq!(rs.highest_roots()[1].label(), "000111");
    }
}
