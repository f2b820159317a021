//! Restriction along torus embeddings, curated irreducible characters in
//! positive characteristic, and composition-factor checks.

pub mod expr;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use thiserror::Error;

use crate::characters::{self, CharError, Character};
use crate::rootdata::{CartanType, LieType, RootError, RootSystem, Weight};

pub use expr::Expr;

pub const IRR_DAT: &str = include_str!("../../../data/irr.dat");
pub const APPENDIX_DAT: &str = include_str!("../../../data/appendix.dat");
pub const EMBEDDINGS_DAT: &str = include_str!("../../../data/embeddings.dat");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BranchError {
    #[error("line {line}: {msg}")]
    Data { line: usize, msg: String },
    #[error("expression `{expr}`: {msg}")]
    Expr { expr: String, msg: String },
    #[error("no irreducible character recorded for {ty} p={p} weight {weight}")]
    MissingIrr { ty: String, p: u32, weight: String },
    #[error("no tilting module recorded for {ty} p={p} weight {weight}")]
    MissingTilting { ty: String, p: u32, weight: String },
    #[error("unknown embedding {0}")]
    UnknownEmbedding(String),
    #[error("embedding {name}: character of type {got}, expected {expected}")]
    TypeMismatch {
        name: String,
        got: String,
        expected: String,
    },
    #[error("lattice map: {0}")]
    Lattice(String),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// A torus embedding `X ≤ H`: row `k` is the restriction of the `k`-th
/// fundamental weight of `H` to `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub name: String,
    pub src: CartanType,
    pub tgt: CartanType,
    pub matrix: Vec<Weight>,
    pub provenance: String,
}

impl Embedding {
    pub fn new(
        name: &str,
        src: CartanType,
        tgt: CartanType,
        matrix: Vec<Weight>,
        provenance: &str,
    ) -> Result<Self, BranchError> {
        if matrix.len() != tgt.rank() || matrix.iter().any(|r| r.rank() != src.rank()) {
            return Err(BranchError::Lattice(format!(
                "{name}: need {} rows of length {}",
                tgt.rank(),
                src.rank()
            )));
        }
        Ok(Embedding {
            name: name.into(),
            src,
            tgt,
            matrix,
            provenance: provenance.into(),
        })
    }

    pub fn map_weight(&self, w: &Weight) -> Weight {
        let mut out = Weight::zero(self.src.rank());
        for (k, &c) in w.0.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.matrix[k].scale(c));
            }
        }
        out
    }

    /// `X ≤ H` followed by `H ≤ L` gives `X ≤ L`.
    pub fn then(
        &self,
        outer: &Embedding,
        name: &str,
        provenance: &str,
    ) -> Result<Embedding, BranchError> {
        if outer.src != self.tgt {
            return Err(BranchError::Lattice(format!(
                "cannot compose {} with {}",
                self.name, outer.name
            )));
        }
        let matrix = outer
            .matrix
            .iter()
            .map(|row| self.map_weight(row))
            .collect();
        Embedding::new(
            name,
            self.src.clone(),
            outer.tgt.clone(),
            matrix,
            provenance,
        )
    }

    /// `NAME : SRC -> TGT ; row / row / … ; provenance`, entries space separated.
    pub fn parse_line(line: &str) -> Result<Embedding, String> {
        let (name, rest) = line.split_once(':').ok_or("missing `:`")?;
        let mut fields = rest.splitn(3, ';');
        let types = fields.next().ok_or("missing types")?;
        let rows = fields.next().ok_or("missing matrix")?;
        let prov = fields.next().unwrap_or("").trim();
        let (src, tgt) = types.split_once("->").ok_or("missing `->`")?;
        let src = CartanType::parse(src.trim()).map_err(|e| e.to_string())?;
        let tgt = CartanType::parse(tgt.trim()).map_err(|e| e.to_string())?;
        let matrix = rows
            .split('/')
            .map(|r| {
                r.split_whitespace()
                    .map(str::parse::<i32>)
                    .collect::<Result<Vec<_>, _>>()
                    .map(Weight)
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| format!("bad matrix `{}`", rows.trim()))?;
        Embedding::new(name.trim(), src, tgt, matrix, prov).map_err(|e| e.to_string())
    }

    pub fn to_line(&self) -> String {
        let rows: Vec<String> = self.matrix.iter().map(|r| r.to_string()).collect();
        format!(
            "{} : {} -> {} ; {} ; {}",
            self.name,
            self.src,
            self.tgt,
            rows.join(" / "),
            self.provenance
        )
    }
}

pub fn parse_embeddings(text: &str) -> Result<Vec<Embedding>, BranchError> {
    data_lines(text)
        .map(|(n, l)| Embedding::parse_line(l).map_err(|msg| BranchError::Data { line: n, msg }))
        .collect()
}

/// Embeddings shipped with the crate.
pub fn builtin_embeddings() -> &'static [Embedding] {
    static CELL: OnceLock<Vec<Embedding>> = OnceLock::new();
    CELL.get_or_init(|| parse_embeddings(EMBEDDINGS_DAT).expect("bundled embeddings.dat parses"))
}

pub fn find_embedding<'a>(list: &'a [Embedding], name: &str) -> Result<&'a Embedding, BranchError> {
    list.iter()
        .find(|e| e.name == name)
        .ok_or_else(|| BranchError::UnknownEmbedding(name.into()))
}

/// Pushes a character of the overgroup forward to the subgroup.
pub fn restrict(c: &Character, e: &Embedding) -> Result<Character, BranchError> {
    if c.ty != e.tgt {
        return Err(BranchError::TypeMismatch {
            name: e.name.clone(),
            got: c.ty.to_string(),
            expected: e.tgt.to_string(),
        });
    }
    let mut out = Character::zero(&e.src);
    for (w, m) in &c.mults {
        *out.mults.entry(e.map_weight(w)).or_default() += m;
    }
    Ok(out)
}

/// Lattice map of `X ≤ H` when `H` is classical and acts on its natural
/// module as `v`. The weights of `v` are laid out as `ε_1, …` in the
/// standard coordinates of `H`.
pub fn lattice_map_from_module(v: &Character, tgt: LieType) -> Result<Vec<Weight>, BranchError> {
    let n = tgt.rank;
    let rank = v.ty.rank();
    let mut weights = Vec::new();
    for (w, m) in &v.mults {
        for _ in 0..characters_count(m) {
            weights.push(w.clone());
        }
    }
    let rs = RootSystem::get(&v.ty)?;
    let height = |w: &Weight| -> i32 { rs.positives().iter().map(|a| rs.pairing(w, a)).sum() };
    weights.sort_by(|a, b| (height(b), b).cmp(&(height(a), a)));
    let bad = |msg: String| BranchError::Lattice(format!("{} into {tgt}: {msg}", v.ty));
    let prefix =
        |eps: &[Weight], k: usize| eps[..k].iter().fold(Weight::zero(rank), |a, b| a.add(b));
    let half = |w: Weight| -> Result<Weight, BranchError> {
        if w.0.iter().any(|c| c % 2 != 0) {
            return Err(bad(format!("half of {w} is not integral")));
        }
        Ok(Weight(w.0.iter().map(|c| c / 2).collect()))
    };
    match tgt.family {
        'A' => {
            if weights.len() != n + 1 {
                return Err(bad(format!("module has dimension {}", weights.len())));
            }
            Ok((1..=n).map(|k| prefix(&weights, k)).collect())
        }
        'B' | 'C' | 'D' => {
            let eps = signed_halves(&weights)
                .ok_or_else(|| bad("weights are not closed under negation".into()))?;
            let want_zero = tgt.family == 'B';
            let odd = weights.len() % 2 == 1;
            if eps.len() != n || odd != want_zero {
                return Err(bad(format!(
                    "module of dimension {} does not fit",
                    weights.len()
                )));
            }
            let mut rows: Vec<Weight> = (1..=n).map(|k| prefix(&eps, k)).collect();
            match tgt.family {
                'B' => rows[n - 1] = half(prefix(&eps, n))?,
                'D' => {
                    rows[n - 2] = half(prefix(&eps, n - 1).sub(&eps[n - 1]))?;
                    rows[n - 1] = half(prefix(&eps, n))?;
                }
                _ => {}
            }
            Ok(rows)
        }
        _ => Err(bad("target family is not classical".into())),
    }
}

fn characters_count(m: &BigUint) -> u64 {
    u64::try_from(m).expect("multiplicity fits in u64")
}

/// One weight from each `±` pair, keeping the given order, nonzero weights first.
fn signed_halves(weights: &[Weight]) -> Option<Vec<Weight>> {
    let mut pool: BTreeMap<Weight, usize> = BTreeMap::new();
    for w in weights {
        *pool.entry(w.clone()).or_default() += 1;
    }
    if pool.iter().any(|(w, m)| pool.get(&w.neg()) != Some(m)) {
        return None;
    }
    let mut out: Vec<Weight> = Vec::new();
    for w in weights {
        if !w.is_zero()
            && !out.iter().any(|u| *u == w.neg())
            && pool[w] > out.iter().filter(|u| *u == w).count()
        {
            out.push(w.clone());
        }
    }
    let rank = weights.first().map_or(0, |w| w.rank());
    let zeros = pool.get(&Weight::zero(rank)).copied().unwrap_or(0);
    out.extend(std::iter::repeat_n(Weight::zero(rank), zeros / 2));
    Some(out)
}

/// Block map for a target with several components.
pub fn product_map(blocks: &[Vec<Weight>]) -> Vec<Weight> {
    blocks.iter().flatten().cloned().collect()
}

pub fn identity_map(rank: usize) -> Vec<Weight> {
    (0..rank).map(|i| Weight::fundamental(rank, i)).collect()
}

/// Base-`p` digits of a weight: `λ = Σ p^i λ_i` with each `λ_i` restricted.
pub fn steinberg_digits(w: &Weight, p: u32) -> Vec<Weight> {
    let p = p as i32;
    let mut rest = w.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        out.push(Weight(rest.0.iter().map(|c| c % p).collect()));
        rest = Weight(rest.0.iter().map(|c| c / p).collect());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrEntry {
    pub dim: u64,
    pub dominant: BTreeMap<Weight, u64>,
}

/// Curated irreducible characters plus Weyl and tilting layer data.
#[derive(Clone, Debug, Default)]
pub struct IrrData {
    pub irr: BTreeMap<(LieType, u32, Weight), IrrEntry>,
    pub weyl_layers: BTreeMap<(LieType, u32, Weight), String>,
    pub tilting_layers: BTreeMap<(LieType, u32, Weight), String>,
}

type Key = (LieType, u32, Weight);

fn parse_key(ty: &str, p: &str, w: &str) -> Result<Key, String> {
    let ty = CartanType::parse(ty.trim()).map_err(|e| e.to_string())?;
    if !ty.is_simple() {
        return Err(format!("{ty} is not simple"));
    }
    let p: u32 = p.trim().parse().map_err(|_| format!("bad prime {p}"))?;
    let w = Weight::parse(w.trim()).map_err(|e| e.to_string())?;
    if w.rank() != ty.rank() {
        return Err(format!("weight {w} has wrong rank"));
    }
    Ok((ty.0[0], p, w))
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

impl IrrData {
    /// Data shipped with the crate.
    pub fn builtin() -> &'static IrrData {
        static CELL: OnceLock<IrrData> = OnceLock::new();
        CELL.get_or_init(|| {
            IrrData::parse(IRR_DAT, APPENDIX_DAT).expect("bundled irr.dat and appendix.dat parse")
        })
    }

    /// `irr` lines: `TYPE p WEIGHT : dim ; weight:mult , …`.
    /// `appendix` lines: `W|T ; TYPE ; p ; WEIGHT ; layers`.
    pub fn parse(irr: &str, appendix: &str) -> Result<IrrData, BranchError> {
        let mut data = IrrData::default();
        for (n, line) in data_lines(irr) {
            let err = |msg: String| BranchError::Data { line: n, msg };
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| err("missing `:`".into()))?;
            let parts: Vec<&str> = head.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(err("expected `TYPE p WEIGHT`".into()));
            }
            let key = parse_key(parts[0], parts[1], parts[2]).map_err(err)?;
            let (dim, mults) = rest
                .split_once(';')
                .ok_or_else(|| err("missing `;`".into()))?;
            let dim: u64 = dim
                .trim()
                .parse()
                .map_err(|_| err(format!("bad dimension {dim}")))?;
            let mut dominant = BTreeMap::new();
            for item in mults.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (w, m) = item
                    .split_once(':')
                    .ok_or_else(|| err(format!("bad item {item}")))?;
                let w = Weight::parse(w).map_err(|e| err(e.to_string()))?;
                let m: u64 = m
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad multiplicity in {item}")))?;
                dominant.insert(w, m);
            }
            data.irr.insert(key, IrrEntry { dim, dominant });
        }
        for (n, line) in data_lines(appendix) {
            let err = |msg: String| BranchError::Data { line: n, msg };
            let f: Vec<&str> = line.split(';').map(str::trim).collect();
            if f.len() != 5 {
                return Err(err("expected 5 `;`-separated fields".into()));
            }
            let key = parse_key(f[1], f[2], f[3]).map_err(err)?;
            Expr::parse(f[4]).map_err(|e| err(e.to_string()))?;
            match f[0] {
                "W" => data.weyl_layers.insert(key, f[4].to_string()),
                "T" => data.tilting_layers.insert(key, f[4].to_string()),
                k => return Err(err(format!("unknown kind {k}"))),
            };
        }
        Ok(data)
    }

    /// Character of `L(λ)`, via Steinberg's tensor product theorem and the
    /// product structure of `ty`.
    pub fn irreducible(
        &self,
        ty: &CartanType,
        p: u32,
        lambda: &Weight,
    ) -> Result<Character, BranchError> {
        split_components(ty, lambda, |t, w| self.irreducible_simple(t, p, w))
    }

    fn irreducible_simple(
        &self,
        t: LieType,
        p: u32,
        lambda: &Weight,
    ) -> Result<Character, BranchError> {
        let ty = CartanType::simple(t);
        let mut out = Character::trivial(&ty);
        for (r, digit) in steinberg_digits(lambda, p).iter().enumerate() {
            if digit.is_zero() {
                continue;
            }
            let entry =
                self.irr
                    .get(&(t, p, digit.clone()))
                    .ok_or_else(|| BranchError::MissingIrr {
                        ty: t.to_string(),
                        p,
                        weight: digit.label(),
                    })?;
            let c = Character::from_dominant(
                &ty,
                entry
                    .dominant
                    .iter()
                    .map(|(w, m)| (w.clone(), BigUint::from(*m))),
            )?;
            out = characters::tensor(&out, &characters::twist(&c, r as u32, p))?;
        }
        Ok(out)
    }

    /// Character of `T(λ)` from its recorded layers.
    pub fn tilting(
        &self,
        ty: &CartanType,
        p: u32,
        lambda: &Weight,
    ) -> Result<Character, BranchError> {
        split_components(ty, lambda, |t, w| {
            if w.is_zero() {
                return Ok(Character::trivial(&CartanType::simple(t)));
            }
            let layers = self.tilting_layers.get(&(t, p, w.clone())).ok_or_else(|| {
                BranchError::MissingTilting {
                    ty: t.to_string(),
                    p,
                    weight: w.label(),
                }
            })?;
            Expr::parse(layers)?.eval(&CartanType::simple(t), p, self)
        })
    }
}

/// Evaluates a per-component constructor and takes the outer tensor.
fn split_components(
    ty: &CartanType,
    lambda: &Weight,
    mut f: impl FnMut(LieType, &Weight) -> Result<Character, BranchError>,
) -> Result<Character, BranchError> {
    if lambda.rank() != ty.rank() {
        return Err(CharError::RankMismatch {
            weight: lambda.clone(),
            got: lambda.rank(),
            expected: ty.rank(),
        }
        .into());
    }
    let mut start = 0;
    let mut out: Option<Character> = None;
    for &t in ty.components() {
        let w = Weight(lambda.0[start..start + t.rank].to_vec());
        start += t.rank;
        let c = f(t, &w)?;
        out = Some(match out {
            None => c,
            Some(acc) => characters::outer_tensor(&acc, &c),
        });
    }
    Ok(out.expect("types have at least one component"))
}

/// A claimed composition factor `L(λ)^{[twist]}` with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub weight: Weight,
    pub mult: u64,
    pub twist: u32,
}

/// True iff `c` is exactly the sum of the claimed irreducibles.
pub fn verify_factors(
    c: &Character,
    claimed: &[Factor],
    p: u32,
    data: &IrrData,
) -> Result<bool, BranchError> {
    let mut total = Character::zero(&c.ty);
    for f in claimed {
        let l = data.irreducible(&c.ty, p, &f.weight)?;
        total = total.add(&characters::twist(&l, f.twist, p).scale(f.mult))?;
    }
    Ok(total == *c)
}

/// Composition factors by repeated removal of a highest weight.
pub fn composition_factors(
    c: &Character,
    p: u32,
    data: &IrrData,
) -> Result<Vec<Factor>, BranchError> {
    let rs = RootSystem::get(&c.ty)?;
    let height =
        |w: &Weight| -> i64 { rs.positives().iter().map(|a| rs.pairing(w, a) as i64).sum() };
    let mut rest = c.clone();
    let mut out: Vec<Factor> = Vec::new();
    while let Some(top) = rest
        .mults
        .keys()
        .filter(|w| w.is_dominant())
        .max_by_key(|w| (height(w), (*w).clone()))
        .cloned()
    {
        let k = characters_count(&rest.mults[&top]);
        let l = data.irreducible(&c.ty, p, &top)?;
        rest = rest.checked_sub(&l.scale(k))?;
        out.push(Factor {
            weight: top,
            mult: k,
            twist: 0,
        });
    }
    Ok(out)
}

/// `dim H¹` of an outer tensor product from per-factor `(dim H⁰, dim H¹)`.
pub fn kunneth_h1(factors: &[(u64, u64)]) -> u64 {
    (0..factors.len())
        .map(|j| {
            factors
                .iter()
                .enumerate()
                .map(|(i, f)| if i == j { f.1 } else { f.0 })
                .product::<u64>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{exterior_power, weyl_character};

    fn ty(s: &str) -> CartanType {
        CartanType::parse(s).unwrap()
    }

    fn w(s: &str) -> Weight {
        Weight::parse(s).unwrap()
    }

    fn emb(name: &str) -> &'static Embedding {
        find_embedding(builtin_embeddings(), name).unwrap()
    }

    fn irr(t: &str, p: u32, l: &str) -> Character {
        IrrData::builtin().irreducible(&ty(t), p, &w(l)).unwrap()
    }

    #[test]
    fn kunneth_examples() {
        assert_eq!(kunneth_h1(&[(1, 0), (1, 0)]), 0);
        assert_eq!(kunneth_h1(&[(0, 1), (1, 0)]), 1);
        assert_eq!(kunneth_h1(&[(0, 0), (0, 0)]), 0);
        assert_eq!(kunneth_h1(&[(1, 1), (1, 0)]), 1);
        assert_eq!(kunneth_h1(&[(1, 2), (1, 1)]), 3);
    }

    #[test]
    fn steinberg_split() {
        assert_eq!(steinberg_digits(&w("210"), 2), vec![w("010"), w("100")]);
        assert!(steinberg_digits(&w("000"), 3).is_empty());
        assert_eq!(irr("A3", 2, "210").dim_u64(), 24);
        assert_eq!(irr("B3", 2, "002").dim_u64(), 8);
    }

    #[test]
    fn c3_in_a5_wedge_cube() {
        let c = restrict(
            &weyl_character(&ty("A5"), &w("00100")).unwrap(),
            emb("c3-a5-100"),
        )
        .unwrap();
        assert_eq!(c.dim_u64(), 20);
        let f = |s: &str, m| Factor {
            weight: w(s),
            mult: m,
            twist: 0,
        };
        assert!(verify_factors(&c, &[f("100", 2), f("001", 1)], 2, IrrData::builtin()).unwrap());
        assert!(!verify_factors(&c, &[f("100", 1), f("001", 1)], 2, IrrData::builtin()).unwrap());
    }

    #[test]
    fn a3_in_d7_half_spin() {
        for l in ["0000010", "0000001"] {
            let c = restrict(&weyl_character(&ty("D7"), &w(l)).unwrap(), emb("a3-d7-101")).unwrap();
            assert_eq!(c, weyl_character(&ty("A3"), &w("111")).unwrap());
            assert_eq!(c, irr("A3", 2, "111"));
        }
    }

    #[test]
    fn a7_wedge_square_restrictions() {
        let l2 = weyl_character(&ty("A7"), &w("0100000")).unwrap();
        let b3 = restrict(&l2, emb("b3-a7-001")).unwrap();
        let got = composition_factors(&b3, 2, IrrData::builtin()).unwrap();
        let dims: Vec<(String, u64)> = got.iter().map(|f| (f.weight.label(), f.mult)).collect();
        assert_eq!(
            dims,
            vec![("010".into(), 1), ("100".into(), 2), ("000".into(), 2)]
        );
        let d4 = restrict(&l2, emb("d4-a7-1000")).unwrap();
        let got = composition_factors(&d4, 2, IrrData::builtin()).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!((got[0].weight.label(), got[1].mult), ("0100".into(), 2));
    }

    #[test]
    fn e6_levels_to_c4_and_d4() {
        let l1 = weyl_character(&ty("E6"), &w("100000")).unwrap();
        let c4 = restrict(&l1, emb("c4-e6")).unwrap();
        let expect = irr("C4", 2, "0100").add(&irr("C4", 2, "0000")).unwrap();
        assert_eq!(c4, expect);
        let d4 = restrict(&l1, emb("d4-e6")).unwrap();
        assert_eq!(d4, irr("D4", 2, "0100").add(&irr("D4", 2, "0000")).unwrap());
    }

    #[test]
    fn b3_spin_wedge_square_factors() {
        let spin = weyl_character(&ty("B3"), &w("001")).unwrap();
        let l2 = exterior_power(&spin, 2);
        let f = |s: &str, m| Factor {
            weight: w(s),
            mult: m,
            twist: 0,
        };
        let data = IrrData::builtin();
        assert!(verify_factors(&l2, &[f("010", 1), f("100", 2), f("000", 2)], 2, data).unwrap());
        assert!(!verify_factors(&l2, &[f("010", 1), f("100", 2)], 2, data).unwrap());
    }

    #[test]
    fn missing_irreducible_is_reported() {
        let err = IrrData::builtin()
            .irreducible(&ty("G2"), 2, &w("11"))
            .unwrap_err();
        assert!(matches!(err, BranchError::MissingIrr { .. }));
    }

    #[test]
    fn restrict_rejects_wrong_type() {
        let c = weyl_character(&ty("A4"), &w("1000")).unwrap();
        assert!(restrict(&c, emb("c3-a5-100")).is_err());
    }

    #[test]
    fn embedding_line_round_trip() {
        for e in builtin_embeddings() {
            assert_eq!(&Embedding::parse_line(&e.to_line()).unwrap(), e);
        }
    }
}
