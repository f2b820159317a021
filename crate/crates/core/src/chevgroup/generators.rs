//! Parameterized generator families `y_{±i}(t)` in an ambient Chevalley group
//! and verification of the Steinberg relations for the target type.
//!
//! Every relation `L(t,u) = R(t,u)` is checked by total evaluation over GF(q):
//! both sides are applied to a set of vectors generating L(G) as a Lie algebra,
//! for all admissible `(t,u)`. A degree audit bounds the exponents of `t` and
//! `u` in every coordinate, so agreement at all points is a polynomial identity.

use std::collections::BTreeMap;
use std::fmt;

use crate::rootdata::{CartanType, RootSystem};

use super::adjoint::{fixed_space_dim, Adjoint, Letter};
use super::field::{Elem, Gf};
use super::poly::{Poly, Vars};
use super::structure::StructureConstants;
use super::ChevError;

pub const GENERATORS_DAT: &str = include_str!("../../../../data/generators.dat");

#[derive(Clone, Debug)]
pub struct Family {
    pub name: String,
    pub ambient: String,
    pub target: CartanType,
    /// Parameter names; the variable `t` follows them.
    pub params: Vec<String>,
    /// Letters `(root index, coefficient)` for each signed generator index.
    pub gens: BTreeMap<i32, Vec<(usize, Poly)>>,
    pub tuples: Vec<(String, Vec<i64>)>,
    vars: Vars,
    p: u32,
}

/// Parse generator families; coefficients are read over GF(p).
pub fn load(text: &str, p: u32) -> Result<Vec<Family>, ChevError> {
    let mut out: Vec<Family> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: String| ChevError::Parse(format!("line {}: {m}", ln + 1));
        let (kw, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| err("missing fields".into()))?;
        let fields: Vec<&str> = rest.split(';').map(str::trim).collect();
        match (kw, fields.as_slice()) {
            ("family", [name, ambient, target, params]) => {
                let params: Vec<String> = params.split_whitespace().map(String::from).collect();
                let mut names = params.clone();
                names.push("t".into());
                out.push(Family {
                    name: name.to_string(),
                    ambient: ambient.to_string(),
                    target: CartanType::parse(target).map_err(|e| err(e.to_string()))?,
                    params,
                    gens: BTreeMap::new(),
                    tuples: Vec::new(),
                    vars: Vars::new(&names),
                    p,
                });
            }
            ("gen", [name, idx, letters]) => {
                let fam = out
                    .iter_mut()
                    .find(|f| f.name == *name)
                    .ok_or_else(|| err(format!("unknown family {name}")))?;
                let idx: i32 = idx
                    .parse()
                    .map_err(|_| err(format!("bad generator index {idx}")))?;
                let rs = RootSystem::of(&fam.ambient)?;
                let word = parse_letters(&rs, &mut fam.vars, p, letters)
                    .map_err(|e| err(e.to_string()))?;
                if fam.vars.len() != fam.params.len() + 1 {
                    return Err(err("unknown variable in coefficients".into()));
                }
                fam.gens.insert(idx, word);
            }
            ("params", [name, label, values]) => {
                let fam = out
                    .iter_mut()
                    .find(|f| f.name == *name)
                    .ok_or_else(|| err(format!("unknown family {name}")))?;
                let vals = parse_params(values).map_err(err)?;
                if vals.len() != fam.params.len() {
                    return Err(err(format!(
                        "{} needs {} parameters",
                        fam.name,
                        fam.params.len()
                    )));
                }
                fam.tuples.push((label.to_string(), vals));
            }
            _ => return Err(err(format!("unrecognized line `{line}`"))),
        }
    }
    for f in &out {
        let n = f.target.rank() as i32;
        for i in (1..=n).flat_map(|i| [i, -i]) {
            if !f.gens.contains_key(&i) {
                return Err(ChevError::Parse(format!(
                    "{}: generator {i} missing",
                    f.name
                )));
            }
        }
    }
    Ok(out)
}

pub fn parse_params(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad parameter `{x}`"))
        })
        .collect()
}

/// Built-in families over characteristic 2.
pub fn builtin() -> Vec<Family> {
    load(GENERATORS_DAT, 2).expect("built-in generator data parses")
}

pub fn builtin_family(name: &str) -> Option<Family> {
    builtin().into_iter().find(|f| f.name == name)
}

/// Parse letters `x<root>(<poly>)` separated by whitespace.
pub fn parse_letters(
    rs: &RootSystem,
    vars: &mut Vars,
    p: u32,
    s: &str,
) -> Result<Vec<(usize, Poly)>, ChevError> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('x')
            .ok_or_else(|| ChevError::Parse(format!("expected `x` at `{rest}`")))?;
        let open = body
            .find('(')
            .ok_or_else(|| ChevError::Parse(format!("missing `(` in `{rest}`")))?;
        let label = &body[..open];
        let mut depth = 0;
        let mut close = None;
        for (i, ch) in body[open..].char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(open + i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close =
            close.ok_or_else(|| ChevError::Parse(format!("unbalanced parentheses in `{rest}`")))?;
        let coeff = vars.parse(p, &body[open + 1..close])?;
        out.push((root_index(rs, label)?, coeff));
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

/// A root given as a simple root number or a full label, with optional `-`.
pub fn root_index(rs: &RootSystem, label: &str) -> Result<usize, ChevError> {
    let (neg, digits) = match label.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, label),
    };
    let root = if digits.len() == rs.rank() {
        rs.root_from_label(digits)?
    } else {
        let i: usize = digits
            .parse()
            .map_err(|_| ChevError::Parse(format!("bad root `{label}`")))?;
        if i == 0 || i > rs.rank() {
            return Err(ChevError::Parse(format!("no simple root {i}")));
        }
        rs.simple(i - 1)
    };
    let root = if neg { root.neg() } else { root };
    rs.index_of(&root)
        .ok_or_else(|| ChevError::Parse(format!("`{label}` is not a root")))
}

impl Family {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.target.rank()
    }

    pub fn tuple(&self, label: &str) -> Option<&[i64]> {
        self.tuples
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| v.as_slice())
    }

    /// Substitute parameter values; the result has `t` as variable 0.
    pub fn instantiate(&self, values: &[i64]) -> Result<Instance, ChevError> {
        if values.len() != self.params.len() {
            return Err(ChevError::Parse(format!(
                "{} needs {} parameters",
                self.name,
                self.params.len()
            )));
        }
        let subst: BTreeMap<usize, i64> = values.iter().copied().enumerate().collect();
        let tvar = self.params.len();
        let t = Poly::var(self.p, 0);
        let gens = self
            .gens
            .iter()
            .map(|(&i, w)| {
                let letters = w
                    .iter()
                    .map(|(r, c)| (*r, c.substitute(&subst).compose(tvar, &t)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                (i, letters)
            })
            .collect();
        Ok(Instance {
            ambient: self.ambient.clone(),
            target: self.target.clone(),
            gens,
            p: self.p,
        })
    }

    /// Replace one root in generator `gen`, keeping its coefficient.
    pub fn mutate(&mut self, gen: i32, from: &str, to: &str) -> Result<(), ChevError> {
        let rs = RootSystem::of(&self.ambient)?;
        let (a, b) = (root_index(&rs, from)?, root_index(&rs, to)?);
        let word = self
            .gens
            .get_mut(&gen)
            .ok_or_else(|| ChevError::Parse(format!("no generator {gen}")))?;
        let slot = word
            .iter_mut()
            .find(|(r, _)| *r == a)
            .ok_or_else(|| ChevError::Parse(format!("{from} not in generator {gen}")))?;
        slot.0 = b;
        Ok(())
    }
}

/// A family with numeric parameters: `gens[i]` are letters with coefficients in `t`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ambient: String,
    pub target: CartanType,
    pub gens: BTreeMap<i32, Vec<(usize, Poly)>>,
    p: u32,
}

// Relation variables.
const T: usize = 0;
const U: usize = 1;
const TI: usize = 2;
const UI: usize = 3;

type SymWord = Vec<(usize, Poly)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Domain {
    /// All of GF(q).
    All,
    /// GF(q)*.
    Units,
    /// Variable absent.
    Unused,
}

enum Check {
    One(Relation),
    /// Passes if some candidate holds (sign ambiguities).
    AnyOf(String, Vec<Relation>),
}

struct Relation {
    name: String,
    lhs: SymWord,
    rhs: SymWord,
    t: Domain,
    u: Domain,
}

/// Outcome for one class of relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassResult {
    pub class: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ClassResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub q: u32,
    pub classes: Vec<ClassResult>,
    /// `realized[i][j] = <β_i, β_j^∨>` as read off the torus action.
    pub realized_cartan: Vec<Vec<Option<i32>>>,
    pub target_cartan: Vec<Vec<i32>>,
    pub realized_type: Option<String>,
    /// Largest exponent span of `t` and `u` over all coordinates checked.
    pub degree_span: (i32, i32),
    pub audit_ok: bool,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.audit_ok && self.classes.iter().all(ClassResult::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field GF({})", self.q)?;
        for c in &self.classes {
            let status = if c.passed() { "pass" } else { "FAIL" };
            writeln!(f, "{status} {} ({} relations)", c.class, c.checked)?;
            for m in &c.failures {
                writeln!(f, "  {m}")?;
            }
        }
        let row = |r: &Vec<Option<i32>>| {
            r.iter()
                .map(|x| x.map_or("?".to_string(), |v| v.to_string()))
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "realized Cartan matrix:")?;
        for r in &self.realized_cartan {
            writeln!(f, "  {}", row(r))?;
        }
        writeln!(
            f,
            "realized type {}",
            self.realized_type.as_deref().unwrap_or("unknown")
        )?;
        let audit = if self.audit_ok { "ok" } else { "FAIL" };
        writeln!(
            f,
            "degree audit {audit}: exponent span t {} u {} (q = {})",
            self.degree_span.0, self.degree_span.1, self.q
        )
    }
}

struct Ctx<'a> {
    inst: &'a Instance,
    p: u32,
}

impl Ctx<'_> {
    fn c(&self, n: i64) -> Poly {
        Poly::constant(self.p, n)
    }
    fn v(&self, i: usize) -> Poly {
        Poly::var(self.p, i)
    }
    /// `y_i(e)`.
    fn y(&self, i: i32, e: &Poly) -> SymWord {
        self.inst.gens[&i]
            .iter()
            .map(|(r, c)| (*r, c.compose(0, e)))
            .collect()
    }
    /// `n_i(e) = y_i(e) y_{-i}(-e^{-1}) y_i(e)` for a monomial `e`.
    fn n(&self, i: i32, e: &Poly) -> SymWord {
        let inv = self.invert(e);
        [self.y(i, e), self.y(-i, &inv.neg()), self.y(i, e)].concat()
    }
    /// `h_i(e) = n_i(e) n_i(-1)`.
    fn h(&self, i: i32, e: &Poly) -> SymWord {
        [self.n(i, e), self.n(i, &self.c(-1))].concat()
    }
    /// Inverse of a unit monomial in `t, u, t⁻¹, u⁻¹`.
    fn invert(&self, e: &Poly) -> Poly {
        let terms: Vec<_> = e.terms().collect();
        assert_eq!(terms.len(), 1, "only monomials are inverted");
        let (m, c) = terms[0];
        let get = |i: usize| m.get(i).copied().unwrap_or(0);
        // Coefficients are ±1, which are their own inverses.
        let mut out = self.c(c as i64);
        for (from, to) in [(T, TI), (TI, T), (U, UI), (UI, U)] {
            out = out.mul(&self.v(to).pow(get(from)));
        }
        out
    }
    /// `t^m` with negative powers through `t⁻¹`.
    fn tpow(&self, var: usize, inv: usize, m: i32) -> Poly {
        if m >= 0 {
            self.v(var).pow(m as u32)
        } else {
            self.v(inv).pow((-m) as u32)
        }
    }
}

fn inverse(w: &SymWord) -> SymWord {
    w.iter().rev().map(|(r, c)| (*r, c.neg())).collect()
}

/// `[a, b] = a⁻¹ b⁻¹ a b`.
fn comm(a: &SymWord, b: &SymWord) -> SymWord {
    [inverse(a), inverse(b), a.clone(), b.clone()].concat()
}

fn conj(g: &SymWord, x: &SymWord) -> SymWord {
    [g.clone(), x.clone(), inverse(g)].concat()
}

/// Checks relations over one field on a fixed generating set of L(G).
pub struct Checker<'a> {
    adj: &'a Adjoint,
    gens: Vec<Vec<Elem>>,
    field: Gf,
    max_span: (i32, i32),
    audit_ok: bool,
}

impl<'a> Checker<'a> {
    pub fn new(adj: &'a Adjoint, sc: &StructureConstants) -> Checker<'a> {
        Checker {
            adj,
            gens: adj.generating_vectors(sc),
            field: adj.field().clone(),
            max_span: (0, 0),
            audit_ok: true,
        }
    }

    fn eval_word(
        &self,
        w: &SymWord,
        vals: &[Elem],
        out: &mut Vec<Letter>,
    ) -> Result<(), ChevError> {
        out.clear();
        for (r, c) in w {
            let coeff = c.eval(&self.field, vals)?;
            if coeff != 0 {
                out.push(Letter { root: *r, coeff });
            }
        }
        Ok(())
    }

    /// First parameter pair where the relation fails, if any.
    fn check(&mut self, rel: &Relation) -> Result<Option<(Elem, Elem)>, ChevError> {
        let f = &self.field.clone();
        let dom = |d: Domain| -> Vec<Elem> {
            match d {
                Domain::All => f.elements().collect(),
                Domain::Units => f.nonzero().collect(),
                Domain::Unused => vec![1],
            }
        };
        let (ts, us) = (dom(rel.t), dom(rel.u));
        let (mut lw, mut rw) = (Vec::new(), Vec::new());
        let mut scratch = Vec::new();
        for &t in &ts {
            for &u in &us {
                let ti = if t == 0 { 0 } else { f.inv(t)? };
                let ui = if u == 0 { 0 } else { f.inv(u)? };
                let vals = [t, u, ti, ui];
                self.eval_word(&rel.lhs, &vals, &mut lw)?;
                self.eval_word(&rel.rhs, &vals, &mut rw)?;
                for g in &self.gens {
                    let mut a = g.clone();
                    let mut b = g.clone();
                    self.adj.apply_word(&lw, &mut a, &mut scratch);
                    self.adj.apply_word(&rw, &mut b, &mut scratch);
                    if a != b {
                        return Ok(Some((t, u)));
                    }
                }
            }
        }
        self.audit(rel);
        Ok(None)
    }

    /// Bound exponents of t and u in every coordinate of both sides applied
    /// to the generating vectors, and require them to be determined by
    /// evaluation on the relation's domain.
    fn audit(&mut self, rel: &Relation) {
        let q = self.field.order() as i32;
        for (var, inv, dom) in [(T, TI, rel.t), (U, UI, rel.u)] {
            if dom == Domain::Unused {
                continue;
            }
            let mut span = 0;
            let mut ok = true;
            for g in &self.gens {
                let l = self.intervals(&rel.lhs, g, var, inv);
                let r = self.intervals(&rel.rhs, g, var, inv);
                for (a, b) in l.iter().zip(&r) {
                    let hull = match (a, b) {
                        (Some(x), Some(y)) => (x.0.min(y.0), x.1.max(y.1)),
                        (Some(x), None) | (None, Some(x)) => *x,
                        (None, None) => continue,
                    };
                    span = span.max(hull.1 - hull.0);
                    ok &= match dom {
                        Domain::All => hull.0 >= 0 && hull.1 < q,
                        _ => hull.1 - hull.0 < q - 1,
                    };
                }
            }
            if var == T {
                self.max_span.0 = self.max_span.0.max(span);
            } else {
                self.max_span.1 = self.max_span.1.max(span);
            }
            self.audit_ok &= ok;
        }
    }

    fn intervals(
        &self,
        w: &SymWord,
        g: &[Elem],
        var: usize,
        inv: usize,
    ) -> Vec<Option<(i32, i32)>> {
        let mut iv: Vec<Option<(i32, i32)>> =
            g.iter().map(|&x| (x != 0).then_some((0, 0))).collect();
        for (r, c) in w.iter().rev() {
            let exps: Vec<i32> = c
                .terms()
                .map(|(m, _)| {
                    m.get(var).copied().unwrap_or(0) as i32
                        - m.get(inv).copied().unwrap_or(0) as i32
                })
                .collect();
            let (Some(&lo), Some(&hi)) = (exps.iter().min(), exps.iter().max()) else {
                continue;
            };
            let mut delta = Vec::new();
            for (k, row, col) in self.adj.term_shape(*r) {
                if let Some((a, b)) = iv[col as usize] {
                    let k = k as i32;
                    delta.push((row as usize, (a + k * lo, b + k * hi)));
                }
            }
            for (row, (a, b)) in delta {
                iv[row] = Some(match iv[row] {
                    Some((x, y)) => (x.min(a), y.max(b)),
                    None => (a, b),
                });
            }
        }
        iv
    }
}

/// Verify the Steinberg relations of the target type for an instance.
pub fn verify_generators(inst: &Instance, q: u32) -> Result<Report, ChevError> {
    let field = Gf::of_order(q)?;
    if field.characteristic() != inst.p {
        return Err(ChevError::Field(format!(
            "GF({q}) does not have characteristic {}",
            inst.p
        )));
    }
    let rs = RootSystem::of(&inst.ambient)?;
    let sc = StructureConstants::new(rs)?;
    let data = super::adjoint::AdjointData::integral(&sc);
    let adj = Adjoint::new(&data, field);
    verify_with(inst, &adj, &sc)
}

/// As [`verify_generators`] with a prepared adjoint action.
pub fn verify_with(
    inst: &Instance,
    adj: &Adjoint,
    sc: &StructureConstants,
) -> Result<Report, ChevError> {
    let mut ck = Checker::new(adj, sc);
    let cx = Ctx { inst, p: inst.p };
    let n = inst.target.rank() as i32;
    let target = RootSystem::get(&inst.target)?.cartan().to_vec();
    let (t, u) = (cx.v(T), cx.v(U));
    let mut classes = Vec::new();

    let run =
        |ck: &mut Checker, name: &str, checks: Vec<Check>| -> Result<ClassResult, ChevError> {
            let mut res = ClassResult {
                class: name.to_string(),
                checked: 0,
                failures: Vec::new(),
            };
            for c in checks {
                res.checked += 1;
                match c {
                    Check::One(rel) => {
                        if let Some((a, b)) = ck.check(&rel)? {
                            res.failures
                                .push(format!("{} fails at t = {a}, u = {b}", rel.name));
                        }
                    }
                    Check::AnyOf(name, cands) => {
                        let mut ok = false;
                        for rel in &cands {
                            if ck.check(rel)?.is_none() {
                                ok = true;
                                break;
                            }
                        }
                        if !ok {
                            res.failures
                                .push(format!("{name} fails for every choice of signs"));
                        }
                    }
                }
            }
            Ok(res)
        };

    // Additivity.
    let rels = (1..=n)
        .flat_map(|i| [i, -i])
        .map(|i| {
            Check::One(Relation {
                name: format!("y{i}(t) y{i}(u) = y{i}(t+u)"),
                lhs: [cx.y(i, &t), cx.y(i, &u)].concat(),
                rhs: cx.y(i, &t.add(&u)),
                t: Domain::All,
                u: Domain::All,
            })
        })
        .collect();
    classes.push(run(&mut ck, "additivity", rels)?);

    // Torus action, which also reads off the realized Cartan matrix.
    let mut realized = vec![vec![None; n as usize]; n as usize];
    let mut torus = ClassResult {
        class: "torus".into(),
        checked: 0,
        failures: Vec::new(),
    };
    for j in 1..=n {
        for i in 1..=n {
            torus.checked += 1;
            let mut found = None;
            for m in [0, -1, 1, -2, 2, -3, 3] {
                let hj = cx.h(j, &t);
                let ok = [i, -i].iter().all(|&s| {
                    let e = if s > 0 { m } else { -m };
                    let rel = Relation {
                        name: String::new(),
                        lhs: conj(&hj, &cx.y(s, &u)),
                        rhs: cx.y(s, &cx.tpow(T, TI, e).mul(&u)),
                        t: Domain::Units,
                        u: Domain::All,
                    };
                    matches!(ck.check(&rel), Ok(None))
                });
                if ok {
                    found = Some(m);
                    break;
                }
            }
            match found {
                Some(m) => realized[(i - 1) as usize][(j - 1) as usize] = Some(m),
                None => torus.failures.push(format!(
                    "h{j}(t) y±{i}(u) h{j}(t)⁻¹ is not y±{i}(t^m u) for |m| ≤ 3"
                )),
            }
        }
    }
    classes.push(torus);
    // Pairing data for the remaining relations: realized where available.
    let a = |i: i32, j: i32| -> i32 {
        realized[(i - 1) as usize][(j - 1) as usize]
            .unwrap_or(target[(i - 1) as usize][(j - 1) as usize])
    };

    // Rank one.
    let mut rels = Vec::new();
    for i in 1..=n {
        let ni = cx.n(i, &t);
        let t2 = t.mul(&t);
        let ti2 = cx.v(TI).mul(&cx.v(TI));
        rels.push(Check::One(Relation {
            name: format!("n{i}(t) y{i}(u) n{i}(t)⁻¹ = y-{i}(-t⁻²u)"),
            lhs: conj(&ni, &cx.y(i, &u)),
            rhs: cx.y(-i, &ti2.mul(&u).neg()),
            t: Domain::Units,
            u: Domain::All,
        }));
        rels.push(Check::One(Relation {
            name: format!("n{i}(t) y-{i}(u) n{i}(t)⁻¹ = y{i}(-t²u)"),
            lhs: conj(&ni, &cx.y(-i, &u)),
            rhs: cx.y(i, &t2.mul(&u).neg()),
            t: Domain::Units,
            u: Domain::All,
        }));
        rels.push(Check::One(Relation {
            name: format!("h{i}(t) h{i}(u) = h{i}(tu)"),
            lhs: [cx.h(i, &t), cx.h(i, &u)].concat(),
            rhs: cx.h(i, &t.mul(&u)),
            t: Domain::Units,
            u: Domain::Units,
        }));
        for j in 1..=n {
            if j > i {
                rels.push(Check::One(Relation {
                    name: format!("h{i}(t) h{j}(u) = h{j}(u) h{i}(t)"),
                    lhs: [cx.h(i, &t), cx.h(j, &u)].concat(),
                    rhs: [cx.h(j, &u), cx.h(i, &t)].concat(),
                    t: Domain::Units,
                    u: Domain::Units,
                }));
            }
            let rhs = if i == j {
                cx.h(i, &cx.v(UI))
            } else {
                [cx.h(j, &u), cx.h(i, &cx.tpow(U, UI, -a(i, j)))].concat()
            };
            rels.push(Check::One(Relation {
                name: format!("n{i}(t) h{j}(u) n{i}(t)⁻¹ = h of the reflected coroot"),
                lhs: conj(&ni, &cx.h(j, &u)),
                rhs,
                t: Domain::Units,
                u: Domain::Units,
            }));
        }
    }
    classes.push(run(&mut ck, "rank one", rels)?);

    // Rank two among positive generators.
    let mut rels = Vec::new();
    let mut unsupported = Vec::new();
    let one = cx.c(1);
    for i in 1..=n {
        for j in (i + 1)..=n {
            match a(i, j) * a(j, i) {
                0 => rels.push(Check::One(Relation {
                    name: format!("[y{i}(t), y{j}(u)] = 1"),
                    lhs: comm(&cx.y(i, &t), &cx.y(j, &u)),
                    rhs: Vec::new(),
                    t: Domain::All,
                    u: Domain::All,
                })),
                1 => {
                    let yij = |s: &Poly| comm(&cx.y(i, s), &cx.y(j, &one));
                    rels.push(Check::One(Relation {
                        name: format!("[y{i}(t), y{j}(u)] = y{i}{j}(tu)"),
                        lhs: comm(&cx.y(i, &t), &cx.y(j, &u)),
                        rhs: yij(&t.mul(&u)),
                        t: Domain::All,
                        u: Domain::All,
                    }));
                    rels.push(Check::One(Relation {
                        name: format!("y{i}{j}(t) y{i}{j}(u) = y{i}{j}(t+u)"),
                        lhs: [yij(&t), yij(&u)].concat(),
                        rhs: yij(&t.add(&u)),
                        t: Domain::All,
                        u: Domain::All,
                    }));
                    for k in [i, j] {
                        rels.push(Check::One(Relation {
                            name: format!("[y{i}{j}(t), y{k}(u)] = 1"),
                            lhs: comm(&yij(&t), &cx.y(k, &u)),
                            rhs: Vec::new(),
                            t: Domain::All,
                            u: Domain::All,
                        }));
                    }
                }
                2 => {
                    let (l, s) = if a(i, j) == -2 { (i, j) } else { (j, i) };
                    let nl = cx.n(l, &one);
                    let ns = cx.n(s, &one);
                    // Root elements for l+s and l+2s by Weyl conjugation.
                    let y1 = |e: &Poly| conj(&nl, &cx.y(s, e));
                    let y2 = |e: &Poly| conj(&ns, &cx.y(l, e));
                    let signs: &[i64] = if cx.p == 2 { &[1] } else { &[1, -1] };
                    let lhs = comm(&cx.y(s, &u), &cx.y(l, &t));
                    let mut cands = Vec::new();
                    for &e1 in signs {
                        for &e2 in signs {
                            cands.push(Relation {
                                name: String::new(),
                                lhs: lhs.clone(),
                                rhs: [y1(&t.mul(&u).scale(e1)), y2(&t.mul(&u).mul(&u).scale(e2))]
                                    .concat(),
                                t: Domain::All,
                                u: Domain::All,
                            });
                        }
                    }
                    rels.push(Check::AnyOf(
                        format!("[y{s}(u), y{l}(t)] = Y(±tu) Y'(±tu²)"),
                        cands,
                    ));
                    let lhs = comm(&y1(&t), &cx.y(s, &u));
                    let cands = signs
                        .iter()
                        .map(|&e| Relation {
                            name: String::new(),
                            lhs: lhs.clone(),
                            rhs: y2(&t.mul(&u).scale(2 * e)),
                            t: Domain::All,
                            u: Domain::All,
                        })
                        .collect();
                    rels.push(Check::AnyOf(format!("[Y(t), y{s}(u)] = Y'(±2tu)"), cands));
                    let pairs: [(SymWord, SymWord, &str); 4] = [
                        (y1(&t), cx.y(l, &u), "[Y(t), y_long(u)] = 1"),
                        (y2(&t), cx.y(l, &u), "[Y'(t), y_long(u)] = 1"),
                        (y2(&t), cx.y(s, &u), "[Y'(t), y_short(u)] = 1"),
                        (y1(&t), y2(&u), "[Y(t), Y'(u)] = 1"),
                    ];
                    for (x, y, name) in pairs {
                        rels.push(Check::One(Relation {
                            name: format!("{name} for y{l}, y{s}"),
                            lhs: comm(&x, &y),
                            rhs: Vec::new(),
                            t: Domain::All,
                            u: Domain::All,
                        }));
                    }
                }
                _ => unsupported.push(format!("pair y{i}, y{j} has unsupported type")),
            }
        }
    }
    let mut rank2 = run(&mut ck, "rank two", rels)?;
    rank2.failures.extend(unsupported);
    classes.push(rank2);

    let realized_type = realized_type(&realized, &inst.target);
    Ok(Report {
        q: adj.field().order(),
        classes,
        realized_cartan: realized,
        target_cartan: target,
        realized_type,
        degree_span: ck.max_span,
        audit_ok: ck.audit_ok,
    })
}

/// Name the Cartan type of the realized matrix if it matches the target or its
/// dual up to relabelling of nodes.
fn realized_type(m: &[Vec<Option<i32>>], target: &CartanType) -> Option<String> {
    let m: Vec<Vec<i32>> = m
        .iter()
        .map(|r| r.iter().copied().collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let name = target.to_string();
    let dual = match name.chars().next()? {
        'B' => name.replacen('B', "C", 1),
        'C' => name.replacen('C', "B", 1),
        _ => name.clone(),
    };
    for cand in [name, dual] {
        let Ok(rs) = RootSystem::of(&cand) else {
            continue;
        };
        let c = rs.cartan();
        let n = c.len();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if (0..n).all(|i| (0..n).all(|j| m[i][j] == c[perm[i]][perm[j]])) {
                return Some(cand);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    None
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Dimension of the subspace of L(G) fixed by all `y_{±i}(t)`, `t ∈ GF(q)*`.
pub fn instance_fixed_space_dim(inst: &Instance, q: u32) -> Result<usize, ChevError> {
    let field = Gf::of_order(q)?;
    let rs = RootSystem::of(&inst.ambient)?;
    let sc = StructureConstants::new(rs)?;
    let data = super::adjoint::AdjointData::integral(&sc);
    let adj = Adjoint::new(&data, field.clone());
    let mut mats = Vec::new();
    for w in inst.gens.values() {
        for t in field.nonzero() {
            let letters: Vec<Letter> = w
                .iter()
                .map(|(r, c)| {
                    Ok(Letter {
                        root: *r,
                        coeff: c.eval(&field, &[t])?,
                    })
                })
                .collect::<Result<_, ChevError>>()?;
            mats.push(adj.realize(&letters));
        }
    }
    Ok(fixed_space_dim(&mats, adj.dim(), &field))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_families_parse() {
        let fams = builtin();
        let b3 = fams.iter().find(|f| f.name == "b3e8").unwrap();
        assert_eq!(b3.gens.len(), 6);
        assert_eq!(b3.gens[&3].len(), 9);
        assert_eq!(
            b3.tuples
                .iter()
                .filter(|(l, _)| l.starts_with("rep"))
                .count(),
            8
        );
        let d4 = fams.iter().find(|f| f.name == "d4e8").unwrap();
        assert_eq!(d4.gens.len(), 8);
        assert_eq!(d4.tuple("MR").unwrap(), &[1, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn instantiation_drops_vanishing_letters() {
        let b3 = builtin_family("b3e8").unwrap();
        let inst = b3.instantiate(b3.tuple("rep8").unwrap()).unwrap();
        assert_eq!(inst.gens[&3].len(), 2);
        assert_eq!(inst.gens[&-3].len(), 2);
        assert_eq!(inst.gens[&1].len(), 2);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(load("family f ; E8 ; B3 ; a\ngen f ; 1 ; x9(t)", 2).is_err());
        assert!(load("family f ; E8 ; B3 ; a\ngen f ; 1 ; x3(b*t)", 2).is_err());
        assert!(load("family f ; A2 ; A1 ; a\ngen f ; 1 ; x1(t)", 2).is_err());
        assert!(load("bogus", 2).is_err());
    }

    #[test]
    fn levi_a2_subsystem_satisfies_relations() {
        let text = "family a2 ; A3 ; A2 ; \ngen a2 ; 1 ; x1(t)\ngen a2 ; -1 ; x-1(t)\ngen a2 ; 2 ; x2(t)\ngen a2 ; -2 ; x-2(t)\n";
        let fam = load(text, 2).unwrap().remove(0);
        let rep = verify_generators(&fam.instantiate(&[]).unwrap(), 8).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.realized_type.as_deref(), Some("A2"));
    }
}
