//! The adjoint representation on the Chevalley basis, integrally and over GF(q).
//!
//! Basis order: root vectors `e_r` in the root order of the root system, then
//! `h_1, …, h_n`. A root element `x_r(t)` acts as `Σ_k t^k (ad e_r)^k / k!`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::rootdata::{Root, RootSystem};

use super::field::{Elem, Gf};
use super::structure::StructureConstants;
use super::ChevError;

/// Integer sparse matrix entry `(row, col, value)`.
type Entry = (u16, u16, i64);

/// Integral divided powers of `ad e_r` for every root.
#[derive(Debug)]
pub struct AdjointData {
    rs: Arc<RootSystem>,
    dim: usize,
    nroots: usize,
    /// `powers[r][k-1]` = entries of `(ad e_r)^k / k!`.
    powers: Vec<Vec<Vec<Entry>>>,
    ad: Vec<Vec<Entry>>,
}

impl AdjointData {
    pub fn integral(sc: &StructureConstants) -> AdjointData {
        let rs = sc.root_system().clone();
        let nroots = sc.num_roots();
        let rank = rs.rank();
        let dim = nroots + rank;
        let roots = rs.roots();
        let mut ad = Vec::with_capacity(nroots);
        for g in 0..nroots {
            let mut e: Vec<Entry> = Vec::new();
            let gneg = sc.neg_index(g);
            for b in 0..nroots {
                if let Some(t) = sc.sum_index(g, b) {
                    e.push((t as u16, b as u16, sc.n(g, b) as i64));
                } else if b == gneg {
                    for (i, c) in coroot_coeffs(&rs, &roots[g]).into_iter().enumerate() {
                        if c != 0 {
                            e.push(((nroots + i) as u16, b as u16, c as i64));
                        }
                    }
                }
            }
            for i in 0..rank {
                let k = rs.root_pairing(&roots[g], &roots[i]);
                if k != 0 {
                    e.push((g as u16, (nroots + i) as u16, -(k as i64)));
                }
            }
            ad.push(e);
        }
        let powers = ad
            .iter()
            .map(|a| {
                let mut out: Vec<Vec<Entry>> = vec![a.clone()];
                let mut k = 1i64;
                loop {
                    k += 1;
                    let next = sparse_mul(a, out.last().expect("nonempty"));
                    if next.is_empty() {
                        break;
                    }
                    let divided: Vec<Entry> = next
                        .into_iter()
                        .map(|(r, c, v)| {
                            assert_eq!(v % k, 0, "divided power is integral");
                            (r, c, v / k)
                        })
                        .collect();
                    out.push(divided);
                }
                out
            })
            .collect();
        AdjointData {
            rs,
            dim,
            nroots,
            powers,
            ad,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_roots(&self) -> usize {
        self.nroots
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn basis_root(&self, r: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim];
        v[r] = 1;
        v
    }

    /// Lie bracket of two integral vectors.
    pub fn bracket(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim];
        for (r, &cx) in x.iter().enumerate().take(self.nroots) {
            if cx == 0 {
                continue;
            }
            for &(row, col, v) in &self.ad[r] {
                out[row as usize] += cx * v * y[col as usize];
            }
        }
        // [h_i, y] = -[y, h_i]
        for i in 0..self.rs.rank() {
            let cx = x[self.nroots + i];
            if cx == 0 {
                continue;
            }
            for (r, &cy) in y.iter().enumerate().take(self.nroots) {
                if cy != 0 {
                    out[r] += cx
                        * cy
                        * self
                            .rs
                            .root_pairing(&self.rs.roots()[r], &self.rs.roots()[i])
                            as i64;
                }
            }
        }
        out
    }

    /// Divided powers of `ad e_r`; `powers(r)[k-1]` is the k-th.
    pub fn powers(&self, r: usize) -> &[Vec<Entry>] {
        &self.powers[r]
    }

    /// Integer matrix (row-major) of `x_r(t)`.
    pub fn integral_matrix(&self, r: usize, t: i64) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.dim]; self.dim];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut tk = 1i64;
        for pw in &self.powers[r] {
            tk *= t;
            for &(row, col, v) in pw {
                m[row as usize][col as usize] += v * tk;
            }
        }
        m
    }
}

fn sparse_mul(a: &[Entry], b: &[Entry]) -> Vec<Entry> {
    let mut acc: BTreeMap<(u16, u16), i64> = BTreeMap::new();
    for &(ra, ca, va) in a {
        for &(rb, cb, vb) in b {
            if ca == rb {
                *acc.entry((ra, cb)).or_insert(0) += va * vb;
            }
        }
    }
    acc.into_iter()
        .filter(|&(_, v)| v != 0)
        .map(|((r, c), v)| (r, c, v))
        .collect()
}

/// Coefficients of the coroot `r^∨` over the simple coroots.
pub fn coroot_coeffs(rs: &RootSystem, r: &Root) -> Vec<i32> {
    let n = rs.norm(r);
    (0..rs.rank())
        .map(|i| {
            let num = r.coeffs()[i] * rs.gram()[i][i];
            debug_assert_eq!(num % n, 0);
            num / n
        })
        .collect()
}

/// A root element `x_r(c)` with its coefficient in GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub root: usize,
    pub coeff: Elem,
}

/// A letter of a general group word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupLetter {
    /// `x_γ(c)`.
    X(usize, Elem),
    /// `h_γ(c)`, `c ≠ 0`.
    H(usize, Elem),
    /// `n_γ = x_γ(1) x_{-γ}(-1) x_γ(1)`.
    N(usize),
}

/// Adjoint action over a fixed finite field.
#[derive(Debug)]
pub struct Adjoint {
    field: Gf,
    dim: usize,
    nroots: usize,
    rs: Arc<RootSystem>,
    /// Per root: `(k, row, col, value mod p)` for the k-th divided power.
    terms: Vec<Vec<(u8, u16, u16, Elem)>>,
}

impl Adjoint {
    pub fn new(data: &AdjointData, field: Gf) -> Adjoint {
        let terms = (0..data.num_roots())
            .map(|r| {
                let mut t = Vec::new();
                for (k, pw) in data.powers(r).iter().enumerate() {
                    for &(row, col, v) in pw {
                        let c = field.from_int(v);
                        if c != 0 {
                            t.push(((k + 1) as u8, row, col, c));
                        }
                    }
                }
                t
            })
            .collect();
        Adjoint {
            field,
            dim: data.dim(),
            nroots: data.num_roots(),
            rs: data.root_system().clone(),
            terms,
        }
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_roots(&self) -> usize {
        self.nroots
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    /// Nonzero positions `(k, row, col)` of the divided powers of `ad e_r` mod p.
    pub fn term_shape(&self, r: usize) -> impl Iterator<Item = (u8, u16, u16)> + '_ {
        self.terms[r].iter().map(|&(k, row, col, _)| (k, row, col))
    }

    /// Apply `x_r(c)` to a dense vector in place.
    pub fn apply_letter(&self, l: Letter, v: &mut [Elem], scratch: &mut Vec<(u16, Elem)>) {
        if l.coeff == 0 {
            return;
        }
        let f = &self.field;
        let c2 = f.mul(l.coeff, l.coeff);
        scratch.clear();
        for &(k, row, col, val) in &self.terms[l.root] {
            let x = v[col as usize];
            if x == 0 {
                continue;
            }
            let s = match k {
                1 => l.coeff,
                2 => c2,
                k => f.pow(l.coeff, k as i64).expect("nonzero"),
            };
            scratch.push((row, f.mul(f.mul(s, val), x)));
        }
        for &(row, d) in scratch.iter() {
            v[row as usize] = f.add(v[row as usize], d);
        }
    }

    /// Apply a word (rightmost letter first) to a vector.
    pub fn apply_word(&self, w: &[Letter], v: &mut [Elem], scratch: &mut Vec<(u16, Elem)>) {
        for &l in w.iter().rev() {
            self.apply_letter(l, v, scratch);
        }
    }

    /// Apply `h_γ(c)`: `e_β ↦ c^{<β,γ^∨>} e_β`, fixing the Cartan subalgebra.
    pub fn apply_torus(&self, root: usize, c: Elem, v: &mut [Elem]) -> Result<(), ChevError> {
        if c == 0 {
            return Err(ChevError::Word("h letter with zero coefficient".into()));
        }
        let roots = self.rs.roots();
        for (b, x) in v.iter_mut().enumerate().take(self.nroots) {
            if *x != 0 {
                let k = self.rs.root_pairing(&roots[b], &roots[root]);
                *x = self.field.mul(*x, self.field.pow(c, k as i64)?);
            }
        }
        Ok(())
    }

    /// Expand `n_γ` into root elements.
    fn n_letters(&self, root: usize) -> [Letter; 3] {
        let npos = self.rs.num_positive();
        let neg = if root < npos {
            root + npos
        } else {
            root - npos
        };
        let m1 = self.field.neg(1);
        [
            Letter { root, coeff: 1 },
            Letter {
                root: neg,
                coeff: m1,
            },
            Letter { root, coeff: 1 },
        ]
    }

    /// Apply a general group word (rightmost letter first).
    pub fn apply_group_word(&self, w: &[GroupLetter], v: &mut [Elem]) -> Result<(), ChevError> {
        let mut scratch = Vec::new();
        for l in w.iter().rev() {
            match *l {
                GroupLetter::X(root, coeff) => {
                    self.apply_letter(Letter { root, coeff }, v, &mut scratch)
                }
                GroupLetter::H(root, c) => self.apply_torus(root, c, v)?,
                GroupLetter::N(root) => self.apply_word(&self.n_letters(root), v, &mut scratch),
            }
        }
        Ok(())
    }

    /// Dense matrix of a general group word.
    pub fn realize_group_word(&self, w: &[GroupLetter]) -> Result<MatRep, ChevError> {
        let mut cols = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut v = vec![0; self.dim];
            v[j] = 1;
            self.apply_group_word(w, &mut v)?;
            cols.push(v);
        }
        Ok(MatRep::from_columns(self.field.clone(), cols))
    }

    /// Dense matrix of a word.
    pub fn realize(&self, w: &[Letter]) -> MatRep {
        let mut cols = Vec::with_capacity(self.dim);
        let mut scratch = Vec::new();
        for j in 0..self.dim {
            let mut v = vec![0; self.dim];
            v[j] = 1;
            self.apply_word(w, &mut v, &mut scratch);
            cols.push(v);
        }
        MatRep::from_columns(self.field.clone(), cols)
    }

    /// Basis vector index of `e_r`.
    pub fn root_vector(&self, r: &Root) -> Option<usize> {
        self.rs.index_of(r)
    }

    /// Vectors that generate the whole Lie algebra over the field: any Lie
    /// algebra automorphism fixing them is the identity. Found by closing a
    /// candidate set under brackets mod p.
    pub fn generating_vectors(&self, sc: &StructureConstants) -> Vec<Vec<Elem>> {
        let rank = self.rs.rank();
        let npos = self.rs.num_positive();
        let f = &self.field;
        let simple_sum = |neg: bool| {
            let mut v = vec![0; self.dim];
            for i in 0..rank {
                v[if neg { i + npos } else { i }] = 1;
            }
            v
        };
        let pair = vec![simple_sum(false), {
            // Σ e_{-α_i} plus the highest root vector breaks symmetry.
            let mut v = simple_sum(true);
            let top = self.rs.index_of(&self.rs.highest_root()).expect("root");
            v[top] = 1;
            v
        }];
        if self.generated_dim(sc, &pair) == self.dim {
            return pair;
        }
        let simples: Vec<Vec<Elem>> = (0..rank)
            .flat_map(|i| [i, i + npos])
            .map(|r| {
                let mut v = vec![0; self.dim];
                v[r] = f.one();
                v
            })
            .collect();
        if self.generated_dim(sc, &simples) == self.dim {
            return simples;
        }
        (0..self.dim)
            .map(|j| {
                let mut v = vec![0; self.dim];
                v[j] = 1;
                v
            })
            .collect()
    }

    /// Dimension of the Lie subalgebra generated by `gens` over the prime field.
    pub fn generated_dim(&self, sc: &StructureConstants, gens: &[Vec<Elem>]) -> usize {
        let f = &self.field;
        let mut basis = Echelon::new(self.dim, f.clone());
        let mut queue: Vec<Vec<Elem>> = Vec::new();
        for g in gens {
            if basis.insert(g.clone()) {
                queue.push(g.clone());
            }
        }
        let mut all: Vec<Vec<Elem>> = queue.clone();
        while let Some(x) = queue.pop() {
            for y in all.clone() {
                let z = self.bracket(sc, &x, &y);
                if basis.insert(z.clone()) {
                    queue.push(z.clone());
                    all.push(z);
                }
            }
            if basis.rank() == self.dim {
                break;
            }
        }
        basis.rank()
    }

    /// Lie bracket over the field.
    pub fn bracket(&self, sc: &StructureConstants, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.dim];
        let roots = self.rs.roots();
        let rank = self.rs.rank();
        let mut add = |i: usize, c: Elem| out[i] = f.add(out[i], c);
        for a in 0..self.dim {
            if x[a] == 0 {
                continue;
            }
            for b in 0..self.dim {
                if y[b] == 0 {
                    continue;
                }
                let c = f.mul(x[a], y[b]);
                match (a < self.nroots, b < self.nroots) {
                    (true, true) => {
                        if let Some(s) = sc.sum_index(a, b) {
                            add(s, f.mul(c, f.from_int(sc.n(a, b) as i64)));
                        } else if b == sc.neg_index(a) {
                            for (i, k) in coroot_coeffs(&self.rs, &roots[a]).into_iter().enumerate()
                            {
                                add(self.nroots + i, f.mul(c, f.from_int(k as i64)));
                            }
                        }
                    }
                    (true, false) => {
                        let k = self.rs.root_pairing(&roots[a], &roots[b - self.nroots]);
                        add(a, f.mul(c, f.from_int(-(k as i64))));
                    }
                    (false, true) => {
                        let k = self.rs.root_pairing(&roots[b], &roots[a - self.nroots]);
                        add(b, f.mul(c, f.from_int(k as i64)));
                    }
                    (false, false) => {}
                }
            }
        }
        let _ = rank;
        out
    }
}

/// Row-echelon accumulator over GF(q).
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    field: Gf,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl Echelon {
    pub fn new(dim: usize, field: Gf) -> Echelon {
        Echelon {
            dim,
            field,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the rows; returns the remainder.
    pub fn reduce(&self, mut v: Vec<Elem>) -> Vec<Elem> {
        let f = &self.field;
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                let nc = f.neg(c);
                for k in 0..self.dim {
                    if row[k] != 0 {
                        v[k] = f.add(v[k], f.mul(nc, row[k]));
                    }
                }
            }
        }
        v
    }

    /// Insert `v`; returns whether the span grew.
    pub fn insert(&mut self, v: Vec<Elem>) -> bool {
        let f = &self.field;
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[piv]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // Keep rows fully reduced at the new pivot.
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                let nc = f.neg(c);
                for k in 0..self.dim {
                    if v[k] != 0 {
                        row[k] = f.add(row[k], f.mul(nc, v[k]));
                    }
                }
            }
        }
        self.rows.push((piv, v));
        true
    }
}

/// Dense square matrix over GF(q), stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatRep {
    n: usize,
    cols: Vec<Vec<Elem>>,
    field_order: u32,
    #[doc(hidden)]
    field: FieldTag,
}

#[derive(Clone, Debug)]
struct FieldTag(Gf);

impl PartialEq for FieldTag {
    fn eq(&self, o: &Self) -> bool {
        self.0.order() == o.0.order() && self.0.modulus() == o.0.modulus()
    }
}
impl Eq for FieldTag {}

impl MatRep {
    pub fn from_columns(field: Gf, cols: Vec<Vec<Elem>>) -> MatRep {
        MatRep {
            n: cols.len(),
            field_order: field.order(),
            cols,
            field: FieldTag(field),
        }
    }

    pub fn identity(field: Gf, n: usize) -> MatRep {
        let cols = (0..n)
            .map(|j| {
                let mut v = vec![0; n];
                v[j] = 1;
                v
            })
            .collect();
        MatRep::from_columns(field, cols)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Elem {
        self.cols[col][row]
    }

    pub fn is_identity(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(j, c)| c.iter().enumerate().all(|(i, &x)| x == (i == j) as Elem))
    }

    pub fn nonzeros(&self) -> usize {
        self.cols
            .iter()
            .map(|c| c.iter().filter(|&&x| x != 0).count())
            .sum()
    }

    pub fn mul(&self, o: &MatRep) -> MatRep {
        let f = &self.field.0;
        let cols = o
            .cols
            .iter()
            .map(|oc| {
                let mut out = vec![0; self.n];
                for (k, &c) in oc.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (i, &a) in self.cols[k].iter().enumerate() {
                        if a != 0 {
                            out[i] = f.add(out[i], f.mul(a, c));
                        }
                    }
                }
                out
            })
            .collect();
        MatRep::from_columns(f.clone(), cols)
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> MatRep {
        let f = &self.field.0;
        let mut out = self.clone();
        for j in 0..self.n {
            out.cols[j][j] = f.sub(out.cols[j][j], 1);
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.n, self.field.0.clone());
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }

    pub fn determinant(&self) -> Elem {
        let f = &self.field.0;
        let n = self.n;
        let mut a: Vec<Vec<Elem>> = (0..n)
            .map(|i| (0..n).map(|j| self.cols[j][i]).collect())
            .collect();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
                return 0;
            };
            if p != c {
                a.swap(p, c);
                det = f.neg(det);
            }
            det = f.mul(det, a[c][c]);
            let inv = f.inv(a[c][c]).expect("pivot");
            for r in (c + 1)..n {
                if a[r][c] != 0 {
                    let m = f.neg(f.mul(a[r][c], inv));
                    for k in c..n {
                        a[r][k] = f.add(a[r][k], f.mul(m, a[c][k]));
                    }
                }
            }
        }
        det
    }

    /// Rows of the matrix, for kernel computations.
    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.cols[j][i]).collect())
            .collect()
    }
}

/// Dimension of the common fixed space of the given matrices.
pub fn fixed_space_dim(mats: &[MatRep], dim: usize, field: &Gf) -> usize {
    let mut e = Echelon::new(dim, field.clone());
    for m in mats {
        for row in m.minus_identity().rows() {
            e.insert(row);
            if e.rank() == dim {
                return 0;
            }
        }
    }
    dim - e.rank()
}
