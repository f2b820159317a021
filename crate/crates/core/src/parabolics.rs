//! Level and shape decomposition of the unipotent radical of a standard
//! parabolic subgroup, with Levi weights in the fixed component numbering.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::rootdata::{CartanType, LieType, Root, RootSystem, Weight};
use crate::weylgrp::dual_weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParabolicError {
    #[error("node set must be a proper subset of the {0} nodes")]
    NotProper(usize),
    #[error("node {0} out of range")]
    BadNode(usize),
    #[error("no shape {0} in this radical")]
    UnknownShape(String),
    #[error("unrecognised Levi component on nodes {0:?}")]
    UnknownComponent(Vec<usize>),
}

/// A simple factor of the Levi subgroup with its ordered simple roots,
/// given as 0-based nodes of the ambient diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviComponent {
    pub ty: LieType,
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LeviContext<'a> {
    pub rs: &'a RootSystem,
    pub j: Vec<usize>,
    pub components: Vec<LeviComponent>,
}

impl<'a> LeviContext<'a> {
    pub fn new(rs: &'a RootSystem, j: &[usize]) -> Result<Self, ParabolicError> {
        let mut j: Vec<usize> = j.to_vec();
        j.sort_unstable();
        j.dedup();
        if let Some(&n) = j.iter().find(|&&n| n >= rs.rank()) {
            return Err(ParabolicError::BadNode(n));
        }
        let mut comps = Vec::new();
        let mut seen = vec![false; rs.rank()];
        for &start in &j {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let a = comp[k];
                for &b in &j {
                    if !seen[b] && rs.adjacent(a, b) {
                        seen[b] = true;
                        comp.push(b);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            comps.push(classify(rs, &comp)?);
        }
        comps.sort_by_key(|c| *c.nodes.iter().min().expect("nonempty"));
        Ok(LeviContext {
            rs,
            j,
            components: comps,
        })
    }

    /// Type of the derived Levi subgroup, components in order.
    pub fn levi_type(&self) -> Option<CartanType> {
        if self.components.is_empty() {
            None
        } else {
            Some(CartanType(self.components.iter().map(|c| c.ty).collect()))
        }
    }

    /// Levi weight of a root: pairings with the ordered Levi coroots.
    pub fn levi_weight(&self, r: &Root) -> Weight {
        let cart = self.rs.cartan();
        let mut out = Vec::new();
        for c in &self.components {
            for &n in &c.nodes {
                out.push(
                    (0..self.rs.rank())
                        .map(|i| r.coeffs()[i] * cart[i][n])
                        .sum(),
                );
            }
        }
        Weight(out)
    }

    pub fn in_levi(&self, r: &Root) -> bool {
        (0..self.rs.rank()).all(|i| r.coeffs()[i] == 0 || self.j.contains(&i))
    }

    pub fn level(&self, r: &Root) -> i32 {
        (0..self.rs.rank())
            .filter(|i| !self.j.contains(i))
            .map(|i| r.coeffs()[i])
            .sum()
    }

    pub fn shape(&self, r: &Root) -> Vec<i32> {
        (0..self.rs.rank())
            .map(|i| {
                if self.j.contains(&i) {
                    0
                } else {
                    r.coeffs()[i]
                }
            })
            .collect()
    }

    /// `-w0` of the derived Levi subgroup applied to a Levi weight.
    pub fn dual(&self, w: &Weight) -> Weight {
        let Some(ty) = self.levi_type() else {
            return w.clone();
        };
        let levi = RootSystem::get(&ty).expect("Levi type is admissible");
        dual_weight(&levi, w)
    }
}

fn classify(rs: &RootSystem, comp: &[usize]) -> Result<LeviComponent, ParabolicError> {
    let n = comp.len();
    let err = || ParabolicError::UnknownComponent(comp.iter().map(|i| i + 1).collect());
    let nbrs = |a: usize| -> Vec<usize> {
        comp.iter()
            .copied()
            .filter(|&b| rs.adjacent(a, b))
            .collect()
    };
    let bond = |a: usize, b: usize| rs.cartan()[a][b] * rs.cartan()[b][a];
    let mk = |family: char, nodes: Vec<usize>| -> Result<LeviComponent, ParabolicError> {
        Ok(LeviComponent {
            ty: LieType::new(family, n).map_err(|_| err())?,
            nodes,
        })
    };
    if n == 1 {
        return mk('A', comp.to_vec());
    }
    if let Some(&branch) = comp.iter().find(|&&a| nbrs(a).len() == 3) {
        let mut arms: Vec<Vec<usize>> = nbrs(branch)
            .into_iter()
            .map(|first| {
                let mut arm = vec![first];
                let mut prev = branch;
                let mut cur = first;
                while let Some(next) = nbrs(cur).into_iter().find(|&x| x != prev) {
                    arm.push(next);
                    prev = cur;
                    cur = next;
                }
                arm
            })
            .collect();
        arms.sort_by_key(|a| (a.len(), a[0]));
        let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        let is_e_ambient = rs.cartan_type().components()[rs.component_of(comp[0])].family == 'E';
        match lens.as_slice() {
            [1, 1, k] => {
                let one_based: Vec<usize> = comp.iter().map(|i| i + 1).collect();
                if *k == 1 && is_e_ambient && one_based == [2, 3, 4, 5] {
                    return mk('D', vec![1, 3, 2, 4]);
                }
                // Long arm from its leaf, the branch node, then the two
                // short leaves with node 2 last.
                let mut nodes: Vec<usize> = arms[2].iter().rev().copied().collect();
                nodes.push(branch);
                let (mut a, mut b) = (arms[0][0], arms[1][0]);
                if a == 1 || (b != 1 && a > b) {
                    std::mem::swap(&mut a, &mut b);
                }
                nodes.push(a);
                nodes.push(b);
                mk('D', nodes)
            }
            [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => mk('E', comp.to_vec()),
            _ => Err(err()),
        }
    } else {
        let ends: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&a| nbrs(a).len() == 1)
            .collect();
        if ends.len() != 2 {
            return Err(err());
        }
        let mut path = vec![ends[0].min(ends[1])];
        while path.len() < n {
            let cur = *path.last().unwrap();
            let next = nbrs(cur)
                .into_iter()
                .find(|x| !path.contains(x))
                .ok_or_else(err)?;
            path.push(next);
        }
        let bonds: Vec<i32> = path.windows(2).map(|w| bond(w[0], w[1])).collect();
        if bonds.iter().all(|&b| b == 1) {
            return mk('A', path);
        }
        if bonds.contains(&3) {
            // Short root first.
            if rs.gram()[path[0]][path[0]] > rs.gram()[path[1]][path[1]] {
                path.reverse();
            }
            return mk('G', path);
        }
        let dpos = bonds.iter().position(|&b| b == 2).ok_or_else(err)?;
        if dpos != 0 && dpos != n - 2 {
            // Interior double bond: long roots first.
            if rs.gram()[path[0]][path[0]] < rs.gram()[path[n - 1]][path[n - 1]] {
                path.reverse();
            }
            return mk('F', path);
        }
        if n == 2 {
            // Long root first, giving B2.
            if rs.gram()[path[0]][path[0]] < rs.gram()[path[1]][path[1]] {
                path.reverse();
            }
            return mk('B', path);
        }
        if dpos == 0 {
            path.reverse();
        }
        let last = path[n - 1];
        let prev = path[n - 2];
        let fam = if rs.gram()[last][last] < rs.gram()[prev][prev] {
            'B'
        } else {
            'C'
        };
        mk(fam, path)
    }
}

/// The span of root spaces of one shape, a module for the Levi subgroup.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeModule {
    pub level: i32,
    /// Coefficients over all nodes, zero on the Levi nodes.
    pub shape: Vec<i32>,
    pub member_roots: Vec<Root>,
    pub highest_weight: Weight,
    pub lowest_weight: Weight,
    /// Highest member root.
    pub top_root: Root,
    /// Lowest member root; its root group generates the module.
    pub generator: Root,
    pub flagged_nonsemisimple: bool,
}

impl ShapeModule {
    pub fn dim(&self) -> usize {
        self.member_roots.len()
    }

    pub fn shape_label(&self) -> String {
        self.shape.iter().map(|c| c.to_string()).collect()
    }

    /// Highest weight of the dual module, `-lowest`.
    pub fn dual_high_weight(&self) -> Weight {
        self.lowest_weight.neg()
    }

    pub fn is_trivial(&self) -> bool {
        self.highest_weight.is_zero()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Level {
    pub index: i32,
    pub shapes: Vec<ShapeModule>,
}

impl Level {
    pub fn dim(&self) -> usize {
        self.shapes.iter().map(|s| s.dim()).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Filtration {
    pub levi: Vec<LeviComponent>,
    pub levels: Vec<Level>,
}

impl Filtration {
    pub fn dim(&self) -> usize {
        self.levels.iter().map(|l| l.dim()).sum()
    }

    pub fn shapes(&self) -> impl Iterator<Item = &ShapeModule> {
        self.levels.iter().flat_map(|l| l.shapes.iter())
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for lvl in &self.levels {
            let parts: Vec<String> = lvl
                .shapes
                .iter()
                .map(|s| {
                    format!(
                        "{}@{} x{} [{}]",
                        s.highest_weight.label(),
                        s.shape_label(),
                        s.dim(),
                        s.generator
                    )
                })
                .collect();
            writeln!(f, "{}: {}", lvl.index, parts.join(" + "))?;
        }
        Ok(())
    }
}

/// Level/shape decomposition of `Q_J` without characteristic flags.
pub fn decompose_radical(rs: &RootSystem, j: &[usize]) -> Result<Filtration, ParabolicError> {
    decompose_radical_char(rs, j, None)
}

/// As [`decompose_radical`], flagging shapes that fail to be semisimple
/// in characteristic `p` for the three special `(G, p)` cases.
pub fn decompose_radical_char(
    rs: &RootSystem,
    j: &[usize],
    p: Option<u32>,
) -> Result<Filtration, ParabolicError> {
    let ctx = LeviContext::new(rs, j)?;
    if ctx.j.len() >= rs.rank() {
        return Err(ParabolicError::NotProper(rs.rank()));
    }
    let mut by_shape: BTreeMap<Vec<i32>, Vec<Root>> = BTreeMap::new();
    for r in rs.positives() {
        if !ctx.in_levi(r) {
            by_shape.entry(ctx.shape(r)).or_default().push(*r);
        }
    }
    let special = special_case(rs, p);
    let levi_roots: Vec<Root> = rs.subsystem(&ctx.j);
    let mut levels: BTreeMap<i32, Vec<ShapeModule>> = BTreeMap::new();
    for (shape, members) in by_shape {
        let top = *members
            .iter()
            .max_by_key(|r| r.height())
            .expect("nonempty shape");
        let bottom = *members
            .iter()
            .min_by_key(|r| r.height())
            .expect("nonempty shape");
        let flagged = special.is_some_and(|p| nonsemisimple(rs, &members, &levi_roots, p));
        let level = ctx.level(&top);
        levels.entry(level).or_default().push(ShapeModule {
            level,
            shape,
            highest_weight: ctx.levi_weight(&top),
            lowest_weight: ctx.levi_weight(&bottom),
            top_root: top,
            generator: bottom,
            member_roots: members,
            flagged_nonsemisimple: flagged,
        });
    }
    let levels = levels
        .into_iter()
        .map(|(index, mut shapes)| {
            shapes.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| b.shape.cmp(&a.shape)));
            Level { index, shapes }
        })
        .collect();
    Ok(Filtration {
        levi: ctx.components.clone(),
        levels,
    })
}

fn special_case(rs: &RootSystem, p: Option<u32>) -> Option<i32> {
    let p = p? as i32;
    let ty = rs.cartan_type();
    if !ty.is_simple() {
        return None;
    }
    match (ty.0[0].family, p) {
        ('G', 2) | ('G', 3) | ('F', 2) => Some(p),
        _ => None,
    }
}

/// Some Levi root moves a member root to another with a structure
/// constant `±(r+1)` divisible by `p`.
fn nonsemisimple(rs: &RootSystem, members: &[Root], levi_roots: &[Root], p: i32) -> bool {
    members.iter().any(|g| {
        levi_roots.iter().any(|a| {
            let s = g.add(a);
            if !members.contains(&s) {
                return false;
            }
            let mut r = 0;
            while rs.contains(&g.sub(&a.scale(r + 1))) {
                r += 1;
            }
            (r + 1) % p == 0
        })
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BracketReport {
    /// Every sum of radical roots that is a root has additive level.
    pub additive: bool,
    pub max_level: i32,
    /// Levels `i` for which `Q(i)` is abelian.
    pub abelian_from: Vec<i32>,
}

impl BracketReport {
    pub fn is_abelian(&self, i: i32) -> bool {
        self.abelian_from.contains(&i)
    }
}

pub fn bracket_check(rs: &RootSystem, j: &[usize]) -> Result<BracketReport, ParabolicError> {
    let ctx = LeviContext::new(rs, j)?;
    let q: Vec<(Root, i32)> = rs
        .positives()
        .iter()
        .filter(|r| !ctx.in_levi(r))
        .map(|r| (*r, ctx.level(r)))
        .collect();
    let max_level = q.iter().map(|x| x.1).max().unwrap_or(0);
    let mut additive = true;
    // Least level of a pair of radical roots whose sum is a root.
    let mut min_pair_level = i32::MAX;
    for (a, la) in &q {
        for (b, lb) in &q {
            let s = a.add(b);
            if rs.contains(&s) {
                additive &= ctx.level(&s) == la + lb;
                min_pair_level = min_pair_level.min(*la.min(lb));
            }
        }
    }
    let abelian_from = (1..=max_level)
        .filter(|&i| i > min_pair_level || min_pair_level == i32::MAX)
        .collect();
    Ok(BracketReport {
        additive,
        max_level,
        abelian_from,
    })
}

/// Generating root of the shape module with the given shape vector.
pub fn shape_generator(
    rs: &RootSystem,
    j: &[usize],
    shape: &[i32],
) -> Result<Root, ParabolicError> {
    let filt = decompose_radical(rs, j)?;
    let found = filt
        .shapes()
        .find(|s| s.shape == shape)
        .map(|s| s.generator);
    found.ok_or_else(|| ParabolicError::UnknownShape(shape.iter().map(|c| c.to_string()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::nodes;

    fn weights(f: &Filtration, dual: bool) -> Vec<Vec<String>> {
        f.levels
            .iter()
            .map(|l| {
                l.shapes
                    .iter()
                    .map(|s| {
                        if dual {
                            s.dual_high_weight()
                        } else {
                            s.highest_weight.clone()
                        }
                        .label()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn e7_a5_levels_dual_labels() {
        let rs = RootSystem::of("E7").unwrap();
        let f = decompose_radical(&rs, &nodes(&[1, 3, 4, 5, 6])).unwrap();
        assert_eq!(
            weights(&f, true),
            vec![
                vec!["00100", "00001"],
                vec!["01000", "00000"],
                vec!["00001"]
            ]
        );
        assert_eq!(f.dim(), 63 - 15);
    }

    #[test]
    fn e8_e6_levels() {
        let rs = RootSystem::of("E8").unwrap();
        let f = decompose_radical(&rs, &nodes(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(
            weights(&f, false),
            vec![
                vec!["100000", "000000"],
                vec!["100000"],
                vec!["000001"],
                vec!["000000"],
                vec!["000000"]
            ]
        );
    }

    #[test]
    fn component_numbering() {
        let e8 = RootSystem::of("E8").unwrap();
        let c = LeviContext::new(&e8, &nodes(&[2, 3, 4, 5])).unwrap();
        assert_eq!(c.components[0].nodes, vec![1, 3, 2, 4]);
        let c = LeviContext::new(&e8, &nodes(&[2, 3, 4, 5, 6, 7, 8])).unwrap();
        assert_eq!(c.components[0].nodes, vec![7, 6, 5, 4, 3, 2, 1]);
        let e6 = RootSystem::of("E6").unwrap();
        let c = LeviContext::new(&e6, &nodes(&[1, 2, 3, 4, 5])).unwrap();
        assert_eq!(c.components[0].nodes, vec![0, 2, 3, 4, 1]);
        let f4 = RootSystem::of("F4").unwrap();
        let c = LeviContext::new(&f4, &nodes(&[2, 3, 4])).unwrap();
        assert_eq!(c.components[0].ty.to_string(), "C3");
        assert_eq!(c.components[0].nodes, vec![3, 2, 1]);
        let c = LeviContext::new(&f4, &nodes(&[1, 2, 3])).unwrap();
        assert_eq!(c.components[0].ty.to_string(), "B3");
        let c = LeviContext::new(&e8, &nodes(&[1, 3, 5, 6, 7])).unwrap();
        assert_eq!(c.levi_type().unwrap().to_string(), "A2A3");
    }

    #[test]
    fn brackets() {
        let e7 = RootSystem::of("E7").unwrap();
        let r = bracket_check(&e7, &nodes(&[1, 3, 4, 5, 6])).unwrap();
        assert!(r.additive);
        assert!(r.is_abelian(3) && !r.is_abelian(1));
        let r = bracket_check(&e7, &nodes(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert!(r.is_abelian(1));
        let a2 = RootSystem::of("A2").unwrap();
        assert!(!bracket_check(&a2, &[]).unwrap().is_abelian(1));
    }

    #[test]
    fn generators_are_lowest_roots() {
        let e7 = RootSystem::of("E7").unwrap();
        let f = decompose_radical(&e7, &nodes(&[2, 4, 5, 6, 7])).unwrap();
        let gens: Vec<String> = f.shapes().map(|s| s.generator.label()).collect();
        for g in ["0010000", "1010000", "1122100"] {
            assert!(gens.contains(&g.to_string()), "{gens:?}");
        }
    }

    #[test]
    fn f4_flags() {
        let f4 = RootSystem::of("F4").unwrap();
        let f = decompose_radical_char(&f4, &nodes(&[1, 2, 3]), Some(2)).unwrap();
        let flagged: Vec<(i32, usize)> = f
            .shapes()
            .filter(|s| s.flagged_nonsemisimple)
            .map(|s| (s.level, s.dim()))
            .collect();
        assert_eq!(flagged, vec![(2, 7)]);
        let f = decompose_radical_char(&f4, &nodes(&[1, 2, 3]), Some(3)).unwrap();
        assert!(f.shapes().all(|s| !s.flagged_nonsemisimple));
    }
}
