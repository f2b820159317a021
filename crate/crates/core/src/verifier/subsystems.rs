//! Maximal closed subsystems by Borel–de Siebenthal: delete a node with prime
//! coefficient from the extended Dynkin diagram, or a node with coefficient
//! one from the ordinary diagram.

use std::collections::BTreeSet;

use crate::rootdata::{CartanType, LieType, Root, RootSystem};

use super::data::DataSet;
use super::{Check, SuiteReport};

fn is_prime(n: i32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Type of the subsystem with simple system `base`.
pub fn classify_base(rs: &RootSystem, base: &[Root]) -> CartanType {
    let n = base.len();
    let adj = |a: usize, b: usize| a != b && rs.root_pairing(&base[a], &base[b]) != 0;
    let bond = |a: usize, b: usize| {
        rs.root_pairing(&base[a], &base[b]) * rs.root_pairing(&base[b], &base[a])
    };
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for b in 0..n {
                if !seen[b] && adj(comp[i], b) {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            i += 1;
        }
        let k = comp.len();
        let degree = |a: usize| comp.iter().filter(|&&b| adj(a, b)).count();
        let bonds: Vec<i32> = comp
            .iter()
            .flat_map(|&a| comp.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .filter(|&(a, b)| adj(a, b))
            .map(|(a, b)| bond(a, b))
            .collect();
        let family = if bonds.contains(&3) {
            'G'
        } else if let Some((a, b)) = comp
            .iter()
            .flat_map(|&a| comp.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| a != b && adj(a, b) && bond(a, b) == 2)
        {
            // A leaf on the double bond decides B (short leaf) from C (long leaf).
            let (leaf, other) = if degree(a) == 1 { (a, b) } else { (b, a) };
            if k == 2 {
                'B'
            } else if degree(leaf) != 1 {
                'F'
            } else if rs.norm(&base[leaf]) < rs.norm(&base[other]) {
                'B'
            } else {
                'C'
            }
        } else if let Some(&branch) = comp.iter().find(|&&a| degree(a) == 3) {
            let arm = |first: usize| {
                let (mut prev, mut cur, mut len) = (branch, first, 1);
                while let Some(&next) = comp.iter().find(|&&x| x != prev && adj(cur, x)) {
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                len
            };
            let mut arms: Vec<usize> = comp
                .iter()
                .filter(|&&b| adj(branch, b))
                .map(|&b| arm(b))
                .collect();
            arms.sort_unstable();
            if arms[1] == 1 {
                'D'
            } else {
                'E'
            }
        } else {
            'A'
        };
        let family = if family == 'D' && k == 3 { 'A' } else { family };
        comps.push(LieType::new(family, k).expect("classified component is admissible"));
    }
    comps.sort_by_key(|t| (t.rank, t.family));
    CartanType(comps)
}

/// Maximal closed subsystems of an irreducible root system, by type name.
pub fn subsystems_maximal(rs: &RootSystem) -> Vec<String> {
    let theta = rs.highest_root();
    let simples = rs.simples();
    let mut out = BTreeSet::new();
    for (i, &c) in theta.coeffs().iter().enumerate() {
        if is_prime(c) {
            let mut base: Vec<Root> = simples
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| *r)
                .collect();
            base.push(theta.neg());
            out.insert(classify_base(rs, &base).to_string());
        }
        if c == 1 && simples.len() > 1 {
            let base: Vec<Root> = simples
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| *r)
                .collect();
            out.insert(classify_base(rs, &base).to_string());
        }
    }
    out.into_iter().collect()
}

enum Expect {
    Exactly(&'static [&'static str]),
    Contains(&'static [&'static str]),
}

const CLAIMS: &[(&str, Expect)] = &[
    ("E6", Expect::Exactly(&["A1A5", "A2A2A2", "D5"])),
    (
        "E8",
        Expect::Contains(&["D8", "A1E7", "A8", "A2E6", "A4A4"]),
    ),
    ("A1", Expect::Exactly(&[])),
];

pub fn check_subsystems(_data: &DataSet) -> SuiteReport {
    let mut checks = Vec::new();
    for (g, expect) in CLAIMS {
        let got = match RootSystem::of(g) {
            Ok(rs) => subsystems_maximal(&rs),
            Err(e) => {
                checks.push(Check::failed(*g, e.to_string()));
                continue;
            }
        };
        let got_set: BTreeSet<&str> = got.iter().map(String::as_str).collect();
        let (ok, want) = match expect {
            Expect::Exactly(w) => (
                got_set == w.iter().copied().collect(),
                format!("exactly {{{}}}", w.join(", ")),
            ),
            Expect::Contains(w) => (
                w.iter().all(|t| got_set.contains(t)),
                format!("contains {{{}}}", w.join(", ")),
            ),
        };
        checks.push(Check::new(
            *g,
            ok,
            format!("computed {{{}}}, want {want}", got.join(", ")),
        ));
    }
    SuiteReport::new("subsystems", checks)
}
