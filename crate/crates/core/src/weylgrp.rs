//! Weyl group elements as words in reflections.

use std::collections::BTreeSet;

use crate::rootdata::{Root, RootError, RootSystem, Weight};

/// A product `s_{γ1} s_{γ2} … s_{γk}`; the rightmost letter acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylWord {
    pub letters: Vec<Root>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord {
            letters: Vec::new(),
        }
    }

    pub fn new(rs: &RootSystem, letters: Vec<Root>) -> Result<Self, RootError> {
        for r in &letters {
            if !rs.contains(r) {
                return Err(RootError::NotARoot(r.label()));
            }
        }
        Ok(WeylWord { letters })
    }

    /// Word in simple reflections from 0-based node indices.
    pub fn simple(rs: &RootSystem, idx: &[usize]) -> Self {
        WeylWord {
            letters: idx.iter().map(|&i| rs.simple(i)).collect(),
        }
    }

    /// Parses comma-separated letters. Each is a full root label or a
    /// 1-based simple node number such as `n3` or `3` when rank > 1.
    pub fn parse(rs: &RootSystem, s: &str) -> Result<Self, RootError> {
        let mut letters = Vec::new();
        for tok in s.split([',', ' ']).map(str::trim).filter(|t| !t.is_empty()) {
            let t = tok.strip_prefix('n').unwrap_or(tok);
            let r = if t.len() == rs.rank() {
                rs.root_from_label(t)?
            } else {
                let k: usize = t
                    .parse()
                    .map_err(|_| RootError::BadLabel(tok.to_string()))?;
                if k == 0 || k > rs.rank() {
                    return Err(RootError::BadNode {
                        node: k,
                        rank: rs.rank(),
                    });
                }
                rs.simple(k - 1)
            };
            letters.push(r);
        }
        Ok(WeylWord { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn compose(&self, other: &WeylWord) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        WeylWord { letters }
    }
}

/// Image of `r` under the word.
pub fn act(rs: &RootSystem, w: &WeylWord, r: &Root) -> Root {
    w.letters.iter().rev().fold(*r, |b, a| rs.reflect(a, &b))
}

pub fn act_weight(rs: &RootSystem, w: &WeylWord, v: &Weight) -> Weight {
    w.letters
        .iter()
        .rev()
        .fold(v.clone(), |b, a| rs.reflect_weight(a, &b))
}

/// True iff `w(Φ_{j1}) = Φ_{j2}` as sets of roots.
pub fn maps_levi(rs: &RootSystem, w: &WeylWord, j1: &[usize], j2: &[usize]) -> bool {
    let image: BTreeSet<Root> = rs.subsystem(j1).iter().map(|r| act(rs, w, r)).collect();
    let target: BTreeSet<Root> = rs.subsystem(j2).into_iter().collect();
    image == target
}

/// Reduced word for the longest element of the parabolic subgroup `W_J`.
pub fn longest_element(rs: &RootSystem, j: &[usize]) -> WeylWord {
    let mut v = Weight::zero(rs.rank());
    for &i in j {
        v.0[i] = 1;
    }
    let mut applied = Vec::new();
    while let Some(&i) = j.iter().find(|&&i| v.0[i] > 0) {
        v = rs.simple_reflect_weight(i, &v);
        applied.push(i);
    }
    applied.reverse();
    WeylWord::simple(rs, &applied)
}

/// The permutation `i ↦ k` with `-w0 λ_i = λ_k` for the whole system.
pub fn minus_w0_permutation(rs: &RootSystem) -> Vec<usize> {
    let all: Vec<usize> = (0..rs.rank()).collect();
    let w0 = longest_element(rs, &all);
    (0..rs.rank())
        .map(|i| {
            let img = act_weight(rs, &w0, &Weight::fundamental(rs.rank(), i)).neg();
            img.0
                .iter()
                .position(|&c| c == 1)
                .expect("-w0 permutes fundamental weights")
        })
        .collect()
}

/// `-w0 λ` for the whole system.
pub fn dual_weight(rs: &RootSystem, w: &Weight) -> Weight {
    let perm = minus_w0_permutation(rs);
    let mut out = Weight::zero(rs.rank());
    for (i, &k) in perm.iter().enumerate() {
        out.0[k] += w.0[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::nodes;

    #[test]
    fn e7_named_word_sends_root_to_alpha2() {
        let rs = RootSystem::of("E7").unwrap();
        let w = WeylWord::parse(&rs, "1011111,1010000").unwrap();
        let r = rs.root_from_label("0101111").unwrap();
        assert_eq!(act(&rs, &w, &r).label(), "0100000");
    }

    #[test]
    fn reflection_negates_its_root() {
        let rs = RootSystem::of("F4").unwrap();
        for a in rs.roots() {
            let w = WeylWord { letters: vec![*a] };
            assert_eq!(act(&rs, &w, a), a.neg());
        }
    }

    #[test]
    fn e8_levi_maps() {
        let rs = RootSystem::of("E8").unwrap();
        // These two words are written to be read left to right.
        let w = WeylWord::parse(&rs, "7,6,5,4,3,1").unwrap().inverse();
        assert!(maps_levi(
            &rs,
            &w,
            &nodes(&[1, 3, 4, 5, 6]),
            &nodes(&[3, 4, 5, 6, 7])
        ));
        assert!(maps_levi(
            &rs,
            &w.inverse(),
            &nodes(&[3, 4, 5, 6, 7]),
            &nodes(&[1, 3, 4, 5, 6])
        ));
        let w = WeylWord::parse(&rs, "3,4,5,6,7,8").unwrap().inverse();
        assert!(maps_levi(
            &rs,
            &w,
            &nodes(&[4, 5, 6, 7, 8]),
            &nodes(&[3, 4, 5, 6, 7])
        ));
        let j = nodes(&[2, 4, 5]);
        assert!(maps_levi(&rs, &WeylWord::identity(), &j, &j));
    }

    #[test]
    fn minus_w0() {
        let a1 = RootSystem::of("A1").unwrap();
        assert_eq!(minus_w0_permutation(&a1), vec![0]);
        let a3 = RootSystem::of("A3").unwrap();
        assert_eq!(minus_w0_permutation(&a3), vec![2, 1, 0]);
        let e7 = RootSystem::of("E7").unwrap();
        assert_eq!(minus_w0_permutation(&e7), (0..7).collect::<Vec<_>>());
        let e6 = RootSystem::of("E6").unwrap();
        assert_eq!(minus_w0_permutation(&e6), vec![5, 1, 4, 3, 2, 0]);
        let d5 = RootSystem::of("D5").unwrap();
        assert_eq!(minus_w0_permutation(&d5), vec![0, 1, 2, 4, 3]);
    }

    #[test]
    fn longest_element_lengths() {
        for (name, n) in [("A3", 6), ("E6", 36), ("E8", 120), ("G2", 6)] {
            let rs = RootSystem::of(name).unwrap();
            let all: Vec<usize> = (0..rs.rank()).collect();
            assert_eq!(longest_element(&rs, &all).len(), n);
        }
    }
}
