//! Property tests for root systems, Weyl words, characters and subsystem types.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use chevalab::characters::{self, Character};
use chevalab::rootdata::{CartanType, Root, RootSystem, Weight};
use chevalab::verifier::subsystems::classify_base;
use chevalab::weylgrp::{act, act_weight, dual_weight, WeylWord};

const TYPES: &[&str] = &["A3", "B3", "C3", "D4", "G2", "F4", "E6", "E7", "E8"];
const SMALL: &[&str] = &["A2", "B2", "G2", "A3", "B3", "C3"];

fn ty_index(list: &'static [&'static str]) -> impl Strategy<Value = &'static str> {
    (0..list.len()).prop_map(move |i| list[i])
}

fn system_and_word() -> impl Strategy<Value = (&'static str, Vec<usize>)> {
    ty_index(TYPES).prop_flat_map(|t| {
        let n = RootSystem::of(t).unwrap().rank();
        (Just(t), prop::collection::vec(0..n, 0..12))
    })
}

fn dominant(max: i32) -> impl Strategy<Value = (&'static str, Weight)> {
    ty_index(SMALL).prop_flat_map(move |t| {
        let n = RootSystem::of(t).unwrap().rank();
        (Just(t), prop::collection::vec(0..=max, n).prop_map(Weight))
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn closure(rs: &RootSystem, base: &[Root]) -> BTreeSet<Root> {
    let mut set: BTreeSet<Root> = base.iter().copied().collect();
    loop {
        let new: Vec<Root> = base
            .iter()
            .flat_map(|a| set.iter().map(move |b| rs.reflect(a, b)))
            .filter(|r| !set.contains(r))
            .collect();
        if new.is_empty() {
            return set;
        }
        set.extend(new);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_isometric_involutions(t in ty_index(TYPES), i in 0usize..240, j in 0usize..240) {
        let rs = RootSystem::of(t).unwrap();
        let roots = rs.roots();
        let (a, b) = (roots[i % roots.len()], roots[j % roots.len()]);
        let img = rs.reflect(&a, &b);
        prop_assert!(rs.contains(&img));
        prop_assert_eq!(rs.norm(&img), rs.norm(&b));
        prop_assert_eq!(rs.reflect(&a, &img), b);
        prop_assert_eq!(rs.root_pairing(&a, &a), 2);
    }

    #[test]
    fn weyl_words_permute_roots((t, idx) in system_and_word()) {
        let rs = RootSystem::of(t).unwrap();
        let w = WeylWord::simple(&rs, &idx);
        let images: BTreeSet<Root> = rs.roots().iter().map(|r| act(&rs, &w, r)).collect();
        prop_assert_eq!(images.len(), rs.roots().len());
        for r in rs.roots() {
            prop_assert!(images.contains(r));
            prop_assert_eq!(act(&rs, &w.inverse(), &act(&rs, &w, r)), *r);
        }
    }

    #[test]
    fn weyl_action_preserves_pairings((t, idx) in system_and_word(), k in 0usize..8) {
        let rs = RootSystem::of(t).unwrap();
        let w = WeylWord::simple(&rs, &idx);
        let lambda = Weight::fundamental(rs.rank(), k % rs.rank());
        let image = act_weight(&rs, &w, &lambda);
        for r in rs.positives() {
            prop_assert_eq!(rs.pairing(&image, &act(&rs, &w, r)), rs.pairing(&lambda, r));
        }
    }

    #[test]
    fn weyl_characters_match_dimension_formula((t, lambda) in dominant(2)) {
        let ty = CartanType::parse(t).unwrap();
        let rs = RootSystem::of(t).unwrap();
        let c = characters::weyl_character(&ty, &lambda).unwrap();
        prop_assert_eq!(c.dim(), characters::weyl_dimension(&rs, &lambda));
        prop_assert!(c.is_weyl_invariant());
        prop_assert_eq!(c.mult(&lambda), BigUint::from(1u32));
        let d = characters::weyl_character(&ty, &dual_weight(&rs, &lambda)).unwrap();
        prop_assert_eq!(characters::dual(&c), d);
        prop_assert_eq!(characters::dual(&characters::dual(&c)), c);
    }

    #[test]
    fn tensor_products_decompose_nonnegatively((t, a) in dominant(1), b in prop::collection::vec(0i32..=1, 3)) {
        let ty = CartanType::parse(t).unwrap();
        let b = Weight(b[..ty.rank()].to_vec());
        let wa = characters::weyl_character(&ty, &a).unwrap();
        let wb = characters::weyl_character(&ty, &b).unwrap();
        let prod = characters::tensor(&wa, &wb).unwrap();
        prop_assert_eq!(prod.dim_u64(), wa.dim_u64() * wb.dim_u64());
        prop_assert_eq!(&prod, &characters::tensor(&wb, &wa).unwrap());
        let parts = characters::decompose_weyl(&prod).unwrap();
        prop_assert!(parts.values().all(|m| m.sign() != num_bigint::Sign::Minus));
        prop_assert_eq!(parts.get(&a.add(&b)).cloned(), Some(1.into()));
    }

    #[test]
    fn exterior_powers_have_binomial_dimension((t, lambda) in dominant(1), k in 0usize..4) {
        let ty = CartanType::parse(t).unwrap();
        let c = characters::weyl_character(&ty, &lambda).unwrap();
        let n = c.dim_u64();
        prop_assume!(n <= 40);
        let e = characters::exterior_power(&c, k);
        prop_assert_eq!(e.dim_u64(), binomial(n, k as u64));
        prop_assert!(e.is_weyl_invariant());
    }

    #[test]
    fn frobenius_twist_scales_weights((t, lambda) in dominant(1), r in 0u32..3) {
        let ty = CartanType::parse(t).unwrap();
        let c = characters::weyl_character(&ty, &lambda).unwrap();
        let tw = characters::twist(&c, r, 2);
        prop_assert_eq!(tw.dim(), c.dim());
        prop_assert_eq!(tw.mult(&lambda.scale(2i32.pow(r))), BigUint::from(1u32));
    }

    #[test]
    fn sub_diagram_types_match_root_counts(t in ty_index(TYPES), mask in 1u32..256) {
        let rs = RootSystem::of(t).unwrap();
        let base: Vec<Root> = (0..rs.rank()).filter(|i| mask & (1 << i) != 0).map(|i| rs.simple(i)).collect();
        prop_assume!(!base.is_empty());
        let ty = classify_base(&rs, &base);
        prop_assert_eq!(ty.rank(), base.len());
        let count = RootSystem::get(&ty).unwrap().roots().len();
        prop_assert_eq!(closure(&rs, &base).len(), count);
    }
}

#[test]
fn trivial_character_is_unit_for_tensor() {
    let ty = CartanType::parse("B3").unwrap();
    let spin = characters::weyl_character(&ty, &Weight::parse("001").unwrap()).unwrap();
    assert_eq!(
        characters::tensor(&spin, &Character::trivial(&ty)).unwrap(),
        spin
    );
}
