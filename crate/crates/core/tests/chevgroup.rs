use chevalab::chevgroup::adjoint::{Adjoint, AdjointData, GroupLetter, Letter, MatRep};
use chevalab::chevgroup::collect::{collect, PolyRing, Strategy};
use chevalab::chevgroup::field::{Elem, Gf};
use chevalab::chevgroup::generators::{builtin_family, verify_generators};
use chevalab::chevgroup::poly::{Poly, Vars};
use chevalab::chevgroup::structure::StructureConstants;
use chevalab::rootdata::RootSystem;
use proptest::prelude::*;

struct Setup {
    rs: std::sync::Arc<RootSystem>,
    sc: StructureConstants,
    adj: Adjoint,
}

fn setup(ty: &str, q: u32) -> Setup {
    let rs = RootSystem::of(ty).unwrap();
    let sc = StructureConstants::new(rs.clone()).unwrap();
    let adj = Adjoint::new(&AdjointData::integral(&sc), Gf::of_order(q).unwrap());
    Setup { rs, sc, adj }
}

fn idx(rs: &RootSystem, label: &str) -> usize {
    rs.index_of(&rs.root_from_label(label).unwrap()).unwrap()
}

fn eval_word(w: &[(usize, Poly)], f: &Gf, vals: &[Elem]) -> Vec<Letter> {
    w.iter()
        .map(|(r, c)| Letter {
            root: *r,
            coeff: c.eval(f, vals).unwrap(),
        })
        .collect()
}

/// `(φ(y) y)^4` for the A3 ≤ A3A3 cocycle with all scalars equal to one,
/// using the root labels exactly as displayed.
fn fourth_power_word(rs: &RootSystem, vars: &mut Vars) -> Vec<(usize, Poly)> {
    let phi = [
        ("01011111", "a"),
        ("01121110", "b"),
        ("11221100", "c"),
        ("01121111", "b*c^2"),
        ("11221110", "a*b^2"),
        ("11221111", "a*b^2*c^2"),
    ];
    let y = [
        ("10000000", "a"),
        ("00000100", "a^2"),
        ("00100000", "b"),
        ("00000010", "b^2"),
        ("00010000", "c"),
        ("00000001", "c^2"),
    ];
    let mut w = Vec::new();
    for _ in 0..4 {
        for (l, c) in phi.iter().chain(y.iter()) {
            w.push((idx(rs, l), vars.parse(2, c).unwrap()));
        }
    }
    w
}

#[test]
fn fourth_power_normal_form_agrees_with_matrices() {
    let s = setup("E8", 64);
    let mut vars = Vars::new(&["a", "b", "c"]);
    let w = fourth_power_word(&s.rs, &mut vars);
    let out = collect(&s.sc, &PolyRing { p: 2 }, &w, Strategy::Leftmost).unwrap();
    let expected = vec![
        (
            idx(&s.rs, "11221111"),
            vars.parse(2, "a^2*b^2*c+a*b^2*c^2").unwrap(),
        ),
        (idx(&s.rs, "12232221"), vars.parse(2, "a^2*b^2").unwrap()),
    ];
    assert_eq!(out, expected);
    let f = s.adj.field().clone();
    let g = f.generator();
    for vals in [
        [g, 1, f.pow(g, 5).unwrap()],
        [f.pow(g, 17).unwrap(), g, g],
        [1, 1, 1],
    ] {
        let lhs = s.adj.realize(&eval_word(&w, &f, &vals));
        let rhs = s.adj.realize(&eval_word(&expected, &f, &vals));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn a2_commutator_sign_matches_structure_constant() {
    let s = setup("A2", 4);
    let f = s.adj.field().clone();
    for t in f.nonzero() {
        for u in f.nonzero() {
            let w = [(1usize, u), (0usize, t)];
            let out = collect(&s.sc, &f, &w, Strategy::Rightmost).unwrap();
            assert_eq!(out.len(), 3);
            assert_eq!(out[2], (2, f.mul(t, u)));
        }
    }
}

#[test]
fn torus_letters_match_weyl_products() {
    // h_γ(t) = n_γ(t) n_γ(-1) with n_γ(t) = x_γ(t) x_{-γ}(-t⁻¹) x_γ(t).
    for (ty, q) in [("G2", 9), ("F4", 8), ("B3", 27)] {
        let s = setup(ty, q);
        let f = s.adj.field().clone();
        let npos = s.rs.num_positive();
        for r in [0, npos - 1, npos] {
            let neg = s.sc.neg_index(r);
            let t = f.generator();
            let n = |c: Elem| {
                let ci = f.inv(c).unwrap();
                vec![
                    GroupLetter::X(r, c),
                    GroupLetter::X(neg, f.neg(ci)),
                    GroupLetter::X(r, c),
                ]
            };
            let word = [n(t), n(f.neg(1))].concat();
            let h = s.adj.realize_group_word(&[GroupLetter::H(r, t)]).unwrap();
            assert_eq!(s.adj.realize_group_word(&word).unwrap(), h, "{ty} root {r}");
        }
    }
}

#[test]
fn zero_torus_parameter_is_rejected() {
    let s = setup("A2", 4);
    assert!(s.adj.realize_group_word(&[GroupLetter::H(0, 0)]).is_err());
}

#[test]
fn d4_family_satisfies_relations() {
    let d4 = builtin_family("d4e8").unwrap();
    let rep = verify_generators(&d4.instantiate(d4.tuple("MR").unwrap()).unwrap(), 64).unwrap();
    assert!(rep.passed(), "{rep}");
    assert_eq!(rep.realized_type.as_deref(), Some("D4"));
    assert!(rep.degree_span.0 < 63 && rep.degree_span.1 < 63);
}

#[test]
fn squared_levi_b3_family_satisfies_relations() {
    let fam = builtin_family("b3e8sq").unwrap();
    for label in ["rep1", "rep3", "rep8"] {
        let rep =
            verify_generators(&fam.instantiate(fam.tuple(label).unwrap()).unwrap(), 64).unwrap();
        assert!(rep.passed(), "{label}: {rep}");
        assert_eq!(rep.realized_type.as_deref(), Some("B3"));
    }
}

#[test]
fn printed_b3_family_fails_torus_normalization() {
    let fam = builtin_family("b3e8").unwrap();
    let zero = verify_generators(&fam.instantiate(&[0; 7]).unwrap(), 64).unwrap();
    assert!(zero.passed(), "{zero}");
    assert_eq!(zero.realized_type.as_deref(), Some("C3"));
    let rep = verify_generators(&fam.instantiate(fam.tuple("rep8").unwrap()).unwrap(), 64).unwrap();
    let torus = rep.classes.iter().find(|c| c.class == "torus").unwrap();
    assert!(!torus.passed());
}

#[test]
fn mutated_generator_fails() {
    let mut fam = builtin_family("b3e8sq").unwrap();
    fam.mutate(3, "00001111", "00011110").unwrap();
    let rep = verify_generators(&fam.instantiate(fam.tuple("rep1").unwrap()).unwrap(), 64).unwrap();
    assert!(!rep.passed());
}

fn positive_word(
    npos: usize,
    q: u32,
) -> impl proptest::strategy::Strategy<Value = Vec<(usize, Elem)>> {
    prop::collection::vec((0..npos, 1..q as Elem), 1..8)
}

fn realize_pos(adj: &Adjoint, w: &[(usize, Elem)]) -> MatRep {
    adj.realize(
        &w.iter()
            .map(|&(root, coeff)| Letter { root, coeff })
            .collect::<Vec<_>>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn collection_is_strategy_independent_and_exact_e7(w in positive_word(63, 16)) {
        let s = setup("E7", 16);
        let f = s.adj.field().clone();
        let a = collect(&s.sc, &f, &w, Strategy::Leftmost).unwrap();
        let b = collect(&s.sc, &f, &w, Strategy::Rightmost).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.windows(2).all(|p| p[0].0 < p[1].0));
        prop_assert_eq!(realize_pos(&s.adj, &a), realize_pos(&s.adj, &w));
    }

    #[test]
    fn collection_is_exact_in_characteristic_three(w in positive_word(12, 9)) {
        for ty in ["G2", "B3"] {
            let s = setup(ty, 9);
            let npos = s.rs.num_positive();
            let w: Vec<(usize, Elem)> = w.iter().map(|&(r, c)| (r % npos, c)).collect();
            let f = s.adj.field().clone();
            let a = collect(&s.sc, &f, &w, Strategy::Leftmost).unwrap();
            prop_assert_eq!(&a, &collect(&s.sc, &f, &w, Strategy::Rightmost).unwrap());
            prop_assert_eq!(realize_pos(&s.adj, &a), realize_pos(&s.adj, &w));
        }
    }

    #[test]
    fn steinberg_torus_relation(a in 0usize..72, b in 0usize..72, t in 1u16..9, u in 0u16..9) {
        let s = setup("E6", 9);
        let f = s.adj.field().clone();
        let k = s.rs.root_pairing(&s.rs.roots()[b], &s.rs.roots()[a]);
        let lhs = s.adj.realize_group_word(&[
            GroupLetter::H(a, t),
            GroupLetter::X(b, u),
            GroupLetter::H(a, f.inv(t).unwrap()),
        ]).unwrap();
        let rhs = s.adj.realize(&[Letter { root: b, coeff: f.mul(f.pow(t, k as i64).unwrap(), u) }]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn root_elements_have_determinant_one(r in 0usize..48, c in 1u16..8) {
        let s = setup("F4", 8);
        let m = s.adj.realize(&[Letter { root: r, coeff: c }]);
        prop_assert_eq!(m.determinant(), 1);
    }
}
