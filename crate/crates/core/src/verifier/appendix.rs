//! Socle-series data for Weyl and tilting modules.
//!
//! A Weyl entry passes when its layers add up to the Weyl character. A
//! tilting entry passes when `λ` is its multiplicity-one highest weight and
//! its character is dual to that of `T(-w0 λ)`: self-dual when `-w0 λ = λ`,
//! otherwise matched against the paired entry, which must be present.

use crate::branching::{Expr, IrrData};
use crate::characters::{self, Character};
use crate::rootdata::{CartanType, RootSystem, Weight};
use crate::weylgrp::dual_weight;

use super::data::DataSet;
use super::{Check, SuiteReport, VerifyError};

fn layer_dims(e: &Expr, ty: &CartanType, p: u32, irr: &IrrData) -> Result<Vec<u64>, VerifyError> {
    e.layers()
        .into_iter()
        .map(|l| Ok(l.eval(ty, p, irr)?.dim_u64()))
        .collect()
}

fn label(kind: &str, ty: &CartanType, p: u32, w: &Weight) -> String {
    format!("{kind}({}) {ty} p={p}", w.label())
}

fn join(d: &[u64]) -> String {
    d.iter().map(u64::to_string).collect::<Vec<_>>().join("+")
}

pub fn check_weyl_entry(
    ty: &CartanType,
    p: u32,
    w: &Weight,
    layers: &str,
    irr: &IrrData,
) -> Result<Check, VerifyError> {
    let e = Expr::parse(layers)?;
    let dims = layer_dims(&e, ty, p, irr)?;
    let got = e.eval(ty, p, irr)?;
    let want = characters::weyl_character(ty, w)?;
    let total: u64 = dims.iter().sum();
    Ok(Check::new(
        label("W", ty, p, w),
        got == want,
        format!(
            "{} = {total}, dim W = {}{}",
            join(&dims),
            want.dim_u64(),
            if got == want {
                ""
            } else {
                "; characters differ"
            }
        ),
    ))
}

/// `w` has multiplicity one and strictly maximizes the pairing with `2ρ^∨`.
fn highest_is(c: &Character, w: &Weight) -> Result<bool, VerifyError> {
    let rs = RootSystem::get(&c.ty)?;
    let height =
        |m: &Weight| -> i64 { rs.positives().iter().map(|a| rs.pairing(m, a) as i64).sum() };
    let top = height(w);
    Ok(c.mults.get(w).is_some_and(|m| *m == 1u32.into())
        && c.mults.keys().all(|k| k == w || height(k) < top))
}

pub fn check_tilting_entry(
    ty: &CartanType,
    p: u32,
    w: &Weight,
    layers: &str,
    irr: &IrrData,
) -> Result<Check, VerifyError> {
    let e = Expr::parse(layers)?;
    let dims = layer_dims(&e, ty, p, irr)?;
    let c = e.eval(ty, p, irr)?;
    let mut ok = true;
    let mut notes = vec![format!("{} = {}", join(&dims), c.dim_u64())];
    if !highest_is(&c, w)? {
        ok = false;
        notes.push(format!("{} is not the unique highest weight", w.label()));
    }
    let rs = RootSystem::get(ty)?;
    let w_star = dual_weight(&rs, w);
    if &w_star == w {
        if characters::dual(&c) != c {
            ok = false;
            notes.push("not self-dual".into());
        }
    } else {
        match irr.tilting_layers.get(&(ty.0[0], p, w_star.clone())) {
            Some(other) => {
                let oc = Expr::parse(other)?.eval(ty, p, irr)?;
                let matches = characters::dual(&oc) == c;
                ok &= matches;
                notes.push(format!(
                    "T({})* {}",
                    w_star.label(),
                    if matches { "matches" } else { "differs" }
                ));
            }
            None => {
                ok = false;
                notes.push(format!("no entry for T({})", w_star.label()));
            }
        }
    }
    Ok(Check::new(label("T", ty, p, w), ok, notes.join("; ")))
}

pub fn check_appendix(data: &DataSet) -> SuiteReport {
    let irr = &data.irr;
    let mut checks = Vec::new();
    for ((t, p, w), layers) in &irr.weyl_layers {
        let ty = CartanType::simple(*t);
        checks.push(
            check_weyl_entry(&ty, *p, w, layers, irr)
                .unwrap_or_else(|e| Check::failed(label("W", &ty, *p, w), e.to_string())),
        );
    }
    for ((t, p, w), layers) in &irr.tilting_layers {
        let ty = CartanType::simple(*t);
        checks.push(
            check_tilting_entry(&ty, *p, w, layers, irr)
                .unwrap_or_else(|e| Check::failed(label("T", &ty, *p, w), e.to_string())),
        );
    }
    SuiteReport::new("appendix", checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::Status;

    fn ty(s: &str) -> CartanType {
        CartanType::parse(s).unwrap()
    }

    fn w(s: &str) -> Weight {
        Weight::parse(s).unwrap()
    }

    #[test]
    fn b3_weyl_100() {
        let c = check_weyl_entry(&ty("B3"), 2, &w("100"), "100|0", IrrData::builtin()).unwrap();
        assert_eq!(c.status, Status::Pass);
        assert!(c.detail.starts_with("6+1 = 7, dim W = 7"), "{}", c.detail);
    }

    #[test]
    fn a3_tilting_101() {
        let c =
            check_tilting_entry(&ty("A3"), 2, &w("101"), "0|101|0", IrrData::builtin()).unwrap();
        assert_eq!(c.status, Status::Pass);
        assert!(c.detail.starts_with("1+14+1 = 16"), "{}", c.detail);
    }

    #[test]
    fn b3_tilting_002_is_spin_square() {
        let irr = IrrData::builtin();
        let layers = "0|100|010|100|(002+0)|100|(010+0)|100|0";
        let c = check_tilting_entry(&ty("B3"), 2, &w("002"), layers, irr).unwrap();
        assert_eq!(c.status, Status::Pass);
        let spin2 = Expr::parse("001⊗001")
            .unwrap()
            .eval(&ty("B3"), 2, irr)
            .unwrap();
        assert_eq!(
            Expr::parse(layers)
                .unwrap()
                .eval(&ty("B3"), 2, irr)
                .unwrap(),
            spin2
        );
        assert_eq!(spin2.dim_u64(), 64);
    }

    #[test]
    fn wrong_weyl_layers_fail() {
        let c = check_weyl_entry(&ty("B3"), 2, &w("100"), "100", IrrData::builtin()).unwrap();
        assert_eq!(c.status, Status::Fail);
    }

    #[test]
    fn a3_tilting_pair_is_dual_not_self_dual() {
        let irr = IrrData::builtin();
        let c = check_tilting_entry(&ty("A3"), 2, &w("200"), "010|200|010", irr).unwrap();
        assert_eq!(c.status, Status::Pass, "{}", c.detail);
        assert!(c.detail.contains("T(002)* matches"));
        let t = Expr::parse("010|200|010")
            .unwrap()
            .eval(&ty("A3"), 2, irr)
            .unwrap();
        assert_ne!(characters::dual(&t), t);
    }

    #[test]
    fn non_self_dual_tilting_fails() {
        let c =
            check_tilting_entry(&ty("A3"), 2, &w("101"), "101|0|100", IrrData::builtin()).unwrap();
        assert_eq!(c.status, Status::Fail);
    }

    #[test]
    fn lower_highest_weight_fails() {
        let c =
            check_tilting_entry(&ty("A3"), 2, &w("020"), "0|101|0", IrrData::builtin()).unwrap();
        assert_eq!(c.status, Status::Fail);
    }

    #[test]
    fn builtin_appendix_passes() {
        let r = check_appendix(&DataSet::builtin());
        assert!(r.passed(), "{r}");
        assert!(r.checks.len() >= 20);
    }
}
