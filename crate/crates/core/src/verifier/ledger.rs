//! First-cohomology ledger: known `dim H¹(X, V)` values and the stated
//! dimension of 𝕍 for each analysed parabolic.
//!
//! ```text
//! h1 ; TYPE ; p ; MODULE ; DIM
//! V ; LEVEL-ID ; DIM
//! ```
//!
//! `dim 𝕍` is recomputed as the sum of `dim H¹` over the direct summands of
//! the X0 level modules of the referenced row in `levels.dat`. Trivial
//! summands contribute 0 and tuples of irreducibles use the Künneth formula.

use crate::branching::{find_embedding, kunneth_h1, Expr};
use crate::rootdata::CartanType;

use super::data::{records, DataSet};
use super::levels::{check_row, LevelData};
use super::{Check, SuiteReport, VerifyError};

const FILE: &str = "ledger.dat";

#[derive(Clone, Debug)]
pub struct H1Entry {
    pub ty: CartanType,
    pub p: u32,
    pub module: Expr,
    pub dim: u64,
}

#[derive(Clone, Debug)]
pub struct VEntry {
    pub line: usize,
    pub level_id: String,
    pub dim: u64,
}

#[derive(Clone, Debug, Default)]
pub struct Ledger {
    pub h1: Vec<H1Entry>,
    pub v: Vec<VEntry>,
}

fn bad(line: usize, msg: impl Into<String>) -> VerifyError {
    VerifyError::Data {
        file: FILE,
        line,
        msg: msg.into(),
    }
}

impl Ledger {
    pub fn parse(text: &str) -> Result<Ledger, VerifyError> {
        let mut out = Ledger::default();
        for (line, f) in records(text) {
            let num = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| bad(line, format!("bad number `{s}`")))
            };
            match (f[0], f.len()) {
                ("h1", 5) => out.h1.push(H1Entry {
                    ty: CartanType::parse(f[1])?,
                    p: num(f[2])? as u32,
                    module: Expr::parse(f[3])?,
                    dim: num(f[4])?,
                }),
                ("V", 3) => out.v.push(VEntry {
                    line,
                    level_id: f[1].to_string(),
                    dim: num(f[2])?,
                }),
                _ => return Err(bad(line, "expected an h1 or V record")),
            }
        }
        Ok(out)
    }

    /// `dim H¹` of one summand.
    pub fn h1(&self, ty: &CartanType, p: u32, m: &Expr) -> Result<u64, VerifyError> {
        if let Some(e) = self
            .h1
            .iter()
            .find(|e| e.ty == *ty && e.p == p && e.module == *m)
        {
            return Ok(e.dim);
        }
        match m {
            Expr::Irr(w) if w.is_zero() => Ok(0),
            Expr::Tuple(items) if items.len() == ty.components().len() => {
                let mut factors = Vec::new();
                for (t, e) in ty.components().iter().zip(items) {
                    let t = CartanType::simple(*t);
                    let h0 = u64::from(matches!(e, Expr::Irr(w) if w.is_zero()));
                    if !matches!(e, Expr::Irr(_)) {
                        return Err(VerifyError::Missing(format!("H¹ of {m} for {ty}, p = {p}")));
                    }
                    factors.push((h0, self.h1(&t, p, e)?));
                }
                Ok(kunneth_h1(&factors))
            }
            _ => Err(VerifyError::Missing(format!("H¹ of {m} for {ty}, p = {p}"))),
        }
    }
}

fn check_entry(
    v: &VEntry,
    ledger: &Ledger,
    levels: &LevelData,
    data: &DataSet,
) -> Result<Check, VerifyError> {
    let id = format!("V {}", v.level_id);
    let row = levels
        .rows
        .iter()
        .find(|r| r.id == v.level_id)
        .ok_or_else(|| VerifyError::Missing(format!("level row {}", v.level_id)))?;
    let level_check = check_row(row, data)?;
    if !level_check.passed() {
        return Ok(Check::failed(
            id,
            format!("level table fails: {}", level_check.detail),
        ));
    }
    let (Some(name), Some(x0)) = (&row.embedding, &row.x0) else {
        return Err(bad(
            v.line,
            format!("level row {} has no X0 modules", v.level_id),
        ));
    };
    let ty = find_embedding(&data.embeddings, name)?.src.clone();
    let mut per_level = Vec::new();
    for lvl in x0 {
        let mut s = 0;
        for m in lvl.summands() {
            s += ledger.h1(&ty, row.p, m)?;
        }
        per_level.push(s);
    }
    let total: u64 = per_level.iter().sum();
    let parts: Vec<String> = per_level.iter().map(u64::to_string).collect();
    Ok(Check::new(
        id,
        total == v.dim,
        format!("dim 𝕍 = {} = {total}, stated {}", parts.join("+"), v.dim),
    ))
}

pub fn check_h1_ledger(data: &DataSet) -> SuiteReport {
    let parsed = Ledger::parse(&data.ledger).and_then(|l| Ok((l, LevelData::parse(&data.levels)?)));
    let checks = match parsed {
        Err(e) => vec![Check::failed("ledger.dat", e.to_string())],
        Ok((ledger, levels)) => ledger
            .v
            .iter()
            .map(|v| {
                check_entry(v, &ledger, &levels, data)
                    .unwrap_or_else(|e| Check::failed(format!("V {}", v.level_id), e.to_string()))
            })
            .collect(),
    };
    SuiteReport::new("h1", checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kunneth_for_tuples() {
        let l = Ledger::parse("h1 ; B3 ; 2 ; 001 ; 0\nh1 ; B3 ; 2 ; 100 ; 1\n").unwrap();
        let ty = CartanType::parse("B3B3").unwrap();
        assert_eq!(l.h1(&ty, 2, &Expr::parse("(001,001)").unwrap()).unwrap(), 0);
        assert_eq!(l.h1(&ty, 2, &Expr::parse("(100,0)").unwrap()).unwrap(), 1);
        assert!(l.h1(&ty, 2, &Expr::parse("(010,0)").unwrap()).is_err());
    }

    #[test]
    fn missing_summand_is_an_error() {
        let mut data = DataSet::builtin();
        data.ledger = "V ; E7-P24567-A3 ; 3\n".into();
        let rep = check_h1_ledger(&data);
        assert!(!rep.passed());
        assert!(rep.checks[0].detail.contains("missing"), "{rep}");
    }

    #[test]
    fn wrong_stated_dimension_fails() {
        let mut data = DataSet::builtin();
        data.ledger.push_str("V ; E7-P24567-A3 ; 2\n");
        assert!(!check_h1_ledger(&data).passed());
    }
}
