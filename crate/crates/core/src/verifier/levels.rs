//! Level tables: the Levi modules on each level of a unipotent radical and
//! their restrictions to a subgroup of the Levi factor.
//!
//! `levels.dat` holds two record kinds:
//!
//! ```text
//! ID ; G ; J ; p ; LEVI ; EMBEDDING ; X0
//! shape ; ID ; G ; J ; GENERATOR ; LEVEL ; WEIGHT
//! ```
//!
//! `LEVI` and `X0` list one module expression per level separated by `/`,
//! or `-` when absent. `lK` in `LEVI` is the K-th fundamental weight and a
//! bare weight there is a Weyl module. A shape record asserts that the given
//! root is the lowest root of a shape module on that level with the given
//! highest weight; `-` skips the level or the weight.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::branching::{find_embedding, restrict, Expr};
use crate::characters::{self, Character};
use crate::parabolics::{decompose_radical, Filtration, LeviContext};
use crate::rootdata::{parse_nodes, CartanType, RootSystem, Weight};

use super::data::{expand_fundamentals, records, DataSet};
use super::{Check, SuiteReport, VerifyError};

const FILE: &str = "levels.dat";

#[derive(Clone, Debug)]
pub struct LevelRow {
    pub id: String,
    pub line: usize,
    pub group: String,
    pub j: Vec<usize>,
    pub p: u32,
    pub levi: Option<Vec<Expr>>,
    pub embedding: Option<String>,
    pub x0: Option<Vec<Expr>>,
}

#[derive(Clone, Debug)]
pub struct ShapeRow {
    pub id: String,
    pub line: usize,
    pub group: String,
    pub j: Vec<usize>,
    pub generator: String,
    pub level: Option<i32>,
    pub weight: Option<Weight>,
}

#[derive(Clone, Debug, Default)]
pub struct LevelData {
    pub rows: Vec<LevelRow>,
    pub shapes: Vec<ShapeRow>,
}

fn bad(line: usize, msg: impl Into<String>) -> VerifyError {
    VerifyError::Data {
        file: FILE,
        line,
        msg: msg.into(),
    }
}

fn levi_rank(rs: &RootSystem, j: &[usize]) -> usize {
    j.len().min(rs.rank())
}

fn parse_levels(
    field: &str,
    line: usize,
    lrank: Option<usize>,
) -> Result<Option<Vec<Expr>>, VerifyError> {
    if field == "-" {
        return Ok(None);
    }
    field
        .split('/')
        .map(|s| {
            let s = match lrank {
                Some(r) => expand_fundamentals(s.trim(), r).map_err(|m| bad(line, m))?,
                None => s.trim().to_string(),
            };
            Expr::parse(&s).map_err(|e| bad(line, e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

impl LevelData {
    pub fn parse(text: &str) -> Result<LevelData, VerifyError> {
        let mut out = LevelData::default();
        for (line, f) in records(text) {
            if f[0] == "shape" {
                if f.len() != 7 {
                    return Err(bad(line, "shape records have 7 fields"));
                }
                let rs = RootSystem::of(f[2])?;
                out.shapes.push(ShapeRow {
                    id: f[1].to_string(),
                    line,
                    group: f[2].to_string(),
                    j: parse_nodes(f[3], rs.rank())?,
                    generator: f[4].to_string(),
                    level: if f[5] == "-" {
                        None
                    } else {
                        Some(f[5].parse().map_err(|_| bad(line, "bad level"))?)
                    },
                    weight: if f[6] == "-" {
                        None
                    } else {
                        Some(Weight::parse(f[6])?)
                    },
                });
                continue;
            }
            if f.len() != 7 {
                return Err(bad(line, "level records have 7 fields"));
            }
            let rs = RootSystem::of(f[1])?;
            let j = parse_nodes(f[2], rs.rank())?;
            out.rows.push(LevelRow {
                id: f[0].to_string(),
                line,
                group: f[1].to_string(),
                p: f[3].parse().map_err(|_| bad(line, "bad characteristic"))?,
                levi: parse_levels(f[4], line, Some(levi_rank(&rs, &j)))?,
                embedding: (f[5] != "-").then(|| f[5].to_string()),
                x0: parse_levels(f[6], line, None)?,
                j,
            });
        }
        Ok(out)
    }
}

/// Rewrites irreducibles as Weyl modules, for comparison in characteristic 0.
pub fn as_weyl(e: &Expr) -> Expr {
    let map = |v: &[Expr]| v.iter().map(as_weyl).collect();
    match e {
        Expr::Irr(w) => Expr::Weyl(w.clone()),
        Expr::Weyl(_) | Expr::Tilting(_) => e.clone(),
        Expr::Layers(v) => Expr::Layers(map(v)),
        Expr::Sum(v) => Expr::Sum(map(v)),
        Expr::Tensor(v) => Expr::Tensor(map(v)),
        Expr::Tuple(v) => Expr::Tuple(map(v)),
        Expr::Pow(x, k) => Expr::Pow(Box::new(as_weyl(x)), *k),
        Expr::Dual(x) => Expr::Dual(Box::new(as_weyl(x))),
        Expr::Twist(x, r) => Expr::Twist(Box::new(as_weyl(x)), *r),
    }
}

/// Characters of the Levi factor on each level of `Q_J`.
pub fn level_characters(
    rs: &RootSystem,
    j: &[usize],
) -> Result<(CartanType, Filtration, Vec<Character>), VerifyError> {
    let ctx = LeviContext::new(rs, j)?;
    let ty = ctx
        .levi_type()
        .ok_or_else(|| VerifyError::Missing("Levi factor of a Borel subgroup".into()))?;
    let filt = decompose_radical(rs, j)?;
    let chars = filt
        .levels
        .iter()
        .map(|lvl| {
            let mut mults: BTreeMap<Weight, BigUint> = BTreeMap::new();
            for r in lvl.shapes.iter().flat_map(|s| &s.member_roots) {
                *mults.entry(ctx.levi_weight(r)).or_default() += BigUint::one();
            }
            Character {
                ty: ty.clone(),
                mults,
            }
        })
        .collect();
    Ok((ty, filt, chars))
}

/// Matches every level under one convention: as given, or all dualized.
fn uniform_match(computed: &[Character], stated: &[Character]) -> Option<&'static str> {
    if computed == stated {
        Some("true highest weights")
    } else if computed
        .iter()
        .zip(stated)
        .all(|(c, s)| characters::dual(c) == *s)
    {
        Some("dual highest weights")
    } else {
        None
    }
}

fn first_mismatch(computed: &[Character], stated: &[Character]) -> String {
    let k = computed
        .iter()
        .zip(stated)
        .position(|(c, s)| c != s && characters::dual(c) != *s)
        .unwrap_or(0);
    format!(
        "level {} differs: computed dim {}, stated dim {}",
        k + 1,
        computed[k].dim_u64(),
        stated.get(k).map_or(0, |s| s.dim_u64())
    )
}

pub fn check_row(row: &LevelRow, data: &DataSet) -> Result<Check, VerifyError> {
    let rs = RootSystem::of(&row.group)?;
    let (ty, _, computed) = level_characters(&rs, &row.j)?;
    let mut notes = vec![format!("{} levels, Levi {ty}", computed.len())];
    if let Some(levi) = &row.levi {
        if levi.len() != computed.len() {
            return Ok(Check::failed(
                &row.id,
                format!("{} levels stated, {} computed", levi.len(), computed.len()),
            ));
        }
        let stated = levi
            .iter()
            .map(|e| as_weyl(e).eval(&ty, 0, &data.irr))
            .collect::<Result<Vec<_>, _>>()?;
        match uniform_match(&computed, &stated) {
            Some(conv) => notes.push(format!("Levi table matches ({conv})")),
            None => {
                return Ok(Check::failed(
                    &row.id,
                    format!("Levi table: {}", first_mismatch(&computed, &stated)),
                ))
            }
        }
    }
    if let (Some(name), Some(x0)) = (&row.embedding, &row.x0) {
        if x0.len() != computed.len() {
            return Ok(Check::failed(
                &row.id,
                format!("{} X0 levels stated, {} computed", x0.len(), computed.len()),
            ));
        }
        let emb = find_embedding(&data.embeddings, name)?;
        let restricted = computed
            .iter()
            .map(|c| restrict(c, emb))
            .collect::<Result<Vec<_>, _>>()?;
        let stated = x0
            .iter()
            .map(|e| e.eval(&emb.src, row.p, &data.irr))
            .collect::<Result<Vec<_>, _>>()?;
        match uniform_match(&restricted, &stated) {
            Some(conv) => notes.push(format!("restriction via {name} matches ({conv})")),
            None => {
                return Ok(Check::failed(
                    &row.id,
                    format!(
                        "restriction via {name}: {}",
                        first_mismatch(&restricted, &stated)
                    ),
                ))
            }
        }
    }
    Ok(Check::new(&row.id, true, notes.join("; ")))
}

fn check_shape(row: &ShapeRow) -> Result<Check, VerifyError> {
    let rs = RootSystem::of(&row.group)?;
    let gen = rs.root_from_label(&row.generator)?;
    let filt = decompose_radical(&rs, &row.j)?;
    let Some(shape) = filt.shapes().find(|s| s.generator == gen) else {
        return Ok(Check::failed(
            &row.id,
            format!("{} is not the lowest root of a shape", row.generator),
        ));
    };
    if row.level.is_some_and(|l| l != shape.level) {
        return Ok(Check::failed(
            &row.id,
            format!("{} lies on level {}", row.generator, shape.level),
        ));
    }
    let ok = row
        .weight
        .as_ref()
        .is_none_or(|w| *w == shape.highest_weight || *w == shape.dual_high_weight());
    let detail = format!(
        "{} generates shape {} (dim {}, highest weight {}, dual {})",
        row.generator,
        shape.shape_label(),
        shape.dim(),
        shape.highest_weight.label(),
        shape.dual_high_weight().label()
    );
    Ok(Check::new(&row.id, ok, detail))
}

pub fn check_levels(data: &DataSet) -> SuiteReport {
    let mut checks = Vec::new();
    match LevelData::parse(&data.levels) {
        Err(e) => checks.push(Check::failed("levels.dat", e.to_string())),
        Ok(ld) => {
            for row in &ld.rows {
                checks.push(
                    check_row(row, data).unwrap_or_else(|e| Check::failed(&row.id, e.to_string())),
                );
            }
            for row in &ld.shapes {
                checks.push(
                    check_shape(row).unwrap_or_else(|e| Check::failed(&row.id, e.to_string())),
                );
            }
        }
    }
    SuiteReport::new("levels", checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::nodes;

    #[test]
    fn e7_a5_level_dimensions() {
        let rs = RootSystem::of("E7").unwrap();
        let (ty, _, chars) = level_characters(&rs, &nodes(&[1, 3, 4, 5, 6])).unwrap();
        assert_eq!(ty.to_string(), "A5");
        let dims: Vec<u64> = chars.iter().map(|c| c.dim_u64()).collect();
        assert_eq!(dims, vec![26, 16, 6]);
    }

    #[test]
    fn fundamental_tokens_in_levi_fields() {
        let text = "X ; E7 ; 13456 ; 2 ; l3+l5 / l2+0 / l5 ; - ; -\n";
        let ld = LevelData::parse(text).unwrap();
        assert_eq!(
            ld.rows[0].levi.as_ref().unwrap()[0].to_string(),
            "(00100+00001)"
        );
    }

    #[test]
    fn wrong_level_count_fails() {
        let mut data = DataSet::builtin();
        data.levels = "X ; E7 ; 13456 ; 2 ; l3+l5 / l2+0 ; - ; -\n".into();
        assert!(!check_levels(&data).passed());
    }

    #[test]
    fn wrong_weight_fails() {
        let mut data = DataSet::builtin();
        data.levels = "X ; E7 ; 13456 ; 2 ; l3+l5 / l2+0 / l4 ; - ; -\n".into();
        let rep = check_levels(&data);
        assert!(!rep.passed(), "{rep}");
    }
}
