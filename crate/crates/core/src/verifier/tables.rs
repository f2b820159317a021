//! Module tables: restrictions of the minimal module and of the adjoint module
//! to non-G-cr subgroups, checked for dimension and self-duality.
//!
//! `tables.dat` holds four record kinds:
//!
//! ```text
//! row ; ID ; G ; p ; X ; OVERGROUP ; VMIN ; LG ; CENTRALIZER ; FLAGS
//! summands ; ROW-ID ; d1 d2 ...
//! split ; NAME ; d1 d2 ... ; TOTAL
//! table1 ; G ; p ; X1 X2 ...
//! ```

use std::collections::BTreeSet;

use crate::branching::{Expr, IrrData};
use crate::characters::{self, Character};
use crate::rootdata::{CartanType, RootSystem};

use super::data::{records, DataSet};
use super::{Check, Status, SuiteReport, VerifyError};

const FILE: &str = "tables.dat";

#[derive(Clone, Debug)]
pub struct TableRow {
    pub id: String,
    pub line: usize,
    pub group: String,
    pub p: u32,
    pub x: String,
    pub overgroup: String,
    pub vmin: Option<Expr>,
    pub lg: Expr,
    pub centralizer: String,
    pub separable: bool,
    pub partial: bool,
}

#[derive(Clone, Debug)]
pub struct SummandClaim {
    pub row: String,
    pub line: usize,
    pub dims: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct SplitClaim {
    pub name: String,
    pub dims: Vec<u64>,
    pub total: u64,
}

#[derive(Clone, Debug)]
pub struct TypeList {
    pub group: String,
    pub p: u32,
    pub types: BTreeSet<String>,
}

#[derive(Clone, Debug, Default)]
pub struct TableData {
    pub rows: Vec<TableRow>,
    pub summands: Vec<SummandClaim>,
    pub splits: Vec<SplitClaim>,
    pub type_lists: Vec<TypeList>,
}

fn bad(line: usize, msg: impl Into<String>) -> VerifyError {
    VerifyError::Data {
        file: FILE,
        line,
        msg: msg.into(),
    }
}

fn dims(s: &str, line: usize) -> Result<Vec<u64>, VerifyError> {
    s.split_whitespace()
        .map(|d| {
            d.parse()
                .map_err(|_| bad(line, format!("bad dimension {d}")))
        })
        .collect()
}

fn expr(s: &str, line: usize) -> Result<Expr, VerifyError> {
    Expr::parse(s).map_err(|e| bad(line, e.to_string()))
}

impl TableData {
    pub fn parse(text: &str) -> Result<TableData, VerifyError> {
        let mut out = TableData::default();
        for (line, f) in records(text) {
            let arity = |n: usize| {
                if f.len() == n {
                    Ok(())
                } else {
                    Err(bad(line, format!("{} records have {n} fields", f[0])))
                }
            };
            match f[0] {
                "row" => {
                    arity(10)?;
                    let flags: Vec<&str> = f[9].split_whitespace().filter(|s| *s != "-").collect();
                    if let Some(u) = flags.iter().find(|s| !matches!(**s, "sep" | "partial")) {
                        return Err(bad(line, format!("unknown flag {u}")));
                    }
                    let p = f[3].parse().map_err(|_| bad(line, "bad characteristic"))?;
                    out.rows.push(TableRow {
                        id: f[1].to_string(),
                        line,
                        group: f[2].to_string(),
                        p,
                        x: f[4].to_string(),
                        overgroup: f[5].to_string(),
                        vmin: if f[6] == "-" {
                            None
                        } else {
                            Some(expr(f[6], line)?)
                        },
                        lg: expr(f[7], line)?,
                        centralizer: f[8].to_string(),
                        separable: flags.contains(&"sep"),
                        partial: flags.contains(&"partial"),
                    });
                }
                "summands" => {
                    arity(3)?;
                    out.summands.push(SummandClaim {
                        row: f[1].to_string(),
                        line,
                        dims: dims(f[2], line)?,
                    });
                }
                "split" => {
                    arity(4)?;
                    let total = f[3].parse().map_err(|_| bad(line, "bad total"))?;
                    out.splits.push(SplitClaim {
                        name: f[1].to_string(),
                        dims: dims(f[2], line)?,
                        total,
                    });
                }
                "table1" => {
                    arity(4)?;
                    out.type_lists.push(TypeList {
                        group: f[1].to_string(),
                        p: f[2].parse().map_err(|_| bad(line, "bad characteristic"))?,
                        types: f[3].split_whitespace().map(str::to_string).collect(),
                    });
                }
                k => return Err(bad(line, format!("unknown record kind {k}"))),
            }
        }
        Ok(out)
    }
}

/// Dimension of the least-dimensional nontrivial module, where tabulated.
pub fn minimal_module_dim(group: &str) -> Option<u64> {
    match group {
        "F4" => Some(26),
        "E6" => Some(27),
        "E7" => Some(56),
        _ => None,
    }
}

fn group_dim(rs: &RootSystem) -> u64 {
    (rs.rank() + 2 * rs.num_positive()) as u64
}

fn summand_dims(e: &Expr, ty: &CartanType, p: u32, irr: &IrrData) -> Result<Vec<u64>, VerifyError> {
    let mut out = Vec::new();
    for s in e.summands() {
        out.push(s.eval(ty, p, irr)?.dim_u64());
    }
    Ok(out)
}

fn join(d: &[u64]) -> String {
    d.iter().map(u64::to_string).collect::<Vec<_>>().join("+")
}

/// Evaluates one row: dimension sums of both modules and self-duality of
/// the adjoint restriction.
pub fn check_row(row: &TableRow, irr: &IrrData) -> Result<Check, VerifyError> {
    let rs = RootSystem::of(&row.group)?;
    let ty = CartanType::parse(&row.x)?;
    let mut ok = true;
    let mut notes = Vec::new();

    if let Some(v) = &row.vmin {
        let d = summand_dims(v, &ty, row.p, irr)?;
        let total: u64 = d.iter().sum();
        let want = minimal_module_dim(&row.group)
            .ok_or_else(|| bad(row.line, format!("no minimal module for {}", row.group)))?;
        ok &= total == want;
        notes.push(format!("Vmin {} = {total} (want {want})", join(&d)));
    }

    let d = summand_dims(&row.lg, &ty, row.p, irr)?;
    let total: u64 = d.iter().sum();
    let want = group_dim(&rs);
    ok &= total == want;
    notes.push(format!("L(G) {} = {total} (want {want})", join(&d)));

    let c: Character = row.lg.eval(&ty, row.p, irr)?;
    let self_dual = characters::dual(&c) == c;
    ok &= self_dual;
    if !self_dual {
        notes.push("L(G) character is not self-dual".into());
    }

    let mut check = Check::new(format!("{} {}", row.id, row.x), ok, notes.join("; "));
    if ok && row.partial {
        check.status = Status::Partial;
    }
    Ok(check)
}

fn check_summands(
    claim: &SummandClaim,
    data: &TableData,
    irr: &IrrData,
) -> Result<Check, VerifyError> {
    let row = data
        .rows
        .iter()
        .find(|r| r.id == claim.row)
        .ok_or_else(|| bad(claim.line, format!("unknown row {}", claim.row)))?;
    let ty = CartanType::parse(&row.x)?;
    let mut got = Vec::new();
    for s in row.lg.summands() {
        // Copies of one summand are listed separately.
        got.push(s.eval(&ty, row.p, irr)?.dim_u64());
    }
    let mut sorted = got.clone();
    sorted.sort_unstable();
    let mut want = claim.dims.clone();
    want.sort_unstable();
    Ok(Check::new(
        format!("summands {}", claim.row),
        sorted == want,
        format!("computed {}, stated {}", join(&got), join(&claim.dims)),
    ))
}

fn check_split(s: &SplitClaim) -> Check {
    let sum: u64 = s.dims.iter().sum();
    Check::new(
        format!("split {}", s.name),
        sum == s.total,
        format!("{} = {sum}, stated {}", join(&s.dims), s.total),
    )
}

/// The types X tabulated for each (G, p) against the stated type lists, and
/// every tabulated (G, p) against some list.
fn check_type_lists(data: &TableData) -> Vec<Check> {
    let mut out = Vec::new();
    for tl in &data.type_lists {
        let got: BTreeSet<String> = data
            .rows
            .iter()
            .filter(|r| r.group == tl.group && r.p == tl.p)
            .map(|r| r.x.clone())
            .collect();
        let fmt = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(" ");
        out.push(Check::new(
            format!("types {} p={}", tl.group, tl.p),
            got == tl.types,
            format!("tabulated {{{}}}, listed {{{}}}", fmt(&got), fmt(&tl.types)),
        ));
    }
    let pairs: BTreeSet<(String, u32)> = data.rows.iter().map(|r| (r.group.clone(), r.p)).collect();
    for (g, p) in pairs {
        if !data.type_lists.iter().any(|t| t.group == g && t.p == p) {
            out.push(Check::failed(
                format!("types {g} p={p}"),
                "tabulated but not listed",
            ));
        }
    }
    out
}

pub fn check_tables(data: &DataSet) -> SuiteReport {
    let parsed = match TableData::parse(&data.tables) {
        Ok(t) => t,
        Err(e) => return SuiteReport::new("tables", vec![Check::failed(FILE, e.to_string())]),
    };
    let mut checks = Vec::new();
    for row in &parsed.rows {
        checks.push(
            check_row(row, &data.irr).unwrap_or_else(|e| Check::failed(&row.id, e.to_string())),
        );
    }
    for s in &parsed.summands {
        checks.push(
            check_summands(s, &parsed, &data.irr)
                .unwrap_or_else(|e| Check::failed(&s.row, e.to_string())),
        );
    }
    checks.extend(parsed.splits.iter().map(check_split));
    checks.extend(check_type_lists(&parsed));
    SuiteReport::new("tables", checks)
}
