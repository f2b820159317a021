//! Data files read by the suites, bundled at build time or loaded from a
//! directory.

use std::path::Path;

use crate::branching::{self, Embedding, IrrData};
use crate::chevgroup::generators::GENERATORS_DAT;

use super::VerifyError;

pub const TABLES_DAT: &str = include_str!("../../../../data/tables.dat");
pub const LEVELS_DAT: &str = include_str!("../../../../data/levels.dat");
pub const LEDGER_DAT: &str = include_str!("../../../../data/ledger.dat");
pub const WEYL_CLAIMS_DAT: &str = include_str!("../../../../data/weyl_claims.dat");

#[derive(Clone, Debug)]
pub struct DataSet {
    pub tables: String,
    pub levels: String,
    pub ledger: String,
    pub weyl_claims: String,
    pub appendix: String,
    pub generators: String,
    pub irr: IrrData,
    pub embeddings: Vec<Embedding>,
}

impl DataSet {
    pub fn builtin() -> DataSet {
        DataSet {
            tables: TABLES_DAT.into(),
            levels: LEVELS_DAT.into(),
            ledger: LEDGER_DAT.into(),
            weyl_claims: WEYL_CLAIMS_DAT.into(),
            appendix: branching::APPENDIX_DAT.into(),
            generators: GENERATORS_DAT.into(),
            irr: IrrData::builtin().clone(),
            embeddings: branching::builtin_embeddings().to_vec(),
        }
    }

    /// Files present in `dir` replace the bundled ones.
    pub fn from_dir(dir: &Path) -> Result<DataSet, VerifyError> {
        let read = |name: &'static str, default: &str| -> Result<String, VerifyError> {
            let path = dir.join(name);
            if path.exists() {
                std::fs::read_to_string(&path).map_err(|e| VerifyError::Data {
                    file: name,
                    line: 0,
                    msg: e.to_string(),
                })
            } else {
                Ok(default.to_string())
            }
        };
        let irr_text = read("irr.dat", branching::IRR_DAT)?;
        let appendix = read("appendix.dat", branching::APPENDIX_DAT)?;
        let embeddings = read("embeddings.dat", branching::EMBEDDINGS_DAT)?;
        Ok(DataSet {
            tables: read("tables.dat", TABLES_DAT)?,
            levels: read("levels.dat", LEVELS_DAT)?,
            ledger: read("ledger.dat", LEDGER_DAT)?,
            weyl_claims: read("weyl_claims.dat", WEYL_CLAIMS_DAT)?,
            irr: IrrData::parse(&irr_text, &appendix)?,
            embeddings: branching::parse_embeddings(&embeddings)?,
            appendix,
            generators: read("generators.dat", GENERATORS_DAT)?,
        })
    }
}

/// Non-empty lines with `#` comments removed, numbered from 1, split on `;`.
pub fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (i + 1, l.split(';').map(str::trim).collect()))
    })
}

/// Rewrites `lK` tokens as fundamental-weight labels of the given rank.
pub fn expand_fundamentals(s: &str, rank: usize) -> Result<String, String> {
    let mut out = String::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == 'l' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let k: usize = chars[start..j]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| format!("bad token in `{s}`"))?;
            if k == 0 || k > rank {
                return Err(format!("λ{k} out of range for rank {rank}"));
            }
            out.extend((1..=rank).map(|n| if n == k { '1' } else { '0' }));
            i = j;
        } else {
            out.push(chars[i]);
            i += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_tokens() {
        assert_eq!(expand_fundamentals("l3+l5", 5).unwrap(), "00100+00001");
        assert_eq!(expand_fundamentals("l2 + 0^2", 3).unwrap(), "010 + 0^2");
        assert!(expand_fundamentals("l7", 5).is_err());
    }
}
