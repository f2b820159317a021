//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use chevalab::branching::{find_embedding, restrict, Expr, IrrData};
use chevalab::characters::{self, Character};
use chevalab::chevgroup::collect::{collect, PolyRing, Strategy};
use chevalab::chevgroup::poly::{Poly, Vars};
use chevalab::chevgroup::structure::StructureConstants;
use chevalab::rootdata::{CartanType, RootSystem, Weight};
use chevalab::verifier::data::DataSet;
use chevalab::verifier::props::{fixed_jobs, relation_jobs, run_jobs};
use chevalab::verifier::{
    check_appendix, check_h1_ledger, check_levels, check_subsystems, check_tables,
    check_weyl_claims, SuiteReport,
};

type Outcome = Result<String, String>;

fn suite_outcome(r: &SuiteReport) -> Outcome {
    let summary = format!(
        "{}/{} checks pass",
        r.checks.len() - r.failures().count(),
        r.checks.len()
    );
    if r.passed() {
        Ok(summary)
    } else {
        let bad: Vec<String> = r
            .failures()
            .map(|c| format!("{}: {}", c.id, c.detail))
            .collect();
        Err(format!("{summary}; {}", bad.join(" | ")))
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    match (a, b) {
        (Ok(x), Ok(y)) => Ok(format!("{x}; {y}")),
        (Ok(_), Err(e)) | (Err(e), Ok(_)) => Err(e),
        (Err(x), Err(y)) => Err(format!("{x}; {y}")),
    }
}

fn root_data() -> Outcome {
    let mut notes = Vec::new();
    for (ty, n) in [("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240)] {
        let got = RootSystem::of(ty).map_err(|e| e.to_string())?.roots().len();
        if got != n {
            return Err(format!("|Φ({ty})| = {got}, want {n}"));
        }
        notes.push(format!("{ty}:{got}"));
    }
    let top = RootSystem::of("E8").unwrap().highest_root().label();
    if top != "23465432" {
        return Err(format!("E8 highest root {top}"));
    }
    Ok(format!("{}; E8 highest root {top}", notes.join(" ")))
}

fn char_of(expr: &str, ty: &str, p: u32) -> Result<Character, String> {
    Expr::parse(expr)
        .and_then(|e| e.eval(&CartanType::parse(ty).unwrap(), p, IrrData::builtin()))
        .map_err(|e| e.to_string())
}

fn characters_and_branching() -> Outcome {
    let b3 = CartanType::parse("B3").unwrap();
    let w = |s: &str| Weight::parse(s).unwrap();
    let spin = characters::weyl_character(&b3, &w("001")).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();

    let l2 = characters::exterior_power(&spin, 2);
    if l2 != char_of("010 + 100^2 + 0^2", "B3", 2)? {
        return Err("Λ²(spin) ≠ 010 + 2·100 + 2·0".into());
    }
    notes.push(format!("Λ² = 010+2·100+2·0 ({})", l2.dim_u64()));

    let l3 = characters::exterior_power(&spin, 3);
    let w101 = characters::weyl_character(&b3, &w("101")).map_err(|e| e.to_string())?;
    if l3 != char_of("W(101) + 001", "B3", 2)? || w101.dim_u64() != 48 {
        return Err("Λ³(spin) ≠ W(101) + 001 or dim W(101) ≠ 48".into());
    }
    notes.push(format!("Λ³ = W(101)+001 ({}+8)", w101.dim_u64()));

    let emb = |n: &str| {
        find_embedding(chevalab::branching::builtin_embeddings(), n).map_err(|e| e.to_string())
    };
    let a5 = CartanType::parse("A5").unwrap();
    let wedge3 = characters::weyl_character(&a5, &w("00100")).map_err(|e| e.to_string())?;
    let r = restrict(&wedge3, emb("c3-a5-100")?).map_err(|e| e.to_string())?;
    let want = Expr::parse("100|001|100").unwrap();
    let dims: Vec<u64> = want
        .layers()
        .iter()
        .map(|l| {
            l.eval(&CartanType::parse("C3").unwrap(), 2, IrrData::builtin())
                .unwrap()
                .dim_u64()
        })
        .collect();
    if r != char_of("100|001|100", "C3", 2)? {
        return Err("λ3 ↓ C3 ≠ 100|001|100".into());
    }
    notes.push(format!("λ3↓C3 = {}+{}+{}", dims[0], dims[1], dims[2]));

    let d7 = CartanType::parse("D7").unwrap();
    let half = characters::weyl_character(&d7, &w("0000001")).map_err(|e| e.to_string())?;
    let r = restrict(&half, emb("a3-d7-101")?).map_err(|e| e.to_string())?;
    if r != char_of("111", "A3", 2)? {
        return Err("half-spin ↓ A3 ≠ 111".into());
    }
    notes.push(format!("half-spin↓A3 = 111 ({})", r.dim_u64()));
    Ok(notes.join("; "))
}

fn collection() -> Outcome {
    let rs = RootSystem::of("E8").map_err(|e| e.to_string())?;
    let sc = StructureConstants::new(rs.clone()).map_err(|e| e.to_string())?;
    let mut vars = Vars::new(&["a", "b", "c"]);
    let idx = |l: &str| rs.index_of(&rs.root_from_label(l).unwrap()).unwrap();
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
    let mut word: Vec<(usize, Poly)> = Vec::new();
    for _ in 0..4 {
        for (l, c) in phi.iter().chain(y.iter()) {
            word.push((idx(l), vars.parse(2, c).map_err(|e| e.to_string())?));
        }
    }
    let got =
        collect(&sc, &PolyRing { p: 2 }, &word, Strategy::Leftmost).map_err(|e| e.to_string())?;
    let want = vec![
        (idx("11221111"), vars.parse(2, "a*b^2*c+a*b*c^2").unwrap()),
        (idx("12232221"), vars.parse(2, "a*b").unwrap()),
    ];
    let show = |w: &[(usize, Poly)]| {
        w.iter()
            .map(|(r, c)| format!("x{}({})", rs.roots()[*r], c.display(&vars)))
            .collect::<Vec<_>>()
            .join("·")
    };
    if got == want {
        Ok(show(&got))
    } else {
        Err(format!("computed {}, stated {}", show(&got), show(&want)))
    }
}

fn generators(data: &DataSet) -> Outcome {
    let jobs: Vec<_> = relation_jobs()
        .into_iter()
        .filter(|j| j.family != "b3e8sq")
        .collect();
    suite_outcome(&run_jobs(data, &jobs, &[]))
}

fn fixed_spaces(data: &DataSet) -> Outcome {
    let r = run_jobs(data, &[], &fixed_jobs());
    let details: Vec<String> = r
        .checks
        .iter()
        .map(|c| format!("{} {}", c.id, c.detail))
        .collect();
    suite_outcome(&r).map(|_| details.join("; "))
}

fn weyl_claims(data: &DataSet) -> Outcome {
    let r = check_weyl_claims(data);
    if r.checks.len() < 12 {
        return Err(format!("only {} claims encoded", r.checks.len()));
    }
    suite_outcome(&r)
}

fn main() {
    let data = DataSet::builtin();
    let criteria: Vec<(&str, u64, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("root data", 1, Box::new(root_data)),
        (
            "level and shape tables",
            5,
            Box::new(|| suite_outcome(&check_levels(&data))),
        ),
        ("Weyl claims", 1, Box::new(|| weyl_claims(&data))),
        (
            "characters and branching",
            5,
            Box::new(characters_and_branching),
        ),
        ("collection identity", 10, Box::new(collection)),
        (
            "generator propositions",
            300,
            Box::new(|| generators(&data)),
        ),
        ("fixed spaces", 120, Box::new(|| fixed_spaces(&data))),
        (
            "table consistency",
            10,
            Box::new(|| {
                both(
                    suite_outcome(&check_tables(&data)),
                    suite_outcome(&check_appendix(&data)),
                )
            }),
        ),
        (
            "H1 ledger",
            5,
            Box::new(|| suite_outcome(&check_h1_ledger(&data))),
        ),
        (
            "subsystems",
            1,
            Box::new(|| suite_outcome(&check_subsystems(&data))),
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let out = match out {
            Ok(d) if took > Duration::from_secs(*budget) => {
                Err(format!("{d}; over the {budget} s budget"))
            }
            o => o,
        };
        let (status, detail) = match &out {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {status} {name} [{:.2} s]: {detail}",
            i + 1,
            took.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
