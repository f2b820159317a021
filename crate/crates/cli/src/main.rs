//! Command-line front end for the chevalab toolkit.
//!
//! Exit status: 0 on success or when every check passes, 1 when a check
//! fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chevalab::branching::{composition_factors, find_embedding, restrict, Expr};
use chevalab::characters::{self, Character};
use chevalab::chevgroup::collect::{collect, PolyRing, Strategy};
use chevalab::chevgroup::generators::{
    instance_fixed_space_dim, load, parse_letters, parse_params, verify_generators, Family,
};
use chevalab::chevgroup::poly::Vars;
use chevalab::chevgroup::structure::StructureConstants;
use chevalab::parabolics::{decompose_radical, LeviContext};
use chevalab::rootdata::{parse_nodes, CartanType, RootSystem};
use chevalab::verifier::data::DataSet;
use chevalab::verifier::levels::as_weyl;
use chevalab::verifier::{run_suite, subsystems_maximal, SuiteReport, SUITES};
use chevalab::weylgrp::{act, maps_levi, WeylWord};

type Error = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(
    name = "chevalab",
    version,
    about = "Exact root-system, character and Chevalley-group computations"
)]
struct Cli {
    /// Directory whose data files replace the bundled ones [env: CHEVALAB_DATA]
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    /// Rightmost letter acts first.
    Rtl,
    /// Leftmost letter acts first.
    Ltr,
}

#[derive(Clone, Copy, ValueEnum)]
enum CollectStrategy {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// List roots in canonical order.
    Roots {
        ty: String,
        #[arg(long)]
        positive: bool,
        /// Print only the number of roots.
        #[arg(long)]
        count: bool,
    },
    /// Apply a Weyl group element to a root or test a Levi map.
    Weyl {
        ty: String,
        /// Comma-separated reflections: full root labels or simple nodes.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value = "rtl")]
        reading: Reading,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "levi")]
        root: Option<String>,
        /// `J1:J2`; exit 1 unless the element maps the first Levi onto the second.
        #[arg(long)]
        levi: Option<String>,
    },
    /// Levels and shape modules of the unipotent radical of a parabolic.
    Levels {
        ty: String,
        /// Levi nodes, 1-based, e.g. 13456.
        #[arg(long)]
        levi: String,
    },
    /// Character of a module expression.
    Char {
        ty: String,
        module: String,
        /// Characteristic; 0 reads bare weights as Weyl modules.
        #[arg(long, default_value_t = 0)]
        p: u32,
    },
    /// Restrict a module along a named embedding.
    Restrict {
        #[arg(long)]
        embedding: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 0)]
        p: u32,
    },
    /// Collect a word of positive root elements with polynomial coefficients.
    Collect {
        ty: String,
        /// Letters `x<root>(<poly>)` separated by whitespace.
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, value_enum, default_value = "left")]
        strategy: CollectStrategy,
    },
    /// Check the Steinberg relations for a generator family.
    VerifyProp {
        #[arg(long)]
        family: String,
        #[arg(long, conflicts_with = "params")]
        tuple: Option<String>,
        /// Comma-separated parameter values.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = 64)]
        q: u32,
        /// `GEN:FROM:TO` root substitution, for negative controls.
        #[arg(long, allow_hyphen_values = true)]
        mutate: Option<String>,
    },
    /// Dimension of the subspace of L(G) fixed by a generator family.
    Fixdim {
        #[arg(long)]
        family: String,
        #[arg(long, conflicts_with = "params")]
        tuple: Option<String>,
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = 4)]
        q: u32,
    },
    /// Run consistency suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = suite_names())]
        suite: String,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Maximal closed subsystems (Borel–de Siebenthal).
    Subsystems { ty: String },
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    let mut names: Vec<&'static str> = SUITES.to_vec();
    names.push("all");
    clap::builder::PossibleValuesParser::new(names)
}

/// Output text and whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, ok: true }
    }
}

fn dataset(dir: Option<PathBuf>, env: Option<&OsString>) -> Result<DataSet, Error> {
    let dir = dir.or_else(|| env.map(PathBuf::from));
    Ok(match dir {
        Some(d) => DataSet::from_dir(&d)?,
        None => DataSet::builtin(),
    })
}

fn describe(c: &Character, p: u32, data: &DataSet) -> Result<String, Error> {
    let mut out = String::new();
    writeln!(out, "dim {}", c.dim())?;
    writeln!(out, "dominant weights:")?;
    for (w, m) in c.dominant() {
        writeln!(out, "  {w} : {m}")?;
    }
    if p == 0 {
        writeln!(out, "Weyl modules:")?;
        for (w, m) in characters::decompose_weyl(c)? {
            writeln!(out, "  {w} : {m}")?;
        }
    } else {
        writeln!(out, "composition factors:")?;
        for f in composition_factors(c, p, &data.irr)? {
            writeln!(out, "  {} : {}", f.weight, f.mult)?;
        }
    }
    Ok(out)
}

fn eval_module(src: &str, ty: &CartanType, p: u32, data: &DataSet) -> Result<Character, Error> {
    let e = Expr::parse(src)?;
    let e = if p == 0 { as_weyl(&e) } else { e };
    Ok(e.eval(ty, p, &data.irr)?)
}

fn family_instance(
    data: &DataSet,
    family: &str,
    tuple: Option<&str>,
    params: Option<&str>,
    mutate: Option<&str>,
) -> Result<chevalab::chevgroup::generators::Instance, Error> {
    let fams: Vec<Family> = load(&data.generators, 2)?;
    let mut fam = fams
        .into_iter()
        .find(|f| f.name == family)
        .ok_or_else(|| format!("unknown family {family}"))?;
    if let Some(m) = mutate {
        let parts: Vec<&str> = m.split(':').collect();
        let [g, a, b] = parts.as_slice() else {
            return Err("--mutate takes GEN:FROM:TO".into());
        };
        fam.mutate(
            g.parse().map_err(|_| format!("bad generator index {g}"))?,
            a,
            b,
        )?;
    }
    let values = match (tuple, params) {
        (Some(t), _) => fam
            .tuple(t)
            .ok_or_else(|| format!("{family} has no tuple {t}"))?
            .to_vec(),
        (None, Some(p)) => parse_params(p)?,
        (None, None) => vec![0; fam.params.len()],
    };
    Ok(fam.instantiate(&values)?)
}

fn run(cli: Cli, env: Option<&OsString>) -> Result<Outcome, Error> {
    let data_dir = cli.data;
    match cli.cmd {
        Cmd::Roots {
            ty,
            positive,
            count,
        } => {
            let rs = RootSystem::of(&ty)?;
            let roots = if positive { rs.positives() } else { rs.roots() };
            if count {
                return Ok(Outcome::ok(format!("{}\n", roots.len())));
            }
            Ok(Outcome::ok(
                roots.iter().map(|r| format!("{r}\n")).collect(),
            ))
        }
        Cmd::Weyl {
            ty,
            word,
            reading,
            root,
            levi,
        } => {
            let rs = RootSystem::of(&ty)?;
            let mut w = WeylWord::parse(&rs, &word)?;
            if matches!(reading, Reading::Ltr) {
                w = w.inverse();
            }
            match (root, levi) {
                (Some(r), _) => {
                    let r = rs.root_from_label(&r)?;
                    Ok(Outcome::ok(format!("{}\n", act(&rs, &w, &r))))
                }
                (None, Some(l)) => {
                    let (a, b) = l.split_once(':').ok_or("--levi takes J1:J2")?;
                    let (j1, j2) = (parse_nodes(a, rs.rank())?, parse_nodes(b, rs.rank())?);
                    let ok = maps_levi(&rs, &w, &j1, &j2);
                    Ok(Outcome {
                        text: format!("{ok}\n"),
                        ok,
                    })
                }
                (None, None) => Err("weyl needs --root or --levi".into()),
            }
        }
        Cmd::Levels { ty, levi } => {
            let rs = RootSystem::of(&ty)?;
            let j = parse_nodes(&levi, rs.rank())?;
            let ctx = LeviContext::new(&rs, &j)?;
            let filt = decompose_radical(&rs, &j)?;
            let mut out = String::new();
            let lt = ctx.levi_type().map_or("T".to_string(), |t| t.to_string());
            writeln!(out, "Levi {lt}, dim Q = {}", filt.dim())?;
            for level in &filt.levels {
                writeln!(out, "level {} : dim {}", level.index, level.dim())?;
                for s in &level.shapes {
                    writeln!(
                        out,
                        "  shape {} : highest {} (dual {}) dim {} generator {}",
                        s.shape_label(),
                        s.highest_weight,
                        s.dual_high_weight(),
                        s.dim(),
                        s.generator
                    )?;
                }
            }
            Ok(Outcome::ok(out))
        }
        Cmd::Char { ty, module, p } => {
            let data = dataset(data_dir, env)?;
            let ty = CartanType::parse(&ty)?;
            let c = eval_module(&module, &ty, p, &data)?;
            Ok(Outcome::ok(describe(&c, p, &data)?))
        }
        Cmd::Restrict {
            embedding,
            module,
            p,
        } => {
            let data = dataset(data_dir, env)?;
            let e = find_embedding(&data.embeddings, &embedding)?;
            let c = eval_module(&module, &e.tgt, p, &data)?;
            let r = restrict(&c, e)?;
            Ok(Outcome::ok(format!(
                "{} -> {}\n{}",
                e.tgt,
                e.src,
                describe(&r, p, &data)?
            )))
        }
        Cmd::Collect {
            ty,
            word,
            p,
            strategy,
        } => {
            let rs = RootSystem::of(&ty)?;
            let sc = StructureConstants::new(rs.clone())?;
            let mut vars = Vars::default();
            let w = parse_letters(&rs, &mut vars, p, &word)?;
            let strategy = match strategy {
                CollectStrategy::Left => Strategy::Leftmost,
                CollectStrategy::Right => Strategy::Rightmost,
            };
            let out = collect(&sc, &PolyRing { p }, &w, strategy)?;
            let mut text = String::new();
            if out.is_empty() {
                text.push_str("1\n");
            }
            for (r, c) in &out {
                writeln!(text, "x{}({})", rs.roots()[*r], c.display(&vars))?;
            }
            Ok(Outcome::ok(text))
        }
        Cmd::VerifyProp {
            family,
            tuple,
            params,
            q,
            mutate,
        } => {
            let data = dataset(data_dir, env)?;
            let inst = family_instance(
                &data,
                &family,
                tuple.as_deref(),
                params.as_deref(),
                mutate.as_deref(),
            )?;
            let rep = verify_generators(&inst, q)?;
            Ok(Outcome {
                text: rep.to_string(),
                ok: rep.passed(),
            })
        }
        Cmd::Fixdim {
            family,
            tuple,
            params,
            q,
        } => {
            let data = dataset(data_dir, env)?;
            let inst = family_instance(&data, &family, tuple.as_deref(), params.as_deref(), None)?;
            Ok(Outcome::ok(format!(
                "{}\n",
                instance_fixed_space_dim(&inst, q)?
            )))
        }
        Cmd::Verify { suite, report } => {
            let data = dataset(data_dir, env)?;
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let reports: Vec<SuiteReport> = names
                .iter()
                .map(|n| run_suite(n, &data).expect("suite names are validated"))
                .collect();
            let ok = reports.iter().all(SuiteReport::passed);
            let text = match report {
                ReportFormat::Text => {
                    let mut t: String = reports.iter().map(|r| r.to_string()).collect();
                    writeln!(t, "overall: {}", if ok { "pass" } else { "FAIL" })?;
                    t
                }
                ReportFormat::Json => {
                    let v = serde_json::json!({ "passed": ok, "suites": reports });
                    serde_json::to_string_pretty(&v)? + "\n"
                }
            };
            Ok(Outcome { text, ok })
        }
        Cmd::Subsystems { ty } => {
            let rs = RootSystem::of(&ty)?;
            Ok(Outcome::ok(
                subsystems_maximal(&rs)
                    .into_iter()
                    .map(|s| s + "\n")
                    .collect(),
            ))
        }
    }
}

fn exit_code(r: &Result<Outcome, Error>) -> u8 {
    match r {
        Ok(o) if o.ok => 0,
        Ok(_) => 1,
        Err(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env = std::env::var_os("CHEVALAB_DATA");
    let r = run(cli, env.as_ref());
    match &r {
        Ok(o) => print!("{}", o.text),
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call_env(args: &[&str], env: Option<&OsString>) -> (u8, String) {
        let mut argv = vec!["chevalab"];
        argv.extend_from_slice(args);
        let cli = match Cli::try_parse_from(argv) {
            Ok(c) => c,
            Err(e) => return (e.exit_code() as u8, String::new()),
        };
        let r = run(cli, env);
        let text = r.as_ref().map(|o| o.text.clone()).unwrap_or_default();
        (exit_code(&r), text)
    }

    fn call(args: &[&str]) -> (u8, String) {
        call_env(args, None)
    }

    #[test]
    fn root_counts() {
        for (ty, n) in [
            ("F4", "48\n"),
            ("E6", "72\n"),
            ("E7", "126\n"),
            ("E8", "240\n"),
        ] {
            assert_eq!(call(&["roots", ty, "--count"]), (0, n.to_string()));
        }
        assert_eq!(call(&["roots", "A2", "--positive"]).1, "10\n01\n11\n");
    }

    #[test]
    fn weyl_root_image() {
        assert_eq!(
            call(&[
                "weyl",
                "E7",
                "--word",
                "1011111,1010000",
                "--root",
                "0101111"
            ]),
            (0, "0100000\n".into())
        );
    }

    #[test]
    fn weyl_levi_map_sets_exit_code() {
        let yes = call(&[
            "weyl",
            "E8",
            "--word",
            "3,4,5,6,7,8",
            "--reading",
            "ltr",
            "--levi",
            "45678:34567",
        ]);
        assert_eq!(yes, (0, "true\n".into()));
        let no = call(&[
            "weyl",
            "E8",
            "--word",
            "3,4,5,6,7,8",
            "--levi",
            "45678:34567",
        ]);
        assert_eq!(no, (1, "false\n".into()));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["roots", "E8", "--bogus"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["roots", "Q9"]).0, 2);
        assert_eq!(call(&["verify", "--suite", "nope"]).0, 2);
        assert_eq!(call(&["weyl", "E7", "--word", "1"]).0, 2);
    }

    #[test]
    fn spin_square_in_characteristic_two() {
        let (code, s) = call(&["char", "B3", "001⊗001", "--p", "2"]);
        assert_eq!(code, 0);
        assert!(s.starts_with("dim 64\n"), "{s}");
        assert!(
            s.contains(
                "composition factors:\n  0 0 2 : 1\n  0 1 0 : 2\n  1 0 0 : 4\n  0 0 0 : 4\n"
            ),
            "{s}"
        );
    }

    #[test]
    fn characteristic_zero_reads_weyl_modules() {
        let (_, s) = call(&["char", "B3", "101"]);
        assert!(s.starts_with("dim 48\n"), "{s}");
        assert!(s.ends_with("Weyl modules:\n  1 0 1 : 1\n"), "{s}");
    }

    #[test]
    fn restriction_to_c3() {
        let (code, s) = call(&[
            "restrict",
            "--embedding",
            "c3-a5-100",
            "--module",
            "W(00100)",
            "--p",
            "2",
        ]);
        assert_eq!(code, 0);
        assert!(s.starts_with("A5 -> C3\ndim 20\n"), "{s}");
        assert!(s.contains("  0 0 1 : 1\n  1 0 0 : 2\n"), "{s}");
    }

    #[test]
    fn collection_in_a2() {
        assert_eq!(
            call(&["collect", "A2", "--word", "x2(u) x1(t)"]).1,
            "x10(t)\nx01(u)\nx11(u*t)\n"
        );
        assert_eq!(call(&["collect", "A2", "--word", "x1(t) x1(t)"]).1, "1\n");
    }

    #[test]
    fn levels_of_e7_a5_parabolic() {
        let (_, s) = call(&["levels", "E7", "--levi", "13456"]);
        assert!(s.starts_with("Levi A5, dim Q = 48\n"), "{s}");
        let dims: Vec<&str> = s
            .lines()
            .filter(|l| l.starts_with("level"))
            .map(|l| l.rsplit(' ').next().unwrap())
            .collect();
        assert_eq!(dims, ["26", "16", "6"]);
    }

    #[test]
    fn subsystems_of_e6() {
        assert_eq!(
            call(&["subsystems", "E6"]),
            (0, "A1A5\nA2A2A2\nD5\n".into())
        );
    }

    #[test]
    fn fixdim_and_prop_on_d4() {
        assert_eq!(
            call(&["fixdim", "--family", "d4e8", "--tuple", "MR"]),
            (0, "5\n".into())
        );
        let (code, s) = call(&["verify-prop", "--family", "d4e8", "--tuple", "MR"]);
        assert_eq!(code, 0, "{s}");
        assert!(s.contains("realized type D4"));
        let (code, _) = call(&[
            "verify-prop",
            "--family",
            "d4e8",
            "--tuple",
            "MR",
            "--mutate",
            "3:11232110:11232111",
        ]);
        assert_eq!(code, 1);
    }

    #[test]
    fn data_directory_override() {
        let dir = tempfile::tempdir().unwrap();
        let claims = dir.path().join("weyl_claims.dat");
        let env = OsString::from(dir.path());
        std::fs::write(&claims, "ok ; A2 ; rtl ; 1 ; negative 10, maps 01>11\n").unwrap();
        assert_eq!(call_env(&["verify", "--suite", "weyl"], Some(&env)).0, 0);
        std::fs::write(&claims, "bad ; A2 ; rtl ; 1 ; fixes 01\n").unwrap();
        let (code, s) = call_env(&["verify", "--suite", "weyl"], Some(&env));
        assert_eq!(code, 1);
        assert!(s.contains("[FAIL] bad"), "{s}");
        let flag = dir.path().to_str().unwrap();
        assert_eq!(call(&["--data", flag, "verify", "--suite", "weyl"]).0, 1);
    }

    #[test]
    fn json_report_is_deterministic_and_structured() {
        let args = ["verify", "--suite", "tables", "--report", "json"];
        let (code, a) = call(&args);
        assert_eq!(a, call(&args).1);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        let suite = &v["suites"][0];
        assert_eq!(suite["suite"], "tables");
        let checks = suite["checks"].as_array().unwrap();
        assert!(checks.len() > 30);
        for c in checks {
            assert!(["pass", "partial", "fail"].contains(&c["status"].as_str().unwrap()));
        }
        assert_eq!(v["passed"].as_bool(), Some(code == 0));
    }
}
