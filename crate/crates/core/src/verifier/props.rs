//! Generator propositions: Steinberg relations of explicit generator families
//! in the adjoint representation, and fixed-space dimensions on L(G).

use rayon::prelude::*;

use crate::chevgroup::adjoint::{Adjoint, AdjointData};
use crate::chevgroup::field::Gf;
use crate::chevgroup::generators::{
    instance_fixed_space_dim, load, verify_with, Family, Instance, Report,
};
use crate::chevgroup::structure::StructureConstants;
use crate::chevgroup::ChevError;
use crate::rootdata::RootSystem;

use super::data::DataSet;
use super::{Check, SuiteReport, VerifyError};

/// Field order for relation checks.
pub const RELATION_Q: u32 = 64;
/// Field order for fixed-space dimensions.
pub const FIXED_Q: u32 = 4;

/// What a relation job must show.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Holds,
    /// Negative control: some relation must fail.
    Breaks,
}

#[derive(Clone, Debug)]
pub struct RelationJob {
    pub id: String,
    pub family: String,
    pub tuple: String,
    /// `(generator, from, to)` root substitution applied before instantiating.
    pub mutation: Option<(i32, &'static str, &'static str)>,
    pub expect: Expect,
}

#[derive(Clone, Debug)]
pub struct FixedJob {
    pub id: String,
    pub family: String,
    pub tuple: String,
    pub dim: usize,
}

fn job(family: &str, tuple: &str) -> RelationJob {
    RelationJob {
        id: format!("{family}@{tuple}"),
        family: family.into(),
        tuple: tuple.into(),
        mutation: None,
        expect: Expect::Holds,
    }
}

/// Relation checks run by the suite.
pub fn relation_jobs() -> Vec<RelationJob> {
    let mut jobs: Vec<RelationJob> = (1..=8).map(|i| job("b3e8", &format!("rep{i}"))).collect();
    jobs.extend((1..=8).map(|i| job("b3e8sq", &format!("rep{i}"))));
    jobs.push(job("d4e8", "MR"));
    jobs.push(RelationJob {
        id: "d4e8@MR mutated".into(),
        mutation: Some((3, "11232110", "11232111")),
        expect: Expect::Breaks,
        ..job("d4e8", "MR")
    });
    jobs
}

/// Fixed-space checks run by the suite.
pub fn fixed_jobs() -> Vec<FixedJob> {
    vec![
        FixedJob {
            id: "fixdim d4e8@MR".into(),
            family: "d4e8".into(),
            tuple: "MR".into(),
            dim: 5,
        },
        FixedJob {
            id: "fixdim b3e8@Y8".into(),
            family: "b3e8".into(),
            tuple: "Y8".into(),
            dim: 6,
        },
    ]
}

fn find<'a>(fams: &'a [Family], name: &str) -> Result<&'a Family, VerifyError> {
    fams.iter()
        .find(|f| f.name == name)
        .ok_or_else(|| VerifyError::Missing(format!("generator family {name}")))
}

fn instance(
    fams: &[Family],
    name: &str,
    tuple: &str,
    mutation: Option<(i32, &str, &str)>,
) -> Result<Instance, VerifyError> {
    let mut fam = find(fams, name)?.clone();
    if let Some((g, a, b)) = mutation {
        fam.mutate(g, a, b)?;
    }
    let values = fam
        .tuple(tuple)
        .ok_or_else(|| VerifyError::Missing(format!("{name} tuple {tuple}")))?
        .to_vec();
    Ok(fam.instantiate(&values)?)
}

fn failing_classes(rep: &Report) -> Vec<String> {
    let mut out: Vec<String> = rep
        .classes
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.class.clone())
        .collect();
    if !rep.audit_ok {
        out.push("degree audit".into());
    }
    out
}

pub fn run_relation_job(
    job: &RelationJob,
    fams: &[Family],
    adj: &Adjoint,
    sc: &StructureConstants,
) -> Result<Check, VerifyError> {
    let inst = instance(fams, &job.family, &job.tuple, job.mutation)?;
    let rep = verify_with(&inst, adj, sc)?;
    let failing = failing_classes(&rep);
    let realized = rep.realized_type.as_deref().unwrap_or("unknown");
    let detail = if failing.is_empty() {
        format!("all relation classes hold; realized type {realized}")
    } else {
        format!("failing: {}; realized type {realized}", failing.join(", "))
    };
    let ok = match job.expect {
        Expect::Holds => rep.passed(),
        Expect::Breaks => !rep.passed(),
    };
    Ok(Check::new(&job.id, ok, detail))
}

pub fn run_fixed_job(job: &FixedJob, fams: &[Family]) -> Result<Check, VerifyError> {
    let inst = instance(fams, &job.family, &job.tuple, None)?;
    let d = instance_fixed_space_dim(&inst, FIXED_Q)?;
    Ok(Check::new(
        &job.id,
        d == job.dim,
        format!("dim over GF({FIXED_Q}) = {d}, stated {}", job.dim),
    ))
}

type Prepared = Result<(Adjoint, StructureConstants), ChevError>;

fn adjoint(ambient: &str) -> Prepared {
    let sc = StructureConstants::new(RootSystem::of(ambient)?)?;
    let adj = Adjoint::new(&AdjointData::integral(&sc), Gf::of_order(RELATION_Q)?);
    Ok((adj, sc))
}

/// Runs the given jobs; checks come back in job order.
pub fn run_jobs(data: &DataSet, relations: &[RelationJob], fixed: &[FixedJob]) -> SuiteReport {
    let fams = match load(&data.generators, 2) {
        Ok(f) => f,
        Err(e) => {
            return SuiteReport::new(
                "props",
                vec![Check::failed("generators.dat", e.to_string())],
            )
        }
    };
    let mut ambients: Vec<String> = Vec::new();
    for j in relations {
        if let Ok(f) = find(&fams, &j.family) {
            if !ambients.contains(&f.ambient) {
                ambients.push(f.ambient.clone());
            }
        }
    }
    let prepared: Vec<(String, Prepared)> = ambients
        .into_iter()
        .map(|a| (a.clone(), adjoint(&a)))
        .collect();
    let rel: Vec<Check> = relations
        .par_iter()
        .map(|j| {
            let run = || -> Result<Check, VerifyError> {
                let amb = &find(&fams, &j.family)?.ambient;
                let (_, ctx) = prepared
                    .iter()
                    .find(|(a, _)| a == amb)
                    .expect("prepared for every family");
                let (adj, sc) = ctx.as_ref().map_err(|e| VerifyError::Chev(e.clone()))?;
                run_relation_job(j, &fams, adj, sc)
            };
            run().unwrap_or_else(|e| Check::failed(&j.id, e.to_string()))
        })
        .collect();
    let fix: Vec<Check> = fixed
        .par_iter()
        .map(|j| run_fixed_job(j, &fams).unwrap_or_else(|e| Check::failed(&j.id, e.to_string())))
        .collect();
    SuiteReport::new("props", rel.into_iter().chain(fix).collect())
}

pub fn check_props(data: &DataSet) -> SuiteReport {
    run_jobs(data, &relation_jobs(), &fixed_jobs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::Status;

    #[test]
    fn negative_control_breaks() {
        let jobs: Vec<RelationJob> = relation_jobs()
            .into_iter()
            .filter(|j| j.expect == Expect::Breaks)
            .collect();
        let r = run_jobs(&DataSet::builtin(), &jobs, &[]);
        assert_eq!(r.checks.len(), 1);
        assert_eq!(r.checks[0].status, Status::Pass, "{}", r.checks[0].detail);
        assert!(r.checks[0].detail.starts_with("failing:"));
    }

    #[test]
    fn unknown_tuple_is_reported() {
        let r = run_jobs(&DataSet::builtin(), &[job("d4e8", "nope")], &[]);
        assert_eq!(r.checks[0].status, Status::Fail);
        assert!(r.checks[0].detail.contains("missing"));
    }
}
