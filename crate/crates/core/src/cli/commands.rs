//! One function per subcommand. Each returns a [`Report`] or an input
//! [`Diagnostic`]; indeterminate float verdicts are reports, not errors.

use num_rational::BigRational;
use serde::Serialize;

use super::instance::{Diagnostic, StratificationFile, TypedInstance};
use super::report::{label_vector, Report};
use crate::error::Error;
use crate::exterior::{hodge_number, HermitianForm};
use crate::hodge::{
    hl_check, hr_check, hr_limit_scan, lefschetz_operator, orthogonal_decomposition_check,
    Verdict,
};
use crate::linalg::LinearAlgebra;
use crate::scalar::{ratio, Mode};
use crate::torus::{af_inequality_check, subset_criterion, theorem_a_verify, VerifyPlan};

/// Turns a library error into either an indeterminate report or a diagnostic.
pub(crate) fn classify(command: &str, mode: Mode, e: Error) -> Result<Report, Diagnostic> {
    let location = match &e {
        Error::Indeterminate(msg) => {
            return Ok(Report::new(command, mode, Verdict::Indeterminate, "indeterminate")
                .detail("reason", msg))
        }
        Error::Bidegree { .. } => "p, q",
        Error::FactorCount { .. }
        | Error::NotPositiveSemidefinite
        | Error::DimensionMismatch { .. }
        | Error::NotHermitian { .. } => "factors",
        Error::NotPositiveDefinite => "A",
        Error::InvalidStratification(_) => "strata",
        _ => "",
    };
    Err(Diagnostic::new(location, e.to_string()))
}

fn verdict_summary(v: Verdict) -> String {
    v.as_str().to_string()
}

fn require<'a, F>(field: &str, command: &str, m: &'a Option<HermitianForm<F>>) -> Result<&'a HermitianForm<F>, Diagnostic> {
    m.as_ref()
        .ok_or_else(|| Diagnostic::new(field, format!("required by {command}")))
}

pub fn check_hl<F: LinearAlgebra>(inst: &TypedInstance<F>) -> Result<Report, Diagnostic> {
    const CMD: &str = "check-hl";
    let (n, p, q) = (inst.n, inst.p, inst.q);
    let op = match lefschetz_operator(n, &inst.factors, p, q) {
        Ok(op) => op,
        Err(e) => return classify(CMD, F::MODE, e),
    };
    let out = hl_check(&op);
    let witness = out.witness.as_ref().map(|w| label_vector(n, p, q, w));
    Ok(Report::new(CMD, F::MODE, out.verdict, verdict_summary(out.verdict))
        .detail("n", n)
        .detail("bidegree", [p, q])
        .detail("target_bidegree", [n - q, n - p])
        .detail("dimension", hodge_number(n, p as isize, q as isize))
        .detail("kernel_witness", witness)
        .detail("smallest_singular_value", out.smallest_singular))
}

pub fn check_hr<F: LinearAlgebra>(inst: &TypedInstance<F>) -> Result<Report, Diagnostic> {
    const CMD: &str = "check-hr";
    let (n, p, q) = (inst.n, inst.p, inst.q);
    let m = require("M", CMD, &inst.m)?;
    let out = match hr_check(n, &inst.factors, m, p, q) {
        Ok(o) => o,
        Err(e) => return classify(CMD, F::MODE, e),
    };
    let decomposition = match orthogonal_decomposition_check(n, &inst.factors, m, p, q) {
        Ok(d) => Some(d),
        Err(Error::Indeterminate(_)) => None,
        Err(e) => return classify(CMD, F::MODE, e),
    };
    let expected = hodge_number(n, p as isize, q as isize)
        - hodge_number(n, p as isize - 1, q as isize - 1);
    let basis: Vec<_> = out
        .primitive_basis
        .iter()
        .map(|v| label_vector(n, p, q, v))
        .collect();
    let v = out.positive_definite;
    Ok(Report::new(CMD, F::MODE, v, verdict_summary(v))
        .detail("n", n)
        .detail("bidegree", [p, q])
        .detail("primitive_dim", out.primitive_dim())
        .detail("expected_primitive_dim", expected)
        .detail("signature", out.signature)
        .detail("relative_eigenvalue_floor", out.relative_floor)
        .detail("primitive_basis", basis)
        .detail("decomposition", decomposition))
}

pub fn criterion<F: LinearAlgebra>(inst: &TypedInstance<F>) -> Result<Report, Diagnostic> {
    const CMD: &str = "criterion";
    let r = match subset_criterion(inst.n, &inst.factors, inst.p, inst.q) {
        Ok(r) => r,
        Err(e) => return classify(CMD, F::MODE, e),
    };
    let v = Verdict::from_bool(r.passes);
    let summary = match &r.failing_subset {
        Some(s) => format!("fails, I={s}"),
        None => "holds".into(),
    };
    Ok(Report::new(CMD, F::MODE, v, summary)
        .detail("n", inst.n)
        .detail("bidegree", [inst.p, inst.q])
        .detail("failing_subset", r.failing_subset)
        .detail("required_rank", r.required_rank)
        .detail("actual_rank", r.actual_rank)
        .detail("subsets_checked", r.subsets_checked))
}

#[derive(Debug, Clone, Serialize)]
struct PlanEcho<'a> {
    dims: &'a [usize],
    bidegree: Option<(usize, usize)>,
    factor_ranks: &'a Option<Vec<usize>>,
    m_rank: Option<usize>,
    check_hr: bool,
}

pub fn verify_theorem_a<F: LinearAlgebra>(
    plan: &VerifyPlan,
    trials: usize,
    seed: u64,
) -> Result<Report, Diagnostic> {
    const CMD: &str = "verify-theorem-a";
    let report = match theorem_a_verify::<F>(plan, trials, seed) {
        Ok(r) => r,
        Err(Error::InvalidArgument(msg)) => return Err(Diagnostic::new("flags", msg)),
        Err(e) => return classify(CMD, F::MODE, e).map(|r| r.with_seed(seed)),
    };
    let verdict = if !report.disagreements.is_empty() {
        Verdict::Fails
    } else if report.indeterminate > 0 {
        Verdict::Indeterminate
    } else {
        Verdict::Holds
    };
    let summary = format!(
        "{}: criterion and HL agree on {}/{} trials",
        verdict.as_str(),
        report.hl_agreements,
        report.trials
    );
    Ok(Report::new(CMD, F::MODE, verdict, summary)
        .with_seed(seed)
        .detail(
            "plan",
            PlanEcho {
                dims: &plan.dims,
                bidegree: plan.bidegree,
                factor_ranks: &plan.factor_ranks,
                m_rank: plan.m_rank,
                check_hr: plan.check_hr,
            },
        )
        .detail("trials", report.trials)
        .detail("criterion_passes", report.criterion_passes)
        .detail("hl_agreements", report.hl_agreements)
        .detail("hr_checked", report.hr_checked)
        .detail("hr_agreements", report.hr_agreements)
        .detail("indeterminate", report.indeterminate)
        .detail("disagreements", &report.disagreements)
        .detail("records", &report.records))
}

pub fn defect(file: &StratificationFile, force: bool, m: Option<usize>) -> Result<Report, Diagnostic> {
    const CMD: &str = "defect";
    let s = file.to_stratification();
    let violations = s.violations();
    if !violations.is_empty() && !force {
        let names: Vec<&str> = violations.iter().map(|v| v.name()).collect();
        return Err(Diagnostic::new(
            "strata",
            format!(
                "invalid stratification ({}): {}",
                names.join(", "),
                violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
            ),
        ));
    }
    let raw = s.raw_defect();
    let dim_x = s.dim_x as i64;
    let semismall = raw <= 0;
    let exact_lef = (dim_x - raw.max(0)).max(0);
    let (verdict, summary) = match m {
        Some(m) => {
            let ok = raw <= dim_x - m as i64;
            (
                Verdict::from_bool(ok),
                format!("r = {raw}, {}{m}-lef", if ok { "" } else { "not " }),
            )
        }
        None => (
            Verdict::from_bool(semismall),
            format!("r = {raw}, exact {exact_lef}-lef"),
        ),
    };
    let forced = !violations.is_empty();
    let summary = if forced {
        format!("{summary} [forced: stratification is invalid]")
    } else {
        summary
    };
    let nd = if violations.is_empty() { s.nd_lower_bound().ok() } else { None };
    Ok(Report::new(CMD, Mode::Exact, verdict, summary)
        .detail("dim_X", s.dim_x)
        .detail("dim_Y", s.dim_y)
        .detail("defect", raw)
        .detail("semismall", semismall)
        .detail("exact_lef", exact_lef)
        .detail("m", m)
        .detail("nd_lower_bound", nd)
        .detail("forced", forced)
        .detail(
            "violations",
            violations.iter().map(|v| v.name()).collect::<Vec<_>>(),
        ))
}

pub fn af<F: LinearAlgebra>(inst: &TypedInstance<F>) -> Result<Report, Diagnostic> {
    const CMD: &str = "af";
    if inst.factors.len() != inst.n || inst.n < 2 {
        return Err(Diagnostic::new(
            "factors",
            format!(
                "af needs n = {} factors [A, B, rest...] with n >= 2, got {}",
                inst.n,
                inst.factors.len()
            ),
        ));
    }
    let r = match af_inequality_check(&inst.factors[0], &inst.factors[1], &inst.factors[2..]) {
        Ok(r) => r,
        Err(e) => return classify(CMD, F::MODE, e),
    };
    let v = Verdict::from_bool(r.holds);
    let summary = if r.equality {
        "holds with equality".to_string()
    } else {
        verdict_summary(v)
    };
    Ok(Report::new(CMD, F::MODE, v, summary)
        .detail("n", inst.n)
        .detail("lhs", &r.lhs)
        .detail("rhs", &r.rhs)
        .detail("equality", r.equality))
}

pub fn default_t_values() -> Vec<BigRational> {
    vec![ratio(1, 1), ratio(1, 10), ratio(1, 100)]
}

pub fn scan<F: LinearAlgebra>(inst: &TypedInstance<F>) -> Result<Report, Diagnostic> {
    const CMD: &str = "scan";
    let m = require("M", CMD, &inst.m)?;
    let a = inst.a.clone().unwrap_or_else(|| HermitianForm::identity(inst.n));
    let ts = inst.t_values.clone().unwrap_or_else(default_t_values);
    let r = match hr_limit_scan(inst.n, &inst.factors, m, &a, inst.p, inst.q, &ts) {
        Ok(r) => r,
        Err(Error::InvalidArgument(msg)) => return Err(Diagnostic::new("t_values", msg)),
        Err(e) => return classify(CMD, F::MODE, e),
    };
    let limit = r.entries.last().expect("t = 0 entry");
    let verdict = if r.entries.iter().any(|e| e.verdict == Verdict::Indeterminate) {
        Verdict::Indeterminate
    } else {
        Verdict::from_bool(
            r.constant_for_positive_t && r.matches_limit && limit.verdict == Verdict::Holds,
        )
    };
    let summary = match verdict {
        Verdict::Holds => "holds: signature constant down to t = 0".to_string(),
        Verdict::Fails if r.constant_for_positive_t => {
            "fails: signature changes at t = 0".to_string()
        }
        v => verdict_summary(v),
    };
    Ok(Report::new(CMD, F::MODE, verdict, summary)
        .detail("n", inst.n)
        .detail("bidegree", [inst.p, inst.q])
        .detail("entries", &r.entries)
        .detail("constant_for_positive_t", r.constant_for_positive_t)
        .detail("matches_limit", r.matches_limit))
}
