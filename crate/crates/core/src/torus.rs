//! Numerical dimension, the subset-rank criterion for complete intersections
//! of nef classes, the randomized equivalence harness, mixed discriminants and
//! the Alexandrov–Fenchel-type inequalities they satisfy.
//!
//! On a torus a nef class is a positive-semidefinite Hermitian form and its
//! numerical dimension is the rank of the form. For nef `α_1, …, α_{n-p-q}`
//! multiplication by their product is an isomorphism `H^{p,q} → H^{n-q,n-p}`
//! exactly when `rank(Σ_{i∈I} α_i) ≥ |I| + p + q` for every nonempty `I`.

use std::cmp::Ordering;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{sum_forms, ExteriorClass, HermitianForm, MultiIndex};
use crate::hodge::{check_factors, hl_check, hr_check, lefschetz_operator, Verdict};
use crate::linalg::{determinant, LinearAlgebra, Matrix, Signature};
use crate::sampling::{random_psd, trial_rng};
use crate::scalar::{Field, GaussianRational, Mode, Scalar};

/// Rank of a positive-semidefinite form. Forms with a negative direction are rejected.
pub fn numerical_dimension<F: LinearAlgebra>(form: &HermitianForm<F>) -> Result<usize> {
    let sig = F::hermitian_signature(form.matrix())?;
    if sig.n_minus > 0 {
        return Err(Error::NotPositiveSemidefinite);
    }
    Ok(F::rank(form.matrix())?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetReport {
    pub passes: bool,
    /// First failing subset of factor positions (1-based), lexicographic order.
    pub failing_subset: Option<MultiIndex>,
    pub required_rank: Option<usize>,
    pub actual_rank: Option<usize>,
    pub subsets_checked: usize,
}

/// Nonempty subsets of `{1, …, k}` in lexicographic order.
pub fn nonempty_subsets(k: usize) -> Vec<MultiIndex> {
    let mut all: Vec<MultiIndex> = (1u32..(1u32 << k))
        .map(|mask| {
            let elems: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
            MultiIndex::new(&elems, k).expect("increasing")
        })
        .collect();
    all.sort();
    all
}

pub fn subset_criterion<F: LinearAlgebra>(
    n: usize,
    factors: &[HermitianForm<F>],
    p: usize,
    q: usize,
) -> Result<SubsetReport> {
    check_factors(n, factors, p, q)?;
    for f in factors {
        numerical_dimension(f)?;
    }
    let mut checked = 0;
    for subset in nonempty_subsets(factors.len()) {
        checked += 1;
        let chosen: Vec<&HermitianForm<F>> = subset.iter().map(|i| &factors[i - 1]).collect();
        let rank = F::rank(sum_forms(n, &chosen)?.matrix())?;
        let required = subset.len() + p + q;
        if rank < required {
            return Ok(SubsetReport {
                passes: false,
                failing_subset: Some(subset),
                required_rank: Some(required),
                actual_rank: Some(rank),
                subsets_checked: checked,
            });
        }
    }
    Ok(SubsetReport {
        passes: true,
        failing_subset: None,
        required_rank: None,
        actual_rank: None,
        subsets_checked: checked,
    })
}

/// Polarized determinant, normalized so that `D(A, …, A) = det A`:
/// `D(A_1, …, A_n) = (1/n!) Σ_{∅≠S⊆[n]} (−1)^{n−|S|} det(Σ_{i∈S} A_i)`.
pub fn mixed_discriminant<F: Field>(forms: &[HermitianForm<F>]) -> Result<F> {
    let n = forms.first().map(HermitianForm::n).ok_or_else(|| {
        Error::InvalidArgument("mixed discriminant of an empty list".into())
    })?;
    if forms.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: forms.len(),
        });
    }
    if let Some(f) = forms.iter().find(|f| f.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.n(),
        });
    }
    let mut total = F::zero();
    for mask in 1u32..(1u32 << n) {
        let chosen: Vec<&HermitianForm<F>> = (0..n)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| &forms[b])
            .collect();
        let det = determinant(sum_forms(n, &chosen)?.matrix())?;
        if (n - chosen.len()) % 2 == 1 {
            total = total - det;
        } else {
            total = total + det;
        }
    }
    let factorial: i64 = (1..=n as i64).product();
    let inv = F::from_int(factorial).inv().expect("n! is nonzero");
    Ok(total * inv)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AfReport {
    /// `D(A, B, rest)^2`
    pub lhs: Scalar,
    /// `D(A, A, rest) · D(B, B, rest)`
    pub rhs: Scalar,
    pub holds: bool,
    pub equality: bool,
}

/// `D(A,B,rest)^2 ≥ D(A,A,rest) D(B,B,rest)` for positive-semidefinite arguments.
pub fn af_inequality_check<F: LinearAlgebra>(
    a: &HermitianForm<F>,
    b: &HermitianForm<F>,
    rest: &[HermitianForm<F>],
) -> Result<AfReport> {
    let n = a.n();
    if n < 2 || rest.len() != n - 2 {
        return Err(Error::DimensionMismatch {
            expected: n.saturating_sub(2),
            found: rest.len(),
        });
    }
    for f in [a, b].into_iter().chain(rest) {
        numerical_dimension(f)?;
    }
    let with = |x: &HermitianForm<F>, y: &HermitianForm<F>| {
        let mut args = vec![x.clone(), y.clone()];
        args.extend(rest.iter().cloned());
        mixed_discriminant(&args)
    };
    let dab = with(a, b)?;
    let lhs = dab.clone() * dab;
    let rhs = with(a, a)? * with(b, b)?;
    let scale = lhs.modulus().max(rhs.modulus());
    let cmp = (lhs.clone() - rhs.clone()).re_sign(scale);
    Ok(AfReport {
        lhs: lhs.to_scalar(),
        rhs: rhs.to_scalar(),
        holds: cmp != Ordering::Less,
        equality: cmp == Ordering::Equal,
    })
}

/// Real basis of `n x n` Hermitian matrices: `E_jj`, `E_jk + E_kj`, `i(E_jk − E_kj)`.
pub fn hermitian_real_basis<F: Field>(n: usize) -> Vec<HermitianForm<F>> {
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in j..n {
            if j == k {
                let mut m = Matrix::zeros(n, n);
                m[(j, j)] = F::one();
                out.push(m);
            } else {
                let mut sym = Matrix::zeros(n, n);
                sym[(j, k)] = F::one();
                sym[(k, j)] = F::one();
                out.push(sym);
                let mut anti = Matrix::zeros(n, n);
                anti[(j, k)] = F::imag_unit();
                anti[(k, j)] = -F::imag_unit();
                out.push(anti);
            }
        }
    }
    out.into_iter()
        .map(|m| HermitianForm::new(m).expect("Hermitian"))
        .collect()
}

/// Signature of `(α, β) ↦ ∫ Ω ∧ α ∧ β` on real (1,1) classes, with `Ω` the
/// product of the `n − 2` factors. Expected `(1, n² − 1, 0)` when the subset
/// criterion holds at bidegree (1,1).
pub fn hodge_index_signature<F: LinearAlgebra>(
    n: usize,
    factors: &[HermitianForm<F>],
) -> Result<Signature> {
    check_factors(n, factors, 1, 1)?;
    let omega = ExteriorClass::product_of_forms(n, factors)?;
    let classes: Vec<ExteriorClass<F>> = hermitian_real_basis::<F>(n)
        .iter()
        .map(ExteriorClass::from_hermitian)
        .collect();
    let left = classes
        .iter()
        .map(|c| omega.wedge(c))
        .collect::<Result<Vec<_>>>()?;
    let rows = left
        .iter()
        .map(|l| {
            classes
                .iter()
                .map(|c| l.wedge(c)?.integrate())
                .collect::<Result<Vec<F>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(F::hermitian_signature(&Matrix::from_rows(rows)?)?)
}

/// A fully resolved random instance of the equivalence harness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub factor_ranks: Vec<usize>,
    pub m_rank: usize,
    pub seed: u64,
    pub trial: u64,
}

/// What to hold fixed across trials; unset fields are drawn per trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyPlan {
    pub dims: Vec<usize>,
    pub bidegree: Option<(usize, usize)>,
    pub factor_ranks: Option<Vec<usize>>,
    pub m_rank: Option<usize>,
    pub check_hr: bool,
}

impl Default for VerifyPlan {
    fn default() -> Self {
        VerifyPlan {
            dims: vec![2, 3, 4],
            bidegree: None,
            factor_ranks: None,
            m_rank: None,
            check_hr: true,
        }
    }
}

impl VerifyPlan {
    fn validate(&self) -> Result<()> {
        if self.dims.is_empty() || self.dims.iter().any(|&n| n == 0 || n > 6) {
            return Err(Error::InvalidArgument(
                "dimensions must be nonempty and lie in [1, 6]".into(),
            ));
        }
        for &n in &self.dims {
            if let Some((p, q)) = self.bidegree {
                if p + q > n {
                    return Err(Error::Bidegree { n, p, q });
                }
                if let Some(ranks) = &self.factor_ranks {
                    if ranks.len() != n - p - q {
                        return Err(Error::FactorCount {
                            n,
                            p,
                            q,
                            expected: n - p - q,
                            found: ranks.len(),
                        });
                    }
                }
                if let Some(m) = self.m_rank {
                    if m < p + q || m > n {
                        return Err(Error::InvalidArgument(format!(
                            "M rank {m} must lie in [{}, {n}]",
                            p + q
                        )));
                    }
                }
            } else if self.factor_ranks.is_some() || self.m_rank.is_some() {
                return Err(Error::InvalidArgument(
                    "fixed ranks require a fixed bidegree".into(),
                ));
            }
            if let Some(ranks) = &self.factor_ranks {
                if ranks.iter().any(|&r| r > n) {
                    return Err(Error::InvalidArgument(format!(
                        "factor ranks {ranks:?} exceed dimension {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Draws the instance shape for one trial from its own stream.
    pub fn resolve<R: Rng>(&self, rng: &mut R, seed: u64, trial: u64) -> InstanceSpec {
        let n = self.dims[rng.random_range(0..self.dims.len())];
        let (p, q) = match self.bidegree {
            Some(pq) => pq,
            None => {
                let pairs: Vec<(usize, usize)> = (0..=n)
                    .flat_map(|p| (0..=n - p).map(move |q| (p, q)))
                    .collect();
                pairs[rng.random_range(0..pairs.len())]
            }
        };
        let k = n - p - q;
        let factor_ranks = match &self.factor_ranks {
            Some(r) => r.clone(),
            None => (0..k)
                .map(|_| {
                    let lo = if rng.random_bool(0.7) { (p + q + 1).min(n) } else { 0 };
                    rng.random_range(lo..=n)
                })
                .collect(),
        };
        let m_rank = self
            .m_rank
            .unwrap_or_else(|| rng.random_range((p + q)..=n));
        InstanceSpec {
            n,
            p,
            q,
            factor_ranks,
            m_rank,
            seed,
            trial,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub instance: InstanceSpec,
    pub criterion: Verdict,
    pub failing_subset: Option<MultiIndex>,
    pub hl: Verdict,
    pub hr: Option<Verdict>,
    pub hl_agrees: bool,
    pub hr_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub record: TrialRecord,
    pub factors: Vec<Vec<Vec<Scalar>>>,
    pub m: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub mode: Mode,
    pub seed: u64,
    pub trials: usize,
    pub criterion_passes: usize,
    pub hl_agreements: usize,
    pub hr_checked: usize,
    pub hr_agreements: usize,
    pub indeterminate: usize,
    pub disagreements: Vec<Disagreement>,
    pub records: Vec<TrialRecord>,
}

impl AgreementReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
            && self.indeterminate == 0
            && self.hl_agreements == self.trials
            && self.hr_agreements == self.hr_checked
    }
}

fn form_rows<F: Field>(f: &HermitianForm<F>) -> Vec<Vec<Scalar>> {
    f.matrix()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(Field::to_scalar).collect())
        .collect()
}

/// Draws the factors and `M` of an instance; the same stream always yields
/// the same matrices.
pub fn generate_instance<R: Rng>(
    rng: &mut R,
    spec: &InstanceSpec,
) -> (Vec<HermitianForm<GaussianRational>>, HermitianForm<GaussianRational>) {
    let factors = spec
        .factor_ranks
        .iter()
        .map(|&r| random_psd(rng, spec.n, r))
        .collect();
    let m = random_psd(rng, spec.n, spec.m_rank);
    (factors, m)
}

fn run_trial<F: LinearAlgebra>(plan: &VerifyPlan, seed: u64, trial: u64) -> Result<Disagreement> {
    let mut rng = trial_rng(seed, trial);
    let spec = plan.resolve(&mut rng, seed, trial);
    let (exact_factors, exact_m) = generate_instance(&mut rng, &spec);
    let factors: Vec<HermitianForm<F>> = exact_factors
        .iter()
        .map(|f| f.map(F::from_gaussian))
        .collect();
    let m = exact_m.map(F::from_gaussian);
    let (n, p, q) = (spec.n, spec.p, spec.q);

    let (criterion, failing_subset) = match subset_criterion(n, &factors, p, q) {
        Ok(r) => (Verdict::from_bool(r.passes), r.failing_subset),
        Err(Error::Indeterminate(_)) => (Verdict::Indeterminate, None),
        Err(e) => return Err(e),
    };
    let hl = hl_check(&lefschetz_operator(n, &factors, p, q)?).verdict;
    let hr = if plan.check_hr {
        Some(hr_check(n, &factors, &m, p, q)?.positive_definite)
    } else {
        None
    };
    let determined = |v: Verdict| v != Verdict::Indeterminate && criterion != Verdict::Indeterminate;
    let hl_agrees = determined(hl) && hl == criterion;
    let hr_agrees = hr.map(|v| determined(v) && v == criterion);
    Ok(Disagreement {
        record: TrialRecord {
            instance: spec,
            criterion,
            failing_subset,
            hl,
            hr,
            hl_agrees,
            hr_agrees,
        },
        factors: factors.iter().map(form_rows).collect(),
        m: form_rows(&m),
    })
}

/// Runs `trials` seeded instances, evaluating the subset criterion and the
/// direct HL (and HR) checks independently and tallying agreement. Trials are
/// evaluated in parallel on the current rayon pool and merged by index.
pub fn theorem_a_verify<F: LinearAlgebra>(
    plan: &VerifyPlan,
    trials: usize,
    seed: u64,
) -> Result<AgreementReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    plan.validate()?;
    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|t| run_trial::<F>(plan, seed, t))
        .collect::<Result<Vec<_>>>()?;

    let mut report = AgreementReport {
        mode: F::MODE,
        seed,
        trials,
        criterion_passes: 0,
        hl_agreements: 0,
        hr_checked: 0,
        hr_agreements: 0,
        indeterminate: 0,
        disagreements: Vec::new(),
        records: Vec::with_capacity(trials),
    };
    for outcome in outcomes {
        let r = &outcome.record;
        if r.criterion == Verdict::Holds {
            report.criterion_passes += 1;
        }
        if r.hl_agrees {
            report.hl_agreements += 1;
        }
        if let Some(agrees) = r.hr_agrees {
            report.hr_checked += 1;
            if agrees {
                report.hr_agreements += 1;
            }
        }
        let verdicts = [Some(r.criterion), Some(r.hl), r.hr];
        let indeterminate = verdicts.contains(&Some(Verdict::Indeterminate));
        if indeterminate {
            report.indeterminate += 1;
        }
        report.records.push(outcome.record.clone());
        if !indeterminate && (!r.hl_agrees || r.hr_agrees == Some(false)) {
            report.disagreements.push(outcome);
        }
    }
    Ok(report)
}
