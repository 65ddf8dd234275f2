//! Hard Lefschetz and Hodge–Riemann checks for complete intersections
//! `Ω = ω_{A_1} ∧ … ∧ ω_{A_{n-p-q}}` on a complex torus.

use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{basis, hodge_number, ExteriorClass, HermitianForm};
use crate::linalg::{hermitian_eigenvalues, restrict_form, Invertibility, LinearAlgebra, Matrix};
pub use crate::linalg::Signature;
use crate::scalar::{Field, Mode};

/// Relative tolerance for Hermitian symmetry of a float-mode gram.
pub const GRAM_HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Outcome of a decision that may be indeterminate in float mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

/// `c_{p,q} = i^{q-p} (-1)^{(p+q)(p+q+1)/2}`.
pub fn c_constant<F: Field>(p: usize, q: usize) -> F {
    let exponent = (q as i64 - p as i64).rem_euclid(4);
    let mut c = F::one();
    for _ in 0..exponent {
        c = c * F::imag_unit();
    }
    let s = p + q;
    if (s * (s + 1) / 2) % 2 == 1 {
        -c
    } else {
        c
    }
}

pub(crate) fn check_factors<F: Field>(
    n: usize,
    factors: &[HermitianForm<F>],
    p: usize,
    q: usize,
) -> Result<()> {
    if n == 0 || p > n || q > n || p + q > n {
        return Err(Error::Bidegree { n, p, q });
    }
    let expected = n - p - q;
    if factors.len() != expected {
        return Err(Error::FactorCount {
            n,
            p,
            q,
            expected,
            found: factors.len(),
        });
    }
    for f in factors {
        if f.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.n(),
            });
        }
    }
    Ok(())
}

/// Matrix of `φ ↦ multiplier ∧ φ` from `H^{p,q}`, in basis order on both sides.
/// Targets beyond top degree are the zero space (zero rows).
pub fn multiplication_matrix<F: Field>(
    n: usize,
    p: usize,
    q: usize,
    multiplier: &ExteriorClass<F>,
) -> Result<Matrix<F>> {
    let source = basis(n, p, q)?;
    let (mp, mq) = multiplier.bidegree();
    let (tp, tq) = (p + mp, q + mq);
    if tp > n || tq > n {
        return Ok(Matrix::zeros(0, source.len()));
    }
    let columns = source
        .iter()
        .map(|(i, j)| {
            let e = ExteriorClass::basis_element(n, *i, *j)?;
            Ok(multiplier.wedge(&e)?.to_vector())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(hodge_number(n, tp as isize, tq as isize), &columns))
}

/// Multiplication by `Ω` from `H^{p,q}` to `H^{n-q,n-p}`.
#[derive(Debug, Clone)]
pub struct LefschetzOperator<F> {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub factors: Vec<HermitianForm<F>>,
    pub matrix: Matrix<F>,
}

pub fn lefschetz_operator<F: Field>(
    n: usize,
    factors: &[HermitianForm<F>],
    p: usize,
    q: usize,
) -> Result<LefschetzOperator<F>> {
    check_factors(n, factors, p, q)?;
    let omega = ExteriorClass::product_of_forms(n, factors)?;
    let matrix = multiplication_matrix(n, p, q, &omega)?;
    Ok(LefschetzOperator {
        n,
        p,
        q,
        factors: factors.to_vec(),
        matrix,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HlOutcome<F> {
    pub verdict: Verdict,
    /// Nonzero kernel vector of the operator, in `H^{p,q}` basis order.
    pub witness: Option<Vec<F>>,
    /// Float mode only.
    pub smallest_singular: Option<f64>,
}

pub fn hl_check<F: LinearAlgebra>(op: &LefschetzOperator<F>) -> HlOutcome<F> {
    match F::invertibility(&op.matrix) {
        Invertibility::Invertible { smallest_singular } => HlOutcome {
            verdict: Verdict::Holds,
            witness: None,
            smallest_singular,
        },
        Invertibility::Singular {
            witness,
            smallest_singular,
        } => HlOutcome {
            verdict: Verdict::Fails,
            witness: Some(witness),
            smallest_singular,
        },
        Invertibility::Indeterminate {
            witness,
            smallest_singular,
        } => HlOutcome {
            verdict: Verdict::Indeterminate,
            witness: Some(witness),
            smallest_singular: Some(smallest_singular),
        },
    }
}

/// Gram matrix of `Q(φ, ψ) = c_{p,q} ∫ Ω ∧ φ ∧ ψ̄` on the basis of `H^{p,q}`,
/// optionally accompanied by the subspace it is to be restricted to.
#[derive(Debug, Clone)]
pub struct HrGram<F> {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub gram: Matrix<F>,
    pub subspace_basis: Option<Vec<Vec<F>>>,
}

impl<F: Field> HrGram<F> {
    /// `Q(u, v) = Σ u_a G_ab conj(v_b)`.
    pub fn form(&self, u: &[F], v: &[F]) -> F {
        let gv = self
            .gram
            .mul_vec(&v.iter().map(Field::conj).collect::<Vec<_>>());
        u.iter()
            .zip(gv)
            .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b)
    }

    /// The gram restricted to `subspace_basis`, or the full gram when absent.
    pub fn restricted(&self) -> Matrix<F> {
        match &self.subspace_basis {
            Some(b) => restrict_form(&self.gram, b),
            None => self.gram.clone(),
        }
    }
}

pub fn hr_gram<F: Field>(
    n: usize,
    factors: &[HermitianForm<F>],
    p: usize,
    q: usize,
) -> Result<HrGram<F>> {
    check_factors(n, factors, p, q)?;
    let omega = ExteriorClass::product_of_forms(n, factors)?;
    let c = c_constant::<F>(p, q);
    let b = basis(n, p, q)?;
    let elements = b
        .iter()
        .map(|(i, j)| ExteriorClass::basis_element(n, *i, *j))
        .collect::<Result<Vec<_>>>()?;
    let left = elements
        .iter()
        .map(|e| omega.wedge(e))
        .collect::<Result<Vec<_>>>()?;
    let right: Vec<_> = elements.iter().map(ExteriorClass::conjugate).collect();
    let rows = left
        .iter()
        .map(|l| {
            right
                .iter()
                .map(|r| Ok(c.clone() * l.wedge(r)?.integrate()?))
                .collect::<Result<Vec<F>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let gram = Matrix::from_rows(rows)?;
    let scale = gram.max_modulus().max(1.0);
    for r in 0..gram.rows() {
        for col in r..gram.cols() {
            let diff = gram[(r, col)].clone() - gram[(col, r)].conj();
            let ok = match F::MODE {
                Mode::Exact => diff.is_zero(),
                Mode::Float => diff.modulus() <= GRAM_HERMITIAN_TOLERANCE * scale,
            };
            if !ok {
                return Err(Error::NotHermitian { row: r, col });
            }
        }
    }
    Ok(HrGram {
        n,
        p,
        q,
        gram,
        subspace_basis: None,
    })
}

/// `ker(φ ↦ Ω ∧ ω_M ∧ φ : H^{p,q} → H^{n-q+1,n-p+1})`, as coefficient vectors.
pub fn primitive_subspace<F: LinearAlgebra>(
    n: usize,
    factors: &[HermitianForm<F>],
    m: &HermitianForm<F>,
    p: usize,
    q: usize,
) -> Result<Vec<Vec<F>>> {
    check_factors(n, factors, p, q)?;
    if m.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.n(),
        });
    }
    let omega = ExteriorClass::product_of_forms(n, factors)?;
    let omega_m = omega.wedge(&ExteriorClass::from_hermitian(m))?;
    let matrix = multiplication_matrix(n, p, q, &omega_m)?;
    Ok(F::kernel(&matrix)?)
}

#[derive(Debug, Clone)]
pub struct HrOutcome<F> {
    pub primitive_basis: Vec<Vec<F>>,
    pub signature: Option<Signature>,
    pub positive_definite: Verdict,
    /// Smallest eigenvalue of the restricted form over its largest modulus,
    /// computed in double precision.
    pub relative_floor: Option<f64>,
}

impl<F> HrOutcome<F> {
    pub fn primitive_dim(&self) -> usize {
        self.primitive_basis.len()
    }
}

pub fn hr_check<F: LinearAlgebra>(
    n: usize,
    factors: &[HermitianForm<F>],
    m: &HermitianForm<F>,
    p: usize,
    q: usize,
) -> Result<HrOutcome<F>> {
    let mut gram = hr_gram(n, factors, p, q)?;
    let prim = match primitive_subspace(n, factors, m, p, q) {
        Ok(b) => b,
        Err(Error::Indeterminate(_)) => {
            return Ok(HrOutcome {
                primitive_basis: Vec::new(),
                signature: None,
                positive_definite: Verdict::Indeterminate,
                relative_floor: None,
            })
        }
        Err(e) => return Err(e),
    };
    gram.subspace_basis = Some(prim);
    let restricted = gram.restricted();
    let eig = hermitian_eigenvalues(&restricted);
    let max = eig.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let relative_floor = eig
        .iter()
        .cloned()
        .reduce(f64::min)
        .map(|min| if max > 0.0 { min / max } else { 0.0 });
    let (signature, verdict) = match F::hermitian_signature(&restricted) {
        Ok(s) => (Some(s), Verdict::from_bool(s.is_positive_definite())),
        Err(_) => (None, Verdict::Indeterminate),
    };
    Ok(HrOutcome {
        primitive_basis: gram.subspace_basis.take().unwrap_or_default(),
        signature,
        positive_definite: verdict,
        relative_floor,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub ambient_dim: usize,
    pub primitive_dim: usize,
    pub image_dim: usize,
    /// `dim H^{p-1,q-1}`; multiplication by `ω_M` should be injective on it.
    pub expected_image_dim: usize,
    pub dimensions_add_up: bool,
    pub trivial_intersection: bool,
    pub q_orthogonal: bool,
    pub image_injective: bool,
    pub holds: bool,
}

/// Checks `H^{p,q} = prim^{p,q} ⊕ ω_M ∧ H^{p-1,q-1}` as a `Q`-orthogonal sum,
/// with `H^{p-1,q-1} = {0}` when `p = 0` or `q = 0`.
pub fn orthogonal_decomposition_check<F: LinearAlgebra>(
    n: usize,
    factors: &[HermitianForm<F>],
    m: &HermitianForm<F>,
    p: usize,
    q: usize,
) -> Result<DecompositionReport> {
    let gram = hr_gram(n, factors, p, q)?;
    let prim = primitive_subspace(n, factors, m, p, q)?;
    let ambient = hodge_number(n, p as isize, q as isize);
    let image_columns: Vec<Vec<F>> = if p == 0 || q == 0 {
        Vec::new()
    } else {
        let wm = ExteriorClass::from_hermitian(m);
        multiplication_matrix(n, p - 1, q - 1, &wm)
            .map(|mat| (0..mat.cols()).map(|c| mat.column(c)).collect())?
    };
    let expected_image_dim = if p == 0 || q == 0 {
        0
    } else {
        hodge_number(n, p as isize - 1, q as isize - 1)
    };
    let image_dim = F::rank(&Matrix::from_columns(ambient, &image_columns))?;
    let mut joint = prim.clone();
    joint.extend(image_columns.iter().cloned());
    let joint_rank = F::rank(&Matrix::from_columns(ambient, &joint))?;
    let trivial_intersection = joint_rank == prim.len() + image_dim;

    let scale = gram.gram.max_modulus()
        * ambient as f64
        * image_columns
            .iter()
            .flatten()
            .map(Field::modulus)
            .fold(1.0, f64::max);
    let q_orthogonal = prim.iter().all(|u| {
        image_columns
            .iter()
            .all(|v| gram.form(u, v).is_negligible(scale))
    });
    let dimensions_add_up = prim.len() + image_dim == ambient;
    let image_injective = image_dim == expected_image_dim;
    Ok(DecompositionReport {
        ambient_dim: ambient,
        primitive_dim: prim.len(),
        image_dim,
        expected_image_dim,
        dimensions_add_up,
        trivial_intersection,
        q_orthogonal,
        image_injective,
        holds: dimensions_add_up && trivial_intersection && q_orthogonal && image_injective,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanEntry {
    /// Exact value of the perturbation parameter, e.g. `"1/10"`.
    pub t: String,
    pub primitive_dim: Option<usize>,
    pub signature: Option<Signature>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
    /// All `t > 0` entries share one signature.
    pub constant_for_positive_t: bool,
    /// The `t = 0` signature equals the `t > 0` one.
    pub matches_limit: bool,
}

/// Signatures of `Q_t` on `prim_t` for the perturbed data `A_i + tA`, `M + tA`.
/// `t = 0` is appended and computed directly.
pub fn hr_limit_scan<F: LinearAlgebra>(
    n: usize,
    factors: &[HermitianForm<F>],
    m: &HermitianForm<F>,
    perturbation: &HermitianForm<F>,
    p: usize,
    q: usize,
    t_values: &[BigRational],
) -> Result<ScanReport> {
    check_factors(n, factors, p, q)?;
    if perturbation.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: perturbation.n(),
        });
    }
    let sig = F::hermitian_signature(perturbation.matrix())?;
    if sig != Signature::new(n, 0, 0) {
        return Err(Error::NotPositiveDefinite);
    }
    if t_values.iter().any(|t| !t.is_positive()) {
        return Err(Error::InvalidArgument(
            "perturbation parameters must be positive".into(),
        ));
    }
    if t_values.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidArgument(
            "perturbation parameters must be strictly descending".into(),
        ));
    }
    let mut ts: Vec<BigRational> = t_values.to_vec();
    ts.push(BigRational::from_integer(0.into()));

    let entries = ts
        .par_iter()
        .map(|t| -> Result<ScanEntry> {
            let shift = perturbation.scale_real(&F::from_ratio(t));
            let perturbed = factors
                .iter()
                .map(|f| f.add(&shift))
                .collect::<Result<Vec<_>>>()?;
            let mt = m.add(&shift)?;
            let out = hr_check(n, &perturbed, &mt, p, q)?;
            let determined = out.positive_definite != Verdict::Indeterminate;
            Ok(ScanEntry {
                t: t.to_string(),
                primitive_dim: determined.then(|| out.primitive_dim()),
                signature: out.signature,
                verdict: out.positive_definite,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let (positive, limit) = entries.split_at(entries.len() - 1);
    let first = positive.first().and_then(|e| e.signature);
    let constant_for_positive_t = positive
        .iter()
        .all(|e| e.signature.is_some() && e.signature == first);
    let matches_limit = limit[0].signature.is_some()
        && match first {
            Some(s) => limit[0].signature == Some(s) && constant_for_positive_t,
            None => positive.is_empty(),
        };
    Ok(ScanReport {
        entries,
        constant_for_positive_t,
        matches_limit,
    })
}
