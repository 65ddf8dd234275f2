//! Constant-coefficient forms on an `n`-dimensional complex torus.
//!
//! `H^{p,q}` is spanned by `dz_I ∧ dz̄_J` with `|I| = p`, `|J| = q`; a basis
//! element is stored with every holomorphic factor to the left of every
//! antiholomorphic one, both in increasing order. Classes are sparse maps from
//! `(I, J)` to coefficients with absent keys meaning zero.
//!
//! Integration is normalized so that `∫ ∧_k (i dz_k ∧ dz̄_k) = 1`. With this
//! choice `∫ ω_{A_1} ∧ … ∧ ω_{A_n} = n! D(A_1, …, A_n)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Largest supported torus dimension (indices are stored as a bitmask).
pub const MAX_DIMENSION: usize = 31;

/// A strictly increasing subset of `{1, …, n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u32);

impl MultiIndex {
    /// From 1-based elements, which must be strictly increasing and lie in `[1, n]`.
    pub fn new(elements: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u32;
        let mut last = 0;
        for &e in elements {
            if e == 0 || e > n || e <= last || e > MAX_DIMENSION {
                return Err(Error::InvalidArgument(format!(
                    "multi-index {elements:?} must be strictly increasing within [1, {n}]"
                )));
            }
            bits |= 1 << (e - 1);
            last = e;
        }
        Ok(MultiIndex(bits))
    }

    pub fn empty() -> Self {
        MultiIndex(0)
    }

    /// `{k}` for 1-based `k`.
    pub fn singleton(k: usize) -> Self {
        debug_assert!(k >= 1 && k <= MAX_DIMENSION);
        MultiIndex(1 << (k - 1))
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        MultiIndex(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, k: usize) -> bool {
        k >= 1 && self.0 & (1 << (k - 1)) != 0
    }

    pub fn is_disjoint(&self, other: &MultiIndex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }

    /// 1-based elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(move |b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Whether sorting the concatenation `self ++ other` is an odd permutation.
    pub fn shuffle_is_odd(&self, other: &MultiIndex) -> bool {
        let inversions: u32 = other
            .iter()
            .map(|b| (self.0 >> b).count_ones())
            .sum();
        inversions % 2 == 1
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// All `k`-subsets of `{1, …, n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<MultiIndex> {
    (1..=n)
        .combinations(k)
        .map(|c| MultiIndex::new(&c, n).expect("combinations are increasing"))
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Lexicographically ordered basis `(I, J)` of `H^{p,q}`.
pub fn basis(n: usize, p: usize, q: usize) -> Result<Vec<(MultiIndex, MultiIndex)>> {
    if n == 0 || n > MAX_DIMENSION || p > n || q > n {
        return Err(Error::Bidegree { n, p, q });
    }
    let holo = subsets(n, p);
    let anti = subsets(n, q);
    Ok(holo
        .iter()
        .flat_map(|i| anti.iter().map(move |j| (*i, *j)))
        .collect())
}

/// Dimension of `H^{p,q}`; zero outside `0 <= p, q <= n`.
pub fn hodge_number(n: usize, p: isize, q: isize) -> usize {
    if p < 0 || q < 0 {
        return 0;
    }
    binomial(n, p as usize) * binomial(n, q as usize)
}

/// A constant Hermitian matrix `A`, standing for the real (1,1) class
/// `ω_A = i Σ A_jk dz_j ∧ dz̄_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm<F> {
    matrix: Matrix<F>,
}

impl<F: Field> HermitianForm<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        if matrix.rows() == 0 || matrix.rows() > MAX_DIMENSION {
            return Err(Error::InvalidArgument(format!(
                "form dimension {} outside [1, {MAX_DIMENSION}]",
                matrix.rows()
            )));
        }
        if let Some((row, col)) = matrix.hermitian_violation() {
            return Err(Error::NotHermitian { row, col });
        }
        Ok(HermitianForm { matrix })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        HermitianForm {
            matrix: Matrix::identity(n),
        }
    }

    pub fn zero(n: usize) -> Self {
        HermitianForm {
            matrix: Matrix::zeros(n, n),
        }
    }

    /// Diagonal form with integer entries.
    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        HermitianForm {
            matrix: Matrix::from_fn(n, n, |r, c| {
                if r == c {
                    F::from_int(entries[r])
                } else {
                    F::zero()
                }
            }),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn add(&self, other: &HermitianForm<F>) -> Result<HermitianForm<F>> {
        Ok(HermitianForm {
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    /// Scaling by a real factor keeps the form Hermitian.
    pub fn scale_real(&self, factor: &F) -> HermitianForm<F> {
        HermitianForm {
            matrix: self.matrix.scale(factor),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> HermitianForm<G> {
        HermitianForm {
            matrix: self.matrix.map(f),
        }
    }
}

/// Sum of a list of forms of equal dimension.
pub fn sum_forms<F: Field>(n: usize, forms: &[&HermitianForm<F>]) -> Result<HermitianForm<F>> {
    forms
        .iter()
        .try_fold(HermitianForm::zero(n), |acc, f| acc.add(f))
}

/// A `(p,q)` class with sparse coefficients over `dz_I ∧ dz̄_J`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExteriorClass<F> {
    n: usize,
    p: usize,
    q: usize,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), F>,
}

impl<F: Field> ExteriorClass<F> {
    pub fn zero(n: usize, p: usize, q: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIMENSION || p > n || q > n {
            return Err(Error::Bidegree { n, p, q });
        }
        Ok(ExteriorClass {
            n,
            p,
            q,
            coeffs: BTreeMap::new(),
        })
    }

    /// The unit class `1` in `H^{0,0}`.
    pub fn one(n: usize) -> Result<Self> {
        let mut c = Self::zero(n, 0, 0)?;
        c.coeffs
            .insert((MultiIndex::empty(), MultiIndex::empty()), F::one());
        Ok(c)
    }

    /// Builds a class from `(I, J, coefficient)` triples; repeated keys add up.
    pub fn from_terms(
        n: usize,
        p: usize,
        q: usize,
        terms: impl IntoIterator<Item = (MultiIndex, MultiIndex, F)>,
    ) -> Result<Self> {
        let mut c = Self::zero(n, p, q)?;
        for (i, j, v) in terms {
            if i.len() != p || j.len() != q || i.iter().chain(j.iter()).any(|k| k > n) {
                return Err(Error::InvalidArgument(format!(
                    "term ({i}, {j}) does not belong to H^{{{p},{q}}} in dimension {n}"
                )));
            }
            c.accumulate(i, j, v);
        }
        Ok(c)
    }

    pub fn basis_element(n: usize, i: MultiIndex, j: MultiIndex) -> Result<Self> {
        Self::from_terms(n, i.len(), j.len(), [(i, j, F::one())])
    }

    /// Coefficients listed in [`basis`] order.
    pub fn from_vector(n: usize, p: usize, q: usize, values: &[F]) -> Result<Self> {
        let b = basis(n, p, q)?;
        if b.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: b.len(),
                found: values.len(),
            });
        }
        Self::from_terms(
            n,
            p,
            q,
            b.into_iter().zip(values).map(|((i, j), v)| (i, j, v.clone())),
        )
    }

    /// `ω_A = i Σ A_jk dz_j ∧ dz̄_k`.
    pub fn from_hermitian(form: &HermitianForm<F>) -> Self {
        let n = form.n();
        let i = F::imag_unit();
        let terms = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| {
            (
                MultiIndex::singleton(r + 1),
                MultiIndex::singleton(c + 1),
                i.clone() * form.matrix()[(r, c)].clone(),
            )
        });
        Self::from_terms(n, 1, 1, terms).expect("(1,1) terms")
    }

    /// `ω_{A_1} ∧ … ∧ ω_{A_k}`, or `1` for an empty list.
    pub fn product_of_forms(n: usize, forms: &[HermitianForm<F>]) -> Result<Self> {
        forms.iter().try_fold(Self::one(n)?, |acc, f| {
            if f.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: f.n(),
                });
            }
            acc.wedge(&Self::from_hermitian(f))
        })
    }

    fn accumulate(&mut self, i: MultiIndex, j: MultiIndex, v: F) {
        if v.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&(i, j)) {
            Some(existing) => {
                let sum = existing.clone() + v;
                if sum.is_zero() {
                    self.coeffs.remove(&(i, j));
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.coeffs.insert((i, j), v);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn degree(&self) -> usize {
        self.p + self.q
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: MultiIndex, j: MultiIndex) -> F {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &F)> {
        self.coeffs.iter()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients in [`basis`] order.
    pub fn to_vector(&self) -> Vec<F> {
        basis(self.n, self.p, self.q)
            .expect("valid bidegree")
            .into_iter()
            .map(|(i, j)| self.coeff(i, j))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.bidegree() != other.bidegree() {
            return Err(Error::InvalidArgument(format!(
                "cannot add H^{{{},{}}} (n={}) and H^{{{},{}}} (n={})",
                self.p, self.q, self.n, other.p, other.q, other.n
            )));
        }
        let mut out = self.clone();
        for ((i, j), v) in &other.coeffs {
            out.accumulate(*i, *j, v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &F) -> Self {
        let mut out = Self {
            n: self.n,
            p: self.p,
            q: self.q,
            coeffs: BTreeMap::new(),
        };
        for ((i, j), v) in &self.coeffs {
            out.accumulate(*i, *j, k.clone() * v.clone());
        }
        out
    }

    /// Wedge product of constant forms.
    ///
    /// `(dz_I ∧ dz̄_J) ∧ (dz_K ∧ dz̄_L) = (−1)^{|J||K|} ε(I,K) ε(J,L) dz_{I∪K} ∧ dz̄_{J∪L}`,
    /// vanishing when `I ∩ K` or `J ∩ L` is nonempty. A product whose bidegree
    /// exceeds `n` in either slot is the zero class of clipped bidegree.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let (p, q) = (self.p + other.p, self.q + other.q);
        let mut out = Self {
            n,
            p: p.min(n),
            q: q.min(n),
            coeffs: BTreeMap::new(),
        };
        if p > n || q > n {
            return Ok(out);
        }
        for ((i, j), a) in &self.coeffs {
            for ((k, l), b) in &other.coeffs {
                if !i.is_disjoint(k) || !j.is_disjoint(l) {
                    continue;
                }
                let odd = (j.len() * k.len()) % 2 == 1;
                let odd = odd ^ i.shuffle_is_odd(k) ^ j.shuffle_is_odd(l);
                let term = a.clone() * b.clone();
                out.accumulate(i.union(k), j.union(l), if odd { -term } else { term });
            }
        }
        Ok(out)
    }

    /// Complex conjugation: `c dz_I ∧ dz̄_J ↦ conj(c) (−1)^{pq} dz_J ∧ dz̄_I`.
    pub fn conjugate(&self) -> Self {
        let odd = (self.p * self.q) % 2 == 1;
        let mut out = Self {
            n: self.n,
            p: self.q,
            q: self.p,
            coeffs: BTreeMap::new(),
        };
        for ((i, j), v) in &self.coeffs {
            let c = v.conj();
            out.coeffs.insert((*j, *i), if odd { -c } else { c });
        }
        out
    }

    /// `∫ c dz_[n] ∧ dz̄_[n] = c · i^{−n} · (−1)^{n(n−1)/2}`.
    pub fn integrate(&self) -> Result<F> {
        let n = self.n;
        if self.p != n || self.q != n {
            return Err(Error::NotTopDegree {
                n,
                p: self.p,
                q: self.q,
            });
        }
        let top = MultiIndex::full(n);
        let c = self.coeff(top, top);
        // i^{-n} = i^{(4 - n mod 4) mod 4}
        let mut unit = F::one();
        for _ in 0..(4 - n % 4) % 4 {
            unit = unit * F::imag_unit();
        }
        let value = c * unit;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -value } else { value })
    }
}

impl<F: Field> fmt::Display for ExteriorClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 in H^{{{},{}}}", self.p, self.q);
        }
        let terms = self
            .coeffs
            .iter()
            .map(|((i, j), v)| format!("({}) dz{} dzbar{}", v.to_scalar(), i, j));
        write!(f, "{}", terms.format(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gaussian, GaussianRational};

    type Q = GaussianRational;

    fn mi(e: &[usize], n: usize) -> MultiIndex {
        MultiIndex::new(e, n).unwrap()
    }

    fn form(rows: &[&[(i64, i64)]]) -> HermitianForm<Q> {
        HermitianForm::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| gaussian(a, b)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn basis_examples() {
        let b = basis(2, 1, 1).unwrap();
        let expected = vec![
            (mi(&[1], 2), mi(&[1], 2)),
            (mi(&[1], 2), mi(&[2], 2)),
            (mi(&[2], 2), mi(&[1], 2)),
            (mi(&[2], 2), mi(&[2], 2)),
        ];
        assert_eq!(b, expected);
        assert_eq!(basis(3, 0, 0).unwrap(), vec![(MultiIndex::empty(), MultiIndex::empty())]);
        assert_eq!(basis(4, 2, 1).unwrap().len(), 24);
        assert!(matches!(basis(2, 3, 0), Err(Error::Bidegree { .. })));
    }

    #[test]
    fn basis_is_sorted_lexicographically() {
        let b = basis(4, 2, 2).unwrap();
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        let s = subsets(5, 3);
        assert_eq!(s.len(), 10);
        assert_eq!(s[0].to_vec(), vec![1, 2, 3]);
        assert_eq!(s[9].to_vec(), vec![3, 4, 5]);
    }

    #[test]
    fn multi_index_rejects_bad_input() {
        assert!(MultiIndex::new(&[2, 1], 3).is_err());
        assert!(MultiIndex::new(&[1, 1], 3).is_err());
        assert!(MultiIndex::new(&[4], 3).is_err());
        assert!(MultiIndex::new(&[0], 3).is_err());
    }

    #[test]
    fn from_hermitian_examples() {
        let w = ExteriorClass::from_hermitian(&HermitianForm::<Q>::identity(2));
        assert_eq!(w.nnz(), 2);
        assert_eq!(w.coeff(mi(&[1], 2), mi(&[1], 2)), gaussian(0, 1));
        assert_eq!(w.coeff(mi(&[2], 2), mi(&[2], 2)), gaussian(0, 1));

        let w = ExteriorClass::from_hermitian(&form(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]));
        assert_eq!(w.nnz(), 2);
        assert_eq!(w.coeff(mi(&[1], 2), mi(&[2], 2)), gaussian(0, 1));
        assert_eq!(w.coeff(mi(&[2], 2), mi(&[1], 2)), gaussian(0, 1));

        let w = ExteriorClass::from_hermitian(&form(&[&[(0, 0), (0, 1)], &[(0, -1), (0, 0)]]));
        assert_eq!(w.coeff(mi(&[1], 2), mi(&[2], 2)), gaussian(-1, 0));
        assert_eq!(w.coeff(mi(&[2], 2), mi(&[1], 2)), gaussian(1, 0));
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = Matrix::from_rows(vec![
            vec![gaussian(1, 0), gaussian(2, 0)],
            vec![gaussian(3, 0), gaussian(1, 0)],
        ])
        .unwrap();
        assert!(matches!(HermitianForm::new(m), Err(Error::NotHermitian { .. })));
        let m = Matrix::from_rows(vec![vec![gaussian(0, 1)]]).unwrap();
        assert!(HermitianForm::new(m).is_err());
    }

    #[test]
    fn wedge_sign_examples() {
        let n = 2;
        let dz1 = ExteriorClass::<Q>::basis_element(n, mi(&[1], n), MultiIndex::empty()).unwrap();
        let dz2 = ExteriorClass::<Q>::basis_element(n, mi(&[2], n), MultiIndex::empty()).unwrap();
        let p = dz1.wedge(&dz2).unwrap();
        assert_eq!(p.coeff(mi(&[1, 2], n), MultiIndex::empty()), gaussian(1, 0));
        let p = dz2.wedge(&dz1).unwrap();
        assert_eq!(p.coeff(mi(&[1, 2], n), MultiIndex::empty()), gaussian(-1, 0));

        let dzbar1 = ExteriorClass::<Q>::basis_element(n, MultiIndex::empty(), mi(&[1], n)).unwrap();
        let p = dzbar1.wedge(&dz1).unwrap();
        assert_eq!(p.bidegree(), (1, 1));
        assert_eq!(p.coeff(mi(&[1], n), mi(&[1], n)), gaussian(-1, 0));
    }

    #[test]
    fn square_of_identity_form_in_dimension_two() {
        // (i dz1 dzbar1 + i dz2 dzbar2)^2: two cross terms, each i*i*(-1) = 1.
        let w = ExteriorClass::from_hermitian(&HermitianForm::<Q>::identity(2));
        let sq = w.wedge(&w).unwrap();
        assert_eq!(sq.nnz(), 1);
        assert_eq!(sq.coeff(mi(&[1, 2], 2), mi(&[1, 2], 2)), gaussian(2, 0));
        assert_eq!(sq.integrate().unwrap(), gaussian(2, 0));
    }

    #[test]
    fn over_degree_wedge_is_clipped_zero() {
        let w = ExteriorClass::from_hermitian(&HermitianForm::<Q>::identity(2));
        let cube = w.wedge(&w).unwrap().wedge(&w).unwrap();
        assert!(cube.is_zero());
        assert_eq!(cube.bidegree(), (2, 2));
    }

    #[test]
    fn conjugation_examples() {
        let a = form(&[&[(2, 0), (1, 3)], &[(1, -3), (5, 0)]]);
        let w = ExteriorClass::from_hermitian(&a);
        assert_eq!(w.conjugate(), w);

        let n = 3;
        let x = ExteriorClass::<Q>::from_terms(n, 2, 0, [(mi(&[1, 3], n), MultiIndex::empty(), gaussian(2, 1))]).unwrap();
        let c = x.conjugate();
        assert_eq!(c.bidegree(), (0, 2));
        assert_eq!(c.coeff(MultiIndex::empty(), mi(&[1, 3], n)), gaussian(2, -1));
        assert_eq!(c.conjugate(), x);
    }

    #[test]
    fn integration_examples() {
        let w1 = ExteriorClass::from_hermitian(&HermitianForm::<Q>::identity(1));
        assert_eq!(w1.integrate().unwrap(), gaussian(1, 0));

        let a = ExteriorClass::from_hermitian(&HermitianForm::<Q>::diagonal(&[1, 0]));
        let b = ExteriorClass::from_hermitian(&HermitianForm::<Q>::diagonal(&[0, 1]));
        assert_eq!(a.wedge(&b).unwrap().integrate().unwrap(), gaussian(1, 0));

        let err = w1.conjugate().wedge(&ExteriorClass::one(1).unwrap()).unwrap();
        assert!(err.integrate().is_ok());
        assert!(matches!(
            ExteriorClass::<Q>::one(2).unwrap().integrate(),
            Err(Error::NotTopDegree { .. })
        ));
    }

    #[test]
    fn volume_form_integrates_to_one() {
        for n in 1..=5 {
            let forms: Vec<HermitianForm<Q>> = (0..n)
                .map(|k| {
                    let mut d = vec![0; n];
                    d[k] = 1;
                    HermitianForm::diagonal(&d)
                })
                .collect();
            let vol = ExteriorClass::product_of_forms(n, &forms).unwrap();
            assert_eq!(vol.integrate().unwrap(), gaussian(1, 0), "n = {n}");
        }
    }

    #[test]
    fn vector_round_trip() {
        let v: Vec<Q> = (0..9).map(|k| gaussian(k, 1 - k)).collect();
        let x = ExteriorClass::from_vector(3, 1, 1, &v).unwrap();
        assert_eq!(x.to_vector(), v);
        assert!(ExteriorClass::from_vector(3, 1, 1, &v[..8]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(hodge_number(3, 1, 1), 9);
        assert_eq!(hodge_number(3, -1, 0), 0);
    }
}
