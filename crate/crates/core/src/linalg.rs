//! Dense matrices over a [`Field`] and the two linear-algebra backends.
//!
//! Exact mode uses Gaussian elimination over the Gaussian rationals and Hermitian congruence diagonalization for
//! signatures. Float mode delegates SVD and Hermitian eigenvalues to
//! `nalgebra` and applies the relative cutoff policy below.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Complex64, Field, GaussianRational};

/// Relative singular-value / eigenvalue cutoff in float mode.
pub const FLOAT_CUTOFF: f64 = 1e-9;
/// Float verdicts within this factor of [`FLOAT_CUTOFF`] are indeterminate.
pub const INDETERMINATE_BAND: f64 = 10.0;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for r in 0..self.rows {
            list.entry(&&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        list.finish()
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;

    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a `rows x columns.len()` matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)].conj())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let v = out[(r, c)].clone() + a.clone() * b.clone();
                        out[(r, c)] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() + other[(r, c)].clone()
        }))
    }

    pub fn scale(&self, k: &F) -> Matrix<F> {
        Self::from_fn(self.rows, self.cols, |r, c| k.clone() * self[(r, c)].clone())
    }

    /// Largest entry modulus; the reference scale for float tolerances.
    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(Field::modulus).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_violation().is_none()
    }

    /// First `(row, col)` where `m[r][c] != conj(m[c][r])` within mode tolerance.
    pub fn hermitian_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        let scale = self.max_modulus();
        for r in 0..self.rows {
            for c in r..self.cols {
                if !self[(r, c)].hermitian_eq(&self[(c, r)].conj(), scale) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }
}

/// Inertia of a Hermitian form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Signature {
    pub fn new(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        Signature {
            n_plus,
            n_minus,
            n_zero,
        }
    }

    pub fn dimension(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn is_positive_definite(&self) -> bool {
        self.n_minus == 0 && self.n_zero == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_minus, self.n_zero)
    }
}

/// A float-mode quantity fell inside the indeterminate band around the cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Indeterminate {
    pub relative_value: f64,
}

impl From<Indeterminate> for Error {
    fn from(e: Indeterminate) -> Self {
        Error::Indeterminate(format!(
            "relative magnitude {:.3e} lies within a factor {} of the cutoff {:e}",
            e.relative_value, INDETERMINATE_BAND, FLOAT_CUTOFF
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Invertibility<F> {
    Invertible {
        smallest_singular: Option<f64>,
    },
    Singular {
        witness: Vec<F>,
        smallest_singular: Option<f64>,
    },
    Indeterminate {
        witness: Vec<F>,
        smallest_singular: f64,
    },
}

/// Mode-specific rank, kernel, signature and invertibility decisions.
pub trait LinearAlgebra: Field {
    fn rank(m: &Matrix<Self>) -> Result<usize, Indeterminate>;
    /// A basis of `{v : m v = 0}`.
    fn kernel(m: &Matrix<Self>) -> Result<Vec<Vec<Self>>, Indeterminate>;
    fn hermitian_signature(m: &Matrix<Self>) -> Result<Signature, Indeterminate>;
    fn invertibility(m: &Matrix<Self>) -> Invertibility<Self>;
}

impl LinearAlgebra for GaussianRational {
    fn rank(m: &Matrix<Self>) -> Result<usize, Indeterminate> {
        Ok(row_reduce(m).1.len())
    }

    fn kernel(m: &Matrix<Self>) -> Result<Vec<Vec<Self>>, Indeterminate> {
        Ok(exact_kernel(m))
    }

    fn hermitian_signature(m: &Matrix<Self>) -> Result<Signature, Indeterminate> {
        Ok(congruence_signature(m))
    }

    fn invertibility(m: &Matrix<Self>) -> Invertibility<Self> {
        match exact_kernel(m).into_iter().next() {
            Some(witness) => Invertibility::Singular {
                witness,
                smallest_singular: None,
            },
            None if m.is_square() => Invertibility::Invertible {
                smallest_singular: None,
            },
            None => Invertibility::Singular {
                witness: Vec::new(),
                smallest_singular: None,
            },
        }
    }
}

impl LinearAlgebra for Complex64 {
    fn rank(m: &Matrix<Self>) -> Result<usize, Indeterminate> {
        let sv = singular_values(m);
        let max = sv.iter().cloned().fold(0.0, f64::max);
        if max == 0.0 {
            return Ok(0);
        }
        let mut rank = 0;
        for s in sv {
            match classify(s / max) {
                Class::Zero => {}
                Class::NonZero => rank += 1,
                Class::Indeterminate(r) => return Err(Indeterminate { relative_value: r }),
            }
        }
        Ok(rank)
    }

    fn kernel(m: &Matrix<Self>) -> Result<Vec<Vec<Self>>, Indeterminate> {
        let (sv, v_cols) = padded_svd(m);
        let max = sv.iter().cloned().fold(0.0, f64::max);
        let mut out = Vec::new();
        for (s, v) in sv.into_iter().zip(v_cols) {
            let class = if max == 0.0 { Class::Zero } else { classify(s / max) };
            match class {
                Class::Zero => out.push(v),
                Class::NonZero => {}
                Class::Indeterminate(r) => return Err(Indeterminate { relative_value: r }),
            }
        }
        Ok(out)
    }

    fn hermitian_signature(m: &Matrix<Self>) -> Result<Signature, Indeterminate> {
        let eig = hermitian_eigenvalues(m);
        let max = eig.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let mut sig = Signature::new(0, 0, 0);
        for l in eig {
            let class = if max == 0.0 { Class::Zero } else { classify(l.abs() / max) };
            match class {
                Class::Zero => sig.n_zero += 1,
                Class::NonZero if l > 0.0 => sig.n_plus += 1,
                Class::NonZero => sig.n_minus += 1,
                Class::Indeterminate(r) => return Err(Indeterminate { relative_value: r }),
            }
        }
        Ok(sig)
    }

    fn invertibility(m: &Matrix<Self>) -> Invertibility<Self> {
        let (sv, v_cols) = padded_svd(m);
        let max = sv.iter().cloned().fold(0.0, f64::max);
        let Some((idx, &min)) = sv
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(Ordering::Equal))
        else {
            return Invertibility::Invertible {
                smallest_singular: None,
            };
        };
        let witness = v_cols[idx].clone();
        if !m.is_square() {
            return Invertibility::Singular {
                witness,
                smallest_singular: Some(min),
            };
        }
        let class = if max == 0.0 { Class::Zero } else { classify(min / max) };
        match class {
            Class::NonZero => Invertibility::Invertible {
                smallest_singular: Some(min),
            },
            Class::Zero => Invertibility::Singular {
                witness,
                smallest_singular: Some(min),
            },
            Class::Indeterminate(_) => Invertibility::Indeterminate {
                witness,
                smallest_singular: min,
            },
        }
    }
}

enum Class {
    Zero,
    NonZero,
    Indeterminate(f64),
}

fn classify(relative: f64) -> Class {
    if relative < FLOAT_CUTOFF / INDETERMINATE_BAND {
        Class::Zero
    } else if relative > FLOAT_CUTOFF * INDETERMINATE_BAND {
        Class::NonZero
    } else {
        Class::Indeterminate(relative)
    }
}

fn to_nalgebra<F: Field>(m: &Matrix<F>, rows: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, m.cols(), |r, c| {
        if r < m.rows() {
            Complex64::new(m[(r, c)].re_f64(), m[(r, c)].im_f64())
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn singular_values<F: Field>(m: &Matrix<F>) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let a = to_nalgebra(m, m.rows());
    a.svd(false, false).singular_values.iter().cloned().collect()
}

/// Singular values paired with right singular vectors, one per column.
/// Short matrices are padded with zero rows so every column gets a vector.
fn padded_svd(m: &Matrix<Complex64>) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let cols = m.cols();
    if cols == 0 {
        return (Vec::new(), Vec::new());
    }
    if m.rows() == 0 {
        let vectors = (0..cols)
            .map(|j| (0..cols).map(|i| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        return (vec![0.0; cols], vectors);
    }
    let a = to_nalgebra(m, m.rows().max(cols));
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^*");
    let values: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let vectors = (0..values.len())
        .map(|k| (0..cols).map(|j| v_t[(k, j)].conj()).collect())
        .collect();
    (values, vectors)
}

/// Eigenvalues of the Hermitian part of `m`, computed in double precision.
pub fn hermitian_eigenvalues<F: Field>(m: &Matrix<F>) -> Vec<f64> {
    if m.rows() == 0 {
        return Vec::new();
    }
    let a = to_nalgebra(m, m.rows());
    let h = (&a + a.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues().iter().cloned().collect()
}

/// Reduced row echelon form with pivot columns; pivots are the first exact nonzero.
pub fn row_reduce<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        swap_rows(&mut a, row, p);
        let inv = a[(row, col)].inv().expect("nonzero pivot");
        for c in col..a.cols() {
            a[(row, c)] = inv.clone() * a[(row, c)].clone();
        }
        for r in 0..a.rows() {
            if r == row || a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone();
            for c in col..a.cols() {
                if !a[(row, c)].is_zero() {
                    a[(r, c)] = a[(r, c)].clone() - factor.clone() * a[(row, c)].clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

fn swap_rows<F: Field>(a: &mut Matrix<F>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols() {
        a.data.swap(i * a.cols + c, j * a.cols + c);
    }
}

fn exact_kernel<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let (rref, pivots) = row_reduce(m);
    let mut is_pivot = vec![None; m.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..m.cols())
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![F::zero(); m.cols()];
            v[free] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref[(r, free)].clone();
            }
            v
        })
        .collect()
}

/// Determinant by elimination; pivots chosen by largest modulus.
pub fn determinant<F: Field>(m: &Matrix<F>) -> Result<F> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut det = F::one();
    for col in 0..n {
        let p = (col..n)
            .filter(|&r| !a[(r, col)].is_zero())
            .max_by(|&x, &y| {
                a[(x, col)]
                    .modulus()
                    .partial_cmp(&a[(y, col)].modulus())
                    .unwrap_or(Ordering::Equal)
            });
        let Some(p) = p else {
            return Ok(F::zero());
        };
        if p != col {
            swap_rows(&mut a, col, p);
            det = -det;
        }
        let pivot = a[(col, col)].clone();
        det = det * pivot.clone();
        let inv = pivot.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone() * inv.clone();
            for c in col..n {
                a[(r, c)] = a[(r, c)].clone() - factor.clone() * a[(col, c)].clone();
            }
        }
    }
    Ok(det)
}

/// Inertia by Hermitian congruence `H -> P H P^*` with exact zero tests.
///
/// When every remaining diagonal entry vanishes but some off-diagonal entry
/// `h[j][l]` does not, row/column `j` is replaced by `j + c*l` with `c` in
/// `{1, i}`, which makes the new diagonal `2 Re(c h[l][j])` nonzero.
pub fn congruence_signature<F: Field>(m: &Matrix<F>) -> Signature {
    let n = m.rows();
    let mut h = m.clone();
    let mut sig = Signature::new(0, 0, 0);
    for k in 0..n {
        let diag = (k..n).find(|&j| !h[(j, j)].is_zero());
        let pivot = match diag {
            Some(j) => j,
            None => {
                let off = (k..n)
                    .flat_map(|j| (k..n).map(move |l| (j, l)))
                    .find(|&(j, l)| j != l && !h[(j, l)].is_zero());
                let Some((j, l)) = off else {
                    sig.n_zero += n - k;
                    return sig;
                };
                let hlj = h[(l, j)].clone();
                let c = if hlj.re_sign(1.0) != Ordering::Equal {
                    F::one()
                } else {
                    F::imag_unit()
                };
                add_congruent(&mut h, j, l, &c);
                j
            }
        };
        swap_symmetric(&mut h, k, pivot);
        let d = h[(k, k)].clone();
        let inv = d.inv().expect("nonzero pivot");
        for r in k + 1..n {
            if h[(r, k)].is_zero() {
                continue;
            }
            let f = h[(r, k)].clone() * inv.clone();
            add_congruent(&mut h, r, k, &(-f));
        }
        match d.re_sign(1.0) {
            Ordering::Greater => sig.n_plus += 1,
            Ordering::Less => sig.n_minus += 1,
            Ordering::Equal => sig.n_zero += 1,
        }
    }
    sig
}

/// `row_j += c * row_l` followed by `col_j += conj(c) * col_l`.
fn add_congruent<F: Field>(h: &mut Matrix<F>, j: usize, l: usize, c: &F) {
    let n = h.rows();
    for col in 0..n {
        let v = h[(j, col)].clone() + c.clone() * h[(l, col)].clone();
        h[(j, col)] = v;
    }
    let cc = c.conj();
    for row in 0..n {
        let v = h[(row, j)].clone() + cc.clone() * h[(row, l)].clone();
        h[(row, j)] = v;
    }
}

fn swap_symmetric<F: Field>(h: &mut Matrix<F>, i: usize, j: usize) {
    if i == j {
        return;
    }
    swap_rows(h, i, j);
    for r in 0..h.rows() {
        h.data.swap(r * h.cols + i, r * h.cols + j);
    }
}

/// Gram matrix `G'[i][j] = sum_ab u_i[a] G[a][b] conj(u_j[b])` of a form on a subspace.
pub fn restrict_form<F: Field>(gram: &Matrix<F>, basis: &[Vec<F>]) -> Matrix<F> {
    let k = basis.len();
    let conj_vectors: Vec<Vec<F>> = basis
        .iter()
        .map(|v| v.iter().map(Field::conj).collect())
        .collect();
    let g_conj: Vec<Vec<F>> = conj_vectors.iter().map(|v| gram.mul_vec(v)).collect();
    Matrix::from_fn(k, k, |i, j| {
        basis[i]
            .iter()
            .zip(&g_conj[j])
            .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    })
}
