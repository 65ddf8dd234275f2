//! Independent oracles and helpers shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use itertools::Itertools;
use kahler::cli::InstanceFile;
use kahler::exterior::HermitianForm;
use kahler::scalar::GaussianRational;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = GaussianRational;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub fn load(name: &str) -> InstanceFile {
    let path = fixture(&format!("instances/{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    InstanceFile::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn load_exact(name: &str) -> kahler::cli::instance::TypedInstance<Q> {
    load(name).typed::<Q>().expect("exact fixture")
}

pub fn q(re: i64, im: i64) -> Q {
    Complex::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
}

pub fn to_rows(f: &HermitianForm<Q>) -> Vec<Vec<Q>> {
    f.matrix().to_rows()
}

/// Cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 0 {
        return Q::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = Q::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Q>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][c].clone() * laplace_det(&minor);
        if c % 2 == 0 {
            total = total + term;
        } else {
            total = total - term;
        }
    }
    total
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `(1/n!) Σ_σ det[col_1(A_σ1) | … | col_n(A_σn)]`: the column-mixing definition.
pub fn mixed_discriminant_oracle(forms: &[Vec<Vec<Q>>]) -> Q {
    let n = forms.len();
    let mut total = Q::zero();
    for perm in (0..n).permutations(n) {
        let m: Vec<Vec<Q>> = (0..n)
            .map(|r| (0..n).map(|c| forms[perm[c]][r][c].clone()).collect())
            .collect();
        total = total + laplace_det(&m);
    }
    let inv = BigRational::new(1.into(), factorial(n).into());
    total * Complex::new(inv, BigRational::zero())
}

/// `n! · D(A_1, …, A_n)`, the oracle value of `∫ ω_{A_1} ∧ … ∧ ω_{A_n}`.
pub fn volume_oracle(forms: &[Vec<Vec<Q>>]) -> Q {
    let n = forms.len();
    mixed_discriminant_oracle(forms) * q(factorial(n), 0)
}

/// Rank by fraction-free elimination over a copy; independent of the library's RREF.
pub fn rank_oracle(m: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone() / a[rank][c].clone();
            for k in c..cols {
                let v = a[rank][k].clone() * f.clone();
                a[r][k] = a[r][k].clone() - v;
            }
        }
        rank += 1;
    }
    rank
}

pub fn sum_rows(forms: &[&Vec<Vec<Q>>], n: usize) -> Vec<Vec<Q>> {
    let mut out = vec![vec![Q::zero(); n]; n];
    for f in forms {
        for r in 0..n {
            for c in 0..n {
                out[r][c] = out[r][c].clone() + f[r][c].clone();
            }
        }
    }
    out
}

/// Subset condition `rank(Σ_{i∈I} A_i) ≥ |I| + p + q` for every nonempty `I`.
pub fn subset_condition_oracle(forms: &[Vec<Vec<Q>>], n: usize, pq: usize) -> bool {
    (1..=forms.len()).all(|k| {
        (0..forms.len()).combinations(k).all(|idx| {
            let chosen: Vec<&Vec<Vec<Q>>> = idx.iter().map(|&i| &forms[i]).collect();
            rank_oracle(&sum_rows(&chosen, n)) >= k + pq
        })
    })
}
