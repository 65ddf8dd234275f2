//! Seeded random instances with small Gaussian-integer entries.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exterior::{basis, ExteriorClass, HermitianForm};
use crate::linalg::{LinearAlgebra, Matrix};
use crate::scalar::{gaussian, GaussianRational};

/// Generator for trial `index` of a run seeded with `seed`. Streams are
/// independent, so trials can be evaluated in any order or in parallel.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_integer<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    gaussian(
        rng.random_range(-bound..=bound),
        rng.random_range(-bound..=bound),
    )
}

/// `B B*` for an `n x rank` matrix `B` of full column rank, entries in `[-2, 2] + i[-2, 2]`.
pub fn random_psd<R: Rng>(rng: &mut R, n: usize, rank: usize) -> HermitianForm<GaussianRational> {
    assert!(rank <= n, "rank {rank} exceeds dimension {n}");
    if rank == 0 {
        return HermitianForm::zero(n);
    }
    let b = loop {
        let b = Matrix::from_fn(n, rank, |_, _| gaussian_integer(rng, 2));
        if GaussianRational::rank(&b).expect("exact") == rank {
            break b;
        }
    };
    let a = b.mul(&b.conj_transpose()).expect("conformable");
    HermitianForm::new(a).expect("B B* is Hermitian")
}

/// Hermitian matrix with Gaussian-integer entries in `[-bound, bound]`.
pub fn random_hermitian<R: Rng>(
    rng: &mut R,
    n: usize,
    bound: i64,
) -> HermitianForm<GaussianRational> {
    let mut m = Matrix::zeros(n, n);
    for r in 0..n {
        m[(r, r)] = gaussian(rng.random_range(-bound..=bound), 0);
        for c in r + 1..n {
            let z = gaussian_integer(rng, bound);
            m[(c, r)] = crate::scalar::Field::conj(&z);
            m[(r, c)] = z;
        }
    }
    HermitianForm::new(m).expect("Hermitian by construction")
}

/// Random `(p,q)` class; each basis coefficient is nonzero with probability `density`.
pub fn random_class<R: Rng>(
    rng: &mut R,
    n: usize,
    p: usize,
    q: usize,
    density: f64,
) -> ExteriorClass<GaussianRational> {
    let terms: Vec<_> = basis(n, p, q)
        .expect("valid bidegree")
        .into_iter()
        .filter_map(|(i, j)| {
            rng.random_bool(density)
                .then(|| (i, j, gaussian_integer(rng, 3)))
        })
        .collect();
    ExteriorClass::from_terms(n, p, q, terms).expect("valid terms")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::congruence_signature;

    #[test]
    fn psd_has_prescribed_rank() {
        let mut rng = trial_rng(7, 0);
        for n in 1..=4 {
            for rank in 0..=n {
                let a = random_psd(&mut rng, n, rank);
                let sig = congruence_signature(a.matrix());
                assert_eq!((sig.n_plus, sig.n_minus), (rank, 0));
            }
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a = random_psd(&mut trial_rng(42, 3), 3, 2);
        let b = random_psd(&mut trial_rng(42, 3), 3, 2);
        let c = random_psd(&mut trial_rng(42, 4), 3, 2);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
