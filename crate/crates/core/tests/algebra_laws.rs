use kahler::exterior::ExteriorClass;
use kahler::hodge::hr_gram;
use kahler::sampling::{random_class, random_hermitian, trial_rng};
use kahler::scalar::{Field, GaussianRational};
use proptest::prelude::*;
use rand::Rng;

type Q = GaussianRational;

fn class(seed: u64, stream: u64, n: usize, p: usize, q: usize) -> ExteriorClass<Q> {
    random_class(&mut trial_rng(seed, stream), n, p, q, 0.6)
}

fn bidegree(n: usize) -> impl Strategy<Value = (usize, usize)> {
    (0..=n).prop_flat_map(move |p| (Just(p), 0..=n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graded_commutativity(n in 1usize..=4, seed in any::<u64>(), a in bidegree(4), b in bidegree(4)) {
        let (a, b) = ((a.0.min(n), a.1.min(n)), (b.0.min(n), b.1.min(n)));
        let x = class(seed, 0, n, a.0, a.1);
        let y = class(seed, 1, n, b.0, b.1);
        let sign = if (x.degree() * y.degree()) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(x.wedge(&y).unwrap(), y.wedge(&x).unwrap().scale(&Q::from_int(sign)));
    }

    #[test]
    fn associativity(n in 1usize..=4, seed in any::<u64>(), a in bidegree(2), b in bidegree(2), c in bidegree(2)) {
        let x = class(seed, 0, n, a.0.min(n), a.1.min(n));
        let y = class(seed, 1, n, b.0.min(n), b.1.min(n));
        let z = class(seed, 2, n, c.0.min(n), c.1.min(n));
        let left = x.wedge(&y).unwrap().wedge(&z).unwrap();
        let right = x.wedge(&y.wedge(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn conjugation_is_an_involution(n in 1usize..=5, seed in any::<u64>(), a in bidegree(5)) {
        let x = class(seed, 0, n, a.0.min(n), a.1.min(n));
        let c = x.conjugate();
        prop_assert_eq!(c.bidegree(), (x.bidegree().1, x.bidegree().0));
        prop_assert_eq!(c.conjugate(), x);
    }

    #[test]
    fn conjugation_is_multiplicative(n in 1usize..=4, seed in any::<u64>(), a in bidegree(2), b in bidegree(2)) {
        let x = class(seed, 0, n, a.0.min(n), a.1.min(n));
        let y = class(seed, 1, n, b.0.min(n), b.1.min(n));
        prop_assert_eq!(x.wedge(&y).unwrap().conjugate(), x.conjugate().wedge(&y.conjugate()).unwrap());
    }

    #[test]
    fn wedge_is_bilinear(n in 1usize..=4, seed in any::<u64>(), a in bidegree(2), b in bidegree(2)) {
        let (p, q) = (a.0.min(n), a.1.min(n));
        let x1 = class(seed, 0, n, p, q);
        let x2 = class(seed, 1, n, p, q);
        let y = class(seed, 2, n, b.0.min(n), b.1.min(n));
        let lhs = x1.add(&x2).unwrap().wedge(&y).unwrap();
        let rhs = x1.wedge(&y).unwrap().add(&x2.wedge(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gram_is_hermitian(n in 1usize..=4, seed in any::<u64>(), pq in bidegree(4)) {
        let (p, q) = (pq.0.min(n), pq.1.min(n));
        prop_assume!(p + q <= n);
        let mut rng = trial_rng(seed, 0);
        let factors: Vec<_> = (0..n - p - q).map(|_| random_hermitian(&mut rng, n, 2)).collect();
        let g = hr_gram(n, &factors, p, q).unwrap();
        prop_assert!(g.gram.is_hermitian());
    }

    #[test]
    fn real_forms_are_self_conjugate(n in 1usize..=5, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let bound = rng.random_range(1..=4);
        let w = ExteriorClass::from_hermitian(&random_hermitian(&mut rng, n, bound));
        prop_assert_eq!(w.conjugate(), w);
    }
}
