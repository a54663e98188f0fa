use merobound::scalar::Rational;
use merobound::{AnalyticSeries, ExteriorSeries, MeroSeries};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| q(n, d))
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), len)
}

/// `1 + c_1/z + ...` with random tail.
fn unit_series(order: usize) -> impl Strategy<Value = ExteriorSeries<Rational>> {
    coeffs(order).prop_map(|tail| {
        let mut c = vec![Rational::one()];
        c.extend(tail);
        ExteriorSeries::new(c).unwrap()
    })
}

/// Generalized binomial `C(e, k)`.
fn binom(e: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * (e - q(j as i64, 1)) / q(j as i64 + 1, 1))
}

/// `Σ_k C(e, k) (u - 1)^k`, independent of the recurrence under test.
fn binomial_sum(u: &ExteriorSeries<Rational>, e: &Rational) -> ExteriorSeries<Rational> {
    let order = u.order();
    let mut x = u.coeffs().to_vec();
    x[0] = Rational::zero();
    let x = ExteriorSeries::new(x).unwrap();
    let mut power = ExteriorSeries::one(order);
    let mut total = ExteriorSeries::zero(order);
    for k in 0..=order {
        total = total.add(&power.scale(&binom(e, k)));
        power = power.mul(&x);
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binomial_pow_matches_binomial_sum(u in unit_series(6), n in -7i64..=7, d in 1i64..=5) {
        let e = q(n, d);
        prop_assert_eq!(u.binomial_pow(&e).unwrap(), binomial_sum(&u, &e));
    }

    #[test]
    fn binomial_pow_adds_exponents(u in unit_series(5), a in rational(), b in rational()) {
        let lhs = u.binomial_pow(&(&a + &b)).unwrap();
        let rhs = u.binomial_pow(&a).unwrap().mul(&u.binomial_pow(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(
        a in unit_series(5), b in unit_series(5), c in unit_series(5)
    ) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn reciprocal_is_inverse(a in unit_series(6)) {
        prop_assert_eq!(a.mul(&a.recip().unwrap()), ExteriorSeries::one(6));
    }

    #[test]
    fn mero_reversion_composes_to_identity(b in coeffs(8)) {
        let f = MeroSeries::new(b).unwrap();
        let g = f.revert();
        prop_assert_eq!(f.compose(&g).unwrap(), MeroSeries::identity(7));
        prop_assert_eq!(g.compose(&f).unwrap(), MeroSeries::identity(7));
    }

    #[test]
    fn mero_reversion_is_an_involution(b in coeffs(7)) {
        let f = MeroSeries::new(b).unwrap();
        prop_assert_eq!(f.revert().revert(), f);
    }

    #[test]
    fn analytic_reversion_composes_to_identity(a in coeffs(6)) {
        let h = AnalyticSeries::new(a).unwrap();
        let inv = h.revert();
        let id = AnalyticSeries::identity(7).unwrap();
        prop_assert_eq!(h.compose(&inv), id.clone());
        prop_assert_eq!(inv.compose(&h), id);
    }
}
