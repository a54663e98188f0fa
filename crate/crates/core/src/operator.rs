//! The class operator
//! `D[f](z) = (1-λ)(f(z)/z)^μ + λ f'(z) (f(z)/z)^{μ-1}`
//! as an exterior series, and the candidate builder that inverts it.

use num_traits::One;

use crate::caratheodory::HerglotzSource;
use crate::error::SeriesError;
use crate::params::{ClassParams, Variant};
use crate::scalar::Scalar;
use crate::series::{ExteriorSeries, MeroSeries};

/// `D[f]` truncated to `f.order()`. Its constant term is exactly one.
pub fn operator_series<S: Scalar>(f: &MeroSeries<S>, params: &ClassParams<S::Real>) -> ExteriorSeries<S> {
    operator_series_to(f, params, f.order())
}

/// `D[f]` through `order`, which may be as large as `f.order() + 1` because
/// both `f/z` and `f'` are known exactly one step past `f`.
pub(crate) fn operator_series_to<S: Scalar>(
    f: &MeroSeries<S>,
    params: &ClassParams<S::Real>,
    order: usize,
) -> ExteriorSeries<S> {
    debug_assert!(order <= f.order() + 1);
    let u = f.over_z().truncate(order);
    let mu_minus_one = params.mu.clone() - S::Real::one();
    let pow_mu = u.binomial_pow(&params.mu).expect("f/z has constant term one");
    let pow_mu1 = u.binomial_pow(&mu_minus_one).expect("f/z has constant term one");
    let lambda = S::from_real(&params.lambda);
    let deriv = f.derivative().truncate(order);
    pow_mu
        .scale(&(S::one() - lambda.clone()))
        .add(&deriv.mul(&pow_mu1).scale(&lambda))
}

/// Right-hand side of the defining relation for the class:
/// `α + (1-α) p` (starlike) or `p^α` (strongly starlike).
pub fn class_target<S: Scalar>(
    p: &ExteriorSeries<S>,
    params: &ClassParams<S::Real>,
) -> Result<ExteriorSeries<S>, SeriesError> {
    let alpha = S::from_real(&params.alpha);
    match params.variant {
        Variant::Starlike => {
            let mut coeffs = p.scale(&(S::one() - alpha.clone())).into_coeffs();
            coeffs[0] = coeffs[0].clone() + alpha;
            ExteriorSeries::new(coeffs)
        }
        Variant::StronglyStarlike => p.binomial_pow(&params.alpha),
    }
}

/// Inverse of [`class_target`]: recovers `p` from an operator series.
pub fn class_source<S: Scalar>(
    d: &ExteriorSeries<S>,
    params: &ClassParams<S::Real>,
) -> Result<ExteriorSeries<S>, SeriesError> {
    let alpha = S::from_real(&params.alpha);
    match params.variant {
        Variant::Starlike => {
            let mut coeffs = d.coeffs().to_vec();
            coeffs[0] = coeffs[0].clone() - alpha.clone();
            let scale = S::one() / (S::one() - alpha);
            Ok(ExteriorSeries::new(coeffs)?.scale(&scale))
        }
        Variant::StronglyStarlike => {
            let inv = S::Real::one() / params.alpha.clone();
            d.binomial_pow(&inv)
        }
    }
}

/// A meromorphic series built from a pair of positive-real-part functions.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate<S: Scalar> {
    pub f: MeroSeries<S>,
    /// Whether `p_1 = -q_1` held (exactly, or within 1e-12 in float mode).
    pub consistent: bool,
    pub p1: S,
    pub p2: S,
    pub q1: S,
    pub q2: S,
}

/// Builds `f` of the given order: `b_0` and `b_1` from the `q` relation of
/// the inverse, `b_n` for `n >= 2` by continuing coefficient matching of
/// `D[f]` against the `p` target.
///
/// Needs `p.order() >= order + 1` and `q.order() >= 2`.
pub fn solve_candidate_series<S: Scalar>(
    p: &ExteriorSeries<S>,
    q: &ExteriorSeries<S>,
    params: &ClassParams<S::Real>,
    order: usize,
) -> Result<Candidate<S>, SeriesError> {
    let needed = order.max(1) + 1;
    if p.order() < needed {
        return Err(SeriesError::OrderMismatch(p.order(), needed));
    }
    if q.order() < 2 {
        return Err(SeriesError::OrderMismatch(q.order(), 2));
    }
    let target_f = class_target(&p.truncate(needed), params)?;
    let target_g = class_target(&q.truncate(2), params)?;

    let lambda = S::from_real(&params.lambda);
    let mu = S::from_real(&params.mu);
    let two = S::from_i64(2);
    let half_mu_minus_one = (mu.clone() - S::one()) / two.clone();

    // D[g]_1 = (λ-μ) b_0,  D[g]_2 = (2λ-μ)(b_1 - (μ-1) b_0^2 / 2)
    let b0 = target_g.coeffs()[1].clone() / (lambda.clone() - mu.clone());
    let b1 = target_g.coeffs()[2].clone() / (two * lambda.clone() - mu.clone())
        + half_mu_minus_one * b0.clone() * b0.clone();

    let mut b = vec![S::zero(); order.max(1) + 1];
    b[0] = b0;
    b[1] = b1;
    for n in 2..=order {
        // b_n enters D_{n+1} with coefficient μ - λ(n+1); the rest of
        // D_{n+1} is fixed by b_0..b_{n-1}.
        let work = MeroSeries::new(b[..=n].to_vec())?;
        let rest = operator_series_to(&work, params, n + 1).coeffs()[n + 1].clone();
        let pivot = mu.clone() - lambda.clone() * S::from_i64(n as i64 + 1);
        b[n] = (target_f.coeffs()[n + 1].clone() - rest) / pivot;
    }
    b.truncate(order + 1);

    let p1 = p.coeffs()[1].clone();
    let q1 = q.coeffs()[1].clone();
    Ok(Candidate {
        f: MeroSeries::new(b)?,
        consistent: (p1.clone() + q1.clone()).is_consistent_zero(),
        p1,
        p2: p.coeffs()[2].clone(),
        q1,
        q2: q.coeffs()[2].clone(),
    })
}

/// [`solve_candidate_series`] fed from atom lists.
pub fn solve_candidate<S: Scalar, H: HerglotzSource<S>>(
    p_atoms: &H,
    q_atoms: &H,
    params: &ClassParams<S::Real>,
    order: usize,
) -> Result<Candidate<S>, SeriesError> {
    let p = p_atoms.to_exterior_series(order.max(1) + 1);
    let q = q_atoms.to_exterior_series(2);
    solve_candidate_series(&p, &q, params, order)
}
