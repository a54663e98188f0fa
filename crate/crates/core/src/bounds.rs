//! Closed-form bounds on `|b_0|` and `|b_1|` for both classes.
//!
//! Everything up to the final square root is exact rational arithmetic; the
//! root is taken once, in binary64, on the correctly rounded radicand.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::ParamError;
use crate::params::{ClassParams, Variant};
use crate::scalar::fmt_g17;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub b0_bound: f64,
    pub b1_bound: f64,
    pub params: ClassParams<f64>,
}

/// Exact pieces of the bounds before the final root.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactBounds {
    pub b0: BigRational,
    /// Square of the `|b_1|` bound.
    pub b1_squared: BigRational,
    /// The two terms whose sum is `b1_squared`, each already multiplied by
    /// the squared prefactor.
    pub b1_summands: (BigRational, BigRational),
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn exact_bounds(p: &ClassParams<BigRational>) -> Result<ExactBounds, ParamError> {
    p.validate()?;
    let one = BigRational::one();
    let (two, four) = (int(2), int(4));
    let lm = &p.lambda - &p.mu;
    let tlm = &two * &p.lambda - &p.mu;
    let lm2 = &lm * &lm;
    let lm4 = &lm2 * &lm2;
    let tlm2 = &tlm * &tlm;
    let one_minus_mu2 = (&one - &p.mu) * (&one - &p.mu);

    Ok(match p.variant {
        Variant::Starlike => {
            let c = &one - &p.alpha;
            let c2 = &c * &c;
            let first = &four * &c2 * &one_minus_mu2 * &c2 / &lm4;
            let second = &four * &c2 / &tlm2;
            ExactBounds {
                b0: &two * &c / &lm,
                b1_squared: &four * &c2 * (&one_minus_mu2 * &c2 / &lm4 + &one / &tlm2),
                b1_summands: (first, second),
            }
        }
        Variant::StronglyStarlike => {
            let a2 = &p.alpha * &p.alpha;
            let a4 = &a2 * &a2;
            let first = &four * &a4 / &tlm2;
            let second = &four * &a4 * &one_minus_mu2 / &lm4;
            ExactBounds {
                b0: &two * &p.alpha / &lm,
                b1_squared: &four * &a4 * (&one / &tlm2 + &one_minus_mu2 / &lm4),
                b1_summands: (first, second),
            }
        }
    })
}

fn finish(exact: &ExactBounds, params: ClassParams<f64>) -> BoundPair {
    BoundPair {
        b0_bound: exact.b0.to_f64().unwrap_or(f64::INFINITY),
        b1_bound: exact.b1_squared.to_f64().unwrap_or(f64::INFINITY).sqrt(),
        params,
    }
}

/// Bounds for exact parameters.
pub fn bound_pair_exact(p: &ClassParams<BigRational>) -> Result<BoundPair, ParamError> {
    Ok(finish(&exact_bounds(p)?, p.to_f64()))
}

/// Bounds for binary64 parameters, evaluated on their exact rational values.
pub fn bound_pair(p: &ClassParams<f64>) -> Result<BoundPair, ParamError> {
    p.validate()?;
    let exact = exact_bounds(&p.to_exact()?)?;
    Ok(finish(&exact, p.clone()))
}

/// One line of a bounds table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub variant: Variant,
    pub alpha: f64,
    pub lambda: f64,
    pub mu: f64,
    pub b0_bound: f64,
    pub b1_bound: f64,
}

impl BoundRow {
    pub const CSV_HEADER: &'static str = "variant,alpha,lambda,mu,b0_bound,b1_bound";

    pub fn from_pair(pair: &BoundPair) -> Self {
        Self {
            variant: pair.params.variant,
            alpha: pair.params.alpha,
            lambda: pair.params.lambda,
            mu: pair.params.mu,
            b0_bound: pair.b0_bound,
            b1_bound: pair.b1_bound,
        }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.variant,
            fmt_g17(self.alpha),
            fmt_g17(self.lambda),
            fmt_g17(self.mu),
            fmt_g17(self.b0_bound),
            fmt_g17(self.b1_bound)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionRow {
    pub variant: Variant,
    pub alpha: String,
    pub b0_bound: f64,
    pub b1_bound: f64,
    pub expected_b0: f64,
    pub expected_b1: f64,
    pub exact_match: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub passed: bool,
    pub rows: Vec<ReductionRow>,
}

/// Compares the general bounds at `λ = 1, μ = 0` against the
/// two-parameter-free closed forms of that specialization:
/// starlike `(2(1-α), 2(1-α)√((1-α)² + 1/4))`, strongly starlike
/// `(2α, √5 α²)`. Radicands are compared exactly.
pub fn reduction_check() -> ReductionReport {
    let quarter = BigRational::new(1.into(), 4.into());
    let mut rows = Vec::new();
    let alphas = |v: Variant| -> Vec<BigRational> {
        let ks: Vec<i64> = match v {
            Variant::Starlike => (0..10).collect(),
            Variant::StronglyStarlike => (1..=10).collect(),
        };
        let mut out: Vec<BigRational> = ks.into_iter().map(|k| BigRational::new(k.into(), 10.into())).collect();
        if v == Variant::Starlike {
            // approach α -> 1 from below
            out.extend((2..=6).map(|e| int(1) - BigRational::new(1.into(), BigInt::from(10).pow(e))));
        }
        out
    };
    for v in Variant::ALL {
        for alpha in alphas(v) {
            let params = ClassParams { alpha: alpha.clone(), lambda: int(1), mu: int(0), variant: v };
            let exact = exact_bounds(&params).expect("valid grid point");
            let (e_b0, e_b1_sq) = match v {
                Variant::Starlike => {
                    let c = int(1) - &alpha;
                    (int(2) * &c, int(4) * &c * &c * (&c * &c + &quarter))
                }
                Variant::StronglyStarlike => {
                    let a2 = &alpha * &alpha;
                    (int(2) * &alpha, int(5) * &a2 * &a2)
                }
            };
            let pair = finish(&exact, params.to_f64());
            let expected_b0 = e_b0.to_f64().unwrap_or(f64::NAN);
            let expected_b1 = e_b1_sq.to_f64().unwrap_or(f64::NAN).sqrt();
            let exact_match = exact.b0 == e_b0
                && exact.b1_squared == e_b1_sq
                && pair.b0_bound == expected_b0
                && pair.b1_bound == expected_b1;
            rows.push(ReductionRow {
                variant: v,
                alpha: alpha.to_string(),
                b0_bound: pair.b0_bound,
                b1_bound: pair.b1_bound,
                expected_b0,
                expected_b1,
                exact_match,
            });
        }
    }
    ReductionReport { passed: rows.iter().all(|r| r.exact_match), rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn exact(v: Variant, a: BigRational, l: BigRational, m: BigRational) -> ClassParams<BigRational> {
        ClassParams { alpha: a, lambda: l, mu: m, variant: v }
    }

    #[test]
    fn starlike_examples() {
        let e = exact_bounds(&exact(Variant::Starlike, q(1, 2), q(2, 1), q(1, 2))).unwrap();
        assert_eq!(e.b0, q(2, 3));

        let p = bound_pair_exact(&exact(Variant::Starlike, q(0, 1), q(1, 1), q(0, 1))).unwrap();
        assert_eq!(p.b0_bound, 2.0);
        assert_eq!(p.b1_bound, 5f64.sqrt());
    }

    #[test]
    fn strongly_starlike_examples() {
        let p = bound_pair_exact(&exact(Variant::StronglyStarlike, q(1, 1), q(1, 1), q(0, 1))).unwrap();
        assert_eq!(p.b0_bound, 2.0);
        assert_eq!(p.b1_bound, 5f64.sqrt());
        let p = bound_pair_exact(&exact(Variant::StronglyStarlike, q(1, 2), q(1, 1), q(0, 1))).unwrap();
        assert_eq!(p.b0_bound, 1.0);
    }

    #[test]
    fn mu_one_collapses_b1() {
        for (a, l) in [(q(0, 1), q(3, 2)), (q(1, 3), q(2, 1)), (q(4, 5), q(7, 2))] {
            let e = exact_bounds(&exact(Variant::Starlike, a.clone(), l.clone(), q(1, 1))).unwrap();
            let expect = q(2, 1) * (q(1, 1) - a) / (q(2, 1) * l - q(1, 1));
            assert_eq!(e.b1_squared, &expect * &expect);
        }
    }

    #[test]
    fn summands_recombine() {
        for v in Variant::ALL {
            let e = exact_bounds(&exact(v, q(3, 7), q(9, 4), q(5, 3))).unwrap();
            assert_eq!(&e.b1_squared - (&e.b1_summands.0 + &e.b1_summands.1), q(0, 1));
        }
    }

    #[test]
    fn invalid_params_rejected() {
        let p = ClassParams { alpha: 0.5, lambda: 1.0, mu: 1.0, variant: Variant::Starlike };
        assert!(matches!(bound_pair(&p), Err(ParamError::LambdaNotAboveMu { .. })));
    }

    #[test]
    fn reduction_holds() {
        let r = reduction_check();
        assert!(r.passed, "{:?}", r.rows.iter().filter(|r| !r.exact_match).collect::<Vec<_>>());
        let first = &r.rows[0];
        assert_eq!((first.b0_bound, first.b1_bound), (2.0, 5f64.sqrt()));
        let strong_half = r
            .rows
            .iter()
            .find(|r| r.variant == Variant::StronglyStarlike && r.alpha == "1/2")
            .unwrap();
        assert_eq!(strong_half.b0_bound, 1.0);
    }

    #[test]
    fn csv_row() {
        let p = bound_pair(&ClassParams { alpha: 0.0, lambda: 1.0, mu: 0.0, variant: Variant::Starlike }).unwrap();
        assert_eq!(BoundRow::from_pair(&p).to_csv(), "starlike,0,1,0,2,2.2360679774997898");
    }
}
