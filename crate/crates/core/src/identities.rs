//! Exact verification of the coefficient relations behind the bounds.
//!
//! Each relation is a polynomial identity in `(b_0, b_1, λ, μ, α)` once `p`
//! and `q` are recovered from `D[f]` and `D[g]`, so agreement at random
//! rational points is overwhelming evidence and a single mismatch is a
//! disproof.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::operator::{class_source, operator_series};
use crate::params::{ClassParams, Variant};
use crate::scalar::Rational;
use crate::series::MeroSeries;

/// Numerators and denominators of random draws stay within this size.
pub const DRAW_MAGNITUDE: i64 = 1_000_000;

/// Serialized by [`Identity::name`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "&'static str", try_from = "String")]
pub enum Identity {
    /// `D[f]_1 = (μ-λ) b_0`
    OperatorFirst,
    /// `D[f]_2 = (μ-2λ)(b_1 + (μ-1) b_0²/2)`
    OperatorSecond,
    /// `D[g]_1 = (λ-μ) b_0`
    InverseOperatorFirst,
    /// `D[g]_2 = (2λ-μ)(b_1 - (μ-1) b_0²/2)`
    InverseOperatorSecond,
    /// `(μ-λ) b_0 = (1-α) p_1`
    StarlikeP1,
    /// `(μ-2λ)(b_1 + (μ-1) b_0²/2) = (1-α) p_2`
    StarlikeP2,
    /// `(λ-μ) b_0 = (1-α) q_1`
    StarlikeQ1,
    /// `(2λ-μ)(b_1 - (μ-1) b_0²/2) = (1-α) q_2`
    StarlikeQ2,
    /// `p_1 = -q_1`
    StarlikeOpposite,
    /// `b_0² = (1-α)²(p_1² + q_1²) / (2(λ-μ)²)`
    StarlikeB0Square,
    /// `(1-μ)²(2λ-μ)² b_0⁴ - 4(1-α)² p_2 q_2 = 4(2λ-μ)² b_1²`
    StarlikeB1Combination,
    /// `(μ-λ) b_0 = α p_1`
    StronglyP1,
    /// `(μ-2λ)(b_1 + (μ-1) b_0²/2) = ½[α(α-1) p_1² + 2α p_2]`
    StronglyP2,
    /// `(λ-μ) b_0 = α q_1`
    StronglyQ1,
    /// `(2λ-μ)(b_1 - (μ-1) b_0²/2) = ½[α(α-1) q_1² + 2α q_2]`
    StronglyQ2,
    /// `p_1 = -q_1`
    StronglyOpposite,
    /// `b_0² = α²(p_1² + q_1²) / (2(λ-μ)²)`
    StronglyB0Square,
    /// `2(2λ-μ)² b_1² + (2λ-μ)²(1-μ)² b_0⁴/2 = α²(α-1)²(p_1⁴+q_1⁴)/4
    ///  + α²(p_2²+q_2²) + α²(α-1)(p_1² p_2 + q_1² q_2)`
    StronglyB1Combination,
}

impl Identity {
    pub const ALL: [Identity; 18] = [
        Identity::OperatorFirst,
        Identity::OperatorSecond,
        Identity::InverseOperatorFirst,
        Identity::InverseOperatorSecond,
        Identity::StarlikeP1,
        Identity::StarlikeP2,
        Identity::StarlikeQ1,
        Identity::StarlikeQ2,
        Identity::StarlikeOpposite,
        Identity::StarlikeB0Square,
        Identity::StarlikeB1Combination,
        Identity::StronglyP1,
        Identity::StronglyP2,
        Identity::StronglyQ1,
        Identity::StronglyQ2,
        Identity::StronglyOpposite,
        Identity::StronglyB0Square,
        Identity::StronglyB1Combination,
    ];

    pub fn name(self) -> &'static str {
        use Identity::*;
        match self {
            OperatorFirst => "operator.first_coefficient",
            OperatorSecond => "operator.second_coefficient",
            InverseOperatorFirst => "inverse_operator.first_coefficient",
            InverseOperatorSecond => "inverse_operator.second_coefficient",
            StarlikeP1 => "starlike.p_first_coefficient",
            StarlikeP2 => "starlike.p_second_coefficient",
            StarlikeQ1 => "starlike.q_first_coefficient",
            StarlikeQ2 => "starlike.q_second_coefficient",
            StarlikeOpposite => "starlike.p1_equals_minus_q1",
            StarlikeB0Square => "starlike.b0_square",
            StarlikeB1Combination => "starlike.b1_combination",
            StronglyP1 => "strongly_starlike.p_first_coefficient",
            StronglyP2 => "strongly_starlike.p_second_coefficient",
            StronglyQ1 => "strongly_starlike.q_first_coefficient",
            StronglyQ2 => "strongly_starlike.q_second_coefficient",
            StronglyOpposite => "strongly_starlike.p1_equals_minus_q1",
            StronglyB0Square => "strongly_starlike.b0_square",
            StronglyB1Combination => "strongly_starlike.b1_combination",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.name() == name)
    }

    /// The variant the identity belongs to; `None` for operator identities.
    pub fn variant(self) -> Option<Variant> {
        use Identity::*;
        match self {
            OperatorFirst | OperatorSecond | InverseOperatorFirst | InverseOperatorSecond => None,
            StarlikeP1 | StarlikeP2 | StarlikeQ1 | StarlikeQ2 | StarlikeOpposite | StarlikeB0Square
            | StarlikeB1Combination => Some(Variant::Starlike),
            _ => Some(Variant::StronglyStarlike),
        }
    }

    /// Identities checked for a draw of the given variant.
    pub fn for_variant(variant: Variant) -> impl Iterator<Item = Identity> {
        Self::ALL.into_iter().filter(move |i| i.variant().is_none_or(|v| v == variant))
    }
}

impl From<Identity> for &'static str {
    fn from(id: Identity) -> Self {
        id.name()
    }
}

impl TryFrom<String> for Identity {
    type Error = String;
    fn try_from(name: String) -> Result<Self, String> {
        Identity::from_name(&name).ok_or_else(|| format!("unknown identity `{name}`"))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One evaluation point. `b_2` does not enter the identities; it is drawn so
/// that the truncated series carry a nonzero tail.
#[derive(Clone, Debug, PartialEq)]
pub struct Draw {
    pub b: [Rational; 3],
    pub params: ClassParams<Rational>,
}

impl Serialize for Draw {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Draw", 6)?;
        st.serialize_field("variant", &self.params.variant)?;
        st.serialize_field("b", &self.b.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        st.serialize_field("alpha", &self.params.alpha.to_string())?;
        st.serialize_field("lambda", &self.params.lambda.to_string())?;
        st.serialize_field("mu", &self.params.mu.to_string())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub identity: Identity,
    pub draw: Draw,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityResult {
    pub identity: Identity,
    pub passed: bool,
    pub points_checked: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationSummary {
    pub variant: Variant,
    pub trials: usize,
    pub seed: u64,
    pub mutant: Option<Identity>,
    pub passed: bool,
    pub results: Vec<IdentityResult>,
}

fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let num = rng.random_range(-DRAW_MAGNITUDE..=DRAW_MAGNITUDE);
    let den = rng.random_range(1..=DRAW_MAGNITUDE);
    frac(num, den)
}

/// Rational in `[0, 1)`, or `(0, 1]` when `upper_closed`.
fn random_unit<R: Rng + ?Sized>(rng: &mut R, upper_closed: bool) -> Rational {
    let den = rng.random_range(1..=DRAW_MAGNITUDE);
    let num = if upper_closed { rng.random_range(1..=den) } else { rng.random_range(0..den) };
    frac(num, den)
}

/// A random point of the parameter domain with random `b_0, b_1, b_2`.
pub fn random_draw<R: Rng + ?Sized>(rng: &mut R, variant: Variant) -> Draw {
    let b = [random_rational(rng), random_rational(rng), random_rational(rng)];
    let lambda = int(1) + random_rational(rng).abs();
    // μ = λ t with t in [0, 1) keeps λ > μ >= 0
    let mu = &lambda * random_unit(rng, false);
    let alpha = random_unit(rng, variant == Variant::StronglyStarlike);
    Draw { b, params: ClassParams { alpha, lambda, mu, variant } }
}

/// Both sides of every identity of the draw's variant.
pub fn evaluate_draw(draw: &Draw) -> Vec<(Identity, Rational, Rational)> {
    let p = &draw.params;
    let (b0, b1) = (&draw.b[0], &draw.b[1]);
    let f = MeroSeries::new(draw.b.to_vec()).expect("non-empty");
    let g = f.revert();
    let d_f = operator_series(&f, p);
    let d_g = operator_series(&g, p);
    let ps = class_source(&d_f, p).expect("constant term one");
    let qs = class_source(&d_g, p).expect("constant term one");
    let (p1, p2) = (&ps.coeffs()[1], &ps.coeffs()[2]);
    let (q1, q2) = (&qs.coeffs()[1], &qs.coeffs()[2]);

    let one = int(1);
    let two = int(2);
    let four = int(4);
    let (alpha, lambda, mu) = (&p.alpha, &p.lambda, &p.mu);
    let lm = lambda - mu;
    let tlm = &two * lambda - mu;
    let half_b0_sq = (mu - &one) * b0 * b0 / &two;
    let lhs_p2 = -(&tlm) * (b1 + &half_b0_sq);
    let lhs_q2 = &tlm * (b1 - &half_b0_sq);
    let b0_sq = b0 * b0;

    let mut out = vec![
        (Identity::OperatorFirst, d_f.coeffs()[1].clone(), -(&lm) * b0),
        (Identity::OperatorSecond, d_f.coeffs()[2].clone(), lhs_p2.clone()),
        (Identity::InverseOperatorFirst, d_g.coeffs()[1].clone(), &lm * b0),
        (Identity::InverseOperatorSecond, d_g.coeffs()[2].clone(), lhs_q2.clone()),
    ];
    match p.variant {
        Variant::Starlike => {
            let c = &one - alpha;
            let c2 = &c * &c;
            let one_mu = &one - mu;
            out.extend([
                (Identity::StarlikeP1, -(&lm) * b0, &c * p1),
                (Identity::StarlikeP2, lhs_p2, &c * p2),
                (Identity::StarlikeQ1, &lm * b0, &c * q1),
                (Identity::StarlikeQ2, lhs_q2, &c * q2),
                (Identity::StarlikeOpposite, p1.clone(), -q1.clone()),
                (Identity::StarlikeB0Square, b0_sq.clone(), &c2 * (p1 * p1 + q1 * q1) / (&two * &lm * &lm)),
                (
                    Identity::StarlikeB1Combination,
                    &one_mu * &one_mu * &tlm * &tlm * &b0_sq * &b0_sq - &four * &c2 * p2 * q2,
                    &four * &tlm * &tlm * b1 * b1,
                ),
            ]);
        }
        Variant::StronglyStarlike => {
            let a2 = alpha * alpha;
            let am1 = alpha - &one;
            let half = frac(1, 2);
            let one_mu = &one - mu;
            let (p1s, q1s) = (p1 * p1, q1 * q1);
            let rhs_combo = &a2 * &am1 * &am1 * (&p1s * &p1s + &q1s * &q1s) / &four
                + &a2 * (p2 * p2 + q2 * q2)
                + &a2 * &am1 * (&p1s * p2 + &q1s * q2);
            out.extend([
                (Identity::StronglyP1, -(&lm) * b0, alpha * p1),
                (Identity::StronglyP2, lhs_p2, &half * (alpha * &am1 * &p1s + &two * alpha * p2)),
                (Identity::StronglyQ1, &lm * b0, alpha * q1),
                (Identity::StronglyQ2, lhs_q2, &half * (alpha * &am1 * &q1s + &two * alpha * q2)),
                (Identity::StronglyOpposite, p1.clone(), -q1.clone()),
                (Identity::StronglyB0Square, b0_sq.clone(), &a2 * (&p1s + &q1s) / (&two * &lm * &lm)),
                (
                    Identity::StronglyB1Combination,
                    &two * &tlm * &tlm * b1 * b1 + &tlm * &tlm * &one_mu * &one_mu * &b0_sq * &b0_sq / &two,
                    rhs_combo,
                ),
            ]);
        }
    }
    out
}

/// Runs every identity of `variant` on `draws`. `mutant` negates the
/// right-hand side of one identity, which a working checker must catch.
pub fn verify_draws(
    variant: Variant,
    draws: &[Draw],
    mutant: Option<Identity>,
) -> Vec<IdentityResult> {
    let mut results: Vec<IdentityResult> = Identity::for_variant(variant)
        .map(|identity| IdentityResult {
            identity,
            passed: true,
            points_checked: 0,
            witness: None,
        })
        .collect();
    for draw in draws {
        for (identity, lhs, rhs) in evaluate_draw(draw) {
            let rhs = if mutant == Some(identity) { -rhs } else { rhs };
            let slot = results.iter_mut().find(|r| r.identity == identity).expect("listed");
            slot.points_checked += 1;
            if lhs != rhs && slot.passed {
                slot.passed = false;
                slot.witness = Some(Witness {
                    identity,
                    draw: draw.clone(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }
    results
}

/// `trials` seeded random draws of one variant, all identities checked in
/// exact arithmetic.
pub fn verify_coefficient_equations(
    variant: Variant,
    trials: usize,
    seed: u64,
    mutant: Option<Identity>,
) -> VerificationSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Draw> = (0..trials).map(|_| random_draw(&mut rng, variant)).collect();
    let results = verify_draws(variant, &draws, mutant);
    VerificationSummary {
        variant,
        trials,
        seed,
        mutant,
        passed: results.iter().all(|r| r.passed),
        results,
    }
}
