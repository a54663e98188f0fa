use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::ParamError;
use crate::scalar::{rational_from_f64, Real};

/// Which inequality defines the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `Re D[f] > α` and `Re D[g] > α`, `0 <= α < 1`.
    Starlike,
    /// `|arg D[f]| < απ/2` and `|arg D[g]| < απ/2`, `0 < α <= 1`.
    StronglyStarlike,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Starlike, Variant::StronglyStarlike];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Starlike => "starlike",
            Variant::StronglyStarlike => "strongly_starlike",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Class parameters `(α, λ, μ)` and the variant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassParams<R = f64> {
    pub alpha: R,
    pub lambda: R,
    pub mu: R,
    pub variant: Variant,
}

impl<R: Real> ClassParams<R> {
    /// Validated constructor.
    pub fn new(variant: Variant, alpha: R, lambda: R, mu: R) -> Result<Self, ParamError> {
        let p = Self { alpha, lambda, mu, variant };
        p.validate()?;
        Ok(p)
    }

    /// `λ >= 1`, `μ >= 0`, `λ > μ`, and the variant's range for `α`.
    pub fn validate(&self) -> Result<(), ParamError> {
        for v in [&self.alpha, &self.lambda, &self.mu] {
            if !v.to_f64().is_finite() {
                return Err(ParamError::NotFinite);
            }
        }
        let zero = R::zero();
        let one = R::one();
        let show = |r: &R| format!("{:?}", r.to_f64());
        if self.lambda < one {
            return Err(ParamError::LambdaBelowOne(show(&self.lambda)));
        }
        if self.mu < zero {
            return Err(ParamError::NegativeMu(show(&self.mu)));
        }
        if self.lambda <= self.mu {
            return Err(ParamError::LambdaNotAboveMu {
                lambda: show(&self.lambda),
                mu: show(&self.mu),
            });
        }
        let alpha_ok = match self.variant {
            Variant::Starlike => self.alpha >= zero && self.alpha < one,
            Variant::StronglyStarlike => self.alpha > zero && self.alpha <= one,
        };
        if !alpha_ok {
            let (range, variant) = match self.variant {
                Variant::Starlike => ("[0, 1)", "starlike"),
                Variant::StronglyStarlike => ("(0, 1]", "strongly starlike"),
            };
            return Err(ParamError::AlphaOutOfRange { alpha: show(&self.alpha), range, variant });
        }
        Ok(())
    }

    pub fn to_f64(&self) -> ClassParams<f64> {
        ClassParams {
            alpha: self.alpha.to_f64(),
            lambda: self.lambda.to_f64(),
            mu: self.mu.to_f64(),
            variant: self.variant,
        }
    }
}

impl ClassParams<f64> {
    /// Exact rational image of the binary64 parameters.
    pub fn to_exact(&self) -> Result<ClassParams<BigRational>, ParamError> {
        let conv = |x: f64| rational_from_f64(x).ok_or(ParamError::NotFinite);
        Ok(ClassParams {
            alpha: conv(self.alpha)?,
            lambda: conv(self.lambda)?,
            mu: conv(self.mu)?,
            variant: self.variant,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_checks() {
        assert!(ClassParams::new(Variant::Starlike, 0.0, 1.0, 0.0).is_ok());
        assert!(ClassParams::new(Variant::StronglyStarlike, 1.0, 1.0, 0.0).is_ok());
        assert!(matches!(
            ClassParams::new(Variant::Starlike, 1.0, 1.0, 0.0),
            Err(ParamError::AlphaOutOfRange { .. })
        ));
        assert!(matches!(
            ClassParams::new(Variant::StronglyStarlike, 0.0, 1.0, 0.0),
            Err(ParamError::AlphaOutOfRange { .. })
        ));
        assert!(matches!(
            ClassParams::new(Variant::Starlike, 0.5, 0.9, 0.0),
            Err(ParamError::LambdaBelowOne(_))
        ));
        assert!(matches!(
            ClassParams::new(Variant::Starlike, 0.5, 1.0, -0.1),
            Err(ParamError::NegativeMu(_))
        ));
        assert!(matches!(
            ClassParams::new(Variant::Starlike, 0.5, 2.0, 2.0),
            Err(ParamError::LambdaNotAboveMu { .. })
        ));
        assert_eq!(
            ClassParams::new(Variant::Starlike, f64::NAN, 1.0, 0.0),
            Err(ParamError::NotFinite)
        );
    }

    #[test]
    fn exact_image_is_exact() {
        let p = ClassParams::new(Variant::Starlike, 0.1, 2.0, 0.5).unwrap();
        let e = p.to_exact().unwrap();
        assert_eq!(e.to_f64(), p);
        assert_ne!(e.alpha, BigRational::new(1.into(), 10.into()));
    }
}
