//! Positive-real-part functions on `|z| > 1` normalized by `p(∞) = 1`.
//!
//! A finite atom list `(w_k, θ_k)` with `Σ w_k = 1` gives
//! `p(z) = Σ w_k (z + ρu_k)/(z - ρu_k)`, `u_k = e^{iθ_k}`, whose coefficients
//! `p_n = 2ρ^n Σ w_k u_k^n` obey `|p_n| <= 2` by the triangle inequality. The
//! dilation `ρ ∈ (0, 1]` defaults to one (atoms on the unit circle); values
//! below one give functions analytic across `|z| = 1` with geometrically
//! decaying coefficients.

use std::f64::consts::{PI, TAU};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::AtomError;
use crate::scalar::{RationalComplex, Scalar};
use crate::series::ExteriorSeries;

/// Tolerance on `Σ w = 1` for float atoms.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Default atom count for random proposals.
pub const DEFAULT_ATOMS: usize = 4;

/// Anything that yields the coefficients `p_n` of `p(z) = 1 + Σ p_n z^{-n}`.
pub trait HerglotzSource<S: Scalar> {
    /// `p_n`; `n = 0` yields one.
    fn coefficient(&self, n: usize) -> S;

    /// `1 + p_1/z + ... + p_N/z^N`.
    fn to_exterior_series(&self, order: usize) -> ExteriorSeries<S> {
        let coeffs = (0..=order).map(|n| self.coefficient(n)).collect();
        ExteriorSeries::new(coeffs).expect("non-empty")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub w: f64,
    pub theta: f64,
}

/// Float atom list with optional dilation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAtoms")]
pub struct CaratheodoryAtoms {
    atoms: Vec<Atom>,
    #[serde(default = "unit", skip_serializing_if = "is_unit")]
    rho: f64,
}

fn unit() -> f64 {
    1.0
}

fn is_unit(x: &f64) -> bool {
    *x == 1.0
}

#[derive(Deserialize)]
struct RawAtoms {
    atoms: Vec<Atom>,
    #[serde(default = "unit")]
    rho: f64,
}

impl TryFrom<RawAtoms> for CaratheodoryAtoms {
    type Error = AtomError;
    fn try_from(raw: RawAtoms) -> Result<Self, AtomError> {
        CaratheodoryAtoms::new(raw.atoms)?.with_dilation(raw.rho)
    }
}

/// Reduces an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

impl CaratheodoryAtoms {
    pub fn new(atoms: Vec<Atom>) -> Result<Self, AtomError> {
        if atoms.is_empty() {
            return Err(AtomError::Empty);
        }
        let mut sum = 0.0;
        for a in &atoms {
            if !(a.w > 0.0) || !a.w.is_finite() {
                return Err(AtomError::NonPositiveWeight(format!("{}", a.w)));
            }
            if !(0.0..TAU).contains(&a.theta) {
                return Err(AtomError::AngleOutOfRange(a.theta));
            }
            sum += a.w;
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(AtomError::WeightSum(format!("{sum}")));
        }
        Ok(Self { atoms, rho: 1.0 })
    }

    /// Normalizes positive weights and reduces angles before validating.
    pub fn from_unnormalized(raw: &[(f64, f64)]) -> Result<Self, AtomError> {
        let total: f64 = raw.iter().map(|(w, _)| w).sum();
        if !(total > 0.0) {
            return Err(AtomError::Empty);
        }
        let atoms = raw
            .iter()
            .map(|&(w, theta)| Atom { w: w / total, theta: normalize_angle(theta) })
            .collect();
        Self::new(atoms)
    }

    pub fn point_mass(theta: f64) -> Result<Self, AtomError> {
        Self::new(vec![Atom { w: 1.0, theta: normalize_angle(theta) }])
    }

    pub fn with_dilation(mut self, rho: f64) -> Result<Self, AtomError> {
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(AtomError::Dilation(rho));
        }
        self.rho = rho;
        Ok(self)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `p_n = 2ρ^n Σ w_k e^{inθ_k}`.
    pub fn coefficient(&self, n: usize) -> Complex64 {
        if n == 0 {
            return Complex64::one();
        }
        let sum: Complex64 = self
            .atoms
            .iter()
            .map(|a| Complex64::from_polar(a.w, (n as f64) * a.theta))
            .sum();
        sum * (2.0 * self.rho.powi(n as i32))
    }

    pub fn to_exterior_series(&self, order: usize) -> ExteriorSeries<Complex64> {
        HerglotzSource::to_exterior_series(self, order)
    }

    /// Convex mixture `t·self + (1-t)·other`; both must share the dilation.
    pub fn mixture(&self, other: &Self, t: f64) -> Result<Self, AtomError> {
        if self.rho != other.rho {
            return Err(AtomError::Dilation(other.rho));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| (a.w * t, a.theta))
            .chain(other.atoms.iter().map(|a| (a.w * (1.0 - t), a.theta)))
            .filter(|(w, _)| *w > 0.0)
            .collect::<Vec<_>>();
        Self::from_unnormalized(&atoms)?.with_dilation(self.rho)
    }

    /// Atom list with every angle mapped `θ -> π - θ`.
    pub fn reflected(&self) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom { w: a.w, theta: normalize_angle(PI - a.theta) })
            .collect();
        Self { atoms, rho: self.rho }
    }
}

impl HerglotzSource<Complex64> for CaratheodoryAtoms {
    fn coefficient(&self, n: usize) -> Complex64 {
        CaratheodoryAtoms::coefficient(self, n)
    }
}

/// Deterministic pseudorandom atoms: normalized exponential weights and
/// uniform angles.
pub fn random_atoms(seed: u64, n_atoms: usize) -> Result<CaratheodoryAtoms, AtomError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_atoms_with(&mut rng, n_atoms)
}

pub fn random_atoms_with<R: Rng + ?Sized>(
    rng: &mut R,
    n_atoms: usize,
) -> Result<CaratheodoryAtoms, AtomError> {
    if n_atoms == 0 {
        return Err(AtomError::Empty);
    }
    let raw: Vec<(f64, f64)> = (0..n_atoms)
        .map(|_| {
            let u: f64 = 1.0 - rng.random::<f64>();
            (-u.ln() + f64::MIN_POSITIVE, rng.random::<f64>() * TAU)
        })
        .collect();
    CaratheodoryAtoms::from_unnormalized(&raw)
}

/// Exact atoms at angles `kπ/2`, so that every coefficient is a Gaussian
/// rational.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactAtoms {
    atoms: Vec<(BigRational, u8)>,
}

impl ExactAtoms {
    /// `(weight, k)` pairs for angle `kπ/2`; weights positive and summing to
    /// exactly one.
    pub fn new(atoms: Vec<(BigRational, u8)>) -> Result<Self, AtomError> {
        if atoms.is_empty() {
            return Err(AtomError::Empty);
        }
        let mut sum = BigRational::zero();
        for (w, k) in &atoms {
            if !w.is_positive() {
                return Err(AtomError::NonPositiveWeight(w.to_string()));
            }
            if *k >= 4 {
                return Err(AtomError::AngleOutOfRange(f64::from(*k) * PI / 2.0));
            }
            sum += w;
        }
        if !sum.is_one() {
            return Err(AtomError::WeightSum(sum.to_string()));
        }
        Ok(Self { atoms })
    }

    pub fn point_mass(quarter_turns: u8) -> Self {
        Self { atoms: vec![(BigRational::one(), quarter_turns % 4)] }
    }
}

fn i_pow(k: usize) -> RationalComplex {
    let (re, im) = match k % 4 {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    };
    Complex::new(BigRational::from_integer(BigInt::from(re)), BigRational::from_integer(BigInt::from(im)))
}

impl HerglotzSource<RationalComplex> for ExactAtoms {
    fn coefficient(&self, n: usize) -> RationalComplex {
        if n == 0 {
            return RationalComplex::one();
        }
        let two = RationalComplex::from_i64(2);
        self.atoms.iter().fold(RationalComplex::zero(), |acc, (w, k)| {
            acc + i_pow(n * usize::from(*k)) * RationalComplex::from_real(w) * two.clone()
        })
    }
}
