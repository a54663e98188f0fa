//! Truncated series in `1/z` and normalized analytic series.
//!
//! [`ExteriorSeries`] holds `c_0 + c_1/z + ... + c_N/z^N`. Binary operations
//! truncate to the smaller of the two operand orders; nothing is ever
//! extrapolated past a known coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::SeriesError;
use crate::scalar::Scalar;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 8;

/// `c_0 + c_1/z + ... + c_N/z^N`.
#[derive(Clone, PartialEq)]
pub struct ExteriorSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> ExteriorSeries<S> {
    pub fn new(coeffs: Vec<S>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(Self { coeffs })
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut coeffs = vec![S::zero(); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(S::zero(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `z^{-n}`, or `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&S> {
        self.coeffs.get(n)
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Drops coefficients beyond `order`. Never extends.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self { coeffs: self.coeffs[..keep].to_vec() }
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn conj(&self) -> Self {
        self.map(S::conj)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        Self { coeffs }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(S::zero(), |acc, k| {
                    acc + self.coeffs[k].clone() * other.coeffs[n - k].clone()
                })
            })
            .collect();
        Self { coeffs }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = S::one() / c0.clone();
        let mut out: Vec<S> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let acc = (1..=n).fold(S::zero(), |acc, k| {
                acc + self.coeffs[k].clone() * out[n - k].clone()
            });
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self { coeffs: out })
    }

    /// Formal power `u^e` for a series with constant term exactly one.
    ///
    /// Uses the recurrence `v_n = (1/n) Σ_{k=1}^{n} ((e+1)k - n) u_k v_{n-k}`,
    /// which agrees with `Σ_k C(e,k)(u-1)^k` and stays exact for rational `e`.
    pub fn binomial_pow(&self, e: &S::Real) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let e1 = S::from_real(e) + S::one();
        let mut v: Vec<S> = Vec::with_capacity(self.coeffs.len());
        v.push(S::one());
        for n in 1..self.coeffs.len() {
            let n_s = S::from_i64(n as i64);
            let acc = (1..=n).fold(S::zero(), |acc, k| {
                let w = e1.clone() * S::from_i64(k as i64) - n_s.clone();
                acc + w * self.coeffs[k].clone() * v[n - k].clone()
            });
            v.push(acc / n_s);
        }
        Ok(Self { coeffs: v })
    }

    /// Horner evaluation in `1/z` at a scalar point.
    pub fn evaluate_at(&self, z: &S) -> S {
        let x = S::one() / z.clone();
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl ExteriorSeries<Complex64> {
    /// Horner evaluation in `1/z` of the truncated series.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        evaluate_recip(&self.coeffs, z.inv())
    }
}

/// Horner evaluation of `Σ c_n x^n`.
#[inline]
pub(crate) fn evaluate_recip(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

impl<S: Scalar> Add for &ExteriorSeries<S> {
    type Output = ExteriorSeries<S>;
    fn add(self, rhs: Self) -> ExteriorSeries<S> {
        ExteriorSeries::add(self, rhs)
    }
}

impl<S: Scalar> Sub for &ExteriorSeries<S> {
    type Output = ExteriorSeries<S>;
    fn sub(self, rhs: Self) -> ExteriorSeries<S> {
        ExteriorSeries::sub(self, rhs)
    }
}

impl<S: Scalar> Mul for &ExteriorSeries<S> {
    type Output = ExteriorSeries<S>;
    fn mul(self, rhs: Self) -> ExteriorSeries<S> {
        ExteriorSeries::mul(self, rhs)
    }
}

impl<S: Scalar> Neg for &ExteriorSeries<S> {
    type Output = ExteriorSeries<S>;
    fn neg(self) -> ExteriorSeries<S> {
        self.map(|c| -c.clone())
    }
}

/// Normalized meromorphic series `z + b_0 + b_1/z + ... + b_N/z^N`.
#[derive(Clone, PartialEq)]
pub struct MeroSeries<S> {
    b: Vec<S>,
}

impl<S: Scalar> MeroSeries<S> {
    pub fn new(b: Vec<S>) -> Result<Self, SeriesError> {
        if b.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(Self { b })
    }

    /// The identity map `z`, truncated at `order`.
    pub fn identity(order: usize) -> Self {
        Self { b: vec![S::zero(); order + 1] }
    }

    /// Builds a series from a (possibly short) coefficient list, padding with
    /// zeros up to `order`.
    pub fn padded(mut b: Vec<S>, order: usize) -> Self {
        if b.len() < order + 1 {
            b.resize(order + 1, S::zero());
        }
        Self { b }
    }

    pub fn order(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self) -> &[S] {
        &self.b
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.b
    }

    pub fn conj(&self) -> Self {
        Self { b: self.b.iter().map(S::conj).collect() }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self { b: self.b[..keep].to_vec() }
    }

    /// `f(z)/z = 1 + b_0/z + ... + b_N/z^{N+1}`, exact through order `N+1`.
    pub fn over_z(&self) -> ExteriorSeries<S> {
        let mut coeffs = Vec::with_capacity(self.b.len() + 1);
        coeffs.push(S::one());
        coeffs.extend(self.b.iter().cloned());
        ExteriorSeries { coeffs }
    }

    /// `f'(z) = 1 - Σ n b_n z^{-(n+1)}`, exact through order `N+1`.
    pub fn derivative(&self) -> ExteriorSeries<S> {
        let mut coeffs = Vec::with_capacity(self.b.len() + 1);
        coeffs.push(S::one());
        coeffs.push(S::zero());
        for (n, bn) in self.b.iter().enumerate().skip(1) {
            coeffs.push(-(S::from_i64(n as i64) * bn.clone()));
        }
        ExteriorSeries { coeffs }
    }

    /// Compositional inverse `g` with `f(g(w)) = w + O(w^{-(N+1)})`.
    pub fn revert(&self) -> Self {
        crate::revert::revert_mero(self)
    }

    /// `self(g(w))`, expanded as `w + Σ c_n w^{-n}`.
    pub fn compose(&self, g: &Self) -> Result<Self, SeriesError> {
        crate::revert::compose_mero(self, g)
    }
}

/// Normalized analytic series `z + a_2 z^2 + ... + a_N z^N`.
#[derive(Clone, PartialEq)]
pub struct AnalyticSeries<S> {
    a: Vec<S>,
}

impl<S: Scalar> AnalyticSeries<S> {
    /// `a` holds `a_2..a_N`.
    pub fn new(a: Vec<S>) -> Result<Self, SeriesError> {
        if a.is_empty() {
            return Err(SeriesError::AnalyticOrderTooSmall);
        }
        Ok(Self { a })
    }

    pub fn identity(order: usize) -> Result<Self, SeriesError> {
        if order < 2 {
            return Err(SeriesError::AnalyticOrderTooSmall);
        }
        Ok(Self { a: vec![S::zero(); order - 1] })
    }

    pub fn order(&self) -> usize {
        self.a.len() + 1
    }

    /// Coefficients `a_2..a_N`.
    pub fn a(&self) -> &[S] {
        &self.a
    }

    /// Coefficient of `z^n`; `n = 1` yields one.
    pub fn coeff(&self, n: usize) -> Option<S> {
        match n {
            0 => Some(S::zero()),
            1 => Some(S::one()),
            _ => self.a.get(n - 2).cloned(),
        }
    }

    pub fn revert(&self) -> Self {
        crate::revert::revert_analytic(self)
    }

    /// `self(g(w))` truncated at the common order.
    pub fn compose(&self, g: &Self) -> Self {
        crate::revert::compose_analytic(self, g)
    }
}

macro_rules! json_series {
    ($ty:ident, $field:ident, $ctor:path) => {
        impl<S: Scalar> Serialize for $ty<S> {
            fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
                let values: Vec<Value> = self.$field.iter().map(S::to_json).collect();
                values.serialize(s)
            }
        }

        impl<'de, S: Scalar> Deserialize<'de> for $ty<S> {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let values = Vec::<Value>::deserialize(d)?;
                let coeffs = values
                    .iter()
                    .map(S::from_json)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(D::Error::custom)?;
                $ctor(coeffs).map_err(D::Error::custom)
            }
        }

        impl<S: Scalar> fmt::Debug for $ty<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_tuple(stringify!($ty)).field(&self.$field).finish()
            }
        }
    };
}

json_series!(ExteriorSeries, coeffs, ExteriorSeries::new);
json_series!(MeroSeries, b, MeroSeries::new);
json_series!(AnalyticSeries, a, AnalyticSeries::new);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> Rational {
        BigRational::new(n.into(), d.into())
    }

    fn ext(cs: &[(i64, i64)]) -> ExteriorSeries<Rational> {
        ExteriorSeries::new(cs.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn add_examples() {
        let x = ext(&[(1, 1), (2, 1)]);
        assert_eq!(&x + &ExteriorSeries::zero(1), x);

        let x = ext(&[(1, 1), (1, 1), (1, 1)]);
        let y = ext(&[(1, 1), (-1, 1)]);
        let s = &x + &y;
        assert_eq!(s.order(), 1);
        assert_eq!(s, ext(&[(2, 1), (0, 1)]));

        let p1 = q(3, 7);
        let a = ExteriorSeries::new(vec![q(0, 1), p1.clone()]).unwrap();
        let b = ExteriorSeries::new(vec![q(0, 1), -p1]).unwrap();
        assert_eq!(&a + &b, ExteriorSeries::zero(1));
    }

    #[test]
    fn mul_examples() {
        let u = q(5, 3);
        let a = ExteriorSeries::new(vec![q(1, 1), u.clone(), q(0, 1)]).unwrap();
        let b = ExteriorSeries::new(vec![q(1, 1), -u.clone(), q(0, 1)]).unwrap();
        let expect = ExteriorSeries::new(vec![q(1, 1), q(0, 1), -(u.clone() * u)]).unwrap();
        assert_eq!(&a * &b, expect);

        let x = ext(&[(1, 1), (2, 1), (2, 1)]);
        let y = ext(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(&x * &y, ext(&[(1, 1), (1, 1), (0, 1)]));
        assert_eq!(&x * &ExteriorSeries::one(2), x);

        // mixed orders truncate
        assert_eq!((&x * &ExteriorSeries::one(1)).order(), 1);
    }

    #[test]
    fn binomial_pow_examples() {
        let c = q(-4, 9);
        let u = ExteriorSeries::new(vec![q(1, 1), c.clone(), q(0, 1)]).unwrap();
        assert_eq!(u.binomial_pow(&q(0, 1)).unwrap(), ExteriorSeries::one(2));
        assert_eq!(
            u.binomial_pow(&q(2, 1)).unwrap(),
            ExteriorSeries::new(vec![q(1, 1), q(2, 1) * c.clone(), c.clone() * c.clone()]).unwrap()
        );

        // (1 + b0/z)^{1/2} = 1 + b0/(2z) - b0^2/(8z^2) + b0^3/(16 z^3) - ...
        let b0 = q(2, 5);
        let u = ExteriorSeries::new(vec![q(1, 1), b0.clone(), q(0, 1), q(0, 1)]).unwrap();
        let r = u.binomial_pow(&q(1, 2)).unwrap();
        let b2 = b0.clone() * b0.clone();
        let b3 = b2.clone() * b0.clone();
        assert_eq!(r.coeffs()[1], b0.clone() / q(2, 1));
        assert_eq!(r.coeffs()[2], -b2 / q(8, 1));
        assert_eq!(r.coeffs()[3], b3 / q(16, 1));
    }

    #[test]
    fn binomial_pow_rejects_bad_constant() {
        let u = ext(&[(2, 1), (1, 1)]);
        assert_eq!(u.binomial_pow(&q(1, 2)), Err(SeriesError::ConstantTermNotOne));
    }

    #[test]
    fn derivative_examples() {
        let id: MeroSeries<Rational> = MeroSeries::identity(3);
        assert_eq!(id.derivative(), ExteriorSeries::one(4));

        let f = MeroSeries::padded(vec![q(7, 2)], 2);
        assert_eq!(f.derivative(), ExteriorSeries::one(3));

        let b1 = q(-3, 11);
        let f = MeroSeries::padded(vec![q(0, 1), b1.clone()], 2);
        let d = f.derivative();
        assert_eq!(d.order(), 3);
        assert_eq!(d.coeffs(), &[q(1, 1), q(0, 1), -b1, q(0, 1)]);
    }

    #[test]
    fn reciprocal_round_trip() {
        let x = ext(&[(3, 2), (1, 5), (-2, 7), (4, 1)]);
        assert_eq!(&x * &x.recip().unwrap(), ExteriorSeries::one(3));
        assert_eq!(ext(&[(0, 1), (1, 1)]).recip(), Err(SeriesError::ZeroConstantTerm));
    }

    #[test]
    fn evaluate_examples() {
        let one = ExteriorSeries::<Complex64>::one(4);
        assert_eq!(one.evaluate(Complex64::new(0.3, -7.0)), Complex64::new(1.0, 0.0));

        let s = ExteriorSeries::new(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(2.0, 0.0),
        ])
        .unwrap();
        assert_eq!(s.evaluate(Complex64::new(2.0, 0.0)), Complex64::new(2.5, 0.0));

        // (z+1)/(z-1) = 1 + 2/z + 2/z^2 + ...
        let mut coeffs = vec![Complex64::new(2.0, 0.0); 13];
        coeffs[0] = Complex64::new(1.0, 0.0);
        let s = ExteriorSeries::new(coeffs).unwrap();
        let v = s.evaluate(Complex64::new(3.0, 0.0));
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-5);

        // exact evaluation agrees
        let e = ext(&[(1, 1), (2, 1), (2, 1)]);
        assert_eq!(e.evaluate_at(&q(2, 1)), q(5, 2));
    }

    #[test]
    fn json_shape() {
        let f = MeroSeries::new(vec![q(1, 2), q(-1, 3), q(4, 1)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["1/2","-1/3","4"]"#);
        let back: MeroSeries<Rational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);

        let z = ExteriorSeries::new(vec![Complex64::new(1.0, 0.5)]).unwrap();
        assert_eq!(serde_json::to_string(&z).unwrap(), r#"[{"re":"1.0","im":"0.5"}]"#);
        assert!(serde_json::from_str::<MeroSeries<Rational>>("[]").is_err());
    }
}
