//! Compositional reversion by coefficient matching.
//!
//! Both reversions reduce to one triangular solve on an ordinary power series
//! `F(t) = t + F_2 t^2 + ...`. For the exterior case put `t = 1/z`: with
//! `U(t) = f(z)/z = 1 + b_0 t + b_1 t^2 + ...` the map `1/f(1/t)` equals
//! `t / U(t)`, its inverse `T(s)` satisfies `g(w) = 1/T(1/w)`, and every
//! truncation stays exact.

use crate::error::SeriesError;
use crate::scalar::Scalar;
use crate::series::{AnalyticSeries, ExteriorSeries, MeroSeries};

/// Inverse of `F(t) = t + F_2 t^2 + ... + F_M t^M`; `f[k]` is the coefficient
/// of `t^k` (`f[0]` ignored, `f[1]` must be one). Returns `T_0..T_M`.
///
/// At step `m` the powers `[s^m] T^k` for `k >= 2` only involve `T_1..T_{m-1}`,
/// so each `T_m` is solved for directly from `[s^m] F(T(s)) = δ_{m,1}`.
pub(crate) fn revert_power_series<S: Scalar>(f: &[S]) -> Vec<S> {
    let m_max = f.len() - 1;
    let mut t = vec![S::zero(); m_max + 1];
    // powers[k][m] = [s^m] T^k
    let mut powers = vec![vec![S::zero(); m_max + 1]; m_max + 1];
    for m in 1..=m_max {
        let mut acc = S::zero();
        for k in 2..=m {
            let mut c = S::zero();
            for j in 1..=(m + 1 - k) {
                c = c + t[j].clone() * powers[k - 1][m - j].clone();
            }
            acc = acc + f[k].clone() * c.clone();
            powers[k][m] = c;
        }
        t[m] = if m == 1 { S::one() } else { -acc };
        powers[1][m] = t[m].clone();
    }
    t
}

pub(crate) fn revert_mero<S: Scalar>(f: &MeroSeries<S>) -> MeroSeries<S> {
    let n = f.order();
    // R = 1/U exact through t^{N+1}
    let recip = f.over_z().recip().expect("constant term of f(z)/z is one");
    let mut big_f = Vec::with_capacity(n + 3);
    big_f.push(S::zero());
    big_f.extend(recip.into_coeffs());
    let t = revert_power_series(&big_f);
    // T(s) = s V(s), V = 1 + T_2 s + ... + T_{N+2} s^{N+1}
    let v = ExteriorSeries::new(t[1..].to_vec()).expect("non-empty");
    let inv = v.recip().expect("V(0) = 1");
    MeroSeries::new(inv.into_coeffs()[1..].to_vec()).expect("non-empty")
}

pub(crate) fn revert_analytic<S: Scalar>(h: &AnalyticSeries<S>) -> AnalyticSeries<S> {
    let n = h.order();
    let f: Vec<S> = (0..=n).map(|k| h.coeff(k).expect("within order")).collect();
    let t = revert_power_series(&f);
    AnalyticSeries::new(t[2..].to_vec()).expect("order >= 2")
}

/// `f(g(w)) = g + Σ_k b_k g^{-k}` with `g^{-k} = w^{-k} E^{-k}`, `E = g/w`.
pub(crate) fn compose_mero<S: Scalar>(
    f: &MeroSeries<S>,
    g: &MeroSeries<S>,
) -> Result<MeroSeries<S>, SeriesError> {
    if f.order() != g.order() {
        return Err(SeriesError::OrderMismatch(f.order(), g.order()));
    }
    let n = f.order();
    let e_inv = g.over_z().truncate(n).recip()?;
    let mut out: Vec<S> = g.b().to_vec();
    let mut power: ExteriorSeries<S> = ExteriorSeries::one(n);
    for (k, bk) in f.b().iter().enumerate() {
        for (m, slot) in out.iter_mut().enumerate().skip(k) {
            *slot = slot.clone() + bk.clone() * power.coeffs()[m - k].clone();
        }
        power = power.mul(&e_inv);
    }
    MeroSeries::new(out)
}

/// `h(g(w))` for normalized analytic series, truncated at the common order.
pub(crate) fn compose_analytic<S: Scalar>(
    h: &AnalyticSeries<S>,
    g: &AnalyticSeries<S>,
) -> AnalyticSeries<S> {
    let n = h.order().min(g.order());
    let gc: Vec<S> = (0..=n).map(|k| g.coeff(k).expect("within order")).collect();
    let mul = |a: &[S], b: &[S]| -> Vec<S> {
        (0..=n)
            .map(|m| (0..=m).fold(S::zero(), |acc, i| acc + a[i].clone() * b[m - i].clone()))
            .collect()
    };
    let mut out = gc.clone();
    let mut power = gc.clone();
    for k in 2..=n {
        power = mul(&power, &gc);
        let hk = h.coeff(k).expect("within order");
        for (slot, p) in out.iter_mut().zip(&power) {
            *slot = slot.clone() + hk.clone() * p.clone();
        }
    }
    AnalyticSeries::new(out[2..].to_vec()).expect("order >= 2")
}
