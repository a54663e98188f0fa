//! Numerical membership test for the two classes.
//!
//! `D[f]` and `D[g]` (with `g` the reverted series) are evaluated on a
//! conjugate-symmetric grid of circles `|z| = r > 1`. A failing sample is a
//! genuine witness of non-membership only as far as the truncated series can
//! be trusted; the report is marked heuristic whenever the estimated tail of
//! any evaluated series is not negligible at the smallest radius.
//!
//! Univalence of `f` and `g` is never checked.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::MembershipError;
use crate::operator::operator_series;
use crate::params::{ClassParams, Variant};
use crate::series::{evaluate_recip, MeroSeries};

/// Strict inequalities become `margin > MARGIN_EPS`.
pub const MARGIN_EPS: f64 = 1e-9;
/// Largest tolerated tail estimate for a certified evaluation.
pub const TAIL_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingGrid {
    pub radii: Vec<f64>,
    /// Equispaced points per circle; rounded up to an even count.
    pub angles: usize,
    pub min_order: usize,
    pub margin_eps: f64,
    pub tail_threshold: f64,
}

impl Default for SamplingGrid {
    fn default() -> Self {
        let mut radii: Vec<f64> = (1..=12).map(|j| 1.0 + 0.5f64.powi(j)).collect();
        radii.extend([2.0, 5.0, 10.0, 100.0]);
        Self {
            radii,
            angles: 720,
            min_order: 8,
            margin_eps: MARGIN_EPS,
            tail_threshold: TAIL_THRESHOLD,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub is_member: bool,
    /// Smallest `Re D - α` (starlike) or `απ/2 - |arg D|` (strongly
    /// starlike) over all samples of both `f` and `g`.
    pub min_margin: f64,
    pub worst_point: Point,
    pub samples_used: usize,
    /// The truncation could not be certified; a pass is heuristic only.
    pub heuristic: bool,
}

/// Precomputed sample points, radii ascending.
#[derive(Clone, Debug)]
pub(crate) struct Sampler {
    /// `(z, 1/z)` pairs.
    points: Vec<(Complex64, Complex64)>,
    min_radius: f64,
    margin_eps: f64,
    tail_threshold: f64,
    min_order: usize,
}

impl Sampler {
    pub(crate) fn new(grid: &SamplingGrid) -> Self {
        let m = grid.angles.max(2).div_ceil(2) * 2;
        let mut half: Vec<Complex64> = (0..=m / 2)
            .map(|k| {
                let t = TAU * k as f64 / m as f64;
                Complex64::new(t.cos(), t.sin())
            })
            .collect();
        half[0] = Complex64::new(1.0, 0.0);
        half[m / 2] = Complex64::new(-1.0, 0.0);
        // second half mirrors the first exactly
        let unit: Vec<Complex64> = half
            .iter()
            .copied()
            .chain((m / 2 + 1..m).map(|k| half[m - k].conj()))
            .collect();
        let mut radii = grid.radii.clone();
        radii.sort_by(f64::total_cmp);
        let points = radii
            .iter()
            .flat_map(|&r| unit.iter().map(move |u| (u * r, u.conj() / r)))
            .collect();
        Self {
            points,
            min_radius: radii.first().copied().unwrap_or(1.0),
            margin_eps: grid.margin_eps,
            tail_threshold: grid.tail_threshold,
            min_order: grid.min_order,
        }
    }
}

fn margin(d: Complex64, params: &ClassParams<f64>) -> f64 {
    match params.variant {
        Variant::Starlike => d.re - params.alpha,
        Variant::StronglyStarlike => {
            let limit = params.alpha * FRAC_PI_2;
            if d.re == 0.0 && d.im == 0.0 {
                limit - PI
            } else {
                limit - d.im.atan2(d.re).abs()
            }
        }
    }
}

/// Estimated `Σ_{n>N} |c_n| r^{-n}` from the last three coefficients,
/// assuming geometric decay at the envelope ratio
/// `max(|c_N|, |c_{N-1}|) / max(|c_{N-1}|, |c_{N-2}|)`.
pub fn tail_estimate(coeffs: &[Complex64], r: f64) -> f64 {
    let n = coeffs.len();
    if n == 0 {
        return 0.0;
    }
    let mag = |i: usize| coeffs[i].norm();
    let last: Vec<f64> = (n.saturating_sub(3)..n).map(mag).collect();
    if last.iter().all(|&m| m == 0.0) {
        return 0.0;
    }
    if last.len() < 3 {
        return f64::INFINITY;
    }
    let (m0, m1, m2) = (last[0], last[1], last[2]);
    let num = m1.max(m2);
    let den = m0.max(m1);
    if den == 0.0 {
        return f64::INFINITY;
    }
    let ratio = num / den / r;
    if !(ratio < 1.0) {
        return f64::INFINITY;
    }
    let top = (n - 1) as i32;
    num * r.powi(-top) * ratio / (1.0 - ratio)
}

/// Series evaluated by the check, plus whether the truncation is trusted.
pub(crate) struct Prepared {
    d_f: Vec<Complex64>,
    d_g: Vec<Complex64>,
    pub(crate) certified: bool,
}

impl Sampler {
    pub(crate) fn prepare(&self, f: &MeroSeries<Complex64>, params: &ClassParams<f64>) -> Prepared {
        let g = f.revert();
        let d_f = operator_series(f, params).into_coeffs();
        let d_g = operator_series(&g, params).into_coeffs();
        let r = self.min_radius;
        let tail = [f.b(), g.b(), &d_f[..], &d_g[..]]
            .into_iter()
            .map(|c| tail_estimate(c, r))
            .fold(0.0, f64::max);
        Prepared { d_f, d_g, certified: tail < self.tail_threshold }
    }

    /// Full scan: minimum margin and its location.
    pub(crate) fn scan(&self, prep: &Prepared, params: &ClassParams<f64>) -> (f64, Complex64) {
        let mut best = (f64::INFINITY, Complex64::new(f64::NAN, f64::NAN));
        for series in [&prep.d_f, &prep.d_g] {
            for &(z, x) in &self.points {
                let m = margin(evaluate_recip(series, x), params);
                if m < best.0 {
                    best = (m, z);
                }
            }
        }
        best
    }

    /// Early-exit scan: `true` iff every margin exceeds the tolerance.
    pub(crate) fn passes(&self, prep: &Prepared, params: &ClassParams<f64>) -> bool {
        [&prep.d_f, &prep.d_g].into_iter().all(|series| {
            self.points
                .iter()
                .all(|&(_, x)| margin(evaluate_recip(series, x), params) > self.margin_eps)
        })
    }

    pub(crate) fn samples(&self) -> usize {
        2 * self.points.len()
    }

    pub(crate) fn check_order(&self, f: &MeroSeries<Complex64>) -> Result<(), MembershipError> {
        if f.order() < self.min_order {
            return Err(MembershipError::OrderTooSmall { order: f.order(), min: self.min_order });
        }
        Ok(())
    }
}

/// Samples the class conditions for `f` and its inverse.
pub fn membership_check(
    f: &MeroSeries<Complex64>,
    params: &ClassParams<f64>,
    grid: &SamplingGrid,
) -> Result<MembershipReport, MembershipError> {
    params.validate()?;
    let sampler = Sampler::new(grid);
    sampler.check_order(f)?;
    let prep = sampler.prepare(f, params);
    let (min_margin, worst) = sampler.scan(&prep, params);
    Ok(MembershipReport {
        is_member: min_margin > grid.margin_eps,
        min_margin,
        worst_point: worst.into(),
        samples_used: sampler.samples(),
        heuristic: !prep.certified,
    })
}
