//! Randomized search for class members with large `|b_0|` and `|b_1|`.
//!
//! Candidates are built from pairs of positive-real-part functions, filtered
//! by the `p_1 = -q_1` consistency constraint and by the sampled membership
//! test, and compared with the closed-form bounds. Any accepted candidate
//! above a bound is a falsification event.
//!
//! Each trial draws from its own ChaCha stream keyed by the master seed and
//! the trial index, and outcomes are reduced in index order, so reports do
//! not depend on the thread count.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_pair, BoundPair};
use crate::caratheodory::{random_atoms_with, CaratheodoryAtoms, DEFAULT_ATOMS};
use crate::error::SearchError;
use crate::membership::{MembershipReport, Sampler, SamplingGrid};
use crate::operator::solve_candidate;
use crate::params::ClassParams;
use crate::series::MeroSeries;

/// Slack allowed above a bound before a candidate counts as a violation.
pub const VIOLATION_EPS: f64 = 1e-9;
/// Default truncation order for searched candidates.
pub const DEFAULT_SEARCH_ORDER: usize = 32;
pub const DEFAULT_REFINE_STEPS: usize = 32;
pub const DEFAULT_BUDGET: usize = 10_000;
const INITIAL_STEP: f64 = 0.05;
const STEP_SHRINK: f64 = 0.7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub budget: usize,
    pub seed: u64,
    pub order: usize,
    pub refine_steps: usize,
    /// Atoms per Carathéodory function in a proposal.
    pub atoms: usize,
    pub grid: SamplingGrid,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            seed: 0,
            order: DEFAULT_SEARCH_ORDER,
            refine_steps: DEFAULT_REFINE_STEPS,
            atoms: DEFAULT_ATOMS,
            grid: SamplingGrid::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.budget == 0 {
            return Err(SearchError::ZeroBudget);
        }
        if self.order < 4 {
            return Err(SearchError::OrderTooSmall(self.order));
        }
        if self.atoms == 0 {
            return Err(SearchError::NoAtoms);
        }
        Ok(())
    }
}

/// How a proposal was generated. Coupled proposals keep their generating
/// coordinates so that refinement can move along the consistency manifold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Proposal {
    /// `p` has atoms in conjugate pairs `(w/2, ±θ)`, so its coefficients are
    /// real, and `q` is `p` with angles reflected `θ -> π - θ`, giving
    /// `q_n = (-1)^n p_n` and in particular `p_1 = -q_1`.
    Coupled { pairs: Vec<(f64, f64)>, rho: f64 },
    Independent { p: CaratheodoryAtoms, q: CaratheodoryAtoms },
}

impl Proposal {
    pub fn atoms(&self) -> (CaratheodoryAtoms, CaratheodoryAtoms) {
        match self {
            Proposal::Coupled { pairs, rho } => {
                let raw: Vec<(f64, f64)> =
                    pairs.iter().flat_map(|&(w, t)| [(w, t), (w, -t)]).collect();
                let p = CaratheodoryAtoms::from_unnormalized(&raw)
                    .and_then(|p| p.with_dilation(*rho))
                    .expect("positive weights and dilation in (0, 1]");
                let q = p.reflected();
                (p, q)
            }
            Proposal::Independent { p, q } => (p.clone(), q.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Random,
    Refine,
}

/// An accepted candidate above a bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Falsification {
    pub phase: Phase,
    /// Trial index for the random phase.
    pub trial: Option<usize>,
    /// `"b0"` or `"b1"`.
    pub coefficient: String,
    pub value: f64,
    pub bound: f64,
    pub proposal: Proposal,
    pub f: MeroSeries<Complex64>,
    pub membership: MembershipReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub params: ClassParams<f64>,
    pub bounds: BoundPair,
    pub empirical_b0_max: f64,
    pub empirical_b1_max: f64,
    pub gap_b0: f64,
    pub gap_b1: f64,
    pub accepted_candidates: usize,
    pub rejected_inconsistent: usize,
    pub rejected_nonmember: usize,
    pub seed: u64,
    pub budget: usize,
    pub order: usize,
    pub refine_steps: usize,
    pub falsification: Option<Falsification>,
}

impl BoundReport {
    pub fn falsified(&self) -> bool {
        self.falsification.is_some()
    }
}

#[derive(Clone, Debug)]
enum Outcome {
    Inconsistent,
    NonMember,
    Accepted { b0: f64, b1: f64 },
}

struct Evaluator<'a> {
    params: &'a ClassParams<f64>,
    order: usize,
    sampler: Sampler,
}

impl Evaluator<'_> {
    fn candidate(&self, proposal: &Proposal) -> Option<MeroSeries<Complex64>> {
        let (p, q) = proposal.atoms();
        let cand = solve_candidate(&p, &q, self.params, self.order).expect("atom series long enough");
        cand.consistent.then_some(cand.f)
    }

    fn evaluate(&self, proposal: &Proposal) -> Outcome {
        let Some(f) = self.candidate(proposal) else {
            return Outcome::Inconsistent;
        };
        let prep = self.sampler.prepare(&f, self.params);
        if !prep.certified || !self.sampler.passes(&prep, self.params) {
            return Outcome::NonMember;
        }
        Outcome::Accepted { b0: f.b()[0].norm(), b1: f.b()[1].norm() }
    }

    fn witness(&self, proposal: &Proposal, phase: Phase, trial: Option<usize>, coefficient: &str, value: f64, bound: f64) -> Falsification {
        let f = self.candidate(proposal).expect("accepted candidates are consistent");
        let prep = self.sampler.prepare(&f, self.params);
        let (min_margin, worst) = self.sampler.scan(&prep, self.params);
        Falsification {
            phase,
            trial,
            coefficient: coefficient.to_string(),
            value,
            bound,
            proposal: proposal.clone(),
            f,
            membership: MembershipReport {
                is_member: true,
                min_margin,
                worst_point: worst.into(),
                samples_used: self.sampler.samples(),
                heuristic: false,
            },
        }
    }
}

fn draw_proposal(seed: u64, trial: usize, atoms: usize) -> Proposal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let rho = 1.0 - rng.random::<f64>();
    if rng.random_bool(0.5) {
        let n_pairs = atoms.div_ceil(2);
        let pairs = (0..n_pairs)
            .map(|_| {
                let u: f64 = 1.0 - rng.random::<f64>();
                (-u.ln() + f64::MIN_POSITIVE, rng.random::<f64>() * PI)
            })
            .collect();
        Proposal::Coupled { pairs, rho }
    } else {
        let mut draw = || {
            random_atoms_with(&mut rng, atoms)
                .and_then(|a| a.with_dilation(rho))
                .expect("atoms >= 1")
        };
        let p = draw();
        let q = draw();
        Proposal::Independent { p, q }
    }
}

/// Coordinate `k` of a coupled proposal moved by `delta`: weights first,
/// then angles, then the dilation.
fn perturb(pairs: &[(f64, f64)], rho: f64, k: usize, delta: f64) -> Option<Proposal> {
    let n = pairs.len();
    let mut pairs = pairs.to_vec();
    let mut rho = rho;
    if k < n {
        pairs[k].0 += delta;
        if !(pairs[k].0 > 0.0) {
            return None;
        }
    } else if k < 2 * n {
        pairs[k - n].1 = (pairs[k - n].1 + delta).rem_euclid(TAU);
    } else {
        rho += delta;
        if !(rho > 0.0 && rho <= 1.0) {
            return None;
        }
    }
    Some(Proposal::Coupled { pairs, rho })
}

struct Incumbent {
    proposal: Proposal,
    b: [f64; 2],
}

/// Hill climbing on one objective (`which` = 0 for `|b_0|`, 1 for `|b_1|`).
/// Returns every accepted improvement in order.
fn refine(eval: &Evaluator<'_>, start: &Incumbent, which: usize, steps: usize) -> Vec<Incumbent> {
    let Proposal::Coupled { pairs, rho } = &start.proposal else {
        return Vec::new();
    };
    let (mut pairs, mut rho) = (pairs.clone(), *rho);
    let mut best = start.b[which];
    let dims = 2 * pairs.len() + 1;
    let mut step = INITIAL_STEP;
    let mut out = Vec::new();
    for i in 0..steps {
        let k = i % dims;
        let mut improved = false;
        for delta in [step, -step] {
            let Some(prop) = perturb(&pairs, rho, k, delta) else { continue };
            if let Outcome::Accepted { b0, b1 } = eval.evaluate(&prop) {
                let b = [b0, b1];
                if b[which] > best {
                    best = b[which];
                    if let Proposal::Coupled { pairs: p, rho: r } = &prop {
                        pairs = p.clone();
                        rho = *r;
                    }
                    out.push(Incumbent { proposal: prop, b });
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= STEP_SHRINK;
        }
    }
    out
}

/// Seeded randomized search; identical inputs give identical reports.
pub fn search(params: &ClassParams<f64>, cfg: &SearchConfig) -> Result<BoundReport, SearchError> {
    params.validate()?;
    cfg.validate()?;
    if cfg.order < cfg.grid.min_order {
        return Err(crate::error::MembershipError::OrderTooSmall { order: cfg.order, min: cfg.grid.min_order }.into());
    }
    let bounds = bound_pair(params)?;
    let limits = [bounds.b0_bound + VIOLATION_EPS, bounds.b1_bound + VIOLATION_EPS];
    let eval = Evaluator { params, order: cfg.order, sampler: Sampler::new(&cfg.grid) };

    let outcomes: Vec<(Proposal, Outcome)> = (0..cfg.budget)
        .into_par_iter()
        .map(|trial| {
            let prop = draw_proposal(cfg.seed, trial, cfg.atoms);
            let out = eval.evaluate(&prop);
            (prop, out)
        })
        .collect();

    let mut accepted = 0;
    let mut inconsistent = 0;
    let mut nonmember = 0;
    let mut maxima = [0.0f64; 2];
    let mut incumbents: [Option<Incumbent>; 2] = [None, None];
    let mut falsification = None;
    let names = ["b0", "b1"];
    for (trial, (prop, out)) in outcomes.into_iter().enumerate() {
        match out {
            Outcome::Inconsistent => inconsistent += 1,
            Outcome::NonMember => nonmember += 1,
            Outcome::Accepted { b0, b1 } => {
                accepted += 1;
                let b = [b0, b1];
                for w in 0..2 {
                    if falsification.is_none() && b[w] > limits[w] {
                        falsification = Some(eval.witness(&prop, Phase::Random, Some(trial), names[w], b[w], limits[w] - VIOLATION_EPS));
                    }
                }
                for w in 0..2 {
                    if b[w] > maxima[w] {
                        maxima[w] = b[w];
                        incumbents[w] = Some(Incumbent { proposal: prop.clone(), b });
                    }
                }
            }
        }
    }

    let refined: Vec<Vec<Incumbent>> = (0..2)
        .into_par_iter()
        .map(|w| incumbents[w].as_ref().map_or_else(Vec::new, |inc| refine(&eval, inc, w, cfg.refine_steps)))
        .collect();
    for inc in refined.iter().flatten() {
        for w in 0..2 {
            if falsification.is_none() && inc.b[w] > limits[w] {
                falsification = Some(eval.witness(&inc.proposal, Phase::Refine, None, names[w], inc.b[w], limits[w] - VIOLATION_EPS));
            }
            maxima[w] = maxima[w].max(inc.b[w]);
        }
    }

    Ok(BoundReport {
        params: params.clone(),
        empirical_b0_max: maxima[0],
        empirical_b1_max: maxima[1],
        gap_b0: bounds.b0_bound - maxima[0],
        gap_b1: bounds.b1_bound - maxima[1],
        bounds,
        accepted_candidates: accepted,
        rejected_inconsistent: inconsistent,
        rejected_nonmember: nonmember,
        seed: cfg.seed,
        budget: cfg.budget,
        order: cfg.order,
        refine_steps: cfg.refine_steps,
        falsification,
    })
}
