use std::fmt::Write as _;

use merobound::bounds::BoundRow;
use merobound::identities::Identity;
use merobound::scalar::{fmt_g17, is_exact_syntax, parse_rational_or_decimal, Rational, Scalar};
use merobound::search::DEFAULT_SEARCH_ORDER;
use merobound::{
    bound_pair_exact, membership_check, search, verify_coefficient_equations, AnalyticSeries, ClassParams, MeroSeries,
    SamplingGrid, SearchConfig, Variant,
};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use serde_json::json;

use crate::args::{BoundsArgs, ClassArgs, Format, GridArgs, InvertArgs, MemberArgs, SearchArgs, VariantArg, VerifyArgs};
use crate::{Failure, EXIT_FALSIFIED, EXIT_OK, EXIT_VERIFICATION};

/// Result text plus process exit status.
pub struct Outcome {
    pub text: String,
    pub status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, status: EXIT_OK }
    }
}

/// Largest number of points a single grid axis may expand to.
const MAX_GRID_POINTS: usize = 100_000;

fn number(s: &str) -> Result<Rational, Failure> {
    parse_rational_or_decimal(s).map_err(|e| Failure::Usage(e.to_string()))
}

/// `start:stop:step`, a comma list, or one value; all exact.
pub fn parse_grid(s: &str) -> Result<Vec<Rational>, Failure> {
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(Failure::Usage(format!("grid `{s}` must be start:stop:step")));
        };
        let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
        if !step.is_positive() {
            return Err(Failure::Usage(format!("grid `{s}` needs a positive step")));
        }
        if stop < start {
            return Err(Failure::Usage(format!("grid `{s}` has stop below start")));
        }
        let mut out = Vec::new();
        let mut x = start;
        while x <= stop {
            if out.len() == MAX_GRID_POINTS {
                return Err(Failure::Usage(format!("grid `{s}` exceeds {MAX_GRID_POINTS} points")));
            }
            out.push(x.clone());
            x += &step;
        }
        Ok(out)
    } else {
        s.split(',').map(|v| number(v.trim())).collect()
    }
}

fn variants(list: &[VariantArg]) -> Vec<Variant> {
    if list.is_empty() {
        Variant::ALL.to_vec()
    } else {
        let mut out: Vec<Variant> = Vec::new();
        for v in list {
            let v = Variant::from(*v);
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }
}

fn to_json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn bounds(args: &BoundsArgs, format: Format) -> Result<Outcome, Failure> {
    let (alphas, lambdas, mus) = (parse_grid(&args.alpha)?, parse_grid(&args.lambda)?, parse_grid(&args.mu)?);
    let mut rows = Vec::new();
    for v in variants(&args.variant) {
        for lambda in &lambdas {
            for mu in &mus {
                for alpha in &alphas {
                    let p = ClassParams { alpha: alpha.clone(), lambda: lambda.clone(), mu: mu.clone(), variant: v };
                    match bound_pair_exact(&p) {
                        Ok(pair) => rows.push(BoundRow::from_pair(&pair)),
                        Err(e) => eprintln!("warning: skipping {v} alpha={alpha} lambda={lambda} mu={mu}: {e}"),
                    }
                }
            }
        }
    }
    let text = match format {
        Format::Json => to_json_text(&rows),
        Format::Csv => {
            let mut s = format!("{}\n", BoundRow::CSV_HEADER);
            for r in &rows {
                s.push_str(&r.to_csv());
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

pub fn verify(args: &VerifyArgs, seed: u64, format: Format) -> Result<Outcome, Failure> {
    let mutant = match &args.inject_mutant {
        None => None,
        Some(name) => Some(
            Identity::from_name(name).ok_or_else(|| Failure::Usage(format!("unknown identity `{name}`")))?,
        ),
    };
    let trials = usize::try_from(args.trials).map_err(|_| Failure::Usage("too many trials".into()))?;
    let summaries: Vec<_> = variants(&args.variant)
        .into_iter()
        .map(|v| verify_coefficient_equations(v, trials, seed, mutant))
        .collect();
    let passed = summaries.iter().all(|s| s.passed);
    for s in &summaries {
        for r in s.results.iter().filter(|r| !r.passed) {
            let w = serde_json::to_string(&r.witness).expect("serializable");
            eprintln!("identity {} failed; witness: {w}", r.identity);
        }
    }
    let text = match format {
        Format::Json => to_json_text(&json!({ "passed": passed, "summaries": summaries })),
        Format::Csv => {
            let mut s = String::from("variant,identity,passed,points_checked\n");
            for sum in &summaries {
                for r in &sum.results {
                    let _ = writeln!(s, "{},{},{},{}", sum.variant, r.identity, r.passed, r.points_checked);
                }
            }
            s
        }
    };
    Ok(Outcome { text, status: if passed { EXIT_OK } else { EXIT_VERIFICATION } })
}

fn coefficient_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).collect()
}

#[derive(Serialize)]
struct Inversion {
    kind: &'static str,
    exact: bool,
    order: usize,
    input: Vec<serde_json::Value>,
    inverse: Vec<serde_json::Value>,
}

fn inversion_csv<S: Scalar>(label: &str, first: usize, inverse: &[S]) -> String {
    let mut s = if S::EXACT { format!("{label},coefficient\n") } else { format!("{label},re,im\n") };
    for (k, c) in inverse.iter().enumerate() {
        if S::EXACT {
            let v = c.to_json();
            let _ = writeln!(s, "{},{}", k + first, v.as_str().unwrap_or_default());
        } else {
            let z = c.to_complex64();
            let _ = writeln!(s, "{},{},{}", k + first, fmt_g17(z.re + 0.0), fmt_g17(z.im + 0.0));
        }
    }
    s
}

fn invert_with<S: Scalar>(
    mero: bool,
    values: Vec<S>,
    order: Option<usize>,
    format: Format,
) -> Result<Outcome, Failure> {
    let (input, inverse, order, first) = if mero {
        let n = order.unwrap_or(values.len() - 1).max(values.len() - 1);
        let f = MeroSeries::padded(values, n);
        let g = f.revert();
        (f.into_coeffs(), g.into_coeffs(), n, 0)
    } else {
        let n = order.unwrap_or(values.len() + 1).max(values.len() + 1);
        let mut a = values;
        a.resize(n - 1, S::zero());
        let h = AnalyticSeries::new(a).map_err(|e| Failure::Usage(e.to_string()))?;
        let inv = h.revert();
        (h.a().to_vec(), inv.a().to_vec(), n, 2)
    };
    let text = match format {
        Format::Json => to_json_text(&Inversion {
            kind: if mero { "mero" } else { "analytic" },
            exact: S::EXACT,
            order,
            input: input.iter().map(S::to_json).collect(),
            inverse: inverse.iter().map(S::to_json).collect(),
        }),
        Format::Csv => inversion_csv(if mero { "n" } else { "power" }, first, &inverse),
    };
    Ok(Outcome::ok(text))
}

pub fn invert(args: &InvertArgs, order: Option<usize>, format: Format) -> Result<Outcome, Failure> {
    let (mero, list) = match (&args.mero, &args.analytic) {
        (Some(m), None) => (true, m),
        (None, Some(a)) => (false, a),
        _ => return Err(Failure::Usage("give exactly one of --mero or --analytic".into())),
    };
    let items = coefficient_list(list);
    let exact: Vec<Rational> = items.iter().map(|s| number(s)).collect::<Result<_, _>>()?;
    if items.iter().all(|s| is_exact_syntax(s)) {
        invert_with(mero, exact, order, format)
    } else {
        let floats = exact.iter().map(|r| Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)).collect();
        invert_with(mero, floats, order, format)
    }
}

fn class_params(c: &ClassArgs) -> Result<ClassParams<f64>, Failure> {
    let exact = ClassParams {
        alpha: number(&c.alpha)?,
        lambda: number(&c.lambda)?,
        mu: number(&c.mu)?,
        variant: c.variant.into(),
    };
    exact.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(exact.to_f64())
}

fn sampling_grid(g: &GridArgs, min_order: usize) -> Result<SamplingGrid, Failure> {
    let mut grid = SamplingGrid { angles: g.angles, min_order, ..SamplingGrid::default() };
    if let Some(radii) = &g.radii {
        if radii.is_empty() || radii.iter().any(|r| !(*r > 1.0) || !r.is_finite()) {
            return Err(Failure::Usage("radii must be finite and greater than 1".into()));
        }
        grid.radii = radii.clone();
    }
    if g.angles < 2 {
        return Err(Failure::Usage("need at least 2 angles".into()));
    }
    Ok(grid)
}

pub fn member(args: &MemberArgs, order: Option<usize>, format: Format) -> Result<Outcome, Failure> {
    let params = class_params(&args.class)?;
    let b: Vec<Complex64> = coefficient_list(&args.coeffs)
        .into_iter()
        .map(|s| number(s).map(|r| Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)))
        .collect::<Result<_, _>>()?;
    let min_order = SamplingGrid::default().min_order;
    let n = order.unwrap_or(min_order).max(b.len() - 1);
    let grid = sampling_grid(&args.grid, min_order)?;
    let f = MeroSeries::padded(b, n);
    let report = membership_check(&f, &params, &grid).map_err(|e| Failure::Usage(e.to_string()))?;
    eprintln!("note: univalence of f and of its inverse is not checked");
    if report.heuristic {
        eprintln!("note: series tail not negligible at the smallest radius; the result is heuristic");
    }
    let text = match format {
        Format::Json => to_json_text(&report),
        Format::Csv => format!(
            "is_member,min_margin,worst_re,worst_im,samples_used,heuristic\n{},{},{},{},{},{}\n",
            report.is_member,
            fmt_g17(report.min_margin),
            fmt_g17(report.worst_point.re),
            fmt_g17(report.worst_point.im),
            report.samples_used,
            report.heuristic
        ),
    };
    Ok(Outcome::ok(text))
}

pub fn search_cmd(args: &SearchArgs, seed: u64, order: Option<usize>, format: Format) -> Result<Outcome, Failure> {
    let params = class_params(&args.class)?;
    let order = order.unwrap_or(DEFAULT_SEARCH_ORDER);
    let cfg = SearchConfig {
        budget: args.budget,
        seed,
        order,
        refine_steps: args.refine_steps,
        atoms: args.atoms,
        grid: sampling_grid(&args.grid, SamplingGrid::default().min_order.min(order))?,
    };
    let report = search(&params, &cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(w) = &report.falsification {
        eprintln!(
            "falsification: accepted candidate has |{}| = {} above the bound {}",
            w.coefficient,
            fmt_g17(w.value),
            fmt_g17(w.bound)
        );
    }
    let text = match format {
        Format::Json => to_json_text(&report),
        Format::Csv => {
            let p = &report.params;
            format!(
                "variant,alpha,lambda,mu,b0_bound,b1_bound,empirical_b0_max,empirical_b1_max,gap_b0,gap_b1,\
                 accepted_candidates,rejected_inconsistent,rejected_nonmember,seed,budget,falsified\n\
                 {},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                p.variant,
                fmt_g17(p.alpha),
                fmt_g17(p.lambda),
                fmt_g17(p.mu),
                fmt_g17(report.bounds.b0_bound),
                fmt_g17(report.bounds.b1_bound),
                fmt_g17(report.empirical_b0_max),
                fmt_g17(report.empirical_b1_max),
                fmt_g17(report.gap_b0),
                fmt_g17(report.gap_b1),
                report.accepted_candidates,
                report.rejected_inconsistent,
                report.rejected_nonmember,
                report.seed,
                report.budget,
                report.falsified()
            )
        }
    };
    Ok(Outcome { text, status: if report.falsified() { EXIT_FALSIFIED } else { EXIT_OK } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn grid_forms() {
        let g = parse_grid("0:0.9:0.1").unwrap();
        assert_eq!(g.len(), 10);
        assert_eq!(g[9], q(9, 10));
        assert_eq!(parse_grid("1/2").unwrap(), vec![q(1, 2)]);
        assert_eq!(parse_grid("1,2.5").unwrap(), vec![q(1, 1), q(5, 2)]);
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("x").is_err());
        assert_eq!(parse_grid("0:1:0.1").unwrap().len(), 11);
    }
}
