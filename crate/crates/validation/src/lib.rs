//! Fixed search grid shared by the acceptance harness. The package sorts
//! after the library crates so its binary runs last in a workspace test.

use merobound_cli::{execute, parse, Execution};

pub const BUDGET: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct GridPoint {
    pub variant: &'static str,
    pub alpha: &'static str,
    pub lambda: &'static str,
    pub mu: &'static str,
    pub seed: u64,
}

/// Both variants, three orders and two operator parameter pairs, one fixed
/// seed per point.
pub fn search_grid() -> Vec<GridPoint> {
    let mut out = Vec::new();
    for variant in ["starlike", "strongly_starlike"] {
        for alpha in ["0.1", "0.5", "0.9"] {
            for (lambda, mu) in [("1", "0"), ("2", "0.5")] {
                let seed = 1 + out.len() as u64;
                out.push(GridPoint { variant, alpha, lambda, mu, seed });
            }
        }
    }
    out
}

impl GridPoint {
    pub fn argv(&self) -> Vec<String> {
        let budget = BUDGET.to_string();
        let seed = self.seed.to_string();
        [
            "merobound", "search", "--variant", self.variant, "--alpha", self.alpha, "--lambda", self.lambda,
            "--mu", self.mu, "--budget", &budget, "--seed", &seed,
        ]
        .into_iter()
        .map(String::from)
        .collect()
    }

    pub fn label(&self) -> String {
        format!("{} alpha={} lambda={} mu={} seed={}", self.variant, self.alpha, self.lambda, self.mu, self.seed)
    }

    /// Runs the `search` subcommand in process.
    pub fn run(&self) -> Execution {
        let cli = parse(self.argv()).expect("valid arguments");
        execute(&cli, None).unwrap_or_else(|e| panic!("{}: {e:?}", self.label()))
    }
}
