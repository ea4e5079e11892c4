//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::process::Command;

use csgreen_core::verify::{suite, CheckOutcome, SuiteOptions};
use csgreen_core::VerifyError;

const SEED: u64 = 42;

struct Criterion {
    id: u8,
    title: &'static str,
    outcomes: Vec<CheckOutcome>,
}

impl Criterion {
    fn passed(&self) -> bool {
        !self.outcomes.is_empty() && self.outcomes.iter().all(|c| c.passed)
    }

    fn line(&self) -> String {
        let worst = self
            .outcomes
            .iter()
            .max_by(|a, b| {
                let ra = if a.threshold > 0.0 { a.max_rel / a.threshold } else { a.max_rel };
                let rb = if b.threshold > 0.0 { b.max_rel / b.threshold } else { b.max_rel };
                ra.total_cmp(&rb)
            })
            .map(|c| format!("worst {} = {:.2e} (limit {:.0e})", c.name, c.max_rel, c.threshold))
            .unwrap_or_else(|| "no checks ran".into());
        format!("AC-{:02} {:<32} {}  {worst}", self.id, self.title, if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn from_suite(
    id: u8,
    title: &'static str,
    f: impl FnOnce(&SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError>,
) -> Criterion {
    let opts = SuiteOptions::acceptance(SEED);
    let outcomes = f(&opts).unwrap_or_else(|e| vec![CheckOutcome::new(format!("error: {e}"), f64::INFINITY, 0.0)]);
    Criterion { id, title, outcomes }
}

fn csgreen(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_csgreen")).args(args).output().expect("run csgreen")
}

fn cli_determinism() -> Criterion {
    let args = ["eval2d", "--source", "force", "--quantities", "U,Omega,Sigma,Mu,T,M", "--normal", "0.6,0.8", "--grid", "-1:1:21,-1:1:21"];
    let first = csgreen(&args);
    let second = csgreen(&args);
    let rows = String::from_utf8_lossy(&first.stdout).lines().count();
    let identical = first.status.success() && first.stdout == second.stdout && !first.stdout.is_empty();
    let verify = csgreen(&["verify", "--mu", "1", "--nu", "0.3", "--length-scale", "0.1", "--seed", "42"]);
    let outcomes = vec![
        CheckOutcome::new(
            format!("eval2d 21x21 byte-identical ({} lines)", rows),
            if identical { 0.0 } else { 1.0 },
            0.0,
        ),
        CheckOutcome::new(
            format!("verify exit status {:?}", verify.status.code()),
            if verify.status.code() == Some(0) { 0.0 } else { 1.0 },
            0.0,
        ),
    ];
    Criterion { id: 10, title: "CLI determinism", outcomes }
}

fn main() {
    let criteria = vec![
        from_suite(1, "constitutive consistency", suite::constitutive),
        from_suite(2, "field equation residual", suite::pde),
        from_suite(3, "balance integrals", suite::balance),
        from_suite(4, "duality", suite::duality),
        from_suite(5, "equivoluminal deformation", suite::equivoluminal),
        from_suite(6, "classical limit", suite::cauchy_limit),
        from_suite(7, "special functions", |_| Ok(suite::special_functions())),
        from_suite(8, "skew-stress structure", suite::skew_structure),
        from_suite(9, "plane moment-traction identity", suite::moment_traction_2d),
        cli_determinism(),
    ];
    let mut failed = 0;
    for c in &criteria {
        println!("{}", c.line());
        if !c.passed() {
            failed += 1;
            for o in c.outcomes.iter().filter(|o| !o.passed) {
                println!("       {o}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
