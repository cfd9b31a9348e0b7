//! Samples random baskets and runs the feasibility checks and series
//! inequalities on each.

use qfano::sample::{sample_baskets, SampleSpec};
use qfano::series::{feasibility, inequality_violations};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let baskets = sample_baskets(seed, 1000, &SampleSpec::default().bounded());

    let mut feasible = 0;
    let mut flagged = 0;
    for b in &baskets {
        let report = feasibility(b);
        let violations = inequality_violations(b).unwrap_or_default();
        if report.is_feasible() {
            feasible += 1;
            assert!(
                violations.is_empty(),
                "{b} P[-1]={} passes feasibility but violates {violations:?}",
                b.p1()
            );
            if feasible <= 5 {
                let shown = if b.is_empty() {
                    "{}".to_string()
                } else {
                    b.to_string()
                };
                println!(
                    "feasible: {shown}  P[-1] = {}  -K^3 = {}",
                    b.p1(),
                    b.anti_k3()
                );
            }
        } else if !violations.is_empty() {
            flagged += 1;
        }
    }
    println!(
        "{} sampled, {feasible} feasible, {flagged} infeasible with series violations",
        baskets.len()
    );
}
