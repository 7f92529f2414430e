//! Runs seeded randomized searches for counterexamples to the two open
//! counting conjectures. The runs are deterministic: the same seed always
//! visits the same polynomials and kappa values.

use kappa_forge::conjectures::{random_search, ConjectureId, SearchConfig};

fn main() -> kappa_forge::Result<()> {
    for (id, label) in [
        (ConjectureId::C2, "real solutions of R = k above the top step"),
        (ConjectureId::C3, "polynomials with all zeroes non-real"),
    ] {
        let cfg = SearchConfig::new(id, 60, 0xC0FFEE)?.with_degrees(3, 8)?;
        let report = random_search(&cfg)?;
        println!("conjecture: {label}");
        println!("  trials run: {}, seed: {:#x}", report.trials_run, report.seed);
        if report.violations.is_empty() {
            println!("  no violations found");
        } else {
            for v in &report.violations {
                println!(
                    "  trial {}: p = {}, kappa = {}: {}",
                    v.trial, v.p, v.kappa, v.detail
                );
            }
        }
        println!();
    }
    Ok(())
}
