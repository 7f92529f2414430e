//! Reproduces the one-parameter family p = (z^2 + a^2)(z + a^2)(z - 1) whose
//! F_{3/4}[p] has four real non-trivial zeroes even though p has only two
//! non-real zeroes — refuting the guess that the real non-trivial count is
//! bounded by the non-real count of p.

use kappa_forge::conjectures::shapiro_counterexample;
use kappa_forge::polycore::rat_int;

fn main() -> kappa_forge::Result<()> {
    for a in [2i64, 3, 10] {
        let rep = shapiro_counterexample(&rat_int(a))?;
        println!("a = {a}");
        println!("  p = {}", rep.p);
        println!("  non-real zeroes of p: {}", rep.z_c_p);
        println!("  real non-trivial zeroes of F_(3/4)[p]: {}", rep.z_r_q);
        println!(
            "  double zeroes at {} and {} (closed form matches: {})",
            rep.expected_roots.0, rep.expected_roots.1, rep.roots_match
        );
        println!("  bound violated: {}", rep.conjecture_violated);
        println!();
    }
    Ok(())
}
