//! Builds the degree-n polynomials q_n = (z^2 - 1) P_{n-2}^{(1,1)}(z) that
//! maximize deg gcd(q, q'') among real-rooted polynomials with simple zeroes,
//! and verifies the extremal property deg gcd(q_n, q_n'') = n - 2.

use kappa_forge::conjectures::jacobi_extremal;
use kappa_forge::polycore::gcd;

fn main() -> kappa_forge::Result<()> {
    for n in 3..=8 {
        let q = jacobi_extremal(n)?;
        let g = gcd(&q, &q.derivative_n(2))?;
        println!("n = {n}");
        println!("  q_n = {q}");
        println!("  deg gcd(q_n, q_n'') = {}", g.degree().unwrap_or(0));
        println!();
    }
    Ok(())
}
