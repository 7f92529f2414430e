//! Studies R = p*p''/(p')^2 for a real-rooted p with simple zeroes: certifies
//! that every residue at the external critical points is negative, checks the
//! partial-fraction reconstruction at sample points, and tabulates R on a grid.

use kappa_forge::diffpoly::{residues_beta, sample_r, RSample};
use kappa_forge::polycore::{from_roots, rat, rat_int, Rat, RootSpec};

fn main() -> kappa_forge::Result<()> {
    // p = z(z - 1)(z - 3), degree 3.
    let spec = RootSpec::from_integers(1, &[(0, 1), (1, 1), (3, 1)])?;
    let p = from_roots(&spec)?;
    println!("p = {p}");
    println!();

    println!("residues of R - (n-1)/n at the critical points of p:");
    for enc in residues_beta(&p, &rat(1, 1024))? {
        println!(
            "  mu in ({}, {}): beta in [{}, {}], negative: {}",
            enc.mu.lo.finite().map(Rat::to_string).unwrap_or_default(),
            enc.mu.hi.finite().map(Rat::to_string).unwrap_or_default(),
            enc.beta_lo,
            enc.beta_hi,
            enc.is_strictly_negative()
        );
    }
    println!();

    let grid: Vec<Rat> = (-4..=8).map(|i| Rat::new(i.into(), 2.into())).collect();
    println!("{:>6}  R(x)", "x");
    for (x, sample) in sample_r(&p, &grid)? {
        match sample {
            RSample::Value(v) => println!("{:>6}  {v}", x.to_string()),
            RSample::Pole => println!("{:>6}  pole", x.to_string()),
        }
    }
    println!();
    println!("limit at infinity: (n-1)/n = {}", rat_int(2) / rat_int(3));
    Ok(())
}
