//! Sweeps `kappa` along the critical ladder (k-1)/k for a fixed real-rooted
//! polynomial, printing the non-real zero count of the non-trivial part of
//! F_k[p] in each window together with the predicted bracket.

use kappa_forge::polycore::RootSpec;
use kappa_forge::theoremlab::{kappa_sweep, profile};

fn main() -> kappa_forge::Result<()> {
    // p = (z + 13)^4 (z + 10)(z - 15)(z - 20)^3, degree 9.
    let spec = RootSpec::from_integers(1, &[(-13, 4), (-10, 1), (15, 1), (20, 3)])?;
    let prof = profile(&spec)?;
    println!(
        "degree n = {}, distinct zeroes d = {}, interior multiplicities {:?}",
        prof.n, prof.d, prof.interior
    );

    let sweep = kappa_sweep(&spec)?;
    println!("ladder points: {:?}", sweep.ladder.iter().map(|k| k.to_string()).collect::<Vec<_>>());
    println!();
    println!("{:>10}  {:>4}  bracket  clause", "kappa", "Z_C");
    for w in &sweep.windows {
        println!(
            "{:>10}  {:>4}  [{}, {}]  {}",
            w.kappa.to_string(),
            w.z_c,
            w.lower,
            w.upper,
            w.claim_id
        );
    }
    println!();
    println!("non-real count monotone along the sweep: {}", sweep.monotone);
    Ok(())
}
