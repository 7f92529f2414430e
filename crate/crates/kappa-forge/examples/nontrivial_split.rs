//! Builds F_k[p] = p*p'' - k*(p')^2 for a polynomial with repeated zeroes,
//! strips the predictable zeroes inherited from the multiple zeroes of `p`,
//! and counts the real and non-real zeroes of what remains.

use kappa_forge::diffpoly::{f_kappa, kappa_classify, nontrivial_zeros, KappaKind};
use kappa_forge::polycore::{from_roots, rat, RootSpec};

fn main() -> kappa_forge::Result<()> {
    // p = (z - 1)^3 (z - 2)^2 (z - 3)^3, degree 8.
    let spec = RootSpec::from_integers(1, &[(1, 3), (2, 2), (3, 3)])?;
    let p = from_roots(&spec)?;
    let kappa = rat(2, 3);
    println!("p      = {p}");
    println!("kappa  = {kappa}");

    let class = kappa_classify(&kappa, spec.degree())?;
    let kind = match class.kind {
        KappaKind::NonCritical => "off the critical ladder".to_string(),
        KappaKind::Critical(k) => format!("critical step {k} of the ladder (k-1)/k"),
        KappaKind::TopCritical => "top of the ladder, (n-1)/n".to_string(),
    };
    println!("class  = {kind}");

    let f = f_kappa(&p, &kappa)?;
    println!("F_k[p] = {f}");

    let report = nontrivial_zeros(&p, &kappa)?;
    println!();
    println!("zeroes forced by the multiple zeroes of p:");
    for entry in &report.trivial_ledger {
        println!(
            "  multiplicity {} in F: {} distinct zeroes, factor {}",
            entry.multiplicity,
            entry.root_count(),
            entry.factor
        );
    }
    println!("non-trivial part     = {}", report.nontrivial_part);
    println!("non-trivial zeroes   = {} total", report.z_nt);
    println!("  real               = {}", report.z_real_nt);
    println!("  non-real           = {}", report.z_nonreal_nt);
    Ok(())
}
