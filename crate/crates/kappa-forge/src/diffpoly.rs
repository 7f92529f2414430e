//! The differential polynomial `F_k[p] = p p'' - k (p')^2`, its
//! derivative-shifted companion, the critical ladder `(k-1)/k`, and the
//! rational function `R = p p'' / (p')^2`.
//!
//! A zero of `F_k[p]` that is also a zero of `p` is *trivial*; everything
//! here revolves around splitting off the trivial part exactly and counting
//! what remains.

use crate::polycore::{self, rat_int, sign, Poly, Rat};
use crate::rootcount::{self, eval_poly_interval, IntervalQ, RatInterval};
use crate::{Error, Result};
use num::{One, Zero};

/// Position of `k` relative to the critical ladder `{(k-1)/k : k = 1..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KappaKind {
    NonCritical,
    /// `kappa = (k-1)/k` for this `k < n`.
    Critical(usize),
    /// `kappa = (n-1)/n`, where the degree of `F_k[p]` drops.
    TopCritical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaClass {
    pub kappa: Rat,
    pub kind: KappaKind,
}

/// The ladder value `(k-1)/k`.
pub fn ladder_value(k: usize) -> Rat {
    polycore::rat(k as i64 - 1, k as i64)
}

/// Exact ladder membership test for a degree-`n` polynomial.
pub fn kappa_classify(kappa: &Rat, n: usize) -> Result<KappaClass> {
    if n < 2 {
        return Err(Error::InvalidInput("ladder needs degree n >= 2".into()));
    }
    for k in 1..=n {
        if *kappa == ladder_value(k) {
            let kind = if k == n {
                KappaKind::TopCritical
            } else {
                KappaKind::Critical(k)
            };
            return Ok(KappaClass {
                kappa: kappa.clone(),
                kind,
            });
        }
    }
    Ok(KappaClass {
        kappa: kappa.clone(),
        kind: KappaKind::NonCritical,
    })
}

/// `F_k[p] = p p'' - k (p')^2`, expanded exactly.
pub fn f_kappa(p: &Poly, kappa: &Rat) -> Result<Poly> {
    if p.degree().map_or(true, |d| d < 2) {
        return Err(Error::InvalidInput(
            "F_k[p] needs a polynomial of degree >= 2".into(),
        ));
    }
    let dp = p.derivative();
    let ddp = dp.derivative();
    Ok(&(p * &ddp) - &(&dp * &dp).scale(kappa))
}

/// The companion `F-hat_k[p] = F_{2 - 1/k}[p']`.
pub fn f_hat_kappa(p: &Poly, kappa: &Rat) -> Result<Poly> {
    if kappa.is_zero() {
        return Err(Error::DivisionByZero("hat map undefined at kappa = 0".into()));
    }
    if p.degree().map_or(true, |d| d < 3) {
        return Err(Error::InvalidInput(
            "F-hat needs a polynomial of degree >= 3".into(),
        ));
    }
    let shifted = rat_int(2) - Rat::one() / kappa;
    f_kappa(&p.derivative(), &shifted)
}

/// The hat-map orbit `[k_0 = k, k_1, ..., k_steps]` with
/// `k_i = 2 - 1/k_{i-1}`; maps `(k-1)/k` to `(k-2)/(k-1)` at each step.
pub fn kappa_hat_sequence(kappa: &Rat, steps: usize) -> Result<Vec<Rat>> {
    let mut out = vec![kappa.clone()];
    for _ in 0..steps {
        let prev = out.last().unwrap();
        if prev.is_zero() {
            return Err(Error::DivisionByZero(
                "hat sequence hit an intermediate zero".into(),
            ));
        }
        out.push(rat_int(2) - Rat::one() / prev);
    }
    Ok(out)
}

/// One group of distinct roots sharing a trivial multiplicity: the roots are
/// the zeroes of the (monic, square-free) `factor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub factor: Poly,
    pub multiplicity: usize,
}

impl LedgerEntry {
    /// Number of distinct roots in this group.
    pub fn root_count(&self) -> usize {
        self.factor.degree().unwrap_or(0)
    }
}

/// `F_k[p]` split into its trivial ledger and non-trivial part.
#[derive(Debug, Clone)]
pub struct NontrivialReport {
    pub f_kappa: Poly,
    pub nontrivial_part: Poly,
    pub z_nt: usize,
    pub z_real_nt: usize,
    pub z_nonreal_nt: usize,
    pub trivial_ledger: Vec<LedgerEntry>,
    pub identically_zero: bool,
}

/// Splits `F_k[p]` by repeated exact division by `gcd(., p)`: what survives
/// is the non-trivial part, and the quotient chain yields the per-root
/// trivial multiplicities grouped by square-free factor.
pub fn nontrivial_zeros(p: &Poly, kappa: &Rat) -> Result<NontrivialReport> {
    let f = f_kappa(p, kappa)?;
    if f.is_zero() {
        return Ok(NontrivialReport {
            f_kappa: f,
            nontrivial_part: Poly::zero(),
            z_nt: 0,
            z_real_nt: 0,
            z_nonreal_nt: 0,
            trivial_ledger: vec![],
            identically_zero: true,
        });
    }
    // chain against the square-free part: each round removes one copy per
    // shared root, so gcd_chain[t] holds exactly the roots of trivial
    // multiplicity > t and consecutive quotients group roots by exact
    // trivial multiplicity
    let (nontrivial, gcd_chain) = strip_common(&f, &polycore::square_free_part(p)?)?;
    let mut ledger = Vec::new();
    for t in 0..gcd_chain.len() {
        let next = gcd_chain.get(t + 1).cloned().unwrap_or_else(Poly::one);
        let factor = gcd_chain[t].exact_div(&next)?.monic();
        if factor.degree().map_or(false, |d| d > 0) {
            ledger.push(LedgerEntry {
                factor,
                multiplicity: t + 1,
            });
        }
    }
    let z_nt = nontrivial.degree().unwrap_or(0);
    let z_real_nt = if z_nt == 0 {
        0
    } else {
        rootcount::count_real_roots(&nontrivial, &IntervalQ::whole_line(), true)?
    };
    Ok(NontrivialReport {
        f_kappa: f,
        nontrivial_part: nontrivial,
        z_nt,
        z_real_nt,
        z_nonreal_nt: z_nt - z_real_nt,
        trivial_ledger: ledger,
        identically_zero: false,
    })
}

/// Divides `f` by `gcd(f, p)` until coprime with `p`; returns the stripped
/// polynomial and the (monic) gcd chain.
pub fn strip_common(f: &Poly, p: &Poly) -> Result<(Poly, Vec<Poly>)> {
    let mut cur = f.clone();
    let mut chain = Vec::new();
    loop {
        let g = polycore::gcd(&cur, p)?;
        if g.degree() == Some(0) {
            return Ok((cur, chain));
        }
        cur = cur.exact_div(&g)?;
        chain.push(g);
    }
}

/// Leading coefficients of `p` near a root: `p = A (z-l)^m + B (z-l)^{m+1}
/// + C (z-l)^{m+2} + ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionCoeffs {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub m: usize,
}

/// Taylor data of `p` at a rational root `lambda`.
pub fn local_expansion(p: &Poly, lambda: &Rat) -> Result<ExpansionCoeffs> {
    if p.is_zero() || !p.evaluate(lambda).is_zero() {
        return Err(Error::InvalidInput(format!(
            "{lambda} is not a root of the polynomial"
        )));
    }
    let mut cur = p.derivative();
    let mut factorial = Rat::one();
    let mut taylor = Vec::new();
    for j in 1..=p.degree().unwrap() {
        factorial = factorial * rat_int(j as i64);
        taylor.push(cur.evaluate(lambda) / &factorial);
        cur = cur.derivative();
    }
    let m = taylor
        .iter()
        .position(|v| !v.is_zero())
        .expect("nonzero polynomial has a nonvanishing derivative at any point")
        + 1;
    let get = |i: usize| taylor.get(i - 1).cloned().unwrap_or_else(Rat::zero);
    Ok(ExpansionCoeffs {
        a: get(m),
        b: get(m + 1),
        c: get(m + 2),
        m,
    })
}

/// Predicted trivial multiplicities per distinct-root group: `2m-2` off the
/// ladder step `(m-1)/m`, and `2m-1` or `2m` on it depending on the next
/// Taylor coefficient. Predictions are cross-checked against the actual
/// gcd-stripped multiplicities of `F_k[p]`.
pub fn trivial_multiplicity_ledger(p: &Poly, kappa: &Rat) -> Result<Vec<LedgerEntry>> {
    let f = f_kappa(p, kappa)?;
    let mut predicted = Vec::new();
    for (factor, m) in polycore::square_free_decomposition(p)? {
        if *kappa == ladder_value(m) {
            // on the step (m-1)/m the multiplicity depends on whether
            // B = p^(m+1)(lambda)/(m+1)! vanishes
            let b_zero = polycore::gcd(&factor, &p.derivative_n(m + 1))?;
            let b_nonzero = factor.exact_div(&b_zero)?.monic();
            if b_nonzero.degree().map_or(false, |d| d > 0) {
                predicted.push(LedgerEntry {
                    factor: b_nonzero,
                    multiplicity: 2 * m - 1,
                });
            }
            if b_zero.degree().map_or(false, |d| d > 0) {
                predicted.push(LedgerEntry {
                    factor: b_zero,
                    multiplicity: 2 * m,
                });
            }
        } else {
            predicted.push(LedgerEntry {
                factor,
                multiplicity: 2 * m - 2,
            });
        }
    }
    if !f.is_zero() {
        for entry in &predicted {
            let actual = f.multiplicity_of_factor(&entry.factor)?;
            let exact = if actual == entry.multiplicity {
                let stripped = f.exact_div(&entry.factor.pow(actual))?;
                polycore::gcd(&stripped, &entry.factor)?.degree() == Some(0)
            } else {
                false
            };
            if !exact {
                return Err(Error::InvalidInput(format!(
                    "trivial multiplicity prediction {} violated for factor {} (factor divides F {} times)",
                    entry.multiplicity, entry.factor, actual
                )));
            }
        }
    }
    Ok(predicted)
}

/// `R - (n-1)/n` as an uncancelled fraction: numerator `F_{(n-1)/n}[p]`,
/// denominator `(p')^2`.
pub fn r_defect(p: &Poly) -> Result<(Poly, Poly)> {
    let n = p
        .degree()
        .filter(|d| *d >= 2)
        .ok_or_else(|| Error::InvalidInput("R needs degree >= 2".into()))? as i64;
    let numerator = f_kappa(p, &polycore::rat(n - 1, n))?;
    let dp = p.derivative();
    Ok((numerator, &dp * &dp))
}

/// Certified enclosure of one residue `beta_j = p(mu_j)/p''(mu_j)` of `R`,
/// attached to an isolating interval for the simple critical point `mu_j`.
#[derive(Debug, Clone)]
pub struct ResidueEnclosure {
    pub mu: IntervalQ,
    pub beta_lo: Rat,
    pub beta_hi: Rat,
}

impl ResidueEnclosure {
    pub fn beta_interval(&self) -> RatInterval {
        RatInterval::new(self.beta_lo.clone(), self.beta_hi.clone())
    }

    pub fn is_strictly_negative(&self) -> bool {
        sign(&self.beta_hi) < 0
    }
}

fn count_avoiding_endpoints(p: &Poly, iv: &IntervalQ) -> Option<usize> {
    rootcount::count_real_roots(p, iv, false).ok()
}

/// Enclosures of every residue `beta_j`, each of width at most `width`,
/// certified sign-definite by refining until `p` and `p''` keep constant
/// sign on the isolating interval. `p` must be real-rooted with `d >= 2`.
pub fn residues_beta(p: &Poly, width: &Rat) -> Result<Vec<ResidueEnclosure>> {
    if !rootcount::is_real_rooted(p)? {
        return Err(Error::Precondition(
            "residues are defined for real-rooted polynomials".into(),
        ));
    }
    if polycore::distinct_zero_count(p)? < 2 {
        return Err(Error::Precondition("residues need d >= 2".into()));
    }
    let dp = p.derivative();
    let ddp = dp.derivative();
    let p_dp_gcd = polycore::gcd(p, &dp)?;
    let mut out = Vec::new();
    for (iv, mult) in rootcount::isolate_real_roots(&dp)? {
        if mult != 1 {
            continue;
        }
        // skip mu that are multiple roots of p (they are roots of gcd(p, p'))
        if p_dp_gcd.degree().map_or(false, |d| d > 0) {
            let chain = rootcount::SturmChain::new(&p_dp_gcd)?;
            if chain.count_distinct(&iv)? > 0 {
                continue;
            }
        }
        out.push(enclose_residue(p, &dp, &ddp, iv, width)?);
    }
    Ok(out)
}

/// Exact rational root of `q` inside `iv`, solved in closed form when `q`
/// has degree at most two.
pub(crate) fn rational_root_in(q: &Poly, iv: &IntervalQ) -> Option<Rat> {
    let roots: Vec<Rat> = match q.degree()? {
        1 => vec![-q.coeff(0) / q.coeff(1)],
        2 => {
            let (a, b, c) = (q.coeff(2), q.coeff(1), q.coeff(0));
            let disc = &b * &b - rat_int(4) * &a * &c;
            if sign(&disc) < 0 {
                return None;
            }
            let sq_num = disc.numer().sqrt();
            let sq_den = disc.denom().sqrt();
            if &(&sq_num * &sq_num) != disc.numer() || &(&sq_den * &sq_den) != disc.denom() {
                return None;
            }
            let root = Rat::new(sq_num, sq_den);
            let two_a = rat_int(2) * &a;
            vec![(-&b + &root) / &two_a, (-&b - &root) / &two_a]
        }
        _ => return None,
    };
    roots.into_iter().find(|r| iv.contains(r))
}

fn enclose_residue(
    p: &Poly,
    dp: &Poly,
    ddp: &Poly,
    mut iv: IntervalQ,
    width: &Rat,
) -> Result<ResidueEnclosure> {
    // low-degree critical points are rational-solvable in closed form
    if let Some(mu) = rational_root_in(dp, &iv) {
        let beta = p.evaluate(&mu) / ddp.evaluate(&mu);
        return Ok(ResidueEnclosure {
            mu: iv,
            beta_lo: beta.clone(),
            beta_hi: beta,
        });
    }
    let mut target = iv.width().unwrap();
    loop {
        // exact critical point: the refinement may pin mu to a rational
        if let Some(mid) = iv.midpoint() {
            if dp.evaluate(&mid).is_zero() {
                let beta = p.evaluate(&mid) / ddp.evaluate(&mid);
                return Ok(ResidueEnclosure {
                    mu: iv,
                    beta_lo: beta.clone(),
                    beta_hi: beta,
                });
            }
        }
        let clear = count_avoiding_endpoints(p, &iv) == Some(0)
            && count_avoiding_endpoints(ddp, &iv) == Some(0);
        if clear {
            let x = RatInterval::new(
                iv.lo.finite().unwrap().clone(),
                iv.hi.finite().unwrap().clone(),
            );
            let p_enc = eval_poly_interval(p, &x);
            let ddp_enc = eval_poly_interval(ddp, &x);
            if sign(&ddp_enc.lo) * sign(&ddp_enc.hi) > 0 {
                let beta = p_enc.div(&ddp_enc)?;
                // beta != 0 (mu is not a zero of p), so refining until the
                // enclosure excludes zero always terminates
                if beta.width() <= *width && sign(&beta.lo) * sign(&beta.hi) > 0 {
                    return Ok(ResidueEnclosure {
                        mu: iv,
                        beta_lo: beta.lo,
                        beta_hi: beta.hi,
                    });
                }
            }
        }
        target = target / rat_int(4);
        iv = match rootcount::refine_root(dp, &iv, &target) {
            Ok(refined) => refined,
            // endpoint landed on a root of p or p''; shift the target width
            Err(_) => rootcount::refine_root(dp, &iv, &(target.clone() * polycore::rat(2, 3)))?,
        };
    }
}

/// A sampled value of `R`, or a pole marker where `p'` vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RSample {
    Value(Rat),
    Pole,
}

/// Exact evaluation of `R = p p''/(p')^2` on a rational grid.
pub fn sample_r(p: &Poly, grid: &[Rat]) -> Result<Vec<(Rat, RSample)>> {
    if p.degree().map_or(true, |d| d < 2) {
        return Err(Error::InvalidInput("R needs degree >= 2".into()));
    }
    let dp = p.derivative();
    let ddp = dp.derivative();
    Ok(grid
        .iter()
        .map(|x| {
            let d = dp.evaluate(x);
            if d.is_zero() {
                (x.clone(), RSample::Pole)
            } else {
                let v = p.evaluate(x) * ddp.evaluate(x) / (&d * &d);
                (x.clone(), RSample::Value(v))
            }
        })
        .collect())
}
