//! Mechanical verifiers for the counting statements governing `F_k[p]`:
//! each takes a concrete polynomial (often as a `RootSpec`) and a rational
//! `k`, computes the exact counts, and checks them against the asserted
//! value or bracket. Verifiers return structured results; a falsified
//! instance is data, not a panic.

use crate::diffpoly::{
    self, f_kappa, kappa_classify, ladder_value, nontrivial_zeros, strip_common, KappaKind,
};
use crate::polycore::{
    self, distinct_zero_count, from_roots, rat, rat_int, sign, square_free_decomposition,
    square_free_part, Poly, Rat, RootSpec,
};
use crate::rootcount::{
    self, count_real_roots, isolate_real_roots, nonreal_count, refine_root,
    sign_right_of, Bound, IntervalQ, RatInterval, SturmChain,
};
use crate::{Error, Result};
use num::{One, Zero};

/// Degree, distinct-zero count, extreme multiplicities, and the histogram of
/// interior multiplicities (the zeroes strictly between the smallest and
/// largest) of a real-rooted polynomial given by its roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityProfile {
    pub n: usize,
    pub d: usize,
    pub n_1: usize,
    pub n_d: usize,
    /// `(m_j, d_j)` pairs, `m_1 < m_2 < ...`: `d_j` interior zeroes have
    /// multiplicity `m_j`.
    pub interior: Vec<(usize, usize)>,
}

/// Outcome of checking one counting claim on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationResult {
    pub claim_id: String,
    pub pass: bool,
    pub observed: i64,
    pub lower: i64,
    pub upper: i64,
    pub witness: String,
}

impl VerificationResult {
    pub fn bracket(
        claim_id: impl Into<String>,
        observed: i64,
        lower: i64,
        upper: i64,
        witness: impl Into<String>,
    ) -> Self {
        VerificationResult {
            claim_id: claim_id.into(),
            pass: lower <= observed && observed <= upper,
            observed,
            lower,
            upper,
            witness: witness.into(),
        }
    }
}

/// One evaluated point of a `kappa_sweep`.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub kappa: Rat,
    pub z_c: usize,
    pub lower: i64,
    pub upper: i64,
    pub claim_id: String,
}

/// Non-real count of `F_k[p]` along the critical ladder: each ladder point,
/// the midpoint of each open ladder interval, and one point above the top.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub ladder: Vec<Rat>,
    pub windows: Vec<SweepPoint>,
    pub monotone: bool,
}

/// Multiplicity histogram of the interior zeroes of a real-rooted spec.
pub fn profile(spec: &RootSpec) -> Result<MultiplicityProfile> {
    spec.validate()?;
    let roots = spec.sorted_roots();
    let d = roots.len();
    if d < 2 {
        return Err(Error::InvalidInput("profile needs d >= 2".into()));
    }
    let mut hist = std::collections::BTreeMap::new();
    for (_, m) in &roots[1..d - 1] {
        *hist.entry(*m).or_insert(0usize) += 1;
    }
    Ok(MultiplicityProfile {
        n: spec.degree(),
        d,
        n_1: roots[0].1,
        n_d: roots[d - 1].1,
        interior: hist.into_iter().collect(),
    })
}

/// The governing bracket for `Z_C(F_k[p])` given the interior multiplicity
/// histogram: intersection of every applicable window clause.
fn main_bracket(pr: &MultiplicityProfile, kappa: &Rat) -> (i64, i64, String) {
    let n = pr.n as i64;
    let d = pr.d as i64;
    let top = rat(n - 1, n);
    if pr.d == 2 {
        return if *kappa <= top {
            (0, 0, "two-distinct-zeroes-low".into())
        } else {
            (2, 2, "two-distinct-zeroes-high".into())
        };
    }
    let mut lower = 0i64;
    let mut upper = 2 * d - 2;
    let mut ids = Vec::new();
    let ms = &pr.interior;
    let r = ms.len();
    let mut clip = |lo: i64, hi: i64, id: String, ids: &mut Vec<String>| {
        lower = lower.max(lo);
        upper = upper.min(hi);
        ids.push(id);
    };
    if *kappa <= ladder_value(ms[0].0) {
        clip(0, 0, "below-first-interior-step".into(), &mut ids);
    }
    let mut cum = 0i64;
    for j in 0..r - 1 {
        cum += ms[j].1 as i64;
        if ladder_value(ms[j].0) < *kappa && *kappa <= ladder_value(ms[j + 1].0) {
            clip(0, 2 * cum, format!("interior-window-{}", j + 1), &mut ids);
        }
    }
    let base = n - d; // ladder index offset for the upper windows
    if ladder_value(ms[r - 1].0) < *kappa && *kappa < rat(base + 1, base + 2) {
        clip(0, 2 * d - 4, "above-interior-steps".into(), &mut ids);
    }
    for k in 2..=d - 1 {
        if rat(base + k - 1, base + k) <= *kappa && *kappa < rat(base + k, base + k + 1) {
            clip(2 * k - 2, 2 * d - 4, format!("upper-window-{k}"), &mut ids);
        }
    }
    if *kappa == top {
        clip(2 * d - 4, 2 * d - 4, "at-top-step".into(), &mut ids);
    }
    if *kappa > top {
        clip(2 * d - 2, 2 * d - 2, "above-top-step".into(), &mut ids);
    }
    (lower, upper, ids.join("+"))
}

/// Checks the non-real count of `F_k[p]` against the window bracket for a
/// real-rooted `p` with `d >= 2` distinct zeroes.
pub fn verify_main_bounds(spec: &RootSpec, kappa: &Rat) -> Result<VerificationResult> {
    let pr = profile(spec)?;
    let p = from_roots(spec)?;
    let f = f_kappa(&p, kappa)?;
    let z_c = nonreal_count(&f)? as i64;
    let (lower, upper, clause) = main_bracket(&pr, kappa);
    let witness = format!(
        "p = {p}, kappa = {kappa}, Z_C = {z_c}, clause {clause} gives [{lower}, {upper}]"
    );
    Ok(VerificationResult::bracket(
        format!("main-bounds/{clause}"),
        z_c,
        lower,
        upper,
        witness,
    ))
}

/// Evaluates `verify_main_bounds` along the ladder grid and records whether
/// `Z_C` is monotone non-decreasing in `k`.
pub fn kappa_sweep(spec: &RootSpec) -> Result<SweepReport> {
    let n = spec.degree();
    let ladder: Vec<Rat> = (1..=n).map(ladder_value).collect();
    let mut grid = Vec::new();
    for k in 1..=n {
        grid.push(ladder_value(k));
        if k < n {
            grid.push((ladder_value(k) + ladder_value(k + 1)) / rat_int(2));
        }
    }
    grid.push(ladder_value(n) + Rat::one());
    let mut windows = Vec::new();
    for kappa in grid {
        let res = verify_main_bounds(spec, &kappa)?;
        windows.push(SweepPoint {
            kappa,
            z_c: res.observed as usize,
            lower: res.lower,
            upper: res.upper,
            claim_id: res.claim_id,
        });
    }
    let monotone = windows.windows(2).all(|w| w[0].z_c <= w[1].z_c);
    Ok(SweepReport {
        ladder,
        windows,
        monotone,
    })
}

/// Number of distinct zeroes of `p` with multiplicity exactly `k`.
fn alpha(p: &Poly, k: usize) -> Result<usize> {
    Ok(square_free_decomposition(p)?
        .into_iter()
        .filter(|(_, m)| *m == k)
        .map(|(f, _)| f.degree().unwrap_or(0))
        .sum())
}

/// `p` written as `a0 (z - lambda)^n + q` with `lambda` the degree-`n` mean
/// of the zeroes; the returned `l` is the number of leading coefficients
/// agreeing with the pure power (always >= 1), `None` when `q` vanishes.
fn power_prefix(p: &Poly) -> (Option<usize>, Poly) {
    let n = p.degree().unwrap();
    let a0 = p.leading().unwrap().clone();
    let lambda = -p.coeff(n - 1) / (&a0 * rat_int(n as i64));
    let pure = Poly::new(vec![-lambda, Rat::one()]).pow(n).scale(&a0);
    let q = p - &pure;
    match q.degree() {
        None => (None, q),
        Some(dq) => (Some(n - 1 - dq), q),
    }
}

/// Checks the total non-trivial zero count of `F_k[p]`: `2d - 2` off the
/// ladder, the critical bracket on it, and `2d - 3 - l` at the top.
pub fn verify_total_nontrivial(p: &Poly, kappa: &Rat) -> Result<VerificationResult> {
    let n = p
        .degree()
        .filter(|n| *n >= 2)
        .ok_or_else(|| Error::InvalidInput("needs degree >= 2".into()))?;
    let report = nontrivial_zeros(p, kappa)?;
    if report.identically_zero {
        return Ok(VerificationResult::bracket(
            "total-nontrivial/degenerate",
            0,
            0,
            0,
            format!("p = {p}: F vanishes identically at the top ladder step"),
        ));
    }
    let d = distinct_zero_count(p)? as i64;
    let z_nt = report.z_nt as i64;
    let class = kappa_classify(kappa, n)?;
    let (claim, lower, upper, mut witness) = match class.kind {
        KappaKind::NonCritical => (
            "total-nontrivial/off-ladder".to_string(),
            2 * d - 2,
            2 * d - 2,
            String::new(),
        ),
        KappaKind::Critical(k) => {
            let a = alpha(p, k)? as i64;
            if rootcount::is_real_rooted(p)? {
                let mut note = String::new();
                if k == 1 {
                    // the sharpened lower bound 2d - 2*alpha_1 claimed at
                    // kappa = 0 can fail; record compliance instead
                    note = format!(
                        "; sharpened zero-step lower bound 2d-2a={} {}",
                        2 * d - 2 * a,
                        if 2 * d - 2 * a <= z_nt { "holds" } else { "fails" }
                    );
                }
                (
                    format!("total-nontrivial/critical-step-{k}"),
                    2 * d - 2 - 2 * a,
                    2 * d - 2 - a,
                    note,
                )
            } else {
                // only the upper bound extends to complex polynomials
                (
                    format!("total-nontrivial/critical-step-{k}-complex"),
                    0,
                    2 * d - 2 - a,
                    String::new(),
                )
            }
        }
        KappaKind::TopCritical => {
            if d < 2 {
                return Err(Error::Precondition(
                    "top ladder step needs two distinct zeroes".into(),
                ));
            }
            let (l, _) = power_prefix(p);
            let l = l.expect("q = 0 implies F identically zero, handled above") as i64;
            (
                "total-nontrivial/top-step".to_string(),
                2 * d - 3 - l,
                2 * d - 3 - l,
                format!("; power prefix l = {l}"),
            )
        }
    };
    witness = format!("p = {p}, kappa = {kappa}, z_nt = {z_nt}{witness}");
    Ok(VerificationResult::bracket(claim, z_nt, lower, upper, witness))
}

/// Checks the degree drop of `F_{(n-1)/n}[p]` to `2n - 3 - l`, and that a
/// prefix of length `l >= 2` forces non-real zeroes of `p`.
pub fn verify_degree_drop(p: &Poly) -> Result<VerificationResult> {
    let n = p
        .degree()
        .filter(|n| *n >= 2)
        .ok_or_else(|| Error::InvalidInput("needs degree >= 2".into()))? as i64;
    let f = f_kappa(p, &rat(n - 1, n))?;
    let (l, _) = power_prefix(p);
    match l {
        None => {
            let pass = f.is_zero();
            Ok(VerificationResult {
                claim_id: "degree-drop/pure-power".into(),
                pass,
                observed: f.degree().map_or(-1, |d| d as i64),
                lower: -1,
                upper: -1,
                witness: format!("p = {p} is a pure power; F must vanish identically"),
            })
        }
        Some(l) => {
            let expect = 2 * n - 3 - l as i64;
            let observed = f.degree().map_or(-1, |d| d as i64);
            let mut pass = observed == expect;
            let mut note = String::new();
            if l >= 2 {
                let nr = nonreal_count(p)?;
                if nr == 0 {
                    pass = false;
                    note = "; prefix l >= 2 requires non-real zeroes but p is real-rooted".into();
                }
            }
            Ok(VerificationResult {
                claim_id: "degree-drop".into(),
                pass,
                observed,
                lower: expect,
                upper: expect,
                witness: format!("p = {p}, l = {l}, deg F_top = {observed}{note}"),
            })
        }
    }
}

/// Decomposes `p` as `a0 (z - lambda)^n + q` and applies
/// [`verify_distinct_bound`] to the extracted pieces.
pub fn verify_distinct_bound_of(p: &Poly) -> Result<VerificationResult> {
    let n = p
        .degree()
        .filter(|n| *n >= 2)
        .ok_or_else(|| Error::InvalidInput("needs degree >= 2".into()))?;
    let a0 = p.leading().unwrap().clone();
    let lambda = -p.coeff(n - 1) / (&a0 * rat_int(n as i64));
    let (l, q) = power_prefix(p);
    if l.is_none() {
        return Err(Error::Precondition(
            "pure power: no perturbation to bound".into(),
        ));
    }
    // the bound is scale-invariant, so normalize the pure-power part
    verify_distinct_bound(&lambda, n, &q.scale(&(Rat::one() / a0)))
}

/// Builds `p = (z - lambda)^n + q` and checks the distinct-zero lower bound
/// `d >= floor((n - k)/2) + 2` with `k = deg q + 1`.
pub fn verify_distinct_bound(lambda: &Rat, n: usize, q: &Poly) -> Result<VerificationResult> {
    let dq = q
        .degree()
        .ok_or_else(|| Error::InvalidInput("perturbation must be nonzero".into()))?;
    if dq + 1 > n - 1 {
        return Err(Error::InvalidInput(
            "perturbation degree must be at most n - 2".into(),
        ));
    }
    let k = (dq + 1) as i64;
    let p = &Poly::new(vec![-lambda.clone(), Rat::one()]).pow(n) + q;
    let d = distinct_zero_count(&p)? as i64;
    let bound = (n as i64 - k).div_euclid(2) + 2;
    Ok(VerificationResult::bracket(
        "distinct-zero-bound",
        d,
        bound,
        n as i64,
        format!("p = {p}, k = {k}, d = {d} >= {bound}"),
    ))
}

/// Sorted isolating intervals for the critical points of `p` that are not
/// zeroes of `p` (the poles `mu_j` of `R`).
fn external_critical_enclosures(p: &Poly) -> Result<Vec<IntervalQ>> {
    let dp = p.derivative();
    let shared = polycore::gcd(p, &dp)?;
    let mut out = Vec::new();
    for (iv, mult) in isolate_real_roots(&dp)? {
        if mult != 1 {
            continue;
        }
        if shared.degree().map_or(false, |d| d > 0)
            && SturmChain::new(&shared)?.count_distinct(&iv)? > 0
        {
            continue;
        }
        out.push(iv);
    }
    Ok(out)
}

/// Shrinks an isolating interval for a root of `anchor` until `clear` has no
/// roots inside it nor at its endpoints.
fn refine_until_clear(anchor: &Poly, iv: &IntervalQ, clear: &Poly) -> Result<IntervalQ> {
    let mut iv = iv.clone();
    let mut width = iv.width().unwrap();
    loop {
        let ok = match count_real_roots(clear, &iv, false) {
            Ok(c) => c == 0,
            Err(Error::EndpointCollision(_)) => false,
            Err(e) => return Err(e),
        };
        if ok {
            return Ok(iv);
        }
        width = width / rat_int(4);
        iv = match refine_root(anchor, &iv, &width) {
            Ok(r) => r,
            Err(_) => refine_root(anchor, &iv, &(width.clone() * rat(2, 3)))?,
        };
    }
}

/// Counts roots of `q` with multiplicity, retrying with nudged endpoints
/// never needed because callers pre-clear them.
fn count_mult(q: &Poly, iv: &IntervalQ) -> Result<usize> {
    count_real_roots(q, iv, true)
}

/// Checks the structure of `R = p p''/(p')^2` for a real-rooted spec:
/// negative residues, the partial-fraction reconstruction at sample points,
/// and concavity of `R` at rational samples between the poles.
pub fn verify_r_structure(spec: &RootSpec, width: &Rat) -> Result<VerificationResult> {
    let p = from_roots(spec)?;
    let n = p.degree().unwrap() as i64;
    let enclosures = diffpoly::residues_beta(&p, width)?;
    let d = spec.distinct() as i64;
    let mut pass = enclosures.len() as i64 == d - 1;
    let mut notes = Vec::new();
    if !pass {
        notes.push(format!(
            "expected {} simple external critical points, found {}",
            d - 1,
            enclosures.len()
        ));
    }
    let negatives = enclosures.iter().filter(|e| e.is_strictly_negative()).count();
    if negatives != enclosures.len() {
        pass = false;
        notes.push("a residue enclosure is not strictly negative".into());
    }

    // reconstruction: R(x) must lie inside (n-1)/n + sum of beta_j/(x-mu_j)^2
    let dp = p.derivative();
    let ddp = dp.derivative();
    let bound = p.cauchy_bound() + &dp.cauchy_bound() + Rat::one();
    let mut samples = vec![-bound.clone(), bound.clone()];
    for w in enclosures.windows(2) {
        let lo = w[0].mu.hi.finite().unwrap();
        let hi = w[1].mu.lo.finite().unwrap();
        if lo < hi {
            samples.push((lo + hi) / rat_int(2));
        }
    }
    for x in samples {
        let dv = dp.evaluate(&x);
        if dv.is_zero() {
            continue;
        }
        if enclosures.iter().any(|e| e.mu.contains(&x)) {
            continue;
        }
        let exact = p.evaluate(&x) * ddp.evaluate(&x) / (&dv * &dv);
        let mut acc = RatInterval::point(rat(n - 1, n));
        for e in &enclosures {
            let shift = RatInterval::new(
                &x - e.mu.hi.finite().unwrap(),
                &x - e.mu.lo.finite().unwrap(),
            );
            acc = acc.add(&e.beta_interval().div(&shift.mul(&shift))?);
        }
        if !acc.contains(&exact) {
            pass = false;
            notes.push(format!("reconstruction fails at x = {x}"));
        }
    }

    // concavity: the numerator of R'' sampled between consecutive poles
    let u = &p * &ddp;
    let a = &(&u.derivative() * &dp) - &(&u * &ddp).scale(&rat_int(2));
    let w_num = &(&a.derivative() * &dp) - &(&a * &ddp).scale(&rat_int(3));
    let mut cuts = vec![-bound.clone()];
    for e in &enclosures {
        cuts.push(e.mu.lo.finite().unwrap().clone());
        cuts.push(e.mu.hi.finite().unwrap().clone());
    }
    cuts.push(bound);
    for seg in cuts.chunks(2) {
        let (lo, hi) = (&seg[0], &seg[1]);
        if lo >= hi {
            continue;
        }
        let step = (hi - lo) / rat_int(11);
        for i in 1..=10 {
            let x = lo + &step * rat_int(i);
            if dp.evaluate(&x).is_zero() {
                continue;
            }
            if sign(&w_num.evaluate(&x)) > 0 {
                pass = false;
                notes.push(format!("R'' positive at sample x = {x}"));
            }
        }
    }

    Ok(VerificationResult {
        claim_id: "r-structure".into(),
        pass,
        observed: negatives as i64,
        lower: d - 1,
        upper: d - 1,
        witness: if notes.is_empty() {
            format!("all {} residues negative; reconstruction and concavity hold", d - 1)
        } else {
            notes.join("; ")
        },
    })
}

/// Checks the census of zeroes of `R` between consecutive poles:
/// `1, 2, ..., 2, 1` counting multiplicity.
pub fn verify_r_zero_layout(spec: &RootSpec) -> Result<VerificationResult> {
    let p = from_roots(spec)?;
    let d = spec.distinct();
    if d < 2 {
        return Err(Error::Precondition("layout needs d >= 2".into()));
    }
    let dp = p.derivative();
    let (h, _) = strip_common(&(&p * &dp.derivative()), &dp)?;
    let mut enclosures = external_critical_enclosures(&p)?;
    for iv in enclosures.iter_mut() {
        *iv = refine_until_clear(&dp, iv, &h)?;
    }
    let mut counts = Vec::new();
    let mut prev = Bound::NegInf;
    for iv in &enclosures {
        counts.push(count_mult(
            &h,
            &IntervalQ::new(prev, iv.lo.clone())?,
        )?);
        prev = iv.hi.clone();
    }
    counts.push(count_mult(&h, &IntervalQ::new(prev, Bound::PosInf)?)?);
    let mut expect = vec![2usize; d];
    expect[0] = 1;
    *expect.last_mut().unwrap() = 1;
    let total: usize = counts.iter().sum();
    Ok(VerificationResult {
        claim_id: "r-zero-layout".into(),
        pass: counts == expect,
        observed: total as i64,
        lower: (2 * d - 2) as i64,
        upper: (2 * d - 2) as i64,
        witness: format!("p = {p}, census {counts:?}, expected {expect:?}"),
    })
}

/// Checks the solution count of `R(z) = k`: `2d - 2` solutions off the top
/// ladder step and `2d - 4` at it, with the non-real solutions exactly the
/// non-real zeroes of `F_k[p]`, and one solution in each outer interval for
/// `0 < k < (n-1)/n`.
pub fn verify_equation_solution_count(spec: &RootSpec, kappa: &Rat) -> Result<VerificationResult> {
    let p = from_roots(spec)?;
    let d = spec.distinct() as i64;
    if d < 2 {
        return Err(Error::Precondition("equation census needs d >= 2".into()));
    }
    let n = p.degree().unwrap() as i64;
    let f = f_kappa(&p, kappa)?;
    let dp = p.derivative();
    let dp2 = &dp * &dp;
    let s = f.exact_div(&polycore::gcd(&f, &dp2)?)?;
    let solutions = s.degree().unwrap_or(0) as i64;
    let at_top = *kappa == rat(n - 1, n);
    let expect = if at_top { 2 * d - 4 } else { 2 * d - 2 };
    let mut pass = solutions == expect;
    let mut notes = Vec::new();
    if nonreal_count(&s)? != nonreal_count(&f)? {
        pass = false;
        notes.push("non-real solution set differs from non-real zero set of F".to_string());
    }
    // one solution in each unbounded interval beyond the extreme poles
    if sign(kappa) > 0 && *kappa < rat(n - 1, n) && !s.is_constant() {
        let mut enclosures = external_critical_enclosures(&p)?;
        for iv in enclosures.iter_mut() {
            *iv = refine_until_clear(&dp, iv, &s)?;
        }
        let first = enclosures.first().unwrap();
        let last = enclosures.last().unwrap();
        let left = count_mult(&s, &IntervalQ::new(Bound::NegInf, first.lo.clone())?)?;
        let right = count_mult(&s, &IntervalQ::new(last.hi.clone(), Bound::PosInf)?)?;
        if (left, right) != (1, 1) {
            pass = false;
            notes.push(format!("outer interval census ({left}, {right}) != (1, 1)"));
        }
    }
    Ok(VerificationResult {
        claim_id: if at_top {
            "equation-count/top-step".into()
        } else {
            "equation-count".into()
        },
        pass,
        observed: solutions,
        lower: expect,
        upper: expect,
        witness: if notes.is_empty() {
            format!("p = {p}, kappa = {kappa}, {solutions} solutions")
        } else {
            notes.join("; ")
        },
    })
}

/// `F-hat` without a minimum-degree gate: `p' p''' - (2 - 1/k)(p'')^2`,
/// valid for any `p` of degree >= 2 (degenerating to a constant at n = 2).
fn hat_defect(p: &Poly, kappa: &Rat) -> Result<Poly> {
    if kappa.is_zero() {
        return Err(Error::DivisionByZero("hat map undefined at kappa = 0".into()));
    }
    let dp = p.derivative();
    let ddp = dp.derivative();
    let shift = rat_int(2) - Rat::one() / kappa;
    Ok(&(&dp * &ddp.derivative()) - &(&ddp * &ddp).scale(&shift))
}

/// Root count of `q` on an open interval, tolerating endpoint roots by
/// dividing out the corresponding linear factors first.
fn count_open(q: &Poly, iv: &IntervalQ, with_multiplicity: bool) -> Result<usize> {
    let mut q = q.clone();
    for b in [&iv.lo, &iv.hi] {
        if let Some(x) = b.finite() {
            let lin = Poly::new(vec![-x.clone(), Rat::one()]);
            while !q.is_constant() && q.evaluate(x).is_zero() {
                q = q.exact_div(&lin)?;
            }
        }
    }
    count_real_roots(&q, iv, with_multiplicity)
}

/// Certifies that `p`, `p'`, `p''` have no roots in the open interval,
/// returning a precondition error otherwise.
fn require_root_free(p: &Poly, iv: &IntervalQ) -> Result<()> {
    for (name, q) in [("p", p.clone()), ("p'", p.derivative()), ("p''", p.derivative_n(2))] {
        if count_open(&q, iv, false)? != 0 {
            return Err(Error::Precondition(format!("{name} has a root in {iv:?}")));
        }
    }
    Ok(())
}

/// Checks the interval inequality `Z_iv(F_k) <= 1 + Z_iv(F-hat_k)` counting
/// multiplicity, on an interval free of roots of `p`, `p'`, `p''`.
pub fn verify_interval_inequality(p: &Poly, kappa: &Rat, iv: &IntervalQ) -> Result<VerificationResult> {
    if sign(kappa) <= 0 {
        return Err(Error::Precondition("interval inequality needs kappa > 0".into()));
    }
    if iv.lo.finite().is_none() || iv.hi.finite().is_none() {
        return Err(Error::Precondition("interval must be finite".into()));
    }
    require_root_free(p, iv)?;
    let f = f_kappa(p, kappa)?;
    let fh = hat_defect(p, kappa)?;
    let (nf, _) = strip_common(&f, p)?;
    let z = count_open(&nf, iv, true)?;
    let zh = if fh.is_zero() {
        usize::MAX
    } else {
        let (nfh, _) = strip_common(&fh, &p.derivative())?;
        count_open(&nfh, iv, true)?
    };
    let pass = zh == usize::MAX || z <= 1 + zh;
    Ok(VerificationResult {
        claim_id: "interval-inequality".into(),
        pass,
        observed: z as i64,
        lower: 0,
        upper: if zh == usize::MAX { i64::MAX } else { 1 + zh as i64 },
        witness: format!("p = {p}, kappa = {kappa}, Z = {z}, Z-hat = {zh}"),
    })
}

/// Checks the global inequality: real non-trivial zeroes of `F_k[p]` are at
/// most the real non-trivial zeroes of `F-hat_k[p]`, for `1/2 < k < (n-1)/n`.
pub fn verify_global_inequality(spec: &RootSpec, kappa: &Rat) -> Result<VerificationResult> {
    let p = from_roots(spec)?;
    let n = p.degree().unwrap() as i64;
    if spec.distinct() < 3 {
        return Err(Error::Precondition("global inequality needs d >= 3".into()));
    }
    if !(rat(1, 2) < *kappa && *kappa < rat(n - 1, n)) {
        return Err(Error::Precondition(
            "global inequality needs 1/2 < kappa < (n-1)/n".into(),
        ));
    }
    let report = nontrivial_zeros(&p, kappa)?;
    let fh = hat_defect(&p, kappa)?;
    let dp = p.derivative();
    let zh = if fh.is_zero() {
        usize::MAX
    } else {
        let (nfh, _) = strip_common(&fh, &dp)?;
        if nfh.is_constant() {
            0
        } else {
            count_real_roots(&nfh, &IntervalQ::whole_line(), true)?
        }
    };
    let z = report.z_real_nt;
    Ok(VerificationResult {
        claim_id: "global-inequality".into(),
        pass: zh == usize::MAX || z <= zh,
        observed: z as i64,
        lower: 0,
        upper: if zh == usize::MAX { i64::MAX } else { zh as i64 },
        witness: format!("p = {p}, kappa = {kappa}, Z_R = {z}, Z_R-hat = {zh}"),
    })
}

/// Checks the local sign lemma on an interval free of roots of `p`, `p'`,
/// `p''`: if the sign of `p' p'' F F-hat` just right of the left endpoint is
/// positive, `F` has no zeroes there; if negative, at most one. When `F-hat`
/// has a single rational zero `xi` in the interval shared with `F`, checks
/// that the multiplicity of `xi` in `F` exceeds its multiplicity in `F-hat`
/// by exactly one.
pub fn verify_sign_lemma(p: &Poly, kappa: &Rat, iv: &IntervalQ) -> Result<VerificationResult> {
    if sign(kappa) <= 0 {
        return Err(Error::Precondition("sign lemma needs kappa > 0".into()));
    }
    let a = iv
        .lo
        .finite()
        .ok_or_else(|| Error::Precondition("interval must be finite".into()))?
        .clone();
    if iv.hi.finite().is_none() {
        return Err(Error::Precondition("interval must be finite".into()));
    }
    require_root_free(p, iv)?;
    let f = f_kappa(p, kappa)?;
    let fh = hat_defect(p, kappa)?;
    if f.is_zero() || fh.is_zero() {
        return Err(Error::Precondition("degenerate F or F-hat".into()));
    }
    let hat_roots = count_open(&fh, iv, false)?;
    if hat_roots == 0 {
        let sigma = sign_right_of(&p.derivative(), &a)?
            * sign_right_of(&p.derivative_n(2), &a)?
            * sign_right_of(&f, &a)?
            * sign_right_of(&fh, &a)?;
        let z = count_open(&f, iv, true)?;
        let (upper, case) = if sigma > 0 { (0, "no-zero") } else { (1, "one-zero") };
        return Ok(VerificationResult {
            claim_id: format!("sign-lemma/{case}"),
            pass: z <= upper,
            observed: z as i64,
            lower: 0,
            upper: upper as i64,
            witness: format!("p = {p}, kappa = {kappa}, sign = {sigma}, Z = {z}"),
        });
    }
    if hat_roots == 1 {
        let shared = polycore::gcd(&f, &fh)?;
        let xi = if shared.degree().map_or(false, |dg| dg > 0) {
            diffpoly::rational_root_in(&square_free_part(&shared)?, iv)
        } else {
            None
        };
        if let Some(xi) = xi {
            let lin = Poly::new(vec![-xi.clone(), Rat::one()]);
            let m_hat = fh.multiplicity_of_factor(&lin)?;
            let m_f = f.multiplicity_of_factor(&lin)?;
            return Ok(VerificationResult {
                claim_id: "sign-lemma/shared-zero".into(),
                pass: m_f == m_hat + 1,
                observed: m_f as i64,
                lower: (m_hat + 1) as i64,
                upper: (m_hat + 1) as i64,
                witness: format!("xi = {xi}: mult in F-hat = {m_hat}, in F = {m_f}"),
            });
        }
        return Ok(VerificationResult {
            claim_id: "sign-lemma/shared-zero-skipped".into(),
            pass: true,
            observed: 0,
            lower: 0,
            upper: 0,
            witness: "the zero of F-hat in the interval is irrational or not shared".into(),
        });
    }
    Err(Error::Precondition(
        "F-hat has more than one zero in the interval".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_spec() -> RootSpec {
        RootSpec::from_integers(1, &[(-13, 4), (-10, 1), (15, 1), (20, 3)]).unwrap()
    }

    #[test]
    fn profile_examples() {
        let pr = profile(&fig1_spec()).unwrap();
        assert_eq!((pr.n, pr.d, pr.n_1, pr.n_d), (9, 4, 4, 3));
        assert_eq!(pr.interior, vec![(1, 2)]);

        let pr = profile(&RootSpec::from_integers(1, &[(1, 3), (2, 2), (3, 3)]).unwrap()).unwrap();
        assert_eq!(pr.d, 3);
        assert_eq!(pr.interior, vec![(2, 1)]);

        let pr = profile(&RootSpec::from_integers(1, &[(0, 2), (1, 1)]).unwrap()).unwrap();
        assert_eq!(pr.d, 2);
        assert!(pr.interior.is_empty());

        assert!(profile(&RootSpec::from_integers(1, &[(0, 3)]).unwrap()).is_err());
    }

    #[test]
    fn main_bounds_fig1() {
        let spec = fig1_spec();
        for (kappa, z_c, lo, hi) in [
            (rat_int(-1), 0, 0, 0),
            (rat(1, 100), 0, 0, 4),
            (rat(7, 8), 4, 4, 4),
            (rat(8, 9), 4, 4, 4),
            (rat(9, 10), 6, 6, 6),
        ] {
            let res = verify_main_bounds(&spec, &kappa).unwrap();
            assert!(res.pass, "kappa = {kappa}: {}", res.witness);
            assert_eq!(res.observed, z_c, "kappa = {kappa}");
            assert_eq!((res.lower, res.upper), (lo, hi), "kappa = {kappa}");
        }
    }

    #[test]
    fn main_bounds_two_distinct() {
        let spec = RootSpec::from_integers(1, &[(0, 2), (1, 1)]).unwrap();
        let res = verify_main_bounds(&spec, &rat(7, 10)).unwrap();
        assert!(res.pass);
        assert_eq!(res.observed, 2);
        let res = verify_main_bounds(&spec, &rat(2, 3)).unwrap();
        assert!(res.pass);
        assert_eq!(res.observed, 0);
    }

    #[test]
    fn sweep_examples() {
        let spec = RootSpec::from_integers(1, &[(0, 1), (1, 1)]).unwrap();
        let report = kappa_sweep(&spec).unwrap();
        assert!(report.monotone);
        let seq: Vec<(Rat, usize)> = report
            .windows
            .iter()
            .map(|w| (w.kappa.clone(), w.z_c))
            .collect();
        assert_eq!(
            seq,
            vec![
                (rat_int(0), 0),
                (rat(1, 4), 0),
                (rat(1, 2), 0),
                (rat(3, 2), 2)
            ]
        );

        let report = kappa_sweep(&fig1_spec()).unwrap();
        assert!(report.monotone);
        let tail: Vec<usize> = report.windows.iter().rev().take(2).map(|w| w.z_c).collect();
        assert_eq!(tail, vec![6, 4]); // above the top step, then at 8/9

        // uniform interior multiplicity: Z_C = 0 up to (m-1)/m
        let spec = RootSpec::from_integers(1, &[(1, 3), (2, 3), (3, 3)]).unwrap();
        let report = kappa_sweep(&spec).unwrap();
        assert!(report.monotone);
        for w in &report.windows {
            if w.kappa <= rat(2, 3) {
                assert_eq!(w.z_c, 0, "kappa = {}", w.kappa);
            }
        }
    }

    #[test]
    fn total_nontrivial_examples() {
        // top ladder step with a coefficient prefix of length 2
        let p = Poly::from_integers(&[1, 0, 0, 1]);
        let res = verify_total_nontrivial(&p, &rat(2, 3)).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 1);

        // off-ladder with planted complex roots {i, -i, 2 (double)}
        let p = &Poly::from_integers(&[1, 0, 1]) * &Poly::from_integers(&[4, -4, 1]);
        let res = verify_total_nontrivial(&p, &rat(1, 5)).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 4);

        // critical step k=2 with one double root
        let spec = RootSpec::from_integers(1, &[(1, 3), (2, 2), (3, 3)]).unwrap();
        let res = verify_total_nontrivial(&from_roots(&spec).unwrap(), &rat(1, 2)).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!((res.lower, res.upper), (2, 3));

        // degenerate: unique multiple zero at the top step
        let p = from_roots(&RootSpec::from_integers(1, &[(1, 4)]).unwrap()).unwrap();
        let res = verify_total_nontrivial(&p, &rat(3, 4)).unwrap();
        assert!(res.pass);
        assert_eq!(res.claim_id, "total-nontrivial/degenerate");
    }

    #[test]
    fn degree_drop_examples() {
        let res = verify_degree_drop(&Poly::from_integers(&[1, 0, 0, 1])).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 1);

        let p = from_roots(&RootSpec::from_integers(1, &[(1, 4)]).unwrap()).unwrap();
        let res = verify_degree_drop(&p).unwrap();
        assert!(res.pass);
        assert_eq!(res.claim_id, "degree-drop/pure-power");

        let res = verify_degree_drop(&Poly::from_integers(&[1, 1, 1])).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 0);
    }

    #[test]
    fn distinct_bound_examples() {
        let res = verify_distinct_bound(&rat_int(0), 4, &Poly::from_integers(&[0, 1])).unwrap();
        assert!(res.pass);
        assert_eq!((res.observed, res.lower), (4, 3));

        let res = verify_distinct_bound(&rat_int(0), 3, &Poly::from_integers(&[1])).unwrap();
        assert!(res.pass);
        assert_eq!((res.observed, res.lower), (3, 3));

        let res = verify_distinct_bound(&rat_int(1), 5, &Poly::from_integers(&[-1, 1])).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert!(res.observed >= 3);

        assert!(verify_distinct_bound(&rat_int(0), 3, &Poly::from_integers(&[0, 0, 1])).is_err());
    }

    #[test]
    fn r_structure_examples() {
        let res = verify_r_structure(
            &RootSpec::from_integers(1, &[(-1, 1), (1, 1)]).unwrap(),
            &rat(1, 16),
        )
        .unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 1);

        let res = verify_r_structure(
            &RootSpec::from_integers(1, &[(0, 1), (1, 1)]).unwrap(),
            &rat(1, 16),
        )
        .unwrap();
        assert!(res.pass, "{}", res.witness);

        let res = verify_r_structure(&fig1_spec(), &rat(1, 4)).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 3);
    }

    #[test]
    fn r_zero_layout_examples() {
        let res =
            verify_r_zero_layout(&RootSpec::from_integers(1, &[(0, 1), (1, 1), (2, 1)]).unwrap())
                .unwrap();
        assert!(res.pass, "{}", res.witness);

        let res =
            verify_r_zero_layout(&RootSpec::from_integers(1, &[(0, 2), (1, 1)]).unwrap()).unwrap();
        assert!(res.pass, "{}", res.witness);

        let res = verify_r_zero_layout(&fig1_spec()).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 6);
    }

    #[test]
    fn equation_count_examples() {
        let spec = RootSpec::from_integers(1, &[(0, 1), (1, 1)]).unwrap();
        let res = verify_equation_solution_count(&spec, &rat(1, 4)).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 2);

        let spec = RootSpec::from_integers(1, &[(0, 2), (1, 1)]).unwrap();
        let res = verify_equation_solution_count(&spec, &rat(1, 2)).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 2);

        let spec = RootSpec::from_integers(1, &[(0, 1), (1, 1)]).unwrap();
        let res = verify_equation_solution_count(&spec, &rat(1, 2)).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 0);
    }

    #[test]
    fn interval_inequality_examples() {
        let p = Poly::from_integers(&[0, -3, 0, 1]);
        let iv = IntervalQ::finite(rat(11, 10), rat(8, 5)).unwrap();
        let res = verify_interval_inequality(&p, &rat(3, 4), &iv).unwrap();
        assert!(res.pass, "{}", res.witness);

        let p = Poly::from_integers(&[1, 0, 1]);
        let iv = IntervalQ::finite(rat_int(0), rat_int(2)).unwrap();
        let res = verify_interval_inequality(&p, &rat_int(1), &iv).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 1);

        // root of p inside the interval is a precondition failure
        let p = Poly::from_integers(&[-1, 0, 1]);
        let iv = IntervalQ::finite(rat(1, 2), rat(3, 2)).unwrap();
        assert!(matches!(
            verify_interval_inequality(&p, &rat_int(1), &iv),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn global_inequality_examples() {
        for (roots, kappa) in [
            (vec![(0, 1), (1, 1), (2, 1)], rat(3, 5)),
            (vec![(1, 3), (2, 2), (3, 3)], rat(7, 10)),
            (vec![(0, 1), (1, 1), (2, 1), (3, 1)], rat(2, 3)),
        ] {
            let spec = RootSpec::from_integers(1, &roots).unwrap();
            let res = verify_global_inequality(&spec, &kappa).unwrap();
            assert!(res.pass, "{}", res.witness);
        }
        let spec = RootSpec::from_integers(1, &[(0, 1), (1, 1), (2, 1)]).unwrap();
        assert!(verify_global_inequality(&spec, &rat(1, 4)).is_err());
    }

    #[test]
    fn sign_lemma_examples() {
        let p = Poly::from_integers(&[0, -3, 0, 1]);
        let iv = IntervalQ::finite(rat(11, 10), rat(8, 5)).unwrap();
        let res = verify_sign_lemma(&p, &rat(3, 4), &iv).unwrap();
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 0);
    }

    #[test]
    fn sign_lemma_shared_zero() {
        // p chosen so F and F-hat share the zero 0, with multiplicities 2, 1
        let p = Poly::new(vec![rat_int(2), rat_int(2), rat_int(1), rat(1, 3)]);
        let iv = IntervalQ::finite(rat(-1, 2), rat(1, 2)).unwrap();
        let res = verify_sign_lemma(&p, &rat_int(1), &iv).unwrap();
        assert_eq!(res.claim_id, "sign-lemma/shared-zero");
        assert!(res.pass, "{}", res.witness);
        assert_eq!(res.observed, 2);
    }
}
