//! Exact real-root counting and isolation via Sturm chains.
//!
//! Counting runs on the square-free part of the input so multiplicities never
//! confuse the sign-variation bookkeeping; multiplicity-aware counts are
//! assembled from the square-free decomposition. All interval endpoints are
//! rational and are required not to be roots — callers nudge, nothing is
//! silently perturbed.

use crate::polycore::{self, sign, Poly, Rat};
use crate::{Error, Result};
use num::{One, Signed, Zero};

/// One endpoint of a rational interval; infinities are first-class, handled
/// through leading-coefficient sign limits rather than large substitutes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Fin(Rat),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Bound::Fin(x) => Some(x),
            _ => None,
        }
    }
}

/// Open rational interval, possibly unbounded on either side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalQ {
    pub lo: Bound,
    pub hi: Bound,
}

impl IntervalQ {
    pub fn new(lo: Bound, hi: Bound) -> Result<Self> {
        if let (Bound::Fin(a), Bound::Fin(b)) = (&lo, &hi) {
            if a >= b {
                return Err(Error::InvalidInput(format!(
                    "interval requires lo < hi, got [{a}, {b}]"
                )));
            }
        }
        if matches!(lo, Bound::PosInf) || matches!(hi, Bound::NegInf) {
            return Err(Error::InvalidInput("inverted infinite bounds".into()));
        }
        Ok(IntervalQ { lo, hi })
    }

    pub fn whole_line() -> Self {
        IntervalQ {
            lo: Bound::NegInf,
            hi: Bound::PosInf,
        }
    }

    pub fn finite(lo: Rat, hi: Rat) -> Result<Self> {
        Self::new(Bound::Fin(lo), Bound::Fin(hi))
    }

    /// Width of a finite interval.
    pub fn width(&self) -> Option<Rat> {
        match (&self.lo, &self.hi) {
            (Bound::Fin(a), Bound::Fin(b)) => Some(b - a),
            _ => None,
        }
    }

    pub fn midpoint(&self) -> Option<Rat> {
        match (&self.lo, &self.hi) {
            (Bound::Fin(a), Bound::Fin(b)) => Some((a + b) / polycore::rat_int(2)),
            _ => None,
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above_lo = match &self.lo {
            Bound::NegInf => true,
            Bound::Fin(a) => a < x,
            Bound::PosInf => false,
        };
        let below_hi = match &self.hi {
            Bound::PosInf => true,
            Bound::Fin(b) => x < b,
            Bound::NegInf => false,
        };
        above_lo && below_hi
    }
}

/// Canonical Sturm chain: `polys[0]` is the input, `polys[1]` its derivative,
/// each later entry the negated remainder of the previous two.
#[derive(Debug, Clone)]
pub struct SturmChain {
    pub polys: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Result<Self> {
        if p.is_zero() || p.is_constant() {
            return Err(Error::InvalidInput(
                "Sturm chain needs a non-constant polynomial".into(),
            ));
        }
        let mut polys = vec![p.clone(), p.derivative()];
        loop {
            let n = polys.len();
            let (_, r) = polys[n - 2].div_rem(&polys[n - 1])?;
            if r.is_zero() {
                break;
            }
            // positive rescaling preserves all signs and tames growth
            let neg = -&r;
            let lc = neg.leading().unwrap().clone();
            let scaled = if lc.is_positive() {
                neg.scale(&(Rat::one() / lc))
            } else {
                neg.scale(&(-(Rat::one() / lc)))
            };
            polys.push(scaled);
        }
        Ok(SturmChain { polys })
    }

    fn variations_at(&self, at: &Bound) -> usize {
        let mut prev = 0i32;
        let mut v = 0usize;
        for p in &self.polys {
            let s = match at {
                Bound::Fin(x) => sign(&p.evaluate(x)),
                Bound::PosInf => p.leading().map_or(0, sign),
                Bound::NegInf => p.leading().map_or(0, |lc| {
                    let s = sign(lc);
                    if p.degree().unwrap_or(0) % 2 == 0 {
                        s
                    } else {
                        -s
                    }
                }),
            };
            if s != 0 {
                if prev != 0 && s != prev {
                    v += 1;
                }
                prev = s;
            }
        }
        v
    }

    /// Distinct real roots of the chain head in the open interval.
    /// Finite endpoints must not be roots.
    pub fn count_distinct(&self, iv: &IntervalQ) -> Result<usize> {
        for b in [&iv.lo, &iv.hi] {
            if let Some(x) = b.finite() {
                if self.polys[0].evaluate(x).is_zero() {
                    return Err(Error::EndpointCollision(x.to_string()));
                }
            }
        }
        let va = self.variations_at(&iv.lo);
        let vb = self.variations_at(&iv.hi);
        Ok(va.saturating_sub(vb))
    }
}

/// Builds the Sturm chain for `p`.
pub fn sturm_chain(p: &Poly) -> Result<SturmChain> {
    SturmChain::new(p)
}

/// Counts real roots of `p` in the open interval, distinct or with
/// multiplicity. Finite endpoints that are roots of `p` are an error;
/// callers nudge endpoints using root bounds.
pub fn count_real_roots(p: &Poly, iv: &IntervalQ, with_multiplicity: bool) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::InvalidInput("root count of zero polynomial".into()));
    }
    if p.is_constant() {
        return Ok(0);
    }
    for b in [&iv.lo, &iv.hi] {
        if let Some(x) = b.finite() {
            if p.evaluate(x).is_zero() {
                return Err(Error::EndpointCollision(x.to_string()));
            }
        }
    }
    if with_multiplicity {
        let mut total = 0usize;
        for (f, m) in polycore::square_free_decomposition(p)? {
            if f.is_constant() {
                continue;
            }
            total += m * SturmChain::new(&f)?.count_distinct(iv)?;
        }
        Ok(total)
    } else {
        let g = polycore::square_free_part(p)?;
        if g.is_constant() {
            return Ok(0);
        }
        SturmChain::new(&g)?.count_distinct(iv)
    }
}

/// Number of non-real zeroes of `p`, counting multiplicities. Always even.
pub fn nonreal_count(p: &Poly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "non-real count of zero polynomial".into(),
        ));
    }
    let n = match p.degree() {
        Some(0) | None => return Ok(0),
        Some(n) => n,
    };
    let real = count_real_roots(p, &IntervalQ::whole_line(), true)?;
    Ok(n - real)
}

/// Whether `p` has only real zeroes.
pub fn is_real_rooted(p: &Poly) -> Result<bool> {
    Ok(nonreal_count(p)? == 0)
}

fn shrink_isolating(chain: &SturmChain, center: &Rat, start: Rat) -> (Rat, Rat) {
    // `center` is an exact rational root of the chain head; shrink a
    // symmetric window until it isolates that root alone.
    let mut t = start;
    let two = polycore::rat_int(2);
    loop {
        let lo = center - &t;
        let hi = center + &t;
        if !chain.polys[0].evaluate(&lo).is_zero() && !chain.polys[0].evaluate(&hi).is_zero() {
            if let Ok(1) = chain.count_distinct(&IntervalQ::finite(lo, hi).unwrap()) {
                return (center - &t, center + &t);
            }
        }
        t = t / &two;
    }
}

fn isolate_squarefree(g: &Poly) -> Result<Vec<IntervalQ>> {
    let chain = SturmChain::new(g)?;
    let bound = g.cauchy_bound();
    let lo = -&bound;
    let hi = bound;
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let iv = IntervalQ::finite(a.clone(), b.clone())?;
        let cnt = chain.count_distinct(&iv)?;
        match cnt {
            0 => {}
            1 => out.push(iv),
            _ => {
                let mid = iv.midpoint().unwrap();
                if g.evaluate(&mid).is_zero() {
                    let start = (&b - &a) / polycore::rat_int(4);
                    let (l, h) = shrink_isolating(&chain, &mid, start);
                    stack.push((h.clone(), b));
                    out.push(IntervalQ::finite(l.clone(), h)?);
                    stack.push((a, l));
                } else {
                    stack.push((mid.clone(), b));
                    stack.push((a, mid));
                }
            }
        }
    }
    out.sort_by(|x, y| x.lo.finite().unwrap().cmp(y.lo.finite().unwrap()));
    Ok(out)
}

/// Pairwise-disjoint open rational intervals, each isolating one distinct
/// real root of `p`, annotated with the root's multiplicity. Sorted
/// ascending.
pub fn isolate_real_roots(p: &Poly) -> Result<Vec<(IntervalQ, usize)>> {
    if p.is_zero() || p.is_constant() {
        return Err(Error::InvalidInput(
            "root isolation needs a non-constant polynomial".into(),
        ));
    }
    let decomposition = polycore::square_free_decomposition(p)?;
    let g = polycore::square_free_part(p)?;
    if g.degree() == Some(0) {
        return Ok(vec![]);
    }
    let factor_chains: Vec<(SturmChain, usize)> = decomposition
        .iter()
        .filter(|(f, _)| !f.is_constant())
        .map(|(f, m)| Ok((SturmChain::new(f)?, *m)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for iv in isolate_squarefree(&g)? {
        let mut mult = None;
        for (chain, m) in &factor_chains {
            if chain.count_distinct(&iv)? == 1 {
                mult = Some(*m);
                break;
            }
        }
        let m = mult.expect("isolating interval of the square-free part holds one factor root");
        out.push((iv, m));
    }
    Ok(out)
}

/// Bisects `iv` (which must isolate exactly one distinct root of `p`) down
/// to width at most `width`, still isolating the root.
pub fn refine_root(p: &Poly, iv: &IntervalQ, width: &Rat) -> Result<IntervalQ> {
    if width.is_zero() || sign(width) < 0 {
        return Err(Error::InvalidInput("refinement width must be positive".into()));
    }
    let (mut lo, mut hi) = match (&iv.lo, &iv.hi) {
        (Bound::Fin(a), Bound::Fin(b)) => (a.clone(), b.clone()),
        _ => {
            return Err(Error::InvalidInput(
                "refinement needs a finite isolating interval".into(),
            ))
        }
    };
    let g = polycore::square_free_part(p)?;
    if g.is_constant() {
        return Err(Error::InvalidInput("polynomial has no roots".into()));
    }
    let chain = SturmChain::new(&g)?;
    let count = chain.count_distinct(&IntervalQ::finite(lo.clone(), hi.clone())?)?;
    if count != 1 {
        return Err(Error::InvalidInput(format!(
            "interval is not isolating (contains {count} roots)"
        )));
    }
    let two = polycore::rat_int(2);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let s_mid = sign(&g.evaluate(&mid));
        if s_mid == 0 {
            // the root is exactly `mid`
            let (l, h) = shrink_isolating(&chain, &mid, width / &two);
            return IntervalQ::finite(l, h);
        }
        if s_mid == sign(&g.evaluate(&lo)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    IntervalQ::finite(lo, hi)
}

/// Sign of `p` immediately to the right of `a`: the sign of the first
/// nonvanishing derivative value `p^(j)(a)`.
pub fn sign_right_of(p: &Poly, a: &Rat) -> Result<i32> {
    if p.is_zero() {
        return Err(Error::InvalidInput("sign of zero polynomial".into()));
    }
    let mut cur = p.clone();
    loop {
        let v = cur.evaluate(a);
        if !v.is_zero() {
            return Ok(sign(&v));
        }
        cur = cur.derivative();
    }
}

/// Closed rational interval used for certified enclosures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RatInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn add(&self, rhs: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }

    pub fn mul(&self, rhs: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    /// Interval quotient; the divisor must be sign-definite.
    pub fn div(&self, rhs: &RatInterval) -> Result<RatInterval> {
        if sign(&rhs.lo) * sign(&rhs.hi) <= 0 {
            return Err(Error::DivisionByZero(
                "interval divisor straddles zero".into(),
            ));
        }
        let quotients = [
            &self.lo / &rhs.lo,
            &self.lo / &rhs.hi,
            &self.hi / &rhs.lo,
            &self.hi / &rhs.hi,
        ];
        let lo = quotients.iter().min().unwrap().clone();
        let hi = quotients.iter().max().unwrap().clone();
        Ok(RatInterval::new(lo, hi))
    }

    pub fn is_strictly_negative(&self) -> bool {
        sign(&self.hi) < 0
    }
}

/// Interval Horner evaluation: a rational enclosure of `p(X)` for `x` in `X`.
pub fn eval_poly_interval(p: &Poly, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&RatInterval::point(c.clone()));
    }
    acc
}
