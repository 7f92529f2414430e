//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored in ascending degree order with the highest-index
//! coefficient nonzero; the zero polynomial is the empty sequence and its
//! degree is `None`. Degrees stay small (desk scale, <= ~40), so the dense
//! representation and plain rational Euclid are the right tools.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar. Always in lowest terms with positive denominator
/// (maintained by `num`).
pub type Rat = BigRational;

/// Rational from an integer pair; panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    BigRational::from_integer(BigInt::from(num))
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// A real-rooted polynomial given by its distinct rational roots with
/// multiplicities, plus a leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSpec {
    pub leading: Rat,
    pub roots: Vec<(Rat, usize)>,
}

impl RootSpec {
    pub fn new(leading: Rat, roots: Vec<(Rat, usize)>) -> Result<Self> {
        let spec = RootSpec { leading, roots };
        spec.validate()?;
        Ok(spec)
    }

    /// Convenience constructor from integer data.
    pub fn from_integers(leading: i64, roots: &[(i64, usize)]) -> Result<Self> {
        Self::new(
            rat_int(leading),
            roots.iter().map(|(r, m)| (rat_int(*r), *m)).collect(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.leading.is_zero() {
            return Err(Error::InvalidInput("leading coefficient is zero".into()));
        }
        for (i, (r, m)) in self.roots.iter().enumerate() {
            if *m == 0 {
                return Err(Error::InvalidInput(format!("root {r} has multiplicity 0")));
            }
            for (s, _) in &self.roots[..i] {
                if s == r {
                    return Err(Error::InvalidInput(format!("duplicate root {r}")));
                }
            }
        }
        Ok(())
    }

    /// Expanded degree `n`, the sum of multiplicities.
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// Number of distinct roots `d`.
    pub fn distinct(&self) -> usize {
        self.roots.len()
    }

    /// Roots sorted ascending.
    pub fn sorted_roots(&self) -> Vec<(Rat, usize)> {
        let mut v = self.roots.clone();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// Dense univariate polynomial over the rationals, ascending coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `z`.
    pub fn x() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    /// Polynomial from ascending integer coefficients.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|c| rat_int(*c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Coefficient of `z^i`, zero-padded past the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Exact value via Horner.
    pub fn evaluate(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact formal derivative; constants map to the zero polynomial.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// `j`-th derivative.
    pub fn derivative_n(&self, j: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..j {
            p = p.derivative();
        }
        p
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic rescaling; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = Rat::one() / lc;
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: returns `(q, r)` with `self = q*d + r`,
    /// `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::DivisionByZero("polynomial division by zero".into()))?;
        let lc = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lc;
            for i in 0..=dd {
                let t = &d.coeffs[i] * &c;
                rem[k + i] -= t;
            }
            while rem.last().map_or(false, |x| x.is_zero()) {
                rem.pop();
            }
            quot[k] = c;
            // the loop strictly shrinks rem past index k + dd
            rem.truncate(k + dd);
            while rem.last().map_or(false, |x| x.is_zero()) {
                rem.pop();
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Division that must be exact; errors on a nonzero remainder.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// True when `d^k` divides `self` but `d^(k+1)` does not; returns `k`.
    pub fn multiplicity_of_factor(&self, d: &Poly) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "multiplicity undefined for the zero polynomial".into(),
            ));
        }
        let mut k = 0usize;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(d)?;
            if !r.is_zero() {
                return Ok(k);
            }
            k += 1;
            cur = q;
            if cur.is_zero() {
                return Ok(k);
            }
        }
    }

    /// Cauchy root bound: every complex root has absolute value below this.
    pub fn cauchy_bound(&self) -> Rat {
        let lc = match self.leading() {
            None => return Rat::one(),
            Some(lc) => lc,
        };
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let a = (c / lc).abs();
            if a > m {
                m = a;
            }
        }
        Rat::one() + m
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Expands `a_0 * prod (z - r_k)^{m_k}` exactly.
pub fn from_roots(spec: &RootSpec) -> Result<Poly> {
    spec.validate()?;
    let mut p = Poly::constant(spec.leading.clone());
    for (r, m) in &spec.roots {
        let lin = Poly::new(vec![-r.clone(), Rat::one()]);
        for _ in 0..*m {
            p = &p * &lin;
        }
    }
    Ok(p)
}

/// Monic greatest common divisor over the rationals.
pub fn gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::InvalidInput("gcd(0, 0) is undefined".into()));
    }
    let mut a = p.clone();
    let mut b = q.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        // rescaling keeps coefficient growth in check
        b = r.monic();
    }
    Ok(a.monic())
}

/// The monic square-free part `p / gcd(p, p')`.
pub fn square_free_part(p: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::InvalidInput("square-free part of zero".into()));
    }
    if p.is_constant() {
        return Ok(Poly::one());
    }
    let g = gcd(p, &p.derivative())?;
    Ok(p.exact_div(&g)?.monic())
}

/// Yun's square-free decomposition: `p = leading * prod factor_i^{mult_i}`
/// with the factors monic, square-free, and pairwise coprime. Factors are
/// returned in ascending multiplicity order; multiplicities with no factor
/// are omitted.
pub fn square_free_decomposition(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    if p.is_zero() || p.is_constant() {
        return Err(Error::InvalidInput(
            "square-free decomposition needs a non-constant polynomial".into(),
        ));
    }
    let p = p.monic();
    let dp = p.derivative();
    let g = gcd(&p, &dp)?;
    let mut w = p.exact_div(&g)?;
    let mut y = dp.exact_div(&g)?;
    let mut z = &y - &w.derivative();
    let mut out = Vec::new();
    let mut i = 1usize;
    while w.degree() != Some(0) {
        let f = gcd(&w, &z)?;
        if f.degree().map_or(false, |d| d > 0) {
            out.push((f.clone(), i));
        }
        w = w.exact_div(&f)?.monic();
        y = z.exact_div(&f)?;
        z = &y - &w.derivative();
        i += 1;
    }
    Ok(out)
}

/// The number `d` of distinct complex zeroes: `deg(p / gcd(p, p'))`.
pub fn distinct_zero_count(p: &Poly) -> Result<usize> {
    if p.is_zero() || p.is_constant() {
        return Err(Error::InvalidInput(
            "distinct zero count needs a non-constant polynomial".into(),
        ));
    }
    Ok(square_free_part(p)?.degree().unwrap())
}
