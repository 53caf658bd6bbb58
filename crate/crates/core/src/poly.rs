//! Dense univariate polynomials.
//!
//! `UniPoly<S>` is generic over the scalar; the exact-rational
//! instantiation additionally gets square-free decomposition (Yun) and
//! Sturm-sequence real-root isolation, both running on primitive integer
//! coefficient vectors so that no floating point ever enters the
//! multiplicity path.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::{Int, Rat};
use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial with dense coefficients, constant term first.
///
/// The zero polynomial is the empty coefficient vector; otherwise the
/// leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![S::one()],
        }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// c * x^deg
    pub fn monomial(c: S, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); deg + 1];
        coeffs[deg] = c;
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Number of zero coefficients below the first nonzero one, i.e. the
    /// multiplicity of the root at the origin. Zero for the zero polynomial.
    pub fn trailing_zero_count(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * crate::scalar::small::<S>(i as u64))
            .collect();
        Self::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b.clone();
            }
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Quotient and remainder; requires the scalar to support exact
    /// division by the divisor's leading coefficient (a field in practice).
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomialDivision);
        }
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((Self::zero(), self.clone()));
        }
        let lead = divisor.coeffs[dlen - 1].clone();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![S::zero(); qlen];
        for qi in (0..qlen).rev() {
            let c = rem[qi + dlen - 1].clone();
            if c.is_zero() {
                continue;
            }
            let q = c / lead.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = rem[qi + j].clone() - q.clone() * d.clone();
                rem[qi + j] = t;
            }
            quot[qi] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; a nonzero remainder is an error, not a truncation.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonzeroRemainder {
                remainder_degree: r.degree().unwrap_or(0),
            })
        }
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Exact-rational specifics: primitive integer representation, gcd,
// square-free decomposition, Sturm isolation.
// ---------------------------------------------------------------------------

impl UniPoly<Rat> {
    pub fn from_int_coeffs(coeffs: Vec<Int>) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(Rat::from_integer)
                .collect(),
        )
    }

    /// Write `self = content * primitive` with a primitive integer
    /// polynomial (coprime coefficients, positive leading coefficient).
    /// The zero polynomial yields `(0, [])`.
    pub fn to_primitive_int(&self) -> (Rat, Vec<Int>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let mut den = Int::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut cont = int_poly::content(&ints);
        if ints.last().unwrap().sign() == Sign::Minus {
            cont = -cont;
        }
        let prim: Vec<Int> = ints.iter().map(|c| c / &cont).collect();
        (Rat::new(cont, den), prim)
    }

    /// Square-free decomposition `self = c * prod p_i^{m_i}` with pairwise
    /// coprime square-free primitive factors, multiplicities ascending.
    #[allow(clippy::type_complexity)]
    pub fn squarefree_decompose(&self) -> Result<(Rat, Vec<(UniPoly<Rat>, u32)>)> {
        if self.is_zero() {
            return Err(Error::InvalidParameter(
                "square-free decomposition of the zero polynomial".into(),
            ));
        }
        let (content, prim) = self.to_primitive_int();
        if prim.len() <= 1 {
            return Ok((content, Vec::new()));
        }
        let factors = int_poly::yun(&prim)
            .into_iter()
            .map(|(p, m)| (UniPoly::from_int_coeffs(p), m))
            .collect();
        Ok((content, factors))
    }

    /// Product of the distinct irreducible factors (radical).
    pub fn square_free_part(&self) -> Result<UniPoly<Rat>> {
        let (_, factors) = self.squarefree_decompose()?;
        let mut acc = UniPoly::one();
        for (p, _) in &factors {
            acc = acc.mul(p);
        }
        Ok(acc)
    }

    /// Rational interval of width at most `precision` containing exactly
    /// one real root of `self`: the largest. Exact roots collapse to a
    /// point interval.
    pub fn isolate_largest_real_root(&self, precision: &Rat) -> Result<(Rat, Rat)> {
        let chain = SturmChain::new(self)?;
        chain.isolate_largest(precision)
    }
}

/// Sturm chain of the square-free part, over primitive integer
/// coefficient vectors. Sign variations skip zero evaluations, which
/// makes half-open root counts `(a, b]` exact even at endpoint roots.
pub struct SturmChain {
    chain: Vec<Vec<Int>>,
}

impl SturmChain {
    pub fn new(f: &UniPoly<Rat>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::NoRealRoot);
        }
        let g = f.square_free_part()?;
        let (_, prim) = g.to_primitive_int();
        if prim.len() <= 1 {
            return Err(Error::NoRealRoot);
        }
        let mut chain = vec![prim.clone(), int_poly::derivative(&prim)];
        loop {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            if b.is_empty() {
                chain.pop();
                break;
            }
            let (rem, mult_sign) = int_poly::signed_pseudo_rem(a, b);
            if rem.is_empty() {
                break;
            }
            // next = -rem(a, b) up to a positive factor
            let mut next = int_poly::primitive_part(&rem);
            if mult_sign > 0 {
                for c in &mut next {
                    *c = -std::mem::take(c);
                }
            }
            chain.push(next);
        }
        Ok(Self { chain })
    }

    /// Sign variations at x, skipping zero values.
    pub fn variations_at(&self, x: &Rat) -> usize {
        let mut last: i8 = 0;
        let mut count = 0;
        for p in &self.chain {
            let s = int_poly::sign_at(p, x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots_in(&self, lo: &Rat, hi: &Rat) -> usize {
        debug_assert!(lo < hi);
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Cauchy bound: all real roots lie strictly inside `(-B, B)`.
    pub fn root_bound(&self) -> Rat {
        let g = &self.chain[0];
        let lead = Rat::from_integer(g.last().unwrap().abs());
        let mut max = Rat::zero();
        for c in &g[..g.len() - 1] {
            let v = Rat::from_integer(c.abs()) / lead.clone();
            if v > max {
                max = v;
            }
        }
        max + Rat::one()
    }

    fn isolate_largest(&self, precision: &Rat) -> Result<(Rat, Rat)> {
        let bound = self.root_bound();
        let mut lo = -bound.clone();
        let mut hi = bound;
        if self.count_roots_in(&lo, &hi) == 0 {
            return Err(Error::NoRealRoot);
        }
        let two = Rat::from_integer(Int::from(2));
        loop {
            let width = hi.clone() - lo.clone();
            if self.count_roots_in(&lo, &hi) == 1 && width <= *precision {
                break;
            }
            let mid = (lo.clone() + hi.clone()) / two.clone();
            if self.count_roots_in(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if int_poly::sign_at(&self.chain[0], &hi) == 0 {
            return Ok((hi.clone(), hi));
        }
        Ok((lo, hi))
    }
}

/// Integer polynomial helpers (dense, constant term first, no leading zeros).
pub(crate) mod int_poly {
    use super::*;

    pub fn trim(mut v: Vec<Int>) -> Vec<Int> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    /// Positive gcd of the coefficients (1 for the zero polynomial to keep
    /// callers division-safe).
    pub fn content(p: &[Int]) -> Int {
        let mut g = Int::zero();
        for c in p {
            g = g.gcd(c);
        }
        if g.is_zero() {
            Int::one()
        } else {
            g
        }
    }

    /// Divide by the positive content. Keeps the sign pattern.
    pub fn primitive_part(p: &[Int]) -> Vec<Int> {
        let c = content(p);
        p.iter().map(|x| x / &c).collect()
    }

    pub fn derivative(p: &[Int]) -> Vec<Int> {
        if p.len() <= 1 {
            return Vec::new();
        }
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Int::from(i))
            .collect()
    }

    fn sub_scaled(a: &mut [Int], b: &[Int], factor: &Int, shift: usize) {
        for (j, bc) in b.iter().enumerate() {
            a[shift + j] -= factor * bc;
        }
    }

    /// Pseudo-remainder: the remainder of `lc(b)^s * a` by `b` for some
    /// s >= 0, together with the sign of that multiplier (so callers can
    /// restore sign conventions).
    pub fn signed_pseudo_rem(a: &[Int], b: &[Int]) -> (Vec<Int>, i8) {
        assert!(!b.is_empty(), "pseudo-remainder by zero polynomial");
        if a.len() < b.len() {
            return (a.to_vec(), 1);
        }
        let lead = b.last().unwrap().clone();
        let mut rem = a.to_vec();
        let mut steps = 0usize;
        while rem.len() >= b.len() && !rem.is_empty() {
            // rem <- lead * rem - lc(rem) * x^shift * b
            let shift = rem.len() - b.len();
            let coeff = rem.last().unwrap().clone();
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            sub_scaled(&mut rem, b, &coeff, shift);
            rem = trim(rem);
            steps += 1;
        }
        let sign = if lead.sign() == Sign::Minus && steps % 2 == 1 {
            -1
        } else {
            1
        };
        (rem, sign)
    }

    /// Exact quotient of integer polynomials; panics if the division is
    /// not exact (callers only divide known factors).
    pub fn exact_div(a: &[Int], b: &[Int]) -> Vec<Int> {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.is_empty() {
            return Vec::new();
        }
        assert!(a.len() >= b.len(), "exact_div degree underflow");
        let lead = b.last().unwrap();
        let mut rem = a.to_vec();
        let qlen = a.len() - b.len() + 1;
        let mut quot = vec![Int::zero(); qlen];
        for qi in (0..qlen).rev() {
            let c = rem[qi + b.len() - 1].clone();
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(lead);
            assert!(r.is_zero(), "non-exact integer polynomial division");
            sub_scaled(&mut rem, b, &q, qi);
            quot[qi] = q;
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "non-exact integer polynomial division (remainder)"
        );
        trim(quot)
    }

    /// Primitive gcd via the primitive pseudo-remainder sequence; the
    /// result is primitive with positive leading coefficient.
    pub fn gcd(a: &[Int], b: &[Int]) -> Vec<Int> {
        let mut r0 = primitive_part(&trim(a.to_vec()));
        let mut r1 = primitive_part(&trim(b.to_vec()));
        if r0.is_empty() {
            return normalize_sign(r1);
        }
        while !r1.is_empty() {
            let (rem, _) = signed_pseudo_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, primitive_part(&rem));
        }
        normalize_sign(r0)
    }

    fn normalize_sign(mut p: Vec<Int>) -> Vec<Int> {
        if p.last().is_some_and(|c| c.sign() == Sign::Minus) {
            for c in &mut p {
                *c = -std::mem::take(c);
            }
        }
        p
    }

    /// Yun's square-free decomposition of a primitive polynomial with
    /// positive leading coefficient and degree >= 1.
    pub fn yun(f: &[Int]) -> Vec<(Vec<Int>, u32)> {
        debug_assert!(f.len() >= 2);
        fn poly_sub(a: &[Int], b: &[Int]) -> Vec<Int> {
            let len = a.len().max(b.len());
            let mut out = Vec::with_capacity(len);
            for i in 0..len {
                let x = a.get(i).cloned().unwrap_or_else(Int::zero);
                let y = b.get(i).cloned().unwrap_or_else(Int::zero);
                out.push(x - y);
            }
            trim(out)
        }
        let fp = derivative(f);
        let a0 = gcd(f, &fp);
        let mut b = exact_div(f, &a0);
        let c = exact_div(&fp, &a0);
        let mut d = poly_sub(&c, &derivative(&b));
        let mut factors = Vec::new();
        let mut mult = 1u32;
        let max_mult = f.len() as u32;
        while b.len() >= 2 {
            assert!(mult <= max_mult, "square-free decomposition did not terminate");
            let a = gcd(&b, &d);
            if a.len() >= 2 {
                factors.push((a.clone(), mult));
            }
            b = exact_div(&b, &a);
            let c_next = if d.is_empty() {
                Vec::new()
            } else {
                exact_div(&d, &a)
            };
            d = poly_sub(&c_next, &derivative(&b));
            mult += 1;
        }
        factors
    }

    /// Sign of p at the rational point x, via the homogenized integer value
    /// `sum a_i num^i den^(d-i)` (den > 0 by Ratio normalization).
    pub fn sign_at(p: &[Int], x: &Rat) -> i8 {
        if p.is_empty() {
            return 0;
        }
        let num = x.numer();
        let den = x.denom();
        let mut acc = p.last().unwrap().clone();
        let mut den_pow = Int::one();
        for c in p.iter().rev().skip(1) {
            den_pow *= den;
            acc = acc * num + c * &den_pow;
        }
        match acc.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(Int::from(c)))
                .collect(),
        )
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn exact_div_quotient() {
        // (x^2 - 1) / (x - 1) = x + 1
        let f = rp(&[-1, 0, 1]);
        let g = rp(&[-1, 1]);
        assert_eq!(f.exact_div(&g).unwrap(), rp(&[1, 1]));
    }

    #[test]
    fn exact_div_self_is_one() {
        let f = rp(&[2, -3, 5, 7]);
        assert_eq!(f.exact_div(&f).unwrap(), UniPoly::one());
    }

    #[test]
    fn exact_div_rejects_remainder() {
        // x^3 / (x - 1) leaves remainder 1
        let f = rp(&[0, 0, 0, 1]);
        let g = rp(&[-1, 1]);
        assert!(matches!(
            f.exact_div(&g),
            Err(Error::NonzeroRemainder { .. })
        ));
    }

    #[test]
    fn squarefree_powers() {
        // (x-1)^3 (x+2)
        let f = rp(&[-1, 1]);
        let g = rp(&[2, 1]);
        let prod = f.mul(&f).mul(&f).mul(&g);
        let (c, factors) = prod.squarefree_decompose().unwrap();
        assert_eq!(c, Rat::one());
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0], (rp(&[2, 1]), 1));
        assert_eq!(factors[1], (rp(&[-1, 1]), 3));
    }

    #[test]
    fn squarefree_of_squarefree_is_identity() {
        let f = rp(&[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
        let (c, factors) = f.squarefree_decompose().unwrap();
        assert_eq!(c, Rat::one());
        assert_eq!(factors, vec![(f.clone(), 1)]);
    }

    #[test]
    fn squarefree_pure_power() {
        // x^5
        let f = rp(&[0, 0, 0, 0, 0, 1]);
        let (c, factors) = f.squarefree_decompose().unwrap();
        assert_eq!(c, Rat::one());
        assert_eq!(factors, vec![(rp(&[0, 1]), 5)]);
    }

    #[test]
    fn squarefree_reconstructs_with_content() {
        // 6 * (x/2 - 1)^2 = (3/2) x^2 - 6x + 6
        let f = UniPoly::new(vec![rat(6, 1), rat(-6, 1), rat(3, 2)]);
        let (c, factors) = f.squarefree_decompose().unwrap();
        let mut acc = UniPoly::constant(c);
        for (p, m) in &factors {
            for _ in 0..*m {
                acc = acc.mul(p);
            }
        }
        assert_eq!(acc, f);
    }

    #[test]
    fn isolate_sqrt_two() {
        let f = rp(&[-2, 0, 1]);
        let prec = rat(1, 100_000_000);
        let (lo, hi) = f.isolate_largest_real_root(&prec).unwrap();
        assert!(hi.clone() - lo.clone() <= prec);
        // sqrt(2) = 1.41421356...
        assert!(lo < rat(141421357, 100000000));
        assert!(hi > rat(141421356, 100000000));
    }

    #[test]
    fn isolate_exact_rational_root() {
        let f = rp(&[-3, 1]);
        let (lo, hi) = f.isolate_largest_real_root(&rat(1, 1000)).unwrap();
        assert_eq!(lo, rat(3, 1));
        assert_eq!(hi, rat(3, 1));
    }

    #[test]
    fn isolate_picks_largest_of_three() {
        // (x-1)(x-2)(x-3)
        let f = rp(&[-6, 11, -6, 1]);
        let (lo, hi) = f.isolate_largest_real_root(&rat(1, 64)).unwrap();
        assert!(lo < rat(3, 1) && rat(3, 1) <= hi || (lo == rat(3, 1) && hi == rat(3, 1)));
        assert!(lo > rat(2, 1));
    }

    #[test]
    fn no_real_root_reported() {
        let f = rp(&[1, 0, 1]); // x^2 + 1
        assert!(matches!(
            f.isolate_largest_real_root(&rat(1, 8)),
            Err(Error::NoRealRoot)
        ));
    }

    #[test]
    fn trailing_zeros_count() {
        let f = rp(&[0, 0, 0, 4, 1]);
        assert_eq!(f.trailing_zero_count(), 3);
        assert_eq!(rp(&[1, 1]).trailing_zero_count(), 0);
    }

    #[test]
    fn sturm_counts_roots_half_open() {
        // roots 1, 2, 3
        let f = rp(&[-6, 11, -6, 1]);
        let chain = SturmChain::new(&f).unwrap();
        assert_eq!(chain.count_roots_in(&rat(0, 1), &rat(4, 1)), 3);
        assert_eq!(chain.count_roots_in(&rat(1, 1), &rat(3, 1)), 2); // (1, 3] = {2, 3}
        assert_eq!(chain.count_roots_in(&rat(3, 1), &rat(10, 1)), 0);
    }
}
