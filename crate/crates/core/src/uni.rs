//! Univariate Laurent polynomials over the ground field, and the power-series
//! inversion used by the constant-term machinery.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::CoreError;
use crate::scalar::Scalar;

/// Sparse univariate Laurent polynomial: exponent -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniLaurent {
    terms: BTreeMap<i64, Scalar>,
}

impl UniLaurent {
    pub fn zero() -> Self {
        UniLaurent::default()
    }

    pub fn one() -> Self {
        UniLaurent::term(0, Scalar::one())
    }

    pub fn term(exp: i64, coeff: Scalar) -> Self {
        let mut t = BTreeMap::new();
        if !coeff.is_zero() {
            t.insert(exp, coeff);
        }
        UniLaurent { terms: t }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut u = UniLaurent::zero();
        for (e, c) in terms {
            u.add_term(e, c);
        }
        u
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(Scalar::is_one).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: i64) -> Scalar {
        self.terms.get(&exp).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, exp: i64, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Scalar::zero);
        *entry = entry.add(&coeff);
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Lowest exponent (the valuation at x = 0); None for zero.
    pub fn lowest(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn highest(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Exponent spread: highest - lowest, 0 for monomials.
    pub fn spread(&self) -> Option<i64> {
        Some(self.highest()? - self.lowest()?)
    }

    pub fn lowest_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next()
    }

    pub fn highest_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        UniLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = UniLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                r.add_term(e1 + e2, c1.mul(c2));
            }
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return UniLaurent::zero();
        }
        UniLaurent {
            terms: self.terms.iter().map(|(e, k)| (*e, k.mul(c))).collect(),
        }
    }

    /// x -> 1/x.
    pub fn reverse(&self) -> Self {
        UniLaurent {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitute x -> c*x for a nonzero scalar c.
    pub fn rescale_arg(&self, c: &Scalar) -> Self {
        UniLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (*e, k.mul(&c.pow(*e).expect("nonzero scale"))))
                .collect(),
        }
    }

    /// Evaluate at a nonzero scalar.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            acc = acc.add(&c.mul(&x.pow(*e).expect("nonzero argument")));
        }
        acc
    }

    /// Exact division; errors with the offending remainder when not exact.
    pub fn div_exact(&self, other: &Self) -> Result<Self, CoreError> {
        if other.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(UniLaurent::zero());
        }
        // An exact quotient has exponents between low(self)-low(other) and
        // high(self)-high(other).
        let emax = self.highest().unwrap() - other.highest().unwrap();
        let mut rem = self.clone();
        let mut quot = UniLaurent::zero();
        let dlow = other.lowest().unwrap();
        let dc = other.lowest_coeff().unwrap().clone();
        while !rem.is_zero() {
            let rlow = rem.lowest().unwrap();
            let e = rlow - dlow;
            if e > emax {
                return Err(CoreError::NotDivisible(format!("x^{rlow}")));
            }
            let c = rem.lowest_coeff().unwrap().div(&dc).unwrap();
            quot.add_term(e, c.clone());
            let t = UniLaurent::term(e, c);
            rem = rem.sub(&t.mul(other));
        }
        Ok(quot)
    }
}

impl fmt::Display for UniLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]*x^{e}")?;
        }
        Ok(())
    }
}

/// `1/f` presented as `scale * x^shift * (c_0 + c_1 x + ...)` with `c_0 = 1`.
#[derive(Clone, Debug)]
pub struct SeriesInverse {
    /// Exponent of the pulled-out monomial (equals minus the valuation of f).
    pub shift: i64,
    /// Inverse of the lowest coefficient of f.
    pub scale: Scalar,
    /// Unit-part coefficients `c_0..c_order`, with `c_0 = 1`.
    pub coeffs: Vec<Scalar>,
}

/// Invert `f = alpha x^s (1 + g)` as a power series to the given order.
pub fn series_inverse(f: &UniLaurent, order: usize) -> Result<SeriesInverse, CoreError> {
    if f.is_zero() {
        return Err(CoreError::ZeroInput);
    }
    let s = f.lowest().unwrap();
    let alpha = f.lowest_coeff().unwrap().clone();
    // unit part u_k = coeff(f, s+k)/alpha with u_0 = 1
    let mut unit = Vec::with_capacity(order + 1);
    for k in 0..=order as i64 {
        unit.push(f.coeff(s + k).div(&alpha).unwrap());
    }
    // c_0 = 1; c_k = -sum_{j=1..k} u_j c_{k-j}
    let mut coeffs = vec![Scalar::one()];
    for k in 1..=order {
        let mut acc = Scalar::zero();
        for j in 1..=k {
            acc = acc.add(&unit[j].mul(&coeffs[k - j]));
        }
        coeffs.push(acc.neg());
    }
    Ok(SeriesInverse {
        shift: -s,
        scale: alpha.inv()?,
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> UniLaurent {
        UniLaurent::term(1, Scalar::one())
    }

    #[test]
    fn geometric_series() {
        // f = 1 - x, order 3 -> prefactor 1, coefficients [1,1,1,1]
        let f = UniLaurent::one().sub(&x());
        let s = series_inverse(&f, 3).unwrap();
        assert_eq!(s.shift, 0);
        assert!(s.scale.is_one());
        assert_eq!(s.coeffs, vec![Scalar::one(); 4]);
    }

    #[test]
    fn q_scaled_series() {
        // f = q^{-2} - x, order 2 -> prefactor q^2, coefficients [1, q^2, q^4]
        let f = UniLaurent::term(0, Scalar::q_pow(-2)).sub(&x());
        let s = series_inverse(&f, 2).unwrap();
        assert_eq!(s.shift, 0);
        assert_eq!(s.scale, Scalar::q_pow(2));
        assert_eq!(
            s.coeffs,
            vec![Scalar::one(), Scalar::q_pow(2), Scalar::q_pow(4)]
        );
    }

    #[test]
    fn monomial_pull_out() {
        // f = x^{-1}(1 - x), order 1 -> prefactor x, coefficients [1,1]
        let f = UniLaurent::term(-1, Scalar::one()).sub(&UniLaurent::one());
        let s = series_inverse(&f, 1).unwrap();
        assert_eq!(s.shift, 1);
        assert!(s.scale.is_one());
        assert_eq!(s.coeffs, vec![Scalar::one(), Scalar::one()]);
    }

    #[test]
    fn reconstruction_is_one_mod_truncation() {
        // (f * series) == 1 modulo x^{order+1}, exactly
        let f = UniLaurent::from_terms([
            (-1, Scalar::from_int(2)),
            (0, Scalar::from_int(-3)),
            (2, Scalar::from_frac(1, 5)),
        ]);
        let order = 7usize;
        let s = series_inverse(&f, order).unwrap();
        let mut series = UniLaurent::zero();
        for (k, c) in s.coeffs.iter().enumerate() {
            series.add_term(s.shift + k as i64, c.mul(&s.scale));
        }
        let prod = f.mul(&series);
        assert!(prod.coeff(0).is_one());
        for e in 1..=order as i64 {
            assert!(prod.coeff(e).is_zero(), "order {e} not cancelled");
        }
    }

    #[test]
    fn exact_division() {
        let f = UniLaurent::from_terms([(0, Scalar::one()), (1, Scalar::from_int(-1))]);
        let g = UniLaurent::from_terms([(0, Scalar::one()), (2, Scalar::from_int(-1))]);
        let q = g.div_exact(&f).unwrap();
        assert_eq!(q.mul(&f), g);
        assert!(f.div_exact(&g).is_err());
    }

    #[test]
    fn zero_input_rejected() {
        assert!(series_inverse(&UniLaurent::zero(), 3).is_err());
    }
}
