//! Sparse multivariate Laurent polynomials in colored variables `z[i,a]`.
//!
//! Terms are kept in a BTreeMap under a graded-lexicographic monomial order
//! (color-major, slot-minor variable order), so iteration, serialization and
//! hashing are deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::CoreError;
use crate::scalar::Scalar;
use crate::uni::UniLaurent;

/// Colored variable `z[color, slot]`; slots are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub color: u16,
    pub slot: u16,
}

impl VarId {
    pub fn new(color: usize, slot: usize) -> Self {
        VarId {
            color: color as u16,
            slot: slot as u16,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z[{},{}]", self.color, self.slot)
    }
}

/// Degree vector: number of variables per color.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeVector(pub Vec<u32>);

impl DegreeVector {
    pub fn zero(colors: usize) -> Self {
        DegreeVector(vec![0; colors])
    }

    pub fn unit(colors: usize, color: usize) -> Self {
        let mut v = vec![0; colors];
        v[color] = 1;
        DegreeVector(v)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        DegreeVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// All variables of this degree context, in canonical order.
    pub fn variables(&self) -> Vec<VarId> {
        let mut v = Vec::new();
        for (i, &n) in self.0.iter().enumerate() {
            for a in 1..=n {
                v.push(VarId::new(i, a as usize));
            }
        }
        v
    }
}

/// Monomial: sorted map of variables to nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarId, i64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId, exp: i64) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i64)>) -> Self {
        let mut m: BTreeMap<VarId, i64> = BTreeMap::new();
        for (v, e) in pairs {
            let s = m.entry(v).or_insert(0);
            *s += e;
            if *s == 0 {
                m.remove(&v);
            }
        }
        Monomial(m.into_iter().collect())
    }

    pub fn exponents(&self) -> &[(VarId, i64)] {
        &self.0
    }

    pub fn exponent(&self, v: VarId) -> i64 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial::from_pairs(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn inv(&self) -> Self {
        Monomial(self.0.iter().map(|(v, e)| (*v, -e)).collect())
    }

    /// Apply a variable relabeling; the map must cover every variable present.
    pub fn rename(&self, map: &BTreeMap<VarId, VarId>) -> Result<Self, CoreError> {
        let mut pairs = Vec::with_capacity(self.0.len());
        for (v, e) in &self.0 {
            let w = map
                .get(v)
                .ok_or_else(|| CoreError::UnmappedVariable(v.to_string()))?;
            pairs.push((*w, *e));
        }
        Ok(Monomial::from_pairs(pairs))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded-lexicographic: total degree first, then exponent vectors compared
    /// variable by variable under the canonical variable order.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let mut i = 0;
        let mut j = 0;
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(v, e)), Some(&(w, f))) => match v.cmp(&w) {
                    Ordering::Less => {
                        // self has exponent e at v, other has 0 there
                        match e.cmp(&0) {
                            Ordering::Equal => unreachable!(),
                            o => return o,
                        }
                    }
                    Ordering::Greater => match 0.cmp(&f) {
                        Ordering::Equal => unreachable!(),
                        o => return o,
                    },
                    Ordering::Equal => {
                        match e.cmp(&f) {
                            Ordering::Equal => {}
                            o => return o,
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&(_, e)), None) => match e.cmp(&0) {
                    Ordering::Equal => unreachable!(),
                    o => return o,
                },
                (None, Some(&(_, f))) => match 0.cmp(&f) {
                    Ordering::Equal => unreachable!(),
                    o => return o,
                },
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse Laurent polynomial: monomial -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::term(Monomial::one(), Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        LaurentPoly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(m, c);
        }
        LaurentPoly { terms: t }
    }

    pub fn var_pow(v: VarId, exp: i64) -> Self {
        LaurentPoly::term(Monomial::var(v, exp), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(entry) => {
                *entry = entry.add(&c);
                if entry.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = LaurentPoly::zero();
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (m, c) in &small.terms {
            r.add_assign(&big.mul_term(m, c));
        }
        r
    }

    /// Homogeneous degree when the polynomial is homogeneous.
    pub fn hom_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        if it.all(|m| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// The set of variables that actually occur.
    pub fn variables(&self) -> BTreeSet<VarId> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.exponents() {
                s.insert(*v);
            }
        }
        s
    }

    /// Range of exponents of a given variable over all terms (0 if absent
    /// from a term); None when the polynomial is zero.
    pub fn exponent_range(&self, v: VarId) -> Option<(i64, i64)> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        if self.is_zero() {
            return None;
        }
        for m in self.terms.keys() {
            let e = m.exponent(v);
            lo = lo.min(e);
            hi = hi.max(e);
        }
        Some((lo, hi))
    }

    /// Substitute each variable by `scale * target`. The map must cover every
    /// occurring variable and all scales must be nonzero.
    pub fn substitute(
        &self,
        map: &BTreeMap<VarId, (Scalar, VarId)>,
    ) -> Result<Self, CoreError> {
        for (_, (s, _)) in map.iter() {
            if s.is_zero() {
                return Err(CoreError::ZeroScale);
            }
        }
        let mut r = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut pairs = Vec::with_capacity(m.exponents().len());
            for (v, e) in m.exponents() {
                let (s, w) = map
                    .get(v)
                    .ok_or_else(|| CoreError::UnmappedVariable(v.to_string()))?;
                if !s.is_one() {
                    coeff = coeff.mul(&s.pow(*e)?);
                }
                pairs.push((*w, *e));
            }
            r.add_term(Monomial::from_pairs(pairs), coeff);
        }
        Ok(r)
    }

    /// Pure slot relabeling (no scales).
    pub fn rename(&self, map: &BTreeMap<VarId, VarId>) -> Result<Self, CoreError> {
        let mut r = LaurentPoly::zero();
        for (m, c) in &self.terms {
            r.add_term(m.rename(map)?, c.clone());
        }
        Ok(r)
    }

    /// Inject a univariate Laurent polynomial at `x = num_var / den_var` and
    /// multiply into self.
    pub fn mul_ratio_poly(&self, u: &UniLaurent, num_var: VarId, den_var: VarId) -> Self {
        let mut r = LaurentPoly::zero();
        for (e, c) in u.terms() {
            let m = Monomial::from_pairs([(num_var, *e), (den_var, -*e)]);
            r.add_assign(&self.mul_term(&m, c));
        }
        r
    }

    /// Exact division; returns NotDivisible with a witness description if the
    /// division leaves a remainder.
    pub fn exact_divide(&self, d: &Self) -> Result<Self, CoreError> {
        if d.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // Shift both so every variable's minimum exponent is exactly zero:
        // the lowest slice in each single variable multiplies without
        // cancellation, so the quotient is then an honest polynomial. Divide
        // greedily by leading terms and unshift.
        let shift_of = |p: &Self| -> Monomial {
            let vars = p.variables();
            let mut lo: BTreeMap<VarId, i64> = BTreeMap::new();
            for v in vars {
                let min = p
                    .terms
                    .keys()
                    .map(|m| m.exponent(v))
                    .min()
                    .unwrap_or(0);
                lo.insert(v, min);
            }
            Monomial::from_pairs(lo.into_iter().map(|(v, e)| (v, -e)))
        };
        let sa = shift_of(self);
        let sd = shift_of(d);
        let a = self.mul_term(&sa, &Scalar::one());
        let dd = d.mul_term(&sd, &Scalar::one());
        let (dlead, dcoeff) = dd.terms.iter().next_back().expect("nonzero divisor");
        let dlead = dlead.clone();
        let dcoeff = dcoeff.clone();
        let mut rem = a;
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let (rlead, rcoeff) = rem.terms.iter().next_back().unwrap();
            // monomial divisibility over the polynomial ring
            let ratio = rlead.mul(&dlead.inv());
            if ratio.exponents().iter().any(|(_, e)| *e < 0) {
                return Err(CoreError::NotDivisible(rlead.to_string()));
            }
            let c = rcoeff.div(&dcoeff).unwrap();
            quot.add_term(ratio.clone(), c.clone());
            rem = rem.sub(&dd.mul_term(&ratio, &c));
        }
        // quot * dd == a, so self/d = quot * sd / sa
        Ok(quot.mul_term(&sd.mul(&sa.inv()), &Scalar::one()))
    }

    /// Canonical encoding, stable across runs; used for digests and dedup.
    pub fn encode(&self) -> String {
        let mut s = String::new();
        for (m, c) in &self.terms {
            s.push_str(&format!("{m}:{c};"));
        }
        s
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "[{c}]")?;
            } else {
                write!(f, "[{c}]*{m}")?;
            }
        }
        Ok(())
    }
}

// ---- Symmetrization ----

/// Symmetrization mode: full orbit sum or minimal coset representatives of
/// (S_k x S_{n-k}) \ S_n per color (colored shuffles).
#[derive(Clone, Debug)]
pub enum SymMode {
    Full,
    Coset(DegreeVector),
}

/// Per-color slot permutations encoded as: for color i, `perm[a-1]` is the slot
/// that old slot `a` is sent to.
fn apply_slot_perm(
    p: &LaurentPoly,
    perms: &[Vec<usize>],
) -> LaurentPoly {
    let mut map = BTreeMap::new();
    for (color, perm) in perms.iter().enumerate() {
        for (a, &b) in perm.iter().enumerate() {
            map.insert(VarId::new(color, a + 1), VarId::new(color, b));
        }
    }
    p.rename(&map).expect("total relabeling")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // 1-based images
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// All per-color permutation tuples for the symmetrization group of `n`.
pub fn full_group(n: &DegreeVector) -> Vec<Vec<Vec<usize>>> {
    let per_color: Vec<Vec<Vec<usize>>> =
        n.0.iter().map(|&c| permutations(c as usize)).collect();
    cartesian(&per_color)
}

/// Minimal coset representatives of (S_k x S_{n-k}) \ S_n per color: the
/// permutation sends 1..k to the sorted subset and k+1..n to its complement.
pub fn shuffle_group(k: &DegreeVector, n: &DegreeVector) -> Vec<Vec<Vec<usize>>> {
    let per_color: Vec<Vec<Vec<usize>>> = n
        .0
        .iter()
        .zip(&k.0)
        .map(|(&total, &first)| {
            let total = total as usize;
            let first = first as usize;
            subsets(total, first)
                .into_iter()
                .map(|s| {
                    let chosen: BTreeSet<usize> = s.iter().copied().collect();
                    let mut perm = Vec::with_capacity(total);
                    perm.extend(s.iter().copied());
                    perm.extend((1..=total).filter(|x| !chosen.contains(x)));
                    perm
                })
                .collect()
        })
        .collect();
    cartesian(&per_color)
}

fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for item in list {
                let mut p = prefix.clone();
                p.push(item.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Orbit sum of `a` under per-color slot permutations.
///
/// Full mode sums over all permutations of slots 1..n_i per color; coset mode
/// sums over the colored-shuffle representatives determined by `k <= n`.
pub fn symmetrize(a: &LaurentPoly, n: &DegreeVector, mode: &SymMode) -> Result<LaurentPoly, CoreError> {
    for v in a.variables() {
        let color = v.color as usize;
        if color >= n.0.len() || v.slot as u32 > n.0[color] || v.slot == 0 {
            return Err(CoreError::SlotOutOfRange(v.to_string()));
        }
    }
    let group = match mode {
        SymMode::Full => full_group(n),
        SymMode::Coset(k) => {
            if k.0.len() != n.0.len() || k.0.iter().zip(&n.0).any(|(a, b)| a > b) {
                return Err(CoreError::SlotOutOfRange("coset k > n".into()));
            }
            shuffle_group(k, n)
        }
    };
    let mut r = LaurentPoly::zero();
    for perms in &group {
        r.add_assign(&apply_slot_perm(a, perms));
    }
    Ok(r)
}

/// True when `a` is invariant under every per-color slot permutation of `n`.
pub fn is_symmetric(a: &LaurentPoly, n: &DegreeVector) -> bool {
    for perms in full_group(n) {
        if &apply_slot_perm(a, &perms) != a {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(color: usize, slot: usize) -> VarId {
        VarId::new(color, slot)
    }

    #[test]
    fn inverse_monomials_cancel() {
        let a = LaurentPoly::var_pow(z(0, 1), 1);
        let b = LaurentPoly::var_pow(z(0, 1), -1);
        assert_eq!(a.mul(&b), LaurentPoly::one());
    }

    #[test]
    fn difference_of_squares() {
        let z1 = LaurentPoly::var_pow(z(0, 1), 1);
        let z2 = LaurentPoly::var_pow(z(0, 2), 1);
        let prod = z1.add(&z2).mul(&z1.sub(&z2));
        let mut expect = LaurentPoly::var_pow(z(0, 1), 2);
        expect.add_assign(&LaurentPoly::var_pow(z(0, 2), 2).neg());
        assert_eq!(prod, expect);
    }

    #[test]
    fn square_of_binomial_with_q() {
        // (1 - q z11/z21)^2 = 1 - 2q z11 z21^{-1} + q^2 z11^2 z21^{-2}
        let ratio = Monomial::from_pairs([(z(0, 1), 1), (z(1, 1), -1)]);
        let mut f = LaurentPoly::one();
        f.add_term(ratio.clone(), Scalar::q_pow(1).neg());
        let sq = f.mul(&f);
        let mut expect = LaurentPoly::one();
        expect.add_term(ratio.clone(), Scalar::q_pow(1).mul(&Scalar::from_int(-2)));
        expect.add_term(ratio.mul(&ratio), Scalar::q_pow(2));
        assert_eq!(sq, expect);
    }

    #[test]
    fn full_symmetrize_orbit() {
        let n = DegreeVector(vec![2]);
        let a = LaurentPoly::var_pow(z(0, 1), 1);
        let s = symmetrize(&a, &n, &SymMode::Full).unwrap();
        let expect = LaurentPoly::var_pow(z(0, 1), 1).add(&LaurentPoly::var_pow(z(0, 2), 1));
        assert_eq!(s, expect);
    }

    #[test]
    fn full_symmetrize_counts_stabilizer() {
        let n = DegreeVector(vec![2]);
        let sym_in = LaurentPoly::var_pow(z(0, 1), 1).add(&LaurentPoly::var_pow(z(0, 2), 1));
        let s = symmetrize(&sym_in, &n, &SymMode::Full).unwrap();
        assert_eq!(s, sym_in.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn coset_symmetrize_two_choose_one() {
        let n = DegreeVector(vec![2]);
        let k = DegreeVector(vec![1]);
        let (a, b) = (3, 5);
        let m = Monomial::from_pairs([(z(0, 1), a), (z(0, 2), b)]);
        let s = symmetrize(&LaurentPoly::term(m, Scalar::one()), &n, &SymMode::Coset(k)).unwrap();
        let mut expect = LaurentPoly::zero();
        expect.add_term(Monomial::from_pairs([(z(0, 1), a), (z(0, 2), b)]), Scalar::one());
        expect.add_term(Monomial::from_pairs([(z(0, 2), a), (z(0, 1), b)]), Scalar::one());
        assert_eq!(s, expect);
    }

    #[test]
    fn slot_out_of_range_rejected() {
        let n = DegreeVector(vec![1]);
        let a = LaurentPoly::var_pow(z(0, 2), 1);
        assert!(symmetrize(&a, &n, &SymMode::Full).is_err());
    }

    #[test]
    fn exact_divide_examples() {
        let z1 = LaurentPoly::var_pow(z(0, 1), 1);
        let z2 = LaurentPoly::var_pow(z(0, 2), 1);
        let num = z1.mul(&z1).sub(&z2.mul(&z2));
        let den = z1.sub(&z2);
        assert_eq!(num.exact_divide(&den).unwrap(), z1.add(&z2));
        let a = z1.add(&z2.scale(&Scalar::from_int(7)));
        assert_eq!(a.exact_divide(&LaurentPoly::one()).unwrap(), a);
        assert!(z1.add(&z2).exact_divide(&z1.sub(&z2)).is_err());
    }

    #[test]
    fn exact_divide_with_negative_exponents() {
        let m = Monomial::from_pairs([(z(0, 1), -2), (z(1, 1), 3)]);
        let d = LaurentPoly::term(m, Scalar::from_frac(2, 3));
        let a = LaurentPoly::var_pow(z(0, 1), 1).add(&LaurentPoly::one());
        let prod = a.mul(&d);
        assert_eq!(prod.exact_divide(&d).unwrap(), a);
    }

    #[test]
    fn substitute_examples() {
        // monomial rescale
        let a = LaurentPoly::var_pow(z(0, 1), 2);
        let mut map = BTreeMap::new();
        map.insert(z(0, 1), (Scalar::q_pow(2), z(0, 1)));
        assert_eq!(
            a.substitute(&map).unwrap(),
            LaurentPoly::var_pow(z(0, 1), 2).scale(&Scalar::q_pow(4))
        );
        // slot swap antisymmetry
        let d = LaurentPoly::var_pow(z(0, 1), 1).sub(&LaurentPoly::var_pow(z(0, 2), 1));
        let mut swap = BTreeMap::new();
        swap.insert(z(0, 1), (Scalar::one(), z(0, 2)));
        swap.insert(z(0, 2), (Scalar::one(), z(0, 1)));
        assert_eq!(d.substitute(&swap).unwrap(), d.neg());
        // collapse z11, z13 -> x kills z11 - z13
        let d2 = LaurentPoly::var_pow(z(0, 1), 1).sub(&LaurentPoly::var_pow(z(0, 3), 1));
        let mut col = BTreeMap::new();
        let x = z(1, 1);
        col.insert(z(0, 1), (Scalar::one(), x));
        col.insert(z(0, 3), (Scalar::one(), x));
        assert!(d2.substitute(&col).unwrap().is_zero());
        // unmapped variable is an error
        assert!(d2.substitute(&BTreeMap::new()).is_err());
    }

    #[test]
    fn grading_additive_on_products() {
        let a = LaurentPoly::var_pow(z(0, 1), 2).add(&LaurentPoly::term(
            Monomial::from_pairs([(z(0, 1), 1), (z(1, 1), 1)]),
            Scalar::from_int(4),
        ));
        let b = LaurentPoly::var_pow(z(1, 1), -3);
        assert_eq!(
            a.mul(&b).hom_degree(),
            Some(a.hom_degree().unwrap() + b.hom_degree().unwrap())
        );
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let m1 = Monomial::from_pairs([(z(0, 1), 1)]);
        let m2 = Monomial::from_pairs([(z(0, 2), 1)]);
        let m3 = Monomial::from_pairs([(z(0, 1), 2), (z(0, 2), -1)]);
        assert!(m1 > m2); // same degree, earlier variable has larger exponent in m1
        assert!(m3 > m1);
        assert_eq!(m1.cmp(&m1), Ordering::Equal);
    }
}
