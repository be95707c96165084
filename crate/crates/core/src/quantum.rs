//! The quadratic quantum loop group presented on the free algebra: word
//! combinations, quadratic relation elements, the evaluation homomorphism to
//! the shuffle algebra, straightening onto the non-increasing word basis,
//! windowed kernel computation, membership tests with certificates, the
//! kernel-description maps, and transfer of kernel elements along a
//! specialization.
//!
//! The minus side is carried by the plus-side machinery over the transposed
//! datum: `f_{i,d} <-> e_{i,-d}` preserves words, and polynomial bodies
//! correspond under inverting every variable.

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::linalg::{self, Matrix};
use crate::pairing::{pair_minus, pair_plus};
use crate::poly::{DegreeVector, LaurentPoly, Monomial, VarId};
use crate::scalar::Scalar;
use crate::shuffle::{
    clear_and_divide, sym_monomial, word_to_shuffle, RationalSummand, ShuffleElement, Sign,
};
use crate::uni::UniLaurent;
use crate::words::{
    enumerate_non_increasing, is_non_increasing, k_from_word_exponents, Letter, ShiftTable, Word,
};
use crate::zeta::{specialize, FactoredZeta, SpecPoint, ZetaDatum};

/// Element of the quadratic quantum loop group, presented in the free algebra
/// as a finite combination of words.
#[derive(Clone, Debug, PartialEq)]
pub struct UElement {
    pub sign: Sign,
    pub terms: BTreeMap<Word, Scalar>,
}

impl UElement {
    pub fn zero(sign: Sign) -> Self {
        UElement {
            sign,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sign: Sign) -> Self {
        UElement::from_word(Word::default(), sign)
    }

    pub fn from_word(w: Word, sign: Sign) -> Self {
        UElement {
            sign,
            terms: [(w, Scalar::one())].into_iter().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e = e.add(&c);
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CoreError> {
        if self.sign != other.sign {
            return Err(CoreError::SignMismatch);
        }
        let mut r = self.clone();
        for (w, c) in &other.terms {
            r.add_term(w.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return UElement::zero(self.sign);
        }
        UElement {
            sign: self.sign,
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CoreError> {
        self.add(&other.neg())
    }

    /// Split into homogeneous components keyed by (degree vector, degree).
    pub fn components(&self, colors: usize) -> BTreeMap<(DegreeVector, i64), UElement> {
        let mut out: BTreeMap<(DegreeVector, i64), UElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            let key = w.degree(colors);
            out.entry(key)
                .or_insert_with(|| UElement::zero(self.sign))
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// Shift automorphism on the word presentation: every letter exponent of
    /// color i moves by `k_i`.
    pub fn shift(&self, k: &[i64]) -> Self {
        UElement {
            sign: self.sign,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    let letters = w
                        .0
                        .iter()
                        .map(|l| Letter {
                            color: l.color,
                            exp: l.exp + k[l.color],
                        })
                        .collect();
                    (Word(letters), c.clone())
                })
                .collect(),
        }
    }

    pub fn encode(&self) -> String {
        let mut s = String::new();
        for (w, c) in &self.terms {
            s.push_str(&format!("{}:{};", w.encode(), c));
        }
        s
    }
}

/// Bilinear concatenation of words.
pub fn u_mul(a: &UElement, b: &UElement) -> Result<UElement, CoreError> {
    if a.sign != b.sign {
        return Err(CoreError::SignMismatch);
    }
    let mut r = UElement::zero(a.sign);
    for (w1, c1) in &a.terms {
        for (w2, c2) in &b.terms {
            r.add_term(w1.concat(w2), c1.mul(c2));
        }
    }
    Ok(r)
}

/// Coefficient of `z^{-d} w^{-k}` in the defining quadratic relation for the
/// pair of colors `(i, j)`. Nonzero in the free algebra, zero under the
/// evaluation homomorphism.
pub fn relation_element(
    i: usize,
    j: usize,
    d: i64,
    k: i64,
    sign: Sign,
    z: &ZetaDatum,
) -> UElement {
    let zt = match sign {
        Sign::Plus => z.clone(),
        Sign::Minus => z.transpose(),
    };
    let mut out = UElement::zero(sign);
    if i != j {
        // sum_t c^{ji}_t e_{i,d-t} e_{j,k+t} - sum_t c^{ij}_t e_{j,k-t} e_{i,d+t}
        for (t, c) in zt.tilde(j, i).terms() {
            out.add_term(
                Word(vec![
                    Letter { color: i, exp: d - t },
                    Letter { color: j, exp: k + t },
                ]),
                c.clone(),
            );
        }
        for (t, c) in zt.tilde(i, j).terms() {
            out.add_term(
                Word(vec![
                    Letter { color: j, exp: k - t },
                    Letter { color: i, exp: d + t },
                ]),
                c.neg(),
            );
        }
    } else {
        // denominators cleared: sum_t c_t (e_{i,d-t} e_{i,k+t} + e_{i,k-t+1} e_{i,d+t-1})
        for (t, c) in zt.tilde(i, i).terms() {
            out.add_term(
                Word(vec![
                    Letter { color: i, exp: d - t },
                    Letter { color: i, exp: k + t },
                ]),
                c.clone(),
            );
            out.add_term(
                Word(vec![
                    Letter { color: i, exp: k - t + 1 },
                    Letter { color: i, exp: d + t - 1 },
                ]),
                c.clone(),
            );
        }
    }
    out
}

/// Evaluation homomorphism into the shuffle algebra. The element must not mix
/// degree vectors (apply per component otherwise).
pub fn upsilon(a: &UElement, z: &ZetaDatum) -> Result<ShuffleElement, CoreError> {
    let colors = z.vertex_count();
    let mut parts: BTreeMap<DegreeVector, LaurentPoly> = BTreeMap::new();
    for (w, c) in &a.terms {
        let img = word_to_shuffle(w, a.sign, z)?;
        parts
            .entry(img.degree.clone())
            .or_insert_with(LaurentPoly::zero)
            .add_assign(&img.body.scale(c));
    }
    let nonzero = parts.iter().filter(|(_, p)| !p.is_zero()).count();
    if nonzero > 1 {
        return Err(CoreError::Precondition(
            "element mixes degree vectors; apply per component".into(),
        ));
    }
    if nonzero == 1 {
        let (n, body) = parts.into_iter().find(|(_, p)| !p.is_zero()).unwrap();
        return Ok(ShuffleElement::new(a.sign, n, body));
    }
    // zero image: keep the structural degree when it is unambiguous
    let degree = if parts.len() == 1 {
        parts.into_keys().next().unwrap()
    } else {
        DegreeVector::zero(colors)
    };
    Ok(ShuffleElement::new(a.sign, degree, LaurentPoly::zero()))
}

/// Budgets for the adaptive-window loops.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub window_margin: i64,
    pub window_growth: i64,
    pub rounds: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            window_margin: 3,
            window_growth: 2,
            rounds: 4,
        }
    }
}

/// Effective datum carrying a sign's word machinery: the plus side is the
/// datum itself, the minus side its transpose.
fn effective(z: &ZetaDatum, sign: Sign) -> ZetaDatum {
    match sign {
        Sign::Plus => z.clone(),
        Sign::Minus => z.transpose(),
    }
}

/// Symmetrized test monomial attached to a non-increasing word.
fn test_function(v: &Word, st: &ShiftTable) -> LaurentPoly {
    let colors: Vec<usize> = v.0.iter().map(|l| l.color).collect();
    let ds: Vec<i64> = v.0.iter().map(|l| l.exp).collect();
    let ks = k_from_word_exponents(&colors, &ds, st);
    let vars = v.relabel();
    let mut mu = Monomial::one();
    for (a, var) in vars.iter().enumerate() {
        mu = mu.mul(&Monomial::var(*var, -ks[a]));
    }
    let (n, _) = v.degree(st.size());
    sym_monomial(&mu, &n)
}

/// Straighten onto the non-increasing basis by the pairing-triangular solve,
/// verified against test functions outside the window and the evaluation
/// homomorphism; the window grows on mismatch until the budget is exhausted.
pub fn straighten(a: &UElement, z: &ZetaDatum, budget: &Budget) -> Result<UElement, CoreError> {
    let z_eff = effective(z, a.sign);
    let st = ShiftTable::of(&z_eff);
    let colors = z.vertex_count();
    let mut out = UElement::zero(a.sign);
    for ((n, d), comp) in a.components(colors) {
        if comp.terms.keys().all(|w| is_non_increasing(w, &st)) {
            for (w, c) in &comp.terms {
                out.add_term(w.clone(), c.clone());
            }
            continue;
        }
        let solved = straighten_component(&comp, &n, d, &z_eff, &st, budget)?;
        for (w, c) in &solved.terms {
            out.add_term(w.clone(), c.clone());
        }
    }
    Ok(out)
}

fn straighten_component(
    comp: &UElement,
    n: &DegreeVector,
    d: i64,
    z_eff: &ZetaDatum,
    st: &ShiftTable,
    budget: &Budget,
) -> Result<UElement, CoreError> {
    let exp_lo = comp
        .terms
        .keys()
        .flat_map(|w| w.0.iter().map(|l| l.exp))
        .min()
        .unwrap();
    let exp_hi = comp
        .terms
        .keys()
        .flat_map(|w| w.0.iter().map(|l| l.exp))
        .max()
        .unwrap();
    let min_word = comp.terms.keys().min().cloned().unwrap();
    let mut margin = budget.window_margin;
    for _ in 0..budget.rounds {
        let window = (exp_lo - margin, exp_hi + margin);
        let candidates = enumerate_non_increasing((n, d), window, Some(&min_word), st);
        if let Some(result) = try_triangular_solve(comp, &candidates, n, window, z_eff, st, d)? {
            return Ok(result);
        }
        margin += budget.window_growth;
    }
    Err(CoreError::BudgetExhausted(format!(
        "straightening at degree ({:?}, {d}) after {} rounds (final margin {margin})",
        n.0, budget.rounds
    )))
}

/// Solve the triangular pairing system over the candidate set; None when the
/// verification pass rejects the window.
fn try_triangular_solve(
    comp: &UElement,
    candidates: &[Word],
    n: &DegreeVector,
    window: (i64, i64),
    z_eff: &ZetaDatum,
    st: &ShiftTable,
    d: i64,
) -> Result<Option<UElement>, CoreError> {
    let single = |w: &Word| -> BTreeMap<Word, Scalar> {
        [(w.clone(), Scalar::one())].into_iter().collect()
    };
    // forward substitution in ascending word order; the pairing matrix is
    // triangular with nonzero diagonal on the candidate set
    let mut coeffs: Vec<Scalar> = Vec::with_capacity(candidates.len());
    for (idx, vp) in candidates.iter().enumerate() {
        let test = ShuffleElement::new(Sign::Minus, n.clone(), test_function(vp, st));
        let mut acc = pair_plus(&comp.terms, &test, z_eff)?;
        for (j, v) in candidates.iter().take(idx).enumerate() {
            if coeffs[j].is_zero() {
                continue;
            }
            let m = pair_plus(&single(v), &test, z_eff)?;
            acc = acc.sub(&coeffs[j].mul(&m));
        }
        let diag = pair_plus(&single(vp), &test, z_eff)?;
        if diag.is_zero() {
            return Ok(None);
        }
        coeffs.push(acc.div(&diag)?);
    }
    let mut result = UElement::zero(comp.sign);
    for (v, c) in candidates.iter().zip(&coeffs) {
        result.add_term(v.clone(), c.clone());
    }
    // verification: evaluation equality in the effective datum
    if upsilon_in(z_eff, comp)? != upsilon_in(z_eff, &result)? {
        return Ok(None);
    }
    // verification: extra test functions outside the window
    let wider = (window.0 - 2, window.1 + 2);
    let extra = enumerate_non_increasing((n, d), wider, None, st);
    for v in extra.iter().filter(|v| !candidates.contains(v)).take(8) {
        let test = ShuffleElement::new(Sign::Minus, n.clone(), test_function(v, st));
        let lhs = pair_plus(&comp.terms, &test, z_eff)?;
        let rhs = pair_plus(&result.terms, &test, z_eff)?;
        if lhs != rhs {
            return Ok(None);
        }
    }
    Ok(Some(result))
}

/// Evaluation inside the effective datum: words read as plus-side words.
fn upsilon_in(z_eff: &ZetaDatum, a: &UElement) -> Result<LaurentPoly, CoreError> {
    let mut acc = LaurentPoly::zero();
    for (w, c) in &a.terms {
        let img = word_to_shuffle(w, Sign::Plus, z_eff)?;
        acc.add_assign(&img.body.scale(c));
    }
    Ok(acc)
}

/// Basis of the kernel of `word -> word image` over the span of
/// non-increasing words of the given degree with exponents in the window.
/// Every output evaluates to zero exactly.
pub fn kernel_window(
    degree: (&DegreeVector, i64),
    window: (i64, i64),
    sign: Sign,
    z: &ZetaDatum,
) -> Result<Vec<UElement>, CoreError> {
    let st = ShiftTable::of(&effective(z, sign));
    let candidates = enumerate_non_increasing(degree, window, None, &st);
    if candidates.is_empty() {
        return Ok(Vec::new());
    }
    let images: Vec<LaurentPoly> = candidates
        .iter()
        .map(|w| word_to_shuffle(w, sign, z).map(|e| e.body))
        .collect::<Result<_, _>>()?;
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for img in &images {
        for (m, _) in img.terms() {
            let next = row_index.len();
            row_index.entry(m.clone()).or_insert(next);
        }
    }
    let mut mat = Matrix::zero(row_index.len().max(1), candidates.len());
    for (col, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            mat.set(row_index[m], col, c.clone());
        }
    }
    let basis = linalg::null_space(&mat);
    let mut out = Vec::new();
    for vec in basis {
        let mut u = UElement::zero(sign);
        for (w, c) in candidates.iter().zip(vec) {
            u.add_term(w.clone(), c);
        }
        debug_assert!(upsilon(&u, z)?.is_zero());
        out.push(u);
    }
    Ok(out)
}

/// Verdict of the membership test.
#[derive(Clone, Debug)]
pub enum MembershipVerdict {
    Member { expansion: BTreeMap<Word, Scalar> },
    NotMember { witness: UElement },
    Undecided { report: String },
}

/// Decide whether a homogeneous element lies in the span of word images. A
/// positive verdict carries the exact expansion; a negative one a kernel
/// certificate pairing nontrivially; otherwise the budget report.
pub fn membership(
    r: &ShuffleElement,
    z: &ZetaDatum,
    budget: &Budget,
) -> Result<MembershipVerdict, CoreError> {
    if r.is_zero() {
        return Ok(MembershipVerdict::Member {
            expansion: BTreeMap::new(),
        });
    }
    let h = r.body.hom_degree().ok_or_else(|| {
        CoreError::Precondition("membership requires a homogeneous element".into())
    })?;
    let d_word = match r.sign {
        Sign::Plus => h,
        Sign::Minus => -h,
    };
    let witness_sign = match r.sign {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    };
    let st = ShiftTable::of(&effective(z, r.sign));
    let mut exp_lo = i64::MAX;
    let mut exp_hi = i64::MIN;
    for v in r.degree.variables() {
        if let Some((lo, hi)) = r.body.exponent_range(v) {
            exp_lo = exp_lo.min(lo);
            exp_hi = exp_hi.max(hi);
        }
    }
    // word exponents track the monomial exponents up to sign
    let (base_lo, base_hi) = match r.sign {
        Sign::Plus => (exp_lo, exp_hi),
        Sign::Minus => (-exp_hi, -exp_lo),
    };
    let mut margin = budget.window_margin;
    for _ in 0..budget.rounds {
        let window = (base_lo - margin, base_hi + margin);
        let candidates = enumerate_non_increasing((&r.degree, d_word), window, None, &st);
        if !candidates.is_empty() {
            let images: Vec<LaurentPoly> = candidates
                .iter()
                .map(|w| word_to_shuffle(w, r.sign, z).map(|e| e.body))
                .collect::<Result<_, _>>()?;
            let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
            for p in images.iter().chain(std::iter::once(&r.body)) {
                for (m, _) in p.terms() {
                    let next = row_index.len();
                    row_index.entry(m.clone()).or_insert(next);
                }
            }
            let mut mat = Matrix::zero(row_index.len(), candidates.len());
            for (col, img) in images.iter().enumerate() {
                for (m, c) in img.terms() {
                    mat.set(row_index[m], col, c.clone());
                }
            }
            let mut rhs = vec![Scalar::zero(); row_index.len()];
            for (m, c) in r.body.terms() {
                rhs[row_index[m]] = c.clone();
            }
            if let Some(x) = linalg::solve(&mat, &rhs) {
                let mut expansion = BTreeMap::new();
                for (w, c) in candidates.iter().zip(x) {
                    if !c.is_zero() {
                        expansion.insert(w.clone(), c);
                    }
                }
                return Ok(MembershipVerdict::Member { expansion });
            }
        }
        // certificate scan over the kernel at the same degree
        let kernel = kernel_window((&r.degree, d_word), window, witness_sign, z)?;
        for phi in kernel {
            let value = match r.sign {
                Sign::Minus => pair_plus(&phi.terms, r, z)?,
                Sign::Plus => pair_minus(r, &phi.terms, z)?,
            };
            if !value.is_zero() {
                return Ok(MembershipVerdict::NotMember { witness: phi });
            }
        }
        margin += budget.window_growth;
    }
    Ok(MembershipVerdict::Undecided {
        report: format!(
            "no expansion within exponent margin {} of [{base_lo}, {base_hi}] and no certificate after {} rounds",
            margin - budget.window_growth,
            budget.rounds
        ),
    })
}

// ---- Kernel-description maps ----

/// Permutation of positions, as images (0-based).
pub type Perm = Vec<usize>;

/// Permutations preserving the relative order of equal-color positions.
pub fn order_classes(colors: &[usize]) -> Vec<Perm> {
    let n = colors.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let ok =
            (0..n).all(|a| ((a + 1)..n).all(|b| colors[a] != colors[b] || perm[a] < perm[b]));
        if ok {
            out.push(perm.clone());
        }
        if !next_perm(&mut perm) {
            break;
        }
    }
    out
}

fn next_perm(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Relabeled variables of a color context: position a of color i gets the
/// next free slot of color i.
pub fn context_vars(colors: &[usize]) -> Vec<VarId> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    colors
        .iter()
        .map(|&c| {
            let s = seen.entry(c).or_insert(0);
            *s += 1;
            VarId::new(c, *s)
        })
        .collect()
}

fn context_degree(colors: &[usize], total_colors: usize) -> DegreeVector {
    let mut n = DegreeVector::zero(total_colors);
    for &c in colors {
        n.0[c] += 1;
    }
    n
}

/// The symmetrized sum `sum_sigma Sym[p_sigma(z_{sigma(.)}) prod zeta]`, with
/// diagonal poles cleared exactly.
pub fn phi_map(
    inputs: &BTreeMap<Perm, LaurentPoly>,
    colors: &[usize],
    z: &ZetaDatum,
) -> Result<LaurentPoly, CoreError> {
    let n = colors.len();
    let vars = context_vars(colors);
    let degree = context_degree(colors, z.vertex_count());
    let mut summands: Vec<RationalSummand> = Vec::new();
    for (sigma, p) in inputs {
        if p.is_zero() {
            continue;
        }
        if sigma.len() != n {
            return Err(CoreError::Precondition("permutation length mismatch".into()));
        }
        // p_sigma(z_{sigma(1)}, ..., z_{sigma(n)})
        let mut map = BTreeMap::new();
        for a in 0..n {
            map.insert(vars[a], vars[sigma[a]]);
        }
        let mut num = p.rename(&map)?;
        let mut denom = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let (u, v) = (sigma[a], sigma[b]);
                let (iu, iv) = (colors[u], colors[v]);
                num = num.mul_ratio_poly(z.tilde(iu, iv), vars[u], vars[v]);
                if z.has_pole(iu, iv) {
                    // 1/(1 - z_u/z_v) = z_v/(z_v - z_u)
                    num = num.mul(&LaurentPoly::var_pow(vars[v], 1));
                    denom.push((vars[v], vars[u]));
                }
            }
        }
        for perms in crate::poly::full_group(&degree) {
            let mut pm = BTreeMap::new();
            for (color, perm) in perms.iter().enumerate() {
                for (s, &t) in perm.iter().enumerate() {
                    pm.insert(VarId::new(color, s + 1), VarId::new(color, t));
                }
            }
            summands.push(RationalSummand {
                num: num.rename(&pm)?,
                denom: denom.iter().map(|(u, v)| (pm[u], pm[v])).collect(),
            });
        }
    }
    clear_and_divide(summands, &degree)
}

/// Trivial-relation generator: maps a family indexed by ordered pairs of
/// order classes to a family in the kernel of [`phi_map`].
pub fn psi_map(
    inputs: &BTreeMap<(Perm, Perm), LaurentPoly>,
    colors: &[usize],
    z: &ZetaDatum,
) -> Result<BTreeMap<Perm, LaurentPoly>, CoreError> {
    let n = colors.len();
    let vars = context_vars(colors);
    let mut out: BTreeMap<Perm, LaurentPoly> = BTreeMap::new();
    for ((sigma, sigma_p), f) in inputs {
        if f.is_zero() {
            continue;
        }
        if sigma == sigma_p || sigma.len() != n || sigma_p.len() != n {
            return Err(CoreError::Precondition(
                "psi input must be indexed by distinct permutations of full length".into(),
            ));
        }
        let inv = |p: &Perm| {
            let mut v = vec![0usize; n];
            for (a, &b) in p.iter().enumerate() {
                v[b] = a;
            }
            v
        };
        let sigma_inv = inv(sigma);
        let sigma_p_inv = inv(sigma_p);
        // positive contribution to p_sigma
        {
            let mut map = BTreeMap::new();
            for c in 0..n {
                map.insert(vars[c], vars[sigma_inv[c]]);
            }
            let mut num = f.rename(&map)?;
            for a in 0..n {
                for b in (a + 1)..n {
                    if sigma_p_inv[sigma[a]] > sigma_p_inv[sigma[b]] {
                        num = num.mul_ratio_poly(
                            z.tilde(colors[sigma[b]], colors[sigma[a]]),
                            vars[b],
                            vars[a],
                        );
                    }
                }
            }
            out.entry(sigma.clone())
                .or_insert_with(LaurentPoly::zero)
                .add_assign(&num);
        }
        // negative contribution to p_{sigma'}
        {
            let mut map = BTreeMap::new();
            for c in 0..n {
                map.insert(vars[c], vars[sigma_p_inv[c]]);
            }
            let mut num = f.rename(&map)?.neg();
            for a in 0..n {
                for b in (a + 1)..n {
                    if sigma_inv[sigma_p[a]] > sigma_inv[sigma_p[b]] {
                        num = num.mul_ratio_poly(
                            z.tilde(colors[sigma_p[b]], colors[sigma_p[a]]),
                            vars[b],
                            vars[a],
                        );
                        if colors[sigma_p[a]] == colors[sigma_p[b]] {
                            // times (-z_a/z_b)
                            num = num.mul_term(
                                &Monomial::from_pairs([(vars[a], 1), (vars[b], -1)]),
                                &Scalar::from_int(-1),
                            );
                        }
                    }
                }
            }
            out.entry(sigma_p.clone())
                .or_insert_with(LaurentPoly::zero)
                .add_assign(&num);
        }
    }
    Ok(out)
}

// ---- Transfer of kernel elements along a specialization ----

/// Carry a kernel element of the specialized class quiver back to the general
/// datum: every word's coefficient monomial is multiplied by the ratio of the
/// general numerators to the kept specialized factors (a Laurent polynomial by
/// the divisibility built into the specialization), then re-expanded into
/// words in the original colors.
pub fn transfer_kernel(
    phi: &UElement,
    p: &SpecPoint,
    fz: &FactoredZeta,
    class_order: Option<&[usize]>,
) -> Result<UElement, CoreError> {
    let colors = fz.vertex_count();
    let mut n = DegreeVector::zero(colors);
    for v in p.values.keys() {
        let c = v.color as usize;
        n.0[c] = n.0[c].max(v.slot as u32);
    }
    if n.variables().len() != p.values.len() {
        return Err(CoreError::Precondition(
            "point slots must be contiguous from 1".into(),
        ));
    }
    let sp = specialize(fz, &n, p)?;
    let k = sp.classes.len();
    let order: Vec<usize> = match class_order {
        Some(o) => o.to_vec(),
        None => (0..k).collect(),
    };
    if order.len() != k {
        return Err(CoreError::Precondition("class order length mismatch".into()));
    }
    let rank_of: Vec<usize> = {
        let mut v = vec![0usize; k];
        for (rank, &c) in order.iter().enumerate() {
            v[c] = rank;
        }
        v
    };
    // precondition: phi lies in the kernel of the class-quiver evaluation
    let class_datum = crate::zeta::from_quiver(&sp.quiver)?.expand();
    if !upsilon(phi, &class_datum)?.is_zero() {
        return Err(CoreError::Precondition(
            "input does not lie in the kernel of the specialized evaluation".into(),
        ));
    }
    let zd = fz.expand();
    let minus = phi.sign == Sign::Minus;
    let mut out = UElement::zero(phi.sign);
    for (w, coeff) in &phi.terms {
        // assign the class letters to concrete variables, per class in slot order
        let mut next_of_class: Vec<usize> = vec![0; k];
        let mut assigned: Vec<VarId> = Vec::with_capacity(w.len());
        for l in &w.0 {
            let members = &sp.classes[l.color];
            let idx = next_of_class[l.color];
            if idx >= members.len() {
                return Err(CoreError::Precondition(format!(
                    "word uses class {} more than its size",
                    l.color
                )));
            }
            assigned.push(members[idx]);
            next_of_class[l.color] += 1;
        }
        if next_of_class
            .iter()
            .zip(&sp.counts)
            .any(|(&used, &size)| used != size as usize)
        {
            return Err(CoreError::Precondition(
                "word degree does not match the class sizes".into(),
            ));
        }
        // the representation lives in the class-quiver algebra; carry it
        // through the rescaling isomorphism by scaling each word coefficient
        // with prod val(class)^{-d} (plus side) or val(class)^{+d} (minus)
        let mut scaled = coeff.clone();
        for l in &w.0 {
            let e = if minus { l.exp } else { -l.exp };
            scaled = scaled.mul(&sp.class_value[l.color].pow(e)?);
        }
        // coefficient monomial with the sign-dependent exponent convention
        let mut num = LaurentPoly::one();
        for (u, l) in w.0.iter().enumerate() {
            let e = if minus { -l.exp } else { l.exp };
            num = num.mul_term(&Monomial::var(assigned[u], e), &Scalar::one());
        }
        // multiplier over position pairs u < v
        for u in 0..w.len() {
            for v in (u + 1)..w.len() {
                let (vu, vv) = (assigned[u], assigned[v]);
                let (iu, iv) = (vu.color as usize, vv.color as usize);
                let (cu, cv) = (sp.class_of(vu), sp.class_of(vv));
                let (general, kept, hi_var, lo_var) = if minus {
                    (zd.tilde(iu, iv), &sp.partial[cu][cv], vu, vv)
                } else {
                    (zd.tilde(iv, iu), &sp.partial[cv][cu], vv, vu)
                };
                let mut factor = general.div_exact(kept)?;
                if iu == iv {
                    let flip = if minus {
                        rank_of[cu] < rank_of[cv]
                    } else {
                        rank_of[cv] < rank_of[cu]
                    };
                    if flip {
                        // times (- lo/hi) = -x^{-1} in x = hi/lo
                        factor = factor.mul(&UniLaurent::term(-1, Scalar::from_int(-1)));
                    }
                }
                num = num.mul_ratio_poly(&factor, hi_var, lo_var);
            }
        }
        // re-expand into words in the original colors
        for (m, c) in num.terms() {
            let letters: Vec<Letter> = assigned
                .iter()
                .map(|var| {
                    let e = m.exponent(*var);
                    Letter {
                        color: var.color as usize,
                        exp: if minus { -e } else { e },
                    }
                })
                .collect();
            out.add_term(Word(letters), scaled.mul(c));
        }
    }
    Ok(out)
}
