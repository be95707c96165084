//! Bilinear pairings between word combinations and symmetric Laurent
//! polynomials, computed by exact iterated constant-term extraction, plus the
//! closed permutation-sum formula as an independent route.
//!
//! The engine eliminates the innermost contour variable first. Every
//! denominator is series-inverted with its monomial prefactor moved into the
//! numerator, and the series order is read off the numerator's exponent range,
//! so truncation is provably sufficient and the result is exact.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::CoreError;
use crate::memo;
use crate::poly::{LaurentPoly, Monomial, VarId};
use crate::scalar::Scalar;
use crate::shuffle::ShuffleElement;
use crate::uni::{series_inverse, UniLaurent};
use crate::words::Word;
use crate::zeta::ZetaDatum;

/// One factor `num(x) / den(x)` attached to a contour pair, with
/// `x = (later variable)/(earlier variable)` expanded at small `|x|`.
#[derive(Clone, Debug)]
pub struct RatioFactor {
    pub num: UniLaurent,
    pub den: Option<UniLaurent>,
}

/// Extra series order added on top of the provably sufficient truncation;
/// exists so robustness checks can recompute with a higher order and compare.
static EXTRA_ORDER: AtomicUsize = AtomicUsize::new(0);

pub fn set_extra_truncation_order(extra: usize) {
    EXTRA_ORDER.store(extra, Ordering::SeqCst);
}

pub fn extra_truncation_order() -> usize {
    EXTRA_ORDER.load(Ordering::SeqCst)
}

/// Constant term of `numerator * prod factors` in all the given variables,
/// expanded with earlier variables dominant.
pub fn constant_term<F>(
    numerator: LaurentPoly,
    vars: &[VarId],
    factor_of_pair: F,
) -> Result<Scalar, CoreError>
where
    F: Fn(usize, usize) -> Vec<RatioFactor>,
{
    let mut num = numerator;
    for b in (0..vars.len()).rev() {
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let zb = vars[b];
        // gather the factors involving position b
        let mut dens: Vec<(usize, UniLaurent)> = Vec::new();
        for a in 0..b {
            for f in factor_of_pair(a, b) {
                if !f.num.is_one() {
                    num = num.mul_ratio_poly(&f.num, zb, vars[a]);
                }
                if let Some(d) = f.den {
                    if !d.is_one() {
                        dens.push((a, d));
                    }
                }
            }
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        // move each denominator's monomial prefactor into the numerator
        for (a, d) in &dens {
            let s = d.lowest().ok_or(CoreError::ZeroInput)?;
            let alpha = d.lowest_coeff().unwrap().clone();
            let m = Monomial::from_pairs([(zb, -s), (vars[*a], s)]);
            num = num.mul_term(&m, &alpha.inv()?);
        }
        // unit series only raise the exponent of z_b, so positive powers die
        num = prune_positive(&num, zb);
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let (min_e, _) = num.exponent_range(zb).unwrap();
        let order = (-min_e).max(0) as usize + extra_truncation_order();
        for (a, d) in &dens {
            let si = series_inverse(d, order)?;
            let mut series = UniLaurent::zero();
            for (k, c) in si.coeffs.iter().enumerate() {
                series.add_term(k as i64, c.clone());
            }
            num = prune_positive(&num.mul_ratio_poly(&series, zb, vars[*a]), zb);
            if num.is_zero() {
                return Ok(Scalar::zero());
            }
        }
        // extract the coefficient of z_b^0
        let mut kept = LaurentPoly::zero();
        for (m, c) in num.terms() {
            if m.exponent(zb) == 0 {
                kept.add_term(m.clone(), c.clone());
            }
        }
        num = kept;
    }
    if num.is_zero() {
        return Ok(Scalar::zero());
    }
    debug_assert!(num.num_terms() == 1 && num.terms().next().unwrap().0.is_one());
    Ok(num.coeff(&Monomial::one()))
}

fn prune_positive(p: &LaurentPoly, v: VarId) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        if m.exponent(v) <= 0 {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// Pairing of a single plus-side word against a minus-side polynomial body.
fn pair_word_plus(w: &Word, body: &LaurentPoly, z: &ZetaDatum) -> Result<Scalar, CoreError> {
    let key_w = format!("{}#{}", w.encode(), extra_truncation_order());
    let key_r = body.encode();
    if let Some(v) = memo::pairing_get(z.id(), 0, &key_w, &key_r) {
        return Ok(v);
    }
    let vars = w.relabel();
    let mut numerator = body.clone();
    for (a, l) in w.0.iter().enumerate() {
        numerator = numerator.mul_term(&Monomial::var(vars[a], l.exp), &Scalar::one());
    }
    let value = constant_term(numerator, &vars, |a, b| {
        let (ia, ib) = (w.0[a].color, w.0[b].color);
        let num = if z.has_pole(ib, ia) {
            UniLaurent::from_terms([(0, Scalar::one()), (1, Scalar::from_int(-1))])
        } else {
            UniLaurent::one()
        };
        vec![RatioFactor {
            num,
            den: Some(z.tilde(ib, ia).clone()),
        }]
    })?;
    memo::pairing_put(z.id(), 0, key_w, key_r, value.clone());
    Ok(value)
}

/// Pairing of a plus-side polynomial body against a single minus-side word.
fn pair_word_minus(body: &LaurentPoly, w: &Word, z: &ZetaDatum) -> Result<Scalar, CoreError> {
    let key_w = format!("{}#{}", w.encode(), extra_truncation_order());
    let key_r = body.encode();
    if let Some(v) = memo::pairing_get(z.id(), 1, &key_w, &key_r) {
        return Ok(v);
    }
    let n = w.len();
    let vars = w.relabel();
    // the innermost contour variable is the first word position: reverse for
    // the engine, whose innermost is the last
    let engine_vars: Vec<VarId> = vars.iter().rev().copied().collect();
    let mut numerator = body.clone();
    for (a, l) in w.0.iter().enumerate() {
        numerator = numerator.mul_term(&Monomial::var(vars[a], -l.exp), &Scalar::one());
    }
    let value = constant_term(numerator, &engine_vars, |k, l| {
        // engine pair (k, l) is word pair (a, b) = (n-1-l, n-1-k), a < b,
        // with x = z_a / z_b
        let (a, b) = (n - 1 - l, n - 1 - k);
        let (ia, ib) = (w.0[a].color, w.0[b].color);
        let num = if z.has_pole(ia, ib) {
            UniLaurent::from_terms([(0, Scalar::one()), (1, Scalar::from_int(-1))])
        } else {
            UniLaurent::one()
        };
        vec![RatioFactor {
            num,
            den: Some(z.tilde(ia, ib).clone()),
        }]
    })?;
    memo::pairing_put(z.id(), 1, key_w, key_r, value.clone());
    Ok(value)
}

/// Degree compatibility between a word and a shuffle element: matching color
/// counts; the homogeneous-degree check is left to the engine when the body
/// is inhomogeneous.
fn color_counts_match(w: &Word, r: &ShuffleElement, colors: usize) -> bool {
    let (n, _) = w.degree(colors);
    n == r.degree
}

/// `< sum c_w e_w , R >` for a minus-side element `R`; grading mismatches
/// contribute zero.
pub fn pair_plus(
    terms: &BTreeMap<Word, Scalar>,
    r: &ShuffleElement,
    z: &ZetaDatum,
) -> Result<Scalar, CoreError> {
    let mut acc = Scalar::zero();
    if r.is_zero() {
        return Ok(acc);
    }
    for (w, c) in terms {
        if !color_counts_match(w, r, z.vertex_count()) {
            continue;
        }
        acc = acc.add(&c.mul(&pair_word_plus(w, &r.body, z)?));
    }
    Ok(acc)
}

/// `< R , sum c_w f_w >` for a plus-side element `R`.
pub fn pair_minus(
    r: &ShuffleElement,
    terms: &BTreeMap<Word, Scalar>,
    z: &ZetaDatum,
) -> Result<Scalar, CoreError> {
    let mut acc = Scalar::zero();
    if r.is_zero() {
        return Ok(acc);
    }
    for (w, c) in terms {
        if !color_counts_match(w, r, z.vertex_count()) {
            continue;
        }
        acc = acc.add(&c.mul(&pair_word_minus(&r.body, w, z)?));
    }
    Ok(acc)
}

/// Closed permutation-sum formula for the pairing of two words: sum over all
/// color-matching permutations of the constant term of
/// `z^(d - k o sigma)` times the inversion product of
/// `zeta_{ia ib}(za/zb) / zeta_{ib ia}(zb/za)`.
pub fn pair_words_oracle(v: &Word, w: &Word, z: &ZetaDatum) -> Result<Scalar, CoreError> {
    if v.len() != w.len() {
        return Ok(Scalar::zero());
    }
    let n = v.len();
    if n == 0 {
        return Ok(Scalar::one());
    }
    let vars = v.relabel();
    let mut w_positions: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (b, l) in w.0.iter().enumerate() {
        w_positions.entry(l.color).or_default().push(b);
    }
    let mut v_positions: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (a, l) in v.0.iter().enumerate() {
        v_positions.entry(l.color).or_default().push(a);
    }
    if v_positions.len() != w_positions.len()
        || v_positions
            .iter()
            .any(|(c, ps)| w_positions.get(c).map(Vec::len) != Some(ps.len()))
    {
        return Ok(Scalar::zero());
    }
    // enumerate sigma: per color, a bijection v-positions -> w-positions
    let mut sigmas: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
    for (color, vps) in &v_positions {
        let wps = &w_positions[color];
        let mut next = Vec::new();
        for partial in &sigmas {
            for assignment in all_bijections(vps, wps) {
                let mut s = partial.clone();
                s.extend(assignment);
                next.push(s);
            }
        }
        sigmas = next;
    }
    let mut acc = Scalar::zero();
    for sigma in &sigmas {
        let mut numerator = LaurentPoly::one();
        for a in 0..n {
            let e = v.0[a].exp - w.0[sigma[&a]].exp;
            numerator = numerator.mul_term(&Monomial::var(vars[a], e), &Scalar::one());
        }
        let value = constant_term(numerator, &vars, |a, b| {
            if sigma[&a] <= sigma[&b] {
                return Vec::new();
            }
            let (ia, ib) = (v.0[a].color, v.0[b].color);
            // zeta_{ia ib}(1/x) / zeta_{ib ia}(x) with x = z_b/z_a; the two
            // pole factors cancel up to the sign monomial (-x)
            let mut num = z.tilde(ia, ib).reverse();
            if z.has_pole(ia, ib) {
                num = num.mul(&UniLaurent::term(1, Scalar::from_int(-1)));
            }
            vec![RatioFactor {
                num,
                den: Some(z.tilde(ib, ia).clone()),
            }]
        })?;
        acc = acc.add(&value);
    }
    Ok(acc)
}

fn all_bijections(from: &[usize], to: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if from.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let first = from[0];
    for (i, &t) in to.iter().enumerate() {
        let mut rest_to: Vec<usize> = to.to_vec();
        rest_to.remove(i);
        for mut tail in all_bijections(&from[1..], &rest_to) {
            tail.insert(0, (first, t));
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::DegreeVector;
    use crate::shuffle::Sign;
    use crate::shuffle::{sym_monomial, word_to_shuffle};
    use crate::words::Letter;
    use crate::zeta::{from_kac_moody, from_quiver};

    fn word(letters: &[(usize, i64)]) -> Word {
        Word(letters.iter().map(|&(c, e)| Letter { color: c, exp: e }).collect())
    }

    fn single(w: Word) -> BTreeMap<Word, Scalar> {
        [(w, Scalar::one())].into_iter().collect()
    }

    fn sl2() -> ZetaDatum {
        from_kac_moody(&[vec![2]]).unwrap().expand()
    }

    fn cyclic3() -> ZetaDatum {
        from_quiver(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]])
            .unwrap()
            .expand()
    }

    #[test]
    fn single_letter_pairing_is_delta() {
        let z = sl2();
        for d in [-2i64, 0, 3] {
            for dp in [-2i64, 0, 3] {
                let r = ShuffleElement::new(
                    Sign::Minus,
                    DegreeVector(vec![1]),
                    LaurentPoly::var_pow(VarId::new(0, 1), -dp),
                );
                let got = pair_plus(&single(word(&[(0, d)])), &r, &z).unwrap();
                if d == dp {
                    assert!(got.is_one());
                } else {
                    assert!(got.is_zero());
                }
            }
        }
    }

    #[test]
    fn single_letter_pairing_minus_side() {
        let z = sl2();
        let r = ShuffleElement::new(
            Sign::Plus,
            DegreeVector(vec![1]),
            LaurentPoly::var_pow(VarId::new(0, 1), 4),
        );
        assert!(pair_minus(&r, &single(word(&[(0, 4)])), &z)
            .unwrap()
            .is_one());
        assert!(pair_minus(&r, &single(word(&[(0, 3)])), &z)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn grading_mismatch_is_zero() {
        let z = cyclic3();
        let r = ShuffleElement::new(
            Sign::Minus,
            DegreeVector(vec![1, 0, 0]),
            LaurentPoly::var_pow(VarId::new(0, 1), -1),
        );
        // color mismatch
        assert!(pair_plus(&single(word(&[(1, 1)])), &r, &z).unwrap().is_zero());
        // exponent mismatch
        assert!(pair_plus(&single(word(&[(0, 2)])), &r, &z).unwrap().is_zero());
    }

    /// Independent truncated-series route for the sl2 two-letter pairing:
    /// 1/zeta_11(x) = q^2 (1-x) sum_m q^{2m} x^m expands explicitly, so the
    /// pairing against Sym(z1^{-a} z2^{-b}) has closed coefficients.
    fn sl2_two_letter_bruteforce(d: i64, k: i64, a: i64, b: i64) -> Scalar {
        let t = |m: i64| -> Scalar {
            if m < 0 {
                return Scalar::zero();
            }
            let main = Scalar::q_pow(2 * m + 2);
            if m >= 1 {
                main.sub(&Scalar::q_pow(2 * m))
            } else {
                main
            }
        };
        // z1^d z2^k (z1^{-a} z2^{-b} + z1^{-b} z2^{-a}) sum_m t_m (z2/z1)^m:
        // constant terms at m = d-a = b-k and m = d-b = a-k
        let mut acc = Scalar::zero();
        if d - a == b - k {
            acc = acc.add(&t(d - a));
        }
        if d - b == a - k {
            acc = acc.add(&t(d - b));
        }
        acc
    }

    #[test]
    fn sl2_two_letter_pairing_matches_bruteforce() {
        let z = sl2();
        let n = DegreeVector(vec![2]);
        for (d, k, a, b) in [
            (0i64, 0i64, 0i64, 0i64),
            (1, 0, 1, 0),
            (0, 1, 1, 0),
            (-1, 2, 0, 1),
            (2, -1, 1, 0),
            (0, 3, 2, 1),
        ] {
            let mu = Monomial::from_pairs([(VarId::new(0, 1), -a), (VarId::new(0, 2), -b)]);
            let r = ShuffleElement::new(Sign::Minus, n.clone(), sym_monomial(&mu, &n));
            let got = pair_plus(&single(word(&[(0, d), (0, k)])), &r, &z).unwrap();
            let expect = sl2_two_letter_bruteforce(d, k, a, b);
            assert_eq!(got, expect, "(d,k,a,b) = ({d},{k},{a},{b})");
        }
    }

    #[test]
    fn oracle_trivial_cases() {
        let z = sl2();
        assert!(pair_words_oracle(&word(&[(0, 5)]), &word(&[(0, 5)]), &z)
            .unwrap()
            .is_one());
        let z3 = cyclic3();
        assert!(pair_words_oracle(&word(&[(0, 0)]), &word(&[(1, 0)]), &z3)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn oracle_matches_engine_routes() {
        let data = [sl2(), cyclic3()];
        let words2 = [
            word(&[(0, 0), (0, 1)]),
            word(&[(0, 1), (0, 0)]),
            word(&[(0, -1), (0, 2)]),
        ];
        for z in &data {
            for v in &words2 {
                for w in &words2 {
                    let fw = word_to_shuffle(w, Sign::Minus, z).unwrap();
                    let ev = word_to_shuffle(v, Sign::Plus, z).unwrap();
                    let lhs = pair_plus(&single(v.clone()), &fw, z).unwrap();
                    let rhs = pair_minus(&ev, &single(w.clone()), z).unwrap();
                    let oracle = pair_words_oracle(v, w, z).unwrap();
                    assert_eq!(lhs, oracle, "plus route, v={v} w={w}");
                    assert_eq!(rhs, oracle, "minus route, v={v} w={w}");
                }
            }
        }
    }

    #[test]
    fn oracle_mixed_colors() {
        let z = cyclic3();
        let v = word(&[(0, 0), (1, 0), (2, 0)]);
        let ws = [
            word(&[(0, 0), (1, 0), (2, 0)]),
            word(&[(1, 0), (2, -1), (0, 1)]),
            word(&[(2, -1), (0, 0), (1, 1)]),
        ];
        for w in &ws {
            let fw = word_to_shuffle(w, Sign::Minus, &z).unwrap();
            let lhs = pair_plus(&single(v.clone()), &fw, &z).unwrap();
            let oracle = pair_words_oracle(&v, w, &z).unwrap();
            assert_eq!(lhs, oracle, "w = {w}");
        }
    }

    #[test]
    fn bilinearity() {
        let z = sl2();
        let n = DegreeVector(vec![2]);
        let mu1 = Monomial::from_pairs([(VarId::new(0, 1), -1)]);
        let mu2 = Monomial::from_pairs([(VarId::new(0, 1), -2), (VarId::new(0, 2), 1)]);
        let r1 = sym_monomial(&mu1, &n);
        let r2 = sym_monomial(&mu2, &n);
        let c = Scalar::from_frac(3, 7);
        let combined = ShuffleElement::new(Sign::Minus, n.clone(), r1.add(&r2.scale(&c)));
        let e1 = ShuffleElement::new(Sign::Minus, n.clone(), r1);
        let e2 = ShuffleElement::new(Sign::Minus, n.clone(), r2);
        let terms = single(word(&[(0, 1), (0, 0)]));
        let got = pair_plus(&terms, &combined, &z).unwrap();
        let expect = pair_plus(&terms, &e1, &z)
            .unwrap()
            .add(&c.mul(&pair_plus(&terms, &e2, &z).unwrap()));
        assert_eq!(got, expect);
    }
}
