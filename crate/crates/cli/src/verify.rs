//! Named verification suites: each runs a batch of exact invariant checks on
//! the configured datum with a seeded generator and reports one line per
//! property.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qshuffle_core::pairing::{
    pair_minus, pair_plus, pair_words_oracle, set_extra_truncation_order,
};
use qshuffle_core::poly::{symmetrize, DegreeVector, LaurentPoly, Monomial, SymMode, VarId};
use qshuffle_core::quantum::{
    context_vars, kernel_window, membership, order_classes, phi_map, psi_map, relation_element,
    straighten, u_mul, upsilon, Budget, MembershipVerdict, Perm, UElement,
};
use qshuffle_core::scalar::{parse_scalar, Scalar};
use qshuffle_core::shuffle::{shuffle_mul, word_to_shuffle, ShuffleElement, Sign};
use qshuffle_core::uni::{series_inverse, UniLaurent};
use qshuffle_core::words::{enumerate_non_increasing, is_non_increasing, Letter, ShiftTable, Word};
use qshuffle_core::zeta::ZetaDatum;

pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn check(out: &mut Vec<Check>, name: &str, ok: bool, detail: impl Into<String>) {
    out.push(Check {
        name: name.to_string(),
        ok,
        detail: detail.into(),
    });
}

fn random_word(rng: &mut ChaCha8Rng, colors: usize, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word(
        (0..len)
            .map(|_| Letter {
                color: rng.gen_range(0..colors),
                exp: rng.gen_range(-2..=2),
            })
            .collect(),
    )
}

pub fn suite_core(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    // field axioms on random samples
    let sample = |rng: &mut ChaCha8Rng| -> Scalar {
        let base = Scalar::from_frac(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        if rng.gen_bool(0.5) {
            base.mul(&Scalar::q_pow(rng.gen_range(-2..=2)))
                .add(&Scalar::from_int(rng.gen_range(-3..=3)))
        } else {
            base
        }
    };
    let mut ok = true;
    for _ in 0..25 {
        let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        ok &= a.add(&b).add(&c) == a.add(&b.add(&c));
        ok &= a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c));
        if !a.is_zero() {
            ok &= a.mul(&a.inv().unwrap()).is_one();
        }
    }
    check(&mut out, "core.field_axioms", ok, "25 random samples");
    // canonicalization idempotence via parse/display
    let mut ok = true;
    for _ in 0..25 {
        let a = sample(&mut rng);
        ok &= parse_scalar(&a.to_string()).map(|b| b == a).unwrap_or(false);
    }
    check(&mut out, "core.canonical_roundtrip", ok, "25 random samples");
    // specialization is a ring homomorphism away from poles
    let mut ok = true;
    let v = num_rational::BigRational::new(3.into(), 2.into());
    for _ in 0..25 {
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        if let (Ok(sa), Ok(sb)) = (a.specialize(&v), b.specialize(&v)) {
            ok &= a.add(&b).specialize(&v).map(|x| x == sa.add(&sb)).unwrap_or(false);
            ok &= a.mul(&b).specialize(&v).map(|x| x == sa.mul(&sb)).unwrap_or(false);
        }
    }
    check(&mut out, "core.specialize_homomorphism", ok, "q := 3/2");
    // series reconstruction
    let mut ok = true;
    for _ in 0..10 {
        let f = UniLaurent::from_terms([
            (rng.gen_range(-2..=0), Scalar::from_int(rng.gen_range(1..=4))),
            (rng.gen_range(1..=3), Scalar::from_int(rng.gen_range(-3..=3))),
        ]);
        if f.is_zero() {
            continue;
        }
        let order = 6;
        let s = series_inverse(&f, order).unwrap();
        let mut series = UniLaurent::zero();
        for (k, c) in s.coeffs.iter().enumerate() {
            series.add_term(s.shift + k as i64, c.mul(&s.scale));
        }
        let prod = f.mul(&series);
        ok &= prod.coeff(0).is_one();
        for e in 1..=order as i64 {
            ok &= prod.coeff(e).is_zero();
        }
    }
    check(&mut out, "core.series_reconstruction", ok, "order 6");
    // exact division inverts multiplication
    let mut ok = true;
    for _ in 0..10 {
        let mk = |rng: &mut ChaCha8Rng| {
            let mut p = LaurentPoly::zero();
            for _ in 0..rng.gen_range(1..=3) {
                let m = Monomial::from_pairs([
                    (VarId::new(0, 1), rng.gen_range(-2..=2i64)),
                    (VarId::new(0, 2), rng.gen_range(-2..=2i64)),
                ]);
                p.add_term(m, Scalar::from_int(rng.gen_range(-4..=4)));
            }
            p
        };
        let a = mk(&mut rng);
        let d = mk(&mut rng);
        if d.is_zero() {
            continue;
        }
        ok &= a.mul(&d).exact_divide(&d).map(|q| q == a).unwrap_or(false);
    }
    check(&mut out, "core.exact_division_roundtrip", ok, "10 random pairs");
    // symmetrization: orbit sum of a symmetric input counts the group
    let mut ok = true;
    let n = DegreeVector(vec![2]);
    let sym_in = LaurentPoly::var_pow(VarId::new(0, 1), 1).add(&LaurentPoly::var_pow(VarId::new(0, 2), 1));
    ok &= symmetrize(&sym_in, &n, &SymMode::Full)
        .map(|s| s == sym_in.scale(&Scalar::from_int(2)))
        .unwrap_or(false);
    check(&mut out, "core.symmetrize_stabilizer", ok, "n = (2)");
    out
}

pub fn suite_shuffle(z: &ZetaDatum, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colors = z.vertex_count();
    let mut out = Vec::new();
    // associativity on random single-variable elements
    let mut ok = true;
    for _ in 0..10 {
        let mk = |rng: &mut ChaCha8Rng| {
            let color = rng.gen_range(0..colors);
            ShuffleElement::new(
                Sign::Plus,
                DegreeVector::unit(colors, color),
                LaurentPoly::var_pow(VarId::new(color, 1), rng.gen_range(-2..=2)),
            )
        };
        let (a, b, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
        let lhs = shuffle_mul(&shuffle_mul(&a, &b, z).unwrap(), &c, z).unwrap();
        let rhs = shuffle_mul(&a, &shuffle_mul(&b, &c, z).unwrap(), z).unwrap();
        ok &= lhs == rhs;
    }
    check(&mut out, "shuffle.associativity", ok, "10 random triples");
    // iterated product equals the direct symmetrized formula
    let mut ok = true;
    for _ in 0..8 {
        let w = random_word(&mut rng, colors, 3);
        for sign in [Sign::Plus, Sign::Minus] {
            let it = word_to_shuffle(&w, sign, z).unwrap();
            let direct = qshuffle_core::shuffle::word_to_shuffle_direct(&w, sign, z).unwrap();
            ok &= it.body == direct.body;
        }
    }
    check(&mut out, "shuffle.word_image_routes", ok, "8 random words, both signs");
    // evaluation is multiplicative
    let mut ok = true;
    for _ in 0..10 {
        let v = random_word(&mut rng, colors, 2);
        let w = random_word(&mut rng, colors, 2);
        let uv = UElement::from_word(v, Sign::Plus);
        let uw = UElement::from_word(w, Sign::Plus);
        let lhs = upsilon(&u_mul(&uv, &uw).unwrap(), z).unwrap();
        let rhs = shuffle_mul(&upsilon(&uv, z).unwrap(), &upsilon(&uw, z).unwrap(), z).unwrap();
        ok &= lhs == rhs;
    }
    check(&mut out, "shuffle.evaluation_multiplicative", ok, "10 random word pairs");
    // relation elements evaluate to zero
    let mut ok = true;
    for _ in 0..10 {
        let i = rng.gen_range(0..colors);
        let j = rng.gen_range(0..colors);
        let d = rng.gen_range(-3..=3);
        let k = rng.gen_range(-3..=3);
        for sign in [Sign::Plus, Sign::Minus] {
            let rel = relation_element(i, j, d, k, sign, z);
            ok &= upsilon(&rel, z).unwrap().is_zero();
        }
    }
    check(&mut out, "shuffle.relation_vanishing", ok, "10 random relations, both signs");
    // shift automorphism
    let mut ok = true;
    for _ in 0..5 {
        let a = upsilon(&UElement::from_word(random_word(&mut rng, colors, 2), Sign::Plus), z)
            .unwrap();
        let b = upsilon(&UElement::from_word(random_word(&mut rng, colors, 2), Sign::Plus), z)
            .unwrap();
        let k: Vec<i64> = (0..colors).map(|_| rng.gen_range(-2..=2)).collect();
        let lhs = qshuffle_core::shuffle::shift(&shuffle_mul(&a, &b, z).unwrap(), &k);
        let rhs = shuffle_mul(
            &qshuffle_core::shuffle::shift(&a, &k),
            &qshuffle_core::shuffle::shift(&b, &k),
            z,
        )
        .unwrap();
        ok &= lhs == rhs;
    }
    check(&mut out, "shuffle.shift_automorphism", ok, "5 random pairs");
    out
}

pub fn suite_pairing(z: &ZetaDatum, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colors = z.vertex_count();
    let mut out = Vec::new();
    let single = |w: &Word| -> BTreeMap<Word, Scalar> {
        [(w.clone(), Scalar::one())].into_iter().collect()
    };
    // three routes coincide
    let mut ok = true;
    for _ in 0..15 {
        let v = random_word(&mut rng, colors, 3);
        let w = random_word(&mut rng, colors, 3);
        let fw = word_to_shuffle(&w, Sign::Minus, z).unwrap();
        let ev = word_to_shuffle(&v, Sign::Plus, z).unwrap();
        let a = pair_plus(&single(&v), &fw, z).unwrap();
        let b = pair_minus(&ev, &single(&w), z).unwrap();
        let c = pair_words_oracle(&v, &w, z).unwrap();
        ok &= a == c && b == c;
    }
    check(&mut out, "pairing.coincidence", ok, "15 random word pairs");
    // truncation robustness: recompute with extra order +5
    let mut ok = true;
    for _ in 0..8 {
        let v = random_word(&mut rng, colors, 2);
        let w = random_word(&mut rng, colors, 2);
        let fw = word_to_shuffle(&w, Sign::Minus, z).unwrap();
        let base = pair_plus(&single(&v), &fw, z).unwrap();
        set_extra_truncation_order(5);
        let wide = pair_plus(&single(&v), &fw, z).unwrap();
        set_extra_truncation_order(0);
        ok &= base == wide;
    }
    check(&mut out, "pairing.truncation_robustness", ok, "extra order +5");
    // descent: relation elements pair to zero with random elements
    let mut ok = true;
    for _ in 0..8 {
        let i = rng.gen_range(0..colors);
        let j = rng.gen_range(0..colors);
        let rel = relation_element(i, j, rng.gen_range(-2..=2), rng.gen_range(-2..=2), Sign::Plus, z);
        // random symmetric test of the matching degree
        let mut n = DegreeVector::zero(colors);
        n.0[i] += 1;
        n.0[j] += 1;
        let vars = n.variables();
        let mut mu = Monomial::one();
        for var in &vars {
            mu = mu.mul(&Monomial::var(*var, rng.gen_range(-2..=2)));
        }
        let body = symmetrize(
            &LaurentPoly::term(mu, Scalar::one()),
            &n,
            &SymMode::Full,
        )
        .unwrap();
        let r = ShuffleElement::new(Sign::Minus, n, body);
        ok &= pair_plus(&rel.terms, &r, z).unwrap().is_zero();
    }
    check(&mut out, "pairing.quotient_descent", ok, "8 random relation pairings");
    // grading orthogonality
    let mut ok = true;
    for _ in 0..5 {
        let v = random_word(&mut rng, colors, 2);
        let w = random_word(&mut rng, colors, 2);
        let (nv, dv) = v.degree(colors);
        let (nw, dw) = w.degree(colors);
        if nv == nw && dv == dw {
            continue;
        }
        let fw = word_to_shuffle(&w, Sign::Minus, z).unwrap();
        ok &= pair_plus(&single(&v), &fw, z).unwrap().is_zero();
    }
    check(&mut out, "pairing.grading_orthogonality", ok, "mismatched degrees");
    out
}

pub fn suite_quantum(z: &ZetaDatum, budget: &Budget, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colors = z.vertex_count();
    let mut out = Vec::new();
    // straighten: non-increasing support, evaluation preserved, idempotent
    let mut ok = true;
    for _ in 0..5 {
        let color = rng.gen_range(0..colors);
        let mut a = UElement::zero(Sign::Plus);
        let d = rng.gen_range(-1..=1);
        for _ in 0..rng.gen_range(1..=2) {
            let e1 = rng.gen_range(-2..=2);
            a.add_term(
                Word(vec![
                    Letter { color, exp: e1 },
                    Letter { color, exp: d - e1 },
                ]),
                Scalar::from_int(rng.gen_range(-3..=3)),
            );
        }
        if a.is_zero() {
            continue;
        }
        match straighten(&a, z, budget) {
            Ok(s) => {
                let st = ShiftTable::of(&z.clone());
                ok &= s.terms.keys().all(|w| is_non_increasing(w, &st));
                ok &= upsilon(&a, z).unwrap() == upsilon(&s, z).unwrap();
                ok &= straighten(&s, z, budget).map(|t| t == s).unwrap_or(false);
            }
            Err(_) => ok = false,
        }
    }
    check(&mut out, "quantum.straighten_certified", ok, "5 random elements");
    // kernel outputs annihilate minus-side word images
    let mut ok = true;
    let mut found_any = false;
    'outer: for total in 2..=3u32 {
        for d in -1..=1i64 {
            let mut n = DegreeVector::zero(colors);
            let mut left = total;
            for i in 0..colors {
                let take = left.min(1);
                n.0[i] = take;
                left -= take;
            }
            if left > 0 {
                n.0[0] += left;
            }
            let ker = kernel_window((&n, d), (-2, 2), Sign::Plus, z).unwrap();
            if ker.is_empty() {
                continue;
            }
            found_any = true;
            let st = ShiftTable::of(&z.transpose());
            let words = enumerate_non_increasing((&n, d), (-2, 2), None, &st);
            for phi in &ker {
                for w in words.iter().take(6) {
                    let fw = word_to_shuffle(w, Sign::Minus, z).unwrap();
                    ok &= pair_plus(&phi.terms, &fw, z).unwrap().is_zero();
                }
            }
            break 'outer;
        }
    }
    check(
        &mut out,
        "quantum.kernel_annihilates_images",
        ok,
        if found_any {
            "kernel found and checked"
        } else {
            "no kernel in range (vacuous)"
        },
    );
    // phi o psi = 0
    let mut ok = true;
    for round in 0..3 {
        let ctx_colors: Vec<usize> = (0..3).map(|k| (k + round) % colors.max(1)).collect();
        let classes = order_classes(&ctx_colors);
        if classes.len() < 2 {
            continue;
        }
        let vars = context_vars(&ctx_colors);
        let mut f: BTreeMap<(Perm, Perm), LaurentPoly> = BTreeMap::new();
        let s = rng.gen_range(0..classes.len());
        let mut t = rng.gen_range(0..classes.len());
        if s == t {
            t = (t + 1) % classes.len();
        }
        let mut poly = LaurentPoly::zero();
        for _ in 0..2 {
            let m = Monomial::from_pairs(vars.iter().map(|v| (*v, rng.gen_range(-1..=1i64))));
            poly.add_term(m, Scalar::from_int(rng.gen_range(-2..=2)));
        }
        if poly.is_zero() {
            continue;
        }
        f.insert((classes[s].clone(), classes[t].clone()), poly);
        let p = psi_map(&f, &ctx_colors, z).unwrap();
        ok &= phi_map(&p, &ctx_colors, z).unwrap().is_zero();
    }
    check(&mut out, "quantum.phi_psi_composite", ok, "3 random inputs at n = 3");
    // membership recombines on random image combinations
    let mut ok = true;
    for _ in 0..3 {
        let w1 = random_word(&mut rng, colors, 2);
        let (n, _) = w1.degree(colors);
        let img = word_to_shuffle(&w1, Sign::Minus, z).unwrap();
        let r = ShuffleElement::new(Sign::Minus, n, img.body.scale(&Scalar::from_int(3)));
        match membership(&r, z, budget).unwrap() {
            MembershipVerdict::Member { expansion } => {
                let mut acc = LaurentPoly::zero();
                for (w, c) in &expansion {
                    acc.add_assign(&word_to_shuffle(w, Sign::Minus, z).unwrap().body.scale(c));
                }
                ok &= acc == r.body;
            }
            _ => ok = false,
        }
    }
    check(&mut out, "quantum.membership_recombines", ok, "3 random image multiples");
    out
}

pub fn run(
    suite: &str,
    z: &ZetaDatum,
    budget: &Budget,
    seed: u64,
) -> Result<Vec<Check>, crate::CliError> {
    let mut checks = Vec::new();
    match suite {
        "core" => checks.extend(suite_core(seed)),
        "shuffle" => checks.extend(suite_shuffle(z, seed)),
        "pairing" => checks.extend(suite_pairing(z, seed)),
        "quantum" => checks.extend(suite_quantum(z, budget, seed)),
        "all" => {
            checks.extend(suite_core(seed));
            checks.extend(suite_shuffle(z, seed));
            checks.extend(suite_pairing(z, seed));
            checks.extend(suite_quantum(z, budget, seed));
        }
        other => {
            return Err(crate::CliError::Usage(format!(
                "unknown suite {other:?}; expected core|shuffle|pairing|quantum|all"
            )))
        }
    }
    Ok(checks)
}
