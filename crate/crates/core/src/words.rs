//! Word combinatorics: letters with their total order, lexicographic word
//! order, the non-increasing predicate, leading words of monomials, and
//! bounded enumeration.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::CoreError;
use crate::poly::{DegreeVector, LaurentPoly, Monomial, VarId};
use crate::scalar::Scalar;
use crate::zeta::ZetaDatum;

/// Letter `i^(d)`: color index with an integer exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub color: usize,
    pub exp: i64,
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    /// `i^(d) < j^(e)` iff `d > e`, or `d = e` and `i < j`.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .exp
            .cmp(&self.exp)
            .then(self.color.cmp(&other.color))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^({})", self.color, self.exp)
    }
}

/// Finite sequence of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn degree(&self, colors: usize) -> (DegreeVector, i64) {
        let mut n = DegreeVector::zero(colors);
        let mut d = 0;
        for l in &self.0 {
            n.0[l.color] += 1;
            d += l.exp;
        }
        (n, d)
    }

    /// Slot assignment by first occurrence: position a of color i gets slot
    /// `1 + #{x < a : color_x = i}`.
    pub fn relabel(&self) -> Vec<VarId> {
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        self.0
            .iter()
            .map(|l| {
                let c = seen.entry(l.color).or_insert(0);
                *c += 1;
                VarId::new(l.color, *c)
            })
            .collect()
    }

    pub fn encode(&self) -> String {
        let mut s = String::new();
        for l in &self.0 {
            s.push_str(&format!("{},{};", l.color, l.exp));
        }
        s
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    /// Lexicographic by letters; a proper prefix is smaller.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// The lowest-exponent table `s_ij` a word predicate needs, extracted once.
#[derive(Clone, Debug)]
pub struct ShiftTable {
    s: Vec<Vec<i64>>,
}

impl ShiftTable {
    pub fn of(z: &ZetaDatum) -> Self {
        let n = z.vertex_count();
        ShiftTable {
            s: (0..n)
                .map(|i| (0..n).map(|j| z.s(i, j)).collect())
                .collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.s[i][j]
    }

    pub fn size(&self) -> usize {
        self.s.len()
    }
}

/// Non-increasing predicate: for all a < b,
/// `d_a < d_b - sum_{a<=x<b}(s_{i_x i_b} + s_{i_b i_x})`, or equality with
/// `i_a >= i_b`.
pub fn is_non_increasing(w: &Word, st: &ShiftTable) -> bool {
    let n = w.0.len();
    for a in 0..n {
        for b in (a + 1)..n {
            let ib = w.0[b].color;
            let mut corr = 0;
            for x in a..b {
                let ix = w.0[x].color;
                corr += st.get(ix, ib) + st.get(ib, ix);
            }
            let rhs = w.0[b].exp - corr;
            let da = w.0[a].exp;
            if da < rhs {
                continue;
            }
            if da == rhs && w.0[a].color >= ib {
                continue;
            }
            return false;
        }
    }
    true
}

/// Exponent map between a word letter `d_a` and the monomial data `k_a`:
/// `d_a = k_a - sum_{x>a} s_{i_x i_a} + sum_{y<a} s_{i_a i_y}`.
pub fn word_exponents_from_k(colors: &[usize], ks: &[i64], st: &ShiftTable) -> Vec<i64> {
    let n = colors.len();
    (0..n)
        .map(|a| {
            let mut d = ks[a];
            for x in (a + 1)..n {
                d -= st.get(colors[x], colors[a]);
            }
            for y in 0..a {
                d += st.get(colors[a], colors[y]);
            }
            d
        })
        .collect()
}

/// Inverse of [`word_exponents_from_k`].
pub fn k_from_word_exponents(colors: &[usize], ds: &[i64], st: &ShiftTable) -> Vec<i64> {
    let n = colors.len();
    (0..n)
        .map(|a| {
            let mut k = ds[a];
            for x in (a + 1)..n {
                k += st.get(colors[x], colors[a]);
            }
            for y in 0..a {
                k -= st.get(colors[a], colors[y]);
            }
            k
        })
        .collect()
}

/// Lexicographically largest word over all orderings of the multiset of
/// (color, k) pairs. Greedy is exact: the candidate letter at each position is
/// determined by the multiset of remaining colors, and the maximum letter
/// identifies a unique (color, k) class.
pub fn leading_word_of_pairs(pairs: &[(usize, i64)], st: &ShiftTable) -> Word {
    // remaining: multiset of (color, k) classes with multiplicities
    let mut remaining: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for &p in pairs {
        *remaining.entry(p).or_insert(0) += 1;
    }
    let mut prefix_colors: Vec<usize> = Vec::new();
    let mut letters = Vec::with_capacity(pairs.len());
    for _ in 0..pairs.len() {
        // letter of candidate class (c, k) at the next position:
        // d = k - sum over remaining-after colors s_{x c} + sum over prefix colors s_{c y}
        let mut best: Option<(Letter, (usize, i64))> = None;
        for (&(c, k), _) in &remaining {
            let mut d = k;
            // remaining-after = remaining minus one copy of (c, k)
            for (&(cx, kx), &mx) in &remaining {
                let m = if (cx, kx) == (c, k) { mx - 1 } else { mx };
                d -= (m as i64) * st.get(cx, c);
            }
            for &cy in &prefix_colors {
                d += st.get(c, cy);
            }
            let letter = Letter { color: c, exp: d };
            match &best {
                Some((bl, _)) if *bl >= letter => {}
                _ => best = Some((letter, (c, k))),
            }
        }
        let (letter, class) = best.expect("nonempty remaining");
        letters.push(letter);
        prefix_colors.push(class.0);
        let m = remaining.get_mut(&class).unwrap();
        *m -= 1;
        if *m == 0 {
            remaining.remove(&class);
        }
    }
    Word(letters)
}

/// Leading word for a monomial of the minus-side space (`k = -exponent`).
pub fn leading_word_of_monomial(m: &Monomial, ctx: &DegreeVector, st: &ShiftTable) -> Word {
    let mut pairs: Vec<(usize, i64)> = Vec::new();
    for v in ctx.variables() {
        pairs.push((v.color as usize, -m.exponent(v)));
    }
    leading_word_of_pairs(&pairs, st)
}

/// Leading word, monomial and coefficient of a nonzero polynomial (viewed in
/// the minus-side space with its full degree context).
pub fn lead(
    r: &LaurentPoly,
    ctx: &DegreeVector,
    st: &ShiftTable,
) -> Result<(Word, Monomial, Scalar), CoreError> {
    if r.is_zero() {
        return Err(CoreError::ZeroPolynomial);
    }
    let mut memo: HashMap<Vec<(usize, i64)>, Word> = HashMap::new();
    let mut best: Option<(Word, Monomial, Scalar)> = None;
    for (m, c) in r.terms() {
        let mut pairs: Vec<(usize, i64)> = Vec::new();
        for v in ctx.variables() {
            pairs.push((v.color as usize, -m.exponent(v)));
        }
        pairs.sort();
        let w = memo
            .entry(pairs.clone())
            .or_insert_with(|| leading_word_of_pairs(&pairs, st))
            .clone();
        match &best {
            Some((bw, bm, _)) => {
                // ties between slot-permuted monomials break by monomial order
                if w > *bw || (w == *bw && m < bm) {
                    best = Some((w, m.clone(), c.clone()));
                }
            }
            None => best = Some((w, m.clone(), c.clone())),
        }
    }
    Ok(best.unwrap())
}

/// All non-increasing words of the given degree with exponents in
/// `[lo, hi]`, optionally bounded below by `at_least`; sorted ascending.
pub fn enumerate_non_increasing(
    degree: (&DegreeVector, i64),
    window: (i64, i64),
    at_least: Option<&Word>,
    st: &ShiftTable,
) -> Vec<Word> {
    let (n, d) = degree;
    let (lo, hi) = window;
    let total = n.total() as usize;
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let mut counts: Vec<u32> = n.0.clone();
    let mut letters: Vec<Letter> = Vec::with_capacity(total);

    fn rec(
        counts: &mut Vec<u32>,
        letters: &mut Vec<Letter>,
        remaining: usize,
        dsum: i64,
        d: i64,
        lo: i64,
        hi: i64,
        st: &ShiftTable,
        out: &mut Vec<Word>,
    ) {
        if remaining == 0 {
            if dsum == d {
                out.push(Word(letters.clone()));
            }
            return;
        }
        // prune by achievable exponent sums
        let rem = remaining as i64;
        if dsum + lo * rem > d || dsum + hi * rem < d {
            return;
        }
        for color in 0..counts.len() {
            if counts[color] == 0 {
                continue;
            }
            for exp in lo..=hi {
                let letter = Letter { color, exp };
                // incremental non-increasing check against all previous letters
                letters.push(letter);
                let b = letters.len() - 1;
                let ok = (0..b).all(|a| {
                    let ib = letters[b].color;
                    let mut corr = 0;
                    for x in a..b {
                        corr += st.get(letters[x].color, ib) + st.get(ib, letters[x].color);
                    }
                    let rhs = letters[b].exp - corr;
                    letters[a].exp < rhs || (letters[a].exp == rhs && letters[a].color >= ib)
                });
                if ok {
                    counts[color] -= 1;
                    rec(counts, letters, remaining - 1, dsum + exp, d, lo, hi, st, out);
                    counts[color] += 1;
                }
                letters.pop();
            }
        }
    }

    rec(&mut counts, &mut letters, total, 0, d, lo, hi, st, &mut out);
    if let Some(min) = at_least {
        out.retain(|w| w >= min);
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{from_kac_moody, from_quiver};

    fn w(letters: &[(usize, i64)]) -> Word {
        Word(letters.iter().map(|&(c, e)| Letter { color: c, exp: e }).collect())
    }

    #[test]
    fn letter_and_word_order() {
        // [1^(5)] < [1^(3)] since exponent 5 > 3 makes the letter smaller
        assert!(w(&[(1, 5)]) < w(&[(1, 3)]));
        // prefix rule
        assert!(w(&[(1, 0)]) < w(&[(1, 0), (2, 1)]));
        // tie on exponent, larger color is larger
        assert!(w(&[(1, 0), (2, 0)]) > w(&[(1, 0), (1, 0)]));
    }

    fn sl2() -> ZetaDatum {
        from_kac_moody(&[vec![2]]).unwrap().expand()
    }

    #[test]
    fn non_increasing_examples() {
        let st = ShiftTable::of(&sl2());
        assert!(is_non_increasing(&w(&[(0, 7)]), &st));
        assert!(!is_non_increasing(&w(&[(0, 1), (0, 0)]), &st));
        assert!(is_non_increasing(&w(&[(0, 0), (0, 0)]), &st));
    }

    #[test]
    fn leading_word_single_variable() {
        let st = ShiftTable::of(&sl2());
        let ctx = DegreeVector(vec![1]);
        let m = Monomial::var(VarId::new(0, 1), -4);
        assert_eq!(leading_word_of_monomial(&m, &ctx, &st), w(&[(0, 4)]));
    }

    #[test]
    fn leading_word_quiver_two_vars() {
        // all s = 0: word letters are the k's; lex-largest puts the smaller
        // exponent first
        let z = from_quiver(&[vec![1]]).unwrap().expand();
        let st = ShiftTable::of(&z);
        let ctx = DegreeVector(vec![2]);
        let (a, b) = (2i64, 5i64);
        let m = Monomial::from_pairs([(VarId::new(0, 1), -a), (VarId::new(0, 2), -b)]);
        let lead_w = leading_word_of_monomial(&m, &ctx, &st);
        assert_eq!(lead_w, w(&[(0, a.min(b)), (0, a.max(b))]));
        // brute force over both orders agrees
        let pairs = [(0usize, a), (0usize, b)];
        let d1 = word_exponents_from_k(&[0, 0], &[pairs[0].1, pairs[1].1], &st);
        let d2 = word_exponents_from_k(&[0, 0], &[pairs[1].1, pairs[0].1], &st);
        let best = std::cmp::max(w(&[(0, d1[0]), (0, d1[1])]), w(&[(0, d2[0]), (0, d2[1])]));
        assert_eq!(lead_w, best);
    }

    #[test]
    fn leading_word_matches_bruteforce_mixed_colors() {
        let z = from_kac_moody(&[vec![2, -1], vec![-1, 2]]).unwrap().expand();
        let st = ShiftTable::of(&z);
        // three variables of mixed colors with various k's
        for ks in [[0i64, 1, -2], [3, 3, 0], [-1, -1, -1], [2, 0, 5]] {
            let pairs = vec![(0usize, ks[0]), (0usize, ks[1]), (1usize, ks[2])];
            let greedy = leading_word_of_pairs(&pairs, &st);
            // brute force over all 3! orderings
            let mut best: Option<Word> = None;
            let idx = [0usize, 1, 2];
            let perms = [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            for p in perms {
                let colors: Vec<usize> = p.iter().map(|&i| pairs[idx[i]].0).collect();
                let kseq: Vec<i64> = p.iter().map(|&i| pairs[idx[i]].1).collect();
                let ds = word_exponents_from_k(&colors, &kseq, &st);
                let cand = Word(
                    colors
                        .iter()
                        .zip(&ds)
                        .map(|(&c, &d)| Letter { color: c, exp: d })
                        .collect(),
                );
                best = Some(match best {
                    Some(b) => b.max(cand),
                    None => cand,
                });
            }
            assert_eq!(greedy, best.unwrap(), "ks = {ks:?}");
        }
    }

    #[test]
    fn leading_word_is_non_increasing() {
        let z = from_kac_moody(&[vec![2, -2], vec![-2, 4]]).unwrap().expand();
        let st = ShiftTable::of(&z);
        for ks in [[0i64, 0, 0], [1, -3, 2], [5, 5, -5], [-2, 7, 1]] {
            let pairs = vec![(0usize, ks[0]), (1usize, ks[1]), (1usize, ks[2])];
            let lw = leading_word_of_pairs(&pairs, &st);
            assert!(is_non_increasing(&lw, &st), "{lw} from {ks:?}");
        }
    }

    #[test]
    fn lead_of_polynomial() {
        let st = ShiftTable::of(&sl2());
        let ctx = DegreeVector(vec![1]);
        let r = LaurentPoly::var_pow(VarId::new(0, 1), -3);
        let (lw, m, c) = lead(&r, &ctx, &st).unwrap();
        assert_eq!(lw, w(&[(0, 3)]));
        assert_eq!(m, Monomial::var(VarId::new(0, 1), -3));
        assert!(c.is_one());
        assert!(lead(&LaurentPoly::zero(), &ctx, &st).is_err());
    }

    #[test]
    fn enumerate_forced_singleton() {
        let st = ShiftTable::of(&sl2());
        let n = DegreeVector(vec![1]);
        let got = enumerate_non_increasing((&n, 5), (5, 5), None, &st);
        assert_eq!(got, vec![w(&[(0, 5)])]);
    }

    #[test]
    fn enumerate_sl2_degree_two() {
        let st = ShiftTable::of(&sl2());
        let n = DegreeVector(vec![2]);
        let got = enumerate_non_increasing((&n, 0), (-1, 1), None, &st);
        // ascending word order puts [0^(0) 0^(0)] first: larger exponents make
        // smaller letters
        assert_eq!(got, vec![w(&[(0, 0), (0, 0)]), w(&[(0, -1), (0, 1)])]);
    }

    #[test]
    fn enumerate_empty_window() {
        let st = ShiftTable::of(&sl2());
        let n = DegreeVector(vec![2]);
        assert!(enumerate_non_increasing((&n, 10), (-1, 1), None, &st).is_empty());
        assert!(enumerate_non_increasing((&n, 0), (1, -1), None, &st).is_empty());
    }

    #[test]
    fn enumerate_agrees_with_bruteforce_filter() {
        let z = from_quiver(&[vec![0, 1], vec![0, 0]]).unwrap().expand();
        let st = ShiftTable::of(&z);
        let n = DegreeVector(vec![1, 1]);
        let got = enumerate_non_increasing((&n, 1), (-1, 2), None, &st);
        // brute force: all color sequences and exponent pairs
        let mut expect = Vec::new();
        for (c1, c2) in [(0usize, 1usize), (1, 0)] {
            for e1 in -1..=2i64 {
                let e2 = 1 - e1;
                if !(-1..=2).contains(&e2) {
                    continue;
                }
                let cand = w(&[(c1, e1), (c2, e2)]);
                if is_non_increasing(&cand, &st) {
                    expect.push(cand);
                }
            }
        }
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn degree_additivity() {
        let a = w(&[(0, 2), (1, -1)]);
        let b = w(&[(1, 4)]);
        let (na, da) = a.degree(2);
        let (nb, db) = b.degree(2);
        let (nc, dc) = a.concat(&b).degree(2);
        assert_eq!(nc, na.add(&nb));
        assert_eq!(dc, da + db);
    }

    #[test]
    fn word_order_total_on_samples() {
        let ws = [
            w(&[(0, 0)]),
            w(&[(0, 1)]),
            w(&[(1, 0)]),
            w(&[(0, 0), (1, 2)]),
            w(&[(0, 0), (1, -2)]),
            w(&[]),
        ];
        for a in &ws {
            for b in &ws {
                let ab = a.cmp(b);
                let ba = b.cmp(a);
                assert_eq!(ab, ba.reverse());
                for c in &ws {
                    if a <= b && b <= c {
                        assert!(a <= c);
                    }
                }
            }
        }
    }
}
