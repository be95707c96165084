//! The zeta datum that parametrizes every algebra in this crate: storage with
//! derived constants, constructors from Cartan/quiver data, the symmetry
//! predicate, specialization at a point, and wheel detection.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use crate::error::CoreError;
use crate::poly::{DegreeVector, VarId};
use crate::scalar::Scalar;
use crate::uni::UniLaurent;

/// Matrix of numerators `zt[i][j]` with pole flags: `zeta_ij(x) =
/// zt_ij(x) / (1-x)^{pole_ij}`, pole only allowed on the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaDatum {
    tilde: Vec<Vec<UniLaurent>>,
    pole: Vec<Vec<bool>>,
    /// Content digest for memoization keys.
    id: u64,
}

impl ZetaDatum {
    pub fn new(tilde: Vec<Vec<UniLaurent>>, pole: Vec<Vec<bool>>) -> Result<Self, CoreError> {
        let n = tilde.len();
        if pole.len() != n || tilde.iter().any(|r| r.len() != n) || pole.iter().any(|r| r.len() != n)
        {
            return Err(CoreError::Parse("zeta matrix shape mismatch".into()));
        }
        for (i, row) in tilde.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                if f.is_zero() {
                    return Err(CoreError::ZeroInput);
                }
                if pole[i][j] && i != j {
                    return Err(CoreError::Parse(
                        "pole flag allowed only on the diagonal".into(),
                    ));
                }
            }
        }
        let mut enc = String::new();
        for (i, row) in tilde.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                enc.push_str(&format!("{i},{j}:{f}|{};", pole[i][j]));
            }
        }
        let mut h = DefaultHasher::new();
        enc.hash(&mut h);
        let id = h.finish();
        Ok(ZetaDatum { tilde, pole, id })
    }

    pub fn vertex_count(&self) -> usize {
        self.tilde.len()
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// Numerator polynomial of `zeta_ij`.
    pub fn tilde(&self, i: usize, j: usize) -> &UniLaurent {
        &self.tilde[i][j]
    }

    pub fn has_pole(&self, i: usize, j: usize) -> bool {
        self.pole[i][j]
    }

    /// Lowest exponent of the numerator.
    pub fn s(&self, i: usize, j: usize) -> i64 {
        self.tilde[i][j].lowest().expect("nonzero numerator")
    }

    /// Exponent spread of the numerator.
    pub fn spread(&self, i: usize, j: usize) -> i64 {
        self.tilde[i][j].spread().expect("nonzero numerator")
    }

    /// Lowest coefficient of the numerator.
    pub fn alpha(&self, i: usize, j: usize) -> &Scalar {
        self.tilde[i][j].lowest_coeff().expect("nonzero numerator")
    }

    /// Highest coefficient of the numerator.
    pub fn beta(&self, i: usize, j: usize) -> &Scalar {
        self.tilde[i][j].highest_coeff().expect("nonzero numerator")
    }

    /// Datum with `zeta'_ij = zeta_ji`; carries the minus-side machinery.
    pub fn transpose(&self) -> ZetaDatum {
        let n = self.vertex_count();
        let tilde = (0..n)
            .map(|i| (0..n).map(|j| self.tilde[j][i].clone()).collect())
            .collect();
        let pole = (0..n)
            .map(|i| (0..n).map(|j| self.pole[j][i]).collect())
            .collect();
        ZetaDatum::new(tilde, pole).expect("transpose of valid datum")
    }

    /// Symmetry predicate: spread_ij = -s_ij - s_ji + delta_ij for all i, j.
    pub fn is_symmetric(&self) -> bool {
        let n = self.vertex_count();
        for i in 0..n {
            for j in 0..n {
                let delta = i64::from(i == j);
                if self.spread(i, j) != -self.s(i, j) - self.s(j, i) + delta {
                    return false;
                }
            }
        }
        true
    }
}

/// One factored numerator entry: `alpha * x^shift * prod_e (1 - x * roots[e])`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredEntry {
    pub alpha: Scalar,
    pub shift: i64,
    pub roots: Vec<Scalar>,
}

impl FactoredEntry {
    pub fn expand(&self) -> UniLaurent {
        let mut f = UniLaurent::term(self.shift, self.alpha.clone());
        for r in &self.roots {
            let factor = UniLaurent::from_terms([(0, Scalar::one()), (1, r.neg())]);
            f = f.mul(&factor);
        }
        f
    }
}

/// Zeta datum in factored root form; diagonal entries always carry the pole.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredZeta {
    pub entries: Vec<Vec<FactoredEntry>>,
}

impl FactoredZeta {
    pub fn vertex_count(&self) -> usize {
        self.entries.len()
    }

    pub fn roots(&self, i: usize, j: usize) -> &[Scalar] {
        &self.entries[i][j].roots
    }

    /// Expand to the general representation (pole flags on the diagonal).
    pub fn expand(&self) -> ZetaDatum {
        let n = self.vertex_count();
        let tilde = (0..n)
            .map(|i| (0..n).map(|j| self.entries[i][j].expand()).collect())
            .collect();
        let pole = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        ZetaDatum::new(tilde, pole).expect("factored entries are nonzero")
    }
}

/// `zeta_ij(x) = (q^{-d_ij} - x)(-x)^{-[i>j]} / (1-x)^{delta_ij}` from a
/// symmetrizer matrix `d` (symmetric, even positive diagonal, nonpositive
/// off-diagonal entries).
pub fn from_kac_moody(d: &[Vec<i64>]) -> Result<FactoredZeta, CoreError> {
    let n = d.len();
    if d.iter().any(|r| r.len() != n) {
        return Err(CoreError::InvalidCartanData("matrix not square".into()));
    }
    for i in 0..n {
        if d[i][i] <= 0 || d[i][i] % 2 != 0 {
            return Err(CoreError::InvalidCartanData(format!(
                "diagonal entry d[{i}][{i}] = {} must be a positive even integer",
                d[i][i]
            )));
        }
        for j in 0..n {
            if d[i][j] != d[j][i] {
                return Err(CoreError::InvalidCartanData("matrix not symmetric".into()));
            }
            if i != j && d[i][j] > 0 {
                return Err(CoreError::InvalidCartanData(
                    "off-diagonal entries must be nonpositive".into(),
                ));
            }
        }
    }
    // (q^{-dij} - x) = q^{-dij}(1 - x q^{dij}); the (-x)^{-1} for i > j pulls
    // out an extra factor -x^{-1}.
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let base = Scalar::q_pow(-d[i][j]);
                    if i > j {
                        FactoredEntry {
                            alpha: base.neg(),
                            shift: -1,
                            roots: vec![Scalar::q_pow(d[i][j])],
                        }
                    } else {
                        FactoredEntry {
                            alpha: base,
                            shift: 0,
                            roots: vec![Scalar::q_pow(d[i][j])],
                        }
                    }
                })
                .collect()
        })
        .collect();
    Ok(FactoredZeta { entries })
}

/// `zeta_ij(x) = (1-x)^{#_ij - delta_ij}` from a quiver arrow-count matrix.
pub fn from_quiver(counts: &[Vec<i64>]) -> Result<FactoredZeta, CoreError> {
    let n = counts.len();
    if counts.iter().any(|r| r.len() != n) {
        return Err(CoreError::Parse("quiver matrix not square".into()));
    }
    if counts.iter().any(|r| r.iter().any(|&c| c < 0)) {
        return Err(CoreError::NegativeCount);
    }
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| FactoredEntry {
                    alpha: Scalar::one(),
                    shift: 0,
                    roots: vec![Scalar::one(); counts[i][j] as usize],
                })
                .collect()
        })
        .collect();
    Ok(FactoredZeta { entries })
}

/// Point in `(K^x)^n / K^x`, stored as explicit values per variable.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecPoint {
    pub values: BTreeMap<VarId, Scalar>,
}

impl SpecPoint {
    pub fn new(values: BTreeMap<VarId, Scalar>) -> Result<Self, CoreError> {
        if values.values().any(Scalar::is_zero) {
            return Err(CoreError::ZeroInput);
        }
        Ok(SpecPoint { values })
    }

    pub fn degree(&self, colors: usize) -> DegreeVector {
        let mut n = DegreeVector::zero(colors);
        for v in self.values.keys() {
            n.0[v.color as usize] = n.0[v.color as usize].max(v.slot as u32);
        }
        n
    }

    /// Canonical representative: within each color the values are sorted by
    /// the deterministic scalar order and reassigned to slots 1..n_i, then the
    /// whole point is rescaled so the first variable has value 1.
    pub fn canonical(&self, colors: usize) -> SpecPoint {
        self.canonical_with_map(colors).0
    }

    /// Canonical representative plus the slot relabeling that produced it.
    pub fn canonical_with_map(&self, colors: usize) -> (SpecPoint, BTreeMap<VarId, VarId>) {
        let mut per_color: Vec<Vec<(Scalar, VarId)>> = vec![Vec::new(); colors];
        for (v, val) in &self.values {
            per_color[v.color as usize].push((val.clone(), *v));
        }
        for vals in per_color.iter_mut() {
            vals.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
        }
        let mut values = BTreeMap::new();
        let mut map = BTreeMap::new();
        for (color, vals) in per_color.iter().enumerate() {
            for (k, (val, old)) in vals.iter().enumerate() {
                let new = VarId::new(color, k + 1);
                values.insert(new, val.clone());
                map.insert(*old, new);
            }
        }
        let first = values.values().next().cloned();
        if let Some(f) = first {
            let inv = f.inv().expect("nonzero point value");
            for val in values.values_mut() {
                *val = val.mul(&inv);
            }
        }
        (SpecPoint { values }, map)
    }

    pub fn encode(&self) -> String {
        let mut s = String::new();
        for (v, val) in &self.values {
            s.push_str(&format!("{v}={val};"));
        }
        s
    }
}

/// Result of specializing a factored datum at a point: equivalence classes,
/// their degree vector, the arrow-count matrix between classes, and the kept
/// numerator factors.
#[derive(Clone, Debug)]
pub struct Specialization {
    /// Partition of the variables; class order is canonical.
    pub classes: Vec<Vec<VarId>>,
    /// Original color of each class.
    pub class_color: Vec<usize>,
    /// Value of each class at the point.
    pub class_value: Vec<Scalar>,
    /// Class sizes (the specialized degree vector).
    pub counts: Vec<u32>,
    /// Arrow counts between classes.
    pub quiver: Vec<Vec<i64>>,
    /// Kept numerator factors per class pair.
    pub partial: Vec<Vec<UniLaurent>>,
}

impl Specialization {
    pub fn class_of(&self, v: VarId) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&v))
            .expect("variable in some class")
    }
}

/// Group variables by (color, value), keep the numerator factors whose root
/// matches the class-value ratio, and count them as arrows.
pub fn specialize(fz: &FactoredZeta, n: &DegreeVector, p: &SpecPoint) -> Result<Specialization, CoreError> {
    let vars = n.variables();
    if vars.len() != p.values.len() || vars.iter().any(|v| !p.values.contains_key(v)) {
        return Err(CoreError::Precondition(
            "point must be defined on exactly the variables of the degree".into(),
        ));
    }
    // classes keyed by (color, value), ordered by color then canonical value
    let mut classes: Vec<(usize, Scalar, Vec<VarId>)> = Vec::new();
    for v in &vars {
        let val = &p.values[v];
        match classes
            .iter_mut()
            .find(|(c, w, _)| *c == v.color as usize && w == val)
        {
            Some((_, _, members)) => members.push(*v),
            None => classes.push((v.color as usize, val.clone(), vec![*v])),
        }
    }
    classes.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.canonical_cmp(&b.1)));
    let k = classes.len();
    let mut quiver = vec![vec![0i64; k]; k];
    let mut partial = vec![vec![UniLaurent::one(); k]; k];
    for (ci, (color_i, val_i, _)) in classes.iter().enumerate() {
        for (cj, (color_j, val_j, _)) in classes.iter().enumerate() {
            let ratio = val_j.div(val_i).expect("nonzero point values");
            let mut kept = UniLaurent::one();
            let mut count = 0;
            for root in fz.roots(*color_i, *color_j) {
                if *root == ratio {
                    let factor = UniLaurent::from_terms([(0, Scalar::one()), (1, root.neg())]);
                    kept = kept.mul(&factor);
                    count += 1;
                }
            }
            quiver[ci][cj] = count;
            partial[ci][cj] = kept;
        }
    }
    Ok(Specialization {
        class_color: classes.iter().map(|(c, _, _)| *c).collect(),
        class_value: classes.iter().map(|(_, v, _)| v.clone()).collect(),
        counts: classes.iter().map(|(_, _, m)| m.len() as u32).collect(),
        classes: classes.into_iter().map(|(_, _, m)| m).collect(),
        quiver,
        partial,
    })
}

/// A closed cycle of variables whose consecutive value ratios are roots.
#[derive(Clone, Debug, PartialEq)]
pub struct Wheel {
    pub cycle: Vec<VarId>,
    pub ratios: Vec<Scalar>,
}

impl Wheel {
    /// Check the ratio equations against a point and the root sets.
    pub fn verify(&self, fz: &FactoredZeta, p: &SpecPoint) -> bool {
        let k = self.cycle.len();
        if k < 2 || self.ratios.len() != k {
            return false;
        }
        for t in 0..k {
            let cur = self.cycle[t];
            let next = self.cycle[(t + 1) % k];
            let (Some(pc), Some(pn)) = (p.values.get(&cur), p.values.get(&next)) else {
                return false;
            };
            let ratio = pn.div(pc).expect("nonzero values");
            if ratio != self.ratios[t] {
                return false;
            }
            if !fz
                .roots(cur.color as usize, next.color as usize)
                .contains(&ratio)
            {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct WheelSearch {
    pub found: Vec<(SpecPoint, Wheel)>,
    pub truncated: bool,
}

/// Enumerate points (up to rescaling) supported on simple closed cycles whose
/// step ratios are roots of the numerators. Variables off the cycle receive
/// deterministic generic values that avoid every root coincidence.
pub fn find_wheels(fz: &FactoredZeta, n: &DegreeVector, max_points: usize) -> WheelSearch {
    let colors = fz.vertex_count();
    let vars = n.variables();
    let mut found: BTreeMap<String, (SpecPoint, Wheel)> = BTreeMap::new();
    let mut truncated = false;

    // distinct roots per (i,j)
    let root_sets: Vec<Vec<Vec<Scalar>>> = (0..colors)
        .map(|i| {
            (0..colors)
                .map(|j| {
                    let mut rs: Vec<Scalar> = Vec::new();
                    for r in fz.roots(i, j) {
                        if !rs.contains(r) {
                            rs.push(r.clone());
                        }
                    }
                    rs
                })
                .collect()
        })
        .collect();

    // DFS over simple cycles; canonical start is the minimal variable of the
    // cycle, so extensions only use larger variables.
    struct Dfs<'a> {
        vars: Vec<VarId>,
        root_sets: &'a [Vec<Vec<Scalar>>],
        all_roots: Vec<Scalar>,
        fz: &'a FactoredZeta,
        n: &'a DegreeVector,
        colors: usize,
        max_points: usize,
    }

    impl Dfs<'_> {
        fn run(
            &self,
            start: usize,
            path: &mut Vec<(usize, Scalar)>,
            used: &mut Vec<bool>,
            found: &mut BTreeMap<String, (SpecPoint, Wheel)>,
            truncated: &mut bool,
        ) {
            if *truncated {
                return;
            }
            let (last_idx, last_val) = path.last().cloned().unwrap();
            let last_var = self.vars[last_idx];
            // try closing the cycle (length >= 2)
            if path.len() >= 2 {
                let start_var = self.vars[start];
                for r in &self.root_sets[last_var.color as usize][start_var.color as usize] {
                    if last_val.mul(r).is_one() {
                        self.record(path, r, &self.all_roots, found, truncated);
                        if *truncated {
                            return;
                        }
                    }
                }
            }
            // extend
            for next in (start + 1)..self.vars.len() {
                if used[next] {
                    continue;
                }
                let next_var = self.vars[next];
                for r in &self.root_sets[last_var.color as usize][next_var.color as usize] {
                    used[next] = true;
                    path.push((next, last_val.mul(r)));
                    self.run(start, path, used, found, truncated);
                    path.pop();
                    used[next] = false;
                    if *truncated {
                        return;
                    }
                }
            }
        }

        fn record(
            &self,
            path: &[(usize, Scalar)],
            closing_root: &Scalar,
            all_roots: &[Scalar],
            found: &mut BTreeMap<String, (SpecPoint, Wheel)>,
            truncated: &mut bool,
        ) {
            let mut values: BTreeMap<VarId, Scalar> = BTreeMap::new();
            for (idx, val) in path {
                values.insert(self.vars[*idx], val.clone());
            }
            // deterministic generic fillers for off-cycle variables
            let rational_only = all_roots.iter().all(Scalar::is_rational)
                && values.values().all(Scalar::is_rational);
            let mut filler_index: i64 = 0;
            for v in self.n.variables() {
                if values.contains_key(&v) {
                    continue;
                }
                loop {
                    filler_index += 1;
                    let candidate = if rational_only {
                        // powers of a large prime keep all ratios off the roots
                        Scalar::from_int(101).pow(filler_index).unwrap()
                    } else {
                        Scalar::q_pow(1000 * filler_index)
                    };
                    let clean = values.values().all(|w| {
                        let r1 = candidate.div(w).unwrap();
                        let r2 = w.div(&candidate).unwrap();
                        !all_roots.contains(&r1) && !all_roots.contains(&r2)
                    });
                    if clean {
                        values.insert(v, candidate);
                        break;
                    }
                }
            }
            let (point, slot_map) = SpecPoint { values }.canonical_with_map(self.colors);
            let key = point.encode();
            if found.contains_key(&key) {
                return;
            }
            if found.len() >= self.max_points {
                *truncated = true;
                return;
            }
            let cycle: Vec<VarId> = path.iter().map(|(i, _)| slot_map[&self.vars[*i]]).collect();
            let mut ratios: Vec<Scalar> = Vec::new();
            for t in 1..path.len() {
                ratios.push(path[t].1.div(&path[t - 1].1).unwrap());
            }
            ratios.push(closing_root.clone());
            let wheel = Wheel { cycle, ratios };
            debug_assert!(wheel.verify(self.fz, &point));
            found.insert(key, (point, wheel));
        }
    }

    if vars.len() >= 2 {
        let mut all_roots: Vec<Scalar> = Vec::new();
        for row in &root_sets {
            for rs in row {
                for r in rs {
                    if !all_roots.contains(r) {
                        all_roots.push(r.clone());
                    }
                }
            }
        }
        let dfs = Dfs {
            vars: vars.clone(),
            root_sets: &root_sets,
            all_roots,
            fz,
            n,
            colors,
            max_points,
        };
        for start in 0..vars.len() {
            let mut used = vec![false; vars.len()];
            used[start] = true;
            let mut path = vec![(start, Scalar::one())];
            dfs.run(start, &mut path, &mut used, &mut found, &mut truncated);
            if truncated {
                break;
            }
        }
    }

    WheelSearch {
        found: found.into_values().collect(),
        truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kac_moody_sl2() {
        let fz = from_kac_moody(&[vec![2]]).unwrap();
        let z = fz.expand();
        // numerator q^{-2} - x, root q^2, shift 0, pole on the diagonal
        assert_eq!(z.s(0, 0), 0);
        assert_eq!(z.spread(0, 0), 1);
        assert_eq!(*z.alpha(0, 0), Scalar::q_pow(-2));
        assert_eq!(fz.roots(0, 0), &[Scalar::q_pow(2)]);
        assert!(z.has_pole(0, 0));
        assert!(z.is_symmetric());
    }

    #[test]
    fn kac_moody_rank_two_off_diagonal() {
        let fz = from_kac_moody(&[vec![2, -1], vec![-1, 2]]).unwrap();
        let z = fz.expand();
        // zeta_12(x) = q - x for 1 < 2: numerator q(1 - x q^{-1})
        assert_eq!(*z.alpha(0, 1), Scalar::q_pow(1));
        assert_eq!(fz.roots(0, 1), &[Scalar::q_pow(-1)]);
        assert_eq!(z.s(0, 1), 0);
        // i > j pulls out -x^{-1}
        assert_eq!(z.s(1, 0), -1);
        assert_eq!(*z.alpha(1, 0), Scalar::q_pow(1).neg());
        assert!(!z.has_pole(0, 1));
        assert!(z.is_symmetric());
    }

    #[test]
    fn kac_moody_rejects_odd_diagonal() {
        assert!(matches!(
            from_kac_moody(&[vec![3]]),
            Err(CoreError::InvalidCartanData(_))
        ));
        assert!(from_kac_moody(&[vec![2, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn quiver_jordan_one_loop() {
        let fz = from_quiver(&[vec![1]]).unwrap();
        let z = fz.expand();
        // zeta_11 = 1: numerator 1 - x over the pole
        assert_eq!(
            *z.tilde(0, 0),
            UniLaurent::from_terms([(0, Scalar::one()), (1, Scalar::from_int(-1))])
        );
        assert_eq!(fz.roots(0, 0), &[Scalar::one()]);
    }

    #[test]
    fn quiver_cyclic_three_matches_table() {
        // arrows 2->1, 3->2, 1->3 give zeta_{21} = zeta_{32} = zeta_{13} = 1-x
        let counts = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        let fz = from_quiver(&counts).unwrap();
        let z = fz.expand();
        let one_minus_x = UniLaurent::from_terms([(0, Scalar::one()), (1, Scalar::from_int(-1))]);
        assert_eq!(*z.tilde(1, 0), one_minus_x);
        assert_eq!(*z.tilde(2, 1), one_minus_x);
        assert_eq!(*z.tilde(0, 2), one_minus_x);
        assert_eq!(*z.tilde(0, 1), UniLaurent::one());
        assert!(!z.has_pole(0, 1));
        assert!(z.has_pole(1, 1));
    }

    #[test]
    fn quiver_zero_matrix() {
        let fz = from_quiver(&[vec![0, 0], vec![0, 0]]).unwrap();
        let z = fz.expand();
        assert_eq!(*z.tilde(0, 0), UniLaurent::one());
        assert!(z.has_pole(0, 0));
        assert_eq!(*z.tilde(0, 1), UniLaurent::one());
        assert!(from_quiver(&[vec![-1]]).is_err());
    }

    #[test]
    fn symmetry_predicate_on_quivers() {
        // #_{12}=1, #_{21}=0 is not symmetric
        let z = from_quiver(&[vec![0, 1], vec![0, 0]]).unwrap().expand();
        assert!(!z.is_symmetric());
        // identity-count quiver is symmetric: spread_ij = delta_ij
        let z = from_quiver(&[vec![1, 0], vec![0, 1]]).unwrap().expand();
        assert!(z.is_symmetric());
        // two-loop Jordan is not
        let z = from_quiver(&[vec![2]]).unwrap().expand();
        assert!(!z.is_symmetric());
    }

    #[test]
    fn factored_roundtrip() {
        let fz = from_kac_moody(&[vec![2, -2], vec![-2, 4]]).unwrap();
        let z = fz.expand();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*z.tilde(i, j), fz.entries[i][j].expand());
            }
        }
    }

    fn point(vals: &[((usize, usize), Scalar)]) -> SpecPoint {
        SpecPoint::new(
            vals.iter()
                .map(|((c, a), v)| (VarId::new(*c, *a), v.clone()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn specialize_generic_point_is_free() {
        // loop-free quiver: a generic point avoids every root, including the
        // self-ratio 1 on the diagonal
        let fz = from_quiver(&[vec![0, 2], vec![3, 0]]).unwrap();
        let n = DegreeVector(vec![1, 1]);
        let p = point(&[
            ((0, 1), Scalar::from_int(2)),
            ((1, 1), Scalar::from_int(7)),
        ]);
        let sp = specialize(&fz, &n, &p).unwrap();
        assert_eq!(sp.counts, vec![1, 1]);
        assert!(sp.quiver.iter().flatten().all(|&c| c == 0));
        assert!(sp.partial.iter().flatten().all(UniLaurent::is_one));
    }

    #[test]
    fn specialize_loops_persist_at_any_point() {
        // a self-loop has root 1 and a class's ratio with itself is 1
        let fz = from_quiver(&[vec![1]]).unwrap();
        let n = DegreeVector(vec![1]);
        let p = point(&[((0, 1), Scalar::from_int(5))]);
        let sp = specialize(&fz, &n, &p).unwrap();
        assert_eq!(sp.quiver, vec![vec![1]]);
    }

    #[test]
    fn specialize_all_ones_recovers_quiver() {
        let counts = vec![vec![1, 2], vec![3, 0]];
        let fz = from_quiver(&counts).unwrap();
        let n = DegreeVector(vec![2, 1]);
        let p = point(&[
            ((0, 1), Scalar::one()),
            ((0, 2), Scalar::one()),
            ((1, 1), Scalar::one()),
        ]);
        let sp = specialize(&fz, &n, &p).unwrap();
        // all color-0 variables merge into one class of size 2
        assert_eq!(sp.counts, vec![2, 1]);
        assert_eq!(sp.quiver, counts);
    }

    #[test]
    fn specialize_sl2_ratio_test() {
        let fz = from_kac_moody(&[vec![2]]).unwrap();
        let n = DegreeVector(vec![2]);
        let p = point(&[((0, 1), Scalar::one()), ((0, 2), Scalar::q_pow(2))]);
        let sp = specialize(&fz, &n, &p).unwrap();
        assert_eq!(sp.counts, vec![1, 1]);
        // ratio p2/p1 = q^2 matches the root q^{d_00} = q^2, one arrow 1 -> 2
        assert_eq!(sp.quiver[0][1], 1);
        assert_eq!(sp.quiver[1][0], 0);
        assert_eq!(sp.quiver[0][0], 0);
    }

    #[test]
    fn wheels_none_without_arrows() {
        let fz = from_quiver(&[vec![0, 0], vec![0, 0]]).unwrap();
        let res = find_wheels(&fz, &DegreeVector(vec![1, 1]), 10);
        assert!(res.found.is_empty());
        assert!(!res.truncated);
    }

    #[test]
    fn wheels_cyclic_three() {
        let counts = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        let fz = from_quiver(&counts).unwrap();
        let res = find_wheels(&fz, &DegreeVector(vec![1, 1, 1]), 10);
        assert!(!res.found.is_empty());
        // the all-equal point: canonical form has every value 1
        let all_ones = res
            .found
            .iter()
            .find(|(p, _)| p.values.values().all(Scalar::is_one))
            .expect("wheel at the all-equal point");
        assert!(all_ones.1.verify(&fz, &all_ones.0));
        assert_eq!(all_ones.1.cycle.len(), 3);
    }

    #[test]
    fn every_reported_wheel_verifies() {
        let fz = from_kac_moody(&[vec![2, -1], vec![-1, 2]]).unwrap();
        let res = find_wheels(&fz, &DegreeVector(vec![2, 1]), 50);
        assert!(!res.found.is_empty());
        for (p, w) in &res.found {
            assert!(w.verify(&fz, p));
        }
    }

    #[test]
    fn symmetric_pattern_point_is_found() {
        // symmetric Cartan matrix, d_12 = -1; k=1, l=0, m=1 gives the pattern
        // point (q^2, q^4; q^3) ~ (1, q^2; q) at degree (2, 1)
        let fz = from_kac_moody(&[vec![2, -1], vec![-1, 2]]).unwrap();
        let res = find_wheels(&fz, &DegreeVector(vec![2, 1]), 200);
        let expected = SpecPoint::new(
            [
                (VarId::new(0, 1), Scalar::q_pow(2)),
                (VarId::new(0, 2), Scalar::q_pow(4)),
                (VarId::new(1, 1), Scalar::q_pow(3)),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap()
        .canonical(2);
        assert!(
            res.found.iter().any(|(p, _)| *p == expected),
            "pattern point not found; points: {:?}",
            res.found.iter().map(|(p, _)| p.encode()).collect::<Vec<_>>()
        );
    }
}
