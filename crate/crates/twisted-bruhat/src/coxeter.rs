//! Coxeter groups with bonds in `{2, 3, ∞}` via the geometric representation.
//!
//! Simple roots have norm 1 and `(α_i, α_j) = −cos(π/m_ij)`, which is `0`,
//! `−1/2` or `−1`. Twice the Gram matrix is integral, so roots have integer
//! coordinates and elements are integer matrices acting on them.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_rational::Rational64;

use crate::error::Error;

pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bond {
    Two,
    Three,
    Infinite,
}

impl Bond {
    pub fn from_m(m: u32) -> Result<Bond, Error> {
        match m {
            2 => Ok(Bond::Two),
            3 => Ok(Bond::Three),
            0 => Ok(Bond::Infinite),
            _ => Err(Error::Invalid(format!("bond m={m} outside {{2,3,inf}}"))),
        }
    }

    /// `2(α_i, α_j)`.
    fn twice_gram(self) -> i64 {
        match self {
            Bond::Two => 0,
            Bond::Three => -1,
            Bond::Infinite => -2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    pub rank: usize,
    /// Off-diagonal bonds; the diagonal is ignored.
    pub bonds: Vec<Vec<Bond>>,
}

impl CoxeterMatrix {
    pub fn new(bonds: Vec<Vec<Bond>>) -> Result<Self, Error> {
        let rank = bonds.len();
        for (i, row) in bonds.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::Invalid("bond matrix not square".into()));
            }
            for j in 0..rank {
                if i != j && bonds[i][j] != bonds[j][i] {
                    return Err(Error::Invalid("bond matrix not symmetric".into()));
                }
            }
        }
        Ok(CoxeterMatrix { rank, bonds })
    }

    /// `m₁₂ = 3, m₁₃ = 2, m₂₃ = ∞`.
    pub fn two_three_infinity() -> Self {
        use Bond::*;
        CoxeterMatrix::new(vec![vec![Two, Three, Two], vec![Three, Two, Infinite], vec![Two, Infinite, Two]]).unwrap()
    }

    /// All bonds `∞`.
    pub fn universal(rank: usize) -> Self {
        CoxeterMatrix::new(vec![vec![Bond::Infinite; rank]; rank]).unwrap()
    }
}

/// Group element as the integer matrix of its action on root coordinates (row-major).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxElement {
    mat: Vec<i64>,
}

/// A reflection, named by its positive root and a palindromic word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub root: Root,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    pub matrix: CoxeterMatrix,
    c: Vec<Vec<i64>>,
}

impl CoxeterGroup {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let n = matrix.rank;
        let c = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 2 } else { matrix.bonds[i][j].twice_gram() }).collect())
            .collect();
        CoxeterGroup { matrix, c }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank
    }

    pub fn gram(&self, i: usize, j: usize) -> Rational64 {
        Rational64::new(self.c[i][j], 2)
    }

    /// `2(u, v)`.
    pub fn inner2(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| u[i] * self.c[i][j] * v[j]).sum::<i64>()).sum()
    }

    pub fn inner(&self, u: &[i64], v: &[i64]) -> Rational64 {
        Rational64::new(self.inner2(u, v), 2)
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// `s_γ(v) = v − 2(v, γ)γ`; every root has norm 1.
    pub fn reflect(&self, gamma: &[i64], v: &[i64]) -> Root {
        let k = self.inner2(v, gamma);
        v.iter().zip(gamma).map(|(a, g)| a - k * g).collect()
    }

    pub fn identity(&self) -> CoxElement {
        let n = self.rank();
        let mut mat = vec![0; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        CoxElement { mat }
    }

    /// The reflection in `γ` as a group element.
    pub fn reflection(&self, gamma: &[i64]) -> CoxElement {
        let n = self.rank();
        let mut mat = vec![0; n * n];
        for j in 0..n {
            let col = self.reflect(gamma, &self.simple_root(j));
            for i in 0..n {
                mat[i * n + j] = col[i];
            }
        }
        CoxElement { mat }
    }

    pub fn simple(&self, i: usize) -> CoxElement {
        self.reflection(&self.simple_root(i))
    }

    pub fn mul(&self, a: &CoxElement, b: &CoxElement) -> CoxElement {
        let n = self.rank();
        let mut mat = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a.mat[i * n + k];
                if x != 0 {
                    for j in 0..n {
                        mat[i * n + j] += x * b.mat[k * n + j];
                    }
                }
            }
        }
        CoxElement { mat }
    }

    pub fn act(&self, w: &CoxElement, v: &[i64]) -> Root {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| w.mat[i * n + j] * v[j]).sum()).collect()
    }

    pub fn from_word(&self, word: &[usize]) -> CoxElement {
        word.iter().fold(self.identity(), |acc, &s| self.mul(&acc, &self.simple(s)))
    }

    /// A reduced word, peeling right descents (`wα_s < 0`).
    pub fn reduced_word(&self, w: &CoxElement) -> Vec<usize> {
        let n = self.rank();
        let mut cur = w.clone();
        let mut rev = vec![];
        while cur != self.identity() {
            let s = (0..n).find(|&s| (0..n).any(|i| cur.mat[i * n + s] < 0)).expect("nontrivial element has a descent");
            cur = self.mul(&cur, &self.simple(s));
            rev.push(s);
        }
        rev.reverse();
        rev
    }

    pub fn length(&self, w: &CoxElement) -> usize {
        self.reduced_word(w).len()
    }

    pub fn inv(&self, w: &CoxElement) -> CoxElement {
        let mut word = self.reduced_word(w);
        word.reverse();
        self.from_word(&word)
    }

    /// `N(s₁⋯s_k) = [α_{s₁}, s₁α_{s₂}, …]` in word order.
    pub fn inversion_roots(&self, word: &[usize]) -> Vec<Root> {
        let mut out = Vec::with_capacity(word.len());
        let mut prefix = self.identity();
        for &s in word {
            out.push(self.act(&prefix, &self.simple_root(s)));
            prefix = self.mul(&prefix, &self.simple(s));
        }
        out
    }

    /// `Ñ(w)` with palindromic words `s₁⋯s_{i−1}s_is_{i−1}⋯s₁`.
    pub fn n_tilde(&self, w: &CoxElement, budget: usize) -> Result<Vec<Reflection>, Error> {
        let word = self.reduced_word(w);
        if word.len() > budget {
            return Err(Error::BudgetExceeded(format!("length {} over {budget}", word.len())));
        }
        let roots = self.inversion_roots(&word);
        Ok(roots
            .into_iter()
            .enumerate()
            .map(|(i, root)| {
                let mut pal: Vec<usize> = word[..=i].to_vec();
                pal.extend(word[..i].iter().rev());
                Reflection { root, word: pal }
            })
            .collect())
    }

    /// The positive root of the reflection `w` (a conjugate of a simple reflection).
    pub fn reflection_root(&self, w: &CoxElement) -> Option<Root> {
        let word = self.reduced_word(w);
        if word.len().is_multiple_of(2) {
            return None;
        }
        let h = word.len() / 2;
        let root = self.act(&self.from_word(&word[..h]), &self.simple_root(word[h]));
        (self.reflection(&root) == *w).then_some(root)
    }

    pub fn is_positive(v: &[i64]) -> bool {
        v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0)
    }

    /// Positive roots reachable from the simple roots in at most `depth` reflections.
    pub fn positive_roots(&self, depth: usize) -> Vec<Root> {
        let mut seen: HashSet<Root> = HashSet::new();
        let mut out = vec![];
        let mut frontier: Vec<Root> = (0..self.rank()).map(|i| self.simple_root(i)).collect();
        for r in &frontier {
            seen.insert(r.clone());
            out.push(r.clone());
        }
        for _ in 0..depth {
            let mut next = vec![];
            for r in &frontier {
                for s in 0..self.rank() {
                    let x = self.reflect(&self.simple_root(s), r);
                    if Self::is_positive(&x) && seen.insert(x.clone()) {
                        out.push(x.clone());
                        next.push(x);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Order of `w` if it is at most `cap`.
    pub fn order_upto(&self, w: &CoxElement, cap: u32) -> Option<u32> {
        let mut cur = w.clone();
        for n in 1..=cap {
            if cur == self.identity() {
                return Some(n);
            }
            cur = self.mul(&cur, w);
        }
        None
    }
}

/// Subgroup generated by reflections in the given positive roots.
#[derive(Clone, Debug)]
pub struct ReflectionSubgroup {
    pub generators: Vec<Root>,
    /// Positive roots of the subgroup found so far, by breadth-first search.
    roots: HashSet<Root>,
    pub depth: usize,
}

impl ReflectionSubgroup {
    pub fn new(g: &CoxeterGroup, generators: Vec<Root>, depth: usize) -> Self {
        let mut all: HashSet<Root> = HashSet::new();
        let mut frontier: Vec<Root> = vec![];
        for r in &generators {
            let neg: Root = r.iter().map(|x| -x).collect();
            for x in [r.clone(), neg] {
                if all.insert(x.clone()) {
                    frontier.push(x);
                }
            }
        }
        for _ in 0..depth {
            let mut next = vec![];
            for r in &frontier {
                for gen in &generators {
                    let x = g.reflect(gen, r);
                    if all.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
            frontier = next;
        }
        let roots = all.into_iter().filter(|r| CoxeterGroup::is_positive(r)).collect();
        ReflectionSubgroup { generators, roots, depth }
    }

    /// Root-of-subgroup test within the search depth.
    pub fn contains_root(&self, r: &[i64]) -> bool {
        let pos: Root = if CoxeterGroup::is_positive(r) { r.to_vec() } else { r.iter().map(|x| -x).collect() };
        self.roots.contains(&pos)
    }

    /// `Ñ(r) ∩ T_{W′} = {r}` for the generator `r = s_γ`; false if `γ` is not a subgroup root.
    pub fn canonical_check(&self, g: &CoxeterGroup, gamma: &[i64], budget: usize) -> Result<bool, Error> {
        if !self.contains_root(gamma) {
            return Ok(false);
        }
        let hits: Vec<Reflection> =
            g.n_tilde(&g.reflection(gamma), budget)?.into_iter().filter(|t| self.contains_root(&t.root)).collect();
        Ok(hits.len() == 1 && hits[0].root == gamma)
    }

    /// Pairwise `(α_{r_i}, α_{r_j}) = −1` and no relation `(r_ir_j)^m = e` with `m ≤ budget`.
    pub fn universal_check(&self, g: &CoxeterGroup, budget: u32) -> bool {
        let n = self.generators.len();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = (&self.generators[i], &self.generators[j]);
                if g.inner2(a, b) != -2 {
                    return false;
                }
                let p = g.mul(&g.reflection(a), &g.reflection(b));
                if g.order_upto(&p, budget).is_some() {
                    return false;
                }
            }
        }
        true
    }
}

/// Inversion set of a periodic infinite word `w^∞`, truncated at `copies` periods.
#[derive(Clone, Debug)]
pub struct PeriodicInversion {
    pub period: Vec<usize>,
    /// Roots in word order.
    pub sequence: Vec<Root>,
    members: HashSet<Root>,
}

impl PeriodicInversion {
    pub fn new(g: &CoxeterGroup, period: &[usize], copies: usize) -> Self {
        let mut sequence = vec![];
        let n = g.rank();
        // i128 with an overflow stop: later roots are far beyond anything queried.
        let mut prefix: Vec<i128> = vec![0; n * n];
        for i in 0..n {
            prefix[i * n + i] = 1;
        }
        'outer: for _ in 0..copies {
            for &s in period {
                let col: Option<Vec<i64>> = (0..n).map(|i| i64::try_from(prefix[i * n + s]).ok()).collect();
                let Some(root) = col else { break 'outer };
                sequence.push(root);
                let simple = g.simple(s);
                let mut next = vec![0i128; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut acc: i128 = 0;
                        for k in 0..n {
                            let v = prefix[i * n + k].checked_mul(simple.mat[k * n + j] as i128);
                            match v.and_then(|v| acc.checked_add(v)) {
                                Some(a) => acc = a,
                                None => break 'outer,
                            }
                        }
                        next[i * n + j] = acc;
                    }
                }
                prefix = next;
            }
        }
        let members = sequence.iter().cloned().collect();
        PeriodicInversion { period: period.to_vec(), sequence, members }
    }

    pub fn contains(&self, r: &[i64]) -> bool {
        self.members.contains(r)
    }
}

/// One row of the growth table: elements certified in `[e, target]` with `l(z) ≤ budget`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub budget: usize,
    pub count: usize,
    pub new_elements: Vec<String>,
}

/// The order `≤_A` for `A` the inversion set of a periodic word.
pub struct TwistedCoxeter<'a> {
    pub g: &'a CoxeterGroup,
    pub a: PeriodicInversion,
}

impl<'a> TwistedCoxeter<'a> {
    pub fn new(g: &'a CoxeterGroup, a: PeriodicInversion) -> Self {
        TwistedCoxeter { g, a }
    }

    /// `l_A(w) = l(w) − 2|N(w⁻¹) ∩ A|`.
    pub fn length(&self, w: &CoxElement) -> i64 {
        let mut word = self.g.reduced_word(w);
        word.reverse();
        let hits = self.g.inversion_roots(&word).iter().filter(|r| self.a.contains(r)).count();
        word.len() as i64 - 2 * hits as i64
    }

    /// Bidirectional search for `e ≤_A z ≤_A target` with `l(z) ≤ budget`, reflections of depth `≤ depth`.
    pub fn interval_elements(&self, target: &CoxElement, budget: usize, depth: usize) -> BTreeMap<CoxElement, Vec<CoxElement>> {
        let g = self.g;
        let reflections: Vec<CoxElement> = g.positive_roots(depth).iter().map(|r| g.reflection(r)).collect();
        let top = self.length(target);
        let explore = |start: &CoxElement, up: bool| -> HashMap<CoxElement, Option<CoxElement>> {
            let mut parent: HashMap<CoxElement, Option<CoxElement>> = HashMap::new();
            parent.insert(start.clone(), None);
            let mut queue = VecDeque::from([(start.clone(), self.length(start))]);
            while let Some((z, lz)) = queue.pop_front() {
                for t in &reflections {
                    let y = g.mul(t, &z);
                    if parent.contains_key(&y) || g.length(&y) > budget {
                        continue;
                    }
                    let ly = self.length(&y);
                    let ok = if up { ly > lz && ly <= top } else { ly < lz && ly >= 0 };
                    if ok {
                        parent.insert(y.clone(), Some(z.clone()));
                        queue.push_back((y, ly));
                    }
                }
            }
            parent
        };
        let from_e = explore(&g.identity(), true);
        let from_top = explore(target, false);
        let chain = |map: &HashMap<CoxElement, Option<CoxElement>>, z: &CoxElement| {
            let mut out = vec![z.clone()];
            let mut cur = z.clone();
            while let Some(Some(p)) = map.get(&cur) {
                out.push(p.clone());
                cur = p.clone();
            }
            out
        };
        let mut result = BTreeMap::new();
        for z in from_e.keys() {
            if from_top.contains_key(z) {
                // Witness chain e < ⋯ < z < ⋯ < target.
                let mut c = chain(&from_e, z);
                c.reverse();
                c.pop();
                c.extend(chain(&from_top, z));
                result.insert(z.clone(), c);
            }
        }
        result
    }

    /// Counts over increasing budgets; the reflection depth grows with the budget.
    pub fn interval_growth(&self, target: &CoxElement, budgets: &[usize]) -> Vec<GrowthRow> {
        let mut rows = vec![];
        let mut seen: HashSet<CoxElement> = HashSet::new();
        for &l in budgets {
            let found = self.interval_elements(target, l, l);
            let mut new: Vec<String> = found
                .keys()
                .filter(|z| !seen.contains(*z))
                .map(|z| crate::affine_weyl::format_word(&self.g.reduced_word(z), ""))
                .collect();
            new.sort();
            seen.extend(found.keys().cloned());
            rows.push(GrowthRow { budget: l, count: found.len(), new_elements: new });
        }
        rows
    }
}

/// The rank-3 example: the (2,3,∞) group, `r₁ = s₁`, `r₂ = s₂s₃s₂`, `r₃ = s₃s₂s₃s₂s₃`.
pub struct RankThreeExample {
    pub g: CoxeterGroup,
    pub r_words: [Vec<usize>; 3],
}

impl Default for RankThreeExample {
    fn default() -> Self {
        Self::new()
    }
}

impl RankThreeExample {
    pub fn new() -> Self {
        RankThreeExample {
            g: CoxeterGroup::new(CoxeterMatrix::two_three_infinity()),
            r_words: [vec![0], vec![1, 2, 1], vec![2, 1, 2, 1, 2]],
        }
    }

    pub fn r(&self, i: usize) -> CoxElement {
        self.g.from_word(&self.r_words[i])
    }

    pub fn r_root(&self, i: usize) -> Root {
        self.g.reflection_root(&self.r(i)).unwrap()
    }

    pub fn subgroup(&self, depth: usize) -> ReflectionSubgroup {
        ReflectionSubgroup::new(&self.g, (0..3).map(|i| self.r_root(i)).collect(), depth)
    }

    /// `r₁r₂r₃` as a word in `S`.
    pub fn target_word(&self) -> Vec<usize> {
        self.r_words.concat()
    }

    pub fn target(&self) -> CoxElement {
        self.g.from_word(&self.target_word())
    }

    pub fn a(&self, copies: usize) -> PeriodicInversion {
        PeriodicInversion::new(&self.g, &self.target_word(), copies)
    }

    /// Roots of `N(x^∞) ∩ Φ_{W′}` in word order, first `n` of them.
    pub fn periodic_subgroup_inversions(&self, n: usize, depth: usize) -> Vec<Root> {
        let sub = self.subgroup(depth);
        let a = self.a(8);
        a.sequence.iter().filter(|r| sub.contains_root(r)).take(n).cloned().collect()
    }

    /// `[r₁, r₁α_{r₂}, r₁r₂α_{r₃}, r₁r₂r₃α_{r₁}, …]`: inversions of `(r₁r₂r₃)^∞` inside `W′`.
    pub fn subgroup_word_inversions(&self, n: usize) -> Vec<Root> {
        let g = &self.g;
        let mut prefix = g.identity();
        (0..n)
            .map(|j| {
                let i = j % 3;
                let root = g.act(&prefix, &self.r_root(i));
                prefix = g.mul(&prefix, &self.r(i));
                root
            })
            .collect()
    }
}

/// Parse a word like `"1.2.3"`, `"123"` or `"e"` into 0-based generators.
pub fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>, Error> {
    let s = s.trim();
    if s == "e" || s.is_empty() {
        return Ok(vec![]);
    }
    let parts: Vec<&str> = if s.contains('.') { s.split('.').collect() } else { s.split("").filter(|p| !p.is_empty()).collect() };
    parts
        .into_iter()
        .map(|p| match p.parse::<usize>() {
            Ok(i) if (1..=rank).contains(&i) => Ok(i - 1),
            _ => Err(Error::Parse(format!("bad generator {p:?} in word {s:?}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<usize> {
        parse_word(s, 3).unwrap()
    }

    #[test]
    fn relations() {
        let g = CoxeterGroup::new(CoxeterMatrix::two_three_infinity());
        assert_eq!(g.order_upto(&g.from_word(&w("12")), 20), Some(3));
        assert_eq!(g.order_upto(&g.from_word(&w("13")), 20), Some(2));
        assert_eq!(g.order_upto(&g.from_word(&w("23")), 50), None);
        assert_eq!(g.length(&g.from_word(&w("121"))), 3);
        assert_eq!(g.length(&g.from_word(&w("1212"))), 2);
    }

    #[test]
    fn n_tilde_size_is_length() {
        let g = CoxeterGroup::new(CoxeterMatrix::two_three_infinity());
        for word in ["2323231", "1232", "3213", "23232323"] {
            let x = g.from_word(&w(word));
            let nt = g.n_tilde(&x, 64).unwrap();
            assert_eq!(nt.len(), g.length(&x));
            assert!(nt.iter().all(|t| CoxeterGroup::is_positive(&t.root)));
            assert!(nt.iter().all(|t| g.from_word(&t.word) == g.reflection(&t.root)));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = CoxeterGroup::new(CoxeterMatrix::two_three_infinity());
        let x = g.from_word(&w("23232323"));
        assert!(matches!(g.n_tilde(&x, 4), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn positivity_dichotomy() {
        let g = CoxeterGroup::new(CoxeterMatrix::two_three_infinity());
        for r in g.positive_roots(12) {
            assert_eq!(g.inner2(&r, &r), 2);
            for s in 0..3 {
                let x = g.reflect(&g.simple_root(s), &r);
                let neg: Vec<i64> = x.iter().map(|v| -v).collect();
                assert!(CoxeterGroup::is_positive(&x) || CoxeterGroup::is_positive(&neg));
            }
        }
    }

    #[test]
    fn bonds_outside_table_rejected() {
        assert!(Bond::from_m(4).is_err());
        assert_eq!(Bond::from_m(0).unwrap(), Bond::Infinite);
    }
}
