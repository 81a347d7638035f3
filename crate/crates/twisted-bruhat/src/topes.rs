//! Hemispaces of `(Φ̃, −, cone)` and their tope poset.
//!
//! A hemispace is stored as `H_B = B ⊎ −(Φ̂ \ B)` for a biclosed `B`; the
//! negation `−H_B` is `H_{Φ̂\B}`. Two hemispaces lie in the same block when
//! their symmetric difference is finite, and the tope order based at `G` is
//! `F ≤ F′ ⟺ F Δ G ⊆ F′ Δ G`. On a block this only needs the finite set
//! `F Δ F′`: `F ≤ F′` iff `F \ F′ ⊆ G` and `F′ \ F ⊆ −G`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::affine_root::AffineRoot;
use crate::affine_weyl::{AffineElement, AffineWeyl};
use crate::biclosed::{all_p_data, BiclosedClass, BiclosedSet};
use crate::error::Error;
use crate::finite::{make_p, map_mask, CartanDatum, FinElem, RootId, RootMask, TypeLabel};
use crate::lp::{self, ConeAnswer, Q};
use crate::poset::GradedPoset;

#[derive(Clone, Debug)]
pub struct Hemispace {
    pub b: BiclosedSet,
}

impl Hemispace {
    pub fn new(b: BiclosedSet) -> Self {
        Hemispace { b }
    }

    /// `N(w) ⊎ −(Φ̂ \ N(w))`, or its negation when `plus` is false.
    pub fn from_word(g: &AffineWeyl, w: AffineElement, plus: bool) -> Self {
        let h = Hemispace::new(BiclosedSet::from_inversion(g, w));
        if plus {
            h
        } else {
            h.negate(g)
        }
    }

    pub fn contains(&self, g: &AffineWeyl, r: AffineRoot) -> bool {
        let d = &g.datum;
        if r.is_positive(d) {
            self.b.contains(g, r)
        } else {
            !self.b.contains(g, r.neg(d))
        }
    }

    pub fn negate(&self, g: &AffineWeyl) -> Hemispace {
        Hemispace::new(self.b.complement(g))
    }

    pub fn class(&self, d: &CartanDatum) -> BiclosedClass {
        self.b.classify(d)
    }

    /// Members with `|level| ≤ bound`.
    pub fn roots_upto(&self, g: &AffineWeyl, bound: i64) -> Vec<AffineRoot> {
        all_roots_upto(&g.datum, bound).into_iter().filter(|&r| self.contains(g, r)).collect()
    }

    /// Exactly one of `r`, `−r` lies in `H` for every root with `|level| ≤ bound`.
    pub fn partition_ok(&self, g: &AffineWeyl, bound: i64) -> bool {
        let d = &g.datum;
        all_roots_upto(d, bound).into_iter().all(|r| self.contains(g, r) != self.contains(g, r.neg(d)))
    }

    /// `F Δ F′` as a set of positive roots; the full difference is `±` of it.
    pub fn difference(&self, g: &AffineWeyl, other: &Hemispace) -> Result<BTreeSet<AffineRoot>, Error> {
        self.b.symmetric_difference(g, &other.b).ok_or(Error::DifferentBlocks)
    }

    pub fn same_set(&self, g: &AffineWeyl, other: &Hemispace) -> bool {
        matches!(self.difference(g, other), Ok(s) if s.is_empty())
    }
}

/// Every real affine root with `|level| ≤ bound`.
pub fn all_roots_upto(d: &CartanDatum, bound: i64) -> Vec<AffineRoot> {
    let mut out = Vec::new();
    for k in 0..=bound {
        for sign in [1, -1] {
            if k == 0 && sign == -1 {
                continue;
            }
            for b in 0..d.num_roots() {
                out.push(AffineRoot::new(b, sign * k));
            }
        }
    }
    out
}

/// Coordinates of `α + kδ` in `V ⊕ Rδ`.
pub fn root_vector(d: &CartanDatum, r: AffineRoot) -> Vec<i64> {
    let mut v: Vec<i64> = d.root(r.base).coords[..d.rank].to_vec();
    v.push(r.level);
    v
}

/// Exact cone membership for affine roots, checked by substitution before returning.
pub fn cone_member(d: &CartanDatum, generators: &[AffineRoot], target: AffineRoot) -> ConeAnswer {
    let gens: Vec<Vec<Q>> = generators.iter().map(|&r| lp::to_q(&root_vector(d, r))).collect();
    let t = lp::to_q(&root_vector(d, target));
    let ans = lp::cone_member(&gens, &t);
    assert!(lp::verify(&gens, &t, &ans), "cone certificate failed substitution");
    ans
}

#[derive(Clone, Debug)]
pub struct ConvexityViolation {
    pub generators: Vec<AffineRoot>,
    pub target: AffineRoot,
    pub coeffs: Vec<Q>,
}

#[derive(Clone, Debug)]
pub struct ConvexReport {
    pub subsets_checked: usize,
    pub violation: Option<ConvexityViolation>,
}

/// `det` and adjugate of a square integer matrix of size ≤ 3.
fn det_adj(m: &[Vec<i64>]) -> (i64, Vec<Vec<i64>>) {
    let n = m.len();
    match n {
        1 => (m[0][0], vec![vec![1]]),
        2 => (m[0][0] * m[1][1] - m[0][1] * m[1][0], vec![vec![m[1][1], -m[0][1]], vec![-m[1][0], m[0][0]]]),
        _ => {
            let mut adj = vec![vec![0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    let r: Vec<usize> = (0..3).filter(|&x| x != j).collect();
                    let c: Vec<usize> = (0..3).filter(|&x| x != i).collect();
                    let minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]];
                    adj[i][j] = if (i + j) % 2 == 0 { minor } else { -minor };
                }
            }
            let det = (0..3).map(|j| m[0][j] * adj[j][0]).sum();
            (det, adj)
        }
    }
}

/// A left inverse of linearly independent columns, restricted to a nonsingular row minor.
struct Solver {
    rows: Vec<usize>,
    det: i64,
    adj: Vec<Vec<i64>>,
}

impl Solver {
    fn new(gens: &[&Vec<i64>], dim: usize) -> Option<Solver> {
        let m = gens.len();
        let mut rows: Vec<usize> = (0..m).collect();
        loop {
            let mat: Vec<Vec<i64>> = rows.iter().map(|&r| gens.iter().map(|g| g[r]).collect()).collect();
            let (det, adj) = det_adj(&mat);
            if det != 0 {
                return Some(Solver { rows, det, adj });
            }
            // Next row subset in lexicographic order.
            let mut i = m;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if rows[i] < dim - m + i {
                    rows[i] += 1;
                    for j in i + 1..m {
                        rows[j] = rows[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Whether `t` is a nonnegative combination of the generators.
    fn in_cone(&self, gens: &[&Vec<i64>], t: &[i64]) -> bool {
        let m = gens.len();
        let c: Vec<i64> = (0..m).map(|i| (0..m).map(|j| self.adj[i][j] * t[self.rows[j]]).sum()).collect();
        if c.iter().any(|&x| x * self.det.signum() < 0) {
            return false;
        }
        (0..t.len()).all(|k| gens.iter().zip(&c).map(|(g, ci)| g[k] * ci).sum::<i64>() == self.det * t[k])
    }
}

/// Search for a root of `−H` in the cone of at most `combo_size` roots of `H`, all with `|level| ≤ level_bound`.
///
/// By Carathéodory only linearly independent subsets are tried; subsets are capped at size 3. A hit is
/// re-solved with the exact LP to produce a verified certificate.
pub fn check_convex_truncated(g: &AffineWeyl, h: &Hemispace, level_bound: i64, combo_size: usize) -> ConvexReport {
    let d = &g.datum;
    let dim = d.rank + 1;
    let roots = all_roots_upto(d, level_bound);
    let (inside, outside): (Vec<AffineRoot>, Vec<AffineRoot>) = roots.into_iter().partition(|&r| h.contains(g, r));
    let vin: Vec<Vec<i64>> = inside.iter().map(|&r| root_vector(d, r)).collect();
    let vout: Vec<Vec<i64>> = outside.iter().map(|&r| root_vector(d, r)).collect();
    let size = combo_size.min(dim).min(3);
    let mut checked = 0;
    for m in 1..=size {
        let mut idx: Vec<usize> = (0..m).collect();
        if m > inside.len() {
            break;
        }
        loop {
            let gens: Vec<&Vec<i64>> = idx.iter().map(|&i| &vin[i]).collect();
            if let Some(solver) = Solver::new(&gens, dim) {
                checked += 1;
                if let Some(t) = (0..outside.len()).find(|&t| solver.in_cone(&gens, &vout[t])) {
                    let generators: Vec<AffineRoot> = idx.iter().map(|&i| inside[i]).collect();
                    let ConeAnswer::Member { coeffs } = cone_member(d, &generators, outside[t]) else {
                        unreachable!("integer solve and LP disagree");
                    };
                    return ConvexReport {
                        subsets_checked: checked,
                        violation: Some(ConvexityViolation { generators, target: outside[t], coeffs }),
                    };
                }
            }
            let mut i = m;
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                if idx[i] < inside.len() - m + i {
                    idx[i] += 1;
                    for j in i + 1..m {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break false;
                }
            };
            if done {
                break;
            }
        }
    }
    ConvexReport { subsets_checked: checked, violation: None }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub instances: usize,
    pub failures: Vec<String>,
}

/// Sampled check of the four closure axioms for `cx(X) = cone(X) ∩ Φ̃`, truncated at `level`.
///
/// (i) a member of `cx(X)` is in the closure of the LP support; (ii) `cx(X)* = cx(X*)`;
/// (iii) `x ∈ cx(X ∪ {x*}) ⟹ x ∈ cx(X)`; (iv) `x ∈ cx(X ∪ {y*})`, `x ∉ cx(X)` ⟹ `y ∈ cx(X∖{y} ∪ {x*})`.
pub fn om_axiom_check<R: Rng>(g: &AffineWeyl, samples: usize, level: i64, rng: &mut R) -> AxiomReport {
    let d = &g.datum;
    let universe = all_roots_upto(d, level);
    let member = |xs: &[AffineRoot], t: AffineRoot| cone_member(d, xs, t).is_member();
    let neg_all = |xs: &[AffineRoot]| xs.iter().map(|r| r.neg(d)).collect::<Vec<_>>();
    let mut rep = AxiomReport::default();
    for _ in 0..samples {
        let k = rng.gen_range(1..=4);
        let xs: Vec<AffineRoot> = universe.choose_multiple(rng, k).copied().collect();
        let x = *universe.choose(rng).unwrap();
        let y = *universe.choose(rng).unwrap();
        rep.instances += 1;
        let fail = |rep: &mut AxiomReport, ax: &str| {
            rep.failures.push(format!("axiom {ax}: X={:?} x={} y={}", xs.iter().map(|r| r.name(d)).collect::<Vec<_>>(), x.name(d), y.name(d)))
        };
        match cone_member(d, &xs, x) {
            ConeAnswer::Member { coeffs } => {
                let support: Vec<AffineRoot> = xs.iter().zip(&coeffs).filter(|(_, c)| !num_traits::Zero::is_zero(*c)).map(|(r, _)| *r).collect();
                if !member(&support, x) {
                    fail(&mut rep, "i");
                }
            }
            ConeAnswer::Separated { .. } => {}
        }
        if member(&xs, x) != member(&neg_all(&xs), x.neg(d)) {
            fail(&mut rep, "ii");
        }
        let mut with_neg_x = xs.clone();
        with_neg_x.push(x.neg(d));
        if member(&with_neg_x, x) && !member(&xs, x) {
            fail(&mut rep, "iii");
        }
        let mut with_neg_y = xs.clone();
        with_neg_y.push(y.neg(d));
        if member(&with_neg_y, x) && !member(&xs, x) {
            let mut rest: Vec<AffineRoot> = xs.iter().copied().filter(|&r| r != y).collect();
            rest.push(x.neg(d));
            if !member(&rest, y) {
                fail(&mut rep, "iv");
            }
        }
    }
    rep
}

/// `F ≤ F′` in the tope order based at `base`.
pub fn tope_leq(g: &AffineWeyl, f: &Hemispace, f2: &Hemispace, base: &Hemispace) -> Result<bool, Error> {
    let d = &g.datum;
    let diff = f.difference(g, f2)?;
    Ok(diff.iter().all(|&p| {
        let x = if f.contains(g, p) { p } else { p.neg(d) };
        base.contains(g, x)
    }))
}

/// Rank of `F` relative to a reference hemispace `h` of its block: each flipped pair counts `+1` if `F`'s member lies outside `base`, `−1` otherwise.
pub fn relative_grade(g: &AffineWeyl, f: &Hemispace, h: &Hemispace, base: &Hemispace) -> Result<i64, Error> {
    let d = &g.datum;
    Ok(f.difference(g, h)?
        .iter()
        .map(|&p| {
            let x = if f.contains(g, p) { p } else { p.neg(d) };
            if base.contains(g, x) {
                -1
            } else {
                1
            }
        })
        .sum())
}

/// The reflection subgroup `W′` attached to `P(Ψ⁺, Δ₁, Δ₂)^∧`: generated by the
/// affine roots over `Φ_{Δ₁ ∪ Δ₂}`, with its canonical simple reflections.
#[derive(Clone, Debug)]
pub struct BlockGroup {
    /// Finite roots of `Φ₁ = Φ_{Δ₁∪Δ₂}`.
    pub phi1: RootMask,
    pub simple_roots: Vec<AffineRoot>,
    pub generators: Vec<AffineElement>,
}

impl BlockGroup {
    pub fn new(g: &AffineWeyl, psi: FinElem, delta1: u8, delta2: u8) -> BlockGroup {
        let d = &g.datum;
        let phi1 = map_mask(d, psi, d.parabolic_mask(delta1 | delta2));
        let pos: Vec<RootId> = (0..d.num_roots()).filter(|&r| phi1 & (1 << r) != 0 && d.is_positive(r)).collect();
        let sum_id = |a: RootId, b: RootId| {
            let mut c = d.root(a).coords;
            for i in 0..d.rank {
                c[i] += d.root(b).coords[i];
            }
            d.root_id(&crate::finite::FiniteRoot { coords: c })
        };
        let simple: Vec<RootId> = pos
            .iter()
            .copied()
            .filter(|&r| !pos.iter().any(|&a| pos.iter().any(|&b| sum_id(a, b) == Some(r))))
            .collect();
        // Connected components of the simple roots.
        let mut comp: Vec<usize> = (0..simple.len()).collect();
        for i in 0..simple.len() {
            for j in 0..i {
                if d.inner(d.root(simple[i]), d.root(simple[j])) != num_rational::Rational64::from_integer(0) {
                    let (a, b) = (comp[i], comp[j]);
                    for c in comp.iter_mut() {
                        if *c == a {
                            *c = b;
                        }
                    }
                }
            }
        }
        let mut simple_roots: Vec<AffineRoot> = simple.iter().map(|&r| AffineRoot::new(r, 0)).collect();
        let comps: BTreeSet<usize> = comp.iter().copied().collect();
        for c in comps {
            let members: Vec<RootId> = simple.iter().zip(&comp).filter(|(_, &k)| k == c).map(|(&r, _)| r).collect();
            // Roots of this component: closure of its simple roots under its reflections.
            let mut orbit: BTreeSet<RootId> = members.iter().copied().collect();
            loop {
                let mut grown = orbit.clone();
                for &s in &members {
                    for &r in &orbit {
                        let img = d.reflect(d.root(s), d.root(r)).unwrap();
                        grown.insert(d.root_id(&img).unwrap());
                    }
                }
                if grown.len() == orbit.len() {
                    break;
                }
                orbit = grown;
            }
            let theta = orbit.iter().copied().filter(|&r| d.is_positive(r)).max_by_key(|&r| d.root(r).height()).unwrap();
            simple_roots.push(AffineRoot::new(d.neg[theta], 1));
        }
        let generators = simple_roots.iter().map(|&r| g.reflection(r)).collect();
        BlockGroup { phi1, simple_roots, generators }
    }

    pub fn contains_root(&self, r: AffineRoot) -> bool {
        self.phi1 & (1 << r.base) != 0
    }

    /// Elements of word length at most `radius` in the canonical generators, with one word each.
    pub fn ball(&self, g: &AffineWeyl, radius: usize) -> Vec<(AffineElement, Vec<usize>)> {
        let mut seen: HashSet<AffineElement> = HashSet::new();
        let mut out = vec![(g.identity(), vec![])];
        seen.insert(g.identity());
        let mut frontier = 0;
        for _ in 0..radius {
            let end = out.len();
            for i in frontier..end {
                for (s, gen) in self.generators.iter().enumerate() {
                    let w = g.mul(&out[i].0, gen);
                    if seen.insert(w) {
                        let mut word = out[i].1.clone();
                        word.push(s);
                        out.push((w, word));
                    }
                }
            }
            frontier = end;
        }
        out
    }
}

/// A block of the tope poset around `center`, parametrized by `W′`.
#[derive(Clone, Debug)]
pub struct TopeBlock {
    pub group: BlockGroup,
    /// `(w, w·center)` for `w ∈ W′`.
    pub members: Vec<(AffineElement, Hemispace)>,
    pub poset: GradedPoset<AffineElement>,
}

fn translate(g: &AffineWeyl, h: &Hemispace, w: &AffineElement) -> Hemispace {
    let b = &h.b;
    Hemispace::new(BiclosedSet::new(g, g.mul(&b.twist, w), b.psi, b.delta1, b.delta2).unwrap())
}

/// All `w·center` for `w ∈ W′` with `l_{W′}(w) ≤ radius`, ordered by the tope order at `base`.
///
/// Here `w` acts in the frame of the untwisted set, so `w·center = H_{uw·P^∧}`.
pub fn tope_block(g: &AffineWeyl, center: &Hemispace, base: &Hemispace, radius: usize) -> Result<TopeBlock, Error> {
    let b = &center.b;
    let group = BlockGroup::new(g, b.psi, b.delta1, b.delta2);
    let ball = group.ball(g, radius);
    let members: Vec<(AffineElement, Hemispace)> = ball.iter().map(|(w, _)| (*w, translate(g, center, w))).collect();
    let mut poset = GradedPoset::new();
    for ((w, f), (_, word)) in members.iter().zip(&ball) {
        let label = if word.is_empty() { "e".to_string() } else { word.iter().map(|s| (s + 1).to_string()).collect() };
        poset.add_node(*w, label, relative_grade(g, f, center, base)?);
    }
    let pos: HashMap<AffineElement, usize> = members.iter().enumerate().map(|(i, (w, _))| (*w, i)).collect();
    for (i, (w, f)) in members.iter().enumerate() {
        for (s, gen) in group.generators.iter().enumerate() {
            let ws = g.mul(w, gen);
            if let Some(&j) = pos.get(&ws) {
                if tope_leq(g, f, &members[j].1, base)? {
                    let name = g.act(&g.mul(&b.twist, w), group.simple_roots[s]).name(&g.datum);
                    poset.add_edge(i, j, name, true);
                }
            }
        }
    }
    Ok(TopeBlock { group, members, poset })
}

/// The twisted weak order of `W′` at `G ∩ Φ̃₁`, computed from `N(w) ∩ Φ̃₁` directly.
///
/// Writing the center as `u·H₀`, one has `w·H₀ Δ H₀ = ±(N(w) ∩ Φ̃₁)` for `w ∈ W′`;
/// this is the comparison the block is claimed to be isomorphic to.
pub fn block_order_oracle(g: &AffineWeyl, center: &Hemispace, group: &BlockGroup, w1: &AffineElement, w2: &AffineElement, base: &Hemispace) -> bool {
    let d = &g.datum;
    let b = &center.b;
    let h0 = Hemispace::new(BiclosedSet::new(g, g.identity(), b.psi, b.delta1, b.delta2).unwrap());
    let n = |w: &AffineElement| -> BTreeSet<AffineRoot> { g.inversion_set(w).into_iter().filter(|&r| group.contains_root(r)).collect() };
    let (n1, n2) = (n(w1), n(w2));
    let in_f = |y: AffineRoot, nw: &BTreeSet<AffineRoot>| h0.contains(g, y) != nw.contains(&y.positive_part(d));
    n1.symmetric_difference(&n2).all(|&p| {
        let y = if in_f(p, &n1) { p } else { p.neg(d) };
        base.contains(g, g.act(&b.twist, y))
    })
}

#[derive(Clone, Debug, Default)]
pub struct LatticeReport {
    pub size: usize,
    pub height: i64,
    pub missing_joins: Vec<(usize, usize)>,
    pub missing_meets: Vec<(usize, usize)>,
}

impl LatticeReport {
    pub fn is_lattice(&self) -> bool {
        self.missing_joins.is_empty() && self.missing_meets.is_empty()
    }
}

/// Enumerate `[h1, h2]` in the tope order at `base` and check every pair has a meet and a join.
pub fn interval_lattice_check(g: &AffineWeyl, h1: &Hemispace, h2: &Hemispace, base: &Hemispace, max_size: usize) -> Result<LatticeReport, Error> {
    if !tope_leq(g, h1, h2, base)? {
        return Err(Error::NotComparable);
    }
    let group = BlockGroup::new(g, h1.b.psi, h1.b.delta1, h1.b.delta2);
    let mut elems: Vec<Hemispace> = vec![h1.clone()];
    let mut keys: HashSet<BTreeSet<AffineRoot>> = HashSet::new();
    keys.insert(BTreeSet::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let f = elems[i].clone();
        for gen in &group.generators {
            let nb = translate(g, &f, gen);
            if !tope_leq(g, &f, &nb, base)? || !tope_leq(g, &nb, h2, base)? {
                continue;
            }
            if keys.insert(nb.difference(g, h1)?) {
                if elems.len() >= max_size {
                    return Err(Error::BudgetExceeded(format!("interval larger than {max_size}")));
                }
                elems.push(nb);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    let n = elems.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = tope_leq(g, &elems[i], &elems[j], base)?;
        }
    }
    let mut height = 0;
    for f in &elems {
        height = height.max(relative_grade(g, f, h1, base)?);
    }
    let mut rep = LatticeReport { size: n, height, ..Default::default() };
    for i in 0..n {
        for j in i + 1..n {
            let ub: Vec<usize> = (0..n).filter(|&z| leq[i][z] && leq[j][z]).collect();
            if !ub.iter().any(|&z| ub.iter().all(|&u| leq[z][u])) {
                rep.missing_joins.push((i, j));
            }
            let lb: Vec<usize> = (0..n).filter(|&z| leq[z][i] && leq[z][j]).collect();
            if !lb.iter().any(|&z| lb.iter().all(|&l| leq[l][z])) {
                rep.missing_meets.push((i, j));
            }
        }
    }
    Ok(rep)
}

/// Walk `steps` random upward covers from `center`-block element `start`.
pub fn random_upper<R: Rng>(g: &AffineWeyl, start: &Hemispace, base: &Hemispace, steps: usize, rng: &mut R) -> Result<Hemispace, Error> {
    let group = BlockGroup::new(g, start.b.psi, start.b.delta1, start.b.delta2);
    let mut f = start.clone();
    for _ in 0..steps {
        let ups: Vec<Hemispace> = group
            .generators
            .iter()
            .map(|s| translate(g, &f, s))
            .filter(|nb| tope_leq(g, &f, nb, base).unwrap_or(false))
            .collect();
        match ups.choose(rng) {
            Some(nb) => f = nb.clone(),
            None => break,
        }
    }
    Ok(f)
}

/// Labelled positive hemispaces of the published figure as `(label, word of w with B = N(w), printed set, corrected set)`.
pub const FIGURE_H: [(&str, &str, &str, &str); 19] = [
    ("H1", "e", "{}", "{}"),
    ("H2", "1", "{a}", "{a}"),
    ("H3", "2", "{b}", "{b}"),
    ("H4", "3", "{-a-b+d}", "{-a-b+d}"),
    ("H5", "12", "{a,a+b}", "{a,a+b}"),
    ("H6", "21", "{b,a+b}", "{b,a+b}"),
    ("H7", "13", "{a,-b+d}", "{a,-b+d}"),
    ("H8", "31", "{-a-b+d,-b+d}", "{-a-b+d,-b+d}"),
    ("H9", "23", "{b,-a+d}", "{b,-a+d}"),
    ("H10", "32", "{-a-b+d,-a+d}", "{-a-b+d,-a+d}"),
    ("H11", "121", "{a,a+b,b}", "{a,a+b,b}"),
    ("H12", "123", "{a,a+b,a+d}", "{a,a+b,a+d}"),
    ("H13", "213", "{b,a+b,b+d}", "{b,a+b,b+d}"),
    ("H14", "132", "{a,-b+d,a+d}", "{a,-b+d,a+d}"),
    ("H15", "131", "{a,-b+d,-a-d+d}", "{a,-b+d,-a-b+d}"),
    ("H16", "312", "{-a-d+2d,-b+d,-a-d+d}", "{-a-b+2d,-b+d,-a-b+d}"),
    ("H17", "231", "{b,-a+d,b+d}", "{b,-a+d,b+d}"),
    ("H18", "232", "{b,-a+d,-b-d+d}", "{b,-a+d,-a-b+d}"),
    ("H19", "321", "{-b-d+2d,-a+d,-b-d+d}", "{-a-b+2d,-a+d,-a-b+d}"),
];

/// `T_i = I^∧ ⊎ −(rest)` for the six two-root sets `I`, and the root `γ` whose chains `T_i` omits.
pub const FIGURE_T: [(&str, [&str; 2], &str); 6] = [
    ("T1", ["a", "a+b"], "b"),
    ("T2", ["b", "a+b"], "a"),
    ("T3", ["b", "-a"], "a+b"),
    ("T4", ["-a-b", "-a"], "b"),
    ("T5", ["-a-b", "-b"], "a"),
    ("T6", ["a", "-b"], "a+b"),
];

/// Positive systems `ψΦ⁺` for `U_i = (ψΦ⁺)^∧`.
pub const FIGURE_U: [(&str, [&str; 3]); 6] = [
    ("U1", ["a", "b", "a+b"]),
    ("U2", ["-a", "b", "a+b"]),
    ("U3", ["-a", "b", "-a-b"]),
    ("U4", ["-a", "-b", "-a-b"]),
    ("U5", ["a", "-b", "-a-b"]),
    ("U6", ["a", "-b", "a+b"]),
];

/// Drawn edges `(lower, upper)` among the positive `H` labels.
pub const FIGURE_H_EDGES: [(&str, &str); 21] = [
    ("H1", "H2"), ("H1", "H3"), ("H1", "H4"),
    ("H2", "H5"), ("H2", "H7"), ("H3", "H6"), ("H3", "H9"), ("H4", "H8"), ("H4", "H10"),
    ("H5", "H11"), ("H5", "H12"), ("H6", "H11"), ("H6", "H13"), ("H7", "H14"), ("H7", "H15"),
    ("H8", "H15"), ("H8", "H16"), ("H9", "H17"), ("H9", "H18"), ("H10", "H18"), ("H10", "H19"),
];

/// Every drawn edge: the `H` edges, `T_i < T_i1, T_i2`, `T_i1 < T_i3`, `T_i2 < T_i4`, and the mirrored negatives.
pub fn figure_edges() -> Vec<(String, String)> {
    let mut pos: Vec<(String, String)> = FIGURE_H_EDGES.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    for i in 1..=6 {
        for (a, b) in [("", "1"), ("", "2"), ("1", "3"), ("2", "4")] {
            pos.push((format!("T{i}{a}"), format!("T{i}{b}")));
        }
    }
    let mut out: Vec<(String, String)> = pos.iter().map(|(a, b)| (format!("-{b}"), format!("-{a}"))).collect();
    out.extend(pos);
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct FigureTope {
    pub label: String,
    pub hemispace: Hemispace,
    pub grade: i64,
}

#[derive(Clone, Debug)]
pub struct TopeFigure {
    pub g: AffineWeyl,
    pub items: Vec<FigureTope>,
    /// Covers among the listed hemispaces, computed in the tope order at `H1 = −Φ̂`.
    pub poset: GradedPoset<String>,
}

fn root_mask(d: &CartanDatum, names: &[&str]) -> RootMask {
    names.iter().fold(0, |m, s| m | (1 << d.parse_root(s).unwrap()))
}

/// `I^∧` for a finite biclosed `I = P(Ψ⁺, Δ₁, ∅)`, with untwisted data.
pub fn hat_of(g: &AffineWeyl, mask: RootMask) -> Option<BiclosedSet> {
    let d = &g.datum;
    all_p_data(d)
        .into_iter()
        .find(|&(psi, d1, d2)| make_p(d, psi, d1, d2).map(|p| p.roots == mask).unwrap_or(false))
        .map(|(psi, d1, d2)| BiclosedSet::new(g, g.identity(), psi, d1, d2).unwrap())
}

/// Parse a printed set such as `{a,-b+d}`.
pub fn parse_root_set(d: &CartanDatum, s: &str) -> Result<BTreeSet<AffineRoot>, Error> {
    let body = s.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(|| Error::Parse(format!("expected {{...}}, got '{s}'")))?;
    body.split(',').filter(|t| !t.trim().is_empty()).map(|t| AffineRoot::parse(d, t)).collect()
}

/// The labelled hemispaces of the `Ã₂` figure and their covers.
pub fn figure_topes() -> TopeFigure {
    let g = AffineWeyl::new(TypeLabel::A2);
    let d = &g.datum;
    let mut items: Vec<FigureTope> = Vec::new();
    for (label, word, _, _) in FIGURE_H {
        let w = g.parse_element(word).unwrap();
        let h = Hemispace::from_word(&g, w, true);
        items.push(FigureTope { label: label.into(), grade: g.length(&w) as i64, hemispace: h });
    }
    for (label, pair, gamma) in FIGURE_T {
        let t = Hemispace::new(hat_of(&g, root_mask(d, &pair)).expect("two-root set is a P-set"));
        let gm = d.parse_root(gamma).unwrap();
        let s0 = g.reflection(AffineRoot::new(gm, 0));
        let s1 = g.reflection(AffineRoot::new(d.neg[gm], 1));
        let steps: [(&str, Vec<&AffineElement>); 4] = [("1", vec![&s0]), ("2", vec![&s1]), ("3", vec![&s0, &s1]), ("4", vec![&s1, &s0])];
        items.push(FigureTope { label: label.into(), hemispace: t.clone(), grade: 10 });
        for (suffix, word) in steps {
            let w = word.iter().fold(g.identity(), |acc, s| g.mul(&acc, s));
            items.push(FigureTope { label: format!("{label}{suffix}"), hemispace: translate(&g, &t, &w), grade: 10 + word.len() as i64 });
        }
    }
    for (label, roots) in FIGURE_U {
        let m = root_mask(d, &roots);
        let psi = (0..d.weyl.order()).find(|&p| d.positive_system(p) == m).expect("positive system");
        items.push(FigureTope { label: label.into(), hemispace: Hemispace::new(BiclosedSet::positive_hat(&g, psi)), grade: 20 });
    }
    let positives: Vec<FigureTope> = items.iter().filter(|t| !t.label.starts_with('U')).cloned().collect();
    for t in positives {
        items.push(FigureTope { label: format!("-{}", t.label), hemispace: t.hemispace.negate(&g), grade: 40 - t.grade });
    }
    let base = items[0].hemispace.clone();
    let mut poset = GradedPoset::new();
    for t in &items {
        poset.add_node(t.label.clone(), t.label.clone(), t.grade);
    }
    for (i, a) in items.iter().enumerate() {
        for (j, b) in items.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Ok(diff) = a.hemispace.difference(&g, &b.hemispace) {
                if diff.len() == 1 && tope_leq(&g, &a.hemispace, &b.hemispace, &base).unwrap() {
                    let r = diff.iter().next().unwrap().name(d);
                    poset.add_edge(i, j, r, true);
                }
            }
        }
    }
    TopeFigure { g, items, poset }
}

impl TopeFigure {
    pub fn find(&self, label: &str) -> Option<&FigureTope> {
        self.items.iter().find(|t| t.label == label)
    }

    /// Computed covers as `(lower, upper)` label pairs.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self.poset.edges.iter().map(|e| (self.poset.nodes[e.lower].label.clone(), self.poset.nodes[e.upper].label.clone())).collect();
        out.sort();
        out
    }
}
