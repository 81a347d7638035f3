//! Exact cone membership: phase-one simplex over `BigRational` with Bland's rule.
//!
//! `t ∈ cone(g₁, …, g_m)` is decided by minimising the artificial slack of
//! `Σ λ_j g_j + a = t`, `λ, a ≥ 0`. A zero optimum gives the coefficients; a
//! positive optimum gives a Farkas functional `f` with `f·g_j ≥ 0` and `f·t < 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeAnswer {
    /// `target = Σ coeffs[j]·gens[j]`, all coefficients nonnegative.
    Member { coeffs: Vec<Q> },
    /// `f·g ≥ 0` for every generator and `f·target < 0`.
    Separated { functional: Vec<Q> },
}

impl ConeAnswer {
    pub fn is_member(&self) -> bool {
        matches!(self, ConeAnswer::Member { .. })
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Check a certificate by substitution.
pub fn verify(gens: &[Vec<Q>], target: &[Q], ans: &ConeAnswer) -> bool {
    match ans {
        ConeAnswer::Member { coeffs } => {
            if coeffs.len() != gens.len() || coeffs.iter().any(|c| c.is_negative()) {
                return false;
            }
            (0..target.len()).all(|i| {
                let s = gens.iter().zip(coeffs).fold(Q::zero(), |acc, (g, c)| acc + &g[i] * c);
                s == target[i]
            })
        }
        ConeAnswer::Separated { functional } => {
            gens.iter().all(|g| !dot(functional, g).is_negative()) && dot(functional, target).is_negative()
        }
    }
}

/// Decide `target ∈ cone(gens)` exactly.
pub fn cone_member(gens: &[Vec<Q>], target: &[Q]) -> ConeAnswer {
    let rows = target.len();
    let m = gens.len();
    // Flip rows so the right-hand side is nonnegative.
    let sign: Vec<Q> = target.iter().map(|t| if t.is_negative() { q(-1) } else { q(1) }).collect();
    let cols = m + rows;
    // Tableau rows: [A | I | b].
    let mut tab: Vec<Vec<Q>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Q> = gens.iter().map(|g| &g[i] * &sign[i]).collect();
            r.extend((0..rows).map(|k| if k == i { Q::one() } else { Q::zero() }));
            r.push(&target[i] * &sign[i]);
            r
        })
        .collect();
    let mut basis: Vec<usize> = (m..m + rows).collect();
    let cost: Vec<Q> = (0..cols).map(|j| if j >= m { Q::one() } else { Q::zero() }).collect();
    loop {
        // Reduced costs c_j − c_B·B⁻¹A_j.
        let reduced: Vec<Q> = (0..cols)
            .map(|j| {
                let z = (0..rows).fold(Q::zero(), |acc, i| acc + &cost[basis[i]] * &tab[i][j]);
                &cost[j] - z
            })
            .collect();
        let Some(enter) = (0..cols).find(|&j| reduced[j].is_negative()) else {
            let value = (0..rows).fold(Q::zero(), |acc, i| acc + &cost[basis[i]] * &tab[i][cols]);
            if value.is_zero() {
                let mut coeffs = vec![Q::zero(); m];
                for (i, &b) in basis.iter().enumerate() {
                    if b < m {
                        coeffs[b] = tab[i][cols].clone();
                    }
                }
                return ConeAnswer::Member { coeffs };
            }
            // Dual of phase one: y_i = 1 − reduced cost of artificial i, in the flipped rows.
            let functional = (0..rows).map(|i| -(Q::one() - &reduced[m + i]) * &sign[i]).collect();
            return ConeAnswer::Separated { functional };
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..rows {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][cols] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("phase one is bounded below by zero");
        let piv = tab[r][enter].clone();
        for x in tab[r].iter_mut() {
            *x = &*x / &piv;
        }
        let pivot_row = tab[r].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
        basis[r] = enter;
    }
}

/// [`cone_member`] on integer vectors.
pub fn cone_member_int(gens: &[Vec<i64>], target: &[i64]) -> ConeAnswer {
    let g: Vec<Vec<Q>> = gens.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
    let t: Vec<Q> = target.iter().map(|&x| q(x)).collect();
    cone_member(&g, &t)
}

pub fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}
