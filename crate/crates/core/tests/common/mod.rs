//! Independent oracles: graded linear algebra instead of Gröbner bases,
//! closed-form counts, and direct term-by-term expansion.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use icisb_core::polyring::{parse_poly, Rational};
use icisb_core::{Monomial, Poly, Ring};
use num_traits::{One, Zero};

pub fn p(text: &str, n: usize) -> Poly {
    parse_poly(text, Ring::new(n)).unwrap()
}

pub fn quadric(n: usize) -> Poly {
    let text: Vec<String> = (1..=n).map(|i| format!("x{i}^2")).collect();
    p(&text.join("+"), n)
}

/// All exponent vectors of integer weighted degree `d`.
pub fn monomials_of_degree(weights: &[u64], d: u64) -> Vec<Vec<u32>> {
    fn go(weights: &[u64], d: u64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = prefix.len();
        if i == weights.len() {
            if d == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut e = 0u32;
        while weights[i] * e as u64 <= d {
            prefix.push(e);
            go(weights, d - weights[i] * e as u64, prefix, out);
            prefix.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(weights, d, &mut Vec::new(), &mut out);
    out
}

/// Rank over Q by fraction-exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        for i in (r + 1)..rows.len() {
            if !rows[i][c].is_zero() {
                let factor = &rows[i][c] / &rows[r][c];
                for k in c..ncols {
                    let v = &factor * &rows[r][k];
                    rows[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

fn int_degree(e: &[u32], weights: &[u64]) -> u64 {
    e.iter().zip(weights).map(|(&a, &w)| a as u64 * w).sum()
}

/// Hilbert function of `Q[x]/I` for an ideal generated by weighted-homogeneous
/// polynomials (integer weights), as `degree -> dimension`, computed from the
/// rank of the degree-`d` slice of `I`. Returns `None` if the quotient does
/// not vanish below `max_degree`.
pub fn graded_quotient_dims(gens: &[Poly], weights: &[u64], max_degree: u64) -> Option<BTreeMap<u64, usize>> {
    let n = weights.len();
    let homogeneous: Vec<(u64, Vec<(Vec<u32>, Rational)>)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let terms: Vec<(Vec<u32>, Rational)> =
                g.terms().map(|(m, c)| (m.exponents()[..n].to_vec(), c.clone())).collect();
            let d = int_degree(&terms[0].0, weights);
            assert!(terms.iter().all(|(e, _)| int_degree(e, weights) == d), "generator not homogeneous");
            (d, terms)
        })
        .collect();
    let wmax = *weights.iter().max().unwrap();
    let mut dims = BTreeMap::new();
    let mut zero_run = 0u64;
    for d in 0..=max_degree {
        let basis = monomials_of_degree(weights, d);
        let index: HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rows = Vec::new();
        for (gd, terms) in &homogeneous {
            if *gd > d {
                continue;
            }
            for m in monomials_of_degree(weights, d - gd) {
                let mut row = vec![Rational::zero(); basis.len()];
                for (e, c) in terms {
                    let prod: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                    row[index[&prod]] += c;
                }
                rows.push(row);
            }
        }
        let dim = basis.len() - rank(rows);
        if dim > 0 {
            dims.insert(d, dim);
            zero_run = 0;
        } else if d > 0 {
            zero_run += 1;
            if zero_run >= wmax {
                return Some(dims);
            }
        }
    }
    None
}

/// Distinct quotient weights as rationals `d / scale`.
pub fn weight_set(dims: &BTreeMap<u64, usize>, scale: u64) -> Vec<Rational> {
    dims.keys()
        .map(|&d| Rational::new((d as i64).into(), (scale as i64).into()))
        .collect()
}

pub fn weight_multiset(dims: &BTreeMap<u64, usize>, scale: u64) -> BTreeMap<Rational, usize> {
    dims.iter()
        .map(|(&d, &k)| (Rational::new((d as i64).into(), (scale as i64).into()), k))
        .collect()
}

/// Weights of the monomial basis `x^k`, `0 <= k_i <= a_i - 2`, of the Milnor
/// algebra of `Σ x_i^{a_i}`, under `w_i = 1/a_i`.
pub fn brieskorn_pham_weights(a: &[u32]) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for &ai in a {
        let step = Rational::new(1.into(), (ai as i64).into());
        out = out
            .into_iter()
            .flat_map(|w| {
                let step = step.clone();
                (0..ai.saturating_sub(1)).map(move |k| &w + &step * Rational::from_integer((k as i64).into()))
            })
            .collect();
    }
    out
}

/// Determinant by the Leibniz permutation sum, independent of cofactor expansion.
pub fn leibniz_det(m: &[Vec<Poly>], ring: Ring) -> Poly {
    let k = m.len();
    let mut total = Poly::zero(ring);
    let mut perm: Vec<usize> = (0..k).collect();
    permutations(&mut perm, 0, &mut |pm| {
        let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| pm[i] > pm[j]).count();
        let mut term = Poly::one(ring);
        for (row, &col) in pm.iter().enumerate() {
            term = &term * &m[row][col];
        }
        total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
    });
    total
}

fn permutations(v: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permutations(v, i + 1, f);
        v.swap(i, j);
    }
}

/// Product of polynomials term by term, bypassing `Poly` multiplication.
pub fn naive_mul(a: &Poly, b: &Poly) -> Poly {
    let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let e: Vec<u32> = ma.exponents().iter().zip(mb.exponents()).map(|(x, y)| x + y).collect();
            *acc.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    Poly::from_terms(a.ring(), acc.into_iter().map(|(e, c)| (Monomial::new(e), c)))
}

pub fn one() -> Rational {
    Rational::one()
}

pub mod random {
    use super::*;
    use rand::Rng;

    pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
        let num = loop {
            let v: i64 = rng.gen_range(-5..=5);
            if v != 0 {
                break v;
            }
        };
        Rational::new(num.into(), rng.gen_range(1..=3i64).into())
    }

    /// Up to `max_terms` terms of total degree at most `max_deg` in `ring`.
    pub fn poly<R: Rng>(rng: &mut R, ring: Ring, max_terms: usize, max_deg: u32) -> Poly {
        let k = rng.gen_range(0..=max_terms);
        Poly::from_terms(
            ring,
            (0..k).map(|_| {
                let mut e = vec![0u32; ring.nvars()];
                let mut budget = rng.gen_range(0..=max_deg);
                while budget > 0 {
                    let i = rng.gen_range(0..ring.nvars());
                    e[i] += 1;
                    budget -= 1;
                }
                (Monomial::new(e), small_rational(rng))
            }),
        )
    }

    /// Weighted-homogeneous of integer degree `d`, at most `max_terms` terms.
    pub fn homogeneous<R: Rng>(rng: &mut R, weights: &[u64], d: u64, max_terms: usize) -> Poly {
        let ring = Ring::new(weights.len());
        let mons = monomials_of_degree(weights, d);
        let k = rng.gen_range(0..=max_terms.min(mons.len()));
        Poly::from_terms(
            ring,
            (0..k).map(|_| {
                let e = mons[rng.gen_range(0..mons.len())].clone();
                (Monomial::new(e), small_rational(rng))
            }),
        )
    }

    /// Homogeneous generators `x_i^{a_i} + (terms in x_{i+1}, ...)`, a
    /// triangular system whose only common zero is the origin, plus a few
    /// random homogeneous extras.
    pub fn zero_dimensional_ideal<R: Rng>(rng: &mut R, n: usize) -> (Vec<u64>, Vec<Poly>) {
        let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let ring = Ring::new(n);
        let mut gens = Vec::new();
        for i in 0..n {
            let a = rng.gen_range(1..=3u32);
            let d = weights[i] * a as u64;
            let mut e = vec![0u32; n];
            e[i] = a;
            let lead = Poly::monomial(ring, Monomial::new(e), Rational::one());
            let tail_weights: Vec<u64> = weights[i + 1..].to_vec();
            let mut tail = Poly::zero(ring);
            if !tail_weights.is_empty() {
                for t in monomials_of_degree(&tail_weights, d) {
                    if rng.gen_bool(0.5) {
                        let mut full = vec![0u32; i + 1];
                        full.extend(t);
                        tail = &tail + &Poly::monomial(ring, Monomial::new(full), small_rational(rng));
                    }
                }
            }
            gens.push(&lead + &tail);
        }
        for _ in 0..rng.gen_range(0..=2) {
            let d = rng.gen_range(1..=6);
            let g = homogeneous(rng, &weights, d, 3);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        (weights, gens)
    }
}
