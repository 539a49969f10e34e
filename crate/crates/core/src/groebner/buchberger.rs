use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};

use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Poly, Rational, Ring};

/// Terms sorted in descending order under some monomial order.
type Terms = Vec<(Monomial, Rational)>;

fn sorted_terms(p: &Poly, order: &MonomialOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = Rational::one() / lc;
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

/// `a - c * m * b`, merging two descending term lists.
fn sub_scaled(a: &[(Monomial, Rational)], c: &Rational, m: &Monomial, b: &[(Monomial, Rational)], order: &MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.iter().peekable();
    let mut ib = b.iter().map(|(bm, bc)| (bm.mul(m), bc * c)).peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(ia.next().unwrap().clone()),
            (None, Some(_)) => {
                let (bm, bc) = ib.next().unwrap();
                out.push((bm, -bc));
            }
            (Some((am, _)), Some((bm, _))) => match order.cmp(am, bm) {
                std::cmp::Ordering::Greater => out.push(ia.next().unwrap().clone()),
                std::cmp::Ordering::Less => {
                    let (bm, bc) = ib.next().unwrap();
                    out.push((bm, -bc));
                }
                std::cmp::Ordering::Equal => {
                    let (am, ac) = ia.next().unwrap();
                    let (_, bc) = ib.next().unwrap();
                    let v = ac - bc;
                    if !v.is_zero() {
                        out.push((am.clone(), v));
                    }
                }
            },
        }
    }
    out
}

/// Fully reduce `p` by monic `basis` elements; returns the remainder.
fn reduce(mut p: Terms, basis: &[Terms], order: &MonomialOrder) -> Terms {
    let mut rem = Vec::new();
    let mut i = 0;
    while i < p.len() {
        let (lm, lc) = (&p[i].0, &p[i].1);
        let divisor = basis.iter().find(|g| g[0].0.divides(lm));
        match divisor {
            Some(g) => {
                let q = lm.div(&g[0].0).expect("divisible");
                let c = lc.clone();
                p = sub_scaled(&p[i..], &c, &q, g, order);
                i = 0;
            }
            None => {
                rem.push(p[i].clone());
                i += 1;
            }
        }
    }
    rem
}

fn s_polynomial(f: &Terms, g: &Terms, order: &MonomialOrder) -> Terms {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = lcm.div(&f[0].0).unwrap();
    let mg = lcm.div(&g[0].0).unwrap();
    let scaled_f = sub_scaled(&[], &-Rational::one(), &mf, f, order);
    sub_scaled(&scaled_f, &Rational::one(), &mg, g, order)
}

fn to_poly(ring: Ring, t: &Terms) -> Poly {
    Poly::from_terms(ring, t.iter().cloned())
}

/// Ideal of `Q[x_1..x_n]` given by nonzero generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Poly>,
}

impl Ideal {
    /// Zero generators are dropped and exact duplicates removed; fails if nothing is left.
    pub fn new(ring: Ring, generators: Vec<Poly>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        for g in generators {
            ring.check(&g.ring())?;
            if !g.is_zero() && seen.insert(g.clone()) {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        Ok(Ideal {
            ring,
            generators: gens,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }
}

/// Budgets for [`buchberger_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerConfig {
    /// Largest total degree of an S-pair lcm before giving up.
    pub max_degree: u64,
    /// Largest number of S-pairs taken from the queue.
    pub max_pairs: usize,
}

impl Default for BuchbergerConfig {
    fn default() -> Self {
        BuchbergerConfig {
            max_degree: 60,
            max_pairs: 1_000_000,
        }
    }
}

/// Reduced Gröbner basis: monic elements sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Poly>,
    sorted: Vec<Terms>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|t| t[0].0.clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.sorted.iter().any(|t| t[0].0.is_one())
    }

    pub fn contains(&self, p: &Poly) -> bool {
        normal_form(p, self).is_zero()
    }

    /// True iff every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit_ideal() {
            return true;
        }
        let mut bounded = vec![false; self.ring.nvars()];
        for t in &self.sorted {
            if let Some(i) = t[0].0.pure_power_var() {
                bounded[i] = true;
            }
        }
        bounded.into_iter().all(|b| b)
    }

    /// Every S-polynomial reduces to zero (checked without pair criteria).
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for i in 0..self.sorted.len() {
            for j in (i + 1)..self.sorted.len() {
                let s = s_polynomial(&self.sorted[i], &self.sorted[j], &self.order);
                if !reduce(s, &self.sorted, &self.order).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// No term of any element is divisible by another element's leading monomial,
    /// and all leading coefficients are one.
    pub fn is_reduced(&self) -> bool {
        self.sorted.iter().enumerate().all(|(i, t)| {
            t[0].1.is_one()
                && t.iter().all(|(m, _)| {
                    self.sorted
                        .iter()
                        .enumerate()
                        .all(|(j, g)| j == i || !g[0].0.divides(m))
                })
        })
    }
}

/// Remainder of multivariate division of `p` by `gb`.
pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    assert_eq!(p.ring(), gb.ring, "polynomial ring mismatch");
    to_poly(gb.ring, &reduce(sorted_terms(p, &gb.order), &gb.sorted, &gb.order))
}

pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(ideal, order, BuchbergerConfig::default())
}

/// Buchberger's algorithm with the normal selection strategy and the product and
/// chain criteria. Output is the reduced basis.
pub fn buchberger_with(ideal: &Ideal, order: &MonomialOrder, config: BuchbergerConfig) -> Result<GroebnerBasis> {
    let ring = ideal.ring;
    if order.nvars() != ring.nvars() {
        return Err(Error::ContextMismatch {
            expected: format!("order on {} variables", ring.nvars()),
            found: format!("order on {} variables", order.nvars()),
        });
    }

    let mut basis: Vec<Terms> = Vec::new();
    for g in &ideal.generators {
        let mut t = reduce(sorted_terms(g, order), &basis, order);
        if !t.is_empty() {
            make_monic(&mut t);
            basis.push(t);
        }
    }

    // queue keyed by (weighted degree of lcm, i, j)
    let mut queue: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |basis: &[Terms], k: usize, queue: &mut BTreeSet<(u64, usize, usize)>, pending: &mut HashSet<(usize, usize)>| {
        for i in 0..k {
            let lcm = basis[i][0].0.lcm(&basis[k][0].0);
            queue.insert((order.degree(&lcm), i, k));
            pending.insert((i, k));
        }
    };
    for k in 1..basis.len() {
        push_pairs(&basis, k, &mut queue, &mut pending);
    }

    let mut processed = 0usize;
    while let Some((_, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        processed += 1;
        if processed > config.max_pairs {
            return Err(Error::ResourceLimit(format!(
                "more than {} S-pairs",
                config.max_pairs
            )));
        }
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if li.is_coprime(lj) {
            continue;
        }
        let lcm = li.lcm(lj);
        if lcm.total_degree() > config.max_degree {
            return Err(Error::ResourceLimit(format!(
                "S-pair degree {} exceeds bound {}",
                lcm.total_degree(),
                config.max_degree
            )));
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let mut r = reduce(s, &basis, order);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        basis.push(r);
        push_pairs(&basis, basis.len() - 1, &mut queue, &mut pending);
    }

    Ok(reduce_basis(ring, order, basis))
}

fn reduce_basis(ring: Ring, order: &MonomialOrder, mut basis: Vec<Terms>) -> GroebnerBasis {
    basis.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut minimal: Vec<Terms> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h[0].0.divides(&g[0].0)) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Terms> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, t)| t.clone())
            .collect();
        let mut t = reduce(minimal[k].clone(), &others, order);
        make_monic(&mut t);
        reduced.push(t);
    }
    GroebnerBasis {
        ring,
        order: order.clone(),
        elements: reduced.iter().map(|t| to_poly(ring, t)).collect(),
        sorted: reduced,
    }
}
