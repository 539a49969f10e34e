//! Benchmark workloads over fixed inputs.

use icisb_core::bernstein::bprime_wh;
use icisb_core::groebner::{buchberger, GroebnerBasis, Ideal, MonomialOrder, OrderKind};
use icisb_core::polyring::parse_poly;
use icisb_core::singularity::{jacobian_ideal, normalize_weights};
use icisb_core::weylcheck::{DiffOperator, Localization, SectionExpr};
use icisb_core::{FactoredBPoly, Morphism, Poly, Ring, WeightSystem};

fn poly(text: &str, n: usize) -> Poly {
    parse_poly(text, Ring::new(n)).expect("workload polynomial parses")
}

/// An ideal with the weighted order it is homogeneous for.
pub struct WeightedIdeal {
    pub ideal: Ideal,
    pub order: MonomialOrder,
}

/// Jacobian ideal of `x1^3 + x2^3 + x3^3 + t x1 x2 x3`.
pub fn cubic_milnor_ideal(t: i64) -> WeightedIdeal {
    let f = poly(&format!("x1^3 + x2^3 + x3^3 + {t}*x1*x2*x3"), 3);
    let gens = (0..3).map(|i| f.partial(i)).collect();
    WeightedIdeal {
        ideal: Ideal::new(Ring::new(3), gens).expect("generators share a ring"),
        order: MonomialOrder::new(OrderKind::WeightedGrevlex, vec![1, 1, 1]),
    }
}

/// `(f, h) + J_{h,f}` for the surface pair of [`pair_morphism`].
pub fn pair_quotient_ideal() -> WeightedIdeal {
    let (m, _) = pair_morphism();
    let mut gens = jacobian_ideal(&m, true).expect("nondegenerate").generators().to_vec();
    gens.extend([m.f().clone(), m.h()[0].clone()]);
    WeightedIdeal {
        ideal: Ideal::new(Ring::new(3), gens).expect("generators share a ring"),
        order: MonomialOrder::new(OrderKind::WeightedGrevlex, vec![6, 4, 3]),
    }
}

pub fn groebner_basis(w: &WeightedIdeal) -> GroebnerBasis {
    buchberger(&w.ideal, &w.order).expect("zero-dimensional ideal")
}

/// Two weighted-homogeneous surfaces in three variables cutting an
/// isolated curve singularity.
pub fn pair_morphism() -> (Morphism, WeightSystem) {
    let m = Morphism::new(3, vec![poly("x1^2 + x2^3 + x3^4", 3)], poly("x1^2 - x2^3 + 2*x3^4", 3))
        .expect("valid morphism");
    (m, WeightSystem::from_ints(&[6, 4, 3]).expect("positive weights"))
}

pub fn bprime(m: &Morphism, w: &WeightSystem) -> FactoredBPoly {
    bprime_wh(m, &normalize_weights(m, w).expect("homogeneous")).expect("isolated")
}

/// Laplacian acting on `delta f^s` for the quadric in `n` variables.
pub struct LaplacianAction {
    pub loc: Localization,
    pub op: DiffOperator,
    pub section: SectionExpr,
}

pub fn laplacian_action(n: usize) -> LaplacianAction {
    let f: Vec<String> = (1..=n).map(|i| format!("x{i}^2")).collect();
    let m = Morphism::hypersurface(poly(&f.join(" + "), n)).expect("valid hypersurface");
    let loc = Localization::from_morphism(&m);
    let op = DiffOperator::from_terms(
        n,
        (0..n).map(|i| {
            let mut d = vec![0; n];
            d[i] = 2;
            (Poly::one(Ring::new(n)), d)
        }),
    )
    .expect("operator terms share a ring");
    let section = loc.delta();
    LaplacianAction { loc, op, section }
}

pub fn apply(w: &LaplacianAction) -> SectionExpr {
    w.loc.apply(&w.op, &w.section).expect("operator fits the ring")
}
