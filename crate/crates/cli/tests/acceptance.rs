//! Acceptance criteria, one pass/fail line each. Exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::random;
use common::*;
use icisb_core::bernstein::{bprime_wh, bprime_wh_detailed, divides, full_from_reduced, FactoredBPoly, Provenance};
use icisb_core::decide::{check_generation_chain, decide_ci, decide_hypersurface, ChainOutcome, Conclusion, HypothesisStatus};
use icisb_core::groebner::{buchberger, normal_form, quotient_basis, Ideal, MonomialOrder, OrderKind};
use icisb_core::polyring::{parse_poly, parse_rational, Rational};
use icisb_core::singularity::{jacobian_minors, normalize_weights};
use icisb_core::weylcheck::{
    annihilating_field, verify_bernstein_certificate, verify_membership_certificate, DiffOperator, Localization,
    MembershipOptions,
};
use icisb_core::{rat, Error, Monomial, Morphism, Poly, Ring, WeightSystem};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ring_s(n: usize) -> Ring {
    Ring::with_s(n)
}

fn ps(text: &str, n: usize) -> Poly {
    parse_poly(text, ring_s(n)).unwrap()
}

fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn quadric_family() -> Check {
    for n in 2..=8 {
        let f = quadric(n);
        let m = Morphism::hypersurface(f.clone()).map_err(|e| e.to_string())?;
        let nw = normalize_weights(&m, &WeightSystem::standard(n)).map_err(|e| e.to_string())?;
        let full = full_from_reduced(&bprime_wh(&m, &nw).map_err(|e| e.to_string())?);
        let expected = FactoredBPoly::new([rat(1, 1), rat(n as i64, 2)], Provenance::ClosedFormulaWithSPlusOne);
        ensure!(full == expected, "n={n}: b = {full}, expected {expected}");
        let v = decide_hypersurface(&f, &WeightSystem::standard(n));
        let want = if n % 2 == 1 { Conclusion::LEqualsR } else { Conclusion::LNotEqualsR };
        ensure!(v.conclusion == want, "n={n}: verdict {:?}", v.conclusion);
    }
    Ok(())
}

fn quadric_with_linear_forms() -> Check {
    let h = quadric(4);
    let m = Morphism::new(4, vec![h.clone()], p("x1", 4)).unwrap();
    let b = bprime_wh(&m, &normalize_weights(&m, &WeightSystem::standard(4)).unwrap()).map_err(|e| e.to_string())?;
    ensure!(b.offset_list() == vec![rat(2, 1)], "b' = {b}, expected (s+2)");

    let swapped = Morphism::new(4, vec![p("x1", 4)], h.clone()).unwrap();
    let b = bprime_wh(&swapped, &normalize_weights(&swapped, &WeightSystem::standard(4)).unwrap())
        .map_err(|e| e.to_string())?;
    ensure!(b.offset_list() == vec![rat(3, 2)], "swapped b' = {b}, expected (s+3/2)");

    let m5 = Morphism::new(5, vec![p("x1^2+x2^2+x3^2+x4^2", 5)], p("x5", 5)).unwrap();
    let parts: Vec<(DiffOperator, Poly)> =
        (0..4).map(|i| (DiffOperator::partial(5, i), Poly::var(Ring::new(5), i))).collect();
    let ok = verify_membership_certificate(&ps("2", 5), &parts, &m5, &MembershipOptions::default())
        .map_err(|e| e.to_string())?;
    ensure!(ok, "2 δ_h x5^s = Σ ∂_i x_i δ_h x5^s does not verify");

    let v = decide_ci(&m, &WeightSystem::standard(4), false);
    ensure!(
        v.conclusion == Conclusion::Inconclusive && v.hypothesis == HypothesisStatus::Failed,
        "verdict {:?}/{:?}",
        v.conclusion,
        v.hypothesis
    );
    let bh = &v.evidence[0].b;
    ensure!(bh.offset_list() == vec![rat(1, 1), rat(2, 1)], "b_h = {bh}, expected (s+1)(s+2)");
    let last = &v.evidence.last().unwrap().b;
    ensure!(last.offset_list() == vec![rat(2, 1)], "evidence b' = {last}");
    Ok(())
}

fn laplacian(n: usize) -> DiffOperator {
    DiffOperator::from_terms(
        n,
        (0..n).map(|i| {
            let mut d = vec![0; n];
            d[i] = 2;
            (Poly::one(Ring::new(n)), d)
        }),
    )
    .unwrap()
}

fn euler_field(n: usize, from: usize) -> DiffOperator {
    let mut op = DiffOperator::zero(n);
    for i in from..n {
        let x = DiffOperator::multiplication(&Poly::var(Ring::new(n), i)).unwrap();
        op = op.checked_add(&DiffOperator::partial(n, i).compose(&x).unwrap()).unwrap();
    }
    op
}

fn weyl_fixtures() -> Check {
    for n in 2..=6 {
        let m = Morphism::hypersurface(quadric(n)).unwrap();
        let b = &ps("2*s+2", n) * &ps(&format!("2*s+{n}"), n);
        let ok = verify_bernstein_certificate(&b, &laplacian(n), &m, None).map_err(|e| e.to_string())?;
        ensure!(ok, "Laplacian identity fails at n={n}");
    }

    for (n, l) in [(4usize, 2u32), (4, 3), (6, 3)] {
        let m = Morphism::new(n, vec![quadric(n)], p("x1", n)).unwrap();
        let loc = Localization::from_morphism(&m);
        let delta = loc.delta_with(vec![l]);
        let got = loc.apply(&euler_field(n, 0), &delta).map_err(|e| e.to_string())?;
        let c = n as i64 - 2 * l as i64;
        let factor = &ps("s", n) + &Poly::from_int(ring_s(n), c);
        let want = loc.times(&factor, &delta).unwrap();
        ensure!(loc.equal(&got, &want).unwrap(), "(s+n-2l) identity fails at n={n}, l={l}");
    }

    let (n, l) = (4usize, 3i64);
    let g = quadric(n);
    let m = Morphism::new(n, vec![g.clone()], p("x1", n)).unwrap();
    for j in 1..l {
        let c = 2 * (j - l);
        let inner = DiffOperator::multiplication(&(&g.pow(j as u32 - 1) * &p("x1^2", n)).scale(&rat(c, 1)))
            .unwrap()
            .checked_add(&euler_field(n, 1).compose(&DiffOperator::multiplication(&g.pow(j as u32)).unwrap()).unwrap())
            .unwrap();
        for i in 1..n {
            let op = DiffOperator::partial(n, i).compose(&inner).unwrap();
            let b = (&Poly::var(Ring::new(n), i) * &g.pow(j as u32 - 1)).scale(&rat(c * (n as i64 + c - 1), 1));
            let options = MembershipOptions {
                delta: Some(vec![l as u32]),
                allow_arbitrary_generators: true,
            };
            let ok = verify_membership_certificate(&b, &[(op, Poly::one(Ring::new(n)))], &m, &options)
                .map_err(|e| e.to_string())?;
            ensure!(ok, "recursion fails at j={j}, i={}", i + 1);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let ring = Ring::new(3);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let g = random::poly(rng, ring, 3, 3);
        if !g.is_zero() && g.constant_term().is_zero() {
            return g;
        }
    };
    for trial in 0..20 {
        let h = draw(&mut rng);
        let f = draw(&mut rng);
        let m = Morphism::new(3, vec![h.clone()], f).unwrap();
        let ann = Localization::without_power(3, vec![h.clone()]).unwrap();
        for (k, minor) in jacobian_minors(&m, true).unwrap() {
            let field = annihilating_field(3, std::slice::from_ref(&h), &k).unwrap();
            let b = &minor.to_ring(ring_s(3)).unwrap() * &ps("s+1", 3);
            let ok = verify_bernstein_certificate(&b, &field, &m, None).map_err(|e| e.to_string())?;
            ensure!(ok, "shift identity fails for trial {trial}, columns {k:?}");
            let out = ann.apply(&field, &ann.delta()).unwrap();
            ensure!(ann.equal(&out, &ann.zero()).unwrap(), "field does not annihilate δ_h, trial {trial}");
        }
    }
    Ok(())
}

fn generation_chain() -> Check {
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("../../core/tests/golden/pair_chain.json")).unwrap();
    let frozen = |key: &str| -> Vec<Rational> {
        golden[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| parse_rational(v.as_str().unwrap()).unwrap())
            .collect()
    };
    let h1 = p("x1^2+x2^3+x3^4", 3);
    let h2 = p("x1^2-x2^3+2*x3^4", 3);
    let w = WeightSystem::from_ints(&[6, 4, 3]).unwrap();

    let milnor = graded_quotient_dims(&[h1.partial(0), h1.partial(1), h1.partial(2)], &[6, 4, 3], 100)
        .ok_or("Milnor algebra not finite")?;
    let dim: usize = milnor.values().sum();
    ensure!(dim == 6 && dim == brieskorn_pham_weights(&[2, 3, 4]).len(), "Milnor dimension {dim}");
    let m1 = Morphism::hypersurface(h1.clone()).unwrap();
    let c = bprime_wh_detailed(&m1, &normalize_weights(&m1, &w).unwrap(), OrderKind::WeightedGrevlex)
        .map_err(|e| e.to_string())?;
    ensure!(c.basis.dim() == 6, "pipeline Milnor dimension {}", c.basis.dim());

    let report = check_generation_chain(&[h1, h2], &w);
    ensure!(report.outcome == ChainOutcome::Established, "chain {:?}", report.outcome);
    ensure!(report.stages.len() == 2, "{} stages", report.stages.len());
    ensure!(report.stages[0].b.offset_list() == frozen("b_h1"), "b_h1 = {}", report.stages[0].b);
    ensure!(
        report.stages[1].b.offset_list() == frozen("bprime_h2_given_h1"),
        "stage 2 = {}",
        report.stages[1].b
    );
    for s in &report.stages {
        ensure!(
            s.integral_roots.iter().all(|r| *r >= (-1).into()),
            "{} has an integral root below -1",
            s.name
        );
    }
    Ok(())
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);

    let ring = Ring::with_s(3);
    for t in 0..500 {
        let a = random::poly(&mut rng, ring, 5, 4);
        let b = random::poly(&mut rng, ring, 5, 4);
        let c = random::poly(&mut rng, ring, 5, 4);
        ensure!(&a + &b == &b + &a, "(a) commutativity of + at triple {t}");
        ensure!(&(&a + &b) + &c == &a + &(&b + &c), "(a) associativity of + at triple {t}");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "(a) associativity of * at triple {t}");
        ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "(a) distributivity at triple {t}");
        ensure!(&a * &b == naive_mul(&a, &b), "(a) product disagrees with expansion at triple {t}");
        for i in 0..4 {
            ensure!(
                (&a * &b).partial(i) == &(&a.partial(i) * &b) + &(&a * &b.partial(i)),
                "(a) Leibniz at triple {t}"
            );
        }
    }

    for t in 0..50 {
        let n = rng.gen_range(1..=3);
        let (weights, gens) = random::zero_dimensional_ideal(&mut rng, n);
        let ws = WeightSystem::from_ints(&weights.iter().map(|&w| w as i64).collect::<Vec<_>>()).unwrap();
        let mut multisets = Vec::new();
        for kind in [OrderKind::WeightedGrevlex, OrderKind::WeightedLex] {
            let order = MonomialOrder::from_weights(kind, &ws);
            let gb = buchberger(&Ideal::new(Ring::new(n), gens.clone()).unwrap(), &order).map_err(|e| e.to_string())?;
            ensure!(gb.satisfies_buchberger_criterion(), "(b) criterion fails on ideal {t}");
            ensure!(gens.iter().all(|g| normal_form(g, &gb).is_zero()), "(b) generator not reduced to 0, ideal {t}");
            multisets.push(quotient_basis(&gb, &ws).map_err(|e| e.to_string())?.weight_multiplicities());
        }
        ensure!(multisets[0] == multisets[1], "(b) weight multisets differ between orders, ideal {t}");
        let dims = graded_quotient_dims(&gens, &weights, 200).ok_or("(b) oracle did not terminate")?;
        ensure!(multisets[0] == weight_multiset(&dims, 1), "(b) disagrees with graded-rank oracle, ideal {t}");
    }

    let s_plus_one = FactoredBPoly::new([rat(1, 1)], Provenance::ClosedFormula);
    let mut hypersurfaces = 0;
    while hypersurfaces < 50 {
        let n = rng.gen_range(1..=3usize);
        let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=5)).collect();
        let l = exps.iter().fold(1u64, |acc, &a| num_integer::lcm(acc, a as u64));
        let weights: Vec<u64> = exps.iter().map(|&a| l / a as u64).collect();
        let mut f = Poly::zero(Ring::new(n));
        for (i, &a) in exps.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = a;
            f = &f + &Poly::monomial(Ring::new(n), Monomial::new(e), random::small_rational(&mut rng));
        }
        f = &f + &random::homogeneous(&mut rng, &weights, l, 2);
        let Ok(m) = Morphism::hypersurface(f) else { continue };
        let ws = WeightSystem::from_ints(&weights.iter().map(|&w| w as i64).collect::<Vec<_>>()).unwrap();
        let Ok(nw) = normalize_weights(&m, &ws) else { continue };
        let b = match bprime_wh(&m, &nw) {
            Ok(b) => b,
            Err(Error::NotIsolated(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        hypersurfaces += 1;
        let upper = rat(n as i64, 1);
        ensure!(
            b.offsets().keys().all(|a| a.is_positive() && *a < upper),
            "(c) offsets of {b} outside (0, {n})"
        );
        let full = full_from_reduced(&b);
        ensure!(
            divides(&b, &full) && divides(&full, &s_plus_one.times(&b)),
            "(e) sandwich fails for {b}"
        );
    }

    for t in 0..50 {
        let n = rng.gen_range(2..=4usize);
        let p_count = rng.gen_range(1..=2usize.min(n - 1));
        let ring = Ring::new(n);
        let draw = |rng: &mut ChaCha8Rng| loop {
            let g = random::poly(rng, ring, 3, 3);
            if !g.is_zero() && g.constant_term().is_zero() {
                return g;
            }
        };
        let h: Vec<Poly> = (0..p_count).map(|_| draw(&mut rng)).collect();
        let f = draw(&mut rng);
        let m = Morphism::new(n, h.clone(), f.clone()).unwrap();
        for (k, minor) in jacobian_minors(&m, true).unwrap() {
            let field = annihilating_field(n, &h, &k).unwrap();
            let mut applied = Poly::zero(ring_s(n));
            for (d, c) in field.terms() {
                let i = d.iter().position(|&e| e == 1).unwrap();
                applied = &applied + &(c * &f.partial(i).to_ring(ring_s(n)).unwrap());
            }
            ensure!(
                applied == minor.to_ring(ring_s(n)).unwrap(),
                "(d) cofactor expansion mismatch, morphism {t}, columns {k:?}"
            );
        }
    }
    Ok(())
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_icisb"))
        .args(args)
        .current_dir(repo_root())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn failure_paths() -> Check {
    let f = p("x1^2*x2", 2);
    let m = Morphism::hypersurface(f).unwrap();
    let nw = normalize_weights(&m, &WeightSystem::new(vec![rat(1, 3), rat(1, 3)]).unwrap()).unwrap();
    let e = bprime_wh(&m, &nw).unwrap_err();
    ensure!(matches!(e, Error::NotIsolated(_)), "x1^2*x2 gave {e:?}");

    let m = Morphism::hypersurface(p("x1^2+x2^3", 2)).unwrap();
    let e = normalize_weights(&m, &WeightSystem::standard(2)).unwrap_err();
    ensure!(matches!(e, Error::NotHomogeneous { .. }), "inhomogeneous weights gave {e:?}");

    let e = Morphism::new(2, vec![p("x1", 2), p("x2", 2)], p("x1*x2", 2)).unwrap_err();
    ensure!(matches!(e, Error::BadArity { .. }), "p+1 > n gave {e:?}");

    for (args, what) in [
        (vec!["bprime", "--f", "x1^2*x2"], "isolated complete intersection"),
        (vec!["bprime", "--f", "x1^2*x2", "--weights", "1/3,1/3"], "isolated complete intersection"),
        (vec!["bprime", "--f", "x1^2+x2^3", "--weights", "1,1"], "not weighted-homogeneous"),
        (vec!["bprime", "--h", "x1", "--h", "x2", "--f", "x1*x2"], "arity"),
        (vec!["decide", "--f", "x1^2*x2"], "isolated complete intersection"),
    ] {
        let (code, stdout, stderr) = cli(&args);
        ensure!(code == 1, "{args:?}: exit {code}, stderr {stderr}");
        ensure!(stdout.is_empty(), "{args:?}: unexpected output");
        ensure!(stderr.contains(what), "{args:?}: stderr `{}` lacks `{what}`", stderr.trim());
    }

    let (code, _, _) = cli(&["decide", "--h", "x1^2+x2^2+x3^2+x4^2", "--f", "x1"]);
    ensure!(code == 2, "inconclusive verdict exit {code}");
    let (code, stdout, _) = cli(&["verify", "--certificate", "fixtures/certificates/quadric_laplacian.json", "--format", "text"]);
    ensure!(code == 0 && stdout == "verified: true\n", "certificate: exit {code}, {stdout}");
    let (code, stdout, _) = cli(&["bs", "--f", "x1^2+x2^2+x3^2", "--format", "text"]);
    ensure!(
        code == 0 && stdout.starts_with("b(s) = (s+1)(s+3/2)\n") && stdout.contains("conclusion: L_equals_R"),
        "bs: exit {code}, {stdout}"
    );
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 6] = [
        ("1 quadric family", quadric_family, Duration::from_secs(1)),
        ("2 quadric with linear forms", quadric_with_linear_forms, Duration::from_secs(1)),
        ("3 differential-operator fixtures", weyl_fixtures, Duration::from_secs(10)),
        ("4 generation chain on the pair", generation_chain, Duration::from_secs(60)),
        ("5 property suites", property_suites, Duration::from_secs(60)),
        ("6 failure paths", failure_paths, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(()) => println!("PASS criterion {name} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
