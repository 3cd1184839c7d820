mod common;

use fewnomial::numeric::local::{count_phase1_roots_univariate, hensel_lift_root, newton_polygon_slopes};
use fewnomial::numeric::sturm::sturm_count;
use fewnomial::numeric::{
    from_roots, qpoly, valuation_and_phase, FieldElement, LocalCtx,
    LocalField, PAdic, PrecisionPolicy, Rational, Ring, Series, UniPoly,
};
use fewnomial::numeric::phase::Phase;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn padic(p: u64, v: i64) -> PAdic {
    PAdic::from_integer(LocalCtx::new(p, 32).unwrap(), &BigInt::from(v))
}

#[test]
fn phase1_counts_match_residue_scan() {
    for p in [2u64, 3, 5] {
        for (f, expected) in common::oracle_instances(p, 50, 0x5eed) {
            let poly = qpoly(&f);
            let got = count_phase1_roots_univariate(&poly, p, false, PrecisionPolicy::default()).unwrap();
            assert_eq!(got, expected, "p = {p}, f = {f:?}");
        }
    }
}

#[test]
fn sturm_counts_distinct_linear_factors() {
    for d in 1..=12i64 {
        let roots: Vec<Rational> = (0..d).map(|i| Rational::new((3 * i - 7).into(), 2.into())).collect();
        let f = from_roots(&roots);
        assert_eq!(sturm_count(&f, None, None).unwrap(), d as usize);
        // squaring keeps the distinct count
        assert_eq!(sturm_count(&f.times(&f), None, None).unwrap(), d as usize);
    }
}

#[test]
fn q17_has_roots_where_q_has_none() {
    let f = qpoly(&[-2, 0, 1]).times(&qpoly(&[-17, 0, 1])).times(&qpoly(&[-34, 0, 1]));
    let roots = fewnomial::numeric::local::local_roots(
        &f.map(|c| PAdic::from_rational(LocalCtx::new(17, 64).unwrap(), c)),
        fewnomial::numeric::local::PhaseFilter::Any,
    )
    .unwrap();
    assert!(!roots.is_empty());
    let rational_roots = (-34..=34).filter(|&x| f.eval(&q(x)) == q(0)).count();
    assert_eq!(rational_roots, 0);
}

#[test]
fn slopes_of_the_eliminant_for_three_variables() {
    // u-values of G_p, n = 3, are squares of the first-coordinate valuations 1, 0, -1, -2
    let p = 3;
    let ctx = LocalCtx::new(p, 64).unwrap();
    let g = fewnomial::fewnomial::gen_g_eps(3, &PAdic::from_integer(ctx, &BigInt::from(p))).unwrap();
    let r = fewnomial::fewnomial::eliminate_r_n(&g).unwrap();
    let mut vals: Vec<i64> = Vec::new();
    use num_traits::ToPrimitive;
    for s in newton_polygon_slopes(&r) {
        for _ in 0..s.length {
            vals.push((-&s.slope).to_integer().to_i64().unwrap());
        }
    }
    vals.sort();
    assert_eq!(vals, vec![-4, -2, 0, 2]);
}

#[test]
fn phase_of_series_elements() {
    let ctx = LocalCtx::new(5, 16).unwrap();
    let x = Series::parse(ctx, "t^2*(3+t)").unwrap();
    let vp = valuation_and_phase(&FieldElement::Series(x)).unwrap();
    assert_eq!(vp.phase, Some(Phase::Residue(3)));
}

proptest! {
    #[test]
    fn rationals_are_exact(a in -10_000i64..10_000, b in 1i64..10_000) {
        prop_assume!(a != 0);
        let x = Rational::new(a.into(), b.into());
        prop_assert!((&x * x.recip()).is_one());
    }

    #[test]
    fn valuation_is_a_valuation(p in prop::sample::select(vec![2u64, 3, 5]), a in -5000i64..5000, b in -5000i64..5000) {
        prop_assume!(a != 0 && b != 0);
        let (x, y) = (padic(p, a), padic(p, b));
        let (va, vb) = (x.valuation().unwrap(), y.valuation().unwrap());
        prop_assert_eq!(x.times(&y).valuation(), Some(va + vb));
        if a + b != 0 {
            let vs = x.plus(&y).valuation().unwrap();
            prop_assert!(vs >= va.min(vb));
            if va != vb {
                prop_assert_eq!(vs, va.min(vb));
            }
        }
    }

    #[test]
    fn phase_is_multiplicative(p in prop::sample::select(vec![2u64, 3, 5, 7]), a in -5000i64..5000, b in -5000i64..5000) {
        prop_assume!(a != 0 && b != 0);
        let (x, y) = (padic(p, a), padic(p, b));
        let r = (x.residue().unwrap() * y.residue().unwrap()) % p;
        prop_assert_eq!(x.times(&y).residue(), Some(r));
    }

    #[test]
    fn hensel_reaches_the_target(p in prop::sample::select(vec![3u64, 5, 7, 11]), r0 in 1i64..10, k in -20i64..20, target in 5i64..60) {
        prop_assume!(r0 % p as i64 != 0);
        // x^2 - (r0^2 + p k) has a root near r0
        let c = r0 * r0 + p as i64 * k;
        prop_assume!(c != 0);
        let ctx = LocalCtx::new(p, 128).unwrap();
        let f: UniPoly<PAdic> = qpoly(&[-c, 0, 1]).map(|v| PAdic::from_rational(ctx, v));
        let lifted = hensel_lift_root(&f, &PAdic::from_integer(ctx, &BigInt::from(r0)), target).unwrap();
        let fv = f.eval(&lifted.root);
        prop_assert!(fv.valuation().map_or(fv.abs_precision() >= target, |v| v >= target));
    }
}
