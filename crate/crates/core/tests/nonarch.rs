mod common;

use std::collections::BTreeSet;

use common::{gp, printed_systems, terms_match};
use fewnomial::fewnomial::{gen_g_eps, verify_family, Status};
use fewnomial::nonarch::{count_roots_by_valuation_phase, lower_system_for_normal, newton_polytope_val, SparsePoly};
use fewnomial::numeric::{FieldSpec, LocalCtx, LocalField, PAdic, PrecisionPolicy, Rational, Ring, Series};
use num_bigint::BigInt;


#[test]
fn three_dimensional_example() {
    for p in [2u64, 3, 5] {
        let g = gp(3, p);
        let count = count_roots_by_valuation_phase(&g, &[1, 1, 1]).unwrap();
        assert_eq!(count.total, 4);
        assert!(count.inapplicable.is_empty() && count.collisions.is_empty());
        let vals: BTreeSet<Vec<i64>> = count.classes.iter().map(|c| c.class.valuation.clone()).collect();
        for (v, system) in printed_systems() {
            assert!(vals.contains(&v), "p = {p}: missing class {v:?}");
            let mut normal: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            normal.push(BigInt::from(1));
            let lower = lower_system_for_normal(&g, &normal).unwrap();
            for (f, want) in lower.iter().zip(&system) {
                assert!(terms_match(f, want, p), "p = {p}, v = {v:?}");
            }
            // (p^{v_1}, p^{v_2}, p^{v_3}) solves the lower system exactly
            let ctx = LocalCtx::new(p, 64).unwrap();
            let x: Vec<PAdic> = v.iter().map(|&e| PAdic::uniformizer_pow(ctx, e)).collect();
            for f in &lower {
                assert!(f.eval(&x).unwrap().valuation().is_none());
            }
        }
    }
}

#[test]
fn first_binomial_lifting() {
    let ctx = LocalCtx::new(7, 32).unwrap();
    let p = PAdic::from_integer(ctx, &BigInt::from(7));
    let f = SparsePoly::new(2, vec![(vec![1, 1], p.one_like()), (vec![0, 0], p.negate())]).unwrap();
    let l = newton_polytope_val(&f).unwrap();
    assert_eq!(l.lifting, vec![Rational::from_integer(0.into()), Rational::from_integer(1.into())]);
    let g = gp(2, 7);
    let l1 = newton_polytope_val(&g[0]).unwrap();
    for (a, want) in [([1, 1], 0), ([0, 0], 1), ([2, 0], 0)] {
        let i = l1.support.index_of(&a).unwrap();
        assert_eq!(l1.lifting[i], Rational::from_integer(want.into()));
    }
}

#[test]
fn class_totals_agree_with_elimination() {
    for p in [2u64, 3, 5] {
        for n in 2..=6 {
            let classes = count_roots_by_valuation_phase(&gp(n, p), &vec![1; n]).unwrap();
            let report = verify_family(n, FieldSpec::qp(p, 64), &p.to_string(), PrecisionPolicy::default()).unwrap();
            assert_eq!(report.status, Status::Certified);
            assert_eq!(Some(classes.total as u64), report.certified.map(|c| c as u64), "n = {n}, p = {p}");
            assert_eq!(classes.total, n + 1);
        }
    }
}

#[test]
fn series_field_classes() {
    for p in [2u64, 3] {
        let ctx = LocalCtx::new(p, 64).unwrap();
        let g = gen_g_eps(4, &Series::parse(ctx, "t").unwrap()).unwrap();
        assert_eq!(count_roots_by_valuation_phase(&g.polys, &[1; 4]).unwrap().total, 5);
    }
}

#[test]
fn monomial_scaling_keeps_classes() {
    for (i, b) in [(0usize, vec![1, -2, 0]), (2, vec![0, 3, 1]), (1, vec![-1, -1, -1])] {
        let g = gp(3, 3);
        let mut h = g.clone();
        h[i] = h[i].times_monomial(&b);
        let a = count_roots_by_valuation_phase(&g, &[1, 1, 1]).unwrap();
        let c = count_roots_by_valuation_phase(&h, &[1, 1, 1]).unwrap();
        let key = |x: &fewnomial::nonarch::ValuationPhaseCount| {
            x.classes.iter().map(|c| c.class.clone()).map(|c| (c.valuation, c.phase, c.count)).collect::<BTreeSet<_>>()
        };
        assert_eq!(key(&a), key(&c));
    }
}
