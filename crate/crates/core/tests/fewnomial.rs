use fewnomial::fewnomial::{
    certify_block_system, eliminate_r_n, gen_block_system, gen_g_eps, lemma_tri_certificate, poonen_compare, sweep_eps,
    verify_family, Status,
};
use fewnomial::numeric::sturm::sturm_count;
use fewnomial::numeric::{FieldSpec, PrecisionPolicy, Rational};
use fewnomial::polyhedra::{mixed_volume_of_supports, Support};
use num_bigint::BigInt;
use num_traits::Zero;

fn quarter() -> Rational {
    Rational::new(1.into(), 4.into())
}

#[test]
fn example_system_has_five_positive_roots() {
    let g = gen_g_eps(4, &quarter()).unwrap();
    let r = eliminate_r_n(&g).unwrap();
    assert_eq!(r.degree(), Some(5));
    assert_eq!(sturm_count(&r, Some(&Rational::zero()), None).unwrap(), 5);
    let report = verify_family(4, FieldSpec::real(), "1/4", PrecisionPolicy::default()).unwrap();
    assert_eq!(report.status, Status::Certified);
    assert_eq!(report.certified, Some(5));
    for root in &report.roots {
        assert!(root.all_phase_one && root.residual_ok);
    }
}

#[test]
fn real_family_small_n() {
    for n in 2..=12 {
        let r = verify_family(n, FieldSpec::real(), "1/4", PrecisionPolicy::default()).unwrap();
        assert_eq!(r.certified, Some(n + 1), "n = {n}");
        assert!(r.certified.unwrap() <= r.target);
    }
}

#[test]
fn mixed_volume_matches_the_count() {
    for n in 2..=6 {
        let g = gen_g_eps(n, &quarter()).unwrap();
        let supports: Vec<Support> = g.polys.iter().map(|f| f.support().unwrap()).collect();
        assert_eq!(mixed_volume_of_supports(&supports).unwrap(), BigInt::from(n + 1));
        assert_eq!(g.union_support().len(), n + 2);
    }
}

#[test]
fn local_families() {
    for p in [2u64, 3, 5] {
        for n in [2usize, 5] {
            let r = verify_family(n, FieldSpec::qp(p, 64), &p.to_string(), PrecisionPolicy::default()).unwrap();
            assert_eq!(r.certified, Some(n + 1));
            let r = verify_family(n, FieldSpec::fpt(p, 64), "t", PrecisionPolicy::default()).unwrap();
            assert_eq!(r.certified, Some(n + 1));
            for root in &r.roots {
                assert!(root.all_phase_one && root.residual_ok);
            }
        }
    }
}

#[test]
fn sweep_finds_a_small_order() {
    let s = sweep_eps(3, FieldSpec::real(), 4, PrecisionPolicy::default()).unwrap();
    assert!(s.smallest_certified_ord.is_some_and(|j| j <= 2));
}

#[test]
fn block_counts_multiply() {
    for (n, k) in [(4usize, 3usize), (5, 3), (6, 3), (6, 4)] {
        let (sys, layout) = gen_block_system(n, k, &quarter()).unwrap();
        assert!(sys.union_support().len() <= n + k);
        let base = (layout.ell + 1) as u64;
        for p in [2u64, 3] {
            let r = certify_block_system(n, k, FieldSpec::qp(p, 64), &p.to_string(), PrecisionPolicy::default()).unwrap();
            assert_eq!(r.certified, Some(base.pow(k as u32 - 1)), "(n, k, p) = ({n}, {k}, {p})");
            assert_eq!(r.certified, Some(r.target));
        }
    }
}

#[test]
fn lemma_certificates() {
    for n in 2..=8 {
        let c = lemma_tri_certificate(n).unwrap();
        assert_eq!(c.status, Status::Certified);
        assert_eq!(c.mixed_facets, n + 1);
        assert_eq!(c.mixed_volume, (n + 1).to_string());
    }
    assert_eq!(lemma_tri_certificate(3).unwrap().inner_products[0][0], [1, 2, 1]);
}

#[test]
fn poonen_variants() {
    for (p, k) in [(2u64, 2usize), (2, 3), (3, 2)] {
        let c = poonen_compare(p, k).unwrap();
        let target = (p.pow(k as u32) - 1) / (p - 1);
        assert_eq!(c.digit_shifted.target, target);
        assert_eq!(c.digit_shifted.brute_force_phase1 as u64, target);
        assert!(c.printed.brute_force_phase1 as u64 <= target);
    }
}
