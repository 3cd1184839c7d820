use fewnomial::fewnomial::Status;
use fewnomial::numeric::{PrecisionPolicy, Rational, Ring};
use fewnomial::slp::{
    certify_no_real_roots, count_slp_roots_padic, expand, gen_hnk, gen_logistic, slp_eval, slp_trace, Slp,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn propagated_derivative_matches_expansion() {
    for n in 1..=4 {
        for prog in [gen_logistic(n).unwrap(), gen_hnk(n, 2).unwrap().h_program(n).unwrap()] {
            let (f, df) = expand(&prog).unwrap();
            assert_eq!(df, f.derivative());
        }
    }
}

#[test]
fn derivative_recurrence_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=6 {
        let fam = gen_hnk(n, 1).unwrap();
        for _ in 0..20 {
            let x = Rational::new(rng.gen_range(-40..=40).into(), rng.gen_range(1..=9).into());
            let trace = slp_trace(&fam.program, &x, true);
            let at = |r: i64| -> (Rational, Rational) {
                let (v, d) = trace[r as usize - 1].clone();
                (v, d.unwrap())
            };
            let m = n - 1;
            let c = Rational::from_integer(fam.c_value().pow(3u32.pow(m as u32 - 1)));
            let (h, dh) = at(fam.h[m - 1]);
            let (_, dnext) = at(fam.h[m]);
            let two = Rational::from_integer(2.into());
            // product rule: h_{m+1}' = (C - 2 h_m) h_m'
            assert_eq!(dnext, (&c - &two * &h) * &dh);
            let shortened = (&c - &h) * &dh;
            assert_eq!(dnext == shortened, Zero::is_zero(&(&h * &dh)));
        }
    }
}

#[test]
fn padic_counts_and_nesting() {
    for k in 1..=2usize {
        for n in 2..=4 {
            for &p in &gen_hnk(n, k).unwrap().primes {
                let r = count_slp_roots_padic(n, k, p, PrecisionPolicy::default()).unwrap();
                assert_eq!(r.status, Status::Certified, "{:?}", r.failed);
                assert_eq!(r.certified, Some((1 << n) - 2));
                assert!(r.nesting_ok && r.distinct && r.derivative_valuations_ok);
                assert_eq!(r.expected_derivative_valuation, (3i64.pow(n as u32 - 1) - 1) / 2);
            }
        }
    }
}

#[test]
fn no_real_roots_through_the_chain() {
    for k in 1..=3 {
        for n in 1..=7 {
            let c = certify_no_real_roots(n, k).unwrap();
            assert_eq!(c.status, Status::Certified, "n = {n}, k = {k}");
            assert!(c.chain.iter().all(|s| s.below_half));
            assert!(c.endpoints_simple);
        }
    }
}

#[test]
fn length_grows_slowly() {
    let a = gen_hnk(8, 3).unwrap().quotient_length;
    let b = gen_hnk(16, 3).unwrap().quotient_length;
    // each extra level costs a bounded number of instructions
    assert!(b - a <= 8 * 5);
    assert!(gen_logistic(10).unwrap().len() <= 5 * 10 + 5);
}

#[test]
fn evaluation_over_intervals() {
    use fewnomial::numeric::Interval;
    let prog = gen_logistic(3).unwrap();
    let x = Rational::new(1.into(), 3.into());
    let exact = slp_eval(&prog, &x, false).0;
    let iv = slp_eval(&prog, &Interval::point(x), false).0;
    assert!(iv.lo <= exact && exact <= iv.hi);
}

proptest! {
    #[test]
    fn text_format_round_trips(n in 1usize..6, k in 1usize..4) {
        let prog = gen_hnk(n, k).unwrap().program;
        let back: Slp = prog.to_string().parse().unwrap();
        prop_assert_eq!(&back, &prog);
        let x = Rational::from_integer(BigInt::from(3));
        prop_assert_eq!(slp_eval(&back, &x, true), slp_eval(&prog, &x, true));
    }

    #[test]
    fn pruning_preserves_every_level(n in 1usize..6, x in -50i64..50) {
        let fam = gen_hnk(n, 2).unwrap();
        let xq = Rational::from_integer(x.into());
        let trace = slp_trace(&fam.program, &xq, false);
        for m in 1..=n {
            let h = fam.h_program(m).unwrap();
            prop_assert_eq!(&slp_eval(&h, &xq, false).0, &trace[fam.h[m - 1] as usize - 1].0);
        }
        let q = slp_eval(&fam.quotient_program, &xq, false).0;
        let seed = xq.clone() * (Rational::from_integer(1.into()) - &xq);
        prop_assert_eq!(q.times(&seed), trace[fam.h[n - 1] as usize - 1].0.clone());
    }
}
