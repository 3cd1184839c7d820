//! Acceptance criteria, one test each. Every test writes a single
//! `criterion NN PASS|FAIL` line to stderr (bypassing output capture) and
//! then asserts the verdict.

mod common;

use std::collections::BTreeSet;
use std::fmt::Display;
use std::io::Write;
use std::time::{Duration, Instant};

use common::{g_quarter, gp, printed_systems, quarter, terms_match};
use fewnomial::fewnomial::lemma::expected_normal;
use fewnomial::fewnomial::{
    certify_block_system, eliminate_r_n, gen_block_system, gen_g_eps, lemma_tri_certificate, poonen_compare,
    verify_family, Status,
};
use fewnomial::nonarch::{count_roots_by_valuation_phase, lower_system_for_normal};
use fewnomial::numeric::local::count_phase1_roots_univariate;
use fewnomial::numeric::sturm::sturm_count;
use fewnomial::numeric::{qpoly, FieldSpec, LocalCtx, LocalField, PAdic, PrecisionPolicy, Rational};
use fewnomial::polyhedra::{
    coherent_triangulation, induced_subdivision, mixed_cells, mixed_volume, mixed_volume_of_supports,
    mixed_volume_polarization_oracle, LiftedSupport, Support,
};
use fewnomial::slp::{certify_no_real_roots, count_slp_roots_padic, gen_hnk, logistic_report};
use fewnomial::viro::sturmfels_positive_count;
use fewnomial::Error;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, title: &str, ok: bool, detail: impl Display) {
    let line = format!("criterion {id:02} {} {title}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert!(ok, "{}", line.trim_end());
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

#[test]
fn criterion_01_triangle_lemma() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=12 {
        let c = lemma_tri_certificate(n).unwrap();
        let mixed: Vec<_> = c.facets.iter().filter(|f| f.j.is_some()).collect();
        let normals_ok = mixed.iter().all(|f| {
            let want: Vec<String> = expected_normal(n, f.j.unwrap()).iter().map(|x| x.to_string()).collect();
            f.normal == want
        });
        let js: BTreeSet<usize> = mixed.iter().filter_map(|f| f.j).collect();
        let ok = c.status == Status::Certified
            && c.mixed_facets == n + 1
            && mixed.len() == n + 1
            && js == (0..=n).collect()
            && mixed.iter().all(|f| f.volume == "1")
            && normals_ok
            && c.mixed_volume == (n + 1).to_string();
        if !ok {
            failures.push(format!("n = {n}: {:?}", c.failed));
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(120);
    verdict(
        1,
        "triangle lemma n = 2..12",
        ok,
        format!("n+1 unit mixed facets with normals v_j and mixed volume n+1 in {}; {failures:?}", secs(elapsed)),
    );
}

#[test]
fn criterion_02_planar_example() {
    let lifted = vec![
        LiftedSupport::from_ints(2, &[&[0, 0], &[2, 0], &[1, 1]], &[1, 0, 0]).unwrap(),
        LiftedSupport::from_ints(2, &[&[0, 0], &[2, 0], &[0, 1]], &[0, 1, 0]).unwrap(),
    ];
    let sub = induced_subdivision(&lifted).unwrap();
    let cells = mixed_cells(&sub).unwrap();
    let pts = |l: &LiftedSupport, e: (usize, usize)| {
        let mut v = vec![l.support.points()[e.0].clone(), l.support.points()[e.1].clone()];
        v.sort();
        v
    };
    let got: BTreeSet<_> = cells.iter().map(|c| (pts(&lifted[0], c.edges[0]), pts(&lifted[1], c.edges[1]))).collect();
    let e10 = vec![vec![0, 0], vec![1, 1]];
    let e11 = vec![vec![1, 1], vec![2, 0]];
    let e20 = vec![vec![0, 0], vec![0, 1]];
    let e21 = vec![vec![0, 1], vec![2, 0]];
    let want: BTreeSet<_> = [(e10, e20.clone()), (e11.clone(), e20), (e11, e21)].into_iter().collect();
    let mv = mixed_volume(&lifted, false).unwrap().value;
    let ok = got == want && mv == BigInt::from(3);
    verdict(2, "planar example cells", ok, format!("{} mixed cells, mixed volume {mv}", cells.len()));
}

#[test]
fn criterion_03_three_dimensional_example() {
    let mut notes = Vec::new();
    let mut ok = true;
    for p in [2u64, 3, 5] {
        let g = gp(3, p);
        let count = count_roots_by_valuation_phase(&g, &[1, 1, 1]).unwrap();
        let lifted: Vec<LiftedSupport> =
            g.iter().map(|f| fewnomial::nonarch::newton_polytope_val(f).unwrap()).collect();
        let cells = mixed_cells(&induced_subdivision(&lifted).unwrap()).unwrap();
        let vals: BTreeSet<Vec<i64>> =
            count.classes.iter().filter(|c| c.class.count == 1).map(|c| c.class.valuation.clone()).collect();
        let ctx = LocalCtx::new(p, 64).unwrap();
        let mut systems_ok = true;
        for (v, printed) in printed_systems() {
            let mut normal: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            normal.push(BigInt::from(1));
            let lower = lower_system_for_normal(&g, &normal).unwrap();
            let x: Vec<PAdic> = v.iter().map(|&e| PAdic::uniformizer_pow(ctx, e)).collect();
            systems_ok &= vals.contains(&v)
                && lower.iter().zip(&printed).all(|(f, w)| terms_match(f, w, p))
                && lower.iter().all(|f| f.eval(&x).unwrap().valuation().is_none());
        }
        let here = cells.len() == 4 && systems_ok && count.total == 4 && count.inapplicable.is_empty();
        notes.push(format!("p={p}: {} cells, {} phase-1 classes", cells.len(), count.total));
        ok &= here;
    }
    verdict(3, "three-dimensional example", ok, notes.join("; "));
}

#[test]
fn criterion_04_real_family() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 2..=30 {
        let r = verify_family(n, FieldSpec::real(), "1/4", PrecisionPolicy::default()).unwrap();
        if r.status != Status::Certified || r.certified != Some(n + 1) {
            bad.push((n, r.certified));
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(600);
    verdict(
        4,
        "real family eps = 1/4, n = 2..30",
        ok,
        format!("n+1 positive roots certified in {}; failures {bad:?}", secs(elapsed)),
    );
}

#[test]
#[ignore = "extended run to n = 100"]
fn criterion_04_real_family_extended() {
    let start = Instant::now();
    let bad: Vec<usize> = (31..=100)
        .filter(|&n| {
            verify_family(n, FieldSpec::real(), "1/4", PrecisionPolicy::default()).unwrap().certified != Some(n + 1)
        })
        .collect();
    verdict(4, "real family eps = 1/4, n = 31..100", bad.is_empty(), format!("{} elapsed; failures {bad:?}", secs(start.elapsed())));
}

#[test]
fn criterion_05_local_families() {
    let policy = PrecisionPolicy {
        initial: 64,
        ceiling: 256,
    };
    let mut bad = Vec::new();
    let mut max_prec = 0;
    for p in [2u64, 3, 5] {
        for n in 2..=10 {
            for (field, eps) in [(FieldSpec::qp(p, 64), p.to_string()), (FieldSpec::fpt(p, 64), "t".to_string())] {
                let r = verify_family(n, field, &eps, policy).unwrap();
                max_prec = max_prec.max(r.precision.unwrap_or(0));
                let phase_one = r.roots.iter().all(|x| x.all_phase_one && x.residual_ok);
                if r.status != Status::Certified || r.certified != Some(n + 1) || !phase_one {
                    bad.push(format!("{:?} p={p} n={n}: {:?}", field.field, r.certified));
                }
            }
        }
    }
    let ok = bad.is_empty() && max_prec <= 256;
    verdict(
        5,
        "Q_p (eps = p) and F_p((t)) (eps = t), n = 2..10, p = 2, 3, 5",
        ok,
        format!("n+1 phase-1 roots, max precision {max_prec}; failures {bad:?}"),
    );
}

#[test]
fn criterion_06_example_one() {
    let r = eliminate_r_n(&gen_g_eps(4, &quarter()).unwrap()).unwrap();
    let positive = sturm_count(&r, Some(&Rational::zero()), None).unwrap();
    let report = verify_family(4, FieldSpec::real(), "1/4", PrecisionPolicy::default()).unwrap();
    let ok = positive == 5 && report.certified == Some(5) && r.degree() == Some(5);
    verdict(
        6,
        "4x4 example",
        ok,
        format!(
            "{positive} positive eliminant roots, {:?} certified in R^4_+, complex roots <= deg R_4 = {:?}",
            report.certified,
            r.degree()
        ),
    );
}

#[test]
fn criterion_07_sturmfels_agreement() {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 2..=8 {
        let (lifted, signs) = g_quarter(n);
        let alt = sturmfels_positive_count(&lifted, &signs).unwrap().count;
        let r = eliminate_r_n(&gen_g_eps(n, &quarter()).unwrap()).unwrap();
        let sturm = sturm_count(&r, Some(&Rational::zero()), None).unwrap();
        ok &= alt == n + 1 && sturm == n + 1;
        rows.push(format!("{n}:{alt}/{sturm}"));
    }
    verdict(7, "alternating cells vs Sturm, n = 2..8", ok, rows.join(" "));
}

#[test]
fn criterion_08_block_construction() {
    let mut rows = Vec::new();
    let mut ok = true;
    for (n, k) in [(4usize, 3usize), (6, 3), (6, 4), (5, 3)] {
        let (sys, _) = gen_block_system(n, k, &quarter()).unwrap();
        let support = sys.union_support().len();
        let target = (((n + k - 1) / (k - 1)) as u64).pow(k as u32 - 1);
        for p in [2u64, 3] {
            let r = certify_block_system(n, k, FieldSpec::qp(p, 64), &p.to_string(), PrecisionPolicy::default()).unwrap();
            ok &= r.certified == Some(target) && r.status == Status::Certified && support <= n + k;
            rows.push(format!("({n},{k}) Q_{p}: {:?}/{target}, support {support}", r.certified));
        }
    }
    verdict(8, "block construction", ok, rows.join("; "));
}

#[test]
fn criterion_09_hnk_family() {
    let mut bad = Vec::new();
    let mut checked = 0;
    for k in 1..=3usize {
        for n in 2..=6usize {
            let fam = gen_hnk(n, k).unwrap();
            for &p in &fam.primes {
                let r = count_slp_roots_padic(n, k, p, PrecisionPolicy::default()).unwrap();
                let dv = (3i64.pow(n as u32 - 1) - 1) / 2;
                let good = r.status == Status::Certified
                    && r.certified == Some((1 << n) - 2)
                    && r.distinct
                    && r.distinct_mod_exponent == 3u64.pow(n as u32 - 1)
                    && r.expected_derivative_valuation == dv
                    && r.roots.iter().all(|c| c.derivative_valuation == dv);
                if !good {
                    bad.push(format!("padic n={n} k={k} p={p}: {:?} {:?}", r.certified, r.failed));
                }
                checked += 1;
            }
            let real = certify_no_real_roots(n, k).unwrap();
            let real_ok = real.status == Status::Certified
                && real.endpoints_simple
                && if n <= 4 { real.sturm_real_roots == Some(0) } else { real.chain.iter().all(|s| s.below_half) };
            if !real_ok {
                bad.push(format!("real n={n} k={k}"));
            }
        }
    }
    verdict(
        9,
        "h_{n,k} roots, k = 1..3, n = 2..6",
        bad.is_empty(),
        format!("{checked} (n,k,p) cases with 2^n-2 distinct Z_p roots and no real roots; failures {bad:?}"),
    );
}

#[test]
fn criterion_10_logistic_family() {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 2..=10 {
        let r = logistic_report(n).unwrap();
        let good = r.roots_in_open_unit_interval == 1 << n
            && r.degree == 1 << n
            && r.length <= 5 * n + 5
            && r.integer_roots.is_empty();
        ok &= good;
        rows.push(format!(
            "n={n}: {} in (0,1), deg {}, length {}, integer roots {:?}",
            r.roots_in_open_unit_interval, r.degree, r.length, r.integer_roots
        ));
    }
    verdict(10, "logistic family n = 2..10", ok, rows.join("; "));
}

fn random_supports(rng: &mut ChaCha8Rng) -> Vec<Support> {
    loop {
        let n = rng.gen_range(2..=3usize);
        let supports: Vec<Support> = (0..n)
            .map(|_| {
                let k = rng.gen_range(2..=5usize);
                let pts = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..=4i64)).collect()).collect();
                Support::dedup(n, pts).unwrap()
            })
            .collect();
        match mixed_volume_of_supports(&supports) {
            Err(Error::Dimension(_)) => continue,
            _ => return supports,
        }
    }
}

#[test]
fn criterion_11_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2011);
    let mut mv_bad = 0;
    for _ in 0..100 {
        let s = random_supports(&mut rng);
        if mixed_volume_of_supports(&s).unwrap() != mixed_volume_polarization_oracle(&s).unwrap() {
            mv_bad += 1;
        }
    }
    let mut phase_bad = 0;
    let mut phase_total = 0;
    for p in [2u64, 3, 5] {
        for (f, expected) in common::oracle_instances(p, 50, 0xacce) {
            let got = count_phase1_roots_univariate(&qpoly(&f), p, false, PrecisionPolicy::default()).unwrap();
            phase_bad += usize::from(got != expected);
            phase_total += 1;
        }
    }
    verdict(
        11,
        "oracle agreement",
        mv_bad == 0 && phase_bad == 0,
        format!("mixed volume 100 instances, {mv_bad} disagree; phase-1 counts {phase_total} instances, {phase_bad} disagree"),
    );
}

#[test]
fn criterion_12_pentagon() {
    let support = Support::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 4], vec![4, 1]]).unwrap();
    // fan triangulations of the pentagon, vertices in cyclic order
    let cyc = [0usize, 1, 4, 3, 2];
    let fans: BTreeSet<Vec<Vec<usize>>> = (0..5)
        .map(|k| {
            let mut t: Vec<Vec<usize>> = (0..3)
                .map(|j| {
                    let mut s = vec![cyc[k], cyc[(k + 1 + j) % 5], cyc[(k + 2 + j) % 5]];
                    s.sort();
                    s
                })
                .collect();
            t.sort();
            t
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let mut seen = BTreeSet::new();
    let mut outside = 0;
    let mut samples = 0;
    while samples < 1000 {
        let lift = (0..5).map(|_| Rational::new(rng.gen_range(-10_000..=10_000).into(), 7.into())).collect();
        match coherent_triangulation(&LiftedSupport::new(support.clone(), lift).unwrap()) {
            Ok(t) => {
                outside += usize::from(!fans.contains(&t.simplices));
                seen.insert(t.simplices);
                samples += 1;
            }
            Err(Error::NonSimplicialCell(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    let ok = outside == 0 && seen == fans;
    verdict(12, "pentagon triangulations", ok, format!("{} distinct of 5 seen in 1000 liftings, {outside} outside", seen.len()));
}

#[test]
fn criterion_13_poonen() {
    let mut rows = Vec::new();
    let mut ok = true;
    for (p, k) in [(2u64, 2usize), (2, 3), (3, 2)] {
        let c = poonen_compare(p, k).unwrap();
        let target = (p.pow(k as u32) - 1) / (p - 1);
        ok &= c.digit_shifted.brute_force_phase1 as u64 == target && c.digit_shifted.matches_target;
        rows.push(format!(
            "(p,k)=({p},{k}) target {target}: digit-shifted {}, printed {}{}",
            c.digit_shifted.brute_force_phase1,
            c.printed.brute_force_phase1,
            if c.printed.matches_target { "" } else { " (printed formula mismatch, documented)" }
        ));
    }
    verdict(13, "Poonen r_k variants", ok, rows.join("; "));
}
