use monadkit::dual::{build_mtilde, diagnose, dual_monad, kernel_p, verify_exact_sequence, DualMonad};
use monadkit::extmat::ScalarMatrix;
use monadkit::monad::check_m_subbundle;
use monadkit::sample::{random_monad, random_rank7_monad, rng_for};
use monadkit::syzygy::syzygy_space;
use monadkit::{ExtMatrix, Field, Monad};
use rayon::prelude::*;

#[test]
fn rank_dichotomy_over_seeded_monads() {
    for field in [Field::Rationals, Field::Prime(101)] {
        let sevens: usize = (0..1000u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_for(2024, i);
                let m = if i % 10 == 0 { random_rank7_monad(&mut rng, field, 3) } else { random_monad(&mut rng, field, 3) };
                assert!(m.validate().in_x0);
                let d = diagnose(&m).unwrap_or_else(|e| panic!("{field} #{i}: {e}"));
                assert!(d.rank == 7 || d.rank == 8);
                assert_eq!(d.h0_dual, 8 - d.rank);
                if d.rank == 8 {
                    assert!(verify_exact_sequence(m.m(), m.n(), &d.p).unwrap());
                    match dual_monad(&m).unwrap() {
                        DualMonad::Instanton(dual) => assert!(dual.validate().in_x0, "{field} #{i}"),
                        DualMonad::Extension { .. } => panic!("rank 8 gave an extension"),
                    }
                    0
                } else {
                    let n1 = d.n1.unwrap();
                    assert!(n1.get(2, 1).is_zero());
                    let top = n1.select_rows(&[0, 1]);
                    assert_eq!(top.span_basis().0, 3);
                    assert_eq!(m.n().span_basis().0, 3);
                    let with_x = ExtMatrix::vcat(&top, &n1.select_rows(&[2])).unwrap();
                    assert_eq!(with_x.span_basis().0, 3, "x lies in span N");
                    assert_eq!(d.p.cols(), 3);
                    assert!(!verify_exact_sequence(m.m(), m.n(), &d.p).unwrap());
                    match dual_monad(&m).unwrap() {
                        DualMonad::Extension { m: mt, p, .. } => {
                            assert_eq!(p.rows(), 3);
                            assert!(!check_m_subbundle(&mt).unwrap(), "{field} #{i}: transpose is a subbundle");
                        }
                        DualMonad::Instanton(_) => panic!("rank 7 gave an instanton"),
                    }
                    1
                }
            })
            .sum();
        assert!(sevens >= 100, "{field}: {sevens}");
    }
}

#[test]
fn double_dual_returns_the_original_monad() {
    let field = Field::Prime(101);
    (0..100u64).into_par_iter().for_each(|i| {
        let mut rng = rng_for(77, i);
        let m = random_monad(&mut rng, field, 3);
        let DualMonad::Instanton(d1) = dual_monad(&m).unwrap() else { return };
        let p = kernel_p(m.m()).unwrap();
        assert!(verify_exact_sequence(d1.m(), d1.n(), &kernel_p(d1.m()).unwrap()).unwrap());
        let DualMonad::Instanton(d2) = dual_monad(&d1).unwrap() else { panic!("dual of a rank-8 dual") };
        assert_eq!(d2.m(), m.m());
        assert!(verify_exact_sequence(d2.m(), d2.n(), &p).unwrap());
        // the N of the double dual spans the same rows as N
        let rows = |n: &ExtMatrix| {
            let mut s = ScalarMatrix::zeros(2, 10, field);
            for r in 0..2 {
                for c in 0..2 {
                    for (k, v) in n.get(r, c).coords(1).into_iter().enumerate() {
                        s.set(r, c * 5 + k, v);
                    }
                }
            }
            s
        };
        let both = ScalarMatrix::vcat(&rows(d2.n()), &rows(m.n()));
        assert_eq!(both.rank(), 2);
    });
}

#[test]
fn symmetric_m_is_its_own_dual() {
    let field = Field::Prime(101);
    let n = ExtMatrix::parse(&[&["e1", "e2"], &["e3", "e4"]], 1, 5, field).unwrap();
    let g = syzygy_space(&n).unwrap();
    // construct symmetric members directly by solving m12 = m21 inside the family
    let cols = g.coordinate_matrix();
    let mut sys = ScalarMatrix::zeros(10, 2 * g.dimension(), field);
    for r in 0..10 {
        for c in 0..g.dimension() {
            // m12 = Γ_1·q, m21 = Γ_2·p
            sys.set(r, g.dimension() + c, cols.get(r, c).clone());
            sys.set(r, c, -cols.get(10 + r, c));
        }
    }
    let ker = sys.kernel_basis();
    assert!(!ker.is_empty());
    let mut hits = 0;
    for i in 0..50u64 {
        let mut rng = rng_for(6, i);
        let mut coeffs = vec![field.zero(); 2 * g.dimension()];
        for v in &ker {
            let c = field.random(&mut rng, 50);
            for (a, b) in coeffs.iter_mut().zip(v) {
                *a += &(&c * b);
            }
        }
        let m = g.m_from_coeffs(&coeffs[..g.dimension()], &coeffs[g.dimension()..]).unwrap();
        assert_eq!(m, m.transpose());
        let monad = Monad::new(m.clone(), n.clone()).unwrap();
        if !monad.validate().in_x0 {
            continue;
        }
        hits += 1;
        let mt = build_mtilde(&m).unwrap();
        if let DualMonad::Instanton(d) = dual_monad(&monad).unwrap() {
            assert_eq!(d.m(), &m);
            assert_eq!(mt.rank(), 8);
        }
    }
    assert!(hits > 0);
}
