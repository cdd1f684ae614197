use monadkit::lines::{m_wedge_line, PlueckerLine};
use monadkit::monad::golden_monads;
use monadkit::p1_cohomology::{hyper_h, hyper_h_in_window, restrict_monad_complex, splitting_type, CechWindow, GradedComplexP1};
use monadkit::sample::{random_form, random_monad, rng_for};
use monadkit::{Field, Monad};

fn m1n4(f: Field) -> Monad {
    golden_monads(f).into_iter().find(|(n, _)| *n == "M1_N4").unwrap().1
}

fn random_line(f: Field, seed: u64, i: u64) -> PlueckerLine {
    let mut rng = rng_for(seed, i);
    loop {
        if let Ok(l) = PlueckerLine::new(random_form(&mut rng, f, 5, 1, 9), random_form(&mut rng, f, 5, 1, 9)) {
            return l;
        }
    }
}

#[test]
fn differentials_compose_to_zero_on_random_lines() {
    for f in [Field::Rationals, Field::Prime(101)] {
        for i in 0..100 {
            let mut rng = rng_for(40, i);
            let m = random_monad(&mut rng, f, 3);
            let c = restrict_monad_complex(&m, &random_line(f, 41, i)).unwrap();
            assert_eq!(c.shape(), [2, 10, 4]);
            assert!(c.composite_is_zero());
            let degs = c.degrees();
            assert_eq!((degs[0].clone(), degs[2].clone()), (vec![-1, -1], vec![1, 1, 0, 0]));
        }
    }
}

#[test]
fn cohomology_is_window_independent_and_has_the_right_euler_characteristic() {
    let f = Field::Prime(101);
    for i in 0..20 {
        let mut rng = rng_for(42, i);
        let m = random_monad(&mut rng, f, 3);
        let c = restrict_monad_complex(&m, &random_line(f, 43, i)).unwrap();
        for d in -4..=3 {
            let base = hyper_h_in_window(&c, d, CechWindow { margin: 0 }).unwrap();
            for margin in [4, 8] {
                assert_eq!(hyper_h_in_window(&c, d, CechWindow { margin }).unwrap(), base);
            }
            assert_eq!(base.0 as i64 - base.1 as i64, 4 * (d + 1));
        }
        assert!(hyper_h(&c, 5).is_err());
        assert!(hyper_h_in_window(&c, 0, CechWindow { margin: -1 }).is_err());
    }
}

#[test]
fn twisting_shifts_degrees() {
    let f = Field::Prime(11);
    let c = GradedComplexP1::single(f, vec![-2, 0, 1]);
    for d in -3..=3 {
        let shifted = c.twist(d);
        assert_eq!(hyper_h(&shifted, 0).unwrap(), hyper_h(&c, d).unwrap());
    }
}

#[test]
fn h1_of_e_minus_one_counts_the_defect() {
    let f = Field::Prime(101);
    let m = m1n4(f);
    let cases = [("e0+2e1+3e2+5e3+7e4", "e1-e2+11e3", 0), ("e0", "e2", 1), ("e0", "e1", 2)];
    for (x, y, h1) in cases {
        let l = PlueckerLine::parse(&format!("{x};{y}"), f).unwrap();
        let c = restrict_monad_complex(&m, &l).unwrap();
        // χ(E(-1)) = 0
        assert_eq!(hyper_h(&c, -1).unwrap(), (h1, h1));
        assert_eq!(2 - m_wedge_line(m.m(), &l).unwrap().rank(), h1);
    }
}

#[test]
fn splitting_types_of_the_strata() {
    let f = Field::Prime(101);
    let m = m1n4(f);
    assert_eq!(splitting_type(&m, &random_line(f, 44, 0)).unwrap().splitting, [0, 0, 0, 0]);
    assert_eq!(splitting_type(&m, &PlueckerLine::parse("e0;e2", f).unwrap()).unwrap().splitting, [1, 0, 0, -1]);
    let r = splitting_type(&m, &PlueckerLine::parse("e0;e1", f).unwrap()).unwrap();
    assert_eq!(r.splitting, [1, 1, -1, -1]);
    assert_eq!(r.table.len(), 8);
}
