use monadkit::golden::printed_syzygy;
use monadkit::monad::{check_m_subbundle, subbundle_obstruction};
use monadkit::sample::{random_coefficients, random_monad, random_rank7_monad, rng_for};
use monadkit::syzygy::syzygy_space;
use monadkit::{BinaryForm, Field, SyzygySpace};

#[test]
fn every_valid_m_lies_in_the_syzygy_family() {
    for (field, count) in [(Field::Rationals, 100), (Field::Prime(101), 300)] {
        let mut rng = rng_for(51, 0);
        for i in 0..count {
            let m = if i % 4 == 0 { random_rank7_monad(&mut rng, field, 2) } else { random_monad(&mut rng, field, 2) };
            let g = syzygy_space(m.n()).unwrap();
            let (p, q) = g.coefficients_of(m.m()).unwrap_or_else(|| panic!("sample {i} outside its family"));
            assert_eq!(&g.m_from_coeffs(&p, &q).unwrap(), m.m());
            assert_eq!(g.dimension(), 10);
        }
    }
}

#[test]
fn t1_obstructions_share_the_quadratic_factor() {
    for field in [Field::Rationals, Field::Prime(101)] {
        let t = printed_syzygy("T1", field);
        let family = SyzygySpace::from_columns(t.n.clone(), &t.gamma).unwrap();
        let mut rng = rng_for(52, 0);
        let mut nonzero = 0;
        for i in 0..500 {
            let p = random_coefficients(&mut rng, field, 6, 3);
            let q = random_coefficients(&mut rng, field, 6, 3);
            let m = family.m_from_coeffs(&p, &q).unwrap();
            let f = BinaryForm::new(
                field,
                vec![
                    &(&p[3] * &p[4]) - &(&p[5] * &p[5]),
                    &(&(&p[4] * &q[3]) + &(&p[3] * &q[4])) - &(&(&p[5] * &q[5]) * &field.from_i64(2)),
                    &(&q[3] * &q[4]) - &(&q[5] * &q[5]),
                ],
            );
            let (ga, gb) = subbundle_obstruction(&m).unwrap();
            if !f.is_zero() {
                nonzero += 1;
                assert!(f.divides(&ga) && f.divides(&gb), "sample {i}");
            }
            assert!(!check_m_subbundle(&m).unwrap(), "sample {i}");
        }
        assert!(nonzero > 450);
    }
}
