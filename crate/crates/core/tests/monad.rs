use monadkit::exterior::common_factor_bruteforce;
use monadkit::extmat::{degenerate_combinations, form_gcd, Axis};
use monadkit::monad::{check_m_subbundle, subbundle_obstruction};
use monadkit::sample::{random_ext_matrix, random_form, random_invertible, random_monad, random_surjective_n, rng_for};
use monadkit::{ExtMatrix, Field, Monad, Multivector};
use rand::Rng;

fn random_pair<R: Rng>(rng: &mut R, field: Field) -> Monad {
    match rng.gen_range(0..3) {
        0 => random_monad(rng, field, 2),
        1 => Monad::new(random_ext_matrix(rng, field, 2, 2, 3, 2), random_surjective_n(rng, field, 2)).unwrap(),
        _ => Monad::new(random_ext_matrix(rng, field, 2, 2, 3, 2), random_ext_matrix(rng, field, 2, 2, 1, 1)).unwrap(),
    }
}

#[test]
fn validation_is_invariant_under_the_group() {
    for (field, count) in [(Field::Prime(101), 700), (Field::Rationals, 300)] {
        let mut rng = rng_for(41, 0);
        let mut valid = 0;
        for _ in 0..count {
            let m = random_pair(&mut rng, field);
            let (g1, g2, g3) = (
                random_invertible(&mut rng, field, 2, 3),
                random_invertible(&mut rng, field, 2, 3),
                random_invertible(&mut rng, field, 2, 3),
            );
            let before = m.validate();
            let acted = m.group_act(&g1, &g2, &g3).unwrap();
            assert_eq!(acted.validate(), before);
            let b = random_invertible(&mut rng, field, 5, 2);
            assert_eq!(acted.change_basis(&b).unwrap().validate(), before);
            // projective scale
            let c = field.random_nonzero(&mut rng, 3);
            let scaled = Monad::new(m.m().map_entries(|e| e.scale(&c)), m.n().clone()).unwrap();
            assert_eq!(scaled.validate(), before);
            if before.in_x0 {
                valid += 1;
            }
        }
        assert!(valid >= count / 4, "{valid}");
    }
}

fn column(m: &ExtMatrix, s: &monadkit::Scalar, t: &monadkit::Scalar) -> (Multivector, Multivector) {
    let comb = |a: &Multivector, b: &Multivector| &a.scale(s) + &b.scale(t);
    (comb(m.get(0, 0), m.get(0, 1)), comb(m.get(1, 0), m.get(1, 1)))
}

/// `M` whose generalized column at `(1:0)` or a random point has a planted common factor.
fn planted<R: Rng>(rng: &mut R, field: Field) -> ExtMatrix {
    let mut m = random_ext_matrix(rng, field, 2, 2, 3, 2);
    let v = random_form(rng, field, 5, 1, 2);
    m.set(0, 0, &v ^ &random_form(rng, field, 5, 2, 2)).unwrap();
    m.set(1, 0, &v ^ &random_form(rng, field, 5, 2, 2)).unwrap();
    let g = random_invertible(rng, field, 2, 2);
    m.right_scalar(&g).unwrap()
}

#[test]
fn subbundle_test_matches_a_finite_sweep() {
    for q in [3u32, 5] {
        let field = Field::Prime(q);
        let points: Vec<(monadkit::Scalar, monadkit::Scalar)> = std::iter::once((field.one(), field.zero()))
            .chain(field.elements().unwrap().into_iter().map(|t| (t, field.one())))
            .collect();
        let mut rng = rng_for(42, q as u64);
        let (mut found, mut clean) = (0, 0);
        for i in 0..600 {
            let m = if i % 2 == 0 { random_ext_matrix(&mut rng, field, 2, 2, 3, 2) } else { planted(&mut rng, field) };
            let sweep = points.iter().any(|(s, t)| {
                let (xi, eta) = column(&m, s, t);
                common_factor_bruteforce(&xi, &eta)
            });
            let (ga, gb) = subbundle_obstruction(&m).unwrap();
            let g = form_gcd(&[ga, gb]);
            let rational_root = g.is_zero() || !g.rational_roots().unwrap().is_empty();
            assert_eq!(sweep, rational_root, "F_{q} sample {i}");
            if sweep {
                assert!(!check_m_subbundle(&m).unwrap());
                found += 1;
            } else {
                clean += 1;
            }
        }
        assert!(found > 100 && clean > 100, "{found}/{clean}");
    }
}

#[test]
fn row_and_column_degeneracy_agree_for_2x2_n() {
    for field in [Field::Rationals, Field::Prime(3)] {
        let mut rng = rng_for(43, 0);
        let mut degenerate = 0;
        for _ in 0..1000 {
            let n = match rng.gen_range(0..3) {
                0 => random_ext_matrix(&mut rng, field, 2, 2, 1, 2),
                // entries from a 3-dimensional span
                1 => {
                    let g = random_invertible(&mut rng, field, 5, 2);
                    let mut n = random_ext_matrix(&mut rng, field, 2, 2, 1, 2);
                    for i in 0..2 {
                        for j in 0..2 {
                            let mut e = n.get(i, j).clone();
                            e.add_term(monadkit::Blade(1 << 3), field.zero());
                            let coords: Vec<_> = e.coords(1).into_iter().enumerate().map(|(k, c)| if k < 3 { c } else { field.zero() }).collect();
                            n.set(i, j, Multivector::from_coords(5, monadkit::Variance::Primal, field, 1, &coords)).unwrap();
                        }
                    }
                    n.apply_basis_change(&g)
                }
                _ => {
                    let mut n = random_ext_matrix(&mut rng, field, 2, 2, 1, 2);
                    let v = random_form(&mut rng, field, 5, 1, 2);
                    n.set(0, 0, v.scale(&field.random(&mut rng, 2))).unwrap();
                    n.set(1, 0, v.scale(&field.random(&mut rng, 2))).unwrap();
                    n
                }
            };
            let rows = degenerate_combinations(&n, Axis::Rows).unwrap().is_degenerate_somewhere();
            let cols = degenerate_combinations(&n, Axis::Columns).unwrap().is_degenerate_somewhere();
            assert_eq!(rows, cols, "{n:?}");
            if rows {
                degenerate += 1;
            }
        }
        assert!(degenerate > 100, "{degenerate}");
    }
}
