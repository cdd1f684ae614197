use monadkit::extmat::form_gcd;
use monadkit::sample::{random_ext_matrix, random_invertible, random_scalar_matrix, rng_for};
use monadkit::{BinaryForm, Field, Scalar};
use rand::Rng;

const FIELDS: [Field; 2] = [Field::Rationals, Field::Prime(7)];

#[test]
fn ext_mul_is_compatible_with_scalar_and_basis_actions() {
    for field in FIELDS {
        let mut rng = rng_for(21, 0);
        for _ in 0..200 {
            let (r, k, c) = (rng.gen_range(1..4), rng.gen_range(1..4), rng.gen_range(1..4));
            let ga = rng.gen_range(0..3);
            let gb = rng.gen_range(0..3);
            let a = random_ext_matrix(&mut rng, field, r, k, ga, 2);
            let b = random_ext_matrix(&mut rng, field, k, c, gb, 2);
            let ab = a.ext_mul(&b).unwrap();
            let s = random_scalar_matrix(&mut rng, field, 2, r, 3);
            assert_eq!(a.left_scalar(&s).unwrap().ext_mul(&b).unwrap(), ab.left_scalar(&s).unwrap());
            let t = random_scalar_matrix(&mut rng, field, k, k, 3);
            assert_eq!(a.right_scalar(&t).unwrap().ext_mul(&b).unwrap(), a.ext_mul(&b.left_scalar(&t).unwrap()).unwrap());
            let g = random_invertible(&mut rng, field, 5, 2);
            assert_eq!(
                a.apply_basis_change(&g).ext_mul(&b.apply_basis_change(&g)).unwrap(),
                ab.apply_basis_change(&g)
            );
        }
    }
}

#[test]
fn group_action_composes() {
    // (g₂⁻¹ M g₁) then (h₂⁻¹ · h₁) equals (g₂h₂)⁻¹ M (g₁h₁)
    for field in FIELDS {
        let mut rng = rng_for(22, 0);
        for _ in 0..200 {
            let m = random_ext_matrix(&mut rng, field, 2, 2, 3, 2);
            let (g1, g2, h1, h2) = (
                random_invertible(&mut rng, field, 2, 3),
                random_invertible(&mut rng, field, 2, 3),
                random_invertible(&mut rng, field, 2, 3),
                random_invertible(&mut rng, field, 2, 3),
            );
            let act = |m: &monadkit::ExtMatrix, a: &monadkit::ScalarMatrix, b: &monadkit::ScalarMatrix| {
                m.left_scalar(&b.inverse().unwrap()).unwrap().right_scalar(a).unwrap()
            };
            let twice = act(&act(&m, &g1, &g2), &h1, &h2);
            let once = act(&m, &g1.mul(&h1).unwrap(), &g2.mul(&h2).unwrap());
            assert_eq!(twice, once);
        }
    }
}

#[test]
fn kernels_and_cokernels_annihilate() {
    for field in [Field::Rationals, Field::Prime(3), Field::Prime(101)] {
        let mut rng = rng_for(23, 0);
        for _ in 0..300 {
            let (r, c) = (rng.gen_range(1..9), rng.gen_range(1..9));
            let mut s = random_scalar_matrix(&mut rng, field, r, c, 2);
            if rng.gen_bool(0.5) && r > 1 {
                // force a dependent row
                let row: Vec<Scalar> = s.row(0).iter().zip(s.row(r - 1)).map(|(a, b)| a + b).collect();
                for (j, x) in row.into_iter().enumerate() {
                    s.set(r / 2, j, x);
                }
            }
            let ker = s.kernel_basis();
            assert_eq!(ker.len() + s.rank(), c);
            for k in &ker {
                assert!(s.mul_vec(k).iter().all(|x| x.is_zero()));
            }
            let cok = s.cokernel_functionals();
            assert_eq!(cok.len() + s.rank(), r);
            for f in &cok {
                assert!(s.transpose().mul_vec(f).iter().all(|x| x.is_zero()));
            }
        }
    }
}

fn random_binary<R: Rng>(rng: &mut R, field: Field, degree: usize) -> BinaryForm {
    BinaryForm::new(field, (0..=degree).map(|_| field.random(rng, 3)).collect())
}

#[test]
fn form_gcd_satisfies_the_gcd_axioms() {
    for field in [Field::Rationals, Field::Prime(5), Field::Prime(101)] {
        let mut rng = rng_for(24, 0);
        for _ in 0..500 {
            let d = rng.gen_range(0..3);
            let c = random_binary(&mut rng, field, d);
            if c.is_zero() {
                continue;
            }
            let fs: Vec<BinaryForm> = (0..3)
                .map(|_| {
                    let d = rng.gen_range(0..4);
                    c.mul(&random_binary(&mut rng, field, d))
                })
                .collect();
            let g = form_gcd(&fs);
            for f in &fs {
                assert!(g.divides(f), "{g} ∤ {f}");
            }
            if fs.iter().any(|f| !f.is_zero()) {
                assert!(c.divides(&g), "{c} ∤ {g}");
            }
        }
    }
}
