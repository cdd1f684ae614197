//! Seeded random generation of forms, matrices and monads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{binomial, Multivector, Variance};
use crate::extmat::{ExtMatrix, ScalarMatrix};
use crate::field::{Field, Scalar};
use crate::monad::{check_m_subbundle, check_n_surjective, Monad};
use crate::normal_forms::N1Type;
use crate::syzygy::{syzygy_space, SyzygySpace};

/// Independent stream `index` of the generator seeded by `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_form<R: Rng + ?Sized>(rng: &mut R, field: Field, dim: usize, grade: usize, height: i64) -> Multivector {
    let coords: Vec<Scalar> = (0..binomial(dim, grade)).map(|_| field.random(rng, height)).collect();
    Multivector::from_coords(dim, Variance::Primal, field, grade, &coords)
}

pub fn random_scalar_matrix<R: Rng + ?Sized>(rng: &mut R, field: Field, rows: usize, cols: usize, height: i64) -> ScalarMatrix {
    let mut g = ScalarMatrix::zeros(rows, cols, field);
    for i in 0..rows {
        for j in 0..cols {
            g.set(i, j, field.random(rng, height));
        }
    }
    g
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize, height: i64) -> ScalarMatrix {
    loop {
        let g = random_scalar_matrix(rng, field, n, n, height);
        if g.rank() == n {
            return g;
        }
    }
}

pub fn random_ext_matrix<R: Rng + ?Sized>(rng: &mut R, field: Field, rows: usize, cols: usize, grade: usize, height: i64) -> ExtMatrix {
    let mut m = ExtMatrix::zeros(rows, cols, grade, 5, field);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_form(rng, field, 5, grade, height)).unwrap();
        }
    }
    m
}

pub fn random_surjective_n<R: Rng + ?Sized>(rng: &mut R, field: Field, height: i64) -> ExtMatrix {
    loop {
        let n = random_ext_matrix(rng, field, 2, 2, 1, height);
        if check_n_surjective(&n).unwrap() {
            return n;
        }
    }
}

pub fn random_coefficients<R: Rng + ?Sized>(rng: &mut R, field: Field, len: usize, height: i64) -> Vec<Scalar> {
    (0..len).map(|_| field.random(rng, height)).collect()
}

/// Random `M` in the family of `g` that defines a subbundle, within `tries` draws.
pub fn random_subbundle_in_family<R: Rng + ?Sized>(rng: &mut R, g: &SyzygySpace, height: i64, tries: usize) -> Option<ExtMatrix> {
    let field = g.source().field();
    for _ in 0..tries {
        let p = random_coefficients(rng, field, g.dimension(), height);
        let q = random_coefficients(rng, field, g.dimension(), height);
        let m = g.m_from_coeffs(&p, &q).ok()?;
        if check_m_subbundle(&m).ok()? {
            return Some(m);
        }
    }
    None
}

pub fn random_monad_in_family<R: Rng + ?Sized>(rng: &mut R, g: &SyzygySpace, height: i64, tries: usize) -> Option<Monad> {
    let m = random_subbundle_in_family(rng, g, height, tries)?;
    Monad::new(m, g.source().clone()).ok()
}

/// A random point of `X₀`.
pub fn random_monad<R: Rng + ?Sized>(rng: &mut R, field: Field, height: i64) -> Monad {
    loop {
        let n = random_surjective_n(rng, field, height);
        let g = syzygy_space(&n).expect("2x2 input");
        if let Some(m) = random_monad_in_family(rng, &g, height, 8) {
            return m;
        }
    }
}

/// A random element of `GL₂ × GL₂ × GL₂ × GL(V)` applied to `m`.
pub fn random_orbit_point<R: Rng + ?Sized>(rng: &mut R, m: &Monad, height: i64) -> Monad {
    let f = m.field();
    let g1 = random_invertible(rng, f, 2, height);
    let g2 = random_invertible(rng, f, 2, height);
    let g3 = random_invertible(rng, f, 2, height);
    let b = random_invertible(rng, f, 5, height);
    m.group_act(&g1, &g2, &g3).unwrap().change_basis(&b).unwrap()
}

/// A random point of `X₀` with `rank M̃ = 7`: `M` is drawn from the syzygies
/// of a random 3×2 matrix of U type and `N` is its top block.
pub fn random_rank7_monad<R: Rng + ?Sized>(rng: &mut R, field: Field, height: i64) -> Monad {
    let types = [N1Type::U1, N1Type::U2, N1Type::U3];
    loop {
        let t = types[rng.gen_range(0..3)];
        let g3 = random_invertible(rng, field, 3, height);
        let g2 = random_invertible(rng, field, 2, height);
        let v = random_invertible(rng, field, 5, height);
        let n1 = t.representative(field).left_scalar(&g3).unwrap().right_scalar(&g2).unwrap().apply_basis_change(&v);
        let n = n1.select_rows(&[0, 1]);
        if !check_n_surjective(&n).unwrap() {
            continue;
        }
        let g = syzygy_space(&n1).expect("3x2 input");
        let Some(m) = random_subbundle_in_family(rng, &g, height, 8) else { continue };
        return Monad::new(m, n).expect("shapes fixed");
    }
}

/// A random point of `X₀` with `N = (e1 e2; e3 e4)` and `m12 = m21`, within `tries` draws.
pub fn random_symmetric_monad<R: Rng + ?Sized>(rng: &mut R, field: Field, height: i64, tries: usize) -> Option<Monad> {
    let n = crate::normal_forms::n_normal_form(crate::normal_forms::SpanTag::Span4, field);
    let g = syzygy_space(&n).expect("2x2 input");
    let cols = g.coordinate_matrix();
    let dim = g.dimension();
    // m12 − m21 = 0 in terms of (p, q)
    let mut sys = ScalarMatrix::zeros(10, 2 * dim, field);
    for r in 0..10 {
        for c in 0..dim {
            sys.set(r, c, -cols.get(10 + r, c));
            sys.set(r, dim + c, cols.get(r, c).clone());
        }
    }
    let ker = sys.kernel_basis();
    for _ in 0..tries {
        let mut coeffs = vec![field.zero(); 2 * dim];
        for v in &ker {
            let c = field.random(rng, height);
            for (a, b) in coeffs.iter_mut().zip(v) {
                *a += &(&c * b);
            }
        }
        let m = g.m_from_coeffs(&coeffs[..dim], &coeffs[dim..]).ok()?;
        let monad = Monad::new(m, n.clone()).expect("shapes fixed");
        if monad.validate().in_x0 {
            return Some(monad);
        }
    }
    None
}
