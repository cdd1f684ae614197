//! The contraction `M̃ : k²⊗V → k²⊗Λ⁴V`, its kernel `P`, the cokernel
//! matrix `N₁` and the dual monad.
//!
//! Coordinates: the domain index is `j·5 + a` for `e_a` in copy `j`; the
//! codomain index is `i·5 + k` where `k` is the `e*_k` coordinate of the
//! star of a 4-form. With these choices `M̃(v) = M·v` and the wedge map
//! with `N` has matrix entries `(n_ij)_k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Multivector, Variance};
use crate::extmat::{coords_matrix, degenerate_generalized_columns, ExtMatrix, ScalarMatrix};
use crate::field::Field;
use crate::monad::Monad;
use crate::normal_forms::classify_n1;
use crate::syzygy::family_dimension;

pub fn build_mtilde(m: &ExtMatrix) -> Result<ScalarMatrix> {
    if (m.rows(), m.cols(), m.grade(), m.dim()) != (2, 2, 3, 5) {
        return Err(Error::Shape("M must be 2x2 of 3-forms on k^5".into()));
    }
    let field = m.field();
    let mut t = ScalarMatrix::zeros(10, 10, field);
    for i in 0..2 {
        for j in 0..2 {
            for a in 0..5 {
                let e = Multivector::basis_vector(5, m.variance(), field, a);
                let img = (&e ^ m.get(i, j)).star();
                for (k, c) in img.coords(1).into_iter().enumerate() {
                    t.set(i * 5 + k, j * 5 + a, c);
                }
            }
        }
    }
    Ok(t)
}

/// The 2×10 matrix of `(w₁, w₂) ↦ (Σ_j n_ij ∧ w_j)` in the coordinates above.
pub fn wedge_map(n: &ExtMatrix) -> ScalarMatrix {
    let mut t = ScalarMatrix::zeros(n.rows(), 10, n.field());
    for i in 0..n.rows() {
        for j in 0..2 {
            for (k, c) in n.get(i, j).coords(1).into_iter().enumerate() {
                t.set(i, j * 5 + k, c);
            }
        }
    }
    t
}

fn pair_to_column(v: &[crate::field::Scalar], field: Field) -> [Multivector; 2] {
    [
        Multivector::from_coords(5, Variance::Primal, field, 1, &v[..5]),
        Multivector::from_coords(5, Variance::Primal, field, 1, &v[5..]),
    ]
}

fn columns_matrix(cols: &[[Multivector; 2]], field: Field) -> ExtMatrix {
    let mut p = ExtMatrix::zeros(2, cols.len(), 1, 5, field);
    for (c, [a, b]) in cols.iter().enumerate() {
        p.set(0, c, a.clone()).unwrap();
        p.set(1, c, b.clone()).unwrap();
    }
    p
}

/// Kernel of `M̃` as a 2×p matrix of vectors, checked to have no
/// degenerate generalized column.
pub fn kernel_p(m: &ExtMatrix) -> Result<ExtMatrix> {
    let field = m.field();
    let mt = build_mtilde(m)?;
    if mt.rank() < 7 {
        return Err(Error::Precondition(format!("rank of M̃ is {}", mt.rank())));
    }
    let cols: Vec<[Multivector; 2]> = mt.kernel_basis().iter().map(|v| pair_to_column(v, field)).collect();
    let p = columns_matrix(&cols, field);
    if degenerate_generalized_columns(&p)?.is_degenerate_somewhere() {
        return Err(Error::Precondition("P has a generalized column λ⊗x, so M is no subbundle".into()));
    }
    Ok(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct DualDiagnosis {
    #[serde(skip)]
    pub mtilde: ScalarMatrix,
    pub rank: usize,
    #[serde(skip)]
    pub p: ExtMatrix,
    /// Rank 7 only: `[N·g; (x, 0)]`.
    #[serde(skip)]
    pub n1: Option<ExtMatrix>,
    pub h0_dual: usize,
}

pub fn diagnose(m: &Monad) -> Result<DualDiagnosis> {
    let mtilde = build_mtilde(m.m())?;
    let rank = mtilde.rank();
    if rank != 7 && rank != 8 {
        return Err(Error::Integrity(format!("rank of M̃ is {rank}, outside {{7, 8}}")));
    }
    let p = kernel_p(m.m())?;
    let n1 = if rank == 7 { Some(cokernel_n1(m)?) } else { None };
    Ok(DualDiagnosis { mtilde, rank, p, n1, h0_dual: 8 - rank })
}

/// The rows of `N` completed to a basis of the functionals vanishing on the
/// image of `M̃`, with the third row brought to the form `(x, 0)`.
pub fn cokernel_n1(m: &Monad) -> Result<ExtMatrix> {
    let field = m.field();
    let mt = build_mtilde(m.m())?;
    let functionals = mt.transpose().kernel_basis();
    let nmap = wedge_map(m.n());
    match functionals.len() {
        2 => return Ok(m.n().clone()),
        3 => {}
        d => return Err(Error::Integrity(format!("cokernel of M̃ has dimension {d}"))),
    }
    let mut third = None;
    for f in &functionals {
        let trial = ScalarMatrix::vcat(&nmap, &ScalarMatrix::from_rows(vec![f.clone()], field)?);
        if trial.rank() == 3 {
            third = Some(f.clone());
            break;
        }
    }
    let third = third.ok_or_else(|| Error::Integrity("rows of N are not functionals on the cokernel".into()))?;
    if !nmap.mul(&mt)?.is_zero() {
        return Err(Error::Integrity("N does not vanish on the image of M̃".into()));
    }
    let [x, y] = pair_to_column(&third, field);
    let mut n1 = ExtMatrix::zeros(3, 2, 1, 5, field);
    for i in 0..2 {
        for j in 0..2 {
            n1.set(i, j, m.n().get(i, j).clone())?;
        }
    }
    n1.set(2, 0, x)?;
    n1.set(2, 1, y)?;
    reduce_third_row(&n1)
}

fn reduce_third_row(n1: &ExtMatrix) -> Result<ExtMatrix> {
    let field = n1.field();
    let gcd = degenerate_generalized_columns(&n1.transpose())?.gcd;
    if gcd.is_zero() {
        return Err(Error::Integrity("cokernel matrix has a line of degenerate rows".into()));
    }
    let u = coords_matrix(&n1.column(0), 1);
    let w = coords_matrix(&n1.column(1), 1);
    for (s, t) in gcd.rational_roots()? {
        let l = u.scale(&t).add(&w.scale(&-&s))?;
        for y in l.kernel_basis() {
            if y[2].is_zero() {
                continue;
            }
            // rows: N unchanged, third row replaced by the degenerate combination (s·v, t·v)
            let mut g3 = ScalarMatrix::identity(3, field);
            for (k, c) in y.iter().enumerate() {
                g3.set(2, k, c.clone());
            }
            let second = if s.is_zero() { vec![field.one(), field.zero()] } else { vec![field.zero(), field.one()] };
            let g2 = ScalarMatrix::from_rows(vec![vec![s.clone(), t.clone()], second], field)?.inverse()?;
            let out = n1.left_scalar(&g3)?.right_scalar(&g2)?;
            if !out.get(2, 1).is_zero() {
                return Err(Error::Integrity("third row did not reduce to (x, 0)".into()));
            }
            return Ok(out);
        }
    }
    Err(Error::Integrity("no degenerate generalized row through the third row is defined over the ground field".into()))
}

#[derive(Clone, Debug)]
pub enum DualMonad {
    Instanton(Monad),
    /// `(Mᵀ, Pᵀ)` with three rows, and the direction of the trivial subsheaf.
    Extension { m: ExtMatrix, p: ExtMatrix, x: Multivector },
}

pub fn dual_monad(m: &Monad) -> Result<DualMonad> {
    let d = diagnose(m)?;
    let mt = m.m().transpose();
    let pt = d.p.transpose();
    match d.rank {
        8 => Ok(DualMonad::Instanton(Monad::new(mt, pt)?)),
        _ => {
            let n1 = d.n1.expect("rank 7 carries N1");
            Ok(DualMonad::Extension { m: mt, p: pt, x: n1.get(2, 0).clone() })
        }
    }
}

/// `0 → k^p → k²⊗V → k²⊗Λ⁴V → k²⊗Λ⁵V → 0` is exact.
pub fn verify_exact_sequence(m: &ExtMatrix, n: &ExtMatrix, p: &ExtMatrix) -> Result<bool> {
    let mt = build_mtilde(m)?;
    let nmap = wedge_map(n);
    let mut pm = ScalarMatrix::zeros(10, p.cols(), m.field());
    for c in 0..p.cols() {
        for r in 0..2 {
            for (k, v) in p.get(r, c).coords(1).into_iter().enumerate() {
                pm.set(r * 5 + k, c, v);
            }
        }
    }
    let injective = pm.rank() == p.cols();
    let at_domain = mt.mul(&pm)?.is_zero() && pm.rank() == 10 - mt.rank();
    let at_middle = nmap.mul(&mt)?.is_zero() && mt.rank() == 10 - nmap.rank();
    let surjective = nmap.rank() == 2;
    Ok(injective && at_domain && at_middle && surjective)
}

/// `family_dimension(N₁) − 20 + 15` for the U types.
pub fn length_c(n1: &ExtMatrix) -> Result<usize> {
    let c = classify_n1(n1)?;
    if !c.tag.is_u() {
        return Err(Error::Precondition(format!("{} is not a U type", c.tag)));
    }
    let len = family_dimension(n1)? + 15 - 20;
    if len != 3 {
        return Err(Error::Integrity(format!("length {len} instead of 3")));
    }
    Ok(len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::{printed_mtilde, printed_syzygy};
    use crate::monad::golden_monads;
    use crate::normal_forms::N1Type;
    use crate::sample::rng_for;
    use crate::field::Scalar;
    use rand::Rng;

    const Q: Field = Field::Rationals;

    #[test]
    fn zero_m_gives_zero_matrix() {
        let z = ExtMatrix::zeros(2, 2, 3, 5, Q);
        assert!(build_mtilde(&z).unwrap().is_zero());
    }

    #[test]
    fn golden_ranks_and_exactness() {
        for (name, m) in golden_monads(Q) {
            let d = diagnose(&m).unwrap();
            let expected = if name == "M1_N4" { 8 } else { 7 };
            assert_eq!(d.rank, expected, "{name}");
            let exact = verify_exact_sequence(m.m(), m.n(), &d.p).unwrap();
            assert_eq!(exact, d.rank == 8, "{name}");
        }
    }

    #[test]
    fn length_is_three_for_u_types() {
        for t in [N1Type::U1, N1Type::U2, N1Type::U3] {
            assert_eq!(length_c(&t.representative(Q)).unwrap(), 3);
        }
        assert!(length_c(&N1Type::T1.representative(Q)).is_err());
    }

    fn sign_normalized(row: &[Scalar]) -> Vec<Scalar> {
        match row.iter().find(|c| !c.is_zero()) {
            Some(c) if c.to_string().starts_with('-') => row.iter().map(|x| -x).collect(),
            _ => row.to_vec(),
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Same rows up to order and sign after some relabelling of the domain basis with signs.
    fn matches_up_to_frame(ours: &ScalarMatrix, printed: &ScalarMatrix) -> bool {
        let mut target: Vec<Vec<Scalar>> = (0..10).map(|i| sign_normalized(printed.row(i))).collect();
        target.sort_by_key(|r| format!("{r:?}"));
        for perm in permutations(5) {
            for signs in 0..32u32 {
                let mut rows: Vec<Vec<Scalar>> = (0..10)
                    .map(|i| {
                        (0..10)
                            .map(|c| {
                                let (blk, a) = (c / 5, c % 5);
                                let v = ours.get(i, blk * 5 + perm[a]).clone();
                                if signs >> a & 1 == 1 {
                                    -v
                                } else {
                                    v
                                }
                            })
                            .collect::<Vec<_>>()
                    })
                    .map(|r| sign_normalized(&r))
                    .collect();
                rows.sort_by_key(|r| format!("{r:?}"));
                if rows == target {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn general_form_matches_printed_tables() {
        for name in ["N4", "N3"] {
            let table = printed_syzygy(name, Q);
            let g = crate::syzygy::SyzygySpace::from_columns(table.n.clone(), &table.gamma).unwrap();
            let printed = printed_mtilde(name);
            let mut rng = rng_for(3, 0);
            for _ in 0..3 {
                let vars: Vec<Scalar> = (0..20).map(|_| Q.from_i64(rng.gen_range(-1000..1000))).collect();
                let m = g.m_from_coeffs(&vars[..10], &vars[10..]).unwrap();
                let ours = build_mtilde(&m).unwrap();
                let mut theirs = ScalarMatrix::zeros(10, 10, Q);
                for i in 0..10 {
                    for j in 0..10 {
                        theirs.set(i, j, printed[i][j].eval(&vars));
                    }
                }
                assert!(matches_up_to_frame(&ours, &theirs), "{name}:\n{ours}\nvs\n{theirs}");
                assert!(ours.rank() <= 8);
            }
        }
    }

    #[test]
    fn wedge_map_kills_the_image_on_a_spanning_set() {
        for name in ["N4", "N3"] {
            let table = printed_syzygy(name, Q);
            let g = crate::syzygy::syzygy_space(&table.n).unwrap();
            let nmap = wedge_map(&table.n);
            for idx in 0..2 * g.dimension() {
                let mut p = vec![Q.zero(); g.dimension()];
                let mut q = vec![Q.zero(); g.dimension()];
                if idx < g.dimension() {
                    p[idx] = Q.one();
                } else {
                    q[idx - g.dimension()] = Q.one();
                }
                let mt = build_mtilde(&g.m_from_coeffs(&p, &q).unwrap()).unwrap();
                assert!(nmap.mul(&mt).unwrap().is_zero());
            }
        }
    }
}
