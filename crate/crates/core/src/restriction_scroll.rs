//! Restriction to the hyperplane `P(span N)`, the splitting of `2𝒪` off it and
//! the induced monad on `P³`; the scroll of sections of `𝒩(1)` vanishing on a plane.
//!
//! Splitting system layout: unknowns `(x₁..x₄, y₁..y₄)` are the coordinates of
//! `s_r1, s_r2` on `w₁..w₄`; equations are the `e123, e124, e134, e234`
//! coordinates (in the frame `v₀, w₁..w₄`) of column 1 and then column 2 of
//! `(s_r1 s_r2)∧M′`. The right-hand side is `−M″` on the same coordinates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{blades_of_grade, linear_factor_space, Blade, LinearFactorSpace, Multivector, Variance};
use crate::extmat::{coords_matrix, form_gcd, ExtMatrix, PolyMultivector, ScalarMatrix};
use crate::field::{Field, Scalar};
use crate::golden::printed_syzygy;
use crate::monad::{check_complex, check_n_surjective, generalized_column, Monad};
use crate::normal_forms::SpanTag;
use crate::syzygy::SyzygySpace;

fn basis_functional_kernel(w: &[Multivector]) -> Result<Vec<Vec<Scalar>>> {
    if w.len() != 4 || w.iter().any(|v| v.dim() != 5 || !v.is_homogeneous_of(1)) {
        return Err(Error::Dimension("a hyperplane needs four vectors in k^5".into()));
    }
    let a = coords_matrix(w, 1);
    if a.rank() != 4 {
        return Err(Error::Dimension("the four vectors are dependent".into()));
    }
    Ok(a.transpose().kernel_basis())
}

/// `h⁰(ℰ|_H)` for `H = P(W)`: `2 − rank [φ(n_ij)]` with `φ` spanning `(V/W)^∨`.
pub fn h0_restriction(monad: &Monad, w: &[Multivector]) -> Result<usize> {
    let phi = basis_functional_kernel(w)?.remove(0);
    let field = monad.field();
    let mut c = ScalarMatrix::zeros(2, 2, field);
    for i in 0..2 {
        for j in 0..2 {
            let v = monad.n().get(i, j).coords(1);
            let mut acc = field.zero();
            for (a, b) in v.iter().zip(&phi) {
                acc += &(a * b);
            }
            c.set(i, j, acc);
        }
    }
    Ok(2 - c.rank())
}

/// `dim Hom(ℰ|_H, 𝒪_H)`: pairs `a ∈ V²` with `(a·M)∧w = 0` for all `w ∈ W`,
/// modulo the rows of `N`.
pub fn h0_dual_restriction(monad: &Monad, w: &[Multivector]) -> Result<usize> {
    basis_functional_kernel(w)?;
    let field = monad.field();
    let top = Blade((1 << 5) - 1);
    let mut a = ScalarMatrix::zeros(8, 10, field);
    for j in 0..2 {
        for i in 0..5 {
            let e = Multivector::basis_vector(5, Variance::Primal, field, i);
            for c in 0..2 {
                let img = &e ^ monad.m().get(j, c);
                for (k, wk) in w.iter().enumerate() {
                    a.set(c * 4 + k, j * 5 + i, (&img ^ wk).coefficient(top));
                }
            }
        }
    }
    Ok(a.kernel_basis().len() - 2)
}

/// Coordinates adapted to `V = ⟨v₀⟩ ⊕ W`: `e₀ ↦ v₀`, `e_i ↦ w_i`.
#[derive(Clone, Debug)]
struct Frame {
    to_ambient: ScalarMatrix,
    to_frame: ScalarMatrix,
}

impl Frame {
    fn new(w: &[Multivector], v0: &Multivector) -> Result<Frame> {
        basis_functional_kernel(w)?;
        let mut vs = vec![v0.clone()];
        vs.extend_from_slice(w);
        let to_ambient = coords_matrix(&vs, 1);
        let to_frame = to_ambient.inverse().map_err(|_| Error::Precondition("v0 lies in W".into()))?;
        Ok(Frame { to_ambient, to_frame })
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    frame: Frame,
    /// `M′`, entries in `Λ²W`.
    pub m_prime: ExtMatrix,
    /// `M″`, entries in `Λ³W`.
    pub m_second: ExtMatrix,
}

impl Decomposition {
    pub fn reassemble(&self, v0: &Multivector) -> ExtMatrix {
        self.m_prime.map_entries(|e| e ^ v0).zip_add(&self.m_second)
    }
}

trait ZipAdd {
    fn zip_add(&self, other: &ExtMatrix) -> ExtMatrix;
}

impl ZipAdd for ExtMatrix {
    fn zip_add(&self, other: &ExtMatrix) -> ExtMatrix {
        let mut out = other.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(i, j, self.get(i, j) + other.get(i, j)).expect("same shape");
            }
        }
        out
    }
}

/// Splits off `e₀` in frame coordinates: `c·e_{0S} = c·e_S ∧ e₀` up to the
/// sign of moving `e₀` past `e_S`.
fn split_frame_entry(x: &Multivector) -> (Multivector, Multivector) {
    let (dim, var, f) = (x.dim(), x.variance(), x.field());
    let mut prime = Multivector::zero(dim, var, f);
    let mut second = Multivector::zero(dim, var, f);
    for (b, c) in x.terms() {
        if b.0 & 1 == 1 {
            let rest = Blade(b.0 & !1);
            // e₀ ∧ e_S = (−1)^{|S|} e_S ∧ e₀
            let c = if rest.grade() % 2 == 1 { -c } else { c.clone() };
            prime.add_term(rest, c);
        } else {
            second.add_term(b, c.clone());
        }
    }
    (prime, second)
}

/// `M = M′∧v₀ + M″` with `M′`, `M″` over `ΛW`.
pub fn decompose_m(m: &ExtMatrix, w: &[Multivector], v0: &Multivector) -> Result<Decomposition> {
    if (m.rows(), m.cols(), m.grade(), m.dim()) != (2, 2, 3, 5) {
        return Err(Error::Shape("M must be 2x2 of 3-forms on k^5".into()));
    }
    let frame = Frame::new(w, v0)?;
    let hat = m.apply_basis_change(&frame.to_frame);
    let field = m.field();
    let mut m_prime = ExtMatrix::zeros(2, 2, 2, 5, field);
    let mut m_second = ExtMatrix::zeros(2, 2, 3, 5, field);
    for i in 0..2 {
        for j in 0..2 {
            let (a, b) = split_frame_entry(hat.get(i, j));
            m_prime.set(i, j, a.apply_linear(&frame.to_ambient))?;
            m_second.set(i, j, b.apply_linear(&frame.to_ambient))?;
        }
    }
    Ok(Decomposition { frame, m_prime, m_second })
}

fn w_blades3() -> Vec<Blade> {
    blades_of_grade(5, 3).into_iter().filter(|b| b.0 & 1 == 0).collect()
}

#[derive(Clone, Debug)]
pub struct SplittingSystem {
    pub matrix: ScalarMatrix,
    /// One right-hand side per row of `S`.
    pub rhs: [Vec<Scalar>; 2],
}

pub fn splitting_system(d: &Decomposition) -> SplittingSystem {
    let f = d.m_prime.field();
    let mp = d.m_prime.apply_basis_change(&d.frame.to_frame);
    let ms = d.m_second.apply_basis_change(&d.frame.to_frame);
    let blades = w_blades3();
    let mut a = ScalarMatrix::zeros(8, 8, f);
    for c in 0..2 {
        for (half, k) in [(0, 0), (1, 1)] {
            for i in 0..4 {
                let e = Multivector::basis_vector(5, Variance::Primal, f, i + 1);
                let img = &e ^ mp.get(k, c);
                for (r, b) in blades.iter().enumerate() {
                    a.set(c * 4 + r, half * 4 + i, img.coefficient(*b));
                }
            }
        }
    }
    let rhs = [0, 1].map(|row| {
        (0..2).flat_map(|c| blades.iter().map(move |b| (c, *b))).map(|(c, b)| -ms.get(row, c).coefficient(b)).collect()
    });
    SplittingSystem { matrix: a, rhs }
}

/// `S` over `W` with `S∧M′ + M″ = 0`, or `None` when the system has no solution.
pub fn solve_splitting(d: &Decomposition) -> Result<Option<ExtMatrix>> {
    let sys = splitting_system(d);
    let f = d.m_prime.field();
    let mut s = ExtMatrix::zeros(2, 2, 1, 5, f);
    for row in 0..2 {
        let Some(x) = sys.matrix.solve(&sys.rhs[row]) else { return Ok(None) };
        for half in 0..2 {
            let mut coords = vec![f.zero()];
            coords.extend_from_slice(&x[half * 4..half * 4 + 4]);
            let v = Multivector::from_coords(5, Variance::Primal, f, 1, &coords);
            s.set(row, half, v.apply_linear(&d.frame.to_ambient))?;
        }
    }
    if !s.ext_mul(&d.m_prime)?.zip_add(&d.m_second).is_zero() {
        return Err(Error::Integrity("S∧M′ + M″ does not vanish".into()));
    }
    Ok(Some(s))
}

/// The splitting system of `M = Γ·(p | q)` in the `N4` family, split along
/// `W = ⟨e1..e4⟩`, `v₀ = e0`.
pub fn normal_form_system(p: &[Scalar], q: &[Scalar]) -> Result<SplittingSystem> {
    if p.len() != 10 || q.len() != 10 {
        return Err(Error::Dimension("p and q need 10 coordinates each".into()));
    }
    let field = p[0].field();
    let printed = printed_syzygy("N4", field);
    let family = SyzygySpace::from_columns(printed.n, &printed.gamma)?;
    let m = family.m_from_coeffs(p, q)?;
    let w: Vec<Multivector> = (1..5).map(|i| Multivector::basis_vector(5, Variance::Primal, field, i)).collect();
    let d = decompose_m(&m, &w, &Multivector::basis_vector(5, Variance::Primal, field, 0))?;
    Ok(splitting_system(&d))
}

fn shift_to_w(x: &Multivector) -> Result<Multivector> {
    let f = x.field();
    let mut out = Multivector::zero(4, x.variance(), f);
    for (b, c) in x.terms() {
        if b.0 & 1 == 1 {
            return Err(Error::Integrity("entry leaves W".into()));
        }
        out.add_term(Blade(b.0 >> 1), c.clone());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct P3Validation {
    pub complex_ok: bool,
    pub n_surjective: bool,
    pub m_subbundle: bool,
    pub valid: bool,
}

/// Monad data on `P(W)` in the basis `w₁..w₄` of `W = span N`.
#[derive(Clone, Debug)]
pub struct P3Monad {
    pub w: Vec<Multivector>,
    pub m: ExtMatrix,
    pub n: ExtMatrix,
    pub splitting: ExtMatrix,
    pub validation: P3Validation,
}

/// No generalized column of a 2×2 matrix of 2-forms on `k⁴` has a common
/// linear factor: `ξ² = η² = ξ∧η = 0` has no solution `(s : t)`.
pub fn check_p3_subbundle(m: &ExtMatrix) -> Result<bool> {
    if (m.rows(), m.cols(), m.grade(), m.dim()) != (2, 2, 2, 4) {
        return Err(Error::Shape("expects 2x2 of 2-forms on k^4".into()));
    }
    let (xi, eta): (PolyMultivector, PolyMultivector) = generalized_column(m);
    let forms: Vec<_> = [xi.wedge(&xi), eta.wedge(&eta), xi.wedge(&eta)]
        .iter()
        .flat_map(|p| p.coefficient_forms().into_iter().map(|(_, f)| f))
        .collect();
    if forms.is_empty() {
        return Ok(false);
    }
    Ok(form_gcd(&forms).is_unit())
}

pub fn induced_p3_monad(monad: &Monad) -> Result<P3Monad> {
    let (dim, w) = monad.n().span_basis();
    if dim != 4 {
        return Err(Error::Precondition(format!("span N has dimension {dim}, not 4")));
    }
    let field = monad.field();
    let v0 = (0..5)
        .map(|i| Multivector::basis_vector(5, Variance::Primal, field, i))
        .find(|e| {
            let mut all = w.clone();
            all.push(e.clone());
            coords_matrix(&all, 1).rank() == 5
        })
        .expect("W is a hyperplane");
    let d = decompose_m(monad.m(), &w, &v0)?;
    let splitting = solve_splitting(&d)?.ok_or_else(|| Error::Precondition("no splitting found at this point".into()))?;
    let to_frame = |a: &ExtMatrix, grade: usize| -> Result<ExtMatrix> {
        let hat = a.apply_basis_change(&d.frame.to_frame);
        let mut out = ExtMatrix::zeros(2, 2, grade, 4, field);
        for i in 0..2 {
            for j in 0..2 {
                out.set(i, j, shift_to_w(hat.get(i, j))?)?;
            }
        }
        Ok(out)
    };
    let m = to_frame(&d.m_prime, 2)?;
    let n = to_frame(monad.n(), 1)?;
    let complex_ok = check_complex(&m, &n);
    let n_surjective = check_n_surjective(&n)?;
    let m_subbundle = check_p3_subbundle(&m)?;
    Ok(P3Monad {
        w,
        m,
        n,
        splitting,
        validation: P3Validation { complex_ok, n_surjective, m_subbundle, valid: complex_ok && n_surjective && m_subbundle },
    })
}

/// `(ξ, η) = Γ·p` with `Γ` the printed syzygy matrix of the normal form.
pub fn section(p: &[Scalar], tag: SpanTag) -> Result<(Multivector, Multivector)> {
    if p.len() != 10 {
        return Err(Error::Dimension("p needs 10 coordinates".into()));
    }
    let field = p[0].field();
    let gamma = printed_syzygy(gamma_name(tag), field).gamma;
    let mut xi = Multivector::zero(5, Variance::Primal, field);
    let mut eta = Multivector::zero(5, Variance::Primal, field);
    for (i, c) in p.iter().enumerate() {
        xi.add_scaled(c, gamma.get(0, i));
        eta.add_scaled(c, gamma.get(1, i));
    }
    Ok((xi, eta))
}

fn gamma_name(tag: SpanTag) -> &'static str {
    match tag {
        SpanTag::Span4 => "N4",
        SpanTag::Span3 => "N3",
    }
}

/// A linear form in `p₀..p₉`.
pub type LinearForm = Vec<Scalar>;

/// Columns `(ξ_S, η_S)` of the condition `ξ ∥ η`, with zero columns dropped
/// and proportional columns merged.
pub fn membership_matrix(tag: SpanTag, field: Field) -> Vec<[LinearForm; 2]> {
    let sections: Vec<(Multivector, Multivector)> = (0..10)
        .map(|i| {
            let mut p = vec![field.zero(); 10];
            p[i] = field.one();
            section(&p, tag).expect("ten coordinates")
        })
        .collect();
    let mut cols: Vec<[LinearForm; 2]> = Vec::new();
    for b in blades_of_grade(5, 3) {
        let col: [LinearForm; 2] = [
            sections.iter().map(|(x, _)| x.coefficient(b)).collect(),
            sections.iter().map(|(_, y)| y.coefficient(b)).collect(),
        ];
        let flat: Vec<Scalar> = col.concat();
        if flat.iter().all(|x| x.is_zero()) {
            continue;
        }
        let proportional = cols.iter().any(|c| {
            let m = ScalarMatrix::from_rows(vec![c.concat(), flat.clone()], field).expect("rectangular");
            m.rank() == 1
        });
        if !proportional {
            cols.push(col);
        }
    }
    cols
}

fn eval_linear(form: &[Scalar], p: &[Scalar]) -> Scalar {
    let mut acc = p[0].field().zero();
    for (a, b) in form.iter().zip(p) {
        acc += &(a * b);
    }
    acc
}

#[derive(Clone, Debug)]
pub struct ScrollMembership {
    pub on_scroll: bool,
    /// `V_ξ ∩ V_η` when the section vanishes on a plane.
    pub plane: Option<LinearFactorSpace>,
}

/// `ξ*²` as a dual 4-form (divided square).
pub fn xi_star_square(xi: &Multivector) -> Multivector {
    xi.star().divided_power(2)
}

pub fn scroll_membership(p: &[Scalar], tag: SpanTag) -> Result<ScrollMembership> {
    if p.iter().all(|x| x.is_zero()) {
        return Err(Error::Precondition("p must be nonzero".into()));
    }
    let field = p[0].field();
    let cols = membership_matrix(tag, field);
    let rows: Vec<Vec<Scalar>> = (0..2).map(|r| cols.iter().map(|c| eval_linear(&c[r], p)).collect()).collect();
    let on_scroll = ScalarMatrix::from_rows(rows, field)?.rank() <= 1;
    if !on_scroll {
        return Ok(ScrollMembership { on_scroll, plane: None });
    }
    let (xi, eta) = section(p, tag)?;
    let proportional = coords_matrix(&[xi.clone(), eta.clone()], 3).rank() <= 1;
    if !proportional || !xi_star_square(&xi).is_zero() || !xi_star_square(&eta).is_zero() {
        return Err(Error::Integrity("scroll point whose section is not a plane".into()));
    }
    let plane = linear_factor_space(&xi).intersect(&linear_factor_space(&eta), 5, Variance::Primal, field);
    if plane.dim() != 3 {
        return Err(Error::Integrity(format!("zero set of dimension {}", plane.dim())));
    }
    Ok(ScrollMembership { on_scroll, plane: Some(plane) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::golden_monads;

    const Q: Field = Field::Rationals;

    fn mv(s: &str) -> Multivector {
        Multivector::parse(s, 5, Q).unwrap()
    }

    fn span(names: &[&str]) -> Vec<Multivector> {
        names.iter().map(|s| mv(s)).collect()
    }

    #[test]
    fn h0_restriction_examples() {
        let (_, m) = golden_monads(Q).remove(0);
        assert_eq!(h0_restriction(&m, &span(&["e1", "e2", "e3", "e4"])).unwrap(), 2);
        assert_eq!(h0_restriction(&m, &span(&["e0", "e1", "e2", "e3"])).unwrap(), 1);
        assert_eq!(h0_restriction(&m, &span(&["e0", "e2", "e3", "e1-e4"])).unwrap(), 0);
        assert!(h0_restriction(&m, &span(&["e0", "e1", "e2"])).is_err());
    }

    #[test]
    fn decomposition_of_the_first_example() {
        let (_, m) = golden_monads(Q).remove(0);
        let w = span(&["e1", "e2", "e3", "e4"]);
        let d = decompose_m(m.m(), &w, &mv("e0")).unwrap();
        let expect_prime = ExtMatrix::parse(&[&["e23+e14", "e24+e13"], &["e13", "e23+e14"]], 2, 5, Q).unwrap();
        let expect_second = ExtMatrix::parse(&[&["0", "e134"], &["e124", "0"]], 3, 5, Q).unwrap();
        assert_eq!(d.m_prime, expect_prime);
        assert_eq!(d.m_second, expect_second);
        assert_eq!(d.reassemble(&mv("e0")), *m.m());
        assert!(decompose_m(m.m(), &w, &mv("e1+e2")).is_err());
    }
}
