//! Lines in `P⁴` as Plücker points, the 2×2 matrix `M∧ℓ` and the jumping
//! strata it controls.

use serde::Serialize;

use crate::dual::{dual_monad, kernel_p, DualMonad};
use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector, Variance};
use crate::extmat::{coords_matrix, ExtMatrix, ScalarMatrix};
use crate::field::{Field, Scalar};
use crate::monad::{check_n_surjective, Monad};
use crate::normal_forms::{span_basis, SpanTag};

#[derive(Clone, Debug)]
pub struct PlueckerLine {
    omega: Multivector,
    x: Multivector,
    y: Multivector,
}

impl PartialEq for PlueckerLine {
    fn eq(&self, other: &PlueckerLine) -> bool {
        self.key() == other.key()
    }
}

impl Eq for PlueckerLine {}

impl PlueckerLine {
    pub fn new(x: Multivector, y: Multivector) -> Result<PlueckerLine> {
        if !x.is_homogeneous_of(1) || !y.is_homogeneous_of(1) || x.dim() != 5 {
            return Err(Error::Grade("a line needs two vectors in k^5".into()));
        }
        let omega = x.wedge(&y)?;
        if omega.is_zero() {
            return Err(Error::Precondition("the witnesses are linearly dependent".into()));
        }
        Ok(PlueckerLine { omega, x, y })
    }

    /// Recovers witnesses from a decomposable 2-form.
    pub fn from_omega(omega: Multivector) -> Result<PlueckerLine> {
        if omega.dim() != 5 || !omega.is_homogeneous_of(2) || omega.is_zero() {
            return Err(Error::Grade("a Plücker point is a nonzero 2-form on k^5".into()));
        }
        if !omega.wedge(&omega)?.is_zero() {
            return Err(Error::Precondition("ω∧ω ≠ 0, not a line".into()));
        }
        let field = omega.field();
        let images: Vec<Multivector> =
            (0..5).map(|a| Multivector::basis_vector(5, omega.variance(), field, a).wedge(&omega).unwrap()).collect();
        let plane = coords_matrix(&images, 3).kernel_basis();
        let x = Multivector::from_coords(5, omega.variance(), field, 1, &plane[0]);
        let y = Multivector::from_coords(5, omega.variance(), field, 1, &plane[1]);
        let xy = x.wedge(&y)?;
        let (b, c) = xy.terms().next().map(|(b, c)| (b, c.clone())).expect("independent witnesses");
        let x = x.scale(&omega.coefficient(b).checked_div(&c)?);
        Ok(PlueckerLine { omega, x, y })
    }

    /// `"x;y"` with both vectors in the multivector syntax.
    pub fn parse(s: &str, field: Field) -> Result<PlueckerLine> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("expected \"x;y\", got {s:?}")));
        }
        PlueckerLine::new(Multivector::parse(parts[0].trim(), 5, field)?, Multivector::parse(parts[1].trim(), 5, field)?)
    }

    pub fn omega(&self) -> &Multivector {
        &self.omega
    }

    pub fn x(&self) -> &Multivector {
        &self.x
    }

    pub fn y(&self) -> &Multivector {
        &self.y
    }

    pub fn field(&self) -> Field {
        self.omega.field()
    }

    pub fn contains(&self, v: &Multivector) -> bool {
        v.wedge(&self.omega).map(|w| w.is_zero()).unwrap_or(false)
    }

    /// The same line with the witnesses replaced by `(x, y)·g`.
    pub fn remix(&self, g: &ScalarMatrix) -> Result<PlueckerLine> {
        let comb = |j: usize| {
            let mut v = self.x.scale(g.get(0, j));
            v.add_scaled(g.get(1, j), &self.y);
            v
        };
        PlueckerLine::new(comb(0), comb(1))
    }

    /// Plücker coordinates scaled so the first nonzero one is 1.
    pub fn key(&self) -> Vec<Scalar> {
        let c = self.omega.coords(2);
        let lead = c.iter().find(|x| !x.is_zero()).expect("nonzero").inv().expect("nonzero");
        c.iter().map(|x| x * &lead).collect()
    }

    pub fn to_string_pair(&self) -> String {
        format!("{};{}", self.x, self.y)
    }
}

/// `(m_ij ∧ x ∧ y)` read in `Λ⁵V ≅ k`.
pub fn m_wedge_line(m: &ExtMatrix, line: &PlueckerLine) -> Result<ScalarMatrix> {
    if m.grade() != 3 || m.dim() != 5 {
        return Err(Error::Shape("M must have 3-form entries on k^5".into()));
    }
    let top = Blade((1 << 5) - 1);
    let mut out = ScalarMatrix::zeros(m.rows(), m.cols(), m.field());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).wedge(line.omega())?.coefficient(top));
        }
    }
    Ok(out)
}

/// Some nonzero combination `Σ λ_c (a_c, b_c)` of the columns of `p` has both entries on the line:
/// the stacked 20×r system of `a_c∧ω`, `b_c∧ω` has rank below r.
pub fn combination_on_line(p: &ExtMatrix, line: &PlueckerLine) -> Result<bool> {
    if p.rows() != 2 || p.grade() != 1 {
        return Err(Error::Shape("expected two rows of vectors".into()));
    }
    let mut sys = ScalarMatrix::zeros(20, p.cols(), p.field());
    for c in 0..p.cols() {
        for r in 0..2 {
            let w = p.get(r, c).wedge(line.omega())?;
            for (k, v) in w.coords(3).into_iter().enumerate() {
                sys.set(r * 10 + k, c, v);
            }
        }
    }
    Ok(sys.rank() < p.cols())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineClass {
    pub rank: usize,
    pub splitting: [i64; 4],
    pub negative_jump: bool,
    pub positive_jump: bool,
}

/// Per-monad data shared by all lines: `M` and the kernel `P` of `M̃`.
#[derive(Clone, Debug)]
pub struct LineClassifier {
    m: ExtMatrix,
    nt: ExtMatrix,
    p: ExtMatrix,
}

impl LineClassifier {
    pub fn new(monad: &Monad) -> Result<LineClassifier> {
        Ok(LineClassifier { m: monad.m().clone(), nt: monad.n().transpose(), p: kernel_p(monad.m())? })
    }

    pub fn classify(&self, line: &PlueckerLine) -> Result<LineClass> {
        let rank = m_wedge_line(&self.m, line)?.rank();
        let (mut negative_jump, mut positive_jump) = (false, false);
        let mut splitting = match rank {
            2 => [0, 0, 0, 0],
            1 => [1, 0, 0, -1],
            _ => {
                // a generalized row of N inside W gives O(-2)+O; the columns
                // of P (the rows of the dual N) give O+O(2)
                negative_jump = combination_on_line(&self.nt, line)?;
                positive_jump = combination_on_line(&self.p, line)?;
                let (a, b) = if negative_jump { (-2, 0) } else { (-1, -1) };
                let (c, d) = if positive_jump { (0, 2) } else { (1, 1) };
                [a, b, c, d]
            }
        };
        splitting.sort_unstable_by(|a, b| b.cmp(a));
        Ok(LineClass { rank, splitting, negative_jump, positive_jump })
    }
}

pub fn classify_line(monad: &Monad, line: &PlueckerLine) -> Result<LineClass> {
    LineClassifier::new(monad)?.classify(line)
}

/// `(s:t) ↦ (t n₁₁ + s n₂₁) ∧ (t n₁₂ + s n₂₂)`.
#[derive(Clone, Debug)]
pub struct NegativeConic {
    pub tag: SpanTag,
    n: ExtMatrix,
}

impl NegativeConic {
    pub fn generalized_row(&self, s: &Scalar, t: &Scalar) -> [Multivector; 2] {
        let comb = |j: usize| {
            let mut v = self.n.get(0, j).scale(t);
            v.add_scaled(s, self.n.get(1, j));
            v
        };
        [comb(0), comb(1)]
    }

    pub fn point(&self, s: &Scalar, t: &Scalar) -> Multivector {
        let [a, b] = self.generalized_row(s, t);
        a.wedge(&b).expect("same space")
    }

    pub fn line(&self, s: &Scalar, t: &Scalar) -> Result<PlueckerLine> {
        let [a, b] = self.generalized_row(s, t);
        PlueckerLine::new(a, b)
    }

    /// The three coefficient 2-forms of `t²`, `ts`, `s²`.
    pub fn coefficients(&self) -> [Multivector; 3] {
        let n = |i, j| self.n.get(i, j);
        let t2 = n(0, 0).wedge(n(0, 1)).unwrap();
        let ts = &n(0, 0).wedge(n(1, 1)).unwrap() + &n(1, 0).wedge(n(0, 1)).unwrap();
        let s2 = n(1, 0).wedge(n(1, 1)).unwrap();
        [t2, ts, s2]
    }

    pub fn points(&self, field: Field) -> Result<Vec<PlueckerLine>> {
        projective_points(field, 2)?.iter().map(|v| self.line(&v[0], &v[1])).collect()
    }
}

pub fn negative_conic(n: &ExtMatrix) -> Result<NegativeConic> {
    if !check_n_surjective(n)? {
        return Err(Error::Precondition("N is not surjective".into()));
    }
    let tag = if span_basis(n).0 == 3 { SpanTag::Span3 } else { SpanTag::Span4 };
    Ok(NegativeConic { tag, n: n.clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum LocusKind {
    Conic,
    Surface,
}

/// Lines carrying `O ⊕ O(2)`: the negative conic of the dual instanton, or
/// the surface `(Σ λ_c p₁c) ∧ (Σ λ_c p₂c)` over `P²` when `h⁰ℰ^∨ = 1`.
#[derive(Clone, Debug)]
pub enum PositiveLocus {
    Conic(NegativeConic),
    Surface { p: ExtMatrix },
}

impl PositiveLocus {
    pub fn kind(&self) -> LocusKind {
        match self {
            PositiveLocus::Conic(_) => LocusKind::Conic,
            PositiveLocus::Surface { .. } => LocusKind::Surface,
        }
    }

    pub fn contains(&self, line: &PlueckerLine) -> Result<bool> {
        match self {
            PositiveLocus::Conic(c) => combination_on_line(&c.n.transpose(), line),
            PositiveLocus::Surface { p } => combination_on_line(p, line),
        }
    }

    /// The 2-form at `coeffs`: `(s:t)` for the conic, `(s:t:u)` for the surface.
    pub fn point(&self, coeffs: &[Scalar]) -> Result<Multivector> {
        match self {
            PositiveLocus::Conic(c) => {
                if coeffs.len() != 2 {
                    return Err(Error::Dimension("the conic is parametrized by P^1".into()));
                }
                Ok(c.point(&coeffs[0], &coeffs[1]))
            }
            PositiveLocus::Surface { p } => {
                if coeffs.len() != p.cols() {
                    return Err(Error::Dimension(format!("the surface is parametrized by P^{}", p.cols() - 1)));
                }
                let comb = |r: usize| {
                    let mut v = Multivector::zero(5, Variance::Primal, p.field());
                    for (c, l) in coeffs.iter().enumerate() {
                        v.add_scaled(l, p.get(r, c));
                    }
                    v
                };
                comb(0).wedge(&comb(1))
            }
        }
    }

    pub fn parameter_count(&self) -> usize {
        match self {
            PositiveLocus::Conic(_) => 2,
            PositiveLocus::Surface { p } => p.cols(),
        }
    }

    /// Every `F_q`-point of the parameter space maps to a nonzero 2-form.
    pub fn nowhere_zero_over(&self, field: Field) -> Result<bool> {
        for v in projective_points(field, self.parameter_count())? {
            if self.point(&v)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn points(&self, field: Field) -> Result<Vec<PlueckerLine>> {
        let mut out: Vec<PlueckerLine> = Vec::new();
        for v in projective_points(field, self.parameter_count())? {
            let line = PlueckerLine::from_omega(self.point(&v)?)?;
            if !out.contains(&line) {
                out.push(line);
            }
        }
        Ok(out)
    }
}

pub fn positive_locus(monad: &Monad) -> Result<PositiveLocus> {
    match dual_monad(monad)? {
        DualMonad::Instanton(d) => Ok(PositiveLocus::Conic(negative_conic(d.n())?)),
        DualMonad::Extension { p, .. } => {
            let p = p.transpose();
            if !nondegenerate_columns(&p)? {
                return Err(Error::Integrity("a combination of the columns of P vanishes".into()));
            }
            Ok(PositiveLocus::Surface { p })
        }
    }
}

fn nondegenerate_columns(p: &ExtMatrix) -> Result<bool> {
    let mut m = ScalarMatrix::zeros(10, p.cols(), p.field());
    for c in 0..p.cols() {
        for r in 0..2 {
            for (k, v) in p.get(r, c).coords(1).into_iter().enumerate() {
                m.set(r * 5 + k, c, v);
            }
        }
    }
    Ok(m.rank() == p.cols())
}

/// Normalized representatives of `P^{n-1}(F_q)`.
pub fn projective_points(field: Field, n: usize) -> Result<Vec<Vec<Scalar>>> {
    let elements = field.elements()?;
    let mut out = Vec::new();
    for lead in (0..n).rev() {
        // first nonzero coordinate at `n-1-lead`, equal to 1
        let pos = n - 1 - lead;
        let mut tail = vec![vec![]];
        for _ in 0..lead {
            tail = tail.into_iter().flat_map(|t: Vec<Scalar>| elements.iter().map(move |e| [t.clone(), vec![e.clone()]].concat())).collect();
        }
        for t in tail {
            let mut v = vec![field.zero(); pos];
            v.push(field.one());
            v.extend(t);
            out.push(v);
        }
    }
    Ok(out)
}

pub const MAX_ENUMERATION_PRIME: u32 = 11;

/// All lines of `P⁴(F_q)`, one per reduced echelon 2×5 matrix, in a fixed order.
pub fn enumerate_lines(q: u32) -> Result<impl Iterator<Item = PlueckerLine>> {
    if q > MAX_ENUMERATION_PRIME {
        return Err(Error::Precondition(format!("q = {q} exceeds {MAX_ENUMERATION_PRIME}")));
    }
    let field = Field::prime(q)?;
    let elements = field.elements()?;
    let mut shapes = Vec::new();
    for c1 in 0..5 {
        for c2 in c1 + 1..5 {
            shapes.push((c1, c2));
        }
    }
    Ok(shapes.into_iter().flat_map(move |(c1, c2)| {
        let free1: Vec<usize> = (c1 + 1..5).filter(|&c| c != c2).collect();
        let free2: Vec<usize> = (c2 + 1..5).collect();
        let nfree = free1.len() + free2.len();
        let total = (q as usize).pow(nfree as u32);
        let elements = elements.clone();
        (0..total).map(move |mut code| {
            let mut x = vec![field.zero(); 5];
            let mut y = vec![field.zero(); 5];
            x[c1] = field.one();
            y[c2] = field.one();
            for (row, cols) in [(&mut x, &free1), (&mut y, &free2)] {
                for &c in cols {
                    row[c] = elements[code % q as usize].clone();
                    code /= q as usize;
                }
            }
            PlueckerLine::new(
                Multivector::from_coords(5, Variance::Primal, field, 1, &x),
                Multivector::from_coords(5, Variance::Primal, field, 1, &y),
            )
            .expect("echelon rows are independent")
        })
    }))
}

/// `|G(2,5)(F_q)| = (q⁴+q³+q²+q+1)(q²+1)`.
pub fn line_count(q: u64) -> u64 {
    (q.pow(4) + q.pow(3) + q * q + q + 1) * (q * q + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::golden_monads;
    use crate::sample::{random_form, random_invertible, rng_for};

    const Q: Field = Field::Rationals;

    fn v(s: &str, field: Field) -> Multivector {
        Multivector::parse(s, 5, field).unwrap()
    }

    fn line(x: &str, y: &str) -> PlueckerLine {
        PlueckerLine::new(v(x, Q), v(y, Q)).unwrap()
    }

    fn m1n4() -> Monad {
        golden_monads(Q).into_iter().find(|(n, _)| *n == "M1_N4").unwrap().1
    }

    #[test]
    fn lines_need_independent_witnesses() {
        assert!(PlueckerLine::new(v("e1", Q), v("2e1", Q)).is_err());
        assert!(PlueckerLine::from_omega(v("e01+e23", Q)).is_err());
        let l = PlueckerLine::from_omega(v("e01-e12", Q)).unwrap();
        assert_eq!(l.x().wedge(l.y()).unwrap(), v("e01-e12", Q));
        assert!(l.contains(&v("e0+e2", Q)));
    }

    #[test]
    fn m_wedge_line_examples() {
        let m = m1n4();
        let a = m_wedge_line(m.m(), &line("e0", "e1")).unwrap();
        assert!(a.is_zero());
        let b = m_wedge_line(m.m(), &line("e0", "e2")).unwrap();
        assert_eq!(b.rank(), 1);
        for (i, j) in [(0, 0), (1, 0), (1, 1)] {
            assert!(b.get(i, j).is_zero());
        }
        assert!(!b.get(0, 1).is_zero());
        let mut rng = rng_for(3, 0);
        let rank2 = (0..50).any(|_| {
            let l = PlueckerLine::new(random_form(&mut rng, Q, 5, 1, 5), random_form(&mut rng, Q, 5, 1, 5));
            l.map(|l| m_wedge_line(m.m(), &l).unwrap().rank() == 2).unwrap_or(false)
        });
        assert!(rank2);
    }

    #[test]
    fn classify_line_examples() {
        let m = m1n4();
        assert_eq!(classify_line(&m, &line("e0", "e2")).unwrap().splitting, [1, 0, 0, -1]);
        assert_eq!(classify_line(&m, &line("e0+e1+2e2+3e3+5e4", "e1-e2+7e3")).unwrap().splitting, [0, 0, 0, 0]);
        let conic = negative_conic(m.n()).unwrap();
        for (s, t) in [(0, 1), (1, 0), (1, 1), (2, -3)] {
            let l = conic.line(&Q.from_i64(s), &Q.from_i64(t)).unwrap();
            assert!(classify_line(&m, &l).unwrap().splitting.contains(&-2));
        }
    }

    #[test]
    fn classification_does_not_depend_on_witnesses() {
        let m = m1n4();
        let c = LineClassifier::new(&m).unwrap();
        let mut rng = rng_for(4, 0);
        for l in [line("e0", "e1"), line("e0", "e2"), line("e1", "e3"), line("e1+e2", "e3+e4")] {
            let g = random_invertible(&mut rng, Q, 2, 5);
            assert_eq!(c.classify(&l).unwrap(), c.classify(&l.remix(&g).unwrap()).unwrap());
        }
    }

    #[test]
    fn negative_conic_parametrizations() {
        let n3 = ExtMatrix::parse(&[&["e1", "e2"], &["e3", "e1"]], 1, 5, Q).unwrap();
        let c = negative_conic(&n3).unwrap();
        assert_eq!(c.tag, SpanTag::Span3);
        assert_eq!(c.coefficients(), [v("e12", Q), v("-e23", Q), v("-e13", Q)]);
        assert_eq!(c.point(&Q.zero(), &Q.one()), v("e12", Q));
        assert_eq!(c.point(&Q.one(), &Q.zero()), v("-e13", Q));
        let n4 = ExtMatrix::parse(&[&["e1", "e2"], &["e3", "e4"]], 1, 5, Q).unwrap();
        let c = negative_conic(&n4).unwrap();
        assert_eq!(c.tag, SpanTag::Span4);
        let w = c.point(&Q.one(), &Q.one());
        assert_eq!(w, v("e12+e14-e23+e34", Q));
        assert!(w.wedge(&w).unwrap().is_zero());
        let bad = ExtMatrix::parse(&[&["e1", "e2"], &["e1", "e2"]], 1, 5, Q).unwrap();
        assert!(negative_conic(&bad).is_err());
    }

    #[test]
    fn enumeration_counts() {
        for q in [2u32, 3] {
            let lines: Vec<PlueckerLine> = enumerate_lines(q).unwrap().collect();
            assert_eq!(lines.len() as u64, line_count(q as u64));
            let mut keys: Vec<String> = lines.iter().map(|l| format!("{:?}", l.key())).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), lines.len());
            assert!(lines.iter().all(|l| l.omega().wedge(l.omega()).unwrap().is_zero()));
        }
        assert_eq!(line_count(2), 155);
        assert_eq!(line_count(3), 1210);
        assert!(enumerate_lines(13).is_err());
    }

    #[test]
    fn projective_point_counts() {
        let f = Field::Prime(5);
        assert_eq!(projective_points(f, 2).unwrap().len(), 6);
        assert_eq!(projective_points(f, 3).unwrap().len(), 31);
    }

    #[test]
    fn positive_locus_kinds() {
        for (name, m) in golden_monads(Q) {
            let kind = positive_locus(&m).unwrap().kind();
            assert_eq!(kind == LocusKind::Conic, name == "M1_N4", "{name}");
        }
    }
}
