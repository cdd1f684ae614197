//! Exterior algebras over `k^n` and its dual: wedge, contraction, star duality
//! and linear factors of forms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, BitXor, Neg, Sub};

use crate::error::{Error, Result};
use crate::extmat::ScalarMatrix;
use crate::field::{Field, Scalar};

/// Basis blade `e_S` stored as a bitmask of `S`.
///
/// Ordered by grade, then lexicographically by the increasing index tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blade(pub u32);

impl Blade {
    pub fn from_indices(indices: &[usize]) -> Result<Blade> {
        let mut mask = 0u32;
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Parse(format!("indices {indices:?} not strictly increasing")));
            }
        }
        for &i in indices {
            mask |= 1 << i;
        }
        Ok(Blade(mask))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 >> i & 1 == 1).collect()
    }

    pub fn complement(self, dim: usize) -> Blade {
        Blade(!self.0 & full_mask(dim))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Blade) -> Ordering {
        match self.grade().cmp(&other.grade()) {
            Ordering::Equal if self.0 == other.0 => Ordering::Equal,
            Ordering::Equal => {
                let diff = self.0 ^ other.0;
                let low = diff & diff.wrapping_neg();
                if self.0 & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            o => o,
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Blade) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn full_mask(dim: usize) -> u32 {
    if dim >= 32 {
        u32::MAX
    } else {
        (1u32 << dim) - 1
    }
}

/// Sign of the shuffle putting `a` followed by `b` into increasing order.
/// Zero when `a` and `b` overlap.
pub fn shuffle_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> j).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Blades of one grade in canonical order.
pub fn blades_of_grade(dim: usize, grade: usize) -> Vec<Blade> {
    let mut out: Vec<Blade> = (0u32..1 << dim)
        .filter(|m| m.count_ones() as usize == grade)
        .map(Blade)
        .collect();
    out.sort();
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Primal,
    Dual,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Primal => Variance::Dual,
            Variance::Dual => Variance::Primal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    dim: usize,
    variance: Variance,
    field: Field,
    terms: BTreeMap<Blade, Scalar>,
}

impl Multivector {
    pub fn zero(dim: usize, variance: Variance, field: Field) -> Multivector {
        assert!(dim <= 10, "dim_v above 10 is not supported");
        Multivector { dim, variance, field, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, variance: Variance, c: Scalar) -> Multivector {
        let mut m = Multivector::zero(dim, variance, c.field());
        m.add_term(Blade(0), c);
        m
    }

    /// `e_i`, or `e*_i` for the dual variance.
    pub fn basis_vector(dim: usize, variance: Variance, field: Field, i: usize) -> Multivector {
        Multivector::blade(dim, variance, field, Blade(1 << i))
    }

    pub fn blade(dim: usize, variance: Variance, field: Field, blade: Blade) -> Multivector {
        let mut m = Multivector::zero(dim, variance, field);
        m.add_term(blade, field.one());
        m
    }

    /// `c * e_{i_1} ∧ ... ∧ e_{i_k}` for indices in any order.
    pub fn monomial(dim: usize, variance: Variance, c: Scalar, indices: &[usize]) -> Result<Multivector> {
        let mut m = Multivector::zero(dim, variance, c.field());
        let mut mask = 0u32;
        let mut sign = 1;
        for &i in indices {
            if i >= dim {
                return Err(Error::Dimension(format!("index {i} out of range for dim {dim}")));
            }
            sign *= shuffle_sign(mask, 1 << i);
            mask |= 1 << i;
        }
        if sign != 0 {
            let c = if sign < 0 { -c } else { c };
            m.add_term(Blade(mask), c);
        }
        Ok(m)
    }

    /// Homogeneous element from coordinates in the canonical grade basis.
    pub fn from_coords(dim: usize, variance: Variance, field: Field, grade: usize, coords: &[Scalar]) -> Multivector {
        let basis = blades_of_grade(dim, grade);
        assert_eq!(basis.len(), coords.len());
        let mut m = Multivector::zero(dim, variance, field);
        for (b, c) in basis.into_iter().zip(coords) {
            m.add_term(b, c.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Scalar)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, blade: Blade) -> Scalar {
        self.terms.get(&blade).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The single grade of a nonzero homogeneous element.
    pub fn grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(|b| b.grade());
        let g = grades.next()?;
        grades.all(|h| h == g).then_some(g)
    }

    pub fn is_homogeneous_of(&self, grade: usize) -> bool {
        self.terms.keys().all(|b| b.grade() == grade)
    }

    pub fn grade_part(&self, grade: usize) -> Multivector {
        let mut m = Multivector::zero(self.dim, self.variance, self.field);
        for (b, c) in &self.terms {
            if b.grade() == grade {
                m.terms.insert(*b, c.clone());
            }
        }
        m
    }

    /// Coordinates of the grade-`grade` part in the canonical basis.
    pub fn coords(&self, grade: usize) -> Vec<Scalar> {
        blades_of_grade(self.dim, grade).into_iter().map(|b| self.coefficient(b)).collect()
    }

    pub fn add_term(&mut self, blade: Blade, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&blade) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&blade);
                }
            }
            None => {
                self.terms.insert(blade, c);
            }
        }
    }

    fn check_compatible(&self, other: &Multivector) -> Result<()> {
        if self.dim != other.dim || self.variance != other.variance || self.field != other.field {
            return Err(Error::Dimension(format!(
                "({}, {:?}, {}) vs ({}, {:?}, {})",
                self.dim, self.variance, self.field, other.dim, other.variance, other.field
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Multivector {
        let mut m = Multivector::zero(self.dim, self.variance, self.field);
        if c.is_zero() {
            return m;
        }
        for (b, x) in &self.terms {
            m.terms.insert(*b, x * c);
        }
        m
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_compatible(other)?;
        let mut m = self.clone();
        for (b, c) in &other.terms {
            m.add_term(*b, c.clone());
        }
        Ok(m)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Multivector) {
        self.check_compatible(other).expect("incompatible multivectors");
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(*b, x * c);
        }
    }

    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check_compatible(other)?;
        let mut m = Multivector::zero(self.dim, self.variance, self.field);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let s = shuffle_sign(a.0, b.0);
                if s == 0 {
                    continue;
                }
                let c = x * y;
                m.add_term(Blade(a.0 | b.0), if s < 0 { -c } else { c });
            }
        }
        Ok(m)
    }

    /// Interior product `x ⌟ θ` of a primal `x` into a dual `θ`.
    ///
    /// On blades, `e_I ⌟ e*_S = sign(I, S∖I) e*_{S∖I}` when `I ⊆ S`, so that
    /// `⟨e_J, x ⌟ θ⟩ = ⟨x ∧ e_J, θ⟩`.
    pub fn contract(x: &Multivector, theta: &Multivector) -> Result<Multivector> {
        if x.dim != theta.dim || x.field != theta.field {
            return Err(Error::Dimension("contract across different spaces".into()));
        }
        if x.variance != Variance::Primal || theta.variance != Variance::Dual {
            return Err(Error::Dimension("contract expects a primal and a dual argument".into()));
        }
        if let (Some(j), Some(k)) = (x.grade(), theta.grade()) {
            if j > k {
                return Err(Error::Grade(format!("cannot contract grade {j} into grade {k}")));
            }
        }
        let mut m = Multivector::zero(x.dim, Variance::Dual, x.field);
        for (i, a) in &x.terms {
            for (s, b) in &theta.terms {
                if i.0 & !s.0 != 0 {
                    continue;
                }
                let rest = s.0 & !i.0;
                let c = a * b;
                m.add_term(Blade(rest), if shuffle_sign(i.0, rest) < 0 { -c } else { c });
            }
        }
        Ok(m)
    }

    /// `e_S ↦ sign(S, S^c) e*_{S^c}`, and the same rule from dual to primal.
    pub fn star(&self) -> Multivector {
        let mut m = Multivector::zero(self.dim, self.variance.flip(), self.field);
        for (b, c) in &self.terms {
            let comp = b.complement(self.dim);
            let c = if shuffle_sign(b.0, comp.0) < 0 { -c } else { c.clone() };
            m.terms.insert(comp, c);
        }
        m
    }

    /// Divided power `ω^{[k]}` of an even-grade form: the grade-`k·g` part of
    /// `∏(1 + tᵢ)` over its terms. Equals `ωᵏ/k!` in characteristic 0 and
    /// stays meaningful when `k!` vanishes in the field.
    pub fn divided_power(&self, k: usize) -> Multivector {
        let g = self.grade().unwrap_or(0);
        assert!(g % 2 == 0, "divided powers need an even grade");
        if k == 0 {
            return Multivector::scalar(self.dim, self.variance, self.field.one());
        }
        // levels[j] = j-th elementary symmetric expression in the terms seen so far
        let mut levels = vec![Multivector::scalar(self.dim, self.variance, self.field.one())];
        levels.resize(k + 1, Multivector::zero(self.dim, self.variance, self.field));
        for (b, c) in &self.terms {
            let t = Multivector::blade(self.dim, self.variance, self.field, *b).scale(c);
            for j in (1..=k).rev() {
                if levels[j - 1].is_zero() {
                    continue;
                }
                let step = &levels[j - 1] ^ &t;
                levels[j].add_scaled(&self.field.one(), &step);
            }
        }
        levels.swap_remove(k)
    }

    /// Image under the algebra map induced by `g`, whose columns are the
    /// images of the basis vectors.
    pub fn apply_linear(&self, g: &ScalarMatrix) -> Multivector {
        assert_eq!((g.rows(), g.cols()), (self.dim, self.dim));
        let images: Vec<Multivector> = (0..self.dim)
            .map(|j| Multivector::from_coords(self.dim, self.variance, self.field, 1, &g.column(j)))
            .collect();
        let mut m = Multivector::zero(self.dim, self.variance, self.field);
        for (b, c) in &self.terms {
            let mut img = Multivector::scalar(self.dim, self.variance, c.clone());
            for i in b.indices() {
                img = &img ^ &images[i];
            }
            m.add_scaled(&self.field.one(), &img);
        }
        m
    }

    /// The element in the other variance with identical coordinates.
    pub fn reinterpret(&self, variance: Variance) -> Multivector {
        Multivector { variance, ..self.clone() }
    }

    pub fn parse(s: &str, dim: usize, field: Field) -> Result<Multivector> {
        parse_multivector(s, dim, field)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = match self.variance {
            Variance::Primal => 'e',
            Variance::Dual => 'E',
        };
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if b.0 == 0 {
                write!(f, "{body}")?;
            } else {
                let digits: String = b.indices().iter().map(|i| char::from(b'0' + *i as u8)).collect();
                write!(f, "{body}*{letter}{digits}")?;
            }
        }
        Ok(())
    }
}

fn parse_multivector(s: &str, dim: usize, field: Field) -> Result<Multivector> {
    let err = |msg: &str| Error::Parse(format!("{msg} in `{s}`"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty multivector"));
    }
    let mut chunks = Vec::new();
    let mut current = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('/') && !current.is_empty() {
            chunks.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    chunks.push(current);
    let mut variance: Option<Variance> = None;
    let mut out: Vec<(Scalar, Vec<usize>)> = Vec::new();
    for chunk in chunks {
        let (sign, body) = match chunk.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, chunk.strip_prefix('+').unwrap_or(&chunk)),
        };
        let (coeff, basis) = match body.find(['e', 'E']) {
            Some(pos) => {
                let coeff = body[..pos].trim_end_matches('*');
                (if coeff.is_empty() { "1" } else { coeff }, Some(&body[pos..]))
            }
            None => (body, None),
        };
        let mut c = field.parse_scalar(coeff)?;
        if sign < 0 {
            c = -c;
        }
        let mut indices = Vec::new();
        if let Some(basis) = basis {
            let v = if basis.starts_with('E') { Variance::Dual } else { Variance::Primal };
            match variance {
                Some(old) if old != v => return Err(err("mixed primal and dual terms")),
                _ => variance = Some(v),
            }
            for ch in basis[1..].chars() {
                let d = ch.to_digit(10).ok_or_else(|| err("bad basis index"))? as usize;
                if d >= dim {
                    return Err(err("basis index out of range"));
                }
                indices.push(d);
            }
            if indices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(err("basis indices must be strictly increasing"));
            }
        }
        out.push((c, indices));
    }
    let variance = variance.unwrap_or(Variance::Primal);
    let mut m = Multivector::zero(dim, variance, field);
    for (c, idx) in out {
        m.add_term(Blade::from_indices(&idx)?, c);
    }
    Ok(m)
}

impl BitXor for &Multivector {
    type Output = Multivector;
    fn bitxor(self, rhs: &Multivector) -> Multivector {
        self.wedge(rhs).expect("wedge of incompatible multivectors")
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("sum of incompatible multivectors")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self + &(-rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        let mut m = self.clone();
        for c in m.terms.values_mut() {
            *c = -&*c;
        }
        m
    }
}

/// `V_ξ = { v : v ∧ ξ = 0 }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactorSpace {
    pub basis: Vec<Multivector>,
}

impl LinearFactorSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis of `self ∩ other`.
    pub fn intersect(&self, other: &LinearFactorSpace, dim: usize, variance: Variance, field: Field) -> LinearFactorSpace {
        let a = vectors_to_columns(&self.basis, dim, field);
        let b = vectors_to_columns(&other.basis, dim, field);
        let stacked = ScalarMatrix::hcat(&a, &b.neg());
        let basis = stacked
            .kernel_basis()
            .into_iter()
            .map(|k| {
                let coords = a.mul_vec(&k[..self.basis.len()]);
                Multivector::from_coords(dim, variance, field, 1, &coords)
            })
            .collect::<Vec<_>>();
        let basis = independent_subset(basis, dim, field);
        LinearFactorSpace { basis }
    }
}

fn vectors_to_columns(vs: &[Multivector], dim: usize, field: Field) -> ScalarMatrix {
    let mut m = ScalarMatrix::zeros(dim, vs.len(), field);
    for (j, v) in vs.iter().enumerate() {
        for (i, c) in v.coords(1).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

fn independent_subset(vs: Vec<Multivector>, dim: usize, field: Field) -> Vec<Multivector> {
    let mut kept: Vec<Multivector> = Vec::new();
    for v in vs {
        let mut trial = kept.clone();
        trial.push(v);
        if vectors_to_columns(&trial, dim, field).rank() == trial.len() {
            kept = trial;
        }
    }
    kept
}

pub fn linear_factor_space(xi: &Multivector) -> LinearFactorSpace {
    let dim = xi.dim();
    let field = xi.field();
    let variance = xi.variance();
    let images: Vec<Multivector> = (0..dim)
        .map(|i| &Multivector::basis_vector(dim, variance, field, i) ^ xi)
        .collect();
    let blades: Vec<Blade> = {
        let mut all: Vec<Blade> = images.iter().flat_map(|m| m.terms().map(|(b, _)| b)).collect();
        all.sort();
        all.dedup();
        all
    };
    let mut a = ScalarMatrix::zeros(blades.len(), dim, field);
    for (j, img) in images.iter().enumerate() {
        for (i, b) in blades.iter().enumerate() {
            a.set(i, j, img.coefficient(*b));
        }
    }
    let basis = a
        .kernel_basis()
        .into_iter()
        .map(|k| Multivector::from_coords(dim, variance, field, 1, &k))
        .collect();
    LinearFactorSpace { basis }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorVariant {
    /// ξ, η ∈ Λ³k⁵
    L3K5,
    /// ξ, η ∈ Λ²k⁴
    L2K4,
    /// ξ, η ∈ Λ⁴k⁶
    L4K6,
}

impl FactorVariant {
    pub fn dim_grade(self) -> (usize, usize) {
        match self {
            FactorVariant::L3K5 => (5, 3),
            FactorVariant::L2K4 => (4, 2),
            FactorVariant::L4K6 => (6, 4),
        }
    }
}

/// `(ξ*²)* ∧ η` for primal ξ, η, with the divided square.
pub fn star_square_wedge(xi: &Multivector, eta: &Multivector) -> Multivector {
    &xi.star().divided_power(2).star() ^ eta
}

/// Decides whether ξ and η share a linear factor through the wedge identities.
#[allow(clippy::eq_op)]
pub fn common_factor_test(xi: &Multivector, eta: &Multivector, variant: FactorVariant) -> Result<bool> {
    let (dim, grade) = variant.dim_grade();
    for f in [xi, eta] {
        if f.dim() != dim || !f.is_homogeneous_of(grade) || f.variance() != Variance::Primal {
            return Err(Error::Precondition(format!(
                "{variant:?} expects primal forms of grade {grade} in dimension {dim}"
            )));
        }
    }
    if xi.field() != eta.field() {
        return Err(Error::Dimension("forms over different fields".into()));
    }
    Ok(match variant {
        FactorVariant::L3K5 => star_square_wedge(xi, eta).is_zero() && star_square_wedge(eta, xi).is_zero(),
        FactorVariant::L2K4 => (xi ^ xi).is_zero() && (eta ^ eta).is_zero() && (xi ^ eta).is_zero(),
        FactorVariant::L4K6 => {
            let cube = |f: &Multivector| f.star().divided_power(3).is_zero();
            cube(xi) && cube(eta) && star_square_wedge(xi, eta).is_zero() && star_square_wedge(eta, xi).is_zero()
        }
    })
}

/// Reference answer: `dim(V_ξ ∩ V_η) ≥ 1`.
pub fn common_factor_bruteforce(xi: &Multivector, eta: &Multivector) -> bool {
    let a = linear_factor_space(xi);
    let b = linear_factor_space(eta);
    a.intersect(&b, xi.dim(), xi.variance(), xi.field()).dim() >= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn mv(s: &str) -> Multivector {
        Multivector::parse(s, 5, Q).unwrap()
    }

    #[test]
    fn blade_order_is_graded_lex() {
        let b = blades_of_grade(5, 2);
        let names: Vec<Vec<usize>> = b.iter().map(|b| b.indices()).collect();
        assert_eq!(names[0], vec![0, 1]);
        assert_eq!(names[1], vec![0, 2]);
        assert_eq!(names[4], vec![1, 2]);
        assert_eq!(names[9], vec![3, 4]);
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(&mv("e0") ^ &mv("e12"), mv("e012"));
        assert!((&mv("e1") ^ &mv("e12")).is_zero());
        assert_eq!(&mv("e12") ^ &mv("e34"), mv("e1234"));
        assert_eq!(&mv("e3") ^ &mv("e12"), mv("e123"));
        assert_eq!(&mv("e2") ^ &mv("e13"), mv("-e123"));
    }

    #[test]
    fn contraction_examples() {
        let e = |s: &str| Multivector::parse(s, 5, Q).unwrap();
        assert_eq!(Multivector::contract(&e("e0"), &e("E01")).unwrap(), e("E1"));
        assert!(Multivector::contract(&e("e2"), &e("E01")).unwrap().is_zero());
        assert_eq!(Multivector::contract(&e("e0+e1"), &e("E01")).unwrap(), e("E1-E0"));
        assert_eq!(Multivector::contract(&e("e01"), &e("E01")).unwrap(), e("1").reinterpret(Variance::Dual));
        assert!(Multivector::contract(&e("e012"), &e("E01")).is_err());
    }

    #[test]
    fn star_examples() {
        let e = |s: &str| Multivector::parse(s, 5, Q).unwrap();
        assert_eq!(e("e012").star(), e("E34"));
        assert_eq!(e("1").star(), e("E01234"));
        let s = e("e012 + e034").star();
        assert_eq!((&s ^ &s).num_terms(), 1);
        assert_eq!(e("e13").star(), e("-E024"));
    }

    #[test]
    fn linear_factor_examples() {
        assert_eq!(linear_factor_space(&mv("e012")).dim(), 3);
        let v = linear_factor_space(&mv("e012 + e034"));
        assert_eq!(v.dim(), 1);
        assert!((&v.basis[0] ^ &mv("e1234")).num_terms() == 1);
        assert_eq!(linear_factor_space(&Multivector::zero(5, Variance::Primal, Q)).dim(), 5);
    }

    #[test]
    fn common_factor_examples() {
        assert!(common_factor_test(&mv("e012"), &mv("e034"), FactorVariant::L3K5).unwrap());
        assert!(!common_factor_test(&mv("e012+e034"), &mv("e123"), FactorVariant::L3K5).unwrap());
        assert!(!common_factor_bruteforce(&mv("e012+e034"), &mv("e123")));
        let w = Multivector::parse("e01+e23", 4, Q).unwrap();
        assert!(!common_factor_test(&w, &w, FactorVariant::L2K4).unwrap());
        assert!(common_factor_test(&mv("e01"), &mv("e012"), FactorVariant::L3K5).is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let m = Multivector::parse("-2*e013 + 1/2*e24 - e0", 5, Q).unwrap();
        assert_eq!(m.to_string(), "-1*e0 + 1/2*e24 - 2*e013");
        assert_eq!(Multivector::parse(&m.to_string(), 5, Q).unwrap(), m);
        assert!(Multivector::parse("e10", 5, Q).is_err());
        assert!(Multivector::parse("e1 + E2", 5, Q).is_err());
        let f7 = Field::Prime(7);
        assert_eq!(Multivector::parse("1*E34", 5, f7).unwrap().variance(), Variance::Dual);
    }
}
