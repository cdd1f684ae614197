//! Binary forms in `(s, t)` and multivectors with binary-form coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector, Variance};
use crate::field::{Field, Scalar};

/// `Σ c_i s^{d-i} t^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> BinaryForm {
        if coeffs.is_empty() {
            return BinaryForm::zero(field, 0);
        }
        BinaryForm { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> BinaryForm {
        BinaryForm::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field, degree: usize) -> BinaryForm {
        BinaryForm { field, coeffs: vec![field.zero(); degree + 1] }
    }

    pub fn constant(c: Scalar) -> BinaryForm {
        BinaryForm { field: c.field(), coeffs: vec![c] }
    }

    /// `a s + b t`.
    pub fn linear(a: Scalar, b: Scalar) -> BinaryForm {
        BinaryForm { field: a.field(), coeffs: vec![a, b] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.degree() == 0 && !self.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> BinaryForm {
        BinaryForm { field: self.field, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        BinaryForm { field: self.field, coeffs }
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.is_zero() && self.degree() != other.degree() {
            return Ok(other.clone());
        }
        if other.is_zero() && self.degree() != other.degree() {
            return Ok(self.clone());
        }
        if self.degree() != other.degree() {
            return Err(Error::Grade(format!("adding forms of degree {} and {}", self.degree(), other.degree())));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(BinaryForm { field: self.field, coeffs })
    }

    pub fn eval(&self, s: &Scalar, t: &Scalar) -> Scalar {
        let d = self.degree() as u32;
        let mut acc = self.field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &(&(c * &s.pow(d - i as u32)) * &t.pow(i as u32));
            }
        }
        acc
    }

    /// `(t-multiplicity, s-multiplicity, core)`, where the core, read as a
    /// polynomial in `u = t/s`, has nonzero constant and leading terms.
    fn split(&self) -> (usize, usize, Vec<Scalar>) {
        let a = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let b = self.coeffs.iter().rev().take_while(|c| c.is_zero()).count();
        (a, b, self.coeffs[a..self.coeffs.len() - b].to_vec())
    }

    fn assemble(field: Field, t_mult: usize, s_mult: usize, core: &[Scalar]) -> BinaryForm {
        let mut coeffs = vec![field.zero(); t_mult];
        coeffs.extend(core.iter().cloned());
        coeffs.extend(std::iter::repeat(field.zero()).take(s_mult));
        BinaryForm::new(field, coeffs).normalized()
    }

    /// Scaled so that the first nonzero coefficient is 1.
    pub fn normalized(&self) -> BinaryForm {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
        }
    }

    /// Number of distinct roots in `P¹` over the algebraic closure; `None`
    /// for the zero form.
    pub fn distinct_root_count(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let (a, b, core) = self.split();
        Some(usize::from(a > 0) + usize::from(b > 0) + poly_degree(&radical(&core)))
    }

    /// `self` divides `other`.
    pub fn divides(&self, other: &BinaryForm) -> bool {
        if other.is_zero() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        let g = form_gcd(&[self.clone(), other.clone()]);
        g.degree() == self.degree()
    }

    /// Roots `(s : t)` in `P¹` over the ground field itself.
    pub fn rational_roots(&self) -> Result<Vec<(Scalar, Scalar)>> {
        if self.is_zero() {
            return Err(Error::Precondition("the zero form vanishes everywhere".into()));
        }
        let f = self.field;
        let (a, b, core) = self.split();
        let mut roots = Vec::new();
        if a > 0 {
            roots.push((f.one(), f.zero()));
        }
        if b > 0 {
            roots.push((f.zero(), f.one()));
        }
        for u in poly_rational_roots(&core)? {
            roots.push((f.one(), u));
        }
        Ok(roots)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match (d - i, i) {
                (0, 0) => String::new(),
                (si, ti) => {
                    let pw = |v: &str, e: usize| match e {
                        0 => String::new(),
                        1 => v.to_string(),
                        _ => format!("{v}^{e}"),
                    };
                    [pw("s", si), pw("t", ti)].into_iter().filter(|x| !x.is_empty()).collect::<Vec<_>>().join("*")
                }
            };
            let text = c.to_string();
            let (neg, abs) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            let body = match (mono.is_empty(), abs.as_str()) {
                (true, _) => abs,
                (false, "1") => mono,
                (false, _) => format!("{abs}*{mono}"),
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Greatest common divisor, normalized; the zero form when every input is zero.
pub fn form_gcd(forms: &[BinaryForm]) -> BinaryForm {
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        let field = forms.first().map_or(Field::Rationals, |f| f.field);
        return BinaryForm::zero(field, 0);
    };
    let field = first.field;
    let mut t_mult = usize::MAX;
    let mut s_mult = usize::MAX;
    let mut core: Option<Vec<Scalar>> = None;
    for f in nonzero {
        let (a, b, c) = f.split();
        t_mult = t_mult.min(a);
        s_mult = s_mult.min(b);
        core = Some(match core {
            None => c,
            Some(g) => poly_gcd(&g, &c),
        });
    }
    BinaryForm::assemble(field, t_mult, s_mult, &core.unwrap())
}

// Univariate polynomials, coefficients low to high.

fn poly_trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_degree(p: &[Scalar]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn poly_is_zero(p: &[Scalar]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_monic(p: &[Scalar]) -> Vec<Scalar> {
    let p = poly_trim(p.to_vec());
    let lead = p.last().unwrap().clone();
    if lead.is_zero() {
        return p;
    }
    let inv = lead.inv().unwrap();
    p.iter().map(|c| c * &inv).collect()
}

fn poly_divrem(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let b = poly_trim(b.to_vec());
    let field = b[0].field();
    let db = b.len() - 1;
    let inv = b[db].inv().expect("division by the zero polynomial");
    let mut r = poly_trim(a.to_vec());
    if r.len() <= db {
        return (vec![field.zero()], r);
    }
    let mut q = vec![field.zero(); r.len() - db];
    for k in (0..r.len() - db).rev() {
        let c = &r[k + db] * &inv;
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[k + i] -= &t;
        }
        q[k] = c;
    }
    (poly_trim(q), poly_trim(r))
}

fn poly_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !poly_is_zero(&b) {
        let (_, r) = poly_divrem(&a, &b);
        a = b;
        b = r;
    }
    poly_monic(&a)
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let field = a[0].field();
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    poly_trim(out)
}

fn poly_deriv(p: &[Scalar]) -> Vec<Scalar> {
    let field = p[0].field();
    if p.len() == 1 {
        return vec![field.zero()];
    }
    poly_trim(p.iter().enumerate().skip(1).map(|(i, c)| c * &field.from_i64(i as i64)).collect())
}

/// Product of the distinct monic irreducible factors, valid in every characteristic.
fn radical(p: &[Scalar]) -> Vec<Scalar> {
    let p = poly_trim(p.to_vec());
    let field = p[0].field();
    if poly_degree(&p) == 0 {
        return vec![field.one()];
    }
    let d = poly_deriv(&p);
    if poly_is_zero(&d) {
        // p(u) = h(u^char) = h(u)^char over a prime field
        let c = field.characteristic() as usize;
        let h: Vec<Scalar> = p.iter().step_by(c).cloned().collect();
        return radical(&h);
    }
    let c = poly_gcd(&p, &d);
    let w = poly_monic(&poly_divrem(&p, &c).0);
    let mut rest = c;
    loop {
        let y = poly_gcd(&rest, &w);
        if poly_degree(&y) == 0 {
            break;
        }
        rest = poly_divrem(&rest, &y).0;
    }
    poly_monic(&poly_mul(&w, &radical(&rest)))
}

const BRUTE_FORCE_LIMIT: u32 = 1 << 20;
const DIVISOR_SEARCH_LIMIT: u64 = 1 << 24;

fn poly_eval(p: &[Scalar], u: &Scalar) -> Scalar {
    let mut acc = u.field().zero();
    for c in p.iter().rev() {
        acc = &(&acc * u) + c;
    }
    acc
}

fn poly_rational_roots(p: &[Scalar]) -> Result<Vec<Scalar>> {
    let p = poly_trim(p.to_vec());
    let field = p[0].field();
    if poly_degree(&p) == 0 {
        return Ok(Vec::new());
    }
    match field {
        Field::Prime(q) => {
            if q > BRUTE_FORCE_LIMIT {
                return Err(Error::Precondition(format!("root search over F_{q} is too large")));
            }
            Ok((1..q as i64).map(|u| field.from_i64(u)).filter(|u| poly_eval(&p, u).is_zero()).collect())
        }
        Field::Rationals => {
            let r = radical(&p);
            if poly_degree(&r) == 1 {
                return Ok(vec![-(&r[0] * &r[1].inv()?)]);
            }
            let mut den = BigInt::one();
            for c in &r {
                den = den.lcm(c.as_rational().unwrap().denom());
            }
            let ints: Vec<BigInt> = r
                .iter()
                .map(|c| {
                    let x = c.as_rational().unwrap();
                    x.numer() * (&den / x.denom())
                })
                .collect();
            let c0 = ints[0].abs();
            let cn = ints.last().unwrap().abs();
            let mut roots = Vec::new();
            for a in divisors(&c0)? {
                for b in divisors(&cn)? {
                    if a.gcd(&b) != BigInt::one() {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let u = field.from_ratio(&(&a * sign), &b)?;
                        if poly_eval(&r, &u).is_zero() && !roots.contains(&u) {
                            roots.push(u);
                        }
                    }
                }
            }
            Ok(roots)
        }
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.to_u64().ok_or_else(|| Error::Precondition("coefficients too large for root search".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if d > DIVISOR_SEARCH_LIMIT {
            return Err(Error::Precondition("coefficients too large for root search".into()));
        }
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    if out.is_empty() && n.is_zero() {
        return Err(Error::Precondition("zero constant term".into()));
    }
    Ok(out)
}

/// A multivector whose coefficients are binary forms of one common degree,
/// stored as `Σ s^{d-i} t^i · parts[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMultivector {
    parts: Vec<Multivector>,
}

impl PolyMultivector {
    pub fn constant(m: Multivector) -> PolyMultivector {
        PolyMultivector { parts: vec![m] }
    }

    /// `s·a + t·b`.
    pub fn linear(a: &Multivector, b: &Multivector) -> PolyMultivector {
        PolyMultivector { parts: vec![a.clone(), b.clone()] }
    }

    pub fn degree(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn parts(&self) -> &[Multivector] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn wedge(&self, other: &PolyMultivector) -> PolyMultivector {
        let proto = &self.parts[0];
        let mut parts = vec![Multivector::zero(proto.dim(), proto.variance(), proto.field()); self.parts.len() + other.parts.len() - 1];
        let one = proto.field().one();
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in other.parts.iter().enumerate() {
                if !a.is_zero() && !b.is_zero() {
                    parts[i + j].add_scaled(&one, &(a ^ b));
                }
            }
        }
        PolyMultivector { parts }
    }

    /// Divided square of an even-grade form, coefficientwise in `(s, t)`.
    pub fn divided_square(&self) -> PolyMultivector {
        let proto = &self.parts[0];
        let one = proto.field().one();
        let mut parts = vec![Multivector::zero(proto.dim(), proto.variance(), proto.field()); 2 * self.parts.len() - 1];
        for (i, a) in self.parts.iter().enumerate() {
            parts[2 * i].add_scaled(&one, &a.divided_power(2));
            for (j, b) in self.parts.iter().enumerate().skip(i + 1) {
                parts[i + j].add_scaled(&one, &(a ^ b));
            }
        }
        PolyMultivector { parts }
    }

    pub fn star(&self) -> PolyMultivector {
        PolyMultivector { parts: self.parts.iter().map(|p| p.star()).collect() }
    }

    pub fn eval(&self, s: &Scalar, t: &Scalar) -> Multivector {
        let proto = &self.parts[0];
        let d = self.degree() as u32;
        let mut m = Multivector::zero(proto.dim(), proto.variance(), proto.field());
        for (i, p) in self.parts.iter().enumerate() {
            m.add_scaled(&(&s.pow(d - i as u32) * &t.pow(i as u32)), p);
        }
        m
    }

    /// The coefficient form of every blade that occurs.
    pub fn coefficient_forms(&self) -> Vec<(Blade, BinaryForm)> {
        let mut blades: Vec<Blade> = self.parts.iter().flat_map(|p| p.terms().map(|(b, _)| b)).collect();
        blades.sort();
        blades.dedup();
        let field = self.parts[0].field();
        blades
            .into_iter()
            .map(|b| (b, BinaryForm::new(field, self.parts.iter().map(|p| p.coefficient(b)).collect())))
            .collect()
    }

    /// `gcd` of all coefficient forms.
    pub fn content(&self) -> BinaryForm {
        let forms: Vec<BinaryForm> = self.coefficient_forms().into_iter().map(|(_, f)| f).collect();
        if forms.is_empty() {
            return BinaryForm::zero(self.parts[0].field(), 0);
        }
        form_gcd(&forms)
    }

    pub fn variance(&self) -> Variance {
        self.parts[0].variance()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn gcd_examples() {
        let g = form_gcd(&[BinaryForm::from_i64(Q, &[1, 0, -1]), BinaryForm::from_i64(Q, &[1, -1])]);
        assert_eq!(g, BinaryForm::from_i64(Q, &[1, -1]));
        let g = form_gcd(&[BinaryForm::from_i64(Q, &[1, 0, 0]), BinaryForm::from_i64(Q, &[0, 0, 1])]);
        assert!(g.is_unit());
        let g = form_gcd(&[BinaryForm::zero(Q, 2), BinaryForm::zero(Q, 1)]);
        assert!(g.is_zero());
    }

    #[test]
    fn gcd_keeps_roots_at_infinity() {
        // s^2 t and s t^3
        let g = form_gcd(&[BinaryForm::from_i64(Q, &[0, 1, 0]), BinaryForm::from_i64(Q, &[0, 0, 0, 1, 0])]);
        assert_eq!(g, BinaryForm::from_i64(Q, &[0, 1, 0]));
        assert_eq!(g.distinct_root_count(), Some(2));
    }

    #[test]
    fn radical_in_characteristic_p() {
        let f = Field::Prime(3);
        // (u - 1)^3 = u^3 - 1 over F_3, times (u + 1)
        let p = poly_mul(&[f.from_i64(-1), f.zero(), f.zero(), f.one()], &[f.one(), f.one()]);
        assert_eq!(poly_degree(&radical(&p)), 2);
        let form = BinaryForm::new(f, p);
        assert_eq!(form.distinct_root_count(), Some(2));
    }

    #[test]
    fn rational_roots_over_q() {
        // (2s - 3t)(s + t) t
        let f = BinaryForm::from_i64(Q, &[2, -3]).mul(&BinaryForm::from_i64(Q, &[1, 1])).mul(&BinaryForm::from_i64(Q, &[0, 1]));
        let roots = f.rational_roots().unwrap();
        assert_eq!(roots.len(), 3);
        for (s, t) in roots {
            assert!(f.eval(&s, &t).is_zero());
        }
        let irreducible = BinaryForm::from_i64(Q, &[1, 0, -2]);
        assert!(irreducible.rational_roots().unwrap().is_empty());
        assert_eq!(irreducible.distinct_root_count(), Some(2));
    }

    #[test]
    fn display() {
        assert_eq!(BinaryForm::from_i64(Q, &[1, 0, -1]).to_string(), "s^2 - t^2");
        assert_eq!(BinaryForm::from_i64(Q, &[0, 3, 0]).to_string(), "3*s*t");
    }
}
