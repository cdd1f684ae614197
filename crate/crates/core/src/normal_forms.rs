//! Normal forms of `N` under `GL(2)×GL(2)×GL(V)`, the staircase form of
//! 2-row matrices without degenerate columns, and the types of 3×2 matrices.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::extmat::{coords_matrix, degenerate_generalized_columns, BinaryForm, ExtMatrix, ScalarMatrix};
use crate::field::{Field, Scalar};
use crate::monad::check_n_surjective;
use crate::syzygy::family_dimension;

/// Transformations `A ↦ (g_row · A · g_col)` followed by `basis_change` on every entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub g_row: ScalarMatrix,
    pub g_col: ScalarMatrix,
    pub basis_change: ScalarMatrix,
}

impl Witness {
    pub fn apply(&self, a: &ExtMatrix) -> Result<ExtMatrix> {
        Ok(a.left_scalar(&self.g_row)?.right_scalar(&self.g_col)?.apply_basis_change(&self.basis_change))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpanTag {
    #[serde(rename = "SPAN4")]
    Span4,
    #[serde(rename = "SPAN3")]
    Span3,
}

impl fmt::Display for SpanTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpanTag::Span4 => "SPAN4",
            SpanTag::Span3 => "SPAN3",
        })
    }
}

#[derive(Clone, Debug)]
pub struct NormalizedN {
    pub tag: SpanTag,
    pub witness: Witness,
}

pub fn span_basis(a: &ExtMatrix) -> (usize, Vec<Multivector>) {
    a.span_basis()
}

pub fn n_normal_form(tag: SpanTag, field: Field) -> ExtMatrix {
    let rows: [&[&str]; 2] = match tag {
        SpanTag::Span4 => [&["e1", "e2"], &["e3", "e4"]],
        SpanTag::Span3 => [&["e1", "e2"], &["e3", "e1"]],
    };
    ExtMatrix::parse(&rows, 1, 5, field).expect("static")
}

/// `g ∈ GL(V)` sending each given vector to the named basis vector.
fn basis_sending(targets: &[(&Multivector, usize)], field: Field) -> Result<ScalarMatrix> {
    let mut c = ScalarMatrix::zeros(5, 5, field);
    let mut used = [false; 5];
    for (v, k) in targets {
        for (i, x) in v.coords(1).into_iter().enumerate() {
            c.set(i, *k, x);
        }
        used[*k] = true;
    }
    let mut rank = c.rank();
    if rank != targets.len() {
        return Err(Error::Classification("target vectors are dependent".into()));
    }
    let mut spare = (0..5).filter(|k| !used[*k]);
    for i in 0..5 {
        if rank == 5 {
            break;
        }
        let k = match spare.clone().next() {
            Some(k) => k,
            None => break,
        };
        c.set(i, k, field.one());
        if c.rank() > rank {
            rank += 1;
            spare.next();
        } else {
            c.set(i, k, field.zero());
        }
    }
    c.inverse()
}

fn finish(a: &ExtMatrix, g_row: ScalarMatrix, g_col: ScalarMatrix, targets: &[((usize, usize), usize)], expected: &ExtMatrix) -> Result<Witness> {
    let x = a.left_scalar(&g_row)?.right_scalar(&g_col)?;
    let pairs: Vec<(&Multivector, usize)> = targets.iter().map(|((i, j), k)| (x.get(*i, *j), *k)).collect();
    let basis_change = basis_sending(&pairs, a.field())?;
    let w = Witness { g_row, g_col, basis_change };
    if &w.apply(a)? != expected {
        return Err(Error::Classification(format!("witness does not reproduce the normal form:\n{}", w.apply(a)?)));
    }
    Ok(w)
}

fn relations(vectors: &[&Multivector]) -> Vec<Vec<Scalar>> {
    let vs: Vec<Multivector> = vectors.iter().map(|v| (*v).clone()).collect();
    coords_matrix(&vs, 1).kernel_basis()
}

pub fn normalize_n(n: &ExtMatrix) -> Result<NormalizedN> {
    if (n.rows(), n.cols(), n.grade(), n.dim()) != (2, 2, 1, 5) {
        return Err(Error::Shape("N must be 2x2 of vectors in k^5".into()));
    }
    if !check_n_surjective(n)? {
        return Err(Error::Classification("N is not surjective".into()));
    }
    let field = n.field();
    let id = ScalarMatrix::identity(2, field);
    match n.span_basis().0 {
        4 => {
            let w = finish(n, id.clone(), id, &[((0, 0), 1), ((0, 1), 2), ((1, 0), 3), ((1, 1), 4)], &n_normal_form(SpanTag::Span4, field))?;
            Ok(NormalizedN { tag: SpanTag::Span4, witness: w })
        }
        3 => {
            // the unique relation Σ r_ij n_ij = 0 becomes n₁₁ − n₂₂ = 0 after N ↦ N·Rᵀ·diag(1,−1)
            let rel = relations(&[n.get(0, 0), n.get(0, 1), n.get(1, 0), n.get(1, 1)]).remove(0);
            let r = ScalarMatrix::from_rows(vec![rel[0..2].to_vec(), rel[2..4].to_vec()], field)?;
            let d = ScalarMatrix::from_i64(&[&[1, 0], &[0, -1]], field);
            let g_col = r.transpose().mul(&d)?;
            let w = finish(n, id, g_col, &[((0, 0), 1), ((0, 1), 2), ((1, 0), 3)], &n_normal_form(SpanTag::Span3, field))?;
            Ok(NormalizedN { tag: SpanTag::Span3, witness: w })
        }
        d => Err(Error::Classification(format!("span of N has dimension {d}"))),
    }
}

#[derive(Clone, Debug)]
pub struct KroneckerForm {
    pub segments: Vec<usize>,
    pub form: ExtMatrix,
    pub witness: Witness,
}

/// `[[e₀,…],[e₁,…]]` chains of the given lengths, placed one after another.
pub fn staircase(segments: &[usize], field: Field) -> ExtMatrix {
    let r: usize = segments.iter().sum();
    let mut m = ExtMatrix::zeros(2, r, 1, 5, field);
    let (mut col, mut offset) = (0, 0);
    for &a in segments {
        for i in 0..a {
            m.set(0, col, Multivector::basis_vector(5, m.variance(), field, offset + i)).unwrap();
            m.set(1, col, Multivector::basis_vector(5, m.variance(), field, offset + i + 1)).unwrap();
            col += 1;
        }
        offset += a + 1;
    }
    m
}

fn vector_columns(vs: &[Multivector]) -> ScalarMatrix {
    coords_matrix(vs, 1)
}

fn column_basis_of(m: &ScalarMatrix) -> ScalarMatrix {
    let (rref, pivots) = m.transpose().rref();
    let rows: Vec<Vec<Scalar>> = (0..pivots.len()).map(|i| rref.row(i).to_vec()).collect();
    if rows.is_empty() {
        return ScalarMatrix::zeros(m.rows(), 0, m.field());
    }
    ScalarMatrix::from_rows(rows, m.field()).unwrap().transpose()
}

/// Staircase normal form of a 2×r matrix without degenerate generalized columns.
pub fn kronecker_form_2xr(p: &ExtMatrix) -> Result<KroneckerForm> {
    if p.rows() != 2 || p.grade() != 1 || p.dim() != 5 || p.cols() == 0 || p.cols() > 4 {
        return Err(Error::Shape("expects a 2×r matrix of vectors in k^5 with 1 ≤ r ≤ 4".into()));
    }
    if degenerate_generalized_columns(p)?.is_degenerate_somewhere() {
        return Err(Error::Precondition("P has a degenerate generalized column".into()));
    }
    let field = p.field();
    let r = p.cols();
    let a1 = vector_columns(&p.row(0));
    let a2 = vector_columns(&p.row(1));
    // pairs (c, d) with A₁c = A₂d; T(d) = c is defined on the d-projection
    let ker = ScalarMatrix::hcat(&a1, &a2.neg()).kernel_basis();
    let kc = ScalarMatrix::from_rows(ker.iter().map(|v| v[..r].to_vec()).collect(), field).map(|m| m.transpose());
    let kd = ScalarMatrix::from_rows(ker.iter().map(|v| v[r..].to_vec()).collect(), field).map(|m| m.transpose());
    let mut chain_start = ScalarMatrix::identity(r, field).column(0);
    let mut chain_len = 1;
    if let (Ok(kc), Ok(kd)) = (kc, kd) {
        // D_k: vectors on which T^k is defined
        let mut dk = column_basis_of(&kd);
        let mut k = 1;
        while dk.cols() > 0 {
            chain_start = dk.column(0);
            chain_len = k + 1;
            let sys = ScalarMatrix::hcat(&kc, &dk.neg()).kernel_basis();
            let alphas: Vec<Vec<Scalar>> = sys.iter().map(|v| v[..kc.cols()].to_vec()).collect();
            if alphas.is_empty() {
                break;
            }
            let next = ScalarMatrix::from_rows(alphas, field)?.transpose();
            dk = column_basis_of(&kd.mul(&next)?);
            k += 1;
        }
        let t = |d: &[Scalar]| -> Result<Vec<Scalar>> {
            let alpha = kd.solve(d).ok_or_else(|| Error::Classification("chain left the domain".into()))?;
            Ok(kc.mul_vec(&alpha))
        };
        let mut chain = vec![chain_start.clone()];
        for _ in 1..chain_len {
            let next = t(chain.last().unwrap())?;
            chain.push(next);
        }
        return assemble_kronecker(p, chain);
    }
    assemble_kronecker(p, vec![chain_start])
}

fn assemble_kronecker(p: &ExtMatrix, chain: Vec<Vec<Scalar>>) -> Result<KroneckerForm> {
    let field = p.field();
    let r = p.cols();
    let mut cols = chain.clone();
    for j in 0..r {
        if cols.len() == r {
            break;
        }
        let mut trial = cols.clone();
        trial.push(ScalarMatrix::identity(r, field).column(j));
        let m = ScalarMatrix::from_rows(trial.clone(), field)?;
        if m.rank() == trial.len() {
            cols = trial;
        }
    }
    let mut segments = vec![chain.len()];
    segments.extend(std::iter::repeat(1).take(r - chain.len()));
    if segments.iter().map(|a| a + 1).sum::<usize>() > 5 {
        return Err(Error::Classification("span exceeds the ambient space".into()));
    }
    let g_col = ScalarMatrix::from_rows(cols, field)?.transpose();
    let mut targets = Vec::new();
    let (mut col, mut offset) = (0, 0);
    for &a in &segments {
        for i in 0..a {
            targets.push(((0, col), offset + i));
            col += 1;
        }
        targets.push(((1, col - 1), offset + a));
        offset += a + 1;
    }
    let form = staircase(&segments, field);
    let witness = finish(p, ScalarMatrix::identity(2, field), g_col, &targets, &form)?;
    Ok(KroneckerForm { segments, form, witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum N1Type {
    T1,
    T2,
    T3,
    T4,
    U1,
    U2,
    U3,
}

impl N1Type {
    pub const ALL: [N1Type; 7] = [N1Type::T1, N1Type::T2, N1Type::T3, N1Type::T4, N1Type::U1, N1Type::U2, N1Type::U3];

    pub fn name(self) -> &'static str {
        match self {
            N1Type::T1 => "T1",
            N1Type::T2 => "T2",
            N1Type::T3 => "T3",
            N1Type::T4 => "T4",
            N1Type::U1 => "U1",
            N1Type::U2 => "U2",
            N1Type::U3 => "U3",
        }
    }

    pub fn is_u(self) -> bool {
        matches!(self, N1Type::U1 | N1Type::U2 | N1Type::U3)
    }

    pub fn representative(self, field: Field) -> ExtMatrix {
        let rows: [&[&str]; 3] = match self {
            N1Type::T1 => [&["e1", "e2"], &["e3", "e4"], &["e0", "0"]],
            N1Type::T2 => [&["0", "e2"], &["e3", "e4"], &["e1", "0"]],
            N1Type::T3 => [&["e4", "e2"], &["e3", "e4"], &["e1", "0"]],
            N1Type::T4 => [&["e2", "e1"], &["e4", "e3"], &["e1", "0"]],
            N1Type::U1 => [&["e1", "0"], &["0", "e2"], &["e3", "e3"]],
            N1Type::U2 => [&["e1", "0"], &["0", "e2"], &["e3", "e1"]],
            N1Type::U3 => [&["e3", "e1"], &["e2", "e3"], &["e1", "0"]],
        };
        ExtMatrix::parse(&rows, 1, 5, field).expect("static")
    }
}

impl fmt::Display for N1Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for N1Type {
    type Err = Error;

    fn from_str(s: &str) -> Result<N1Type> {
        N1Type::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| Error::Parse(format!("unknown type {s}")))
    }
}

#[derive(Clone, Debug)]
pub struct N1Class {
    pub tag: N1Type,
    /// Present whenever the degenerate rows are defined over the ground field.
    pub witness: Option<Witness>,
    pub degenerate_rows: usize,
}

/// Type of a 3×2 matrix of vectors with finitely many degenerate generalized rows.
pub fn classify_n1(n1: &ExtMatrix) -> Result<N1Class> {
    if (n1.rows(), n1.cols(), n1.grade(), n1.dim()) != (3, 2, 1, 5) {
        return Err(Error::Shape("N1 must be 3x2 of vectors in k^5".into()));
    }
    let span = n1.span_basis().0;
    // degenerate rows (s·v, t·v) sit over the roots (s : t) of this form
    let gcd = degenerate_generalized_columns(&n1.transpose())?.gcd;
    let roots = gcd.distinct_root_count().ok_or_else(|| Error::Classification("a whole line of degenerate rows".into()))?;
    let tag = match (span, roots) {
        (5, 1) => N1Type::T1,
        (4, 2) => N1Type::T2,
        (4, 1) => match family_dimension(n1)? {
            6 => N1Type::T3,
            7 => N1Type::T4,
            d => return Err(Error::Classification(format!("unexpected syzygy dimension {d}"))),
        },
        (3, 3) => N1Type::U1,
        (3, 2) => N1Type::U2,
        (3, 1) => N1Type::U3,
        _ => return Err(Error::Classification(format!("span {span} with {roots} degenerate rows"))),
    };
    let witness = n1_witness(n1, tag, &gcd)?;
    Ok(N1Class { tag, witness, degenerate_rows: roots })
}

struct Root {
    point: (Scalar, Scalar),
    multiplicity: usize,
    kernel: Vec<Scalar>,
}

fn roots_with_kernels(n1: &ExtMatrix, gcd: &BinaryForm) -> Result<Vec<Root>> {
    let field = n1.field();
    let u = vector_columns(&n1.column(0));
    let w = vector_columns(&n1.column(1));
    let mut out = Vec::new();
    for (s, t) in gcd.rational_roots()? {
        let lin = BinaryForm::linear(t.clone(), -&s);
        let mut multiplicity = 0;
        let mut power = BinaryForm::constant(field.one());
        loop {
            power = power.mul(&lin);
            if !power.divides(gcd) {
                break;
            }
            multiplicity += 1;
        }
        let l = u.scale(&t).add(&w.scale(&-&s))?;
        let mut ker = l.kernel_basis();
        if ker.len() != 1 {
            return Err(Error::Classification("degenerate rows do not form isolated points".into()));
        }
        out.push(Root { point: (s, t), multiplicity, kernel: ker.remove(0) });
    }
    Ok(out)
}

fn complete_rows(rows: &[Vec<Scalar>], field: Field) -> Result<Vec<Vec<Scalar>>> {
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    for j in 0..3 {
        let e = ScalarMatrix::identity(3, field).column(j);
        let mut trial: Vec<Vec<Scalar>> = rows.to_vec();
        trial.extend(out.iter().cloned());
        trial.push(e.clone());
        if ScalarMatrix::from_rows(trial.clone(), field)?.rank() == trial.len() {
            out.push(e);
        }
        if rows.len() + out.len() == 3 {
            break;
        }
    }
    Ok(out)
}

fn pencil_change(points: &[(Scalar, Scalar)], field: Field) -> Result<ScalarMatrix> {
    let (s, t) = &points[0];
    let second = match points.get(1) {
        Some((s2, t2)) => vec![s2.clone(), t2.clone()],
        None if !s.is_zero() => vec![field.zero(), field.one()],
        None => vec![field.one(), field.zero()],
    };
    let p = ScalarMatrix::from_rows(vec![vec![s.clone(), t.clone()], second], field)?;
    let mut g = p.inverse()?;
    if let Some((s3, t3)) = points.get(2) {
        let m = g.transpose().mul_vec(&[s3.clone(), t3.clone()]);
        let d = ScalarMatrix::from_rows(vec![vec![m[0].inv()?, field.zero()], vec![field.zero(), m[1].inv()?]], field)?;
        g = g.mul(&d)?;
    }
    Ok(g)
}

fn rows_matrix(rows: Vec<Vec<Scalar>>, field: Field) -> Result<ScalarMatrix> {
    ScalarMatrix::from_rows(rows, field)
}

fn add_row_multiple(g: &mut ScalarMatrix, target: usize, source: usize, c: &Scalar) {
    for k in 0..g.cols() {
        let v = g.get(target, k) + &(c * g.get(source, k));
        g.set(target, k, v);
    }
}

fn scale_row(g: &mut ScalarMatrix, row: usize, c: &Scalar) {
    for k in 0..g.cols() {
        let v = g.get(row, k) * c;
        g.set(row, k, v);
    }
}

fn n1_witness(n1: &ExtMatrix, tag: N1Type, gcd: &BinaryForm) -> Result<Option<Witness>> {
    let field = n1.field();
    let roots = roots_with_kernels(n1, gcd)?;
    let expected_roots = match tag {
        N1Type::T2 | N1Type::U2 => 2,
        N1Type::U1 => 3,
        _ => 1,
    };
    if roots.len() < expected_roots {
        return Ok(None);
    }
    let rep = tag.representative(field);
    let apply = |g3: &ScalarMatrix, g2: &ScalarMatrix| n1.left_scalar(g3).and_then(|x| x.right_scalar(g2));
    let single = |roots: &[Root]| -> Result<(ScalarMatrix, ScalarMatrix)> {
        let g2 = pencil_change(&[roots[0].point.clone()], field)?;
        let y = roots[0].kernel.clone();
        let mut rows = complete_rows(std::slice::from_ref(&y), field)?;
        rows.push(y);
        Ok((rows_matrix(rows, field)?, g2))
    };
    let w = match tag {
        N1Type::T1 => {
            let (g3, g2) = single(&roots)?;
            finish(n1, g3, g2, &[((0, 0), 1), ((0, 1), 2), ((1, 0), 3), ((1, 1), 4), ((2, 0), 0)], &rep)?
        }
        N1Type::T2 => {
            let g2 = pencil_change(&[roots[0].point.clone(), roots[1].point.clone()], field)?;
            let (y1, y2) = (roots[0].kernel.clone(), roots[1].kernel.clone());
            let c = complete_rows(&[y1.clone(), y2.clone()], field)?.remove(0);
            let g3 = rows_matrix(vec![y2, c, y1], field)?;
            finish(n1, g3, g2, &[((0, 1), 2), ((1, 0), 3), ((1, 1), 4), ((2, 0), 1)], &rep)?
        }
        N1Type::T3 => {
            let (mut g3, g2) = single(&roots)?;
            let x = apply(&g3, &g2)?;
            let rel = relations(&[x.get(0, 0), x.get(0, 1), x.get(1, 0), x.get(1, 1), x.get(2, 0)]);
            if rel.len() != 1 {
                return Err(Error::Classification("expected one relation modulo the special row".into()));
            }
            let rel = &rel[0];
            // push the x-component of the relation into the first column
            let kappa = &rel[4];
            if !rel[0].is_zero() {
                add_row_multiple(&mut g3, 0, 2, &kappa.checked_div(&rel[0])?);
            } else {
                add_row_multiple(&mut g3, 1, 2, &kappa.checked_div(&rel[2])?);
            }
            let r = ScalarMatrix::from_rows(vec![rel[0..2].to_vec(), rel[2..4].to_vec()], field)?;
            let d = ScalarMatrix::from_i64(&[&[1, 0], &[0, -1]], field);
            let a = d.mul(&r.transpose())?;
            let top = a.mul(&rows_matrix(vec![g3.row(0).to_vec(), g3.row(1).to_vec()], field)?)?;
            let g3 = rows_matrix(vec![top.row(0).to_vec(), top.row(1).to_vec(), g3.row(2).to_vec()], field)?;
            finish(n1, g3, g2, &[((0, 0), 4), ((0, 1), 2), ((1, 0), 3), ((2, 0), 1)], &rep)?
        }
        N1Type::T4 => {
            let (g3, g2) = single(&roots)?;
            let x = apply(&g3, &g2)?;
            let rel = relations(&[x.get(0, 1), x.get(1, 1), x.get(2, 0)]);
            if rel.len() != 1 || rel[0][2].is_zero() {
                return Err(Error::Classification("expected a row combination ending in the special vector".into()));
            }
            let (u1, u2, kappa) = (rel[0][0].clone(), rel[0][1].clone(), -&rel[0][2]);
            let r0 = g3.row(0).to_vec();
            let r1 = g3.row(1).to_vec();
            let combo: Vec<Scalar> = r0.iter().zip(&r1).map(|(a, b)| &(&u1 * a) + &(&u2 * b)).collect();
            let other = if !u1.is_zero() { r1 } else { r0 };
            let last: Vec<Scalar> = g3.row(2).iter().map(|v| v * &kappa).collect();
            let g3 = rows_matrix(vec![combo, other, last], field)?;
            finish(n1, g3, g2, &[((0, 0), 2), ((0, 1), 1), ((1, 0), 4), ((1, 1), 3)], &rep)?
        }
        N1Type::U1 => {
            let pts: Vec<(Scalar, Scalar)> = roots.iter().map(|r| r.point.clone()).collect();
            let g2 = pencil_change(&pts, field)?;
            let g3 = rows_matrix(roots.iter().map(|r| r.kernel.clone()).collect(), field)?;
            finish(n1, g3, g2, &[((0, 0), 1), ((1, 1), 2), ((2, 0), 3)], &rep)?
        }
        N1Type::U2 => {
            let (dbl, sim) = if roots[0].multiplicity > roots[1].multiplicity { (&roots[0], &roots[1]) } else { (&roots[1], &roots[0]) };
            let g2 = pencil_change(&[dbl.point.clone(), sim.point.clone()], field)?;
            let c = complete_rows(&[dbl.kernel.clone(), sim.kernel.clone()], field)?.remove(0);
            let mut g3 = rows_matrix(vec![dbl.kernel.clone(), sim.kernel.clone(), c], field)?;
            let x = apply(&g3, &g2)?;
            let (v1, v2) = (x.get(0, 0).clone(), x.get(1, 1).clone());
            let v3 = [x.get(2, 0), x.get(2, 1)]
                .into_iter()
                .find(|v| vector_columns(&[v1.clone(), v2.clone(), (*v).clone()]).rank() == 3)
                .ok_or_else(|| Error::Classification("span too small".into()))?
                .clone();
            let basis = vector_columns(&[v1, v2, v3]);
            let cu = basis.solve(&x.get(2, 0).coords(1)).ok_or_else(|| Error::Classification("entry outside span".into()))?;
            let cw = basis.solve(&x.get(2, 1).coords(1)).ok_or_else(|| Error::Classification("entry outside span".into()))?;
            add_row_multiple(&mut g3, 2, 0, &-&cu[0]);
            add_row_multiple(&mut g3, 2, 1, &-&cw[1]);
            scale_row(&mut g3, 0, &cw[0]);
            finish(n1, g3, g2, &[((0, 0), 1), ((1, 1), 2), ((2, 0), 3)], &rep)?
        }
        N1Type::U3 => {
            let g2 = pencil_change(&[roots[0].point.clone()], field)?;
            let x = n1.right_scalar(&g2)?;
            let a1 = vector_columns(&x.column(0));
            let a2 = vector_columns(&x.column(1));
            let mut j = ScalarMatrix::zeros(3, 3, field);
            for k in 0..3 {
                let col = a1.solve(&a2.column(k)).ok_or_else(|| Error::Classification("first column map is not injective".into()))?;
                for (i, v) in col.into_iter().enumerate() {
                    j.set(i, k, v);
                }
            }
            let j2 = j.mul(&j)?;
            let start = (0..3)
                .map(|k| ScalarMatrix::identity(3, field).column(k))
                .find(|e| j2.mul_vec(e).iter().any(|c| !c.is_zero()))
                .ok_or_else(|| Error::Classification("nilpotent part is not a single block".into()))?;
            let g3 = rows_matrix(vec![j.mul_vec(&start), start.clone(), j2.mul_vec(&start)], field)?;
            finish(n1, g3, g2, &[((0, 0), 3), ((0, 1), 1), ((1, 0), 2)], &rep)?
        }
    };
    Ok(Some(w))
}
