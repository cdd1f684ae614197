//! Dense matrices over an exact field with Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> ScalarMatrix {
        ScalarMatrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: Field) -> Result<ScalarMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if data.iter().any(|x| x.field() != field) {
            return Err(Error::Dimension("entry from another field".into()));
        }
        Ok(ScalarMatrix { rows: r, cols: c, field, data })
    }

    pub fn from_i64(rows: &[&[i64]], field: Field) -> ScalarMatrix {
        let data = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        ScalarMatrix::from_rows(data, field).expect("ragged literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut t = ScalarMatrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn neg(&self) -> ScalarMatrix {
        ScalarMatrix { data: self.data.iter().map(|x| -x).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> ScalarMatrix {
        ScalarMatrix { data: self.data.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("sum of differently shaped matrices".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ScalarMatrix { data, ..self.clone() })
    }

    pub fn hcat(a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(a.rows, b.rows);
        let mut m = ScalarMatrix::zeros(a.rows, a.cols + b.cols, a.field);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
            for j in 0..b.cols {
                m.set(i, a.cols + j, b.get(i, j).clone());
            }
        }
        m
    }

    pub fn vcat(a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(a.cols, b.cols);
        let mut data = a.data.clone();
        data.extend(b.data.iter().cloned());
        ScalarMatrix { rows: a.rows + b.rows, cols: a.cols, field: a.field, data }
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = ScalarMatrix::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * m.cols + j;
                        m.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ScalarMatrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols, self.field);
        let m = ScalarMatrix::from_rows(rows, self.field).unwrap_or_else(|_| ScalarMatrix::zeros(0, self.cols, self.field));
        let m = if self.rows == 0 { ScalarMatrix::zeros(0, self.cols, self.field) } else { m };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{ k : S k = 0 }`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&f| {
                let mut k = vec![self.field.zero(); self.cols];
                k[f] = self.field.one();
                for (row, &p) in pivots.iter().enumerate() {
                    k[p] = -r.get(row, f);
                }
                k
            })
            .collect()
    }

    /// A basis of `{ f : f S = 0 }` as row vectors.
    pub fn cokernel_functionals(&self) -> Vec<Vec<Scalar>> {
        self.transpose().kernel_basis()
    }

    /// Some `x` with `S x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let col = ScalarMatrix::from_rows(b.iter().map(|x| vec![x.clone()]).collect(), self.field).ok()?;
        let col = if self.rows == 0 { ScalarMatrix::zeros(0, 1, self.field) } else { col };
        let aug = ScalarMatrix::hcat(self, &col);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<ScalarMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = ScalarMatrix::hcat(self, &ScalarMatrix::identity(n, self.field));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = ScalarMatrix::zeros(n, n, self.field);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let inv = a[c][c].inv()?;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= &t;
                }
            }
        }
        Ok(det)
    }
}

/// Row reduces `rows` to reduced echelon form, returning the pivot columns.
pub(crate) fn rref_in_place(rows: &mut [Vec<Scalar>], cols: usize, field: Field) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let candidate = match field {
            Field::Rationals => (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].weight()),
            Field::Prime(_) => (r..rows.len()).find(|&i| !rows[i][c].is_zero()),
        };
        let Some(p) = candidate else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for k in c..cols {
                if !pivot_row[k].is_zero() {
                    let t = &f * &pivot_row[k];
                    row[k] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Sparse vector over a prime field: sorted `(index, residue)` pairs.
pub type SparseVec = Vec<(u32, u32)>;

/// Rank of the span of sparse vectors over `F_p`, eliminating on the
/// largest index so that banded inputs stay sparse.
pub fn sparse_rank_mod_p(vectors: Vec<SparseVec>, p: u32, dim: usize) -> usize {
    let mut pivot_of: Vec<Option<SparseVec>> = vec![None; dim];
    let mut rank = 0;
    let p64 = p as u64;
    let mut scratch: SparseVec = Vec::new();
    for mut v in vectors {
        loop {
            let Some(&(lead, lc)) = v.last() else { break };
            match &pivot_of[lead as usize] {
                None => {
                    let inv = crate::field::inv_mod(lc, p) as u64;
                    for e in v.iter_mut() {
                        e.1 = ((e.1 as u64 * inv) % p64) as u32;
                    }
                    pivot_of[lead as usize] = Some(v);
                    rank += 1;
                    break;
                }
                Some(piv) => {
                    // v -= lc * piv, where piv has leading coefficient 1
                    let f = (p - lc) as u64;
                    scratch.clear();
                    let (mut i, mut j) = (0, 0);
                    while i < v.len() || j < piv.len() {
                        if j == piv.len() || (i < v.len() && v[i].0 < piv[j].0) {
                            scratch.push(v[i]);
                            i += 1;
                        } else if i == v.len() || piv[j].0 < v[i].0 {
                            scratch.push((piv[j].0, ((piv[j].1 as u64 * f) % p64) as u32));
                            j += 1;
                        } else {
                            let x = ((v[i].1 as u64 + piv[j].1 as u64 * f) % p64) as u32;
                            if x != 0 {
                                scratch.push((v[i].0, x));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    std::mem::swap(&mut v, &mut scratch);
                }
            }
        }
    }
    rank
}

/// Rank of sparse columns over an arbitrary field, same strategy as
/// [`sparse_rank_mod_p`].
pub fn sparse_rank(vectors: Vec<Vec<(u32, Scalar)>>, field: Field, dim: usize) -> usize {
    if let Field::Prime(p) = field {
        let converted = vectors
            .into_iter()
            .map(|v| v.into_iter().map(|(i, x)| (i, x.residue().unwrap())).filter(|e| e.1 != 0).collect())
            .collect();
        return sparse_rank_mod_p(converted, p, dim);
    }
    let mut pivot_of: Vec<Option<Vec<(u32, Scalar)>>> = vec![None; dim];
    let mut rank = 0;
    for mut v in vectors {
        v.retain(|e| !e.1.is_zero());
        loop {
            let Some((lead, lc)) = v.last().cloned() else { break };
            match &pivot_of[lead as usize] {
                None => {
                    let inv = lc.inv().expect("nonzero");
                    for e in v.iter_mut() {
                        e.1 = &e.1 * &inv;
                    }
                    pivot_of[lead as usize] = Some(v);
                    rank += 1;
                    break;
                }
                Some(piv) => {
                    let mut out = Vec::with_capacity(v.len() + piv.len());
                    let (mut i, mut j) = (0, 0);
                    while i < v.len() || j < piv.len() {
                        if j == piv.len() || (i < v.len() && v[i].0 < piv[j].0) {
                            out.push(v[i].clone());
                            i += 1;
                        } else if i == v.len() || piv[j].0 < v[i].0 {
                            out.push((piv[j].0, -(&piv[j].1 * &lc)));
                            j += 1;
                        } else {
                            let x = &v[i].1 - &(&piv[j].1 * &lc);
                            if !x.is_zero() {
                                out.push((v[i].0, x));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    v = out;
                }
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_kernel_cokernel_examples() {
        let q = Field::Rationals;
        let a = ScalarMatrix::from_i64(&[&[1, 0], &[0, 0]], q);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.kernel_basis(), vec![vec![q.zero(), q.one()]]);
        assert_eq!(a.cokernel_functionals(), vec![vec![q.zero(), q.one()]]);
        let z = ScalarMatrix::zeros(2, 3, q);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis().len(), 3);
    }

    #[test]
    fn inverse_and_det() {
        let f = Field::Prime(11);
        let a = ScalarMatrix::from_i64(&[&[2, 1], &[7, 3]], f);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ScalarMatrix::identity(2, f));
        assert_eq!(a.det().unwrap(), f.from_i64(-1));
        assert!(ScalarMatrix::from_i64(&[&[1, 2], &[2, 4]], Field::Rationals).inverse().is_err());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let q = Field::Rationals;
        let a = ScalarMatrix::from_i64(&[&[1, 1], &[2, 2]], q);
        let x = a.solve(&[q.from_i64(3), q.from_i64(6)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q.from_i64(3), q.from_i64(6)]);
        assert!(a.solve(&[q.from_i64(3), q.from_i64(5)]).is_none());
    }

    #[test]
    fn sparse_rank_matches_dense() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for p in [2u32, 5, 101] {
            let f = Field::Prime(p);
            for _ in 0..50 {
                let (r, c) = (rng.gen_range(1..9), rng.gen_range(1..9));
                let mut m = ScalarMatrix::zeros(r, c, f);
                for i in 0..r {
                    for j in 0..c {
                        if rng.gen_bool(0.4) {
                            m.set(i, j, f.random(&mut rng, 3));
                        }
                    }
                }
                let cols: Vec<SparseVec> = (0..c)
                    .map(|j| (0..r).filter_map(|i| m.get(i, j).residue().filter(|&x| x != 0).map(|x| (i as u32, x))).collect())
                    .collect();
                assert_eq!(sparse_rank_mod_p(cols, p, r), m.rank());
                let qcols = (0..c)
                    .map(|j| (0..r).map(|i| (i as u32, Field::Rationals.from_i64(m.get(i, j).to_i64().unwrap()))).collect())
                    .collect();
                let qm = ScalarMatrix::from_rows(
                    (0..r).map(|i| (0..c).map(|j| Field::Rationals.from_i64(m.get(i, j).to_i64().unwrap())).collect()).collect(),
                    Field::Rationals,
                )
                .unwrap();
                assert_eq!(sparse_rank(qcols, Field::Rationals, r), qm.rank());
            }
        }
    }
}
