//! Degree-3 syzygies `Γ` of a matrix of vectors and the families `M = Γ·(p|q)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exterior::{binomial, blades_of_grade, Multivector};
use crate::extmat::{ExtMatrix, ScalarMatrix};
use crate::field::{Field, Scalar};
use crate::monad::check_m_subbundle;
use crate::sample::rng_for;

/// A basis of `{ c ∈ (Λ³V)² : A ∧ c = 0 }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygySpace {
    source: ExtMatrix,
    columns: Vec<[Multivector; 2]>,
}

impl SyzygySpace {
    /// Wraps a given list of columns after checking that they are syzygies.
    pub fn from_columns(source: ExtMatrix, gamma: &ExtMatrix) -> Result<SyzygySpace> {
        if gamma.rows() != 2 || gamma.grade() != 3 {
            return Err(Error::Shape("Γ must be 2 rows of 3-forms".into()));
        }
        if !source.ext_mul(gamma)?.is_zero() {
            return Err(Error::Precondition("columns are not syzygies of the source".into()));
        }
        let columns = (0..gamma.cols()).map(|j| [gamma.get(0, j).clone(), gamma.get(1, j).clone()]).collect();
        Ok(SyzygySpace { source, columns })
    }

    pub fn source(&self) -> &ExtMatrix {
        &self.source
    }

    pub fn columns(&self) -> &[[Multivector; 2]] {
        &self.columns
    }

    pub fn dimension(&self) -> usize {
        self.columns.len()
    }

    /// The 2×(r+1) matrix `Γ`.
    pub fn gamma(&self) -> ExtMatrix {
        let f = self.source.field();
        let mut g = ExtMatrix::zeros(2, self.columns.len(), 3, self.source.dim(), f);
        for (j, c) in self.columns.iter().enumerate() {
            g.set(0, j, c[0].clone()).unwrap();
            g.set(1, j, c[1].clone()).unwrap();
        }
        g
    }

    /// 20×(r+1) coordinate matrix of the columns.
    pub fn coordinate_matrix(&self) -> ScalarMatrix {
        column_coordinates(&self.columns, self.source.field())
    }

    /// Rank of the stacked coordinates equals both individual ranks.
    pub fn same_span(&self, other: &[[Multivector; 2]]) -> bool {
        let a = self.coordinate_matrix();
        let b = column_coordinates(other, self.source.field());
        let r = ScalarMatrix::hcat(&a, &b).rank();
        r == a.rank() && r == b.rank()
    }

    /// `M = Γ·(p | q)`.
    pub fn m_from_coeffs(&self, p: &[Scalar], q: &[Scalar]) -> Result<ExtMatrix> {
        if p.len() != self.dimension() || q.len() != self.dimension() {
            return Err(Error::Shape(format!("expected {} coefficients", self.dimension())));
        }
        let f = self.source.field();
        let mut m = ExtMatrix::zeros(2, 2, 3, self.source.dim(), f);
        for (col, coeffs) in [p, q].into_iter().enumerate() {
            for row in 0..2 {
                let mut acc = Multivector::zero(self.source.dim(), self.source.variance(), f);
                for (c, g) in coeffs.iter().zip(&self.columns) {
                    acc.add_scaled(c, &g[row]);
                }
                m.set(row, col, acc)?;
            }
        }
        Ok(m)
    }

    /// `(p, q)` with `M = Γ·(p | q)`, if `M` lies in the family.
    pub fn coefficients_of(&self, m: &ExtMatrix) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
        let a = self.coordinate_matrix();
        let mut out = Vec::new();
        for col in 0..2 {
            let target = column_coordinates(&[[m.get(0, col).clone(), m.get(1, col).clone()]], self.source.field()).column(0);
            out.push(a.solve(&target)?);
        }
        let q = out.pop()?;
        let p = out.pop()?;
        Some((p, q))
    }
}

fn column_coordinates(cols: &[[Multivector; 2]], field: Field) -> ScalarMatrix {
    let mut m = ScalarMatrix::zeros(20, cols.len(), field);
    for (j, c) in cols.iter().enumerate() {
        for (half, x) in c.iter().enumerate() {
            for (i, v) in x.coords(3).into_iter().enumerate() {
                m.set(half * 10 + i, j, v);
            }
        }
    }
    m
}

/// The exact kernel of `(Λ³V)² → (Λ⁴V)^rows, c ↦ A ∧ c`.
pub fn syzygy_space(a: &ExtMatrix) -> Result<SyzygySpace> {
    if a.cols() != 2 || a.grade() != 1 || a.dim() != 5 {
        return Err(Error::Shape("syzygies are computed for r×2 matrices of vectors in k^5".into()));
    }
    let field = a.field();
    let b3 = blades_of_grade(5, 3);
    let b4 = blades_of_grade(5, 4);
    let mut sys = ScalarMatrix::zeros(a.rows() * b4.len(), 2 * b3.len(), field);
    for i in 0..a.rows() {
        for k in 0..2 {
            for (j, b) in b3.iter().enumerate() {
                let e = Multivector::blade(5, a.variance(), field, *b);
                let img = a.get(i, k) ^ &e;
                for (r, b4r) in b4.iter().enumerate() {
                    sys.set(i * b4.len() + r, k * b3.len() + j, img.coefficient(*b4r));
                }
            }
        }
    }
    let columns = sys
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let n = binomial(5, 3);
            [
                Multivector::from_coords(5, a.variance(), field, 3, &v[..n]),
                Multivector::from_coords(5, a.variance(), field, 3, &v[n..]),
            ]
        })
        .collect();
    Ok(SyzygySpace { source: a.clone(), columns })
}

pub fn family_dimension(a: &ExtMatrix) -> Result<usize> {
    Ok(syzygy_space(a)?.dimension())
}

/// Seeded search over coefficients in `{-2..2}` for an `M` in the family
/// that defines a subbundle; returns the lowest-index success.
pub fn subbundle_exists_in_family(a: &ExtMatrix, budget: usize, seed: u64) -> Result<Option<ExtMatrix>> {
    let g = syzygy_space(a)?;
    let field = a.field();
    let found = (0..budget).into_par_iter().find_map_first(|idx| {
        let mut rng = rng_for(seed, idx as u64);
        let p: Vec<Scalar> = (0..g.dimension()).map(|_| field.random(&mut rng, 2)).collect();
        let q: Vec<Scalar> = (0..g.dimension()).map(|_| field.random(&mut rng, 2)).collect();
        let m = g.m_from_coeffs(&p, &q).ok()?;
        check_m_subbundle(&m).ok()?.then_some(m)
    });
    Ok(found)
}
