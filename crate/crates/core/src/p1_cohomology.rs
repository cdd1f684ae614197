//! Hypercohomology on `P¹` of the monad restricted to a line, by a Čech
//! double complex of Laurent monomials on the charts `s ≠ 0`, `t ≠ 0`.
//!
//! A section of `O(a)` over `U₀∩U₁` is spanned by `s^i t^{a-i}`, `i ∈ ℤ`;
//! on `U₀` we need `i ≤ a`, on `U₁` we need `i ≥ 0`. Every differential only
//! raises `i`, and outside `[min(0, a_min+1), max(-1, a_max)]` each Čech row
//! is an isomorphism, so any window containing that interval is exact.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extmat::{sparse_rank, sparse_rank_mod_p, BinaryForm};
use crate::field::{Field, Scalar};
use crate::lines::PlueckerLine;
use crate::monad::Monad;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplexP1 {
    field: Field,
    degrees: [Vec<i64>; 3],
    d: [Vec<Vec<BinaryForm>>; 2],
}

impl GradedComplexP1 {
    /// Terms `D⁻¹, D⁰, D¹` as line-bundle degrees; `d[k]` maps term `k` to `k+1`.
    pub fn new(field: Field, degrees: [Vec<i64>; 3], d: [Vec<Vec<BinaryForm>>; 2]) -> Result<GradedComplexP1> {
        for k in 0..2 {
            if d[k].len() != degrees[k + 1].len() || d[k].iter().any(|r| r.len() != degrees[k].len()) {
                return Err(Error::Shape(format!("differential {} has the wrong shape", k as i64 - 1)));
            }
            for (i, row) in d[k].iter().enumerate() {
                for (j, f) in row.iter().enumerate() {
                    let want = degrees[k + 1][i] - degrees[k][j];
                    if !f.is_zero() && f.degree() as i64 != want {
                        return Err(Error::Grade(format!("entry ({i},{j}) of d{} has degree {}, expected {want}", k as i64 - 1, f.degree())));
                    }
                }
            }
        }
        Ok(GradedComplexP1 { field, degrees, d })
    }

    /// `[0 → ⊕O(a) → 0]`.
    pub fn single(field: Field, degrees: Vec<i64>) -> GradedComplexP1 {
        let n = degrees.len();
        GradedComplexP1 { field, degrees: [vec![], degrees, vec![]], d: [vec![vec![]; n], vec![]] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degrees(&self) -> &[Vec<i64>; 3] {
        &self.degrees
    }

    pub fn shape(&self) -> [usize; 3] {
        [self.degrees[0].len(), self.degrees[1].len(), self.degrees[2].len()]
    }

    pub fn differential(&self, k: usize) -> &[Vec<BinaryForm>] {
        &self.d[k]
    }

    pub fn twist(&self, d: i64) -> GradedComplexP1 {
        let mut c = self.clone();
        for term in c.degrees.iter_mut() {
            for a in term.iter_mut() {
                *a += d;
            }
        }
        c
    }

    pub fn composite_is_zero(&self) -> bool {
        let (d0, d1) = (&self.d[0], &self.d[1]);
        d1.iter().all(|row| {
            (0..self.degrees[0].len()).all(|j| {
                let mut acc: Option<BinaryForm> = None;
                for (k, f) in row.iter().enumerate() {
                    let g = &d0[k][j];
                    if f.is_zero() || g.is_zero() {
                        continue;
                    }
                    let p = f.mul(g);
                    acc = Some(match acc {
                        None => p,
                        Some(a) => a.add(&p).expect("homogeneous"),
                    });
                }
                acc.map(|a| a.is_zero()).unwrap_or(true)
            })
        })
    }

    fn degree_range(&self) -> Option<(i64, i64)> {
        let all = self.degrees.iter().flatten();
        Some((*all.clone().min()?, *all.max()?))
    }
}

/// Laurent indices `i` from `min(0, a_min+1) - margin` to `max(-1, a_max) + margin`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CechWindow {
    pub margin: i64,
}

impl Default for CechWindow {
    fn default() -> CechWindow {
        CechWindow { margin: 0 }
    }
}

impl CechWindow {
    pub fn widened(self, by: i64) -> CechWindow {
        CechWindow { margin: self.margin + by }
    }

    fn interval(self, c: &GradedComplexP1) -> (i64, i64) {
        let (lo, hi) = c.degree_range().unwrap_or((0, 0));
        ((lo + 1).min(0) - self.margin, hi.max(-1) + self.margin)
    }
}

pub const MAX_TWIST: i64 = 4;

/// Basis of one total degree: `(i, p, q, sheaf, chart)` sorted by `i`,
/// with a dense position table.
struct TotalBasis {
    lo: i64,
    width: usize,
    sheaves: usize,
    table: Vec<u32>,
    elements: Vec<(i64, usize, usize, usize, usize)>,
}

impl TotalBasis {
    fn slot(&self, (i, _, q, j, chart): (i64, usize, usize, usize, usize)) -> Option<usize> {
        if i < self.lo || j >= self.sheaves {
            return None;
        }
        let off = (i - self.lo) as usize;
        if off >= self.width {
            return None;
        }
        // within one total degree `q` determines `p`
        Some(((off * 2 + q) * self.sheaves + j) * 3 + chart)
    }

    fn get(&self, key: (i64, usize, usize, usize, usize)) -> Option<u32> {
        self.slot(key).map(|s| self.table[s]).filter(|&k| k != u32::MAX)
    }
}

fn chart_range(a: i64, chart: usize, lo: i64, hi: i64) -> (i64, i64) {
    match chart {
        0 => (lo, a.min(hi)),
        1 => (lo.max(0), hi),
        _ => (lo, hi),
    }
}

fn total_basis(c: &GradedComplexP1, n: i64, lo: i64, hi: i64) -> TotalBasis {
    let sheaves = c.degrees.iter().map(Vec::len).max().unwrap_or(0);
    let width = (hi - lo + 1).max(0) as usize;
    let mut basis = TotalBasis { lo, width, sheaves, table: vec![u32::MAX; width * 2 * sheaves * 3], elements: Vec::new() };
    for i in lo..=hi {
        for q in 0..2usize {
            let p = n - q as i64;
            if !(-1..=1).contains(&p) {
                continue;
            }
            let pi = (p + 1) as usize;
            for (j, &a) in c.degrees[pi].iter().enumerate() {
                let charts: &[usize] = if q == 0 { &[0, 1] } else { &[2] };
                for &chart in charts {
                    let (from, to) = chart_range(a, chart, lo, hi);
                    if (from..=to).contains(&i) {
                        let e = (i, pi, q, j, chart);
                        let s = basis.slot(e).expect("inside the window");
                        basis.table[s] = basis.elements.len() as u32;
                        basis.elements.push(e);
                    }
                }
            }
        }
    }
    basis
}

/// Nonzero entries of `d[k]` grouped by source summand: `(row, degree, [(k, c_k)])`.
type Entries = Vec<Vec<(usize, i64, Vec<(i64, Scalar)>)>>;

fn entries(c: &GradedComplexP1) -> [Entries; 2] {
    let by_source = |k: usize| -> Entries {
        (0..c.degrees[k].len())
            .map(|j| {
                c.d[k]
                    .iter()
                    .enumerate()
                    .filter(|(_, row)| !row[j].is_zero())
                    .map(|(r, row)| {
                        let f = &row[j];
                        let coeffs = f.coeffs().iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k as i64, x.clone())).collect();
                        (r, f.degree() as i64, coeffs)
                    })
                    .collect()
            })
            .collect()
    };
    [by_source(0), by_source(1)]
}

/// Columns of the total differential `T^n → T^{n+1}`: `d_h + (-1)^p δ`.
/// Targets never collide: horizontal images land in term `p+1`, the Čech
/// image in term `p`, and distinct coefficients of one entry shift `i`.
fn total_differential<T: Clone>(
    e: &[Entries; 2],
    src: &TotalBasis,
    dst: &TotalBasis,
    hi: i64,
    conv: impl Fn(&Scalar) -> T,
    unit: impl Fn(bool) -> T,
) -> Vec<Vec<(u32, T)>> {
    src.elements
        .iter()
        .map(|&(i, pi, q, j, chart)| {
            let mut col: Vec<(u32, T)> = Vec::with_capacity(8);
            if pi < 2 {
                for (r, delta, coeffs) in &e[pi][j] {
                    for (k, coef) in coeffs {
                        let target = i + delta - k;
                        if target > hi {
                            continue;
                        }
                        if let Some(idx) = dst.get((target, pi + 1, q, *r, chart)) {
                            col.push((idx, conv(coef)));
                        }
                    }
                }
            }
            if q == 0 {
                if let Some(idx) = dst.get((i, pi, 1, j, 2)) {
                    // (-1)^p with p = pi - 1, and -1 more on the first chart
                    col.push((idx, unit((pi % 2 == 1) == (chart == 0))));
                }
            }
            col.sort_unstable_by_key(|x| x.0);
            col
        })
        .collect()
}

/// `(h⁰, h¹)` of the middle hypercohomology inside a fixed window.
pub fn hyper_h_in_window(c: &GradedComplexP1, d: i64, window: CechWindow) -> Result<(usize, usize)> {
    if d.abs() > MAX_TWIST {
        return Err(Error::Precondition(format!("twist {d} outside [-{MAX_TWIST}, {MAX_TWIST}]")));
    }
    if window.margin < 0 {
        return Err(Error::Window(format!("negative margin {}", window.margin)));
    }
    let tw = c.twist(d);
    let (lo, hi) = window.interval(&tw);
    let bases: Vec<TotalBasis> = (-1..=2).map(|n| total_basis(&tw, n, lo, hi)).collect();
    let e = entries(&tw);
    let ranks: Vec<usize> = (0..3)
        .map(|k| {
            let dim = bases[k + 1].elements.len();
            match tw.field {
                Field::Prime(p) => {
                    let conv = |x: &Scalar| x.residue().expect("prime field");
                    let cols = total_differential(&e, &bases[k], &bases[k + 1], hi, conv, |neg| if neg { p - 1 } else { 1 });
                    sparse_rank_mod_p(cols, p, dim)
                }
                Field::Rationals => {
                    let f = tw.field;
                    let cols = total_differential(&e, &bases[k], &bases[k + 1], hi, Scalar::clone, |neg| f.from_i64(if neg { -1 } else { 1 }));
                    sparse_rank(cols, f, dim)
                }
            }
        })
        .collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.elements.len()).collect();
    let h = |n: usize| -> i64 {
        let incoming = if n == 0 { 0 } else { ranks[n - 1] };
        let outgoing = if n == 3 { 0 } else { ranks[n] };
        dims[n] as i64 - incoming as i64 - outgoing as i64
    };
    if h(0) != 0 || h(3) != 0 {
        return Err(Error::Integrity(format!("hypercohomology in degrees -1/2: {} and {}", h(0), h(3))));
    }
    Ok((h(1) as usize, h(2) as usize))
}

/// Computes at the default window and again four steps wider; on a mismatch
/// widens once more before giving up.
pub fn hyper_h(c: &GradedComplexP1, d: i64) -> Result<(usize, usize)> {
    hyper_h_checked(c, d, CechWindow::default())
}

pub fn hyper_h_checked(c: &GradedComplexP1, d: i64, window: CechWindow) -> Result<(usize, usize)> {
    let a = hyper_h_in_window(c, d, window)?;
    if hyper_h_in_window(c, d, window.widened(4))? == a {
        return Ok(a);
    }
    let b = hyper_h_in_window(c, d, window.widened(8))?;
    if hyper_h_in_window(c, d, window.widened(12))? == b {
        return Ok(b);
    }
    Err(Error::Window(format!("cohomology keeps changing past margin {}", window.margin + 12)))
}

/// `2O(-1) → 2V^∨⊗O → 2O(1) ⊕ 2O` on `ℓ = P(span(x, y))`, points `s x + t y`:
/// the first map is `p ↦ ⋆(p ∧ m_ij)`, the second is minus evaluation at `p`
/// on top of the pairing with the entries of `N`.
pub fn restrict_monad_complex(monad: &Monad, line: &PlueckerLine) -> Result<GradedComplexP1> {
    let field = monad.field();
    if line.field() != field {
        return Err(Error::Dimension("line and monad over different fields".into()));
    }
    let (x, y) = (line.x(), line.y());
    let zero = |deg| BinaryForm::zero(field, deg);
    let mut d0 = vec![vec![zero(1); 2]; 10];
    for i in 0..2 {
        for j in 0..2 {
            let m = monad.m().get(i, j);
            let cx = x.wedge(m)?.star().coords(1);
            let cy = y.wedge(m)?.star().coords(1);
            for k in 0..5 {
                d0[i * 5 + k][j] = BinaryForm::linear(cx[k].clone(), cy[k].clone());
            }
        }
    }
    let mut d1 = vec![vec![zero(0); 10]; 4];
    let (xc, yc) = (x.coords(1), y.coords(1));
    for i in 0..2 {
        for k in 0..5 {
            d1[i][i * 5 + k] = BinaryForm::linear(-&xc[k], -&yc[k]);
        }
        for j in 0..2 {
            for (k, c) in monad.n().get(i, j).coords(1).into_iter().enumerate() {
                d1[2 + i][j * 5 + k] = BinaryForm::constant(c);
            }
        }
    }
    GradedComplexP1::new(field, [vec![-1, -1], vec![0; 10], vec![1, 1, 0, 0]], [d0, d1])
}

pub const TWISTS: std::ops::RangeInclusive<i64> = -4..=3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    /// Descending.
    pub splitting: [i64; 4],
    /// `(d, h⁰, h¹)` for `d ∈ [-4, 3]`.
    pub table: Vec<(i64, usize, usize)>,
}

impl SplittingReport {
    pub fn h1_at(&self, d: i64) -> usize {
        self.table.iter().find(|e| e.0 == d).map(|e| e.2).expect("twist in table")
    }
}

pub fn splitting_type(monad: &Monad, line: &PlueckerLine) -> Result<SplittingReport> {
    splitting_type_with(monad, line, CechWindow::default())
}

/// Reads the degrees off `h⁰(ℰ_ℓ(d)) = Σ max(a_i + d + 1, 0)`.
pub fn splitting_type_with(monad: &Monad, line: &PlueckerLine, window: CechWindow) -> Result<SplittingReport> {
    let c = restrict_monad_complex(monad, line)?;
    let mut table = Vec::new();
    for d in TWISTS {
        let (h0, h1) = hyper_h_checked(&c, d, window)?;
        if h0 as i64 - h1 as i64 != 4 * (d + 1) {
            return Err(Error::Integrity(format!("χ(E(d)) = {} at d = {d}", h0 as i64 - h1 as i64)));
        }
        table.push((d, h0, h1));
    }
    let h0 = |d: i64| table[(d + 4) as usize].1 as i64;
    if h0(-4) != 0 {
        return Err(Error::Integrity("a summand of degree above 3".into()));
    }
    let mut splitting = Vec::new();
    let mut above = 0;
    for v in (-3..=3).rev() {
        let at_least = h0(-v) - h0(-v - 1);
        for _ in above..at_least {
            splitting.push(v);
        }
        above = above.max(at_least);
    }
    if splitting.len() != 4 || splitting.iter().sum::<i64>() != 0 {
        return Err(Error::Integrity(format!("h⁰ table {table:?} gives degrees {splitting:?}")));
    }
    for d in TWISTS {
        let predicted: i64 = splitting.iter().map(|a| (a + d + 1).max(0)).sum();
        if predicted != h0(d) {
            return Err(Error::Integrity(format!("degrees {splitting:?} do not reproduce h⁰ at d = {d}")));
        }
    }
    Ok(SplittingReport { splitting: splitting.try_into().expect("four parts"), table })
}
