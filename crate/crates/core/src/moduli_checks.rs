//! Smoothness, stabilizers, Hilbert–Mumford weights, strata statistics and
//! the determinant quadric.
//!
//! Jacobian coordinates. Equations: `f[(r·2+c)·5 + k]` is the `k`-th `Λ⁴`
//! coordinate of `(N∧M)_rc = Σ_j n_rj ∧ m_jc`. Variables: the first 20 are
//! the coordinates of `n11, n12, n21, n22` (five each), the last 40 those of
//! `m11, m12, m21, m22` (ten each).

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dual::build_mtilde;
use crate::error::{Error, Result};
use crate::exterior::{Multivector, Variance};
use crate::extmat::{coords_matrix, ExtMatrix, ScalarMatrix};
use crate::field::{Field, Scalar};
use crate::monad::{check_m_subbundle, check_n_surjective, Monad};
use crate::sample::{random_coefficients, random_ext_matrix, random_invertible, rng_for};
use crate::syzygy::syzygy_space;

mod fast;

fn check_pair(m: &ExtMatrix, n: &ExtMatrix) -> Result<()> {
    if (m.rows(), m.cols(), m.grade(), m.dim()) != (2, 2, 3, 5) || (n.rows(), n.cols(), n.grade(), n.dim()) != (2, 2, 1, 5) {
        return Err(Error::Shape("expects M 2x2 of 3-forms and N 2x2 of vectors on k^5".into()));
    }
    if m.field() != n.field() {
        return Err(Error::Dimension("M and N over different fields".into()));
    }
    Ok(())
}

pub fn jacobian(m: &ExtMatrix, n: &ExtMatrix) -> Result<ScalarMatrix> {
    check_pair(m, n)?;
    let field = m.field();
    let mut j = ScalarMatrix::zeros(20, 60, field);
    let mut put = |r: usize, c: usize, var: usize, form: &Multivector| {
        for (k, x) in form.coords(4).into_iter().enumerate() {
            j.set((r * 2 + c) * 5 + k, var, x);
        }
    };
    for r in 0..2 {
        for c in 0..2 {
            for k in 0..2 {
                for i in 0..5 {
                    let e = Multivector::basis_vector(5, Variance::Primal, field, i);
                    put(r, c, (r * 2 + k) * 5 + i, &(&e ^ m.get(k, c)));
                }
                for s in 0..10 {
                    let mut coords = vec![field.zero(); 10];
                    coords[s] = field.one();
                    let e = Multivector::from_coords(5, Variance::Primal, field, 3, &coords);
                    put(r, c, 20 + (k * 2 + c) * 10 + s, &(n.get(r, k) ^ &e));
                }
            }
        }
    }
    Ok(j)
}

/// The columns of [`jacobian`] belonging to the entries of `M`.
pub fn j1_block(m: &ExtMatrix, n: &ExtMatrix) -> Result<ScalarMatrix> {
    let j = jacobian(m, n)?;
    let mut b = ScalarMatrix::zeros(20, 40, j.field());
    for r in 0..20 {
        for c in 0..40 {
            b.set(r, c, j.get(r, 20 + c).clone());
        }
    }
    Ok(b)
}

fn sl2_basis(field: Field) -> [ScalarMatrix; 3] {
    [
        ScalarMatrix::from_i64(&[&[1, 0], &[0, -1]], field),
        ScalarMatrix::from_i64(&[&[0, 1], &[0, 0]], field),
        ScalarMatrix::from_i64(&[&[0, 0], &[1, 0]], field),
    ]
}

fn flat_coords(a: &ExtMatrix) -> Vec<Scalar> {
    a.entries().iter().flat_map(|e| e.coords(a.grade())).collect()
}

fn difference(a: &ExtMatrix, b: &ExtMatrix) -> Vec<Scalar> {
    flat_coords(a).iter().zip(flat_coords(b)).map(|(x, y)| x - &y).collect()
}

/// Rank of `(g, h) ↦ gN − Nh` on `sl₂ × sl₂`, or with `M` given, of
/// `(f, g, h) ↦ (fM − Mg, gN − Nh)` on `sl₂³`.
pub fn stabilizer_tangent_rank(n: &ExtMatrix, m: Option<&ExtMatrix>) -> Result<usize> {
    if (n.rows(), n.cols(), n.grade()) != (2, 2, 1) {
        return Err(Error::Shape("N must be 2x2 of grade 1".into()));
    }
    let field = n.field();
    let basis = sl2_basis(field);
    let zero = ScalarMatrix::zeros(2, 2, field);
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let blocks = if m.is_some() { 3 } else { 2 };
    for block in 0..blocks {
        for x in &basis {
            let pick = |b: usize| if b == block { x } else { &zero };
            let (f, g, h) = if m.is_some() { (pick(0), pick(1), pick(2)) } else { (&zero, pick(0), pick(1)) };
            let mut col = difference(&n.left_scalar(g)?, &n.right_scalar(h)?);
            if let Some(m) = m {
                col.extend(difference(&m.left_scalar(f)?, &m.right_scalar(g)?));
            }
            columns.push(col);
        }
    }
    let rows: Vec<Vec<Scalar>> = (0..columns[0].len()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    Ok(ScalarMatrix::from_rows(rows, field)?.rank())
}

/// `λ(t) = (diag(t^{r₁}, t^{−r₁})·V₁, diag(t^{r₂}, t^{−r₂})·V₂, diag(t^{r₃}, t^{−r₃})·V₃)`.
#[derive(Clone, Debug)]
pub struct OnePS {
    r: [i64; 3],
    frames: [ScalarMatrix; 3],
}

impl OnePS {
    pub fn new(r: [i64; 3], frames: [ScalarMatrix; 3]) -> Result<OnePS> {
        if r == [0, 0, 0] {
            return Err(Error::Precondition("trivial one-parameter subgroup".into()));
        }
        for v in &frames {
            if v.rows() != 2 || v.cols() != 2 || v.rank() != 2 {
                return Err(Error::Precondition("frames must be invertible 2x2".into()));
            }
        }
        Ok(OnePS { r, frames })
    }

    pub fn diagonal(r: [i64; 3], field: Field) -> Result<OnePS> {
        let id = ScalarMatrix::identity(2, field);
        OnePS::new(r, [id.clone(), id.clone(), id])
    }

    pub fn weights(&self) -> [i64; 3] {
        self.r
    }

    pub fn frames(&self) -> &[ScalarMatrix; 3] {
        &self.frames
    }
}

/// Weight of entry `(i, j)` of `diag(t^{−b}, t^{b})·X·diag(t^{a}, t^{−a})`.
fn entry_weights(a: i64, b: i64) -> [[i64; 2]; 2] {
    [[a - b, -a - b], [a + b, b - a]]
}

struct Transformed {
    a: ExtMatrix,
    b: ExtMatrix,
    wa: [[i64; 2]; 2],
    wb: [[i64; 2]; 2],
}

fn transform(monad: &Monad, l: &OnePS) -> Result<Transformed> {
    if monad.field() != l.frames[0].field() {
        return Err(Error::Dimension("frames over a different field".into()));
    }
    let [v1, v2, v3] = &l.frames;
    let a = monad.m().left_scalar(&v2.inverse()?)?.right_scalar(v1)?;
    let b = monad.n().left_scalar(&v3.inverse()?)?.right_scalar(v2)?;
    let [r1, r2, r3] = l.r;
    Ok(Transformed { a, b, wa: entry_weights(r1, r2), wb: entry_weights(r2, r3) })
}

fn min_weight(x: &ExtMatrix, w: &[[i64; 2]; 2]) -> Option<i64> {
    (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).filter(|&(i, j)| !x.get(i, j).is_zero()).map(|(i, j)| w[i][j]).min()
}

/// `(μ(M, λ), μ(N, λ))`.
pub fn mu_parts(monad: &Monad, l: &OnePS) -> Result<(i64, i64)> {
    let t = transform(monad, l)?;
    let zero = || Error::Precondition("μ is undefined for a zero matrix".into());
    Ok((min_weight(&t.a, &t.wa).ok_or_else(zero)?, min_weight(&t.b, &t.wb).ok_or_else(zero)?))
}

/// `μ` of the Segre point `M ⊗ N`, minimised over its nonzero coordinates
/// `a_ij ⊗ b_kl` directly.
pub fn mu(monad: &Monad, l: &OnePS) -> Result<i64> {
    let t = transform(monad, l)?;
    let mut best: Option<i64> = None;
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        if t.a.get(i, j).is_zero() {
            continue;
        }
        for (k, l) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            if !t.b.get(k, l).is_zero() {
                let w = t.wa[i][j] + t.wb[k][l];
                best = Some(best.map_or(w, |b| b.min(w)));
            }
        }
    }
    best.ok_or_else(|| Error::Precondition("μ is undefined for a zero matrix".into()))
}

pub fn random_one_ps<R: Rng + ?Sized>(rng: &mut R, field: Field, height: i64) -> OnePS {
    let r = loop {
        let r = [rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
        if r != [0, 0, 0] {
            break r;
        }
    };
    let frames = [(); 3].map(|_| random_invertible(rng, field, 2, height));
    OnePS::new(r, frames).expect("nontrivial with invertible frames")
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityCounterexample {
    pub trial: u64,
    pub weights: [i64; 3],
    pub mu: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub trials: u64,
    pub seed: u64,
    pub max_mu: i64,
    /// Trials where `μ ≥ 0`.
    pub counterexamples: Vec<StabilityCounterexample>,
    /// Trials where a transformed entry of `N` vanished or `μ_N > −|r₂|−|r₃|`.
    pub lemma_violations: u64,
}

impl StabilityReport {
    pub fn all_stable(&self) -> bool {
        self.counterexamples.is_empty() && self.lemma_violations == 0
    }
}

pub fn stability_sample(monad: &Monad, trials: u64, seed: u64) -> Result<StabilityReport> {
    let field = monad.field();
    let results: Vec<(u64, [i64; 3], i64, bool)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i);
            let l = random_one_ps(&mut rng, field, 5);
            let t = transform(monad, &l)?;
            let mu = mu(monad, &l)?;
            let [_, r2, r3] = l.r;
            let all_nonzero = t.b.entries().iter().all(|e| !e.is_zero());
            let lemma = all_nonzero && min_weight(&t.b, &t.wb) == Some(-r2.abs() - r3.abs());
            Ok((i, l.r, mu, lemma))
        })
        .collect::<Result<_>>()?;
    Ok(StabilityReport {
        trials,
        seed,
        max_mu: results.iter().map(|r| r.2).max().unwrap_or(i64::MIN),
        counterexamples: results
            .iter()
            .filter(|r| r.2 >= 0)
            .map(|&(trial, weights, mu, _)| StabilityCounterexample { trial, weights, mu })
            .collect(),
        lemma_violations: results.iter().filter(|r| !r.3).count() as u64,
    })
}

/// Largest `μ` over diagonal one-parameter subgroups with weights in `[−bound, bound]`.
pub fn max_diagonal_mu(monad: &Monad, bound: i64) -> Result<(i64, [i64; 3])> {
    let mut best: Option<(i64, [i64; 3])> = None;
    for r1 in -bound..=bound {
        for r2 in -bound..=bound {
            for r3 in -bound..=bound {
                if [r1, r2, r3] == [0, 0, 0] {
                    continue;
                }
                let m = mu(monad, &OnePS::diagonal([r1, r2, r3], monad.field())?)?;
                if best.map_or(true, |(b, _)| m > b) {
                    best = Some((m, [r1, r2, r3]));
                }
            }
        }
    }
    best.ok_or_else(|| Error::Precondition("empty weight range".into()))
}

/// `det N = n11·n22 − n12·n21` in `S²V`.
#[derive(Clone, Debug)]
pub struct DetQuadric {
    /// Coefficient of `x_i x_j` at `(i, j)` for `i ≤ j`, zero below the diagonal.
    pub coefficients: ScalarMatrix,
    /// The polar form `q(x+y) − q(x) − q(y)`.
    pub gram: ScalarMatrix,
    pub rank: usize,
}

impl DetQuadric {
    pub fn coefficient(&self, i: usize, j: usize) -> &Scalar {
        self.coefficients.get(i.min(j), i.max(j))
    }
}

pub fn det_quadric(n: &ExtMatrix) -> Result<DetQuadric> {
    if (n.rows(), n.cols(), n.grade(), n.dim()) != (2, 2, 1, 5) {
        return Err(Error::Shape("N must be 2x2 of vectors on k^5".into()));
    }
    let field = n.field();
    if field.characteristic() == 2 {
        return Err(Error::Precondition("quadric ranks need characteristic other than 2".into()));
    }
    let mut c = ScalarMatrix::zeros(5, 5, field);
    for (u, v, sign) in [(n.get(0, 0), n.get(1, 1), 1), (n.get(0, 1), n.get(1, 0), -1)] {
        let (u, v) = (u.coords(1), v.coords(1));
        for a in 0..5 {
            for b in 0..5 {
                let (i, j) = (a.min(b), a.max(b));
                let t = &(&u[a] * &v[b]) * &field.from_i64(sign);
                let cur = c.get(i, j) + &t;
                c.set(i, j, cur);
            }
        }
    }
    let mut gram = ScalarMatrix::zeros(5, 5, field);
    for i in 0..5 {
        for j in i..5 {
            let x = c.get(i, j).clone();
            if i == j {
                gram.set(i, i, &x + &x);
            } else {
                gram.set(i, j, x.clone());
                gram.set(j, i, x);
            }
        }
    }
    let rank = gram.rank();
    Ok(DetQuadric { coefficients: c, gram, rank })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StrataCounts {
    pub y0_pass: u64,
    pub span3: u64,
    pub x0_pass: u64,
    pub rank7: u64,
    #[serde(rename = "spanM3")]
    pub span_m3: u64,
    /// Rank-7 samples whose `N` spans four dimensions.
    pub rank7_outside_span3: u64,
}

impl std::ops::Add for StrataCounts {
    type Output = StrataCounts;
    fn add(self, o: StrataCounts) -> StrataCounts {
        StrataCounts {
            y0_pass: self.y0_pass + o.y0_pass,
            span3: self.span3 + o.span3,
            x0_pass: self.x0_pass + o.x0_pass,
            rank7: self.rank7 + o.rank7,
            span_m3: self.span_m3 + o.span_m3,
            rank7_outside_span3: self.rank7_outside_span3 + o.rank7_outside_span3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrataFrequencies {
    /// `span3 / y0_pass`.
    pub span3: f64,
    /// `rank7 / x0_pass`.
    pub rank7: f64,
    /// `spanM3 / x0_pass`.
    #[serde(rename = "spanM3")]
    pub span_m3: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrataSampleReport {
    pub q: u32,
    pub trials: u64,
    pub seed: u64,
    pub counts: StrataCounts,
    pub frequencies: StrataFrequencies,
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Strata membership of `(N, M)` with the exact generic routines; `M` is only
/// inspected when `N` is surjective.
pub fn classify_exact(n: &ExtMatrix, m: &ExtMatrix) -> Result<StrataCounts> {
    check_pair(m, n)?;
    let mut c = StrataCounts::default();
    if !check_n_surjective(n)? {
        return Ok(c);
    }
    c.y0_pass = 1;
    let span3 = n.span_basis().0 == 3;
    c.span3 = span3 as u64;
    if !check_m_subbundle(m)? {
        return Ok(c);
    }
    c.x0_pass = 1;
    if build_mtilde(m)?.rank() == 7 {
        c.rank7 = 1;
        c.rank7_outside_span3 = !span3 as u64;
    }
    c.span_m3 = (coords_matrix(m.entries(), 3).rank() == 3) as u64;
    Ok(c)
}

fn residues<const K: usize>(a: &ExtMatrix) -> [u32; K] {
    let flat: Vec<u32> = flat_coords(a).iter().map(|x| x.residue().expect("prime field")).collect();
    flat.try_into().expect("fixed shape")
}

/// Same as [`classify_exact`] through the residue kernel used by [`strata_sample`].
pub fn classify_residues(n: &ExtMatrix, m: &ExtMatrix) -> Result<StrataCounts> {
    check_pair(m, n)?;
    let Field::Prime(p) = n.field() else {
        return Err(Error::Precondition("residue kernel needs a prime field".into()));
    };
    Ok(fast::classify(&residues::<20>(n), &residues::<40>(m), p))
}

/// One trial through the generic routines, drawing `N` and then `M` from its
/// syzygies.
pub fn strata_trial_exact(q: u32, seed: u64, index: u64) -> Result<StrataCounts> {
    let field = Field::prime(q)?;
    let mut rng = rng_for(seed, index);
    let n = random_ext_matrix(&mut rng, field, 2, 2, 1, 0);
    if !check_n_surjective(&n)? {
        return Ok(StrataCounts::default());
    }
    let g = syzygy_space(&n)?;
    let p = random_coefficients(&mut rng, field, g.dimension(), 0);
    let pq = random_coefficients(&mut rng, field, g.dimension(), 0);
    classify_exact(&n, &g.m_from_coeffs(&p, &pq)?)
}

/// `N` uniform in `Mat₂ₓ₂(F_q⁵)`; for surjective `N`, `M` uniform among its
/// syzygy pairs. Trial `i` uses stream `i` of `seed`.
pub fn strata_sample(q: u32, trials: u64, seed: u64) -> Result<StrataSampleReport> {
    Field::prime(q)?;
    let counts = (0..trials)
        .into_par_iter()
        .map(|i| fast::trial(&mut rng_for(seed, i), q))
        .reduce(StrataCounts::default, |a, b| a + b);
    Ok(StrataSampleReport {
        q,
        trials,
        seed,
        counts,
        frequencies: StrataFrequencies {
            span3: ratio(counts.span3, counts.y0_pass),
            rank7: ratio(counts.rank7, counts.x0_pass),
            span_m3: ratio(counts.span_m3, counts.x0_pass),
        },
    })
}
