//! Residue-level version of one strata trial. Sign tables are read off the
//! generic exterior algebra once, so conventions cannot drift.

use std::sync::OnceLock;

use rand::Rng;

use crate::exterior::{blades_of_grade, Multivector, Variance};
use crate::field::{inv_mod, Field};

use super::StrataCounts;

struct Tables {
    /// `e_a ∧ e_S = sign · e_l`: entries `(a, S, l, sign)`.
    wedge13: Vec<(usize, usize, usize, i64)>,
    /// `ξ ↦ (ξ*²)*` as `Σ c · ξ_a ξ_b` into coordinate `k`, `a ≤ b`: `(k, a, b, c)`.
    square: Vec<(usize, usize, usize, i64)>,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let f = Field::Rationals;
        let three = blades_of_grade(5, 3);
        let mut wedge13 = Vec::new();
        for a in 0..5 {
            for (s, &b) in three.iter().enumerate() {
                let w = &Multivector::basis_vector(5, Variance::Primal, f, a) ^ &Multivector::blade(5, Variance::Primal, f, b);
                for (l, c) in w.coords(4).into_iter().enumerate() {
                    if let Some(c) = c.to_i64().filter(|&c| c != 0) {
                        wedge13.push((a, s, l, c));
                    }
                }
            }
        }
        let v = |x: &Multivector| -> Vec<i64> {
            x.star().divided_power(2).star().coords(1).into_iter().map(|c| c.to_i64().expect("integral")).collect()
        };
        let e = |s: usize| Multivector::blade(5, Variance::Primal, f, three[s]);
        let mut square = Vec::new();
        for a in 0..10 {
            for (k, c) in v(&e(a)).into_iter().enumerate() {
                if c != 0 {
                    square.push((k, a, a, c));
                }
            }
            for b in a + 1..10 {
                let (va, vb, vab) = (v(&e(a)), v(&e(b)), v(&(&e(a) + &e(b))));
                for k in 0..5 {
                    let c = vab[k] - va[k] - vb[k];
                    if c != 0 {
                        square.push((k, a, b, c));
                    }
                }
            }
        }
        Tables { wedge13, square }
    })
}

#[inline]
fn red(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// Rank of a dense matrix over `F_p`, destroying it.
pub(crate) fn rank_mod_p(rows: &mut [Vec<u32>], p: u32) -> usize {
    rref_mod_p(rows, p).len()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref_mod_p(rows: &mut [Vec<u32>], p: u32) -> Vec<usize> {
    let p64 = p as u64;
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p) as u64;
        for x in rows[r].iter_mut() {
            *x = ((*x as u64 * inv) % p64) as u32;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = (p - row[c]) as u64;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = ((*x as u64 + f * y as u64) % p64) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

fn kernel_mod_p(mut rows: Vec<Vec<u32>>, p: u32) -> Vec<Vec<u32>> {
    let ncols = rows[0].len();
    let pivots = rref_mod_p(&mut rows, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; ncols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[i][f]) % p;
            }
            v
        })
        .collect()
}

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
    let p64 = p as u64;
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p) as u64;
        while a.len() >= b.len() {
            let f = (*a.last().unwrap() as u64 * inv) % p64;
            let shift = a.len() - b.len();
            for (i, &y) in b.iter().enumerate() {
                a[shift + i] = ((a[shift + i] as u64 + (p64 - f) * y as u64) % p64) as u32;
            }
            poly_trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Binary forms `Σ c_i s^{d−i} t^i` of one degree have no common root over
/// the algebraic closure.
fn forms_coprime(forms: &[Vec<u32>], p: u32) -> bool {
    if forms.iter().all(|f| f.last() == Some(&0)) {
        return false;
    }
    let mut g: Vec<u32> = Vec::new();
    for f in forms {
        g = poly_gcd(g, f.clone(), p);
        if g.len() == 1 {
            return true;
        }
    }
    g.len() == 1
}

fn wedge11(u: &[u32], v: &[u32], p: u32) -> [u32; 10] {
    let mut out = [0u32; 10];
    let mut k = 0;
    for a in 0..5 {
        for b in a + 1..5 {
            out[k] = red(u[a] as i64 * v[b] as i64 - u[b] as i64 * v[a] as i64, p);
            k += 1;
        }
    }
    out
}

/// No generalized row `s·row₁ + t·row₂` of `N` is degenerate. `n` holds
/// `n11, n12, n21, n22` with five residues each.
pub(crate) fn n_surjective(n: &[u32; 20], p: u32) -> bool {
    let (n11, n12, n21, n22) = (&n[0..5], &n[5..10], &n[10..15], &n[15..20]);
    // (s n11 + t n21) ∧ (s n12 + t n22)
    let s2 = wedge11(n11, n12, p);
    let t2 = wedge11(n21, n22, p);
    let a = wedge11(n11, n22, p);
    let b = wedge11(n21, n12, p);
    let forms: Vec<Vec<u32>> = (0..10).map(|k| vec![s2[k], (a[k] + b[k]) % p, t2[k]]).collect();
    forms_coprime(&forms, p)
}

fn vec_wedge_three(v: &[i64; 5], x: &[u32], acc: &mut [i64; 5]) {
    for &(a, s, l, c) in &tables().wedge13 {
        acc[l] += c * v[a] * x[s] as i64;
    }
}

fn polar(x: &[u32], y: &[u32], p: u32) -> [i64; 5] {
    let mut out = [0i64; 5];
    for &(k, a, b, c) in &tables().square {
        let t = if a == b { 2 * x[a] as i64 * y[a] as i64 } else { x[a] as i64 * y[b] as i64 + x[b] as i64 * y[a] as i64 };
        out[k] += c * t;
    }
    out.map(|v| red(v, p) as i64)
}

fn square(x: &[u32], p: u32) -> [i64; 5] {
    let mut out = [0i64; 5];
    for &(k, a, b, c) in &tables().square {
        out[k] += c * x[a] as i64 * x[b] as i64;
    }
    out.map(|v| red(v, p) as i64)
}

/// Coefficients of `(ξ*²)* ∧ η` for `ξ = s·x0 + t·x1`, `η = s·y0 + t·y1`.
fn obstruction(x0: &[u32], x1: &[u32], y0: &[u32], y1: &[u32], p: u32) -> Vec<Vec<u32>> {
    let (vs, vst, vt) = (square(x0, p), polar(x0, x1, p), square(x1, p));
    let mut c = [[0i64; 5]; 4];
    vec_wedge_three(&vs, y0, &mut c[0]);
    vec_wedge_three(&vs, y1, &mut c[1]);
    vec_wedge_three(&vst, y0, &mut c[1]);
    vec_wedge_three(&vst, y1, &mut c[2]);
    vec_wedge_three(&vt, y0, &mut c[2]);
    vec_wedge_three(&vt, y1, &mut c[3]);
    (0..5).map(|l| (0..4).map(|d| red(c[d][l], p)).collect()).collect()
}

/// `m` holds `m11, m12, m21, m22` with ten residues each.
pub(crate) fn m_subbundle(m: &[u32; 40], p: u32) -> bool {
    let (m11, m12, m21, m22) = (&m[0..10], &m[10..20], &m[20..30], &m[30..40]);
    let mut forms = obstruction(m11, m12, m21, m22, p);
    forms.extend(obstruction(m21, m22, m11, m12, p));
    forms_coprime(&forms, p)
}

pub(crate) fn mtilde_rank(m: &[u32; 40], p: u32) -> usize {
    let mut rows = vec![vec![0u32; 10]; 10];
    let mut acc = [[[0i64; 5]; 5]; 4];
    for ij in 0..4 {
        for &(a, s, l, c) in &tables().wedge13 {
            acc[ij][a][l] += c * m[ij * 10 + s] as i64;
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            for a in 0..5 {
                for l in 0..5 {
                    rows[i * 5 + l][j * 5 + a] = red(acc[i * 2 + j][a][l], p);
                }
            }
        }
    }
    rank_mod_p(&mut rows, p)
}

fn span_rank(entries: &[u32], width: usize, p: u32) -> usize {
    let mut rows: Vec<Vec<u32>> = entries.chunks(width).map(|c| c.to_vec()).collect();
    rank_mod_p(&mut rows, p)
}

/// Basis of the columns `(c₁, c₂) ∈ (Λ³)²` with `n_r1∧c₁ + n_r2∧c₂ = 0`.
pub(crate) fn syzygies(n: &[u32; 20], p: u32) -> Vec<Vec<u32>> {
    let mut rows = vec![vec![0i64; 20]; 10];
    for r in 0..2 {
        for j in 0..2 {
            let v = &n[(r * 2 + j) * 5..(r * 2 + j) * 5 + 5];
            for &(a, s, l, c) in &tables().wedge13 {
                rows[r * 5 + l][j * 10 + s] += c * v[a] as i64;
            }
        }
    }
    kernel_mod_p(rows.into_iter().map(|r| r.into_iter().map(|x| red(x, p)).collect()).collect(), p)
}

/// Counts for given `N` and `M`; `M` is only inspected when `N` is surjective.
pub(crate) fn classify(n: &[u32; 20], m: &[u32; 40], p: u32) -> StrataCounts {
    let mut c = StrataCounts::default();
    if !n_surjective(n, p) {
        return c;
    }
    c.y0_pass = 1;
    let span3 = span_rank(n, 5, p) == 3;
    c.span3 = span3 as u64;
    if !m_subbundle(m, p) {
        return c;
    }
    c.x0_pass = 1;
    if mtilde_rank(m, p) == 7 {
        c.rank7 = 1;
        c.rank7_outside_span3 = !span3 as u64;
    }
    c.span_m3 = (span_rank(m, 10, p) == 3) as u64;
    c
}

pub(crate) fn trial<R: Rng + ?Sized>(rng: &mut R, p: u32) -> StrataCounts {
    let mut n = [0u32; 20];
    n.iter_mut().for_each(|x| *x = rng.gen_range(0..p));
    if !n_surjective(&n, p) {
        return StrataCounts::default();
    }
    let basis = syzygies(&n, p);
    let mut m = [0u32; 40];
    for col in 0..2 {
        let mut acc = [0u64; 20];
        for v in &basis {
            let c = rng.gen_range(0..p) as u64;
            for (a, &x) in acc.iter_mut().zip(v) {
                *a = (*a + c * x as u64) % p as u64;
            }
        }
        // entry (row, col) lives at (row·2 + col)·10
        for row in 0..2 {
            let off = (row * 2 + col) * 10;
            for s in 0..10 {
                m[off + s] = acc[row * 10 + s] as u32;
            }
        }
    }
    classify(&n, &m, p)
}
