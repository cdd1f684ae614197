//! Printed matrices shipped with the crate, used as reference data.

use serde::Deserialize;
use std::collections::BTreeMap;

use crate::exterior::Blade;
use crate::extmat::{ExtMatrix, ExtMatrixJson, ScalarMatrix};
use crate::field::{Field, Scalar};

const SYZYGIES: &str = include_str!("../data/printed_syzygies.json");
const MTILDE: &str = include_str!("../data/printed_mtilde.json");
const J1: &str = include_str!("../data/printed_j1.json");
const RESTRICTION_SCROLL: &str = include_str!("../data/printed_restriction_scroll.json");

pub const SYZYGY_NAMES: [&str; 9] = ["N4", "N3", "T1", "T2", "T3", "T4", "U1", "U2", "U3"];

#[derive(Clone, Debug)]
pub struct PrintedSyzygy {
    pub name: &'static str,
    pub n: ExtMatrix,
    pub gamma: ExtMatrix,
    pub m: Option<ExtMatrix>,
}

#[derive(Deserialize)]
struct SyzygyEntry {
    n: ExtMatrixJson,
    gamma: ExtMatrixJson,
    m: Option<ExtMatrixJson>,
    relabel: Option<Vec<usize>>,
}

pub fn printed_syzygies(field: Field) -> Vec<PrintedSyzygy> {
    let mut table: BTreeMap<String, SyzygyEntry> = serde_json::from_str(SYZYGIES).expect("bundled data");
    SYZYGY_NAMES
        .iter()
        .map(|&name| {
            let e = table.remove(name).expect("bundled data");
            let mut gamma = ExtMatrix::from_json(&e.gamma, field).unwrap();
            if let Some(perm) = e.relabel {
                // the printed Γ uses a renamed basis; bring it back to the representative's
                let mut g = ScalarMatrix::zeros(5, 5, field);
                for (j, &i) in perm.iter().enumerate() {
                    g.set(i, j, field.one());
                }
                gamma = gamma.apply_basis_change(&g);
            }
            PrintedSyzygy {
                name,
                n: ExtMatrix::from_json(&e.n, field).unwrap(),
                gamma,
                m: e.m.map(|m| ExtMatrix::from_json(&m, field).unwrap()),
            }
        })
        .collect()
}

pub fn printed_syzygy(name: &str, field: Field) -> PrintedSyzygy {
    printed_syzygies(field).into_iter().find(|t| t.name == name).unwrap_or_else(|| panic!("no printed table {name}"))
}

/// Integer polynomial in `p₀..p₉` (variables 0..9) and `q₀..q₉` (10..19).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    pub terms: Vec<(i64, Vec<usize>)>,
}

impl SymPoly {
    pub fn parse(s: &str) -> SymPoly {
        let mut terms = Vec::new();
        let s = s.replace(' ', "");
        let mut chunk = String::new();
        let flush = |chunk: &str, terms: &mut Vec<(i64, Vec<usize>)>| {
            if chunk.is_empty() || chunk == "0" {
                return;
            }
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, chunk.strip_prefix('+').unwrap_or(chunk)),
            };
            let mut coeff = sign;
            let mut vars = Vec::new();
            for factor in body.split('*') {
                if let Ok(c) = factor.parse::<i64>() {
                    coeff *= c;
                    continue;
                }
                let (letter, idx) = factor.split_at(1);
                let idx: usize = idx.parse().expect("variable index");
                vars.push(if letter == "p" { idx } else { 10 + idx });
            }
            terms.push((coeff, vars));
        };
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !chunk.is_empty() {
                flush(&chunk, &mut terms);
                chunk.clear();
            }
            chunk.push(ch);
        }
        flush(&chunk, &mut terms);
        SymPoly { terms }
    }

    pub fn eval(&self, vars: &[Scalar]) -> Scalar {
        let field = vars[0].field();
        let mut acc = field.zero();
        for (c, vs) in &self.terms {
            let mut t = field.from_i64(*c);
            for &v in vs {
                t = &t * &vars[v];
            }
            acc += &t;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn sym_matrix(rows: &[Vec<String>]) -> Vec<Vec<SymPoly>> {
    rows.iter().map(|r| r.iter().map(|s| SymPoly::parse(s)).collect()).collect()
}

/// The printed general form of `M̃` for `N4` or `N3`.
pub fn printed_mtilde(name: &str) -> Vec<Vec<SymPoly>> {
    let table: BTreeMap<String, Vec<Vec<String>>> = serde_json::from_str(MTILDE).expect("bundled data");
    sym_matrix(&table[name])
}

#[derive(Deserialize)]
struct ScrollEntry {
    membership: Vec<Vec<String>>,
    xi_star_square: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct RestrictionScroll {
    system: Vec<Vec<String>>,
    scroll: BTreeMap<String, ScrollEntry>,
}

fn restriction_scroll() -> RestrictionScroll {
    serde_json::from_str(RESTRICTION_SCROLL).expect("bundled data")
}

/// The printed 8×8 restriction system in `(x₁..x₄, y₁..y₄)`.
pub fn printed_restriction_system() -> Vec<Vec<SymPoly>> {
    sym_matrix(&restriction_scroll().system)
}

/// The printed 2×7 scroll membership matrix for `N4` or `N3`.
pub fn printed_scroll_matrix(name: &str) -> Vec<Vec<SymPoly>> {
    sym_matrix(&restriction_scroll().scroll[name].membership)
}

/// The printed coefficients of `ξ*²/2` on the `Λ⁴` basis.
pub fn printed_xi_star_square(name: &str) -> Vec<(Blade, SymPoly)> {
    restriction_scroll().scroll[name]
        .xi_star_square
        .iter()
        .map(|(k, v)| {
            let idx: Vec<usize> = k[1..].chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
            (Blade::from_indices(&idx).unwrap(), SymPoly::parse(v))
        })
        .collect()
}

/// The printed 40×20 block of `M`-derivatives for `N4` or `N3`: rows are the
/// variables, columns the equations.
pub fn printed_j1(name: &str) -> Vec<Vec<i64>> {
    let mut table: BTreeMap<String, Vec<Vec<i64>>> = serde_json::from_str(J1).expect("bundled data");
    table.remove(name).unwrap_or_else(|| panic!("no printed J1 for {name}"))
}
