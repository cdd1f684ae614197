#![allow(dead_code)]

use monadkit::exterior::Blade;
use monadkit::golden::{printed_restriction_system, printed_scroll_matrix, printed_xi_star_square, SymPoly};
use monadkit::normal_forms::SpanTag;
use monadkit::restriction_scroll::{membership_matrix, normal_form_system, section, LinearForm};
use monadkit::{Field, Multivector, Scalar, Variance};

pub const Q: Field = Field::Rationals;

pub fn unit(len: usize, k: usize) -> Vec<Scalar> {
    (0..len).map(|i| if i == k { Q.one() } else { Q.zero() }).collect()
}

/// Derived and printed 8×8 systems at every unit point of `(p, q)`; both are
/// linear, so these determine them. Each entry is `(point, row, col, derived, printed)`.
pub fn system_pairs() -> Vec<(usize, usize, usize, Scalar, Scalar)> {
    let printed = printed_restriction_system();
    let mut out = Vec::new();
    for k in 0..20 {
        let vars = unit(20, k);
        let sys = normal_form_system(&vars[..10], &vars[10..]).unwrap();
        for (r, row) in printed.iter().enumerate() {
            for (c, poly) in row.iter().enumerate() {
                out.push((k, r, c, sys.matrix.get(r, c).clone(), poly.eval(&vars)));
            }
        }
    }
    out
}

fn form_of(poly: &SymPoly) -> LinearForm {
    let mut vars = vec![Q.zero(); 20];
    (0..10)
        .map(|i| {
            vars[i] = Q.one();
            let v = poly.eval(&vars);
            vars[i] = Q.zero();
            v
        })
        .collect()
}

pub fn printed_membership(name: &str) -> Vec<[LinearForm; 2]> {
    let m = printed_scroll_matrix(name);
    (0..m[0].len()).map(|c| [form_of(&m[0][c]), form_of(&m[1][c])]).collect()
}

/// Column multisets agree, in any order.
pub fn same_columns(a: &[[LinearForm; 2]], b: &[[LinearForm; 2]]) -> bool {
    let key = |c: &[LinearForm; 2]| format!("{:?}", c);
    let mut x: Vec<String> = a.iter().map(key).collect();
    let mut y: Vec<String> = b.iter().map(key).collect();
    x.sort();
    y.sort();
    x == y
}

pub fn tag_of(name: &str) -> SpanTag {
    if name == "N4" {
        SpanTag::Span4
    } else {
        SpanTag::Span3
    }
}

/// Column multisets agree up to order and a nonzero scale per column.
pub fn same_columns_projectively(a: &[[LinearForm; 2]], b: &[[LinearForm; 2]]) -> bool {
    let norm = |c: &[LinearForm; 2]| -> [LinearForm; 2] {
        let lead = c.concat().into_iter().find(|x| !x.is_zero()).expect("nonzero column");
        let inv = lead.inv().unwrap();
        c.clone().map(|f| f.iter().map(|x| x * &inv).collect())
    };
    let a: Vec<_> = a.iter().map(norm).collect();
    let b: Vec<_> = b.iter().map(norm).collect();
    same_columns(&a, &b)
}

/// Membership columns derived from Γ with the coordinates in `flipped` negated.
pub fn membership_with_flips(name: &str, flipped: &[usize]) -> Vec<[LinearForm; 2]> {
    membership_matrix(tag_of(name), Q)
        .into_iter()
        .map(|col| {
            col.map(|f| f.iter().enumerate().map(|(i, x)| if flipped.contains(&i) { -x } else { x.clone() }).collect())
        })
        .collect()
}

/// `e_S ↦ e*_{Sᶜ}` with no sign.
pub fn unsigned_star(x: &Multivector) -> Multivector {
    let mut out = Multivector::zero(x.dim(), Variance::Dual, x.field());
    for (b, c) in x.terms() {
        out.add_term(b.complement(x.dim()), c.clone());
    }
    out
}

/// Derived divided square `ξ*²` (unsigned star) and the printed quadratics at `p`.
pub fn xi_star_square_pair(name: &str, p: &[Scalar]) -> Vec<(Blade, Scalar, Scalar)> {
    let (xi, _) = section(p, tag_of(name)).unwrap();
    let sq = unsigned_star(&xi).divided_power(2);
    let mut vars = p.to_vec();
    vars.extend(vec![Q.zero(); 10]);
    let printed = printed_xi_star_square(name);
    let mut blades: Vec<Blade> = printed.iter().map(|(b, _)| *b).collect();
    blades.extend(sq.terms().map(|(b, _)| b));
    blades.sort_by_key(|b| b.0);
    blades.dedup();
    blades
        .into_iter()
        .map(|b| {
            let pv = printed.iter().find(|(x, _)| *x == b).map(|(_, f)| f.eval(&vars)).unwrap_or_else(|| Q.zero());
            (b, sq.coefficient(b), pv)
        })
        .collect()
}

/// `a = λ·b` coordinatewise for one `λ ≠ 0` (both zero counts as agreement).
pub fn proportional(pairs: &[(Scalar, Scalar)]) -> Option<Scalar> {
    let mut lambda: Option<Scalar> = None;
    for (a, b) in pairs {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => continue,
            (false, false) => {
                let l = a.checked_div(b).ok()?;
                match &lambda {
                    None => lambda = Some(l),
                    Some(x) if *x == l => {}
                    Some(_) => return None,
                }
            }
            _ => return None,
        }
    }
    lambda.or(Some(Q.one()))
}
