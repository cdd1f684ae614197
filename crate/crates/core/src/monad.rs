//! The monad `2Ω⁴(4) --M--> 2Ω¹(1) --N--> 2𝒪` and its open conditions.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extmat::{degenerate_combinations, form_gcd, Axis, BinaryForm, ExtMatrix, ExtMatrixJson, PolyMultivector, ScalarMatrix};
use crate::field::Field;

#[derive(Clone, Debug)]
pub struct Monad {
    m: ExtMatrix,
    n: ExtMatrix,
    complex_ok: OnceLock<bool>,
    n_surjective: OnceLock<bool>,
    m_subbundle: OnceLock<bool>,
}

impl PartialEq for Monad {
    fn eq(&self, other: &Monad) -> bool {
        self.m == other.m && self.n == other.n
    }
}

impl Eq for Monad {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub complex_ok: bool,
    pub n_surjective: bool,
    pub m_subbundle: bool,
    pub in_x0: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonadJson {
    pub field: String,
    #[serde(rename = "M")]
    pub m: ExtMatrixJson,
    #[serde(rename = "N")]
    pub n: ExtMatrixJson,
}

impl Monad {
    pub fn new(m: ExtMatrix, n: ExtMatrix) -> Result<Monad> {
        if (m.rows(), m.cols(), m.grade(), m.dim()) != (2, 2, 3, 5) {
            return Err(Error::Shape("M must be a 2x2 matrix of 3-forms on k^5".into()));
        }
        if (n.rows(), n.cols(), n.grade(), n.dim()) != (2, 2, 1, 5) {
            return Err(Error::Shape("N must be a 2x2 matrix of vectors in k^5".into()));
        }
        if m.field() != n.field() || m.variance() != n.variance() {
            return Err(Error::Dimension("M and N live over different spaces".into()));
        }
        Ok(Monad {
            m,
            n,
            complex_ok: OnceLock::new(),
            n_surjective: OnceLock::new(),
            m_subbundle: OnceLock::new(),
        })
    }

    pub fn parse(m: [[&str; 2]; 2], n: [[&str; 2]; 2], field: Field) -> Result<Monad> {
        let m = ExtMatrix::parse(&[&m[0], &m[1]], 3, 5, field)?;
        let n = ExtMatrix::parse(&[&n[0], &n[1]], 1, 5, field)?;
        Monad::new(m, n)
    }

    pub fn m(&self) -> &ExtMatrix {
        &self.m
    }

    pub fn n(&self) -> &ExtMatrix {
        &self.n
    }

    pub fn field(&self) -> Field {
        self.m.field()
    }

    pub fn complex_ok(&self) -> bool {
        *self.complex_ok.get_or_init(|| check_complex(&self.m, &self.n))
    }

    pub fn n_surjective(&self) -> bool {
        *self.n_surjective.get_or_init(|| check_n_surjective(&self.n).expect("shape checked"))
    }

    pub fn m_subbundle(&self) -> bool {
        *self.m_subbundle.get_or_init(|| check_m_subbundle(&self.m).expect("shape checked"))
    }

    pub fn validate(&self) -> ValidationReport {
        let complex_ok = self.complex_ok();
        let n_surjective = self.n_surjective();
        let m_subbundle = self.m_subbundle();
        ValidationReport { complex_ok, n_surjective, m_subbundle, in_x0: complex_ok && n_surjective && m_subbundle }
    }

    /// `(g₂⁻¹ M g₁, g₃⁻¹ N g₂)`.
    pub fn group_act(&self, g1: &ScalarMatrix, g2: &ScalarMatrix, g3: &ScalarMatrix) -> Result<Monad> {
        if [g1, g2, g3].iter().any(|g| g.rows() != 2 || g.cols() != 2 || g.rank() != 2) {
            return Err(Error::Singular);
        }
        let m = self.m.left_scalar(&g2.inverse()?)?.right_scalar(g1)?;
        let n = self.n.left_scalar(&g3.inverse()?)?.right_scalar(g2)?;
        Monad::new(m, n)
    }

    /// Applies `g ∈ GL(V)` to both matrices.
    pub fn change_basis(&self, g: &ScalarMatrix) -> Result<Monad> {
        if g.rank() != 5 {
            return Err(Error::Singular);
        }
        Monad::new(self.m.apply_basis_change(g), self.n.apply_basis_change(g))
    }

    pub fn to_json(&self) -> MonadJson {
        MonadJson { field: self.field().to_string(), m: self.m.to_json(), n: self.n.to_json() }
    }

    pub fn from_json(json: &MonadJson) -> Result<Monad> {
        let field: Field = json.field.parse()?;
        Monad::new(ExtMatrix::from_json(&json.m, field)?, ExtMatrix::from_json(&json.n, field)?)
    }
}

/// `N ∧ M = 0`.
pub fn check_complex(m: &ExtMatrix, n: &ExtMatrix) -> bool {
    n.ext_mul(m).map(|p| p.is_zero()).unwrap_or(false)
}

/// No generalized row of `N` has the form `λ ⊗ x`.
pub fn check_n_surjective(n: &ExtMatrix) -> Result<bool> {
    if (n.rows(), n.cols(), n.grade()) != (2, 2, 1) {
        return Err(Error::Shape("N must be 2x2 of grade 1".into()));
    }
    Ok(degenerate_combinations(n, Axis::Rows)?.gcd.is_unit())
}

/// The generalized column `(ξ, η) = s·col₁ + t·col₂` as polynomial forms.
pub fn generalized_column(m: &ExtMatrix) -> (PolyMultivector, PolyMultivector) {
    (PolyMultivector::linear(m.get(0, 0), m.get(0, 1)), PolyMultivector::linear(m.get(1, 0), m.get(1, 1)))
}

/// `(ξ*²)* ∧ η` with binary-form coefficients (divided square).
pub fn star_square_wedge_form(xi: &PolyMultivector, eta: &PolyMultivector) -> PolyMultivector {
    xi.star().divided_square().star().wedge(eta)
}

/// `(g_A, g_B)`: gcds of the coefficients of `(ξ*²)*∧η` and `(η*²)*∧ξ`.
pub fn subbundle_obstruction(m: &ExtMatrix) -> Result<(BinaryForm, BinaryForm)> {
    if (m.rows(), m.cols(), m.grade(), m.dim()) != (2, 2, 3, 5) {
        return Err(Error::Shape("M must be 2x2 of grade 3 on k^5".into()));
    }
    let (xi, eta) = generalized_column(m);
    Ok((star_square_wedge_form(&xi, &eta).content(), star_square_wedge_form(&eta, &xi).content()))
}

/// No generalized column of `M` has a common linear factor.
pub fn check_m_subbundle(m: &ExtMatrix) -> Result<bool> {
    let (ga, gb) = subbundle_obstruction(m)?;
    Ok(form_gcd(&[ga, gb]).is_unit())
}

/// The printed example monads, with the U-type ones completed by a 2×2 `N`
/// spanned by rows of the corresponding three-row matrix.
pub fn golden_monads(field: Field) -> Vec<(&'static str, Monad)> {
    let table: [(&str, [[&str; 2]; 2], [[&str; 2]; 2]); 5] = [
        ("M1_N4", [["e023+e014", "e134+e024+e013"], ["e124+e013", "e023+e014"]], [["e1", "e2"], ["e3", "e4"]]),
        ("M2_N3", [["e234+e012", "e134+e124+e013"], ["e134-e124-e023", "-e234+e123"]], [["e1", "e2"], ["e3", "e1"]]),
        ("U1", [["e012+e134", "e013+e124+e134"], ["-e012+e234", "e023-e124"]], [["e1+e3", "e3"], ["e3", "e2+e3"]]),
        ("U2", [["e013+e124", "e012+e124+e134"], ["e124-e234", "-e023-e234"]], [["e3", "e1"], ["e1", "e2"]]),
        ("U3", [["-e012+e013-e124", "-e124+e134"], ["e012+e023+e234", "e013+e123+e124+e234"]], [["e3", "e1"], ["e2", "e3"]]),
    ];
    table.iter().map(|(name, m, n)| (*name, Monad::parse(*m, *n, field).expect("golden data parses"))).collect()
}

pub fn zero_monad(field: Field) -> Monad {
    Monad::parse([["0", "0"], ["0", "0"]], [["e1", "e2"], ["e3", "e4"]], field).unwrap()
}
