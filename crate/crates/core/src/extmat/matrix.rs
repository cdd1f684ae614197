use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{Multivector, Variance};
use crate::extmat::forms::{form_gcd, BinaryForm, PolyMultivector};
use crate::extmat::ScalarMatrix;
use crate::field::{Field, Scalar};

/// Matrix whose entries are homogeneous multivectors of one grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtMatrix {
    rows: usize,
    cols: usize,
    grade: usize,
    dim: usize,
    variance: Variance,
    field: Field,
    entries: Vec<Multivector>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub grade: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub entries: Vec<Vec<String>>,
}

impl ExtMatrix {
    pub fn zeros(rows: usize, cols: usize, grade: usize, dim: usize, field: Field) -> ExtMatrix {
        ExtMatrix::zeros_with(rows, cols, grade, dim, Variance::Primal, field)
    }

    pub fn zeros_with(rows: usize, cols: usize, grade: usize, dim: usize, variance: Variance, field: Field) -> ExtMatrix {
        ExtMatrix {
            rows,
            cols,
            grade,
            dim,
            variance,
            field,
            entries: vec![Multivector::zero(dim, variance, field); rows * cols],
        }
    }

    pub fn from_rows(grade: usize, rows: Vec<Vec<Multivector>>) -> Result<ExtMatrix> {
        let proto = rows
            .iter()
            .flatten()
            .next()
            .ok_or_else(|| Error::Shape("empty matrix needs explicit dimensions".into()))?
            .clone();
        let r = rows.len();
        let c = rows[0].len();
        let mut m = ExtMatrix::zeros_with(r, c, grade, proto.dim(), proto.variance(), proto.field());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::Shape("ragged rows".into()));
            }
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x)?;
            }
        }
        Ok(m)
    }

    pub fn parse(rows: &[&[&str]], grade: usize, dim: usize, field: Field) -> Result<ExtMatrix> {
        let c = rows.first().map_or(0, |r| r.len());
        let mut m = ExtMatrix::zeros(rows.len(), c, grade, dim, field);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Shape("ragged rows".into()));
            }
            for (j, s) in row.iter().enumerate() {
                m.set(i, j, Multivector::parse(s, dim, field)?)?;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Multivector {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Multivector) -> Result<()> {
        if x.dim() != self.dim || x.variance() != self.variance || x.field() != self.field {
            return Err(Error::Dimension(format!("entry ({i},{j}) lives in another exterior algebra")));
        }
        if !x.is_homogeneous_of(self.grade) {
            return Err(Error::Grade(format!("entry ({i},{j}) is not of grade {}", self.grade)));
        }
        self.entries[i * self.cols + j] = x;
        Ok(())
    }

    pub fn entries(&self) -> &[Multivector] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> Vec<Multivector> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Multivector> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> ExtMatrix {
        let mut t = ExtMatrix { rows: self.cols, cols: self.rows, ..self.clone() };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Sub-matrix of the given rows.
    pub fn select_rows(&self, rows: &[usize]) -> ExtMatrix {
        let mut m = ExtMatrix { rows: rows.len(), entries: Vec::new(), ..self.clone() };
        for &i in rows {
            m.entries.extend(self.row(i));
        }
        m
    }

    pub fn vcat(a: &ExtMatrix, b: &ExtMatrix) -> Result<ExtMatrix> {
        if a.cols != b.cols || a.grade != b.grade || a.dim != b.dim {
            return Err(Error::Shape("vertical concatenation of incompatible matrices".into()));
        }
        let mut m = a.clone();
        m.rows += b.rows;
        m.entries.extend(b.entries.iter().cloned());
        Ok(m)
    }

    /// `(A ∧ B)_{ij} = Σ_k A_{ik} ∧ B_{kj}`.
    pub fn ext_mul(&self, other: &ExtMatrix) -> Result<ExtMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.dim != other.dim || self.variance != other.variance || self.field != other.field {
            return Err(Error::Dimension("product across different exterior algebras".into()));
        }
        let grade = self.grade + other.grade;
        let mut m = ExtMatrix::zeros_with(self.rows, other.cols, grade, self.dim, self.variance, self.field);
        let one = self.field.one();
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Multivector::zero(self.dim, self.variance, self.field);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_scaled(&one, &(a ^ b));
                    }
                }
                m.entries[i * other.cols + j] = acc;
            }
        }
        Ok(m)
    }

    /// `S · A` for a scalar matrix `S`.
    pub fn left_scalar(&self, s: &ScalarMatrix) -> Result<ExtMatrix> {
        if s.cols() != self.rows {
            return Err(Error::Shape("scalar factor has the wrong number of columns".into()));
        }
        let mut m = ExtMatrix { rows: s.rows(), entries: Vec::new(), ..self.clone() };
        for i in 0..s.rows() {
            for j in 0..self.cols {
                let mut acc = Multivector::zero(self.dim, self.variance, self.field);
                for k in 0..self.rows {
                    acc.add_scaled(s.get(i, k), self.get(k, j));
                }
                m.entries.push(acc);
            }
        }
        Ok(m)
    }

    /// `A · S` for a scalar matrix `S`.
    pub fn right_scalar(&self, s: &ScalarMatrix) -> Result<ExtMatrix> {
        Ok(self.transpose().left_scalar(&s.transpose())?.transpose())
    }

    /// Applies `g ∈ GL(V)` to every entry.
    pub fn apply_basis_change(&self, g: &ScalarMatrix) -> ExtMatrix {
        ExtMatrix { entries: self.entries.iter().map(|e| e.apply_linear(g)).collect(), ..self.clone() }
    }

    pub fn map_entries(&self, f: impl Fn(&Multivector) -> Multivector) -> ExtMatrix {
        ExtMatrix { entries: self.entries.iter().map(f).collect(), ..self.clone() }
    }

    /// Dimension and a basis of the span of the entries.
    pub fn span_basis(&self) -> (usize, Vec<Multivector>) {
        let mut kept: Vec<Multivector> = Vec::new();
        let mut rank = 0;
        for e in &self.entries {
            if e.is_zero() {
                continue;
            }
            let mut trial = kept.clone();
            trial.push(e.clone());
            let r = coords_matrix(&trial, self.grade).rank();
            if r > rank {
                rank = r;
                kept = trial;
            }
        }
        (rank, kept)
    }

    pub fn to_json(&self) -> ExtMatrixJson {
        ExtMatrixJson {
            rows: self.rows,
            cols: self.cols,
            grade: self.grade,
            dim: (self.dim != 5).then_some(self.dim),
            entries: (0..self.rows).map(|i| self.row(i).iter().map(|e| e.to_string()).collect()).collect(),
        }
    }

    pub fn from_json(json: &ExtMatrixJson, field: Field) -> Result<ExtMatrix> {
        let dim = json.dim.unwrap_or(5);
        if json.entries.len() != json.rows || json.entries.iter().any(|r| r.len() != json.cols) {
            return Err(Error::Shape("entries do not match rows/cols".into()));
        }
        let rows: Vec<Vec<&str>> = json.entries.iter().map(|r| r.iter().map(|s| s.as_str()).collect()).collect();
        let refs: Vec<&[&str]> = rows.iter().map(|r| r.as_slice()).collect();
        ExtMatrix::parse(&refs, json.grade, dim, field)
    }
}

/// Columns are the grade-`grade` coordinates of `vs`.
pub fn coords_matrix(vs: &[Multivector], grade: usize) -> ScalarMatrix {
    let Some(first) = vs.first() else {
        return ScalarMatrix::zeros(0, 0, Field::Rationals);
    };
    let cols: Vec<Vec<Scalar>> = vs.iter().map(|v| v.coords(grade)).collect();
    let mut m = ScalarMatrix::zeros(cols[0].len(), vs.len(), first.field());
    for (j, c) in cols.into_iter().enumerate() {
        for (i, x) in c.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

impl fmt::Display for ExtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Columns,
}

/// Where a family of combinations degenerates: exactly at the roots of `gcd`
/// (everywhere when it is zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneracy {
    pub gcd: BinaryForm,
    pub roots: Option<usize>,
}

impl Degeneracy {
    fn from_gcd(gcd: BinaryForm) -> Degeneracy {
        let roots = gcd.distinct_root_count();
        Degeneracy { gcd, roots }
    }

    pub fn is_degenerate_somewhere(&self) -> bool {
        !self.gcd.is_unit()
    }
}

/// Combinations `s·r₁ + t·r₂` of the two rows (or columns) whose entries all
/// lie on one line.
pub fn degenerate_combinations(a: &ExtMatrix, axis: Axis) -> Result<Degeneracy> {
    if a.grade() != 1 {
        return Err(Error::Grade("degeneracy test expects grade-1 entries".into()));
    }
    let lines: Vec<PolyMultivector> = match axis {
        Axis::Rows if a.rows() == 2 => (0..a.cols()).map(|j| PolyMultivector::linear(a.get(0, j), a.get(1, j))).collect(),
        Axis::Columns if a.cols() == 2 => (0..a.rows()).map(|i| PolyMultivector::linear(a.get(i, 0), a.get(i, 1))).collect(),
        _ => return Err(Error::Shape(format!("{axis:?} test needs exactly two of them, got {}x{}", a.rows(), a.cols()))),
    };
    let mut forms = Vec::new();
    for j in 0..lines.len() {
        for k in j + 1..lines.len() {
            forms.extend(lines[j].wedge(&lines[k]).coefficient_forms().into_iter().map(|(_, f)| f));
        }
    }
    if forms.is_empty() {
        return Ok(Degeneracy::from_gcd(BinaryForm::zero(a.field(), 0)));
    }
    Ok(Degeneracy::from_gcd(form_gcd(&forms)))
}

/// For a 2×r matrix: generalized columns `Σ c_j col_j` of the form `(λx, μx)`
/// occur exactly for `(a : b)` at the roots of the returned gcd, namely where
/// the vectors `b·p_{1j} − a·p_{2j}` become dependent.
pub fn degenerate_generalized_columns(p: &ExtMatrix) -> Result<Degeneracy> {
    if p.grade() != 1 || p.rows() != 2 {
        return Err(Error::Shape("expects a 2-row matrix of vectors".into()));
    }
    let field = p.field();
    let mut acc = PolyMultivector::constant(Multivector::scalar(p.dim(), p.variance(), field.one()));
    for j in 0..p.cols() {
        acc = acc.wedge(&PolyMultivector::linear(&-p.get(1, j), p.get(0, j)));
    }
    Ok(Degeneracy::from_gcd(acc.content()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn n(rows: &[&[&str]]) -> ExtMatrix {
        ExtMatrix::parse(rows, 1, 5, Q).unwrap()
    }

    #[test]
    fn ext_mul_examples() {
        let n4 = n(&[&["e1", "e2"], &["e3", "e4"]]);
        let col = ExtMatrix::parse(&[&["0"], &["e024"]], 3, 5, Q).unwrap();
        assert!(n4.ext_mul(&col).unwrap().is_zero());
        let m = ExtMatrix::parse(&[&["e234", "0"], &["0", "0"]], 3, 5, Q).unwrap();
        let prod = n4.ext_mul(&m).unwrap();
        assert_eq!(prod.get(0, 0), &Multivector::parse("e1234", 5, Q).unwrap());
        let id = ExtMatrix::parse(&[&["1", "0"], &["0", "1"]], 0, 5, Q).unwrap();
        let m1 = ExtMatrix::parse(&[&["e023+e014", "e134+e024+e013"], &["e124+e013", "e023+e014"]], 3, 5, Q).unwrap();
        assert_eq!(id.ext_mul(&m1).unwrap(), m1);
    }

    #[test]
    fn degeneracy_examples() {
        let d = degenerate_combinations(&n(&[&["e1", "e2"], &["e3", "e4"]]), Axis::Rows).unwrap();
        assert!(d.gcd.is_unit());
        let d = degenerate_combinations(&n(&[&["e1", "e2"], &["e2", "e1"]]), Axis::Rows).unwrap();
        assert_eq!(d.gcd, BinaryForm::from_i64(Q, &[1, 0, -1]));
        assert_eq!(d.roots, Some(2));
        // the only degenerate column combination is the zero second column
        let d = degenerate_combinations(&n(&[&["e1", "0"], &["e2", "0"]]), Axis::Columns).unwrap();
        assert_eq!(d.gcd, BinaryForm::from_i64(Q, &[1, 0, 0]));
        assert_eq!(d.roots, Some(1));
        assert!(degenerate_combinations(&n(&[&["e1", "e2", "e3"]]), Axis::Rows).is_err());
    }

    #[test]
    fn generalized_columns_of_pencils() {
        let chain = n(&[&["e0", "e1", "e2"], &["e1", "e2", "e3"]]);
        assert!(degenerate_generalized_columns(&chain).unwrap().gcd.is_unit());
        let bad = n(&[&["e0", "e1", "e2"], &["e0", "e2", "e3"]]);
        assert!(degenerate_generalized_columns(&bad).unwrap().is_degenerate_somewhere());
    }

    #[test]
    fn json_round_trip() {
        let m = ExtMatrix::parse(&[&["e023+e014", "-e134"], &["0", "1/2*e012"]], 3, 5, Q).unwrap();
        let j = serde_json::to_string(&m.to_json()).unwrap();
        let back: ExtMatrixJson = serde_json::from_str(&j).unwrap();
        assert_eq!(ExtMatrix::from_json(&back, Q).unwrap(), m);
    }

    #[test]
    fn scalar_actions_and_transpose() {
        let a = n(&[&["e1", "e2"], &["e3", "e4"]]);
        let s = ScalarMatrix::from_i64(&[&[0, 1], &[1, 0]], Q);
        assert_eq!(a.left_scalar(&s).unwrap(), n(&[&["e3", "e4"], &["e1", "e2"]]));
        assert_eq!(a.right_scalar(&s).unwrap(), n(&[&["e2", "e1"], &["e4", "e3"]]));
        assert_eq!(a.transpose(), n(&[&["e1", "e3"], &["e2", "e4"]]));
        assert_eq!(a.span_basis().0, 4);
        assert_eq!(n(&[&["e1", "e2"], &["e3", "e1"]]).span_basis().0, 3);
    }
}
