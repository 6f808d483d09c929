//! Finite-dimensional simple Lie algebras as plain data: structure
//! constants, the normalized invariant form, dual bases and `h^vee`.
//!
//! Only `sl_N` is constructed here, but [`SimpleLieAlgebra::from_data`]
//! accepts any constants; [`SimpleLieAlgebra::invariant_violations`] reports
//! which of the required identities fail.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    SL(usize),
}

/// Sparse structure-constant row: `[J^a, J^b] = sum (d, c) c * J^d`.
pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleLieAlgebra {
    pub name: String,
    pub family: Family,
    pub rank: usize,
    pub basis_labels: Vec<String>,
    /// `structure_constants[a][b]` lists the nonzero `c[a][b][d]`.
    pub structure_constants: Vec<Vec<SparseRow>>,
    pub form_matrix: Vec<Vec<Rational>>,
    pub dual_coxeter: i64,
    /// Rows of the inverse form matrix: `J_a = sum_b inverse_form[a][b] J^b`.
    inverse_form: Vec<Vec<Rational>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieVector {
    algebra: String,
    coeffs: BTreeMap<usize, Rational>,
}

impl LieVector {
    pub fn new(algebra: &SimpleLieAlgebra, coeffs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map = BTreeMap::new();
        for (i, c) in coeffs {
            let e: &mut Rational = map.entry(i).or_insert_with(Rational::zero);
            *e += &c;
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        LieVector {
            algebra: algebra.name.clone(),
            coeffs: map,
        }
    }

    pub fn algebra(&self) -> &str {
        &self.algebra
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &LieVector) -> LieVector {
        let mut coeffs = self.coeffs.clone();
        for (i, c) in &other.coeffs {
            let e = coeffs.entry(*i).or_insert_with(Rational::zero);
            *e += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LieVector {
            algebra: self.algebra.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, r: &Rational) -> LieVector {
        let mut coeffs: BTreeMap<usize, Rational> =
            self.coeffs.iter().map(|(i, c)| (*i, c * r)).collect();
        coeffs.retain(|_, c| !c.is_zero());
        LieVector {
            algebra: self.algebra.clone(),
            coeffs,
        }
    }
}

impl fmt::Display for LieVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (i, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*#{i}")?;
        }
        Ok(())
    }
}

/// Gauss-Jordan inverse of a dense rational matrix.
pub fn invert_matrix(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &a[col][j] * &f;
                a[r][j] -= &t;
                let t = &inv[col][j] * &f;
                inv[r][j] -= &t;
            }
        }
    }
    Some(inv)
}

type Matrix = Vec<Vec<Rational>>;

fn mat_zero(n: usize) -> Matrix {
    vec![vec![Rational::zero(); n]; n]
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = mat_zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    let t = &a[i][k] * &b[k][j];
                    out[i][j] += &t;
                }
            }
        }
    }
    out
}

impl SimpleLieAlgebra {
    /// `sl_N` on the basis `E_ij (i<j)`, `H_1..H_{N-1}`, `E_ij (i>j)` with
    /// trace form; `h^vee = N`.
    pub fn sl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::NotSimple(n));
        }
        let mut labels = Vec::new();
        let mut mats: Vec<Matrix> = Vec::new();
        let mut offdiag_index = BTreeMap::new();
        let unit = |i: usize, j: usize| {
            let mut m = mat_zero(n);
            m[i][j] = Rational::one();
            m
        };
        for i in 0..n {
            for j in (i + 1)..n {
                offdiag_index.insert((i, j), labels.len());
                labels.push(format!("E{}{}", i + 1, j + 1));
                mats.push(unit(i, j));
            }
        }
        let cartan_start = labels.len();
        for i in 0..n - 1 {
            labels.push(format!("H{}", i + 1));
            let mut m = mat_zero(n);
            m[i][i] = Rational::one();
            m[i + 1][i + 1] = Rational::from_int(-1);
            mats.push(m);
        }
        for i in 0..n {
            for j in 0..i {
                offdiag_index.insert((i, j), labels.len());
                labels.push(format!("E{}{}", i + 1, j + 1));
                mats.push(unit(i, j));
            }
        }
        let dim = labels.len();
        let decompose = |m: &Matrix| -> SparseRow {
            let mut row = Vec::new();
            let mut running = Rational::zero();
            for i in 0..n - 1 {
                running += &m[i][i];
                if !running.is_zero() {
                    row.push((cartan_start + i, running.clone()));
                }
            }
            for (&(i, j), &idx) in &offdiag_index {
                if !m[i][j].is_zero() {
                    row.push((idx, m[i][j].clone()));
                }
            }
            row.sort_by_key(|(i, _)| *i);
            row
        };
        let mut sc = vec![vec![Vec::new(); dim]; dim];
        let mut form = vec![vec![Rational::zero(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let ab = mat_mul(&mats[a], &mats[b]);
                let ba = mat_mul(&mats[b], &mats[a]);
                let comm: Matrix = (0..n)
                    .map(|i| (0..n).map(|j| &ab[i][j] - &ba[i][j]).collect())
                    .collect();
                sc[a][b] = decompose(&comm);
                let mut tr = Rational::zero();
                for i in 0..n {
                    tr += &ab[i][i];
                }
                form[a][b] = tr;
            }
        }
        Self::from_data(format!("sl{n}"), Family::SL(n), n - 1, labels, sc, form, n as i64)
    }

    pub fn from_data(
        name: String,
        family: Family,
        rank: usize,
        basis_labels: Vec<String>,
        structure_constants: Vec<Vec<SparseRow>>,
        form_matrix: Vec<Vec<Rational>>,
        dual_coxeter: i64,
    ) -> Result<Self> {
        let dim = basis_labels.len();
        if structure_constants.len() != dim
            || structure_constants.iter().any(|r| r.len() != dim)
            || form_matrix.len() != dim
            || form_matrix.iter().any(|r| r.len() != dim)
        {
            return Err(Error::Domain("structure constants / form have wrong shape".into()));
        }
        let inverse_form = invert_matrix(&form_matrix)
            .ok_or_else(|| Error::Domain("form matrix is singular".into()))?;
        Ok(SimpleLieAlgebra {
            name,
            family,
            rank,
            basis_labels,
            structure_constants,
            form_matrix,
            dual_coxeter,
            inverse_form,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }

    pub fn basis_vector(&self, a: usize) -> LieVector {
        LieVector::new(self, [(a, Rational::one())])
    }

    pub fn inverse_form(&self) -> &[Vec<Rational>] {
        &self.inverse_form
    }

    fn check(&self, v: &LieVector) -> Result<()> {
        if v.algebra != self.name || v.coeffs.keys().any(|&i| i >= self.dimension()) {
            return Err(Error::AlgebraMismatch(format!(
                "vector over {} used with {}",
                v.algebra, self.name
            )));
        }
        Ok(())
    }

    pub fn bracket(&self, x: &LieVector, y: &LieVector) -> Result<LieVector> {
        self.check(x)?;
        self.check(y)?;
        let mut out = BTreeMap::new();
        for (a, ca) in &x.coeffs {
            for (b, cb) in &y.coeffs {
                let cab = ca * cb;
                for (d, c) in &self.structure_constants[*a][*b] {
                    let e: &mut Rational = out.entry(*d).or_insert_with(Rational::zero);
                    *e += &(&cab * c);
                }
            }
        }
        Ok(LieVector::new(self, out))
    }

    pub fn form(&self, x: &LieVector, y: &LieVector) -> Result<Rational> {
        self.check(x)?;
        self.check(y)?;
        let mut acc = Rational::zero();
        for (a, ca) in &x.coeffs {
            for (b, cb) in &y.coeffs {
                let f = &self.form_matrix[*a][*b];
                if !f.is_zero() {
                    acc += &(&(ca * cb) * f);
                }
            }
        }
        Ok(acc)
    }

    /// `{J_a}` with `(J^a, J_b) = delta^a_b`.
    pub fn dual_basis(&self) -> Vec<LieVector> {
        (0..self.dimension())
            .map(|a| {
                LieVector::new(
                    self,
                    self.inverse_form[a]
                        .iter()
                        .enumerate()
                        .map(|(b, c)| (b, c.clone())),
                )
            })
            .collect()
    }

    /// Dual of an arbitrary basis with respect to the invariant form.
    pub fn dual_of(&self, basis: &[LieVector]) -> Result<Vec<LieVector>> {
        let gram: Vec<Vec<Rational>> = basis
            .iter()
            .map(|u| basis.iter().map(|v| self.form(u, v)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let inv = invert_matrix(&gram).ok_or_else(|| Error::Domain("degenerate basis".into()))?;
        Ok(inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(basis)
                    .fold(LieVector::new(self, []), |acc, (c, v)| acc.add(&v.scale(c)))
            })
            .collect())
    }

    /// Nonzero entries of the Casimir tensor `sum_a J^a (x) J_a`, as
    /// `(a, b, coeff)` meaning `coeff * J^a (x) J^b`.
    pub fn casimir_pairs(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for (a, row) in self.inverse_form.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((a, b, c.clone()));
                }
            }
        }
        out
    }

    pub fn antisymmetry_violation(&self) -> Option<String> {
        let n = self.dimension();
        for a in 0..n {
            for b in 0..n {
                let x = self.bracket(&self.basis_vector(a), &self.basis_vector(b)).ok()?;
                let y = self.bracket(&self.basis_vector(b), &self.basis_vector(a)).ok()?;
                if !x.add(&y).is_zero() {
                    return Some(format!("[{0},{1}] + [{1},{0}] != 0", self.basis_labels[a], self.basis_labels[b]));
                }
            }
        }
        None
    }

    pub fn jacobi_violation(&self) -> Option<String> {
        let n = self.dimension();
        let e = |i| self.basis_vector(i);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let t1 = self.bracket(&e(a), &self.bracket(&e(b), &e(c)).ok()?).ok()?;
                    let t2 = self.bracket(&e(b), &self.bracket(&e(c), &e(a)).ok()?).ok()?;
                    let t3 = self.bracket(&e(c), &self.bracket(&e(a), &e(b)).ok()?).ok()?;
                    if !t1.add(&t2).add(&t3).is_zero() {
                        return Some(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.basis_labels[a], self.basis_labels[b], self.basis_labels[c]
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn invariance_violation(&self) -> Option<String> {
        let n = self.dimension();
        let e = |i| self.basis_vector(i);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = self.form(&self.bracket(&e(x), &e(y)).ok()?, &e(z)).ok()?;
                    let r = self.form(&e(y), &self.bracket(&e(x), &e(z)).ok()?).ok()?;
                    if !(&l + &r).is_zero() {
                        return Some(format!(
                            "([{0},{1}],{2}) + ({1},[{0},{2}]) = {3}",
                            self.basis_labels[x],
                            self.basis_labels[y],
                            self.basis_labels[z],
                            &l + &r
                        ));
                    }
                }
            }
        }
        None
    }

    /// `sum_a [J^a, [J_a, x]] = 2 h^vee x` for every basis `x`.
    pub fn casimir_violation(&self) -> Option<String> {
        let n = self.dimension();
        let dual = self.dual_basis();
        let two_h = Rational::from_int(2 * self.dual_coxeter);
        for x in 0..n {
            let ex = self.basis_vector(x);
            let mut acc = LieVector::new(self, []);
            for (a, ja) in dual.iter().enumerate() {
                let inner = self.bracket(ja, &ex).ok()?;
                acc = acc.add(&self.bracket(&self.basis_vector(a), &inner).ok()?);
            }
            if acc != ex.scale(&two_h) {
                return Some(format!(
                    "adjoint Casimir on {} gives {} (expected {}*{})",
                    self.basis_labels[x], acc, two_h, self.basis_labels[x]
                ));
            }
        }
        None
    }

    pub fn biduality_violation(&self) -> Option<String> {
        let basis: Vec<LieVector> = (0..self.dimension()).map(|a| self.basis_vector(a)).collect();
        let dd = self.dual_of(&self.dual_basis()).ok()?;
        if dd != basis {
            return Some("dual of dual basis differs from basis".into());
        }
        for (a, ja) in self.dual_basis().iter().enumerate() {
            for (b, eb) in basis.iter().enumerate() {
                let expect = if a == b { Rational::one() } else { Rational::zero() };
                if self.form(eb, ja).ok()? != expect {
                    return Some(format!("(J^{b}, J_{a}) != delta"));
                }
            }
        }
        None
    }

    /// All type invariants, as `(name, violation)` in a fixed order.
    pub fn invariant_violations(&self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("antisymmetry", self.antisymmetry_violation()),
            ("jacobi", self.jacobi_violation()),
            ("invariance", self.invariance_violation()),
            ("adjoint-casimir", self.casimir_violation()),
            ("form-invertible", None),
            ("biduality", self.biduality_violation()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(g: &SimpleLieAlgebra, l: &str) -> LieVector {
        g.basis_vector(g.label_index(l).unwrap())
    }

    #[test]
    fn sl1_is_rejected() {
        assert_eq!(SimpleLieAlgebra::sl(1), Err(Error::NotSimple(1)));
    }

    #[test]
    fn sl2_shape_and_order() {
        let g = SimpleLieAlgebra::sl(2).unwrap();
        assert_eq!(g.dimension(), 3);
        assert_eq!(g.rank, 1);
        assert_eq!(g.dual_coxeter, 2);
        assert_eq!(g.basis_labels, vec!["E12", "H1", "E21"]);
    }

    #[test]
    fn sl3_basis_order() {
        let g = SimpleLieAlgebra::sl(3).unwrap();
        assert_eq!(
            g.basis_labels,
            vec!["E12", "E13", "E23", "H1", "H2", "E21", "E31", "E32"]
        );
        assert_eq!(g.dual_coxeter, 3);
    }

    #[test]
    fn sl2_dual_basis() {
        let g = SimpleLieAlgebra::sl(2).unwrap();
        let d = g.dual_basis();
        assert_eq!(d[0], idx(&g, "E21"));
        assert_eq!(d[1], idx(&g, "H1").scale(&Rational::new(1, 2)));
        assert_eq!(d[2], idx(&g, "E12"));
    }

    #[test]
    fn mismatched_algebra_is_rejected() {
        let g2 = SimpleLieAlgebra::sl(2).unwrap();
        let g3 = SimpleLieAlgebra::sl(3).unwrap();
        let x = g3.basis_vector(7);
        assert!(matches!(g2.bracket(&g2.basis_vector(0), &x), Err(Error::AlgebraMismatch(_))));
        assert!(matches!(g2.form(&x, &x), Err(Error::AlgebraMismatch(_))));
    }

    #[test]
    fn invariants_hold_for_small_ranks() {
        for n in 2..=4 {
            let g = SimpleLieAlgebra::sl(n).unwrap();
            for (name, v) in g.invariant_violations() {
                assert!(v.is_none(), "sl{n} {name}: {v:?}");
            }
        }
    }
}
