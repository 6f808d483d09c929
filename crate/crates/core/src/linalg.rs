//! Sparse exact elimination over `Q(k, c, lambda, mu)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::RationalFunction;

/// Square sparse matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    rows: Vec<BTreeMap<usize, RationalFunction>>,
}

impl SparseMatrix {
    pub fn new(n: usize) -> Self {
        SparseMatrix {
            n,
            rows: vec![BTreeMap::new(); n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, r: usize, c: usize, v: RationalFunction) {
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> RationalFunction {
        self.rows[r].get(&c).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, RationalFunction> {
        &self.rows[r]
    }

    /// Determinant by Gaussian elimination with Markowitz pivoting
    /// (smallest `(row count - 1) * (column count - 1)`, then smallest entry).
    pub fn determinant(&self) -> RationalFunction {
        match eliminate(self.rows.clone(), self.n, None) {
            Some((det, _)) => det,
            None => RationalFunction::zero(),
        }
    }

    /// Solves `A x = b`; singular matrices are a domain error.
    pub fn solve(&self, b: &[RationalFunction]) -> Result<Vec<RationalFunction>> {
        let (_, x) = eliminate(self.rows.clone(), self.n, Some(b.to_vec()))
            .ok_or_else(|| Error::Domain("singular matrix".into()))?;
        Ok(x.expect("right-hand side was given"))
    }
}

fn entry_cost(v: &RationalFunction) -> usize {
    v.numer().len() + v.denom().len()
}

type Elim = (RationalFunction, Option<Vec<RationalFunction>>);

fn eliminate(
    mut rows: Vec<BTreeMap<usize, RationalFunction>>,
    n: usize,
    mut rhs: Option<Vec<RationalFunction>>,
) -> Option<Elim> {
    let mut det = RationalFunction::one();
    let mut sign_flip = false;
    let mut row_done = vec![false; n];
    let mut col_count = vec![0usize; n];
    for r in &rows {
        for c in r.keys() {
            col_count[*c] += 1;
        }
    }
    // (pivot row, pivot col) in elimination order
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if row_done[r] {
                continue;
            }
            let rc = row.len();
            if rc == 0 {
                return None;
            }
            for (c, v) in row {
                let cost = (rc - 1) * (col_count[*c] - 1);
                let key = (cost, entry_cost(v), r, *c);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let (_, _, pr, pc) = best?;
        let pivot = rows[pr][&pc].clone();
        det = &det * &pivot;
        row_done[pr] = true;
        order.push((pr, pc));
        let prow = rows[pr].clone();
        for c in prow.keys() {
            col_count[*c] -= 1;
        }
        let inv = pivot.recip().ok()?;
        for r in 0..n {
            if row_done[r] {
                continue;
            }
            let Some(f) = rows[r].get(&pc).cloned() else {
                continue;
            };
            let f = &f * &inv;
            for (c, v) in &prow {
                let old_present = rows[r].contains_key(c);
                let nv = &rows[r].get(c).cloned().unwrap_or_else(RationalFunction::zero) - &(&f * v);
                if nv.is_zero() {
                    if old_present {
                        rows[r].remove(c);
                        col_count[*c] -= 1;
                    }
                } else {
                    if !old_present {
                        col_count[*c] += 1;
                    }
                    rows[r].insert(*c, nv);
                }
            }
            if let Some(b) = rhs.as_mut() {
                let t = &f * &b[pr];
                b[r] = &b[r] - &t;
            }
        }
    }
    // permutation sign of the pivot positions
    let mut perm: Vec<usize> = vec![0; n];
    for (r, c) in &order {
        perm[*r] = *c;
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign_flip = !sign_flip;
        }
    }
    if sign_flip {
        det = -&det;
    }
    let x = rhs.map(|b| {
        let mut x = vec![RationalFunction::zero(); n];
        for &(r, c) in order.iter().rev() {
            let mut acc = b[r].clone();
            for (cc, v) in &rows[r] {
                if *cc != c {
                    acc = &acc - &(v * &x[*cc]);
                }
            }
            x[c] = acc.checked_div(&rows[r][&c]).expect("pivot is nonzero");
        }
        x
    });
    Some((det, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    #[test]
    fn determinant_and_solve() {
        let mut m = SparseMatrix::new(3);
        m.set(0, 1, rf("k"));
        m.set(1, 0, rf("1"));
        m.set(1, 2, rf("c"));
        m.set(2, 2, rf("k + 2"));
        m.set(2, 0, rf("3"));
        // det = -k * (1*(k+2) - c*3)
        assert_eq!(m.determinant(), rf("-k^2 + 3*k*c - 2*k"));
        let b = vec![rf("1"), rf("0"), rf("1")];
        let x = m.solve(&b).unwrap();
        for r in 0..3 {
            let mut acc = RationalFunction::zero();
            for (c, v) in m.row(r) {
                acc = &acc + &(v * &x[*c]);
            }
            assert_eq!(acc, b[r]);
        }
    }

    #[test]
    fn singular_matrix() {
        let mut m = SparseMatrix::new(2);
        m.set(0, 0, rf("k"));
        m.set(1, 0, rf("1"));
        assert!(m.determinant().is_zero());
        assert!(m.solve(&[rf("1"), rf("1")]).is_err());
    }
}
