//! Sparse Gauss-Jordan elimination with an incremental echelon basis.

use std::collections::BTreeMap;

use super::field::{Field, FieldElement};
use super::sparse::{normalize, scale, sub_scaled, to_dense, SparseVec};
use super::subspace::Subspace;
use super::LinalgError;

/// Rows in echelon form: every stored row starts with a 1 in a column that
/// no other row leads in.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        let mut pos = 0;
        while pos < row.len() {
            let col = row[pos].0;
            match self.pivot_row[col] {
                Some(r) => {
                    let factor = row[pos].1.clone();
                    row = sub_scaled(&row, &self.rows[r], &factor);
                }
                None => pos += 1,
            }
        }
        row
    }

    /// Adds `row` to the span. Returns the new pivot column, or `None` when the
    /// row was already dependent.
    pub fn insert(&mut self, row: SparseVec) -> Option<usize> {
        let row = self.reduce(row);
        let (lead, lead_val) = row.first()?.clone();
        let inv = lead_val.inv();
        let row = scale(&row, &inv);
        if self.field == Field::Rational {
            // Over Q the basis is kept fully reduced; otherwise entries grow
            // with every insertion.
            for r in self.rows.iter_mut() {
                if let Ok(k) = r.binary_search_by_key(&lead, |e| e.0) {
                    let factor = r[k].1.clone();
                    *r = sub_scaled(r, &row, &factor);
                }
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        Some(lead)
    }

    pub fn contains(&self, row: SparseVec) -> bool {
        self.reduce(row).is_empty()
    }

    /// Consumes the basis and returns it in reduced row echelon form, sorted
    /// by pivot column.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut done = Echelon::new(self.field, self.ncols);
        let mut out: Vec<SparseVec> = vec![Vec::new(); order.len()];
        for (slot, &r) in order.iter().enumerate().rev() {
            let row = &self.rows[r];
            let lead = row[0].clone();
            let mut tail = done.reduce(row[1..].to_vec());
            tail.insert(0, lead.clone());
            done.pivot_row[lead.0] = Some(done.rows.len());
            done.rows.push(tail.clone());
            out[slot] = tail;
        }
        out
    }
}

/// A particular solution together with the full solution space of the
/// homogeneous system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<FieldElement>,
    pub kernel: Subspace,
}

/// Linear system `A x = b` assembled row by row over sparse coefficients.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Field,
    nvars: usize,
    rows: Vec<SparseVec>,
}

impl LinearSystem {
    pub fn new(field: Field, nvars: usize) -> Self {
        LinearSystem {
            field,
            nvars,
            rows: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds `Σ coef·x_var = rhs`. Terms may repeat and be unsorted.
    pub fn push(&mut self, terms: SparseVec, rhs: FieldElement) {
        debug_assert!(terms.iter().all(|(i, _)| *i < self.nvars));
        let mut row = normalize(terms);
        if !rhs.is_zero() {
            row.push((self.nvars, rhs));
        }
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn push_homogeneous(&mut self, terms: SparseVec) {
        let zero = self.field.zero();
        self.push(terms, zero);
    }

    /// Forces `x_var = 0`.
    pub fn fix_zero(&mut self, var: usize) {
        let one = self.field.one();
        self.push_homogeneous(vec![(var, one)]);
    }

    pub fn solve(self) -> Result<Solution, LinalgError> {
        let LinearSystem { field, nvars, rows } = self;
        let modular = match field {
            Field::Rational if rows.len() * (nvars + 1) >= super::modular::MODULAR_THRESHOLD => {
                super::modular::rational_rref(&rows, nvars + 1)
            }
            _ => None,
        };
        let rref = match modular {
            // the verified row space contains (0, …, 0, 1)
            Some(rref) if rref.last().map(|r| r[0].0 == nvars).unwrap_or(false) => {
                return Err(LinalgError::NoSolution)
            }
            Some(rref) => rref,
            None => {
                let mut ech = Echelon::new(field, nvars + 1);
                for row in rows {
                    if let Some(lead) = ech.insert(row) {
                        if lead == nvars {
                            return Err(LinalgError::NoSolution);
                        }
                    }
                }
                ech.into_rref()
            }
        };
        let mut particular = vec![field.zero(); nvars];
        let mut is_pivot = vec![false; nvars];
        let mut free_terms: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for row in &rref {
            let p = row[0].0;
            is_pivot[p] = true;
            for (c, v) in &row[1..] {
                if *c == nvars {
                    particular[p] = v.clone();
                } else {
                    free_terms.entry(*c).or_default().push((p, -v));
                }
            }
        }
        let one = field.one();
        let kernel_vectors: Vec<SparseVec> = (0..nvars)
            .filter(|f| !is_pivot[*f])
            .map(|f| {
                let mut v = free_terms.remove(&f).unwrap_or_default();
                v.push((f, one.clone()));
                normalize(v)
            })
            .collect();
        Ok(Solution {
            particular,
            kernel: Subspace::from_sparse(field, nvars, kernel_vectors),
        })
    }

    /// Solution space of the homogeneous system (right-hand sides ignored).
    pub fn kernel(mut self) -> Subspace {
        let nvars = self.nvars;
        for row in &mut self.rows {
            if row.last().map(|(c, _)| *c == nvars).unwrap_or(false) {
                row.pop();
            }
        }
        self.rows.retain(|r| !r.is_empty());
        self.solve()
            .expect("homogeneous systems are consistent")
            .kernel
    }
}

/// Dense helper used by tests and small callers.
pub fn dense_solution(sol: &Solution) -> (Vec<FieldElement>, Vec<Vec<FieldElement>>) {
    let field = sol.kernel.field();
    let n = sol.kernel.ambient();
    (
        sol.particular.clone(),
        sol.kernel
            .basis()
            .iter()
            .map(|v| to_dense(v, n, field))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_is_reduced() {
        let q = Field::Rational;
        let mut e = Echelon::new(q, 3);
        e.insert(vec![
            (0, q.from_i64(1)),
            (1, q.from_i64(2)),
            (2, q.from_i64(3)),
        ]);
        e.insert(vec![(1, q.from_i64(1)), (2, q.from_i64(1))]);
        let r = e.into_rref();
        assert_eq!(r[0], vec![(0, q.from_i64(1)), (2, q.from_i64(1))]);
        assert_eq!(r[1], vec![(1, q.from_i64(1)), (2, q.from_i64(1))]);
    }

    #[test]
    fn inconsistent_system() {
        let q = Field::Rational;
        let mut s = LinearSystem::new(q, 1);
        s.push(vec![(0, q.one())], q.one());
        s.push(vec![(0, q.one())], q.zero());
        assert_eq!(s.solve(), Err(LinalgError::NoSolution));
    }

    #[test]
    fn underdetermined_over_gf2() {
        let f = Field::Prime(2);
        let mut s = LinearSystem::new(f, 2);
        s.push(vec![(0, f.one()), (1, f.one())], f.one());
        let sol = s.solve().unwrap();
        assert_eq!(sol.particular, vec![f.one(), f.zero()]);
        assert_eq!(sol.kernel.dim(), 1);
    }
}
