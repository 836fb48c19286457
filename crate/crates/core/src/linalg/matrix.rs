use std::fmt;

use super::echelon::{LinearSystem, Solution};
use super::field::{Field, FieldElement};
use super::sparse::{from_dense, SparseMatrix};
use super::subspace::Subspace;
use super::LinalgError;

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<FieldElement>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            field,
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|x| field.from_i64(*x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [FieldElement] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let t = a * b;
                        out.data[i * other.cols + j] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(
            self.cols,
            v.len(),
            "dimension mismatch in matrix-vector product"
        );
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix {
            nrows: self.rows,
            cols: (0..self.cols)
                .map(|c| from_dense(&self.column(c)))
                .collect(),
        }
    }

    pub fn from_sparse(field: Field, m: &SparseMatrix) -> Matrix {
        let mut out = Matrix::zeros(field, m.nrows, m.ncols());
        for (c, col) in m.cols.iter().enumerate() {
            for (r, v) in col {
                out.set(*r, c, v.clone());
            }
        }
        out
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_sparse(
            self.field,
            self.cols,
            (0..self.rows).map(|r| from_dense(self.row(r))),
        )
    }

    pub fn rank(&self) -> usize {
        self.row_space().dim()
    }

    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }

    /// Exact inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "only square matrices have inverses");
        let n = self.rows;
        let mut columns = Vec::with_capacity(n);
        for c in 0..n {
            let mut rhs = vec![self.field.zero(); n];
            rhs[c] = self.field.one();
            let sol = solve_linear_system(self, &rhs).ok()?;
            if !sol.kernel.is_zero() {
                return None;
            }
            columns.push(sol.particular);
        }
        Some(Matrix::from_columns(self.field, n, &columns))
    }

    fn system(&self) -> LinearSystem {
        let mut sys = LinearSystem::new(self.field, self.cols);
        for r in 0..self.rows {
            sys.push_homogeneous(from_dense(self.row(r)));
        }
        sys
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Exact kernel of `a`, in canonical echelon basis.
pub fn kernel_basis(a: &Matrix) -> Subspace {
    a.system().kernel()
}

/// One solution of `a x = b` and the kernel of `a`.
pub fn solve_linear_system(a: &Matrix, b: &[FieldElement]) -> Result<Solution, LinalgError> {
    assert_eq!(a.rows, b.len(), "right-hand side length mismatch");
    let mut sys = LinearSystem::new(a.field, a.cols);
    for r in 0..a.rows {
        sys.push(from_dense(a.row(r)), b[r].clone());
    }
    sys.solve()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve() {
        let q = Field::Rational;
        let id = Matrix::identity(q, 3);
        let b: Vec<_> = [4, -1, 7].iter().map(|x| q.from_i64(*x)).collect();
        let sol = solve_linear_system(&id, &b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_zero());
        assert!(kernel_basis(&id).is_zero());
        assert_eq!(id.inverse(), Some(id.clone()));
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let f = Field::Prime(5);
        let z = Matrix::zeros(f, 2, 4);
        assert_eq!(kernel_basis(&z), Subspace::full(f, 4));
    }

    #[test]
    fn inverse_roundtrip_and_singular() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q, 2));
        assert_eq!(Matrix::from_i64(q, &[&[1, 2], &[2, 4]]).inverse(), None);
    }

    #[test]
    fn gf2_single_equation() {
        let f = Field::Prime(2);
        let a = Matrix::from_i64(f, &[&[1, 1]]);
        let sol = solve_linear_system(&a, &[f.one()]).unwrap();
        assert_eq!(a.mul_vec(&sol.particular), vec![f.one()]);
        assert_eq!(sol.kernel.dim(), 1);
    }
}
