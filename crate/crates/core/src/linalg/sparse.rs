use super::field::{Field, FieldElement};

/// Sorted `(index, value)` pairs with no explicit zeros.
pub type SparseVec = Vec<(usize, FieldElement)>;

/// Sorts, merges duplicate indices and drops zeros.
pub fn normalize(mut terms: SparseVec) -> SparseVec {
    terms.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (i, v) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += &v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

pub fn to_dense(v: &[(usize, FieldElement)], len: usize, field: Field) -> Vec<FieldElement> {
    let mut out = vec![field.zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn from_dense(v: &[FieldElement]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// `a - factor * b` for sorted sparse vectors.
pub fn sub_scaled(
    a: &[(usize, FieldElement)],
    b: &[(usize, FieldElement)],
    factor: &FieldElement,
) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(factor * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(factor * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &[(usize, FieldElement)], factor: &FieldElement) -> SparseVec {
    if factor.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, c)| (*i, c * factor)).collect()
}

/// Accumulates `coef * v` into a dense buffer.
pub fn axpy_dense(acc: &mut [FieldElement], coef: &FieldElement, v: &[(usize, FieldElement)]) {
    if coef.is_zero() {
        return;
    }
    for (i, c) in v {
        let t = coef * c;
        acc[*i] += &t;
    }
}

/// Column-major sparse matrix: `cols[j]` is the image of the `j`-th unit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        SparseMatrix {
            nrows: n,
            cols: (0..n).map(|i| vec![(i, field.one())]).collect(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &[(usize, FieldElement)]) -> SparseVec {
        let mut terms = Vec::new();
        for (j, c) in v {
            for (i, a) in &self.cols[*j] {
                terms.push((*i, a * c));
            }
        }
        normalize(terms)
    }

    pub fn apply_dense(&self, v: &[FieldElement], field: Field) -> Vec<FieldElement> {
        let mut out = vec![field.zero(); self.nrows];
        for (j, c) in v.iter().enumerate() {
            axpy_dense(&mut out, c, &self.cols[j]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows, "dimension mismatch in compose");
        SparseMatrix {
            nrows: self.nrows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add_scaled(&self, other: &SparseMatrix, factor: &FieldElement) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        let neg = -factor;
        SparseMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| sub_scaled(a, b, &neg))
                .collect(),
        }
    }

    /// Rows of the matrix, each as a sparse vector over column indices.
    pub fn rows(&self) -> Vec<SparseVec> {
        let mut rows = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((j, v.clone()));
            }
        }
        rows
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix {
            nrows: self.ncols(),
            cols: self.rows(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_merges_and_drops_zeros() {
        let q = Field::Rational;
        let v = normalize(vec![
            (3, q.from_i64(1)),
            (1, q.from_i64(2)),
            (3, q.from_i64(-1)),
        ]);
        assert_eq!(v, vec![(1, q.from_i64(2))]);
    }

    #[test]
    fn sub_scaled_cancels() {
        let q = Field::Rational;
        let a = vec![(0, q.from_i64(2)), (2, q.from_i64(1))];
        let b = vec![(0, q.from_i64(1)), (1, q.from_i64(5))];
        let r = sub_scaled(&a, &b, &q.from_i64(2));
        assert_eq!(r, vec![(1, q.from_i64(-10)), (2, q.from_i64(1))]);
    }

    #[test]
    fn compose_matches_sequential_application() {
        let q = Field::Rational;
        let a = SparseMatrix {
            nrows: 2,
            cols: vec![vec![(1, q.from_i64(1))], vec![(0, q.from_i64(3))]],
        };
        let v = vec![(0, q.from_i64(1)), (1, q.from_i64(2))];
        let aa = a.compose(&a);
        assert_eq!(aa.apply(&v), a.apply(&a.apply(&v)));
        assert_eq!(a.transpose().transpose(), a);
    }
}
