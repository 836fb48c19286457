use super::echelon::{Echelon, LinearSystem};
use super::field::{Field, FieldElement};
use super::matrix::Matrix;
use super::sparse::{from_dense, normalize, sub_scaled, to_dense, SparseVec};

/// A subspace of `field^ambient`, stored as its reduced row echelon basis so
/// that equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<SparseVec>,
}

/// Splitting data for `W = V ⊕ C` where `C` is spanned by the unit vectors of
/// the non-pivot coordinates of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    pub complement: Subspace,
    /// Non-pivot coordinates; the quotient `W/V` is identified with them.
    pub coordinates: Vec<usize>,
    /// Projection onto `V` along `C`.
    pub projection: Matrix,
    /// `W -> W/V` in the coordinates above.
    pub quotient_map: Matrix,
    /// `W/V -> W`, a right inverse of `quotient_map` with image `C`.
    pub section: Matrix,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let one = field.one();
        Subspace {
            field,
            ambient,
            basis: (0..ambient).map(|i| vec![(i, one.clone())]).collect(),
        }
    }

    pub fn from_sparse(
        field: Field,
        ambient: usize,
        vectors: impl IntoIterator<Item = SparseVec>,
    ) -> Self {
        let vectors: Vec<SparseVec> = vectors
            .into_iter()
            .map(normalize)
            .filter(|v| !v.is_empty())
            .collect();
        if field == Field::Rational && vectors.len() * ambient >= super::modular::MODULAR_THRESHOLD
        {
            if let Some(basis) = super::modular::rational_rref(&vectors, ambient) {
                return Subspace {
                    field,
                    ambient,
                    basis,
                };
            }
        }
        let mut ech = Echelon::new(field, ambient);
        for v in vectors {
            ech.insert(v);
        }
        Subspace {
            field,
            ambient,
            basis: ech.into_rref(),
        }
    }

    pub fn from_vectors<'a>(
        field: Field,
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a Vec<FieldElement>>,
    ) -> Self {
        Self::from_sparse(
            field,
            ambient,
            vectors.into_iter().map(|v| {
                assert_eq!(
                    v.len(),
                    ambient,
                    "vector length does not match ambient dimension"
                );
                from_dense(v)
            }),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_dense(&self) -> Vec<Vec<FieldElement>> {
        self.basis
            .iter()
            .map(|v| to_dense(v, self.ambient, self.field))
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| v[0].0).collect()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v ∉ self`.
    pub fn coordinates_sparse(&self, v: &[(usize, FieldElement)]) -> Option<Vec<FieldElement>> {
        let mut rest: SparseVec = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let p = b[0].0;
            let c = rest
                .iter()
                .find(|(i, _)| *i == p)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| self.field.zero());
            if !c.is_zero() {
                rest = sub_scaled(&rest, b, &c);
            }
            coords.push(c);
        }
        rest.is_empty().then_some(coords)
    }

    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        self.coordinates_sparse(&from_dense(v))
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_sparse(&self, v: &[(usize, FieldElement)]) -> bool {
        self.coordinates_sparse(v).is_some()
    }

    /// The vector with the given coordinates in the echelon basis.
    pub fn combine(&self, coords: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = vec![self.field.zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            super::sparse::axpy_dense(&mut out, c, b);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains_sparse(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_sparse(
            self.field,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let (m, k) = (self.dim(), other.dim());
        // Σ a_i u_i - Σ b_j v_j = 0, one equation per ambient coordinate.
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.ambient];
        for (i, u) in self.basis.iter().enumerate() {
            for (c, v) in u {
                rows[*c].push((i, v.clone()));
            }
        }
        for (j, w) in other.basis.iter().enumerate() {
            for (c, v) in w {
                rows[*c].push((m + j, -v));
            }
        }
        let mut sys = LinearSystem::new(self.field, m + k);
        for r in rows {
            sys.push_homogeneous(r);
        }
        let kernel = sys.kernel();
        let vectors = kernel
            .basis_dense()
            .into_iter()
            .map(|sol| from_dense(&self.combine(&sol[..m])));
        Subspace::from_sparse(self.field, self.ambient, vectors)
    }

    /// Basis vectors of `self` that extend a basis of `sub` (assumed
    /// contained in `self`) to a basis of `self`; they represent `self/sub`.
    pub fn quotient_representatives(&self, sub: &Subspace) -> Vec<Vec<FieldElement>> {
        let mut ech = Echelon::new(self.field, self.ambient);
        for b in &sub.basis {
            ech.insert(b.clone());
        }
        self.basis
            .iter()
            .filter(|b| ech.insert((*b).clone()).is_some())
            .map(|b| to_dense(b, self.ambient, self.field))
            .collect()
    }

    /// Complement spanned by non-pivot unit vectors, with projection,
    /// quotient map and section.
    pub fn complement_and_projections(&self) -> Complement {
        let field = self.field;
        let n = self.ambient;
        let pivots = self.pivots();
        let mut is_pivot = vec![false; n];
        for p in &pivots {
            is_pivot[*p] = true;
        }
        let coordinates: Vec<usize> = (0..n).filter(|c| !is_pivot[*c]).collect();
        let one = field.one();
        let complement = Subspace {
            field,
            ambient: n,
            basis: coordinates
                .iter()
                .map(|c| vec![(*c, one.clone())])
                .collect(),
        };
        // P e_j = Σ_i [j = p_i] b_i, so column p_i of P is b_i and the other columns vanish.
        let mut projection = Matrix::zeros(field, n, n);
        for b in &self.basis {
            let p = b[0].0;
            for (r, v) in b {
                projection.set(*r, p, v.clone());
            }
        }
        let q = coordinates.len();
        let mut quotient_map = Matrix::zeros(field, q, n);
        let mut section = Matrix::zeros(field, n, q);
        for (k, c) in coordinates.iter().enumerate() {
            section.set(*c, k, one.clone());
            // (w - Pw)_c = w_c - Σ_i w_{p_i} b_i[c]
            quotient_map.set(k, *c, one.clone());
            for b in &self.basis {
                if let Some((_, v)) = b.iter().find(|(i, _)| i == c) {
                    quotient_map.set(k, b[0].0, -v);
                }
            }
        }
        Complement {
            complement,
            coordinates,
            projection,
            quotient_map,
            section,
        }
    }

    /// Image of `self` under a linear map given as a matrix with
    /// `self.ambient()` columns.
    pub fn image_under(&self, map: &Matrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient);
        let sm = map.to_sparse();
        Subspace::from_sparse(
            self.field,
            map.rows(),
            self.basis.iter().map(|b| sm.apply(b)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(q: Field, xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|x| q.from_i64(*x)).collect()
    }

    #[test]
    fn equal_spans_have_equal_bases() {
        let q = Field::Rational;
        let a = Subspace::from_vectors(q, 3, &[v(q, &[1, 1, 0]), v(q, &[0, 1, 1])]);
        let b = Subspace::from_vectors(
            q,
            3,
            &[v(q, &[1, 2, 1]), v(q, &[1, 0, -1]), v(q, &[2, 2, 0])],
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_of_planes() {
        let q = Field::Rational;
        let a = Subspace::from_vectors(q, 3, &[v(q, &[1, 0, 0]), v(q, &[0, 1, 0])]);
        let b = Subspace::from_vectors(q, 3, &[v(q, &[0, 1, 0]), v(q, &[0, 0, 1])]);
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::from_vectors(q, 3, &[v(q, &[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(q, 3));
    }

    #[test]
    fn complement_of_extremes() {
        let q = Field::Rational;
        let full = Subspace::full(q, 3).complement_and_projections();
        assert_eq!(full.complement.dim(), 0);
        assert_eq!(full.projection, Matrix::identity(q, 3));
        let zero = Subspace::zero(q, 3).complement_and_projections();
        assert_eq!(zero.complement, Subspace::full(q, 3));
        assert_eq!(zero.section, Matrix::identity(q, 3));
    }
}
