use std::sync::Arc;

use super::grading::{Grading, PsiEmbedding};
use super::AlgebraError;
use crate::linalg::sparse::{axpy_dense, from_dense, normalize, to_dense};
use crate::linalg::{Field, FieldElement, Matrix, SparseMatrix, SparseVec, Subspace};
use crate::metagroup::MetagroupTable;

/// A finite-dimensional unital algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    /// `table[i * dim + j]` is the product of basis elements `i` and `j`.
    table: Vec<SparseVec>,
    unit: Vec<FieldElement>,
    grading: Option<Grading>,
}

/// `A/I` with the projection and a linear section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    pub projection: Matrix,
    pub section: Matrix,
}

impl Algebra {
    /// Builds an ungraded algebra and checks that `unit` is a two-sided identity.
    pub fn from_structure(
        field: Field,
        labels: Vec<String>,
        table: Vec<SparseVec>,
        unit: Vec<FieldElement>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if table.len() != dim * dim || unit.len() != dim {
            return Err(AlgebraError::Dimension(format!(
                "{} labels, {} products, unit of length {}",
                dim,
                table.len(),
                unit.len()
            )));
        }
        if table.iter().flatten().any(|(k, _)| *k >= dim) {
            return Err(AlgebraError::Dimension(
                "structure constant index out of range".into(),
            ));
        }
        let table = table.into_iter().map(normalize).collect();
        let alg = Algebra {
            field,
            labels,
            table,
            unit,
            grading: None,
        };
        alg.check_unit()?;
        Ok(alg)
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        let u = from_dense(&self.unit);
        for i in 0..self.dim() {
            let b = vec![(i, self.field.one())];
            if self.multiply_sparse(&u, &b) != b || self.multiply_sparse(&b, &u) != b {
                return Err(AlgebraError::BadUnit(i));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[FieldElement] {
        &self.unit
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn without_grading(&self) -> Algebra {
        Algebra {
            grading: None,
            ..self.clone()
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<FieldElement> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn multiply_sparse(
        &self,
        x: &[(usize, FieldElement)],
        y: &[(usize, FieldElement)],
    ) -> SparseVec {
        let mut terms = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.product_of_basis(*i, *j) {
                    terms.push((*k, &ab * c));
                }
            }
        }
        normalize(terms)
    }

    pub fn multiply(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                axpy_dense(&mut out, &(a * b), self.product_of_basis(i, j));
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_multiplication(&self, x: &[FieldElement]) -> SparseMatrix {
        let xs = from_dense(x);
        SparseMatrix {
            nrows: self.dim(),
            cols: (0..self.dim())
                .map(|j| self.multiply_sparse(&xs, &[(j, self.field.one())]))
                .collect(),
        }
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_multiplication(&self, x: &[FieldElement]) -> SparseMatrix {
        let xs = from_dense(x);
        SparseMatrix {
            nrows: self.dim(),
            cols: (0..self.dim())
                .map(|j| self.multiply_sparse(&[(j, self.field.one())], &xs))
                .collect(),
        }
    }

    /// `ψ(t₃)` of the grades of three basis elements; 1 when ungraded.
    pub fn twist(&self, i: usize, j: usize, k: usize) -> FieldElement {
        match &self.grading {
            Some(g) => g.twist_of(g.grades[i], g.grades[j], g.grades[k]),
            None => self.field.one(),
        }
    }

    /// `(b_i b_j) b_k = twist(i, j, k) · b_i (b_j b_k)` on every basis triple.
    pub fn check_twisted_associativity(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.product_of_basis(i, j).clone();
                for k in 0..d {
                    let lhs = self.multiply_sparse(&ij, &[(k, self.field.one())]);
                    let jk = self.product_of_basis(j, k);
                    let rhs = self.multiply_sparse(&[(i, self.field.one())], jk);
                    let t = self.twist(i, j, k);
                    if lhs != crate::linalg::sparse::scale(&rhs, &t) {
                        return Err(AlgebraError::TwistedAssociativity(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_associative(&self) -> bool {
        self.without_grading().check_twisted_associativity().is_ok()
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.product_of_basis(i, j) == self.product_of_basis(j, i)))
    }

    /// Structure constants transposed; grades kept, twist inverted and reversed.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim();
        let table = (0..d * d)
            .map(|ij| self.table[(ij % d) * d + ij / d].clone())
            .collect();
        Algebra {
            field: self.field,
            labels: self.labels.clone(),
            table,
            unit: self.unit.clone(),
            grading: self.grading.as_ref().map(|g| Grading {
                metagroup: Arc::new(opposite_metagroup(&g.metagroup)),
                embedding: g.embedding.clone(),
                grades: g.grades.clone(),
            }),
        }
    }

    /// Re-expresses the algebra in a new basis given by the columns of
    /// `basis` (old coordinates). The grading is dropped.
    pub fn change_basis(
        &self,
        basis: &Matrix,
        labels: Vec<String>,
    ) -> Result<Algebra, AlgebraError> {
        let d = self.dim();
        if basis.rows() != d || basis.cols() != d || labels.len() != d {
            return Err(AlgebraError::Dimension(
                "change of basis must be square of size dim".into(),
            ));
        }
        let span = Subspace::from_vectors(
            self.field,
            d,
            &(0..d).map(|c| basis.column(c)).collect::<Vec<_>>(),
        );
        if span.dim() != d {
            return Err(AlgebraError::NotInvertible);
        }
        let inverse = basis.inverse().ok_or(AlgebraError::NotInvertible)?;
        let cols: Vec<Vec<FieldElement>> = (0..d).map(|c| basis.column(c)).collect();
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                table.push(from_dense(
                    &inverse.mul_vec(&self.multiply(&cols[i], &cols[j])),
                ));
            }
        }
        Algebra::from_structure(self.field, labels, table, inverse.mul_vec(&self.unit))
    }

    /// Span of all products `uv` with `u ∈ U`, `v ∈ V`.
    pub fn subspace_product(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for a in u.basis() {
            for b in v.basis() {
                vectors.push(self.multiply_sparse(a, b));
            }
        }
        Subspace::from_sparse(self.field, self.dim(), vectors)
    }

    pub fn check_ideal(&self, ideal: &Subspace) -> Result<(), AlgebraError> {
        for (ai, a) in ideal.basis().iter().enumerate() {
            for x in 0..self.dim() {
                let bx = vec![(x, self.field.one())];
                if !ideal.contains_sparse(&self.multiply_sparse(&bx, a))
                    || !ideal.contains_sparse(&self.multiply_sparse(a, &bx))
                {
                    return Err(AlgebraError::NotAnIdeal { a: x, b: ai });
                }
            }
        }
        Ok(())
    }

    pub fn check_closed(&self, sub: &Subspace) -> Result<(), AlgebraError> {
        for (ai, a) in sub.basis().iter().enumerate() {
            for (bi, b) in sub.basis().iter().enumerate() {
                if !sub.contains_sparse(&self.multiply_sparse(a, b)) {
                    return Err(AlgebraError::NotClosed { a: ai, b: bi });
                }
            }
        }
        Ok(())
    }

    /// Left chain `J, J·J, J·(J·J), …` and right chain `J, J·J, (J·J)·J, …`,
    /// each until it reaches zero or stabilises.
    pub fn power_chains(&self, ideal: &Subspace) -> (Vec<Subspace>, Vec<Subspace>) {
        let chain = |left: bool| {
            let mut out = vec![ideal.clone()];
            loop {
                let last = out.last().expect("nonempty");
                if last.is_zero() {
                    break;
                }
                let next = if left {
                    self.subspace_product(ideal, last)
                } else {
                    self.subspace_product(last, ideal)
                };
                if &next == last {
                    break;
                }
                out.push(next);
            }
            out
        };
        (chain(true), chain(false))
    }

    /// `A/I` on the complement of the echelon basis of `I`. Grading is kept
    /// when `I` has a homogeneous echelon basis.
    pub fn quotient_algebra(&self, ideal: &Subspace) -> Result<Quotient, AlgebraError> {
        if ideal.ambient() != self.dim() {
            return Err(AlgebraError::Dimension(
                "ideal lives in the wrong space".into(),
            ));
        }
        self.check_ideal(ideal)?;
        if ideal.dim() == self.dim() {
            return Err(AlgebraError::TrivialQuotient);
        }
        let comp = ideal.complement_and_projections();
        let q = comp.coordinates.len();
        let sec: Vec<Vec<FieldElement>> = (0..q).map(|k| comp.section.column(k)).collect();
        let mut table = Vec::with_capacity(q * q);
        for i in 0..q {
            for j in 0..q {
                table.push(from_dense(
                    &comp.quotient_map.mul_vec(&self.multiply(&sec[i], &sec[j])),
                ));
            }
        }
        let labels = comp
            .coordinates
            .iter()
            .map(|c| format!("[{}]", self.labels[*c]))
            .collect();
        let unit = comp.quotient_map.mul_vec(&self.unit);
        let mut algebra = Algebra::from_structure(self.field, labels, table, unit)?;
        if let Some(g) = &self.grading {
            let graded = ideal
                .basis()
                .iter()
                .all(|b| g.homogeneous_grade(b.iter().map(|(i, _)| *i)).is_some());
            if graded {
                algebra.grading =
                    Some(g.with_grades(comp.coordinates.iter().map(|c| g.grades[*c]).collect()));
            }
        }
        Ok(Quotient {
            algebra,
            projection: comp.quotient_map,
            section: comp.section,
        })
    }

    /// The subalgebra spanned by `sub` in the coordinates of its echelon basis.
    pub fn subalgebra(&self, sub: &Subspace) -> Result<Algebra, AlgebraError> {
        self.check_closed(sub)?;
        let unit = sub
            .coordinates(&self.unit)
            .ok_or(AlgebraError::UnitMissing)?;
        let mut table = Vec::with_capacity(sub.dim() * sub.dim());
        for a in sub.basis() {
            for b in sub.basis() {
                let c = sub
                    .coordinates_sparse(&self.multiply_sparse(a, b))
                    .expect("closed");
                table.push(from_dense(&c));
            }
        }
        let labels = (0..sub.dim()).map(|i| format!("s{i}")).collect();
        Algebra::from_structure(self.field, labels, table, unit)
    }

    pub fn to_dense(&self, v: &[(usize, FieldElement)]) -> Vec<FieldElement> {
        to_dense(v, self.dim(), self.field)
    }
}

fn opposite_metagroup(m: &MetagroupTable) -> MetagroupTable {
    let n = m.len();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| m.mul(b, a)).collect())
        .collect();
    let op = crate::metagroup::verify_metagroup(&rows, m.unit(), m.psi())
        .expect("opposite of a metagroup is a metagroup");
    match m.names() {
        Some(names) => op.with_names(names.to_vec()).expect("same size"),
        None => op,
    }
}

/// The algebra with basis a `Ψ`-coset transversal of `G` and products
/// twisted into scalars by `emb`.
pub fn build_metagroup_algebra(
    m: Arc<MetagroupTable>,
    field: Field,
    emb: PsiEmbedding,
) -> Result<Algebra, AlgebraError> {
    if emb.field() != field {
        return Err(AlgebraError::BadEmbedding(
            "embedding lives in another field".into(),
        ));
    }
    let n = m.len();
    let coset = |g: usize| {
        m.psi()
            .iter()
            .map(|p| m.mul(*p, g))
            .min()
            .expect("psi nonempty")
    };
    let transversal: Vec<usize> = (0..n).filter(|g| coset(*g) == *g).collect();
    let mut position = vec![usize::MAX; n];
    for (i, s) in transversal.iter().enumerate() {
        position[*s] = i;
    }
    // g = ψ·s with s in the transversal
    let mut split = vec![(0usize, 0usize); n];
    for (i, s) in transversal.iter().enumerate() {
        for &p in m.psi() {
            split[m.mul(p, *s)] = (p, i);
        }
    }
    let d = transversal.len();
    let mut table = Vec::with_capacity(d * d);
    for &a in &transversal {
        for &b in &transversal {
            let (p, k) = split[m.mul(a, b)];
            table.push(vec![(k, emb.value(p).clone())]);
        }
    }
    let labels = transversal.iter().map(|s| m.name(*s)).collect();
    let mut unit = vec![field.zero(); d];
    unit[position[m.unit()]] = field.one();
    let mut alg = Algebra::from_structure(field, labels, table, unit)?;
    alg.grading = Some(Grading {
        metagroup: m,
        embedding: emb,
        grades: transversal,
    });
    Ok(alg)
}
