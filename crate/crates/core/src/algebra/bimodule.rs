use super::{ActionLaw, Algebra, AlgebraError};
use crate::linalg::sparse::{from_dense, normalize, scale};
use crate::linalg::{Field, FieldElement, Matrix, SparseMatrix, SparseVec, Subspace};

/// A two-sided module over an algebra `A`, stored as action tables on bases.
///
/// When `A` is graded the module basis carries metagroup grades so that the
/// twisted laws can be evaluated:
///
/// * `(xy)u = t₃(x,y,u)·x(yu)`
/// * `(ux)y = t₃(u,x,y)·u(xy)`
/// * `(xu)y = t₃(x,u,y)·x(uy)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    field: Field,
    adim: usize,
    labels: Vec<String>,
    /// `left[x * dim + u]` is `x·u`.
    left: Vec<SparseVec>,
    /// `right[u * adim + x]` is `u·x`.
    right: Vec<SparseVec>,
    grades: Option<Vec<usize>>,
}

impl Bimodule {
    pub fn new(
        a: &Algebra,
        labels: Vec<String>,
        left: Vec<SparseVec>,
        right: Vec<SparseVec>,
        grades: Option<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        let (n, d) = (a.dim(), labels.len());
        if left.len() != n * d || right.len() != n * d {
            return Err(AlgebraError::Dimension(format!(
                "action tables need {} entries, got {} and {}",
                n * d,
                left.len(),
                right.len()
            )));
        }
        if left.iter().chain(&right).flatten().any(|(k, _)| *k >= d) {
            return Err(AlgebraError::Dimension(
                "action value index out of range".into(),
            ));
        }
        if let Some(g) = &grades {
            if g.len() != d {
                return Err(AlgebraError::Dimension(
                    "one grade per module basis element".into(),
                ));
            }
        }
        if a.grading().is_some() && grades.is_none() && d > 0 {
            return Err(AlgebraError::Dimension(
                "a graded algebra needs a graded module".into(),
            ));
        }
        let module = Bimodule {
            field: a.field(),
            adim: n,
            labels,
            left: left.into_iter().map(normalize).collect(),
            right: right.into_iter().map(normalize).collect(),
            grades,
        };
        module.check_laws(a)?;
        Ok(module)
    }

    /// Skips law verification; for constructions whose laws are inherited.
    fn new_unchecked(
        a: &Algebra,
        labels: Vec<String>,
        left: Vec<SparseVec>,
        right: Vec<SparseVec>,
        grades: Option<Vec<usize>>,
    ) -> Self {
        Bimodule {
            field: a.field(),
            adim: a.dim(),
            labels,
            left,
            right,
            grades,
        }
    }

    pub fn zero(a: &Algebra) -> Self {
        Bimodule::new_unchecked(
            a,
            Vec::new(),
            Vec::new(),
            Vec::new(),
            a.grading().map(|_| Vec::new()),
        )
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(a: &Algebra) -> Self {
        let n = a.dim();
        let mut left = Vec::with_capacity(n * n);
        let mut right = Vec::with_capacity(n * n);
        for x in 0..n {
            for u in 0..n {
                left.push(a.product_of_basis(x, u).clone());
                right.push(a.product_of_basis(x, u).clone());
            }
        }
        let grades = a.grading().map(|g| g.grades.clone());
        Bimodule::new_unchecked(a, a.labels().to_vec(), left, right, grades)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.adim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grades(&self) -> Option<&[usize]> {
        self.grades.as_deref()
    }

    pub fn left_basis(&self, x: usize, u: usize) -> &SparseVec {
        &self.left[x * self.dim() + u]
    }

    pub fn right_basis(&self, u: usize, x: usize) -> &SparseVec {
        &self.right[u * self.adim + x]
    }

    /// `x·v` for a basis element `x` of `A`.
    pub fn act_left(&self, x: usize, v: &[(usize, FieldElement)]) -> SparseVec {
        let mut terms = Vec::new();
        for (u, c) in v {
            terms.extend(scale(self.left_basis(x, *u), c));
        }
        normalize(terms)
    }

    /// `v·x` for a basis element `x` of `A`.
    pub fn act_right(&self, v: &[(usize, FieldElement)], x: usize) -> SparseVec {
        let mut terms = Vec::new();
        for (u, c) in v {
            terms.extend(scale(self.right_basis(*u, x), c));
        }
        normalize(terms)
    }

    /// `a·v` for an arbitrary element `a` of `A`.
    pub fn act_left_by(
        &self,
        a: &[(usize, FieldElement)],
        v: &[(usize, FieldElement)],
    ) -> SparseVec {
        let mut terms = Vec::new();
        for (x, c) in a {
            terms.extend(scale(&self.act_left(*x, v), c));
        }
        normalize(terms)
    }

    pub fn act_right_by(
        &self,
        v: &[(usize, FieldElement)],
        a: &[(usize, FieldElement)],
    ) -> SparseVec {
        let mut terms = Vec::new();
        for (x, c) in a {
            terms.extend(scale(&self.act_right(v, *x), c));
        }
        normalize(terms)
    }

    /// Matrix of `u ↦ a·u`.
    pub fn left_matrix(&self, a: &[(usize, FieldElement)]) -> SparseMatrix {
        SparseMatrix {
            nrows: self.dim(),
            cols: (0..self.dim())
                .map(|u| self.act_left_by(a, &[(u, self.field.one())]))
                .collect(),
        }
    }

    /// Matrix of `u ↦ u·a`.
    pub fn right_matrix(&self, a: &[(usize, FieldElement)]) -> SparseMatrix {
        SparseMatrix {
            nrows: self.dim(),
            cols: (0..self.dim())
                .map(|u| self.act_right_by(&[(u, self.field.one())], a))
                .collect(),
        }
    }

    fn grade(&self, u: usize) -> usize {
        self.grades.as_ref().expect("graded module")[u]
    }

    /// `t₃(x, y, u)` with `x, y` in `A` and `u` in the module.
    pub fn twist_aam(&self, a: &Algebra, x: usize, y: usize, u: usize) -> FieldElement {
        match a.grading() {
            Some(g) => g.twist_of(g.grades[x], g.grades[y], self.grade(u)),
            None => self.field.one(),
        }
    }

    /// `t₃(u, x, y)`.
    pub fn twist_maa(&self, a: &Algebra, u: usize, x: usize, y: usize) -> FieldElement {
        match a.grading() {
            Some(g) => g.twist_of(self.grade(u), g.grades[x], g.grades[y]),
            None => self.field.one(),
        }
    }

    /// `t₃(x, u, y)`.
    pub fn twist_ama(&self, a: &Algebra, x: usize, u: usize, y: usize) -> FieldElement {
        match a.grading() {
            Some(g) => g.twist_of(g.grades[x], self.grade(u), g.grades[y]),
            None => self.field.one(),
        }
    }

    /// Twist class of each module basis element; `None` when nothing is twisted.
    pub fn twist_classes(&self, a: &Algebra) -> Option<Vec<usize>> {
        let g = a.grading()?;
        let classes = g.twist_classes();
        Some(
            self.grades
                .as_ref()
                .expect("graded module")
                .iter()
                .map(|h| classes[*h])
                .collect(),
        )
    }

    pub fn check_laws(&self, a: &Algebra) -> Result<(), AlgebraError> {
        let n = a.dim();
        let one = self.field.one();
        let fail = |law, x, y, u| Err(AlgebraError::ActionLawViolation { law, x, y, u });
        let unit = from_dense(a.unit());
        for u in 0..self.dim() {
            let bu = vec![(u, one.clone())];
            if self.act_left_by(&unit, &bu) != bu {
                return fail(ActionLaw::LeftUnit, 0, 0, u);
            }
            if self.act_right_by(&bu, &unit) != bu {
                return fail(ActionLaw::RightUnit, 0, 0, u);
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = a.product_of_basis(x, y);
                for u in 0..self.dim() {
                    let bu = vec![(u, one.clone())];
                    let lhs = self.act_left_by(xy, &bu);
                    let rhs = self.act_left(x, self.left_basis(y, u));
                    if lhs != scale(&rhs, &self.twist_aam(a, x, y, u)) {
                        return fail(ActionLaw::LeftAssociativity, x, y, u);
                    }
                    let lhs = self.act_right(self.right_basis(u, x), y);
                    let rhs = self.act_right_by(&bu, xy);
                    if lhs != scale(&rhs, &self.twist_maa(a, u, x, y)) {
                        return fail(ActionLaw::RightAssociativity, x, y, u);
                    }
                    let lhs = self.act_right(self.left_basis(x, u), y);
                    let rhs = self.act_left(x, self.right_basis(u, y));
                    if lhs != scale(&rhs, &self.twist_ama(a, x, u, y)) {
                        return fail(ActionLaw::Mixed, x, y, u);
                    }
                }
            }
        }
        Ok(())
    }

    /// The submodule on the echelon basis of `sub`.
    pub fn submodule(&self, a: &Algebra, sub: &Subspace) -> Result<Bimodule, AlgebraError> {
        if sub.ambient() != self.dim() {
            return Err(AlgebraError::Dimension(
                "submodule lives in the wrong space".into(),
            ));
        }
        let n = a.dim();
        let d = sub.dim();
        let mut left = vec![Vec::new(); n * d];
        let mut right = vec![Vec::new(); n * d];
        for x in 0..n {
            for (i, b) in sub.basis().iter().enumerate() {
                let l = sub
                    .coordinates_sparse(&self.act_left(x, b))
                    .ok_or(AlgebraError::NotSubmodule { x })?;
                let r = sub
                    .coordinates_sparse(&self.act_right(b, x))
                    .ok_or(AlgebraError::NotSubmodule { x })?;
                left[x * d + i] = from_dense(&l);
                right[i * n + x] = from_dense(&r);
            }
        }
        let grades = self.inherited_grades(a, sub.basis())?;
        let labels = (0..d).map(|i| format!("k{i}")).collect();
        Ok(Bimodule::new_unchecked(a, labels, left, right, grades))
    }

    fn inherited_grades(
        &self,
        a: &Algebra,
        vectors: &[SparseVec],
    ) -> Result<Option<Vec<usize>>, AlgebraError> {
        let (Some(g), Some(own)) = (a.grading(), &self.grades) else {
            return Ok(None);
        };
        let coset = |h: usize| g.coset(h);
        let mut grades = Vec::with_capacity(vectors.len());
        for v in vectors {
            let mut grade: Option<usize> = None;
            for (i, _) in v {
                match grade {
                    None => grade = Some(own[*i]),
                    Some(h) if coset(h) == coset(own[*i]) => {}
                    Some(_) => {
                        return Err(AlgebraError::Dimension(
                            "subspace has no homogeneous echelon basis".into(),
                        ))
                    }
                }
            }
            grades.push(grade.unwrap_or(g.metagroup.unit()));
        }
        Ok(Some(grades))
    }

    /// `M/N` on the non-pivot coordinates of `sub`, with its projection.
    pub fn quotient(
        &self,
        a: &Algebra,
        sub: &Subspace,
    ) -> Result<(Bimodule, Matrix), AlgebraError> {
        let n = a.dim();
        for x in 0..n {
            for b in sub.basis() {
                if !sub.contains_sparse(&self.act_left(x, b))
                    || !sub.contains_sparse(&self.act_right(b, x))
                {
                    return Err(AlgebraError::NotSubmodule { x });
                }
            }
        }
        let comp = sub.complement_and_projections();
        let q = comp.coordinates.len();
        let proj = comp.quotient_map.to_sparse();
        let mut left = vec![Vec::new(); n * q];
        let mut right = vec![Vec::new(); n * q];
        for x in 0..n {
            for (i, c) in comp.coordinates.iter().enumerate() {
                let bc = vec![(*c, self.field.one())];
                left[x * q + i] = proj.apply(&self.act_left(x, &bc));
                right[i * n + x] = proj.apply(&self.act_right(&bc, x));
            }
        }
        let units: Vec<SparseVec> = comp
            .coordinates
            .iter()
            .map(|c| vec![(*c, self.field.one())])
            .collect();
        let grades = if sub.is_zero() || self.grades.is_none() {
            self.inherited_grades(a, &units)?
        } else {
            let homogeneous = self.inherited_grades(a, sub.basis()).is_ok();
            if !homogeneous {
                return Err(AlgebraError::Dimension(
                    "graded quotient by an inhomogeneous submodule".into(),
                ));
            }
            self.inherited_grades(a, &units)?
        };
        let labels = comp
            .coordinates
            .iter()
            .map(|c| format!("[{}]", self.labels[*c]))
            .collect();
        Ok((
            Bimodule::new_unchecked(a, labels, left, right, grades),
            comp.quotient_map,
        ))
    }

    /// `I/K` for ideals `K ⊆ I` of `A`, viewed as a module over `acting` via
    /// the linear map `lift` from `acting` into `A` (columns in `A`
    /// coordinates). The result is ungraded and its laws are verified.
    pub fn ideal_quotient(
        a: &Algebra,
        outer: &Subspace,
        inner: &Subspace,
        acting: &Algebra,
        lift: &Matrix,
    ) -> Result<Bimodule, AlgebraError> {
        if !inner.is_subspace_of(outer) {
            return Err(AlgebraError::Dimension(
                "inner ideal must lie in the outer one".into(),
            ));
        }
        if lift.rows() != a.dim() || lift.cols() != acting.dim() {
            return Err(AlgebraError::Dimension("lift has the wrong shape".into()));
        }
        let reps = outer.quotient_representatives(inner);
        let q = reps.len();
        // coordinates of v ∈ outer modulo inner, relative to the representatives
        let mut space = inner.basis().to_vec();
        space.extend(reps.iter().map(|r| from_dense(r)));
        let coords = |v: &SparseVec| -> Option<SparseVec> {
            let mut ls = crate::linalg::LinearSystem::new(a.field(), space.len());
            let mut rows: Vec<Vec<(usize, FieldElement)>> = vec![Vec::new(); a.dim()];
            for (k, b) in space.iter().enumerate() {
                for (i, c) in b {
                    rows[*i].push((k, c.clone()));
                }
            }
            let dense = a.to_dense(v);
            for (i, r) in rows.into_iter().enumerate() {
                ls.push(r, dense[i].clone());
            }
            let sol = ls.solve().ok()?;
            let k0 = inner.dim();
            Some(from_dense(&sol.particular[k0..]))
        };
        let m = acting.dim();
        let mut left = vec![Vec::new(); m * q];
        let mut right = vec![Vec::new(); m * q];
        for x in 0..m {
            let lx = from_dense(&lift.column(x));
            for (i, r) in reps.iter().enumerate() {
                let r = from_dense(r);
                left[x * q + i] =
                    coords(&a.multiply_sparse(&lx, &r)).ok_or(AlgebraError::NotSubmodule { x })?;
                right[i * m + x] =
                    coords(&a.multiply_sparse(&r, &lx)).ok_or(AlgebraError::NotSubmodule { x })?;
            }
        }
        let labels = (0..q).map(|i| format!("j{i}")).collect();
        let acting = acting.without_grading();
        Bimodule::new(&acting, labels, left, right, None)
    }

    /// The module with coefficient vector `v` mapped to its element.
    pub fn basis_vector(&self, u: usize) -> Vec<FieldElement> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[u] = self.field.one();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_metagroup_algebra, PsiEmbedding};
    use crate::metagroup::{cyclic_group_table, from_group, octonion_metagroup};
    use std::sync::Arc;

    fn z2(field: Field) -> Algebra {
        let m = Arc::new(from_group(&cyclic_group_table(2), 0, None).unwrap());
        let emb = PsiEmbedding::standard(&m, field).unwrap();
        build_metagroup_algebra(m, field, emb).unwrap()
    }

    #[test]
    fn regular_bimodule_passes() {
        let a = z2(Field::Rational);
        Bimodule::regular(&a).check_laws(&a).unwrap();
    }

    #[test]
    fn regular_octonion_bimodule_passes_twisted_laws() {
        let q = Field::Rational;
        let m = Arc::new(octonion_metagroup());
        let emb = PsiEmbedding::standard(&m, q).unwrap();
        let o = build_metagroup_algebra(m, q, emb).unwrap();
        Bimodule::regular(&o).check_laws(&o).unwrap();
    }

    #[test]
    fn corrupted_action_is_reported() {
        let q = Field::Rational;
        let a = z2(q);
        let reg = Bimodule::regular(&a);
        let mut left = reg.left.clone();
        left[1 * 2 + 1] = vec![(1, q.one())];
        let err = Bimodule::new(
            &a,
            reg.labels.clone(),
            left,
            reg.right.clone(),
            reg.grades.clone(),
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::ActionLawViolation { .. }));
    }

    #[test]
    fn ideal_quotient_of_gf2_group_algebra() {
        let f = Field::Prime(2);
        let a = z2(f);
        let j = Subspace::from_vectors(f, 2, &[vec![f.one(), f.one()]]);
        let m =
            Bimodule::ideal_quotient(&a, &j, &Subspace::zero(f, 2), &a, &Matrix::identity(f, 2))
                .unwrap();
        assert_eq!(m.dim(), 1);
        // a·(1+a) = 1+a
        assert_eq!(m.left_basis(1, 0), &vec![(0, f.one())]);
    }
}
