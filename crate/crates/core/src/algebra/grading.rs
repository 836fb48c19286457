use std::sync::Arc;

use super::AlgebraError;
use crate::linalg::{Field, FieldElement};
use crate::metagroup::MetagroupTable;

/// Identification of `Ψ` with invertible scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiEmbedding {
    field: Field,
    /// Indexed by metagroup element; `None` outside `Ψ`.
    values: Vec<Option<FieldElement>>,
}

impl PsiEmbedding {
    /// Checks `ψ(e) = 1`, multiplicativity, invertibility and injectivity.
    pub fn new(
        m: &MetagroupTable,
        field: Field,
        pairs: &[(usize, FieldElement)],
    ) -> Result<Self, AlgebraError> {
        let mut values = vec![None; m.len()];
        for (g, v) in pairs {
            if *g >= m.len() || !m.in_psi(*g) {
                return Err(AlgebraError::BadEmbedding(format!(
                    "element {g} is not in psi"
                )));
            }
            if v.field() != field {
                return Err(AlgebraError::BadEmbedding(format!(
                    "value for {g} lies in the wrong field"
                )));
            }
            if v.is_zero() {
                return Err(AlgebraError::BadEmbedding(format!(
                    "value for {g} is not invertible"
                )));
            }
            values[*g] = Some(v.clone());
        }
        for &p in m.psi() {
            if values[p].is_none() {
                return Err(AlgebraError::BadEmbedding(format!(
                    "no value for psi element {p}"
                )));
            }
        }
        let emb = PsiEmbedding { field, values };
        if !emb.value(m.unit()).is_one() {
            return Err(AlgebraError::BadEmbedding("unit must map to 1".into()));
        }
        for &a in m.psi() {
            for &b in m.psi() {
                if emb.value(m.mul(a, b)) != &(emb.value(a) * emb.value(b)) {
                    return Err(AlgebraError::BadEmbedding(format!(
                        "not multiplicative on ({a}, {b})"
                    )));
                }
                if a < b && emb.value(a) == emb.value(b) {
                    return Err(AlgebraError::BadEmbedding(format!(
                        "not injective: {a} and {b} collide"
                    )));
                }
            }
        }
        Ok(emb)
    }

    /// `Ψ = {e}` maps to 1; `Ψ = {e, ρ}` with `ρ² = e` maps `ρ` to `-1`.
    pub fn standard(m: &MetagroupTable, field: Field) -> Result<Self, AlgebraError> {
        let mut pairs = vec![(m.unit(), field.one())];
        match m.psi() {
            [_] => {}
            [a, b] => {
                let rho = if *a == m.unit() { *b } else { *a };
                pairs.push((rho, -field.one()));
            }
            _ => {
                return Err(AlgebraError::BadEmbedding(
                    "no default embedding for psi with more than two elements".into(),
                ))
            }
        }
        Self::new(m, field, &pairs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn value(&self, psi: usize) -> &FieldElement {
        self.values[psi]
            .as_ref()
            .expect("embedding evaluated outside psi")
    }

    pub fn pairs(&self) -> Vec<(usize, FieldElement)> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(g, v)| v.clone().map(|v| (g, v)))
            .collect()
    }
}

/// Grading of a basis by metagroup elements, with the scalar twist obtained
/// from the associator through the embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub metagroup: Arc<MetagroupTable>,
    pub embedding: PsiEmbedding,
    pub grades: Vec<usize>,
}

impl Grading {
    /// `ψ(t₃(a, b, c))` for metagroup elements.
    pub fn twist_of(&self, a: usize, b: usize, c: usize) -> FieldElement {
        self.embedding
            .value(self.metagroup.associator(a, b, c))
            .clone()
    }

    /// Smallest element of the `Ψ`-coset of `g`.
    pub fn coset(&self, g: usize) -> usize {
        self.metagroup
            .psi()
            .iter()
            .map(|p| self.metagroup.mul(*p, g))
            .min()
            .expect("psi is nonempty")
    }

    /// Grade of a vector whose support lies in a single coset, if any.
    pub fn homogeneous_grade(
        &self,
        support: impl IntoIterator<Item = usize>,
    ) -> Option<Option<usize>> {
        let mut grade = None;
        for i in support {
            let g = self.grades[i];
            match grade {
                None => grade = Some(g),
                Some(h) if self.coset(h) == self.coset(g) => {}
                Some(_) => return None,
            }
        }
        Some(grade)
    }

    /// Class id for every metagroup element: two elements share a class when
    /// their associators with all pairs of basis grades agree in every slot.
    pub fn twist_classes(&self) -> Vec<usize> {
        let m = &self.metagroup;
        let mut keys: Vec<Vec<usize>> = Vec::with_capacity(m.len());
        for g in 0..m.len() {
            let mut key = Vec::with_capacity(3 * self.grades.len() * self.grades.len());
            for &x in &self.grades {
                for &y in &self.grades {
                    key.push(m.associator(x, y, g));
                    key.push(m.associator(g, x, y));
                    key.push(m.associator(x, g, y));
                }
            }
            keys.push(key);
        }
        let mut distinct: Vec<&Vec<usize>> = Vec::new();
        keys.iter()
            .map(|k| match distinct.iter().position(|d| *d == k) {
                Some(i) => i,
                None => {
                    distinct.push(k);
                    distinct.len() - 1
                }
            })
            .collect()
    }

    pub fn with_grades(&self, grades: Vec<usize>) -> Grading {
        Grading {
            metagroup: self.metagroup.clone(),
            embedding: self.embedding.clone(),
            grades,
        }
    }
}
