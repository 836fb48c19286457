//! Ready-made algebras: group algebras, the octonions, and split extensions
//! `D ⊕ N` whose complement and radical are known by construction.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{build_metagroup_algebra, Algebra, AlgebraError, PsiEmbedding};
use crate::linalg::sparse::from_dense;
use crate::linalg::{Field, FieldElement, Matrix, SparseVec, Subspace};
use crate::metagroup::{
    cyclic_group_table, direct_product_table, from_group, octonion_metagroup, MetagroupTable,
};

/// Group algebra of a finite group given by its Cayley table, with trivial `Ψ`.
pub fn group_algebra(rows: &[Vec<usize>], field: Field) -> Result<Algebra, AlgebraError> {
    let m = from_group(rows, 0, Some(&[0])).map_err(|e| AlgebraError::Dimension(e.to_string()))?;
    metagroup_algebra(m, field)
}

pub fn cyclic_group_algebra(n: usize, field: Field) -> Result<Algebra, AlgebraError> {
    group_algebra(&cyclic_group_table(n), field)
}

/// `F[Z/2 × Z/2]`.
pub fn klein_group_algebra(field: Field) -> Result<Algebra, AlgebraError> {
    let z2 = cyclic_group_table(2);
    group_algebra(&direct_product_table(&z2, &z2), field)
}

pub fn metagroup_algebra(m: MetagroupTable, field: Field) -> Result<Algebra, AlgebraError> {
    let m = Arc::new(m);
    let emb = PsiEmbedding::standard(&m, field)?;
    build_metagroup_algebra(m, field, emb)
}

/// The real octonion algebra over `field`, graded by the 16-element metagroup.
pub fn octonion_algebra(field: Field) -> Result<Algebra, AlgebraError> {
    metagroup_algebra(octonion_metagroup(), field)
}

/// An algebra `D ⊕ N` with `N` a nilpotent ideal and `D` a subalgebra
/// complement, both in the algebra's own coordinates.
#[derive(Clone, Debug)]
pub struct Extension {
    pub algebra: Algebra,
    pub complement: Subspace,
    pub radical: Subspace,
    /// Least `k` with `N^k = 0`.
    pub index: usize,
}

fn table_from(
    field: Field,
    n: usize,
    product: impl Fn(usize, usize) -> Vec<(usize, i64)>,
) -> Vec<SparseVec> {
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut v = vec![field.zero(); n];
            for (k, c) in product(i, j) {
                v[k] += &field.from_i64(c);
            }
            table.push(from_dense(&v));
        }
    }
    table
}

fn span(field: Field, n: usize, indices: &[usize]) -> Subspace {
    let vectors: Vec<Vec<FieldElement>> = indices
        .iter()
        .map(|&i| {
            let mut v = vec![field.zero(); n];
            v[i] = field.one();
            v
        })
        .collect();
    Subspace::from_vectors(field, n, &vectors)
}

/// `F[Z/2] ⋉ M` where `M ≅ F[Z/2]` carries the regular left action and the
/// right action twisted by `a ↦ −a`. Basis `1, a, m, am`; `N = M`, `N² = 0`.
pub fn square_zero_extension(field: Field) -> Result<Extension, AlgebraError> {
    // index 0,1 for D = {1, a}; index 2,3 for M = {m, am}, m·d = σ(d) acting as d on the left
    let product = |i: usize, j: usize| -> Vec<(usize, i64)> {
        let (di, mi) = (i % 2, i >= 2);
        let (dj, mj) = (j % 2, j >= 2);
        match (mi, mj) {
            (false, false) => vec![(di ^ dj, 1)],
            (false, true) => vec![(2 + (di ^ dj), 1)],
            (true, false) => vec![(2 + (di ^ dj), if dj == 1 { -1 } else { 1 })],
            (true, true) => vec![],
        }
    };
    let n = 4;
    let labels = ["1", "a", "m", "am"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    let algebra = Algebra::from_structure(field, labels, table_from(field, n, product), unit)?;
    Ok(Extension {
        complement: span(field, n, &[0, 1]),
        radical: span(field, n, &[2, 3]),
        algebra,
        index: 2,
    })
}

/// The truncated skew polynomial ring `F[Z/2][t; σ]/(t³)` with `σ(a) = −a`.
/// Basis `a^e t^i` at index `2i + e`; `N = (t)`, `N³ = 0`.
pub fn cube_zero_extension(field: Field) -> Result<Extension, AlgebraError> {
    let product = |i: usize, j: usize| -> Vec<(usize, i64)> {
        let (ei, ti) = (i % 2, i / 2);
        let (ej, tj) = (j % 2, j / 2);
        if ti + tj >= 3 {
            return vec![];
        }
        // t^ti a^ej = (−1)^(ti·ej) a^ej t^ti
        let sign = if ti * ej % 2 == 1 { -1 } else { 1 };
        vec![(2 * (ti + tj) + (ei ^ ej), sign)]
    };
    let n = 6;
    let labels = ["1", "a", "t", "at", "t2", "at2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    let algebra = Algebra::from_structure(field, labels, table_from(field, n, product), unit)?;
    Ok(Extension {
        complement: span(field, n, &[0, 1]),
        radical: span(field, n, &[2, 3, 4, 5]),
        algebra,
        index: 3,
    })
}

/// A random integer matrix of determinant ±1: a row permutation of `L·U`
/// with unit triangular factors whose off-diagonal entries lie in `{−1, 0, 1}`.
/// Its inverse is integral too, so a change of basis keeps integer structure
/// constants integral.
pub fn random_invertible(field: Field, n: usize, rng: &mut impl Rng) -> Matrix {
    fn unit_triangular(n: usize, lower: bool, rng: &mut impl Rng) -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i == j, (j < i) == lower) {
                        (true, _) => 1,
                        (false, true) => rng.gen_range(-1..=1),
                        (false, false) => 0,
                    })
                    .collect()
            })
            .collect()
    }
    let l = unit_triangular(n, true, rng);
    let u = unit_triangular(n, false, rng);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let rows = perm
        .iter()
        .map(|&i| {
            (0..n)
                .map(|j| field.from_i64((0..n).map(|k| l[i][k] * u[k][j]).sum()))
                .collect()
        })
        .collect();
    Matrix::from_rows(field, n, rows)
}

/// Rewrites the extension in a random basis so that neither `D` nor `N` is
/// spanned by coordinate vectors.
pub fn disguise(ext: &Extension, seed: u64) -> Result<Extension, AlgebraError> {
    let field = ext.algebra.field();
    let n = ext.algebra.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = random_invertible(field, n, &mut rng);
    let inverse = basis.inverse().ok_or(AlgebraError::NotInvertible)?;
    let labels = (0..n).map(|i| format!("b{i}")).collect();
    let algebra = ext.algebra.change_basis(&basis, labels)?;
    Ok(Extension {
        algebra,
        complement: ext.complement.image_under(&inverse),
        radical: ext.radical.image_under(&inverse),
        index: ext.index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extensions_are_associative_with_the_stated_ideals() {
        for field in [Field::Rational, Field::Prime(3)] {
            for ext in [
                square_zero_extension(field).unwrap(),
                cube_zero_extension(field).unwrap(),
            ] {
                let a = &ext.algebra;
                assert!(a.is_associative());
                a.check_ideal(&ext.radical).unwrap();
                a.check_closed(&ext.complement).unwrap();
                assert!(ext.complement.contains(a.unit()));
                let (left, _) = a.power_chains(&ext.radical);
                assert_eq!(left.len(), ext.index);
                let d = disguise(&ext, 7).unwrap();
                assert!(d.algebra.is_associative());
                d.algebra.check_ideal(&d.radical).unwrap();
                d.algebra.check_closed(&d.complement).unwrap();
                assert!(d.complement.contains(d.algebra.unit()));
            }
        }
    }

    #[test]
    fn square_zero_extension_is_not_commutative() {
        let ext = square_zero_extension(Field::Rational).unwrap();
        assert!(!ext.algebra.is_commutative());
    }
}
