use super::radical::radical;
use super::wedderburn::splitting_map;
use super::DecompositionError;
use crate::algebra::Algebra;
use crate::linalg::sparse::from_dense;
use crate::linalg::{FieldElement, LinearSystem, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyResult {
    /// `v ∈ J(A)` with `(1 − v)C = B(1 − v)`.
    pub v: Vec<FieldElement>,
    /// `r` with `(1 − v)r = 1`.
    pub right_inverse: Vec<FieldElement>,
    /// `l` with `l(1 − v) = 1`.
    pub left_inverse: Vec<FieldElement>,
}

fn powers_vanish(a: &Algebra, v: &[FieldElement], left: bool) -> bool {
    let mut power = v.to_vec();
    for _ in 0..=a.dim() {
        if power.iter().all(|c| c.is_zero()) {
            return true;
        }
        power = if left {
            a.multiply(v, &power)
        } else {
            a.multiply(&power, v)
        };
    }
    power.iter().all(|c| c.is_zero())
}

fn solve(a: &Algebra, op: &crate::linalg::SparseMatrix) -> Option<Vec<FieldElement>> {
    let mut sys = LinearSystem::new(a.field(), a.dim());
    for (k, row) in op.rows().into_iter().enumerate() {
        sys.push(row, a.unit()[k].clone());
    }
    sys.solve().ok().map(|s| s.particular)
}

/// Right and left inverses of `1 − v` for `v` with vanishing left and right
/// power chains, found by solving `(1 − v)r = 1` and `l(1 − v) = 1`.
pub fn nilpotent_inverse(
    a: &Algebra,
    v: &[FieldElement],
) -> Result<(Vec<FieldElement>, Vec<FieldElement>), DecompositionError> {
    if !powers_vanish(a, v, true) || !powers_vanish(a, v, false) {
        return Err(DecompositionError::NotNilpotent);
    }
    let w: Vec<FieldElement> = a.unit().iter().zip(v).map(|(u, x)| u - x).collect();
    let r = solve(a, &a.left_multiplication(&w)).ok_or(DecompositionError::NoInverse)?;
    let l = solve(a, &a.right_multiplication(&w)).ok_or(DecompositionError::NoInverse)?;
    if a.multiply(&w, &r) != a.unit() || a.multiply(&l, &w) != a.unit() {
        return Err(DecompositionError::Verification(
            "inverse of 1 - v fails on multiplication".into(),
        ));
    }
    Ok((r, l))
}

fn check_complement(
    a: &Algebra,
    j: &Subspace,
    s: &Subspace,
    name: &str,
) -> Result<(), DecompositionError> {
    let fail = |why: &str| Err(DecompositionError::NotComplement(format!("{name}: {why}")));
    if s.ambient() != a.dim() {
        return fail("wrong ambient dimension");
    }
    if a.check_closed(s).is_err() {
        return fail("not closed under multiplication");
    }
    if !s.contains(a.unit()) {
        return fail("does not contain the unit");
    }
    if !s.intersection(j).is_zero() || s.dim() + j.dim() != a.dim() {
        return fail("not complementary to the radical");
    }
    Ok(())
}

/// Finds `v ∈ J(A)` with `(1 − v)C = B(1 − v)` for subalgebra complements
/// `B` and `C` of the radical.
pub fn conjugate_complements(
    a: &Algebra,
    b: &Subspace,
    c: &Subspace,
) -> Result<ConjugacyResult, DecompositionError> {
    let plain = a.without_grading();
    let rad = radical(a)?;
    let j = &rad.ideal;
    check_complement(&plain, j, b, "B")?;
    check_complement(&plain, j, c, "C")?;
    let quotient = plain.quotient_algebra(j)?;
    let q = &quotient.algebra;
    let p =
        splitting_map(&quotient, b).ok_or_else(|| DecompositionError::NotComplement("B".into()))?;
    let s =
        splitting_map(&quotient, c).ok_or_else(|| DecompositionError::NotComplement("C".into()))?;
    let qd = q.dim();
    let w: Vec<Vec<FieldElement>> = (0..qd)
        .map(|x| {
            p.column(x)
                .iter()
                .zip(s.column(x))
                .map(|(l, r)| l - &r)
                .collect()
        })
        .collect();
    // w(xy) = p(x)w(y) + w(x)s(y)
    for x in 0..qd {
        for y in 0..qd {
            let xy = q.multiply(&q.basis_vector(x), &q.basis_vector(y));
            let wxy: Vec<FieldElement> = p
                .mul_vec(&xy)
                .iter()
                .zip(s.mul_vec(&xy))
                .map(|(l, r)| l - &r)
                .collect();
            let rhs: Vec<FieldElement> = plain
                .multiply(&p.column(x), &w[y])
                .iter()
                .zip(plain.multiply(&w[x], &s.column(y)))
                .map(|(l, r)| l + &r)
                .collect();
            if wxy != rhs {
                return Err(DecompositionError::NotDerivation);
            }
        }
    }
    // p(x)v − v s(x) = w(x), v = Σ c_k j_k
    let jb = j.basis_dense();
    let n = plain.dim();
    let mut sys = LinearSystem::new(plain.field(), jb.len());
    for x in 0..qd {
        let px = p.column(x);
        let sx = s.column(x);
        let images: Vec<Vec<FieldElement>> = jb
            .iter()
            .map(|jk| {
                plain
                    .multiply(&px, jk)
                    .iter()
                    .zip(plain.multiply(jk, &sx))
                    .map(|(l, r)| l - &r)
                    .collect()
            })
            .collect();
        for r in 0..n {
            let row: Vec<FieldElement> = images.iter().map(|img| img[r].clone()).collect();
            sys.push(from_dense(&row), w[x][r].clone());
        }
    }
    let coeffs = sys
        .solve()
        .map_err(|_| DecompositionError::NotInner { w: w.clone() })?
        .particular;
    let mut v = vec![plain.field().zero(); n];
    for (ck, jk) in coeffs.iter().zip(&jb) {
        for (r, val) in jk.iter().enumerate() {
            let t = ck * val;
            v[r] += &t;
        }
    }
    let one_minus_v: Vec<FieldElement> = plain.unit().iter().zip(&v).map(|(u, x)| u - x).collect();
    let left_side = Subspace::from_vectors(
        plain.field(),
        n,
        &c.basis_dense()
            .iter()
            .map(|cv| plain.multiply(&one_minus_v, cv))
            .collect::<Vec<_>>(),
    );
    let right_side = Subspace::from_vectors(
        plain.field(),
        n,
        &b.basis_dense()
            .iter()
            .map(|bv| plain.multiply(bv, &one_minus_v))
            .collect::<Vec<_>>(),
    );
    if left_side != right_side {
        return Err(DecompositionError::Verification(
            "(1 - v)C differs from B(1 - v)".into(),
        ));
    }
    let (right_inverse, left_inverse) = nilpotent_inverse(&plain, &v)?;
    Ok(ConjugacyResult {
        v,
        right_inverse,
        left_inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_metagroup_algebra, PsiEmbedding};
    use crate::linalg::Field;
    use crate::metagroup::{cyclic_group_table, from_group};
    use std::sync::Arc;

    fn group_algebra(n: usize, field: Field) -> Algebra {
        let m = Arc::new(from_group(&cyclic_group_table(n), 0, None).unwrap());
        let emb = PsiEmbedding::standard(&m, field).unwrap();
        build_metagroup_algebra(m, field, emb).unwrap()
    }

    #[test]
    fn inverse_of_one_minus_augmentation_element() {
        let f = Field::Prime(2);
        let a = group_algebra(2, f);
        let v = vec![f.one(), f.one()];
        let (r, l) = nilpotent_inverse(&a, &v).unwrap();
        // 1 − (1 + a) = a and a² = 1
        assert_eq!(r, a.basis_vector(1));
        assert_eq!(l, a.basis_vector(1));
        let (r0, l0) = nilpotent_inverse(&a, &[f.zero(), f.zero()]).unwrap();
        assert_eq!(r0, a.unit().to_vec());
        assert_eq!(l0, a.unit().to_vec());
        assert_eq!(
            nilpotent_inverse(&a, &a.basis_vector(1)),
            Err(DecompositionError::NotNilpotent)
        );
    }

    #[test]
    fn equal_complements_need_no_conjugation() {
        let f = Field::Prime(2);
        let a = group_algebra(2, f);
        let b = Subspace::from_vectors(f, 2, &[a.unit().to_vec()]);
        let res = conjugate_complements(&a, &b, &b).unwrap();
        assert!(res.v.iter().all(|c| c.is_zero()));
        let not_closed = Subspace::from_vectors(f, 2, &[a.basis_vector(1)]);
        assert!(matches!(
            conjugate_complements(&a, &b, &not_closed),
            Err(DecompositionError::NotComplement(_))
        ));
    }
}

#[cfg(test)]
mod extension_tests {
    use super::*;
    use crate::constructions::{disguise, square_zero_extension};
    use crate::linalg::Field;

    #[test]
    fn transformed_complement_is_conjugated_back() {
        for field in [Field::Rational, Field::Prime(3)] {
            let ext = disguise(&square_zero_extension(field).unwrap(), 11).unwrap();
            let a = &ext.algebra;
            for v0 in ext.radical.basis_dense() {
                // C = span{d + v₀d − dv₀}
                let c_vectors: Vec<Vec<FieldElement>> = ext
                    .complement
                    .basis_dense()
                    .iter()
                    .map(|d| {
                        let left = a.multiply(&v0, d);
                        let right = a.multiply(d, &v0);
                        (0..a.dim())
                            .map(|i| &(&d[i] + &left[i]) - &right[i])
                            .collect()
                    })
                    .collect();
                let c = Subspace::from_vectors(field, a.dim(), &c_vectors);
                let res = conjugate_complements(a, &ext.complement, &c).unwrap();
                assert!(ext.radical.contains(&res.v));
                let one_minus_v: Vec<FieldElement> =
                    a.unit().iter().zip(&res.v).map(|(u, x)| u - x).collect();
                assert_eq!(a.multiply(&one_minus_v, &res.right_inverse), a.unit());
                assert_eq!(a.multiply(&res.left_inverse, &one_minus_v), a.unit());
            }
        }
    }
}
