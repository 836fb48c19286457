use super::radical::{nilpotency_index, radical, RadicalResult};
use super::DecompositionError;
use crate::algebra::{Algebra, Bimodule, Quotient};
use crate::cohomology::{delta1_matrix, delta2, Cochain1, Cochain2};
use crate::linalg::{FieldElement, LinearSystem, Matrix, Subspace};

/// Data of one square-zero stage: the section `κ`, the obstruction `Φ`, the
/// correction `h` and the multiplicative section `p = κ + h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    /// Recursion depth at which the stage ran.
    pub depth: usize,
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub kappa: Matrix,
    pub phi: Cochain2,
    pub h: Cochain1,
    pub p: Matrix,
}

#[derive(Clone, Debug)]
pub struct DecompositionResult {
    /// The complement `D` with `A = D ⊕ J`.
    pub complement: Subspace,
    pub radical: RadicalResult,
    pub quotient: Quotient,
    /// `A/J → D`, columns in `A` coordinates.
    pub iso: Matrix,
    pub trail: Vec<Level>,
}

/// `J` as a module over `A/J` through the section, and the obstruction
/// `Φ(x, y) = κ(xy) − κ(x)κ(y)` in `J` coordinates. Requires `J² = 0`.
pub fn obstruction_cocycle(
    a: &Algebra,
    j: &Subspace,
    quotient: &Quotient,
) -> Result<(Bimodule, Cochain2), DecompositionError> {
    if !a.subspace_product(j, j).is_zero() {
        return Err(DecompositionError::NotSquareZero);
    }
    let zero = Subspace::zero(a.field(), a.dim());
    let q = &quotient.algebra;
    let module = Bimodule::ideal_quotient(a, j, &zero, q, &quotient.section)?;
    let qd = q.dim();
    let kappa: Vec<Vec<FieldElement>> = (0..qd).map(|x| quotient.section.column(x)).collect();
    let mut values = Vec::with_capacity(qd * qd * j.dim());
    for x in 0..qd {
        for y in 0..qd {
            let xy = q.multiply(&q.basis_vector(x), &q.basis_vector(y));
            let lhs = quotient.section.mul_vec(&xy);
            let rhs = a.multiply(&kappa[x], &kappa[y]);
            let diff: Vec<FieldElement> = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
            let coords = j.coordinates(&diff).ok_or_else(|| {
                DecompositionError::Verification("obstruction leaves the radical".into())
            })?;
            values.extend(coords);
        }
    }
    let q_plain = q.without_grading();
    let phi = Cochain2::from_values(&q_plain, &module, values);
    if delta2(&q_plain, &module, &phi).iter().any(|c| !c.is_zero()) {
        return Err(DecompositionError::Verification(
            "obstruction is not a 2-cocycle".into(),
        ));
    }
    Ok((module, phi))
}

/// Some `h` with `δ¹h = Φ`, or `None` when `Φ` is not a coboundary.
pub fn solve_coboundary(q: &Algebra, module: &Bimodule, phi: &Cochain2) -> Option<Cochain1> {
    let d1 = delta1_matrix(q, module);
    let mut sys = LinearSystem::new(q.field(), d1.ncols());
    for (r, row) in d1.rows().into_iter().enumerate() {
        sys.push(row, phi.values[r].clone());
    }
    let sol = sys.solve().ok()?;
    Some(Cochain1::from_values(q, module, sol.particular))
}

/// Square-zero stage: returns `D = im(κ + h)`.
fn square_zero_stage(
    a: &Algebra,
    j: &Subspace,
    depth: usize,
    trail: &mut Vec<Level>,
) -> Result<Subspace, DecompositionError> {
    let quotient = a.quotient_algebra(j)?;
    let q = quotient.algebra.without_grading();
    let (module, phi) = obstruction_cocycle(a, j, &quotient)?;
    let h = solve_coboundary(&q, &module, &phi).ok_or_else(|| DecompositionError::Obstructed {
        level: depth,
        phi: phi.clone(),
    })?;
    let qd = q.dim();
    let jb = j.basis_dense();
    let mut p = quotient.section.clone();
    for x in 0..qd {
        for (u, c) in h.value(x).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..a.dim() {
                let t = p.get(r, x) + &(c * &jb[u][r]);
                p.set(r, x, t);
            }
        }
    }
    for x in 0..qd {
        for y in 0..qd {
            let xy = q.multiply(&q.basis_vector(x), &q.basis_vector(y));
            if p.mul_vec(&xy) != a.multiply(&p.column(x), &p.column(y)) {
                return Err(DecompositionError::Verification(
                    "κ + h is not multiplicative".into(),
                ));
            }
        }
    }
    if p.mul_vec(q.unit()) != a.unit() {
        return Err(DecompositionError::Verification(
            "κ + h does not preserve the unit".into(),
        ));
    }
    trail.push(Level {
        depth,
        algebra_dim: a.dim(),
        radical_dim: j.dim(),
        kappa: quotient.section.clone(),
        phi,
        h,
        p: p.clone(),
    });
    Ok(p.column_space())
}

fn decompose_with(
    a: &Algebra,
    j: &Subspace,
    depth: usize,
    trail: &mut Vec<Level>,
) -> Result<Subspace, DecompositionError> {
    if j.is_zero() {
        return Ok(Subspace::full(a.field(), a.dim()));
    }
    let j2 = a.subspace_product(j, j);
    if j2.is_zero() {
        return square_zero_stage(a, j, depth, trail);
    }
    // A₁ = A/J², whose radical J/J² squares to zero
    let first = a.quotient_algebra(&j2)?;
    let j1 = j.image_under(&first.projection);
    let d1 = decompose_with(&first.algebra, &j1, depth + 1, trail)?;
    let e = d1.image_under(&first.section).sum(&j2);
    if e.intersection(j) != j2 {
        return Err(DecompositionError::Verification(
            "pullback meets the radical outside J²".into(),
        ));
    }
    let e_alg = a.subalgebra(&e)?;
    let coords: Vec<Vec<FieldElement>> = j2
        .basis_dense()
        .iter()
        .map(|v| e.coordinates(v).expect("J² lies in E"))
        .collect();
    let j2_in_e = Subspace::from_vectors(a.field(), e.dim(), &coords);
    let f_in_e = decompose_with(&e_alg, &j2_in_e, depth + 1, trail)?;
    let back: Vec<Vec<FieldElement>> = f_in_e.basis_dense().iter().map(|c| e.combine(c)).collect();
    Ok(Subspace::from_vectors(a.field(), a.dim(), &back))
}

/// Inverse of `π` restricted to a complement `D` of `J`, as a matrix
/// `A/J → A`.
pub(crate) fn splitting_map(quotient: &Quotient, d: &Subspace) -> Option<Matrix> {
    let field = quotient.projection.field();
    let basis = d.basis_dense();
    let images: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|b| quotient.projection.mul_vec(b))
        .collect();
    let q = quotient.algebra.dim();
    if images.len() != q {
        return None;
    }
    let pi_d = Matrix::from_columns(field, q, &images);
    let inv = pi_d.inverse()?;
    let dmat = Matrix::from_columns(field, quotient.projection.cols(), &basis);
    Some(dmat.mul(&inv))
}

/// Splits `A = D ⊕ J(A)` with `D` a subalgebra isomorphic to `A/J(A)`.
pub fn wedderburn_decompose(a: &Algebra) -> Result<DecompositionResult, DecompositionError> {
    let rad = radical(a)?;
    let plain = a.without_grading();
    let mut trail = Vec::new();
    let d = decompose_with(&plain, &rad.ideal, 0, &mut trail)?;
    let quotient = plain.quotient_algebra(&rad.ideal)?;
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(DecompositionError::Verification(what.into()))
        }
    };
    check(
        d.dim() + rad.ideal.dim() == a.dim(),
        "dimensions of D and J do not add up",
    )?;
    check(d.intersection(&rad.ideal).is_zero(), "D meets J")?;
    plain
        .check_closed(&d)
        .map_err(|_| DecompositionError::Verification("D is not closed".into()))?;
    let iso = splitting_map(&quotient, &d)
        .ok_or_else(|| DecompositionError::Verification("π is not bijective on D".into()))?;
    let q = &quotient.algebra;
    for x in 0..q.dim() {
        for y in 0..q.dim() {
            let xy = q.multiply(&q.basis_vector(x), &q.basis_vector(y));
            check(
                iso.mul_vec(&xy) == plain.multiply(&iso.column(x), &iso.column(y)),
                "A/J → D is not multiplicative",
            )?;
        }
    }
    check(
        quotient.projection.mul(&iso) == Matrix::identity(a.field(), q.dim()),
        "π ∘ iso is not the identity",
    )?;
    debug_assert_eq!(nilpotency_index(a, &rad.ideal), Some(rad.index));
    Ok(DecompositionResult {
        complement: d,
        radical: rad,
        quotient,
        iso,
        trail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        cube_zero_extension, cyclic_group_algebra, disguise, square_zero_extension,
    };
    use crate::linalg::Field;

    fn check(ext: &crate::constructions::Extension) -> DecompositionResult {
        let res = wedderburn_decompose(&ext.algebra).unwrap();
        assert_eq!(res.radical.ideal, ext.radical);
        assert_eq!(res.radical.index, ext.index);
        assert_eq!(res.complement.dim() + ext.radical.dim(), ext.algebra.dim());
        assert!(res.complement.intersection(&ext.radical).is_zero());
        ext.algebra.check_closed(&res.complement).unwrap();
        res
    }

    #[test]
    fn semisimple_algebra_is_its_own_complement() {
        let a = cyclic_group_algebra(3, Field::Rational).unwrap();
        let res = wedderburn_decompose(&a).unwrap();
        assert_eq!(res.complement, Subspace::full(Field::Rational, 3));
        assert!(res.trail.is_empty());
    }

    #[test]
    fn square_zero_extensions_split_in_one_stage() {
        for field in [Field::Rational, Field::Prime(3)] {
            for seed in 0..3 {
                let ext = disguise(&square_zero_extension(field).unwrap(), seed).unwrap();
                let res = check(&ext);
                assert_eq!(res.trail.len(), 1);
            }
        }
    }

    #[test]
    fn cube_zero_extension_recurses_through_j_squared() {
        for seed in 0..3 {
            let ext = disguise(&cube_zero_extension(Field::Rational).unwrap(), seed).unwrap();
            let res = check(&ext);
            assert_eq!(res.trail.len(), 2);
            assert!(res.trail.iter().any(|l| l.depth == 1));
        }
    }

    #[test]
    fn modular_group_algebra_splits() {
        let a = cyclic_group_algebra(2, Field::Prime(2)).unwrap();
        let res = wedderburn_decompose(&a).unwrap();
        assert_eq!(res.complement.dim(), 1);
        assert!(res.complement.contains(a.unit()));
    }
}
