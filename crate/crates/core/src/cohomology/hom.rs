use super::complex::{derivations, Cochain1};
use super::CohomologyError;
use crate::algebra::{Algebra, Bimodule, EnvelopingAlgebra};
use crate::linalg::sparse::{axpy_dense, from_dense, to_dense};
use crate::linalg::{FieldElement, LinearSystem, SparseVec, Subspace};

/// Equations for linear maps `f : P → M` commuting with both actions of
/// every basis element of `A`. Unknown `i * dim M + j` is the `j`-th
/// coordinate of `f(p_i)`.
pub fn hom_system(a: &Algebra, p: &Bimodule, m: &Bimodule) -> LinearSystem {
    let (n, pd, md) = (a.dim(), p.dim(), m.dim());
    let mut sys = LinearSystem::new(a.field(), pd * md);
    let mut rows: Vec<SparseVec> = vec![Vec::new(); md];
    let flush = |rows: &mut Vec<SparseVec>, sys: &mut LinearSystem| {
        for r in rows.iter_mut() {
            if !r.is_empty() {
                sys.push_homogeneous(std::mem::take(r));
            }
        }
    };
    for x in 0..n {
        for i in 0..pd {
            // f(x·p_i) − x·f(p_i)
            for (k, c) in p.left_basis(x, i) {
                for (j, row) in rows.iter_mut().enumerate() {
                    row.push((k * md + j, c.clone()));
                }
            }
            for l in 0..md {
                for (j, c) in m.left_basis(x, l) {
                    rows[*j].push((i * md + l, -c));
                }
            }
            flush(&mut rows, &mut sys);
            // f(p_i·x) − f(p_i)·x
            for (k, c) in p.right_basis(i, x) {
                for (j, row) in rows.iter_mut().enumerate() {
                    row.push((k * md + j, c.clone()));
                }
            }
            for l in 0..md {
                for (j, c) in m.right_basis(l, x) {
                    rows[*j].push((i * md + l, -c));
                }
            }
            flush(&mut rows, &mut sys);
        }
    }
    sys
}

/// `Hom_{A^e}(P, M)` as a subspace of all linear maps, in the coordinates of
/// [`hom_system`].
pub fn hom_over_enveloping(a: &Algebra, p: &Bimodule, m: &Bimodule) -> Subspace {
    hom_system(a, p, m).kernel()
}

fn evaluate(
    f: &[FieldElement],
    md: usize,
    v: &[(usize, FieldElement)],
    field: crate::linalg::Field,
) -> Vec<FieldElement> {
    let mut out = vec![field.zero(); md];
    for (k, c) in v {
        let fk = from_dense(&f[k * md..(k + 1) * md]);
        axpy_dense(&mut out, c, &fk);
    }
    out
}

fn is_hom(a: &Algebra, p: &Bimodule, m: &Bimodule, f: &[FieldElement]) -> bool {
    let (md, field) = (m.dim(), a.field());
    let one = field.one();
    (0..a.dim()).all(|x| {
        (0..p.dim()).all(|i| {
            let fi = from_dense(&f[i * md..(i + 1) * md]);
            let bi = vec![(i, one.clone())];
            evaluate(f, md, &p.act_left(x, &bi), field) == to_dense(&m.act_left(x, &fi), md, field)
                && evaluate(f, md, &p.act_right(&bi, x), field)
                    == to_dense(&m.act_right(&fi, x), md, field)
        })
    })
}

/// Restriction of a map `A^e → M` to `ker μ`, in kernel-basis coordinates.
pub fn restrict_to_kernel(
    env: &EnvelopingAlgebra,
    m: &Bimodule,
    f: &[FieldElement],
) -> Vec<FieldElement> {
    let md = m.dim();
    let field = env.base().field();
    env.kernel_of_mu()
        .basis()
        .iter()
        .flat_map(|k| evaluate(f, md, k, field))
        .collect()
}

/// The isomorphism `χ : Hom_{A^e}(ker μ, M) → Z¹(A, M)` for a fixed `M`,
/// holding `ker μ` as a bimodule and `Z¹(A, M)` so repeated use stays cheap.
pub struct Chi<'a> {
    env: &'a EnvelopingAlgebra,
    m: &'a Bimodule,
    kmod: Bimodule,
    z1: Subspace,
}

impl<'a> Chi<'a> {
    pub fn new(env: &'a EnvelopingAlgebra, m: &'a Bimodule) -> Result<Self, CohomologyError> {
        let kmod = env.kernel_module()?;
        let z1 = derivations(env.base(), m);
        Ok(Chi { env, m, kmod, z1 })
    }

    pub fn derivations(&self) -> &Subspace {
        &self.z1
    }

    /// `χ(p) = p ∘ κ` for `p ∈ Hom_{A^e}(ker μ, M)`.
    pub fn apply(&self, p: &[FieldElement]) -> Result<Cochain1, CohomologyError> {
        let (env, m) = (self.env, self.m);
        let a = env.base();
        let kernel = env.kernel_of_mu();
        let md = m.dim();
        if p.len() != kernel.dim() * md {
            return Err(CohomologyError::NotInDomain(
                "map has the wrong shape".into(),
            ));
        }
        if !is_hom(a, &self.kmod, m, p) {
            return Err(CohomologyError::NotInDomain("map is not A^e-linear".into()));
        }
        let mut values = Vec::with_capacity(a.dim() * md);
        for x in 0..a.dim() {
            let kx = env.kappa_sparse(&[(x, a.field().one())]);
            let coords = kernel.coordinates_sparse(&kx).expect("κ lands in ker μ");
            values.extend(evaluate(p, md, &from_dense(&coords), a.field()));
        }
        Ok(Cochain1 {
            adim: a.dim(),
            mdim: md,
            values,
        })
    }

    /// The map on `ker μ` with `p(a·κ(b)) = a·d(b)`, for `d ∈ Z¹(A, M)`.
    pub fn inverse(&self, d: &Cochain1) -> Result<Vec<FieldElement>, CohomologyError> {
        let (env, m) = (self.env, self.m);
        let a = env.base();
        let (n, md, field) = (a.dim(), m.dim(), a.field());
        if d.adim != n || d.mdim != md {
            return Err(CohomologyError::NotInDomain(
                "cochain has the wrong shape".into(),
            ));
        }
        if !self.z1.contains(&d.values) {
            return Err(CohomologyError::NotInDomain(
                "cochain is not an admissible derivation".into(),
            ));
        }
        // a·d(b) for basis a, b
        let ad: Vec<Vec<SparseVec>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| m.act_left(x, &from_dense(d.value(y))))
                    .collect()
            })
            .collect();
        // z = −Σ z_ab a·κ(b) on ker μ
        let minus_one = -field.one();
        let mut p = Vec::with_capacity(env.kernel_of_mu().dim() * md);
        for k in env.kernel_of_mu().basis() {
            let mut out = vec![field.zero(); md];
            for (t, c) in k {
                axpy_dense(&mut out, &(c * &minus_one), &ad[t / n][t % n]);
            }
            p.extend(out);
        }
        let back = self.apply(&p)?;
        if back.values != d.values {
            return Err(CohomologyError::NotInDomain(
                "generator presentation of ker μ failed".into(),
            ));
        }
        Ok(p)
    }
}

/// `χ(p) = p ∘ κ` for `p ∈ Hom_{A^e}(ker μ, M)`.
pub fn chi(
    env: &EnvelopingAlgebra,
    m: &Bimodule,
    p: &[FieldElement],
) -> Result<Cochain1, CohomologyError> {
    Chi::new(env, m)?.apply(p)
}

/// Inverse of [`chi`] on `Z¹(A, M)`.
pub fn chi_inverse(
    env: &EnvelopingAlgebra,
    m: &Bimodule,
    d: &Cochain1,
) -> Result<Vec<FieldElement>, CohomologyError> {
    Chi::new(env, m)?.inverse(d)
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
    fn identity_is_a_bimodule_map() {
        let q = Field::Rational;
        let a = group_algebra(3, q);
        let reg = Bimodule::regular(&a);
        let homs = hom_over_enveloping(&a, &reg, &reg);
        let mut id = vec![q.zero(); 9];
        for i in 0..3 {
            id[i * 3 + i] = q.one();
        }
        assert!(homs.contains(&id));
        assert!(hom_over_enveloping(&a, &Bimodule::zero(&a), &reg).is_zero());
    }

    #[test]
    fn chi_roundtrip_on_rational_z2() {
        let q = Field::Rational;
        let a = group_algebra(2, q);
        let env = EnvelopingAlgebra::new(&a).unwrap();
        let reg = Bimodule::regular(&a);
        let kmod = env.kernel_module().unwrap();
        let homs = hom_over_enveloping(&a, &kmod, &reg);
        assert_eq!(homs.dim(), derivations(&a, &reg).dim());
        for p in homs.basis_dense() {
            let d = chi(&env, &reg, &p).unwrap();
            assert_eq!(chi_inverse(&env, &reg, &d).unwrap(), p);
        }
        let zero = vec![q.zero(); kmod.dim() * 2];
        assert!(chi(&env, &reg, &zero).unwrap().is_zero());
    }
}
