use super::hom::hom_system;
use super::CohomologyError;
use crate::algebra::{Bimodule, EnvelopingAlgebra};
use crate::linalg::sparse::from_dense;
use crate::linalg::{FieldElement, LinearSystem, SparseMatrix, SparseVec};

/// The five identity families a separating idempotent must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum IdentityFamily {
    /// `μ(b) = 1`
    Augmentation,
    /// `x·b = b·x`
    Central,
    /// `b·(xy) = (b·x)·y`
    RightAssociative,
    /// `(x·b)·y = x·(b·y)`
    Middle,
    /// `(xy)·b = x·(y·b)`
    LeftAssociative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub family: IdentityFamily,
    /// Number of basis instances evaluated.
    pub checked: usize,
    /// Number of instances with a nonzero residual.
    pub failed: usize,
}

/// A verified separating idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityCertificate {
    /// Coordinates in the basis `a ⊗ b°` of `A^e`.
    pub b: Vec<FieldElement>,
    /// Dimension of the affine family of solutions.
    pub freedom: usize,
    pub residuals: Vec<IdentityReport>,
}

/// An `A^e`-linear right inverse of `μ` and the idempotent `p(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    /// `p[i * dim A^e + j]` is the `j`-th coordinate of `p(b_i)`.
    pub p: Vec<FieldElement>,
    pub idempotent: Vec<FieldElement>,
}

struct Operators {
    left: Vec<SparseMatrix>,
    right: Vec<SparseMatrix>,
}

fn operators(env: &EnvelopingAlgebra) -> Operators {
    let n = env.base().dim();
    let one = env.base().field().one();
    let module = env.module();
    Operators {
        left: (0..n)
            .map(|x| module.left_matrix(&[(x, one.clone())]))
            .collect(),
        right: (0..n)
            .map(|x| module.right_matrix(&[(x, one.clone())]))
            .collect(),
    }
}

fn combine(ops: &[SparseMatrix], coeffs: &[(usize, FieldElement)], dim: usize) -> SparseMatrix {
    let mut acc = SparseMatrix::zero(dim, dim);
    for (k, c) in coeffs {
        acc = acc.add_scaled(&ops[*k], c);
    }
    acc
}

/// For each family, the linear operators on `A^e` whose kernels express it.
fn family_operators(env: &EnvelopingAlgebra) -> Vec<(IdentityFamily, SparseMatrix)> {
    let a = env.base();
    let n = a.dim();
    let dim = env.dim();
    let ops = operators(env);
    let minus = -a.field().one();
    let mut out = Vec::new();
    for x in 0..n {
        out.push((
            IdentityFamily::Central,
            ops.left[x].add_scaled(&ops.right[x], &minus),
        ));
    }
    for x in 0..n {
        for y in 0..n {
            let xy = a.product_of_basis(x, y);
            let r_xy = combine(&ops.right, xy, dim);
            let l_xy = combine(&ops.left, xy, dim);
            out.push((
                IdentityFamily::RightAssociative,
                r_xy.add_scaled(&ops.right[y].compose(&ops.right[x]), &minus),
            ));
            out.push((
                IdentityFamily::Middle,
                ops.right[y]
                    .compose(&ops.left[x])
                    .add_scaled(&ops.left[x].compose(&ops.right[y]), &minus),
            ));
            out.push((
                IdentityFamily::LeftAssociative,
                l_xy.add_scaled(&ops.left[x].compose(&ops.left[y]), &minus),
            ));
        }
    }
    out
}

/// Evaluates all identity families on `b` exactly.
pub fn verify_separating_idempotent(
    env: &EnvelopingAlgebra,
    b: &[FieldElement],
) -> Vec<IdentityReport> {
    let a = env.base();
    let bs = from_dense(b);
    let mut reports = vec![IdentityReport {
        family: IdentityFamily::Augmentation,
        checked: 1,
        failed: usize::from(env.mu(b) != a.unit()),
    }];
    for (family, op) in family_operators(env) {
        let failed = usize::from(!op.apply(&bs).is_empty());
        match reports.iter_mut().find(|r| r.family == family) {
            Some(r) => {
                r.checked += 1;
                r.failed += failed;
            }
            None => reports.push(IdentityReport {
                family,
                checked: 1,
                failed,
            }),
        }
    }
    reports
}

/// Solves for `b ∈ A^e` with `μ(b) = 1` and all four identity families.
pub fn separating_idempotent(
    env: &EnvelopingAlgebra,
) -> Result<SeparabilityCertificate, CohomologyError> {
    let a = env.base();
    let mut sys = LinearSystem::new(a.field(), env.dim());
    for (k, row) in env.mu_matrix().rows().into_iter().enumerate() {
        sys.push(row, a.unit()[k].clone());
    }
    for (_, op) in family_operators(env) {
        for row in op.rows() {
            sys.push_homogeneous(row);
        }
    }
    let sol = sys.solve().map_err(|_| CohomologyError::NotSeparable)?;
    let residuals = verify_separating_idempotent(env, &sol.particular);
    assert!(
        residuals.iter().all(|r| r.failed == 0),
        "solver returned a non-solution"
    );
    Ok(SeparabilityCertificate {
        b: sol.particular,
        freedom: sol.kernel.dim(),
        residuals,
    })
}

/// Finds `p ∈ Hom_{A^e}(A, A^e)` with `μ ∘ p = id` and returns it with
/// `b = p(1)`.
pub fn splitting_homomorphism(env: &EnvelopingAlgebra) -> Result<Splitting, CohomologyError> {
    let a = env.base();
    let (n, ed) = (a.dim(), env.dim());
    let reg = Bimodule::regular(a);
    let mut sys = hom_system(a, &reg, env.module());
    let mu_rows = env.mu_matrix().rows();
    for i in 0..n {
        for (k, row) in mu_rows.iter().enumerate() {
            let terms: SparseVec = row.iter().map(|(j, c)| (i * ed + j, c.clone())).collect();
            let rhs = if k == i {
                a.field().one()
            } else {
                a.field().zero()
            };
            sys.push(terms, rhs);
        }
    }
    let sol = sys.solve().map_err(|_| CohomologyError::NoSplitting)?;
    let p = sol.particular;
    let mut idempotent = vec![a.field().zero(); ed];
    for (i, u) in a.unit().iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        for j in 0..ed {
            let t = u * &p[i * ed + j];
            idempotent[j] += &t;
        }
    }
    Ok(Splitting { p, idempotent })
}

/// `b·x` for a certificate `b`; `μ(b·x) = x` on a basis.
pub fn right_translate(env: &EnvelopingAlgebra, b: &[FieldElement], x: usize) -> SparseVec {
    env.module().act_right(&from_dense(b), x)
}
