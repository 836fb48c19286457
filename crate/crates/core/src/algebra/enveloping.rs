use super::{ActionLaw, Algebra, AlgebraError, Bimodule};
use crate::linalg::sparse::{from_dense, normalize, scale, to_dense};
use crate::linalg::{FieldElement, LinearSystem, SparseMatrix, SparseVec, Subspace};

/// `A ⊗ A°` with basis `a ⊗ b°` at index `a·n + b`.
///
/// The product is `(a⊗b°)(c⊗d°) = (ac)⊗(db)°`. As an `A`-bimodule,
///
/// * `x·(a⊗b°) = t₃(x,a,b)⁻¹ (xa)⊗b°`
/// * `(a⊗b°)·y = t₃(a,b,y) a⊗(by)°`
///
/// and `a⊗b°` has grade `g_a g_b`. With trivial twist these are the usual
/// enveloping algebra actions; the twists make `μ(a⊗b°) = ab` equivariant.
#[derive(Clone, Debug)]
pub struct EnvelopingAlgebra {
    base: Algebra,
    algebra: Algebra,
    module: Bimodule,
    mu: SparseMatrix,
    kernel: Subspace,
}

fn tensor(n: usize, x: &[(usize, FieldElement)], y: &[(usize, FieldElement)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (i, a) in x {
        for (j, b) in y {
            out.push((i * n + j, a * b));
        }
    }
    normalize(out)
}

impl EnvelopingAlgebra {
    pub fn new(a: &Algebra) -> Result<Self, AlgebraError> {
        let n = a.dim();
        let field = a.field();
        let one = field.one();
        let labels: Vec<String> = (0..n * n)
            .map(|k| format!("{}⊗{}°", a.labels()[k / n], a.labels()[k % n]))
            .collect();

        let mut table = Vec::with_capacity(n.pow(4));
        for p in 0..n * n {
            for q in 0..n * n {
                let (i, j, k, l) = (p / n, p % n, q / n, q % n);
                table.push(tensor(
                    n,
                    a.product_of_basis(i, k),
                    a.product_of_basis(l, j),
                ));
            }
        }
        let unit = to_dense(
            &tensor(n, &from_dense(a.unit()), &from_dense(a.unit())),
            n * n,
            field,
        );
        let algebra = Algebra::from_structure(field, labels.clone(), table, unit)?;

        let mut left = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for p in 0..n * n {
                let (i, j) = (p / n, p % n);
                let t = a.twist(x, i, j).inv();
                left.push(scale(
                    &tensor(n, a.product_of_basis(x, i), &[(j, one.clone())]),
                    &t,
                ));
            }
        }
        let mut right = Vec::with_capacity(n * n * n);
        for p in 0..n * n {
            let (i, j) = (p / n, p % n);
            for y in 0..n {
                let t = a.twist(i, j, y);
                right.push(scale(
                    &tensor(n, &[(i, one.clone())], a.product_of_basis(j, y)),
                    &t,
                ));
            }
        }
        let grades = a.grading().map(|g| {
            (0..n * n)
                .map(|p| g.metagroup.mul(g.grades[p / n], g.grades[p % n]))
                .collect()
        });
        let module = Bimodule::new(a, labels, left, right, grades)?;

        let mu = SparseMatrix {
            nrows: n,
            cols: (0..n * n)
                .map(|p| a.product_of_basis(p / n, p % n).clone())
                .collect(),
        };
        let mut sys = LinearSystem::new(field, n * n);
        for row in mu.rows() {
            sys.push_homogeneous(row);
        }
        let kernel = sys.kernel();

        let env = EnvelopingAlgebra {
            base: a.clone(),
            algebra,
            module,
            mu,
            kernel,
        };
        env.check_mu_equivariance()?;
        Ok(env)
    }

    fn check_mu_equivariance(&self) -> Result<(), AlgebraError> {
        let n = self.base.dim();
        let reg = Bimodule::regular(&self.base);
        let one = self.base.field().one();
        for x in 0..n {
            for p in 0..n * n {
                let bp = vec![(p, one.clone())];
                let mp = self.mu.apply(&bp);
                if self.mu.apply(&self.module.act_left(x, &bp)) != reg.act_left(x, &mp) {
                    return Err(AlgebraError::ActionLawViolation {
                        law: ActionLaw::MuLeftEquivariance,
                        x,
                        y: p / n,
                        u: p % n,
                    });
                }
                if self.mu.apply(&self.module.act_right(&bp, x)) != reg.act_right(&mp, x) {
                    return Err(AlgebraError::ActionLawViolation {
                        law: ActionLaw::MuRightEquivariance,
                        x,
                        y: p / n,
                        u: p % n,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    /// `A^e` with its own (untwisted) product.
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// `A^e` as a two-sided `A`-module.
    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.base.dim() + b
    }

    pub fn tensor(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        to_dense(
            &tensor(self.base.dim(), &from_dense(x), &from_dense(y)),
            self.dim(),
            self.base.field(),
        )
    }

    pub fn mu_matrix(&self) -> &SparseMatrix {
        &self.mu
    }

    pub fn mu(&self, z: &[FieldElement]) -> Vec<FieldElement> {
        self.mu.apply_dense(z, self.base.field())
    }

    pub fn mu_sparse(&self, z: &[(usize, FieldElement)]) -> SparseVec {
        self.mu.apply(z)
    }

    /// `κ(x) = x⊗1° − 1⊗x°`.
    pub fn kappa_sparse(&self, x: &[(usize, FieldElement)]) -> SparseVec {
        let n = self.base.dim();
        let unit = from_dense(self.base.unit());
        let a = tensor(n, x, &unit);
        let b = tensor(n, &unit, x);
        crate::linalg::sparse::sub_scaled(&a, &b, &self.base.field().one())
    }

    pub fn kappa(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        to_dense(
            &self.kappa_sparse(&from_dense(x)),
            self.dim(),
            self.base.field(),
        )
    }

    /// `ker μ` in `A^e` coordinates.
    pub fn kernel_of_mu(&self) -> &Subspace {
        &self.kernel
    }

    /// `ker μ` as a sub-bimodule of `A^e`, on the echelon basis of the kernel.
    pub fn kernel_module(&self) -> Result<Bimodule, AlgebraError> {
        self.module.submodule(&self.base, &self.kernel)
    }
}
