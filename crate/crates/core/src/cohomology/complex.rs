use crate::algebra::{Algebra, Bimodule};
use crate::linalg::sparse::{from_dense, normalize, to_dense};
use crate::linalg::{FieldElement, LinearSystem, SparseMatrix, SparseVec, Subspace};

/// A linear map `A → M`; `values[x * dim M + u]` is the `u`-th coordinate of
/// `h(b_x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain1 {
    pub adim: usize,
    pub mdim: usize,
    pub values: Vec<FieldElement>,
}

/// A bilinear map `A × A → M`; `values[(x * dim A + y) * dim M + u]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    pub adim: usize,
    pub mdim: usize,
    pub values: Vec<FieldElement>,
}

impl Cochain1 {
    pub fn zero(a: &Algebra, m: &Bimodule) -> Self {
        Cochain1 {
            adim: a.dim(),
            mdim: m.dim(),
            values: vec![a.field().zero(); a.dim() * m.dim()],
        }
    }

    pub fn from_values(a: &Algebra, m: &Bimodule, values: Vec<FieldElement>) -> Self {
        assert_eq!(
            values.len(),
            a.dim() * m.dim(),
            "1-cochain has the wrong length"
        );
        Cochain1 {
            adim: a.dim(),
            mdim: m.dim(),
            values,
        }
    }

    /// `h(b_x)`.
    pub fn value(&self, x: usize) -> &[FieldElement] {
        &self.values[x * self.mdim..(x + 1) * self.mdim]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

impl Cochain2 {
    pub fn zero(a: &Algebra, m: &Bimodule) -> Self {
        let n = a.dim();
        Cochain2 {
            adim: n,
            mdim: m.dim(),
            values: vec![a.field().zero(); n * n * m.dim()],
        }
    }

    pub fn from_values(a: &Algebra, m: &Bimodule, values: Vec<FieldElement>) -> Self {
        assert_eq!(
            values.len(),
            a.dim() * a.dim() * m.dim(),
            "2-cochain has the wrong length"
        );
        Cochain2 {
            adim: a.dim(),
            mdim: m.dim(),
            values,
        }
    }

    /// `Φ(b_x, b_y)`.
    pub fn value(&self, x: usize, y: usize) -> &[FieldElement] {
        let k = (x * self.adim + y) * self.mdim;
        &self.values[k..k + self.mdim]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// Sign in front of `h(x)·y` in the first coboundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoboundarySign {
    Plus,
    Minus,
}

/// Which 1-cochain coordinates are admissible: `h(b_x)` may only have
/// components along module basis elements in the twist class of `b_x`.
/// Everything is admissible when the algebra is ungraded.
pub fn allowed_cochains1(a: &Algebra, m: &Bimodule) -> Vec<bool> {
    let (n, d) = (a.dim(), m.dim());
    match (a.grading(), m.twist_classes(a)) {
        (Some(g), Some(mc)) => {
            let classes = g.twist_classes();
            (0..n * d)
                .map(|v| classes[g.grades[v / d]] == mc[v % d])
                .collect()
        }
        _ => vec![true; n * d],
    }
}

/// `Φ(b_x, b_y)` may only have components in the twist class of `g_x g_y`.
pub fn allowed_cochains2(a: &Algebra, m: &Bimodule) -> Vec<bool> {
    let (n, d) = (a.dim(), m.dim());
    match (a.grading(), m.twist_classes(a)) {
        (Some(g), Some(mc)) => {
            let classes = g.twist_classes();
            (0..n * n * d)
                .map(|v| {
                    let (xy, u) = (v / d, v % d);
                    let grade = g.metagroup.mul(g.grades[xy / n], g.grades[xy % n]);
                    classes[grade] == mc[u]
                })
                .collect()
        }
        _ => vec![true; n * n * d],
    }
}

/// For each basis index `x`, the pairs `(a, b, c)` with `c` the coefficient
/// of `b_x` in `b_a b_b`.
fn product_occurrences(a: &Algebra) -> Vec<Vec<(usize, usize, FieldElement)>> {
    let n = a.dim();
    let mut occ = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.product_of_basis(i, j) {
                occ[*k].push((i, j, c.clone()));
            }
        }
    }
    occ
}

pub fn delta1_matrix(a: &Algebra, m: &Bimodule) -> SparseMatrix {
    delta1_matrix_with_sign(a, m, CoboundarySign::Plus)
}

/// Matrix of `h ↦ [(x, y) ↦ x·h(y) − h(xy) ± h(x)·y]`.
pub fn delta1_matrix_with_sign(a: &Algebra, m: &Bimodule, sign: CoboundarySign) -> SparseMatrix {
    let (n, d) = (a.dim(), m.dim());
    let occ = product_occurrences(a);
    let mut cols = Vec::with_capacity(n * d);
    for x in 0..n {
        for u in 0..d {
            let mut col = Vec::new();
            for p in 0..n {
                for (w, c) in m.left_basis(p, u) {
                    col.push(((p * n + x) * d + w, c.clone()));
                }
            }
            for (p, q, c) in &occ[x] {
                col.push(((p * n + q) * d + u, -c));
            }
            for q in 0..n {
                for (w, c) in m.right_basis(u, q) {
                    let c = match sign {
                        CoboundarySign::Plus => c.clone(),
                        CoboundarySign::Minus => -c,
                    };
                    col.push(((x * n + q) * d + w, c));
                }
            }
            cols.push(normalize(col));
        }
    }
    SparseMatrix {
        nrows: n * n * d,
        cols,
    }
}

/// Matrix of `Φ ↦ [(x,y,z) ↦ t₃·x·Φ(y,z) − Φ(xy,z) + t₃·Φ(x,yz) − Φ(x,y)·z]`
/// with `t₃ = t₃(x, y, z)`.
pub fn delta2_matrix(a: &Algebra, m: &Bimodule) -> SparseMatrix {
    let (n, d) = (a.dim(), m.dim());
    let occ = product_occurrences(a);
    let idx = |p: usize, q: usize, r: usize, w: usize| ((p * n + q) * n + r) * d + w;
    let mut cols = Vec::with_capacity(n * n * d);
    for x in 0..n {
        for y in 0..n {
            for u in 0..d {
                let mut col = Vec::new();
                for p in 0..n {
                    let t = a.twist(p, x, y);
                    for (w, c) in m.left_basis(p, u) {
                        col.push((idx(p, x, y, *w), &t * c));
                    }
                }
                for (p, q, c) in &occ[x] {
                    col.push((idx(*p, *q, y, u), -c));
                }
                for (q, r, c) in &occ[y] {
                    col.push((idx(x, *q, *r, u), &a.twist(x, *q, *r) * c));
                }
                for r in 0..n {
                    for (w, c) in m.right_basis(u, r) {
                        col.push((idx(x, y, r, *w), -c));
                    }
                }
                cols.push(normalize(col));
            }
        }
    }
    SparseMatrix {
        nrows: n * n * n * d,
        cols,
    }
}

pub fn delta1(a: &Algebra, m: &Bimodule, h: &Cochain1) -> Cochain2 {
    let values = delta1_matrix(a, m).apply_dense(&h.values, a.field());
    Cochain2 {
        adim: a.dim(),
        mdim: m.dim(),
        values,
    }
}

/// The 3-cochain `δ²Φ`, indexed by `((x * n + y) * n + z) * dim M + u`.
pub fn delta2(a: &Algebra, m: &Bimodule, phi: &Cochain2) -> Vec<FieldElement> {
    delta2_matrix(a, m).apply_dense(&phi.values, a.field())
}

fn kernel_on(matrix: &SparseMatrix, allowed: &[bool], field: crate::linalg::Field) -> Subspace {
    let mut sys = LinearSystem::new(field, matrix.ncols());
    for row in matrix.rows() {
        sys.push_homogeneous(row);
    }
    for (v, ok) in allowed.iter().enumerate() {
        if !ok {
            sys.fix_zero(v);
        }
    }
    sys.kernel()
}

/// `Z¹(A, M)`: admissible derivations `d(xy) = x·d(y) + d(x)·y`.
pub fn derivations(a: &Algebra, m: &Bimodule) -> Subspace {
    kernel_on(&delta1_matrix(a, m), &allowed_cochains1(a, m), a.field())
}

/// `N_M`: the `m ∈ M` for which `a⊗c° ↦ (a·m)·c` is an `A`-bimodule map
/// `A^e → M`. For associative algebras this is all of `M`.
pub fn inner_domain(a: &Algebra, m: &Bimodule) -> Subspace {
    let (n, d) = (a.dim(), m.dim());
    let field = a.field();
    // without associators the bimodule laws make every ψ a bimodule map
    let untwisted = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| a.twist(x, y, z).is_one())));
    if untwisted {
        return Subspace::full(field, d);
    }
    // psi[u][p][c] = (b_p · m_u) · b_c
    let psi: Vec<Vec<Vec<SparseVec>>> = (0..d)
        .map(|u| {
            (0..n)
                .map(|p| {
                    let pm = m.left_basis(p, u);
                    (0..n).map(|c| m.act_right(pm, c)).collect()
                })
                .collect()
        })
        .collect();
    let mut sys = LinearSystem::new(field, d);
    let mut rows: Vec<Vec<(usize, FieldElement)>> = vec![Vec::new(); d];
    let flush = |rows: &mut Vec<Vec<(usize, FieldElement)>>, sys: &mut LinearSystem| {
        for r in rows.iter_mut() {
            if !r.is_empty() {
                sys.push_homogeneous(std::mem::take(r));
            }
        }
    };
    for x in 0..n {
        for p in 0..n {
            for c in 0..n {
                // ψ(x·(p⊗c°)) − x·ψ(p⊗c°)
                let t_inv = a.twist(x, p, c).inv();
                for u in 0..d {
                    for (k, ck) in a.product_of_basis(x, p) {
                        let coef = &t_inv * ck;
                        for (w, v) in &psi[u][*k][c] {
                            rows[*w].push((u, &coef * v));
                        }
                    }
                    for (w, v) in m.act_left(x, &psi[u][p][c]) {
                        rows[w].push((u, -v));
                    }
                }
                flush(&mut rows, &mut sys);
                // ψ((p⊗c°)·x) − ψ(p⊗c°)·x
                let t = a.twist(p, c, x);
                for u in 0..d {
                    for (l, cl) in a.product_of_basis(c, x) {
                        let coef = &t * cl;
                        for (w, v) in &psi[u][p][*l] {
                            rows[*w].push((u, &coef * v));
                        }
                    }
                    for (w, v) in m.act_right(&psi[u][p][c], x) {
                        rows[w].push((u, -v));
                    }
                }
                flush(&mut rows, &mut sys);
            }
        }
    }
    sys.kernel()
}

/// `d_m(x) = x·m − m·x` as a 1-cochain.
pub fn inner_map(a: &Algebra, m: &Bimodule, element: &[FieldElement]) -> Cochain1 {
    let d = m.dim();
    let v = from_dense(element);
    let mut values = Vec::with_capacity(a.dim() * d);
    for x in 0..a.dim() {
        let lx = m.act_left(x, &v);
        let rx = m.act_right(&v, x);
        let diff = crate::linalg::sparse::sub_scaled(&lx, &rx, &a.field().one());
        values.extend(to_dense(&diff, d, a.field()));
    }
    Cochain1 {
        adim: a.dim(),
        mdim: d,
        values,
    }
}

/// `B¹(A, M)`: the maps `d_m` for `m ∈ N_M`.
pub fn inner_derivations(a: &Algebra, m: &Bimodule) -> Subspace {
    let domain = inner_domain(a, m);
    let maps: Vec<Vec<FieldElement>> = domain
        .basis_dense()
        .iter()
        .map(|e| inner_map(a, m, e).values)
        .collect();
    Subspace::from_vectors(a.field(), a.dim() * m.dim(), &maps)
}

/// Dimensions and representatives of `Zⁿ / Bⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub degree: usize,
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
    /// Cocycles whose classes form a basis of the cohomology.
    pub representatives: Vec<Vec<FieldElement>>,
}

impl CohomologyResult {
    fn new(degree: usize, cocycles: Subspace, coboundaries: Subspace) -> Self {
        assert!(
            coboundaries.is_subspace_of(&cocycles),
            "coboundaries must be cocycles"
        );
        let representatives = cocycles.quotient_representatives(&coboundaries);
        CohomologyResult {
            degree,
            cocycles,
            coboundaries,
            representatives,
        }
    }

    pub fn dim_z(&self) -> usize {
        self.cocycles.dim()
    }

    pub fn dim_b(&self) -> usize {
        self.coboundaries.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.representatives.len()
    }

    pub fn vanishes(&self) -> bool {
        self.representatives.is_empty()
    }
}

pub fn h1(a: &Algebra, m: &Bimodule) -> CohomologyResult {
    CohomologyResult::new(1, derivations(a, m), inner_derivations(a, m))
}

pub fn h2(a: &Algebra, m: &Bimodule) -> CohomologyResult {
    let d1 = delta1_matrix(a, m);
    let allowed1 = allowed_cochains1(a, m);
    let images = d1
        .cols
        .iter()
        .zip(&allowed1)
        .filter(|(_, ok)| **ok)
        .map(|(c, _)| c.clone());
    let b2 = Subspace::from_sparse(a.field(), d1.nrows, images);
    let z2 = kernel_on(&delta2_matrix(a, m), &allowed_cochains2(a, m), a.field());
    CohomologyResult::new(2, z2, b2)
}
