use super::DecompositionError;
use crate::algebra::Algebra;
use crate::linalg::sparse::from_dense;
use crate::linalg::{
    Echelon, Field, FieldElement, LinearSystem, SparseMatrix, SparseVec, Subspace,
};

pub const DEFAULT_DIMENSION_BOUND: usize = 16;
/// Largest dimension at which the exhaustive search over GF(p) runs.
pub const EXHAUSTIVE_DIMENSION_BOUND: usize = 5;

/// The largest nilpotent two-sided ideal and its power chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalResult {
    pub ideal: Subspace,
    /// Least `k` with the left power chain `J, J·J, J·(J·J), …` vanishing at step `k`.
    pub index: usize,
    /// Whether the echelon basis of the ideal is homogeneous.
    pub graded: bool,
    pub chains_equal: bool,
    /// Whether the exhaustive method ran and agreed.
    pub cross_checked: bool,
}

/// Flattens an operator column by column.
fn flatten(m: &SparseMatrix) -> SparseVec {
    let n = m.nrows;
    let mut out = Vec::new();
    for (j, col) in m.cols.iter().enumerate() {
        for (i, c) in col {
            out.push((j * n + i, c.clone()));
        }
    }
    out
}

/// A basis of the associative algebra generated by the identity and all
/// left and right multiplications by basis elements.
pub fn multiplication_algebra(a: &Algebra) -> Vec<SparseMatrix> {
    let n = a.dim();
    let field = a.field();
    let mut gens = Vec::with_capacity(2 * n);
    for x in 0..n {
        gens.push(a.left_multiplication(&a.basis_vector(x)));
        gens.push(a.right_multiplication(&a.basis_vector(x)));
    }
    let mut ech = Echelon::new(field, n * n);
    let id = SparseMatrix::identity(n, field);
    ech.insert(flatten(&id));
    let mut basis = vec![id];
    let mut next = 0;
    while next < basis.len() {
        let u = basis[next].clone();
        next += 1;
        for g in &gens {
            let w = g.compose(&u);
            if ech.insert(flatten(&w)).is_some() {
                basis.push(w);
            }
        }
    }
    basis
}

fn trace(m: &SparseMatrix, field: Field) -> FieldElement {
    let mut t = field.zero();
    for (j, col) in m.cols.iter().enumerate() {
        if let Some((_, c)) = col.iter().find(|(i, _)| *i == j) {
            t += c;
        }
    }
    t
}

fn combination(ops: &[SparseMatrix], coeffs: &[FieldElement], n: usize) -> SparseMatrix {
    let mut acc = SparseMatrix::zero(n, n);
    for (op, c) in ops.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add_scaled(op, c);
        }
    }
    acc
}

/// `g_i(a) = Tr(ã^{p^i}) / p^i mod p` with `ã` the integer lift of `a`.
fn g_functional(m: &SparseMatrix, p: u64, i: u32) -> u64 {
    let n = m.nrows;
    let modulus = (p as u128).pow(i + 1);
    let mut lift = vec![vec![0u128; n]; n];
    for (j, col) in m.cols.iter().enumerate() {
        for (r, c) in col {
            lift[*r][j] = c.residue().expect("prime field") as u128;
        }
    }
    let mul = |x: &Vec<Vec<u128>>, y: &Vec<Vec<u128>>| {
        let mut out = vec![vec![0u128; n]; n];
        for r in 0..n {
            for k in 0..n {
                if x[r][k] == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r][c] = (out[r][c] + x[r][k] * y[k][c]) % modulus;
                }
            }
        }
        out
    };
    let mut power = lift.clone();
    for _ in 0..i {
        // raise to the p-th power
        let base = power.clone();
        for _ in 1..p {
            power = mul(&power, &base);
        }
    }
    let tr = (0..n).map(|r| power[r][r]).sum::<u128>() % modulus;
    let pi = (p as u128).pow(i);
    debug_assert_eq!(
        tr % pi,
        0,
        "trace of an element of the previous ideal is divisible by p^i"
    );
    ((tr / pi) % p as u128) as u64
}

/// Radical of the multiplication algebra, as coefficient vectors over `basis`.
fn operator_radical(basis: &[SparseMatrix], n: usize, field: Field) -> Vec<SparseMatrix> {
    let dim = basis.len();
    match field {
        Field::Rational => {
            let mut sys = LinearSystem::new(field, dim);
            let products: Vec<Vec<FieldElement>> = basis
                .iter()
                .map(|u| basis.iter().map(|v| trace(&u.compose(v), field)).collect())
                .collect();
            for j in 0..dim {
                sys.push_homogeneous(from_dense(
                    &(0..dim).map(|i| products[i][j].clone()).collect::<Vec<_>>(),
                ));
            }
            sys.kernel()
                .basis_dense()
                .iter()
                .map(|c| combination(basis, c, n))
                .collect()
        }
        Field::Prime(p) => {
            let mut current: Vec<SparseMatrix> = basis.to_vec();
            let mut l = 0u32;
            while (p as u128).pow(l + 1) <= n as u128 {
                l += 1;
            }
            for i in 0..=l {
                if current.is_empty() {
                    break;
                }
                let mut sys = LinearSystem::new(field, current.len());
                for b in basis {
                    let row: Vec<FieldElement> = current
                        .iter()
                        .map(|w| field.from_i64(g_functional(&w.compose(b), p, i) as i64))
                        .collect();
                    sys.push_homogeneous(from_dense(&row));
                }
                current = sys
                    .kernel()
                    .basis_dense()
                    .iter()
                    .map(|c| combination(&current, c, n))
                    .collect();
            }
            current
        }
    }
}

/// Radical via the multiplication algebra: trace form in characteristic 0,
/// iterated trace-power functionals in characteristic `p`.
pub fn radical_by_trace(a: &Algebra) -> Subspace {
    let n = a.dim();
    let basis = multiplication_algebra(a);
    let rad = operator_radical(&basis, n, a.field());
    let mut vectors = Vec::new();
    for op in &rad {
        vectors.extend(op.cols.iter().cloned());
    }
    Subspace::from_sparse(a.field(), n, vectors)
}

fn ideal_generated(a: &Algebra, v: SparseVec) -> Subspace {
    let n = a.dim();
    let mut ech = Echelon::new(a.field(), n);
    let mut queue = vec![v.clone()];
    ech.insert(v);
    while let Some(u) = queue.pop() {
        for x in 0..n {
            let bx = vec![(x, a.field().one())];
            for w in [a.multiply_sparse(&bx, &u), a.multiply_sparse(&u, &bx)] {
                if !ech.contains(w.clone()) {
                    ech.insert(w.clone());
                    queue.push(w);
                }
            }
        }
    }
    Subspace::from_sparse(a.field(), n, ech.into_rref())
}

fn is_nilpotent(a: &Algebra, ideal: &Subspace) -> bool {
    let (left, right) = a.power_chains(ideal);
    left.last().map(|s| s.is_zero()).unwrap_or(true)
        && right.last().map(|s| s.is_zero()).unwrap_or(true)
}

/// Sum of all nilpotent principal ideals, by enumerating every element of
/// `A`. Only over GF(p) and up to [`EXHAUSTIVE_DIMENSION_BOUND`].
pub fn radical_exhaustive(a: &Algebra) -> Option<Subspace> {
    let p = match a.field() {
        Field::Prime(p) => p,
        Field::Rational => return None,
    };
    let n = a.dim();
    if n > EXHAUSTIVE_DIMENSION_BOUND {
        return None;
    }
    let mut sum = Subspace::zero(a.field(), n);
    let total = p.pow(n as u32);
    for code in 1..total {
        let mut digits = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            digits.push(a.field().from_i64((c % p) as i64));
            c /= p;
        }
        if sum.contains(&digits) {
            continue;
        }
        let ideal = ideal_generated(a, from_dense(&digits));
        if is_nilpotent(a, &ideal) {
            sum = sum.sum(&ideal);
        }
    }
    Some(sum)
}

/// Least `k` with `J_l^k = 0`, or `None` when the left chain stalls.
pub fn nilpotency_index(a: &Algebra, ideal: &Subspace) -> Option<usize> {
    let (left, _) = a.power_chains(ideal);
    if left.last().map(|s| s.is_zero()).unwrap_or(false) {
        Some(left.len())
    } else {
        None
    }
}

pub fn radical(a: &Algebra) -> Result<RadicalResult, DecompositionError> {
    radical_with_bound(a, DEFAULT_DIMENSION_BOUND)
}

pub fn radical_with_bound(a: &Algebra, bound: usize) -> Result<RadicalResult, DecompositionError> {
    if a.dim() > bound {
        return Err(DecompositionError::DimensionBound {
            dim: a.dim(),
            bound,
        });
    }
    let ideal = radical_by_trace(a);
    a.check_ideal(&ideal)
        .map_err(|_| DecompositionError::RadicalNotNilpotent)?;
    let (left, right) = a.power_chains(&ideal);
    let index = nilpotency_index(a, &ideal).ok_or(DecompositionError::RadicalNotNilpotent)?;
    if !right.last().map(|s| s.is_zero()).unwrap_or(false) {
        return Err(DecompositionError::RadicalNotNilpotent);
    }
    let cross_checked = match radical_exhaustive(a) {
        Some(ex) if ex != ideal => {
            return Err(DecompositionError::MethodDisagreement {
                trace: ideal.dim(),
                exhaustive: ex.dim(),
            })
        }
        Some(_) => true,
        None => false,
    };
    let graded = match a.grading() {
        Some(g) => ideal
            .basis()
            .iter()
            .all(|b| g.homogeneous_grade(b.iter().map(|(i, _)| *i)).is_some()),
        None => false,
    };
    Ok(RadicalResult {
        ideal,
        index,
        graded,
        chains_equal: left == right,
        cross_checked,
    })
}
