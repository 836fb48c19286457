#![allow(dead_code)]

use metalg::algebra::{Algebra, Bimodule, EnvelopingAlgebra};
use metalg::cohomology::{allowed_cochains1, Cochain1};
use metalg::constructions::{
    cube_zero_extension, cyclic_group_algebra, disguise, klein_group_algebra, octonion_algebra,
    square_zero_extension,
};
use metalg::linalg::{Field, FieldElement, Subspace};
use rand::Rng;

pub const Q: Field = Field::Rational;

pub fn gf(p: u64) -> Field {
    Field::Prime(p)
}

/// Small algebras every criterion runs on. Extensions come disguised.
pub fn battery() -> Vec<(&'static str, Algebra)> {
    vec![
        ("Q[Z/2]", cyclic_group_algebra(2, Q).unwrap()),
        ("Q[Z/3]", cyclic_group_algebra(3, Q).unwrap()),
        ("Q[Z/4]", cyclic_group_algebra(4, Q).unwrap()),
        ("Q[Z/2xZ/2]", klein_group_algebra(Q).unwrap()),
        ("GF(2)[Z/2]", cyclic_group_algebra(2, gf(2)).unwrap()),
        ("GF(3)[Z/3]", cyclic_group_algebra(3, gf(3)).unwrap()),
        ("octonions/Q", octonion_algebra(Q).unwrap()),
        (
            "k=2 ext/Q",
            disguise(&square_zero_extension(Q).unwrap(), 11)
                .unwrap()
                .algebra,
        ),
        (
            "k=2 ext/GF(3)",
            disguise(&square_zero_extension(gf(3)).unwrap(), 12)
                .unwrap()
                .algebra,
        ),
        (
            "k=3 ext/Q",
            disguise(&cube_zero_extension(Q).unwrap(), 13)
                .unwrap()
                .algebra,
        ),
    ]
}

/// `A`, `A^e` and `ker μ` as bimodules over `A`.
pub fn battery_modules(a: &Algebra) -> Vec<(&'static str, Bimodule)> {
    let env = EnvelopingAlgebra::new(a).unwrap();
    vec![
        ("A", Bimodule::regular(a)),
        ("A^e", env.module().clone()),
        ("ker mu", env.kernel_module().unwrap()),
    ]
}

pub fn random_scalar(field: Field, rng: &mut impl Rng) -> FieldElement {
    match field {
        Field::Rational => field.from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn random_vector(field: Field, n: usize, rng: &mut impl Rng) -> Vec<FieldElement> {
    (0..n).map(|_| random_scalar(field, rng)).collect()
}

/// A random 1-cochain supported on the admissible coordinates.
pub fn random_cochain1(a: &Algebra, m: &Bimodule, rng: &mut impl Rng) -> Cochain1 {
    let field = a.field();
    let values = allowed_cochains1(a, m)
        .into_iter()
        .map(|ok| {
            if ok {
                random_scalar(field, rng)
            } else {
                field.zero()
            }
        })
        .collect();
    Cochain1::from_values(a, m, values)
}

pub fn random_in(sub: &Subspace, rng: &mut impl Rng) -> Vec<FieldElement> {
    let coords = random_vector(sub.field(), sub.dim(), rng);
    sub.combine(&coords)
}

pub fn add(x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn is_zero(x: &[FieldElement]) -> bool {
    x.iter().all(|c| c.is_zero())
}

/// `1 + v + v² + …`, the inverse of `1 − v` for nilpotent `v`.
pub fn neumann_inverse(a: &Algebra, v: &[FieldElement]) -> Vec<FieldElement> {
    let mut sum = a.unit().to_vec();
    let mut power = v.to_vec();
    for _ in 0..=a.dim() {
        if is_zero(&power) {
            return sum;
        }
        sum = add(&sum, &power);
        power = a.multiply(&power, v);
    }
    panic!("element is not nilpotent");
}

pub fn span(a: &Algebra, vs: &[Vec<FieldElement>]) -> Subspace {
    Subspace::from_vectors(a.field(), a.dim(), vs)
}

/// `x·S` and `S·x` as subspaces.
pub fn left_times(a: &Algebra, x: &[FieldElement], s: &Subspace) -> Subspace {
    span(
        a,
        &s.basis_dense()
            .iter()
            .map(|b| a.multiply(x, b))
            .collect::<Vec<_>>(),
    )
}

pub fn right_times(a: &Algebra, s: &Subspace, x: &[FieldElement]) -> Subspace {
    span(
        a,
        &s.basis_dense()
            .iter()
            .map(|b| a.multiply(b, x))
            .collect::<Vec<_>>(),
    )
}

/// All vectors of `GF(p)^n`.
pub fn enumerate(p: u64, n: usize) -> Vec<Vec<FieldElement>> {
    let field = gf(p);
    let total = p.pow(n as u32);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = code % p;
                    code /= p;
                    field.from_i64(d as i64)
                })
                .collect()
        })
        .collect()
}

/// Product of Cayley–Dickson basis units `e_x e_y` at the given level, as
/// `(negative, index)`, from `(a, b)(c, d) = (ac − d̄b, da + bc̄)`.
pub fn cd_mul(x: usize, y: usize, level: usize) -> (bool, usize) {
    if level == 0 {
        return (false, 0);
    }
    let half = 1 << (level - 1);
    let conj_neg = |u: usize| u != 0;
    match (x < half, y < half) {
        (true, true) => cd_mul(x, y, level - 1),
        (true, false) => {
            let (s, i) = cd_mul(y - half, x, level - 1);
            (s, i + half)
        }
        (false, true) => {
            let (s, i) = cd_mul(x - half, y, level - 1);
            (s ^ conj_neg(y), i + half)
        }
        (false, false) => {
            let (s, i) = cd_mul(y - half, x - half, level - 1);
            (!(s ^ conj_neg(y - half)), i)
        }
    }
}

/// Signed unit table with `2k ↦ e_k`, `2k + 1 ↦ −e_k`.
pub fn signed_unit_table(level: usize) -> Vec<Vec<usize>> {
    let n = 2usize << level;
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let (s, i) = cd_mul(x / 2, y / 2, level);
                    2 * i + ((s as usize) ^ (x % 2) ^ (y % 2))
                })
                .collect()
        })
        .collect()
}
