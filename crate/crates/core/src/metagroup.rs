//! Finite metagroups: unital quasigroups whose associator takes values in a
//! central, fully associative subgroup `Ψ`.

use std::fmt;

/// Which metagroup axiom failed, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    RowNotPermutation {
        row: usize,
        repeated: usize,
    },
    ColumnNotPermutation {
        column: usize,
        repeated: usize,
    },
    Unit {
        element: usize,
    },
    PsiMissingUnit,
    PsiNotClosed {
        a: usize,
        b: usize,
    },
    PsiNotCentral {
        psi: usize,
        a: usize,
    },
    PsiNotAssociative {
        psi: usize,
        a: usize,
        b: usize,
    },
    AssociatorOutsidePsi {
        a: usize,
        b: usize,
        c: usize,
        t: usize,
    },
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::RowNotPermutation { row, repeated } => {
                write!(
                    f,
                    "row {row} is not a permutation (entry {repeated} repeats)"
                )
            }
            Axiom::ColumnNotPermutation { column, repeated } => {
                write!(
                    f,
                    "column {column} is not a permutation (entry {repeated} repeats)"
                )
            }
            Axiom::Unit { element } => write!(f, "unit fails on element {element}"),
            Axiom::PsiMissingUnit => write!(f, "psi does not contain the unit"),
            Axiom::PsiNotClosed { a, b } => write!(f, "psi not closed: {a}*{b} leaves psi"),
            Axiom::PsiNotCentral { psi, a } => {
                write!(f, "psi element {psi} does not commute with {a}")
            }
            Axiom::PsiNotAssociative { psi, a, b } => {
                write!(f, "psi element {psi} does not associate with ({a}, {b})")
            }
            Axiom::AssociatorOutsidePsi { a, b, c, t } => {
                write!(f, "associator of ({a}, {b}, {c}) is {t}, outside psi")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetagroupError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("axiom violation: {0}")]
    AxiomViolation(Axiom),
    #[error("not associative: ({a}{b}){c} != {a}({b}{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("doubling precondition: {0}")]
    DoublingPrecondition(String),
}

/// A verified finite metagroup with its division tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetagroupTable {
    n: usize,
    unit: usize,
    product: Vec<usize>,
    psi: Vec<usize>,
    in_psi: Vec<bool>,
    left_div: Vec<usize>,
    right_div: Vec<usize>,
    names: Option<Vec<String>>,
}

impl MetagroupTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn psi(&self) -> &[usize] {
        &self.psi
    }

    pub fn in_psi(&self, a: usize) -> bool {
        self.in_psi[a]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => format!("g{a}"),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, MetagroupError> {
        if names.len() != self.n {
            return Err(MetagroupError::MalformedTable(format!(
                "{} names for {} elements",
                names.len(),
                self.n
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.n + b]
    }

    /// The unique `x` with `a·x = b`.
    #[inline]
    pub fn left_div(&self, a: usize, b: usize) -> usize {
        self.left_div[a * self.n + b]
    }

    /// The unique `x` with `x·a = b`.
    #[inline]
    pub fn right_div(&self, b: usize, a: usize) -> usize {
        self.right_div[a * self.n + b]
    }

    /// The unique `t ∈ Ψ` with `(ab)c = t·(a(bc))`.
    pub fn associator(&self, a: usize, b: usize, c: usize) -> usize {
        let lhs = self.mul(self.mul(a, b), c);
        let rhs = self.mul(a, self.mul(b, c));
        self.right_div(lhs, rhs)
    }

    pub fn product_rows(&self) -> Vec<Vec<usize>> {
        self.product.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Whether every associator is the unit.
    pub fn is_associative(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| (0..self.n).all(|c| self.associator(a, b, c) == self.unit))
        })
    }
}

fn check_shape(rows: &[Vec<usize>]) -> Result<usize, MetagroupError> {
    let n = rows.len();
    if n == 0 {
        return Err(MetagroupError::MalformedTable("empty table".into()));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(MetagroupError::MalformedTable(format!(
                "row {i} has {} entries, expected {n}",
                r.len()
            )));
        }
        if let Some(x) = r.iter().find(|x| **x >= n) {
            return Err(MetagroupError::MalformedTable(format!(
                "entry {x} in row {i} out of range 0..{n}"
            )));
        }
    }
    Ok(n)
}

/// Quasigroup and unit checks; returns the flat product with division tables.
fn quasigroup_with_unit(
    rows: &[Vec<usize>],
    unit: usize,
) -> Result<(usize, Vec<usize>, Vec<usize>, Vec<usize>), MetagroupError> {
    let n = check_shape(rows)?;
    if unit >= n {
        return Err(MetagroupError::MalformedTable(format!(
            "unit {unit} out of range 0..{n}"
        )));
    }
    let product: Vec<usize> = rows.concat();
    let none = usize::MAX;
    let mut left_div = vec![none; n * n];
    let mut right_div = vec![none; n * n];
    for a in 0..n {
        for x in 0..n {
            let b = product[a * n + x];
            if left_div[a * n + b] != none {
                return Err(MetagroupError::AxiomViolation(Axiom::RowNotPermutation {
                    row: a,
                    repeated: b,
                }));
            }
            left_div[a * n + b] = x;
        }
    }
    for a in 0..n {
        for x in 0..n {
            let b = product[x * n + a];
            if right_div[a * n + b] != none {
                return Err(MetagroupError::AxiomViolation(
                    Axiom::ColumnNotPermutation {
                        column: a,
                        repeated: b,
                    },
                ));
            }
            right_div[a * n + b] = x;
        }
    }
    for a in 0..n {
        if product[unit * n + a] != a || product[a * n + unit] != a {
            return Err(MetagroupError::AxiomViolation(Axiom::Unit { element: a }));
        }
    }
    Ok((n, product, left_div, right_div))
}

/// Validates a raw table against the metagroup axioms.
pub fn verify_metagroup(
    rows: &[Vec<usize>],
    unit: usize,
    psi: &[usize],
) -> Result<MetagroupTable, MetagroupError> {
    let (n, product, left_div, right_div) = quasigroup_with_unit(rows, unit)?;
    let mut in_psi = vec![false; n];
    for &p in psi {
        if p >= n {
            return Err(MetagroupError::MalformedTable(format!(
                "psi element {p} out of range 0..{n}"
            )));
        }
        in_psi[p] = true;
    }
    let psi: Vec<usize> = (0..n).filter(|i| in_psi[*i]).collect();
    let m = |a: usize, b: usize| product[a * n + b];
    if !in_psi[unit] {
        return Err(MetagroupError::AxiomViolation(Axiom::PsiMissingUnit));
    }
    for &a in &psi {
        for &b in &psi {
            if !in_psi[m(a, b)] {
                return Err(MetagroupError::AxiomViolation(Axiom::PsiNotClosed { a, b }));
            }
        }
    }
    for &p in &psi {
        for a in 0..n {
            if m(p, a) != m(a, p) {
                return Err(MetagroupError::AxiomViolation(Axiom::PsiNotCentral {
                    psi: p,
                    a,
                }));
            }
            for b in 0..n {
                let pab = m(p, m(a, b));
                if m(m(p, a), b) != pab || m(a, m(p, b)) != pab || m(m(a, b), p) != m(a, m(b, p)) {
                    return Err(MetagroupError::AxiomViolation(Axiom::PsiNotAssociative {
                        psi: p,
                        a,
                        b,
                    }));
                }
            }
        }
    }
    let table = MetagroupTable {
        n,
        unit,
        product,
        psi,
        in_psi,
        left_div,
        right_div,
        names: None,
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = table.associator(a, b, c);
                if !table.in_psi[t] {
                    return Err(MetagroupError::AxiomViolation(
                        Axiom::AssociatorOutsidePsi { a, b, c, t },
                    ));
                }
            }
        }
    }
    Ok(table)
}

/// Elements that commute with everything and associate with every pair in
/// every position: the largest admissible `Ψ`.
pub fn center_and_psi(rows: &[Vec<usize>], unit: usize) -> Result<Vec<usize>, MetagroupError> {
    let (n, product, _, _) = quasigroup_with_unit(rows, unit)?;
    let m = |a: usize, b: usize| product[a * n + b];
    Ok((0..n)
        .filter(|&c| {
            (0..n).all(|a| {
                m(c, a) == m(a, c)
                    && (0..n).all(|b| {
                        let cab = m(c, m(a, b));
                        m(m(c, a), b) == cab
                            && m(m(a, c), b) == m(a, m(c, b))
                            && m(m(a, b), c) == m(a, m(b, c))
                    })
            })
        })
        .collect())
}

/// A group viewed as a metagroup with trivial associator. `psi` defaults
/// to `{e}`.
pub fn from_group(
    rows: &[Vec<usize>],
    unit: usize,
    psi: Option<&[usize]>,
) -> Result<MetagroupTable, MetagroupError> {
    let (n, product, _, _) = quasigroup_with_unit(rows, unit)?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if product[product[a * n + b] * n + c] != product[a * n + product[b * n + c]] {
                    return Err(MetagroupError::NotAssociative { a, b, c });
                }
            }
        }
    }
    verify_metagroup(rows, unit, psi.unwrap_or(&[unit]))
}

pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect()
}

/// Direct product table; element `(a, b)` has index `a * n2 + b`.
pub fn direct_product_table(t1: &[Vec<usize>], t2: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let (n1, n2) = (t1.len(), t2.len());
    (0..n1 * n2)
        .map(|x| {
            (0..n1 * n2)
                .map(|y| t1[x / n2][y / n2] * n2 + t2[x % n2][y % n2])
                .collect()
        })
        .collect()
}

/// Sign conventions for [`cayley_dickson_double`]. A `true` entry multiplies
/// the corresponding product rule by `ρ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DoublingSigns {
    pub low_high: bool,
    pub high_low: bool,
    pub high_high: bool,
}

impl DoublingSigns {
    pub fn from_flags(flags: [bool; 3]) -> Self {
        DoublingSigns {
            low_high: flags[0],
            high_low: flags[1],
            high_high: flags[2],
        }
    }
}

/// Cayley–Dickson doubling on basis elements. Element `(a, s)` has index
/// `a + s·n`; `ρ` plays the role of `-1`.
pub fn cayley_dickson_double(
    m: &MetagroupTable,
    rho: usize,
    signs: DoublingSigns,
) -> Result<MetagroupTable, MetagroupError> {
    let n = m.n;
    let e = m.unit;
    if rho >= n || !m.in_psi(rho) {
        return Err(MetagroupError::DoublingPrecondition(format!(
            "rho = {rho} is not in psi"
        )));
    }
    if rho == e {
        return Err(MetagroupError::DoublingPrecondition(
            "rho must differ from the unit".into(),
        ));
    }
    if m.mul(rho, rho) != e {
        return Err(MetagroupError::DoublingPrecondition(
            "rho must square to the unit".into(),
        ));
    }
    let conj = |g: usize| if g == e || g == rho { g } else { m.mul(rho, g) };
    let flip = |g: usize, on: bool| if on { m.mul(rho, g) } else { g };
    let mut rows = vec![vec![0usize; 2 * n]; 2 * n];
    for x in 0..2 * n {
        for y in 0..2 * n {
            let (a, s) = (x % n, x / n);
            let (b, t) = (y % n, y / n);
            let (g, u) = match (s, t) {
                (0, 0) => (m.mul(a, b), 0),
                (0, 1) => (flip(m.mul(b, a), signs.low_high), 1),
                (1, 0) => (flip(m.mul(a, conj(b)), signs.high_low), 1),
                _ => (flip(m.mul(rho, m.mul(conj(b), a)), signs.high_high), 0),
            };
            rows[x][y] = g + u * n;
        }
    }
    let doubled = verify_metagroup(&rows, e, &[e, rho])?;
    match &m.names {
        Some(names) => {
            let names = (0..2 * n)
                .map(|x| {
                    if x < n {
                        names[x].clone()
                    } else {
                        format!("{}·j", names[x - n])
                    }
                })
                .collect();
            doubled.with_names(names)
        }
        None => Ok(doubled),
    }
}

/// `{1, -1}` as a metagroup with `Ψ` the whole group; index 1 is `-1`.
pub fn signed_unit_metagroup() -> MetagroupTable {
    verify_metagroup(&cyclic_group_table(2), 0, &[0, 1])
        .expect("Z/2 is a group")
        .with_names(vec!["1".into(), "-1".into()])
        .expect("two names")
}

/// `levels` doublings of `{±1}`. Index `2k` is `e_k`, index `2k + 1` is
/// `-e_k`; levels 2, 3 and 4 give quaternion, octonion and sedenion units.
pub fn cayley_dickson_tower(
    levels: usize,
    signs: DoublingSigns,
) -> Result<MetagroupTable, MetagroupError> {
    let mut m = signed_unit_metagroup();
    for _ in 0..levels {
        m = cayley_dickson_double(&m, 1, signs)?;
    }
    let names = (0..m.n)
        .map(|i| {
            let k = i / 2;
            let base = if k == 0 {
                "1".to_string()
            } else {
                format!("e{k}")
            };
            if i % 2 == 1 {
                format!("-{base}")
            } else {
                base
            }
        })
        .collect();
    m.with_names(names)
}

pub fn octonion_metagroup() -> MetagroupTable {
    cayley_dickson_tower(3, DoublingSigns::default()).expect("octonion units form a metagroup")
}

pub fn sedenion_metagroup() -> MetagroupTable {
    cayley_dickson_tower(4, DoublingSigns::default()).expect("sedenion units form a metagroup")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_is_a_metagroup_with_trivial_associator() {
        let m = verify_metagroup(&cyclic_group_table(2), 0, &[0]).unwrap();
        assert_eq!(m.len(), 2);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    assert_eq!(m.associator(a, b, c), 0);
                }
            }
        }
    }

    #[test]
    fn repeated_row_entry_is_reported() {
        let err = verify_metagroup(&[vec![0, 1], vec![1, 1]], 0, &[0]).unwrap_err();
        assert_eq!(
            err,
            MetagroupError::AxiomViolation(Axiom::RowNotPermutation {
                row: 1,
                repeated: 1
            })
        );
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(
            verify_metagroup(&[vec![0, 1], vec![1]], 0, &[0]),
            Err(MetagroupError::MalformedTable(_))
        ));
        assert!(matches!(
            verify_metagroup(&[vec![0, 2], vec![1, 0]], 0, &[0]),
            Err(MetagroupError::MalformedTable(_))
        ));
        assert!(matches!(
            verify_metagroup(&[], 0, &[0]),
            Err(MetagroupError::MalformedTable(_))
        ));
    }

    #[test]
    fn bad_unit_and_psi() {
        let z3 = cyclic_group_table(3);
        assert!(matches!(
            verify_metagroup(&z3, 1, &[1]),
            Err(MetagroupError::AxiomViolation(Axiom::Unit { .. }))
        ));
        assert!(matches!(
            verify_metagroup(&z3, 0, &[1]),
            Err(MetagroupError::AxiomViolation(Axiom::PsiMissingUnit))
        ));
        assert!(matches!(
            verify_metagroup(&z3, 0, &[0, 1]),
            Err(MetagroupError::AxiomViolation(Axiom::PsiNotClosed { .. }))
        ));
    }

    #[test]
    fn psi_must_be_central() {
        // S3 with psi generated by a transposition.
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        assert!(matches!(
            verify_metagroup(&rows, 0, &[0, 1]),
            Err(MetagroupError::AxiomViolation(Axiom::PsiNotCentral { .. }))
        ));
        assert_eq!(center_and_psi(&rows, 0).unwrap(), vec![0]);
    }

    #[test]
    fn groups_and_non_groups() {
        assert_eq!(
            from_group(&cyclic_group_table(2), 0, None).unwrap().len(),
            2
        );
        let klein = direct_product_table(&cyclic_group_table(2), &cyclic_group_table(2));
        assert_eq!(from_group(&klein, 0, None).unwrap().len(), 4);
        let oct = octonion_metagroup();
        assert!(matches!(
            from_group(&oct.product_rows(), 0, None),
            Err(MetagroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn center_of_abelian_groups_is_everything() {
        assert_eq!(
            center_and_psi(&cyclic_group_table(3), 0).unwrap(),
            vec![0, 1, 2]
        );
        let klein = direct_product_table(&cyclic_group_table(2), &cyclic_group_table(2));
        assert_eq!(center_and_psi(&klein, 0).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn doubling_rejects_trivial_rho() {
        let m = signed_unit_metagroup();
        assert!(matches!(
            cayley_dickson_double(&m, 0, DoublingSigns::default()),
            Err(MetagroupError::DoublingPrecondition(_))
        ));
    }

    #[test]
    fn quaternion_units() {
        let h = cayley_dickson_tower(2, DoublingSigns::default()).unwrap();
        assert_eq!(h.len(), 8);
        assert!(h.is_associative());
        // i*j = k, j*i = -k with i = e1, j = e2, k = e3
        assert_eq!(h.name(h.mul(2, 4)), "e3");
        assert_eq!(h.name(h.mul(4, 2)), "-e3");
        assert_eq!(h.name(h.mul(2, 2)), "-1");
    }
}
