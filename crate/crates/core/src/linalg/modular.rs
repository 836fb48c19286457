//! Reduced row echelon form over `ℚ` by elimination modulo 31-bit primes,
//! Chinese remaindering and rational reconstruction. The answer is accepted
//! only after an exact check that every input row lies in its span.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::FieldElement;
use super::sparse::SparseVec;

/// Gives up after this many primes; the caller then eliminates exactly.
const MAX_PRIMES: usize = 512;

/// Arithmetic modulo a prime below `2^31` with Barrett reduction, so that no
/// division happens in the elimination loops.
#[derive(Clone, Copy)]
struct Modulus {
    p: u64,
    // ⌊2^62 / p⌋
    m: u64,
}

impl Modulus {
    fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 31);
        Modulus {
            p,
            m: ((1u128 << 62) / p as u128) as u64,
        }
    }

    /// `x mod p` for `x < p²`.
    fn reduce(self, x: u64) -> u64 {
        let q = ((x as u128 * self.m as u128) >> 62) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    fn pow(self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// Primes just below `2^31`, in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    (3..(1u64 << 31))
        .rev()
        .step_by(2)
        .filter(|&c| super::field::is_prime(c))
}

fn reduce_entry(v: &FieldElement, md: Modulus, pb: &BigInt) -> Option<u64> {
    let (num, den) = match v {
        FieldElement::SmallRational { num, den } => (
            (*num as i128).rem_euclid(md.p as i128) as u64,
            (*den as i128).rem_euclid(md.p as i128) as u64,
        ),
        _ => {
            let q = rational(v);
            (
                q.numer().mod_floor(pb).to_u64().expect("residue fits"),
                q.denom().mod_floor(pb).to_u64().expect("residue fits"),
            )
        }
    };
    if den == 0 {
        return None;
    }
    Some(md.mul(num, md.inv(den)))
}

type ModRow = Vec<(usize, u64)>;

/// The rows modulo `p`, or `None` when some denominator vanishes.
fn rows_mod(rows: &[SparseVec], md: Modulus) -> Option<Vec<ModRow>> {
    let pb = BigInt::from(md.p);
    rows.iter()
        .map(|row| {
            let mut r = Vec::with_capacity(row.len());
            for (c, v) in row {
                let x = reduce_entry(v, md, &pb)?;
                if x != 0 {
                    r.push((*c, x));
                }
            }
            Some(r)
        })
        .collect()
}

/// Rows of a random sparse sketch `S·A` with `width` rows: every input row
/// is added, with a random nonzero coefficient, into `SKETCH_FANOUT` random
/// buckets. The sketch spans a subspace of the row space, and with high
/// probability all of it; the exact span check catches the rest.
const SKETCH_FANOUT: usize = 8;

fn sketch(rows: &[ModRow], ncols: usize, width: usize, md: Modulus) -> Vec<ModRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(md.p);
    let mut dense = vec![vec![0u64; ncols]; width];
    for row in rows {
        for _ in 0..SKETCH_FANOUT {
            let bucket = &mut dense[rng.gen_range(0..width)];
            let f = rng.gen_range(1..md.p);
            for &(c, v) in row {
                bucket[c] = md.reduce(bucket[c] + md.mul(f, v));
            }
        }
    }
    dense
        .into_iter()
        .map(|d| d.into_iter().enumerate().filter(|&(_, v)| v != 0).collect())
        .collect()
}

/// `w −= f·row` on a dense scratch row, charging `row.len()` to `work`.
fn eliminate(w: &mut [u64], row: &ModRow, f: u64, md: Modulus, work: &mut u64) {
    *work += row.len() as u64;
    let nf = md.p - f;
    for &(c, v) in row {
        w[c] = md.reduce(w[c] + md.mul(nf, v));
    }
}

/// RREF modulo `p` as a map from pivot column to row, or `None` once the
/// forward pass has spent more than `budget` multiplications.
fn rref_mod(
    rows: &[ModRow],
    ncols: usize,
    md: Modulus,
    budget: u64,
) -> Option<BTreeMap<usize, ModRow>> {
    let mut work = 0u64;
    let mut pivot_of: Vec<Option<usize>> = vec![None; ncols];
    let mut ech: Vec<ModRow> = Vec::new();
    let mut w = vec![0u64; ncols];
    for row in rows {
        let Some(start) = row.first().map(|e| e.0) else {
            continue;
        };
        for &(c, v) in row {
            w[c] = v;
        }
        let mut lead = None;
        for c in start..ncols {
            if w[c] == 0 {
                continue;
            }
            match pivot_of[c] {
                Some(k) => {
                    let f = w[c];
                    eliminate(&mut w, &ech[k], f, md, &mut work);
                }
                None if lead.is_none() => lead = Some(c),
                None => {}
            }
        }
        if work > budget {
            return None;
        }
        let Some(lead) = lead else { continue };
        let inv = md.inv(w[lead]);
        let mut r = ModRow::new();
        for (c, x) in w.iter_mut().enumerate().skip(lead) {
            if *x != 0 {
                r.push((c, md.mul(*x, inv)));
                *x = 0;
            }
        }
        pivot_of[lead] = Some(ech.len());
        ech.push(r);
    }
    // back substitution, from the last pivot column down
    let mut order: Vec<usize> = (0..ech.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(ech[k][0].0));
    let mut done: BTreeMap<usize, ModRow> = BTreeMap::new();
    for k in order {
        let lead = ech[k][0].0;
        for &(c, v) in &ech[k] {
            w[c] = v;
        }
        for c in lead + 1..ncols {
            if w[c] != 0 {
                if let Some(r) = done.get(&c) {
                    let f = w[c];
                    eliminate(&mut w, r, f, md, &mut work);
                }
            }
        }
        let mut r = ModRow::new();
        for (c, x) in w.iter_mut().enumerate().skip(lead) {
            if *x != 0 {
                r.push((c, *x));
                *x = 0;
            }
        }
        done.insert(lead, r);
    }
    Some(done)
}

fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Entries off the pivot columns, keyed by `(pivot column, column)`.
type Entries = BTreeMap<(usize, usize), BigInt>;

fn entries_of(rref: &BTreeMap<usize, ModRow>) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    for (&piv, row) in rref {
        for &(c, v) in &row[1..] {
            out.insert((piv, c), v);
        }
    }
    out
}

fn reconstruct(pivots: &[usize], acc: &Entries, modulus: &BigInt) -> Option<Vec<SparseVec>> {
    let mut rows: BTreeMap<usize, SparseVec> = pivots
        .iter()
        .map(|&p| {
            (
                p,
                vec![(p, FieldElement::from_rational(BigRational::one()))],
            )
        })
        .collect();
    for (&(piv, c), v) in acc {
        let q = rational_reconstruct(v, modulus)?;
        if !q.is_zero() {
            rows.get_mut(&piv)
                .expect("pivot row")
                .push((c, FieldElement::from_rational(q)));
        }
    }
    Some(rows.into_values().collect())
}

/// Below this many matrix entries exact elimination is faster.
pub(crate) const MODULAR_THRESHOLD: usize = 20_000;

fn rational(v: &FieldElement) -> BigRational {
    v.to_rational().expect("rational entries")
}

/// Whether every row lies in the span of `rref`, checked exactly: a row `a`
/// is in the span iff `a_f = Σ_p a_p R[p][f]` for every free column `f`.
/// Denominators are cleared so that only integer products are formed.
fn rows_in_span(rref: &[SparseVec], rows: &[SparseVec], ncols: usize) -> bool {
    let mut pivot_of = vec![None; ncols];
    for (k, r) in rref.iter().enumerate() {
        pivot_of[r[0].0] = Some(k);
    }
    let mut scale = vec![BigInt::one(); ncols];
    for r in rref {
        for (c, v) in &r[1..] {
            scale[*c] = scale[*c].lcm(rational(v).denom());
        }
    }
    let integral: Vec<Vec<(usize, BigInt)>> = rref
        .iter()
        .map(|r| {
            r[1..]
                .iter()
                .map(|(c, v)| {
                    let q = rational(v);
                    (*c, q.numer() * (&scale[*c] / q.denom()))
                })
                .collect()
        })
        .collect();
    let mut acc = vec![BigInt::zero(); ncols];
    let mut touched = Vec::new();
    for a in rows {
        let l = a
            .iter()
            .fold(BigInt::one(), |l, (_, v)| l.lcm(rational(v).denom()));
        for (c, v) in a {
            let q = rational(v);
            let ai = q.numer() * (&l / q.denom());
            match pivot_of[*c] {
                Some(k) => {
                    for (f, x) in &integral[k] {
                        acc[*f] += &ai * x;
                        touched.push(*f);
                    }
                }
                None => {
                    acc[*c] -= ai * &scale[*c];
                    touched.push(*c);
                }
            }
        }
        let ok = touched.iter().all(|&f| acc[f].is_zero());
        for f in touched.drain(..) {
            acc[f] = BigInt::zero();
        }
        if !ok {
            return false;
        }
    }
    true
}

/// The RREF of the span of `rows`, or `None` if the modular method did not
/// converge to a verified answer.
pub(crate) fn rational_rref(rows: &[SparseVec], ncols: usize) -> Option<Vec<SparseVec>> {
    if rows.is_empty() {
        return Some(Vec::new());
    }
    let mut pivots: Vec<usize> = Vec::new();
    let mut acc: Entries = BTreeMap::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<SparseVec>> = None;
    // A tall system is sketched down to a little more than the largest
    // possible rank when plain elimination of the first prime costs more than
    // eliminating a dense sketch would.
    let width = ncols.min(rows.len()) + 16;
    let tall = rows.len() > 2 * width;
    let sketch_cost = (width * ncols) as u64 * ncols.min(width) as u64 / 2;
    let mut use_sketch = if tall { None } else { Some(false) };
    for p in primes().take(MAX_PRIMES) {
        let md = Modulus::new(p);
        let Some(reduced) = rows_mod(rows, md) else {
            continue;
        };
        let plain = match use_sketch {
            None => rref_mod(&reduced, ncols, md, sketch_cost),
            Some(false) => rref_mod(&reduced, ncols, md, u64::MAX),
            Some(true) => None,
        };
        use_sketch.get_or_insert(plain.is_none());
        let rref = match plain {
            Some(rref) => rref,
            None => rref_mod(&sketch(&reduced, ncols, width, md), ncols, md, u64::MAX)
                .expect("unlimited budget"),
        };
        let piv: Vec<usize> = rref.keys().copied().collect();
        let fresh = entries_of(&rref);
        // a lucky prime has maximal rank and the earliest pivots among equal ranks
        let better = piv.len() > pivots.len() || (piv.len() == pivots.len() && piv < pivots);
        if modulus.is_one() || better {
            pivots = piv;
            acc = fresh
                .into_iter()
                .map(|(k, v)| (k, BigInt::from(v)))
                .collect();
            modulus = BigInt::from(p);
            previous = None;
        } else if piv != pivots {
            continue;
        } else {
            let pb = BigInt::from(p);
            let m_inv = BigInt::from(md.inv(modulus.mod_floor(&pb).to_u64().expect("fits")));
            let keys: Vec<(usize, usize)> = acc.keys().chain(fresh.keys()).copied().collect();
            for k in keys {
                let old = acc.get(&k).cloned().unwrap_or_default();
                let new = BigInt::from(fresh.get(&k).copied().unwrap_or(0));
                let t = ((&new - &old) * &m_inv).mod_floor(&pb);
                acc.insert(k, old + &modulus * t);
            }
            modulus *= &pb;
        }
        let Some(candidate) = reconstruct(&pivots, &acc, &modulus) else {
            continue;
        };
        if previous.as_ref() == Some(&candidate) {
            if rows_in_span(&candidate, rows, ncols) {
                return Some(candidate);
            }
        }
        previous = Some(candidate);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sparse::from_dense;
    use crate::linalg::{Echelon, Field};

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        for (n, d) in [(3, 7), (-22, 5), (0, 1), (1, 1), (-1, 12345)] {
            let q = BigRational::new(BigInt::from(n), BigInt::from(d));
            let a = (q.numer() * BigInt::from(inv_big(q.denom(), &m))).mod_floor(&m);
            assert_eq!(rational_reconstruct(&a, &m), Some(q));
        }
    }

    fn inv_big(d: &BigInt, m: &BigInt) -> BigInt {
        let e = d.extended_gcd(m);
        e.x.mod_floor(m)
    }

    #[test]
    fn span_check_rejects_rows_outside() {
        let f = Field::Rational;
        let rref = vec![from_dense(&[f.one(), f.zero(), f.from_ratio(1, 2)])];
        let inside = from_dense(&[f.from_i64(4), f.zero(), f.from_i64(2)]);
        let outside = from_dense(&[f.from_i64(4), f.zero(), f.from_i64(3)]);
        let free = from_dense(&[f.zero(), f.one(), f.zero()]);
        assert!(rows_in_span(&rref, &[inside.clone()], 3));
        assert!(!rows_in_span(&rref, &[inside, outside], 3));
        assert!(!rows_in_span(&rref, &[free], 3));
    }

    #[test]
    fn matches_exact_elimination() {
        let f = Field::Rational;
        let rows: Vec<SparseVec> = [
            vec![2, 4, -2, 1, 0],
            vec![1, 2, -1, 3, 7],
            vec![3, 6, -3, 4, 7],
            vec![0, 0, 5, -1, 2],
        ]
        .iter()
        .map(|r| from_dense(&r.iter().map(|&x| f.from_ratio(x, 3)).collect::<Vec<_>>()))
        .collect();
        let mut ech = Echelon::new(f, 5);
        for r in &rows {
            ech.insert(r.clone());
        }
        assert_eq!(rational_rref(&rows, 5).unwrap(), ech.into_rref());
    }
}
