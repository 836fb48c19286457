//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LinalgError;

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds `GF(p)`, rejecting composite or tiny moduli.
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn zero(self) -> FieldElement {
        match self {
            Field::Rational => FieldElement::SmallRational { num: 0, den: 1 },
            Field::Prime(p) => FieldElement::Residue {
                value: 0,
                modulus: p,
            },
        }
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElement {
        match self {
            Field::Rational => small_or_big(n as i128, 1),
            Field::Prime(p) => FieldElement::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> FieldElement {
        self.from_i64(num) / self.from_i64(den)
    }

    /// Parses `"3"`, `"-2/5"` and similar. Over `GF(p)` a fraction is
    /// interpreted as a quotient of residues.
    pub fn parse(self, text: &str) -> Result<FieldElement, LinalgError> {
        let text = text.trim();
        let bad = || LinalgError::BadScalar(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rational => Ok(FieldElement::from_rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let reduce = |n: &BigInt| -> u64 {
                    let m = BigInt::from(p);
                    let r = ((n % &m) + &m) % &m;
                    r.try_into().expect("residue fits in u64")
                };
                let (n, d) = (reduce(&num), reduce(&den));
                if d == 0 {
                    return Err(bad());
                }
                let n = FieldElement::Residue {
                    value: n,
                    modulus: p,
                };
                let d = FieldElement::Residue {
                    value: d,
                    modulus: p,
                };
                Ok(n / d)
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        match s.strip_prefix("gf:") {
            Some(p) => {
                let p: u64 = p
                    .trim()
                    .parse()
                    .map_err(|_| LinalgError::BadField(s.to_string()))?;
                Field::prime(p)
            }
            None => Err(LinalgError::BadField(s.to_string())),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A scalar in canonical form: reduced fraction with positive denominator,
/// or a residue in `0..p`. Rationals whose numerator and denominator fit in
/// an `i64` (excluding `i64::MIN`) are always stored as `SmallRational`, so
/// the derived equality and hashing stay canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    SmallRational { num: i64, den: i64 },
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

fn fits(x: i128) -> bool {
    x > i64::MIN as i128 && x <= i64::MAX as i128
}

/// `num / den` for `den ≠ 0`, reduced.
fn small_or_big(num: i128, den: i128) -> FieldElement {
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let g = if den == 1 { 1 } else { num.gcd(&den) };
    let (num, den) = if g > 1 {
        (num / g, den / g)
    } else {
        (num, den)
    };
    if fits(num) && fits(den) {
        FieldElement::SmallRational {
            num: num as i64,
            den: den as i64,
        }
    } else {
        FieldElement::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

fn big(num: i64, den: i64) -> BigRational {
    BigRational::new_raw(BigInt::from(num), BigInt::from(den))
}

impl FieldElement {
    /// The canonical element for a rational number.
    pub fn from_rational(r: BigRational) -> FieldElement {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => FieldElement::SmallRational { num: n, den: d },
            _ => FieldElement::Rational(r),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            FieldElement::SmallRational { .. } | FieldElement::Rational(_) => Field::Rational,
            FieldElement::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::SmallRational { num, .. } => *num == 0,
            FieldElement::Rational(_) => false,
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::SmallRational { num, den } => *num == 1 && *den == 1,
            FieldElement::Rational(_) => false,
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; panics on zero like integer division does.
    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            FieldElement::SmallRational { num, den } => small_or_big(*den as i128, *num as i128),
            FieldElement::Rational(r) => FieldElement::from_rational(r.recip()),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// Integer representative in `0..p`, for residues only.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElement::Residue { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// The value as a rational number, for rationals only.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            FieldElement::SmallRational { num, den } => Some(big(*num, *den)),
            FieldElement::Rational(r) => Some(r.clone()),
            FieldElement::Residue { .. } => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::SmallRational { num, .. } => *num < 0,
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Residue { .. } => false,
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

fn mismatch(a: &FieldElement, b: &FieldElement) -> ! {
    panic!(
        "mixed fields in arithmetic: {} and {}",
        a.field(),
        b.field()
    )
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::SmallRational { num, den: 1 } => write!(f, "{num}"),
            FieldElement::SmallRational { num, den } => write!(f, "{num}/{den}"),
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Rational arithmetic on two operands of which at least one is big.
fn big_op(
    a: &FieldElement,
    b: &FieldElement,
    op: fn(&BigRational, &BigRational) -> BigRational,
) -> FieldElement {
    match (a.to_rational(), b.to_rational()) {
        (Some(x), Some(y)) => FieldElement::from_rational(op(&x, &y)),
        _ => mismatch(a, b),
    }
}

fn residues(a: &FieldElement, b: &FieldElement) -> (u128, u128, u64) {
    match (a, b) {
        (
            FieldElement::Residue {
                value: x,
                modulus: p,
            },
            FieldElement::Residue {
                value: y,
                modulus: q,
            },
        ) if p == q => (*x as u128, *y as u128, *p),
        _ => mismatch(a, b),
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (self, rhs) {
            (SmallRational { num: a, den: 1 }, SmallRational { num: b, den: 1 }) => {
                small_or_big(*a as i128 + *b as i128, 1)
            }
            (SmallRational { num: a, den: c }, SmallRational { num: b, den: d }) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                small_or_big(a * d + b * c, c * d)
            }
            (Residue { .. }, _) => {
                let (x, y, p) = residues(self, rhs);
                Residue {
                    value: ((x + y) % p as u128) as u64,
                    modulus: p,
                }
            }
            _ => big_op(self, rhs, |x, y| x + y),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (self, rhs) {
            (SmallRational { num: a, den: 1 }, SmallRational { num: b, den: 1 }) => {
                small_or_big(*a as i128 - *b as i128, 1)
            }
            (SmallRational { num: a, den: c }, SmallRational { num: b, den: d }) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                small_or_big(a * d - b * c, c * d)
            }
            (Residue { .. }, _) => {
                let (x, y, p) = residues(self, rhs);
                Residue {
                    value: ((x + p as u128 - y) % p as u128) as u64,
                    modulus: p,
                }
            }
            _ => big_op(self, rhs, |x, y| x - y),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (self, rhs) {
            (SmallRational { num: a, den: c }, SmallRational { num: b, den: d }) => {
                small_or_big(*a as i128 * *b as i128, *c as i128 * *d as i128)
            }
            (Residue { .. }, _) => {
                let (x, y, p) = residues(self, rhs);
                Residue {
                    value: ((x * y) % p as u128) as u64,
                    modulus: p,
                }
            }
            _ => big_op(self, rhs, |x, y| x * y),
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn div(self, rhs: &FieldElement) -> FieldElement {
        self * &rhs.inv()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::SmallRational { num, den } => FieldElement::SmallRational {
                num: -num,
                den: *den,
            },
            FieldElement::Rational(a) => FieldElement::from_rational(-a),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_are_canonical() {
        let q = Field::Rational;
        assert_eq!(q.parse("6/-4").unwrap().to_string(), "-3/2");
        assert_eq!(q.parse(" 7 ").unwrap().to_string(), "7");
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse("-1").unwrap(), f5.from_i64(4));
        assert_eq!(f5.parse("1/2").unwrap(), f5.from_i64(3));
        assert!(f5.parse("1/5").is_err());
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn field_spec_strings() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("gf:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!(matches!(
            "gf:4".parse::<Field>(),
            Err(LinalgError::NotPrime(4))
        ));
        assert!("r".parse::<Field>().is_err());
        assert_eq!(Field::Prime(3).to_string(), "gf:3");
    }

    #[test]
    fn small_and_big_rationals_share_one_canonical_form() {
        let q = Field::Rational;
        let huge = q.from_i64(i64::MAX);
        let sq = &huge * &huge;
        assert!(matches!(sq, FieldElement::Rational(_)));
        let back = &sq / &huge;
        assert_eq!(back, huge);
        assert!(matches!(back, FieldElement::SmallRational { .. }));
        assert_eq!(-&q.from_i64(i64::MIN + 1), q.from_i64(i64::MAX));
        assert!(matches!(q.from_i64(i64::MIN), FieldElement::Rational(_)));
        assert_eq!(q.from_i64(i64::MIN) + q.one(), q.from_i64(i64::MIN + 1));
        assert_eq!(q.parse("4/6").unwrap(), q.from_ratio(2, 3));
        assert_eq!(q.from_ratio(3, -6).to_string(), "-1/2");
        let big = q.parse("123456789012345678901234567890/7").unwrap();
        assert_eq!(&(&big - &big) + &q.one(), q.one());
    }

    #[test]
    fn residue_inverse() {
        let f = Field::Prime(13);
        for n in 1..13 {
            let a = f.from_i64(n);
            assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    #[should_panic(expected = "mixed fields")]
    fn mixed_fields_panic() {
        let _ = Field::Rational.one() + Field::Prime(2).one();
    }
}
