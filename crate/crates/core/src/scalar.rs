//! Exact scalar fields.
//!
//! Every computation in the crate is generic over [`Field`].  Two families of
//! implementations are provided: [`Rational`] (arbitrary precision, with an
//! inline fast path for fractions that fit in machine words) and [`Fp`], the
//! prime field with a compile-time modulus.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Which ground field a presentation lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Parses `Q`, `QQ`, `rationals`, `F_7`, `F7`, `GF(7)`.
    pub fn parse(s: &str) -> Result<FieldSpec, ScalarError> {
        let t = s.trim();
        match t {
            "Q" | "QQ" | "q" | "rationals" | "Rationals" => return Ok(FieldSpec::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| ScalarError::BadField(s.to_string()))?;
        if !is_prime(p) {
            return Err(ScalarError::BadField(format!("{s} (modulus {p} is not prime)")));
        }
        Ok(FieldSpec::PrimeField(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("unsupported or malformed field {0:?}")]
    BadField(String),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact commutative field.
///
/// Elements are kept in a canonical form, so structural equality and hashing
/// agree with field equality.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn spec() -> FieldSpec;
    fn from_i64(v: i64) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn parse_scalar(s: &str) -> Result<Self, ScalarError>;
    /// Number of elements when finite.
    fn order() -> Option<u64>;
    /// The `i`-th element in a fixed enumeration (finite fields only).
    fn nth_element(i: u64) -> Self;
    /// A pseudo-random element; over infinite fields an integer in `[-range, range]`.
    fn sample<R: Rng + ?Sized>(rng: &mut R, range: i64) -> Self;

    fn characteristic() -> u64 {
        Self::spec().characteristic()
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// An exact rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` are stored inline;
/// larger values spill into a [`BigRational`].  The representation is
/// canonical: a value is `Small` whenever it fits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_big(r: BigRational) -> Rational {
        let (n, d) = (r.numer(), r.denom());
        if let (Some(n), Some(d)) = (n.to_i64(), d.to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Rational::Small(n, d);
            }
        }
        Rational::Big(r)
    }

    fn from_i128(num: i128, den: i128) -> Rational {
        let g = num.gcd(&den);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rational::Small(n as i64, d as i64)
        } else {
            Rational::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => b.clone(),
        }
    }

    pub fn numer_string(&self) -> String {
        match self {
            Rational::Small(n, _) => n.to_string(),
            Rational::Big(b) => b.numer().to_string(),
        }
    }

    pub fn denom_string(&self) -> String {
        match self {
            Rational::Small(_, d) => d.to_string(),
            Rational::Big(b) => b.denom().to_string(),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::Small(1, 1)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        &self + &rhs
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(0, _), _) => rhs.clone(),
            (_, Rational::Small(0, _)) => self.clone(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if b == d {
                    Rational::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        &self + &(-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::zero(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        let inv = rhs.inverse().expect("division by zero");
        &self * &inv
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            // Small numerators are never i64::MIN, so negation cannot overflow.
            Rational::Small(n, d) => Rational::Small(-n, d),
            Rational::Big(b) => Rational::from_big(-b),
        }
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = &*self + &rhs;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self = &*self + &(-rhs);
    }
}

impl MulAssign for Rational {
    fn mul_assign(&mut self, rhs: Rational) {
        *self = &*self * &rhs;
    }
}

impl FromStr for Rational {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let bad = || ScalarError::BadScalar(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl Field for Rational {
    fn spec() -> FieldSpec {
        FieldSpec::Rationals
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_i128(v as i128, 1)
    }
    fn inverse(&self) -> Option<Self> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Rational::from_i128(*d as i128, *n as i128)),
            Rational::Big(b) => Some(Rational::from_big(b.recip())),
        }
    }
    fn parse_scalar(s: &str) -> Result<Self, ScalarError> {
        s.parse()
    }
    fn order() -> Option<u64> {
        None
    }
    fn nth_element(i: u64) -> Self {
        // A fixed enumeration 0, 1, -1, 2, -2, ... used only for tests.
        let k = i.div_ceil(2) as i64;
        if i % 2 == 1 {
            Self::from_i64(k)
        } else {
            Self::from_i64(-k)
        }
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R, range: i64) -> Self {
        Self::from_i64(rng.gen_range(-range..=range))
    }
}

impl Rational {
    pub fn abs(&self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::Small(n.abs(), *d),
            Rational::Big(b) => Rational::from_big(b.abs()),
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// The prime field with `P` elements.  `P` must be prime; this is checked the
/// first time [`Fp::new`] runs in debug builds and by [`FieldSpec::parse`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        debug_assert!(is_prime(P), "modulus {P} is not prime");
        Fp(v.rem_euclid(P as i64) as u64)
    }
    pub fn residue(&self) -> u64 {
        self.0
    }
    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Field for Fp<P> {
    fn spec() -> FieldSpec {
        FieldSpec::PrimeField(P)
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn parse_scalar(s: &str) -> Result<Self, ScalarError> {
        let v: i128 = s
            .trim()
            .parse()
            .map_err(|_| ScalarError::BadScalar(s.to_string()))?;
        Ok(Fp(v.rem_euclid(P as i128) as u64))
    }
    fn order() -> Option<u64> {
        Some(P)
    }
    fn nth_element(i: u64) -> Self {
        Fp(i % P)
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R, _range: i64) -> Self {
        Fp(rng.gen_range(0..P))
    }
}

/// Smallest `n ≥ 1` with `q^n = 1`, searching up to `limit`; `None` if no such
/// `n` was found (over ℚ this means infinite order unless `q = ±1`).
pub fn multiplicative_order<F: Field>(q: &F, limit: u64) -> Option<u64> {
    if q.is_zero() {
        return None;
    }
    // The only roots of unity in the rationals are 1 and -1.
    if F::characteristic() == 0 {
        let square = q.clone() * q.clone();
        return match (q.is_one(), square.is_one()) {
            (true, _) => Some(1),
            (false, true) => Some(2),
            _ => None,
        };
    }
    let mut acc = q.clone();
    for n in 1..=limit {
        if acc.is_one() {
            return Some(n);
        }
        acc *= q.clone();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_forms() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::new(0, -5), Rational::zero());
        assert_eq!(Rational::new(3, 6).to_string(), "1/2");
        assert_eq!("6/3".parse::<Rational>().unwrap(), Rational::from_i64(2));
    }

    #[test]
    fn rational_overflow_spills_to_big() {
        let big = Rational::from_i64(i64::MAX);
        let sq = big.clone() * big.clone();
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq / big.clone();
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(..)));
    }

    #[test]
    fn prime_field_inverse() {
        type F = Fp<7>;
        for v in 1..7 {
            let x = F::new(v);
            assert_eq!(x * x.inverse().unwrap(), F::one());
        }
        assert_eq!(F::parse_scalar("-1").unwrap(), F::new(6));
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("F_7").unwrap(), FieldSpec::PrimeField(7));
        assert_eq!(FieldSpec::parse("GF(11)").unwrap(), FieldSpec::PrimeField(11));
        assert!(FieldSpec::parse("F_8").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(&Rational::from_i64(-1), 10), Some(2));
        assert_eq!(multiplicative_order(&Rational::from_i64(2), 50), None);
        assert_eq!(multiplicative_order(&Fp::<7>::new(2), 10), Some(3));
    }
}
