//! Exact scalars over ℤ and prime fields, univariate polynomials, and the
//! small root-finding routines the solvers are built on.
//!
//! Field elements are always kept in canonical form `[0, p)`. Integer
//! arithmetic is arbitrary precision, so nothing here can overflow.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

/// Largest prime accepted by the exhaustive field routines.
pub const EXHAUSTIVE_PRIME_LIMIT: u64 = 101;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {prime} exceeds the exhaustive-search limit {limit}")]
    UnsupportedPrime { prime: u64, limit: u64 },
    #[error("the zero polynomial has every element as a root")]
    ZeroPolynomial,
    #[error("operation needs a prime field, got {0}")]
    NotAField(Ring),
    #[error("operation needs the integers, got {0}")]
    NotIntegers(Ring),
    #[error("integer root search needs a monic polynomial")]
    NotMonic,
    #[error("operands live in different rings ({0} vs {1})")]
    RingMismatch(Ring, Ring),
    #[error("index {0} is outside the supported range")]
    InvalidIndex(u64),
}

/// A prime modulus, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Deterministic trial division; moduli in scope are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The ambient ring of a scalar, polynomial or matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ring {
    Integers,
    PrimeField(Prime),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Self, ArithError> {
        Prime::new(p).map(Ring::PrimeField)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Ring::Integers => None,
            Ring::PrimeField(p) => Some(p.get()),
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, Ring::PrimeField(_))
    }

    /// Modulus of a field small enough for exhaustive scans.
    pub fn exhaustive_modulus(self) -> Result<u64, ArithError> {
        let p = self.modulus().ok_or(ArithError::NotAField(self))?;
        if p > EXHAUSTIVE_PRIME_LIMIT {
            return Err(ArithError::UnsupportedPrime {
                prime: p,
                limit: EXHAUSTIVE_PRIME_LIMIT,
            });
        }
        Ok(p)
    }

    pub fn reduce(self, value: BigInt) -> BigInt {
        match self {
            Ring::Integers => value,
            Ring::PrimeField(p) => value.mod_floor(&BigInt::from(p.get())),
        }
    }

    pub fn zero(self) -> ExactScalar {
        ExactScalar::from_raw(self, BigInt::zero())
    }

    pub fn one(self) -> ExactScalar {
        ExactScalar::from_raw(self, BigInt::one())
    }

    pub fn scalar(self, value: impl Into<BigInt>) -> ExactScalar {
        ExactScalar::new(self, value.into())
    }

    /// All elements of a small prime field in canonical order.
    pub fn elements(self) -> Result<impl Iterator<Item = ExactScalar>, ArithError> {
        let p = self.exhaustive_modulus()?;
        Ok((0..p).map(move |v| ExactScalar::from_raw(self, BigInt::from(v))))
    }

    pub fn check_same(self, other: Ring) -> Result<(), ArithError> {
        if self == other {
            Ok(())
        } else {
            Err(ArithError::RingMismatch(self, other))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::PrimeField(p) => write!(f, "F_{}", p.get()),
        }
    }
}

/// Element of ℤ or 𝔽ₚ, tagged with its ring.
///
/// Binary operators panic when the two operands live in different rings;
/// callers that accept user input check rings up front.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    ring: Ring,
    value: BigInt,
}

impl ExactScalar {
    pub fn new(ring: Ring, value: BigInt) -> Self {
        ExactScalar {
            ring,
            value: ring.reduce(value),
        }
    }

    // Caller guarantees `value` is already canonical.
    fn from_raw(ring: Ring, value: BigInt) -> Self {
        ExactScalar { ring, value }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn into_value(self) -> BigInt {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    pub fn pow(&self, mut exp: u64) -> ExactScalar {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse: units ±1 over ℤ, any nonzero element of 𝔽ₚ.
    pub fn inverse(&self) -> Option<ExactScalar> {
        match self.ring {
            Ring::Integers => {
                if self.value.is_one() || self.value == -BigInt::one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Ring::PrimeField(p) => {
                if self.value.is_zero() {
                    return None;
                }
                let m = BigInt::from(p.get());
                // Fermat: x^(p-2) = x^-1
                let inv = self.value.modpow(&(&m - 2u32), &m);
                Some(ExactScalar::from_raw(self.ring, inv))
            }
        }
    }

    /// Exact division. Over ℤ this succeeds only when the quotient is an
    /// integer; over 𝔽ₚ whenever the divisor is nonzero.
    pub fn checked_div(&self, rhs: &ExactScalar) -> Option<ExactScalar> {
        assert_eq!(self.ring, rhs.ring, "ring mismatch in division");
        match self.ring {
            Ring::Integers => {
                if rhs.value.is_zero() {
                    return None;
                }
                let (q, r) = self.value.div_rem(&rhs.value);
                r.is_zero().then(|| ExactScalar::from_raw(self.ring, q))
            }
            Ring::PrimeField(_) => rhs.inverse().map(|inv| self * &inv),
        }
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring
            .cmp(&other.ring)
            .then_with(|| self.value.cmp(&other.value))
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        crate::wire::big_to_number(&self.value).serialize(serializer)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                assert_eq!(self.ring, rhs.ring, "ring mismatch in scalar arithmetic");
                ExactScalar::new(self.ring, &self.value $op &rhs.value)
            }
        }

        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $trait<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(self.ring, -&self.value)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

/// Polynomial in one variable, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    ring: Ring,
    coefficients: Vec<ExactScalar>,
}

impl UnivariatePolynomial {
    pub fn new(ring: Ring, coefficients: Vec<ExactScalar>) -> Result<Self, ArithError> {
        if let Some(c) = coefficients.iter().find(|c| c.ring != ring) {
            return Err(ArithError::RingMismatch(ring, c.ring));
        }
        let mut poly = UnivariatePolynomial { ring, coefficients };
        poly.normalize();
        Ok(poly)
    }

    pub fn from_i64s(ring: Ring, coefficients: &[i64]) -> Self {
        let coefficients = coefficients.iter().map(|&c| ring.scalar(c)).collect();
        let mut poly = UnivariatePolynomial { ring, coefficients };
        poly.normalize();
        poly
    }

    pub fn zero(ring: Ring) -> Self {
        UnivariatePolynomial {
            ring,
            coefficients: Vec::new(),
        }
    }

    pub fn constant(c: ExactScalar) -> Self {
        let ring = c.ring;
        let mut poly = UnivariatePolynomial {
            ring,
            coefficients: vec![c],
        };
        poly.normalize();
        poly
    }

    /// The polynomial `x`.
    pub fn x(ring: Ring) -> Self {
        UnivariatePolynomial {
            ring,
            coefficients: vec![ring.zero(), ring.one()],
        }
    }

    fn normalize(&mut self) {
        while self.coefficients.last().is_some_and(ExactScalar::is_zero) {
            self.coefficients.pop();
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coefficients(&self) -> &[ExactScalar] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&ExactScalar> {
        self.coefficients.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(ExactScalar::is_one)
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        assert_eq!(self.ring, x.ring, "ring mismatch in polynomial evaluation");
        self.coefficients
            .iter()
            .rev()
            .fold(self.ring.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let coefficients = self.coefficients.iter().map(|a| a * c).collect();
        let mut poly = UnivariatePolynomial {
            ring: self.ring,
            coefficients,
        };
        poly.normalize();
        poly
    }

    /// Divide by `x` when the constant term is zero.
    fn deflate_zero_root(&self) -> Option<Self> {
        match self.coefficients.first() {
            Some(c) if c.is_zero() => Some(UnivariatePolynomial {
                ring: self.ring,
                coefficients: self.coefficients[1..].to_vec(),
            }),
            _ => None,
        }
    }
}

impl<'a> Add<&'a UnivariatePolynomial> for &'a UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: &'a UnivariatePolynomial) -> UnivariatePolynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch in polynomial addition");
        let len = self.coefficients.len().max(rhs.coefficients.len());
        let zero = self.ring.zero();
        let coefficients = (0..len)
            .map(|i| {
                let a = self.coefficients.get(i).unwrap_or(&zero);
                let b = rhs.coefficients.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        let mut poly = UnivariatePolynomial {
            ring: self.ring,
            coefficients,
        };
        poly.normalize();
        poly
    }
}

impl<'a> Sub<&'a UnivariatePolynomial> for &'a UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: &'a UnivariatePolynomial) -> UnivariatePolynomial {
        self + &rhs.scale(&-self.ring.one())
    }
}

impl<'a> Mul<&'a UnivariatePolynomial> for &'a UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: &'a UnivariatePolynomial) -> UnivariatePolynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch in polynomial product");
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::zero(self.ring);
        }
        let mut coefficients =
            vec![self.ring.zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                coefficients[i + j] = &coefficients[i + j] + &(a * b);
            }
        }
        let mut poly = UnivariatePolynomial {
            ring: self.ring,
            coefficients,
        };
        poly.normalize();
        poly
    }
}

/// Every root of `f` in 𝔽ₚ, found by evaluating at all `p` residues.
pub fn roots_over_field(f: &UnivariatePolynomial) -> Result<Vec<ExactScalar>, ArithError> {
    let elements = f.ring.elements()?;
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    Ok(elements.filter(|x| f.eval(x).is_zero()).collect())
}

/// All integer roots of a monic integer polynomial, ascending.
///
/// Zero roots are stripped first; every remaining integer root divides the
/// constant term, so the candidates are its signed divisors.
pub fn integer_roots(f: &UnivariatePolynomial) -> Result<Vec<ExactScalar>, ArithError> {
    if f.ring != Ring::Integers {
        return Err(ArithError::NotIntegers(f.ring));
    }
    if !f.is_monic() {
        return Err(ArithError::NotMonic);
    }
    let mut roots = BTreeSet::new();
    let mut g = f.clone();
    while let Some(h) = g.deflate_zero_root() {
        roots.insert(Ring::Integers.zero());
        g = h;
    }
    if g.degree().unwrap_or(0) > 0 {
        let constant = g.coefficients[0].value().abs();
        for d in positive_divisors(&constant) {
            for candidate in [d.clone(), -d] {
                let x = ExactScalar::from_raw(Ring::Integers, candidate);
                if g.eval(&x).is_zero() {
                    roots.insert(x);
                }
            }
        }
    }
    Ok(roots.into_iter().collect())
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    debug_assert!(n.is_positive());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    let root = n.sqrt();
    while d <= root {
        let (q, r) = n.div_rem(&d);
        if r.is_zero() {
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All `x` in the scalar's ring with `x^n = d`, ascending.
///
/// Over 𝔽ₚ this is an exhaustive scan; over ℤ it is integer root
/// extraction with sign handling.
pub fn nth_roots_of_scalar(d: &ExactScalar, n: u64) -> Result<Vec<ExactScalar>, ArithError> {
    if n == 0 {
        return Err(ArithError::InvalidIndex(n));
    }
    match d.ring {
        Ring::PrimeField(_) => Ok(d.ring.elements()?.filter(|x| &x.pow(n) == d).collect()),
        Ring::Integers => {
            let v = d.value();
            if v.is_zero() {
                return Ok(vec![Ring::Integers.zero()]);
            }
            let Some(k) = n.to_u32() else {
                // |x| >= 2 would make x^n astronomically large.
                return Ok(unit_roots(v, n));
            };
            let magnitude = v.abs().nth_root(k);
            if magnitude.pow(k) != v.abs() {
                return Ok(Vec::new());
            }
            let roots = if n.is_multiple_of(2) {
                if v.is_negative() {
                    Vec::new()
                } else {
                    vec![-magnitude.clone(), magnitude]
                }
            } else if v.is_negative() {
                vec![-magnitude]
            } else {
                vec![magnitude]
            };
            Ok(roots
                .into_iter()
                .map(|r| ExactScalar::from_raw(Ring::Integers, r))
                .collect())
        }
    }
}

fn unit_roots(v: &BigInt, n: u64) -> Vec<ExactScalar> {
    let one = BigInt::one();
    let roots = if *v == one {
        if n.is_multiple_of(2) {
            vec![-one.clone(), one]
        } else {
            vec![one]
        }
    } else if *v == -one.clone() && n % 2 == 1 {
        vec![-one]
    } else {
        Vec::new()
    };
    roots
        .into_iter()
        .map(|r| ExactScalar::from_raw(Ring::Integers, r))
        .collect()
}

/// Nonnegative square root of an integer when one exists.
pub fn is_perfect_square(d: &ExactScalar) -> Result<Option<ExactScalar>, ArithError> {
    if d.ring != Ring::Integers {
        return Err(ArithError::NotIntegers(d.ring));
    }
    let v = d.value();
    if v.is_negative() {
        return Ok(None);
    }
    let s = v.sqrt();
    Ok((&s * &s == *v).then(|| ExactScalar::from_raw(Ring::Integers, s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    fn values(v: &[ExactScalar]) -> Vec<i64> {
        v.iter().map(|x| x.value().to_i64().unwrap()).collect()
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert_eq!(Ring::prime_field(9), Err(ArithError::NotPrime(9)));
        assert_eq!(Ring::prime_field(1), Err(ArithError::NotPrime(1)));
        assert!(Ring::prime_field(101).is_ok());
    }

    #[test]
    fn field_values_are_canonical() {
        let r = fp(5);
        assert_eq!(r.scalar(-1).value(), &BigInt::from(4));
        assert_eq!((r.scalar(3) + r.scalar(4)).value(), &BigInt::from(2));
        assert_eq!(r.scalar(3).inverse().unwrap(), r.scalar(2));
        assert!(r.zero().inverse().is_none());
    }

    #[test]
    fn integer_division_is_exact_only() {
        let z = Ring::Integers;
        assert_eq!(z.scalar(-8).checked_div(&z.scalar(4)), Some(z.scalar(-2)));
        assert_eq!(z.scalar(7).checked_div(&z.scalar(2)), None);
        assert_eq!(z.scalar(7).checked_div(&z.zero()), None);
    }

    #[test]
    fn field_roots_of_cubic() {
        let f5 = UnivariatePolynomial::from_i64s(fp(5), &[-1, 0, 0, 1]);
        assert_eq!(values(&roots_over_field(&f5).unwrap()), vec![1]);
        let f7 = UnivariatePolynomial::from_i64s(fp(7), &[-1, 0, 0, 1]);
        assert_eq!(values(&roots_over_field(&f7).unwrap()), vec![1, 2, 4]);
        let lin = UnivariatePolynomial::from_i64s(fp(5), &[-3, 1]);
        assert_eq!(values(&roots_over_field(&lin).unwrap()), vec![3]);
    }

    #[test]
    fn field_roots_errors() {
        let zero = UnivariatePolynomial::zero(fp(5));
        assert_eq!(roots_over_field(&zero), Err(ArithError::ZeroPolynomial));
        let big = UnivariatePolynomial::from_i64s(fp(103), &[0, 1]);
        assert!(matches!(
            roots_over_field(&big),
            Err(ArithError::UnsupportedPrime { prime: 103, .. })
        ));
        let over_z = UnivariatePolynomial::from_i64s(Ring::Integers, &[0, 1]);
        assert!(matches!(
            roots_over_field(&over_z),
            Err(ArithError::NotAField(_))
        ));
    }

    #[test]
    fn integer_roots_examples() {
        let z = Ring::Integers;
        let quartic = UnivariatePolynomial::from_i64s(z, &[-3, -8, -6, 0, 1]);
        assert_eq!(values(&integer_roots(&quartic).unwrap()), vec![-1, 3]);
        let no_roots = UnivariatePolynomial::from_i64s(z, &[1, 0, 1]);
        assert!(integer_roots(&no_roots).unwrap().is_empty());
        let cube = UnivariatePolynomial::from_i64s(z, &[0, 0, 0, 1]);
        assert_eq!(values(&integer_roots(&cube).unwrap()), vec![0]);
        let not_monic = UnivariatePolynomial::from_i64s(z, &[1, 2]);
        assert_eq!(integer_roots(&not_monic), Err(ArithError::NotMonic));
    }

    #[test]
    fn integer_roots_with_zero_and_nonzero_roots() {
        // x^2 (x - 6)(x + 4)
        let f = UnivariatePolynomial::from_i64s(Ring::Integers, &[0, 0, -24, -2, 1]);
        assert_eq!(values(&integer_roots(&f).unwrap()), vec![-4, 0, 6]);
    }

    #[test]
    fn scalar_nth_roots() {
        assert_eq!(
            values(&nth_roots_of_scalar(&fp(5).one(), 3).unwrap()),
            vec![1]
        );
        let z = Ring::Integers;
        assert_eq!(values(&nth_roots_of_scalar(&z.one(), 3).unwrap()), vec![1]);
        assert_eq!(
            values(&nth_roots_of_scalar(&z.scalar(4), 2).unwrap()),
            vec![-2, 2]
        );
        assert_eq!(
            values(&nth_roots_of_scalar(&z.scalar(-27), 3).unwrap()),
            vec![-3]
        );
        assert!(nth_roots_of_scalar(&z.scalar(-4), 2).unwrap().is_empty());
        assert!(nth_roots_of_scalar(&z.scalar(5), 2).unwrap().is_empty());
        assert_eq!(
            values(&nth_roots_of_scalar(&fp(7).zero(), 4).unwrap()),
            vec![0]
        );
    }

    #[test]
    fn perfect_squares() {
        let z = Ring::Integers;
        assert_eq!(is_perfect_square(&z.scalar(9)).unwrap(), Some(z.scalar(3)));
        assert_eq!(is_perfect_square(&z.scalar(8)).unwrap(), None);
        assert_eq!(is_perfect_square(&z.scalar(0)).unwrap(), Some(z.zero()));
        assert_eq!(is_perfect_square(&z.scalar(-4)).unwrap(), None);
    }

    #[test]
    fn polynomial_arithmetic() {
        let z = Ring::Integers;
        let a = UnivariatePolynomial::from_i64s(z, &[1, 1]);
        let b = UnivariatePolynomial::from_i64s(z, &[-1, 1]);
        assert_eq!(&a * &b, UnivariatePolynomial::from_i64s(z, &[-1, 0, 1]));
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).degree(), None);
    }
}
