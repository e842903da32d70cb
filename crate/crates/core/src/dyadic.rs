//! Exact rationals whose denominator is a power of two.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// `numerator / 2^exponent`, kept in lowest terms (odd numerator or zero with
/// exponent 0).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u32) -> Self {
        Dyadic { numerator: numerator.into(), exponent }.normalized()
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Dyadic::new(v, 0)
    }

    pub fn zero() -> Self {
        Dyadic::integer(0)
    }

    pub fn one() -> Self {
        Dyadic::integer(1)
    }

    /// `2^-e`.
    pub fn pow2_neg(e: u32) -> Self {
        Dyadic::new(1, e)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    fn normalized(mut self) -> Self {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return self;
        }
        let tz = self.numerator.trailing_zeros().unwrap_or(0).min(self.exponent as u64) as u32;
        self.numerator >>= tz;
        self.exponent -= tz;
        self
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exponent.max(other.exponent);
        (
            &self.numerator << (e - self.exponent),
            &other.numerator << (e - other.exponent),
            e,
        )
    }

    pub fn pow(&self, p: u32) -> Self {
        Dyadic::new(num_traits::pow(self.numerator.clone(), p as usize), self.exponent * p)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.numerator.bits();
        // shift both parts into f64 range before dividing
        let shift = bits.saturating_sub(60);
        let mantissa = (&self.numerator >> shift).to_f64().unwrap_or(f64::NAN);
        mantissa * 2f64.powi(shift as i32 - self.exponent as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), BigInt::one() << self.exponent)
    }

    pub fn is_negative(&self) -> bool {
        self.numerator.is_negative()
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.numerator * &rhs.numerator, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic::new(-&self.numerator, self.exponent)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $f(self, rhs: Dyadic) -> Dyadic { (&self).$f(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({self})")
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
