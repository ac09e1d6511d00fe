//! Scalar traits and a const-generic prime field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring with the operations the form and matrix code needs.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A field: `Div` is exact division by a nonzero element.
pub trait Scalar: Ring + Div<Output = Self> {}

impl Scalar for BigRational {}

/// Integers modulo the prime `P` (`P < 2^63`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    pub fn new(v: u64) -> Self {
        Zp(v % P)
    }

    pub fn from_i64(v: i64) -> Self {
        Zp(v.rem_euclid(P as i64) as u64)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let r = v % BigInt::from(P);
        let r = if r < BigInt::zero() { r + BigInt::from(P) } else { r };
        Zp(u64::try_from(r).expect("residue fits"))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Zp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

impl<const P: u64> fmt::Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Zp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Zp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Zp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u64> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Zp((u128::from(self.0) * u128::from(o.0) % u128::from(P)) as u64)
    }
}

impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Zp<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inverse().expect("division by zero in Zp")
    }
}

impl<const P: u64> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Zp<P> {
    fn one() -> Self {
        Zp(1 % P)
    }
}

impl<const P: u64> Scalar for Zp<P> {}

pub const MERSENNE_61: u64 = (1 << 61) - 1;
