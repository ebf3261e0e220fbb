//! Minimal algebraic interfaces shared by the exact linear algebra.

use std::fmt::Debug;

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// An integral domain in which exact quotients can be computed.
pub trait Domain: Ring {
    /// `self / divisor` when the division is exact, `None` otherwise.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;

    /// Pivot preference: smaller is better. Degree for polynomials, 0 for field elements.
    fn size_hint(&self) -> usize;
}

pub trait Field: Domain {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

/// Implements the `std::ops` arithmetic operators for a [`Ring`] type by delegating to the trait.
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                <$t as $crate::ring::Ring>::add(self, rhs)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                <$t as $crate::ring::Ring>::add(&self, &rhs)
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                <$t as $crate::ring::Ring>::sub(self, rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                <$t as $crate::ring::Ring>::sub(&self, &rhs)
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                <$t as $crate::ring::Ring>::mul(self, rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                <$t as $crate::ring::Ring>::mul(&self, &rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t as $crate::ring::Ring>::neg(self)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t as $crate::ring::Ring>::neg(&self)
            }
        }
    };
}
pub(crate) use impl_ring_ops;
