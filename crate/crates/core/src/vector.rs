//! Nonnegative integer vectors: semigroup elements and factorizations.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

macro_rules! nat_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
        pub struct $name(Vec<u64>);

        impl $name {
            pub fn new(coords: Vec<u64>) -> Self {
                $name(coords)
            }

            pub fn zero(dim: usize) -> Self {
                $name(vec![0; dim])
            }

            pub fn unit(dim: usize, i: usize) -> Self {
                let mut v = vec![0; dim];
                v[i] = 1;
                $name(v)
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[u64] {
                &self.0
            }

            pub fn into_inner(self) -> Vec<u64> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }

            /// Coordinate-wise `self <= other`.
            pub fn le(&self, other: &Self) -> bool {
                self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
            }

            pub fn checked_add(&self, other: &Self) -> Result<Self> {
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()
                    .map($name)
            }

            /// `self - other` when `other <= self`, otherwise `None`.
            pub fn checked_sub(&self, other: &Self) -> Option<Self> {
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(a, b)| a.checked_sub(*b))
                    .collect::<Option<Vec<_>>>()
                    .map($name)
            }
        }

        impl Deref for $name {
            type Target = [u64];
            fn deref(&self) -> &[u64] {
                &self.0
            }
        }

        impl From<Vec<u64>> for $name {
            fn from(v: Vec<u64>) -> Self {
                $name(v)
            }
        }

        impl<const N: usize> From<[u64; N]> for $name {
            fn from(v: [u64; N]) -> Self {
                $name(v.to_vec())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    };
}

nat_vector!(
    /// A point of an affine semigroup in `N^d`.
    ElementVector
);

nat_vector!(
    /// A factorization: multiplicity of each atom, in `N^k`.
    FactVector
);

impl FactVector {
    /// Number of atoms used, `|z|`.
    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Coordinate-wise minimum.
    pub fn meet(&self, other: &Self) -> Self {
        FactVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn disjoint(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Cover morphism: the same factorization with atom `i` used once more.
    pub fn bump(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        FactVector(v)
    }
}

/// Distance between two factorizations: `max(|z - gcd|, |w - gcd|)`.
pub fn dist(z: &FactVector, w: &FactVector) -> Result<u64> {
    if z.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: z.dim(),
            found: w.dim(),
        });
    }
    Ok(dist_unchecked(z, w))
}

pub(crate) fn dist_unchecked(z: &[u64], w: &[u64]) -> u64 {
    let (mut left, mut right) = (0u64, 0u64);
    for (a, b) in z.iter().zip(w) {
        if a > b {
            left += a - b;
        } else {
            right += b - a;
        }
    }
    left.max(right)
}
