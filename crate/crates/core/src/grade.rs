//! Elements of `Z2^n` acting as degrees of a graded algebra.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A degree in `Z2^n`: an ordered tuple of `n` binary digits.
///
/// Stored as a bitmask, which caps the supported rank at 64. Addition is
/// componentwise mod 2 and the inner product `a·b = sum a_i b_i mod 2`
/// drives every sign in the bracket calculus.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Grade {
    rank: u8,
    bits: u64,
}

impl Grade {
    pub const MAX_RANK: usize = 64;

    /// Builds a grade from its digit tuple. Digits must be 0 or 1.
    pub fn new(digits: &[u8]) -> Result<Self, String> {
        if digits.is_empty() || digits.len() > Self::MAX_RANK {
            return Err(format!(
                "grade rank must be between 1 and {}, got {}",
                Self::MAX_RANK,
                digits.len()
            ));
        }
        let mut bits = 0u64;
        for (i, &d) in digits.iter().enumerate() {
            match d {
                0 => {}
                1 => bits |= 1 << i,
                _ => return Err(format!("grade digit must be 0 or 1, got {d}")),
            }
        }
        Ok(Grade {
            rank: digits.len() as u8,
            bits,
        })
    }

    /// The zero grade of a given rank.
    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1 && rank <= Self::MAX_RANK);
        Grade {
            rank: rank as u8,
            bits: 0,
        }
    }

    /// Convenience constructor for the rank-2 grades used by the builtins.
    pub fn pair(a: u8, b: u8) -> Self {
        Grade::new(&[a, b]).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn digits(&self) -> Vec<u8> {
        (0..self.rank()).map(|i| ((self.bits >> i) & 1) as u8).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Componentwise sum mod 2.
    pub fn add(&self, other: &Grade) -> Grade {
        assert_eq!(self.rank, other.rank, "grade rank mismatch");
        Grade {
            rank: self.rank,
            bits: self.bits ^ other.bits,
        }
    }

    /// Inner product `a·b mod 2`, returned as 0 or 1.
    pub fn inner(&self, other: &Grade) -> u32 {
        assert_eq!(self.rank, other.rank, "grade rank mismatch");
        (self.bits & other.bits).count_ones() % 2
    }

    /// `(-1)^{a·b}` as `+1` / `-1`.
    pub fn sign(&self, other: &Grade) -> i32 {
        if self.inner(other) == 0 {
            1
        } else {
            -1
        }
    }

    /// Self-pairing `a·a`: 1 means the grade behaves like an odd (anticommuting)
    /// degree under the sign rule, 0 like an even one. Note that `(1,1)` is even.
    pub fn self_odd(&self) -> bool {
        self.inner(self) == 1
    }

    /// Sign of this grade's block in the supertrace: `+1` for even self-pairing,
    /// `-1` for odd.
    pub fn supertrace_sign(&self) -> i32 {
        if self.self_odd() {
            -1
        } else {
            1
        }
    }

    /// Sort key realizing the standard ordering of `Z2^n` degrees: even
    /// self-pairing grades first, lexicographic within each parity class.
    /// For n = 2 this is exactly (0,0), (1,1), (0,1), (1,0).
    pub fn standard_order_key(&self) -> (u32, Vec<u8>) {
        (self.inner(self), self.digits())
    }

    /// Enumerates all `2^n` grades of a rank in standard order.
    pub fn all(rank: usize) -> Vec<Grade> {
        assert!(rank >= 1 && rank <= 16, "grade enumeration limited to rank 16");
        let mut out: Vec<Grade> = (0..(1u64 << rank))
            .map(|bits| Grade {
                rank: rank as u8,
                bits,
            })
            .collect();
        out.sort_by_key(|g| g.standard_order_key());
        out
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.digits().iter().map(|d| d.to_string()).collect();
        write!(f, "({})", digits.join(","))
    }
}
