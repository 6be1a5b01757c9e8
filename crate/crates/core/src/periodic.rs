//! Period-3 auxiliary sequences V, M and U.
//!
//! All three satisfy `x(n+2) = −x(n+1) − x(n)` and are indexed by the
//! Euclidean residue of `n` modulo 3, so negative indices are well defined.

use crate::arith::exact_div;

/// A period-3 integer sequence given by its values at residues 0, 1, 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriPeriodic {
    r0: i64,
    r1: i64,
    r2: i64,
}

/// V: 2, −3, 1.
pub const V: TriPeriodic = TriPeriodic {
    r0: 2,
    r1: -3,
    r2: 1,
};
/// M = ω₁ⁿ + ω₂ⁿ: 2, −1, −1.
pub const M: TriPeriodic = TriPeriodic {
    r0: 2,
    r1: -1,
    r2: -1,
};
/// U = (ω₁ⁿ − ω₂ⁿ)/(ω₁ − ω₂): 0, 1, −1.
pub const U: TriPeriodic = TriPeriodic {
    r0: 0,
    r1: 1,
    r2: -1,
};

impl TriPeriodic {
    #[cfg(test)]
    pub(crate) const fn new(r0: i64, r1: i64, r2: i64) -> Self {
        TriPeriodic { r0, r1, r2 }
    }

    pub fn eval(&self, n: i64) -> i64 {
        match n.rem_euclid(3) {
            0 => self.r0,
            1 => self.r1,
            _ => self.r2,
        }
    }

    pub fn residues(&self) -> [i64; 3] {
        [self.r0, self.r1, self.r2]
    }
}

pub fn v_at(n: i64) -> i64 {
    V.eval(n)
}

pub fn m_at(n: i64) -> i64 {
    M.eval(n)
}

pub fn u_at(n: i64) -> i64 {
    U.eval(n)
}

/// `M(n) = −(4·V(n+1) − V(n)) / 7`. Panics if the division is not exact,
/// which would mean the V table itself is corrupt.
pub fn m_from_v(n: i64) -> i64 {
    let num = -(4 * v_at(n + 1) - v_at(n));
    let q = exact_div(&num.into(), &7.into())
        .unwrap_or_else(|| panic!("7 does not divide {num} at n = {n}"));
    i64::try_from(q).expect("small")
}
