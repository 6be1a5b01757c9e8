//! Exact number types: big integers, normalized rationals and the cyclotomic
//! field ℚ(ω), where ω is a primitive cube root of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ArithError;

/// Element of ℤ.
pub type Integer = BigInt;

/// Element of ℚ, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds a reduced fraction with a positive denominator.
pub fn rat_normalize(num: Integer, den: Integer) -> Result<Rational, ArithError> {
    if den.is_zero() {
        return Err(ArithError::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

pub fn rat_from_int(n: impl Into<Integer>) -> Rational {
    Rational::from_integer(n.into())
}

/// `2^k` for any integer `k`, negative exponents giving `1/2^|k|`.
pub fn pow2_rat(k: i64) -> Rational {
    let mag = Integer::one() << k.unsigned_abs();
    if k >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new_raw(Integer::one(), mag)
    }
}

/// `2^k` as an integer.
pub fn pow2(k: u64) -> Integer {
    Integer::one() << k
}

/// Returns the integer value of `r` when its denominator is 1.
pub fn as_integer(r: &Rational) -> Option<Integer> {
    r.is_integer().then(|| r.to_integer())
}

/// Exact division; `None` when `den` does not divide `num`.
pub fn exact_div(num: &Integer, den: &Integer) -> Option<Integer> {
    if den.is_zero() {
        return None;
    }
    let (q, r) = num.div_rem(den);
    r.is_zero().then_some(q)
}

/// Canonical `p/q` rendering used in reports. Integers keep the `/1`.
pub fn rat_to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders an integer-valued rational as a plain decimal, anything else as `p/q`.
pub fn rat_to_display(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        rat_to_pq(r)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let s = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Integer = p.trim().parse().map_err(|_| bad())?;
            let q: Integer = q.trim().parse().map_err(|_| bad())?;
            rat_normalize(p, q)
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// An element `a + b·ω` of ℚ(ω) with `ω² = −ω − 1`.
///
/// `ω` is the root `(−1 + i√3)/2`; its conjugate `ω̄ = ω² = −1 − ω` is the
/// other primitive cube root of unity. Since `i√3 = 1 + 2ω`, every quantity
/// in the Binet formulas of this family lives here with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycQ {
    pub a: Rational,
    pub b: Rational,
}

impl CycQ {
    pub fn new(a: Rational, b: Rational) -> Self {
        CycQ { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        CycQ::new(rat_from_int(a), rat_from_int(b))
    }

    pub fn from_rational(a: Rational) -> Self {
        CycQ::new(a, Rational::zero())
    }

    pub fn zero() -> Self {
        CycQ::from_ints(0, 0)
    }

    pub fn one() -> Self {
        CycQ::from_ints(1, 0)
    }

    /// ω₁ = (−1 + i√3)/2.
    pub fn omega() -> Self {
        CycQ::from_ints(0, 1)
    }

    /// ω₂ = ω₁² = −1 − ω₁.
    pub fn omega2() -> Self {
        CycQ::from_ints(-1, -1)
    }

    /// i√3 = 1 + 2ω.
    pub fn i_sqrt3() -> Self {
        CycQ::from_ints(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the ω-coordinate vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugation: `(a − b) − b·ω`.
    pub fn conj(&self) -> Self {
        CycQ::new(&self.a - &self.b, -&self.b)
    }

    /// Field norm `x·conj(x) = a² − ab + b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CycQ::new(&self.a * k, &self.b * k)
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let n_inv = n.recip();
        Some(self.conj().scale(&n_inv))
    }

    pub fn checked_div(&self, rhs: &CycQ) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    /// Power by repeated squaring; `x^0 = 1`.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = CycQ::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl fmt::Display for CycQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + ({})ω",
            rat_to_display(&self.a),
            rat_to_display(&self.b)
        )
    }
}

impl<'a> Mul<&'a CycQ> for &'a CycQ {
    type Output = CycQ;

    // (a₁ + b₁ω)(a₂ + b₂ω) = (a₁a₂ − b₁b₂) + (a₁b₂ + a₂b₁ − b₁b₂)ω
    fn mul(self, rhs: &'a CycQ) -> CycQ {
        let bb = &self.b * &rhs.b;
        let a = &self.a * &rhs.a - &bb;
        let b = &self.a * &rhs.b + &rhs.a * &self.b - bb;
        CycQ::new(a, b)
    }
}

impl Mul for CycQ {
    type Output = CycQ;
    fn mul(self, rhs: CycQ) -> CycQ {
        &self * &rhs
    }
}

impl<'a> Add<&'a CycQ> for &'a CycQ {
    type Output = CycQ;
    fn add(self, rhs: &'a CycQ) -> CycQ {
        CycQ::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Add for CycQ {
    type Output = CycQ;
    fn add(self, rhs: CycQ) -> CycQ {
        &self + &rhs
    }
}

impl<'a> Sub<&'a CycQ> for &'a CycQ {
    type Output = CycQ;
    fn sub(self, rhs: &'a CycQ) -> CycQ {
        CycQ::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Sub for CycQ {
    type Output = CycQ;
    fn sub(self, rhs: CycQ) -> CycQ {
        &self - &rhs
    }
}

impl Neg for CycQ {
    type Output = CycQ;
    fn neg(self) -> CycQ {
        CycQ::new(-self.a, -self.b)
    }
}

pub fn cyc_mul(x: &CycQ, y: &CycQ) -> CycQ {
    x * y
}

pub fn cyc_pow(x: &CycQ, k: u64) -> CycQ {
    x.pow(k)
}

pub fn cyc_conj(x: &CycQ) -> CycQ {
    x.conj()
}
