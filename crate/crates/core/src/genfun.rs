//! Rational generating functions `N(t)/D(t)` and exact series expansion.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Integer;
use crate::engines::SequenceId;
use crate::error::GfError;
use crate::json;

/// Integer polynomial, constant term first, trailing zeros trimmed.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `tᵏ` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Integer {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Product with a power series, truncated to `order` terms.
    pub fn mul_series(&self, series: &[Integer], order: usize) -> Vec<Integer> {
        (0..order)
            .map(|n| {
                self.coeffs
                    .iter()
                    .enumerate()
                    .take(n + 1)
                    .filter_map(|(k, p)| series.get(n - k).map(|s| p * s))
                    .sum()
            })
            .collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        json::serialize_ints(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        json::deserialize_ints(d).map(IntPolynomial::new)
    }
}

/// `numerator(t) / denominator(t)` with a nonzero denominator constant term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalGF {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalGF {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self, GfError> {
        if denominator.coeff(0).is_zero() {
            return Err(GfError::ZeroConstant);
        }
        Ok(RationalGF {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }
}

impl<'de> Deserialize<'de> for RationalGF {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            numerator: IntPolynomial,
            denominator: IntPolynomial,
        }
        let raw = Raw::deserialize(d)?;
        RationalGF::new(raw.numerator, raw.denominator).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Generating function of `seq`.
///
/// Multiplying the series by `1 − c1·t − c2·t² − c3·t³` cancels every
/// coefficient from `t³` on, leaving
/// `a0 + (a1 − c1·a0)t + (a2 − c1·a1 − c2·a0)t²`.
pub fn gf_for(seq: SequenceId) -> RationalGF {
    let rec = seq.recurrence();
    let [c1, c2, c3] = rec.coeffs;
    let [a0, a1, a2] = rec.initials;
    let numerator = IntPolynomial::from_i64s(&[a0, a1 - c1 * a0, a2 - c1 * a1 - c2 * a0]);
    let denominator = IntPolynomial::from_i64s(&[1, -c1, -c2, -c3]);
    RationalGF::new(numerator, denominator).expect("unit constant term")
}

/// First `count` series coefficients of `gf`, by long division.
pub fn coefficients(gf: &RationalGF, count: usize) -> Result<Vec<Integer>, GfError> {
    if count == 0 {
        return Err(GfError::EmptyRequest);
    }
    let den = gf.denominator.coeffs();
    let lead = &den[0];
    if !lead.abs().is_one() {
        return Err(GfError::NonUnitConstant(lead.to_string()));
    }
    let mut out: Vec<Integer> = Vec::with_capacity(count);
    for n in 0..count {
        let mut acc = gf.numerator.coeff(n);
        for (k, d) in den.iter().enumerate().skip(1).take(n) {
            acc -= d * &out[n - k];
        }
        // lead is ±1
        if lead.is_negative() {
            acc = -acc;
        }
        out.push(acc);
    }
    Ok(out)
}
