//! Term engines for the three sequences sharing the recurrence
//! `t(n+3) = t(n+2) + t(n+1) + 2·t(n)`.
//!
//! Four independent routes compute the same integers:
//!
//! * [`term_iter`]: O(n) rolling window over the recurrence.
//! * [`term_closed`]: `2ⁿ` plus a period-3 correction (V or M).
//! * [`term_matpow`]: companion-matrix power by repeated squaring.
//! * [`term_binet_cyc`]: exact Binet sum over the roots `2, ω₁, ω₂` in ℚ(ω).

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{as_integer, exact_div, pow2, pow2_rat, rat_from_int, CycQ, Integer, Rational};
use crate::error::SeqError;
use crate::periodic::{m_at, v_at};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceId {
    /// Third-order Jacobsthal: 0, 1, 1, ...
    J3,
    /// Third-order Jacobsthal-Lucas: 2, 1, 5, ...
    JL3,
    /// Modified third-order Jacobsthal: 3, 1, 3, ...
    K3,
}

impl SequenceId {
    pub const ALL: [SequenceId; 3] = [SequenceId::J3, SequenceId::JL3, SequenceId::K3];

    pub fn name(self) -> &'static str {
        match self {
            SequenceId::J3 => "J3",
            SequenceId::JL3 => "JL3",
            SequenceId::K3 => "K3",
        }
    }

    pub fn recurrence(self) -> Recurrence3 {
        let initials = match self {
            SequenceId::J3 => [0, 1, 1],
            SequenceId::JL3 => [2, 1, 5],
            SequenceId::K3 => [3, 1, 3],
        };
        Recurrence3 {
            coeffs: FAMILY_COEFFS,
            initials,
        }
    }

    pub fn binet(self) -> BinetCoefficients {
        BinetCoefficients::for_seq(self)
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceId {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "J3" => Ok(SequenceId::J3),
            "JL3" => Ok(SequenceId::JL3),
            "K3" => Ok(SequenceId::K3),
            _ => Err(SeqError::UnknownSequence(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Iter,
    Closed,
    Matpow,
    Binet,
}

impl Engine {
    pub const ALL: [Engine; 4] = [Engine::Iter, Engine::Closed, Engine::Matpow, Engine::Binet];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Iter => "iter",
            Engine::Closed => "closed",
            Engine::Matpow => "matpow",
            Engine::Binet => "binet",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "iter" => Ok(Engine::Iter),
            "closed" => Ok(Engine::Closed),
            "matpow" => Ok(Engine::Matpow),
            "binet" => Ok(Engine::Binet),
            _ => Err(SeqError::UnknownEngine(s.to_string())),
        }
    }
}

/// Coefficients of `x³ − x² − x − 2`, i.e. `t(n+3) = 1·t(n+2) + 1·t(n+1) + 2·t(n)`.
pub const FAMILY_COEFFS: [i64; 3] = [1, 1, 2];

/// A third-order linear recurrence with its three initial values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Recurrence3 {
    pub coeffs: [i64; 3],
    pub initials: [i64; 3],
}

impl Recurrence3 {
    /// Rolling-window iterator over the terms, starting at index 0.
    pub fn terms(&self) -> Terms {
        Terms {
            coeffs: self.coeffs.map(Integer::from),
            window: self.initials.map(Integer::from),
        }
    }
}

pub struct Terms {
    coeffs: [Integer; 3],
    // (t(n), t(n+1), t(n+2))
    window: [Integer; 3],
}

impl Iterator for Terms {
    type Item = Integer;

    fn next(&mut self) -> Option<Integer> {
        let [c1, c2, c3] = &self.coeffs;
        let [t0, t1, t2] = &self.window;
        let next = c1 * t2 + c2 * t1 + c3 * t0;
        let out = std::mem::replace(&mut self.window[0], next);
        self.window.rotate_left(1);
        Some(out)
    }
}

/// 3×3 integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat3(pub [[Integer; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        let mut m = Mat3::zero();
        for i in 0..3 {
            m.0[i][i] = Integer::one();
        }
        m
    }

    fn zero() -> Self {
        Mat3(std::array::from_fn(|_| {
            std::array::from_fn(|_| Integer::zero())
        }))
    }

    /// Companion matrix `[[c1, c2, c3], [1, 0, 0], [0, 1, 0]]`.
    pub fn companion(coeffs: [i64; 3]) -> Self {
        let mut m = Mat3::zero();
        for (j, c) in coeffs.iter().enumerate() {
            m.0[0][j] = Integer::from(*c);
        }
        m.0[1][0] = Integer::one();
        m.0[2][1] = Integer::one();
        m
    }

    pub fn mul(&self, rhs: &Mat3) -> Mat3 {
        let mut out = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Integer::zero();
                for k in 0..3 {
                    let (x, y) = (&self.0[i][k], &rhs.0[k][j]);
                    if !x.is_zero() && !y.is_zero() {
                        acc += x * y;
                    }
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> Mat3 {
        let mut acc = Mat3::identity();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn apply(&self, v: &[Integer; 3]) -> [Integer; 3] {
        std::array::from_fn(|i| {
            self.0[i]
                .iter()
                .zip(v)
                .fold(Integer::zero(), |acc, (m, x)| acc + m * x)
        })
    }
}

/// Companion matrix together with the state `(t(n+2), t(n+1), t(n))`.
#[derive(Clone, Debug)]
pub struct CompanionState {
    pub matrix: Mat3,
    pub state: [Integer; 3],
}

impl CompanionState {
    pub fn start(rec: &Recurrence3) -> Self {
        let [a0, a1, a2] = rec.initials;
        CompanionState {
            matrix: Mat3::companion(rec.coeffs),
            state: [a2.into(), a1.into(), a0.into()],
        }
    }

    /// Moves the state forward by `k` indices.
    pub fn advance(&self, k: u64) -> Self {
        CompanionState {
            matrix: self.matrix.clone(),
            state: self.matrix.pow(k).apply(&self.state),
        }
    }

    /// The lowest-index term held in the state.
    pub fn current(&self) -> &Integer {
        &self.state[2]
    }
}

/// `t(n) = pow2·2ⁿ + c·ω₁ⁿ + conj(c)·ω₂ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinetCoefficients {
    pub pow2: Rational,
    pub c: CycQ,
}

impl BinetCoefficients {
    pub fn for_seq(seq: SequenceId) -> Self {
        // (3 + 2i√3) = 5 + 4ω since i√3 = 1 + 2ω.
        let three_plus = CycQ::from_ints(5, 4);
        let frac = |p: i64, q: i64| Rational::new(p.into(), q.into());
        match seq {
            SequenceId::J3 => BinetCoefficients {
                pow2: frac(2, 7),
                c: three_plus.scale(&frac(-1, 21)),
            },
            SequenceId::JL3 => BinetCoefficients {
                pow2: frac(8, 7),
                c: three_plus.scale(&frac(1, 7)),
            },
            SequenceId::K3 => BinetCoefficients {
                pow2: Rational::one(),
                c: CycQ::one(),
            },
        }
    }

    /// Evaluates the Binet sum in ℚ(ω) without reducing it.
    pub fn eval(&self, n: u64) -> CycQ {
        let lead = CycQ::from_rational(&self.pow2 * Rational::from_integer(pow2(n)));
        let w1 = CycQ::omega().pow(n);
        let w2 = CycQ::omega2().pow(n);
        let tail = &(&self.c * &w1) + &(&self.c.conj() * &w2);
        &lead + &tail
    }
}

pub fn term_iter(seq: SequenceId, n: u64) -> Integer {
    seq.recurrence()
        .terms()
        .nth(n as usize)
        .expect("infinite iterator")
}

pub fn term_closed(seq: SequenceId, n: u64) -> Result<Integer, SeqError> {
    let v = Integer::from(v_at(residue(n)));
    match seq {
        SequenceId::J3 => div7(pow2(n + 1) - v, seq, n),
        SequenceId::JL3 => div7(pow2(n + 3) + 3 * v, seq, n),
        SequenceId::K3 => Ok(pow2(n) + m_at(residue(n))),
    }
}

fn residue(n: u64) -> i64 {
    (n % 3) as i64
}

fn div7(num: Integer, seq: SequenceId, n: u64) -> Result<Integer, SeqError> {
    exact_div(&num, &Integer::from(7)).ok_or_else(|| {
        SeqError::Invariant(format!(
            "closed form for {seq} at n = {n} is not divisible by 7"
        ))
    })
}

pub fn term_matpow(seq: SequenceId, n: u64) -> Integer {
    CompanionState::start(&seq.recurrence())
        .advance(n)
        .current()
        .clone()
}

pub fn term_binet_cyc(seq: SequenceId, n: u64) -> Result<Integer, SeqError> {
    let value = seq.binet().eval(n);
    if !value.is_rational() {
        return Err(SeqError::Invariant(format!(
            "Binet sum for {seq} at n = {n} has nonzero ω-part {}",
            value.b
        )));
    }
    as_integer(&value.a).ok_or_else(|| {
        SeqError::Invariant(format!(
            "Binet sum for {seq} at n = {n} is not an integer: {}",
            value.a
        ))
    })
}

pub fn term(seq: SequenceId, n: u64, engine: Engine) -> Result<Integer, SeqError> {
    match engine {
        Engine::Iter => Ok(term_iter(seq, n)),
        Engine::Closed => term_closed(seq, n),
        Engine::Matpow => Ok(term_matpow(seq, n)),
        Engine::Binet => term_binet_cyc(seq, n),
    }
}

/// Term at any integer index. Negative indices exist only for K3 and give
/// rationals; the engine is ignored for them.
pub fn term_at(seq: SequenceId, n: i64, engine: Engine) -> Result<Rational, SeqError> {
    if n >= 0 {
        return term(seq, n as u64, engine).map(Rational::from_integer);
    }
    match seq {
        SequenceId::K3 => k_neg(-n),
        _ => Err(SeqError::NegativeIndex(n)),
    }
}

/// `K(−n) = 2^(−n) + M(−n)` for `n ≥ 1`.
pub fn k_neg(n: i64) -> Result<Rational, SeqError> {
    if n < 1 {
        return Err(SeqError::IndexTooSmall { index: n, min: 1 });
    }
    Ok(pow2_rat(-n) + rat_from_int(m_at(-n)))
}

/// `K(n) = J(n) + 2·J(n−1) + 6·J(n−2)` for `n ≥ 2`.
pub fn k_from_j(n: i64) -> Result<Integer, SeqError> {
    if n < 2 {
        return Err(SeqError::IndexTooSmall { index: n, min: 2 });
    }
    let n = n as u64;
    let mut terms = SequenceId::J3.recurrence().terms().skip((n - 2) as usize);
    let (j0, j1, j2) = (
        terms.next().unwrap(),
        terms.next().unwrap(),
        terms.next().unwrap(),
    );
    Ok(j2 + 2 * j1 + 6 * j0)
}

/// Inclusive run of terms `from..=to`.
pub fn range(
    seq: SequenceId,
    from: u64,
    to: u64,
    engine: Engine,
) -> Result<Vec<Integer>, SeqError> {
    if from > to {
        return Err(SeqError::InvalidRange {
            from: from as i64,
            to: to as i64,
        });
    }
    match engine {
        Engine::Iter => Ok(seq
            .recurrence()
            .terms()
            .skip(from as usize)
            .take((to - from + 1) as usize)
            .collect()),
        _ => (from..=to)
            .into_par_iter()
            .map(|n| term(seq, n, engine))
            .collect(),
    }
}
