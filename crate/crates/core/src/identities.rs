//! Catalog of identities relating J3, JL3 and K3, with an exact checker.
//!
//! Every identity is an equation `lhs = rhs` over one or two non-negative
//! indices. The checker evaluates both sides as normalized rationals for each
//! in-domain index tuple and records every mismatch with both exact values.
//! Left-hand sides come from the recurrence tables; right-hand sides use the
//! closed forms (powers of two plus period-3 corrections) wherever the
//! identity is stated that way, so the two sides take different routes.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{pow2, pow2_rat, rat_from_int, Integer, Rational};
use crate::engines::{k_neg, BinetCoefficients, SequenceId};
use crate::error::{IdentityError, SeqError};
use crate::genfun::{coefficients, gf_for};
use crate::json;
use crate::periodic::{m_at, u_at, v_at};

macro_rules! identity_ids {
    ($($variant:ident => $label:literal),+ $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId {
            $($variant),+
        }

        impl IdentityId {
            /// Every identity, in catalog order.
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant),+];

            pub fn label(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $label),+
                }
            }
        }
    };
}

identity_ids! {
    E4 => "E4",
    E5 => "E5",
    Ec5 => "EC5",
    E6 => "E6",
    E7 => "E7",
    E8 => "E8",
    E9 => "E9",
    E10 => "E10",
    E12 => "E12",
    H2J => "H2_J",
    H2Jl => "H2_JL",
    Mod1 => "MOD1",
    KDef => "KDEF",
    Pp1 => "PP1",
    Pp2 => "PP2",
    Pp3 => "PP3",
    Pp4 => "PP4",
    Pp5 => "PP5",
    Catalan => "CATALAN",
    Cassini => "CASSINI",
    DOcagne => "DOCAGNE",
    T1 => "T1",
    T2 => "T2",
    T3 => "T3",
    N1 => "N1",
    N2 => "N2",
    BinetJ => "BINET_J",
    BinetJl => "BINET_JL",
    BinetK => "BINET_K",
    GfK => "GF_K",
}

impl IdentityId {
    /// Human-readable statement. `J`, `j` and `K` stand for J3, JL3 and K3.
    pub fn statement(self) -> &'static str {
        use IdentityId::*;
        match self {
            E4 => "3J(n) + j(n) = 2^(n+1)",
            E5 => "j(n) - 3J(n) = 2j(n-3), n >= 3",
            Ec5 => "J(n+2) - 4J(n) = -2 if n = 1 (mod 3), 1 otherwise",
            E6 => "j(n) - 4J(n) = 2, -3, 1 for n = 0, 1, 2 (mod 3)",
            E7 => "j(n+1) + j(n) = 3J(n+2)",
            E8 => "j(n) - J(n+2) = 1, -1, 0 for n = 0, 1, 2 (mod 3)",
            E9 => "j(n-3)^2 + 3J(n)j(n) = 4^n, n >= 3",
            E10 => "sum_{k=0..n} J(k) = J(n+1) - 1 if n = 0 (mod 3), J(n+1) otherwise",
            E12 => "j(n)^2 - 9J(n)^2 = 2^(n+2) j(n-3), n >= 3",
            H2J => "J(n) = (2^(n+1) - V(n)) / 7",
            H2Jl => "j(n) = (2^(n+3) + 3V(n)) / 7",
            Mod1 => "M(n) = -(4V(n+1) - V(n)) / 7",
            KDef => "K(n) = J(n) + 2J(n-1) + 6J(n-2), n >= 2",
            Pp1 => "147J(n) = 13K(n) + 48K(n-1) + 20K(n-2), n >= 2",
            Pp2 => "6K(n) = 5j(n) + 3j(n-1) - 5j(n-2), n >= 2",
            Pp3 => "49j(n) = 43K(n) + 8K(n-1) + 36K(n-2), n >= 2",
            Pp4 => "K(n)K(m) + K(n+1)K(m+1) + K(n+2)K(m+2) = 21*2^(n+m) + 2^n(M(m+1) + 3M(m+2)) + 2^m(M(n+1) + 3M(n+2)) + 3M(n-m)",
            Pp5 => "K(n)^2 + K(n+1)^2 + K(n+2)^2 = 21*2^(2n) + 2^(n+1)(M(n+1) + 3M(n+2)) + 6",
            Catalan => "K(n+s)K(n-s) - K(n)^2 = 2^n(2^-s - 2^s)U(s)M(n+1) - 2^n(2^s U(s) + 2 + (2^-s + 2^s)U(s-1))M(n) - 3U(s)^2, n >= s >= 0",
            Cassini => "K(n+1)K(n-1) - K(n)^2 = 2^(n-1)(3M(n+2) - 5M(n)) - 3, n >= 1",
            DOcagne => "K(m+1)K(n) - K(m)K(n+1) = 2^m(2M(n) - M(n+1)) + 2^n(M(m+1) - 2M(m)) - 3U(m-n), m >= n >= 0",
            T1 => "sum_{s=m..n} K(s) = (K(n+2) + 2K(n) + K(m) - K(m+2)) / 3, n >= m >= 0",
            T2 => "sum_{s=0..n} K(s) = K(n+1) + 2, +1, -3 for n = 0, 1, 2 (mod 3)",
            T3 => "sum_{s=0..n} j(s) = (16K(n+3) - 5K(n+2) + 2K(n+1)) / 49 - 1",
            N1 => "K(-n) = K(n) + 2^-n - 2^n, n >= 1",
            N2 => "sum_{s=0..n} K(-s) = (K(n+2) + 2K(n)) / 3 - 2^(n+1) - 2^-n + 3",
            BinetJ => "J(n) = (2/7)2^n - ((3 + 2i*sqrt3)/21)w1^n - ((3 - 2i*sqrt3)/21)w2^n",
            BinetJl => "j(n) = (8/7)2^n + ((3 + 2i*sqrt3)/7)w1^n + ((3 - 2i*sqrt3)/7)w2^n",
            BinetK => "K(n) = 2^n + w1^n + w2^n",
            GfK => "sum K(n)t^n = (3 - 2t - t^2) / (1 - t - t^2 - 2t^3)",
        }
    }

    pub fn domain(self) -> IdentityDomain {
        use IdentityId::*;
        match self {
            E5 | E9 | E12 => IdentityDomain::single(3),
            KDef | Pp1 | Pp2 | Pp3 => IdentityDomain::single(2),
            Cassini | N1 => IdentityDomain::single(1),
            Catalan => IdentityDomain::pair(["n", "s"], Ordering::FirstAtLeastSecond),
            DOcagne => IdentityDomain::pair(["m", "n"], Ordering::FirstAtLeastSecond),
            T1 => IdentityDomain::pair(["n", "m"], Ordering::FirstAtLeastSecond),
            Pp4 => IdentityDomain::pair(["n", "m"], Ordering::Free),
            _ => IdentityDomain::single(0),
        }
    }

    pub fn is_piecewise(self) -> bool {
        matches!(
            self,
            IdentityId::Ec5 | IdentityId::E6 | IdentityId::E8 | IdentityId::E10 | IdentityId::T2
        )
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let want = s.trim().to_ascii_uppercase();
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.label() == want)
            .ok_or_else(|| IdentityError::UnknownIdentity(s.to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for IdentityId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordering {
    /// Any pair of non-negative indices.
    Free,
    /// First index at least the second.
    FirstAtLeastSecond,
}

/// Index set an identity is stated over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityDomain {
    pub indices: Vec<&'static str>,
    /// Lower bound per index.
    pub lower: Vec<i64>,
    pub ordering: Ordering,
}

impl IdentityDomain {
    fn single(lower: i64) -> Self {
        IdentityDomain {
            indices: vec!["n"],
            lower: vec![lower],
            ordering: Ordering::Free,
        }
    }

    fn pair(indices: [&'static str; 2], ordering: Ordering) -> Self {
        IdentityDomain {
            indices: indices.to_vec(),
            lower: vec![0, 0],
            ordering,
        }
    }

    pub fn arity(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, tuple: &[i64]) -> bool {
        tuple.len() == self.arity()
            && tuple.iter().zip(&self.lower).all(|(x, lo)| x >= lo)
            && match self.ordering {
                Ordering::Free => true,
                Ordering::FirstAtLeastSecond => tuple[0] >= tuple[1],
            }
    }

    /// Number of tuples in the grid `[0, n_max]^arity`.
    pub fn grid_size(&self, n_max: u64) -> u64 {
        (n_max + 1).pow(self.arity() as u32)
    }

    /// In-domain tuples of the grid `[0, n_max]^arity`, lexicographic.
    pub fn tuples(&self, n_max: u64) -> Vec<Vec<i64>> {
        let top = n_max as i64;
        match self.arity() {
            1 => (self.lower[0]..=top).map(|n| vec![n]).collect(),
            _ => (self.lower[0]..=top)
                .flat_map(|a| {
                    let hi = match self.ordering {
                        Ordering::Free => top,
                        Ordering::FirstAtLeastSecond => a,
                    };
                    (self.lower[1]..=hi).map(move |b| vec![a, b])
                })
                .collect(),
        }
    }

    pub fn describe(&self) -> String {
        let bounds: Vec<String> = self
            .indices
            .iter()
            .zip(&self.lower)
            .map(|(i, lo)| format!("{i} >= {lo}"))
            .collect();
        let mut s = bounds.join(", ");
        if self.ordering == Ordering::FirstAtLeastSecond {
            s.push_str(&format!(", {} >= {}", self.indices[0], self.indices[1]));
        }
        s
    }
}

/// Picks `budget` tuples spread evenly over `tuples` (which is lexicographic,
/// so every stretch of the first index gets a proportional share). Returns
/// everything when it already fits.
pub fn stratified_sample(tuples: Vec<Vec<i64>>, budget: usize) -> Vec<Vec<i64>> {
    let total = tuples.len();
    if total <= budget {
        return tuples;
    }
    if budget == 0 {
        return Vec::new();
    }
    // floor(i·total/budget) is strictly increasing because total > budget
    let mut picks = (0..budget).map(|i| i * total / budget).peekable();
    tuples
        .into_iter()
        .enumerate()
        .filter_map(|(k, t)| {
            if picks.peek() == Some(&k) {
                picks.next();
                Some(t)
            } else {
                None
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckParams {
    /// Upper bound of every index.
    pub n_max: u64,
    /// Cap on the number of tuples for two-index identities.
    pub pair_budget: usize,
    /// Adds 1 to the right-hand side of this identity. Exists so tooling can
    /// confirm that a broken identity is actually reported.
    pub inject_fault: Option<IdentityId>,
}

impl CheckParams {
    pub fn new(n_max: u64, pair_budget: usize) -> Self {
        CheckParams {
            n_max,
            pair_budget,
            inject_fault: None,
        }
    }
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams::new(300, 5000)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainSummary {
    pub indices: Vec<String>,
    pub lower_bounds: Vec<i64>,
    pub constraint: String,
    pub n_max: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pair_budget: Option<usize>,
    /// False when the two-index domain was subsampled to fit the budget.
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub indices: Vec<i64>,
    #[serde(
        serialize_with = "json::serialize_rat",
        deserialize_with = "json::deserialize_rat"
    )]
    pub lhs: Rational,
    #[serde(
        serialize_with = "json::serialize_rat",
        deserialize_with = "json::deserialize_rat"
    )]
    pub rhs: Rational,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheckReport {
    pub identity: IdentityId,
    pub domain: DomainSummary,
    pub checked: u64,
    pub skipped: u64,
    /// Nothing in the domain was exercised.
    pub vacuous: bool,
    pub failures: Vec<Failure>,
    pub status: Status,
}

impl IdentityCheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Exact terms of all three sequences for indices `0..len`.
#[derive(Clone, Debug)]
pub struct TermTable {
    j: Vec<Integer>,
    jl: Vec<Integer>,
    k: Vec<Integer>,
}

impl TermTable {
    pub fn new(len: usize) -> Self {
        let build = |seq: SequenceId| seq.recurrence().terms().take(len).collect();
        TermTable {
            j: build(SequenceId::J3),
            jl: build(SequenceId::JL3),
            k: build(SequenceId::K3),
        }
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn j(&self, n: i64) -> &Integer {
        &self.j[idx(n)]
    }

    pub fn jl(&self, n: i64) -> &Integer {
        &self.jl[idx(n)]
    }

    pub fn k(&self, n: i64) -> &Integer {
        &self.k[idx(n)]
    }

    pub fn get(&self, seq: SequenceId, n: i64) -> &Integer {
        match seq {
            SequenceId::J3 => self.j(n),
            SequenceId::JL3 => self.jl(n),
            SequenceId::K3 => self.k(n),
        }
    }
}

fn idx(n: i64) -> usize {
    usize::try_from(n).unwrap_or_else(|_| panic!("negative table index {n}"))
}

fn int(x: i64) -> Integer {
    Integer::from(x)
}

fn rat(x: &Integer) -> Rational {
    Rational::from_integer(x.clone())
}

fn frac(num: Integer, den: i64) -> Rational {
    Rational::new(num, den.into())
}

fn check_order(hi: i64, lo: i64, what: &str) -> Result<(), IdentityError> {
    if lo < 0 || hi < lo {
        return Err(IdentityError::OutOfDomain(format!(
            "{what}: need {hi} >= {lo} >= 0"
        )));
    }
    Ok(())
}

/// Constant predicted by a piecewise identity for the residue class of `n`.
///
/// EC5, E6 and E8 give the value of the left-hand side; E10 and T2 give the
/// offset added to `J(n+1)` and `K(n+1)` respectively.
pub fn piecewise_expected(id: IdentityId, n: i64) -> Result<i64, IdentityError> {
    let r = n.rem_euclid(3) as usize;
    let table: [i64; 3] = match id {
        IdentityId::Ec5 => [1, -2, 1],
        IdentityId::E6 => [2, -3, 1],
        IdentityId::E8 => [1, -1, 0],
        IdentityId::E10 => [-1, 0, 0],
        IdentityId::T2 => [2, 1, -3],
        _ => return Err(IdentityError::NotPiecewise(id.label().to_string())),
    };
    Ok(table[r])
}

/// Right-hand side of the Catalan identity for `K`.
pub fn rhs_catalan(n: i64, s: i64) -> Result<Rational, IdentityError> {
    check_order(n, s, "CATALAN")?;
    let two_n = pow2_rat(n);
    let (inv, fwd) = (pow2_rat(-s), pow2_rat(s));
    let us = rat_from_int(u_at(s));
    let us1 = rat_from_int(u_at(s - 1));
    let first = &two_n * (&inv - &fwd) * &us * rat_from_int(m_at(n + 1));
    let inner = &fwd * &us + rat_from_int(2) + (&inv + &fwd) * &us1;
    let second = &two_n * inner * rat_from_int(m_at(n));
    let third = rat_from_int(3) * &us * &us;
    Ok(first - second - third)
}

/// Right-hand side of the d'Ocagne identity for `K`.
pub fn rhs_docagne(m: i64, n: i64) -> Result<Integer, IdentityError> {
    check_order(m, n, "DOCAGNE")?;
    let a = pow2(m as u64) * (2 * m_at(n) - m_at(n + 1));
    let b = pow2(n as u64) * (m_at(m + 1) - 2 * m_at(m));
    Ok(a + b - 3 * u_at(m - n))
}

/// Exact sum of `K(s)` for `s` in `from..=to`; negative indices use the
/// rational extension of K.
pub fn sum_k(from: i64, to: i64) -> Result<Rational, IdentityError> {
    if from > to {
        return Err(SeqError::InvalidRange { from, to }.into());
    }
    let mut total = Rational::zero();
    for s in from..to.min(-1) + 1 {
        total += k_neg(-s)?;
    }
    if to >= 0 {
        let start = from.max(0) as usize;
        let count = (to as usize) - start + 1;
        let sum: Integer = SequenceId::K3
            .recurrence()
            .terms()
            .skip(start)
            .take(count)
            .sum();
        total += Rational::from_integer(sum);
    }
    Ok(total)
}

fn pp4_lhs(t: &TermTable, n: i64, m: i64) -> Integer {
    (0..3).map(|d| t.k(n + d) * t.k(m + d)).sum()
}

fn pp4_rhs(n: i64, m: i64) -> Integer {
    let (un, um) = (n as u64, m as u64);
    21 * pow2(un + um)
        + pow2(un) * (m_at(m + 1) + 3 * m_at(m + 2))
        + pow2(um) * (m_at(n + 1) + 3 * m_at(n + 2))
        // ω₁ω₂ = 1, so ω₁ⁿω₂ᵐ + ω₁ᵐω₂ⁿ = ω₁ⁿ⁻ᵐ + ω₂ⁿ⁻ᵐ = M(n − m)
        + 3 * m_at(n - m)
}

pub fn lhs_pp4(n: u64, m: u64) -> Integer {
    let t = TermTable::new(n.max(m) as usize + 3);
    pp4_lhs(&t, n as i64, m as i64)
}

pub fn rhs_pp4(n: u64, m: u64) -> Integer {
    pp4_rhs(n as i64, m as i64)
}

struct Sides {
    lhs: Rational,
    rhs: Rational,
    note: Option<String>,
}

impl Sides {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        Sides {
            lhs,
            rhs,
            note: None,
        }
    }

    fn ints(lhs: Integer, rhs: Integer) -> Self {
        Sides::new(Rational::from_integer(lhs), Rational::from_integer(rhs))
    }
}

/// Shared, read-only inputs for one check run.
struct Context {
    table: TermTable,
    gf_k: Vec<Integer>,
}

impl Context {
    fn new(id: IdentityId, n_max: u64) -> Self {
        // CATALAN reaches K(2·n_max); T3 reaches K(n_max + 3).
        let len = match id {
            IdentityId::Catalan => 2 * n_max as usize + 1,
            _ => n_max as usize + 4,
        };
        let gf_k = if id == IdentityId::GfK {
            coefficients(&gf_for(SequenceId::K3), n_max as usize + 1).expect("unit denominator")
        } else {
            Vec::new()
        };
        Context {
            table: TermTable::new(len),
            gf_k,
        }
    }
}

fn evaluate(id: IdentityId, tuple: &[i64], cx: &Context) -> Result<Sides, IdentityError> {
    use IdentityId::*;
    let t = &cx.table;
    let n = tuple[0];
    let (jn, jln, kn) = (t.j(n), t.jl(n), t.k(n));
    let p2 = |e: i64| pow2(e as u64);
    let piece = |id| piecewise_expected(id, n).map(int);
    let sides = match id {
        E4 => Sides::ints(3 * jn + jln, p2(n + 1)),
        E5 => Sides::ints(jln - 3 * jn, 2 * t.jl(n - 3)),
        Ec5 => Sides::ints(t.j(n + 2) - 4 * jn, piece(Ec5)?),
        E6 => Sides::ints(jln - 4 * jn, piece(E6)?),
        E7 => Sides::ints(t.jl(n + 1) + jln, 3 * t.j(n + 2)),
        E8 => Sides::ints(jln - t.j(n + 2), piece(E8)?),
        E9 => Sides::ints(t.jl(n - 3) * t.jl(n - 3) + 3 * jn * jln, pow2(2 * n as u64)),
        E10 => Sides::ints((0..=n).map(|k| t.j(k)).sum(), t.j(n + 1) + piece(E10)?),
        E12 => Sides::ints(jln * jln - 9 * jn * jn, p2(n + 2) * t.jl(n - 3)),
        H2J => Sides::new(rat(jn), frac(p2(n + 1) - v_at(n), 7)),
        H2Jl => Sides::new(rat(jln), frac(p2(n + 3) + 3 * v_at(n), 7)),
        Mod1 => Sides::new(
            rat_from_int(m_at(n)),
            frac(int(-(4 * v_at(n + 1) - v_at(n))), 7),
        ),
        KDef => Sides::ints(kn.clone(), jn + 2 * t.j(n - 1) + 6 * t.j(n - 2)),
        Pp1 => Sides::ints(147 * jn, 13 * kn + 48 * t.k(n - 1) + 20 * t.k(n - 2)),
        Pp2 => Sides::ints(6 * kn, 5 * jln + 3 * t.jl(n - 1) - 5 * t.jl(n - 2)),
        Pp3 => Sides::ints(49 * jln, 43 * kn + 8 * t.k(n - 1) + 36 * t.k(n - 2)),
        Pp4 => Sides::ints(pp4_lhs(t, n, tuple[1]), pp4_rhs(n, tuple[1])),
        Pp5 => {
            let lhs = (0..3).map(|d| t.k(n + d) * t.k(n + d)).sum();
            let rhs = 21 * pow2(2 * n as u64) + p2(n + 1) * (m_at(n + 1) + 3 * m_at(n + 2)) + 6;
            Sides::ints(lhs, rhs)
        }
        Catalan => {
            let s = tuple[1];
            Sides::new(
                rat(&(t.k(n + s) * t.k(n - s) - kn * kn)),
                rhs_catalan(n, s)?,
            )
        }
        Cassini => {
            let lhs = t.k(n + 1) * t.k(n - 1) - kn * kn;
            let rhs =
                pow2_rat(n - 1) * rat_from_int(3 * m_at(n + 2) - 5 * m_at(n)) - rat_from_int(3);
            Sides::new(rat(&lhs), rhs)
        }
        DOcagne => {
            // indices are (m, n) here
            let (m, n) = (tuple[0], tuple[1]);
            Sides::ints(
                t.k(m + 1) * t.k(n) - t.k(m) * t.k(n + 1),
                rhs_docagne(m, n)?,
            )
        }
        T1 => {
            let m = tuple[1];
            let rhs = frac(t.k(n + 2) + 2 * kn + t.k(m) - t.k(m + 2), 3);
            Sides::new(sum_k(m, n)?, rhs)
        }
        T2 => Sides::new(sum_k(0, n)?, rat(&(t.k(n + 1) + piece(T2)?))),
        T3 => {
            let lhs: Integer = (0..=n).map(|s| t.jl(s)).sum();
            let rhs = frac(16 * t.k(n + 3) - 5 * t.k(n + 2) + 2 * t.k(n + 1), 49) - Rational::one();
            Sides::new(rat(&lhs), rhs)
        }
        N1 => Sides::new(k_neg(n)?, rat(kn) + pow2_rat(-n) - pow2_rat(n)),
        N2 => {
            let rhs =
                frac(t.k(n + 2) + 2 * kn, 3) - pow2_rat(n + 1) - pow2_rat(-n) + rat_from_int(3);
            Sides::new(sum_k(-n, 0)?, rhs)
        }
        BinetJ | BinetJl | BinetK => {
            let seq = match id {
                BinetJ => SequenceId::J3,
                BinetJl => SequenceId::JL3,
                _ => SequenceId::K3,
            };
            let value = BinetCoefficients::for_seq(seq).eval(n as u64);
            let mut sides = Sides::new(rat(t.get(seq, n)), value.a.clone());
            if !value.is_rational() {
                sides.note = Some(format!("nonzero omega part {}", value.b));
            }
            sides
        }
        GfK => Sides::ints(kn.clone(), cx.gf_k[n as usize].clone()),
    };
    Ok(sides)
}

/// Checks one identity over every in-domain tuple with indices up to
/// `params.n_max` (two-index identities capped at `params.pair_budget`).
pub fn check(id: IdentityId, params: &CheckParams) -> Result<IdentityCheckReport, IdentityError> {
    let domain = id.domain();
    let all = domain.tuples(params.n_max);
    let in_domain = all.len();
    let tuples = if domain.arity() > 1 {
        stratified_sample(all, params.pair_budget)
    } else {
        all
    };
    let exhaustive = tuples.len() == in_domain;
    let cx = Context::new(id, params.n_max);
    let fault = params.inject_fault == Some(id);

    let results: Vec<Result<Option<Failure>, IdentityError>> = tuples
        .par_iter()
        .map(|tuple| {
            let mut sides = evaluate(id, tuple, &cx)?;
            if fault {
                sides.rhs += Rational::one();
            }
            let ok = sides.note.is_none() && sides.lhs == sides.rhs;
            Ok((!ok).then(|| Failure {
                indices: tuple.clone(),
                lhs: sides.lhs,
                rhs: sides.rhs,
                note: sides.note,
            }))
        })
        .collect();
    let failures: Vec<Failure> = results
        .into_iter()
        .filter_map(Result::transpose)
        .collect::<Result<_, _>>()?;

    let checked = tuples.len() as u64;
    let status = if failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(IdentityCheckReport {
        identity: id,
        domain: DomainSummary {
            indices: domain.indices.iter().map(|s| s.to_string()).collect(),
            lower_bounds: domain.lower.clone(),
            constraint: domain.describe(),
            n_max: params.n_max,
            pair_budget: (domain.arity() > 1).then_some(params.pair_budget),
            exhaustive,
        },
        checked,
        skipped: domain.grid_size(params.n_max) - checked,
        vacuous: checked == 0,
        failures,
        status,
    })
}

/// One report per catalog identity, in catalog order.
pub fn check_all(params: &CheckParams) -> Vec<IdentityCheckReport> {
    IdentityId::ALL
        .par_iter()
        .map(|&id| check(id, params).expect("catalog identities evaluate inside their domains"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CycQ;
    use crate::engines::term_iter;

    fn k(n: i64) -> Integer {
        term_iter(SequenceId::K3, n as u64)
    }

    fn single(id: IdentityId, n_max: u64) -> IdentityCheckReport {
        check(id, &CheckParams::new(n_max, 10_000)).unwrap()
    }

    #[test]
    fn catalog_shape() {
        assert_eq!(IdentityId::ALL.len(), 30);
        for &id in IdentityId::ALL {
            assert_eq!(id.label().parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!(
            "docagne".parse::<IdentityId>().unwrap(),
            IdentityId::DOcagne
        );
        assert!(matches!(
            "E11".parse::<IdentityId>(),
            Err(IdentityError::UnknownIdentity(_))
        ));
    }

    #[test]
    fn pp1_witness_at_two() {
        let t = TermTable::new(4);
        assert_eq!(147 * t.j(2), int(147));
        assert_eq!(13 * t.k(2) + 48 * t.k(1) + 20 * t.k(0), int(147));
        let r = single(IdentityId::Pp1, 2);
        assert!(r.passed());
        assert_eq!(r.checked, 1);
        assert_eq!(r.skipped, 2);
    }

    #[test]
    fn cassini_witness_at_two() {
        assert_eq!(k(3) * k(1) - k(2) * k(2), int(1));
        // 2·(3M(4) − 5M(2)) − 3 = 2·(−3 + 5) − 3
        assert_eq!(2 * (3 * m_at(4) - 5 * m_at(2)) - 3, 1);
        assert!(single(IdentityId::Cassini, 2).passed());
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(k(5) * k(1) - k(3) * k(3), int(-69));
        assert_eq!(rhs_catalan(3, 2).unwrap(), rat_from_int(-69));
        for n in 0..20 {
            assert!(rhs_catalan(n, 0).unwrap().is_zero());
        }
        assert_eq!(
            rhs_catalan(2, 1).unwrap(),
            rat(&(k(3) * k(1) - k(2) * k(2)))
        );
        assert!(rhs_catalan(1, 2).is_err());
        let r = single(IdentityId::Catalan, 3);
        assert!(r.passed());
        assert_eq!(r.checked, 10);
        assert!(r.domain.exhaustive);
    }

    #[test]
    fn catalan_rhs_is_integral() {
        for n in 0..60 {
            for s in 0..=n {
                assert!(rhs_catalan(n, s).unwrap().is_integer(), "n = {n}, s = {s}");
            }
        }
    }

    #[test]
    fn e9_witness_at_three() {
        let t = TermTable::new(4);
        assert_eq!(t.jl(0) * t.jl(0), int(4));
        assert_eq!(3 * t.j(3) * t.jl(3), int(60));
        assert!(single(IdentityId::E9, 3).passed());
    }

    #[test]
    fn docagne_examples() {
        assert_eq!(rhs_docagne(2, 1).unwrap(), int(1));
        assert_eq!(rhs_docagne(2, 1).unwrap(), k(3) * k(1) - k(2) * k(2));
        assert_eq!(rhs_docagne(3, 1).unwrap(), int(-15));
        assert_eq!(rhs_docagne(3, 1).unwrap(), k(4) * k(1) - k(3) * k(2));
        for n in 0..30 {
            assert!(rhs_docagne(n, n).unwrap().is_zero());
        }
        assert!(rhs_docagne(1, 2).is_err());
    }

    #[test]
    fn sum_k_examples() {
        assert_eq!(sum_k(0, 3).unwrap(), rat_from_int(17));
        assert_eq!(
            sum_k(0, 3).unwrap(),
            rat(&(k(4) + piecewise_expected(IdentityId::T2, 3).unwrap()))
        );
        assert_eq!(sum_k(0, 2).unwrap(), rat_from_int(7));
        assert_eq!(sum_k(0, 2).unwrap(), rat(&(k(3) - 3)));
        let five_halves = Rational::new(5.into(), 2.into());
        assert_eq!(sum_k(-1, 0).unwrap(), five_halves);
        let n2_rhs = frac(k(3) + 2 * k(1), 3) - rat_from_int(4) - pow2_rat(-1) + rat_from_int(3);
        assert_eq!(n2_rhs, five_halves);
        assert_eq!(
            sum_k(-3, -2).unwrap(),
            k_neg(3).unwrap() + k_neg(2).unwrap()
        );
        assert!(sum_k(2, 1).is_err());
    }

    #[test]
    fn pp4_examples() {
        assert_eq!(lhs_pp4(0, 1), int(36));
        assert_eq!(rhs_pp4(0, 1), int(36));
        assert_eq!(lhs_pp4(0, 0), int(19));
        assert_eq!(rhs_pp4(0, 0), int(19));
        for n in 0..=300u64 {
            let pp5 =
                21 * pow2(2 * n) + pow2(n + 1) * (m_at(n as i64 + 1) + 3 * m_at(n as i64 + 2)) + 6;
            assert_eq!(rhs_pp4(n, n), pp5);
        }
    }

    #[test]
    fn pp4_cross_term_in_cyclotomic_field() {
        let (w1, w2) = (CycQ::omega(), CycQ::omega2());
        for n in 0..12u64 {
            for m in 0..12u64 {
                let x = &(&w1.pow(n) * &w2.pow(m)) + &(&w1.pow(m) * &w2.pow(n));
                assert_eq!(x, CycQ::from_ints(m_at(n as i64 - m as i64), 0));
            }
        }
    }

    #[test]
    fn piecewise_examples() {
        assert_eq!(piecewise_expected(IdentityId::E6, 0).unwrap(), 2);
        assert_eq!(piecewise_expected(IdentityId::E8, 5).unwrap(), 0);
        assert_eq!(piecewise_expected(IdentityId::Ec5, 4).unwrap(), -2);
        assert_eq!(piecewise_expected(IdentityId::E10, 3).unwrap(), -1);
        assert_eq!(piecewise_expected(IdentityId::T2, 2).unwrap(), -3);
        assert!(matches!(
            piecewise_expected(IdentityId::E4, 0),
            Err(IdentityError::NotPiecewise(_))
        ));
        assert!(IdentityId::ALL
            .iter()
            .all(|&id| id.is_piecewise() == piecewise_expected(id, 0).is_ok()));
    }

    #[test]
    fn vacuous_reports() {
        let reports = check_all(&CheckParams::new(0, 1));
        assert_eq!(reports.len(), IdentityId::ALL.len());
        let e5 = &reports[1];
        assert_eq!(e5.identity, IdentityId::E5);
        assert!(e5.vacuous && e5.passed() && e5.checked == 0);
        assert_eq!(e5.skipped, 1);
        for r in &reports {
            assert!(r.passed(), "{}", r.identity);
            let lower = r.domain.lower_bounds[0];
            assert_eq!(r.vacuous, lower > 0, "{}", r.identity);
        }
    }

    #[test]
    fn small_run_all_pass() {
        let reports = check_all(&CheckParams::new(10, 100));
        let order: Vec<_> = reports.iter().map(|r| r.identity).collect();
        assert_eq!(order, IdentityId::ALL);
        for r in &reports {
            assert!(r.passed() && !r.vacuous, "{}: {:?}", r.identity, r.failures);
        }
    }

    #[test]
    fn pair_budget_subsamples_deterministically() {
        let params = CheckParams::new(40, 100);
        let a = check(IdentityId::Pp4, &params).unwrap();
        let b = check(IdentityId::Pp4, &params).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.checked, 100);
        assert_eq!(a.skipped, 41 * 41 - 100);
        assert!(!a.domain.exhaustive);
    }

    #[test]
    fn tuples_stay_inside_domains() {
        for &id in IdentityId::ALL {
            let d = id.domain();
            let tuples = d.tuples(12);
            assert!(tuples.iter().all(|t| d.contains(t)), "{id}");
            let grid = d.grid_size(12) as usize;
            assert!(tuples.len() <= grid);
        }
        let cat = IdentityId::Catalan.domain();
        assert!(!cat.contains(&[2, 3]) && cat.contains(&[3, 3]));
        assert!(!IdentityId::E5.domain().contains(&[2]));
    }

    #[test]
    fn stratified_sample_spreads() {
        let tuples: Vec<Vec<i64>> = (0..10).map(|i| vec![i]).collect();
        let picked = stratified_sample(tuples.clone(), 4);
        assert_eq!(picked, vec![vec![0], vec![2], vec![5], vec![7]]);
        assert_eq!(stratified_sample(tuples.clone(), 20), tuples);
        assert!(stratified_sample(tuples, 0).is_empty());
    }

    #[test]
    fn injected_fault_is_reported_with_exact_values() {
        let mut params = CheckParams::new(5, 100);
        params.inject_fault = Some(IdentityId::Cassini);
        let r = check(IdentityId::Cassini, &params).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failures.len(), 5);
        let f = &r.failures[1];
        assert_eq!(f.indices, vec![2]);
        assert_eq!(f.lhs, rat_from_int(1));
        assert_eq!(f.rhs, rat_from_int(2));
        // other identities unaffected
        assert!(check(IdentityId::E4, &params).unwrap().passed());
    }

    #[test]
    fn report_json_roundtrip() {
        let mut params = CheckParams::new(4, 10);
        params.inject_fault = Some(IdentityId::N1);
        let r = check(IdentityId::N1, &params).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#""lhs":"-1/2""#), "{text}");
        assert!(text.contains(r#""rhs":"1/2""#), "{text}");
        let back: IdentityCheckReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
