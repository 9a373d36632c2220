//! c-semirings: the carrier values, the four catalog instances and their
//! induced order.
//!
//! Every instance is addressed at runtime through [`SemiringKind`], and every
//! value carries its instance tag in [`Value`]. Mixing values of different
//! instances is reported as [`SemiringError::InstanceMismatch`] rather than
//! silently comparing unequal.
//!
//! | key        | carrier                  | plus   | times  | zero      | one     |
//! |------------|--------------------------|--------|--------|-----------|---------|
//! | `csp`      | `{false, true}`          | or     | and    | `false`   | `true`  |
//! | `fcsp`     | rationals in `[0, 1]`    | max    | min    | `0`       | `1`     |
//! | `wcsp`     | naturals and `inf`       | min    | +      | `inf`     | `0`     |
//! | `costpair` | pairs of the above       | min'   | +'     | `[inf,inf]` | `[0,0]` |

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;
use core::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringError {
    #[error("value {value} does not belong to the {expected} semiring")]
    InstanceMismatch { expected: SemiringKind, value: Value },
    #[error("unknown semiring instance `{0}` (expected one of csp, fcsp, wcsp, costpair)")]
    UnknownInstance(String),
    #[error("cannot parse `{text}` as a {kind} value")]
    BadLiteral { kind: SemiringKind, text: String },
    #[error("fuzzy value {0} lies outside [0, 1]")]
    FuzzyOutOfRange(String),
}

/// A natural number or the distinguished `+∞`.
///
/// `Finite` sorts before `Infinite`, so the derived order is the usual order
/// on `ℕ ∪ {+∞}`. Addition saturates: anything plus `+∞` (or an overflowing
/// sum) is `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cost {
    Finite(u64),
    Infinite,
}

impl Cost {
    pub const ZERO: Cost = Cost::Finite(0);

    pub fn is_infinite(self) -> bool {
        matches!(self, Cost::Infinite)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Cost::Finite(n) => Some(n),
            Cost::Infinite => None,
        }
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => a.checked_add(b).map_or(Cost::Infinite, Cost::Finite),
            _ => Cost::Infinite,
        }
    }
}

impl From<u64> for Cost {
    fn from(n: u64) -> Self {
        Cost::Finite(n)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(n) => write!(f, "{n}"),
            Cost::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Cost {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s.trim() {
            "inf" | "+inf" | "∞" | "+∞" => Ok(Cost::Infinite),
            t => t.parse::<u64>().map(Cost::Finite).map_err(|_| ()),
        }
    }
}

/// A (time, energy) cost vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CostPair {
    pub time: Cost,
    pub energy: Cost,
}

impl CostPair {
    /// Unit of the pairwise sum.
    pub const ZERO: CostPair = CostPair {
        time: Cost::ZERO,
        energy: Cost::ZERO,
    };
    /// Unit of the pairwise min.
    pub const INFINITE: CostPair = CostPair {
        time: Cost::Infinite,
        energy: Cost::Infinite,
    };

    pub fn new(time: u64, energy: u64) -> Self {
        CostPair {
            time: Cost::Finite(time),
            energy: Cost::Finite(energy),
        }
    }

    pub fn componentwise_min(self, other: CostPair) -> CostPair {
        CostPair {
            time: self.time.min(other.time),
            energy: self.energy.min(other.energy),
        }
    }
}

impl Add for CostPair {
    type Output = CostPair;

    fn add(self, rhs: CostPair) -> CostPair {
        CostPair {
            time: self.time + rhs.time,
            energy: self.energy + rhs.energy,
        }
    }
}

impl fmt::Display for CostPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.time, self.energy)
    }
}

impl FromStr for CostPair {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .or_else(|| s.strip_prefix('<').and_then(|r| r.strip_suffix('>')))
            .ok_or(())?;
        let (t, e) = inner.split_once(',').ok_or(())?;
        Ok(CostPair {
            time: t.parse()?,
            energy: e.parse()?,
        })
    }
}

/// An exact fuzzy level in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fuzzy(Ratio<u64>);

impl Fuzzy {
    pub const ZERO: Fuzzy = Fuzzy(Ratio::new_raw(0, 1));
    pub const ONE: Fuzzy = Fuzzy(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Result<Self, SemiringError> {
        if denom == 0 || numer > denom {
            return Err(SemiringError::FuzzyOutOfRange(format!("{numer}/{denom}")));
        }
        Ok(Fuzzy(Ratio::new(numer, denom)))
    }

    pub fn numer(self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(self) -> u64 {
        *self.0.denom()
    }
}

impl fmt::Display for Fuzzy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Fuzzy {
    type Err = SemiringError;

    /// Accepts `n/d`, a plain integer, or a finite decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self, SemiringError> {
        let s = s.trim();
        let bad = || SemiringError::BadLiteral {
            kind: SemiringKind::Fcsp,
            text: s.to_string(),
        };
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return Fuzzy::new(n, d);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 18 {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let denom = 10u64.pow(frac.len() as u32);
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let numer = int
            .checked_mul(denom)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Fuzzy::new(numer, denom)
    }
}

/// The c-semiring instances known to the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemiringKind {
    /// Classical constraints: `⟨{false,true}, ∨, ∧, false, true⟩`.
    Csp,
    /// Fuzzy constraints: `⟨[0,1], max, min, 0, 1⟩`.
    Fcsp,
    /// Weighted constraints: `⟨ℕ ∪ {+∞}, min, +, +∞, 0⟩`.
    Wcsp,
    /// Time/energy costs: `⟨(ℕ ∪ {+∞})², min', +', ⟨∞,∞⟩, ⟨0,0⟩⟩`.
    CostPair,
}

/// A semiring value tagged with the instance it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Bool(bool),
    Fuzzy(Fuzzy),
    Weight(Cost),
    Pair(CostPair),
}

impl Value {
    pub fn kind(&self) -> SemiringKind {
        match self {
            Value::Bool(_) => SemiringKind::Csp,
            Value::Fuzzy(_) => SemiringKind::Fcsp,
            Value::Weight(_) => SemiringKind::Wcsp,
            Value::Pair(_) => SemiringKind::CostPair,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Fuzzy(v) => write!(f, "{v}"),
            Value::Weight(c) => write!(f, "{c}"),
            Value::Pair(p) => write!(f, "{p}"),
        }
    }
}

/// Every catalog instance, in key order of [`SemiringKind::key`].
pub const CATALOG: [SemiringKind; 4] = [
    SemiringKind::Csp,
    SemiringKind::Fcsp,
    SemiringKind::Wcsp,
    SemiringKind::CostPair,
];

/// The named catalog of instances.
pub fn instance_catalog() -> &'static [SemiringKind] {
    &CATALOG
}

impl SemiringKind {
    pub fn key(self) -> &'static str {
        match self {
            SemiringKind::Csp => "csp",
            SemiringKind::Fcsp => "fcsp",
            SemiringKind::Wcsp => "wcsp",
            SemiringKind::CostPair => "costpair",
        }
    }

    pub fn lookup(key: &str) -> Result<SemiringKind, SemiringError> {
        CATALOG
            .iter()
            .copied()
            .find(|k| k.key() == key.trim())
            .ok_or_else(|| SemiringError::UnknownInstance(key.to_string()))
    }

    pub fn zero(self) -> Value {
        match self {
            SemiringKind::Csp => Value::Bool(false),
            SemiringKind::Fcsp => Value::Fuzzy(Fuzzy::ZERO),
            SemiringKind::Wcsp => Value::Weight(Cost::Infinite),
            SemiringKind::CostPair => Value::Pair(CostPair::INFINITE),
        }
    }

    pub fn one(self) -> Value {
        match self {
            SemiringKind::Csp => Value::Bool(true),
            SemiringKind::Fcsp => Value::Fuzzy(Fuzzy::ONE),
            SemiringKind::Wcsp => Value::Weight(Cost::ZERO),
            SemiringKind::CostPair => Value::Pair(CostPair::ZERO),
        }
    }

    pub fn contains(self, v: &Value) -> bool {
        v.kind() == self
    }

    pub fn check(self, v: &Value) -> Result<(), SemiringError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(SemiringError::InstanceMismatch {
                expected: self,
                value: *v,
            })
        }
    }

    fn mismatch(self, a: &Value, b: &Value) -> SemiringError {
        let value = if self.contains(a) { *b } else { *a };
        SemiringError::InstanceMismatch { expected: self, value }
    }

    /// The additive (choice) operation.
    pub fn plus(self, a: &Value, b: &Value) -> Result<Value, SemiringError> {
        Ok(match (self, a, b) {
            (SemiringKind::Csp, Value::Bool(x), Value::Bool(y)) => Value::Bool(*x || *y),
            (SemiringKind::Fcsp, Value::Fuzzy(x), Value::Fuzzy(y)) => Value::Fuzzy(*x.max(y)),
            (SemiringKind::Wcsp, Value::Weight(x), Value::Weight(y)) => Value::Weight(*x.min(y)),
            (SemiringKind::CostPair, Value::Pair(x), Value::Pair(y)) => Value::Pair(x.componentwise_min(*y)),
            _ => return Err(self.mismatch(a, b)),
        })
    }

    /// The multiplicative (combination) operation.
    pub fn times(self, a: &Value, b: &Value) -> Result<Value, SemiringError> {
        Ok(match (self, a, b) {
            (SemiringKind::Csp, Value::Bool(x), Value::Bool(y)) => Value::Bool(*x && *y),
            (SemiringKind::Fcsp, Value::Fuzzy(x), Value::Fuzzy(y)) => Value::Fuzzy(*x.min(y)),
            (SemiringKind::Wcsp, Value::Weight(x), Value::Weight(y)) => Value::Weight(*x + *y),
            (SemiringKind::CostPair, Value::Pair(x), Value::Pair(y)) => Value::Pair(*x + *y),
            _ => return Err(self.mismatch(a, b)),
        })
    }

    /// `a ≤ b` iff `a + b = b`: `b` is at least as good as `a`.
    pub fn leq(self, a: &Value, b: &Value) -> Result<bool, SemiringError> {
        Ok(self.plus(a, b)? == *b)
    }

    /// Equality that refuses to compare values of different instances.
    pub fn value_eq(self, a: &Value, b: &Value) -> Result<bool, SemiringError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a == b)
    }

    /// `Some(ordering)` in the semiring order, `None` when incomparable.
    pub fn compare(self, a: &Value, b: &Value) -> Result<Option<Ordering>, SemiringError> {
        Ok(match (self.leq(a, b)?, self.leq(b, a)?) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        })
    }

    pub fn sum<'a>(self, values: impl IntoIterator<Item = &'a Value>) -> Result<Value, SemiringError> {
        values.into_iter().try_fold(self.zero(), |acc, v| self.plus(&acc, v))
    }

    pub fn product<'a>(self, values: impl IntoIterator<Item = &'a Value>) -> Result<Value, SemiringError> {
        values.into_iter().try_fold(self.one(), |acc, v| self.times(&acc, v))
    }

    /// Parses a literal in the syntax of this instance: `true`/`false`,
    /// `0.3` or `3/10`, `7` or `inf`, `[2,4]`.
    pub fn parse_value(self, text: &str) -> Result<Value, SemiringError> {
        let t = text.trim();
        let bad = || SemiringError::BadLiteral {
            kind: self,
            text: t.to_string(),
        };
        match self {
            SemiringKind::Csp => match t {
                "true" => Ok(Value::Bool(true)),
                "false" => Ok(Value::Bool(false)),
                _ => Err(bad()),
            },
            SemiringKind::Fcsp => t.parse().map(Value::Fuzzy),
            SemiringKind::Wcsp => t.parse().map(Value::Weight).map_err(|_| bad()),
            SemiringKind::CostPair => t.parse().map(Value::Pair).map_err(|_| bad()),
        }
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for SemiringKind {
    type Err = SemiringError;

    fn from_str(s: &str) -> Result<Self, SemiringError> {
        SemiringKind::lookup(s)
    }
}
