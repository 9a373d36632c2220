//! Soft constraints as elements of a named c-semiring.
//!
//! A [`SoftConstraint`] is a dense table over a finite *declared* support:
//! one semiring value per assignment of domain values to the support names.
//! Names outside the declared support never influence the value. The
//! [`SoftConstraint::support`] method computes the *minimal* support, i.e.
//! the declared names the table actually varies in.
//!
//! Rows are laid out in mixed radix over the support sorted by name, first
//! name most significant, domain values in declaration order.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

use thiserror::Error;

use crate::semiring::{SemiringError, SemiringKind, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error(transparent)]
    Semiring(#[from] SemiringError),
    #[error("table is missing {missing} of {expected} rows")]
    IncompleteTable { missing: usize, expected: usize },
    #[error("row {0:?} appears more than once")]
    DuplicateRow(Vec<String>),
    #[error("row has {got} values but the support has {expected} names")]
    RowArity { expected: usize, got: usize },
    #[error("`{0}` is not a value of the domain")]
    UnknownValue(String),
    #[error("domain value `{0}` is declared twice")]
    DuplicateDomainValue(String),
    #[error("name `{0}` appears twice in the support")]
    DuplicateName(Name),
    #[error("assignment does not bind support name `{0}`")]
    Unbound(Name),
    #[error("constraints over different semirings ({0} and {1})")]
    KindMismatch(SemiringKind, SemiringKind),
    #[error("constraints over different domains")]
    DomainMismatch,
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("fusion of `{0}` with itself")]
    DegenerateFusion(Name),
}

/// A variable name. Names are totally ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(String);

impl Name {
    pub fn new(s: impl Into<String>) -> Self {
        Name(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name(s.to_owned())
    }
}

impl From<String> for Name {
    fn from(s: String) -> Self {
        Name(s)
    }
}

impl Borrow<str> for Name {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The finite domain `D` every name ranges over, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Domain(Vec<String>);

impl Domain {
    pub fn new<S: Into<String>>(values: impl IntoIterator<Item = S>) -> Result<Self, ConstraintError> {
        let values: Vec<String> = values.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for v in &values {
            if !seen.insert(v.as_str()) {
                return Err(ConstraintError::DuplicateDomainValue(v.clone()));
            }
        }
        Ok(Domain(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, value: &str) -> Option<usize> {
        self.0.iter().position(|v| v == value)
    }
}

/// A finite-kernel permutation of names, stored as its kernel.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Permutation {
    map: BTreeMap<Name, Name>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation::default()
    }

    /// Builds a permutation from explicit `x ↦ ρ(x)` pairs. Identity pairs are
    /// dropped; the rest must be a bijection of the kernel onto itself.
    pub fn from_pairs<N: Into<Name>>(pairs: impl IntoIterator<Item = (N, N)>) -> Result<Self, ConstraintError> {
        let mut map = BTreeMap::new();
        for (from, to) in pairs {
            let (from, to) = (from.into(), to.into());
            if map.contains_key(&from) {
                return Err(ConstraintError::InvalidPermutation(alloc::format!(
                    "`{from}` mapped twice"
                )));
            }
            if from != to {
                map.insert(from, to);
            }
        }
        let images: BTreeSet<&Name> = map.values().collect();
        if images.len() != map.len() {
            return Err(ConstraintError::InvalidPermutation("two names share an image".into()));
        }
        if let Some(stray) = images.iter().find(|n| !map.contains_key(**n)) {
            return Err(ConstraintError::InvalidPermutation(alloc::format!(
                "`{stray}` is an image but is not moved"
            )));
        }
        Ok(Permutation { map })
    }

    /// The transposition exchanging `a` and `b`.
    pub fn swap(a: impl Into<Name>, b: impl Into<Name>) -> Self {
        let (a, b) = (a.into(), b.into());
        Permutation::from_pairs([(a.clone(), b.clone()), (b, a)]).expect("a transposition is a permutation")
    }

    /// Completes an injective partial renaming into a permutation.
    ///
    /// Names that become images without being renamed themselves are sent,
    /// in ascending order, to the renamed names that were freed up.
    pub fn renaming<N: Into<Name>>(pairs: impl IntoIterator<Item = (N, N)>) -> Result<Self, ConstraintError> {
        let mut map: BTreeMap<Name, Name> = BTreeMap::new();
        for (from, to) in pairs {
            let (from, to) = (from.into(), to.into());
            if map.insert(from.clone(), to).is_some() {
                return Err(ConstraintError::InvalidPermutation(alloc::format!(
                    "`{from}` renamed twice"
                )));
            }
        }
        let images: BTreeSet<Name> = map.values().cloned().collect();
        if images.len() != map.len() {
            return Err(ConstraintError::InvalidPermutation("renaming is not injective".into()));
        }
        let sources: BTreeSet<Name> = map.keys().cloned().collect();
        let dangling = images.difference(&sources).cloned();
        let freed = sources.difference(&images).cloned();
        let closing: Vec<(Name, Name)> = dangling.zip(freed).collect();
        Permutation::from_pairs(map.into_iter().chain(closing))
    }

    pub fn apply(&self, name: &Name) -> Name {
        self.map.get(name).unwrap_or(name).clone()
    }

    /// Names moved by the permutation.
    pub fn kernel(&self) -> impl Iterator<Item = &Name> {
        self.map.keys()
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let names: BTreeSet<&Name> = self.map.keys().chain(other.map.keys()).collect();
        let pairs = names.into_iter().map(|n| (n.clone(), self.apply(&other.apply(n))));
        Permutation::from_pairs(pairs).expect("composition of permutations is a permutation")
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }
}

/// A binding of names to domain values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment(BTreeMap<Name, String>);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn with(mut self, name: impl Into<Name>, value: impl Into<String>) -> Self {
        self.0.insert(name.into(), value.into());
        self
    }

    pub fn get(&self, name: &Name) -> Option<&str> {
        self.0.get(name).map(String::as_str)
    }
}

impl<N: Into<Name>, V: Into<String>> FromIterator<(N, V)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (N, V)>>(iter: I) -> Self {
        Assignment(iter.into_iter().map(|(n, v)| (n.into(), v.into())).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoftConstraint {
    kind: SemiringKind,
    domain: Domain,
    support: Vec<Name>,
    table: Vec<Value>,
}

/// Calls `f` on every digit vector of length `arity` over `base`, in row order.
fn for_each_row(arity: usize, base: usize, mut f: impl FnMut(&[usize])) {
    let mut digits = alloc::vec![0usize; arity];
    if arity > 0 && base == 0 {
        return;
    }
    loop {
        f(&digits);
        let mut i = arity;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < base {
                break;
            }
            digits[i] = 0;
        }
    }
}

impl SoftConstraint {
    /// Tabulates `f` over all assignments of `support` (which must be sorted
    /// and duplicate-free).
    fn tabulate(
        kind: SemiringKind,
        domain: Domain,
        support: Vec<Name>,
        mut f: impl FnMut(&[usize]) -> Result<Value, ConstraintError>,
    ) -> Result<Self, ConstraintError> {
        debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
        let mut table = Vec::with_capacity(domain.len().pow(support.len() as u32));
        let mut err = None;
        for_each_row(support.len(), domain.len(), |digits| {
            if err.is_none() {
                match f(digits) {
                    Ok(v) => table.push(v),
                    Err(e) => err = Some(e),
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(SoftConstraint {
                kind,
                domain,
                support,
                table,
            }),
        }
    }

    /// Builds a constraint from explicit rows, one per assignment of `support`.
    ///
    /// Each row lists domain values in the order of `support` as given here.
    pub fn from_rows<N, S>(
        kind: SemiringKind,
        domain: Domain,
        support: impl IntoIterator<Item = N>,
        rows: impl IntoIterator<Item = (Vec<S>, Value)>,
    ) -> Result<Self, ConstraintError>
    where
        N: Into<Name>,
        S: AsRef<str>,
    {
        let given: Vec<Name> = support.into_iter().map(Into::into).collect();
        let mut sorted = given.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(ConstraintError::DuplicateName(w[0].clone()));
        }
        // position in `sorted` of each column of the given rows
        let column_slot: Vec<usize> = given.iter().map(|n| sorted.binary_search(n).unwrap()).collect();

        let mut cells: BTreeMap<Vec<usize>, Value> = BTreeMap::new();
        for (assign, value) in rows {
            if assign.len() != given.len() {
                return Err(ConstraintError::RowArity {
                    expected: given.len(),
                    got: assign.len(),
                });
            }
            kind.check(&value)?;
            let mut digits = alloc::vec![0; given.len()];
            for (col, v) in assign.iter().enumerate() {
                let v = v.as_ref();
                digits[column_slot[col]] = domain
                    .index_of(v)
                    .ok_or_else(|| ConstraintError::UnknownValue(v.to_owned()))?;
            }
            if cells.insert(digits, value).is_some() {
                return Err(ConstraintError::DuplicateRow(
                    assign.iter().map(|s| s.as_ref().to_owned()).collect(),
                ));
            }
        }
        let expected = domain.len().pow(given.len() as u32);
        if cells.len() != expected {
            return Err(ConstraintError::IncompleteTable {
                missing: expected - cells.len(),
                expected,
            });
        }
        Self::tabulate(kind, domain, sorted, |digits| Ok(cells[digits]))
    }

    /// Builds a constraint by evaluating `f` on every assignment of `support`.
    /// `f` receives domain values in ascending name order.
    pub fn from_fn<N: Into<Name>>(
        kind: SemiringKind,
        domain: Domain,
        support: impl IntoIterator<Item = N>,
        mut f: impl FnMut(&[&str]) -> Value,
    ) -> Result<Self, ConstraintError> {
        let mut support: Vec<Name> = support.into_iter().map(Into::into).collect();
        support.sort();
        if let Some(w) = support.windows(2).find(|w| w[0] == w[1]) {
            return Err(ConstraintError::DuplicateName(w[0].clone()));
        }
        let values = domain.clone();
        Self::tabulate(kind, domain, support, |digits| {
            let args: Vec<&str> = digits.iter().map(|&d| values.values()[d].as_str()).collect();
            let v = f(&args);
            kind.check(&v)?;
            Ok(v)
        })
    }

    /// The constant constraint with empty support.
    pub fn constant(kind: SemiringKind, domain: Domain, value: Value) -> Result<Self, ConstraintError> {
        kind.check(&value)?;
        Ok(SoftConstraint {
            kind,
            domain,
            support: Vec::new(),
            table: alloc::vec![value],
        })
    }

    /// `1'`: every assignment gets the semiring unit.
    pub fn unit(kind: SemiringKind, domain: Domain) -> Self {
        SoftConstraint {
            kind,
            domain,
            support: Vec::new(),
            table: alloc::vec![kind.one()],
        }
    }

    /// `0'`: every assignment gets the semiring zero.
    pub fn zero(kind: SemiringKind, domain: Domain) -> Self {
        SoftConstraint {
            kind,
            domain,
            support: Vec::new(),
            table: alloc::vec![kind.zero()],
        }
    }

    /// The fusion `x = y`: one on the diagonal, zero elsewhere.
    pub fn fusion(
        x: impl Into<Name>,
        y: impl Into<Name>,
        kind: SemiringKind,
        domain: Domain,
    ) -> Result<Self, ConstraintError> {
        let (x, y) = (x.into(), y.into());
        if x == y {
            return Err(ConstraintError::DegenerateFusion(x));
        }
        let mut support = alloc::vec![x, y];
        support.sort();
        Self::tabulate(kind, domain, support, |d| {
            Ok(if d[0] == d[1] { kind.one() } else { kind.zero() })
        })
    }

    pub fn kind(&self) -> SemiringKind {
        self.kind
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// The support this constraint was built over, sorted by name.
    pub fn declared_support(&self) -> &[Name] {
        &self.support
    }

    /// Rows as (domain values in declared-support order, value).
    pub fn rows(&self) -> impl Iterator<Item = (Vec<&str>, &Value)> + '_ {
        let mut assigns = Vec::with_capacity(self.table.len());
        for_each_row(self.support.len(), self.domain.len(), |digits| {
            assigns.push(
                digits
                    .iter()
                    .map(|&d| self.domain.values()[d].as_str())
                    .collect::<Vec<_>>(),
            );
        });
        assigns.into_iter().zip(self.table.iter())
    }

    fn row_index(&self, digits: impl IntoIterator<Item = usize>) -> usize {
        let base = self.domain.len();
        digits.into_iter().fold(0, |acc, d| acc * base + d)
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<Value, ConstraintError> {
        let mut digits = Vec::with_capacity(self.support.len());
        for name in &self.support {
            let v = assignment
                .get(name)
                .ok_or_else(|| ConstraintError::Unbound(name.clone()))?;
            digits.push(
                self.domain
                    .index_of(v)
                    .ok_or_else(|| ConstraintError::UnknownValue(v.to_owned()))?,
            );
        }
        Ok(self.table[self.row_index(digits)])
    }

    fn check_compatible(&self, other: &SoftConstraint) -> Result<(), ConstraintError> {
        if self.kind != other.kind {
            return Err(ConstraintError::KindMismatch(self.kind, other.kind));
        }
        if self.domain != other.domain {
            return Err(ConstraintError::DomainMismatch);
        }
        Ok(())
    }

    /// Slots of `self.support` inside a sorted superset `names`.
    fn slots_in(&self, names: &[Name]) -> Vec<usize> {
        self.support
            .iter()
            .map(|n| names.binary_search(n).expect("support is a subset"))
            .collect()
    }

    fn pointwise(
        &self,
        other: &SoftConstraint,
        op: impl Fn(&Value, &Value) -> Result<Value, SemiringError>,
    ) -> Result<SoftConstraint, ConstraintError> {
        self.check_compatible(other)?;
        let union: BTreeSet<Name> = self.support.iter().chain(&other.support).cloned().collect();
        let union: Vec<Name> = union.into_iter().collect();
        let (ls, rs) = (self.slots_in(&union), other.slots_in(&union));
        Self::tabulate(self.kind, self.domain.clone(), union, |d| {
            let a = &self.table[self.row_index(ls.iter().map(|&s| d[s]))];
            let b = &other.table[other.row_index(rs.iter().map(|&s| d[s]))];
            Ok(op(a, b)?)
        })
    }

    /// `self ⊗ other`: pointwise semiring product over the union of supports.
    pub fn combine(&self, other: &SoftConstraint) -> Result<SoftConstraint, ConstraintError> {
        let k = self.kind;
        self.pointwise(other, |a, b| k.times(a, b))
    }

    /// `self +' other`: pointwise semiring sum over the union of supports.
    pub fn csum(&self, other: &SoftConstraint) -> Result<SoftConstraint, ConstraintError> {
        let k = self.kind;
        self.pointwise(other, |a, b| k.plus(a, b))
    }

    /// `νx.self`: sums `x` out, choosing its best value.
    pub fn hide(&self, x: &Name) -> SoftConstraint {
        let Ok(pos) = self.support.binary_search(x) else {
            return self.clone();
        };
        let mut support = self.support.clone();
        support.remove(pos);
        let n = self.domain.len();
        Self::tabulate(self.kind, self.domain.clone(), support, |d| {
            let mut acc = self.kind.zero();
            for v in 0..n {
                let full = d[..pos]
                    .iter()
                    .copied()
                    .chain(core::iter::once(v))
                    .chain(d[pos..].iter().copied());
                acc = self.kind.plus(&acc, &self.table[self.row_index(full)])?;
            }
            Ok(acc)
        })
        .expect("hiding stays within one semiring")
    }

    /// Re-indexes the table through a name map on the support. The result
    /// satisfies `c'(η) = c(η ∘ map)`; several names may map to the same one.
    fn reindex(&self, map: impl Fn(&Name) -> Name) -> SoftConstraint {
        let images: Vec<Name> = self.support.iter().map(&map).collect();
        let support: Vec<Name> = images.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let slots: Vec<usize> = images.iter().map(|n| support.binary_search(n).unwrap()).collect();
        Self::tabulate(self.kind, self.domain.clone(), support, |d| {
            Ok(self.table[self.row_index(slots.iter().map(|&s| d[s]))])
        })
        .expect("re-indexing stays within one semiring")
    }

    /// `ρ̂ self`, defined by `(ρ̂ c)η = c η'` with `η'(x) = η(ρ(x))`.
    pub fn permute(&self, rho: &Permutation) -> SoftConstraint {
        self.reindex(|n| rho.apply(n))
    }

    /// `self` with every occurrence of `from` reading the value of `to`:
    /// `c'(η) = c(η[from ↦ η(to)])`.
    pub(crate) fn substitute(&self, from: &Name, to: &Name) -> SoftConstraint {
        self.reindex(|n| if n == from { to.clone() } else { n.clone() })
    }

    /// Minimal support: declared names along which the table is not constant.
    pub fn support(&self) -> BTreeSet<Name> {
        let n = self.domain.len();
        let arity = self.support.len();
        let mut varies = alloc::vec![false; arity];
        let mut row = 0usize;
        for_each_row(arity, n, |d| {
            let value = &self.table[row];
            row += 1;
            for (axis, flag) in varies.iter_mut().enumerate() {
                if !*flag && d[axis] != 0 {
                    let base = self.row_index(d.iter().enumerate().map(|(i, &v)| if i == axis { 0 } else { v }));
                    if self.table[base] != *value {
                        *flag = true;
                    }
                }
            }
        });
        self.support
            .iter()
            .zip(varies)
            .filter(|(_, v)| *v)
            .map(|(n, _)| n.clone())
            .collect()
    }

    /// The same function over its minimal support.
    pub fn minimize(&self) -> SoftConstraint {
        let keep = self.support();
        if keep.len() == self.support.len() {
            return self.clone();
        }
        // Every dropped name is irrelevant, so reading its slice at value 0 is exact.
        let support: Vec<Name> = keep.into_iter().collect();
        let slots: Vec<Option<usize>> = self.support.iter().map(|n| support.binary_search(n).ok()).collect();
        Self::tabulate(self.kind, self.domain.clone(), support, |d| {
            Ok(self.table[self.row_index(slots.iter().map(|s| s.map_or(0, |s| d[s])))])
        })
        .expect("restriction stays within one semiring")
    }

    /// Semantic equality: same function on every assignment, whatever the
    /// declared supports.
    pub fn equivalent(&self, other: &SoftConstraint) -> Result<bool, ConstraintError> {
        self.check_compatible(other)?;
        Ok(self.minimize() == other.minimize())
    }
}

/// Checks of the named c-semiring axioms on concrete constraints.
///
/// Each check returns `Ok(None)` when its side condition does not hold (the
/// law says nothing), `Ok(Some(holds))` otherwise.
pub mod laws {
    use super::*;

    type Check = Result<Option<bool>, ConstraintError>;

    /// FUSE: `(x=y) ⊗ c` equals `(x=y) ⊗ [y/x]c`.
    pub fn fuse(x: &Name, y: &Name, c: &SoftConstraint) -> Check {
        if x == y {
            return Ok(None);
        }
        let eq = SoftConstraint::fusion(x.clone(), y.clone(), c.kind, c.domain.clone())?;
        let lhs = eq.combine(c)?;
        let rhs = eq.combine(&c.substitute(y, x))?;
        Ok(Some(lhs.equivalent(&rhs)?))
    }

    /// HIDE: `νx.1 = 1`.
    pub fn hide_unit(x: &Name, kind: SemiringKind, domain: &Domain) -> Check {
        let one = SoftConstraint::unit(kind, domain.clone());
        Ok(Some(one.hide(x).equivalent(&one)?))
    }

    /// HIDE: `νx.νy.c = νy.νx.c`.
    pub fn hide_commutes(x: &Name, y: &Name, c: &SoftConstraint) -> Check {
        Ok(Some(c.hide(y).hide(x).equivalent(&c.hide(x).hide(y))?))
    }

    /// HIDE: `νx.(c ⊗ d) = c ⊗ νx.d` when `x ∉ supp(c)`.
    pub fn hide_combine(x: &Name, c: &SoftConstraint, d: &SoftConstraint) -> Check {
        if c.support().contains(x) {
            return Ok(None);
        }
        Ok(Some(c.combine(d)?.hide(x).equivalent(&c.combine(&d.hide(x))?)?))
    }

    /// HIDE: `νx.(c +' d) = c +' νx.d` when `x ∉ supp(c)`.
    pub fn hide_sum(x: &Name, c: &SoftConstraint, d: &SoftConstraint) -> Check {
        if c.support().contains(x) {
            return Ok(None);
        }
        Ok(Some(c.csum(d)?.hide(x).equivalent(&c.csum(&d.hide(x))?)?))
    }

    /// HIDE: `νx.c = νy.[y/x]c` when `y ∉ supp(c)` (alpha-renaming of the
    /// hidden name).
    pub fn hide_rename(x: &Name, y: &Name, c: &SoftConstraint) -> Check {
        if c.support().contains(y) {
            return Ok(None);
        }
        let renamed = c.substitute(x, y);
        Ok(Some(c.hide(x).equivalent(&renamed.hide(y))?))
    }

    /// PERM: `ρ̂0 = 0` and `ρ̂1 = 1`.
    pub fn perm_constants(rho: &Permutation, kind: SemiringKind, domain: &Domain) -> Check {
        let zero = SoftConstraint::zero(kind, domain.clone());
        let one = SoftConstraint::unit(kind, domain.clone());
        Ok(Some(
            zero.permute(rho).equivalent(&zero)? && one.permute(rho).equivalent(&one)?,
        ))
    }

    /// PERM: `ρ̂(c ⊗ d) = ρ̂c ⊗ ρ̂d`.
    pub fn perm_combine(rho: &Permutation, c: &SoftConstraint, d: &SoftConstraint) -> Check {
        Ok(Some(
            c.combine(d)?
                .permute(rho)
                .equivalent(&c.permute(rho).combine(&d.permute(rho))?)?,
        ))
    }

    /// PERM: `ρ̂(c +' d) = ρ̂c +' ρ̂d`.
    pub fn perm_sum(rho: &Permutation, c: &SoftConstraint, d: &SoftConstraint) -> Check {
        Ok(Some(
            c.csum(d)?
                .permute(rho)
                .equivalent(&c.permute(rho).csum(&d.permute(rho))?)?,
        ))
    }

    /// PERM: `ρ̂(νx.c) = νx.(ρ̂c)` when `x ∉ K(ρ)`.
    pub fn perm_hide(rho: &Permutation, x: &Name, c: &SoftConstraint) -> Check {
        if rho.kernel().any(|k| k == x) {
            return Ok(None);
        }
        Ok(Some(c.hide(x).permute(rho).equivalent(&c.permute(rho).hide(x))?))
    }

    /// Permutation action: `ρ̂1(ρ̂2 c) = (ρ1 ρ2)^ c` and `id^ c = c`.
    pub fn perm_action(rho1: &Permutation, rho2: &Permutation, c: &SoftConstraint) -> Check {
        let composed = c
            .permute(rho2)
            .permute(rho1)
            .equivalent(&c.permute(&rho1.compose(rho2)))?;
        let identity = c.permute(&Permutation::identity()).equivalent(c)?;
        Ok(Some(composed && identity))
    }

    /// `supp(ρ̂c) = ρ(supp(c))`.
    pub fn perm_support(rho: &Permutation, c: &SoftConstraint) -> Check {
        let moved: BTreeSet<Name> = c.support().iter().map(|n| rho.apply(n)).collect();
        Ok(Some(c.permute(rho).support() == moved))
    }
}
