//! Soft constraint logic programs and their fixpoint semantics.
//!
//! Programs are function-free. They declare their Herbrand universe and are
//! grounded eagerly. An [`Interpretation`] maps ground atoms to semiring
//! values, with the semiring zero as the default. [`lfp`] iterates
//! [`tp_step`] from the bottom interpretation until two consecutive
//! iterates coincide exactly.

mod parse;

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::semiring::{SemiringError, SemiringKind, Value};

pub use parse::{parse_atoms, parse_program, ParseError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProgramError {
    #[error(transparent)]
    Semiring(#[from] SemiringError),
    #[error("clause {clause} uses variables but the constant universe is empty")]
    EmptyUniverse { clause: usize },
    #[error("constant `{0}` is not declared in the universe")]
    UndeclaredConstant(String),
    #[error("goal atom `{0}` is not ground")]
    NonGroundGoal(Atom),
    #[error("no fixpoint within {max_iters} iterations")]
    NonConvergence {
        max_iters: usize,
        previous: Box<Interpretation>,
        last: Box<Interpretation>,
    },
    #[error("max_iters must be at least 1")]
    ZeroIterations,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) | Term::Var(c) => f.write_str(c),
        }
    }
}

/// A predicate applied to terms, possibly with variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
    }

    fn ground_with(&self, binding: &BTreeMap<&str, &str>) -> GroundAtom {
        let args = self
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => c.clone(),
                Term::Var(v) => String::from(binding[v.as_str()]),
            })
            .collect();
        GroundAtom {
            predicate: self.predicate.clone(),
            args,
        }
    }

    /// The ground atom, if there are no variables.
    pub fn to_ground(&self) -> Option<GroundAtom> {
        if self.variables().next().is_some() {
            return None;
        }
        Some(self.ground_with(&BTreeMap::new()))
    }
}

fn write_atom<T: fmt::Display>(f: &mut fmt::Formatter<'_>, predicate: &str, args: &[T]) -> fmt::Result {
    f.write_str(predicate)?;
    if !args.is_empty() {
        f.write_str("(")?;
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_atom(f, &self.predicate, &self.args)
    }
}

/// A predicate applied to constants. Arity is the argument count, so `p/1`
/// and `p/2` are distinct predicates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new<S: Into<String>>(predicate: impl Into<String>, args: impl IntoIterator<Item = S>) -> Self {
        GroundAtom {
            predicate: predicate.into(),
            args: args.into_iter().map(Into::into).collect(),
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_atom(f, &self.predicate, &self.args)
    }
}

/// One item of a clause body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal<A> {
    Atom(A),
    Value(Value),
}

/// `head :- body`. An empty body stands for the semiring one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Literal<Atom>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundClause {
    pub head: GroundAtom,
    pub body: Vec<Literal<GroundAtom>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub kind: SemiringKind,
    /// The declared Herbrand universe.
    pub constants: Vec<String>,
    pub clauses: Vec<Clause>,
    pub goal: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundProgram {
    pub kind: SemiringKind,
    pub constants: Vec<String>,
    pub clauses: Vec<GroundClause>,
}

impl GroundProgram {
    /// Every ground atom occurring in the program, heads and bodies.
    pub fn atoms(&self) -> BTreeSet<GroundAtom> {
        let mut out = BTreeSet::new();
        for c in &self.clauses {
            out.insert(c.head.clone());
            for l in &c.body {
                if let Literal::Atom(a) = l {
                    out.insert(a.clone());
                }
            }
        }
        out
    }

    /// `10 · |ground atoms| + 10`.
    pub fn default_max_iters(&self) -> usize {
        10 * self.atoms().len() + 10
    }
}

/// A map from ground atoms to semiring values; unlisted atoms are zero.
///
/// Zero-valued entries are never stored, so structural equality is equality
/// of the represented functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    kind: SemiringKind,
    values: BTreeMap<GroundAtom, Value>,
}

impl Interpretation {
    /// Every ground atom mapped to zero.
    pub fn bottom(kind: SemiringKind) -> Self {
        Interpretation {
            kind,
            values: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> SemiringKind {
        self.kind
    }

    pub fn get(&self, atom: &GroundAtom) -> Value {
        self.values.get(atom).copied().unwrap_or_else(|| self.kind.zero())
    }

    pub fn set(&mut self, atom: GroundAtom, value: Value) -> Result<(), SemiringError> {
        self.kind.check(&value)?;
        if value == self.kind.zero() {
            self.values.remove(&atom);
        } else {
            self.values.insert(atom, value);
        }
        Ok(())
    }

    /// Atoms with a non-zero value.
    pub fn iter(&self) -> impl Iterator<Item = (&GroundAtom, &Value)> {
        self.values.iter()
    }

    /// Pointwise `⪯`: `self(a) ≤ other(a)` for every atom.
    pub fn leq(&self, other: &Interpretation) -> Result<bool, SemiringError> {
        let atoms: BTreeSet<&GroundAtom> = self.values.keys().chain(other.values.keys()).collect();
        for a in atoms {
            if !self.kind.leq(&self.get(a), &other.get(a))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_constant(c: &str, universe: &BTreeSet<&str>) -> Result<(), ProgramError> {
    if universe.contains(c) {
        Ok(())
    } else {
        Err(ProgramError::UndeclaredConstant(String::from(c)))
    }
}

/// Replaces every clause by all its instances over the constant universe.
pub fn ground(program: &Program) -> Result<GroundProgram, ProgramError> {
    let universe: BTreeSet<&str> = program.constants.iter().map(String::as_str).collect();
    let mut clauses = Vec::new();
    for (index, clause) in program.clauses.iter().enumerate() {
        let atoms = core::iter::once(&clause.head).chain(clause.body.iter().filter_map(|l| match l {
            Literal::Atom(a) => Some(a),
            Literal::Value(_) => None,
        }));
        let mut vars: Vec<&str> = Vec::new();
        for atom in atoms {
            for t in &atom.args {
                match t {
                    Term::Const(c) => check_constant(c, &universe)?,
                    Term::Var(v) if !vars.contains(&v.as_str()) => vars.push(v),
                    Term::Var(_) => {}
                }
            }
        }
        for l in &clause.body {
            if let Literal::Value(v) = l {
                program.kind.check(v)?;
            }
        }
        if !vars.is_empty() && program.constants.is_empty() {
            return Err(ProgramError::EmptyUniverse { clause: index + 1 });
        }

        let n = program.constants.len();
        let mut digits = alloc::vec![0usize; vars.len()];
        loop {
            let binding: BTreeMap<&str, &str> = vars
                .iter()
                .zip(&digits)
                .map(|(v, &d)| (*v, program.constants[d].as_str()))
                .collect();
            clauses.push(GroundClause {
                head: clause.head.ground_with(&binding),
                body: clause
                    .body
                    .iter()
                    .map(|l| match l {
                        Literal::Atom(a) => Literal::Atom(a.ground_with(&binding)),
                        Literal::Value(v) => Literal::Value(*v),
                    })
                    .collect(),
            });
            // odometer over the variables, first variable most significant
            let mut i = digits.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < n {
                    break;
                }
                digits[i] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(GroundProgram {
        kind: program.kind,
        constants: program.constants.clone(),
        clauses,
    })
}

/// One application of the immediate-consequence operator:
/// `T_P(I)(A) = Σ_{clauses A :- B1..Bn} Π_j I(Bj)`.
pub fn tp_step(program: &GroundProgram, interp: &Interpretation) -> Result<Interpretation, SemiringError> {
    let kind = program.kind;
    let mut next: BTreeMap<GroundAtom, Value> = BTreeMap::new();
    for clause in &program.clauses {
        let mut product = kind.one();
        for l in &clause.body {
            let v = match l {
                Literal::Atom(a) => interp.get(a),
                Literal::Value(v) => *v,
            };
            product = kind.times(&product, &v)?;
        }
        let slot = next.entry(clause.head.clone()).or_insert_with(|| kind.zero());
        *slot = kind.plus(slot, &product)?;
    }
    let zero = kind.zero();
    next.retain(|_, v| *v != zero);
    Ok(Interpretation { kind, values: next })
}

/// The iterates `I_0 = ⊥, I_1, …, I_k` with `I_k` the least fixpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct Fixpoint {
    pub iterates: Vec<Interpretation>,
}

impl Fixpoint {
    /// `k`, the smallest index `≥ 1` whose iterate is a fixpoint.
    pub fn steps(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn interpretation(&self) -> &Interpretation {
        self.iterates.last().expect("iterates start at bottom")
    }
}

/// Iterates [`tp_step`] from bottom. Succeeds with `I_k` for the smallest
/// `1 ≤ k ≤ max_iters` such that `T_P(I_k) = I_k`.
pub fn lfp(program: &GroundProgram, max_iters: usize) -> Result<Fixpoint, ProgramError> {
    if max_iters == 0 {
        return Err(ProgramError::ZeroIterations);
    }
    let bottom = Interpretation::bottom(program.kind);
    let first = tp_step(program, &bottom)?;
    let mut iterates = alloc::vec![bottom, first];
    loop {
        let current = iterates.last().unwrap();
        let next = tp_step(program, current)?;
        if next == *current {
            return Ok(Fixpoint { iterates });
        }
        if iterates.len() > max_iters {
            return Err(ProgramError::NonConvergence {
                max_iters,
                previous: Box::new(current.clone()),
                last: Box::new(next),
            });
        }
        iterates.push(next);
    }
}

/// Grounds the program, computes the fixpoint and multiplies the values of
/// the goal atoms. Atoms the program never defines evaluate to zero.
pub fn eval_goal(program: &Program, goal: &[Atom], max_iters: Option<usize>) -> Result<Value, ProgramError> {
    let goal: Vec<GroundAtom> = goal
        .iter()
        .map(|a| a.to_ground().ok_or_else(|| ProgramError::NonGroundGoal(a.clone())))
        .collect::<Result<_, _>>()?;
    let ground = ground(program)?;
    let max = max_iters.unwrap_or_else(|| ground.default_max_iters());
    let fix = lfp(&ground, max)?;
    let values: Vec<Value> = goal.iter().map(|a| fix.interpretation().get(a)).collect();
    Ok(program.kind.product(&values)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Cost;

    use alloc::vec;
    const FIG2: &str = "\
#semiring wcsp
#constants a,b,c.
s(X) :- p(X,Y).
p(a,b) :- q(a).
p(a,c) :- r(a).
q(a) :- t(a).
t(a) :- 2.
r(a) :- 3.
";

    fn w(n: u64) -> Value {
        Value::Weight(Cost::Finite(n))
    }

    fn inf() -> Value {
        Value::Weight(Cost::Infinite)
    }

    fn ga(p: &str, args: &[&str]) -> GroundAtom {
        GroundAtom::new(p, args.iter().copied())
    }

    #[test]
    fn grounding_replicates_over_the_universe() {
        let prog = parse_program(FIG2).unwrap();
        let g = ground(&prog).unwrap();
        let s_clauses: Vec<_> = g.clauses.iter().filter(|c| c.head.predicate == "s").collect();
        assert_eq!(s_clauses.len(), 9);
        assert!(s_clauses
            .iter()
            .any(|c| c.head == ga("s", &["a"]) && c.body == [Literal::Atom(ga("p", &["a", "b"]))]));
        let t = g.clauses.iter().find(|c| c.head == ga("t", &["a"])).unwrap();
        assert_eq!(t.body, [Literal::Value(w(2))]);
        assert_eq!(g.clauses.len(), 9 + 5);
    }

    #[test]
    fn ground_program_unchanged() {
        let prog = parse_program("#semiring wcsp\n#constants a.\np(a) :- q(a).\nq(a) :- 1.\n").unwrap();
        let g = ground(&prog).unwrap();
        assert_eq!(g.clauses.len(), 2);
        assert_eq!(g.clauses[0].head, ga("p", &["a"]));
        assert_eq!(g.clauses[0].body, [Literal::Atom(ga("q", &["a"]))]);
    }

    #[test]
    fn empty_universe_with_variables() {
        let prog = parse_program("#semiring wcsp\np(X) :- 1.\n").unwrap();
        assert_eq!(ground(&prog), Err(ProgramError::EmptyUniverse { clause: 1 }));
        let prog = parse_program("#semiring wcsp\n#constants a.\np(b) :- 1.\n").unwrap();
        assert_eq!(ground(&prog), Err(ProgramError::UndeclaredConstant("b".into())));
    }

    #[test]
    fn fixpoint_iterates() {
        let g = ground(&parse_program(FIG2).unwrap()).unwrap();
        let fix = lfp(&g, 4).unwrap();
        assert_eq!(fix.steps(), 4);
        let it = &fix.iterates;
        assert_eq!(it[1].get(&ga("t", &["a"])), w(2));
        assert_eq!(it[1].get(&ga("r", &["a"])), w(3));
        assert_eq!(it[1].get(&ga("q", &["a"])), inf());
        assert_eq!(it[2].get(&ga("p", &["a", "c"])), w(3));
        assert_eq!(it[3].get(&ga("s", &["a"])), w(3));
        let last = fix.interpretation();
        assert_eq!(last.get(&ga("s", &["a"])), w(2));
        assert_eq!(last.get(&ga("p", &["a", "b"])), w(2));
        assert_eq!(last.get(&ga("s", &["b"])), inf());

        // s(a) from I_3 by hand: min{I_3(p(a,a)), I_3(p(a,b)), I_3(p(a,c))}
        let i3 = &it[3];
        let by_hand = SemiringKind::Wcsp
            .sum(&[
                i3.get(&ga("p", &["a", "a"])),
                i3.get(&ga("p", &["a", "b"])),
                i3.get(&ga("p", &["a", "c"])),
            ])
            .unwrap();
        assert_eq!(by_hand, w(2));
        assert_eq!(tp_step(&g, i3).unwrap().get(&ga("s", &["a"])), w(2));
    }

    #[test]
    fn iteration_cap() {
        let g = ground(&parse_program(FIG2).unwrap()).unwrap();
        match lfp(&g, 3) {
            Err(ProgramError::NonConvergence {
                max_iters: 3,
                previous,
                last,
            }) => {
                assert_eq!(previous.get(&ga("s", &["a"])), w(3));
                assert_eq!(last.get(&ga("s", &["a"])), w(2));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(lfp(&g, 0), Err(ProgramError::ZeroIterations));
    }

    #[test]
    fn small_fixpoints() {
        let facts = ground(&parse_program("#semiring wcsp\np :- 1.\nq :- 4.\n").unwrap()).unwrap();
        assert_eq!(lfp(&facts, 10).unwrap().steps(), 1);

        let selfloop = ground(&parse_program("#semiring wcsp\n#constants a.\nq(a) :- q(a).\n").unwrap()).unwrap();
        let fix = lfp(&selfloop, 10).unwrap();
        assert_eq!(fix.steps(), 1);
        assert_eq!(fix.interpretation().get(&ga("q", &["a"])), inf());

        let empty = GroundProgram {
            kind: SemiringKind::Wcsp,
            constants: vec![],
            clauses: vec![],
        };
        let fix = lfp(&empty, 1).unwrap();
        assert_eq!(fix.interpretation(), &Interpretation::bottom(SemiringKind::Wcsp));
    }

    #[test]
    fn goals() {
        let prog = parse_program(FIG2).unwrap();
        let goal = |s: &str| parse_atoms(s).unwrap();
        assert_eq!(eval_goal(&prog, &goal("s(a)"), None).unwrap(), w(2));
        assert_eq!(eval_goal(&prog, &goal("s(b)"), None).unwrap(), inf());
        assert_eq!(eval_goal(&prog, &[], None).unwrap(), w(0));
        assert_eq!(eval_goal(&prog, &goal("nosuch(a)"), None).unwrap(), inf());
        assert_eq!(eval_goal(&prog, &goal("t(a), r(a)"), None).unwrap(), w(5));
        assert!(matches!(
            eval_goal(&prog, &goal("s(X)"), None),
            Err(ProgramError::NonGroundGoal(_))
        ));
    }

    #[test]
    fn empty_body_is_one() {
        let prog = parse_program("#semiring fcsp\np.\nq :- p, 0.4.\n").unwrap();
        let v = eval_goal(&prog, &parse_atoms("q").unwrap(), None).unwrap();
        assert_eq!(v, SemiringKind::Fcsp.parse_value("2/5").unwrap());
    }
}
