// Line-oriented reader for program text:
//
//   % comment
//   #semiring wcsp
//   #constants a,b,c.
//   s(X) :- p(X,Y).
//   t(a) :- 2.
//   p(a).
//   :- s(a).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use super::{Atom, Clause, Literal, Program, Term};
use crate::semiring::SemiringKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Splits on commas that are not nested inside `(…)` or `[…]`.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

fn parse_term(text: &str, line: usize) -> Result<Term, ParseError> {
    let t = text.trim();
    if t.contains('(') {
        return Err(err(line, format!("function symbols are not supported: `{t}`")));
    }
    if !is_identifier(t) {
        return Err(err(line, format!("malformed term `{t}`")));
    }
    let first = t.chars().next().unwrap();
    if first.is_uppercase() || first == '_' {
        Ok(Term::Var(t.to_string()))
    } else {
        Ok(Term::Const(t.to_string()))
    }
}

fn parse_atom(text: &str, line: usize) -> Result<Atom, ParseError> {
    let t = text.trim();
    let (name, args) = match t.find('(') {
        Some(open) => {
            let inner = t[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| err(line, format!("unbalanced parentheses in `{t}`")))?;
            let args = split_top_level(inner)
                .into_iter()
                .map(|a| parse_term(a, line))
                .collect::<Result<_, _>>()?;
            (&t[..open], args)
        }
        None => (t, Vec::new()),
    };
    let name = name.trim();
    if !is_identifier(name) || !name.starts_with(|c: char| c.is_lowercase()) {
        return Err(err(line, format!("malformed atom `{t}`")));
    }
    Ok(Atom::new(name, args))
}

fn looks_like_atom(text: &str) -> bool {
    let t = text.trim();
    let name = t.split('(').next().unwrap_or("").trim();
    t.starts_with(|c: char| c.is_lowercase()) && !matches!(name, "inf" | "true" | "false")
}

fn strip_period(s: &str) -> &str {
    let s = s.trim();
    s.strip_suffix('.').unwrap_or(s).trim_end()
}

fn parse_atom_list(text: &str, line: usize) -> Result<Vec<Atom>, ParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(t).into_iter().map(|a| parse_atom(a, line)).collect()
}

/// Parses a goal such as `s(a), q(b)` (an optional leading `:-` and
/// trailing `.` are accepted).
pub fn parse_atoms(text: &str) -> Result<Vec<Atom>, ParseError> {
    let t = text.trim();
    let t = t.strip_prefix(":-").unwrap_or(t);
    parse_atom_list(strip_period(t), 1)
}

pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut kind: Option<SemiringKind> = None;
    let mut constants: Vec<String> = Vec::new();
    let mut clauses = Vec::new();
    let mut goal = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('%').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("#semiring") {
            let k = SemiringKind::lookup(strip_period(rest)).map_err(|e| err(line, e.to_string()))?;
            kind = Some(k);
            continue;
        }
        if let Some(rest) = content.strip_prefix("#constants") {
            for c in strip_period(rest).split(',').map(str::trim).filter(|c| !c.is_empty()) {
                match parse_term(c, line)? {
                    Term::Const(c) if !constants.contains(&c) => constants.push(c),
                    Term::Const(c) => return Err(err(line, format!("constant `{c}` declared twice"))),
                    Term::Var(v) => return Err(err(line, format!("`{v}` is a variable, not a constant"))),
                }
            }
            continue;
        }
        if content.starts_with('#') {
            return Err(err(line, format!("unknown directive `{content}`")));
        }
        if !content.ends_with('.') {
            return Err(err(line, "clause must end with `.`"));
        }
        let body_text = strip_period(content);
        if let Some(g) = body_text.strip_prefix(":-") {
            goal.extend(parse_atom_list(g, line)?);
            continue;
        }
        let (head, body) = match body_text.split_once(":-") {
            Some((h, b)) => (h, Some(b)),
            None => (body_text, None),
        };
        let head = parse_atom(head, line)?;
        let mut literals = Vec::new();
        if let Some(body) = body {
            if body.trim().is_empty() {
                return Err(err(line, "empty body after `:-`"));
            }
            for item in split_top_level(body) {
                if looks_like_atom(item) {
                    literals.push(Literal::Atom(parse_atom(item, line)?));
                } else {
                    let k = kind.ok_or_else(|| err(line, "semiring value before any `#semiring` directive"))?;
                    literals.push(Literal::Value(
                        k.parse_value(item).map_err(|e| err(line, e.to_string()))?,
                    ));
                }
            }
        }
        clauses.push(Clause { head, body: literals });
    }

    let kind = kind.ok_or_else(|| err(text.lines().count().max(1), "missing `#semiring` directive"))?;
    Ok(Program {
        kind,
        constants,
        clauses,
        goal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Cost, Value};
    use alloc::vec;

    #[test]
    fn reads_directives_clauses_and_goal() {
        let p = parse_program(
            "% demo\n#semiring wcsp\n#constants a, b.\ns(X) :- p(X,Y), 2.  % trailing\nt(a) :- inf.\nu.\n:- s(a).\n",
        )
        .unwrap();
        assert_eq!(p.kind, SemiringKind::Wcsp);
        assert_eq!(p.constants, vec!["a", "b"]);
        assert_eq!(p.clauses.len(), 3);
        assert_eq!(p.clauses[0].body.len(), 2);
        assert_eq!(p.clauses[0].body[1], Literal::Value(Value::Weight(Cost::Finite(2))));
        assert_eq!(p.clauses[1].body, vec![Literal::Value(Value::Weight(Cost::Infinite))]);
        assert!(p.clauses[2].body.is_empty());
        assert_eq!(p.goal.len(), 1);
        assert_eq!(p.clauses[0].head.args, vec![Term::Var("X".into())]);
    }

    #[test]
    fn cost_pair_values() {
        let p = parse_program("#semiring costpair\nedge(p,q) :- [2,4].\n").unwrap();
        assert_eq!(
            p.clauses[0].body,
            vec![Literal::Value(Value::Pair(crate::semiring::CostPair::new(2, 4)))]
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_program("#semiring wcsp\np(f(a)) :- 1.\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("function symbols"));
        assert_eq!(parse_program("#semiring wcsp\np(a) :- 1\n").unwrap_err().line, 2);
        assert_eq!(parse_program("#semiring nope\n").unwrap_err().line, 1);
        assert_eq!(parse_program("p(a) :- 1.\n").unwrap_err().line, 1);
        assert!(parse_program("p(a).\n").unwrap_err().message.contains("#semiring"));
        assert_eq!(parse_program("#semiring wcsp\n#constants X.\n").unwrap_err().line, 2);
        assert_eq!(parse_program("#semiring wcsp\np(a) :- q(a.\n").unwrap_err().line, 2);
        assert_eq!(parse_program("#semiring wcsp\np(a) :- -3.\n").unwrap_err().line, 2);
    }

    #[test]
    fn goals() {
        assert_eq!(parse_atoms(":- s(a), q.").unwrap().len(), 2);
        assert!(parse_atoms("").unwrap().is_empty());
        assert!(parse_atoms("S(a)").is_err());
    }
}
