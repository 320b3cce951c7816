//! CNF formulas with clauses of one to three literals, and DIMACS input.

use std::fmt;

use thiserror::Error;

/// Largest clause accepted.
pub const MAX_CLAUSE_ARITY: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn from_dimacs(lit: i64) -> Self {
        Literal { var: lit.unsigned_abs() as usize, positive: lit > 0 }
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        a.value(self.var) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "-{}", self.var)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("formula needs at least one variable")]
    NoVariables,
    #[error("clause {clause}: literal {literal} out of range 1..={num_vars}")]
    LiteralOutOfRange { clause: usize, literal: i64, num_vars: usize },
    #[error("clause {clause} is empty")]
    EmptyClause { clause: usize },
    #[error("clause {clause} has {arity} distinct literals; at most {MAX_CLAUSE_ARITY} are allowed")]
    ClauseTooLong { clause: usize, arity: usize },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
    #[error("last clause is missing its terminating 0")]
    MissingTerminator,
    #[error("missing `p cnf` header")]
    MissingHeader,
}

/// A CNF formula over variables `1..=num_vars`. Repeated identical literals
/// inside a clause are dropped; `x` and `¬x` in one clause are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, CnfError> {
        if num_vars == 0 {
            return Err(CnfError::NoVariables);
        }
        let mut out = Vec::with_capacity(clauses.len());
        for (k, clause) in clauses.into_iter().enumerate() {
            let clause_no = k + 1;
            let mut kept: Vec<Literal> = Vec::with_capacity(clause.len());
            for lit in clause {
                if lit.var == 0 || lit.var > num_vars {
                    let literal = if lit.positive { lit.var as i64 } else { -(lit.var as i64) };
                    return Err(CnfError::LiteralOutOfRange { clause: clause_no, literal, num_vars });
                }
                if !kept.contains(&lit) {
                    kept.push(lit);
                }
            }
            if kept.is_empty() {
                return Err(CnfError::EmptyClause { clause: clause_no });
            }
            if kept.len() > MAX_CLAUSE_ARITY {
                return Err(CnfError::ClauseTooLong { clause: clause_no, arity: kept.len() });
            }
            out.push(kept);
        }
        Ok(CnfFormula { num_vars, clauses: out })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// 1-based index of the first clause `a` leaves unsatisfied.
    pub fn first_unsatisfied(&self, a: &Assignment) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|l| l.is_satisfied_by(a))).map(|k| k + 1)
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        a.num_vars() == self.num_vars && self.first_unsatisfied(a).is_none()
    }

    /// Tries all `2^num_vars` assignments in binary order (variable 1 is the
    /// low bit, `true` = 1). Meant for small formulas only.
    pub fn brute_force_satisfying(&self) -> Option<Assignment> {
        assert!(self.num_vars < 31, "brute force over {} variables", self.num_vars);
        (0u32..1 << self.num_vars)
            .map(|bits| Assignment::new((0..self.num_vars).map(|i| bits >> i & 1 == 1).collect()))
            .find(|a| self.is_satisfied_by(a))
    }
}

/// A total truth assignment to variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    /// `values[i]` is the value of variable `i + 1`.
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    /// Value of 1-based variable `var`.
    pub fn value(&self, var: usize) -> bool {
        self.values[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }
}

impl fmt::Display for Assignment {
    /// DIMACS solution line: `v 1 -2 3 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("v")?;
        for (i, &b) in self.values.iter().enumerate() {
            let lit = Literal { var: i + 1, positive: b };
            write!(f, " {lit}")?;
        }
        f.write_str(" 0")
    }
}

/// Parses DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>` header,
/// then whitespace-separated literals with each clause ended by `0`. A line
/// starting with `%` ends the input.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(CnfError::Syntax { line: line_no, msg: "duplicate header".into() });
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let parsed = match toks.as_slice() {
                ["p", "cnf", v, c] => v.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            let Some((v, c)) = parsed else {
                return Err(CnfError::Syntax {
                    line: line_no,
                    msg: format!("malformed header `{line}`, expected `p cnf <vars> <clauses>`"),
                });
            };
            header = Some((v, c));
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(CnfError::MissingHeader);
        };
        for tok in line.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| CnfError::Syntax {
                line: line_no,
                msg: format!("expected an integer literal, got `{tok}`"),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() as usize > num_vars {
                return Err(CnfError::LiteralOutOfRange { clause: clauses.len() + 1, literal: lit, num_vars });
            }
            current.push(Literal::from_dimacs(lit));
        }
    }

    let (num_vars, declared) = header.ok_or(CnfError::MissingHeader)?;
    if !current.is_empty() {
        return Err(CnfError::MissingTerminator);
    }
    if clauses.len() != declared {
        return Err(CnfError::ClauseCount { declared, found: clauses.len() });
    }
    CnfFormula::new(num_vars, clauses)
}
