use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {0}: missing or malformed `p cnf <vars> <clauses>` header")]
    Header(usize),
    #[error("line {line}: invalid literal {token:?}")]
    Literal { line: usize, token: String },
    #[error("line {line}: variable {var} exceeds declared count {max}")]
    VariableRange { line: usize, var: u32, max: u32 },
    #[error("clause {clause} has {width} literals, expected 3")]
    Width { clause: usize, width: usize },
    #[error("clause {clause} contains both x{var} and -x{var}")]
    Conflict { clause: usize, var: u32 },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    Unterminated,
}

/// A literal: variable index (from 1) with sign.
pub type Literal = i32;

/// A 3-CNF formula. Clauses are numbered from 1 in tags and opening ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: u32,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    /// Validates width, variable range and the absence of within-clause
    /// conflicts. Repeated literals such as `x ∨ x ∨ x` are allowed.
    pub fn new(num_vars: u32, clauses: Vec<Vec<Literal>>) -> Result<Self, DimacsError> {
        let mut out = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.into_iter().enumerate() {
            let clause = i + 1;
            let lits: [Literal; 3] = c.as_slice().try_into().map_err(|_| DimacsError::Width {
                clause,
                width: c.len(),
            })?;
            for &l in &lits {
                let var = l.unsigned_abs();
                if l == 0 || var > num_vars {
                    return Err(DimacsError::VariableRange {
                        line: 0,
                        var,
                        max: num_vars,
                    });
                }
                if lits.contains(&-l) {
                    return Err(DimacsError::Conflict { clause, var });
                }
            }
            out.push(lits);
        }
        Ok(CnfFormula {
            num_vars,
            clauses: out,
        })
    }
}

/// Parses DIMACS CNF. `c` lines are comments, a `%` line ends the input,
/// clauses may span lines and end with `0`.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] if header.is_none() => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or(DimacsError::Header(line_no))?);
            continue;
        }
        let (num_vars, _) = header.ok_or(DimacsError::Header(line_no))?;
        for tok in line.split_whitespace() {
            let lit: Literal = tok.parse().map_err(|_| DimacsError::Literal {
                line: line_no,
                token: tok.to_string(),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = lit.unsigned_abs();
            if var > num_vars {
                return Err(DimacsError::VariableRange {
                    line: line_no,
                    var,
                    max: num_vars,
                });
            }
            current.push(lit);
        }
    }
    let (num_vars, declared) = header.ok_or(DimacsError::Header(0))?;
    if !current.is_empty() {
        return Err(DimacsError::Unterminated);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    CnfFormula::new(num_vars, clauses)
}

pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars, f.clauses.len());
    for c in &f.clauses {
        out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
    }
    out
}
