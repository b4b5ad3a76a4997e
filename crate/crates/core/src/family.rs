//! Parameterized braid families: a reduced generating word whose positions
//! carry either a fixed degree or a named degree parameter.

use crate::braid::{parse_braid, BraidLetter, BraidWord, ParseError, ReducedWord};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("pattern parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("missing parameter {0}")]
    MissingParameter(String),
    #[error("parameter {name} = {value} is below its start value {start}")]
    BelowStart { name: String, value: u32, start: u32 },
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("malformed constraint {0:?}")]
    BadConstraint(String),
}

/// Per-position degree entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Slot {
    Fixed(u32),
    Param(String),
}

/// One side of an order relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(u32),
}

impl Term {
    fn eval(&self, values: &BTreeMap<String, u32>) -> Result<u32, FamilyError> {
        match self {
            Term::Const(c) => Ok(*c),
            Term::Var(v) => {
                values.get(v).copied().ok_or_else(|| FamilyError::MissingParameter(v.clone()))
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{}", v),
            Term::Const(c) => write!(f, "{}", c),
        }
    }
}

/// Order relations between parameters, including the conditional form
/// used by the two-strand four-parameter family ("if p=s then r>=q").
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Constraint {
    Ge(Term, Term),
    CondGe { if_eq: (Term, Term), then_ge: (Term, Term) },
}

impl Constraint {
    pub fn check(&self, values: &BTreeMap<String, u32>) -> Result<bool, FamilyError> {
        match self {
            Constraint::Ge(a, b) => Ok(a.eval(values)? >= b.eval(values)?),
            Constraint::CondGe { if_eq, then_ge } => {
                if if_eq.0.eval(values)? == if_eq.1.eval(values)? {
                    Ok(then_ge.0.eval(values)? >= then_ge.1.eval(values)?)
                } else {
                    Ok(true)
                }
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Ge(a, b) => write!(f, "{}>={}", a, b),
            Constraint::CondGe { if_eq, then_ge } => {
                write!(f, "if {}={} then {}>={}", if_eq.0, if_eq.1, then_ge.0, then_ge.1)
            }
        }
    }
}

/// A family of braid words: generating reduced word plus degree slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidFamily {
    /// Letter core (index, sign) per position.
    letters: Vec<(u8, bool)>,
    slots: Vec<Slot>,
    /// Start value per parameter (default 2).
    pub starts: BTreeMap<String, u32>,
    pub constraints: Vec<Constraint>,
}

impl BraidFamily {
    pub fn new(letters: Vec<(u8, bool)>, slots: Vec<Slot>) -> Self {
        let mut starts = BTreeMap::new();
        for s in &slots {
            if let Slot::Param(name) = s {
                starts.insert(name.clone(), 2);
            }
        }
        Self { letters, slots, starts, constraints: Vec::new() }
    }

    /// Parses a pattern like `A^pbAb^q` or `A^3BaB`; `^x` with a lower-case
    /// letter introduces a parameter, digits give a fixed degree.
    pub fn parse_pattern(text: &str) -> Result<Self, FamilyError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut letters = Vec::new();
        let mut slots = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (index, positive) = match c {
                'A'..='L' => ((c as u8 - b'A' + 1), true),
                'a'..='l' => ((c as u8 - b'a' + 1), false),
                other => return Err(ParseError::IllegalChar(other).into()),
            };
            i += 1;
            let mut slot = Slot::Fixed(1);
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                if i >= chars.len() {
                    return Err(ParseError::BadDegree.into());
                }
                if chars[i].is_ascii_digit() {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: u32 = chars[start..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| ParseError::BadDegree)?;
                    if n == 0 {
                        return Err(ParseError::ZeroDegree.into());
                    }
                    slot = Slot::Fixed(n);
                } else if chars[i].is_ascii_lowercase() {
                    slot = Slot::Param(chars[i].to_string());
                    i += 1;
                } else {
                    return Err(ParseError::BadDegree.into());
                }
            } else if i < chars.len() && chars[i].is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u32 = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| ParseError::BadDegree)?;
                if n == 0 {
                    return Err(ParseError::ZeroDegree.into());
                }
                slot = Slot::Fixed(n);
            }
            letters.push((index, positive));
            slots.push(slot);
        }
        if letters.is_empty() {
            return Err(ParseError::Empty.into());
        }
        Ok(Self::new(letters, slots))
    }

    /// Builds the family on `generator` whose parameterized positions are
    /// exactly `param_positions`, named `p, q, r, ...` in reading order.
    pub fn from_positions(generator: &ReducedWord, param_positions: &[usize]) -> Self {
        const NAMES: &[&str] = &["p", "q", "r", "s", "t", "u", "v", "w", "x", "y", "z"];
        let letters: Vec<(u8, bool)> =
            generator.letters().iter().map(|l| (l.index, l.positive)).collect();
        let mut slots = vec![Slot::Fixed(1); letters.len()];
        let mut sorted = param_positions.to_vec();
        sorted.sort_unstable();
        for (k, pos) in sorted.iter().enumerate() {
            slots[*pos] = Slot::Param(NAMES[k].to_string());
        }
        Self::new(letters, slots)
    }

    pub fn parse_constraints(&mut self, text: &str) -> Result<(), FamilyError> {
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            self.constraints.push(parse_constraint(part)?);
        }
        Ok(())
    }

    /// Applies start-value overrides written as `p:1,q:3`.
    pub fn parse_starts(&mut self, text: &str) -> Result<(), FamilyError> {
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (name, v) =
                part.split_once(':').ok_or_else(|| FamilyError::BadConstraint(part.into()))?;
            let value: u32 =
                v.trim().parse().map_err(|_| FamilyError::BadConstraint(part.into()))?;
            self.starts.insert(name.trim().to_string(), value);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Parameter names in reading order.
    pub fn param_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        for s in &self.slots {
            if let Slot::Param(n) = s {
                if !names.contains(n) {
                    names.push(n.clone());
                }
            }
        }
        names
    }

    pub fn param_positions(&self) -> Vec<usize> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| matches!(s, Slot::Param(_)).then_some(i))
            .collect()
    }

    /// The generating reduced word (every slot at degree 1).
    pub fn generator(&self) -> ReducedWord {
        BraidWord::new(
            self.letters.iter().map(|&(i, pos)| BraidLetter::new(i, pos, 1)).collect(),
        )
        .idempotent_reduce()
    }

    /// Instantiation with full validation of starts and constraints.
    pub fn instantiate(&self, values: &BTreeMap<String, u32>) -> Result<BraidWord, FamilyError> {
        for name in self.param_names() {
            let value =
                *values.get(&name).ok_or_else(|| FamilyError::MissingParameter(name.clone()))?;
            let start = self.starts.get(&name).copied().unwrap_or(2);
            if value < start {
                return Err(FamilyError::BelowStart { name, value, start });
            }
        }
        for c in &self.constraints {
            if !c.check(values)? {
                return Err(FamilyError::ConstraintViolated(c.to_string()));
            }
        }
        Ok(self.instantiate_unchecked(values))
    }

    /// Instantiation without start/constraint validation; missing
    /// parameters default to 2.
    pub fn instantiate_unchecked(&self, values: &BTreeMap<String, u32>) -> BraidWord {
        BraidWord::new(
            self.letters
                .iter()
                .zip(&self.slots)
                .map(|(&(index, positive), slot)| {
                    let degree = match slot {
                        Slot::Fixed(d) => *d,
                        Slot::Param(name) => values.get(name).copied().unwrap_or(2),
                    };
                    BraidLetter::new(index, positive, degree)
                })
                .collect(),
        )
    }

    /// The source braid: every parameter set to 2, constraints ignored.
    pub fn source_braid(&self) -> BraidWord {
        self.instantiate_unchecked(&BTreeMap::new())
    }

    /// Boundary braid: every parameter at its start value.
    pub fn boundary_braid(&self) -> BraidWord {
        let values: BTreeMap<String, u32> =
            self.starts.iter().map(|(k, v)| (k.clone(), *v)).collect();
        self.instantiate_unchecked(&values)
    }

    /// Pattern text, e.g. `A^pbAb^q`.
    pub fn pattern(&self) -> String {
        let mut out = String::new();
        for (&(index, positive), slot) in self.letters.iter().zip(&self.slots) {
            let base = if positive { b'A' } else { b'a' };
            out.push((base + index - 1) as char);
            match slot {
                Slot::Fixed(1) => {}
                Slot::Fixed(d) => out.push_str(&format!("^{}", d)),
                Slot::Param(name) => out.push_str(&format!("^{}", name)),
            }
        }
        out
    }

    /// All admissible value maps with every parameter at most `max`.
    pub fn sweep(&self, max: u32) -> Vec<BTreeMap<String, u32>> {
        let names = self.param_names();
        let mut out = Vec::new();
        let mut values = BTreeMap::new();
        self.sweep_recurse(&names, 0, max, &mut values, &mut out);
        out
    }

    fn sweep_recurse(
        &self,
        names: &[String],
        k: usize,
        max: u32,
        values: &mut BTreeMap<String, u32>,
        out: &mut Vec<BTreeMap<String, u32>>,
    ) {
        if k == names.len() {
            let ok = self.constraints.iter().all(|c| c.check(values).unwrap_or(false));
            if ok {
                out.push(values.clone());
            }
            return;
        }
        let start = self.starts.get(&names[k]).copied().unwrap_or(2);
        for v in start..=max.max(start) {
            values.insert(names[k].clone(), v);
            self.sweep_recurse(names, k + 1, max, values, out);
        }
        values.remove(&names[k]);
    }
}

impl fmt::Display for BraidFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pattern())
    }
}

fn parse_term(text: &str) -> Result<Term, FamilyError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(FamilyError::BadConstraint(text.into()));
    }
    if t.chars().all(|c| c.is_ascii_digit()) {
        Ok(Term::Const(t.parse().map_err(|_| FamilyError::BadConstraint(text.into()))?))
    } else {
        Ok(Term::Var(t.to_string()))
    }
}

/// Parses `p>=q>=2` chains and `if p=s then r>=q` conditionals.
fn parse_constraint(text: &str) -> Result<Constraint, FamilyError> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("if ") {
        let (cond, cons) =
            rest.split_once(" then ").ok_or_else(|| FamilyError::BadConstraint(t.into()))?;
        let (a, b) = cond.split_once('=').ok_or_else(|| FamilyError::BadConstraint(t.into()))?;
        let (c, d) =
            cons.split_once(">=").ok_or_else(|| FamilyError::BadConstraint(t.into()))?;
        return Ok(Constraint::CondGe {
            if_eq: (parse_term(a)?, parse_term(b)?),
            then_ge: (parse_term(c)?, parse_term(d)?),
        });
    }
    let parts: Vec<&str> = t.split(">=").collect();
    if parts.len() == 2 {
        Ok(Constraint::Ge(parse_term(parts[0])?, parse_term(parts[1])?))
    } else {
        Err(FamilyError::BadConstraint(t.into()))
    }
}

/// Expands chains like `p>=q>=2` into individual constraints.
pub fn parse_constraint_list(text: &str) -> Result<Vec<Constraint>, FamilyError> {
    let mut out = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if part.starts_with("if ") {
            out.push(parse_constraint(part)?);
            continue;
        }
        let pieces: Vec<&str> = part.split(">=").collect();
        if pieces.len() < 2 {
            return Err(FamilyError::BadConstraint(part.into()));
        }
        for pair in pieces.windows(2) {
            out.push(Constraint::Ge(parse_term(pair[0])?, parse_term(pair[1])?));
        }
    }
    Ok(out)
}

/// Convenience: parse a pattern together with constraint and start texts.
pub fn family_from_fixture(
    pattern: &str,
    constraints: &str,
    starts: &str,
) -> Result<BraidFamily, FamilyError> {
    let mut fam = BraidFamily::parse_pattern(pattern)?;
    fam.constraints = parse_constraint_list(constraints)?;
    // Numeric lower bounds double as start values.
    for c in &fam.constraints {
        if let Constraint::Ge(Term::Var(v), Term::Const(k)) = c {
            fam.starts.insert(v.clone(), *k);
        }
    }
    fam.parse_starts(starts)?;
    Ok(fam)
}

/// Re-exported word parser for fixture code that normalizes plain words.
pub fn parse_word(text: &str) -> Result<BraidWord, ParseError> {
    parse_braid(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(pairs: &[(&str, u32)]) -> BTreeMap<String, u32> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn pattern_round_trip() {
        for p in ["A^pbAb", "A^pbAb^q", "A^pb^qA^rb^s", "A^3BaB", "AbA^pbACbC"] {
            let fam = BraidFamily::parse_pattern(p).unwrap();
            assert_eq!(fam.pattern(), p);
        }
    }

    #[test]
    fn instantiation() {
        let fam = BraidFamily::parse_pattern("A^pbAb").unwrap();
        assert_eq!(fam.instantiate(&values(&[("p", 2)])).unwrap().to_string(), "A^2bAb");

        let mut fam = BraidFamily::parse_pattern("A^pbAb^q").unwrap();
        fam.constraints = parse_constraint_list("p>=q>=2").unwrap();
        assert_eq!(
            fam.instantiate(&values(&[("p", 3), ("q", 2)])).unwrap().to_string(),
            "A^3bAb^2"
        );
        assert!(matches!(
            fam.instantiate(&values(&[("p", 2), ("q", 3)])),
            Err(FamilyError::ConstraintViolated(_))
        ));
        assert!(matches!(
            fam.instantiate(&values(&[("p", 3)])),
            Err(FamilyError::MissingParameter(_))
        ));
        assert!(matches!(
            fam.instantiate(&values(&[("p", 3), ("q", 1)])),
            Err(FamilyError::BelowStart { .. })
        ));
    }

    #[test]
    fn source_braids() {
        let fam = BraidFamily::parse_pattern("A^pbAb^qAb^r").unwrap();
        assert_eq!(fam.source_braid().to_string(), "A^2bAb^2Ab^2");
        let fam = BraidFamily::parse_pattern("A^pbA^qbAb^r").unwrap();
        assert_eq!(fam.source_braid().to_string(), "A^2bA^2bAb^2");
        let fam = BraidFamily::parse_pattern("AbAb").unwrap();
        assert_eq!(fam.source_braid().to_string(), "AbAb");
        // Constraints are not enforced for source braids.
        let mut fam = BraidFamily::parse_pattern("A^pbAb^q").unwrap();
        fam.constraints = parse_constraint_list("p>=3").unwrap();
        assert_eq!(fam.source_braid().to_string(), "A^2bAb^2");
    }

    #[test]
    fn conditional_constraint() {
        let cs = parse_constraint_list("p,q?").err();
        assert!(cs.is_some());
        let fam = family_from_fixture(
            "A^pb^qA^rb^s",
            "p>=2;q>=2;r>=2;s>=2;p>=r;p>=s;s>=q;if p=s then r>=q",
            "",
        )
        .unwrap();
        assert!(fam
            .instantiate(&values(&[("p", 2), ("q", 2), ("r", 2), ("s", 2)]))
            .is_ok());
        // p=s=3, r=2 < q=3 violates the conditional clause.
        assert!(fam
            .instantiate(&values(&[("p", 3), ("q", 3), ("r", 2), ("s", 3)]))
            .is_err());
    }

    #[test]
    fn sweeps_respect_constraints() {
        let fam = family_from_fixture("A^pbAb^q", "p>=q>=2", "").unwrap();
        let sweep = fam.sweep(4);
        assert!(sweep.iter().all(|v| v["p"] >= v["q"]));
        assert_eq!(sweep.len(), 6); // (2,2),(3,2),(3,3),(4,2),(4,3),(4,4)
    }

    #[test]
    fn start_overrides() {
        let fam = family_from_fixture("A^pbAb", "p>=1", "").unwrap();
        assert_eq!(fam.starts["p"], 1);
        assert!(fam.instantiate(&values(&[("p", 1)])).is_ok());
    }
}
