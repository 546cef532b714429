//! Homotopy classification of gauge groups by `gcd(k, t)`.
//!
//! Each table row says: `G_t ~ G_s` (integrally, or after localization at
//! the primes in its scope) if and only if `gcd(k, |t|) = gcd(k, |s|)`.
//! Outside the rows the answer is `Unknown`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{divisor_count, gcd_signed, is_prime};
use crate::manifold::{validate, ManifoldSpec, Pi1Class, ValidationErrors};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LieGroup {
    SU(u32),
    Sp(u32),
    G2,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("SU(n) needs n >= 2")]
    SuRank,
    #[error("Sp(n) needs n >= 1")]
    SpRank,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error(transparent)]
    Invalid(#[from] ValidationErrors),
}

impl LieGroup {
    pub fn su(n: u32) -> Result<Self, ClassifyError> {
        if n >= 2 {
            Ok(LieGroup::SU(n))
        } else {
            Err(ClassifyError::SuRank)
        }
    }

    pub fn sp(n: u32) -> Result<Self, ClassifyError> {
        if n >= 1 {
            Ok(LieGroup::Sp(n))
        } else {
            Err(ClassifyError::SpRank)
        }
    }
}

impl fmt::Display for LieGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieGroup::SU(n) => write!(f, "SU({n})"),
            LieGroup::Sp(n) => write!(f, "Sp({n})"),
            LieGroup::G2 => f.write_str("G2"),
        }
    }
}

impl Serialize for LieGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// What the gauge group is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassBase {
    S4,
    Cp2,
    /// A manifold with free or odd cyclic fundamental group.
    Manifold {
        spin: bool,
    },
}

impl fmt::Display for ClassBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassBase::S4 => f.write_str("S^4"),
            ClassBase::Cp2 => f.write_str("CP^2"),
            ClassBase::Manifold { spin: true } => f.write_str("spin manifold"),
            ClassBase::Manifold { spin: false } => f.write_str("non-spin manifold"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scope {
    Integral,
    LocalAllPrimes,
    /// Odd primes `p` with `rank_bound <= (p-1)^2 + 1` (no bound when absent).
    LocalOddPrimes {
        rank_bound: Option<u64>,
    },
}

impl Scope {
    pub fn covers(&self, p: u64) -> bool {
        match self {
            Scope::Integral | Scope::LocalAllPrimes => true,
            Scope::LocalOddPrimes { rank_bound } => p != 2 && rank_bound.is_none_or(|b| b <= (p - 1) * (p - 1) + 1),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Integral => f.write_str("integral"),
            Scope::LocalAllPrimes => f.write_str("p-local, every prime p"),
            Scope::LocalOddPrimes { rank_bound: None } => f.write_str("p-local, odd primes p"),
            Scope::LocalOddPrimes { rank_bound: Some(b) } => {
                write!(f, "p-local, odd primes p with {b} <= (p-1)^2+1")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ClassRule {
    pub modulus: u64,
    pub scope: Scope,
    pub iff: bool,
}

impl ClassRule {
    fn new(modulus: u64, scope: Scope) -> Self {
        Self {
            modulus,
            scope,
            iff: true,
        }
    }

    fn same_class(&self, t: i64, s: i64) -> bool {
        gcd_signed(self.modulus, t) == gcd_signed(self.modulus, s)
    }
}

impl fmt::Display for ClassRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({k}, t) = ({k}, s) [{}]", self.scope, k = self.modulus)
    }
}

fn su_row(n: u32) -> ClassRule {
    let n = n as u64;
    ClassRule::new(n * (n * n - 1), Scope::LocalOddPrimes { rank_bound: Some(n) })
}

fn sp_row(n: u32) -> ClassRule {
    let n = n as u64;
    ClassRule::new(
        4 * n * (2 * n + 1),
        Scope::LocalOddPrimes {
            rank_bound: Some(2 * n),
        },
    )
}

/// Every row that applies, most specific first.
pub fn rules_for(group: LieGroup, base: ClassBase) -> Vec<ClassRule> {
    use ClassBase::*;
    use LieGroup::*;
    use Scope::*;
    let mut rows = Vec::new();
    match (group, base) {
        (SU(2), S4) => rows.push(ClassRule::new(12, Integral)),
        (SU(3), S4) => rows.push(ClassRule::new(24, Integral)),
        (SU(5), S4) => rows.push(ClassRule::new(120, LocalAllPrimes)),
        (Sp(2), S4) => rows.push(ClassRule::new(40, LocalAllPrimes)),
        (SU(2), Cp2) => rows.push(ClassRule::new(6, Integral)),
        (SU(3), Cp2) => rows.push(ClassRule::new(12, LocalAllPrimes)),
        (SU(2), Manifold { spin: true }) => rows.push(ClassRule::new(12, Integral)),
        (SU(2), Manifold { spin: false }) => rows.push(ClassRule::new(6, Integral)),
        (SU(3), Manifold { spin: true }) => rows.push(ClassRule::new(24, Integral)),
        (SU(3), Manifold { spin: false }) => rows.push(ClassRule::new(12, LocalAllPrimes)),
        (Sp(2), Manifold { .. }) => rows.push(ClassRule::new(40, LocalOddPrimes { rank_bound: None })),
        _ => {}
    }
    match (group, base) {
        (SU(n), S4 | Manifold { .. }) => rows.push(su_row(n)),
        (Sp(n), S4) => rows.push(sp_row(n)),
        (G2, S4 | Manifold { .. }) => rows.push(ClassRule::new(84, LocalOddPrimes { rank_bound: None })),
        _ => {}
    }
    rows
}

/// The governing row for `(group, base)`, if any.
pub fn rule_for(group: LieGroup, base: ClassBase) -> Option<ClassRule> {
    rules_for(group, base).into_iter().next()
}

/// Number of homotopy types within the row: the divisors of its modulus.
pub fn count_types(group: LieGroup, base: ClassBase) -> Option<usize> {
    rule_for(group, base).map(|r| divisor_count(r.modulus))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "Yes",
            Answer::No => "No",
            Answer::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub integral: Answer,
    pub local: BTreeMap<u64, Answer>,
    pub rule_used: Option<ClassRule>,
    /// The verdict is about `G_t(M) x (O^2G)^{2d}` for some `d`.
    pub stabilized: bool,
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "integral: {}", self.integral)?;
        for (p, a) in &self.local {
            write!(f, "; p={p}: {a}")?;
        }
        match &self.rule_used {
            Some(rule) => write!(f, "; rule: {rule}")?,
            None => f.write_str("; rule: none")?,
        }
        if self.stabilized {
            f.write_str("; stabilized by (O^2G)^{2d}")?;
        }
        Ok(())
    }
}

/// Compares `G_t` and `G_s` over a fixed base using the table rows.
pub fn classify_base(
    group: LieGroup,
    base: ClassBase,
    t: i64,
    s: i64,
    primes: &[u64],
) -> Result<EquivalenceVerdict, ClassifyError> {
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(ClassifyError::NotPrime(p));
    }
    let rules = rules_for(group, base);
    let integral = if rules.is_empty() {
        Answer::Unknown
    } else if t.unsigned_abs() == s.unsigned_abs() {
        Answer::Yes
    } else {
        rules
            .iter()
            .find(|r| r.scope == Scope::Integral)
            .map_or(Answer::Unknown, |r| Answer::from_bool(r.same_class(t, s)))
    };
    let local = primes
        .iter()
        .map(|&p| {
            let answer = if integral == Answer::Yes {
                Answer::Yes
            } else {
                rules
                    .iter()
                    .find(|r| r.scope != Scope::Integral && r.scope.covers(p))
                    .map_or(Answer::Unknown, |r| Answer::from_bool(r.same_class(t, s)))
            };
            (p, answer)
        })
        .collect();
    Ok(EquivalenceVerdict {
        integral,
        local,
        rule_used: rules.first().copied(),
        stabilized: false,
    })
}

/// Compares `G_t(M)` and `G_s(M)`. Mixed fundamental groups only admit the
/// stabilized statement.
pub fn classify(
    group: LieGroup,
    spec: &ManifoldSpec,
    t: i64,
    s: i64,
    primes: &[u64],
) -> Result<EquivalenceVerdict, ClassifyError> {
    let spec = validate(spec)?;
    let base = ClassBase::Manifold {
        spin: spec.sigma_f_trivial,
    };
    let mut verdict = classify_base(group, base, t, s, primes)?;
    verdict.stabilized = spec.pi1_class() == Pi1Class::MixedFreeProduct;
    Ok(verdict)
}
