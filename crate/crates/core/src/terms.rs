//! Formal wedge sums of spheres and Moore spaces, and gauge-group product
//! expressions built from loop-space factors.
//!
//! Wedge sums are commutative up to homotopy, so a [`SpaceTerm`] is kept in a
//! canonical normal form: flat, without basepoint summands, and sorted by
//! kind (spheres, then Moore spaces, then `SCP^2`), dimension and modulus.
//! Rendering uses a different, display-oriented order (top cell first).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::PrimePower;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpaceTerm {
    Point,
    Sphere(u32),
    /// The Moore space `P^dim(modulus)`, with a single `Z/modulus` in degree `dim - 1`.
    Moore {
        dim: u32,
        modulus: PrimePower,
    },
    /// The suspension of the complex projective plane.
    SuspCp2,
    Wedge(Vec<SpaceTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("base summand {0} has no loop-space factor")]
    BaseSummand(String),
    #[error("summand {0} is outside the loop-factor domain")]
    OutsideDomain(String),
    #[error("expected exactly one base summand (S^5 or SCP^2), found {0}")]
    BaseCount(usize),
}

impl SpaceTerm {
    fn kind_rank(&self) -> u8 {
        match self {
            SpaceTerm::Sphere(_) => 0,
            SpaceTerm::Moore { .. } => 1,
            SpaceTerm::SuspCp2 => 2,
            SpaceTerm::Point => 3,
            SpaceTerm::Wedge(_) => 4,
        }
    }

    /// Dimension of the top cell.
    pub fn dim(&self) -> u32 {
        match self {
            SpaceTerm::Point => 0,
            SpaceTerm::Sphere(d) | SpaceTerm::Moore { dim: d, .. } => *d,
            SpaceTerm::SuspCp2 => 5,
            SpaceTerm::Wedge(parts) => parts.iter().map(SpaceTerm::dim).max().unwrap_or(0),
        }
    }

    pub fn modulus(&self) -> Option<PrimePower> {
        match self {
            SpaceTerm::Moore { modulus, .. } => Some(*modulus),
            _ => None,
        }
    }

    /// Summands of a wedge, or the term itself as a single summand.
    /// The point has no summands.
    pub fn summands(&self) -> Vec<SpaceTerm> {
        match self {
            SpaceTerm::Point => Vec::new(),
            SpaceTerm::Wedge(parts) => parts.clone(),
            other => vec![other.clone()],
        }
    }

    pub fn is_base_summand(&self) -> bool {
        matches!(self, SpaceTerm::Sphere(5) | SpaceTerm::SuspCp2)
    }

    /// Canonical total order on non-wedge summands.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.kind_rank()
            .cmp(&other.kind_rank())
            .then(self.dim().cmp(&other.dim()))
            .then(self.modulus().cmp(&other.modulus()))
    }

    /// Rendering order: top cell first, spheres before Moore spaces in the
    /// same dimension, `SCP^2` leading among five-dimensional summands.
    fn display_cmp(&self, other: &Self) -> Ordering {
        let rank = |t: &SpaceTerm| match t {
            SpaceTerm::SuspCp2 => 0,
            SpaceTerm::Sphere(_) => 1,
            _ => 2,
        };
        other
            .dim()
            .cmp(&self.dim())
            .then(rank(self).cmp(&rank(other)))
            .then(self.modulus().cmp(&other.modulus()))
    }
}

impl SpaceTerm {
    /// Summands in rendering order.
    pub fn display_order(&self) -> Vec<SpaceTerm> {
        let mut parts = self.summands();
        parts.sort_by(SpaceTerm::display_cmp);
        parts
    }
}

fn flatten_into(term: SpaceTerm, out: &mut Vec<SpaceTerm>) {
    match term {
        SpaceTerm::Point => {}
        SpaceTerm::Wedge(parts) => parts.into_iter().for_each(|p| flatten_into(p, out)),
        other => out.push(other),
    }
}

/// Canonical normal form of a wedge expression.
pub fn normalize(term: &SpaceTerm) -> SpaceTerm {
    let mut parts = Vec::new();
    flatten_into(term.clone(), &mut parts);
    parts.sort_by(SpaceTerm::canonical_cmp);
    match parts.len() {
        0 => SpaceTerm::Point,
        1 => parts.pop().unwrap(),
        _ => SpaceTerm::Wedge(parts),
    }
}

/// Normalized wedge sum of `parts`; the empty wedge is the point.
pub fn wedge<I: IntoIterator<Item = SpaceTerm>>(parts: I) -> SpaceTerm {
    normalize(&SpaceTerm::Wedge(parts.into_iter().collect()))
}

/// A factor `O^k G` (k-fold based loops) or `O^k G{q}` (pointed maps out of `P^k(q)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoopFactor {
    pub loop_order: u32,
    pub modulus: Option<PrimePower>,
}

impl LoopFactor {
    pub fn plain(loop_order: u32) -> Self {
        Self {
            loop_order,
            modulus: None,
        }
    }

    pub fn modular(loop_order: u32, modulus: PrimePower) -> Self {
        Self {
            loop_order,
            modulus: Some(modulus),
        }
    }
}

impl Ord for LoopFactor {
    // Higher loop order first; plain before modular; ascending modulus.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .loop_order
            .cmp(&self.loop_order)
            .then(self.modulus.is_some().cmp(&other.modulus.is_some()))
            .then(self.modulus.cmp(&other.modulus))
    }
}

impl PartialOrd for LoopFactor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LoopFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O^{}G", self.loop_order)?;
        if let Some(q) = self.modulus {
            write!(f, "{{{q}}}")?;
        }
        Ok(())
    }
}

/// The loop-space factor `Map*(X, G)` contributed by a wedge summand `SX` of
/// the suspension: `S^k` gives `O^(k-1)G`, `P^k(q)` gives `O^(k-1)G{q}`.
pub fn map_space(summand: &SpaceTerm) -> Result<LoopFactor, TermError> {
    match summand {
        SpaceTerm::Sphere(k) if (2..=4).contains(k) => Ok(LoopFactor::plain(k - 1)),
        SpaceTerm::Moore { dim, modulus } if (3..=4).contains(dim) => Ok(LoopFactor::modular(dim - 1, *modulus)),
        s if s.is_base_summand() => Err(TermError::BaseSummand(s.to_string())),
        s => Err(TermError::OutsideDomain(s.to_string())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GaugeBase {
    S4,
    Cp2,
}

impl GaugeBase {
    pub fn as_str(&self) -> &'static str {
        match self {
            GaugeBase::S4 => "S^4",
            GaugeBase::Cp2 => "CP^2",
        }
    }
}

/// Number of `S^2 x S^2` summands added to the manifold, on which the
/// left-hand side carries `(O^2G)^{2d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stabilization {
    Fixed(u32),
    Symbolic,
}

impl Stabilization {
    pub fn is_trivial(&self) -> bool {
        *self == Stabilization::Fixed(0)
    }
}

impl Default for Stabilization {
    fn default() -> Self {
        Stabilization::Fixed(0)
    }
}

impl fmt::Display for Stabilization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stabilization::Fixed(d) => write!(f, "{d}"),
            Stabilization::Symbolic => f.write_str("d"),
        }
    }
}

/// `G_t(base) x prod factors`. With a symbolic stabilization the `2d` extra
/// `O^2G` factors are implicit; with `Fixed(d)` they are listed in `factors`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaugeExpr {
    pub base: GaugeBase,
    pub t: i64,
    factors: Vec<LoopFactor>,
    pub stabilization: Stabilization,
}

impl GaugeExpr {
    pub fn new(base: GaugeBase, t: i64, factors: Vec<LoopFactor>, stabilization: Stabilization) -> Self {
        let mut factors = factors;
        factors.sort();
        Self {
            base,
            t,
            factors,
            stabilization,
        }
    }

    pub fn factors(&self) -> &[LoopFactor] {
        &self.factors
    }

    pub fn count(&self, factor: LoopFactor) -> usize {
        self.factors.iter().filter(|f| **f == factor).count()
    }
}

impl fmt::Display for SpaceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTerm::Point => f.write_str("*"),
            SpaceTerm::Sphere(k) => write!(f, "S^{k}"),
            SpaceTerm::Moore { dim, modulus } => write!(f, "P^{dim}({modulus})"),
            SpaceTerm::SuspCp2 => f.write_str("SCP^2"),
            SpaceTerm::Wedge(_) => {
                let text: Vec<String> = self.display_order().iter().map(ToString::to_string).collect();
                if text.is_empty() {
                    return f.write_str("*");
                }
                f.write_str(&text.join(" v "))
            }
        }
    }
}

/// `c+2d`, or `2d` when `c = 0`.
pub(crate) fn symbolic_count(c: usize) -> String {
    if c == 0 {
        "2d".to_string()
    } else {
        format!("{c}+2d")
    }
}

impl GaugeExpr {
    /// The product side alone, without any stabilized left-hand side.
    pub fn render_rhs(&self) -> String {
        let mut out = format!("G_{}({})", self.t, self.base.as_str());
        let plain2 = LoopFactor::plain(2);
        let mut power_written = false;
        let symbolic = self.stabilization == Stabilization::Symbolic;
        for factor in &self.factors {
            if symbolic && !power_written && *factor >= plain2 {
                out += &format!(" x (O^2G)^{{{}}}", symbolic_count(self.count(plain2)));
                power_written = true;
            }
            if symbolic && *factor == plain2 {
                continue;
            }
            out += &format!(" x {factor}");
        }
        if symbolic && !power_written {
            out += &format!(" x (O^2G)^{{{}}}", symbolic_count(0));
        }
        out
    }

    /// Left-hand side `G_t(M) x (O^2G)^{2d}` of a stabilized equivalence.
    pub fn render_stabilized_lhs(&self) -> Option<String> {
        match self.stabilization {
            Stabilization::Symbolic => Some(format!("G_{}(M) x (O^2G)^{{2d}}", self.t)),
            Stabilization::Fixed(0) => None,
            Stabilization::Fixed(d) => Some(format!("G_{}(M) x (O^2G)^{{{}}}", self.t, 2 * d)),
        }
    }
}

impl fmt::Display for GaugeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(lhs) = self.render_stabilized_lhs() {
            write!(f, "{lhs} = ")?;
        }
        f.write_str(&self.render_rhs())
    }
}

/// Deterministic ASCII rendering of a space term.
pub fn render_term(term: &SpaceTerm) -> String {
    term.to_string()
}

/// Deterministic ASCII rendering of a gauge expression.
pub fn render_gauge(expr: &GaugeExpr) -> String {
    expr.to_string()
}
