//! Suspension splittings and gauge-group decompositions.
//!
//! [`decompose`] dispatches on the class of the fundamental group and writes
//! out the closed form for that case directly. [`gauge_from_suspension`] is
//! the generic rule (one loop factor per non-base wedge summand); the two are
//! kept independent so each can check the other.

use serde::Serialize;
use thiserror::Error;

use crate::classifier::LieGroup;
use crate::manifold::{validate, ManifoldSpec, Pi1Class, ValidationErrors};
use crate::terms::{
    map_space, symbolic_count, wedge, GaugeBase, GaugeExpr, LoopFactor, SpaceTerm, Stabilization, TermError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseUsed {
    SimplyConnected,
    Free,
    Cyclic,
    Mixed,
}

impl CaseUsed {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseUsed::SimplyConnected => "simply-connected",
            CaseUsed::Free => "free",
            CaseUsed::Cyclic => "cyclic",
            CaseUsed::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Invalid(#[from] ValidationErrors),
    #[error(transparent)]
    Term(#[from] TermError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Normalized wedge with one base summand. Under a symbolic stabilization
    /// this is the `d = 0` instance; the `2d` extra `S^3` are implicit.
    pub suspension: SpaceTerm,
    pub gauge: GaugeExpr,
    pub stabilization: Stabilization,
    pub case_used: CaseUsed,
    pub group: Option<LieGroup>,
}

impl Decomposition {
    /// `SM = ...`, or `S(M #_d S^2xS^2) = ...` when stabilized.
    pub fn render_suspension(&self) -> String {
        let lhs = match self.stabilization {
            Stabilization::Fixed(0) => "SM".to_string(),
            other => format!("S(M #_{other} S^2xS^2)"),
        };
        let rhs = match self.stabilization {
            Stabilization::Symbolic => render_symbolic_wedge(&self.suspension),
            Stabilization::Fixed(_) => self.suspension.to_string(),
        };
        format!("{lhs} = {rhs}")
    }

    pub fn render_gauge(&self) -> String {
        match self.gauge.render_stabilized_lhs() {
            Some(_) => self.gauge.to_string(),
            None => format!("G_{}(M) = {}", self.gauge.t, self.gauge.render_rhs()),
        }
    }
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}; {}", self.render_suspension(), self.render_gauge())
    }
}

// The S^3 summands are collapsed into one `(S^3)^{c+2d}` block.
fn render_symbolic_wedge(term: &SpaceTerm) -> String {
    let parts = term.summands();
    let threes = parts.iter().filter(|s| **s == SpaceTerm::Sphere(3)).count();
    let mut out: Vec<String> = Vec::new();
    let rest = wedge(parts.into_iter().filter(|s| *s != SpaceTerm::Sphere(3)));
    let mut block = Some(format!("(S^3)^{{{}}}", symbolic_count(threes)));
    for s in rest.display_order() {
        if s.dim() < 3 || (s.dim() == 3 && !matches!(s, SpaceTerm::Sphere(_))) {
            if let Some(b) = block.take() {
                out.push(b);
            }
        }
        out.push(s.to_string());
    }
    out.extend(block);
    out.join(" v ")
}

fn base_of(spec: &ManifoldSpec) -> (SpaceTerm, GaugeBase) {
    if spec.sigma_f_trivial {
        (SpaceTerm::Sphere(5), GaugeBase::S4)
    } else {
        (SpaceTerm::SuspCp2, GaugeBase::Cp2)
    }
}

/// Number of `S^3` summands (equivalently `O^2G` factors) for `b2`:
/// a nontrivial suspended attaching map uses one 2-cell for `SCP^2`.
fn three_sphere_count(spec: &ManifoldSpec, b2: u32) -> usize {
    (b2 - u32::from(!spec.sigma_f_trivial)) as usize
}

/// Decomposes `SM` and `G_t(M)`. `d` only matters for mixed fundamental
/// groups, where `None` leaves the stabilization symbolic.
pub fn decompose(
    spec: &ManifoldSpec,
    group: Option<LieGroup>,
    t: i64,
    d: Option<u32>,
) -> Result<Decomposition, DecomposeError> {
    let spec = validate(spec)?;
    build(&spec, spec.pi1_class(), group, t, d)
}

/// The mixed closed form applied to any valid spec, including those
/// [`decompose`] would send to a sharper case.
pub fn decompose_as_mixed(
    spec: &ManifoldSpec,
    group: Option<LieGroup>,
    t: i64,
    d: Option<u32>,
) -> Result<Decomposition, DecomposeError> {
    let spec = validate(spec)?;
    build(&spec, Pi1Class::MixedFreeProduct, group, t, d)
}

fn build(
    spec: &ManifoldSpec,
    class: Pi1Class,
    group: Option<LieGroup>,
    t: i64,
    d: Option<u32>,
) -> Result<Decomposition, DecomposeError> {
    let (base_summand, base) = base_of(spec);
    let m = spec.pi1.free_rank() as usize;
    let n = three_sphere_count(spec, spec.b2);
    let rep = |t: SpaceTerm, k: usize| std::iter::repeat_n(t, k);
    let frep = |f: LoopFactor, k: usize| std::iter::repeat_n(f, k);

    let (summands, factors, stabilization, case_used): (Vec<SpaceTerm>, Vec<LoopFactor>, _, _) = match class {
        // S^5 v (S^3)^n  |  SCP^2 v (S^3)^(n-1)
        Pi1Class::Trivial => (
            rep(SpaceTerm::Sphere(3), n).collect(),
            frep(LoopFactor::plain(2), n).collect(),
            Stabilization::Fixed(0),
            CaseUsed::SimplyConnected,
        ),
        // base v (S^4)^m v (S^3)^n v (S^2)^m
        Pi1Class::Free(_) => (
            rep(SpaceTerm::Sphere(4), m)
                .chain(rep(SpaceTerm::Sphere(3), n))
                .chain(rep(SpaceTerm::Sphere(2), m))
                .collect(),
            frep(LoopFactor::plain(3), m)
                .chain(frep(LoopFactor::plain(2), n))
                .chain(frep(LoopFactor::plain(1), m))
                .collect(),
            Stabilization::Fixed(0),
            CaseUsed::Free,
        ),
        // base v P^4(p^r) v (S^3)^n v P^3(p^r)
        Pi1Class::CyclicOddPrimePower(..) => {
            let q = spec.pi1.cyclic_factors()[0].prime_power().expect("validated exponent");
            (
                std::iter::once(SpaceTerm::Moore { dim: 4, modulus: q })
                    .chain(rep(SpaceTerm::Sphere(3), n))
                    .chain(std::iter::once(SpaceTerm::Moore { dim: 3, modulus: q }))
                    .collect(),
                std::iter::once(LoopFactor::modular(3, q))
                    .chain(frep(LoopFactor::plain(2), n))
                    .chain(std::iter::once(LoopFactor::modular(2, q)))
                    .collect(),
                Stabilization::Fixed(0),
                CaseUsed::Cyclic,
            )
        }
        // base v (S^4)^m v P^4(q_j) v (S^3)^(n+2d) v P^3(q_j) v (S^2)^m
        Pi1Class::MixedFreeProduct => {
            let qs: Vec<_> = spec
                .pi1
                .cyclic_factors()
                .iter()
                .map(|c| c.prime_power().expect("validated exponent"))
                .collect();
            let (stab, extra) = match d {
                Some(d) => (Stabilization::Fixed(d), 2 * d as usize),
                None => (Stabilization::Symbolic, 0),
            };
            (
                rep(SpaceTerm::Sphere(4), m)
                    .chain(qs.iter().map(|&q| SpaceTerm::Moore { dim: 4, modulus: q }))
                    .chain(rep(SpaceTerm::Sphere(3), n + extra))
                    .chain(qs.iter().map(|&q| SpaceTerm::Moore { dim: 3, modulus: q }))
                    .chain(rep(SpaceTerm::Sphere(2), m))
                    .collect(),
                frep(LoopFactor::plain(3), m)
                    .chain(qs.iter().map(|&q| LoopFactor::modular(3, q)))
                    .chain(frep(LoopFactor::plain(2), n + extra))
                    .chain(qs.iter().map(|&q| LoopFactor::modular(2, q)))
                    .chain(frep(LoopFactor::plain(1), m))
                    .collect(),
                stab,
                CaseUsed::Mixed,
            )
        }
    };

    Ok(Decomposition {
        suspension: wedge(std::iter::once(base_summand).chain(summands)),
        gauge: GaugeExpr::new(base, t, factors, stabilization),
        stabilization,
        case_used,
        group,
    })
}

/// The suspension half of [`decompose`]; mixed groups are taken at `d = 0`.
pub fn suspension_of_spec(spec: &ManifoldSpec) -> Result<SpaceTerm, DecomposeError> {
    Ok(decompose(spec, None, 0, Some(0))?.suspension)
}

/// Reads a gauge decomposition off a suspension splitting: the base summand
/// gives `G_t(S^4)` or `G_t(CP^2)`, every other summand its mapping space.
pub fn gauge_from_suspension(susp: &SpaceTerm, t: i64) -> Result<GaugeExpr, TermError> {
    let summands = susp.summands();
    let bases: Vec<&SpaceTerm> = summands.iter().filter(|s| s.is_base_summand()).collect();
    let base = match bases.as_slice() {
        [SpaceTerm::SuspCp2] => GaugeBase::Cp2,
        [_] => GaugeBase::S4,
        other => return Err(TermError::BaseCount(other.len())),
    };
    let factors = summands
        .iter()
        .filter(|s| !s.is_base_summand())
        .map(map_space)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GaugeExpr::new(base, t, factors, Stabilization::Fixed(0)))
}
