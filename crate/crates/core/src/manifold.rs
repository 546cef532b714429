//! Manifold descriptions: fundamental group, second Betti number and the
//! triviality of the suspended top-cell attaching map.

use std::fmt;

use thiserror::Error;

use crate::arith::{ArithError, PrimePower};

/// A cyclic free factor `Z/p^r`. The prime is checked at construction; the
/// exponent and parity are checked by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicFactor {
    p: u64,
    r: u32,
}

impl CyclicFactor {
    pub fn new(p: u64, r: u32) -> Result<Self, ArithError> {
        if !crate::arith::is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if p.checked_pow(r).is_none() {
            return Err(ArithError::Overflow { p, r });
        }
        Ok(Self { p, r })
    }

    pub fn from_order(q: u64) -> Result<Self, ArithError> {
        let pp = PrimePower::from_value(q)?;
        Ok(Self {
            p: pp.prime(),
            r: pp.exponent(),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.r)
    }

    /// The order as a prime power; `None` when `r = 0`.
    pub fn prime_power(&self) -> Option<PrimePower> {
        PrimePower::new(self.p, self.r).ok()
    }
}

impl Ord for CyclicFactor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), self.p, self.r).cmp(&(other.order(), other.p, other.r))
    }
}

impl PartialOrd for CyclicFactor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `Z^{*m} * (*_j Z/p_j^{r_j})`, with the cyclic factors kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Pi1Descriptor {
    free_rank: u32,
    cyclic: Vec<CyclicFactor>,
}

impl Pi1Descriptor {
    pub fn new(free_rank: u32, cyclic: Vec<CyclicFactor>) -> Self {
        let mut cyclic = cyclic;
        cyclic.sort();
        Self { free_rank, cyclic }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn cyclic_factors(&self) -> &[CyclicFactor] {
        &self.cyclic
    }

    /// Free product of two groups.
    pub fn free_product(&self, other: &Self) -> Self {
        let mut cyclic = self.cyclic.clone();
        cyclic.extend_from_slice(&other.cyclic);
        Self::new(self.free_rank + other.free_rank, cyclic)
    }
}

impl fmt::Display for Pi1Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.free_rank == 0 && self.cyclic.is_empty() {
            return f.write_str("1");
        }
        let atoms: Vec<String> = (0..self.free_rank)
            .map(|_| "Z".to_string())
            .chain(self.cyclic.iter().map(|c| format!("Z/{}", c.order())))
            .collect();
        f.write_str(&atoms.join("*"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pi1Class {
    Trivial,
    Free(u32),
    CyclicOddPrimePower(u64, u32),
    MixedFreeProduct,
}

pub fn classify_pi1(pi1: &Pi1Descriptor) -> Pi1Class {
    match (pi1.free_rank, pi1.cyclic.as_slice()) {
        (0, []) => Pi1Class::Trivial,
        (m, []) => Pi1Class::Free(m),
        (0, [c]) => Pi1Class::CyclicOddPrimePower(c.p, c.r),
        _ => Pi1Class::MixedFreeProduct,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ManifoldSpec {
    pub pi1: Pi1Descriptor,
    pub b2: u32,
    pub sigma_f_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("even torsion prime")]
    EvenTorsionPrime,
    #[error("r < 1")]
    ExponentBelowOne,
    #[error("nontrivial Σf with b2 = 0")]
    NontrivialSigmaFWithoutB2,
}

/// All validation failures, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct ValidationErrors(pub Vec<ValidationError>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizeError {
    #[error("d < 0")]
    NegativeCount,
    #[error(transparent)]
    Invalid(#[from] ValidationErrors),
}

impl ManifoldSpec {
    pub fn new(pi1: Pi1Descriptor, b2: u32, sigma_f_trivial: bool) -> Self {
        Self {
            pi1,
            b2,
            sigma_f_trivial,
        }
    }

    /// The 4-sphere: trivial group, `b2 = 0`.
    pub fn sphere() -> Self {
        Self::new(Pi1Descriptor::trivial(), 0, true)
    }

    pub fn pi1_class(&self) -> Pi1Class {
        classify_pi1(&self.pi1)
    }
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pi1 = {}; b2 = {}; sigma-f = {}",
            self.pi1,
            self.b2,
            if self.sigma_f_trivial { "trivial" } else { "nontrivial" }
        )
    }
}

pub fn validate(spec: &ManifoldSpec) -> Result<ManifoldSpec, ValidationErrors> {
    let mut errors = Vec::new();
    if spec.pi1.cyclic.iter().any(|c| c.p == 2) {
        errors.push(ValidationError::EvenTorsionPrime);
    }
    if spec.pi1.cyclic.iter().any(|c| c.r < 1) {
        errors.push(ValidationError::ExponentBelowOne);
    }
    // pi_3 of a 3-skeleton without 2-spheres is trivial after one suspension.
    if !spec.sigma_f_trivial && spec.b2 == 0 {
        errors.push(ValidationError::NontrivialSigmaFWithoutB2);
    }
    if errors.is_empty() {
        Ok(spec.clone())
    } else {
        Err(ValidationErrors(errors))
    }
}

/// `a # b`: free product of groups, added ranks, and a suspended attaching
/// map that is null exactly when both summands' are.
pub fn connected_sum(a: &ManifoldSpec, b: &ManifoldSpec) -> Result<ManifoldSpec, ValidationErrors> {
    validate(a)?;
    validate(b)?;
    let sum = ManifoldSpec::new(
        a.pi1.free_product(&b.pi1),
        a.b2 + b.b2,
        a.sigma_f_trivial && b.sigma_f_trivial,
    );
    validate(&sum)
}

/// `spec #_d (S^2 x S^2)`.
pub fn stabilize(spec: &ManifoldSpec, d: i64) -> Result<ManifoldSpec, StabilizeError> {
    validate(spec)?;
    let d = u32::try_from(d).map_err(|_| StabilizeError::NegativeCount)?;
    Ok(ManifoldSpec::new(
        spec.pi1.clone(),
        spec.b2 + 2 * d,
        spec.sigma_f_trivial,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(p: u64, r: u32) -> CyclicFactor {
        CyclicFactor::new(p, r).unwrap()
    }

    fn spec(m: u32, cyclic: &[(u64, u32)], b2: u32, trivial: bool) -> ManifoldSpec {
        let cyclic = cyclic.iter().map(|&(p, r)| cyc(p, r)).collect();
        ManifoldSpec::new(Pi1Descriptor::new(m, cyclic), b2, trivial)
    }

    #[test]
    fn validation_cases() {
        assert!(validate(&spec(0, &[(3, 2)], 2, true)).is_ok());
        assert_eq!(
            validate(&spec(0, &[(2, 1)], 1, true)),
            Err(ValidationErrors(vec![ValidationError::EvenTorsionPrime]))
        );
        assert_eq!(
            validate(&spec(0, &[], 0, false)),
            Err(ValidationErrors(vec![ValidationError::NontrivialSigmaFWithoutB2]))
        );
        assert_eq!(
            validate(&spec(1, &[(5, 0)], 3, true)),
            Err(ValidationErrors(vec![ValidationError::ExponentBelowOne]))
        );
        let all = validate(&spec(0, &[(2, 0)], 0, false)).unwrap_err();
        assert_eq!(all.0.len(), 3);
        assert_eq!(all.to_string(), "even torsion prime; r < 1; nontrivial Σf with b2 = 0");
    }

    #[test]
    fn cyclic_factor_requires_prime() {
        assert!(CyclicFactor::new(9, 1).is_err());
        assert_eq!(CyclicFactor::from_order(27).unwrap(), cyc(3, 3));
        assert!(CyclicFactor::from_order(15).is_err());
    }

    #[test]
    fn connected_sum_examples() {
        let a = spec(1, &[], 0, true);
        let b = spec(0, &[(3, 2)], 2, true);
        assert_eq!(connected_sum(&a, &b).unwrap(), spec(1, &[(3, 2)], 2, true));
        let c = spec(0, &[], 1, false);
        let d = spec(0, &[], 1, true);
        assert_eq!(connected_sum(&c, &d).unwrap(), spec(0, &[], 2, false));
        assert_eq!(connected_sum(&b, &ManifoldSpec::sphere()).unwrap(), b);
    }

    #[test]
    fn stabilize_examples() {
        let s = spec(0, &[(3, 1)], 1, true);
        assert_eq!(stabilize(&s, 1).unwrap(), spec(0, &[(3, 1)], 3, true));
        assert_eq!(stabilize(&s, 0).unwrap(), s);
        assert_eq!(stabilize(&ManifoldSpec::sphere(), 2).unwrap(), spec(0, &[], 4, true));
        assert_eq!(stabilize(&s, -1), Err(StabilizeError::NegativeCount));
    }

    #[test]
    fn pi1_classes() {
        assert_eq!(classify_pi1(&Pi1Descriptor::trivial()), Pi1Class::Trivial);
        assert_eq!(
            classify_pi1(&Pi1Descriptor::new(0, vec![cyc(7, 1)])),
            Pi1Class::CyclicOddPrimePower(7, 1)
        );
        assert_eq!(
            classify_pi1(&Pi1Descriptor::new(2, vec![cyc(3, 1), cyc(5, 2)])),
            Pi1Class::MixedFreeProduct
        );
        assert_eq!(classify_pi1(&Pi1Descriptor::new(3, vec![])), Pi1Class::Free(3));
        assert_eq!(
            classify_pi1(&Pi1Descriptor::new(0, vec![cyc(3, 1), cyc(3, 1)])),
            Pi1Class::MixedFreeProduct
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(spec(2, &[(3, 2)], 2, true).pi1.to_string(), "Z*Z*Z/9");
        assert_eq!(Pi1Descriptor::trivial().to_string(), "1");
        assert_eq!(
            spec(0, &[(5, 1), (3, 3)], 1, false).to_string(),
            "pi1 = Z/5*Z/27; b2 = 1; sigma-f = nontrivial"
        );
    }

    fn arb_spec() -> impl Strategy<Value = ManifoldSpec> {
        (
            0u32..4,
            proptest::collection::vec((prop::sample::select(vec![3u64, 5, 7, 11]), 1u32..4), 0..3),
            0u32..5,
            any::<bool>(),
        )
            .prop_map(|(m, cyc, b2, flag)| {
                let cyc: Vec<(u64, u32)> = cyc;
                spec(m, &cyc, b2 + u32::from(!flag), flag)
            })
    }

    proptest! {
        #[test]
        fn connected_sum_commutes_and_associates(a in arb_spec(), b in arb_spec(), c in arb_spec()) {
            prop_assert_eq!(connected_sum(&a, &b).unwrap(), connected_sum(&b, &a).unwrap());
            let left = connected_sum(&connected_sum(&a, &b).unwrap(), &c).unwrap();
            let right = connected_sum(&a, &connected_sum(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn stabilize_composes(s in arb_spec(), a in 0i64..5, b in 0i64..5) {
            let twice = stabilize(&stabilize(&s, a).unwrap(), b).unwrap();
            prop_assert_eq!(twice, stabilize(&s, a + b).unwrap());
        }

        #[test]
        fn free_sum_cyclic_is_mixed(m in 1u32..4, p in prop::sample::select(vec![3u64, 5, 7]), r in 1u32..3, b2 in 0u32..3) {
            let free = spec(m, &[], b2, true);
            let cyclic = spec(0, &[(p, r)], 0, true);
            let sum = connected_sum(&free, &cyclic).unwrap();
            prop_assert_eq!(sum.pi1_class(), Pi1Class::MixedFreeProduct);
        }

        #[test]
        fn validate_accepts_everything_else(s in arb_spec()) {
            prop_assert!(validate(&s).is_ok());
        }
    }
}
