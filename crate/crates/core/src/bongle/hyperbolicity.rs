use serde::{Deserialize, Serialize};

use super::{Bongle, BongleError};
use crate::numerics::constants;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NonAltType {
    TypeI,
    TypeII,
    TypeIII,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HyperbolicityReason {
    AlternatingBongle,
    Whitehead,
    SixTwoSquared,
    TrivialTwoLink,
    SixOneSquaredBraid,
    NonAlternatingTypeI,
    NonAlternatingTypeII,
    NonAlternatingTypeIII,
}

impl From<NonAltType> for HyperbolicityReason {
    fn from(t: NonAltType) -> Self {
        match t {
            NonAltType::TypeI => HyperbolicityReason::NonAlternatingTypeI,
            NonAltType::TypeII => HyperbolicityReason::NonAlternatingTypeII,
            NonAltType::TypeIII => HyperbolicityReason::NonAlternatingTypeIII,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicityVerdict {
    pub is_hyperbolic: bool,
    pub reason: HyperbolicityReason,
    /// Exterior volume for the two hyperbolic 2-bongles.
    pub known_volume: Option<f64>,
    /// Set when the reason is a conventional choice rather than a settled fact.
    pub provisional: bool,
}

/// Type of a non-alternating bongle, checked in the order I, III, II.
pub fn classify_nonalternating(b: &Bongle) -> Result<NonAltType, BongleError> {
    let pairs = b.non_alternating_pairs();
    if pairs.is_empty() {
        return Err(BongleError::AlternatingInput);
    }
    let side = |i: usize| b.charms()[i].side;
    if pairs.iter().any(|p| side(p.left) == side(p.right)) {
        return Ok(NonAltType::TypeI);
    }
    let mut seen = vec![0u8; b.len()];
    for p in &pairs {
        seen[p.left] += 1;
        seen[p.right] += 1;
    }
    if seen.iter().any(|&c| c >= 2) {
        Ok(NonAltType::TypeIII)
    } else {
        Ok(NonAltType::TypeII)
    }
}

pub fn decide_hyperbolic(b: &Bongle) -> HyperbolicityVerdict {
    let alternating = b.is_alternating();
    if b.len() == 2 {
        let same_side = b.charms()[0].side == b.charms()[1].side;
        let c = constants();
        return match (alternating, same_side) {
            (true, true) => verdict(true, HyperbolicityReason::Whitehead, Some(c.vol_whitehead), false),
            (true, false) => verdict(true, HyperbolicityReason::SixTwoSquared, Some(c.vol_622), false),
            // Same-side monogons give linking number 0, mixed sides give 3.
            (false, true) => verdict(false, HyperbolicityReason::TrivialTwoLink, None, true),
            (false, false) => verdict(false, HyperbolicityReason::SixOneSquaredBraid, None, true),
        };
    }
    if alternating {
        verdict(true, HyperbolicityReason::AlternatingBongle, None, false)
    } else {
        let t = classify_nonalternating(b).expect("non-alternating bongle has a pair");
        verdict(false, t.into(), None, false)
    }
}

fn verdict(
    is_hyperbolic: bool,
    reason: HyperbolicityReason,
    known_volume: Option<f64>,
    provisional: bool,
) -> HyperbolicityVerdict {
    HyperbolicityVerdict {
        is_hyperbolic,
        reason,
        known_volume,
        provisional,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Bongle {
        s.parse().unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_nonalternating(&b("O0 O1 O0 O1")), Ok(NonAltType::TypeI));
        assert_eq!(classify_nonalternating(&b("O0 I1 O0")), Ok(NonAltType::TypeIII));
        assert_eq!(classify_nonalternating(&b("O0 I1 O1 I0")), Ok(NonAltType::TypeII));
        assert_eq!(
            classify_nonalternating(&b("O0 O0 O0")),
            Err(BongleError::AlternatingInput)
        );
    }

    #[test]
    fn two_bongles() {
        let v = decide_hyperbolic(&b("O0 O0"));
        assert!(v.is_hyperbolic);
        assert_eq!(v.reason, HyperbolicityReason::Whitehead);
        assert!((v.known_volume.unwrap() - 3.6638).abs() < 1e-4);

        let v = decide_hyperbolic(&b("O0 I0"));
        assert_eq!(v.reason, HyperbolicityReason::SixTwoSquared);
        assert!((v.known_volume.unwrap() - 4.0597).abs() < 1e-4);

        let v = decide_hyperbolic(&b("O0 O1"));
        assert!(!v.is_hyperbolic && v.provisional);
        assert_eq!(v.reason, HyperbolicityReason::TrivialTwoLink);
        assert_eq!(v.known_volume, None);

        let v = decide_hyperbolic(&b("I0 O1"));
        assert_eq!(v.reason, HyperbolicityReason::SixOneSquaredBraid);
    }

    #[test]
    fn larger_bongles() {
        let v = decide_hyperbolic(&b("O0 O1 O0 O1"));
        assert!(!v.is_hyperbolic);
        assert_eq!(v.reason, HyperbolicityReason::NonAlternatingTypeI);
        let v = decide_hyperbolic(&b("O1 I1 O1"));
        assert!(v.is_hyperbolic);
        assert_eq!(v.reason, HyperbolicityReason::AlternatingBongle);
        assert!(!v.provisional);
    }
}
