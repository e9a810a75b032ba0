//! Sign-valued characters on finite groups.
//!
//! An orientation character records which loops of a manifold preserve local
//! orientation: `+1` on orientation-preserving classes, `-1` otherwise. The
//! trivial character models an orientable manifold.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::catalog;
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::enumerate_homs;

/// A multiplicative sign, `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("expected {expected} signs, got {got}")]
    WrongSignCount { expected: usize, got: usize },
    #[error("identity must carry sign +")]
    IdentityNotPositive,
    #[error("not multiplicative: fails at pair ({a}, {b})")]
    NotMultiplicative { a: usize, b: usize },
}

/// A validated homomorphism into `{+1, -1}`, one sign per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationCharacter {
    group: FiniteGroup,
    signs: Vec<Sign>,
}

impl OrientationCharacter {
    pub fn new(group: FiniteGroup, signs: Vec<Sign>) -> Result<Self, CharacterError> {
        if signs.len() != group.order() {
            return Err(CharacterError::WrongSignCount {
                expected: group.order(),
                got: signs.len(),
            });
        }
        if signs[0] != Sign::Plus {
            return Err(CharacterError::IdentityNotPositive);
        }
        for a in group.elements() {
            for b in group.elements() {
                if signs[group.mul(a, b)] != signs[a] * signs[b] {
                    return Err(CharacterError::NotMultiplicative { a, b });
                }
            }
        }
        Ok(OrientationCharacter { group, signs })
    }

    /// The all-positive character (orientable case).
    pub fn trivial(group: &FiniteGroup) -> Self {
        OrientationCharacter {
            group: group.clone(),
            signs: vec![Sign::Plus; group.order()],
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn sign(&self, element: usize) -> Sign {
        self.signs[element]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|&s| s == Sign::Plus)
    }

    /// The subgroup of elements with sign `+1`. Its index is 1 or 2.
    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = self
            .group
            .elements()
            .filter(|&g| self.signs[g] == Sign::Plus)
            .collect();
        Subgroup::from_members(&self.group, &members).expect("character kernel is a subgroup")
    }
}

/// Every orientation character of `group`, in a deterministic order
/// (trivial character first). Computed as homomorphisms into the order-2
/// cyclic group.
pub fn all_characters(group: &FiniteGroup) -> Vec<OrientationCharacter> {
    let c2 = catalog::cyclic(2);
    enumerate_homs(group, &c2)
        .expect("order-2 target is within budget")
        .into_iter()
        .map(|h| {
            let signs = h
                .images()
                .iter()
                .map(|&i| if i == 0 { Sign::Plus } else { Sign::Minus })
                .collect();
            OrientationCharacter::new(group.clone(), signs).expect("hom to C2 gives a character")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sign_vec(pattern: &str) -> Vec<Sign> {
        pattern
            .chars()
            .map(|c| if c == '+' { Sign::Plus } else { Sign::Minus })
            .collect()
    }

    /// Independent oracle: all sign vectors of length `order` that are
    /// multiplicative with positive identity.
    fn naive_characters(group: &FiniteGroup) -> Vec<Vec<Sign>> {
        let n = group.order();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let signs: Vec<Sign> = (0..n)
                .map(|i| {
                    if mask & (1 << i) == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect();
            if OrientationCharacter::new(group.clone(), signs.clone()).is_ok() {
                out.push(signs);
            }
        }
        out
    }

    #[test]
    fn trivial_character_is_valid_anywhere() {
        let q8 = catalog::quaternion8();
        let w = OrientationCharacter::trivial(&q8);
        assert!(w.is_trivial());
        assert_eq!(w.kernel().order(), 8);
    }

    #[test]
    fn sign_character_of_s3() {
        let s3 = catalog::dihedral(3);
        let w = OrientationCharacter::new(s3, sign_vec("+++---")).unwrap();
        assert_eq!(w.kernel().members(), &[0, 1, 2]);
    }

    #[test]
    fn non_multiplicative_signs_on_z3_are_rejected() {
        let z3 = catalog::cyclic(3);
        let err = OrientationCharacter::new(z3, sign_vec("+--")).unwrap_err();
        assert_eq!(err, CharacterError::NotMultiplicative { a: 1, b: 1 });
    }

    #[test]
    fn identity_sign_must_be_positive() {
        let z2 = catalog::cyclic(2);
        let err = OrientationCharacter::new(z2, sign_vec("-+")).unwrap_err();
        assert_eq!(err, CharacterError::IdentityNotPositive);
    }

    #[test]
    fn character_counts_across_the_catalog() {
        let expected = [
            ("C2", 2),
            ("C3", 1),
            ("C4", 2),
            ("C6", 2),
            ("C8", 2),
            ("C2xC2", 4),
            ("C2xC4", 4),
            ("S3", 2),
            ("D4", 4),
            ("Q8", 4),
        ];
        for (name, count) in expected {
            let group = catalog::by_name(name).unwrap();
            let chars = all_characters(&group);
            assert_eq!(chars.len(), count, "{name}");
            let as_bits = |signs: &[Sign]| -> Vec<bool> {
                signs.iter().map(|&s| s == Sign::Minus).collect()
            };
            let mut fast: Vec<Vec<bool>> = chars.iter().map(|c| as_bits(c.signs())).collect();
            let mut naive: Vec<Vec<bool>> = naive_characters(&group)
                .iter()
                .map(|s| as_bits(s))
                .collect();
            naive.sort();
            assert!(fast.windows(2).all(|w| w[0] < w[1]), "{name} order");
            fast.sort();
            assert_eq!(fast, naive, "{name}");
        }
    }

    #[test]
    fn kernel_index_is_one_or_two() {
        for entry in catalog::catalog() {
            for w in all_characters(&entry.group) {
                let index = w.kernel().index_in_parent();
                assert!(index == 1 || index == 2, "{}", entry.name);
            }
        }
    }
}
