//! Reidemeister coincidence classes of a pair of maps, presented at the
//! fundamental-group level.
//!
//! A [`CoincidencePair`] carries two homomorphisms `phi, psi: G -> N` (the
//! induced maps of a pair `f, g: M -> N`) together with orientation
//! characters on both groups. Its Reidemeister classes are the orbits of the
//! twisted action `g . a = psi(g) * a * phi(g)^{-1}` on `N`; each class
//! carries its stabilizer (the twisted equalizer at the canonical
//! representative) and a defectiveness flag: a class is defective when some
//! stabilizer element reverses the local orientation of the graph map, i.e.
//! has combined sign -1.

use thiserror::Error;

use crate::character::{OrientationCharacter, Sign};
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::{twisted_equalizer, Homomorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("maps do not share a source group")]
    SourceMismatch,
    #[error("maps do not share a target group")]
    TargetMismatch,
    #[error("source character lives on the wrong group")]
    SourceCharacterMismatch,
    #[error("target character lives on the wrong group")]
    TargetCharacterMismatch,
}

/// Two parallel maps plus orientation data: the algebraic shadow of a pair
/// `f, g: M -> N` between closed manifolds of the same dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidencePair {
    phi: Homomorphism,
    psi: Homomorphism,
    w_source: OrientationCharacter,
    w_target: OrientationCharacter,
}

impl CoincidencePair {
    pub fn new(
        phi: Homomorphism,
        psi: Homomorphism,
        w_source: OrientationCharacter,
        w_target: OrientationCharacter,
    ) -> Result<Self, PairError> {
        if phi.source() != psi.source() {
            return Err(PairError::SourceMismatch);
        }
        if phi.target() != psi.target() {
            return Err(PairError::TargetMismatch);
        }
        if w_source.group() != phi.source() {
            return Err(PairError::SourceCharacterMismatch);
        }
        if w_target.group() != phi.target() {
            return Err(PairError::TargetCharacterMismatch);
        }
        Ok(CoincidencePair {
            phi,
            psi,
            w_source,
            w_target,
        })
    }

    pub fn source(&self) -> &FiniteGroup {
        self.phi.source()
    }

    pub fn target(&self) -> &FiniteGroup {
        self.phi.target()
    }

    pub fn phi(&self) -> &Homomorphism {
        &self.phi
    }

    pub fn psi(&self) -> &Homomorphism {
        &self.psi
    }

    pub fn w_source(&self) -> &OrientationCharacter {
        &self.w_source
    }

    pub fn w_target(&self) -> &OrientationCharacter {
        &self.w_target
    }

    /// The twisted action `g . alpha = psi(g) * alpha * phi(g)^{-1}`.
    pub fn act(&self, g: usize, alpha: usize) -> usize {
        let n = self.target();
        n.mul(
            n.mul(self.psi.apply(g), alpha),
            n.inv(self.phi.apply(g)),
        )
    }

    /// The combined sign `c(g) = w_M(g) * w_N(phi(g))`.
    ///
    /// `c(g) = -1` says a loop along `g` brings the local orientation of the
    /// graph map back reversed; this single character is what defectiveness
    /// and the semi-index calculus consume.
    pub fn combined_character(&self) -> OrientationCharacter {
        let signs: Vec<Sign> = self
            .source()
            .elements()
            .map(|g| self.w_source.sign(g) * self.w_target.sign(self.phi.apply(g)))
            .collect();
        OrientationCharacter::new(self.source().clone(), signs)
            .expect("product of characters through a homomorphism is a character")
    }

    /// All Reidemeister classes, ordered by canonical (minimal) representative.
    /// Together the orbits partition every element of the target group.
    pub fn reidemeister_classes(&self) -> Vec<ReidemeisterClass> {
        let n = self.target();
        let c = self.combined_character();
        let mut assigned = vec![false; n.order()];
        let mut classes = Vec::new();
        for alpha in n.elements() {
            if assigned[alpha] {
                continue;
            }
            let mut orbit: Vec<usize> = self
                .source()
                .elements()
                .map(|g| self.act(g, alpha))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &a in &orbit {
                assigned[a] = true;
            }
            classes.push(self.class_at(orbit, &c));
        }
        classes
    }

    /// The class containing `alpha`, canonicalized to the orbit minimum.
    pub fn class_of(&self, alpha: usize) -> ReidemeisterClass {
        assert!(
            alpha < self.target().order(),
            "twist {alpha} outside the target group"
        );
        let mut orbit: Vec<usize> = self
            .source()
            .elements()
            .map(|g| self.act(g, alpha))
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        let c = self.combined_character();
        self.class_at(orbit, &c)
    }

    fn class_at(&self, orbit: Vec<usize>, c: &OrientationCharacter) -> ReidemeisterClass {
        let twist = orbit[0];
        let stabilizer =
            twisted_equalizer(&self.phi, &self.psi, twist).expect("pair shares domains");
        debug_assert_eq!(orbit.len() * stabilizer.order(), self.source().order());
        let defective = stabilizer
            .members()
            .iter()
            .any(|&g| c.sign(g) == Sign::Minus);
        ReidemeisterClass {
            twist,
            orbit,
            stabilizer,
            defective,
        }
    }

    /// Recomputes defectiveness of a class from its stabilizer: true iff some
    /// stabilizer element has combined sign -1.
    pub fn is_defective(&self, class: &ReidemeisterClass) -> bool {
        let c = self.combined_character();
        class
            .stabilizer()
            .members()
            .iter()
            .any(|&g| c.sign(g) == Sign::Minus)
    }

    /// Checks the center-propagation property: when the image of `phi` lies
    /// in the center of the target, defectiveness must be uniform across all
    /// classes (either every class is defective or none is).
    pub fn center_propagation(&self) -> CenterPropagation {
        let center = self.target().center();
        let in_center = self
            .phi
            .images()
            .iter()
            .all(|&v| center.contains(v));
        if !in_center {
            return CenterPropagation::NotApplicable;
        }
        let classes = self.reidemeister_classes();
        let defective = classes.iter().filter(|c| c.is_defective()).count();
        CenterPropagation::Checked {
            defective_classes: defective,
            total_classes: classes.len(),
        }
    }
}

/// One Reidemeister class: an orbit of the twisted action with its canonical
/// representative, stabilizer, and defectiveness flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReidemeisterClass {
    pub(crate) twist: usize,
    pub(crate) orbit: Vec<usize>,
    pub(crate) stabilizer: Subgroup,
    pub(crate) defective: bool,
}

impl ReidemeisterClass {
    /// Canonical representative: the smallest element of the orbit.
    pub fn representative(&self) -> usize {
        self.twist
    }

    /// Sorted orbit members.
    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn size(&self) -> usize {
        self.orbit.len()
    }

    /// The twisted equalizer at the canonical representative.
    pub fn stabilizer(&self) -> &Subgroup {
        &self.stabilizer
    }

    pub fn is_defective(&self) -> bool {
        self.defective
    }
}

/// Orientation behavior of a single map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapType {
    /// Orientation-true: loops preserve orientation iff their images do.
    I,
    /// Not orientation-true, but no orientation-reversing loop maps to a
    /// contractible loop.
    II,
    /// Some orientation-reversing loop maps to a contractible loop.
    III,
}

impl MapType {
    /// Types I and II are the orientable maps.
    pub fn orientable(self) -> bool {
        !matches!(self, MapType::III)
    }
}

impl std::fmt::Display for MapType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MapType::I => "I",
            MapType::II => "II",
            MapType::III => "III",
        })
    }
}

/// Classifies a map by how it transports orientation. Exactly one type is
/// returned: type I when `w_M = w_N . phi` everywhere, otherwise type III when
/// some kernel element of `phi` reverses orientation, otherwise type II.
pub fn orientation_type(
    phi: &Homomorphism,
    w_source: &OrientationCharacter,
    w_target: &OrientationCharacter,
) -> MapType {
    assert_eq!(w_source.group(), phi.source(), "source character mismatch");
    assert_eq!(w_target.group(), phi.target(), "target character mismatch");
    let orientation_true = phi
        .source()
        .elements()
        .all(|g| w_source.sign(g) == w_target.sign(phi.apply(g)));
    if orientation_true {
        return MapType::I;
    }
    let kills_reversing_loop = phi
        .source()
        .elements()
        .any(|g| phi.apply(g) == 0 && w_source.sign(g) == Sign::Minus);
    if kills_reversing_loop {
        MapType::III
    } else {
        MapType::II
    }
}

/// Root-class analysis of a single map `phi`: the classes of the pair
/// `(phi, constant)` together with the two structural checks: orientable
/// maps have no defective root class, and type III maps have only defective
/// root classes.
#[derive(Clone, Debug)]
pub struct RootReport {
    pub map_type: MapType,
    pub classes: Vec<ReidemeisterClass>,
    pub orientable_check: bool,
    pub type_three_check: bool,
}

impl RootReport {
    pub fn pass(&self) -> bool {
        self.orientable_check && self.type_three_check
    }
}

/// Builds the root pair `(phi, constant)` and verifies the defectiveness
/// pattern its type dictates.
pub fn verify_root_theorems(
    phi: &Homomorphism,
    w_source: &OrientationCharacter,
    w_target: &OrientationCharacter,
) -> RootReport {
    let map_type = orientation_type(phi, w_source, w_target);
    let constant = Homomorphism::constant(phi.source(), phi.target());
    let pair = CoincidencePair::new(
        phi.clone(),
        constant,
        w_source.clone(),
        w_target.clone(),
    )
    .expect("root pair shares domains by construction");
    let classes = pair.reidemeister_classes();
    let any_defective = classes.iter().any(|c| c.is_defective());
    let all_defective = classes.iter().all(|c| c.is_defective());
    let orientable_check = !map_type.orientable() || !any_defective;
    let type_three_check = map_type != MapType::III || all_defective;
    RootReport {
        map_type,
        classes,
        orientable_check,
        type_three_check,
    }
}

/// Outcome of the center-propagation check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterPropagation {
    /// The image of `phi` is not central in the target; nothing to check.
    NotApplicable,
    /// The image is central; defectiveness must then be all-or-nothing.
    Checked {
        defective_classes: usize,
        total_classes: usize,
    },
}

impl CenterPropagation {
    pub fn pass(&self) -> bool {
        match *self {
            CenterPropagation::NotApplicable => true,
            CenterPropagation::Checked {
                defective_classes,
                total_classes,
            } => defective_classes == 0 || defective_classes == total_classes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::character::all_characters;
    use crate::hom::enumerate_homs;

    fn sign_vec(pattern: &str) -> Vec<Sign> {
        pattern
            .chars()
            .map(|c| if c == '+' { Sign::Plus } else { Sign::Minus })
            .collect()
    }

    fn z4_mod2_pair() -> CoincidencePair {
        // G = Z4 with w_M = (-1)^x, N = Z2 with trivial w_N, phi = psi = mod 2.
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let phi = Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let w_m = OrientationCharacter::new(z4, sign_vec("+-+-")).unwrap();
        let w_n = OrientationCharacter::trivial(&z2);
        CoincidencePair::new(phi.clone(), phi, w_m, w_n).unwrap()
    }

    #[test]
    fn combined_character_with_trivial_target_is_source_character() {
        let pair = z4_mod2_pair();
        assert_eq!(pair.combined_character().signs(), pair.w_source().signs());
    }

    #[test]
    fn combined_character_of_orientation_true_pair_is_trivial() {
        let s3 = catalog::dihedral(3);
        let id = Homomorphism::identity(&s3);
        let w = OrientationCharacter::new(s3.clone(), sign_vec("+++---")).unwrap();
        let pair = CoincidencePair::new(id.clone(), id, w.clone(), w).unwrap();
        assert!(pair.combined_character().is_trivial());
    }

    #[test]
    fn combined_character_example_on_z4() {
        let pair = z4_mod2_pair();
        assert_eq!(pair.combined_character().sign(1), Sign::Minus);
    }

    #[test]
    fn identity_pair_on_s3_gives_conjugacy_classes() {
        let s3 = catalog::dihedral(3);
        let id = Homomorphism::identity(&s3);
        let w = OrientationCharacter::trivial(&s3);
        let pair = CoincidencePair::new(id.clone(), id, w.clone(), w).unwrap();
        let classes = pair.reidemeister_classes();
        let sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(classes[1].orbit(), &[1, 2]);
        assert_eq!(classes[2].orbit(), &[3, 4, 5]);
    }

    #[test]
    fn constant_pair_has_singleton_classes() {
        let s3 = catalog::dihedral(3);
        let c = Homomorphism::constant(&s3, &s3);
        let w = OrientationCharacter::trivial(&s3);
        let pair = CoincidencePair::new(c.clone(), c, w.clone(), w).unwrap();
        let classes = pair.reidemeister_classes();
        assert_eq!(classes.len(), 6);
        assert!(classes.iter().all(|cl| cl.size() == 1));
    }

    #[test]
    fn identity_vs_negation_on_z4_gives_two_classes() {
        let z4 = catalog::cyclic(4);
        let id = Homomorphism::identity(&z4);
        let neg = Homomorphism::new(z4.clone(), z4.clone(), vec![0, 3, 2, 1]).unwrap();
        let w = OrientationCharacter::trivial(&z4);
        let pair = CoincidencePair::new(id, neg, w.clone(), w).unwrap();
        let classes = pair.reidemeister_classes();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].orbit(), &[0, 2]);
        assert_eq!(classes[1].orbit(), &[1, 3]);
    }

    #[test]
    fn trivial_characters_mean_no_defective_classes() {
        let s3 = catalog::dihedral(3);
        let id = Homomorphism::identity(&s3);
        let w = OrientationCharacter::trivial(&s3);
        let pair = CoincidencePair::new(id.clone(), id, w.clone(), w).unwrap();
        assert!(pair.reidemeister_classes().iter().all(|c| !c.is_defective()));
    }

    #[test]
    fn mod2_pair_class_is_defective() {
        let pair = z4_mod2_pair();
        let classes = pair.reidemeister_classes();
        assert_eq!(classes.len(), 2);
        let class0 = &classes[0];
        assert_eq!(class0.stabilizer().order(), 4);
        assert!(class0.is_defective());
        assert!(pair.is_defective(class0));
    }

    #[test]
    fn matching_sign_characters_square_away() {
        let s3 = catalog::dihedral(3);
        let id = Homomorphism::identity(&s3);
        let w = OrientationCharacter::new(s3.clone(), sign_vec("+++---")).unwrap();
        let pair = CoincidencePair::new(id.clone(), id, w.clone(), w).unwrap();
        assert!(pair.reidemeister_classes().iter().all(|c| !c.is_defective()));
    }

    #[test]
    fn orientation_type_identity_is_type_one() {
        let s3 = catalog::dihedral(3);
        let id = Homomorphism::identity(&s3);
        let w = OrientationCharacter::new(s3, sign_vec("+++---")).unwrap();
        assert_eq!(orientation_type(&id, &w, &w), MapType::I);
    }

    #[test]
    fn orientation_type_mod2_is_type_two() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let phi = Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let w_m = OrientationCharacter::new(z4, sign_vec("+-+-")).unwrap();
        let w_n = OrientationCharacter::trivial(&z2);
        assert_eq!(orientation_type(&phi, &w_m, &w_n), MapType::II);
    }

    #[test]
    fn orientation_type_collapsing_map_is_type_three() {
        let z2 = catalog::cyclic(2);
        let c = Homomorphism::constant(&z2, &z2);
        let w_m = OrientationCharacter::new(z2.clone(), sign_vec("+-")).unwrap();
        let w_n = OrientationCharacter::trivial(&z2);
        assert_eq!(orientation_type(&c, &w_m, &w_n), MapType::III);
    }

    #[test]
    fn type_three_needs_a_nontrivial_source_character() {
        for entry in catalog::catalog() {
            let w = OrientationCharacter::trivial(&entry.group);
            for h in enumerate_homs(&entry.group, &entry.group).unwrap() {
                assert_ne!(orientation_type(&h, &w, &w), MapType::III);
            }
        }
    }

    #[test]
    fn no_orientation_true_map_from_nonorientable_to_orientable() {
        for entry in catalog::catalog() {
            let target = catalog::cyclic(2);
            let w_n = OrientationCharacter::trivial(&target);
            for w_m in all_characters(&entry.group) {
                if w_m.is_trivial() {
                    continue;
                }
                for h in enumerate_homs(&entry.group, &target).unwrap() {
                    assert_ne!(orientation_type(&h, &w_m, &w_n), MapType::I);
                }
            }
        }
    }

    #[test]
    fn root_report_type_three_all_defective() {
        let z2 = catalog::cyclic(2);
        let c = Homomorphism::constant(&z2, &z2);
        let w_m = OrientationCharacter::new(z2.clone(), sign_vec("+-")).unwrap();
        let w_n = OrientationCharacter::trivial(&z2);
        let report = verify_root_theorems(&c, &w_m, &w_n);
        assert_eq!(report.map_type, MapType::III);
        assert!(report.classes.iter().all(|c| c.is_defective()));
        assert!(report.pass());
    }

    #[test]
    fn root_report_orientable_no_defective() {
        let s3 = catalog::dihedral(3);
        let id = Homomorphism::identity(&s3);
        let w = OrientationCharacter::trivial(&s3);
        let report = verify_root_theorems(&id, &w, &w);
        assert_eq!(report.map_type, MapType::I);
        assert!(report.classes.iter().all(|c| !c.is_defective()));
        assert!(report.pass());
    }

    #[test]
    fn root_report_type_two_no_defective() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let phi = Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let w_m = OrientationCharacter::new(z4, sign_vec("+-+-")).unwrap();
        let w_n = OrientationCharacter::trivial(&z2);
        let report = verify_root_theorems(&phi, &w_m, &w_n);
        assert_eq!(report.map_type, MapType::II);
        // Root classes are the cosets of the image; mod 2 is onto, so one class.
        assert_eq!(report.classes.len(), 1);
        assert!(report.classes.iter().all(|c| !c.is_defective()));
        assert!(report.pass());
    }

    #[test]
    fn center_propagation_uniform_on_abelian_target() {
        let pair = z4_mod2_pair();
        let outcome = pair.center_propagation();
        assert_eq!(
            outcome,
            CenterPropagation::Checked {
                defective_classes: 2,
                total_classes: 2
            }
        );
        assert!(outcome.pass());
    }

    #[test]
    fn center_propagation_trivial_target() {
        let z2 = catalog::cyclic(2);
        let trivial = catalog::cyclic(1);
        let c = Homomorphism::constant(&z2, &trivial);
        let w_m = OrientationCharacter::trivial(&z2);
        let w_n = OrientationCharacter::trivial(&trivial);
        let pair = CoincidencePair::new(c.clone(), c, w_m, w_n).unwrap();
        assert!(pair.center_propagation().pass());
    }

    #[test]
    fn center_propagation_not_applicable_for_full_image() {
        let s3 = catalog::dihedral(3);
        let id = Homomorphism::identity(&s3);
        let w = OrientationCharacter::trivial(&s3);
        let pair = CoincidencePair::new(id.clone(), id, w.clone(), w).unwrap();
        assert_eq!(pair.center_propagation(), CenterPropagation::NotApplicable);
    }

    #[test]
    fn classes_partition_the_target_group() {
        let pair = z4_mod2_pair();
        let classes = pair.reidemeister_classes();
        let mut seen = vec![0usize; pair.target().order()];
        for class in &classes {
            for &a in class.orbit() {
                seen[a] += 1;
            }
        }
        assert!(seen.iter().all(|&s| s == 1));
    }

    #[test]
    fn stabilizer_characters_agree_on_both_maps() {
        // On a class stabilizer, w_N(phi(g)) = w_N(psi(g)).
        let z4 = catalog::cyclic(4);
        let id = Homomorphism::identity(&z4);
        let neg = Homomorphism::new(z4.clone(), z4.clone(), vec![0, 3, 2, 1]).unwrap();
        let w_m = OrientationCharacter::new(z4.clone(), sign_vec("+-+-")).unwrap();
        let w_n = OrientationCharacter::new(z4, sign_vec("+-+-")).unwrap();
        let pair = CoincidencePair::new(id, neg, w_m, w_n).unwrap();
        for class in pair.reidemeister_classes() {
            for &g in class.stabilizer().members() {
                assert_eq!(
                    pair.w_target().sign(pair.phi().apply(g)),
                    pair.w_target().sign(pair.psi().apply(g))
                );
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn defectiveness_is_representative_invariant(
            gidx in 0..catalog::catalog().len(),
            pick in proptest::num::usize::ANY,
            cpick in proptest::num::usize::ANY,
        ) {
            let group = catalog::catalog()[gidx].group.clone();
            let homs = enumerate_homs(&group, &group).unwrap();
            let phi = homs[pick % homs.len()].clone();
            let psi = homs[(pick / homs.len()) % homs.len()].clone();
            let chars = all_characters(&group);
            let w_m = chars[cpick % chars.len()].clone();
            let w_n = chars[(cpick / chars.len()) % chars.len()].clone();
            let pair = CoincidencePair::new(phi, psi, w_m, w_n).unwrap();
            let c = pair.combined_character();
            for class in pair.reidemeister_classes() {
                for &alt in class.orbit() {
                    let stab = twisted_equalizer(pair.phi(), pair.psi(), alt).unwrap();
                    let defective = stab.members().iter().any(|&g| c.sign(g) == Sign::Minus);
                    proptest::prop_assert_eq!(defective, class.is_defective());
                    proptest::prop_assert_eq!(stab.order() * class.size(), group.order());
                }
            }
        }
    }
}
