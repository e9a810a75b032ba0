//! Regular finite coverings and the behavior of coincidence classes under
//! lifting.
//!
//! A covering of the source (resp. target) is encoded by a normal subgroup
//! `K_M` of `G` (resp. `K_N` of `N`): the image of the covering space's
//! fundamental group. Deck transformation groups are the quotients
//! `D_M = G/K_M` and `D_N = N/K_N`. A pair of maps lifts exactly when both
//! homomorphisms carry `K_M` into `K_N`.
//!
//! For a class with twist `alpha` and semi-index `s`, the lifted classes all
//! receive semi-index `s*k` (or `s*k mod 2` when the class downstairs is
//! defective), where `k` is the size of the stabilizer's image in `D_M`.
//! [`lift_formula`] computes that closed form; [`lift_oracle`] instead builds
//! the full upstairs coincidence set point by point, partitions it into
//! lifted classes by deck-coset arithmetic, and runs the semi-index calculus
//! on each lifted class. The two must agree on every valid input; the
//! verification harness treats a mismatch as a finding, not a crash.

use thiserror::Error;

use crate::character::{OrientationCharacter, Sign};
use crate::classes::{CoincidencePair, ReidemeisterClass};
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::{twisted_equalizer, Homomorphism};
use crate::semi_index::ClassConfiguration;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error("subgroup K_{side} does not live in the pair's {side} group")]
    ForeignSubgroup { side: &'static str },
    #[error("K_{side} is not normal")]
    NotNormal { side: &'static str },
    #[error("pair does not lift: {map} does not carry K_M into K_N")]
    NotLiftable { map: &'static str },
    #[error("source character is trivial: the source is already orientable")]
    SourceOrientable,
    #[error("target character is nontrivial: the target must be orientable")]
    TargetNonorientable,
}

/// A pair of regular coverings of source and target along which both maps
/// lift, with the deck groups and projections materialized.
#[derive(Clone, Debug)]
pub struct RegularCovering {
    k_source: Subgroup,
    k_target: Subgroup,
    deck_source: FiniteGroup,
    deck_target: FiniteGroup,
    j_source: Homomorphism,
    j_target: Homomorphism,
}

impl RegularCovering {
    /// Validates normality of both subgroups and liftability of both maps,
    /// then builds the deck data.
    pub fn new(
        pair: &CoincidencePair,
        k_source: Subgroup,
        k_target: Subgroup,
    ) -> Result<Self, CoveringError> {
        if k_source.parent() != pair.source() {
            return Err(CoveringError::ForeignSubgroup { side: "M" });
        }
        if k_target.parent() != pair.target() {
            return Err(CoveringError::ForeignSubgroup { side: "N" });
        }
        if !k_source.is_normal() {
            return Err(CoveringError::NotNormal { side: "M" });
        }
        if !k_target.is_normal() {
            return Err(CoveringError::NotNormal { side: "N" });
        }
        for (map, hom) in [("f", pair.phi()), ("g", pair.psi())] {
            if !k_source.members().iter().all(|&m| k_target.contains(hom.apply(m))) {
                return Err(CoveringError::NotLiftable { map });
            }
        }
        let (deck_source, j_source) = pair
            .source()
            .quotient_by(&k_source)
            .expect("normality checked");
        let (deck_target, j_target) = pair
            .target()
            .quotient_by(&k_target)
            .expect("normality checked");
        Ok(RegularCovering {
            k_source,
            k_target,
            deck_source,
            deck_target,
            j_source,
            j_target,
        })
    }

    /// The identity covering on both sides: deck groups are trivial.
    pub fn identity(pair: &CoincidencePair) -> Self {
        RegularCovering::new(
            pair,
            Subgroup::whole(pair.source()),
            Subgroup::whole(pair.target()),
        )
        .expect("whole subgroups always lift")
    }

    pub fn k_source(&self) -> &Subgroup {
        &self.k_source
    }

    pub fn k_target(&self) -> &Subgroup {
        &self.k_target
    }

    /// Deck group of the source covering, `G / K_M`.
    pub fn deck_source(&self) -> &FiniteGroup {
        &self.deck_source
    }

    /// Deck group of the target covering, `N / K_N`.
    pub fn deck_target(&self) -> &FiniteGroup {
        &self.deck_target
    }

    /// Projection `G -> D_M`.
    pub fn j_source(&self) -> &Homomorphism {
        &self.j_source
    }

    /// Projection `N -> D_N`.
    pub fn j_target(&self) -> &Homomorphism {
        &self.j_target
    }

    /// Image of a subgroup of `G` inside the source deck group.
    fn project_source_subgroup(&self, sub: &Subgroup) -> Subgroup {
        let mut members: Vec<usize> = sub.members().iter().map(|&g| self.j_source.apply(g)).collect();
        members.sort_unstable();
        members.dedup();
        Subgroup::from_members(&self.deck_source, &members)
            .expect("image of a subgroup is a subgroup")
    }
}

/// The pair induced on deck groups: `phi_bar(j_M(g)) = j_N(phi(g))`, and the
/// same for `psi`. Carries trivial placeholder characters; it is used only
/// for counting fiber coincidences, never for sign computations.
pub fn induced_pair(pair: &CoincidencePair, cov: &RegularCovering) -> CoincidencePair {
    let build = |hom: &Homomorphism, name: &str| -> Homomorphism {
        let mut images = vec![0usize; cov.deck_source.order()];
        let mut seen = vec![false; cov.deck_source.order()];
        for g in pair.source().elements() {
            let d = cov.j_source.apply(g);
            let value = cov.j_target.apply(hom.apply(g));
            if seen[d] {
                assert_eq!(images[d], value, "induced {name} is not well-defined");
            } else {
                seen[d] = true;
                images[d] = value;
            }
        }
        Homomorphism::new(
            cov.deck_source.clone(),
            cov.deck_target.clone(),
            images,
        )
        .expect("induced map of a liftable pair is a homomorphism")
    };
    let phi_bar = build(pair.phi(), "phi");
    let psi_bar = build(pair.psi(), "psi");
    CoincidencePair::new(
        phi_bar,
        psi_bar,
        OrientationCharacter::trivial(&cov.deck_source),
        OrientationCharacter::trivial(&cov.deck_target),
    )
    .expect("deck pair shares domains")
}

/// Deck transformations carrying a coincidence lift over this class to
/// another coincidence lift: the twisted equalizer of the induced pair at
/// the projected twist. Returns the subgroup `E` of `D_M` and its size `T`,
/// the number of coincidence points in the fiber over any point of the class.
pub fn fiber_equalizer(
    pair: &CoincidencePair,
    cov: &RegularCovering,
    class: &ReidemeisterClass,
) -> (Subgroup, usize) {
    let deck_pair = induced_pair(pair, cov);
    let alpha_bar = cov.j_target.apply(class.representative());
    let e = twisted_equalizer(deck_pair.phi(), deck_pair.psi(), alpha_bar)
        .expect("deck pair shares domains");
    let t = e.order();
    (e, t)
}

/// How the fiber coincidences over one class group into lifted classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPartition {
    /// Size of the stabilizer's image in the source deck group; the number of
    /// copies of the class inside each lifted class.
    pub k: usize,
    /// Number of lifted classes, `T / k`.
    pub num_classes: usize,
    /// Left cosets of the projected stabilizer partitioning `E`, each sorted,
    /// ordered by smallest member.
    pub cosets: Vec<Vec<usize>>,
}

/// Partitions the fiber equalizer `E` into left cosets of the projected
/// stabilizer `j_M(stab)`. Each coset indexes one lifted class.
pub fn lifted_class_partition(
    pair: &CoincidencePair,
    cov: &RegularCovering,
    class: &ReidemeisterClass,
) -> LiftedPartition {
    let (e, t) = fiber_equalizer(pair, cov, class);
    let stab_image = cov.project_source_subgroup(class.stabilizer());
    assert!(
        stab_image.members().iter().all(|&d| e.contains(d)),
        "projected stabilizer must sit inside the fiber equalizer"
    );
    let k = stab_image.order();
    let deck = &cov.deck_source;
    let mut assigned = vec![false; deck.order()];
    let mut cosets = Vec::new();
    for &delta in e.members() {
        if assigned[delta] {
            continue;
        }
        let mut coset: Vec<usize> = stab_image
            .members()
            .iter()
            .map(|&s| deck.mul(delta, s))
            .collect();
        coset.sort_unstable();
        for &d in &coset {
            debug_assert!(e.contains(d));
            assigned[d] = true;
        }
        cosets.push(coset);
    }
    let num_classes = t / k;
    debug_assert_eq!(cosets.len(), num_classes);
    LiftedPartition {
        k,
        num_classes,
        cosets,
    }
}

/// Whether the lifted classes over this class are themselves defective:
/// true iff some stabilizer element lies in `K_M` (so it lifts to a loop)
/// and has combined sign -1.
pub fn upstairs_defective(
    pair: &CoincidencePair,
    cov: &RegularCovering,
    class: &ReidemeisterClass,
) -> bool {
    upstairs_defective_with(cov, class, &pair.combined_character())
}

fn upstairs_defective_with(
    cov: &RegularCovering,
    class: &ReidemeisterClass,
    combined: &OrientationCharacter,
) -> bool {
    class
        .stabilizer()
        .members()
        .iter()
        .any(|&g| cov.k_source.contains(g) && combined.sign(g) == Sign::Minus)
}

/// Closed-form semi-index of each lifted class: `s*k mod 2` when the class
/// downstairs is defective, `s*k` otherwise. One value per lifted class, in
/// partition order.
pub fn lift_formula(
    pair: &CoincidencePair,
    cov: &RegularCovering,
    config: &ClassConfiguration,
) -> Vec<usize> {
    let partition = lifted_class_partition(pair, cov, config.class());
    let s = config.semi_index();
    let value = if config.class().is_defective() {
        (s * partition.k) % 2
    } else {
        s * partition.k
    };
    vec![value; partition.num_classes]
}

/// One lifted class as materialized by the oracle.
#[derive(Clone, Debug)]
pub struct OracleClass {
    /// The coset of `j_M(stab)` in `E` indexing this lifted class.
    pub coset: Vec<usize>,
    /// Upstairs points `(point, deck)`: the lift of configuration point
    /// `point` along the fiber copy `deck`.
    pub points: Vec<(usize, usize)>,
    /// Connecting-path labels of the upstairs points, transported back into
    /// the source group.
    pub labels: Vec<usize>,
    pub defective: bool,
    pub semi_index: usize,
}

/// Exhaustive lifting oracle.
///
/// Builds the upstairs coincidence set `{(i, delta) : i a configuration
/// point, delta in E}`, assigns each point to the lifted class of the coset
/// `delta * j_M(stab)`, transports each point's connecting path upstairs
/// (via a stabilizer element realizing the deck displacement from the class
/// base point), and evaluates the semi-index calculus per lifted class.
/// Returns the classes in the same order as [`lifted_class_partition`].
pub fn lift_oracle_classes(
    pair: &CoincidencePair,
    cov: &RegularCovering,
    config: &ClassConfiguration,
) -> Vec<OracleClass> {
    let class = config.class();
    let partition = lifted_class_partition(pair, cov, class);
    let combined = pair.combined_character();
    let u_defective = upstairs_defective_with(cov, class, &combined);
    let deck = &cov.deck_source;
    let group = pair.source();

    partition
        .cosets
        .iter()
        .map(|coset| {
            let mut points = Vec::with_capacity(config.len() * coset.len());
            for i in 0..config.len() {
                for &delta in coset {
                    points.push((i, delta));
                }
            }
            let labels = if points.is_empty() {
                Vec::new()
            } else {
                let (base_point, base_delta) = points[0];
                let base_label = config.labels()[base_point];
                points
                    .iter()
                    .map(|&(i, delta)| {
                        // Smallest stabilizer element whose deck image moves
                        // the base fiber copy onto this one.
                        let displacement = deck.mul(deck.inv(base_delta), delta);
                        let gamma = class
                            .stabilizer()
                            .members()
                            .iter()
                            .copied()
                            .find(|&g| cov.j_source.apply(g) == displacement)
                            .expect("coset members are reachable from the stabilizer");
                        group.mul(
                            group.inv(base_label),
                            group.mul(gamma, config.labels()[i]),
                        )
                    })
                    .collect()
            };
            let upstairs_class = ReidemeisterClass {
                twist: class.representative(),
                orbit: class.orbit().to_vec(),
                stabilizer: class.stabilizer().clone(),
                defective: u_defective,
            };
            let upstairs_config = ClassConfiguration {
                pair: pair.clone(),
                class: upstairs_class,
                labels: labels.clone(),
            };
            OracleClass {
                coset: coset.clone(),
                points,
                labels,
                defective: u_defective,
                semi_index: upstairs_config.semi_index(),
            }
        })
        .collect()
}

/// Per-lifted-class semi-index values from the oracle, aligned with
/// [`lift_formula`].
pub fn lift_oracle(
    pair: &CoincidencePair,
    cov: &RegularCovering,
    config: &ClassConfiguration,
) -> Vec<usize> {
    lift_oracle_classes(pair, cov, config)
        .into_iter()
        .map(|c| c.semi_index)
        .collect()
}

/// Lifting summary of one downstairs class.
#[derive(Clone, Debug)]
pub struct ClassLift {
    pub representative: usize,
    pub defective: bool,
    pub semi_index: usize,
    pub fiber_count: usize,
    pub copies_per_class: usize,
    pub num_classes: usize,
    pub upstairs_defective: bool,
    pub formula: Vec<usize>,
    pub oracle: Vec<usize>,
}

impl ClassLift {
    pub fn matches(&self) -> bool {
        self.formula == self.oracle
    }
}

/// Full lifting report over every class of the pair. Classes with no
/// configuration are treated as empty (no realized points).
#[derive(Clone, Debug)]
pub struct LiftReport {
    pub classes: Vec<ClassLift>,
}

impl LiftReport {
    pub fn all_match(&self) -> bool {
        self.classes.iter().all(ClassLift::matches)
    }

    /// Essential lifted classes across the whole report, by the oracle.
    pub fn upstairs_nielsen(&self) -> usize {
        self.classes
            .iter()
            .map(|c| c.oracle.iter().filter(|&&v| v > 0).count())
            .sum()
    }
}

/// Runs formula and oracle on every class of the pair, pulling each class's
/// configuration from `configs` (by class representative) when present.
pub fn lift_report(
    pair: &CoincidencePair,
    cov: &RegularCovering,
    configs: &[ClassConfiguration],
) -> LiftReport {
    let combined = pair.combined_character();
    let classes = pair.reidemeister_classes();
    let report = classes
        .into_iter()
        .map(|class| {
            let config = configs
                .iter()
                .find(|c| c.class().representative() == class.representative())
                .cloned()
                .unwrap_or_else(|| ClassConfiguration::empty(pair.clone(), class.clone()));
            let (_, t) = fiber_equalizer(pair, cov, &class);
            let partition = lifted_class_partition(pair, cov, &class);
            ClassLift {
                representative: class.representative(),
                defective: class.is_defective(),
                semi_index: config.semi_index(),
                fiber_count: t,
                copies_per_class: partition.k,
                num_classes: partition.num_classes,
                upstairs_defective: upstairs_defective_with(cov, &class, &combined),
                formula: lift_formula(pair, cov, &config),
                oracle: lift_oracle(pair, cov, &config),
            }
        })
        .collect();
    LiftReport { classes: report }
}

/// Per-class outcome of the orientation double cover.
#[derive(Clone, Debug)]
pub struct DoubleCoverClass {
    pub representative: usize,
    pub defective: bool,
    pub semi_index: usize,
    pub num_classes: usize,
    pub lifted_values: Vec<usize>,
    /// Non-defective classes must split into two lifted classes of the same
    /// semi-index; defective classes must merge into one of semi-index zero.
    pub shape_ok: bool,
}

/// Report of the two-fold orientable covering of the source, with the target
/// covered by the identity.
#[derive(Clone, Debug)]
pub struct DoubleCoverReport {
    pub classes: Vec<DoubleCoverClass>,
    pub nielsen_down: usize,
    pub nielsen_up: usize,
    pub even_ok: bool,
    pub lower_bound_ok: bool,
    /// When no lifted class is essential, every essential class downstairs
    /// must be defective.
    pub vanishing_ok: bool,
}

impl DoubleCoverReport {
    pub fn pass(&self) -> bool {
        self.classes.iter().all(|c| c.shape_ok)
            && self.even_ok
            && self.lower_bound_ok
            && self.vanishing_ok
    }
}

/// Builds the double orientable cover of the source (`K_M = ker w_M`, target
/// covered by itself) and checks the splitting pattern of every class:
/// non-defective classes lift to two classes of unchanged semi-index,
/// defective classes to a single class of semi-index zero; upstairs the
/// essential-class count is even and at most twice the downstairs count, and
/// when it vanishes every essential downstairs class is defective.
pub fn double_orientable_cover(
    pair: &CoincidencePair,
    configs: &[ClassConfiguration],
) -> Result<(RegularCovering, DoubleCoverReport), CoveringError> {
    if pair.w_source().is_trivial() {
        return Err(CoveringError::SourceOrientable);
    }
    if !pair.w_target().is_trivial() {
        return Err(CoveringError::TargetNonorientable);
    }
    let k_source = pair.w_source().kernel();
    let k_target = Subgroup::whole(pair.target());
    let cov = RegularCovering::new(pair, k_source, k_target)
        .expect("index-two kernel is normal and the identity covering absorbs both maps");
    let lifts = lift_report(pair, &cov, configs);
    let classes: Vec<DoubleCoverClass> = lifts
        .classes
        .iter()
        .map(|lift| {
            let shape_ok = if lift.defective {
                lift.num_classes == 1
                    && lift.oracle.iter().all(|&v| v == 0)
                    && lift.formula.iter().all(|&v| v == 0)
            } else {
                lift.num_classes == 2
                    && lift.oracle.iter().all(|&v| v == lift.semi_index)
                    && lift.formula.iter().all(|&v| v == lift.semi_index)
            };
            DoubleCoverClass {
                representative: lift.representative,
                defective: lift.defective,
                semi_index: lift.semi_index,
                num_classes: lift.num_classes,
                lifted_values: lift.oracle.clone(),
                shape_ok,
            }
        })
        .collect();
    let nielsen_down = lifts
        .classes
        .iter()
        .filter(|c| c.semi_index > 0)
        .count();
    let nielsen_up = lifts.upstairs_nielsen();
    let even_ok = nielsen_up.is_multiple_of(2);
    let lower_bound_ok = 2 * nielsen_down >= nielsen_up;
    let vanishing_ok = nielsen_up != 0
        || lifts
            .classes
            .iter()
            .all(|c| c.semi_index == 0 || c.defective);
    let report = DoubleCoverReport {
        classes,
        nielsen_down,
        nielsen_up,
        even_ok,
        lower_bound_ok,
        vanishing_ok,
    };
    Ok((cov, report))
}
