//! Cross-module invariants exercised over deterministic sweeps of small
//! instances: every hom pair and character pair on selected catalog groups,
//! with every liftable pair of normal subgroups as covering data.

use coincidence_core::{
    all_characters, all_subgroups, catalog, double_orientable_cover, enumerate_homs,
    fiber_equalizer, lift_oracle_classes, lift_report, lifted_class_partition, upstairs_defective,
    ClassConfiguration, CoincidencePair, OrientationCharacter, RegularCovering, Subgroup,
};

fn sweep_pairs(name: &str) -> Vec<CoincidencePair> {
    let group = catalog::by_name(name).unwrap();
    let homs = enumerate_homs(&group, &group).unwrap();
    let chars = all_characters(&group);
    let mut pairs = Vec::new();
    for phi in &homs {
        for psi in &homs {
            for w_m in &chars {
                for w_n in &chars {
                    pairs.push(
                        CoincidencePair::new(phi.clone(), psi.clone(), w_m.clone(), w_n.clone())
                            .unwrap(),
                    );
                }
            }
        }
    }
    pairs
}

fn liftable_coverings(pair: &CoincidencePair) -> Vec<RegularCovering> {
    let normals: Vec<Subgroup> = all_subgroups(pair.source())
        .into_iter()
        .filter(Subgroup::is_normal)
        .collect();
    let normals_target: Vec<Subgroup> = all_subgroups(pair.target())
        .into_iter()
        .filter(Subgroup::is_normal)
        .collect();
    let mut out = Vec::new();
    for k_m in &normals {
        for k_n in &normals_target {
            if let Ok(cov) = RegularCovering::new(pair, k_m.clone(), k_n.clone()) {
                out.push(cov);
            }
        }
    }
    out
}

#[test]
fn projected_stabilizer_sits_inside_the_fiber_equalizer() {
    for pair in sweep_pairs("C4") {
        for cov in liftable_coverings(&pair) {
            for class in pair.reidemeister_classes() {
                let (e, t) = fiber_equalizer(&pair, &cov, &class);
                let partition = lifted_class_partition(&pair, &cov, &class);
                assert_eq!(t % partition.k, 0);
                for &g in class.stabilizer().members() {
                    assert!(e.contains(cov.j_source().apply(g)));
                }
            }
        }
    }
}

#[test]
fn ambiguous_copy_signs_imply_upstairs_defectiveness() {
    // If two stabilizer elements share a deck image but differ in combined
    // sign, the lifted classes must be defective, so the ambiguity never
    // reaches a semi-index.
    for name in ["C4", "S3"] {
        for pair in sweep_pairs(name) {
            let c = pair.combined_character();
            for cov in liftable_coverings(&pair) {
                for class in pair.reidemeister_classes() {
                    let members = class.stabilizer().members();
                    let ambiguous = members.iter().any(|&a| {
                        members.iter().any(|&b| {
                            cov.j_source().apply(a) == cov.j_source().apply(b)
                                && c.sign(a) != c.sign(b)
                        })
                    });
                    if ambiguous {
                        assert!(upstairs_defective(&pair, &cov, &class));
                    }
                }
            }
        }
    }
}

#[test]
fn deck_action_permutes_lifted_classes() {
    for pair in sweep_pairs("S3").into_iter().step_by(7) {
        for cov in liftable_coverings(&pair) {
            for class in pair.reidemeister_classes() {
                let config = ClassConfiguration::new(
                    pair.clone(),
                    class.clone(),
                    vec![0, pair.source().order() - 1],
                )
                .unwrap();
                let (e, _) = fiber_equalizer(&pair, &cov, &class);
                let oracle = lift_oracle_classes(&pair, &cov, &config);
                let deck = cov.deck_source();
                for &delta0 in e.members() {
                    for lifted in &oracle {
                        let moved: std::collections::BTreeSet<(usize, usize)> = lifted
                            .points
                            .iter()
                            .map(|&(i, d)| (i, deck.mul(delta0, d)))
                            .collect();
                        let hits = oracle
                            .iter()
                            .filter(|c| {
                                c.points.iter().copied().collect::<std::collections::BTreeSet<_>>()
                                    == moved
                            })
                            .count();
                        assert_eq!(hits, 1);
                    }
                }
            }
        }
    }
}

#[test]
fn double_cover_agrees_with_generic_covering_operations() {
    let z4 = catalog::by_name("C4").unwrap();
    let homs = enumerate_homs(&z4, &z4).unwrap();
    let w_nontrivial = all_characters(&z4)
        .into_iter()
        .find(|w| !w.is_trivial())
        .unwrap();
    let w_trivial = OrientationCharacter::trivial(&z4);
    for phi in &homs {
        for psi in &homs {
            let pair = CoincidencePair::new(
                phi.clone(),
                psi.clone(),
                w_nontrivial.clone(),
                w_trivial.clone(),
            )
            .unwrap();
            let configs: Vec<ClassConfiguration> = pair
                .reidemeister_classes()
                .into_iter()
                .map(|class| {
                    ClassConfiguration::new(pair.clone(), class, vec![0, 1, 2]).unwrap()
                })
                .collect();
            let (cov, report) = double_orientable_cover(&pair, &configs).unwrap();
            assert!(report.pass());
            // The same numbers must fall out of the generic operations with
            // K_M = ker(w_M) and the identity covering of the target.
            let generic_cov = RegularCovering::new(
                &pair,
                pair.w_source().kernel(),
                Subgroup::whole(pair.target()),
            )
            .unwrap();
            assert_eq!(cov.k_source().members(), generic_cov.k_source().members());
            let generic = lift_report(&pair, &generic_cov, &configs);
            assert_eq!(generic.classes.len(), report.classes.len());
            for (a, b) in generic.classes.iter().zip(report.classes.iter()) {
                assert_eq!(a.representative, b.representative);
                assert_eq!(a.num_classes, b.num_classes);
                assert_eq!(a.oracle, b.lifted_values);
            }
            assert_eq!(generic.upstairs_nielsen(), report.nielsen_up);
        }
    }
}
