//! The verification harness: structural invariants plus every theorem check
//! that applies to an instance.
//!
//! `verify` runs, in order: class partition structure, defectiveness
//! invariance across representatives, semi-index permutation invariance on
//! small configurations, the lifted-semi-index product formula against the
//! exhaustive oracle, root-class checks when the second map is constant, the
//! center-propagation check when the first map's image is central, and the
//! double-cover checks when the source is nonorientable and the target
//! orientable. Violations are collected, reported, and signalled by exit
//! code 2: a formula/oracle mismatch is a finding, not a crash.

use coincidence_core::{
    double_orientable_cover, lift_report, nielsen_number, orientation_type, twisted_equalizer,
    verify_root_theorems, CenterPropagation, ClassConfiguration, CoincidencePair, LiftReport,
    Sign,
};

use crate::instance::Instance;
use crate::report::Report;

/// Options for [`verify_instance`].
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Include per-lifted-class oracle detail in the human report.
    pub oracle_detail: bool,
}

/// Outcome of a verification run.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub violations: Vec<String>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn permutations_of(len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations_of(len - 1) {
        for slot in 0..=rest.len() {
            let mut perm = rest.clone();
            perm.insert(slot, len - 1);
            out.push(perm);
        }
    }
    out
}

/// Runs every applicable check, building the full report for the instance.
pub fn verify_instance(instance: &Instance, options: VerifyOptions) -> (Report, Verdict) {
    let mut report = Report::new();
    let mut violations = Vec::new();
    let pair = &instance.pair;

    describe_pair(pair, &mut report);
    check_class_structure(pair, &mut violations);

    let configs = instance.configs_for_all_classes();
    let mut nielsen_down = None;
    if let Some(configs) = &configs {
        check_permutation_invariance(configs, &mut violations);
        nielsen_down = report_semi_indices(configs, &mut report, &mut violations);
    }

    let mut nielsen_up = None;
    if let Some(cov) = &instance.covering {
        let empty = Vec::new();
        let configs_ref = configs.as_ref().unwrap_or(&empty);
        let lifts = lift_report(pair, cov, configs_ref);
        report_lifts(&lifts, configs.is_some(), options, &mut report, &mut violations);
        if configs.is_some() {
            nielsen_up = Some(lifts.upstairs_nielsen());
        }
    }
    if let Some(n) = nielsen_down {
        report.kv("nielsen.down", n);
    }
    if let Some(n) = nielsen_up {
        report.kv("nielsen.up", n);
    }

    if pair.psi().is_constant() {
        let root = verify_root_theorems(pair.phi(), pair.w_source(), pair.w_target());
        report.say(format!(
            "root check: map type {}, {} defective of {} root classes",
            root.map_type,
            root.classes.iter().filter(|c| c.is_defective()).count(),
            root.classes.len()
        ));
        if !root.pass() {
            violations.push(format!(
                "root-class defectiveness contradicts map type {}",
                root.map_type
            ));
        }
    }

    match pair.center_propagation() {
        CenterPropagation::NotApplicable => {}
        CenterPropagation::Checked {
            defective_classes,
            total_classes,
        } => {
            report.say(format!(
                "center propagation: image is central, {defective_classes} defective of {total_classes} classes"
            ));
            if defective_classes != 0 && defective_classes != total_classes {
                violations.push(format!(
                    "central image but defectiveness is not uniform: {defective_classes} of {total_classes}"
                ));
            }
        }
    }

    if !pair.w_source().is_trivial() && pair.w_target().is_trivial() {
        let empty = Vec::new();
        let configs_ref = configs.as_ref().unwrap_or(&empty);
        match double_orientable_cover(pair, configs_ref) {
            Ok((_, dc)) => {
                report.say(format!(
                    "double cover: nielsen down {}, up {}",
                    dc.nielsen_down, dc.nielsen_up
                ));
                for class in &dc.classes {
                    if !class.shape_ok {
                        violations.push(format!(
                            "double cover: class {} ({}defective, s = {}) lifted to {} classes with values {:?}",
                            class.representative,
                            if class.defective { "" } else { "non-" },
                            class.semi_index,
                            class.num_classes,
                            class.lifted_values
                        ));
                    }
                }
                if !dc.even_ok {
                    violations.push(format!(
                        "double cover: upstairs essential count {} is odd",
                        dc.nielsen_up
                    ));
                }
                if !dc.lower_bound_ok {
                    violations.push(format!(
                        "double cover: downstairs count {} below half of upstairs {}",
                        dc.nielsen_down, dc.nielsen_up
                    ));
                }
                if !dc.vanishing_ok {
                    violations.push(
                        "double cover: no essential lifted class, yet an essential \
                         non-defective class exists downstairs"
                            .to_string(),
                    );
                }
            }
            Err(e) => violations.push(format!("double cover construction failed: {e}")),
        }
    }

    for violation in &violations {
        report.say(format!("violation: {violation}"));
    }
    if violations.is_empty() {
        report.say("all checks passed");
    }
    (report, Verdict { violations })
}

/// Human and machine description of the pair and its classes.
pub fn describe_pair(pair: &CoincidencePair, report: &mut Report) {
    let map_type = orientation_type(pair.phi(), pair.w_source(), pair.w_target());
    report.say(format!(
        "pair: |M| {}, |N| {}, map type {}",
        pair.source().order(),
        pair.target().order(),
        map_type
    ));
    let classes = pair.reidemeister_classes();
    report.say(format!("classes: {}", classes.len()));
    for class in &classes {
        report.say(format!(
            "class {}: size {}, stabilizer {}, {}",
            class.representative(),
            class.size(),
            class.stabilizer().order(),
            if class.is_defective() {
                "defective"
            } else {
                "non-defective"
            }
        ));
    }
    report.kv("pair.type", map_type);
    for class in &classes {
        let rep = class.representative();
        report.kv(format!("class.{rep}.size"), class.size());
        report.kv(format!("class.{rep}.stab"), class.stabilizer().order());
        report.kv(format!("class.{rep}.defective"), class.is_defective());
    }
}

fn check_class_structure(pair: &CoincidencePair, violations: &mut Vec<String>) {
    let classes = pair.reidemeister_classes();
    let mut coverage = vec![0usize; pair.target().order()];
    for class in &classes {
        for &a in class.orbit() {
            coverage[a] += 1;
        }
    }
    if coverage.iter().any(|&c| c != 1) {
        violations.push("class orbits do not partition the target group".to_string());
    }
    let c = pair.combined_character();
    for class in &classes {
        for &alpha in class.orbit() {
            let stab = twisted_equalizer(pair.phi(), pair.psi(), alpha)
                .expect("pair shares domains");
            if stab.order() * class.size() != pair.source().order() {
                violations.push(format!(
                    "orbit-stabilizer mismatch at twist {alpha}: {} * {} != {}",
                    class.size(),
                    stab.order(),
                    pair.source().order()
                ));
            }
            let defective = stab.members().iter().any(|&g| c.sign(g) == Sign::Minus);
            if defective != class.is_defective() {
                violations.push(format!(
                    "defectiveness differs at representative {alpha} of class {}",
                    class.representative()
                ));
            }
            for &g in stab.members() {
                if pair.w_target().sign(pair.phi().apply(g))
                    != pair.w_target().sign(pair.psi().apply(g))
                {
                    violations.push(format!(
                        "target signs of the two maps differ on stabilizer element {g}"
                    ));
                }
            }
        }
    }
}

fn check_permutation_invariance(configs: &[ClassConfiguration], violations: &mut Vec<String>) {
    for config in configs {
        if config.len() > 6 {
            continue;
        }
        let base = config.semi_index();
        for perm in permutations_of(config.len()) {
            let labels: Vec<usize> = perm.iter().map(|&i| config.labels()[i]).collect();
            let permuted = ClassConfiguration::new(
                config.pair().clone(),
                config.class().clone(),
                labels,
            )
            .expect("permuted labels stay in range");
            if permuted.semi_index() != base {
                violations.push(format!(
                    "semi-index of class {} depends on point order",
                    config.class().representative()
                ));
                break;
            }
        }
    }
}

fn report_semi_indices(
    configs: &[ClassConfiguration],
    report: &mut Report,
    violations: &mut Vec<String>,
) -> Option<usize> {
    for config in configs {
        let rep = config.class().representative();
        report.say(format!(
            "class {}: {} points, semi-index {}",
            rep,
            config.len(),
            config.semi_index()
        ));
        report.kv(format!("class.{rep}.semiindex"), config.semi_index());
    }
    match nielsen_number(configs) {
        Ok(n) => {
            report.say(format!("essential classes: {n}"));
            Some(n)
        }
        Err(e) => {
            violations.push(format!("nielsen count failed: {e}"));
            None
        }
    }
}

fn report_lifts(
    lifts: &LiftReport,
    have_configs: bool,
    options: VerifyOptions,
    report: &mut Report,
    violations: &mut Vec<String>,
) {
    for lift in &lifts.classes {
        let rep = lift.representative;
        report.say(format!(
            "class {}: fiber {}, {} lifted classes of {} copies, upstairs {}",
            rep,
            lift.fiber_count,
            lift.num_classes,
            lift.copies_per_class,
            if lift.upstairs_defective {
                "defective"
            } else {
                "non-defective"
            }
        ));
        if lift.fiber_count != lift.copies_per_class * lift.num_classes {
            violations.push(format!(
                "fiber count {} is not k * classes = {} * {} at class {}",
                lift.fiber_count, lift.copies_per_class, lift.num_classes, rep
            ));
        }
        report.kv(format!("class.{rep}.lift.T"), lift.fiber_count);
        report.kv(format!("class.{rep}.lift.k"), lift.copies_per_class);
        report.kv(format!("class.{rep}.lift.classes"), lift.num_classes);
        if have_configs {
            report.kv_list(format!("class.{rep}.lift.formula"), &lift.formula);
            report.kv_list(format!("class.{rep}.lift.oracle"), &lift.oracle);
            if options.oracle_detail {
                report.say(format!(
                    "class {}: formula {:?}, oracle {:?}",
                    rep, lift.formula, lift.oracle
                ));
            }
            if !lift.matches() {
                violations.push(format!(
                    "product formula disagrees with the oracle at class {}: {:?} vs {:?}",
                    rep, lift.formula, lift.oracle
                ));
            }
        }
    }
}
