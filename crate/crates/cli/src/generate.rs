//! Seeded random instances over the fixed group catalog.
//!
//! Output is a deterministic function of `(seed, max_order)`: the same seed
//! always yields byte-identical text, and every output parses back through
//! [`crate::instance::Instance::parse`].

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use coincidence_core::{
    all_characters, all_subgroups, catalog, enumerate_homs, ClassConfiguration, CoincidencePair,
    RegularCovering, Subgroup,
};

use crate::instance::Instance;

/// Attempts at sampling a liftable covering before giving up on a seed.
pub const COVERING_ATTEMPTS: usize = 64;

/// Largest catalog order the generator accepts.
pub const MAX_ORDER_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("max order must be in 2..={MAX_ORDER_LIMIT}, got {got}")]
    MaxOrderOutOfRange { got: usize },
    #[error(
        "no liftable covering found within {attempts} attempts for seed {seed}; \
         retry with a different seed"
    )]
    GenerationExhausted { seed: u64, attempts: usize },
}

/// Generates the text of a random instance. Groups come from the catalog
/// filtered to `order <= max_order`; maps and characters are sampled
/// uniformly from the full enumerations; the covering is a uniformly sampled
/// pair of normal subgroups, retried until the maps lift; every class gets a
/// configuration of 0..=6 uniform labels.
pub fn random_instance(seed: u64, max_order: usize) -> Result<String, GenerateError> {
    if !(2..=MAX_ORDER_LIMIT).contains(&max_order) {
        return Err(GenerateError::MaxOrderOutOfRange { got: max_order });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eligible: Vec<_> = catalog::catalog()
        .iter()
        .filter(|e| e.group.order() <= max_order)
        .collect();
    let m_entry = eligible.choose(&mut rng).expect("catalog starts at order 2");
    let n_entry = eligible.choose(&mut rng).expect("catalog starts at order 2");
    let group_m = m_entry.group.clone();
    let group_n = n_entry.group.clone();

    let homs = enumerate_homs(&group_m, &group_n).expect("catalog orders fit the budget");
    let phi = homs.choose(&mut rng).expect("constant map always exists").clone();
    let psi = homs.choose(&mut rng).expect("constant map always exists").clone();

    let chars_m = all_characters(&group_m);
    let chars_n = all_characters(&group_n);
    let w_m = chars_m.choose(&mut rng).expect("trivial character exists").clone();
    let w_n = chars_n.choose(&mut rng).expect("trivial character exists").clone();

    let pair = CoincidencePair::new(phi, psi, w_m, w_n).expect("domains match by construction");

    let normals_m: Vec<Subgroup> = all_subgroups(&group_m)
        .into_iter()
        .filter(Subgroup::is_normal)
        .collect();
    let normals_n: Vec<Subgroup> = all_subgroups(&group_n)
        .into_iter()
        .filter(Subgroup::is_normal)
        .collect();
    let mut covering = None;
    for _ in 0..COVERING_ATTEMPTS {
        let k_m = normals_m.choose(&mut rng).expect("whole group is normal").clone();
        let k_n = normals_n.choose(&mut rng).expect("whole group is normal").clone();
        if let Ok(cov) = RegularCovering::new(&pair, k_m, k_n) {
            covering = Some(cov);
            break;
        }
    }
    let covering = covering.ok_or(GenerateError::GenerationExhausted {
        seed,
        attempts: COVERING_ATTEMPTS,
    })?;

    let configs: Vec<ClassConfiguration> = pair
        .reidemeister_classes()
        .into_iter()
        .map(|class| {
            let count = rng.random_range(0..=6);
            let labels: Vec<usize> = (0..count)
                .map(|_| rng.random_range(0..group_m.order()))
                .collect();
            ClassConfiguration::new(pair.clone(), class, labels).expect("labels in range")
        })
        .collect();

    let instance = Instance {
        pair,
        covering: Some(covering),
        configs: Some(configs),
    };
    let mut text = format!(
        "# generated instance: seed {seed}, max order {max_order}\n# groups: M = {}, N = {}\n",
        m_entry.name, n_entry.name
    );
    text.push_str(&instance.to_text());
    Ok(text)
}
