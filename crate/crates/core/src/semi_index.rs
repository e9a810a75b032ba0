//! The semi-index calculus on labeled coincidence configurations.
//!
//! A configuration attaches to one Reidemeister class a list of coincidence
//! points, each labeled by a source-group element: the chosen connecting path
//! from the class basepoint to that point. Points pair off when a connecting
//! path between them reverses the graph orientation; the semi-index is the
//! number of points left unpaired. In a defective class every two points are
//! so related and only the parity of the point count survives; otherwise
//! pairing matches points of opposite combined sign.

use thiserror::Error;

use crate::character::Sign;
use crate::classes::{CoincidencePair, ReidemeisterClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("label at position {position} is {label}, outside [0, {order})")]
    LabelOutOfRange {
        position: usize,
        label: usize,
        order: usize,
    },
    #[error("class does not belong to the given pair")]
    ClassMismatch,
    #[error("position {position} is outside [0, {len})")]
    OutOfRange { position: usize, len: usize },
    #[error("two configurations share the class with representative {representative}")]
    DuplicateClass { representative: usize },
}

/// A Reidemeister class together with path-labeled coincidence points.
/// An empty label list models a class not realized by any transverse point.
#[derive(Clone, Debug)]
pub struct ClassConfiguration {
    pub(crate) pair: CoincidencePair,
    pub(crate) class: ReidemeisterClass,
    pub(crate) labels: Vec<usize>,
}

impl ClassConfiguration {
    pub fn new(
        pair: CoincidencePair,
        class: ReidemeisterClass,
        labels: Vec<usize>,
    ) -> Result<Self, ConfigError> {
        if class.stabilizer().parent() != pair.source()
            || class.representative() >= pair.target().order()
        {
            return Err(ConfigError::ClassMismatch);
        }
        let order = pair.source().order();
        for (position, &label) in labels.iter().enumerate() {
            if label >= order {
                return Err(ConfigError::LabelOutOfRange {
                    position,
                    label,
                    order,
                });
            }
        }
        Ok(ClassConfiguration {
            pair,
            class,
            labels,
        })
    }

    /// A configuration with no realized points.
    pub fn empty(pair: CoincidencePair, class: ReidemeisterClass) -> Self {
        ClassConfiguration {
            pair,
            class,
            labels: Vec::new(),
        }
    }

    pub fn pair(&self) -> &CoincidencePair {
        &self.pair
    }

    pub fn class(&self) -> &ReidemeisterClass {
        &self.class
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Combined sign of the label at `position`.
    fn point_sign(&self, position: usize) -> Sign {
        self.pair.combined_character().sign(self.labels[position])
    }

    /// Sign transported along connecting paths between points `i` and `j`:
    /// `c(g_i) * c(g_j)`. Decides the pairing relation only when the class is
    /// non-defective; in a defective class every pair is related regardless.
    pub fn relative_sign(&self, i: usize, j: usize) -> Result<Sign, ConfigError> {
        let len = self.labels.len();
        for position in [i, j] {
            if position >= len {
                return Err(ConfigError::OutOfRange { position, len });
            }
        }
        Ok(self.point_sign(i) * self.point_sign(j))
    }

    /// Splits the points into matched pairs and free points.
    ///
    /// Defective class: any two points pair, so they are paired greedily in
    /// input order and only a parity point can stay free. Non-defective
    /// class: points pair exactly across opposite combined signs, greedily in
    /// input order.
    pub fn decompose(&self) -> Decomposition {
        let n = self.labels.len();
        if self.class.is_defective() {
            let mut pairs = Vec::with_capacity(n / 2);
            let mut i = 0;
            while i + 1 < n {
                pairs.push((i, i + 1));
                i += 2;
            }
            let free = if n % 2 == 1 { vec![n - 1] } else { Vec::new() };
            return Decomposition { free, pairs };
        }
        let c = self.pair.combined_character();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (position, &label) in self.labels.iter().enumerate() {
            match c.sign(label) {
                Sign::Plus => plus.push(position),
                Sign::Minus => minus.push(position),
            }
        }
        let matched = plus.len().min(minus.len());
        let pairs = plus
            .iter()
            .zip(minus.iter())
            .map(|(&p, &m)| (p, m))
            .collect();
        let mut free: Vec<usize> = plus[matched..]
            .iter()
            .chain(minus[matched..].iter())
            .copied()
            .collect();
        free.sort_unstable();
        Decomposition { free, pairs }
    }

    /// Number of free points after pairing: `n mod 2` for defective classes,
    /// `|n_plus - n_minus|` otherwise.
    pub fn semi_index(&self) -> usize {
        self.decompose().free.len()
    }

    pub fn is_essential(&self) -> bool {
        self.semi_index() > 0
    }
}

/// Result of pairing off the points of a configuration. `free` and `pairs`
/// together cover every position exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub free: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

/// Number of essential classes among configurations of distinct classes of
/// one pair.
pub fn nielsen_number(configs: &[ClassConfiguration]) -> Result<usize, ConfigError> {
    let mut seen = std::collections::BTreeSet::new();
    for config in configs {
        if !seen.insert(config.class().representative()) {
            return Err(ConfigError::DuplicateClass {
                representative: config.class().representative(),
            });
        }
    }
    Ok(configs.iter().filter(|c| c.is_essential()).count())
}
