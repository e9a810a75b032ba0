//! Homomorphisms between finite groups, equalizers, and brute-force
//! enumeration of all homomorphisms between two small groups.

use thiserror::Error;

use crate::group::{FiniteGroup, Subgroup};

/// Default cap on `source.order() * target.order()` for [`enumerate_homs`].
pub const DEFAULT_HOM_BUDGET: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("expected {expected} images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("image of element {element} is {image}, outside [0, {order})")]
    ImageOutOfRange {
        element: usize,
        image: usize,
        order: usize,
    },
    #[error("identity is not preserved: image of 0 is {image}")]
    IdentityNotPreserved { image: usize },
    #[error("not a homomorphism: fails at pair ({a}, {b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("homomorphisms do not share source and target")]
    MismatchedDomains,
    #[error("element index {index} is outside [0, {order})")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("enumeration budget exceeded: order product {required} > budget {budget}")]
    BudgetExceeded { required: usize, budget: usize },
}

/// A total, validated map `source -> target` respecting products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<usize>,
}

impl Homomorphism {
    /// Validates `images` as a homomorphism: identity to identity and
    /// `images[a*b] = images[a]*images[b]` for every pair.
    pub fn new(
        source: FiniteGroup,
        target: FiniteGroup,
        images: Vec<usize>,
    ) -> Result<Self, HomError> {
        if images.len() != source.order() {
            return Err(HomError::WrongImageCount {
                expected: source.order(),
                got: images.len(),
            });
        }
        for (element, &image) in images.iter().enumerate() {
            if image >= target.order() {
                return Err(HomError::ImageOutOfRange {
                    element,
                    image,
                    order: target.order(),
                });
            }
        }
        if images[0] != 0 {
            return Err(HomError::IdentityNotPreserved { image: images[0] });
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(HomError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(Homomorphism {
            source,
            target,
            images,
        })
    }

    /// The identity map on `group`.
    pub fn identity(group: &FiniteGroup) -> Self {
        Homomorphism {
            source: group.clone(),
            target: group.clone(),
            images: group.elements().collect(),
        }
    }

    /// The constant map sending everything to the identity.
    pub fn constant(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            images: vec![0; source.order()],
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, element: usize) -> usize {
        self.images[element]
    }

    /// True iff every element maps to the identity.
    pub fn is_constant(&self) -> bool {
        self.images.iter().all(|&i| i == 0)
    }

    /// The kernel as a subgroup of the source.
    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = self.source.elements().filter(|&g| self.apply(g) == 0).collect();
        Subgroup::from_members(&self.source, &members).expect("kernel is a subgroup")
    }

    /// The image as a subgroup of the target.
    pub fn image_subgroup(&self) -> Subgroup {
        let mut values: Vec<usize> = self.images.clone();
        values.sort_unstable();
        values.dedup();
        Subgroup::from_members(&self.target, &values).expect("image is a subgroup")
    }
}

fn require_same_domains(phi: &Homomorphism, psi: &Homomorphism) -> Result<(), HomError> {
    if phi.source() == psi.source() && phi.target() == psi.target() {
        Ok(())
    } else {
        Err(HomError::MismatchedDomains)
    }
}

/// `{g : phi(g) = psi(g)}`, the coincidence subgroup of the two maps.
pub fn equalizer(phi: &Homomorphism, psi: &Homomorphism) -> Result<Subgroup, HomError> {
    twisted_equalizer(phi, psi, 0)
}

/// `{g : psi(g) * alpha = alpha * phi(g)}`: the stabilizer of the twist
/// `alpha` under the action `g . a = psi(g) * a * phi(g)^{-1}`. Reduces to
/// [`equalizer`] at `alpha = 0`.
pub fn twisted_equalizer(
    phi: &Homomorphism,
    psi: &Homomorphism,
    alpha: usize,
) -> Result<Subgroup, HomError> {
    require_same_domains(phi, psi)?;
    let target = phi.target();
    if alpha >= target.order() {
        return Err(HomError::IndexOutOfRange {
            index: alpha,
            order: target.order(),
        });
    }
    let members: Vec<usize> = phi
        .source()
        .elements()
        .filter(|&g| target.mul(psi.apply(g), alpha) == target.mul(alpha, phi.apply(g)))
        .collect();
    Ok(Subgroup::from_members(phi.source(), &members).expect("twisted equalizer is a subgroup"))
}

/// How each element of a group is reached from a canonical generating chain.
/// Used to cut hom enumeration down to generator images.
struct GeneratorChain {
    generators: Vec<usize>,
    /// Discovery order; every element appears exactly once.
    order: Vec<usize>,
    /// For each element (indexed as in the group): how it was first produced.
    step: Vec<Step>,
}

#[derive(Clone, Copy)]
enum Step {
    Identity,
    Generator(usize),
    /// `Product(a, k)`: element = a * generators[k].
    Product(usize, usize),
}

impl GeneratorChain {
    fn build(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut step = vec![None; n];
        step[0] = Some(Step::Identity);
        let mut order = vec![0usize];
        let mut generators = Vec::new();
        loop {
            // Saturate under right-multiplication by the chosen generators.
            let mut frontier = 0;
            while frontier < order.len() {
                let a = order[frontier];
                for (k, &g) in generators.iter().enumerate() {
                    let c = group.mul(a, g);
                    if step[c].is_none() {
                        step[c] = Some(Step::Product(a, k));
                        order.push(c);
                    }
                }
                frontier += 1;
            }
            match (0..n).find(|&e| step[e].is_none()) {
                Some(next) => {
                    step[next] = Some(Step::Generator(generators.len()));
                    generators.push(next);
                    order.push(next);
                }
                None => break,
            }
        }
        GeneratorChain {
            generators,
            order,
            step: step.into_iter().map(Option::unwrap).collect(),
        }
    }
}

/// All homomorphisms `source -> target`, in lexicographic order of their
/// image arrays. Brute force over generator images, then validated in full.
pub fn enumerate_homs(
    source: &FiniteGroup,
    target: &FiniteGroup,
) -> Result<Vec<Homomorphism>, HomError> {
    enumerate_homs_with_budget(source, target, DEFAULT_HOM_BUDGET)
}

/// [`enumerate_homs`] with an explicit budget on `|source| * |target|`.
pub fn enumerate_homs_with_budget(
    source: &FiniteGroup,
    target: &FiniteGroup,
    budget: usize,
) -> Result<Vec<Homomorphism>, HomError> {
    let required = source.order() * target.order();
    if required > budget {
        return Err(HomError::BudgetExceeded { required, budget });
    }
    let chain = GeneratorChain::build(source);
    let m = chain.generators.len();
    let mut found = Vec::new();
    let mut assignment = vec![0usize; m];
    loop {
        let mut images = vec![0usize; source.order()];
        for &e in &chain.order {
            match chain.step[e] {
                Step::Identity => {}
                Step::Generator(k) => images[e] = assignment[k],
                Step::Product(a, k) => images[e] = target.mul(images[a], assignment[k]),
            }
        }
        if Homomorphism::new(source.clone(), target.clone(), images.clone()).is_ok() {
            found.push(images);
        }
        // Next assignment in mixed-radix order; done after wrapping past the last.
        let mut pos = m;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < target.order() {
                break;
            }
            assignment[pos] = 0;
        }
        if assignment.iter().all(|&a| a == 0) {
            break;
        }
    }
    found.sort_unstable();
    found.dedup();
    Ok(found
        .into_iter()
        .map(|images| {
            Homomorphism::new(source.clone(), target.clone(), images)
                .expect("validated during enumeration")
        })
        .collect())
}
