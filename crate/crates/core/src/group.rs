//! Finite groups as validated multiplication tables, plus subgroups and
//! quotients.
//!
//! Elements are plain indices `0..order` with the identity pinned at index 0.
//! Construction checks every group axiom eagerly, so everything downstream can
//! assume a well-formed group.

use std::sync::Arc;

use thiserror::Error;

use crate::hom::Homomorphism;

/// Errors from group and subgroup construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("table row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table is not closed: entry ({a}, {b}) is {value}, outside [0, {order})")]
    NotClosed {
        a: usize,
        b: usize,
        value: usize,
        order: usize,
    },
    #[error("index 0 is not a two-sided identity: {a} * {b} = {product}")]
    NoIdentityAtZero { a: usize, b: usize, product: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element index {index} is outside [0, {order})")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("member set does not contain the identity")]
    MissingIdentity,
    #[error("member set is not closed: {a} * {b} = {product} is missing")]
    NotASubgroup { a: usize, b: usize, product: usize },
    #[error("subgroup is not normal in its parent")]
    NotNormal,
    #[error("subgroup belongs to a different group")]
    ForeignSubgroup,
}

#[derive(Debug, PartialEq, Eq)]
struct GroupData {
    order: usize,
    /// Row-major table: `table[a * order + b]` is the index of `a * b`.
    table: Vec<usize>,
    /// Precomputed two-sided inverses.
    inverses: Vec<usize>,
}

/// A finite group given by its full multiplication table.
///
/// Cheap to clone (the table is shared). Two groups compare equal when their
/// tables coincide, so structurally identical groups are interchangeable.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a square multiplication table, validating closure,
    /// the identity at index 0, two-sided inverses, and full associativity.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::EmptyTable);
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare {
                    row,
                    len: entries.len(),
                    order,
                });
            }
        }
        let mut flat = Vec::with_capacity(order * order);
        for (a, row) in table.iter().enumerate() {
            for (b, &value) in row.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::NotClosed { a, b, value, order });
                }
                flat.push(value);
            }
        }
        let at = |a: usize, b: usize| flat[a * order + b];
        for j in 0..order {
            if at(0, j) != j {
                return Err(GroupError::NoIdentityAtZero {
                    a: 0,
                    b: j,
                    product: at(0, j),
                });
            }
        }
        for i in 0..order {
            if at(i, 0) != i {
                return Err(GroupError::NoIdentityAtZero {
                    a: i,
                    b: 0,
                    product: at(i, 0),
                });
            }
        }
        let mut inverses = vec![usize::MAX; order];
        for (a, slot) in inverses.iter_mut().enumerate() {
            match (0..order).find(|&b| at(a, b) == 0 && at(b, a) == 0) {
                Some(b) => *slot = b,
                None => return Err(GroupError::NoInverse { element: a }),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            data: Arc::new(GroupData {
                order,
                table: flat,
                inverses,
            }),
        })
    }

    /// Group order.
    pub fn order(&self) -> usize {
        self.data.order
    }

    /// Product of two elements.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.table[a * self.data.order + b]
    }

    /// Inverse of an element.
    pub fn inv(&self, a: usize) -> usize {
        self.data.inverses[a]
    }

    /// `g * a * g^{-1}`.
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    /// Iterator over all element indices.
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.data.order
    }

    pub fn is_trivial(&self) -> bool {
        self.data.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), GroupError> {
        if index < self.order() {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange {
                index,
                order: self.order(),
            })
        }
    }

    /// The center `{z : zg = gz for all g}`.
    pub fn center(&self) -> Subgroup {
        let members: Vec<usize> = self
            .elements()
            .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_sorted_unchecked(self.clone(), members)
    }

    /// Quotient by a normal subgroup, together with the projection map.
    ///
    /// Quotient elements are cosets ordered by their smallest member, so the
    /// coset of the identity is element 0 and the layout is reproducible.
    pub fn quotient_by(&self, k: &Subgroup) -> Result<(FiniteGroup, Homomorphism), GroupError> {
        if k.parent() != self {
            return Err(GroupError::ForeignSubgroup);
        }
        if !k.is_normal() {
            return Err(GroupError::NotNormal);
        }
        let order = self.order();
        let mut coset_of = vec![usize::MAX; order];
        let mut reps = Vec::new();
        for g in 0..order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &h in k.members() {
                coset_of[self.mul(g, h)] = id;
            }
        }
        let q_order = reps.len();
        let mut table = vec![vec![0usize; q_order]; q_order];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i][j] = coset_of[self.mul(a, b)];
            }
        }
        let quotient = FiniteGroup::new(table)?;
        let projection = Homomorphism::new(self.clone(), quotient.clone(), coset_of)
            .expect("projection onto a quotient is a homomorphism");
        Ok((quotient, projection))
    }
}

/// A subgroup, stored as a sorted member list alongside its parent group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_sorted_unchecked(parent: FiniteGroup, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { parent, members }
    }

    /// The smallest subgroup containing `gens`: fixed-point closure under
    /// products and inverses.
    pub fn closure(parent: &FiniteGroup, gens: &[usize]) -> Result<Self, GroupError> {
        for &g in gens {
            parent.check_index(g)?;
        }
        let mut in_set = vec![false; parent.order()];
        in_set[0] = true;
        let mut members = vec![0usize];
        let mut queue: Vec<usize> = gens.to_vec();
        while let Some(g) = queue.pop() {
            if in_set[g] {
                continue;
            }
            in_set[g] = true;
            members.push(g);
            queue.push(parent.inv(g));
            for &m in &members {
                queue.push(parent.mul(m, g));
                queue.push(parent.mul(g, m));
            }
        }
        members.sort_unstable();
        Ok(Subgroup {
            parent: parent.clone(),
            members,
        })
    }

    /// Wraps an explicit member set, verifying it really is a subgroup.
    pub fn from_members(parent: &FiniteGroup, members: &[usize]) -> Result<Self, GroupError> {
        let mut sorted: Vec<usize> = members.to_vec();
        for &m in &sorted {
            parent.check_index(m)?;
        }
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.first() != Some(&0) {
            return Err(GroupError::MissingIdentity);
        }
        for &a in &sorted {
            for &b in &sorted {
                let product = parent.mul(a, b);
                if sorted.binary_search(&product).is_err() {
                    return Err(GroupError::NotASubgroup { a, b, product });
                }
            }
        }
        // Closure under products on a finite set implies closure under inverses.
        Ok(Subgroup {
            parent: parent.clone(),
            members: sorted,
        })
    }

    /// The trivial subgroup `{0}`.
    pub fn trivial(parent: &FiniteGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: vec![0],
        }
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(parent: &FiniteGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: parent.elements().collect(),
        }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// Index of the subgroup in its parent (`|G| / |S|`).
    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    /// True iff `g S g^{-1} = S` for every `g` in the parent.
    pub fn is_normal(&self) -> bool {
        self.parent.elements().all(|g| {
            self.members
                .iter()
                .all(|&s| self.contains(self.parent.conjugate(g, s)))
        })
    }
}

/// Every subgroup of `group`, computed by closing all subsets of a fixed
/// generating pool. Exponential in the order; intended for small groups only.
pub fn all_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let n = group.order();
    let mut seen: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    for mask in 0u32..(1u32 << n) {
        let gens: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub = Subgroup::closure(group, &gens).expect("indices in range");
        seen.insert(sub.members().to_vec());
    }
    seen.into_iter()
        .map(|members| Subgroup::from_sorted_unchecked(group.clone(), members))
        .collect()
}
