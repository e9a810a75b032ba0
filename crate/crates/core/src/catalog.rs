//! Built-in catalog of small groups: cyclic groups, two dihedral groups, the
//! quaternion group, and two direct products. This is the fixed corpus used
//! by the instance generator and by tests.

use std::sync::OnceLock;

use crate::group::FiniteGroup;

/// A named catalog entry.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub group: FiniteGroup,
}

/// The cyclic group of order `n`: `i * j = (i + j) mod n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let table = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    FiniteGroup::new(table).expect("cyclic table is a group")
}

/// The dihedral group of order `2n`. Element `a*n + k` stands for
/// `s^a r^k`; the product rule is `(a,k)(b,l) = (a+b, (-1)^b k + l)`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let idx = |a: usize, k: usize| a * n + k;
    let mut table = vec![vec![0usize; 2 * n]; 2 * n];
    for a in 0..2 {
        for k in 0..n {
            for b in 0..2 {
                for l in 0..n {
                    let flip = (a + b) % 2;
                    let rot = if b == 0 { (k + l) % n } else { (n - k + l) % n };
                    table[idx(a, k)][idx(b, l)] = idx(flip, rot);
                }
            }
        }
    }
    FiniteGroup::new(table).expect("dihedral table is a group")
}

/// The quaternion group of order 8. Indices 0..=7 stand for
/// `1, i, j, k, -1, -i, -j, -k`.
pub fn quaternion8() -> FiniteGroup {
    // base_mul[a][b] = (sign flip, basis) for products of 1, i, j, k.
    const BASE: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = vec![vec![0usize; 8]; 8];
    for s1 in 0..2 {
        for b1 in 0..4 {
            for s2 in 0..2 {
                for b2 in 0..4 {
                    let (flip, basis) = BASE[b1][b2];
                    let sign = (s1 + s2 + flip) % 2;
                    table[s1 * 4 + b1][s2 * 4 + b2] = sign * 4 + basis;
                }
            }
        }
    }
    FiniteGroup::new(table).expect("quaternion table is a group")
}

/// Direct product; element `a * |H| + b` stands for the pair `(a, b)`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let n = g.order() * h.order();
    let idx = |a: usize, b: usize| a * h.order() + b;
    let mut table = vec![vec![0usize; n]; n];
    for a1 in g.elements() {
        for b1 in h.elements() {
            for a2 in g.elements() {
                for b2 in h.elements() {
                    table[idx(a1, b1)][idx(a2, b2)] = idx(g.mul(a1, a2), h.mul(b1, b2));
                }
            }
        }
    }
    FiniteGroup::new(table).expect("product table is a group")
}

/// The fixed catalog, in a stable order: C2, C3, C4, C6, C8, C2xC2, C2xC4,
/// S3, D4, Q8.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let c2 = cyclic(2);
        let c4 = cyclic(4);
        vec![
            CatalogEntry {
                name: "C2",
                group: c2.clone(),
            },
            CatalogEntry {
                name: "C3",
                group: cyclic(3),
            },
            CatalogEntry {
                name: "C4",
                group: c4.clone(),
            },
            CatalogEntry {
                name: "C6",
                group: cyclic(6),
            },
            CatalogEntry {
                name: "C8",
                group: cyclic(8),
            },
            CatalogEntry {
                name: "C2xC2",
                group: direct_product(&c2, &c2),
            },
            CatalogEntry {
                name: "C2xC4",
                group: direct_product(&c2, &c4),
            },
            CatalogEntry {
                name: "S3",
                group: dihedral(3),
            },
            CatalogEntry {
                name: "D4",
                group: dihedral(4),
            },
            CatalogEntry {
                name: "Q8",
                group: quaternion8(),
            },
        ]
    })
}

/// Looks up a catalog entry by name.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    catalog()
        .iter()
        .find(|e| e.name == name)
        .map(|e| e.group.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let orders: Vec<usize> = catalog().iter().map(|e| e.group.order()).collect();
        assert_eq!(orders, vec![2, 3, 4, 6, 8, 4, 8, 6, 8, 8]);
    }

    #[test]
    fn quaternion_relations() {
        let q8 = quaternion8();
        // i * j = k, j * i = -k, i^2 = -1.
        assert_eq!(q8.mul(1, 2), 3);
        assert_eq!(q8.mul(2, 1), 7);
        assert_eq!(q8.mul(1, 1), 4);
        assert_eq!(q8.center().members(), &[0, 4]);
    }

    #[test]
    fn dihedral_reflection_relation() {
        // s r s^{-1} = r^{-1} in D4.
        let d4 = dihedral(4);
        let s = 4;
        let r = 1;
        assert_eq!(d4.conjugate(s, r), d4.inv(r));
    }

    #[test]
    fn products_are_abelian_when_factors_are() {
        assert!(direct_product(&cyclic(2), &cyclic(4)).is_abelian());
        assert!(!dihedral(4).is_abelian());
        assert!(!quaternion8().is_abelian());
    }
}
