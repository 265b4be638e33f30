//! Finite groups as fully enumerated permutation groups.
//!
//! Composition convention, used uniformly everywhere downstream: `a * b`
//! applies `b` first, then `a`, so `(a * b)(x) = a(b(x))`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Default cap on the order of an enumerated group.
pub const DEFAULT_ORDER_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    ZeroDegree,
    NotBijective,
    DegreeMismatch { expected: usize, found: usize },
    OrderBound(usize),
    UnknownName(String),
    IndexOutOfRange { index: usize, order: usize },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::ZeroDegree => write!(f, "degree must be positive"),
            GroupError::NotBijective => write!(f, "images are not a bijection"),
            GroupError::DegreeMismatch { expected, found } => {
                write!(f, "generator degree {found} does not match group degree {expected}")
            }
            GroupError::OrderBound(b) => write!(f, "group closure exceeds order bound {b}"),
            GroupError::UnknownName(n) => write!(f, "unknown group name: {n}"),
            GroupError::IndexOutOfRange { index, order } => {
                write!(f, "element index {index} out of range for group of order {order}")
            }
        }
    }
}

/// A permutation of `{0, ..., degree-1}` stored by its image vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        if images.is_empty() {
            return Err(GroupError::ZeroDegree);
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotBijective);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Build from disjoint cycles in 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        for cy in cycles {
            for w in 0..cy.len() {
                images[cy[w]] = cy[(w + 1) % cy.len()];
            }
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` after `other`: `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// A finite group with every element enumerated.
///
/// Elements are canonically ordered: identity first, then lexicographically
/// by image vector (the identity is lexicographically minimal, so a plain
/// sort realises the convention). The Cayley table holds element indices with
/// `cayley[a][b] = index of elements[a] * elements[b]` (apply `b` first).
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    cayley: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    /// One fixed factorization of each element as a product of generators,
    /// `elements[i] = gens[w[0]] * gens[w[1]] * ... * gens[w[k-1]]`.
    words: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup(degree {}, order {}, {} generators)",
            self.degree,
            self.order(),
            self.generators.len()
        )
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Closure of the generators under composition, with the default order
    /// bound.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Arc<Self>, GroupError> {
        Self::from_generators_bounded(degree, gens, DEFAULT_ORDER_BOUND)
    }

    pub fn from_generators_bounded(
        degree: usize,
        gens: Vec<Permutation>,
        bound: usize,
    ) -> Result<Arc<Self>, GroupError> {
        if degree == 0 {
            return Err(GroupError::ZeroDegree);
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        // drop duplicate/identity generators but keep the caller's order
        let mut kept: Vec<Permutation> = Vec::new();
        for g in gens {
            if !kept.contains(&g) {
                kept.push(g);
            }
        }

        // breadth-first closure recording one word per element
        let id = Permutation::identity(degree);
        let mut words_by_perm: BTreeMap<Permutation, Vec<usize>> = BTreeMap::new();
        words_by_perm.insert(id.clone(), Vec::new());
        let mut frontier = vec![id];
        while let Some(e) = frontier.pop() {
            let base_word = words_by_perm[&e].clone();
            for (gi, g) in kept.iter().enumerate() {
                let n = g.compose(&e);
                if !words_by_perm.contains_key(&n) {
                    if words_by_perm.len() >= bound {
                        return Err(GroupError::OrderBound(bound));
                    }
                    let mut w = vec![gi];
                    w.extend_from_slice(&base_word);
                    words_by_perm.insert(n.clone(), w);
                    frontier.push(n);
                }
            }
        }

        let mut elements: Vec<Permutation> = words_by_perm.keys().cloned().collect();
        elements.sort(); // identity is lexicographically minimal
        let index: BTreeMap<Vec<usize>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images.clone(), i))
            .collect();
        let words: Vec<Vec<usize>> = elements.iter().map(|p| words_by_perm[p].clone()).collect();

        let n = elements.len();
        let mut cayley = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let p = elements[a].compose(&elements[b]);
                cayley[a][b] = index[p.images()];
            }
        }
        let inverses: Vec<usize> = elements
            .iter()
            .map(|p| index[p.inverse().images()])
            .collect();

        Ok(Arc::new(FiniteGroup {
            degree,
            generators: kept,
            elements,
            cayley,
            inverses,
            words,
            index,
        }))
    }

    pub fn trivial() -> Arc<Self> {
        Self::from_generators(1, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Indices of the generators inside the canonical element order.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|g| self.index[g.images()])
            .collect()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p.images()).copied()
    }

    /// Cayley-table product; applies `b` first, then `a`.
    pub fn multiply(&self, a: usize, b: usize) -> Result<usize, GroupError> {
        let n = self.order();
        for i in [a, b] {
            if i >= n {
                return Err(GroupError::IndexOutOfRange { index: i, order: n });
            }
        }
        Ok(self.cayley[a][b])
    }

    /// Unchecked product for internal hot paths.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        // g h g^{-1}
        self.mul(self.mul(g, h), self.inverses[g])
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.mul(i, cur);
            k += 1;
        }
        k
    }
}

/// Standard named groups with deterministic generator choices.
pub fn named_group(name: &str) -> Result<Arc<FiniteGroup>, GroupError> {
    let unknown = || GroupError::UnknownName(String::from(name));
    let parse_n = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix).and_then(|s| s.parse().ok())
    };

    if let Some(n) = parse_n("cyclic-") {
        if n == 0 {
            return Err(unknown());
        }
        if n == 1 {
            return FiniteGroup::from_generators(1, Vec::new());
        }
        let cy: Vec<usize> = (0..n).collect();
        let g = Permutation::from_cycles(n, &[&cy]);
        return FiniteGroup::from_generators(n, vec![g]);
    }
    if let Some(k) = parse_n("dihedral-") {
        if k < 6 || k % 2 != 0 {
            return Err(unknown());
        }
        let n = k / 2;
        let cy: Vec<usize> = (0..n).collect();
        let rot = Permutation::from_cycles(n, &[&cy]);
        let refl = Permutation::new((0..n).map(|i| (n - i) % n).collect()).unwrap();
        return FiniteGroup::from_generators(n, vec![rot, refl]);
    }
    if let Some(n) = parse_n("symmetric-") {
        if n == 0 || n > 5 {
            return Err(unknown());
        }
        if n == 1 {
            return FiniteGroup::from_generators(1, Vec::new());
        }
        let swap = Permutation::from_cycles(n, &[&[0, 1]]);
        let cy: Vec<usize> = (0..n).collect();
        let cycle = Permutation::from_cycles(n, &[&cy]);
        return FiniteGroup::from_generators(n, vec![swap, cycle]);
    }
    match name {
        "alternating-4" => {
            let a = Permutation::from_cycles(4, &[&[0, 1, 2]]);
            let b = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]);
            FiniteGroup::from_generators(4, vec![a, b])
        }
        "klein-4" => {
            let a = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]);
            let b = Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]);
            FiniteGroup::from_generators(4, vec![a, b])
        }
        "quaternion-8" => {
            // regular representation on {1, -1, i, -i, j, -j, k, -k}
            let i = Permutation::new(vec![2, 3, 1, 0, 6, 7, 5, 4]).unwrap();
            let j = Permutation::new(vec![4, 5, 7, 6, 1, 0, 2, 3]).unwrap();
            FiniteGroup::from_generators(8, vec![i, j])
        }
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force closure oracle: repeatedly multiply all pairs.
    fn closure_oracle(degree: usize, gens: &[Permutation]) -> usize {
        let mut set: Vec<Permutation> = vec![Permutation::identity(degree)];
        for g in gens {
            if !set.contains(g) {
                set.push(g.clone());
            }
        }
        loop {
            let mut added = false;
            let snapshot = set.clone();
            for a in &snapshot {
                for b in &snapshot {
                    let c = a.compose(b);
                    if !set.contains(&c) {
                        set.push(c);
                        added = true;
                    }
                }
            }
            if !added {
                return set.len();
            }
        }
    }

    #[test]
    fn trivial_group_from_empty_generators() {
        let g = FiniteGroup::from_generators(1, Vec::new()).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn closure_matches_oracle() {
        let gens = vec![
            Permutation::from_cycles(3, &[&[0, 1]]),
            Permutation::from_cycles(3, &[&[0, 1, 2]]),
        ];
        let g = FiniteGroup::from_generators(3, gens.clone()).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(closure_oracle(3, &gens), 6);

        let gens = vec![
            Permutation::from_cycles(4, &[&[0, 1]]),
            Permutation::from_cycles(4, &[&[2, 3]]),
        ];
        let g = FiniteGroup::from_generators(4, gens.clone()).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(closure_oracle(4, &gens), 4);
    }

    #[test]
    fn named_groups_have_expected_orders() {
        for (name, order) in [
            ("cyclic-1", 1),
            ("cyclic-2", 2),
            ("cyclic-6", 6),
            ("symmetric-3", 6),
            ("symmetric-4", 24),
            ("dihedral-8", 8),
            ("alternating-4", 12),
            ("klein-4", 4),
            ("quaternion-8", 8),
        ] {
            let g = named_group(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
        assert!(matches!(
            named_group("frobnicator-7"),
            Err(GroupError::UnknownName(_))
        ));
    }

    #[test]
    fn quaternion_is_not_dihedral() {
        // Q8 has a unique element of order 2
        let q = named_group("quaternion-8").unwrap();
        let order2 = (0..8).filter(|&i| q.element_order(i) == 2).count();
        assert_eq!(order2, 1);
    }

    #[test]
    fn multiply_conventions() {
        let s3 = named_group("symmetric-3").unwrap();
        let e = s3.identity_index();
        for x in 0..6 {
            assert_eq!(s3.multiply(e, x).unwrap(), x);
            assert_eq!(s3.mul(x, s3.inverse_of(x)), e);
        }
        // (1 2) o (1 2 3) = (2 3) under apply-right-first, in 0-based points:
        // (0 1) o (0 1 2) = (1 2)
        let a = s3.index_of(&Permutation::from_cycles(3, &[&[0, 1]])).unwrap();
        let b = s3
            .index_of(&Permutation::from_cycles(3, &[&[0, 1, 2]]))
            .unwrap();
        let expect = s3.index_of(&Permutation::from_cycles(3, &[&[1, 2]])).unwrap();
        assert_eq!(s3.multiply(a, b).unwrap(), expect);
        assert!(s3.multiply(0, 99).is_err());
    }

    #[test]
    fn cayley_associativity_exhaustive() {
        for name in ["symmetric-3", "quaternion-8", "alternating-4"] {
            let g = named_group(name).unwrap();
            let n = g.order();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_involution() {
        let g = named_group("dihedral-8").unwrap();
        for x in 0..g.order() {
            assert_eq!(g.inverse_of(g.inverse_of(x)), x);
        }
    }

    #[test]
    fn words_recompose_elements() {
        let g = named_group("symmetric-4").unwrap();
        for i in 0..g.order() {
            let mut p = Permutation::identity(4);
            for &gi in g.word(i) {
                p = p.compose(&g.generators()[gi]);
            }
            assert_eq!(&p, g.element(i), "word of element {i}");
        }
    }

    #[test]
    fn order_bound_enforced() {
        let gens = vec![
            Permutation::from_cycles(5, &[&[0, 1]]),
            Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]),
        ];
        assert!(matches!(
            FiniteGroup::from_generators_bounded(5, gens, 100),
            Err(GroupError::OrderBound(100))
        ));
    }
}
