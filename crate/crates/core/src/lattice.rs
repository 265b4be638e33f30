//! Subgroup lattices: enumeration, conjugacy classes, normalizers, Weyl
//! groups, subconjugacy and the families `[<=_G H]` and `[<_G H]`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::{FiniteGroup, GroupError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    NotASubgroup,
    Group(GroupError),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::NotASubgroup => write!(f, "member set is not a subgroup"),
            LatticeError::Group(e) => write!(f, "{e}"),
        }
    }
}

/// A subgroup of a fixed parent group, stored as a sorted set of element
/// indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    /// Validate a member set: closed under multiplication and inverse,
    /// contains the identity, order divides `|G|`.
    pub fn new(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Self, LatticeError> {
        members.sort_unstable();
        members.dedup();
        if !members.contains(&parent.identity_index()) {
            return Err(LatticeError::NotASubgroup);
        }
        for &a in &members {
            if a >= parent.order() {
                return Err(LatticeError::NotASubgroup);
            }
            if !members.binary_search(&parent.inverse_of(a)).is_ok() {
                return Err(LatticeError::NotASubgroup);
            }
            for &b in &members {
                if members.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(LatticeError::NotASubgroup);
                }
            }
        }
        if parent.order() % members.len() != 0 {
            return Err(LatticeError::NotASubgroup);
        }
        Ok(Subgroup { parent, members })
    }

    /// Subgroup generated by the given element indices.
    pub fn generated(parent: Arc<FiniteGroup>, gens: &[usize]) -> Self {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(parent.identity_index());
        let mut frontier: Vec<usize> = vec![parent.identity_index()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = parent.mul(g, x);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        // gens generate a subset closed under left multiplication by the
        // gens; since the group is finite this is already a subgroup
        Subgroup {
            parent,
            members: set.into_iter().collect(),
        }
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        let id = parent.identity_index();
        Subgroup {
            parent,
            members: vec![id],
        }
    }

    pub fn whole_group(parent: Arc<FiniteGroup>) -> Self {
        let members = (0..parent.order()).collect();
        Subgroup { parent, members }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.members.iter().all(|&m| self.contains(m))
    }

    /// `g H g^{-1}`.
    pub fn conjugate_by(&self, g: usize) -> Subgroup {
        let mut members: Vec<usize> = self
            .members
            .iter()
            .map(|&h| self.parent.conjugate(g, h))
            .collect();
        members.sort_unstable();
        Subgroup {
            parent: self.parent.clone(),
            members,
        }
    }

    /// Realize the subgroup as a standalone `FiniteGroup` (same degree),
    /// together with the element-index map from the new group back to the
    /// parent's element indices.
    pub fn as_group(&self) -> (Arc<FiniteGroup>, Vec<usize>) {
        let gens: Vec<Permutation> = self
            .members
            .iter()
            .map(|&i| self.parent.element(i).clone())
            .collect();
        let g = FiniteGroup::from_generators(self.parent.degree(), gens)
            .expect("members form a group");
        let map = (0..g.order())
            .map(|i| {
                self.parent
                    .index_of(g.element(i))
                    .expect("subgroup element lies in parent")
            })
            .collect();
        (g, map)
    }
}

/// Canonical comparison: order first, then lexicographic member list.
fn subgroup_key(s: &Subgroup) -> (usize, Vec<usize>) {
    (s.order(), s.members.clone())
}

/// Complete list of subgroups: all cyclic subgroups, then closure under
/// pairwise join until a fixpoint, in deterministic order.
pub fn all_subgroups(group: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut subs: Vec<Subgroup> = Vec::new();
    for i in 0..group.order() {
        let s = Subgroup::generated(group.clone(), &[i]);
        if seen.insert(s.members.clone()) {
            subs.push(s);
        }
    }
    loop {
        let mut added = false;
        let snapshot_len = subs.len();
        for a in 0..snapshot_len {
            for b in (a + 1)..snapshot_len {
                let mut gens: Vec<usize> = subs[a].members.clone();
                gens.extend_from_slice(&subs[b].members);
                let join = Subgroup::generated(group.clone(), &gens);
                if seen.insert(join.members.clone()) {
                    subs.push(join);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    subs.sort_by_key(subgroup_key);
    subs
}

/// Conjugacy classes of subgroups with canonical representatives.
pub struct ConjugacyClassTable {
    group: Arc<FiniteGroup>,
    /// All subgroups, in canonical order.
    subgroups: Vec<Subgroup>,
    /// Canonical representative per class, sorted by order then members;
    /// class 0 is the trivial subgroup, the last class is `G`.
    classes: Vec<Subgroup>,
    /// Map from member list to class index.
    class_of: BTreeMap<Vec<usize>, usize>,
}

impl ConjugacyClassTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn classes(&self) -> &[Subgroup] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn class_index(&self, s: &Subgroup) -> Option<usize> {
        self.class_of.get(&s.members).copied()
    }
}

/// Partition all subgroups of `G` by conjugacy.
pub fn conjugacy_classes_of_subgroups(group: &Arc<FiniteGroup>) -> ConjugacyClassTable {
    let subgroups = all_subgroups(group);
    let mut class_of: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut classes: Vec<Subgroup> = Vec::new();
    for s in &subgroups {
        if class_of.contains_key(&s.members) {
            continue;
        }
        // orbit under conjugation; representative is the minimal member
        let mut orbit: Vec<Subgroup> = Vec::new();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in 0..group.order() {
            let c = s.conjugate_by(g);
            if seen.insert(c.members.clone()) {
                orbit.push(c);
            }
        }
        orbit.sort_by_key(subgroup_key);
        let rep = orbit[0].clone();
        let idx = classes.len();
        classes.push(rep);
        for c in orbit {
            class_of.insert(c.members, idx);
        }
    }
    // sort classes canonically and remap indices
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by_key(|&i| subgroup_key(&classes[i]));
    let mut remap = vec![0usize; classes.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    let classes: Vec<Subgroup> = order.iter().map(|&i| classes[i].clone()).collect();
    for v in class_of.values_mut() {
        *v = remap[*v];
    }
    ConjugacyClassTable {
        group: group.clone(),
        subgroups,
        classes,
        class_of,
    }
}

/// `N_G H = { g : g H g^{-1} = H }`.
pub fn normalizer(group: &Arc<FiniteGroup>, h: &Subgroup) -> Subgroup {
    let members: Vec<usize> = (0..group.order())
        .filter(|&g| h.conjugate_by(g).members == h.members)
        .collect();
    Subgroup {
        parent: group.clone(),
        members,
    }
}

/// The Weyl group `W_G H = N_G H / H`, realized as a permutation group on
/// the left cosets of `H` in `N_G H`.
pub fn weyl_group(group: &Arc<FiniteGroup>, h: &Subgroup) -> Arc<FiniteGroup> {
    let n = normalizer(group, h);
    // left cosets of H in N, deterministic order by minimal member
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut assigned: BTreeMap<usize, usize> = BTreeMap::new();
    for &g in &n.members {
        if assigned.contains_key(&g) {
            continue;
        }
        let mut coset: Vec<usize> = h.members.iter().map(|&x| group.mul(g, x)).collect();
        coset.sort_unstable();
        let ci = cosets.len();
        for &y in &coset {
            assigned.insert(y, ci);
        }
        cosets.push(coset);
    }
    let k = cosets.len();
    if k == 1 {
        return FiniteGroup::trivial();
    }
    // each element of N permutes the cosets by left multiplication
    let gens: Vec<Permutation> = n
        .members
        .iter()
        .map(|&g| {
            let images: Vec<usize> = (0..k)
                .map(|c| assigned[&group.mul(g, cosets[c][0])])
                .collect();
            Permutation::new(images).expect("coset action is a bijection")
        })
        .collect();
    FiniteGroup::from_generators(k, gens).expect("quotient group closure")
}

/// Is some `G`-conjugate of `K` contained in `H`? With `strict`, also require
/// `|K| < |H|`.
pub fn is_subconjugate(group: &Arc<FiniteGroup>, k: &Subgroup, h: &Subgroup, strict: bool) -> bool {
    if strict && k.order() >= h.order() {
        return false;
    }
    if k.order() > h.order() || h.order() % k.order() != 0 {
        return false;
    }
    (0..group.order()).any(|g| h.contains_subgroup(&k.conjugate_by(g)))
}

/// Class indices of the family `[<=_G H]` (or `[<_G H]` with `strict`):
/// closed under conjugation and under passing to subgroups.
pub fn family_below(
    table: &ConjugacyClassTable,
    h: &Subgroup,
    strict: bool,
) -> BTreeSet<usize> {
    let group = table.group();
    table
        .classes()
        .iter()
        .enumerate()
        .filter(|(_, k)| is_subconjugate(group, k, h, strict))
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::named_group;

    /// Brute-force subset-closure oracle: test every subset of element
    /// indices for the subgroup axioms (used for small groups only).
    fn subgroup_count_oracle(g: &Arc<FiniteGroup>) -> usize {
        let n = g.order();
        assert!(n <= 12, "oracle is exponential");
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue; // must contain identity (index 0)
            }
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if Subgroup::new(g.clone(), members).is_ok() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn subgroup_counts() {
        let t = named_group("cyclic-1").unwrap();
        assert_eq!(all_subgroups(&t).len(), 1);

        let v4 = named_group("klein-4").unwrap();
        assert_eq!(all_subgroups(&v4).len(), 5);
        assert_eq!(subgroup_count_oracle(&v4), 5);

        let s3 = named_group("symmetric-3").unwrap();
        assert_eq!(all_subgroups(&s3).len(), 6);
        assert_eq!(subgroup_count_oracle(&s3), 6);

        let q8 = named_group("quaternion-8").unwrap();
        assert_eq!(all_subgroups(&q8).len(), subgroup_count_oracle(&q8));
    }

    #[test]
    fn conjugacy_class_counts() {
        for (name, n) in [
            ("klein-4", 5),
            ("symmetric-3", 4),
            ("symmetric-4", 11),
            ("quaternion-8", 6),
            ("alternating-4", 5),
            ("dihedral-8", 8),
        ] {
            let g = named_group(name).unwrap();
            let t = conjugacy_classes_of_subgroups(&g);
            assert_eq!(t.len(), n, "{name}");
            // trivial first, G last
            assert_eq!(t.classes()[0].order(), 1);
            assert_eq!(t.classes()[t.len() - 1].order(), g.order());
        }
    }

    /// Elementwise conjugation oracle for normalizers.
    fn normalizer_oracle(g: &Arc<FiniteGroup>, h: &Subgroup) -> Vec<usize> {
        (0..g.order())
            .filter(|&x| {
                h.members()
                    .iter()
                    .all(|&m| h.contains(g.conjugate(x, m)))
            })
            .collect()
    }

    #[test]
    fn normalizers_and_weyl_groups() {
        let s3 = named_group("symmetric-3").unwrap();
        let whole = Subgroup::whole_group(s3.clone());
        assert_eq!(normalizer(&s3, &whole).order(), 6);

        // H = <(0 1 2)> is normal: N = G, W has order 2
        let c3 = Subgroup::generated(
            s3.clone(),
            &[s3
                .index_of(&Permutation::from_cycles(3, &[&[0, 1, 2]]))
                .unwrap()],
        );
        let n = normalizer(&s3, &c3);
        assert_eq!(n.order(), 6);
        assert_eq!(n.members().to_vec(), normalizer_oracle(&s3, &c3));
        assert_eq!(weyl_group(&s3, &c3).order(), 2);

        // H = <(0 1)> is self-normalizing
        let c2 = Subgroup::generated(
            s3.clone(),
            &[s3
                .index_of(&Permutation::from_cycles(3, &[&[0, 1]]))
                .unwrap()],
        );
        let n = normalizer(&s3, &c2);
        assert_eq!(n.order(), 2);
        assert_eq!(n.members().to_vec(), normalizer_oracle(&s3, &c2));
        assert_eq!(weyl_group(&s3, &c2).order(), 1);

        // Weyl group of the trivial subgroup is G itself
        let triv = Subgroup::trivial(s3.clone());
        assert_eq!(weyl_group(&s3, &triv).order(), 6);
        assert_eq!(weyl_group(&s3, &whole).order(), 1);
    }

    #[test]
    fn normality_in_normalizer() {
        for name in ["symmetric-4", "quaternion-8", "dihedral-8"] {
            let g = named_group(name).unwrap();
            for h in all_subgroups(&g) {
                let n = normalizer(&g, &h);
                // H is normal in N: every n-conjugate of H is H
                for &x in n.members() {
                    assert_eq!(h.conjugate_by(x).members(), h.members());
                }
                assert!(n.contains_subgroup(&h));
            }
        }
    }

    #[test]
    fn class_equation_for_subgroups() {
        for name in ["symmetric-4", "alternating-4", "dihedral-8"] {
            let g = named_group(name).unwrap();
            let t = conjugacy_classes_of_subgroups(&g);
            let total: usize = t
                .classes()
                .iter()
                .map(|rep| g.order() / normalizer(&g, rep).order())
                .sum();
            assert_eq!(total, t.subgroups().len(), "{name}");
        }
    }

    #[test]
    fn subconjugacy() {
        let s3 = named_group("symmetric-3").unwrap();
        let a = Subgroup::generated(
            s3.clone(),
            &[s3.index_of(&Permutation::from_cycles(3, &[&[0, 1]])).unwrap()],
        );
        let b = Subgroup::generated(
            s3.clone(),
            &[s3.index_of(&Permutation::from_cycles(3, &[&[0, 2]])).unwrap()],
        );
        let c3 = Subgroup::generated(
            s3.clone(),
            &[s3
                .index_of(&Permutation::from_cycles(3, &[&[0, 1, 2]]))
                .unwrap()],
        );
        let triv = Subgroup::trivial(s3.clone());
        assert!(is_subconjugate(&s3, &triv, &a, false));
        assert!(is_subconjugate(&s3, &a, &b, false));
        assert!(!is_subconjugate(&s3, &a, &b, true)); // equal order
        assert!(!is_subconjugate(&s3, &c3, &a, false));
    }

    #[test]
    fn families() {
        let s3 = named_group("symmetric-3").unwrap();
        let t = conjugacy_classes_of_subgroups(&s3);
        let whole = Subgroup::whole_group(s3.clone());
        let triv = Subgroup::trivial(s3.clone());
        let c3 = Subgroup::generated(
            s3.clone(),
            &[s3
                .index_of(&Permutation::from_cycles(3, &[&[0, 1, 2]]))
                .unwrap()],
        );
        let all: BTreeSet<usize> = (0..t.len()).collect();
        assert_eq!(family_below(&t, &whole, false), all);
        assert_eq!(
            family_below(&t, &triv, false),
            BTreeSet::from([0])
        );
        // [<= C3] = {trivial, C3}
        let fam = family_below(&t, &c3, false);
        assert_eq!(fam.len(), 2);
        assert!(fam.contains(&0));
        assert!(fam.contains(&t.class_index(&c3).unwrap()));
        // strict family = family minus the class of H
        let strict = family_below(&t, &c3, true);
        let mut expect = fam.clone();
        expect.remove(&t.class_index(&c3).unwrap());
        assert_eq!(strict, expect);
    }

    #[test]
    fn subconjugacy_partial_order_on_classes() {
        let g = named_group("symmetric-4").unwrap();
        let t = conjugacy_classes_of_subgroups(&g);
        let n = t.len();
        let le = |i: usize, j: usize| is_subconjugate(&g, &t.classes()[i], &t.classes()[j], false);
        for i in 0..n {
            assert!(le(i, i));
            for j in 0..n {
                if le(i, j) && le(j, i) {
                    assert_eq!(i, j, "antisymmetry");
                }
                for k in 0..n {
                    if le(i, j) && le(j, k) {
                        assert!(le(i, k), "transitivity");
                    }
                }
            }
        }
    }
}
