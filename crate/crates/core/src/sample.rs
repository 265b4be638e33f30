//! Deterministic sampling of test objects: a tiny splitmix64 generator so
//! seeded runs are bit-stable on every platform, random equivariant
//! automorphisms, and random small equivariant complexes (sums of disks
//! and spheres with their bases scrambled by an equivariant change of
//! coordinates).

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::chain::{concentrated, direct_sum, disk_of, Complex};
use crate::perm::FiniteGroup;
use crate::ratmat::{rat, rat_frac, QMat, Rat};
use crate::rep::GRepresentation;

pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as usize) as i64
    }

    /// Small integer in `[-2, 2]`, as a rational.
    pub fn small_rat(&mut self) -> Rat {
        rat(self.in_range(-2, 2))
    }
}

pub fn rand_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> QMat {
    QMat::from_fn(rows, cols, |_, _| rng.small_rat())
}

/// A random invertible matrix commuting with the action: the `G`-average
/// of a random matrix, nudged by multiples of the identity until it is
/// invertible.
pub fn rand_equivariant_automorphism(rep: &GRepresentation, rng: &mut SplitMix64) -> QMat {
    let n = rep.dim();
    if n == 0 {
        return QMat::identity(0);
    }
    let r = rand_matrix(rng, n, n);
    let order = rep.group().order() as i64;
    let mut avg = QMat::zero(n, n);
    for g in 0..rep.group().order() {
        let m = rep.element_matrix(g);
        avg = avg.add(&m.mul(&r).mul(&m.inverse().expect("action matrices are invertible")));
    }
    let mut t = avg.scale(&rat_frac(1, order));
    while !t.is_invertible() {
        t = t.add(&QMat::identity(n));
    }
    t
}

fn rand_rep(group: &Arc<FiniteGroup>, rng: &mut SplitMix64) -> GRepresentation {
    match rng.below(3) {
        0 => GRepresentation::trivial(group.clone(), 1 + rng.below(2)),
        _ => GRepresentation::regular(group.clone()),
    }
}

/// A random bounded complex over `G` supported in `[lo, hi]`: a direct sum
/// of a few disks and spheres on small representations, conjugated
/// degreewise by random equivariant automorphisms so the differentials are
/// not in normal form.
pub fn rand_complex(group: &Arc<FiniteGroup>, rng: &mut SplitMix64, lo: i64, hi: i64) -> Complex {
    assert!(lo <= hi);
    let pieces = 2 + rng.below(2);
    let mut acc = Complex::zero(group.clone());
    for _ in 0..pieces {
        let rep = rand_rep(group, rng);
        let piece = if lo < hi && rng.below(3) > 0 {
            disk_of(rep, rng.in_range(lo + 1, hi))
        } else {
            concentrated(rep, rng.in_range(lo, hi))
        };
        acc = direct_sum(&acc, &piece).0;
    }
    scramble(&acc, rng)
}

/// Representations of dimension at most `max_dim`: coset representations
/// of bounded index plus small trivial ones. Enumerating the subgroup
/// lattice is the expensive part, so callers drawing many complexes
/// should compute this once.
pub fn small_rep_candidates(group: &Arc<FiniteGroup>, max_dim: usize) -> Vec<GRepresentation> {
    let mut candidates: Vec<GRepresentation> = crate::lattice::all_subgroups(group)
        .iter()
        .filter(|h| h.order() * max_dim >= group.order())
        .map(GRepresentation::on_cosets)
        .collect();
    candidates.push(GRepresentation::trivial(group.clone(), 1));
    if max_dim >= 2 {
        candidates.push(GRepresentation::trivial(group.clone(), 2));
    }
    candidates
}

/// A random bounded complex whose degreewise dimensions never exceed
/// `max_dim`: pieces are disks and spheres on coset representations of
/// index at most `max_dim` and small trivial representations, scrambled.
pub fn rand_small_complex(
    group: &Arc<FiniteGroup>,
    rng: &mut SplitMix64,
    lo: i64,
    hi: i64,
    max_dim: usize,
) -> Complex {
    let candidates = small_rep_candidates(group, max_dim);
    rand_small_complex_from(&candidates, group, rng, lo, hi, max_dim)
}

/// Same draw over a precomputed candidate list.
pub fn rand_small_complex_from(
    candidates: &[GRepresentation],
    group: &Arc<FiniteGroup>,
    rng: &mut SplitMix64,
    lo: i64,
    hi: i64,
    max_dim: usize,
) -> Complex {
    assert!(lo <= hi && max_dim >= 1);
    let mut acc = Complex::zero(group.clone());
    for _ in 0..4 {
        let rep = candidates[rng.below(candidates.len())].clone();
        let piece = if lo < hi && rng.below(3) > 0 {
            disk_of(rep, rng.in_range(lo + 1, hi))
        } else {
            concentrated(rep, rng.in_range(lo, hi))
        };
        let sum = direct_sum(&acc, &piece).0;
        if (sum.lo()..=sum.hi()).all(|n| sum.dim(n) <= max_dim) {
            acc = sum;
        }
    }
    if acc.total_dim() == 0 {
        acc = concentrated(GRepresentation::trivial(group.clone(), 1), lo);
    }
    scramble(&acc, rng)
}

/// Conjugate each degree by a random equivariant automorphism; homology
/// and all structure are preserved up to isomorphism.
pub fn scramble(x: &Complex, rng: &mut SplitMix64) -> Complex {
    let ts: Vec<QMat> = (x.lo()..=x.hi())
        .map(|n| rand_equivariant_automorphism(x.term(n).unwrap(), rng))
        .collect();
    let terms: Vec<GRepresentation> = (x.lo()..=x.hi())
        .map(|n| x.term(n).unwrap().clone())
        .collect();
    let diffs: Vec<QMat> = (x.lo()..=x.hi())
        .map(|n| {
            if n == x.lo() {
                QMat::zero(0, x.dim(n))
            } else {
                let i = (n - x.lo()) as usize;
                ts[i - 1]
                    .mul(&x.diff(n))
                    .mul(&ts[i].inverse().expect("automorphism"))
            }
        })
        .collect();
    Complex::from_parts(x.group().clone(), x.lo(), terms, diffs)
}
