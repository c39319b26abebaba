//! Signed enumeration of the symmetric group.
//!
//! Heap's algorithm moves between consecutive permutations with a single
//! transposition, so the sign flips on every step and never has to be
//! recomputed.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest degree `m` for which `m!` items may be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationCap(pub usize);

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap(10)
    }
}

impl EnumerationCap {
    pub fn check(&self, m: usize) -> Result<()> {
        if m > self.0 {
            return Err(Error::Resource {
                degree: m,
                cap: self.0,
                requested: format!("{m}!"),
            });
        }
        Ok(())
    }
}

/// A permutation of `1..=m` in one-line notation with its sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPermutation {
    images: Vec<usize>,
    sign: i32,
}

impl SignedPermutation {
    /// Validates `images` and computes the sign by counting inversions.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in &images {
            if x == 0 || x > m || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Domain(format!(
                    "{images:?} is not a permutation of 1..={m}"
                )));
            }
        }
        let sign = parity_by_inversions(&images);
        Ok(SignedPermutation { images, sign })
    }

    pub fn identity(m: usize) -> Self {
        SignedPermutation {
            images: (1..=m).collect(),
            sign: 1,
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// +1 or −1.
    pub fn sign(&self) -> i32 {
        self.sign
    }
}

/// `(-1)^{#inversions}`.
pub fn parity_by_inversions(images: &[usize]) -> i32 {
    let inversions = images
        .iter()
        .enumerate()
        .map(|(i, x)| images[i + 1..].iter().filter(|y| *y < x).count())
        .sum::<usize>();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// Heap's algorithm over `items`, emitted after a fixed `prefix`.
#[derive(Debug, Clone)]
pub struct SignedPermutations {
    prefix: Vec<usize>,
    items: Vec<usize>,
    counters: Vec<usize>,
    level: usize,
    sign: i32,
    started: bool,
}

impl SignedPermutations {
    fn over(prefix: Vec<usize>, items: Vec<usize>, sign: i32) -> Self {
        SignedPermutations {
            prefix,
            counters: vec![0; items.len()],
            items,
            level: 1,
            sign,
            started: false,
        }
    }

    fn current(&self) -> SignedPermutation {
        let mut images = self.prefix.clone();
        images.extend_from_slice(&self.items);
        SignedPermutation {
            images,
            sign: self.sign,
        }
    }
}

impl Iterator for SignedPermutations {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        let k = self.items.len();
        while self.level < k {
            let i = self.level;
            if self.counters[i] < i {
                let j = if i.is_multiple_of(2) { 0 } else { self.counters[i] };
                self.items.swap(j, i);
                self.sign = -self.sign;
                self.counters[i] += 1;
                self.level = 1;
                return Some(self.current());
            }
            self.counters[i] = 0;
            self.level += 1;
        }
        None
    }
}

/// All `m!` signed permutations of `1..=m` in a fixed, deterministic order.
pub fn enumerate_signed_permutations(m: usize, cap: EnumerationCap) -> Result<SignedPermutations> {
    if m == 0 {
        return Err(Error::Domain(
            "permutation degree must be at least 1".into(),
        ));
    }
    cap.check(m)?;
    Ok(SignedPermutations::over(Vec::new(), (1..=m).collect(), 1))
}

/// The `(m-1)!` permutations with `σ(1) = first`. Moving `first` to the
/// front of `1..=m` costs `first − 1` adjacent transpositions, which fixes
/// the starting sign.
pub fn signed_permutations_with_first(m: usize, first: usize) -> SignedPermutations {
    debug_assert!((1..=m).contains(&first));
    let rest = (1..=m).filter(|&x| x != first).collect();
    let sign = if (first - 1).is_multiple_of(2) { 1 } else { -1 };
    SignedPermutations::over(vec![first], rest, sign)
}

/// Parallel map–reduce over all of `S_m`, split by `σ(1)`. `reduce` must be
/// associative and commutative for the result to be schedule-independent.
pub fn par_fold_permutations<T, F, R>(
    m: usize,
    cap: EnumerationCap,
    identity: impl Fn() -> T + Sync + Send,
    fold: F,
    reduce: R,
) -> Result<T>
where
    T: Send,
    F: Fn(T, SignedPermutation) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    if m == 0 {
        return Err(Error::Domain(
            "permutation degree must be at least 1".into(),
        ));
    }
    cap.check(m)?;
    Ok((1..=m)
        .into_par_iter()
        .map(|first| signed_permutations_with_first(m, first).fold(identity(), &fold))
        .reduce(&identity, reduce))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_degrees() {
        let all: Vec<_> = enumerate_signed_permutations(1, EnumerationCap::default())
            .unwrap()
            .collect();
        assert_eq!(all, vec![SignedPermutation::identity(1)]);

        let all: Vec<_> = enumerate_signed_permutations(2, EnumerationCap::default())
            .unwrap()
            .map(|p| (p.images().to_vec(), p.sign()))
            .collect();
        assert_eq!(all, vec![(vec![1, 2], 1), (vec![2, 1], -1)]);

        let signs: i32 = enumerate_signed_permutations(3, EnumerationCap::default())
            .unwrap()
            .map(|p| p.sign())
            .sum();
        assert_eq!(signs, 0);
    }

    #[test]
    fn heap_sign_matches_inversion_parity() {
        for m in 1..=7 {
            let mut seen = HashSet::new();
            for p in enumerate_signed_permutations(m, EnumerationCap::default()).unwrap() {
                assert_eq!(p.sign(), parity_by_inversions(p.images()), "{p:?}");
                assert!(seen.insert(p.images().to_vec()));
            }
            assert_eq!(seen.len() as u128, factorial(m));
        }
    }

    #[test]
    fn partitioned_enumeration_covers_group() {
        for m in 1..=6 {
            let mut seen = HashSet::new();
            for first in 1..=m {
                for p in signed_permutations_with_first(m, first) {
                    assert_eq!(p.images()[0], first);
                    assert_eq!(p.sign(), parity_by_inversions(p.images()));
                    assert!(seen.insert(p.images().to_vec()));
                }
            }
            assert_eq!(seen.len() as u128, factorial(m));
        }
    }

    #[test]
    fn cap_and_domain() {
        let cap = EnumerationCap(4);
        assert!(matches!(
            enumerate_signed_permutations(5, cap),
            Err(Error::Resource {
                degree: 5,
                cap: 4,
                ..
            })
        ));
        assert!(matches!(
            enumerate_signed_permutations(0, cap),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn from_images_validates() {
        assert_eq!(
            SignedPermutation::from_images(vec![2, 1, 3])
                .unwrap()
                .sign(),
            -1
        );
        assert_eq!(
            SignedPermutation::from_images(vec![2, 3, 1])
                .unwrap()
                .sign(),
            1
        );
        assert!(SignedPermutation::from_images(vec![1, 1]).is_err());
        assert!(SignedPermutation::from_images(vec![0, 1]).is_err());
        assert!(SignedPermutation::from_images(vec![1, 3]).is_err());
    }

    #[test]
    fn parallel_fold_counts() {
        let (count, signs) = par_fold_permutations(
            6,
            EnumerationCap::default(),
            || (0u64, 0i64),
            |(c, s), p| (c + 1, s + p.sign() as i64),
            |x, y| (x.0 + y.0, x.1 + y.1),
        )
        .unwrap();
        assert_eq!(count, 720);
        assert_eq!(signs, 0);
    }
}
