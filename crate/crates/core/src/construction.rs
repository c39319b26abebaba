//! The kernel chain `Θ_n = Σ_{σ ∈ S_2n} sgn(σ) |a x_σ(1) ⋯ x_σ(2n)|` with
//! `x_i = bⁱa`, and the two certificates that its terms never cancel.
//!
//! Non-cancellation rests on two facts checked exhaustively here:
//! the `(2n)!` words fall into pairwise distinct conjugacy classes of F(a,b)
//! (each class decodes back to its permutation through its `b`-block cycle,
//! whose single zero marks where the word starts), and no word is conjugate
//! into the boundary subgroup `⟨[a,b]⟩` because its image in `H_1` is
//! `(2n+1, n(2n+1)) ≠ 0` while every power of `[a,b]` maps to zero.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::chains::Chain;
use crate::error::{Error, Result};
use crate::permutations::{factorial, par_fold_permutations, EnumerationCap, SignedPermutation};
use crate::words::{AbelianImage, CyclicWord, Generator, Word};

/// `x_i = bⁱa`
pub fn build_x(i: i64) -> Result<Word> {
    if i < 1 {
        return Err(Error::Domain(format!("x_i needs i >= 1, got {i}")));
    }
    Ok(Word::power(Generator::B, i).multiply(&Word::a()))
}

/// `W_σ = a·x_σ(1)⋯x_σ(2n)`, which is `a b^σ(1) a b^σ(2) a ⋯ a b^σ(2n) a`.
pub fn build_w(sigma: &SignedPermutation, n: usize) -> Result<Word> {
    if sigma.degree() != 2 * n {
        return Err(Error::Domain(format!(
            "permutation of degree {} does not match m = 2n = {}",
            sigma.degree(),
            2 * n
        )));
    }
    sigma
        .images()
        .iter()
        .try_fold(Word::a(), |w, &i| Ok(w.multiply(&build_x(i as i64)?)))
}

/// `(2n+1) + n(2n+1)`
pub fn w_letter_len(n: usize) -> u64 {
    let m = 2 * n as u64;
    (m + 1) + m * (m + 1) / 2
}

pub fn build_theta(n: usize, cap: EnumerationCap) -> Result<Chain> {
    check_n(n)?;
    par_fold_permutations(
        2 * n,
        cap,
        Chain::zero,
        |mut chain, sigma| {
            let w = build_w(&sigma, n).expect("degree is 2n");
            chain.add_term(w.canonical_class(), BigInt::from(sigma.sign()));
            chain
        },
        Chain::merge,
    )
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctnessCertificate {
    pub n: usize,
    pub permutations: u64,
    /// Size of the set of canonical classes.
    pub distinct_classes: u64,
    /// Words whose block sequence equals `(σ(1), …, σ(2n), 0)` with one zero.
    pub block_sequences_verified: u64,
    /// Classes whose block cycle, rotated to end at its zero, gives back σ.
    pub classes_decoded: u64,
    /// Every block sequence, for `(2n)! ≤ 24`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_sequences: Option<Vec<Vec<u64>>>,
}

impl DistinctnessCertificate {
    pub fn all_distinct(&self) -> bool {
        self.distinct_classes == self.permutations
            && self.block_sequences_verified == self.permutations
            && self.classes_decoded == self.permutations
    }
}

/// Rotates a cyclic block sequence so its unique zero comes last and drops
/// that zero. Fails unless exactly one entry is zero.
pub fn decode_block_cycle(cycle: &[u64]) -> Option<Vec<u64>> {
    let mut zeros = cycle.iter().enumerate().filter(|(_, x)| **x == 0);
    let (z, _) = zeros.next()?;
    if zeros.next().is_some() {
        return None;
    }
    let mut out = cycle.to_vec();
    out.rotate_left(z + 1);
    out.pop();
    Some(out)
}

#[derive(Default)]
struct DistinctScan {
    classes: Vec<(CyclicWord, Vec<usize>)>,
    block_ok: u64,
    decoded: u64,
    failure: Option<String>,
}

impl DistinctScan {
    fn merge(mut self, other: DistinctScan) -> DistinctScan {
        self.classes.extend(other.classes);
        self.block_ok += other.block_ok;
        self.decoded += other.decoded;
        self.failure = match (self.failure, other.failure) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        self
    }
}

/// Exhaustively checks that the classes `|W_σ|` are pairwise distinct, by
/// comparing canonical forms and, independently, by decoding σ from each
/// class's block cycle.
pub fn certify_pairwise_distinct(n: usize, cap: EnumerationCap) -> Result<DistinctnessCertificate> {
    check_n(n)?;
    let m = 2 * n;
    let scan = par_fold_permutations(
        m,
        cap,
        DistinctScan::default,
        |mut acc, sigma| {
            let w = build_w(&sigma, n).expect("degree is 2n");
            let mut expected: Vec<u64> = sigma.images().iter().map(|&i| i as u64).collect();
            expected.push(0);
            match w.b_block_sequence() {
                Ok(seq) if seq == expected && seq.iter().filter(|x| **x == 0).count() == 1 => {
                    acc.block_ok += 1
                }
                other => {
                    acc.failure.get_or_insert(format!(
                        "block sequence of W{:?} is {other:?}",
                        sigma.images()
                    ));
                }
            }
            let class = w.canonical_class();
            let decoded = class
                .b_block_cycle()
                .ok()
                .and_then(|c| decode_block_cycle(&c));
            if decoded.as_deref() == Some(&expected[..m]) {
                acc.decoded += 1;
            } else {
                acc.failure.get_or_insert(format!(
                    "class {class} of W{:?} decodes to {decoded:?}",
                    sigma.images()
                ));
            }
            acc.classes.push((class, sigma.images().to_vec()));
            acc
        },
        DistinctScan::merge,
    )?;
    if let Some(f) = scan.failure {
        return Err(Error::CertificationFailure(f));
    }
    let total = scan.classes.len() as u64;
    let mut seen: HashMap<&CyclicWord, &Vec<usize>> = HashMap::with_capacity(scan.classes.len());
    let mut collisions: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (class, images) in &scan.classes {
        if let Some(prev) = seen.insert(class, images) {
            let (x, y) = if prev < images {
                (prev, images)
            } else {
                (images, prev)
            };
            collisions.push((x.clone(), y.clone()));
        }
    }
    if let Some((x, y)) = collisions.into_iter().min() {
        return Err(Error::CertificationFailure(format!(
            "W{x:?} and W{y:?} are conjugate"
        )));
    }
    let block_sequences = (factorial(m) <= 24).then(|| {
        let mut seqs: Vec<Vec<u64>> = scan
            .classes
            .iter()
            .map(|(_, images)| images.iter().map(|&i| i as u64).chain([0]).collect())
            .collect();
        seqs.sort();
        seqs
    });
    Ok(DistinctnessCertificate {
        n,
        permutations: total,
        distinct_classes: seen.len() as u64,
        block_sequences_verified: scan.block_ok,
        classes_decoded: scan.decoded,
        block_sequences,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyCertificate {
    pub n: usize,
    pub permutations: u64,
    /// The common image of every `W_σ`.
    pub word_image: AbelianImage,
    /// Image of the boundary commutator `[a,b]`.
    pub boundary_image: AbelianImage,
}

/// `[a,b] = a b a⁻¹ b⁻¹`
pub fn boundary_commutator() -> Word {
    let (a, b) = (Word::a(), Word::b());
    a.multiply(&b).multiply(&a.invert()).multiply(&b.invert())
}

/// Checks `abelianize(W_σ) = (2n+1, n(2n+1))` for every σ, that `[a,b]`
/// abelianizes to zero, and that the former is nonzero.
pub fn certify_homology(n: usize, cap: EnumerationCap) -> Result<HomologyCertificate> {
    check_n(n)?;
    let m = 2 * n as i64;
    let expected = AbelianImage::new(m + 1, m * (m + 1) / 2);
    let (count, bad) = par_fold_permutations(
        2 * n,
        cap,
        || (0u64, None::<Vec<usize>>),
        |(count, bad), sigma| {
            let img = build_w(&sigma, n).expect("degree is 2n").abelianize();
            let bad = match bad {
                Some(b) => Some(b),
                None if img != expected => Some(sigma.images().to_vec()),
                None => None,
            };
            (count + 1, bad)
        },
        |x, y| {
            let bad = match (x.1, y.1) {
                (Some(p), Some(q)) => Some(p.min(q)),
                (p, q) => p.or(q),
            };
            (x.0 + y.0, bad)
        },
    )?;
    if let Some(images) = bad {
        return Err(Error::CertificationFailure(format!(
            "W{images:?} does not abelianize to {expected:?}"
        )));
    }
    let boundary_image = boundary_commutator().abelianize();
    if !boundary_image.is_zero() {
        return Err(Error::CertificationFailure(format!(
            "[a,b] abelianizes to {boundary_image:?}"
        )));
    }
    if expected.is_zero() {
        return Err(Error::CertificationFailure(
            "W_σ abelianizes to zero".into(),
        ));
    }
    Ok(HomologyCertificate {
        n,
        permutations: count,
        word_image: expected,
        boundary_image,
    })
}
