//! Representations of F(a,b) into GL_n and trace evaluation of words and
//! chains.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chains::Chain;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::words::{Generator, Word};

/// Default number of draws before [`random_representation`] gives up.
pub const DEFAULT_RESAMPLE_LIMIT: usize = 1000;

/// `a ↦ A`, `b ↦ B` with both images invertible.
#[derive(Clone, Debug)]
pub struct Representation<S: Scalar> {
    a: Matrix<S>,
    b: Matrix<S>,
    a_inv: Matrix<S>,
    b_inv: Matrix<S>,
}

impl<S: Scalar> Representation<S> {
    pub fn new(a: Matrix<S>, b: Matrix<S>) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                left: a.dim(),
                right: b.dim(),
            });
        }
        if a.ctx() != b.ctx() {
            return Err(Error::KindMismatch(format!(
                "{:?} vs {:?}",
                a.ctx(),
                b.ctx()
            )));
        }
        let a_inv = a.inverse()?;
        let b_inv = b.inverse()?;
        Ok(Representation { a, b, a_inv, b_inv })
    }

    /// The trivial representation into GL_n.
    pub fn identity(n: usize, ctx: S::Ctx) -> Self {
        let id = Matrix::identity(n, ctx);
        Representation {
            a: id.clone(),
            b: id.clone(),
            a_inv: id.clone(),
            b_inv: id,
        }
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn ctx(&self) -> S::Ctx {
        self.a.ctx()
    }

    pub fn image_a(&self) -> &Matrix<S> {
        &self.a
    }

    pub fn image_b(&self) -> &Matrix<S> {
        &self.b
    }

    fn image(&self, gen: Generator, inverse: bool) -> &Matrix<S> {
        match (gen, inverse) {
            (Generator::A, false) => &self.a,
            (Generator::A, true) => &self.a_inv,
            (Generator::B, false) => &self.b,
            (Generator::B, true) => &self.b_inv,
        }
    }

    /// `ρ(w)`, one repeated-squaring power per syllable.
    pub fn evaluate_word(&self, w: &Word) -> Matrix<S> {
        let mut acc: Option<Matrix<S>> = None;
        for s in w.syllables() {
            let p = self.image(s.gen(), s.exp() < 0).pow(s.exp().unsigned_abs());
            acc = Some(match acc {
                None => p,
                Some(m) => m.mul(&p).expect("images share dimension and ring"),
            });
        }
        acc.unwrap_or_else(|| Matrix::identity(self.dim(), self.ctx()))
    }

    pub fn trace_of_word(&self, w: &Word) -> S {
        self.evaluate_word(w).trace()
    }

    /// `Σ c·tr ρ(w)` over the chain's terms, using each class's canonical
    /// rotation as the representative word.
    pub fn trace_of_chain(&self, chain: &Chain) -> S {
        let ctx = self.ctx();
        let terms: Vec<_> = chain.iter().collect();
        terms
            .par_iter()
            .map(|(class, coeff)| {
                let t = self.trace_of_word(&class.representative());
                t.mul(&S::from_bigint(ctx, coeff), ctx)
            })
            .reduce(|| S::zero(ctx), |x, y| x.add(&y, ctx))
    }
}

/// An arbitrary (possibly singular) matrix with entries drawn by
/// [`Scalar::sample`].
pub fn random_matrix<S: Scalar, R: Rng + ?Sized>(
    n: usize,
    ctx: S::Ctx,
    rng: &mut R,
    bound: u64,
) -> Matrix<S> {
    Matrix::from_fn(n, ctx, |_, _| S::sample(ctx, rng, bound))
}

/// Draws `A` then `B` from a ChaCha stream seeded with `seed`, redrawing
/// each until invertible. Deterministic in `(n, ctx, seed, bound)`.
pub fn random_representation<S: Scalar>(
    n: usize,
    ctx: S::Ctx,
    seed: u64,
    bound: u64,
) -> Result<Representation<S>> {
    random_representation_with_limit(n, ctx, seed, bound, DEFAULT_RESAMPLE_LIMIT)
}

pub fn random_representation_with_limit<S: Scalar>(
    n: usize,
    ctx: S::Ctx,
    seed: u64,
    bound: u64,
    max_draws: usize,
) -> Result<Representation<S>> {
    if n == 0 {
        return Err(Error::Domain(
            "representation dimension must be at least 1".into(),
        ));
    }
    S::check_bound(ctx, bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = 0;
    let mut invertible = |rng: &mut ChaCha8Rng| -> Result<(Matrix<S>, Matrix<S>)> {
        loop {
            if draws >= max_draws {
                return Err(Error::ResampleExhausted { attempts: draws });
            }
            draws += 1;
            let m = random_matrix::<S, _>(n, ctx, rng, bound);
            if let Ok(inv) = m.inverse() {
                return Ok((m, inv));
            }
        }
    };
    let (a, a_inv) = invertible(&mut rng)?;
    let (b, b_inv) = invertible(&mut rng)?;
    Ok(Representation { a, b, a_inv, b_inv })
}
