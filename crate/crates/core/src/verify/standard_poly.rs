//! Two evaluators for the standard polynomial
//! `S_m(X_1, …, X_m) = Σ_{σ ∈ S_m} sgn(σ) X_σ(1) ⋯ X_σ(m)`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::permutations::{par_fold_permutations, EnumerationCap};
use crate::scalar::Scalar;

/// Largest degree accepted by [`al_sum_fast`]; its table holds `2^m` matrices.
pub const MAX_FAST_DEGREE: usize = 20;

fn check_inputs<S: Scalar>(mats: &[Matrix<S>]) -> Result<(usize, S::Ctx)> {
    let first = mats
        .first()
        .ok_or_else(|| Error::Domain("standard polynomial needs at least one matrix".into()))?;
    for m in &mats[1..] {
        if m.ctx() != first.ctx() {
            return Err(Error::KindMismatch(format!(
                "{:?} vs {:?}",
                first.ctx(),
                m.ctx()
            )));
        }
        if m.dim() != first.dim() {
            return Err(Error::DimensionMismatch {
                left: first.dim(),
                right: m.dim(),
            });
        }
    }
    Ok((first.dim(), first.ctx()))
}

/// Sums all `m!` signed products directly.
pub fn al_sum_naive<S: Scalar>(mats: &[Matrix<S>], cap: EnumerationCap) -> Result<Matrix<S>> {
    let (n, ctx) = check_inputs(mats)?;
    par_fold_permutations(
        mats.len(),
        cap,
        || Matrix::zeros(n, ctx),
        |acc, sigma| {
            let mut it = sigma.images().iter().map(|&i| &mats[i - 1]);
            let first = it.next().expect("degree is at least 1").clone();
            let prod = it.fold(first, |p, x| p.mul(x).expect("checked"));
            if sigma.sign() > 0 {
                acc.add(&prod)
            } else {
                acc.sub(&prod)
            }
            .expect("checked")
        },
        |x, y| x.add(&y).expect("checked"),
    )
}

/// Subset recursion: with `M(∅) = I`,
/// `M(T) = Σ_{i ∈ T} (−1)^{rank(i,T)−1} X_i · M(T ∖ {i})`
/// where `rank(i,T)` is the 1-based position of `i` in sorted `T`.
/// `M({1..m}) = S_m`. Costs `O(2^m · m)` matrix products.
pub fn al_sum_fast<S: Scalar>(mats: &[Matrix<S>]) -> Result<Matrix<S>> {
    let (n, ctx) = check_inputs(mats)?;
    let m = mats.len();
    if m > MAX_FAST_DEGREE {
        return Err(Error::Resource {
            degree: m,
            cap: MAX_FAST_DEGREE,
            requested: format!("2^{m} subset table"),
        });
    }
    let full = 1usize << m;
    let mut table: Vec<Matrix<S>> = Vec::with_capacity(full);
    table.push(Matrix::identity(n, ctx));
    for subset in 1..full {
        let mut acc = Matrix::zeros(n, ctx);
        let mut rank = 0;
        for (i, x) in mats.iter().enumerate() {
            if subset & (1 << i) == 0 {
                continue;
            }
            rank += 1;
            let term = x.mul(&table[subset ^ (1 << i)])?;
            acc = if rank % 2 == 1 {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
        }
        table.push(acc);
    }
    Ok(table.pop().expect("table is non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, PrimeModulus, Rational};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows((), rows).unwrap()
    }

    #[test]
    fn degree_two_is_commutator() {
        let x = q(&[&[1, 2], &[3, 4]]);
        let y = q(&[&[0, 1], &[5, -1]]);
        let comm = x.mul(&y).unwrap().sub(&y.mul(&x).unwrap()).unwrap();
        assert_eq!(al_sum_fast(&[x.clone(), y.clone()]).unwrap(), comm);
        assert_eq!(
            al_sum_naive(&[x, y], EnumerationCap::default()).unwrap(),
            comm
        );
    }

    #[test]
    fn scalars_commute() {
        let x = q(&[&[3]]);
        let y = q(&[&[-7]]);
        assert!(al_sum_fast(&[x.clone(), y.clone()]).unwrap().is_zero());
        assert!(al_sum_naive(&[x, y], EnumerationCap::default())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn degree_one_is_identity_map() {
        let x = q(&[&[1, 2], &[3, 4]]);
        assert_eq!(al_sum_fast(std::slice::from_ref(&x)).unwrap(), x);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            al_sum_fast::<Rational>(&[]),
            Err(Error::Domain(_))
        ));
        let p = PrimeModulus::new(101).unwrap();
        let a = Matrix::<Fp>::identity(2, p);
        let b = Matrix::<Fp>::identity(3, p);
        assert!(matches!(
            al_sum_fast(&[a.clone(), b]),
            Err(Error::DimensionMismatch { .. })
        ));
        let c = Matrix::<Fp>::identity(2, PrimeModulus::mersenne61());
        assert!(matches!(
            al_sum_naive(&[a, c], EnumerationCap::default()),
            Err(Error::KindMismatch(_))
        ));
        let many = vec![q(&[&[1]]); 5];
        assert!(matches!(
            al_sum_naive(&many, EnumerationCap(4)),
            Err(Error::Resource { .. })
        ));
    }
}
