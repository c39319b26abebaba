//! Dense square matrices over an exact [`Scalar`] ring.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<S: Scalar> {
    n: usize,
    ctx: S::Ctx,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(n: usize, ctx: S::Ctx) -> Self {
        Matrix {
            n,
            ctx,
            data: vec![S::zero(ctx); n * n],
        }
    }

    pub fn identity(n: usize, ctx: S::Ctx) -> Self {
        let mut m = Matrix::zeros(n, ctx);
        for i in 0..n {
            m.data[i * n + i] = S::one(ctx);
        }
        m
    }

    pub fn from_rows(ctx: S::Ctx, rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { n, ctx, data })
    }

    pub fn from_i64_rows(ctx: S::Ctx, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            ctx,
            rows.iter()
                .map(|r| r.iter().map(|&v| S::from_i64(ctx, v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(n: usize, ctx: S::Ctx, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, ctx, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> S::Ctx {
        self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n, self.ctx)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::KindMismatch(format!(
                "{:?} vs {:?}",
                self.ctx, other.ctx
            )));
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        let ctx = self.ctx;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            for j in 0..n {
                let col = (0..n).map(|k| &other.data[k * n + j]);
                data.push(S::dot(ctx, row.iter().zip(col)));
            }
        }
        Matrix { n, ctx, data }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |x, y| x.add(y, self.ctx)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |x, y| x.sub(y, self.ctx)))
    }

    pub fn neg(&self) -> Self {
        Matrix {
            n: self.n,
            ctx: self.ctx,
            data: self.data.iter().map(|x| x.neg(self.ctx)).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        Matrix {
            n: self.n,
            ctx: self.ctx,
            data: self.data.iter().map(|x| x.mul(k, self.ctx)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Matrix {
            n: self.n,
            ctx: self.ctx,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| f(x, y))
                .collect(),
        }
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(self.ctx), |acc, i| {
            acc.add(self.get(i, i), self.ctx)
        })
    }

    /// Trace of `self · other` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<S> {
        self.check_compatible(other)?;
        let n = self.n;
        Ok(S::dot(
            self.ctx,
            (0..n * n).map(|idx| {
                let (i, k) = (idx / n, idx % n);
                (&self.data[i * n + k], &other.data[k * n + i])
            }),
        ))
    }

    /// Gaussian elimination over the field of fractions.
    pub fn determinant(&self) -> S {
        let n = self.n;
        let ctx = self.ctx;
        let mut a = self.data.clone();
        let mut det = S::one(ctx);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return S::zero(ctx);
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = det.neg(ctx);
            }
            let p = a[col * n + col].clone();
            det = det.mul(&p, ctx);
            let p_inv = p.inv(ctx).expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].mul(&p_inv, ctx);
                for j in col..n {
                    let t = factor.mul(&a[col * n + j], ctx);
                    a[r * n + j] = a[r * n + j].sub(&t, ctx);
                }
            }
        }
        det
    }

    /// Gauss–Jordan inversion.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let ctx = self.ctx;
        let mut a = self.data.clone();
        let mut inv = Matrix::<S>::identity(n, ctx).data;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p_inv = a[col * n + col].inv(ctx).ok_or(Error::SingularMatrix)?;
            for j in 0..n {
                a[col * n + j] = a[col * n + j].mul(&p_inv, ctx);
                inv[col * n + j] = inv[col * n + j].mul(&p_inv, ctx);
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let t = factor.mul(&a[col * n + j], ctx);
                    a[r * n + j] = a[r * n + j].sub(&t, ctx);
                    let t = factor.mul(&inv[col * n + j], ctx);
                    inv[r * n + j] = inv[r * n + j].sub(&t, ctx);
                }
            }
        }
        Ok(Matrix { n, ctx, data: inv })
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul_unchecked(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc.unwrap_or_else(|| Matrix::identity(self.n, self.ctx))
    }

    /// Entries as display strings, row by row.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.rows()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
