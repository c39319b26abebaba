//! Exact scalar rings: arbitrary-precision rationals and prime fields.
//!
//! Arithmetic takes an explicit context (`()` for rationals, the modulus for
//! prime fields) so that field elements stay a bare `u64`. Matrices carry the
//! context and check that operands agree on it.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Mersenne prime 2^61 − 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

pub trait Scalar:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    type Ctx: Copy + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn from_i64(ctx: Self::Ctx, v: i64) -> Self;
    fn from_bigint(ctx: Self::Ctx, v: &BigInt) -> Self;

    fn add(&self, rhs: &Self, ctx: Self::Ctx) -> Self;
    fn sub(&self, rhs: &Self, ctx: Self::Ctx) -> Self;
    fn mul(&self, rhs: &Self, ctx: Self::Ctx) -> Self;
    fn neg(&self, ctx: Self::Ctx) -> Self;
    /// `None` for zero.
    fn inv(&self, ctx: Self::Ctx) -> Option<Self>;
    fn is_zero(&self) -> bool;

    /// `Σ xᵢ·yᵢ`. Implementations may delay reduction.
    fn dot<'a, I>(ctx: Self::Ctx, pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)>,
    {
        pairs.fold(Self::zero(ctx), |acc, (x, y)| acc.add(&x.mul(y, ctx), ctx))
    }

    /// Draws one entry for a random matrix: a uniform integer in
    /// `[-bound, bound]` for rationals, a uniform residue for prime fields.
    fn sample<R: Rng + ?Sized>(ctx: Self::Ctx, rng: &mut R, bound: u64) -> Self;

    /// Checks that `bound` is usable with this context.
    fn check_bound(_ctx: Self::Ctx, _bound: u64) -> Result<()> {
        Ok(())
    }

    fn kind(ctx: Self::Ctx) -> ScalarKind;
}

/// Which ring a computation runs over, as selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Rational,
    #[serde(rename = "modp")]
    ModP,
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarKind::Rational => "rational",
            ScalarKind::ModP => "modp",
        })
    }
}

impl std::str::FromStr for ScalarKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(ScalarKind::Rational),
            "modp" => Ok(ScalarKind::ModP),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected \"rational\" or \"modp\"".into(),
            }),
        }
    }
}

pub type Rational = BigRational;

impl Scalar for BigRational {
    type Ctx = ();

    fn zero(_: ()) -> Self {
        <BigRational as Zero>::zero()
    }

    fn one(_: ()) -> Self {
        <BigRational as One>::one()
    }

    fn from_i64(_: (), v: i64) -> Self {
        BigRational::from_integer(v.into())
    }

    fn from_bigint(_: (), v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn add(&self, rhs: &Self, _: ()) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self, _: ()) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self, _: ()) -> Self {
        self * rhs
    }

    fn neg(&self, _: ()) -> Self {
        -self
    }

    fn inv(&self, _: ()) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn dot<'a, I>(_: (), pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)>,
    {
        // Integer entries are the common case; skip gcd work until the end.
        let mut int_acc = BigInt::zero();
        let mut acc = <BigRational as Zero>::zero();
        for (x, y) in pairs {
            if x.is_integer() && y.is_integer() {
                int_acc += x.numer() * y.numer();
            } else {
                acc += x * y;
            }
        }
        acc + BigRational::from_integer(int_acc)
    }

    fn sample<R: Rng + ?Sized>(_: (), rng: &mut R, bound: u64) -> Self {
        let b = bound as i128;
        BigRational::from_integer(BigInt::from(rng.gen_range(-b..=b)))
    }

    fn kind(_: ()) -> ScalarKind {
        ScalarKind::Rational
    }
}

/// An odd prime below 2^63, so that sums of two residues fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: u64,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..1 << 63).contains(&p) || !primal_check::miller_rabin(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeModulus { p })
    }

    pub fn mersenne61() -> Self {
        PrimeModulus { p: MERSENNE_61 }
    }

    pub fn value(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce_wide(&self, x: u128) -> u64 {
        if self.p == MERSENNE_61 {
            let lo = (x as u64) & MERSENNE_61;
            let hi = (x >> 61) as u64;
            // lo + hi < 2^62 since x < 2^122
            let r = lo + hi;
            let r = (r & MERSENNE_61) + (r >> 61);
            if r >= MERSENNE_61 {
                r - MERSENNE_61
            } else {
                r
            }
        } else {
            (x % self.p as u128) as u64
        }
    }

    pub fn element(&self, v: i128) -> Fp {
        Fp(v.rem_euclid(self.p as i128) as u64)
    }
}

impl Default for PrimeModulus {
    fn default() -> Self {
        PrimeModulus::mersenne61()
    }
}

/// A residue in `[0, p)`; the modulus lives in the surrounding context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp(u64);

impl Fp {
    pub fn residue(&self) -> u64 {
        self.0
    }

    pub fn new(v: u64, ctx: PrimeModulus) -> Fp {
        Fp(v % ctx.p)
    }

    fn pow(self, mut e: u64, ctx: PrimeModulus) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            base = base.mul(&base, ctx);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Fp {
    type Ctx = PrimeModulus;

    fn zero(_: PrimeModulus) -> Self {
        Fp(0)
    }

    fn one(_: PrimeModulus) -> Self {
        Fp(1)
    }

    fn from_i64(ctx: PrimeModulus, v: i64) -> Self {
        ctx.element(v as i128)
    }

    fn from_bigint(ctx: PrimeModulus, v: &BigInt) -> Self {
        let p = BigInt::from(ctx.p);
        let r = ((v % &p) + &p) % &p;
        let (_, digits) = r.to_u64_digits();
        Fp(digits.first().copied().unwrap_or(0))
    }

    #[inline]
    fn add(&self, rhs: &Self, ctx: PrimeModulus) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= ctx.p { s - ctx.p } else { s })
    }

    #[inline]
    fn sub(&self, rhs: &Self, ctx: PrimeModulus) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + ctx.p - rhs.0
        })
    }

    #[inline]
    fn mul(&self, rhs: &Self, ctx: PrimeModulus) -> Self {
        Fp(ctx.reduce_wide(self.0 as u128 * rhs.0 as u128))
    }

    fn neg(&self, ctx: PrimeModulus) -> Self {
        Fp(if self.0 == 0 { 0 } else { ctx.p - self.0 })
    }

    fn inv(&self, ctx: PrimeModulus) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(ctx.p - 2, ctx))
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    #[inline]
    fn dot<'a, I>(ctx: PrimeModulus, pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)>,
    {
        // Each product is < 2^126; reduce every 3 terms to stay in u128.
        let mut acc: u128 = 0;
        for (i, (x, y)) in pairs.enumerate() {
            acc += x.0 as u128 * y.0 as u128;
            if i % 3 == 2 {
                acc = ctx.reduce_wide(acc) as u128;
            }
        }
        Fp(ctx.reduce_wide(acc))
    }

    fn sample<R: Rng + ?Sized>(ctx: PrimeModulus, rng: &mut R, _bound: u64) -> Self {
        Fp(rng.gen_range(0..ctx.p))
    }

    fn check_bound(ctx: PrimeModulus, bound: u64) -> Result<()> {
        if (ctx.p as u128) <= 2 * bound as u128 {
            return Err(Error::Domain(format!(
                "prime {} must exceed twice the entry bound {bound}",
                ctx.p
            )));
        }
        Ok(())
    }

    fn kind(_: PrimeModulus) -> ScalarKind {
        ScalarKind::ModP
    }
}
