//! Formal integer combinations of conjugacy classes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::words::{CyclicWord, Word};

/// A finite Z-linear combination of classes. Zero coefficients are never
/// stored, so two chains are equal iff their term maps are equal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Chain {
    terms: BTreeMap<CyclicWord, BigInt>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain::default()
    }

    /// `coeff · |w|`
    pub fn term(w: &Word, coeff: impl Into<BigInt>) -> Self {
        let mut c = Chain::zero();
        c.add_term(w.canonical_class(), coeff.into());
        c
    }

    pub fn add_term(&mut self, class: CyclicWord, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(class) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_word(&mut self, w: &Word, coeff: impl Into<BigInt>) {
        self.add_term(w.canonical_class(), coeff.into());
    }

    /// Removes a class entirely, returning its coefficient.
    pub fn remove_term(&mut self, class: &CyclicWord) -> Option<BigInt> {
        self.terms.remove(class)
    }

    pub fn coefficient(&self, class: &CyclicWord) -> BigInt {
        self.terms.get(class).cloned().unwrap_or_default()
    }

    pub fn merge(self, other: Chain) -> Chain {
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (k, v) in small.terms {
            big.add_term(k, v);
        }
        big
    }

    pub fn scale(&self, k: &BigInt) -> Chain {
        if k.is_zero() {
            return Chain::zero();
        }
        Chain {
            terms: self.terms.iter().map(|(c, v)| (c.clone(), v * k)).collect(),
        }
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical class order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&CyclicWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn last_class(&self) -> Option<&CyclicWord> {
        self.terms.keys().next_back()
    }

    /// Number of coefficients equal to +1 and to −1 respectively.
    pub fn unit_sign_counts(&self) -> (usize, usize) {
        let one = BigInt::one();
        let pos = self.terms.values().filter(|v| **v == one).count();
        let neg = self
            .terms
            .values()
            .filter(|v| v.is_negative() && v.abs() == one)
            .count();
        (pos, neg)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut terms = self
            .terms
            .iter()
            .map(|(class, coeff)| {
                Ok(TermJson {
                    coeff: RawValue::from_string(coeff.to_string())?,
                    class: class.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        terms.sort_by(|x, y| x.class.cmp(&y.class));
        Ok(serde_json::to_string(&ChainJson {
            ring: "Z".to_string(),
            terms,
        })?)
    }

    /// Parses the chain JSON format. Classes are re-canonicalized and equal
    /// classes merged, so any word string is accepted.
    pub fn from_json(s: &str) -> Result<Chain> {
        let doc: ChainJson = serde_json::from_str(s)?;
        if doc.ring != "Z" {
            return Err(Error::Parse {
                input: doc.ring,
                reason: "only the ring \"Z\" is supported".into(),
            });
        }
        let mut chain = Chain::zero();
        for t in doc.terms {
            let coeff: BigInt = t.coeff.get().parse().map_err(|_| Error::Parse {
                input: t.coeff.get().to_string(),
                reason: "coefficient is not an integer".into(),
            })?;
            chain.add_term(t.class.parse()?, coeff);
        }
        Ok(chain)
    }
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
    ring: String,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: Box<RawValue>,
    class: String,
}

impl Add for Chain {
    type Output = Chain;

    fn add(self, rhs: Chain) -> Chain {
        self.merge(rhs)
    }
}

impl Add for &Chain {
    type Output = Chain;

    fn add(self, rhs: &Chain) -> Chain {
        self.clone().merge(rhs.clone())
    }
}

impl Neg for &Chain {
    type Output = Chain;

    fn neg(self) -> Chain {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (class, coeff)) in self.terms.iter().enumerate() {
            match (i, coeff.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = coeff.abs();
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "|{class}|")?;
        }
        Ok(())
    }
}
