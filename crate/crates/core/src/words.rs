//! Reduced words in the free group on two generators `a`, `b`.
//!
//! Words are stored as syllable runs `(generator, exponent)`. Conjugacy
//! questions are answered on the expanded letter form: a word is
//! cyclically reduced, then rotated to its lexicographically least
//! rotation under the fixed letter order `a < a⁻¹ < b < b⁻¹`. Two words are
//! conjugate exactly when these canonical forms coincide.
//!
//! Text form: one character per letter, `a`, `A`, `b`, `B`, uppercase being
//! the inverse letter. The identity is the empty string.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    A,
    B,
}

impl Generator {
    fn letter_char(self, inverse: bool) -> char {
        match (self, inverse) {
            (Generator::A, false) => 'a',
            (Generator::A, true) => 'A',
            (Generator::B, false) => 'b',
            (Generator::B, true) => 'B',
        }
    }
}

/// A single letter `g` or `g⁻¹`.
///
/// The derived order compares generator first, then inverse flag, which is
/// exactly `a < A < b < B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: Generator, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn to_char(self) -> char {
        self.gen.letter_char(self.inverse)
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(Letter::new(Generator::A, false)),
            'A' => Some(Letter::new(Generator::A, true)),
            'b' => Some(Letter::new(Generator::B, false)),
            'B' => Some(Letter::new(Generator::B, true)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    gen: Generator,
    exp: i64,
}

impl Syllable {
    /// Returns `None` for a zero exponent.
    pub fn new(gen: Generator, exp: i64) -> Option<Self> {
        (exp != 0).then_some(Syllable { gen, exp })
    }

    pub fn gen(&self) -> Generator {
        self.gen
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }
}

/// A freely reduced element of F(a,b).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn a() -> Self {
        Word::power(Generator::A, 1)
    }

    pub fn b() -> Self {
        Word::power(Generator::B, 1)
    }

    pub fn power(gen: Generator, exp: i64) -> Self {
        Word {
            syllables: Syllable::new(gen, exp).into_iter().collect(),
        }
    }

    /// Freely reduces an arbitrary syllable list. Zero exponents are skipped.
    pub fn reduce<I: IntoIterator<Item = Syllable>>(raw: I) -> Self {
        let mut stack: Vec<Syllable> = Vec::new();
        for s in raw {
            if s.exp == 0 {
                continue;
            }
            match stack.last_mut() {
                Some(top) if top.gen == s.gen => {
                    top.exp += s.exp;
                    if top.exp == 0 {
                        stack.pop();
                    }
                }
                _ => stack.push(s),
            }
        }
        Word { syllables: stack }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Word::reduce(letters.into_iter().map(|l| Syllable {
            gen: l.gen,
            exp: if l.inverse { -1 } else { 1 },
        }))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.letter_len() as usize);
        for s in &self.syllables {
            let l = Letter::new(s.gen, s.exp < 0);
            out.extend(std::iter::repeat_n(l, s.exp.unsigned_abs() as usize));
        }
        out
    }

    pub fn multiply(&self, other: &Word) -> Word {
        Word::reduce(self.syllables.iter().chain(&other.syllables).copied())
    }

    pub fn invert(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    gen: s.gen,
                    exp: -s.exp,
                })
                .collect(),
        }
    }

    /// `g · self · g⁻¹`
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.multiply(self).multiply(&g.invert())
    }

    /// Strips inverse letter pairs from the two ends until the first and
    /// last letters are no longer mutually inverse. The result is conjugate
    /// to `self`.
    pub fn cyclic_reduce(&self) -> Word {
        let mut s = self.syllables.clone();
        while s.len() >= 2 {
            let (first, last) = (s[0], s[s.len() - 1]);
            if first.gen != last.gen || first.exp.signum() == last.exp.signum() {
                break;
            }
            let k = first.exp.abs().min(last.exp.abs());
            let n = s.len();
            s[0].exp -= k * first.exp.signum();
            s[n - 1].exp -= k * last.exp.signum();
            if s[n - 1].exp == 0 {
                s.pop();
            }
            if s[0].exp == 0 {
                s.remove(0);
            }
        }
        Word { syllables: s }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.syllables.first(), self.syllables.last()) {
            (Some(f), Some(l)) if self.syllables.len() >= 2 => {
                f.gen != l.gen || f.exp.signum() == l.exp.signum()
            }
            _ => true,
        }
    }

    pub fn canonical_class(&self) -> CyclicWord {
        CyclicWord::from_cyclically_reduced(self.cyclic_reduce().letters())
    }

    pub fn is_conjugate_to(&self, other: &Word) -> bool {
        self.canonical_class() == other.canonical_class()
    }

    pub fn abelianize(&self) -> AbelianImage {
        self.syllables
            .iter()
            .fold(AbelianImage::default(), |acc, s| match s.gen {
                Generator::A => AbelianImage {
                    exp_a: acc.exp_a + s.exp,
                    ..acc
                },
                Generator::B => AbelianImage {
                    exp_b: acc.exp_b + s.exp,
                    ..acc
                },
            })
    }

    /// The cyclic sequence of `b`-run lengths between consecutive `a`s, with
    /// the trailing entry recording the wrap-around from the last `a` back to
    /// the first. Only defined for positive words that start and end with `a`.
    pub fn b_block_sequence(&self) -> Result<Vec<u64>> {
        let shape_err = || Error::Shape(self.to_string());
        let s = &self.syllables;
        match (s.first(), s.last()) {
            (Some(f), Some(l)) if f.gen == Generator::A && l.gen == Generator::A => {}
            _ => return Err(shape_err()),
        }
        if s.iter().any(|x| x.exp < 0) {
            return Err(shape_err());
        }
        let mut seq = Vec::new();
        let mut pending_gap = None;
        for syl in s {
            match syl.gen {
                Generator::B => pending_gap = Some(syl.exp as u64),
                Generator::A => {
                    if let Some(gap) = pending_gap.take() {
                        seq.push(gap);
                    }
                    seq.extend(std::iter::repeat_n(0, syl.exp as usize - 1));
                }
            }
        }
        seq.push(0);
        Ok(seq)
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self.multiply(&rhs)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .enumerate()
            .map(|(i, c)| {
                Letter::from_char(c).ok_or_else(|| Error::Parse {
                    input: s.to_string(),
                    reason: format!("unexpected character {c:?} at position {i}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::from_letters(letters))
    }
}

/// Canonical representative of a conjugacy class in F(a,b): the least
/// rotation of a cyclically reduced letter sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    fn from_cyclically_reduced(mut letters: Vec<Letter>) -> Self {
        let k = least_rotation(&letters);
        letters.rotate_left(k);
        CyclicWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// A word in the class (the canonical rotation itself).
    pub fn representative(&self) -> Word {
        Word::from_letters(self.letters.iter().copied())
    }

    /// Cyclic `b`-run lengths following each `a`, read from the canonical
    /// rotation. Requires a positive cyclic word containing at least one `a`.
    pub fn b_block_cycle(&self) -> Result<Vec<u64>> {
        let shape_err = || Error::Shape(self.to_string());
        if self.letters.iter().any(|l| l.inverse) {
            return Err(shape_err());
        }
        let start = self
            .letters
            .iter()
            .position(|l| l.gen == Generator::A)
            .ok_or_else(shape_err)?;
        let mut seq = Vec::new();
        let mut run = None::<u64>;
        for i in 0..self.letters.len() {
            let l = self.letters[(start + i) % self.letters.len()];
            match l.gen {
                Generator::A => {
                    if let Some(r) = run.replace(0) {
                        seq.push(r);
                    }
                }
                Generator::B => *run.as_mut().expect("run starts at an a") += 1,
            }
        }
        seq.extend(run);
        Ok(seq)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for CyclicWord {
    type Err = Error;

    /// Accepts any word string and canonicalizes its class.
    fn from_str(s: &str) -> Result<Self> {
        Ok(s.parse::<Word>()?.canonical_class())
    }
}

/// Start index of the lexicographically least rotation. Quadratic; the
/// words built here have at most (2n+1) + n(2n+1) letters, 65 at n = 5.
fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let rot = |k: usize| s[k..].iter().chain(&s[..k]);
    (1..n).fold(0, |best, k| if rot(k).lt(rot(best)) { k } else { best })
}

/// Image in H_1 = Z[a] ⊕ Z[b].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianImage {
    pub exp_a: i64,
    pub exp_b: i64,
}

impl AbelianImage {
    pub const fn new(exp_a: i64, exp_b: i64) -> Self {
        AbelianImage { exp_a, exp_b }
    }

    pub fn is_zero(&self) -> bool {
        self.exp_a == 0 && self.exp_b == 0
    }
}

impl Add for AbelianImage {
    type Output = AbelianImage;

    fn add(self, rhs: AbelianImage) -> AbelianImage {
        AbelianImage::new(self.exp_a + rhs.exp_a, self.exp_b + rhs.exp_b)
    }
}
