//! Reduced words in the free group on `g, h`, their evaluation in a pair of
//! Möbius generators, and quasimorphism defects.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mobius::MobiusMap;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    G,
    GInv,
    H,
    HInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::G, Letter::GInv, Letter::H, Letter::HInv];

    pub fn inverse(self) -> Self {
        match self {
            Letter::G => Letter::GInv,
            Letter::GInv => Letter::G,
            Letter::H => Letter::HInv,
            Letter::HInv => Letter::H,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::G => 'g',
            Letter::GInv => 'G',
            Letter::H => 'h',
            Letter::HInv => 'H',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'g' => Letter::G,
            'G' => Letter::GInv,
            'h' => Letter::H,
            'H' => Letter::HInv,
            _ => return None,
        })
    }
}

/// A freely reduced word; capitals denote inverses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// The reduced form of `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let common = self
            .0
            .iter()
            .rev()
            .zip(&other.0)
            .take_while(|(a, b)| a.inverse() == **b)
            .count();
        let mut out = self.0[..self.len() - common].to_vec();
        out.extend_from_slice(&other.0[common..]);
        Self(out)
    }

    /// Exponent sum of a generator (`Letter::G` or `Letter::H`); a
    /// homomorphism to ℤ.
    pub fn exponent_sum(&self, generator: Letter) -> i64 {
        self.0
            .iter()
            .map(|&l| {
                if l == generator {
                    1
                } else if l == generator.inverse() {
                    -1
                } else {
                    0
                }
            })
            .sum()
    }

    /// Number of possibly overlapping occurrences of `w` as a subword.
    pub fn occurrences(&self, w: &GroupWord) -> usize {
        if w.is_empty() || w.len() > self.len() {
            return 0;
        }
        self.0.windows(w.len()).filter(|s| *s == w.letters()).count()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Accepts `"e"` or the empty string for the identity; reduces freely.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" {
            return Ok(Self::identity());
        }
        let letters = s
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse(format!("bad letter {c:?} in word {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::reduce(letters))
    }
}

/// All reduced words of length at most `max_len`, by length and then in the
/// letter order `g, G, h, H`.
pub fn enumerate_reduced(max_len: usize) -> Vec<GroupWord> {
    let mut all = vec![GroupWord::identity()];
    let mut layer = vec![GroupWord::identity()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for w in &layer {
            for l in Letter::ALL {
                if w.0.last() != Some(&l.inverse()) {
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(GroupWord(v));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Brooks counting function: occurrences of `w` in `x` minus occurrences of
/// `w⁻¹`.
pub fn brooks_counting(w: &GroupWord, x: &GroupWord) -> i64 {
    x.occurrences(w) as i64 - x.occurrences(&w.inverse()) as i64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    pub defect: Rational,
    /// First pair in enumeration order attaining the defect, if nonzero.
    pub witness: Option<(GroupWord, GroupWord)>,
    pub pairs: usize,
}

/// `max |q(w₁) + q(w₂) − q(w₁w₂)|` over reduced words of length at most
/// `max_len`.
pub fn quasimorphism_defect(q: impl Fn(&GroupWord) -> Rational + Sync, max_len: usize) -> DefectReport {
    let words = enumerate_reduced(max_len);
    let values: Vec<Rational> = words.par_iter().map(&q).collect();
    let best = (0..words.len())
        .into_par_iter()
        .map(|i| {
            let mut best: Option<(Rational, usize, usize)> = None;
            for j in 0..words.len() {
                let d = (&values[i] + &values[j] - q(&words[i].mul(&words[j]))).abs();
                if best.as_ref().is_none_or(|(b, _, _)| d > *b) {
                    best = Some((d, i, j));
                }
            }
            best.expect("identity is always present")
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) { b } else { a })
        .expect("nonempty");
    let (defect, i, j) = best;
    DefectReport {
        witness: (!defect.is_zero()).then(|| (words[i].clone(), words[j].clone())),
        defect,
        pairs: words.len() * words.len(),
    }
}

/// Two Möbius maps standing for the letters `g` and `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    pub g: MobiusMap,
    pub h: MobiusMap,
}

impl Generators {
    /// `g = (2 0; 0 1)` with fixed points `0, ∞` and `h = s g s⁻¹` with
    /// `s = (1 1; −1 1)`, i.e. `h = (3 −1; −1 3)` with fixed points `±1`.
    /// Their squares play ping-pong, and the pair itself generates a free
    /// group on which the orbits of generic points are injective.
    pub fn ping_pong() -> Self {
        let g = MobiusMap::from_ints(2, 0, 0, 1).expect("det 2");
        let s = MobiusMap::from_ints(1, 1, -1, 1).expect("det 2");
        let h = s.compose(&g).compose(&s.inverse());
        Self { g, h }
    }

    pub fn letter(&self, l: Letter) -> MobiusMap {
        match l {
            Letter::G => self.g.clone(),
            Letter::GInv => self.g.inverse(),
            Letter::H => self.h.clone(),
            Letter::HInv => self.h.inverse(),
        }
    }

    /// The product of the letter matrices, left to right.
    pub fn evaluate(&self, w: &GroupWord) -> MobiusMap {
        w.letters()
            .iter()
            .fold(MobiusMap::identity(), |acc, &l| acc.compose(&self.letter(l)))
    }

    /// Evaluates many words, reusing the value of each word's longest proper
    /// prefix.
    pub fn evaluate_all(&self, words: &[GroupWord]) -> Vec<MobiusMap> {
        let letters: HashMap<Letter, MobiusMap> = Letter::ALL.iter().map(|&l| (l, self.letter(l))).collect();
        let mut cache: HashMap<GroupWord, MobiusMap> = HashMap::new();
        cache.insert(GroupWord::identity(), MobiusMap::identity());
        let mut sorted: Vec<&GroupWord> = words.iter().collect();
        sorted.sort_by_key(|w| w.len());
        for w in sorted {
            for k in 1..=w.len() {
                let prefix = GroupWord(w.0[..k].to_vec());
                if cache.contains_key(&prefix) {
                    continue;
                }
                let parent = &cache[&GroupWord(w.0[..k - 1].to_vec())];
                let value = parent.compose(&letters[&w.0[k - 1]]);
                cache.insert(prefix, value);
            }
        }
        words.iter().map(|w| cache[w].clone()).collect()
    }
}
