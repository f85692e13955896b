//! Letters of `A ∪ A⁻¹` and reduced words over them.
//!
//! Text syntax: lowercase is a positive letter, uppercase its inverse
//! (`bAc` is `b a⁻¹ c`), and the empty word prints as `1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest alphabet the letter syntax can spell.
pub const MAX_ALPHABET: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid letter {0:?}")]
    InvalidLetter(char),
    #[error("word {0:?} is not reduced")]
    NotReduced(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedLetter {
    pub base: u8,
    pub positive: bool,
}

impl SignedLetter {
    pub const fn pos(base: u8) -> Self {
        SignedLetter { base, positive: true }
    }

    pub const fn neg(base: u8) -> Self {
        SignedLetter { base, positive: false }
    }

    pub fn inverse(self) -> Self {
        SignedLetter { base: self.base, positive: !self.positive }
    }

    /// Index in `0..2k`: positives first, then inverses.
    pub fn index(self, k: usize) -> usize {
        if self.positive {
            self.base as usize
        } else {
            k + self.base as usize
        }
    }

    pub fn from_index(i: usize, k: usize) -> Self {
        if i < k {
            Self::pos(i as u8)
        } else {
            Self::neg((i - k) as u8)
        }
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + self.base) as char;
        if self.positive {
            c
        } else {
            c.to_ascii_uppercase()
        }
    }

    pub fn from_char(c: char) -> Result<Self, WordError> {
        match c {
            'a'..='z' => Ok(Self::pos(c as u8 - b'a')),
            'A'..='Z' => Ok(Self::neg(c as u8 - b'A')),
            _ => Err(WordError::InvalidLetter(c)),
        }
    }

    /// All `2k` signed letters in canonical order.
    pub fn all(k: usize) -> impl Iterator<Item = SignedLetter> {
        (0..2 * k).map(move |i| Self::from_index(i, k))
    }
}

/// Positive letters first, each block in alphabet order.
impl Ord for SignedLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        (!self.positive, self.base).cmp(&(!other.positive, other.base))
    }
}

impl PartialOrd for SignedLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl fmt::Debug for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Parses letters without reducing; `1` and the empty string are ε.
pub fn parse_letters(s: &str) -> Result<Vec<SignedLetter>, WordError> {
    let s = s.trim();
    if s == "1" || s == "ε" {
        return Ok(Vec::new());
    }
    s.chars().map(SignedLetter::from_char).collect()
}

/// A freely reduced word. Ordered shortlex.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RWord(Vec<SignedLetter>);

impl RWord {
    pub fn empty() -> Self {
        RWord(Vec::new())
    }

    pub fn letter(x: SignedLetter) -> Self {
        RWord(vec![x])
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = SignedLetter>>(letters: I) -> Self {
        let mut out: Vec<SignedLetter> = Vec::new();
        for x in letters {
            if out.last() == Some(&x.inverse()) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        RWord(out)
    }

    /// Wraps letters that must already be reduced.
    pub fn from_reduced(letters: Vec<SignedLetter>) -> Result<Self, WordError> {
        if letters.windows(2).any(|p| p[0] == p[1].inverse()) {
            let s: String = letters.iter().map(|x| x.to_char()).collect();
            return Err(WordError::NotReduced(s));
        }
        Ok(RWord(letters))
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<SignedLetter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<SignedLetter> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> Self {
        RWord(self.0.iter().rev().map(|x| x.inverse()).collect())
    }

    pub fn concat_reduce(&self, other: &RWord) -> Self {
        RWord::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Appends `x` when the result stays reduced.
    pub fn extended(&self, x: SignedLetter) -> Option<Self> {
        if self.last() == Some(x.inverse()) {
            return None;
        }
        let mut v = self.0.clone();
        v.push(x);
        Some(RWord(v))
    }

    pub fn starts_with(&self, p: &RWord) -> bool {
        self.0.starts_with(&p.0)
    }

    pub fn ends_with(&self, s: &RWord) -> bool {
        self.0.ends_with(&s.0)
    }

    pub fn strip_prefix(&self, p: &RWord) -> Option<Self> {
        self.0.strip_prefix(p.0.as_slice()).map(|r| RWord(r.to_vec()))
    }

    pub fn strip_suffix(&self, s: &RWord) -> Option<Self> {
        self.0.strip_suffix(s.0.as_slice()).map(|r| RWord(r.to_vec()))
    }

    /// Start positions of every occurrence of `f` as a factor.
    pub fn occurrences(&self, f: &RWord) -> Vec<usize> {
        if f.is_empty() || f.len() > self.len() {
            return Vec::new();
        }
        self.0
            .windows(f.len())
            .enumerate()
            .filter(|(_, w)| *w == f.0.as_slice())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn contains_factor(&self, f: &RWord) -> bool {
        f.is_empty() || !self.occurrences(f).is_empty()
    }

    pub fn slice(&self, from: usize, to: usize) -> Self {
        RWord(self.0[from..to].to_vec())
    }

    pub fn prefix(&self, n: usize) -> Self {
        self.slice(0, n)
    }

    pub fn suffix(&self, n: usize) -> Self {
        self.slice(self.len() - n, self.len())
    }

    /// All factors of length exactly `n`.
    pub fn factors(&self, n: usize) -> impl Iterator<Item = RWord> + '_ {
        let count = if n <= self.len() { self.len() - n + 1 } else { 0 };
        (0..count).map(move |i| self.slice(i, i + n))
    }

    /// Largest letter base used, plus one.
    pub fn alphabet_bound(&self) -> usize {
        self.0.iter().map(|x| x.base as usize + 1).max().unwrap_or(0)
    }
}

impl Ord for RWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for RWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for x in &self.0 {
            write!(f, "{}", x.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for RWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Strict parse: the text must already be reduced.
impl FromStr for RWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RWord::from_reduced(parse_letters(s)?)
    }
}

/// Shorthand used throughout tests: panics on bad input.
pub fn w(s: &str) -> RWord {
    s.parse().unwrap_or_else(|e| panic!("bad word {s:?}: {e}"))
}

/// A free-group endomorphism given by the images of the positive letters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Substitution {
    images: Vec<RWord>,
}

impl Substitution {
    pub fn new(images: Vec<RWord>) -> Self {
        Substitution { images }
    }

    pub fn identity(k: usize) -> Self {
        Substitution::new((0..k).map(|i| RWord::letter(SignedLetter::pos(i as u8))).collect())
    }

    /// Letter permutation `x ↦ map(x)`, extended to inverses.
    pub fn from_letter_map(map: &[SignedLetter]) -> Self {
        Substitution::new(map.iter().map(|&x| RWord::letter(x)).collect())
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, x: SignedLetter) -> RWord {
        let img = &self.images[x.base as usize];
        if x.positive {
            img.clone()
        } else {
            img.inverse()
        }
    }

    pub fn images(&self) -> &[RWord] {
        &self.images
    }

    pub fn apply(&self, word: &RWord) -> RWord {
        RWord::reduce(word.letters().iter().flat_map(|&x| self.image(x).0))
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Substitution) -> Substitution {
        Substitution::new(inner.images.iter().map(|img| self.apply(img)).collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} -> {}", SignedLetter::pos(i as u8), img)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_order_puts_inverses_last() {
        let mut v: Vec<SignedLetter> = "CaBbcA".chars().map(|c| SignedLetter::from_char(c).unwrap()).collect();
        v.sort();
        let s: String = v.iter().map(|x| x.to_char()).collect();
        assert_eq!(s, "abcABC");
    }

    #[test]
    fn shortlex() {
        let mut v = vec![w("B"), w("ab"), w("a"), w("1"), w("Ba"), w("aB")];
        v.sort();
        assert_eq!(format!("{v:?}"), "[1, a, B, ab, aB, Ba]");
    }

    #[test]
    fn parse_and_reduce() {
        assert!("abB".parse::<RWord>().is_err());
        assert_eq!(RWord::reduce(parse_letters("abB").unwrap()), w("a"));
        assert_eq!(w("bAc").inverse(), w("CaB"));
        assert!(w("bAc").concat_reduce(&w("CaB")).is_empty());
        assert_eq!(w("1").to_string(), "1");
        assert!(matches!("a?".parse::<RWord>(), Err(WordError::InvalidLetter('?'))));
    }

    #[test]
    fn occurrences_and_affixes() {
        let u = w("abab");
        assert_eq!(u.occurrences(&w("ab")), vec![0, 2]);
        assert_eq!(u.strip_prefix(&w("ab")), Some(w("ab")));
        assert_eq!(u.strip_suffix(&w("b")), Some(w("aba")));
        assert_eq!(u.factors(3).collect::<Vec<_>>(), vec![w("aba"), w("bab")]);
        assert_eq!(w("ab").extended(SignedLetter::neg(1)), None);
    }

    #[test]
    fn substitution_compose() {
        // τ' : a ↦ aB, τ'' : b ↦ bC ; (τ'∘τ'')(b) = bC
        let t1 = Substitution::new(vec![w("aB"), w("b"), w("c")]);
        let t2 = Substitution::new(vec![w("a"), w("bC"), w("c")]);
        let t = t1.compose(&t2);
        assert_eq!(t.images(), &[w("aB"), w("bC"), w("c")]);
        assert_eq!(t.apply(&w("Cb")), w("CbC"));
        assert_eq!(t1.apply(&w("ba")), w("baB"));
    }
}
