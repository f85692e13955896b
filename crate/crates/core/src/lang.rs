//! The natural coding `L(T)` up to a length bound, and its combinatorics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::involution::{Cylinder, LinearInvolution, Pt, Result};
use crate::word::{RWord, SignedLetter};

/// Every word of `L(T)` of length at most `max_len`, in shortlex order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LanguageSlice {
    max_len: usize,
    words: BTreeSet<RWord>,
    source: String,
}

impl LanguageSlice {
    /// A slice from an explicit word set, e.g. factors of a substitutive word.
    pub fn from_words(max_len: usize, words: BTreeSet<RWord>, source: impl Into<String>) -> Self {
        LanguageSlice { max_len, words, source: source.into() }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn words(&self) -> &BTreeSet<RWord> {
        &self.words
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn contains(&self, w: &RWord) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn of_length(&self, n: usize) -> impl Iterator<Item = &RWord> {
        self.words.iter().filter(move |w| w.len() == n)
    }
}

/// Short description of an involution, stored with derived slices.
pub fn fingerprint(t: &LinearInvolution) -> String {
    let lengths: Vec<String> = t.lengths().iter().map(|l| l.to_string()).collect();
    let flips: String = t.flips().iter().map(|&b| SignedLetter::pos(b).to_char()).collect();
    format!("{} | {} | flips {{{}}}", t.perm(), lengths.join(", "), flips)
}

/// `L(T) ∩ A^{≤n}` by refining the cylinders `I_w`.
pub fn language(t: &LinearInvolution, n: usize) -> LanguageSlice {
    let mut words = BTreeSet::from([RWord::empty()]);
    let mut level: Vec<(RWord, Cylinder)> = if n == 0 {
        Vec::new()
    } else {
        SignedLetter::all(t.k()).map(|x| (RWord::letter(x), Cylinder::letter(t, x))).collect()
    };
    for len in 1..=n {
        words.extend(level.iter().map(|(w, _)| w.clone()));
        if len == n {
            break;
        }
        level = level
            .iter()
            .flat_map(|(w, c)| {
                SignedLetter::all(t.k()).filter_map(move |x| Some((w.extended(x)?, c.extend(t, x)?)))
            })
            .collect();
    }
    LanguageSlice { max_len: n, words, source: fingerprint(t) }
}

/// The first `n` letters of the natural coding of `z`.
pub fn coding_of_point(t: &LinearInvolution, z: &Pt, n: usize) -> Result<RWord> {
    let mut letters = Vec::with_capacity(n);
    let mut p = z.clone();
    for i in 0..n {
        letters.push(t.locate(&p)?);
        if i + 1 < n {
            p = t.apply(&p)?;
        }
    }
    Ok(RWord::from_reduced(letters).expect("natural codings are reduced"))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Even iff `w` has an even number of odd letters.
pub fn parity(t: &LinearInvolution, w: &RWord) -> Parity {
    let odd = w.letters().iter().filter(|&&x| !t.is_even_letter(x)).count();
    if odd % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LaminaryReport {
    pub reduced: bool,
    pub symmetric: bool,
    pub factorial: bool,
}

impl LaminaryReport {
    pub fn is_laminary(&self) -> bool {
        self.reduced && self.symmetric && self.factorial
    }
}

pub fn check_laminary(l: &LanguageSlice) -> LaminaryReport {
    let reduced = l.words.iter().all(|w| w.letters().windows(2).all(|p| p[1] != p[0].inverse()));
    let symmetric = l.words.iter().all(|w| l.contains(&w.inverse()));
    let factorial = l.contains(&RWord::empty())
        && l.words.iter().filter(|w| !w.is_empty()).all(|w| {
            let n = w.len();
            l.contains(&w.prefix(n - 1)) && l.contains(&w.suffix(n - 1))
        });
    LaminaryReport { reduced, symmetric, factorial }
}

/// Splits an orientable slice into `(S₊, S₋)`, or `None` when nonorientable.
///
/// Letters are 2-coloured: `x` and `x⁻¹` get distinct colours, the two letters
/// of every member of length 2 get the same colour. `S₊` is the side holding
/// the letter `a`.
pub fn check_orientable(l: &LanguageSlice) -> Option<(BTreeSet<RWord>, BTreeSet<RWord>)> {
    let k = l.words.iter().map(|w| w.alphabet_bound()).max().unwrap_or(0);
    if k == 0 {
        return Some((l.words.clone(), l.words.clone()));
    }
    // edges carry 0 for "same colour", 1 for "different colour"
    let mut adj: BTreeMap<usize, Vec<(usize, u8)>> = BTreeMap::new();
    let mut link = |x: SignedLetter, y: SignedLetter, d: u8| {
        adj.entry(x.index(k)).or_default().push((y.index(k), d));
        adj.entry(y.index(k)).or_default().push((x.index(k), d));
    };
    for x in SignedLetter::all(k) {
        if x.positive {
            link(x, x.inverse(), 1);
        }
    }
    for w in l.of_length(2) {
        link(w.letters()[0], w.letters()[1], 0);
    }
    let mut colour: Vec<Option<u8>> = vec![None; 2 * k];
    for start in 0..2 * k {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(0);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let c = colour[v].expect("coloured before push");
            for &(u, d) in adj.get(&v).into_iter().flatten() {
                match colour[u] {
                    None => {
                        colour[u] = Some(c ^ d);
                        stack.push(u);
                    }
                    Some(cu) if cu != c ^ d => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let plus = colour[SignedLetter::pos(0).index(k)];
    let side = |want_plus: bool| -> BTreeSet<RWord> {
        l.words
            .iter()
            .filter(|w| w.letters().iter().all(|x| (colour[x.index(k)] == plus) == want_plus))
            .cloned()
            .collect()
    };
    let (sp, sm) = (side(true), side(false));
    let covered = l.words.iter().all(|w| sp.contains(w) || sm.contains(w));
    covered.then_some((sp, sm))
}

/// Least `n` such that every member of length `n` contains `u` (or `u⁻¹` when
/// the slice is orientable). `None` means "not witnessed within the slice".
pub fn check_recurrence(l: &LanguageSlice, u: &RWord) -> Option<usize> {
    let orientable = check_orientable(l).is_some();
    let inv = u.inverse();
    (u.len().max(1)..=l.max_len).find(|&n| {
        let mut any = false;
        let all = l.of_length(n).all(|w| {
            any = true;
            w.contains_factor(u) || (orientable && w.contains_factor(&inv))
        });
        any && all
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::numeric::FieldElem;
    use crate::word::w;

    /// Factors of `f^∞` and their inverses, up to length `n`.
    fn substitution_oracle(n: usize) -> BTreeSet<RWord> {
        let f = catalog::golden_substitution();
        let f2 = f.compose(&f);
        let mut u = w("a");
        while u.len() < 20_000 {
            u = f2.apply(&u);
        }
        let mut out = BTreeSet::from([RWord::empty()]);
        for m in 1..=n {
            for v in u.factors(m) {
                out.insert(v.inverse());
                out.insert(v);
            }
        }
        out
    }

    #[test]
    fn golden_short_words() {
        let l = language(&catalog::golden(), 2);
        for s in ["aB", "cB", "BC", "bA", "bC", "cb"] {
            assert!(l.contains(&w(s)), "{s}");
        }
        assert!(!l.contains(&w("aa")));
        assert!(!l.contains(&w("bc")));
        assert_eq!(language(&catalog::golden(), 0).words(), &BTreeSet::from([RWord::empty()]));
    }

    #[test]
    fn golden_language_is_substitutive() {
        let l = language(&catalog::golden(), 8);
        assert_eq!(l.words(), &substitution_oracle(8));
    }

    #[test]
    fn codings() {
        let t = catalog::golden();
        let ia = t.interval(SignedLetter::pos(0));
        assert_eq!(coding_of_point(&t, &ia.midpoint(), 2).unwrap(), w("aB"));
        assert_eq!(coding_of_point(&t, &ia.midpoint(), 0).unwrap(), RWord::empty());
        let ic = t.interval(SignedLetter::pos(2));
        let z = ic.midpoint();
        let second = t.locate(&t.apply(&z).unwrap()).unwrap();
        assert_eq!(coding_of_point(&t, &z, 2).unwrap().letters(), &[SignedLetter::pos(2), second]);
        let l = language(&t, 10);
        for num in 1..40 {
            let z = Pt::new(FieldElem::ratio(num, 41), (num % 2) as u8);
            if let Ok(c) = coding_of_point(&t, &z, 10) {
                assert!(l.contains(&c), "{c}");
            }
        }
    }

    #[test]
    fn golden_parities() {
        let t = catalog::golden();
        assert_eq!(parity(&t, &w("a")), Parity::Even);
        assert_eq!(parity(&t, &w("b")), Parity::Odd);
        assert_eq!(parity(&t, &w("c")), Parity::Odd);
        assert_eq!(parity(&t, &RWord::empty()), Parity::Even);
        assert_eq!(parity(&t, &w("bAc")), Parity::Even);
    }

    #[test]
    fn golden_slice_is_laminary_and_nonorientable() {
        let l = language(&catalog::golden(), 8);
        assert!(check_laminary(&l).is_laminary());
        assert!(check_orientable(&l).is_none());
        let l = language(&catalog::golden(), 14);
        let n = check_recurrence(&l, &w("a")).unwrap();
        println!("a recurs within {n}");
    }

    #[test]
    fn orientable_split() {
        let t = catalog::orientable_iet(false);
        let l = language(&t, 6);
        assert!(check_laminary(&l).is_laminary());
        let (plus, minus) = check_orientable(&l).unwrap();
        assert!(plus.iter().all(|w| w.letters().iter().all(|x| x.positive)));
        assert!(minus.iter().all(|w| w.letters().iter().all(|x| !x.positive)));
        assert!(plus.iter().all(|w| minus.contains(&w.inverse())));
    }

    #[test]
    fn broken_slices_are_reported() {
        let words: BTreeSet<RWord> = [RWord::empty(), w("a"), w("ab"), w("A"), w("BA")].into_iter().collect();
        let l = LanguageSlice::from_words(2, words, "hand");
        let r = check_laminary(&l);
        assert!(r.symmetric && r.reduced && !r.factorial);
        let words: BTreeSet<RWord> = [RWord::empty(), w("a")].into_iter().collect();
        assert!(!check_laminary(&LanguageSlice::from_words(1, words, "hand")).symmetric);
    }
}
