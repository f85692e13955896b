//! A few fixed involutions used by tests, examples and the command line.

use std::collections::BTreeSet;

use crate::involution::{Flips, GeneralizedPermutation, LinearInvolution};
use crate::numeric::FieldElem;
use crate::word::{parse_letters, RWord, Substitution};

fn perm(top: &str, bottom: &str) -> GeneralizedPermutation {
    GeneralizedPermutation::new(parse_letters(top).unwrap(), parse_letters(bottom).unwrap()).unwrap()
}

fn fe(s: &str) -> FieldElem {
    s.parse().unwrap()
}

/// Top row `a b B`, bottom row `c C A`, lengths in `Q(√5)` and `|I| = 1`.
pub fn golden() -> LinearInvolution {
    LinearInvolution::build(
        perm("abB", "cCA"),
        vec![fe("sqrt5 - 2"), fe("(3 - sqrt5)/2"), fe("(3 - sqrt5)/2")],
        Flips::Coherent,
        Some(FieldElem::one()),
    )
    .unwrap()
}

/// The self-induction substitution of [`golden`]: `a ↦ cB, b ↦ c, c ↦ aB`.
pub fn golden_substitution() -> Substitution {
    Substitution::new(["cB", "c", "aB"].iter().map(|s| s.parse::<RWord>().unwrap()).collect())
}

/// Coherent nonorientable involution on four letters, rational lengths.
pub fn four_letter() -> LinearInvolution {
    LinearInvolution::build(
        perm("abAc", "CDBd"),
        vec![FieldElem::ratio(3, 20), FieldElem::ratio(3, 10), FieldElem::ratio(2, 5), FieldElem::ratio(3, 20)],
        Flips::Coherent,
        None,
    )
    .unwrap()
}

/// Same permutation as [`four_letter`] with `c` also flipped; `7/8` on the top
/// row is periodic of period 3.
pub fn noncoherent_periodic() -> LinearInvolution {
    LinearInvolution::build(
        perm("abAc", "CDBd"),
        vec![FieldElem::ratio(1, 4), FieldElem::ratio(1, 8), FieldElem::ratio(3, 8), FieldElem::ratio(1, 4)],
        Flips::Explicit(BTreeSet::from([0, 2, 3])),
        None,
    )
    .unwrap()
}

/// An interval exchange seen as an orientable involution; with `flip_a` the
/// letter `a` is flipped, which breaks coherence.
pub fn orientable_iet(flip_a: bool) -> LinearInvolution {
    let flips = if flip_a { Flips::Explicit(BTreeSet::from([0])) } else { Flips::Coherent };
    LinearInvolution::build(
        perm("abc", "CBA"),
        vec![FieldElem::ratio(1, 5), FieldElem::ratio(1, 3), FieldElem::ratio(7, 15)],
        flips,
        None,
    )
    .unwrap()
}
