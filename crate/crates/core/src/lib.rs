//! Exact linear involutions and the combinatorics of their natural codings.
//!
//! Numbers live in a real quadratic field `Q(√d)`, so every comparison is exact.
//! On top of that sit reduced words, the involution `T` itself with first-return
//! and Rauzy induction, the language `L(T)`, the families of return words, and
//! Stallings foldings for deciding which sets of words form bases of subgroups
//! of the free group.

pub mod catalog;
pub mod fgroup;
pub mod induce;
pub mod involution;
pub mod lang;
pub mod numeric;
pub mod returns;
pub mod word;

pub use involution::{
    Coherence, Connection, Flips, GeneralizedPermutation, InvolutionError, LabeledInterval, LinearInvolution,
    Orientation, Pt,
};
pub use numeric::{FieldElem, NumericError};
pub use word::{RWord, SignedLetter, Substitution, WordError};
