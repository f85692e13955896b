//! Return words and prime words, each computed twice: once from first-return
//! maps of `T` and once by scanning the language. The two must agree.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::fgroup::{coset_lift, FGroupError, SubgroupGraph};
use crate::induce::{default_horizon, first_return, CosetTable, Piece};
use crate::involution::{Cylinder, InvolutionError, LabeledInterval, LinearInvolution};
use crate::word::{RWord, SignedLetter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReturnsError {
    #[error("word {0} is not in the language")]
    NotInLanguage(RWord),
    #[error("the empty word cannot anchor returns")]
    EmptyAnchor,
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("{kind} returns: dynamical route gave {dynamical:?}, language scan gave {scanned:?}")]
    RouteMismatch { kind: ReturnKind, dynamical: Vec<RWord>, scanned: Vec<RWord> },
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error(transparent)]
    Group(#[from] FGroupError),
}

pub type Result<T, E = ReturnsError> = std::result::Result<T, E>;

/// Limits on both computation routes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Budget {
    /// Longest word the language scan may build.
    pub max_len: usize,
    /// Step limit for first-return maps; `None` means `10·k·max_len`.
    pub horizon: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_len: 256, horizon: None }
    }
}

impl Budget {
    fn horizon_for(&self, t: &LinearInvolution) -> usize {
        self.horizon.unwrap_or_else(|| default_horizon(t.k(), self.max_len))
    }

    /// The scan may go as far as the longest word the dynamical route found.
    fn covering(&self, words: &BTreeSet<RWord>) -> Budget {
        let longest = words.iter().map(RWord::len).max().unwrap_or(0);
        Budget { max_len: self.max_len.max(longest + 1), horizon: self.horizon }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReturnKind {
    Complete,
    Mixed,
    Right,
    Left,
    Prime,
}

impl fmt::Display for ReturnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReturnKind::Complete => "complete",
            ReturnKind::Mixed => "mixed",
            ReturnKind::Right => "right",
            ReturnKind::Left => "left",
            ReturnKind::Prime => "prime",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Anchor {
    Word(RWord),
    Words(BTreeSet<RWord>),
    Subgroup(SubgroupGraph),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReturnSet {
    pub kind: ReturnKind,
    pub anchor: Anchor,
    pub words: BTreeSet<RWord>,
}

impl ReturnSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.words.iter().all(|w| self.words.contains(&w.inverse()))
    }
}

/// One word per line, shortlex order.
impl fmt::Display for ReturnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.words {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

fn anchor_interval(t: &LinearInvolution, w: &RWord) -> Result<LabeledInterval> {
    if w.is_empty() {
        return Err(ReturnsError::EmptyAnchor);
    }
    t.interval_of_word(w).ok_or_else(|| ReturnsError::NotInLanguage(w.clone()))
}

fn agree(kind: ReturnKind, dynamical: BTreeSet<RWord>, scanned: BTreeSet<RWord>) -> Result<BTreeSet<RWord>> {
    if dynamical == scanned {
        Ok(dynamical)
    } else {
        Err(ReturnsError::RouteMismatch {
            kind,
            dynamical: dynamical.into_iter().collect(),
            scanned: scanned.into_iter().collect(),
        })
    }
}

/// `K_w = I_{w⁻¹} ∪ σ₂(I_{w⁻¹})`.
pub fn k_region(t: &LinearInvolution, w: &RWord) -> Result<[LabeledInterval; 2]> {
    let inv = anchor_interval(t, &w.inverse())?;
    Ok([inv.clone(), inv.mirror()])
}

/// The first return to `K_w` and, per piece, its complete return word.
fn dynamical_complete(t: &LinearInvolution, w: &RWord, budget: &Budget) -> Result<Vec<(Piece, RWord)>> {
    anchor_interval(t, w)?;
    let region = k_region(t, w)?;
    let pieces = first_return(t, &region, budget.horizon_for(t))?;
    let home = region[0].comp;
    let inv = w.inverse();
    Ok(pieces
        .into_iter()
        .map(|p| {
            let mut letters = Vec::new();
            if p.domain.comp != home {
                letters.extend_from_slice(w.letters());
            }
            letters.extend_from_slice(p.itinerary.letters());
            if p.image.comp == home {
                letters.extend_from_slice(inv.letters());
            }
            let cr = RWord::from_reduced(letters).expect("complete return words are reduced");
            (p, cr)
        })
        .collect())
}

/// The words of `L(T)` with a proper prefix in `x`, a proper suffix in `x` and
/// no internal factor in `x`, scanning words up to a length cap that doubles
/// from `4·max|x|`. `None` when the budget runs out first.
fn scan_complete(t: &LinearInvolution, x: &BTreeSet<RWord>, budget: &Budget) -> Option<BTreeSet<RWord>> {
    let longest = x.iter().map(RWord::len).max().unwrap_or(1);
    let mut cap = (4 * longest).min(budget.max_len).max(longest + 1);
    loop {
        if let Some(found) = scan_complete_capped(t, x, cap) {
            return Some(found);
        }
        if cap >= budget.max_len {
            return None;
        }
        cap = (2 * cap).min(budget.max_len);
    }
}

fn scan_complete_capped(t: &LinearInvolution, x: &BTreeSet<RWord>, cap: usize) -> Option<BTreeSet<RWord>> {
    let mut found = BTreeSet::new();
    let mut stack: Vec<(RWord, Cylinder)> =
        x.iter().filter_map(|p| Some((p.clone(), Cylinder::of_word(t, p)?))).collect();
    while let Some((v, cyl)) = stack.pop() {
        for y in SignedLetter::all(t.k()) {
            let Some(c2) = cyl.extend(t, y) else { continue };
            let v2 = v.extended(y).expect("cylinder is nonempty only for reduced words");
            let closes = x.iter().any(|s| s.len() < v2.len() && v2.ends_with(s));
            if closes {
                found.insert(v2);
            } else if v2.len() >= cap {
                return None;
            } else {
                stack.push((v2, c2));
            }
        }
    }
    Some(found)
}

/// Strips a prefix `w` and a suffix `w⁻¹` when present.
pub fn mixed_of_complete(w: &RWord, cr: &RWord) -> RWord {
    let mut u = cr.strip_prefix(w).unwrap_or_else(|| cr.clone());
    if let Some(s) = u.strip_suffix(&w.inverse()) {
        u = s;
    }
    u
}

fn complete_and_mixed(t: &LinearInvolution, w: &RWord, budget: &Budget) -> Result<(BTreeSet<RWord>, BTreeSet<RWord>)> {
    let dyn_pairs = dynamical_complete(t, w, budget)?;
    let dyn_cr: BTreeSet<RWord> = dyn_pairs.iter().map(|(_, cr)| cr.clone()).collect();
    let dyn_mr: BTreeSet<RWord> = dyn_pairs.iter().map(|(p, _)| p.itinerary.clone()).collect();
    let x = BTreeSet::from([w.clone(), w.inverse()]);
    let scan_budget = budget.covering(&dyn_cr);
    let scanned = scan_complete(t, &x, &scan_budget)
        .ok_or_else(|| ReturnsError::BudgetExhausted(format!("language scan to {} letters", scan_budget.max_len)))?;
    let scanned_mr = scanned.iter().map(|v| mixed_of_complete(w, v)).collect();
    let cr = agree(ReturnKind::Complete, dyn_cr, scanned)?;
    let mr = agree(ReturnKind::Mixed, dyn_mr, scanned_mr)?;
    Ok((cr, mr))
}

/// Complete first return words to `{w, w⁻¹}`.
pub fn complete_returns(t: &LinearInvolution, w: &RWord, budget: &Budget) -> Result<ReturnSet> {
    let (words, _) = complete_and_mixed(t, w, budget)?;
    Ok(ReturnSet { kind: ReturnKind::Complete, anchor: Anchor::Word(w.clone()), words })
}

/// Mixed return words to `w`.
pub fn mixed_returns(t: &LinearInvolution, w: &RWord, budget: &Budget) -> Result<ReturnSet> {
    let (_, words) = complete_and_mixed(t, w, budget)?;
    Ok(ReturnSet { kind: ReturnKind::Mixed, anchor: Anchor::Word(w.clone()), words })
}

/// Complete return words to an arbitrary finite set `X`, by language scan only.
pub fn complete_returns_to_set(t: &LinearInvolution, x: &BTreeSet<RWord>, budget: &Budget) -> Result<ReturnSet> {
    for w in x {
        anchor_interval(t, w)?;
    }
    let words = scan_complete(t, x, budget)
        .ok_or_else(|| ReturnsError::BudgetExhausted(format!("language scan to {} letters", budget.max_len)))?;
    Ok(ReturnSet { kind: ReturnKind::Complete, anchor: Anchor::Words(x.clone()), words })
}

/// First right and left return words to `w` alone.
fn right_and_left(t: &LinearInvolution, w: &RWord, budget: &Budget) -> Result<(BTreeSet<RWord>, BTreeSet<RWord>)> {
    let iw = anchor_interval(t, w)?;
    let pieces = first_return(t, &[iw], budget.horizon_for(t))?;
    let mut dyn_right = BTreeSet::new();
    let mut dyn_left = BTreeSet::new();
    for p in pieces {
        let n = p.itinerary.len();
        let full = RWord::from_reduced([p.itinerary.letters(), w.letters()].concat()).expect("codings are reduced");
        dyn_right.insert(full.suffix(n));
        dyn_left.insert(p.itinerary);
    }
    let longest: BTreeSet<RWord> = dyn_left.iter().map(|u| RWord::reduce([u.letters(), w.letters()].concat())).collect();
    let scan_budget = budget.covering(&longest);
    let scanned = scan_complete(t, &BTreeSet::from([w.clone()]), &scan_budget)
        .ok_or_else(|| ReturnsError::BudgetExhausted(format!("language scan to {} letters", scan_budget.max_len)))?;
    let scan_right = scanned.iter().map(|v| v.strip_prefix(w).expect("starts with w")).collect();
    let scan_left = scanned.iter().map(|v| v.strip_suffix(w).expect("ends with w")).collect();
    Ok((agree(ReturnKind::Right, dyn_right, scan_right)?, agree(ReturnKind::Left, dyn_left, scan_left)?))
}

/// Words `u` such that `wu` is a complete first return word to `{w}`.
pub fn right_returns(t: &LinearInvolution, w: &RWord, budget: &Budget) -> Result<ReturnSet> {
    let (words, _) = right_and_left(t, w, budget)?;
    Ok(ReturnSet { kind: ReturnKind::Right, anchor: Anchor::Word(w.clone()), words })
}

/// Words `u` such that `uw` is a complete first return word to `{w}`.
pub fn left_returns(t: &LinearInvolution, w: &RWord, budget: &Budget) -> Result<ReturnSet> {
    let (_, words) = right_and_left(t, w, budget)?;
    Ok(ReturnSet { kind: ReturnKind::Left, anchor: Anchor::Word(w.clone()), words })
}

/// Nonempty words of `G ∩ L(T)` without a proper nonempty prefix in `G`.
pub fn prime_words(t: &LinearInvolution, g: &SubgroupGraph, budget: &Budget) -> Result<ReturnSet> {
    let lift = coset_lift(t, g)?;
    let dynamical: BTreeSet<RWord> =
        lift.first_return_to_base(budget.horizon_for(t))?.into_iter().map(|p| p.itinerary).collect();
    let scan_budget = budget.covering(&dynamical);
    let scanned = scan_prime(t, lift.table(), &scan_budget)
        .ok_or_else(|| ReturnsError::BudgetExhausted(format!("prefix-tree scan to {} letters", scan_budget.max_len)))?;
    let words = agree(ReturnKind::Prime, dynamical, scanned)?;
    Ok(ReturnSet { kind: ReturnKind::Prime, anchor: Anchor::Subgroup(g.clone()), words })
}

fn scan_prime(t: &LinearInvolution, table: &CosetTable, budget: &Budget) -> Option<BTreeSet<RWord>> {
    let mut cap = 8.min(budget.max_len).max(1);
    loop {
        if let Some(found) = scan_prime_capped(t, table, cap) {
            return Some(found);
        }
        if cap >= budget.max_len {
            return None;
        }
        cap = (2 * cap).min(budget.max_len);
    }
}

fn scan_prime_capped(t: &LinearInvolution, table: &CosetTable, cap: usize) -> Option<BTreeSet<RWord>> {
    let mut found = BTreeSet::new();
    let mut stack: Vec<(RWord, Cylinder, usize)> = SignedLetter::all(t.k())
        .map(|x| (RWord::letter(x), Cylinder::letter(t, x), table.step(0, x)))
        .collect();
    while let Some((v, cyl, state)) = stack.pop() {
        if state == 0 {
            found.insert(v);
            continue;
        }
        if v.len() >= cap {
            return None;
        }
        for y in SignedLetter::all(t.k()) {
            if let Some(c2) = cyl.extend(t, y) {
                let v2 = v.extended(y).expect("cylinder is nonempty only for reduced words");
                stack.push((v2, c2, table.step(state, y)));
            }
        }
    }
    Some(found)
}

/// Dispatch on the kind of return words anchored at a word.
pub fn returns_of_kind(t: &LinearInvolution, w: &RWord, kind: ReturnKind, budget: &Budget) -> Result<ReturnSet> {
    match kind {
        ReturnKind::Complete => complete_returns(t, w, budget),
        ReturnKind::Mixed => mixed_returns(t, w, budget),
        ReturnKind::Right => right_returns(t, w, budget),
        ReturnKind::Left => left_returns(t, w, budget),
        ReturnKind::Prime => Err(ReturnsError::BudgetExhausted("prime words need a subgroup, not a word".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::fgroup::{even_subgroup, free_group};
    use crate::lang::{parity, Parity};
    use crate::word::w;

    fn set(ws: &[&str]) -> BTreeSet<RWord> {
        ws.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn golden_complete_returns() {
        let t = catalog::golden();
        let b = Budget::default();
        assert_eq!(
            complete_returns(&t, &w("a"), &b).unwrap().words,
            set(&["aBcbA", "aBcbCa", "AcBCa", "aBCbA", "AcbCa", "AcBCbA"])
        );
        assert_eq!(complete_returns(&t, &w("b"), &b).unwrap().words, set(&["bAcb", "bAcB", "bCaB", "Bcb", "BCaB", "BCb"]));
        assert_eq!(complete_returns(&t, &w("c"), &b).unwrap().words, set(&["cbAc", "cbC", "cBC", "CaBc", "CaBC", "CbAc"]));
    }

    #[test]
    fn golden_mixed_returns() {
        let t = catalog::golden();
        let b = Budget::default();
        assert_eq!(mixed_returns(&t, &w("a"), &b).unwrap().words, set(&["Bcb", "BcbCa", "AcBCa", "BCb", "AcbCa", "AcBCb"]));
        let c = mixed_returns(&t, &w("c"), &b).unwrap();
        assert_eq!(c.words, set(&["bAc", "b", "B", "CaBc", "CaB", "CbAc"]));
        assert!(c.is_symmetric());
        assert_eq!(c.to_string(), "b\nB\nbAc\nCaB\nCaBc\nCbAc\n");
    }

    #[test]
    fn conjugation_of_mixed_returns() {
        let t = catalog::golden();
        let b = Budget::default();
        for s in ["a", "aB", "cbA"] {
            let u = w(s);
            let mr = mixed_returns(&t, &u, &b).unwrap().words;
            let mr_inv = mixed_returns(&t, &u.inverse(), &b).unwrap().words;
            // conjugating by w, not by w⁻¹: N strips a prefix w and a suffix w⁻¹
            let conj: BTreeSet<RWord> = mr.iter().map(|m| u.concat_reduce(m).concat_reduce(&u.inverse())).collect();
            assert_eq!(conj, mr_inv, "{s}");
        }
    }

    #[test]
    fn right_returns_are_even() {
        let t = catalog::golden();
        let rr = right_returns(&t, &w("a"), &Budget::default()).unwrap();
        assert!(!rr.is_empty());
        assert!(rr.words.iter().all(|u| parity(&t, u) == Parity::Even));
        let lr = left_returns(&t, &w("a"), &Budget::default()).unwrap();
        assert_eq!(lr.len(), rr.len());
    }

    #[test]
    fn orientable_mixed_is_right_union_left() {
        let t = catalog::orientable_iet(false);
        let b = Budget::default();
        for s in ["a", "b", "ab", "c"] {
            let u = w(s);
            let Some(_) = t.interval_of_word(&u) else { continue };
            let mr = mixed_returns(&t, &u, &b).unwrap().words;
            let mut union = right_returns(&t, &u, &b).unwrap().words;
            union.extend(left_returns(&t, &u.inverse(), &b).unwrap().words);
            assert_eq!(mr, union, "{s}");
        }
    }

    #[test]
    fn golden_prime_words() {
        let t = catalog::golden();
        let p = prime_words(&t, &even_subgroup(&t), &Budget::default()).unwrap();
        let mut expected = set(&["a", "bAc", "bC", "BC", "Bc"]);
        expected.extend(expected.clone().iter().map(RWord::inverse));
        assert_eq!(p.words, expected);
        assert_eq!(p.len(), 10);
        let all = prime_words(&t, &free_group(3), &Budget::default()).unwrap();
        assert_eq!(all.words, set(&["a", "b", "c", "A", "B", "C"]));
    }

    #[test]
    fn anchor_errors() {
        let t = catalog::golden();
        let b = Budget::default();
        assert_eq!(complete_returns(&t, &w("aa"), &b).unwrap_err(), ReturnsError::NotInLanguage(w("aa")));
        assert_eq!(mixed_returns(&t, &RWord::empty(), &b).unwrap_err(), ReturnsError::EmptyAnchor);
        let tiny = Budget { max_len: 3, horizon: Some(2) };
        assert!(complete_returns(&t, &w("a"), &tiny).is_err());
        assert!(matches!(
            prime_words(&t, &crate::fgroup::fold(3, &[w("a")]), &b),
            Err(ReturnsError::Group(FGroupError::InfiniteIndex))
        ));
    }

    #[test]
    fn general_sets() {
        let t = catalog::golden();
        let b = Budget::default();
        let x = set(&["a", "A"]);
        assert_eq!(complete_returns_to_set(&t, &x, &b).unwrap().words, complete_returns(&t, &w("a"), &b).unwrap().words);
        let r = complete_returns_to_set(&t, &set(&["a"]), &b).unwrap();
        let right = right_returns(&t, &w("a"), &b).unwrap();
        let rebuilt: BTreeSet<RWord> = right.words.iter().map(|u| w("a").concat_reduce(u)).collect();
        assert_eq!(r.words, rebuilt);
    }
}
