//! Linear involutions `T = σ₂∘σ₁` on two copies of an open interval.
//!
//! Component 0 is the top row `I×{0}`, component 1 the bottom row `I×{1}`.
//! Every interval is open; division points are excluded from the domain.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::numeric::{FieldElem, NumericError};
use crate::word::{RWord, SignedLetter, MAX_ALPHABET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutionError {
    #[error("alphabet must have between 1 and {MAX_ALPHABET} letters, got {0}")]
    AlphabetSize(usize),
    #[error("both rows must be nonempty")]
    EmptyRow,
    #[error("letter {0} does not occur in the permutation")]
    MissingLetter(SignedLetter),
    #[error("letter {0} occurs more than once")]
    DuplicateLetter(SignedLetter),
    #[error("letter {0} is outside the alphabet")]
    ForeignLetter(SignedLetter),
    #[error("expected {expected} lengths, got {got}")]
    LengthCount { expected: usize, got: usize },
    #[error("length of {0} is not positive")]
    NonPositiveLength(SignedLetter),
    #[error("row sums differ: top {top}, bottom {bottom}")]
    RowSumsUnequal { top: Box<FieldElem>, bottom: Box<FieldElem> },
    #[error("interval length {given} differs from the row sum {rows}")]
    IntervalLengthMismatch { given: Box<FieldElem>, rows: Box<FieldElem> },
    #[error("point {0} is a singularity")]
    SingularPoint(Box<Pt>),
    #[error("point {0} lies outside the interval")]
    OutsideInterval(Box<Pt>),
    #[error("return not reached within {horizon} steps ({open} pieces still travelling)")]
    HorizonExhausted { horizon: usize, open: usize },
    #[error("equal rightmost lengths: the Rauzy step hits a connection")]
    EqualLastLengths,
    #[error("invalid return region: {0}")]
    InvalidRegion(String),
    #[error("word {0} is not in the language")]
    NotInLanguage(RWord),
    #[error("induced map is inconsistent: {0}")]
    InconsistentInduction(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

pub type Result<T, E = InvolutionError> = std::result::Result<T, E>;

/// A point `(x, δ)` of `Î = I×{0,1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pt {
    pub x: FieldElem,
    pub comp: u8,
}

impl Pt {
    pub fn new(x: FieldElem, comp: u8) -> Self {
        Pt { x, comp }
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.comp)
    }
}

/// An open interval `(lo, hi)` on one component, optionally tagged with a word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabeledInterval {
    pub lo: FieldElem,
    pub hi: FieldElem,
    pub comp: u8,
    pub label: Option<RWord>,
}

impl LabeledInterval {
    pub fn new(lo: FieldElem, hi: FieldElem, comp: u8) -> Self {
        LabeledInterval { lo, hi, comp, label: None }
    }

    pub fn with_label(mut self, label: RWord) -> Self {
        self.label = Some(label);
        self
    }

    pub fn length(&self) -> FieldElem {
        &self.hi - &self.lo
    }

    pub fn contains(&self, z: &Pt) -> bool {
        z.comp == self.comp && self.lo < z.x && z.x < self.hi
    }

    pub fn contains_x(&self, x: &FieldElem) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn midpoint(&self) -> Pt {
        Pt::new(self.lo.midpoint(&self.hi), self.comp)
    }

    /// The mirror image on the other component.
    pub fn mirror(&self) -> Self {
        LabeledInterval { comp: 1 - self.comp, ..self.clone() }
    }

    /// Same endpoints and component; labels ignored.
    pub fn same_span(&self, other: &Self) -> bool {
        self.comp == other.comp && self.lo == other.lo && self.hi == other.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        if self.comp != other.comp {
            return None;
        }
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo < hi).then(|| LabeledInterval::new(lo, hi, self.comp))
    }
}

impl fmt::Display for LabeledInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) on {}", self.lo, self.hi, self.comp)?;
        if let Some(l) = &self.label {
            write!(f, " [{l}]")?;
        }
        Ok(())
    }
}

/// `x ↦ ±x + shift`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Affine {
    pub reversing: bool,
    pub shift: FieldElem,
}

impl Affine {
    pub fn identity() -> Self {
        Affine { reversing: false, shift: FieldElem::zero() }
    }

    pub fn apply(&self, x: &FieldElem) -> FieldElem {
        if self.reversing {
            &self.shift - x
        } else {
            x + &self.shift
        }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Affine) -> Affine {
        let shift = if self.reversing { &self.shift - &inner.shift } else { &inner.shift + &self.shift };
        Affine { reversing: self.reversing != inner.reversing, shift }
    }

    pub fn inverse(&self) -> Affine {
        if self.reversing {
            self.clone()
        } else {
            Affine { reversing: false, shift: -&self.shift }
        }
    }

    pub fn image(&self, lo: &FieldElem, hi: &FieldElem) -> (FieldElem, FieldElem) {
        if self.reversing {
            (self.apply(hi), self.apply(lo))
        } else {
            (self.apply(lo), self.apply(hi))
        }
    }
}

/// Two rows of signed letters; each of the `2k` signed letters occurs once.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GeneralizedPermutation {
    top: Vec<SignedLetter>,
    bottom: Vec<SignedLetter>,
}

impl GeneralizedPermutation {
    pub fn new(top: Vec<SignedLetter>, bottom: Vec<SignedLetter>) -> Result<Self> {
        if top.is_empty() || bottom.is_empty() {
            return Err(InvolutionError::EmptyRow);
        }
        let total = top.len() + bottom.len();
        if !total.is_multiple_of(2) || total / 2 > MAX_ALPHABET {
            return Err(InvolutionError::AlphabetSize(total / 2));
        }
        let k = total / 2;
        let mut seen = vec![false; 2 * k];
        for &x in top.iter().chain(bottom.iter()) {
            if x.base as usize >= k {
                return Err(InvolutionError::ForeignLetter(x));
            }
            let i = x.index(k);
            if seen[i] {
                return Err(InvolutionError::DuplicateLetter(x));
            }
            seen[i] = true;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(InvolutionError::MissingLetter(SignedLetter::from_index(i, k)));
        }
        Ok(GeneralizedPermutation { top, bottom })
    }

    pub fn top(&self) -> &[SignedLetter] {
        &self.top
    }

    pub fn bottom(&self) -> &[SignedLetter] {
        &self.bottom
    }

    pub fn row(&self, comp: u8) -> &[SignedLetter] {
        if comp == 0 {
            &self.top
        } else {
            &self.bottom
        }
    }

    /// Alphabet size.
    pub fn k(&self) -> usize {
        (self.top.len() + self.bottom.len()) / 2
    }

    /// Type `(ℓ, m)`.
    pub fn kind(&self) -> (usize, usize) {
        (self.top.len(), self.bottom.len())
    }

    pub fn comp_of(&self, x: SignedLetter) -> u8 {
        if self.top.contains(&x) {
            0
        } else {
            1
        }
    }

    /// Letters of `A` whose two signed copies sit in the same row.
    pub fn same_row_letters(&self) -> BTreeSet<u8> {
        (0..self.k() as u8)
            .filter(|&b| self.comp_of(SignedLetter::pos(b)) == self.comp_of(SignedLetter::neg(b)))
            .collect()
    }
}

impl fmt::Display for GeneralizedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[SignedLetter]| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{} / {}", row(&self.top), row(&self.bottom))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Flips {
    /// Flip exactly the letters whose two intervals share a component.
    Coherent,
    Explicit(BTreeSet<u8>),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    Orientable,
    Nonorientable,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coherence {
    Coherent,
    Noncoherent,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Orientable => "orientable",
            Orientation::Nonorientable => "nonorientable",
        })
    }
}

impl fmt::Display for Coherence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coherence::Coherent => "coherent",
            Coherence::Noncoherent => "noncoherent",
        })
    }
}

/// A triple `(x, y, n)` with `x` singular for `T⁻¹`, `y` singular for `T` and `Tⁿx = y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Connection {
    pub from: Pt,
    pub to: Pt,
    pub steps: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Slot {
    lo: FieldElem,
    hi: FieldElem,
    comp: u8,
    /// σ₁ restricted to this interval.
    sigma1: Affine,
    sigma1_comp: u8,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearInvolution {
    perm: GeneralizedPermutation,
    lengths: Vec<FieldElem>,
    flips: BTreeSet<u8>,
    interval_length: FieldElem,
    slots: Vec<Slot>,
    cuts: [Vec<FieldElem>; 2],
}

impl LinearInvolution {
    /// Validates the data and lays out the intervals `I_x`.
    ///
    /// `interval_length` defaults to the common row sum.
    pub fn build(
        perm: GeneralizedPermutation,
        lengths: Vec<FieldElem>,
        flips: Flips,
        interval_length: Option<FieldElem>,
    ) -> Result<Self> {
        let k = perm.k();
        if lengths.len() != k {
            return Err(InvolutionError::LengthCount { expected: k, got: lengths.len() });
        }
        for (i, l) in lengths.iter().enumerate() {
            if !l.is_positive() {
                return Err(InvolutionError::NonPositiveLength(SignedLetter::pos(i as u8)));
            }
        }
        let row_sum = |row: &[SignedLetter]| -> Result<FieldElem> {
            let mut s = FieldElem::zero();
            for x in row {
                s = s.checked_add(&lengths[x.base as usize])?;
            }
            Ok(s)
        };
        let top = row_sum(perm.top())?;
        let bottom = row_sum(perm.bottom())?;
        if top != bottom {
            return Err(InvolutionError::RowSumsUnequal { top: Box::new(top), bottom: Box::new(bottom) });
        }
        if let Some(given) = interval_length {
            if given != top {
                return Err(InvolutionError::IntervalLengthMismatch { given: Box::new(given), rows: Box::new(top) });
            }
        }
        let flips = match flips {
            Flips::Coherent => perm.same_row_letters(),
            Flips::Explicit(set) => {
                if let Some(&b) = set.iter().find(|&&b| b as usize >= k) {
                    return Err(InvolutionError::ForeignLetter(SignedLetter::pos(b)));
                }
                set
            }
        };

        let mut spans: Vec<Option<(FieldElem, FieldElem, u8)>> = vec![None; 2 * k];
        let mut cuts: [Vec<FieldElem>; 2] = [Vec::new(), Vec::new()];
        for comp in 0..2u8 {
            let mut pos = FieldElem::zero();
            let row = perm.row(comp);
            for (j, x) in row.iter().enumerate() {
                let next = &pos + &lengths[x.base as usize];
                if j + 1 < row.len() {
                    cuts[comp as usize].push(next.clone());
                }
                spans[x.index(k)] = Some((pos, next.clone(), comp));
                pos = next;
            }
        }
        let spans: Vec<(FieldElem, FieldElem, u8)> =
            spans.into_iter().map(|s| s.expect("every letter placed")).collect();
        let slots = (0..2 * k)
            .map(|i| {
                let x = SignedLetter::from_index(i, k);
                let (lo, hi, comp) = spans[i].clone();
                let (plo, phi, pcomp) = &spans[x.inverse().index(k)];
                let sigma1 = if flips.contains(&x.base) {
                    Affine { reversing: true, shift: &lo + phi }
                } else {
                    Affine { reversing: false, shift: plo - &lo }
                };
                Slot { lo, hi, comp, sigma1, sigma1_comp: *pcomp }
            })
            .collect();
        Ok(LinearInvolution { perm, lengths, flips, interval_length: top, slots, cuts })
    }

    pub fn perm(&self) -> &GeneralizedPermutation {
        &self.perm
    }

    pub fn k(&self) -> usize {
        self.perm.k()
    }

    pub fn lengths(&self) -> &[FieldElem] {
        &self.lengths
    }

    pub fn length(&self, x: SignedLetter) -> &FieldElem {
        &self.lengths[x.base as usize]
    }

    pub fn flips(&self) -> &BTreeSet<u8> {
        &self.flips
    }

    pub fn is_flipped(&self, x: SignedLetter) -> bool {
        self.flips.contains(&x.base)
    }

    pub fn interval_length(&self) -> &FieldElem {
        &self.interval_length
    }

    /// Common radicand of all lengths (0 when rational).
    pub fn radicand(&self) -> u64 {
        self.lengths.iter().map(|l| l.radicand()).max().unwrap_or(0)
    }

    fn slot(&self, x: SignedLetter) -> &Slot {
        &self.slots[x.index(self.k())]
    }

    /// The interval `I_x`.
    pub fn interval(&self, x: SignedLetter) -> LabeledInterval {
        let s = self.slot(x);
        LabeledInterval::new(s.lo.clone(), s.hi.clone(), s.comp).with_label(RWord::letter(x))
    }

    /// Component holding `I_x`.
    pub fn comp_of(&self, x: SignedLetter) -> u8 {
        self.slot(x).comp
    }

    /// Division points on one component.
    pub fn cuts(&self, comp: u8) -> &[FieldElem] {
        &self.cuts[comp as usize]
    }

    /// The `2k − 2` singular points of `T`.
    pub fn division_points(&self) -> Vec<Pt> {
        (0..2u8)
            .flat_map(|c| self.cuts[c as usize].iter().map(move |x| Pt::new(x.clone(), c)))
            .collect()
    }

    /// A letter is even when its two intervals lie on distinct components.
    pub fn is_even_letter(&self, x: SignedLetter) -> bool {
        self.comp_of(x) != self.comp_of(x.inverse())
    }

    pub fn classify(&self) -> (Orientation, Coherence) {
        let same = self.perm.same_row_letters();
        let orientation = if same.is_empty() { Orientation::Orientable } else { Orientation::Nonorientable };
        let coherence = if same == self.flips { Coherence::Coherent } else { Coherence::Noncoherent };
        (orientation, coherence)
    }

    fn check_inside(&self, z: &Pt) -> Result<()> {
        if z.comp > 1 || !z.x.is_positive() || z.x >= self.interval_length {
            return Err(InvolutionError::OutsideInterval(Box::new(z.clone())));
        }
        Ok(())
    }

    /// The signed letter whose interval contains `z`.
    pub fn locate(&self, z: &Pt) -> Result<SignedLetter> {
        self.check_inside(z)?;
        let row = self.perm.row(z.comp);
        let cuts = &self.cuts[z.comp as usize];
        // first cut not below z
        let i = cuts.partition_point(|c| c < &z.x);
        if i < cuts.len() && cuts[i] == z.x {
            return Err(InvolutionError::SingularPoint(Box::new(z.clone())));
        }
        Ok(row[i])
    }

    pub fn sigma1(&self, z: &Pt) -> Result<Pt> {
        let x = self.locate(z)?;
        let s = self.slot(x);
        Ok(Pt::new(s.sigma1.apply(&z.x), s.sigma1_comp))
    }

    pub fn sigma2(&self, z: &Pt) -> Pt {
        Pt::new(z.x.clone(), 1 - z.comp)
    }

    pub fn apply(&self, z: &Pt) -> Result<Pt> {
        Ok(self.sigma2(&self.sigma1(z)?))
    }

    /// `T⁻¹ = σ₁∘σ₂`; singular on the mirror images of division points.
    pub fn apply_inv(&self, z: &Pt) -> Result<Pt> {
        self.sigma1(&self.sigma2(z)).map_err(|e| match e {
            InvolutionError::SingularPoint(_) => InvolutionError::SingularPoint(Box::new(z.clone())),
            other => other,
        })
    }

    pub fn apply_n(&self, z: &Pt, n: usize) -> Result<Pt> {
        let mut p = z.clone();
        for _ in 0..n {
            p = self.apply(&p)?;
        }
        Ok(p)
    }

    /// `T` restricted to `I_x` as an affine map and its target component.
    pub fn step_map(&self, x: SignedLetter) -> (Affine, u8) {
        let s = self.slot(x);
        (s.sigma1.clone(), 1 - s.sigma1_comp)
    }

    /// `σ₁` restricted to `I_x`.
    pub fn sigma1_map(&self, x: SignedLetter) -> (Affine, u8) {
        let s = self.slot(x);
        (s.sigma1.clone(), s.sigma1_comp)
    }

    /// `σ₁` applied to an interval contained in a single `I_x`.
    pub fn sigma1_interval(&self, iv: &LabeledInterval) -> Result<LabeledInterval> {
        let x = self.locate(&iv.midpoint())?;
        let (m, c) = self.sigma1_map(x);
        let (lo, hi) = m.image(&iv.lo, &iv.hi);
        Ok(LabeledInterval::new(lo, hi, c))
    }

    /// The cylinder `I_w`, or `None` when `w ∉ L(T)`. `I_ε` is reported as `None`
    /// here; callers treat the empty word as all of `Î`.
    pub fn interval_of_word(&self, w: &RWord) -> Option<LabeledInterval> {
        Cylinder::of_word(self, w).map(|c| c.domain().with_label(w.clone()))
    }

    /// Detects a connection reachable within `horizon` steps, least `n` first.
    pub fn detect_connection(&self, horizon: usize) -> Option<Connection> {
        let singular: BTreeSet<(u8, FieldElem)> =
            self.division_points().into_iter().map(|p| (p.comp, p.x)).collect();
        let starts: Vec<Pt> = self.division_points().iter().map(|p| self.sigma2(p)).collect();
        let mut cur: Vec<Option<Pt>> = starts.iter().cloned().map(Some).collect();
        for n in 0..=horizon {
            for (i, slot) in cur.iter_mut().enumerate() {
                let Some(p) = slot.as_ref() else { continue };
                if singular.contains(&(p.comp, p.x.clone())) {
                    return Some(Connection { from: starts[i].clone(), to: p.clone(), steps: n });
                }
                if n < horizon {
                    *slot = self.apply(p).ok();
                }
            }
        }
        None
    }

    /// A point of `iv` whose forward orbit avoids `Σ` for `horizon` steps:
    /// the midpoint, else the 1/3 point, then 1/4, and so on.
    pub fn sample_point(&self, iv: &LabeledInterval, horizon: usize) -> Option<Pt> {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        for den in 2..64i64 {
            let t = BigRational::new(BigInt::from(1), BigInt::from(den));
            let z = Pt::new(iv.lo.lerp(&iv.hi, &t), iv.comp);
            if self.apply_n(&z, horizon).is_ok() {
                return Some(z);
            }
        }
        None
    }

    /// Renames letters: positive letter `i` becomes `map[i]`.
    pub fn relabel(&self, map: &[SignedLetter]) -> Result<Self> {
        let k = self.k();
        let img = |x: SignedLetter| {
            let y = map[x.base as usize];
            if x.positive {
                y
            } else {
                y.inverse()
            }
        };
        let perm = GeneralizedPermutation::new(
            self.perm.top.iter().map(|&x| img(x)).collect(),
            self.perm.bottom.iter().map(|&x| img(x)).collect(),
        )?;
        let mut lengths = vec![FieldElem::zero(); k];
        let mut flips = BTreeSet::new();
        for (b, &y) in map.iter().enumerate().take(k) {
            lengths[y.base as usize] = self.lengths[b].clone();
            if self.flips.contains(&(b as u8)) {
                flips.insert(y.base);
            }
        }
        Self::build(perm, lengths, Flips::Explicit(flips), None)
    }

    /// Exchanges the two components.
    pub fn swap_components(&self) -> Result<Self> {
        let perm = GeneralizedPermutation::new(self.perm.bottom.clone(), self.perm.top.clone())?;
        Self::build(perm, self.lengths.clone(), Flips::Explicit(self.flips.clone()), None)
    }

    /// Multiplies every length by `factor`.
    pub fn rescale(&self, factor: &FieldElem) -> Result<Self> {
        let lengths = self.lengths.iter().map(|l| l.checked_mul(factor)).collect::<Result<Vec<_>, _>>()?;
        Self::build(self.perm.clone(), lengths, Flips::Explicit(self.flips.clone()), None)
    }
}

/// The cylinder of a word `u`: its end `T^{|u|−1}(I_u)` inside `I_{last(u)}`,
/// the affine map from `I_u` onto it, and the component of `I_u`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    start_comp: u8,
    end: LabeledInterval,
    map: Affine,
    last: SignedLetter,
    len: usize,
}

impl Cylinder {
    pub fn letter(t: &LinearInvolution, x: SignedLetter) -> Self {
        let s = t.slot(x);
        let end = LabeledInterval::new(s.lo.clone(), s.hi.clone(), s.comp);
        Cylinder { start_comp: s.comp, end, map: Affine::identity(), last: x, len: 1 }
    }

    pub fn of_word(t: &LinearInvolution, w: &RWord) -> Option<Self> {
        let (&first, rest) = w.letters().split_first()?;
        let mut c = Cylinder::letter(t, first);
        for &x in rest {
            c = c.extend(t, x)?;
        }
        Some(c)
    }

    /// The cylinder of `u·x`, if nonempty: `I_{ux} = I_u ∩ T^{-|u|}(I_x)`.
    pub fn extend(&self, t: &LinearInvolution, x: SignedLetter) -> Option<Self> {
        let target = t.slot(x);
        let (step, comp) = (&t.slot(self.last).sigma1, 1 - t.slot(self.last).sigma1_comp);
        if x == self.last.inverse() || comp != target.comp {
            return None;
        }
        let (lo, hi) = step.image(&self.end.lo, &self.end.hi);
        let lo = if lo < target.lo { target.lo.clone() } else { lo };
        let hi = if hi > target.hi { target.hi.clone() } else { hi };
        if lo >= hi {
            return None;
        }
        Some(Cylinder {
            start_comp: self.start_comp,
            end: LabeledInterval::new(lo, hi, comp),
            map: step.after(&self.map),
            last: x,
            len: self.len + 1,
        })
    }

    /// `I_u`.
    pub fn domain(&self) -> LabeledInterval {
        let (lo, hi) = self.map.inverse().image(&self.end.lo, &self.end.hi);
        LabeledInterval::new(lo, hi, self.start_comp)
    }

    /// `T^{|u|−1}(I_u)`.
    pub fn end(&self) -> &LabeledInterval {
        &self.end
    }

    /// `T^{|u|}(I_u)`.
    pub fn image(&self, t: &LinearInvolution) -> LabeledInterval {
        let (step, comp) = t.step_map(self.last);
        let (lo, hi) = step.image(&self.end.lo, &self.end.hi);
        LabeledInterval::new(lo, hi, comp)
    }

    pub fn last(&self) -> SignedLetter {
        self.last
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::word::w;

    fn fe(s: &str) -> FieldElem {
        s.parse().unwrap()
    }

    fn sl(c: char) -> SignedLetter {
        SignedLetter::from_char(c).unwrap()
    }

    #[test]
    fn golden_is_coherent_with_flips_b_c() {
        let t = catalog::golden();
        assert_eq!(t.flips(), &BTreeSet::from([1u8, 2u8]));
        assert_eq!(t.length(sl('a')), &fe("sqrt5 - 2"));
        assert_eq!(t.interval_length(), &FieldElem::one());
        assert_eq!(t.classify(), (Orientation::Nonorientable, Coherence::Coherent));
        assert_eq!(t.division_points().len(), 2 * 3 - 2);
    }

    #[test]
    fn row_sum_mismatch_is_rejected() {
        let perm = GeneralizedPermutation::new(
            vec![sl('a'), sl('b')],
            vec![sl('B'), sl('A')],
        )
        .unwrap();
        let r = LinearInvolution::build(perm.clone(), vec![FieldElem::ratio(1, 2), FieldElem::ratio(1, 3)], Flips::Coherent, None);
        assert!(r.is_ok());
        let r = LinearInvolution::build(perm.clone(), vec![FieldElem::ratio(1, 2), FieldElem::zero()], Flips::Coherent, None);
        assert!(matches!(r, Err(InvolutionError::NonPositiveLength(_))));
        let r = LinearInvolution::build(perm, vec![FieldElem::ratio(1, 2)], Flips::Coherent, None);
        assert!(matches!(r, Err(InvolutionError::LengthCount { .. })));
        let perm = GeneralizedPermutation::new(vec![sl('a'), sl('b'), sl('B')], vec![sl('c'), sl('C'), sl('A')]).unwrap();
        let r = LinearInvolution::build(
            perm,
            vec![FieldElem::ratio(1, 3), FieldElem::ratio(1, 3), FieldElem::ratio(1, 4)],
            Flips::Coherent,
            None,
        );
        assert!(matches!(r, Err(InvolutionError::RowSumsUnequal { .. })));
    }

    #[test]
    fn permutation_validation() {
        let p = GeneralizedPermutation::new(vec![sl('a'), sl('a')], vec![sl('A'), sl('B')]);
        assert_eq!(p, Err(InvolutionError::DuplicateLetter(sl('a'))));
        let p = GeneralizedPermutation::new(vec![sl('a'), sl('b')], vec![sl('A'), sl('C')]);
        assert!(matches!(p, Err(InvolutionError::ForeignLetter(_))));
        let p = GeneralizedPermutation::new(vec![sl('a'), sl('b')], vec![sl('A'), sl('b')]);
        assert!(matches!(p, Err(InvolutionError::DuplicateLetter(_))));
        let p = GeneralizedPermutation::new(vec![], vec![sl('a'), sl('A')]);
        assert_eq!(p, Err(InvolutionError::EmptyRow));
    }

    #[test]
    fn four_letter_classification() {
        let t = catalog::four_letter();
        assert_eq!(t.flips(), &BTreeSet::from([0u8, 3u8]));
        assert_eq!(t.classify(), (Orientation::Nonorientable, Coherence::Coherent));
        // z near the left end of I_a lands just below, at the left of I_{b⁻¹}
        let z = Pt::new(FieldElem::ratio(3, 100), 0);
        let tz = t.apply(&z).unwrap();
        assert_eq!(tz.comp, 1);
        assert_eq!(t.locate(&tz).unwrap(), sl('B'));
        let ttz = t.apply(&tz).unwrap();
        assert_eq!(t.locate(&t.sigma2(&ttz)).unwrap(), sl('b'));
    }

    #[test]
    fn orientable_examples() {
        assert_eq!(catalog::orientable_iet(false).classify(), (Orientation::Orientable, Coherence::Coherent));
        assert_eq!(catalog::orientable_iet(true).classify(), (Orientation::Orientable, Coherence::Noncoherent));
    }

    #[test]
    fn golden_apply_midpoint_of_a() {
        let t = catalog::golden();
        let z = Pt::new(fe("(sqrt5 - 2)/2"), 0);
        let tz = t.apply(&z).unwrap();
        // σ₁ translates I_a = (0, √5−2) onto I_{a⁻¹} = (3−√5, 1); σ₂ lifts to the top
        assert_eq!(tz, Pt::new(fe("(4 - sqrt5)/2"), 0));
        assert_eq!(t.locate(&tz).unwrap(), sl('B'));
        assert_eq!(t.apply_inv(&tz).unwrap(), z);
    }

    #[test]
    fn locate_golden() {
        let t = catalog::golden();
        assert_eq!(t.locate(&Pt::new(fe("(sqrt5 - 2)/2"), 0)).unwrap(), sl('a'));
        assert_eq!(t.locate(&Pt::new(fe("(4 - sqrt5)/2"), 0)).unwrap(), sl('B'));
        assert!(matches!(t.locate(&Pt::new(fe("sqrt5 - 2"), 0)), Err(InvolutionError::SingularPoint(_))));
        assert!(matches!(t.locate(&Pt::new(FieldElem::one(), 0)), Err(InvolutionError::OutsideInterval(_))));
        assert!(matches!(t.locate(&Pt::new(FieldElem::zero(), 1)), Err(InvolutionError::OutsideInterval(_))));
    }

    #[test]
    fn singular_points_of_t_inverse() {
        let t = catalog::golden();
        let s = Pt::new(fe("sqrt5 - 2"), 0);
        assert!(t.apply(&s).is_err());
        assert!(matches!(t.apply_inv(&t.sigma2(&s)), Err(InvolutionError::SingularPoint(_))));
        assert!(t.apply_inv(&s).is_ok());
    }

    #[test]
    fn noncoherent_period_three() {
        let t = catalog::noncoherent_periodic();
        assert_eq!(t.classify(), (Orientation::Nonorientable, Coherence::Noncoherent));
        let z = Pt::new(FieldElem::ratio(1, 2) + FieldElem::ratio(3, 8), 0);
        let z1 = t.apply(&z).unwrap();
        assert_eq!(z1, Pt::new(FieldElem::ratio(1, 8), 0));
        assert_eq!(t.locate(&z1).unwrap(), sl('a'));
        let z2 = t.apply(&z1).unwrap();
        assert_eq!(z2, Pt::new(FieldElem::ratio(1, 2), 1));
        assert_eq!(t.locate(&z2).unwrap(), sl('D'));
        assert_eq!(t.apply(&z2).unwrap(), z);
    }

    #[test]
    fn word_intervals_golden() {
        let t = catalog::golden();
        let ia = t.interval_of_word(&w("a")).unwrap();
        assert!(ia.same_span(&LabeledInterval::new(FieldElem::zero(), fe("sqrt5 - 2"), 0)));
        assert!(t.interval_of_word(&w("ab")).is_none());
        assert!(t.interval_of_word(&w("ac")).is_none());
        let iab = t.interval_of_word(&w("aB")).unwrap();
        // every point of I_a goes to I_{b⁻¹}
        assert!(iab.same_span(&ia));
    }

    #[test]
    fn connections() {
        assert!(catalog::golden().detect_connection(64).is_none());
        let perm = GeneralizedPermutation::new(vec![sl('a'), sl('b'), sl('B')], vec![sl('c'), sl('C'), sl('A')]).unwrap();
        let third = FieldElem::ratio(1, 3);
        let t = LinearInvolution::build(perm, vec![third.clone(), third.clone(), third], Flips::Coherent, None).unwrap();
        let c = t.detect_connection(0).unwrap();
        assert_eq!(c.steps, 0);
        assert_eq!(c.from, c.to);
    }

    #[test]
    fn relabel_swap_rescale() {
        let t = catalog::golden();
        let id: Vec<SignedLetter> = (0..3).map(SignedLetter::pos).collect();
        assert_eq!(t.relabel(&id).unwrap(), t);
        assert_eq!(t.swap_components().unwrap().swap_components().unwrap(), t);
        let two = FieldElem::from_int(2);
        let s = t.rescale(&two).unwrap();
        assert_eq!(s.interval_length(), &two);
        assert_eq!(s.rescale(&FieldElem::ratio(1, 2)).unwrap(), t);
    }

    #[test]
    fn sigma1_maps_letter_intervals_onto_inverses() {
        for t in [catalog::golden(), catalog::four_letter(), catalog::noncoherent_periodic()] {
            for x in SignedLetter::all(t.k()) {
                let img = t.sigma1_interval(&t.interval(x)).unwrap();
                assert!(img.same_span(&t.interval(x.inverse())), "{x}");
            }
        }
    }

    #[test]
    fn cylinder_image_matches_pointwise_orbit() {
        let t = catalog::golden();
        let c = Cylinder::of_word(&t, &w("aBcbA")).unwrap();
        let z = c.domain().midpoint();
        let img = c.image(&t);
        assert!(img.contains(&t.apply_n(&z, 5).unwrap()));
        assert!(c.end().contains(&t.apply_n(&z, 4).unwrap()));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn interior_point() -> impl Strategy<Value = Pt> {
            (1i64..999, 0u8..2).prop_map(|(n, c)| Pt::new(FieldElem::ratio(n, 1000) + FieldElem::ratio(1, 7919), c))
        }

        proptest! {
            #[test]
            fn inverse_round_trips(z in interior_point()) {
                for t in [catalog::golden(), catalog::four_letter()] {
                    if let Ok(tz) = t.apply(&z) {
                        prop_assert_eq!(t.apply_inv(&tz).unwrap(), z.clone());
                    }
                    if let Ok(uz) = t.apply_inv(&z) {
                        prop_assert_eq!(t.apply(&uz).unwrap(), z.clone());
                    }
                    if let Ok(s) = t.sigma1(&z) {
                        prop_assert_eq!(t.sigma1(&s).unwrap(), z.clone());
                    }
                    prop_assert_eq!(t.sigma2(&t.sigma2(&z)), z.clone());
                }
            }
        }
    }
}
