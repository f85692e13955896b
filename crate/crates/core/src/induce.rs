//! First-return maps, induction on subintervals and Rauzy steps.
//!
//! Pieces of a region `K` are pushed forward under `T`, split at division
//! points and at the boundary of `K`, until every piece is back in `K`. The same
//! engine runs on a finite cover `Î × {cosets}` by carrying a coset state along
//! each piece.

use std::collections::BTreeSet;

use crate::involution::{
    Affine, Flips, GeneralizedPermutation, InvolutionError, LabeledInterval, LinearInvolution, Pt, Result,
};
use crate::numeric::FieldElem;
use crate::word::{RWord, SignedLetter, Substitution, MAX_ALPHABET};

/// Horizon used when the caller gives none: `10·k·max_len`.
pub fn default_horizon(k: usize, max_len: usize) -> usize {
    10 * k * max_len.max(1)
}

/// Right action of the letters on a finite set of cosets; state 0 is the base.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetTable {
    k: usize,
    next: Vec<Vec<usize>>,
}

impl CosetTable {
    /// `next[state][x.index(k)]` is the state reached after reading `x`.
    pub fn new(k: usize, next: Vec<Vec<usize>>) -> Result<Self> {
        let n = next.len();
        let bad = n == 0 || next.iter().any(|row| row.len() != 2 * k || row.iter().any(|&s| s >= n));
        if bad {
            return Err(InvolutionError::InvalidRegion("malformed coset table".into()));
        }
        Ok(CosetTable { k, next })
    }

    /// The one-coset table of the whole free group.
    pub fn trivial(k: usize) -> Self {
        CosetTable { k, next: vec![vec![0; 2 * k]] }
    }

    pub fn len(&self) -> usize {
        self.next.len()
    }

    pub fn is_empty(&self) -> bool {
        self.next.is_empty()
    }

    pub fn step(&self, state: usize, x: SignedLetter) -> usize {
        self.next[state][x.index(self.k)]
    }
}

/// One piece of a first-return map: on `domain` the return is `map`, landing on
/// `image`, after following `itinerary`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Piece {
    pub domain: LabeledInterval,
    pub itinerary: RWord,
    pub image: LabeledInterval,
    pub map: Affine,
}

struct Track {
    src: LabeledInterval,
    map: Affine,
    comp: u8,
    letters: Vec<SignedLetter>,
    state: usize,
}

impl Track {
    fn image(&self) -> (FieldElem, FieldElem) {
        self.map.image(&self.src.lo, &self.src.hi)
    }

    /// The part of this track whose current position is `(lo, hi)`.
    fn restrict(&self, lo: &FieldElem, hi: &FieldElem) -> LabeledInterval {
        let (a, b) = self.map.inverse().image(lo, hi);
        LabeledInterval::new(a, b, self.src.comp)
    }
}

fn split_points(lo: &FieldElem, hi: &FieldElem, cuts: impl Iterator<Item = FieldElem>) -> Vec<FieldElem> {
    let mut inner: Vec<FieldElem> = cuts.filter(|c| lo < c && c < hi).collect();
    inner.sort();
    inner.dedup();
    let mut pts = Vec::with_capacity(inner.len() + 2);
    pts.push(lo.clone());
    pts.extend(inner);
    pts.push(hi.clone());
    pts
}

fn check_region(t: &LinearInvolution, region: &[LabeledInterval]) -> Result<()> {
    for r in region {
        if r.comp > 1 || r.lo >= r.hi || r.lo.signum().is_lt() || &r.hi > t.interval_length() {
            return Err(InvolutionError::InvalidRegion(format!("{r} is not a subinterval of the domain")));
        }
    }
    for (i, r) in region.iter().enumerate() {
        if region[i + 1..].iter().any(|s| r.intersect(s).is_some()) {
            return Err(InvolutionError::InvalidRegion(format!("{r} overlaps another interval")));
        }
    }
    Ok(())
}

/// First return to the union `region` of disjoint open intervals.
pub fn first_return(t: &LinearInvolution, region: &[LabeledInterval], horizon: usize) -> Result<Vec<Piece>> {
    lifted_first_return(t, region, &CosetTable::trivial(t.k()), horizon)
}

/// First return of the skew product `(z, s) ↦ (Tz, s·x(z))` to `region × {base}`,
/// starting from the base coset.
pub fn lifted_first_return(
    t: &LinearInvolution,
    region: &[LabeledInterval],
    table: &CosetTable,
    horizon: usize,
) -> Result<Vec<Piece>> {
    check_region(t, region)?;
    let mut tracks: Vec<Track> = region
        .iter()
        .map(|r| Track {
            src: LabeledInterval::new(r.lo.clone(), r.hi.clone(), r.comp),
            map: Affine::identity(),
            comp: r.comp,
            letters: Vec::new(),
            state: 0,
        })
        .collect();
    let mut done: Vec<Piece> = Vec::new();
    for _ in 0..horizon {
        if tracks.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for tr in tracks {
            let (lo, hi) = tr.image();
            let pts = split_points(&lo, &hi, t.cuts(tr.comp).iter().cloned());
            for ab in pts.windows(2) {
                let x = t.locate(&Pt::new(ab[0].midpoint(&ab[1]), tr.comp))?;
                let (step, comp) = t.step_map(x);
                let src = tr.restrict(&ab[0], &ab[1]);
                let mut letters = tr.letters.clone();
                letters.push(x);
                let moved = Track { src, map: step.after(&tr.map), comp, letters, state: table.step(tr.state, x) };
                if moved.state != 0 {
                    next.push(moved);
                    continue;
                }
                let (mlo, mhi) = moved.image();
                let bounds = region.iter().filter(|r| r.comp == comp).flat_map(|r| [r.lo.clone(), r.hi.clone()]);
                let pts = split_points(&mlo, &mhi, bounds);
                for cd in pts.windows(2) {
                    let mid = Pt::new(cd[0].midpoint(&cd[1]), comp);
                    let part = Track {
                        src: moved.restrict(&cd[0], &cd[1]),
                        map: moved.map.clone(),
                        comp,
                        letters: moved.letters.clone(),
                        state: moved.state,
                    };
                    if region.iter().any(|r| r.contains(&mid)) {
                        done.push(finish(part));
                    } else {
                        next.push(part);
                    }
                }
            }
        }
        tracks = next;
    }
    if !tracks.is_empty() {
        return Err(InvolutionError::HorizonExhausted { horizon, open: tracks.len() });
    }
    Ok(merge(done))
}

fn finish(tr: Track) -> Piece {
    let (lo, hi) = tr.image();
    let itinerary = RWord::from_reduced(tr.letters).expect("natural codings are reduced");
    Piece {
        domain: tr.src.with_label(itinerary.clone()),
        image: LabeledInterval::new(lo, hi, tr.comp),
        itinerary,
        map: tr.map,
    }
}

fn merge(mut pieces: Vec<Piece>) -> Vec<Piece> {
    pieces.sort_by(|p, q| (p.domain.comp, &p.domain.lo).cmp(&(q.domain.comp, &q.domain.lo)));
    let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
    for p in pieces {
        if let Some(last) = out.last_mut() {
            if last.domain.comp == p.domain.comp && last.domain.hi == p.domain.lo && last.itinerary == p.itinerary {
                last.domain.hi = p.domain.hi;
                let (lo, hi) = last.map.image(&last.domain.lo, &last.domain.hi);
                last.image.lo = lo;
                last.image.hi = hi;
                continue;
            }
        }
        out.push(p);
    }
    out
}

/// Which subinterval `J` of `I` to induce on.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum InduceWindow {
    /// All of `I`.
    Whole,
    /// The projection of `I_w` to `I`.
    Word(RWord),
    /// An arbitrary `J`; admissibility is the caller's responsibility.
    Unchecked { lo: FieldElem, hi: FieldElem },
}

/// An induced involution together with its letter map and the return pieces.
///
/// The induced involution lives on `(0, |J|)`, identified with `J` by a shift.
#[derive(Clone, Debug)]
pub struct Induced {
    pub involution: LinearInvolution,
    /// New letter ↦ itinerary in the old alphabet.
    pub letter_map: Substitution,
    pub pieces: Vec<Piece>,
    /// Left end of `J`.
    pub offset: FieldElem,
}

/// The involution induced on `J × {0, 1}`.
pub fn induce(t: &LinearInvolution, window: &InduceWindow, horizon: usize) -> Result<Induced> {
    let (lo, hi) = match window {
        InduceWindow::Whole => (FieldElem::zero(), t.interval_length().clone()),
        InduceWindow::Word(w) => {
            let iv = t.interval_of_word(w).ok_or_else(|| InvolutionError::NotInLanguage(w.clone()))?;
            (iv.lo, iv.hi)
        }
        InduceWindow::Unchecked { lo, hi } => (lo.clone(), hi.clone()),
    };
    let region = [LabeledInterval::new(lo.clone(), hi.clone(), 0), LabeledInterval::new(lo.clone(), hi.clone(), 1)];
    let pieces = first_return(t, &region, horizon)?;
    assemble(&pieces, &lo, &hi, t.k()).map(|(involution, letter_map)| Induced {
        involution,
        letter_map,
        pieces,
        offset: lo,
    })
}

/// One Rauzy step: induce on `I` with the shorter of the two rightmost
/// intervals cut off.
pub fn rauzy_step(t: &LinearInvolution, horizon: usize) -> Result<(LinearInvolution, Substitution)> {
    let last = |c: u8| *t.perm().row(c).last().expect("rows are nonempty");
    let (lt, lb) = (t.length(last(0)), t.length(last(1)));
    if lt == lb {
        return Err(InvolutionError::EqualLastLengths);
    }
    let cut = lt.min(lb);
    let hi = t.interval_length() - cut;
    let ind = induce(t, &InduceWindow::Unchecked { lo: FieldElem::zero(), hi }, horizon)?;
    Ok((ind.involution, ind.letter_map))
}

/// Reads a linear involution off the first return to `J × {0, 1}`.
///
/// Letter names: a pair whose itinerary is a single old letter keeps that
/// letter. Remaining pairs take the unused names in order of first appearance
/// (top row, then bottom, left to right), the first appearance being the
/// positive letter, except that a lone remaining pair is oriented so that its
/// name occurs positively in the positive itinerary when possible.
fn assemble(
    pieces: &[Piece],
    lo: &FieldElem,
    hi: &FieldElem,
    old_k: usize,
) -> Result<(LinearInvolution, Substitution)> {
    let bad = |m: &str| InvolutionError::InconsistentInduction(m.to_string());
    if !pieces.len().is_multiple_of(2) {
        return Err(bad("odd number of pieces"));
    }
    let k = pieces.len() / 2;
    if k > MAX_ALPHABET {
        return Err(InvolutionError::AlphabetSize(k));
    }
    for comp in 0..2u8 {
        let mut pos = lo.clone();
        for p in pieces.iter().filter(|p| p.domain.comp == comp) {
            if p.domain.lo != pos {
                return Err(bad("pieces do not tile the window"));
            }
            pos = p.domain.hi.clone();
        }
        if &pos != hi {
            return Err(bad("pieces do not tile the window"));
        }
    }
    let partner: Vec<usize> = pieces
        .iter()
        .map(|p| {
            let target = p.image.mirror();
            pieces.iter().position(|q| q.domain.same_span(&target)).ok_or_else(|| bad("unmatched piece"))
        })
        .collect::<Result<_>>()?;
    for (i, &j) in partner.iter().enumerate() {
        if partner[j] != i || pieces[j].itinerary != pieces[i].itinerary.inverse() {
            return Err(bad("return map is not an involution"));
        }
    }

    let pairs: Vec<(usize, usize)> = (0..pieces.len()).filter(|&i| i < partner[i]).map(|i| (i, partner[i])).collect();
    // (base, index of the positive piece)
    let mut named: Vec<Option<(u8, usize)>> = vec![None; pairs.len()];
    let mut used = BTreeSet::new();
    for (n, &(i, j)) in pairs.iter().enumerate() {
        if let [x] = pieces[i].itinerary.letters() {
            if (x.base as usize) < k && (x.base as usize) < old_k {
                named[n] = Some((x.base, if x.positive { i } else { j }));
                used.insert(x.base);
            }
        }
    }
    let free: Vec<u8> = (0..k as u8).filter(|b| !used.contains(b)).collect();
    let rest: Vec<usize> = (0..pairs.len()).filter(|&n| named[n].is_none()).collect();
    for (&n, &b) in rest.iter().zip(free.iter()) {
        let (i, j) = pairs[n];
        let mut positive = i;
        if rest.len() == 1 {
            let has = |p: usize, x: SignedLetter| pieces[p].itinerary.letters().contains(&x);
            let (pb, nb) = (SignedLetter::pos(b), SignedLetter::neg(b));
            if !has(i, pb) && has(j, pb) && !has(j, nb) {
                positive = j;
            }
        }
        named[n] = Some((b, positive));
    }

    let mut letter_of = vec![SignedLetter::pos(0); pieces.len()];
    let mut lengths = vec![FieldElem::zero(); k];
    let mut images = vec![RWord::empty(); k];
    let mut flips = BTreeSet::new();
    for (n, &(i, j)) in pairs.iter().enumerate() {
        let (b, p) = named[n].expect("every pair named");
        let q = if p == i { j } else { i };
        letter_of[p] = SignedLetter::pos(b);
        letter_of[q] = SignedLetter::neg(b);
        lengths[b as usize] = pieces[p].domain.length();
        images[b as usize] = pieces[p].itinerary.clone();
        if pieces[p].map.reversing {
            flips.insert(b);
        }
    }
    let row = |c: u8| -> Vec<SignedLetter> {
        pieces.iter().enumerate().filter(|(_, p)| p.domain.comp == c).map(|(i, _)| letter_of[i]).collect()
    };
    let perm = GeneralizedPermutation::new(row(0), row(1))?;
    let t = LinearInvolution::build(perm, lengths, Flips::Explicit(flips), Some(hi - lo))?;
    Ok((t, Substitution::new(images)))
}
