//! Helpers shared by the integration tests: random instances and independent oracles.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use linvol::involution::{Flips, GeneralizedPermutation, LinearInvolution};
use linvol::word::{RWord, SignedLetter};
use linvol::FieldElem;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random coherent nonorientable involution on `k` letters with rational lengths.
///
/// Lengths are random fractions with a large prime denominator; the letters
/// whose two intervals sit on the bottom row are rescaled so that both rows
/// have the same total length.
pub fn random_involution<R: Rng>(rng: &mut R, k: usize) -> LinearInvolution {
    loop {
        let mut letters: Vec<SignedLetter> = SignedLetter::all(k).collect();
        letters.shuffle(rng);
        let split = rng.gen_range(1..2 * k);
        let (top, bottom) = letters.split_at(split);
        let both_in = |row: &[SignedLetter]| -> BTreeSet<u8> {
            (0..k as u8)
                .filter(|&b| row.contains(&SignedLetter::pos(b)) && row.contains(&SignedLetter::neg(b)))
                .collect()
        };
        let (tt, bb) = (both_in(top), both_in(bottom));
        if tt.is_empty() || bb.is_empty() {
            continue;
        }
        let mut lengths: Vec<BigRational> =
            (0..k).map(|_| BigRational::new(BigInt::from(rng.gen_range(1_000..100_000)), BigInt::from(99_991))).collect();
        let sum = |set: &BTreeSet<u8>, l: &[BigRational]| set.iter().map(|&b| l[b as usize].clone()).sum::<BigRational>();
        let scale = sum(&tt, &lengths) / sum(&bb, &lengths);
        for &b in &bb {
            lengths[b as usize] = &lengths[b as usize] * &scale;
        }
        let perm = GeneralizedPermutation::new(top.to_vec(), bottom.to_vec()).expect("shuffled letters");
        let lengths = lengths.into_iter().map(FieldElem::from_rational).collect();
        return LinearInvolution::build(perm, lengths, Flips::Coherent, None).expect("rows balanced");
    }
}

/// A random transitive action of `k` letters on `d` points, as permutations.
pub fn random_transitive<R: Rng>(rng: &mut R, k: usize, d: usize) -> Vec<Vec<usize>> {
    loop {
        let perms: Vec<Vec<usize>> = (0..k)
            .map(|_| {
                let mut p: Vec<usize> = (0..d).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        let mut seen = vec![false; d];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for p in &perms {
                let j = p[i];
                let back = p.iter().position(|&x| x == i).expect("permutation");
                for n in [j, back] {
                    if !seen[n] {
                        seen[n] = true;
                        queue.push_back(n);
                    }
                }
            }
        }
        if seen.iter().all(|&s| s) {
            return perms;
        }
    }
}

fn product(u: &RWord, v: &RWord) -> RWord {
    u.concat_reduce(v)
}

fn total(t: &[RWord]) -> usize {
    t.iter().map(RWord::len).sum()
}

/// Single Nielsen moves `u_i ← u_i·u_j^{±1}` or `u_j^{±1}·u_i`, `i ≠ j`.
fn moves(t: &[RWord]) -> Vec<Vec<RWord>> {
    let mut out = Vec::new();
    for i in 0..t.len() {
        for j in 0..t.len() {
            if i == j {
                continue;
            }
            for v in [t[j].clone(), t[j].inverse()] {
                for new in [product(&t[i], &v), product(&v, &t[i])] {
                    let mut next = t.to_vec();
                    next[i] = new;
                    out.push(next);
                }
            }
        }
    }
    out
}

/// Canonical form of a tuple up to inverting and permuting its entries.
fn canon(t: &[RWord]) -> Vec<RWord> {
    let mut v: Vec<RWord> = t.iter().map(|w| w.clone().min(w.inverse())).collect();
    v.sort();
    v
}

/// Nielsen reduction by brute force. Returns `None` if the tuple is not a free
/// basis of what it generates, else its Nielsen-reduced form (canonical).
///
/// Length-decreasing moves are applied greedily. When none applies, every
/// tuple reachable through length-preserving moves is searched for one that
/// admits a decreasing move; if there is none the tuple is Nielsen reduced.
pub fn nielsen_reduce(tuple: &[RWord]) -> Option<Vec<RWord>> {
    let mut cur = canon(tuple);
    'outer: loop {
        if cur.iter().any(RWord::is_empty) {
            return None;
        }
        let level = total(&cur);
        let mut seen = BTreeSet::from([cur.clone()]);
        let mut queue = VecDeque::from([cur.clone()]);
        while let Some(t) = queue.pop_front() {
            for m in moves(&t) {
                let c = canon(&m);
                let len = total(&c);
                if len < level {
                    cur = c;
                    continue 'outer;
                }
                if len == level && seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        return Some(cur);
    }
}

/// Oracle answer for a symmetric set over `{a, b}`: (free basis?, generates F₂?).
pub fn nielsen_verdict(x: &BTreeSet<RWord>) -> (bool, bool) {
    let transversal: Vec<RWord> = x.iter().filter(|w| **w <= w.inverse()).cloned().collect();
    match nielsen_reduce(&transversal) {
        None => (false, false),
        Some(r) => {
            let a = RWord::letter(SignedLetter::pos(0));
            let b = RWord::letter(SignedLetter::pos(1));
            (true, r == vec![a, b])
        }
    }
}

/// All reduced words of length `1..=n` over `k` letters.
pub fn all_words(k: usize, n: usize) -> Vec<RWord> {
    let mut out = Vec::new();
    let mut level = vec![RWord::empty()];
    for _ in 0..n {
        level = level.iter().flat_map(|w| SignedLetter::all(k).filter_map(move |x| w.extended(x))).collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// Factors up to length `n`, with inverses, of the fixed point of
/// `a ↦ cB, b ↦ c, c ↦ aB`, obtained by plain string rewriting.
pub fn golden_fixed_point_factors(n: usize) -> BTreeSet<String> {
    fn image(c: char) -> &'static str {
        match c {
            'a' => "cB",
            'b' => "c",
            'c' => "aB",
            'A' => "bC",
            'B' => "C",
            'C' => "bA",
            _ => unreachable!(),
        }
    }
    let mut u = String::from("a");
    // f² fixes a word beginning with a
    while u.len() < 200_000 {
        u = u.chars().map(image).collect::<String>().chars().map(image).collect();
    }
    let chars: Vec<char> = u.chars().collect();
    let swap = |c: char| if c.is_lowercase() { c.to_ascii_uppercase() } else { c.to_ascii_lowercase() };
    assert!(chars.windows(2).all(|p| p[1] != swap(p[0])), "fixed point is reduced");
    let mut out = BTreeSet::from([String::from("1")]);
    for m in 1..=n {
        for f in chars.windows(m) {
            out.insert(f.iter().collect());
            out.insert(f.iter().rev().map(|&c| swap(c)).collect());
        }
    }
    out
}
