//! Subgroups of the free group `F_A` as folded (Stallings) graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::induce::{lifted_first_return, CosetTable, Piece};
use crate::involution::{InvolutionError, LabeledInterval, LinearInvolution};
use crate::word::{RWord, SignedLetter, MAX_ALPHABET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FGroupError {
    #[error("subgroup has infinite index")]
    InfiniteIndex,
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Involution(#[from] InvolutionError),
}

/// Free reduction of an arbitrary letter sequence.
pub fn reduce<I: IntoIterator<Item = SignedLetter>>(letters: I) -> RWord {
    RWord::reduce(letters)
}

pub fn inverse(w: &RWord) -> RWord {
    w.inverse()
}

pub fn concat_reduce(u: &RWord, v: &RWord) -> RWord {
    u.concat_reduce(v)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

/// A folded graph with base vertex 0, vertices numbered breadth-first from the
/// base with letters explored in the order `a < b < … < A < B < …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubgroupGraph {
    k: usize,
    /// `out[v][x.index(k)]`: the end of the edge leaving `v` with label `x`.
    out: Vec<Vec<Option<usize>>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut v = v;
        while self.0[v] != r {
            let next = self.0[v];
            self.0[v] = r;
            v = next;
        }
        r
    }
}

/// Stallings folding of the bouquet of `generators` over an alphabet of size `k`.
pub fn fold(k: usize, generators: &[RWord]) -> SubgroupGraph {
    assert!(k <= MAX_ALPHABET);
    let k = k.max(generators.iter().map(|g| g.alphabet_bound()).max().unwrap_or(0));
    // adj[v]: label index → neighbour (possibly stale; resolve with `find`)
    let mut adj: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
    let mut uf = UnionFind(vec![0]);
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let link = |adj: &mut Vec<BTreeMap<usize, usize>>, pending: &mut Vec<(usize, usize)>, u, x: SignedLetter, v| {
        for (from, y, to) in [(u, x, v), (v, x.inverse(), u)] {
            let slot: &mut BTreeMap<usize, usize> = &mut adj[from];
            match slot.get(&y.index(k)) {
                Some(&old) => pending.push((old, to)),
                None => {
                    slot.insert(y.index(k), to);
                }
            }
        }
    };
    for g in generators.iter().filter(|g| !g.is_empty()) {
        let mut cur = 0;
        for (i, &x) in g.letters().iter().enumerate() {
            let next = if i + 1 == g.len() {
                0
            } else {
                adj.push(BTreeMap::new());
                uf.0.push(uf.0.len());
                adj.len() - 1
            };
            link(&mut adj, &mut pending, cur, x, next);
            cur = next;
        }
    }
    while let Some((a, b)) = pending.pop() {
        let (a, b) = (uf.find(a), uf.find(b));
        if a == b {
            continue;
        }
        let (keep, gone) = if adj[a].len() >= adj[b].len() { (a, b) } else { (b, a) };
        uf.0[gone] = keep;
        for (label, t) in std::mem::take(&mut adj[gone]) {
            match adj[keep].get(&label) {
                Some(&old) => pending.push((old, t)),
                None => {
                    adj[keep].insert(label, t);
                }
            }
        }
    }
    let mut out: BTreeMap<usize, Vec<Option<usize>>> = BTreeMap::new();
    for (v, edges) in adj.iter().enumerate() {
        if uf.find(v) != v {
            continue;
        }
        let row = edges.iter().map(|(&label, &t)| (label, t)).collect::<Vec<_>>();
        let entry = out.entry(v).or_insert_with(|| vec![None; 2 * k]);
        for (label, t) in row {
            entry[label] = Some(uf.find(t));
        }
    }
    let base = uf.find(0);
    SubgroupGraph::canonical(k, base, &out)
}

impl SubgroupGraph {
    fn canonical(k: usize, base: usize, out: &BTreeMap<usize, Vec<Option<usize>>>) -> Self {
        let mut order: BTreeMap<usize, usize> = BTreeMap::from([(base, 0)]);
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for x in SignedLetter::all(k) {
                if let Some(&Some(u)) = out.get(&v).map(|row| &row[x.index(k)]) {
                    if !order.contains_key(&u) {
                        order.insert(u, order.len());
                        queue.push_back(u);
                    }
                }
            }
        }
        let mut table = vec![vec![None; 2 * k]; order.len()];
        for (&old, &new) in &order {
            if let Some(row) = out.get(&old) {
                for (i, t) in row.iter().enumerate() {
                    table[new][i] = t.map(|u| order[&u]);
                }
            }
        }
        SubgroupGraph { k, out: table }
    }

    /// The graph of the stabiliser of point 0 under the action where letter `i`
    /// acts by `perms[i]` (on the right). Points outside the orbit of 0 are dropped.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self, FGroupError> {
        let k = perms.len();
        let n = perms.first().map_or(1, |p| p.len());
        if k == 0 || k > MAX_ALPHABET || n == 0 {
            return Err(FGroupError::Malformed("need 1..26 letters and a nonempty point set".into()));
        }
        let mut out: BTreeMap<usize, Vec<Option<usize>>> = BTreeMap::new();
        for (b, p) in perms.iter().enumerate() {
            let mut hit = vec![false; n];
            if p.len() != n || p.iter().any(|&j| j >= n || std::mem::replace(&mut hit[j], true)) {
                return Err(FGroupError::Malformed(format!("entry {b} is not a permutation of 0..{n}")));
            }
            let x = SignedLetter::pos(b as u8);
            for (i, &j) in p.iter().enumerate() {
                out.entry(i).or_insert_with(|| vec![None; 2 * k])[x.index(k)] = Some(j);
                out.entry(j).or_insert_with(|| vec![None; 2 * k])[x.inverse().index(k)] = Some(i);
            }
        }
        Ok(SubgroupGraph::canonical(k, 0, &out))
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn base(&self) -> usize {
        0
    }

    pub fn target(&self, v: usize, x: SignedLetter) -> Option<usize> {
        self.out.get(v)?.get(x.index(self.k)).copied().flatten()
    }

    /// Positively labelled edges `(src, label, dst)` in canonical order.
    pub fn edges(&self) -> Vec<(usize, SignedLetter, usize)> {
        let mut e = Vec::new();
        for v in 0..self.vertex_count() {
            for b in 0..self.k as u8 {
                let x = SignedLetter::pos(b);
                if let Some(u) = self.target(v, x) {
                    e.push((v, x, u));
                }
            }
        }
        e
    }

    pub fn is_complete(&self) -> bool {
        self.out.iter().all(|row| row.iter().all(Option::is_some))
    }

    pub fn index(&self) -> Index {
        if self.is_complete() {
            Index::Finite(self.vertex_count())
        } else {
            Index::Infinite
        }
    }

    pub fn rank(&self) -> usize {
        self.edges().len() + 1 - self.vertex_count()
    }

    /// The vertex reached by reading `w` from `v`, if the path exists.
    pub fn trace(&self, v: usize, w: &RWord) -> Option<usize> {
        w.letters().iter().try_fold(v, |cur, &x| self.target(cur, x))
    }

    pub fn member(&self, w: &RWord) -> bool {
        self.trace(0, w) == Some(0)
    }

    /// A free basis: one generator per edge outside a breadth-first spanning tree.
    pub fn generators(&self) -> Vec<RWord> {
        let n = self.vertex_count();
        let mut path: Vec<Option<RWord>> = vec![None; n];
        let mut tree: BTreeSet<(usize, SignedLetter)> = BTreeSet::new();
        path[0] = Some(RWord::empty());
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for x in SignedLetter::all(self.k) {
                if let Some(u) = self.target(v, x) {
                    if path[u].is_none() {
                        let p = path[v].as_ref().expect("visited").concat_reduce(&RWord::letter(x));
                        path[u] = Some(p);
                        tree.insert((v, x));
                        tree.insert((u, x.inverse()));
                        queue.push_back(u);
                    }
                }
            }
        }
        self.edges()
            .into_iter()
            .filter(|&(u, x, _)| !tree.contains(&(u, x)))
            .map(|(u, x, v)| {
                let pu = path[u].as_ref().expect("connected");
                let pv = path[v].as_ref().expect("connected");
                pu.concat_reduce(&RWord::letter(x)).concat_reduce(&pv.inverse())
            })
            .collect()
    }

    /// Subgroup inclusion `other ≤ self`.
    pub fn contains_subgroup(&self, other: &SubgroupGraph) -> bool {
        other.generators().iter().all(|g| self.member(g))
    }

    pub fn same_subgroup(&self, other: &SubgroupGraph) -> bool {
        self.contains_subgroup(other) && other.contains_subgroup(self)
    }

    /// Coset action for a finite-index subgroup.
    pub fn coset_table(&self) -> Result<CosetTable, FGroupError> {
        if !self.is_complete() {
            return Err(FGroupError::InfiniteIndex);
        }
        let next = self.out.iter().map(|row| row.iter().map(|t| t.expect("complete")).collect()).collect();
        Ok(CosetTable::new(self.k, next)?)
    }
}

impl fmt::Display for SubgroupGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.vertex_count())?;
        writeln!(f, "base {}", self.base())?;
        for (u, x, v) in self.edges() {
            writeln!(f, "edge {u} {x} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for SubgroupGraph {
    type Err = FGroupError;

    /// Reads the line format written by `Display`; the graph is refolded and
    /// renumbered, so the base vertex may have any number.
    fn from_str(s: &str) -> Result<Self, FGroupError> {
        let mut n = None;
        let mut base = 0;
        let mut edges = Vec::new();
        for (i, line) in s.lines().enumerate() {
            let err = |msg: &str| FGroupError::Parse { line: i + 1, msg: msg.to_string() };
            let parts: Vec<&str> = line.split('#').next().unwrap_or("").split_whitespace().collect();
            let num = |t: &str| t.parse::<usize>().map_err(|_| err("expected a number"));
            match parts.as_slice() {
                [] => {}
                ["vertices", c] => n = Some(num(c)?),
                ["base", b] => base = num(b)?,
                ["edge", u, x, v] => {
                    let mut cs = x.chars();
                    let (Some(c), None) = (cs.next(), cs.next()) else {
                        return Err(err("edge label must be one letter"));
                    };
                    let x = SignedLetter::from_char(c).map_err(|e| err(&e.to_string()))?;
                    edges.push((num(u)?, x, num(v)?));
                }
                _ => return Err(err("expected `vertices N`, `base V` or `edge U x V`")),
            }
        }
        let n = n.ok_or(FGroupError::Parse { line: 0, msg: "missing `vertices` line".into() })?;
        if base >= n || edges.iter().any(|&(u, _, v)| u >= n || v >= n) {
            return Err(FGroupError::Malformed("vertex number out of range".into()));
        }
        let k = edges.iter().map(|(_, x, _)| x.base as usize + 1).max().unwrap_or(0);
        // spanning-tree generators of the described graph, then fold
        let mut adj: Vec<Vec<(SignedLetter, usize)>> = vec![Vec::new(); n];
        for &(u, x, v) in &edges {
            adj[u].push((x, v));
            adj[v].push((x.inverse(), u));
        }
        let mut path: Vec<Option<Vec<SignedLetter>>> = vec![None; n];
        path[base] = Some(Vec::new());
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for &(x, u) in &adj[v] {
                if path[u].is_none() {
                    let mut p = path[v].clone().expect("visited");
                    p.push(x);
                    path[u] = Some(p);
                    queue.push_back(u);
                }
            }
        }
        if path.iter().any(Option::is_none) {
            return Err(FGroupError::Malformed("graph is not connected".into()));
        }
        let loops: Vec<RWord> = edges
            .iter()
            .map(|&(u, x, v)| {
                let pu = path[u].clone().expect("connected");
                let pv = RWord::reduce(path[v].clone().expect("connected"));
                RWord::reduce(pu.into_iter().chain([x])).concat_reduce(&pv.inverse())
            })
            .collect();
        let g = fold(k, &loops);
        // a folded input graph must survive folding unchanged in size
        if g.vertex_count() != n || g.edges().len() != edges.len() {
            return Err(FGroupError::Malformed("graph is not folded".into()));
        }
        Ok(g)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisVerdict {
    Yes,
    NotSymmetric,
    NotFree,
    WrongSubgroup,
}

impl fmt::Display for BasisVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisVerdict::Yes => "yes",
            BasisVerdict::NotSymmetric => "not_symmetric",
            BasisVerdict::NotFree => "not_free",
            BasisVerdict::WrongSubgroup => "wrong_subgroup",
        })
    }
}

/// Whether `X` is a symmetric basis of the subgroup `target`: `X = X⁻¹` and
/// a transversal of the inverse pairs is a free basis of `target`.
pub fn is_symmetric_basis(x: &BTreeSet<RWord>, target: &SubgroupGraph) -> BasisVerdict {
    if !x.len().is_multiple_of(2) || x.iter().any(|w| !x.contains(&w.inverse())) {
        return BasisVerdict::NotSymmetric;
    }
    if x.contains(&RWord::empty()) {
        return BasisVerdict::NotFree;
    }
    let gens: Vec<RWord> = x.iter().cloned().collect();
    let g = fold(target.alphabet_size(), &gens);
    if g.rank() != x.len() / 2 {
        return BasisVerdict::NotFree;
    }
    if !g.same_subgroup(target) {
        return BasisVerdict::WrongSubgroup;
    }
    BasisVerdict::Yes
}

/// The bouquet: the whole free group on `k` letters.
pub fn free_group(k: usize) -> SubgroupGraph {
    let letters: Vec<RWord> = (0..k as u8).map(|b| RWord::letter(SignedLetter::pos(b))).collect();
    fold(k, &letters)
}

/// The index-2 subgroup of words with an even number of odd letters.
pub fn even_subgroup(t: &LinearInvolution) -> SubgroupGraph {
    let k = t.k();
    let perms: Vec<Vec<usize>> = (0..k as u8)
        .map(|b| if t.is_even_letter(SignedLetter::pos(b)) { vec![0, 1] } else { vec![1, 0] })
        .collect();
    SubgroupGraph::from_permutations(&perms).expect("parity action is well formed")
}

/// The skew product `T̃(z, Gw) = (Tz, Gw·x(z))` on `Î × G\F_A`.
#[derive(Clone, Debug)]
pub struct CosetLift<'a> {
    t: &'a LinearInvolution,
    table: CosetTable,
}

pub fn coset_lift<'a>(t: &'a LinearInvolution, g: &SubgroupGraph) -> Result<CosetLift<'a>, FGroupError> {
    if g.alphabet_size() != t.k() {
        return Err(FGroupError::Malformed(format!(
            "subgroup lives on {} letters, the involution on {}",
            g.alphabet_size(),
            t.k()
        )));
    }
    Ok(CosetLift { t, table: g.coset_table()? })
}

impl CosetLift<'_> {
    pub fn sheets(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    /// First return to `region × {G}` starting on the sheet `G`.
    pub fn first_return(&self, region: &[LabeledInterval], horizon: usize) -> Result<Vec<Piece>, FGroupError> {
        Ok(lifted_first_return(self.t, region, &self.table, horizon)?)
    }

    /// First return to `Î × {G}`.
    pub fn first_return_to_base(&self, horizon: usize) -> Result<Vec<Piece>, FGroupError> {
        let len = self.t.interval_length();
        let region = [
            LabeledInterval::new(crate::numeric::FieldElem::zero(), len.clone(), 0),
            LabeledInterval::new(crate::numeric::FieldElem::zero(), len.clone(), 1),
        ];
        self.first_return(&region, horizon)
    }
}
