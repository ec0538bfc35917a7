//! Planar binary trees, decorated trees, the R/α decoration calculus,
//! and the canonical text grammar.
//!
//! A decoration (a_k, …, a_2, a_1) is read as the operator word
//! ⋯ α^{a_4} R^{a_3} α^{a_2} R^{a_1}, rightmost applied first. Entries
//! other than a_1 are strictly positive; at a leaf, a_1 = 0 forces the
//! sequence to be just (0).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("a tree needs at least one leaf")]
    ZeroLeaves,
    #[error("alpha is not defined on the bare one-leaf tree")]
    AlphaUndefined,
    #[error("invalid decoration {0:?}: {1}")]
    InvalidDecoration(Vec<u64>, &'static str),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlanarBinaryTree {
    Leaf,
    Graft(Box<PlanarBinaryTree>, Box<PlanarBinaryTree>),
}

impl PlanarBinaryTree {
    pub fn leaves(&self) -> usize {
        match self {
            PlanarBinaryTree::Leaf => 1,
            PlanarBinaryTree::Graft(l, r) => l.leaves() + r.leaves(),
        }
    }
}

/// All tree shapes with `n` leaves, in recursive split order.
pub fn enumerate_trees(n: usize) -> Result<Vec<PlanarBinaryTree>, TreeError> {
    if n == 0 {
        return Err(TreeError::ZeroLeaves);
    }
    if n == 1 {
        return Ok(vec![PlanarBinaryTree::Leaf]);
    }
    let mut out = Vec::new();
    for i in 1..n {
        for l in enumerate_trees(i)? {
            for r in enumerate_trees(n - i)? {
                out.push(PlanarBinaryTree::Graft(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    Ok(out)
}

/// Stored in display order: `seq[0] = a_k`, last entry = `a_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decoration(Vec<u64>);

impl Decoration {
    pub fn new(seq: Vec<u64>, at_leaf: bool) -> Result<Self, TreeError> {
        if seq.is_empty() {
            return Err(TreeError::InvalidDecoration(seq, "empty sequence"));
        }
        let k = seq.len();
        for &a in &seq[..k - 1] {
            if a == 0 {
                return Err(TreeError::InvalidDecoration(
                    seq,
                    "entries above a_1 must be positive",
                ));
            }
        }
        if at_leaf && k > 1 && seq[k - 1] == 0 {
            return Err(TreeError::InvalidDecoration(
                seq,
                "at a leaf, a_1 = 0 forces the sequence (0)",
            ));
        }
        Ok(Decoration(seq))
    }

    pub fn zero() -> Self {
        Decoration(vec![0])
    }

    pub fn seq(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0]
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The word as (letter, power) pairs, innermost (rightmost) first;
    /// zero powers skipped.
    pub fn word(&self) -> Vec<(Unary, u64)> {
        let k = self.0.len();
        let mut word = Vec::new();
        for (idx, &a) in self.0.iter().enumerate().rev() {
            let pos = k - idx;
            let letter = if pos % 2 == 1 { Unary::R } else { Unary::Alpha };
            if a > 0 {
                word.push((letter, a));
            }
        }
        word
    }

    /// The operator word, e.g. `α^7 R^4 α^9 R^2`; `id` for (0).
    pub fn op_word(&self) -> String {
        if self.is_zero() {
            return "id".to_string();
        }
        let k = self.0.len();
        let mut parts = Vec::new();
        for (idx, &a) in self.0.iter().enumerate() {
            let pos = k - idx; // position counted from the right
            if a == 0 {
                continue;
            }
            let letter = if pos % 2 == 1 { "R" } else { "α" };
            if a == 1 {
                parts.push(letter.to_string());
            } else {
                parts.push(format!("{letter}^{a}"));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unary {
    R,
    Alpha,
}

impl fmt::Display for Unary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unary::R => write!(f, "R"),
            Unary::Alpha => write!(f, "α"),
        }
    }
}

/// Tree shape with one decoration per node (leaves and internal
/// vertices alike).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecoratedTree {
    Leaf(Decoration),
    Graft(Box<DecoratedTree>, Box<DecoratedTree>, Decoration),
}

impl DecoratedTree {
    pub fn leaf() -> Self {
        DecoratedTree::Leaf(Decoration::zero())
    }

    pub fn leaves(&self) -> usize {
        match self {
            DecoratedTree::Leaf(_) => 1,
            DecoratedTree::Graft(l, r, _) => l.leaves() + r.leaves(),
        }
    }

    pub fn shape(&self) -> PlanarBinaryTree {
        match self {
            DecoratedTree::Leaf(_) => PlanarBinaryTree::Leaf,
            DecoratedTree::Graft(l, r, _) => {
                PlanarBinaryTree::Graft(Box::new(l.shape()), Box::new(r.shape()))
            }
        }
    }

    /// Decoration at v_low: the lowest internal vertex, or the leaf
    /// itself on the 1-tree.
    pub fn root_decoration(&self) -> &Decoration {
        match self {
            DecoratedTree::Leaf(d) => d,
            DecoratedTree::Graft(_, _, d) => d,
        }
    }

    /// Sum of all decoration entries over all nodes.
    pub fn weight(&self) -> u64 {
        match self {
            DecoratedTree::Leaf(d) => d.sum(),
            DecoratedTree::Graft(l, r, d) => l.weight() + r.weight() + d.sum(),
        }
    }

    /// Leaves plus total decoration weight; the truncation measure.
    pub fn complexity(&self) -> u64 {
        self.leaves() as u64 + self.weight()
    }
}

/// Graft two decorated trees; the new lowest internal vertex gets (0).
pub fn graft(l: &DecoratedTree, r: &DecoratedTree) -> DecoratedTree {
    DecoratedTree::Graft(
        Box::new(l.clone()),
        Box::new(r.clone()),
        Decoration::zero(),
    )
}

/// Apply R or α: only the v_low decoration changes. R increments the
/// leading entry when k is odd, otherwise prepends 1; α does the same
/// with the parities swapped. α on the bare 1-tree is undefined.
pub fn apply_unary(t: &DecoratedTree, which: Unary) -> Result<DecoratedTree, TreeError> {
    let bump = |seq: &[u64], on_odd: bool| -> Vec<u64> {
        let k = seq.len();
        let mut s = seq.to_vec();
        if (k % 2 == 1) == on_odd {
            s[0] += 1;
        } else {
            s.insert(0, 1);
        }
        s
    };
    match t {
        DecoratedTree::Leaf(d) => {
            if which == Unary::Alpha && d.is_zero() {
                return Err(TreeError::AlphaUndefined);
            }
            let seq = bump(d.seq(), which == Unary::R);
            Ok(DecoratedTree::Leaf(Decoration::new(seq, true)?))
        }
        DecoratedTree::Graft(l, r, d) => {
            let seq = bump(d.seq(), which == Unary::R);
            Ok(DecoratedTree::Graft(
                l.clone(),
                r.clone(),
                Decoration::new(seq, false)?,
            ))
        }
    }
}

/// Unique decomposition of an n-tree, n ≥ 2: the two grafted subtrees
/// plus the operator word (as (letter, power) pairs, innermost first)
/// that rebuilds the v_low decoration from (0).
pub fn decompose(t: &DecoratedTree) -> Option<(DecoratedTree, DecoratedTree, Vec<(Unary, u64)>)> {
    match t {
        DecoratedTree::Leaf(_) => None,
        DecoratedTree::Graft(l, r, d) => Some(((**l).clone(), (**r).clone(), d.word())),
    }
}

/// Re-apply a decomposition word to a graft.
pub fn apply_word(t: &DecoratedTree, word: &[(Unary, u64)]) -> Result<DecoratedTree, TreeError> {
    let mut cur = t.clone();
    for &(letter, power) in word {
        for _ in 0..power {
            cur = apply_unary(&cur, letter)?;
        }
    }
    Ok(cur)
}

fn dec_to_string(d: &Decoration) -> String {
    let s: Vec<String> = d.seq().iter().map(|a| a.to_string()).collect();
    format!("[{}]", s.join(","))
}

/// Canonical text form; the (0) decoration is elided.
pub fn serialize(t: &DecoratedTree) -> String {
    match t {
        DecoratedTree::Leaf(d) => {
            if d.is_zero() {
                "L".to_string()
            } else {
                format!("L{}", dec_to_string(d))
            }
        }
        DecoratedTree::Graft(l, r, d) => {
            let base = format!("({},{})", serialize(l), serialize(r));
            if d.is_zero() {
                base
            } else {
                format!("{}{}", base, dec_to_string(d))
            }
        }
    }
}

struct TreeParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> TreeParser<'a> {
    fn err(&self, msg: &str) -> TreeError {
        TreeError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), TreeError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn uint(&mut self) -> Result<u64, TreeError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn dec(&mut self, at_leaf: bool) -> Result<Decoration, TreeError> {
        if self.peek() != Some(b'[') {
            return Ok(Decoration::zero());
        }
        let dec_start = self.pos;
        self.pos += 1;
        let mut seq = vec![self.uint()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            seq.push(self.uint()?);
        }
        self.expect(b']')?;
        Decoration::new(seq, at_leaf).map_err(|e| TreeError::Parse {
            pos: dec_start,
            msg: e.to_string(),
        })
    }

    fn tree(&mut self) -> Result<DecoratedTree, TreeError> {
        match self.peek() {
            Some(b'L') => {
                self.pos += 1;
                Ok(DecoratedTree::Leaf(self.dec(true)?))
            }
            Some(b'(') => {
                self.pos += 1;
                let l = self.tree()?;
                self.expect(b',')?;
                let r = self.tree()?;
                self.expect(b')')?;
                Ok(DecoratedTree::Graft(
                    Box::new(l),
                    Box::new(r),
                    self.dec(false)?,
                ))
            }
            _ => Err(self.err("expected `L` or `(`")),
        }
    }
}

pub fn parse(s: &str) -> Result<DecoratedTree, TreeError> {
    let mut p = TreeParser {
        s: s.as_bytes(),
        pos: 0,
    };
    let t = p.tree()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

/// All valid decoration sequences with entry sum ≤ `budget`, ordered by
/// sum then lexicographically.
fn decorations_up_to(budget: u64, at_leaf: bool) -> Vec<Decoration> {
    let mut out = Vec::new();
    for total in 0..=budget {
        let mut of_sum = Vec::new();
        for a1 in 0..=total {
            let rest = total - a1;
            // compositions of `rest` into positive parts for (a_k..a_2)
            let mut comps: Vec<Vec<u64>> = vec![vec![]];
            if rest > 0 {
                comps = compositions(rest);
            }
            for head in comps {
                let mut seq = head.clone();
                seq.push(a1);
                if let Ok(d) = Decoration::new(seq, at_leaf) {
                    of_sum.push(d);
                }
            }
        }
        of_sum.sort_by(|a, b| {
            a.seq()
                .len()
                .cmp(&b.seq().len())
                .then_with(|| a.seq().cmp(b.seq()))
        });
        out.extend(of_sum);
    }
    out
}

/// All ordered sequences of positive integers summing to m ≥ 1.
fn compositions(m: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for first in 1..=m {
        if first == m {
            out.push(vec![first]);
        } else {
            for mut tail in compositions(m - first) {
                let mut c = vec![first];
                c.append(&mut tail);
                out.push(c);
            }
        }
    }
    out
}

/// All decorated n-trees with total weight ≤ `weight_bound`,
/// deterministic order.
pub fn enumerate_decorated(n: usize, weight_bound: u64) -> Result<Vec<DecoratedTree>, TreeError> {
    if n == 0 {
        return Err(TreeError::ZeroLeaves);
    }
    if n == 1 {
        return Ok(decorations_up_to(weight_bound, true)
            .into_iter()
            .map(DecoratedTree::Leaf)
            .collect());
    }
    let mut out = Vec::new();
    for i in 1..n {
        for l in enumerate_decorated(i, weight_bound)? {
            let wl = l.weight();
            for r in enumerate_decorated(n - i, weight_bound - wl)? {
                let wr = r.weight();
                for d in decorations_up_to(weight_bound - wl - wr, false) {
                    out.push(DecoratedTree::Graft(
                        Box::new(l.clone()),
                        Box::new(r.clone()),
                        d,
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Tag for which product formed an internal vertex in the dendriform
/// free object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

/// Tree with (α-power, side) decorations on internal vertices only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModifiedDecoratedTree {
    Leaf,
    Graft(Box<ModifiedDecoratedTree>, Box<ModifiedDecoratedTree>, u64, Side),
}

impl ModifiedDecoratedTree {
    pub fn leaves(&self) -> usize {
        match self {
            ModifiedDecoratedTree::Leaf => 1,
            ModifiedDecoratedTree::Graft(l, r, _, _) => l.leaves() + r.leaves(),
        }
    }

    pub fn weight(&self) -> u64 {
        match self {
            ModifiedDecoratedTree::Leaf => 0,
            ModifiedDecoratedTree::Graft(l, r, a, _) => l.weight() + r.weight() + a,
        }
    }

    pub fn complexity(&self) -> u64 {
        self.leaves() as u64 + self.weight()
    }

    pub fn graft(l: &Self, r: &Self, side: Side) -> Self {
        ModifiedDecoratedTree::Graft(Box::new(l.clone()), Box::new(r.clone()), 0, side)
    }

    /// α at tree level: bump the root power. Undefined on the 1-tree
    /// (callers route that case to the base module's twisting map).
    pub fn apply_alpha(&self) -> Result<Self, TreeError> {
        match self {
            ModifiedDecoratedTree::Leaf => Err(TreeError::AlphaUndefined),
            ModifiedDecoratedTree::Graft(l, r, a, s) => Ok(ModifiedDecoratedTree::Graft(
                l.clone(),
                r.clone(),
                a + 1,
                *s,
            )),
        }
    }
}

/// All modified decorated n-trees with weight ≤ bound.
pub fn enumerate_modified(n: usize, weight_bound: u64) -> Result<Vec<ModifiedDecoratedTree>, TreeError> {
    if n == 0 {
        return Err(TreeError::ZeroLeaves);
    }
    if n == 1 {
        return Ok(vec![ModifiedDecoratedTree::Leaf]);
    }
    let mut out = Vec::new();
    for i in 1..n {
        for l in enumerate_modified(i, weight_bound)? {
            let wl = l.weight();
            for r in enumerate_modified(n - i, weight_bound - wl)? {
                let wr = r.weight();
                for a in 0..=(weight_bound - wl - wr) {
                    for side in [Side::L, Side::R] {
                        out.push(ModifiedDecoratedTree::Graft(
                            Box::new(l.clone()),
                            Box::new(r.clone()),
                            a,
                            side,
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}
