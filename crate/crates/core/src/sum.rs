//! The long-rule disjunctive sum and the identity machinery around it.
//!
//! `G + H = {G^L + H, G + H^L | G^S + H^S | G^R + H, G + H^R}`: a move is made
//! in exactly one component and play stops only when the mover has no move in
//! any component.

use std::collections::HashMap;

use thiserror::Error;

use crate::term::{negate, GameTerm};
use crate::value::Score;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumError {
    #[error("the zero game has no distinguishing context")]
    IdenticalToZero,
}

/// Memo table for repeated sums over shared subterms.
///
/// Entries hold their operands alive, so address-keyed lookups stay valid for
/// the lifetime of the cache.
#[derive(Default)]
pub struct SumCache {
    memo: HashMap<(usize, usize), (GameTerm, GameTerm, GameTerm)>,
}

impl SumCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sum(&mut self, g: &GameTerm, h: &GameTerm) -> GameTerm {
        let key = (g.addr(), h.addr());
        if let Some((_, _, done)) = self.memo.get(&key) {
            return done.clone();
        }
        let mut left = Vec::with_capacity(g.left().len() + h.left().len());
        for gl in g.left() {
            left.push(self.sum(gl, h));
        }
        for hl in h.left() {
            left.push(self.sum(g, hl));
        }
        let mut right = Vec::with_capacity(g.right().len() + h.right().len());
        for gr in g.right() {
            right.push(self.sum(gr, h));
        }
        for hr in h.right() {
            right.push(self.sum(g, hr));
        }
        let out = GameTerm::new(left, g.score() + h.score(), right);
        self.memo.insert(key, (g.clone(), h.clone(), out.clone()));
        out
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

/// The expanded sum term `G +_l H`.
pub fn sum(g: &GameTerm, h: &GameTerm) -> GameTerm {
    SumCache::new().sum(g, h)
}

/// Sum of any number of games; the empty sum is `0`.
pub fn sum_all<'a>(games: impl IntoIterator<Item = &'a GameTerm>) -> GameTerm {
    let mut cache = SumCache::new();
    games.into_iter().fold(zero(), |acc, g| cache.sum(&acc, g))
}

/// `{. | 0 | .}`, the identity of the sum.
pub fn zero() -> GameTerm {
    GameTerm::leaf(Score::zero())
}

/// Games `{. | n | .}`, the only invertible ones.
pub fn is_numeric(g: &GameTerm) -> bool {
    g.is_leaf()
}

/// Final scores of `G + X` computed by playing the components side by side,
/// without building the sum term.
///
/// Used for context sweeps, where the same component pairs recur across many
/// contexts.
#[derive(Default)]
pub struct PairEvaluator {
    memo: HashMap<(usize, usize), (Score, Score)>,
    keep: Vec<GameTerm>,
}

impl PairEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Keeps `g` alive for as long as the evaluator, so that its subterms can
    /// be memoized by address.
    pub fn retain(&mut self, g: &GameTerm) {
        self.keep.push(g.clone());
    }

    /// `(left final score, right final score)` of `g + x`.
    ///
    /// Both operands must outlive the evaluator or have been passed to
    /// [`PairEvaluator::retain`].
    pub fn finals(&mut self, g: &GameTerm, x: &GameTerm) -> (Score, Score) {
        let key = (g.addr(), x.addr());
        if let Some(done) = self.memo.get(&key) {
            return done.clone();
        }
        let mut left_best: Option<Score> = None;
        for gl in g.left() {
            let v = self.finals(gl, x).1;
            left_best = Some(left_best.map_or(v.clone(), |b| b.max(v)));
        }
        for xl in x.left() {
            let v = self.finals(g, xl).1;
            left_best = Some(left_best.map_or(v.clone(), |b| b.max(v)));
        }
        let mut right_best: Option<Score> = None;
        for gr in g.right() {
            let v = self.finals(gr, x).0;
            right_best = Some(right_best.map_or(v.clone(), |b| b.min(v)));
        }
        for xr in x.right() {
            let v = self.finals(g, xr).0;
            right_best = Some(right_best.map_or(v.clone(), |b| b.min(v)));
        }
        let here = g.score() + x.score();
        let out = (left_best.unwrap_or_else(|| here.clone()), right_best.unwrap_or(here));
        self.memo.insert(key, out.clone());
        out
    }

    /// Signs of the two final scores of `g + x`.
    pub fn signs(&mut self, g: &GameTerm, x: &GameTerm) -> (i8, i8) {
        let (l, r) = self.finals(g, x);
        (l.signum(), r.signum())
    }

    pub fn clear(&mut self) {
        self.memo.clear();
        self.keep.clear();
    }
}

/// A context `X` whose outcome changes when `G` is added to it, witnessing
/// `G != 0` for every `G` not identical to `0`.
///
/// For a nonzero leaf the empty context `0` already differs. When Left can
/// move in `G`, `X = {. | 1 | -(M+1)}` with `M` the largest absolute score in
/// `G`: alone Left scores 1, but in `G + X` Left must open in `G` and Right
/// answers by dropping to `-(M+1)`, after which nothing can bring the total
/// back to zero. The Right-only case is the mirror image.
pub fn distinguishing_context(g: &GameTerm) -> Result<GameTerm, SumError> {
    if g.is_leaf() {
        return if g.score().is_zero() { Err(SumError::IdenticalToZero) } else { Ok(zero()) };
    }
    if g.left().is_empty() {
        return Ok(negate(&distinguishing_context(&negate(g))?));
    }
    let bound = g.max_abs_score();
    let drop = -(&bound + &Score::from_integer(1));
    Ok(GameTerm::new(Vec::new(), Score::from_integer(1), vec![GameTerm::leaf(drop)]))
}

/// The two parameterized games used to realize every outcome triple:
/// `G = {{{d|c|e}|b|.}|a|.}` and `H = {.|f|{.|g|h}}`.
#[allow(clippy::too_many_arguments)]
pub fn outcome_template(
    a: Score,
    b: Score,
    c: Score,
    d: Score,
    e: Score,
    f: Score,
    g: Score,
    h: Score,
) -> (GameTerm, GameTerm) {
    let inner = GameTerm::new(vec![GameTerm::leaf(d)], c, vec![GameTerm::leaf(e)]);
    let middle = GameTerm::new(vec![inner], b, Vec::new());
    let left_game = GameTerm::new(vec![middle], a, Vec::new());
    let tail = GameTerm::new(Vec::new(), g, vec![GameTerm::leaf(h)]);
    let right_game = GameTerm::new(Vec::new(), f, vec![tail]);
    (left_game, right_game)
}
