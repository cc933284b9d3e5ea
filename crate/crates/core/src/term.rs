//! Scoring-game terms `{L | s | R}` and structural utilities.
//!
//! A [`GameTerm`] is an immutable, reference-counted node. Option sets are
//! stored sorted by [`OrderKey`] with identical members collapsed, so two
//! terms built from the same options in any order are indistinguishable.
//! Subterms are shared, which keeps large sums as compact DAGs; recursive
//! utilities below memoize on node identity for the same reason.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::value::Score;

/// The player owning an option set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "Left",
            Side::Right => "Right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("path {path} does not address a vertex (step {step} is out of range)")]
    InvalidPath { path: NodePath, step: usize },
}

/// One step from a vertex to one of its options.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub side: Side,
    pub index: usize,
}

/// A route from the root of a term to one of its vertices.
///
/// Indices refer to positions in the canonically ordered option sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodePath(pub Vec<Step>);

impl NodePath {
    pub fn root() -> Self {
        NodePath(Vec::new())
    }

    pub fn child(&self, side: Side, index: usize) -> Self {
        let mut steps = self.0.clone();
        steps.push(Step { side, index });
        NodePath(steps)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}{}", step.side.letter(), step.index)?;
        }
        Ok(())
    }
}

/// Total-order key of a term: its full-form serialization.
///
/// Keys compare lexicographically by bytes and are equal exactly when the
/// terms are identical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey(Arc<str>);

impl OrderKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for OrderKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

struct Node {
    left: Box<[GameTerm]>,
    score: Score,
    right: Box<[GameTerm]>,
    hash: u64,
    depth: usize,
    nodes: u64,
    key: OnceLock<OrderKey>,
    shape: OnceLock<Arc<str>>,
    finals: OnceLock<(Score, Score)>,
}

/// A finite scoring-play game `{G^L | G^S | G^R}`.
#[derive(Clone)]
pub struct GameTerm(Arc<Node>);

impl GameTerm {
    /// Builds `{left | score | right}`, sorting both option sets and
    /// collapsing identical members.
    pub fn new(left: Vec<GameTerm>, score: Score, right: Vec<GameTerm>) -> GameTerm {
        Self::new_counting(left, score, right).0
    }

    /// Like [`GameTerm::new`], also reporting how many duplicate options were
    /// collapsed.
    pub fn new_counting(mut left: Vec<GameTerm>, score: Score, mut right: Vec<GameTerm>) -> (GameTerm, usize) {
        let before = left.len() + right.len();
        canonical_options(&mut left);
        canonical_options(&mut right);
        let collapsed = before - left.len() - right.len();
        (Self::from_canonical(left, score, right), collapsed)
    }

    fn from_canonical(left: Vec<GameTerm>, score: Score, right: Vec<GameTerm>) -> GameTerm {
        let mut hasher = DefaultHasher::new();
        score.hash(&mut hasher);
        left.len().hash(&mut hasher);
        for g in &left {
            g.0.hash.hash(&mut hasher);
        }
        right.len().hash(&mut hasher);
        for g in &right {
            g.0.hash.hash(&mut hasher);
        }
        let children = left.iter().chain(right.iter());
        let depth = children.clone().map(|g| g.depth() + 1).max().unwrap_or(0);
        let nodes = children.fold(1u64, |acc, g| acc.saturating_add(g.node_count()));
        GameTerm(Arc::new(Node {
            left: left.into_boxed_slice(),
            score,
            right: right.into_boxed_slice(),
            hash: hasher.finish(),
            depth,
            nodes,
            key: OnceLock::new(),
            shape: OnceLock::new(),
            finals: OnceLock::new(),
        }))
    }

    /// The game `{. | s | .}`.
    pub fn leaf(score: Score) -> GameTerm {
        Self::from_canonical(Vec::new(), score, Vec::new())
    }

    pub fn left(&self) -> &[GameTerm] {
        &self.0.left
    }

    pub fn right(&self) -> &[GameTerm] {
        &self.0.right
    }

    pub fn options(&self, side: Side) -> &[GameTerm] {
        match side {
            Side::Left => self.left(),
            Side::Right => self.right(),
        }
    }

    pub fn score(&self) -> &Score {
        &self.0.score
    }

    /// True when neither player has an option.
    pub fn is_leaf(&self) -> bool {
        self.0.left.is_empty() && self.0.right.is_empty()
    }

    /// Depth of the game tree; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// Number of vertices of the game tree (saturating).
    pub fn node_count(&self) -> u64 {
        self.0.nodes
    }

    pub fn order_key(&self) -> OrderKey {
        self.key_ref().clone()
    }

    /// The order key as a string slice.
    pub fn key_str(&self) -> &str {
        self.key_ref().as_str()
    }

    fn key_ref(&self) -> &OrderKey {
        self.0.key.get_or_init(|| {
            let mut out = String::new();
            write_full(self, &mut out);
            OrderKey(out.into())
        })
    }

    pub fn ptr_eq(&self, other: &GameTerm) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub(crate) fn cached_finals(&self) -> Option<&(Score, Score)> {
        self.0.finals.get()
    }

    pub(crate) fn store_finals(&self, finals: (Score, Score)) -> &(Score, Score) {
        self.0.finals.get_or_init(|| finals)
    }

    /// The vertex addressed by `path`.
    pub fn vertex(&self, path: &NodePath) -> Result<&GameTerm, TermError> {
        let mut at = self;
        for (i, step) in path.0.iter().enumerate() {
            at = at
                .options(step.side)
                .get(step.index)
                .ok_or_else(|| TermError::InvalidPath { path: path.clone(), step: i })?;
        }
        Ok(at)
    }

    /// Every vertex with its path, in preorder (Left options before Right).
    pub fn vertices(&self) -> Vec<(NodePath, GameTerm)> {
        let mut out = Vec::new();
        let mut stack = vec![(NodePath::root(), self.clone())];
        while let Some((path, g)) = stack.pop() {
            for side in [Side::Right, Side::Left] {
                for (i, child) in g.options(side).iter().enumerate().rev() {
                    stack.push((path.child(side, i), child.clone()));
                }
            }
            out.push((path, g));
        }
        out
    }

    /// The largest absolute score anywhere on the game tree.
    pub fn max_abs_score(&self) -> Score {
        let mut seen = HashMap::new();
        max_abs(self, &mut seen)
    }

    /// Shape key under which equivalent terms coincide: termination scores
    /// kept, scores of two-sided vertices masked, option multisets sorted.
    pub(crate) fn shape_key(&self) -> &str {
        self.0.shape.get_or_init(|| {
            let mut out = String::from("{");
            write_shapes(self.left(), &mut out);
            out.push('|');
            if self.is_termination() {
                out.push_str(&self.score().to_string());
            } else {
                out.push('*');
            }
            out.push('|');
            write_shapes(self.right(), &mut out);
            out.push('}');
            out.into()
        })
    }

    /// A vertex where some context could end the sum: one player has no move.
    pub fn is_termination(&self) -> bool {
        self.0.left.is_empty() || self.0.right.is_empty()
    }
}

fn canonical_options(options: &mut Vec<GameTerm>) {
    if options.len() > 1 {
        options.sort_by(|a, b| a.key_str().cmp(b.key_str()));
        options.dedup_by(|a, b| a == b);
    }
}

fn write_full(g: &GameTerm, out: &mut String) {
    out.push('{');
    write_option_keys(g.left(), out);
    out.push('|');
    out.push_str(&g.score().to_string());
    out.push('|');
    write_option_keys(g.right(), out);
    out.push('}');
}

fn write_option_keys(options: &[GameTerm], out: &mut String) {
    if options.is_empty() {
        out.push('.');
    }
    for (i, g) in options.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(g.key_str());
    }
}

fn write_shapes(options: &[GameTerm], out: &mut String) {
    if options.is_empty() {
        out.push('.');
        return;
    }
    let mut shapes: Vec<&str> = options.iter().map(|g| g.shape_key()).collect();
    shapes.sort_unstable();
    out.push_str(&shapes.join(","));
}

fn max_abs(g: &GameTerm, seen: &mut HashMap<usize, Score>) -> Score {
    if let Some(s) = seen.get(&g.addr()) {
        return s.clone();
    }
    let mut best = g.score().abs();
    for child in g.left().iter().chain(g.right()) {
        let m = max_abs(child, seen);
        if m > best {
            best = m;
        }
    }
    seen.insert(g.addr(), best.clone());
    best
}

impl PartialEq for GameTerm {
    fn eq(&self, other: &GameTerm) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        let (a, b) = (&self.0, &other.0);
        a.hash == b.hash
            && a.depth == b.depth
            && a.nodes == b.nodes
            && a.score == b.score
            && a.left == b.left
            && a.right == b.right
    }
}

impl Eq for GameTerm {}

impl Hash for GameTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for GameTerm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by [`OrderKey`].
impl Ord for GameTerm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.ptr_eq(other) {
            return std::cmp::Ordering::Equal;
        }
        self.key_str().cmp(other.key_str())
    }
}

impl fmt::Display for GameTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::print(self, crate::notation::Style::Compact))
    }
}

impl fmt::Debug for GameTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `{. | s | .}`.
pub fn leaf(score: Score) -> GameTerm {
    GameTerm::leaf(score)
}

/// `-G = {-G^R | -G^S | -G^L}`, applied recursively.
pub fn negate(g: &GameTerm) -> GameTerm {
    let mut memo = HashMap::new();
    negate_memo(g, &mut memo)
}

fn negate_memo(g: &GameTerm, memo: &mut HashMap<usize, GameTerm>) -> GameTerm {
    if let Some(done) = memo.get(&g.addr()) {
        return done.clone();
    }
    let left = g.right().iter().map(|o| negate_memo(o, memo)).collect();
    let right = g.left().iter().map(|o| negate_memo(o, memo)).collect();
    let out = GameTerm::new(left, -g.score(), right);
    memo.insert(g.addr(), out.clone());
    out
}

/// Identical game trees (`≅`).
pub fn identical(g: &GameTerm, h: &GameTerm) -> bool {
    g == h
}

/// Same underlying tree with equal scores at every termination vertex (`≡`).
pub fn equivalent(g: &GameTerm, h: &GameTerm) -> bool {
    g == h || g.shape_key() == h.shape_key()
}

/// Whether the vertex at `path` is one where the game can end.
pub fn is_termination_vertex(g: &GameTerm, path: &NodePath) -> Result<bool, TermError> {
    Ok(g.vertex(path)?.is_termination())
}

/// Adds `c` to every vertex score.
pub fn shift(g: &GameTerm, c: &Score) -> GameTerm {
    let mut memo = HashMap::new();
    shift_memo(g, c, &mut memo)
}

fn shift_memo(g: &GameTerm, c: &Score, memo: &mut HashMap<usize, GameTerm>) -> GameTerm {
    if let Some(done) = memo.get(&g.addr()) {
        return done.clone();
    }
    let left = g.left().iter().map(|o| shift_memo(o, c, memo)).collect();
    let right = g.right().iter().map(|o| shift_memo(o, c, memo)).collect();
    let out = GameTerm::new(left, g.score() + c, right);
    memo.insert(g.addr(), out.clone());
    out
}

pub fn term_order_key(g: &GameTerm) -> OrderKey {
    g.order_key()
}

pub fn depth(g: &GameTerm) -> usize {
    g.depth()
}

pub fn node_count(g: &GameTerm) -> u64 {
    g.node_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn s(n: i64) -> Score {
        Score::from_integer(n)
    }

    fn g(text: &str) -> GameTerm {
        parse(text).unwrap()
    }

    #[test]
    fn leaves() {
        assert_eq!(leaf(s(0)).order_key().as_str(), "{.|0|.}");
        assert_eq!(leaf(s(5)).order_key().as_str(), "{.|5|.}");
        assert_eq!(leaf(Score::new(-3, 2)).order_key().as_str(), "{.|-3/2|.}");
        assert!(leaf(s(5)).is_leaf());
    }

    #[test]
    fn negation_unfolds_definition() {
        assert_eq!(negate(&g("{1|0|0}")), g("{0|0|-1}"));
        assert_eq!(negate(&leaf(s(0))), leaf(s(0)));
        let tbf = g("{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}");
        assert_eq!(negate(&negate(&tbf)), tbf);
    }

    #[test]
    fn identity_is_structural() {
        assert!(identical(&g("{1|0|2}"), &g("{1|0|2}")));
        assert!(!identical(&g("{1|1|1}"), &g("{1|0|1}")));
        assert!(identical(&g("{1,2|0|.}"), &g("{2,1,2|0|.}")));
    }

    #[test]
    fn termination_vertices() {
        let g1 = g("{1|0|2}");
        assert!(!is_termination_vertex(&g1, &NodePath::root()).unwrap());
        assert!(is_termination_vertex(&g1, &NodePath::root().child(Side::Left, 0)).unwrap());
        assert!(is_termination_vertex(&g("{0|5|.}"), &NodePath::root()).unwrap());
        let err = is_termination_vertex(&g1, &NodePath::root().child(Side::Right, 3));
        assert!(matches!(err, Err(TermError::InvalidPath { step: 0, .. })));
        let tbf = g("{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}");
        for (path, v) in tbf.vertices() {
            if v.is_leaf() {
                assert!(is_termination_vertex(&tbf, &path).unwrap());
            }
        }
    }

    #[test]
    fn equivalence_masks_two_sided_vertices() {
        assert!(equivalent(&g("{1|1|1}"), &g("{1|0|1}")));
        assert!(equivalent(&g("{3|0|4}"), &g("{3|1|4}")));
        assert!(!equivalent(&g("{1|0|.}"), &g("{1|5|.}")));
        assert!(!equivalent(&g("{1|0|1}"), &g("{1|0|2}")));
    }

    #[test]
    fn equivalence_matches_options_as_multisets() {
        // Option order is decided by the masked root scores here, so pairing
        // options positionally would mismatch them.
        let a = g("{{0|5|0},{0|7|1}|0|.}");
        let b = g("{{0|9|0},{0|-1|1}|0|.}");
        assert!(equivalent(&a, &b));
        assert_ne!(a.left()[0].right(), b.left()[0].right());
    }

    #[test]
    fn shifting() {
        assert_eq!(shift(&leaf(s(0)), &s(2)), leaf(s(2)));
        assert_eq!(shift(&g("{1|0|2}"), &s(-1)), g("{0|-1|1}"));
        let tbf = g("{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}");
        assert_eq!(shift(&tbf, &s(0)), tbf);
    }

    #[test]
    fn order_keys() {
        assert_eq!(leaf(s(0)).order_key(), leaf(s(0)).order_key());
        assert_ne!(leaf(s(0)).order_key(), leaf(s(1)).order_key());
        let mut opts = vec![leaf(s(2)), leaf(s(-1)), leaf(s(1))];
        opts.sort();
        let again = {
            let mut o = opts.clone();
            o.sort();
            o
        };
        assert_eq!(opts, again);
    }

    #[test]
    fn sizes() {
        assert_eq!((depth(&leaf(s(0))), node_count(&leaf(s(0)))), (0, 1));
        assert_eq!((depth(&g("{1|0|2}")), node_count(&g("{1|0|2}"))), (1, 3));
        let tbf = g("{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}");
        assert_eq!((depth(&tbf), node_count(&tbf)), (3, 7));
    }

    #[test]
    fn vertex_lookup_and_paths() {
        let tbf = g("{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}");
        let path = NodePath::root().child(Side::Left, 0).child(Side::Right, 0);
        assert_eq!(tbf.vertex(&path).unwrap(), &g("{-1|-1|.}"));
        assert_eq!(path.to_string(), "L0.R0");
        assert_eq!(tbf.vertices().len(), 7);
        assert_eq!(tbf.max_abs_score(), s(1));
    }

    #[test]
    fn duplicate_options_are_counted() {
        let (t, collapsed) = GameTerm::new_counting(vec![leaf(s(1)), leaf(s(1))], s(0), vec![]);
        assert_eq!(collapsed, 1);
        assert_eq!(t.left().len(), 1);
    }
}
