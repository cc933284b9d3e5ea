//! The relations `>=`, `<=` and `=`: sound proof rules plus a bounded search
//! for refuting contexts.
//!
//! `G >= H` holds when, for every context `X` and every up-set
//! `O in {L_>=, R_>=, L_>, R_>}`, `H + X in O` implies `G + X in O`; `<=` uses
//! the down-sets, and `G = H` asks for equal outcomes of `G + X` and `H + X`.
//! The quantifier over all games is replaced by a finite [`UniverseSpec`], so
//! anything not settled by a sound rule comes back as `Refuted` with a
//! concrete witness or `Unrefuted` at the searched bound.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::score::{Outcome, OutcomeSet};
use crate::sum::PairEvaluator;
use crate::term::{equivalent, identical, GameTerm};
use crate::universe::{enumerate_universe, UniverseError, UniverseSpec};

/// Structural facts that settle a comparison for all contexts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SoundRule {
    Identical,
    /// Equivalent games are equal.
    Equivalent,
    /// `{.|a|.} >= {.|b|.}` whenever `a >= b`: adding a constant shifts both
    /// final scores by the same amount.
    NumericOrder,
}

impl fmt::Display for SoundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SoundRule::Identical => "Identical",
            SoundRule::Equivalent => "Equivalent",
            SoundRule::NumericOrder => "NumericOrder",
        })
    }
}

/// What a refuting context demonstrates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Evidence {
    /// `H + X` lies in the set and `G + X` does not.
    Set(OutcomeSet),
    /// `G + X` and `H + X` have these different outcomes.
    Outcomes { first: Outcome, second: Outcome },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub context: GameTerm,
    pub evidence: Evidence,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.evidence {
            Evidence::Set(set) => write!(f, "X={}, O={set}", self.context),
            Evidence::Outcomes { first, second } => write!(f, "X={}, outcomes {first} vs {second}", self.context),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proved(SoundRule),
    Refuted(Refutation),
    Unrefuted(UniverseSpec),
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            Verdict::Refuted(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Proved(rule) => write!(f, "Proved({rule})"),
            Verdict::Refuted(r) => write!(f, "Refuted({r})"),
            Verdict::Unrefuted(spec) => write!(f, "Unrefuted({spec})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "=",
        }
    }
}

/// Packed signs of the two final scores: `3 * (sl + 1) + (sr + 1)`.
type SignCode = u8;

fn encode(left: i8, right: i8) -> SignCode {
    (3 * (left + 1) + (right + 1)) as u8
}

fn decode(code: SignCode) -> (i8, i8) {
    ((code / 3) as i8 - 1, (code % 3) as i8 - 1)
}

/// For each sign pair of `(G + X, H + X)`, the first set in `sets` that
/// contains `H + X` but not `G + X`.
fn refutation_table(sets: [OutcomeSet; 4]) -> [[Option<OutcomeSet>; 9]; 9] {
    let mut table = [[None; 9]; 9];
    for (g, row) in table.iter_mut().enumerate() {
        for (h, cell) in row.iter_mut().enumerate() {
            let (gl, gr) = decode(g as u8);
            let (hl, hr) = decode(h as u8);
            *cell = sets.into_iter().find(|o| o.contains_signs(hl, hr) && !o.contains_signs(gl, gr));
        }
    }
    table
}

/// Final-score signs of `G + X` for every context `X` of a universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile(Vec<SignCode>);

impl Profile {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Signs of the Left and Right final scores against context `i`.
    pub fn signs(&self, i: usize) -> (i8, i8) {
        decode(self.0[i])
    }

    pub fn outcome(&self, i: usize) -> Outcome {
        let (l, r) = self.signs(i);
        Outcome::from_signs(l, r)
    }
}

/// Comparison engine over one universe of contexts.
///
/// Profiles are cached per game; the cache is shared behind a mutex so a
/// comparator can be used from several threads.
pub struct Comparator {
    spec: UniverseSpec,
    contexts: Vec<GameTerm>,
    up: [[Option<OutcomeSet>; 9]; 9],
    down: [[Option<OutcomeSet>; 9]; 9],
    profiles: Mutex<HashMap<GameTerm, Arc<Profile>>>,
}

impl Comparator {
    pub fn new(spec: &UniverseSpec) -> Result<Self, UniverseError> {
        let contexts = enumerate_universe(spec)?;
        Ok(Self::with_contexts(spec.clone(), contexts))
    }

    /// A comparator over an explicit context list, searched in
    /// [`witness_order`].
    pub fn with_contexts(spec: UniverseSpec, mut contexts: Vec<GameTerm>) -> Self {
        contexts.sort_by(witness_order);
        contexts.dedup();
        Comparator {
            spec,
            contexts,
            up: refutation_table(OutcomeSet::UP),
            down: refutation_table(OutcomeSet::DOWN),
            profiles: Mutex::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &UniverseSpec {
        &self.spec
    }

    pub fn contexts(&self) -> &[GameTerm] {
        &self.contexts
    }

    pub fn profile(&self, g: &GameTerm) -> Arc<Profile> {
        if let Some(p) = self.profiles.lock().expect("profile cache poisoned").get(g) {
            return p.clone();
        }
        let mut eval = PairEvaluator::new();
        eval.retain(g);
        let codes = self
            .contexts
            .iter()
            .map(|x| {
                let (l, r) = eval.signs(g, x);
                encode(l, r)
            })
            .collect();
        let profile = Arc::new(Profile(codes));
        self.profiles
            .lock()
            .expect("profile cache poisoned")
            .entry(g.clone())
            .or_insert(profile)
            .clone()
    }

    /// Sound rule establishing `G >= H`, if any.
    pub fn prove_ge(&self, g: &GameTerm, h: &GameTerm) -> Option<SoundRule> {
        prove_order(g, h, |a, b| a >= b)
    }

    /// Sound rule establishing `G <= H`, if any.
    pub fn prove_le(&self, g: &GameTerm, h: &GameTerm) -> Option<SoundRule> {
        prove_order(g, h, |a, b| a <= b)
    }

    /// Sound rule establishing `G = H`, if any.
    pub fn prove_eq(&self, g: &GameTerm, h: &GameTerm) -> Option<SoundRule> {
        prove_order(g, h, |a, b| a == b)
    }

    pub fn prove(&self, relation: Relation, g: &GameTerm, h: &GameTerm) -> Option<SoundRule> {
        match relation {
            Relation::Ge => self.prove_ge(g, h),
            Relation::Le => self.prove_le(g, h),
            Relation::Eq => self.prove_eq(g, h),
        }
    }

    /// The minimal context refuting `G >= H`, ignoring proof rules.
    pub fn search_ge(&self, g: &GameTerm, h: &GameTerm) -> Option<Refutation> {
        self.search_table(&self.up, g, h)
    }

    /// The minimal context refuting `G <= H`, ignoring proof rules.
    pub fn search_le(&self, g: &GameTerm, h: &GameTerm) -> Option<Refutation> {
        self.search_table(&self.down, g, h)
    }

    /// The minimal context giving `G + X` and `H + X` different outcomes.
    pub fn search_eq(&self, g: &GameTerm, h: &GameTerm) -> Option<Refutation> {
        let (pg, ph) = (self.profile(g), self.profile(h));
        (0..self.contexts.len()).find_map(|i| {
            let (first, second) = (pg.outcome(i), ph.outcome(i));
            (first != second).then(|| Refutation {
                context: self.contexts[i].clone(),
                evidence: Evidence::Outcomes { first, second },
            })
        })
    }

    pub fn search(&self, relation: Relation, g: &GameTerm, h: &GameTerm) -> Option<Refutation> {
        match relation {
            Relation::Ge => self.search_ge(g, h),
            Relation::Le => self.search_le(g, h),
            Relation::Eq => self.search_eq(g, h),
        }
    }

    fn search_table(&self, table: &[[Option<OutcomeSet>; 9]; 9], g: &GameTerm, h: &GameTerm) -> Option<Refutation> {
        let (pg, ph) = (self.profile(g), self.profile(h));
        pg.0.iter().zip(&ph.0).enumerate().find_map(|(i, (&a, &b))| {
            table[a as usize][b as usize].map(|set| Refutation {
                context: self.contexts[i].clone(),
                evidence: Evidence::Set(set),
            })
        })
    }

    /// Indices of contexts refuting `G >= H` (or `G <= H` with `down`).
    fn refuting_indices(&self, down: bool, g: &GameTerm, h: &GameTerm) -> Vec<usize> {
        let table = if down { &self.down } else { &self.up };
        let (pg, ph) = (self.profile(g), self.profile(h));
        (0..self.contexts.len())
            .filter(|&i| table[pg.0[i] as usize][ph.0[i] as usize].is_some())
            .collect()
    }

    pub fn verdict(&self, relation: Relation, g: &GameTerm, h: &GameTerm) -> Verdict {
        if let Some(rule) = self.prove(relation, g, h) {
            return Verdict::Proved(rule);
        }
        match self.search(relation, g, h) {
            Some(r) => Verdict::Refuted(r),
            None => Verdict::Unrefuted(self.spec.clone()),
        }
    }

    pub fn greater_equal(&self, g: &GameTerm, h: &GameTerm) -> Verdict {
        self.verdict(Relation::Ge, g, h)
    }

    pub fn less_equal(&self, g: &GameTerm, h: &GameTerm) -> Verdict {
        self.verdict(Relation::Le, g, h)
    }

    pub fn equal(&self, g: &GameTerm, h: &GameTerm) -> Verdict {
        self.verdict(Relation::Eq, g, h)
    }

    /// Whether exactly the same contexts refute `G >= H` and `H <= G`.
    pub fn duality_check(&self, g: &GameTerm, h: &GameTerm) -> bool {
        self.refuting_indices(false, g, h) == self.refuting_indices(true, h, g)
    }
}

/// Order in which contexts are tried, so that reported witnesses are the
/// simplest available: fewer vertices, then shallower, then smaller scores,
/// then by order key.
pub fn witness_order(a: &GameTerm, b: &GameTerm) -> Ordering {
    a.node_count()
        .cmp(&b.node_count())
        .then_with(|| a.depth().cmp(&b.depth()))
        .then_with(|| a.max_abs_score().cmp(&b.max_abs_score()))
        .then_with(|| a.cmp(b))
}

fn prove_order(g: &GameTerm, h: &GameTerm, numeric: impl Fn(&crate::value::Score, &crate::value::Score) -> bool) -> Option<SoundRule> {
    if identical(g, h) {
        Some(SoundRule::Identical)
    } else if equivalent(g, h) {
        Some(SoundRule::Equivalent)
    } else if g.is_leaf() && h.is_leaf() && numeric(g.score(), h.score()) {
        Some(SoundRule::NumericOrder)
    } else {
        None
    }
}

pub fn greater_equal(g: &GameTerm, h: &GameTerm, spec: &UniverseSpec) -> Result<Verdict, UniverseError> {
    Ok(Comparator::new(spec)?.greater_equal(g, h))
}

pub fn less_equal(g: &GameTerm, h: &GameTerm, spec: &UniverseSpec) -> Result<Verdict, UniverseError> {
    Ok(Comparator::new(spec)?.less_equal(g, h))
}

pub fn equal(g: &GameTerm, h: &GameTerm, spec: &UniverseSpec) -> Result<Verdict, UniverseError> {
    Ok(Comparator::new(spec)?.equal(g, h))
}

pub fn duality_check(g: &GameTerm, h: &GameTerm, spec: &UniverseSpec) -> Result<bool, UniverseError> {
    Ok(Comparator::new(spec)?.duality_check(g, h))
}
