//! Reduction to canonical form by removing dominated options and bypassing
//! reversible ones.
//!
//! Both reductions need `>=`/`<=` between games, which can only be decided
//! here by a sound rule or approximated by a bounded search. [`Mode::Sound`]
//! reduces only on proved comparisons, so every result is equal to its input;
//! [`Mode::Conjectural`] also accepts comparisons that survived the bounded
//! search and marks its traces accordingly.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::order::{Comparator, Relation, Verdict};
use crate::term::{GameTerm, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Sound,
    Conjectural,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sound => "sound",
            Mode::Conjectural => "conjectural",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReductionKind {
    Domination,
    Reversibility,
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionKind::Domination => "domination",
            ReductionKind::Reversibility => "reversibility",
        })
    }
}

/// `dominating` is at least as good as `dominated` for the owner of `side`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domination {
    pub side: Side,
    pub dominated: GameTerm,
    pub dominating: GameTerm,
    pub verdict: Verdict,
}

/// `option` on `side` is reversed through `witness`, one of its opponent
/// options, and can be replaced by `witness`'s options on `side`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reversal {
    pub side: Side,
    pub option: GameTerm,
    pub witness: GameTerm,
    pub verdict: Verdict,
}

impl Reversal {
    pub fn replacement(&self) -> &[GameTerm] {
        self.witness.options(self.side)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: ReductionKind,
    pub side: Side,
    /// The vertex before the step.
    pub before: GameTerm,
    /// The vertex after the step.
    pub after: GameTerm,
    /// The option removed or bypassed.
    pub removed: GameTerm,
    /// The dominating option, or the reversing response.
    pub witness: GameTerm,
    pub justification: Verdict,
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ReductionKind::Domination => write!(
                f,
                "domination {}: removed {} (dominated by {}) [{}]",
                self.side, self.removed, self.witness, self.justification
            ),
            ReductionKind::Reversibility => write!(
                f,
                "reversibility {}: bypassed {} through {} [{}]",
                self.side, self.removed, self.witness, self.justification
            ),
        }
    }
}

/// Every reduction applied by [`canonicalize`], in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    /// Reversals that could not be applied because the witness has no
    /// options on the reversing side.
    pub skipped: Vec<Reversal>,
    /// Some step rests on an unrefuted, unproved comparison.
    pub conjectural: bool,
}

fn meets_bar(verdict: &Verdict, mode: Mode) -> bool {
    match mode {
        Mode::Sound => verdict.is_proved(),
        Mode::Conjectural => !verdict.is_refuted(),
    }
}

fn compare(cmp: &Comparator, relation: Relation, g: &GameTerm, h: &GameTerm, mode: Mode) -> Option<Verdict> {
    let verdict = match mode {
        // Searching is pointless when only proofs count.
        Mode::Sound => Verdict::Proved(cmp.prove(relation, g, h)?),
        Mode::Conjectural => cmp.verdict(relation, g, h),
    };
    meets_bar(&verdict, mode).then_some(verdict)
}

/// All ordered pairs of same-side options where one dominates the other,
/// Left before Right, then by the dominating and dominated order keys.
pub fn dominated_options(g: &GameTerm, cmp: &Comparator, mode: Mode) -> Vec<Domination> {
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        let relation = match side {
            Side::Left => Relation::Ge,
            Side::Right => Relation::Le,
        };
        let options = g.options(side);
        for dominating in options {
            for dominated in options {
                if dominating == dominated {
                    continue;
                }
                if let Some(verdict) = compare(cmp, relation, dominating, dominated, mode) {
                    out.push(Domination { side, dominated: dominated.clone(), dominating: dominating.clone(), verdict });
                }
            }
        }
    }
    out
}

/// Reversible options with their minimal qualifying witness.
///
/// Returns `(usable, skipped)`: a reversal whose witness has no options on
/// the reversing side would delete the option outright, so it is reported
/// but never applied.
pub fn reversal_scan(g: &GameTerm, cmp: &Comparator, mode: Mode) -> (Vec<Reversal>, Vec<Reversal>) {
    let mut usable = Vec::new();
    let mut skipped = Vec::new();
    for side in [Side::Left, Side::Right] {
        // A Left option A reverses through A^R <= G; a Right option D through D^L >= G.
        let relation = match side {
            Side::Left => Relation::Le,
            Side::Right => Relation::Ge,
        };
        for option in g.options(side) {
            let mut empty_witness = None;
            let mut found = None;
            for witness in option.options(side.opponent()) {
                let Some(verdict) = compare(cmp, relation, witness, g, mode) else { continue };
                let rev = Reversal { side, option: option.clone(), witness: witness.clone(), verdict };
                if witness.options(side).is_empty() {
                    empty_witness.get_or_insert(rev);
                } else {
                    found = Some(rev);
                    break;
                }
            }
            match (found, empty_witness) {
                (Some(rev), _) => usable.push(rev),
                (None, Some(rev)) => skipped.push(rev),
                (None, None) => {}
            }
        }
    }
    (usable, skipped)
}

pub fn reversible_options(g: &GameTerm, cmp: &Comparator, mode: Mode) -> Vec<Reversal> {
    reversal_scan(g, cmp, mode).0
}

enum Candidate {
    Dominated(Domination),
    Reversible(Reversal),
}

fn candidates(g: &GameTerm, cmp: &Comparator, mode: Mode) -> (Vec<Candidate>, Vec<Reversal>) {
    let mut out: Vec<Candidate> = dominated_options(g, cmp, mode).into_iter().map(Candidate::Dominated).collect();
    let (usable, skipped) = reversal_scan(g, cmp, mode);
    out.extend(usable.into_iter().map(Candidate::Reversible));
    (out, skipped)
}

fn apply(g: &GameTerm, candidate: Candidate) -> (GameTerm, ReductionStep) {
    let (kind, side, removed, witness, replacement, justification) = match candidate {
        Candidate::Dominated(d) => (ReductionKind::Domination, d.side, d.dominated, d.dominating, Vec::new(), d.verdict),
        Candidate::Reversible(r) => {
            let replacement = r.replacement().to_vec();
            (ReductionKind::Reversibility, r.side, r.option, r.witness, replacement, r.verdict)
        }
    };
    let mut kept: Vec<GameTerm> = g.options(side).iter().filter(|o| **o != removed).cloned().collect();
    kept.extend(replacement);
    let after = match side {
        Side::Left => GameTerm::new(kept, g.score().clone(), g.right().to_vec()),
        Side::Right => GameTerm::new(g.left().to_vec(), g.score().clone(), kept),
    };
    let step = ReductionStep { kind, side, before: g.clone(), after: after.clone(), removed, witness, justification };
    (after, step)
}

/// Chooses among applicable reductions: the first one by default, a seeded
/// random one otherwise.
#[derive(Debug, Clone)]
pub struct ReductionOrder {
    rng: Option<ChaCha8Rng>,
}

impl ReductionOrder {
    /// Seed 0 is the deterministic default order.
    pub fn new(seed: u64) -> Self {
        ReductionOrder { rng: (seed != 0).then(|| ChaCha8Rng::seed_from_u64(seed)) }
    }

    fn pick(&mut self, len: usize) -> usize {
        match &mut self.rng {
            Some(rng) => rng.gen_range(0..len),
            None => 0,
        }
    }
}

/// Applies one reduction at the root of `g`, if any applies.
pub fn reduce_step(g: &GameTerm, cmp: &Comparator, mode: Mode) -> Option<(GameTerm, ReductionStep)> {
    reduce_step_with(g, cmp, mode, &mut ReductionOrder::new(0))
}

pub fn reduce_step_with(
    g: &GameTerm,
    cmp: &Comparator,
    mode: Mode,
    order: &mut ReductionOrder,
) -> Option<(GameTerm, ReductionStep)> {
    let (mut list, _) = candidates(g, cmp, mode);
    if list.is_empty() {
        return None;
    }
    let chosen = list.swap_remove(order.pick(list.len()));
    Some(apply(g, chosen))
}

/// Canonicalizes every option bottom-up, then reduces at the root until no
/// reduction applies. `order_seed` 0 gives the default reduction order.
pub fn canonicalize(g: &GameTerm, cmp: &Comparator, mode: Mode, order_seed: u64) -> (GameTerm, ReductionTrace) {
    let mut trace = ReductionTrace::default();
    let mut order = ReductionOrder::new(order_seed);
    let mut memo = HashMap::new();
    let out = canonicalize_inner(g, cmp, mode, &mut order, &mut memo, &mut trace);
    trace.conjectural = trace.steps.iter().any(|s| !s.justification.is_proved());
    (out, trace)
}

fn canonicalize_inner(
    g: &GameTerm,
    cmp: &Comparator,
    mode: Mode,
    order: &mut ReductionOrder,
    memo: &mut HashMap<usize, (GameTerm, GameTerm)>,
    trace: &mut ReductionTrace,
) -> GameTerm {
    if let Some((_, done)) = memo.get(&g.addr()) {
        return done.clone();
    }
    let left = g.left().iter().map(|o| canonicalize_inner(o, cmp, mode, order, memo, trace)).collect();
    let right = g.right().iter().map(|o| canonicalize_inner(o, cmp, mode, order, memo, trace)).collect();
    let mut current = GameTerm::new(left, g.score().clone(), right);
    loop {
        let (mut list, skipped) = candidates(&current, cmp, mode);
        if list.is_empty() {
            for rev in skipped {
                if !trace.skipped.contains(&rev) {
                    trace.skipped.push(rev);
                }
            }
            break;
        }
        let chosen = list.swap_remove(order.pick(list.len()));
        let (next, step) = apply(&current, chosen);
        debug_assert!(next.node_count() < current.node_count());
        trace.steps.push(step);
        current = next;
    }
    memo.insert(g.addr(), (g.clone(), current.clone()));
    current
}

/// True when no vertex has a dominated or applicable reversible option.
pub fn is_canonical(g: &GameTerm, cmp: &Comparator, mode: Mode) -> bool {
    let mut seen = HashMap::new();
    canonical_at(g, cmp, mode, &mut seen)
}

fn canonical_at(g: &GameTerm, cmp: &Comparator, mode: Mode, seen: &mut HashMap<usize, bool>) -> bool {
    if let Some(&done) = seen.get(&g.addr()) {
        return done;
    }
    let here = candidates(g, cmp, mode).0.is_empty()
        && g.left().iter().chain(g.right()).all(|o| canonical_at(o, cmp, mode, seen));
    seen.insert(g.addr(), here);
    here
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::order::SoundRule;
    use crate::term::equivalent;
    use crate::universe::UniverseSpec;

    fn g(text: &str) -> GameTerm {
        parse(text).unwrap()
    }

    fn cmp() -> Comparator {
        Comparator::new(&UniverseSpec::default()).unwrap()
    }

    const TBF: &str = "{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}";
    const TWO_FORMS: &str = "{{3|0|4},{3|1|4}|0|.}";

    #[test]
    fn mutually_dominating_equivalent_options() {
        let doms = dominated_options(&g(TWO_FORMS), &cmp(), Mode::Sound);
        assert_eq!(doms.len(), 2);
        assert!(doms.iter().all(|d| d.verdict == Verdict::Proved(SoundRule::Equivalent)));
        assert_eq!(doms[0].dominating, g("{3|0|4}"));
        assert_eq!(doms[0].dominated, g("{3|1|4}"));
    }

    #[test]
    fn single_option_has_nothing_to_dominate() {
        assert!(dominated_options(&g("{1|0|.}"), &cmp(), Mode::Sound).is_empty());
        assert!(dominated_options(&g("{1|0|.}"), &cmp(), Mode::Conjectural).is_empty());
    }

    #[test]
    fn numeric_domination() {
        let doms = dominated_options(&g("{2,1|0|.}"), &cmp(), Mode::Sound);
        assert_eq!(doms.len(), 1);
        assert_eq!(doms[0].dominating, g("2"));
        assert_eq!(doms[0].verdict, Verdict::Proved(SoundRule::NumericOrder));
        let (next, step) = reduce_step(&g("{2,1|0|.}"), &cmp(), Mode::Sound).unwrap();
        assert_eq!(next, g("{2|0|.}"));
        assert_eq!(step.removed, g("1"));
        // on the Right the smaller leaf is better
        let (next, _) = reduce_step(&g("{.|0|2,1}"), &cmp(), Mode::Sound).unwrap();
        assert_eq!(next, g("{.|0|1}"));
    }

    #[test]
    fn figure_game_is_already_canonical() {
        let c = cmp();
        assert!(reversible_options(&g(TBF), &c, Mode::Sound).is_empty());
        assert!(reduce_step(&g(TBF), &c, Mode::Sound).is_none());
        let (out, trace) = canonicalize(&g(TBF), &c, Mode::Sound, 0);
        assert_eq!(out, g(TBF));
        assert!(trace.steps.is_empty());
        assert!(is_canonical(&g(TBF), &c, Mode::Sound));
    }

    #[test]
    fn zero_has_no_reversible_options() {
        assert!(reversible_options(&g("0"), &cmp(), Mode::Conjectural).is_empty());
        assert!(is_canonical(&g("7"), &cmp(), Mode::Conjectural));
    }

    #[test]
    fn two_canonical_forms() {
        let c = cmp();
        let (step_result, _) = reduce_step(&g(TWO_FORMS), &c, Mode::Sound).unwrap();
        assert_eq!(step_result, g("{{3|0|4}|0|.}"));
        let forms = [g("{{3|0|4}|0|.}"), g("{{3|1|4}|0|.}")];
        let mut seen = Vec::new();
        for seed in 0..8 {
            let (out, trace) = canonicalize(&g(TWO_FORMS), &c, Mode::Sound, seed);
            assert!(forms.contains(&out));
            assert_eq!(trace.steps.len(), 1);
            assert!(!trace.conjectural);
            seen.push(out);
        }
        assert!(seen.contains(&forms[0]) && seen.contains(&forms[1]));
        assert!(equivalent(&forms[0], &forms[1]));
        assert!(!is_canonical(&g(TWO_FORMS), &c, Mode::Sound));
    }

    #[test]
    fn canonicalize_is_idempotent_on_samples() {
        let c = cmp();
        for text in [TBF, TWO_FORMS, "{2,1|0|{.|0|-1,-2}}", "{{2,1|0|.},{1|0|.}|0|.}"] {
            for mode in [Mode::Sound, Mode::Conjectural] {
                let (once, _) = canonicalize(&g(text), &c, mode, 0);
                let (twice, trace) = canonicalize(&once, &c, mode, 0);
                assert_eq!(once, twice, "{text} ({mode})");
                assert!(trace.steps.is_empty());
                assert!(is_canonical(&once, &c, mode));
            }
        }
    }

    #[test]
    fn reversal_search_example() {
        // A = {.|0|{0|0|0}} has the single Right response A^R = {0|0|0}.
        let c = cmp();
        let game = g("{{.|0|{0|0|0}}|0|.}");
        assert!(reversible_options(&game, &c, Mode::Sound).is_empty());
        let verdict = c.less_equal(&g("{0|0|0}"), &game);
        let conj = reversible_options(&game, &c, Mode::Conjectural);
        assert_eq!(conj.is_empty(), verdict.is_refuted());
    }

    #[test]
    fn conjectural_traces_are_flagged() {
        let c = cmp();
        // {1|0|.} >= {0|0|.} is not provable but survives the bounded search.
        let game = g("{{1|0|.},{0|0|.}|0|.}");
        assert!(dominated_options(&game, &c, Mode::Sound).is_empty());
        let (out, trace) = canonicalize(&game, &c, Mode::Conjectural, 0);
        assert!(trace.conjectural);
        assert_eq!(out, g("{{1|0|.}|0|.}"));
    }
}
