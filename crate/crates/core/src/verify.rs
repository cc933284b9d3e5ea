//! Executable checks of the theory over bounded game universes.
//!
//! Each suite sweeps a finite set of games and reports how many instances it
//! checked and which ones violated the property. A clean report is evidence
//! at the given bound, not a proof.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::{canonicalize, is_canonical, Mode};
use crate::notation::{parse, print, Style};
use crate::order::{Comparator, Refutation, Relation, Verdict};
use crate::score::{final_scores, membership, outcome, Outcome, OutcomeSet};
use crate::sum::{distinguishing_context, outcome_template, sum, zero, PairEvaluator, SumCache};
use crate::term::{equivalent, identical, negate, GameTerm, Side};
use crate::toads_frogs::{tf_parse, tf_to_game};
use crate::universe::{enumerate_universe, UniverseError, UniverseSpec};
use crate::value::Score;

/// Most violations listed in a report; the count is always exact.
const MAX_DETAILS: usize = 20;

pub const TBF: &str = "{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}";

/// Game strings displayed in the paper-style notation, each written in the
/// style it reprints to.
pub const DISPLAYED: &[(&str, Style)] = &[
    ("{{.|0|.}|1|{.|2|.}}", Style::Full),
    ("{.|0|.}", Style::Full),
    ("{0|1|2}", Style::Compact),
    ("{1|0|0}", Style::Compact),
    ("{1|0|1}", Style::Compact),
    ("{1|1|1}", Style::Compact),
    ("{3|0|4}", Style::Compact),
    ("{3|10|4}", Style::Compact),
    (TBF, Style::Compact),
    ("{{3|0|4},{3|1|4}|0|.}", Style::Compact),
    ("{{3|0|4}|0|.}", Style::Compact),
    ("{{3|1|4}|0|.}", Style::Compact),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Partition,
    SumLaws,
    Duality,
    PartialOrder,
    OutcomeTemplate,
    Identity,
    ReductionSafety,
    Confluence,
    CongProbe,
    RoundTrip,
    ReversalSearch,
    Fixtures,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Partition,
        Suite::SumLaws,
        Suite::Duality,
        Suite::PartialOrder,
        Suite::OutcomeTemplate,
        Suite::Identity,
        Suite::ReductionSafety,
        Suite::Confluence,
        Suite::CongProbe,
        Suite::RoundTrip,
        Suite::ReversalSearch,
        Suite::Fixtures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Partition => "partition",
            Suite::SumLaws => "sum-laws",
            Suite::Duality => "duality",
            Suite::PartialOrder => "partial-order",
            Suite::OutcomeTemplate => "outcome-template",
            Suite::Identity => "identity",
            Suite::ReductionSafety => "reduction-safety",
            Suite::Confluence => "confluence",
            Suite::CongProbe => "cong-probe",
            Suite::RoundTrip => "round-trip",
            Suite::ReversalSearch => "reversal-search",
            Suite::Fixtures => "fixtures",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
    pub details: Vec<String>,
    /// Informational findings that are not violations.
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { name: suite.name().to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.details.len() < MAX_DETAILS {
                self.details.push(detail());
            }
        }
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "VIOLATED" };
        write!(f, "{}: {} checked, {} violations [{}]", self.name, self.checked, self.violations, status)?;
        for d in &self.details {
            write!(f, "\n  violation: {d}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Games under test and the contexts searched.
    pub spec: UniverseSpec,
    pub seed: u64,
    pub sum_pairs: usize,
    pub sum_triples: usize,
    /// Where confluence samples are drawn from.
    pub confluence_spec: UniverseSpec,
    pub confluence_games: usize,
    pub confluence_orders: u64,
    pub template_grid: Vec<i64>,
    pub reversal_ladder: Vec<UniverseSpec>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            spec: UniverseSpec::default(),
            seed: 1,
            sum_pairs: 20_000,
            sum_triples: 10_000,
            confluence_spec: UniverseSpec::with_range(2, 2, 0, 1, None).expect("valid spec"),
            confluence_games: 1000,
            confluence_orders: 4,
            template_grid: (-4..=4).collect(),
            reversal_ladder: default_ladder(),
        }
    }
}

impl VerifyConfig {
    pub fn with_spec(spec: UniverseSpec) -> Self {
        VerifyConfig { spec, ..Default::default() }
    }
}

/// Increasing universes tried by the reversal search, smallest first.
pub fn default_ladder() -> Vec<UniverseSpec> {
    let r = |d, w, lo, hi, n| UniverseSpec::with_range(d, w, lo, hi, n).expect("valid spec");
    vec![
        r(0, 0, 0, 0, None),
        r(0, 0, -2, 2, None),
        r(1, 1, -1, 1, None),
        r(1, 1, -2, 2, None),
        r(1, 2, -2, 2, None),
        r(2, 2, -2, 2, Some(3)),
        r(2, 2, -2, 2, Some(4)),
        r(2, 2, -2, 2, Some(5)),
        r(3, 2, -2, 2, Some(5)),
    ]
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    Ok(match suite {
        Suite::Partition => partition(config)?,
        Suite::SumLaws => sum_laws(config)?,
        Suite::Duality => duality(config)?,
        Suite::PartialOrder => partial_order(config)?,
        Suite::OutcomeTemplate => outcome_template_grid(config),
        Suite::Identity => identity(config)?,
        Suite::ReductionSafety => reduction_safety(config)?,
        Suite::Confluence => confluence(config)?,
        Suite::CongProbe => cong_probe(config)?,
        Suite::RoundTrip => round_trip(config)?,
        Suite::ReversalSearch => reversal_search_suite(config)?,
        Suite::Fixtures => fixtures(config)?,
    })
}

pub fn partition(config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    use OutcomeSet::*;
    let mut report = SuiteReport::new(Suite::Partition);
    for g in enumerate_universe(&config.spec)? {
        let m = |set| membership(&g, set);
        // Each class as the intersection of base sets it is defined by.
        let classes = [
            (Outcome::L, (m(LGt) && m(RGt)) || (m(LGt) && m(REq)) || (m(LEq) && m(RGt))),
            (Outcome::R, (m(LLt) && m(RLt)) || (m(LLt) && m(REq)) || (m(LEq) && m(RLt))),
            (Outcome::N, m(LGt) && m(RLt)),
            (Outcome::P, m(LLt) && m(RGt)),
            (Outcome::T, m(LEq) && m(REq)),
        ];
        let holding: Vec<Outcome> = classes.iter().filter(|c| c.1).map(|c| c.0).collect();
        let left_sets = [LGt, LEq, LLt].into_iter().filter(|&s| m(s)).count();
        let right_sets = [RGt, REq, RLt].into_iter().filter(|&s| m(s)).count();
        report.check(
            holding.len() == 1 && holding[0] == outcome(&g) && left_sets == 1 && right_sets == 1,
            || format!("{g}: classes {holding:?}, {left_sets} Left sets, {right_sets} Right sets"),
        );
    }
    Ok(report)
}

/// Final scores of a sum of components, computed by playing them side by
/// side with no memoization and no sum terms.
pub fn naive_finals(components: &[GameTerm]) -> (Score, Score) {
    (naive_play(components, Side::Left), naive_play(components, Side::Right))
}

fn naive_play(components: &[GameTerm], mover: Side) -> Score {
    let mut best: Option<Score> = None;
    for (i, c) in components.iter().enumerate() {
        for option in c.options(mover) {
            let mut next = components.to_vec();
            next[i] = option.clone();
            let v = naive_play(&next, mover.opponent());
            best = Some(match (best, mover) {
                (None, _) => v,
                (Some(b), Side::Left) => b.max(v),
                (Some(b), Side::Right) => b.min(v),
            });
        }
    }
    best.unwrap_or_else(|| components.iter().map(|c| c.score()).sum())
}

fn additive_everywhere(cache: &mut SumCache, g: &GameTerm, h: &GameTerm) -> bool {
    let s = cache.sum(g, h);
    if *s.score() != g.score() + h.score() {
        return false;
    }
    g.left().iter().all(|gl| additive_everywhere(cache, gl, h))
        && h.left().iter().all(|hl| additive_everywhere(cache, g, hl))
        && g.right().iter().all(|gr| additive_everywhere(cache, gr, h))
        && h.right().iter().all(|hr| additive_everywhere(cache, g, hr))
}

pub fn sum_laws(config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    let mut report = SuiteReport::new(Suite::SumLaws);
    let games = enumerate_universe(&config.spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cache = SumCache::new();
    let z = zero();
    for g in &games {
        report.check(identical(&cache.sum(&z, g), g) && identical(&cache.sum(g, &z), g), || format!("0 + {g}"));
    }
    let pick = |rng: &mut ChaCha8Rng| games[rng.gen_range(0..games.len())].clone();
    for _ in 0..config.sum_pairs {
        let (g, h) = (pick(&mut rng), pick(&mut rng));
        let gh = cache.sum(&g, &h);
        report.check(identical(&gh, &cache.sum(&h, &g)), || format!("commutativity {g}, {h}"));
        report.check(additive_everywhere(&mut cache, &g, &h), || format!("score additivity {g}, {h}"));
        report.check(final_scores(&gh) == naive_finals(&[g.clone(), h.clone()]), || format!("simulator {g}, {h}"));
        report.check(identical(&negate(&gh), &sum(&negate(&g), &negate(&h))), || format!("negation {g}, {h}"));
    }
    for _ in 0..config.sum_triples {
        let (g, h, j) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let left_assoc = {
            let gh = cache.sum(&g, &h);
            cache.sum(&gh, &j)
        };
        let right_assoc = {
            let hj = cache.sum(&h, &j);
            cache.sum(&g, &hj)
        };
        report.check(identical(&left_assoc, &right_assoc), || format!("associativity {g}, {h}, {j}"));
        report.check(final_scores(&left_assoc) == naive_finals(&[g.clone(), h.clone(), j.clone()]), || {
            format!("simulator {g}, {h}, {j}")
        });
    }
    Ok(report)
}

pub fn duality(config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    let mut report = SuiteReport::new(Suite::Duality);
    let cmp = Comparator::new(&config.spec)?;
    let games = cmp.contexts().to_vec();
    for g in &games {
        for h in &games {
            report.check(cmp.duality_check(g, h), || format!("{g} >= {h} vs {h} <= {g}"));
        }
    }
    Ok(report)
}

pub fn partial_order(config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    let mut report = SuiteReport::new(Suite::PartialOrder);
    let cmp = Comparator::new(&config.spec)?;
    let games = cmp.contexts().to_vec();
    for g in &games {
        report.check(cmp.search_ge(g, g).is_none(), || format!("reflexivity {g}"));
    }
    // Proved edges, checked for soundness as they are collected.
    let mut proved: Vec<Vec<usize>> = vec![Vec::new(); games.len()];
    let mut antisymmetric_pairs = 0u64;
    for (i, g) in games.iter().enumerate() {
        for (j, h) in games.iter().enumerate() {
            for relation in [Relation::Ge, Relation::Le, Relation::Eq] {
                if cmp.prove(relation, g, h).is_some() {
                    report.check(cmp.search(relation, g, h).is_none(), || {
                        format!("proved {g} {} {h} but refuted", relation.symbol())
                    });
                }
            }
            if cmp.prove_ge(g, h).is_some() {
                proved[i].push(j);
            }
            if cmp.search_ge(g, h).is_none() && cmp.search_le(g, h).is_none() {
                antisymmetric_pairs += 1;
                report.check(cmp.search_eq(g, h).is_none(), || format!("antisymmetry {g}, {h}"));
            }
        }
    }
    for (i, middle) in proved.iter().enumerate() {
        for &j in middle {
            for &k in &proved[j] {
                report.check(cmp.search_ge(&games[i], &games[k]).is_none(), || {
                    format!("transitivity {} >= {} >= {}", games[i], games[j], games[k])
                });
            }
        }
    }
    report.note(format!("{antisymmetric_pairs} pairs unrefuted in both directions"));
    Ok(report)
}

/// Result of evaluating the outcome templates at every point of a grid.
#[derive(Debug, Clone, Default)]
pub struct TemplateSweep {
    pub points: u64,
    /// Points where the sum's final scores break the expected identities.
    pub failures: Vec<String>,
    pub failure_count: u64,
    /// `(outcome G, outcome H, outcome G + H)` triples seen.
    pub realized: BTreeSet<(Outcome, Outcome, Outcome)>,
}

impl TemplateSweep {
    pub fn missing(&self) -> Vec<(Outcome, Outcome, Outcome)> {
        let mut out = Vec::new();
        for a in Outcome::ALL {
            for b in Outcome::ALL {
                for c in Outcome::ALL {
                    if !self.realized.contains(&(a, b, c)) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }
}

/// Evaluates `G + H` for every assignment of grid values to `a..h`, checking
/// that the Right final score is `e + h` and the Left one is `e + g` or `d + h`.
pub fn template_sweep(values: &[i64]) -> TemplateSweep {
    let grid: Vec<Score> = values.iter().map(|&v| Score::from_integer(v)).collect();
    let zero = Score::zero();
    let mut sweep = TemplateSweep::default();
    // H depends on (f, g, h) only; build each once.
    let mut hs = Vec::new();
    for f in &grid {
        for g in &grid {
            for h in &grid {
                let (_, game) = outcome_template(
                    zero.clone(),
                    zero.clone(),
                    zero.clone(),
                    zero.clone(),
                    zero.clone(),
                    f.clone(),
                    g.clone(),
                    h.clone(),
                );
                hs.push(([f.clone(), g.clone(), h.clone()], outcome(&game), game));
            }
        }
    }
    let mut eval = PairEvaluator::new();
    for a in &grid {
        for b in &grid {
            for c in &grid {
                for d in &grid {
                    for e in &grid {
                        let (game, _) = outcome_template(
                            a.clone(),
                            b.clone(),
                            c.clone(),
                            d.clone(),
                            e.clone(),
                            zero.clone(),
                            zero.clone(),
                            zero.clone(),
                        );
                        let og = outcome(&game);
                        for ([f, g, h], oh, hgame) in &hs {
                            let (sl, sr) = eval.finals(&game, hgame);
                            sweep.points += 1;
                            if !(sr == e + h && (sl == e + g || sl == d + h)) {
                                sweep.failure_count += 1;
                                if sweep.failures.len() < MAX_DETAILS {
                                    sweep.failures.push(format!(
                                        "a..h = {a},{b},{c},{d},{e},{f},{g},{h}: finals ({sl}, {sr})"
                                    ));
                                }
                            }
                            sweep.realized.insert((og, *oh, Outcome::from_signs(sl.signum(), sr.signum())));
                        }
                        eval.clear();
                    }
                }
            }
        }
    }
    sweep
}

pub fn outcome_template_grid(config: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::OutcomeTemplate);
    let sweep = template_sweep(&config.template_grid);
    report.checked = sweep.points;
    report.violations = sweep.failure_count;
    report.details = sweep.failures.clone();
    let total = Outcome::ALL.len().pow(3);
    report.check(sweep.realized.len() == total, || {
        format!("{}/{total} outcome triples realized; missing {:?}", sweep.realized.len(), sweep.missing())
    });
    report.note(format!("{}/{total} outcome triples realized", sweep.realized.len()));
    report
}

pub fn identity(config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    let mut report = SuiteReport::new(Suite::Identity);
    let distinguishes = |g: &GameTerm| match distinguishing_context(g) {
        Ok(x) => outcome(&sum(g, &x)) != outcome(&x),
        Err(_) => false,
    };
    let z = zero();
    for g in enumerate_universe(&config.spec)? {
        if !identical(&g, &z) {
            report.check(distinguishes(&g), || format!("no distinguishing context for {g}"));
        }
        if !g.is_leaf() {
            let s = sum(&g, &negate(&g));
            report.check(!identical(&s, &z) && distinguishes(&s), || format!("{g} + -{g} not certified nonzero"));
        }
    }
    Ok(report)
}

pub fn reduction_safety(config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    let mut report = SuiteReport::new(Suite::ReductionSafety);
    let cmp = Comparator::new(&config.spec)?;
    let mut steps = 0u64;
    for g in cmp.contexts().to_vec() {
        let (canon, trace) = canonicalize(&g, &cmp, Mode::Sound, 0);
        for step in &trace.steps {
            steps += 1;
            report.check(cmp.search_eq(&step.before, &step.after).is_none(), || {
                format!("{} -> {} ({})", step.before, step.after, step.kind)
            });
        }
        report.check(cmp.search_eq(&g, &canon).is_none(), || format!("{g} -> {canon}"));
        let (again, retrace) = canonicalize(&canon, &cmp, Mode::Sound, 0);
        report.check(identical(&again, &canon) && retrace.steps.is_empty(), || format!("not idempotent on {g}"));
    }
    report.note(format!("{steps} reduction steps"));
    Ok(report)
}

/// Random games within `spec`, built top-down from seeded choices.
pub fn sample_games(spec: &UniverseSpec, count: usize, seed: u64) -> Vec<GameTerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_game(spec, spec.max_depth, &mut rng)).collect()
}

fn random_game(spec: &UniverseSpec, depth: usize, rng: &mut ChaCha8Rng) -> GameTerm {
    let score = spec.scores.choose(rng).expect("non-empty score set").clone();
    if depth == 0 {
        return GameTerm::leaf(score);
    }
    let side = |rng: &mut ChaCha8Rng| -> Vec<GameTerm> {
        let width = rng.gen_range(0..=spec.max_width);
        (0..width).map(|_| random_game(spec, depth - 1, rng)).collect()
    };
    let left = side(rng);
    let right = side(rng);
    GameTerm::new(left, score, right)
}

pub fn confluence(config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    let mut report = SuiteReport::new(Suite::Confluence);
    let cmp = Comparator::new(&config.spec)?;
    let games = sample_games(&config.confluence_spec, config.confluence_games, config.seed);
    let mut multi = 0u64;
    let mut conj_split = 0u64;
    for g in &games {
        let results: Vec<GameTerm> =
            (0..config.confluence_orders).map(|seed| canonicalize(g, &cmp, Mode::Sound, seed).0).collect();
        if results.iter().any(|r| !identical(r, &results[0])) {
            multi += 1;
        }
        for (i, a) in results.iter().enumerate() {
            for b in &results[i + 1..] {
                report.check(equivalent(a, b), || format!("{g}: {a} vs {b}"));
            }
        }
        let conj: Vec<GameTerm> =
            (0..config.confluence_orders).map(|seed| canonicalize(g, &cmp, Mode::Conjectural, seed).0).collect();
        if conj.iter().any(|r| !equivalent(r, &conj[0])) {
            conj_split += 1;
        }
    }
    report.note(format!(
        "{} games x {} orders; {multi} with non-identical canonical forms",
        games.len(),
        config.confluence_orders
    ));
    report.note(format!("conjectural mode: {conj_split} games with non-equivalent results (informational)"));
    Ok(report)
}

pub fn cong_probe(config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    let mut report = SuiteReport::new(Suite::CongProbe);
    let cmp = Comparator::new(&config.spec)?;
    let games = cmp.contexts().to_vec();
    let sound: Vec<&GameTerm> = games.iter().filter(|g| is_canonical(g, &cmp, Mode::Sound)).collect();
    for (i, g) in sound.iter().enumerate() {
        for h in &sound[i + 1..] {
            if cmp.prove_eq(g, h).is_some() {
                report.check(equivalent(g, h), || format!("{g} = {h} but not equivalent"));
            }
        }
    }
    let conj: Vec<&GameTerm> = games.iter().filter(|g| is_canonical(g, &cmp, Mode::Conjectural)).collect();
    let (mut unrefuted, mut matched) = (0u64, 0u64);
    for (i, g) in conj.iter().enumerate() {
        for h in &conj[i + 1..] {
            if cmp.search_eq(g, h).is_none() {
                unrefuted += 1;
                matched += u64::from(equivalent(g, h));
            }
        }
    }
    report.note(format!(
        "{} sound-canonical games; conjectural: {unrefuted} canonical pairs never distinguished, {matched} of them equivalent",
        sound.len()
    ));
    Ok(report)
}

pub fn round_trip(config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    let mut report = SuiteReport::new(Suite::RoundTrip);
    for g in enumerate_universe(&config.spec)? {
        for style in [Style::Compact, Style::Full] {
            let text = print(&g, style);
            report.check(parse(&text).is_ok_and(|back| identical(&back, &g)), || format!("{text} ({style:?})"));
        }
    }
    for &(text, style) in DISPLAYED {
        report.check(parse(text).is_ok_and(|g| print(&g, style) == text), || format!("reprint of {text}"));
    }
    Ok(report)
}

/// One reversibility test: `witness <= game` for a Left option, or
/// `witness >= game` for a Right option.
#[derive(Debug, Clone)]
pub struct ReversalProbe {
    pub side: Side,
    pub option: GameTerm,
    pub witness: GameTerm,
    /// The first rung of the ladder refuting the comparison, with its witness.
    pub refuted_at: Option<(UniverseSpec, Refutation)>,
}

impl fmt::Display for ReversalProbe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let relation = match self.side {
            Side::Left => "<=",
            Side::Right => ">=",
        };
        write!(f, "{} option {}: {} {relation} G ", self.side, self.option, self.witness)?;
        match &self.refuted_at {
            Some((spec, r)) => write!(f, "refuted by {r} within {spec}"),
            None => write!(f, "never refuted"),
        }
    }
}

/// Tries every reversibility comparison of `g` against increasing universes,
/// stopping each at the first refutation.
pub fn reversal_search(g: &GameTerm, ladder: &[UniverseSpec]) -> Result<Vec<ReversalProbe>, UniverseError> {
    let mut probes = Vec::new();
    for side in [Side::Left, Side::Right] {
        for option in g.options(side) {
            for witness in option.options(side.opponent()) {
                probes.push(ReversalProbe { side, option: option.clone(), witness: witness.clone(), refuted_at: None });
            }
        }
    }
    for spec in ladder {
        if probes.iter().all(|p| p.refuted_at.is_some()) {
            break;
        }
        let cmp = Comparator::new(spec)?;
        for probe in probes.iter_mut().filter(|p| p.refuted_at.is_none()) {
            let relation = match probe.side {
                Side::Left => Relation::Le,
                Side::Right => Relation::Ge,
            };
            if let Verdict::Refuted(r) = cmp.verdict(relation, &probe.witness, g) {
                probe.refuted_at = Some((spec.clone(), r));
            }
        }
    }
    Ok(probes)
}

pub fn reversal_search_suite(config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    let mut report = SuiteReport::new(Suite::ReversalSearch);
    let tbf = parse(TBF).expect("valid literal");
    for probe in reversal_search(&tbf, &config.reversal_ladder)? {
        report.check(probe.refuted_at.is_some(), || probe.to_string());
        report.note(probe.to_string());
    }
    Ok(report)
}

/// The committed regression witness: `{-1|-1|.} <= TBF` fails at this
/// context, first found within [`reversal_fixture_spec`].
pub const REVERSAL_WITNESS: &str = "{.|-1|2}";

pub fn reversal_fixture_spec() -> UniverseSpec {
    UniverseSpec::with_range(1, 1, -2, 2, None).expect("valid spec")
}

pub fn fixtures(config: &VerifyConfig) -> Result<SuiteReport, UniverseError> {
    let mut report = SuiteReport::new(Suite::Fixtures);
    let p = |text: &str| parse(text).expect("valid literal");
    let tbf = p(TBF);
    let tf = tf_to_game(&tf_parse("TBF").expect("valid position"));
    report.check(identical(&tf, &tbf), || format!("TBF compiles to {tf}"));
    report.check(outcome(&p("{1|0|0}")) == Outcome::L, || "outcome of {1|0|0}".into());
    report.check(outcome(&zero()) == Outcome::T, || "outcome of 0".into());
    report.check(final_scores(&tbf) == (Score::from_integer(-1), Score::from_integer(1)), || "TBF finals".into());

    let cmp = Comparator::new(&config.spec)?;
    let (a, b) = (p("{1|1|1}"), p("{1|0|1}"));
    report.check(cmp.equal(&a, &b).is_proved() && !identical(&a, &b), || "{1|1|1} = {1|0|1}".into());

    let two = p("{{3|0|4},{3|1|4}|0|.}");
    let forms = [p("{{3|0|4}|0|.}"), p("{{3|1|4}|0|.}")];
    let outs: Vec<GameTerm> = (0..config.confluence_orders.max(2)).map(|s| canonicalize(&two, &cmp, Mode::Sound, s).0).collect();
    report.check(outs.iter().all(|o| forms.contains(o)), || "two canonical forms".into());
    report.check(equivalent(&forms[0], &forms[1]), || "the two forms are equivalent".into());
    let (canon_tbf, trace) = canonicalize(&tbf, &cmp, Mode::Sound, 0);
    report.check(identical(&canon_tbf, &tbf) && trace.steps.is_empty(), || "TBF is canonical".into());

    let fixture = Comparator::new(&reversal_fixture_spec())?;
    let witness = tbf.left()[0].right()[0].clone();
    let x = p(REVERSAL_WITNESS);
    let refutation = fixture.search_le(&witness, &tbf);
    report.check(refutation.as_ref().is_some_and(|r| r.context == x), || {
        format!("reversal witness moved: {refutation:?}")
    });
    // Independently: G + X lands in R_<= while A^R + X does not.
    let in_rle = |g: &GameTerm| membership(&sum(g, &x), OutcomeSet::RLe);
    report.check(in_rle(&tbf) && !in_rle(&witness), || "reversal witness does not refute".into());
    Ok(report)
}

/// Runs every suite in order.
pub fn run_all(config: &VerifyConfig) -> Result<Vec<SuiteReport>, UniverseError> {
    Suite::ALL.into_iter().map(|s| run_suite(s, config)).collect()
}

/// Tallies of outcome classes over a set of games.
pub fn outcome_histogram(games: &[GameTerm]) -> HashMap<Outcome, usize> {
    let mut out = HashMap::new();
    for g in games {
        *out.entry(outcome(g)).or_insert(0) += 1;
    }
    out
}
