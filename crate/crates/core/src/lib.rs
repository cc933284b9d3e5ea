//! Exact engine for scoring-play combinatorial games.
//!
//! Games are immutable terms `{G^L | G^S | G^R}` with exact rational scores.
//! The crate evaluates final scores and outcome classes, forms long-rule
//! disjunctive sums, compares games against bounded universes of contexts,
//! reduces games to canonical form, and checks the surrounding theory by
//! exhaustive sweeps.
//!
//! ```
//! use scoregame::{final_scores, outcome, parse, Outcome, Score};
//!
//! let g = parse("{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}").unwrap();
//! assert_eq!(final_scores(&g), (Score::from_integer(-1), Score::from_integer(1)));
//! assert_eq!(outcome(&g), Outcome::P);
//! ```

pub mod canonical;
pub mod cli;
pub mod notation;
pub mod order;
pub mod score;
pub mod sum;
pub mod term;
pub mod toads_frogs;
pub mod universe;
pub mod value;
pub mod verify;

pub use canonical::{canonicalize, is_canonical, Mode, ReductionTrace};
pub use notation::{parse, print, ParseError, Style};
pub use order::{Comparator, Refutation, Relation, SoundRule, Verdict};
pub use score::{final_scores, left_final_score, outcome, right_final_score, Outcome, OutcomeSet};
pub use sum::{sum, zero};
pub use term::{equivalent, identical, leaf, negate, GameTerm, NodePath, Side};
pub use toads_frogs::{tf_parse, tf_to_game, TfPosition};
pub use universe::{enumerate_universe, UniverseSpec};
pub use value::Score;
