//! Final scores under optimal alternating play, and outcome classes.
//!
//! A game ends when the player to move has no option; Left maximizes the
//! final score and Right minimizes it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::term::{GameTerm, Side};
use crate::value::Score;

/// The five outcome classes of scoring play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Outcome {
    L,
    R,
    N,
    P,
    T,
}

impl Outcome {
    pub const ALL: [Outcome; 5] = [Outcome::L, Outcome::R, Outcome::N, Outcome::P, Outcome::T];

    /// Class of a game whose Left and Right final scores have these signs.
    pub fn from_signs(left: i8, right: i8) -> Outcome {
        match (left.signum(), right.signum()) {
            (1, 1) | (1, 0) | (0, 1) => Outcome::L,
            (-1, -1) | (-1, 0) | (0, -1) => Outcome::R,
            (1, -1) => Outcome::N,
            (-1, 1) => Outcome::P,
            _ => Outcome::T,
        }
    }

    /// The class of the negated game.
    pub fn swapped(self) -> Outcome {
        match self {
            Outcome::L => Outcome::R,
            Outcome::R => Outcome::L,
            other => other,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Outcome::L => "L",
            Outcome::R => "R",
            Outcome::N => "N",
            Outcome::P => "P",
            Outcome::T => "T",
        };
        f.write_str(name)
    }
}

/// The base sets `L_>, L_=, L_<, R_>, R_=, R_<` and their unions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OutcomeSet {
    LGt,
    LEq,
    LLt,
    RGt,
    REq,
    RLt,
    LGe,
    LLe,
    RGe,
    RLe,
}

impl OutcomeSet {
    /// Sets closed upward, tested by `>=`.
    pub const UP: [OutcomeSet; 4] = [OutcomeSet::LGe, OutcomeSet::RGe, OutcomeSet::LGt, OutcomeSet::RGt];
    /// Sets closed downward, tested by `<=`.
    pub const DOWN: [OutcomeSet; 4] = [OutcomeSet::LLe, OutcomeSet::RLe, OutcomeSet::LLt, OutcomeSet::RLt];
    pub const ALL: [OutcomeSet; 10] = [
        OutcomeSet::LGt,
        OutcomeSet::LEq,
        OutcomeSet::LLt,
        OutcomeSet::RGt,
        OutcomeSet::REq,
        OutcomeSet::RLt,
        OutcomeSet::LGe,
        OutcomeSet::LLe,
        OutcomeSet::RGe,
        OutcomeSet::RLe,
    ];

    /// Which final score the set constrains.
    pub fn side(self) -> Side {
        use OutcomeSet::*;
        match self {
            LGt | LEq | LLt | LGe | LLe => Side::Left,
            RGt | REq | RLt | RGe | RLe => Side::Right,
        }
    }

    /// Membership of a game whose final scores have the given signs.
    pub fn contains_signs(self, left: i8, right: i8) -> bool {
        use OutcomeSet::*;
        let sign = match self.side() {
            Side::Left => left.signum(),
            Side::Right => right.signum(),
        };
        match self {
            LGt | RGt => sign > 0,
            LEq | REq => sign == 0,
            LLt | RLt => sign < 0,
            LGe | RGe => sign >= 0,
            LLe | RLe => sign <= 0,
        }
    }

    /// The complementary set for the same final score.
    pub fn complement(self) -> OutcomeSet {
        use OutcomeSet::*;
        match self {
            LGt => LLe,
            LLe => LGt,
            LGe => LLt,
            LLt => LGe,
            RGt => RLe,
            RLe => RGt,
            RGe => RLt,
            RLt => RGe,
            LEq => LEq,
            REq => REq,
        }
    }

    pub fn name(self) -> &'static str {
        use OutcomeSet::*;
        match self {
            LGt => "L_>",
            LEq => "L_=",
            LLt => "L_<",
            RGt => "R_>",
            REq => "R_=",
            RLt => "R_<",
            LGe => "L_>=",
            LLe => "L_<=",
            RGe => "R_>=",
            RLe => "R_<=",
        }
    }
}

impl fmt::Display for OutcomeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OutcomeSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OutcomeSet::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| format!("unknown outcome set `{s}`"))
    }
}

/// Both final scores, memoized on the term.
pub fn final_scores(g: &GameTerm) -> (Score, Score) {
    finals_ref(g).clone()
}

fn finals_ref(g: &GameTerm) -> &(Score, Score) {
    if let Some(done) = g.cached_finals() {
        return done;
    }
    let left = if g.left().is_empty() {
        g.score().clone()
    } else {
        g.left().iter().map(|o| finals_ref(o).1.clone()).max().expect("non-empty")
    };
    let right = if g.right().is_empty() {
        g.score().clone()
    } else {
        g.right().iter().map(|o| finals_ref(o).0.clone()).min().expect("non-empty")
    };
    g.store_finals((left, right))
}

/// Terminal score with Left moving first.
pub fn left_final_score(g: &GameTerm) -> Score {
    finals_ref(g).0.clone()
}

/// Terminal score with Right moving first.
pub fn right_final_score(g: &GameTerm) -> Score {
    finals_ref(g).1.clone()
}

/// Signs of the two final scores.
pub fn final_signs(g: &GameTerm) -> (i8, i8) {
    let (l, r) = finals_ref(g);
    (l.signum(), r.signum())
}

/// The Left base set and the Right base set containing `g`.
pub fn base_sets(g: &GameTerm) -> (OutcomeSet, OutcomeSet) {
    let (l, r) = final_signs(g);
    let left = match l {
        1 => OutcomeSet::LGt,
        0 => OutcomeSet::LEq,
        _ => OutcomeSet::LLt,
    };
    let right = match r {
        1 => OutcomeSet::RGt,
        0 => OutcomeSet::REq,
        _ => OutcomeSet::RLt,
    };
    (left, right)
}

pub fn outcome(g: &GameTerm) -> Outcome {
    let (l, r) = final_signs(g);
    Outcome::from_signs(l, r)
}

pub fn membership(g: &GameTerm, set: OutcomeSet) -> bool {
    let (l, r) = final_signs(g);
    set.contains_signs(l, r)
}

/// One optimal line of play from `g` with `first` to move, ending at the
/// terminal position. Ties go to the option with the smallest order key.
pub fn principal_line(g: &GameTerm, first: Side) -> Vec<GameTerm> {
    let mut line = vec![g.clone()];
    let mut at = g.clone();
    let mut mover = first;
    loop {
        let options = at.options(mover);
        if options.is_empty() {
            return line;
        }
        // Options are stored in key order, so the first optimum is the minimal one.
        let next = match mover {
            Side::Left => {
                let best = left_final_score(&at);
                options.iter().find(|o| right_final_score(o) == best)
            }
            Side::Right => {
                let best = right_final_score(&at);
                options.iter().find(|o| left_final_score(o) == best)
            }
        }
        .expect("an option attains the optimum")
        .clone();
        line.push(next.clone());
        at = next;
        mover = mover.opponent();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::term::{leaf, negate};

    fn g(text: &str) -> GameTerm {
        parse(text).unwrap()
    }

    fn s(n: i64) -> Score {
        Score::from_integer(n)
    }

    /// Unmemoized minimax written straight from the definition.
    fn naive(g: &GameTerm, mover: Side) -> Score {
        let opts = g.options(mover);
        if opts.is_empty() {
            return g.score().clone();
        }
        let vals = opts.iter().map(|o| naive(o, mover.opponent()));
        match mover {
            Side::Left => vals.max().unwrap(),
            Side::Right => vals.min().unwrap(),
        }
    }

    const TBF: &str = "{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}";

    #[test]
    fn final_scores_of_fixtures() {
        assert_eq!(final_scores(&g("{1|0|0}")), (s(1), s(0)));
        assert_eq!(left_final_score(&g("{.|4|-7}")), s(4));
        assert_eq!(right_final_score(&g("{.|5|{.|2|9}}")), s(2));
        assert_eq!(final_scores(&g(TBF)), (naive(&g(TBF), Side::Left), naive(&g(TBF), Side::Right)));
        assert_eq!(final_scores(&g(TBF)), (s(-1), s(1)));
    }

    #[test]
    fn base_sets_and_outcomes() {
        assert_eq!(base_sets(&g("{1|0|0}")), (OutcomeSet::LGt, OutcomeSet::REq));
        assert_eq!(base_sets(&leaf(s(0))), (OutcomeSet::LEq, OutcomeSet::REq));
        assert_eq!(base_sets(&leaf(s(-2))), (OutcomeSet::LLt, OutcomeSet::RLt));
        assert_eq!(outcome(&g("{1|0|0}")), Outcome::L);
        assert_eq!(outcome(&leaf(s(0))), Outcome::T);
        assert_eq!(outcome(&g(TBF)), Outcome::P);
    }

    #[test]
    fn outcome_table() {
        use Outcome::*;
        let expected = [
            ((1, 1), L),
            ((1, 0), L),
            ((0, 1), L),
            ((-1, -1), R),
            ((-1, 0), R),
            ((0, -1), R),
            ((1, -1), N),
            ((-1, 1), P),
            ((0, 0), T),
        ];
        for ((l, r), o) in expected {
            assert_eq!(Outcome::from_signs(l, r), o);
        }
    }

    #[test]
    fn membership_of_unions() {
        assert!(membership(&g("{1|0|0}"), OutcomeSet::LGe));
        assert!(!membership(&leaf(s(0)), OutcomeSet::LGt));
        for text in ["{1|0|0}", "0", "-2", TBF, "{0|0|-1}"] {
            let x = g(text);
            assert_eq!(
                membership(&x, OutcomeSet::LGe),
                membership(&x, OutcomeSet::LGt) || membership(&x, OutcomeSet::LEq)
            );
            assert_eq!(
                membership(&x, OutcomeSet::RLe),
                membership(&x, OutcomeSet::RLt) || membership(&x, OutcomeSet::REq)
            );
        }
    }

    #[test]
    fn negation_duality_on_fixture() {
        let t = g(TBF);
        let n = negate(&t);
        assert_eq!(left_final_score(&n), -right_final_score(&t));
        assert_eq!(outcome(&n), outcome(&t).swapped());
    }

    #[test]
    fn principal_line_of_tbf() {
        let line = principal_line(&g(TBF), Side::Left);
        let scores: Vec<_> = line.iter().map(|v| v.score().to_string()).collect();
        assert_eq!(scores, ["0", "0", "-1", "-1"]);
    }

    #[test]
    fn set_names_round_trip() {
        for set in OutcomeSet::ALL {
            assert_eq!(set.name().parse::<OutcomeSet>().unwrap(), set);
        }
    }
}
