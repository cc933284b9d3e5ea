//! Scoring Toads-and-Frogs.
//!
//! Left moves toads rightward and Right moves frogs leftward. A piece either
//! slides one cell into a blank or jumps a single adjacent opposing piece
//! onto the blank behind it; each jump is worth one point to the jumper.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::term::{GameTerm, Side};
use crate::value::Score;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Toad,
    Frog,
    Blank,
}

impl Cell {
    pub fn letter(self) -> char {
        match self {
            Cell::Toad => 'T',
            Cell::Frog => 'F',
            Cell::Blank => 'B',
        }
    }

    fn swapped(self) -> Cell {
        match self {
            Cell::Toad => Cell::Frog,
            Cell::Frog => Cell::Toad,
            Cell::Blank => Cell::Blank,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TfError {
    #[error("empty position")]
    Empty,
    #[error("illegal character {found:?} at offset {offset}; expected T, F or B")]
    IllegalChar { found: char, offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TfPosition {
    pub cells: Vec<Cell>,
    pub score: Score,
}

impl TfPosition {
    pub fn new(cells: Vec<Cell>, score: Score) -> Result<Self, TfError> {
        if cells.is_empty() {
            return Err(TfError::Empty);
        }
        Ok(TfPosition { cells, score })
    }

    /// The strip read right to left with toads and frogs exchanged.
    pub fn mirrored(&self) -> TfPosition {
        TfPosition { cells: self.cells.iter().rev().map(|c| c.swapped()).collect(), score: -&self.score }
    }

    pub fn strip(&self) -> String {
        self.cells.iter().map(|c| c.letter()).collect()
    }
}

impl fmt::Display for TfPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.strip(), self.score)
    }
}

impl FromStr for TfPosition {
    type Err = TfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        tf_parse(s)
    }
}

/// Parses a strip over `T`, `F`, `B`, starting at score 0. Surrounding
/// whitespace is ignored.
pub fn tf_parse(text: &str) -> Result<TfPosition, TfError> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let mut cells = Vec::with_capacity(trimmed.len());
    for (i, ch) in trimmed.char_indices() {
        cells.push(match ch {
            'T' => Cell::Toad,
            'F' => Cell::Frog,
            'B' => Cell::Blank,
            other => return Err(TfError::IllegalChar { found: other, offset: offset + i }),
        });
    }
    TfPosition::new(cells, Score::zero())
}

/// Positions reachable in one move by `player`, with the score change.
pub fn tf_moves(p: &TfPosition, player: Side) -> Vec<(TfPosition, Score)> {
    let (piece, prey, dir, gain): (Cell, Cell, isize, i64) = match player {
        Side::Left => (Cell::Toad, Cell::Frog, 1, 1),
        Side::Right => (Cell::Frog, Cell::Toad, -1, -1),
    };
    let n = p.cells.len() as isize;
    let at = |i: isize| (0..n).contains(&i).then(|| p.cells[i as usize]);
    let mut out = Vec::new();
    for i in 0..n {
        if at(i) != Some(piece) {
            continue;
        }
        let (target, delta) = if at(i + dir) == Some(Cell::Blank) {
            (i + dir, 0)
        } else if at(i + dir) == Some(prey) && at(i + 2 * dir) == Some(Cell::Blank) {
            (i + 2 * dir, gain)
        } else {
            continue;
        };
        let mut cells = p.cells.clone();
        cells.swap(i as usize, target as usize);
        let delta = Score::from_integer(delta);
        out.push((TfPosition { cells, score: &p.score + &delta }, delta));
    }
    out
}

/// The game tree of `p`, with every vertex labelled by its running score.
pub fn tf_to_game(p: &TfPosition) -> GameTerm {
    let mut memo = HashMap::new();
    expand(p, &mut memo)
}

fn expand(p: &TfPosition, memo: &mut HashMap<TfPosition, GameTerm>) -> GameTerm {
    if let Some(done) = memo.get(p) {
        return done.clone();
    }
    let left = tf_moves(p, Side::Left).into_iter().map(|(q, _)| expand(&q, memo)).collect();
    let right = tf_moves(p, Side::Right).into_iter().map(|(q, _)| expand(&q, memo)).collect();
    let g = GameTerm::new(left, p.score.clone(), right);
    memo.insert(p.clone(), g.clone());
    g
}
