//! Finite universes of games, used as the context set when testing relations.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::GameTerm;
use crate::value::Score;

/// Refuse to materialize universes larger than this.
pub const MAX_UNIVERSE: u128 = 2_000_000;

/// Bounds of an enumerated universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniverseSpec {
    pub max_depth: usize,
    /// Largest option set on either side of any vertex.
    pub max_width: usize,
    /// Score alphabet for every vertex.
    pub scores: Vec<Score>,
    /// Largest vertex count of a whole game; `None` for no bound.
    pub max_nodes: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("the score set is empty")]
    NoScores,
    #[error("a node budget of 0 admits no games")]
    ZeroNodes,
    #[error("universe has {count} games, more than the limit of {limit}")]
    TooLarge { count: u128, limit: u128 },
}

impl Default for UniverseSpec {
    fn default() -> Self {
        UniverseSpec {
            max_depth: 2,
            max_width: 2,
            scores: (-2..=2).map(Score::from_integer).collect(),
            max_nodes: Some(3),
        }
    }
}

impl UniverseSpec {
    pub fn new(max_depth: usize, max_width: usize, scores: Vec<Score>, max_nodes: Option<u64>) -> Result<Self, UniverseError> {
        let mut spec = UniverseSpec { max_depth, max_width, scores, max_nodes };
        spec.normalize()?;
        Ok(spec)
    }

    /// Integer scores `lo..=hi`.
    pub fn with_range(max_depth: usize, max_width: usize, lo: i64, hi: i64, max_nodes: Option<u64>) -> Result<Self, UniverseError> {
        Self::new(max_depth, max_width, (lo..=hi).map(Score::from_integer).collect(), max_nodes)
    }

    fn normalize(&mut self) -> Result<(), UniverseError> {
        self.scores.sort();
        self.scores.dedup();
        if self.scores.is_empty() {
            return Err(UniverseError::NoScores);
        }
        if self.max_nodes == Some(0) {
            return Err(UniverseError::ZeroNodes);
        }
        Ok(())
    }

    /// Largest tree the depth and width bounds allow.
    fn max_tree_nodes(&self) -> u64 {
        let branching = 2u64.saturating_mul(self.max_width as u64);
        let mut level = 1u64;
        let mut total = 1u64;
        for _ in 0..self.max_depth {
            level = level.saturating_mul(branching);
            total = total.saturating_add(level);
        }
        total
    }

    /// The node budget when it actually constrains the universe.
    fn effective_budget(&self) -> Option<usize> {
        self.max_nodes
            .filter(|&n| n < self.max_tree_nodes())
            .map(|n| usize::try_from(n).unwrap_or(usize::MAX))
    }

    /// Number of games in the universe, without building them.
    pub fn count(&self) -> u128 {
        let bounded = self.effective_budget().is_some();
        let budget = self.effective_budget().unwrap_or(1);
        let scores = self.scores.len() as u128;
        // histogram[n] = number of games with exactly n vertices (index 0 unused);
        // with no node bound, everything is folded into index 1.
        let fold = |n: usize| if bounded { n } else { 1 };
        let mut games = vec![0u128; budget + 1];
        games[1] = scores;
        for _ in 0..self.max_depth {
            let sets = option_set_histogram(&games, self.max_width, budget, bounded);
            let mut next = vec![0u128; budget + 1];
            for (a, &ca) in sets.iter().enumerate() {
                for (b, &cb) in sets.iter().enumerate() {
                    let n = fold(1 + a + b);
                    if ca == 0 || cb == 0 || (bounded && n > budget) {
                        continue;
                    }
                    next[n] = next[n].saturating_add(scores.saturating_mul(ca).saturating_mul(cb));
                }
            }
            games = next;
        }
        games.iter().fold(0u128, |acc, &c| acc.saturating_add(c))
    }

    /// Compact human-readable description.
    pub fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for UniverseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scores: Vec<String> = self.scores.iter().map(Score::to_string).collect();
        write!(f, "depth<={} width<={} scores={{{}}}", self.max_depth, self.max_width, scores.join(","))?;
        match self.max_nodes {
            Some(n) => write!(f, " nodes<={n}"),
            None => Ok(()),
        }
    }
}

/// Histogram over total vertex count of option sets of size <= `width`
/// drawn without repetition from `games`. Unbounded counts live at index 0.
fn option_set_histogram(games: &[u128], width: usize, budget: usize, bounded: bool) -> Vec<u128> {
    // dp[k][n]: sets of size k with n vertices; computed by processing one
    // vertex-count class at a time and choosing how many members it supplies.
    let len = budget + 1;
    let mut dp = vec![vec![0u128; len]; width + 1];
    dp[0][0] = 1;
    for (n, &count) in games.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let mut next = dp.clone();
        for k in 0..=width {
            for total in 0..len {
                if dp[k][total] == 0 {
                    continue;
                }
                for take in 1..=(width - k) {
                    let t = if bounded { total + take * n } else { 0 };
                    if t >= len {
                        break;
                    }
                    let ways = binomial(count, take as u128);
                    next[k + take][t] = next[k + take][t].saturating_add(dp[k][total].saturating_mul(ways));
                }
            }
        }
        dp = next;
    }
    let mut out = vec![0u128; len];
    for row in dp {
        for (n, c) in row.into_iter().enumerate() {
            out[n] = out[n].saturating_add(c);
        }
    }
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Every game within the bounds, free of duplicates, sorted by order key.
pub fn enumerate_universe(spec: &UniverseSpec) -> Result<Vec<GameTerm>, UniverseError> {
    let mut spec = spec.clone();
    spec.normalize()?;
    let count = spec.count();
    if count > MAX_UNIVERSE {
        return Err(UniverseError::TooLarge { count, limit: MAX_UNIVERSE });
    }
    let budget = spec.effective_budget().unwrap_or(usize::MAX);
    let mut games: Vec<GameTerm> = spec.scores.iter().cloned().map(GameTerm::leaf).collect();
    for _ in 0..spec.max_depth {
        let mut pool = games.clone();
        pool.sort_by_key(|g| g.node_count());
        let sets = option_sets(&pool, spec.max_width, budget.saturating_sub(1));
        let mut next = Vec::new();
        for (left, ln) in &sets {
            for (right, rn) in &sets {
                if 1 + ln + rn > budget {
                    continue;
                }
                for s in &spec.scores {
                    next.push(GameTerm::new(left.clone(), s.clone(), right.clone()));
                }
            }
        }
        games = next;
    }
    games.sort();
    Ok(games)
}

/// Option sets of at most `width` distinct members from `pool` (sorted by
/// vertex count), with their total vertex count, within `budget`.
fn option_sets(pool: &[GameTerm], width: usize, budget: usize) -> Vec<(Vec<GameTerm>, usize)> {
    fn extend(
        pool: &[GameTerm],
        start: usize,
        width: usize,
        budget: usize,
        current: &mut Vec<GameTerm>,
        nodes: usize,
        out: &mut Vec<(Vec<GameTerm>, usize)>,
    ) {
        out.push((current.clone(), nodes));
        if current.len() == width {
            return;
        }
        for i in start..pool.len() {
            let n = usize::try_from(pool[i].node_count()).unwrap_or(usize::MAX);
            if nodes.saturating_add(n) > budget {
                break;
            }
            current.push(pool[i].clone());
            extend(pool, i + 1, width, budget, current, nodes + n, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    extend(pool, 0, width, budget, &mut Vec::new(), 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::identical;

    fn spec(depth: usize, width: usize, scores: &[i64], nodes: Option<u64>) -> UniverseSpec {
        UniverseSpec::new(depth, width, scores.iter().copied().map(Score::from_integer).collect(), nodes).unwrap()
    }

    /// Independent generator: nested loops over every (left, score, right)
    /// with explicit subset construction, no node bound.
    fn brute_force(depth: usize, width: usize, scores: &[i64]) -> Vec<GameTerm> {
        let mut games: Vec<GameTerm> = scores.iter().map(|&s| GameTerm::leaf(Score::from_integer(s))).collect();
        for _ in 0..depth {
            let n = games.len();
            let mut subsets: Vec<Vec<GameTerm>> = Vec::new();
            for mask in 0u64..(1u64 << n) {
                if (mask.count_ones() as usize) <= width {
                    subsets.push((0..n).filter(|i| mask >> i & 1 == 1).map(|i| games[i].clone()).collect());
                }
            }
            let mut next = Vec::new();
            for l in &subsets {
                for r in &subsets {
                    for &s in scores {
                        next.push(GameTerm::new(l.clone(), Score::from_integer(s), r.clone()));
                    }
                }
            }
            games = next;
        }
        games.sort();
        games.dedup();
        games
    }

    #[test]
    fn trivial_universes() {
        let zero_only = enumerate_universe(&spec(0, 0, &[0], None)).unwrap();
        assert_eq!(zero_only.len(), 1);
        assert_eq!(zero_only[0].to_string(), "0");
        assert_eq!(enumerate_universe(&spec(0, 0, &[-1, 0, 1], None)).unwrap().len(), 3);
    }

    #[test]
    fn matches_brute_force_generator() {
        for (d, w, scores) in [(1, 1, vec![0, 1]), (1, 2, vec![-1, 0, 1]), (2, 1, vec![0, 1]), (2, 2, vec![0])] {
            let fast = enumerate_universe(&spec(d, w, &scores, None)).unwrap();
            let slow = brute_force(d, w, &scores);
            assert_eq!(fast.len(), slow.len(), "d={d} w={w} scores={scores:?}");
            assert!(fast.iter().zip(&slow).all(|(a, b)| identical(a, b)));
            assert_eq!(spec(d, w, &scores, None).count(), fast.len() as u128);
        }
        assert_eq!(enumerate_universe(&spec(1, 1, &[0, 1], None)).unwrap().len(), 18);
    }

    #[test]
    fn node_budget_filters_brute_force() {
        for budget in 1..=4 {
            let s = spec(2, 1, &[0, 1], Some(budget));
            let fast = enumerate_universe(&s).unwrap();
            let slow: Vec<_> = brute_force(2, 1, &[0, 1]).into_iter().filter(|g| g.node_count() <= budget).collect();
            assert_eq!(fast, slow, "budget {budget}");
            assert_eq!(s.count(), fast.len() as u128);
        }
    }

    #[test]
    fn default_universe_size() {
        let s = UniverseSpec::default();
        assert_eq!(s.count(), 780);
        let games = enumerate_universe(&s).unwrap();
        assert_eq!(games.len(), 780);
        assert!(games.windows(2).all(|w| w[0] < w[1]));
        assert!(games.iter().all(|g| g.depth() <= 2 && g.node_count() <= 3));
    }

    #[test]
    fn counts_match_independent_tally() {
        // depth<=2, width<=2, five scores, by vertex budget.
        let expected = [(1, 5), (2, 55), (3, 780), (4, 8530), (5, 78780)];
        for (nodes, count) in expected {
            assert_eq!(UniverseSpec::with_range(2, 2, -2, 2, Some(nodes)).unwrap().count(), count);
        }
    }

    #[test]
    fn refuses_huge_universes() {
        let s = UniverseSpec::with_range(2, 2, -2, 2, None).unwrap();
        assert!(matches!(enumerate_universe(&s), Err(UniverseError::TooLarge { .. })));
        assert_eq!(UniverseSpec::new(1, 1, vec![], None), Err(UniverseError::NoScores));
        assert_eq!(UniverseSpec::with_range(1, 1, 0, 0, Some(0)), Err(UniverseError::ZeroNodes));
    }
}
