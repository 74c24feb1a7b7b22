//! Closing-remarks generalizations: dynamic subtraction rules and
//! multi-pile games with per-pile subtraction sets.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::SubtractionSet;

/// "Remove 1 chip or the entire pile": a_0 = 0, a_n = 1 - a_{n-1}/2.
pub fn dynamic_one_or_all(n: u64) -> BigRational {
    let mut a = BigRational::zero();
    for _ in 0..n {
        a = BigRational::one() - a / BigRational::from_integer(BigInt::from(2));
    }
    a
}

/// Closed form (2/3)(1 - (-1/2)^n) of the same recurrence.
pub fn dynamic_one_or_all_closed(n: u64) -> BigRational {
    let minus_half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    let pow = num_traits::pow::pow(minus_half, n as usize);
    BigRational::new(BigInt::from(2), BigInt::from(3)) * (BigRational::one() - pow)
}

/// "Remove any number of chips": a_0 = 0, a_1 = 1, then the averaged
/// recurrence 1 - (1/n)(a_0 + ... + a_{n-1}), which settles at 1/2.
pub fn take_any(n: u64) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    let mut sum = BigRational::zero(); // a_0
    let mut a = BigRational::one(); // a_1
    for m in 2..=n {
        sum += &a;
        a = BigRational::one() - &sum / BigRational::from_integer(BigInt::from(m));
    }
    a
}

/// How the mover's random move is drawn at boundary positions, where not
/// every pile has its full subtraction set available. The interior weights
/// 1/(r |S_j|) are the same under both conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveModel {
    /// Uniform over piles with a legal move, then uniform within the pile.
    PileThenMove,
    /// Uniform over all legal (pile, move) pairs.
    UniformPairs,
}

#[derive(Clone, Debug)]
pub struct MultiPileGame {
    sets: Vec<SubtractionSet>,
    symmetric: bool,
}

impl MultiPileGame {
    pub fn new(sets: Vec<SubtractionSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidSet("need at least one pile".into()));
        }
        let symmetric = sets.iter().all(|s| s == &sets[0]);
        Ok(MultiPileGame { sets, symmetric })
    }

    pub fn piles(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[SubtractionSet] {
        &self.sets
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiPileValue {
    pub value_num: String,
    pub value_den: String,
    pub value_float: f64,
    pub visited_states: usize,
}

struct Solver<'a> {
    game: &'a MultiPileGame,
    model: MoveModel,
    memo: HashMap<Vec<u64>, BigRational>,
    memo_budget: usize,
}

impl Solver<'_> {
    fn key(&self, pos: &[u64]) -> Vec<u64> {
        let mut key = pos.to_vec();
        // Identical per-pile sets make the value symmetric under pile
        // permutation, so positions can share a sorted memo key.
        if self.game.symmetric {
            key.sort_unstable();
        }
        key
    }

    fn value(&mut self, pos: &[u64]) -> Result<BigRational> {
        let key = self.key(pos);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        if self.memo.len() >= self.memo_budget {
            return Err(Error::ResourceLimit(format!(
                "memo budget of {} states exceeded",
                self.memo_budget
            )));
        }

        let legal: Vec<(usize, Vec<u64>)> = self
            .game
            .sets
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let moves: Vec<u64> = s
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&i| i <= pos[j])
                    .collect();
                (j, moves)
            })
            .filter(|(_, moves)| !moves.is_empty())
            .collect();

        // No legal move anywhere: the player to move loses.
        let v = if legal.is_empty() {
            BigRational::zero()
        } else {
            match self.model {
                MoveModel::PileThenMove => {
                    let piles = BigInt::from(legal.len() as u64);
                    let mut acc = BigRational::zero();
                    for (j, moves) in &legal {
                        let mut inner = BigRational::zero();
                        for &i in moves {
                            let mut child = pos.to_vec();
                            child[*j] -= i;
                            inner += self.value(&child)?;
                        }
                        acc += inner
                            / BigRational::from_integer(BigInt::from(moves.len() as u64));
                    }
                    BigRational::one() - acc / BigRational::from_integer(piles)
                }
                MoveModel::UniformPairs => {
                    let total: usize = legal.iter().map(|(_, m)| m.len()).sum();
                    let mut acc = BigRational::zero();
                    for (j, moves) in &legal {
                        for &i in moves {
                            let mut child = pos.to_vec();
                            child[*j] -= i;
                            acc += self.value(&child)?;
                        }
                    }
                    BigRational::one()
                        - acc / BigRational::from_integer(BigInt::from(total as u64))
                }
            }
        };
        self.memo.insert(key, v.clone());
        Ok(v)
    }
}

/// Memoized exact value of one position; also reports how many distinct
/// states the recursion visited.
pub fn multipile_value(
    game: &MultiPileGame,
    pos: &[u64],
    model: MoveModel,
    memo_budget: usize,
) -> Result<(BigRational, usize)> {
    if pos.len() != game.piles() {
        return Err(Error::Precondition(format!(
            "position has {} entries but the game has {} piles",
            pos.len(),
            game.piles()
        )));
    }
    let mut solver = Solver {
        game,
        model,
        memo: HashMap::new(),
        memo_budget,
    };
    let v = solver.value(pos)?;
    Ok((v, solver.memo.len()))
}
