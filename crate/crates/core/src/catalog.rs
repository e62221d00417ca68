//! Builders for the bundled example games: canonical bimatrix games, a 3x3
//! symmetric demonstration game with an exactly recoverable four-component
//! split, grid discretizations of quantity-competition and contest games, a
//! type-agent embedding of two-player Bayesian games, and seeded random
//! members of every strategic subspace.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::operators;
use crate::space::StrategySpace;
use crate::subspace;

fn space_3x3() -> Arc<StrategySpace> {
    StrategySpace::new(vec![
        vec!["1".into(), "2".into(), "3".into()],
        vec!["1".into(), "2".into(), "3".into()],
    ])
    .unwrap()
}

/// The 3x3 symmetric demonstration game whose four-component decomposition
/// is known in closed form; see [`demo_components`].
pub fn demo_game() -> Game {
    let a = vec![4.0, -1.0, 1.0, 1.0, 2.0, -2.0, -1.0, 0.0, 2.0];
    let b = transpose3(&a);
    Game::new(space_3x3(), vec![a, b]).unwrap()
}

/// The four printed components of [`demo_game`], in order: normalized common
/// interest, normalized zero-sum, own-payoff, and non-strategic. They sum to
/// the demo game entrywise. The last two are a strategically equivalent
/// display split, not an orthogonal one: their sum is the orthogonal
/// zero-sum potential component.
pub fn demo_components() -> [Game; 4] {
    let space = space_3x3();
    let v = vec![2.0, -1.0, -1.0, -1.0, 2.0, -1.0, -1.0, -1.0, 2.0];
    let c = Game::new(space.clone(), vec![v.clone(), v]).unwrap();
    let az = vec![0.0, -1.0, 1.0, 1.0, 0.0, -1.0, -1.0, 1.0, 0.0];
    let bz = transpose3(&az);
    let z = Game::new(space.clone(), vec![az, bz]).unwrap();
    let b1 = vec![1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let b2 = transpose3(&b1);
    let b = Game::new(space.clone(), vec![b1.clone(), b2.clone()]).unwrap();
    let e = Game::new(space, vec![b2, b1]).unwrap();
    [c, z, b, e]
}

fn transpose3(t: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; 9];
    for r in 0..3 {
        for c in 0..3 {
            out[c * 3 + r] = t[r * 3 + c];
        }
    }
    out
}

/// Rock-Paper-Scissors: the canonical normalized zero-sum game.
pub fn rps() -> Game {
    let space = StrategySpace::new(vec![
        vec!["Rock".into(), "Paper".into(), "Scissors".into()],
        vec!["Rock".into(), "Paper".into(), "Scissors".into()],
    ])
    .unwrap();
    let a = vec![0.0, -1.0, 1.0, 1.0, 0.0, -1.0, -1.0, 1.0, 0.0];
    let b = transpose3(&a);
    Game::new(space, vec![a, b]).unwrap()
}

/// Matching Pennies: 2x2 normalized zero-sum, no pure equilibrium.
pub fn matching_pennies() -> Game {
    let space = StrategySpace::new(vec![
        vec!["Heads".into(), "Tails".into()],
        vec!["Heads".into(), "Tails".into()],
    ])
    .unwrap();
    let a = vec![1.0, -1.0, -1.0, 1.0];
    let b = a.iter().map(|x| -x).collect();
    Game::new(space, vec![a, b]).unwrap()
}

/// Pure coordination on k strategies: both players earn 1 on the diagonal
/// and 0 elsewhere.
pub fn coordination(k: usize) -> Game {
    let space = StrategySpace::with_sizes(&[k, k]).unwrap();
    let mut t = vec![0.0; k * k];
    for s in 0..k {
        t[s * k + s] = 1.0;
    }
    Game::new(space, vec![t.clone(), t]).unwrap()
}

/// A Prisoner's Dilemma with separable payoffs, (C,C)=(3,3), (C,D)=(0,5),
/// (D,C)=(5,0), (D,D)=(2,2): defection still dominates, and the payoffs
/// split as own-strategy plus opponent-strategy terms, which makes the game
/// zero-sum equivalent as well as potential.
pub fn separable_pd() -> Game {
    let space = StrategySpace::new(vec![
        vec!["Cooperate".into(), "Defect".into()],
        vec!["Cooperate".into(), "Defect".into()],
    ])
    .unwrap();
    let a = vec![3.0, 0.0, 5.0, 2.0];
    let b = vec![3.0, 5.0, 0.0, 2.0];
    Game::new(space, vec![a, b]).unwrap()
}

/// Quantity competition with linear inverse demand `alpha - beta * total`
/// and linear unit costs, discretized on a fixed quantity grid.
#[derive(Debug, Clone)]
pub struct CournotSpec {
    pub players: usize,
    pub alpha: f64,
    pub beta: f64,
    pub costs: Vec<f64>,
    pub grid: Vec<f64>,
}

impl CournotSpec {
    fn validate(&self) -> Result<()> {
        if self.players < 2 {
            return Err(Error::Precondition("need at least 2 players".into()));
        }
        if nonpositive(self.beta) || nonpositive(self.alpha) {
            return Err(Error::Precondition("alpha and beta must be positive".into()));
        }
        if self.costs.len() != self.players {
            return Err(Error::Precondition(format!(
                "expected {} costs, got {}",
                self.players,
                self.costs.len()
            )));
        }
        if self.costs.iter().any(|c| *c < 0.0) {
            return Err(Error::Precondition("costs must be nonnegative".into()));
        }
        check_grid(&self.grid, false)
    }
}

fn nonpositive(x: f64) -> bool {
    !x.is_finite() || x <= 0.0
}

fn check_grid(grid: &[f64], positive: bool) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Precondition("grid must be nonempty".into()));
    }
    if positive && grid[0] <= 0.0 {
        return Err(Error::Precondition(
            "grid must have a positive minimum".into(),
        ));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("grid must be strictly increasing".into()));
    }
    Ok(())
}

fn grid_space(players: usize, grid: &[f64]) -> Result<Arc<StrategySpace>> {
    let labels: Vec<String> = grid.iter().map(|q| format!("{q}")).collect();
    StrategySpace::new(vec![labels; players])
}

/// Discretized quantity-competition game: payoff
/// `(alpha - beta * sum q_j) * q_i - c_i * q_i` on the grid.
///
/// For symmetric linear costs the continuous best-response fixed point is
/// `(alpha - c) / (beta (n + 1))`; pick the grid so it lies inside the hull
/// if the discretized equilibrium should track it.
pub fn cournot(spec: &CournotSpec) -> Result<Game> {
    spec.validate()?;
    let space = grid_space(spec.players, &spec.grid)?;
    let total = space.num_profiles();
    let mut payoffs = vec![vec![0.0; total]; spec.players];
    for idx in 0..total {
        let mut q_sum = 0.0;
        for i in 0..spec.players {
            q_sum += spec.grid[space.coordinate(idx, i)];
        }
        let price = spec.alpha - spec.beta * q_sum;
        for i in 0..spec.players {
            let q_i = spec.grid[space.coordinate(idx, i)];
            payoffs[i][idx] = price * q_i - spec.costs[i] * q_i;
        }
    }
    Game::new(space, payoffs)
}

/// Contest over a prize `v`: player i wins with probability proportional to
/// her effort and pays a linear effort cost. The grid excludes zero so the
/// share is always well defined.
#[derive(Debug, Clone)]
pub struct ContestSpec {
    pub players: usize,
    pub prize: f64,
    pub costs: Vec<f64>,
    pub grid: Vec<f64>,
}

impl ContestSpec {
    fn validate(&self) -> Result<()> {
        if self.players < 2 {
            return Err(Error::Precondition("need at least 2 players".into()));
        }
        if nonpositive(self.prize) {
            return Err(Error::Precondition("prize must be positive".into()));
        }
        if self.costs.len() != self.players {
            return Err(Error::Precondition(format!(
                "expected {} costs, got {}",
                self.players,
                self.costs.len()
            )));
        }
        if self.costs.iter().any(|c| nonpositive(*c)) {
            return Err(Error::Precondition("costs must be positive".into()));
        }
        check_grid(&self.grid, true)
    }
}

/// Discretized contest game: payoff `(q_i / sum q_j) * v - c_i * q_i`.
pub fn contest(spec: &ContestSpec) -> Result<Game> {
    spec.validate()?;
    let space = grid_space(spec.players, &spec.grid)?;
    let total = space.num_profiles();
    let mut payoffs = vec![vec![0.0; total]; spec.players];
    for idx in 0..total {
        let mut q_sum = 0.0;
        for i in 0..spec.players {
            q_sum += spec.grid[space.coordinate(idx, i)];
        }
        for i in 0..spec.players {
            let q_i = spec.grid[space.coordinate(idx, i)];
            payoffs[i][idx] = q_i / q_sum * spec.prize - spec.costs[i] * q_i;
        }
    }
    Game::new(space, payoffs)
}

/// Closed form for the contest game's total deviation gain at effort profile
/// `s`, valid where every best response is interior:
/// `(sum c)(sum s) - 2 sum_i sqrt(c_i v) sqrt(sum_{l != i} s_l) + (n-1) v`.
pub fn contest_phi_closed_form(spec: &ContestSpec, s: &[f64]) -> f64 {
    let n = spec.players;
    let v = spec.prize;
    let total: f64 = s.iter().sum();
    let cost_sum: f64 = spec.costs.iter().sum();
    let mut acc = cost_sum * total + (n as f64 - 1.0) * v;
    for i in 0..n {
        let others = total - s[i];
        acc -= 2.0 * (spec.costs[i] * v).sqrt() * others.sqrt();
    }
    acc
}

/// Interior best response of player `i` against opposing total effort in the
/// contest game: `sqrt(v * others / c_i) - others`.
pub fn contest_best_response(spec: &ContestSpec, i: usize, others: f64) -> f64 {
    (spec.prize * others / spec.costs[i]).sqrt() - others
}

/// A two-player Bayesian game with k types per side, to be embedded as a
/// 2k-player game with one player per (side, type) pair.
#[derive(Debug, Clone)]
pub struct BayesianSpec {
    /// Strategy counts of the two original players.
    pub strategies: [usize; 2],
    /// Types per side.
    pub types: usize,
    /// Type probabilities of side 1 and side 2; each sums to 1.
    pub probs: [Vec<f64>; 2],
    /// Payoff tables indexed by (s1, s2, type1, type2), row-major.
    pub payoffs: [Vec<f64>; 2],
}

impl BayesianSpec {
    fn validate(&self) -> Result<()> {
        let (m1, m2, k) = (self.strategies[0], self.strategies[1], self.types);
        if m1 == 0 || m2 == 0 || k == 0 {
            return Err(Error::Precondition(
                "strategy and type counts must be positive".into(),
            ));
        }
        for side in 0..2 {
            if self.probs[side].len() != k {
                return Err(Error::Precondition(format!(
                    "side {}: expected {} type probabilities",
                    side + 1,
                    k
                )));
            }
            if self.probs[side].iter().any(|p| *p < 0.0) {
                return Err(Error::Precondition("type probabilities must be nonnegative".into()));
            }
            let sum: f64 = self.probs[side].iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::Precondition(format!(
                    "side {}: type probabilities sum to {sum}",
                    side + 1
                )));
            }
            if self.payoffs[side].len() != m1 * m2 * k * k {
                return Err(Error::Precondition(format!(
                    "side {}: expected {} payoff entries",
                    side + 1,
                    m1 * m2 * k * k
                )));
            }
        }
        Ok(())
    }

    fn payoff(&self, side: usize, s1: usize, s2: usize, t1: usize, t2: usize) -> f64 {
        let k = self.types;
        self.payoffs[side][((s1 * self.strategies[1] + s2) * k + t1) * k + t2]
    }
}

/// Type-agent embedding: player i <= k is side 1 with type i, player i > k
/// is side 2 with type i - k; payoffs are ex-ante expected sums over the
/// opposing side's types.
pub fn bayesian_embed(spec: &BayesianSpec) -> Result<Game> {
    spec.validate()?;
    let k = spec.types;
    let mut sizes = vec![spec.strategies[0]; k];
    sizes.extend(vec![spec.strategies[1]; k]);
    let space = StrategySpace::with_sizes(&sizes)?;
    let total = space.num_profiles();
    let mut payoffs = vec![vec![0.0; total]; 2 * k];
    for idx in 0..total {
        for i in 0..k {
            let s_i = space.coordinate(idx, i);
            let mut acc = 0.0;
            for l in 0..k {
                let s_l = space.coordinate(idx, k + l);
                acc += spec.payoff(0, s_i, s_l, i, l) * spec.probs[0][i] * spec.probs[1][l];
            }
            payoffs[i][idx] = acc;
        }
        for i in 0..k {
            let s_i = space.coordinate(idx, k + i);
            let mut acc = 0.0;
            for l in 0..k {
                let s_l = space.coordinate(idx, l);
                acc += spec.payoff(1, s_l, s_i, l, i) * spec.probs[0][l] * spec.probs[1][i];
            }
            payoffs[k + i][idx] = acc;
        }
    }
    Game::new(space, payoffs)
}

/// Two-types-per-side coordination spec: against type 1 the interests are
/// aligned (both earn `a` or `b` on the diagonal), against type 2 the
/// diagonal payoffs are swapped for the opponent. Both type-contingent
/// games are potential games.
pub fn bayesian_coordination(a: f64, b: f64, p: f64, q: f64) -> Result<BayesianSpec> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
        return Err(Error::Precondition("p and q must lie in [0, 1]".into()));
    }
    let aligned = [
        [a, 0.0], // s2 = 1
        [0.0, b],
    ];
    let swapped_opponent = [
        [b, 0.0],
        [0.0, a],
    ];
    let k = 2;
    let mut f1 = vec![0.0; 2 * 2 * k * k];
    let mut f2 = vec![0.0; 2 * 2 * k * k];
    for s1 in 0..2 {
        for s2 in 0..2 {
            for t1 in 0..k {
                for t2 in 0..k {
                    let at = ((s1 * 2 + s2) * k + t1) * k + t2;
                    let own = if s1 == s2 { aligned[s1][s2] } else { 0.0 };
                    f1[at] = own;
                    f2[at] = if t2 == 0 {
                        own
                    } else if s1 == s2 {
                        swapped_opponent[s1][s2]
                    } else {
                        0.0
                    };
                }
            }
        }
    }
    Ok(BayesianSpec {
        strategies: [2, 2],
        types: 2,
        probs: [vec![p, 1.0 - p], vec![q, 1.0 - q]],
        payoffs: [f1, f2],
    })
}

/// The strategic subspaces and sums a random game can be drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameClass {
    CommonInterest,
    ZeroSum,
    Normalized,
    NonStrategic,
    NormalizedCommonInterest,
    NormalizedZeroSum,
    /// Potential games: common interest plus non-strategic.
    Potential,
    /// Zero-sum equivalent games: zero-sum plus non-strategic.
    ZeroSumEquivalent,
    /// Zero-sum equivalent potential games: multilateral plus non-strategic.
    ZeroSumPotential,
}

impl GameClass {
    pub const ALL: [GameClass; 9] = [
        GameClass::CommonInterest,
        GameClass::ZeroSum,
        GameClass::Normalized,
        GameClass::NonStrategic,
        GameClass::NormalizedCommonInterest,
        GameClass::NormalizedZeroSum,
        GameClass::Potential,
        GameClass::ZeroSumEquivalent,
        GameClass::ZeroSumPotential,
    ];

    pub fn parse(name: &str) -> Result<GameClass> {
        Ok(match name {
            "common-interest" => GameClass::CommonInterest,
            "zero-sum" => GameClass::ZeroSum,
            "normalized" => GameClass::Normalized,
            "non-strategic" => GameClass::NonStrategic,
            "normalized-common-interest" => GameClass::NormalizedCommonInterest,
            "normalized-zero-sum" => GameClass::NormalizedZeroSum,
            "potential" => GameClass::Potential,
            "zero-sum-equivalent" => GameClass::ZeroSumEquivalent,
            "zero-sum-potential" => GameClass::ZeroSumPotential,
            other => {
                return Err(Error::Precondition(format!(
                    "unknown game class '{other}'"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            GameClass::CommonInterest => "common-interest",
            GameClass::ZeroSum => "zero-sum",
            GameClass::Normalized => "normalized",
            GameClass::NonStrategic => "non-strategic",
            GameClass::NormalizedCommonInterest => "normalized-common-interest",
            GameClass::NormalizedZeroSum => "normalized-zero-sum",
            GameClass::Potential => "potential",
            GameClass::ZeroSumEquivalent => "zero-sum-equivalent",
            GameClass::ZeroSumPotential => "zero-sum-potential",
        }
    }
}

/// A game with independent uniform payoffs in [-1, 1], deterministic per
/// seed.
pub fn random_game(space: &Arc<StrategySpace>, seed: u64) -> Game {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_game_with(space, &mut rng)
}

fn random_game_with(space: &Arc<StrategySpace>, rng: &mut ChaCha8Rng) -> Game {
    let total = space.num_profiles();
    let payoffs = (0..space.players())
        .map(|_| (0..total).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    Game::from_tensors(space.clone(), payoffs)
}

/// Draw a random member of a strategic class, deterministic per seed.
/// Closed-form classes project a raw random game; the sum classes add
/// independent draws of each part.
pub fn random_member(class: GameClass, space: &Arc<StrategySpace>, seed: u64) -> Result<Game> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = random_game_with(space, &mut rng);
    let game = match class {
        GameClass::CommonInterest => subspace::project_common_interest(&raw),
        GameClass::ZeroSum => subspace::project_zero_sum(&raw),
        GameClass::Normalized => subspace::project_normalized(&raw),
        GameClass::NonStrategic => subspace::project_non_strategic(&raw),
        GameClass::NormalizedCommonInterest => subspace::project_normalized_common_interest(&raw),
        GameClass::NormalizedZeroSum => subspace::project_normalized_zero_sum(&raw)?,
        GameClass::Potential => {
            let e = subspace::project_non_strategic(&random_game_with(space, &mut rng));
            subspace::project_common_interest(&raw).add(&e)?
        }
        GameClass::ZeroSumEquivalent => {
            let e = subspace::project_non_strategic(&random_game_with(space, &mut rng));
            subspace::project_zero_sum(&raw).add(&e)?
        }
        GameClass::ZeroSumPotential => {
            let n = space.players();
            let total = space.num_profiles();
            // one function per omitted coordinate, each constant along it
            let zetas: Vec<Vec<f64>> = (0..n)
                .map(|l| {
                    let t: Vec<f64> = (0..total).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    operators::axis_average(space, &t, l)
                })
                .collect();
            let payoffs: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    let mut t = vec![0.0; total];
                    for (l, z) in zetas.iter().enumerate() {
                        if l == i {
                            continue;
                        }
                        for (tv, zv) in t.iter_mut().zip(z) {
                            *tv += zv;
                        }
                    }
                    t
                })
                .collect();
            let d = Game::from_tensors(space.clone(), payoffs);
            let e = subspace::project_non_strategic(&random_game_with(space, &mut rng));
            d.add(&e)?
        }
    };
    debug_assert!(class_membership_defect(class, &game) <= 1e-10);
    Ok(game)
}

fn class_membership_defect(class: GameClass, g: &Game) -> f64 {
    match class {
        GameClass::CommonInterest => operators::common_interest_defect(g),
        GameClass::ZeroSum => operators::zero_sum_defect(g),
        GameClass::Normalized => operators::normalized_defect(g),
        GameClass::NonStrategic => operators::non_strategic_defect(g),
        GameClass::NormalizedCommonInterest => {
            operators::common_interest_defect(g).max(operators::normalized_defect(g))
        }
        GameClass::NormalizedZeroSum => {
            operators::zero_sum_defect(g).max(operators::normalized_defect(g))
        }
        GameClass::Potential => {
            crate::classify::potential_cycle_test(g, 1e-10).worst_violation
        }
        GameClass::ZeroSumEquivalent => {
            crate::classify::zero_sum_cycle_test(g, 1e-10).worst_violation
        }
        GameClass::ZeroSumPotential => crate::classify::potential_cycle_test(g, 1e-10)
            .worst_violation
            .max(crate::classify::zero_sum_cycle_test(g, 1e-10).worst_violation),
    }
}
