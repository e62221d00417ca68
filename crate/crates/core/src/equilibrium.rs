//! The deviation-gain function and the equilibrium solvers matched to each
//! component class: brute pure scan, bimatrix support enumeration, the
//! uniform profile for normalized zero-sum / common interest games, the
//! dominant-strategy argmax for two-player zero-sum potential games, and a
//! simplex minimax solver for two-player zero-sum games.
//!
//! For two-player zero-sum equivalent games the equilibrium set is convex,
//! so a game with finitely many equilibria has exactly one. Alternative
//! uniqueness conditions for concave games put restrictions on cross
//! derivatives of the payoffs; they are not implemented here. For three or
//! more players the total deviation gain is nonconvex over mixed profiles in
//! general, so the solvers stay enumeration-based rather than attempting
//! global minimization.

use crate::classify::{self, ZeroSumForm};
use crate::error::{Error, Result};
use crate::game::{Game, DEFAULT_TOL};
use crate::linalg;
use crate::profile::MixedProfile;
use crate::simplex;
use crate::space::StrategySpace;

/// Tolerance at which solver output is verified to be a Nash equilibrium.
pub const NASH_TOL: f64 = 1e-8;

/// Total maximal unilateral deviation gain at a profile; zero exactly at
/// Nash equilibria and nonnegative everywhere.
pub fn phi(f: &Game, sigma: &MixedProfile) -> Result<f64> {
    let mut acc = 0.0;
    for i in 0..f.players() {
        acc += f.deviation_gain(sigma, i)?;
    }
    Ok(acc)
}

/// Evaluator for the deviation-gain function, optionally routed through a
/// precomputed zero-sum form (the two routes agree because non-strategic
/// payoffs cancel out of every unilateral deviation).
pub struct PhiEvaluator {
    game: Game,
    form: Option<ZeroSumForm>,
}

impl PhiEvaluator {
    pub fn new(game: &Game) -> Self {
        PhiEvaluator {
            game: game.clone(),
            form: None,
        }
    }

    pub fn with_zero_sum_form(game: &Game, form: ZeroSumForm) -> Self {
        PhiEvaluator {
            game: game.clone(),
            form: Some(form),
        }
    }

    /// Evaluate at a mixed profile.
    pub fn eval(&self, sigma: &MixedProfile) -> Result<f64> {
        match &self.form {
            None => phi(&self.game, sigma),
            Some(form) => {
                // with w zero-sum, the gains reduce to the best-response
                // payoffs of w, no subtraction needed
                let mut acc = 0.0;
                for i in 0..form.w.players() {
                    let mut best = f64::NEG_INFINITY;
                    for t_i in 0..form.w.space().sizes()[i] {
                        best = best.max(form.w.expected_payoff_vs_pure(sigma, i, t_i));
                    }
                    acc += best;
                }
                Ok(acc)
            }
        }
    }

    /// Evaluate at a pure profile.
    pub fn eval_pure(&self, profile: &[usize]) -> Result<f64> {
        let sigma = MixedProfile::pure(self.game.space(), profile)?;
        self.eval(&sigma)
    }
}

/// A list of equilibria with the method that produced them and a degeneracy
/// flag (advisory: rank-deficient support systems or payoff ties).
#[derive(Debug, Clone)]
pub struct NashList {
    pub profiles: Vec<MixedProfile>,
    pub degenerate: bool,
    pub method: String,
    /// Game value, for the minimax method.
    pub value: Option<f64>,
}

/// Exact scan of all pure profiles for unilateral-deviation stability.
pub fn pure_nash(f: &Game) -> NashList {
    let space = f.space();
    let mut profiles = Vec::new();
    for idx in 0..space.num_profiles() {
        let mut stable = true;
        'players: for i in 0..space.players() {
            let current = f.payoff_at(i, idx);
            let own = space.coordinate(idx, i);
            let stride = space.strides()[i];
            let base = idx - own * stride;
            for t_i in 0..space.sizes()[i] {
                if t_i == own {
                    continue;
                }
                if f.payoff_at(i, base + t_i * stride) > current {
                    stable = false;
                    break 'players;
                }
            }
        }
        if stable {
            profiles.push(MixedProfile::pure(space, &space.profile_of(idx)).unwrap());
        }
    }
    NashList {
        profiles,
        degenerate: false,
        method: "pure".into(),
        value: None,
    }
}

/// Guard against combinatorial blowup in support enumeration.
const MAX_SUPPORT_PAIRS: usize = 2_000_000;

fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for s in start..n {
            current.push(s);
            rec(s + 1, n, size, current, out);
            current.pop();
        }
    }
    rec(0, n, size, &mut current, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Support enumeration for two-player games: for every pair of equal-size
/// supports, solve the indifference systems, keep solutions that are
/// nonnegative and best responses, and verify each candidate as a Nash
/// equilibrium. Degenerate structure (singular support systems, non-support
/// ties) sets the advisory flag instead of rejecting the game.
pub fn bimatrix_nash(f: &Game) -> Result<NashList> {
    let space = f.space();
    if space.players() != 2 {
        return Err(Error::Precondition(format!(
            "support enumeration requires 2 players, got {}",
            space.players()
        )));
    }
    let m = space.sizes()[0];
    let k = space.sizes()[1];
    let pair_count: usize = (1..=m.min(k))
        .map(|sz| binomial(m, sz).saturating_mul(binomial(k, sz)))
        .sum();
    if pair_count > MAX_SUPPORT_PAIRS {
        return Err(Error::Precondition(format!(
            "support enumeration would visit {pair_count} support pairs (cap {MAX_SUPPORT_PAIRS})"
        )));
    }
    let a = |r: usize, c: usize| f.payoff_at(0, r * k + c);
    let b = |r: usize, c: usize| f.payoff_at(1, r * k + c);

    let mut profiles: Vec<MixedProfile> = Vec::new();
    let mut degenerate = false;
    const TIE_TOL: f64 = 1e-9;

    for sz in 1..=m.min(k) {
        for rows in combinations(m, sz) {
            for cols in combinations(k, sz) {
                // column player's mixture keeps the support rows indifferent
                let y = solve_support(&rows, &cols, sz, &a);
                let x = solve_support_t(&rows, &cols, sz, &b);
                let (Some((y, u)), Some((x, w))) = (y, x) else {
                    degenerate = true;
                    continue;
                };
                if x.iter().chain(y.iter()).any(|&p| p < -TIE_TOL) {
                    continue;
                }
                // best-response optimality outside the supports
                let mut valid = true;
                for r in 0..m {
                    if rows.contains(&r) {
                        continue;
                    }
                    let payoff: f64 = cols.iter().zip(&y).map(|(&c, &yc)| a(r, c) * yc).sum();
                    if payoff > u + TIE_TOL {
                        valid = false;
                        break;
                    }
                    if (payoff - u).abs() <= TIE_TOL {
                        degenerate = true;
                    }
                }
                if valid {
                    for c in 0..k {
                        if cols.contains(&c) {
                            continue;
                        }
                        let payoff: f64 = rows.iter().zip(&x).map(|(&r, &xr)| b(r, c) * xr).sum();
                        if payoff > w + TIE_TOL {
                            valid = false;
                            break;
                        }
                        if (payoff - w).abs() <= TIE_TOL {
                            degenerate = true;
                        }
                    }
                }
                if !valid {
                    continue;
                }
                let sigma1 = embed(&rows, &x, m);
                let sigma2 = embed(&cols, &y, k);
                let Ok(profile) = MixedProfile::new(space, vec![sigma1, sigma2]) else {
                    continue;
                };
                if !f.is_nash(&profile, NASH_TOL)? {
                    continue;
                }
                if profiles.iter().all(|p| p.max_abs_diff(&profile) > 1e-8) {
                    profiles.push(profile);
                }
            }
        }
    }
    Ok(NashList {
        profiles,
        degenerate,
        method: "support".into(),
        value: None,
    })
}

/// Solve the indifference system for the column player's weights on `cols`
/// given support rows; returns the weights and the common payoff.
fn solve_support(
    rows: &[usize],
    cols: &[usize],
    sz: usize,
    a: &dyn Fn(usize, usize) -> f64,
) -> Option<(Vec<f64>, f64)> {
    // unknowns: sz weights + the common payoff u
    let mut mat = vec![vec![0.0; sz + 1]; sz + 1];
    let mut rhs = vec![0.0; sz + 1];
    for (ri, &r) in rows.iter().enumerate() {
        for (ci, &c) in cols.iter().enumerate() {
            mat[ri][ci] = a(r, c);
        }
        mat[ri][sz] = -1.0;
    }
    for ci in 0..sz {
        mat[sz][ci] = 1.0;
    }
    rhs[sz] = 1.0;
    let sol = linalg::solve(mat, rhs)?;
    Some((sol[..sz].to_vec(), sol[sz]))
}

fn solve_support_t(
    rows: &[usize],
    cols: &[usize],
    sz: usize,
    b: &dyn Fn(usize, usize) -> f64,
) -> Option<(Vec<f64>, f64)> {
    let mut mat = vec![vec![0.0; sz + 1]; sz + 1];
    let mut rhs = vec![0.0; sz + 1];
    for (ci, &c) in cols.iter().enumerate() {
        for (ri, &r) in rows.iter().enumerate() {
            mat[ci][ri] = b(r, c);
        }
        mat[ci][sz] = -1.0;
    }
    for ri in 0..sz {
        mat[sz][ri] = 1.0;
    }
    rhs[sz] = 1.0;
    let sol = linalg::solve(mat, rhs)?;
    Some((sol[..sz].to_vec(), sol[sz]))
}

/// Scatter support weights into a full probability vector, clamping solver
/// rounding and renormalizing.
fn embed(support: &[usize], weights: &[f64], len: usize) -> Vec<f64> {
    let mut v = vec![0.0; len];
    for (&s, &w) in support.iter().zip(weights) {
        v[s] = w.max(0.0);
    }
    let sum: f64 = v.iter().sum();
    if sum > 0.0 {
        for x in v.iter_mut() {
            *x /= sum;
        }
    }
    v
}

/// The uniform mixed profile on a space.
pub fn uniform_profile(space: &StrategySpace) -> MixedProfile {
    MixedProfile::uniform(space)
}

/// For a normalized zero-sum or normalized common interest game, check that
/// the uniform profile is a Nash equilibrium and that every pure own
/// strategy earns exactly zero against the uniform opponents. Errors when
/// the game is not in either class.
pub fn verify_uniform_ne(f: &Game) -> Result<bool> {
    let tol = DEFAULT_TOL;
    if !classify::is_normalized(f, tol) {
        return Err(Error::Precondition(
            "game is not normalized (own-axis marginal sums are nonzero)".into(),
        ));
    }
    if !classify::is_zero_sum(f, tol) && !classify::is_common_interest(f, tol) {
        return Err(Error::Precondition(
            "game is neither zero-sum nor common interest".into(),
        ));
    }
    let sigma = uniform_profile(f.space());
    if !f.is_nash(&sigma, 1e-10)? {
        return Ok(false);
    }
    for i in 0..f.players() {
        for t_i in 0..f.space().sizes()[i] {
            if f.expected_payoff_vs_pure(&sigma, i, t_i).abs() > 1e-10 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Dominant-strategy solution of a two-player zero-sum equivalent potential
/// game: the own-payoff parts from the multilateral representation are
/// maximized coordinatewise.
#[derive(Debug, Clone)]
pub struct DominantStrategy {
    /// One maximizing pure profile (lowest indices on ties).
    pub profile: Vec<usize>,
    /// Whether both maximizers are unique.
    pub strict: bool,
    /// All tied maximizers per player.
    pub maximizers: Vec<Vec<usize>>,
}

pub fn dominant_strategy(f: &Game) -> Result<DominantStrategy> {
    if f.players() != 2 {
        return Err(Error::Precondition(format!(
            "dominant-strategy solver requires 2 players, got {}",
            f.players()
        )));
    }
    let form = classify::extract_multilateral(f, DEFAULT_TOL)?;
    let mut profile = Vec::with_capacity(2);
    let mut maximizers = Vec::with_capacity(2);
    let mut strict = true;
    const TIE_TOL: f64 = 1e-9;
    for player in 0..2 {
        // the part of this player's payoff driven by her own strategy is the
        // other coordinate's zeta
        let own = form.zeta_reduced(1 - player);
        let best = own.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let argmax: Vec<usize> = own
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= best - TIE_TOL)
            .map(|(s, _)| s)
            .collect();
        if argmax.len() > 1 {
            strict = false;
        }
        profile.push(argmax[0]);
        maximizers.push(argmax);
    }
    let check = MixedProfile::pure(f.space(), &profile)?;
    if !f.is_nash(&check, NASH_TOL)? {
        return Err(Error::InternalConsistency(
            "dominant profile failed the equilibrium check".into(),
        ));
    }
    Ok(DominantStrategy {
        profile,
        strict,
        maximizers,
    })
}

/// Minimax solution of a two-player zero-sum game.
#[derive(Debug, Clone)]
pub struct MinimaxSolution {
    /// Expected payoff to player 1 at the optimum.
    pub value: f64,
    pub strategies: [Vec<f64>; 2],
}

pub fn minimax(f: &Game) -> Result<MinimaxSolution> {
    if f.players() != 2 {
        return Err(Error::Precondition(format!(
            "minimax requires 2 players, got {}",
            f.players()
        )));
    }
    if !classify::is_zero_sum(f, DEFAULT_TOL) {
        return Err(Error::Precondition(
            "minimax requires a zero-sum game (pointwise player sums must vanish)".into(),
        ));
    }
    let m = f.space().sizes()[0];
    let k = f.space().sizes()[1];
    let (value, x, y) = simplex::solve_matrix_game(f.tensor(0), m, k);
    let profile = MixedProfile::new(f.space(), vec![x.clone(), y.clone()])?;
    if !f.is_nash(&profile, NASH_TOL)? {
        return Err(Error::InternalConsistency(
            "minimax strategies failed the equilibrium check".into(),
        ));
    }
    Ok(MinimaxSolution {
        value,
        strategies: [x, y],
    })
}

/// One row of a symmetric-profile deviation-gain grid.
#[derive(Debug, Clone, Copy)]
pub struct PhiGridRow {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub phi: f64,
}

/// Evaluate the deviation-gain function at symmetric profiles over a
/// barycentric grid, for two-player symmetric games with three strategies
/// per player.
pub fn phi_grid(f: &Game, resolution: usize) -> Result<Vec<PhiGridRow>> {
    let space = f.space();
    if space.players() != 2 || space.sizes() != [3, 3] {
        return Err(Error::Precondition(
            "grid evaluation requires a two-player game with 3 strategies per player".into(),
        ));
    }
    for s in 0..3 {
        for t in 0..3 {
            if (f.payoff_at(0, s * 3 + t) - f.payoff_at(1, t * 3 + s)).abs() > DEFAULT_TOL {
                return Err(Error::Precondition(format!(
                    "grid evaluation requires a symmetric game; asymmetry at ({}, {})",
                    s + 1,
                    t + 1
                )));
            }
        }
    }
    if resolution < 2 {
        return Err(Error::Precondition("resolution must be at least 2".into()));
    }
    let r = resolution as f64;
    let mut rows = Vec::new();
    for i in 0..=resolution {
        for j in 0..=(resolution - i) {
            let p1 = i as f64 / r;
            let p2 = j as f64 / r;
            let p3 = ((resolution - i - j) as f64) / r;
            let p = vec![p1, p2, p3];
            let sigma = MixedProfile::new(space, vec![p.clone(), p])?;
            rows.push(PhiGridRow {
                p1,
                p2,
                p3,
                phi: phi(f, &sigma)?,
            });
        }
    }
    Ok(rows)
}

/// Check that a profile which is Nash for two games stays Nash for every
/// positive linear combination of them.
pub fn linear_combination_ne_check(
    f: &Game,
    g: &Game,
    sigma: &MixedProfile,
    rho_f: f64,
    rho_g: f64,
) -> Result<bool> {
    if rho_f <= 0.0 || rho_g <= 0.0 {
        return Err(Error::Precondition(
            "combination coefficients must be positive".into(),
        ));
    }
    if !f.is_nash(sigma, NASH_TOL)? || !g.is_nash(sigma, NASH_TOL)? {
        return Err(Error::Precondition(
            "profile must be a Nash equilibrium of both games".into(),
        ));
    }
    let combo = f.scale(rho_f).add(&g.scale(rho_g))?;
    combo.is_nash(sigma, NASH_TOL)
}
