//! Membership tests and constructive extractors for the strategic classes.
//!
//! Two cycle conditions do the heavy lifting: the four-term pairwise cycle
//! identity characterizes potential games, and an alternating sum of the
//! player-sum tensor over combinatorial cubes characterizes zero-sum
//! equivalent games. Both report the worst violation, which doubles as a
//! near-miss diagnostic for discretized continuous games. The extractors
//! produce the certifying objects: a potential function, a zero-sum plus
//! non-strategic split, and a multilateral representation.

use crate::error::{Error, Result};
use crate::game::{Game, DEFAULT_TOL};
use crate::operators;
use crate::subspace;

/// Outcome of a cycle scan: pass/fail plus the worst absolute violation.
#[derive(Debug, Clone, Copy)]
pub struct CycleTestReport {
    pub pass: bool,
    pub worst_violation: f64,
}

/// All players receive identical payoffs at every profile, within `tol`.
pub fn is_common_interest(f: &Game, tol: f64) -> bool {
    operators::common_interest_defect(f) <= tol
}

/// Payoffs sum to zero across players at every profile, within `tol`.
pub fn is_zero_sum(f: &Game, tol: f64) -> bool {
    operators::zero_sum_defect(f) <= tol
}

/// Every own-axis marginal sum is zero, within `tol`.
pub fn is_normalized(f: &Game, tol: f64) -> bool {
    operators::normalized_defect(f) <= tol
}

/// Each player's payoff is constant along her own strategy axis, within
/// `tol`.
pub fn is_non_strategic(f: &Game, tol: f64) -> bool {
    operators::non_strategic_defect(f) <= tol
}

/// Pairwise four-term cycle identity with all spectator coordinates fixed:
/// for every player pair and every rectangle of strategy swaps, the two
/// players' second differences must agree. Passing characterizes potential
/// games.
pub fn potential_cycle_test(f: &Game, tol: f64) -> CycleTestReport {
    let space = f.space();
    let n = space.players();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let (ki, kj) = (space.sizes()[i], space.sizes()[j]);
            let (sti, stj) = (space.strides()[i], space.strides()[j]);
            for idx in 0..space.num_profiles() {
                if space.coordinate(idx, i) != 0 || space.coordinate(idx, j) != 0 {
                    continue;
                }
                let ti = f.tensor(i);
                let tj = f.tensor(j);
                for ai in 0..ki {
                    for bi in (ai + 1)..ki {
                        for aj in 0..kj {
                            for bj in (aj + 1)..kj {
                                let aa = idx + ai * sti + aj * stj;
                                let ba = idx + bi * sti + aj * stj;
                                let ab = idx + ai * sti + bj * stj;
                                let bb = idx + bi * sti + bj * stj;
                                let di = ti[aa] - ti[ba] - ti[ab] + ti[bb];
                                let dj = tj[aa] - tj[ba] - tj[ab] + tj[bb];
                                worst = worst.max((di - dj).abs());
                            }
                        }
                    }
                }
            }
        }
    }
    CycleTestReport {
        pass: worst <= tol,
        worst_violation: worst,
    }
}

/// Alternating sum of the pointwise player-sum tensor over every
/// combinatorial cube of strategy swaps (one pair per player). Passing
/// characterizes zero-sum equivalent games.
pub fn zero_sum_cycle_test(f: &Game, tol: f64) -> CycleTestReport {
    let space = f.space();
    let n = space.players();
    let total_sum = operators::player_sum(f);
    let pairs: Vec<Vec<(usize, usize)>> = space
        .sizes()
        .iter()
        .map(|&k| {
            let mut v = Vec::new();
            for a in 0..k {
                for b in (a + 1)..k {
                    v.push((a, b));
                }
            }
            v
        })
        .collect();
    let mut worst: f64 = 0.0;
    // a player with a single strategy contributes no swap pair and every
    // cube degenerates to zero, which matches the math: such games are
    // always zero-sum equivalent
    if pairs.iter().any(|p| p.is_empty()) {
        return CycleTestReport {
            pass: true,
            worst_violation: 0.0,
        };
    }
    let mut choice = vec![0usize; n];
    loop {
        let mut value = 0.0;
        for corner in 0..(1usize << n) {
            let mut idx = 0usize;
            let mut num_b = 0u32;
            for (l, &c) in choice.iter().enumerate() {
                let (a, b) = pairs[l][c];
                let s = if corner & (1 << l) != 0 {
                    num_b += 1;
                    b
                } else {
                    a
                };
                idx += s * space.strides()[l];
            }
            let sign = if num_b.is_multiple_of(2) { 1.0 } else { -1.0 };
            value += sign * total_sum[idx];
        }
        worst = worst.max(value.abs());
        // odometer over the per-player pair choices
        let mut l = 0;
        loop {
            choice[l] += 1;
            if choice[l] < pairs[l].len() {
                break;
            }
            choice[l] = 0;
            l += 1;
            if l == n {
                return CycleTestReport {
                    pass: worst <= tol,
                    worst_violation: worst,
                };
            }
        }
    }
}

/// Simplified zero-sum equivalence condition for two-player symmetric games:
/// `f1(s,t) - f1(t,t) + f1(t,s) - f1(s,s) = 0` for all `s, t`. Errors on
/// asymmetric input.
pub fn symmetric_zero_sum_test(f: &Game, tol: f64) -> Result<bool> {
    let space = f.space();
    if space.players() != 2 || space.sizes()[0] != space.sizes()[1] {
        return Err(Error::Precondition(
            "symmetric test requires a square two-player game".into(),
        ));
    }
    let k = space.sizes()[0];
    let at = |p: usize, s1: usize, s2: usize| f.payoff_at(p, s1 * k + s2);
    for s in 0..k {
        for t in 0..k {
            if (at(0, s, t) - at(1, t, s)).abs() > tol {
                return Err(Error::Precondition(format!(
                    "game is not symmetric at profile ({}, {})",
                    s + 1,
                    t + 1
                )));
            }
        }
    }
    for s in 0..k {
        for t in 0..k {
            let v = at(0, s, t) - at(0, t, t) + at(0, t, s) - at(0, s, s);
            if v.abs() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-player search for an ignorable coordinate.
#[derive(Debug, Clone)]
pub struct AxisIndependenceReport {
    pub pass: bool,
    /// For each player, the first coordinate along which her payoff is
    /// constant, if any.
    pub witness: Vec<Option<usize>>,
}

/// For each player, look for some coordinate `l` such that her payoff does
/// not depend on `s_l`. When every player has one, the game is strategically
/// equivalent to a zero-sum game.
pub fn axis_independence_test(f: &Game, tol: f64) -> AxisIndependenceReport {
    let space = f.space();
    let n = space.players();
    let mut witness = Vec::with_capacity(n);
    for i in 0..n {
        let mut found = None;
        for l in 0..n {
            let avg = operators::axis_average(space, f.tensor(i), l);
            let defect = f
                .tensor(i)
                .iter()
                .zip(&avg)
                .fold(0.0f64, |w, (x, a)| w.max((x - a).abs()));
            if defect <= tol {
                found = Some(l);
                break;
            }
        }
        witness.push(found);
    }
    AxisIndependenceReport {
        pass: witness.iter().all(|w| w.is_some()),
        witness,
    }
}

/// Potential function of a potential game, built by coordinate-path summation
/// of own-payoff differences from the all-first-strategies base profile.
/// Canonical up to the path order, with value zero at the base profile.
pub fn extract_potential(f: &Game, tol: f64) -> Result<Vec<f64>> {
    let report = potential_cycle_test(f, tol);
    if !report.pass {
        return Err(Error::NotPotential {
            violation: report.worst_violation,
        });
    }
    Ok(potential_by_path(f))
}

fn potential_by_path(f: &Game) -> Vec<f64> {
    let space = f.space();
    let n = space.players();
    let total = space.num_profiles();
    let mut v = vec![0.0; total];
    for idx in 0..total {
        let mut prefix = 0usize;
        let mut acc = 0.0;
        for i in 0..n {
            let with = prefix + space.coordinate(idx, i) * space.strides()[i];
            acc += f.payoff_at(i, with) - f.payoff_at(i, prefix);
            prefix = with;
        }
        v[idx] = acc;
    }
    v
}

/// A zero-sum plus non-strategic split certifying zero-sum equivalence.
#[derive(Debug, Clone)]
pub struct ZeroSumForm {
    /// Zero-sum part.
    pub w: Game,
    /// Non-strategic part; `w + h` reproduces the input game.
    pub h: Game,
}

/// Split a zero-sum equivalent game as `f = w + h` with `w` zero-sum and `h`
/// non-strategic. The player-sum tensor is expanded into interaction terms;
/// every term short of the full interaction ignores at least one coordinate
/// and is handed to that coordinate's player as a non-strategic payoff.
pub fn extract_zero_sum_form(f: &Game, tol: f64) -> Result<ZeroSumForm> {
    let report = zero_sum_cycle_test(f, tol);
    if !report.pass {
        return Err(Error::NotZeroSumEquivalent {
            violation: report.worst_violation,
        });
    }
    let space = f.space().clone();
    let n = space.players();
    let total = space.num_profiles();
    let total_sum = operators::player_sum(f);
    let terms = operators::interaction_terms(&space, &total_sum);
    let full_mask = (1usize << n) - 1;
    let mut h_tensors = vec![vec![0.0; total]; n];
    for (mask, term) in terms.iter().enumerate() {
        if mask == full_mask {
            continue;
        }
        let l = (0..n).find(|l| mask & (1 << l) == 0).unwrap();
        for (hv, tv) in h_tensors[l].iter_mut().zip(term) {
            *hv += tv;
        }
    }
    let h = Game::from_tensors(space, h_tensors);
    let w = f.sub(&h)?;
    let scale = 1.0 + f.norm();
    if operators::zero_sum_defect(&w) > tol.max(DEFAULT_TOL) + 1e-12 * scale {
        return Err(Error::InternalConsistency(format!(
            "extracted w is not zero-sum: pointwise defect {}",
            operators::zero_sum_defect(&w)
        )));
    }
    if operators::non_strategic_defect(&h) > tol.max(DEFAULT_TOL) + 1e-12 * scale {
        return Err(Error::InternalConsistency(
            "extracted h is not non-strategic".into(),
        ));
    }
    Ok(ZeroSumForm { w, h })
}

/// A family of functions, one per player, each ignoring that player's own
/// coordinate; the game whose payoffs are the sums over the other players'
/// functions is strategically equivalent to the input.
#[derive(Debug, Clone)]
pub struct MultilateralForm {
    space: std::sync::Arc<crate::space::StrategySpace>,
    /// `zeta[l]` over the full space, constant along axis `l`.
    zeta: Vec<Vec<f64>>,
}

impl MultilateralForm {
    /// The function for coordinate `l`, as a full-space tensor constant along
    /// axis `l`.
    pub fn zeta_full(&self, l: usize) -> &[f64] {
        &self.zeta[l]
    }

    /// The function for coordinate `l` reduced over the remaining axes, in
    /// row-major order of the surviving coordinates.
    pub fn zeta_reduced(&self, l: usize) -> Vec<f64> {
        let space = &self.space;
        let mut out = Vec::with_capacity(space.num_profiles() / space.sizes()[l]);
        for idx in 0..space.num_profiles() {
            if space.coordinate(idx, l) == 0 {
                out.push(self.zeta[l][idx]);
            }
        }
        out
    }

    /// The game with payoffs `f_i = sum over l != i of zeta_l`.
    pub fn reconstruct(&self) -> Game {
        let space = self.space.clone();
        let n = space.players();
        let total = space.num_profiles();
        let payoffs = (0..n)
            .map(|i| {
                let mut t = vec![0.0; total];
                for (l, z) in self.zeta.iter().enumerate() {
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
        Game::from_tensors(space, payoffs)
    }
}

/// Extract a multilateral representation of a zero-sum equivalent potential
/// game: the potential's interaction terms are grouped by their lowest
/// omitted coordinate.
pub fn extract_multilateral(f: &Game, tol: f64) -> Result<MultilateralForm> {
    let pot = potential_cycle_test(f, tol);
    if !pot.pass {
        return Err(Error::NotInB(format!(
            "potential cycle test fails with violation {}",
            pot.worst_violation
        )));
    }
    let zs = zero_sum_cycle_test(f, tol);
    if !zs.pass {
        return Err(Error::NotInB(format!(
            "zero-sum cycle test fails with violation {}",
            zs.worst_violation
        )));
    }
    let space = f.space().clone();
    let n = space.players();
    let total = space.num_profiles();
    let v = potential_by_path(f);
    let terms = operators::interaction_terms(&space, &v);
    let full_mask = (1usize << n) - 1;
    let mut zeta = vec![vec![0.0; total]; n];
    for (mask, term) in terms.iter().enumerate() {
        if mask == full_mask {
            continue;
        }
        let l = (0..n).find(|l| mask & (1 << l) == 0).unwrap();
        for (zv, tv) in zeta[l].iter_mut().zip(term) {
            *zv += tv;
        }
    }
    let form = MultilateralForm { space, zeta };
    let rebuilt = form.reconstruct();
    if !f.is_strategically_equivalent(&rebuilt, (10.0 * tol).max(1e-8 * (1.0 + f.norm())))? {
        return Err(Error::InternalConsistency(
            "multilateral reconstruction is not strategically equivalent to the input".into(),
        ));
    }
    Ok(form)
}

/// Membership flags plus the evidence they were derived from.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub common_interest: bool,
    pub zero_sum: bool,
    pub normalized: bool,
    pub non_strategic: bool,
    pub potential: bool,
    pub zero_sum_equivalent: bool,
    /// Both of the above: strategically equivalent to a common interest game
    /// and to a zero-sum game.
    pub zero_sum_potential: bool,
    pub potential_worst_violation: f64,
    pub zero_sum_worst_violation: f64,
    /// Norms of the three-way decomposition components.
    pub component_norms: Vec<(String, f64)>,
    pub residual: f64,
}

/// Run every membership predicate and both cycle tests, and cross-validate
/// the cycle verdicts against the projection norms of the three-way
/// decomposition: a potential game has no normalized zero-sum component and
/// a zero-sum equivalent game has no normalized common interest component.
/// Clear disagreement between the two routes is reported as an internal
/// error.
pub fn classify(f: &Game, tol: f64) -> Result<ClassificationReport> {
    let pot = potential_cycle_test(f, tol);
    let zs = zero_sum_cycle_test(f, tol);
    let main = subspace::decompose_main(f)?;
    let norms = main.component_norms();
    let norm_of = |name: &str| {
        norms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
            .unwrap()
    };
    let scale = f.norm().max(1.0);
    let nz_norm = norm_of(subspace::component::NORMALIZED_ZERO_SUM);
    let nc_norm = norm_of(subspace::component::NORMALIZED_COMMON_INTEREST);
    cross_validate("potential", pot, nz_norm, scale)?;
    cross_validate("zero-sum equivalence", zs, nc_norm, scale)?;
    Ok(ClassificationReport {
        common_interest: is_common_interest(f, tol),
        zero_sum: is_zero_sum(f, tol),
        normalized: is_normalized(f, tol),
        non_strategic: is_non_strategic(f, tol),
        potential: pot.pass,
        zero_sum_equivalent: zs.pass,
        zero_sum_potential: pot.pass && zs.pass,
        potential_worst_violation: pot.worst_violation,
        zero_sum_worst_violation: zs.worst_violation,
        component_norms: norms,
        residual: main.residual,
    })
}

fn cross_validate(what: &str, cycle: CycleTestReport, comp_norm: f64, scale: f64) -> Result<()> {
    if cycle.pass && comp_norm > 1e-7 * scale {
        return Err(Error::InternalConsistency(format!(
            "{what}: cycle test passes (violation {}) but the orthogonal component has norm {comp_norm}",
            cycle.worst_violation
        )));
    }
    if !cycle.pass && cycle.worst_violation > 1e-7 * scale && comp_norm <= 1e-9 * scale {
        return Err(Error::InternalConsistency(format!(
            "{what}: cycle test fails (violation {}) but the orthogonal component has norm {comp_norm}",
            cycle.worst_violation
        )));
    }
    Ok(())
}
