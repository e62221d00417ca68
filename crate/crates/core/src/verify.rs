//! The acceptance suite: every release-gating check as a callable criterion,
//! shared by the `acceptance` integration tests and the CLI's `verify-paper`
//! subcommand. Each criterion returns a detail string on success and a
//! failure description otherwise.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::{self, ContestSpec, CournotSpec, GameClass};
use crate::classify;
use crate::equilibrium;
use crate::game::Game;
use crate::operators;
use crate::profile::MixedProfile;
use crate::space::StrategySpace;
use crate::subspace::{self, component};

/// Success detail or failure description of one criterion.
pub type CriterionResult = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($arg)*));
        }
    };
}

fn err_str<T>(r: crate::error::Result<T>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Outcome of one criterion run.
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// A criterion entry: id, short name, and the runnable check.
pub type Criterion = (usize, &'static str, fn() -> CriterionResult);

/// All criteria in order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        (1, "demo decomposition recovers the reference components", criterion_1),
        (2, "support enumeration reproduces the demo game's symmetric equilibria", criterion_2),
        (3, "demo components have their guaranteed equilibrium structure", criterion_3),
        (4, "projector properties hold on random games", criterion_4),
        (5, "cycle tests agree with projection norms", criterion_5),
        (6, "two-player zero-sum equivalent games have unique equilibria", criterion_6),
        (7, "extractors round-trip on random class members", criterion_7),
        (8, "discretized quantity competition classifies as predicted", criterion_8),
        (9, "contest deviation gain matches its closed form", criterion_9),
        (10, "Bayesian type-agent embeddings classify as predicted", criterion_10),
        (11, "uniform profile is an equilibrium of normalized components", criterion_11),
        (12, "minimax solver agrees with a grid-search oracle", criterion_12),
    ]
}

/// Run every criterion, collecting outcomes.
pub fn run_all() -> Vec<CriterionOutcome> {
    criteria()
        .into_iter()
        .map(|(id, name, f)| match f() {
            Ok(detail) => CriterionOutcome {
                id,
                name,
                passed: true,
                detail,
            },
            Err(detail) => CriterionOutcome {
                id,
                name,
                passed: false,
                detail,
            },
        })
        .collect()
}

// ---------------------------------------------------------------------------
// criterion 1: exact three-way decomposition of the demo game

fn criterion_1() -> CriterionResult {
    let game = catalog::demo_game();
    let [c, z, b, e] = catalog::demo_components();
    let d = err_str(subspace::decompose_main(&game), "decompose")?;
    let f_nc = d.component(component::NORMALIZED_COMMON_INTEREST).unwrap();
    let f_nz = d.component(component::NORMALIZED_ZERO_SUM).unwrap();
    let f_b = d.component(component::ZERO_SUM_POTENTIAL).unwrap();
    let tol = 1e-12;
    let d_nc = f_nc.max_abs_diff(&c).unwrap();
    let d_nz = f_nz.max_abs_diff(&z).unwrap();
    let be = b.add(&e).unwrap();
    let d_b = f_b.max_abs_diff(&be).unwrap();
    ensure!(d_nc <= tol, "normalized common interest part off by {d_nc}");
    ensure!(d_nz <= tol, "normalized zero-sum part off by {d_nz}");
    ensure!(d_b <= tol, "zero-sum potential part off by {d_b}");
    Ok(format!(
        "max entrywise deviations: {d_nc:.2e} / {d_nz:.2e} / {d_b:.2e}"
    ))
}

// ---------------------------------------------------------------------------
// criterion 2: the demo game's symmetric equilibria from support enumeration

fn pinned_symmetric_equilibria() -> Vec<[f64; 3]> {
    vec![
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.5, 0.5, 0.0],
        [1.0 / 6.0, 0.0, 5.0 / 6.0],
        [0.0, 2.0 / 3.0, 1.0 / 3.0],
        [1.0 / 6.0, 0.5, 1.0 / 3.0],
    ]
}

/// Independent best-response check on a 3x3 symmetric profile: every
/// supported strategy must attain the maximal payoff against the opponent
/// mixture, computed with raw loops.
fn brute_symmetric_best_response(game: &Game, sigma: &[f64; 3]) -> bool {
    for player in 0..2 {
        let mut payoffs = [0.0f64; 3];
        for own in 0..3 {
            for other in 0..3 {
                let idx = if player == 0 { own * 3 + other } else { other * 3 + own };
                payoffs[own] += game.payoff_at(player, idx) * sigma[other];
            }
        }
        let best = payoffs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        for own in 0..3 {
            if sigma[own] > 1e-12 && payoffs[own] < best - 1e-9 {
                return false;
            }
        }
    }
    true
}

fn criterion_2() -> CriterionResult {
    let game = catalog::demo_game();
    let list = err_str(equilibrium::bimatrix_nash(&game), "enumerate")?;
    let symmetric: Vec<[f64; 3]> = list
        .profiles
        .iter()
        .filter(|p| {
            p.player(0)
                .iter()
                .zip(p.player(1))
                .all(|(a, b)| (a - b).abs() <= 1e-9)
        })
        .map(|p| [p.player(0)[0], p.player(0)[1], p.player(0)[2]])
        .collect();
    let pinned = pinned_symmetric_equilibria();
    ensure!(
        symmetric.len() == pinned.len(),
        "expected {} symmetric equilibria, found {}: {symmetric:?}",
        pinned.len(),
        symmetric.len()
    );
    for want in &pinned {
        let hit = symmetric
            .iter()
            .any(|got| got.iter().zip(want).all(|(a, b)| (a - b).abs() <= 1e-9));
        ensure!(hit, "pinned equilibrium {want:?} not found");
        ensure!(
            brute_symmetric_best_response(&game, want),
            "pinned equilibrium {want:?} fails the brute best-response check"
        );
    }
    Ok(format!("{} symmetric equilibria match", pinned.len()))
}

// ---------------------------------------------------------------------------
// criterion 3: equilibrium structure of the three components

fn criterion_3() -> CriterionResult {
    let d = err_str(subspace::decompose_main(&catalog::demo_game()), "decompose")?;
    let f_nz = d.component(component::NORMALIZED_ZERO_SUM).unwrap();
    let f_b = d.component(component::ZERO_SUM_POTENTIAL).unwrap();
    let f_nc = d.component(component::NORMALIZED_COMMON_INTEREST).unwrap();

    // normalized zero-sum part: unique uniform equilibrium
    let list = err_str(equilibrium::bimatrix_nash(f_nz), "enumerate nz")?;
    ensure!(
        list.profiles.len() == 1,
        "normalized zero-sum part: expected 1 equilibrium, got {}",
        list.profiles.len()
    );
    let uniform = MixedProfile::uniform(f_nz.space());
    ensure!(
        list.profiles[0].max_abs_diff(&uniform) <= 1e-9,
        "normalized zero-sum part: equilibrium is not uniform"
    );

    // zero-sum potential part: strictly dominant pure equilibrium at (1, 1)
    let dom = err_str(equilibrium::dominant_strategy(f_b), "dominant")?;
    ensure!(
        dom.profile == vec![0, 0] && dom.strict,
        "zero-sum potential part: expected strict dominant profile (1,1), got {:?} strict={}",
        dom.profile,
        dom.strict
    );
    let pure = equilibrium::pure_nash(f_b);
    ensure!(
        pure.profiles.len() == 1,
        "zero-sum potential part: expected a unique pure equilibrium"
    );
    let support_list = err_str(equilibrium::bimatrix_nash(f_b), "enumerate b")?;
    ensure!(
        support_list.profiles.len() == 1,
        "zero-sum potential part: support enumeration found {} equilibria",
        support_list.profiles.len()
    );

    // normalized common interest part: admits uniform and the 3 symmetric
    // pure equilibria
    ensure!(
        err_str(equilibrium::verify_uniform_ne(f_nc), "uniform nc")?,
        "normalized common interest part: uniform profile is not an equilibrium"
    );
    let pure_nc = equilibrium::pure_nash(f_nc);
    let diag: Vec<Vec<usize>> = (0..3).map(|s| vec![s, s]).collect();
    for want in &diag {
        let hit = pure_nc.profiles.iter().any(|p| {
            (0..2).all(|i| p.player(i)[want[i]] > 0.999)
        });
        ensure!(hit, "normalized common interest part: pure equilibrium {want:?} missing");
    }
    Ok("component equilibria as guaranteed".into())
}

// ---------------------------------------------------------------------------
// criterion 4: projector properties on 200 random games

fn random_shapes() -> Vec<Vec<usize>> {
    let mut shapes = Vec::new();
    for a in 2..=4usize {
        for b in 2..=4usize {
            shapes.push(vec![a, b]);
            for c in 2..=4usize {
                shapes.push(vec![a, b, c]);
            }
        }
    }
    shapes
}

fn criterion_4() -> CriterionResult {
    let shapes = random_shapes();
    let mut worst_idem: f64 = 0.0;
    let mut worst_adj: f64 = 0.0;
    let mut worst_agree: f64 = 0.0;
    for trial in 0..200u64 {
        let shape = &shapes[(trial as usize) % shapes.len()];
        let space = StrategySpace::with_sizes(shape).unwrap();
        let f = catalog::random_game(&space, 1000 + trial);
        let g = catalog::random_game(&space, 5000 + trial);
        let scale = f.norm().max(1.0);

        let nz = err_str(subspace::normalized_zero_sum_projector(&space), "projector")?;
        let closed: Vec<(&str, Game, Game)> = vec![
            ("non-strategic", subspace::project_non_strategic(&f), subspace::project_non_strategic(&g)),
            ("normalized", subspace::project_normalized(&f), subspace::project_normalized(&g)),
            ("common-interest", subspace::project_common_interest(&f), subspace::project_common_interest(&g)),
            ("zero-sum", subspace::project_zero_sum(&f), subspace::project_zero_sum(&g)),
            ("normalized-common-interest", subspace::project_normalized_common_interest(&f), subspace::project_normalized_common_interest(&g)),
            ("normalized-zero-sum", err_str(nz.project(&f), "nz f")?, err_str(nz.project(&g), "nz g")?),
        ];
        for (name, pf, pg) in &closed {
            let ppf = match *name {
                "non-strategic" => subspace::project_non_strategic(pf),
                "normalized" => subspace::project_normalized(pf),
                "common-interest" => subspace::project_common_interest(pf),
                "zero-sum" => subspace::project_zero_sum(pf),
                "normalized-common-interest" => subspace::project_normalized_common_interest(pf),
                _ => err_str(nz.project(pf), "nz pf")?,
            };
            let idem = ppf.sub(pf).unwrap().norm() / scale;
            worst_idem = worst_idem.max(idem);
            ensure!(idem <= 1e-10, "{name}: idempotence defect {idem} on trial {trial}");
            let lhs = pf.inner_product(&g).unwrap();
            let rhs = f.inner_product(pg).unwrap();
            let adj = (lhs - rhs).abs() / (f.norm() * g.norm()).max(1.0);
            worst_adj = worst_adj.max(adj);
            ensure!(adj <= 1e-10, "{name}: self-adjointness defect {adj} on trial {trial}");
        }

        // decomposition invariants
        let d = err_str(subspace::decompose_main(&f), "decompose")?;
        ensure!(
            d.residual <= 1e-9 * scale,
            "reconstruction residual {} on trial {trial}",
            d.residual
        );

        // closed-form normalized-common-interest projection against the
        // generic constraint-kernel projector
        let mut constraints = subspace::common_interest_constraints(&space);
        constraints.extend(subspace::normalized_constraints(&space));
        let generic = err_str(
            subspace::generic_project(&space, &constraints, &f),
            "generic",
        )?;
        let agree = subspace::project_normalized_common_interest(&f)
            .max_abs_diff(&generic)
            .unwrap();
        worst_agree = worst_agree.max(agree);
        ensure!(
            agree <= 1e-9,
            "closed-form vs generic projector differ by {agree} on trial {trial}"
        );
    }
    Ok(format!(
        "200 games: worst idempotence {worst_idem:.2e}, self-adjointness {worst_adj:.2e}, closed-vs-generic {worst_agree:.2e}"
    ))
}

// ---------------------------------------------------------------------------
// criterion 5: cycle tests versus projection norms, zero disagreements

fn criterion_5() -> CriterionResult {
    let shapes = random_shapes();
    let classes = [
        GameClass::NormalizedCommonInterest,
        GameClass::NormalizedZeroSum,
        GameClass::ZeroSumPotential,
    ];
    let mut checked = 0usize;
    for (ci, class) in classes.iter().enumerate() {
        for trial in 0..300u64 {
            let shape = &shapes[(trial as usize) % shapes.len()];
            let space = StrategySpace::with_sizes(shape).unwrap();
            let f = err_str(
                catalog::random_member(*class, &space, 9000 + 1000 * ci as u64 + trial),
                "draw",
            )?;
            let norm = f.norm();
            ensure!(norm > 1e-6, "{}: degenerate draw on trial {trial}", class.name());
            let d = err_str(subspace::decompose_main(&f), "decompose")?;
            let nz_norm = d.component(component::NORMALIZED_ZERO_SUM).unwrap().norm();
            let nc_norm = d
                .component(component::NORMALIZED_COMMON_INTEREST)
                .unwrap()
                .norm();
            let pot_by_cycle = classify::potential_cycle_test(&f, 1e-9).pass;
            let pot_by_norm = nz_norm <= 1e-8 * norm;
            ensure!(
                pot_by_cycle == pot_by_norm,
                "{} trial {trial}: potential cycle {} but nz norm ratio {}",
                class.name(),
                pot_by_cycle,
                nz_norm / norm
            );
            let zs_by_cycle = classify::zero_sum_cycle_test(&f, 1e-9).pass;
            let zs_by_norm = nc_norm <= 1e-8 * norm;
            ensure!(
                zs_by_cycle == zs_by_norm,
                "{} trial {trial}: zero-sum cycle {} but nc norm ratio {}",
                class.name(),
                zs_by_cycle,
                nc_norm / norm
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} class members, zero disagreements"))
}

// ---------------------------------------------------------------------------
// criterion 6: uniqueness for two-player zero-sum equivalent games

fn criterion_6() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut unique = 0usize;
    let mut degenerate = 0usize;
    for trial in 0..100u64 {
        let m = 2 + (trial as usize) % 3;
        let k = 2 + ((trial as usize) / 3) % 3;
        let space = StrategySpace::with_sizes(&[m, k]).unwrap();
        let f = err_str(
            catalog::random_member(GameClass::ZeroSumEquivalent, &space, 40_000 + trial),
            "draw",
        )?;
        let list = err_str(equilibrium::bimatrix_nash(&f), "enumerate")?;
        ensure!(
            !list.profiles.is_empty(),
            "trial {trial}: no equilibrium found"
        );
        if !list.degenerate {
            ensure!(
                list.profiles.len() == 1,
                "trial {trial}: nondegenerate game with {} equilibria",
                list.profiles.len()
            );
            unique += 1;
        } else {
            degenerate += 1;
            if list.profiles.len() >= 2 {
                for _ in 0..10 {
                    let a = &list.profiles[rng.gen_range(0..list.profiles.len())];
                    let b = &list.profiles[rng.gen_range(0..list.profiles.len())];
                    let lambda: f64 = rng.gen_range(0.0..1.0);
                    let weights = a
                        .weights()
                        .iter()
                        .zip(b.weights())
                        .map(|(wa, wb)| {
                            wa.iter()
                                .zip(wb)
                                .map(|(x, y)| lambda * x + (1.0 - lambda) * y)
                                .collect()
                        })
                        .collect();
                    let mix = err_str(MixedProfile::new(&space, weights), "mix")?;
                    ensure!(
                        err_str(f.is_nash(&mix, 1e-8), "is_nash")?,
                        "trial {trial}: convex combination of equilibria is not an equilibrium"
                    );
                }
            }
        }
    }
    Ok(format!(
        "100 draws: {unique} unique-equilibrium, {degenerate} flagged degenerate"
    ))
}

// ---------------------------------------------------------------------------
// criterion 7: extractor roundtrips

fn criterion_7() -> CriterionResult {
    let shapes = random_shapes();
    // zero-sum form on zero-sum equivalent draws
    for trial in 0..100u64 {
        let shape = &shapes[(trial as usize) % shapes.len()];
        let space = StrategySpace::with_sizes(shape).unwrap();
        let f = err_str(
            catalog::random_member(GameClass::ZeroSumEquivalent, &space, 70_000 + trial),
            "draw zse",
        )?;
        let form = err_str(classify::extract_zero_sum_form(&f, 1e-9), "zero-sum form")?;
        let zs_defect = operators::zero_sum_defect(&form.w);
        ensure!(zs_defect <= 1e-9, "trial {trial}: w sums to {zs_defect}");
        let ns_defect = operators::non_strategic_defect(&form.h);
        ensure!(ns_defect <= 1e-9, "trial {trial}: h defect {ns_defect}");
        let recon = form.w.add(&form.h).unwrap().max_abs_diff(&f).unwrap();
        ensure!(recon <= 1e-9, "trial {trial}: w + h off by {recon}");
        // the full-interaction part of w's player sum vanishes
        let q = operators::full_interaction(&space, &operators::player_sum(&form.w));
        let q_max = q.iter().fold(0.0f64, |w, x| w.max(x.abs()));
        ensure!(q_max <= 1e-10, "trial {trial}: interaction residual {q_max}");
    }
    // potential on potential draws: unilateral-deviation identity
    for trial in 0..100u64 {
        let shape = &shapes[(trial as usize) % shapes.len()];
        let space = StrategySpace::with_sizes(shape).unwrap();
        let f = err_str(
            catalog::random_member(GameClass::Potential, &space, 80_000 + trial),
            "draw potential",
        )?;
        let v = err_str(classify::extract_potential(&f, 1e-9), "potential")?;
        ensure!(v[0].abs() <= 1e-12, "trial {trial}: potential not zero at base");
        for idx in 0..space.num_profiles() {
            for i in 0..space.players() {
                let own = space.coordinate(idx, i);
                let stride = space.strides()[i];
                let base = idx - own * stride;
                for t in 0..space.sizes()[i] {
                    let other = base + t * stride;
                    let lhs = f.payoff_at(i, idx) - f.payoff_at(i, other);
                    let rhs = v[idx] - v[other];
                    ensure!(
                        (lhs - rhs).abs() <= 1e-9,
                        "trial {trial}: deviation identity off by {}",
                        (lhs - rhs).abs()
                    );
                }
            }
        }
    }
    // multilateral representation on zero-sum potential draws
    for trial in 0..100u64 {
        let shape = &shapes[(trial as usize) % shapes.len()];
        let space = StrategySpace::with_sizes(shape).unwrap();
        let f = err_str(
            catalog::random_member(GameClass::ZeroSumPotential, &space, 90_000 + trial),
            "draw zsp",
        )?;
        let form = err_str(classify::extract_multilateral(&f, 1e-9), "multilateral")?;
        let rebuilt = form.reconstruct();
        ensure!(
            err_str(f.is_strategically_equivalent(&rebuilt, 1e-9), "equivalence")?,
            "trial {trial}: reconstruction not strategically equivalent"
        );
    }
    Ok("300 extractor roundtrips hold".into())
}

// ---------------------------------------------------------------------------
// criterion 8: discretized quantity competition

fn criterion_8() -> CriterionResult {
    let grid: Vec<f64> = (0..=4).map(|i| i as f64).collect();
    let three = err_str(
        catalog::cournot(&CournotSpec {
            players: 3,
            alpha: 10.0,
            beta: 1.0,
            costs: vec![1.0, 1.0, 1.0],
            grid: grid.clone(),
        }),
        "build n=3",
    )?;
    let pot3 = classify::potential_cycle_test(&three, 1e-9);
    let zs3 = classify::zero_sum_cycle_test(&three, 1e-9);
    ensure!(pot3.pass, "n=3: potential cycle violation {}", pot3.worst_violation);
    ensure!(zs3.pass, "n=3: zero-sum cycle violation {}", zs3.worst_violation);

    let beta = 1.0;
    let two = err_str(
        catalog::cournot(&CournotSpec {
            players: 2,
            alpha: 10.0,
            beta,
            costs: vec![1.0, 1.0],
            grid: grid.clone(),
        }),
        "build n=2",
    )?;
    let pot2 = classify::potential_cycle_test(&two, 1e-9);
    ensure!(pot2.pass, "n=2: potential cycle violation {}", pot2.worst_violation);
    let zs2 = classify::zero_sum_cycle_test(&two, 1e-9);
    let min_step = grid.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let floor = 2.0 * beta * min_step * min_step;
    ensure!(!zs2.pass, "n=2 unexpectedly passes the zero-sum cycle test");
    ensure!(
        zs2.worst_violation >= floor - 1e-9,
        "n=2: zero-sum violation {} below the {floor} floor",
        zs2.worst_violation
    );
    Ok(format!(
        "n=3 passes both cycle tests; n=2 zero-sum violation {} >= {floor}",
        zs2.worst_violation
    ))
}

// ---------------------------------------------------------------------------
// criterion 9: contest deviation gain against the closed form

struct ContestComparison {
    max_gap: f64,
    max_bound: f64,
    numeric_argmin: usize,
    closed_argmin: usize,
    interior_points: usize,
}

fn compare_contest(spec: &ContestSpec) -> std::result::Result<ContestComparison, String> {
    let f = err_str(catalog::contest(spec), "build contest")?;
    let space = f.space().clone();
    let form = err_str(classify::extract_zero_sum_form(&f, 1e-9), "zero-sum form")?;
    let eval = equilibrium::PhiEvaluator::with_zero_sum_form(&f, form);
    let direct = equilibrium::PhiEvaluator::new(&f);
    let gmin = spec.grid[0];
    let gmax = *spec.grid.last().unwrap();
    let step = spec
        .grid
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0f64, f64::max);

    let mut max_gap: f64 = 0.0;
    let mut max_bound: f64 = 0.0;
    let mut interior = Vec::new();
    let mut numeric = Vec::new();
    let mut closed = Vec::new();
    for idx in 0..space.num_profiles() {
        let profile = space.profile_of(idx);
        let efforts: Vec<f64> = profile.iter().map(|&s| spec.grid[s]).collect();
        let total: f64 = efforts.iter().sum();
        // compare only where every continuous best response lies inside the
        // grid hull, which is where the closed form is exact
        let all_interior = (0..spec.players).all(|i| {
            let t = catalog::contest_best_response(spec, i, total - efforts[i]);
            (gmin..=gmax).contains(&t)
        });
        if !all_interior {
            continue;
        }
        let phi_num = err_str(eval.eval_pure(&profile), "phi")?;
        let phi_direct = err_str(direct.eval_pure(&profile), "phi direct")?;
        ensure!(
            (phi_num - phi_direct).abs() <= 1e-9,
            "zero-sum-form route and direct route disagree by {}",
            (phi_num - phi_direct).abs()
        );
        let phi_closed = catalog::contest_phi_closed_form(spec, &efforts);
        // the grid maximizer within step/2 of each interior best response
        // loses at most the local curvature bound per player
        let bound: f64 = (0..spec.players)
            .map(|i| {
                let others = total - efforts[i];
                spec.prize * others / (gmin + others).powi(3) * step * step / 4.0
            })
            .sum();
        ensure!(
            phi_num <= phi_closed + 1e-9,
            "numeric gain {phi_num} exceeds closed form {phi_closed}"
        );
        let gap = phi_closed - phi_num;
        ensure!(
            gap <= bound + 1e-9,
            "gap {gap} exceeds the grid-resolution bound {bound} at {efforts:?}"
        );
        max_gap = max_gap.max(gap);
        max_bound = max_bound.max(bound);
        interior.push(idx);
        numeric.push(phi_num);
        closed.push(phi_closed);
    }
    ensure!(!interior.is_empty(), "no interior grid points to compare");
    let argmin = |vals: &[f64]| {
        vals.iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0
    };
    Ok(ContestComparison {
        max_gap,
        max_bound,
        numeric_argmin: interior[argmin(&numeric)],
        closed_argmin: interior[argmin(&closed)],
        interior_points: interior.len(),
    })
}

fn criterion_9() -> CriterionResult {
    let grid: Vec<f64> = (1..=12).map(|i| i as f64 * 0.05).collect();
    let symmetric = ContestSpec {
        players: 3,
        prize: 1.0,
        costs: vec![1.0, 1.0, 1.0],
        grid: grid.clone(),
    };
    let g = err_str(catalog::contest(&symmetric), "build")?;
    let zs = classify::zero_sum_cycle_test(&g, 1e-9);
    ensure!(zs.pass, "symmetric contest fails the zero-sum cycle test");

    let sym = compare_contest(&symmetric)?;
    // the interior first-order-condition point lies within one grid step of
    // the closed form's discrete argmin
    let foc = 2.0 * symmetric.prize / (9.0 * symmetric.costs[0]);
    let space = g.space();
    let argmin_profile = space.profile_of(sym.closed_argmin);
    for &s in &argmin_profile {
        let q = grid[s];
        ensure!(
            (q - foc).abs() <= 0.05 + 1e-12,
            "closed-form argmin coordinate {q} further than one grid step from the interior optimum {foc}"
        );
    }

    // asymmetric costs give a unique argmin, where both routes must agree
    let asymmetric = ContestSpec {
        players: 3,
        prize: 1.0,
        costs: vec![1.0, 1.25, 1.5],
        grid,
    };
    let asym = compare_contest(&asymmetric)?;
    ensure!(
        asym.numeric_argmin == asym.closed_argmin,
        "asymmetric contest: numeric argmin {:?} differs from closed-form argmin {:?}",
        asym.numeric_argmin,
        asym.closed_argmin
    );
    Ok(format!(
        "gap <= bound on {} + {} interior points (max gap {:.2e}, max bound {:.2e}); argmins agree",
        sym.interior_points, asym.interior_points, sym.max_gap.max(asym.max_gap), sym.max_bound.max(asym.max_bound)
    ))
}

// ---------------------------------------------------------------------------
// criterion 10: Bayesian type-agent embedding

fn criterion_10() -> CriterionResult {
    // arbitrary type-dependent tables: embedding is always zero-sum
    // equivalent
    for seed in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(12_000 + seed);
        let k = 2;
        let m = 2;
        let table = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..m * m * k * k).map(|_| rng.gen_range(-2.0..2.0)).collect()
        };
        let spec = catalog::BayesianSpec {
            strategies: [m, m],
            types: k,
            probs: [vec![0.4, 0.6], vec![0.7, 0.3]],
            payoffs: [table(&mut rng), table(&mut rng)],
        };
        let g = err_str(catalog::bayesian_embed(&spec), "embed")?;
        ensure!(g.players() == 2 * k, "embedding has wrong player count");
        let zs = classify::zero_sum_cycle_test(&g, 1e-9);
        ensure!(
            zs.pass,
            "seed {seed}: embedded game fails zero-sum cycle test with violation {}",
            zs.worst_violation
        );
    }

    // both type-contingent games potential: the embedding is potential too
    let spec = err_str(catalog::bayesian_coordination(2.0, 1.0, 0.3, 0.6), "spec")?;
    let g = err_str(catalog::bayesian_embed(&spec), "embed")?;
    let pot = classify::potential_cycle_test(&g, 1e-9);
    ensure!(
        pot.pass,
        "coordination embedding fails potential cycle test with violation {}",
        pot.worst_violation
    );
    let zs = classify::zero_sum_cycle_test(&g, 1e-9);
    ensure!(zs.pass, "coordination embedding fails zero-sum cycle test");
    Ok("embeddings are zero-sum equivalent; potential types give a potential embedding".into())
}

// ---------------------------------------------------------------------------
// criterion 11: uniform equilibrium for normalized components

fn criterion_11() -> CriterionResult {
    let shapes: Vec<Vec<usize>> = vec![
        vec![2, 3],
        vec![3, 2],
        vec![4, 2],
        vec![2, 4],
        vec![3, 4],
        vec![3, 3],
        vec![2, 2, 3],
        vec![3, 2, 2],
        vec![2, 3, 4],
        vec![4, 4],
    ];
    for (ci, class) in [GameClass::NormalizedZeroSum, GameClass::NormalizedCommonInterest]
        .iter()
        .enumerate()
    {
        for trial in 0..100u64 {
            let shape = &shapes[(trial as usize) % shapes.len()];
            let space = StrategySpace::with_sizes(shape).unwrap();
            let f = err_str(
                catalog::random_member(*class, &space, 60_000 + 1000 * ci as u64 + trial),
                "draw",
            )?;
            let ok = err_str(equilibrium::verify_uniform_ne(&f), "verify")?;
            ensure!(
                ok,
                "{} trial {trial} shape {shape:?}: uniform profile fails",
                class.name()
            );
        }
    }
    Ok("uniform profile passes on 200 draws including non-square shapes".into())
}

// ---------------------------------------------------------------------------
// criterion 12: minimax against a zoomed grid-search oracle

/// Lower-bound oracle for the row player's guaranteed value of a 3x3 matrix
/// game: maximize the concave function `min_j x . A_j` over the simplex by
/// iteratively refined grid search.
fn grid_oracle_value_3x3(a: &[f64]) -> f64 {
    let g = |x1: f64, x2: f64| -> f64 {
        let x3 = 1.0 - x1 - x2;
        (0..3)
            .map(|j| x1 * a[j] + x2 * a[3 + j] + x3 * a[6 + j])
            .fold(f64::INFINITY, f64::min)
    };
    let mut best = (1.0 / 3.0, 1.0 / 3.0);
    let mut best_val = g(best.0, best.1);
    let mut step = 1.0 / 16.0;
    // level 0 sweeps the whole simplex; later levels halve the step around
    // the incumbent with a window that always covers the previous cell
    for level in 0..40 {
        let (candidates_1, candidates_2): (Vec<f64>, Vec<f64>) = if level == 0 {
            let all: Vec<f64> = (0..=16).map(|i| i as f64 / 16.0).collect();
            (all.clone(), all)
        } else {
            let around = |c: f64| -> Vec<f64> {
                (-4..=4)
                    .map(|i| (c + i as f64 * step).clamp(0.0, 1.0))
                    .collect()
            };
            (around(best.0), around(best.1))
        };
        for &x1 in &candidates_1 {
            for &x2 in &candidates_2 {
                if x1 + x2 > 1.0 + 1e-15 {
                    continue;
                }
                let v = g(x1, x2.min(1.0 - x1));
                if v > best_val {
                    best_val = v;
                    best = (x1, x2.min(1.0 - x1));
                }
            }
        }
        if level > 0 {
            step /= 2.0;
        }
    }
    best_val
}

fn criterion_12() -> CriterionResult {
    for (name, game) in [("rock-paper-scissors", catalog::rps()), ("matching pennies", catalog::matching_pennies())] {
        let sol = err_str(equilibrium::minimax(&game), name)?;
        ensure!(sol.value.abs() <= 1e-9, "{name}: value {} not 0", sol.value);
        for side in &sol.strategies {
            let k = side.len() as f64;
            for p in side {
                ensure!(
                    (p - 1.0 / k).abs() <= 1e-9,
                    "{name}: strategy {side:?} not uniform"
                );
            }
        }
    }

    // asymmetric zero-sum perturbation of the 3x3 cyclic game
    let a = vec![0.0, -1.3, 1.0, 1.0, 0.0, -1.0, -1.0, 1.0, 0.0];
    let b: Vec<f64> = a.iter().map(|x| -x).collect();
    let space = StrategySpace::with_sizes(&[3, 3]).unwrap();
    let game = err_str(Game::new(space, vec![a.clone(), b]), "build")?;
    let sol = err_str(equilibrium::minimax(&game), "perturbed")?;
    let oracle = grid_oracle_value_3x3(&a);
    ensure!(
        (sol.value - oracle).abs() <= 1e-6,
        "perturbed game: simplex value {} vs oracle {oracle}",
        sol.value
    );
    Ok(format!(
        "canonical games uniform at value 0; perturbed value {:.9} matches oracle within 1e-6",
        sol.value
    ))
}
