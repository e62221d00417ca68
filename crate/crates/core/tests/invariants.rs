#![allow(clippy::needless_range_loop)]

//! Cross-module invariants: orthogonality of the elementary subspace pairs,
//! strategic-equivalence invariances, decomposition uniqueness, extractor
//! canonicity, and the equilibrium characterizations of the bundled games.

use gamedecomp::catalog::{self, GameClass};
use gamedecomp::classify;
use gamedecomp::equilibrium;
use gamedecomp::game::{Game, DEFAULT_TOL};
use gamedecomp::operators;
use gamedecomp::profile::MixedProfile;
use gamedecomp::space::StrategySpace;
use gamedecomp::subspace::{self, component};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shapes() -> Vec<Vec<usize>> {
    vec![
        vec![2, 2],
        vec![3, 3],
        vec![2, 4],
        vec![4, 3],
        vec![2, 2, 2],
        vec![3, 2, 4],
        vec![2, 3, 3],
    ]
}

fn random_profile(space: &StrategySpace, rng: &mut ChaCha8Rng) -> MixedProfile {
    let weights = space
        .sizes()
        .iter()
        .map(|&k| {
            let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..1.0)).collect();
            let sum: f64 = raw.iter().sum();
            raw.into_iter().map(|x| x / sum).collect()
        })
        .collect();
    MixedProfile::new(space, weights).unwrap()
}

// -------------------------------------------------------------------------
// game module

#[test]
fn engine_built_members_of_orthogonal_pairs_are_orthogonal() {
    for (i, shape) in shapes().iter().enumerate() {
        let space = StrategySpace::with_sizes(shape).unwrap();
        for trial in 0..20u64 {
            let seed = 100 * (i as u64) + trial;
            let c = catalog::random_member(GameClass::CommonInterest, &space, seed).unwrap();
            let z = catalog::random_member(GameClass::ZeroSum, &space, seed + 7000).unwrap();
            let ip = c.inner_product(&z).unwrap();
            assert!(ip.abs() <= 1e-10 * c.norm() * z.norm() + 1e-14);

            let e = catalog::random_member(GameClass::NonStrategic, &space, seed + 1).unwrap();
            let n = catalog::random_member(GameClass::Normalized, &space, seed + 7001).unwrap();
            let ip = e.inner_product(&n).unwrap();
            assert!(ip.abs() <= 1e-10 * e.norm() * n.norm() + 1e-14);
        }
    }
}

#[test]
fn deviation_gain_is_invariant_under_non_strategic_addition() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for shape in shapes() {
        let space = StrategySpace::with_sizes(&shape).unwrap();
        let f = catalog::random_game(&space, 303);
        let h = catalog::random_member(GameClass::NonStrategic, &space, 304).unwrap();
        let sum = f.add(&h).unwrap();
        for _ in 0..10 {
            let sigma = random_profile(&space, &mut rng);
            for i in 0..space.players() {
                let a = f.deviation_gain(&sigma, i).unwrap();
                let b = sum.deviation_gain(&sigma, i).unwrap();
                assert!((a - b).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn is_nash_is_invariant_under_positive_scaling() {
    let game = catalog::demo_game();
    let sigma = MixedProfile::new(
        game.space(),
        vec![vec![0.5, 0.5, 0.0], vec![0.5, 0.5, 0.0]],
    )
    .unwrap();
    assert!(game.is_nash(&sigma, DEFAULT_TOL).unwrap());
    for c in [0.1, 2.0, 1e3] {
        assert!(game.scale(c).is_nash(&sigma, DEFAULT_TOL * c.max(1.0)).unwrap());
    }
    let non_nash = MixedProfile::pure(game.space(), &[0, 1]).unwrap();
    assert!(!game.is_nash(&non_nash, DEFAULT_TOL).unwrap());
    assert!(!game.scale(2.0).is_nash(&non_nash, DEFAULT_TOL).unwrap());
}

#[test]
fn demo_mixed_equilibrium_payoffs() {
    let game = catalog::demo_game();
    let sigma = MixedProfile::new(
        game.space(),
        vec![
            vec![1.0 / 6.0, 0.5, 1.0 / 3.0],
            vec![1.0 / 6.0, 0.5, 1.0 / 3.0],
        ],
    )
    .unwrap();
    assert!((game.expected_payoff(&sigma, 0).unwrap() - 0.5).abs() <= 1e-12);
    for i in 0..2 {
        assert!(game.deviation_gain(&sigma, i).unwrap().abs() <= 1e-12);
    }
    assert!(game.is_nash(&sigma, 1e-10).unwrap());
}

#[test]
fn strategic_equivalence_examples() {
    let f = catalog::demo_game();
    let h = catalog::random_member(GameClass::NonStrategic, f.space(), 5).unwrap();
    assert!(f.is_strategically_equivalent(&f.add(&h).unwrap(), DEFAULT_TOL).unwrap());

    // shifting a player's payoff by an opponent-dependent amount preserves
    // strategic equivalence; shifting along her own axis does not
    let [_, _, b, _] = catalog::demo_components();
    let mut shifted = b.tensors().to_vec();
    for s2 in 0..3 {
        for s1 in 0..3 {
            shifted[0][s1 * 3 + s2] += (s2 as f64) * 2.5 - 1.0;
        }
    }
    let shifted = Game::new(b.space().clone(), shifted).unwrap();
    assert!(b.is_strategically_equivalent(&shifted, DEFAULT_TOL).unwrap());

    let mp = catalog::matching_pennies();
    let coord = catalog::coordination(2);
    assert!(!mp.is_strategically_equivalent(&coord, DEFAULT_TOL).unwrap());
}

// -------------------------------------------------------------------------
// subspace module

#[test]
fn perturbing_one_component_subspace_changes_only_that_component() {
    for shape in [vec![3, 3], vec![2, 3, 2]] {
        let space = StrategySpace::with_sizes(&shape).unwrap();
        let f = catalog::random_game(&space, 11);
        let base = subspace::decompose_main(&f).unwrap();
        let cases = [
            (GameClass::NormalizedCommonInterest, component::NORMALIZED_COMMON_INTEREST),
            (GameClass::NormalizedZeroSum, component::NORMALIZED_ZERO_SUM),
            (GameClass::ZeroSumPotential, component::ZERO_SUM_POTENTIAL),
        ];
        for (class, target) in cases {
            let delta = catalog::random_member(class, &space, 12).unwrap();
            let perturbed = subspace::decompose_main(&f.add(&delta).unwrap()).unwrap();
            for (name, got) in &perturbed.components {
                let before = base.component(name).unwrap();
                if name == target {
                    let want = before.add(&delta).unwrap();
                    assert!(got.max_abs_diff(&want).unwrap() <= 1e-9, "{name} did not absorb");
                } else {
                    assert!(got.max_abs_diff(before).unwrap() <= 1e-9, "{name} drifted");
                }
            }
        }
    }
}

#[test]
fn main_components_satisfy_definitional_membership() {
    for shape in shapes() {
        let space = StrategySpace::with_sizes(&shape).unwrap();
        let f = catalog::random_game(&space, 23);
        let d = subspace::decompose_main(&f).unwrap();
        let nc = d.component(component::NORMALIZED_COMMON_INTEREST).unwrap();
        let nz = d.component(component::NORMALIZED_ZERO_SUM).unwrap();
        let b = d.component(component::ZERO_SUM_POTENTIAL).unwrap();
        assert!(classify::is_common_interest(nc, 1e-10));
        assert!(classify::is_normalized(nc, 1e-10));
        assert!(classify::is_zero_sum(nz, 1e-10));
        assert!(classify::is_normalized(nz, 1e-10));
        assert!(classify::potential_cycle_test(b, 1e-9).pass);
        assert!(classify::zero_sum_cycle_test(b, 1e-9).pass);
    }
}

#[test]
fn vanishing_common_interest_projection_iff_zero_sum_cycle_passes() {
    for shape in shapes() {
        let space = StrategySpace::with_sizes(&shape).unwrap();
        for (k, class) in GameClass::ALL.iter().enumerate() {
            let f = catalog::random_member(*class, &space, 777 + k as u64).unwrap();
            let scale = f.norm().max(1.0);
            let nc_norm = subspace::project_normalized_common_interest(&f).norm();
            let pass = classify::zero_sum_cycle_test(&f, 1e-8 * scale).pass;
            assert_eq!(
                nc_norm <= 1e-8 * scale,
                pass,
                "{} on {shape:?}: nc {nc_norm}, pass {pass}",
                class.name()
            );
        }
        let raw = catalog::random_game(&space, 999);
        let scale = raw.norm().max(1.0);
        let nc_norm = subspace::project_normalized_common_interest(&raw).norm();
        assert_eq!(
            nc_norm <= 1e-8 * scale,
            classify::zero_sum_cycle_test(&raw, 1e-8 * scale).pass
        );
    }
}

#[test]
fn elementary_and_refined_scheme_examples() {
    let mp = catalog::matching_pennies();
    let (cz, _) = subspace::decompose_elementary(&mp).unwrap();
    assert!(cz.component(component::COMMON_INTEREST).unwrap().norm() <= 1e-12);
    assert!(
        cz.component(component::ZERO_SUM)
            .unwrap()
            .max_abs_diff(&mp)
            .unwrap()
            <= 1e-12
    );

    let coord = catalog::coordination(3);
    let (cz, _) = subspace::decompose_elementary(&coord).unwrap();
    assert!(cz.component(component::ZERO_SUM).unwrap().norm() <= 1e-12);

    // four-way split of a non-strategic game: everything lands in the
    // non-strategic part
    let space = StrategySpace::with_sizes(&[3, 2]).unwrap();
    let e = catalog::random_member(GameClass::NonStrategic, &space, 8).unwrap();
    let four = subspace::decompose_four(&e).unwrap();
    assert!(four.component(component::NORMALIZED_ZERO_SUM_POTENTIAL).unwrap().norm() <= 1e-10);
    assert!(
        four.component(component::NON_STRATEGIC)
            .unwrap()
            .max_abs_diff(&e)
            .unwrap()
            <= 1e-10
    );

    // the normalized zero-sum potential part has zero own-axis sums
    let f = catalog::random_game(&StrategySpace::with_sizes(&[3, 4]).unwrap(), 31);
    let four = subspace::decompose_four(&f).unwrap();
    let nb = four.component(component::NORMALIZED_ZERO_SUM_POTENTIAL).unwrap();
    assert!(operators::normalized_defect(nb) <= 1e-10);

    // demo game: the refined split reassembles the printed own-payoff and
    // non-strategic parts
    let demo = catalog::demo_game();
    let [_, _, b, e] = catalog::demo_components();
    let four = subspace::decompose_four(&demo).unwrap();
    let be = four
        .component(component::NORMALIZED_ZERO_SUM_POTENTIAL)
        .unwrap()
        .add(four.component(component::NON_STRATEGIC).unwrap())
        .unwrap();
    assert!(be.max_abs_diff(&b.add(&e).unwrap()).unwrap() <= 1e-12);

    // potential/non-strategic/harmonic split
    let rps = catalog::rps();
    let cd = subspace::decompose_candogan(&rps).unwrap();
    assert!(cd.component(component::HARMONIC).unwrap().max_abs_diff(&rps).unwrap() <= 1e-12);
    assert!(cd.component(component::POTENTIAL).unwrap().norm() <= 1e-12);

    let ncoord = subspace::project_normalized(&coord);
    let cd = subspace::decompose_candogan(&ncoord).unwrap();
    assert!(
        cd.component(component::POTENTIAL)
            .unwrap()
            .max_abs_diff(&ncoord)
            .unwrap()
            <= 1e-12
    );

    let cd = subspace::decompose_candogan(&demo).unwrap();
    let [_, z, _, _] = catalog::demo_components();
    assert!(cd.component(component::HARMONIC).unwrap().max_abs_diff(&z).unwrap() <= 1e-12);
}

#[test]
fn generic_projector_recovers_demo_zero_sum_component() {
    let demo = catalog::demo_game();
    let space = demo.space();
    let constraints = subspace::normalized_zero_sum_constraints(space);
    let z = subspace::generic_project(space, &constraints, &demo).unwrap();
    let [_, z_ref, _, _] = catalog::demo_components();
    assert!(z.max_abs_diff(&z_ref).unwrap() <= 1e-12);
}

#[test]
fn common_interest_input_projects_to_zero_under_zero_sum_constraints() {
    let space = StrategySpace::with_sizes(&[3, 3]).unwrap();
    let c = catalog::random_member(GameClass::CommonInterest, &space, 50).unwrap();
    let z = subspace::generic_project(&space, &subspace::zero_sum_constraints(&space), &c).unwrap();
    assert!(z.norm() <= 1e-10);
}

#[test]
fn normalized_common_interest_projection_fixed_points_and_kernel() {
    let space = StrategySpace::with_sizes(&[3, 2, 2]).unwrap();
    let g = catalog::random_member(GameClass::NormalizedCommonInterest, &space, 61).unwrap();
    let pg = subspace::project_normalized_common_interest(&g);
    assert!(pg.max_abs_diff(&g).unwrap() <= 1e-12);

    let zse = catalog::random_member(GameClass::ZeroSumEquivalent, &space, 62).unwrap();
    assert!(subspace::project_normalized_common_interest(&zse).norm() <= 1e-10);
}

// -------------------------------------------------------------------------
// classify module

/// Independent potential construction with the coordinate path walked in
/// reverse player order.
fn potential_by_reverse_path(f: &Game) -> Vec<f64> {
    let space = f.space();
    let n = space.players();
    let mut v = vec![0.0; space.num_profiles()];
    for idx in 0..space.num_profiles() {
        let mut prefix = 0usize;
        let mut acc = 0.0;
        for i in (0..n).rev() {
            let with = prefix + space.coordinate(idx, i) * space.strides()[i];
            acc += f.payoff_at(i, with) - f.payoff_at(i, prefix);
            prefix = with;
        }
        v[idx] = acc;
    }
    v
}

#[test]
fn potentials_from_different_path_orders_differ_by_a_constant() {
    for shape in shapes() {
        let space = StrategySpace::with_sizes(&shape).unwrap();
        let f = catalog::random_member(GameClass::Potential, &space, 81).unwrap();
        let v1 = classify::extract_potential(&f, DEFAULT_TOL).unwrap();
        let v2 = potential_by_reverse_path(&f);
        assert!(v1[0].abs() <= 1e-12);
        let offset = v1[0] - v2[0];
        for (a, b) in v1.iter().zip(&v2) {
            assert!((a - b - offset).abs() <= 1e-9);
        }
    }
}

#[test]
fn demo_own_payoff_part_has_indicator_potential_and_multilateral_form() {
    let [_, _, b, e] = catalog::demo_components();
    let f_b = b.add(&e).unwrap();
    let v = classify::extract_potential(&f_b, DEFAULT_TOL).unwrap();
    // base-canonical potential of the own-payoff part: indicator of the
    // first strategy per player, shifted to vanish at the base profile
    let expected = [0.0, -1.0, -1.0, -1.0, -2.0, -2.0, -1.0, -2.0, -2.0];
    for (a, b) in v.iter().zip(&expected) {
        assert!((a - b).abs() <= 1e-12);
    }

    let form = classify::extract_multilateral(&f_b, DEFAULT_TOL).unwrap();
    for l in 0..2 {
        let zeta = form.zeta_reduced(l);
        assert_eq!(zeta.len(), 3);
        // up to a constant: 1 on the first strategy, 0 elsewhere
        assert!((zeta[0] - zeta[1] - 1.0).abs() <= 1e-12);
        assert!((zeta[1] - zeta[2]).abs() <= 1e-12);
    }
}

#[test]
fn subset_sum_games_are_potential() {
    // payoffs of the form sum over subsets containing the player of a
    // function depending only on that subset's coordinates
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for shape in [vec![2, 3, 2], vec![3, 3], vec![2, 2, 2]] {
        let space = StrategySpace::with_sizes(&shape).unwrap();
        let n = space.players();
        let total = space.num_profiles();
        let mut subset_fns = Vec::new();
        for mask in 0..(1usize << n) {
            let mut t: Vec<f64> = (0..total).map(|_| rng.gen_range(-1.0..1.0)).collect();
            for axis in 0..n {
                if mask & (1 << axis) == 0 {
                    t = operators::axis_average(&space, &t, axis);
                }
            }
            subset_fns.push(t);
        }
        let payoffs: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut t = vec![0.0; total];
                for (mask, xi) in subset_fns.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        for (tv, xv) in t.iter_mut().zip(xi) {
                            *tv += xv;
                        }
                    }
                }
                t
            })
            .collect();
        let f = Game::new(space, payoffs).unwrap();
        assert!(classify::potential_cycle_test(&f, 1e-9).pass);
    }
}

#[test]
fn axis_independence_on_bayesian_embedding() {
    let spec = catalog::bayesian_coordination(2.0, 1.0, 0.4, 0.5).unwrap();
    let g = catalog::bayesian_embed(&spec).unwrap();
    let report = classify::axis_independence_test(&g, DEFAULT_TOL);
    assert!(report.pass);
}

#[test]
fn contest_zero_sum_form_matches_reference_form_up_to_equivalence() {
    let spec = catalog::ContestSpec {
        players: 3,
        prize: 1.0,
        costs: vec![1.0, 1.25, 1.5],
        grid: (1..=8).map(|i| i as f64 * 0.06).collect(),
    };
    let f = catalog::contest(&spec).unwrap();
    let form = classify::extract_zero_sum_form(&f, DEFAULT_TOL).unwrap();
    // reference zero-sum representative: share minus average share of the
    // prize, minus pairwise cost differences
    let space = f.space().clone();
    let n = spec.players;
    let total = space.num_profiles();
    let mut w_ref = vec![vec![0.0; total]; n];
    for idx in 0..total {
        let efforts: Vec<f64> = (0..n).map(|i| spec.grid[space.coordinate(idx, i)]).collect();
        let q_sum: f64 = efforts.iter().sum();
        for i in 0..n {
            let share = efforts[i] / q_sum;
            let mut cost_part = 0.0;
            for j in 0..n {
                if j != i {
                    cost_part += spec.costs[i] * efforts[i] - spec.costs[j] * efforts[j];
                }
            }
            w_ref[i][idx] = (share - 1.0 / n as f64) * spec.prize - cost_part / (n as f64 - 1.0);
        }
    }
    let w_ref = Game::new(space, w_ref).unwrap();
    assert!(classify::is_zero_sum(&w_ref, 1e-10));
    assert!(form.w.is_strategically_equivalent(&w_ref, 1e-9).unwrap());
    assert!(f.is_strategically_equivalent(&w_ref, 1e-9).unwrap());
}

#[test]
fn cournot_multilateral_reconstruction_is_equivalent() {
    let spec = catalog::CournotSpec {
        players: 3,
        alpha: 10.0,
        beta: 1.0,
        costs: vec![1.0, 1.0, 1.0],
        grid: vec![0.0, 1.0, 2.0, 3.0, 4.0],
    };
    let f = catalog::cournot(&spec).unwrap();
    let form = classify::extract_multilateral(&f, DEFAULT_TOL).unwrap();
    let rebuilt = form.reconstruct();
    assert!(f.is_strategically_equivalent(&rebuilt, 1e-9).unwrap());
}

// -------------------------------------------------------------------------
// equilibrium module

#[test]
fn deviation_gain_total_is_nonnegative_on_random_profiles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for shape in shapes() {
        let space = StrategySpace::with_sizes(&shape).unwrap();
        let f = catalog::random_game(&space, 17);
        for _ in 0..50 {
            let sigma = random_profile(&space, &mut rng);
            assert!(equilibrium::phi(&f, &sigma).unwrap() >= -1e-12);
        }
    }
}

#[test]
fn solver_outputs_have_zero_gain_and_off_equilibrium_profiles_do_not() {
    let demo = catalog::demo_game();
    let list = equilibrium::bimatrix_nash(&demo).unwrap();
    assert!(!list.profiles.is_empty());
    for p in &list.profiles {
        assert!(equilibrium::phi(&demo, p).unwrap() <= 1e-8);
    }

    let rps = catalog::rps();
    let uniform = MixedProfile::uniform(rps.space());
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut positive = 0usize;
    for _ in 0..1000 {
        let sigma = random_profile(rps.space(), &mut rng);
        if sigma.max_abs_diff(&uniform) > 1e-6 {
            assert!(equilibrium::phi(&rps, &sigma).unwrap() > 0.0);
            positive += 1;
        }
    }
    assert!(positive >= 990);
}

#[test]
fn degenerate_rectangular_zero_sum_game_has_convex_equilibrium_set() {
    // 3x2 normalized zero-sum games carry a continuum of equilibria
    let space = StrategySpace::with_sizes(&[3, 2]).unwrap();
    let f = catalog::random_member(GameClass::NormalizedZeroSum, &space, 4040).unwrap();
    assert!(equilibrium::verify_uniform_ne(&f).unwrap());
    let list = equilibrium::bimatrix_nash(&f).unwrap();
    assert!(list.degenerate, "rectangular zero-sum game should be flagged");
    if list.profiles.len() >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(4141);
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
            let mix = MixedProfile::new(&space, weights).unwrap();
            assert!(f.is_nash(&mix, 1e-8).unwrap());
        }
    }
}

#[test]
fn support_enumeration_is_invariant_under_strategic_equivalence() {
    for seed in 0..10u64 {
        let space = StrategySpace::with_sizes(&[3, 3]).unwrap();
        let f = catalog::random_game(&space, 600 + seed);
        let h = catalog::random_member(GameClass::NonStrategic, &space, 700 + seed).unwrap();
        let g = f.add(&h).unwrap();
        let a = equilibrium::bimatrix_nash(&f).unwrap();
        let b = equilibrium::bimatrix_nash(&g).unwrap();
        assert_eq!(a.profiles.len(), b.profiles.len(), "seed {seed}");
        for p in &a.profiles {
            assert!(
                b.profiles.iter().any(|q| p.max_abs_diff(q) <= 1e-8),
                "seed {seed}: equilibrium sets differ"
            );
        }
    }
}

#[test]
fn demo_game_pure_equilibria_are_the_diagonal() {
    let list = equilibrium::pure_nash(&catalog::demo_game());
    assert_eq!(list.profiles.len(), 3);
    for (k, p) in list.profiles.iter().enumerate() {
        assert!(p.player(0)[k] > 0.999 && p.player(1)[k] > 0.999);
    }
}

#[test]
fn phi_grid_of_rps_has_minimum_at_the_center() {
    let rows = equilibrium::phi_grid(&catalog::rps(), 60).unwrap();
    let min = rows
        .iter()
        .min_by(|a, b| a.phi.total_cmp(&b.phi))
        .unwrap();
    assert!(min.phi.abs() <= 1e-12);
    assert!((min.p1 - 1.0 / 3.0).abs() <= 1e-12);
    assert!((min.p2 - 1.0 / 3.0).abs() <= 1e-12);
}

#[test]
fn phi_grid_of_demo_common_interest_part_vanishes_at_vertices() {
    let d = subspace::decompose_main(&catalog::demo_game()).unwrap();
    let f_nc = d.component(component::NORMALIZED_COMMON_INTEREST).unwrap();
    let rows = equilibrium::phi_grid(f_nc, 10).unwrap();
    for row in &rows {
        let at_vertex = [row.p1, row.p2, row.p3].iter().any(|p| (p - 1.0).abs() <= 1e-12);
        if at_vertex {
            assert!(row.phi <= 1e-10, "vertex ({},{},{})", row.p1, row.p2, row.p3);
        }
    }
}

#[test]
fn shared_uniform_equilibrium_survives_positive_combination() {
    let d = subspace::decompose_main(&catalog::demo_game()).unwrap();
    let f_nc = d.component(component::NORMALIZED_COMMON_INTEREST).unwrap();
    let f_nz = d.component(component::NORMALIZED_ZERO_SUM).unwrap();
    let uniform = MixedProfile::uniform(f_nc.space());
    assert!(equilibrium::linear_combination_ne_check(f_nc, f_nz, &uniform, 1.0, 1.0).unwrap());

    let potential = catalog::random_member(
        GameClass::Potential,
        &StrategySpace::with_sizes(&[3, 3]).unwrap(),
        2222,
    )
    .unwrap();
    let zero = Game::zero(potential.space().clone());
    let pure = equilibrium::pure_nash(&potential);
    assert!(!pure.profiles.is_empty());
    assert!(equilibrium::linear_combination_ne_check(
        &potential,
        &zero,
        &pure.profiles[0],
        2.0,
        3.0
    )
    .unwrap());
}

#[test]
fn reference_components_are_mutually_orthogonal() {
    let [c, z, b, e] = catalog::demo_components();
    assert_eq!(c.inner_product(&z).unwrap(), 0.0);
    // the printed own-payoff/non-strategic split is deliberately not
    // orthogonal; their sum is orthogonal to both normalized components
    let be = b.add(&e).unwrap();
    assert!(c.inner_product(&be).unwrap().abs() <= 1e-12);
    assert!(z.inner_product(&be).unwrap().abs() <= 1e-12);
}

#[test]
fn rps_expected_payoff_and_pure_profile_examples() {
    let rps = catalog::rps();
    let uniform = MixedProfile::uniform(rps.space());
    for i in 0..2 {
        assert!(rps.expected_payoff(&uniform, i).unwrap().abs() <= 1e-15);
    }
    let rock_rock = MixedProfile::pure(rps.space(), &[0, 0]).unwrap();
    assert!(!rps.is_nash(&rock_rock, DEFAULT_TOL).unwrap());

    // losing player's deviation gain at a pure profile equals the payoff swing
    let mp = catalog::matching_pennies();
    let hh = MixedProfile::pure(mp.space(), &[0, 0]).unwrap();
    assert!((mp.deviation_gain(&hh, 1).unwrap() - 2.0).abs() <= 1e-15);
    assert!(mp.deviation_gain(&hh, 0).unwrap().abs() <= 1e-15);

    // a non-strategic game has zero deviation gain everywhere
    let space = StrategySpace::with_sizes(&[3, 2]).unwrap();
    let h = catalog::random_member(GameClass::NonStrategic, &space, 9).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..20 {
        let sigma = random_profile(&space, &mut rng);
        for i in 0..2 {
            assert!(h.deviation_gain(&sigma, i).unwrap().abs() <= 1e-12);
        }
    }
}

#[test]
fn zero_game_satisfies_every_membership_predicate() {
    let z = Game::zero(StrategySpace::with_sizes(&[2, 3]).unwrap());
    assert!(classify::is_common_interest(&z, 0.0));
    assert!(classify::is_zero_sum(&z, 0.0));
    assert!(classify::is_normalized(&z, 0.0));
    assert!(classify::is_non_strategic(&z, 0.0));
    let [c, ..] = catalog::demo_components();
    let report = classify::potential_cycle_test(&c, 0.0);
    assert!(report.pass && report.worst_violation == 0.0);
    let mp = catalog::matching_pennies();
    assert!(classify::is_zero_sum(&mp, 0.0));
    assert!(classify::is_normalized(&mp, 0.0));
    assert!(!classify::is_common_interest(&mp, DEFAULT_TOL));
}

#[test]
fn projection_edge_cases() {
    let space = StrategySpace::with_sizes(&[3, 3]).unwrap();
    let n = catalog::random_member(GameClass::Normalized, &space, 70).unwrap();
    assert!(subspace::project_non_strategic(&n).norm() <= 1e-12);
    let e = catalog::random_member(GameClass::NonStrategic, &space, 71).unwrap();
    assert!(subspace::project_normalized(&e).norm() <= 1e-12);

    // player-average of the demo game at the (1,2) cell is 0
    let demo = catalog::demo_game();
    let c = subspace::project_common_interest(&demo);
    assert!(c.payoff(0, &[0, 1]).abs() <= 1e-15);
}

#[test]
fn generic_projector_agrees_with_every_closed_form_on_random_games() {
    let space = StrategySpace::with_sizes(&[3, 2, 2]).unwrap();
    let constraint_sets = [
        subspace::zero_sum_constraints(&space),
        subspace::normalized_constraints(&space),
        subspace::common_interest_constraints(&space),
        subspace::non_strategic_constraints(&space),
    ];
    let projectors: Vec<_> = constraint_sets
        .iter()
        .map(|c| subspace::GenericProjector::new(&space, c).unwrap())
        .collect();
    let nc = {
        let mut c = subspace::common_interest_constraints(&space);
        c.extend(subspace::normalized_constraints(&space));
        subspace::GenericProjector::new(&space, &c).unwrap()
    };
    for seed in 0..100u64 {
        let f = catalog::random_game(&space, 3_000 + seed);
        let closed = [
            subspace::project_zero_sum(&f),
            subspace::project_normalized(&f),
            subspace::project_common_interest(&f),
            subspace::project_non_strategic(&f),
        ];
        for (p, want) in projectors.iter().zip(&closed) {
            let got = p.project(&f).unwrap();
            assert!(got.max_abs_diff(want).unwrap() <= 1e-9);
        }
        let got = nc.project(&f).unwrap();
        let want = subspace::project_normalized_common_interest(&f);
        assert!(got.max_abs_diff(&want).unwrap() <= 1e-9);
    }
}

#[test]
fn symmetric_separable_game_zeta_recovery() {
    // a symmetric game whose payoffs split into own and opponent terms: the
    // own term is the strategically identified content and must be
    // recovered in both coordinates; the opponent term is non-strategic
    // and only identified up to such shifts
    let zeta_own = [1.5, -0.5, 2.0];
    let zeta_other = [0.25, 1.0, -1.25];
    let space = StrategySpace::with_sizes(&[3, 3]).unwrap();
    let mut t1 = vec![0.0; 9];
    let mut t2 = vec![0.0; 9];
    for s1 in 0..3 {
        for s2 in 0..3 {
            t1[s1 * 3 + s2] = zeta_own[s1] + zeta_other[s2];
            t2[s1 * 3 + s2] = zeta_own[s2] + zeta_other[s1];
        }
    }
    let f = Game::new(space.clone(), vec![t1.clone(), t2.clone()]).unwrap();
    assert!(classify::symmetric_zero_sum_test(&f, DEFAULT_TOL).unwrap());
    let form = classify::extract_multilateral(&f, DEFAULT_TOL).unwrap();
    for l in 0..2 {
        let got = form.zeta_reduced(l);
        for s in 1..3 {
            assert!((got[s] - got[0] - (zeta_own[s] - zeta_own[0])).abs() <= 1e-12);
        }
    }
    // residual against the recovered separable display is non-strategic,
    // which is exactly the claimed representation up to equivalence
    let mut d1 = vec![0.0; 9];
    let mut d2 = vec![0.0; 9];
    let zeta_s1 = form.zeta_reduced(1);
    let zeta_s2 = form.zeta_reduced(0);
    for s1 in 0..3 {
        for s2 in 0..3 {
            d1[s1 * 3 + s2] = zeta_s1[s1] + zeta_s2[s2];
            d2[s1 * 3 + s2] = zeta_s1[s2] + zeta_s2[s1];
        }
    }
    let display = Game::new(space, vec![d1, d2]).unwrap();
    assert!(f.is_strategically_equivalent(&display, 1e-12).unwrap());
}

#[test]
fn cournot_potential_satisfies_deviation_identity() {
    let spec = catalog::CournotSpec {
        players: 3,
        alpha: 10.0,
        beta: 1.0,
        costs: vec![1.0, 1.0, 1.0],
        grid: vec![0.0, 1.0, 2.0, 3.0, 4.0],
    };
    let f = catalog::cournot(&spec).unwrap();
    let v = classify::extract_potential(&f, DEFAULT_TOL).unwrap();
    let space = f.space();
    for idx in 0..space.num_profiles() {
        for i in 0..3 {
            let own = space.coordinate(idx, i);
            let base = idx - own * space.strides()[i];
            for t in 0..space.sizes()[i] {
                let other = base + t * space.strides()[i];
                let lhs = f.payoff_at(i, idx) - f.payoff_at(i, other);
                let rhs = v[idx] - v[other];
                assert!((lhs - rhs).abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn shared_types_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Game>();
    assert_send_sync::<StrategySpace>();
    assert_send_sync::<MixedProfile>();
    assert_send_sync::<gamedecomp::subspace::DecompositionResult>();
    assert_send_sync::<gamedecomp::classify::ClassificationReport>();
}

#[test]
fn rectangular_uniform_check_catches_precondition_failures() {
    // a normalized common interest game passes, the raw game does not
    let space = StrategySpace::with_sizes(&[3, 2]).unwrap();
    let good = catalog::random_member(GameClass::NormalizedCommonInterest, &space, 5050).unwrap();
    assert!(equilibrium::verify_uniform_ne(&good).unwrap());
    let raw = catalog::random_game(&space, 5051);
    let err = equilibrium::verify_uniform_ne(&raw).unwrap_err().to_string();
    assert!(err.contains("not normalized"), "{err}");
    let e = catalog::random_member(GameClass::Normalized, &space, 5052).unwrap();
    let err = equilibrium::verify_uniform_ne(&e).unwrap_err().to_string();
    assert!(err.contains("neither zero-sum nor common interest"), "{err}");
}
