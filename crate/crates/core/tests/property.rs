//! Property-based checks of the inner-product space structure and the
//! canonical JSON format.

use gamedecomp::game::Game;
use gamedecomp::json;
use gamedecomp::space::StrategySpace;
use proptest::prelude::*;

fn shape_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=4, 2..=3)
}

fn game_strategy() -> impl Strategy<Value = Game> {
    shape_strategy().prop_flat_map(|shape| {
        let space = StrategySpace::with_sizes(&shape).unwrap();
        let total = space.num_profiles();
        let players = space.players();
        prop::collection::vec(
            prop::collection::vec(-100.0f64..100.0, total),
            players,
        )
        .prop_map(move |payoffs| Game::new(space.clone(), payoffs).unwrap())
    })
}

fn triple_strategy() -> impl Strategy<Value = (Game, Game, Game)> {
    shape_strategy().prop_flat_map(|shape| {
        let space = StrategySpace::with_sizes(&shape).unwrap();
        let total = space.num_profiles();
        let players = space.players();
        let one = move |space: std::sync::Arc<StrategySpace>| {
            prop::collection::vec(prop::collection::vec(-100.0f64..100.0, total), players)
                .prop_map(move |payoffs| Game::new(space.clone(), payoffs).unwrap())
        };
        (one(space.clone()), one(space.clone()), one(space))
    })
}

proptest! {
    #[test]
    fn inner_product_is_symmetric_and_bilinear((f, g, h) in triple_strategy(), a in -10.0f64..10.0, b in -10.0f64..10.0) {
        let scale = f.norm().max(g.norm()).max(h.norm()).max(1.0);
        let fg = f.inner_product(&g).unwrap();
        let gf = g.inner_product(&f).unwrap();
        prop_assert!((fg - gf).abs() <= 1e-10 * scale * scale);

        let combo = f.scale(a).add(&g.scale(b)).unwrap();
        let lhs = combo.inner_product(&h).unwrap();
        let rhs = a * f.inner_product(&h).unwrap() + b * g.inner_product(&h).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-8 * scale * scale * (a.abs() + b.abs()).max(1.0));
    }

    #[test]
    fn cauchy_schwarz_holds((f, g, _) in triple_strategy()) {
        let ip = f.inner_product(&g).unwrap().abs();
        prop_assert!(ip <= f.norm() * g.norm() + 1e-9);
    }

    #[test]
    fn norm_is_homogeneous(f in game_strategy(), c in -50.0f64..50.0) {
        let lhs = f.scale(c).norm();
        let rhs = c.abs() * f.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1.0));
    }

    #[test]
    fn json_round_trip_is_bit_exact(f in game_strategy()) {
        let text = json::game_to_json(&f);
        let back = json::game_from_json(&text).unwrap();
        prop_assert_eq!(back.tensors(), f.tensors());
        prop_assert_eq!(back.space().labels(), f.space().labels());
    }
}
