//! The canonical JSON game format and JSON/CSV report serialization.
//!
//! A game is `{"players": n, "strategies": [[labels]*n], "payoffs": [...]}`
//! where `payoffs[i]` is player i's tensor as nested arrays with player 1's
//! strategy outermost and player n's innermost. Numbers round-trip
//! bit-exactly through the serializer.

use serde_json::{json, Map, Value};

use crate::classify::ClassificationReport;
use crate::equilibrium::{MinimaxSolution, NashList, PhiGridRow};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::profile::MixedProfile;
use crate::space::StrategySpace;
use crate::subspace::DecompositionResult;

/// Parse a game from canonical JSON text.
pub fn game_from_json(text: &str) -> Result<Game> {
    let value: Value = serde_json::from_str(text)?;
    game_from_value(&value)
}

/// Parse a game from a decoded JSON value.
pub fn game_from_value(value: &Value) -> Result<Game> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::InvalidGame("top level must be an object".into()))?;
    let players = obj
        .get("players")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::InvalidGame("missing integer field 'players'".into()))?
        as usize;
    let strategies = obj
        .get("strategies")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidGame("missing array field 'strategies'".into()))?;
    if strategies.len() != players {
        return Err(Error::InvalidGame(format!(
            "'strategies' has {} entries, 'players' is {}",
            strategies.len(),
            players
        )));
    }
    let mut labels = Vec::with_capacity(players);
    for (i, s) in strategies.iter().enumerate() {
        let list = s.as_array().ok_or_else(|| {
            Error::InvalidGame(format!("strategies[{i}] must be an array of strings"))
        })?;
        let mut player_labels = Vec::with_capacity(list.len());
        for l in list {
            player_labels.push(
                l.as_str()
                    .ok_or_else(|| {
                        Error::InvalidGame(format!("strategies[{i}] must contain strings"))
                    })?
                    .to_string(),
            );
        }
        labels.push(player_labels);
    }
    let space = StrategySpace::new(labels)?;
    let payoff_values = obj
        .get("payoffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidGame("missing array field 'payoffs'".into()))?;
    if payoff_values.len() != players {
        return Err(Error::InvalidGame(format!(
            "'payoffs' has {} tensors, 'players' is {}",
            payoff_values.len(),
            players
        )));
    }
    let mut payoffs = Vec::with_capacity(players);
    for (i, v) in payoff_values.iter().enumerate() {
        let mut flat = Vec::with_capacity(space.num_profiles());
        flatten_tensor(v, space.sizes(), 0, i, &mut flat)?;
        payoffs.push(flat);
    }
    Game::new(space, payoffs)
}

fn flatten_tensor(
    value: &Value,
    sizes: &[usize],
    depth: usize,
    player: usize,
    out: &mut Vec<f64>,
) -> Result<()> {
    if depth == sizes.len() {
        let x = value.as_f64().ok_or_else(|| {
            Error::InvalidGame(format!(
                "payoffs[{player}]: expected a number at depth {depth}"
            ))
        })?;
        out.push(x);
        return Ok(());
    }
    let arr = value.as_array().ok_or_else(|| {
        Error::InvalidGame(format!(
            "payoffs[{player}]: expected an array at depth {depth}"
        ))
    })?;
    if arr.len() != sizes[depth] {
        return Err(Error::InvalidGame(format!(
            "payoffs[{player}]: axis {} has length {}, expected {}",
            depth + 1,
            arr.len(),
            sizes[depth]
        )));
    }
    for v in arr {
        flatten_tensor(v, sizes, depth + 1, player, out)?;
    }
    Ok(())
}

/// Encode a game as a canonical JSON value.
pub fn game_to_value(game: &Game) -> Value {
    let space = game.space();
    let mut obj = Map::new();
    obj.insert("players".into(), json!(space.players()));
    obj.insert("strategies".into(), json!(space.labels()));
    let payoffs: Vec<Value> = (0..space.players())
        .map(|i| nest_tensor(game.tensor(i), space.sizes(), &mut 0))
        .collect();
    obj.insert("payoffs".into(), Value::Array(payoffs));
    Value::Object(obj)
}

fn nest_tensor(flat: &[f64], sizes: &[usize], cursor: &mut usize) -> Value {
    if sizes.is_empty() {
        let v = json!(flat[*cursor]);
        *cursor += 1;
        return v;
    }
    let (head, rest) = sizes.split_first().unwrap();
    Value::Array((0..*head).map(|_| nest_tensor(flat, rest, cursor)).collect())
}

/// Encode a game as pretty-printed canonical JSON text.
pub fn game_to_json(game: &Game) -> String {
    serde_json::to_string_pretty(&game_to_value(game)).expect("game serialization")
}

/// Encode a decomposition: scheme, per-component games, residual, norms.
pub fn decomposition_to_value(d: &DecompositionResult) -> Value {
    let mut components = Map::new();
    let mut norms = Map::new();
    for (name, g) in &d.components {
        components.insert(name.clone(), game_to_value(g));
        norms.insert(name.clone(), json!(g.norm()));
    }
    let mut obj = Map::new();
    obj.insert("scheme".into(), json!(d.scheme));
    obj.insert("components".into(), Value::Object(components));
    obj.insert("residual".into(), json!(d.residual));
    obj.insert("component_norms".into(), Value::Object(norms));
    Value::Object(obj)
}

/// Encode a classification report: flags plus test evidence.
pub fn classification_to_value(r: &ClassificationReport) -> Value {
    let mut flags = Map::new();
    flags.insert("common_interest".into(), json!(r.common_interest));
    flags.insert("zero_sum".into(), json!(r.zero_sum));
    flags.insert("normalized".into(), json!(r.normalized));
    flags.insert("non_strategic".into(), json!(r.non_strategic));
    flags.insert("potential".into(), json!(r.potential));
    flags.insert("zero_sum_equivalent".into(), json!(r.zero_sum_equivalent));
    flags.insert("zero_sum_potential".into(), json!(r.zero_sum_potential));
    let mut norms = Map::new();
    for (name, n) in &r.component_norms {
        norms.insert(name.clone(), json!(n));
    }
    let mut evidence = Map::new();
    evidence.insert(
        "potential_worst_violation".into(),
        json!(r.potential_worst_violation),
    );
    evidence.insert(
        "zero_sum_worst_violation".into(),
        json!(r.zero_sum_worst_violation),
    );
    evidence.insert("component_norms".into(), Value::Object(norms));
    evidence.insert("residual".into(), json!(r.residual));
    let mut obj = Map::new();
    obj.insert("flags".into(), Value::Object(flags));
    obj.insert("evidence".into(), Value::Object(evidence));
    Value::Object(obj)
}

fn profile_to_value(p: &MixedProfile) -> Value {
    json!(p.weights())
}

/// Encode a solver result: profiles, method, degeneracy flag, and the game
/// value when the method computes one.
pub fn nash_list_to_value(list: &NashList) -> Value {
    let mut obj = Map::new();
    obj.insert("method".into(), json!(list.method));
    obj.insert("degenerate".into(), json!(list.degenerate));
    obj.insert(
        "profiles".into(),
        Value::Array(list.profiles.iter().map(profile_to_value).collect()),
    );
    if let Some(v) = list.value {
        obj.insert("value".into(), json!(v));
    }
    Value::Object(obj)
}

/// Encode a minimax solution as a single-profile solver result.
pub fn minimax_to_nash_list(space: &StrategySpace, m: &MinimaxSolution) -> Result<NashList> {
    let profile = MixedProfile::new(space, m.strategies.to_vec())?;
    Ok(NashList {
        profiles: vec![profile],
        degenerate: false,
        method: "minimax".into(),
        value: Some(m.value),
    })
}

/// CSV rows for a symmetric-profile gain grid, header `p1,p2,p3,phi`.
pub fn phi_grid_to_csv(rows: &[PhiGridRow]) -> String {
    let mut out = String::from("p1,p2,p3,phi\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.p1, r.p2, r.p3, r.phi));
    }
    out
}
