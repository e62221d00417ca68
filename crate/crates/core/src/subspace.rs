//! Orthogonal projections onto the strategic subspaces and the
//! decomposition schemes built from them.
//!
//! Four subspaces have closed-form projectors built from axis averaging:
//! non-strategic (own-axis average per player), normalized (its complement),
//! common interest (player average), and zero-sum (its complement). The
//! normalized common interest projector composes the player average with the
//! full-interaction extractor; the two commute, so the composition is itself
//! an orthogonal projection onto the intersection. Everything else goes
//! through a generic least-squares projector onto the kernel of an explicit
//! list of linear constraint functionals.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::game::Game;
use crate::linalg;
use crate::operators;
use crate::space::StrategySpace;

/// Cap on total payoff entries for dense constraint assembly.
pub const ENTRY_CAP: usize = 50_000;

/// Scheme identifiers used in decomposition output.
pub mod scheme {
    pub const ELEMENTARY_CZ: &str = "elementary-cz";
    pub const ELEMENTARY_NE: &str = "elementary-ne";
    pub const MAIN: &str = "main";
    pub const FOUR: &str = "four";
    pub const CANDOGAN: &str = "candogan";
}

/// Component names used in decomposition output.
pub mod component {
    pub const COMMON_INTEREST: &str = "common_interest";
    pub const ZERO_SUM: &str = "zero_sum";
    pub const NORMALIZED: &str = "normalized";
    pub const NON_STRATEGIC: &str = "non_strategic";
    pub const NORMALIZED_COMMON_INTEREST: &str = "normalized_common_interest";
    pub const NORMALIZED_ZERO_SUM: &str = "normalized_zero_sum";
    pub const ZERO_SUM_POTENTIAL: &str = "zero_sum_potential";
    pub const NORMALIZED_ZERO_SUM_POTENTIAL: &str = "normalized_zero_sum_potential";
    pub const POTENTIAL: &str = "potential";
    pub const HARMONIC: &str = "harmonic";
}

/// Projection onto the non-strategic games: each player's payoff becomes its
/// own-strategy average.
pub fn project_non_strategic(f: &Game) -> Game {
    operators::own_axis_average(f)
}

/// Projection onto the normalized games: remove each player's own-strategy
/// average. The output has zero own-axis marginal sums.
pub fn project_normalized(f: &Game) -> Game {
    f.sub(&project_non_strategic(f)).expect("same space")
}

/// Projection onto the common interest games: every component becomes the
/// across-player average.
pub fn project_common_interest(f: &Game) -> Game {
    operators::player_average(f)
}

/// Projection onto the zero-sum games: remove the common interest part. The
/// output sums to zero across players at every profile.
pub fn project_zero_sum(f: &Game) -> Game {
    f.sub(&project_common_interest(f)).expect("same space")
}

/// Projection onto the normalized common interest games: player average
/// followed by the full-interaction extractor on the common function.
pub fn project_normalized_common_interest(f: &Game) -> Game {
    let space = f.space().clone();
    let total = space.num_profiles();
    let n = f.players() as f64;
    let mut common = vec![0.0; total];
    for i in 0..f.players() {
        for (m, x) in common.iter_mut().zip(f.tensor(i)) {
            *m += x;
        }
    }
    for m in common.iter_mut() {
        *m /= n;
    }
    let q = operators::full_interaction(&space, &common);
    Game::from_tensors(space, vec![q; f.players()])
}

/// A linear constraint functional over the stacked game vector
/// (player-major, then flat profile index). A game satisfies the constraint
/// when the functional evaluates to zero.
#[derive(Debug, Clone)]
pub struct Constraint {
    /// (stacked position, coefficient) pairs.
    pub terms: Vec<(usize, f64)>,
}

/// Stacked position of payoff entry (player, flat index).
fn pos(space: &StrategySpace, player: usize, idx: usize) -> usize {
    player * space.num_profiles() + idx
}

/// Constraints for the zero-sum games: the player sum vanishes at every
/// profile.
pub fn zero_sum_constraints(space: &StrategySpace) -> Vec<Constraint> {
    (0..space.num_profiles())
        .map(|idx| Constraint {
            terms: (0..space.players()).map(|i| (pos(space, i, idx), 1.0)).collect(),
        })
        .collect()
}

/// Constraints for the normalized games: every own-axis marginal sum
/// vanishes.
pub fn normalized_constraints(space: &StrategySpace) -> Vec<Constraint> {
    let mut out = Vec::new();
    for i in 0..space.players() {
        let k = space.sizes()[i];
        let stride = space.strides()[i];
        let groups = space.num_profiles() / k;
        for g in 0..groups {
            let base = (g / stride) * (stride * k) + (g % stride);
            out.push(Constraint {
                terms: (0..k).map(|j| (pos(space, i, base + j * stride), 1.0)).collect(),
            });
        }
    }
    out
}

/// Constraints for the common interest games: every player's payoff equals
/// player 1's at every profile.
pub fn common_interest_constraints(space: &StrategySpace) -> Vec<Constraint> {
    let mut out = Vec::new();
    for i in 1..space.players() {
        for idx in 0..space.num_profiles() {
            out.push(Constraint {
                terms: vec![(pos(space, 0, idx), 1.0), (pos(space, i, idx), -1.0)],
            });
        }
    }
    out
}

/// Constraints for the non-strategic games: along her own axis, each
/// player's payoff equals its value at the first strategy.
pub fn non_strategic_constraints(space: &StrategySpace) -> Vec<Constraint> {
    let mut out = Vec::new();
    for i in 0..space.players() {
        let k = space.sizes()[i];
        let stride = space.strides()[i];
        let groups = space.num_profiles() / k;
        for g in 0..groups {
            let base = (g / stride) * (stride * k) + (g % stride);
            for j in 1..k {
                out.push(Constraint {
                    terms: vec![
                        (pos(space, i, base), 1.0),
                        (pos(space, i, base + j * stride), -1.0),
                    ],
                });
            }
        }
    }
    out
}

/// Constraints for the normalized zero-sum games.
pub fn normalized_zero_sum_constraints(space: &StrategySpace) -> Vec<Constraint> {
    let mut out = zero_sum_constraints(space);
    out.extend(normalized_constraints(space));
    out
}

/// Orthogonal projector onto the kernel of a set of linear constraint
/// functionals, realized through an orthonormal basis of the constraint row
/// space.
#[derive(Debug)]
pub struct GenericProjector {
    sizes: Vec<usize>,
    dim: usize,
    basis: Vec<Vec<f64>>,
}

impl GenericProjector {
    /// Assemble and orthonormalize the constraint rows. Errors when the game
    /// exceeds [`ENTRY_CAP`] total payoff entries.
    pub fn new(space: &StrategySpace, constraints: &[Constraint]) -> Result<Self> {
        Self::with_cap(space, constraints, ENTRY_CAP)
    }

    /// Like [`GenericProjector::new`] with an explicit entry cap.
    pub fn with_cap(space: &StrategySpace, constraints: &[Constraint], cap: usize) -> Result<Self> {
        let entries = space.players() * space.num_profiles();
        if entries > cap {
            return Err(Error::TooLarge { entries, cap });
        }
        let mut rows = Vec::with_capacity(constraints.len());
        for c in constraints {
            let mut row = vec![0.0; entries];
            for &(p, coeff) in &c.terms {
                row[p] += coeff;
            }
            rows.push(row);
        }
        Ok(GenericProjector {
            sizes: space.sizes().to_vec(),
            dim: entries,
            basis: linalg::orthonormalize(&rows),
        })
    }

    /// Rank of the constraint system.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Project a game onto the constraint kernel. Two elimination passes keep
    /// the residual constraint violation near machine precision.
    pub fn project(&self, f: &Game) -> Result<Game> {
        if f.space().sizes() != self.sizes.as_slice() {
            return Err(Error::ShapeMismatch(format!(
                "projector built for sizes {:?}, game has {:?}",
                self.sizes,
                f.space().sizes()
            )));
        }
        let total = f.space().num_profiles();
        let mut stacked = Vec::with_capacity(self.dim);
        for i in 0..f.players() {
            stacked.extend_from_slice(f.tensor(i));
        }
        for _ in 0..2 {
            for q in &self.basis {
                let d = linalg::dot(q, &stacked);
                for (s, qi) in stacked.iter_mut().zip(q) {
                    *s -= d * qi;
                }
            }
        }
        let payoffs = (0..f.players())
            .map(|i| stacked[i * total..(i + 1) * total].to_vec())
            .collect();
        Ok(Game::from_tensors(f.space().clone(), payoffs))
    }

    /// Worst absolute violation of the original constraints by a game,
    /// recomputed from the orthonormal basis.
    pub fn residual_violation(&self, f: &Game) -> f64 {
        let mut stacked = Vec::with_capacity(self.dim);
        for i in 0..f.players() {
            stacked.extend_from_slice(f.tensor(i));
        }
        self.basis
            .iter()
            .fold(0.0f64, |w, q| w.max(linalg::dot(q, &stacked).abs()))
    }
}

/// Project onto the kernel of `constraints` in one call.
pub fn generic_project(space: &StrategySpace, constraints: &[Constraint], f: &Game) -> Result<Game> {
    GenericProjector::new(space, constraints)?.project(f)
}

fn nz_projector_cache() -> &'static Mutex<HashMap<Vec<usize>, Arc<GenericProjector>>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<usize>, Arc<GenericProjector>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached projector onto the normalized zero-sum games for a given shape.
/// The projector depends only on the space sizes, so it is memoized.
pub fn normalized_zero_sum_projector(space: &StrategySpace) -> Result<Arc<GenericProjector>> {
    let key = space.sizes().to_vec();
    if let Some(p) = nz_projector_cache().lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let built = Arc::new(GenericProjector::new(
        space,
        &normalized_zero_sum_constraints(space),
    )?);
    nz_projector_cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| built.clone());
    Ok(built)
}

/// Projection onto the normalized zero-sum games (generic projector; the two
/// closed-form factor maps do not commute here).
pub fn project_normalized_zero_sum(f: &Game) -> Result<Game> {
    normalized_zero_sum_projector(f.space())?.project(f)
}

/// The subspace projectors behind one enum, for callers that select a
/// projection dynamically.
pub enum Projector {
    /// Own-axis average per player (onto the non-strategic games).
    NonStrategic,
    /// Complement of [`Projector::NonStrategic`].
    Normalized,
    /// Player average (onto the common interest games).
    CommonInterest,
    /// Complement of [`Projector::CommonInterest`].
    ZeroSum,
    /// Player average composed with the full-interaction extractor.
    NormalizedCommonInterest,
    /// Constraint-kernel projector.
    Generic(GenericProjector),
}

impl Projector {
    pub fn apply(&self, f: &Game) -> Result<Game> {
        match self {
            Projector::NonStrategic => Ok(project_non_strategic(f)),
            Projector::Normalized => Ok(project_normalized(f)),
            Projector::CommonInterest => Ok(project_common_interest(f)),
            Projector::ZeroSum => Ok(project_zero_sum(f)),
            Projector::NormalizedCommonInterest => Ok(project_normalized_common_interest(f)),
            Projector::Generic(p) => p.project(f),
        }
    }
}

/// An orthogonal decomposition of one game: named components, their norms,
/// and the reconstruction residual.
#[derive(Debug, Clone)]
pub struct DecompositionResult {
    pub scheme: String,
    pub components: Vec<(String, Game)>,
    pub residual: f64,
}

impl DecompositionResult {
    /// Look up a component by name.
    pub fn component(&self, name: &str) -> Option<&Game> {
        self.components
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
    }

    /// Norm of each component, in component order.
    pub fn component_norms(&self) -> Vec<(String, f64)> {
        self.components
            .iter()
            .map(|(n, g)| (n.clone(), g.norm()))
            .collect()
    }
}

/// Check pairwise orthogonality, reconstruction, and the Pythagoras identity
/// before returning a decomposition; any violation signals a projector bug.
fn seal(scheme: &str, f: &Game, components: Vec<(String, Game)>) -> Result<DecompositionResult> {
    let fnorm = f.norm();
    let norm2 = fnorm * fnorm;
    let ortho_tol = 1e-9 * norm2.max(1.0);
    for a in 0..components.len() {
        for b in (a + 1)..components.len() {
            let ip = components[a].1.inner_product(&components[b].1)?;
            if ip.abs() > ortho_tol {
                return Err(Error::InternalConsistency(format!(
                    "scheme {scheme}: components '{}' and '{}' not orthogonal: <.,.> = {ip}",
                    components[a].0, components[b].0
                )));
            }
        }
    }
    let mut sum = Game::zero(f.space().clone());
    for (_, g) in &components {
        sum = sum.add(g)?;
    }
    let residual = f.sub(&sum)?.norm();
    if residual > 1e-9 * fnorm.max(1.0) {
        return Err(Error::InternalConsistency(format!(
            "scheme {scheme}: reconstruction residual {residual}"
        )));
    }
    let parts2: f64 = components
        .iter()
        .map(|(_, g)| {
            let n = g.norm();
            n * n
        })
        .sum();
    if (norm2 - parts2).abs() > 1e-8 * norm2.max(1.0) {
        return Err(Error::InternalConsistency(format!(
            "scheme {scheme}: Pythagoras violated: |f|^2 = {norm2}, sum of parts = {parts2}"
        )));
    }
    Ok(DecompositionResult {
        scheme: scheme.to_string(),
        components,
        residual,
    })
}

/// Split into common interest + zero-sum parts.
pub fn decompose_common_zero_sum(f: &Game) -> Result<DecompositionResult> {
    let c = project_common_interest(f);
    let z = f.sub(&c)?;
    seal(
        scheme::ELEMENTARY_CZ,
        f,
        vec![
            (component::COMMON_INTEREST.into(), c),
            (component::ZERO_SUM.into(), z),
        ],
    )
}

/// Split into normalized + non-strategic parts.
pub fn decompose_normalized_nonstrategic(f: &Game) -> Result<DecompositionResult> {
    let e = project_non_strategic(f);
    let n = f.sub(&e)?;
    seal(
        scheme::ELEMENTARY_NE,
        f,
        vec![
            (component::NORMALIZED.into(), n),
            (component::NON_STRATEGIC.into(), e),
        ],
    )
}

/// Both elementary splits.
pub fn decompose_elementary(f: &Game) -> Result<(DecompositionResult, DecompositionResult)> {
    Ok((
        decompose_common_zero_sum(f)?,
        decompose_normalized_nonstrategic(f)?,
    ))
}

/// Three-way split: normalized common interest + normalized zero-sum +
/// zero-sum equivalent potential remainder.
pub fn decompose_main(f: &Game) -> Result<DecompositionResult> {
    let f_nc = project_normalized_common_interest(f);
    let f_nz = project_normalized_zero_sum(f)?;
    let f_b = f.sub(&f_nc)?.sub(&f_nz)?;
    seal(
        scheme::MAIN,
        f,
        vec![
            (component::NORMALIZED_COMMON_INTEREST.into(), f_nc),
            (component::NORMALIZED_ZERO_SUM.into(), f_nz),
            (component::ZERO_SUM_POTENTIAL.into(), f_b),
        ],
    )
}

/// Four-way refinement of [`decompose_main`]: the zero-sum potential part is
/// further split into its normalized part and the non-strategic part.
pub fn decompose_four(f: &Game) -> Result<DecompositionResult> {
    let main = decompose_main(f)?;
    let f_e = project_non_strategic(f);
    let f_b = main.component(component::ZERO_SUM_POTENTIAL).unwrap();
    let f_nb = f_b.sub(&f_e)?;
    let mut components = Vec::with_capacity(4);
    for (name, g) in main.components {
        if name == component::ZERO_SUM_POTENTIAL {
            components.push((component::NORMALIZED_ZERO_SUM_POTENTIAL.into(), f_nb.clone()));
            components.push((component::NON_STRATEGIC.into(), f_e.clone()));
        } else {
            components.push((name, g));
        }
    }
    seal(scheme::FOUR, f, components)
}

/// Potential / non-strategic / harmonic split: the potential component is
/// the normalized part of the potential games, the harmonic component is the
/// normalized zero-sum part.
pub fn decompose_candogan(f: &Game) -> Result<DecompositionResult> {
    let four = decompose_four(f)?;
    let potential = four
        .component(component::NORMALIZED_COMMON_INTEREST)
        .unwrap()
        .add(four.component(component::NORMALIZED_ZERO_SUM_POTENTIAL).unwrap())?;
    let non_strategic = four.component(component::NON_STRATEGIC).unwrap().clone();
    let harmonic = four.component(component::NORMALIZED_ZERO_SUM).unwrap().clone();
    seal(
        scheme::CANDOGAN,
        f,
        vec![
            (component::POTENTIAL.into(), potential),
            (component::NON_STRATEGIC.into(), non_strategic),
            (component::HARMONIC.into(), harmonic),
        ],
    )
}

/// Run a decomposition scheme by name.
pub fn decompose(f: &Game, scheme_name: &str) -> Result<Vec<DecompositionResult>> {
    match scheme_name {
        "elementary" => {
            let (cz, ne) = decompose_elementary(f)?;
            Ok(vec![cz, ne])
        }
        "main" => Ok(vec![decompose_main(f)?]),
        "four" => Ok(vec![decompose_four(f)?]),
        "candogan" => Ok(vec![decompose_candogan(f)?]),
        other => Err(Error::Precondition(format!(
            "unknown scheme '{other}' (expected elementary|main|four|candogan)"
        ))),
    }
}
