//! Self-regulated swarm (SRS) simulation library.
//!
//! An ant-like agent swarm forages on a toroidal lattice whose cells carry a
//! time-varying objective value ("altitude"). Agents communicate only through
//! a shared pheromone field: movement follows a pheromone-weighted stochastic
//! transition rule, deposition is coupled to how good an agent's cell is
//! relative to the best and worst altitudes the colony has seen, and a
//! density- and fitness-gated reproduction rule lets the population grow and
//! shrink on its own. The net effect is a swarm that tracks moving extrema
//! and scales its own size up during environmental upheaval and back down
//! once the target is reacquired.
//!
//! Modules:
//! - [`habitat`]: the toroidal grid, pheromone field and agent occupancy.
//! - [`swarm`]: the agent kernel (movement, deposition, reproduction,
//!   energy/survival) composed into a colony step.
//! - [`landscape`]: dynamic objective functions (translated Ackley,
//!   severity-shifted Schaffer F7, ODE-backed optimal-control fitness) with
//!   exhaustive ground-truth optima.
//! - [`ode`]: fixed-step RK4 integration backing the optimal-control fitness.
//! - [`metrics`]: per-step records, success rate, reaction times, CSV output.
//! - [`experiment`]: seeded, reproducible experiment runner with parameter
//!   sweeps, manifests and field snapshots.
//!
//! ```
//! use rand::SeedableRng;
//! use srs_core::{habitat::HabitatGrid, landscape::Landscape, swarm::{Colony, SwarmParams}};
//!
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
//! let mut grid = HabitatGrid::new(50, 50);
//! let landscape = Landscape::ackley_linear(50, 50, 1.0);
//! let params = SwarmParams::default();
//! let mut colony = Colony::init(&mut grid, params.initial_density, &mut rng);
//! for t in 0..10 {
//!     colony.step(&mut grid, &landscape, t, &params, &mut rng);
//! }
//! assert!(colony.len() > 0);
//! ```

pub mod experiment;
pub mod habitat;
pub mod landscape;
pub mod metrics;
pub mod ode;
pub mod swarm;

/// Orientation of the search: whether low or high altitudes are rewarded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Minimize,
    Maximize,
}

impl Objective {
    /// True if `candidate` is at least as good as `incumbent` under this objective.
    pub fn improves(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Objective::Minimize => candidate <= incumbent,
            Objective::Maximize => candidate >= incumbent,
        }
    }
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Objective::Minimize => write!(f, "minimize"),
            Objective::Maximize => write!(f, "maximize"),
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimize" | "min" => Ok(Objective::Minimize),
            "maximize" | "max" => Ok(Objective::Maximize),
            other => Err(format!("unknown objective `{other}`")),
        }
    }
}
