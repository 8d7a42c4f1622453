//! The SRS agent kernel: pheromone-weighted stochastic movement,
//! altitude-coupled deposition, energy decay with stochastic survival, and
//! density/fitness-gated reproduction, composed into a single colony step.
//!
//! Agents carry no local memory beyond their heading and energy; all
//! coordination flows through the habitat's pheromone field and the colony's
//! running record of the best and worst altitudes seen.

use rand::Rng;

use crate::habitat::{AntId, CellCoord, HabitatGrid, MOORE_OFFSETS};
use crate::landscape::Landscape;
use crate::Objective;

/// Compass octant of a move; 0 = N through 7 = NW, clockwise. Matches the
/// ordering of [`MOORE_OFFSETS`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Direction(u8);

impl Direction {
    pub const N: Direction = Direction(0);
    pub const NE: Direction = Direction(1);
    pub const E: Direction = Direction(2);
    pub const SE: Direction = Direction(3);
    pub const S: Direction = Direction(4);
    pub const SW: Direction = Direction(5);
    pub const W: Direction = Direction(6);
    pub const NW: Direction = Direction(7);

    pub fn new(octant: u8) -> Self {
        assert!(octant < 8, "direction octant must be 0..8, got {octant}");
        Direction(octant)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn offset(self) -> (i64, i64) {
        MOORE_OFFSETS[self.index()]
    }

    pub fn all() -> [Direction; 8] {
        [0, 1, 2, 3, 4, 5, 6, 7].map(Direction)
    }
}

/// Magnitude of the change in orientation between two octants, in
/// 45-degree steps: 0 = same direction through 4 = U-turn.
pub fn direction_delta(heading: Direction, candidate: Direction) -> u8 {
    let d = (heading.0 as i8 - candidate.0 as i8).unsigned_abs() % 8;
    d.min(8 - d)
}

/// Weight on each change of orientation, indexed by
/// [`direction_delta`]: same direction down to U-turn.
pub const DIRECTION_WEIGHTS: [f64; 5] = [1.0, 0.5, 0.25, 1.0 / 12.0, 0.05];

pub fn direction_weight(delta: u8) -> f64 {
    DIRECTION_WEIGHTS[delta as usize]
}

/// How an agent's per-step death lottery works.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurvivalMode {
    /// Survive the step with probability equal to current energy.
    Stochastic,
    /// Die only when energy reaches zero.
    Deterministic,
}

impl std::fmt::Display for SurvivalMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SurvivalMode::Stochastic => write!(f, "stochastic"),
            SurvivalMode::Deterministic => write!(f, "deterministic"),
        }
    }
}

impl std::str::FromStr for SurvivalMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "stochastic" => Ok(SurvivalMode::Stochastic),
            "deterministic" => Ok(SurvivalMode::Deterministic),
            other => Err(format!("unknown survival mode `{other}`")),
        }
    }
}

/// All tunable constants of the swarm kernel.
#[derive(Clone, Copy, Debug)]
pub struct SwarmParams {
    /// Osmotropotactic sensitivity: how sharply agents follow the pheromone
    /// gradient.
    pub beta: f64,
    /// Inverse sensory capacity: pheromone sensing saturates at high
    /// concentrations.
    pub gamma: f64,
    /// Base pheromone deposition per agent per step.
    pub eta: f64,
    /// Fraction of the field evaporating each step.
    pub evaporation: f64,
    /// Gain on the altitude-coupled part of the deposition rate.
    pub deposition_gain: f64,
    /// Per-step energy decrement.
    pub delta_e: f64,
    pub objective: Objective,
    /// Fraction of cells seeded with an agent at initialization.
    pub initial_density: f64,
    pub survival_mode: SurvivalMode,
    /// Forget the colony's altitude extremes whenever the environment enters
    /// a new epoch.
    pub reset_extremes_on_change: bool,
    /// When true, agents born this step already take this step's energy
    /// decrement; by default they start aging next step.
    pub children_age_immediately: bool,
}

impl Default for SwarmParams {
    fn default() -> Self {
        SwarmParams {
            beta: 3.5,
            gamma: 0.2,
            eta: 0.07,
            evaporation: 0.015,
            deposition_gain: 1.9,
            delta_e: 0.1,
            objective: Objective::Minimize,
            initial_density: 1.0 / 3.0,
            // Per-capita mortality is ~0.1/step under deterministic
            // exhaustion but ~0.37/step under the stochastic lottery, which
            // reproduction cannot outpace.
            survival_mode: SurvivalMode::Deterministic,
            reset_extremes_on_change: true,
            children_age_immediately: false,
        }
    }
}

impl SwarmParams {
    pub fn validate(&self) -> Result<(), String> {
        for (name, v) in [
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("eta", self.eta),
            ("deposition_gain", self.deposition_gain),
            ("delta_e", self.delta_e),
        ] {
            if v.is_nan() || v < 0.0 {
                return Err(format!("{name} must be non-negative, got {v}"));
            }
        }
        if !(0.0..=1.0).contains(&self.evaporation) {
            return Err(format!(
                "evaporation must be in [0,1], got {}",
                self.evaporation
            ));
        }
        if !(self.initial_density > 0.0 && self.initial_density < 1.0) {
            return Err(format!(
                "initial_density must be in (0,1), got {}",
                self.initial_density
            ));
        }
        Ok(())
    }
}

/// Best and worst altitudes any colony member has seen in the current
/// environmental epoch.
#[derive(Clone, Copy, Debug, Default)]
pub struct ColonyExtremes {
    range: Option<(f64, f64)>, // (min, max)
}

impl ColonyExtremes {
    pub fn observe(&mut self, z: f64) {
        self.range = Some(match self.range {
            None => (z, z),
            Some((lo, hi)) => (lo.min(z), hi.max(z)),
        });
    }

    pub fn clear(&mut self) {
        self.range = None;
    }

    pub fn is_populated(&self) -> bool {
        self.range.is_some()
    }

    pub fn z_min(&self) -> Option<f64> {
        self.range.map(|(lo, _)| lo)
    }

    pub fn z_max(&self) -> Option<f64> {
        self.range.map(|(_, hi)| hi)
    }

    /// The altitude spread `|z_max - z_min|`; zero until two distinct
    /// altitudes have been seen.
    pub fn spread(&self) -> f64 {
        self.range.map_or(0.0, |(lo, hi)| hi - lo)
    }

    /// Distance of `z` from the objective's worst observed extreme, so that
    /// the best-sited agents score the full spread.
    pub fn fitness_delta(&self, z: f64, objective: Objective) -> f64 {
        match (self.range, objective) {
            (None, _) => 0.0,
            (Some((_, hi)), Objective::Minimize) => (z - hi).abs(),
            (Some((lo, _)), Objective::Maximize) => (z - lo).abs(),
        }
    }
}

/// Relative attractiveness of a cell with pheromone density `sigma`:
/// `W = (1 + sigma / (1 + gamma * sigma))^beta`. Equals 1 at zero pheromone
/// and saturates at `(1 + 1/gamma)^beta`.
pub fn pheromone_weight(sigma: f64, params: &SwarmParams) -> f64 {
    debug_assert!(sigma >= 0.0);
    (1.0 + sigma / (1.0 + params.gamma * sigma)).powf(params.beta)
}

/// Pheromone deposition rate at a cell of altitude `z_here`:
/// `T = eta + gain * delta / spread`, where `delta` rewards proximity to the
/// objective's best observed extreme. Reduces to the constant `eta` on a flat
/// (or so-far-unexplored) landscape.
pub fn deposit_rate(z_here: f64, extremes: &ColonyExtremes, params: &SwarmParams) -> f64 {
    let spread = extremes.spread();
    if spread == 0.0 {
        return params.eta;
    }
    params.eta + params.deposition_gain * extremes.fitness_delta(z_here, params.objective) / spread
}

/// Density gate on reproduction: lookup over the number of occupied Moore
/// neighbors. Zero for isolated or fully surrounded agents, maximal at
/// half-occupied, symmetric about n = 4.
pub fn reproduction_base_prob(n: u8) -> f64 {
    const TABLE: [f64; 9] = [0.0, 0.25, 0.5, 0.75, 1.0, 0.75, 0.5, 0.25, 0.0];
    TABLE[n as usize]
}

/// Full reproduction probability: the density gate scaled by relative
/// fitness, `P* = P**(n) * delta / spread`. Zero while the colony has seen no
/// altitude spread.
pub fn reproduction_prob(
    n: u8,
    z_here: f64,
    extremes: &ColonyExtremes,
    params: &SwarmParams,
) -> f64 {
    let spread = extremes.spread();
    if spread == 0.0 {
        return 0.0;
    }
    reproduction_base_prob(n) * extremes.fitness_delta(z_here, params.objective) / spread
}

/// One ant-like agent.
#[derive(Clone, Copy, Debug)]
pub struct Ant {
    pub id: AntId,
    pub pos: CellCoord,
    /// Direction of the most recent move; unchanged when the agent stayed put.
    pub heading: Direction,
    /// In [0, 1]; agents at or below zero are removed, never kept.
    pub energy: f64,
    /// Completed aging steps; energy is `1 - delta_e * age`.
    pub age: u32,
}

/// Normalized move distribution over the unoccupied Moore neighbors of `ant`.
/// Empty when all 8 neighbors are occupied (the agent then stays put with its
/// heading unchanged).
pub fn transition_probs(
    ant: &Ant,
    grid: &HabitatGrid,
    params: &SwarmParams,
) -> Vec<(CellCoord, f64)> {
    let (count, total, moves) = candidate_moves(ant.pos, ant.heading, grid, params);
    moves[..count]
        .iter()
        .map(|&(_, cell, w)| (cell, w / total))
        .collect()
}

/// Unnormalized move weights `W(sigma_i) * w(delta_i)` over free neighbors.
fn candidate_moves(
    pos: CellCoord,
    heading: Direction,
    grid: &HabitatGrid,
    params: &SwarmParams,
) -> (usize, f64, [(Direction, CellCoord, f64); 8]) {
    let mut out = [(Direction::N, pos, 0.0); 8];
    let mut count = 0;
    let mut total = 0.0;
    let neighbors = grid.moore_neighbors(pos);
    for (i, &cell) in neighbors.iter().enumerate() {
        if grid.is_occupied(cell) {
            continue;
        }
        let dir = Direction(i as u8);
        let w = pheromone_weight(grid.pheromone(cell), params)
            * direction_weight(direction_delta(heading, dir));
        out[count] = (dir, cell, w);
        count += 1;
        total += w;
    }
    (count, total, out)
}

/// Reproduction attempt from a parent at `parent_pos` whose cell has altitude
/// `z_here`. Consumes one uniform draw whenever at least one neighbor is
/// occupied; on success the child (energy 1.0, uniform random heading) is
/// placed on a uniformly chosen free Moore cell and the grid is updated.
pub fn try_reproduce<R: Rng>(
    parent_pos: CellCoord,
    grid: &mut HabitatGrid,
    z_here: f64,
    extremes: &ColonyExtremes,
    params: &SwarmParams,
    child_id: AntId,
    rng: &mut R,
) -> Option<Ant> {
    let n = grid.occupied_neighbor_count(parent_pos);
    if n == 0 {
        return None;
    }
    let p_star = reproduction_prob(n, z_here, extremes, params);
    let draw: f64 = rng.random();
    if draw >= p_star {
        return None;
    }
    let neighbors = grid.moore_neighbors(parent_pos);
    let free: Vec<CellCoord> = neighbors
        .iter()
        .copied()
        .filter(|&c| !grid.is_occupied(c))
        .collect();
    if free.is_empty() {
        return None;
    }
    let cell = free[rng.random_range(0..free.len())];
    let heading = Direction(rng.random_range(0..8u8));
    grid.occupy(cell, child_id);
    Some(Ant {
        id: child_id,
        pos: cell,
        heading,
        energy: 1.0,
        age: 0,
    })
}

/// Ages the agent one step and rolls its survival. Energy is recomputed as
/// `1 - delta_e * age` so a 0.1 decrement reaches exactly zero at age 10.
/// Returns whether the agent lives on; energy at or below zero always kills.
pub fn apply_energy_and_survival<R: Rng>(ant: &mut Ant, params: &SwarmParams, rng: &mut R) -> bool {
    ant.age += 1;
    ant.energy = (1.0 - params.delta_e * ant.age as f64).max(0.0);
    if ant.energy <= 0.0 {
        return false;
    }
    match params.survival_mode {
        SurvivalMode::Stochastic => rng.random::<f64>() < ant.energy,
        SurvivalMode::Deterministic => true,
    }
}

/// What one colony step did.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub births: u32,
    pub deaths: u32,
    /// Agents alive at the end of the step.
    pub population: usize,
    /// Altitude at each surviving agent's cell, in colony order.
    pub altitudes: Vec<f64>,
}

/// The agent population plus its shared altitude extremes.
///
/// RNG draw order per step, for reproducibility: for each pre-existing agent
/// in ascending id order - one move draw (only if some neighbor is free),
/// one reproduction draw (only if some neighbor is occupied), then on
/// reproduction success one placement draw and one child-heading draw; after
/// evaporation, one survival draw per aging agent (stochastic mode only,
/// skipped once energy hits zero).
#[derive(Clone, Debug)]
pub struct Colony {
    ants: Vec<Ant>,
    next_id: u64,
    extremes: ColonyExtremes,
    last_epoch: Option<u64>,
}

impl Colony {
    pub fn new() -> Self {
        Colony {
            ants: Vec::new(),
            next_id: 0,
            extremes: ColonyExtremes::default(),
            last_epoch: None,
        }
    }

    /// Seeds `floor(density * cells)` agents on distinct uniformly sampled
    /// cells, each with energy 1.0 and a uniform random heading.
    pub fn init<R: Rng>(grid: &mut HabitatGrid, density: f64, rng: &mut R) -> Self {
        assert!(
            density > 0.0 && density < 1.0,
            "initial density must be in (0,1), got {density}"
        );
        let total = grid.cell_count();
        let n = (density * total as f64).floor() as usize;
        let mut colony = Colony::new();
        let cells = rand::seq::index::sample(rng, total, n);
        for cell_idx in cells.iter() {
            let pos = CellCoord {
                x: cell_idx % grid.width(),
                y: cell_idx / grid.width(),
            };
            let heading = Direction(rng.random_range(0..8u8));
            colony.place_ant(grid, pos, heading);
        }
        colony
    }

    /// Places a fresh agent (energy 1.0) at `pos`; mainly for constructing
    /// exact scenarios in tests.
    pub fn place_ant(
        &mut self,
        grid: &mut HabitatGrid,
        pos: CellCoord,
        heading: Direction,
    ) -> AntId {
        let id = AntId(self.next_id);
        self.next_id += 1;
        grid.occupy(pos, id);
        self.ants.push(Ant {
            id,
            pos,
            heading,
            energy: 1.0,
            age: 0,
        });
        id
    }

    pub fn len(&self) -> usize {
        self.ants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ants.is_empty()
    }

    pub fn ants(&self) -> &[Ant] {
        &self.ants
    }

    pub fn extremes(&self) -> &ColonyExtremes {
        &self.extremes
    }

    /// One full colony step at time `t`:
    /// 1. each pre-existing agent, in ascending id order, samples a move over
    ///    its free Moore neighbors (staying put if fully blocked), updates its
    ///    heading, reports its new cell's altitude to the colony extremes,
    ///    deposits pheromone there, and then attempts reproduction;
    /// 2. the whole field evaporates;
    /// 3. every agent ages and rolls survival (agents born this step are
    ///    skipped unless `children_age_immediately`).
    ///
    /// Colony extremes are cleared first whenever the landscape enters a new
    /// epoch and `reset_extremes_on_change` is set.
    pub fn step<R: Rng>(
        &mut self,
        grid: &mut HabitatGrid,
        landscape: &Landscape,
        t: u64,
        params: &SwarmParams,
        rng: &mut R,
    ) -> StepOutcome {
        debug_assert!(
            grid.width() == landscape.width() && grid.height() == landscape.height(),
            "habitat and landscape dimensions must match"
        );
        let epoch = landscape.epoch(t);
        if params.reset_extremes_on_change && self.last_epoch.is_some_and(|e| e != epoch) {
            self.extremes.clear();
        }
        self.last_epoch = Some(epoch);
        let field = landscape.epoch_field(t);

        let initial_count = self.ants.len();
        let mut births = 0u32;
        for i in 0..initial_count {
            let (pos, heading, id) = {
                let a = &self.ants[i];
                (a.pos, a.heading, a.id)
            };
            let (count, total, moves) = candidate_moves(pos, heading, grid, params);
            if count > 0 {
                let mut pick = rng.random::<f64>() * total;
                let mut chosen = count - 1;
                for (j, &(_, _, w)) in moves[..count].iter().enumerate() {
                    if pick < w {
                        chosen = j;
                        break;
                    }
                    pick -= w;
                }
                let (dir, dest, _) = moves[chosen];
                grid.vacate(pos);
                grid.occupy(dest, id);
                let ant = &mut self.ants[i];
                ant.pos = dest;
                ant.heading = dir;
            }

            let here = self.ants[i].pos;
            let z = field.value(here);
            self.extremes.observe(z);
            grid.deposit(here, deposit_rate(z, &self.extremes, params));

            let child_id = AntId(self.next_id);
            if let Some(child) = try_reproduce(here, grid, z, &self.extremes, params, child_id, rng)
            {
                self.next_id += 1;
                self.ants.push(child);
                births += 1;
            }
        }

        grid.evaporate(params.evaporation);

        let mut deaths = 0u32;
        let mut idx = 0;
        self.ants.retain_mut(|ant| {
            let newborn = idx >= initial_count;
            idx += 1;
            if newborn && !params.children_age_immediately {
                return true;
            }
            if apply_energy_and_survival(ant, params, rng) {
                true
            } else {
                grid.vacate(ant.pos);
                deaths += 1;
                false
            }
        });

        let altitudes = self.ants.iter().map(|a| field.value(a.pos)).collect();
        StepOutcome {
            births,
            deaths,
            population: self.ants.len(),
            altitudes,
        }
    }
}

impl Default for Colony {
    fn default() -> Self {
        Self::new()
    }
}
