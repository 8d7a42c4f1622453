//! Time-varying objective functions mapped onto the lattice, with exhaustive
//! ground-truth optima.
//!
//! A landscape pairs a base field (translated Ackley, severity-shifted
//! Schaffer F7, or the ODE-backed optimal-control fitness) with a dynamics
//! rule describing how it changes over time. Values are pure in `(cell, t)`;
//! internally one full-grid cache per environmental epoch keeps lookups and
//! the exhaustive optimum scan cheap.

use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::habitat::CellCoord;
use crate::ode;
use crate::Objective;

/// Maps lattice cells to sample points: cell `(i, j)` evaluates at the center
/// of its subrectangle. The mapping is bijective between cells and sample
/// points; `y` grows northward.
#[derive(Clone, Copy, Debug)]
pub struct DomainMap {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
    pub width: usize,
    pub height: usize,
}

impl DomainMap {
    pub fn square(lo: f64, hi: f64, width: usize, height: usize) -> Self {
        assert!(hi > lo && width > 0 && height > 0);
        DomainMap {
            x_lo: lo,
            x_hi: hi,
            y_lo: lo,
            y_hi: hi,
            width,
            height,
        }
    }

    pub fn cell_center(&self, c: CellCoord) -> (f64, f64) {
        let sx = (self.x_hi - self.x_lo) / self.width as f64;
        let sy = (self.y_hi - self.y_lo) / self.height as f64;
        (
            self.x_lo + (c.x as f64 + 0.5) * sx,
            self.y_lo + (c.y as f64 + 0.5) * sy,
        )
    }

    /// Cell whose subrectangle contains `(x, y)`; points on a boundary go to
    /// the higher-index cell, and coordinates outside the domain clamp to the
    /// border cells.
    pub fn cell_containing(&self, x: f64, y: f64) -> CellCoord {
        let sx = (self.x_hi - self.x_lo) / self.width as f64;
        let sy = (self.y_hi - self.y_lo) / self.height as f64;
        let ix = (((x - self.x_lo) / sx).floor() as i64).clamp(0, self.width as i64 - 1);
        let iy = (((y - self.y_lo) / sy).floor() as i64).clamp(0, self.height as i64 - 1);
        CellCoord {
            x: ix as usize,
            y: iy as usize,
        }
    }
}

/// N-dimensional Ackley function translated to have its minimum at `center`;
/// value 0 at `x == center`.
pub fn ackley(x: &[f64], center: &[f64]) -> f64 {
    assert_eq!(x.len(), center.len(), "point/center dimension mismatch");
    let n = x.len() as f64;
    let mut sq = 0.0;
    let mut cs = 0.0;
    for (xi, ai) in x.iter().zip(center) {
        let d = xi - ai;
        sq += d * d;
        cs += (2.0 * std::f64::consts::PI * d).cos();
    }
    -20.0 * (-0.2 * (sq / n).sqrt()).exp() - (cs / n).exp() + 20.0 + std::f64::consts::E
}

/// Modified Schaffer F7 under a drift shift: evaluates at `X_i = x_i + delta`,
/// `f(X) = 2.5 - (X1^2 + X2^2)^0.25 [sin^2(50 (X1^2 + X2^2)^0.1) + 1]`.
/// Maximal value 2.5 at `X = 0`.
pub fn schaffer_f7(x: [f64; 2], delta: f64) -> f64 {
    let x1 = x[0] + delta;
    let x2 = x[1] + delta;
    let q = x1 * x1 + x2 * x2;
    2.5 - q.powf(0.25) * ((50.0 * q.powf(0.1)).sin().powi(2) + 1.0)
}

/// Accumulated drift after `epoch` environmental changes of severity `s`:
/// `delta(0) = 0, delta(T) = delta(T-1) + s`, i.e. `T * s`.
pub fn severity_shift(epoch: u64, severity: f64) -> f64 {
    epoch as f64 * severity
}

/// Target cell for a linear NW-to-SE path: displaced `floor(speed * t)` cells
/// along the diagonal (one step in `+x` and one in `-y` per diagonal cell),
/// wrapping toroidally. Fractional speeds accumulate before flooring.
pub fn linear_path_target(
    t: u64,
    speed: f64,
    start: CellCoord,
    width: usize,
    height: usize,
) -> CellCoord {
    assert!(speed >= 0.0, "path speed must be non-negative");
    let d = (speed * t as f64).floor() as i64;
    CellCoord {
        x: (start.x as i64 + d).rem_euclid(width as i64) as usize,
        y: (start.y as i64 - d).rem_euclid(height as i64) as usize,
    }
}

/// Target cell for an abrupt jump cycle: `points[floor(t / uf) mod len]`.
pub fn jump_cycle_target(t: u64, update_freq: u32, points: &[CellCoord]) -> CellCoord {
    assert!(update_freq >= 1 && !points.is_empty());
    points[(t / update_freq as u64) as usize % points.len()]
}

/// Default jump-cycle anchor points in domain coordinates, cycling B -> C -> A.
pub const DEFAULT_JUMP_POINTS: [(f64, f64); 3] = [(0.0, 0.0), (1.0, -1.5), (-1.5, 1.0)];

/// How the landscape changes over time.
#[derive(Clone, Debug)]
pub enum Dynamics {
    Static,
    /// Base-function center travels the NW-to-SE diagonal at `speed`
    /// cells/step.
    LinearPath {
        speed: f64,
    },
    /// Center jumps between `points` (domain coordinates) every
    /// `update_freq` steps.
    JumpCycle {
        points: Vec<(f64, f64)>,
        update_freq: u32,
    },
    /// Coordinate shift grows by `severity` every `update_freq` steps.
    SeverityDrift {
        severity: f64,
        update_freq: u32,
    },
    /// Center orbits the start cell. Reported by the source experiments as
    /// behaving like the linear path; kept out of the acceptance presets.
    CircularOrbit {
        radius_cells: f64,
        period: u32,
    },
}

/// The scalar field sampled on the lattice.
#[derive(Clone, Debug)]
pub enum BaseField {
    Ackley,
    SchafferF7,
    /// `J(u1, u2) = z(1)^2` from the optimal-control ODE, integrated with the
    /// given fixed step count.
    ControlFitness {
        integration_steps: usize,
    },
    /// Every cell holds `value`; the degenerate case where only the pheromone
    /// field steers the swarm.
    Flat {
        value: f64,
    },
}

/// One environmental epoch's full-grid values plus its exhaustive optimum.
#[derive(Clone, Debug)]
pub struct EpochField {
    epoch: u64,
    width: usize,
    values: Vec<f64>,
    best_cell: CellCoord,
    best_value: f64,
}

impl EpochField {
    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    pub fn value(&self, c: CellCoord) -> f64 {
        self.values[c.y * self.width + c.x]
    }

    /// Extremal cell and value under the landscape's objective, found by
    /// exhaustive scan; ties resolve to the first cell in row-major order.
    pub fn best(&self) -> (CellCoord, f64) {
        (self.best_cell, self.best_value)
    }
}

/// Per-step ground-truth optimum trajectory.
#[derive(Clone, Debug)]
pub struct OptimumTrace {
    pub cells: Vec<CellCoord>,
    pub values: Vec<f64>,
}

/// Time-indexed scalar field `z(cell, t)` with a ground-truth optimum
/// trajectory. Immutable given `(configuration, t)`; safe for concurrent
/// reads.
#[derive(Debug)]
pub struct Landscape {
    base: BaseField,
    dynamics: Dynamics,
    domain: DomainMap,
    objective: Objective,
    start: CellCoord,
    cache: Mutex<Option<Arc<EpochField>>>,
}

impl Landscape {
    pub fn new(
        base: BaseField,
        dynamics: Dynamics,
        domain: DomainMap,
        objective: Objective,
        start: CellCoord,
    ) -> Self {
        match (&base, &dynamics) {
            (BaseField::Ackley, _) => {}
            (BaseField::SchafferF7, Dynamics::Static | Dynamics::SeverityDrift { .. }) => {}
            (
                BaseField::ControlFitness { .. },
                Dynamics::Static | Dynamics::SeverityDrift { .. },
            ) => {}
            (BaseField::Flat { .. }, Dynamics::Static) => {}
            _ => panic!("unsupported base/dynamics combination"),
        }
        if let Dynamics::JumpCycle {
            points,
            update_freq,
        } = &dynamics
        {
            assert!(*update_freq >= 1 && !points.is_empty());
        }
        Landscape {
            base,
            dynamics,
            domain,
            objective,
            start,
            cache: Mutex::new(None),
        }
    }

    /// Minimization of the Ackley field whose center travels the NW-to-SE
    /// diagonal at `speed` cells/step from the grid-center cell.
    pub fn ackley_linear(width: usize, height: usize, speed: f64) -> Self {
        let domain = DomainMap::square(-2.0, 2.0, width, height);
        let start = CellCoord {
            x: width / 2,
            y: height / 2,
        };
        Self::new(
            BaseField::Ackley,
            Dynamics::LinearPath { speed },
            domain,
            Objective::Minimize,
            start,
        )
    }

    /// Minimization of the Ackley field whose center jumps B -> C -> A every
    /// `update_freq` steps.
    pub fn ackley_jump(width: usize, height: usize, update_freq: u32) -> Self {
        let domain = DomainMap::square(-2.0, 2.0, width, height);
        let start = CellCoord {
            x: width / 2,
            y: height / 2,
        };
        Self::new(
            BaseField::Ackley,
            Dynamics::JumpCycle {
                points: DEFAULT_JUMP_POINTS.to_vec(),
                update_freq,
            },
            domain,
            Objective::Minimize,
            start,
        )
    }

    /// Maximization of the drifting Schaffer F7 field.
    pub fn schaffer(width: usize, height: usize, severity: f64, update_freq: u32) -> Self {
        let domain = DomainMap::square(-1.0, 1.0, width, height);
        let start = CellCoord {
            x: width / 2,
            y: height / 2,
        };
        Self::new(
            BaseField::SchafferF7,
            Dynamics::SeverityDrift {
                severity,
                update_freq,
            },
            domain,
            Objective::Maximize,
            start,
        )
    }

    /// A constant field: no environmental signal at all.
    pub fn flat(width: usize, height: usize, value: f64) -> Self {
        Self::new(
            BaseField::Flat { value },
            Dynamics::Static,
            DomainMap::square(-1.0, 1.0, width, height),
            Objective::Minimize,
            CellCoord {
                x: width / 2,
                y: height / 2,
            },
        )
    }

    /// Maximization of the drifting optimal-control fitness over the control
    /// domain `[-5, 5]^2`.
    pub fn control(
        width: usize,
        height: usize,
        severity: f64,
        update_freq: u32,
        integration_steps: usize,
    ) -> Self {
        let domain = DomainMap::square(-5.0, 5.0, width, height);
        let start = CellCoord {
            x: width / 2,
            y: height / 2,
        };
        Self::new(
            BaseField::ControlFitness { integration_steps },
            Dynamics::SeverityDrift {
                severity,
                update_freq,
            },
            domain,
            Objective::Maximize,
            start,
        )
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }

    pub fn domain(&self) -> &DomainMap {
        &self.domain
    }

    pub fn width(&self) -> usize {
        self.domain.width
    }

    pub fn height(&self) -> usize {
        self.domain.height
    }

    /// Environmental epoch index at step `t`. The field is constant within an
    /// epoch and changes exactly when the epoch increments.
    pub fn epoch(&self, t: u64) -> u64 {
        match &self.dynamics {
            Dynamics::Static => 0,
            Dynamics::LinearPath { speed } => (speed * t as f64).floor() as u64,
            Dynamics::JumpCycle { update_freq, .. } => t / *update_freq as u64,
            Dynamics::SeverityDrift { update_freq, .. } => t / *update_freq as u64,
            Dynamics::CircularOrbit { period, .. } => t % *period as u64,
        }
    }

    /// Steps in `[1, t_max)` at which the environment changes.
    pub fn change_steps(&self, t_max: u64) -> Vec<u64> {
        (1..t_max)
            .filter(|&t| self.epoch(t) != self.epoch(t - 1))
            .collect()
    }

    /// Cell currently hosting the moving Ackley center, when the dynamics has
    /// one.
    pub fn target_cell(&self, t: u64) -> Option<CellCoord> {
        match (&self.base, &self.dynamics) {
            (BaseField::Ackley, _) => Some(self.ackley_target(self.epoch(t))),
            _ => None,
        }
    }

    fn ackley_target(&self, epoch: u64) -> CellCoord {
        let (w, h) = (self.domain.width, self.domain.height);
        match &self.dynamics {
            Dynamics::Static => self.start,
            // epoch already equals floor(speed * t)
            Dynamics::LinearPath { .. } => CellCoord {
                x: (self.start.x as i64 + epoch as i64).rem_euclid(w as i64) as usize,
                y: (self.start.y as i64 - epoch as i64).rem_euclid(h as i64) as usize,
            },
            Dynamics::JumpCycle { points, .. } => {
                let (px, py) = points[epoch as usize % points.len()];
                self.domain.cell_containing(px, py)
            }
            Dynamics::CircularOrbit {
                radius_cells,
                period,
            } => {
                let angle =
                    2.0 * std::f64::consts::PI * (epoch % *period as u64) as f64 / *period as f64;
                let dx = (radius_cells * angle.cos()).round() as i64;
                let dy = (radius_cells * angle.sin()).round() as i64;
                CellCoord {
                    x: (self.start.x as i64 + dx).rem_euclid(w as i64) as usize,
                    y: (self.start.y as i64 + dy).rem_euclid(h as i64) as usize,
                }
            }
            Dynamics::SeverityDrift { .. } => unreachable!("validated at construction"),
        }
    }

    fn drift(&self, epoch: u64) -> f64 {
        match &self.dynamics {
            Dynamics::Static => 0.0,
            Dynamics::SeverityDrift { severity, .. } => severity_shift(epoch, *severity),
            _ => unreachable!("validated at construction"),
        }
    }

    fn fill_values(&self, epoch: u64) -> Vec<f64> {
        let (w, h) = (self.domain.width, self.domain.height);
        let cell = |i: usize| CellCoord { x: i % w, y: i / w };
        match &self.base {
            BaseField::Ackley => {
                let (ax, ay) = self.domain.cell_center(self.ackley_target(epoch));
                (0..w * h)
                    .map(|i| {
                        let (x, y) = self.domain.cell_center(cell(i));
                        ackley(&[x, y], &[ax, ay])
                    })
                    .collect()
            }
            BaseField::SchafferF7 => {
                let delta = self.drift(epoch);
                (0..w * h)
                    .map(|i| {
                        let (x, y) = self.domain.cell_center(cell(i));
                        schaffer_f7([x, y], delta)
                    })
                    .collect()
            }
            BaseField::ControlFitness { integration_steps } => {
                let delta = self.drift(epoch);
                let steps = *integration_steps;
                (0..w * h)
                    .into_par_iter()
                    .map(|i| {
                        let (u1, u2) = self.domain.cell_center(cell(i));
                        ode::control_fitness(u1, u2, delta, steps)
                    })
                    .collect()
            }
            BaseField::Flat { value } => vec![*value; w * h],
        }
    }

    /// The full-grid field for the epoch containing step `t`, building and
    /// caching it on first use.
    pub fn epoch_field(&self, t: u64) -> Arc<EpochField> {
        let epoch = self.epoch(t);
        let mut cache = self.cache.lock().expect("landscape cache poisoned");
        if let Some(field) = cache.as_ref() {
            if field.epoch == epoch {
                return Arc::clone(field);
            }
        }
        let values = self.fill_values(epoch);
        let w = self.domain.width;
        let mut best_idx = 0;
        for (i, &v) in values.iter().enumerate() {
            let better = match self.objective {
                Objective::Minimize => v < values[best_idx],
                Objective::Maximize => v > values[best_idx],
            };
            if better {
                best_idx = i;
            }
        }
        let field = Arc::new(EpochField {
            epoch,
            width: w,
            best_cell: CellCoord {
                x: best_idx % w,
                y: best_idx / w,
            },
            best_value: values[best_idx],
            values,
        });
        *cache = Some(Arc::clone(&field));
        field
    }

    /// Field value at `(cell, t)`. Pure: no hidden state besides `t`.
    pub fn value_at(&self, c: CellCoord, t: u64) -> f64 {
        self.epoch_field(t).value(c)
    }

    /// Same value computed without the epoch cache; the cache must be
    /// transparent with respect to this.
    pub fn value_at_uncached(&self, c: CellCoord, t: u64) -> f64 {
        let epoch = self.epoch(t);
        let (x, y) = self.domain.cell_center(c);
        match &self.base {
            BaseField::Ackley => {
                let (ax, ay) = self.domain.cell_center(self.ackley_target(epoch));
                ackley(&[x, y], &[ax, ay])
            }
            BaseField::SchafferF7 => schaffer_f7([x, y], self.drift(epoch)),
            BaseField::ControlFitness { integration_steps } => {
                ode::control_fitness(x, y, self.drift(epoch), *integration_steps)
            }
            BaseField::Flat { value } => *value,
        }
    }

    /// Ground-truth optimum over all grid cells at step `t`, by exhaustive
    /// scan (cached per epoch).
    pub fn true_optimum(&self, t: u64) -> (CellCoord, f64) {
        self.epoch_field(t).best()
    }

    /// Per-step optimum trajectory over `0..t_max`.
    pub fn optimum_trace(&self, t_max: u64) -> OptimumTrace {
        let mut cells = Vec::with_capacity(t_max as usize);
        let mut values = Vec::with_capacity(t_max as usize);
        for t in 0..t_max {
            let (c, v) = self.true_optimum(t);
            cells.push(c);
            values.push(v);
        }
        OptimumTrace { cells, values }
    }
}
