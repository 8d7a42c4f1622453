//! Per-step measurement and aggregate scoring: population, mean altitude,
//! best agent value, epsilon-capture of the true optimum, success rate and
//! reaction times, plus the CSV schemas used by the experiment runner.

use std::io::{self, Write};

use thiserror::Error;

use crate::landscape::Landscape;
use crate::swarm::StepOutcome;
use crate::Objective;

/// One row of per-step metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub t: u64,
    /// Agents alive at the end of the step.
    pub population: usize,
    /// Mean altitude over agents; absent when the colony is empty.
    pub mean_altitude: Option<f64>,
    /// Extremal altitude among agents under the run's objective; absent when
    /// the colony is empty.
    pub best_value: Option<f64>,
    /// Whether `best_value` is within the capture tolerance of the true
    /// optimum value at `t`.
    pub captured: bool,
    /// Environmental epoch index at `t`.
    pub epoch: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("empty record series")]
    EmptySeries,
}

/// Builds the metrics row for step `t` from the step outcome. Capture means
/// `|best_value - true_optimum_value(t)| <= eps`.
pub fn record_step(outcome: &StepOutcome, landscape: &Landscape, t: u64, eps: f64) -> StepRecord {
    let best_value = best_of(&outcome.altitudes, landscape.objective());
    let mean_altitude = if outcome.altitudes.is_empty() {
        None
    } else {
        Some(outcome.altitudes.iter().sum::<f64>() / outcome.altitudes.len() as f64)
    };
    let captured = best_value.is_some_and(|best| {
        let (_, opt) = landscape.true_optimum(t);
        (best - opt).abs() <= eps
    });
    StepRecord {
        t,
        population: outcome.population,
        mean_altitude,
        best_value,
        captured,
        epoch: landscape.epoch(t),
    }
}

fn best_of(altitudes: &[f64], objective: Objective) -> Option<f64> {
    altitudes.iter().copied().reduce(|a, b| match objective {
        Objective::Minimize => a.min(b),
        Objective::Maximize => a.max(b),
    })
}

/// Fraction of steps with `captured = true`.
pub fn success_rate(records: &[StepRecord]) -> Result<f64, MetricsError> {
    if records.is_empty() {
        return Err(MetricsError::EmptySeries);
    }
    let captured = records.iter().filter(|r| r.captured).count();
    Ok(captured as f64 / records.len() as f64)
}

/// Steps from each environmental change to the first subsequent capture.
/// `None` marks a censored entry: never recaptured before the next change
/// (or before the end of the series for the last change). Records are
/// indexed by step, i.e. `records[i].t == i`.
pub fn reaction_times(records: &[StepRecord], change_steps: &[u64]) -> Vec<Option<u64>> {
    change_steps
        .iter()
        .enumerate()
        .map(|(i, &change)| {
            let window_end = change_steps
                .get(i + 1)
                .copied()
                .unwrap_or(records.len() as u64);
            (change..window_end)
                .find(|&t| records.get(t as usize).is_some_and(|r| r.captured))
                .map(|t| t - change)
        })
        .collect()
}

/// Median of the observed (non-censored) reaction times; `None` when every
/// entry is censored or the list is empty.
pub fn median_reaction(times: &[Option<u64>]) -> Option<f64> {
    let mut observed: Vec<u64> = times.iter().flatten().copied().collect();
    if observed.is_empty() {
        return None;
    }
    observed.sort_unstable();
    let n = observed.len();
    Some(if n % 2 == 1 {
        observed[n / 2] as f64
    } else {
        (observed[n / 2 - 1] + observed[n / 2]) as f64 / 2.0
    })
}

/// Full per-run measurement series plus the aggregates derived from it.
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub success_rate: f64,
    /// One entry per environmental change; `None` for censored changes.
    pub reaction_times: Vec<Option<u64>>,
    pub records: Vec<StepRecord>,
}

impl RunSummary {
    pub fn new(records: Vec<StepRecord>, change_steps: &[u64]) -> Result<Self, MetricsError> {
        let success_rate = success_rate(&records)?;
        let reaction_times = reaction_times(&records, change_steps);
        Ok(RunSummary {
            success_rate,
            reaction_times,
            records,
        })
    }

    pub fn final_population(&self) -> usize {
        self.records.last().map_or(0, |r| r.population)
    }

    pub fn median_reaction(&self) -> Option<f64> {
        median_reaction(&self.reaction_times)
    }
}

/// Formats a float with 9 significant digits, positional where compact and
/// scientific otherwise, trailing zeros trimmed.
pub fn format_float(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if value.is_nan() {
        return "nan".to_string();
    }
    if value.is_infinite() {
        return if value > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{value:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{value:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

fn opt_float(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

/// Writes the per-step CSV: header
/// `t,population,mean_altitude,best_value,captured,epoch`, one row per step,
/// floats at 9 significant digits, captured as 0/1, absent values empty.
pub fn write_records_csv<W: Write>(out: &mut W, records: &[StepRecord]) -> io::Result<()> {
    writeln!(out, "t,population,mean_altitude,best_value,captured,epoch")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.t,
            r.population,
            opt_float(r.mean_altitude),
            opt_float(r.best_value),
            u8::from(r.captured),
            r.epoch
        )?;
    }
    Ok(())
}

/// One row of the sweep-level summary CSV.
#[derive(Clone, Debug)]
pub struct SummaryRow {
    pub run_id: String,
    pub seed: u64,
    pub preset: String,
    /// The swept parameter, e.g. `v=2`.
    pub param: String,
    pub success_rate: f64,
    pub median_reaction: Option<f64>,
    pub final_population: usize,
}

/// Writes the summary CSV: header
/// `run_id,seed,preset,param,success_rate,median_reaction,final_population`.
pub fn write_summary_csv<W: Write>(out: &mut W, rows: &[SummaryRow]) -> io::Result<()> {
    writeln!(
        out,
        "run_id,seed,preset,param,success_rate,median_reaction,final_population"
    )?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.run_id,
            row.seed,
            row.preset,
            row.param,
            format_float(row.success_rate),
            opt_float(row.median_reaction),
            row.final_population
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::habitat::HabitatGrid;
    use crate::landscape::Landscape;
    use crate::swarm::{Colony, Direction, SwarmParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn record(t: u64, captured: bool) -> StepRecord {
        StepRecord {
            t,
            population: 1,
            mean_altitude: Some(0.0),
            best_value: Some(0.0),
            captured,
            epoch: 0,
        }
    }

    #[test]
    fn record_step_at_optimum_captures() {
        let landscape = Landscape::ackley_linear(20, 20, 0.0);
        let (opt_cell, _) = landscape.true_optimum(0);
        let mut grid = HabitatGrid::new(20, 20);
        let mut colony = Colony::new();
        colony.place_ant(&mut grid, opt_cell, Direction::N);
        let altitudes: Vec<f64> = colony
            .ants()
            .iter()
            .map(|a| landscape.value_at(a.pos, 0))
            .collect();
        let outcome = crate::swarm::StepOutcome {
            births: 0,
            deaths: 0,
            population: 1,
            altitudes,
        };
        for eps in [1e-9, 0.05, 1.0] {
            let r = record_step(&outcome, &landscape, 0, eps);
            assert!(r.best_value.unwrap().abs() < 1e-12);
            assert!(r.captured, "eps = {eps}");
        }
    }

    #[test]
    fn record_step_empty_colony() {
        let landscape = Landscape::ackley_linear(20, 20, 0.0);
        let outcome = crate::swarm::StepOutcome {
            births: 0,
            deaths: 3,
            population: 0,
            altitudes: vec![],
        };
        let r = record_step(&outcome, &landscape, 5, 0.05);
        assert_eq!(r.population, 0);
        assert_eq!(r.mean_altitude, None);
        assert_eq!(r.best_value, None);
        assert!(!r.captured);
    }

    #[test]
    fn capture_monotone_in_eps() {
        let landscape = Landscape::ackley_linear(20, 20, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut grid = HabitatGrid::new(20, 20);
        let params = SwarmParams::default();
        let mut colony = Colony::init(&mut grid, 0.3, &mut rng);
        let outcome = colony.step(&mut grid, &landscape, 0, &params, &mut rng);
        let mut last = false;
        for eps in [1e-6, 1e-3, 0.05, 0.5, 5.0, 50.0] {
            let captured = record_step(&outcome, &landscape, 0, eps).captured;
            assert!(captured || !last, "capture must be monotone in eps");
            last = captured;
        }
        assert!(last, "huge eps must capture");
    }

    #[test]
    fn best_value_not_worse_than_mean() {
        let landscape = Landscape::schaffer(20, 20, 0.1, 50);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut grid = HabitatGrid::new(20, 20);
        let params = SwarmParams {
            objective: crate::Objective::Maximize,
            ..SwarmParams::default()
        };
        let mut colony = Colony::init(&mut grid, 0.3, &mut rng);
        for t in 0..10 {
            let outcome = colony.step(&mut grid, &landscape, t, &params, &mut rng);
            let r = record_step(&outcome, &landscape, t, 0.05);
            if let (Some(best), Some(mean)) = (r.best_value, r.mean_altitude) {
                assert!(best >= mean - 1e-12);
            }
        }
    }

    #[test]
    fn success_rate_examples() {
        let all: Vec<StepRecord> = (0..10).map(|t| record(t, true)).collect();
        assert_eq!(success_rate(&all).unwrap(), 1.0);
        let none: Vec<StepRecord> = (0..10).map(|t| record(t, false)).collect();
        assert_eq!(success_rate(&none).unwrap(), 0.0);
        let mixed: Vec<StepRecord> = (0..100).map(|t| record(t, t < 65)).collect();
        assert_eq!(success_rate(&mixed).unwrap(), 0.65);
        assert_eq!(success_rate(&[]), Err(MetricsError::EmptySeries));
    }

    #[test]
    fn reaction_time_examples() {
        // change at 10 captured immediately; change at 20 recaptured at 24;
        // change at 30 never recaptured before the end
        let records: Vec<StepRecord> = (0..40)
            .map(|t| record(t, t < 20 || (24..30).contains(&t)))
            .collect();
        let times = reaction_times(&records, &[10, 20, 30]);
        assert_eq!(times, vec![Some(0), Some(4), None]);
        assert_eq!(median_reaction(&times), Some(2.0));
        assert_eq!(median_reaction(&[None, None]), None);
        assert_eq!(median_reaction(&[Some(4), Some(9), Some(5)]), Some(5.0));
    }

    #[test]
    fn format_float_significant_digits() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(2.5), "2.5");
        assert_eq!(format_float(0.1), "0.1");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333");
        assert_eq!(format_float(123456789.0), "123456789");
        assert_eq!(format_float(1234567891.0), "1.23456789e9");
        assert_eq!(format_float(-3.625384938440364), "-3.62538494");
        assert_eq!(format_float(0.00012345), "0.00012345");
        assert_eq!(format_float(1.5e-7), "1.5e-7");
        assert_eq!(format_float(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn csv_layout_is_exact() {
        let records = vec![
            StepRecord {
                t: 0,
                population: 3333,
                mean_altitude: Some(4.25),
                best_value: Some(0.5),
                captured: false,
                epoch: 0,
            },
            StepRecord {
                t: 1,
                population: 0,
                mean_altitude: None,
                best_value: None,
                captured: false,
                epoch: 1,
            },
        ];
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &records).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "t,population,mean_altitude,best_value,captured,epoch\n\
             0,3333,4.25,0.5,0,0\n\
             1,0,,,0,1\n"
        );

        let rows = vec![SummaryRow {
            run_id: "ackley-speed_v2_r0".into(),
            seed: 42,
            preset: "ackley-speed".into(),
            param: "v=2".into(),
            success_rate: 0.65,
            median_reaction: None,
            final_population: 3210,
        }];
        let mut buf = Vec::new();
        write_summary_csv(&mut buf, &rows).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "run_id,seed,preset,param,success_rate,median_reaction,final_population\n\
             ackley-speed_v2_r0,42,ackley-speed,v=2,0.65,,3210\n"
        );
    }

    #[test]
    fn summary_from_records() {
        let records: Vec<StepRecord> = (0..100).map(|t| record(t, t % 2 == 0)).collect();
        let summary = RunSummary::new(records, &[50]).unwrap();
        assert_eq!(summary.success_rate, 0.5);
        assert_eq!(summary.reaction_times, vec![Some(0)]);
        assert_eq!(summary.final_population(), 1);
    }
}
