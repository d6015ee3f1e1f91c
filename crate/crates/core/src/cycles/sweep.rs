use serde::Serialize;

use super::{
    extraction_condition, run_carnot, run_otto, CarnotSpec, CycleReport, OttoMode, OttoSpec,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "cycle", rename_all = "snake_case")]
pub enum CycleKind {
    Otto { mode: OttoMode },
    Carnot,
}

/// Cartesian grid of cycle parameters. `isotherm_steps` is only used by
/// Carnot sweeps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid {
    pub cycle: CycleKind,
    pub t_cold: Vec<f64>,
    pub t_hot: Vec<f64>,
    pub omega_c: Vec<f64>,
    pub omega_h: Vec<f64>,
    pub isotherm_steps: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SweepOutcome {
    Completed { report: CycleReport },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub index: usize,
    pub t_cold: f64,
    pub t_hot: f64,
    pub omega_c: f64,
    pub omega_h: f64,
    pub isotherm_steps: Option<usize>,
    pub is_engine: bool,
    pub outcome: SweepOutcome,
}

impl SweepPoint {
    pub fn report(&self) -> Option<&CycleReport> {
        match &self.outcome {
            SweepOutcome::Completed { report } => Some(report),
            SweepOutcome::Skipped { .. } => None,
        }
    }
}

struct PointSpec {
    t_cold: f64,
    t_hot: f64,
    omega_c: f64,
    omega_h: f64,
    steps: Option<usize>,
}

impl SweepGrid {
    fn points(&self) -> Result<Vec<PointSpec>> {
        let steps: Vec<Option<usize>> = match self.cycle {
            CycleKind::Otto { .. } => vec![None],
            CycleKind::Carnot => self.isotherm_steps.iter().copied().map(Some).collect(),
        };
        let mut out = Vec::new();
        for &t_cold in &self.t_cold {
            for &t_hot in &self.t_hot {
                for &omega_c in &self.omega_c {
                    for &omega_h in &self.omega_h {
                        for &steps in &steps {
                            out.push(PointSpec {
                                t_cold,
                                t_hot,
                                omega_c,
                                omega_h,
                                steps,
                            });
                        }
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::domain("sweep grid is empty"));
        }
        Ok(out)
    }

    pub fn point_count(&self) -> Result<usize> {
        self.points().map(|p| p.len())
    }
}

fn evaluate(cycle: &CycleKind, index: usize, p: &PointSpec) -> SweepPoint {
    let result = match cycle {
        CycleKind::Otto { mode } => {
            OttoSpec::new(p.t_cold, p.t_hot, p.omega_c, p.omega_h, *mode).and_then(|s| run_otto(&s))
        }
        CycleKind::Carnot => CarnotSpec::new(
            p.t_cold,
            p.t_hot,
            p.omega_c,
            p.omega_h,
            p.steps.unwrap_or(0),
        )
        .and_then(|s| run_carnot(&s)),
    };
    let outcome = match result {
        Ok(report) => SweepOutcome::Completed { report },
        Err(e) => SweepOutcome::Skipped {
            reason: e.to_string(),
        },
    };
    SweepPoint {
        index,
        t_cold: p.t_cold,
        t_hot: p.t_hot,
        omega_c: p.omega_c,
        omega_h: p.omega_h,
        isotherm_steps: p.steps,
        is_engine: extraction_condition(p.t_cold, p.t_hot, p.omega_c, p.omega_h),
        outcome,
    }
}

/// Runs every grid point; invalid points are skipped with a reason.
///
/// With `jobs > 1` points are evaluated on scoped worker threads. The result
/// is ordered by grid index either way.
pub fn sweep(grid: &SweepGrid, jobs: usize) -> Result<Vec<SweepPoint>> {
    let points = grid.points()?;
    let jobs = jobs.clamp(1, points.len());
    if jobs == 1 {
        return Ok(points
            .iter()
            .enumerate()
            .map(|(i, p)| evaluate(&grid.cycle, i, p))
            .collect());
    }
    let chunk = points.len().div_ceil(jobs);
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                let cycle = &grid.cycle;
                scope.spawn(move || {
                    part.iter()
                        .enumerate()
                        .map(|(j, p)| evaluate(cycle, c * chunk + j, p))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    Ok(results)
}
