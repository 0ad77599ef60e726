//! Forward-only sweep schedules for a cop (or unison cop team) on a path of
//! positions 1..m with a fixed per-position capture probability each turn.
//!
//! The cop starts at position 1 on turn 0, spends some capture-eligible
//! turns at each position before stepping forward, and parks forever on the
//! last position carrying positive mass. The planner picks the wait counts
//! minimizing the exact expected capture turn.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SweepError {
    #[error("sweep mass sums to {0}, above 1")]
    InvalidQ(f64),
    #[error("sweep mass is identically zero")]
    ZeroMass,
}

/// Optimal wait counts for a forward-only sweep. Position indices are
/// 0-based; `waits[j]` is the number of extra turns spent at position j
/// beyond the arrival turn (beyond turn 0 for position 0). Positions after
/// `hold_index` are never visited; the cop waits at `hold_index` forever.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSchedule {
    waits: Vec<u32>,
    hold_index: usize,
    expected: f64,
}

impl SweepSchedule {
    pub fn waits(&self) -> &[u32] {
        &self.waits
    }

    pub fn hold_index(&self) -> usize {
        self.hold_index
    }

    /// Planned expected capture turn (cop at position 0 on turn 0).
    pub fn expected_time(&self) -> f64 {
        self.expected
    }
}

/// Plans with the default per-position wait cap of 10·m.
pub fn plan_sweep_schedule(q: &[f64]) -> Result<SweepSchedule, SweepError> {
    plan_sweep_schedule_capped(q, 10 * q.len() as u32)
}

/// Dynamic program over positions, scanning wait counts up to `max_wait`
/// per position; ties prefer the smaller wait.
pub fn plan_sweep_schedule_capped(q: &[f64], max_wait: u32) -> Result<SweepSchedule, SweepError> {
    assert!(!q.is_empty(), "need at least one position");
    let sum: f64 = q.iter().sum();
    if sum > 1.0 + 1e-9 {
        return Err(SweepError::InvalidQ(sum));
    }
    let hold_index = match q.iter().rposition(|&p| p > 0.0) {
        Some(i) => i,
        None => return Err(SweepError::ZeroMass),
    };
    let mut waits = vec![0u32; q.len()];
    // value[j]: expected remaining turns when the next turn is the arrival
    // turn at position j, counted as turn 1.
    let mut value = 1.0 / q[hold_index];
    for j in (1..hold_index).rev() {
        let (w, val) = best_wait(q[j], value, 1, max_wait);
        waits[j] = w;
        value = val;
    }
    let expected = if hold_index == 0 {
        value
    } else {
        let (w, val) = best_wait(q[0], value, 0, max_wait);
        waits[0] = w;
        val
    };
    Ok(SweepSchedule {
        waits,
        hold_index,
        expected,
    })
}

/// Minimizes over e = base_eligible + w of the expected remaining time when
/// spending e eligible turns at a position with capture probability `p`
/// before handing off to a continuation worth `next`.
fn best_wait(p: f64, next: f64, base_eligible: u32, max_wait: u32) -> (u32, f64) {
    let mut best = (0u32, f64::INFINITY);
    for w in 0..=max_wait {
        let e = base_eligible + w;
        let val = if p <= 0.0 {
            e as f64 + next
        } else {
            let inv = 1.0 / p;
            inv + (1.0 - p).powi(e as i32) * (next - inv)
        };
        if val < best.1 {
            best = (w, val);
        }
    }
    best
}

/// Exact expected capture turn of an explicit wait vector, evaluated by
/// forward accumulation over the turn timeline (independent of the DP
/// recursion). Positions after `hold_index` are ignored.
pub fn sweep_expected_time(q: &[f64], waits: &[u32], hold_index: usize) -> f64 {
    assert!(hold_index < q.len() && q[hold_index] > 0.0);
    let mut turn = 0u64;
    let mut survival = 1.0;
    let mut expected = 0.0;
    for j in 0..hold_index {
        let eligible = if j == 0 { waits[0] } else { 1 + waits[j] };
        for _ in 0..eligible {
            turn += 1;
            expected += survival * q[j] * turn as f64;
            survival *= 1.0 - q[j];
        }
    }
    let p = q[hold_index];
    let arrival = if hold_index == 0 { 1 } else { turn + 1 };
    expected + survival * (arrival as f64 + (1.0 - p) / p)
}

/// Executes a schedule one turn at a time.
#[derive(Clone, Debug)]
pub struct SweepWalker {
    schedule: SweepSchedule,
    position: usize,
    waited: u32,
}

impl SweepWalker {
    pub fn new(schedule: SweepSchedule) -> Self {
        SweepWalker {
            schedule,
            position: 0,
            waited: 0,
        }
    }

    pub fn position(&self) -> usize {
        self.position
    }

    /// Consumes one turn; returns true if the cop steps forward.
    pub fn advance(&mut self) -> bool {
        if self.position >= self.schedule.hold_index {
            false
        } else if self.waited < self.schedule.waits[self.position] {
            self.waited += 1;
            false
        } else {
            self.position += 1;
            self.waited = 0;
            true
        }
    }
}
