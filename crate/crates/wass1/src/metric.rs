//! Ground distances between grid bin centers.

use crate::error::{Error, Result};

/// The plain distance function, without any approximation parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    /// Taxicab distance `|x1 - y1| + |x2 - y2|`.
    L1,
    /// Euclidean distance.
    L2,
    /// Chebyshev distance `max(|x1 - y1|, |x2 - y2|)`.
    Linf,
}

impl MetricKind {
    /// Exact ground distance between bins `a` and `b`. Integer-valued for
    /// `L1` and `Linf` (represented exactly in the returned `f64`).
    pub fn distance(&self, a: (u32, u32), b: (u32, u32)) -> f64 {
        let dx = (a.0 as i64 - b.0 as i64).unsigned_abs();
        let dy = (a.1 as i64 - b.1 as i64).unsigned_abs();
        match self {
            MetricKind::L1 => (dx + dy) as f64,
            MetricKind::Linf => dx.max(dy) as f64,
            MetricKind::L2 => ((dx * dx + dy * dy) as f64).sqrt(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            MetricKind::L1 => "l1",
            MetricKind::L2 => "l2",
            MetricKind::Linf => "linf",
        }
    }
}

/// Ground metric for grid networks. `L1` and `Linf` networks are always
/// exact; an `L2` network is exact only when `l = side - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroundMetric {
    L1,
    Linf,
    L2 { l: u32 },
}

impl GroundMetric {
    /// The exact Euclidean metric on a grid of the given side.
    pub fn l2_exact(side: u32) -> Self {
        GroundMetric::L2 {
            l: side.saturating_sub(1),
        }
    }

    pub fn kind(&self) -> MetricKind {
        match self {
            GroundMetric::L1 => MetricKind::L1,
            GroundMetric::Linf => MetricKind::Linf,
            GroundMetric::L2 { .. } => MetricKind::L2,
        }
    }

    pub fn l(&self) -> Option<u32> {
        match self {
            GroundMetric::L2 { l } => Some(*l),
            _ => None,
        }
    }

    /// Whether the induced network computes the ground distance exactly.
    pub fn is_exact_for(&self, side: u32) -> bool {
        match self {
            GroundMetric::L1 | GroundMetric::Linf => true,
            GroundMetric::L2 { l } => *l == side - 1,
        }
    }

    pub fn validate(&self, side: u32) -> Result<()> {
        if side < 2 {
            return Err(Error::SideTooSmall(side));
        }
        if let GroundMetric::L2 { l } = self {
            if *l < 1 || *l > side - 1 {
                return Err(Error::InvalidL {
                    l: *l,
                    side,
                    max: side - 1,
                });
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match self {
            GroundMetric::L1 => "l1".into(),
            GroundMetric::Linf => "linf".into(),
            GroundMetric::L2 { l } => format!("l2[L={l}]"),
        }
    }
}
