use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::GridFunction;

/// Which indicator a [`RestrictionProjector`] multiplies by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectorSide {
    /// `[−r, r]`
    Inside,
    /// complement of `[−r, r]`
    Outside,
    /// `[r, ∞)`
    Halfline,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictionProjector {
    pub radius: f64,
    pub side: ProjectorSide,
}

impl RestrictionProjector {
    pub fn new(radius: f64, side: ProjectorSide) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("projector radius must be > 0, got {radius}")));
        }
        Ok(RestrictionProjector { radius, side })
    }

    pub fn keeps(&self, x: f64) -> bool {
        match self.side {
            ProjectorSide::Inside => x.abs() <= self.radius,
            ProjectorSide::Outside => x.abs() > self.radius,
            ProjectorSide::Halfline => x >= self.radius,
        }
    }
}

/// Multiplies `f` pointwise by the projector's indicator.
pub fn apply_projector(proj: RestrictionProjector, f: &GridFunction) -> GridFunction {
    f.map(|x, v| if proj.keeps(x) { v } else { v * 0.0 }).expect("masking keeps samples finite")
}
