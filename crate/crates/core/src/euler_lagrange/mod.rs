mod multipliers;
mod partition;
mod pieces;
mod relations;
mod structure;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use multipliers::{compute_multipliers, phase_align, Multipliers};
pub use partition::{nodal_partition, NodalPartition};
pub use pieces::{
    c1_mismatch, euler_residual, piece_coefficients, shoot_chain, Piece, PiecewiseIntegrals, PiecewiseSolution,
};
pub use structure::{analyze_structure, StructureReport, ThreeIntervalSummary};
pub use relations::{
    a_quantity, a_quantity_rotated, fredholm_relation, interval_relation_residual, nodal_integral,
    three_interval_system, ThreeIntervalSystem,
};

/// Sign of `u` on a nodal interval; serialized as `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    /// Nonnegative values map to `Positive`.
    pub fn from_f64(x: f64) -> Self {
        if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_f64() as i8)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(serde::de::Error::custom(format!("sign must be ±1, got {other}"))),
        }
    }
}
