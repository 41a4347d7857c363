//! One-parameter groups of rigid motions of L³ that generate the rotational
//! and helicoidal surfaces.

use serde::{Deserialize, Serialize};

use crate::lorentz::{Mat3, Vec3, Vec3R};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "group")]
pub enum MotionGroup {
    /// Rotations about the timelike axis (0, 0, 1).
    RotTimelike,
    /// Boosts about the spacelike axis (1, 0, 0).
    RotSpacelike,
    /// Null rotations about the lightlike axis spanned by (1, 0, 1).
    RotLightlike,
    /// Rotation about (0, 0, 1) composed with translation by λθ along it.
    ScrewTimelike { lambda: f64 },
}

impl MotionGroup {
    pub fn matrix(&self, theta: f64) -> Mat3 {
        let (s, c) = theta.sin_cos();
        match self {
            MotionGroup::RotTimelike | MotionGroup::ScrewTimelike { .. } => {
                Mat3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
            }
            MotionGroup::RotSpacelike => {
                let (sh, ch) = (theta.sinh(), theta.cosh());
                Mat3([[1.0, 0.0, 0.0], [0.0, ch, sh], [0.0, sh, ch]])
            }
            MotionGroup::RotLightlike => {
                let q = 0.5 * theta * theta;
                Mat3([[1.0 - q, theta, q], [-theta, 1.0, theta], [-q, theta, q + 1.0]])
            }
        }
    }

    pub fn translation(&self, theta: f64) -> Vec3R {
        match *self {
            MotionGroup::ScrewTimelike { lambda } => Vec3::new(0.0, 0.0, lambda * theta),
            _ => Vec3R::zero(),
        }
    }

    pub fn apply(&self, theta: f64, p: Vec3R) -> Vec3R {
        self.matrix(theta).apply(p) + self.translation(theta)
    }
}
