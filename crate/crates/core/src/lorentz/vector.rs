use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A vector (or point) of Lorentz-Minkowski 3-space, metric dx² + dy² − dz².
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Causal character of a vector, decided by the exact sign of ⟨v,v⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
    Zero,
}

impl LVec3 {
    pub const ZERO: LVec3 = LVec3 { x: 0.0, y: 0.0, z: 0.0 };
    /// The timelike axis direction (0,0,1).
    pub const E3: LVec3 = LVec3 { x: 0.0, y: 0.0, z: 1.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: LVec3) -> f64 {
        minkowski_dot(self, other)
    }

    /// ⟨v,v⟩.
    pub fn square(self) -> f64 {
        minkowski_dot(self, self)
    }

    pub fn cross(self, other: LVec3) -> LVec3 {
        lorentz_cross(self, other)
    }

    pub fn causal_character(self) -> CausalCharacter {
        causal_character(self)
    }

    /// Euclidean length, used only for mesh heuristics (diagonal choice, scaling).
    pub fn euclidean_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Normalizes a spacelike or timelike vector to ⟨v,v⟩ = ±1.
    pub fn normalized(self) -> Option<LVec3> {
        let s = self.square();
        if s == 0.0 || !s.is_finite() {
            return None;
        }
        Some(self * (1.0 / s.abs().sqrt()))
    }

    /// Flips a timelike vector so that its z-component is positive.
    pub fn future(self) -> LVec3 {
        if self.z < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for LVec3 {
    type Output = LVec3;
    fn add(self, o: LVec3) -> LVec3 {
        LVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for LVec3 {
    type Output = LVec3;
    fn sub(self, o: LVec3) -> LVec3 {
        LVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for LVec3 {
    type Output = LVec3;
    fn neg(self) -> LVec3 {
        LVec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for LVec3 {
    type Output = LVec3;
    fn mul(self, s: f64) -> LVec3 {
        LVec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<LVec3> for f64 {
    type Output = LVec3;
    fn mul(self, v: LVec3) -> LVec3 {
        v * self
    }
}

/// u_x v_x + u_y v_y − u_z v_z.
pub fn minkowski_dot(u: LVec3, v: LVec3) -> f64 {
    u.x * v.x + u.y * v.y - u.z * v.z
}

pub fn causal_character(v: LVec3) -> CausalCharacter {
    let s = v.square();
    if s > 0.0 {
        CausalCharacter::Spacelike
    } else if s < 0.0 {
        CausalCharacter::Timelike
    } else if v == LVec3::ZERO {
        CausalCharacter::Zero
    } else {
        CausalCharacter::Lightlike
    }
}

/// Lorentzian cross product: the unique w with ⟨w,t⟩ = det(u,v,t) for every t.
///
/// This is the Euclidean cross product with the sign of its z-component flipped.
pub fn lorentz_cross(u: LVec3, v: LVec3) -> LVec3 {
    LVec3::new(
        u.y * v.z - u.z * v.y,
        u.z * v.x - u.x * v.z,
        -(u.x * v.y - u.y * v.x),
    )
}

/// Lorentz-orthonormal basis (e1, e2) of the spacelike plane orthogonal to a
/// unit timelike vector `n`.
pub fn tangent_frame(n: LVec3) -> (LVec3, LVec3) {
    // Seed with the horizontal axis least aligned with n.
    let seed = if n.x.abs() <= n.y.abs() {
        LVec3::new(1.0, 0.0, 0.0)
    } else {
        LVec3::new(0.0, 1.0, 0.0)
    };
    // ⟨n,n⟩ = −1, so projecting out n adds ⟨seed,n⟩ n.
    let e1 = (seed + n * seed.dot(n))
        .normalized()
        .expect("projection of a horizontal axis onto n^⊥ is spacelike");
    let e2 = lorentz_cross(n, e1)
        .normalized()
        .expect("cross product of orthonormal timelike and spacelike vectors is spacelike");
    (e1, e2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_examples() {
        assert_eq!(minkowski_dot(LVec3::E3, LVec3::E3), -1.0);
        assert_eq!(minkowski_dot(LVec3::new(1.0, 0.0, 0.0), LVec3::E3), 0.0);
        let l = LVec3::new(1.0, 0.0, 1.0);
        assert_eq!(minkowski_dot(l, l), 0.0);
    }

    #[test]
    fn causal_examples() {
        assert_eq!(causal_character(LVec3::new(1.0, 0.0, 0.0)), CausalCharacter::Spacelike);
        assert_eq!(causal_character(LVec3::E3), CausalCharacter::Timelike);
        assert_eq!(causal_character(LVec3::new(1.0, 0.0, 1.0)), CausalCharacter::Lightlike);
        assert_eq!(causal_character(LVec3::ZERO), CausalCharacter::Zero);
    }

    #[test]
    fn cross_of_horizontal_axes_points_down() {
        // Solving ⟨w,t⟩ = det(e1,e2,t) for t = e1, e2, e3 gives w = (0,0,-1).
        let w = lorentz_cross(LVec3::new(1.0, 0.0, 0.0), LVec3::new(0.0, 1.0, 0.0));
        assert_eq!(w, LVec3::new(0.0, 0.0, -1.0));
        let u = LVec3::new(0.3, -1.2, 2.0);
        assert_eq!(lorentz_cross(u, u), LVec3::ZERO);
    }

    #[test]
    fn tangent_frame_is_orthonormal() {
        let n = LVec3::new(0.3, -0.4, 1.0).normalized().unwrap();
        let (e1, e2) = tangent_frame(n);
        assert!((e1.square() - 1.0).abs() < 1e-14);
        assert!((e2.square() - 1.0).abs() < 1e-14);
        assert!(e1.dot(e2).abs() < 1e-14);
        assert!(e1.dot(n).abs() < 1e-14);
        assert!(e2.dot(n).abs() < 1e-14);
    }
}
