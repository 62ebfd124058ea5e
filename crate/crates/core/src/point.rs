use std::f64::consts::FRAC_PI_2;

/// End of the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// rho = +pi/2
    Plus,
    /// rho = -pi/2
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// A radial position with its trigonometric data stored to full relative
/// precision, including `cos rho` and `1 -/+ sin rho` close to the ends.
#[derive(Debug, Clone, Copy)]
pub struct RhoPoint {
    pub rho: f64,
    pub sin: f64,
    pub cos: f64,
    /// 1 + sin rho
    pub one_plus_sin: f64,
    /// 1 - sin rho
    pub one_minus_sin: f64,
}

impl RhoPoint {
    pub fn new(rho: f64) -> Self {
        let dist = FRAC_PI_2 - rho.abs();
        if dist < 0.5 {
            let side = if rho >= 0.0 { Side::Plus } else { Side::Minus };
            return Self::from_boundary(side, dist);
        }
        let (sin, cos) = rho.sin_cos();
        RhoPoint { rho, sin, cos, one_plus_sin: 1.0 + sin, one_minus_sin: 1.0 - sin }
    }

    /// The point at distance `dist` from the end `side`.
    pub fn from_boundary(side: Side, dist: f64) -> Self {
        let (s, c) = dist.sin_cos();
        let half = (0.5 * dist).sin();
        let near = 2.0 * half * half; // 1 - cos(dist), computed without cancellation
        let far = 1.0 + c;
        match side {
            Side::Plus => RhoPoint {
                rho: FRAC_PI_2 - dist,
                sin: c,
                cos: s,
                one_plus_sin: far,
                one_minus_sin: near,
            },
            Side::Minus => RhoPoint {
                rho: dist - FRAC_PI_2,
                sin: -c,
                cos: s,
                one_plus_sin: near,
                one_minus_sin: far,
            },
        }
    }

    /// `cos^2 rho` and `sin^2 rho`, each to full relative precision.
    pub fn cos2_sin2(&self) -> (f64, f64) {
        (self.cos * self.cos, self.sin * self.sin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_points_keep_precision() {
        let p = RhoPoint::from_boundary(Side::Minus, 1e-20);
        assert_eq!(p.cos, 1e-20);
        assert!((p.one_plus_sin - 0.5e-40).abs() < 1e-55);
        let q = RhoPoint::new(0.3);
        assert!((q.sin - 0.3f64.sin()).abs() < 1e-16);
        let r = RhoPoint::new(1.5);
        assert!((r.cos - 1.5f64.cos()).abs() < 1e-16);
    }
}
