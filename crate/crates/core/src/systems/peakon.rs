use std::f64::consts::PI;

use crate::spectral::{Field, PeriodicGrid};
use crate::{Error, Result};

const IMAGES: i32 = 10;

/// Periodized peakon `c √(3/2) e^{-|x + c²t|}` summed over `|n| <= 10`
/// images. The crest sits at `x = (−c²t) mod 2π` and moves with speed `−c²`.
pub fn peakon_profile(c: f64, t: f64, grid: PeriodicGrid) -> Result<Field> {
    if c == 0.0 || !c.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "peakon speed parameter must be nonzero, got {c}"
        )));
    }
    let amp = c * 1.5f64.sqrt();
    let crest = peak_location(c, t);
    Ok(Field::from_fn(grid, |x| {
        // Distance to the crest folded into [-π, π).
        let xi = (x - crest + PI).rem_euclid(2.0 * PI) - PI;
        (-IMAGES..=IMAGES)
            .map(|n| (-(xi + 2.0 * PI * n as f64).abs()).exp())
            .sum::<f64>()
            * amp
    }))
}

/// `(−c²t) mod 2π`.
pub fn peak_location(c: f64, t: f64) -> f64 {
    (-c * c * t).rem_euclid(2.0 * PI)
}
