//! The Hölder exponent maps `γ(s, r)` (solution in `H^r`) and `μ(s, p)`
//! (time derivative in `H^p`) together with their region partitions.
//!
//! Regions for `γ`, with `s > 5/2` and `r < s`:
//!
//! | region | membership | `γ` |
//! |---|---|---|
//! | A1 | `r ∈ (3/2, s−1]`, or `r ∈ [0, 3/2] ∩ [3−s, s−3/2)` | `1` |
//! | A2 | `s ∈ (5/2, 3)`, `r < 3−s` | `(2s−3)/(s−r)` |
//! | A3 | `s ∈ (5/2, 3]`, `r ∈ [s−3/2, 3/2]`, `4(s−r)² > 3(2s−3)` | `2(s−r)/(3+ε₀)` |
//! | A4 | as A3 with `4(s−r)² ≤ 3(2s−3)` | `(2s−3−ε₀)/(2(s−r))` |
//! | A5 | `r ∈ (s−1, s)` | `s−r` |
//! | A6 | `s ≥ 3`, `r < 0` | `s/(s−r)` |
//!
//! Regions for `μ`, with `s > 5/2` and `p < s−1`:
//!
//! | region | membership | `μ` |
//! |---|---|---|
//! | B1 | `p ∈ (1/2, s−2]`, or `s > 11/4` and `p ∈ [0, 1/2] ∩ [3−s, s−5/2)` | `1` |
//! | B2 | `s ∈ (11/4, 3)`, `p ∈ [s−5/2, 1/2]`, `4(s−p−1)² > 3(2s−3)` | `2(s−p−1)/(3+ε₁)` |
//! | B3 | `s ∈ (5/2, 11/4]`, `p ≤ 1/2`; or `s ∈ (11/4, 3]`, `p ∈ [s−5/2, 1/2]`, `4(s−p−1)² ≤ 3(2s−3)` | `(2s−3−ε₁)/(2(s−p−1))` |
//! | B4 | `s ∈ (11/4, 3)`, `p < 3−s` | `(2s−4)/(s−p−1)` |
//! | B5 | `p ∈ (s−2, s−1)` | `s−p−1` |
//! | B6 | `s ≥ 3`, `p < 0` | `(s−1)/(s−p−1)` |
//!
//! The six predicates of each table tile the admissible half-plane; where
//! more than one would fire (never, in exact arithmetic) the lowest index
//! wins.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
}

impl Region {
    pub const GAMMA: [Region; 6] = [
        Region::A1,
        Region::A2,
        Region::A3,
        Region::A4,
        Region::A5,
        Region::A6,
    ];
    pub const MU: [Region; 6] = [
        Region::B1,
        Region::B2,
        Region::B3,
        Region::B4,
        Region::B5,
        Region::B6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Region::A1 => "A1",
            Region::A2 => "A2",
            Region::A3 => "A3",
            Region::A4 => "A4",
            Region::A5 => "A5",
            Region::A6 => "A6",
            Region::B1 => "B1",
            Region::B2 => "B2",
            Region::B3 => "B3",
            Region::B4 => "B4",
            Region::B5 => "B5",
            Region::B6 => "B6",
        }
    }

    /// Membership predicate (scope is checked separately).
    pub fn contains(self, s: f64, x: f64) -> bool {
        let in_open = |a: f64, b: f64| s > a && s < b;
        match self {
            Region::A1 => {
                (x > 1.5 && x <= s - 1.0)
                    || ((0.0..=1.5).contains(&x) && x >= 3.0 - s && x < s - 1.5)
            }
            Region::A2 => in_open(2.5, 3.0) && x < 3.0 - s,
            Region::A3 | Region::A4 => {
                let band = s > 2.5 && s <= 3.0 && x >= s - 1.5 && x <= 1.5;
                let above = 4.0 * (s - x).powi(2) > 3.0 * (2.0 * s - 3.0);
                band && (above == (self == Region::A3))
            }
            Region::A5 => x > s - 1.0 && x < s,
            Region::A6 => s >= 3.0 && x < 0.0,
            Region::B1 => {
                (x > 0.5 && x <= s - 2.0)
                    || (s > 2.75 && (0.0..=0.5).contains(&x) && x >= 3.0 - s && x < s - 2.5)
            }
            Region::B2 => {
                in_open(2.75, 3.0)
                    && x >= s - 2.5
                    && x <= 0.5
                    && 4.0 * (s - x - 1.0).powi(2) > 3.0 * (2.0 * s - 3.0)
            }
            Region::B3 => {
                (s > 2.5 && s <= 2.75 && x <= 0.5)
                    || (s > 2.75
                        && s <= 3.0
                        && x >= s - 2.5
                        && x <= 0.5
                        && 4.0 * (s - x - 1.0).powi(2) <= 3.0 * (2.0 * s - 3.0))
            }
            Region::B4 => in_open(2.75, 3.0) && x < 3.0 - s,
            Region::B5 => x > s - 2.0 && x < s - 1.0,
            Region::B6 => s >= 3.0 && x < 0.0,
        }
    }

    /// Exponent formula of the region at `(s, x)` with parameter `eps`
    /// (`ε₀` or `ε₁`; ignored by regions that do not use it).
    pub fn exponent(self, s: f64, x: f64, eps: f64) -> f64 {
        match self {
            Region::A1 | Region::B1 => 1.0,
            Region::A2 => (2.0 * s - 3.0) / (s - x),
            Region::A3 => 2.0 * (s - x) / (3.0 + eps),
            Region::A4 => (2.0 * s - 3.0 - eps) / (2.0 * (s - x)),
            Region::A5 => s - x,
            Region::A6 => s / (s - x),
            Region::B2 => 2.0 * (s - x - 1.0) / (3.0 + eps),
            Region::B3 => (2.0 * s - 3.0 - eps) / (2.0 * (s - x - 1.0)),
            Region::B4 => (2.0 * s - 4.0) / (s - x - 1.0),
            Region::B5 => s - x - 1.0,
            Region::B6 => (s - 1.0) / (s - x - 1.0),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Region {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.name())
    }
}

/// Which of the two exponent maps is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExponentMap {
    /// `γ(s, r)`, regions A1..A6.
    Gamma,
    /// `μ(s, p)`, regions B1..B6.
    Mu,
}

impl ExponentMap {
    pub fn regions(self) -> [Region; 6] {
        match self {
            ExponentMap::Gamma => Region::GAMMA,
            ExponentMap::Mu => Region::MU,
        }
    }

    /// Name of the second coordinate.
    pub fn coordinate(self) -> &'static str {
        match self {
            ExponentMap::Gamma => "r",
            ExponentMap::Mu => "p",
        }
    }

    /// Upper limit of the second coordinate: `s` for `γ`, `s − 1` for `μ`.
    pub fn upper(self, s: f64) -> f64 {
        match self {
            ExponentMap::Gamma => s,
            ExponentMap::Mu => s - 1.0,
        }
    }

    /// Open interval `(0, b)` admissible for the parameter at `s`, or
    /// `None` when the parameter is unconstrained.
    pub fn eps_bound(self, s: f64) -> Option<f64> {
        match self {
            ExponentMap::Gamma if s <= 3.0 => Some(2.0 * s - 5.0),
            ExponentMap::Mu if s <= 2.75 => Some(2.0 * s - 5.0),
            ExponentMap::Mu if s <= 3.0 => Some(2.0 * s - 5.5),
            _ => None,
        }
    }

    /// `min(0.1, b/2)` for a constrained parameter, else `0.1`.
    pub fn default_eps(self, s: f64) -> f64 {
        match self.eps_bound(s) {
            Some(b) => (0.5 * b).min(0.1),
            None => 0.1,
        }
    }

    fn check_scope(self, s: f64, x: f64) -> Result<()> {
        if !(s.is_finite() && x.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite point (s, {}) = ({s}, {x})",
                self.coordinate()
            )));
        }
        let out = |predicate: String| Error::OutOfScope {
            s,
            index: self.coordinate(),
            value: x,
            predicate,
        };
        if s <= 2.5 {
            return Err(out("requires s > 5/2".into()));
        }
        if x >= self.upper(s) {
            return Err(out(match self {
                ExponentMap::Gamma => "requires r < s".into(),
                ExponentMap::Mu => "requires p < s - 1".into(),
            }));
        }
        Ok(())
    }

    fn resolve_eps(self, s: f64, eps: Option<f64>) -> Result<f64> {
        let Some(eps) = eps else {
            return Ok(self.default_eps(s));
        };
        let name = match self {
            ExponentMap::Gamma => "eps0",
            ExponentMap::Mu => "eps1",
        };
        match self.eps_bound(s) {
            Some(b) if !(eps > 0.0 && eps < b) => Err(Error::InvalidParameter(format!(
                "{name} = {eps} must lie in (0, {b}) at s = {s}"
            ))),
            _ => Ok(eps),
        }
    }

    /// Every region whose predicate holds at `(s, x)`, in index order.
    pub fn containing(self, s: f64, x: f64) -> Vec<Region> {
        self.regions()
            .into_iter()
            .filter(|r| r.contains(s, x))
            .collect()
    }

    pub fn classify(self, s: f64, x: f64, eps: Option<f64>) -> Result<RegionResult> {
        self.check_scope(s, x)?;
        let eps_param = self.resolve_eps(s, eps)?;
        let region = self
            .regions()
            .into_iter()
            .find(|r| r.contains(s, x))
            .ok_or_else(|| {
                Error::InvalidParameter(format!("no region contains (s, x) = ({s}, {x})"))
            })?;
        Ok(RegionResult {
            region,
            exponent: region.exponent(s, x, eps_param),
            eps_param,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegionResult {
    pub region: Region,
    pub exponent: f64,
    /// The `ε₀` or `ε₁` the exponent was evaluated with.
    pub eps_param: f64,
}

/// Classifies `(s, r)` into A1..A6. `eps0 = None` takes the default.
pub fn classify_gamma(s: f64, r: f64, eps0: Option<f64>) -> Result<RegionResult> {
    ExponentMap::Gamma.classify(s, r, eps0)
}

/// Classifies `(s, p)` into B1..B6. `eps1 = None` takes the default.
pub fn classify_mu(s: f64, p: f64, eps1: Option<f64>) -> Result<RegionResult> {
    ExponentMap::Mu.classify(s, p, eps1)
}

/// One classified grid point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridPoint {
    pub s: f64,
    pub x: f64,
    pub result: RegionResult,
}

/// Cell-centred `n_s × n_x` grid over `[s_min, s_max] × [x_min, x_max]`,
/// keeping only points in scope.
pub fn classification_grid(
    map: ExponentMap,
    (s_min, s_max): (f64, f64),
    (x_min, x_max): (f64, f64),
    (n_s, n_x): (usize, usize),
) -> Result<Vec<GridPoint>> {
    let ordered = |lo: f64, hi: f64| lo < hi;
    if n_s == 0 || n_x == 0 || !ordered(s_min, s_max) || !ordered(x_min, x_max) {
        return Err(Error::InvalidParameter("empty classification grid".into()));
    }
    let mut out = Vec::with_capacity(n_s * n_x);
    for i in 0..n_s {
        let s = s_min + (s_max - s_min) * (i as f64 + 0.5) / n_s as f64;
        for j in 0..n_x {
            let x = x_min + (x_max - x_min) * (j as f64 + 0.5) / n_x as f64;
            if let Ok(result) = map.classify(s, x, None) {
                out.push(GridPoint { s, x, result });
            }
        }
    }
    Ok(out)
}

/// A boundary line across which the exponent map is continuous, either
/// exactly or in the limit of a vanishing `ε` parameter.
#[derive(Clone, Debug)]
pub struct Boundary {
    pub map: ExponentMap,
    pub name: &'static str,
    /// Points `(s, x)` on the line, with the unit normal `(ns, nx)` along
    /// which the audit straddles it.
    pub samples: Vec<(f64, f64)>,
    pub normal: (f64, f64),
}

fn parabola(s: f64, shift: f64) -> (f64, f64) {
    (s, s - shift - (3.0 * (2.0 * s - 3.0)).sqrt() / 2.0)
}

/// The continuity lines of both maps with sample points chosen so that a
/// straddle of up to `0.05` stays inside the two adjacent regions.
pub fn continuity_boundaries() -> Vec<Boundary> {
    use ExponentMap::{Gamma, Mu};
    let along_x = (0.0, 1.0);
    let along_s = (1.0, 0.0);
    let b = |map, name, samples: Vec<(f64, f64)>, normal| Boundary {
        map,
        name,
        samples,
        normal,
    };
    vec![
        b(
            Gamma,
            "s = 3, r < 0",
            vec![(3.0, -0.5), (3.0, -1.0), (3.0, -2.0)],
            along_s,
        ),
        b(
            Gamma,
            "r = 0, s >= 3",
            vec![(3.0, 0.0), (3.5, 0.0), (4.5, 0.0)],
            along_x,
        ),
        b(
            Gamma,
            "r = 3 - s",
            vec![(2.6, 0.4), (2.75, 0.25), (2.9, 0.1)],
            along_x,
        ),
        b(
            Gamma,
            "r = s - 1",
            vec![(2.6, 1.6), (2.75, 1.75), (3.5, 2.5)],
            along_x,
        ),
        b(
            Gamma,
            "r = s - 3/2",
            vec![(2.6, 1.1), (2.75, 1.25)],
            along_x,
        ),
        b(Gamma, "r = 3/2", vec![(2.6, 1.5), (2.75, 1.5)], along_x),
        b(
            Gamma,
            "4(s - r)^2 = 3(2s - 3)",
            vec![parabola(2.6, 0.0), parabola(2.75, 0.0)],
            along_x,
        ),
        b(
            Mu,
            "s = 3, p < 0",
            vec![(3.0, -0.5), (3.0, -1.0), (3.0, -2.0)],
            along_s,
        ),
        b(
            Mu,
            "p = 0, s >= 3",
            vec![(3.0, 0.0), (3.5, 0.0), (4.5, 0.0)],
            along_x,
        ),
        b(Mu, "p = 3 - s", vec![(2.8, 0.2), (2.9, 0.1)], along_x),
        b(
            Mu,
            "p = s - 2",
            vec![(2.6, 0.6), (2.9, 0.9), (3.5, 1.5)],
            along_x,
        ),
        b(Mu, "p = s - 5/2", vec![(2.8, 0.3), (2.85, 0.35)], along_x),
        b(
            Mu,
            "p = 1/2",
            vec![(2.6, 0.5), (2.7, 0.5), (2.8, 0.5)],
            along_x,
        ),
        b(
            Mu,
            "4(s - p - 1)^2 = 3(2s - 3)",
            vec![parabola(2.8, 1.0), parabola(2.85, 1.0)],
            along_x,
        ),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRow {
    pub map: ExponentMap,
    pub boundary: &'static str,
    pub s: f64,
    pub x: f64,
    pub below: Region,
    pub above: Region,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub eps: f64,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    /// Largest gap per boundary, in the order of [`continuity_boundaries`].
    pub fn max_gaps(&self) -> Vec<(&'static str, ExponentMap, f64)> {
        let mut out: Vec<(&'static str, ExponentMap, f64)> = Vec::new();
        for row in &self.rows {
            match out
                .iter_mut()
                .find(|(name, map, _)| *name == row.boundary && *map == row.map)
            {
                Some(entry) => entry.2 = entry.2.max(row.gap),
                None => out.push((row.boundary, row.map, row.gap)),
            }
        }
        out
    }
}

/// Evaluates the exponent at distance `eps` on both sides of every
/// continuity line, with the `ε` parameter also set to `eps`.
pub fn exponent_continuity_audit(eps: f64) -> Result<AuditReport> {
    if !(eps > 0.0 && eps <= 0.05) {
        return Err(Error::InvalidParameter(format!(
            "audit distance must lie in (0, 0.05], got {eps}"
        )));
    }
    let mut rows = Vec::new();
    for boundary in continuity_boundaries() {
        let (ns, nx) = boundary.normal;
        for &(s, x) in &boundary.samples {
            let side = |sign: f64| {
                let (ps, px) = (s + sign * eps * ns, x + sign * eps * nx);
                let param = boundary.map.eps_bound(ps).map(|_| eps);
                boundary.map.classify(ps, px, param)
            };
            let (lo, hi) = (side(-1.0)?, side(1.0)?);
            rows.push(AuditRow {
                map: boundary.map,
                boundary: boundary.name,
                s,
                x,
                below: lo.region,
                above: hi.region,
                gap: (lo.exponent - hi.exponent).abs(),
            });
        }
    }
    Ok(AuditReport { eps, rows })
}
