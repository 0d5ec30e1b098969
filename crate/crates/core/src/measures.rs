//! Base measures, sampled beta-process paths and Bernoulli-process draws.
//!
//! A measure's "CDF" is `B((-inf, x])`, not normalized, so for a base measure
//! of mass `gamma` it climbs from 0 to `gamma`.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{parameter, Error, Result};
use crate::randgen::RandomStream;

/// Shape of a continuous base measure, as a normalized CDF.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    Uniform { lo: f64, hi: f64 },
    /// Linear interpolation between `(x, F(x))` knots, `F` rising from 0 to 1.
    PiecewiseLinear { knots: Vec<(f64, f64)> },
}

impl Profile {
    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(parameter(format!("uniform support needs lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Profile::Uniform { lo, hi })
    }

    /// Builds a piecewise-linear CDF; the values are rescaled so the last knot is 1.
    pub fn piecewise_linear(mut knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(parameter("a piecewise-linear CDF needs at least two knots"));
        }
        if knots.iter().any(|(x, f)| !x.is_finite() || !f.is_finite()) {
            return Err(parameter("CDF knots must be finite"));
        }
        if knots.windows(2).any(|w| !(w[1].0 > w[0].0) || w[1].1 < w[0].1) {
            return Err(parameter("CDF knots need increasing x and nondecreasing F"));
        }
        let (first, last) = (knots[0].1, knots[knots.len() - 1].1);
        if first != 0.0 || !(last > 0.0) {
            return Err(parameter("CDF knots must start at F = 0 and end above 0"));
        }
        for k in &mut knots {
            k.1 /= last;
        }
        Ok(Profile::PiecewiseLinear { knots })
    }

    /// Reads a two-column CSV of `x,F(x)` knots. A header row is allowed.
    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut knots = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            let parsed = match cols.as_slice() {
                [x, f] => x.parse::<f64>().and_then(|x| f.parse::<f64>().map(|f| (x, f))),
                _ => return Err(Error::Format(format!("line {}: expected two columns", i + 1))),
            };
            match parsed {
                Ok(k) => knots.push(k),
                Err(_) if i == 0 => continue,
                Err(e) => return Err(Error::Format(format!("line {}: {e}", i + 1))),
            }
        }
        Self::piecewise_linear(knots)
    }

    pub fn support(&self) -> (f64, f64) {
        match self {
            Profile::Uniform { lo, hi } => (*lo, *hi),
            Profile::PiecewiseLinear { knots } => (knots[0].0, knots[knots.len() - 1].0),
        }
    }

    /// Normalized CDF.
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            Profile::Uniform { lo, hi } => ((x - lo) / (hi - lo)).clamp(0.0, 1.0),
            Profile::PiecewiseLinear { knots } => {
                if x <= knots[0].0 {
                    return 0.0;
                }
                if x >= knots[knots.len() - 1].0 {
                    return 1.0;
                }
                let i = knots.partition_point(|k| k.0 <= x);
                let (x0, f0) = knots[i - 1];
                let (x1, f1) = knots[i];
                f0 + (f1 - f0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// Generalized inverse `inf { x : F(x) >= u }` for `u` in `[0, 1]`.
    pub fn quantile(&self, u: f64) -> f64 {
        match self {
            Profile::Uniform { lo, hi } => {
                if *lo == 0.0 && *hi == 1.0 {
                    u
                } else {
                    lo + u * (hi - lo)
                }
            }
            Profile::PiecewiseLinear { knots } => {
                let i = knots.partition_point(|k| k.1 < u);
                if i == 0 {
                    return knots[0].0;
                }
                if i >= knots.len() {
                    return knots[knots.len() - 1].0;
                }
                let (x0, f0) = knots[i - 1];
                let (x1, f1) = knots[i];
                x0 + (x1 - x0) * (u - f0) / (f1 - f0)
            }
        }
    }
}

/// A continuous finite measure: total mass times a normalized profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousBase {
    pub mass: f64,
    pub profile: Profile,
}

/// A fixed atom of a mixed base measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedAtom {
    pub loc: f64,
    pub mass: f64,
}

/// Base measure `B0` of a beta process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BaseMeasure {
    Continuous(ContinuousBase),
    /// Continuous part plus atoms; arises as the posterior base after observations.
    Mixed { continuous: ContinuousBase, atoms: Vec<FixedAtom> },
}

/// Uniform measure on `[0, 1]` with mass 1, so `B0(x) = x`.
pub fn base_uniform01() -> BaseMeasure {
    BaseMeasure::Continuous(ContinuousBase { mass: 1.0, profile: Profile::Uniform { lo: 0.0, hi: 1.0 } })
}

impl BaseMeasure {
    pub fn continuous(mass: f64, profile: Profile) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(parameter(format!("base mass must be positive, got {mass}")));
        }
        Ok(BaseMeasure::Continuous(ContinuousBase { mass, profile }))
    }

    pub fn continuous_part(&self) -> &ContinuousBase {
        match self {
            BaseMeasure::Continuous(c) => c,
            BaseMeasure::Mixed { continuous, .. } => continuous,
        }
    }

    pub fn atoms(&self) -> &[FixedAtom] {
        match self {
            BaseMeasure::Continuous(_) => &[],
            BaseMeasure::Mixed { atoms, .. } => atoms,
        }
    }

    pub fn is_continuous(&self) -> bool {
        matches!(self, BaseMeasure::Continuous(_))
    }

    /// Total mass `gamma`.
    pub fn mass(&self) -> f64 {
        self.continuous_part().mass + self.atoms().iter().map(|a| a.mass).sum::<f64>()
    }

    pub fn support(&self) -> (f64, f64) {
        let (mut lo, mut hi) = self.continuous_part().profile.support();
        for a in self.atoms() {
            lo = lo.min(a.loc);
            hi = hi.max(a.loc);
        }
        (lo, hi)
    }

    /// `B0((-inf, x])`.
    pub fn cdf(&self, x: f64) -> f64 {
        let cont = self.continuous_part();
        let atoms: f64 = self.atoms().iter().filter(|a| a.loc <= x).map(|a| a.mass).sum();
        cont.mass * cont.profile.cdf(x) + atoms
    }

    /// `inf { x : cdf(x) >= u * mass }` for `u` in `[0, 1]`.
    pub fn quantile(&self, u: f64) -> f64 {
        if self.is_continuous() {
            return self.continuous_part().profile.quantile(u);
        }
        let target = u * self.mass();
        let (mut lo, mut hi) = self.support();
        if self.cdf(lo) >= target {
            return lo;
        }
        // Bisection on the (right-continuous, nondecreasing) CDF.
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cdf(mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// A location drawn from the normalized continuous part.
    pub fn sample_location(&self, stream: &mut RandomStream) -> f64 {
        self.continuous_part().profile.quantile(stream.uniform())
    }
}

/// Prior (or posterior) parameters of a beta process: concentration and base measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaProcessParams {
    pub c: f64,
    pub base: BaseMeasure,
}

impl BetaProcessParams {
    pub fn new(c: f64, base: BaseMeasure) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(parameter(format!("concentration must be positive, got {c}")));
        }
        if !(base.mass() > 0.0) {
            return Err(parameter("base measure must have positive mass"));
        }
        Ok(Self { c, base })
    }

    /// `BP(c, gamma * U[0, 1])`.
    pub fn uniform(c: f64, gamma: f64) -> Result<Self> {
        Self::new(c, BaseMeasure::continuous(gamma, Profile::Uniform { lo: 0.0, hi: 1.0 })?)
    }

    pub fn mass(&self) -> f64 {
        self.base.mass()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub loc: f64,
    pub w: f64,
}

/// A sampled path `Σ w_i δ_{loc_i}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AtomicMeasure {
    pub atoms: Vec<Atom>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<Atom>) -> Self {
        Self { atoms }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.atoms.iter().map(|a| a.w)
    }

    pub fn locations(&self) -> impl Iterator<Item = f64> + '_ {
        self.atoms.iter().map(|a| a.loc)
    }

    pub fn total_mass(&self) -> f64 {
        self.weights().sum()
    }

    /// `B((-inf, x])`.
    pub fn eval(&self, x: f64) -> f64 {
        self.atoms.iter().filter(|a| a.loc <= x).map(|a| a.w).sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// CSV with header `loc,w`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for a in &self.atoms {
            w.serialize(a)?;
        }
        if self.atoms.is_empty() {
            w.write_record(["loc", "w"])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let atoms = r.deserialize().collect::<std::result::Result<Vec<Atom>, _>>()?;
        Ok(Self { atoms })
    }
}

/// `path((-inf, x])`.
pub fn atomic_eval(path: &AtomicMeasure, x: f64) -> f64 {
    path.eval(x)
}

/// A Bernoulli-process realization: the set of atom locations whose coin came up heads.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BernoulliDraw {
    pub locations: Vec<f64>,
}

impl BernoulliDraw {
    /// Builds a draw, keeping each location once.
    pub fn new(mut locations: Vec<f64>) -> Self {
        locations.sort_by(f64::total_cmp);
        locations.dedup();
        Self { locations }
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }
}

/// Posterior base measure after `m` Bernoulli-process observations:
/// `(c / (c + m)) B0 + (1 / (c + m)) Σ X_i`.
///
/// Locations are grouped by exact equality: draws reuse the path's atom
/// locations verbatim, so there is no tolerance to tune.
pub fn mix_base(prior: &BetaProcessParams, draws: &[BernoulliDraw]) -> Result<BaseMeasure> {
    let BaseMeasure::Continuous(cont) = &prior.base else {
        return Err(parameter("mix_base needs a prior with a continuous base measure"));
    };
    if draws.is_empty() {
        return Ok(prior.base.clone());
    }
    let m = draws.len() as f64;
    let denom = prior.c + m;
    let mut seen: Vec<f64> = draws.iter().flat_map(|d| BernoulliDraw::new(d.locations.clone()).locations).collect();
    seen.sort_by(f64::total_cmp);
    let mut atoms: Vec<FixedAtom> = Vec::new();
    for chunk in seen.chunk_by(|a, b| a == b) {
        atoms.push(FixedAtom { loc: chunk[0], mass: chunk.len() as f64 / denom });
    }
    Ok(BaseMeasure::Mixed {
        continuous: ContinuousBase { mass: prior.c * cont.mass / denom, profile: cont.profile.clone() },
        atoms,
    })
}
