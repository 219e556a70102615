//! Quasi-metrics, ball growth, Riesz kernels and the fractional integral.
//!
//! The fractional integral of order `α` is convolution with the kernel
//! `ρ(e, ·)^{α-N}`, where `ρ` is a quasi-metric and `N` the ball-growth
//! exponent. Nothing ties `ρ` to the hypergroup operation; the kernel is
//! plain function data. A measure with `λB(e, r) = A·rᴺ` at every stored
//! radius is modelled two ways: synthetic shell spaces (measure only, for
//! weak-norm refinement studies) and radius calibration of an existing
//! hypergroup, which places its elements at the exact radii the cumulative
//! Haar measure dictates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergroup::{HaarWeights, HypergroupTable, SampledFunction};

/// Symmetric nonnegative distance matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiMetric {
    n: usize,
    dist: Vec<f64>,
}

/// Validation outcome: the minimal quasi-triangle constant from an
/// exhaustive triple scan, plus exact checks of the two pointwise axioms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiMetricReport {
    /// Smallest `c ≥ 1` with `ρ(x,y) ≤ c(ρ(x,z) + ρ(z,y))` for all triples.
    pub quasi_constant: f64,
    /// `ρ(x,y) = 0 ⇔ x = y`, checked exactly.
    pub separation: bool,
    /// `ρ(x,y) = ρ(y,x)`, checked exactly.
    pub symmetry: bool,
    pub pass: bool,
}

impl QuasiMetric {
    pub fn new(matrix: &[Vec<f64>]) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension("distance matrix must be square".into()));
        }
        let dist: Vec<f64> = matrix.iter().flatten().copied().collect();
        if dist.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return Err(Error::NonFinite("distance entry".into()));
        }
        Ok(Self { n, dist })
    }

    /// Metric induced by radii from a center: `ρ(x,y) = max(r_x, r_y)` off
    /// the diagonal. A true metric (constant 1) whenever off-center radii
    /// are positive.
    pub fn from_radii(radii: &[f64]) -> Result<Self> {
        let n = radii.len();
        if radii.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(Error::NonFinite("radius".into()));
        }
        let mut dist = vec![0.0; n * n];
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    dist[x * n + y] = radii[x].max(radii[y]);
                }
            }
        }
        Ok(Self { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.dist[x * self.n + y]
    }

    /// Distances from one element: the radii vector used by Riesz kernels.
    pub fn radii_from(&self, center: usize) -> Vec<f64> {
        (0..self.n).map(|y| self.get(center, y)).collect()
    }

    pub fn validate(&self) -> QuasiMetricReport {
        let n = self.n;
        let mut separation = true;
        let mut symmetry = true;
        for x in 0..n {
            if self.get(x, x) != 0.0 {
                separation = false;
            }
            for y in 0..n {
                if x != y && self.get(x, y) <= 0.0 {
                    separation = false;
                }
                if self.get(x, y) != self.get(y, x) {
                    symmetry = false;
                }
            }
        }
        let mut constant = 1.0_f64;
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let direct = self.get(x, y);
                for z in 0..n {
                    if z == x || z == y {
                        continue;
                    }
                    let via = self.get(x, z) + self.get(z, y);
                    if via > 0.0 {
                        constant = constant.max(direct / via);
                    }
                }
            }
        }
        QuasiMetricReport {
            quasi_constant: constant,
            separation,
            symmetry,
            pass: separation && symmetry,
        }
    }
}

/// Order `α` and ball-growth exponent `N` of a Riesz kernel, `0 < α < N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RieszParams {
    alpha: f64,
    growth_exponent: f64,
}

impl RieszParams {
    pub fn new(alpha: f64, growth_exponent: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < growth_exponent && growth_exponent.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "riesz parameters need 0 < α < N, got α = {alpha}, N = {growth_exponent}"
            )));
        }
        Ok(Self { alpha, growth_exponent })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn growth_exponent(&self) -> f64 {
        self.growth_exponent
    }

    /// The weak-Lebesgue index `N/(N-α)` of the kernel.
    pub fn kernel_weak_index(&self) -> f64 {
        self.growth_exponent / (self.growth_exponent - self.alpha)
    }

    /// Target exponent `r` with `1/r = 1/p − α/N`; requires `α < N/p`.
    pub fn target_exponent(&self, p: f64) -> Result<f64> {
        let inv_r = 1.0 / p - self.alpha / self.growth_exponent;
        if inv_r <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "need α < N/p: α = {}, N = {}, p = {p}",
                self.alpha, self.growth_exponent
            )));
        }
        Ok(1.0 / inv_r)
    }
}

/// What to place at the center, where `ρ(e,e)^{α-N}` is singular: zero keeps
/// every verified bound intact for the kernel actually supplied; `Cap`
/// clamps to the value at the smallest positive radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterPolicy {
    Zero,
    Cap,
}

/// Kernel `k(y) = ρ(e,y)^{α-N}` from a radii vector. `center` marks the
/// element at radius 0 (absent for shell spaces); all other radii must be
/// positive.
pub fn riesz_kernel(
    radii: &[f64],
    center: Option<usize>,
    params: &RieszParams,
    policy: CenterPolicy,
) -> Result<SampledFunction> {
    let exponent = params.alpha() - params.growth_exponent();
    let mut min_positive = f64::INFINITY;
    for (i, &r) in radii.iter().enumerate() {
        if Some(i) == center {
            continue;
        }
        if r <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "radius {r} at element {i} must be positive away from the center"
            )));
        }
        min_positive = min_positive.min(r);
    }
    let values: Vec<f64> = radii
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            if Some(i) == center {
                match policy {
                    CenterPolicy::Zero => 0.0,
                    CenterPolicy::Cap => min_positive.powf(exponent),
                }
            } else {
                r.powf(exponent)
            }
        })
        .collect();
    SampledFunction::new(values)
}

/// `I_α f = k ∗ f`: the fractional integral as convolution with a Riesz
/// kernel.
pub fn riesz_potential(
    table: &HypergroupTable,
    haar: &HaarWeights,
    f: &SampledFunction,
    kernel: &SampledFunction,
) -> Result<SampledFunction> {
    table.convolve(haar, kernel, f)
}

/// A weighted set of radii with exact ball growth `λB(e, r_i) = A·r_iᴺ` at
/// every stored radius.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSpace {
    radii: Vec<f64>,
    weights: Vec<f64>,
    growth_constant: f64,
    growth_exponent: f64,
}

impl GrowthSpace {
    /// Synthetic shell space over a strictly increasing positive radius
    /// grid: one element per radius with weight `A(r_iᴺ − r_{i-1}ᴺ)`
    /// (`A·r_1ᴺ` innermost), so cumulative measure telescopes to `A·r_iᴺ`.
    /// Carries measure data only; nothing is convolved on it.
    pub fn synth(growth_constant: f64, growth_exponent: f64, grid: &[f64]) -> Result<Self> {
        if !(growth_constant > 0.0 && growth_exponent > 0.0) {
            return Err(Error::InvalidParam("growth parameters must be positive".into()));
        }
        if grid.len() < 2 {
            return Err(Error::InvalidParam("radius grid needs at least 2 points".into()));
        }
        if grid[0] <= 0.0 || grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParam(
                "radius grid must be positive and strictly increasing".into(),
            ));
        }
        let mut weights = Vec::with_capacity(grid.len());
        let mut prev = 0.0;
        for &r in grid {
            let ball = growth_constant * r.powf(growth_exponent);
            weights.push(ball - prev);
            prev = ball;
        }
        Ok(Self {
            radii: grid.to_vec(),
            weights,
            growth_constant,
            growth_exponent,
        })
    }

    /// Radii for the elements of an existing hypergroup so that closed balls
    /// around `center` have measure exactly `A·rᴺ`: element `i` (in measure
    /// order: center first, then by index) sits at `r = (Λ_i/A)^{1/N}` where
    /// `Λ_i` is the cumulative Haar weight.
    pub fn calibrate(
        haar: &HaarWeights,
        center: usize,
        growth_constant: f64,
        growth_exponent: f64,
    ) -> Result<Self> {
        if !(growth_constant > 0.0 && growth_exponent > 0.0) {
            return Err(Error::InvalidParam("growth parameters must be positive".into()));
        }
        if center >= haar.len() {
            return Err(Error::InvalidParam(format!("center {center} out of range")));
        }
        let mut radii = vec![0.0; haar.len()];
        let mut cumulative = haar.get(center);
        for (i, slot) in radii.iter_mut().enumerate() {
            if i == center {
                continue;
            }
            cumulative += haar.get(i);
            *slot = (cumulative / growth_constant).powf(1.0 / growth_exponent);
        }
        Ok(Self {
            radii,
            weights: haar.as_slice().to_vec(),
            growth_constant,
            growth_exponent,
        })
    }

    /// Rebuild from serialized parts, revalidating the ball-growth law at
    /// every stored positive radius (relative tolerance 1e-9).
    pub fn from_parts(
        radii: Vec<f64>,
        weights: Vec<f64>,
        growth_constant: f64,
        growth_exponent: f64,
    ) -> Result<Self> {
        if radii.len() != weights.len() || radii.is_empty() {
            return Err(Error::Dimension("growth space radii/weights".into()));
        }
        if !(growth_constant > 0.0 && growth_exponent > 0.0) {
            return Err(Error::InvalidParam("growth parameters must be positive".into()));
        }
        if radii.iter().any(|r| !r.is_finite() || *r < 0.0)
            || weights.iter().any(|w| !w.is_finite() || *w <= 0.0)
        {
            return Err(Error::InvalidParam(
                "radii must be nonnegative and weights positive".into(),
            ));
        }
        let space = Self { radii, weights, growth_constant, growth_exponent };
        for &r in space.radii.iter().filter(|r| **r > 0.0) {
            let ball = space.ball_measure(r);
            let law = growth_constant * r.powf(growth_exponent);
            if (ball - law).abs() > 1e-9 * law.abs().max(1.0) {
                return Err(Error::InvalidParam(format!(
                    "ball measure {ball} at radius {r} violates A·r^N = {law}"
                )));
            }
        }
        Ok(space)
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn growth_constant(&self) -> f64 {
        self.growth_constant
    }

    pub fn growth_exponent(&self) -> f64 {
        self.growth_exponent
    }

    /// The measure as weights usable by the norm machinery.
    pub fn haar(&self) -> HaarWeights {
        HaarWeights::new(self.weights.clone()).expect("growth weights are positive")
    }

    /// Measure of the closed ball of radius `r` around the center.
    pub fn ball_measure(&self, r: f64) -> f64 {
        self.radii
            .iter()
            .zip(&self.weights)
            .filter(|(radius, _)| **radius <= r)
            .map(|(_, w)| w)
            .sum()
    }

    /// `(N/α)·A^{(N-α)/N}`: the weak norm of the power kernel in the
    /// continuum this space discretizes.
    pub fn kernel_weak_norm_target(&self, alpha: f64) -> f64 {
        let n = self.growth_exponent;
        (n / alpha) * self.growth_constant.powf((n - alpha) / n)
    }
}

/// Geometric grid of `m` radii from `lo` to `hi`.
pub fn geometric_grid(lo: f64, hi: f64, m: usize) -> Result<Vec<f64>> {
    if m < 2 || !lo.is_finite() || lo <= 0.0 || !hi.is_finite() || hi <= lo {
        return Err(Error::InvalidParam("geometric grid needs m ≥ 2, 0 < lo < hi".into()));
    }
    let ratio = (hi / lo).powf(1.0 / (m - 1) as f64);
    Ok((0..m)
        .map(|i| {
            if i + 1 == m {
                hi
            } else {
                lo * ratio.powi(i as i32)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, Family};
    use crate::hypergroup::compute_haar;
    use crate::norms::{lorentz_norm, LorentzParams};
    use approx::assert_relative_eq;

    #[test]
    fn cycle_path_metric_is_a_metric() {
        let n = 6usize;
        let matrix: Vec<Vec<f64>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let d = (x as i64 - y as i64).unsigned_abs() as usize;
                        d.min(n - d) as f64
                    })
                    .collect()
            })
            .collect();
        let metric = QuasiMetric::new(&matrix).unwrap();
        let report = metric.validate();
        assert!(report.pass);
        assert_eq!(report.quasi_constant, 1.0);
    }

    #[test]
    fn squared_metric_has_constant_at_most_two() {
        let n = 6usize;
        let matrix: Vec<Vec<f64>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let d = (x as i64 - y as i64).unsigned_abs() as usize;
                        (d.min(n - d) as f64).powi(2)
                    })
                    .collect()
            })
            .collect();
        let report = QuasiMetric::new(&matrix).unwrap().validate();
        assert!(report.pass);
        assert!(report.quasi_constant > 1.0 && report.quasi_constant <= 2.0);
    }

    #[test]
    fn zero_off_diagonal_fails_separation() {
        let matrix = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
        let report = QuasiMetric::new(&matrix).unwrap().validate();
        assert!(!report.separation);
        assert!(!report.pass);
    }

    #[test]
    fn kernel_direct_power_evaluation() {
        let params = RieszParams::new(1.0, 2.0).unwrap();
        let k = riesz_kernel(&[0.0, 1.0, 2.0], Some(0), &params, CenterPolicy::Zero).unwrap();
        assert_eq!(k.values(), &[0.0, 1.0, 0.5]);
        let capped = riesz_kernel(&[0.0, 1.0, 2.0], Some(0), &params, CenterPolicy::Cap).unwrap();
        assert_eq!(capped.values(), &[1.0, 1.0, 0.5]);
    }

    #[test]
    fn kernel_near_diagonal_exponent() {
        // α → N sends the exponent to 0 and the kernel to 1 off-center
        let params = RieszParams::new(2.0 - 1e-9, 2.0).unwrap();
        let k = riesz_kernel(&[0.0, 3.0, 7.0], Some(0), &params, CenterPolicy::Zero).unwrap();
        for &v in &k.values()[1..] {
            assert_relative_eq!(v, 1.0, max_relative = 1e-7);
        }
        // equal radii give a constant kernel off-center
        let params = RieszParams::new(0.5, 1.5).unwrap();
        let k = riesz_kernel(&[0.0, 2.0, 2.0], Some(0), &params, CenterPolicy::Zero).unwrap();
        assert_eq!(k.values()[1], k.values()[2]);
    }

    #[test]
    fn kernel_rejects_nonpositive_radius_off_center() {
        let params = RieszParams::new(1.0, 2.0).unwrap();
        assert!(riesz_kernel(&[0.0, 0.0, 2.0], Some(0), &params, CenterPolicy::Zero).is_err());
    }

    #[test]
    fn potential_of_identity_density_is_kernel() {
        let table = build_family(&Family::OrbitNegation(2)).unwrap();
        let haar = compute_haar(&table).unwrap();
        let params = RieszParams::new(1.0, 2.0).unwrap();
        let kernel = riesz_kernel(&[0.0, 1.0, 2.0], Some(0), &params, CenterPolicy::Zero).unwrap();
        let unit = SampledFunction::new(vec![1.0, 0.0, 0.0]).unwrap();
        let pot = riesz_potential(&table, &haar, &unit, &kernel).unwrap();
        for (a, b) in pot.values().iter().zip(kernel.values()) {
            assert_relative_eq!(a, b, max_relative = 1e-14, epsilon = 1e-15);
        }
        let zero = SampledFunction::zero(3);
        let pot = riesz_potential(&table, &haar, &zero, &kernel).unwrap();
        assert!(pot.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn potential_matches_definition_sum() {
        // oracle: the definition Σ_y T^x k(y) f(y~) w(y) written as an
        // independent double loop
        let table = build_family(&Family::OrbitNegation(2)).unwrap();
        let haar = compute_haar(&table).unwrap();
        let params = RieszParams::new(1.0, 2.0).unwrap();
        let kernel = riesz_kernel(&[0.0, 1.0, 2.0], Some(0), &params, CenterPolicy::Zero).unwrap();
        let f = SampledFunction::new(vec![0.0, 1.0, 0.0]).unwrap();
        let pot = riesz_potential(&table, &haar, &f, &kernel).unwrap();
        for x in 0..3 {
            let mut acc = 0.0;
            for y in 0..3 {
                let mut translated = 0.0;
                for z in 0..3 {
                    translated += table.c(x, y, z) * kernel.get(z);
                }
                acc += translated * f.get(table.inv(y)) * haar.get(y);
            }
            assert!((acc - pot.get(x)).abs() <= 1e-12);
        }
    }

    #[test]
    fn synth_space_telescopes() {
        let space = GrowthSpace::synth(1.0, 1.0, &[1.0, 2.0, 4.0]).unwrap();
        assert_eq!(space.weights(), &[1.0, 1.0, 2.0]);
        for (r, ball) in [(1.0, 1.0), (2.0, 2.0), (4.0, 4.0)] {
            assert_eq!(space.ball_measure(r), ball);
        }
        let two = GrowthSpace::synth(3.0, 2.0, &[1.0, 5.0]).unwrap();
        assert_eq!(two.ball_measure(1.0), 3.0);
        assert_relative_eq!(two.ball_measure(5.0), 75.0);
        assert_relative_eq!(two.weights().iter().sum::<f64>(), 75.0);
    }

    #[test]
    fn synth_space_rejects_bad_grids() {
        assert!(GrowthSpace::synth(1.0, 1.0, &[1.0]).is_err());
        assert!(GrowthSpace::synth(1.0, 1.0, &[2.0, 1.0]).is_err());
        assert!(GrowthSpace::synth(1.0, 1.0, &[0.0, 1.0]).is_err());
    }

    #[test]
    fn calibration_gives_exact_ball_growth() {
        let table = build_family(&Family::OrbitNegation(4)).unwrap();
        let haar = compute_haar(&table).unwrap();
        let space = GrowthSpace::calibrate(&haar, 0, 2.0, 1.5).unwrap();
        for (i, &r) in space.radii().iter().enumerate() {
            if i == 0 {
                assert_eq!(r, 0.0);
                continue;
            }
            assert_relative_eq!(space.ball_measure(r), 2.0 * r.powf(1.5), max_relative = 1e-13);
        }
        // the induced max-radius metric is a true metric
        let metric = QuasiMetric::from_radii(space.radii()).unwrap();
        let report = metric.validate();
        assert!(report.pass);
        assert_eq!(report.quasi_constant, 1.0);
    }

    #[test]
    fn calibrated_kernel_weak_norm_below_target() {
        // the discretization always sits under the continuum weak norm
        for family in [Family::Cyclic(9), Family::OrbitNegation(5)] {
            let table = build_family(&family).unwrap();
            let haar = compute_haar(&table).unwrap();
            let space = GrowthSpace::calibrate(&haar, table.identity(), 1.0, 2.0).unwrap();
            let params = RieszParams::new(0.5, 2.0).unwrap();
            let kernel =
                riesz_kernel(space.radii(), Some(table.identity()), &params, CenterPolicy::Zero)
                    .unwrap();
            let weak = lorentz_norm(
                &kernel,
                &haar,
                &LorentzParams::weak(params.kernel_weak_index()).unwrap(),
            );
            let target = space.kernel_weak_norm_target(0.5);
            assert!(weak <= target * (1.0 + 1e-12), "{weak} vs {target}");
        }
    }

    #[test]
    fn kernel_distribution_follows_power_law_at_breakpoints() {
        // on a shell space the kernel's distribution function tracks
        // A·t^{N/(α-N)}: exactly as a left limit at every breakpoint, and
        // within the grid-resolution bound 1 - γ^{-N} right of it
        use crate::step::distribution;
        let (a, n_exp, alpha) = (2.0, 1.5, 0.5);
        let m = 9usize;
        let grid = geometric_grid(1.0, 16.0, m).unwrap();
        let gamma = 16f64.powf(1.0 / (m - 1) as f64);
        let space = GrowthSpace::synth(a, n_exp, &grid).unwrap();
        let params = RieszParams::new(alpha, n_exp).unwrap();
        let kernel = riesz_kernel(space.radii(), None, &params, CenterPolicy::Zero).unwrap();
        let dist = distribution(&kernel, &space.haar());
        let law = |t: f64| a * t.powf(n_exp / (alpha - n_exp));
        let starts = dist.starts();
        let values = dist.values();
        assert_eq!(starts.len(), m + 1);
        let bound = 1.0 - gamma.powf(-n_exp);
        for i in 1..starts.len() {
            let expected = law(starts[i]);
            let left_limit = values[i - 1];
            assert_relative_eq!(left_limit, expected, max_relative = 1e-12);
            if i + 1 < starts.len() {
                let rel = (values[i] - expected).abs() / expected;
                assert!(rel <= bound + 1e-12, "breakpoint {i}: {rel} vs {bound}");
            }
        }
    }

    #[test]
    fn geometric_grid_endpoints() {
        let grid = geometric_grid(1.0, 65536.0, 33).unwrap();
        assert_eq!(grid.len(), 33);
        assert_eq!(grid[0], 1.0);
        assert_eq!(grid[32], 65536.0);
        assert_relative_eq!(grid[16], 256.0, max_relative = 1e-12);
    }
}
