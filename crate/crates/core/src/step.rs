//! Distribution functions, decreasing rearrangements, maximal functions, and
//! the exact piecewise integrals the convolution inequalities are tested
//! against.
//!
//! Everything here is closed-form piecewise arithmetic — no quadrature — so
//! inequality comparisons with constants near 1 see no integration noise.

use crate::error::{Error, Result};
use crate::hypergroup::{HaarWeights, SampledFunction};
use crate::quad::power_integral;

/// Right-continuous, nonincreasing, nonnegative step function on `[0, ∞)`
/// vanishing from its last breakpoint on.
///
/// The function equals `values[i]` on `[starts[i], starts[i+1])` and
/// `values.last() == 0` on the final unbounded piece. Breakpoints are
/// strictly increasing with `starts[0] == 0`, values strictly decreasing;
/// equal levels are merged so the representation is canonical and equality
/// of rearrangements is exact. Both the distribution function `λ_f` and the
/// rearrangement `f*` use this type.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    starts: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(starts: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if starts.is_empty() || starts.len() != values.len() {
            return Err(Error::Dimension(format!(
                "step function with {} breakpoints and {} values",
                starts.len(),
                values.len()
            )));
        }
        if starts[0] != 0.0 {
            return Err(Error::InvalidParam("first breakpoint must be 0".into()));
        }
        if starts.iter().any(|t| !t.is_finite()) || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("step function entry".into()));
        }
        if starts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParam(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if values.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidParam("values must be strictly decreasing".into()));
        }
        if *values.last().unwrap() != 0.0 {
            return Err(Error::InvalidParam("final value must be 0".into()));
        }
        Ok(Self { starts, values })
    }

    pub fn zero() -> Self {
        Self { starts: vec![0.0], values: vec![0.0] }
    }

    pub fn is_zero(&self) -> bool {
        self.values[0] == 0.0
    }

    pub fn starts(&self) -> &[f64] {
        &self.starts
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn pieces(&self) -> usize {
        self.starts.len()
    }

    /// Value at `t ≥ 0` (right-continuous).
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        let idx = match self.starts.partition_point(|s| *s <= t) {
            0 => 0,
            k => k - 1,
        };
        self.values[idx]
    }

    /// `f(0)`; for a rearrangement this is the essential supremum.
    pub fn sup(&self) -> f64 {
        self.values[0]
    }

    /// Last breakpoint: the function vanishes from here on. For a
    /// rearrangement this is the measure of the support.
    pub fn support_end(&self) -> f64 {
        *self.starts.last().unwrap()
    }

    /// `∫_0^∞ f(t) dt`, exact.
    pub fn integral(&self) -> f64 {
        self.tail_integral(0.0)
    }

    /// `∫_t^∞ f(s) ds`, exact.
    pub fn tail_integral(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.starts.len() - 1 {
            let lo = self.starts[i].max(t);
            let hi = self.starts[i + 1];
            if lo < hi {
                acc += self.values[i] * (hi - lo);
            }
        }
        acc
    }

    /// `∫_0^∞ f(t)^p dt`, exact.
    pub fn power_integral(&self, p: f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.starts.len() - 1 {
            acc += self.values[i].powf(p) * (self.starts[i + 1] - self.starts[i]);
        }
        acc
    }

    /// `∫_0^∞ s^{p-1} f(s) ds`, exact; the layer-cake moment.
    pub fn power_moment(&self, p: f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.starts.len() - 1 {
            if self.values[i] != 0.0 {
                acc += self.values[i] * power_integral(p - 1.0, self.starts[i], self.starts[i + 1]);
            }
        }
        acc
    }

    /// Lebesgue measure of `{t : f(t) > s}` for every level, returned as a
    /// step function of `s`. For canonical inputs this is an exact involution
    /// with [`rearrangement`].
    pub fn lebesgue_distribution(&self) -> StepFunction {
        rearrangement_unchecked(self)
    }
}

/// Distribution function `λ_f(s) = Σ { w(x) : |f(x)| > s }`.
///
/// Breakpoints are exactly the distinct nonzero values of `|f|`; ties merge.
pub fn distribution(f: &SampledFunction, haar: &HaarWeights) -> StepFunction {
    debug_assert_eq!(f.len(), haar.len());
    let mut pairs: Vec<(f64, f64)> = f
        .values()
        .iter()
        .zip(haar.as_slice())
        .filter(|(v, _)| **v != 0.0)
        .map(|(v, w)| (v.abs(), *w))
        .collect();
    if pairs.is_empty() {
        return StepFunction::zero();
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    // collapse ties, accumulating class weights from the top
    let mut levels: Vec<(f64, f64)> = Vec::new(); // (value, cumulative weight above)
    let mut cum = 0.0;
    for (v, w) in pairs {
        cum += w;
        match levels.last_mut() {
            Some(last) if last.0 == v => last.1 = cum,
            _ => levels.push((v, cum)),
        }
    }
    // λ_f = cumulative weight of classes strictly above s
    let mut starts = Vec::with_capacity(levels.len() + 1);
    let mut values = Vec::with_capacity(levels.len() + 1);
    starts.push(0.0);
    for j in (0..levels.len()).rev() {
        values.push(levels[j].1);
        starts.push(levels[j].0);
    }
    values.push(0.0);
    StepFunction { starts, values }
}

/// Decreasing rearrangement: the right-continuous generalized inverse
/// `f*(t) = inf { s > 0 : λ_f(s) ≤ t }` of a distribution function.
pub fn rearrangement(dist: &StepFunction) -> StepFunction {
    rearrangement_unchecked(dist)
}

fn rearrangement_unchecked(dist: &StepFunction) -> StepFunction {
    if dist.is_zero() {
        return StepFunction::zero();
    }
    let k = dist.starts.len();
    // value starts[j] on [values[j], values[j-1]) for j = k-1 .. 1, then 0
    let mut starts = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k);
    for j in (1..k).rev() {
        starts.push(dist.values[j]);
        values.push(dist.starts[j]);
    }
    starts.push(dist.values[0]);
    values.push(0.0);
    StepFunction { starts, values }
}

/// Piecewise-linear running integral `I(t) = ∫_0^t f*(s) ds` of a
/// rearrangement, supporting exact evaluation of the maximal function
/// `f**(t) = I(t)/t`.
///
/// Piece `i` covers `[starts[i], starts[i+1])` (the last piece is unbounded)
/// with `I(t) = coeff_a[i] + coeff_b[i]·t`. `I` is continuous, nondecreasing
/// and concave; `f**` is nonincreasing and continuous on `(0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalFunction {
    starts: Vec<f64>,
    coeff_a: Vec<f64>,
    coeff_b: Vec<f64>,
    total_mass: f64,
}

/// Maximal function of a rearrangement, exact.
pub fn maximal(fstar: &StepFunction) -> MaximalFunction {
    let k = fstar.starts.len();
    let mut starts = Vec::with_capacity(k);
    let mut coeff_a = Vec::with_capacity(k);
    let mut coeff_b = Vec::with_capacity(k);
    let mut integral_so_far = 0.0;
    for i in 0..k {
        let t = fstar.starts[i];
        let v = fstar.values[i];
        starts.push(t);
        coeff_b.push(v);
        coeff_a.push(integral_so_far - v * t);
        if i + 1 < k {
            integral_so_far += v * (fstar.starts[i + 1] - t);
        }
    }
    MaximalFunction { starts, coeff_a, coeff_b, total_mass: integral_so_far }
}

impl MaximalFunction {
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn starts(&self) -> &[f64] {
        &self.starts
    }

    /// Affine pieces `(start, a, b)` with `I(t) = a + b·t` from `start` to the
    /// next piece; the final piece extends to ∞ with slope 0.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.starts.len()).map(|i| (self.starts[i], self.coeff_a[i], self.coeff_b[i]))
    }

    fn piece_index(&self, t: f64) -> usize {
        match self.starts.partition_point(|s| *s <= t) {
            0 => 0,
            k => k - 1,
        }
    }

    /// `I(t) = ∫_0^t f*(s) ds`, exact.
    pub fn integral_at(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        let i = self.piece_index(t);
        self.coeff_a[i] + self.coeff_b[i] * t
    }

    /// `f**(t) = I(t)/t` for `t > 0`, extended at `t = 0` by its limit
    /// `f*(0)`.
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        if t == 0.0 {
            return self.coeff_b[0];
        }
        self.integral_at(t) / t
    }

    /// `f**(0+) = f*(0)`, the essential supremum.
    pub fn sup(&self) -> f64 {
        self.coeff_b[0]
    }
}

/// `∫_t^∞ f(s) g(s) ds` for two step functions: products of constants over
/// the merged breakpoint grid, in closed form.
pub fn tail_product_star(f: &StepFunction, g: &StepFunction, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    let end = f.support_end().min(g.support_end());
    if t >= end {
        return 0.0;
    }
    let mut grid: Vec<f64> = f
        .starts
        .iter()
        .chain(g.starts.iter())
        .copied()
        .filter(|s| *s > t && *s < end)
        .collect();
    grid.push(t);
    grid.push(end);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut acc = 0.0;
    for w in grid.windows(2) {
        acc += f.eval(w[0]) * g.eval(w[0]) * (w[1] - w[0]);
    }
    acc
}

/// `∫_t^∞ f**(s) g**(s) ds`: per merged piece the integrand is
/// `(a + b·s)(c + d·s)/s²` with antiderivative `b·d·s + (a·d + b·c)·ln s − a·c/s`;
/// beyond both supports the tail is `m_f·m_g / s²`, integrating to
/// `m_f·m_g / t'`. Divergence (only possible at `t = 0` against nonzero
/// constant terms) is signalled as `+∞`, not an error.
pub fn tail_product_maximal(f: &MaximalFunction, g: &MaximalFunction, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    if f.total_mass == 0.0 || g.total_mass == 0.0 {
        return 0.0;
    }
    let tail_start = f.support_end().max(g.support_end()).max(t);
    let mut grid: Vec<f64> = f
        .starts
        .iter()
        .chain(g.starts.iter())
        .copied()
        .filter(|s| *s > t && *s < tail_start)
        .collect();
    grid.push(t);
    grid.push(tail_start);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut acc = 0.0;
    for w in grid.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let fi = f.piece_index(lo);
        let gi = g.piece_index(lo);
        let (a, b) = (f.coeff_a[fi], f.coeff_b[fi]);
        let (c, d) = (g.coeff_a[gi], g.coeff_b[gi]);
        let cross = a * d + b * c;
        let antideriv = |s: f64| b * d * s + cross * s.ln() - a * c / s;
        if lo == 0.0 && (cross != 0.0 || a * c != 0.0) {
            return f64::INFINITY;
        }
        if lo == 0.0 {
            acc += b * d * hi; // pure slope product through the origin
        } else {
            acc += antideriv(hi) - antideriv(lo);
        }
    }
    // joint tail: both running integrals equal their total masses
    acc += f.total_mass * g.total_mass / tail_start;
    acc
}

impl MaximalFunction {
    fn support_end(&self) -> f64 {
        *self.starts.last().unwrap()
    }
}

/// Nonnegative piecewise-constant function on `(0, ∞)` with bounded support,
/// no monotonicity required. Hardy's inequality quantifies over these.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstant {
    starts: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseConstant {
    pub fn new(starts: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if starts.is_empty() || starts.len() != values.len() {
            return Err(Error::Dimension("piecewise-constant arrays".into()));
        }
        if starts[0] != 0.0 {
            return Err(Error::InvalidParam("first breakpoint must be 0".into()));
        }
        if starts.iter().any(|t| !t.is_finite()) || starts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParam(
                "breakpoints must be finite and strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidParam("values must be finite and nonnegative".into()));
        }
        if *values.last().unwrap() != 0.0 {
            return Err(Error::InvalidParam("final value must be 0".into()));
        }
        Ok(Self { starts, values })
    }

    pub fn from_step(step: &StepFunction) -> Self {
        Self { starts: step.starts().to_vec(), values: step.values().to_vec() }
    }

    pub fn starts(&self) -> &[f64] {
        &self.starts
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// First value; the behavior of both sides of Hardy's inequality near 0
    /// is governed by it.
    pub fn initial_value(&self) -> f64 {
        self.values[0]
    }

    /// Affine pieces `(start, a, b)` of the running integral
    /// `I(s) = ∫_0^s f = a + b·s`, final piece constant at the total integral.
    pub fn running_integral_pieces(&self) -> Vec<(f64, f64, f64)> {
        let mut pieces = Vec::with_capacity(self.starts.len());
        let mut acc = 0.0;
        for i in 0..self.starts.len() {
            let t = self.starts[i];
            let v = self.values[i];
            pieces.push((t, acc - v * t, v));
            if i + 1 < self.starts.len() {
                acc += v * (self.starts[i + 1] - t);
            }
        }
        pieces
    }

    pub fn total_integral(&self) -> f64 {
        let (start, a, b) = *self.running_integral_pieces().last().unwrap();
        debug_assert_eq!(b, 0.0);
        a + b * start
    }
}
