//! Finite commutative hypergroups: structure tensors, axiom validation,
//! Haar measure, generalized translation and convolution.
//!
//! A finite hypergroup on elements `{0, …, n-1}` is described by its
//! structure tensor `c[x][y][z]`, the mass the product of the point measures
//! at `x` and `y` places on `z`. Each `c[x][y][·]` is a probability vector,
//! the product is commutative and associative, there is an identity element
//! `e` and an involution `x ↦ x~` with `c[x][y][e] > 0 ⇔ y = x~`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported element count; the associativity scan is O(n⁵) and the
/// tensor itself is O(n³) memory.
pub const MAX_ELEMENTS: usize = 128;

/// Default absolute tolerance for axiom residuals. Built-in families have
/// dyadic or small-rational tensors, so residuals sit at rounding level.
pub const AXIOM_TOL: f64 = 1e-12;

/// A real-valued function sampled on the elements of a finite hypergroup.
/// Entries may be signed; rearrangement machinery applies `|f|`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    values: Vec<f64>,
}

impl SampledFunction {
    /// Rejects NaN and infinite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("function entry {i}")));
        }
        Ok(Self { values })
    }

    pub fn zero(n: usize) -> Self {
        Self { values: vec![0.0; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn abs(&self) -> Self {
        Self { values: self.values.iter().map(|v| v.abs()).collect() }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self { values: self.values.iter().map(|v| v * factor).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `min(|f|, cap)` entrywise; the truncations used for monotone limits.
    pub fn abs_clamped(&self, cap: f64) -> Self {
        Self { values: self.values.iter().map(|v| v.abs().min(cap)).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Measure of `{x : f(x) ≠ 0}`.
    pub fn support_measure(&self, haar: &HaarWeights) -> f64 {
        self.values
            .iter()
            .zip(haar.as_slice())
            .filter(|(v, _)| **v != 0.0)
            .map(|(_, w)| w)
            .sum()
    }
}

/// The discrete Haar measure: one strictly positive weight per element.
///
/// Weights produced by [`compute_haar`] are normalized to `weight(e) = 1`;
/// the measure-only constructor used for synthetic growth spaces accepts any
/// positive weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaarWeights {
    weights: Vec<f64>,
}

impl HaarWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::InvalidParam(format!(
                "weight {i} must be finite and positive"
            )));
        }
        Ok(Self { weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Structure tensor of a finite commutative hypergroup.
///
/// Construction checks shapes and finiteness only; axioms are checked by
/// [`HypergroupTable::validate`], so that defective tables can be built and
/// diagnosed.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergroupTable {
    n: usize,
    identity: usize,
    involution: Vec<usize>,
    tensor: Vec<f64>, // c[x][y][z] at x·n² + y·n + z
}

impl HypergroupTable {
    pub fn new(n: usize, identity: usize, involution: Vec<usize>, tensor: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::Dimension(format!(
                "element count {n} outside 1..={MAX_ELEMENTS}"
            )));
        }
        if identity >= n {
            return Err(Error::Dimension(format!("identity {identity} out of range")));
        }
        if involution.len() != n {
            return Err(Error::Dimension(format!(
                "involution length {} != {n}",
                involution.len()
            )));
        }
        if let Some(i) = involution.iter().position(|x| *x >= n) {
            return Err(Error::Dimension(format!("involution entry {i} out of range")));
        }
        if tensor.len() != n * n * n {
            return Err(Error::Dimension(format!(
                "tensor length {} != {}",
                tensor.len(),
                n * n * n
            )));
        }
        if tensor.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("tensor entry".into()));
        }
        Ok(Self { n, identity, involution, tensor })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn inv(&self, x: usize) -> usize {
        self.involution[x]
    }

    /// Tensor entry `c[x][y][z]`.
    pub fn c(&self, x: usize, y: usize, z: usize) -> f64 {
        self.tensor[(x * self.n + y) * self.n + z]
    }

    /// The probability vector `c[x][y][·]`.
    pub fn row(&self, x: usize, y: usize) -> &[f64] {
        let base = (x * self.n + y) * self.n;
        &self.tensor[base..base + self.n]
    }

    /// Max residual of every hypergroup axiom; see [`AxiomReport`].
    pub fn validate(&self, tol: f64) -> AxiomReport {
        let n = self.n;
        let e = self.identity;

        let mut probability = 0.0_f64;
        let mut commutativity = 0.0_f64;
        let mut identity = 0.0_f64;
        let mut involution = 0.0_f64;
        let mut support = 0.0_f64;

        for x in 0..n {
            for y in 0..n {
                let row = self.row(x, y);
                let mut sum = 0.0;
                for (z, &v) in row.iter().enumerate() {
                    sum += v;
                    probability = probability.max(-v);
                    commutativity = commutativity.max((v - self.c(y, x, z)).abs());
                    involution =
                        involution.max((self.c(x, y, self.inv(z)) - self.c(self.inv(y), self.inv(x), z)).abs());
                }
                probability = probability.max((sum - 1.0).abs());
                if y != self.inv(x) {
                    support = support.max(self.c(x, y, e));
                }
            }
            // c[x][x~][e] must be strictly positive
            if self.c(x, self.inv(x), e) <= 0.0 {
                support = support.max(1.0);
            }
            for z in 0..n {
                let expected = if z == x { 1.0 } else { 0.0 };
                identity = identity.max((self.c(e, x, z) - expected).abs());
            }
        }

        let mut involution_perm = 0.0_f64;
        if self.inv(e) != e {
            involution_perm = 1.0;
        }
        for x in 0..n {
            if self.inv(self.inv(x)) != x {
                involution_perm = 1.0;
            }
        }

        let associativity = self.associativity_residual();

        let mut report = AxiomReport {
            probability,
            commutativity,
            identity,
            involution,
            support,
            involution_perm,
            associativity,
            tol,
            pass: false,
        };
        report.pass = report.max_residual() <= tol;
        report
    }

    /// Max over (x,y,z,v) of |Σ_w c[x][y][w]c[w][z][v] − Σ_w c[y][z][w]c[x][w][v]|.
    fn associativity_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        let mut lhs = vec![0.0_f64; n];
        let mut rhs = vec![0.0_f64; n];
        for x in 0..n {
            for y in 0..n {
                let u = self.row(x, y);
                for z in 0..n {
                    lhs.iter_mut().for_each(|v| *v = 0.0);
                    for (w, &uw) in u.iter().enumerate() {
                        if uw == 0.0 {
                            continue;
                        }
                        let row = self.row(w, z);
                        for v in 0..n {
                            lhs[v] += uw * row[v];
                        }
                    }
                    rhs.iter_mut().for_each(|v| *v = 0.0);
                    let s = self.row(y, z);
                    for (w, &sw) in s.iter().enumerate() {
                        if sw == 0.0 {
                            continue;
                        }
                        let row = self.row(x, w);
                        for v in 0..n {
                            rhs[v] += sw * row[v];
                        }
                    }
                    for v in 0..n {
                        worst = worst.max((lhs[v] - rhs[v]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Generalized translation `T^x f(y) = Σ_z c[x][y][z] f(z)`.
    pub fn translate(&self, f: &SampledFunction, x: usize) -> Result<SampledFunction> {
        if f.len() != self.n {
            return Err(Error::Dimension(format!(
                "function length {} != {}",
                f.len(),
                self.n
            )));
        }
        if x >= self.n {
            return Err(Error::InvalidParam(format!("element {x} out of range")));
        }
        let values = (0..self.n)
            .map(|y| dot(self.row(x, y), f.values()))
            .collect();
        Ok(SampledFunction { values })
    }

    /// Convolution `(f ∗ g)(x) = Σ_y T^x f(y) · g(y~) · w(y)`.
    pub fn convolve(
        &self,
        haar: &HaarWeights,
        f: &SampledFunction,
        g: &SampledFunction,
    ) -> Result<SampledFunction> {
        let n = self.n;
        if f.len() != n || g.len() != n || haar.len() != n {
            return Err(Error::Dimension("convolution operand length".into()));
        }
        // g(y~)·w(y), hoisted out of the x loop
        let gw: Vec<f64> = (0..n).map(|y| g.get(self.inv(y)) * haar.get(y)).collect();
        let mut out = vec![0.0; n];
        for (x, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (y, &gwy) in gw.iter().enumerate() {
                if gwy == 0.0 {
                    continue;
                }
                acc += dot(self.row(x, y), f.values()) * gwy;
            }
            *o = acc;
        }
        Ok(SampledFunction { values: out })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Per-axiom max residuals from [`HypergroupTable::validate`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomReport {
    /// Negative mass or row sums away from 1.
    pub probability: f64,
    /// `|c[x][y][z] − c[y][x][z]|`.
    pub commutativity: f64,
    /// `|c[e][x][z] − δ(z = x)|`.
    pub identity: f64,
    /// `|c[x][y][z~] − c[y~][x~][z]|`.
    pub involution: f64,
    /// Mass at the identity off the diagonal `y = x~`, and 1.0 when the
    /// diagonal mass `c[x][x~][e]` is not strictly positive.
    pub support: f64,
    /// 1.0 unless the involution is a self-inverse permutation fixing `e`.
    pub involution_perm: f64,
    /// Defect of `(δ_x ∗ δ_y) ∗ δ_z = δ_x ∗ (δ_y ∗ δ_z)`.
    pub associativity: f64,
    pub tol: f64,
    pub pass: bool,
}

impl AxiomReport {
    pub fn max_residual(&self) -> f64 {
        self.probability
            .max(self.commutativity)
            .max(self.identity)
            .max(self.involution)
            .max(self.support)
            .max(self.involution_perm)
            .max(self.associativity)
    }
}

/// Haar weights by the closed form `w(x) = 1 / c[x][x~][e]`, normalized so
/// `w(e) = 1`, then cross-checked against translation invariance.
pub fn compute_haar(table: &HypergroupTable) -> Result<HaarWeights> {
    let e = table.identity();
    let mut weights = Vec::with_capacity(table.n());
    for x in 0..table.n() {
        let mass = table.c(x, table.inv(x), e);
        if mass <= 0.0 {
            return Err(Error::InvalidTable(format!(
                "c[{x}][{}][e] = {mass}; no positive mass at the identity",
                table.inv(x)
            )));
        }
        weights.push(1.0 / mass);
    }
    let norm = weights[e];
    let haar = HaarWeights::new(weights.iter().map(|w| w / norm).collect())?;
    let residual = invariance_residual(table, &haar);
    if residual > AXIOM_TOL {
        return Err(Error::InvalidTable(format!(
            "closed-form weights violate translation invariance (residual {residual:.3e})"
        )));
    }
    Ok(haar)
}

/// Max over (x, z) of `|Σ_y c[x][y][z]·w(y) − w(z)| / w(z)`: the invariance
/// defect of the measure tested on point masses.
pub fn invariance_residual(table: &HypergroupTable, haar: &HaarWeights) -> f64 {
    let n = table.n();
    let mut worst = 0.0_f64;
    for x in 0..n {
        for z in 0..n {
            let mut acc = 0.0;
            for y in 0..n {
                acc += table.c(x, y, z) * haar.get(y);
            }
            worst = worst.max((acc - haar.get(z)).abs() / haar.get(z));
        }
    }
    worst
}
