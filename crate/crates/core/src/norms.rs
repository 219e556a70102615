//! Lebesgue and Lorentz functionals on sampled functions.
//!
//! The Lorentz functional is built on the maximal function:
//! `‖f‖_{p,q} = (∫_0^∞ (t^{1/p} f**(t))^q dt/t)^{1/q}` for finite `q`, and
//! `sup_{t>0} t^{1/p} f**(t)` for `q = ∞`. With this normalization
//! `‖f‖_p ≤ ‖f‖_{p,p} ≤ p'·‖f‖_p` for `1 < p ≤ ∞`, and `L^{1,∞} = L^1`.
//! At `p = 1` with finite `q` the integral diverges for every nonzero `f`;
//! `+∞` is a representable norm value here, not an error.

use crate::error::{Error, Result};
use crate::hypergroup::{HaarWeights, SampledFunction};
use crate::quad::power_affine_integral;
use crate::step::{distribution, maximal, rearrangement, MaximalFunction};

/// Validated Lorentz exponent pair: either `1 ≤ p < ∞, 1 ≤ q < ∞`, or
/// `q = ∞` with `1 ≤ p ≤ ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzParams {
    p: f64,
    q: f64,
}

impl LorentzParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if p.is_nan() || q.is_nan() || p < 1.0 || q < 1.0 {
            return Err(Error::InvalidParam(format!("lorentz exponents ({p}, {q})")));
        }
        if p.is_infinite() && q.is_finite() {
            return Err(Error::InvalidParam(
                "p = ∞ requires q = ∞ in the Lorentz scale".into(),
            ));
        }
        Ok(Self { p, q })
    }

    pub fn weak(p: f64) -> Result<Self> {
        Self::new(p, f64::INFINITY)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// `(Σ |f|^p w)^{1/p}`, with the max of `|f|` at `p = ∞`.
pub fn lebesgue_norm(f: &SampledFunction, haar: &HaarWeights, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParam(format!("lebesgue exponent {p}")));
    }
    if f.len() != haar.len() {
        return Err(Error::Dimension("function/measure length".into()));
    }
    if p.is_infinite() {
        return Ok(f.max_abs());
    }
    let sum: f64 = f
        .values()
        .iter()
        .zip(haar.as_slice())
        .map(|(v, w)| v.abs().powf(p) * w)
        .sum();
    Ok(sum.powf(1.0 / p))
}

/// Lorentz norm of `f` through the full distribution → rearrangement →
/// maximal pipeline. May be `+∞` (`p = 1` with finite `q` and `f ≠ 0`).
pub fn lorentz_norm(f: &SampledFunction, haar: &HaarWeights, params: &LorentzParams) -> f64 {
    let star = rearrangement(&distribution(f, haar));
    lorentz_norm_of_maximal(&maximal(&star), params)
}

/// Lorentz norm evaluated on a precomputed maximal function.
pub fn lorentz_norm_of_maximal(m: &MaximalFunction, params: &LorentzParams) -> f64 {
    let (p, q) = (params.p, params.q);
    if q.is_infinite() {
        return weak_norm(m, p);
    }
    // per piece: ∫ (t^{1/p}·(a+bt)/t)^q dt/t = ∫ t^{q/p-q-1} (a+bt)^q dt
    let c = q / p - q - 1.0;
    let starts = m.starts();
    let mut total = 0.0;
    for (i, (lo, a, b)) in m.pieces().enumerate() {
        if a == 0.0 && b == 0.0 {
            continue;
        }
        let hi = starts.get(i + 1).copied().unwrap_or(f64::INFINITY);
        total += power_affine_integral(c, a, b, q, lo, hi);
        if total.is_infinite() {
            return f64::INFINITY;
        }
    }
    total.powf(1.0 / q)
}

/// `sup_{t>0} t^{1/p} f**(t)`, maximized exactly: on each affine piece of the
/// running integral the profile `t^{1/p-1}(a + b·t)` has at most one interior
/// critical point at `t = a(p-1)/b`, so the supremum is attained at a piece
/// endpoint or that point.
fn weak_norm(m: &MaximalFunction, p: f64) -> f64 {
    if p.is_infinite() {
        return m.sup();
    }
    let inv_p = 1.0 / p;
    let starts = m.starts();
    let mut best = 0.0_f64;
    for (i, (lo, a, b)) in m.pieces().enumerate() {
        let profile = |t: f64| t.powf(inv_p - 1.0) * (a + b * t);
        if lo > 0.0 {
            best = best.max(profile(lo));
        }
        let hi = starts.get(i + 1).copied().unwrap_or(f64::INFINITY);
        if p > 1.0 && a > 0.0 && b > 0.0 {
            let crit = a * (p - 1.0) / b;
            if crit > lo && crit < hi {
                best = best.max(profile(crit));
            }
        }
        if hi.is_infinite() && p == 1.0 {
            // the tail profile is constant at the total mass
            best = best.max(a);
        }
    }
    best
}

/// Both sides of the Lebesgue–Lorentz comparison and of the second-index
/// embedding, computed independently so a caller can assert
/// `‖f‖_p ≤ ‖f‖_{p,p} ≤ p'·‖f‖_p` and `‖f‖_{p,r} ≤ (q/p)^{1/q-1/p}·‖f‖_{p,q}`.
#[derive(Debug, Clone)]
pub struct EmbeddingGap {
    pub lebesgue: f64,
    pub lorentz_pp: f64,
    /// `p' = p/(p-1)`.
    pub p_conjugate: f64,
    pub lorentz_pq: f64,
    pub lorentz_pr: f64,
    /// `(q/p)^{1/q - 1/p}`.
    pub embedding_constant: f64,
}

pub fn embedding_gap(
    f: &SampledFunction,
    haar: &HaarWeights,
    p: f64,
    q: f64,
    r: f64,
) -> Result<EmbeddingGap> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidParam(format!("embedding requires 1 < p < ∞, got {p}")));
    }
    if !(q > 1.0 && q < r && r.is_finite()) {
        return Err(Error::InvalidParam(format!(
            "embedding requires 1 < q < r < ∞, got ({q}, {r})"
        )));
    }
    let m = maximal(&rearrangement(&distribution(f, haar)));
    Ok(EmbeddingGap {
        lebesgue: lebesgue_norm(f, haar, p)?,
        lorentz_pp: lorentz_norm_of_maximal(&m, &LorentzParams::new(p, p)?),
        p_conjugate: p / (p - 1.0),
        lorentz_pq: lorentz_norm_of_maximal(&m, &LorentzParams::new(p, q)?),
        lorentz_pr: lorentz_norm_of_maximal(&m, &LorentzParams::new(p, r)?),
        embedding_constant: (q / p).powf(1.0 / q - 1.0 / p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn example() -> (SampledFunction, HaarWeights) {
        (
            SampledFunction::new(vec![5.0, 3.0, 4.0]).unwrap(),
            HaarWeights::new(vec![1.0, 2.0, 1.0]).unwrap(),
        )
    }

    fn unit_atom() -> (SampledFunction, HaarWeights) {
        (
            SampledFunction::new(vec![1.0]).unwrap(),
            HaarWeights::new(vec![1.0]).unwrap(),
        )
    }

    #[test]
    fn zero_function_every_norm_vanishes() {
        let f = SampledFunction::zero(3);
        let haar = HaarWeights::new(vec![1.0, 2.0, 1.0]).unwrap();
        assert_eq!(lebesgue_norm(&f, &haar, 1.0).unwrap(), 0.0);
        assert_eq!(lebesgue_norm(&f, &haar, f64::INFINITY).unwrap(), 0.0);
        for (p, q) in [(1.0, 1.0), (2.0, 3.0), (1.0, f64::INFINITY), (4.0, f64::INFINITY)] {
            let params = LorentzParams::new(p, q).unwrap();
            assert_eq!(lorentz_norm(&f, &haar, &params), 0.0);
        }
    }

    #[test]
    fn lebesgue_direct_sums() {
        let (f, haar) = example();
        assert_eq!(lebesgue_norm(&f, &haar, 1.0).unwrap(), 15.0);
        assert_eq!(lebesgue_norm(&f, &haar, f64::INFINITY).unwrap(), 5.0);
    }

    #[test]
    fn weak_one_norm_is_lebesgue_one_norm() {
        let (f, haar) = example();
        let weak = lorentz_norm(&f, &haar, &LorentzParams::weak(1.0).unwrap());
        assert_relative_eq!(weak, 15.0, max_relative = 1e-12);
    }

    #[test]
    fn indicator_two_two_norm_is_sqrt_two() {
        let (f, haar) = unit_atom();
        let norm = lorentz_norm(&f, &haar, &LorentzParams::new(2.0, 2.0).unwrap());
        assert_relative_eq!(norm, 2.0_f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn indicator_two_three_norm_closed_form() {
        // ∫_0^1 t^{1/2} + ∫_1^∞ t^{-5/2} = 2/3 + 2/3
        let (f, haar) = unit_atom();
        let norm = lorentz_norm(&f, &haar, &LorentzParams::new(2.0, 3.0).unwrap());
        assert_relative_eq!(norm, (4.0_f64 / 3.0).powf(1.0 / 3.0), max_relative = 1e-12);
    }

    #[test]
    fn weak_norm_maximized_at_breakpoint() {
        let (f, haar) = example();
        let weak = lorentz_norm(&f, &haar, &LorentzParams::weak(2.0).unwrap());
        // sup t^{1/2} f**(t) lands on the support-end breakpoint: 12/√4
        assert_relative_eq!(weak, 7.5, max_relative = 1e-13);
    }

    #[test]
    fn diverging_p1_finite_q_norm() {
        let (f, haar) = example();
        let norm = lorentz_norm(&f, &haar, &LorentzParams::new(1.0, 2.0).unwrap());
        assert_eq!(norm, f64::INFINITY);
    }

    #[test]
    fn infinite_p_weak_norm_is_sup() {
        let (f, haar) = example();
        let norm = lorentz_norm(&f, &haar, &LorentzParams::weak(f64::INFINITY).unwrap());
        assert_eq!(norm, 5.0);
    }

    #[test]
    fn embedding_gap_example_values() {
        let (f, haar) = unit_atom();
        let gap = embedding_gap(&f, &haar, 2.0, 2.0, 3.0).unwrap();
        assert_relative_eq!(gap.lebesgue, 1.0);
        assert_relative_eq!(gap.lorentz_pp, 2.0_f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(gap.lorentz_pq, 2.0_f64.sqrt(), max_relative = 1e-12);
        assert_eq!(gap.embedding_constant, 1.0);
        assert!(gap.lorentz_pr <= gap.embedding_constant * gap.lorentz_pq);
        assert!(gap.lebesgue <= gap.lorentz_pp);
        assert!(gap.lorentz_pp <= gap.p_conjugate * gap.lebesgue);
    }

    #[test]
    fn norms_are_absolutely_homogeneous() {
        let (f, haar) = example();
        let params = LorentzParams::new(2.0, 1.5).unwrap();
        let base = lorentz_norm(&f, &haar, &params);
        for alpha in [2.0, 10.0] {
            let scaled = lorentz_norm(&f.scale(alpha), &haar, &params);
            assert_relative_eq!(scaled, alpha * base, max_relative = 1e-10);
        }
    }

    #[test]
    fn fractional_q_norm_matches_log_substitution_oracle() {
        // multi-piece f with fractional q: compare the piecewise
        // closed-form/adaptive evaluation against a blunt midpoint rule in
        // log coordinates, ∫ g(t) dt = ∫ g(e^u) e^u du, carried far enough
        // that the dropped tail is below the tolerance
        let (f, haar) = example();
        let (p, q) = (2.5, 1.7);
        let norm = lorentz_norm(&f, &haar, &LorentzParams::new(p, q).unwrap());

        let m = crate::step::maximal(&crate::step::rearrangement(
            &crate::step::distribution(&f, &haar),
        ));
        let (u_lo, u_hi) = (-39.0_f64, 32.0_f64);
        let steps = 4_000_000usize;
        let du = (u_hi - u_lo) / steps as f64;
        let mut acc = 0.0;
        for i in 0..steps {
            let u = u_lo + (i as f64 + 0.5) * du;
            let t = u.exp();
            let integrand = (t.powf(1.0 / p) * m.eval(t)).powf(q) / t;
            acc += integrand * t * du;
        }
        assert_relative_eq!(norm, acc.powf(1.0 / q), max_relative = 1e-8);
    }

    #[test]
    fn params_domain_is_enforced() {
        assert!(LorentzParams::new(f64::INFINITY, 2.0).is_err());
        assert!(LorentzParams::new(0.9, 2.0).is_err());
        assert!(LorentzParams::new(2.0, 0.5).is_err());
        assert!(LorentzParams::new(f64::INFINITY, f64::INFINITY).is_ok());
        assert!(lebesgue_norm(
            &SampledFunction::zero(1),
            &HaarWeights::new(vec![1.0]).unwrap(),
            0.5
        )
        .is_err());
        assert!(embedding_gap(
            &SampledFunction::zero(1),
            &HaarWeights::new(vec![1.0]).unwrap(),
            2.0,
            3.0,
            2.0
        )
        .is_err());
    }
}
