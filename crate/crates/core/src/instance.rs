//! Structured-document formats: instance files, function files, step-function
//! serializations and growth-space blocks, all as JSON via serde.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergroup::{HaarWeights, HypergroupTable};
use crate::potential::GrowthSpace;
use crate::step::{MaximalFunction, StepFunction};
use crate::verify::SuiteConfig;

/// Hypergroup block: element count, identity index, involution permutation,
/// the full n×n×n structure tensor, and optionally precomputed Haar weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergroupDoc {
    pub n: usize,
    pub identity: usize,
    pub involution: Vec<usize>,
    pub tensor: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub haar: Option<Vec<f64>>,
}

impl HypergroupDoc {
    pub fn from_table(table: &HypergroupTable, haar: Option<&HaarWeights>) -> Self {
        let n = table.n();
        let tensor = (0..n)
            .map(|x| (0..n).map(|y| table.row(x, y).to_vec()).collect())
            .collect();
        Self {
            n,
            identity: table.identity(),
            involution: table.involution().to_vec(),
            tensor,
            haar: haar.map(|h| h.as_slice().to_vec()),
        }
    }

    pub fn to_table(&self) -> Result<HypergroupTable> {
        if self.tensor.len() != self.n {
            return Err(Error::Dimension(format!(
                "tensor has {} slices for n = {}",
                self.tensor.len(),
                self.n
            )));
        }
        let mut flat = Vec::with_capacity(self.n * self.n * self.n);
        for slice in &self.tensor {
            if slice.len() != self.n {
                return Err(Error::Dimension("tensor slice length".into()));
            }
            for row in slice {
                if row.len() != self.n {
                    return Err(Error::Dimension("tensor row length".into()));
                }
                flat.extend_from_slice(row);
            }
        }
        HypergroupTable::new(self.n, self.identity, self.involution.clone(), flat)
    }

    pub fn haar_weights(&self) -> Result<Option<HaarWeights>> {
        match &self.haar {
            None => Ok(None),
            Some(w) => {
                if w.len() != self.n {
                    return Err(Error::Dimension("haar length".into()));
                }
                Ok(Some(HaarWeights::new(w.clone())?))
            }
        }
    }
}

/// Function file: one real value per element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub values: Vec<f64>,
}

/// Step functions serialize as paired arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl StepDoc {
    pub fn from_step(step: &StepFunction) -> Self {
        Self { breakpoints: step.starts().to_vec(), values: step.values().to_vec() }
    }

    pub fn to_step(&self) -> Result<StepFunction> {
        StepFunction::new(self.breakpoints.clone(), self.values.clone())
    }
}

/// Piecewise-linear running integral of a rearrangement: `I(t) = a_i + b_i·t`
/// from `starts[i]`, with the maximal function `f**(t) = I(t)/t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaximalDoc {
    pub starts: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub total_mass: f64,
}

impl MaximalDoc {
    pub fn from_maximal(m: &MaximalFunction) -> Self {
        let mut starts = Vec::new();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (start, ca, cb) in m.pieces() {
            starts.push(start);
            a.push(ca);
            b.push(cb);
        }
        Self { starts, a, b, total_mass: m.total_mass() }
    }
}

/// Rearrangement pipeline output for one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RearrangementDoc {
    pub distribution: StepDoc,
    pub rearrangement: StepDoc,
    pub maximal: MaximalDoc,
}

/// Growth-space block: radii, weights and the ball-growth law `A·rᴺ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthDoc {
    pub radii: Vec<f64>,
    pub weights: Vec<f64>,
    #[serde(rename = "A")]
    pub growth_constant: f64,
    #[serde(rename = "N")]
    pub growth_exponent: f64,
}

impl GrowthDoc {
    pub fn from_space(space: &GrowthSpace) -> Self {
        Self {
            radii: space.radii().to_vec(),
            weights: space.weights().to_vec(),
            growth_constant: space.growth_constant(),
            growth_exponent: space.growth_exponent(),
        }
    }

    pub fn to_space(&self) -> Result<GrowthSpace> {
        GrowthSpace::from_parts(
            self.radii.clone(),
            self.weights.clone(),
            self.growth_constant,
            self.growth_exponent,
        )
    }
}

/// One self-contained instance: any subset of a hypergroup block, a
/// quasi-metric matrix `rho`, named function arrays, a growth-space block and
/// a suite configuration. At least one block must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypergroup: Option<HypergroupDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteConfig>,
}

impl InstanceDocument {
    pub fn is_actionable(&self) -> bool {
        self.hypergroup.is_some()
            || self.rho.is_some()
            || !self.functions.is_empty()
            || self.growth.is_some()
            || self.suite.is_some()
    }
}
