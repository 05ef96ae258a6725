//! Two-layer feedforward policy with constant unit biases,
//! `y = tanh(W2 · relu(W1 · x + 1) + 1)`.
//!
//! Parameters live in one flat vector (`W1` row-major, then `W2` row-major)
//! so that evolutionary strategies can perturb them directly.

use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::cmdp::Action;
use crate::error::{Error, Result};

/// Standard deviation of the Gaussian used by [`PolicyParams::random`].
pub const INIT_STD: f64 = 0.1;

const SNAPSHOT_MAGIC: &str = "psyco-policy 1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolicyShape {
    pub input: usize,
    pub hidden: usize,
    pub output: usize,
}

impl PolicyShape {
    pub const fn new(input: usize, hidden: usize, output: usize) -> Self {
        PolicyShape { input, hidden, output }
    }

    pub fn first_layer_len(&self) -> usize {
        self.hidden * self.input
    }

    pub fn param_count(&self) -> usize {
        self.first_layer_len() + self.output * self.hidden
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyParams {
    shape: PolicyShape,
    flat: Vec<f64>,
}

impl PolicyParams {
    pub fn zeros(shape: PolicyShape) -> Self {
        PolicyParams {
            shape,
            flat: vec![0.0; shape.param_count()],
        }
    }

    /// Entries drawn i.i.d. from `Normal(0, INIT_STD)`.
    pub fn random<R: Rng + ?Sized>(shape: PolicyShape, rng: &mut R) -> Self {
        let normal = Normal::new(0.0, INIT_STD).expect("positive std");
        PolicyParams {
            shape,
            flat: (0..shape.param_count()).map(|_| normal.sample(rng)).collect(),
        }
    }

    pub fn unflatten(flat: Vec<f64>, shape: PolicyShape) -> Result<Self> {
        if flat.len() != shape.param_count() {
            return Err(Error::Shape {
                expected: shape.param_count(),
                actual: flat.len(),
            });
        }
        if let Some(bad) = flat.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite policy parameter {bad}")));
        }
        Ok(PolicyParams { shape, flat })
    }

    pub fn flatten(&self) -> Vec<f64> {
        self.flat.clone()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.flat
    }

    pub fn shape(&self) -> PolicyShape {
        self.shape
    }

    /// Input-layer weights, `hidden x input`, row-major.
    pub fn theta1(&self) -> &[f64] {
        &self.flat[..self.shape.first_layer_len()]
    }

    /// Hidden-layer weights, `output x hidden`, row-major.
    pub fn theta2(&self) -> &[f64] {
        &self.flat[self.shape.first_layer_len()..]
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut hidden = vec![0.0; self.shape.hidden];
        let mut out = vec![0.0; self.shape.output];
        self.forward_into(x, &mut hidden, &mut out)?;
        Ok(out)
    }

    /// Allocation-free forward pass; `hidden` and `out` are scratch buffers
    /// of the hidden and output width.
    pub fn forward_into(&self, x: &[f64], hidden: &mut [f64], out: &mut [f64]) -> Result<()> {
        let PolicyShape {
            input,
            hidden: width,
            output,
        } = self.shape;
        if x.len() != input {
            return Err(Error::Config(format!("policy expects {input} inputs, got {}", x.len())));
        }
        debug_assert_eq!(hidden.len(), width);
        debug_assert_eq!(out.len(), output);

        for (h, row) in hidden.iter_mut().zip(self.theta1().chunks_exact(input)) {
            let z = row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + 1.0;
            *h = z.max(0.0);
        }
        for (y, row) in out.iter_mut().zip(self.theta2().chunks_exact(width)) {
            let z = row.iter().zip(hidden.iter()).map(|(w, v)| w * v).sum::<f64>() + 1.0;
            *y = z.tanh();
        }
        Ok(())
    }

    /// Writes the snapshot layout documented in `docs/policy-snapshot.md`.
    pub fn to_snapshot(&self) -> String {
        let mut s = String::with_capacity(24 * self.flat.len() + 64);
        let PolicyShape { input, hidden, output } = self.shape;
        writeln!(s, "{SNAPSHOT_MAGIC}").unwrap();
        writeln!(s, "shape {input} {hidden} {output}").unwrap();
        for v in &self.flat {
            writeln!(s, "{v}").unwrap();
        }
        s
    }

    pub fn from_snapshot(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let schema = |line: usize, msg: &str| Error::Schema(format!("policy snapshot line {}: {msg}", line + 1));

        match lines.next() {
            Some((_, l)) if l.trim() == SNAPSHOT_MAGIC => {}
            Some((i, _)) => return Err(schema(i, "missing `psyco-policy 1` header")),
            None => return Err(Error::Schema("empty policy snapshot".into())),
        }
        let (i, shape_line) = lines
            .next()
            .ok_or_else(|| Error::Schema("policy snapshot lacks a shape line".into()))?;
        let dims: Vec<&str> = shape_line.split_whitespace().collect();
        if dims.len() != 4 || dims[0] != "shape" {
            return Err(schema(i, "expected `shape <input> <hidden> <output>`"));
        }
        let dim = |s: &str| s.parse::<usize>().map_err(|_| schema(i, "bad dimension"));
        let shape = PolicyShape::new(dim(dims[1])?, dim(dims[2])?, dim(dims[3])?);

        let flat = lines
            .map(|(i, l)| l.trim().parse::<f64>().map_err(|_| schema(i, "bad parameter value")))
            .collect::<Result<Vec<_>>>()?;
        PolicyParams::unflatten(flat, shape)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_snapshot()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_snapshot(&text)
    }
}

/// Maps raw network outputs in `(-1, 1)` to environment actions.
#[derive(Debug, Clone, PartialEq)]
pub enum ActionDecoder {
    /// Componentwise scaling into the box `[-scale_i, scale_i]`.
    ContinuousBox { scale: Vec<f64> },
    /// Index of the largest output; ties go to the lowest index.
    DiscreteArgmax { arity: usize },
}

impl ActionDecoder {
    pub fn arity(&self) -> usize {
        match self {
            ActionDecoder::ContinuousBox { scale } => scale.len(),
            ActionDecoder::DiscreteArgmax { arity } => *arity,
        }
    }

    pub fn decode(&self, y: &[f64]) -> Result<Action> {
        if y.len() != self.arity() {
            return Err(Error::Shape {
                expected: self.arity(),
                actual: y.len(),
            });
        }
        Ok(match self {
            ActionDecoder::ContinuousBox { scale } => {
                Action::Continuous(y.iter().zip(scale).map(|(v, s)| v * s).collect())
            }
            ActionDecoder::DiscreteArgmax { .. } => {
                let mut best = 0;
                for (i, v) in y.iter().enumerate().skip(1) {
                    if *v > y[best] {
                        best = i;
                    }
                }
                Action::Discrete(best)
            }
        })
    }
}
