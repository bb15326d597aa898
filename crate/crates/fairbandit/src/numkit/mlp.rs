//! One-hidden-layer ReLU MLP with manual backpropagation.
//!
//! The network is `w2 · relu(w1 · x + b1) + b2`, all f64. The ReLU
//! subgradient at exactly 0 is 0. Shape mismatches panic with the expected
//! and actual dimensions; they are programmer errors, not input errors.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::linalg::{dot, Matrix};

#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    pub w1: Matrix, // hidden_dim x in_dim
    pub b1: Vec<f64>,
    pub w2: Matrix, // out_dim x hidden_dim
    pub b2: Vec<f64>,
}

/// Per-parameter gradients (or any same-shaped accumulator, e.g. Adam moments).
#[derive(Debug, Clone, PartialEq)]
pub struct MlpGrads {
    pub w1: Matrix,
    pub b1: Vec<f64>,
    pub w2: Matrix,
    pub b2: Vec<f64>,
}

impl Mlp {
    pub const DEFAULT_HIDDEN_DIM: usize = 128;

    pub fn zeros(in_dim: usize, hidden_dim: usize, out_dim: usize) -> Self {
        Mlp {
            w1: Matrix::zeros(hidden_dim, in_dim),
            b1: vec![0.0; hidden_dim],
            w2: Matrix::zeros(out_dim, hidden_dim),
            b2: vec![0.0; out_dim],
        }
    }

    /// Seeded init: each layer uniform in (−1/√fan_in, +1/√fan_in), biases zero.
    pub fn init(in_dim: usize, hidden_dim: usize, out_dim: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut net = Mlp::zeros(in_dim, hidden_dim, out_dim);
        let bound1 = 1.0 / (in_dim as f64).sqrt();
        for v in net.w1.as_mut_slice() {
            *v = rng.random_range(-bound1..bound1);
        }
        let bound2 = 1.0 / (hidden_dim as f64).sqrt();
        for v in net.w2.as_mut_slice() {
            *v = rng.random_range(-bound2..bound2);
        }
        net
    }

    pub fn in_dim(&self) -> usize {
        self.w1.cols()
    }

    pub fn hidden_dim(&self) -> usize {
        self.w1.rows()
    }

    pub fn out_dim(&self) -> usize {
        self.w2.rows()
    }

    fn check_input(&self, x: &[f64]) {
        assert_eq!(
            x.len(),
            self.in_dim(),
            "mlp_forward: input dim {} but network expects {}",
            x.len(),
            self.in_dim()
        );
    }

    /// Post-ReLU hidden activations.
    pub fn hidden(&self, x: &[f64]) -> Vec<f64> {
        self.check_input(x);
        (0..self.hidden_dim())
            .map(|h| {
                let pre = dot(self.w1.row(h), x) + self.b1[h];
                if pre > 0.0 {
                    pre
                } else {
                    0.0
                }
            })
            .collect()
    }

    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        let h = self.hidden(x);
        self.output_from_hidden(&h)
    }

    fn output_from_hidden(&self, h: &[f64]) -> Vec<f64> {
        (0..self.out_dim())
            .map(|o| dot(self.w2.row(o), h) + self.b2[o])
            .collect()
    }

    /// Forward pass that also returns the hidden activations needed by
    /// [`Mlp::backward_into`].
    pub fn forward_cached(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let h = self.hidden(x);
        let out = self.output_from_hidden(&h);
        (h, out)
    }

    /// Accumulate ∂loss/∂params into `grads` given ∂loss/∂output.
    ///
    /// `hidden` must come from `forward_cached` on the same `x`.
    pub fn backward_into(
        &self,
        x: &[f64],
        hidden: &[f64],
        upstream: &[f64],
        grads: &mut MlpGrads,
    ) {
        self.check_input(x);
        assert_eq!(
            upstream.len(),
            self.out_dim(),
            "mlp_backward: upstream dim {} but network output dim is {}",
            upstream.len(),
            self.out_dim()
        );
        assert_eq!(hidden.len(), self.hidden_dim());

        grads.w2.add_outer(upstream, hidden, 1.0);
        for (g, u) in grads.b2.iter_mut().zip(upstream) {
            *g += u;
        }

        // d_pre[h] = (w2ᵀ upstream)[h] masked by relu'(pre) = 1{hidden > 0}
        let mut d_pre = vec![0.0; self.hidden_dim()];
        for (o, &u) in upstream.iter().enumerate() {
            let row = self.w2.row(o);
            for (h, dp) in d_pre.iter_mut().enumerate() {
                *dp += u * row[h];
            }
        }
        for (dp, &hv) in d_pre.iter_mut().zip(hidden) {
            if hv <= 0.0 {
                *dp = 0.0;
            }
        }

        grads.w1.add_outer(&d_pre, x, 1.0);
        for (g, dp) in grads.b1.iter_mut().zip(&d_pre) {
            *g += dp;
        }
    }

    /// Fresh gradients for a single (x, upstream) pair.
    pub fn backward(&self, x: &[f64], upstream: &[f64]) -> MlpGrads {
        let (h, _) = self.forward_cached(x);
        let mut grads = MlpGrads::zeros_like(self);
        self.backward_into(x, &h, upstream, &mut grads);
        grads
    }

    pub fn num_params(&self) -> usize {
        self.w1.as_slice().len() + self.b1.len() + self.w2.as_slice().len() + self.b2.len()
    }

    /// Flat parameter vector in block order w1, b1, w2, b2 (row-major).
    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.num_params());
        out.extend_from_slice(self.w1.as_slice());
        out.extend_from_slice(&self.b1);
        out.extend_from_slice(self.w2.as_slice());
        out.extend_from_slice(&self.b2);
        out
    }

    pub fn from_flat(in_dim: usize, hidden_dim: usize, out_dim: usize, flat: &[f64]) -> Self {
        let mut net = Mlp::zeros(in_dim, hidden_dim, out_dim);
        assert_eq!(flat.len(), net.num_params(), "from_flat: length mismatch");
        let mut off = 0;
        let w1 = net.w1.as_mut_slice();
        w1.copy_from_slice(&flat[off..off + w1.len()]);
        off += hidden_dim * in_dim;
        net.b1.copy_from_slice(&flat[off..off + hidden_dim]);
        off += hidden_dim;
        let w2 = net.w2.as_mut_slice();
        w2.copy_from_slice(&flat[off..off + w2.len()]);
        off += out_dim * hidden_dim;
        net.b2.copy_from_slice(&flat[off..]);
        net
    }
}

impl MlpGrads {
    pub fn zeros_like(net: &Mlp) -> Self {
        MlpGrads {
            w1: Matrix::zeros(net.hidden_dim(), net.in_dim()),
            b1: vec![0.0; net.hidden_dim()],
            w2: Matrix::zeros(net.out_dim(), net.hidden_dim()),
            b2: vec![0.0; net.out_dim()],
        }
    }

    pub fn scale(&mut self, s: f64) {
        for v in self.w1.as_mut_slice() {
            *v *= s;
        }
        for v in &mut self.b1 {
            *v *= s;
        }
        for v in self.w2.as_mut_slice() {
            *v *= s;
        }
        for v in &mut self.b2 {
            *v *= s;
        }
    }

    /// Flat gradient vector matching [`Mlp::flatten`] order.
    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::new();
        out.extend_from_slice(self.w1.as_slice());
        out.extend_from_slice(&self.b1);
        out.extend_from_slice(self.w2.as_slice());
        out.extend_from_slice(&self.b2);
        out
    }
}
