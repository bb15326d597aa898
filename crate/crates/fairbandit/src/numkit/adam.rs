//! Adam with bias correction.

use super::mlp::{Mlp, MlpGrads};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamHyper {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl AdamHyper {
    pub fn with_lr(learning_rate: f64) -> Self {
        AdamHyper {
            learning_rate,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// Optimizer state for one [`Mlp`]: moments have the same shapes as the
/// parameters they track, and `step_count` increases by exactly 1 per update.
#[derive(Debug, Clone)]
pub struct AdamState {
    pub hyper: AdamHyper,
    pub step_count: u64,
    first_moment: MlpGrads,
    second_moment: MlpGrads,
}

impl AdamState {
    pub fn new(net: &Mlp, learning_rate: f64) -> Self {
        AdamState {
            hyper: AdamHyper::with_lr(learning_rate),
            step_count: 0,
            first_moment: MlpGrads::zeros_like(net),
            second_moment: MlpGrads::zeros_like(net),
        }
    }

    /// One Adam update over all four parameter blocks.
    ///
    /// Panics on a non-finite gradient entry, naming the offending block.
    pub fn step(&mut self, net: &mut Mlp, grads: &MlpGrads) {
        self.step_count += 1;
        let t = self.step_count;
        let h = self.hyper;
        adam_step_slice(
            "w1",
            t,
            h,
            net.w1.as_mut_slice(),
            grads.w1.as_slice(),
            self.first_moment.w1.as_mut_slice(),
            self.second_moment.w1.as_mut_slice(),
        );
        adam_step_slice(
            "b1",
            t,
            h,
            &mut net.b1,
            &grads.b1,
            &mut self.first_moment.b1,
            &mut self.second_moment.b1,
        );
        adam_step_slice(
            "w2",
            t,
            h,
            net.w2.as_mut_slice(),
            grads.w2.as_slice(),
            self.first_moment.w2.as_mut_slice(),
            self.second_moment.w2.as_mut_slice(),
        );
        adam_step_slice(
            "b2",
            t,
            h,
            &mut net.b2,
            &grads.b2,
            &mut self.first_moment.b2,
            &mut self.second_moment.b2,
        );
    }
}

/// Bias-corrected Adam update on one parameter block.
pub fn adam_step_slice(
    block: &str,
    step_count: u64,
    hyper: AdamHyper,
    params: &mut [f64],
    grads: &[f64],
    m: &mut [f64],
    v: &mut [f64],
) {
    assert_eq!(params.len(), grads.len(), "adam: block {block} shape mismatch");
    let bc1 = 1.0 - hyper.beta1.powi(step_count as i32);
    let bc2 = 1.0 - hyper.beta2.powi(step_count as i32);
    for i in 0..params.len() {
        let g = grads[i];
        assert!(
            g.is_finite(),
            "adam: non-finite gradient in block {block} at index {i}: {g}"
        );
        m[i] = hyper.beta1 * m[i] + (1.0 - hyper.beta1) * g;
        v[i] = hyper.beta2 * v[i] + (1.0 - hyper.beta2) * g * g;
        let m_hat = m[i] / bc1;
        let v_hat = v[i] / bc2;
        params[i] -= hyper.learning_rate * m_hat / (v_hat.sqrt() + hyper.epsilon);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::rng;

    #[test]
    fn zero_gradient_leaves_params_unchanged() {
        let mut r = rng::stream(5, 0);
        let mut net = Mlp::init(3, 4, 2, &mut r);
        let before = net.clone();
        let mut opt = AdamState::new(&net, 0.1);
        let zero = MlpGrads::zeros_like(&net);
        opt.step(&mut net, &zero);
        assert_eq!(net, before);
        assert_eq!(opt.step_count, 1);
    }

    #[test]
    fn scalar_first_step_moves_by_lr_sign() {
        // p = 0, g = 1, lr = 0.1. Bias correction collapses the first step to
        // p -= lr * 1 / (1 + eps): hand-evaluated expected value below.
        let hyper = AdamHyper::with_lr(0.1);
        let mut p = [0.0];
        let mut m = [0.0];
        let mut v = [0.0];
        adam_step_slice("w1", 1, hyper, &mut p, &[1.0], &mut m, &mut v);
        let expected = -0.1 / (1.0 + 1e-8);
        assert!((p[0] - expected).abs() < 1e-15, "p = {}", p[0]);
        assert!((p[0] + 0.1).abs() < 1e-8);
    }

    #[test]
    fn identical_seeds_give_bitwise_identical_params() {
        let run = || {
            let mut r = rng::stream(17, 0);
            let mut net = Mlp::init(4, 8, 3, &mut r);
            let mut opt = AdamState::new(&net, 1e-2);
            let mut g = rng::stream(17, 1);
            for _ in 0..25 {
                let x: Vec<f64> = (0..4).map(|_| rand::Rng::random::<f64>(&mut g) - 0.5).collect();
                let upstream: Vec<f64> =
                    (0..3).map(|_| rand::Rng::random::<f64>(&mut g) - 0.5).collect();
                let grads = net.backward(&x, &upstream);
                opt.step(&mut net, &grads);
            }
            net.flatten()
        };
        let a = run();
        let b = run();
        assert_eq!(
            a.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
            b.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
        );
    }

    #[test]
    #[should_panic(expected = "non-finite gradient in block b2")]
    fn non_finite_gradient_names_block() {
        let mut net = Mlp::zeros(2, 2, 1);
        let mut opt = AdamState::new(&net, 0.1);
        let mut grads = MlpGrads::zeros_like(&net);
        grads.b2[0] = f64::NAN;
        opt.step(&mut net, &grads);
    }
}
