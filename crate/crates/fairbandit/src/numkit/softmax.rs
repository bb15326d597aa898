//! Stable softmax, categorical sampling, entropy.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Max-subtracted softmax.
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = max_finite(logits);
    let exps: Vec<f64> = logits.iter().map(|&l| (l - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// log softmax(x)_i = x_i − max − ln Σ exp(x − max).
pub fn log_softmax(logits: &[f64]) -> Vec<f64> {
    let max = max_finite(logits);
    let log_sum: f64 = logits
        .iter()
        .map(|&l| (l - max).exp())
        .sum::<f64>()
        .ln();
    logits.iter().map(|&l| l - max - log_sum).collect()
}

/// Shannon entropy of softmax(logits), in nats.
pub fn entropy_from_logits(logits: &[f64]) -> f64 {
    let logp = log_softmax(logits);
    -logp.iter().map(|&lp| lp.exp() * lp).sum::<f64>()
}

/// Argmax with ties broken toward the lowest index.
pub fn argmax(xs: &[f64]) -> usize {
    assert!(!xs.is_empty(), "argmax of empty slice");
    let mut best = 0;
    for (i, &v) in xs.iter().enumerate().skip(1) {
        if v > xs[best] {
            best = i;
        }
    }
    best
}

/// Sample index i with probability softmax(logits)_i; returns (i, ln p_i).
pub fn softmax_sample(logits: &[f64], rng: &mut ChaCha8Rng) -> (usize, f64) {
    let probs = softmax(logits);
    let u: f64 = rng.random();
    let mut cum = 0.0;
    let mut chosen = probs.len() - 1;
    for (i, &p) in probs.iter().enumerate() {
        cum += p;
        if u < cum {
            chosen = i;
            break;
        }
    }
    (chosen, log_softmax(logits)[chosen])
}

fn max_finite(logits: &[f64]) -> f64 {
    assert!(!logits.is_empty(), "softmax of empty slice");
    let mut max = f64::NEG_INFINITY;
    for &l in logits {
        assert!(l.is_finite(), "softmax: non-finite logit {l}");
        if l > max {
            max = l;
        }
    }
    max
}
