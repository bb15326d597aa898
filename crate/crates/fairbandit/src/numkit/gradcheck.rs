//! Central finite-difference gradient checker.

/// Compare `analytic` against central differences of `loss` at `params`.
///
/// Returns the max over coordinates of |analytic − numeric| /
/// max(|analytic|, |numeric|, 1e-8). `loss` must be deterministic.
pub fn finite_diff_check(
    mut loss: impl FnMut(&[f64]) -> f64,
    params: &[f64],
    analytic: &[f64],
    step: f64,
) -> f64 {
    assert_eq!(params.len(), analytic.len(), "gradient length mismatch");
    let mut work = params.to_vec();
    let mut worst = 0.0f64;
    for i in 0..params.len() {
        let orig = work[i];
        work[i] = orig + step;
        let up = loss(&work);
        work[i] = orig - step;
        let down = loss(&work);
        work[i] = orig;
        let numeric = (up - down) / (2.0 * step);
        let denom = analytic[i].abs().max(numeric.abs()).max(1e-8);
        worst = worst.max((analytic[i] - numeric).abs() / denom);
    }
    worst
}
