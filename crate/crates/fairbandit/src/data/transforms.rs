//! Dataset transforms: splitting, explicit group features, mean-projection
//! debiasing, equal-opportunity downsampling, and min-count class filtering.

use log::warn;
use rand::seq::SliceRandom;

use super::dataset::{counts, Dataset, LabeledExample};
use crate::error::{Error, Result};
use crate::numkit::{dot, norm, rng};

/// Seeded shuffle, then partition into (train, dev, test): dev and test take
/// the floor of their fractions, train gets the remainder.
pub fn split(ds: &Dataset, fractions: (f64, f64, f64), seed: u64) -> Result<(Dataset, Dataset, Dataset)> {
    let (f_train, f_dev, f_test) = fractions;
    if f_train <= 0.0 || f_dev <= 0.0 || f_test <= 0.0 {
        return Err(Error::config(format!(
            "split fractions must be positive, got {fractions:?}"
        )));
    }
    if (f_train + f_dev + f_test - 1.0).abs() > 1e-9 {
        return Err(Error::config(format!(
            "split fractions must sum to 1, got {fractions:?}"
        )));
    }
    let n = ds.len();
    let n_dev = (f_dev * n as f64).floor() as usize;
    let n_test = (f_test * n as f64).floor() as usize;
    let n_train = n - n_dev - n_test;
    if n_train == 0 || n_dev == 0 || n_test == 0 {
        return Err(Error::config(format!(
            "split of {n} examples produces an empty part (sizes {n_train}/{n_dev}/{n_test})"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng::stream(seed, 0));

    let take = |range: std::ops::Range<usize>, tag: &str| -> Result<Dataset> {
        let examples: Vec<LabeledExample> = order[range]
            .iter()
            .map(|&i| ds.examples()[i].clone())
            .collect();
        Ok(Dataset::new(
            examples,
            ds.d(),
            ds.n_classes(),
            ds.n_groups(),
            ds.provenance(),
        )?
        .with_provenance_suffix(&format!("split(seed={seed}, part={tag})")))
    };

    let train = take(0..n_train, "train")?;
    let dev = take(n_train..n_train + n_dev, "dev")?;
    let test = take(n_train + n_dev..n, "test")?;
    Ok((train, dev, test))
}

/// Append the group label as an explicit context dimension (0.0 or 1.0);
/// d grows by exactly one.
pub fn append_group_feature(ds: &Dataset) -> Result<Dataset> {
    if ds.n_groups() != 2 {
        return Err(Error::config(format!(
            "append_group_feature supports exactly 2 groups, dataset has {}",
            ds.n_groups()
        )));
    }
    let examples = ds
        .examples()
        .iter()
        .map(|ex| {
            let mut context = ex.context.clone();
            context.push(ex.group_label as f64);
            LabeledExample {
                context,
                class_label: ex.class_label,
                group_label: ex.group_label,
            }
        })
        .collect();
    Ok(
        Dataset::new(examples, ds.d() + 1, ds.n_classes(), ds.n_groups(), ds.provenance())?
            .with_provenance_suffix("append_group_feature"),
    )
}

/// Mean projection: remove the normalized group-mean-difference direction
/// from every context. A vanishing direction (‖v‖ < 1e-12) is a no-op with
/// a warning.
pub fn mp_debias(ds: &Dataset) -> Result<Dataset> {
    let d = ds.d();
    let mut mean = [vec![0.0f64; d], vec![0.0f64; d]];
    let mut count = [0usize; 2];
    for ex in ds.examples() {
        if ex.group_label < 2 {
            count[ex.group_label] += 1;
            for (m, &x) in mean[ex.group_label].iter_mut().zip(&ex.context) {
                *m += x;
            }
        }
    }
    if count[0] == 0 || count[1] == 0 {
        return Err(Error::config(
            "mp_debias requires both groups present in the dataset",
        ));
    }
    let v: Vec<f64> = (0..d)
        .map(|i| mean[0][i] / count[0] as f64 - mean[1][i] / count[1] as f64)
        .collect();
    let v_norm = norm(&v);
    if v_norm < 1e-12 {
        warn!("mp_debias: group means already identical; no-op");
        return Ok(ds.clone().with_provenance_suffix("mp_debias(noop)"));
    }
    let v_hat: Vec<f64> = v.iter().map(|x| x / v_norm).collect();

    let examples = ds
        .examples()
        .iter()
        .map(|ex| {
            let proj = dot(&ex.context, &v_hat);
            let context = ex
                .context
                .iter()
                .zip(&v_hat)
                .map(|(&x, &u)| x - proj * u)
                .collect();
            LabeledExample {
                context,
                class_label: ex.class_label,
                group_label: ex.group_label,
            }
        })
        .collect();
    Ok(
        Dataset::new(examples, d, ds.n_classes(), ds.n_groups(), ds.provenance())?
            .with_provenance_suffix("mp_debias"),
    )
}

/// Within each class, randomly subsample the larger group down to the
/// smaller group's count. Classes with a single group present are kept
/// intact with a warning.
pub fn eo_downsample(ds: &Dataset, seed: u64) -> Result<Dataset> {
    let ct = counts(ds);
    let mut keep = vec![true; ds.len()];
    let mut shuffle_rng = rng::stream(seed, 0);

    for class in 0..ds.n_classes() {
        let groups_present: Vec<usize> = (0..ds.n_groups())
            .filter(|&g| ct.cell(class, g) > 0)
            .collect();
        if ct.class_total(class) == 0 {
            continue;
        }
        if groups_present.len() < 2 {
            warn!("eo_downsample: class {class} has one group present; kept intact");
            continue;
        }
        let min_count = groups_present
            .iter()
            .map(|&g| ct.cell(class, g))
            .min()
            .unwrap() as usize;
        for &g in &groups_present {
            let members: Vec<usize> = ds
                .examples()
                .iter()
                .enumerate()
                .filter(|(_, ex)| ex.class_label == class && ex.group_label == g)
                .map(|(i, _)| i)
                .collect();
            if members.len() > min_count {
                let mut pool = members;
                pool.shuffle(&mut shuffle_rng);
                for &idx in &pool[min_count..] {
                    keep[idx] = false;
                }
            }
        }
    }

    let examples: Vec<LabeledExample> = ds
        .examples()
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(ex, _)| ex.clone())
        .collect();
    Ok(
        Dataset::new(examples, ds.d(), ds.n_classes(), ds.n_groups(), ds.provenance())?
            .with_provenance_suffix(&format!("eo_downsample(seed={seed})")),
    )
}

/// Keep only classes where every group cell has at least `min_per_cell`
/// examples; surviving class labels are re-indexed densely.
pub fn filter_min_count(ds: &Dataset, min_per_cell: u64) -> Result<Dataset> {
    let ct = counts(ds);
    let kept: Vec<usize> = (0..ds.n_classes())
        .filter(|&a| (0..ds.n_groups()).all(|g| ct.cell(a, g) >= min_per_cell))
        .collect();
    if kept.is_empty() {
        return Err(Error::config(format!(
            "filter_min_count({min_per_cell}): no class passes the threshold"
        )));
    }
    let mut remap = vec![usize::MAX; ds.n_classes()];
    for (new, &old) in kept.iter().enumerate() {
        remap[old] = new;
    }
    let examples: Vec<LabeledExample> = ds
        .examples()
        .iter()
        .filter(|ex| remap[ex.class_label] != usize::MAX)
        .map(|ex| LabeledExample {
            context: ex.context.clone(),
            class_label: remap[ex.class_label],
            group_label: ex.group_label,
        })
        .collect();
    let mapping: Vec<String> = kept
        .iter()
        .enumerate()
        .map(|(new, old)| format!("{old}->{new}"))
        .collect();
    Ok(
        Dataset::new(examples, ds.d(), kept.len(), ds.n_groups(), ds.provenance())?
            .with_provenance_suffix(&format!(
                "filter_min_count(min={min_per_cell}, map=[{}])",
                mapping.join(",")
            )),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::synthetic::SyntheticSpec;
    use crate::data::{counts, generate_synthetic};

    fn labeled(cells: &[(usize, usize, usize)]) -> Dataset {
        // (class, group, count) triples, 1-d contexts equal to the group.
        let mut examples = Vec::new();
        let n_classes = cells.iter().map(|c| c.0).max().unwrap() + 1;
        for &(a, g, n) in cells {
            for _ in 0..n {
                examples.push(LabeledExample {
                    context: vec![g as f64],
                    class_label: a,
                    group_label: g,
                });
            }
        }
        Dataset::new(examples, 1, n_classes, 2, "test").unwrap()
    }

    #[test]
    fn split_sizes_match_paper_fractions() {
        let ds = labeled(&[(0, 0, 100)]);
        let (train, dev, test) = split(&ds, (0.65, 0.10, 0.25), 3).unwrap();
        assert_eq!((train.len(), dev.len(), test.len()), (65, 10, 25));
    }

    #[test]
    fn split_is_deterministic_and_disjoint() {
        let spec = SyntheticSpec {
            class_counts: vec![40, 53],
            group0_ratio: vec![0.3, 0.7],
            dim: 3,
            separation: 1.0,
            group_signal: 0.2,
            noise_sigma: 0.5,
            seed: 5,
        };
        let ds = generate_synthetic(&spec).unwrap();
        let (a1, b1, c1) = split(&ds, (0.65, 0.10, 0.25), 11).unwrap();
        let (a2, b2, c2) = split(&ds, (0.65, 0.10, 0.25), 11).unwrap();
        assert_eq!(a1, a2);
        assert_eq!(b1, b2);
        assert_eq!(c1, c2);

        // Disjoint cover: the multiset of contexts is preserved.
        let mut all: Vec<Vec<u64>> = ds
            .examples()
            .iter()
            .map(|e| e.context.iter().map(|x| x.to_bits()).collect())
            .collect();
        let mut joined: Vec<Vec<u64>> = a1
            .examples()
            .iter()
            .chain(b1.examples())
            .chain(c1.examples())
            .map(|e| e.context.iter().map(|x| x.to_bits()).collect())
            .collect();
        all.sort();
        joined.sort();
        assert_eq!(all, joined);
    }

    #[test]
    fn split_rejects_empty_part() {
        let ds = labeled(&[(0, 0, 3)]);
        assert!(split(&ds, (0.65, 0.10, 0.25), 0).is_err());
    }

    #[test]
    fn append_group_feature_adds_exact_bit() {
        let ds = labeled(&[(0, 0, 2), (0, 1, 2)]);
        let out = append_group_feature(&ds).unwrap();
        assert_eq!(out.d(), ds.d() + 1);
        for ex in out.examples() {
            assert_eq!(*ex.context.last().unwrap(), ex.group_label as f64);
        }
    }

    #[test]
    fn mp_debias_equalizes_group_means_and_is_idempotent() {
        let spec = SyntheticSpec {
            class_counts: vec![300, 300],
            group0_ratio: vec![0.5, 0.5],
            dim: 6,
            separation: 1.0,
            group_signal: 1.0,
            noise_sigma: 0.3,
            seed: 9,
        };
        let ds = generate_synthetic(&spec).unwrap();
        let once = mp_debias(&ds).unwrap();

        // Projections of both group means onto the removed direction agree.
        let d = ds.d();
        let mut mean = [vec![0.0; d], vec![0.0; d]];
        let mut count = [0usize; 2];
        for ex in ds.examples() {
            count[ex.group_label] += 1;
            for (m, &x) in mean[ex.group_label].iter_mut().zip(&ex.context) {
                *m += x;
            }
        }
        let v: Vec<f64> = (0..d)
            .map(|i| mean[0][i] / count[0] as f64 - mean[1][i] / count[1] as f64)
            .collect();
        let vn = norm(&v);
        let v_hat: Vec<f64> = v.iter().map(|x| x / vn).collect();
        let mut proj = [0.0f64; 2];
        for ex in once.examples() {
            proj[ex.group_label] += dot(&ex.context, &v_hat);
        }
        let gap = (proj[0] / count[0] as f64 - proj[1] / count[1] as f64).abs();
        assert!(gap < 1e-10, "projected mean gap {gap}");

        let twice = mp_debias(&once).unwrap();
        for (a, b) in once.examples().iter().zip(twice.examples()) {
            for (x, y) in a.context.iter().zip(&b.context) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn mp_debias_zeroes_pure_group_coordinate() {
        // 1-d dataset where x = g: the only direction is the group direction.
        let ds = labeled(&[(0, 0, 3), (0, 1, 3)]);
        let out = mp_debias(&ds).unwrap();
        for ex in out.examples() {
            assert!(ex.context[0].abs() < 1e-12);
        }
    }

    #[test]
    fn eo_downsample_equalizes_group_counts() {
        let ds = labeled(&[(0, 0, 900), (0, 1, 100), (1, 0, 50), (1, 1, 50)]);
        let out = eo_downsample(&ds, 4).unwrap();
        let ct = counts(&out);
        assert_eq!(ct.rows(), &[vec![100, 100], vec![50, 50]]);
    }

    #[test]
    fn eo_downsample_output_is_submultiset() {
        let ds = labeled(&[(0, 0, 30), (0, 1, 7), (1, 0, 4), (1, 1, 9)]);
        let out = eo_downsample(&ds, 1).unwrap();
        assert!(out.len() <= ds.len());
        // Every output example exists in the input.
        for ex in out.examples() {
            assert!(ds.examples().iter().any(|e| e == ex));
        }
    }

    #[test]
    fn filter_min_count_keeps_qualifying_classes() {
        let ds = labeled(&[(0, 0, 1200), (0, 1, 1100), (1, 0, 900), (1, 1, 5000)]);
        let out = filter_min_count(&ds, 1000).unwrap();
        assert_eq!(out.n_classes(), 1);
        assert!(out.examples().iter().all(|ex| ex.class_label == 0));
        assert_eq!(out.len(), 2300);
    }

    #[test]
    fn filter_min_count_zero_is_identity_on_examples() {
        let ds = labeled(&[(0, 0, 5), (1, 1, 5), (1, 0, 2)]);
        let out = filter_min_count(&ds, 0).unwrap();
        assert_eq!(out.len(), ds.len());
        assert_eq!(out.n_classes(), ds.n_classes());
    }

    #[test]
    fn filter_min_count_reindexes_densely() {
        let ds = labeled(&[(0, 0, 1), (0, 1, 1), (1, 0, 9), (1, 1, 9), (2, 0, 9), (2, 1, 9)]);
        let out = filter_min_count(&ds, 5).unwrap();
        assert_eq!(out.n_classes(), 2);
        for ex in out.examples() {
            assert!(ex.class_label < 2);
        }
        assert!(out.provenance().contains("1->0"));
        assert!(out.provenance().contains("2->1"));
    }

    #[test]
    fn filter_min_count_all_filtered_is_error() {
        let ds = labeled(&[(0, 0, 1), (0, 1, 1)]);
        assert!(filter_min_count(&ds, 10).is_err());
    }
}
