use crate::error::{Error, Result};

/// One labeled context: the bandit round's input plus the class the agent
/// should pick and the protected-group label used for reward scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledExample {
    pub context: Vec<f64>,
    pub class_label: usize,
    pub group_label: usize,
}

/// Immutable labeled dataset. Construction validates shapes and label
/// ranges; transforms produce new datasets rather than mutating.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    examples: Vec<LabeledExample>,
    d: usize,
    n_classes: usize,
    n_groups: usize,
    provenance: String,
}

impl Dataset {
    pub fn new(
        examples: Vec<LabeledExample>,
        d: usize,
        n_classes: usize,
        n_groups: usize,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if examples.is_empty() {
            return Err(Error::config("dataset must be nonempty"));
        }
        for (i, ex) in examples.iter().enumerate() {
            if ex.context.len() != d {
                return Err(Error::config(format!(
                    "example {i}: context length {} != d = {d}",
                    ex.context.len()
                )));
            }
            if ex.class_label >= n_classes {
                return Err(Error::config(format!(
                    "example {i}: class label {} out of range [0, {n_classes})",
                    ex.class_label
                )));
            }
            if ex.group_label >= n_groups {
                return Err(Error::config(format!(
                    "example {i}: group label {} out of range [0, {n_groups})",
                    ex.group_label
                )));
            }
        }
        Ok(Dataset {
            examples,
            d,
            n_classes,
            n_groups,
            provenance: provenance.into(),
        })
    }

    pub fn examples(&self) -> &[LabeledExample] {
        &self.examples
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn n_groups(&self) -> usize {
        self.n_groups
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Same examples, extended provenance tag (used by transforms).
    pub(crate) fn with_provenance_suffix(mut self, suffix: &str) -> Self {
        self.provenance.push_str(" | ");
        self.provenance.push_str(suffix);
        self
    }
}

/// Per-(class, group) sample counts with class totals and the grand total.
#[derive(Debug, Clone, PartialEq)]
pub struct CountTable {
    counts: Vec<Vec<u64>>,
    class_totals: Vec<u64>,
    grand_total: u64,
}

impl CountTable {
    pub fn from_cells(counts: Vec<Vec<u64>>) -> Self {
        let class_totals: Vec<u64> = counts.iter().map(|row| row.iter().sum()).collect();
        let grand_total = class_totals.iter().sum();
        CountTable {
            counts,
            class_totals,
            grand_total,
        }
    }

    pub fn n_classes(&self) -> usize {
        self.counts.len()
    }

    pub fn n_groups(&self) -> usize {
        self.counts.first().map_or(0, |row| row.len())
    }

    pub fn cell(&self, class: usize, group: usize) -> u64 {
        self.counts[class][group]
    }

    pub fn class_total(&self, class: usize) -> u64 {
        self.class_totals[class]
    }

    pub fn grand_total(&self) -> u64 {
        self.grand_total
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.counts
    }

    /// FNV-1a over the cell values; identifies the table a scale matrix
    /// was frozen from.
    pub fn hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |v: u64| {
            for b in v.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        eat(self.counts.len() as u64);
        for row in &self.counts {
            eat(row.len() as u64);
            for &c in row {
                eat(c);
            }
        }
        h
    }
}

/// Exact per-(class, group) cell counts of a dataset.
pub fn counts(ds: &Dataset) -> CountTable {
    let mut cells = vec![vec![0u64; ds.n_groups()]; ds.n_classes()];
    for ex in ds.examples() {
        cells[ex.class_label][ex.group_label] += 1;
    }
    CountTable::from_cells(cells)
}
