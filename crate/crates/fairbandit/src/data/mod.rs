//! Datasets, synthetic generation, embedding IO, and transforms.
//!
//! A [`Dataset`] is an immutable collection of (context, class, group)
//! examples; transforms return new datasets and record themselves in the
//! provenance tag. The canonical on-disk form is the FCB1 binary embedding
//! format (see [`io`]); a CSV loader is provided for interop.

mod dataset;
pub mod io;
pub mod probe;
pub mod synthetic;
pub mod transforms;

pub use dataset::{counts, CountTable, Dataset, LabeledExample};
pub use synthetic::{generate_synthetic, SyntheticSpec};
pub use transforms::{
    append_group_feature, eo_downsample, filter_min_count, mp_debias, split,
};
