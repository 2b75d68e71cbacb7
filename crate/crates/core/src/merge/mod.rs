//! Merge kernels.
//!
//! Every kernel merges adjacent, individually sorted regions of `v` in place
//! through a [`MergeBuffer`], is stable (the lower-indexed run wins ties), and
//! reports merge cost, buffer cost and element traffic to the probe.
//!
//! Sentinel kernels append a `+inf` value after each buffered run so their
//! inner loops need no bounds checks. They compare with `Ord` semantics and
//! must only be used with an order consistent with `T: Ord`.

mod stages;
mod tournament;
mod two_way;

pub use stages::{merge_3way_stages, merge_4way_stages, merge_stages};
pub use tournament::{merge_3way, merge_4way_sentinel};
pub use two_way::{merge_2way_copy_smaller, merge_2way_no_sentinel, merge_2way_sentinel};

use crate::error::{Error, Result};

/// Scratch space for merging. Holds enough room for the largest merge
/// output plus one slot per run for sentinels.
#[derive(Debug, Clone)]
pub struct MergeBuffer<T> {
    data: Vec<T>,
}

impl<T: Copy> MergeBuffer<T> {
    /// Buffer for merges of up to `n` elements with up to 4 runs, filled
    /// with copies of `fill`.
    pub fn new(n: usize, fill: T) -> Self {
        Self::with_capacity(n + 4, fill)
    }

    pub fn with_capacity(capacity: usize, fill: T) -> Self {
        MergeBuffer {
            data: vec![fill; capacity],
        }
    }

    pub fn capacity(&self) -> usize {
        self.data.len()
    }

    pub(crate) fn require(&mut self, needed: usize) -> Result<&mut [T]> {
        if self.data.len() < needed {
            return Err(Error::BufferTooSmall {
                needed,
                capacity: self.data.len(),
            });
        }
        Ok(&mut self.data[..needed])
    }
}

/// A `+inf` value: strictly greater than every element that will be merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sentinel<T>(pub T);

/// Checks that `bounds` describes nonempty adjacent regions inside `len`.
pub(crate) fn check_bounds(len: usize, bounds: &[usize]) -> Result<()> {
    if bounds.len() < 3 || bounds[bounds.len() - 1] > len {
        return Err(Error::MalformedBounds(format!(
            "{bounds:?} for a slice of length {len}"
        )));
    }
    for (i, w) in bounds.windows(2).enumerate() {
        if w[0] > w[1] {
            return Err(Error::MalformedBounds(format!(
                "{bounds:?} is not ascending"
            )));
        }
        if w[0] == w[1] {
            return Err(Error::EmptyRegion(i));
        }
    }
    Ok(())
}

/// Rejects regions holding a value not strictly below the sentinel. Regions
/// are sorted, so only their last elements need checking.
pub(crate) fn check_sentinel<T: Ord>(
    v: &[T],
    bounds: &[usize],
    sentinel: &Sentinel<T>,
) -> Result<()> {
    if bounds[1..].iter().any(|&end| v[end - 1] >= sentinel.0) {
        return Err(Error::SentinelInInput);
    }
    Ok(())
}
