//! Stable, run-adaptive sorting with 2-way and 4-way Powersort.
//!
//! Powersort detects the existing runs of its input and merges them in a
//! nearly optimal order, determined online from the "power" of each run
//! boundary. The 4-way variant merges up to four runs at once with a small
//! tournament tree, which roughly halves the total merge cost and with it
//! the memory traffic.
//!
//! ```
//! let mut v = vec![5, 1, 4, 2, 3];
//! powersort::stable_sort(&mut v);
//! assert_eq!(v, [1, 2, 3, 4, 5]);
//!
//! let config = powersort::Config::two_way().with_min_run_len(1);
//! let stats = powersort::stable_sort_with(&mut v, &config).unwrap();
//! assert_eq!(stats.merge_cost, 0);
//! ```

mod error;
pub mod merge;
pub mod oracle;
pub mod order;
pub mod policy;
pub mod power;
pub mod runs;
pub mod stats;

pub use error::{Error, Result};
pub use merge::{MergeBuffer, Sentinel};
pub use order::{ByLe, Counting, Natural, Order};
pub use policy::{powersort, Config, Kernel, MergeDown};
pub use power::{node_power, BoundaryPower};
pub use runs::Run;
pub use stats::{Probe, SortStats, Traced};

/// Element types the convenience API sorts. Types with a largest value that
/// can be reserved as `+inf` return it from [`Sortable::sentinel`] and get the
/// sentinel kernels; inputs that contain it are still sorted correctly.
pub trait Sortable: Copy + Ord {
    fn sentinel() -> Option<Self> {
        None
    }
}

macro_rules! sortable_int {
    ($($t:ty)*) => {$(
        impl Sortable for $t {
            fn sentinel() -> Option<Self> {
                Some(<$t>::MAX)
            }
        }
    )*};
}

sortable_int!(i8 i16 i32 i64 i128 isize u8 u16 u32 u64 u128 usize);

impl Sortable for char {
    fn sentinel() -> Option<Self> {
        Some(char::MAX)
    }
}

impl<A: Copy + Ord, B: Copy + Ord> Sortable for (A, B) {}

/// Sorts `v` stably with 4-way Powersort.
pub fn stable_sort<T: Sortable>(v: &mut [T]) {
    sort_unmetered(v, &Config::default()).expect("default configuration is valid");
}

/// Sorts `v` with the given configuration and no instrumentation.
pub fn sort_unmetered<T: Sortable>(v: &mut [T], config: &Config) -> Result<()> {
    powersort(
        v,
        config,
        T::sentinel().map(Sentinel),
        &mut Natural,
        &mut (),
    )
}

/// Sorts `v` and returns its counters.
pub fn stable_sort_with<T: Sortable>(v: &mut [T], config: &Config) -> Result<SortStats> {
    let mut stats = SortStats::new(v.len());
    let mut ord = Counting::new(Natural);
    powersort(v, config, T::sentinel().map(Sentinel), &mut ord, &mut stats)?;
    stats.comparisons = ord.count;
    Ok(stats)
}

/// Sorts `v` and returns its counters together with the detected runs and
/// every executed merge.
pub fn stable_sort_traced<T: Sortable>(v: &mut [T], config: &Config) -> Result<Traced> {
    let mut traced = Traced::new(v.len());
    let mut ord = Counting::new(Natural);
    powersort(
        v,
        config,
        T::sentinel().map(Sentinel),
        &mut ord,
        &mut traced,
    )?;
    traced.stats.comparisons = ord.count;
    Ok(traced)
}
