//! Instrumentation: counters threaded through a sort, merge traces, and the
//! derived reporting values (scanned-element estimate, normalized costs).
//!
//! Everything goes through the [`Probe`] trait. The unit probe `()` ignores
//! every event, so an uninstrumented sort monomorphizes to kernels with no
//! counter code at all.

use crate::runs::Run;

pub trait Probe {
    /// A run was detected (after extension to the minimum run length).
    #[inline(always)]
    fn run(&mut self, _run: Run) {}
    /// A merge of adjacent regions `[b[0], b[1]), [b[1], b[2]), ...` was executed.
    #[inline(always)]
    fn merge(&mut self, _bounds: &[usize]) {}
    /// Elements copied into the merge buffer, plus sentinel slots written there.
    #[inline(always)]
    fn buffered(&mut self, _elements: usize, _sentinels: usize) {}
    /// Element reads and writes issued by a merge kernel.
    #[inline(always)]
    fn scanned(&mut self, _reads: usize, _writes: usize) {}
    #[inline(always)]
    fn moves(&mut self, _n: usize) {}
    #[inline(always)]
    fn stack_height(&mut self, _height: usize) {}
    #[inline(always)]
    fn comparisons(&mut self, _count: u64) {}
    #[inline(always)]
    fn sentinel_fallback(&mut self) {}
}

impl Probe for () {}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SortStats {
    pub n: usize,
    pub comparisons: u64,
    /// Sum of the output sizes of all merges.
    pub merge_cost: u64,
    /// Elements copied into the buffer, sentinel slots included.
    pub buffer_cost: u64,
    pub moves: u64,
    pub max_stack_height: usize,
    pub runs_detected: u64,
    /// Executed merges with 2, 3 and 4 participating runs.
    pub merges_by_arity: [u64; 3],
    pub merge_reads: u64,
    pub merge_writes: u64,
    /// Set when the input held the reserved sentinel value and the sort
    /// switched to sentinel-free kernels.
    pub sentinel_fallback: bool,
    run_len_log_sum: f64,
}

impl SortStats {
    pub fn new(n: usize) -> Self {
        SortStats {
            n,
            ..Default::default()
        }
    }

    pub fn merges(&self) -> u64 {
        self.merges_by_arity.iter().sum()
    }

    /// Run-length entropy of the detected runs, in bits per element.
    pub fn entropy_bits(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let n = self.n as f64;
        (n.log2() - self.run_len_log_sum / n).max(0.0)
    }

    pub fn scanned_elements_estimate(&self) -> u64 {
        scanned_elements_estimate(self.merge_cost, self.n)
    }
}

impl Probe for SortStats {
    #[inline]
    fn run(&mut self, run: Run) {
        let len = run.len() as f64;
        self.runs_detected += 1;
        self.run_len_log_sum += len * len.log2();
    }

    #[inline]
    fn merge(&mut self, bounds: &[usize]) {
        let ways = bounds.len() - 1;
        debug_assert!((2..=4).contains(&ways));
        self.merge_cost += (bounds[ways] - bounds[0]) as u64;
        self.merges_by_arity[ways - 2] += 1;
    }

    #[inline]
    fn buffered(&mut self, elements: usize, sentinels: usize) {
        self.buffer_cost += (elements + sentinels) as u64;
    }

    #[inline]
    fn scanned(&mut self, reads: usize, writes: usize) {
        self.merge_reads += reads as u64;
        self.merge_writes += writes as u64;
    }

    #[inline]
    fn moves(&mut self, n: usize) {
        self.moves += n as u64;
    }

    #[inline]
    fn stack_height(&mut self, height: usize) {
        self.max_stack_height = self.max_stack_height.max(height);
    }

    #[inline]
    fn comparisons(&mut self, count: u64) {
        self.comparisons += count;
    }

    fn sentinel_fallback(&mut self) {
        self.sentinel_fallback = true;
    }
}

/// Counters plus the full list of detected runs and executed merges, for
/// checking a sort against the merge-tree oracles.
#[derive(Debug, Clone, Default)]
pub struct Traced {
    pub stats: SortStats,
    pub runs: Vec<Run>,
    /// Boundaries of each merge, `[l, g1, .., r]`, in execution order.
    pub merges: Vec<Vec<usize>>,
}

impl Traced {
    pub fn new(n: usize) -> Self {
        Traced {
            stats: SortStats::new(n),
            ..Default::default()
        }
    }

    pub fn run_lengths(&self) -> Vec<usize> {
        self.runs.iter().map(Run::len).collect()
    }
}

impl Probe for Traced {
    fn run(&mut self, run: Run) {
        self.stats.run(run);
        self.runs.push(run);
    }
    fn merge(&mut self, bounds: &[usize]) {
        self.stats.merge(bounds);
        self.merges.push(bounds.to_vec());
    }
    fn buffered(&mut self, elements: usize, sentinels: usize) {
        self.stats.buffered(elements, sentinels);
    }
    fn scanned(&mut self, reads: usize, writes: usize) {
        self.stats.scanned(reads, writes);
    }
    fn moves(&mut self, n: usize) {
        self.stats.moves(n);
    }
    fn stack_height(&mut self, height: usize) {
        self.stats.stack_height(height);
    }
    fn comparisons(&mut self, count: u64) {
        self.stats.comparisons(count);
    }
    fn sentinel_fallback(&mut self) {
        self.stats.sentinel_fallback();
    }
}

/// Memory-transfer estimate: every merge of cost `m` reads and writes each
/// element twice (into the buffer, then back), plus one scan for run
/// detection and one for buffer initialization.
pub fn scanned_elements_estimate(merge_cost: u64, n: usize) -> u64 {
    4 * merge_cost + 2 * n as u64
}

/// `value / (n lg(n / min_run_len))`, the normalization used for merge cost.
pub fn normalized_merge_cost(value: f64, n: usize, min_run_len: usize) -> f64 {
    let n = n as f64;
    value / (n * (n / min_run_len as f64).log2())
}

/// Running time in milliseconds scaled by `10^6 / (n lg n)`.
pub fn normalized_time(millis: f64, n: usize) -> f64 {
    let n = n as f64;
    millis * 1e6 / (n * n.log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scanned_estimate_examples() {
        assert_eq!(scanned_elements_estimate(0, 10), 20);
        assert_eq!(scanned_elements_estimate(6, 6), 36);
    }

    #[test]
    fn table_one_scanned_estimate_matches_cache_misses() {
        // n = 10^8 ints, 4-way merge cost from the cachegrind run; 16 ints per line.
        let estimate = scanned_elements_estimate(678_233_797, 100_000_000);
        assert_eq!(estimate, 2_912_935_188);
        let lines = estimate as f64 / 16.0;
        let measured = 90_998_034.0 + 90_941_221.0;
        assert!(
            (lines / measured - 1.0).abs() < 1e-3,
            "{}",
            lines / measured
        );
    }

    #[test]
    fn normalization_examples() {
        let n = 1 << 12;
        let v = n as f64 * ((n as f64) / 24.0).log2();
        assert!((normalized_merge_cost(v, n, 24) - 1.0).abs() < 1e-12);
        assert_eq!(normalized_merge_cost(28.0, 16, 1), 0.4375);
        let t = normalized_time(1.0, 1_000_000);
        assert!((t - 0.050171665943996).abs() < 1e-12, "{t}");
    }

    #[test]
    fn merge_events_accumulate() {
        let mut s = SortStats::new(10);
        s.merge(&[0, 3, 10]);
        s.merge(&[0, 2, 4, 6, 10]);
        s.buffered(10, 2);
        assert_eq!(s.merge_cost, 20);
        assert_eq!(s.merges_by_arity, [1, 0, 1]);
        assert_eq!(s.buffer_cost, 12);
        assert_eq!(s.merges(), 2);
    }

    #[test]
    fn entropy_from_runs() {
        let mut s = SortStats::new(16);
        for (b, e) in [(0, 8), (8, 12), (12, 14), (14, 16)] {
            s.run(Run::new(b, e));
        }
        assert!((s.entropy_bits() - 1.75).abs() < 1e-12);
        assert_eq!(s.runs_detected, 4);
    }
}
