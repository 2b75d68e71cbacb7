//! Run detection and extension.

use crate::order::Order;
use crate::stats::Probe;

/// Half-open index interval `[begin, end)` of an already sorted segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub begin: usize,
    pub end: usize,
}

impl Run {
    pub fn new(begin: usize, end: usize) -> Self {
        debug_assert!(begin <= end);
        Run { begin, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.begin
    }

    pub fn is_empty(&self) -> bool {
        self.begin == self.end
    }
}

/// Finds the maximal run starting at `v[0]`.
///
/// A weakly increasing prefix is returned as is. A strictly decreasing prefix
/// is reversed in place first; strictness keeps equal elements in order.
/// Uses exactly `len - 1` comparisons when the run reaches the end of `v`,
/// and `len` otherwise.
pub fn find_first_run<T, O, P>(v: &mut [T], ord: &mut O, probe: &mut P) -> Run
where
    O: Order<T>,
    P: Probe,
{
    let n = v.len();
    assert!(n > 0, "find_first_run on an empty slice");
    if n == 1 {
        return Run::new(0, 1);
    }
    let mut end = 2;
    if ord.le(&v[0], &v[1]) {
        while end < n && ord.le(&v[end - 1], &v[end]) {
            end += 1;
        }
    } else {
        // strictly decreasing: v[i] > v[i+1] means !(v[i] <= v[i+1])
        while end < n && !ord.le(&v[end - 1], &v[end]) {
            end += 1;
        }
        v[..end].reverse();
        probe.moves(end & !1);
    }
    Run::new(0, end)
}

/// Stable insertion sort of `v`, whose first `sorted_prefix` elements are
/// already weakly increasing.
pub fn insertion_sort<T, O, P>(v: &mut [T], sorted_prefix: usize, ord: &mut O, probe: &mut P)
where
    T: Copy,
    O: Order<T>,
    P: Probe,
{
    let mut moves = 0;
    for i in sorted_prefix.max(1)..v.len() {
        let x = v[i];
        let mut j = i;
        while j > 0 && !ord.le(&v[j - 1], &x) {
            v[j] = v[j - 1];
            j -= 1;
        }
        if j != i {
            v[j] = x;
            moves += i - j + 1;
        }
    }
    probe.moves(moves);
}

/// Extends `run` (a run of `v` starting at `run.begin`) to at least
/// `min_run_len` elements, clamped to the end of `v`, by insertion sort.
pub fn extend_run<T, O, P>(
    v: &mut [T],
    run: Run,
    min_run_len: usize,
    ord: &mut O,
    probe: &mut P,
) -> Run
where
    T: Copy,
    O: Order<T>,
    P: Probe,
{
    if run.len() >= min_run_len {
        return run;
    }
    let end = v.len().min(run.begin + min_run_len);
    insertion_sort(&mut v[run.begin..end], run.len(), ord, probe);
    Run::new(run.begin, end)
}

/// Splits `v` into its maximal runs, reversing strictly decreasing ones.
/// This is the decomposition a sort with minimum run length 1 works on.
pub fn detect_runs<T, O: Order<T>>(v: &mut [T], ord: &mut O) -> Vec<Run> {
    let mut runs = Vec::new();
    let mut begin = 0;
    while begin < v.len() {
        let run = find_first_run(&mut v[begin..], ord, &mut ());
        runs.push(Run::new(begin, begin + run.end));
        begin += run.end;
    }
    runs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{Counting, Natural};
    use crate::stats::SortStats;

    fn first_run(v: &mut [i32]) -> Run {
        find_first_run(v, &mut Natural, &mut ())
    }

    #[test]
    fn single_element() {
        assert_eq!(first_run(&mut [5]), Run::new(0, 1));
    }

    #[test]
    fn equal_pair_stays_in_increasing_run() {
        let mut v = [1, 2, 2, 1];
        assert_eq!(first_run(&mut v), Run::new(0, 3));
        assert_eq!(v, [1, 2, 2, 1]);
    }

    #[test]
    fn strictly_decreasing_prefix_is_reversed() {
        let mut v = [3, 2, 1, 9];
        assert_eq!(first_run(&mut v), Run::new(0, 3));
        assert_eq!(v, [1, 2, 3, 9]);
    }

    #[test]
    fn weak_descent_ends_decreasing_run() {
        let mut v = [3, 2, 2, 1];
        assert_eq!(first_run(&mut v), Run::new(0, 2));
        assert_eq!(v, [2, 3, 2, 1]);
    }

    #[test]
    fn run_detection_comparisons() {
        let mut ord = Counting::new(Natural);
        let mut v = [1, 2, 3, 0];
        find_first_run(&mut v, &mut ord, &mut ());
        assert_eq!(ord.count, 3);
        let mut ord = Counting::new(Natural);
        let mut v = [1, 2, 3, 4];
        find_first_run(&mut v, &mut ord, &mut ());
        assert_eq!(ord.count, 3);
    }

    #[test]
    fn extend_keeps_long_runs() {
        let mut v: Vec<i32> = (0..40).collect();
        let r = extend_run(&mut v, Run::new(0, 30), 24, &mut Natural, &mut ());
        assert_eq!(r, Run::new(0, 30));
    }

    #[test]
    fn extend_clamps_at_end() {
        let mut v = [4, 5, 6, 1, 9, 0, 3, 2, 8, 7];
        let r = extend_run(&mut v, Run::new(0, 3), 24, &mut Natural, &mut ());
        assert_eq!(r, Run::new(0, 10));
        assert_eq!(v, [0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
    }

    #[test]
    fn extend_to_min_len() {
        let mut v = [1, 5, 2, 4, 3, 0];
        let r = extend_run(&mut v, Run::new(0, 2), 4, &mut Natural, &mut ());
        assert_eq!(r, Run::new(0, 4));
        assert_eq!(v[..4], [1, 2, 4, 5]);
        assert_eq!(v[4..], [3, 0]);
    }

    #[test]
    fn extend_inside_larger_array() {
        let mut v = [9, 9, 7, 3, 5, 1];
        let r = extend_run(&mut v, Run::new(2, 3), 3, &mut Natural, &mut ());
        assert_eq!(r, Run::new(2, 5));
        assert_eq!(v, [9, 9, 3, 5, 7, 1]);
    }

    #[test]
    fn insertion_sort_examples() {
        let mut v = [2, 1];
        insertion_sort(&mut v, 1, &mut Natural, &mut ());
        assert_eq!(v, [1, 2]);

        let mut v = [1, 2, 3];
        let mut stats = SortStats::new(3);
        insertion_sort(&mut v, 3, &mut Natural, &mut stats);
        assert_eq!(v, [1, 2, 3]);
        assert_eq!(stats.moves, 0);
    }

    #[test]
    fn insertion_sort_is_stable() {
        let mut v = [(1, 'a'), (1, 'b')];
        let mut ord = crate::order::ByLe(|x: &(i32, char), y: &(i32, char)| x.0 <= y.0);
        insertion_sort(&mut v, 1, &mut ord, &mut ());
        assert_eq!(v, [(1, 'a'), (1, 'b')]);

        let mut v = [(2, 'a'), (1, 'b'), (2, 'c'), (1, 'd'), (0, 'e')];
        insertion_sort(&mut v, 0, &mut ord, &mut ());
        assert_eq!(v, [(0, 'e'), (1, 'b'), (1, 'd'), (2, 'a'), (2, 'c')]);
    }

    #[test]
    fn detect_runs_partitions() {
        let mut v = [1, 2, 2, 5, 4, 3, 3, 8, 0];
        let runs = detect_runs(&mut v, &mut Natural);
        assert_eq!(
            runs,
            vec![
                Run::new(0, 4),
                Run::new(4, 6),
                Run::new(6, 8),
                Run::new(8, 9)
            ]
        );
        assert_eq!(v, [1, 2, 2, 5, 3, 4, 3, 8, 0]);
    }
}
