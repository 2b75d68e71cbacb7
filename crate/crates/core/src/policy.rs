//! The k-way Powersort driver.
//!
//! Runs are discovered left to right. Each new boundary's power decides
//! whether the run to its left is pushed onto the run stack or first merged
//! with every stack run of the topmost (larger) power. Powers on the stack
//! stay weakly increasing from bottom to top, and at most `k - 1` entries
//! share a power, so every merge combines at most `k` runs.
//!
//! The stack logic in [`Policy`] only sees run boundaries and powers; the
//! sort and [`merge_schedule`] drive the same code, the latter on abstract
//! power sequences.

use crate::error::{Error, Result};
use crate::merge::{self, MergeBuffer, Sentinel};
use crate::order::Order;
use crate::power::{max_power, power_unchecked};
use crate::runs::{extend_run, find_first_run, Run};
use crate::stats::Probe;

/// Which merge kernels a sort uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// Sentinel-terminated runs: 2-way loop, or 3-/4-way tournament trees.
    /// Falls back to [`Kernel::NoSentinel`] when the element type has no
    /// reserved `+inf` value or the input contains it.
    Sentinel,
    /// 2-way only: buffer the shorter run and merge into the gap.
    CopySmaller,
    /// Bounds-checked 2-way merging; merging by stages for 3 and 4 runs.
    NoSentinel,
}

/// How the stack is collapsed once all runs are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MergeDown {
    /// Bring the number of runs to `j(k-1) + 1` with one smaller merge first,
    /// then use full `k`-way merges only.
    Balanced,
    /// Repeatedly merge the top `k - 1` stack entries with the last run.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Config {
    /// Merge arity, 2 or 4.
    pub k: usize,
    pub kernel: Kernel,
    /// Shorter runs are extended by insertion sort; 1 disables extension.
    pub min_run_len: usize,
    pub merge_down: MergeDown,
}

pub const DEFAULT_MIN_RUN_LEN: usize = 24;

impl Default for Config {
    fn default() -> Self {
        Config::four_way()
    }
}

impl Config {
    pub fn two_way() -> Self {
        Config {
            k: 2,
            kernel: Kernel::Sentinel,
            min_run_len: DEFAULT_MIN_RUN_LEN,
            merge_down: MergeDown::Balanced,
        }
    }

    pub fn four_way() -> Self {
        Config {
            k: 4,
            ..Config::two_way()
        }
    }

    pub fn with_kernel(self, kernel: Kernel) -> Self {
        Config { kernel, ..self }
    }

    pub fn with_min_run_len(self, min_run_len: usize) -> Self {
        Config {
            min_run_len,
            ..self
        }
    }

    pub fn with_merge_down(self, merge_down: MergeDown) -> Self {
        Config { merge_down, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k != 2 && self.k != 4 {
            return Err(Error::UnsupportedArity(self.k));
        }
        if self.kernel == Kernel::CopySmaller && self.k != 2 {
            return Err(Error::KernelArityMismatch {
                kernel: self.kernel,
                k: self.k,
            });
        }
        if self.min_run_len == 0 {
            return Err(Error::ZeroMinRunLen);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunStackEntry {
    pub begin: usize,
    pub power: u32,
}

/// Pending runs with their boundary powers. Entry 0 is a power-0 sentinel;
/// a run's end is the next entry's begin (or the current run's begin).
#[derive(Debug, Clone)]
pub struct RunStack {
    entries: Vec<RunStackEntry>,
    k: usize,
    capacity: usize,
}

impl RunStack {
    /// Stack for an array of length `n`; holds at most
    /// `(k - 1) * (ceil(log_k n) + 1)` runs.
    pub fn new(k: usize, n: usize) -> Self {
        Self::with_capacity(k, (k - 1) * max_power(k, n.max(1)) as usize)
    }

    pub fn with_capacity(k: usize, capacity: usize) -> Self {
        let mut entries = Vec::with_capacity(capacity + 1);
        entries.push(RunStackEntry { begin: 0, power: 0 });
        RunStack {
            entries,
            k,
            capacity,
        }
    }

    pub fn height(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn is_empty(&self) -> bool {
        self.height() == 0
    }

    pub fn top_power(&self) -> u32 {
        self.entries[self.entries.len() - 1].power
    }

    pub fn entries(&self) -> &[RunStackEntry] {
        &self.entries[1..]
    }

    fn push(&mut self, entry: RunStackEntry) -> Result<()> {
        if entry.power < self.top_power() {
            return Err(Error::InadmissiblePowers(
                "stack powers must weakly increase",
            ));
        }
        let equal = self
            .entries
            .iter()
            .rev()
            .take_while(|e| e.power == entry.power)
            .count();
        if equal + 1 > self.k - 1 {
            return Err(Error::InadmissiblePowers(
                "more than k - 1 equal powers on the stack",
            ));
        }
        self.entries.push(entry);
        if self.height() > self.capacity {
            return Err(Error::InadmissiblePowers("run stack overflow"));
        }
        Ok(())
    }

    /// Number of top entries sharing the top power.
    fn top_group(&self) -> usize {
        let p = self.top_power();
        self.entries
            .iter()
            .rev()
            .take_while(|e| e.power == p)
            .count()
    }

    /// Pops the top `count` entries and returns the merge boundaries of
    /// those runs followed by `run`.
    fn pop_group(&mut self, count: usize, run: Run, bounds: &mut [usize; 5]) -> usize {
        let h = self.entries.len();
        for (slot, e) in bounds.iter_mut().zip(&self.entries[h - count..]) {
            *slot = e.begin;
        }
        bounds[count] = run.begin;
        bounds[count + 1] = run.end;
        self.entries.truncate(h - count);
        count + 2
    }
}

/// Stack discipline of k-way Powersort, independent of any array.
#[derive(Debug, Clone)]
pub struct Policy {
    stack: RunStack,
}

impl Policy {
    pub fn new(stack: RunStack) -> Self {
        Policy { stack }
    }

    pub fn stack(&self) -> &RunStack {
        &self.stack
    }

    /// Handles the boundary between `run` (the current run) and the next
    /// run, whose power is `power`: merges while the top of the stack has a
    /// larger power, then pushes `run`. `merge` receives `[l, g1, .., r]`.
    pub fn push_boundary<F>(&mut self, run: &mut Run, power: u32, merge: &mut F) -> Result<()>
    where
        F: FnMut(&[usize]) -> Result<()>,
    {
        while self.stack.top_power() > power {
            self.merge_loop(run, merge)?;
        }
        self.stack.push(RunStackEntry {
            begin: run.begin,
            power,
        })
    }

    /// Merges the top group of equal-power runs with `run`.
    fn merge_loop<F>(&mut self, run: &mut Run, merge: &mut F) -> Result<()>
    where
        F: FnMut(&[usize]) -> Result<()>,
    {
        let group = self.stack.top_group();
        if group > self.stack.k - 1 {
            return Err(Error::InadmissiblePowers(
                "more than k - 1 equal powers on the stack",
            ));
        }
        self.merge_top(group, run, merge)
    }

    fn merge_top<F>(&mut self, count: usize, run: &mut Run, merge: &mut F) -> Result<()>
    where
        F: FnMut(&[usize]) -> Result<()>,
    {
        let mut bounds = [0; 5];
        let len = self.stack.pop_group(count, *run, &mut bounds);
        merge(&bounds[..len])?;
        run.begin = bounds[0];
        Ok(())
    }

    /// Collapses the stack once `run` is the rightmost run.
    pub fn merge_down<F>(&mut self, run: &mut Run, mode: MergeDown, merge: &mut F) -> Result<()>
    where
        F: FnMut(&[usize]) -> Result<()>,
    {
        let per_merge = self.stack.k - 1;
        if mode == MergeDown::Balanced {
            // runs = height + 1; make height a multiple of k - 1 first
            let first = self.stack.height() % per_merge;
            if first > 0 {
                self.merge_top(first, run, merge)?;
            }
        }
        while !self.stack.is_empty() {
            let count = per_merge.min(self.stack.height());
            self.merge_top(count, run, merge)?;
        }
        Ok(())
    }
}

/// Merges Powersort performs on `powers.len() + 1` unit runs with the given
/// boundary powers. Run `i` is `[i, i + 1)`, so each merge is reported as
/// leaf indices `[first, .., last + 1]`.
pub fn merge_schedule(powers: &[u32], k: usize, mode: MergeDown) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::UnsupportedArity(k));
    }
    if powers.contains(&0) {
        return Err(Error::InadmissiblePowers("powers start at 1"));
    }
    let max = powers.iter().copied().max().unwrap_or(0) as usize;
    let mut policy = Policy::new(RunStack::with_capacity(k, (k - 1) * max));
    let mut merges = Vec::new();
    let mut record = |b: &[usize]| {
        merges.push(b.to_vec());
        Ok(())
    };
    let mut run = Run::new(0, 1);
    for (i, &p) in powers.iter().enumerate() {
        policy.push_boundary(&mut run, p, &mut record)?;
        run = Run::new(i + 1, i + 2);
    }
    policy.merge_down(&mut run, mode, &mut record)?;
    Ok(merges)
}

/// Sorts `v` with k-way Powersort.
///
/// `sentinel` must be strictly greater (under `ord`) than every element that
/// is not equal to it; it is only used by [`Kernel::Sentinel`]. Runs ending
/// in a value `>=` the sentinel switch the rest of the sort to sentinel-free
/// kernels. Comparisons are reported through `ord`, everything else through
/// `probe`.
pub fn powersort<T, O, P>(
    v: &mut [T],
    config: &Config,
    sentinel: Option<Sentinel<T>>,
    ord: &mut O,
    probe: &mut P,
) -> Result<()>
where
    T: Copy + Ord,
    O: Order<T>,
    P: Probe,
{
    config.validate()?;
    let n = v.len();
    if n == 0 {
        return Ok(());
    }
    let mut sentinel = if config.kernel == Kernel::Sentinel {
        sentinel
    } else {
        None
    };
    let next_run = |v: &mut [T],
                    begin: usize,
                    ord: &mut O,
                    probe: &mut P,
                    sentinel: &mut Option<Sentinel<T>>| {
        let found = find_first_run(&mut v[begin..], ord, probe);
        let run = Run::new(begin, begin + found.end);
        let run = extend_run(v, run, config.min_run_len, ord, probe);
        probe.run(run);
        if let Some(s) = sentinel {
            if v[run.end - 1] >= s.0 {
                *sentinel = None;
                probe.sentinel_fallback();
            }
        }
        run
    };

    let mut buf = MergeBuffer::new(n, v[0]);
    let mut policy = Policy::new(RunStack::new(config.k, n));
    let mut run_a = next_run(v, 0, ord, probe, &mut sentinel);
    while run_a.end < n {
        let run_b = next_run(v, run_a.end, ord, probe, &mut sentinel);
        let power = power_unchecked(
            config.k as u128,
            n as u128,
            (run_a.begin + run_a.end) as u128,
            (run_b.begin + run_b.end) as u128,
        )
        .0;
        let mut merge = |b: &[usize]| execute_merge(v, b, &mut buf, config, sentinel, ord, probe);
        policy.push_boundary(&mut run_a, power, &mut merge)?;
        probe.stack_height(policy.stack().height());
        run_a = run_b;
    }
    let mut merge = |b: &[usize]| execute_merge(v, b, &mut buf, config, sentinel, ord, probe);
    policy.merge_down(&mut run_a, config.merge_down, &mut merge)?;
    debug_assert_eq!(run_a, Run::new(0, n));
    Ok(())
}

fn execute_merge<T, O, P>(
    v: &mut [T],
    b: &[usize],
    buf: &mut MergeBuffer<T>,
    config: &Config,
    sentinel: Option<Sentinel<T>>,
    ord: &mut O,
    probe: &mut P,
) -> Result<()>
where
    T: Copy + Ord,
    O: Order<T>,
    P: Probe,
{
    match (config.kernel, sentinel, b.len() - 1) {
        (Kernel::Sentinel, Some(s), 2) => {
            merge::merge_2way_sentinel(v, b[0], b[1], b[2], buf, s, ord, probe)
        }
        (Kernel::Sentinel, Some(s), 3) => {
            merge::merge_3way(v, b[0], b[1], b[2], b[3], buf, s, ord, probe)
        }
        (Kernel::Sentinel, Some(s), 4) => {
            merge::merge_4way_sentinel(v, b[0], b[1], b[2], b[3], b[4], buf, s, ord, probe)
        }
        (Kernel::CopySmaller, _, 2) => {
            merge::merge_2way_copy_smaller(v, b[0], b[1], b[2], buf, ord, probe)
        }
        (_, _, 2) => merge::merge_2way_no_sentinel(v, b[0], b[1], b[2], buf, ord, probe),
        (_, _, 3 | 4) => merge::merge_stages(v, b, buf, ord, probe),
        _ => Err(Error::MalformedBounds(format!("{b:?}"))),
    }
}
