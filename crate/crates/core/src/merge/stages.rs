//! Sentinel-free multiway merging by stages.
//!
//! A stage lasts until one run is exhausted. If `s` is the length of the
//! shortest remaining run, the next `s` outputs cannot exhaust any run, so
//! they run without bounds checks; then `s` is recomputed. When `s` hits 0
//! the root is output, the element held by the root's other child is put
//! back into its run, the empty run is dropped and the merge continues with
//! one run fewer (4 -> 3 -> 2).

use super::two_way::merge_slices;
use super::{check_bounds, MergeBuffer};
use crate::error::Result;
use crate::order::Order;
use crate::stats::Probe;

/// Merges `[l, g1)`, `[g1, g2)`, `[g2, g3)` and `[g3, r)` without sentinels.
#[allow(clippy::too_many_arguments)]
pub fn merge_4way_stages<T, O, P>(
    v: &mut [T],
    l: usize,
    g1: usize,
    g2: usize,
    g3: usize,
    r: usize,
    buf: &mut MergeBuffer<T>,
    ord: &mut O,
    probe: &mut P,
) -> Result<()>
where
    T: Copy,
    O: Order<T>,
    P: Probe,
{
    merge_stages(v, &[l, g1, g2, g3, r], buf, ord, probe)
}

/// Merges `[l, g1)`, `[g1, g2)` and `[g2, r)` without sentinels.
#[allow(clippy::too_many_arguments)]
pub fn merge_3way_stages<T, O, P>(
    v: &mut [T],
    l: usize,
    g1: usize,
    g2: usize,
    r: usize,
    buf: &mut MergeBuffer<T>,
    ord: &mut O,
    probe: &mut P,
) -> Result<()>
where
    T: Copy,
    O: Order<T>,
    P: Probe,
{
    merge_stages(v, &[l, g1, g2, r], buf, ord, probe)
}

/// Merges the 2 to 4 adjacent regions delimited by `bounds`.
pub fn merge_stages<T, O, P>(
    v: &mut [T],
    bounds: &[usize],
    buf: &mut MergeBuffer<T>,
    ord: &mut O,
    probe: &mut P,
) -> Result<()>
where
    T: Copy,
    O: Order<T>,
    P: Probe,
{
    stages(v, bounds, buf, ord, probe).map(|_| ())
}

/// What happened inside one stages merge; inspected by tests.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub(crate) struct StageLog {
    /// Number of runs at the start of each stage.
    pub stages: Vec<usize>,
    /// Rollbacks that landed in the run that had just been exhausted.
    pub rollbacks_into_empty: usize,
}

pub(crate) fn stages<T, O, P>(
    v: &mut [T],
    bounds: &[usize],
    buf: &mut MergeBuffer<T>,
    ord: &mut O,
    probe: &mut P,
) -> Result<StageLog>
where
    T: Copy,
    O: Order<T>,
    P: Probe,
{
    let ways = bounds.len().saturating_sub(1);
    if !(2..=4).contains(&ways) {
        return Err(crate::Error::MalformedBounds(format!(
            "{bounds:?} must delimit 2 to 4 runs"
        )));
    }
    check_bounds(v.len(), bounds)?;
    let (l, r) = (bounds[0], bounds[ways]);
    let n = r - l;
    let b = buf.require(n + 1)?;
    b[..n].copy_from_slice(&v[l..r]);
    // duplicate of the last element; only keeps reads at the very end in
    // bounds, it never acts as a sentinel
    b[n] = b[n - 1];

    let mut runs = Cursors {
        c: [0; 4],
        e: [0; 4],
        len: ways,
    };
    for i in 0..ways {
        runs.c[i] = bounds[i] - l;
        runs.e[i] = bounds[i + 1] - l;
    }

    let out = &mut v[l..r];
    let mut o = 0;
    let mut log = StageLog::default();
    loop {
        log.stages.push(runs.len);
        match runs.len {
            4 => tournament_stage::<T, O, true>(b, out, &mut o, &mut runs, ord, &mut log),
            3 => tournament_stage::<T, O, false>(b, out, &mut o, &mut runs, ord, &mut log),
            2 => {
                let (a, bb) = (&b[runs.c[0]..runs.e[0]], &b[runs.c[1]..runs.e[1]]);
                merge_slices(&mut out[o..], a, bb, ord);
                break;
            }
            _ => {
                out[o..].copy_from_slice(&b[runs.c[0]..runs.e[0]]);
                break;
            }
        }
    }

    probe.merge(bounds);
    probe.buffered(n, 0);
    probe.scanned(2 * n, 2 * n + 1);
    probe.moves(2 * n);
    Ok(log)
}

struct Cursors {
    c: [usize; 4],
    e: [usize; 4],
    len: usize,
}

impl Cursors {
    #[inline(always)]
    fn remaining(&self, i: usize) -> usize {
        self.e[i] - self.c[i]
    }

    fn shortest(&self) -> usize {
        (0..self.len).map(|i| self.remaining(i)).min().unwrap_or(0)
    }

    fn remove(&mut self, i: usize) {
        for j in i..self.len - 1 {
            self.c[j] = self.c[j + 1];
            self.e[j] = self.e[j + 1];
        }
        self.len -= 1;
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    pos: usize,
    run: usize,
}

struct Tree {
    left: Node,
    right: Node,
    from_left: bool,
}

impl Tree {
    #[inline(always)]
    fn root(&self) -> usize {
        if self.from_left {
            self.left.pos
        } else {
            self.right.pos
        }
    }
}

#[inline(always)]
fn play<T, O: Order<T>>(b: &[T], runs: &mut Cursors, i: usize, j: usize, ord: &mut O) -> Node {
    let run = if ord.le(&b[runs.c[i]], &b[runs.c[j]]) {
        i
    } else {
        j
    };
    runs.c[run] += 1;
    Node {
        pos: runs.c[run] - 1,
        run,
    }
}

#[inline(always)]
fn play_right<T, O: Order<T>, const FOUR: bool>(b: &[T], runs: &mut Cursors, ord: &mut O) -> Node {
    if FOUR {
        play(b, runs, 2, 3, ord)
    } else {
        runs.c[2] += 1;
        Node {
            pos: runs.c[2] - 1,
            run: 2,
        }
    }
}

fn init_tree<T, O: Order<T>, const FOUR: bool>(b: &[T], runs: &mut Cursors, ord: &mut O) -> Tree {
    let left = play(b, runs, 0, 1, ord);
    let right = play_right::<T, O, FOUR>(b, runs, ord);
    let from_left = ord.le(&b[left.pos], &b[right.pos]);
    Tree {
        left,
        right,
        from_left,
    }
}

/// `out.len()` steps of the 4-way tournament, none of which can exhaust a
/// run. Same replays as the generic loop, with the cursors kept in locals
/// and the replayed subtree picked without branching.
#[inline(always)]
fn safe_steps_four<T: Copy, O: Order<T>>(
    b: &[T],
    out: &mut [T],
    runs: &mut Cursors,
    tree: &mut Tree,
    ord: &mut O,
) {
    let [mut c0, mut c1, mut c2, mut c3] = runs.c;
    let (mut x, mut y) = (tree.left, tree.right);
    let mut right = !tree.from_left;
    for o in out {
        *o = b[if right { y.pos } else { x.pos }];
        let (i, j) = if right { (c2, c3) } else { (c0, c1) };
        let t = ord.le(&b[i], &b[j]);
        let node = Node {
            pos: if t { i } else { j },
            run: 2 * right as usize + !t as usize,
        };
        let (left, tl, tr) = (!right as usize, t as usize, !t as usize);
        let rt = right as usize;
        c0 += left & tl;
        c1 += left & tr;
        c2 += rt & tl;
        c3 += rt & tr;
        x = if right { x } else { node };
        y = if right { node } else { y };
        right = !ord.le(&b[x.pos], &b[y.pos]);
    }
    runs.c = [c0, c1, c2, c3];
    (tree.left, tree.right, tree.from_left) = (x, y, !right);
}

/// Runs the 4-way (or 3-way) tournament until one run is exhausted and
/// dropped. All runs must be nonempty on entry.
fn tournament_stage<T: Copy, O: Order<T>, const FOUR: bool>(
    b: &[T],
    out: &mut [T],
    o: &mut usize,
    runs: &mut Cursors,
    ord: &mut O,
    log: &mut StageLog,
) {
    debug_assert_eq!(runs.len, if FOUR { 4 } else { 3 });
    let mut tree = init_tree::<T, O, FOUR>(b, runs, ord);
    loop {
        let safe = runs.shortest();
        if FOUR && safe > 0 {
            safe_steps_four(b, &mut out[*o..*o + safe], runs, &mut tree, ord);
            *o += safe;
        } else if safe > 0 {
            for _ in 0..safe {
                out[*o] = b[tree.root()];
                *o += 1;
                if tree.from_left {
                    tree.left = play(b, runs, 0, 1, ord);
                } else {
                    tree.right = play_right::<T, O, FOUR>(b, runs, ord);
                }
                tree.from_left = ord.le(&b[tree.left.pos], &b[tree.right.pos]);
            }
        } else {
            // the root is the minimum of everything left
            out[*o] = b[tree.root()];
            *o += 1;
            // roll the other child's element back into its run
            let other = if tree.from_left {
                tree.right
            } else {
                tree.left
            };
            runs.c[other.run] -= 1;
            debug_assert_eq!(runs.c[other.run], other.pos);
            match (0..runs.len).find(|&i| runs.remaining(i) == 0) {
                Some(empty) => {
                    runs.remove(empty);
                    return;
                }
                None => {
                    // rolled back into the run that had just emptied; the
                    // root still made progress, so rebuild and go on
                    log.rollbacks_into_empty += 1;
                    tree = init_tree::<T, O, FOUR>(b, runs, ord);
                }
            }
        }
    }
}
