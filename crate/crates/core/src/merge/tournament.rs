//! 3-way and 4-way merging with a winner tournament tree and sentinels.
//!
//! ```text
//!        z          each node holds the buffer position of the element
//!      /   \        that won there; z also remembers whether it came
//!     x     y       from the left subtree
//!    / \   / \
//!   0   1 2   3     (3-way: y reads run 2 directly)
//! ```
//!
//! A run's cursor is advanced as soon as its element enters the tree, so each
//! output costs exactly two node recomputations: the child subtree the winner
//! came from, then the root.

use super::{check_bounds, check_sentinel, MergeBuffer, Sentinel};
use crate::error::Result;
use crate::order::Order;
use crate::stats::Probe;

/// Merges `[l, g1)`, `[g1, g2)` and `[g2, r)`.
#[allow(clippy::too_many_arguments)]
pub fn merge_3way<T, O, P>(
    v: &mut [T],
    l: usize,
    g1: usize,
    g2: usize,
    r: usize,
    buf: &mut MergeBuffer<T>,
    sentinel: Sentinel<T>,
    ord: &mut O,
    probe: &mut P,
) -> Result<()>
where
    T: Copy + Ord,
    O: Order<T>,
    P: Probe,
{
    tournament::<T, O, P, false>(v, &[l, g1, g2, r], buf, sentinel, ord, probe)
}

/// Merges `[l, g1)`, `[g1, g2)`, `[g2, g3)` and `[g3, r)`.
#[allow(clippy::too_many_arguments)]
pub fn merge_4way_sentinel<T, O, P>(
    v: &mut [T],
    l: usize,
    g1: usize,
    g2: usize,
    g3: usize,
    r: usize,
    buf: &mut MergeBuffer<T>,
    sentinel: Sentinel<T>,
    ord: &mut O,
    probe: &mut P,
) -> Result<()>
where
    T: Copy + Ord,
    O: Order<T>,
    P: Probe,
{
    tournament::<T, O, P, true>(v, &[l, g1, g2, g3, r], buf, sentinel, ord, probe)
}

fn tournament<T, O, P, const FOUR: bool>(
    v: &mut [T],
    bounds: &[usize],
    buf: &mut MergeBuffer<T>,
    sentinel: Sentinel<T>,
    ord: &mut O,
    probe: &mut P,
) -> Result<()>
where
    T: Copy + Ord,
    O: Order<T>,
    P: Probe,
{
    let ways = if FOUR { 4 } else { 3 };
    debug_assert_eq!(bounds.len(), ways + 1);
    check_bounds(v.len(), bounds)?;
    check_sentinel(v, bounds, &sentinel)?;
    let (l, r) = (bounds[0], bounds[ways]);
    let n = r - l;
    let b = buf.require(n + ways)?;

    // run i lives at b[bounds[i] - l + i ..], followed by its sentinel
    let mut c = [0usize; 4];
    for i in 0..ways {
        let start = bounds[i] - l + i;
        let len = bounds[i + 1] - bounds[i];
        b[start..start + len].copy_from_slice(&v[bounds[i]..bounds[i + 1]]);
        b[start + len] = sentinel.0;
        c[i] = start;
    }
    let [mut c0, mut c1, mut c2, mut c3] = c;

    macro_rules! play_left {
        () => {
            if ord.le(&b[c0], &b[c1]) {
                c0 += 1;
                c0 - 1
            } else {
                c1 += 1;
                c1 - 1
            }
        };
    }
    macro_rules! play_right {
        () => {
            if FOUR {
                if ord.le(&b[c2], &b[c3]) {
                    c2 += 1;
                    c2 - 1
                } else {
                    c3 += 1;
                    c3 - 1
                }
            } else {
                c2 += 1;
                c2 - 1
            }
        };
    }

    let out = &mut v[l..r];
    if FOUR {
        // Branch-free form of the loop below: the subtree to replay is
        // selected by index instead of by a data-dependent jump.
        let (mut c0, mut c1, mut c2, mut c3) = (c0, c1, c2, c3);
        let t = ord.le(&b[c0], &b[c1]);
        let mut x = if t { c0 } else { c1 };
        (c0, c1) = (c0 + t as usize, c1 + !t as usize);
        let t = ord.le(&b[c2], &b[c3]);
        let mut y = if t { c2 } else { c3 };
        (c2, c3) = (c2 + t as usize, c3 + !t as usize);
        let mut right = !ord.le(&b[x], &b[y]);
        out[0] = b[if right { y } else { x }];
        for o in &mut out[1..] {
            let (i, j) = if right { (c2, c3) } else { (c0, c1) };
            let t = ord.le(&b[i], &b[j]);
            let w = if t { i } else { j };
            let (left, tl, tr) = (!right as usize, t as usize, !t as usize);
            let rt = right as usize;
            c0 += left & tl;
            c1 += left & tr;
            c2 += rt & tl;
            c3 += rt & tr;
            x = if right { x } else { w };
            y = if right { w } else { y };
            right = !ord.le(&b[x], &b[y]);
            *o = b[if right { y } else { x }];
        }
    } else {
        let mut x = play_left!();
        let mut y = play_right!();
        let mut from_left = ord.le(&b[x], &b[y]);
        out[0] = if from_left { b[x] } else { b[y] };
        for o in &mut out[1..] {
            if from_left {
                x = play_left!();
            } else {
                y = play_right!();
            }
            from_left = ord.le(&b[x], &b[y]);
            *o = if from_left { b[x] } else { b[y] };
        }
        let _ = (c0, c1, c2, c3);
    }

    probe.merge(bounds);
    probe.buffered(n, ways);
    probe.scanned(2 * n, 2 * n + ways);
    probe.moves(2 * n);
    Ok(())
}
