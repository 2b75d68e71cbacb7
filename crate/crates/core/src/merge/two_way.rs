use super::{check_bounds, check_sentinel, MergeBuffer, Sentinel};
use crate::error::Result;
use crate::order::Order;
use crate::stats::Probe;

/// Merges `[l, m)` and `[m, r)` by copying both runs to the buffer, each
/// followed by a sentinel, so the loop only tests the output position.
#[allow(clippy::too_many_arguments)]
pub fn merge_2way_sentinel<T, O, P>(
    v: &mut [T],
    l: usize,
    m: usize,
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
    let bounds = [l, m, r];
    check_bounds(v.len(), &bounds)?;
    check_sentinel(v, &bounds, &sentinel)?;
    let n = r - l;
    let n1 = m - l;
    let b = buf.require(n + 2)?;
    b[..n1].copy_from_slice(&v[l..m]);
    b[n1] = sentinel.0;
    b[n1 + 1..n + 1].copy_from_slice(&v[m..r]);
    b[n + 1] = sentinel.0;

    let (mut c1, mut c2) = (0, n1 + 1);
    for o in &mut v[l..r] {
        if ord.le(&b[c1], &b[c2]) {
            *o = b[c1];
            c1 += 1;
        } else {
            *o = b[c2];
            c2 += 1;
        }
    }

    probe.merge(&bounds);
    probe.buffered(n, 2);
    probe.scanned(2 * n, 2 * n + 2);
    probe.moves(2 * n);
    Ok(())
}

/// Merges `[l, m)` and `[m, r)` with bounds checks instead of sentinels.
#[allow(clippy::too_many_arguments)]
pub fn merge_2way_no_sentinel<T, O, P>(
    v: &mut [T],
    l: usize,
    m: usize,
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
    let bounds = [l, m, r];
    check_bounds(v.len(), &bounds)?;
    let n = r - l;
    let n1 = m - l;
    let b = buf.require(n)?;
    b.copy_from_slice(&v[l..r]);
    merge_slices(&mut v[l..r], &b[..n1], &b[n1..], ord);

    probe.merge(&bounds);
    probe.buffered(n, 0);
    probe.scanned(2 * n, 2 * n);
    probe.moves(2 * n);
    Ok(())
}

/// Merges the sorted slices `a` and `b` into `out`, which has room for both.
#[inline]
pub(super) fn merge_slices<T: Copy, O: Order<T>>(out: &mut [T], a: &[T], b: &[T], ord: &mut O) {
    debug_assert_eq!(out.len(), a.len() + b.len());
    let (mut i, mut j, mut o) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        let t = ord.le(&x, &y);
        out[o] = if t { x } else { y };
        i += t as usize;
        j += !t as usize;
        o += 1;
    }
    let rest = if i < a.len() { &a[i..] } else { &b[j..] };
    out[o..].copy_from_slice(rest);
}

/// Merges `[l, m)` and `[m, r)` copying only the shorter run to the buffer
/// and merging into the gap it leaves: forward when the left run is not
/// longer, backward (largest first, right run winning ties) otherwise.
#[allow(clippy::too_many_arguments)]
pub fn merge_2way_copy_smaller<T, O, P>(
    v: &mut [T],
    l: usize,
    m: usize,
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
    let bounds = [l, m, r];
    check_bounds(v.len(), &bounds)?;
    let (n1, n2) = (m - l, r - m);
    let written;
    if n1 <= n2 {
        let b = buf.require(n1)?;
        b.copy_from_slice(&v[l..m]);
        let (mut c1, mut c2, mut o) = (0, m, l);
        while c1 < n1 && c2 < r {
            let (x, y) = (b[c1], v[c2]);
            let t = ord.le(&x, &y);
            v[o] = if t { x } else { y };
            c1 += t as usize;
            c2 += !t as usize;
            o += 1;
        }
        v[o..o + (n1 - c1)].copy_from_slice(&b[c1..n1]);
        // right-run elements not yet passed are already in place
        written = o + (n1 - c1) - l;
    } else {
        let b = buf.require(n2)?;
        b.copy_from_slice(&v[m..r]);
        let (mut c1, mut c2, mut o) = (m, n2, r);
        while c1 > l && c2 > 0 {
            o -= 1;
            let (x, y) = (v[c1 - 1], b[c2 - 1]);
            let t = ord.le(&x, &y);
            v[o] = if t { y } else { x };
            c2 -= t as usize;
            c1 -= !t as usize;
        }
        v[o - c2..o].copy_from_slice(&b[..c2]);
        written = r - (o - c2);
    }
    let copied = n1.min(n2);

    probe.merge(&bounds);
    probe.buffered(copied, 0);
    probe.scanned(copied + written, copied + written);
    probe.moves(copied + written);
    Ok(())
}
