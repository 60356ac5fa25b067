//! Intersections of sorted, duplicate-free id lists.

use crate::graph::VertexId;
use crate::metrics::Probe;

/// Longer list must exceed the shorter by this factor before galloping.
const GALLOP_RATIO: usize = 8;

/// Writes `a ∩ b` to the front of `out` and returns its length. `out` must
/// hold at least `min(a.len(), b.len())` elements; one more lets the merge
/// store unconditionally.
#[inline]
pub fn intersect_into<P: Probe>(a: &[VertexId], b: &[VertexId], out: &mut [VertexId], probe: &mut P) -> usize {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let n = if short.len() * GALLOP_RATIO < long.len() {
        gallop(short, long, |i, x| out[i] = x, probe)
    } else if out.len() > short.len() {
        merge_store(short, long, out, probe)
    } else {
        merge(short, long, |i, x| out[i] = x, probe)
    };
    probe.access(n as u64);
    n
}

/// `|a ∩ b|` without materializing it.
#[inline]
pub fn intersect_count<P: Probe>(a: &[VertexId], b: &[VertexId], probe: &mut P) -> usize {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.len() * GALLOP_RATIO < long.len() {
        gallop(short, long, |_, _| {}, probe)
    } else {
        let (mut i, mut j, mut n) = (0usize, 0usize, 0usize);
        let mut last_eq = true;
        while i < short.len() && j < long.len() {
            let (x, y) = (short[i], long[j]);
            last_eq = x == y;
            n += last_eq as usize;
            i += (x <= y) as usize;
            j += (y <= x) as usize;
        }
        report_merge(i, j, n, last_eq, probe);
        n
    }
}

/// Branch-free merge that stores every candidate and advances the output
/// cursor only on a match. Needs `out.len() > a.len().min(b.len())`.
#[inline]
fn merge_store<P: Probe>(a: &[VertexId], b: &[VertexId], out: &mut [VertexId], probe: &mut P) -> usize {
    let (mut i, mut j, mut n) = (0usize, 0usize, 0usize);
    let mut last_eq = true;
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        out[n] = x;
        last_eq = x == y;
        n += last_eq as usize;
        i += (x <= y) as usize;
        j += (y <= x) as usize;
    }
    report_merge(i, j, n, last_eq, probe);
    n
}

/// Accounting shared by the merges: each element examined counts as one
/// load, and a step consumes one element from each side on a match, one
/// element otherwise. When the last comparison was a mismatch, the element
/// it looked at on the surviving side was read but not consumed.
#[inline(always)]
fn report_merge<P: Probe>(i: usize, j: usize, n: usize, last_eq: bool, probe: &mut P) {
    let steps = (i + j - n) as u64;
    probe.iterations(steps);
    probe.access((i + j) as u64 + (steps > 0 && !last_eq) as u64);
}

/// Two-pointer merge. Each element is loaded at most once; only loads are
/// reported to the probe.
#[inline]
pub(crate) fn merge<P: Probe, E: FnMut(usize, VertexId)>(
    a: &[VertexId],
    b: &[VertexId],
    mut emit: E,
    probe: &mut P,
) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let (mut i, mut j, mut n) = (0usize, 0usize, 0usize);
    let (mut x, mut y) = (a[0], b[0]);
    let mut loads = 2u64;
    let mut steps = 0u64;
    loop {
        steps += 1;
        if x < y {
            i += 1;
            if i == a.len() {
                break;
            }
            x = a[i];
            loads += 1;
        } else if x > y {
            j += 1;
            if j == b.len() {
                break;
            }
            y = b[j];
            loads += 1;
        } else {
            emit(n, x);
            n += 1;
            i += 1;
            j += 1;
            if i == a.len() || j == b.len() {
                break;
            }
            x = a[i];
            y = b[j];
            loads += 2;
        }
    }
    probe.iterations(steps);
    probe.access(loads);
    n
}

/// For each element of `short`, gallops forward through `long`.
pub(crate) fn gallop<P: Probe, E: FnMut(usize, VertexId)>(
    short: &[VertexId],
    long: &[VertexId],
    mut emit: E,
    probe: &mut P,
) -> usize {
    let mut rest = long;
    let mut n = 0usize;
    let mut loads = 0u64;
    let mut steps = 0u64;
    for &x in short {
        loads += 1;
        if rest.is_empty() {
            break;
        }
        // Exponential probe for the first position not less than x.
        let mut step = 1usize;
        let mut lo = 0usize;
        loads += 1;
        steps += 1;
        if rest[0] < x {
            while step < rest.len() && rest[step] < x {
                loads += 1;
                steps += 1;
                lo = step;
                step <<= 1;
            }
            if step < rest.len() {
                loads += 1;
            }
            let hi = step.min(rest.len());
            // rest[lo] < x <= rest[hi] (or hi == len); binary search between.
            let (mut a, mut b) = (lo + 1, hi);
            while a < b {
                let mid = a + (b - a) / 2;
                loads += 1;
                steps += 1;
                if rest[mid] < x {
                    a = mid + 1;
                } else {
                    b = mid;
                }
            }
            rest = &rest[a..];
            if rest.is_empty() {
                break;
            }
            loads += 1;
        }
        if rest[0] == x {
            emit(n, x);
            n += 1;
            rest = &rest[1..];
        }
    }
    probe.iterations(steps);
    probe.access(loads);
    n
}
