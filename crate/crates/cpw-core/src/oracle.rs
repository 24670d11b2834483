//! Brute-force reference implementations used to cross-validate the fast
//! paths. These deliberately avoid the precomputed tables and the search-space
//! reductions of the main code: arithmetic is done on decoded tuples, and
//! minimizations enumerate every subset without translation normalization.

use crate::group::{word_mask, GroupSubset};

fn tuple_add(factors: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    factors
        .iter()
        .zip(a.iter().zip(b))
        .map(|(&f, (&x, &y))| (x + y) % f)
        .collect()
}

/// `A + B` by plain pair enumeration on decoded tuples.
pub fn sumset_naive(a: &GroupSubset, b: &GroupSubset) -> GroupSubset {
    let g = a.group();
    assert!(g == b.group());
    let mut bits = 0u64;
    for x in a.indices() {
        for y in b.indices() {
            let t = tuple_add(g.factors(), &g.decode(x), &g.decode(y));
            bits |= 1u64 << g.encode(&t).unwrap();
        }
    }
    g.subset_from_bits(bits)
}

/// The stabilizer `{x : A + x = A}` by direct set comparison.
pub fn period_naive(a: &GroupSubset) -> GroupSubset {
    let g = a.group();
    let mut bits = 0u64;
    for x in g.elements() {
        let shifted = sumset_naive(a, &g.subset_from_indices(&[x]).unwrap());
        if shifted == *a {
            bits |= 1u64 << x;
        }
    }
    g.subset_from_bits(bits)
}

/// Minimum `|(X+S) \ X|` over all nonempty `X` with `|X| >= k` and
/// `|G \ (X+S)| >= k`, enumerating every subset of the group (no
/// normalization). Only usable at very small orders.
pub fn kappa_naive(s: &GroupSubset, k: u32) -> Option<u32> {
    let g = s.group();
    let n = g.order();
    assert!(n <= 20, "kappa_naive is exponential; keep orders tiny");
    let mut best: Option<u32> = None;
    for xbits in 1..=word_mask(n) {
        let x = g.subset_from_bits(xbits);
        if x.card() < k {
            continue;
        }
        let xs = sumset_naive(&x, s);
        if n - xs.card() < k {
            continue;
        }
        let boundary = xs.card() - x.card();
        if best.is_none_or(|b| boundary < b) {
            best = Some(boundary);
        }
    }
    best
}

/// All k-fragments by full enumeration, as raw bitsets sorted by
/// (cardinality, bits).
pub fn fragments_naive(s: &GroupSubset, k: u32) -> Vec<u64> {
    let g = s.group();
    let n = g.order();
    let Some(kappa) = kappa_naive(s, k) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for xbits in 1..=word_mask(n) {
        let x = g.subset_from_bits(xbits);
        if x.card() < k {
            continue;
        }
        let xs = sumset_naive(&x, s);
        if n - xs.card() < k {
            continue;
        }
        if xs.card() - x.card() == kappa {
            out.push(xbits);
        }
    }
    out.sort_by_key(|&b| (b.count_ones(), b));
    out
}

/// Arithmetic-progression test by trying every (first, difference) pair.
pub fn ap_naive(a: &GroupSubset) -> Option<(u32, u32, u32)> {
    let g = a.group();
    let len = a.card();
    if len == 0 {
        return None;
    }
    if len == 1 {
        return Some((a.min_element().unwrap(), 0, 1));
    }
    for first in a.indices() {
        for d in 0..g.order() {
            let mut seen = 0u64;
            let mut acc = first;
            let mut ok = true;
            for _ in 0..len {
                if !a.contains(acc) || seen >> acc & 1 == 1 {
                    ok = false;
                    break;
                }
                seen |= 1u64 << acc;
                acc = g.add(acc, d);
            }
            if ok && seen == a.bits() {
                return Some((first, d, len));
            }
        }
    }
    None
}

/// Size of a maximum matching from left vertices into their neighborhoods,
/// derived from Hall's deficiency formula by enumerating every subset of the
/// left side: max matching = |L| - max_Y (|Y| - |N(Y)|).
pub fn hall_max_matching(neighborhoods: &[u64]) -> u32 {
    let l = neighborhoods.len();
    assert!(l <= 24, "hall_max_matching enumerates 2^|L| subsets");
    let mut max_deficiency: i64 = 0;
    for ybits in 0u64..(1u64 << l) {
        let mut nbhd = 0u64;
        let mut rest = ybits;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            nbhd |= neighborhoods[i];
            rest &= rest - 1;
        }
        let d = ybits.count_ones() as i64 - nbhd.count_ones() as i64;
        max_deficiency = max_deficiency.max(d);
    }
    (l as i64 - max_deficiency) as u32
}

/// Minimum `|boundary(X)|` over vertex sets `X` with `x in X` and
/// `y notin X + image(X)`, by full enumeration. This is the Menger cut side;
/// `None` when no separating set exists (x reaches y directly everywhere).
pub fn min_menger_cut(adj: &[u64], x: u32, y: u32) -> Option<u32> {
    let n = adj.len() as u32;
    let mut best: Option<u32> = None;
    for xbits in 0..(1u64 << n) {
        if xbits >> x & 1 == 0 {
            continue;
        }
        let mut image = 0u64;
        let mut rest = xbits;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            image |= adj[v];
            rest &= rest - 1;
        }
        if (xbits | image) >> y & 1 == 1 {
            continue;
        }
        let boundary = (image & !xbits).count_ones();
        if best.is_none_or(|b| boundary < b) {
            best = Some(boundary);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    #[test]
    fn naive_sumset_matches_hand_values() {
        let g = AbelianGroup::new(&[6]).unwrap();
        let a = g.subset_from_indices(&[0, 3]).unwrap();
        let b = g.subset_from_indices(&[0, 1, 3]).unwrap();
        assert_eq!(sumset_naive(&a, &b).indices(), [0, 1, 3, 4]);
    }

    #[test]
    fn hall_formula_sanity() {
        // two left vertices sharing one neighbor: matching size 1
        assert_eq!(hall_max_matching(&[0b01, 0b01]), 1);
        // disjoint neighbors: size 2
        assert_eq!(hall_max_matching(&[0b01, 0b10]), 2);
        // isolated vertex
        assert_eq!(hall_max_matching(&[0b00]), 0);
    }
}
