//! k-th connectivity, k-fragments, k-atoms, Vosper testing and hyper-atoms.
//!
//! The minimizations run over subsets containing 0 only; boundary and
//! co-image sizes are translation invariant, so every fragment is a translate
//! of one through 0, and the full fragment lists are recovered by translating.
//! That reduction is tested against the unreduced oracle at small orders.

use crate::error::Error;
use crate::group::{word_mask, AbelianGroup, GroupSubset, QuotientView, Subgroup};
use crate::Result;

/// Caps the fragment lists; fragment counts can explode combinatorially.
#[derive(Clone, Copy, Debug)]
pub struct IsoConfig {
    pub fragment_cap: usize,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig {
            fragment_cap: 100_000,
        }
    }
}

fn check_s(s: &GroupSubset) -> Result<()> {
    if !s.contains(0) {
        return Err(Error::ZeroNotInS);
    }
    let g = s.group();
    if g.closure_bits(s.bits()) != word_mask(g.order()) {
        return Err(Error::NotGenerating);
    }
    Ok(())
}

fn check_k(k: u32) -> Result<()> {
    if k == 1 || k == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedK(k))
    }
}

/// DFS over subsets X containing 0, in increasing-element order, maintaining
/// X + S incrementally. Subtrees where X + S already covers G are pruned:
/// their co-images stay empty.
fn scan_zero_subsets(g: &AbelianGroup, s_bits: u64, f: &mut impl FnMut(u64, u64)) {
    let order = g.order();
    let full = word_mask(order);
    let translates: Vec<u64> = (0..order).map(|e| g.translate_bits(s_bits, e)).collect();
    fn rec(
        x: u64,
        xs: u64,
        from: u32,
        order: u32,
        full: u64,
        translates: &[u64],
        f: &mut impl FnMut(u64, u64),
    ) {
        f(x, xs);
        for e in from..order {
            let nxs = xs | translates[e as usize];
            if nxs == full {
                // the child and all its descendants have empty co-image
                continue;
            }
            rec(x | (1u64 << e), nxs, e + 1, order, full, translates, f);
        }
    }
    rec(1, translates[0], 1, order, full, &translates, f);
}

/// One pass computing both connectivities.
pub(crate) fn kappa_scan(g: &AbelianGroup, s_bits: u64) -> [Option<u32>; 2] {
    let order = g.order();
    let mut best = [None::<u32>, None::<u32>];
    scan_zero_subsets(g, s_bits, &mut |x, xs| {
        let cx = x.count_ones();
        let nabla = order - xs.count_ones();
        let bdy = xs.count_ones() - cx;
        if nabla >= 1 && best[0].is_none_or(|b| bdy < b) {
            best[0] = Some(bdy);
        }
        if cx >= 2 && nabla >= 2 && best[1].is_none_or(|b| bdy < b) {
            best[1] = Some(bdy);
        }
    });
    best
}

/// Whether some X gives `|X| >= k` and `|nabla(X)| >= k`.
pub fn is_k_separable(s: &GroupSubset, k: u32) -> Result<bool> {
    check_s(s)?;
    check_k(k)?;
    Ok(kappa_scan(s.group(), s.bits())[(k - 1) as usize].is_some())
}

/// `kappa_k(S)`: the minimum boundary size over k-separations; `None` when S
/// is not k-separable.
pub fn kappa(s: &GroupSubset, k: u32) -> Result<Option<u32>> {
    check_s(s)?;
    check_k(k)?;
    Ok(kappa_scan(s.group(), s.bits())[(k - 1) as usize])
}

/// Fragments through 0, as raw bitsets.
pub(crate) fn fragments_zero_bits(g: &AbelianGroup, s_bits: u64, k: u32) -> Vec<u64> {
    let Some(kap) = kappa_scan(g, s_bits)[(k - 1) as usize] else {
        return Vec::new();
    };
    let order = g.order();
    let mut out = Vec::new();
    scan_zero_subsets(g, s_bits, &mut |x, xs| {
        let cx = x.count_ones();
        let nabla = order - xs.count_ones();
        if cx >= k && nabla >= k && xs.count_ones() - cx == kap {
            out.push(x);
        }
    });
    out
}

fn expand_translates(g: &AbelianGroup, zero_frags: &[u64], cap: usize) -> Result<Vec<u64>> {
    let mut all: Vec<u64> = Vec::new();
    for &f0 in zero_frags {
        for t in 0..g.order() {
            all.push(g.translate_bits(f0, t));
        }
    }
    all.sort_unstable();
    all.dedup();
    if all.len() > cap {
        return Err(Error::FragmentOverflow(cap));
    }
    all.sort_by_key(|&b| (b.count_ones(), b));
    Ok(all)
}

/// Uncapped fragment list on raw bits, for the statement checkers.
pub(crate) fn fragments_all_bits(g: &AbelianGroup, s_bits: u64, k: u32) -> Vec<u64> {
    expand_translates(g, &fragments_zero_bits(g, s_bits, k), usize::MAX)
        .expect("uncapped expansion cannot overflow")
}

/// All k-fragments of S in canonical (cardinality, bits) order.
pub fn fragments(s: &GroupSubset, k: u32) -> Result<Vec<GroupSubset>> {
    fragments_with(s, k, &IsoConfig::default())
}

pub fn fragments_with(s: &GroupSubset, k: u32, cfg: &IsoConfig) -> Result<Vec<GroupSubset>> {
    check_s(s)?;
    check_k(k)?;
    let g = s.group();
    let zero = fragments_zero_bits(g, s.bits(), k);
    Ok(expand_translates(g, &zero, cfg.fragment_cap)?
        .into_iter()
        .map(|b| g.subset_from_bits(b))
        .collect())
}

/// All k-atoms (minimum-cardinality k-fragments) in canonical order.
pub fn atoms(s: &GroupSubset, k: u32) -> Result<Vec<GroupSubset>> {
    check_s(s)?;
    check_k(k)?;
    let g = s.group();
    Ok(atoms_bits(g, s.bits(), k)
        .into_iter()
        .map(|b| g.subset_from_bits(b))
        .collect())
}

pub(crate) fn atoms_bits(g: &AbelianGroup, s_bits: u64, k: u32) -> Vec<u64> {
    let zero = fragments_zero_bits(g, s_bits, k);
    let Some(min_card) = zero.iter().map(|b| b.count_ones()).min() else {
        return Vec::new();
    };
    let minimal: Vec<u64> = zero
        .into_iter()
        .filter(|b| b.count_ones() == min_card)
        .collect();
    // atom counts cannot overflow: distinct atoms are near-disjoint
    expand_translates(g, &minimal, usize::MAX).unwrap()
}

/// The k-atom containing 0 (unique for k = 1; for k = 2 there may be several,
/// the canonically first is returned).
pub(crate) fn atom_at_zero(g: &AbelianGroup, s_bits: u64, k: u32) -> Option<u64> {
    atoms_bits(g, s_bits, k).into_iter().find(|b| b & 1 == 1)
}

/// All inclusion-maximal subgroups that are 1-fragments of S, in canonical
/// order. Nonempty for every proper generating S containing 0.
pub fn hyper_atoms(s: &GroupSubset) -> Result<Vec<Subgroup>> {
    check_s(s)?;
    let g = s.group();
    if s.card() == g.order() {
        return Err(Error::NotProper);
    }
    Ok(hyper_atoms_bits(g, s.bits())
        .into_iter()
        .map(|b| Subgroup::from_bits_unchecked(g, b))
        .collect())
}

pub(crate) fn subgroup_one_fragments(g: &AbelianGroup, s_bits: u64) -> Vec<u64> {
    let Some(k1) = kappa_scan(g, s_bits)[0] else {
        return Vec::new();
    };
    let order = g.order();
    crate::group::enumerate_subgroups(g)
        .into_iter()
        .map(|h| h.bits())
        .filter(|&h| {
            let hs = g.sum_bits(h, s_bits);
            hs.count_ones() - h.count_ones() == k1 && hs.count_ones() < order
        })
        .collect()
}

pub(crate) fn hyper_atoms_bits(g: &AbelianGroup, s_bits: u64) -> Vec<u64> {
    let frags = subgroup_one_fragments(g, s_bits);
    let mut out: Vec<u64> = frags
        .iter()
        .copied()
        .filter(|&h| !frags.iter().any(|&other| other != h && h & !other == 0))
        .collect();
    out.sort_by_key(|&b| (b.count_ones(), b));
    out
}

/// Vosper test via the kappa_2 characterization: S is a Vosper subset iff it
/// is not 2-separable or `kappa_2(S) >= |S|`.
pub fn is_vosper(s: &GroupSubset) -> Result<bool> {
    check_s(s)?;
    Ok(is_vosper_bits(s.group(), s.bits()))
}

pub(crate) fn is_vosper_bits(g: &AbelianGroup, s_bits: u64) -> bool {
    match kappa_scan(g, s_bits)[1] {
        None => true,
        Some(k2) => k2 >= s_bits.count_ones(),
    }
}

/// For a subgroup 1-fragment H of S, computes `kappa_1(phi_H(S))` in the
/// quotient; it always equals `|phi_H(S)| - 1`, which is asserted.
pub fn lift_fragment_kappa(s: &GroupSubset, h: &Subgroup) -> Result<u32> {
    check_s(s)?;
    if h.group() != s.group() {
        return Err(Error::GroupMismatch);
    }
    let g = s.group();
    let k1 = kappa_scan(g, s.bits())[0].ok_or(Error::NotAFragment)?;
    let hs = g.sum_bits(h.bits(), s.bits());
    if hs.count_ones() - h.card() != k1 || hs.count_ones() == g.order() {
        return Err(Error::NotAFragment);
    }
    let qv = QuotientView::new(h);
    let qs = qv.map_subset(s);
    let got = kappa_scan(qv.quotient_group(), qs.bits())[0]
        .expect("phi(S) is 1-separable when H is a 1-fragment");
    assert_eq!(
        got,
        qs.card() - 1,
        "quotient connectivity must equal |phi(S)| - 1"
    );
    Ok(got)
}

/// Full isoperimetric profile of a proper generating subset.
#[derive(Clone, Debug)]
pub struct KFacet {
    pub separable: bool,
    pub kappa: Option<u32>,
    pub fragments: Vec<GroupSubset>,
    pub atoms: Vec<GroupSubset>,
}

#[derive(Clone, Debug)]
pub struct IsoProfile {
    pub s: GroupSubset,
    pub k1: KFacet,
    pub k2: KFacet,
    pub hyper_atoms: Vec<Subgroup>,
}

pub fn iso_profile(s: &GroupSubset) -> Result<IsoProfile> {
    iso_profile_with(s, &IsoConfig::default())
}

pub fn iso_profile_with(s: &GroupSubset, cfg: &IsoConfig) -> Result<IsoProfile> {
    check_s(s)?;
    if s.card() == s.group().order() {
        return Err(Error::NotProper);
    }
    let facet = |k: u32| -> Result<KFacet> {
        let kap = kappa(s, k)?;
        Ok(KFacet {
            separable: kap.is_some(),
            kappa: kap,
            fragments: fragments_with(s, k, cfg)?,
            atoms: atoms(s, k)?,
        })
    };
    Ok(IsoProfile {
        s: s.clone(),
        k1: facet(1)?,
        k2: facet(2)?,
        hyper_atoms: hyper_atoms(s)?,
    })
}
