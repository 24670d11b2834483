//! Sumsets, periods, boundaries and co-images, `T^S`, H-component
//! decompositions, quasi-periodicity, and (modular) arithmetic-progression
//! structure.
//!
//! Public operations follow the convention that the sets of interest are
//! nonempty; internal bit-level helpers are total and used by the sweep
//! drivers.

use crate::error::Error;
use crate::group::{word_mask, AbelianGroup, GroupElement, GroupSubset, QuotientView, Subgroup};
use crate::Result;
use std::fmt;

fn check_pair(a: &GroupSubset, b: &GroupSubset) -> Result<()> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// `A + B = {x + y : x in A, y in B}`.
pub fn sumset(a: &GroupSubset, b: &GroupSubset) -> Result<GroupSubset> {
    check_pair(a, b)?;
    let g = a.group();
    Ok(g.subset_from_bits(g.sum_bits(a.bits(), b.bits())))
}

/// The period (stabilizer) `G_A = {x : A + x = A}` of a nonempty set.
pub fn period(a: &GroupSubset) -> Result<Subgroup> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = a.group();
    Ok(Subgroup::from_bits_unchecked(g, g.period_bits(a.bits())))
}

/// True iff the period of `a` is the trivial subgroup.
pub fn is_aperiodic(a: &GroupSubset) -> Result<bool> {
    Ok(period(a)?.is_trivial())
}

pub(crate) fn aperiodic_bits(g: &AbelianGroup, bits: u64) -> bool {
    for x in 1..g.order() {
        if g.translate_bits(bits, x) == bits {
            return false;
        }
    }
    true
}

/// Boundary `(X + S) \ X`.
pub fn boundary(x: &GroupSubset, s: &GroupSubset) -> Result<GroupSubset> {
    check_pair(x, s)?;
    let g = x.group();
    Ok(g.subset_from_bits(g.sum_bits(x.bits(), s.bits()) & !x.bits()))
}

/// Co-image `G \ (X + S)`.
pub fn co_image(x: &GroupSubset, s: &GroupSubset) -> Result<GroupSubset> {
    check_pair(x, s)?;
    let g = x.group();
    Ok(g.subset_from_bits(!g.sum_bits(x.bits(), s.bits()) & word_mask(g.order())))
}

/// Boundary with respect to `-S`.
pub fn boundary_minus(x: &GroupSubset, s: &GroupSubset) -> Result<GroupSubset> {
    boundary(x, &s.negated())
}

/// Co-image with respect to `-S`.
pub fn co_image_minus(x: &GroupSubset, s: &GroupSubset) -> Result<GroupSubset> {
    co_image(x, &s.negated())
}

/// A set is faithful when its co-image is at least as large: `|nabla(X)| >= |X|`.
pub fn is_faithful(x: &GroupSubset, s: &GroupSubset) -> Result<bool> {
    Ok(co_image(x, s)?.card() >= x.card())
}

/// `T^S = (T + <S>) \ (T + S)`.
pub fn t_power(t: &GroupSubset, s: &GroupSubset) -> Result<GroupSubset> {
    check_pair(t, s)?;
    let g = t.group();
    Ok(g.subset_from_bits(t_power_bits(g, t.bits(), s.bits())))
}

pub(crate) fn t_power_bits(g: &AbelianGroup, t: u64, s: u64) -> u64 {
    let span = g.closure_bits(s);
    g.sum_bits(t, span) & !g.sum_bits(t, s)
}

/// Number of representations of `x` as `a + b`: `|A ∩ (x - B)|`.
pub fn count_representations(x: &GroupElement, a: &GroupSubset, b: &GroupSubset) -> Result<u32> {
    check_pair(a, b)?;
    if x.group() != a.group() {
        return Err(Error::GroupMismatch);
    }
    let g = a.group();
    Ok(rep_count_bits(g, x.index(), a.bits(), b.bits()))
}

#[inline]
pub(crate) fn rep_count_bits(g: &AbelianGroup, x: u32, a: u64, b: u64) -> u32 {
    (a & g.translate_bits(g.neg_bits(b), x)).count_ones()
}

/// The partition of a set into its H-components, ordered by the minimal
/// element of each coset.
#[derive(Clone, Debug)]
pub struct HDecomposition {
    pub subgroup: Subgroup,
    pub components: Vec<GroupSubset>,
    pub full_flags: Vec<bool>,
}

impl HDecomposition {
    pub fn full_count(&self) -> usize {
        self.full_flags.iter().filter(|&&b| b).count()
    }

    pub fn non_full(&self) -> Vec<&GroupSubset> {
        self.components
            .iter()
            .zip(&self.full_flags)
            .filter(|(_, &f)| !f)
            .map(|(c, _)| c)
            .collect()
    }
}

/// Decomposes `a` into its H-components.
pub fn h_decompose(a: &GroupSubset, h: &Subgroup) -> Result<HDecomposition> {
    if a.group() != h.group() {
        return Err(Error::GroupMismatch);
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = a.group();
    let comps = h_components_bits(g, a.bits(), h.bits());
    let hsize = h.card();
    Ok(HDecomposition {
        subgroup: h.clone(),
        full_flags: comps.iter().map(|&c| c.count_ones() == hsize).collect(),
        components: comps.into_iter().map(|c| g.subset_from_bits(c)).collect(),
    })
}

/// H-components of `a` as raw bitsets, ordered by the minimal element of the
/// containing coset.
pub(crate) fn h_components_bits(g: &AbelianGroup, a: u64, h: u64) -> Vec<u64> {
    let mut out: Vec<(u32, u64)> = Vec::new();
    let mut rest = a;
    while rest != 0 {
        let x = rest.trailing_zeros();
        let coset = g.translate_bits(h, x);
        out.push((coset.trailing_zeros(), a & coset));
        rest &= !coset;
    }
    out.sort_by_key(|&(rep, _)| rep);
    out.into_iter().map(|(_, c)| c).collect()
}

/// When `a` is H-quasi-periodic (exactly one non-full H-component), returns
/// that component `A_0`. A fully H-periodic set is not quasi-periodic.
pub fn quasi_periodic_part(a: &GroupSubset, h: &Subgroup) -> Result<Option<GroupSubset>> {
    if a.group() != h.group() {
        return Err(Error::GroupMismatch);
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = a.group();
    Ok(quasi_periodic_bits(g, a.bits(), h.bits()).map(|c| g.subset_from_bits(c)))
}

pub(crate) fn quasi_periodic_bits(g: &AbelianGroup, a: u64, h: u64) -> Option<u64> {
    let hsize = h.count_ones();
    let mut non_full: Option<u64> = None;
    let mut rest = a;
    while rest != 0 {
        let x = rest.trailing_zeros();
        let coset = g.translate_bits(h, x);
        let comp = a & coset;
        if comp.count_ones() != hsize {
            if non_full.is_some() {
                return None;
            }
            non_full = Some(comp);
        }
        rest &= !coset;
    }
    non_full
}

/// A certified arithmetic progression `{first, first+d, ..., first+(len-1)d}`
/// with pairwise distinct members.
#[derive(Clone, PartialEq, Eq)]
pub struct ProgressionCertificate {
    group: AbelianGroup,
    pub first: u32,
    pub difference: u32,
    pub length: u32,
}

impl ProgressionCertificate {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// The certified set.
    pub fn set(&self) -> GroupSubset {
        let g = &self.group;
        let mut bits = 0u64;
        let mut acc = self.first;
        for _ in 0..self.length {
            bits |= 1u64 << acc;
            acc = g.add(acc, self.difference);
        }
        g.subset_from_bits(bits)
    }

    pub fn matches(&self, a: &GroupSubset) -> bool {
        self.set() == *a && a.card() == self.length
    }
}

impl fmt::Debug for ProgressionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Progression(first={}, d={}, len={})",
            self.first, self.difference, self.length
        )
    }
}

/// Walks `first, first+d, ...` and reports whether it enumerates `bits`
/// exactly, with no repeated element.
pub(crate) fn progression_from(g: &AbelianGroup, bits: u64, first: u32, d: u32) -> bool {
    let len = bits.count_ones();
    if len == 0 || bits >> first & 1 == 0 {
        return false;
    }
    let mut seen = 0u64;
    let mut acc = first;
    for _ in 0..len {
        if bits >> acc & 1 == 0 || seen >> acc & 1 == 1 {
            return false;
        }
        seen |= 1u64 << acc;
        acc = g.add(acc, d);
    }
    seen == bits
}

pub(crate) fn ap_cert_bits(g: &AbelianGroup, bits: u64) -> Option<(u32, u32, u32)> {
    let len = bits.count_ones();
    if len == 0 {
        return None;
    }
    if len == 1 {
        return Some((bits.trailing_zeros(), 0, 1));
    }
    let mut rest = bits;
    while rest != 0 {
        let first = rest.trailing_zeros();
        for d in 1..g.order() {
            if progression_from(g, bits, first, d) {
                return Some((first, d, len));
            }
        }
        rest &= rest - 1;
    }
    None
}

pub(crate) fn is_ap_bits(g: &AbelianGroup, bits: u64) -> bool {
    ap_cert_bits(g, bits).is_some()
}

/// Canonical arithmetic-progression certificate for `a`, if `a` is a
/// progression for some difference. Sets of size 1 and 2 always certify;
/// the canonical certificate has the smallest first element, then the
/// smallest difference index.
pub fn ap_certificate(a: &GroupSubset) -> Result<Option<ProgressionCertificate>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = a.group();
    Ok(ap_cert_bits(g, a.bits()).map(|(first, difference, length)| ProgressionCertificate {
        group: g.clone(),
        first,
        difference,
        length,
    }))
}

/// Certificate that `phi_H(a)` is an arithmetic progression in the quotient.
pub fn modular_progression_certificate(
    a: &GroupSubset,
    h: &Subgroup,
) -> Result<Option<ProgressionCertificate>> {
    if a.group() != h.group() {
        return Err(Error::GroupMismatch);
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let qv = QuotientView::new(h);
    ap_certificate(&qv.map_subset(a))
}

/// Similarity of two H-quasi-periodic modular progressions: there is a common
/// quotient difference for which the images of `A_0` and `B_0` are the
/// respective initial elements. Returns false (not an error) when either set
/// fails to be an H-quasi-periodic modular progression.
pub fn are_similar(a: &GroupSubset, b: &GroupSubset, h: &Subgroup) -> Result<bool> {
    if a.group() != h.group() || b.group() != h.group() {
        return Err(Error::GroupMismatch);
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let qv = QuotientView::new(h);
    Ok(similar_bits(&qv, a.bits(), b.bits()))
}

pub(crate) fn similar_bits(qv: &QuotientView, a: u64, b: u64) -> bool {
    let g = qv.parent();
    let q = qv.quotient_group();
    let (Some(a0), Some(b0)) = (
        quasi_periodic_bits(g, a, qv.subgroup().bits()),
        quasi_periodic_bits(g, b, qv.subgroup().bits()),
    ) else {
        return false;
    };
    let qa = qv.map_bits(a);
    let qb = qv.map_bits(b);
    let fa = qv.map_bits(a0).trailing_zeros();
    let fb = qv.map_bits(b0).trailing_zeros();
    (0..q.order()).any(|d| progression_from(q, qa, fa, d) && progression_from(q, qb, fb, d))
}

/// True when `a` is H-quasi-periodic, `phi_H(a)` is an arithmetic
/// progression, and `phi_H(A_0)` is an endpoint of it (i.e. initial for some
/// difference). This is the hypothesis shape under which quasi-periodic
/// modular progressions transfer along critical pairs.
pub(crate) fn qp_modular_progression_bits(qv: &QuotientView, a: u64) -> bool {
    let g = qv.parent();
    let q = qv.quotient_group();
    let Some(a0) = quasi_periodic_bits(g, a, qv.subgroup().bits()) else {
        return false;
    };
    let qa = qv.map_bits(a);
    let fa = qv.map_bits(a0).trailing_zeros();
    (0..q.order()).any(|d| progression_from(q, qa, fa, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn z(n: u32) -> AbelianGroup {
        AbelianGroup::new(&[n]).unwrap()
    }

    fn sub(g: &AbelianGroup, idx: &[u32]) -> GroupSubset {
        g.subset_from_indices(idx).unwrap()
    }

    #[test]
    fn sumset_examples() {
        let g = z(5);
        assert_eq!(
            sumset(&sub(&g, &[0, 1]), &sub(&g, &[0, 1])).unwrap().indices(),
            [0, 1, 2]
        );
        let g = z(6);
        let a = sub(&g, &[0, 3]);
        let b = sub(&g, &[0, 1, 3]);
        let got = sumset(&a, &b).unwrap();
        assert_eq!(got, oracle::sumset_naive(&a, &b));
        assert_eq!(got.indices(), [0, 1, 3, 4]);
        let h = sub(&g, &[0, 2, 4]);
        assert_eq!(sumset(&h, &h).unwrap(), h);
        assert!(matches!(
            sumset(&g.empty_subset(), &h),
            Err(Error::EmptySet)
        ));
        let g5 = z(5);
        assert!(matches!(
            sumset(&sub(&g5, &[0]), &h),
            Err(Error::GroupMismatch)
        ));
    }

    #[test]
    fn period_examples() {
        let g = z(6);
        assert_eq!(period(&sub(&g, &[0, 2, 4])).unwrap().set().indices(), [0, 2, 4]);
        assert!(period(&sub(&g, &[0, 1])).unwrap().is_trivial());
        let g = z(12);
        let a = sub(&g, &[0, 1, 2, 6, 7, 8]);
        let p = period(&a).unwrap();
        assert_eq!(p.set().indices(), [0, 6]);
        assert_eq!(p.set(), &oracle::period_naive(&a));
        assert!(is_aperiodic(&sub(&g, &[0, 1, 6, 7, 8])).unwrap());
        assert!(!is_aperiodic(&sub(&z(6), &[0, 3])).unwrap());
    }

    #[test]
    fn boundary_and_coimage_examples() {
        let g = z(6);
        let s = sub(&g, &[0, 1, 3]);
        assert_eq!(boundary(&sub(&g, &[0]), &s).unwrap().indices(), [1, 3]);
        assert_eq!(co_image(&sub(&g, &[0]), &s).unwrap().indices(), [2, 4, 5]);
        assert_eq!(boundary(&sub(&g, &[0, 3]), &s).unwrap().indices(), [1, 4]);
        assert_eq!(co_image(&sub(&g, &[0, 3]), &s).unwrap().indices(), [2, 5]);
        let g5 = z(5);
        let s5 = sub(&g5, &[0, 1, 2, 3]);
        assert!(co_image(&sub(&g5, &[0, 1]), &s5).unwrap().is_empty());
        assert!(is_faithful(&sub(&g, &[0]), &s).unwrap());
        assert!(is_faithful(&sub(&g, &[0, 3]), &s).unwrap());
        assert!(!is_faithful(&sub(&g5, &[0, 1]), &s5).unwrap());
    }

    #[test]
    fn t_power_examples() {
        let g = z(12);
        let t = sub(&g, &[0, 6, 7]);
        let s = sub(&g, &[0, 1, 6]);
        let tp = t_power(&t, &s).unwrap();
        assert_eq!(tp.indices(), [2, 3, 4, 5, 9, 10, 11]);
        // <S> = G here, so T^S equals the co-image
        assert_eq!(tp, co_image(&t, &s).unwrap());

        let g = z(6);
        let tp = t_power(&sub(&g, &[0]), &sub(&g, &[0, 2])).unwrap();
        assert_eq!(tp.indices(), [4]);

        // T + S = T + <S> gives the empty power
        let h = sub(&g, &[0, 2, 4]);
        assert!(t_power(&sub(&g, &[0]), &h).unwrap().is_empty());
    }

    #[test]
    fn count_representations_examples() {
        let g = z(5);
        let a = sub(&g, &[0, 1, 2, 3]);
        let x = g.element(0).unwrap();
        assert_eq!(count_representations(&x, &a, &a).unwrap(), 3);
        let g6 = z(6);
        let full = g6.full_subset();
        for x in 0..6 {
            assert_eq!(
                count_representations(&g6.element(x).unwrap(), &full, &full).unwrap(),
                6
            );
        }
        assert_eq!(
            count_representations(
                &g6.element(1).unwrap(),
                &sub(&g6, &[0]),
                &sub(&g6, &[0, 3])
            )
            .unwrap(),
            0
        );
    }

    #[test]
    fn h_decomposition_examples() {
        let g = z(6);
        let h = Subgroup::try_from_set(sub(&g, &[0, 3])).unwrap();
        let d = h_decompose(&sub(&g, &[0, 1, 3]), &h).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.components[0].indices(), [0, 3]);
        assert!(d.full_flags[0]);
        assert_eq!(d.components[1].indices(), [1]);
        assert!(!d.full_flags[1]);

        let d = h_decompose(&g.full_subset(), &h).unwrap();
        assert_eq!(d.components.len(), 3);
        assert_eq!(d.full_count(), 3);

        let d = h_decompose(&sub(&g, &[1]), &h).unwrap();
        assert_eq!(d.components.len(), 1);
        assert!(!d.full_flags[0]);
    }

    #[test]
    fn quasi_periodic_examples() {
        let g = z(6);
        let h = Subgroup::try_from_set(sub(&g, &[0, 3])).unwrap();
        assert_eq!(
            quasi_periodic_part(&sub(&g, &[0, 1, 3]), &h)
                .unwrap()
                .unwrap()
                .indices(),
            [1]
        );
        // fully periodic: not quasi-periodic by convention
        assert!(quasi_periodic_part(&sub(&g, &[0, 3]), &h).unwrap().is_none());
        // three non-full components
        assert!(quasi_periodic_part(&sub(&g, &[0, 1, 2]), &h)
            .unwrap()
            .is_none());
    }

    #[test]
    fn ap_certificate_examples() {
        let g = z(7);
        let c = ap_certificate(&sub(&g, &[0, 1, 2])).unwrap().unwrap();
        assert_eq!((c.first, c.difference, c.length), (0, 1, 3));
        assert!(c.matches(&sub(&g, &[0, 1, 2])));

        let g = z(6);
        assert!(ap_certificate(&sub(&g, &[0, 1, 3])).unwrap().is_none());
        assert_eq!(oracle::ap_naive(&sub(&g, &[0, 1, 3])), None);

        let g = z(5);
        let a = sub(&g, &[0, 2, 4]);
        let c = ap_certificate(&a).unwrap().unwrap();
        assert_eq!((c.first, c.difference, c.length), (0, 2, 3));
        assert_eq!(oracle::ap_naive(&a), Some((0, 2, 3)));

        // singletons and pairs always certify
        let c = ap_certificate(&sub(&g, &[3])).unwrap().unwrap();
        assert_eq!((c.first, c.difference, c.length), (3, 0, 1));
        assert!(ap_certificate(&sub(&g, &[1, 4])).unwrap().is_some());
    }

    #[test]
    fn modular_progression_examples() {
        let g = z(12);
        let h = Subgroup::try_from_set(sub(&g, &[0, 6])).unwrap();
        let c = modular_progression_certificate(&sub(&g, &[0, 6, 1]), &h)
            .unwrap()
            .unwrap();
        assert_eq!((c.first, c.difference, c.length), (0, 1, 2));

        let g6 = z(6);
        let h3 = Subgroup::try_from_set(sub(&g6, &[0, 3])).unwrap();
        let c = modular_progression_certificate(&g6.full_subset(), &h3)
            .unwrap()
            .unwrap();
        assert_eq!((c.first, c.difference, c.length), (0, 1, 3));

        let a = sub(&g, &[0, 1, 6, 7, 4]);
        assert!(modular_progression_certificate(&a, &h).unwrap().is_none());
    }

    #[test]
    fn similarity_examples() {
        let g = z(12);
        let h = Subgroup::try_from_set(sub(&g, &[0, 6])).unwrap();
        let s = sub(&g, &[0, 6, 1]);
        let t = sub(&g, &[0, 6, 7]);
        assert!(are_similar(&s, &t, &h).unwrap());
        assert!(are_similar(&s, &s, &h).unwrap(), "reflexivity");
        let b = sub(&g, &[0, 6, 5]);
        assert!(!are_similar(&s, &b, &h).unwrap());
        // a set that is not quasi-periodic gives false, not an error
        assert!(!are_similar(&s, &sub(&g, &[0, 1, 2]), &h).unwrap());
    }

    #[test]
    fn lemma_small_identities() {
        // nabla^-(nabla(X)) + S = X + S for all X, S over tiny cyclic groups
        for n in 2..=8u32 {
            let g = z(n);
            let mask = word_mask(n);
            for sbits in 1..=mask {
                if sbits & 1 == 0 || g.closure_bits(sbits) != mask {
                    continue;
                }
                for xbits in 1..=mask {
                    let xs = g.sum_bits(xbits, sbits);
                    let nabla = !xs & mask;
                    let neg_s = g.neg_bits(sbits);
                    let nabla_minus = !g.sum_bits(nabla, neg_s) & mask;
                    assert_eq!(g.sum_bits(nabla_minus, sbits), xs);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn sumset_matches_oracle_and_translates(
            factors in prop::sample::select(vec![vec![6u32], vec![8], vec![2, 4], vec![3, 3], vec![12], vec![2, 2, 3]]),
            abits in 1u64..,
            bbits in 1u64..,
            t in 0u32..12,
        ) {
            let g = AbelianGroup::new(&factors).unwrap();
            let mask = word_mask(g.order());
            let abits = abits & mask;
            let bbits = bbits & mask;
            prop_assume!(abits != 0 && bbits != 0);
            let a = g.subset_from_bits(abits);
            let b = g.subset_from_bits(bbits);
            let t = t % g.order();
            let s = sumset(&a, &b).unwrap();
            prop_assert_eq!(&s, &oracle::sumset_naive(&a, &b));
            // |A+B| >= max(|A|, |B|)
            prop_assert!(s.card() >= a.card().max(b.card()));
            // translation covariance
            prop_assert_eq!(sumset(&a.translate(t), &b).unwrap(), s.translate(t));
        }

        #[test]
        fn period_is_maximal_stabilizer(
            factors in prop::sample::select(vec![vec![6u32], vec![8], vec![2, 4], vec![12]]),
            abits in 1u64..,
        ) {
            let g = AbelianGroup::new(&factors).unwrap();
            let mask = word_mask(g.order());
            let abits = abits & mask;
            prop_assume!(abits != 0);
            let a = g.subset_from_bits(abits);
            let p = period(&a).unwrap();
            prop_assert_eq!(p.set(), &oracle::period_naive(&a));
            // A + G_A = A, and the H-decomposition by the period is all-full
            prop_assert_eq!(g.sum_bits(abits, p.bits()), abits);
            let d = h_decompose(&a, &p).unwrap();
            prop_assert_eq!(d.full_count(), d.components.len());
            // maximality: any subgroup H with A+H=A is inside the period
            for h in crate::group::enumerate_subgroups(&g) {
                if g.sum_bits(abits, h.bits()) == abits {
                    prop_assert_eq!(h.bits() & !p.bits(), 0);
                }
            }
        }
    }
}
