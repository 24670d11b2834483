//! Finite abelian groups presented as products of cyclic factors, their
//! subsets (fixed-width bitsets over element indices), subgroups and
//! quotients.
//!
//! Elements are indices in `[0, order)` that biject with mixed-radix tuples
//! over the factor list (leftmost factor most significant). All arithmetic is
//! table-driven and exact. Values are immutable after construction and safe
//! to share across threads.

use crate::error::Error;
use crate::Result;
use std::fmt;
use std::sync::Arc;

/// Default cap on group order; exhaustive operations are exponential, so an
/// oversized request fails loudly instead of hanging.
pub const DEFAULT_ORDER_CAP: u64 = 24;

/// Hard representation limit: subsets are single 64-bit words.
pub const MAX_ORDER: u64 = 64;

pub(crate) fn word_mask(order: u32) -> u64 {
    if order >= 64 {
        !0
    } else {
        (1u64 << order) - 1
    }
}

#[derive(Debug)]
struct GroupData {
    factors: Vec<u32>,
    order: u32,
    /// add[a * order + b] = a + b
    add: Vec<u16>,
    /// neg[a] = -a
    neg: Vec<u16>,
}

/// A finite abelian group `Z_{f1} x ... x Z_{fk}` with mixed-radix element
/// indexing. Cheap to clone (shared immutable data).
#[derive(Clone)]
pub struct AbelianGroup {
    data: Arc<GroupData>,
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({})", self.spec_string())
    }
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.factors == other.data.factors
    }
}
impl Eq for AbelianGroup {}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl AbelianGroup {
    /// Builds the group `Z_{factors[0]} x ...` under the default order cap.
    pub fn new(factors: &[u32]) -> Result<Self> {
        Self::with_cap(factors, DEFAULT_ORDER_CAP)
    }

    /// Builds the group with an explicit order cap (never above [`MAX_ORDER`]).
    pub fn with_cap(factors: &[u32], cap: u64) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactors);
        }
        let mut order: u64 = 1;
        for &f in factors {
            if f < 2 {
                return Err(Error::FactorBelowTwo(f as u64));
            }
            order = order.saturating_mul(f as u64);
        }
        let effective_cap = cap.min(MAX_ORDER);
        if order > effective_cap {
            return Err(Error::OrderCapExceeded {
                order,
                cap: effective_cap,
            });
        }
        Ok(Self::build(factors.to_vec(), order as u32))
    }

    /// The one-element group; only reachable as a quotient `G/G`.
    pub(crate) fn trivial() -> Self {
        Self::build(Vec::new(), 1)
    }

    fn build(factors: Vec<u32>, order: u32) -> Self {
        let n = order as usize;
        let mut add = vec![0u16; n * n];
        let mut neg = vec![0u16; n];
        let decode = |mut i: u32| -> Vec<u32> {
            let mut t = vec![0u32; factors.len()];
            for (k, &f) in factors.iter().enumerate().rev() {
                t[k] = i % f;
                i /= f;
            }
            t
        };
        let encode = |t: &[u32]| -> u32 {
            let mut i = 0u32;
            for (k, &f) in factors.iter().enumerate() {
                i = i * f + t[k];
            }
            i
        };
        for a in 0..order {
            let ta = decode(a);
            let tn: Vec<u32> = ta
                .iter()
                .zip(&factors)
                .map(|(&x, &f)| if x == 0 { 0 } else { f - x })
                .collect();
            neg[a as usize] = encode(&tn) as u16;
            for b in 0..order {
                let tb = decode(b);
                let ts: Vec<u32> = ta
                    .iter()
                    .zip(&tb)
                    .zip(&factors)
                    .map(|((&x, &y), &f)| (x + y) % f)
                    .collect();
                add[(a * order + b) as usize] = encode(&ts) as u16;
            }
        }
        AbelianGroup {
            data: Arc::new(GroupData {
                factors,
                order,
                add,
                neg,
            }),
        }
    }

    pub fn order(&self) -> u32 {
        self.data.order
    }

    pub fn factors(&self) -> &[u32] {
        &self.data.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.data.order == 1
    }

    /// "Z6", "Z2xZ4", "Z1" for the trivial quotient.
    pub fn spec_string(&self) -> String {
        if self.data.factors.is_empty() {
            return "Z1".to_owned();
        }
        self.data
            .factors
            .iter()
            .map(|f| format!("Z{f}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    /// Parses "Z6", "z2xZ4", "Z2xZ2xZ3" (case-insensitive) under the default cap.
    pub fn parse_spec(s: &str) -> Result<Self> {
        Self::parse_spec_with_cap(s, DEFAULT_ORDER_CAP)
    }

    pub fn parse_spec_with_cap(s: &str, cap: u64) -> Result<Self> {
        let mut factors = Vec::new();
        for tok in s.trim().split(['x', 'X']) {
            let tok = tok.trim();
            let digits = tok
                .strip_prefix(['z', 'Z'])
                .ok_or_else(|| Error::Parse(format!("expected Z<n>, got {tok:?}")))?;
            let f: u64 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclic order {digits:?}")))?;
            if f > MAX_ORDER {
                return Err(Error::OrderCapExceeded {
                    order: f,
                    cap: cap.min(MAX_ORDER),
                });
            }
            factors.push(f as u32);
        }
        Self::with_cap(&factors, cap)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            index: 0,
        }
    }

    pub fn element(&self, index: u32) -> Result<GroupElement> {
        if index >= self.data.order {
            return Err(Error::IndexOutOfRange {
                index: index as u64,
                order: self.data.order,
            });
        }
        Ok(GroupElement {
            group: self.clone(),
            index,
        })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.data.add[(a * self.data.order + b) as usize] as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.data.neg[a as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Mixed-radix decoding of an element index.
    pub fn decode(&self, mut index: u32) -> Vec<u32> {
        let mut t = vec![0u32; self.data.factors.len()];
        for (k, &f) in self.data.factors.iter().enumerate().rev() {
            t[k] = index % f;
            index /= f;
        }
        t
    }

    pub fn encode(&self, tuple: &[u32]) -> Result<u32> {
        if tuple.len() != self.data.factors.len() {
            return Err(Error::Parse(format!(
                "tuple arity {} does not match {} factors",
                tuple.len(),
                self.data.factors.len()
            )));
        }
        let mut i = 0u32;
        for (k, &f) in self.data.factors.iter().enumerate() {
            if tuple[k] >= f {
                return Err(Error::IndexOutOfRange {
                    index: tuple[k] as u64,
                    order: f,
                });
            }
            i = i * f + tuple[k];
        }
        Ok(i)
    }

    /// Additive order of an element.
    pub fn element_order(&self, x: u32) -> u32 {
        let mut acc = x;
        let mut n = 1;
        while acc != 0 {
            acc = self.add(acc, x);
            n += 1;
        }
        n
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.data.order
    }

    pub fn empty_subset(&self) -> GroupSubset {
        GroupSubset {
            group: self.clone(),
            bits: 0,
        }
    }

    pub fn full_subset(&self) -> GroupSubset {
        GroupSubset {
            group: self.clone(),
            bits: word_mask(self.data.order),
        }
    }

    pub fn subset_from_bits(&self, bits: u64) -> GroupSubset {
        debug_assert_eq!(bits & !word_mask(self.data.order), 0);
        GroupSubset {
            group: self.clone(),
            bits: bits & word_mask(self.data.order),
        }
    }

    pub fn subset_from_indices(&self, indices: &[u32]) -> Result<GroupSubset> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= self.data.order {
                return Err(Error::IndexOutOfRange {
                    index: i as u64,
                    order: self.data.order,
                });
            }
            bits |= 1u64 << i;
        }
        Ok(self.subset_from_bits(bits))
    }

    /// Parses "{0,1,3}" or "{(0,0),(1,2)}"; both item forms are accepted.
    pub fn parse_subset(&self, s: &str) -> Result<GroupSubset> {
        let s = s.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("subset literal must be braced, got {s:?}")))?;
        let mut bits = 0u64;
        for item in split_top_level(inner) {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let index = if let Some(tup) = item.strip_prefix('(') {
                let tup = tup
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced tuple {item:?}")))?;
                let parts: Vec<u32> = tup
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad coordinate in {item:?}")))
                    })
                    .collect::<Result<_>>()?;
                self.encode(&parts)?
            } else {
                let i: u32 = item
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad element index {item:?}")))?;
                if i >= self.data.order {
                    return Err(Error::IndexOutOfRange {
                        index: i as u64,
                        order: self.data.order,
                    });
                }
                i
            };
            bits |= 1u64 << index;
        }
        Ok(self.subset_from_bits(bits))
    }

    // ---- raw bitset arithmetic (hot paths) ----

    #[inline]
    pub(crate) fn translate_bits(&self, bits: u64, t: u32) -> u64 {
        let order = self.data.order;
        let row = &self.data.add[(t * order) as usize..((t + 1) * order) as usize];
        let mut out = 0u64;
        let mut rest = bits;
        while rest != 0 {
            let x = rest.trailing_zeros();
            out |= 1u64 << row[x as usize];
            rest &= rest - 1;
        }
        out
    }

    #[inline]
    pub(crate) fn neg_bits(&self, bits: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = bits;
        while rest != 0 {
            let x = rest.trailing_zeros();
            out |= 1u64 << self.data.neg[x as usize];
            rest &= rest - 1;
        }
        out
    }

    /// `A + B` on raw bitsets; empty inputs yield the empty set.
    #[inline]
    pub(crate) fn sum_bits(&self, a: u64, b: u64) -> u64 {
        let (small, large) = if a.count_ones() <= b.count_ones() {
            (a, b)
        } else {
            (b, a)
        };
        let mut out = 0u64;
        let mut rest = small;
        while rest != 0 {
            let x = rest.trailing_zeros();
            out |= self.translate_bits(large, x);
            rest &= rest - 1;
        }
        out
    }

    /// Subgroup generated by the elements of `bits` (empty input gives `{0}`).
    pub(crate) fn closure_bits(&self, bits: u64) -> u64 {
        let mut t = 1u64 | bits | self.neg_bits(bits);
        loop {
            let next = self.sum_bits(t, t);
            if next == t {
                return t;
            }
            t = next;
        }
    }

    pub(crate) fn is_subgroup_bits(&self, bits: u64) -> bool {
        bits & 1 == 1 && self.closure_bits(bits) == bits
    }

    /// Stabilizer `{x : A + x = A}` on raw bits (the period of A).
    pub(crate) fn period_bits(&self, a: u64) -> u64 {
        let mut p = 1u64;
        for x in 1..self.data.order {
            if self.translate_bits(a, x) == a {
                p |= 1u64 << x;
            }
        }
        p
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// An element of a group, identified by its index.
#[derive(Clone, Debug)]
pub struct GroupElement {
    group: AbelianGroup,
    index: u32,
}

impl GroupElement {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }
    pub fn index(&self) -> u32 {
        self.index
    }
    pub fn tuple(&self) -> Vec<u32> {
        self.group.decode(self.index)
    }
    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupElement {
            group: self.group.clone(),
            index: self.group.add(self.index, other.index),
        })
    }
    pub fn neg(&self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            index: self.group.neg(self.index),
        }
    }
    pub fn order(&self) -> u32 {
        self.group.element_order(self.index)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.index == other.index
    }
}
impl Eq for GroupElement {}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.group.factors().len() > 1 {
            let t = self.tuple();
            write!(
                f,
                "({})",
                t.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            )
        } else {
            write!(f, "{}", self.index)
        }
    }
}

/// A subset of a group, encoded as a bitset over element indices.
#[derive(Clone)]
pub struct GroupSubset {
    group: AbelianGroup,
    bits: u64,
}

impl GroupSubset {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn card(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: u32) -> bool {
        index < self.group.order() && self.bits >> index & 1 == 1
    }

    pub fn indices(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.card() as usize);
        let mut rest = self.bits;
        while rest != 0 {
            v.push(rest.trailing_zeros());
            rest &= rest - 1;
        }
        v
    }

    pub fn min_element(&self) -> Option<u32> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros())
        }
    }

    fn assert_same(&self, other: &GroupSubset) {
        assert!(
            self.group == other.group,
            "subset operands from different groups"
        );
    }

    pub fn union(&self, other: &GroupSubset) -> GroupSubset {
        self.assert_same(other);
        self.group.subset_from_bits(self.bits | other.bits)
    }

    pub fn intersection(&self, other: &GroupSubset) -> GroupSubset {
        self.assert_same(other);
        self.group.subset_from_bits(self.bits & other.bits)
    }

    pub fn minus(&self, other: &GroupSubset) -> GroupSubset {
        self.assert_same(other);
        self.group.subset_from_bits(self.bits & !other.bits)
    }

    pub fn complement(&self) -> GroupSubset {
        self.group
            .subset_from_bits(!self.bits & word_mask(self.group.order()))
    }

    pub fn is_subset_of(&self, other: &GroupSubset) -> bool {
        self.assert_same(other);
        self.bits & !other.bits == 0
    }

    /// `A + x`.
    pub fn translate(&self, x: u32) -> GroupSubset {
        self.group
            .subset_from_bits(self.group.translate_bits(self.bits, x))
    }

    /// `-A`.
    pub fn negated(&self) -> GroupSubset {
        self.group.subset_from_bits(self.group.neg_bits(self.bits))
    }
}

impl PartialEq for GroupSubset {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.bits == other.bits
    }
}
impl Eq for GroupSubset {}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSubset({} in {})", self, self.group.spec_string())
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = if self.group.factors().len() > 1 {
            self.indices()
                .iter()
                .map(|&i| {
                    format!(
                        "({})",
                        self.group
                            .decode(i)
                            .iter()
                            .map(u32::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                })
                .collect()
        } else {
            self.indices().iter().map(u32::to_string).collect()
        };
        write!(f, "{{{}}}", items.join(","))
    }
}

/// A subgroup: a subset validated to contain 0 and be closed under addition
/// and negation.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    set: GroupSubset,
}

impl Subgroup {
    /// Validates closure; fails with `NotASubgroup` otherwise.
    pub fn try_from_set(set: GroupSubset) -> Result<Subgroup> {
        if !set.group.is_subgroup_bits(set.bits) {
            return Err(Error::NotASubgroup);
        }
        Ok(Subgroup { set })
    }

    pub(crate) fn from_bits_unchecked(group: &AbelianGroup, bits: u64) -> Subgroup {
        debug_assert!(group.is_subgroup_bits(bits));
        Subgroup {
            set: group.subset_from_bits(bits),
        }
    }

    pub fn trivial(group: &AbelianGroup) -> Subgroup {
        Subgroup {
            set: group.subset_from_bits(1),
        }
    }

    pub fn full(group: &AbelianGroup) -> Subgroup {
        Subgroup {
            set: group.full_subset(),
        }
    }

    pub fn set(&self) -> &GroupSubset {
        &self.set
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.set.group
    }

    pub fn bits(&self) -> u64 {
        self.set.bits
    }

    pub fn card(&self) -> u32 {
        self.set.card()
    }

    pub fn is_trivial(&self) -> bool {
        self.set.bits == 1
    }

    pub fn is_full(&self) -> bool {
        self.card() == self.group().order()
    }

    pub fn index_in_group(&self) -> u32 {
        self.group().order() / self.card()
    }

    pub fn contains(&self, index: u32) -> bool {
        self.set.contains(index)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({})", self.set)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.set)
    }
}

/// Smallest subgroup containing `a` (`<A>`), by closure iteration.
pub fn generated_subgroup(a: &GroupSubset) -> Result<Subgroup> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(Subgroup::from_bits_unchecked(
        &a.group,
        a.group.closure_bits(a.bits),
    ))
}

/// All subgroups of `g`, found by BFS over inclusion (extend each known
/// subgroup by one generator, close, deduplicate), sorted by
/// (cardinality, bitset value).
pub fn enumerate_subgroups(g: &AbelianGroup) -> Vec<Subgroup> {
    let order = g.order();
    let mut seen: Vec<u64> = vec![1u64];
    let mut queue: Vec<u64> = vec![1u64];
    while let Some(h) = queue.pop() {
        for x in 1..order {
            if h >> x & 1 == 1 {
                continue;
            }
            let ext = g.closure_bits(h | (1u64 << x));
            if !seen.contains(&ext) {
                seen.push(ext);
                queue.push(ext);
            }
        }
    }
    seen.sort_by_key(|&b| (b.count_ones(), b));
    seen.into_iter()
        .map(|b| Subgroup::from_bits_unchecked(g, b))
        .collect()
}

/// A quotient `G/H` with its coset partition, canonical (minimal-index)
/// representatives, and an explicit isomorphism onto a product of cyclic
/// groups.
#[derive(Clone)]
pub struct QuotientView {
    parent: AbelianGroup,
    subgroup: Subgroup,
    quotient: AbelianGroup,
    /// parent element index -> quotient element index
    coset_of: Vec<u32>,
    /// quotient element index -> minimal parent representative
    reps: Vec<u32>,
    /// quotient element index -> parent bitset of the whole coset
    coset_mask: Vec<u64>,
}

impl fmt::Debug for QuotientView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QuotientView({} / {} ~ {})",
            self.parent.spec_string(),
            self.subgroup,
            self.quotient.spec_string()
        )
    }
}

/// Builds the canonical morphism `G -> G/H`. `h` must be a subgroup of `g`.
pub fn quotient_view(g: &AbelianGroup, h: &GroupSubset) -> Result<QuotientView> {
    if h.group() != g {
        return Err(Error::GroupMismatch);
    }
    let sub = Subgroup::try_from_set(h.clone())?;
    Ok(QuotientView::new(&sub))
}

impl QuotientView {
    pub fn new(h: &Subgroup) -> QuotientView {
        let g = h.group().clone();
        let order = g.order();
        let q = (order / h.card()) as usize;

        // Coset partition; scanning ascending makes the first member minimal.
        let mut raw_of_elem = vec![u32::MAX; order as usize];
        let mut raw_reps: Vec<u32> = Vec::with_capacity(q);
        let mut raw_masks: Vec<u64> = Vec::with_capacity(q);
        for x in 0..order {
            if raw_of_elem[x as usize] != u32::MAX {
                continue;
            }
            let id = raw_reps.len() as u32;
            let mask = g.translate_bits(h.bits(), x);
            let mut rest = mask;
            while rest != 0 {
                let y = rest.trailing_zeros();
                raw_of_elem[y as usize] = id;
                rest &= rest - 1;
            }
            raw_reps.push(x);
            raw_masks.push(mask);
        }
        debug_assert_eq!(raw_reps.len(), q);

        let qadd = |a: u32, b: u32| -> u32 {
            raw_of_elem[g.add(raw_reps[a as usize], raw_reps[b as usize]) as usize]
        };
        let cyclic = |c: u32| -> u64 {
            let mut bits = 1u64;
            let mut acc = c;
            while acc != 0 {
                bits |= 1u64 << acc;
                acc = qadd(acc, c);
            }
            bits
        };

        // Greedy basis: repeatedly take a maximal-order coset whose cyclic
        // group meets the span so far only in 0. A maximal-order cyclic
        // subgroup is a direct summand, so this always completes a basis.
        let mut basis: Vec<u32> = Vec::new();
        let mut orders_desc: Vec<u32> = Vec::new();
        let mut span: u64 = 1;
        while (span.count_ones() as usize) < q {
            let mut best: Option<(u32, u32, u64)> = None; // (order, coset, cyclic bits)
            for c in 1..q as u32 {
                if span >> c & 1 == 1 {
                    continue;
                }
                let cyc = cyclic(c);
                if cyc & span != 1 {
                    continue;
                }
                let ord = cyc.count_ones();
                let better = match best {
                    None => true,
                    Some((bo, _, _)) => ord > bo,
                };
                if better {
                    best = Some((ord, c, cyc));
                }
            }
            let (ord, c, cyc) = best.expect("abelian group basis extraction cannot get stuck");
            basis.push(c);
            orders_desc.push(ord);
            // span of the enlarged basis
            let mut new_span = 0u64;
            let mut rest = span;
            while rest != 0 {
                let a = rest.trailing_zeros();
                let mut cy = cyc;
                while cy != 0 {
                    let b = cy.trailing_zeros();
                    new_span |= 1u64 << qadd(a, b);
                    cy &= cy - 1;
                }
                rest &= rest - 1;
            }
            span = new_span;
        }
        debug_assert_eq!(
            orders_desc.iter().map(|&d| d as u64).product::<u64>(),
            q as u64
        );

        // Present the quotient with ascending factors (Z2xZ4 style).
        let factors_asc: Vec<u32> = orders_desc.iter().rev().copied().collect();
        let basis_asc: Vec<u32> = basis.iter().rev().copied().collect();
        let quotient = if q == 1 {
            AbelianGroup::trivial()
        } else {
            AbelianGroup::build(factors_asc.clone(), q as u32)
        };

        // Bijection between quotient indices (mixed-radix over the basis
        // orders) and raw coset ids.
        let scalar_mul = |c: u32, k: u32| -> u32 {
            let mut acc = 0u32;
            for _ in 0..k {
                acc = qadd(acc, c);
            }
            acc
        };
        let mut raw_of_qidx = vec![0u32; q];
        for qi in 0..q as u32 {
            let tuple = quotient.decode(qi);
            let mut raw = 0u32;
            for (k, &coeff) in tuple.iter().enumerate() {
                raw = qadd(raw, scalar_mul(basis_asc[k], coeff));
            }
            raw_of_qidx[qi as usize] = raw;
        }
        let mut qidx_of_raw = vec![u32::MAX; q];
        for (qi, &raw) in raw_of_qidx.iter().enumerate() {
            debug_assert_eq!(qidx_of_raw[raw as usize], u32::MAX, "index map not bijective");
            qidx_of_raw[raw as usize] = qi as u32;
        }

        let coset_of: Vec<u32> = raw_of_elem
            .iter()
            .map(|&raw| qidx_of_raw[raw as usize])
            .collect();
        let reps: Vec<u32> = raw_of_qidx
            .iter()
            .map(|&raw| raw_reps[raw as usize])
            .collect();
        let coset_mask: Vec<u64> = raw_of_qidx
            .iter()
            .map(|&raw| raw_masks[raw as usize])
            .collect();

        QuotientView {
            parent: g,
            subgroup: h.clone(),
            quotient,
            coset_of,
            reps,
            coset_mask,
        }
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn quotient_group(&self) -> &AbelianGroup {
        &self.quotient
    }

    /// `phi(x)` as a quotient element index.
    #[inline]
    pub fn map_element(&self, x: u32) -> u32 {
        self.coset_of[x as usize]
    }

    /// Minimal parent representative of a quotient element.
    pub fn rep(&self, qi: u32) -> u32 {
        self.reps[qi as usize]
    }

    /// All canonical coset representatives, indexed by quotient element.
    pub fn coset_reps(&self) -> &[u32] {
        &self.reps
    }

    /// `phi(A)` as a subset of the quotient group.
    pub fn map_subset(&self, a: &GroupSubset) -> GroupSubset {
        assert!(a.group() == &self.parent, "subset from a different group");
        self.quotient.subset_from_bits(self.map_bits(a.bits))
    }

    #[inline]
    pub(crate) fn map_bits(&self, bits: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = bits;
        while rest != 0 {
            let x = rest.trailing_zeros();
            out |= 1u64 << self.coset_of[x as usize];
            rest &= rest - 1;
        }
        out
    }

    /// `phi^{-1}(Y)` as a subset of the parent group.
    pub fn pullback(&self, y: &GroupSubset) -> GroupSubset {
        assert!(
            y.group() == &self.quotient,
            "subset from a different quotient"
        );
        self.parent.subset_from_bits(self.pullback_bits(y.bits))
    }

    #[inline]
    pub(crate) fn pullback_bits(&self, qbits: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = qbits;
        while rest != 0 {
            let qi = rest.trailing_zeros();
            out |= self.coset_mask[qi as usize];
            rest &= rest - 1;
        }
        out
    }

    /// Parent bitset of one coset.
    pub(crate) fn coset_bits(&self, qi: u32) -> u64 {
        self.coset_mask[qi as usize]
    }
}

/// All isomorphism types of abelian groups of order `2..=max_order`, each as
/// an ascending invariant-factor chain (every factor divides the next), e.g.
/// order 8 gives Z8, Z2xZ4, Z2xZ2xZ2.
pub fn enumerate_group_types(max_order: u64, cap: u64) -> Result<Vec<AbelianGroup>> {
    if max_order > cap.min(MAX_ORDER) {
        return Err(Error::OrderCapExceeded {
            order: max_order,
            cap: cap.min(MAX_ORDER),
        });
    }
    let mut out = Vec::new();
    for n in 2..=max_order {
        let mut chains = Vec::new();
        invariant_chains(n, 1, &mut Vec::new(), &mut chains);
        chains.sort_by_key(|c| (c.len(), c.clone()));
        for chain in chains {
            out.push(AbelianGroup::with_cap(&chain, cap)?);
        }
    }
    Ok(out)
}

fn invariant_chains(n: u64, min: u64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 1 {
        out.push(prefix.clone());
        return;
    }
    for d in 2..=n {
        if !n.is_multiple_of(d) || d < min || (min > 1 && d % min != 0) {
            continue;
        }
        prefix.push(d as u32);
        invariant_chains(n / d, d, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> AbelianGroup {
        AbelianGroup::new(&[n]).unwrap()
    }

    #[test]
    fn make_group_basic() {
        let g = AbelianGroup::new(&[6]).unwrap();
        assert_eq!(g.order(), 6);
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.decode(g.encode(&[1, 2]).unwrap()), vec![1, 2]);
        assert_eq!(AbelianGroup::new(&[1]), Err(Error::FactorBelowTwo(1)));
        assert_eq!(AbelianGroup::new(&[]), Err(Error::EmptyFactors));
        assert!(matches!(
            AbelianGroup::new(&[5, 5]),
            Err(Error::OrderCapExceeded { order: 25, cap: 24 })
        ));
        assert!(AbelianGroup::with_cap(&[5, 5], 32).is_ok());
    }

    #[test]
    fn group_axioms_exhaustive() {
        for factors in [vec![6], vec![2, 4], vec![2, 2, 3], vec![3, 3]] {
            let g = AbelianGroup::new(&factors).unwrap();
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.add(a, 0), a);
                assert_eq!(g.add(a, g.neg(a)), 0);
                for b in 0..n {
                    assert_eq!(g.add(a, b), g.add(b, a));
                    for c in 0..n {
                        assert_eq!(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn generated_subgroup_examples() {
        let g = z(6);
        let a = g.subset_from_indices(&[2]).unwrap();
        assert_eq!(generated_subgroup(&a).unwrap().set().indices(), [0, 2, 4]);
        let a = g.subset_from_indices(&[1]).unwrap();
        assert_eq!(generated_subgroup(&a).unwrap().card(), 6);
        assert_eq!(
            generated_subgroup(&g.empty_subset()),
            Err(Error::EmptySet)
        );

        // Z2xZ4, A = {(1,0),(0,2)}: closure oracle is "smallest subgroup
        // containing A", checked against the full lattice.
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        let a = g
            .parse_subset("{(1,0),(0,2)}")
            .unwrap();
        let gen = generated_subgroup(&a).unwrap();
        let expected = g.parse_subset("{(0,0),(1,0),(0,2),(1,2)}").unwrap();
        assert_eq!(gen.set(), &expected);
        let smallest = enumerate_subgroups(&g)
            .into_iter()
            .filter(|h| a.is_subset_of(h.set()))
            .min_by_key(|h| h.card())
            .unwrap();
        assert_eq!(smallest.set(), gen.set());
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(enumerate_subgroups(&z(6)).len(), 4);
        assert_eq!(
            enumerate_subgroups(&AbelianGroup::new(&[2, 2]).unwrap()).len(),
            5
        );
        assert_eq!(
            enumerate_subgroups(&AbelianGroup::new(&[2, 4]).unwrap()).len(),
            8
        );
    }

    #[test]
    fn subgroups_are_exactly_closed_subsets() {
        for factors in [vec![6], vec![2, 2], vec![8]] {
            let g = AbelianGroup::new(&factors).unwrap();
            let listed: Vec<u64> = enumerate_subgroups(&g).iter().map(|h| h.bits()).collect();
            for bits in 1..(1u64 << g.order()) {
                let closed = g.is_subgroup_bits(bits);
                assert_eq!(
                    closed,
                    listed.contains(&bits),
                    "bits {bits:#b} in {}",
                    g.spec_string()
                );
                if closed {
                    assert_eq!(g.closure_bits(bits), bits);
                    assert_eq!(g.order() % bits.count_ones(), 0, "Lagrange");
                }
            }
        }
    }

    #[test]
    fn quotient_z6_mod_3() {
        let g = z(6);
        let h = g.subset_from_indices(&[0, 3]).unwrap();
        let qv = quotient_view(&g, &h).unwrap();
        assert_eq!(qv.quotient_group().order(), 3);
        let a = g.subset_from_indices(&[0, 1, 3]).unwrap();
        let img = qv.map_subset(&a);
        assert_eq!(img.indices(), [0, 1]);
        // phi(x+y) = phi(x) + phi(y), exhaustively
        let q = qv.quotient_group();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(
                    qv.map_element(g.add(x, y)),
                    q.add(qv.map_element(x), qv.map_element(y))
                );
            }
        }
    }

    #[test]
    fn quotient_trivial_and_full() {
        let g = z(6);
        let qv = quotient_view(&g, &g.subset_from_indices(&[0]).unwrap()).unwrap();
        assert_eq!(qv.quotient_group().order(), 6);
        for x in 0..6 {
            assert_eq!(qv.map_element(x), x, "identity for the trivial subgroup");
        }
        let qv = quotient_view(&g, &g.full_subset()).unwrap();
        assert_eq!(qv.quotient_group().order(), 1);
        assert!(qv.quotient_group().is_trivial());
        assert!(matches!(
            quotient_view(&g, &g.subset_from_indices(&[0, 2]).unwrap()),
            Err(Error::NotASubgroup)
        ));
    }

    #[test]
    fn quotient_factors_are_invariant_chains() {
        for factors in [vec![2, 2, 3], vec![2, 8], vec![4, 4], vec![16], vec![3, 3]] {
            let g = AbelianGroup::new(&factors).unwrap();
            for h in enumerate_subgroups(&g) {
                let qv = QuotientView::new(&h);
                let q = qv.quotient_group();
                assert_eq!(q.order() * h.card(), g.order());
                // ascending chain, each factor dividing the next
                for w in q.factors().windows(2) {
                    assert!(w[0] <= w[1] && w[1] % w[0] == 0, "{:?}", q.factors());
                }
                // the morphism property, exhaustively
                for x in 0..g.order() {
                    for y in 0..g.order() {
                        assert_eq!(
                            qv.map_element(g.add(x, y)),
                            q.add(qv.map_element(x), qv.map_element(y))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_coset_identities() {
        for factors in [vec![6], vec![2, 4], vec![12]] {
            let g = AbelianGroup::new(&factors).unwrap();
            for h in enumerate_subgroups(&g) {
                let qv = QuotientView::new(&h);
                let q = qv.quotient_group().clone();
                assert_eq!(q.order() * h.card(), g.order());
                // phi(phi^-1(Y)) = Y for all quotient subsets
                for ybits in 0..(1u64 << q.order()) {
                    let y = q.subset_from_bits(ybits);
                    assert_eq!(qv.map_subset(&qv.pullback(&y)), y);
                }
                // phi^-1(phi(A)) = A + H for a sample of subsets
                for abits in (0..(1u64 << g.order())).step_by(7) {
                    let a = g.subset_from_bits(abits);
                    let lhs = qv.pullback(&qv.map_subset(&a));
                    let rhs = g.subset_from_bits(g.sum_bits(abits, h.bits()));
                    assert_eq!(lhs, rhs);
                }
                // homomorphism
                for x in 0..g.order() {
                    for y in 0..g.order() {
                        assert_eq!(
                            qv.map_element(g.add(x, y)),
                            q.add(qv.map_element(x), qv.map_element(y))
                        );
                    }
                }
                // canonical reps are minimal
                for qi in 0..q.order() {
                    let mask = qv.coset_bits(qi);
                    assert_eq!(qv.rep(qi), mask.trailing_zeros());
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let g = AbelianGroup::parse_spec("z2xZ4").unwrap();
        assert_eq!(g.spec_string(), "Z2xZ4");
        let s = g.parse_subset("{(0,0),(1,2)}").unwrap();
        assert_eq!(s.to_string(), "{(0,0),(1,2)}");
        let g = AbelianGroup::parse_spec("Z6").unwrap();
        let s = g.parse_subset("{0, 1, 3}").unwrap();
        assert_eq!(s.to_string(), "{0,1,3}");
        assert!(g.parse_subset("{0,9}").is_err());
        assert!(AbelianGroup::parse_spec("Q8").is_err());
        assert!(g.parse_subset("0,1").is_err());
    }

    #[test]
    fn group_type_enumeration() {
        let types = enumerate_group_types(10, 24).unwrap();
        let names: Vec<String> = types.iter().map(|g| g.spec_string()).collect();
        // orders 2..10: one type per order except 4, 8, 9
        assert_eq!(
            names,
            [
                "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "Z9",
                "Z3xZ3", "Z10"
            ]
        );
        assert!(matches!(
            enumerate_group_types(40, 24),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn subset_ops() {
        let g = z(6);
        let a = g.subset_from_indices(&[0, 1, 3]).unwrap();
        assert_eq!(a.card(), 3);
        assert!(a.contains(3) && !a.contains(2));
        assert_eq!(a.translate(2).indices(), [2, 3, 5]);
        assert_eq!(a.negated().indices(), [0, 3, 5]);
        assert_eq!(a.complement().indices(), [2, 4, 5]);
        let b = g.subset_from_indices(&[1, 2]).unwrap();
        assert_eq!(a.union(&b).indices(), [0, 1, 2, 3]);
        assert_eq!(a.intersection(&b).indices(), [1]);
        assert_eq!(a.minus(&b).indices(), [0, 3]);
    }

    #[test]
    fn element_arithmetic() {
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        let x = g.element(g.encode(&[1, 3]).unwrap()).unwrap();
        let y = g.element(g.encode(&[1, 2]).unwrap()).unwrap();
        assert_eq!(x.add(&y).unwrap().tuple(), vec![0, 1]);
        assert_eq!(x.neg().tuple(), vec![1, 1]);
        assert_eq!(x.order(), 4);
        assert_eq!(x.to_string(), "(1,3)");
    }
}
