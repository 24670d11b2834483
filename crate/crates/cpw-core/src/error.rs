use thiserror::Error;

/// A typed hypothesis clause, used when an extremal-pair precondition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Clause {
    /// `<S ∪ T>` must be the whole group.
    SpansGroup,
    /// `0 ∈ S ∩ T`.
    ZeroInBoth,
    /// `S + T` must be aperiodic.
    SumAperiodic,
    /// `2 ≤ |S| ≤ |T|`.
    SizeOrder,
    /// `|S + T| = |S| + |T| - 1`.
    Cardinality,
    /// `|S + T| ≤ |G| - 2`.
    UpperBound,
    /// `3 |S + T| ≤ 2 |G| + 2`.
    TwoThirdBound,
    /// `S` must not be an arithmetic progression.
    SNotProgression,
    /// `S` must generate the group.
    SGenerates,
}

impl std::fmt::Display for Clause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Clause::SpansGroup => "S and T together must generate the group",
            Clause::ZeroInBoth => "0 must lie in S and in T",
            Clause::SumAperiodic => "S+T must be aperiodic",
            Clause::SizeOrder => "2 <= |S| <= |T| required",
            Clause::Cardinality => "|S+T| = |S|+|T|-1 required",
            Clause::UpperBound => "|S+T| <= |G|-2 required",
            Clause::TwoThirdBound => "3|S+T| <= 2|G|+2 required",
            Clause::SNotProgression => "S is an arithmetic progression",
            Clause::SGenerates => "S must generate the group",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factor list is empty")]
    EmptyFactors,
    #[error("cyclic factor {0} is below two")]
    FactorBelowTwo(u64),
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: u64, cap: u64 },
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: u64, order: u32 },
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("the given set is not a subgroup")]
    NotASubgroup,
    #[error("0 must be an element of S")]
    ZeroNotInS,
    #[error("S does not generate the group")]
    NotGenerating,
    #[error("S must be a proper subset of the group")]
    NotProper,
    #[error("k = {0} is unsupported; only k in {{1, 2}}")]
    UnsupportedK(u32),
    #[error("subgroup is not a 1-fragment")]
    NotAFragment,
    #[error("A + B does not cover the group")]
    NotACover,
    #[error("fragment count exceeds the cap of {0}")]
    FragmentOverflow(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(Clause),
    #[error("no witness subgroup found (counterexample candidate)")]
    NoWitnessFound,
    #[error("matching hypotheses unmet: {0}")]
    HypothesesUnmet(String),
    #[error("only {found} of {required} required paths/matches exist (counterexample candidate)")]
    MatchingShortfall { required: u32, found: u32 },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(u32),
    #[error("graph has {0} vertices; at most 64 are supported")]
    GraphTooLarge(usize),
    #[error("unknown theorem id: {0}")]
    UnknownTheorem(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}
