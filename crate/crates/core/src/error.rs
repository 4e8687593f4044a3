use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("point degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("group closure exceeded the order bound of {bound} elements")]
    OrderBoundExceeded { bound: usize },

    #[error("permutation {0} is not an element of the group")]
    NotAnElement(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("subgroups belong to different parent groups")]
    SubgroupMismatch,

    #[error("subgroup is not a member of the normal lattice")]
    NotInLattice,

    #[error("empty interval: lattice member {lower} is not contained in member {upper}")]
    IntervalEmpty { lower: usize, upper: usize },

    #[error("family does not satisfy the {kind} property: {detail}")]
    InvalidFamily { kind: &'static str, detail: String },

    #[error("graph is malformed: {0}")]
    MalformedGraph(String),

    #[error("not a group action by graph automorphisms: {0}")]
    InvalidAction(String),

    #[error(
        "S together with U does not generate the group (generated order {generated} of {order})"
    )]
    NotGenerating { generated: usize, order: usize },

    #[error("degree search budget of {budget} candidates exhausted; best so far: {best:?}")]
    BudgetExceeded { budget: usize, best: Option<usize> },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("no sandwich certificate found; scanned intervals {scanned:?}")]
    NoCertificate { scanned: Vec<(usize, usize)> },

    #[error("anchors are not an ascending chain at position {position}")]
    AnchorsNotAscending { position: usize },

    #[error("association is not transitive on non-abelian chief factors: {0}")]
    AssociationNotTransitive(String),

    #[error(
        "factor {index} of the first series has no associated non-negligible factor in the second"
    )]
    NoMatch { index: usize },

    #[error("factor {index} of the first series is associated to several factors {matches:?}")]
    MultipleMatch { index: usize, matches: Vec<usize> },

    #[error("series is not essentially chief: factor {index} carries no tag")]
    NotEssentiallyChief { index: usize },

    #[error("expected exactly one covering factor, found {covering:?}")]
    CoverCountViolation { covering: Vec<usize> },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Input(String),
}

impl Error {
    /// True for errors that refute a checked structural property, as opposed
    /// to malformed input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::AssociationNotTransitive(_)
                | Error::NoMatch { .. }
                | Error::MultipleMatch { .. }
                | Error::CoverCountViolation { .. }
                | Error::VerificationFailed(_)
                | Error::NoCertificate { .. }
        )
    }
}
