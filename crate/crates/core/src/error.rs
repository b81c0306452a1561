use thiserror::Error;

/// Errors raised by the library.
///
/// Morse-theoretic failures that are part of a normal diagnosis (a cyclic
/// matching, an inadmissible edge) are reported in result structs instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("duplicate cover `{0} < {1}`")]
    DuplicateCover(String, String),
    #[error("covers contain a directed cycle through `{0}`")]
    CoverCycle(String),
    #[error("`{0} < {1}` is implied transitively and is not a cover")]
    RedundantCover(String, String),
    #[error("poset is not graded")]
    NotGraded,
    #[error("`{0} < {1}` is not a cover")]
    NotACover(String, String),
    #[error("simplicial complex is empty")]
    EmptyComplex,
    #[error("not a chain complex: d_{degree} composed with d_{next} is nonzero", next = degree + 1)]
    NotAComplex { degree: i64 },
    #[error("homology in degree {degree} is not infinite cyclic")]
    NotInfiniteCyclic { degree: i64 },
    #[error("chain is not a cycle in degree {degree}")]
    NotACycle { degree: i64 },
    #[error("poset is not cellular (failing element `{0}`)")]
    NotCellular(String),
    #[error("matching is not a Morse matching: {0}")]
    NotMorse(String),
    #[error("matched pair `{0} -- {1}` is not homologically admissible")]
    InadmissiblePair(String, String),
    #[error("Morse function stage {0} has no elements of the previous degree")]
    DegenerateStage(usize),
    #[error("incidence solve failed for `{x}` over `{w}`: {reason}")]
    SolveFailure {
        x: String,
        w: String,
        reason: String,
    },
    #[error("cellular differential violates d∘d = 0 in degree {0}")]
    ChainRuleViolation(i64),
    #[error("gradient flow did not stabilize within {0} iterations")]
    StabilizationOverrun(usize),
    #[error("stabilized flow images of critical cells are dependent in degree {0}")]
    BasisDegenerate(i64),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("fixture `{name}`: {message}")]
    Fixture { name: String, message: String },
}

impl Error {
    /// The variant name, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateElement(_) => "DuplicateElement",
            Error::UnknownElement(_) => "UnknownElement",
            Error::InvalidIdentifier(_) => "InvalidIdentifier",
            Error::DuplicateCover(..) => "DuplicateCover",
            Error::CoverCycle(_) => "CoverCycle",
            Error::RedundantCover(..) => "RedundantCover",
            Error::NotGraded => "NotGraded",
            Error::NotACover(..) => "NotACover",
            Error::EmptyComplex => "EmptyComplex",
            Error::NotAComplex { .. } => "NotAComplex",
            Error::NotInfiniteCyclic { .. } => "NotInfiniteCyclic",
            Error::NotACycle { .. } => "NotACycle",
            Error::NotCellular(_) => "NotCellular",
            Error::NotMorse(_) => "NotMorse",
            Error::InadmissiblePair(..) => "InadmissiblePair",
            Error::DegenerateStage(_) => "DegenerateStage",
            Error::SolveFailure { .. } => "SolveFailure",
            Error::ChainRuleViolation(_) => "ChainRuleViolation",
            Error::StabilizationOverrun(_) => "StabilizationOverrun",
            Error::BasisDegenerate(_) => "BasisDegenerate",
            Error::Syntax { .. } => "SyntaxError",
            Error::AtLine { source, .. } => source.kind(),
            Error::Fixture { .. } => "FixtureError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
