//! Error type shared by the whole crate.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by callers (the CLI maps kinds to exit codes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input (bad dimensions, negative entries, ...).
    InvalidInput,
    /// The request is well-formed but provably unsatisfiable.
    Infeasible,
    /// An iteration budget ran out or a post-hoc verification failed.
    Numeric,
    /// An oracle was asked to exceed its brute-force budget.
    Budget,
}

#[derive(Debug, Clone)]
pub enum Error {
    /// Matrix data does not match the declared dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// A dimension of zero was supplied.
    EmptyMatrix,
    /// A negative or non-finite entry where a nonnegative one is required.
    InvalidEntry { row: usize, col: usize, value: f64 },
    /// Nonzero entries of a row differ beyond tolerance.
    RowNotUniform { row: usize },
    /// A row value of a row uniform matrix is not strictly positive.
    InvalidRowValue { row: usize, value: f64 },
    /// The operation needs at least one cycle in the support.
    Acyclic,
    /// The operation needs an irreducible (strongly connected) matrix.
    Reducible,
    /// No strictly positive Perron eigenvector exists for this matrix.
    NoPositiveEigenvector,
    /// The max-plus closure diverges: a cycle has positive weight.
    PositiveCycle { weight: f64 },
    /// A scaling level lies outside the achievable interval.
    LevelOutsideRange { level: f64, lo: f64, hi: f64 },
    /// A Perron-root target exceeds the maximal achievable value.
    TargetAboveMax { target: f64, max: f64 },
    /// A Perron-root target is below the minimal achievable value.
    TargetBelowMin { target: f64, min: f64 },
    /// The upper endpoint of the Perron-root range is not attained: no final
    /// class has equal maximal and minimal cycle means at that value.
    UpperEndpointOpen { value: f64 },
    /// The lower endpoint is not attained: a final class attaining it has
    /// distinct maximal and minimal cycle means.
    LowerEndpointOpen { value: f64 },
    /// Zero is achievable as a Perron root only for acyclic supports.
    ZeroUnachievable,
    /// An eigenvalue modulus lies outside the achievable set.
    ModulusOutsideSet { modulus: f64, description: String },
    /// The requested eigenvalue is zero but the class admits no singular matrix.
    ZeroNotInSet,
    /// The operation needs a support with more than one cycle.
    NotMulticyclic,
    /// The operation needs a zero diagonal.
    NonzeroDiagonal { row: usize },
    /// An index set argument must be nonempty.
    EmptyIndexSet,
    /// A requested cycle is not a cycle of the host graph.
    NotACycle { reason: String },
    /// A chosen sunflower cycle does not sit inside its final class.
    CycleOutsideFinalClass { cycle_node: usize },
    /// Chosen cycles do not match the nontrivial final classes one-to-one.
    CycleClassMismatch { expected: usize, got: usize },
    /// One polygon side exceeds the sum of the others.
    PolygonInfeasible { index: usize, length: f64, rest: f64 },
    /// Hypotheses of the singular-row construction are violated.
    RowMatrixHypothesis { row: usize, reason: String },
    /// The regularity test radius is below one; no singular witness exists.
    SpectralRadiusBelowOne { radius: f64 },
    /// An iteration budget was exhausted without convergence.
    IterationBudget { what: &'static str },
    /// A post-hoc verification failed.
    VerificationFailed { what: String },
    /// Brute-force budget exceeded.
    BudgetExceeded { what: &'static str, limit: usize, got: usize },
    /// An index is out of bounds for the matrix dimension.
    IndexOutOfBounds { index: usize, n: usize },
    /// File or text input could not be parsed.
    Parse { message: String },
    Io { message: String },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            DimensionMismatch { .. }
            | EmptyMatrix
            | InvalidEntry { .. }
            | RowNotUniform { .. }
            | InvalidRowValue { .. }
            | Acyclic
            | Reducible
            | NoPositiveEigenvector
            | PositiveCycle { .. }
            | NotMulticyclic
            | NonzeroDiagonal { .. }
            | EmptyIndexSet
            | NotACycle { .. }
            | CycleOutsideFinalClass { .. }
            | CycleClassMismatch { .. }
            | RowMatrixHypothesis { .. }
            | IndexOutOfBounds { .. }
            | Parse { .. }
            | Io { .. } => ErrorKind::InvalidInput,
            LevelOutsideRange { .. }
            | TargetAboveMax { .. }
            | TargetBelowMin { .. }
            | UpperEndpointOpen { .. }
            | LowerEndpointOpen { .. }
            | ZeroUnachievable
            | ModulusOutsideSet { .. }
            | ZeroNotInSet
            | SpectralRadiusBelowOne { .. }
            | PolygonInfeasible { .. } => ErrorKind::Infeasible,
            IterationBudget { .. } | VerificationFailed { .. } => ErrorKind::Numeric,
            BudgetExceeded { .. } => ErrorKind::Budget,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            EmptyMatrix => write!(f, "matrix dimension must be at least 1"),
            InvalidEntry { row, col, value } => write!(
                f,
                "entry ({row},{col}) = {value} is negative or not finite"
            ),
            RowNotUniform { row } => write!(
                f,
                "row {row} has nonzero entries that differ beyond tolerance; not row uniform"
            ),
            InvalidRowValue { row, value } => {
                write!(f, "row {row} has invalid row value {value}")
            }
            Acyclic => write!(f, "the support contains no cycle"),
            Reducible => write!(f, "the matrix is reducible (not strongly connected)"),
            NoPositiveEigenvector => write!(
                f,
                "no strictly positive Perron eigenvector: a transient class attains the \
                 spectral radius or a final class falls short of it"
            ),
            PositiveCycle { weight } => write!(
                f,
                "max-plus closure diverges: a cycle has positive weight {weight}"
            ),
            LevelOutsideRange { level, lo, hi } => write!(
                f,
                "level {level} is outside the achievable interval [{lo}, {hi}]"
            ),
            TargetAboveMax { target, max } => write!(
                f,
                "target {target} exceeds the maximal achievable Perron root {max} \
                 (the maximal cycle mean)"
            ),
            TargetBelowMin { target, min } => write!(
                f,
                "target {target} is below the minimal achievable Perron root {min} \
                 (the largest minimal cycle mean over final classes)"
            ),
            UpperEndpointOpen { value } => write!(
                f,
                "the upper endpoint {value} is not attained: no final class has equal \
                 maximal and minimal cycle means at that value"
            ),
            LowerEndpointOpen { value } => write!(
                f,
                "the lower endpoint {value} is not attained: a final class attaining it \
                 has distinct maximal and minimal cycle means"
            ),
            ZeroUnachievable => write!(
                f,
                "Perron root 0 is achievable only when the support is acyclic"
            ),
            ModulusOutsideSet { modulus, description } => write!(
                f,
                "modulus {modulus} lies outside the achievable eigenvalue set {description}"
            ),
            ZeroNotInSet => write!(
                f,
                "0 is not an achievable eigenvalue: the support has exactly one nonzero \
                 generalized diagonal product"
            ),
            NotMulticyclic => write!(f, "the support must contain more than one cycle"),
            NonzeroDiagonal { row } => write!(f, "diagonal entry at row {row} must be zero"),
            EmptyIndexSet => write!(f, "the index set must be nonempty"),
            NotACycle { reason } => write!(f, "not a cycle of the host graph: {reason}"),
            CycleOutsideFinalClass { cycle_node } => write!(
                f,
                "chosen cycle visits node {cycle_node} outside its final class"
            ),
            CycleClassMismatch { expected, got } => write!(
                f,
                "expected one cycle per nontrivial final class ({expected}), got {got}"
            ),
            PolygonInfeasible { index, length, rest } => write!(
                f,
                "length {length} at position {index} exceeds the sum {rest} of the others; \
                 the polygon cannot close"
            ),
            RowMatrixHypothesis { row, reason } => {
                write!(f, "row {row} violates the singular-row hypotheses: {reason}")
            }
            SpectralRadiusBelowOne { radius } => write!(
                f,
                "test radius {radius} is below one; the class contains no singular matrix"
            ),
            IterationBudget { what } => write!(f, "iteration budget exhausted in {what}"),
            VerificationFailed { what } => write!(f, "verification failed: {what}"),
            BudgetExceeded { what, limit, got } => {
                write!(f, "oracle budget exceeded in {what}: limit {limit}, got {got}")
            }
            IndexOutOfBounds { index, n } => {
                write!(f, "index {index} out of bounds for dimension {n}")
            }
            Parse { message } => write!(f, "parse error: {message}"),
            Io { message } => write!(f, "io error: {message}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io { message: e.to_string() }
    }
}
