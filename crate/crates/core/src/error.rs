use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // fields
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("characteristic {0} exceeds 65536")]
    PrimeTooLarge(u64),
    #[error("modulus {0:?} is reducible over GF({1})")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("no built-in modulus for GF({p}^{e}); supply one")]
    UnsupportedExtension { p: u32, e: u32 },
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("field of order {0} is outside the supported range")]
    FieldTooLarge(u64),
    #[error("element index {index} is not below q = {q}")]
    ElementOutOfRange { index: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,

    // polynomials
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("variable {name} is out of range for {n} variables")]
    VariableOutOfRange { name: String, n: usize },
    #[error("zero coefficient in polynomial text")]
    ZeroCoefficientRejected,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands are defined over different fields or variable counts")]
    SpecMismatch,
    #[error("matrix is singular")]
    SingularMatrix,

    // groups and orbits
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("generator {index} is singular")]
    SingularGenerator { index: usize },
    #[error("{points} points exceed the cap of {cap}")]
    PointCapExceeded { points: u128, cap: u128 },
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),

    // separating sets
    #[error("expansion exceeds {cap} terms")]
    ExpansionTooLarge { cap: usize },
    #[error("|G| = {order} is divisible by the characteristic {p}")]
    ModularCase { order: usize, p: u32 },
    #[error("{k} columns do not fit into {q}^{rows} distinct vectors")]
    TooManyColumns { q: u32, k: usize, rows: usize },
    #[error("group contains the non-monomial element {element}")]
    NotMonomialGroup { element: String },
    #[error("invariant {index} ({poly}) is not fixed by generator {generator}")]
    NotInvariant { index: usize, poly: String, generator: String },
    #[error("{0} invariants exceed the subset-search cap of 20")]
    TooManyInvariants(usize),
    #[error("no separating degree found up to {0}")]
    DegreeCapExceeded(u32),
    #[error("{monomials} monomials in degree {degree} exceed the linear algebra cap of {cap}")]
    LinearAlgebraCapExceeded { degree: u32, monomials: usize, cap: usize },

    // graphs
    #[error("monomial is not square-free: edge {0:?} repeats")]
    NotSquareFree((usize, usize)),
    #[error("edge {0:?} is not a valid pair 1 <= i < j <= n")]
    BadEdge((usize, usize)),
    #[error("n = {0} is not supported here")]
    UnsupportedN(usize),
    #[error("malformed edge list, line {line}: {msg}")]
    MalformedEdgeList { line: usize, msg: String },
    #[error("recomputed {0} differs from the embedded golden copy")]
    GoldenMismatch(String),

    // multisymmetric
    #[error("t = {t} out of range 1..={n}")]
    TOutOfRange { t: usize, n: usize },
    #[error("tau has length {got}, expected {expected}")]
    BadTauLength { expected: usize, got: usize },
    #[error("tau sums to {got}, expected {expected}")]
    BadTauSum { expected: usize, got: usize },
    #[error("tau and theta sum to different totals")]
    SumMismatch,
    #[error("slot index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("instance exceeds cap: {0}")]
    CapExceeded(String),
    #[error("witness for {0} failed validation")]
    WitnessValidationFailed(String),
    #[error("n = {0} is outside the checked range")]
    OutOfRemarkRange(usize),
}

impl Error {
    /// Errors caused by a configured size cap rather than bad input or a failed claim.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. }
                | Error::PointCapExceeded { .. }
                | Error::ExpansionTooLarge { .. }
                | Error::TooManyInvariants(_)
                | Error::DegreeCapExceeded(_)
                | Error::LinearAlgebraCapExceeded { .. }
                | Error::CapExceeded(_)
                | Error::FieldTooLarge(_)
        )
    }
}
