use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("size mismatch: expected {expected} qubits, got {got}")]
    Size { expected: usize, got: usize },
    #[error("qubit index {index} out of range for {n} qubits")]
    OutOfRange { index: usize, n: usize },
    #[error("generators are dependent (rank {rank} < {count})")]
    RankDeficient { rank: usize, count: usize },
    #[error("generators {0} and {1} anticommute")]
    Anticommuting(usize, usize),
    #[error("generator {0} is not Hermitian")]
    NonHermitian(usize),
    #[error("generator set contains -I")]
    MinusIdentity,
    #[error("cannot measure the identity")]
    IdentityMeasurement,
    #[error("forced outcome {forced} contradicts deterministic outcome {actual}")]
    Contradiction { forced: i8, actual: i8 },
    #[error("malformed Pauli literal: {0}")]
    Parse(String),
    #[error("{0} qubits exceed the dense simulator cap")]
    TooLarge(usize),
    #[error("vertex {0} is not in the graph")]
    MissingVertex(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("rule precondition failed: {0}")]
    Precondition(String),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("hole {index} out of range ({count} plaquettes)")]
    HoleOutOfRange { index: usize, count: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("string path is disconnected")]
    DisconnectedPath,
    #[error("excited cells {0:?} cannot be paired")]
    Parity(Vec<usize>),
    #[error("embedding failed: {0}")]
    Embedding(String),
    #[error("qubit {0} is outside the supported bulk region")]
    UnsupportedLocation(usize),
    #[error("qubit {0} was already measured")]
    AlreadyMeasured(usize),
    #[error("loop touches measured qubit {0}")]
    LoopOnCut(usize),
}

pub type Result<T> = core::result::Result<T, Error>;
