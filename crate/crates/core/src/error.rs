use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix [[{a},{b}],[{c},{d}]] has determinant {det}, expected 1")]
    NotUnimodular {
        a: String,
        b: String,
        c: String,
        d: String,
        det: String,
    },
    #[error("invalid cycle word {word:?}: {reason}")]
    InvalidCycleWord { word: Vec<i64>, reason: &'static str },
    #[error("trace {trace} < 3: not the monodromy of a cusp link")]
    NotCuspClass { trace: String },
    #[error("no cycle-word factorization found for [[{0}]]")]
    NoFactorization(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edge ({0}, {1}) references a vertex out of range")]
    VertexOutOfRange(usize, usize),
    #[error("open book was not produced by a supported constructor")]
    UnsupportedOpenBook,
    #[error("framing {framing} exceeds the Stein bound (tb_max - 1 = {bound})")]
    FramingTooLarge { framing: i64, bound: i64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("first Chern class is not torsion: Q x = rot has no rational solution")]
    NonTorsionChernClass,
    #[error("d3 needs a literal linking matrix; this diagram only has a plumbing presentation")]
    UnsupportedPresentation,
}
