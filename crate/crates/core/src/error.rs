use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty hypothesis class")]
    EmptyClass,
    #[error("ungridded transcript: prediction {value} is not a multiple of 1/{den}")]
    UngriddedTranscript { value: f64, den: u64 },
    #[error("transcript has no declared grid")]
    NoGrid,
    #[error("loss not proper: E[l(q,y)] beats E[l(u,y)] by {violation} at q={q}, u={u}")]
    NotProper { q: f64, u: f64, violation: f64 },
    #[error("not in L_BV: probe-grid variation {variation} exceeds 2")]
    NotBoundedVariation { variation: f64 },
    #[error("non-convex piece: second difference {value} at {x}")]
    NotConvex { x: f64, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("potential argument violated: boosting exceeded {cap} iterations")]
    PotentialViolated { cap: usize },
    #[error("rate fit: all metric values nonpositive, nothing to fit")]
    EmptyRateFit,
    #[error("csv parse error at line {line}: {msg}")]
    CsvParse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
