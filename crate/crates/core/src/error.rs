use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector norm {norm} is not 1")]
    NotUnit { norm: f64 },
    #[error("points are (nearly) antipodal; the connecting arc is not unique")]
    AntipodalInput,
    #[error("cannot project a zero vector onto the sphere")]
    ZeroVector,
    #[error("frame direction is parallel to the apex")]
    DegenerateFrame,
    #[error("face {face} references vertex {index}, but the mesh has {count} vertices")]
    FaceIndexOutOfRange { face: usize, index: u32, count: usize },
    #[error("face {face} repeats a vertex")]
    RepeatedVertex { face: usize },
    #[error("edge ({v0}, {v1}) is shared by {faces} faces, expected 2")]
    NonManifold { v0: u32, v1: u32, faces: usize },
    #[error("at least two points are required")]
    TooFewPoints,
    #[error("grid index out of range: n={n}, i={i}, j={j}")]
    IndexOutOfRange { n: u32, i: u32, j: i32 },
    #[error("subdivision frequency {0} is out of range")]
    InvalidFrequency(u32),
    #[error("vertex merging produced {got} vertices, expected {expected}")]
    DedupMismatch { expected: usize, got: usize },
    #[error("{0}")]
    Domain(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {index} has norm {norm}, not on the unit sphere")]
    NotInscribed { index: usize, norm: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
