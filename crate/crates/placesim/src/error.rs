use std::path::PathBuf;

use thiserror::Error;

use crate::topology::DeviceKind;

/// Everything that can go wrong inside the library.
///
/// Binaries and examples wrap this in `anyhow`; library callers can match on
/// the variants they care about (most commonly [`Error::EmptyModel`] when a
/// request has nowhere to run at all).
#[derive(Debug, Error)]
pub enum Error {
    /// A path was requested to a site that is not on the origin's branch of
    /// the tree (for example, a neighbouring carrier-edge site).
    #[error("no path from input node {origin} to site {site}: site is not on the origin's branch")]
    UnreachableSite { origin: usize, site: usize },

    /// A commit would overdraw a device or link, or the demand itself is
    /// malformed (negative). The ledger is left untouched.
    #[error("capacity violation: {0}")]
    CapacityViolation(String),

    /// The app has no offload variant for the given device kind, so it can
    /// never run there.
    #[error("app '{app}' cannot run on {kind} devices")]
    IneligibleDeviceKind { app: String, kind: DeviceKind },

    /// No device in the whole branch is eligible for the request, so there is
    /// no optimization model to build or solve.
    #[error("request {request}: no eligible device on the origin's branch, nothing to optimize")]
    EmptyModel { request: u64 },

    /// An app profile failed validation (empty variant table, non-positive
    /// processing time, negative demand, and so on).
    #[error("invalid app profile: {0}")]
    InvalidProfile(String),

    /// A requirement ladder failed validation (empty, mixed kinds, or caps
    /// that do not strictly loosen).
    #[error("invalid requirement ladder: {0}")]
    InvalidLadder(String),

    /// A scenario file or builder input failed validation.
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    /// Filesystem trouble, tagged with the path involved.
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A scenario file exists but is not valid JSON for the schema.
    #[error("{}: {source}", path.display())]
    ScenarioParse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
