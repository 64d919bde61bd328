//! Crate-wide error and its process exit code.

use thiserror::Error;

use crate::cw::CwError;
use crate::division::DivisionError;
use crate::document::DocumentError;
use crate::fixedpoint::FixedPointError;
use crate::geometry::GeometryError;
use crate::homology::HomologyError;
use crate::nerve::NerveError;
use crate::proximity::ProximityError;
use crate::ribbon::RibbonError;

/// Exit code of a successful run.
pub const EXIT_OK: i32 = 0;
/// The input is well formed but fails a validity condition.
pub const EXIT_VALIDATION: i32 = 2;
/// The input or the command line cannot be read as a document.
pub const EXIT_SCHEMA: i32 = 3;
/// A computation on a valid input failed.
pub const EXIT_COMPUTATION: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("unknown target `{0}`")]
    UnknownTarget(String),
    #[error("`{name}` is a {kind}, which this command does not accept")]
    WrongTargetKind { name: String, kind: &'static str },
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Cw(#[from] CwError),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Proximity(#[from] ProximityError),
    #[error(transparent)]
    Division(#[from] DivisionError),
    #[error(transparent)]
    FixedPoint(#[from] FixedPointError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Document(_)
            | Error::UnknownTarget(_)
            | Error::WrongTargetKind { .. }
            | Error::Io { .. }
            | Error::Usage(_) => EXIT_SCHEMA,
            Error::Geometry(_) | Error::Cw(_) | Error::Ribbon(_) => EXIT_VALIDATION,
            Error::Nerve(_) | Error::Proximity(_) | Error::Division(_) | Error::FixedPoint(_) | Error::Homology(_) => {
                EXIT_COMPUTATION
            }
        }
    }

    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> String {
        let debug = match self {
            Error::Document(e) => format!("{e:?}"),
            Error::Geometry(e) => format!("{e:?}"),
            Error::Cw(e) => format!("{e:?}"),
            Error::Ribbon(e) => format!("{e:?}"),
            Error::Nerve(e) => format!("{e:?}"),
            Error::Proximity(e) => format!("{e:?}"),
            Error::Division(e) => format!("{e:?}"),
            Error::FixedPoint(e) => format!("{e:?}"),
            Error::Homology(e) => format!("{e:?}"),
            other => format!("{other:?}"),
        };
        debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
    }
}
