//! Command-line harness around `segdepth-core`: point-set generation,
//! verification reports, depth and facet dumps, and resumable conjecture
//! campaigns.

pub mod campaign;
pub mod commands;

use segdepth_core::Error as CoreError;

/// Process exit status. The numbering is stable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    Input = 2,
    TheoremViolation = 3,
    ConjectureViolation = 4,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: CoreError,
    },
    #[error("{0}")]
    Input(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Usage(_) => Exit::Usage,
            CliError::Core { source: CoreError::InvalidSpec(_), .. } => Exit::Usage,
            _ => Exit::Input,
        }
    }

    pub fn core(context: impl Into<String>) -> impl FnOnce(CoreError) -> CliError {
        let context = context.into();
        move |source| CliError::Core { context, source }
    }

    pub fn io(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Io { context, source }
    }
}

/// Worker-count override for the rayon pool.
pub const WORKERS_ENV: &str = "SEGDEPTH_WORKERS";
