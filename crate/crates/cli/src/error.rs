//! Errors of the command-line front end.

use thiserror::Error;

/// Everything that stops a command before it can report a verdict. All of
/// these exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error(transparent)]
    Set(#[from] setcore::SetError),
    #[error(transparent)]
    Chain(#[from] chainlab::ChainError),
    #[error(transparent)]
    Msystem(#[from] msystem::MsysError),
    #[error(transparent)]
    Poset(#[from] posets::PosetError),
    #[error(transparent)]
    Resolution(#[from] resolution::ResolutionError),
    #[error(transparent)]
    Body(#[from] bodies::BodyError),
    #[error(transparent)]
    Symm(#[from] symmetrize::SymmError),
    #[error(transparent)]
    Mellin(#[from] mellin::MellinError),
}

impl CliError {
    pub(crate) fn parse(what: &'static str, detail: impl ToString) -> Self {
        CliError::Parse { what, detail: detail.to_string() }
    }
}
