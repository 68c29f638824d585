use contact_surgery::ledger::LedgerError;
use contact_surgery::{CatalogError, DiagramError, ExpansionError, HomologyError, KnotError, OpenBookError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),

    #[error(transparent)]
    Diagram(#[from] DiagramError),

    #[error(transparent)]
    Expansion(#[from] ExpansionError),

    #[error(transparent)]
    Homology(#[from] HomologyError),

    #[error(transparent)]
    Knot(#[from] KnotError),

    #[error(transparent)]
    Ledger(#[from] LedgerError),

    #[error(transparent)]
    OpenBook(#[from] OpenBookError),

    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Computation(String),

    #[error("{0} acceptance check(s) failed")]
    SelftestFailed(usize),

    #[error("failed to write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 computational failure, 2 bad input, 3 contradictory ledger.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Ledger(LedgerError::Contradiction { .. }) => 3,
            CliError::Ledger(LedgerError::Catalog(_)) => 2,
            CliError::Ledger(LedgerError::UnknownFact) => 2,
            CliError::Catalog(_) | CliError::Diagram(_) | CliError::Input(_) | CliError::Knot(_) => 2,
            CliError::Expansion(ExpansionError::InvalidCoefficient | ExpansionError::NonPositiveMultiple(_)) => 2,
            CliError::Expansion(ExpansionError::UnsupportedCoefficient(_)) => 1,
            CliError::Homology(HomologyError::InvalidArgument(_)) => 2,
            CliError::Homology(_) => 1,
            CliError::OpenBook(
                OpenBookError::UnknownCurve(_)
                | OpenBookError::UnknownBoundary(_)
                | OpenBookError::InvalidSurface(_)
                | OpenBookError::MalformedLetter(_)
                | OpenBookError::InvalidConfiguration(_),
            ) => 2,
            CliError::OpenBook(_) => 1,
            CliError::Computation(_) | CliError::SelftestFailed(_) | CliError::Io(_) => 1,
        }
    }
}
