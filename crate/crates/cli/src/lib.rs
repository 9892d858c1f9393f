//! Driver behind the `klcells` binary: run configuration, the
//! compute/check pipeline, and the content-addressed archive of results.

pub mod archive;
pub mod config;
pub mod pipeline;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Coxeter(#[from] klcells::coxeter::CoxeterError),
    #[error(transparent)]
    Kl(#[from] klcells::kl::KlError),
    #[error(transparent)]
    Reps(#[from] klcells::reps::RepsError),
    #[error(transparent)]
    Weights(#[from] klcells::weights::WeightsError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("archive: {0}")]
    Archive(String),
}

impl CliError {
    pub fn io(path: &std::path::Path, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
