use relaygame::GameError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("validation failed: {0}")]
    Validation(String),
}

impl CliError {
    /// Stable machine-readable tag printed with every error.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "invalid-config",
            CliError::Game(GameError::InvalidConfig(_)) | CliError::Game(GameError::InvalidResolution { .. }) => {
                "invalid-config"
            }
            CliError::Game(GameError::WrongCase { .. }) | CliError::Game(GameError::WrongRegime { .. }) => "wrong-case",
            CliError::Game(GameError::LpFailure(_)) => "lp-failure",
            CliError::Game(_) => "solver-error",
            CliError::Io(_) | CliError::Csv(_) => "io-error",
            CliError::Validation(_) => "validation-failed",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "invalid-config" => 2,
            "wrong-case" => 3,
            "lp-failure" => 4,
            "validation-failed" => 5,
            "io-error" => 6,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
