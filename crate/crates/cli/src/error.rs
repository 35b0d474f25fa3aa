use dualdelay_core::Error as CoreError;

/// Failure of a CLI run, mapped onto the process exit status.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags, config file or parameter values: exit 2.
    Config(String),
    /// Parameters are valid but outside a formula's domain: exit 3.
    Domain(String),
    /// Output could not be written: exit 2.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Domain(_) => "domain",
            CliError::Io(_) => "io",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Domain(m) | CliError::Io(m) => m,
        }
    }

    /// One line for stderr: `error: kind=<k> code=<n> message="<json string>"`.
    pub fn diagnostic(&self) -> String {
        format!(
            "error: kind={} code={} message={}",
            self.kind(),
            self.exit_code(),
            serde_json::to_string(self.message()).expect("string serializes")
        )
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParam { .. } => CliError::Config(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

pub fn missing(key: &str) -> CliError {
    CliError::Config(format!("missing model key `{key}`"))
}
