use systolica::complex::LoopError;
use systolica::metric::MetricError;
use systolica::{Error, GenerateError, GeometryError, IoError, SurgeryError};

pub const PARSE: u8 = 1;
pub const VALIDATION: u8 = 2;
pub const INVARIANT: u8 = 3;

/// A failure with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: PARSE,
            message: message.into(),
        }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        CliError {
            code: INVARIANT,
            message: message.into(),
        }
    }
}

fn surgery_code(e: &SurgeryError) -> u8 {
    match e {
        SurgeryError::Invariant(_) | SurgeryError::MissingDisk { .. } => INVARIANT,
        _ => VALIDATION,
    }
}

fn metric_code(e: &MetricError) -> u8 {
    match e {
        MetricError::Parse { .. } => PARSE,
        MetricError::Invariant(_)
        | MetricError::SignatureMismatch
        | MetricError::SupportMismatch => INVARIANT,
        _ => VALIDATION,
    }
}

fn generate_code(e: &GenerateError) -> u8 {
    match e {
        GenerateError::InvalidParams(_) | GenerateError::Syntax { .. } => PARSE,
        GenerateError::Surgery(s) => surgery_code(s),
        _ => VALIDATION,
    }
}

pub fn code_of(e: &Error) -> u8 {
    match e {
        Error::Io(IoError::Parse { .. }) | Error::Io(IoError::Unsupported(_)) => PARSE,
        Error::Geometry(GeometryError::Parse { .. }) => PARSE,
        Error::Surgery(s) => surgery_code(s),
        Error::Metric(m) => metric_code(m),
        Error::Generate(g) => generate_code(g),
        Error::Io(IoError::Validation(_))
        | Error::Surface(_)
        | Error::Tet(_)
        | Error::Systole(_)
        | Error::Geometry(_) => VALIDATION,
    }
}

impl<E: Into<Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        let e = e.into();
        CliError {
            code: code_of(&e),
            message: e.to_string(),
        }
    }
}

pub fn loop_error(e: LoopError) -> CliError {
    CliError {
        code: VALIDATION,
        message: e.to_string(),
    }
}

pub fn io(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::usage(format!("{}: {e}", path.display()))
}
