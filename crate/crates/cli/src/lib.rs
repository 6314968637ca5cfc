//! Command implementations behind the `hgm-hodge` binary.
//!
//! Every command returns its report as a value; printing and exit codes are
//! decided in `main.rs`.

pub mod report;
pub mod scan;

use std::fmt;

use hodge_core::{GammaVector, HypergeometricDatum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;
pub const EXIT_DISAGREE: u8 = 5;

/// Environment variable naming the default directory for scan output.
pub const OUT_DIR_ENV: &str = "HGM_HODGE_OUT_DIR";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn io(context: &str, err: std::io::Error) -> Self {
        CliError::new(EXIT_VALIDATION, format!("{context}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<hodge_core::Error> for CliError {
    fn from(err: hodge_core::Error) -> Self {
        let code = if err.is_parse() {
            EXIT_PARSE
        } else {
            EXIT_VALIDATION
        };
        CliError::new(code, err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Text given on the command line: a gamma vector `3,-1,-1,-1` or a datum
/// `1/3,2/3,1;1,1,1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Gamma(GammaVector),
    Datum(HypergeometricDatum),
}

pub fn parse_input(text: &str) -> CliResult<Input> {
    if text.contains(';') {
        Ok(Input::Datum(text.parse()?))
    } else {
        Ok(Input::Gamma(text.parse()?))
    }
}

/// The gamma vector behind either input form.
pub fn parse_gamma(text: &str) -> CliResult<GammaVector> {
    match parse_input(text)? {
        Input::Gamma(g) => Ok(g),
        Input::Datum(hd) => Ok(hd.to_gamma()?),
    }
}
