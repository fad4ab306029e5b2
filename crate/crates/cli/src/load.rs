//! Reading matrices and vectors, with errors naming the file.

use std::fs;
use std::str::FromStr;

use tropcram::matrix::{declared_semiring, parse_matrix, parse_vector};
use tropcram::{Error, Matrix};

use crate::CliError;

pub struct Source {
    pub path: String,
    pub text: String,
}

impl Source {
    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("{path}: cannot read: {e}")))?;
        Ok(Source {
            path: path.to_string(),
            text,
        })
    }

    pub fn semiring(&self) -> Result<String, CliError> {
        declared_semiring(&self.text).map_err(|e| self.wrap(e))
    }

    /// The text with its header replaced by `semiring name`.
    fn retagged(&self, name: &str) -> Result<String, CliError> {
        let declared = self.semiring()?;
        if declared == name {
            return Ok(self.text.clone());
        }
        let at = self
            .text
            .find(&declared)
            .expect("the declared name appears in the text");
        Ok(format!(
            "{}{}{}",
            &self.text[..at],
            name,
            &self.text[at + declared.len()..]
        ))
    }

    pub fn matrix<T: FromStr<Err = String> + Clone>(
        &self,
        name: &str,
    ) -> Result<Matrix<T>, CliError> {
        let text = self.retagged(name)?;
        parse_matrix(&text)
            .map(|(_, m)| m)
            .map_err(|e| self.wrap(e))
    }

    pub fn vector<T: FromStr<Err = String>>(&self, name: &str) -> Result<Vec<T>, CliError> {
        let text = self.retagged(name)?;
        parse_vector(&text)
            .map(|(_, v)| v)
            .map_err(|e| self.wrap(e))
    }

    pub fn wrap(&self, e: Error) -> CliError {
        match e {
            Error::Parse {
                line,
                column,
                message,
            } => CliError::usage(format!("{}:{line}:{column}: {message}", self.path)),
            other => CliError::usage(format!("{}: {other}", self.path)),
        }
    }
}

/// The semiring of a job: the override when given, else the first file's
/// header, which the other files must repeat.
pub fn job_semiring(sources: &[&Source], over: Option<&str>) -> Result<String, CliError> {
    if let Some(name) = over {
        return Ok(name.to_string());
    }
    let first = sources
        .first()
        .expect("every job reads a file")
        .semiring()?;
    for s in &sources[1..] {
        let name = s.semiring()?;
        if name != first {
            return Err(CliError::usage(format!(
                "{} declares semiring {name} but {} declares {first}",
                s.path, sources[0].path
            )));
        }
    }
    Ok(first)
}

pub fn check_rhs<T: Clone, U>(
    a: &Matrix<T>,
    b: &[U],
    a_path: &str,
    b_path: &str,
) -> Result<(), CliError> {
    if a.rows() != b.len() {
        return Err(CliError::usage(format!(
            "dimension mismatch: {a_path} has {} rows but {b_path} has {} entries",
            a.rows(),
            b.len()
        )));
    }
    Ok(())
}
