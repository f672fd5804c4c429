use spbw_core::Error as CoreError;
use thiserror::Error;

use crate::ast::Span;

/// Exit-code class of a failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Math,
    Input,
    Resource,
}

impl Class {
    pub fn exit_code(self) -> i32 {
        match self {
            Class::Math => 1,
            Class::Input => 2,
            Class::Resource => 3,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
#[error("{message}")]
pub struct CliError {
    pub class: Class,
    pub message: String,
    pub span: Option<Span>,
}

impl CliError {
    pub fn input(message: impl Into<String>, span: Span) -> Self {
        CliError {
            class: Class::Input,
            message: message.into(),
            span: Some(span),
        }
    }

    pub fn math(message: impl Into<String>) -> Self {
        CliError {
            class: Class::Math,
            message: message.into(),
            span: None,
        }
    }

    pub fn at(mut self, span: Span) -> Self {
        if self.span.is_none() {
            self.span = Some(span);
        }
        self
    }

    /// `line:col: message` against `source`, or just the message.
    pub fn render(&self, source: &str) -> String {
        match self.span {
            Some(span) => {
                let (line, col) = line_col(source, span.start);
                format!("{line}:{col}: {}", self.message)
            }
            None => self.message.clone(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let class = match e {
            CoreError::ResourceGuard(_) => Class::Resource,
            CoreError::NotIdempotent(_)
            | CoreError::StabilityNotDecided(_)
            | CoreError::Verification(_) => Class::Math,
            _ => Class::Input,
        };
        CliError {
            class,
            message: e.to_string(),
            span: None,
        }
    }
}

pub fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, col)
}

pub type CliResult<T> = std::result::Result<T, CliError>;
