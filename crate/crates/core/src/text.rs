//! Line-oriented text formats shared by logic, GUM, automaton, state and
//! translation-map files.
//!
//! All formats are UTF-8, one directive per line, whitespace-separated
//! tokens, and `#` starts a comment that runs to the end of the line.
//! Parsing is tolerant of extra whitespace and blank lines; serialization
//! always uses single spaces and declared order, so a parsed file
//! serializes back bit-exactly when it was written canonically.

use std::fmt;

use thiserror::Error;

/// Failure to read a model or logic file.
///
/// `Syntax` means the text is not in the expected format; `Invalid` means it
/// parsed but describes an ill-formed object (unknown atom, non-total map,
/// and so on).
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

impl FormatError {
    pub(crate) fn syntax(line: usize, message: impl fmt::Display) -> Self {
        FormatError::Syntax {
            line,
            message: message.to_string(),
        }
    }

    pub(crate) fn invalid(err: impl fmt::Display) -> Self {
        FormatError::Invalid(err.to_string())
    }

    pub fn is_syntax(&self) -> bool {
        matches!(self, FormatError::Syntax { .. })
    }
}

/// Non-empty lines with comments stripped, as `(1-based line number, tokens)`.
pub(crate) fn directives(src: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let body = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            None
        } else {
            Some((i + 1, tokens))
        }
    })
}

/// Kind of file, sniffed from its first directive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Logic,
    Gum,
    Automaton,
}

pub fn sniff(src: &str) -> Option<FileKind> {
    let (_, tokens) = directives(src).next()?;
    match tokens[0] {
        "atoms" | "block" => Some(FileKind::Logic),
        "colors" | "symbols" | "ball" => Some(FileKind::Gum),
        "states" | "inputs" | "outputs" | "delta" | "lambda" => Some(FileKind::Automaton),
        _ => None,
    }
}
