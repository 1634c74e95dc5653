//! Word lists, one word per line, each line ending in LF. Writing is
//! `LemmaFamily::to_lines` in the core crate.

use f2lab_core::free_group::{Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("word list line {line}: {source}")]
pub struct WordListError {
    pub line: usize,
    pub source: WordError,
}

pub fn parse_lines(text: &str) -> Result<Vec<Word>, WordListError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| l.parse().map_err(|source| WordListError { line: i + 1, source }))
        .collect()
}
