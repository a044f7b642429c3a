use std::fmt;

use thiserror::Error;

/// One step from a node to one of its children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// Child of a unary (binder) node.
    Body,
    Left,
    Right,
}

/// Root-to-node path, rendered as `/body/left/...` (`/` for the root).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<Step>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub(crate) fn child(&self, step: Step) -> Self {
        let mut steps = self.0.clone();
        steps.push(step);
        Path(steps)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for step in &self.0 {
            let s = match step {
                Step::Body => "/body",
                Step::Left => "/left",
                Step::Right => "/right",
            };
            f.write_str(s)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotInFamily: {value} is not a member of family {family}")]
    NotInFamily { family: String, value: String },

    #[error("ConverterBroken: family {family} maps {structured} to {base}, which fails the filter")]
    ConverterBroken {
        family: String,
        structured: String,
        base: String,
    },

    #[error("NotClosable: binder-free path from the root to the leaf at {path}")]
    NotClosable { path: Path },

    #[error("NotUcs: {binders} unary node(s) on the rooted path ending at {path}")]
    NotUcs { path: Path, binders: usize },

    #[error("NotOpen: leaf var({index}) at {path} has only {available} binder(s) available")]
    NotOpen {
        path: Path,
        index: u64,
        available: u64,
    },

    #[error("openness mismatch: expected a {expected}-open subterm, found {found}-open")]
    OpennessMismatch { expected: u64, found: u64 },

    #[error("InvalidSize: {size} (minimum is {min})")]
    InvalidSize { size: usize, min: usize },

    #[error("EnumeratorMissing: family {family} has no enumerators")]
    EnumeratorMissing { family: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
