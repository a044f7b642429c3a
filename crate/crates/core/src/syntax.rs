//! Shared machinery for the canonical text grammars.
//!
//! Input is whitespace-insensitive; printing emits no whitespace at all.

use crate::error::{Error, Result};

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub(crate) fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    /// Consumes `token` if it comes next, ignoring leading whitespace.
    pub(crate) fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(format!("expected `{token}`"))
        }
    }

    /// Consumes a keyword immediately followed by `(`.
    ///
    /// Keywords may be prefixes of one another (`ca` vs `cl`, `a` vs `app`),
    /// so the keyword only matches when `(` comes next.
    pub(crate) fn eat_call(&mut self, keyword: &str) -> bool {
        self.skip_ws();
        let save = self.pos;
        if self.eat(keyword) && self.eat("(") {
            return true;
        }
        self.pos = save;
        false
    }

    /// Consumes a bare keyword that must not be followed by an identifier char.
    pub(crate) fn eat_atom(&mut self, keyword: &str) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if let Some(after) = rest.strip_prefix(keyword) {
            let boundary = after
                .chars()
                .next()
                .is_none_or(|c| !(c.is_ascii_alphanumeric() || c == '_'));
            if boundary {
                self.pos += keyword.len();
                return true;
            }
        }
        false
    }

    pub(crate) fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.error("expected digits");
        }
        match rest[..len].parse::<u64>() {
            Ok(n) => {
                self.pos += len;
                Ok(n)
            }
            Err(_) => self.error("number out of range"),
        }
    }

    pub(crate) fn finish(mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }
}

/// Runs `parse` over the whole of `src`, rejecting trailing input.
pub(crate) fn parse_all<T>(src: &str, parse: impl FnOnce(&mut Cursor<'_>) -> Result<T>) -> Result<T> {
    let mut cursor = Cursor::new(src);
    let value = parse(&mut cursor)?;
    cursor.finish()?;
    Ok(value)
}
