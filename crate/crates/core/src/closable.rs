//! Closable skeletons as their own algebraic type.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Path, Result, Step};
use crate::family::Family;
use crate::motzkin::{self, Motzkin};
use crate::syntax::{parse_all, Cursor};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Closable {
    /// A binder over an arbitrary skeleton.
    CLam(Motzkin),
    CApp(Box<Closable>, Box<Closable>),
}

pub fn clam(body: Motzkin) -> Closable {
    Closable::CLam(body)
}

pub fn capp(left: Closable, right: Closable) -> Closable {
    Closable::CApp(Box::new(left), Box::new(right))
}

impl Closable {
    pub fn size111(&self) -> usize {
        match self {
            Closable::CLam(m) => 1 + m.size111(),
            Closable::CApp(p, q) => 1 + p.size111() + q.size111(),
        }
    }

    pub fn size012(&self) -> usize {
        match self {
            Closable::CLam(m) => 1 + m.size012(),
            Closable::CApp(p, q) => 2 + p.size012() + q.size012(),
        }
    }

    fn write_to(&self, out: &mut String) {
        match self {
            Closable::CLam(m) => {
                out.push_str("cl(");
                out.push_str(&m.to_string());
                out.push(')');
            }
            Closable::CApp(p, q) => {
                out.push_str("ca(");
                p.write_to(out);
                out.push(',');
                q.write_to(out);
                out.push(')');
            }
        }
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<Closable> {
        if c.eat_call("cl") {
            let m = Motzkin::parse_from(c)?;
            c.expect(")")?;
            Ok(clam(m))
        } else if c.eat_call("ca") {
            let p = Closable::parse_from(c)?;
            c.expect(",")?;
            let q = Closable::parse_from(c)?;
            c.expect(")")?;
            Ok(capp(p, q))
        } else {
            c.error("expected `cl(` or `ca(`")
        }
    }
}

impl fmt::Display for Closable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

impl FromStr for Closable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_all(s, Closable::parse_from)
    }
}

pub fn closable2motzkin(c: &Closable) -> Motzkin {
    match c {
        Closable::CLam(m) => motzkin::l(m.clone()),
        Closable::CApp(p, q) => motzkin::a(closable2motzkin(p), closable2motzkin(q)),
    }
}

/// Stops at the first unary node on each path; a bare leaf is an error.
pub fn motzkin2closable(t: &Motzkin) -> Result<Closable> {
    fn go(t: &Motzkin, path: &Path) -> Result<Closable> {
        match t {
            Motzkin::V => Err(Error::NotClosable { path: path.clone() }),
            Motzkin::L(m) => Ok(clam((**m).clone())),
            Motzkin::A(p, q) => Ok(capp(
                go(p, &path.child(Step::Left))?,
                go(q, &path.child(Step::Right))?,
            )),
        }
    }
    go(t, &Path::root())
}

/// All closable values of size `n` in canonical order (`CLam` before `CApp`).
pub fn enumerate_closable(n: usize) -> Result<Vec<Closable>> {
    if n < 2 {
        return Err(Error::InvalidSize { size: n, min: 2 });
    }
    Ok(enumerate_closable_table(n).pop().unwrap_or_default())
}

/// `table[k]` holds every closable value of size `k` (empty for `k < 2`).
pub fn enumerate_closable_table(max: usize) -> Vec<Vec<Closable>> {
    let skeletons = motzkin::enumerate_motzkin_table(max.saturating_sub(1));
    let mut table: Vec<Vec<Closable>> = vec![Vec::new(); max + 1];
    for n in 2..=max {
        let mut row: Vec<Closable> = skeletons[n - 1].iter().cloned().map(clam).collect();
        for left_size in 2..n - 1 {
            let right_size = n - 1 - left_size;
            for p in &table[left_size] {
                for q in &table[right_size] {
                    row.push(capp(p.clone(), q.clone()));
                }
            }
        }
        table[n] = row;
    }
    table
}

pub fn count_closable(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::InvalidSize { size: n, min: 2 });
    }
    let m = motzkin::motzkin_counts(n);
    let mut c = vec![BigUint::zero(); n + 1];
    for k in 2..=n {
        let mut total = m[k - 1].clone();
        for i in 2..k - 1 {
            total += &c[i] * &c[k - 1 - i];
        }
        c[k] = total;
    }
    Ok(c.pop().unwrap_or_default())
}

/// Which closability predicate the family filters with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosableFilter {
    /// Structural: a unary node on every path.
    Structural,
    /// Counter-based (`is_closable2` from 0).
    Counter,
}

/// Motzkin trees filtered by closability, paired with [`Closable`].
#[derive(Debug, Clone, Copy)]
pub struct ClosableFamily {
    pub filter: ClosableFilter,
}

impl ClosableFamily {
    pub const STRUCTURAL: ClosableFamily = ClosableFamily {
        filter: ClosableFilter::Structural,
    };
    pub const COUNTER: ClosableFamily = ClosableFamily {
        filter: ClosableFilter::Counter,
    };
}

impl Default for ClosableFamily {
    fn default() -> Self {
        Self::STRUCTURAL
    }
}

impl Family for ClosableFamily {
    type Base = Motzkin;
    type Structured = Closable;

    fn name(&self) -> String {
        match self.filter {
            ClosableFilter::Structural => "closable".into(),
            ClosableFilter::Counter => "closable-counter".into(),
        }
    }

    fn filter(&self, b: &Motzkin) -> bool {
        match self.filter {
            ClosableFilter::Structural => motzkin::is_closable(b),
            ClosableFilter::Counter => motzkin::is_closable_counted(b),
        }
    }

    fn to_structured(&self, b: &Motzkin) -> Result<Closable> {
        motzkin2closable(b)
    }

    fn to_base(&self, s: &Closable) -> Motzkin {
        closable2motzkin(s)
    }

    fn default_base(&self) -> Motzkin {
        motzkin::l(Motzkin::V)
    }

    fn size_base(&self, b: &Motzkin) -> usize {
        b.size111()
    }

    fn size_structured(&self, s: &Closable) -> usize {
        s.size111()
    }

    fn enumerate_base(&self, n: usize) -> Option<Vec<Motzkin>> {
        Some(motzkin::enumerate_motzkin(n).unwrap_or_default())
    }

    fn enumerate_structured(&self, n: usize) -> Option<Vec<Closable>> {
        Some(enumerate_closable(n).unwrap_or_default())
    }
}
