//! Uniquely closable skeletons: exactly one binder on every rooted path.
//!
//! [`Ucs`] sits above the binder, [`ClosedAbove`] below it, so a second
//! binder cannot be expressed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Path, Result, Step};
use crate::family::Family;
use crate::motzkin::{self, Motzkin};
use crate::syntax::{parse_all, Cursor};

/// Binder-free tree below the unique binder.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosedAbove {
    CV,
    CB(Box<ClosedAbove>, Box<ClosedAbove>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ucs {
    UL(ClosedAbove),
    UA(Box<Ucs>, Box<Ucs>),
}

pub fn cb(left: ClosedAbove, right: ClosedAbove) -> ClosedAbove {
    ClosedAbove::CB(Box::new(left), Box::new(right))
}

pub fn ul(body: ClosedAbove) -> Ucs {
    Ucs::UL(body)
}

pub fn ua(left: Ucs, right: Ucs) -> Ucs {
    Ucs::UA(Box::new(left), Box::new(right))
}

impl ClosedAbove {
    pub fn size111(&self) -> usize {
        match self {
            ClosedAbove::CV => 1,
            ClosedAbove::CB(p, q) => 1 + p.size111() + q.size111(),
        }
    }

    pub fn size012(&self) -> usize {
        match self {
            ClosedAbove::CV => 0,
            ClosedAbove::CB(p, q) => 2 + p.size012() + q.size012(),
        }
    }

    fn write_to(&self, out: &mut String) {
        match self {
            ClosedAbove::CV => out.push('V'),
            ClosedAbove::CB(p, q) => {
                out.push_str("B(");
                p.write_to(out);
                out.push(',');
                q.write_to(out);
                out.push(')');
            }
        }
    }

    fn parse_from(c: &mut Cursor<'_>) -> Result<ClosedAbove> {
        if c.eat_call("B") {
            let p = ClosedAbove::parse_from(c)?;
            c.expect(",")?;
            let q = ClosedAbove::parse_from(c)?;
            c.expect(")")?;
            Ok(cb(p, q))
        } else if c.eat_atom("V") {
            Ok(ClosedAbove::CV)
        } else {
            c.error("expected `V` or `B(`")
        }
    }
}

impl Ucs {
    pub fn size111(&self) -> usize {
        match self {
            Ucs::UL(c) => 1 + c.size111(),
            Ucs::UA(p, q) => 1 + p.size111() + q.size111(),
        }
    }

    pub fn size012(&self) -> usize {
        match self {
            Ucs::UL(c) => 1 + c.size012(),
            Ucs::UA(p, q) => 2 + p.size012() + q.size012(),
        }
    }

    fn write_to(&self, out: &mut String) {
        match self {
            Ucs::UL(c) => {
                out.push_str("L(");
                c.write_to(out);
                out.push(')');
            }
            Ucs::UA(p, q) => {
                out.push_str("A(");
                p.write_to(out);
                out.push(',');
                q.write_to(out);
                out.push(')');
            }
        }
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<Ucs> {
        if c.eat_call("L") {
            let body = ClosedAbove::parse_from(c)?;
            c.expect(")")?;
            Ok(ul(body))
        } else if c.eat_call("A") {
            let p = Ucs::parse_from(c)?;
            c.expect(",")?;
            let q = Ucs::parse_from(c)?;
            c.expect(")")?;
            Ok(ua(p, q))
        } else {
            c.error("expected `L(` or `A(`")
        }
    }
}

impl fmt::Display for ClosedAbove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for Ucs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

impl FromStr for ClosedAbove {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_all(s, ClosedAbove::parse_from)
    }
}

impl FromStr for Ucs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_all(s, Ucs::parse_from)
    }
}

pub fn ca2motzkin(c: &ClosedAbove) -> Motzkin {
    match c {
        ClosedAbove::CV => Motzkin::V,
        ClosedAbove::CB(p, q) => motzkin::a(ca2motzkin(p), ca2motzkin(q)),
    }
}

pub fn ucs2motzkin(u: &Ucs) -> Motzkin {
    match u {
        Ucs::UL(c) => motzkin::l(ca2motzkin(c)),
        Ucs::UA(p, q) => motzkin::a(ucs2motzkin(p), ucs2motzkin(q)),
    }
}

/// Fails on a leaf with no binder above, or on a second binder.
pub fn motzkin2ucs(t: &Motzkin) -> Result<Ucs> {
    fn below(t: &Motzkin, path: &Path) -> Result<ClosedAbove> {
        match t {
            Motzkin::V => Ok(ClosedAbove::CV),
            Motzkin::L(_) => Err(Error::NotUcs {
                path: path.clone(),
                binders: 2,
            }),
            Motzkin::A(p, q) => Ok(cb(
                below(p, &path.child(Step::Left))?,
                below(q, &path.child(Step::Right))?,
            )),
        }
    }
    fn above(t: &Motzkin, path: &Path) -> Result<Ucs> {
        match t {
            Motzkin::V => Err(Error::NotUcs {
                path: path.clone(),
                binders: 0,
            }),
            Motzkin::L(m) => Ok(ul(below(m, &path.child(Step::Body))?)),
            Motzkin::A(p, q) => Ok(ua(
                above(p, &path.child(Step::Left))?,
                above(q, &path.child(Step::Right))?,
            )),
        }
    }
    above(t, &Path::root())
}

/// `table[k]` holds every [`ClosedAbove`] of size `k` (plain binary trees, odd sizes only).
pub fn enumerate_ca_table(max: usize) -> Vec<Vec<ClosedAbove>> {
    let mut table: Vec<Vec<ClosedAbove>> = vec![Vec::new(); max + 1];
    for n in 1..=max {
        let mut row = Vec::new();
        if n == 1 {
            row.push(ClosedAbove::CV);
        }
        for left_size in 1..n.saturating_sub(1) {
            let right_size = n - 1 - left_size;
            for p in &table[left_size] {
                for q in &table[right_size] {
                    row.push(cb(p.clone(), q.clone()));
                }
            }
        }
        table[n] = row;
    }
    table
}

/// `table[k]` holds every [`Ucs`] of size `k`, `UL` before `UA`.
pub fn enumerate_ucs_table(max: usize) -> Vec<Vec<Ucs>> {
    let ca = enumerate_ca_table(max.saturating_sub(1));
    let mut table: Vec<Vec<Ucs>> = vec![Vec::new(); max + 1];
    for n in 2..=max {
        let mut row: Vec<Ucs> = ca[n - 1].iter().cloned().map(ul).collect();
        for left_size in 2..n - 1 {
            let right_size = n - 1 - left_size;
            for p in &table[left_size] {
                for q in &table[right_size] {
                    row.push(ua(p.clone(), q.clone()));
                }
            }
        }
        table[n] = row;
    }
    table
}

pub fn enumerate_ucs(n: usize) -> Result<Vec<Ucs>> {
    if n < 2 {
        return Err(Error::InvalidSize { size: n, min: 2 });
    }
    Ok(enumerate_ucs_table(n).pop().unwrap_or_default())
}

pub fn count_ucs(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::InvalidSize { size: n, min: 2 });
    }
    let mut ca = vec![BigUint::zero(); n + 1];
    for k in 1..=n {
        if k == 1 {
            ca[k] = BigUint::one();
            continue;
        }
        let mut total = BigUint::zero();
        for i in 1..k - 1 {
            total += &ca[i] * &ca[k - 1 - i];
        }
        ca[k] = total;
    }
    let mut u = vec![BigUint::zero(); n + 1];
    for k in 2..=n {
        let mut total = ca[k - 1].clone();
        for i in 2..k - 1 {
            total += &u[i] * &u[k - 1 - i];
        }
        u[k] = total;
    }
    Ok(u.pop().unwrap_or_default())
}

/// Motzkin trees filtered by [`motzkin::is_ucs`], paired with [`Ucs`].
#[derive(Debug, Clone, Copy, Default)]
pub struct UcsFamily;

impl Family for UcsFamily {
    type Base = Motzkin;
    type Structured = Ucs;

    fn name(&self) -> String {
        "ucs".into()
    }

    fn filter(&self, b: &Motzkin) -> bool {
        motzkin::is_ucs(b)
    }

    fn to_structured(&self, b: &Motzkin) -> Result<Ucs> {
        motzkin2ucs(b)
    }

    fn to_base(&self, s: &Ucs) -> Motzkin {
        ucs2motzkin(s)
    }

    fn default_base(&self) -> Motzkin {
        motzkin::l(Motzkin::V)
    }

    fn size_base(&self, b: &Motzkin) -> usize {
        b.size111()
    }

    fn size_structured(&self, s: &Ucs) -> usize {
        s.size111()
    }

    fn enumerate_base(&self, n: usize) -> Option<Vec<Motzkin>> {
        Some(motzkin::enumerate_motzkin(n).unwrap_or_default())
    }

    fn enumerate_structured(&self, n: usize) -> Option<Vec<Ucs>> {
        Some(enumerate_ucs(n).unwrap_or_default())
    }
}
