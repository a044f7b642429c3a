//! Unary-binary (Motzkin) trees: the label-free skeletons of λ-terms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::{parse_all, Cursor};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Motzkin {
    V,
    L(Box<Motzkin>),
    A(Box<Motzkin>, Box<Motzkin>),
}

pub fn v() -> Motzkin {
    Motzkin::V
}

pub fn l(child: Motzkin) -> Motzkin {
    Motzkin::L(Box::new(child))
}

pub fn a(left: Motzkin, right: Motzkin) -> Motzkin {
    Motzkin::A(Box::new(left), Box::new(right))
}

impl Motzkin {
    /// Every node weighs 1.
    pub fn size111(&self) -> usize {
        match self {
            Motzkin::V => 1,
            Motzkin::L(m) => 1 + m.size111(),
            Motzkin::A(p, q) => 1 + p.size111() + q.size111(),
        }
    }

    /// Leaves weigh 0, unary nodes 1, binary nodes 2.
    pub fn size012(&self) -> usize {
        match self {
            Motzkin::V => 0,
            Motzkin::L(m) => 1 + m.size012(),
            Motzkin::A(p, q) => 2 + p.size012() + q.size012(),
        }
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            Motzkin::V => 1,
            Motzkin::L(m) => 1 + m.depth(),
            Motzkin::A(p, q) => 1 + p.depth().max(q.depth()),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            Motzkin::V => 1,
            Motzkin::L(m) => m.leaves(),
            Motzkin::A(p, q) => p.leaves() + q.leaves(),
        }
    }

    /// For every leaf, left to right, the number of unary nodes above it.
    pub fn binders_above_leaves(&self) -> Vec<usize> {
        fn go(t: &Motzkin, k: usize, out: &mut Vec<usize>) {
            match t {
                Motzkin::V => out.push(k),
                Motzkin::L(m) => go(m, k + 1, out),
                Motzkin::A(p, q) => {
                    go(p, k, out);
                    go(q, k, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out
    }

    fn write_to(&self, out: &mut String) {
        match self {
            Motzkin::V => out.push('v'),
            Motzkin::L(m) => {
                out.push_str("l(");
                m.write_to(out);
                out.push(')');
            }
            Motzkin::A(p, q) => {
                out.push_str("a(");
                p.write_to(out);
                out.push(',');
                q.write_to(out);
                out.push(')');
            }
        }
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<Motzkin> {
        if c.eat_call("l") {
            let m = Motzkin::parse_from(c)?;
            c.expect(")")?;
            Ok(l(m))
        } else if c.eat_call("a") {
            let p = Motzkin::parse_from(c)?;
            c.expect(",")?;
            let q = Motzkin::parse_from(c)?;
            c.expect(")")?;
            Ok(a(p, q))
        } else if c.eat_atom("v") {
            Ok(Motzkin::V)
        } else {
            c.error("expected `v`, `l(` or `a(`")
        }
    }
}

impl fmt::Display for Motzkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

impl FromStr for Motzkin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_all(s, Motzkin::parse_from)
    }
}

/// At least one unary node on every root-to-leaf path.
pub fn is_closable(t: &Motzkin) -> bool {
    match t {
        Motzkin::V => false,
        Motzkin::L(_) => true,
        Motzkin::A(p, q) => is_closable(p) && is_closable(q),
    }
}

/// Counter-based closability: `n` counts the unary nodes seen so far.
pub fn is_closable2(t: &Motzkin, n: u64) -> bool {
    match t {
        Motzkin::V => n > 0,
        Motzkin::L(m) => is_closable2(m, n + 1),
        Motzkin::A(p, q) => is_closable2(p, n) && is_closable2(q, n),
    }
}

pub fn is_closable_counted(t: &Motzkin) -> bool {
    is_closable2(t, 0)
}

/// `seen` records whether a unary node was already met above.
pub fn is_ucs_aux(t: &Motzkin, seen: bool) -> bool {
    match t {
        Motzkin::V => seen,
        Motzkin::L(m) => !seen && is_ucs_aux(m, true),
        Motzkin::A(p, q) => is_ucs_aux(p, seen) && is_ucs_aux(q, seen),
    }
}

/// Exactly one unary node on every root-to-leaf path.
pub fn is_ucs(t: &Motzkin) -> bool {
    is_ucs_aux(t, false)
}

/// Counter variant of [`is_ucs_aux`]: every leaf must see exactly one binder.
pub fn ucs1_aux(t: &Motzkin, n: u64) -> bool {
    match t {
        Motzkin::V => n == 1,
        Motzkin::L(m) => ucs1_aux(m, n + 1),
        Motzkin::A(p, q) => ucs1_aux(p, n) && ucs1_aux(q, n),
    }
}

pub fn ucs1(t: &Motzkin) -> bool {
    ucs1_aux(t, 0)
}

/// All trees of size `n`, in canonical order.
pub fn enumerate_motzkin(n: usize) -> Result<Vec<Motzkin>> {
    if n == 0 {
        return Err(Error::InvalidSize { size: n, min: 1 });
    }
    Ok(enumerate_motzkin_table(n).pop().unwrap_or_default())
}

/// `table[k]` holds every tree of size `k` in canonical order (`table[0]` is empty).
///
/// Order: `v` first, then unary trees, then binary trees by ascending left size,
/// left subtree varying slowest.
pub fn enumerate_motzkin_table(max: usize) -> Vec<Vec<Motzkin>> {
    let mut table: Vec<Vec<Motzkin>> = vec![Vec::new(); max + 1];
    for n in 1..=max {
        let mut row = Vec::new();
        if n == 1 {
            row.push(Motzkin::V);
        } else {
            row.extend(table[n - 1].iter().cloned().map(l));
            for left_size in 1..n - 1 {
                let right_size = n - 1 - left_size;
                for p in &table[left_size] {
                    for q in &table[right_size] {
                        row.push(a(p.clone(), q.clone()));
                    }
                }
            }
        }
        table[n] = row;
    }
    table
}

/// Number of trees of size `n`, computed without materializing them.
pub fn count_motzkin(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidSize { size: n, min: 1 });
    }
    Ok(motzkin_counts(n).pop().unwrap_or_default())
}

pub(crate) fn motzkin_counts(max: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::zero(); max + 1];
    for n in 1..=max {
        c[n] = if n == 1 {
            BigUint::one()
        } else {
            let mut total = c[n - 1].clone();
            for i in 1..n - 1 {
                total += &c[i] * &c[n - 1 - i];
            }
            total
        };
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Motzkin {
        s.parse().unwrap()
    }

    #[test]
    fn closability_examples() {
        assert!(!is_closable(&v()));
        assert!(is_closable(&t("l(a(v,l(v)))")));
        assert!(!is_closable(&t("a(l(v),v)")));
        assert!(!is_closable2(&v(), 0));
        assert!(is_closable2(&v(), 1));
        assert!(!is_closable_counted(&t("a(l(v),v)")));
    }

    #[test]
    fn ucs_examples() {
        assert!(is_ucs(&t("l(a(v,v))")));
        assert!(!is_ucs(&t("l(a(l(v),v))")));
        assert!(!is_ucs(&v()));
        assert!(ucs1_aux(&t("l(a(v,v))"), 0));
        assert!(ucs1_aux(&v(), 1));
        assert!(!ucs1_aux(&v(), 2));
        assert!(!ucs1_aux(&t("l(l(v))"), 0));
    }

    #[test]
    fn sizes() {
        assert_eq!((v().size111(), v().size012()), (1, 0));
        let x = t("l(a(v,l(v)))");
        assert_eq!((x.size111(), x.size012()), (5, 4));
        assert_eq!(x.binders_above_leaves(), vec![1, 2]);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_motzkin(1).unwrap(), vec![v()]);
        assert_eq!(enumerate_motzkin(3).unwrap(), vec![t("l(l(v))"), t("a(v,v)")]);
        assert_eq!(
            enumerate_motzkin(0),
            Err(Error::InvalidSize { size: 0, min: 1 })
        );
        assert!(count_motzkin(0).is_err());
    }

    #[test]
    fn counts_match_enumeration() {
        let table = enumerate_motzkin_table(10);
        for n in 1..=10 {
            assert_eq!(count_motzkin(n).unwrap(), BigUint::from(table[n].len()));
            assert!(table[n].iter().all(|t| t.size111() == n));
        }
    }

    #[test]
    fn parse_is_whitespace_insensitive() {
        assert_eq!(t(" a ( l( v ) ,\n v ) "), a(l(v()), v()));
        assert!("a(v)".parse::<Motzkin>().is_err());
        assert!("vv".parse::<Motzkin>().is_err());
        assert!("".parse::<Motzkin>().is_err());
        assert_eq!(a(l(v()), v()).to_string(), "a(l(v),v)");
    }

    #[test]
    fn parse_error_position() {
        match "l(x)".parse::<Motzkin>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
