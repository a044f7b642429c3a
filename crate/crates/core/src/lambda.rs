//! De Bruijn λ-terms (labeled Motzkin trees), m-openness and labelings.
//!
//! A leaf `var(i)` under `k` binders of a term placed in a context of `m`
//! outer binders is in scope when `i < m + k`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Path, Result, Step};
use crate::family::{Family, ParamFamily};
use crate::motzkin::{self, Motzkin};
use crate::syntax::{parse_all, Cursor};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lmt {
    Var(u64),
    Lam(Box<Lmt>),
    App(Box<Lmt>, Box<Lmt>),
}

pub fn var(i: u64) -> Lmt {
    Lmt::Var(i)
}

pub fn lam(body: Lmt) -> Lmt {
    Lmt::Lam(Box::new(body))
}

pub fn app(left: Lmt, right: Lmt) -> Lmt {
    Lmt::App(Box::new(left), Box::new(right))
}

impl Lmt {
    /// Variables weigh 1 whatever their index.
    pub fn size111(&self) -> usize {
        match self {
            Lmt::Var(_) => 1,
            Lmt::Lam(b) => 1 + b.size111(),
            Lmt::App(p, q) => 1 + p.size111() + q.size111(),
        }
    }

    /// Variables weigh 0 whatever their index.
    pub fn size012(&self) -> usize {
        match self {
            Lmt::Var(_) => 0,
            Lmt::Lam(b) => 1 + b.size012(),
            Lmt::App(p, q) => 2 + p.size012() + q.size012(),
        }
    }

    fn write_to(&self, out: &mut String) {
        match self {
            Lmt::Var(i) => {
                out.push_str("var(");
                out.push_str(&i.to_string());
                out.push(')');
            }
            Lmt::Lam(b) => {
                out.push_str("lam(");
                b.write_to(out);
                out.push(')');
            }
            Lmt::App(p, q) => {
                out.push_str("app(");
                p.write_to(out);
                out.push(',');
                q.write_to(out);
                out.push(')');
            }
        }
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<Lmt> {
        if c.eat_call("var") {
            let i = c.number()?;
            c.expect(")")?;
            Ok(var(i))
        } else if c.eat_call("lam") {
            let b = Lmt::parse_from(c)?;
            c.expect(")")?;
            Ok(lam(b))
        } else if c.eat_call("app") {
            let p = Lmt::parse_from(c)?;
            c.expect(",")?;
            let q = Lmt::parse_from(c)?;
            c.expect(")")?;
            Ok(app(p, q))
        } else {
            c.error("expected `var(`, `lam(` or `app(`")
        }
    }
}

impl fmt::Display for Lmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

impl FromStr for Lmt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_all(s, Lmt::parse_from)
    }
}

pub fn is_open(m: u64, t: &Lmt) -> bool {
    match t {
        Lmt::Var(i) => *i < m,
        Lmt::Lam(b) => is_open(m + 1, b),
        Lmt::App(p, q) => is_open(m, p) && is_open(m, q),
    }
}

pub fn is_closed(t: &Lmt) -> bool {
    is_open(0, t)
}

/// First out-of-scope leaf in left-to-right order.
fn first_violation(m: u64, t: &Lmt, path: &Path) -> Option<Error> {
    match t {
        Lmt::Var(i) if *i >= m => Some(Error::NotOpen {
            path: path.clone(),
            index: *i,
            available: m,
        }),
        Lmt::Var(_) => None,
        Lmt::Lam(b) => first_violation(m + 1, b, &path.child(Step::Body)),
        Lmt::App(p, q) => first_violation(m, p, &path.child(Step::Left))
            .or_else(|| first_violation(m, q, &path.child(Step::Right))),
    }
}

/// An m-open term: every leaf index is below `m` plus the binders above it.
///
/// The fields are private; every constructor checks the scoping condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OpenTerm {
    root_index: u64,
    tree: Lmt,
}

impl OpenTerm {
    pub fn var(m: u64, i: u64) -> Result<OpenTerm> {
        if i < m {
            Ok(OpenTerm {
                root_index: m,
                tree: Lmt::Var(i),
            })
        } else {
            Err(Error::NotOpen {
                path: Path::root(),
                index: i,
                available: m,
            })
        }
    }

    /// Binds one more variable: `body` must be `(m + 1)`-open.
    pub fn lam(m: u64, body: OpenTerm) -> Result<OpenTerm> {
        if body.root_index != m + 1 {
            return Err(Error::OpennessMismatch {
                expected: m + 1,
                found: body.root_index,
            });
        }
        Ok(OpenTerm {
            root_index: m,
            tree: lam(body.tree),
        })
    }

    pub fn app(left: OpenTerm, right: OpenTerm) -> Result<OpenTerm> {
        if left.root_index != right.root_index {
            return Err(Error::OpennessMismatch {
                expected: left.root_index,
                found: right.root_index,
            });
        }
        Ok(OpenTerm {
            root_index: left.root_index,
            tree: app(left.tree, right.tree),
        })
    }

    pub fn root_index(&self) -> u64 {
        self.root_index
    }

    pub fn tree(&self) -> &Lmt {
        &self.tree
    }

    pub fn size111(&self) -> usize {
        self.tree.size111()
    }

    pub fn size012(&self) -> usize {
        self.tree.size012()
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<OpenTerm> {
        if !c.eat_call("open") {
            return c.error("expected `open(`");
        }
        let m = c.number()?;
        c.expect(",")?;
        let tree = Lmt::parse_from(c)?;
        c.expect(")")?;
        lmt_to_open(m, &tree)
    }
}

/// Printed as `open(m,<lmt>)`.
impl fmt::Display for OpenTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "open({},{})", self.root_index, self.tree)
    }
}

impl FromStr for OpenTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_all(s, OpenTerm::parse_from)
    }
}

pub fn lmt_to_open(m: u64, t: &Lmt) -> Result<OpenTerm> {
    match first_violation(m, t, &Path::root()) {
        Some(e) => Err(e),
        None => Ok(OpenTerm {
            root_index: m,
            tree: t.clone(),
        }),
    }
}

pub fn open_to_lmt(o: &OpenTerm) -> Lmt {
    o.tree.clone()
}

pub fn skeleton(t: &Lmt) -> Motzkin {
    match t {
        Lmt::Var(_) => Motzkin::V,
        Lmt::Lam(b) => motzkin::l(skeleton(b)),
        Lmt::App(p, q) => motzkin::a(skeleton(p), skeleton(q)),
    }
}

/// The labeling relation: `t` is an m-open labeling of skeleton `mt`.
pub fn label_check(m: u64, mt: &Motzkin, t: &Lmt) -> bool {
    match (mt, t) {
        (Motzkin::V, Lmt::Var(i)) => *i < m,
        (Motzkin::L(mt), Lmt::Lam(t)) => label_check(m + 1, mt, t),
        (Motzkin::A(mp, mq), Lmt::App(p, q)) => label_check(m, mp, p) && label_check(m, mq, q),
        _ => false,
    }
}

/// Every m-open labeling of `mt`, lexicographic in the left-to-right leaf indices.
pub fn enumerate_labelings(m: u64, mt: &Motzkin) -> Vec<Lmt> {
    match mt {
        Motzkin::V => (0..m).map(var).collect(),
        Motzkin::L(body) => enumerate_labelings(m + 1, body).into_iter().map(lam).collect(),
        Motzkin::A(p, q) => {
            let rights = enumerate_labelings(m, q);
            if rights.is_empty() {
                return Vec::new();
            }
            let mut out = Vec::new();
            for left in enumerate_labelings(m, p) {
                for right in &rights {
                    out.push(app(left.clone(), right.clone()));
                }
            }
            out
        }
    }
}

/// Number of m-open labelings of `mt`, without enumerating them.
pub fn count_labelings(m: u64, mt: &Motzkin) -> BigUint {
    match mt {
        Motzkin::V => BigUint::from(m),
        Motzkin::L(body) => count_labelings(m + 1, body),
        Motzkin::A(p, q) => {
            let left = count_labelings(m, p);
            if left.is_zero() {
                return left;
            }
            left * count_labelings(m, q)
        }
    }
}

/// Least `m` such that `t` is m-open.
pub fn minimal_openness(t: &Lmt) -> u64 {
    match t {
        Lmt::Var(i) => i + 1,
        Lmt::Lam(b) => minimal_openness(b).saturating_sub(1),
        Lmt::App(p, q) => minimal_openness(p).max(minimal_openness(q)),
    }
}

/// Memoized size-indexed enumeration of labeled trees whose leaves under
/// `avail` visible binders take `leaf_labels(avail)` possible indices.
struct LabeledEnumerator<F: Fn(u64) -> u64> {
    leaf_labels: F,
    memo: HashMap<(u64, usize), Vec<Lmt>>,
}

impl<F: Fn(u64) -> u64> LabeledEnumerator<F> {
    fn new(leaf_labels: F) -> Self {
        LabeledEnumerator {
            leaf_labels,
            memo: HashMap::new(),
        }
    }

    fn get(&mut self, avail: u64, n: usize) -> Vec<Lmt> {
        if let Some(hit) = self.memo.get(&(avail, n)) {
            return hit.clone();
        }
        let mut row = Vec::new();
        if n == 1 {
            row.extend((0..(self.leaf_labels)(avail)).map(var));
        } else if n > 1 {
            row.extend(self.get(avail + 1, n - 1).into_iter().map(lam));
            for left_size in 1..n - 1 {
                let right_size = n - 1 - left_size;
                let rights = self.get(avail, right_size);
                if rights.is_empty() {
                    continue;
                }
                for p in self.get(avail, left_size) {
                    for q in &rights {
                        row.push(app(p.clone(), q.clone()));
                    }
                }
            }
        }
        self.memo.insert((avail, n), row.clone());
        row
    }
}

/// All m-open terms of size `n`, canonical order (`Var < Lam < App`,
/// indices ascending, left size ascending).
pub fn enumerate_open(m: u64, n: usize) -> Result<Vec<Lmt>> {
    if n == 0 {
        return Err(Error::InvalidSize { size: n, min: 1 });
    }
    Ok(LabeledEnumerator::new(|avail| avail).get(m, n))
}

/// Superset of [`enumerate_open`]: each leaf additionally takes the first
/// out-of-scope index.
pub fn enumerate_lmt_bounded(m: u64, n: usize) -> Result<Vec<Lmt>> {
    if n == 0 {
        return Err(Error::InvalidSize { size: n, min: 1 });
    }
    Ok(LabeledEnumerator::new(|avail| avail + 1).get(m, n))
}

/// Every m-open [`OpenTerm`] of size `n`, assembled with the checked constructors.
pub fn enumerate_open_terms(m: u64, n: usize) -> Result<Vec<OpenTerm>> {
    fn go(m: u64, n: usize, memo: &mut HashMap<(u64, usize), Vec<OpenTerm>>) -> Vec<OpenTerm> {
        if let Some(hit) = memo.get(&(m, n)) {
            return hit.clone();
        }
        let mut row = Vec::new();
        if n == 1 {
            row.extend((0..m).map(|i| OpenTerm::var(m, i).expect("index below m")));
        } else {
            for body in go(m + 1, n - 1, memo) {
                row.push(OpenTerm::lam(m, body).expect("body is (m+1)-open"));
            }
            for left_size in 1..n - 1 {
                let rights = go(m, n - 1 - left_size, memo);
                for p in go(m, left_size, memo) {
                    for q in &rights {
                        row.push(OpenTerm::app(p.clone(), q.clone()).expect("same openness"));
                    }
                }
            }
        }
        memo.insert((m, n), row.clone());
        row
    }
    if n == 0 {
        return Err(Error::InvalidSize { size: n, min: 1 });
    }
    Ok(go(m, n, &mut HashMap::new()))
}

pub fn count_open(m: u64, n: usize) -> Result<BigUint> {
    fn go(m: u64, n: usize, memo: &mut HashMap<(u64, usize), BigUint>) -> BigUint {
        if let Some(hit) = memo.get(&(m, n)) {
            return hit.clone();
        }
        let value = if n == 1 {
            BigUint::from(m)
        } else {
            let mut total = go(m + 1, n - 1, memo);
            for left_size in 1..n - 1 {
                total += go(m, left_size, memo) * go(m, n - 1 - left_size, memo);
            }
            total
        };
        memo.insert((m, n), value.clone());
        value
    }
    if n == 0 {
        return Err(Error::InvalidSize { size: n, min: 1 });
    }
    Ok(go(m, n, &mut HashMap::new()))
}

/// Product over the leaves of `m` plus the binders above the leaf.
pub fn leaf_product(m: u64, mt: &Motzkin) -> BigUint {
    mt.binders_above_leaves()
        .into_iter()
        .fold(BigUint::one(), |acc, k| acc * BigUint::from(m + k as u64))
}

/// The m-open terms as a family over [`Lmt`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpenFamily {
    pub m: u64,
}

/// The openness-indexed family of all [`OpenFamily`] instances.
#[derive(Debug, Clone, Copy, Default)]
pub struct OpenFamilies;

impl ParamFamily for OpenFamilies {
    type Instance = OpenFamily;

    fn at(&self, m: u64) -> OpenFamily {
        OpenFamily { m }
    }
}

impl Family for OpenFamily {
    type Base = Lmt;
    type Structured = OpenTerm;

    fn name(&self) -> String {
        format!("open[m={}]", self.m)
    }

    fn filter(&self, b: &Lmt) -> bool {
        is_open(self.m, b)
    }

    fn to_structured(&self, b: &Lmt) -> Result<OpenTerm> {
        lmt_to_open(self.m, b)
    }

    fn to_base(&self, s: &OpenTerm) -> Lmt {
        open_to_lmt(s)
    }

    /// `var(0)` when there is an outer binder, otherwise `lam(var(0))`.
    fn default_base(&self) -> Lmt {
        if self.m > 0 {
            var(0)
        } else {
            lam(var(0))
        }
    }

    fn size_base(&self, b: &Lmt) -> usize {
        b.size111()
    }

    fn size_structured(&self, s: &OpenTerm) -> usize {
        s.size111()
    }

    fn enumerate_base(&self, n: usize) -> Option<Vec<Lmt>> {
        Some(enumerate_lmt_bounded(self.m, n).unwrap_or_default())
    }

    fn enumerate_structured(&self, n: usize) -> Option<Vec<OpenTerm>> {
        Some(enumerate_open_terms(self.m, n).unwrap_or_default())
    }
}
