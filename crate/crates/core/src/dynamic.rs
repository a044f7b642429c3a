//! Family-agnostic entry points keyed by [`FamilyKind`] and [`Repr`], used
//! by the command line and the C ABI.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::closable::{self, Closable, ClosableFamily};
use crate::error::{Error, Result};
use crate::family::structured_to_rec;
use crate::gen::{self, FilterStats, Rng};
use crate::lambda::{self, Lmt, OpenFamily, OpenTerm};
use crate::motzkin::{self, Motzkin};
use crate::syntax::parse_all;
use crate::ucs::{self, Ucs, UcsFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum FamilyKind {
    Motzkin,
    Closable,
    Ucs,
    Lmt,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, clap::ValueEnum)]
pub enum Repr {
    #[default]
    Base,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Strategy {
    /// Uniform over the constructors of the generated type.
    Derived,
    /// Generate base values and keep the first that passes the filter.
    Filtered,
    /// Hand-written generator that only emits family members.
    Structural,
    /// Derived structured generator mapped through the converter.
    Converted,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Motzkin => "motzkin",
            FamilyKind::Closable => "closable",
            FamilyKind::Ucs => "ucs",
            FamilyKind::Lmt => "lmt",
            FamilyKind::Open => "open",
        }
    }

    /// Smallest size with at least one member.
    pub fn min_size(self) -> usize {
        match self {
            FamilyKind::Closable | FamilyKind::Ucs => 2,
            _ => 1,
        }
    }

    pub fn default_strategy(self) -> Strategy {
        match self {
            FamilyKind::Motzkin | FamilyKind::Lmt => Strategy::Derived,
            _ => Strategy::Structural,
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Self as clap::ValueEnum>::from_str(s, true).map_err(|_| Error::Unsupported(format!("unknown family `{s}`")))
    }
}

impl FromStr for Repr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Self as clap::ValueEnum>::from_str(s, true)
            .map_err(|_| Error::Unsupported(format!("unknown representation `{s}`")))
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Self as clap::ValueEnum>::from_str(s, true).map_err(|_| Error::Unsupported(format!("unknown strategy `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnyTerm {
    Motzkin(Motzkin),
    Closable(Closable),
    Ucs(Ucs),
    Lmt(Lmt),
    Open(OpenTerm),
}

impl AnyTerm {
    pub fn size111(&self) -> usize {
        match self {
            AnyTerm::Motzkin(t) => t.size111(),
            AnyTerm::Closable(t) => t.size111(),
            AnyTerm::Ucs(t) => t.size111(),
            AnyTerm::Lmt(t) => t.size111(),
            AnyTerm::Open(t) => t.size111(),
        }
    }

    pub fn size012(&self) -> usize {
        match self {
            AnyTerm::Motzkin(t) => t.size012(),
            AnyTerm::Closable(t) => t.size012(),
            AnyTerm::Ucs(t) => t.size012(),
            AnyTerm::Lmt(t) => t.size012(),
            AnyTerm::Open(t) => t.size012(),
        }
    }
}

impl fmt::Display for AnyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyTerm::Motzkin(t) => t.fmt(f),
            AnyTerm::Closable(t) => t.fmt(f),
            AnyTerm::Ucs(t) => t.fmt(f),
            AnyTerm::Lmt(t) => t.fmt(f),
            AnyTerm::Open(t) => t.fmt(f),
        }
    }
}

fn need_openness(openness: Option<u64>) -> Result<u64> {
    openness.ok_or_else(|| Error::Unsupported("family open requires an openness".into()))
}

fn no_structured(kind: FamilyKind) -> Error {
    Error::Unsupported(format!("family {} has no structured representation", kind.name()))
}

/// Parses `text` in the grammar of the given family and representation.
pub fn parse(kind: FamilyKind, repr: Repr, text: &str) -> Result<AnyTerm> {
    Ok(match (kind, repr) {
        (FamilyKind::Motzkin | FamilyKind::Closable | FamilyKind::Ucs, Repr::Base) => {
            AnyTerm::Motzkin(parse_all(text, Motzkin::parse_from)?)
        }
        (FamilyKind::Closable, Repr::Structured) => AnyTerm::Closable(parse_all(text, Closable::parse_from)?),
        (FamilyKind::Ucs, Repr::Structured) => AnyTerm::Ucs(parse_all(text, Ucs::parse_from)?),
        (FamilyKind::Lmt | FamilyKind::Open, Repr::Base) => AnyTerm::Lmt(parse_all(text, Lmt::parse_from)?),
        (FamilyKind::Lmt | FamilyKind::Open, Repr::Structured) => {
            AnyTerm::Open(parse_all(text, OpenTerm::parse_from)?)
        }
        (FamilyKind::Motzkin, Repr::Structured) => return Err(no_structured(kind)),
    })
}

/// Maps a term to the other representation of its family.
///
/// `lmt` terms convert to an [`OpenTerm`] at their minimal openness; `open`
/// terms use the given openness.
pub fn convert(kind: FamilyKind, term: &AnyTerm, openness: Option<u64>) -> Result<AnyTerm> {
    Ok(match (kind, term) {
        (FamilyKind::Closable, AnyTerm::Motzkin(t)) => AnyTerm::Closable(closable::motzkin2closable(t)?),
        (FamilyKind::Closable, AnyTerm::Closable(c)) => AnyTerm::Motzkin(closable::closable2motzkin(c)),
        (FamilyKind::Ucs, AnyTerm::Motzkin(t)) => AnyTerm::Ucs(ucs::motzkin2ucs(t)?),
        (FamilyKind::Ucs, AnyTerm::Ucs(u)) => AnyTerm::Motzkin(ucs::ucs2motzkin(u)),
        (FamilyKind::Open, AnyTerm::Lmt(t)) => AnyTerm::Open(lambda::lmt_to_open(need_openness(openness)?, t)?),
        (FamilyKind::Lmt, AnyTerm::Lmt(t)) => {
            let m = openness.unwrap_or_else(|| lambda::minimal_openness(t));
            AnyTerm::Open(lambda::lmt_to_open(m, t)?)
        }
        (FamilyKind::Open | FamilyKind::Lmt, AnyTerm::Open(o)) => {
            if let Some(m) = openness.filter(|&m| m != o.root_index()) {
                return Err(Error::OpennessMismatch {
                    expected: m,
                    found: o.root_index(),
                });
            }
            AnyTerm::Lmt(lambda::open_to_lmt(o))
        }
        (FamilyKind::Motzkin, _) => return Err(no_structured(kind)),
        _ => return Err(Error::Unsupported(format!("term {term} does not belong to family {}", kind.name()))),
    })
}

/// Every family member of size `n` in canonical order.
pub fn enumerate(kind: FamilyKind, repr: Repr, n: usize, openness: Option<u64>) -> Result<Vec<AnyTerm>> {
    if n < kind.min_size() {
        return Err(Error::InvalidSize {
            size: n,
            min: kind.min_size(),
        });
    }
    let filtered = |filter: fn(&Motzkin) -> bool| -> Result<Vec<AnyTerm>> {
        Ok(motzkin::enumerate_motzkin(n)?
            .into_iter()
            .filter(|t| filter(t))
            .map(AnyTerm::Motzkin)
            .collect())
    };
    match (kind, repr) {
        (FamilyKind::Motzkin, Repr::Base) => Ok(motzkin::enumerate_motzkin(n)?.into_iter().map(AnyTerm::Motzkin).collect()),
        (FamilyKind::Closable, Repr::Base) => filtered(motzkin::is_closable),
        (FamilyKind::Closable, Repr::Structured) => {
            Ok(closable::enumerate_closable(n)?.into_iter().map(AnyTerm::Closable).collect())
        }
        (FamilyKind::Ucs, Repr::Base) => filtered(motzkin::is_ucs),
        (FamilyKind::Ucs, Repr::Structured) => Ok(ucs::enumerate_ucs(n)?.into_iter().map(AnyTerm::Ucs).collect()),
        (FamilyKind::Open, Repr::Base) => Ok(lambda::enumerate_open(need_openness(openness)?, n)?
            .into_iter()
            .map(AnyTerm::Lmt)
            .collect()),
        (FamilyKind::Open, Repr::Structured) => Ok(lambda::enumerate_open_terms(need_openness(openness)?, n)?
            .into_iter()
            .map(AnyTerm::Open)
            .collect()),
        (FamilyKind::Lmt, _) => Err(infinite_lmt()),
        (FamilyKind::Motzkin, Repr::Structured) => Err(no_structured(kind)),
    }
}

fn infinite_lmt() -> Error {
    Error::Unsupported("family lmt has infinitely many terms of each size; use family open with an openness".into())
}

/// Number of family members of size `n`.
pub fn count(kind: FamilyKind, n: usize, openness: Option<u64>) -> Result<BigUint> {
    match kind {
        FamilyKind::Motzkin => motzkin::count_motzkin(n),
        FamilyKind::Closable => closable::count_closable(n),
        FamilyKind::Ucs => ucs::count_ucs(n),
        FamilyKind::Open => lambda::count_open(need_openness(openness)?, n),
        FamilyKind::Lmt => Err(infinite_lmt()),
    }
}

/// Generator settings for [`sample`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleRequest {
    pub kind: FamilyKind,
    pub repr: Repr,
    pub strategy: Strategy,
    pub fuel: u32,
    pub filter_max: u32,
    pub openness: Option<u64>,
}

/// Draws one term; the stats are present for the `filtered` strategy only.
pub fn sample(request: &SampleRequest, rng: &mut Rng) -> Result<(AnyTerm, Option<FilterStats>)> {
    use Strategy::*;
    let SampleRequest {
        kind,
        repr,
        strategy,
        fuel,
        filter_max,
        openness,
    } = *request;
    let unsupported =
        || Error::Unsupported(format!("strategy {strategy:?} is not available for family {}", kind.name()));
    let mut stats = None;
    let drawn = match (kind, strategy) {
        (FamilyKind::Motzkin, Derived) => AnyTerm::Motzkin(gen::gen_motzkin(fuel, rng)),
        (FamilyKind::Lmt, Derived) => AnyTerm::Lmt(gen::gen_lmt(fuel, rng)),
        (FamilyKind::Closable, Derived) => AnyTerm::Closable(gen::gen_closable(fuel, rng)),
        (FamilyKind::Closable, Filtered) => {
            let (t, s) = gen::gen_filtered(&ClosableFamily::STRUCTURAL, &gen::gen_motzkin, fuel, rng, filter_max);
            stats = Some(s);
            AnyTerm::Motzkin(t)
        }
        (FamilyKind::Closable, Structural) => AnyTerm::Motzkin(gen::gen_closable_struct(fuel, rng)),
        (FamilyKind::Closable, Converted) => {
            let g = gen::gen_from_structured(&ClosableFamily::STRUCTURAL, gen::gen_closable);
            AnyTerm::Motzkin(g(fuel, rng)?.into_value())
        }
        (FamilyKind::Ucs, Derived) => AnyTerm::Ucs(gen::gen_ucs(fuel, rng)),
        (FamilyKind::Ucs, Filtered) => {
            let (t, s) = gen::gen_filtered(&UcsFamily, &gen::gen_motzkin, fuel, rng, filter_max);
            stats = Some(s);
            AnyTerm::Motzkin(t)
        }
        (FamilyKind::Ucs, Structural) => AnyTerm::Motzkin(gen::gen_ucs_struct(fuel, rng)),
        (FamilyKind::Ucs, Converted) => {
            let g = gen::gen_from_structured(&UcsFamily, gen::gen_ucs);
            AnyTerm::Motzkin(g(fuel, rng)?.into_value())
        }
        (FamilyKind::Open, _) => {
            let m = need_openness(openness)?;
            let fam = OpenFamily { m };
            match strategy {
                Derived => AnyTerm::Open(gen::gen_open_term(m, fuel, rng)),
                Filtered => {
                    let (t, s) = gen::gen_filtered(&fam, &gen::gen_lmt, fuel, rng, filter_max);
                    stats = Some(s);
                    AnyTerm::Lmt(t)
                }
                Structural => AnyTerm::Lmt(gen::gen_open_struct(m, fuel, rng)),
                Converted => {
                    let o = gen::gen_open_term(m, fuel, rng);
                    AnyTerm::Lmt(structured_to_rec(&fam, &o)?.into_value())
                }
            }
        }
        _ => return Err(unsupported()),
    };
    let wants_structured = repr == Repr::Structured;
    let is_structured = matches!(drawn, AnyTerm::Closable(_) | AnyTerm::Ucs(_) | AnyTerm::Open(_));
    let term = if wants_structured != is_structured {
        let m = match (&drawn, openness) {
            (AnyTerm::Lmt(t), None) => Some(lambda::minimal_openness(t)),
            (_, m) => m,
        };
        convert(kind, &drawn, m)?
    } else {
        drawn
    };
    Ok((term, stats))
}

/// Labelings listed by [`analyze`] are capped at this many.
pub const MAX_LISTED_LABELINGS: usize = 64;

fn skeleton_facts(mt: &Motzkin, m: u64, out: &mut Vec<(String, Value)>) {
    let count = lambda::count_labelings(m, mt);
    let labelings: Vec<String> = if count <= BigUint::from(MAX_LISTED_LABELINGS) {
        lambda::enumerate_labelings(m, mt).iter().map(Lmt::to_string).collect()
    } else {
        Vec::new()
    };
    out.push(("skeleton".into(), json!(mt.to_string())));
    out.push(("is_closable".into(), json!(motzkin::is_closable(mt))));
    out.push(("is_closable_counter".into(), json!(motzkin::is_closable_counted(mt))));
    out.push(("is_ucs".into(), json!(motzkin::is_ucs(mt))));
    out.push(("ucs1".into(), json!(motzkin::ucs1(mt))));
    out.push(("labeling_openness".into(), json!(m)));
    out.push(("count_labelings".into(), json!(count.to_string())));
    out.push(("labelings".into(), json!(labelings)));
}

/// Named facts about a term, in display order.
///
/// Labelings are computed at `openness` when given, otherwise at 0 for
/// skeletons and at the term's minimal openness for λ-terms.
pub fn analyze(kind: FamilyKind, term: &AnyTerm, openness: Option<u64>) -> Result<Vec<(String, Value)>> {
    let mut out = vec![
        ("term".to_string(), json!(term.to_string())),
        ("family".to_string(), json!(kind.name())),
        ("size111".to_string(), json!(term.size111())),
        ("size012".to_string(), json!(term.size012())),
    ];
    match term {
        AnyTerm::Motzkin(mt) => skeleton_facts(mt, openness.unwrap_or(0), &mut out),
        AnyTerm::Closable(c) => skeleton_facts(&closable::closable2motzkin(c), openness.unwrap_or(0), &mut out),
        AnyTerm::Ucs(u) => skeleton_facts(&ucs::ucs2motzkin(u), openness.unwrap_or(0), &mut out),
        AnyTerm::Lmt(_) | AnyTerm::Open(_) => {
            let (t, root) = match term {
                AnyTerm::Open(o) => (lambda::open_to_lmt(o), Some(o.root_index())),
                AnyTerm::Lmt(t) => (t.clone(), None),
                _ => unreachable!(),
            };
            let min = lambda::minimal_openness(&t);
            out.push(("minimal_openness".into(), json!(min)));
            out.push(("is_closed".into(), json!(lambda::is_closed(&t))));
            if let Some(m) = root {
                out.push(("root_index".into(), json!(m)));
            }
            skeleton_facts(&lambda::skeleton(&t), openness.or(root).unwrap_or(min), &mut out);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_convert() {
        let t = parse(FamilyKind::Closable, Repr::Base, "l(a(v,l(v)))").unwrap();
        let c = convert(FamilyKind::Closable, &t, None).unwrap();
        assert_eq!(c.to_string(), "cl(a(v,l(v)))");
        assert_eq!(convert(FamilyKind::Closable, &c, None).unwrap(), t);
        let bad = parse(FamilyKind::Closable, Repr::Base, "a(l(v),v)").unwrap();
        assert!(matches!(convert(FamilyKind::Closable, &bad, None), Err(Error::NotClosable { .. })));
        assert!(parse(FamilyKind::Motzkin, Repr::Structured, "v").is_err());
    }

    #[test]
    fn lmt_converts_at_minimal_openness() {
        let t = parse(FamilyKind::Lmt, Repr::Base, "lam(app(var(1),lam(var(1))))").unwrap();
        assert_eq!(
            convert(FamilyKind::Lmt, &t, None).unwrap().to_string(),
            "open(1,lam(app(var(1),lam(var(1)))))"
        );
        assert!(convert(FamilyKind::Open, &t, None).is_err());
        assert!(matches!(
            convert(FamilyKind::Open, &t, Some(0)),
            Err(Error::NotOpen { .. })
        ));
    }

    #[test]
    fn counts_and_enumeration() {
        assert_eq!(count(FamilyKind::Motzkin, 5, None).unwrap(), BigUint::from(9u8));
        assert_eq!(enumerate(FamilyKind::Closable, Repr::Base, 5, None).unwrap().len(), 5);
        assert_eq!(enumerate(FamilyKind::Open, Repr::Structured, 4, Some(0)).unwrap().len(), 4);
        assert!(enumerate(FamilyKind::Lmt, Repr::Base, 3, None).is_err());
        assert!(enumerate(FamilyKind::Closable, Repr::Base, 1, None).is_err());
    }

    #[test]
    fn sampling_respects_representation() {
        let mut rng = Rng::new(5);
        for strategy in [Strategy::Derived, Strategy::Filtered, Strategy::Structural, Strategy::Converted] {
            for repr in [Repr::Base, Repr::Structured] {
                let request = SampleRequest {
                    kind: FamilyKind::Ucs,
                    repr,
                    strategy,
                    fuel: 6,
                    filter_max: 100,
                    openness: None,
                };
                let (t, stats) = sample(&request, &mut rng).unwrap();
                assert_eq!(matches!(t, AnyTerm::Ucs(_)), repr == Repr::Structured);
                assert_eq!(stats.is_some(), strategy == Strategy::Filtered);
                let request = SampleRequest {
                    kind: FamilyKind::Open,
                    openness: Some(1),
                    ..request
                };
                let (t, _) = sample(&request, &mut rng).unwrap();
                assert_eq!(matches!(t, AnyTerm::Open(_)), repr == Repr::Structured);
            }
        }
        let request = SampleRequest {
            kind: FamilyKind::Motzkin,
            repr: Repr::Base,
            strategy: Strategy::Filtered,
            fuel: 3,
            filter_max: 1,
            openness: None,
        };
        assert!(sample(&request, &mut rng).is_err());
    }

    #[test]
    fn analyze_lambda_term() {
        let t = parse(FamilyKind::Lmt, Repr::Base, "lam(app(var(1),lam(var(1))))").unwrap();
        let facts = analyze(FamilyKind::Lmt, &t, None).unwrap();
        let get = |k: &str| facts.iter().find(|(key, _)| key == k).unwrap().1.clone();
        assert_eq!(get("minimal_openness"), json!(1));
        assert_eq!(get("skeleton"), json!("l(a(v,l(v)))"));
        assert_eq!(get("labeling_openness"), json!(1));
        assert_eq!(get("count_labelings"), json!("6"));
    }
}
