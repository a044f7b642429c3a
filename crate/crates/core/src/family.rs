//! Generic pairing of a base type, a decidable filter and a structured type.
//!
//! A [`Family`] bundles the two converters between the filtered base values
//! and the structured values. [`Validated`] wraps a base value that passed the
//! filter, and [`audit_family`] re-checks every descriptor obligation against
//! exhaustive enumerations.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{Error, Result};

pub trait Family {
    type Base: Clone + Eq + Hash + fmt::Debug + fmt::Display;
    type Structured: Clone + Eq + Hash + fmt::Debug + fmt::Display;

    fn name(&self) -> String;

    fn filter(&self, b: &Self::Base) -> bool;

    /// Defined exactly on the base values accepted by [`Family::filter`].
    fn to_structured(&self, b: &Self::Base) -> Result<Self::Structured>;

    fn to_base(&self, s: &Self::Structured) -> Self::Base;

    fn default_base(&self) -> Self::Base;

    fn size_base(&self, b: &Self::Base) -> usize;

    fn size_structured(&self, s: &Self::Structured) -> usize;

    /// Every base value of size `n` (filtered or not), or `None` if the family
    /// has no enumerator.
    fn enumerate_base(&self, _n: usize) -> Option<Vec<Self::Base>> {
        None
    }

    fn enumerate_structured(&self, _n: usize) -> Option<Vec<Self::Structured>> {
        None
    }
}

/// A family indexed by a nonnegative parameter (the openness `m`).
pub trait ParamFamily {
    type Instance: Family;

    fn at(&self, m: u64) -> Self::Instance;
}

/// A base value certified by its family's filter.
///
/// Equality compares the values only.
#[derive(Clone)]
pub struct Validated<'f, F: Family + ?Sized> {
    value: F::Base,
    family: &'f F,
}

impl<'f, F: Family + ?Sized> Validated<'f, F> {
    pub fn value(&self) -> &F::Base {
        &self.value
    }

    pub fn into_value(self) -> F::Base {
        self.value
    }

    pub fn family(&self) -> &'f F {
        self.family
    }
}

impl<F: Family + ?Sized> Deref for Validated<'_, F> {
    type Target = F::Base;

    fn deref(&self) -> &F::Base {
        &self.value
    }
}

impl<F: Family + ?Sized> PartialEq for Validated<'_, F> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<F: Family + ?Sized> Eq for Validated<'_, F> {}

impl<F: Family + ?Sized> fmt::Debug for Validated<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Validated")
            .field("family", &self.family.name())
            .field("value", &self.value)
            .finish()
    }
}

impl<F: Family + ?Sized> fmt::Display for Validated<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

pub fn validate<F: Family + ?Sized>(fd: &F, x: F::Base) -> Result<Validated<'_, F>> {
    if fd.filter(&x) {
        Ok(Validated {
            value: x,
            family: fd,
        })
    } else {
        Err(Error::NotInFamily {
            family: fd.name(),
            value: x.to_string(),
        })
    }
}

/// Total on validated values.
///
/// # Panics
///
/// Panics if the descriptor's converter rejects a value its own filter accepted.
/// [`audit_family`] reports such descriptors without panicking.
pub fn rec_to_structured<F: Family + ?Sized>(fd: &F, w: &Validated<'_, F>) -> F::Structured {
    match fd.to_structured(&w.value) {
        Ok(s) => s,
        Err(e) => panic!(
            "family {} rejects its own validated value {}: {e}",
            fd.name(),
            w.value
        ),
    }
}

pub fn structured_to_rec<'f, F: Family + ?Sized>(fd: &'f F, s: &F::Structured) -> Result<Validated<'f, F>> {
    let base = fd.to_base(s);
    if fd.filter(&base) {
        Ok(Validated {
            value: base,
            family: fd,
        })
    } else {
        Err(Error::ConverterBroken {
            family: fd.name(),
            structured: s.to_string(),
            base: base.to_string(),
        })
    }
}

/// `structured_to_rec ∘ rec_to_structured` is the identity on `w`.
pub fn roundtrip_rec<F: Family + ?Sized>(fd: &F, w: &Validated<'_, F>) -> bool {
    let Ok(s) = fd.to_structured(&w.value) else {
        return false;
    };
    structured_to_rec(fd, &s).is_ok_and(|back| back.value == w.value)
}

/// `rec_to_structured ∘ structured_to_rec` is the identity on `s`.
pub fn roundtrip_structured<F: Family + ?Sized>(fd: &F, s: &F::Structured) -> bool {
    let Ok(w) = structured_to_rec(fd, s) else {
        return false;
    };
    fd.to_structured(&w.value).is_ok_and(|back| &back == s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeAudit {
    pub n: usize,
    pub base_count: usize,
    pub structured_count: usize,
    pub roundtrips_ok: bool,
    pub rec_roundtrips_passed: usize,
    pub structured_roundtrips_passed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub family: String,
    pub sizes: Vec<SizeAudit>,
    pub default_ok: bool,
    pub pass: bool,
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("audit report serializes")
    }
}

/// Re-verifies every descriptor obligation for sizes `1..=max_size`.
///
/// Besides count equality and both roundtrips, a size passes only if the
/// converter is undefined off the filter, `to_base` lands in the filter and
/// preserves size, and the images of the structured values are exactly the
/// filtered base values.
pub fn audit_family<F: Family + ?Sized>(fd: &F, max_size: usize) -> Result<AuditReport> {
    let missing = || Error::EnumeratorMissing { family: fd.name() };
    let mut sizes = Vec::with_capacity(max_size);
    for n in 1..=max_size {
        let base = fd.enumerate_base(n).ok_or_else(missing)?;
        let structured = fd.enumerate_structured(n).ok_or_else(missing)?;

        let mut ok = true;
        let mut filtered = HashSet::new();
        let mut rec_passed = 0;
        for b in base {
            if fd.size_base(&b) != n {
                ok = false;
            }
            if fd.filter(&b) {
                let w = Validated {
                    value: b.clone(),
                    family: fd,
                };
                if roundtrip_rec(fd, &w) {
                    rec_passed += 1;
                } else {
                    ok = false;
                }
                if !filtered.insert(b) {
                    ok = false;
                }
            } else if fd.to_structured(&b).is_ok() {
                ok = false;
            }
        }

        let mut images = HashSet::new();
        let mut structured_passed = 0;
        for s in &structured {
            if roundtrip_structured(fd, s) {
                structured_passed += 1;
            } else {
                ok = false;
            }
            let b = fd.to_base(s);
            if !fd.filter(&b) || fd.size_base(&b) != n || fd.size_structured(s) != n {
                ok = false;
            }
            images.insert(b);
        }
        let counts_equal = filtered.len() == structured.len();
        ok &= counts_equal && images == filtered;

        sizes.push(SizeAudit {
            n,
            base_count: filtered.len(),
            structured_count: structured.len(),
            roundtrips_ok: ok,
            rec_roundtrips_passed: rec_passed,
            structured_roundtrips_passed: structured_passed,
        });
    }
    let default_ok = fd.filter(&fd.default_base());
    let pass = default_ok && sizes.iter().all(|s| s.roundtrips_ok && s.base_count == s.structured_count);
    Ok(AuditReport {
        family: fd.name(),
        sizes,
        default_ok,
        pass,
    })
}
