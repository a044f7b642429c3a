//! Executable property suites.
//!
//! Each suite checks a family of statements exhaustively up to the given
//! bounds (or over seeded samples) and returns a [`SuiteReport`] listing every
//! counterexample in canonical text form.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::closable::{self, ClosableFamily};
use crate::family::{audit_family, Family, ParamFamily};
use crate::gen::{self, Rng};
use crate::lambda::{self, Lmt, OpenFamilies};
use crate::motzkin::{self, Motzkin};
use crate::ucs::{self, UcsFamily};

/// At most this many counterexamples are kept per report.
pub const MAX_RECORDED_FAILURES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub property: String,
    pub counterexample: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: BTreeMap<String, u64>,
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub pass: bool,
    /// Wall-clock time; left out of the JSON form so reports stay reproducible.
    #[serde(skip)]
    pub duration: Duration,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("suite report serializes")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(
            f,
            "{} {}: {} cases, {} failures ({}) in {:.2?}",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite,
            self.cases,
            self.failure_count,
            params.join(" "),
            self.duration
        )?;
        for failure in &self.failures {
            writeln!(f, "  {}: {}", failure.property, failure.counterexample)?;
        }
        Ok(())
    }
}

struct Recorder {
    suite: &'static str,
    params: BTreeMap<String, u64>,
    cases: u64,
    failure_count: u64,
    failures: Vec<Failure>,
    started: Instant,
}

impl Recorder {
    fn new(suite: &'static str, params: &[(&str, u64)]) -> Self {
        Recorder {
            suite,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    fn check(&mut self, property: &str, ok: bool, counterexample: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(Failure {
                    property: property.to_string(),
                    counterexample: counterexample(),
                });
            }
        }
    }

    fn finish(mut self) -> SuiteReport {
        self.failures.sort();
        SuiteReport {
            suite: self.suite.to_string(),
            params: self.params,
            cases: self.cases,
            failure_count: self.failure_count,
            pass: self.failure_count == 0,
            failures: self.failures,
            duration: self.started.elapsed(),
        }
    }
}

fn motzkin_up_to(max_size: usize) -> impl Iterator<Item = Motzkin> {
    motzkin::enumerate_motzkin_table(max_size).into_iter().flatten()
}

fn open_up_to(m: u64, max_size: usize) -> impl Iterator<Item = Lmt> {
    (1..=max_size).flat_map(move |n| lambda::enumerate_open(m, n).unwrap_or_default())
}

/// Both roundtrips and the count bijection for every family.
pub fn suite_roundtrips(max_size: usize, max_open_size: usize, max_m: u64) -> SuiteReport {
    let mut rec = Recorder::new(
        "roundtrips",
        &[
            ("max_size", max_size as u64),
            ("max_open_size", max_open_size as u64),
            ("max_m", max_m),
        ],
    );
    let run = |rec: &mut Recorder, report: Result<crate::family::AuditReport, crate::Error>| match report {
        Ok(report) => {
            for size in &report.sizes {
                rec.check(&format!("{}: roundtrips and counts", report.family), size.roundtrips_ok, || {
                    format!(
                        "n={} base_count={} structured_count={}",
                        size.n, size.base_count, size.structured_count
                    )
                });
            }
            rec.check(&format!("{}: default in family", report.family), report.default_ok, String::new);
        }
        Err(e) => rec.check("audit", false, || e.to_string()),
    };
    run(&mut rec, audit_family(&ClosableFamily::STRUCTURAL, max_size));
    run(&mut rec, audit_family(&ClosableFamily::COUNTER, max_size));
    run(&mut rec, audit_family(&UcsFamily, max_size));
    for m in 0..=max_m {
        run(&mut rec, audit_family(&OpenFamilies.at(m), max_open_size));
    }
    rec.finish()
}

/// `size111 = size012 + 1` on every representation.
pub fn suite_prop1(max_size: usize, max_open_size: usize, max_m: u64) -> SuiteReport {
    let mut rec = Recorder::new(
        "prop1",
        &[
            ("max_size", max_size as u64),
            ("max_open_size", max_open_size as u64),
            ("max_m", max_m),
        ],
    );
    for t in motzkin_up_to(max_size) {
        rec.check("motzkin", t.size111() == t.size012() + 1, || t.to_string());
    }
    for c in closable::enumerate_closable_table(max_size).into_iter().flatten() {
        rec.check("closable", c.size111() == c.size012() + 1, || c.to_string());
        let m = closable::closable2motzkin(&c);
        rec.check("closable size preserved", c.size111() == m.size111(), || c.to_string());
    }
    for u in ucs::enumerate_ucs_table(max_size).into_iter().flatten() {
        rec.check("ucs", u.size111() == u.size012() + 1, || u.to_string());
    }
    for m in 0..=max_m {
        for t in open_up_to(m, max_open_size) {
            rec.check("lmt", t.size111() == t.size012() + 1, || t.to_string());
            match lambda::lmt_to_open(m, &t) {
                Ok(o) => rec.check("open", o.size111() == o.size012() + 1, || o.to_string()),
                Err(e) => rec.check("open", false, || format!("{t}: {e}")),
            }
        }
    }
    rec.finish()
}

/// Flag-based vs counter-based predicates, and monotonicity in the counter.
pub fn suite_equivalences(max_size: usize, max_counter: u64) -> SuiteReport {
    let mut rec = Recorder::new(
        "equivalences",
        &[("max_size", max_size as u64), ("max_counter", max_counter)],
    );
    for t in motzkin_up_to(max_size) {
        let closable = motzkin::is_closable(&t);
        rec.check("is_closable = isClosable", closable == motzkin::is_closable_counted(&t), || {
            t.to_string()
        });
        let ucs = motzkin::is_ucs(&t);
        rec.check("is_ucs = ucs1", ucs == motzkin::ucs1(&t), || t.to_string());
        rec.check("is_ucs implies is_closable", !ucs || closable, || t.to_string());
        rec.check(
            "is_ucs_aux(false) = ucs1_aux(0)",
            motzkin::is_ucs_aux(&t, false) == motzkin::ucs1_aux(&t, 0),
            || t.to_string(),
        );
        rec.check(
            "is_ucs_aux(true) = ucs1_aux(1)",
            motzkin::is_ucs_aux(&t, true) == motzkin::ucs1_aux(&t, 1),
            || t.to_string(),
        );
        let lifted = motzkin::l(t.clone());
        rec.check("isClosable(l m)", motzkin::is_closable_counted(&lifted), || lifted.to_string());
        for n in 0..=max_counter {
            let here = motzkin::is_closable2(&t, n);
            rec.check(
                "isClosable2 m n -> isClosable2 m (n+1)",
                !here || motzkin::is_closable2(&t, n + 1),
                || format!("{t} at n={n}"),
            );
        }
    }
    rec.finish()
}

/// A skeleton has a closed labeling iff it is closable.
pub fn suite_prop2(max_size: usize, max_structured_size: usize) -> SuiteReport {
    let mut rec = Recorder::new(
        "prop2",
        &[
            ("max_size", max_size as u64),
            ("max_structured_size", max_structured_size as u64),
        ],
    );
    for mt in motzkin_up_to(max_size) {
        let exists = !lambda::count_labelings(0, &mt).is_zero();
        rec.check("closed labeling exists <=> is_closable", exists == motzkin::is_closable(&mt), || {
            mt.to_string()
        });
    }
    for c in closable::enumerate_closable_table(max_structured_size).into_iter().flatten() {
        let mt = closable::closable2motzkin(&c);
        let labelings = lambda::enumerate_labelings(0, &mt);
        rec.check("closable has a closed labeling", !labelings.is_empty(), || c.to_string());
        if let Some(t) = labelings.first() {
            rec.check(
                "closable labeling is closed with that skeleton",
                lambda::is_closed(t) && lambda::skeleton(t) == mt,
                || format!("{c} -> {t}"),
            );
        }
    }
    rec.finish()
}

/// Exactly one m-open labeling iff every leaf sees exactly one available binder.
pub fn suite_prop4(max_size: usize, max_m: u64, max_general_size: usize) -> SuiteReport {
    let mut rec = Recorder::new(
        "prop4",
        &[
            ("max_size", max_size as u64),
            ("max_m", max_m),
            ("max_general_size", max_general_size as u64),
        ],
    );
    let one = BigUint::one();
    for mt in motzkin_up_to(max_size) {
        let unique = lambda::count_labelings(0, &mt) == one;
        rec.check("unique closed labeling <=> is_ucs", unique == motzkin::is_ucs(&mt), || {
            mt.to_string()
        });
        rec.check("unique closed labeling <=> ucs1", unique == motzkin::ucs1(&mt), || {
            mt.to_string()
        });
    }
    for mt in motzkin_up_to(max_general_size) {
        for m in 0..=max_m {
            let count = lambda::count_labelings(m, &mt);
            rec.check(
                "count_labelings(m) = 1 <=> ucs1_aux(m)",
                (count == one) == motzkin::ucs1_aux(&mt, m),
                || format!("{mt} at m={m}"),
            );
            rec.check("count_labelings = leaf product", count == lambda::leaf_product(m, &mt), || {
                format!("{mt} at m={m}")
            });
            let listed = lambda::enumerate_labelings(m, &mt);
            rec.check(
                "count_labelings = number of labelings",
                count == BigUint::from(listed.len()),
                || format!("{mt} at m={m}"),
            );
        }
    }
    rec.finish()
}

/// Skeleton/labeling/openness properties over every term whose leaves are in
/// scope or exceed it by exactly one (so non-open terms are covered too).
pub fn suite_openness(max_size: usize, max_m: u64) -> SuiteReport {
    let mut rec = Recorder::new("openness", &[("max_size", max_size as u64), ("max_m", max_m)]);
    for m in 0..=max_m {
        for n in 1..=max_size {
            for t in lambda::enumerate_lmt_bounded(m, n).unwrap_or_default() {
                let mt = lambda::skeleton(&t);
                let min = lambda::minimal_openness(&t);
                rec.check("skeleton preserves size", mt.size111() == t.size111(), || t.to_string());
                rec.check("lmt_minimal_openness", lambda::is_open(min, &t), || t.to_string());
                rec.check(
                    "label_skeletonK",
                    lambda::label_check(min, &mt, &t),
                    || t.to_string(),
                );
                for m1 in 0..=min + 3 {
                    let open = lambda::is_open(m1, &t);
                    let labeled = lambda::label_check(m1, &mt, &t);
                    rec.check("minimality", open == (m1 >= min), || format!("{t} at m={m1}"));
                    rec.check("skeleton_is_open_eq", labeled == open, || format!("{t} at m={m1}"));
                    if labeled {
                        for m2 in m1..=m1 + 3 {
                            rec.check("label_mon", lambda::label_check(m2, &mt, &t), || {
                                format!("{t} from m={m1} to m={m2}")
                            });
                        }
                    }
                }
            }
        }
    }
    for mt in motzkin_up_to(max_size) {
        for m in 0..=max_m {
            for t in lambda::enumerate_labelings(m, &mt) {
                rec.check(
                    "skeleton_labelK",
                    lambda::skeleton(&t) == mt && lambda::label_check(m, &mt, &t),
                    || format!("{mt} -> {t} at m={m}"),
                );
            }
        }
    }
    rec.finish()
}

/// Seeded checks beyond exhaustive reach: structural generator soundness and
/// the characterizations on sampled large skeletons.
pub fn suite_generators(samples: u64, fuel: u32, seed: u64) -> SuiteReport {
    let mut rec = Recorder::new(
        "generators",
        &[("samples", samples), ("fuel", u64::from(fuel)), ("seed", seed)],
    );
    let mut rng = Rng::new(seed);
    let one = BigUint::one();
    for _ in 0..samples {
        let c = gen::gen_closable_struct(fuel, &mut rng);
        rec.check("gen_closable_struct is closable", motzkin::is_closable(&c), || c.to_string());
        let u = gen::gen_ucs_struct(fuel, &mut rng);
        rec.check("gen_ucs_struct is ucs", motzkin::is_ucs(&u) && motzkin::ucs1(&u), || {
            u.to_string()
        });
        for m in 0..=2 {
            let t = gen::gen_open_struct(m, fuel, &mut rng);
            rec.check("gen_open_struct is m-open", lambda::is_open(m, &t), || {
                format!("{t} at m={m}")
            });
        }
        let t = gen::gen_motzkin(fuel, &mut rng);
        rec.check(
            "closed labeling exists <=> is_closable",
            !lambda::count_labelings(0, &t).is_zero() == motzkin::is_closable(&t),
            || t.to_string(),
        );
        rec.check(
            "unique closed labeling <=> is_ucs",
            (lambda::count_labelings(0, &t) == one) == motzkin::is_ucs(&t),
            || t.to_string(),
        );
        rec.check("size111 = size012 + 1", t.size111() == t.size012() + 1, || t.to_string());
        let fam = ClosableFamily::STRUCTURAL;
        if let Ok(s) = fam.to_structured(&c) {
            rec.check("closable roundtrip", fam.to_base(&s) == c, || c.to_string());
        } else {
            rec.check("closable roundtrip", false, || c.to_string());
        }
    }
    rec.finish()
}

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 7] = [
    "roundtrips",
    "prop1",
    "equivalences",
    "prop2",
    "prop4",
    "openness",
    "generators",
];

/// Bounds used by [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_size: usize,
    pub max_open_size: usize,
    pub max_m: u64,
    pub max_counter: u64,
    pub samples: u64,
    pub fuel: u32,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_size: 12,
            max_open_size: 8,
            max_m: 2,
            max_counter: 5,
            samples: 10_000,
            fuel: 10,
            seed: 42,
        }
    }
}

/// Runs one suite by name; `None` for unknown names.
pub fn run_suite(name: &str, b: &Bounds) -> Option<SuiteReport> {
    let report = match name {
        "roundtrips" => suite_roundtrips(b.max_size, b.max_open_size, b.max_m),
        "prop1" => suite_prop1(b.max_size, b.max_open_size, b.max_m),
        "equivalences" => suite_equivalences(b.max_size, b.max_counter),
        "prop2" => suite_prop2(b.max_size, b.max_size.min(10)),
        "prop4" => suite_prop4(b.max_size, b.max_m.max(3), b.max_size.min(10)),
        "openness" => suite_openness(b.max_open_size, b.max_m),
        "generators" => suite_generators(b.samples, b.fuel, b.seed),
        _ => return None,
    };
    Some(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(suite_roundtrips(6, 5, 1).pass);
        assert!(suite_prop1(6, 5, 2).pass);
        assert!(suite_equivalences(7, 3).pass);
        assert!(suite_prop2(7, 6).pass);
        assert!(suite_prop4(7, 2, 6).pass);
        assert!(suite_openness(5, 1).pass);
        assert!(suite_generators(200, 6, 1).pass);
    }

    #[test]
    fn recorder_keeps_counterexamples_sorted() {
        let mut rec = Recorder::new("demo", &[("max_size", 1)]);
        rec.check("p", false, || "z".into());
        rec.check("p", true, || unreachable!());
        rec.check("p", false, || "a".into());
        let report = rec.finish();
        assert!(!report.pass);
        assert_eq!(report.failure_count, 2);
        assert_eq!(report.failures[0].counterexample, "a");
    }

    #[test]
    fn json_is_reproducible() {
        let a = suite_prop2(6, 5).to_json();
        let b = suite_prop2(6, 5).to_json();
        assert_eq!(a, b);
        assert!(!a.contains("duration"));
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &Bounds::default()).is_none());
    }
}
