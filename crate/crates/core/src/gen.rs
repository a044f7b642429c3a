//! Seeded random generation.
//!
//! Every generator takes a `fuel` budget that bounds its recursion depth:
//! fuel 0 always produces a base case, and each recursive call (on every
//! child of a binary node) receives `fuel - 1`.

use crate::closable::{self, Closable};
use crate::family::{rec_to_structured, structured_to_rec, Family, Validated};
use crate::lambda::{self, Lmt, OpenTerm};
use crate::motzkin::{self, Motzkin};
use crate::error::Result;
use crate::ucs::{self, ClosedAbove, Ucs};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`, by rejection on the top bits.
    ///
    /// # Panics
    ///
    /// Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        if n == 1 {
            return 0;
        }
        let bits = 64 - (n - 1).leading_zeros();
        loop {
            let x = self.next_u64() >> (64 - bits);
            if x < n {
                return x;
            }
        }
    }

    /// A new generator seeded from this one's stream.
    pub fn split(&mut self) -> Rng {
        Rng::new(self.next_u64())
    }
}

/// A fuel-bounded random generator.
pub trait SizedGen<T> {
    fn generate(&self, fuel: u32, rng: &mut Rng) -> T;
}

impl<T, F: Fn(u32, &mut Rng) -> T> SizedGen<T> for F {
    fn generate(&self, fuel: u32, rng: &mut Rng) -> T {
        self(fuel, rng)
    }
}

/// Uniform choice among constructors; fuel 0 forces the leaf.
pub fn gen_motzkin(fuel: u32, rng: &mut Rng) -> Motzkin {
    if fuel == 0 {
        return Motzkin::V;
    }
    match rng.below(3) {
        0 => Motzkin::V,
        1 => motzkin::l(gen_motzkin(fuel - 1, rng)),
        _ => {
            let p = gen_motzkin(fuel - 1, rng);
            let q = gen_motzkin(fuel - 1, rng);
            motzkin::a(p, q)
        }
    }
}

/// Like [`gen_motzkin`] with leaf indices uniform in `0..=fuel` (top-level fuel).
pub fn gen_lmt(fuel: u32, rng: &mut Rng) -> Lmt {
    fn go(fuel: u32, max_index: u64, rng: &mut Rng) -> Lmt {
        let leaf = |rng: &mut Rng| lambda::var(rng.below(max_index + 1));
        if fuel == 0 {
            return leaf(rng);
        }
        match rng.below(3) {
            0 => leaf(rng),
            1 => lambda::lam(go(fuel - 1, max_index, rng)),
            _ => {
                let p = go(fuel - 1, max_index, rng);
                let q = go(fuel - 1, max_index, rng);
                lambda::app(p, q)
            }
        }
    }
    go(fuel, u64::from(fuel), rng)
}

/// Outcome of one generate-and-test run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct FilterStats {
    pub attempts: u32,
    pub discarded: u32,
    pub exhausted: bool,
}

/// Generate and test: at most `filter_max` draws, then the family default.
pub fn gen_filtered<F, G>(fd: &F, base_gen: &G, fuel: u32, rng: &mut Rng, filter_max: u32) -> (F::Base, FilterStats)
where
    F: Family + ?Sized,
    G: SizedGen<F::Base> + ?Sized,
{
    let mut stats = FilterStats {
        attempts: 0,
        discarded: 0,
        exhausted: false,
    };
    while stats.attempts < filter_max {
        stats.attempts += 1;
        let candidate = base_gen.generate(fuel, rng);
        if fd.filter(&candidate) {
            return (candidate, stats);
        }
        stats.discarded += 1;
    }
    stats.exhausted = true;
    (fd.default_base(), stats)
}

/// Validated values drawn through the structured representation.
pub fn gen_from_structured<'f, F, G>(
    fd: &'f F,
    structured_gen: G,
) -> impl Fn(u32, &mut Rng) -> Result<Validated<'f, F>>
where
    F: Family + ?Sized,
    G: SizedGen<F::Structured>,
{
    move |fuel, rng| structured_to_rec(fd, &structured_gen.generate(fuel, rng))
}

/// Structured values drawn through the validated representation.
pub fn gen_from_validated<'f, F, G>(fd: &'f F, validated_gen: G) -> impl Fn(u32, &mut Rng) -> F::Structured + 'f
where
    F: Family + ?Sized,
    G: SizedGen<Validated<'f, F>> + 'f,
{
    move |fuel, rng| rec_to_structured(fd, &validated_gen.generate(fuel, rng))
}

/// Derived generator for [`Closable`]: uniform among `CLam`/`CApp`.
pub fn gen_closable(fuel: u32, rng: &mut Rng) -> Closable {
    if fuel == 0 {
        return closable::clam(gen_motzkin(0, rng));
    }
    match rng.below(2) {
        0 => closable::clam(gen_motzkin(fuel - 1, rng)),
        _ => {
            let p = gen_closable(fuel - 1, rng);
            let q = gen_closable(fuel - 1, rng);
            closable::capp(p, q)
        }
    }
}

pub fn gen_closed_above(fuel: u32, rng: &mut Rng) -> ClosedAbove {
    if fuel == 0 || rng.below(2) == 0 {
        return ClosedAbove::CV;
    }
    let p = gen_closed_above(fuel - 1, rng);
    let q = gen_closed_above(fuel - 1, rng);
    ucs::cb(p, q)
}

/// Derived generator for [`Ucs`]: uniform among `UL`/`UA`.
pub fn gen_ucs(fuel: u32, rng: &mut Rng) -> Ucs {
    if fuel == 0 {
        return ucs::ul(ClosedAbove::CV);
    }
    match rng.below(2) {
        0 => ucs::ul(gen_closed_above(fuel - 1, rng)),
        _ => {
            let p = gen_ucs(fuel - 1, rng);
            let q = gen_ucs(fuel - 1, rng);
            ucs::ua(p, q)
        }
    }
}

/// Closable skeleton generator; `binders` counts the unary nodes above.
pub fn gen_closable_step(fuel: u32, binders: u32, rng: &mut Rng) -> Motzkin {
    let stop = || {
        if binders == 0 {
            motzkin::l(Motzkin::V)
        } else {
            Motzkin::V
        }
    };
    if fuel == 0 {
        return stop();
    }
    match rng.below(3) {
        0 => stop(),
        1 => motzkin::l(gen_closable_step(fuel - 1, binders + 1, rng)),
        _ => {
            let p = gen_closable_step(fuel - 1, binders, rng);
            let q = gen_closable_step(fuel - 1, binders, rng);
            motzkin::a(p, q)
        }
    }
}

pub fn gen_closable_struct(fuel: u32, rng: &mut Rng) -> Motzkin {
    gen_closable_step(fuel, 0, rng)
}

/// Uniquely closable skeleton generator: a binder is only offered on a
/// binder-free path, and a bare leaf only below one.
pub fn gen_ucs_step(fuel: u32, under_binder: bool, rng: &mut Rng) -> Motzkin {
    let stop = || {
        if under_binder {
            Motzkin::V
        } else {
            motzkin::l(Motzkin::V)
        }
    };
    if fuel == 0 {
        return stop();
    }
    let branches = if under_binder { 2 } else { 3 };
    match (rng.below(branches), under_binder) {
        (0, _) => stop(),
        (1, true) => {
            let p = gen_ucs_step(fuel - 1, true, rng);
            let q = gen_ucs_step(fuel - 1, true, rng);
            motzkin::a(p, q)
        }
        (1, false) => motzkin::l(gen_ucs_step(fuel - 1, true, rng)),
        _ => {
            let p = gen_ucs_step(fuel - 1, false, rng);
            let q = gen_ucs_step(fuel - 1, false, rng);
            motzkin::a(p, q)
        }
    }
}

pub fn gen_ucs_struct(fuel: u32, rng: &mut Rng) -> Motzkin {
    gen_ucs_step(fuel, false, rng)
}

/// m-open term generator.
pub fn gen_open_struct(m: u64, fuel: u32, rng: &mut Rng) -> Lmt {
    if fuel == 0 {
        return if m > 0 {
            lambda::var(rng.below(m))
        } else {
            lambda::lam(lambda::var(0))
        };
    }
    let has_var = m > 0;
    let choice = rng.below(if has_var { 3 } else { 2 }) + u64::from(!has_var);
    match choice {
        0 => lambda::var(rng.below(m)),
        1 => lambda::lam(gen_open_struct(m + 1, fuel - 1, rng)),
        _ => {
            let p = gen_open_struct(m, fuel - 1, rng);
            let q = gen_open_struct(m, fuel - 1, rng);
            lambda::app(p, q)
        }
    }
}

/// Same distribution as [`gen_open_struct`], built with the checked
/// [`OpenTerm`] constructors.
pub fn gen_open_term(m: u64, fuel: u32, rng: &mut Rng) -> OpenTerm {
    let var = |rng: &mut Rng| OpenTerm::var(m, rng.below(m)).expect("index below m");
    let lam = |body| OpenTerm::lam(m, body).expect("body is (m+1)-open");
    if fuel == 0 {
        return if m > 0 {
            var(rng)
        } else {
            lam(OpenTerm::var(1, 0).expect("0 < 1"))
        };
    }
    let has_var = m > 0;
    let choice = rng.below(if has_var { 3 } else { 2 }) + u64::from(!has_var);
    match choice {
        0 => var(rng),
        1 => lam(gen_open_term(m + 1, fuel - 1, rng)),
        _ => {
            let p = gen_open_term(m, fuel - 1, rng);
            let q = gen_open_term(m, fuel - 1, rng);
            OpenTerm::app(p, q).expect("same openness")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closable::ClosableFamily;
    use crate::family::Family;
    use crate::motzkin::{is_closable, is_ucs};

    #[test]
    fn splitmix_reference_values() {
        // First outputs of SplitMix64 seeded with 1234567.
        let mut rng = Rng::new(1234567);
        assert_eq!(rng.next_u64(), 6457827717110365317);
        assert_eq!(rng.next_u64(), 3203168211198807973);
        assert_eq!(rng.next_u64(), 9817491932198370423);
    }

    #[test]
    fn below_is_in_range_and_covers() {
        let mut rng = Rng::new(7);
        let mut seen = [false; 5];
        for _ in 0..1000 {
            let x = rng.below(5) as usize;
            seen[x] = true;
        }
        assert!(seen.iter().all(|&s| s));
        assert_eq!(rng.below(1), 0);
    }

    #[test]
    fn fuel_zero_base_cases() {
        let mut rng = Rng::new(3);
        assert_eq!(gen_motzkin(0, &mut rng), Motzkin::V);
        assert_eq!(gen_lmt(0, &mut rng), lambda::var(0));
        assert_eq!(gen_closable_struct(0, &mut rng), motzkin::l(Motzkin::V));
        assert_eq!(gen_closable_step(0, 1, &mut rng), Motzkin::V);
        assert_eq!(gen_ucs_struct(0, &mut rng), motzkin::l(Motzkin::V));
        assert_eq!(gen_open_struct(0, 0, &mut rng), lambda::lam(lambda::var(0)));
        for _ in 0..50 {
            let x = gen_open_struct(2, 0, &mut rng);
            assert!(x == lambda::var(0) || x == lambda::var(1));
        }
    }

    #[test]
    fn filtered_with_no_tries_is_default() {
        let fam = ClosableFamily::STRUCTURAL;
        for seed in 0..20 {
            let mut rng = Rng::new(seed);
            let (value, stats) = gen_filtered(&fam, &gen_motzkin, 5, &mut rng, 0);
            assert_eq!(value, fam.default_base());
            assert!(stats.exhausted);
            assert_eq!(stats.attempts, 0);
        }
    }

    #[test]
    fn structural_generators_are_sound() {
        let mut rng = Rng::new(99);
        for _ in 0..2000 {
            assert!(is_closable(&gen_closable_struct(8, &mut rng)));
            assert!(is_ucs(&gen_ucs_struct(8, &mut rng)));
            for m in 0..3 {
                assert!(lambda::is_open(m, &gen_open_struct(m, 8, &mut rng)));
            }
        }
    }

    #[test]
    fn open_term_generator_matches_lmt_generator() {
        for seed in 0..200 {
            for m in 0..3 {
                let a = gen_open_struct(m, 7, &mut Rng::new(seed));
                let b = gen_open_term(m, 7, &mut Rng::new(seed));
                assert_eq!(lambda::open_to_lmt(&b), a);
            }
        }
    }
}
