//! Named example specs: Fibonacci, spiral, period doubling and several
//! alternative representations of `tail(fib)` and `even(fib)`.

use crate::spec::{MorphicSpec, RawSpec};

fn build(raw: RawSpec) -> MorphicSpec {
    raw.validate().expect("bundled spec is valid")
}

/// `0 -> 01, 1 -> 0`.
pub fn fib() -> MorphicSpec {
    build(fib_raw())
}

pub fn fib_raw() -> RawSpec {
    RawSpec::compact("01", "0", &[("0", "01"), ("1", "0")])
}

/// `2 -> 21, 1 -> 01, 0 -> 0` coded by `0 -> 0, 1, 2 -> 1`.
pub fn spir() -> MorphicSpec {
    build(spir_raw())
}

pub fn spir_raw() -> RawSpec {
    RawSpec::compact("012", "2", &[("2", "21"), ("1", "01"), ("0", "0")])
        .with_coding("01", &[("0", "0"), ("1", "1"), ("2", "1")])
}

/// `0 -> 01, 1 -> 00`.
pub fn period_doubling() -> MorphicSpec {
    build(period_doubling_raw())
}

pub fn period_doubling_raw() -> RawSpec {
    RawSpec::compact("01", "0", &[("0", "01"), ("1", "00")])
}

fn g_fib_shape() -> RawSpec {
    RawSpec::compact("012", "1", &[("0", "2"), ("1", "10"), ("2", "10")])
}

/// `g(0) = 2, g(1) = g(2) = 10` from 1, coded `1 -> 1, 0, 2 -> 0`: `tail(fib)`
/// with the tree shape of `fib`.
pub fn tail_fib_same_shape() -> MorphicSpec {
    build(tail_fib_same_shape_raw())
}

pub fn tail_fib_same_shape_raw() -> RawSpec {
    g_fib_shape().with_coding("01", &[("0", "0"), ("1", "1"), ("2", "0")])
}

/// Same `g` coded `0 -> 1, 1, 2 -> 0`: `fib` again.
pub fn fib_recoded() -> MorphicSpec {
    build(fib_recoded_raw())
}

pub fn fib_recoded_raw() -> RawSpec {
    g_fib_shape().with_coding("01", &[("0", "1"), ("1", "0"), ("2", "0")])
}

/// `0 -> 0122, 1 -> 01220, 2 -> 0120` coded `0, 1 -> 0, 2 -> 1`: `even(fib)`.
pub fn even_fib_don() -> MorphicSpec {
    build(even_fib_don_raw())
}

pub fn even_fib_don_raw() -> RawSpec {
    RawSpec::compact(
        "012",
        "0",
        &[("0", "0122"), ("1", "01220"), ("2", "0120")],
    )
    .with_coding("01", &[("0", "0"), ("1", "0"), ("2", "1")])
}

/// `0 -> 01, 1 -> 2, 2 -> 31, 3 -> 04, 4 -> 0` coded `0, 1 -> 0` and
/// `2, 3, 4 -> 1`. Conjectured, not proven, to equal `even(fib)`.
pub fn even_fib_conjectured() -> MorphicSpec {
    build(even_fib_conjectured_raw())
}

pub fn even_fib_conjectured_raw() -> RawSpec {
    RawSpec::compact(
        "01234",
        "0",
        &[("0", "01"), ("1", "2"), ("2", "31"), ("3", "04"), ("4", "0")],
    )
    .with_coding(
        "01",
        &[("0", "0"), ("1", "0"), ("2", "1"), ("3", "1"), ("4", "1")],
    )
}

/// Every bundled spec with its file stem.
pub fn all() -> Vec<(&'static str, MorphicSpec)> {
    vec![
        ("fib", fib()),
        ("spir", spir()),
        ("period-doubling", period_doubling()),
        ("tail-fib", tail_fib_same_shape()),
        ("fib-recoded", fib_recoded()),
        ("even-fib-don", even_fib_don()),
        ("even-fib-conjectured", even_fib_conjectured()),
    ]
}
