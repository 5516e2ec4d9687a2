#![allow(dead_code)]

use cutproject::exactnum::{parse_expr, Context, ExactNumber, GeneratorContext};
use cutproject::scheme::{Lattice, Scheme, ZSpan};
use cutproject::vector::Vector;
use cutproject::window::IntervalUnion;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn e(ctx: &Context, s: &str) -> ExactNumber {
    parse_expr(ctx, s).unwrap()
}

pub fn halffib() -> Scheme {
    let ctx = GeneratorContext::golden();
    let basis = vec![
        vec![e(&ctx, "1"), e(&ctx, "tau")],
        vec![e(&ctx, "1"), e(&ctx, "-1/tau")],
    ];
    Scheme::new(Lattice::new(&ctx, 1, basis).unwrap()).unwrap()
}

/// `Z[tau]^2` as a group of plane translations.
pub fn tau_square(ctx: &Context) -> ZSpan {
    let v = |x: &str, y: &str| vec![e(ctx, x), e(ctx, y)];
    ZSpan::new(ctx, 2, vec![v("1", "0"), v("tau", "0"), v("0", "1"), v("0", "tau")]).unwrap()
}

/// `p + q tau` with `p = pn/pd`, `q = qn/qd`.
pub type Golden = (i64, i64, i64, i64);

pub fn golden(ctx: &Context, g: Golden) -> ExactNumber {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    ExactNumber::from_coeffs(ctx, vec![r(g.0, g.1), r(g.2, g.3)]).unwrap()
}

pub fn golden_strategy(span: i64, den: i64) -> impl Strategy<Value = Golden> {
    (-span..=span, 1..=den, -span..=span, 1..=den)
}

/// Intervals `[a, a + len)` with positive lengths, merged into a union.
pub fn union_from(ctx: &Context, parts: &[(Golden, Golden)]) -> IntervalUnion {
    let ivs = parts
        .iter()
        .map(|&(a, l)| {
            let a = golden(ctx, a);
            let len = golden(ctx, (l.0.abs() + 1, l.1, l.2.abs(), l.3));
            let b = &a + &len;
            (a, b)
        })
        .collect();
    IntervalUnion::new(ctx, ivs).unwrap()
}

pub fn union_strategy(max: usize) -> impl Strategy<Value = Vec<(Golden, Golden)>> {
    prop::collection::vec((golden_strategy(6, 4), golden_strategy(2, 3)), 1..=max)
}

pub fn point(ctx: &Context, xs: &[Golden]) -> Vector {
    xs.iter().map(|&g| golden(ctx, g)).collect()
}
