mod common;

use common::*;
use cutproject::exactnum::ExactNumber;
use cutproject::modelset::generate;
use cutproject::scheme::ExactBox;
use cutproject::window::Window;
use num_bigint::BigInt;
use proptest::prelude::*;

fn range(lo: i64, hi: i64, ctx: &cutproject::exactnum::Context) -> ExactBox {
    ExactBox::interval(ExactNumber::from_i64(ctx, lo), ExactNumber::from_i64(ctx, hi))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn monotone_in_window(a in union_strategy(3), b in union_strategy(2)) {
        let s = halffib();
        let ctx = s.context().clone();
        let small = union_from(&ctx, &a);
        let big = small.union(&union_from(&ctx, &b)).unwrap();
        let r = range(-15, 15, &ctx);
        let ps = generate(&s, &Window::Intervals(small.clone()), &r).unwrap();
        let pb = generate(&s, &Window::Intervals(big), &r).unwrap();
        let zs: Vec<_> = pb.points.iter().map(|p| p.z.clone()).collect();
        for p in &ps.points {
            prop_assert!(zs.contains(&p.z));
        }
        // the sample is exactly the window filter of the bigger one
        let filtered: Vec<_> = pb.points.iter().filter(|p| small.contains(&p.internal[0]).unwrap()).map(|p| p.z.clone()).collect();
        let got: Vec<_> = ps.points.iter().map(|p| p.z.clone()).collect();
        prop_assert_eq!(filtered, got);
    }

    #[test]
    fn lattice_translation_covariance(a in union_strategy(3), z1 in -3i64..=3, z2 in -3i64..=3) {
        let s = halffib();
        let ctx = s.context().clone();
        let w = union_from(&ctx, &a);
        let gamma = s.lattice_vector(vec![BigInt::from(z1), BigInt::from(z2)]);
        let (shift_x, shift_y) = (&gamma.physical()[0], &gamma.internal()[0]);
        let r = range(-12, 12, &ctx);
        let moved_r = ExactBox::interval(&r.lo[0] + shift_x, &r.hi[0] + shift_x);
        let base = generate(&s, &Window::Intervals(w.clone()), &r).unwrap();
        let moved = generate(&s, &Window::Intervals(w.translate(shift_y)), &moved_r).unwrap();
        prop_assert_eq!(base.len(), moved.len());
        for (p, q) in base.points.iter().zip(&moved.points) {
            prop_assert_eq!(&(&p.x[0] + shift_x), &q.x[0]);
            prop_assert_eq!(&(&p.internal[0] + shift_y), &q.internal[0]);
        }
    }
}
