mod common;

use common::*;
use cutproject::exactnum::{ExactNumber, GeneratorContext, Sign};
use cutproject::vector;
use cutproject::window::{HalfPlane, Polygon};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn union_identities(a in union_strategy(4), b in union_strategy(4), xs in prop::collection::vec(golden_strategy(7, 4), 12)) {
        let ctx = GeneratorContext::golden();
        let (a, b) = (union_from(&ctx, &a), union_from(&ctx, &b));
        let u = a.union(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        let d = a.subtract(&b).unwrap();
        prop_assert_eq!(&u.measure() + &i.measure(), &a.measure() + &b.measure());
        prop_assert_eq!(d.union(&i).unwrap(), a.clone());
        prop_assert!(d.intersect(&b).unwrap().is_empty());
        prop_assert!(i.is_subset(&a).unwrap() && a.is_subset(&u).unwrap());
        for x in xs.iter().map(|&g| golden(&ctx, g)).chain(a.left_endpoints().cloned()).chain(b.right_endpoints().cloned()) {
            let (ia, ib) = (a.contains(&x).unwrap(), b.contains(&x).unwrap());
            prop_assert_eq!(u.contains(&x).unwrap(), ia || ib);
            prop_assert_eq!(i.contains(&x).unwrap(), ia && ib);
            prop_assert_eq!(d.contains(&x).unwrap(), ia && !ib);
        }
    }

    #[test]
    fn translation_covariance(a in union_strategy(4), t in golden_strategy(5, 3), xs in prop::collection::vec(golden_strategy(7, 4), 12)) {
        let ctx = GeneratorContext::golden();
        let a = union_from(&ctx, &a);
        let t = golden(&ctx, t);
        let moved = a.translate(&t);
        prop_assert_eq!(moved.measure(), a.measure());
        prop_assert_eq!(moved.translate(&-&t), a.clone());
        for x in xs.iter().map(|&g| golden(&ctx, g)).chain(a.left_endpoints().cloned()).chain(a.right_endpoints().cloned()) {
            prop_assert_eq!(moved.contains(&(&x + &t)).unwrap(), a.contains(&x).unwrap());
        }
    }

    #[test]
    fn half_plane_split(
        pts in prop::collection::vec((golden_strategy(4, 3), golden_strategy(4, 3)), 3),
        n in (golden_strategy(3, 2), golden_strategy(3, 2)),
        c in golden_strategy(2, 3),
        closed in any::<bool>(),
    ) {
        let ctx = GeneratorContext::golden();
        let mut vs: Vec<_> = pts.iter().map(|&(x, y)| point(&ctx, &[x, y])).collect();
        let orient = vector::cross(&vector::sub(&vs[1], &vs[0]).unwrap(), &vector::sub(&vs[2], &vs[0]).unwrap()).unwrap();
        prop_assume!(orient.sign().unwrap() != Sign::Zero);
        if orient.sign().unwrap() == Sign::Negative {
            vs.swap(1, 2);
        }
        let normal = point(&ctx, &[n.0, n.1]);
        prop_assume!(!vector::is_zero(&normal));
        let p = Polygon::closed(vs).unwrap();
        let h = HalfPlane::new(normal, golden(&ctx, c), closed).unwrap();
        let parts = [p.clip(&h).unwrap(), p.clip(&h.complement()).unwrap()];
        let zero = ExactNumber::zero(&ctx);
        let area: ExactNumber = parts.iter().flatten().fold(zero, |acc, q| &acc + &q.area().unwrap());
        prop_assert_eq!(area, p.area().unwrap());
        let mut probes = p.probe_points().unwrap();
        for q in parts.iter().flatten() {
            probes.extend(q.probe_points().unwrap());
        }
        for x in probes {
            let inside: usize = parts.iter().flatten().map(|q| q.contains(&x).unwrap() as usize).sum();
            prop_assert_eq!(inside, p.contains(&x).unwrap() as usize, "at {}", vector::format(&x));
        }
    }
}
