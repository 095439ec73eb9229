use proptest::prelude::*;

use blanks::analyze::{analyze, default_bound};
use blanks::format::{decode_arrangement, decode_report, encode_arrangement, encode_report};
use blanks::generators::{
    gen_convex_fixture, gen_grid, gen_plane_longbox, gen_random_item, gen_staircase, CakeKind, FuzzConfig,
};

fn kind() -> impl Strategy<Value = CakeKind> {
    prop_oneof![
        Just(CakeKind::Rectangle),
        (1usize..=6).prop_map(CakeKind::Rectilinear),
        Just(CakeKind::Plane),
        Just(CakeKind::Convex),
    ]
}

proptest! {
    #[test]
    fn random_arrangements_round_trip(seed in any::<u64>(), index in 0u64..1000, m in 3usize..=10, kind in kind()) {
        let a = gen_random_item(&FuzzConfig::new(seed, m, kind), index);
        let bytes = encode_arrangement(&a);
        let back = decode_arrangement(&bytes).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(encode_arrangement(&back), bytes);
    }
}

#[test]
fn constructions_and_reports_round_trip() {
    let all = [
        gen_grid(10).unwrap(),
        gen_staircase(9, 3).unwrap(),
        gen_plane_longbox(7).unwrap(),
        gen_convex_fixture(5).unwrap(),
    ];
    for a in &all {
        assert_eq!(&decode_arrangement(&encode_arrangement(a)).unwrap(), a);
        let r = analyze(a, default_bound(a)).unwrap();
        let bytes = encode_report(&r);
        assert_eq!(encode_report(&decode_report(&bytes).unwrap()), bytes);
    }
}
