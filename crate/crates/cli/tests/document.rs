use mclab_cli::document::TupleDocument;
use mclab_core::arveson::truncated_multishift;
use mclab_core::opcore::{random_commuting_tuple, random_nilpotent_tuple, seeded_rng};
use mclab_core::sample;
use mclab_core::OperatorTuple;
use proptest::prelude::*;

fn bitwise_equal(a: &OperatorTuple, b: &OperatorTuple) -> bool {
    a.n() == b.n()
        && a.dim() == b.dim()
        && a.ops().iter().zip(b.ops()).all(|(x, y)| {
            x.iter()
                .zip(y.iter())
                .all(|(p, q)| p.re.to_bits() == q.re.to_bits() && p.im.to_bits() == q.im.to_bits())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_is_bitwise(seed in any::<u64>(), dim in 1usize..7, n in 1usize..4, margin in 0.0f64..0.9, kind in 0u8..4) {
        let t = match kind {
            0 => random_commuting_tuple(dim, n, seed, margin),
            1 => random_nilpotent_tuple(dim, n, seed, margin),
            2 => sample::random_spherical_diagonal(dim, n, &mut seeded_rng(seed)),
            _ => truncated_multishift(n, 1 + dim % 3, 1),
        };
        let text = TupleDocument::from_tuple(&t, None).to_json();
        let back = TupleDocument::parse(&text).unwrap().to_tuple().unwrap();
        prop_assert!(bitwise_equal(&t, &back));
        prop_assert_eq!(TupleDocument::from_tuple(&back, None).to_json(), text);
    }

    #[test]
    fn truncated_documents_are_rejected(seed in any::<u64>(), dim in 1usize..5, cut in 1usize..40) {
        let t = random_commuting_tuple(dim, 2, seed, 0.1);
        let text = TupleDocument::from_tuple(&t, None).to_json();
        let cut = cut.min(text.len() - 1);
        prop_assert!(TupleDocument::parse(&text[..text.len() - cut]).is_err());
    }
}
