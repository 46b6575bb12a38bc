use mubs::format::{family_from_json, family_to_json, FamilyDoc};
use mubs_core::{build, Construction};
use proptest::prelude::*;

fn cases() -> Vec<(Construction, u32, usize)> {
    vec![
        (Construction::Planar { poly: None }, 3, 1),
        (Construction::Planar { poly: Some(vec![0, 0, 1]) }, 3, 2),
        (Construction::Planar { poly: Some(vec![0, 1, 2]) }, 5, 1),
        (Construction::Alltop, 5, 1),
        (Construction::Alltop, 7, 1),
        (Construction::Symplectic { s: 1 }, 3, 3),
        (Construction::GaloisRing, 2, 1),
        (Construction::GaloisRing, 2, 3),
    ]
}

#[test]
fn json_round_trip_is_exact() {
    for (c, p, n) in cases() {
        let f = build(&c, p, n, None).unwrap();
        let bytes = family_to_json(&f).unwrap();
        let back = family_from_json(&bytes).unwrap();
        assert_eq!(back, f, "{c:?} p={p} n={n}");
        assert_eq!(family_to_json(&back).unwrap(), bytes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Any change to an exponent entry survives the round trip or is
    /// rejected; it is never silently repaired.
    #[test]
    fn edited_documents_round_trip_or_fail(case in 0usize..8, a in 0usize..64, b in 0usize..64, x in 0usize..64, e in 0u8..8) {
        let (c, p, n) = cases()[case].clone();
        let f = build(&c, p, n, None).unwrap();
        let mut doc = FamilyDoc::of(&f);
        let q = doc.q;
        doc.bases[a % q][b % q][x % q] = e;
        let text = serde_json::to_vec(&doc).unwrap();
        match family_from_json(&text) {
            Ok(g) => {
                prop_assert!(e < doc.m);
                prop_assert_eq!(g.vector(a % q, b % q).entries()[x % q], e);
            }
            Err(_) => prop_assert!(e >= doc.m),
        }
    }
}
