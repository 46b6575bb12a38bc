use mubs_core::geometry::canonicalize;
use mubs_core::{inner_product_sq, ExponentVector, Field, GaloisRing, PointKind};
use proptest::prelude::*;

/// |Σ_x ω_m^(u_x − v_x)|² in floating point.
fn float_sq(u: &[u8], v: &[u8], m: u8) -> f64 {
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for (&a, &b) in u.iter().zip(v) {
        let t = 2.0 * std::f64::consts::PI * (a as f64 - b as f64) / m as f64;
        re += t.cos();
        im += t.sin();
    }
    re * re + im * im
}

fn vector_pair() -> impl Strategy<Value = (u8, Vec<u8>, Vec<u8>)> {
    (prop::sample::select(vec![3u8, 4, 5, 7]), 1usize..40).prop_flat_map(|(m, len)| {
        (
            Just(m),
            prop::collection::vec(0..m, len),
            prop::collection::vec(0..m, len),
        )
    })
}

fn ev(m: u8, e: &[u8]) -> ExponentVector {
    ExponentVector::new(m, e.to_vec()).unwrap()
}

proptest! {
    #[test]
    fn inner_product_is_symmetric((m, u, v) in vector_pair()) {
        let a = inner_product_sq(&ev(m, &u), &ev(m, &v)).unwrap();
        let b = inner_product_sq(&ev(m, &v), &ev(m, &u)).unwrap();
        prop_assert_eq!(a.value, b.value);
    }

    #[test]
    fn global_phase_does_not_change_the_value((m, u, v) in vector_pair(), c in 0u8..7) {
        let shifted: Vec<u8> = u.iter().map(|&e| (e + c) % m).collect();
        let a = inner_product_sq(&ev(m, &u), &ev(m, &v)).unwrap();
        let b = inner_product_sq(&ev(m, &shifted), &ev(m, &v)).unwrap();
        prop_assert_eq!(a.value, b.value);
    }

    #[test]
    fn exact_value_matches_float((m, u, v) in vector_pair()) {
        let exact = inner_product_sq(&ev(m, &u), &ev(m, &v)).unwrap();
        let float = float_sq(&u, &v, m);
        match exact.value {
            Some(k) => prop_assert!((k as f64 - float).abs() < 1e-8, "{} vs {}", k, float),
            // only odd prime roots can give irrational values
            None => prop_assert!(m != 4),
        }
    }

    #[test]
    fn self_product_is_length_squared((m, u, _v) in vector_pair()) {
        let a = inner_product_sq(&ev(m, &u), &ev(m, &u)).unwrap();
        prop_assert_eq!(a.value, Some((u.len() * u.len()) as i64));
    }

    #[test]
    fn trace_is_additive(p_n in prop::sample::select(vec![(3u32, 3usize), (5, 2), (7, 2), (3, 4)]), i in 0usize..2401, j in 0usize..2401) {
        let (p, n) = p_n;
        let f = Field::new(p, n, None).unwrap();
        let q = f.order() as usize;
        let (x, y) = (f.element(i % q), f.element(j % q));
        prop_assert_eq!(f.trace(f.add(x, y)), (f.trace(x) + f.trace(y)) % p);
        prop_assert_eq!(f.trace(f.frobenius(x)), f.trace(x));
    }

    #[test]
    fn pg_point_ignores_unit_scaling(v in prop::collection::vec(0u8..5, 1..8), lambda in 1u8..5) {
        prop_assume!(v.iter().any(|&e| e != 0));
        let w: Vec<u8> = v.iter().map(|&e| e * lambda % 5).collect();
        let a = canonicalize(&v, 5, PointKind::Pg).unwrap();
        let b = canonicalize(&w, 5, PointKind::Pg).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn phg_point_ignores_unit_scaling(v in prop::collection::vec(0u8..4, 1..8)) {
        prop_assume!(v.iter().any(|&e| e % 2 == 1));
        let w: Vec<u8> = v.iter().map(|&e| e * 3 % 4).collect();
        let a = canonicalize(&v, 4, PointKind::Phg).unwrap();
        let b = canonicalize(&w, 4, PointKind::Phg).unwrap();
        prop_assert_eq!(a.clone(), b);
        // the representative is itself a scalar multiple of v
        prop_assert!(a.rep() == v.as_slice() || a.rep() == w.as_slice());
    }

    #[test]
    fn ring_frobenius_is_multiplicative(n in 1usize..5, i in 0usize..65536, j in 0usize..65536) {
        let r = GaloisRing::new(n, None).unwrap();
        let all: Vec<_> = r.elements().collect();
        let (x, y) = (all[i % all.len()], all[j % all.len()]);
        prop_assert_eq!(r.frobenius(r.mul(x, y)), r.mul(r.frobenius(x), r.frobenius(y)));
        prop_assert_eq!(r.trace(r.add(x, y)), (r.trace(x) + r.trace(y)) % 4);
    }
}
