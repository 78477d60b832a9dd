use cremona_core::linalg::{rat, RatMatrix};
use cremona_core::maps::{
    classify_growth, dynamical_degree_estimate, henon, iterate_degrees, jonquieres, linear,
    monomial_map, sigma, BirMap, DistortionConsequence, GrowthClass, IterCaps,
};

fn m(s: &str) -> BirMap {
    BirMap::parse(s).unwrap()
}

#[test]
fn jonquieres_degrees_are_linear() {
    let f = jonquieres(&[rat(0), rat(1)]).unwrap();
    let seq = iterate_degrees(&f, 30, IterCaps::default()).unwrap();
    assert_eq!(seq.degrees, (2..=31).collect::<Vec<u64>>());
    assert!(!seq.truncated);
    let v = classify_growth(&seq);
    assert_eq!(v.class, GrowthClass::Linear);
    assert_eq!(v.distortion_consequence, DistortionConsequence::Undistorted);
}

#[test]
fn henon_degrees_double() {
    let h = m("[y*z : y^2 - x*z : z^2]");
    assert_eq!(h, henon(&[rat(0), rat(0), rat(1)], &rat(1)).unwrap());
    let seq = iterate_degrees(&h, 8, IterCaps::default()).unwrap();
    assert_eq!(seq.degrees, vec![2, 4, 8, 16, 32, 64, 128, 256]);
    let e = dynamical_degree_estimate(&seq).unwrap();
    assert!((1.9..=2.0).contains(&e.estimate), "{e:?}");
    let v = classify_growth(&seq);
    assert_eq!(v.class, GrowthClass::Exponential);
    assert_eq!(v.distortion_consequence, DistortionConsequence::Undistorted);
}

#[test]
fn monomial_dynamical_degree_tracks_spectral_radius() {
    let a = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
    let f = monomial_map(&a).unwrap();
    let seq = iterate_degrees(&f, 12, IterCaps::default()).unwrap();
    let e = dynamical_degree_estimate(&seq).unwrap();
    let lambda = (3.0 + 5f64.sqrt()) / 2.0;
    assert!((e.estimate - lambda).abs() / lambda < 0.05, "{e:?}");
}

#[test]
fn identity_and_linear_maps_are_bounded() {
    let id = BirMap::identity(2);
    let seq = iterate_degrees(&id, 10, IterCaps::default()).unwrap();
    assert_eq!(seq.degrees, vec![1; 10]);
    let a = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]).unwrap();
    let seq = iterate_degrees(&linear(&a).unwrap(), 10, IterCaps::default()).unwrap();
    assert_eq!(classify_growth(&seq).class, GrowthClass::Bounded);
}

#[test]
fn association_order_does_not_matter() {
    let f = m("[y*z + x^2 : x*z - 2*y^2 : z^2]");
    let f2 = f.compose(&f).unwrap();
    let f3 = f2.compose(&f).unwrap();
    let a = f2.compose(&f2).unwrap();
    let b = f.compose(&f3).unwrap();
    let c = f3.compose(&f).unwrap();
    assert_eq!(a, b);
    assert_eq!(b, c);
    assert_eq!(f.pow(4).unwrap(), a);
}

#[test]
fn degrees_are_submultiplicative() {
    let maps = [
        sigma(2).unwrap(),
        jonquieres(&[rat(1), rat(0), rat(1)]).unwrap(),
        m("[y*z : y^2 - x*z : z^2]"),
        m("[x + y : y - z : z]"),
        m("[x*z : y*z + x^2 : z^2]"),
    ];
    for f in &maps {
        for g in &maps {
            let h = f.compose(g).unwrap();
            assert!(h.degree() <= f.degree() * g.degree(), "{f} ∘ {g}");
        }
    }
}

#[test]
fn degree_cap_truncates() {
    let h = m("[y*z : y^2 - x*z : z^2]");
    let seq = iterate_degrees(
        &h,
        20,
        IterCaps {
            degree_cap: 40,
            term_cap: 1_000_000,
        },
    )
    .unwrap();
    assert_eq!(seq.degrees, vec![2, 4, 8, 16, 32]);
    assert!(seq.truncated);
}

#[test]
fn degree_sequence_json_shape() {
    let f = jonquieres(&[rat(0), rat(1)]).unwrap();
    let seq = iterate_degrees(&f, 3, IterCaps::default()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&seq).unwrap();
    assert_eq!(v["map"], "[x*z : x*y : z^2]");
    assert_eq!(v["degrees"], serde_json::json!([2, 3, 4]));
    assert_eq!(v["truncated"], false);
}
