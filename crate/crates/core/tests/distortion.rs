use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cremona_core::distortion::{
    ball, baumslag_solitar, distortion_profile, free_abelian, free_group2, jordan3_template,
    monomial_translation_word, nilpotent_corner, nilpotent_example, sl2_doubling_witness, BallCaps,
    GroupElement, IntMatrix,
};
use cremona_core::linalg::RatMatrix;

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[test]
fn free_abelian_is_undistorted() {
    let g = free_abelian(2).unwrap();
    let b = ball(&g, 6, &BallCaps::default()).unwrap();
    // |S^n| = 2n² + 2n + 1 in Z²
    let expected: Vec<usize> = (0..=6).map(|n| 2 * n * n + 2 * n + 1).collect();
    assert_eq!(b.sizes(), expected);
    let p = distortion_profile(&g, &g.letters[0].elem, 6, &BallCaps::default()).unwrap();
    assert_eq!(p.deltas(), (0..=6).map(Some).collect::<Vec<_>>());
    assert!(p.stable_length_bound.unwrap() > 0.9);
}

#[test]
fn free_group_spheres() {
    let b = ball(&free_group2(), 6, &BallCaps::default()).unwrap();
    let spheres: Vec<usize> = b.spheres.iter().map(Vec::len).collect();
    let expected: Vec<usize> = (0..=6u32)
        .map(|n| if n == 0 { 1 } else { 4 * 3usize.pow(n - 1) })
        .collect();
    assert_eq!(spheres, expected);
}

#[test]
fn bs_profile_beats_the_conjugation_bound() {
    let g = baumslag_solitar(2).unwrap();
    let x = g.letters[1].elem.clone();
    let p = distortion_profile(&g, &x, 9, &BallCaps::default()).unwrap();
    for n in 0..=4usize {
        assert!(p.rows[2 * n + 1].delta.unwrap() >= 1 << n);
    }
    let d = p.deltas();
    assert!(d.windows(2).all(|w| w[0] <= w[1]));
    assert!(p.stable_length_bound.unwrap() < 0.5);
}

#[test]
fn power_generating_set_rescales_radius() {
    let g = baumslag_solitar(2).unwrap();
    let caps = BallCaps::default();
    let x = g.letters[1].elem.clone();
    let base = distortion_profile(&g, &x, 8, &caps).unwrap();
    let g2 = g.power_generators(2, &caps).unwrap();
    let sq = distortion_profile(&g2, &x, 4, &caps).unwrap();
    for n in 0..=4 {
        assert_eq!(sq.rows[n].delta, base.rows[2 * n].delta, "n = {n}");
        assert_eq!(sq.rows[n].ball_size, base.rows[2 * n].ball_size);
    }
}

#[test]
fn heisenberg_center_is_quadratically_distorted() {
    let g = nilpotent_example(1).unwrap();
    let z = nilpotent_corner(1);
    let p = distortion_profile(&g, &z, 12, &BallCaps::default()).unwrap();
    let xs: Vec<f64> = (6..=12).map(|n| (n as f64).ln()).collect();
    let ys: Vec<f64> = (6..=12)
        .map(|n| (p.rows[n].delta.unwrap() as f64).ln())
        .collect();
    let k = slope(&xs, &ys);
    assert!((k - 2.0).abs() < 0.25, "exponent {k}");
    // a generator is undistorted
    let a = distortion_profile(&g, &g.letters[0].elem, 12, &BallCaps::default()).unwrap();
    assert_eq!(a.rows[12].delta, Some(12));
}

#[test]
fn ball_is_deterministic_across_thread_counts() {
    let g = nilpotent_example(1).unwrap();
    let a = ball(&g, 7, &BallCaps::default()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .unwrap();
    let b = pool.install(|| ball(&g, 7, &BallCaps::default()).unwrap());
    assert_eq!(a.spheres, b.spheres);
}

#[test]
fn witness_words_verify() {
    for n in 0..=20 {
        let w = sl2_doubling_witness(n).unwrap();
        assert_eq!(w.letters, 2 * u64::from(n) + 1);
    }
    let w = jordan3_template(2, 16).unwrap();
    assert!(w.target.contains(&(65536u64 * 65535 / 2).to_string()));
    let w = jordan3_template(3, 5).unwrap();
    assert!(w.target.contains("243"));
}

#[test]
fn monomial_words_have_logarithmic_length() {
    let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for _ in 0..100 {
        let scale = 10f64.powf(rng.gen_range(0.0..6.0));
        let v: Vec<i64> = (0..2)
            .map(|_| (rng.gen_range(-1.0..1.0) * scale / 2f64.sqrt()).round() as i64)
            .collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let w = monomial_translation_word(&m, &v).unwrap();
        let norm = v.iter().map(|&x| (x as f64).powi(2)).sum::<f64>().sqrt();
        xs.push(norm.max(2.0).ln());
        ys.push(w.letters as f64);
    }
    let k = slope(&xs, &ys);
    assert!(k <= 6.0, "slope {k}");
}

#[test]
fn int_matrix_corner_commutes_with_generators() {
    let g = nilpotent_example(2).unwrap();
    let z = nilpotent_corner(2);
    for l in &g.letters {
        assert_eq!(l.elem.mul(&z).unwrap(), z.mul(&l.elem).unwrap());
    }
    assert_eq!(z, IntMatrix::elementary(4, 0, 3, 1));
}
