//! Reference groups.

use super::{Affine, GroupSpec, IntMatrix};
use crate::error::{Error, Result};
use crate::linalg::{rat, ratio, RatMatrix};
use crate::maps::{sigma, BirMap};

fn mat(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_i64(rows).expect("square")
}

/// `Z = ⟨t⟩` as unipotent 2×2 matrices.
pub fn cyclic() -> GroupSpec<RatMatrix> {
    GroupSpec::new(
        "Z",
        RatMatrix::identity(2),
        vec![(
            "t".into(),
            mat(&[&[1, 1], &[0, 1]]),
            mat(&[&[1, -1], &[0, 1]]),
        )],
    )
    .expect("valid")
}

/// `Z^r` as translations with the standard basis.
pub fn free_abelian(rank: usize) -> Result<GroupSpec<Affine>> {
    if rank == 0 {
        return Err(Error::InvalidParameter("rank must be positive".into()));
    }
    let letters = (0..rank)
        .map(|i| {
            let mut v = vec![rat(0); rank];
            v[i] = rat(1);
            let t = Affine::translation(v.clone());
            let ti = Affine::translation(v.into_iter().map(|x| -x).collect());
            (format!("e{}", i + 1), t, ti)
        })
        .collect();
    GroupSpec::new(format!("Z^{rank}"), Affine::identity(rank), letters)
}

/// Free group of rank two, via the Sanov matrices `[[1,2],[0,1]]` and
/// `[[1,0],[2,1]]`.
pub fn free_group2() -> GroupSpec<RatMatrix> {
    GroupSpec::new(
        "F2",
        RatMatrix::identity(2),
        vec![
            (
                "a".into(),
                mat(&[&[1, 2], &[0, 1]]),
                mat(&[&[1, -2], &[0, 1]]),
            ),
            (
                "b".into(),
                mat(&[&[1, 0], &[2, 1]]),
                mat(&[&[1, 0], &[-2, 1]]),
            ),
        ],
    )
    .expect("valid")
}

/// `⟨σ⟩` with the standard quadratic involution of the plane.
pub fn involution() -> GroupSpec<BirMap> {
    let s = sigma(2).expect("sigma");
    GroupSpec::new(
        "sigma",
        BirMap::identity(2),
        vec![("s".into(), s.clone(), s)],
    )
    .expect("valid")
}

/// `BS(1,k) = ⟨t, x | t x t⁻¹ = x^k⟩` with `t = [[k,0],[0,1]]`,
/// `x = [[1,1],[0,1]]`.
pub fn baumslag_solitar(k: i64) -> Result<GroupSpec<RatMatrix>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "k must be at least 2, got {k}"
        )));
    }
    let t = RatMatrix::diagonal(&[rat(k), rat(1)]);
    let ti = RatMatrix::diagonal(&[ratio(1, k), rat(1)]);
    GroupSpec::new(
        format!("BS(1,{k})"),
        RatMatrix::identity(2),
        vec![
            ("t".into(), t, ti),
            (
                "x".into(),
                mat(&[&[1, 1], &[0, 1]]),
                mat(&[&[1, -1], &[0, 1]]),
            ),
        ],
    )
}

/// Upper unitriangular integer matrices of size `d+2` generated by the
/// superdiagonal elementary matrices `I + E_{i,i+1}`. Depth 1 is the
/// Heisenberg group.
pub fn nilpotent_example(d: usize) -> Result<GroupSpec<IntMatrix>> {
    if !(1..=4).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "depth must be in 1..=4, got {d}"
        )));
    }
    let n = d + 2;
    let letters = (0..n - 1)
        .map(|i| {
            (
                format!("u{}", i + 1),
                IntMatrix::elementary(n, i, i + 1, 1),
                IntMatrix::elementary(n, i, i + 1, -1),
            )
        })
        .collect();
    GroupSpec::new(format!("UT({n},Z)"), IntMatrix::identity(n), letters)
}

/// The corner `I + E_{0,d+1}`, an iterated commutator of all `d+1`
/// generators.
pub fn nilpotent_corner(d: usize) -> IntMatrix {
    IntMatrix::elementary(d + 2, 0, d + 1, 1)
}
