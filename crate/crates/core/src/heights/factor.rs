//! Integer factorization: trial division, then Pollard rho (Brent) with a
//! Miller-Rabin primality test.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const TRIAL_LIMIT: u32 = 10_000;

/// Miller-Rabin with the first thirteen prime bases: deterministic below
/// 3.3e24, overwhelmingly reliable beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 64u64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

fn split(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    for c in 1u64.. {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            split(d, out);
            split(other, out);
            return;
        }
    }
}

/// Prime factorization `n = Π p^e`, primes ascending. `n = 0` and `n = 1`
/// give an empty list.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut primes: Vec<BigUint> = Vec::new();
    if n.is_zero() {
        return Vec::new();
    }
    let mut p = 2u32;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            primes.push(bp.clone());
            n /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        if n.to_u64()
            .map(|v| v < (TRIAL_LIMIT as u64).pow(2))
            .unwrap_or(false)
        {
            primes.push(n);
        } else {
            split(n, &mut primes);
        }
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(factorize(&b(1)), vec![]);
        assert_eq!(factorize(&b(12)), vec![(b(2), 2), (b(3), 1)]);
        assert_eq!(factorize(&b(9_999_991)), vec![(b(9_999_991), 1)]);
    }

    #[test]
    fn semiprime_beyond_trial_division() {
        let p = b(1_000_000_007);
        let q = b(998_244_353);
        let n = &p * &q * &p;
        assert_eq!(factorize(&n), vec![(q, 1), (p, 2)]);
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&b((1u64 << 61) - 1)));
        assert!(!is_probable_prime(&b(3_215_031_751)));
    }
}
