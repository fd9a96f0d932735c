//! Integer factorization for discriminant square classes.
//!
//! Square classes of nonzero rationals are represented by the squarefree
//! part of `numerator · denominator`. Discriminants of trace forms can grow
//! well past trial-division range, so factoring combines trial division,
//! Miller–Rabin, perfect-square extraction and Pollard's rho. Everything is
//! deterministic.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Witness set that makes Miller–Rabin deterministic below 3.3·10²⁴; for the
/// (astronomically unlikely) larger inputs it acts as a strong probable-prime
/// test with fixed bases, which keeps results reproducible.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const TRIAL_LIMIT: u64 = 10_000;

fn miller_rabin_round(n: &BigUint, a: u64) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().expect("n > 1 is odd here");
    let d = &nm1 >> s;
    let mut x = BigUint::from(a).modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if small == p {
                return true;
            }
            if small % p == 0 {
                return false;
            }
        }
    } else {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if (n % p).is_zero() {
                return false;
            }
        }
    }
    MR_BASES.iter().all(|&a| miller_rabin_round(n, a))
}

/// Floyd-cycle Pollard rho with increasing polynomial offsets. Only called
/// on odd composite inputs with no factors below [`TRIAL_LIMIT`], where a
/// nontrivial factor always exists.
fn rho_split(n: &BigUint) -> BigUint {
    for c in 1u64.. {
        let cc = BigUint::from(c);
        let step = |x: &BigUint| (x * x + &cc) % n;
        let mut x = BigUint::from(2u32);
        let mut y = step(&x);
        loop {
            if x == y {
                break; // cycle closed without a factor; bump c
            }
            let diff = if x > y { &x - &y } else { &y - &x };
            let g = diff.gcd(n);
            if !g.is_one() {
                return g;
            }
            x = step(&x);
            y = step(&step(&y));
        }
    }
    unreachable!("rho offsets are unbounded")
}

fn factor_odd_part(mut n: BigUint, acc: &mut Vec<(BigUint, u64)>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        acc.push((n, 1));
        return;
    }
    // Perfect squares split for free and are common among discriminants.
    let r = n.sqrt();
    if &r * &r == n {
        let mut inner = Vec::new();
        factor_odd_part(r, &mut inner);
        acc.extend(inner.into_iter().map(|(p, e)| (p, 2 * e)));
        return;
    }
    let d = rho_split(&n);
    n /= &d;
    factor_odd_part(d, acc);
    factor_odd_part(n, acc);
}

fn factor(mut n: BigUint) -> Vec<(BigUint, u64)> {
    let mut acc: Vec<(BigUint, u64)> = Vec::new();
    let mut push = |p: u64, e: u64| {
        if e > 0 {
            acc.push((BigUint::from(p), e));
        }
    };
    let strip = |n: &mut BigUint, p: u64| {
        let mut e = 0;
        while (&*n % p).is_zero() {
            *n /= p;
            e += 1;
        }
        e
    };
    let e2 = strip(&mut n, 2);
    push(2, e2);
    let mut d = 3u64;
    while d <= TRIAL_LIMIT {
        if let Some(small) = n.to_u64() {
            if d.saturating_mul(d) > small {
                break;
            }
        }
        let e = strip(&mut n, d);
        push(d, e);
        d += 2;
    }
    factor_odd_part(n, &mut acc);
    acc
}

/// The squarefree part of a nonzero integer: the product of the primes that
/// divide it to an odd power, with the sign of the input. This is the
/// canonical representative of its square class.
pub(crate) fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "square class of zero is undefined");
    let negative = n.sign() == Sign::Minus;
    let mut out = BigUint::one();
    for (p, e) in factor(n.magnitude().clone()) {
        if e % 2 == 1 {
            out *= p;
        }
    }
    let out = BigInt::from(out);
    if negative {
        -out
    } else {
        out
    }
}
