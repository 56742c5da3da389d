//! Coefficient fields used by the linear-algebra layer.
//!
//! Everything that assembles matrices is written against [`FieldOps`], a
//! context object owning the arithmetic. The same elimination code then runs
//! over the rationals (exact, slow) or over a word-sized prime field (fast,
//! with rank only ever underestimated).

use core::fmt::Debug;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_core::RngCore;

use super::Rat;

/// Arithmetic context for a field whose elements are plain values.
pub trait FieldOps: Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of a rational number, `None` when its denominator vanishes.
    fn reduce_rat(&self, q: &Rat) -> Option<Self::Elem>;
    fn int(&self, v: i64) -> Self::Elem;

    /// `dst[k] -= factor * src[k]` for every `k`.
    fn axpy_neg(&self, dst: &mut [Self::Elem], src: &[Self::Elem], factor: &Self::Elem) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.sub(d, &self.mul(factor, s));
            }
        }
    }

    fn scale_in_place(&self, v: &mut [Self::Elem], factor: &Self::Elem) {
        for x in v.iter_mut() {
            *x = self.mul(x, factor);
        }
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl FieldOps for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn inv(&self, a: &Rat) -> Rat {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn reduce_rat(&self, q: &Rat) -> Option<Rat> {
        Some(q.clone())
    }
    fn int(&self, v: i64) -> Rat {
        Rat::from_integer(v.into())
    }
}

/// `Z/pZ` for an odd prime `p < 2^63`, elements kept in Montgomery form.
///
/// Zero maps to zero and the representation is a bijection, so equality and
/// zero tests work directly on stored values. Use [`PrimeField::to_canonical`]
/// to read an element back as an ordinary residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    /// `-p^{-1} mod 2^64`
    p_neg_inv: u64,
    /// `2^64 mod p`, the Montgomery image of one.
    r1: u64,
    /// `2^128 mod p`
    r2: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p >= 3 && p % 2 == 1 && p < (1 << 63), "modulus must be an odd prime below 2^63");
        debug_assert!(is_prime_u64(p));
        // Newton iteration for the inverse of p modulo 2^64.
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r1 = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r1 as u128 * r1 as u128) % p as u128) as u64;
        PrimeField { p, p_neg_inv: inv.wrapping_neg(), r1, r2 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.p_neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    /// Montgomery image of an ordinary residue `0 <= a < p`.
    #[inline]
    pub fn from_canonical(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    #[inline]
    pub fn to_canonical(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }
}

impl FieldOps for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        self.r1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.redc(*a as u128 * *b as u128)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }
    fn reduce_rat(&self, q: &Rat) -> Option<u64> {
        let p = num_bigint::BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        let (num, den) = (self.from_canonical(num), self.from_canonical(den));
        Some(self.mul(&num, &self.inv(&den)))
    }
    fn int(&self, v: i64) -> u64 {
        self.from_canonical(v.rem_euclid(self.p as i64) as u64)
    }

    #[inline]
    fn axpy_neg(&self, dst: &mut [u64], src: &[u64], factor: &u64) {
        let f = *factor as u128;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                let prod = self.redc(f * s as u128);
                *d = if *d >= prod { *d - prod } else { *d + self.p - prod };
            }
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn prime with exactly `bits` bits (`8 <= bits <= 62`).
pub fn random_prime<R: RngCore>(bits: u32, rng: &mut R) -> u64 {
    assert!((8..=62).contains(&bits), "prime size must be within 8..=62 bits");
    let top = 1u64 << (bits - 1);
    loop {
        let candidate = (rng.next_u64() & (top - 1)) | top | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

/// Two distinct random primes, the pair used for every modular rank query.
pub fn prime_pair<R: RngCore>(bits: u32, rng: &mut R) -> [u64; 2] {
    let a = random_prime(bits, rng);
    loop {
        let b = random_prime(bits, rng);
        if b != a {
            return [a, b];
        }
    }
}

/// Whether `p` divides the denominator of any of the given rationals.
pub fn prime_divides_any_denominator<'a, I: IntoIterator<Item = &'a Rat>>(p: u64, values: I) -> bool {
    let p = num_bigint::BigInt::from(p);
    values.into_iter().any(|q| (q.denom().abs() % &p).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), trial(n), "n = {n}");
        }
        assert!(is_prime_u64(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn random_primes_have_requested_size() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for bits in [8, 31, 61, 62] {
            let p = random_prime(bits, &mut rng);
            assert!(is_prime_u64(p));
            assert_eq!(64 - p.leading_zeros(), bits);
        }
        let [a, b] = prime_pair(61, &mut rng);
        assert_ne!(a, b);
    }

    #[test]
    fn prime_field_reduces_rationals() {
        let f = PrimeField::new(101);
        let q = Rat::new((-3).into(), 7.into());
        let x = f.reduce_rat(&q).unwrap();
        assert_eq!(f.mul(&x, &f.int(7)), f.int(-3));
        assert_eq!(f.to_canonical(f.int(-3)), 98);
        assert!(f.reduce_rat(&Rat::new(1.into(), 202.into())).is_none());
        let five = f.int(5);
        assert_eq!(f.mul(&f.inv(&five), &five), f.one());
    }

    #[test]
    fn montgomery_matches_plain_modular_arithmetic() {
        let p = 2_305_843_009_213_693_951u64;
        let f = PrimeField::new(p);
        let samples = [0u64, 1, 2, 12345, p - 1, p / 2, 1 << 62];
        for &a in &samples {
            for &b in &samples {
                let (a, b) = (a % p, b % p);
                let (ma, mb) = (f.from_canonical(a), f.from_canonical(b));
                assert_eq!(f.to_canonical(f.mul(&ma, &mb)), mul_mod(a, b, p));
                assert_eq!(f.to_canonical(f.add(&ma, &mb)), ((a as u128 + b as u128) % p as u128) as u64);
                let mut d = [ma];
                f.axpy_neg(&mut d, &[mb], &f.from_canonical(3));
                let expect = (a as i128 - 3 * b as i128).rem_euclid(p as i128) as u64;
                assert_eq!(f.to_canonical(d[0]), expect);
            }
        }
    }
}
